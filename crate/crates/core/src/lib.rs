//! Iterated similar-triangle constructions and the tools around them.

pub mod constructions;
pub mod dsl;
pub mod geom;
pub mod lab;
pub mod scene;
