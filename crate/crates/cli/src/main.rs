use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trigonlab_cli::report::{all_passed, format_json, format_text};
use trigonlab_cli::{fit_viewport, render_frames, render_svg, serve, RenderStyle, Viewport};
use trigonlab_core::dsl::{self, DslError, Overrides};
use trigonlab_core::geom::Point;
use trigonlab_core::lab::{run_suite, CheckName, TrialConfig};
use trigonlab_core::scene::Scene;

#[derive(Parser)]
#[command(name = "trigonlab", version, about = "Similar-triangle constructions: render, zoom, check, serve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a .geo program and write one SVG.
    Render {
        file: PathBuf,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        view: ViewArgs,
    },
    /// Write a zoom sequence about the program's focus point.
    Frames {
        file: PathBuf,
        #[arg(long)]
        frames: usize,
        #[arg(long)]
        zoom: f64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        view: ViewArgs,
    },
    /// Run the theorem checks over seeded random triangles.
    Check {
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Serve POST /evaluate on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Args)]
struct ViewArgs {
    /// Document width in pixels.
    #[arg(long)]
    width: Option<f64>,
    /// Width-to-height ratio used when fitting.
    #[arg(long, default_value_t = 1.0)]
    aspect: f64,
    /// Explicit viewport as `cx,cy,half`.
    #[arg(long, value_parser = parse_viewport_arg)]
    viewport: Option<(f64, f64, f64)>,
    /// TOML style file.
    #[arg(long)]
    style: Option<PathBuf>,
}

fn parse_viewport_arg(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("{e}"))?;
    match parts[..] {
        [cx, cy, half] => Ok((cx, cy, half)),
        _ => Err("expected cx,cy,half".into()),
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Failed(_) => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn diagnostic(file: &Path, e: &DslError) -> String {
    match e.pos() {
        Some(p) => format!("{}:{}:{}: error: {}", file.display(), p.line, p.column, e.message()),
        None => format!("{}: error: {}", file.display(), e.message()),
    }
}

fn evaluate_file(file: &Path) -> Result<Scene, Failure> {
    let source = read(file)?;
    let program = dsl::compile(&source).map_err(|e| Failure::Failed(diagnostic(file, &e)))?;
    dsl::evaluate(&program, &Overrides::new()).map_err(|f| Failure::Failed(diagnostic(file, &f.error)))
}

fn prepare(view: &ViewArgs, scene: &Scene) -> Result<(Viewport, RenderStyle), Failure> {
    let mut style = match &view.style {
        Some(path) => RenderStyle::from_toml(&read(path)?).map_err(|e| Failure::Usage(e.to_string()))?,
        None => RenderStyle::default(),
    };
    if let Some(w) = view.width {
        style.width = w;
        style.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let viewport = match view.viewport {
        Some((cx, cy, half)) => Viewport::new(Point::new(cx, cy), half, view.aspect),
        None => fit_viewport(scene, view.aspect, trigonlab_cli::protocol::FIT_PADDING),
    };
    let viewport = viewport.map_err(|e| match e {
        trigonlab_cli::RenderError::EmptyScene => Failure::Failed(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    })?;
    Ok((viewport, style))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Render { file, output, view } => {
            let scene = evaluate_file(&file)?;
            let (viewport, style) = prepare(&view, &scene)?;
            let svg = render_svg(&scene, &viewport, &style);
            match output {
                Some(path) => write(&path, &svg),
                None => {
                    print!("{svg}");
                    Ok(())
                }
            }
        }
        Command::Frames {
            file,
            frames,
            zoom,
            out_dir,
            view,
        } => {
            let scene = evaluate_file(&file)?;
            let (viewport, style) = prepare(&view, &scene)?;
            let docs = render_frames(&scene, &viewport, &style, zoom, frames).map_err(|e| Failure::Usage(e.to_string()))?;
            fs::create_dir_all(&out_dir).map_err(|e| Failure::Failed(format!("{}: {e}", out_dir.display())))?;
            for (k, doc) in docs.iter().enumerate() {
                write(&out_dir.join(format!("frame_{k:04}.svg")), doc)?;
            }
            Ok(())
        }
        Command::Check {
            suite,
            trials,
            seed,
            tol,
            json,
        } => {
            let names: Vec<String> = if suite == "all" {
                CheckName::ALL.iter().map(|c| c.as_str().to_string()).collect()
            } else {
                suite.split(',').map(|s| s.trim().to_string()).collect()
            };
            let config = TrialConfig {
                trials,
                seed,
                tolerance: tol,
                ..TrialConfig::default()
            };
            let reports = run_suite(&config, &names).map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                print!("{}", format_json(&config, &reports));
            } else {
                print!("{}", format_text(&reports));
            }
            if all_passed(&reports) {
                Ok(())
            } else {
                Err(Failure::Failed("one or more checks failed".into()))
            }
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Failed(e.to_string()))?;
            rt.block_on(async {
                let listener = serve::bind(port)
                    .await
                    .map_err(|e| Failure::Failed(format!("cannot bind port {port}: {e}")))?;
                if let Ok(addr) = listener.local_addr() {
                    eprintln!("listening on http://{addr}/evaluate");
                }
                serve::serve(listener).await.map_err(|e| Failure::Failed(e.to_string()))
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Failed(m)) = &f;
            eprintln!("{m}");
            ExitCode::from(f.code())
        }
    }
}
