use clap::{Parser, Subcommand};
use graycalc::dsl::{self, RenderFormat};
use graycalc::run;
use std::path::PathBuf;
use std::process::ExitCode;

/// Diagram calculus for presented Gray-categories: typecheck terms, rewrite
/// and compare diagrams, verify coherence axioms, and compute limits of
/// 2-functors on finite data.
#[derive(Parser)]
#[command(name = "graycalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a document and execute its commands in order.
    Run { file: PathBuf },
    /// Render the diagrams referenced by `render` commands in a document.
    Render {
        file: PathBuf,
        /// Output format override: svg or tikz.
        #[arg(long)]
        format: Option<String>,
        /// Output path; multiple artifacts get an index suffix.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse a document and print its canonical form.
    Fmt { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { file } => cmd_run(&file),
        Cmd::Render {
            file,
            format,
            output,
        } => cmd_render(&file, format.as_deref(), output.as_deref()),
        Cmd::Fmt { file } => cmd_fmt(&file),
    }
}

fn load(file: &std::path::Path) -> Result<dsl::Document, ExitCode> {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return Err(ExitCode::from(2));
        }
    };
    match dsl::parse(&text) {
        Ok(doc) => Ok(doc),
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            Err(ExitCode::from(2))
        }
    }
}

fn cmd_run(file: &std::path::Path) -> ExitCode {
    let doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let outputs = run::run(&doc);
    for out in &outputs.outputs {
        print!("{}", out.render_text());
        println!();
    }
    let passed = outputs.all_passed();
    println!("commands: {}", outputs.outputs.len());
    println!("status: {}", if passed { "pass" } else { "fail" });
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_render(
    file: &std::path::Path,
    format: Option<&str>,
    output: Option<&std::path::Path>,
) -> ExitCode {
    let mut doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let format_override = match format {
        Some("svg") => Some(RenderFormat::Svg),
        Some("tikz") => Some(RenderFormat::Tikz),
        Some(other) => {
            eprintln!("error: unknown format {other} (expected svg or tikz)");
            return ExitCode::from(2);
        }
        None => None,
    };
    if let Some(fmt) = format_override {
        for item in &mut doc.items {
            if let dsl::Item::Command(dsl::Command::Render { format, .. }) = item {
                *format = Some(fmt);
            }
        }
    }
    let outputs = run::run(&doc);
    if outputs.renders.is_empty() {
        eprintln!("error: no render commands in {}", file.display());
        return ExitCode::from(1);
    }
    match output {
        None => {
            for r in &outputs.renders {
                print!("{}", r.content);
            }
        }
        Some(path) => {
            let many = outputs.renders.len() > 1;
            for (i, r) in outputs.renders.iter().enumerate() {
                let target = if many {
                    let stem = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().to_string())
                        .unwrap_or_else(|| "render".to_string());
                    let ext = path
                        .extension()
                        .map(|s| s.to_string_lossy().to_string())
                        .unwrap_or_else(|| r.format.to_string());
                    path.with_file_name(format!("{stem}-{i}.{ext}"))
                } else {
                    path.to_path_buf()
                };
                if let Err(e) = std::fs::write(&target, &r.content) {
                    eprintln!("error: cannot write {}: {e}", target.display());
                    return ExitCode::from(1);
                }
                println!("wrote {}", target.display());
            }
        }
    }
    if outputs.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_fmt(file: &std::path::Path) -> ExitCode {
    match load(file) {
        Ok(doc) => {
            print!("{}", dsl::print(&doc));
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}
