use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use curvecover::certificate::{certify, local_checks, render_certificate, render_refusal, Format};
use curvecover::curve::{classify_node, CurveAction};
use curvecover::document::CurveDocument;
use curvecover::gallery;
use curvecover::graph::to_dot_named;
use curvecover::group::FiniteGroup;
use curvecover::report::Prime;

/// Build, check and certify group actions on nodal curves.
#[derive(Debug, Parser)]
#[command(name = "curvecover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a gallery example as a curve document.
    Gallery {
        name: GalleryName,
        /// Number of lines in the n-gon.
        #[arg(long)]
        n: Option<usize>,
        /// Genus parameter of the hyperelliptic step.
        #[arg(long)]
        ell: Option<u32>,
        /// Total genus of the hyperelliptic chain.
        #[arg(long)]
        genus: Option<u32>,
        /// Group name such as A4, S3, D4 or C2xC4.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        h1: Option<String>,
        #[arg(long)]
        h2: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the hypotheses that do not involve the quotient.
    Verify {
        doc: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Write the quotient curve as a document.
    Quotient {
        doc: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print DOT renderings of the curve and its quotient.
        #[arg(long)]
        dot: bool,
    },
    /// Issue a smoothing certificate or list the failed hypotheses.
    Certify {
        doc: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print the arithmetic genus.
    Genus { doc: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GalleryName {
    HyperellipticBase,
    HyperellipticStep,
    Hyperelliptic,
    Cayley,
    Semidirect,
    Ngon,
    Petersen,
    TriangleC3,
    TriangleS3,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

const HYPOTHESIS_FAILURE: u8 = 1;
const INPUT_ERROR: u8 = 2;

/// Error carrying the exit code it should produce.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: INPUT_ERROR,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gallery {
            name,
            n,
            ell,
            genus,
            group,
            h1,
            h2,
            output,
        } => {
            let action = build_gallery(name, n, ell, genus, group, h1, h2)?;
            emit(
                &CurveDocument::from_action(&action).to_json(),
                output.as_deref(),
            )
        }
        Command::Verify { doc, p } => {
            let p = prime(p)?;
            let action = load(&doc)?;
            let checks = local_checks(&action, p);
            for item in &checks {
                println!("CHECK {item}");
            }
            for node in action.curve().graph().edges() {
                if let Ok(class) = classify_node(&action, node) {
                    println!(
                        "NODE {} {} m={} stabilizer={} {}",
                        class.label,
                        class.case,
                        class.m,
                        class.stabilizer.len(),
                        class.structure
                    );
                }
            }
            if checks.iter().all(|c| c.passed()) {
                println!("RESULT PASS");
                Ok(())
            } else {
                println!("RESULT FAIL");
                Err(Failure {
                    code: HYPOTHESIS_FAILURE,
                    message: String::new(),
                })
            }
        }
        Command::Quotient { doc, output, dot } => {
            let action = load(&doc)?;
            let quotient = CurveDocument::quotient_of(&action).map_err(|e| Failure {
                code: HYPOTHESIS_FAILURE,
                message: e.to_string(),
            })?;
            if dot {
                let d = quotient.to_action().map_err(input_error)?;
                print!("{}", to_dot_named(action.curve().graph(), Some("C")));
                print!("{}", to_dot_named(d.curve().graph(), Some("D")));
                if let Some(path) = output {
                    write_file(&path, &quotient.to_json())?;
                }
                Ok(())
            } else {
                emit(&quotient.to_json(), output.as_deref())
            }
        }
        Command::Certify { doc, p, format } => {
            let p = prime(p)?;
            let action = load(&doc)?;
            match certify(&action, p) {
                Ok(cert) => {
                    print!("{}", render_certificate(&cert, format.into()));
                    Ok(())
                }
                Err(refusal) => {
                    print!("{}", render_refusal(&refusal, format.into()));
                    Err(Failure {
                        code: HYPOTHESIS_FAILURE,
                        message: refusal.to_string(),
                    })
                }
            }
        }
        Command::Genus { doc } => {
            let action = load(&doc)?;
            println!("{}", action.curve().arithmetic_genus());
            Ok(())
        }
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(input_error)
}

fn load(path: &Path) -> Result<CurveAction, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    CurveDocument::from_json(&text)
        .and_then(|doc| doc.to_action())
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn emit(contents: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn require<T>(value: Option<T>, flag: &str, name: &str) -> Result<T, Failure> {
    value.ok_or_else(|| input_error(format!("gallery {name} needs --{flag}")))
}

#[allow(clippy::too_many_arguments)]
fn build_gallery(
    name: GalleryName,
    n: Option<usize>,
    ell: Option<u32>,
    genus: Option<u32>,
    group: Option<String>,
    h1: Option<String>,
    h2: Option<String>,
) -> Result<CurveAction, Failure> {
    let two_generator = |kind: &str| -> Result<(FiniteGroup, String, String), Failure> {
        let group =
            FiniteGroup::by_name(&require(group.clone(), "group", kind)?).map_err(input_error)?;
        Ok((
            group,
            require(h1.clone(), "h1", kind)?,
            require(h2.clone(), "h2", kind)?,
        ))
    };
    let built = match name {
        GalleryName::HyperellipticBase => Ok(gallery::hyperelliptic_base()),
        GalleryName::HyperellipticStep => {
            gallery::hyperelliptic_step(require(ell, "ell", "hyperelliptic-step")?)
        }
        GalleryName::Hyperelliptic => {
            gallery::hyperelliptic(require(genus, "genus", "hyperelliptic")?)
        }
        GalleryName::Cayley => {
            let (g, a, b) = two_generator("cayley")?;
            gallery::cayley_from_strings(&g, &a, &b)
        }
        GalleryName::Semidirect => {
            let (g, a, b) = two_generator("semidirect")?;
            gallery::semidirect_from_strings(&g, &a, &b)
        }
        GalleryName::Ngon => gallery::ngon_dihedral(require(n, "n", "ngon")?),
        GalleryName::Petersen => Ok(gallery::petersen_a5()),
        GalleryName::TriangleC3 => Ok(gallery::triangle_c3()),
        GalleryName::TriangleS3 => Ok(gallery::triangle_s3()),
    };
    built.map_err(input_error)
}
