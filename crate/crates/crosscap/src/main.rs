use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crosscap::blocks::{find_blocks, reduce};
use crosscap::drawing::CrossCapDrawing;
use crosscap::enumerate::census;
use crosscap::hp::{hp_sort, reversal_distance_exact};
use crosscap::search::{find, SearchOutcome, SearchSpec};
use crosscap::synthesis::{classify, perfect_drawing, Synthesis};
use crosscap::{HpError, SignedCyclicPermutation, SynthesisError};

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Cross-cap drawings of two-vertex embedding schemes"
)]
struct Cli {
    /// Worker threads for census and search (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Signed cyclic permutation, e.g. "1 -6 5 -4 3 -2".
    #[arg(long, allow_hyphen_values = true)]
    perm: Option<String>,
    /// File holding the permutation.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Faces, Euler genus, orientability and cross-cap number.
    Genus(Input),
    /// Face boundaries of the scheme.
    Faces(Input),
    /// Every block, with triviality and minimality.
    Blocks(Input),
    /// The reduction tree down to the reduced root.
    Reduce(Input),
    /// Whether a perfect drawing is built, with the block-pair certificate if any.
    Classify(Input),
    /// Reversal distance to the identity.
    Distance {
        #[command(flatten)]
        input: Input,
        /// Breadth-first search (exact).
        #[arg(long, conflicts_with = "hp")]
        exact: bool,
        /// Length of the sorting path.
        #[arg(long)]
        hp: bool,
        /// State limit for --exact.
        #[arg(long, default_value_t = 5_000_000)]
        budget: usize,
    },
    /// Reversal path to the identity as JSON.
    Sort {
        #[command(flatten)]
        input: Input,
        /// Element no reversal may move.
        #[arg(long)]
        forbidden: Option<u32>,
    },
    /// Build a perfect drawing.
    Draw {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Check a drawing against a scheme.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Drawing JSON.
        #[arg(long)]
        drawing: PathBuf,
    },
    /// Reduced schemes of a given cross-cap number.
    Census {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        maximal: bool,
    },
    /// Exhaustive search for a perfect (or fantastic) drawing.
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
        /// Require every edge to enter a cross-cap.
        #[arg(long)]
        fantastic: bool,
        /// Turn off the cycle-parity pruning.
        #[arg(long)]
        no_pruning: bool,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
}

enum Failure {
    Parse(String),
    Domain(String),
    Budget(String),
}

impl From<SynthesisError> for Failure {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::BudgetExhausted(_) => Failure::Budget(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<HpError> for Failure {
    fn from(e: HpError) -> Self {
        match e {
            HpError::SearchBudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

impl Input {
    fn scheme(&self) -> Result<SignedCyclicPermutation, Failure> {
        let text = match (&self.perm, &self.file) {
            (Some(p), _) => p.clone(),
            (None, Some(f)) => read(f)?,
            (None, None) => unreachable!("clap requires one input"),
        };
        SignedCyclicPermutation::parse(text.trim()).map_err(|e| Failure::Parse(e.to_string()))
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: Cli) -> Result<Value, Failure> {
    Ok(match cli.command {
        Command::Genus(input) => {
            let p = input.scheme()?;
            json!({
                "scheme": p,
                "edges": p.n(),
                "faces": p.face_count(),
                "euler_genus": p.euler_genus(),
                "orientable": p.is_orientable(),
                "crosscap_number": p.crosscap_number(),
            })
        }
        Command::Faces(input) => {
            let p = input.scheme()?;
            let faces = p.faces();
            json!({ "scheme": p, "count": faces.count(), "degrees": faces.degrees(), "faces": faces })
        }
        Command::Blocks(input) => {
            let p = input.scheme()?;
            let blocks: Vec<Value> = find_blocks(&p)
                .iter()
                .map(|b| {
                    let mut v = to_value(b);
                    v["elements"] = json!(b.elements(&p));
                    v
                })
                .collect();
            json!({ "scheme": p, "blocks": blocks })
        }
        Command::Reduce(input) => to_value(&reduce(&input.scheme()?)),
        Command::Classify(input) => to_value(&classify(&input.scheme()?)?),
        Command::Distance {
            input, hp, budget, ..
        } => {
            let p = input.scheme()?;
            if hp {
                let path = hp_sort(&p, None)?;
                json!({ "scheme": p, "method": "hp", "distance": path.len() })
            } else {
                let d = reversal_distance_exact(&p, budget)?;
                json!({ "scheme": p, "method": "exact", "distance": d, "euler_genus": p.euler_genus() })
            }
        }
        Command::Sort { input, forbidden } => to_value(&hp_sort(&input.scheme()?, forbidden)?),
        Command::Draw {
            input,
            out_json,
            out_svg,
        } => {
            let p = input.scheme()?;
            match perfect_drawing(&p)? {
                Synthesis::Perfect { drawing } => {
                    if let Some(path) = &out_json {
                        write(path, &drawing.to_json())?;
                    }
                    if let Some(path) = &out_svg {
                        write(path, &drawing.to_svg().map_err(domain)?)?;
                    }
                    json!({
                        "verdict": "perfect",
                        "scheme": p,
                        "crosscaps": drawing.crosscaps,
                        "drawing": drawing,
                    })
                }
                Synthesis::Exceptional { classification } => {
                    json!({ "verdict": "exceptional", "scheme": p, "classification": classification })
                }
            }
        }
        Command::Verify { input, drawing } => {
            let p = input.scheme()?;
            let d = CrossCapDrawing::from_json(&read(&drawing)?)
                .map_err(|e| Failure::Parse(e.to_string()))?;
            let report = d.validate();
            let ok = report.ok();
            json!({
                "scheme": p,
                "valid": ok,
                "report": report,
                "realizes": ok && d.realizes(&p).map_err(domain)?,
                "perfect": ok && d.is_perfect(&p).map_err(domain)?,
                "fantastic": ok && d.is_fantastic(&p).map_err(domain)?,
            })
        }
        Command::Census { genus, maximal } => {
            if genus > 3 {
                return Err(domain("census supports cross-cap numbers up to 3"));
            }
            to_value(&census(genus, maximal))
        }
        Command::Search {
            input,
            budget,
            fantastic,
            no_pruning,
            out_json,
        } => {
            let p = input.scheme()?;
            let mut spec = if fantastic {
                SearchSpec::fantastic(&p, budget)
            } else {
                SearchSpec::perfect(&p, budget)
            };
            spec.class_pruning = !no_pruning;
            let outcome = find(&spec);
            match &outcome {
                SearchOutcome::Found { drawing, .. } => {
                    if let Some(path) = &out_json {
                        write(path, &drawing.to_json())?;
                    }
                }
                SearchOutcome::BudgetExceeded { nodes } => {
                    return Err(Failure::Budget(format!(
                        "search of {p} gave up after {nodes} nodes"
                    )));
                }
                SearchOutcome::Exhausted { .. } => {}
            }
            json!({ "scheme": p, "search": outcome })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(v) => {
            use std::io::Write;
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            // A closed pipe (`| head`) is not a failure of the command.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
