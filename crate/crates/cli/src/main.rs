use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cobarlab::cobar::{letter, parse_cobar, CobarLetter};
use cobarlab::format::{load_json, SimplicialSetFile};
use cobarlab::homology::cobar_homology;
use cobarlab::homotopy::Homotopy;
use cobarlab::loop_group::{word_chain, GroupWord};
use cobarlab::models::ModelKind;
use cobarlab::print::{print_cobar, print_group_chain};
use cobarlab::retraction::Retraction;
use cobarlab::szczarba::Szczarba;
use cobarlab::verify::{run_suite, Limits, Suite, DEFAULT_SEED};
use cobarlab::SimplicialSet;

#[derive(Parser)]
#[command(name = "cobarlab", version, about = "Exact loop-space models: cobar construction and Kan loop group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Built-in model (delta<n>, deltabar<n>, sphere<n>, wedge<k>x<n>) or a JSON file.
    #[arg(long)]
    model: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// One term per line.
    #[arg(long)]
    long: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a simplicial set.
    Model {
        #[command(flatten)]
        common: Common,
    },
    /// Expand φ on a cobar word, e.g. `[s-1 sigma]`, or on `s⁻¹` of a named simplex.
    Phi {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "generator")]
        word: Option<String>,
        /// Name of a nondegenerate simplex `x`; expands φ(s⁻¹x).
        #[arg(long)]
        generator: Option<String>,
    },
    /// Evaluate ψ on a loop-group word, e.g. `[t(sigma)^-1]`.
    Psi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        degree: usize,
    },
    /// Evaluate Φ on a loop-group word and print the homotopy residual.
    Homotopy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        degree: usize,
    },
    /// Homology of the cobar construction of a 1-reduced model.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite name or `all`; may be repeated.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Defaults to 3 (2 for `sdr`).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_word_length: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

enum Failure {
    Input(String),
    Identity,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load_model(spec: &str) -> Result<SimplicialSet, Failure> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
        Ok(load_json(&text)?)
    } else {
        Ok(spec.parse::<ModelKind>()?.build()?)
    }
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Model { common } => {
            let x = load_model(&common.model)?;
            let counts: Vec<usize> = (0..=x.top_dim()).map(|d| x.count(d)).collect();
            let mut text = format!("{}\n0-reduced: {}\n1-reduced: {}\n", x.name(), x.is_0_reduced(), x.is_1_reduced());
            for (d, c) in counts.iter().enumerate() {
                let names: Vec<&str> = x.nondegenerate(d).map(|id| x.simplex_name(id)).collect();
                text += format!("dim {d}: {c}  {}", names.join(" ")).trim_end();
                text.push('\n');
            }
            let file = SimplicialSetFile::from_set(&x);
            emit(common.format, text.trim_end().to_string(), serde_json::to_value(file)?);
        }
        Command::Phi { common, word, generator } => {
            let x = load_model(&common.model)?;
            let e = match (word, generator) {
                (Some(w), _) => parse_cobar(&x, &w)?,
                (None, Some(g)) => letter(CobarLetter::Suspended(x.find_any(&g)?)),
                (None, None) => return Err(Failure::Input("give --word or --generator".into())),
            };
            let out = Szczarba::new(&x)?.apply(&e)?;
            let text = print_group_chain(&x, &out, true);
            let value = json!({ "input": print_cobar(&x, &e, false), "degree": out.degree(), "phi": text.lines().collect::<Vec<_>>() });
            emit(common.format, text, value);
        }
        Command::Psi { common, word, degree } => {
            let x = load_model(&common.model)?;
            let w = GroupWord::parse(&x, &word, degree)?;
            let out = Retraction::new(&x)?.apply(&word_chain(w.clone()))?;
            let text = print_cobar(&x, &out, common.long);
            let value = json!({ "input": w.render(&x), "degree": degree, "psi": text });
            emit(common.format, text, value);
        }
        Command::Homotopy { common, word, degree } => {
            let x = load_model(&common.model)?;
            let w = GroupWord::parse(&x, &word, degree)?;
            let h = Homotopy::default();
            let c = word_chain(w.clone());
            let value_chain = h.apply(&x, &c)?;
            let residual = h.residual(&x, &c)?;
            let phi_text = print_group_chain(&x, &value_chain, common.long);
            let res_text = print_group_chain(&x, &residual, common.long);
            let text = format!("Phi:\n{phi_text}\nresidual:\n{res_text}");
            let value = json!({ "input": w.render(&x), "degree": degree, "phi": phi_text, "residual": res_text });
            emit(common.format, text, value);
            if !residual.is_zero() {
                return Err(Failure::Identity);
            }
        }
        Command::Homology { common, max_degree } => {
            let x = load_model(&common.model)?;
            let groups = cobar_homology(&x, max_degree)?;
            let mut text = format!("{:>6}  {:>5}  group\n", "degree", "betti");
            for g in &groups {
                text += &format!("{:>6}  {:>5}  {g}\n", g.degree, g.betti);
            }
            emit(common.format, text.trim_end().to_string(), serde_json::to_value(&groups)?);
        }
        Command::Verify { common, suite, seed, max_degree, max_word_length, samples } => {
            let x = load_model(&common.model)?;
            let mut suites = Vec::new();
            for s in &suite {
                if s == "all" {
                    suites.extend(Suite::ALL.into_iter().filter(|k| *k != Suite::Homology || x.is_1_reduced()));
                } else {
                    suites.push(s.parse::<Suite>()?);
                }
            }
            let mut reports = Vec::new();
            for s in suites {
                let limits = Limits { max_degree: max_degree.unwrap_or(s.default_max_degree()), max_word_length, samples, seed };
                reports.push(run_suite(s, &x, limits)?);
            }
            let ok = reports.iter().all(|r| r.all_passed());
            match common.format {
                Format::Text => {
                    for r in &reports {
                        println!("{}", r.render_text());
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
            }
            if !ok {
                return Err(Failure::Identity);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
