use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphoid::bayesnet::{build_network, d_separated};
use graphoid::dist::{
    random_gaussian, random_gaussian_factored, random_spb, random_spb_factored, CiOracle,
    IndependenceOracle,
};
use graphoid::io::{similarity_to_json, Distribution, JsonArtifact, NamedPartitionTriple};
use graphoid::relevance::{check_clean, is_transitive, relations, CheckResult, PartitionTriple};
use graphoid::simnet::{build_similarity, types_equivalent, HypothesisCover, NetType};
use graphoid::suite::{run_suite, SuiteConfig, SuiteName};
use graphoid::{Dag, Error, JointTable, SeparationQuery, Triplet, Universe};

/// `println!` that tolerates a closed standard output, e.g. when piped into `head`.
macro_rules! outln {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// Environment variable overriding the default seed of randomized commands.
const SEED_ENV: &str = "GRAPHOID_SEED";

#[derive(Parser)]
#[command(
    name = "graphoid",
    version,
    about = "Relevance reasoning over graphoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether X is independent of Y given Z in a distribution file.
    Ci {
        file: PathBuf,
        /// Comma-separated variables of X.
        x: String,
        /// Comma-separated variables of Y.
        y: String,
        /// Comma-separated conditioning variables.
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
        /// Override the backend's default tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Build the minimal Bayesian network of a distribution under an order.
    BuildNet {
        file: PathBuf,
        /// Comma-separated construction order; defaults to the listing order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Write the network here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Test d-separation in a network file.
    Dsep {
        dag: PathBuf,
        x: String,
        y: String,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Mutual irrelevance, uncoupling and unrelatedness of two variables.
    Relations { file: PathBuf, x: String, y: String },
    /// Check whether pairwise relevance is transitive.
    Transitive { file: PathBuf },
    /// Evaluate the three-partition implication for one partition triple.
    CleanCheck {
        file: PathBuf,
        /// The distinguished variable.
        #[arg(long)]
        e: String,
        /// Two distinct values of e, as labels or indices (Gaussians only need them distinct).
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        e_values: Vec<String>,
        /// First parts of the three partitions; second parts are the complements.
        #[arg(long, value_delimiter = ',')]
        x1: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        y1: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        z1: Vec<String>,
    },
    /// Build a similarity network, or compare the two types when --type is omitted.
    Simnet {
        file: PathBuf,
        /// The hypothesis variable.
        #[arg(long)]
        h: String,
        /// Hypothesis subsets as value labels, e.g. "h1,h2,h3;h4,h5"; defaults to the whole domain.
        #[arg(long)]
        cover: Option<String>,
        /// 1 (related) or 2 (relevant).
        #[arg(long = "type")]
        net_type: Option<u8>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a random distribution file.
    Randgen {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Edge probability of the factored families.
        #[arg(long, default_value_t = 0.35)]
        edge_prob: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite.
    Suite {
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n_vars: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Report path; defaults to `<name>-report.json`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Spb,
    Factored,
    Gaussian,
    GaussianFactored,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    /// The queried property holds, or the command has no verdict.
    Holds,
    /// The queried property fails.
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn verdict(holds: bool) -> Outcome {
    if holds {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn load_distribution(path: &Path) -> Result<Distribution, Error> {
    Distribution::from_json(&read(path)?)
}

fn load_table(path: &Path) -> Result<JointTable, Error> {
    match load_distribution(path)? {
        Distribution::Table(t) => Ok(t),
        Distribution::Gaussian(_) => Err(Error::UnsupportedBackend("gaussian")),
    }
}

fn oracle(dist: Distribution) -> CiOracle {
    match dist {
        Distribution::Table(t) => CiOracle::table(t),
        Distribution::Gaussian(g) => CiOracle::gaussian(g),
    }
}

fn names(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn as_strs(list: &[String]) -> Vec<&str> {
    list.iter().map(String::as_str).collect()
}

fn seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.parse().map_err(|_| {
            Error::InvalidArgument(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))
        }),
        Err(_) => Ok(0),
    }
}

fn value_index(universe: &Universe, var: usize, label: &str) -> Result<usize, Error> {
    if universe.is_labeled() {
        if let Some(i) = universe.domain(var).iter().position(|v| v == label) {
            return Ok(i);
        }
    }
    label.parse().map_err(|_| {
        Error::InvalidArgument(format!(
            "`{label}` is not a value of `{}`",
            universe.name(var)
        ))
    })
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Ci {
            file,
            x,
            y,
            given,
            tolerance,
        } => {
            let mut o = oracle(load_distribution(&file)?);
            if let Some(tol) = tolerance {
                o = o.with_tolerance(tol)?;
            }
            let t = Triplet::named(o.universe(), &names(&x), &names(&y), &as_strs(&given))?;
            let v = o.verdict(&t)?;
            let statistic = match o.backend_name() {
                "gaussian" => "max |conditional covariance|",
                _ => "max |P(X|Y,Z) - P(X|Z)|",
            };
            outln!("{}", if v.holds { "holds" } else { "fails" });
            outln!("{statistic} = {:e}", v.discrepancy);
            Ok(verdict(v.holds))
        }
        Command::BuildNet {
            file,
            order,
            output,
        } => {
            let o = oracle(load_distribution(&file)?);
            let u = o.universe().clone();
            let order = match order {
                Some(names) => names
                    .iter()
                    .map(|n| u.index_of(n))
                    .collect::<Result<Vec<_>, _>>()?,
                None => (0..u.len()).collect(),
            };
            let dag = build_network(&o, &order)?;
            write_or_print(output.as_deref(), &dag.to_json()?)?;
            let components: Vec<String> = dag
                .connected_components()
                .into_iter()
                .map(|c| {
                    format!(
                        "{{{}}}",
                        c.iter().map(|v| u.name(v)).collect::<Vec<_>>().join(", ")
                    )
                })
                .collect();
            let line = format!("components: {}", components.join(" "));
            // Keep standard output pure JSON when the network goes there.
            if output.is_some() {
                outln!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(Outcome::Holds)
        }
        Command::Dsep { dag, x, y, given } => {
            let dag = Dag::from_json(&read(&dag)?)?;
            let q =
                SeparationQuery::named(dag.universe(), &names(&x), &names(&y), &as_strs(&given))?;
            let separated = d_separated(&dag, &q)?;
            outln!("{}", if separated { "separated" } else { "connected" });
            Ok(verdict(separated))
        }
        Command::Relations { file, x, y } => {
            let o = oracle(load_distribution(&file)?);
            let u = o.universe();
            let verdicts = relations(&o, u.index_of(&x)?, u.index_of(&y)?)?;
            outln!("{}", serde_json::to_string_pretty(&verdicts)?);
            Ok(Outcome::Holds)
        }
        Command::Transitive { file } => {
            let o = oracle(load_distribution(&file)?);
            let t = is_transitive(&o)?;
            match &t.witness {
                None => outln!("transitive"),
                Some([a, b, c]) => outln!(
                    "not transitive: {a} is relevant to {b}, {b} to {c}, but {a} and {c} are mutually irrelevant"
                ),
            }
            Ok(verdict(t.transitive))
        }
        Command::CleanCheck {
            file,
            e,
            e_values,
            x1,
            y1,
            z1,
        } => {
            let o = oracle(load_distribution(&file)?);
            let u = o.universe().clone();
            let ei = u.index_of(&e)?;
            let [first, second] = <[String; 2]>::try_from(e_values).map_err(|_| {
                Error::InvalidArgument("--e-values takes exactly two values".into())
            })?;
            let values = (value_index(&u, ei, &first)?, value_index(&u, ei, &second)?);
            let pt = PartitionTriple::new(&u, u.set(&x1)?, u.set(&y1)?, u.set(&z1)?, ei, values)?;
            let result = check_clean(&o, &pt)?;
            let report = serde_json::json!({
                "partition": NamedPartitionTriple::new(&u, &pt),
                "check": result,
            });
            outln!("{}", serde_json::to_string_pretty(&report)?);
            Ok(verdict(result != CheckResult::Violation))
        }
        Command::Simnet {
            file,
            h,
            cover,
            net_type,
            output,
        } => {
            let table = load_table(&file)?;
            let cover = match cover {
                Some(spec) => {
                    let subsets: Vec<Vec<&str>> = spec.split(';').map(names).collect();
                    HypothesisCover::named(&table, &h, &subsets)?
                }
                None => HypothesisCover::whole(&table, table.universe().index_of(&h)?)?,
            };
            match net_type {
                Some(k) => {
                    let net = build_similarity(&table, &cover, NetType::from_number(k)?)?;
                    write_or_print(
                        output.as_deref(),
                        &similarity_to_json(&net, table.universe())?,
                    )?;
                    Ok(Outcome::Holds)
                }
                None => {
                    let report = types_equivalent(&table, &cover)?;
                    let mut text = serde_json::to_string_pretty(&report)?;
                    text.push('\n');
                    write_or_print(output.as_deref(), &text)?;
                    Ok(verdict(report.equivalent))
                }
            }
        }
        Command::Randgen {
            family,
            n,
            seed: flag,
            edge_prob,
            output,
        } => {
            let s = seed(flag)?;
            let text = match family {
                Family::Spb => random_spb::<f64>(n, s)?.to_json()?,
                Family::Factored => random_spb_factored::<f64>(n, edge_prob, s)?.to_json()?,
                Family::Gaussian => random_gaussian::<f64>(n, s)?.to_json()?,
                Family::GaussianFactored => {
                    random_gaussian_factored::<f64>(n, edge_prob, s)?.to_json()?
                }
            };
            write_or_print(output.as_deref(), &text)?;
            Ok(Outcome::Holds)
        }
        Command::Suite {
            name,
            seed: flag,
            n_vars,
            samples,
            report,
        } => {
            let suite: SuiteName = name.parse()?;
            let config = SuiteConfig {
                seed: seed(flag)?,
                n_vars,
                samples,
            };
            let result = run_suite(suite, &config)?;
            let path = report.unwrap_or_else(|| PathBuf::from(format!("{suite}-report.json")));
            write_or_print(Some(&path), &result.to_json()?)?;
            outln!("{}", result.summary());
            outln!("report: {}", path.display());
            Ok(verdict(result.passed()))
        }
    }
}
