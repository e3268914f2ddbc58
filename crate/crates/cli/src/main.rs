use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modq::dense::{
    delta_of_c, read_csv, summarize, transition_experiment, write_csv, x_of_c, Model, Rho, TransitionConfig,
};
use modq::edit::{
    bipartite_addition_witness, bipartite_removal_witness, edit_distance_with, kn_minus_witness,
    multipartite_removal_witness, EditMode, EditSearchResult, SearchOptions, Witness,
};
use modq::modularity::{format_partition, format_vertex_sets, has_positive_modularity_capped, parse_partition};
use modq::scalar::format_rational;
use modq::{exact_modularity, modularity_score, p_value, Error, Graph, Modularity, Score, VertexSet};

#[derive(Parser)]
#[command(name = "modq", version, about = "Exact modularity queries, edit distances and dense random graph experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Edge-list file: a line "n m" followed by m lines "u v".
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Builder spec: Kn:7, Kst:2,4, Kparts:1,3,3, Pn:4, Cn:5 or En:3.
    #[arg(long)]
    builder: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Remove,
    Add,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnp,
    Gnm,
}

#[derive(Subcommand)]
enum Command {
    /// Score a partition given as "0,1|2,3".
    Score {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        partition: String,
    },
    /// Maximum modularity over all partitions, with a maximiser.
    Exact {
        #[command(flatten)]
        input: Input,
    },
    /// Whether some bipartition scores positively.
    Positive {
        #[command(flatten)]
        input: Input,
        /// Vertex cap for the bipartition scan.
        #[arg(long, default_value_t = modq::modularity::SUBSET_SCAN_CAP)]
        cap: usize,
    },
    /// p(U) = 2 e(U) vol(G) - vol(U)^2 for a set given as "0,2,5".
    Pvalue {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        set: String,
    },
    /// Fewest edits reaching positive modularity.
    Delta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        budget: usize,
        /// Decide each level on orbit representatives first.
        #[arg(long)]
        prune: bool,
        /// Run on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Explicit witness constructions.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Run the dense transition experiment and write CSV.
    Transition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum, default_value = "gnp")]
        model: ModelArg,
        /// Inclusive range "a..b" or a comma-separated list.
        #[arg(long)]
        seeds: String,
        /// Component-size fraction, "num/den" or decimal. Defaults to n^(-1/3).
        #[arg(long)]
        rho: Option<Rho>,
        /// Output path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate a transition CSV per (n, c, mode).
    Summarize { csv: PathBuf },
    /// x(c) and, for 1 < c <= 2, delta(c).
    Xc {
        #[arg(long)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// K_n with floor(n/2) + 1 crossing edges removed.
    Kn {
        #[arg(long)]
        n: usize,
    },
    /// K_{s,t} with one crossing edge removed.
    BipMinus {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// K_{s,t} with one edge added inside a part.
    BipPlus {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Complete multipartite graph with one crossing edge removed.
    Multi {
        /// Part sizes, e.g. 2,2,2.
        #[arg(long)]
        parts: String,
        /// Common factor of all part sizes.
        #[arg(long)]
        l: usize,
    },
}

fn parse_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad integer list {text:?}"))))
        .collect()
}

fn build(spec: &str) -> Result<Graph, Error> {
    let bad = || Error::InvalidParameter(format!("unknown builder spec {spec:?}"));
    let (family, args) = spec.split_once(':').ok_or_else(bad)?;
    let args = parse_list(args).map_err(|_| bad())?;
    match (family, args.as_slice()) {
        ("Kn", &[n]) => Ok(Graph::complete(n)),
        ("Kst", &[s, t]) => Graph::complete_bipartite(s, t),
        ("Kparts", parts) if parts.len() >= 2 => Graph::complete_multipartite(parts),
        ("Pn", &[n]) => Ok(Graph::path(n)),
        ("Cn", &[n]) => Graph::cycle(n),
        ("En", &[n]) => Ok(Graph::empty(n)),
        _ => Err(bad()),
    }
}

fn load(input: &Input) -> Result<Graph, Error> {
    match (&input.graph, &input.builder) {
        (Some(path), None) => Graph::parse(BufReader::new(File::open(path)?)),
        (None, Some(spec)) => build(spec),
        _ => Err(Error::InvalidParameter("give exactly one of --graph and --builder".into())),
    }
}

fn parse_seeds(text: &str) -> Result<Vec<u64>, Error> {
    let bad = || Error::InvalidParameter(format!("bad seed list {text:?}"));
    let seeds: Vec<u64> = if let Some((a, b)) = text.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        text.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(seeds)
}

fn write_witness(out: &mut impl Write, w: &Witness<i128>) -> io::Result<()> {
    for e in &w.edits {
        writeln!(out, "{e}")?;
    }
    writeln!(out, "{}", format_vertex_sets(&w.bipartition.parts()))?;
    writeln!(out, "{}", format_rational(&w.score.score))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Error> {
    match cli.command {
        Command::Score { input, partition } => {
            let g = load(&input)?;
            let parts = parse_partition(&partition, g.n())?;
            let s: Score = modularity_score(&g, &parts)?;
            writeln!(out, "{}", format_rational(&s.score))?;
        }
        Command::Exact { input } => {
            let q: Modularity = exact_modularity(&load(&input)?)?;
            writeln!(out, "{}", format_rational(&q.value))?;
            writeln!(out, "{}", format_partition(&q.argmax_partition))?;
        }
        Command::Positive { input, cap } => {
            let w = has_positive_modularity_capped(&load(&input)?, cap)?;
            match (w.bipartition(), w.p_value) {
                (Some(b), Some(p)) => {
                    writeln!(out, "positive")?;
                    writeln!(out, "{}", format_vertex_sets(&b.parts()))?;
                    writeln!(out, "{p}")?;
                }
                _ => writeln!(out, "zero")?,
            }
        }
        Command::Pvalue { input, set } => {
            let g = load(&input)?;
            let u = VertexSet::from_vertices(g.n(), parse_list(&set)?)?;
            writeln!(out, "{}", p_value::<i128>(&g, &u)?)?;
        }
        Command::Delta { input, mode, budget, prune, sequential } => {
            let g = load(&input)?;
            let mode = match mode {
                ModeArg::Remove => EditMode::RemoveOnly,
                ModeArg::Add => EditMode::AddOnly,
                ModeArg::Both => EditMode::Both,
            };
            let mut opts = SearchOptions::new(budget);
            opts.prune_symmetric = prune;
            opts.parallel = !sequential;
            match edit_distance_with(&g, mode, &opts)? {
                EditSearchResult::Found(c) => {
                    writeln!(out, "{}", c.distance)?;
                    for e in &c.edits {
                        writeln!(out, "{e}")?;
                    }
                    writeln!(out, "{}", format_vertex_sets(&c.witness.parts()))?;
                    writeln!(out, "{}", format_rational(&c.score.score))?;
                }
                EditSearchResult::NoneWithinBudget(b) => writeln!(out, "none within budget {b}")?,
            }
        }
        Command::Witness { kind } => match kind {
            WitnessKind::Kn { n } => write_witness(out, &kn_minus_witness(n)?)?,
            WitnessKind::BipMinus { s, t } => write_witness(out, &bipartite_removal_witness(s, t)?)?,
            WitnessKind::BipPlus { s, t } => match bipartite_addition_witness(s, t)? {
                Some(w) => write_witness(out, &w)?,
                None => writeln!(out, "not possible")?,
            },
            WitnessKind::Multi { parts, l } => write_witness(out, &multipartite_removal_witness(&parse_list(&parts)?, l)?)?,
        },
        Command::Transition { n, c, model, seeds, rho, out: path } => {
            let model = match model {
                ModelArg::Gnp => Model::Gnp { c },
                ModelArg::Gnm => Model::Gnm { c },
            };
            let config = TransitionConfig { n, model, seeds: parse_seeds(&seeds)?, rho };
            let records = transition_experiment(&config)?;
            match path {
                Some(p) => write_csv(&records, BufWriter::new(File::create(p)?))?,
                None => write_csv(&records, &mut *out)?,
            }
        }
        Command::Summarize { csv } => {
            for group in summarize(&read_csv(File::open(csv)?)?)? {
                writeln!(out, "{group}")?;
            }
        }
        Command::Xc { c } => {
            writeln!(out, "x {}", x_of_c(c)?)?;
            if c > 1.0 && c <= 2.0 {
                writeln!(out, "delta {}", delta_of_c(c)?)?;
            }
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Schema(_) | Error::Csv(_) => 3,
        Error::CapExceeded { .. } => 4,
        Error::HypothesisUnmet { .. } => 5,
        Error::Io(_) => 6,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Error::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("modq: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists() {
        assert_eq!(parse_seeds("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_seeds("7, 2,9").unwrap(), vec![7, 2, 9]);
        assert!(parse_seeds("5..3").is_err());
        assert!(parse_seeds("a").is_err());
    }

    #[test]
    fn builders() {
        assert_eq!(build("Kn:5").unwrap().m(), 10);
        assert_eq!(build("Kst:2,4").unwrap().m(), 8);
        assert_eq!(build("Kparts:1,3,3").unwrap().m(), 15);
        assert_eq!(build("Cn:5").unwrap().m(), 5);
        assert_eq!(build("En:3").unwrap().m(), 0);
        assert!(build("Kn:2,3").is_err());
        assert!(build("Kn").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
