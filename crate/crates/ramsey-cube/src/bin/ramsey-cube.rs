use clap::{Parser, Subcommand, ValueEnum};
use ramsey_cube::decomposition::{decompose, SizeSchedule};
use ramsey_cube::dense::{dense_embed, EmbedOutcome};
use ramsey_cube::io::cert::{self, Certificate};
use ramsey_cube::io::config::RunConfig;
use ramsey_cube::io::crg;
use ramsey_cube::matching::{matching_dichotomy, DichotomyOutcome};
use ramsey_cube::oracle::{self, brute_subgraph, ramsey_decide, DecideOptions, Pattern, Target, Verdict};
use ramsey_cube::stability::{h_profile, lower_bound_colouring, ramsey_main};
use ramsey_cube::{Colour, ColouredGraph, Error, Result, SmallGraph};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ramsey-cube", version, about = "Clique versus hypercube Ramsey tools")]
struct Cli {
    /// Overrides the configuration seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, env = "RAMSEY_CUBE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Dense,
    Path,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the lower-bound colouring for K_s (or for the graph in --h-file).
    ConstructExtremal {
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h_file: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the sparse-set decomposition and print the family and trace as JSON.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Look for a red Q_n and write a certificate.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        strategy: Strategy,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a certificate, or check that the graph avoids given patterns.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Require the certificate clique (or the graph) to concern blue K_s.
        #[arg(long)]
        no_blue_clique: Option<usize>,
        /// Require the graph to have no red copy of this target.
        #[arg(long)]
        no_red: Option<String>,
    },
    /// Decide r(K_s, target) > N by exhaustive search.
    RamseySearch {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        target: String,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the chromatic number and smallest colour class of a pattern graph.
    ProfileH {
        #[arg(long)]
        h_file: PathBuf,
    },
}

fn read_h(path: &Path) -> Result<SmallGraph> {
    SmallGraph::parse(&std::fs::read_to_string(path)?)
}

fn config(path: &Option<PathBuf>, seed: Option<u64>) -> Result<RunConfig> {
    let mut c = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        c.seed = s;
    }
    Ok(c)
}

/// Exit code 1 for a failed check, 2 for an error.
fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::ConstructExtremal { s, n, h_file, out } => {
            let profile = match (h_file, s) {
                (Some(f), _) => h_profile(&read_h(&f)?)?,
                (None, Some(s)) => h_profile(&SmallGraph::complete(s))?,
                (None, None) => return Err(Error::Input("give --s or --h-file".into())),
            };
            if n == 0 || n > 16 {
                return Err(Error::Input("n must lie in 1..=16".into()));
            }
            crg::write(&out, &lower_bound_colouring(&profile, n))?;
            Ok(0)
        }
        Cmd::Decompose { input, config: cfg, out } => {
            let c = config(&cfg, cli.seed)?;
            let g = crg::read(&input)?;
            let schedule = if c.decomposition.schedule.is_empty() {
                SizeSchedule::geometric(g.n(), c.decomposition.epsilon)
            } else {
                SizeSchedule::custom(c.decomposition.schedule.clone(), c.decomposition.epsilon)?
            };
            let d = decompose(&g, c.decomposition.epsilon, c.s, &schedule, &c.decompose_options()).map_err(|e| e.at("decompose"))?;
            let sets: Vec<Vec<usize>> = d.family.sets.iter().map(|s| s.to_vec()).collect();
            let doc = json!({
                "level": d.family.level,
                "set_size": schedule.a[d.family.level],
                "heuristic": d.heuristic,
                "sets": sets,
                "trace": d.trace.iter().map(|t| t.line()).collect::<Vec<_>>(),
            });
            let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Embed { input, config: cfg, strategy, s, n, out } => {
            let mut c = config(&cfg, cli.seed)?;
            c.s = s.unwrap_or(c.s);
            c.n = n.unwrap_or(c.n);
            c.validate()?;
            let g = crg::read(&input)?;
            let certificate = match strategy {
                Strategy::Dense => outcome_cert(dense_embed(&g, c.n, &c.dense_params(), c.seed).map_err(|e| e.at("dense"))?),
                Strategy::Full => outcome_cert(ramsey_main(&g, c.s, c.n, &c.main_options(), c.seed)?),
                Strategy::Path => {
                    let schedule = SizeSchedule::geometric(g.n(), c.decomposition.epsilon);
                    let d = match decompose(&g, c.decomposition.epsilon, c.s, &schedule, &c.decompose_options()) {
                        Ok(d) => d,
                        Err(Error::BlueCliqueFound(w)) => return write_cert(&out, &Certificate::BlueClique(w)),
                        Err(e) => return Err(e.at("decompose")),
                    };
                    match matching_dichotomy(&g, &d.family.sets, c.n, &c.match_params(), c.seed).map_err(|e| e.at("matching"))? {
                        DichotomyOutcome::Embedding(e) => Certificate::Embedding(e),
                        DichotomyOutcome::BlueClique(w) => Certificate::BlueClique(w),
                        DichotomyOutcome::Partition(p) => {
                            let mut classes = vec![Vec::new()];
                            let mut covered = p.x.clone();
                            for part in &p.parts {
                                let mut class = g.empty_set();
                                for &i in part {
                                    class.union_with(&d.family.sets[i].difference(&p.x));
                                }
                                covered.union_with(&class);
                                classes.push(class.to_vec());
                            }
                            classes[0] = covered.complement().union(&p.x).to_vec();
                            Certificate::Partition(classes)
                        }
                    }
                }
            };
            write_cert(&out, &certificate)
        }
        Cmd::Verify { input, cert: cert_path, no_blue_clique, no_red } => {
            let g = crg::read(&input)?;
            let mut ok = true;
            let mut report = serde_json::Map::new();
            if let Some(p) = cert_path {
                let c = cert::read(&p)?;
                let (valid, detail) = check_cert(&g, &c, no_blue_clique);
                report.insert("certificate".into(), json!({ "kind": c.kind(), "valid": valid, "detail": detail }));
                ok &= valid;
            } else {
                if let Some(s) = no_blue_clique {
                    let found = g.find_clique(&g.all(), s, Colour::Blue)?;
                    report.insert("blue_clique".into(), json!({ "s": s, "found": found.as_ref().map(|w| w.members.clone()) }));
                    ok &= found.is_none();
                }
                if let Some(t) = no_red {
                    let target = Target::parse(&t)?;
                    let h = target.graph();
                    let biggest = oracle::red_components(&g).into_iter().max().unwrap_or(0);
                    let found = if biggest < h.n { None } else { brute_subgraph(&g, &Pattern::Graph(h), Colour::Red)? };
                    report.insert("red_target".into(), json!({ "target": t, "found": found }));
                    ok &= found.is_none();
                }
            }
            report.insert("valid".into(), json!(ok));
            println!("{}", serde_json::Value::Object(report));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::RamseySearch { s, target, big_n, budget, out } => {
            let t = Target::parse(&target)?;
            let d = ramsey_decide(s, t, big_n, &DecideOptions { budget, ..Default::default() })?;
            match d.verdict {
                Verdict::Holds => println!("holds"),
                Verdict::Counterexample(g) => {
                    println!("counterexample");
                    if let Some(p) = out {
                        crg::write(&p, &g)?;
                    }
                }
            }
            eprintln!("{}", json!({ "nodes": d.nodes }));
            Ok(0)
        }
        Cmd::ProfileH { h_file } => {
            let p = h_profile(&read_h(&h_file)?)?;
            println!("{}", json!({ "vertices": p.h.n, "chi": p.chi, "sigma": p.sigma }));
            Ok(0)
        }
    }
}

fn outcome_cert(o: EmbedOutcome) -> Certificate {
    match o {
        EmbedOutcome::Embedding(e) => Certificate::Embedding(e),
        EmbedOutcome::BlueClique(w) => Certificate::BlueClique(w),
    }
}

fn write_cert(path: &Path, c: &Certificate) -> Result<u8> {
    cert::write(path, c)?;
    println!("{}", json!({ "certificate": c.kind(), "path": path.display().to_string() }));
    Ok(0)
}

fn check_cert(g: &ColouredGraph, c: &Certificate, s: Option<usize>) -> (bool, String) {
    match c {
        Certificate::Embedding(e) => {
            let r = oracle::validate_embedding(g, e);
            (r.valid, r.reason.unwrap_or_else(|| format!("red Q_{}", e.n)))
        }
        Certificate::BlueClique(w) => {
            let in_range = w.members.iter().all(|&v| v < g.n());
            let valid = in_range && g.is_clique(&w.members, Colour::Blue) && s.is_none_or(|s| w.members.len() >= s);
            (valid, format!("blue clique on {} vertices", w.members.len()))
        }
        Certificate::Partition(parts) => {
            let mut seen = vec![false; g.n()];
            for &v in parts.iter().flatten() {
                if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                    return (false, format!("vertex {v} repeated or out of range"));
                }
            }
            let all = seen.iter().all(|&b| b);
            (all, if all { format!("{} classes", parts.len()) } else { "classes do not cover the graph".into() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let stage = match &cli.cmd {
        Cmd::ConstructExtremal { .. } => "construct-extremal",
        Cmd::Decompose { .. } => "decompose",
        Cmd::Embed { .. } => "embed",
        Cmd::Verify { .. } => "verify",
        Cmd::RamseySearch { .. } => "ramsey-search",
        Cmd::ProfileH { .. } => "profile-h",
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.to_json(stage));
            ExitCode::from(2)
        }
    }
}
