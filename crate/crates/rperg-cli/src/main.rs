use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use rperg::chung_lu::chung_lu;
use rperg::generate::{ergm1_default_max_edges, generate_ergm1, generate_ergm2};
use rperg::graph::{largest_connected_component, parse_edge_list, Graph};
use rperg::learn::{learn, rule_histogram, LearnConfig};
use rperg::metrics::{self, MetricReport, MetricValues};
use rperg::{substream_seed, Grammar};

#[derive(Parser)]
#[command(name = "rperg", version, about = "Learn edge replacement grammars from graphs, generate new graphs, and compare them")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Commands {
    /// Learn a grammar from one or more edge-list files
    Learn(LearnArgs),
    /// Generate graphs from a learned grammar or the Chung-Lu baseline
    Generate(GenerateArgs),
    /// Compute the metric suite for a graph, optionally against another
    Metrics(MetricsArgs),
    /// Learn, generate, and evaluate several generators in one run
    Compare(CompareArgs),
}

#[derive(Args)]
struct LearnArgs {
    /// Input edge-list files (one graph each)
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Output grammar file
    #[arg(long)]
    output: PathBuf,
    /// Add the split-pair edge to both sides of every split
    #[arg(long)]
    virtual_both: bool,
    /// Root random seed (randomized split choices; omit for deterministic scans)
    #[arg(long)]
    seed: Option<u64>,
    /// Learn from the largest connected component only
    #[arg(long)]
    lcc: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Model {
    Ergm1,
    Ergm2,
    ChungLu,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Ergm1 => "ergm1",
            Model::Ergm2 => "ergm2",
            Model::ChungLu => "chung-lu",
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Learned grammar (required for ergm1/ergm2)
    #[arg(long)]
    grammar: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Model,
    /// Target vertex count (ergm2)
    #[arg(long)]
    nodes: Option<usize>,
    /// Edge-terminalization probability (ergm1)
    #[arg(long)]
    p: Option<f64>,
    /// Edge budget before an ergm1 attempt restarts
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, default_value_t = 100)]
    max_restarts: u32,
    /// Edge list whose degree sequence drives chung-lu
    #[arg(long)]
    degrees_from: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of graphs to generate
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    output_dir: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Second graph for distance scalars
    #[arg(long)]
    against: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    hop_samples: usize,
    #[arg(long, default_value_t = 50)]
    scree_k: usize,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated generators: rperg, chung-lu
    #[arg(long, value_delimiter = ',', default_value = "rperg,chung-lu")]
    generators: Vec<String>,
    /// Graphs per generator
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target size for generated graphs (default: the input's vertex count)
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    output_dir: PathBuf,
    #[arg(long)]
    virtual_both: bool,
    #[arg(long, default_value_t = 50)]
    hop_samples: usize,
    #[arg(long, default_value_t = 50)]
    scree_k: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new().stack_size(16 * 1024 * 1024);
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs.max(1));
    }
    if let Err(e) = pool.build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    let result = match cli.command {
        Commands::Learn(args) => cmd_learn(args),
        Commands::Generate(args) => cmd_generate(args),
        Commands::Metrics(args) => cmd_metrics(args),
        Commands::Compare(args) => cmd_compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let (graph, stats) = parse_edge_list(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", path.display()))?;
    if stats.dropped() > 0 {
        eprintln!(
            "{}: dropped {} self-loops, merged {} duplicate edges",
            path.display(),
            stats.self_loops_dropped,
            stats.duplicates_merged
        );
    }
    Ok(graph)
}

fn read_grammar(path: &Path) -> Result<Grammar> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot open {}", path.display()))?;
    Grammar::deserialize(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn cmd_learn(args: LearnArgs) -> Result<()> {
    let mut graphs = Vec::new();
    for path in &args.input {
        let g = read_graph(path)?;
        graphs.push(if args.lcc { largest_connected_component(&g) } else { g });
    }
    let cfg = LearnConfig {
        virtual_both: args.virtual_both,
        seed: args.seed.map(|s| substream_seed(s, "learn")),
        parallel: true,
    };
    let grammar = learn(&graphs, &cfg)?;
    fs::write(&args.output, grammar.serialize())
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    println!(
        "learned {} rules from {} graphs ({} rule occurrences)",
        grammar.len(),
        graphs.len(),
        grammar.total_count()
    );
    for (desc, count) in rule_histogram(&grammar).into_iter().take(10) {
        println!("{count:>8}  {desc}");
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    fs::create_dir_all(&args.output_dir)?;
    let grammar = match args.model {
        Model::Ergm1 | Model::Ergm2 => Some(read_grammar(
            args.grammar
                .as_deref()
                .context("--grammar is required for ergm1/ergm2")?,
        )?),
        Model::ChungLu => None,
    };
    let degrees = match args.model {
        Model::ChungLu => {
            let source = read_graph(
                args.degrees_from
                    .as_deref()
                    .context("--degrees-from is required for chung-lu")?,
            )?;
            Some(source.degree_sequence())
        }
        _ => None,
    };
    for i in 0..args.count {
        let seed = substream_seed(args.seed, &format!("gen-{}-{i}", args.model.name()));
        let graph = match args.model {
            Model::Ergm2 => {
                let target = args.nodes.context("--nodes is required for ergm2")?;
                generate_ergm2(grammar.as_ref().unwrap(), target, seed)?.graph
            }
            Model::Ergm1 => {
                let gr = grammar.as_ref().unwrap();
                let p = args.p.context("--p is required for ergm1")?;
                let max_edges = args.max_edges.unwrap_or_else(|| ergm1_default_max_edges(gr, p));
                generate_ergm1(gr, p, seed, max_edges, args.max_restarts)?.graph
            }
            Model::ChungLu => chung_lu(degrees.as_ref().unwrap(), seed)?,
        };
        let path = args.output_dir.join(format!("gen-{}-{i}.txt", args.model.name()));
        fs::write(&path, graph.to_edge_list())?;
        println!("{}: n={} m={}", path.display(), graph.n(), graph.m());
    }
    Ok(())
}

struct MetricConfig {
    seed: u64,
    hop_samples: usize,
    scree_k: usize,
}

/// The full per-graph metric suite plus the graph's mean clustering scalar.
fn metric_suite(g: &Graph, cfg: &MetricConfig) -> Result<Vec<MetricReport>> {
    let mut reports = vec![
        metrics::degree_distribution(g),
        metrics::network_values(g)?,
        metrics::hop_plot(g, cfg.hop_samples, substream_seed(cfg.seed, "metric-hop")),
        metrics::clustering_by_degree(g),
        metrics::scree(g, cfg.scree_k.min(g.n())),
        metrics::triangle_participation(g),
    ];
    reports.push(MetricReport::scalar(
        "global_clustering",
        metrics::global_clustering(g),
    ));
    Ok(reports)
}

fn distance_scalars(original: &Graph, candidate: &Graph) -> Result<Vec<MetricReport>> {
    Ok(vec![
        MetricReport::scalar(
            "network_value_distance",
            metrics::network_value_distance(original, candidate)?,
        ),
        MetricReport::scalar("gcd", metrics::gcd(original, candidate)),
    ])
}

fn reports_to_csv(reports: &[MetricReport]) -> String {
    let mut out = String::from("metric,x,y\n");
    for r in reports {
        match &r.values {
            MetricValues::Series(series) => {
                for (x, y) in series {
                    out.push_str(&format!("{},{x},{y}\n", r.name));
                }
            }
            MetricValues::Scalar(v) => {
                out.push_str(&format!("{},{v}\n", r.name));
            }
        }
    }
    out
}

fn cmd_metrics(args: MetricsArgs) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let cfg = MetricConfig { seed: args.seed, hop_samples: args.hop_samples, scree_k: args.scree_k };
    let mut reports = metric_suite(&g, &cfg)?;
    if let Some(other_path) = &args.against {
        let other = read_graph(other_path)?;
        reports.extend(distance_scalars(&g, &other)?);
    }
    fs::write(&args.out, reports_to_csv(&reports))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    println!("wrote {} metrics to {}", reports.len(), args.out.display());
    Ok(())
}

/// Mean-aggregates series across graphs: y values are averaged per x with
/// missing points counted as zero; scalars are averaged directly.
fn mean_reports(per_graph: &[Vec<MetricReport>]) -> Vec<MetricReport> {
    let k = per_graph.len() as f64;
    let mut order: Vec<String> = Vec::new();
    let mut series_acc: BTreeMap<String, BTreeMap<i64, f64>> = BTreeMap::new();
    let mut scalar_acc: BTreeMap<String, f64> = BTreeMap::new();
    for reports in per_graph {
        for r in reports {
            if !order.contains(&r.name) {
                order.push(r.name.clone());
            }
            match &r.values {
                MetricValues::Series(series) => {
                    let acc = series_acc.entry(r.name.clone()).or_default();
                    for &(x, y) in series {
                        *acc.entry(x.round() as i64).or_insert(0.0) += y;
                    }
                }
                MetricValues::Scalar(v) => {
                    *scalar_acc.entry(r.name.clone()).or_insert(0.0) += v;
                }
            }
        }
    }
    order
        .into_iter()
        .map(|name| {
            if let Some(acc) = series_acc.get(&name) {
                MetricReport {
                    name: name.clone(),
                    values: MetricValues::Series(
                        acc.iter().map(|(&x, &sum)| (x as f64, sum / k)).collect(),
                    ),
                    meta: vec![("aggregated_over".into(), per_graph.len().to_string())],
                }
            } else {
                MetricReport {
                    name: name.clone(),
                    values: MetricValues::Scalar(scalar_acc[&name] / k),
                    meta: vec![("aggregated_over".into(), per_graph.len().to_string())],
                }
            }
        })
        .collect()
}

fn scalar_of(reports: &[MetricReport], name: &str) -> f64 {
    reports
        .iter()
        .find(|r| r.name == name)
        .and_then(|r| r.as_scalar())
        .unwrap_or(f64::NAN)
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    fs::create_dir_all(&args.output_dir)?;
    let original = read_graph(&args.input)?;
    let target_n = args.nodes.unwrap_or(original.n());
    println!("original: n={} m={}", original.n(), original.m());

    let learn_cfg = LearnConfig {
        virtual_both: args.virtual_both,
        seed: Some(substream_seed(args.seed, "learn")),
        parallel: true,
    };
    let needs_grammar = args.generators.iter().any(|g| g == "rperg");
    let grammar = if needs_grammar {
        let grammar = learn(std::slice::from_ref(&original), &learn_cfg)?;
        fs::write(args.output_dir.join("grammar.json"), grammar.serialize())?;
        println!("learned {} rules ({} occurrences)", grammar.len(), grammar.total_count());
        Some(grammar)
    } else {
        None
    };

    let metric_cfg = MetricConfig {
        seed: args.seed,
        hop_samples: args.hop_samples,
        scree_k: args.scree_k,
    };
    let original_reports = metric_suite(&original, &metric_cfg)?;
    fs::write(
        args.output_dir.join("original-metrics.csv"),
        reports_to_csv(&original_reports),
    )?;

    let mut summary = String::from(
        "generator,mean_network_value_distance,mean_gcd,mean_global_clustering\n",
    );
    summary.push_str(&format!(
        "original,0,0,{}\n",
        scalar_of(&original_reports, "global_clustering")
    ));

    for gen_name in &args.generators {
        let graphs: Vec<Graph> = (0..args.count)
            .map(|i| -> Result<Graph> {
                let seed = substream_seed(args.seed, &format!("gen-{gen_name}-{i}"));
                match gen_name.as_str() {
                    "rperg" => Ok(generate_ergm2(
                        grammar.as_ref().expect("grammar learned above"),
                        target_n,
                        seed,
                    )?
                    .graph),
                    "chung-lu" => Ok(chung_lu(&original.degree_sequence(), seed)?),
                    other => bail!("unknown generator {other:?} (expected rperg or chung-lu)"),
                }
            })
            .collect::<Result<_>>()?;
        for (i, g) in graphs.iter().enumerate() {
            fs::write(
                args.output_dir.join(format!("{gen_name}-{i}.txt")),
                g.to_edge_list(),
            )?;
        }
        let per_graph: Vec<Vec<MetricReport>> = graphs
            .par_iter()
            .map(|g| -> Result<Vec<MetricReport>> {
                let mut reports = metric_suite(g, &metric_cfg)?;
                reports.extend(distance_scalars(&original, g)?);
                Ok(reports)
            })
            .collect::<Result<_>>()?;
        let means = mean_reports(&per_graph);
        fs::write(
            args.output_dir.join(format!("{gen_name}-mean-metrics.csv")),
            reports_to_csv(&means),
        )?;
        let (dist, gcd, clust) = (
            scalar_of(&means, "network_value_distance"),
            scalar_of(&means, "gcd"),
            scalar_of(&means, "global_clustering"),
        );
        println!(
            "{gen_name}: mean cosine distance {dist:.4}, mean gcd {gcd:.4}, mean clustering {clust:.4}"
        );
        summary.push_str(&format!("{gen_name},{dist},{gcd},{clust}\n"));
    }
    fs::write(args.output_dir.join("summary.csv"), &summary)?;
    println!("summary written to {}", args.output_dir.join("summary.csv").display());
    Ok(())
}
