use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use orlb::bench::{self, BenchSpec};
use orlb::format::{parse_digraph, read_container, write_container, write_digraph, Container};
use orlb_core::dict::DictBackend;
use orlb_core::graph::{random_digraph, random_poset, transitive_closure, PosetModel};
use orlb_core::reach::label_digraph;
use orlb_core::scheme::{derive_params, encode, size_report, Comparison, Profile, SchemeConfig, SectionSizes};
use orlb_core::universal::universal_check;

#[derive(Parser)]
#[command(name = "orlb", version, about = "Adjacency and reachability labels for partial orders and digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Tradeoff,
    Fast,
    Reach,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InnerArg {
    Tradeoff,
    Fast,
}

impl From<InnerArg> for Profile {
    fn from(p: InnerArg) -> Self {
        match p {
            InnerArg::Tradeoff => Profile::Tradeoff,
            InnerArg::Fast => Profile::Fast,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DictArg {
    Sorted,
    Compressed,
}

impl From<DictArg> for DictBackend {
    fn from(d: DictArg) -> Self {
        match d {
            DictArg::Sorted => DictBackend::Sorted,
            DictArg::Compressed => DictBackend::Compressed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    DagClosure,
    Layered,
    /// Arbitrary digraph with cycles (only for `gen`).
    RandomDigraph,
}

impl ModelArg {
    fn poset_model(self) -> Result<PosetModel> {
        match self {
            ModelArg::DagClosure => Ok(PosetModel::DagClosure),
            ModelArg::Layered => Ok(PosetModel::Layered),
            ModelArg::RandomDigraph => bail!("random-digraph is only available for gen"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Label a digraph file (closed transitively unless --profile reach).
    Encode {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "tradeoff")]
        profile: ProfileArg,
        /// Scheme used inside reachability labels.
        #[arg(long, value_enum, default_value = "tradeoff")]
        inner: InnerArg,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum)]
        dict: Option<DictArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide one pair from an ORLB file.
    Query { labels: PathBuf, u: usize, v: usize },
    /// Compare every pair in an ORLB file against the input digraph.
    Verify { input: PathBuf, labels: PathBuf },
    /// Per-section label sizes and the closed-form bound of the profile.
    Report { labels: PathBuf },
    /// CSV of label sizes over random posets.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "layered")]
        model: Vec<ModelArg>,
        /// Comma-separated sizes or a range `a..b` (inclusive, see --step).
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 50)]
        step: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "tradeoff,fast")]
        profile: Vec<InnerArg>,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = bench::DEFAULT_QUERY_SAMPLE)]
        queries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode every labelled poset on n elements and check the embedding.
    UniversalCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "tradeoff")]
        profile: InnerArg,
        /// Largest label count for which the universal graph is built.
        #[arg(long, default_value_t = 20_000)]
        cap: usize,
        /// Write the universal graph's arcs as a digraph file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Write a random poset (as its cover pairs) or digraph.
    Gen {
        #[arg(long, value_enum, default_value = "dag-closure")]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_labels(path: &Path) -> Result<Container> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_container(&mut BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn read_digraph(path: &Path) -> Result<orlb_core::Digraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_sizes(spec: &str, step: usize) -> Result<Vec<usize>> {
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
        if step == 0 || a > b {
            bail!("empty size range {spec}");
        }
        return Ok((a..=b).step_by(step).collect());
    }
    spec.split(',').map(|s| s.trim().parse().with_context(|| format!("bad size {s:?}"))).collect()
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        bail!("vertex {v} out of range for n = {n}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Encode { input, profile, inner, s, dict, out } => {
            let d = read_digraph(&input)?;
            let inner_profile = match profile {
                ProfileArg::Tradeoff => Profile::Tradeoff,
                ProfileArg::Fast => Profile::Fast,
                ProfileArg::Reach => inner.into(),
            };
            let mut config = SchemeConfig::new(inner_profile);
            config.s = s;
            config.dict = dict.map(Into::into);
            let container = match profile {
                ProfileArg::Reach => Container::Reach(label_digraph(&d, &config)?),
                _ => {
                    let o = transitive_closure(&d)
                        .context("input has a directed cycle; use --profile reach for digraphs")?;
                    Container::Scheme(encode(&o, &config.resolve(o.n()))?)
                }
            };
            let mut w = output(Some(&out))?;
            write_container(&container, &mut w)?;
            w.flush()?;
        }
        Command::Query { labels, u, v } => {
            let c = read_labels(&labels)?;
            check_vertex(u, c.n())?;
            check_vertex(v, c.n())?;
            match c {
                Container::Scheme(l) => {
                    let (cmp, inspected) = l.comparable(u, v)?;
                    let verdict = match cmp {
                        Comparison::Less => "u<v",
                        Comparison::Greater => "v<u",
                        Comparison::Incomparable => "incomparable",
                    };
                    println!("{verdict}\ninspected bits: {inspected}");
                }
                Container::Reach(r) => {
                    let verdict = r.reaches(u, v)?;
                    println!(
                        "reaches:{}\ninspected bits: {}",
                        if verdict.adjacent { "yes" } else { "no" },
                        verdict.inspected
                    );
                }
            }
        }
        Command::Verify { input, labels } => {
            let d = read_digraph(&input)?;
            let c = read_labels(&labels)?;
            if c.n() != d.n() {
                bail!("input has {} vertices but the labels cover {}", d.n(), c.n());
            }
            let n = d.n();
            let (mut matched, mut total) = (0usize, 0usize);
            match &c {
                Container::Scheme(l) => {
                    let o = transitive_closure(&d).context("input has a directed cycle")?;
                    for u in 0..n {
                        for v in u + 1..n {
                            let expected = if o.less(u, v) {
                                Comparison::Less
                            } else if o.less(v, u) {
                                Comparison::Greater
                            } else {
                                Comparison::Incomparable
                            };
                            total += 1;
                            matched += usize::from(l.comparable(u, v)?.0 == expected);
                        }
                    }
                }
                Container::Reach(r) => {
                    for u in 0..n {
                        let reach = orlb_core::graph::bfs_reach(&d, u);
                        for v in 0..n {
                            if u != v {
                                total += 1;
                                matched += usize::from(r.reaches(u, v)?.adjacent == reach.contains(v));
                            }
                        }
                    }
                }
            }
            println!("{matched}/{total} pairs match");
            if matched != total {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Report { labels } => {
            let c = read_labels(&labels)?;
            let l = match &c {
                Container::Scheme(l) => l,
                Container::Reach(r) => r.inner(),
            };
            let g = l.global();
            let params = derive_params(l.n(), g.s, g.profile).with_dict(g.dict);
            let r = size_report(l, &params)?;
            println!("n: {}\nprofile: {}\ns: {}", l.n(), bench::profile_name(g.profile), params.s);
            println!("global bits: {}", r.global_bits);
            for (name, bits) in SectionSizes::NAMES.iter().zip(r.totals.values()) {
                println!("{name}: {bits}");
            }
            println!("max label bits: {}\nmean label bits: {:.2}", r.max_label_bits, r.mean_label_bits);
            println!("bound: {:.1}", r.bound);
            let failing = r.within_bound.iter().filter(|&&ok| !ok).count();
            println!("labels within bound: {}/{}", l.n() - failing, l.n());
            if failing > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bench { model, n, step, seed, seeds, profile, p, s, queries, out } => {
            let spec = BenchSpec {
                sizes: parse_sizes(&n, step)?,
                models: model.into_iter().map(ModelArg::poset_model).collect::<Result<_>>()?,
                seeds: (seed..seed + seeds).collect(),
                profiles: profile.into_iter().map(Into::into).collect(),
                p,
                s,
                query_cap: queries,
            };
            let rows = bench::run(&spec)?;
            let mut w = output(out.as_deref())?;
            w.write_all(bench::to_csv(&rows).as_bytes())?;
            w.flush()?;
        }
        Command::UniversalCheck { n, profile, cap, dump } => {
            let r = universal_check(n, &SchemeConfig::new(profile.into()), cap)?;
            println!("n: {}", r.n);
            println!("posets: {}", r.posets);
            println!("distinct labels: {}", r.distinct_labels);
            println!("injective: {}", r.injective);
            println!("embeds: {}", r.embeds);
            match &r.graph {
                Some(g) => println!("universal graph: {} vertices, {} arcs", g.names.len(), g.arcs.len()),
                None => println!("universal graph: not built ({} labels exceed cap {cap})", r.distinct_labels),
            }
            if let Some(path) = dump {
                let Some(g) = &r.graph else { bail!("nothing to dump: the universal graph was not built") };
                let d = orlb_core::Digraph::new(g.names.len(), g.arcs.iter().copied())?;
                let mut w = output(Some(&path))?;
                write_digraph(&d, &mut w)?;
                w.flush()?;
            }
            if !(r.injective && r.embeds) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Gen { model, n, seed, p, out } => {
            let d = match model {
                ModelArg::RandomDigraph => random_digraph(n, p, seed)?,
                m => {
                    let o = random_poset(n, m.poset_model()?, p, seed)?;
                    orlb_core::Digraph::new(n, o.cover_pairs())?
                }
            };
            let mut w = output(out.as_deref())?;
            write_digraph(&d, &mut w)?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
