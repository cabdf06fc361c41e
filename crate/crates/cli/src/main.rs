//! `detfacet`: classify complexes and graphs, check Gröbner bases of
//! determinantal facet ideals and run the verification jobs.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use detfacet::formats::{parse_complex, parse_graph, render_graph};
use detfacet::graphs::{delta_d, find_d_claw, find_d_paw, ind_d, is_chordal, is_interval_graph, Graph};
use detfacet::groebner::{is_groebner, is_reduced, DEFAULT_COMPLETION_CAP};
use detfacet::harness::{enumerate_graphs, Budgets, GraphMode, Source, TheoremId, TheoremJob};
use detfacet::polyring::Field;
use detfacet::scomplex::{
    exists_labelling, find_interval_rep, is_chordal_lab, span_meets_all, span_meets_some, LabelledClass, SearchBudget,
    SearchOutcome, SimplicialComplex,
};
use detfacet::sortable::sortable_complex_witness;

/// Exit code for command-line usage errors.
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "detfacet", version, about = "Determinantal facet ideals and interval-type complexes")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Coefficient field: `q` for the rationals or `p=<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Node budget for each labelling or representation search.
    #[arg(long, global = true, default_value_t = SearchBudget::DEFAULT_NODES)]
    perm_budget: u64,
    /// Largest number of generators given to a Gröbner check.
    #[arg(long, global = true, default_value_t = DEFAULT_COMPLETION_CAP)]
    gb_cap: usize,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for random instance sources.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Labelled predicates and labelling searches for a complex or graph file.
    Classify {
        file: PathBuf,
        /// Dimension of `Δ_d(G)` for graph files; repeatable.
        #[arg(long = "d", default_values_t = vec![1usize])]
        d: Vec<usize>,
    },
    /// Whether the facet minors of a complex file form a Gröbner basis.
    GbCheck { file: PathBuf },
    /// Run one verification job.
    Verify(VerifyArgs),
    /// Write every graph on `n` vertices, one file each.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Canonical)]
        mode: Mode,
        /// Output directory; graphs go to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Theorem id such as `THM-GB-1` or `COR-SORT`.
    theorem: String,
    /// Generic matrix sizes, e.g. `2x3,2x4,3x4`.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, conflicts_with_all = ["t", "exhaustive", "random", "fixtures"])]
    sizes: Option<Vec<(usize, usize)>>,
    /// Minor sizes for the determinant identity, e.g. `1..4`.
    #[arg(long, value_parser = parse_range, conflicts_with_all = ["exhaustive", "random", "fixtures"])]
    t: Option<RangeInclusive<usize>>,
    /// Exhaustive source, e.g. `n=4 d=1` or `n=5 d=1..2`.
    #[arg(long, num_args = 1..=2, value_name = "KEY=VALUE", conflicts_with_all = ["random", "fixtures"])]
    exhaustive: Option<Vec<String>>,
    /// Random source: `count` or `seed,count`; the seed defaults to `--seed`.
    #[arg(long, conflicts_with = "fixtures")]
    random: Option<String>,
    /// Vertex bound for random instances.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Built-in fixture instances.
    #[arg(long)]
    fixtures: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Labelled,
    Canonical,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("p=")
        .ok_or_else(|| format!("expected `q` or `p=<prime>`, got `{s}`"))?
        .parse::<u64>()
        .map_err(|e| e.to_string())?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once('x').ok_or_else(|| format!("expected `MxN`, got `{s}`"))?;
    let m = m.trim().parse().map_err(|_| format!("bad row count in `{s}`"))?;
    let n = n.trim().parse().map_err(|_| format!("bad column count in `{s}`"))?;
    Ok((m, n))
}

/// `a`, `a..b` or `a..=b`.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range `{s}`"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if range.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

impl ConfigArgs {
    fn budgets(&self) -> Result<Budgets> {
        if self.perm_budget == 0 || self.gb_cap == 0 {
            bail!("budgets must be positive");
        }
        Ok(Budgets { search: SearchBudget::new(self.perm_budget), gb_cap: self.gb_cap, field: self.field })
    }

    fn field_name(&self) -> String {
        match self.field {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("p={p}"),
        }
    }

    fn echo(&self) -> Value {
        json!({
            "field": self.field_name(),
            "perm_budget": self.perm_budget,
            "gb_cap": self.gb_cap,
            "seed": self.seed,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(w) = cli.config.workers {
        if w == 0 {
            bail!("--workers must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().context("starting the worker pool")?;
    }
    match &cli.command {
        Command::Classify { file, d } => classify(&cli.config, file, d),
        Command::GbCheck { file } => gb_check(&cli.config, file),
        Command::Verify(args) => verify(&cli.config, args),
        Command::Enumerate { n, mode, out } => enumerate(*n, *mode, out.as_deref()),
    }
}

fn write_json(config: &ConfigArgs, value: &Value) -> Result<()> {
    if let Some(path) = &config.json {
        let text = serde_json::to_string_pretty(value)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Graph files have a one-number header, complex files a two-number one.
fn is_graph_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|h| h.split_whitespace().count() == 1)
}

fn outcome_json<T>(outcome: &SearchOutcome<T>, show: impl Fn(&T) -> Value) -> Value {
    match outcome {
        SearchOutcome::Found(t) => json!({ "outcome": outcome.category(), "certificate": show(t) }),
        _ => json!({ "outcome": outcome.category() }),
    }
}

fn classify_complex(c: &SimplicialComplex, budget: SearchBudget) -> Value {
    let mut labelled = serde_json::Map::new();
    for class in LabelledClass::ALL {
        labelled.insert(format!("{}_lab", class.name()), json!(class.holds(c)));
    }
    labelled.insert("span_meets_all".into(), json!(span_meets_all(c)));
    labelled.insert("span_meets_some".into(), json!(span_meets_some(c)));
    labelled.insert("chordal_lab".into(), json!(is_chordal_lab(c)));
    let mut exists = serde_json::Map::new();
    for class in LabelledClass::ALL {
        let outcome = exists_labelling(c, class, budget);
        exists.insert(class.name().to_string(), outcome_json(&outcome, |l| json!(l.images())));
    }
    let strong = find_interval_rep(c, budget);
    exists.insert(
        "strong".into(),
        outcome_json(&strong, |rep| {
            json!(rep.intervals().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>())
        }),
    );
    let mut out = json!({
        "n": c.n(),
        "d": c.dim(),
        "facets": c.num_facets(),
        "connected": c.is_connected(),
        "labelled": labelled,
        "exists": exists,
    });
    if c.is_empty() {
        out["note"] = json!("degenerate: no facets, so every labelled predicate holds vacuously");
    }
    out
}

fn print_complex_classification(v: &Value) {
    println!("n = {}, d = {}, {} facets, connected: {}", v["n"], v["d"], v["facets"], v["connected"]);
    if let Some(note) = v["note"].as_str() {
        println!("note: {note}");
    }
    if let Some(map) = v["labelled"].as_object() {
        for (k, b) in map {
            println!("  {k}: {b}");
        }
    }
    if let Some(map) = v["exists"].as_object() {
        for (k, o) in map {
            let cert = o.get("certificate").map(|c| format!(" {c}")).unwrap_or_default();
            println!("  exists {k}: {}{cert}", o["outcome"].as_str().unwrap_or("?"));
        }
    }
}

fn classify(config: &ConfigArgs, path: &Path, ds: &[usize]) -> Result<ExitCode> {
    let budget = config.budgets()?.search;
    let text = read(path)?;
    let report = if is_graph_file(&text) {
        let g = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
        classify_graph(&g, ds, budget)?
    } else {
        let c = parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
        let v = classify_complex(&c, budget);
        print_complex_classification(&v);
        json!({ "kind": "complex", "complex": v })
    };
    let mut report = report;
    report["config"] = config.echo();
    write_json(config, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn classify_graph(g: &Graph, ds: &[usize], budget: SearchBudget) -> Result<Value> {
    let interval = is_interval_graph(g, budget);
    println!("graph on {} vertices, {} edges", g.n(), g.num_edges());
    println!("  connected: {}", g.is_connected());
    println!("  chordal: {}", is_chordal(g));
    println!("  interval: {}", interval.category());
    let mut per_d = Vec::new();
    for &d in ds {
        if d == 0 {
            bail!("--d must be at least 1");
        }
        let c = delta_d(g, d)?;
        let layers = ind_d(g, d)?;
        let unsorted = sortable_complex_witness(&layers);
        let mut v = classify_complex(&c, budget);
        v["sortable_ind"] = json!(unsorted.is_none());
        v["d_claw"] = json!(find_d_claw(g, d).map(|c| c.vertices().to_vec()));
        v["d_paw"] = json!(find_d_paw(g, d).map(|p| p.to_vec()));
        println!("Δ_{d}:");
        print_complex_classification(&v);
        println!("  sortable Ind_{d}: {}", unsorted.is_none());
        per_d.push(v);
    }
    Ok(json!({
        "kind": "graph",
        "n": g.n(),
        "edges": g.num_edges(),
        "connected": g.is_connected(),
        "chordal": is_chordal(g),
        "interval": outcome_json(&interval, |cert| json!(cert.labelling.images())),
        "delta": per_d,
    }))
}

fn gb_check(config: &ConfigArgs, path: &Path) -> Result<ExitCode> {
    let budgets = config.budgets()?;
    let text = read(path)?;
    let c = parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
    let report = if c.num_facets() > budgets.gb_cap {
        println!("status: skipped, {} generators exceed the cap of {}", c.num_facets(), budgets.gb_cap);
        json!({ "status": "cap_exceeded", "generators": c.num_facets(), "gb_cap": budgets.gb_cap })
    } else {
        let basis = c.determinantal_facet_ideal(budgets.field)?;
        let r = is_groebner(&basis)?;
        let reduced = is_reduced(&basis);
        println!("generators: {}", basis.len());
        println!("GB: {} ({})", r.is_gb, r.evidence());
        println!("reduced: {reduced}");
        if let Some(p) = &r.failing_pair {
            println!("failing S-pair: ({}, {})", p.i + 1, p.j + 1);
            println!("  {} and {}", basis.polys()[p.i], basis.polys()[p.j]);
            println!("  remainder: {}", p.remainder);
        }
        json!({
            "status": "done",
            "generators": basis.len(),
            "groebner": r,
            "reduced_basis": r.is_gb && reduced,
        })
    };
    let mut report = report;
    report["config"] = config.echo();
    write_json(config, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn exhaustive_source(parts: &[String], default: &Source) -> Result<Source> {
    let (mut n_max, mut d) = match default {
        Source::Exhaustive { n_max, d } => (*n_max, d.clone()),
        _ => (5, 1..=1),
    };
    for part in parts.iter().flat_map(|p| p.split_whitespace()) {
        match part.split_once('=') {
            Some(("n", v)) => n_max = v.parse().with_context(|| format!("bad vertex bound `{v}`"))?,
            Some(("d", v)) => d = parse_range(v).map_err(anyhow::Error::msg)?,
            _ => bail!("expected `n=<int>` or `d=<range>`, got `{part}`"),
        }
    }
    Ok(Source::Exhaustive { n_max, d })
}

fn verify_source(config: &ConfigArgs, args: &VerifyArgs, theorem: TheoremId) -> Result<Source> {
    let default = theorem.default_source();
    let default_d = match &default {
        Source::Exhaustive { d, .. } | Source::Random { d, .. } => d.clone(),
        _ => 1..=2,
    };
    if let Some(sizes) = &args.sizes {
        return Ok(Source::Sizes(sizes.clone()));
    }
    if let Some(t) = &args.t {
        let n_max = match &default {
            Source::Exhaustive { n_max, .. } => *n_max,
            _ => 6,
        };
        return Ok(Source::Exhaustive { n_max, d: t.clone() });
    }
    if let Some(parts) = &args.exhaustive {
        return exhaustive_source(parts, &default);
    }
    if let Some(spec) = &args.random {
        let (seed, count) = match spec.split_once(',') {
            Some((s, c)) => (s.trim().parse().context("bad seed")?, c.trim().parse().context("bad count")?),
            None => (config.seed, spec.trim().parse().context("bad count")?),
        };
        return Ok(Source::Random { seed, count, n_max: args.n_max, d: default_d });
    }
    if args.fixtures {
        return Ok(Source::Fixtures);
    }
    Ok(default)
}

fn verify(config: &ConfigArgs, args: &VerifyArgs) -> Result<ExitCode> {
    let theorem: TheoremId = match args.theorem.parse() {
        Ok(t) => t,
        Err(e) => {
            let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
            eprintln!("error: {e}\nknown ids: {}", known.join(", "));
            return Ok(ExitCode::from(EXIT_USAGE));
        }
    };
    let source = verify_source(config, args, theorem)?;
    let report = TheoremJob::new(theorem).with_source(source).with_budgets(config.budgets()?).run()?;
    println!("{}", report.summary());
    for f in &report.failures {
        let lab = f.labelling.as_deref().map(|l| format!(" under {l}")).unwrap_or_default();
        println!("  failure: {}{lab}: {}", f.instance, f.witness);
    }
    for f in &report.inconclusive {
        println!("  inconclusive: {}: {}", f.instance, f.witness);
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
    if let Some(path) = &config.json {
        fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::from(report.status().exit_code() as u8))
}

fn enumerate(n: usize, mode: Mode, out: Option<&Path>) -> Result<ExitCode> {
    let mode = match mode {
        Mode::Labelled => GraphMode::Labelled,
        Mode::Canonical => GraphMode::Canonical,
    };
    let graphs = enumerate_graphs(n, mode)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut count = 0usize;
    for g in graphs {
        match out {
            Some(dir) => {
                let path = dir.join(format!("g{n}_{count:06}.txt"));
                fs::write(&path, render_graph(&g)).with_context(|| format!("writing {}", path.display()))?;
            }
            None => print!("# graph {count}\n{}", render_graph(&g)),
        }
        count += 1;
    }
    eprintln!("{count} graphs");
    Ok(ExitCode::SUCCESS)
}
