//! Command-line front end. [`run`] takes the argument vector and two sinks so
//! tests can drive it in-process.
//!
//! Exit codes: 0 on success, 1 when the input data is invalid (or a reported
//! law fails), 2 on usage errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oaparity::classes::DEFAULT_ORBIT_BUDGET;
use oaparity::graphs::{stack, DegreeParity, StackShape};
use oaparity::io::{format_catalogue, format_latin, format_oa, LatinJson, OaJson};
use oaparity::parity::sigma_from_tau_unchecked;
use oaparity::{
    block_sigma, check_equiparity_laws, circulant_sigma, ensemble_census_tau, enumerate_classes,
    enumerate_latin_squares, find_oa_with_parity, latin_square_parities, linear_mols, linear_squares,
    lower_triangular_sigma, orbit_with_budget, parse_catalogue, parse_parity_json, random_pp_plausible_sigma,
    read_array, residue_pattern_oa, sigma_graph, sigma_parity, tau_graphs, tau_parity, CatalogueEntry, Order,
    OrderClass, OrthogonalArray, ParityReport, ParityState, ParityTriple, ResiduePattern, SearchMode, SearchOutcome,
    SearchSpec, SearchTarget, SigmaMatrix, TauVector,
};

/// Environment variable holding the orbit search memory budget in MiB.
pub const ORBIT_MEMORY_ENV: &str = "OAPARITY_ORBIT_MEMORY_MB";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] oaparity::Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "oaparity", version, about = "Parity invariants of orthogonal arrays and MOLS")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Symbol base (0 or 1) for arrays and squares printed as text.
    #[arg(long, global = true, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    base: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a file holds a valid orthogonal array (OA, LS, MOLSSET or JSON).
    Validate { file: PathBuf },
    /// τ-parity and standardised σ-parity of an array.
    Parity { file: PathBuf },
    /// τ-graphs, stack graph and σ-graph of an array.
    Graphs {
        file: PathBuf,
        /// Print the graphs in Graphviz DOT format.
        #[arg(long)]
        dot: bool,
        /// Read a parity JSON file instead of an array.
        #[arg(long)]
        tau: bool,
    },
    /// Size and least member of the class of an array's parity under column
    /// relabelling (and swapping, for odd n).
    Class {
        file: PathBuf,
        /// Read a parity JSON file instead of an array.
        #[arg(long)]
        tau: bool,
    },
    /// Every class of plausible parities for k columns and n mod 4.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
        nmod4: u8,
    },
    /// Build arrays and σ-parities.
    #[command(subcommand)]
    Construct(Construct),
    /// Parity types of the Latin squares on every three columns, with the
    /// equiparity bounds. Exits 1 if a bound fails.
    Ensemble {
        file: PathBuf,
        /// Read a parity JSON file instead of an array.
        #[arg(long)]
        tau: bool,
    },
    /// Search for Latin squares or arrays with given parities.
    #[command(subcommand)]
    Search(Search),
    /// Read a MOLS catalogue and summarise each set.
    Ingest { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// The complete set of q-1 MOLS from the field of order q, as OA(q+1, q).
    Desarguesian {
        #[arg(long)]
        q: usize,
        /// Print the squares as a MOLSSET catalogue instead of an array.
        #[arg(long)]
        emit_mols: bool,
    },
    /// OA(5, n) from the squares r·a + c, r·a² + c, r·a³ + c over Z_n, for a
    /// prime n = 3 (mod 4), n >= 11, and the least a whose neighbours a-1, a,
    /// a+1 have the given quadratic-residue pattern.
    Thm45 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        pattern: PatternArg,
    },
    /// A σ-parity from a named construction, printed as parity JSON.
    Sigma {
        #[arg(long, value_enum)]
        kind: SigmaKind,
        #[arg(long)]
        n: usize,
        /// Number of columns; only lower-triangular accepts k other than n+1.
        #[arg(long)]
        k: Option<usize>,
        /// Seed for pp-random (default 0).
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PatternArg {
    /// Non-residue, non-residue, non-residue.
    Nnn,
    /// Residue, non-residue, residue.
    Rnr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SigmaKind {
    Block,
    Circulant,
    LowerTriangular,
    PpRandom,
}

impl SigmaKind {
    fn name(self) -> &'static str {
        match self {
            SigmaKind::Block => "block",
            SigmaKind::Circulant => "circulant",
            SigmaKind::LowerTriangular => "lower-triangular",
            SigmaKind::PpRandom => "pp-random",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Search {
    /// Latin squares of order n <= 6: the parity types that occur, or the
    /// first square of a given type.
    Latin {
        #[arg(long)]
        n: usize,
        /// Row, column and symbol parities, e.g. 011.
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// OA(k, n) with a target parity. The target is parity JSON, or
    /// {"types": ["011", ...]} to restrict every three-column square, or
    /// {"any": true}; inline or as a file path.
    Oa {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        /// Explore the whole space and count matches.
        #[arg(long, conflicts_with = "seed")]
        exhaustive: bool,
        /// Randomise symbol order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Restarts for a seeded search.
        #[arg(long, default_value_t = 16, requires = "seed")]
        restarts: u32,
        /// Node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Output of one command; `ok == false` maps to exit code 1 after printing.
struct Report {
    body: String,
    ok: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, ok: true }
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let mut body = report.body;
            if !body.ends_with('\n') {
                body.push('\n');
            }
            if let Err(e) = out.write_all(body.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if report.ok {
                0
            } else {
                let _ = writeln!(err, "error: one or more checks failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let json = cli.json;
    let base = cli.base as usize;
    match &cli.command {
        Command::Validate { file } => validate(&read_input(file)?, json),
        Command::Parity { file } => parity(&read_input(file)?, json),
        Command::Graphs { file, dot, tau } => graphs(&load_tau(file, *tau)?, file, *tau, *dot, json),
        Command::Class { file, tau } => class(&load_tau(file, *tau)?, json),
        Command::Enumerate { k, nmod4 } => enumerate(*k, *nmod4, json),
        Command::Construct(c) => construct(c, base, json),
        Command::Ensemble { file, tau } => ensemble(&load_tau(file, *tau)?, json),
        Command::Search(s) => search(s, base, json),
        Command::Ingest { file } => ingest(&read_input(file)?, json),
    }
}

fn read_input(path: &Path) -> Result<String> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(io_err)
}

fn load_tau(path: &Path, is_parity: bool) -> Result<TauVector> {
    let text = read_input(path)?;
    Ok(if is_parity { parse_parity_json(&text)? } else { tau_parity(&read_array(&text)?) })
}

/// Indented JSON with arrays of scalars kept on one line.
fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (key, x)) in m.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(key.clone())));
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|&x| x + 1).collect()
}

fn header(t: &TauVector) -> String {
    match t.order().exact() {
        Some(n) => format!("k = {}, n = {n}, n mod 4 = {}", t.k(), n % 4),
        None => format!("k = {}, n mod 4 = {}", t.k(), t.order().class().residue()),
    }
}

fn validate(text: &str, json: bool) -> Result<Report> {
    let a = read_array(text)?;
    Ok(Report::ok(if json {
        pretty(&json!({ "k": a.k(), "n": a.n(), "valid": true }))
    } else {
        format!("OA({},{}) valid", a.k(), a.n())
    }))
}

fn parity(text: &str, json: bool) -> Result<Report> {
    let a = read_array(text)?;
    let r = ParityReport::new(&tau_parity(&a));
    if json {
        return Ok(Report::ok(pretty(&serde_json::to_value(&r).expect("report serialises"))));
    }
    let mut s = format!("OA({},{}), n mod 4 = {}\n", r.k, a.n(), r.nmod4);
    s += &format!("plausible: {}\npp-plausible: {}\n", if r.plausible { "yes" } else { "no" }, r.pp_plausible);
    s += "tau (c i j bit):\n";
    for e in &r.tau {
        s += &format!("  {}\n", list(e));
    }
    s += "sigma, standardised (i j bit):\n";
    for e in &r.sigma_standard {
        s += &format!("  {}\n", list(e));
    }
    Ok(Report::ok(s))
}

fn parity_word(p: DegreeParity) -> &'static str {
    match p {
        DegreeParity::Uniform(0) => "even",
        DegreeParity::Uniform(_) => "odd",
        DegreeParity::Mixed => "mixed",
    }
}

fn graphs(t: &TauVector, file: &Path, is_parity: bool, dot: bool, json: bool) -> Result<Report> {
    let decomps = tau_graphs(t)?;
    let st = stack(t)?;
    let sigma: SigmaMatrix = if is_parity {
        sigma_from_tau_unchecked(t).to_matrix()
    } else {
        sigma_parity(&read_array(&read_input(file)?)?)
    };
    let sg = sigma_graph(&sigma);
    let shape = match &st.shape {
        StackShape::CompleteBipartite { v1, v2 } => {
            json!({ "kind": "complete-bipartite", "v1": one_based(v1), "v2": one_based(v2) })
        }
        StackShape::Cliques { c1, c2 } => json!({ "kind": "cliques", "c1": one_based(c1), "c2": one_based(c2) }),
        StackShape::Empty => json!({ "kind": "empty" }),
        StackShape::Complete => json!({ "kind": "complete" }),
    };
    let dots: Vec<String> = (0..t.k())
        .map(|c| oaparity::graphs::tau_graph(t, c).to_dot(&format!("tau{}", c + 1)))
        .chain([st.graph.to_dot("stack"), sg.graph.to_dot("sigma")])
        .collect();
    if json {
        let mut v = json!({
            "k": t.k(),
            "nmod4": t.order().class().residue(),
            "tau_graphs": decomps.iter().map(|d| json!({
                "c": d.c + 1, "v1": one_based(&d.v1), "v2": one_based(&d.v2),
            })).collect::<Vec<_>>(),
            "stack": shape,
            "sigma_graph": {
                "tournament": sg.oriented,
                "out_degrees": sg.out_degrees,
                "in_degrees": sg.in_degrees,
                "out_parity": parity_word(sg.out_parity),
                "in_parity": parity_word(sg.in_parity),
                "projective_degree_law": sg.projective_degree_law,
            },
        });
        if dot {
            v["dot"] = json!(dots);
        }
        return Ok(Report::ok(pretty(&v)));
    }
    if dot {
        return Ok(Report::ok(dots.concat()));
    }
    let mut s = header(t) + "\n";
    for d in &decomps {
        s += &format!("tau-graph {}: parts {{{}}} {{{}}}\n", d.c + 1, list(&one_based(&d.v1)), list(&one_based(&d.v2)));
    }
    s += &match &st.shape {
        StackShape::CompleteBipartite { v1, v2 } => {
            format!("stack: complete bipartite {{{}}} {{{}}}\n", list(&one_based(v1)), list(&one_based(v2)))
        }
        StackShape::Cliques { c1, c2 } => {
            format!("stack: cliques {{{}}} {{{}}}\n", list(&one_based(c1)), list(&one_based(c2)))
        }
        StackShape::Empty => "stack: empty\n".into(),
        StackShape::Complete => "stack: complete\n".into(),
    };
    s += &format!(
        "sigma-graph: {}\n  out-degrees: {} ({})\n  in-degrees: {} ({})\n",
        if sg.oriented { "tournament" } else { "undirected" },
        list(&sg.out_degrees),
        parity_word(sg.out_parity),
        list(&sg.in_degrees),
        parity_word(sg.in_parity),
    );
    if let Some(law) = sg.projective_degree_law {
        s += &format!("  complete-set degree law: {}\n", if law { "holds" } else { "fails" });
    }
    Ok(Report::ok(s))
}

fn orbit_budget() -> Result<usize> {
    match std::env::var(ORBIT_MEMORY_ENV) {
        Err(_) => Ok(DEFAULT_ORBIT_BUDGET),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|mb| mb.saturating_mul(1 << 20))
            .map_err(|_| CliError::Usage(format!("{ORBIT_MEMORY_ENV} must be a whole number of MiB, got {v:?}"))),
    }
}

fn class(t: &TauVector, json: bool) -> Result<Report> {
    let state = ParityState::from_tau(t)?;
    let summary = orbit_with_budget(&state, orbit_budget()?)?;
    let canon: Vec<[usize; 3]> =
        summary.canonical.to_standard().entries().map(|(i, j, b)| [i + 1, j + 1, b as usize]).collect();
    if json {
        return Ok(Report::ok(pretty(&json!({
            "k": t.k(),
            "nmod4": t.order().class().residue(),
            "size": summary.size,
            "canonical_bits": summary.canonical.bits(),
            "canonical_sigma_standard": canon,
        }))));
    }
    let bits: String = canon.iter().map(|e| char::from(b'0' + e[2] as u8)).collect();
    Ok(Report::ok(format!(
        "{}\nclass size: {}\ncanonical state: {} (sigma upper triangle {bits})\n",
        header(t),
        summary.size,
        summary.canonical.bits()
    )))
}

fn enumerate(k: usize, nmod4: u8, json: bool) -> Result<Report> {
    let table = enumerate_classes(k, OrderClass::from_residue(nmod4 as usize)?)?;
    let mut sizes: Vec<u64> = table.orbits.iter().map(|o| o.size).collect();
    sizes.sort_unstable();
    if json {
        return Ok(Report::ok(pretty(&json!({
            "k": k,
            "nmod4": nmod4,
            "classes": table.class_count(),
            "sizes": sizes,
            "entries": table.entries.iter().map(|&(size, count)| json!({ "size": size, "count": count })).collect::<Vec<_>>(),
            "total_states": table.total_states(),
        }))));
    }
    let mut s = format!("k = {k}, n mod 4 = {nmod4}\n{:>10}  {:>7}\n", "size", "classes");
    for &(size, count) in &table.entries {
        s += &format!("{size:>10}  {count:>7}\n");
    }
    s += &format!(
        "{} classes: {}\n",
        table.class_count(),
        sizes.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
    );
    Ok(Report::ok(s))
}

fn oa_json(a: &OrthogonalArray, base: usize) -> Value {
    let mut j = OaJson::from_oa(a);
    j.base = base;
    j.rows = a.rows().into_iter().map(|r| r.into_iter().map(|x| x + base).collect()).collect();
    serde_json::to_value(j).expect("array serialises")
}

fn construct(c: &Construct, base: usize, json: bool) -> Result<Report> {
    match c {
        Construct::Desarguesian { q, emit_mols } => {
            if *emit_mols {
                let entry = CatalogueEntry {
                    label: format!("desarguesian-{q}"),
                    squares: linear_squares(*q)?,
                    note: String::new(),
                };
                return Ok(Report::ok(if json {
                    let squares: Vec<Value> = entry
                        .squares
                        .iter()
                        .map(|sq| serde_json::to_value(LatinJson::from_square(sq)).expect("square serialises"))
                        .collect();
                    pretty(&json!({ "label": entry.label, "n": q, "squares": squares }))
                } else {
                    format_catalogue(&[entry], base)
                }));
            }
            let a = linear_mols(*q)?;
            Ok(Report::ok(if json { pretty(&oa_json(&a, base)) } else { format_oa(&a, base) }))
        }
        Construct::Thm45 { n, pattern } => {
            let pattern = match pattern {
                PatternArg::Nnn => ResiduePattern::Nnn,
                PatternArg::Rnr => ResiduePattern::Rnr,
            };
            let (a, oa) = residue_pattern_oa(*n, pattern)?;
            Ok(Report::ok(if json {
                let mut v = oa_json(&oa, base);
                v["a"] = json!(a);
                pretty(&v)
            } else {
                format!("# a = {a}\n{}", format_oa(&oa, base))
            }))
        }
        Construct::Sigma { kind, n, k, seed } => sigma_construction(*kind, *n, *k, *seed),
    }
}

fn sigma_construction(kind: SigmaKind, n: usize, k: Option<usize>, seed: Option<u64>) -> Result<Report> {
    if seed.is_some() && kind != SigmaKind::PpRandom {
        return Err(CliError::Usage(format!("--seed only applies to pp-random, not {}", kind.name())));
    }
    let width = k.unwrap_or(n + 1);
    if width != n + 1 && kind != SigmaKind::LowerTriangular {
        return Err(CliError::Usage(format!("{} builds k = n + 1 columns, got k = {width}", kind.name())));
    }
    let seed = (kind == SigmaKind::PpRandom).then(|| seed.unwrap_or(0));
    let m = match kind {
        SigmaKind::Block => block_sigma(n)?,
        SigmaKind::Circulant => circulant_sigma(n)?.to_matrix(),
        SigmaKind::LowerTriangular => lower_triangular_sigma(width, Order::Exact(n))?,
        SigmaKind::PpRandom => random_pp_plausible_sigma(n, seed.unwrap_or(0))?.to_matrix(),
    };
    Ok(Report::ok(sigma_json(kind.name(), seed, &m)))
}

fn sigma_json(kind: &str, seed: Option<u64>, m: &SigmaMatrix) -> String {
    pretty(&json!({ "kind": kind, "seed": seed, "k": m.k(), "n": m.order().exact(), "sigma": m.rows() }))
}

fn ensemble(t: &TauVector, json: bool) -> Result<Report> {
    let c = ensemble_census_tau(t)?;
    let checks = check_equiparity_laws(&c);
    let triples: Vec<(usize, usize, usize)> = oaparity::order::triples(c.k).collect();
    let counts: Vec<(String, usize)> = c
        .type_counts
        .iter()
        .enumerate()
        .filter(|&(_, &n)| n > 0)
        .map(|(i, &n)| (ParityTriple::from_index(i).label(), n))
        .collect();
    let ok = checks.all_passed();
    if json {
        return Ok(Report {
            body: pretty(&json!({
                "k": c.k,
                "nmod4": c.order.class().residue(),
                "n": c.order.exact(),
                "squares": triples.iter().zip(&c.triple_types).map(|(&(a, b, d), ty)| json!({
                    "columns": [a + 1, b + 1, d + 1], "type": ty.label(),
                })).collect::<Vec<_>>(),
                "type_counts": counts.iter().map(|(l, n)| (l.clone(), json!(n))).collect::<serde_json::Map<_, _>>(),
                "x": c.x,
                "total_edges": c.total_edges,
                "mu": c.mu,
                "pp_plausible": c.pp_plausible.as_str(),
                "checks": checks.checks.iter().map(|ch| json!({
                    "name": ch.name, "passed": ch.passed, "detail": ch.detail,
                    "witness": ch.witness.as_ref().map(|w| one_based(w)),
                })).collect::<Vec<_>>(),
            })),
            ok,
        });
    }
    let mut s = header(t) + "\nsquares:\n";
    for (&(a, b, d), ty) in triples.iter().zip(&c.triple_types) {
        s += &format!("  {} {} {}  {}\n", a + 1, b + 1, d + 1, ty.label());
    }
    let counts: Vec<String> = counts.iter().map(|(l, n)| format!("{l}:{n}")).collect();
    s += &format!("type counts: {}\n", counts.join(" "));
    s += &format!("equiparity squares x = {}\n", c.x);
    s += &format!("tau-graph edges T = {}\n", c.total_edges);
    s += &format!("row sums mu = {}\n", list(&c.mu));
    s += &format!("pp-plausible: {}\n", c.pp_plausible.as_str());
    if !checks.checks.is_empty() {
        s += "checks:\n";
    }
    for ch in &checks.checks {
        s += &format!("  {} {}: {}\n", if ch.passed { "PASS" } else { "FAIL" }, ch.name, ch.detail);
    }
    Ok(Report { body: s, ok })
}

fn parse_type(label: &str) -> Result<ParityTriple> {
    ParityTriple::parse(label)
        .ok_or_else(|| CliError::Usage(format!("parity type must be three 0/1 digits, got {label:?}")))
}

fn search(s: &Search, base: usize, json: bool) -> Result<Report> {
    match s {
        Search::Latin { n, ty } => search_latin(*n, ty.as_deref(), base, json),
        Search::Oa { k, n, target, exhaustive, seed, restarts, budget } => {
            let target = parse_target(target)?;
            let mode = match seed {
                _ if *exhaustive => SearchMode::Exhaustive,
                Some(seed) => SearchMode::Randomized { seed: *seed, restarts: *restarts },
                None => SearchMode::FirstHit,
            };
            let mut spec = SearchSpec::new(*k, *n, target, mode);
            if let Some(b) = budget {
                spec = spec.with_budget(*b);
            }
            search_oa(&spec, base, json)
        }
    }
}

fn search_latin(n: usize, ty: Option<&str>, base: usize, json: bool) -> Result<Report> {
    let Some(label) = ty else {
        let types = oaparity::achieved_parity_types(n)?;
        let labels: Vec<String> = types.iter().map(ParityTriple::label).collect();
        return Ok(Report::ok(if json {
            pretty(&json!({ "n": n, "types": labels }))
        } else {
            format!("order {n}: types {}\n", labels.join(" "))
        }));
    };
    let want = parse_type(label)?;
    if !ParityTriple::plausible(OrderClass::of(n)).contains(&want) {
        return Err(CliError::Input(format!(
            "no Latin square of order {n} has type {label}: the three parities must sum to C(n,2) mod 2"
        )));
    }
    let found = enumerate_latin_squares(n)?.find(|sq| latin_square_parities(sq) == want);
    Ok(Report::ok(match (&found, json) {
        (Some(sq), true) => pretty(&json!({ "n": n, "type": label, "square": LatinJson::from_square(sq) })),
        (None, true) => pretty(&json!({ "n": n, "type": label, "square": null })),
        (Some(sq), false) => format_latin(sq, base),
        (None, false) => format!("no Latin square of order {n} has type {label}\n"),
    }))
}

fn parse_target(arg: &str) -> Result<SearchTarget> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_input(Path::new(arg))? };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("target: {e}")))?;
    if v.get("any").and_then(Value::as_bool) == Some(true) {
        return Ok(SearchTarget::Any);
    }
    if let Some(types) = v.get("types") {
        let labels = types.as_array().ok_or_else(|| CliError::Input("target types must be a list".into()))?;
        let parsed = labels
            .iter()
            .map(|l| {
                l.as_str().ok_or_else(|| CliError::Input("target types must be strings".into())).and_then(parse_type)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(SearchTarget::Types(parsed));
    }
    Ok(SearchTarget::Tau(parse_parity_json(&text)?))
}

fn search_oa(spec: &SearchSpec, base: usize, json: bool) -> Result<Report> {
    let rep = find_oa_with_parity(spec)?;
    let (k, n) = (spec.k, spec.n);
    let outcome = match rep.outcome {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::CertifiedNone => "none",
        SearchOutcome::BudgetExhausted => "budget-exhausted",
    };
    if json {
        let array = match &rep.outcome {
            SearchOutcome::Found(a) => oa_json(a, base),
            _ => Value::Null,
        };
        return Ok(Report::ok(pretty(&json!({
            "k": k, "n": n, "outcome": outcome, "nodes": rep.nodes,
            "matches": rep.matches, "seed": rep.seed, "budget": spec.node_budget, "array": array,
        }))));
    }
    let mut head = format!("# search OA({k},{n}): {outcome} after {} nodes", rep.nodes);
    if let Some(seed) = rep.seed {
        head += &format!(", seed {seed}");
    }
    if let Some(m) = rep.matches {
        head += &format!(", {m} matches");
    }
    head.push('\n');
    Ok(Report::ok(match &rep.outcome {
        SearchOutcome::Found(a) => head + &format_oa(a, base),
        SearchOutcome::CertifiedNone => head + &format!("no OA({k},{n}) has the target parity\n"),
        SearchOutcome::BudgetExhausted => {
            head + &format!("budget of {} nodes exhausted; nothing is certified\n", spec.node_budget)
        }
    }))
}

fn ingest(text: &str, json: bool) -> Result<Report> {
    let entries = parse_catalogue(text)?;
    let budget = orbit_budget()?;
    let mut rows = Vec::with_capacity(entries.len());
    for e in &entries {
        let a = e.to_oa()?;
        let t = tau_parity(&a);
        let x = ensemble_census_tau(&t)?.x;
        let class = match ParityState::from_tau(&t) {
            Ok(state) => Some(orbit_with_budget(&state, budget)?.size),
            Err(oaparity::Error::StateTooWide { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        rows.push((e.label.clone(), e.order(), e.squares.len(), class, x));
    }
    if json {
        return Ok(Report::ok(pretty(&json!(rows
            .iter()
            .map(|(label, n, count, class, x)| json!({
                "label": label, "n": n, "squares": count, "class_size": class, "x": x,
            }))
            .collect::<Vec<_>>()))));
    }
    let mut s = format!("{:<20} {:>4} {:>8} {:>12} {:>8}\n", "label", "n", "squares", "class size", "x");
    for (label, n, count, class, x) in &rows {
        let class = class.map_or("-".to_string(), |c| c.to_string());
        s += &format!("{label:<20} {n:>4} {count:>8} {class:>12} {x:>8}\n");
    }
    Ok(Report::ok(s))
}
