//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 when every check holds, 2 when a check fails (the report
//! carries a witness), 1 on usage, parse or input errors.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use regcon::burnside::{format_relation, parse_relation, relations_lattice, Relation};
use regcon::group::parse::parse_group;
use regcon::group::FiniteGroup;
use regcon::local::lattice::{phi41_sweep, random_pairs};
use regcon::local::{
    compatibility_check, load_tables, verify_dihedral_tables, verify_phi_claims, LatticePair, LocalCase, LocalSetup,
    ReductionData, ReductionKind, SetupSpec, VSpec,
};
use regcon::regulator::{
    check_twist_properties, regconst_irreducible, regconst_perm, tau_theta, RegulatorContext, SquareClass,
};
use regcon::Error;

#[derive(Parser, Debug)]
#[command(name = "regcon", version, about = "Relations, regulator constants and local compatibility checks")]
pub struct Cli {
    /// Seed for pairings and random lattice pairs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest group order accepted from permutation input.
    #[arg(long, global = true, default_value_t = 5000)]
    pub bound: usize,
    /// Primes for p-adic square classes (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subgroup classes and a basis of the relation lattice.
    Relations {
        /// Group: a catalog name (`D 12`, `SL2F3`), `perm: (1 2 3), (1 2)`, or `-` for stdin.
        group: String,
    },
    /// Regulator constants of relations on permutation modules or Q-irreducibles.
    Regconst {
        group: String,
        /// Basis index (`#0`) or a literal such as `2*[G] + [1] - 2*[C2] - [C3]`; default: every basis relation.
        #[arg(long)]
        relation: Option<String>,
        /// Evaluate on `Q[G/H]` for the subgroup class with this label.
        #[arg(long, conflicts_with = "orbit")]
        subgroup: Option<String>,
        /// Evaluate on the Q-irreducible with this orbit index.
        #[arg(long)]
        orbit: Option<usize>,
    },
    /// The twist sets T_{Θ,p} with their property checks; primes default to those dividing |G|.
    Tau {
        group: String,
        #[arg(long)]
        relation: Option<String>,
    },
    /// Compatibility of the Tamagawa function with the representation-theoretic side.
    Local {
        /// JSON file with `setup`, `reduction` and either `case` or `v` and `lambda`; stdin when absent.
        input: Option<String>,
    },
    /// Consistency of the dihedral Tamagawa tables.
    Tables {
        /// Table id; default: all tables.
        id: Option<String>,
        /// Only the starred (true) or unstarred (false) variant; default: both.
        #[arg(long)]
        star: Option<bool>,
    },
    /// Claims about the monodromy function φ(e, f) on a lattice pair.
    Phi {
        /// LatticePair JSON file; stdin when absent and `--random` is not given.
        input: Option<String>,
        /// Check this many seeded random pairs instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 12)]
        e_max: u64,
        #[arg(long, default_value_t = 12)]
        f_max: u64,
    },
    /// Experimental: compare φ(4,1) with φ(2,1) on seeded random pairs.
    Phi41 {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Table {
    title: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

struct Report {
    value: Value,
    tables: Vec<Table>,
    holds: bool,
}

enum CliError {
    Lib(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Input(_) => "InvalidInput",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Input(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, stdin: &str) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 1, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => Output { code: if report.holds { 0 } else { 2 }, stdout: render(&report, cli.format), stderr: String::new() },
        Err(e) => {
            let stdout = if cli.format == Format::Json {
                let v = json!({"error": {"code": e.code(), "message": e.message()}});
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                String::new()
            };
            Output { code: 1, stdout, stderr: format!("error[{}]: {}\n", e.code(), e.message()) }
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.value).expect("json")),
        Format::Tsv => {
            let mut s = String::new();
            for t in &report.tables {
                let _ = writeln!(s, "# {}", t.title);
                let _ = writeln!(s, "{}", t.header.join("\t"));
                for r in &t.rows {
                    let _ = writeln!(s, "{}", r.join("\t"));
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (k, t) in report.tables.iter().enumerate() {
                if k > 0 {
                    s.push('\n');
                }
                let _ = writeln!(s, "{}", t.title);
                let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
                for r in &t.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let mut out = String::from(" ");
                    for (i, c) in cells.iter().enumerate() {
                        let pad = widths[i] - c.chars().count();
                        out.push(' ');
                        out.push_str(c);
                        if i + 1 < cells.len() {
                            out.push_str(&" ".repeat(pad + 1));
                        }
                    }
                    out
                };
                let _ = writeln!(s, "{}", line(&t.header));
                for r in &t.rows {
                    let _ = writeln!(s, "{}", line(r));
                }
            }
            let _ = writeln!(s, "\n{}", if report.holds { "all checks hold" } else { "CHECK FAILED" });
            s
        }
    }
}

fn execute(cli: &Cli, stdin: &str) -> CliResult<Report> {
    match &cli.command {
        Command::Relations { group } => cmd_relations(&load_group(group, cli.bound, stdin)?),
        Command::Regconst { group, relation, subgroup, orbit } => {
            let g = load_group(group, cli.bound, stdin)?;
            cmd_regconst(&g, relation.as_deref(), subgroup.as_deref(), *orbit, &cli.primes, cli.seed)
        }
        Command::Tau { group, relation } => {
            let g = load_group(group, cli.bound, stdin)?;
            cmd_tau(&g, relation.as_deref(), &cli.primes, cli.seed)
        }
        Command::Local { input } => cmd_local(&read_input(input.as_deref(), stdin)?),
        Command::Tables { id, star } => cmd_tables(id.as_deref(), *star),
        Command::Phi { input, random, e_max, f_max } => {
            let pairs = match random {
                Some(n) => random_pairs(cli.seed, *n),
                None => vec![(cli.seed, parse_json::<LatticePair>(&read_input(input.as_deref(), stdin)?)?)],
            };
            cmd_phi(&pairs, *e_max, *f_max)
        }
        Command::Phi41 { count } => {
            let sweep = phi41_sweep(cli.seed, *count)?;
            let rows = sweep.different.iter().map(|(s, a, b)| vec![s.to_string(), a.to_string(), b.to_string()]).collect();
            Ok(Report {
                value: serde_json::to_value(&sweep).expect("json"),
                tables: vec![Table {
                    title: format!("φ(4,1) vs φ(2,1): {} pairs, {} equal", sweep.pairs, sweep.equal),
                    header: cols(&["seed", "φ(4,1)", "φ(2,1)"]),
                    rows,
                }],
                holds: true,
            })
        }
    }
}

fn load_group(spec: &str, bound: usize, stdin: &str) -> CliResult<FiniteGroup> {
    let text = if spec == "-" { stdin } else { spec };
    Ok(parse_group(text, bound)?)
}

fn read_input(path: Option<&str>, stdin: &str) -> CliResult<String> {
    match path {
        None | Some("-") => Ok(stdin.to_string()),
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{p}: {e}"))),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Lib(Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) }))
}

fn group_name(g: &FiniteGroup) -> String {
    g.label().map(str::to_string).unwrap_or_else(|| format!("order {}", g.order()))
}

/// Basis relations, or the single relation named by `#k` or a literal.
fn select_relations(g: &FiniteGroup, spec: Option<&str>) -> CliResult<Vec<(String, Relation)>> {
    let basis = relations_lattice(g);
    match spec {
        None => Ok(basis.into_iter().enumerate().map(|(i, r)| (format!("#{i}"), r)).collect()),
        Some(s) => {
            if let Some(k) = s.trim().strip_prefix('#').and_then(|k| k.parse::<usize>().ok()) {
                let r = basis
                    .get(k)
                    .cloned()
                    .ok_or_else(|| CliError::Input(format!("relation #{k} out of range (basis has {})", basis.len())))?;
                return Ok(vec![(format!("#{k}"), r)]);
            }
            Ok(vec![("literal".into(), parse_relation(g, s)?)])
        }
    }
}

fn cmd_relations(g: &FiniteGroup) -> CliResult<Report> {
    let lat = g.subgroup_lattice();
    let rels = relations_lattice(g);
    let classes: Vec<Value> = lat
        .classes
        .iter()
        .map(|c| json!({"id": c.id, "label": c.label, "order": c.order, "cyclic": c.is_cyclic, "normal": c.is_normal, "conjugates": c.conjugates_count}))
        .collect();
    let relations: Vec<Value> = rels
        .iter()
        .enumerate()
        .map(|(i, r)| json!({"id": i, "coeffs": r.coeffs, "text": format_relation(g, &r.coeffs)}))
        .collect();
    let class_rows = lat
        .classes
        .iter()
        .map(|c| {
            vec![c.id.to_string(), c.label.clone(), c.order.to_string(), yes(c.is_cyclic), yes(c.is_normal), c.conjugates_count.to_string()]
        })
        .collect();
    let rel_rows = rels.iter().enumerate().map(|(i, r)| vec![format!("#{i}"), format_relation(g, &r.coeffs)]).collect();
    Ok(Report {
        value: json!({"group": group_name(g), "order": g.order(), "classes": classes, "rank": rels.len(), "relations": relations}),
        tables: vec![
            Table {
                title: format!("{}: {} subgroup classes", group_name(g), lat.len()),
                header: cols(&["id", "label", "order", "cyclic", "normal", "conjugates"]),
                rows: class_rows,
            },
            Table { title: format!("relation basis (rank {})", rels.len()), header: cols(&["relation", "terms"]), rows: rel_rows },
        ],
        holds: true,
    })
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn padic(class: &SquareClass, primes: &[u64]) -> Vec<String> {
    primes.iter().map(|&p| class.to_padic(p).to_string()).collect()
}

fn cmd_regconst(
    g: &FiniteGroup,
    relation: Option<&str>,
    subgroup: Option<&str>,
    orbit: Option<usize>,
    primes: &[u64],
    seed: u64,
) -> CliResult<Report> {
    let rels = select_relations(g, relation)?;
    let lat = g.subgroup_lattice();
    let mut header = cols(&["relation", "module", "class", "method"]);
    header.extend(primes.iter().map(|p| format!("Q_{p}")));
    let mut rows = Vec::new();
    let mut values = Vec::new();
    if let Some(label) = subgroup {
        let k = lat.by_label(label).ok_or_else(|| CliError::Input(format!("no subgroup class labelled {label}")))?;
        for (name, rel) in &rels {
            let v = regconst_perm(g, rel, &lat.classes[k].representative);
            let class = SquareClass::from_rational(&v)?;
            let mut row = vec![name.clone(), format!("Q[G/{label}]"), class.to_string(), format!("exact {v}")];
            row.extend(padic(&class, primes));
            rows.push(row);
            values.push(json!({
                "relation": name, "coeffs": rel.coeffs, "module": {"subgroup": label},
                "class": class, "exact": v.to_string(), "padic": padic(&class, primes),
            }));
        }
    } else {
        let ctx = RegulatorContext::new(g, seed)?;
        let orbits: Vec<usize> = match orbit {
            Some(i) if i < ctx.q_orbits.len() => vec![i],
            Some(i) => return Err(CliError::Input(format!("orbit {i} out of range ({} orbits)", ctx.q_orbits.len()))),
            None => (0..ctx.q_orbits.len()).filter(|&i| ctx.q_orbits[i].self_dual).collect(),
        };
        for (name, rel) in &rels {
            for &i in &orbits {
                let o = &ctx.q_orbits[i];
                let module = format!("orbit {i} {:?} dim {}", o.members, o.dim());
                match regconst_irreducible(&ctx, rel, i) {
                    Ok(c) => {
                        let method = serde_json::to_string(&c.strategy).expect("json");
                        let mut row = vec![name.clone(), module, c.class.to_string(), method];
                        row.extend(padic(&c.class, primes));
                        rows.push(row);
                        values.push(json!({
                            "relation": name, "coeffs": rel.coeffs, "module": {"orbit": i, "characters": o.members},
                            "constant": c, "padic": padic(&c.class, primes),
                        }));
                    }
                    Err(e) => {
                        let mut row = vec![name.clone(), module, "-".into(), format!("{}: {e}", e.code())];
                        row.extend(primes.iter().map(|_| "-".to_string()));
                        rows.push(row);
                        values.push(json!({
                            "relation": name, "coeffs": rel.coeffs, "module": {"orbit": i, "characters": o.members},
                            "error": {"code": e.code(), "message": e.to_string()},
                        }));
                    }
                }
            }
        }
    }
    Ok(Report {
        value: json!({"group": group_name(g), "primes": primes, "constants": values}),
        tables: vec![Table { title: format!("regulator constants on {}", group_name(g)), header, rows }],
        holds: true,
    })
}

fn cmd_tau(g: &FiniteGroup, relation: Option<&str>, primes: &[u64], seed: u64) -> CliResult<Report> {
    let rels = select_relations(g, relation)?;
    let ctx = RegulatorContext::new(g, seed)?;
    let primes: Vec<u64> = if primes.is_empty() { regcon::arith::prime_divisors(g.order() as u64) } else { primes.to_vec() };
    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut holds = true;
    for (name, rel) in &rels {
        for &p in &primes {
            let spec = tau_theta(&ctx, rel, p);
            let check = check_twist_properties(&ctx, &spec)?;
            holds &= check.all_passed();
            let constituents: Vec<String> =
                spec.canonical_rep.iter().map(|&i| format!("χ{i}(dim {})", ctx.table.chars[i].degree)).collect();
            let failed: Vec<&str> = check.items.iter().filter(|i| i.passed == Some(false)).map(|i| i.name.as_str()).collect();
            rows.push(vec![
                name.clone(),
                p.to_string(),
                if constituents.is_empty() { "0".into() } else { constituents.join(" + ") },
                spec.dimension(ctx.table).to_string(),
                if failed.is_empty() { "pass".into() } else { format!("FAIL {}", failed.join(",")) },
                spec.caveats.len().to_string(),
            ]);
            values.push(json!({"relation": name, "p": p, "twist": spec, "dimension": spec.dimension(ctx.table), "properties": check}));
        }
    }
    Ok(Report {
        value: json!({"group": group_name(g), "twists": values, "holds": holds}),
        tables: vec![Table {
            title: format!("T_Θ,p on {}", group_name(g)),
            header: cols(&["relation", "p", "canonical τ", "dim", "properties", "caveats"]),
            rows,
        }],
        holds,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalInput {
    setup: SetupSpec,
    reduction: Option<ReductionData>,
    case: Option<LocalCase>,
    v: Option<VSpec>,
    lambda: Option<i8>,
}

fn cmd_local(text: &str) -> CliResult<Report> {
    let input: LocalInput = parse_json(text)?;
    let setup = LocalSetup::from_spec(&input.setup)?;
    let (lambda, v) = match (&input.case, input.v, input.lambda) {
        (Some(c), None, None) => c.lambda_and_v(),
        (None, Some(v), l) => (l.unwrap_or(1), v),
        _ => return Err(CliError::Input("give either `case` or `v` (with optional `lambda`)".into())),
    };
    let red = match (input.reduction, &input.case) {
        (Some(r), _) => r,
        (None, Some(LocalCase::Semistable { lattice })) => ReductionData::new(ReductionKind::SemistableAv { lattice: lattice.clone() }),
        (None, Some(LocalCase::Good)) => ReductionData::new(ReductionKind::Good),
        _ => return Err(CliError::Input("missing `reduction`".into())),
    };
    let report = compatibility_check(&setup, &red, &v, lambda)?;
    let lat = setup.group.subgroup_lattice();
    let rows = lat
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| vec![c.label.clone(), report.tamagawa[k].clone(), report.c_v[k].to_string(), report.d_v[k].to_string()])
        .collect();
    let rel_rows = report
        .per_relation
        .iter()
        .map(|r| vec![r.relation.clone(), r.c_v.to_string(), r.d_v.to_string(), yes(r.agree)])
        .collect();
    let title = match (&report.witness, &report.witness_value) {
        (Some(w), Some(c)) => format!("relations: fails on {w} with C_v/D_V = {c}"),
        _ => format!("relations (compared as {:?})", report.mode),
    };
    Ok(Report {
        holds: report.holds,
        value: json!({"lambda": lambda, "v": v, "report": report}),
        tables: vec![
            Table { title: format!("C_v and D_V with λ = {lambda}"), header: cols(&["H", "c_v", "C_v", "D_V"]), rows },
            Table { title, header: cols(&["relation", "C_v", "D_V", "agree"]), rows: rel_rows },
        ],
    })
}

fn cmd_tables(id: Option<&str>, star: Option<bool>) -> CliResult<Report> {
    let ids: Vec<String> = match id {
        Some(i) => vec![i.to_string()],
        None => load_tables()?.into_iter().map(|t| t.id).collect(),
    };
    let stars: Vec<bool> = star.map(|s| vec![s]).unwrap_or_else(|| vec![false, true]);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut holds = true;
    for id in &ids {
        for &s in &stars {
            let r = match verify_dihedral_tables(id, s) {
                Ok(r) => r,
                Err(Error::TableInconsistent(msg)) => {
                    holds = false;
                    rows.push(vec![id.clone(), yes(s), "-".into(), "-".into(), format!("FAIL {msg}")]);
                    values.push(json!({"id": id, "starred": s, "holds": false, "error": msg}));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            holds &= r.holds;
            for v in &r.variants {
                let completions: Vec<String> = v
                    .completions
                    .iter()
                    .map(|c| if c.is_empty() { "-".into() } else { c.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(",") })
                    .collect();
                rows.push(vec![
                    id.clone(),
                    yes(s),
                    r.delta.to_string(),
                    format!("choice {}{}", v.paired_choice, v.x.map(|x| format!(" X={x}")).unwrap_or_default()),
                    if completions.is_empty() { "FAIL none".into() } else { completions.join(" | ") },
                ]);
            }
            values.push(serde_json::to_value(&r).expect("json"));
        }
    }
    Ok(Report {
        value: json!({"tables": values, "holds": holds}),
        tables: vec![Table {
            title: "dihedral tables".into(),
            header: cols(&["table", "starred", "δ", "variant", "consistent completions"]),
            rows,
        }],
        holds,
    })
}

fn cmd_phi(pairs: &[(u64, LatticePair)], e_max: u64, f_max: u64) -> CliResult<Report> {
    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut holds = true;
    for (seed, lp) in pairs {
        lp.validate()?;
        let r = verify_phi_claims(lp, e_max, f_max)?;
        holds &= r.holds;
        for c in &r.claims {
            let status = if c.skipped {
                "skipped".to_string()
            } else if let Some(f) = c.failures.first() {
                format!("FAIL e={} f={}: {} vs {}", f.e, f.f, f.lhs, f.rhs)
            } else {
                "pass".to_string()
            };
            rows.push(vec![seed.to_string(), lp.rank.to_string(), r.order.to_string(), c.claim.to_string(), c.checked.to_string(), status]);
        }
        values.push(json!({"seed": seed, "lattice": lp, "report": r}));
    }
    Ok(Report {
        value: json!({"pairs": values, "holds": holds}),
        tables: vec![Table {
            title: format!("φ claims for e ≤ {e_max}, f ≤ {f_max}"),
            header: cols(&["seed", "rank", "|F|", "claim", "checked", "status"]),
            rows,
        }],
        holds,
    })
}
