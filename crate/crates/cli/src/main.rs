use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecc_core::blocks::relations::render_relation;
use ecc_core::blocks::search::{table2, Target};
use ecc_core::blocks::{
    build_t, ecc, fund_match, linked, product_match_search, subrep_identities, verify_relations, TensorSpec,
    Verdict,
};
use ecc_core::cache::Cache;
use ecc_core::cartan::{cartan_data, CartanData, LieType, Node};
use ecc_core::divisor::{divisor_vectors, xi_divisor};
use ecc_core::mq::{pi_table_cached, pole_sets, rho_factorization};
use ecc_core::reference::compare_numerators;
use ecc_core::verify;
use ecc_core::Error;

#[derive(Parser)]
#[command(name = "ecc", version, about = "Elliptic central characters and block linkage")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Where computed M(q) numerators are kept.
    #[arg(long, global = true, env = "ECC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cartan matrix, symmetrizers, r∨, h∨, period and black nodes.
    Cartan {
        #[arg(long = "type")]
        ty: LieType,
    },
    /// Numerators π_ij of M(q), or the comparison with the listed values.
    Mq {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long)]
        i: Option<Node>,
        #[arg(long)]
        j: Option<Node>,
        /// Compare with the listed numerators or closed forms.
        #[arg(long)]
        verify_appendix: bool,
    },
    /// The divisor of ξ_ij and the factorization of ϱ_ij.
    Divisor {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        j: Node,
    },
    /// Singularity picture of ξ_ij.
    Table {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        j: Node,
    },
    /// The T matrix preset, or custom divisor vectors of ξ_ij.
    Tmatrix {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, requires = "j")]
        i: Option<Node>,
        #[arg(long, requires = "i")]
        j: Option<Node>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Determinant, rank and relation lattice of the T matrix.
    Relations {
        #[arg(long = "type")]
        ty: LieType,
    },
    /// Whether two tensor products share an elliptic central character.
    Linked {
        #[arg(long = "type")]
        ty: Option<LieType>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Elliptic central character of a tensor product.
    Ecc {
        #[arg(long = "type")]
        ty: Option<LieType>,
        #[arg(long, alias = "spec")]
        left: String,
    },
    /// Fundamental characters matched by V_i ⊗ V_j(q^k) for k in P_ij.
    Fundmatch {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        j: Node,
    },
    /// Fundamental matches for the tabulated E8 pairs (all pairs for other types).
    Table2 {
        #[arg(long = "type", default_value = "E8")]
        ty: LieType,
    },
    /// Exhaustive shift search for a product of 1 to 3 factors against a target.
    Search {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<Node>,
        #[arg(long)]
        target: Node,
        /// Also try cancelling two factors on a separate orbit.
        #[arg(long)]
        multi_orbit: bool,
    },
    /// Recorded subrepresentation facts and the duality facts.
    Subreps {
        #[arg(long = "type")]
        ty: LieType,
    },
    /// Inspect or clear the M(q) cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Every acceptance check.
    VerifyAll {
        /// Randomized specs per type and move.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    Inspect,
    Clear,
}

/// Rendered output plus whether a verification found a mismatch.
struct Report {
    text: String,
    json: Value,
    mismatch: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            mismatch: false,
        }
    }
}

fn cache_from(cli: &Cli) -> Option<Cache> {
    if cli.no_cache {
        return None;
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| dirs::data_dir().map(|d| d.join("ecc")))?;
    Some(Cache::new(dir))
}

fn warm(cd: &CartanData, cache: Option<&Cache>) -> Result<(), Error> {
    pi_table_cached(cd, cache).map(|_| ())
}

fn matrix_text(rows: &[Vec<i64>], labels: Option<&[String]>) -> String {
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let lw = labels.map_or(0, |l| l.iter().map(|s| s.chars().count()).max().unwrap_or(0));
    let mut s = String::new();
    for (k, r) in rows.iter().enumerate() {
        if let Some(l) = labels {
            s.push_str(&format!("{:<lw$}  ", l[k]));
        }
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn spec_of(s: &str, ty: Option<LieType>) -> Result<TensorSpec, Error> {
    if s.trim_start().starts_with('{') {
        let spec = TensorSpec::from_json(s)?;
        if let Some(t) = ty {
            if t != spec.lie_type {
                return Err(Error::TypeMismatch {
                    left: spec.lie_type.to_string(),
                    right: t.to_string(),
                });
            }
        }
        Ok(spec)
    } else {
        TensorSpec::parse(s, ty)
    }
}

fn target_text(t: &Target) -> String {
    match t {
        Target::Trivial => "ℂ".into(),
        Target::Fundamental { node, shift } => format!("V{node}(q^{shift})"),
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cache = cache_from(cli);
    let cache = cache.as_ref();
    let report = match &cli.cmd {
        Cmd::Cartan { ty } => {
            let cd = cartan_data(*ty);
            let duals: Vec<Node> = cd.nodes().map(|i| cd.dual_node(i)).collect::<Result<_, _>>()?;
            let text = format!(
                "type {}\ncartan matrix\n{}symmetrizers {:?}\nr∨ {}  h∨ {}  period {}\nblack nodes {:?}\nduals {:?}\n",
                cd.lie_type,
                matrix_text(&cd.cartan_matrix, None),
                cd.symmetrizers,
                cd.r_dual,
                cd.h_dual,
                cd.period,
                cd.black_nodes,
                duals
            );
            let mut json = serde_json::to_value(&cd)?;
            json["duals"] = json!(duals);
            Report::ok(text, json)
        }
        Cmd::Mq {
            ty,
            i,
            j,
            verify_appendix,
        } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            if *verify_appendix {
                match compare_numerators(&cd)? {
                    Some(r) => Report {
                        text: r.render(),
                        json: serde_json::to_value(&r)?,
                        mismatch: !r.mismatches.is_empty(),
                    },
                    None => return Err(Error::InvalidArgument(format!("no listed values for {ty}"))),
                }
            } else {
                let table = pi_table_cached(&cd, cache)?;
                let pairs: Vec<(Node, Node)> = match (i, j) {
                    (Some(i), Some(j)) => {
                        cd.check_node(*i)?;
                        cd.check_node(*j)?;
                        vec![(*i, *j)]
                    }
                    (None, None) => cd.nodes().flat_map(|i| (i..=cd.rank()).map(move |j| (i, j))).collect(),
                    _ => return Err(Error::InvalidArgument("give both --i and --j or neither".into())),
                };
                let mut text = format!("π_ij = m_ij (q−q⁻¹)(1−q^{})\n", cd.period);
                let mut entries = Vec::new();
                for (a, b) in pairs {
                    let p = table.poly(a, b);
                    text.push_str(&format!("π{a},{b} = {p}\n"));
                    entries.push(json!({"i": a, "j": b, "pi": p.to_ascii()}));
                }
                Report::ok(text, json!({"type": ty, "period": cd.period, "entries": entries}))
            }
        }
        Cmd::Divisor { ty, i, j } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let d = xi_divisor(&cd, *i, *j)?;
            let rho = rho_factorization(&cd, *i, *j)?;
            let poles = pole_sets(&cd, *i, *j)?;
            let text = format!(
                "ξ{i},{j} = {d}\nϱ{i},{j}(z) = {rho}\nP = {:?}\n",
                poles.p.iter().collect::<Vec<_>>()
            );
            let json = json!({
                "type": ty, "i": i, "j": j,
                "divisor": d.to_json(),
                "rho": rho.factors.iter().map(|(m, e)| [*m, *e]).collect::<Vec<_>>(),
                "poles": poles.p,
            });
            Report::ok(text, json)
        }
        Cmd::Table { ty, i, j } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let d = xi_divisor(&cd, *i, *j)?;
            let mut text = d.render_table();
            if text.is_empty() {
                text = "no zeros or poles\n".into();
            }
            Report::ok(text, json!({"type": ty, "i": i, "j": j, "divisor": d.to_json()}))
        }
        Cmd::Tmatrix {
            ty,
            i,
            j,
            window,
            count,
        } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let (rows, labels, recipe) = match (i, j) {
                (Some(i), Some(j)) => {
                    let w = window.unwrap_or(cd.h_dual as usize);
                    let c = count.unwrap_or(w);
                    let rows = divisor_vectors(&cd, *i, *j, w, c)?;
                    let labels: Vec<String> = (0..c).map(|s| format!("v{s}")).collect();
                    (rows, labels, format!("ξ{i},{j}, window {w}, count {c}"))
                }
                _ => {
                    if window.is_some() || count.is_some() {
                        return Err(Error::InvalidArgument("--window/--count need --i and --j".into()));
                    }
                    let t = build_t(&cd)?;
                    (t.rows, t.row_labels, t.recipe)
                }
            };
            let text = format!("{recipe}\n{}", matrix_text(&rows, Some(&labels)));
            Report::ok(text, json!({"type": ty, "recipe": recipe, "row_labels": labels, "rows": rows}))
        }
        Cmd::Relations { ty } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let r = verify_relations(&cd)?;
            let mut text = format!("{}\n", r.t.recipe);
            text.push_str(&matrix_text(&r.t.rows, Some(&r.t.row_labels)));
            if let Some(d) = r.det {
                text.push_str(&format!("det {d}\n"));
            }
            if let Some((v, w)) = r.block_dets {
                text.push_str(&format!("block dets {v}, {w}\n"));
            }
            text.push_str(&format!("rank {}\n", r.rank));
            if r.kernel_basis.is_empty() {
                text.push_str("no relations\n");
            } else {
                text.push_str("relations\n");
                for k in &r.kernel_basis {
                    text.push_str(&format!("  {} = 0\n", render_relation(k, &r.t.row_labels)));
                }
            }
            let mismatch = match &r.verdict {
                Verdict::Match => {
                    text.push_str(&format!("rank {}; kernel matches {}\n", r.rank, r.expected.family));
                    false
                }
                Verdict::Mismatch(why) => {
                    text.push_str(&format!("MISMATCH: {why}\n"));
                    true
                }
            };
            Report {
                text,
                json: serde_json::to_value(&r)?,
                mismatch,
            }
        }
        Cmd::Linked { ty, left, right } => {
            let a = spec_of(left, *ty)?;
            let b = spec_of(right, *ty)?;
            warm(&cartan_data(a.lie_type), cache)?;
            let yes = linked(&a, &b)?;
            let text = if yes { "LINKED\n" } else { "NOT LINKED\n" }.to_string();
            Report::ok(
                text,
                json!({"left": a.to_string(), "right": b.to_string(), "linked": yes}),
            )
        }
        Cmd::Ecc { ty, left } => {
            let spec = spec_of(left, *ty)?;
            warm(&cartan_data(spec.lie_type), cache)?;
            let e = ecc(&spec)?;
            Report::ok(format!("{spec}\n{e}"), serde_json::to_value(e.to_json())?)
        }
        Cmd::Fundmatch { ty, i, j } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let rows = fund_match(&cd, *i, *j)?;
            let mut text = String::new();
            for r in &rows {
                let t: Vec<String> = r.targets.iter().map(target_text).collect();
                let t = if t.is_empty() { "none".to_string() } else { t.join(", ") };
                text.push_str(&format!("q^{}  {}\n", r.k, t));
            }
            if rows.is_empty() {
                text.push_str("P is empty\n");
            }
            Report::ok(text, json!({"type": ty, "i": i, "j": j, "matches": rows}))
        }
        Cmd::Table2 { ty } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let rows = table2(&cd)?;
            let text: String = rows.iter().map(|r| format!("{}\n", r.render())).collect();
            Report::ok(text, json!({"type": ty, "rows": rows}))
        }
        Cmd::Search {
            ty,
            factors,
            target,
            multi_orbit,
        } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let found = product_match_search(&cd, factors, *target, *multi_orbit)?;
            let mut text = String::new();
            for m in &found {
                text.push_str(&format!("{m}\n"));
            }
            if found.is_empty() {
                text.push_str("none\n");
            }
            Report::ok(
                text,
                json!({"type": ty, "factors": factors, "target": target, "multi_orbit": multi_orbit, "matches": found}),
            )
        }
        Cmd::Subreps { ty } => {
            let cd = cartan_data(*ty);
            warm(&cd, cache)?;
            let checks = subrep_identities(&cd)?;
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed() { "ok" } else { "FAIL" };
                text.push_str(&format!("{status}  {}", c.label));
                if !c.divisor_failures.is_empty() {
                    text.push_str(&format!("  divisor fails at probes {:?}", c.divisor_failures));
                }
                if !c.containment_failures.is_empty() {
                    text.push_str(&format!("  containment fails at probes {:?}", c.containment_failures));
                }
                text.push('\n');
            }
            Report {
                mismatch: checks.iter().any(|c| !c.passed()),
                text,
                json: json!({"type": ty, "checks": checks}),
            }
        }
        Cmd::Cache { action } => {
            let Some(c) = cache else {
                return Err(Error::InvalidArgument("no cache directory (caching disabled)".into()));
            };
            match action {
                CacheAction::Inspect => {
                    let entries = c.entries()?;
                    let mut text = format!("{}\n", c.dir().display());
                    for e in &entries {
                        let t = e.lie_type.map_or("?".to_string(), |t| t.to_string());
                        let state = if e.valid { "ok" } else { "invalid" };
                        text.push_str(&format!("{}  {}  {} bytes  {}\n", e.file, t, e.bytes, state));
                    }
                    if entries.is_empty() {
                        text.push_str("empty\n");
                    }
                    Report::ok(text, json!({"dir": c.dir(), "entries": entries}))
                }
                CacheAction::Clear => {
                    let n = c.clear()?;
                    Report::ok(format!("removed {n} files\n"), json!({"removed": n}))
                }
            }
        }
        Cmd::VerifyAll { trials } => {
            let (results, extras) = verify::run_all(*trials)?;
            let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
            for e in &extras {
                text.push_str(&format!("  {}\n", e.replace('\n', "\n  ")));
            }
            Report {
                mismatch: results.iter().any(|r| !r.passed),
                text,
                json: json!({"checks": results, "itemized": extras}),
            }
        }
    };
    Ok(report)
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownType(_)
            | Error::InadmissibleRank { .. }
            | Error::NodeOutOfRange { .. }
            | Error::TypeMismatch { .. }
            | Error::FactorCount(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Json(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
            }
            ExitCode::from(u8::from(r.mismatch))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
