use crate::{usage, Command, Outcome};
use cantor_core::dimension::*;
use cantor_core::exactnum::{format_rational, parse_rational, pow2_neg, q, rational_to_f64, render_decimal, QAlpha, Rational, RealNumber};
use cantor_core::exec::Exec;
use cantor_core::expansions::*;
use cantor_core::thuemorse::*;
use cantor_core::verify;
use cantor_core::words::{parse_epseq, zero_density, Alphabet, Seq};
use cantor_core::Result;
use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

const DEFAULT_DEPTH_CAP: usize = 4096;

/// `CANTOR_DEPTH_CAP` if set, else `default`.
fn depth_cap(default: usize) -> Result<usize> {
    match std::env::var("CANTOR_DEPTH_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("CANTOR_DEPTH_CAP must be a positive integer, got '{v}'"))),
        Err(_) => Ok(default),
    }
}

pub fn exec_for(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    }
}

fn parse_alphabet(s: &str) -> Result<Alphabet> {
    match s.trim() {
        "signed" | "-1..1" => Ok(Alphabet::SIGNED),
        other => {
            let m = other.strip_prefix("0..").unwrap_or(other);
            let m: u32 = m.parse().map_err(|_| usage(format!("alphabet must be 'signed' or '0..M', got '{s}'")))?;
            if m == 0 {
                return Err(usage("alphabet needs at least two digits"));
            }
            Ok(Alphabet::zero_to(m))
        }
    }
}

fn real(s: &str) -> Result<RealNumber> {
    s.parse()
}

fn rat_json(r: &Rational) -> Value {
    let f = rational_to_f64(r);
    json!({ "exact": format_rational(r), "decimal": render_decimal(f, f) })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialise")
}

/// `t` given as a number or one of the named constants.
fn t_value(sys: &BaseSystem, t: &str) -> Result<QAlpha> {
    match t.trim() {
        "sum-neg-alpha" => sum_neg_alpha(sys),
        "ex52" => silver_t(sys),
        other => qalpha_of(sys, &real(other)?),
    }
}

fn dim_text(d: &DimensionValue) -> String {
    format!("{} ~ {} in [{:.9}, {:.9}]", d.exact, d.decimal, d.lower, d.upper)
}

fn uniqueness_text(u: &Uniqueness) -> String {
    match u {
        Uniqueness::Unique => "true".into(),
        Uniqueness::NotUnique { shift, position, reflected } => {
            let side = if *reflected { "reflected tail" } else { "tail" };
            match position {
                Some(p) => format!("false ({side} after {shift} digits decided at offset {p})"),
                None => format!("false ({side} after {shift} digits equals delta)"),
            }
        }
        Uniqueness::UndecidedAtDepth(d) => format!("undecided (no violation within {d} digits)"),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ExpandArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub x: String,
    /// `signed` or `0..M`.
    #[arg(long, default_value = "signed")]
    pub alphabet: String,
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Quasi-greedy instead of greedy.
    #[arg(long)]
    pub quasi: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DeltaArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "signed")]
    pub alphabet: String,
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Digits searched for an eventually periodic form.
    #[arg(long, default_value_t = 128)]
    pub ep_depth: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct UniqueArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub t_seq: String,
    #[arg(long, default_value = "signed")]
    pub alphabet: String,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TmWhat {
    Tau,
    Lambda,
    W,
    Zeta,
    Eta,
}

#[derive(Args, Debug, Serialize)]
pub struct TmArgs {
    #[arg(long, value_enum)]
    pub what: TmWhat,
    /// Prefix length for `tau`/`lambda`, index for the words.
    #[arg(long)]
    pub n: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct AlphaKlArgs {
    #[arg(long, default_value = "1e-10")]
    pub width: String,
}

#[derive(Args, Debug, Serialize)]
pub struct DsetArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = NSTAR_CAP)]
    pub nstar_cap: u32,
    #[arg(long, default_value_t = 8)]
    pub sft_cap: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct DimArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub t_seq: String,
}

#[derive(Args, Debug, Serialize)]
pub struct IntersectArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub t: String,
    /// Write the automaton and count matrix as JSON.
    #[arg(long)]
    pub export: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct BoxcountArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub t: String,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Write the rows as CSV with columns n, lower, upper.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SelfsimilarArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub t_seq: String,
}

#[derive(Args, Debug, Serialize)]
pub struct DenseTargetsArgs {
    #[arg(long)]
    pub alpha: String,
    /// Comma-separated target densities in [0, 1].
    #[arg(long, default_value = "0,1/10,1/5,3/10,2/5,1/2,3/5,7/10,4/5,9/10,1")]
    pub targets: String,
    #[arg(long, default_value = "1/100")]
    pub tol: String,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct LiouvilleArgs {
    #[arg(long)]
    pub pq: String,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Free digits: `zeros` or `ones`.
    #[arg(long, default_value = "zeros")]
    pub rule: String,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Run a single criterion.
    #[arg(long)]
    pub only: Option<usize>,
}

pub fn inputs_of(c: &Command) -> Value {
    match c {
        Command::Expand(a) => to_value(a),
        Command::Delta(a) => to_value(a),
        Command::Unique(a) => to_value(a),
        Command::Tm(a) => to_value(a),
        Command::AlphaKl(a) => to_value(a),
        Command::Dset(a) => to_value(a),
        Command::Dim(a) => to_value(a),
        Command::Intersect(a) => to_value(a),
        Command::Boxcount(a) => to_value(a),
        Command::Selfsimilar(a) => to_value(a),
        Command::DenseTargets(a) => to_value(a),
        Command::Liouville(a) => to_value(a),
        Command::VerifyPaper(a) => to_value(a),
    }
}

pub fn run(c: &Command, exec: Exec) -> Result<Outcome> {
    match c {
        Command::Expand(a) => expand(a),
        Command::Delta(a) => delta_cmd(a),
        Command::Unique(a) => unique(a),
        Command::Tm(a) => tm(a),
        Command::AlphaKl(a) => alpha_kl_cmd(a),
        Command::Dset(a) => dset(a),
        Command::Dim(a) => dim(a),
        Command::Intersect(a) => intersect(a),
        Command::Boxcount(a) => boxcount(a, exec),
        Command::Selfsimilar(a) => selfsimilar(a),
        Command::DenseTargets(a) => dense_targets(a),
        Command::Liouville(a) => liouville(a),
        Command::VerifyPaper(a) => verify_paper(a, exec),
    }
}

fn ok(result: Value, text: String) -> Result<Outcome> {
    Ok(Outcome { result, text, ok: true })
}

fn expand(a: &ExpandArgs) -> Result<Outcome> {
    let sys = BaseSystem::new(real(&a.alpha)?, parse_alphabet(&a.alphabet)?)?;
    let x = real(&a.x)?;
    let w = if a.quasi { quasi_greedy_expansion(&sys, &x, a.n)? } else { greedy_expansion(&sys, &x, a.n)? };
    let kind = if a.quasi { "quasi-greedy" } else { "greedy" };
    ok(json!({ "kind": kind, "digits": w.digits(), "word": w.to_string() }), w.to_string())
}

fn delta_cmd(a: &DeltaArgs) -> Result<Outcome> {
    let sys = BaseSystem::new(real(&a.alpha)?, parse_alphabet(&a.alphabet)?)?;
    let w = delta(&sys, a.n)?;
    let ep = try_ep_form(&sys, a.ep_depth)?;
    let mut text = w.to_string();
    if let Some(e) = &ep {
        write!(text, "\neventually periodic: {e}").unwrap();
    }
    ok(json!({ "prefix": w.to_string(), "ep_form": ep.map(|e| e.to_string()) }), text)
}

fn unique(a: &UniqueArgs) -> Result<Outcome> {
    let sys = BaseSystem::new(real(&a.alpha)?, parse_alphabet(&a.alphabet)?)?;
    let s = parse_epseq(&a.t_seq, sys.alphabet())?;
    let u = is_unique_expansion(&sys, &Seq::Periodic(s), depth_cap(DEFAULT_DEPTH_CAP)?)?;
    ok(json!({ "unique": u.is_unique(), "passes": u.passes(), "verdict": to_value(&u) }), uniqueness_text(&u))
}

fn tm(a: &TmArgs) -> Result<Outcome> {
    let n = a.n;
    let w = match a.what {
        TmWhat::Tau => tau_prefix(n as usize)?,
        TmWhat::Lambda => lambda_prefix(n as usize)?,
        TmWhat::W => w(n)?,
        TmWhat::Zeta => zeta(n)?,
        TmWhat::Eta => eta(n)?,
    };
    ok(json!({ "word": w.to_string(), "digits": w.digits(), "length": w.len() }), w.to_string())
}

fn alpha_kl_cmd(a: &AlphaKlArgs) -> Result<Outcome> {
    let width = parse_rational(&a.width)?;
    if width <= q(0, 1) {
        return Err(usage("width must be positive"));
    }
    let (lo, hi) = alpha_kl(&width)?;
    let dec = render_decimal(rational_to_f64(&lo), rational_to_f64(&hi));
    let text = format!("[{}, {}]\n~ {dec}", format_rational(&lo), format_rational(&hi));
    ok(json!({ "lo": rat_json(&lo), "hi": rat_json(&hi), "decimal": dec }), text)
}

fn dset(a: &DsetArgs) -> Result<Outcome> {
    let caps = DSetCaps { nstar_cap: a.nstar_cap, sft_cap: a.sft_cap, depth_cap: depth_cap(DEFAULT_DEPTH_CAP)? };
    let d = d_set(&real(&a.alpha)?, caps)?;
    let mut text = format!("kind: {:?}", d.kind);
    if !d.also.is_empty() {
        write!(text, " (also {:?})", d.also).unwrap();
    }
    if let Some(n) = d.nstar {
        write!(text, "\nn*: {n}{}", if d.cap_active { " (cap reached)" } else { "" }).unwrap();
    }
    for v in &d.values {
        write!(text, "\nvalue: {}", dim_text(v)).unwrap();
    }
    if let Some((lo, hi)) = &d.interval {
        write!(text, "\ninterval: [{}, {}]", lo.decimal, hi.decimal).unwrap();
    }
    if let Some(n) = d.sft_n {
        write!(text, "\nsft n: {n}").unwrap();
    }
    if let Some((lo, hi)) = &d.excluded_band {
        write!(text, "\nexcluded zero frequencies: ({}, {})", format_rational(lo), format_rational(hi)).unwrap();
    }
    ok(to_value(&d), text)
}

fn dim(a: &DimArgs) -> Result<Outcome> {
    let alpha = real(&a.alpha)?;
    let sys = BaseSystem::signed(alpha.clone())?;
    let s = parse_epseq(&a.t_seq, Alphabet::SIGNED)?;
    let seq = Seq::Periodic(s);
    let u = is_unique_expansion(&sys, &seq, depth_cap(DEFAULT_DEPTH_CAP)?)?;
    if !u.passes() {
        return Err(cantor_core::Error::OutOfDomain(format!("t is not uniquely coded: {}", uniqueness_text(&u))));
    }
    let f = zero_density(&seq)?;
    let d = dim_from_frequency(&alpha, &f)?;
    ok(json!({ "uniqueness": to_value(&u), "frequency": to_value(&f), "dimension": to_value(&d) }), dim_text(&d))
}

fn intersect(a: &IntersectArgs) -> Result<Outcome> {
    let sys = BaseSystem::signed(real(&a.alpha)?)?;
    let t = t_value(&sys, &a.t)?;
    let auto = build_expansion_automaton(&sys, &t, a.state_cap)?;
    auto.require_complete()?;
    let g = build_intersection_graph(&auto)?;
    let pd = perron_dimension(&g, sys.alpha())?;
    let fb = freq_upper_bound_over_expansions(&auto)?;
    if let Some(path) = &a.export {
        let doc = json!({ "automaton": auto.to_json(), "graph": to_value(&g) });
        let body = serde_json::to_string_pretty(&doc).expect("JSON values always serialise");
        std::fs::write(path, body).map_err(|e| cantor_core::Error::OutOfDomain(format!("{}: {e}", path.display())))?;
    }
    let mut text = format!("states={}", auto.num_states());
    if let Some(l) = &pd.lambda {
        write!(text, ", lambda~{}", render_decimal(rational_to_f64(&l.lo), rational_to_f64(&l.hi))).unwrap();
    }
    write!(text, ", dim~{}", pd.dimension.decimal).unwrap();
    write!(text, "\ndimension: {}", dim_text(&pd.dimension)).unwrap();
    write!(text, "\nmax zero frequency over expansions: {}", format_rational(&fb)).unwrap();
    let result = json!({
        "states": auto.num_states(),
        "t": t.canonical_string(),
        "graph_states": g.states.len(),
        "perron": to_value(&pd),
        "max_zero_frequency": rat_json(&fb),
    });
    ok(result, text)
}

fn boxcount(a: &BoxcountArgs, exec: Exec) -> Result<Outcome> {
    let sys = BaseSystem::signed(real(&a.alpha)?)?;
    let t = t_value(&sys, &a.t)?;
    let (lo, hi) = t.enclose(&pow2_neg(220));
    let bc = box_count_oracle(sys.alpha(), (&lo, &hi), a.depth, depth_cap(DEFAULT_BOX_DEPTH)?, exec)?;
    if let Some(path) = &a.csv {
        let io = |e: csv::Error| cantor_core::Error::OutOfDomain(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        for r in &bc.rows {
            w.serialize(r).map_err(io)?;
        }
        w.flush().map_err(|e| cantor_core::Error::OutOfDomain(format!("{}: {e}", path.display())))?;
    }
    let mut text = String::from("n\tlower\tupper");
    for r in &bc.rows {
        write!(text, "\n{}\t{}\t{}", r.n, r.lower, r.upper).unwrap();
    }
    if let Some(s) = bc.slope_upper {
        write!(text, "\nslope (upper counts): {s:.6}").unwrap();
    }
    if let Some(s) = bc.slope_lower {
        write!(text, "\nslope (lower counts): {s:.6}").unwrap();
    }
    ok(to_value(&bc), text)
}

fn selfsimilar(a: &SelfsimilarArgs) -> Result<Outcome> {
    let sys = BaseSystem::signed(real(&a.alpha)?)?;
    let s = parse_epseq(&a.t_seq, Alphabet::SIGNED)?;
    let r = self_similar_check(&sys, &s, depth_cap(DEFAULT_DEPTH_CAP)?)?;
    let text = match &r {
        SelfSimilarity::SelfSimilar { i, j } => format!("self-similar: 1-|t| = I J^infinity with I = {i}, J = {j}"),
        SelfSimilarity::NotSelfSimilar => "not self-similar".into(),
        SelfSimilarity::NotUnique(u) => format!("t is not uniquely coded: {}", uniqueness_text(u)),
    };
    ok(to_value(&r), text)
}

fn dense_targets(a: &DenseTargetsArgs) -> Result<Outcome> {
    let targets = a.targets.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    let tol = parse_rational(&a.tol)?;
    let hits = dense_selfsimilar_targets(&real(&a.alpha)?, &targets, &tol, depth_cap(DEFAULT_DEPTH_CAP)?)?;
    if let Some(path) = &a.csv {
        let io = |e: csv::Error| cantor_core::Error::OutOfDomain(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        w.write_record(["target", "sequence", "density", "n1", "n2"]).map_err(io)?;
        for h in &hits {
            w.write_record([
                format_rational(&h.target),
                h.seq.to_string(),
                format_rational(&h.density),
                h.n1.to_string(),
                h.n2.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| cantor_core::Error::OutOfDomain(format!("{}: {e}", path.display())))?;
    }
    let mut text = String::from("target\tdensity\tsequence");
    for h in &hits {
        write!(text, "\n{}\t{}\t{}", format_rational(&h.target), format_rational(&h.density), h.seq).unwrap();
    }
    ok(to_value(&hits), text)
}

fn liouville(a: &LiouvilleArgs) -> Result<Outcome> {
    let pq = parse_rational(&a.pq)?;
    let rule: FreeDigitRule = a.rule.parse()?;
    let w = liouville_witness(&pq, a.k, rule, depth_cap(DEFAULT_DEPTH_CAP)?)?;
    let mut text = format!("n: {:?}", w.n_values);
    for c in &w.approximants {
        write!(
            text,
            "\nk={}: approximant {} order {} denominator {} distinct {}",
            c.k,
            format_rational(&c.approximant),
            c.order_ok,
            c.denominator_ok,
            c.distinct
        )
        .unwrap();
    }
    let dec = render_decimal(rational_to_f64(&w.x_lo), rational_to_f64(&w.x_hi));
    write!(text, "\nx ~ {dec}").unwrap();
    write!(text, "\nin (1/3, golden threshold): {}", w.in_domain).unwrap();
    write!(text, "\nt unique: {}", uniqueness_text(&w.uniqueness)).unwrap();
    let pass = w.all_checks_pass() && w.uniqueness.passes();
    Ok(Outcome { result: to_value(&w), text, ok: pass })
}

fn verify_paper(a: &VerifyArgs, exec: Exec) -> Result<Outcome> {
    let reports = match a.only {
        Some(id) if (1..=verify::CRITERIA).contains(&id) => vec![verify::run_criterion(id, exec)],
        Some(id) => return Err(usage(format!("criteria are numbered 1..={}, got {id}", verify::CRITERIA))),
        None => verify::run_all(exec),
    };
    let text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
    let pass = reports.iter().all(|r| r.pass);
    let passed = reports.iter().filter(|r| r.pass).count();
    let text = format!("{text}\n{passed}/{} criteria pass", reports.len());
    Ok(Outcome { result: json!({ "criteria": to_value(&reports), "passed": passed }), text, ok: pass })
}
