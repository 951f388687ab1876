//! Configuration, per-curve check suites and report rendering for the `kloosha` binary.

use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{build_field, FieldElem, FiniteField, Tower};
use crate::bsd::{central_value_bounds_check, expected_ordp, ln_big, sha_order_from_sums};
use crate::curve::{bad_places_report, curve_invariants, isogeny_identity_check, torsion_structure, CurveParams};
use crate::distribution::{angle_sample_from_sums, distribution_report, embedding_spread, AngleRow};
use crate::error::{Error, Result};
use crate::lfunction::{
    coeffs_from_power_sums, complete_by_functional_equation, default_n_max, expand_place_factors,
    functional_equation_sign, log_coeffs_of, newton_polygon, oracle_log_coeffs, oracle_point_counts, rh_check,
    LPolynomial, RH_DEGREE_LIMIT,
};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest `b` for which `sweep` evaluates the root check.
pub const SWEEP_RH_LIMIT: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Invariants,
    Lpoly,
    Verify,
    Sha,
    Angles,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Deliberate corruptions used to test that failing checks are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the linear coefficient of the closed-form polynomial.
    CorruptCoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaSpec {
    All,
    /// Base-`p` digit vectors, lowest first.
    List(Vec<Vec<u32>>),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u64,
    pub f: u32,
    pub modulus: Option<Vec<u32>>,
    pub gammas: GammaSpec,
    pub a_list: Vec<u32>,
    pub n_max: Option<usize>,
    pub budget: f64,
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub fault: Option<Fault>,
}

impl RunConfig {
    pub fn new(command: Command, p: u64, f: u32) -> Self {
        RunConfig {
            p,
            f,
            modulus: None,
            gammas: GammaSpec::All,
            a_list: vec![1],
            n_max: None,
            budget: crate::DEFAULT_BUDGET,
            command,
            format: Format::Json,
            out: None,
            workers: None,
            fault: None,
        }
    }
}

/// `"all"`, or a comma list of integers (packed indices) or `c0:c1:...` digit vectors.
pub fn parse_gammas(s: &str) -> Result<GammaSpec> {
    if s.trim() == "all" {
        return Ok(GammaSpec::All);
    }
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let digits = if item.contains(':') {
            item.split(':').map(|d| d.trim().parse::<u32>()).collect::<std::result::Result<Vec<_>, _>>()
        } else {
            item.parse::<u32>().map(|v| vec![v]).map(|v| v.into_iter().collect())
        };
        let digits = digits.map_err(|_| Error::Config(format!("cannot parse gamma '{item}'")))?;
        out.push(digits);
    }
    Ok(GammaSpec::List(out))
}

/// `N`, `A..B` (inclusive) or a comma list of those.
pub fn parse_levels(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Config(format!("cannot parse level list '{s}'"));
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.contains(&0) {
        return Err(Error::InvalidLevel);
    }
    Ok(out)
}

/// Resolves a gamma given as digits: a single entry is a packed index, several are coefficients.
fn gamma_elem(field: &FiniteField, digits: &[u32]) -> Result<FieldElem> {
    let g = if digits.len() == 1 {
        FieldElem(digits[0] as u64)
    } else {
        if digits.len() > field.degree() || digits.iter().any(|&d| d as u64 >= field.p()) {
            return Err(Error::Config(format!("gamma digits {digits:?} do not describe an element of F_{}", field.size())));
        }
        field.from_digits(&digits.iter().map(|&d| d as u64).collect::<Vec<_>>())
    };
    if g.0 >= field.size() {
        return Err(Error::Config(format!("gamma index {} is outside F_{}", g.0, field.size())));
    }
    if g.is_zero() {
        return Err(Error::ZeroGamma);
    }
    Ok(g)
}

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    fn new(id: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), passed, detail: detail.into() }
    }
}

/// Results for a single curve `(q, gamma, a)`.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub q: u64,
    pub gamma: String,
    pub a: u32,
    pub report: Value,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub csv_rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub output: String,
}

/// Library errors that mean a mathematical invariant failed rather than a bad request.
fn is_invariant_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotRational(_)
            | Error::NoFunctionalEquation
            | Error::OracleMismatch { .. }
            | Error::NonIntegerSha(_)
            | Error::VanishingCentralValue
            | Error::MarginViolation { .. }
            | Error::DegenerateAngle { .. }
            | Error::RootFindingFailure(_)
            | Error::NonSquarefreeDiscriminant
    )
}

fn error_id(e: &Error) -> &'static str {
    match e {
        Error::NotRational(_) => "coefficients-rational",
        Error::NoFunctionalEquation => "functional-equation",
        Error::OracleMismatch { .. } => "oracle-power-sums",
        Error::NonIntegerSha(_) => "sha-integral",
        Error::VanishingCentralValue => "central-value-nonzero",
        Error::MarginViolation { .. } => "angle-margins",
        Error::DegenerateAngle { .. } => "angles-defined",
        Error::RootFindingFailure(_) => "roots-on-unit-circle",
        Error::NonSquarefreeDiscriminant => "discriminant-squarefree",
        _ => "configuration",
    }
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn ratio_str(r: &Ratio<BigInt>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `places * b * (p-1)^2`, scaled by coefficient size once the coefficients outgrow a machine word.
fn expansion_cost(params: &CurveParams, places: usize) -> f64 {
    let b = params.b() as f64;
    let p = params.p() as f64;
    let words = (b * (params.q() as f64).log2() / 64.0).max(1.0);
    places as f64 * b * (p - 1.0) * (p - 1.0) * words
}

struct Curve {
    params: CurveParams,
    sums: Vec<crate::charsums::PlaceSums>,
}

impl Curve {
    fn lpoly(&self, fault: Option<Fault>, budget: f64) -> Result<LPolynomial> {
        let cost = expansion_cost(&self.params, self.sums.len());
        if cost > budget {
            return Err(Error::BudgetExceeded { cost, budget });
        }
        let mut l = expand_place_factors(self.params.q(), self.params.p() as u32, &self.sums)?;
        if fault == Some(Fault::CorruptCoefficient) {
            l.coeffs[1] += 1;
        }
        Ok(l)
    }
}

fn invariants_suite(c: &Curve) -> Result<(Value, Vec<CheckRecord>)> {
    let params = &c.params;
    let qa = params.qa();
    let inv = curve_invariants(params);
    let mut checks = Vec::new();
    let places = params.places()?;
    let dsum = places.degree_sum();
    checks.push(CheckRecord::new("place-degree-sum", dsum == qa - 1, format!("{dsum} vs q^a - 1 = {}", qa - 1)));
    let bad = bad_places_report(params);
    let (sqf, bad_deg) = match &bad {
        Ok(r) => (true, r.finite_places_degree_sum),
        Err(_) => (false, 0),
    };
    checks.push(CheckRecord::new(
        "discriminant-squarefree",
        sqf && bad_deg == 2 * qa,
        format!("squarefree {sqf}, degree {bad_deg} vs 2 q^a = {}", 2 * qa),
    ));
    let torsion = torsion_structure(params);
    checks.push(CheckRecord::new("torsion-order-two", torsion.len() == 2, format!("{} points", torsion.len())));
    let delta_inf = bad.as_ref().map_or(0, |r| r.infinite_fiber.delta);
    checks.push(CheckRecord::new(
        "height-from-discriminant-degree",
        12 * inv.logq_h == bad_deg + delta_inf,
        format!("12 log_q H = {} vs {} + {}", 12 * inv.logq_h, bad_deg, delta_inf),
    ));
    checks.push(CheckRecord::new("two-isogeny-identity", isogeny_identity_check(params), "Laurent residual"));
    let report = json!({
        "places": places.len(),
        "place_degree_sum": dsum,
        "logq_H": inv.logq_h,
        "logq_N": inv.logq_n,
        "tamagawa": inv.tamagawa,
        "b": inv.b_degree,
        "torsion_order": inv.torsion_order,
        "j_degree": [inv.j_num.len().saturating_sub(1), inv.j_den.len().saturating_sub(1)],
        "bad_reduction": bad.ok(),
    });
    Ok((report, checks))
}

fn lpoly_checks(params: &CurveParams, l: &LPolynomial, rh: bool) -> (Value, Vec<CheckRecord>) {
    let b = params.b();
    let mut checks = vec![
        CheckRecord::new("degree-is-2(q^a-1)", l.degree() == b && l.coeffs.len() == b + 1, format!("{} vs {b}", l.degree())),
        CheckRecord::new("constant-term-one", l.coeffs[0].is_one(), l.coeffs[0].to_string()),
    ];
    let sign = functional_equation_sign(l);
    checks.push(CheckRecord::new(
        "functional-equation",
        sign.is_ok(),
        sign.as_ref().map_or_else(|e| e.to_string(), |s| format!("sign {s}")),
    ));
    let np = newton_polygon(l, params.p(), params.field().degree() as u32);
    let half = Ratio::new(1, 2);
    let three_halves = Ratio::new(3, 2);
    let slopes_ok = np.slopes.len() == 2 && np.multiplicity(half) == b / 2 && np.multiplicity(three_halves) == b / 2;
    checks.push(CheckRecord::new(
        "slopes-half-and-three-halves",
        slopes_ok,
        np.slopes.iter().map(|(s, m)| format!("{s} x{m}")).collect::<Vec<_>>().join(", "),
    ));
    let mut rh_report = Value::Null;
    if rh && b <= RH_DEGREE_LIMIT {
        match rh_check(l) {
            Ok(r) => {
                checks.push(CheckRecord::new(
                    "roots-on-unit-circle",
                    r.max_deviation <= 1e-9,
                    format!("max deviation {:.3e}", r.max_deviation),
                ));
                rh_report = json!(r);
            }
            Err(e) => checks.push(CheckRecord::new("roots-on-unit-circle", false, e.to_string())),
        }
    }
    let report = json!({
        "degree": l.degree(),
        "coeffs": strs(&l.coeffs),
        "sign": sign.ok(),
        "slopes": np,
        "rh": rh_report,
    });
    (report, checks)
}

fn verify_suite(c: &Curve, cfg: &RunConfig) -> Result<(Value, Vec<CheckRecord>)> {
    let params = &c.params;
    let q = params.q();
    let b = params.b();
    let l = c.lpoly(cfg.fault, cfg.budget)?;
    let n_max = cfg.n_max.unwrap_or_else(|| default_n_max(q, cfg.budget)).max(1);
    let oracle = oracle_log_coeffs(params, n_max, cfg.budget)?;
    let closed = log_coeffs_of(&l, n_max);
    let mut checks = Vec::new();
    let first_bad = (1..=n_max).find(|&n| closed.get(n) != oracle.get(n));
    checks.push(CheckRecord::new(
        "oracle-power-sums",
        first_bad.is_none(),
        match first_bad {
            None => format!("c_1..c_{n_max} agree"),
            Some(n) => format!("c_{n}: closed form {} vs oracle {}", closed.get(n), oracle.get(n)),
        },
    ));
    let partial = coeffs_from_power_sums(&oracle)?;
    let mut reconstruction = "prefix";
    if n_max >= b {
        reconstruction = "full";
        let full: Vec<BigInt> = partial[..=b].to_vec();
        let tail_zero = partial[b + 1..].iter().all(Zero::is_zero);
        checks.push(CheckRecord::new(
            "oracle-full-reconstruction",
            full == l.coeffs && tail_zero,
            format!("degree {b} from {n_max} power sums"),
        ));
    } else if 2 * n_max >= b {
        reconstruction = "functional-equation";
        let done = complete_by_functional_equation(&partial, b, q);
        let ok = done.as_ref().is_ok_and(|(m, _)| m.coeffs == l.coeffs);
        checks.push(CheckRecord::new(
            "oracle-completed-reconstruction",
            ok,
            done.as_ref().map_or_else(|e| e.to_string(), |(_, s)| format!("sign {s}")),
        ));
    }
    let d_max = (n_max as u32).min(b as u32);
    let counts = oracle_point_counts(params, d_max, cfg.budget)?;
    let series = counts.truncated_series();
    let upto = d_max as usize;
    let ok = (0..=upto).all(|k| series[k] == l.coeffs.get(k).cloned().unwrap_or_default());
    checks.push(CheckRecord::new("point-count-euler-product", ok, format!("coefficients 0..={upto}")));
    let report = json!({
        "n_max": n_max,
        "oracle": strs(&oracle.values),
        "closed_form": strs(&closed.values),
        "reconstruction": reconstruction,
        "point_count_places": counts.entries.len(),
    });
    Ok((report, checks))
}

fn sha_suite(c: &Curve, cfg: &RunConfig) -> Result<(Value, Vec<CheckRecord>)> {
    let params = &c.params;
    let r = sha_order_from_sums(params, &c.sums)?;
    let expected = expected_ordp(params);
    let mut checks = vec![
        CheckRecord::new("sha-positive-integer", r.sha_order.is_positive(), "BSD formula"),
        CheckRecord::new("sha-perfect-square", r.is_perfect_square, "integer square root"),
        CheckRecord::new("sha-coprime-to-p", r.gcd_with_p.is_one(), format!("gcd {}", r.gcd_with_p)),
        CheckRecord::new(
            "central-value-valuation",
            r.ordp_central == expected,
            format!("{} vs {}", ratio_str(&r.ordp_central), ratio_str(&expected)),
        ),
        CheckRecord::new(
            "brauer-siegel-decomposition",
            r.brauer_siegel.decomposition_error <= 1e-9,
            format!("{:.3e}", r.brauer_siegel.decomposition_error),
        ),
    ];
    if cfg.fault.is_some() || expansion_cost(params, c.sums.len()) <= cfg.budget.min(1e7) {
        let l = c.lpoly(cfg.fault, cfg.budget)?;
        checks.push(CheckRecord::new(
            "central-value-matches-expansion",
            l.eval_at_inverse_q() == r.central_value,
            "L(1/q) from the expanded polynomial",
        ));
    }
    let bounds = central_value_bounds_check(params, &r.central_value);
    let digits = r.sha_order.to_string();
    let report = json!({
        "central_value": ratio_str(&r.central_value),
        "sha_order": digits,
        "square": r.is_perfect_square,
        "gcd_p": r.gcd_with_p.to_string(),
        "ordp_central": ratio_str(&r.ordp_central),
        "logq_H": r.logq_h,
        "brauer_siegel": r.brauer_siegel.ratio,
        "brauer_siegel_decomposition": r.brauer_siegel.decomposition,
        "central_value_mid": bounds.mid,
        "central_value_envelope": bounds.envelope,
        "log_sha": ln_big(&r.sha_order),
    });
    Ok((report, checks))
}

fn angles_suite(c: &Curve) -> Result<(Value, Vec<CheckRecord>, Vec<AngleRow>)> {
    let params = &c.params;
    let sample = angle_sample_from_sums(params, &c.sums, 1)?;
    let mut checks = Vec::new();
    let dist = distribution_report(&sample, params.p());
    let dist = match dist {
        Ok(d) => {
            checks.push(CheckRecord::new(
                "angle-margins",
                true,
                format!("min margin {:.3e} >= {:.3e}", d.margins.to_zero.min(d.margins.to_half_pi).min(d.margins.to_pi), d.epsilon_a),
            ));
            Some(d)
        }
        Err(e) if is_invariant_failure(&e) => {
            checks.push(CheckRecord::new(error_id(&e), false, e.to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    let spread = embedding_spread(params, &c.sums)?;
    checks.push(CheckRecord::new("embedding-invariance", spread <= 1e-9, format!("max difference {spread:.3e}")));
    let in_range = dist.as_ref().is_some_and(|d| d.moments.values().all(|m| (-1.0..=1.0).contains(m)));
    checks.push(CheckRecord::new("moments-in-range", in_range, "cos(k theta) averages in [-1, 1]"));
    let report = json!({ "count": sample.angles.len(), "distribution": dist });
    Ok((report, checks, sample.rows))
}

fn sweep_row(c: &Curve, cfg: &RunConfig) -> Result<(Value, Vec<CheckRecord>)> {
    let params = &c.params;
    let (sha, mut checks) = sha_suite(c, &RunConfig { fault: None, ..cfg.clone() })?;
    let (angles, more, _) = angles_suite(c)?;
    checks.extend(more);
    let mut lpoly = Value::Null;
    if expansion_cost(params, c.sums.len()) <= cfg.budget {
        let l = c.lpoly(cfg.fault, cfg.budget)?;
        let (v, more) = lpoly_checks(params, &l, params.b() <= SWEEP_RH_LIMIT);
        lpoly = json!({ "sign": v["sign"], "rh": v["rh"] });
        checks.extend(more);
    }
    Ok((json!({ "sha": sha, "angles": angles, "lpoly": lpoly }), checks))
}

fn run_curve(params: CurveParams, cfg: &RunConfig) -> Result<CurveReport> {
    let mut report = CurveReport {
        q: params.q(),
        gamma: params.gamma_label(),
        a: params.a,
        report: Value::Null,
        checks: Vec::new(),
        csv_rows: Vec::new(),
    };
    let sums = match cfg.command {
        Command::Invariants => Vec::new(),
        _ => params.place_sums(cfg.budget)?,
    };
    let c = Curve { params, sums };
    let res = match cfg.command {
        Command::Invariants => invariants_suite(&c),
        Command::Lpoly => c.lpoly(cfg.fault, cfg.budget).map(|l| lpoly_checks(&c.params, &l, true)),
        Command::Verify => verify_suite(&c, cfg),
        Command::Sha => sha_suite(&c, cfg),
        Command::Angles => angles_suite(&c).map(|(v, ch, rows)| {
            report.csv_rows = rows.into_iter().map(|r| vec![r.place, r.degree.to_string(), format!("{:.17e}", r.theta)]).collect();
            (v, ch)
        }),
        Command::Sweep => sweep_row(&c, cfg),
    };
    match res {
        Ok((v, ch)) => {
            report.report = v;
            report.checks = ch;
        }
        Err(e) if is_invariant_failure(&e) => report.checks.push(CheckRecord::new(error_id(&e), false, e.to_string())),
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn curves(cfg: &RunConfig) -> Result<Vec<CurveParams>> {
    if cfg.p % 2 == 0 {
        return Err(Error::EvenCharacteristic);
    }
    if !(cfg.budget > 0.0) {
        return Err(Error::Config("budget must be positive".into()));
    }
    let spec = build_field(cfg.p, cfg.f, cfg.modulus.as_deref())?;
    let tower: Arc<Tower> = Tower::new(&spec);
    let field = tower.base();
    let gammas: Vec<FieldElem> = match &cfg.gammas {
        GammaSpec::All => (1..field.size()).map(FieldElem).collect(),
        GammaSpec::List(list) => list.iter().map(|d| gamma_elem(field, d)).collect::<Result<_>>()?,
    };
    if cfg.a_list.is_empty() {
        return Err(Error::InvalidLevel);
    }
    let mut out = Vec::new();
    for &g in &gammas {
        for &a in &cfg.a_list {
            out.push(CurveParams::new(tower.clone(), g, a)?);
        }
    }
    Ok(out)
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn failures(reports: &[CurveReport]) -> Vec<Value> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().filter(|c| !c.passed).map(move |c| {
                json!({ "check": c.id, "q": r.q, "gamma": r.gamma, "a": r.a, "detail": c.detail })
            })
        })
        .collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(cfg: &RunConfig, reports: &[CurveReport]) -> Result<String> {
    let fails = failures(reports);
    match cfg.format {
        Format::Json => {
            let v = json!({
                "schema": SCHEMA_VERSION,
                "command": cfg.command,
                "p": cfg.p,
                "f": cfg.f,
                "results": reports,
                "failures": fails,
            });
            Ok(serde_json::to_string_pretty(&v).expect("report serializes") + "\n")
        }
        Format::Csv => {
            let ok = |r: &CurveReport| r.checks.iter().all(|c| c.passed).to_string();
            let key = |r: &CurveReport| vec![r.q.to_string(), r.gamma.clone(), r.a.to_string()];
            let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match cfg.command {
                Command::Angles => (
                    vec!["q", "gamma", "a", "place", "deg", "theta"],
                    reports.iter().flat_map(|r| r.csv_rows.iter().map(move |row| [key(r), row.clone()].concat())).collect(),
                ),
                Command::Sweep => (
                    vec![
                        "q", "gamma", "a", "sha_digits", "brauer_siegel", "central_value_mid", "ks", "w_error",
                        "moment2", "sign", "rh_max_deviation", "all_checks_pass",
                    ],
                    reports
                        .iter()
                        .map(|r| {
                            let s = &r.report["sha"];
                            let d = &r.report["angles"]["distribution"];
                            let l = &r.report["lpoly"];
                            let digits = s["sha_order"].as_str().map_or(0, str::len);
                            let mut row = key(r);
                            row.extend([
                                digits.to_string(),
                                cell(&s["brauer_siegel"]),
                                cell(&s["central_value_mid"]),
                                cell(&d["ks_distance"]),
                                cell(&d["w_error"]),
                                cell(&d["moments"]["2"]),
                                cell(&l["sign"]),
                                cell(&l["rh"]["max_deviation"]),
                                ok(r),
                            ]);
                            row
                        })
                        .collect(),
                ),
                _ => (
                    vec!["q", "gamma", "a", "check", "passed", "detail"],
                    reports
                        .iter()
                        .flat_map(|r| {
                            r.checks.iter().map(move |c| [key(r), vec![c.id.clone(), c.passed.to_string(), c.detail.clone()]].concat())
                        })
                        .collect(),
                ),
            };
            csv_string(&header, &rows)
        }
    }
}

fn run_inner(cfg: &RunConfig) -> Result<(Vec<CurveReport>, String)> {
    let curves = curves(cfg)?;
    let reports = curves.into_iter().map(|c| run_curve(c, cfg)).collect::<Result<Vec<_>>>()?;
    let text = render(cfg, &reports)?;
    Ok((reports, text))
}

/// Runs a configuration. Exit code 0 when every check passes, 1 when some
/// check fails (the output carries a failure record per check), 2 for
/// configuration errors.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    let pool = match cfg.workers {
        Some(0) => return config_error(&Error::Config("workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().ok(),
        None => None,
    };
    let res = match &pool {
        Some(pool) => pool.install(|| run_inner(cfg)),
        None => run_inner(cfg),
    };
    match res {
        Ok((reports, output)) => {
            let exit_code = if failures(&reports).is_empty() { 0 } else { 1 };
            RunOutcome { exit_code, output }
        }
        Err(e) => config_error(&e),
    }
}

fn config_error(e: &Error) -> RunOutcome {
    let v = json!({ "schema": SCHEMA_VERSION, "error": e.to_string() });
    RunOutcome { exit_code: 2, output: v.to_string() + "\n" }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_levels_and_gammas() {
        assert_eq!(parse_levels("1..3,5").unwrap(), vec![1, 2, 3, 5]);
        assert!(parse_levels("0").is_err());
        assert!(parse_levels("3..1").is_err());
        assert_eq!(parse_gammas("all").unwrap(), GammaSpec::All);
        assert_eq!(parse_gammas("1,2:1").unwrap(), GammaSpec::List(vec![vec![1], vec![2, 1]]));
        assert!(parse_gammas("x").is_err());
    }

    #[test]
    fn sha_of_the_small_curve() {
        let mut cfg = RunConfig::new(Command::Sha, 3, 1);
        cfg.gammas = GammaSpec::List(vec![vec![2]]);
        let out = run(&cfg);
        assert_eq!(out.exit_code, 0, "{}", out.output);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["results"][0]["report"]["sha_order"], "4");
        assert_eq!(v["schema"], 1);
    }

    #[test]
    fn configuration_errors_exit_with_two() {
        let mut cfg = RunConfig::new(Command::Sha, 4, 1);
        assert_eq!(run(&cfg).exit_code, 2);
        cfg.p = 3;
        cfg.gammas = GammaSpec::List(vec![vec![0]]);
        assert_eq!(run(&cfg).exit_code, 2);
    }

    #[test]
    fn corrupted_coefficient_is_reported() {
        let mut cfg = RunConfig::new(Command::Lpoly, 3, 1);
        cfg.fault = Some(Fault::CorruptCoefficient);
        let out = run(&cfg);
        assert_eq!(out.exit_code, 1);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert!(v["failures"].as_array().unwrap().iter().any(|f| f["check"] == "functional-equation"));
    }
}
