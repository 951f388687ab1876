//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed};

use kloosha::algebra::{build_field, places_p, FieldElem, Tower};
use kloosha::bsd::{expected_ordp, sha_order_from_sums, ShaReport};
use kloosha::charsums::{
    gauss_sum, gauss_sum_raw, kloosterman_power_sum, kloosterman_sum, kloosterman_sum_raw, lifted_gauss_sum,
    lifted_kloosterman_sum, salie_check, AdditiveCharacter, PlaceSums,
};
use kloosha::curve::{bad_places_report, curve_invariants, isogeny_identity_holds, torsion_structure, CurveParams};
use kloosha::distribution::{angle_sample_from_sums, distribution_report, epsilon_a, DistributionReport};
use kloosha::lfunction::{
    closed_form_lpolynomial, closed_form_with_character, coeffs_from_power_sums, complete_by_functional_equation,
    default_n_max, expand_place_factors, functional_equation_sign, log_coeffs_of, newton_polygon, oracle_log_coeffs,
    rh_check, LPolynomial,
};
use kloosha::DEFAULT_BUDGET;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

struct Ctx {
    towers: HashMap<(u64, u32), Arc<Tower>>,
    grid: Vec<GridCurve>,
}

struct GridCurve {
    params: CurveParams,
    sums: Vec<PlaceSums>,
    l: LPolynomial,
}

impl Ctx {
    fn tower(&mut self, p: u64, f: u32) -> Arc<Tower> {
        self.towers.entry((p, f)).or_insert_with(|| Tower::new(&build_field(p, f, None).unwrap())).clone()
    }

    fn params(&mut self, p: u64, f: u32, gamma: u64, a: u32) -> CurveParams {
        CurveParams::new(self.tower(p, f), FieldElem(gamma), a).unwrap()
    }

    /// Every gamma for `q in {3, 5, 7, 9}` with `a <= 6, 3, 2, 2`.
    fn grid(&mut self) -> std::result::Result<&[GridCurve], String> {
        if self.grid.is_empty() {
            for (p, f, a_max) in [(3u64, 1u32, 6u32), (5, 1, 3), (7, 1, 2), (3, 2, 2)] {
                let q = p.pow(f);
                for a in 1..=a_max {
                    for g in 1..q {
                        let params = self.params(p, f, g, a);
                        let sums = params.place_sums(DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                        let l = expand_place_factors(q, p as u32, &sums).map_err(|e| e.to_string())?;
                        self.grid.push(GridCurve { params, sums, l });
                    }
                }
            }
        }
        Ok(&self.grid)
    }
}

fn label(p: &CurveParams) -> String {
    format!("(q={}, gamma={}, a={})", p.q(), p.gamma_label(), p.a)
}

fn oracle_full(ctx: &mut Ctx) -> Check {
    let start = Instant::now();
    let anchors = [big(&[1, 0, -15, 0, 81]), big(&[1, 0, -6, 0, 81])];
    for (g, anchor) in [1u64, 2].into_iter().zip(anchors) {
        let params = ctx.params(3, 1, g, 1);
        let closed = closed_form_lpolynomial(&params, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let oracle = oracle_log_coeffs(&params, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let rebuilt = coeffs_from_power_sums(&oracle).map_err(|e| e.to_string())?;
        ensure(rebuilt == closed.coeffs, || format!("gamma={g}: oracle {rebuilt:?} vs closed {:?}", closed.coeffs))?;
        ensure(closed.coeffs == anchor, || format!("gamma={g}: {:?} differs from the anchor", closed.coeffs))?;
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t < 1.0, || format!("took {t:.2}s"))?;
    Ok(format!("both degree-4 polynomials rebuilt exactly in {t:.3}s"))
}

fn oracle_prefix(ctx: &mut Ctx) -> Check {
    let mut slowest = 0f64;
    let mut count = 0;
    for (p, f, a, expect_n, complete) in
        [(3u64, 1u32, 2u32, 9usize, true), (3, 1, 3, 9, false), (5, 1, 1, 6, true), (3, 2, 1, 4, false)]
    {
        let q = p.pow(f);
        let n = default_n_max(q, DEFAULT_BUDGET);
        ensure(n == expect_n, || format!("q={q}: default n_max {n}, expected {expect_n}"))?;
        for g in 1..q {
            let start = Instant::now();
            let params = ctx.params(p, f, g, a);
            let l = closed_form_lpolynomial(&params, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let oracle = oracle_log_coeffs(&params, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let closed = log_coeffs_of(&l, n);
            ensure(closed == oracle, || format!("{}: power sums differ", label(&params)))?;
            if complete {
                let partial = coeffs_from_power_sums(&oracle).map_err(|e| e.to_string())?;
                let (full, _) =
                    complete_by_functional_equation(&partial, params.b(), q).map_err(|e| format!("{}: {e}", label(&params)))?;
                ensure(full == l, || format!("{}: completed polynomial differs", label(&params)))?;
            }
            slowest = slowest.max(start.elapsed().as_secs_f64());
            count += 1;
        }
    }
    ensure(slowest < 300.0, || format!("slowest curve took {slowest:.1}s"))?;
    Ok(format!("{count} curves, slowest {slowest:.1}s"))
}

fn degree_structure(ctx: &mut Ctx) -> Check {
    let grid = ctx.grid()?;
    let mut signs: HashMap<i8, usize> = HashMap::new();
    for c in grid {
        let b = c.params.b();
        ensure(c.l.degree() == b && c.l.coeffs.len() == b + 1, || format!("{}: degree {}", label(&c.params), c.l.degree()))?;
        ensure(c.l.coeffs[0].is_one(), || format!("{}: constant term {}", label(&c.params), c.l.coeffs[0]))?;
        let s = functional_equation_sign(&c.l).map_err(|e| format!("{}: {e}", label(&c.params)))?;
        *signs.entry(s).or_default() += 1;
    }
    Ok(format!("{} curves, signs {:?}", grid.len(), signs))
}

fn riemann_hypothesis(ctx: &mut Ctx) -> Check {
    let grid = ctx.grid()?;
    let mut worst = 0f64;
    let mut count = 0;
    for c in grid.iter().filter(|c| c.params.b() <= 500) {
        let r = rh_check(&c.l).map_err(|e| format!("{}: {e}", label(&c.params)))?;
        ensure(r.max_deviation <= 1e-9, || format!("{}: deviation {:e}", label(&c.params), r.max_deviation))?;
        worst = worst.max(r.max_deviation);
        count += 1;
    }
    Ok(format!("{count} curves with b <= 500, worst deviation {worst:.2e}"))
}

fn slopes(ctx: &mut Ctx) -> Check {
    let grid = ctx.grid()?;
    for c in grid {
        let np = newton_polygon(&c.l, c.params.p(), c.params.field().degree() as u32);
        let h = c.params.b() / 2;
        let expected = vec![(Ratio::new(1, 2), h), (Ratio::new(3, 2), h)];
        ensure(np.slopes == expected, || format!("{}: slopes {:?}", label(&c.params), np.slopes))?;
    }
    Ok(format!("{} curves", grid.len()))
}

fn check_sha(params: &CurveParams, r: &ShaReport) -> std::result::Result<(), String> {
    let l = label(params);
    ensure(r.sha_order.is_positive(), || format!("{l}: Sha {}", r.sha_order))?;
    ensure(r.is_perfect_square, || format!("{l}: Sha {} is not a square", r.sha_order))?;
    ensure(r.gcd_with_p.is_one(), || format!("{l}: gcd with p is {}", r.gcd_with_p))?;
    ensure(r.ordp_central == expected_ordp(params), || format!("{l}: ord_p {}", r.ordp_central))
}

fn bsd_suite(ctx: &mut Ctx) -> Check {
    let grid = ctx.grid()?;
    for c in grid {
        let r = sha_order_from_sums(&c.params, &c.sums).map_err(|e| format!("{}: {e}", label(&c.params)))?;
        check_sha(&c.params, &r)?;
        ensure(c.l.eval_at_inverse_q() == r.central_value, || format!("{}: L(1/q) routes differ", label(&c.params)))?;
        if c.params.q() == 3 && c.params.a == 1 {
            let want = BigInt::from(if c.params.gamma.0 == 1 { 1 } else { 4 });
            ensure(r.sha_order == want, || format!("{}: Sha {}", label(&c.params), r.sha_order))?;
        }
    }
    Ok(format!("{} curves; |Sha| = 1 and 4 at q = 3, a = 1", grid.len()))
}

fn brauer_siegel(ctx: &mut Ctx) -> Check {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for g in [1u64, 2] {
        let mut ratios = Vec::new();
        for a in 1..=8 {
            let params = ctx.params(3, 1, g, a);
            let sums = params.place_sums(DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let r = sha_order_from_sums(&params, &sums).map_err(|e| format!("{}: {e}", label(&params)))?;
            check_sha(&params, &r)?;
            ensure(r.brauer_siegel.decomposition_error <= 1e-9, || {
                format!("{}: decomposition off by {:e}", label(&params), r.brauer_siegel.decomposition_error)
            })?;
            ratios.push(r.brauer_siegel.ratio);
        }
        let envelope = (ratios[1] - 1.0).abs();
        for (i, &x) in ratios.iter().enumerate().skip(3) {
            if (x - 1.0).abs() > envelope {
                failures.push(format!("gamma={g}, a={}: |{x:.4} - 1| > {envelope:.4}", i + 1));
            }
        }
        out.push(format!("gamma={g}: [{}]", ratios.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")));
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t <= 600.0, || format!("took {t:.0}s"))?;
    if !failures.is_empty() {
        return Err(format!("{}; ratios {}", failures.join("; "), out.join(" ")));
    }
    Ok(out.join(" "))
}

fn distribution(ctx: &mut Ctx) -> Check {
    let mut out = Vec::new();
    for g in [1u64, 2] {
        let mut reports: HashMap<u32, DistributionReport> = HashMap::new();
        for a in 1..=8 {
            let params = ctx.params(3, 1, g, a);
            let sums = params.place_sums(DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let sample = angle_sample_from_sums(&params, &sums, 1).map_err(|e| e.to_string())?;
            let d = distribution_report(&sample, 3).map_err(|e| format!("{}: {e}", label(&params)))?;
            let floor = 3f64.powi(-14 * a as i32);
            ensure((d.epsilon_a - epsilon_a(3, 3, a)).abs() == 0.0 && d.epsilon_a <= floor * (1.0 + 1e-12), || {
                format!("a={a}: epsilon {:e}", d.epsilon_a)
            })?;
            let m = &d.margins;
            ensure(m.to_zero >= floor && m.to_half_pi >= floor && m.to_pi >= floor, || format!("{}: margins {m:?}", label(&params)))?;
            reports.insert(a, d);
        }
        let (r3, r8) = (&reports[&3], &reports[&8]);
        ensure(r8.ks_distance < r3.ks_distance, || format!("gamma={g}: KS {} at a=8 vs {} at a=3", r8.ks_distance, r3.ks_distance))?;
        ensure(r8.w_error < r3.w_error, || format!("gamma={g}: W error {} at a=8 vs {} at a=3", r8.w_error, r3.w_error))?;
        let m2 = r8.moments[&2];
        ensure((m2 + 0.5).abs() <= 0.1, || format!("gamma={g}: second moment {m2}"))?;
        out.push(format!("gamma={g}: KS {:.3}->{:.3}, W err {:.3}->{:.3}, m2 {m2:.3}", r3.ks_distance, r8.ks_distance, r3.w_error, r8.w_error));
    }
    Ok(out.join("; "))
}

fn identities(ctx: &mut Ctx) -> Check {
    let mut salie = 0;
    for (p, f) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let tower = ctx.tower(p, f);
        let q = tower.q();
        for a in 1..=3 {
            let places = places_p(&tower, a).map_err(|e| e.to_string())?;
            for v in places.places.iter().filter(|v| v.degree == a) {
                for g in 1..q {
                    ensure(salie_check(v, FieldElem(g), DEFAULT_BUDGET).map_err(|e| e.to_string())?, || {
                        format!("Salie fails at q={q}, {}, gamma={g}", v.display())
                    })?;
                    salie += 1;
                }
            }
        }
    }
    let tower = ctx.tower(3, 1);
    let mut lifts = 0;
    for d in 1..=8u32 {
        let places = places_p(&tower, d).map_err(|e| e.to_string())?;
        for v in places.places.iter().filter(|v| v.degree == d) {
            let g = gauss_sum(v, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            for m in 1..=8 / d {
                let lifted = lifted_gauss_sum(&tower, v, m, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let mut pow = kloosha::cyclotomic::CycInt::one(3);
                for _ in 0..m {
                    pow = &pow * &g.value;
                }
                ensure(lifted == pow, || format!("Gauss lift fails at {} with m={m}", v.display()))?;
                for gamma in 1..3 {
                    let kv = kloosterman_sum(v, FieldElem(gamma), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    let lk = lifted_kloosterman_sum(&tower, v, FieldElem(gamma), m, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    ensure(lk == kloosterman_power_sum(&kv, m), || format!("Kloosterman lift fails at {} with m={m}", v.display()))?;
                }
                lifts += 1;
            }
            if d >= 5 {
                break;
            }
        }
    }
    let mut chars = 0;
    for (p, f, a) in [(3u64, 1u32, 2u32), (5, 1, 1), (3, 2, 1)] {
        let q = p.pow(f);
        for g in 1..q {
            let params = ctx.params(p, f, g, a);
            let base = closed_form_lpolynomial(&params, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            for c in 2..q {
                let other = closed_form_with_character(&params, AdditiveCharacter { scale: FieldElem(c) }, DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(other == base, || format!("{}: character {c} changes L", label(&params)))?;
                chars += 1;
            }
        }
    }
    let mut reps = 0;
    for (p, f, a) in [(3u64, 1u32, 4u32), (5, 1, 2), (3, 2, 2)] {
        let tower = ctx.tower(p, f);
        let places = places_p(&tower, a).map_err(|e| e.to_string())?;
        for v in &places.places {
            let field = &v.ext.field;
            let g0 = gauss_sum_raw(field, v.beta);
            let k0 = kloosterman_sum_raw(field, v.beta, v.ext.embed(FieldElem(1)));
            for beta in v.conjugates().into_iter().skip(1) {
                ensure(gauss_sum_raw(field, beta) == g0, || format!("Gauss sum depends on the root of {}", v.display()))?;
                ensure(kloosterman_sum_raw(field, beta, v.ext.embed(FieldElem(1))) == k0, || {
                    format!("Kloosterman sum depends on the root of {}", v.display())
                })?;
                reps += 1;
            }
        }
    }
    for p in [3u64, 5, 7] {
        let tower = ctx.tower(p, 1);
        ensure(isogeny_identity_holds(tower.base(), FieldElem::ONE, true), || format!("2-isogeny identity fails for q={p}"))?;
    }
    Ok(format!("{salie} Salie, {lifts} lifts, {chars} characters, {reps} conjugate roots, isogeny for q=3,5,7"))
}

fn structure(ctx: &mut Ctx) -> Check {
    let grid = ctx.grid()?;
    for c in grid {
        let l = label(&c.params);
        let qa = c.params.qa();
        let places = c.params.places().map_err(|e| e.to_string())?;
        ensure(places.degree_sum() == qa - 1, || format!("{l}: degree sum {}", places.degree_sum()))?;
        let bad = bad_places_report(&c.params).map_err(|e| format!("{l}: {e}"))?;
        ensure(bad.squarefree && bad.finite_places_degree_sum == 2 * qa, || format!("{l}: bad locus {bad:?}"))?;
        let torsion = torsion_structure(&c.params);
        ensure(torsion.len() == 2, || format!("{l}: torsion {torsion:?}"))?;
        let inv = curve_invariants(&c.params);
        ensure(12 * inv.logq_h == 2 * qa + 4 * qa + 6, || format!("{l}: log_q H = {}", inv.logq_h))?;
        ensure(bad.finite_places_degree_sum + bad.infinite_fiber.delta == 12 * inv.logq_h, || {
            format!("{l}: discriminant degrees do not add up")
        })?;
    }
    Ok(format!("{} curves", grid.len()))
}

fn main() -> ExitCode {
    let checks: Vec<(&str, &str, fn(&mut Ctx) -> Check)> = vec![
        ("AC-1", "closed form equals the fully rebuilt oracle polynomial at q=3, a=1", oracle_full),
        ("AC-2", "power sums agree with the oracle up to the default budget", oracle_prefix),
        ("AC-3", "degree, constant term and functional equation across the grid", degree_structure),
        ("AC-4", "all roots of L(T/q) on the unit circle for b <= 500", riemann_hypothesis),
        ("AC-5", "Newton polygon slopes 1/2 and 3/2, half each", slopes),
        ("AC-6", "Sha is a positive square prime to p with the expected valuation", bsd_suite),
        ("AC-7", "Brauer-Siegel ratio envelope and decomposition at q=3, a=1..8", brauer_siegel),
        ("AC-8", "angle distribution approaches Sato-Tate at q=3", distribution),
        ("AC-9", "Salie, lifts, character and root independence, 2-isogeny", identities),
        ("AC-10", "place degrees, bad locus, torsion and height", structure),
    ];
    let mut ctx = Ctx { towers: HashMap::new(), grid: Vec::new() };
    let mut failed = 0;
    for (id, what, f) in checks {
        let start = Instant::now();
        let res = f(&mut ctx);
        let t = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("[PASS] {id} {what}: {detail} ({t:.1}s)"),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {id} {what}: {e} ({t:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
