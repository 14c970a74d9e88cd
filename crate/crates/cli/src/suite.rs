//! The acceptance battery behind `--paper-suite`.

use std::time::{Duration, Instant};

use forelli_core::algebra::rational::rational;
use forelli_core::algebra::{GaussianRational, MixedPolynomial, MultiIndex};
use forelli_core::field::{compute_a, resonance_relations, AStatus, NormalFormField};
use forelli_core::flow::{
    compose, flow_residual, numeric_flow, straight_path, symbolic_flow, Direction, DEFAULT_STEP,
};
use forelli_core::formal::oracle::DenseKernel;
use forelli_core::formal::{apply_conjugate, solve_kernel};
use forelli_core::gallery::{
    chain_rule_cascade_check, verify, wirtinger_residual, CounterexampleSpec, SampledFunction,
    Verdict, VerifyConfig,
};
use forelli_core::algebra::TruncatedSeries;
use forelli_core::region::{
    boundary_bound_report, find_star_component, membership, BBox, ComplexPoly, RegionSpec,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Result of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    /// Checks held and the run finished inside its budget.
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {} ({}; {:.2}s of {}s)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn timed<F>(id: u8, name: &'static str, budget_secs: u64, check: F) -> Outcome
where
    F: FnOnce() -> Result<String, String>,
{
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let (ok, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, name, passed: ok && elapsed < budget, detail, elapsed, budget }
}

/// Runs all seven criteria with the given seed.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    let fields = random_fields(seed, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    vec![
        timed(1, "truncated kernel is holomorphic", 60, || truncation_check(&fields)),
        timed(2, "resonant kernel for negative ratios", 10, resonant_kernel_check),
        timed(3, "flow cross-validation", 10, flow_check),
        timed(4, "holomorphy transport", 30, || transport_check(&fields[..10], &mut rng)),
        timed(5, "counterexample battery", 30, gallery_check),
        timed(6, "region analysis", 20, region_check),
        timed(7, "chain-rule cascade", 10, || cascade_check(&mut rng)),
    ]
}

/// Pass/fail summary without timings, so it is reproducible byte for byte.
pub fn summary(seed: u64, outcomes: &[Outcome]) -> Value {
    json!({
        "seed": seed,
        "passed": outcomes.iter().all(|o| o.passed),
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed,
            "detail": o.detail,
            "budget_seconds": o.budget.as_secs(),
        })).collect::<Vec<_>>(),
    })
}

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_int(re, im)
}

/// `λ = (1, 2)`, `g₂ = z₁²`.
pub fn planar_field() -> NormalFormField {
    NormalFormField::planar_resonant(gr(1, 0), 2, gr(1, 0)).expect("valid planar field")
}

const COEFFS: [(i64, i64); 12] =
    [(1, 0), (-1, 0), (2, 0), (-2, 0), (0, 1), (0, -1), (0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)];

/// A valid aligned normal form with `n ≤ 3`, eigenvalues `p/q` with
/// `1 ≤ p, q ≤ 5`, and resonant `g` with coefficients of modulus at most 2.
/// Eigenvalues are often chosen as sums of earlier ones so that resonances
/// actually occur.
pub fn random_aligned_field<R: Rng>(rng: &mut R) -> NormalFormField {
    let n = rng.gen_range(1..=3);
    let small = |r: &forelli_core::algebra::Rational| {
        r.numer().magnitude() <= &5u32.into() && r.denom().magnitude() <= &5u32.into()
    };
    let mut values: Vec<forelli_core::algebra::Rational> = Vec::with_capacity(n);
    while values.len() < n {
        let resonant = !values.is_empty() && rng.gen_bool(0.6);
        let candidate = if resonant {
            let k = rng.gen_range(0..values.len());
            let l = rng.gen_range(0..values.len());
            let m = rng.gen_range(1..=2);
            &values[k] * rational(m, 1) + &values[l]
        } else {
            rational(rng.gen_range(1..=5), rng.gen_range(1..=5))
        };
        if small(&candidate) {
            values.push(candidate);
        }
    }
    values.sort();
    let lambda: Vec<GaussianRational> = values.into_iter().map(GaussianRational::real).collect();
    let mut g = vec![MixedPolynomial::zero(n); n];
    for j in 1..n {
        for rel in resonance_relations(&lambda, j).expect("positive eigenvalues") {
            if rng.gen_bool(0.6) {
                let (re, im) = COEFFS[rng.gen_range(0..COEFFS.len())];
                let term = MixedPolynomial::monomial(rel.m.clone(), MultiIndex::zeros(n), gr(re, im))
                    .expect("matching lengths");
                g[j] = &g[j] + &term;
            }
        }
    }
    NormalFormField::new(lambda, g).expect("well-formed field")
}

pub fn random_fields(seed: u64, count: usize) -> Vec<NormalFormField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_aligned_field(&mut rng)).collect()
}

fn truncation_check(random: &[NormalFormField]) -> Result<String, String> {
    const CAP: u32 = 5;
    let mut max_dim = 0;
    let mut with_g = 0;
    for (i, field) in std::iter::once(&planar_field()).chain(random).enumerate() {
        let kernel = solve_kernel(field, CAP).map_err(|e| format!("field {i}: {e}"))?;
        if !kernel.holomorphic_only {
            return Err(format!("field {i}: kernel has a non-holomorphic element"));
        }
        let dense = DenseKernel::build(field, CAP).map_err(|e| format!("field {i}: {e}"))?;
        let basis: Vec<_> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
        let cmp = dense.compare(&basis);
        if !cmp.spans_agree() {
            return Err(format!("field {i}: oracle disagrees {cmp:?}"));
        }
        max_dim = max_dim.max(kernel.len());
        with_g += usize::from(field.g().iter().any(|p| !p.is_zero()));
    }
    Ok(format!(
        "{} fields at cap {CAP}, {with_g} with resonant terms, largest kernel {max_dim}, all match the dense nullspace",
        random.len() + 1
    ))
}

fn resonant_kernel_check() -> Result<String, String> {
    let mut caps = Vec::new();
    for (q, p) in [(1i64, 1i64), (1, 2), (2, 3)] {
        let lambda = vec![gr(1, 0), GaussianRational::real(-rational(q, p))];
        let field = NormalFormField::diagonal(lambda.clone()).map_err(|e| e.to_string())?;
        let cap = 2 * (q + p) as u32;
        let m = MultiIndex::new(vec![q as u32, p as u32]);
        let element = MixedPolynomial::monomial(m.clone(), m.clone(), gr(1, 0)).expect("n = 2");
        let series = TruncatedSeries::new(element.clone(), cap).value;
        let image = apply_conjugate(&field, &series).map_err(|e| e.to_string())?;
        if !image.value.is_zero() {
            return Err(format!("t = {q}/{p}: conjugate field does not annihilate |z|^2q |w|^2p"));
        }
        let kernel = solve_kernel(&field, cap).map_err(|e| e.to_string())?;
        let dense = DenseKernel::build(&field, cap).map_err(|e| e.to_string())?;
        let mut basis: Vec<_> = kernel.basis.iter().map(|s| s.poly().clone()).collect();
        let rank = dense.rank_of(&basis);
        basis.push(element);
        if rank.is_none() || dense.rank_of(&basis) != rank {
            return Err(format!("t = {q}/{p}: element missing from the solver's kernel"));
        }
        if kernel.holomorphic_only {
            return Err(format!("t = {q}/{p}: kernel reported holomorphic"));
        }
        match compute_a(&lambda, 12) {
            AStatus::NonEmpty(w) if w == m => {}
            other => return Err(format!("t = {q}/{p}: A(lambda) gave {other:?}")),
        }
        caps.push(format!("{q}/{p}@{cap}"));
    }
    Ok(format!("t in {{{}}}: |z|^2q |w|^2p in kernel, A witness (q,p)", caps.join(", ")))
}

/// Sup over the criterion grid of `|symbolic − RK4|` for both fields at the
/// given step length. Fails if either residual is nonzero.
pub fn flow_discrepancy(step: f64) -> Result<f64, String> {
    let etas = [
        [Complex64::new(0.4, 0.0), Complex64::new(0.1, 0.0)],
        [Complex64::new(0.5, 0.0), Complex64::new(-0.3, 0.2)],
        [Complex64::new(-0.2, 0.4), Complex64::new(0.1, -0.3)],
    ];
    let mut sup = 0.0f64;
    for (name, field) in [("euler", NormalFormField::euler(2).expect("n = 2")), ("planar", planar_field())] {
        let curve = symbolic_flow(&field, Direction::Forward).map_err(|e| e.to_string())?;
        if !flow_residual(&curve).iter().all(|r| r.is_zero()) {
            return Err(format!("{name}: nonzero residual"));
        }
        for eta in &etas {
            for a in 0..9 {
                for b in 0..9 {
                    let zeta = Complex64::new(-1.0 + 0.25 * a as f64, -1.0 + 0.25 * b as f64);
                    let num = numeric_flow(&field, eta, &straight_path(zeta, step))
                        .map_err(|e| e.to_string())?;
                    for (x, y) in num.iter().zip(curve.evaluate(eta, zeta)) {
                        sup = sup.max((x - y).norm());
                    }
                }
            }
        }
    }
    Ok(sup)
}

fn flow_check() -> Result<String, String> {
    let sup = flow_discrepancy(DEFAULT_STEP)?;
    if sup <= 1e-8 {
        Ok(format!("residuals exactly zero, sup |symbolic - RK4| = {sup:.3e} over 9x9 grid"))
    } else {
        let half = flow_discrepancy(DEFAULT_STEP / 2.0)?;
        Err(format!(
            "residuals exactly zero, but sup |symbolic - RK4| = {sup:.3e} exceeds 1e-8 at step {DEFAULT_STEP}; \
             step {} gives {half:.3e} (ratio {:.1}, RK4 truncation)",
            DEFAULT_STEP / 2.0,
            sup / half
        ))
    }
}

fn transport_check<R: Rng>(fields: &[NormalFormField], rng: &mut R) -> Result<String, String> {
    let mut checked = 0;
    for (i, field) in fields.iter().enumerate() {
        let n = field.n();
        let kernel = solve_kernel(field, 5).map_err(|e| format!("field {i}: {e}"))?;
        let curve = symbolic_flow(field, Direction::Forward).map_err(|e| format!("field {i}: {e}"))?;
        for _ in 0..10 {
            let mut f = MixedPolynomial::zero(n);
            while f.is_zero() {
                for s in &kernel.basis {
                    let c = rng.gen_range(-2..=2);
                    f = &f + &s.poly().scale(&gr(c, 0));
                }
            }
            let g = compose(&curve, &f).map_err(|e| format!("field {i}: {e}"))?;
            if !g.is_holomorphic_in_zeta() {
                return Err(format!("field {i}: composed kernel element depends on conj(zeta)"));
            }
            checked += 1;
        }
        let control = &MixedPolynomial::holo_var(n, 0) * &MixedPolynomial::anti_var(n, 0);
        let g = compose(&curve, &control).map_err(|e| format!("field {i}: {e}"))?;
        if g.is_holomorphic_in_zeta() {
            return Err(format!("field {i}: control |z_0|^2 was not flagged"));
        }
    }
    Ok(format!("{checked} kernel elements on {} fields free of conj(zeta); |z_0|^2 control flagged", fields.len()))
}

fn gallery_check() -> Result<String, String> {
    let config = VerifyConfig::default();
    let mut parts = Vec::new();
    for spec in [
        CounterexampleSpec::FiniteSmooth { k: 1 },
        CounterexampleSpec::negative_ratio(1.0),
        CounterexampleSpec::nonreal_ratio(1.0, 1.0, 1.0),
    ] {
        let r = verify(&spec, &config).map_err(|e| e.to_string())?;
        if r.verdict != Verdict::LeafwiseHolomorphicNotGlobal {
            return Err(format!("{}: verdict {:?}", r.label, r.verdict));
        }
        if let CounterexampleSpec::FiniteSmooth { .. } = spec {
            let d = r.witnesses[0].dbar.as_ref().ok_or("finite-smooth witness failed")?;
            if (d[1].norm() - 0.25).abs() > 1e-3 {
                return Err(format!("finite-smooth witness {:.6} is not 0.25", d[1].norm()));
            }
        }
        let best = r.best_witness.map_or(0.0, |i| r.witnesses[i].max_abs);
        parts.push(format!(
            "{}: leafwise {:.1e} over {}, witness {:.3}",
            r.label, r.leafwise.max_residual, r.leafwise.evaluated, best
        ));
    }
    Ok(parts.join("; "))
}

fn region_check() -> Result<String, String> {
    let err = |e: forelli_core::region::RegionError| e.to_string();
    let one = Complex64::new(1.0, 0.0);
    let bbox = BBox::new(-2.0, 6.0, -3.0, 3.0).map_err(err)?;
    let half = RegionSpec::new(vec![ComplexPoly::constant(one)], vec![1.0]).map_err(err)?;
    let map = find_star_component(&half, bbox, 0.02).map_err(err)?;
    if map.component_count() != 1 {
        return Err(format!("half-plane has {} components", map.component_count()));
    }
    for row in 0..map.rows() {
        let off = (0..map.cols())
            .filter(|&c| (map.label(c, row) == map.star_id()) != (map.cell_center(c, row).re > 0.0))
            .count();
        if off > 1 {
            return Err(format!("half-plane row {row} differs in {off} cells"));
        }
    }

    let ident = RegionSpec::new(vec![ComplexPoly::linear(Complex64::new(0.0, 0.0))], vec![1.0]).map_err(err)?;
    let map = find_star_component(&ident, bbox, 0.02).map_err(err)?;
    if map.component_count() != 1 || map.label_at(Complex64::new(0.0, 0.0)) != Some(map.star_id()) {
        return Err("P = zeta: origin not in the single component".into());
    }
    let row = map.axis_row();
    let ray_ok = (0..map.cols())
        .filter(|&c| map.cell_center(c, row).re >= 2.0)
        .all(|c| map.label(c, row) == map.star_id())
        && (0..=10_000).all(|k| membership(&ident, Complex64::new(2.0 + 0.01 * k as f64, 0.0)))
        && ident.certified_ray() <= 102.0;
    if !ray_ok {
        return Err("P = zeta: the ray [2, inf) leaves the component".into());
    }

    let report = boundary_bound_report(&half, |_| one, 5, bbox, 0.02).map_err(err)?;
    if report.violation() {
        return Err("f = 1 violates the M C^l bound".into());
    }
    Ok(format!(
        "half-plane 1 component (cell-exact), P = zeta 1 component with 0 and [2, inf), f = 1 bound holds for l <= 5 (C = {:.4})",
        report.c_constant
    ))
}

fn cascade_check<R: Rng>(rng: &mut R) -> Result<String, String> {
    const H: f64 = 1e-4;
    let field = planar_field();
    let n = field.n();
    let zbar2 = MixedPolynomial::anti_var(n, 1);
    let f = SampledFunction::new(n, "conj(z_2)", move |z| Ok(zbar2.eval_at(z)));
    let lambda2 = field.lambda()[1].to_complex64();
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let mut c = |r: f64| Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        let eta = [c(0.35), c(0.35)];
        let zeta = c(0.5);
        let report = chain_rule_cascade_check(&f, &field, &eta, zeta, H).map_err(|e| e.to_string())?;
        let dz = wirtinger_residual(&f, &report.point, H).map_err(|e| e.to_string())?;
        let rhs = dz[1] * (-(lambda2 * zeta)).conj().exp();
        worst = worst.max((report.entries[1].lhs - rhs).norm());
    }
    if worst <= 1e-5 {
        Ok(format!("max |dG/d conj(eta_2) - dF/d conj(z_2) e^(-conj(lambda_2 zeta))| = {worst:.2e} over 25 points"))
    } else {
        Err(format!("identity error {worst:.2e} exceeds 1e-5"))
    }
}
