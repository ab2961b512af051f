//! Runs every property suite on one algebra and collects the outcomes.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::MonomialAlgebra;
use crate::bar::{bar_differential, random_tensor, BarChain};
use crate::cohomology::{bar_complex_dims, coboundary_matrix, hh_center_oracle, Cohomology};
use crate::comparison::Comparison;
use crate::error::Result;
use crate::field::{scalar, Field};
use crate::gerstenhaber::{bracket, check_arrow_spaces, cup, cup_even_fast, delta, delta_action};
use crate::report::Check;
use crate::resolution::BardzellResolution;

/// Algebras up to this dimension are also checked against the full bar complex.
pub const BAR_ORACLE_MAX_DIM: usize = 8;
pub const BAR_ORACLE_MAX_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub sample_budget: usize,
    pub seed: u64,
    /// Bound on the total length of exhaustively enumerated bar tensors.
    pub length_bound: usize,
    pub field: Field,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 5,
            sample_budget: 1000,
            seed: 0,
            length_bound: 10,
            field: Field::Rational,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn outcome(check: &mut Check, what: impl FnOnce() -> String, r: Result<bool>) {
    check.count();
    match r {
        Ok(true) => {}
        Ok(false) => check.fail(what()),
        Err(e) => check.fail(format!("{}: {e}", what())),
    }
}

pub fn structure_checks(res: &BardzellResolution, cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = res.verify_structure();
    out.push(res.verify_complex(cfg.max_degree));
    let alg = res.algebra();
    let mut bb = Check::new("b² = 0 on samples");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x62);
    for _ in 0..cfg.sample_budget {
        let n = rng.gen_range(2..=cfg.max_degree.max(2));
        let t = random_tensor(alg, &mut rng, n, true);
        let once = bar_differential(alg, &BarChain::single(t.clone(), 1));
        bb.count();
        if !bar_differential(alg, &once).is_zero() {
            bb.fail(t.format(alg));
        }
    }
    out.push(bb);
    out
}

pub fn comparison_checks(cmp: &Comparison, cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = vec![cmp.verify_f_chain_map(cfg.max_degree), cmp.verify_gf_identity(cfg.max_degree)];
    out.extend(cmp.verify_f_shape(cfg.max_degree));
    out.extend(cmp.verify_g_chain_map(cfg.max_degree, cfg.length_bound, cfg.sample_budget, &mut rng));
    out
}

pub fn cohomology_checks(alg: &MonomialAlgebra, hh: &Cohomology, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let res = hh.resolution();
    let mut complex = Check::new("d^{n+1} d^n = 0");
    for n in 1..=hh.max_degree() {
        outcome(
            &mut complex,
            || format!("degree {n}"),
            Ok(coboundary_matrix(res, n + 1).compose(&coboundary_matrix(res, n)).is_zero()),
        );
    }
    let mut reps = Check::new("representatives are independent cocycles");
    for n in 0..=hh.max_degree() {
        for (k, f) in hh.representatives(n).iter().enumerate() {
            let label = || Cohomology::generator_label(n, k);
            outcome(&mut reps, label, hh.is_cocycle(f));
            let unit: Vec<_> = (0..hh.dimension(n)).map(|j| scalar((j == k) as i64)).collect();
            outcome(&mut reps, label, hh.class_of(f).map(|c| c == Some(unit)));
        }
    }
    let mut center = Check::new("HH⁰ = center");
    outcome(&mut center, || "dim HH⁰".into(), hh_center_oracle(alg, cfg.field).map(|d| d == hh.dimension(0)));
    let mut out = vec![complex, reps, center];
    if alg.dim() <= BAR_ORACLE_MAX_DIM {
        let mut bar = Check::new("HH dims match the bar complex");
        let top = BAR_ORACLE_MAX_DEGREE.min(hh.max_degree());
        match bar_complex_dims(alg, top, cfg.field) {
            Ok(dims) => {
                for (n, d) in dims.into_iter().enumerate() {
                    outcome(&mut bar, || format!("HH^{n}: bar complex gives {d}"), Ok(d == hh.dimension(n)));
                }
            }
            Err(e) => bar.fail(e.to_string()),
        }
        out.push(bar);
    }
    Ok(out)
}

pub fn gerstenhaber_checks(cmp: &Comparison, hh: &Cohomology, cfg: &VerifyConfig) -> Vec<Check> {
    let max = hh.max_degree();
    let field = cfg.field;
    let reps = |n: usize| hh.representatives(n);
    let label = |n: usize, k: usize| Cohomology::generator_label(n, k);
    let mut closure = Check::new("products of cocycles are cocycles");
    let mut commutative = Check::new("cup graded commutative on classes");
    let mut fast = Check::new("fast even cup = cup");
    for n in 0..=max {
        for m in 0..=max - n {
            for (k, f) in reps(n).iter().enumerate() {
                for (l, g) in reps(m).iter().enumerate() {
                    let what = || format!("{} ∪ {}", label(n, k), label(m, l));
                    let fg = match cup(cmp, f, g) {
                        Ok(c) => c,
                        Err(e) => {
                            closure.fail(format!("{}: {e}", what()));
                            continue;
                        }
                    };
                    outcome(&mut closure, what, hh.is_cocycle(&fg));
                    let sign = scalar(if (n * m) % 2 == 0 { 1 } else { -1 });
                    let diff = cup(cmp, g, f).map(|gf| fg.sub(&gf.scaled(&sign)));
                    outcome(&mut commutative, what, diff.and_then(|d| hh.is_coboundary(&d)));
                    if n >= 2 && m >= 2 && n % 2 == 0 && m % 2 == 0 {
                        outcome(&mut fast, what, cup_even_fast(cmp, f, g).and_then(|c| c.eq_in(&fg, field)));
                    }
                    if n >= 1 && m >= 1 && n + m - 1 <= max {
                        let what = || format!("[{}, {}]", label(n, k), label(m, l));
                        outcome(&mut closure, what, bracket(cmp, f, g).and_then(|b| hh.is_cocycle(&b)));
                    }
                }
            }
        }
    }
    let mut out = vec![closure, commutative, fast];
    if check_arrow_spaces(cmp.algebra()).is_ok() {
        let mut action = Check::new("HH¹ action = bracket with δ_α");
        for alpha in 0..cmp.algebra().quiver().num_arrows() {
            let d = delta(cmp, alpha);
            for n in 1..=max {
                for (k, f) in reps(n).iter().enumerate() {
                    let what = || format!("α = {}, {}", cmp.algebra().quiver().arrow(alpha).label, label(n, k));
                    let r = delta_action(cmp, alpha, f)
                        .and_then(|a| bracket(cmp, &d, f).and_then(|b| a.eq_in(&b, field)));
                    outcome(&mut action, what, r);
                }
            }
        }
        out.push(action);
    }
    out
}

/// All suites, for degrees up to `cfg.max_degree`.
pub fn verify_algebra(alg: Arc<MonomialAlgebra>, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let res = Arc::new(BardzellResolution::new(alg.clone(), cfg.max_degree + 1));
    let cmp = Comparison::new(res.clone());
    let hh = Cohomology::compute(res.clone(), cfg.field, cfg.max_degree)?;
    let mut checks = structure_checks(&res, cfg);
    checks.extend(comparison_checks(&cmp, cfg));
    checks.extend(cohomology_checks(&alg, &hh, cfg)?);
    checks.extend(gerstenhaber_checks(&cmp, &hh, cfg));
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema: 1,
        config: cfg.clone(),
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CORPUS;

    #[test]
    fn corpus_passes_everything() {
        let cfg = VerifyConfig {
            max_degree: 4,
            sample_budget: 50,
            length_bound: 6,
            ..VerifyConfig::default()
        };
        for e in CORPUS {
            let r = verify_algebra(Arc::new(e.algebra().unwrap()), &cfg).unwrap();
            for c in &r.checks {
                assert!(c.passed, "{}: {} {:?}", e.name, c.name, c.counterexample);
            }
        }
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = VerifyConfig { max_degree: 3, sample_budget: 30, ..VerifyConfig::default() };
        let alg = Arc::new(CORPUS[1].algebra().unwrap());
        let a = serde_json::to_string(&verify_algebra(alg.clone(), &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_algebra(alg, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
