//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hochcomp::cochain::Cochain;
use hochcomp::cohomology::{bar_complex_dims, coboundary_matrix, hh_center_oracle, Cohomology};
use hochcomp::comparison::Comparison;
use hochcomp::corpus::{cyclic_text, CorpusEntry, CORPUS};
use hochcomp::field::scalar;
use hochcomp::gerstenhaber::{bracket, check_arrow_spaces, cup, cup_even_fast, delta, delta_action};
use hochcomp::report::Check;
use hochcomp::verify::{structure_checks, VerifyConfig};
use hochcomp::{algebra_from_text, BardzellResolution, Field, MonomialAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Suite = fn() -> Vec<Check>;

struct Outcome {
    checks: Vec<Check>,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn resolution(alg: MonomialAlgebra, n: usize) -> Arc<BardzellResolution> {
    Arc::new(BardzellResolution::new(Arc::new(alg), n))
}

fn entry_resolution(e: &CorpusEntry, n: usize) -> Arc<BardzellResolution> {
    resolution(e.algebra().expect("corpus algebra"), n)
}

/// `f_n`: the arrow `a1` on the `AP_n` element whose support starts with it.
fn cyclic_generator(cmp: &Comparison, n: usize) -> Cochain {
    let alg = cmp.algebra();
    let res = cmp.resolution();
    let a1 = alg.quiver().arrow_id("a1").unwrap();
    let i = (0..res.ap(n).len())
        .find(|&i| res.element(n, i).support.arrows().first() == Some(&a1))
        .unwrap();
    let mut f = Cochain::zero(n);
    f.set(i, alg.basis_element(alg.arrow(a1)));
    f
}

fn criterion_1() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 2..=4 {
        let start = Instant::now();
        let mut c = Check::new(&format!("cyclic r={r}"));
        let res = resolution(algebra_from_text(&cyclic_text(r)).unwrap(), 9);
        let hh = Cohomology::compute(res.clone(), Field::Rational, 8).unwrap();
        c.count();
        if hh.dimension(0) != 2 {
            c.fail(format!("dim HH^0 = {}", hh.dimension(0)));
        }
        for n in 1..=8 {
            c.count();
            if hh.dimension(n) != 1 {
                c.fail(format!("dim HH^{n} = {}", hh.dimension(n)));
            }
        }
        c.count();
        if hh.degree(1).rank_in != 2 * r - 2 {
            c.fail(format!("rank d^1 = {}", hh.degree(1).rank_in));
        }
        for n in 2..=8 {
            c.count();
            if !coboundary_matrix(&res, n).is_zero() {
                c.fail(format!("d^{n} is not zero"));
            }
        }
        let t = start.elapsed();
        if t > Duration::from_secs(5) {
            c.fail(format!("took {t:?}"));
        }
        out.push(c);
    }
    out
}

fn criterion_2() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 2..=4 {
        let mut c = Check::new(&format!("cyclic r={r} bracket and cup table"));
        let res = resolution(algebra_from_text(&cyclic_text(r)).unwrap(), 10);
        let cmp = Comparison::new(res);
        for n in 1..=5usize {
            for m in 1..=5usize {
                let (f, g) = (cyclic_generator(&cmp, n), cyclic_generator(&cmp, m));
                let k = match (n % 2, m % 2) {
                    (1, 1) => n as i64 - m as i64,
                    (0, 1) => n as i64 - 1,
                    (1, 0) => 1 - m as i64,
                    _ => 0,
                };
                let expected = cyclic_generator(&cmp, n + m - 1).scaled(&scalar(k));
                c.count();
                match bracket(&cmp, &f, &g) {
                    Ok(b) if b == expected => {}
                    Ok(b) => c.fail(format!("[f{n}, f{m}] = {}", b.format(cmp.resolution()))),
                    Err(e) => c.fail(format!("[f{n}, f{m}]: {e}")),
                }
                c.count();
                match cup(&cmp, &f, &g) {
                    Ok(p) if p.is_zero() => {}
                    Ok(p) => c.fail(format!("f{n} ∪ f{m} = {}", p.format(cmp.resolution()))),
                    Err(e) => c.fail(format!("f{n} ∪ f{m}: {e}")),
                }
            }
        }
        out.push(c);
    }
    out
}

fn criterion_3() -> Vec<Check> {
    let mut out = Vec::new();
    for e in CORPUS {
        let cmp = Comparison::new(entry_resolution(e, 6));
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut checks = vec![cmp.verify_f_chain_map(6), cmp.verify_gf_identity(6)];
        checks.extend(cmp.verify_g_chain_map(6, 10, 1000, &mut rng));
        for mut c in checks {
            c.name = format!("{}: {}", e.name, c.name);
            out.push(c);
        }
    }
    out
}

fn criterion_4() -> Vec<Check> {
    let mut out = Vec::new();
    for e in CORPUS {
        let alg = e.algebra().unwrap();
        if alg.dim() > 8 {
            continue;
        }
        let mut c = Check::new(&format!("{} (dim {})", e.name, alg.dim()));
        let hh = Cohomology::compute(entry_resolution(e, 4), Field::Rational, 3).unwrap();
        let bar = bar_complex_dims(&alg, 3, Field::Rational).unwrap();
        for (n, d) in bar.iter().enumerate() {
            c.count();
            if *d != hh.dimension(n) {
                c.fail(format!("HH^{n}: minimal {} vs bar {d}", hh.dimension(n)));
            }
        }
        out.push(c);
    }
    out
}

fn criterion_5() -> Vec<Check> {
    let mut out = Vec::new();
    for e in CORPUS {
        let res = entry_resolution(e, 7);
        let cmp = Comparison::new(res.clone());
        let hh = Cohomology::compute(res, Field::Rational, 6).unwrap();
        let mut c = Check::new(e.name);
        for (n, m) in [(2, 2), (2, 4), (4, 2)] {
            for f in hh.representatives(n) {
                for g in hh.representatives(m) {
                    c.count();
                    match (cup_even_fast(&cmp, f, g), cup(&cmp, f, g)) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => c.fail(format!("degrees ({n}, {m})")),
                    }
                }
            }
        }
        out.push(c);
    }
    out
}

fn criterion_6() -> Vec<Check> {
    let mut out = Vec::new();
    for e in CORPUS {
        let res = entry_resolution(e, 6);
        if check_arrow_spaces(res.algebra()).is_err() {
            continue;
        }
        let cmp = Comparison::new(res.clone());
        let hh = Cohomology::compute(res, Field::Rational, 5).unwrap();
        let mut c = Check::new(e.name);
        for alpha in 0..cmp.algebra().quiver().num_arrows() {
            let d = delta(&cmp, alpha);
            for n in 1..=5 {
                for (k, f) in hh.representatives(n).iter().enumerate() {
                    c.count();
                    match (delta_action(&cmp, alpha, f), bracket(&cmp, &d, f)) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => c.fail(format!("arrow {alpha}, {}", Cohomology::generator_label(n, k))),
                    }
                }
            }
        }
        out.push(c);
    }
    out
}

fn criterion_7() -> Vec<Check> {
    let mut out = Vec::new();
    let cfg = VerifyConfig {
        max_degree: 8,
        sample_budget: 1000,
        seed: 11,
        ..VerifyConfig::default()
    };
    for e in CORPUS {
        let res = entry_resolution(e, 8);
        let mut checks = structure_checks(&res, &cfg);
        let hh = Cohomology::compute(res.clone(), Field::Rational, 0).unwrap();
        let mut center = Check::new("HH⁰ = center");
        center.count();
        let z = hh_center_oracle(res.algebra(), Field::Rational).unwrap();
        if z != hh.dimension(0) {
            center.fail(format!("center {z} vs HH^0 {}", hh.dimension(0)));
        }
        checks.push(center);
        for mut c in checks {
            c.name = format!("{}: {}", e.name, c.name);
            out.push(c);
        }
    }
    out
}

fn run(limit: Option<u64>, suite: Suite) -> Outcome {
    let start = Instant::now();
    let checks = suite();
    Outcome {
        checks,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, Suite); 7] = [
        ("cyclic quiver cohomology dimensions, rank d^1, d^n = 0", Some(15), criterion_1),
        ("cyclic bracket and cup table, n, m <= 5", None, criterion_2),
        ("comparison morphisms F, G chain maps and G∘F = Id", Some(60), criterion_3),
        ("minimal complex agrees with the bar complex, dim A <= 8, n <= 3", Some(120), criterion_4),
        ("fast even cup equals cup, total degree <= 6", None, criterion_5),
        ("HH¹ action equals bracket with δ_α, n <= 5", None, criterion_6),
        ("structural invariants", None, criterion_7),
    ];
    let mut all = true;
    for (k, (title, limit, suite)) in criteria.into_iter().enumerate() {
        let o = run(limit, suite);
        let checked: usize = o.checks.iter().map(|c| c.checked).sum();
        let failure = o.checks.iter().find(|c| !c.passed);
        let slow = o.limit.is_some_and(|l| o.elapsed > l);
        let passed = failure.is_none() && !slow;
        all &= passed;
        let mut line = format!(
            "criterion {}: {} [{} checks, {:.2?}] {}",
            k + 1,
            title,
            checked,
            o.elapsed,
            if passed { "PASS" } else { "FAIL" }
        );
        if let Some(f) = failure {
            line += &format!(" ({}: {})", f.name, f.counterexample.clone().unwrap_or_default());
        }
        if slow {
            line += &format!(" (time limit {:?} exceeded)", o.limit.unwrap());
        }
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
