use platjones::braid::{components, random_word};
use platjones::evaluator::{compile_word, jones, normalization, JonesOptions};
use platjones::fusion::Branch;
use platjones::oracle::jones_exact;
use platjones::qnum::QPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// The normalized plat element is the Jones polynomial itself, not just up to
// a unit monomial, on the whole circle of the continued branch.
#[test]
fn normalized_element_equals_oracle_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..60 {
        let n = rng.random_range(1..=3);
        let w = random_word(&mut rng, 2 * n, 9);
        let v = jones_exact(&w).unwrap();
        let prog = compile_word(&w).unwrap();
        let norm = normalization(n, components(&w));
        for _ in 0..5 {
            let p = QPoint::new(rng.random_range(0.1..4.0 * std::f64::consts::PI - 0.1));
            let Ok(e) = prog.matrix_element(&p, Branch::Continued) else {
                continue;
            };
            let lhs = e * norm.eval(&p);
            let rhs = v.eval(&p);
            assert!((lhs - rhs).norm() < 1e-8 * rhs.norm().max(1.0), "{w}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn fitted_polynomial_equals_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for _ in 0..25 {
        let n = rng.random_range(1..=3);
        let w = random_word(&mut rng, 2 * n, 7);
        let report = jones(&w, &JonesOptions::default()).unwrap();
        assert_eq!(report.polynomial, jones_exact(&w).unwrap(), "{w}");
    }
}
