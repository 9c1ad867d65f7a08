//! Property tests for the algebraic invariants.

use homlie::cochain::{coboundary_hom, coboundary_lie, Cochain};
use homlie::homgroup::GroupTwist;
use homlie::linalg::{det, expm, rank_and_kernel, RectMatrix, DEFAULT_EXPM_TOL, DEFAULT_RANK_TOL};
use homlie::toda::rhs;
use homlie::{HomLieContext, Involution, Matrix};
use proptest::prelude::*;

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| Matrix::new(n, v).unwrap())
}

fn involution(n: usize) -> impl Strategy<Value = Involution> {
    let signs = prop::collection::vec(prop::bool::ANY, n).prop_map(|s| {
        Involution::diag_signs(
            &s.iter()
                .map(|&b| if b { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        )
        .unwrap()
    });
    let perm = (1..=n, 1..=n).prop_map(move |(i, j)| {
        if i == j {
            Involution::identity(n)
        } else {
            Involution::transposition(n, i, j).unwrap()
        }
    });
    prop_oneof![signs, perm]
}

fn triple_with_beta() -> impl Strategy<Value = (Involution, Matrix, Matrix, Matrix)> {
    (2usize..=4).prop_flat_map(|n| (involution(n), square(n), square(n), square(n)))
}

fn lie_pair(n: usize, seed: u64) -> (Matrix, Matrix, Matrix) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Matrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    let (a, b) = (draw(), draw());
    let target = expm(&(&a + &b), DEFAULT_EXPM_TOL).unwrap();
    (a, b, target)
}

fn lie_gap(a: &Matrix, b: &Matrix, target: &Matrix, m: u32) -> f64 {
    let step = &expm(&a.scale(1.0 / m as f64), DEFAULT_EXPM_TOL).unwrap()
        * &expm(&b.scale(1.0 / m as f64), DEFAULT_EXPM_TOL).unwrap();
    step.powi(m).dist(target)
}

/// The absolute 1e-4 gap at m = 2^10 for entries in [-1, 1]. The leading error
/// term |e^{A+B}[A,B]|/(2m) is of order 1e-3 to 1e-2 for such draws, so this
/// fails on almost every input; run with `--ignored` to see it.
#[test]
#[ignore = "bound below the first-order error term for entries in [-1, 1]"]
fn lie_product_gap_below_1e_4_at_m_1024() {
    let mut failures = 0;
    for seed in 0..100 {
        let (a, b, target) = lie_pair(2 + (seed as usize % 4), seed);
        if lie_gap(&a, &b, &target, 1 << 10) > 1e-4 {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures}/100 draws exceed 1e-4");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_antisymmetric((beta, x, y, _) in triple_with_beta()) {
        let ctx = HomLieContext::new(beta);
        let s = &ctx.bracket(&x, &y).unwrap() + &ctx.bracket(&y, &x).unwrap();
        prop_assert!(s.norm_fro() <= 1e-14);
    }

    #[test]
    fn bracket_bilinear((beta, x, y, z) in triple_with_beta(), a in -3.0f64..3.0) {
        let ctx = HomLieContext::new(beta);
        let lhs = ctx.bracket(&(&x.scale(a) + &z), &y).unwrap();
        let rhs = &ctx.bracket(&x, &y).unwrap().scale(a) + &ctx.bracket(&z, &y).unwrap();
        prop_assert!(lhs.dist(&rhs) <= 1e-12);
    }

    #[test]
    fn twist_is_multiplicative((beta, x, y, _) in triple_with_beta()) {
        let ctx = HomLieContext::new(beta);
        let lhs = ctx.ad(&x.clone()).unwrap();
        let lhs = ctx.bracket(&lhs, &ctx.ad(&y).unwrap()).unwrap();
        let rhs = ctx.ad(&ctx.bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(lhs.dist(&rhs) <= 1e-13);
        let prod = ctx.ad(&(&x * &y)).unwrap();
        prop_assert!(prod.dist(&(&ctx.ad(&x).unwrap() * &ctx.ad(&y).unwrap())) <= 1e-13);
    }

    #[test]
    fn hom_jacobi_holds((beta, x, y, z) in triple_with_beta()) {
        let ctx = HomLieContext::new(beta);
        let scale = x.norm_fro() * y.norm_fro() * z.norm_fro() + 1e-300;
        prop_assert!(ctx.hom_jacobi_residual(&x, &y, &z).unwrap() / scale <= 1e-9);
    }

    #[test]
    fn expm_group_law(a in (2usize..=4).prop_flat_map(square), s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let e = |r: f64| expm(&a.scale(r), DEFAULT_EXPM_TOL).unwrap();
        let lhs = e(s + t);
        prop_assert!(lhs.dist(&(&e(s) * &e(t))) <= 1e-10 * (1.0 + lhs.norm_fro()));
    }

    #[test]
    fn det_multiplicative((_, a, b, _) in triple_with_beta()) {
        let lhs = det(&(&a * &b));
        prop_assert!((lhs - det(&a) * det(&b)).abs() <= 1e-12);
    }

    #[test]
    fn rank_invariant_under_scaling(rows in 1usize..5, cols in 1usize..5, rank in 0usize..4, s in 0.1f64..10.0, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rank = rank.min(rows).min(cols);
        let u: Vec<Vec<f64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let v: Vec<Vec<f64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let m: Vec<Vec<f64>> = (0..rows)
            .map(|i| (0..cols).map(|j| (0..rank).map(|r| u[i][r] * v[r][j]).sum()).collect())
            .collect();
        let scaled: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        let r1 = rank_and_kernel(&RectMatrix::from_rows(&m), DEFAULT_RANK_TOL);
        let r2 = rank_and_kernel(&RectMatrix::from_rows(&scaled), DEFAULT_RANK_TOL);
        prop_assert_eq!(r1.rank, r2.rank);
        prop_assert_eq!(r1.rank + r1.kernel.len(), cols);
    }

    #[test]
    fn lie_product_formula_converges(n in 2usize..=5, seed in any::<u64>()) {
        let (a, b, target) = lie_pair(n, seed);
        let (coarse, fine) = (lie_gap(&a, &b, &target, 1 << 9), lie_gap(&a, &b, &target, 1 << 10));
        prop_assert!(fine < coarse);
        // first-order convergence: the gap halves with m
        prop_assert!((1.8..=2.2).contains(&(coarse / fine)), "ratio {}", coarse / fine);
        // telescoping bound s² e^s / m with s = |A| + |B|
        let s = a.norm_fro() + b.norm_fro();
        prop_assert!(fine <= s * s * s.exp() / 1024.0);
    }

    #[test]
    fn toda_rhs_symmetric_for_symmetric_beta(beta in (2usize..=5).prop_flat_map(involution), seed in any::<u64>()) {
        let n = beta.n();
        let l = homlie::sampling::symmetric(&mut homlie::sampling::rng(seed), n);
        let r = rhs(&HomLieContext::new(beta), &l).unwrap();
        prop_assert!(r.asymmetry() <= 1e-14);
    }

    #[test]
    fn toda_rhs_vanishes_on_diagonal(beta in (2usize..=5).prop_flat_map(involution), d in prop::collection::vec(-2.0f64..2.0, 5)) {
        let n = beta.n();
        let l = Matrix::diag(&d[..n]);
        prop_assert_eq!(rhs(&HomLieContext::new(beta), &l).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn group_twist_involutive(beta in (2usize..=4).prop_flat_map(involution), a in (4usize..=4).prop_flat_map(square)) {
        let n = beta.n();
        let a = Matrix::from_fn(n, |i, j| a.get(i, j));
        let t = GroupTwist::new(beta);
        prop_assert!(t.apply(&t.apply(&a)).dist(&a) <= 1e-15);
    }

    #[test]
    fn coboundaries_square_to_zero(beta in (2usize..=2).prop_flat_map(involution), k in 0usize..3, seed in any::<u64>()) {
        let mut rng = homlie::sampling::rng(seed);
        let xi = Cochain::random(&mut rng, 2, k).unwrap();
        let ctx = HomLieContext::new(beta);
        let dd = coboundary_hom(&ctx, &coboundary_hom(&ctx, &xi).unwrap()).unwrap();
        let ll = coboundary_lie(&coboundary_lie(&xi).unwrap()).unwrap();
        prop_assert!(dd.norm() <= 1e-12 && ll.norm() <= 1e-12);
    }
}
