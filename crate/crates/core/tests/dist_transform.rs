use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sopq_core::dist::*;

fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> PointwiseMatrix {
    loop {
        let values = (0..k * k).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let m = PointwiseMatrix::new(k, values).unwrap();
        if m.det().map(|d| d.abs() > 0.1).unwrap_or(false) {
            return m;
        }
    }
}

fn random_orders(rng: &mut ChaCha8Rng, k: usize) -> MultiIndex {
    let total = rng.gen_range(0..=4u32);
    let mut q = vec![0; k];
    for _ in 0..total {
        q[rng.gen_range(0..k)] += 1;
    }
    MultiIndex(q)
}

#[test]
fn packing_sum_equals_grouped_index_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let k = rng.gen_range(1..=3);
        let beta = random_matrix(&mut rng, k);
        let q = random_orders(&mut rng, k);
        let table = transform_coefficients(&beta, &q).unwrap();
        let raw = transform_index_form(&beta, &q.to_index_list()).unwrap();
        let grouped = group_index_form(&raw, k);
        assert_eq!(table.terms.keys().collect::<Vec<_>>(), grouped.keys().collect::<Vec<_>>());
        for (p, v) in &table.terms {
            assert!((v - grouped[p]).abs() < 1e-12 * v.abs().max(1.0), "{q:?} {p:?}");
        }
    }
}

#[test]
fn total_order_is_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let k = rng.gen_range(1..=3);
        let beta = random_matrix(&mut rng, k);
        let q = random_orders(&mut rng, k);
        for p in transform_coefficients(&beta, &q).unwrap().terms.keys() {
            assert_eq!(p.iter().map(|v| *v as u64).sum::<u64>(), q.order());
        }
    }
}

#[test]
fn scaling_in_one_dimension() {
    for &c in &[0.5, 2.0, -3.0] {
        let beta = PointwiseMatrix::new(1, vec![1.0 / c]).unwrap();
        for m in 0..=5u32 {
            let t = transform_coefficients(&beta, &MultiIndex(vec![m])).unwrap();
            assert_eq!(t.terms.len(), 1);
            let expect = c.powi(-(m as i32) - 1);
            assert!((t.terms[&vec![m]] - expect).abs() < 1e-14 * expect.abs());
        }
    }
}

/// β(x) with entries analytic in one coordinate.
fn beta_at(x: f64) -> PointwiseMatrix {
    PointwiseMatrix::from_rows(&[
        vec![2.0 + x.sin(), x * x, 0.3],
        vec![0.5 * x, 1.5 + x.cos(), -0.2 * x],
        vec![x.exp() * 0.1, 0.4, 1.0 + x * x],
    ])
    .unwrap()
}

fn beta_derivative(x: f64) -> PointwiseMatrix {
    PointwiseMatrix::from_rows(&[
        vec![x.cos(), 2.0 * x, 0.0],
        vec![0.5, -x.sin(), -0.2],
        vec![x.exp() * 0.1, 0.0, 2.0 * x],
    ])
    .unwrap()
}

#[test]
fn jacobi_formula_holds() {
    let h = 1e-5;
    for &x in &[-0.7, 0.0, 0.4, 1.3] {
        let value = beta_at(x);
        let alpha = value.inverse().unwrap();
        let jet = MatrixJet {
            value,
            derivative: beta_derivative(x),
            plus: beta_at(x + h),
            minus: beta_at(x - h),
            h,
        };
        let r = jacobi_formula_check(&jet, &alpha).unwrap();
        assert!(r < 1e-8, "x={x}: {r}");
    }
}

#[test]
fn composition_follows_the_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let b1 = random_matrix(&mut rng, 2);
    let b2 = random_matrix(&mut rng, 2);
    let q = MultiIndex(vec![2, 1]);
    let composed = compose_transforms(&b1, &b2, &q).unwrap();
    let direct = transform_coefficients(&b1.mul(&b2).unwrap(), &q).unwrap().terms;
    let swapped = transform_coefficients(&b2.mul(&b1).unwrap(), &q).unwrap().terms;
    let diff = |a: &std::collections::BTreeMap<Vec<u32>, f64>| {
        composed.iter().map(|(p, v)| (v - a.get(p).copied().unwrap_or(0.0)).abs()).fold(0.0, f64::max)
    };
    assert!(diff(&direct) < 1e-12);
    assert!(diff(&swapped) > 1e-6);
}

#[test]
fn k2_regression_values() {
    // β = [[1, 2], [3, 4]], q = (1, 1): det β = -2 and
    // δ_{12}(Q) = det β Σ_{j1 j2} β_{1 j1} β_{2 j2} δ_{j1 j2}(P)
    let beta = PointwiseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
    let t = transform_coefficients(&beta, &MultiIndex(vec![1, 1])).unwrap();
    assert!((t.det_beta + 2.0).abs() < 1e-14);
    let expect = [(vec![2, 0], -2.0 * 3.0), (vec![1, 1], -2.0 * (4.0 + 6.0)), (vec![0, 2], -2.0 * 8.0)];
    for (p, v) in expect {
        assert!((t.terms[&p] - v).abs() < 1e-13, "{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packing_count_is_a_product_of_binomials(q in proptest::collection::vec(0u32..5, 1..4)) {
        let k = q.len() as u64;
        let packs = enumerate_packings(&MultiIndex(q.clone()), DEFAULT_BUDGET).unwrap();
        let binom = |n: u64, r: u64| -> u64 { (1..=r).fold(1u64, |acc, i| acc * (n - r + i) / i) };
        let expect: u64 = q.iter().map(|qi| binom(*qi as u64 + k - 1, k - 1)).product();
        prop_assert_eq!(packs.len() as u64, expect);
        for m in &packs {
            prop_assert_eq!(m.row_sums(), q.clone());
        }
    }
}
