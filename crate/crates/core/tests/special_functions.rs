use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sopq_core::quadrature::{gauss_jacobi, gauss_legendre};
use sopq_core::special::*;
use sopq_core::{Complex, Error};

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

type Point = (f64, f64);

// Reference values of the principal log-Gamma computed once with mpmath at
// 30 digits, rounded to the nearest double.
#[allow(clippy::excessive_precision)]
const LOG_GAMMA_REFERENCE: &[(Point, Point)] = &[
    ((2.0, 3.0), (-2.092_851_753_092_733_3, 2.302_396_543_466_867_6)),
    ((-2.5, 0.5), (-0.935_085_621_298_277_5, -8.870_962_885_247_459)),
    ((0.1, 0.0), (2.252_712_651_734_206, 0.0)),
    ((30.5, -12.0), (70.613_886_246_484_12, -41.120_558_785_734_33)),
    ((-70.3, 1.0), (-233.013_599_550_245_73, -218.166_634_333_197_9)),
    ((1e-3, 1e-3), (6.560_604_473_837_553, -0.785_973_734_929_653_4)),
];

#[test]
fn log_gamma_against_frozen_reference() {
    for &((x, y), (re, im)) in LOG_GAMMA_REFERENCE {
        let v = ln_gamma(Complex::new(x, y)).unwrap();
        let scale = re.abs().max(im.abs()).max(1.0);
        assert!((v.re - re).abs() < 2e-14 * scale, "{x}+{y}i: {v}");
        assert!((v.im - im).abs() < 2e-14 * scale, "{x}+{y}i: {v}");
    }
}

/// Stirling series with enough Bernoulli terms for |z| >= 20, shifted down
/// by recurrence; independent of the Lanczos coefficients.
fn stirling_ln_gamma(z: Complex) -> Complex {
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    let b = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0];
    let mut corr = Complex::new(0.0, 0.0);
    let w2 = w * w;
    let mut pw = w;
    for coef in b {
        corr += coef / pw;
        pw *= w2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + corr - shift
}

#[test]
fn log_gamma_matches_stirling_up_to_branch() {
    let two_pi = 2.0 * std::f64::consts::PI;
    for &(x, y) in &[(2.0, 3.0), (0.7, -4.5), (5.5, 0.25), (1.5, 10.0)] {
        let z = Complex::new(x, y);
        let a = ln_gamma(z).unwrap();
        let b = stirling_ln_gamma(z);
        assert!((a.re - b.re).abs() < 1e-12, "{z}");
        let k = ((a.im - b.im) / two_pi).round();
        assert!((a.im - b.im - k * two_pi).abs() < 1e-12, "{z}");
    }
}

#[test]
fn log_gamma_poles() {
    for k in 0..5 {
        assert!(matches!(ln_gamma(c(-(k as f64))), Err(Error::GammaPole { .. })));
    }
}

#[test]
fn gegenbauer_spec_values() {
    assert_eq!(gegenbauer(0, 1.5, 0.3).unwrap(), 1.0);
    let x: f64 = 0.37;
    let lam: f64 = 1.25;
    assert!((gegenbauer(1, lam, x).unwrap() - 2.0 * lam * x).abs() < 1e-15);
    // λ = ½ gives Legendre: P_3(x) = (5x³ - 3x)/2
    let p3 = (5.0 * x.powi(3) - 3.0 * x) / 2.0;
    assert!((gegenbauer(3, 0.5, x).unwrap() - p3).abs() < 1e-15);
    // λ = 1 gives Chebyshev of the second kind: U_n(cos θ) = sin((n+1)θ)/sin θ
    let th: f64 = 0.9;
    let u6 = (7.0 * th).sin() / th.sin();
    assert!((gegenbauer(6, 1.0, th.cos()).unwrap() - u6).abs() < 1e-13);
    assert!(gegenbauer(2, -0.5, 0.1).is_err());
}

#[test]
fn gegenbauer_orthogonality_by_quadrature() {
    for &lam in &[0.5, 1.0, 1.5, 2.5] {
        let e = lam - 0.5;
        let rule = gauss_jacobi(e, e, 30).unwrap();
        for n in 0..8 {
            for m in 0..8 {
                let v = rule.integrate(|x| gegenbauer(n, lam, x).unwrap() * gegenbauer(m, lam, x).unwrap());
                if n != m {
                    assert!(v.abs() < 1e-12, "λ={lam} {n} {m}: {v}");
                } else {
                    let h = std::f64::consts::PI * 2f64.powf(1.0 - 2.0 * lam) * gamma_real(n as f64 + 2.0 * lam).unwrap()
                        / (gamma_real(n as f64 + 1.0).unwrap() * (n as f64 + lam) * gamma_real(lam).unwrap().powi(2));
                    assert!((v - h).abs() < 1e-12 * h, "λ={lam} n={n}: {v} vs {h}");
                }
            }
        }
    }
}

#[test]
fn jacobi_rule_moments() {
    // ∫ x^{2m} (1-x²)^e dx = B(m+½, e+1)
    for &e in &[0.0, 0.5, 1.0, 2.5, -0.5] {
        let rule = gauss_jacobi(e, e, 12).unwrap();
        for m in 0..12 {
            let exact = (ln_gamma_real(m as f64 + 0.5).unwrap() + ln_gamma_real(e + 1.0).unwrap()
                - ln_gamma_real(m as f64 + e + 1.5).unwrap())
            .exp();
            let v = rule.integrate(|x| x.powi(2 * m));
            assert!((v - exact).abs() < 1e-13 * exact.max(1.0), "e={e} m={m}: {v} vs {exact}");
        }
    }
    let r = gauss_legendre(40).unwrap();
    assert!((r.integrate(|x| x.exp()) - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
}

#[test]
fn gauss_2f1_closed_forms() {
    // ₂F₁(1,1;2;x) = -ln(1-x)/x
    let x = 0.3;
    let v = gauss_2f1(c(1.0), c(1.0), c(2.0), x, 1e-16).unwrap();
    assert!((v.value.re + (1.0 - x).ln() / x).abs() < 1e-15);
    assert!(v.converged);
    // ₂F₁(a,b;b;x) = (1-x)^{-a}
    let a = Complex::new(0.3, 0.7);
    let v = gauss_2f1(a, c(2.2), c(2.2), 0.4, 1e-16).unwrap().value;
    assert!((v - (c(0.6).ln() * -a).exp()).norm() < 1e-14);
    assert!(matches!(gauss_2f1(c(0.5), c(0.5), c(1.0), 1.2, 1e-12), Err(Error::Domain(_))));
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(r: &BigRational) -> f64 {
    // exact rational → f64 through a scaled integer quotient
    let scale = BigInt::from(10u64).pow(30);
    let q = (r.numer() * &scale) / r.denom();
    q.to_string().parse::<f64>().unwrap() / 1e30
}

/// Exact `F₂(a, -l1, -l2; b1, b2; 1, 1)` from the defining double sum in
/// rational arithmetic, stepping term ratios along the lattice.
fn f2_exact(a: &BigRational, l1: u32, l2: u32, b1: &BigRational, b2: &BigRational) -> BigRational {
    let one = rat(1, 1);
    let mut sum = rat(0, 1);
    let mut row = one.clone();
    for m in 0..=l1 {
        let mut t = row.clone();
        for n in 0..=l2 {
            sum += &t;
            if n < l2 {
                let k = rat((m + n) as i64, 1);
                let nn = rat(n as i64, 1);
                t = t * (a + k) * (&nn - rat(l2 as i64, 1)) / ((b2 + &nn) * (&nn + &one));
            }
        }
        if m < l1 {
            let mm = rat(m as i64, 1);
            row = row * (a + &mm) * (&mm - rat(l1 as i64, 1)) / ((b1 + &mm) * (&mm + &one));
        }
    }
    sum
}

#[test]
fn appell_unit_reduction_against_exact_rationals() {
    // σ = -3/2 on SO(3,2): a = 3/4, b = (3/2, 1); and a generic rational set.
    let cases = [((3, 4), (3, 2), (1, 1)), ((7, 3), (5, 2), (3, 2)), ((-1, 5), (2, 1), (1, 2))];
    for &((an, ad), (b1n, b1d), (b2n, b2d)) in &cases {
        let (a, b1, b2) = (rat(an, ad), rat(b1n, b1d), rat(b2n, b2d));
        for &(l1, l2) in &[(10, 10), (25, 25), (40, 37), (60, 60)] {
            let exact = to_f64(&f2_exact(&a, l1, l2, &b1, &b2));
            let v = appell_f2_unit(
                c(an as f64 / ad as f64),
                l1,
                l2,
                c(b1n as f64 / b1d as f64),
                c(b2n as f64 / b2d as f64),
            )
            .unwrap();
            assert!((v.re - exact).abs() < 1e-12 * exact.abs().max(1.0), "{l1},{l2}: {v} vs {exact}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(re in -6.0f64..6.0, im in -3.0f64..3.0, m in 0u32..12, n in 0u32..12) {
        let a = Complex::new(re, im);
        let lhs = pochhammer(a, m + n).unwrap();
        let rhs = pochhammer(a, m).unwrap() * pochhammer(a + m as f64, n).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn pochhammer_vs_gamma_ratio(x in 0.2f64..8.0, n in 0u32..15) {
        let direct = pochhammer(c(x), n).unwrap().re;
        let via = (ln_gamma_real(x + n as f64).unwrap() - ln_gamma_real(x).unwrap()).exp();
        prop_assert!((direct - via).abs() <= 1e-12 * via);
    }

    #[test]
    fn gegenbauer_satisfies_recurrence(n in 1u32..30, lam in 0.05f64..4.0, x in -1.0f64..1.0) {
        let nf = n as f64;
        let lhs = (nf + 1.0) * gegenbauer(n + 1, lam, x).unwrap();
        let rhs = 2.0 * (nf + lam) * x * gegenbauer(n, lam, x).unwrap()
            - (nf + 2.0 * lam - 1.0) * gegenbauer(n - 1, lam, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn log_gamma_recurrence(re in -20.0f64..40.0, im in 0.1f64..20.0) {
        let z = Complex::new(re, im);
        let lhs = ln_gamma(z + 1.0).unwrap();
        let rhs = ln_gamma(z).unwrap() + z.ln();
        let two_pi = 2.0 * std::f64::consts::PI;
        let d = lhs - rhs;
        let k = (d.im / two_pi).round();
        prop_assert!(d.re.abs() <= 1e-11 * lhs.re.abs().max(1.0));
        prop_assert!((d.im - k * two_pi).abs() <= 1e-11 * lhs.im.abs().max(1.0));
    }
}
