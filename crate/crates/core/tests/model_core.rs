use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radhydro::fourier::{ScalarField, SpectralGrid, VectorField};
use radhydro::linear::FullSymbol;
use radhydro::model::*;
use radhydro::Error;

/// `Σ a cos(k·x + φ)` with exact derivatives.
#[derive(Clone)]
struct Trig(Vec<(f64, [f64; 3], f64)>);

impl Trig {
    fn val(&self, x: [f64; 3]) -> f64 {
        self.0.iter().map(|(a, k, p)| a * (dot(k, x) + p).cos()).sum()
    }
    fn d(&self, x: [f64; 3], j: usize) -> f64 {
        self.0.iter().map(|(a, k, p)| -a * k[j] * (dot(k, x) + p).sin()).sum()
    }
    fn dd(&self, x: [f64; 3], j: usize, l: usize) -> f64 {
        self.0.iter().map(|(a, k, p)| -a * k[j] * k[l] * (dot(k, x) + p).cos()).sum()
    }
    fn lap(&self, x: [f64; 3]) -> f64 {
        (0..3).map(|j| self.dd(x, j, j)).sum()
    }
}

fn dot(k: &[f64; 3], x: [f64; 3]) -> f64 {
    k[0] * x[0] + k[1] * x[1] + k[2] * x[2]
}

struct TrigState {
    rho: Trig,
    u: [Trig; 3],
    theta: Trig,
    eta: Trig,
}

impl TrigState {
    fn spectral(&self, g: &SpectralGrid) -> PerturbationState {
        PerturbationState::from_physical(
            g,
            &PhysicalState {
                rho: g.sample(|x| self.rho.val(x)),
                vel: [0, 1, 2].map(|i| g.sample(|x| self.u[i].val(x))),
                theta: g.sample(|x| self.theta.val(x)),
                eta: g.sample(|x| self.eta.val(x)),
            },
        )
    }

    /// `(𝒩₁, 𝒩₂, 𝒩₃, 𝒩₄)` evaluated straight from their definitions.
    fn terms(&self, x: [f64; 3]) -> [f64; 6] {
        let rho = self.rho.val(x);
        let th = self.theta.val(x);
        let eta = self.eta.val(x);
        let u: Vec<f64> = self.u.iter().map(|c| c.val(x)).collect();
        let du = |i: usize, j: usize| self.u[i].d(x, j);
        let div: f64 = (0..3).map(|j| du(j, j)).sum();
        let h = 1.0 / (1.0 + rho);
        let g = h - 1.0;
        let n1 = -rho * div - (0..3).map(|j| self.rho.d(x, j) * u[j]).sum::<f64>();
        let mut n2 = [0.0; 3];
        for i in 0..3 {
            let adv: f64 = (0..3).map(|j| u[j] * du(i, j)).sum();
            let grad_div: f64 = (0..3).map(|j| self.u[j].dd(x, i, j)).sum();
            n2[i] = -adv - (g + h * th) * self.rho.d(x, i)
                + g * (self.u[i].lap(x) + 2.0 * grad_div - self.eta.d(x, i));
        }
        let mut dd = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                dd += (0.5 * (du(i, j) + du(j, i))).powi(2);
            }
        }
        let quartic = th.powi(4) + 4.0 * th.powi(3) + 6.0 * th * th;
        let n3 = g * (self.theta.lap(x) + eta - 4.0 * th) - th * div
            - (0..3).map(|j| u[j] * self.theta.d(x, j)).sum::<f64>()
            + h * (div * div + 2.0 * dd - quartic);
        [n1, n2[0], n2[1], n2[2], n3, quartic]
    }
}

fn sample_state() -> TrigState {
    TrigState {
        rho: Trig(vec![(0.15, [1.0, 0.0, 0.0], 0.3), (0.05, [0.0, 1.0, -1.0], -1.1)]),
        u: [
            Trig(vec![(0.2, [0.0, 1.0, 0.0], 0.0), (0.1, [1.0, 1.0, 0.0], 0.7)]),
            Trig(vec![(-0.1, [0.0, 0.0, 1.0], 1.3)]),
            Trig(vec![(0.12, [1.0, 0.0, 1.0], -0.4)]),
        ],
        theta: Trig(vec![(0.1, [0.0, 1.0, 1.0], 0.2)]),
        eta: Trig(vec![(0.08, [1.0, -1.0, 0.0], 2.0), (0.04, [0.0, 0.0, 1.0], 0.0)]),
    }
}

fn max_err(g: &SpectralGrid, got: &ScalarField, want: &[f64]) -> f64 {
    g.inverse(got)
        .iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[test]
fn nonlinear_terms_match_definitions_pointwise() {
    let g = SpectralGrid::new(32, 1.0).unwrap();
    let ts = sample_state();
    let n = nonlinear_terms(&g, &ts.spectral(&g), &ModelParameters::default(), 0.25).unwrap();
    let want: Vec<[f64; 6]> = (0..g.len()).map(|p| ts.terms(g.coordinates(p))).collect();
    let got = n.into_state();
    for (c, field) in got.components().iter().enumerate() {
        let col: Vec<f64> = want.iter().map(|w| w[c]).collect();
        let scale = col.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = max_err(&g, field, &col);
        assert!(err <= 1e-9 * scale.max(1e-3), "component {} error {err}", COMPONENTS[c]);
    }
}

#[test]
fn continuity_term_example() {
    // ρ = cos x₁, u = (sin x₁, 0, 0) gives 𝒩₁ = −cos 2x₁, but 1 + ρ touches zero
    let g = SpectralGrid::new(32, 1.0).unwrap();
    let zero = vec![0.0; g.len()];
    let s = PerturbationState::from_physical(
        &g,
        &PhysicalState {
            rho: g.sample(|x| x[0].cos()),
            vel: [g.sample(|x| x[0].sin()), zero.clone(), zero.clone()],
            theta: zero.clone(),
            eta: zero,
        },
    );
    let p = ModelParameters::default();
    assert!(matches!(
        nonlinear_terms(&g, &s, &p, DEFAULT_DENSITY_FLOOR),
        Err(Error::Admissibility { .. })
    ));
    let n = nonlinear_terms(&g, &s, &p, f64::NEG_INFINITY).unwrap();
    let want = g.sample(|x| -(2.0 * x[0]).cos());
    assert!(max_err(&g, &n.n1, &want) < 1e-13);

    // fourth-order central differences of −div(ρu) on the same grid
    let rho = g.sample(|x| x[0].cos());
    let flux: Vec<f64> = rho.iter().zip(g.sample(|x| x[0].sin())).map(|(r, u)| r * u).collect();
    let h = g.spacing();
    let n_ax = g.n();
    let fd: Vec<f64> = (0..g.len())
        .map(|p| {
            let (i, j, l) = g.unindex(p);
            let at = |o: isize| flux[g.index((i as isize + o).rem_euclid(n_ax as isize) as usize, j, l)];
            -(-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h)
        })
        .collect();
    assert!(max_err(&g, &n.n1, &fd) < 2e-3);

    // an admissible rescaling keeps the structure: 𝒩₁ = −a² cos 2x₁
    let a = 0.5;
    let n = nonlinear_terms(&g, &s.scaled(a), &p, DEFAULT_DENSITY_FLOOR).unwrap();
    let want: Vec<f64> = want.iter().map(|v| a * a * v).collect();
    assert!(max_err(&g, &n.n1, &want) < 1e-13);
}

fn random_state(g: &SpectralGrid, seed: u64, kmax: i64) -> PerturbationState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = PerturbationState::zeros(g);
    for c in s.components_mut() {
        for a in -kmax..=kmax {
            for b in -kmax..=kmax {
                for d in -kmax..=kmax {
                    let idx = g.mode_index([a, b, d]);
                    c.coeffs[idx] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
        }
    }
    s.symmetrize(g);
    let scale = s.to_physical(g).rho.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    s.scaled(0.1 / scale)
}

#[test]
fn linear_part_is_the_full_symbol() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let s = random_state(&g, 3, 4);
    let lin = linear_rhs(&g, &s);
    for idx in 0..g.len() {
        let a = FullSymbol::new(g.derivative_wavevector(idx)).matrix;
        let v = s.mode(idx);
        let want = -(a * nalgebra::Vector6::from(v));
        let got = lin.mode(idx);
        for k in 0..6 {
            assert!((got[k] - want[k]).norm() < 1e-13 * (1.0 + g.kmag2()[idx]));
        }
    }
}

#[test]
fn small_amplitude_limit_is_linear() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let s = random_state(&g, 7, 4);
    let eps = 1e-8;
    let full = rhs_full(&g, &s.scaled(eps), &ModelParameters::default(), 0.25).unwrap();
    let lin = linear_rhs(&g, &s);
    let diff = full.scaled(1.0 / eps).max_abs_diff(&lin);
    assert!(diff <= 1e-6 * lin.max_abs(), "{diff} vs {}", lin.max_abs());
}

#[test]
fn nonlinear_terms_scale_quadratically() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let s = random_state(&g, 19, 3).scaled(10.0);
    let p = ModelParameters::default();
    let norms = |amp: f64| {
        let n = nonlinear_terms(&g, &s.scaled(amp), &p, 0.25).unwrap().into_state();
        n.components().map(|c| g.norm_l2(c))
    };
    let (a, b) = (norms(1e-2), norms(5e-3));
    for c in 0..6 {
        let ratio = a[c] / b[c];
        assert!(ratio >= 3.0, "{}: ratio {ratio}", COMPONENTS[c]);
        assert!((ratio - 4.0).abs() < 0.2, "{}: ratio {ratio}", COMPONENTS[c]);
    }
}

#[test]
fn transformed_radiation_pair() {
    // F = θ + η and G = 4θ − η obey F_t = −div u + ΔF, G_t = −4 div u + ΔG − 5G
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let s = random_state(&g, 23, 5);
    let t = linear_rhs(&g, &s);
    let pair = diagonalize(&s.theta, &s.eta);
    let rate = diagonalize(&t.theta, &t.eta);
    let div = g.divergence(&s.vel);

    let mut f_want = g.laplacian(&pair.f_var);
    f_want.sub_assign(&div);
    let mut g_want = g.laplacian(&pair.g_var);
    g_want.axpy(-4.0, &div);
    g_want.axpy(-5.0, &pair.g_var);
    assert!(rate.f_var.max_abs_diff(&f_want) < 1e-12 * f_want.max_abs());
    assert!(rate.g_var.max_abs_diff(&g_want) < 1e-12 * g_want.max_abs());

    let (th, et) = undiagonalize(&pair);
    assert!(th.max_abs_diff(&s.theta) < 1e-15);
    assert!(et.max_abs_diff(&s.eta) < 1e-15);
}

#[test]
fn zero_and_admissibility() {
    let g = SpectralGrid::new(8, 1.0).unwrap();
    let z = PerturbationState::zeros(&g);
    let p = ModelParameters::default();
    assert_eq!(rhs_full(&g, &z, &p, 0.25).unwrap(), z);
    let s = random_state(&g, 1, 2).scaled(9.0);
    let min = s.min_density(&g);
    assert!(min < 0.25);
    match nonlinear_terms(&g, &s, &p, 0.25) {
        Err(Error::Admissibility { min_density, floor }) => {
            assert_eq!(floor, 0.25);
            assert!((min_density - min).abs() < 1e-15);
        }
        other => panic!("expected admissibility error, got {other:?}"),
    }
}

#[test]
fn grid_mismatch() {
    let g = SpectralGrid::new(8, 1.0).unwrap();
    let h = SpectralGrid::new(4, 1.0).unwrap();
    let s = PerturbationState::zeros(&h);
    assert!(matches!(
        nonlinear_terms(&g, &s, &ModelParameters::default(), 0.25),
        Err(Error::GridMismatch { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rhs_of_real_state_is_real(seed in any::<u64>()) {
        let g = SpectralGrid::new(8, 1.5).unwrap();
        let s = random_state(&g, seed, 2);
        let t = rhs_full(&g, &s, &ModelParameters::default(), 0.25).unwrap();
        let scale = t.max_abs();
        prop_assert!(t.max_imaginary(&g) < 1e-12 * scale.max(1.0));
        for c in t.components() {
            prop_assert!(g.conjugate_asymmetry(c) < 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn diagonalize_roundtrip(seed in any::<u64>()) {
        let g = SpectralGrid::new(8, 1.0).unwrap();
        let s = random_state(&g, seed, 3);
        let (th, et) = undiagonalize(&diagonalize(&s.theta, &s.eta));
        prop_assert!(th.max_abs_diff(&s.theta) < 1e-15);
        prop_assert!(et.max_abs_diff(&s.eta) < 1e-15);
        let v = s.mode(g.mode_index([1, 2, 0]));
        let w = q_inverse(q_transform([v[0], v[1], v[4], v[5]]));
        for (a, b) in [v[0], v[1], v[4], v[5]].iter().zip(w) {
            prop_assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn coefficient_functions_stay_in_tube(rho in -0.5f64..0.5) {
        let (gv, hv) = coeff_functions(rho, 0.25).unwrap();
        prop_assert!((hv * (1.0 + rho) - 1.0).abs() < 1e-15);
        prop_assert!((gv - (hv - 1.0)).abs() == 0.0);
        prop_assert!(gv.abs() <= 2.0 * rho.abs() + 1e-15);
    }
}

#[test]
fn vector_field_helpers() {
    let mut v = VectorField::zeros(4);
    v.0[1].coeffs[2] = Complex64::new(2.0, 0.0);
    assert_eq!(v.scaled(0.5).max_abs(), 1.0);
}
