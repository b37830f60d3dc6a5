use nalgebra::Vector6;
use num_complex::Complex64;
use radhydro::fourier::{CutoffPair, SpectralGrid};
use radhydro::linear::full_propagator;
use radhydro::model::{nonlinear_terms, ModelParameters, PerturbationState, PhysicalState};
use radhydro::sim::*;

fn small(dt: f64, t_end: f64, amplitude: f64) -> SimConfig {
    SimConfig {
        n: 16,
        box_len: 2.0,
        dt,
        t_end,
        amplitude,
        monitor_every: 1,
        transient: 0.0,
        ..SimConfig::default()
    }
}

fn nl(g: &SpectralGrid) -> impl Fn(&PerturbationState) -> radhydro::Result<PerturbationState> + '_ {
    move |s| Ok(nonlinear_terms(g, s, &ModelParameters::default(), 0.25)?.into_state())
}

#[test]
fn zero_state_stays_zero() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let z = PerturbationState::zeros(&g);
    for integrator in [Integrator::IfRk2, Integrator::ImexEuler] {
        let st = Stepper::new(&g, 0.05, integrator).unwrap();
        assert_eq!(st.step(&g, &z, nl(&g)).unwrap(), z);
    }
}

#[test]
fn tiny_single_mode_follows_the_propagator() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let mut s = PerturbationState::zeros(&g);
    let idx = g.mode_index([1, -2, 1]);
    let v = [0.3, -0.2, 0.5, 0.1, 0.7, -0.4].map(|x| Complex64::new(1e-8 * x, 0.5e-8 * x));
    s.set_mode(idx, v);
    s.symmetrize(&g);
    let st = Stepper::new(&g, 0.01, Integrator::IfRk2).unwrap();
    let out = st.step(&g, &s, nl(&g)).unwrap();
    let want = full_propagator(0.01, g.derivative_wavevector(idx)).unwrap() * Vector6::from(s.mode(idx));
    let got = out.mode(idx);
    let err = (0..6).map(|k| (got[k] - want[k]).norm()).fold(0.0, f64::max);
    let scale = want.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(err <= 1e-6 * scale, "{err:e}");
}

#[test]
fn linear_limit_over_hundred_steps() {
    let err = linear_limit_error(&small(0.01, 1.0, 1e-8), 1e-8, 100).unwrap();
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn second_order_self_convergence() {
    let c = small(0.02, 0.4, 0.1);
    // against a dt/8 reference: (1 - 8^-p) / (2^-p - 8^-p)
    let cv = step_convergence(&c).unwrap();
    assert!((3.8..4.6).contains(&cv.ratio()), "ratio {}", cv.ratio());
    let euler = SimConfig {
        integrator: Integrator::ImexEuler,
        ..c
    };
    let cv = step_convergence(&euler).unwrap();
    assert!((2.1..2.6).contains(&cv.ratio()), "ratio {}", cv.ratio());
}

#[test]
fn balance_residual_is_second_order() {
    let cv = balance_convergence(&small(0.01, 0.4, 0.1)).unwrap();
    assert!((3.5..4.6).contains(&cv.ratio()), "{:?}", cv.errors);
}

#[test]
fn linearized_balance_is_exact() {
    let c = SimConfig {
        linear_only: true,
        ..small(1e-3, 0.05, 0.05)
    };
    let g = c.grid().unwrap();
    let init = random_initial_state(&g, 0.05, 3);
    let r = balance_check(&c, &g, &init, 1).unwrap();
    assert!(r < 1e-10, "{r:e}");
    let zero = PerturbationState::zeros(&g);
    assert_eq!(balance_check(&c, &g, &zero, 1).unwrap(), 0.0);
}

#[test]
fn high_functional_equivalence() {
    let g = SpectralGrid::new(16, 4.0).unwrap();
    let cut = CutoffPair::default();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for seed in 0..100 {
        let s = random_initial_state(&g, 1e-3, seed);
        let e = energy_functionals(&g, &s, &cut, 0.05);
        let r = e.high / s.sobolev_norm(&g, 2).powi(2);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let c2 = hi.max(1.0 / lo);
    assert!(c2 <= 1.2, "C2 = {c2}");

    // without density both cross terms vanish
    let mut s = random_initial_state(&g, 1e-3, 7);
    s.rho = radhydro::fourier::ScalarField::zeros(g.len());
    let e = energy_functionals(&g, &s, &cut, 0.05);
    assert_eq!(e.high, s.sobolev_norm(&g, 2).powi(2));
}

#[test]
fn steps_keep_fields_real_and_dealiased() {
    let g = SpectralGrid::new(16, 2.0).unwrap();
    let st = Stepper::new(&g, 0.02, Integrator::IfRk2).unwrap();
    let mut s = random_initial_state(&g, 0.1, 5);
    for _ in 0..10 {
        s = st.step(&g, &s, nl(&g)).unwrap();
        assert!(s.max_imaginary(&g) < 1e-10 * s.max_abs().max(1e-300));
        for c in s.components() {
            for idx in 0..g.len() {
                if !g.is_retained(idx) {
                    assert_eq!(c.coeffs[idx], Complex64::new(0.0, 0.0));
                }
            }
        }
    }
    let mut again = s.clone();
    again.dealias(&g);
    assert_eq!(again, s);
}

#[test]
fn compression_aborts_mid_run() {
    // u = A sin x₁ drains density near x₁ = 0
    let c = SimConfig {
        n: 16,
        box_len: 1.0,
        dt: 0.005,
        t_end: 1.0,
        monitor_every: 5,
        ..SimConfig::default()
    };
    let g = c.grid().unwrap();
    let zero = vec![0.0; g.len()];
    let init = PerturbationState::from_physical(
        &g,
        &PhysicalState {
            rho: zero.clone(),
            vel: [g.sample(|x| 6.0 * x[0].sin()), zero.clone(), zero.clone()],
            theta: zero.clone(),
            eta: zero,
        },
    );
    let out = run_from(&c, &g, init, 0.0).unwrap();
    let a = out.record.abort.as_ref().expect("expected an abort");
    assert!(a.step > 0);
    assert!(!out.record.monitors.samples.is_empty());
    assert!(out.record.monitors.samples.iter().all(|s| s.min_density >= 0.25));
    assert!(out.state.min_density(&g) >= 0.25);
    assert_eq!(out.record.steps_taken, a.step - 1);
}

#[test]
fn restart_from_checkpoint_is_seamless() {
    let c = small(0.02, 0.2, 0.05);
    let g = c.grid().unwrap();
    let direct = run(&c).unwrap();

    let half = SimConfig { t_end: 0.1, ..c.clone() };
    let first = run(&half).unwrap();
    let mut bytes = Vec::new();
    write_checkpoint(&mut bytes, &g, first.time, &first.state).unwrap();
    let ck = read_checkpoint(bytes.as_slice()).unwrap();
    assert_eq!((ck.n, ck.box_len), (16, 2.0));
    let second = run_from(&half, &g, ck.state, ck.time).unwrap();
    assert_eq!(second.state, direct.state);
    assert!((second.time - 0.2).abs() < 1e-12);
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let c = small(0.02, 0.1, 0.05);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| run(&c).unwrap());
    let b = four.install(|| run(&c).unwrap());
    assert_eq!(a.record, b.record);
    assert_eq!(a.state, b.state);
}

#[test]
fn oversized_step_is_flagged() {
    let c = SimConfig {
        dt: 2.0,
        t_end: 20.0,
        amplitude: 0.3,
        ..small(0.02, 0.2, 0.3)
    };
    let g = c.grid().unwrap();
    let init = random_initial_state(&g, 0.3, 1);
    assert!(c.dt > 0.5 * stability_bound(&g, &init));
    let out = run(&c).unwrap();
    assert_eq!(out.record.warnings.len(), 1);
}
