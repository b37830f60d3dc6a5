use num_rational::Rational64;
use radhydro::decay::*;
use radhydro::linear::{band_min_real_part, decay_envelope, envelope_time_grid, fit_log_linear};

const PI: f64 = std::f64::consts::PI;

fn shear_only() -> DecayExperimentConfig {
    DecayExperimentConfig {
        rho: RadialProfile::Zero,
        d: RadialProfile::Zero,
        theta: RadialProfile::Zero,
        eta: RadialProfile::Zero,
        ..DecayExperimentConfig::default()
    }
}

#[test]
fn initial_norms_match_direct_quadrature() {
    let cfg = DecayExperimentConfig::default();
    let ev = evolve_radial(&cfg).unwrap();
    // five components each e^{−r²}: 4π·5·∫ r^{2+2m} e^{−r²} dr = 5π^{3/2}·Γ(m+3/2)/Γ(3/2)
    let gamma_ratio = [1.0, 1.5, 3.75];
    for m in 0..3u32 {
        let want = (5.0 * PI.powf(1.5) * gamma_ratio[m as usize]).sqrt();
        let got = ev.series(m, Band::Total).unwrap()[0];
        assert!(((got - want) / want).abs() < 1e-10, "m = {m}: {got} vs {want}");
    }
    assert!(ev.warnings.is_empty());
}

#[test]
fn shear_gaussian_heat_law() {
    let ev = evolve_radial(&shear_only()).unwrap();
    let sh = ev.shear(0, Band::Total).unwrap();
    let tot = ev.series(0, Band::Total).unwrap();
    for (k, &t) in ev.times.iter().enumerate() {
        // ‖u(t)‖² = π^{3/2}(1+2t)^{−3/2}
        let want = PI.powf(0.75) * (1.0 + 2.0 * t).powf(-0.75);
        assert!(((sh[k] - want) / want).abs() < 1e-8, "t = {t}");
        assert_eq!(sh[k], tot[k]);
    }
}

#[test]
fn gaussian_exponents_and_ladder() {
    let cfg = DecayExperimentConfig::default();
    let ev = evolve_radial(&cfg).unwrap();
    let mut slopes = [0.0; 3];
    for m in 0..3u32 {
        let fit = fit_exponent(&ev.points(m, Band::Total).unwrap(), cfg.fit_window)
            .unwrap()
            .with_order(m);
        let target = -0.75 - 0.5 * m as f64;
        assert!((fit.slope - target).abs() <= 0.05, "m = {m}: {}", fit.slope);
        assert!(fit.conclusive(), "m = {m}: R² = {}", fit.r_squared);
        slopes[m as usize] = fit.slope;
    }
    for m in 1..3 {
        assert!((slopes[m] - (slopes[0] - 0.5 * m as f64)).abs() <= 0.05);
    }
    let exact = slopes.map(round_to_quarter);
    assert_eq!(exact, [Rational64::new(-3, 4), Rational64::new(-5, 4), Rational64::new(-7, 4)]);
}

#[test]
fn norms_are_monotone() {
    let ev = evolve_radial(&DecayExperimentConfig::default()).unwrap();
    for m in 0..3 {
        let s = ev.series(m, Band::Total).unwrap();
        for k in 2..s.len() {
            assert!(s[k] <= s[k - 1] * (1.0 + 1e-12), "m = {m}, t = {}", ev.times[k]);
        }
    }
}

#[test]
fn quadrature_refinement_is_converged() {
    let base = DecayExperimentConfig::default();
    let mut fine = base.clone();
    fine.quadrature.nodes_per_panel = 48;
    let a = evolve_radial(&base).unwrap();
    let b = evolve_radial(&fine).unwrap();
    for m in 0..3 {
        let (x, y) = (a.series(m, Band::Total).unwrap(), b.series(m, Band::Total).unwrap());
        for k in 0..x.len() {
            assert!(((x[k] - y[k]) / y[k]).abs() < 1e-8, "m = {m}, t = {}", a.times[k]);
        }
    }
}

#[test]
fn plateau_data_splits_exactly() {
    // support [0.25, 0.9] lies on the medium plateau for (r0, R0) = (0.2, 2)
    let bump = RadialProfile::Bump { amplitude: 1.0, lo: 0.25, hi: 0.9 };
    let cfg = DecayExperimentConfig {
        rho: bump,
        d: bump,
        theta: bump,
        eta: bump,
        shear: vec![bump],
        times: log_time_grid(1e-2, 1e2, 5),
        ..DecayExperimentConfig::default()
    };
    let ev = evolve_radial(&cfg).unwrap();
    for m in 0..3 {
        let parts: Vec<&[f64]> = [Band::Low, Band::Medium, Band::High]
            .iter()
            .map(|b| ev.series(m, *b).unwrap())
            .collect();
        let total = ev.series(m, Band::Total).unwrap();
        for k in 0..total.len() {
            let sum: f64 = parts.iter().map(|p| p[k] * p[k]).sum();
            assert!((sum - total[k] * total[k]).abs() <= 1e-12 * total[k] * total[k]);
        }
    }
}

#[test]
fn general_data_band_sum_is_bounded_by_total() {
    let ev = evolve_radial(&DecayExperimentConfig::default()).unwrap();
    for m in 0..3 {
        let total = ev.series(m, Band::Total).unwrap();
        for k in 0..total.len() {
            let sum: f64 = [Band::Low, Band::Medium, Band::High]
                .iter()
                .map(|b| ev.series(m, *b).unwrap()[k].powi(2))
                .sum();
            assert!(sum <= total[k].powi(2) * (1.0 + 1e-12));
        }
    }
}

#[test]
fn medium_band_decays_exponentially() {
    let bump = RadialProfile::Bump { amplitude: 1.0, lo: 0.1, hi: 3.0 };
    let cfg = DecayExperimentConfig {
        rho: bump,
        d: bump,
        theta: bump,
        eta: bump,
        shear: vec![bump],
        times: (0..=200).map(|i| 10.0 * i as f64).collect(),
        orders: vec![0],
        ..DecayExperimentConfig::default()
    };
    let ev = evolve_radial(&cfg).unwrap();
    let kmin = band_min_real_part(0.1, 3.0, 59);
    let env = decay_envelope(0.1, 3.0, &envelope_time_grid(kmin, 40.0, 80), 59).unwrap();
    assert!(env.kappa_fit > 0.0);
    for band in [Band::Total, Band::Medium] {
        let pts: Vec<(f64, f64)> = ev.points(0, band).unwrap().into_iter().filter(|p| p.0 >= 1000.0).collect();
        let (_, rate) = fit_log_linear(&pts).unwrap();
        assert!(-rate <= -0.9 * env.kappa_fit, "{band:?}: slope {} vs kappa {}", -rate, env.kappa_fit);
    }
}

#[test]
fn high_band_shear_heat_bound() {
    let ev = evolve_radial(&shear_only()).unwrap();
    let h = ev.shear(0, Band::High).unwrap();
    let big_r0 = 2.0f64;
    for (k, &t) in ev.times.iter().enumerate() {
        assert!(h[k] <= (-(big_r0 / 2.0).powi(2) * t).exp() * h[0] * (1.0 + 1e-12));
    }
}

#[test]
fn moment_free_data_decays_faster() {
    let p = RadialProfile::MomentFree { amplitude: 1.0 };
    let cfg = DecayExperimentConfig {
        rho: p,
        d: p,
        theta: p,
        eta: p,
        shear: vec![p],
        orders: vec![0],
        ..DecayExperimentConfig::default()
    };
    assert!(!cfg.is_generic());
    assert!(DecayExperimentConfig::default().is_generic());
    let ev = evolve_radial(&cfg).unwrap();
    let fit = fit_exponent(&ev.points(0, Band::Total).unwrap(), cfg.fit_window).unwrap();
    assert!(fit.slope < -1.2, "slope {}", fit.slope);
}

#[test]
fn truncation_warning() {
    let mut cfg = DecayExperimentConfig::default();
    cfg.quadrature.r_max = 3.0;
    cfg.quadrature.mid_end = 3.0;
    cfg.times = vec![0.0, 1.0];
    let ev = evolve_radial(&cfg).unwrap();
    assert_eq!(ev.warnings.len(), 1);
}

#[test]
fn lp_table_from_rounded_slopes() {
    let s = [-0.7514, -1.2557, -1.7615].map(round_to_quarter);
    let table = lp_rate_table(s, &default_lp_indices()).unwrap();
    for row in &table {
        let want = match (row.quantity, row.p) {
            ("U", Some(p)) => theorem_u_rate(p),
            ("grad U", Some(p)) => theorem_grad_rate(p),
            ("dt(rho,u)", None) => Rational64::new(-5, 4),
            ("dt(theta,eta)", None) => Rational64::new(-3, 4),
            other => panic!("unexpected row {other:?}"),
        };
        assert_eq!(row.rate, want, "{} at {:?}", row.quantity, row.p);
    }
    assert_eq!(table.len(), 6 + 4 + 2);
    let f = lp_rate_table([-0.75, -1.25, -1.75], &[LpIndex::int(4)]).unwrap();
    assert!((f[0].rate + 1.125).abs() < 1e-15);
}
