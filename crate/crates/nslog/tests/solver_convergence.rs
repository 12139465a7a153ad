//! Time-integration accuracy: exact single-mode decay, exact vortex-array
//! decay, fourth-order self-convergence on a nonlinearly active field, and
//! the energy balance across records.

use nslog::field::{inverse, Grid, PhysField};
use nslog::solver::{
    make_random_divfree, make_shear, make_taylor_green_2d, run, DtPolicy, SolverConfig,
    SolverState,
};

fn advance(u0: &PhysField, cfg: &SolverConfig) -> PhysField {
    let out = run(u0, cfg).unwrap();
    inverse(&out.final_state.u).unwrap()
}

#[test]
fn shear_decay_is_exact_for_fractional_orders() {
    let g = Grid::cube(16).unwrap();
    for (s, k) in [(0.6, 1u32), (0.75, 2), (1.0, 3)] {
        let nu = 0.1;
        // q large enough that the criterion exponent stays valid at s = 0.6
        let cfg = SolverConfig::new(nu, s, DtPolicy::Fixed(0.05), 1.0)
            .unwrap()
            .with_q(40.0)
            .unwrap();
        let u0 = make_shear(g, k, 1.0).unwrap();
        let u1 = advance(&u0, &cfg);
        let expect = (-nu * (k as f64).powi(2).powf(s)).exp();
        let amp = u1.max_abs();
        assert!(
            (amp - expect).abs() <= 1e-10,
            "s={s} k={k}: {amp} vs {expect}"
        );
        // linear dynamics are integrated exactly, so the step size is moot
        let coarse_cfg = SolverConfig::new(nu, s, DtPolicy::Fixed(0.25), 1.0)
            .unwrap()
            .with_q(40.0)
            .unwrap();
        let coarse = advance(&u0, &coarse_cfg).max_abs();
        assert!((coarse - expect).abs() <= 1e-10, "dt-dependence: {coarse}");
    }
}

#[test]
fn vortex_array_pointwise_error() {
    let g = Grid::square(64).unwrap();
    let nu = 0.1;
    let cfg = SolverConfig::new(nu, 1.0, DtPolicy::Fixed(0.01), 1.0).unwrap();
    let u0 = make_taylor_green_2d(g, 1.0).unwrap();
    let u1 = advance(&u0, &cfg);
    let exact = make_taylor_green_2d(g, (-2.0 * nu).exp()).unwrap();
    let worst = u1
        .data()
        .iter()
        .zip(exact.data())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(worst <= 1e-6, "max pointwise error {worst}");
}

#[test]
fn fourth_order_self_convergence() {
    // 2D random field keeps the nonlinearity active; successive dt halvings
    // should shrink the state difference by ~2^4
    let g = Grid::square(32).unwrap();
    let u0 = make_random_divfree(g, -2.0, (1.0, 6.0), 23).unwrap();
    let states: Vec<PhysField> = [1e-2, 5e-3, 2.5e-3]
        .into_iter()
        .map(|dt| {
            let cfg = SolverConfig::new(0.02, 1.0, DtPolicy::Fixed(dt), 0.5)
                .unwrap()
                .with_record_every(0.5)
                .unwrap();
            advance(&u0, &cfg)
        })
        .collect();
    let diff = |a: &PhysField, b: &PhysField| {
        a.data()
            .iter()
            .zip(b.data())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    };
    let d1 = diff(&states[0], &states[1]);
    let d2 = diff(&states[1], &states[2]);
    let order = (d1 / d2).log2();
    assert!(order >= 3.9, "measured order {order} (d1={d1}, d2={d2})");
}

#[test]
fn record_level_energy_balance() {
    let g = Grid::cube(32).unwrap();
    let u0 = make_random_divfree(g, -5.0 / 3.0, (1.0, 6.0), 31).unwrap();
    let cfg = SolverConfig::new(0.02, 0.75, DtPolicy::Fixed(0.005), 0.2).unwrap();
    let out = run(&u0, &cfg).unwrap();
    assert!(out.records.len() >= 20);
    for w in out.records.windows(2) {
        let de = w[1].energy - w[0].energy;
        let dt = w[1].t - w[0].t;
        // hs_semi is the H^s seminorm, whose square is the dissipation
        // quadratic form of the fractional model
        let dissipated =
            cfg.nu * 0.5 * dt * (w[0].hs_semi.powi(2) + w[1].hs_semi.powi(2));
        let rel = (de + dissipated).abs() / w[0].energy;
        assert!(rel <= 1e-5, "t = {}: imbalance {rel}", w[1].t);
    }
}

#[test]
fn forced_run_gains_energy_at_the_requested_rate() {
    let g = Grid::cube(16).unwrap();
    let rate = 0.05;
    let cfg = SolverConfig::new(0.01, 0.75, DtPolicy::Fixed(0.005), 0.2)
        .unwrap()
        .with_forcing(nslog::solver::Forcing {
            k_min: 1.0,
            k_max: 2.0,
            rate,
        })
        .unwrap();
    let u0 = make_random_divfree(g, -2.0, (1.0, 2.0), 5).unwrap();
    let out = run(&u0, &cfg).unwrap();
    // energy balance with injection: dE/dt = rate * V - dissipation
    let v = g.volume();
    let first = &out.records[0];
    let last = out.records.last().unwrap();
    let mut dissipated = 0.0;
    for w in out.records.windows(2) {
        let dt = w[1].t - w[0].t;
        dissipated += cfg.nu * 0.5 * dt * (w[0].hs_semi.powi(2) + w[1].hs_semi.powi(2));
    }
    let injected = rate * v * (last.t - first.t);
    let de = last.energy - first.energy;
    let rel = (de - injected + dissipated).abs() / first.energy;
    assert!(rel <= 1e-4, "forced balance residual {rel}");
}

#[test]
fn cfl_policy_reaches_the_final_time() {
    let g = Grid::cube(16).unwrap();
    let cfg = SolverConfig::new(0.05, 0.8, DtPolicy::Cfl(0.3), 0.05)
        .unwrap()
        .with_record_every(0.05)
        .unwrap();
    let u0 = make_random_divfree(g, -2.0, (1.0, 4.0), 2).unwrap();
    let out = run(&u0, &cfg).unwrap();
    assert!((out.final_state.t - 0.05).abs() < 1e-10);
}

#[test]
fn state_construction_projects_residual_divergence() {
    let g = Grid::cube(16).unwrap();
    let cfg = SolverConfig::new(0.05, 0.75, DtPolicy::Fixed(0.01), 0.1).unwrap();
    let u0 = make_random_divfree(g, -2.0, (1.0, 4.0), 8).unwrap();
    let state = SolverState::new(&u0, &cfg).unwrap();
    assert!(nslog::field::divergence_rel(&state.u) < 1e-13);
}
