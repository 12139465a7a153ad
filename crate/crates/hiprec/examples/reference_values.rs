//! Prints the high-precision reference constants that are frozen into the
//! unit tests. Re-run after touching the reference arithmetic:
//!
//!     cargo run -p hiprec --example reference_values

use hiprec::*;

fn main() {
    let mut mp = Mp::new();
    let e = mp.e();
    let lam = mp.to_f64(&e.clone());

    let v = nested_log(&mut mp, 2, 0.0);
    println!("L2(0)                            = {}", mp.digits(&v));
    let v = log_weight(&mut mp, 0.0, &[1.0, 1.0]);
    println!("weight(0; d = 1,1)               = {}", mp.digits(&v));
    let e2 = mp.mul(&e, &e);
    let d = mp.sub(&e2, &e);
    let z = mp.to_f64(&d);
    let (f1, f2) = commutator_factors(&mut mp, z, &[1.0, 1.0]);
    println!("f1(e^2 - e; d2 = 1)              = {}", mp.digits(&f1));
    println!("f2(e^2 - e; d2 = 1)              = {}", mp.digits(&f2));
    let v = dim_bound_raw(&mut mp, 1.0, &[1.0]);
    println!("dim_raw(eps = 1; d = 1)          = {}", mp.digits(&v));
    let v = dim_bound_raw(&mut mp, 0.01, &[1.0]);
    println!("dim_raw(eps = 0.01; d = 1)       = {}", mp.digits(&v));
    let v = theta_eps(&mut mp, 1.0, &[1.0]);
    println!("theta_eps(1; d = 1)              = {}", mp.digits(&v));
    let v = flux_bound(&mut mp, 2.0, 2.0, 1.0, 1.0, 0.75, &[1.0]);
    println!("flux_bound(k0; s = 3/4, d = 1)   = {}", mp.digits(&v));
    let v = omega(&mut mp, lam, 0.75, 1.0, &[1.0, 1.0], &[1.0, 1.0]);
    println!("omega(e; s = 0.75, d = c = 1,1)  = {}", mp.digits(&v));
    let v = mu(&mut mp, 12.0, 0.0);
    println!("mu(q = 12)                       = {}", mp.digits(&v));
    let v = gamma_decay(&mut mp, 12.0, 0.0);
    println!("gamma(q = 12)                    = {}", mp.digits(&v));
    let v = grad_exp_beta_form(&mut mp, 12.0);
    println!("grad_beta_form(q = 12)           = {}", mp.digits(&v));
    let v = grad_exp_explicit_form(&mut mp, 12.0);
    println!("grad_explicit_form(q = 12)       = {}", mp.digits(&v));
    let v = nested_log(&mut mp, 1, lam);
    println!("L1(e)                            = {}", mp.digits(&v));
    let v = nested_log(&mut mp, 2, lam);
    println!("L2(e)                            = {}", mp.digits(&v));
}
