//! Cross-module numerical invariants: long-chain constraint stability,
//! bracket algebra, Green-theorem consistency against a grid double
//! integral, and the integrator's convergence order.

use holonomy::curve::{hyperbolic_area, ChartCurve, Orientation};
use holonomy::heisenberg::{heis_bracket, HeisenbergAlgebra};
use holonomy::lift::lift_su11_closed_form;
use holonomy::su11::{su11_bracket, Su11Algebra, Su11Element};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn pseudo_sphere_constraint_survives_a_million_products() {
    // 1000 chains of 1000 products each, renormalization disabled.
    let mut rng = StdRng::seed_from_u64(100);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut acc = Su11Element::identity();
        for _ in 0..1000 {
            let x = rng.gen_range(-0.02..0.02);
            let y = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = rng.gen_range(-0.5..0.5);
            let f = Su11Element::exp_horizontal(x, y).mul(&Su11Element::circle(z));
            acc = acc.mul(&f);
        }
        worst = worst.max(acc.constraint_residual());
    }
    assert!(
        worst < 1e-9,
        "constraint drift {worst:e} over 10^3-long chains"
    );
}

#[test]
fn su11_brackets_are_antisymmetric_and_satisfy_jacobi() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..200 {
        let rand_alg = |rng: &mut StdRng| {
            Su11Algebra::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            )
        };
        let (a, b, c) = (rand_alg(&mut rng), rand_alg(&mut rng), rand_alg(&mut rng));
        let anti = su11_bracket(&a, &b)
            .add(&su11_bracket(&b, &a))
            .coefficients();
        assert!(anti.iter().all(|x| x.abs() < 1e-10));
        let jacobi = su11_bracket(&su11_bracket(&a, &b), &c)
            .add(&su11_bracket(&su11_bracket(&b, &c), &a))
            .add(&su11_bracket(&su11_bracket(&c, &a), &b))
            .coefficients();
        assert!(jacobi.iter().all(|x| x.abs() < 1e-10));
    }
}

#[test]
fn heisenberg_brackets_are_antisymmetric_and_satisfy_jacobi() {
    let mut rng = StdRng::seed_from_u64(102);
    for n in 1..=3 {
        for _ in 0..100 {
            let rand_alg = |rng: &mut StdRng| {
                let coeff: Vec<f64> = (0..2 * n + 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
                HeisenbergAlgebra::new(&coeff)
            };
            let (a, b, c) = (rand_alg(&mut rng), rand_alg(&mut rng), rand_alg(&mut rng));
            let anti = heis_bracket(&a, &b).central() + heis_bracket(&b, &a).central();
            assert!(anti.abs() < 1e-10);
            // Two-step nilpotency makes every Jacobi term vanish.
            let jac = heis_bracket(&heis_bracket(&a, &b), &c).central()
                + heis_bracket(&heis_bracket(&b, &c), &a).central()
                + heis_bracket(&heis_bracket(&c, &a), &b).central();
            assert!(jac.abs() < 1e-10);
        }
    }
}

/// Double integral of 2 sinh(2x) over a disk, in polar coordinates around
/// the disk center: midpoint rule in the angle, composite Simpson in the
/// radius.
fn disk_area_oracle(cx: f64, radius: f64, angular: usize, radial: usize) -> f64 {
    let mut total = 0.0;
    let dtheta = std::f64::consts::TAU / angular as f64;
    let h = radius / radial as f64;
    for j in 0..angular {
        let theta = (j as f64 + 0.5) * dtheta;
        let cos = theta.cos();
        let f = |rho: f64| 2.0 * (2.0 * (cx + rho * cos)).sinh() * rho;
        let mut acc = f(0.0) + f(radius);
        for i in 1..radial {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        total += acc * h / 3.0 * dtheta;
    }
    total
}

#[test]
fn green_line_integral_matches_grid_double_integral() {
    // Interior disk.
    let curve = ChartCurve::circle([1.3, 0.4], 0.6, Orientation::Positive).unwrap();
    let line = hyperbolic_area(&curve, 4000).unwrap();
    let grid = disk_area_oracle(1.3, 0.6, 2048, 2048);
    assert!(
        (line - grid).abs() <= 1e-5 * grid.abs(),
        "line {line} vs grid {grid}"
    );

    // Disk tangent to the chart edge x = 0: the Green 1-form 2 sinh^2(x) dy
    // vanishes there, so the identity still holds.
    let touching = ChartCurve::circle([0.5, -1.0], 0.5, Orientation::Positive).unwrap();
    let line = hyperbolic_area(&touching, 4000).unwrap();
    let grid = disk_area_oracle(0.5, 0.5, 2048, 2048);
    assert!(
        (line - grid).abs() <= 1e-5 * grid.abs(),
        "line {line} vs grid {grid}"
    );
}

#[test]
fn rectangle_on_chart_edge_matches_exact_double_integral() {
    // [0, a] x [q, q+b]: the double integral of 2 sinh 2x evaluates to
    // 2 b sinh^2(a).
    let (a, q, b) = (0.8, -0.3, 1.1);
    let r = ChartCurve::rectangle(0.0, a, q, b, Orientation::Positive).unwrap();
    let line = hyperbolic_area(&r, 1000).unwrap();
    let exact = 2.0 * b * a.sinh().powi(2);
    assert!((line - exact).abs() < 1e-10);
}

#[test]
fn rk4_step_halving_gains_fourth_order_accuracy() {
    let hexagon = || {
        ChartCurve::polygon(
            vec![
                [2.1, 0.0],
                [1.8, 0.52],
                [1.2, 0.6],
                [0.9, 0.05],
                [1.15, -0.5],
                [1.7, -0.45],
            ],
            Orientation::Positive,
        )
        .unwrap()
    };
    let reference = lift_su11_closed_form(&hexagon(), 6 * 16384)
        .unwrap()
        .displacement;
    let errors: Vec<f64> = [48usize, 96, 192, 384]
        .iter()
        .map(|&n| (lift_su11_closed_form(&hexagon(), n).unwrap().displacement - reference).abs())
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!(
            (12.0..=20.0).contains(&ratio),
            "step halving ratio {ratio} outside [12, 20] (errors {errors:?})"
        );
    }
}

#[test]
fn sampled_curves_integrate_close_to_their_smooth_source() {
    // A circle handed over as discrete samples: the central-difference
    // velocity model reproduces the smooth displacement to second order.
    let (cx, cy, r) = (1.2, 0.3, 0.5);
    let smooth = ChartCurve::circle([cx, cy], r, Orientation::Positive).unwrap();
    let exact = lift_su11_closed_form(&smooth, 20000).unwrap().displacement;
    let run = |m: usize| {
        let pts: Vec<[f64; 2]> = (0..=m)
            .map(|i| {
                let ang = std::f64::consts::TAU * i as f64 / m as f64;
                [cx + r * ang.cos(), cy + r * ang.sin()]
            })
            .collect();
        let sampled = ChartCurve::sampled(pts, Orientation::Positive).unwrap();
        (lift_su11_closed_form(&sampled, m).unwrap().displacement - exact).abs()
    };
    let (coarse, fine) = (run(200), run(400));
    let ratio = coarse / fine;
    assert!(
        fine < 1e-3,
        "sampled-curve error {fine} too large at m = 400"
    );
    assert!(
        (3.0..=5.5).contains(&ratio),
        "sampled-curve convergence ratio {ratio} not second order"
    );
}

#[test]
fn heisenberg_displacement_is_plane_metric_independent_of_n() {
    // The same planar curve over the "same" plane embedded in different
    // ambient dimensions gives identical displacements.
    let square = ChartCurve::rectangle(-0.5, 1.0, -0.5, 1.0, Orientation::Positive).unwrap();
    let mut values = Vec::new();
    for n in 1..=3 {
        // v = first coordinate, w = i * first coordinate, zero padding.
        let mut vpads = vec![Complex64::new(0.0, 0.0); n];
        vpads[0] = Complex64::new(1.0, 0.0);
        let mut wpads = vec![Complex64::new(0.0, 0.0); n];
        wpads[0] = Complex64::new(0.0, 1.0);
        let plane = holonomy::SurfacePlane::new(
            holonomy::ComplexVector::new(vpads),
            holonomy::ComplexVector::new(wpads),
        )
        .unwrap();
        let trace = holonomy::lift_heisenberg_closed_form(&square, &plane, 500).unwrap();
        values.push(trace.displacement);
    }
    for v in &values {
        assert!((v - values[0]).abs() < 1e-12);
    }
}
