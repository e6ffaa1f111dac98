use photon_wf::closed_form::{h_exact, h_exact_combination, Combination, Sign};
use photon_wf::model::{default_hydrogen_params, SpacetimePoint};
use photon_wf::oracle::{quad_h_exact, quad_h_exact_combination, DEFAULT_REL_TOL};

fn grid() -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let x = 0.01 * 3000f64.powf(i as f64 / 4.0);
            let t = 0.1 * 300f64.powf(j as f64 / 4.0);
            if (x - t).abs() >= 0.01 {
                pts.push((x, t));
            }
        }
    }
    pts
}

fn rel(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn singles_match_quadrature_on_grid() {
    let p = default_hydrogen_params();
    let mut worst = 0f64;
    for (x, t) in grid() {
        let pt = SpacetimePoint::new(x, t).unwrap();
        for n in 1..=2 {
            for sign in [Sign::Plus, Sign::Minus] {
                let closed = h_exact(n, &pt, &p, sign).unwrap().total;
                let quad = quad_h_exact(n, &pt, &p, sign, DEFAULT_REL_TOL).unwrap().value;
                let e = rel(closed, quad);
                worst = worst.max(e);
                assert!(e <= 1e-6, "n={n} {sign:?} X={x} T={t}: {e:.3e}");
            }
        }
    }
    eprintln!("worst single: {worst:.3e}");
}

#[test]
fn combinations_match_quadrature_on_grid() {
    let p = default_hydrogen_params();
    let mut worst = 0f64;
    for (x, t) in grid() {
        let pt = SpacetimePoint::new(x, t).unwrap();
        for (n, comb) in [(1, Combination::Difference), (2, Combination::Sum), (3, Combination::Difference)] {
            let closed = h_exact_combination(n, &pt, &p, comb).unwrap().total;
            let quad = quad_h_exact_combination(n, &pt, &p, comb, DEFAULT_REL_TOL).unwrap().value;
            let e = rel(closed, quad);
            worst = worst.max(e);
            assert!(e <= 1e-6, "n={n} {comb:?} X={x} T={t}: {e:.3e}");
        }
    }
    eprintln!("worst combination: {worst:.3e}");
}
