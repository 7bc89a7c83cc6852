use halfline::{bound_states, Potential1D, Preset};

fn well(v0: f64) -> Potential1D {
    Potential1D::preset(Preset::SquareWell { v0, a: 1.0 }).unwrap()
}

/// Roots of `q cot(q a) + kappa = 0`, `q = sqrt(v0 - kappa^2)`, by dense
/// bracketing and bisection in kappa.
fn transcendental_roots(v0: f64, a: f64) -> Vec<f64> {
    let g = |kappa: f64| {
        let q = (v0 - kappa * kappa).sqrt();
        q * (q * a).cos() + kappa * (q * a).sin()
    };
    // q = 0 at the top end is a spurious zero of g
    let top = v0.sqrt() * (1.0 - 1e-9);
    let cells = 20_000;
    let mut roots = Vec::new();
    for i in 0..cells {
        let (mut lo, mut hi) = (
            top * i as f64 / cells as f64,
            top * (i + 1) as f64 / cells as f64,
        );
        if lo == 0.0 {
            lo = 1e-12;
        }
        if g(lo).signum() == g(hi).signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid).signum() == g(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(-(0.5 * (lo + hi)).powi(2));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

#[test]
fn square_well_matches_transcendental_oracle() {
    for v0 in [10.0, 25.0] {
        let found = bound_states(&well(v0), -v0 - 1.0, -1e-3).unwrap();
        let oracle = transcendental_roots(v0, 1.0);
        assert_eq!(
            found.len(),
            oracle.len(),
            "v0 = {v0}: {found:?} vs {oracle:?}"
        );
        for (s, e) in found.iter().zip(&oracle) {
            assert!((s.energy - e).abs() <= 1e-8, "{} vs {e}", s.energy);
            assert!(s.bs_determinant.norm() <= 1e-4, "det {}", s.bs_determinant);
        }
    }
}

#[test]
fn free_operator_has_no_bound_states() {
    assert!(bound_states(&Potential1D::zero(), -10.0, -1e-3)
        .unwrap()
        .is_empty());
}

#[test]
fn count_is_monotone_in_depth() {
    let mut last = 0;
    for v0 in [1.0, 3.0, 6.0, 12.0, 20.0, 30.0, 45.0] {
        let n = bound_states(&well(v0), -v0 - 1.0, -1e-4).unwrap().len();
        assert!(n >= last, "v0 = {v0}: {n} < {last}");
        last = n;
    }
    assert!(last >= 2);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(bound_states(&well(5.0), -1.0, 0.5).is_err());
    assert!(bound_states(&well(5.0), -1.0, -2.0).is_err());
}
