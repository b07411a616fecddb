//! Error norms, observed orders and shock location.

/// Dual-weighted L1 and maximum errors over the nodes where `exact` is known.
/// Returns `None` when no node has an exact value.
pub fn error_norms(values: &[f64], exact: &[Option<f64>], duals: &[f64]) -> Option<(f64, f64)> {
    assert!(values.len() == exact.len() && values.len() == duals.len());
    let mut weighted = 0.0;
    let mut measure = 0.0;
    let mut max: f64 = 0.0;
    for ((v, e), d) in values.iter().zip(exact).zip(duals) {
        if let Some(e) = e {
            let err = (v - e).abs();
            weighted += d * err;
            measure += d;
            max = max.max(err);
        }
    }
    (measure > 0.0).then(|| (weighted / measure, max))
}

/// `log2(e_coarse / e_fine)` for a refinement by a factor of two.
pub fn observed_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// Orders between consecutive entries; the first entry has none.
pub fn orders(errors: &[f64]) -> Vec<Option<f64>> {
    std::iter::once(None)
        .chain(errors.windows(2).map(|w| Some(observed_order(w[0], w[1]))))
        .take(errors.len())
        .collect()
}

/// Multiple of the median increment a jump must exceed to count as a shock.
pub const SHOCK_CONTRAST: f64 = 10.0;

/// Midpoint of the cell with the largest `|u_{i+1} − u_i|`, or `None` when
/// that jump does not exceed [`SHOCK_CONTRAST`] times the median increment.
pub fn shock_locator(values: &[f64], nodes: &[f64]) -> Option<f64> {
    assert_eq!(values.len(), nodes.len());
    if values.len() < 3 {
        return None;
    }
    let jumps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let (cell, &largest) = jumps.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    let mut sorted = jumps.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 0 {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    };
    (largest > SHOCK_CONTRAST * median).then(|| 0.5 * (nodes[cell] + nodes[cell + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Grid1D;
    use crate::models::problems::source_burgers_exact;
    use proptest::prelude::*;

    #[test]
    fn norm_examples() {
        let duals = [0.5, 1.0, 1.0, 0.5];
        let v = [1.0, 2.0, 3.0, 4.0];
        let exact = v.map(Some);
        assert_eq!(error_norms(&v, &exact, &duals), Some((0.0, 0.0)));
        let shifted = v.map(|x| Some(x + 0.25));
        assert_eq!(error_norms(&v, &shifted, &duals), Some((0.25, 0.25)));
        let alt: Vec<Option<f64>> = (0..4).map(|i| Some(v[i] + if i % 2 == 0 { 0.1 } else { -0.1 })).collect();
        let (l1, linf) = error_norms(&v, &alt, &duals).unwrap();
        assert!((l1 - 0.1).abs() < 1e-15 && (linf - 0.1).abs() < 1e-15);
        assert_eq!(error_norms(&v, &[None; 4], &duals), None);
        // unknown nodes are left out of both sums
        let partial = [Some(1.0), None, None, Some(5.0)];
        assert_eq!(error_norms(&v, &partial, &duals), Some((0.5, 1.0)));
    }

    #[test]
    fn order_examples() {
        assert_eq!(observed_order(16.0, 1.0), 4.0);
        let o = orders(&[1.0, 0.25, 0.0625]);
        assert_eq!(o, vec![None, Some(2.0), Some(2.0)]);
        assert!(orders(&[]).is_empty());
    }

    #[test]
    fn locator_examples() {
        let g = Grid1D::uniform(0.0, 1.0, 80).unwrap();
        let step: Vec<f64> = (0..=80).map(|i| if i <= 40 { 1.0 } else { 0.0 }).collect();
        assert_eq!(shock_locator(&step, g.nodes()), Some(0.5 * (g.node(40) + g.node(41))));

        let smooth: Vec<f64> = g.nodes().iter().map(|x| (3.0 * x).sin()).collect();
        assert_eq!(shock_locator(&smooth, g.nodes()), None);

        let branch: Vec<f64> = g.nodes().iter().map(|&x| source_burgers_exact(x)).collect();
        let xs = shock_locator(&branch, g.nodes()).unwrap();
        assert!((xs - 0.1486).abs() <= g.width(0), "{xs}");
    }

    proptest! {
        #[test]
        fn l1_never_exceeds_linf(e in proptest::collection::vec(-1.0f64..1.0, 2..30)) {
            let zeros = vec![Some(0.0); e.len()];
            let duals = vec![1.0; e.len()];
            let (l1, linf) = error_norms(&e, &zeros, &duals).unwrap();
            prop_assert!(l1 <= linf + 1e-15);
        }
    }
}
