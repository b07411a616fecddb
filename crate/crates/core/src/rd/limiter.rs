//! Struijs limiter and Roe's entropy fix.

/// Threshold below which `|a|` is replaced by `(a² + ε²)/(2ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeFix {
    pub epsilon: f64,
}

impl Default for RoeFix {
    fn default() -> Self {
        Self { epsilon: 1e-2 }
    }
}

pub fn roe_correct(a: f64, fix: RoeFix) -> f64 {
    let abs = a.abs();
    if abs > fix.epsilon {
        abs
    } else {
        (a * a + fix.epsilon * fix.epsilon) / (2.0 * fix.epsilon)
    }
}

/// Relative size under which a total residual counts as zero.
const DEGENERATE: f64 = 1e-14;

/// Struijs weights `max(Φᵏ/Φ, 0) / Σ max(Φ*/Φ, 0)` for one component.
///
/// When the total is negligible against the parts the ratios are meaningless
/// and the weights fall back to `1/K`. The test is purely relative: near a
/// converged state both the total and the parts are tiny, and an absolute
/// floor would switch most cells to the centered fallback.
pub fn struijs_limiter<const K: usize>(parts: &[f64; K], total: f64) -> [f64; K] {
    let scale = parts.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    let equal = [1.0 / K as f64; K];
    if !(total.abs() > DEGENERATE * scale) {
        return equal;
    }
    let mut w = [0.0; K];
    let mut sum = 0.0;
    for (wk, pk) in w.iter_mut().zip(parts) {
        *wk = (pk / total).max(0.0);
        sum += *wk;
    }
    if !(sum > 0.0) || !sum.is_finite() {
        return equal;
    }
    for wk in &mut w {
        *wk /= sum;
    }
    w
}
