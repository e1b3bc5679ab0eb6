//! Ordinary least squares on a line, generic over float width.

use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit<F> {
    pub slope: F,
    pub intercept: F,
    /// Coefficient of determination; 1 when the points are collinear.
    pub r_squared: F,
}

/// Fits `y = slope x + intercept`. `None` with fewer than two points,
/// mismatched lengths or constant `x`.
pub fn linear_fit<F: Float>(xs: &[F], ys: &[F]) -> Option<LineFit<F>> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = F::from(xs.len())?;
    let mx = xs.iter().fold(F::zero(), |s, &x| s + x) / n;
    let my = ys.iter().fold(F::zero(), |s, &y| s + y) / n;
    let (mut sxx, mut sxy, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == F::zero() { F::one() } else { sxy * sxy / (sxx * syy) };
    Some(LineFit { slope, intercept: my - slope * mx, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((f.slope - 2.0f64).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        let g = linear_fit(&[0.0f32, 1.0, 2.0, 3.0], &[0.0, 1.0, 0.0, 1.0]).unwrap();
        assert!((g.slope - 0.2).abs() < 1e-6);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_none());
        assert!(linear_fit::<f64>(&[1.0], &[0.0]).is_none());
    }
}
