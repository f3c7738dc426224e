//! Floating-point cross-check: classical RK4 on the Heun equation written as
//! a first-order system, started from an exact candidate.

use crate::error::{Error, Result};
use crate::heun::HeunParams;
use crate::series::OffsetSeries;

struct Coefficients {
    alpha_beta: f64,
    gamma: f64,
    delta: f64,
    epsilon: f64,
    q: f64,
    c: f64,
    sigma: f64,
}

impl Coefficients {
    fn new(p: &HeunParams) -> Self {
        Coefficients {
            alpha_beta: p.alpha_beta().to_f64(),
            gamma: p.gamma.to_f64(),
            delta: p.delta.to_f64(),
            epsilon: p.epsilon.to_f64(),
            q: p.q.to_f64(),
            c: p.c.to_f64(),
            sigma: p.sigma.to_f64(),
        }
    }

    /// `(y, y')' = (y', -p(x) y' - r(x) y)`
    fn rhs(&self, x: f64, y: [f64; 2]) -> [f64; 2] {
        let p = self.gamma / x + self.delta / (x - 1.0) + self.epsilon / (x - self.c);
        let r = (self.alpha_beta * x - self.q - self.sigma / x) / (x * (x - 1.0) * (x - self.c));
        [y[1], -p * y[1] - r * y[0]]
    }
}

fn rk4_step(f: &Coefficients, x: f64, y: [f64; 2], h: f64) -> [f64; 2] {
    let add = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    let k1 = f.rhs(x, y);
    let k2 = f.rhs(x + h / 2.0, add(y, k1, h / 2.0));
    let k3 = f.rhs(x + h / 2.0, add(y, k2, h / 2.0));
    let k4 = f.rhs(x + h, add(y, k3, h));
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Integrates from `interval.0` to `interval.1` in `steps` RK4 steps and
/// returns the largest `|y_rk4 - candidate|` over the grid.
pub fn numeric_check(
    params: &HeunParams,
    candidate: &OffsetSeries,
    interval: (f64, f64),
    steps: u32,
) -> Result<f64> {
    let (x0, x1) = interval;
    if !x0.is_finite() || !x1.is_finite() {
        return Err(Error::InvalidParams(
            "interval endpoints must be finite".into(),
        ));
    }
    if steps == 0 {
        return Err(Error::InvalidParams("steps must be positive".into()));
    }
    let (lo, hi) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
    for point in [0.0, 1.0, params.c.to_f64()] {
        if lo <= point && point <= hi {
            return Err(Error::SingularInterval { point });
        }
    }
    let eval = |x: f64| {
        candidate.eval_f64(x).ok_or_else(|| {
            Error::InvalidParams(format!(
                "candidate has non-integer exponents and cannot be evaluated at {x}"
            ))
        })
    };
    let coeffs = Coefficients::new(params);
    let (v0, d0) = eval(x0)?;
    let mut y = [v0, d0];
    let h = (x1 - x0) / steps as f64;
    let mut worst: f64 = 0.0;
    if x0 == x1 {
        return Ok(0.0);
    }
    for i in 0..steps {
        let x = x0 + h * i as f64;
        y = rk4_step(&coeffs, x, y, h);
        let exact = eval(x0 + h * (i + 1) as f64)?.0;
        worst = worst.max((y[0] - exact).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn r(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn worked() -> (HeunParams, OffsetSeries) {
        (
            HeunParams::parse("-1", "2", "0", "1", "1", "0", "2").unwrap(),
            OffsetSeries::polynomial(&[r("-3/2"), r("1")]),
        )
    }

    #[test]
    fn polynomial_solution_tracks() {
        let (p, y) = worked();
        let dev = numeric_check(&p, &y, (2.5, 3.5), 10_000).unwrap();
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn wrong_candidate_drifts() {
        let (p, _) = worked();
        let wrong = OffsetSeries::polynomial(&[r("-1"), r("1")]);
        let dev = numeric_check(&p, &wrong, (2.5, 3.5), 1_000).unwrap();
        assert!(dev > 1e-3, "{dev}");
    }

    #[test]
    fn zero_length_interval() {
        let (p, y) = worked();
        assert_eq!(numeric_check(&p, &y, (3.0, 3.0), 10).unwrap(), 0.0);
    }

    #[test]
    fn singular_points_are_rejected() {
        let (p, y) = worked();
        assert_eq!(
            numeric_check(&p, &y, (0.5, 1.5), 100),
            Err(Error::SingularInterval { point: 1.0 })
        );
        assert_eq!(
            numeric_check(&p, &y, (3.0, 1.5), 100),
            Err(Error::SingularInterval { point: 2.0 })
        );
        assert!(matches!(
            numeric_check(&p, &y, (-1.0, 0.0), 100),
            Err(Error::SingularInterval { .. })
        ));
    }

    #[test]
    fn backwards_integration() {
        let (p, y) = worked();
        let dev = numeric_check(&p, &y, (-0.5, -3.0), 10_000).unwrap();
        assert!(dev < 1e-8, "{dev}");
    }
}
