#![allow(dead_code)]

use heun::heun::HeunParams;
use heun::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(text: &str) -> Scalar {
    text.parse().unwrap()
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `num / den` with `num` in `-span..=span` and `den` in `1..=max_den`.
pub fn rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    let num = rng.gen_range(-span..=span);
    let den = rng.gen_range(1..=max_den);
    Scalar::ratio(num, den).unwrap()
}

pub fn nonzero(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    loop {
        let v = rational(rng, span, max_den);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A rational that is never an integer.
pub fn non_integer(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    loop {
        let v = rational(rng, span, max_den.max(2));
        if !v.is_integer() {
            return v;
        }
    }
}

/// Positive rational in `(0, span]`.
pub fn positive(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    let num = rng.gen_range(1..=span * max_den);
    let den = rng.gen_range(1..=max_den);
    Scalar::ratio(num, den).unwrap()
}

/// Singular point `c`, never 0 or 1.
pub fn c_value(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let v = nonzero(rng, 9, 4);
        if !v.is_one() {
            return v;
        }
    }
}

pub fn free_params(rng: &mut ChaCha8Rng) -> HeunParams {
    HeunParams {
        alpha: rational(rng, 9, 4),
        beta: rational(rng, 9, 4),
        gamma: rational(rng, 9, 4),
        delta: rational(rng, 9, 4),
        epsilon: rational(rng, 9, 4),
        q: rational(rng, 9, 4),
        c: c_value(rng),
        sigma: Scalar::zero(),
    }
}

/// Chooses `epsilon` so that `gamma + delta + epsilon = alpha + beta + 1`.
pub fn impose_exponent_sum(mut p: HeunParams) -> HeunParams {
    p.epsilon = &(&(&p.alpha + &p.beta) + &Scalar::one()) - &(&p.gamma + &p.delta);
    p
}

/// `(delta c + epsilon)(gamma - 1)`, written out by hand.
pub fn case_ii_q(p: &HeunParams) -> Scalar {
    &(&(&p.delta * &p.c) + &p.epsilon) * &(&p.gamma - &Scalar::one())
}

/// Interval right of every singular point, for the RK4 cross-check.
///
/// Kept far enough from `c` (relative to the size of the exponents) that the
/// second solution cannot amplify rounding error by more than a few orders.
pub fn regular_interval(p: &HeunParams) -> (f64, f64) {
    let size = [&p.alpha, &p.beta, &p.gamma, &p.delta, &p.epsilon]
        .iter()
        .map(|v| v.to_f64().abs())
        .fold(1.0, f64::max);
    let lo = p.c.to_f64().max(1.0) + 1.0 + size / 4.0;
    (lo, lo + 0.5)
}
