use num_traits::Float;

use crate::error::{Error, Result};

fn constant<F: Float>(x: f64) -> F {
    F::from(x).expect("small constants are representable")
}

/// The root `x` in `(0, 1]` of `x e^{-x} = c e^{-c}`, found by bisection
/// until the bracket stops shrinking. `x(1) = 1`.
pub fn x_of_c<F: Float>(c: F) -> Result<F> {
    let one = F::one();
    if c.is_nan() || c < one || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("x(c) needs finite c >= 1, got {:?}", c.to_f64())));
    }
    if c == one {
        return Ok(one);
    }
    // h(x) = ln x - x - (ln c - c) increases on (0, 1), from -inf to a
    // positive value since c e^{-c} < 1/e.
    let target = c.ln() - c;
    let h = |x: F| x.ln() - x - target;
    let (mut lo, mut hi) = (F::min_positive_value(), one);
    loop {
        let mid = (lo + hi) / constant(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / constant(2.0))
}

/// `delta(c) = ((c-1)(2-c) + 2(x(c)-1)^2) / (2c)` for `c` in `(1, 2]`.
pub fn delta_of_c<F: Float>(c: F) -> Result<F> {
    let (one, two) = (F::one(), constant::<F>(2.0));
    if !(c > one && c <= two) {
        return Err(Error::InvalidParameter(format!("delta(c) needs 1 < c <= 2, got {:?}", c.to_f64())));
    }
    let x = x_of_c(c)?;
    Ok(((c - one) * (two - c) + two * (x - one) * (x - one)) / (two * c))
}

/// `c` together with `x(c)` and `delta(c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CParams<F> {
    pub c: F,
    pub x: F,
    pub delta: F,
}

impl<F: Float> CParams<F> {
    pub fn new(c: F) -> Result<Self> {
        Ok(CParams { c, x: x_of_c(c)?, delta: delta_of_c(c)? })
    }
}
