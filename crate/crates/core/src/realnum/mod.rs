//! Dyadic numbers, complex balls and oracle names for real inputs.

mod ball;
mod dyadic;
mod name;

pub use ball::{BallSign, BallSummary, ComplexBall};
pub use dyadic::{Dyadic, Round};
pub use name::{format_rational, ComplexName, RealName};

/// Certified sign of the real part of a ball.
pub fn sign_or_unknown(x: &ComplexBall) -> BallSign {
    x.re_sign()
}

/// `x / y` over balls.
pub fn ball_div(x: &ComplexBall, y: &ComplexBall) -> Result<ComplexBall, crate::RealError> {
    x.div(y)
}
