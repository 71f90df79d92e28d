//! Cyclic shifts `L|k> = |k+1 mod N>` and `R|k> = |k-1 mod N>`.
//!
//! Cascade: from the top bit down, flip bit `j` when all lower bits read 1
//! (0 for `R`), then flip bit 0.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSpec {
    pub direction: Direction,
    #[serde(default = "one")]
    pub power: u64,
}

fn one() -> u64 {
    1
}

impl ShiftSpec {
    pub fn left(power: u64) -> Self {
        ShiftSpec { direction: Direction::Left, power }
    }

    pub fn right(power: u64) -> Self {
        ShiftSpec { direction: Direction::Right, power }
    }
}

/// One application of the base shift.
pub fn shift_once(n: usize, direction: Direction) -> Circuit {
    let polarity = direction == Direction::Left;
    let mut c = Circuit::new(n);
    for j in (1..n).rev() {
        c.mcx((0..j).map(|q| Control { qubit: q, polarity }).collect(), j);
    }
    if n > 0 {
        c.x(0);
    }
    c
}

/// `power mod 2^n` repetitions of the base shift.
pub fn build_shift(n: usize, spec: ShiftSpec) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one work qubit".into()));
    }
    if n >= 64 {
        return Err(Error::InvalidParameter(format!("{n} qubits is too wide for a shift")));
    }
    let reps = spec.power % (1u64 << n);
    let base = shift_once(n, spec.direction);
    let mut c = Circuit::new(n);
    for _ in 0..reps {
        c.append(&base)?;
    }
    Ok(c)
}
