//! The concrete filtering function family: majority, bit reversal, the
//! Maiorana-McFarland bent function `MM_2m(X, Y) = <rev(X), Y> + Maj_m(X)`,
//! its odd-variable extension `MM_2m+1 = W + MM_2m`, and the filter
//! `f_2m+1 = 1 + MM_2m+1`.
//!
//! Evaluation works directly on packed bits at any `m`; truth tables are
//! only materialised through [`small_instance`].

use crate::bits::BitVec;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

/// One input to the filter: the single bit `w` plus the two `m`-bit halves.
#[derive(Clone, Debug)]
pub struct FilterInput {
    pub w: bool,
    pub x: BitVec,
    pub y: BitVec,
}

impl FilterInput {
    pub fn new(w: bool, x: BitVec, y: BitVec) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(FilterInput { w, x, y })
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }
}

/// Majority with ties resolved to one: 1 iff `wt(x) >= ceil(m/2)`.
///
/// For odd `m` (every cipher instance) this is the strict rule
/// `wt(x) > floor(m/2)`; the tie rule only matters for even `m` and is the
/// one under which the small-instance algebraic immunities reproduce.
pub fn maj(x: &BitVec) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = x.len();
    Ok(x.weight() as usize >= m.div_ceil(2))
}

/// Exact reversal of a bit string; an involution.
pub fn rev(x: &BitVec) -> BitVec {
    let m = x.len();
    let mut out = BitVec::zeros(m);
    for j in 0..m {
        out.set(m - 1 - j, x.get(j));
    }
    out
}

/// `MM_2m(x, y) = x_m y_1 + x_{m-1} y_2 + ... + x_1 y_m + Maj_m(x)`.
///
/// Bit `j` of the arguments holds `X_{m-j}` / `Y_{m-j}` (written order, the
/// first variable leftmost).
pub fn mm_even(x: &BitVec, y: &BitVec) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    // <rev(X), Y> pairs X_p with Y_{m+1-p}.
    Ok(rev(x).and_parity(y) ^ maj(x)?)
}

/// The filtering function `f_2m+1(w, x, y) = 1 + w + MM_2m(x, y)`; maps the
/// all-zero input to 1.
pub fn f_eval(input: &FilterInput) -> bool {
    !(input.w ^ mm_even(&input.x, &input.y).expect("validated on construction"))
}

/// Truth table of `MM_n` for `4 <= n <= 16`, variable order
/// `(W,) X_1..X_m, Y_1..Y_m` with `X_1` (or `W`) in the most significant
/// index bit.
pub fn small_instance(n: usize) -> Result<BooleanFunction> {
    if !(4..=16).contains(&n) {
        return Err(Error::VarCountOutOfRange(n, 4, 16));
    }
    let m = n / 2;
    let odd = n % 2 == 1;
    BooleanFunction::from_evaluator(n, |idx| {
        let w = if odd {
            (idx >> (n - 1)) & 1 == 1
        } else {
            false
        };
        let xbits = (idx >> m) & ((1 << m) - 1); // X_1..X_m, X_1 high
        let ybits = idx & ((1 << m) - 1);
        // <rev(X), Y> pairs X_p with Y_{m+1-p}: reverse one half before
        // taking the bitwise AND parity.
        let ip = (xbits & reverse_low_bits(ybits, m)).count_ones() & 1 == 1;
        let majx = xbits.count_ones() as usize >= m.div_ceil(2);
        w ^ ip ^ majx
    })
}

fn reverse_low_bits(v: u32, m: usize) -> u32 {
    v.reverse_bits() >> (32 - m)
}
