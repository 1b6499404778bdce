//! Circuit-size model: the adder-tree recursion for Hamming weight, the
//! threshold comparator on the weight bits, and NAND-unit pricing for the
//! whole cipher.
//!
//! Unit prices: XOR 2.5, AND/OR 1.5, half adder 5, full adder 9, flip-flop 8
//! (12 under the alternative convention).

use crate::cipher::CipherParams;
use crate::error::{Error, Result};
use serde::Serialize;

pub const XOR_UNITS: f64 = 2.5;
pub const AND_OR_UNITS: f64 = 1.5;
pub const HALF_ADDER_UNITS: f64 = 5.0;
pub const FULL_ADDER_UNITS: f64 = 9.0;
pub const FLIPFLOP_UNITS: f64 = 8.0;
pub const FLIPFLOP_UNITS_ALT: f64 = 12.0;

/// Adders needed to compute the Hamming weight of an m-bit string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdderCount {
    pub full: u32,
    pub half: u32,
    /// Bit width of the produced weight: `ceil(log2(m + 1))`.
    pub width: u32,
}

/// Weight-circuit recursion: split `m = m1 + m2 + 1` with `m1 + 1` the
/// largest power of two at most `m`, compute both partial weights, then add
/// them together with the remaining bit. Adding an `a`-bit and a `b`-bit
/// value (`a >= b`) plus one extra bit costs `b` full and `a - b` half
/// adders.
pub fn weight_adders(m: u32) -> Result<AdderCount> {
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(adders(m))
}

fn adders(m: u32) -> AdderCount {
    match m {
        0 => AdderCount {
            full: 0,
            half: 0,
            width: 0,
        },
        1 => AdderCount {
            full: 0,
            half: 0,
            width: 1,
        },
        2 => AdderCount {
            full: 0,
            half: 1,
            width: 2,
        },
        3 => AdderCount {
            full: 1,
            half: 0,
            width: 2,
        },
        _ => {
            let m1 = (1u32 << (31 - m.leading_zeros())) - 1;
            let m2 = m - m1 - 1;
            let a = adders(m1);
            let b = adders(m2);
            debug_assert!(a.width >= b.width);
            AdderCount {
                full: a.full + b.full + b.width,
                half: a.half + b.half + (a.width - b.width),
                width: a.width + 1,
            }
        }
    }
}

/// Gate counts `(or, and)` of the comparator chain deciding
/// `weight >= ceil(m/2)` over the weight bits, low bit first: an AND where
/// the threshold bit is 1, an OR where it is 0, with everything at or below
/// the lowest set threshold bit free.
pub fn threshold_circuit(m: u32) -> Result<(u32, u32)> {
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    let k = m.div_ceil(2);
    let width = adders(m).width;
    let (mut or_gates, mut and_gates) = (0, 0);
    for bit in k.trailing_zeros() + 1..width {
        if (k >> bit) & 1 == 1 {
            and_gates += 1;
        } else {
            or_gates += 1;
        }
    }
    Ok((or_gates, and_gates))
}

/// Evaluates the comparator chain on a concrete weight value.
pub fn threshold_decides(m: u32, weight: u32) -> bool {
    let k = m.div_ceil(2);
    let width = adders(m).width;
    let t = k.trailing_zeros();
    let mut r = (weight >> t) & 1 == 1;
    for bit in t + 1..width {
        let w = (weight >> bit) & 1 == 1;
        if (k >> bit) & 1 == 1 {
            r &= w;
        } else {
            r |= w;
        }
    }
    r
}

/// NAND-unit estimate for the whole filtering function on `2m + 1`
/// variables: `m + ceil(log2 m)` AND/OR gates, `m - 1` XOR gates for the
/// inner product, the weight adders, and two more XOR gates for the `w`
/// input and the output complement.
pub fn filter_units(m: u32) -> f64 {
    let a = adders(m);
    let log_m = if m <= 1 { 0 } else { (m - 1).ilog2() + 1 };
    AND_OR_UNITS * (m + log_m) as f64
        + XOR_UNITS * (m - 1) as f64
        + FULL_ADDER_UNITS * a.full as f64
        + HALF_ADDER_UNITS * a.half as f64
        + 2.0 * XOR_UNITS
}

/// NAND-unit breakdown for one cipher instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GateEstimate {
    pub lfsr_units: f64,
    pub filter_units: f64,
    pub nb_units: f64,
    pub ir_units: f64,
    pub total_units: f64,
}

/// Prices the four components: flip-flops for the register, the filter, one
/// XOR per low-order connection coefficient, one XOR per feedback position.
pub fn cipher_units(p: &CipherParams, flipflop_units: f64) -> GateEstimate {
    let lfsr = flipflop_units * p.l as f64;
    let filter = filter_units(p.m as u32);
    let nb = XOR_UNITS * p.poly.tap_count() as f64;
    let ir = XOR_UNITS * p.dvec.weight() as f64;
    GateEstimate {
        lfsr_units: lfsr,
        filter_units: filter,
        nb_units: nb,
        ir_units: ir,
        total_units: lfsr + filter + nb + ir,
    }
}
