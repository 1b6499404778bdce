//! Closed-form attack-margin calculators: the linear-complexity bound, the
//! three fast-correlation conditions, algebraic and fast-algebraic attack
//! complexities, the state-guessing margin, and structural annotations,
//! aggregated into a per-level report.
//!
//! All binomial sums use exact big integers; floating point enters only at
//! the final logarithm.

use crate::cipher::CipherParams;
use crate::error::{Error, Result};
use crate::tapsearch::{self, FsgaMargin, PosVector};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// Base-2 logarithm of an exact big integer, relative error below 2^-50.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let top = (x >> (bits - 53)).to_u64().unwrap();
    (top as f64).log2() + (bits - 53) as f64
}

/// Prefix sums `S_k = sum_{i=0}^{k} C(l, i)` for `k = 0..=a`.
fn binom_prefix_sums(l: u64, a: u64) -> Vec<BigUint> {
    let mut sums = Vec::with_capacity(a as usize + 1);
    let mut term = BigUint::one();
    let mut acc = BigUint::one();
    sums.push(acc.clone());
    for i in 0..a {
        term = term * BigUint::from(l - i) / BigUint::from(i + 1);
        acc += &term;
        sums.push(acc.clone());
    }
    sums
}

/// `log2 sum_{i=0}^{a} C(l, i)`, exact integer arithmetic inside.
pub fn log2_binom_sum(l: u64, a: u64) -> f64 {
    assert!(a <= l, "partial sum bound exceeds l");
    log2_biguint(binom_prefix_sums(l, a).last().unwrap())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Linear-complexity margin: `C(L, 2^{floor(log2 m)})` against the keystream
/// budget `2^b`. `l_is_prime` qualifies the bound (the complexity equals the
/// binomial only for prime register lengths).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AlphaMargin {
    pub filter_degree: u32,
    pub log2_alpha: f64,
    pub pass: bool,
    pub l_is_prime: bool,
}

pub fn alpha(l: u64, m: u64, b: u32) -> AlphaMargin {
    assert!(m >= 1 && l >= m);
    let deg = 1u64 << (63 - m.leading_zeros() as u64);
    let binom = {
        let mut term = BigUint::one();
        for i in 0..deg {
            term = term * BigUint::from(l - i) / BigUint::from(i + 1);
        }
        term
    };
    let log2_alpha = log2_biguint(&binom);
    AlphaMargin {
        filter_degree: deg as u32,
        log2_alpha,
        pass: log2_alpha > b as f64,
        l_is_prime: is_prime(l),
    }
}

/// The three fast-correlation resistance conditions, evaluated literally.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FcaConditions {
    /// low-weight parity checks: `L > 2m` and either `B < 2m` or
    /// `kappa < (2mL + B(B - 4m)) / (B - 2m)`
    pub low_weight_ok: bool,
    /// general decoding: `B <= 2(2m + 3)`
    pub decode_ok: bool,
    /// filter-specific decoding: `B < (kappa + 4m) / 2`
    pub cf_ok: bool,
}

pub fn fca_conditions(l: u64, m: u64, b: u32, kappa: u32) -> FcaConditions {
    let b = b as u64;
    let low_weight_ok = l > 2 * m
        && (b <= 2 * m || {
            // b > 2m: the decoding exponent must stay above kappa
            let num = (2 * m * l) as f64 + b as f64 * (b as f64 - 4.0 * m as f64);
            (kappa as f64) < num / (b - 2 * m) as f64
        });
    FcaConditions {
        low_weight_ok,
        decode_ok: b <= 2 * (2 * m + 3),
        cf_ok: (b as f64) < (kappa as u64 + 4 * m) as f64 / 2.0,
    }
}

/// `log2` of the algebraic-attack complexity
/// `(sum_{i<=ceil(m/2)} C(L, i))^{2.8}`.
pub fn beta(l: u64, m: u64) -> f64 {
    2.8 * log2_binom_sum(l, m.div_ceil(2))
}

/// Fast-algebraic-attack complexity: exact minimisation of
/// `S_e * S_d` over `1 <= e <= a-1`, `d = a + 1 - e`, with `a = ceil(m/2)`.
///
/// `log2_d_sum` carries the bare `d`-factor at `e = 1` on its own; the
/// minimised product sits about `log2(L + 1)` above it. Both figures appear
/// in reports.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GammaResult {
    pub a: u64,
    pub minimizer_e: u64,
    pub log2_min_product: f64,
    pub log2_d_sum: f64,
}

pub fn gamma(l: u64, m: u64) -> Result<GammaResult> {
    let a = m.div_ceil(2);
    if a < 2 || a > l {
        return Err(Error::InvalidArgument(
            "fast-algebraic margin needs 2 <= ceil(m/2) <= L".into(),
        ));
    }
    let sums = binom_prefix_sums(l, a);
    let mut best: Option<(BigUint, u64)> = None;
    for e in 1..a {
        let d = a + 1 - e;
        let product = &sums[e as usize] * &sums[d as usize];
        match &best {
            Some((cur, _)) if *cur <= product => {}
            _ => best = Some((product, e)),
        }
    }
    let (product, minimizer_e) = best.unwrap();
    Ok(GammaResult {
        a,
        minimizer_e,
        log2_min_product: log2_biguint(&product),
        log2_d_sum: log2_biguint(&sums[a as usize]),
    })
}

/// Attack margins and structural annotations for one level at keystream
/// budget `2^b`.
#[derive(Clone, Debug, Serialize)]
pub struct SecurityReport {
    pub level: u32,
    pub b: u32,
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub lb_exponent: u32,
    pub alpha: AlphaMargin,
    pub fca: FcaConditions,
    pub log2_beta: f64,
    pub beta_pass: bool,
    pub gamma: GammaResult,
    pub gamma_pass: bool,
    pub gamma_note: String,
    pub fsga: FsgaMargin,
    /// Gap between the outermost taps; a guess of `chi` bits reconstructs
    /// the state, so `chi > kappa` is required.
    pub chi: u32,
    pub chi_pass: bool,
    /// State is at least twice the key size (time/memory trade-off margin).
    pub state_at_least_twice_key: bool,
    /// The filter XORs a fresh state bit onto the rest, so a uniformly
    /// random input sequence yields a uniformly random output sequence.
    pub filter_xors_fresh_variable: bool,
    pub overall_pass: bool,
}

pub fn report(p: &CipherParams, b: u32) -> Result<SecurityReport> {
    let (l, m, kappa) = (p.l as u64, p.m as u64, p.kappa);
    let n = 2 * p.m + 1;
    let alpha_m = alpha(l, m, b);
    let fca = fca_conditions(l, m, b, kappa);
    let log2_beta = beta(l, m);
    let beta_pass = log2_beta > kappa as f64;
    let gamma_r = gamma(l, m)?;
    let gamma_pass = gamma_r.log2_min_product > kappa as f64;
    let gamma_note = format!(
        "minimised product 2^{:.2} (e = {}); bare d-factor alone is 2^{:.2}",
        gamma_r.log2_min_product, gamma_r.minimizer_e, gamma_r.log2_d_sum
    );
    let pos = PosVector::from_pos_strings(kappa, p.l, &p.pos_x, &p.pos_y)?;
    let delta = tapsearch::delta_of(&pos);
    let fsga = tapsearch::fsga_margin(n, p.l, delta, kappa);
    let chi = 2 * kappa - 1;
    let chi_pass = chi > kappa;
    let state_at_least_twice_key = p.l >= 2 * kappa as usize;
    let overall_pass = alpha_m.pass
        && fca.low_weight_ok
        && fca.decode_ok
        && fca.cf_ok
        && beta_pass
        && gamma_pass
        && fsga.pass
        && chi_pass
        && state_at_least_twice_key;
    Ok(SecurityReport {
        level: kappa,
        b,
        l: p.l,
        m: p.m,
        n,
        lb_exponent: p.m as u32 + 1,
        alpha: alpha_m,
        fca,
        log2_beta,
        beta_pass,
        gamma: gamma_r,
        gamma_pass,
        gamma_note,
        fsga,
        chi,
        chi_pass,
        state_at_least_twice_key,
        filter_xors_fresh_variable: true,
        overall_pass,
    })
}
