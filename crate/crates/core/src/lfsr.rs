//! Galois-field shift register: connection polynomial, next-bit and
//! next-state maps with their inverses, and an irreducibility check for the
//! embedded connection polynomials.
//!
//! A state `(u_{L-1}, ..., u_0)` stores `u_j` at bit `j`.

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Connection polynomial `x^L + c_{L-1} x^{L-1} + ... + c_1 x + c_0` over
/// GF(2), with `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPoly {
    degree: usize,
    c: BitVec, // bit i = c_i, i < degree
}

impl ConnectionPoly {
    /// Parses an exponent list such as `"163,7,6,3,0"`. The list must
    /// contain the degree, the exponent 0, and no duplicates.
    pub fn from_exponents(s: &str) -> Result<Self> {
        let mut exps = Vec::new();
        for part in s.split(',') {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::BadPolynomial(s.to_string()))?;
            if exps.contains(&e) {
                return Err(Error::BadPolynomial(s.to_string()));
            }
            exps.push(e);
        }
        let &degree = exps
            .iter()
            .max()
            .ok_or_else(|| Error::BadPolynomial(s.to_string()))?;
        if degree < 2 || !exps.contains(&0) {
            return Err(Error::BadPolynomial(s.to_string()));
        }
        let mut c = BitVec::zeros(degree);
        for &e in &exps {
            if e < degree {
                c.set(e, true);
            }
        }
        Ok(ConnectionPoly { degree, c })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The coefficient vector `(c_{L-1}, ..., c_0)`; bit `i` is `c_i`.
    pub fn coefficients(&self) -> &BitVec {
        &self.c
    }

    /// Number of nonzero coefficients below the leading term.
    pub fn tap_count(&self) -> u32 {
        self.c.weight()
    }

    pub fn to_exponents(&self) -> String {
        let mut parts = vec![self.degree.to_string()];
        for e in (0..self.degree).rev() {
            if self.c.get(e) {
                parts.push(e.to_string());
            }
        }
        parts.join(",")
    }

    /// Rabin irreducibility test: `x^{2^L} = x (mod tau)` together with
    /// `gcd(tau, x^{2^{L/p}} - x) = 1` for every prime `p` dividing `L`.
    /// For prime `L` the gcd step degenerates to `tau(0) != 0, tau(1) != 0`.
    pub fn is_irreducible(&self) -> bool {
        let l = self.degree;
        let tau = self.dense();
        for p in distinct_prime_factors(l) {
            let mut h = poly_x();
            for _ in 0..l / p {
                h = poly_sqr_mod(&h, &tau);
            }
            poly_xor(&mut h, &poly_x());
            if poly_deg(&poly_gcd(tau.clone(), h)) != Some(0) {
                return false;
            }
        }
        let mut h = poly_x();
        for _ in 0..l {
            h = poly_sqr_mod(&h, &tau);
        }
        h == poly_x()
    }

    fn dense(&self) -> Vec<u64> {
        let mut words = vec![0u64; (self.degree + 1).div_ceil(64)];
        for i in 0..self.degree {
            if self.c.get(i) {
                words[i >> 6] |= 1 << (i & 63);
            }
        }
        words[self.degree >> 6] |= 1 << (self.degree & 63);
        words
    }
}

/// L-bit register contents; bit `j` is `u_j` (`u_{L-1}` leftmost).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrState {
    bits: BitVec,
}

impl LfsrState {
    pub fn new(bits: BitVec) -> Self {
        LfsrState { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        self.bits.get(j)
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut BitVec {
        &mut self.bits
    }

    /// Advances in place: shift toward `u_0` and insert the feedback bit.
    pub fn step(&mut self, p: &ConnectionPoly) {
        debug_assert_eq!(self.bits.len(), p.degree);
        let fb = p.c.and_parity(&self.bits);
        self.bits.shr1();
        self.bits.set(p.degree - 1, fb);
    }
}

fn check_len(p: &ConnectionPoly, u: &LfsrState) -> Result<()> {
    if u.bits.len() != p.degree {
        return Err(Error::LengthMismatch {
            expected: p.degree,
            got: u.bits.len(),
        });
    }
    Ok(())
}

/// Next bit of the register: `c_{L-1} u_{L-1} + ... + c_0 u_0`.
pub fn nb(p: &ConnectionPoly, u: &LfsrState) -> Result<bool> {
    check_len(p, u)?;
    Ok(p.c.and_parity(&u.bits))
}

/// `(nb(u), u_{L-1}, ..., u_1)`.
pub fn next_state(p: &ConnectionPoly, u: &LfsrState) -> Result<LfsrState> {
    check_len(p, u)?;
    let mut s = u.clone();
    s.step(p);
    Ok(s)
}

/// Exact inverse of [`next_state`]; relies on `c_0 = 1`.
pub fn prev_state(p: &ConnectionPoly, w: &LfsrState) -> Result<LfsrState> {
    check_len(p, w)?;
    let l = p.degree;
    // u_i = w_{i-1} for i >= 1, so the tap sum over u_1..u_{L-1} reads off w.
    let mut c_shift = p.c.clone();
    c_shift.shr1();
    let u0 = w.bits.get(l - 1) ^ c_shift.and_parity(&w.bits);
    let mut bits = w.bits.clone();
    bits.shl1();
    bits.set(0, u0);
    Ok(LfsrState { bits })
}

// -- dense GF(2)[x] helpers for the irreducibility test --

fn poly_x() -> Vec<u64> {
    vec![2]
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    for (i, w) in a.iter().enumerate().rev() {
        if *w != 0 {
            return Some(64 * i + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

fn poly_xor(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// `a ^= b << k`
fn poly_xor_shifted(a: &mut [u64], b: &[u64], k: usize) {
    let (kw, kb) = (k / 64, (k % 64) as u32);
    for (i, &w) in b.iter().enumerate() {
        if w == 0 {
            continue;
        }
        a[i + kw] ^= w << kb;
        if kb > 0 && i + kw + 1 < a.len() {
            a[i + kw + 1] ^= w >> (64 - kb);
        }
    }
}

fn poly_mod(a: &mut [u64], m: &[u64]) {
    let dm = poly_deg(m).expect("zero modulus");
    while let Some(da) = poly_deg(a) {
        if da < dm {
            break;
        }
        poly_xor_shifted(a, m, da - dm);
    }
}

fn poly_sqr_mod(a: &[u64], m: &[u64]) -> Vec<u64> {
    let da = poly_deg(a).unwrap_or(0);
    let mut sq = vec![0u64; (2 * da + 2).div_ceil(64).max(m.len())];
    for i in 0..=da {
        if (a[i >> 6] >> (i & 63)) & 1 == 1 {
            sq[(2 * i) >> 6] |= 1 << ((2 * i) & 63);
        }
    }
    poly_mod(&mut sq, m);
    sq.truncate(m.len());
    sq.resize(m.len().max(1), 0);
    normalize(sq)
}

fn normalize(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    loop {
        if poly_deg(&b).is_none() {
            return normalize(a);
        }
        poly_mod(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_from_str(s: &str) -> LfsrState {
        // written order: first char is u_{L-1}
        let l = s.len();
        let mut bits = BitVec::zeros(l);
        for (q, ch) in s.chars().enumerate() {
            bits.set(l - 1 - q, ch == '1');
        }
        LfsrState::new(bits)
    }

    #[test]
    fn exponent_list_round_trip() {
        let p = ConnectionPoly::from_exponents("163,7,6,3,0").unwrap();
        assert_eq!(p.degree(), 163);
        assert_eq!(p.tap_count(), 4);
        assert_eq!(p.to_exponents(), "163,7,6,3,0");
        assert!(ConnectionPoly::from_exponents("4,1").is_err()); // missing 0
        assert!(ConnectionPoly::from_exponents("4,1,1,0").is_err()); // duplicate
        assert!(ConnectionPoly::from_exponents("nope").is_err());
    }

    #[test]
    fn nb_toy_values() {
        let p = ConnectionPoly::from_exponents("4,1,0").unwrap();
        assert!(!nb(&p, &state_from_str("1000")).unwrap());
        assert!(!nb(&p, &state_from_str("1011")).unwrap());
        assert!(nb(&p, &state_from_str("1010")).unwrap());
        let p163 = ConnectionPoly::from_exponents("163,7,6,3,0").unwrap();
        let ones = {
            let mut b = BitVec::zeros(163);
            for j in 0..163 {
                b.set(j, true);
            }
            LfsrState::new(b)
        };
        assert!(!nb(&p163, &ones).unwrap(), "even number of taps");
    }

    #[test]
    fn next_state_shifts() {
        let p = ConnectionPoly::from_exponents("4,1,0").unwrap();
        let s = next_state(&p, &state_from_str("1000")).unwrap();
        assert_eq!(s, state_from_str("0100"));
        assert!(nb(&p, &state_from_str("0000000000")).is_err());
    }

    #[test]
    fn toy_full_period() {
        // primitive polynomials of degree 4 and 8: the nonzero orbit covers
        // all 2^L - 1 states and never touches the zero state
        for (exps, l, expect) in [("4,1,0", 4usize, 15u32), ("8,4,3,2,0", 8, 255)] {
            let p = ConnectionPoly::from_exponents(exps).unwrap();
            let mut bits = BitVec::zeros(l);
            bits.set(0, true);
            let start = LfsrState::new(bits);
            let mut s = start.clone();
            let mut period = 0;
            loop {
                s = next_state(&p, &s).unwrap();
                period += 1;
                assert!(s.bits().weight() > 0, "zero state reached");
                if s == start {
                    break;
                }
                assert!(period <= expect + 1, "no repeat found for {exps}");
            }
            assert_eq!(period, expect, "{exps}");
        }
    }

    #[test]
    fn prev_inverts_next() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(9);
        for exps in ["61,5,2,1,0", "257,7,5,4,3,2,0"] {
            let p = ConnectionPoly::from_exponents(exps).unwrap();
            let l = p.degree();
            for _ in 0..1000 {
                let mut bits = BitVec::zeros(l);
                for j in 0..l {
                    bits.set(j, rng.gen());
                }
                let u = LfsrState::new(bits);
                let w = next_state(&p, &u).unwrap();
                assert_eq!(prev_state(&p, &w).unwrap(), u);
                assert_eq!(next_state(&p, &prev_state(&p, &u).unwrap()).unwrap(), u);
            }
        }
    }

    #[test]
    fn nb_is_linear() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(10);
        let p = ConnectionPoly::from_exponents("61,5,2,1,0").unwrap();
        for _ in 0..100 {
            let mut a = BitVec::zeros(61);
            let mut b = BitVec::zeros(61);
            for j in 0..61 {
                a.set(j, rng.gen());
                b.set(j, rng.gen());
            }
            let mut ab = a.clone();
            ab.xor_assign(&b);
            let (sa, sb, sab) = (LfsrState::new(a), LfsrState::new(b), LfsrState::new(ab));
            assert_eq!(
                nb(&p, &sab).unwrap(),
                nb(&p, &sa).unwrap() ^ nb(&p, &sb).unwrap()
            );
        }
    }

    #[test]
    fn irreducibility() {
        assert!(ConnectionPoly::from_exponents("4,1,0")
            .unwrap()
            .is_irreducible());
        // (x^2 + x + 1)^2
        assert!(!ConnectionPoly::from_exponents("4,2,0")
            .unwrap()
            .is_irreducible());
        assert!(ConnectionPoly::from_exponents("2,1,0")
            .unwrap()
            .is_irreducible());
        assert!(ConnectionPoly::from_exponents("3,1,0")
            .unwrap()
            .is_irreducible());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive
        assert!(ConnectionPoly::from_exponents("4,3,2,1,0")
            .unwrap()
            .is_irreducible());
        // x^5 + x + 1 = (x^2 + x + 1)(x^3 + x^2 + 1)
        assert!(!ConnectionPoly::from_exponents("5,1,0")
            .unwrap()
            .is_irreducible());
    }
}
