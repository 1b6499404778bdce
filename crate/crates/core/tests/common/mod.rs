//! Plain reference implementations used as independent oracles: a bit-list
//! cipher written straight from the defining maps with no packing or
//! caching (only the parameter *data* is shared with the optimized path),
//! and exponential-time immunity computations that enumerate candidate
//! functions outright instead of solving linear systems.

#![allow(dead_code)] // shared across test binaries, each using a subset

use nlfsc::boolfn::BooleanFunction;
use nlfsc::params::ParameterTable;

/// Brute-force algebraic immunity: enumerate every nonzero function of
/// degree at most `d` via its ANF coefficients and test annihilation
/// pointwise. Doubly exponential; intended for `n <= 4`.
pub fn ai_brute_force(f: &BooleanFunction) -> u32 {
    let n = f.variables();
    assert!(n <= 4);
    let fc = f.complement();
    for d in 0..=n as u32 {
        let mons: Vec<u32> = (0..(1u32 << n)).filter(|m| m.count_ones() <= d).collect();
        for combo in 1u64..(1 << mons.len()) {
            let active: Vec<u32> = (0..mons.len())
                .filter(|&c| (combo >> c) & 1 == 1)
                .map(|c| mons[c])
                .collect();
            let g = BooleanFunction::from_evaluator(n, |x| {
                active.iter().fold(false, |acc, &m| acc ^ ((x & m) == m))
            })
            .unwrap();
            let annihilates =
                |t: &BooleanFunction| (0..(1u32 << n)).all(|x| !(t.value(x) && g.value(x)));
            if annihilates(f) || annihilates(&fc) {
                return d;
            }
        }
    }
    unreachable!("constant one annihilates the complement at the latest")
}

/// Brute-force fast algebraic immunity: enumerate every nonzero g with
/// `1 <= deg g < ai` directly over truth tables. Exponential; small n only.
pub fn fai_brute_force(f: &BooleanFunction, ai: u32) -> u32 {
    let n = f.variables();
    let mut best = 2 * ai;
    if ai <= 1 {
        return best;
    }
    let mons: Vec<u32> = (0..(1u32 << n)).filter(|m| m.count_ones() < ai).collect();
    assert!(mons.len() <= 20, "enumeration too large");
    for combo in 1u64..(1 << mons.len()) {
        let active: Vec<u32> = (0..mons.len())
            .filter(|&c| (combo >> c) & 1 == 1)
            .map(|c| mons[c])
            .collect();
        let deg_g = active.iter().map(|m| m.count_ones()).max().unwrap();
        if deg_g < 1 {
            continue;
        }
        let g = BooleanFunction::from_evaluator(n, |x| {
            active.iter().fold(false, |acc, &m| acc ^ ((x & m) == m))
        })
        .unwrap();
        let fg = BooleanFunction::from_evaluator(n, |x| f.value(x) & g.value(x)).unwrap();
        best = best.min(deg_g + fg.degree());
    }
    best
}

/// State is a `Vec<bool>` with `u[idx] = u_idx` (`u_{L-1}` last written).
pub struct NaiveCipher {
    pub kappa: usize,
    pub l: usize,
    pub m: usize,
    c: Vec<bool>,
    d: Vec<bool>,
    i_taps: Vec<usize>,
    j_taps: Vec<usize>,
}

/// Hex digits to bits in written order: element 0 is the MSB of the first
/// digit.
pub fn hex_bits_left_to_right(hex: &str) -> Vec<bool> {
    let mut out = Vec::with_capacity(hex.len() * 4);
    for ch in hex.chars() {
        let v = ch.to_digit(16).expect("hex digit");
        for k in (0..4).rev() {
            out.push((v >> k) & 1 == 1);
        }
    }
    out
}

/// Key/IV hex to indexed bits: `out[j] = k_j`, first hex digit carrying the
/// top four.
pub fn hex_to_key_bits(hex: &str, kappa: usize) -> Vec<bool> {
    assert_eq!(hex.len() * 4, kappa);
    let l2r = hex_bits_left_to_right(hex);
    (0..kappa).map(|j| l2r[kappa - 1 - j]).collect()
}

/// Packs bits in emission order, first bit into the MSB of the first byte.
pub fn stream_bits_to_hex(bits: &[bool]) -> String {
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (k, &b) in bits.iter().enumerate() {
        if b {
            bytes[k / 8] |= 0x80 >> (k % 8);
        }
    }
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl NaiveCipher {
    pub fn for_level(level: u32) -> Self {
        let row = ParameterTable::get().row(level).expect("known level");
        let kappa = row.kappa as usize;
        let l = row.l;
        // connection coefficients from the exponent list
        let mut c = vec![false; l];
        for part in row.poly.to_exponents().split(',') {
            let e: usize = part.parse().unwrap();
            if e < l {
                c[e] = true;
            }
        }
        let mut d = vec![false; l];
        for &p in &row.d_positions {
            d[p] = true;
        }
        let px = hex_bits_left_to_right(&row.pos_x_hex);
        let py = hex_bits_left_to_right(&row.pos_y_hex);
        let i_taps: Vec<usize> = (0..kappa).filter(|&q| px[q]).collect();
        let j_taps: Vec<usize> = (0..kappa).filter(|&q| py[q]).map(|q| kappa + q).collect();
        NaiveCipher {
            kappa,
            l,
            m: row.m,
            c,
            d,
            i_taps,
            j_taps,
        }
    }

    fn maj(bits: &[bool]) -> bool {
        let wt = bits.iter().filter(|&&b| b).count();
        wt >= bits.len().div_ceil(2)
    }

    pub fn filter(&self, u: &[bool]) -> bool {
        let w = u[self.l - 2 * self.kappa];
        let x: Vec<bool> = self.i_taps.iter().map(|&i| u[self.l - 1 - i]).collect();
        let y: Vec<bool> = self.j_taps.iter().map(|&j| u[self.l - 1 - j]).collect();
        let mut ip = false;
        for p in 0..self.m {
            ip ^= x[self.m - 1 - p] & y[p];
        }
        !(w ^ ip ^ Self::maj(&x))
    }

    fn nb(&self, u: &[bool]) -> bool {
        self.c
            .iter()
            .zip(u)
            .fold(false, |acc, (&ci, &ui)| acc ^ (ci & ui))
    }

    pub fn next(&self, u: &[bool]) -> Vec<bool> {
        let fb = self.nb(u);
        let mut w: Vec<bool> = u[1..].to_vec();
        w.push(fb);
        w
    }

    pub fn ir(&self, u: &[bool]) -> Vec<bool> {
        let b = self.filter(u);
        let mut w = self.next(u);
        for (wi, &di) in w.iter_mut().zip(&self.d) {
            if di {
                *wi ^= b;
            }
        }
        w
    }

    pub fn init_state(&self, key: &[bool], iv: &[bool]) -> Vec<bool> {
        let (l, k) = (self.l, self.kappa);
        let mut u = vec![false; l];
        for q in 0..k {
            u[l - 1 - q] = key[k - 1 - q];
            u[l - k - 1 - q] = iv[k - 1 - q];
        }
        for (idx, slot) in u.iter_mut().take(l - 2 * k).enumerate() {
            *slot = idx % 2 == 0;
        }
        u
    }

    pub fn initialize(&self, key: &[bool], iv: &[bool]) -> Vec<bool> {
        let mut u = self.init_state(key, iv);
        for _ in 0..2 * self.kappa {
            u = self.ir(u.as_slice());
        }
        u
    }

    pub fn keystream(&self, mut u: Vec<bool>, nbits: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(nbits);
        for _ in 0..nbits {
            out.push(self.filter(&u));
            u = self.next(&u);
        }
        out
    }
}
