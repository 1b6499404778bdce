//! The stream cipher itself: parameter loading, tap decoding, the invertible
//! initialisation round, and the keystream phase with its 2^64-bit cap.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::lfsr::{next_state, ConnectionPoly, LfsrState};
use crate::mmfunc::FilterInput;
use crate::params::{self, ParameterTable};
use serde::Serialize;

/// Hard limit on keystream bits per key/IV pair.
pub const KEYSTREAM_CAP: u128 = 1 << 64;

/// Everything needed to instantiate one cipher: one row of the embedded
/// parameter table.
#[derive(Clone, Debug)]
pub struct CipherParams {
    pub kappa: u32,
    pub l: usize,
    pub m: usize,
    pub poly: ConnectionPoly,
    pub pos_x: BitVec,
    pub pos_y: BitVec,
    pub dvec: BitVec,
    pub mu: u32,
}

/// JSON self-description of a parameter set.
#[derive(Debug, Serialize)]
pub struct ParamsDescription {
    pub level: u32,
    pub l: usize,
    pub m: usize,
    pub poly: String,
    pub pos_x: String,
    pub pos_y: String,
    pub d: Vec<usize>,
}

impl CipherParams {
    /// Loads and validates one of the six embedded levels.
    pub fn load(level: u32) -> Result<Self> {
        let row = ParameterTable::get().row(level)?;
        if let Some(v) = params::check_row(row).iter().find(|v| !v.pass) {
            return Err(Error::BadParams {
                level,
                reason: format!("{}: {}", v.check, v.detail),
            });
        }
        Ok(CipherParams {
            kappa: row.kappa,
            l: row.l,
            m: row.m,
            poly: row.poly.clone(),
            pos_x: row.pos_x.clone(),
            pos_y: row.pos_y.clone(),
            dvec: row.dvec(),
            mu: params::mu(row.kappa),
        })
    }

    /// Full L-bit tap string (X taps leftmost, then Y taps, W tap at
    /// `l - 2 kappa`).
    pub fn pos(&self) -> BitVec {
        let (l, kappa) = (self.l, self.kappa as usize);
        let mut pos = BitVec::zeros(l);
        for r in 0..kappa {
            if self.pos_x.get(r) {
                pos.set(l - kappa + r, true);
            }
            if r >= 1 && self.pos_y.get(r) {
                pos.set(l - 2 * kappa + r, true);
            }
        }
        pos.set(l - 2 * kappa, true);
        pos
    }

    pub fn describe(&self) -> ParamsDescription {
        ParamsDescription {
            level: self.kappa,
            l: self.l,
            m: self.m,
            poly: self.poly.to_exponents(),
            pos_x: self.pos_x.to_hex(),
            pos_y: self.pos_y.to_hex(),
            d: self.dvec.ones().collect(),
        }
    }
}

/// Decoded tap offsets: `x_p` reads state position `l - 1 - i[p]`, `y_p`
/// reads `l - 1 - j[p]`, `w` reads `wtap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapLayout {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub wtap: usize,
}

impl TapLayout {
    /// Re-encodes the layout as a `(pos_x, pos_y)` pair of kappa-bit strings.
    pub fn encode_pos(&self, kappa: u32) -> (BitVec, BitVec) {
        let ku = kappa as usize;
        let mut px = BitVec::zeros(ku);
        let mut py = BitVec::zeros(ku);
        for &ip in &self.i {
            px.set(ku - 1 - ip, true);
        }
        for &jp in &self.j {
            py.set(ku - 1 - (jp - ku), true);
        }
        (px, py)
    }
}

/// Decodes `pos_x` / `pos_y` into ascending tap offsets.
pub fn derive_taps(p: &CipherParams) -> Result<TapLayout> {
    let ku = p.kappa as usize;
    let bad = |reason: &str| Error::BadParams {
        level: p.kappa,
        reason: reason.to_string(),
    };
    let i: Vec<usize> = (0..ku).filter(|&q| p.pos_x.get(ku - 1 - q)).collect();
    let j: Vec<usize> = (0..ku)
        .filter(|&q| p.pos_y.get(ku - 1 - q))
        .map(|q| ku + q)
        .collect();
    if i.len() != p.m || j.len() != p.m {
        return Err(bad("tap weight does not match m"));
    }
    if i[0] != 0 {
        return Err(bad("first X tap must sit at offset 0"));
    }
    if *j.last().unwrap() > 2 * ku - 2 {
        return Err(bad("Y taps must stay left of the W tap"));
    }
    if p.l < 2 * ku {
        return Err(bad("register shorter than 2 kappa"));
    }
    Ok(TapLayout {
        i,
        j,
        wtap: p.l - 2 * ku,
    })
}

/// Extracts the filter input from a state.
pub fn proj(s: &LfsrState, taps: &TapLayout) -> FilterInput {
    let l = s.len();
    let m = taps.i.len();
    let mut x = BitVec::zeros(m);
    let mut y = BitVec::zeros(m);
    for p in 0..m {
        x.set(m - 1 - p, s.get(l - 1 - taps.i[p]));
        y.set(m - 1 - p, s.get(l - 1 - taps.j[p]));
    }
    FilterInput::new(s.get(taps.wtap), x, y).expect("taps produce equal halves")
}

/// Precomputed state indices for fast filter evaluation. `x_idx[p]` and
/// `y_rev_idx[p]` hold the two factors of the p-th quadratic term, and
/// `threshold` is the majority cutoff `ceil(m/2)`.
#[derive(Clone, Debug)]
struct StateTaps {
    x_idx: Vec<usize>,
    y_rev_idx: Vec<usize>,
    wtap: usize,
    threshold: u32,
}

impl StateTaps {
    fn new(layout: &TapLayout, l: usize) -> Self {
        let m = layout.i.len();
        let x_idx: Vec<usize> = layout.i.iter().map(|&ip| l - 1 - ip).collect();
        // pair x_p with y_{m+1-p}
        let y_rev_idx: Vec<usize> = (0..m).map(|p| l - 1 - layout.j[m - 1 - p]).collect();
        StateTaps {
            x_idx,
            y_rev_idx,
            wtap: layout.wtap,
            threshold: (m as u32).div_ceil(2),
        }
    }

    #[inline]
    fn filter_bit(&self, s: &LfsrState) -> bool {
        let mut quad = false;
        let mut wt = 0u32;
        for (&a, &b) in self.x_idx.iter().zip(&self.y_rev_idx) {
            let xb = s.get(a);
            wt += xb as u32;
            quad ^= xb & s.get(b);
        }
        !(s.get(self.wtap) ^ quad ^ (wt >= self.threshold))
    }
}

fn taps_for(p: &CipherParams) -> Result<StateTaps> {
    Ok(StateTaps::new(&derive_taps(p)?, p.l))
}

/// Parses a key or IV as exactly `kappa / 4` hex digits.
pub fn key_from_hex(hex: &str, kappa: u32) -> Result<BitVec> {
    if hex.len() != kappa as usize / 4 {
        return Err(Error::LengthMismatch {
            expected: kappa as usize / 4,
            got: hex.len(),
        });
    }
    BitVec::from_hex(hex)
}

/// Loads key, IV and the alternating pad into the register.
pub fn init_state(key: &BitVec, iv: &BitVec, p: &CipherParams) -> Result<LfsrState> {
    let ku = p.kappa as usize;
    for v in [key, iv] {
        if v.len() != ku {
            return Err(Error::LengthMismatch {
                expected: ku,
                got: v.len(),
            });
        }
    }
    let mut u = BitVec::zeros(p.l);
    for r in 0..ku {
        u.set(p.l - ku + r, key.get(r));
        u.set(p.l - 2 * ku + r, iv.get(r));
    }
    // pad (b_{L-2k-1}, ..., b_0): ones at even positions, for both parities
    // of L - 2 kappa
    for idx in 0..p.l - 2 * ku {
        u.set(idx, idx % 2 == 0);
    }
    Ok(LfsrState::new(u))
}

/// One initialisation round: clock the register and feed the filter bit of
/// the old state back into the d-marked positions.
pub fn ir_round(p: &CipherParams, s: &LfsrState) -> LfsrState {
    let taps = taps_for(p).expect("valid params");
    ir_round_with(p, s, &taps)
}

fn ir_round_with(p: &CipherParams, s: &LfsrState, taps: &StateTaps) -> LfsrState {
    let b = taps.filter_bit(s);
    let mut w = next_state(&p.poly, s).expect("matching length");
    if b {
        w.bits_mut().xor_assign(&p.dvec);
    }
    w
}

/// Exact inverse of [`ir_round`]. Positions feeding the next-bit map or the
/// filter receive no feedback, so both the filter bit and the linear tap sum
/// can be read off the output before reconstructing `u_0`.
pub fn ir_round_inverse(p: &CipherParams, w: &LfsrState) -> LfsrState {
    let taps = taps_for(p).expect("valid params");
    ir_round_inverse_with(p, w, &taps)
}

fn ir_round_inverse_with(p: &CipherParams, w: &LfsrState, taps: &StateTaps) -> LfsrState {
    let l = p.l;
    let mut u = w.bits().clone();
    u.shl1(); // u_i = w_{i-1} for i >= 1, valid at every tapped position
    let cand = LfsrState::new(u);
    let b = taps.filter_bit(&cand);
    let mut c_shift = p.poly.coefficients().clone();
    c_shift.shr1();
    let tap_sum = c_shift.and_parity(w.bits());
    let u0 = w.get(l - 1) ^ tap_sum ^ b;
    let mut u = cand;
    if b {
        let mut d_shift = p.dvec.clone();
        d_shift.shl1();
        u.bits_mut().xor_assign(&d_shift);
    }
    u.bits_mut().set(0, u0);
    u
}

/// Loads the initial state and applies `2 kappa` initialisation rounds.
pub fn initialize(p: &CipherParams, key: &BitVec, iv: &BitVec) -> Result<LfsrState> {
    let taps = taps_for(p)?;
    let mut s = init_state(key, iv, p)?;
    for _ in 0..2 * p.kappa {
        s = ir_round_with(p, &s, &taps);
    }
    Ok(s)
}

/// Keystream generator for one key/IV pair; emits at most 2^64 bits.
pub struct KeystreamGenerator {
    params: CipherParams,
    taps: StateTaps,
    state: LfsrState,
    emitted: u128,
}

impl KeystreamGenerator {
    pub fn new(params: CipherParams, key: &BitVec, iv: &BitVec) -> Result<Self> {
        let taps = taps_for(&params)?;
        let state = initialize(&params, key, iv)?;
        Ok(KeystreamGenerator {
            params,
            taps,
            state,
            emitted: 0,
        })
    }

    /// Convenience constructor from a level number and hex key/IV.
    pub fn for_level(level: u32, key_hex: &str, iv_hex: &str) -> Result<Self> {
        let params = CipherParams::load(level)?;
        let key = key_from_hex(key_hex, params.kappa)?;
        let iv = key_from_hex(iv_hex, params.kappa)?;
        KeystreamGenerator::new(params, &key, &iv)
    }

    pub fn params(&self) -> &CipherParams {
        &self.params
    }

    pub fn emitted(&self) -> u128 {
        self.emitted
    }

    fn reserve(&mut self, nbits: u128) -> Result<()> {
        if self.emitted + nbits > KEYSTREAM_CAP {
            return Err(Error::KeystreamCapExceeded);
        }
        Ok(())
    }

    pub fn next_bit(&mut self) -> Result<bool> {
        self.reserve(1)?;
        let z = self.taps.filter_bit(&self.state);
        self.state.step(&self.params.poly);
        self.emitted += 1;
        Ok(z)
    }

    pub fn bits(&mut self, nbits: u64) -> Result<Vec<bool>> {
        self.reserve(nbits as u128)?;
        let mut out = Vec::with_capacity(nbits as usize);
        for _ in 0..nbits {
            let z = self.taps.filter_bit(&self.state);
            self.state.step(&self.params.poly);
            out.push(z);
        }
        self.emitted += nbits as u128;
        Ok(out)
    }

    /// Packs `nbits` keystream bits into bytes, `z_0` in the most
    /// significant bit of the first byte; a trailing partial byte is
    /// zero-padded.
    pub fn bytes(&mut self, nbits: u64) -> Result<Vec<u8>> {
        self.reserve(nbits as u128)?;
        let mut out = vec![0u8; (nbits as usize).div_ceil(8)];
        for k in 0..nbits as usize {
            let z = self.taps.filter_bit(&self.state);
            self.state.step(&self.params.poly);
            if z {
                out[k / 8] |= 0x80 >> (k % 8);
            }
        }
        self.emitted += nbits as u128;
        Ok(out)
    }
}

/// Lowercase hex of a packed keystream byte string.
pub fn bytes_to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
