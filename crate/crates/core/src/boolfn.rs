//! Truth-table Boolean functions on a small number of variables, with the
//! cryptographic measures used everywhere else in the crate: algebraic
//! normal form, Walsh spectrum, nonlinearity, linear bias, algebraic
//! immunity and fast algebraic immunity.
//!
//! Input convention: a function on variables `X_1, ..., X_n` is tabulated by
//! the index `x` whose most significant bit is `X_1`. Truth tables render as
//! hex with the first (most significant) hex digit holding the outputs for
//! the smallest indices.

use crate::error::{Error, Result};
use serde::Serialize;

/// Smallest supported variable count.
pub const MIN_VARS: usize = 2;
/// Largest variable count for which truth tables are materialised.
pub const MAX_VARS: usize = 16;
/// Largest variable count for the algebraic immunity rank computation.
pub const MAX_AI_VARS: usize = 14;
/// Largest variable count for the fast algebraic immunity search.
pub const MAX_FAI_VARS: usize = 12;

/// An `n`-variable Boolean function as an explicit truth table.
///
/// Bit `x` of the packed table is `f(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<u64>,
}

/// Algebraic normal form coefficients; bit `alpha` is the coefficient of the
/// monomial whose exponent vector is the bits of `alpha`.
#[derive(Clone, PartialEq, Eq)]
pub struct AnfCoefficients {
    n: usize,
    coeffs: Vec<u64>,
}

/// Walsh transform values indexed by the point `alpha`.
#[derive(Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

/// JSON-friendly summary of every measure computed for one function.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionReport {
    pub n: usize,
    pub table: String,
    pub anf: String,
    pub walsh: Vec<i32>,
    pub nl: u32,
    pub lb: f64,
    pub deg: u32,
    pub ai: u32,
    pub fai: u32,
    pub balanced: bool,
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n < MIN_VARS || n > max {
        return Err(Error::VarCountOutOfRange(n, MIN_VARS, max));
    }
    Ok(())
}

fn words_for(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl BooleanFunction {
    /// Tabulates `eval` over all `2^n` inputs. The argument passed to `eval`
    /// is the table index (`X_1` in the most significant bit).
    pub fn from_evaluator(n: usize, mut eval: impl FnMut(u32) -> bool) -> Result<Self> {
        check_n(n, MAX_VARS)?;
        let mut table = vec![0u64; words_for(n)];
        for x in 0..(1u32 << n) {
            if eval(x) {
                table[(x >> 6) as usize] |= 1u64 << (x & 63);
            }
        }
        Ok(BooleanFunction { n, table })
    }

    /// Parses the hex truth-table convention; the string length fixes `n`.
    pub fn from_hex(s: &str) -> Result<Self> {
        let bits = s.len() * 4;
        if !bits.is_power_of_two() || bits < 4 {
            return Err(Error::BadHex(s.to_string()));
        }
        let n = bits.trailing_zeros() as usize;
        check_n(n, MAX_VARS)?;
        let mut table = vec![0u64; words_for(n)];
        for (pos, ch) in s.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::BadHex(s.to_string()))?;
            for k in 0..4 {
                if (nibble >> (3 - k)) & 1 == 1 {
                    let x = 4 * pos + k;
                    table[x >> 6] |= 1u64 << (x & 63);
                }
            }
        }
        Ok(BooleanFunction { n, table })
    }

    /// Hex rendering: first digit carries `f(0)..f(3)` with `f(0)` in the
    /// most significant position.
    pub fn to_hex(&self) -> String {
        let digits = (1usize << self.n) / 4;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for k in 0..4 {
                nibble = (nibble << 1) | self.value((4 * d + k) as u32) as u32;
            }
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        out
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, x: u32) -> bool {
        debug_assert!((x as usize) < (1usize << self.n));
        (self.table[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.table.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() as usize == 1usize << (self.n - 1)
    }

    /// `1 ^ f`.
    pub fn complement(&self) -> Self {
        let mut table: Vec<u64> = self.table.iter().map(|w| !w).collect();
        mask_top(&mut table, self.n);
        BooleanFunction { n: self.n, table }
    }

    pub fn anf(&self) -> AnfCoefficients {
        let mut coeffs = self.table.clone();
        mobius_in_place(&mut coeffs, self.n);
        AnfCoefficients { n: self.n, coeffs }
    }

    /// Maximum monomial weight in the ANF; 0 for the zero function.
    pub fn degree(&self) -> u32 {
        self.anf().degree()
    }

    pub fn walsh(&self) -> WalshSpectrum {
        let size = 1usize << self.n;
        let mut values = Vec::with_capacity(size);
        for x in 0..size as u32 {
            values.push(1 - 2 * self.value(x) as i32);
        }
        let mut h = 1;
        while h < size {
            for block in (0..size).step_by(2 * h) {
                for i in block..block + h {
                    let (a, b) = (values[i], values[i + h]);
                    values[i] = a + b;
                    values[i + h] = a - b;
                }
            }
            h *= 2;
        }
        WalshSpectrum { n: self.n, values }
    }

    pub fn nonlinearity(&self) -> u32 {
        (1u32 << (self.n - 1)) - self.walsh().max_abs() / 2
    }

    pub fn linear_bias(&self) -> f64 {
        0.5 - self.nonlinearity() as f64 / (1u64 << self.n) as f64
    }

    /// Smallest degree of a nonzero annihilator of `f` or `1 ^ f`.
    pub fn algebraic_immunity(&self) -> Result<u32> {
        check_n(self.n, MAX_AI_VARS)?;
        let compl = self.complement();
        for d in 0..=self.n as u32 {
            if has_annihilator(self, d) || has_annihilator(&compl, d) {
                return Ok(d);
            }
        }
        unreachable!("every function has an annihilator of degree <= n")
    }

    /// `min(2 AI, min over nonzero g with 1 <= deg g < AI of deg g + deg(fg))`.
    pub fn fast_algebraic_immunity(&self) -> Result<u32> {
        check_n(self.n, MAX_FAI_VARS)?;
        let ai = self.algebraic_immunity()?;
        let mut best = 2 * ai;
        if ai <= 1 {
            return Ok(best);
        }
        let deg_f = self.degree();
        // Monomial masks of weight <= ai - 1, weight-major so that the
        // columns for degree <= e form a prefix.
        let masks = monomials_by_weight(self.n, ai - 1);
        // ANF of f * X^mask for every candidate monomial of g.
        let prod_anfs: Vec<Vec<u64>> = masks
            .iter()
            .map(|&mask| {
                let mut t = vec![0u64; words_for(self.n)];
                for x in 0..(1u32 << self.n) {
                    if (x & mask) == mask && self.value(x) {
                        t[(x >> 6) as usize] |= 1u64 << (x & 63);
                    }
                }
                mobius_in_place(&mut t, self.n);
                t
            })
            .collect();
        for e in 1..ai {
            let ncols = masks.iter().take_while(|m| m.count_ones() <= e).count();
            let mut d = ai;
            while e + d < best {
                // g is feasible at (e, d) iff the system "all ANF
                // coefficients of f*g above weight d vanish" has a
                // nonconstant solution.
                let mut basis = Gf2Basis::new(ncols);
                'rows: for alpha in 0..(1u32 << self.n) {
                    if alpha.count_ones() <= d {
                        continue;
                    }
                    let mut row = vec![0u64; ncols.div_ceil(64)];
                    for (ci, anf) in prod_anfs.iter().take(ncols).enumerate() {
                        if (anf[(alpha >> 6) as usize] >> (alpha & 63)) & 1 == 1 {
                            row[ci >> 6] |= 1u64 << (ci & 63);
                        }
                    }
                    if basis.insert(row) && basis.rank() == ncols {
                        break 'rows;
                    }
                }
                let dim = ncols - basis.rank();
                let feasible = if deg_f <= d { dim >= 2 } else { dim >= 1 };
                if feasible {
                    best = e + d;
                    break;
                }
                d += 1;
            }
        }
        Ok(best)
    }

    /// Full measurement bundle (requires `n <= 12` for the FAI search).
    pub fn report(&self) -> Result<FunctionReport> {
        let walsh = self.walsh();
        Ok(FunctionReport {
            n: self.n,
            table: self.to_hex(),
            anf: self.anf().to_hex(),
            walsh: walsh.values().to_vec(),
            nl: self.nonlinearity(),
            lb: self.linear_bias(),
            deg: self.degree(),
            ai: self.algebraic_immunity()?,
            fai: self.fast_algebraic_immunity()?,
            balanced: self.is_balanced(),
        })
    }
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction(n={}, {})", self.n, self.to_hex())
    }
}

impl AnfCoefficients {
    pub fn variables(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coefficient(&self, alpha: u32) -> bool {
        (self.coeffs[(alpha >> 6) as usize] >> (alpha & 63)) & 1 == 1
    }

    /// Inverse transform back to the truth table (the transform is an
    /// involution).
    pub fn truth_table(&self) -> BooleanFunction {
        let mut table = self.coeffs.clone();
        mobius_in_place(&mut table, self.n);
        BooleanFunction { n: self.n, table }
    }

    pub fn degree(&self) -> u32 {
        (0..(1u32 << self.n))
            .filter(|&a| self.coefficient(a))
            .map(|a| a.count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn to_hex(&self) -> String {
        BooleanFunction {
            n: self.n,
            table: self.coeffs.clone(),
        }
        .to_hex()
    }
}

impl WalshSpectrum {
    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn max_abs(&self) -> u32 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap()
    }

    /// Sum of squared values; equals `2^{2n}` for every Boolean function.
    pub fn parseval_sum(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }
}

fn mask_top(words: &mut [u64], n: usize) {
    if n < 6 {
        words[0] &= (1u64 << (1 << n)) - 1;
    }
}

/// In-place Moebius transform over the subset lattice of the table index.
fn mobius_in_place(words: &mut [u64], n: usize) {
    const M: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (b, mask) in M.iter().enumerate().take(n.min(6)) {
        let h = 1 << b;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << h;
        }
    }
    for b in 6..n {
        let h = 1usize << (b - 6);
        for block in (0..words.len()).step_by(2 * h) {
            for i in block..block + h {
                words[i + h] ^= words[i];
            }
        }
    }
    mask_top(words, n);
}

/// All monomial masks of weight at most `max_deg`, in weight-major order.
fn monomials_by_weight(n: usize, max_deg: u32) -> Vec<u32> {
    let mut mons: Vec<u32> = (0..(1u32 << n))
        .filter(|m| m.count_ones() <= max_deg)
        .collect();
    mons.sort_by_key(|m| (m.count_ones(), *m));
    mons
}

/// Incremental GF(2) row basis keyed by the leading (highest) set bit.
struct Gf2Basis {
    rows: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Gf2Basis {
    fn new(ncols: usize) -> Self {
        Gf2Basis {
            rows: vec![None; ncols],
            rank: 0,
        }
    }

    fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` against the basis; inserts and returns true if it was
    /// independent.
    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        while let Some(lead) = leading_bit(&row) {
            match &self.rows[lead] {
                Some(basis_row) => {
                    for (a, b) in row.iter_mut().zip(basis_row) {
                        *a ^= b;
                    }
                }
                None => {
                    self.rows[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    for (i, w) in row.iter().enumerate().rev() {
        if *w != 0 {
            return Some(64 * i + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

/// True iff a nonzero function of degree at most `d` vanishes on the whole
/// support of `f`.
fn has_annihilator(f: &BooleanFunction, d: u32) -> bool {
    let mons = monomials_by_weight(f.n, d);
    let ncols = mons.len();
    let mut basis = Gf2Basis::new(ncols);
    for x in 0..(1u32 << f.n) {
        if !f.value(x) {
            continue;
        }
        let mut row = vec![0u64; ncols.div_ceil(64)];
        for (ci, &mask) in mons.iter().enumerate() {
            if (x & mask) == mask {
                row[ci >> 6] |= 1u64 << (ci & 63);
            }
        }
        if basis.insert(row) && basis.rank() == ncols {
            return false;
        }
    }
    basis.rank() < ncols
}
