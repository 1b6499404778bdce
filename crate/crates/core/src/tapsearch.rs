//! Tap-position machinery: the shift-overlap metrics nu and delta, the
//! randomized search that minimises nu, the quadratic-term distinctness
//! check, and the state-guessing complexity margin.

use crate::bits::BitVec;
use crate::cipher::TapLayout;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashSet;

/// Full L-bit tap string: W tap at `l - 2 kappa`, X taps in the leftmost
/// kappa positions, Y taps in the next kappa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosVector {
    pub kappa: u32,
    pub l: usize,
    pub bits: BitVec,
}

impl PosVector {
    /// Assembles the L-bit string from the two kappa-bit halves.
    pub fn from_pos_strings(kappa: u32, l: usize, pos_x: &BitVec, pos_y: &BitVec) -> Result<Self> {
        let ku = kappa as usize;
        if pos_x.len() != ku || pos_y.len() != ku {
            return Err(Error::LengthMismatch {
                expected: ku,
                got: pos_x.len().max(pos_y.len()),
            });
        }
        if l < 2 * ku {
            return Err(Error::InvalidArgument(format!(
                "register length {l} shorter than 2 kappa = {}",
                2 * ku
            )));
        }
        let mut bits = BitVec::zeros(l);
        for r in 0..ku {
            if pos_x.get(r) {
                bits.set(l - ku + r, true);
            }
            if r >= 1 && pos_y.get(r) {
                bits.set(l - 2 * ku + r, true);
            }
        }
        bits.set(l - 2 * ku, true);
        Ok(PosVector { kappa, l, bits })
    }

    /// The leftmost kappa bits.
    pub fn pos_x(&self) -> BitVec {
        let ku = self.kappa as usize;
        let mut out = BitVec::zeros(ku);
        for r in 0..ku {
            out.set(r, self.bits.get(self.l - ku + r));
        }
        out
    }

    /// The next kappa - 1 bits with a zero appended in place of the W tap.
    pub fn pos_y(&self) -> BitVec {
        let ku = self.kappa as usize;
        let mut out = BitVec::zeros(ku);
        for r in 1..ku {
            out.set(r, self.bits.get(self.l - 2 * ku + r));
        }
        out
    }
}

impl Serialize for PosVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PosVector", 4)?;
        s.serialize_field("kappa", &self.kappa)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("pos_x", &self.pos_x().to_hex())?;
        s.serialize_field("pos_y", &self.pos_y().to_hex())?;
        s.end()
    }
}

/// Maximum overlap of the X-tap string with any of its right shifts.
pub fn nu_of(pos_x: &BitVec) -> u32 {
    (1..pos_x.len())
        .map(|t| pos_x.overlap_weight(t))
        .max()
        .unwrap_or(0)
}

/// Maximum overlap of the full tap string with its right shifts up to
/// `2 kappa - 1`.
pub fn delta_of(pos: &PosVector) -> u32 {
    (1..2 * pos.kappa as usize)
        .map(|t| pos.bits.overlap_weight(t))
        .max()
        .unwrap_or(0)
}

/// One uniformly random candidate: the first X tap and the last Y tap are
/// fixed, the rest are uniform subsets of their windows.
pub fn random_pos(kappa: u32, l: usize, m: usize, rng: &mut impl Rng) -> Result<PosVector> {
    let ku = kappa as usize;
    if ku < 3 || m < 1 || m + 1 > ku || l < 2 * ku {
        return Err(Error::InfeasibleSearch { kappa, m });
    }
    let mut bits = BitVec::zeros(l);
    bits.set(l - 2 * ku, true); // W
    bits.set(l - 1, true); // i_1 = 0
    bits.set(l - 2 * ku + 1, true); // j_m = 2 kappa - 2

    // i_2..i_m from {1, ..., kappa-1}
    for idx in rand::seq::index::sample(rng, ku - 1, m - 1) {
        bits.set(l - 1 - (idx + 1), true);
    }
    // j_1..j_{m-1} from {kappa, ..., 2 kappa - 3}
    for idx in rand::seq::index::sample(rng, ku - 2, m - 1) {
        bits.set(l - 1 - (idx + ku), true);
    }
    Ok(PosVector { kappa, l, bits })
}

/// Outcome of [`search`]; fully reproducible from the recorded seed.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub pos: PosVector,
    pub nu: u32,
    pub delta: u32,
    pub trials: u64,
    pub seed: u64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws `trials` random candidates and keeps the first one attaining the
/// least nu; delta is computed for the winner only. Trials run in parallel
/// but the winner is selected by `(nu, trial index)`, so parallel and serial
/// runs agree.
pub fn search(kappa: u32, l: usize, m: usize, trials: u64, seed: u64) -> Result<SearchResult> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    random_pos(kappa, l, m, &mut trial_rng(seed, 0))?; // feasibility check
    let best = (0..trials)
        .into_par_iter()
        .map(|t| {
            let pos = random_pos(kappa, l, m, &mut trial_rng(seed, t)).expect("checked feasible");
            let nu = nu_of(&pos.pos_x());
            (nu, t, pos)
        })
        .min_by_key(|(nu, t, _)| (*nu, *t))
        .expect("at least one trial");
    let (nu, _, pos) = best;
    let delta = delta_of(&pos);
    Ok(SearchResult {
        pos,
        nu,
        delta,
        trials,
        seed,
    })
}

/// Exhaustively verifies that the index pairs of the quadratic terms
/// produced at time offsets `0..=tmax` are pairwise distinct.
pub fn qterm_distinct(layout: &TapLayout, l: usize, tmax: usize) -> bool {
    let m = layout.i.len();
    let mut seen = HashSet::with_capacity((tmax + 1) * m);
    for t in 0..=tmax {
        for p in 0..m {
            let a = l + t - 1 - layout.i[p];
            let b = l + t - 1 - layout.j[m - 1 - p];
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return false;
            }
        }
    }
    true
}

/// State-guessing complexity margin
/// `2^{(n-1)c - delta c(c-1)/2} (L^3 + Ln) > 2^kappa`, with `c` the least
/// positive integer such that `nc >= L`. The two-guess variant is evaluated
/// alongside because the two disagree on every embedded level (the least `c`
/// is 3 throughout); the verdict is the same either way.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FsgaMargin {
    pub c: u32,
    pub log2_complexity: f64,
    pub pass: bool,
    pub log2_complexity_c2: f64,
    pub pass_c2: bool,
}

pub fn fsga_margin(n: usize, l: usize, delta: u32, kappa: u32) -> FsgaMargin {
    let c = l.div_ceil(n) as u32;
    let poly_ops = ((l as f64).powi(3) + (l * n) as f64).log2();
    let expo =
        |cc: u32| (n as i64 - 1) * cc as i64 - (delta as i64) * (cc as i64 * (cc as i64 - 1)) / 2;
    let log2_complexity = expo(c) as f64 + poly_ops;
    let log2_complexity_c2 = expo(2) as f64 + poly_ops;
    FsgaMargin {
        c,
        log2_complexity,
        pass: log2_complexity > kappa as f64,
        log2_complexity_c2,
        pass_c2: log2_complexity_c2 > kappa as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParameterTable;

    fn from_left(bits: &[u8]) -> BitVec {
        let n = bits.len();
        let mut v = BitVec::zeros(n);
        for (q, &b) in bits.iter().enumerate() {
            v.set(n - 1 - q, b == 1);
        }
        v
    }

    #[test]
    fn nu_toy_values() {
        assert_eq!(nu_of(&from_left(&[1, 0, 1, 0, 0])), 1);
        assert_eq!(nu_of(&from_left(&[0, 0, 1, 0, 0])), 0);
    }

    #[test]
    fn nu_matches_left_shift_formulation() {
        // |overlap| is symmetric in the shift direction
        let row = ParameterTable::get().row(80).unwrap();
        let px = &row.pos_x;
        let ku = px.len();
        let left = (1..ku)
            .map(|t| (0..ku - t).filter(|&j| px.get(j) && px.get(j + t)).count() as u32)
            .max()
            .unwrap();
        assert_eq!(nu_of(px), left);
        let pos = PosVector::from_pos_strings(80, row.l, &row.pos_x, &row.pos_y).unwrap();
        let left_delta = (1..2 * ku)
            .map(|t| {
                (0..row.l - t)
                    .filter(|&j| pos.bits.get(j) && pos.bits.get(j + t))
                    .count() as u32
            })
            .max()
            .unwrap();
        assert_eq!(delta_of(&pos), left_delta);
    }

    #[test]
    fn full_search_attains_low_overlap() {
        // the embedded strings show nu = 16 is attainable at this size; a
        // fresh 10000-trial run should land in the same neighbourhood
        let r = search(80, 163, 37, 10_000, 0xc0ffee).unwrap();
        assert!(r.nu <= 19, "nu = {}", r.nu);
        assert!(r.nu as usize <= 37 / 2);
    }

    #[test]
    fn table_values_for_embedded_levels() {
        let expected = [
            (80u32, 16u32, 36u32),
            (128, 26, 57),
            (160, 30, 69),
            (192, 39, 86),
            (224, 45, 96),
            (256, 51, 112),
        ];
        for (lvl, nu, delta) in expected {
            let row = ParameterTable::get().row(lvl).unwrap();
            let pos = PosVector::from_pos_strings(lvl, row.l, &row.pos_x, &row.pos_y).unwrap();
            assert_eq!(nu_of(&pos.pos_x()), nu, "nu at level {lvl}");
            assert_eq!(delta_of(&pos), delta, "delta at level {lvl}");
            assert_eq!(pos.pos_x().to_hex(), row.pos_x_hex);
            assert_eq!(pos.pos_y().to_hex(), row.pos_y_hex);
        }
    }

    #[test]
    fn arithmetic_progression_is_worst_case() {
        // set bits in steps of 2: delta = wt - 1 at t = 2
        let mut bits = BitVec::zeros(24);
        for k in 0..9 {
            bits.set(23 - 2 * k, true);
        }
        let pos = PosVector {
            kappa: 8,
            l: 24,
            bits,
        };
        assert_eq!(delta_of(&pos), 8);
    }

    #[test]
    fn random_pos_structure() {
        let mut rng = trial_rng(42, 0);
        for _ in 0..20 {
            let pos = random_pos(5, 12, 2, &mut rng).unwrap();
            assert_eq!(pos.bits.weight(), 5); // 2m + 1
            assert!(pos.bits.get(11), "i_1 = 0 always present");
            assert!(pos.bits.get(3), "j_m = 2 kappa - 2 always present");
            assert!(pos.bits.get(2), "W tap");
        }
        let a = random_pos(80, 163, 37, &mut trial_rng(42, 7)).unwrap();
        let b = random_pos(80, 163, 37, &mut trial_rng(42, 7)).unwrap();
        assert_eq!(a, b);
        assert!(random_pos(5, 12, 5, &mut rng).is_err());
    }

    #[test]
    fn search_is_reproducible() {
        let r1 = search(80, 163, 37, 200, 42).unwrap();
        let r2 = search(80, 163, 37, 200, 42).unwrap();
        assert_eq!(r1.pos, r2.pos);
        assert_eq!((r1.nu, r1.delta), (r2.nu, r2.delta));
        assert_eq!(r1.nu, nu_of(&r1.pos.pos_x()));
        assert_eq!(r1.delta, delta_of(&r1.pos));
        // a single trial returns that candidate
        let single = search(80, 163, 37, 1, 7).unwrap();
        let direct = random_pos(80, 163, 37, &mut trial_rng(7, 0)).unwrap();
        assert_eq!(single.pos, direct);
    }

    #[test]
    fn search_candidates_decode_to_valid_taps() {
        let r = search(80, 163, 37, 50, 3).unwrap();
        let px = r.pos.pos_x();
        let py = r.pos.pos_y();
        assert_eq!(px.weight(), 37);
        assert_eq!(py.weight(), 37);
        assert!(px.get(79), "offset 0 tapped");
        assert!(!py.get(0), "slot next to W stays clear");
    }

    #[test]
    fn qterm_toy() {
        let layout = TapLayout {
            i: vec![0, 2],
            j: vec![6, 8],
            wtap: 2,
        };
        assert!(qterm_distinct(&layout, 12, 1));
        // malformed layout with decreasing j: the pair sets collide at t = 3
        let bad = TapLayout {
            i: vec![0, 3],
            j: vec![8, 5],
            wtap: 2,
        };
        assert!(!qterm_distinct(&bad, 12, 3));
    }

    #[test]
    fn fsga_level_values() {
        // level 128: n = 119, L = 257, delta = 57
        let f = fsga_margin(119, 257, 57, 128);
        assert_eq!(f.c, 3);
        assert!((f.log2_complexity - 207.02).abs() < 0.1);
        assert!(f.pass && f.pass_c2);
        // n = L: single guess
        let f1 = fsga_margin(31, 31, 5, 16);
        assert_eq!(f1.c, 1);
        let expect = 30.0 + ((31.0f64).powi(3) + 31.0 * 31.0).log2();
        assert!((f1.log2_complexity - expect).abs() < 1e-9);
    }
}
