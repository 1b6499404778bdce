//! Static parameter table for the six proposed instances, embedded as a TOML
//! asset and parsed once on first use. Everything downstream (cipher,
//! tapsearch, security, gatecount) reads from here.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::lfsr::ConnectionPoly;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

const PARAMS_TOML: &str = include_str!("../data/params.toml");

/// The six supported security levels, in bits.
pub const LEVELS: [u32; 6] = [80, 128, 160, 192, 224, 256];

/// Expected NAND-unit estimates for one level at 8 units per flip-flop.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GateRow {
    pub lfsr: f64,
    pub filter: f64,
    pub nb: f64,
    pub ir: f64,
    pub total: f64,
}

/// One row of the parameter table plus the analysis figures it must
/// reproduce.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub kappa: u32,
    pub l: usize,
    pub m: usize,
    pub poly: ConnectionPoly,
    /// Tap positions for the X variables; leftmost position = highest bit.
    pub pos_x: BitVec,
    /// Tap positions for the Y variables, offset by kappa; last bit is the
    /// padding slot and must be zero.
    pub pos_y: BitVec,
    pub pos_x_hex: String,
    pub pos_y_hex: String,
    /// Positions (state indices) receiving initialisation feedback.
    pub d_positions: Vec<usize>,
    pub deg: u32,
    pub lb_exponent: u32,
    pub ai: u32,
    pub fai: u32,
    pub nu: u32,
    pub delta: u32,
    pub gates: GateRow,
}

impl LevelData {
    /// Full L-bit tap string: X taps in the leftmost kappa positions, Y taps
    /// in the next kappa, the W tap at index `l - 2 kappa`.
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

    /// The d string as an L-bit vector.
    pub fn dvec(&self) -> BitVec {
        let mut d = BitVec::zeros(self.l);
        for &i in &self.d_positions {
            d.set(i, true);
        }
        d
    }
}

/// Parsed table of all six levels.
pub struct ParameterTable {
    rows: Vec<LevelData>,
}

#[derive(Deserialize)]
struct RawTable {
    levels: Vec<RawLevel>,
}

#[derive(Deserialize)]
struct RawLevel {
    kappa: u32,
    l: usize,
    m: usize,
    poly: String,
    pos_x: String,
    pos_y: String,
    d: String,
    deg: u32,
    lb_exponent: u32,
    ai: u32,
    fai: u32,
    nu: u32,
    delta: u32,
    gates: [f64; 5],
}

impl ParameterTable {
    /// The embedded table; parsed once, panics if the static asset is
    /// malformed.
    pub fn get() -> &'static ParameterTable {
        static TABLE: OnceLock<ParameterTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ParameterTable::parse(PARAMS_TOML).expect("embedded parameter table is malformed")
        })
    }

    pub fn parse(text: &str) -> Result<ParameterTable> {
        let raw: RawTable =
            toml::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut rows = Vec::with_capacity(raw.levels.len());
        for r in raw.levels {
            let poly = ConnectionPoly::from_exponents(&r.poly)?;
            let pos_x = BitVec::from_hex(&r.pos_x)?;
            let pos_y = BitVec::from_hex(&r.pos_y)?;
            let d_positions =
                r.d.split_whitespace()
                    .map(|p| {
                        p.parse::<usize>()
                            .map_err(|_| Error::InvalidArgument(format!("bad d position {p:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
            rows.push(LevelData {
                kappa: r.kappa,
                l: r.l,
                m: r.m,
                poly,
                pos_x,
                pos_y,
                pos_x_hex: r.pos_x,
                pos_y_hex: r.pos_y,
                d_positions,
                deg: r.deg,
                lb_exponent: r.lb_exponent,
                ai: r.ai,
                fai: r.fai,
                nu: r.nu,
                delta: r.delta,
                gates: GateRow {
                    lfsr: r.gates[0],
                    filter: r.gates[1],
                    nb: r.gates[2],
                    ir: r.gates[3],
                    total: r.gates[4],
                },
            });
        }
        Ok(ParameterTable { rows })
    }

    pub fn rows(&self) -> &[LevelData] {
        &self.rows
    }

    pub fn row(&self, level: u32) -> Result<&LevelData> {
        self.rows
            .iter()
            .find(|r| r.kappa == level)
            .ok_or(Error::UnknownLevel(level))
    }

    /// Runs every cross-table consistency check on every row.
    pub fn self_check(&self) -> Vec<Verdict> {
        self.rows.iter().flat_map(check_row).collect()
    }
}

/// `floor(sqrt(2 kappa))`, the target weight for the d string.
pub fn mu(kappa: u32) -> u32 {
    let target = 2 * kappa;
    let mut r = 0;
    while (r + 1) * (r + 1) <= target {
        r += 1;
    }
    r
}

/// Outcome of one named check on one row.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub level: u32,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn verdict(level: u32, check: &str, pass: bool, detail: String) -> Verdict {
    Verdict {
        level,
        check: check.to_string(),
        pass,
        detail,
    }
}

/// All consistency checks for a single row; usable on mutated rows in tests.
pub fn check_row(row: &LevelData) -> Vec<Verdict> {
    let mut out = Vec::new();
    let (kappa, l, m) = (row.kappa, row.l, row.m);
    let ku = kappa as usize;
    let mut push = |check: &str, pass: bool, detail: String| {
        out.push(verdict(kappa, check, pass, detail));
    };

    push(
        "sizes",
        l >= 2 * ku && 2 * m + 1 < ku && row.poly.degree() == l,
        format!("L={l}, m={m}, kappa={kappa}"),
    );
    push(
        "hex-length",
        row.pos_x.len() == ku && row.pos_y.len() == ku,
        format!(
            "posX {} bits, posY {} bits",
            row.pos_x.len(),
            row.pos_y.len()
        ),
    );
    push(
        "tap-weights",
        row.pos_x.weight() as usize == m && row.pos_y.weight() as usize == m,
        format!(
            "wt(posX)={}, wt(posY)={}, m={m}",
            row.pos_x.weight(),
            row.pos_y.weight()
        ),
    );
    // endpoint taps: the leftmost state position is the first X tap, and the
    // Y segment leaves its final slot (adjacent to the W tap) clear
    push(
        "endpoint-taps",
        row.pos_x.get(ku - 1) && !row.pos_y.get(0),
        "i_1 = 0 and the final posY slot (reserved for the W tap) is clear".to_string(),
    );

    let pos = row.pos();
    let dvec = row.dvec();
    let c = row.poly.coefficients();

    let d_top = dvec.get(l - 1);
    push(
        "d-leftmost",
        d_top,
        format!("d_{} = {}", l - 1, d_top as u8),
    );
    let d_low_clear = (0..l.saturating_sub(2 * ku)).all(|i| !dvec.get(i));
    push(
        "d-low-zero",
        d_low_clear,
        "no feedback into the rightmost L - 2 kappa positions".to_string(),
    );
    let mut clash = None;
    for i in (l - 2 * ku)..=(l - 2) {
        if dvec.get(i) && (c.get(i + 1) || pos.get(i + 1)) {
            clash = Some(i);
            break;
        }
    }
    push(
        "d-no-tap-adjacent",
        clash.is_none(),
        match clash {
            Some(i) => format!("d_{i} = 1 but position {} is tapped", i + 1),
            None => "every feedback position sits below an untapped slot".to_string(),
        },
    );
    let wt_d = dvec.weight();
    let mu_v = mu(kappa);
    push(
        "d-weight",
        wt_d.abs_diff(mu_v) <= 1,
        format!("wt(d)={wt_d}, mu={mu_v}"),
    );

    let irr = row.poly.is_irreducible();
    push("poly-irreducible", irr, row.poly.to_exponents());

    let nu = (1..ku)
        .map(|t| row.pos_x.overlap_weight(t))
        .max()
        .unwrap_or(0);
    push(
        "nu",
        nu == row.nu,
        format!("recomputed {nu}, expected {}", row.nu),
    );
    let delta = (1..2 * ku)
        .map(|t| pos.overlap_weight(t))
        .max()
        .unwrap_or(0);
    push(
        "delta",
        delta == row.delta,
        format!("recomputed {delta}, expected {}", row.delta),
    );
    push(
        "nu-majority-bound",
        nu as usize <= m / 2,
        format!("nu={nu} <= floor(m/2)={}", m / 2),
    );
    out
}
