//! Command-line front end: parameter dumps, keystream generation, Boolean
//! function measurement, tap search, security margins, gate estimates, and
//! re-verification of the embedded tables.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error. Results go to
//! stdout as hex or JSON; diagnostics go to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use nlfsc::boolfn::BooleanFunction;
use nlfsc::cipher::{self, CipherParams, KeystreamGenerator};
use nlfsc::gatecount::{self, FLIPFLOP_UNITS, FLIPFLOP_UNITS_ALT};
use nlfsc::mmfunc;
use nlfsc::params::{ParameterTable, LEVELS};
use nlfsc::tapsearch;
use nlfsc::{security, Error};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nlfsc",
    version,
    about = "Nonlinear filter stream cipher toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Hex,
    Bin,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Table,
}

/// One level or all six; a scalar to clap, a list to the dispatcher.
#[derive(Clone)]
struct LevelSet(Vec<u32>);

fn parse_level_set(s: &str) -> Result<LevelSet, String> {
    if s == "all" {
        return Ok(LevelSet(LEVELS.to_vec()));
    }
    let lvl: u32 = s.parse().map_err(|_| format!("invalid level {s:?}"))?;
    if LEVELS.contains(&lvl) {
        Ok(LevelSet(vec![lvl]))
    } else {
        Err(format!(
            "unknown level {lvl} (expected 80, 128, 160, 192, 224, 256 or all)"
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump one or all parameter sets as JSON
    Params {
        /// security level in bits, or "all"
        #[arg(long, default_value = "all", value_parser = parse_level_set)]
        level: LevelSet,
    },
    /// Generate keystream bits for a key/IV pair
    Keystream {
        /// security level in bits
        #[arg(long)]
        level: u32,
        /// key as kappa/4 hex digits
        #[arg(long)]
        key: String,
        /// IV as kappa/4 hex digits
        #[arg(long)]
        iv: String,
        /// number of keystream bits
        #[arg(long)]
        bits: u64,
        #[arg(long, value_enum, default_value_t = Format::Hex)]
        format: Format,
    },
    /// Measure a small Boolean function: the built-in filter instance on n
    /// variables, or an explicit hex truth table
    Analyze {
        /// analyse the n-variable filter family instance (4..=12)
        #[arg(long, conflicts_with = "table")]
        n: Option<usize>,
        /// analyse this hex truth table instead
        #[arg(long)]
        table: Option<String>,
    },
    /// Randomized tap-position search minimising the shift overlap
    Tapsearch {
        /// take kappa, L and m from this level
        #[arg(long)]
        level: Option<u32>,
        /// custom kappa (with --l and --m)
        #[arg(long, requires = "l", requires = "m", conflicts_with = "level")]
        kappa: Option<u32>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// PRNG seed; drawn from the OS and echoed in the result if absent
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Attack-margin report per level
    Security {
        #[arg(long, default_value = "all", value_parser = parse_level_set)]
        level: LevelSet,
        /// keystream budget exponent
        #[arg(long = "B", default_value_t = 64)]
        budget: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// NAND-unit estimates per level
    Gates {
        #[arg(long, default_value = "all", value_parser = parse_level_set)]
        level: LevelSet,
        /// flip-flop price in NAND units (8 or 12)
        #[arg(long, default_value_t = 8)]
        flipflop: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Re-verify the embedded tables; prints one PASS/FAIL line per check
    Verify {
        /// 1 (filter figures), 2 (polynomials), 3 (tap strings),
        /// 4 (overlaps), 5 (feedback positions), 7 (gate counts), or all
        #[arg(long, default_value = "all")]
        table: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Params { level } => {
            let out: Vec<_> = level
                .0
                .into_iter()
                .map(|lvl| CipherParams::load(lvl).map(|p| p.describe()))
                .collect::<Result<_, _>>()?;
            print_json(&out);
            Ok(true)
        }
        Command::Keystream {
            level,
            key,
            iv,
            bits,
            format,
        } => {
            let mut g = KeystreamGenerator::for_level(level, &key, &iv)?;
            let bytes = g.bytes(bits)?;
            match format {
                Format::Hex => {
                    if bits > 0 {
                        emit(&cipher::bytes_to_hex(&bytes));
                    }
                }
                Format::Bin => {
                    std::io::stdout()
                        .write_all(&bytes)
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                }
                Format::Json => {
                    print_json(&serde_json::json!({
                        "level": level,
                        "bits": bits,
                        "keystream": cipher::bytes_to_hex(&bytes),
                    }));
                }
            }
            Ok(true)
        }
        Command::Analyze { n, table } => {
            let f = match (n, table) {
                (Some(n), None) => {
                    if !(4..=12).contains(&n) {
                        return Err(Error::VarCountOutOfRange(n, 4, 12));
                    }
                    mmfunc::small_instance(n)?
                }
                (None, Some(t)) => BooleanFunction::from_hex(&t)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass exactly one of --n or --table".into(),
                    ))
                }
            };
            print_json(&f.report()?);
            Ok(true)
        }
        Command::Tapsearch {
            level,
            kappa,
            l,
            m,
            trials,
            seed,
        } => {
            let (kappa, l, m) = match (level, kappa, l, m) {
                (Some(lvl), None, None, None) => {
                    let row = ParameterTable::get().row(lvl)?;
                    (row.kappa, row.l, row.m)
                }
                (None, Some(k), Some(l), Some(m)) => (k, l, m),
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass --level LEVEL, or all of --kappa --l --m".into(),
                    ))
                }
            };
            let seed = seed.unwrap_or_else(rand::random);
            let result = tapsearch::search(kappa, l, m, trials, seed)?;
            print_json(&result);
            Ok(true)
        }
        Command::Security {
            level,
            budget,
            format,
        } => {
            let reports: Vec<_> = level
                .0
                .into_iter()
                .map(|lvl| security::report(&CipherParams::load(lvl)?, budget))
                .collect::<Result<_, _>>()?;
            match format {
                TableFormat::Json => print_json(&reports),
                TableFormat::Table => {
                    emit(&format!(
                        "{:>6} {:>4} {:>11} {:>10} {:>11} {:>10} {:>5} {:>7}",
                        "level",
                        "B",
                        "log2alpha",
                        "log2beta",
                        "log2gamma",
                        "log2fsga",
                        "fca",
                        "verdict"
                    ));
                    for r in &reports {
                        emit(&format!(
                            "{:>6} {:>4} {:>11.2} {:>10.2} {:>11.2} {:>10.2} {:>5} {:>7}",
                            r.level,
                            r.b,
                            r.alpha.log2_alpha,
                            r.log2_beta,
                            r.gamma.log2_min_product,
                            r.fsga.log2_complexity,
                            if r.fca.low_weight_ok && r.fca.decode_ok && r.fca.cf_ok {
                                "ok"
                            } else {
                                "FAIL"
                            },
                            if r.overall_pass { "pass" } else { "FAIL" }
                        ));
                    }
                }
            }
            Ok(true)
        }
        Command::Gates {
            level,
            flipflop,
            format,
        } => {
            let ff = match flipflop {
                8 => FLIPFLOP_UNITS,
                12 => FLIPFLOP_UNITS_ALT,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "flip-flop price must be 8 or 12, got {other}"
                    )))
                }
            };
            let rows: Vec<(CipherParams, gatecount::GateEstimate)> = level
                .0
                .into_iter()
                .map(|lvl| {
                    CipherParams::load(lvl).map(|p| {
                        let e = gatecount::cipher_units(&p, ff);
                        (p, e)
                    })
                })
                .collect::<Result<_, _>>()?;
            match format {
                TableFormat::Json => {
                    let objs: Vec<_> = rows
                        .iter()
                        .map(|(p, e)| {
                            serde_json::json!({
                                "level": p.kappa,
                                "flipflop_units": ff,
                                "lfsr": e.lfsr_units,
                                "filter": e.filter_units,
                                "nb": e.nb_units,
                                "ir": e.ir_units,
                                "total": e.total_units,
                            })
                        })
                        .collect();
                    print_json(&objs);
                }
                TableFormat::Table => {
                    let mut head = format!("{:>10}", "component");
                    for (p, _) in &rows {
                        head.push_str(&format!(" {:>12}", format!("S({},{})", p.l, p.m)));
                    }
                    emit(&head);
                    type Field = fn(&gatecount::GateEstimate) -> f64;
                    let lines: [(&str, Field); 5] = [
                        ("lfsr", |e| e.lfsr_units),
                        ("filter", |e| e.filter_units),
                        ("nb", |e| e.nb_units),
                        ("ir", |e| e.ir_units),
                        ("total", |e| e.total_units),
                    ];
                    for (name, get) in lines {
                        let mut line = format!("{name:>10}");
                        for (_, e) in &rows {
                            line.push_str(&format!(" {:>12.1}", get(e)));
                        }
                        emit(&line);
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { table } => verify(&table),
    }
}

/// Writes one line to stdout; exits quietly if the reader went away.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    emit(&serde_json::to_string_pretty(value).expect("serializable"));
}

/// Recomputes every checkable figure of the embedded tables and prints one
/// line per check. Returns false if anything failed.
fn verify(table: &str) -> Result<bool, Error> {
    let known = ["1", "2", "3", "4", "5", "7", "all"];
    if !known.contains(&table) {
        return Err(Error::InvalidArgument(format!(
            "unknown table {table:?} (expected 1, 2, 3, 4, 5, 7 or all)"
        )));
    }
    let mut all_pass = true;
    let mut report = |tbl: &str, level: u32, check: &str, pass: bool, detail: String| {
        all_pass &= pass;
        emit(&format!(
            "table{tbl} level {level:>3} {check}: {} ({detail})",
            if pass { "PASS" } else { "FAIL" }
        ));
    };
    let want = |t: &str| table == "all" || table == t;

    for row in ParameterTable::get().rows() {
        let lvl = row.kappa;
        if want("1") {
            // the filter figures follow from m alone
            let deg = 1u32 << row.m.ilog2();
            report(
                "1",
                lvl,
                "deg",
                row.deg == deg,
                format!("{} vs {deg}", row.deg),
            );
            report(
                "1",
                lvl,
                "linear-bias",
                row.lb_exponent as usize == row.m + 1,
                format!("2^-{} vs 2^-{}", row.lb_exponent, row.m + 1),
            );
            let ai = row.m.div_ceil(2) as u32;
            report("1", lvl, "ai", row.ai == ai, format!("{} vs {ai}", row.ai));
            report(
                "1",
                lvl,
                "fai",
                row.fai == row.ai + 1,
                format!("{} vs {}", row.fai, row.ai + 1),
            );
        }
        if want("2") {
            report(
                "2",
                lvl,
                "poly-irreducible",
                row.poly.is_irreducible(),
                row.poly.to_exponents(),
            );
        }
        if want("3") || want("4") || want("5") {
            for v in nlfsc::params::check_row(row) {
                let tbl = match v.check.as_str() {
                    "hex-length" | "tap-weights" | "endpoint-taps" => "3",
                    "nu" | "delta" | "nu-majority-bound" => "4",
                    "d-leftmost" | "d-low-zero" | "d-no-tap-adjacent" | "d-weight" => "5",
                    _ => continue,
                };
                if want(tbl) {
                    report(tbl, lvl, &v.check, v.pass, v.detail);
                }
            }
        }
        if want("7") {
            let p = CipherParams::load(lvl)?;
            let e = gatecount::cipher_units(&p, FLIPFLOP_UNITS);
            let got = [
                e.lfsr_units,
                e.filter_units,
                e.nb_units,
                e.ir_units,
                e.total_units,
            ];
            let expect = [
                row.gates.lfsr,
                row.gates.filter,
                row.gates.nb,
                row.gates.ir,
                row.gates.total,
            ];
            report(
                "7",
                lvl,
                "gate-units",
                got == expect,
                format!("{got:?} vs {expect:?}"),
            );
        }
    }
    Ok(all_pass)
}
