use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use kterm_core::blockcode::{
    correct, correct_single, correction_coefficient, decode, detect, encode, inject, run_channel,
    CodeMessage, Corruption, CorrectionReport, CorrectionStatus, ErrorModel, MultiOptions,
    PlainMatrix,
};
use kterm_core::cipher::{
    decrypt_message, encrypt_message, encrypt_with_key, Alphabet, CipherKey, KeyFile,
};
use kterm_core::companion::{det_power, matrix_recurrence_holds, structure_check};
use kterm_core::recurrence::{cassini_deg2, cassini_deg3};
use kterm_core::{BigInt, Error, IntegerMatrix, RecurrenceSpec};

use crate::{status, Cli, Command, SpecArgs};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io(PathBuf, std::io::Error),
    Checksum,
    Uncorrectable,
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::Frame(_) | Error::Decode(_)) => status::DECODE,
            Failure::Core(_) | Failure::Io(..) => status::VALIDATION,
            Failure::Uncorrectable => status::UNCORRECTABLE,
            Failure::Checksum => status::CHECKSUM,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Checksum => write!(f, "checksum mismatch: det E does not match det M"),
            Failure::Uncorrectable => write!(f, "message is uncorrectable and must be rejected"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

/// Prints `key=value` in machine mode, `key: value` otherwise.
struct Out {
    machine: bool,
}

impl Out {
    fn pair(&self, key: &str, value: impl fmt::Display) {
        if self.machine {
            println!("{key}={value}");
        } else {
            println!("{}: {value}", key.replace('_', " "));
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn resolve_spec(args: &SpecArgs) -> Result<RecurrenceSpec, Failure> {
    let list = args
        .coeffs
        .as_deref()
        .ok_or_else(|| Failure::Usage("coefficients are required (-a LIST)".into()))?;
    let spec = RecurrenceSpec::from_list(list)?;
    check_degree(args.k, &spec)?;
    Ok(spec)
}

fn check_degree(k: Option<usize>, spec: &RecurrenceSpec) -> Outcome {
    match k {
        Some(k) if k != spec.degree() => Err(Failure::Core(Error::Validation(format!(
            "-k {k} does not match {} coefficients",
            spec.degree()
        )))),
        _ => Ok(()),
    }
}

fn alphabet(symbols: Option<&str>) -> Result<Alphabet, Failure> {
    Ok(match symbols {
        Some(s) => Alphabet::from_symbols(s)?,
        None => Alphabet::default(),
    })
}

fn positions(list: &[(usize, usize)]) -> String {
    list.iter()
        .map(|(i, j)| format!("({},{})", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: &Cli) -> Outcome {
    let out = Out {
        machine: cli.machine,
    };
    match &cli.command {
        Command::Seq { spec, m } => {
            let spec = resolve_spec(spec)?;
            for v in spec.generate(*m)?.values() {
                println!("{v}");
            }
            Ok(())
        }
        Command::Identities { spec, n, tol } => identities(&out, &resolve_spec(spec)?, *n, *tol),
        Command::Encrypt {
            spec,
            block_len,
            key,
            alphabet: symbols,
            key_out,
            plaintext,
        } => {
            if plaintext.is_empty() {
                return Err(Failure::Usage("plaintext is empty".into()));
            }
            let (enc, alphabet) = match key {
                Some(path) => {
                    let file: KeyFile = read(path)?.parse()?;
                    check_degree(spec.k, file.key.spec())?;
                    (encrypt_with_key(&file.key, plaintext, &file.alphabet)?, file.alphabet)
                }
                None => {
                    let alphabet = alphabet(symbols.as_deref())?;
                    let spec = resolve_spec(spec)?;
                    (encrypt_message(&spec, *block_len, plaintext, &alphabet)?, alphabet)
                }
            };
            if let Some(path) = key_out {
                let file = KeyFile {
                    key: enc.key.clone(),
                    alphabet,
                };
                write(path, &file.to_string())?;
            }
            if out.machine {
                out.pair("s", enc.key.s());
            } else {
                out.pair("key", enc.key.render_list());
            }
            out.pair("ciphertext", &enc.cipher_text);
            out.pair("padding", enc.padding);
            Ok(())
        }
        Command::Decrypt {
            spec,
            s,
            block_len,
            key,
            alphabet: symbols,
            ciphertext,
        } => {
            let (key, alphabet) = match key {
                Some(path) => {
                    let file: KeyFile = read(path)?.parse()?;
                    (file.key, file.alphabet)
                }
                None => {
                    let s = s.ok_or_else(|| Failure::Usage("-s is required without --key".into()))?;
                    let key = CipherKey::new(resolve_spec(spec)?, s, *block_len)?;
                    (key, alphabet(symbols.as_deref())?)
                }
            };
            let plain = decrypt_message(&key, ciphertext, &alphabet)?;
            if out.machine {
                out.pair("plaintext", plain);
            } else {
                println!("{plain}");
            }
            Ok(())
        }
        Command::Encode {
            spec,
            n,
            matrix,
            out: path,
        } => {
            let spec = resolve_spec(spec)?;
            let m: IntegerMatrix = read(matrix)?.parse()?;
            let msg = encode(&spec, *n, &PlainMatrix::new(m)?)?;
            match path {
                Some(path) => {
                    write(path, &msg.to_string())?;
                    out.pair("det_m", &msg.det_m);
                }
                None => print!("{msg}"),
            }
            Ok(())
        }
        Command::Decode {
            msg,
            force,
            out: path,
        } => {
            let msg: CodeMessage = read(msg)?.parse()?;
            if !detect(&msg) && !force {
                return Err(Failure::Checksum);
            }
            let m = decode(&msg)?.into_inner();
            match path {
                Some(path) => write(path, &m.to_string()),
                None => {
                    print!("{m}");
                    Ok(())
                }
            }
        }
        Command::Inject {
            msg,
            at,
            weight,
            seed,
            delta_min,
            delta_max,
            out: path,
        } => {
            let mut msg: CodeMessage = read(msg)?.parse()?;
            let applied = if at.is_empty() {
                let model = ErrorModel::new(*weight, *delta_min, *delta_max, *seed)?;
                inject(&mut msg.e, &model)?
            } else {
                let k = msg.degree();
                let mut applied = Vec::new();
                for spec in at {
                    let c = parse_corruption(spec, k)?;
                    let v = msg.e.get(c.row, c.col) + BigInt::from(c.delta);
                    msg.e.set(c.row, c.col, v);
                    applied.push(c);
                }
                applied
            };
            write(path, &msg.to_string())?;
            for c in applied {
                let cell = format!("({},{})", c.row + 1, c.col + 1);
                if out.machine {
                    println!("corrupted={cell} delta={:+}", c.delta);
                } else {
                    println!("corrupted {cell} by {:+}", c.delta);
                }
            }
            Ok(())
        }
        Command::Correct {
            msg,
            window,
            max_weight,
            out: path,
        } => {
            let msg: CodeMessage = read(msg)?.parse()?;
            let report = if *max_weight <= 1 {
                correct_single(&msg)?
            } else {
                let options = MultiOptions {
                    max_weight: *max_weight,
                    window: *window,
                    ..MultiOptions::default()
                };
                correct(&msg, &options)?
            };
            print_report(&out, &report);
            if let (Some(path), Some(fixed)) = (path, &report.corrected) {
                write(path, &fixed.to_string())?;
            }
            match report.status {
                CorrectionStatus::Uncorrectable => Err(Failure::Uncorrectable),
                _ => Ok(()),
            }
        }
        Command::Channel {
            spec,
            n,
            trials,
            weight,
            seed,
            delta_min,
            delta_max,
            window,
            max_weight,
        } => {
            let spec = match &spec.coeffs {
                Some(_) => resolve_spec(spec)?,
                None => RecurrenceSpec::new(vec![1; spec.k.unwrap_or(2)])?,
            };
            let model = ErrorModel::new(*weight, *delta_min, *delta_max, *seed)?;
            let options = MultiOptions {
                max_weight: *max_weight,
                window: *window,
                ..MultiOptions::default()
            };
            let stats = run_channel(&spec, *n, *trials, &model, &options)?;
            let s = correction_coefficient(spec.degree())?;
            println!(
                "trials={} detected={} corrected={} S={s}",
                stats.trials, stats.detected, stats.corrected
            );
            out.pair("exact", stats.exact);
            Ok(())
        }
    }
}

fn identities(out: &Out, spec: &RecurrenceSpec, n: u32, tol: f64) -> Outcome {
    let k = spec.degree();
    let det = det_power(spec, n)?;
    out.pair("det", &det.det);
    out.pair("det_expected", &det.expected);
    out.pair("det_holds", det.holds);
    out.pair("structure_holds", structure_check(spec, n)?);
    if n as usize >= k {
        out.pair("matrix_recurrence_holds", matrix_recurrence_holds(spec, n)?);
    }
    let a = spec.coeffs();
    let cassini = match k {
        2 => Some(cassini_deg2(&a[0], &a[1], n as usize)?),
        3 if n >= 2 => Some(cassini_deg3(&a[0], &a[1], &a[2], n as usize)?),
        _ => None,
    };
    if let Some(r) = cassini {
        out.pair("cassini_lhs", &r.lhs);
        out.pair("cassini_rhs", &r.rhs);
        out.pair("cassini_holds", r.holds);
    }
    if spec.is_positive() {
        let root = kterm_core::blockcode::dominant_root(spec, tol)?;
        out.pair("root", root.value);
    }
    Ok(())
}

fn print_report(out: &Out, report: &CorrectionReport) {
    match report.status {
        CorrectionStatus::Intact if out.machine => println!("status=intact"),
        CorrectionStatus::Intact => println!("intact"),
        CorrectionStatus::Corrected if out.machine => {
            println!("status=corrected");
            println!("positions={}", positions(&report.positions));
            println!("checksum_repaired={}", report.checksum_repaired);
        }
        CorrectionStatus::Corrected if report.checksum_repaired => println!("corrected det M"),
        CorrectionStatus::Corrected => println!("corrected {}", positions(&report.positions)),
        CorrectionStatus::Uncorrectable if out.machine => println!("status=uncorrectable"),
        CorrectionStatus::Uncorrectable => println!("uncorrectable"),
    }
    if !report.zero_cofactor.is_empty() {
        let cells = positions(&report.zero_cofactor);
        if out.machine {
            println!("zero_cofactor={cells}");
        } else {
            println!("checksum blind at {cells}");
        }
    }
}

/// `ROW,COL,DELTA`, 1-based.
fn parse_corruption(text: &str, k: usize) -> Result<Corruption, Failure> {
    let bad = || Failure::Usage(format!("--at expects ROW,COL,DELTA, got {text:?}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [r, c, d] = parts[..] else {
        return Err(bad());
    };
    let row: usize = r.parse().map_err(|_| bad())?;
    let col: usize = c.parse().map_err(|_| bad())?;
    let delta: i64 = d.trim_start_matches('+').parse().map_err(|_| bad())?;
    if !(1..=k).contains(&row) || !(1..=k).contains(&col) || delta == 0 {
        return Err(Failure::Usage(format!("--at {text:?} is outside the {k}x{k} matrix or zero")));
    }
    Ok(Corruption {
        row: row - 1,
        col: col - 1,
        delta,
    })
}
