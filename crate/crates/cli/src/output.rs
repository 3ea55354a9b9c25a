//! CSV emission and run manifests.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// `x` with 12 significant digits, in the style of C's `%.12g`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let mut s = trim_zeros(mantissa.to_string());
        write!(s, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs()).unwrap();
        s
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A CSV table built in memory so it can be hashed before it is written.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.writer.write_record(fields).expect("in-memory write");
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("in-memory flush")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn manifest_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

/// Writes `bytes` to `out` (or stdout) and, for files, the manifest beside it.
pub fn emit(out: Option<&Path>, bytes: &[u8], manifest: &[(String, String)]) -> io::Result<()> {
    match out {
        None => io::stdout().lock().write_all(bytes),
        Some(path) => {
            fs::write(path, bytes)?;
            let mut text = String::new();
            for (k, v) in manifest {
                writeln!(text, "{k}={v}").unwrap();
            }
            writeln!(text, "output={}", path.file_name().unwrap_or_default().to_string_lossy()).unwrap();
            writeln!(text, "output_sha256={}", sha256_hex(bytes)).unwrap();
            fs::write(manifest_path(path), text)
        }
    }
}

/// Outcome of re-hashing the outputs named in a manifest.
#[derive(Debug, PartialEq, Eq)]
pub enum Verification {
    Match,
    Mismatch { expected: String, actual: String },
}

/// Parses `key=value` lines; the value runs to the end of the line.
pub fn parse_manifest(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn verify_manifest(path: &Path) -> io::Result<Verification> {
    let entries = parse_manifest(&fs::read_to_string(path)?);
    let get = |key: &str| {
        entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, format!("manifest lacks {key}")))
    };
    let name = get("output")?;
    let expected = get("output_sha256")?;
    let csv = path.parent().unwrap_or(Path::new(".")).join(name);
    let actual = sha256_hex(&fs::read(csv)?);
    Ok(if actual == expected {
        Verification::Match
    } else {
        Verification::Mismatch { expected, actual }
    })
}
