//! Golden CLI cases: `tests/golden/<case>/{args, in.json, out.json, exit}`.
//!
//! `args` holds one argument per line and is passed to the binary, `in.json`
//! is fed on standard input. Set `CNLATTICE_BLESS=1` to rewrite `out.json`
//! and `exit` from the current binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub const SUBCOMMANDS: [&str; 18] = [
    "map-apply",
    "map-convert",
    "map-invertible",
    "map-majorizes",
    "map-normalize",
    "polar",
    "gram",
    "unitary-equiv",
    "sl-normalize",
    "lattice-validate",
    "lattice-covolume",
    "lattice-normalize",
    "lattice-same",
    "lattice-equiv",
    "sigma-check",
    "torus-reduce",
    "torus-add",
    "dim1-forms",
];

pub struct Case {
    pub name: String,
    pub dir: PathBuf,
    pub args: Vec<String>,
}

impl Case {
    pub fn subcommand(&self) -> &str {
        self.args.first().map(String::as_str).unwrap_or("")
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn cases() -> Vec<Case> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    dirs.into_iter()
        .map(|dir| {
            let args = fs::read_to_string(dir.join("args"))
                .expect("args file")
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect();
            let name = dir.file_name().unwrap().to_string_lossy().into_owned();
            Case { name, dir, args }
        })
        .collect()
}

pub fn run_binary(case: &Case) -> (i32, Vec<u8>) {
    let input = fs::read(case.dir.join("in.json")).expect("in.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_cnlattice"))
        .args(&case.args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn cnlattice");
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().expect("cnlattice output");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Runs a case twice; the two runs must agree with each other and with the
/// stored output.
pub fn check(case: &Case) -> Result<(), String> {
    let (code, stdout) = run_binary(case);
    let (code2, stdout2) = run_binary(case);
    if (code, &stdout) != (code2, &stdout2) {
        return Err(format!("{}: two runs differ", case.name));
    }
    if std::env::var_os("CNLATTICE_BLESS").is_some() {
        fs::write(case.dir.join("out.json"), &stdout).unwrap();
        fs::write(case.dir.join("exit"), format!("{code}\n")).unwrap();
        return Ok(());
    }
    let expected = fs::read(case.dir.join("out.json"))
        .map_err(|e| format!("{}: missing out.json ({e})", case.name))?;
    let expected_code: i32 = fs::read_to_string(case.dir.join("exit"))
        .map_err(|e| format!("{}: missing exit ({e})", case.name))?
        .trim()
        .parse()
        .map_err(|e| format!("{}: bad exit file ({e})", case.name))?;
    if expected_code != code {
        return Err(format!(
            "{}: exit {code}, expected {expected_code}",
            case.name
        ));
    }
    if expected != stdout {
        return Err(format!(
            "{}: output differs\n  expected: {}\n  actual:   {}",
            case.name,
            String::from_utf8_lossy(&expected).trim_end(),
            String::from_utf8_lossy(&stdout).trim_end()
        ));
    }
    Ok(())
}
