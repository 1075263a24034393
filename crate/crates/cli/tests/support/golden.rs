//! Golden-file cases: `golden/*.args` holds one argument per line and the
//! matching `.out` holds `exit: N` followed by the expected stdout.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<PathBuf> {
    let mut cases: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    cases.sort();
    cases
}

pub fn run_case(args_file: &Path) -> String {
    let text = fs::read_to_string(args_file).unwrap();
    let args: Vec<&str> = text.lines().collect();
    let out = Command::new(env!("CARGO_BIN_EXE_dlaurent")).args(&args).output().unwrap();
    format!("exit: {}\n{}", out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

pub fn expected(args_file: &Path) -> String {
    fs::read_to_string(args_file.with_extension("out")).unwrap_or_default()
}
