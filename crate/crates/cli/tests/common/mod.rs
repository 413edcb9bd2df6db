#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Output;

use assert_cmd::Command;

pub fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

/// A scratch directory holding a copy of `docs/examples/inputs` as `inputs/`.
pub fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let src = docs().join("examples/inputs");
    std::fs::create_dir(dir.path().join("inputs")).unwrap();
    for entry in std::fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join("inputs").join(entry.file_name())).unwrap();
    }
    dir
}

pub fn mubtomo(dir: &Path) -> Command {
    let mut cmd = Command::cargo_bin("mubtomo").unwrap();
    cmd.current_dir(dir).env_remove("MUBTOMO_TOLERANCE");
    cmd
}

pub fn run(dir: &Path, args: &[&str]) -> Output {
    mubtomo(dir).args(args).output().unwrap()
}

/// One golden case per published output schema: (schema, arguments).
pub const GOLDEN_CASES: [(&str, &[&str]); 7] = [
    ("mub_set", &["construct", "--dim", "3", "--out", "mub_set.json"]),
    ("tomogram", &["tomogram", "--state", "inputs/state.json", "--out", "tomogram.json"]),
    ("density_matrix", &["reconstruct", "--tomogram", "inputs/tomogram.json", "--out", "density_matrix.json"]),
    (
        "simulation",
        &["simulate", "--state", "inputs/state.json", "--shots", "1000", "--seed", "42", "--repair", "project", "--out", "simulation.json"],
    ),
    ("verification", &["verify", "--dim", "2", "--level", "exhaustive", "--out", "verification.json"]),
    ("mub_symbol", &["intertwine", "sic2mub", "--symbol", "inputs/sic_symbol.json", "--out", "mub_symbol.json"]),
    ("sic_symbol", &["intertwine", "mub2sic", "--symbol", "inputs/mub_symbol.json", "--out", "sic_symbol.json"]),
];
