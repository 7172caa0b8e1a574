#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use curvelab::io::spec::parse_curve_spec;
use curvelab::{Curve, SupportCurve};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn curve_path(name: &str) -> PathBuf {
    golden_dir().join("curves").join(format!("{name}.json"))
}

pub fn curve_text(name: &str) -> String {
    std::fs::read_to_string(curve_path(name)).unwrap()
}

pub fn curve(name: &str) -> Curve {
    parse_curve_spec(&curve_text(name)).unwrap().curve
}

pub fn support(name: &str) -> SupportCurve {
    curve(name).as_support().unwrap().clone()
}

pub fn oracle_support(name: &str) -> oracle::Support {
    oracle::Support::from_json(&curve_text(name))
}

/// Support curves with non-degenerate fronts.
pub const FRONT_CURVES: &[&str] = &["oval", "sin2", "sin3", "sin5", "sin2p5", "rosette"];
