//! CSV tables for feature counting functions and barcodes.

use std::fmt::Write;

use pnoise_core::barcode1::Barcode;
use pnoise_core::exactalg::Rational;
use pnoise_core::fcf::{BarSearch, FeatureCountingFunction, StepStart};

use crate::numbers::parse_rational;

/// `t,value` rows, one per step. An open start `q` is written `q+`.
/// Inexact searches get a leading comment line.
pub fn fcf_csv(search: &BarSearch) -> String {
    let mut out = String::new();
    if !search.is_exact() {
        writeln!(out, "# approximate: some values are upper bounds").unwrap();
    }
    out.push_str(&steps_csv(&search.function));
    out
}

pub fn steps_csv(f: &FeatureCountingFunction) -> String {
    let mut out = String::from("t,value\n");
    for (start, v) in f.steps() {
        writeln!(out, "{start},{v}").unwrap();
    }
    out
}

/// Reads the output of [`fcf_csv`] back.
pub fn parse_fcf_csv(text: &str) -> Result<FeatureCountingFunction, String> {
    let mut steps = Vec::new();
    let mut header = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header {
            if line != "t,value" {
                return Err(format!("line {}: expected header 't,value'", i + 1));
            }
            header = true;
            continue;
        }
        let (t, v) = line.split_once(',').ok_or_else(|| format!("line {}: expected 't,value'", i + 1))?;
        let start = match t.trim().strip_suffix('+') {
            Some(q) => StepStart::Open(parse_rational(q).map_err(|e| format!("line {}: {e}", i + 1))?),
            None => StepStart::Closed(parse_rational(t).map_err(|e| format!("line {}: {e}", i + 1))?),
        };
        let v: usize = v.trim().parse().map_err(|_| format!("line {}: bad value '{v}'", i + 1))?;
        steps.push((start, v));
    }
    FeatureCountingFunction::new(steps).map_err(|e| e.to_string())
}

/// `start,end` rows in real units; free summands end at `inf`.
pub fn barcode_csv(b: &Barcode) -> String {
    let mut out = String::from("start,end\n");
    for (s, e) in b.intervals() {
        let s = b.alpha * Rational::from_integer(s as i64);
        match e {
            Some(e) => writeln!(out, "{s},{}", b.alpha * Rational::from_integer(e as i64)).unwrap(),
            None => writeln!(out, "{s},inf").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pnoise_core::exactalg::rat;

    #[test]
    fn csv_round_trip() {
        let f = FeatureCountingFunction::new(vec![
            (StepStart::Closed(rat(0, 1)), 3),
            (StepStart::Open(rat(1, 2)), 1),
            (StepStart::Closed(rat(2, 1)), 0),
        ])
        .unwrap();
        let text = steps_csv(&f);
        assert_eq!(text, "t,value\n0,3\n1/2+,1\n2,0\n");
        assert_eq!(parse_fcf_csv(&text).unwrap(), f);
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_fcf_csv("0,1\n").is_err());
    }
}
