//! CSV serialization of per-prime records and decay curves.

use std::fmt::Write as _;

use trigal_core::harness::ChebotarevRecord;

use crate::error::CliError;

pub const RECORD_HEADER: &str = "p,log_p,r_all,r_nonzero,factor_degrees,squarefree";

/// Positional decimal with 17 significant digits, correctly rounded.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let body = if exp >= 16 {
        format!("{digits}{}", "0".repeat((exp - 16) as usize))
    } else if exp >= 0 {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

pub fn emit_records(records: &[ChebotarevRecord]) -> String {
    let mut out = String::with_capacity(48 * (records.len() + 1));
    out.push_str(RECORD_HEADER);
    out.push('\n');
    for r in records {
        let degrees: Vec<String> = r.degrees.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.p,
            sig17(r.log_p),
            r.r_all,
            r.r_nonzero,
            degrees.join(";"),
            r.squarefree
        )
        .expect("writing to a string");
    }
    out
}

pub fn parse_records(text: &str) -> Result<Vec<ChebotarevRecord>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(RECORD_HEADER) => {}
        other => return Err(CliError::Config(format!("unexpected record header {other:?}"))),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = |what: &str| CliError::Config(format!("line {}: bad {what} in {line:?}", i + 2));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(bad("field count"));
            }
            let degrees = if fields[4].is_empty() {
                Vec::new()
            } else {
                fields[4].split(';').map(|d| d.parse().map_err(|_| bad("degree"))).collect::<Result<_, _>>()?
            };
            Ok(ChebotarevRecord {
                p: fields[0].parse().map_err(|_| bad("p"))?,
                log_p: fields[1].parse().map_err(|_| bad("log_p"))?,
                r_all: fields[2].parse().map_err(|_| bad("r_all"))?,
                r_nonzero: fields[3].parse().map_err(|_| bad("r_nonzero"))?,
                degrees,
                squarefree: fields[5].parse().map_err(|_| bad("squarefree"))?,
            })
        })
        .collect()
}

/// `n,d` rows of a decay curve.
pub fn emit_curve(curve: &[f64]) -> String {
    let mut out = String::from("n,d\n");
    for (n, d) in curve.iter().enumerate() {
        writeln!(out, "{n},{}", sig17(*d)).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(11f64.ln()), "2.3978952727983707");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(-0.125), "-0.12500000000000000");
        assert_eq!(sig17(12.5), "12.500000000000000");
        assert_eq!(sig17(1e20), "100000000000000000000");
        assert_eq!(sig17(0.0), "0.0000000000000000");
        for v in [std::f64::consts::PI, 1e-7, 123456.789, 9.999999999999999] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn golden_row() {
        let r = ChebotarevRecord {
            p: 11,
            log_p: 11f64.ln(),
            r_all: 2,
            r_nonzero: 2,
            degrees: vec![1, 1, 2],
            squarefree: true,
        };
        let csv = emit_records(std::slice::from_ref(&r));
        assert_eq!(csv, format!("{RECORD_HEADER}\n11,2.3978952727983707,2,2,1;1;2,true\n"));
        assert_eq!(parse_records(&csv).unwrap(), vec![r]);
    }

    #[test]
    fn empty_and_malformed() {
        assert_eq!(emit_records(&[]), format!("{RECORD_HEADER}\n"));
        assert!(parse_records(&emit_records(&[])).unwrap().is_empty());
        assert!(parse_records("p,q\n").is_err());
        assert!(parse_records(&format!("{RECORD_HEADER}\n11,2.3,2,2,1;x,true\n")).is_err());
    }
}
