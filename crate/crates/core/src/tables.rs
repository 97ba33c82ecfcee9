//! Bit-exact coefficient tables of the main q-series, written as CSV
//! (columns n,numerator,denominator) or JSON (array of "num/den" strings).

use std::io::Write;
use std::str::FromStr;

use crate::arith::ORACLE_RECOMMENDED_MAX;
use crate::error::{Error, Result};
use crate::qseries;
use crate::series::PowerSeries;

/// Which family of coefficients to tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Moments s_k(n); parameter is k >= 1.
    SK,
    /// g_k coefficients; parameter is k >= 1.
    GK,
    /// Third reciprocal power sums s_3^*(n); no parameter.
    Srp3,
    /// Twisted sums s_{chi_p}(n); parameter is an odd prime p.
    Twisted,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s_k" | "sk" => Ok(TableKind::SK),
            "g_k" | "gk" => Ok(TableKind::GK),
            "srp3" => Ok(TableKind::Srp3),
            "twisted" => Ok(TableKind::Twisted),
            other => Err(Error::Config(format!(
                "unknown table kind `{other}` (expected s_k, g_k, srp3 or twisted)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

/// Build the requested coefficient table as an exact series.
pub fn build_table(kind: TableKind, parameter: u64, order: usize) -> Result<PowerSeries> {
    match kind {
        TableKind::SK => {
            if parameter < 1 {
                return Err(Error::Config("s_k tables need k >= 1".into()));
            }
            qseries::moment_series(parameter as u32, order)
        }
        TableKind::GK => {
            if parameter < 1 {
                return Err(Error::Config("g_k tables need k >= 1".into()));
            }
            qseries::g_series(parameter as u32, order)
        }
        TableKind::Srp3 => qseries::srp3_series(order),
        TableKind::Twisted => qseries::twisted_series(parameter, order),
    }
}

/// True when the order is beyond the comfortable brute-force range; callers
/// may want to warn before cross-checking against the enumeration oracle.
pub fn beyond_oracle_range(order: usize) -> bool {
    order as u64 > ORACLE_RECOMMENDED_MAX
}

/// Write a table in the requested format.
pub fn emit_table<W: Write>(
    kind: TableKind,
    parameter: u64,
    order: usize,
    format: TableFormat,
    out: &mut W,
) -> Result<()> {
    let series = build_table(kind, parameter, order)?;
    match format {
        TableFormat::Csv => series.write_csv(out)?,
        TableFormat::Json => {
            let strings = series.to_fraction_strings();
            serde_json::to_writer_pretty(&mut *out, &strings)
                .map_err(|e| Error::Config(format!("json serialization failed: {e}")))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_match_expected_coefficients() {
        let mut buf = Vec::new();
        emit_table(TableKind::SK, 1, 10, TableFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "n,numerator,denominator");
        assert_eq!(rows[1 + 3], "3,11,6");

        let mut buf = Vec::new();
        emit_table(TableKind::GK, 2, 5, TableFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1 + 2).unwrap(), "2,-7,4");

        let mut buf = Vec::new();
        emit_table(TableKind::Twisted, 3, 3, TableFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1 + 2).unwrap(), "2,-1,2");
    }

    #[test]
    fn json_emits_fraction_strings() {
        let mut buf = Vec::new();
        emit_table(TableKind::SK, 1, 4, TableFormat::Json, &mut buf).unwrap();
        let strings: Vec<String> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(strings[3], "11/6");
        assert_eq!(strings[0], "0/1");
    }

    #[test]
    fn kind_and_format_parse() {
        assert_eq!(TableKind::from_str("s_k").unwrap(), TableKind::SK);
        assert_eq!(TableKind::from_str("twisted").unwrap(), TableKind::Twisted);
        assert!(TableKind::from_str("nope").is_err());
        assert_eq!(TableFormat::from_str("json").unwrap(), TableFormat::Json);
        assert!(TableFormat::from_str("xml").is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(build_table(TableKind::SK, 0, 5).is_err());
        assert!(build_table(TableKind::Twisted, 9, 5).is_err());
        assert!(beyond_oracle_range(100));
        assert!(!beyond_oracle_range(30));
    }
}
