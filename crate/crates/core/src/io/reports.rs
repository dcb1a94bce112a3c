//! CSV report tables.
//!
//! Every file is UTF-8 with LF line endings; floats are printed with nine
//! significant digits in the style of C's `%.9g`.

use std::fs;
use std::path::{Path, PathBuf};

use crate::engine::UlamTable;
use crate::error::{Result, UlamError};
use crate::stats::{
    density, density_fit_error, discrepancy, gap_mean_fit_error, gap_stats, modular_profile,
    surjectivity_index, PRIME_POWERS_BELOW_30,
};

pub const DENSITY_FIT: (f64, f64) = (0.526, -0.3);
pub const GAP_MEAN_FIT: (f64, f64) = (1.9, 0.3);

/// Moduli for which `mod_density_<N>.csv` is written.
pub fn report_moduli() -> Vec<u64> {
    let mut m: Vec<u64> = PRIME_POWERS_BELOW_30.to_vec();
    m.push(6);
    m.sort_unstable();
    m
}

/// Formats like `%.9g`: nine significant digits, trailing zeros trimmed,
/// exponent notation below `1e-4` or from `1e9` up.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (8 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One CSV file: a file name, a header line and rendered rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvReport {
    pub file_name: String,
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl CsvReport {
    fn new(file_name: impl Into<String>, header: &'static str) -> Self {
        CsvReport {
            file_name: file_name.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.header.len() + 1 + self.rows.len() * 24);
        s.push_str(self.header);
        s.push('\n');
        for row in &self.rows {
            s.push_str(row);
            s.push('\n');
        }
        s
    }

    pub fn write_to(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(&self.file_name);
        fs::write(&path, self.render()).map_err(|e| UlamError::io(&path, e))?;
        Ok(path)
    }
}

pub fn counts_report(table: &UlamTable) -> CsvReport {
    let mut r = CsvReport::new("counts.csv", "n,count,density");
    for level in table.levels() {
        r.rows.push(format!(
            "{},{},{}",
            level.length(),
            level.count(),
            format_sig9(density(level))
        ));
    }
    r
}

pub fn gaps_report(table: &UlamTable) -> Result<CsvReport> {
    let mut r = CsvReport::new("gaps.csv", "n,mean,stddev,max_gap");
    for level in table.levels() {
        let s = gap_stats(level)?;
        r.rows.push(format!(
            "{},{},{},{}",
            level.length(),
            format_sig9(s.mean()),
            format_sig9(s.stddev()),
            s.max_gap()
        ));
    }
    Ok(r)
}

pub fn gap_histogram_report(table: &UlamTable, n: u32) -> Result<CsvReport> {
    let level = table
        .level(n)
        .ok_or_else(|| UlamError::State(format!("level {n} not computed")))?;
    let s = gap_stats(level)?;
    let total = s.gap_count() as f64;
    let mut r = CsvReport::new(format!("gap_hist_{n}.csv"), "gap,count,probability");
    for (&g, &c) in s.histogram() {
        r.rows
            .push(format!("{g},{c},{}", format_sig9(c as f64 / total)));
    }
    Ok(r)
}

pub fn mod_density_report(table: &UlamTable, modulus: u64) -> Result<CsvReport> {
    let mut r = CsvReport::new(format!("mod_density_{modulus}.csv"), "n,a,rho");
    for level in table.levels() {
        let profile = modular_profile(level, modulus)?;
        for (a, rho) in profile.densities().into_iter().enumerate() {
            r.rows
                .push(format!("{},{a},{}", level.length(), format_sig9(rho)));
        }
    }
    Ok(r)
}

pub fn discrepancy_report(table: &UlamTable) -> Result<CsvReport> {
    let mut r = CsvReport::new("discrepancy.csv", "n,pk,d");
    for level in table.levels() {
        for &pk in &PRIME_POWERS_BELOW_30 {
            let d = discrepancy(&modular_profile(level, pk)?);
            r.rows
                .push(format!("{},{pk},{}", level.length(), format_sig9(d)));
        }
    }
    Ok(r)
}

pub fn surjectivity_report(table: &UlamTable) -> CsvReport {
    let mut r = CsvReport::new("surjectivity.csv", "n,ell");
    for level in table.levels() {
        r.rows
            .push(format!("{},{}", level.length(), surjectivity_index(level)));
    }
    r
}

/// Fit errors in percent.
pub fn fits_report(table: &UlamTable) -> Result<CsvReport> {
    let mut r = CsvReport::new("fits.csv", "n,density_fit_error,gap_fit_error");
    for level in table.levels() {
        let d = density_fit_error(level, DENSITY_FIT.0, DENSITY_FIT.1) * 100.0;
        let g = gap_mean_fit_error(&gap_stats(level)?, GAP_MEAN_FIT.0, GAP_MEAN_FIT.1) * 100.0;
        r.rows.push(format!(
            "{},{},{}",
            level.length(),
            format_sig9(d),
            format_sig9(g)
        ));
    }
    Ok(r)
}

/// Every report for the table.
pub fn all_reports(table: &UlamTable) -> Result<Vec<CsvReport>> {
    let mut out = vec![
        counts_report(table),
        gaps_report(table)?,
        discrepancy_report(table)?,
        surjectivity_report(table),
        fits_report(table)?,
    ];
    for level in table.levels() {
        out.push(gap_histogram_report(table, level.length())?);
    }
    for m in report_moduli() {
        out.push(mod_density_report(table, m)?);
    }
    Ok(out)
}

/// Writes every report into `dir`, creating it if needed.
pub fn export_reports(table: &UlamTable, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| UlamError::io(dir, e))?;
    all_reports(table)?
        .iter()
        .map(|r| r.write_to(dir))
        .collect()
}
