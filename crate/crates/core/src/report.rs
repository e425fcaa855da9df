//! Deterministic report emission: CSV with fixed float formatting, JSON run
//! manifests, and atomic file writes (temp + rename) so partially written
//! outputs are never observed.

use crate::harmonic::DimRow;
use crate::multiplier::{BallVolPoint, PlancherelPoint, WeightIntPoint};
use crate::zonal::ZonalRow;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// 17 significant digits: enough to round-trip any f64, and byte-stable
/// across runs.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp_path = std::path::PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp_path)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp_path, path)
}

fn csv_join(fields: &[String]) -> String {
    fields.join(",")
}

pub fn dims_csv(rows: &[DimRow]) -> String {
    let mut out = String::from("n,h,m,dim,lambda_delta,lambda_gamma,lambda_l\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n, r.h, r.m, r.dim, r.lambda_delta, r.lambda_gamma, r.lambda_l
        ));
    }
    out
}

pub fn zonal_csv(rows: &[ZonalRow]) -> String {
    let mut out = String::from("h,m,c_up,c_mid,c_down,gamma_mid,dim\n");
    for r in rows {
        out.push_str(&csv_join(&[
            r.h.to_string(),
            r.m.to_string(),
            fmt_f64(r.c_up),
            fmt_f64(r.c_mid),
            fmt_f64(r.c_down),
            fmt_f64(r.gamma_mid),
            r.dim.to_string(),
        ]));
        out.push('\n');
    }
    out
}

pub fn plancherel_csv(rows: &[PlancherelPoint]) -> String {
    let mut out = String::from("N,alpha,numerator,denominator,ratio,route\n");
    for r in rows {
        out.push_str(&csv_join(&[
            r.n_scale.to_string(),
            fmt_f64(r.alpha),
            fmt_f64(r.numerator),
            fmt_f64(r.denominator),
            fmt_f64(r.ratio),
            r.route.to_string(),
        ]));
        out.push('\n');
    }
    out
}

pub fn ball_volume_csv(rows: &[BallVolPoint]) -> String {
    let mut out = String::from("r,estimate,stderr,hits\n");
    for r in rows {
        out.push_str(&csv_join(&[
            fmt_f64(r.r),
            fmt_f64(r.estimate),
            fmt_f64(r.stderr),
            r.hits.to_string(),
        ]));
        out.push('\n');
    }
    out
}

pub fn weight_integral_csv(rows: &[WeightIntPoint]) -> String {
    let mut out = String::from("r,alpha,estimate,stderr,reference,ratio\n");
    for r in rows {
        out.push_str(&csv_join(&[
            fmt_f64(r.r),
            fmt_f64(r.alpha),
            fmt_f64(r.estimate),
            fmt_f64(r.stderr),
            fmt_f64(r.reference),
            fmt_f64(r.ratio),
        ]));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolventPoint {
    pub r: f64,
    pub ell: u32,
    pub sum: f64,
}

pub fn resolvent_csv(rows: &[ResolventPoint]) -> String {
    let mut out = String::from("r,ell,sum\n");
    for r in rows {
        out.push_str(&csv_join(&[fmt_f64(r.r), r.ell.to_string(), fmt_f64(r.sum)]));
        out.push('\n');
    }
    out
}

/// Reproducibility record attached to every scan output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub n: usize,
    pub seed: u64,
    pub samples: u64,
    pub grid: Vec<f64>,
    pub threads: usize,
    pub versions: Versions,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub package: &'static str,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(n: usize, seed: u64, samples: u64, grid: Vec<f64>) -> Self {
        RunManifest {
            n,
            seed,
            samples,
            grid,
            threads: rayon::current_num_threads(),
            versions: Versions {
                package: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_stable() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.125), "-1.2500000000000000e-1");
        let v = 0.1 + 0.2;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v, "round-trips exactly");
    }

    #[test]
    fn zonal_table_renders() {
        let rows = crate::zonal::zonal_table(2, 2);
        let csv = zonal_csv(&rows);
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines[0], "h,m,c_up,c_mid,c_down,gamma_mid,dim");
        assert_eq!(lines.len(), 5); // (0,0), (1,0), (2,0), (2,1)
        assert!(lines[1].starts_with("0,0,"));
        assert!(lines[1].ends_with(",1"));
    }

    #[test]
    fn atomic_write_creates_file() {
        let dir = std::env::temp_dir().join("qs_report_test");
        let path = dir.join("x.csv");
        write_atomic(&path, "a,b\n1,2\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        std::fs::remove_dir_all(&dir).ok();
    }
}
