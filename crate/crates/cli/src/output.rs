//! Serialization helpers: 17-significant-digit JSON, point-cloud CSV/JSON,
//! and atomic file writes.

use std::io::{self, Write};
use std::path::Path;

use hopfq::PointCloud;
use serde::Serialize;
use serde_json::ser::Formatter;
use tempfile::NamedTempFile;

/// Compact JSON with every float written as `{:.16e}` (17 significant
/// digits, enough to round-trip any `f64`).
#[derive(Debug, Clone, Copy, Default)]
pub struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", float(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    value.serialize(&mut ser)?;
    Ok(buf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CloudFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "x,y,z,slice,fiber_id,param";

pub fn cloud_csv(cloud: &PointCloud) -> Vec<u8> {
    let mut out = String::with_capacity(64 * (cloud.points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in &cloud.points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            float(p.xyz[0]),
            float(p.xyz[1]),
            float(p.xyz[2]),
            p.slice,
            p.fiber_id,
            float(p.param)
        ));
    }
    out.into_bytes()
}

#[derive(Serialize)]
struct JsonCloud {
    version: &'static str,
    points: Vec<JsonPoint>,
}

#[derive(Serialize)]
struct JsonPoint {
    xyz: [f64; 3],
    meta: JsonMeta,
}

#[derive(Serialize)]
struct JsonMeta {
    slice: usize,
    fiber_id: usize,
    param: f64,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    line: bool,
}

pub fn cloud_json(cloud: &PointCloud) -> serde_json::Result<Vec<u8>> {
    let doc = JsonCloud {
        version: "1",
        points: cloud
            .points
            .iter()
            .map(|p| JsonPoint {
                xyz: p.xyz,
                meta: JsonMeta {
                    slice: p.slice,
                    fiber_id: p.fiber_id,
                    param: p.param,
                    line: cloud.line_fibers.contains(&p.fiber_id),
                },
            })
            .collect(),
    };
    let mut bytes = to_json(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `bytes` to a temporary file beside `path` and renames it into
/// place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfq::CloudPoint;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            1e300,
            0.0,
            f64::MIN_POSITIVE,
            std::f64::consts::FRAC_1_SQRT_2,
        ] {
            let s = float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let json = to_json(&x).unwrap();
            let back: f64 = serde_json::from_slice(&json).unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let cloud = PointCloud {
            label: "t".into(),
            points: vec![CloudPoint {
                xyz: [1.0, 0.0, -1.0],
                slice: 2,
                fiber_id: 3,
                param: 0.25,
            }],
            ..Default::default()
        };
        let text = String::from_utf8(cloud_csv(&cloud)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<_> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 6);
        assert_eq!(row[3], "2");
        assert_eq!(row[4], "3");
        assert_eq!(row[5].parse::<f64>().unwrap(), 0.25);

        let json: serde_json::Value = serde_json::from_slice(&cloud_json(&cloud).unwrap()).unwrap();
        assert_eq!(json["version"], "1");
        assert_eq!(json["points"][0]["meta"]["fiber_id"], 3);
        assert!(json["points"][0]["meta"].get("line").is_none());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"a").unwrap();
        write_atomic(&path, b"b").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/out.csv"), b"c").is_err());
    }
}
