//! Trajectory files: hand-keypoint positions relative to a phone corner.
//!
//! CSV format: header `X,Y,U,V,C`, one row per frame. X,Y are pixel
//! positions, U,V the displacement to the next frame (zeros on the last
//! row), C a T/F marker flag. The U,V,C columns are optional. A sidecar
//! `<name>.meta.json` may carry keypoint id, fps and scenario.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}, line {line}: displacement column disagrees with positions")]
    InconsistentDisplacement { path: PathBuf, line: usize },
    #[error("{path}: trajectory needs at least 3 points, got {got}")]
    TooFewPoints { path: PathBuf, got: usize },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub keypoint_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
}

/// A time-ordered 2D keypoint track.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub points: Vec<(f64, f64)>,
    pub displacements: Option<Vec<(f64, f64)>>,
    pub markers: Option<Vec<bool>>,
    pub meta: TrajectoryMeta,
    pub frame_stride: u32,
}

impl Trajectory {
    pub fn from_points(points: Vec<(f64, f64)>) -> Trajectory {
        Trajectory {
            points,
            displacements: None,
            markers: None,
            meta: TrajectoryMeta::default(),
            frame_stride: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fill the displacement column from the positions (last row zeros).
    pub fn with_displacements(mut self) -> Trajectory {
        let n = self.points.len();
        let mut disp = Vec::with_capacity(n);
        for i in 0..n {
            if i + 1 < n {
                let (x0, y0) = self.points[i];
                let (x1, y1) = self.points[i + 1];
                disp.push((x1 - x0, y1 - y0));
            } else {
                disp.push((0.0, 0.0));
            }
        }
        self.displacements = Some(disp);
        self
    }
}

const DISP_TOL: f64 = 1e-6;

fn meta_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

pub fn load_trajectory(path: impl AsRef<Path>) -> Result<Trajectory, TrajectoryError> {
    let path = path.as_ref();
    let io_err = |source| TrajectoryError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| TrajectoryError::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(|h| h.to_ascii_uppercase())
        .collect();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (xi, yi) = match (col("X"), col("Y")) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(TrajectoryError::Parse {
                path: path.to_path_buf(),
                line: 1,
                message: "header must contain X and Y columns".into(),
            })
        }
    };
    let ui = col("U");
    let vi = col("V");
    let ci = col("C");

    let mut points = Vec::new();
    let mut disp = Vec::new();
    let mut markers = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| TrajectoryError::Parse {
            path: path.to_path_buf(),
            line,
            message: e.to_string(),
        })?;
        let field = |i: usize| -> Result<f64, TrajectoryError> {
            record
                .get(i)
                .ok_or(())
                .and_then(|s| s.parse::<f64>().map_err(|_| ()))
                .map_err(|_| TrajectoryError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("bad numeric field in column {i}"),
                })
        };
        points.push((field(xi)?, field(yi)?));
        if let (Some(u), Some(v)) = (ui, vi) {
            disp.push((field(u)?, field(v)?));
        }
        if let Some(c) = ci {
            let raw = record.get(c).unwrap_or("F");
            markers.push(raw.eq_ignore_ascii_case("T"));
        }
    }
    if points.len() < 3 {
        return Err(TrajectoryError::TooFewPoints {
            path: path.to_path_buf(),
            got: points.len(),
        });
    }
    if !disp.is_empty() {
        for i in 0..points.len() - 1 {
            let expect = (points[i + 1].0 - points[i].0, points[i + 1].1 - points[i].1);
            if (disp[i].0 - expect.0).abs() > DISP_TOL || (disp[i].1 - expect.1).abs() > DISP_TOL {
                return Err(TrajectoryError::InconsistentDisplacement {
                    path: path.to_path_buf(),
                    line: i + 2,
                });
            }
        }
    }

    let meta = match File::open(meta_path(path)) {
        Ok(f) => serde_json::from_reader(f).map_err(|e| TrajectoryError::Parse {
            path: meta_path(path),
            line: 0,
            message: e.to_string(),
        })?,
        Err(_) => TrajectoryMeta::default(),
    };

    Ok(Trajectory {
        points,
        displacements: if disp.is_empty() { None } else { Some(disp) },
        markers: if markers.is_empty() { None } else { Some(markers) },
        meta,
        frame_stride: 1,
    })
}

/// Write the CSV (always with U,V,C columns) and, when meta has content,
/// the sidecar JSON. Float formatting is shortest-round-trip, so identical
/// trajectories produce byte-identical files.
pub fn save_trajectory(t: &Trajectory, path: impl AsRef<Path>) -> Result<(), TrajectoryError> {
    let path = path.as_ref();
    let io_err = |source| TrajectoryError::Io {
        path: path.to_path_buf(),
        source,
    };
    let t = if t.displacements.is_some() {
        t.clone()
    } else {
        t.clone().with_displacements()
    };
    let mut out = String::from("X,Y,U,V,C\n");
    let disp = t.displacements.as_ref().unwrap();
    for (i, &(x, y)) in t.points.iter().enumerate() {
        let (u, v) = disp[i];
        let c = t.markers.as_ref().map_or(false, |m| m[i]);
        out.push_str(&format!("{x},{y},{u},{v},{}\n", if c { 'T' } else { 'F' }));
    }
    let mut f = File::create(path).map_err(io_err)?;
    f.write_all(out.as_bytes()).map_err(io_err)?;

    let has_meta =
        t.meta.keypoint_id.is_some() || t.meta.fps.is_some() || t.meta.scenario.is_some();
    if has_meta {
        let f = File::create(meta_path(path)).map_err(io_err)?;
        serde_json::to_writer_pretty(f, &t.meta).map_err(|e| TrajectoryError::Parse {
            path: meta_path(path),
            line: 0,
            message: e.to_string(),
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(contents: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        std::fs::write(&path, contents).unwrap();
        (dir, path)
    }

    #[test]
    fn loads_consistent_file() {
        let (_d, p) = write_tmp("X,Y,U,V,C\n0,0,1,1,F\n1,1,1,0,F\n2,1,0,0,T\n");
        let t = load_trajectory(&p).unwrap();
        assert_eq!(t.points, vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]);
        assert_eq!(t.markers, Some(vec![false, false, true]));
    }

    #[test]
    fn rejects_inconsistent_displacement() {
        let (_d, p) = write_tmp("X,Y,U,V,C\n0,0,5,0,F\n1,1,1,0,F\n2,1,0,0,F\n");
        assert!(matches!(
            load_trajectory(&p),
            Err(TrajectoryError::InconsistentDisplacement { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_two_rows() {
        let (_d, p) = write_tmp("X,Y\n0,0\n1,1\n");
        assert!(matches!(
            load_trajectory(&p),
            Err(TrajectoryError::TooFewPoints { got: 2, .. })
        ));
    }

    #[test]
    fn optional_columns_and_round_trip() {
        let (_d, p) = write_tmp("X,Y\n0,0\n1,0.5\n2,1\n");
        let t = load_trajectory(&p).unwrap();
        assert!(t.displacements.is_none());
        let out = p.with_file_name("out.csv");
        save_trajectory(&t, &out).unwrap();
        let t2 = load_trajectory(&out).unwrap();
        assert_eq!(t.points, t2.points);
    }
}
