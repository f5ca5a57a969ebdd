use std::fmt::Write as _;
use std::path::Path;

use log::warn;

use super::{PointSet, SpherePoint};
use crate::error::{Error, Result};

/// Reads a point-set file: `#` comments, optional `dim <d>` header, one point per line.
pub fn load_pointset(path: impl AsRef<Path>) -> Result<PointSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_pointset(&text, &label)
}

pub fn parse_pointset(text: &str, label: &str) -> Result<PointSet> {
    let mut dim: Option<usize> = None;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            if !points.is_empty() || dim.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "dim header must precede all points".into(),
                });
            }
            let d: usize = rest.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad dim header `{line}`"),
            })?;
            if d < 2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "dimension must be at least 2".into(),
                });
            }
            dim = Some(d);
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("not a number: `{tok}`"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let d = match dim {
            Some(d) => d,
            None => {
                if coords.len() < 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "need at least 3 coordinates per point".into(),
                    });
                }
                dim = Some(coords.len() - 1);
                coords.len() - 1
            }
        };
        if coords.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                line: line_no,
                expected: d + 1,
                found: coords.len(),
            });
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            warn!("line {line_no}: point has norm {norm}, renormalizing");
        }
        let p = SpherePoint::new(coords).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        points.push(p);
    }
    let d = dim.ok_or(Error::Parse {
        line: 0,
        msg: "no points".into(),
    })?;
    if points.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no points".into(),
        });
    }
    PointSet::new(d, points, label)
}

/// Text form with a `dim` header and 17 significant digits per coordinate.
pub fn write_pointset(ps: &PointSet) -> String {
    let mut out = String::new();
    if !ps.label.is_empty() {
        let _ = writeln!(out, "# {}", ps.label);
    }
    let _ = writeln!(out, "dim {}", ps.dim());
    for p in ps.points() {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c:.16e}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn save_pointset(ps: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_pointset(ps))?;
    Ok(())
}
