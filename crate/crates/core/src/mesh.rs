//! Triangulated grids of pseudosphere patches and OBJ export.
//!
//! Every patch is cut at its cuspidal edges, so each OBJ object is a regular
//! piece of the surface. The cuspidal edges themselves are exported
//! separately as polylines.

use std::collections::HashMap;
use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Branch;
use crate::surface::SurfacePatch;
use crate::tractrix::Vec3;

#[derive(Debug, Clone, PartialEq)]
pub struct MeshObject {
    pub name: String,
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices into `vertices`.
    pub triangles: Vec<[usize; 3]>,
    /// `true` when the α direction closes up on itself.
    pub wraps: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspidalEdge {
    pub branch: Branch,
    pub t: f64,
    pub points: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub objects: Vec<MeshObject>,
    pub cuspidal_edges: Vec<CuspidalEdge>,
}

/// Grid resolution: `t_samples` points per regular t-segment, `alpha_samples`
/// points along α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshResolution {
    pub t_samples: usize,
    pub alpha_samples: usize,
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Meshes each patch over its (finite) ranges. For `R > 1` with a full
/// `2π` range of α the grid wraps around instead of duplicating the seam.
pub fn build_mesh(patches: &[SurfacePatch], res: MeshResolution) -> Result<SurfaceMesh> {
    if res.t_samples < 2 || res.alpha_samples < 2 {
        return Err(Error::UnsupportedDomain("mesh needs at least 2x2 samples".into()));
    }
    let mut objects = Vec::new();
    let mut cuspidal_edges = Vec::new();
    for s in patches {
        let (t_lo, t_hi) = s.t_range;
        let (a_lo, a_hi) = s.alpha_range;
        if ![t_lo, t_hi, a_lo, a_hi].iter().all(|v| v.is_finite()) {
            return Err(Error::UnsupportedDomain("mesh ranges must be finite".into()));
        }
        let wraps = s.alpha_is_periodic() && (a_hi - a_lo - 2.0 * std::f64::consts::PI).abs() < 1e-12;
        let alphas: Vec<f64> = if wraps {
            let n = res.alpha_samples;
            (0..n).map(|i| a_lo + (a_hi - a_lo) * i as f64 / n as f64).collect()
        } else {
            grid(a_lo, a_hi, res.alpha_samples).collect()
        };

        let cusps = s.cuspidal_edges();
        for &tc in &cusps {
            let points = alphas
                .iter()
                .map(|&a| s.position(tc, a).map(|p| [p.x, p.y, p.z]))
                .collect::<Result<Vec<_>>>()?;
            cuspidal_edges.push(CuspidalEdge {
                branch: s.branch,
                t: tc,
                points,
            });
        }

        let mut cuts = vec![t_lo];
        cuts.extend(cusps.iter().copied().filter(|&c| c > t_lo && c < t_hi));
        cuts.push(t_hi);
        for (k, w) in cuts.windows(2).enumerate() {
            let ts: Vec<f64> = grid(w[0], w[1], res.t_samples).collect();
            let mut vertices = Vec::with_capacity(ts.len() * alphas.len());
            for &t in &ts {
                for &a in &alphas {
                    vertices.push(s.position(t, a)?);
                }
            }
            let na = alphas.len();
            let a_cells = if wraps { na } else { na - 1 };
            let mut triangles = Vec::with_capacity(2 * (ts.len() - 1) * a_cells);
            for i in 0..ts.len() - 1 {
                for j in 0..a_cells {
                    let j1 = (j + 1) % na;
                    let (v00, v01) = (i * na + j, i * na + j1);
                    let (v10, v11) = ((i + 1) * na + j, (i + 1) * na + j1);
                    triangles.push([v00, v10, v11]);
                    triangles.push([v00, v11, v01]);
                }
            }
            objects.push(MeshObject {
                name: format!("r{}_{}_{}", s.radius, branch_name(s.branch), k),
                vertices,
                triangles,
                wraps,
            });
        }
    }
    Ok(SurfaceMesh {
        objects,
        cuspidal_edges,
    })
}

/// Number of triangles using each undirected edge.
pub fn edge_use_counts(obj: &MeshObject) -> HashMap<(usize, usize), usize> {
    let mut counts = HashMap::new();
    for tri in &obj.triangles {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    counts
}

/// Writes all objects as one OBJ file with global one-based indices.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut out: W) -> io::Result<()> {
    let mut offset = 1;
    for obj in &mesh.objects {
        writeln!(out, "o {}", obj.name)?;
        for v in &obj.vertices {
            writeln!(out, "v {} {} {}", v.x, v.y, v.z)?;
        }
        for tri in &obj.triangles {
            writeln!(out, "f {} {} {}", tri[0] + offset, tri[1] + offset, tri[2] + offset)?;
        }
        offset += obj.vertices.len();
    }
    Ok(())
}
