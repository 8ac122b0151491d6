//! Planar convex polygons with the origin interior.

use crate::error::{Error, Result};
use crate::geom2::{cross, dot, norm, polygon_area, sub, Vec2};

/// A strictly convex polygon, vertices in counterclockwise order, origin in
/// the interior. Edge `i` runs from vertex `i` to vertex `i+1`.
#[derive(Debug, Clone)]
pub struct Polygon2 {
    verts: Vec<Vec2>,
    edge_normals: Vec<Vec2>,
    offsets: Vec<f64>,
    area: f64,
}

impl Polygon2 {
    /// Build from user-supplied vertices: orders them counterclockwise and
    /// recenters the polygon at its area centroid.
    pub fn from_user_vertices(mut verts: Vec<Vec2>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::InvalidBody(
                "polytope needs at least 3 vertices".into(),
            ));
        }
        let mean = [
            verts.iter().map(|v| v[0]).sum::<f64>() / verts.len() as f64,
            verts.iter().map(|v| v[1]).sum::<f64>() / verts.len() as f64,
        ];
        verts.sort_by(|a, b| {
            let ta = (a[1] - mean[1]).atan2(a[0] - mean[0]);
            let tb = (b[1] - mean[1]).atan2(b[0] - mean[0]);
            ta.partial_cmp(&tb).unwrap()
        });
        let centroid = area_centroid(&verts)?;
        let centered: Vec<Vec2> = verts
            .iter()
            .map(|v| [v[0] - centroid[0], v[1] - centroid[1]])
            .collect();
        Self::from_ccw_vertices(centered)
    }

    /// Build from vertices already in counterclockwise order with the origin
    /// interior (used for polars and linear images, which must not recenter).
    pub fn from_ccw_vertices(verts: Vec<Vec2>) -> Result<Self> {
        let m = verts.len();
        if m < 3 {
            return Err(Error::InvalidBody(
                "polytope needs at least 3 vertices".into(),
            ));
        }
        let scale = verts.iter().map(|v| norm(*v)).fold(0.0, f64::max);
        for i in 0..m {
            let a = verts[i];
            let b = verts[(i + 1) % m];
            let c = verts[(i + 2) % m];
            if cross(sub(b, a), sub(c, b)) <= 1e-12 * scale * scale {
                return Err(Error::InvalidBody(
                    "vertices must form a strictly convex counterclockwise polygon".into(),
                ));
            }
        }
        let mut edge_normals = Vec::with_capacity(m);
        let mut offsets = Vec::with_capacity(m);
        for i in 0..m {
            let e = sub(verts[(i + 1) % m], verts[i]);
            let n = [e[1], -e[0]];
            let len = norm(n);
            let n = [n[0] / len, n[1] / len];
            let off = dot(verts[i], n);
            if off <= 1e-12 * scale {
                return Err(Error::InvalidBody(
                    "origin must be interior to the polytope".into(),
                ));
            }
            edge_normals.push(n);
            offsets.push(off);
        }
        let area = polygon_area(&verts);
        Ok(Polygon2 {
            verts,
            edge_normals,
            offsets,
            area,
        })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.verts
    }

    pub fn edge_normals(&self) -> &[Vec2] {
        &self.edge_normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Support function (max over vertices); 1-homogeneous in `v`.
    pub fn support(&self, v: Vec2) -> f64 {
        self.verts
            .iter()
            .map(|x| dot(*x, v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Minkowski gauge: max over edge functionals `<x, n_i>/h_i`.
    pub fn gauge(&self, x: Vec2) -> f64 {
        self.edge_normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, h)| dot(x, *n) / h)
            .fold(0.0, f64::max)
    }

    /// Polar polygon: vertex `n_i / h_i` per edge, already counterclockwise.
    pub fn polar(&self) -> Result<Polygon2> {
        let verts: Vec<Vec2> = self
            .edge_normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, h)| [n[0] / h, n[1] / h])
            .collect();
        Polygon2::from_ccw_vertices(verts)
    }

    /// Image under an invertible linear map, given as a row-major 2x2 matrix.
    /// Reverses orientation if the map does.
    pub fn linear_image(&self, t: &[[f64; 2]; 2]) -> Result<Polygon2> {
        let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
        let mut verts: Vec<Vec2> = self
            .verts
            .iter()
            .map(|v| {
                [
                    t[0][0] * v[0] + t[0][1] * v[1],
                    t[1][0] * v[0] + t[1][1] * v[1],
                ]
            })
            .collect();
        if det < 0.0 {
            verts.reverse();
        }
        Polygon2::from_ccw_vertices(verts)
    }
}

fn area_centroid(verts: &[Vec2]) -> Result<Vec2> {
    let n = verts.len();
    let mut a2 = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let p = verts[i];
        let q = verts[(i + 1) % n];
        let c = cross(p, q);
        a2 += c;
        cx += (p[0] + q[0]) * c;
        cy += (p[1] + q[1]) * c;
    }
    if a2.abs() < 1e-300 {
        return Err(Error::InvalidBody("degenerate polygon".into()));
    }
    Ok([cx / (3.0 * a2), cy / (3.0 * a2)])
}
