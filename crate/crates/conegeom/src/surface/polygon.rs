//! Intersection of halfplanes sorted by normal angle (deque algorithm).

use crate::error::{Error, Result};
use crate::geom2::{cross, dot, polygon_area, Vec2};
use std::collections::VecDeque;

/// The halfplane `{x : <x, n> <= c}` with unit outward normal `n`.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub n: Vec2,
    pub c: f64,
}

fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> Option<Vec2> {
    let det = cross(a.n, b.n);
    if det.abs() < 1e-14 {
        return None;
    }
    Some([
        (a.c * b.n[1] - b.c * a.n[1]) / det,
        (a.n[0] * b.c - b.n[0] * a.c) / det,
    ])
}

fn violates(h: &HalfPlane, p: Vec2) -> bool {
    dot(h.n, p) > h.c + 1e-12 * (1.0 + h.c.abs())
}

/// Intersect halfplanes whose normals are sorted counterclockwise and cover
/// the full circle. Returns the vertex list (counterclockwise).
pub fn intersect_halfplanes(planes: &[HalfPlane]) -> Result<Vec<Vec2>> {
    if planes.len() < 3 {
        return Err(Error::DegenerateBody("need at least 3 halfplanes".into()));
    }
    let mut dq: VecDeque<HalfPlane> = VecDeque::new();
    for h in planes {
        while dq.len() >= 2 {
            let p = line_intersection(&dq[dq.len() - 2], &dq[dq.len() - 1]);
            match p {
                Some(p) if violates(h, p) => {
                    dq.pop_back();
                }
                None => {
                    // parallel normals: keep the tighter constraint
                    if dq[dq.len() - 1].c > h.c {
                        dq.pop_back();
                    } else {
                        break;
                    }
                }
                _ => break,
            }
        }
        while dq.len() >= 2 {
            let p = line_intersection(&dq[0], &dq[1]);
            match p {
                Some(p) if violates(h, p) => {
                    dq.pop_front();
                }
                _ => break,
            }
        }
        // skip exact duplicates of the back normal
        if let Some(last) = dq.back() {
            if cross(last.n, h.n).abs() < 1e-15 && dot(last.n, h.n) > 0.0 {
                if h.c < last.c {
                    dq.pop_back();
                } else {
                    continue;
                }
            }
        }
        dq.push_back(*h);
    }
    // trim the wrap-around
    loop {
        let mut trimmed = false;
        if dq.len() >= 3 {
            if let Some(p) = line_intersection(&dq[dq.len() - 2], &dq[dq.len() - 1]) {
                if violates(&dq[0], p) {
                    dq.pop_back();
                    trimmed = true;
                }
            }
        }
        if dq.len() >= 3 {
            if let Some(p) = line_intersection(&dq[0], &dq[1]) {
                if violates(&dq[dq.len() - 1], p) {
                    dq.pop_front();
                    trimmed = true;
                }
            }
        }
        if !trimmed {
            break;
        }
    }
    if dq.len() < 3 {
        return Err(Error::DegenerateBody(
            "halfplane intersection is empty or unbounded".into(),
        ));
    }
    let m = dq.len();
    let mut verts = Vec::with_capacity(m);
    for i in 0..m {
        let p = line_intersection(&dq[i], &dq[(i + 1) % m]).ok_or_else(|| {
            Error::DegenerateBody("parallel adjacent halfplanes in intersection".into())
        })?;
        verts.push(p);
    }
    if polygon_area(&verts) <= 0.0 {
        return Err(Error::DegenerateBody("intersection has no interior".into()));
    }
    Ok(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn regular_polygon_of_tangents() {
        // tangent lines of the unit circle at m directions: circumscribed
        // regular polygon of area m tan(pi/m)
        let m = 64;
        let planes: Vec<HalfPlane> = (0..m)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / m as f64;
                HalfPlane {
                    n: [t.cos(), t.sin()],
                    c: 1.0,
                }
            })
            .collect();
        let verts = intersect_halfplanes(&planes).unwrap();
        assert_eq!(verts.len(), m);
        let area = polygon_area(&verts);
        let want = m as f64 * (PI / m as f64).tan();
        assert_abs_diff_eq!(area, want, epsilon = 1e-12);
    }

    #[test]
    fn redundant_planes_are_dropped() {
        let mut planes: Vec<HalfPlane> = (0..16)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 16.0;
                HalfPlane {
                    n: [t.cos(), t.sin()],
                    c: 1.0,
                }
            })
            .collect();
        // a loose plane that cuts nothing
        planes.insert(
            3,
            HalfPlane {
                n: [(2.0 * PI * 2.7 / 16.0).cos(), (2.0 * PI * 2.7 / 16.0).sin()],
                c: 5.0,
            },
        );
        let verts = intersect_halfplanes(&planes).unwrap();
        assert_eq!(verts.len(), 16);
    }
}
