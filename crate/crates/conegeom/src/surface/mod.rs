//! Surface bodies, illumination surface bodies, and the s→0 limit that
//! recovers weighted curvature integrals (planar case).
//!
//! The surface body `K_{f,s}` intersects every halfplane whose cut-off
//! weighted boundary measure is at most `s`. Cap measures are computed from
//! a cellized boundary: full cells by prefix sums, the two crossing cells by
//! solving the crossing angle exactly and integrating the partial cell with
//! Gauss–Legendre. Volume deficits `|K| - |K_{f,s}|` always subtract two
//! polygons over the *same* direction set, which cancels the polygonal
//! discretization bias.

pub mod extrapolate;
pub mod polygon;

use crate::body::{Body, RollingRadii};
use crate::divergence;
use crate::error::{Error, Result};
use crate::geom2::{angle_of, dot, unit_from_angle, Vec2};
use crate::par;
use crate::quad::{gauss_legendre, integrate_circle, QuadSettings};
use polygon::{intersect_halfplanes, HalfPlane};

/// `c_n = 2 |B_2^{n-1}|^{2/(n-1)}`; 8 in the plane.
pub fn c_n(n: usize) -> f64 {
    2.0 * crate::body::unit_ball_volume(n - 1).powf(2.0 / (n as f64 - 1.0))
}

// ---------------------------------------------------------------------------
// boundary weights
// ---------------------------------------------------------------------------

/// Which KL weight construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlVariant {
    /// recovers D_KL(Q‖P) + 2n log(R/r)
    Qp,
    /// the printed f_PQ weight (kept for comparison; see `PqCorrected`)
    PqPrinted,
    /// f_PQ with the `<x,N>` exponent raised to n(n-1)/2, which makes the
    /// weighted limit integrate p log(p/q); the default PQ variant
    PqCorrected,
}

/// Weight specification on the boundary of the carrier body.
#[derive(Debug, Clone)]
pub enum WeightSpec {
    Const(f64),
    /// the as_p-producing weight f_p
    FP {
        p: f64,
    },
    /// the KL-producing weights (need rolling radii, non-ball)
    FKl {
        variant: KlVariant,
    },
    /// the mixed-surface-area weight (carrier + n bodies)
    Mixed {
        bodies: Vec<Body>,
        p: f64,
    },
}

/// A weight bound to a carrier body, with the constants it needs.
pub struct BoundaryWeight {
    spec: WeightSpec,
    n: f64,
    vol: f64,
    polar_vol: f64,
    rolling: Option<RollingRadii>,
}

impl BoundaryWeight {
    pub fn new(body: &Body, spec: WeightSpec) -> Result<BoundaryWeight> {
        let n = body.dim() as f64;
        let (vol, polar_vol) = if body.is_polytope() {
            (body.volume(), body.polar()?.volume())
        } else {
            divergence::volumes(body)?
        };
        let rolling = match &spec {
            WeightSpec::FKl { .. } => {
                let rr = body.rolling_radii()?;
                if rr.r_outer - rr.r_inner <= 1e-9 * rr.r_outer {
                    return Err(Error::DegenerateWeight(
                        "KL weights degenerate on balls (r = R); both sides vanish".into(),
                    ));
                }
                Some(rr)
            }
            _ => None,
        };
        match (&spec, body.is_polytope()) {
            (WeightSpec::Const(c), _) if *c <= 0.0 => {
                return Err(Error::InvalidWeight(
                    "constant weight must be positive".into(),
                ))
            }
            (WeightSpec::Const(_), _) => {}
            (_, true) => {
                return Err(Error::InvalidWeight(
                    "curvature-based weights need a C2+ body".into(),
                ))
            }
            (WeightSpec::FP { p }, _) | (WeightSpec::Mixed { p, .. }, _) if *p == -n => {
                return Err(Error::InvalidArgument("p = -n is excluded".into()))
            }
            _ => {}
        }
        Ok(BoundaryWeight {
            spec,
            n,
            vol,
            polar_vol,
            rolling,
        })
    }

    /// Evaluate at a boundary point given its outer normal `u`,
    /// `h = <x, N(x)>` and curvature `κ`.
    pub fn eval(&self, u: Vec2, h: f64, kappa: f64) -> f64 {
        let n = self.n;
        match &self.spec {
            WeightSpec::Const(c) => *c,
            WeightSpec::FP { p } => {
                let he = (n - 1.0) * n * (p - 1.0) / (2.0 * (n + p));
                let ke = -(n * (p - 1.0) - 2.0 * p) / (2.0 * (n + p));
                h.powf(he) * kappa.powf(ke)
            }
            WeightSpec::FKl { variant } => {
                let rr = self.rolling.as_ref().expect("set by constructor");
                let (r, big_r) = (rr.r_inner, rr.r_outer);
                let half = (n - 1.0) / 2.0;
                match variant {
                    KlVariant::Qp => {
                        let arg = (big_r / r).powf(2.0 * n) * self.polar_vol * h.powf(n + 1.0)
                            / (self.vol * kappa);
                        (n * self.vol / h).powf(half) * kappa.sqrt() * arg.ln().powf(-half)
                    }
                    KlVariant::PqPrinted | KlVariant::PqCorrected => {
                        let arg = (big_r / r).powf(2.0 * n) * self.vol * kappa
                            / (self.polar_vol * h.powf(n + 1.0));
                        let h_factor = match variant {
                            KlVariant::PqPrinted => (n * self.polar_vol * h).powf(half),
                            _ => (n * self.polar_vol).powf(half) * h.powf(n * half),
                        };
                        h_factor * kappa.powf(-(n - 2.0) / 2.0) * arg.ln().powf(-half)
                    }
                }
            }
            WeightSpec::Mixed { bodies, p } => {
                let prod: f64 = bodies
                    .iter()
                    .map(|b| {
                        let hb = b.support2(u);
                        let fb = b.curvature_fn2(u).expect("smooth");
                        hb.powf(1.0 - p) * fb
                    })
                    .product();
                // f_K^{(n-2)/2} of the carrier is 1 in the plane
                let carrier = (1.0 / kappa).powf((n - 2.0) / 2.0);
                carrier * prod.powf((1.0 - n) / (2.0 * (n + p)))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// weighted boundary cells
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct Cell {
    /// endpoint position (start); the next cell's `a` is this cell's end
    a: Vec2,
    /// normal angle (smooth) or edge parameter (polytope) at the start
    t0: f64,
    t1: f64,
    mass: f64,
    /// polytope cells interpolate linearly; smooth cells refine by angle
    straight: bool,
}

/// A cellized boundary with the measure `f · dμ_K`.
pub struct WeightedBoundary<'a> {
    body: &'a Body,
    weight: &'a BoundaryWeight,
    cells: Vec<Cell>,
    /// prefix[i] = Σ_{j<i} mass_j, prefix[M] = total
    prefix: Vec<f64>,
    pub total: f64,
}

impl<'a> WeightedBoundary<'a> {
    /// Build with at least `m` cells (graded toward curvature singularities).
    pub fn build(body: &'a Body, weight: &'a BoundaryWeight, m: usize) -> Result<Self> {
        if body.dim() != 2 {
            return Err(Error::InvalidArgument("surface bodies are 2-D only".into()));
        }
        let m = m.max(1 << 10);
        let mut cells = if let Some(poly) = body.polygon() {
            let per: f64 = {
                let vs = poly.vertices();
                (0..vs.len())
                    .map(|i| {
                        let e = crate::geom2::sub(vs[(i + 1) % vs.len()], vs[i]);
                        crate::geom2::norm(e)
                    })
                    .sum()
            };
            let vs = poly.vertices();
            let mut cells = Vec::with_capacity(m + vs.len());
            for i in 0..vs.len() {
                let v0 = vs[i];
                let v1 = vs[(i + 1) % vs.len()];
                let e = crate::geom2::sub(v1, v0);
                let len = crate::geom2::norm(e);
                let k = ((m as f64 * len / per).ceil() as usize).max(1);
                let w = match weight.spec {
                    WeightSpec::Const(c) => c,
                    _ => unreachable!("constructor rejects curvature weights on polytopes"),
                };
                for j in 0..k {
                    let f0 = j as f64 / k as f64;
                    let f1 = (j + 1) as f64 / k as f64;
                    cells.push(Cell {
                        a: crate::geom2::add(v0, crate::geom2::scale(e, f0)),
                        t0: f0,
                        t1: f1,
                        mass: w * len / k as f64,
                        straight: true,
                    });
                }
            }
            cells
        } else {
            let mut bp_vecs = body.integration_breakpoints2();
            bp_vecs.sort_by(|a, b| angle_of(*a).partial_cmp(&angle_of(*b)).unwrap());
            let graded = !bp_vecs.is_empty();
            // panels: (exact start vector, start angle, arc)
            let panels: Vec<(Vec2, f64, f64)> = if bp_vecs.is_empty() {
                vec![([1.0, 0.0], 0.0, 2.0 * std::f64::consts::PI)]
            } else {
                (0..bp_vecs.len())
                    .map(|i| {
                        let a = angle_of(bp_vecs[i]);
                        let b = if i + 1 < bp_vecs.len() {
                            angle_of(bp_vecs[i + 1])
                        } else {
                            angle_of(bp_vecs[0]) + 2.0 * std::f64::consts::PI
                        };
                        (bp_vecs[i], a, b - a)
                    })
                    .collect()
            };
            let mut cells = Vec::with_capacity(m + panels.len());
            struct Pending {
                sing: Option<(Vec2, f64, bool)>, // (exact vector, arc, lower end)
            }
            let mut pending: Vec<Pending> = Vec::new();
            for (pi, (v0, a, arc)) in panels.iter().enumerate() {
                let k = ((m as f64 * arc / (2.0 * std::f64::consts::PI)).ceil() as usize).max(8);
                let grid: Vec<f64> = (0..=k)
                    .map(|j| {
                        let tau = j as f64 / k as f64;
                        if graded {
                            // cosine grading clusters quadratically at both
                            // panel ends (the singular directions)
                            a + arc * 0.5 * (1.0 - (std::f64::consts::PI * tau).cos())
                        } else {
                            a + arc * tau
                        }
                    })
                    .collect();
                let v1 = if graded {
                    bp_vecs[(pi + 1) % bp_vecs.len()]
                } else {
                    [1.0, 0.0]
                };
                for j in 0..k {
                    // singular-adjacent cells get tanh-sinh masses via exact
                    // rotations from the breakpoint vector
                    let sing = if graded && j == 0 {
                        Some((*v0, grid[1] - grid[0], true))
                    } else if graded && j == k - 1 {
                        Some((v1, grid[k] - grid[k - 1], false))
                    } else {
                        None
                    };
                    pending.push(Pending { sing });
                    cells.push(Cell {
                        a: body.boundary_point2(unit_from_angle(grid[j]))?,
                        t0: grid[j],
                        t1: grid[j + 1],
                        mass: 0.0,
                        straight: false,
                    });
                }
            }
            // fill masses (parallel)
            let masses = par::map_range(cells.len(), |i| match pending[i].sing {
                Some((v, arc, lower)) => singular_cell_mass(body, weight, v, arc, lower),
                None => smooth_cell_mass(body, weight, cells[i].t0, cells[i].t1),
            });
            for (c, mss) in cells.iter_mut().zip(masses) {
                c.mass = mss;
            }
            cells
        };
        // positivity of the weight measure
        let neg = cells.iter().filter(|c| c.mass < 0.0).count();
        if neg > 0 {
            return Err(Error::InvalidWeight(
                "weight is negative on a set of positive measure".into(),
            ));
        }
        let zero = cells.iter().filter(|c| c.mass == 0.0).count();
        if zero * 2 > cells.len() {
            return Err(Error::InvalidWeight(
                "weight vanishes on at least half of the boundary".into(),
            ));
        }
        let mut prefix = Vec::with_capacity(cells.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for c in &cells {
            acc += c.mass;
            prefix.push(acc);
        }
        cells.shrink_to_fit();
        Ok(WeightedBoundary {
            body,
            weight,
            total: acc,
            cells,
            prefix,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn mass_range(&self, i0: usize, i1: usize) -> f64 {
        // cyclic cell range [i0, i1)
        let m = self.cells.len();
        if i0 <= i1 {
            self.prefix[i1] - self.prefix[i0]
        } else {
            (self.prefix[m] - self.prefix[i0]) + self.prefix[i1]
        }
    }

    /// Measure of the partial cell `i` kept on the side where the angle
    /// parameter runs from `t` to the given cell end.
    fn partial_mass(&self, i: usize, t: f64, keep_upper: bool) -> f64 {
        let c = &self.cells[i];
        if c.straight {
            let frac = (t - c.t0) / (c.t1 - c.t0);
            let frac = frac.clamp(0.0, 1.0);
            if keep_upper {
                c.mass * (1.0 - frac)
            } else {
                c.mass * frac
            }
        } else if keep_upper {
            smooth_cell_mass(self.body, self.weight, t, c.t1)
        } else {
            smooth_cell_mass(self.body, self.weight, c.t0, t)
        }
    }

    /// Position of the parameter `t` within cell `i`.
    fn position_at(&self, i: usize, t: f64) -> Vec2 {
        let c = &self.cells[i];
        if c.straight {
            let nxt = self.cells[(i + 1) % self.cells.len()].a;
            let frac = ((t - c.t0) / (c.t1 - c.t0)).clamp(0.0, 1.0);
            crate::geom2::add(c.a, crate::geom2::scale(crate::geom2::sub(nxt, c.a), frac))
        } else {
            self.body
                .boundary_point2(unit_from_angle(t))
                .expect("smooth body")
        }
    }

    /// Cap-measure context for one direction.
    pub fn caps(&self, u: Vec2) -> DirectionalCaps<'_, 'a> {
        let m = self.cells.len();
        let mut proj = Vec::with_capacity(m);
        let mut imax = 0;
        let mut imin = 0;
        for (i, c) in self.cells.iter().enumerate() {
            let p = dot(c.a, u);
            if p > proj.get(imax).copied().unwrap_or(f64::NEG_INFINITY) {
                imax = i;
            }
            if p < proj.get(imin).copied().unwrap_or(f64::INFINITY) {
                imin = i;
            }
            proj.push(p);
        }
        DirectionalCaps {
            wb: self,
            u,
            proj,
            imax,
            imin,
        }
    }
}

fn smooth_cell_mass(body: &Body, weight: &BoundaryWeight, t0: f64, t1: f64) -> f64 {
    // ∫ w(θ) f_K(θ) dθ by 8-point Gauss–Legendre
    let (x, w) = gl8();
    let half = 0.5 * (t1 - t0);
    let mid = 0.5 * (t0 + t1);
    let mut acc = 0.0;
    for (xi, wi) in x.iter().zip(w.iter()) {
        let th = mid + half * xi;
        let u = unit_from_angle(th);
        let f = body.curvature_fn2(u).expect("smooth body");
        let h = body.support2(u);
        acc += weight.eval(u, h, 1.0 / f) * f * wi;
    }
    acc * half
}

/// Mass of a cell whose lower or upper end sits on a curvature singularity:
/// tanh-sinh with nodes rotated from the exact breakpoint vector.
fn singular_cell_mass(
    body: &Body,
    weight: &BoundaryWeight,
    v_exact: Vec2,
    arc: f64,
    sing_at_lower: bool,
) -> f64 {
    let level = 6;
    let h = 0.5f64.powi(level);
    let kmax = (4.5 / h).floor() as i64;
    let half = 0.5 * arc;
    let mut acc = 0.0;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let w = std::f64::consts::FRAC_PI_2 * t.sinh();
        let ch = w.cosh();
        let dxdk = std::f64::consts::FRAC_PI_2 * t.cosh() / (ch * ch);
        let delta = 2.0 / (1.0 + (2.0 * w.abs()).exp());
        // offset from the singular endpoint along the panel
        let off = if (k >= 0) == sing_at_lower {
            arc - half * delta
        } else {
            half * delta
        };
        let u = if sing_at_lower {
            crate::geom2::rotate(v_exact, off)
        } else {
            crate::geom2::rotate(v_exact, -off)
        };
        let f = body.curvature_fn2(u).expect("smooth body");
        let hh = body.support2(u);
        let val = weight.eval(u, hh, 1.0 / f) * f * dxdk * half * h;
        if val.is_finite() {
            acc += val;
        }
    }
    acc
}

fn gl8() -> (&'static [f64; 8], &'static [f64; 8]) {
    use std::sync::OnceLock;
    static NODES: OnceLock<([f64; 8], [f64; 8])> = OnceLock::new();
    let (x, w) = NODES.get_or_init(|| {
        let (xv, wv) = gauss_legendre(8);
        let mut x = [0.0; 8];
        let mut w = [0.0; 8];
        x.copy_from_slice(&xv);
        w.copy_from_slice(&wv);
        (x, w)
    });
    (x, w)
}

/// Cap measures `G_u(c) = μ_f {x ∈ ∂K : <x,u> ≥ c}` for a fixed direction.
pub struct DirectionalCaps<'b, 'a> {
    wb: &'b WeightedBoundary<'a>,
    u: Vec2,
    proj: Vec<f64>,
    imax: usize,
    imin: usize,
}

impl DirectionalCaps<'_, '_> {
    pub fn measure_above(&self, c: f64) -> f64 {
        let m = self.proj.len();
        if c > self.proj[self.imax] {
            // the cap (if any) lies strictly inside the cell holding the
            // true maximum, the boundary point with normal u
            return self.intra_cell_cap(c);
        }
        if c <= self.proj[self.imin] {
            return self.wb.total;
        }
        // unrolled index: walk from imin up to imax (projection
        // non-decreasing), then down to imin + m
        let up_len = (self.imax + m - self.imin) % m;
        let down_len = m - up_len;
        let at = |j: usize| self.proj[(self.imin + j) % m];
        // first unrolled endpoint with proj >= c on the rising side
        let mut lo = 0usize;
        let mut hi = up_len;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if at(mid) >= c {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let j1 = lo; // first endpoint inside the cap
                     // last unrolled endpoint with proj >= c on the falling side
        let mut lo2 = up_len;
        let mut hi2 = up_len + down_len; // exclusive
        while lo2 < hi2 {
            let mid = (lo2 + hi2) / 2;
            if at(mid) >= c {
                lo2 = mid + 1;
            } else {
                hi2 = mid;
            }
        }
        let j2 = lo2 - 1; // last endpoint inside the cap
        let i1 = (self.imin + j1) % m; // first endpoint in cap
        let i2 = (self.imin + j2) % m; // last endpoint in cap
                                       // full cells between the endpoints
        let mut mass = self.wb.mass_range(i1, i2);
        // partial cell entering the cap: cell i1-1 spans (out, in)
        let enter = (i1 + m - 1) % m;
        mass += self.partial(enter, c, true);
        // partial cell leaving the cap: cell i2 spans (in, out)
        mass += self.partial(i2, c, false);
        mass
    }

    /// Partial mass of the crossing cell `i`; `entering` means the cap is at
    /// the cell's upper parameter end.
    fn partial(&self, i: usize, c: f64, entering: bool) -> f64 {
        let cell = &self.wb.cells[i];
        let t = self.solve_crossing(i, c);
        let keep_upper = entering;
        let _ = cell;
        self.wb.partial_mass(i, t, keep_upper)
    }

    /// Cap entirely inside one smooth cell: both crossings bracket the
    /// normal angle of `u`, where the projection is maximized.
    fn intra_cell_cap(&self, c: f64) -> f64 {
        let cells = &self.wb.cells;
        let m = cells.len();
        if cells[self.imax].straight {
            // polygon vertices are the true extreme points
            return 0.0;
        }
        let h = self.wb.body.support2(self.u);
        if c >= h {
            return 0.0;
        }
        // normalize the peak angle into the cell ring's parameter span
        let base = cells[0].t0;
        let mut ang = angle_of(self.u);
        while ang < base {
            ang += 2.0 * std::f64::consts::PI;
        }
        while ang >= base + 2.0 * std::f64::consts::PI {
            ang -= 2.0 * std::f64::consts::PI;
        }
        let mut lo = 0usize;
        let mut hi = m;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if cells[mid].t0 <= ang {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let cell = &cells[lo];
        let g = |t: f64| dot(self.wb.position_at(lo, t), self.u) - c;
        let bisect = |mut a: f64, mut b: f64| -> f64 {
            // sign change between a and b
            let ga = g(a);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                if (g(mid) > 0.0) == (ga > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        };
        let peak = ang.clamp(cell.t0, cell.t1);
        if g(peak) <= 0.0 {
            return 0.0;
        }
        let t_left = bisect(cell.t0, peak);
        let t_right = bisect(peak, cell.t1);
        smooth_cell_mass(self.wb.body, self.wb.weight, t_left, t_right)
    }

    fn solve_crossing(&self, i: usize, c: f64) -> f64 {
        let cell = &self.wb.cells[i];
        let mut lo = cell.t0;
        let mut hi = cell.t1;
        let g = |t: f64| dot(self.wb.position_at(i, t), self.u) - c;
        let mut glo = g(lo);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let gm = g(mid);
            if (gm > 0.0) == (glo > 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// The halfplane offset whose cut-off measure equals `s`.
    pub fn offset_for_mass(&self, s: f64) -> f64 {
        let mut hi = if self.wb.cells[self.imax].straight {
            self.proj[self.imax]
        } else {
            self.wb.body.support2(self.u)
        };
        let mut lo = self.proj[self.imin];
        if s <= 0.0 {
            return hi;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.measure_above(mid) > s {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

// ---------------------------------------------------------------------------
// surface body and illumination surface body
// ---------------------------------------------------------------------------

/// Options for the surface-body pipeline.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceOptions {
    /// boundary cells (≥ 2^10)
    pub boundary_cells: usize,
    /// starting direction count for the halfplane family
    pub directions: usize,
    /// direction-doubling rounds while |K_{f,s}| still moves
    pub max_direction_doublings: u32,
    /// relative stability demanded of |K_{f,s}| under direction doubling
    pub direction_tol: f64,
    /// also extrapolate the illumination variant
    pub illumination: bool,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        SurfaceOptions {
            boundary_cells: 1 << 14,
            directions: 64,
            max_direction_doublings: 5,
            direction_tol: 1e-6,
            illumination: false,
        }
    }
}

fn direction_set(ndir: usize) -> Vec<Vec2> {
    (0..ndir)
        .map(|i| unit_from_angle(2.0 * std::f64::consts::PI * i as f64 / ndir as f64))
        .collect()
}

fn offsets_for(wb: &WeightedBoundary, dirs: &[Vec2], s: f64) -> Vec<f64> {
    par::map_slice(dirs, |u| wb.caps(*u).offset_for_mass(s))
}

fn polygon_of(dirs: &[Vec2], offsets: &[f64]) -> Result<Vec<Vec2>> {
    let planes: Vec<HalfPlane> = dirs
        .iter()
        .zip(offsets)
        .map(|(u, c)| HalfPlane { n: *u, c: *c })
        .collect();
    intersect_halfplanes(&planes)
}

/// The surface body `K_{f,s}` as a convex polygon (counterclockwise).
pub fn surface_body(
    body: &Body,
    weight: &BoundaryWeight,
    s: f64,
    opts: &SurfaceOptions,
) -> Result<Vec<Vec2>> {
    let wb = WeightedBoundary::build(body, weight, opts.boundary_cells)?;
    surface_body_from(&wb, s, opts.directions)
}

fn surface_body_from(wb: &WeightedBoundary, s: f64, ndir: usize) -> Result<Vec<Vec2>> {
    if !(s >= 0.0) {
        return Err(Error::InvalidArgument("s must be nonnegative".into()));
    }
    if s >= wb.total / 2.0 {
        return Err(Error::DegenerateBody(format!(
            "s = {s} exceeds half the total boundary measure {}",
            wb.total
        )));
    }
    let dirs = direction_set(ndir);
    let offsets = offsets_for(wb, &dirs, s);
    polygon_of(&dirs, &offsets)
}

/// A star-shaped polygon given by radii along evenly spaced rays.
#[derive(Debug, Clone)]
pub struct StarBody {
    pub angles: Vec<f64>,
    pub radii: Vec<f64>,
}

impl StarBody {
    pub fn fan_area(&self) -> f64 {
        let m = self.radii.len();
        let dphi = 2.0 * std::f64::consts::PI / m as f64;
        let s = dphi.sin();
        0.5 * (0..m)
            .map(|i| self.radii[i] * self.radii[(i + 1) % m] * s)
            .sum::<f64>()
    }
}

/// The illumination surface body `K^{f,s}`: along each outward ray, the
/// point whose illuminated boundary portion carries weighted measure `s`.
pub fn illumination_surface_body(
    body: &Body,
    weight: &BoundaryWeight,
    s: f64,
    opts: &SurfaceOptions,
) -> Result<StarBody> {
    if body.is_polytope() {
        return Err(Error::UnsupportedSmoothness);
    }
    let wb = WeightedBoundary::build(body, weight, opts.boundary_cells)?;
    illumination_from(body, &wb, s, opts.directions)
}

fn illumination_from(body: &Body, wb: &WeightedBoundary, s: f64, ndir: usize) -> Result<StarBody> {
    if !(s >= 0.0) {
        return Err(Error::InvalidArgument("s must be nonnegative".into()));
    }
    if s >= wb.total / 2.0 {
        return Err(Error::DegenerateBody(
            "illumination measure too large".into(),
        ));
    }
    let angles: Vec<f64> = (0..ndir)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / ndir as f64)
        .collect();
    let radii = par::map_slice(&angles, |phi| {
        let v = unit_from_angle(*phi);
        let r0 = 1.0 / body.gauge_raw(&v);
        if s == 0.0 {
            return r0;
        }
        // bracket: visible measure grows with the distance along the ray
        let mut hi = r0 * 1.5;
        for _ in 0..200 {
            if visible_measure(wb, crate::geom2::scale(v, hi)) >= s {
                break;
            }
            hi *= 1.5;
        }
        let mut lo = r0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if visible_measure(wb, crate::geom2::scale(v, mid)) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    });
    Ok(StarBody { angles, radii })
}

/// Weighted measure of the boundary portion illuminated from the exterior
/// point `x`: the arc where `<x, u(θ)> > h(θ)`.
///
/// The lit arc always contains the normal parameter of the boundary point
/// radially under `x` (note this differs from the position angle of `x` on
/// non-circular bodies), so the search is anchored there.
fn visible_measure(wb: &WeightedBoundary, x: Vec2) -> f64 {
    let body = wb.body;
    let vis = |t: f64| -> f64 {
        let u = unit_from_angle(t);
        dot(x, u) - body.support2(u)
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let phi = angle_of(x);
    let m = wb.cells.len();
    // locate the cell containing the radial boundary point by *position*
    // angle (endpoint positions run counterclockwise)
    let base = angle_of(wb.cells[0].a);
    let pos_angle = |i: usize| -> f64 { (angle_of(wb.cells[i % m].a) - base).rem_euclid(two_pi) };
    let target = (phi - base).rem_euclid(two_pi);
    let mut lo = 0usize;
    let mut hi = m;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if pos_angle(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c0 = lo;
    // normal parameter t_y of the radial point, by bisection on the
    // (monotone) position angle within the cell
    let cell = &wb.cells[c0];
    let wrapped = |t: f64| -> f64 {
        let p = wb.position_at(c0, t);
        let d = angle_of(p) - phi;
        (d + std::f64::consts::PI).rem_euclid(two_pi) - std::f64::consts::PI
    };
    let mut a = cell.t0;
    let mut b = cell.t1;
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if wrapped(mid) <= 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let t_y = 0.5 * (a + b);
    if vis(t_y) <= 0.0 {
        // x is on (or numerically inside) the boundary
        return 0.0;
    }
    let lit = |i: usize| -> bool { vis(wb.cells[i % m].t0) > 0.0 };
    let lo_lit = lit(c0);
    let hi_lit = lit(c0 + 1);
    if !lo_lit && !hi_lit {
        // the lit arc sits strictly inside cell c0
        let t_in = bisect_vis(&vis, cell.t0, t_y);
        let t_out = bisect_vis(&vis, t_y, cell.t1);
        return smooth_cell_mass(wb.body, wb.weight, t_in, t_out);
    }
    let seed = if hi_lit { c0 + 1 } else { c0 };
    // forward end: first unlit endpoint after the seed
    let mut flo = 0usize;
    let mut fhi = m;
    while flo < fhi {
        let mid = (flo + fhi) / 2;
        if lit(seed + mid) {
            flo = mid + 1;
        } else {
            fhi = mid;
        }
    }
    let fwd = seed + flo; // first unlit endpoint going forward
                          // backward end: first unlit endpoint going backward
    let mut blo = 0usize;
    let mut bhi = m;
    while blo < bhi {
        let mid = (blo + bhi) / 2;
        if lit(seed + m - mid) {
            blo = mid + 1;
        } else {
            bhi = mid;
        }
    }
    let bwd = seed + m - blo; // first unlit endpoint going backward
                              // endpoints strictly inside the lit arc: (bwd, fwd) exclusive
    let first_in = (bwd + 1) % m;
    let last_in = (fwd + m - 1) % m;
    let mut mass = wb.mass_range(first_in, last_in);
    // crossing cells: bwd (entering) and last_in (leaving)
    let tin = solve_vis_crossing(wb, bwd % m, &vis);
    mass += wb.partial_mass(bwd % m, tin, true);
    let tout = solve_vis_crossing(wb, last_in, &vis);
    mass += wb.partial_mass(last_in, tout, false);
    mass
}

fn bisect_vis(vis: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = vis(a);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if (vis(mid) > 0.0) == (ga > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn solve_vis_crossing(wb: &WeightedBoundary, i: usize, vis: &dyn Fn(f64) -> f64) -> f64 {
    let cell = &wb.cells[i];
    let mut lo = cell.t0;
    let mut hi = cell.t1;
    let mut glo = vis(lo);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let gm = vis(mid);
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// the limit quotient
// ---------------------------------------------------------------------------

/// Result of the s→0 extrapolation.
#[derive(Debug, Clone)]
pub struct SurfaceBodyResult {
    pub s_grid: Vec<f64>,
    pub volumes: Vec<f64>,
    pub quotients: Vec<f64>,
    /// `c_n ·` extrapolated limit of the quotient
    pub limit: f64,
    pub c_n: f64,
    /// fitted error exponent
    pub beta: f64,
    /// independently quadratured `∫ κ^{1/(n-1)} f^{-2/(n-1)} dμ`
    pub rhs_integral: f64,
    /// false when the quotients are not monotone (ill-conditioned fit)
    pub monotone: bool,
    /// `c_n ·` extrapolated illumination quotient, when requested
    pub illumination_limit: Option<f64>,
    /// directions used after doubling
    pub directions_used: usize,
}

/// Compute `(|K| - |K_{f,s}|)/s^{2/(n-1)}` over the grid and extrapolate
/// `s → 0`. The deficit subtracts polygon areas over one shared direction
/// set. Also quadratures the limit's closed form for comparison.
pub fn limit_quotient(
    body: &Body,
    weight: &BoundaryWeight,
    s_grid: &[f64],
    opts: &SurfaceOptions,
) -> Result<SurfaceBodyResult> {
    if body.dim() != 2 {
        return Err(Error::InvalidArgument("surface bodies are 2-D only".into()));
    }
    if body.is_polytope() {
        // surface bodies of polytopes exist, but the limit theorem's right
        // side degenerates (κ = 0 a.e.), so extrapolation is not offered
        return Err(Error::UnsupportedSmoothness);
    }
    if s_grid.len() < 3 {
        return Err(Error::InvalidArgument("need at least 3 grid points".into()));
    }
    for w in s_grid.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidArgument("s grid must be decreasing".into()));
        }
        if w[1] / w[0] > 0.5 + 1e-9 {
            return Err(Error::InvalidArgument(
                "s grid must be geometric with ratio <= 1/2".into(),
            ));
        }
    }
    let wb = WeightedBoundary::build(body, weight, opts.boundary_cells)?;
    let s_min = *s_grid.last().unwrap();
    if s_grid[0] >= wb.total / 2.0 {
        return Err(Error::DegenerateBody(
            "largest s exceeds half the measure".into(),
        ));
    }

    // refine the direction family until the smallest-s volume stabilizes
    let mut ndir = opts.directions.max(16);
    let mut prev_vol: Option<f64> = None;
    for _ in 0..=opts.max_direction_doublings {
        let poly = surface_body_from(&wb, s_min, ndir)?;
        let vol = crate::geom2::polygon_area(&poly);
        if let Some(p) = prev_vol {
            if (vol - p).abs() <= opts.direction_tol * vol.abs() {
                break;
            }
        }
        prev_vol = Some(vol);
        ndir *= 2;
    }
    let dirs = direction_set(ndir);

    // matched-direction area of K itself
    let h_offsets: Vec<f64> = dirs.iter().map(|u| body.support2(*u)).collect();
    let base_poly = polygon_of(&dirs, &h_offsets)?;
    let base_area = crate::geom2::polygon_area(&base_poly);

    let mut volumes = Vec::with_capacity(s_grid.len());
    let mut quotients = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let offsets = offsets_for(&wb, &dirs, s);
        let poly = polygon_of(&dirs, &offsets)?;
        let area = crate::geom2::polygon_area(&poly);
        volumes.push(area);
        quotients.push((base_area - area) / (s * s));
    }
    let monotone = volumes.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let (l, beta, _resid) = extrapolate::fit_power_limit(s_grid, &quotients);
    let cn = c_n(2);

    // independent right-hand side: ∫ κ / f_w² dμ over the boundary curve
    let rhs_integral = rhs_curvature_integral(body, weight)?;

    let illumination_limit = if opts.illumination {
        let mut q = Vec::with_capacity(s_grid.len());
        let base: f64 = {
            let radii: Vec<f64> = dirs.iter().map(|u| 1.0 / body.gauge_raw(u)).collect();
            StarBody {
                angles: dirs.iter().map(|u| angle_of(*u)).collect(),
                radii,
            }
            .fan_area()
        };
        for &s in s_grid {
            let star = illumination_from(body, &wb, s, ndir)?;
            q.push((star.fan_area() - base) / (s * s));
        }
        let (li, _, _) = extrapolate::fit_power_limit(s_grid, &q);
        Some(cn * li)
    } else {
        None
    };

    Ok(SurfaceBodyResult {
        s_grid: s_grid.to_vec(),
        volumes,
        quotients,
        limit: cn * l,
        c_n: cn,
        beta,
        rhs_integral,
        monotone,
        illumination_limit,
        directions_used: ndir,
    })
}

/// `∫ κ^{1/(n-1)} / f^{2/(n-1)} dμ` via the boundary curve (n = 2).
fn rhs_curvature_integral(body: &Body, weight: &BoundaryWeight) -> Result<f64> {
    let curve = body.boundary_curve()?;
    let st = QuadSettings::default();
    let res = integrate_circle(
        |cs| {
            let p = curve.eval(cs);
            let h = dot(p.pos, p.normal);
            let w = weight.eval(p.normal, h, p.kappa);
            p.kappa / (w * w) * p.speed
        },
        &curve.breakpoints(),
        &st,
    );
    res.require_finite()
}

// ---------------------------------------------------------------------------
// minimal function / integrability condition
// ---------------------------------------------------------------------------

/// Lower bound on the minimal function and the induced finite bound on the
/// integrability condition `∫ dμ /(M_f^{2/(n-1)} r(x))`.
#[derive(Debug, Clone, Copy)]
pub struct MinimalFunctionCheck {
    pub min_mf_lower: f64,
    pub integrability_bound: f64,
}

pub fn minimal_function_check(
    body: &Body,
    weight: &BoundaryWeight,
    sample_count: usize,
) -> Result<MinimalFunctionCheck> {
    if body.is_polytope() {
        return Err(Error::UnsupportedSmoothness);
    }
    let m = sample_count.max(256);
    let mut inf_f = f64::INFINITY;
    for j in 0..m {
        let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
        let u = unit_from_angle(th);
        let f = body.curvature_fn2(u)?;
        let h = body.support2(u);
        inf_f = inf_f.min(weight.eval(u, h, 1.0 / f));
    }
    if !(inf_f > 1e-12) {
        return Err(Error::InvalidWeight(
            "weight is not bounded below by a positive constant; inconclusive".into(),
        ));
    }
    // caps average the weight, so M_f >= inf f; r(x) >= r_inner
    let rr = body.rolling_radii()?;
    let perimeter = {
        let st = QuadSettings::default();
        let curve = body.boundary_curve()?;
        integrate_circle(|cs| curve.eval(cs).speed, &curve.breakpoints(), &st).require_finite()?
    };
    let n = body.dim() as f64;
    Ok(MinimalFunctionCheck {
        min_mf_lower: inf_f,
        integrability_bound: perimeter / (inf_f.powf(2.0 / (n - 1.0)) * rr.r_inner),
    })
}
