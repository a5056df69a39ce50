use std::collections::HashMap;
use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::params::{DerivedBlockage, SystemParams};
use super::p_los;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// One building footprint: centre, side lengths and orientation of the
/// `len` side against the x axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub center: Point,
    pub len: f64,
    pub wid: f64,
    pub theta: f64,
}

impl Rect {
    pub fn half_diagonal(&self) -> f64 {
        0.5 * self.len.hypot(self.wid)
    }

    /// Whether the closed segment `a -> b` touches the rectangle.
    pub fn intersects_segment(&self, a: Point, b: Point) -> bool {
        let (s, c) = self.theta.sin_cos();
        let to_local = |p: Point| {
            let dx = p.x - self.center.x;
            let dy = p.y - self.center.y;
            (c * dx + s * dy, -s * dx + c * dy)
        };
        let (x0, y0) = to_local(a);
        let (x1, y1) = to_local(b);
        let (hx, hy) = (0.5 * self.len, 0.5 * self.wid);
        // Liang–Barsky clip of the parametric segment against the box
        let (dx, dy) = (x1 - x0, y1 - y0);
        let mut t0: f64 = 0.0;
        let mut t1: f64 = 1.0;
        for (p, q) in [
            (-dx, x0 + hx),
            (dx, hx - x0),
            (-dy, y0 + hy),
            (dy, hy - y0),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return false;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
                if t0 > t1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Homogeneous PPP of the given density restricted to the disc of `radius`
/// around the origin.
pub fn sample_ppp<R: Rng + ?Sized>(density: f64, radius: f64, rng: &mut R) -> Vec<Point> {
    if !(radius > 0.0 && density > 0.0) {
        return Vec::new();
    }
    let mean = density * PI * radius * radius;
    let n = Poisson::new(mean)
        .map(|d| d.sample(rng) as usize)
        .unwrap_or(0);
    (0..n)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            let phi = 2.0 * PI * rng.random::<f64>();
            Point::new(r * phi.cos(), r * phi.sin())
        })
        .collect()
}

/// Boolean rectangle field: PPP(λ_B) centres, `L ~ U(0, 2 E[L])`,
/// `W ~ U(0, 2 E[W])`, `Θ ~ U(0, 2π]`.
pub fn sample_blockages<R: Rng + ?Sized>(
    params: &SystemParams,
    radius: f64,
    rng: &mut R,
) -> Vec<Rect> {
    sample_ppp(params.lambda_b, radius, rng)
        .into_iter()
        .map(|center| Rect {
            center,
            len: 2.0 * params.mean_len * rng.random::<f64>(),
            wid: 2.0 * params.mean_wid * rng.random::<f64>(),
            theta: 2.0 * PI * (1.0 - rng.random::<f64>()),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VisibilityMode {
    /// Independent Bernoulli thinning with `P_LoS(w)`.
    Thinning,
    /// Footprint intersection on the ground plane.
    Explicit,
}

impl std::str::FromStr for VisibilityMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "thinning" => Ok(Self::Thinning),
            "explicit" => Ok(Self::Explicit),
            other => Err(format!("unknown visibility mode `{other}` (thinning|explicit)")),
        }
    }
}

impl std::fmt::Display for VisibilityMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Thinning => "thinning",
            Self::Explicit => "explicit",
        })
    }
}

/// Visibility of a transmitter whose ground projection is `foot` from a
/// ground observer.
///
/// Only the horizontal projection matters: buildings are tall enough to cut
/// any link that crosses their footprint.
pub fn visible<R: Rng + ?Sized>(
    foot: Point,
    observer: Point,
    rects: &[Rect],
    mode: VisibilityMode,
    db: &DerivedBlockage,
    rng: &mut R,
) -> Result<bool> {
    match mode {
        VisibilityMode::Thinning => {
            let w = Point::new(foot.x - observer.x, foot.y - observer.y).norm();
            Ok(rng.random::<f64>() < p_los(w, db)?)
        }
        VisibilityMode::Explicit => Ok(!rects.iter().any(|r| r.intersects_segment(observer, foot))),
    }
}

/// Uniform-grid index over rectangle footprints for segment queries.
pub struct BlockageIndex<'a> {
    rects: &'a [Rect],
    cell: f64,
    cells: HashMap<(i64, i64), Vec<u32>>,
}

impl<'a> BlockageIndex<'a> {
    pub fn new(rects: &'a [Rect]) -> Self {
        let max_half = rects.iter().map(Rect::half_diagonal).fold(0.0, f64::max);
        let cell = (2.0 * max_half).max(10.0);
        let mut cells: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, r) in rects.iter().enumerate() {
            let h = r.half_diagonal();
            let x0 = ((r.center.x - h) / cell).floor() as i64;
            let x1 = ((r.center.x + h) / cell).floor() as i64;
            let y0 = ((r.center.y - h) / cell).floor() as i64;
            let y1 = ((r.center.y + h) / cell).floor() as i64;
            for ix in x0..=x1 {
                for iy in y0..=y1 {
                    cells.entry((ix, iy)).or_default().push(i as u32);
                }
            }
        }
        Self { rects, cell, cells }
    }

    /// True when some footprint cuts the segment `a -> b`.
    pub fn blocks(&self, a: Point, b: Point) -> bool {
        if self.rects.is_empty() {
            return false;
        }
        let (x0, y0) = (a.x / self.cell, a.y / self.cell);
        let (x1, y1) = (b.x / self.cell, b.y / self.cell);
        let (mut ix, mut iy) = (x0.floor() as i64, y0.floor() as i64);
        let (ex, ey) = (x1.floor() as i64, y1.floor() as i64);
        let (dx, dy) = (x1 - x0, y1 - y0);
        let step_x = if dx > 0.0 { 1 } else { -1 };
        let step_y = if dy > 0.0 { 1 } else { -1 };
        let delta_x = if dx != 0.0 { 1.0 / dx.abs() } else { f64::INFINITY };
        let delta_y = if dy != 0.0 { 1.0 / dy.abs() } else { f64::INFINITY };
        let mut t_x = if dx > 0.0 {
            (ix as f64 + 1.0 - x0) / dx
        } else if dx < 0.0 {
            (x0 - ix as f64) / -dx
        } else {
            f64::INFINITY
        };
        let mut t_y = if dy > 0.0 {
            (iy as f64 + 1.0 - y0) / dy
        } else if dy < 0.0 {
            (y0 - iy as f64) / -dy
        } else {
            f64::INFINITY
        };
        let max_steps = (ex - ix).unsigned_abs() + (ey - iy).unsigned_abs() + 2;
        for _ in 0..=max_steps {
            if let Some(list) = self.cells.get(&(ix, iy)) {
                if list
                    .iter()
                    .any(|&i| self.rects[i as usize].intersects_segment(a, b))
                {
                    return true;
                }
            }
            if ix == ex && iy == ey {
                break;
            }
            if t_x < t_y {
                t_x += delta_x;
                ix += step_x;
            } else {
                t_y += delta_y;
                iy += step_y;
            }
        }
        false
    }
}

/// One sampled scene around a user at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRealization {
    pub window_radius: f64,
    pub mode: VisibilityMode,
    pub haps: Vec<Point>,
    pub riss: Vec<Point>,
    pub rects: Vec<Rect>,
    pub hap_visible: Vec<bool>,
    pub ris_visible: Vec<bool>,
}

impl NetworkRealization {
    /// Samples a scene on the parameter set's window.
    pub fn sample<R: Rng + ?Sized>(
        params: &SystemParams,
        mode: VisibilityMode,
        rng: &mut R,
    ) -> Result<Self> {
        params.validate()?;
        Self::sample_in(params, mode, params.window_radius(), rng)
    }

    /// Samples a scene on an explicit window without validating `params`.
    ///
    /// Rectangles are drawn on a slightly larger disc so footprints whose
    /// centres fall just outside the window still block.
    pub fn sample_in<R: Rng + ?Sized>(
        params: &SystemParams,
        mode: VisibilityMode,
        radius: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let haps = sample_ppp(params.lambda_hap, radius, rng);
        let riss = sample_ppp(params.lambda_ris, radius, rng);
        let db = params.blockage();
        let (rects, hap_visible, ris_visible) = match mode {
            VisibilityMode::Thinning => {
                let mut flags = |pts: &[Point]| -> Result<Vec<bool>> {
                    pts.iter()
                        .map(|p| Ok(rng.random::<f64>() < p_los(p.norm(), &db)?))
                        .collect()
                };
                let hv = flags(&haps)?;
                let rv = flags(&riss)?;
                (Vec::new(), hv, rv)
            }
            VisibilityMode::Explicit => {
                let margin = params.mean_len.hypot(params.mean_wid);
                let rects = sample_blockages(params, radius + margin, rng);
                let index = BlockageIndex::new(&rects);
                let hv = haps.iter().map(|&p| !index.blocks(Point::ORIGIN, p)).collect();
                let rv = riss.iter().map(|&p| !index.blocks(Point::ORIGIN, p)).collect();
                (rects, hv, rv)
            }
        };
        Ok(Self {
            window_radius: radius,
            mode,
            haps,
            riss,
            rects,
            hap_visible,
            ris_visible,
        })
    }

    pub fn n_visible_haps(&self) -> usize {
        self.hap_visible.iter().filter(|&&v| v).count()
    }
}
