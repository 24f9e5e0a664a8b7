//! Piecewise-linear membership curves.
//!
//! A [`MembershipFunction`] maps a crisp value to a membership degree in
//! `[0, 1]`. Between breakpoints the degree is linearly interpolated;
//! outside the breakpoint span the curve extends flat at the boundary
//! degree, so evaluation is total over the reals.
//!
//! Clipping (min with a constant) and pointwise max keep the result
//! piecewise-linear by inserting breakpoints at the analytic crossing
//! points, and the integrals used for centroid defuzzification are
//! computed in closed form per linear segment. No sampling resolution is
//! involved anywhere outside of tests.

use thiserror::Error;

/// Minimum spacing between consecutive breakpoint x coordinates.
///
/// Clip and max deduplicate coincident points at [`DEDUP_TOLERANCE`], so
/// curves must keep their own breakpoints comfortably above that
/// resolution or the operations could collapse them.
pub const MIN_BREAKPOINT_SPACING: f64 = 1e-9;

/// x-tolerance for deduplicating coincident breakpoints produced by
/// clip and pointwise-max crossings.
pub const DEDUP_TOLERANCE: f64 = 1e-12;

/// Construction errors for [`MembershipFunction`].
#[derive(Debug, Error, PartialEq)]
pub enum MfError {
    #[error("a membership function needs at least 2 breakpoints, got {0}")]
    TooFewBreakpoints(usize),
    #[error("breakpoint {index}: x must exceed the previous x by more than {MIN_BREAKPOINT_SPACING:e}")]
    NonIncreasingX { index: usize },
    #[error("breakpoint {index}: degree {value} is outside [0, 1]")]
    DegreeOutOfRange { index: usize, value: f64 },
    #[error("breakpoint {index}: coordinates must be finite")]
    NonFinite { index: usize },
}

/// A piecewise-linear curve mapping crisp values to degrees in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFunction {
    breakpoints: Vec<(f64, f64)>,
}

impl MembershipFunction {
    /// Builds a curve from `(x, degree)` breakpoints.
    ///
    /// The x coordinates must be strictly increasing (by more than
    /// [`MIN_BREAKPOINT_SPACING`]), every degree must lie in `[0, 1]`,
    /// and at least two breakpoints are required.
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self, MfError> {
        if breakpoints.len() < 2 {
            return Err(MfError::TooFewBreakpoints(breakpoints.len()));
        }
        for (index, &(x, mu)) in breakpoints.iter().enumerate() {
            if !x.is_finite() || !mu.is_finite() {
                return Err(MfError::NonFinite { index });
            }
            if !(0.0..=1.0).contains(&mu) {
                return Err(MfError::DegreeOutOfRange { index, value: mu });
            }
            if index > 0 && x - breakpoints[index - 1].0 <= MIN_BREAKPOINT_SPACING {
                return Err(MfError::NonIncreasingX { index });
            }
        }
        Ok(Self { breakpoints })
    }

    /// Ramp rising from degree 0 at `zero_at` to degree 1 at `one_at`.
    pub fn ramp_up(zero_at: f64, one_at: f64) -> Result<Self, MfError> {
        Self::new(vec![(zero_at, 0.0), (one_at, 1.0)])
    }

    /// Ramp falling from degree 1 at `one_at` to degree 0 at `zero_at`.
    pub fn ramp_down(one_at: f64, zero_at: f64) -> Result<Self, MfError> {
        Self::new(vec![(one_at, 1.0), (zero_at, 0.0)])
    }

    /// Triangle with degree 0 at `left` and `right` and degree 1 at `peak`.
    pub fn triangle(left: f64, peak: f64, right: f64) -> Result<Self, MfError> {
        Self::new(vec![(left, 0.0), (peak, 1.0), (right, 0.0)])
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// First and last breakpoint x coordinates.
    pub fn span(&self) -> (f64, f64) {
        (self.breakpoints[0].0, self.breakpoints[self.breakpoints.len() - 1].0)
    }

    /// Membership degree at `x`: exact at breakpoints, linearly
    /// interpolated between them, flat beyond the first/last breakpoint.
    pub fn degree(&self, x: f64) -> f64 {
        let pts = &self.breakpoints;
        if x <= pts[0].0 {
            return pts[0].1;
        }
        let last = pts.len() - 1;
        if x >= pts[last].0 {
            return pts[last].1;
        }
        // First index with breakpoint x strictly above `x`; at least 1.
        let i = pts.partition_point(|&(bx, _)| bx <= x);
        seg_degree(x, pts[i - 1], pts[i])
    }

    /// Pointwise `min(mu(x), strength)`, exact: crossings with the clip
    /// level become new breakpoints.
    pub fn clip(&self, strength: f64) -> MembershipFunction {
        debug_assert!((0.0..=1.0).contains(&strength));
        let pts = &self.breakpoints;
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(pts.len() + 2);
        out.push((pts[0].0, pts[0].1.min(strength)));
        for w in pts.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if (y0 - strength) * (y1 - strength) < 0.0 {
                let xc = x0 + (strength - y0) * (x1 - x0) / (y1 - y0);
                push_dedup(&mut out, (xc, strength));
            }
            push_dedup(&mut out, (x1, y1.min(strength)));
        }
        MembershipFunction { breakpoints: out }
    }

    /// Pointwise maximum of two curves, exact: the result carries both
    /// curves' breakpoints plus every pairwise crossing.
    pub fn pointwise_max(&self, other: &MembershipFunction) -> MembershipFunction {
        let mut xs: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .map(|&(x, _)| x)
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|next, kept| (*next - *kept).abs() <= DEDUP_TOLERANCE);

        let mut grid: Vec<f64> = Vec::with_capacity(xs.len() * 2);
        for w in xs.windows(2) {
            grid.push(w[0]);
            // Both curves are linear inside the cell, so at most one crossing.
            let du = self.degree(w[0]) - other.degree(w[0]);
            let dv = self.degree(w[1]) - other.degree(w[1]);
            if du * dv < 0.0 {
                let xc = w[0] + (w[1] - w[0]) * du / (du - dv);
                if xc - w[0] > DEDUP_TOLERANCE && w[1] - xc > DEDUP_TOLERANCE {
                    grid.push(xc);
                }
            }
        }
        grid.push(*xs.last().expect("curves have breakpoints"));

        let breakpoints = grid
            .into_iter()
            .map(|x| (x, self.degree(x).max(other.degree(x))))
            .collect();
        MembershipFunction { breakpoints }
    }

    /// `∫ mu(x) dx` over `[lo, hi]`, closed form, including the flat
    /// extensions beyond the breakpoint span.
    pub fn area(&self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo < hi);
        let pts = &self.breakpoints;
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        let mut total = 0.0;
        if lo < first.0 {
            total += first.1 * (hi.min(first.0) - lo);
        }
        for w in pts.windows(2) {
            let a = lo.max(w[0].0);
            let b = hi.min(w[1].0);
            if a < b {
                let ya = seg_degree(a, w[0], w[1]);
                let yb = seg_degree(b, w[0], w[1]);
                total += 0.5 * (ya + yb) * (b - a);
            }
        }
        if hi > last.0 {
            total += last.1 * (hi - lo.max(last.0));
        }
        total
    }

    /// `∫ x·mu(x) dx` over `[lo, hi]`, closed form, with flat extensions.
    pub fn first_moment(&self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo < hi);
        let pts = &self.breakpoints;
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        let mut total = 0.0;
        if lo < first.0 {
            let b = hi.min(first.0);
            total += first.1 * (b * b - lo * lo) / 2.0;
        }
        for w in pts.windows(2) {
            let a = lo.max(w[0].0);
            let b = hi.min(w[1].0);
            if a < b {
                // mu(x) = m·x + c on the segment
                let (x0, y0) = w[0];
                let (x1, y1) = w[1];
                let m = (y1 - y0) / (x1 - x0);
                let c = y0 - m * x0;
                total += m * (b * b * b - a * a * a) / 3.0 + c * (b * b - a * a) / 2.0;
            }
        }
        if hi > last.0 {
            let a = lo.max(last.0);
            total += last.1 * (hi * hi - a * a) / 2.0;
        }
        total
    }
}

fn seg_degree(x: f64, (x0, y0): (f64, f64), (x1, y1): (f64, f64)) -> f64 {
    let t = (x - x0) / (x1 - x0);
    (y0 + t * (y1 - y0)).clamp(0.0, 1.0)
}

fn push_dedup(out: &mut Vec<(f64, f64)>, point: (f64, f64)) {
    match out.last() {
        Some(&(x, _)) if point.0 - x <= DEDUP_TOLERANCE => {}
        _ => out.push(point),
    }
}
