//! Piecewise-linear detuning schedules.
//!
//! A schedule maps time to an additional spin detuning. Ramps are linear
//! within each segment; segment lists must be contiguous, non-overlapping,
//! and start at `t = 0`. Values must be continuous at joins unless the
//! schedule is built with steps explicitly allowed.

use crate::error::{Error, Result};
use crate::scalar::{real, to_f64, Scalar};

/// One linear piece of a schedule: the value ramps from `value_start` at
/// `t_start` to `value_end` at `t_end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment<T> {
    pub t_start: T,
    pub t_end: T,
    pub value_start: T,
    pub value_end: T,
}

impl<T: Scalar> Segment<T> {
    pub fn new(t_start: T, t_end: T, value_start: T, value_end: T) -> Self {
        Self { t_start, t_end, value_start, value_end }
    }

    pub fn is_constant(&self) -> bool {
        self.value_start == self.value_end
    }

    fn value_at(&self, t: T) -> T {
        if self.is_constant() {
            return self.value_start;
        }
        let theta = (t - self.t_start) / (self.t_end - self.t_start);
        self.value_start + (self.value_end - self.value_start) * theta
    }
}

/// Time-dependent detuning of a single spin.
#[derive(Clone, Debug, PartialEq)]
pub enum DetuningSchedule<T> {
    /// The same value for every `t >= 0`.
    Constant(T),
    /// Contiguous linear segments covering `[0, t_end]`.
    Piecewise(Vec<Segment<T>>),
}

impl<T: Scalar> DetuningSchedule<T> {
    pub fn constant(value: T) -> Self {
        Self::Constant(value)
    }

    /// Single linear ramp from `(0, from)` to `(duration, to)`.
    pub fn linear_ramp(duration: T, from: T, to: T) -> Result<Self> {
        Self::from_segments(vec![Segment::new(T::zero(), duration, from, to)])
    }

    /// Build from segments, requiring value continuity at joins.
    pub fn from_segments(segments: Vec<Segment<T>>) -> Result<Self> {
        let schedule = Self::from_segments_allow_steps(segments)?;
        if let Self::Piecewise(segs) = &schedule {
            for pair in segs.windows(2) {
                let jump = (pair[1].value_start - pair[0].value_end).abs();
                if jump > real(T::JOIN_TOL) {
                    return Err(Error::InvalidSchedule(format!(
                        "value step {} at t = {} (use from_segments_allow_steps for steps)",
                        to_f64(jump),
                        to_f64(pair[1].t_start),
                    )));
                }
            }
        }
        Ok(schedule)
    }

    /// Build from segments, allowing value steps at joins.
    pub fn from_segments_allow_steps(segments: Vec<Segment<T>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidSchedule("no segments".into()));
        }
        if segments[0].t_start != T::zero() {
            return Err(Error::InvalidSchedule(format!(
                "first segment starts at {}, expected 0",
                to_f64(segments[0].t_start)
            )));
        }
        for seg in &segments {
            if !(seg.t_end > seg.t_start) {
                return Err(Error::InvalidSchedule(format!(
                    "segment [{}, {}] has non-positive duration",
                    to_f64(seg.t_start),
                    to_f64(seg.t_end)
                )));
            }
        }
        for pair in segments.windows(2) {
            if pair[1].t_start != pair[0].t_end {
                return Err(Error::InvalidSchedule(format!(
                    "gap or overlap between segments at t = {}",
                    to_f64(pair[0].t_end)
                )));
            }
        }
        Ok(Self::Piecewise(segments))
    }

    /// End of the covered time domain, if bounded.
    pub fn t_end(&self) -> Option<T> {
        match self {
            Self::Constant(_) => None,
            Self::Piecewise(segs) => Some(segs.last().expect("non-empty").t_end),
        }
    }

    /// Whether `[0, t_final]` lies inside the schedule domain.
    pub fn covers(&self, t_final: T) -> bool {
        match self.t_end() {
            None => t_final >= T::zero(),
            Some(end) => t_final >= T::zero() && t_final <= end,
        }
    }

    /// Detuning value at time `t`, linearly interpolated.
    ///
    /// At an interior join the later segment wins, which only matters for
    /// schedules built with steps allowed.
    pub fn value_at(&self, t: T) -> Result<T> {
        let domain_error = |t: T, t_max: f64| Error::ScheduleDomain {
            t: to_f64(t),
            t_min: 0.0,
            t_max,
        };
        if t < T::zero() {
            return Err(domain_error(
                t,
                self.t_end().map(to_f64).unwrap_or(f64::INFINITY),
            ));
        }
        match self {
            Self::Constant(v) => Ok(*v),
            Self::Piecewise(segs) => {
                let end = segs.last().expect("non-empty").t_end;
                if t > end {
                    return Err(domain_error(t, to_f64(end)));
                }
                let seg = segs
                    .iter()
                    .find(|s| t < s.t_end)
                    .unwrap_or_else(|| segs.last().expect("non-empty"));
                Ok(seg.value_at(t))
            }
        }
    }

    /// Interior segment boundaries, in increasing order.
    pub fn breakpoints(&self) -> Vec<T> {
        match self {
            Self::Constant(_) => Vec::new(),
            Self::Piecewise(segs) => segs[..segs.len() - 1].iter().map(|s| s.t_end).collect(),
        }
    }

    /// True when the schedule is a single constant value over `[t0, t1]`.
    ///
    /// `[t0, t1]` must not straddle a segment boundary; the propagator splits
    /// runs at breakpoints before asking.
    pub fn is_constant_over(&self, t0: T, t1: T) -> bool {
        match self {
            Self::Constant(_) => true,
            Self::Piecewise(segs) => {
                let mid = (t0 + t1) * real(0.5);
                segs.iter()
                    .find(|s| mid < s.t_end)
                    .or_else(|| segs.last())
                    .map(|s| s.is_constant() && t0 >= s.t_start && t1 <= s.t_end)
                    .unwrap_or(false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(t0: f64, t1: f64, v0: f64, v1: f64) -> Segment<f64> {
        Segment::new(t0, t1, v0, v1)
    }

    #[test]
    fn constant_segment_interpolates_flat() {
        let s = DetuningSchedule::from_segments(vec![seg(0.0, 10.0, 5.0, 5.0)]).unwrap();
        assert_eq!(s.value_at(3.0).unwrap(), 5.0);
    }

    #[test]
    fn ramp_midpoint_is_zero() {
        let s = DetuningSchedule::linear_ramp(10.0, -10.0, 10.0).unwrap();
        assert_eq!(s.value_at(5.0).unwrap(), 0.0);
        assert_eq!(s.value_at(0.0).unwrap(), -10.0);
        assert_eq!(s.value_at(10.0).unwrap(), 10.0);
    }

    #[test]
    fn downward_ramp_interpolates_linearly() {
        let s: DetuningSchedule<f64> = DetuningSchedule::linear_ramp(10.0, 10.0, -10.0).unwrap();
        assert!((s.value_at(2.5).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn out_of_domain_rejected() {
        let s = DetuningSchedule::from_segments(vec![seg(0.0, 10.0, 1.0, 1.0)]).unwrap();
        assert!(matches!(s.value_at(10.5), Err(Error::ScheduleDomain { .. })));
        assert!(matches!(s.value_at(-0.1), Err(Error::ScheduleDomain { .. })));
        let c = DetuningSchedule::constant(2.0);
        assert_eq!(c.value_at(1e9).unwrap(), 2.0);
        assert!(c.value_at(-1.0).is_err());
    }

    #[test]
    fn discontinuous_join_needs_steps_flag() {
        let segs = vec![seg(0.0, 1.0, 0.0, 1.0), seg(1.0, 2.0, 3.0, 3.0)];
        assert!(matches!(
            DetuningSchedule::from_segments(segs.clone()),
            Err(Error::InvalidSchedule(_))
        ));
        let s = DetuningSchedule::from_segments_allow_steps(segs).unwrap();
        assert_eq!(s.value_at(1.0).unwrap(), 3.0); // later segment wins at the join
    }

    #[test]
    fn gaps_and_overlaps_rejected() {
        assert!(DetuningSchedule::from_segments(vec![
            seg(0.0, 1.0, 0.0, 0.0),
            seg(1.5, 2.0, 0.0, 0.0)
        ])
        .is_err());
        assert!(DetuningSchedule::from_segments(vec![seg(0.5, 1.0, 0.0, 0.0)]).is_err());
        assert!(DetuningSchedule::from_segments(vec![seg(0.0, 0.0, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn constancy_query_respects_pieces() {
        let s = DetuningSchedule::from_segments(vec![
            seg(0.0, 1.0, 2.0, 2.0),
            seg(1.0, 2.0, 2.0, 5.0),
        ])
        .unwrap();
        assert!(s.is_constant_over(0.0, 1.0));
        assert!(!s.is_constant_over(1.0, 2.0));
        assert_eq!(s.breakpoints(), vec![1.0]);
    }
}
