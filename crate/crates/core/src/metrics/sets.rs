use crate::pwl::piece_bounds;

/// A finite union of disjoint open intervals, sorted, with touching
/// intervals merged. Endpoints may be infinite.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn real_line() -> Self {
        IntervalSet { intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    /// Normalizes arbitrary intervals; empty ones are dropped.
    pub fn from_intervals(mut ivs: Vec<(f64, f64)>) -> Self {
        ivs.retain(|&(a, b)| a < b);
        ivs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(ivs.len());
        for (a, b) in ivs {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        IntervalSet { intervals: out }
    }

    /// The union of the pieces of `grid` whose flag is set.
    pub(crate) fn from_flags(grid: &[f64], flags: &[bool]) -> Self {
        debug_assert_eq!(flags.len(), grid.len() + 1);
        let ivs = flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| piece_bounds(grid, i)).collect();
        Self::from_intervals(ivs)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a < x && x < b)
    }

    /// Total length; infinite if unbounded.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|&(a, b)| b - a).sum()
    }

    /// The complement, up to the finitely many endpoints.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut lo = f64::NEG_INFINITY;
        for &(a, b) in &self.intervals {
            if a > lo {
                out.push((lo, a));
            }
            lo = b;
        }
        if lo < f64::INFINITY {
            out.push((lo, f64::INFINITY));
        }
        IntervalSet::from_intervals(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied().collect())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                out.push((a.max(c), b.min(d)));
            }
        }
        IntervalSet::from_intervals(out)
    }
}
