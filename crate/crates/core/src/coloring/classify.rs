use std::fmt;

use crate::lattice::Window;

use super::color::{PartialColoring, Seed};
use super::propagate::{propagate_rounds, WindowGraph};
use super::solver::{field, find_coloring};

/// Extra blocks of context around a window when checking whether forcing
/// alone colours it. Forcing is sound on any window, so the margin only
/// gives tiles on the rim the neighbours they have in the plane.
pub const PROPAGATION_MARGIN: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// No proper colouring of the window of this radius extends the seed.
    Barren(u32),
    /// Forcing colours the whole window of this radius without contradiction.
    PerfectWithinRadius(u32),
    /// The window field stabilised over the last two radii without covering
    /// the window. `dormant` when the field is the seed itself.
    FertileEvidence { radius: u32, dormant: bool },
    /// Neither perfect nor stabilised by the last radius.
    Inconclusive(u32),
}

impl Verdict {
    pub fn is_perfect(&self) -> bool {
        matches!(self, Verdict::PerfectWithinRadius(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Barren(r) => write!(f, "Barren({r})"),
            Verdict::PerfectWithinRadius(r) => write!(f, "PerfectWithinRadius({r})"),
            Verdict::FertileEvidence { radius, dormant: true } => {
                write!(f, "FertileEvidence({radius}, dormant)")
            }
            Verdict::FertileEvidence { radius, dormant: false } => {
                write!(f, "FertileEvidence({radius})")
            }
            Verdict::Inconclusive(r) => write!(f, "Inconclusive({r})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Forced colours at the radius the verdict refers to. Empty window
    /// colouring for barren seeds.
    pub forced: PartialColoring,
    pub schedule: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("radius schedule is empty")]
    EmptySchedule,
    #[error("radius schedule must be strictly increasing")]
    NotIncreasing,
}

/// Forcing on the window enlarged by [`PROPAGATION_MARGIN`], restricted back
/// to `w`. The contradiction flag covers the enlarged window.
pub fn propagate_with_margin(s: &Seed, w: Window) -> PartialColoring {
    let outer = Window::new(w.center, w.radius + PROPAGATION_MARGIN);
    propagate_rounds(s, &WindowGraph::new(outer))
        .coloring
        .restrict(w)
}

/// True when forcing alone colours all of `w` without contradiction.
pub fn forced_within(s: &Seed, w: Window) -> bool {
    let p = propagate_with_margin(s, w);
    !p.has_contradiction() && p.is_complete()
}

/// Radius-indexed classification. Windows are centred on the seed's
/// bounding window.
pub fn classify(s: &Seed, schedule: &[u32]) -> Result<ClassificationReport, ClassifyError> {
    let (&r_max, _) = schedule.split_last().ok_or(ClassifyError::EmptySchedule)?;
    if schedule.windows(2).any(|p| p[0] >= p[1]) {
        return Err(ClassifyError::NotIncreasing);
    }
    let report = |verdict, forced| ClassificationReport {
        verdict,
        forced,
        schedule: schedule.to_vec(),
    };

    for &r in schedule {
        let w = s.window(r);
        if find_coloring(s, w).is_none() {
            return Ok(report(Verdict::Barren(r), PartialColoring::empty(w)));
        }
    }

    let w_max = s.window(r_max);
    let propagated = propagate_with_margin(s, w_max);
    if !propagated.has_contradiction() && propagated.is_complete() {
        return Ok(report(Verdict::PerfectWithinRadius(r_max), propagated));
    }

    // The barren check above guarantees a window colouring exists.
    let last = field(s, w_max).expect("window admits a colouring");
    let stable = match schedule.len() {
        1 => false,
        n => {
            let prev = field(s, s.window(schedule[n - 2])).expect("window admits a colouring");
            last.to_seed() == prev.to_seed()
        }
    };
    let verdict = if stable {
        Verdict::FertileEvidence {
            radius: r_max,
            dormant: last.to_seed() == *s,
        }
    } else {
        Verdict::Inconclusive(r_max)
    };
    Ok(report(verdict, last))
}
