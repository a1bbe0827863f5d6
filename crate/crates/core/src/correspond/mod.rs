//! Checks of the correspondence between laws of a relational bi-magma `X`,
//! laws of a bi-quantale `Q` and laws of the convolution algebra `Q^X`.
//!
//! Law Ik lifts to `Q^X` when RIk holds in `X` and Ik holds in `Q`. It
//! reflects back to `X` when `Q` satisfies the degeneracy condition for
//! Ik, and back to `Q` when `X` satisfies the relational one. Reflection is
//! checked from deltas only: the lifted law is assumed on the functions
//! `δ^a_x`, not on all of `Q^X`.
//!
//! Every verifier checks its side conditions first. If one fails, the
//! verdict is [`Verdict::PreconditionFailed`] and nothing is concluded. If
//! all hold and the conclusion fails, the verdict is [`Verdict::Alarm`]:
//! the finite instance contradicts the correspondence.
//!
//! Laws are named by where they are checked: `X:ri3`, `Q:d2`, `Q^X:i7`.
//!
//! ```
//! use convalg::correspond::{verify_lift, Verdict};
//! use convalg::langmodels::{build_word_bimagma, BoundedWordUniverse};
//! use convalg::weights::boolean;
//!
//! let words = build_word_bimagma(&BoundedWordUniverse::new(&['a', 'b'], 2).unwrap());
//! let r = verify_lift(&words, &boolean(), 7).unwrap();
//! assert_eq!(r.verdict, Verdict::Pass);
//! ```

mod enumerate;
mod lift;
mod search;
mod units;

use std::fmt;

use serde::Serialize;

use crate::report::LawCheck;

pub use enumerate::{
    enumerate_bimagmas, enumerate_biquantales, enumerate_interchange_monoids, enumerate_interchange_quantales,
    enumerate_quantales, enumerate_relmagmas, relation_orbit_reps, unit_sets, MAX_RELATION_POINTS,
};
pub use lift::{
    correspondence_suite, verify_interchange_quantale_lift, verify_lift, verify_reflect_to_q, verify_reflect_to_x,
};
pub use search::{describe_bimagma, describe_biquantale, search_counterexamples, Scope, SearchWitness};
pub use units::{
    verify_assoc_comm_corollaries, verify_rel_redundancy, verify_redundancy, verify_unit_correspondence,
    verify_unit_inclusion,
};

/// Which way a correspondence runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// From `X` and `Q` to `Q^X`.
    Lift,
    /// From `Q^X` (and `Q`) to `X`.
    ReflectToX,
    /// From `Q^X` (and `X`) to `Q`.
    ReflectToQ,
    /// Both directions at once, under side conditions that make them equivalent.
    Iff,
    /// Laws derived inside one structure.
    Derived,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lift => "lift",
            Direction::ReflectToX => "reflect-to-x",
            Direction::ReflectToQ => "reflect-to-q",
            Direction::Iff => "iff",
            Direction::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// Side conditions hold but the conclusion fails.
    Alarm,
    PreconditionFailed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Alarm => "ALARM",
            Verdict::PreconditionFailed => "precondition failed",
        })
    }
}

/// One checked correspondence on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub direction: Direction,
    pub law: String,
    pub side_conditions: Vec<LawCheck>,
    pub verdict: Verdict,
    /// The conclusion as checked; absent when a side condition failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<LawCheck>,
    /// The violating tuple of the conclusion on an alarm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CorrespondenceReport {
    pub fn is_alarm(&self) -> bool {
        self.verdict == Verdict::Alarm
    }

    /// Runs `conclusion` only if every side condition holds.
    pub(crate) fn decide(
        direction: Direction,
        law: impl Into<String>,
        side_conditions: Vec<LawCheck>,
        conclusion: impl FnOnce() -> crate::Result<LawCheck>,
    ) -> crate::Result<Self> {
        let law = law.into();
        let failed: Vec<&str> = side_conditions.iter().filter(|c| !c.holds).map(|c| c.law.as_str()).collect();
        if !failed.is_empty() {
            let note = format!("not applicable: {} fails", failed.join(", "));
            return Ok(CorrespondenceReport {
                direction,
                law,
                side_conditions,
                verdict: Verdict::PreconditionFailed,
                conclusion: None,
                witness: None,
                note: Some(note),
            });
        }
        let c = conclusion()?;
        let (verdict, witness) = if c.holds {
            (Verdict::Pass, None)
        } else {
            (Verdict::Alarm, Some(c.witness.clone().unwrap_or_default()))
        };
        Ok(CorrespondenceReport { direction, law, side_conditions, verdict, conclusion: Some(c), witness, note: None })
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.direction, self.law, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " at ({})", w.join(", "))?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Renames a check to `place:law`.
pub(crate) fn at(place: &str, mut c: LawCheck) -> LawCheck {
    c.law = format!("{place}:{}", c.law);
    c
}
