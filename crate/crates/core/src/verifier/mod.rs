//! Mechanical checks of the structural theorems about `G(τ_T)` and
//! `AG(M)*` on concrete instances, plus exhaustive sweeps over families.
//!
//! Every checker evaluates its hypotheses exactly and, only when all of
//! them hold, its conclusion. A report with true hypotheses and a false
//! conclusion is a counterexample.

mod checks;
mod eval;
mod instance;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;

pub use eval::{Evaluation, ModuleData};
pub use instance::{parse_blocks, parse_elements, parse_ring, Instance, TSpec};
pub use sweep::{family_modules, sweep, Family, SweepOptions, SweepSummary};

macro_rules! theorems {
    ($($variant:ident => $id:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId {
            $($variant),*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $id),*
                }
            }
        }

        impl FromStr for TheoremId {
            type Err = Error;

            fn from_str(s: &str) -> Result<TheoremId, Error> {
                match s {
                    $($id => Ok(TheoremId::$variant),)*
                    other => Err(Error::UnknownTheorem(other.to_string())),
                }
            }
        }
    };
}

theorems! {
    R2_1 => "R2.1",
    P2_6a => "P2.6a",
    P2_6b => "P2.6b",
    L2_7 => "L2.7",
    L2_8 => "L2.8",
    L2_9 => "L2.9",
    P3_1a => "P3.1a",
    P3_1b => "P3.1b",
    C3_2 => "C3.2",
    L3_3 => "L3.3",
    C3_9 => "C3.9",
    T3_4 => "T3.4",
    T3_5 => "T3.5",
    P3_6 => "P3.6",
    T3_7 => "T3.7",
    T4_1 => "T4.1",
    T4_2 => "T4.2",
    L4_3 => "L4.3",
    T4_4 => "T4.4",
    C4_4 => "C4.4",
    T4_6 => "T4.6",
    C4_7 => "C4.7",
    C4_10 => "C4.10",
    P4_8 => "P4.8",
    L4_12 => "L4.12",
    C4_13 => "C4.13",
    P4_14 => "P4.14",
    P4_16 => "P4.16",
    Diam3 => "DIAM3",
}

impl TheoremId {
    /// Checks whose statement does not involve `T`; sweeps run them once
    /// per module (at `T = Spec(M)`).
    pub fn is_module_level(self) -> bool {
        matches!(self, TheoremId::C4_10)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instance: String,
    pub hypotheses: Vec<Hypothesis>,
    pub applicable: bool,
    pub conclusion_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl TheoremReport {
    pub fn is_counterexample(&self) -> bool {
        self.applicable && self.conclusion_holds == Some(false)
    }

    pub fn skipped(theorem: TheoremId, instance: String, reason: String) -> TheoremReport {
        TheoremReport {
            theorem,
            instance,
            hypotheses: Vec::new(),
            applicable: false,
            conclusion_holds: None,
            witness: None,
            notes: Vec::new(),
            skipped: Some(reason),
            repro: None,
            elapsed_us: None,
        }
    }
}

/// Runs one checker. Cap errors become skipped reports; any other error
/// raised while evaluating an applicable check counts against it.
pub fn check(theorem: TheoremId, ev: &Evaluation<'_>, timing: bool) -> TheoremReport {
    let start = Instant::now();
    let mut out = checks::Outcome::default();
    let result = checks::run(theorem, ev, &mut out);
    let mut report = TheoremReport {
        theorem,
        instance: ev.describe(),
        hypotheses: out.hypotheses,
        applicable: false,
        conclusion_holds: None,
        witness: out.witness,
        notes: out.notes,
        skipped: None,
        repro: None,
        elapsed_us: None,
    };
    match result {
        Ok(conclusion) => {
            report.applicable = report.hypotheses.iter().all(|h| h.holds);
            report.conclusion_holds = if report.applicable { conclusion } else { None };
            if !report.applicable {
                report.witness = None;
            }
        }
        Err(e) if e.is_cap() => {
            report.hypotheses.clear();
            report.witness = None;
            report.skipped = Some(e.to_string());
        }
        Err(e) => {
            report.applicable = true;
            report.conclusion_holds = Some(false);
            report.witness = Some(serde_json::json!({ "error": e.to_string() }));
        }
    }
    if report.is_counterexample() {
        report.repro = Some(ev.repro(theorem));
    }
    if timing {
        report.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    report
}
