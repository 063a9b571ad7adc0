//! Verification reports shared by every check.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::TypeLabel;

/// Failures kept verbatim; the rest are only counted.
pub const KEPT_FAILURES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Failure {
    pub element: String,
    pub index: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "lowercase"))]
pub enum Mode {
    Symbolic,
    Sampled,
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Report {
    pub check: String,
    #[cfg_attr(feature = "serde", serde(rename = "type"))]
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub mode: Mode,
    pub sample_size: usize,
    pub seed: u64,
    pub pass: bool,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: &str, label: Option<TypeLabel>, mode: Mode, seed: u64) -> Report {
        Report {
            check: check.into(),
            family: label.map(|t| t.family.name().into()),
            rank: label.map(|t| t.rank),
            mode,
            sample_size: 0,
            seed,
            pass: true,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn fail(&mut self, element: String, index: Option<usize>, lhs: String, rhs: String) {
        self.pass = false;
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure { element, index, lhs, rhs });
        }
    }

    /// Records a comparison; returns whether it held.
    pub fn expect_eq<T: PartialEq + core::fmt::Debug>(
        &mut self,
        element: impl FnOnce() -> String,
        index: Option<usize>,
        lhs: T,
        rhs: T,
    ) -> bool {
        if lhs == rhs {
            return true;
        }
        self.fail(element(), index, alloc::format!("{lhs:?}"), alloc::format!("{rhs:?}"));
        false
    }

    /// Folds another report's outcome and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        self.sample_size += other.sample_size;
        self.failure_count += other.failure_count;
        if !other.pass {
            self.pass = false;
        }
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}
