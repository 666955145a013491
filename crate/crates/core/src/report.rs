//! Machine-readable pass/fail records for identity checks.

use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// Both sides of a failed polynomial identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub lhs: Poly<T>,
    pub rhs: Poly<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record<T> {
    pub identity: String,
    pub n: i64,
    /// Extra indices for pairing checks `⟨u_ν, P_m P_n⟩`.
    pub m: Option<usize>,
    pub nu: Option<usize>,
    pub status: Status,
    pub detail: Option<String>,
    pub witness: Option<Witness<T>>,
}

/// Ordered collection of identity checks. Pass means exact equality.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<T> {
    pub records: Vec<Record<T>>,
    pub notes: Vec<String>,
}

impl<T: Scalar> Default for VerificationReport<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> VerificationReport<T> {
    pub fn new() -> Self {
        VerificationReport {
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records `lhs == rhs`; the witness is kept only on failure.
    pub fn check_poly(&mut self, identity: &str, n: i64, lhs: Poly<T>, rhs: Poly<T>) -> bool {
        let ok = lhs == rhs;
        self.records.push(Record {
            identity: identity.to_string(),
            n,
            m: None,
            nu: None,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: None,
            witness: (!ok).then_some(Witness { lhs, rhs }),
        });
        ok
    }

    /// Records a scalar equality.
    pub fn check_value(&mut self, identity: &str, n: i64, lhs: T, rhs: T) -> bool {
        let ok = lhs == rhs;
        self.records.push(Record {
            identity: identity.to_string(),
            n,
            m: None,
            nu: None,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: (!ok).then(|| format!("{lhs} != {rhs}")),
            witness: None,
        });
        ok
    }

    pub fn push(&mut self, record: Record<T>) {
        self.records.push(record);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: VerificationReport<T>) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record<T>> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Record<T>> {
        self.failures().next()
    }

    /// Number of records for a given identity name.
    pub fn count(&self, identity: &str) -> usize {
        self.records
            .iter()
            .filter(|r| r.identity == identity)
            .count()
    }
}
