use serde::Serialize;

use super::sample::SampleSpec;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No violation on the sampled points. Not a proof.
    HoldsOnSamples,
    Fails,
}

/// A concrete point where a law was checked, with both sides of the law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<S> {
    pub point: Vec<S>,
    pub lhs: S,
    pub rhs: S,
    pub discrepancy: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport<S> {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Witness<S>>,
    pub sample_spec: SampleSpec,
    pub tolerance: f64,
    pub max_discrepancy: S,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<S: Scalar> PropertyReport<S> {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSamples
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// An ordered collection of reports from one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ReportSet<S> {
    reports: Vec<PropertyReport<S>>,
}

impl<S: Scalar> ReportSet<S> {
    pub fn new(reports: Vec<PropertyReport<S>>) -> Self {
        ReportSet { reports }
    }

    pub fn reports(&self) -> &[PropertyReport<S>] {
        &self.reports
    }

    pub fn into_reports(self) -> Vec<PropertyReport<S>> {
        self.reports
    }

    pub fn holds(&self) -> bool {
        self.reports.iter().all(PropertyReport::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport<S>> {
        self.reports.iter().filter(|r| r.fails())
    }

    pub fn get(&self, property: &str) -> Option<&PropertyReport<S>> {
        self.reports.iter().find(|r| r.property == property)
    }

    /// Folds the set into one report: the first failing member (if any)
    /// supplies verdict and witness.
    pub fn combined(&self, property: impl Into<String>) -> PropertyReport<S> {
        let mut base = self
            .reports
            .iter()
            .find(|r| r.fails())
            .or_else(|| self.reports.first())
            .cloned()
            .expect("report set is never empty");
        let names: Vec<&str> = self.reports.iter().map(|r| r.property.as_str()).collect();
        base.note = Some(match base.verdict {
            Verdict::Fails => format!("first failing check: {}", base.property),
            Verdict::HoldsOnSamples => format!("checks: {}", names.join(", ")),
        });
        base.property = property.into();
        base.max_discrepancy = self
            .reports
            .iter()
            .map(|r| r.max_discrepancy)
            .fold(S::zero(), |a, b| if b > a || b.is_nan() { b } else { a });
        base.checked = self.reports.iter().map(|r| r.checked).sum();
        base
    }
}

impl<S> IntoIterator for ReportSet<S> {
    type Item = PropertyReport<S>;
    type IntoIter = std::vec::IntoIter<PropertyReport<S>>;

    fn into_iter(self) -> Self::IntoIter {
        self.reports.into_iter()
    }
}

/// Accumulates observations for one law and picks the witness.
///
/// Pinned points (known critical points of a construction) are checked
/// before the sample set; the first failing pinned point wins. Otherwise
/// the failure with the largest discrepancy is reported, earliest in sample
/// order on ties.
pub(crate) struct Tracker<S> {
    property: String,
    tolerance: S,
    checked: usize,
    max_discrepancy: S,
    pinned: Option<Witness<S>>,
    worst: Option<Witness<S>>,
    note: Option<String>,
}

impl<S: Scalar> Tracker<S> {
    pub(crate) fn new(property: impl Into<String>, tolerance: S) -> Self {
        Tracker {
            property: property.into(),
            tolerance,
            checked: 0,
            max_discrepancy: S::zero(),
            pinned: None,
            worst: None,
            note: None,
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    pub(crate) fn record(&mut self, point: &[S], lhs: S, rhs: S, discrepancy: S, failed: bool) {
        self.observe(point, lhs, rhs, discrepancy, failed, false);
    }

    pub(crate) fn record_pinned(&mut self, point: &[S], lhs: S, rhs: S, discrepancy: S, failed: bool) {
        self.observe(point, lhs, rhs, discrepancy, failed, true);
    }

    /// Equality check `lhs == rhs` within tolerance.
    pub(crate) fn compare(&mut self, point: &[S], lhs: S, rhs: S) {
        let d = discrepancy(lhs, rhs);
        self.record(point, lhs, rhs, d, d > self.tolerance);
    }

    pub(crate) fn compare_pinned(&mut self, point: &[S], lhs: S, rhs: S) {
        let d = discrepancy(lhs, rhs);
        self.record_pinned(point, lhs, rhs, d, d > self.tolerance);
    }

    /// Order check `lhs <= rhs + tol`; the discrepancy is the excess.
    pub(crate) fn at_most(&mut self, point: &[S], lhs: S, rhs: S) {
        let excess = lhs - rhs;
        let d = if excess.is_nan() { S::infinity() } else { excess.max(S::zero()) };
        self.record(point, lhs, rhs, d, d > self.tolerance);
    }

    fn observe(&mut self, point: &[S], lhs: S, rhs: S, d: S, failed: bool, pinned: bool) {
        self.checked += 1;
        let d = if d.is_nan() { S::infinity() } else { d };
        if d > self.max_discrepancy {
            self.max_discrepancy = d;
        }
        if !failed {
            return;
        }
        let w = Witness { point: point.to_vec(), lhs, rhs, discrepancy: d };
        if pinned {
            if self.pinned.is_none() {
                self.pinned = Some(w);
            }
        } else if self.worst.as_ref().is_none_or(|cur| d > cur.discrepancy) {
            self.worst = Some(w);
        }
    }

    pub(crate) fn finish(self, spec: &SampleSpec) -> PropertyReport<S> {
        let witness = self.pinned.or(self.worst);
        PropertyReport {
            property: self.property,
            verdict: if witness.is_some() { Verdict::Fails } else { Verdict::HoldsOnSamples },
            witness,
            sample_spec: spec.clone(),
            tolerance: self.tolerance.as_f64(),
            max_discrepancy: self.max_discrepancy,
            checked: self.checked,
            note: self.note,
        }
    }
}

pub(crate) fn discrepancy<S: Scalar>(a: S, b: S) -> S {
    let d = (a - b).abs();
    if d.is_nan() {
        S::infinity()
    } else {
        d
    }
}
