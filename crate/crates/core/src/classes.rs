//! Necessary-condition probes for membership in three implication classes:
//! (S,N)-implications with continuous `N`, residuals of left-continuous
//! t-norms, and φ-conjugates of the Łukasiewicz implication.
//!
//! A probe can exclude a candidate (with a witness) but never certify
//! membership: `consistent-with-membership` only says that no sampled point
//! contradicts it.

use serde::Serialize;

use crate::connectives::Negation;
use crate::generators::Generator;
use crate::implications::{Bijection, ImplicationCandidate, ImplicationOrigin};
use crate::properties::{
    check_implication_axioms, check_property, probe_continuity, probe_right_continuity, probe_surface_continuity,
    PropertyReport, Property, SampleSpec, Tracker, Witness,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassId {
    /// (S,N)-implications with a continuous negation.
    #[serde(rename = "SN")]
    SN,
    /// R-implications of left-continuous t-norms.
    #[serde(rename = "R-leftcont")]
    RLeftCont,
    /// φ-conjugates of the Łukasiewicz implication.
    #[serde(rename = "phi-conjugate-LK")]
    PhiConjugateLK,
}

impl ClassId {
    pub const ALL: [ClassId; 3] = [ClassId::SN, ClassId::RLeftCont, ClassId::PhiConjugateLK];

    pub fn name(self) -> &'static str {
        match self {
            ClassId::SN => "SN",
            ClassId::RLeftCont => "R-leftcont",
            ClassId::PhiConjugateLK => "phi-conjugate-LK",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Membership<S> {
    ConsistentWithMembership,
    Excluded { criterion: String, witness: Witness<S> },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassProbeResult<S> {
    pub class_id: ClassId,
    pub candidate: String,
    /// Necessary conditions; any failure excludes the candidate.
    pub verdicts: Vec<PropertyReport<S>>,
    /// Reported for context only.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<PropertyReport<S>>,
    pub overall: Membership<S>,
}

impl<S: Scalar> ClassProbeResult<S> {
    fn assemble(
        class_id: ClassId,
        candidate: &ImplicationCandidate<S>,
        verdicts: Vec<PropertyReport<S>>,
        informational: Vec<PropertyReport<S>>,
    ) -> Self {
        let overall = verdicts
            .iter()
            .find_map(|r| {
                r.witness.clone().filter(|_| r.fails()).map(|w| Membership::Excluded {
                    criterion: r.property.clone(),
                    witness: w,
                })
            })
            .unwrap_or(Membership::ConsistentWithMembership);
        ClassProbeResult { class_id, candidate: candidate.label().to_string(), verdicts, informational, overall }
    }

    pub fn excluded(&self) -> bool {
        matches!(self.overall, Membership::Excluded { .. })
    }

    pub fn consistent(&self) -> bool {
        !self.excluded()
    }
}

fn renamed<S>(mut r: PropertyReport<S>, name: &str) -> PropertyReport<S> {
    r.property = name.to_string();
    r
}

/// I2, EP, and the natural negation `N_I(x) = I(x,0)` being a continuous
/// fuzzy negation. Strictness and involutivity of `N_I` are informational.
pub fn sn_probe<S: Scalar>(i: &ImplicationCandidate<S>, s: &SampleSpec) -> ClassProbeResult<S> {
    let axioms = check_implication_axioms(i, s);
    let i2 = axioms.get("I2").cloned().expect("axiom set carries I2");
    let ep = check_property(i, &Property::EP, s);
    let n = i.natural_negation();
    let probe = probe_continuity(&n, s).into_reports();
    let mut verdicts = vec![i2, ep];
    let mut informational = Vec::new();
    for r in probe {
        let name = format!("N_I {}", r.property);
        match r.property.as_str() {
            "negation" | "continuity" => verdicts.push(renamed(r, &name)),
            _ => informational.push(renamed(r, &name)),
        }
    }
    ClassProbeResult::assemble(ClassId::SN, i, verdicts, informational)
}

/// I2, OP, EP and right-continuity in the second argument.
pub fn r_probe<S: Scalar>(i: &ImplicationCandidate<S>, s: &SampleSpec) -> ClassProbeResult<S> {
    let axioms = check_implication_axioms(i, s);
    let i2 = axioms.get("I2").cloned().expect("axiom set carries I2");
    let verdicts = vec![
        i2,
        check_property(i, &Property::OP, s),
        check_property(i, &Property::EP, s),
        probe_right_continuity(i, s),
    ];
    ClassProbeResult::assemble(ClassId::RLeftCont, i, verdicts, Vec::new())
}

/// Continuity on `[0,1]²`, OP and EP.
pub fn conjugate_lk_probe<S: Scalar>(i: &ImplicationCandidate<S>, s: &SampleSpec) -> ClassProbeResult<S> {
    let verdicts = vec![
        probe_surface_continuity(i, s),
        check_property(i, &Property::OP, s),
        check_property(i, &Property::EP, s),
    ];
    ClassProbeResult::assemble(ClassId::PhiConjugateLK, i, verdicts, Vec::new())
}

pub fn probe<S: Scalar>(class: ClassId, i: &ImplicationCandidate<S>, s: &SampleSpec) -> ClassProbeResult<S> {
    match class {
        ClassId::SN => sn_probe(i, s),
        ClassId::RLeftCont => r_probe(i, s),
        ClassId::PhiConjugateLK => conjugate_lk_probe(i, s),
    }
}

/// `I^φ_{N_φ}` built through the generated route: `φ` as an increasing
/// generator and `N_φ(x) = φ⁻¹(1 - φ(x))`, which gives
/// `φ⁻¹(min{1 - φ(x) + φ(y), 1})`. Lies in all three classes.
pub fn build_intersection_member<S: Scalar>(phi: &Bijection<S>) -> ImplicationCandidate<S> {
    let g = Generator::from_bijection(phi);
    let n = Negation::phi_conjugate(phi);
    let label = format!("I^{0}_N({0})", phi.label());
    let (gi, ni) = (g.clone(), n.clone());
    ImplicationCandidate::new(label, ImplicationOrigin::IgN { g: g.label(), n: n.label().to_string() }, move |x, y| {
        let sum = gi.value(ni.eval(x)) + gi.value(y);
        gi.pseudo_inverse(sum)
    })
}

/// Checks `φ(x) + φ(1-x) = 1` on the sampled units.
pub fn check_self_dual_phi<S: Scalar>(phi: &Bijection<S>, s: &SampleSpec) -> PropertyReport<S> {
    let one = S::one();
    let mut t = Tracker::new("self-dual", S::lit(s.tolerance));
    t.note("lhs = φ(x) + φ(1-x), rhs = 1");
    for x in s.units::<S>() {
        t.compare(&[x], phi.forward(x) + phi.forward(one - x), one);
    }
    t.finish(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::BinaryConnective;
    use crate::properties::compare_surfaces;

    #[test]
    fn intersection_member_matches_conjugate_of_lukasiewicz() {
        let s = SampleSpec::default();
        for phi in [Bijection::<f64>::power(2.0).unwrap(), Bijection::cosine(), Bijection::identity()] {
            let member = build_intersection_member(&phi);
            let conj = ImplicationCandidate::lukasiewicz().phi_conjugate(&phi);
            let c = compare_surfaces(&member, &conj, &s);
            assert!(c.max_abs_diff <= 1e-9, "{}: {:?}", phi.label(), c);
        }
    }

    #[test]
    fn intersection_member_is_in_every_class() {
        let s = SampleSpec::default().with_tolerance(1e-6);
        let member = build_intersection_member(&Bijection::<f64>::power(2.0).unwrap());
        for class in ClassId::ALL {
            let r = probe(class, &member, &s);
            assert!(r.consistent(), "{:?}: {:?}", class, r.overall);
        }
    }

    #[test]
    fn piecewise_is_excluded_everywhere_by_ep() {
        let s = SampleSpec::default();
        let i = ImplicationCandidate::<f64>::piecewise_f();
        for class in ClassId::ALL {
            let r = probe(class, &i, &s);
            assert!(r.excluded(), "{:?}", class);
        }
        match sn_probe(&i, &s).overall {
            Membership::Excluded { criterion, witness } => {
                assert_eq!(criterion, "EP");
                assert_eq!(witness.point, vec![0.7, 0.65, 0.2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sn_of_max_and_standard_negation() {
        let s = SampleSpec::default();
        let max = BinaryConnective::<f64>::basic(crate::connectives::BasicTNorm::Min).dual();
        let i = ImplicationCandidate::sn(&max, &Negation::standard());
        assert!(sn_probe(&i, &s).consistent());
        // Kleene-Dienes is not a residual: OP fails
        let r = r_probe(&i, &s);
        assert!(r.excluded());
    }

    #[test]
    fn goedel_residual_is_r_but_not_conjugate() {
        let s = SampleSpec::default().with_tolerance(1e-6);
        let min = BinaryConnective::<f64>::basic(crate::connectives::BasicTNorm::Min);
        let i = ImplicationCandidate::residual_of(&min);
        assert!(r_probe(&i, &s).consistent(), "{:?}", r_probe(&i, &s).overall);
        let c = conjugate_lk_probe(&i, &s);
        match c.overall {
            Membership::Excluded { criterion, .. } => assert_eq!(criterion, "continuity"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_dual_phi() {
        let s = SampleSpec::default();
        assert!(check_self_dual_phi(&Bijection::<f64>::cosine(), &s).holds());
        let r = check_self_dual_phi(&Bijection::<f64>::power(2.0).unwrap(), &s);
        assert!(r.fails());
        let w = r.witness.unwrap();
        assert_eq!(w.point, vec![0.5]);
        assert_eq!(w.lhs, 0.5);
    }
}
