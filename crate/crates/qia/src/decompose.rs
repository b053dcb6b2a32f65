//! The decomposition pipeline: a quasi-ideal automaton is isomorphic to the
//! direct product of a strongly connected permutation automaton and a
//! strongly connected synchronizing automaton, and every such product is
//! quasi-ideal.
//!
//! `decompose` runs one direction, producing the two canonical congruences,
//! their quotients, and the verified isomorphism onto the quotient product.
//! `verify_product` runs the other, checking the factor hypotheses and then
//! certifying the product. `roundtrip` chains both.

use serde_json::{json, Value};

use crate::analysis::{
    is_permutation, is_strongly_connected, is_synchronizing, minimal_ideal,
    quasi_ideal_report_with, QuasiIdealReport,
};
use crate::automaton::Automaton;
use crate::congruence::{partition_text, pi_congruence, rho_congruence, Partition};
use crate::error::{Error, Result};
use crate::format::automaton_json;
use crate::product::{
    congruence_pair_iso, direct_product, find_isomorphism, CongruencePairEvidence, StateMap,
};
use crate::semigroup::{semigroup_with_cap, TransitionSemigroup};

/// The first quasi-ideal condition an automaton fails, or an invariant
/// breach inside the pipeline itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureStage {
    NotStronglyConnected,
    IdealNotRightGroup,
    ImagesDoNotPartition(String),
    Internal(String),
}

impl FailureStage {
    pub fn label(&self) -> &'static str {
        match self {
            FailureStage::NotStronglyConnected => "not_strongly_connected",
            FailureStage::IdealNotRightGroup => "ideal_not_right_group",
            FailureStage::ImagesDoNotPartition(_) => "images_do_not_partition",
            FailureStage::Internal(_) => "internal",
        }
    }
}

/// Structural flags of a factor automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorClassification {
    pub strongly_connected: bool,
    pub permutation: bool,
    pub synchronizing: bool,
}

fn classify(aut: &Automaton, sg: &TransitionSemigroup) -> FactorClassification {
    FactorClassification {
        strongly_connected: is_strongly_connected(aut),
        permutation: is_permutation(aut),
        synchronizing: is_synchronizing(sg),
    }
}

/// A successful decomposition into the two canonical quotients.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pi: Partition,
    pub rho: Partition,
    pub quotient_pi: Automaton,
    pub quotient_rho: Automaton,
    pub quotient_pi_class: FactorClassification,
    pub quotient_rho_class: FactorClassification,
    pub product: Automaton,
    /// Isomorphism from the input automaton onto `product`.
    pub map: StateMap,
    pub evidence: CongruencePairEvidence,
}

/// Outcome of `decompose`: the three-condition report plus, when the verdict
/// holds, the decomposition itself.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub report: QuasiIdealReport,
    pub decomposition: Option<Decomposition>,
    pub failure_stage: Option<FailureStage>,
}

pub fn decompose(aut: &Automaton) -> Result<DecompositionReport> {
    decompose_with_cap(aut, crate::semigroup::DEFAULT_ELEMENT_CAP)
}

pub fn decompose_with_cap(aut: &Automaton, cap: usize) -> Result<DecompositionReport> {
    let sg = semigroup_with_cap(aut, cap)?;
    let ideal = minimal_ideal(&sg);
    let report = quasi_ideal_report_with(aut, &sg, &ideal);
    if !report.verdict {
        let failure_stage = if !report.strongly_connected {
            FailureStage::NotStronglyConnected
        } else if !report.ideal_right_group {
            FailureStage::IdealNotRightGroup
        } else {
            FailureStage::ImagesDoNotPartition(
                report.violations.first().cloned().unwrap_or_default(),
            )
        };
        return Ok(DecompositionReport {
            report,
            decomposition: None,
            failure_stage: Some(failure_stage),
        });
    }
    let built = (|| -> Result<Decomposition> {
        let pi = pi_congruence(aut, &sg, &ideal)?;
        let rho = rho_congruence(aut, &sg, &ideal)?;
        let iso = congruence_pair_iso(aut, &pi, &rho)?;
        let sg_pi = semigroup_with_cap(&iso.quotient_pi, cap)?;
        let sg_rho = semigroup_with_cap(&iso.quotient_rho, cap)?;
        Ok(Decomposition {
            pi,
            rho,
            quotient_pi_class: classify(&iso.quotient_pi, &sg_pi),
            quotient_rho_class: classify(&iso.quotient_rho, &sg_rho),
            quotient_pi: iso.quotient_pi,
            quotient_rho: iso.quotient_rho,
            product: iso.product,
            map: iso.map,
            evidence: iso.evidence,
        })
    })();
    match built {
        Ok(d) => Ok(DecompositionReport {
            report,
            decomposition: Some(d),
            failure_stage: None,
        }),
        Err(e @ Error::SemigroupCapExceeded { .. }) => Err(e),
        Err(e) => Ok(DecompositionReport {
            report,
            decomposition: None,
            failure_stage: Some(FailureStage::Internal(e.to_string())),
        }),
    }
}

/// Verifies the factor hypotheses, then certifies that their direct product
/// is quasi-ideal. The first factor must be a strongly connected permutation
/// automaton, the second a strongly connected synchronizing automaton.
pub fn verify_product(a: &Automaton, b: &Automaton) -> Result<QuasiIdealReport> {
    verify_product_with_cap(a, b, crate::semigroup::DEFAULT_ELEMENT_CAP)
}

pub fn verify_product_with_cap(
    a: &Automaton,
    b: &Automaton,
    cap: usize,
) -> Result<QuasiIdealReport> {
    if !is_permutation(a) {
        return Err(Error::FirstFactorNotPermutation);
    }
    if !is_strongly_connected(a) {
        return Err(Error::FirstFactorNotStronglyConnected);
    }
    let sg_b = semigroup_with_cap(b, cap)?;
    if !is_synchronizing(&sg_b) {
        return Err(Error::SecondFactorNotSynchronizing);
    }
    if !is_strongly_connected(b) {
        return Err(Error::SecondFactorNotStronglyConnected);
    }
    let product = direct_product(a, b)?;
    let sg = semigroup_with_cap(&product, cap)?;
    let ideal = minimal_ideal(&sg);
    let report = quasi_ideal_report_with(&product, &sg, &ideal);
    if !report.verdict {
        return Err(Error::Internal(format!(
            "product of admissible factors failed the quasi-ideal check: {}",
            report.violations.join("; ")
        )));
    }
    Ok(report)
}

/// Decomposes the automaton, certifies the factors' product, and confirms the
/// automaton is isomorphic to it.
pub fn roundtrip(aut: &Automaton) -> Result<bool> {
    let outcome = decompose(aut)?;
    let d = outcome
        .decomposition
        .ok_or_else(|| Error::NotQuasiIdeal(outcome.report.violations.join("; ")))?;
    verify_product(&d.quotient_pi, &d.quotient_rho)?;
    let rebuilt = direct_product(&d.quotient_pi, &d.quotient_rho)?;
    Ok(find_isomorphism(aut, &rebuilt)?.is_some())
}

impl DecompositionReport {
    pub fn to_json(&self, aut: &Automaton) -> Value {
        let mut value = json!({
            "quasi_ideal": self.report.to_json(),
            "pi_blocks": Value::Null,
            "rho_blocks": Value::Null,
            "quotient_pi": Value::Null,
            "quotient_rho": Value::Null,
            "product": Value::Null,
            "isomorphism": Value::Null,
            "evidence": Value::Null,
            "failure_stage": self.failure_stage.as_ref().map(|f| f.label()),
        });
        if let Some(d) = &self.decomposition {
            let name_blocks = |p: &Partition| -> Value {
                json!(p
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&s| aut.state_name(s)).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
            };
            let factor = |q: &Automaton, class: &FactorClassification| -> Value {
                let mut v = automaton_json(q);
                v["strongly_connected"] = json!(class.strongly_connected);
                v["permutation"] = json!(class.permutation);
                v["synchronizing"] = json!(class.synchronizing);
                v
            };
            value["pi_blocks"] = name_blocks(&d.pi);
            value["rho_blocks"] = name_blocks(&d.rho);
            value["quotient_pi"] = factor(&d.quotient_pi, &d.quotient_pi_class);
            value["quotient_rho"] = factor(&d.quotient_rho, &d.quotient_rho_class);
            value["product"] = automaton_json(&d.product);
            value["isomorphism"] = json!(d
                .map
                .mapping()
                .iter()
                .enumerate()
                .map(|(s, &t)| [aut.state_name(s), d.product.state_name(t)])
                .collect::<Vec<_>>());
            value["evidence"] = json!({
                "meet_is_identity": d.evidence.meet_is_identity,
                "composition_is_full": d.evidence.composition_is_full,
            });
        }
        value
    }

    pub fn to_text(&self, aut: &Automaton) -> String {
        let mut out = self.report.to_text();
        if let Some(d) = &self.decomposition {
            let class_line = |c: &FactorClassification| {
                format!(
                    "strongly_connected={} permutation={} synchronizing={}",
                    c.strongly_connected, c.permutation, c.synchronizing
                )
            };
            out.push_str(&format!("pi: {}\n", partition_text(aut, &d.pi)));
            out.push_str(&format!("rho: {}\n", partition_text(aut, &d.rho)));
            out.push_str(&format!(
                "quotient_pi states: {}\n",
                d.quotient_pi.states().join(" ")
            ));
            out.push_str(&format!(
                "quotient_pi class: {}\n",
                class_line(&d.quotient_pi_class)
            ));
            out.push_str(&format!(
                "quotient_rho states: {}\n",
                d.quotient_rho.states().join(" ")
            ));
            out.push_str(&format!(
                "quotient_rho class: {}\n",
                class_line(&d.quotient_rho_class)
            ));
            out.push_str("isomorphism:\n");
            out.push_str(&d.map.to_text(aut, &d.product));
        }
        if let Some(stage) = &self.failure_stage {
            out.push_str(&format!("failure_stage: {}\n", stage.label()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn six_state_example_decomposes_onto_the_product_fixture() {
        let c = fixtures::automaton_c();
        let outcome = decompose(&c).unwrap();
        assert!(outcome.report.verdict);
        assert_eq!(outcome.failure_stage, None);
        let d = outcome.decomposition.unwrap();
        assert_eq!(partition_text(&c, &d.pi), "{q1,q2} {q3,q4} {q5,q6}");
        assert_eq!(partition_text(&c, &d.rho), "{q1,q3,q5} {q2,q4,q6}");
        assert_eq!(d.quotient_pi.table(), fixtures::automaton_a().table());
        assert_eq!(d.quotient_rho.table(), fixtures::automaton_b().table());
        assert_eq!(
            d.quotient_pi_class,
            FactorClassification {
                strongly_connected: true,
                permutation: true,
                synchronizing: false,
            }
        );
        assert_eq!(
            d.quotient_rho_class,
            FactorClassification {
                strongly_connected: true,
                permutation: false,
                synchronizing: true,
            }
        );
        assert_eq!(d.map.mapping(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(d.product.table(), fixtures::automaton_axb().table());
        assert!(d.evidence.meet_is_identity);
        assert!(d.evidence.composition_is_full);
    }

    #[test]
    fn pure_factors_decompose_trivially() {
        let a = fixtures::automaton_a();
        let outcome = decompose(&a).unwrap();
        let d = outcome.decomposition.unwrap();
        assert!(d.pi.is_identity());
        assert_eq!(d.rho.block_count(), 1);
        assert_eq!(d.quotient_pi.state_count(), 3);
        assert_eq!(d.quotient_rho.state_count(), 1);
        assert_eq!(d.map.mapping(), &[0, 1, 2]);

        let b = fixtures::automaton_b();
        let outcome = decompose(&b).unwrap();
        let d = outcome.decomposition.unwrap();
        assert_eq!(d.pi.block_count(), 1);
        assert!(d.rho.is_identity());
        assert_eq!(d.quotient_pi.state_count(), 1);
        assert_eq!(d.quotient_rho.state_count(), 2);
        assert!(d.quotient_rho_class.synchronizing);
    }

    #[test]
    fn failure_stages_name_the_first_failed_condition() {
        let outcome = decompose(&fixtures::two_components()).unwrap();
        assert_eq!(
            outcome.failure_stage,
            Some(FailureStage::NotStronglyConnected)
        );
        assert!(outcome.decomposition.is_none());

        let outcome = decompose(&fixtures::ideal_not_right_group()).unwrap();
        assert_eq!(
            outcome.failure_stage,
            Some(FailureStage::IdealNotRightGroup)
        );

        let outcome = decompose(&fixtures::overlapping_idempotent_images()).unwrap();
        assert!(matches!(
            outcome.failure_stage,
            Some(FailureStage::ImagesDoNotPartition(_))
        ));

        let outcome = decompose(&fixtures::uncovered_idempotent_images()).unwrap();
        assert_eq!(
            outcome.failure_stage,
            Some(FailureStage::NotStronglyConnected)
        );
    }

    #[test]
    fn decompose_propagates_the_element_cap() {
        assert!(matches!(
            decompose_with_cap(&fixtures::automaton_c(), 2).unwrap_err(),
            Error::SemigroupCapExceeded { cap: 2, .. }
        ));
    }

    #[test]
    fn verify_product_checks_the_factor_hypotheses() {
        let a = fixtures::automaton_a();
        let b = fixtures::automaton_b();
        let report = verify_product(&a, &b).unwrap();
        assert!(report.verdict);
        let blocks = report.blocks.unwrap();
        assert_eq!(blocks[0], vec!["(s1,t1)", "(s2,t1)", "(s3,t1)"]);

        assert_eq!(
            verify_product(&b, &b).unwrap_err(),
            Error::FirstFactorNotPermutation
        );
        assert_eq!(
            verify_product(&a, &a).unwrap_err(),
            Error::SecondFactorNotSynchronizing
        );

        let idle = Automaton::from_rows(&["p", "q"], &["a"], &[&["p"], &["q"]]).unwrap();
        let funnel =
            Automaton::from_rows(&["x", "y", "z"], &["a"], &[&["y"], &["y"], &["y"]]).unwrap();
        assert_eq!(
            verify_product(&idle, &funnel).unwrap_err(),
            Error::FirstFactorNotStronglyConnected
        );
        let swap = Automaton::from_rows(&["p", "q"], &["a"], &[&["q"], &["p"]]).unwrap();
        assert_eq!(
            verify_product(&swap, &funnel).unwrap_err(),
            Error::SecondFactorNotStronglyConnected
        );
    }

    #[test]
    fn roundtrip_certifies_quasi_ideal_inputs_and_rejects_others() {
        assert!(roundtrip(&fixtures::automaton_c()).unwrap());
        assert!(roundtrip(&fixtures::automaton_a()).unwrap());
        assert!(roundtrip(&fixtures::automaton_b()).unwrap());
        assert!(roundtrip(&fixtures::automaton_axb()).unwrap());
        assert!(matches!(
            roundtrip(&fixtures::ideal_not_right_group()).unwrap_err(),
            Error::NotQuasiIdeal(_)
        ));
    }

    #[test]
    fn report_renderings_cover_success_and_failure() {
        let c = fixtures::automaton_c();
        let outcome = decompose(&c).unwrap();
        let text = outcome.to_text(&c);
        assert!(text.contains("verdict: quasi-ideal\n"));
        assert!(text.contains("pi: {q1,q2} {q3,q4} {q5,q6}\n"));
        assert!(text.contains("q1 -> ([q1],[q1])\n"));
        let json = outcome.to_json(&c);
        assert_eq!(json["quasi_ideal"]["verdict"], json!(true));
        assert_eq!(json["failure_stage"], Value::Null);
        assert_eq!(json["pi_blocks"][0], json!(["q1", "q2"]));
        assert_eq!(json["quotient_pi"]["permutation"], json!(true));
        assert_eq!(json["isomorphism"][0], json!(["q1", "([q1],[q1])"]));

        let aut = fixtures::ideal_not_right_group();
        let outcome = decompose(&aut).unwrap();
        let text = outcome.to_text(&aut);
        assert!(text.contains("verdict: not quasi-ideal\n"));
        assert!(text.contains("failure_stage: ideal_not_right_group\n"));
        let json = outcome.to_json(&aut);
        assert_eq!(json["failure_stage"], json!("ideal_not_right_group"));
        assert_eq!(json["quotient_pi"], Value::Null);
    }
}
