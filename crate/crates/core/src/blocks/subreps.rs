//! Recorded subrepresentation facts `V_r(q^a) ⊂ V_i ⊗ V_j(q^b)` and their
//! consequences for divisors.
//!
//! The facts come from tensor product decompositions that are not computed
//! here; they are data. For each fact and every probe node `m` the divisor
//! identity `ξ_mr(z/q^a) = ξ_mi(z) ξ_mj(z/q^b)` must hold, and the pole
//! sets must satisfy `S_mr + a ⊂ S_mi ∪ (S_mj + b)` modulo the period.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanData, Family, Node};
use crate::divisor::xi_divisor;
use crate::error::Result;
use crate::mq::pole_sets;

/// `V_sub(q^sub_exp) ⊂ V_left ⊗ V_right(q^right_exp)`; `sub = None` is the trivial representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubrepFact {
    pub sub: Option<Node>,
    pub sub_exp: i64,
    pub left: Node,
    pub right: Node,
    pub right_exp: i64,
}

impl SubrepFact {
    const fn new(sub: Node, sub_exp: i64, left: Node, right: Node, right_exp: i64) -> Self {
        SubrepFact {
            sub: Some(sub),
            sub_exp,
            left,
            right,
            right_exp,
        }
    }
}

fn shifted(node: Node, exp: i64) -> String {
    if exp == 0 {
        format!("V{node}")
    } else {
        format!("V{node}(q^{exp})")
    }
}

impl fmt::Display for SubrepFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = match self.sub {
            Some(r) => shifted(r, self.sub_exp),
            None => "ℂ".into(),
        };
        write!(f, "{sub} ⊂ {} ⊗ {}", shifted(self.left, 0), shifted(self.right, self.right_exp))
    }
}

const E8_FACTS: [SubrepFact; 8] = [
    SubrepFact::new(2, 1, 1, 1, 2),
    SubrepFact::new(7, 6, 1, 1, 12),
    SubrepFact::new(1, 10, 1, 1, 20),
    SubrepFact::new(8, 5, 1, 7, 8),
    SubrepFact::new(6, 1, 7, 7, 2),
    SubrepFact::new(3, 2, 1, 2, 3),
    SubrepFact::new(4, 3, 1, 3, 4),
    SubrepFact::new(5, 4, 1, 4, 5),
];

const E7_FACTS: [SubrepFact; 8] = [
    SubrepFact::new(2, 1, 1, 1, 2),
    SubrepFact::new(6, 5, 1, 1, 10),
    SubrepFact::new(5, 1, 6, 6, 2),
    SubrepFact::new(7, 4, 1, 6, 7),
    SubrepFact::new(3, 2, 1, 2, 3),
    SubrepFact::new(4, 3, 1, 3, 4),
    SubrepFact::new(6, 6, 6, 6, 12),
    SubrepFact::new(1, 8, 1, 6, 13),
];

const E6_FACTS: [SubrepFact; 3] = [
    SubrepFact::new(5, 4, 1, 1, 8),
    SubrepFact::new(6, 3, 1, 5, 6),
    SubrepFact::new(1, 6, 1, 6, 9),
];

const F4_FACTS: [SubrepFact; 4] = [
    SubrepFact::new(2, 1, 1, 1, 2),
    SubrepFact::new(4, 4, 1, 1, 8),
    SubrepFact::new(1, 6, 1, 1, 12),
    SubrepFact::new(3, 2, 4, 4, 4),
];

const G2_FACTS: [SubrepFact; 2] = [SubrepFact::new(2, 1, 1, 1, 2), SubrepFact::new(1, 4, 1, 1, 8)];

/// The recorded nontrivial facts for a type.
pub fn recorded_facts(cd: &CartanData) -> Vec<SubrepFact> {
    let n = cd.rank();
    match (cd.lie_type.family(), n) {
        (Family::E, 6) => E6_FACTS.to_vec(),
        (Family::E, 7) => E7_FACTS.to_vec(),
        (Family::E, 8) => E8_FACTS.to_vec(),
        (Family::F, _) => F4_FACTS.to_vec(),
        (Family::G, _) => G2_FACTS.to_vec(),
        (Family::D, _) if n.is_multiple_of(2) => vec![
            SubrepFact::new(n - 2, 1, n - 1, n - 1, 2),
            SubrepFact::new(n - 2, 1, n, n, 2),
        ],
        _ => Vec::new(),
    }
}

/// `ℂ ⊂ V_i ⊗ V_{i*}(q^{r∨h∨})` for every node.
pub fn duality_facts(cd: &CartanData) -> Vec<SubrepFact> {
    cd.nodes()
        .map(|i| SubrepFact {
            sub: None,
            sub_exp: 0,
            left: i,
            right: cd.dual_node(i).expect("valid node"),
            right_exp: cd.dual_shift(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubrepCheck {
    pub fact: SubrepFact,
    pub label: String,
    /// Probe nodes where the divisor identity fails.
    pub divisor_failures: Vec<Node>,
    /// Probe nodes where the pole-set containment fails.
    pub containment_failures: Vec<Node>,
}

impl SubrepCheck {
    pub fn passed(&self) -> bool {
        self.divisor_failures.is_empty() && self.containment_failures.is_empty()
    }
}

fn shifted_set(s: &BTreeSet<i64>, k: i64, p: i64) -> BTreeSet<i64> {
    s.iter().map(|x| (x + k).rem_euclid(p)).collect()
}

pub fn check_fact(cd: &CartanData, fact: &SubrepFact) -> Result<SubrepCheck> {
    let p = cd.period;
    let mut divisor_failures = Vec::new();
    let mut containment_failures = Vec::new();
    for m in cd.nodes() {
        let rhs = xi_divisor(cd, m, fact.left)?.add(&xi_divisor(cd, m, fact.right)?.shift(fact.right_exp))?;
        let lhs_ok = match fact.sub {
            Some(r) => xi_divisor(cd, m, r)?.shift(fact.sub_exp) == rhs,
            None => rhs.is_zero(),
        };
        if !lhs_ok {
            divisor_failures.push(m);
        }
        if let Some(r) = fact.sub {
            let sub = shifted_set(&pole_sets(cd, m, r)?.s, fact.sub_exp, p);
            let mut union = shifted_set(&pole_sets(cd, m, fact.left)?.s, 0, p);
            union.extend(shifted_set(&pole_sets(cd, m, fact.right)?.s, fact.right_exp, p));
            if !sub.is_subset(&union) {
                containment_failures.push(m);
            }
        }
    }
    Ok(SubrepCheck {
        fact: *fact,
        label: fact.to_string(),
        divisor_failures,
        containment_failures,
    })
}

/// Checks the recorded facts followed by the duality facts.
pub fn subrep_identities(cd: &CartanData) -> Result<Vec<SubrepCheck>> {
    recorded_facts(cd)
        .iter()
        .chain(duality_facts(cd).iter())
        .map(|f| check_fact(cd, f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{cartan_data, LieType};

    #[test]
    fn every_fact_passes() {
        for t in ["E6", "E7", "E8", "F4", "G2", "D4", "D6", "D8"] {
            let cd = cartan_data(t.parse().unwrap());
            for c in subrep_identities(&cd).unwrap() {
                assert!(c.passed(), "{t}: {c:?}");
            }
        }
    }

    #[test]
    fn counts() {
        let n = |t: &str| recorded_facts(&cartan_data(t.parse().unwrap())).len();
        assert_eq!((n("E8"), n("E7"), n("E6"), n("F4"), n("G2"), n("D6"), n("A3")), (8, 8, 3, 4, 2, 2, 0));
    }

    #[test]
    fn duality_holds_everywhere() {
        for t in LieType::all_up_to(8) {
            let cd = cartan_data(t);
            for f in duality_facts(&cd) {
                assert!(check_fact(&cd, &f).unwrap().passed(), "{t}: {f}");
            }
        }
    }

    #[test]
    fn a_wrong_fact_is_caught() {
        let cd = cartan_data("G2".parse().unwrap());
        let wrong = SubrepFact::new(2, 3, 1, 1, 2);
        let c = check_fact(&cd, &wrong).unwrap();
        assert!(!c.passed());
        assert_eq!(c.divisor_failures, vec![1, 2]);
    }

    #[test]
    fn labels() {
        assert_eq!(E8_FACTS[3].to_string(), "V8(q^5) ⊂ V1 ⊗ V7(q^8)");
        let cd = cartan_data("E6".parse().unwrap());
        assert_eq!(duality_facts(&cd)[0].to_string(), "ℂ ⊂ V1 ⊗ V5(q^12)");
    }
}
