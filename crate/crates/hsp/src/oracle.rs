//! The sealed problem instance and the query boundary between solver and
//! hidden subgroup.
//!
//! The solver never touches the hidden subgroup directly: it is stored
//! privately here, and the only read paths are oracle answers and the
//! validator's final equality check.

use crate::error::{Error, Result};
use groups::{
    commutator_subgroup, is_elementary_abelian, ElemId, GroupRef, Subgroup,
};
use std::rc::Rc;

/// A group together with a hidden subgroup known only to oracles.
pub struct HiddenSubgroupInstance {
    group: GroupRef,
    hidden: Subgroup,
}

impl HiddenSubgroupInstance {
    pub fn new(group: &GroupRef, hidden_generators: &[ElemId]) -> Result<Self> {
        let hidden = Subgroup::new(group, hidden_generators)?;
        Ok(Self { group: Rc::clone(group), hidden })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    /// Equality check against the sealed subgroup, for validation after a
    /// solve has committed to an answer.
    pub fn check_answer(&self, answer: &Subgroup) -> bool {
        self.hidden.same_as(answer)
    }

    pub fn hidden_order(&self) -> usize {
        self.hidden.order()
    }

    pub(crate) fn hidden(&self) -> &Subgroup {
        &self.hidden
    }
}

/// Answers queries for the hidden subgroup modulo commutators: given K and
/// the confirmed part H0, returns (H ∩ K)·K' as a subgroup of K.
pub trait HsmcOracle {
    /// Requires K/(K'·H0) to be elementary abelian; implementations must
    /// reject and record anything else.
    fn query(&mut self, k: &Subgroup, h0: &Subgroup) -> Result<Subgroup>;

    /// Number of rejected queries seen so far.
    fn violations(&self) -> usize;

    /// Number of answered queries.
    fn calls(&self) -> usize;
}

/// Classical realization of the oracle: intersects the sealed subgroup with
/// K by enumeration and joins in the commutator subgroup.
pub struct SimulatedHsmc {
    group: GroupRef,
    hidden: Subgroup,
    violations: usize,
    calls: usize,
}

/// Build the classical oracle for an instance.
pub fn simulated_hsmc(instance: &HiddenSubgroupInstance) -> SimulatedHsmc {
    SimulatedHsmc {
        group: Rc::clone(instance.group()),
        hidden: instance.hidden().clone(),
        violations: 0,
        calls: 0,
    }
}

impl SimulatedHsmc {
    fn reject(&mut self, msg: String) -> Error {
        self.violations += 1;
        Error::ProtocolViolation(msg)
    }
}

impl HsmcOracle for SimulatedHsmc {
    fn query(&mut self, k: &Subgroup, h0: &Subgroup) -> Result<Subgroup> {
        if !Rc::ptr_eq(k.parent(), &self.group) || !Rc::ptr_eq(h0.parent(), &self.group) {
            return Err(self.reject("query from a foreign group".into()));
        }
        if !h0.is_subgroup_of(k) {
            return Err(self.reject("confirmed part not contained in K".into()));
        }
        let kprime = commutator_subgroup(k, k)?;
        let b = kprime.join(h0);
        match is_elementary_abelian(k, &b) {
            Ok(true) => {}
            Ok(false) => {
                return Err(self.reject(format!(
                    "K/(K'H0) of order {} is not elementary abelian",
                    k.order() / b.order()
                )));
            }
            Err(e) => {
                return Err(self.reject(format!("malformed quotient: {e}")));
            }
        }
        self.calls += 1;
        let meet = self.hidden.intersection(k);
        Ok(meet.join(&kprime))
    }

    fn violations(&self) -> usize {
        self.violations
    }

    fn calls(&self) -> usize {
        self.calls
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use groups::{by_name, center, make_abelian, make_heisenberg};

    #[test]
    fn non_elementary_queries_are_rejected_and_recorded() {
        let g = make_abelian(&[4, 3, 2]).unwrap();
        let inst = HiddenSubgroupInstance::new(&g, &[6]).unwrap();
        let mut oracle = simulated_hsmc(&inst);
        let whole = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        // K = G mixes order-4 and order-3 parts: not elementary.
        assert!(matches!(
            oracle.query(&whole, &triv),
            Err(Error::ProtocolViolation(_))
        ));
        assert_eq!(oracle.violations(), 1);
        // The Sylow 2-part Z_4 x Z_2 has an order-4 element: still rejected.
        let two = groups::sylow(&g, 2).unwrap();
        assert!(oracle.query(&two, &triv).is_err());
        assert_eq!(oracle.violations(), 2);
        assert_eq!(oracle.calls(), 0);
    }

    #[test]
    fn elementary_abelian_query_returns_the_hidden_subgroup() {
        let g = make_abelian(&[2, 2, 2]).unwrap();
        let h = Subgroup::new(&g, &[6]).unwrap(); // (1,1,0)
        let inst = HiddenSubgroupInstance::new(&g, &[6]).unwrap();
        let mut oracle = simulated_hsmc(&inst);
        let r = oracle
            .query(&Subgroup::whole(&g), &Subgroup::trivial(&g))
            .unwrap();
        assert!(r.same_as(&h));
        assert_eq!(oracle.calls(), 1);
        assert_eq!(oracle.violations(), 0);
    }

    #[test]
    fn heisenberg_center_is_a_fixed_point() {
        let g = make_heisenberg(3).unwrap();
        let z = center(&g);
        let inst = HiddenSubgroupInstance::new(&g, z.generators()).unwrap();
        let mut oracle = simulated_hsmc(&inst);
        // K = G, H0 = 1: G/(G'·1) = Z_3 x Z_3 is elementary, and the answer
        // (H ∩ G)·G' = Z(G)·Z(G) = Z(G).
        let r = oracle
            .query(&Subgroup::whole(&g), &Subgroup::trivial(&g))
            .unwrap();
        assert!(r.same_as(&z));
    }

    #[test]
    fn whole_group_hidden_answers_k_every_time() {
        let g = by_name("q8").unwrap();
        let inst = HiddenSubgroupInstance::new(&g, g.generators()).unwrap();
        let mut oracle = simulated_hsmc(&inst);
        let whole = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        let r = oracle.query(&whole, &triv).unwrap();
        assert!(r.same_as(&whole));
        let minus_one = Subgroup::new(&g, &[1]).unwrap();
        let r = oracle.query(&minus_one, &triv).unwrap();
        assert!(r.same_as(&minus_one));
    }

    #[test]
    fn answer_contains_commutator_and_confirmed_part() {
        let g = by_name("d8").unwrap();
        let inst = HiddenSubgroupInstance::new(&g, &[1]).unwrap(); // one reflection
        let mut oracle = simulated_hsmc(&inst);
        let whole = Subgroup::whole(&g);
        let kprime = groups::derived_subgroup(&g).unwrap();
        let r = oracle.query(&whole, &kprime).unwrap();
        assert!(kprime.is_subgroup_of(&r));
        // (H ∩ G)·G' = <s>·<r^2> has order 4.
        assert_eq!(r.order(), 4);
    }
}
