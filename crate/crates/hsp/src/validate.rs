//! Exhaustive validation: hide every subgroup of a group in turn, solve, and
//! audit recovery plus oracle discipline.

use crate::error::{Error, Result};
use crate::oracle::{simulated_hsmc, HiddenSubgroupInstance, HsmcOracle};
use crate::reduction::solve_hsp;
use groups::{all_subgroups, GroupRef};

pub const VALIDATION_ORDER_BUDGET: usize = 256;

/// One hidden-subgroup round of the sweep.
#[derive(Clone, Debug)]
pub struct ValidationRow {
    pub hidden_order: usize,
    pub recovered: bool,
    pub calls: usize,
    pub within_bounds: bool,
    pub violations: usize,
}

impl ValidationRow {
    pub fn ok(&self) -> bool {
        self.recovered && self.within_bounds && self.violations == 0
    }
}

/// Sweep summary for one group.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub group_name: String,
    pub group_order: usize,
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(ValidationRow::ok)
    }

    pub fn subgroup_count(&self) -> usize {
        self.rows.len()
    }

    pub fn total_calls(&self) -> usize {
        self.rows.iter().map(|r| r.calls).sum()
    }

    pub fn max_calls(&self) -> usize {
        self.rows.iter().map(|r| r.calls).max().unwrap_or(0)
    }
}

/// Run the solver against every subgroup of g as the hidden subgroup.
pub fn exhaustive_validation(g: &GroupRef) -> Result<ValidationReport> {
    if g.order() > VALIDATION_ORDER_BUDGET {
        return Err(Error::Budget(g.order()));
    }
    let mut rows = Vec::new();
    for h in all_subgroups(g) {
        let inst = HiddenSubgroupInstance::new(g, h.generators())?;
        let mut oracle = simulated_hsmc(&inst);
        let (got, trace) = solve_hsp(g, &mut oracle)?;
        rows.push(ValidationRow {
            hidden_order: inst.hidden_order(),
            recovered: inst.check_answer(&got),
            calls: oracle.calls(),
            within_bounds: trace.within_bounds(),
            violations: oracle.violations(),
        });
    }
    Ok(ValidationReport {
        group_name: g.name().to_string(),
        group_order: g.order(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use groups::by_name;

    #[test]
    fn quaternion_sweep_recovers_all_six_subgroups() {
        let g = by_name("q8").unwrap();
        let report = exhaustive_validation(&g).unwrap();
        assert_eq!(report.subgroup_count(), 6);
        assert!(report.all_ok());
        assert!(report.max_calls() <= 9);
    }

    #[test]
    fn dihedral_sweep() {
        let g = by_name("d8").unwrap();
        let report = exhaustive_validation(&g).unwrap();
        assert_eq!(report.subgroup_count(), 10);
        assert!(report.all_ok());
        assert!(report.max_calls() <= 9);
    }

    #[test]
    fn budget_is_enforced() {
        let g = groups::make_abelian(&[512]).unwrap();
        assert!(matches!(exhaustive_validation(&g), Err(Error::Budget(512))));
    }
}
