//! The composite analysis of one (graph, group) pair and its `hatreport/1`
//! JSON rendering.

use serde_json::{json, Value};
use thiserror::Error;

use crate::graphcore::Graph;
use crate::hatcore::{
    alternating_cycles, check_action, induced_orientation, transitivity, AltCycleReport, HatError, Orientation,
    TransitivityReport,
};
use crate::pentagon::{
    assert_no_type2, classify_five_cycles, closed_neighbourhood_size, consistent_cycles, reachability,
    ConsistentCycles, FiveCycleAnalysis, PentagonError, ReachabilityReport, DEFAULT_MAX_GROUP_ENUM,
};
use crate::perm::PermGroup;

pub const SCHEMA: &str = "hatreport/1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("graph is not tetravalent")]
    NotTetravalent,
    #[error("group does not act on the graph by automorphisms")]
    NotAnAction,
    #[error("action is not half-arc-transitive ({0})")]
    NotHalfArcTransitive(String),
    #[error("assertion `{name}` failed: {detail}")]
    Assertion { name: &'static str, detail: String },
    #[error(transparent)]
    Hat(#[from] HatError),
    #[error(transparent)]
    Pentagon(#[from] PentagonError),
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub girth: Option<usize>,
    pub group_order: String,
    pub transitivity: TransitivityReport,
    pub orientation: Orientation,
    pub alternating: AltCycleReport,
    pub five_cycles: FiveCycleAnalysis,
    pub consistent: ConsistentCycles,
    pub reachability: ReachabilityReport,
    /// Every 5-cycle is among the consistent cycles.
    pub five_cycles_consistent: bool,
}

fn check(cond: bool, name: &'static str, detail: impl FnOnce() -> String) -> Result<(), ReportError> {
    if cond {
        Ok(())
    } else {
        Err(ReportError::Assertion { name, detail: detail() })
    }
}

/// Action check, transitivity, orientation, alternating cycles, 5-cycles,
/// consistent cycles and R+ classes, with the structural invariants asserted
/// along the way.
pub fn analyze(g: &Graph, group: &PermGroup, seed: Option<(usize, usize)>) -> Result<Analysis, ReportError> {
    if g.regularity() != Some(4) {
        return Err(ReportError::NotTetravalent);
    }
    if !check_action(group, g)? {
        return Err(ReportError::NotAnAction);
    }
    let t = transitivity(group, g)?;
    if !t.half_arc_transitive {
        let why = if !t.vertex_transitive {
            "not vertex-transitive"
        } else if !t.edge_transitive {
            "not edge-transitive"
        } else {
            "arc-transitive"
        };
        return Err(ReportError::NotHalfArcTransitive(why.into()));
    }
    let o = induced_orientation(group, g, seed)?;
    check(o.is_balanced(), "orientation-balanced", || "some vertex is not 2-in/2-out".into())?;
    check(o.is_invariant_under(group), "orientation-invariant", || "a generator moves an arc out of the orientation".into())?;

    let alternating = alternating_cycles(&o)?;
    let five = classify_five_cycles(g, &o)?;
    check(assert_no_type2(&five.records), "no-type-2", || {
        format!("{} five-cycles of type 2", five.incidence.count_of_type(2))
    })?;
    check(five.types_preserved_by(group), "types-preserved", || "a generator changes a 5-cycle's type".into())?;
    if g.girth() == Some(5) {
        let bad = five.records.iter().find(|r| closed_neighbourhood_size(g, &r.cycle) != 15);
        check(bad.is_none(), "closed-neighbourhood-15", || format!("{:?}", bad.map(|r| r.cycle.to_vec())))?;
    }
    check(five.incidence.max_per_three_path() <= 1, "three-path-unique", || {
        format!("a 3-path lies on {} five-cycles", five.incidence.max_per_three_path())
    })?;
    if five.all_directed() {
        check(five.incidence.max_per_two_arc() <= 1, "two-arc-at-most-one", || {
            format!("a 2-arc lies on {} five-cycles", five.incidence.max_per_two_arc())
        })?;
        check(five.incidence.per_edge_range().1 <= 2, "edge-at-most-two", || {
            format!("an edge lies on {} five-cycles", five.incidence.per_edge_range().1)
        })?;
        check(t.vertex_stabilizer_order <= 4, "stabilizer-at-most-four", || {
            format!("vertex stabilizer of order {}", t.vertex_stabilizer_order)
        })?;
    }

    let consistent = consistent_cycles(group, &o, DEFAULT_MAX_GROUP_ENUM)?;
    check(consistent.orbit_count() == 2, "two-consistent-orbits", || {
        format!("{} orbits of consistent cycles", consistent.orbit_count())
    })?;
    let five_cycles_consistent = five.records.iter().all(|r| consistent.contains(&r.cycle));

    let reach = reachability(&o)?;
    check(reach.classes_are_blocks(group), "reachability-blocks", || "R+ classes are not blocks".into())?;

    Ok(Analysis {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        girth: g.girth(),
        group_order: group.order().to_string(),
        transitivity: t,
        orientation: o,
        alternating,
        five_cycles: five,
        consistent,
        reachability: reach,
        five_cycles_consistent,
    })
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        let inc = &self.five_cycles.incidence;
        let (min, max) = inc.per_edge_range();
        let mut orbit_sizes = self.consistent.orbit_sizes.clone();
        orbit_sizes.sort_unstable();
        json!({
            "schema": SCHEMA,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "graph": {
                "order": self.vertex_count,
                "size": self.edge_count,
                "girth": self.girth,
                "regularity": 4,
            },
            "group_order": self.group_order,
            "vertex_transitive": self.transitivity.vertex_transitive,
            "edge_transitive": self.transitivity.edge_transitive,
            "arc_transitive": self.transitivity.arc_transitive,
            "half_arc_transitive": self.transitivity.half_arc_transitive,
            "stabilizer_order": self.transitivity.vertex_stabilizer_order,
            "orientation_seed": [self.orientation.seed().0, self.orientation.seed().1],
            "radius": self.alternating.radius,
            "attachment": self.alternating.attachment,
            "tightly_attached": self.alternating.tightly_attached,
            "alternating_cycle_count": self.alternating.cycles.len(),
            "five_cycle_count": inc.total(),
            "five_cycle_types": {
                "2": inc.count_of_type(2),
                "3": inc.count_of_type(3),
                "4": inc.count_of_type(4),
                "5": inc.count_of_type(5),
            },
            "five_cycles_per_edge": {"min": min, "max": max},
            "five_cycles_consistent": self.five_cycles_consistent,
            "consistent_cycle_lengths": self.consistent.lengths(),
            "consistent_cycle_orbit_sizes": orbit_sizes,
            "alter_perimeter": self.reachability.alter_perimeter,
            "alter_complete": self.reachability.alter_complete,
            "stabilization_depth": self.reachability.stabilization_depth,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{xo, XoParams};

    #[test]
    fn report_is_consistent() {
        let p = XoParams::new(5, 11, 3).unwrap();
        let g = xo(p).unwrap().graph;
        let grp = PermGroup::new(p.half_arc_group_generators().unwrap()).unwrap();
        let a = analyze(&g, &grp, None).unwrap();
        let j = a.to_json();
        assert_eq!(j["schema"], SCHEMA);
        assert_eq!(j["tightly_attached"], j["radius"] == j["attachment"]);
        assert_eq!(j["alter_complete"], j["alter_perimeter"] == 1);
        assert_eq!(j["consistent_cycle_lengths"], json!([5, 10]));
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&a.to_json()).unwrap());
    }

    #[test]
    fn rejects_non_tetravalent() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let rot = crate::perm::Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let grp = PermGroup::new(vec![rot]).unwrap();
        assert!(matches!(analyze(&g, &grp, None), Err(ReportError::NotTetravalent)));
    }
}
