use serde::{Deserialize, Serialize};

use super::{gadget_ell, predicted_td, predicted_vc, GadgetGraph};

/// JSON metadata written next to an exported `H(φ, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSidecar {
    pub k: usize,
    pub p: usize,
    pub gamma: usize,
    pub ell: usize,
    pub n: usize,
    pub m: usize,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub duplicate_clauses: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_star: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_vc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_td: Option<usize>,
    /// Exact rational, e.g. `"9999/1000"`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gap_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub satisfiable_td: Option<usize>,
    /// The satisfiable value without the trailing `+ 1`, kept for comparison.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub satisfiable_td_without_offset: Option<usize>,
}

impl InstanceSidecar {
    /// Sidecar for a gadget built by `build_h_phi`; `None` for other gadgets.
    pub fn for_h_phi(gadget: &GadgetGraph, m_star: Option<usize>) -> Option<Self> {
        let cvg = gadget.clause_variable.as_ref()?;
        let f = &cvg.formula;
        let p = cvg.params.p;
        debug_assert_eq!(gadget.ell, gadget_ell(f, p));
        Some(InstanceSidecar {
            k: cvg.params.k,
            p,
            gamma: cvg.params.gamma,
            ell: gadget.ell,
            n: f.num_variables(),
            m: f.num_clauses(),
            num_vertices: gadget.graph.num_vertices(),
            num_edges: gadget.graph.num_edges(),
            duplicate_clauses: f.duplicate_clause_count(),
            m_star,
            predicted_vc: m_star.map(|s| predicted_vc(f, p, s)),
            predicted_td: m_star.map(|s| predicted_td(f, p, s)),
            threshold_k: None,
            gap_factor: None,
            satisfiable_td: None,
            satisfiable_td_without_offset: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar fields serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::CnfFormula;
    use crate::reduction::{build_gadget, build_h_phi};
    use crate::graph::{LabeledGraph, Tripartition, VertexSet};

    #[test]
    fn fields_and_round_trip() {
        let f = CnfFormula::from_signed(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let h = build_h_phi(&f, 1).unwrap();
        let s = InstanceSidecar::for_h_phi(&h, Some(2)).unwrap();
        assert_eq!((s.k, s.p, s.gamma, s.ell, s.n, s.m), (2, 1, 2, 10, 2, 2));
        assert_eq!((s.predicted_vc, s.predicted_td), (Some(8), Some(19)));
        let json = s.to_json();
        assert!(!json.contains("threshold_k"));
        assert_eq!(serde_json::from_str::<InstanceSidecar>(&json).unwrap(), s);

        let bare = InstanceSidecar::for_h_phi(&h, None).unwrap();
        assert_eq!(bare.predicted_td, None);
    }

    #[test]
    fn plain_gadget_has_no_sidecar() {
        let tri = Tripartition::new(VertexSet::from([0]), VertexSet::from([1]), VertexSet::from([2]));
        let h = build_gadget(&LabeledGraph::path(3), &tri, 1).unwrap();
        assert!(InstanceSidecar::for_h_phi(&h, None).is_none());
    }
}
