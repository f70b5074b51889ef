//! Searches for small witnesses: instances showing a hypothesis cannot be
//! dropped, or confirming that no finite example of something exists.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::embedding::{self, EmbeddingError};
use crate::enumerate;
use crate::io::{PosetSpec, TopologySpec};
use crate::lattice::{self, LatticeView};
use crate::order::{MonotoneMap, QuasiOrder};
use crate::topology::{self, TopologyError};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub name: &'static str,
    /// Whether a witness is expected to exist.
    pub expect_found: bool,
    pub searched: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn as_expected(&self) -> bool {
        self.found() == self.expect_found
    }
}

/// Nonempty posets of at most `max` elements, smallest first.
fn small_posets(max: usize) -> Vec<QuasiOrder> {
    (1..=max).flat_map(enumerate::posets_up_to_iso).collect()
}

/// A poset that is not a lattice with a convex subset that is not
/// preregular.
pub fn convex_not_preregular(max: usize) -> SearchOutcome {
    let mut searched = 0;
    for p in small_posets(max) {
        if LatticeView::new(p.clone()).is_ok_and(|v| v.is_lattice()) {
            continue;
        }
        for a in p.full_set().subsets() {
            searched += 1;
            if lattice::is_convex(&p, &a) && !lattice::is_preregular(&p, &a) {
                let report = lattice::preregularity(&p, &a);
                return SearchOutcome {
                    name: "convex-not-preregular",
                    expect_found: true,
                    searched,
                    witness: Some(json!({
                        "order": PosetSpec::from_order(&p),
                        "subset": a.to_vec(),
                        "preregularity": report,
                    })),
                };
            }
        }
    }
    SearchOutcome { name: "convex-not-preregular", expect_found: true, searched, witness: None }
}

/// A monotone map that fails to preserve some existing nonempty supremum.
pub fn sup_collapse(max: usize, budget: u64) -> Result<SearchOutcome, EmbeddingError> {
    let mut searched = 0;
    let posets = small_posets(max);
    for p in &posets {
        for q in &posets {
            for img in embedding::enumerate_monotone(p, q, budget)? {
                searched += 1;
                let c = embedding::continuity_of(p, q, &img);
                if !c.preserves_nonempty_sups.holds {
                    return Ok(SearchOutcome {
                        name: "sup-collapse",
                        expect_found: true,
                        searched,
                        witness: Some(json!({
                            "dom": PosetSpec::from_order(p),
                            "cod": PosetSpec::from_order(q),
                            "image": img,
                            "failure": c.preserves_nonempty_sups.witness,
                        })),
                    });
                }
            }
        }
    }
    Ok(SearchOutcome { name: "sup-collapse", expect_found: true, searched, witness: None })
}

/// A monotone, non-reflecting map whose atom image differs from the atoms
/// of its range.
pub fn atom_image_violation(max: usize, budget: u64) -> Result<SearchOutcome, EmbeddingError> {
    let mut searched = 0;
    let posets = small_posets(max);
    for p in &posets {
        let pa = Arc::new(p.clone());
        for q in &posets {
            let qa = Arc::new(q.clone());
            for img in embedding::enumerate_monotone(p, q, budget)? {
                searched += 1;
                let sigma = MonotoneMap::new(pa.clone(), qa.clone(), img).expect("monotone");
                let v = embedding::atom_image_comparison(&sigma);
                if !v.holds {
                    return Ok(SearchOutcome {
                        name: "atom-image-violation",
                        expect_found: true,
                        searched,
                        witness: Some(json!({
                            "dom": PosetSpec::from_order(p),
                            "cod": PosetSpec::from_order(q),
                            "image": sigma.image(),
                            "embedding": sigma.is_embedding(),
                            "comparison": v.witness,
                        })),
                    });
                }
            }
        }
    }
    Ok(SearchOutcome { name: "atom-image-violation", expect_found: true, searched, witness: None })
}

/// A finite topology with a nonempty open meager set. None exists: an open
/// nowhere dense set `U` satisfies `U ⊆ int(cl U) = ∅`.
pub fn non_baire_topology(max_points: usize) -> Result<SearchOutcome, TopologyError> {
    let mut searched = 0;
    for n in 0..=max_points {
        for t in topology::enumerate_topologies(n)? {
            searched += 1;
            let u = t.largest_open_meager();
            if !u.is_empty() || !t.is_baire() {
                return Ok(SearchOutcome {
                    name: "non-baire-topology",
                    expect_found: false,
                    searched,
                    witness: Some(json!({
                        "topology": TopologySpec::from_topology(&t),
                        "largest_open_meager": u.to_vec(),
                    })),
                });
            }
        }
    }
    Ok(SearchOutcome { name: "non-baire-topology", expect_found: false, searched, witness: None })
}

/// An embedding whose image of an unbounded subset is bounded.
pub fn unboundedness_lost(max: usize, budget: u64) -> Result<SearchOutcome, EmbeddingError> {
    let mut searched = 0;
    let posets = small_posets(max);
    for p in &posets {
        let pa = Arc::new(p.clone());
        for q in &posets {
            let census = embedding::enumerate_embeddings(
                pa.clone(),
                Arc::new(q.clone()),
                embedding::RangeFilters::NONE,
                budget,
            )?;
            for sigma in census.to_maps() {
                searched += 1;
                let r = embedding::boundedness_preservation(&sigma);
                if !r.unbounded_to_unbounded.holds {
                    return Ok(SearchOutcome {
                        name: "unboundedness-lost",
                        expect_found: true,
                        searched,
                        witness: Some(json!({
                            "dom": PosetSpec::from_order(p),
                            "cod": PosetSpec::from_order(q),
                            "image": sigma.image(),
                            "subset": r.unbounded_to_unbounded.witness,
                        })),
                    });
                }
            }
        }
    }
    Ok(SearchOutcome { name: "unboundedness-lost", expect_found: true, searched, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = embedding::DEFAULT_NODE_BUDGET;

    #[test]
    fn convex_subset_of_non_lattice() {
        let r = convex_not_preregular(5);
        assert!(r.as_expected());
        let w = r.witness.unwrap();
        let order: PosetSpec = serde_json::from_value(w["order"].clone()).unwrap();
        let o = order.build().unwrap();
        assert!(!LatticeView::new(o).unwrap().is_lattice());
    }

    #[test]
    fn first_sup_collapse_is_on_three_elements() {
        let r = sup_collapse(4, B).unwrap();
        let w = r.witness.unwrap();
        let dom: PosetSpec = serde_json::from_value(w["dom"].clone()).unwrap();
        assert_eq!(dom.build().unwrap().size(), 3);
    }

    #[test]
    fn searches_behave() {
        assert!(atom_image_violation(3, B).unwrap().as_expected());
        assert!(non_baire_topology(4).unwrap().as_expected());
        assert!(unboundedness_lost(3, B).unwrap().as_expected());
    }
}
