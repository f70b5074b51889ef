//! JSON formats for orders, maps, monoids and topologies.
//!
//! Posets are `{"size": n, "pairs": [[a, b], ...]}` with the pairs taken as
//! generators of the order. A few named shapes are accepted as shorthand:
//! `{"powerset": n}`, `{"chain": n}`, `{"antichain": n}` and
//! `{"chain_product": {"k": k, "dims": d}}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError};
use crate::order::{MonotoneMap, OrderError, QuasiOrder};
use crate::product::ChainProduct;
use crate::subset::Subset;
use crate::topology::{FiniteTopology, TopologyError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainProductSpec {
    pub k: usize,
    pub dims: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PosetSpec {
    Pairs { size: usize, pairs: Vec<(usize, usize)> },
    Powerset { powerset: usize },
    Chain { chain: usize },
    Antichain { antichain: usize },
    ChainProduct { chain_product: ChainProductSpec },
}

const NAMED_LIMIT: usize = 1 << 12;

impl PosetSpec {
    pub fn build(&self) -> Result<QuasiOrder, IoError> {
        let too_big = |n: usize| {
            if n > NAMED_LIMIT {
                Err(IoError::Invalid(format!("{n} elements is too large")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            PosetSpec::Pairs { size, pairs } => QuasiOrder::build(*size, pairs)?,
            PosetSpec::Powerset { powerset } => {
                if *powerset > 12 {
                    return Err(IoError::Invalid("power sets are limited to 12 points".into()));
                }
                QuasiOrder::powerset(*powerset)
            }
            PosetSpec::Chain { chain } => {
                too_big(*chain)?;
                QuasiOrder::chain(*chain)
            }
            PosetSpec::Antichain { antichain } => {
                too_big(*antichain)?;
                QuasiOrder::antichain(*antichain)
            }
            PosetSpec::ChainProduct { chain_product: c } => {
                let size = (c.k as u128).checked_pow(c.dims as u32).unwrap_or(u128::MAX);
                if c.k == 0 || size > NAMED_LIMIT as u128 {
                    return Err(IoError::Invalid("chain product must be nonempty and small".into()));
                }
                ChainProduct::new(c.k, c.dims).order()
            }
        })
    }

    /// The chain-product shape, if this spec names one.
    pub fn chain_product(&self) -> Option<ChainProduct> {
        match self {
            PosetSpec::ChainProduct { chain_product: c } => Some(ChainProduct::new(c.k, c.dims)),
            PosetSpec::Chain { chain } => Some(ChainProduct::new(*chain, 1)),
            _ => None,
        }
    }

    /// Strict pairs of the order, which regenerate it exactly.
    pub fn from_order(order: &QuasiOrder) -> Self {
        PosetSpec::Pairs { size: order.size(), pairs: order.strict_pairs().collect() }
    }
}

pub fn parse_poset(text: &str) -> Result<QuasiOrder, IoError> {
    serde_json::from_str::<PosetSpec>(text)?.build()
}

pub fn poset_to_json(order: &QuasiOrder) -> String {
    serde_json::to_string(&PosetSpec::from_order(order)).expect("poset serializes")
}

/// `{"dom": poset, "cod": poset, "image": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapSpec {
    pub dom: PosetSpec,
    pub cod: PosetSpec,
    pub image: Vec<usize>,
}

impl MapSpec {
    pub fn build(&self) -> Result<MonotoneMap, IoError> {
        let dom = Arc::new(self.dom.build()?);
        let cod = Arc::new(self.cod.build()?);
        Ok(MonotoneMap::new(dom, cod, self.image.clone())?)
    }
}

/// `{"size": n, "table": [[...]], "identity": e}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonoidSpec {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl MonoidSpec {
    pub fn build(&self) -> Result<FiniteMonoid, IoError> {
        if self.table.len() != self.size {
            return Err(IoError::Invalid(format!(
                "table has {} rows for a monoid of size {}",
                self.table.len(),
                self.size
            )));
        }
        Ok(FiniteMonoid::new(self.table.clone(), self.identity)?)
    }

    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidSpec { size: m.size(), table: m.table(), identity: m.identity() }
    }
}

/// `{"points": n, "opens": [[...], ...]}`; the opens generate the topology.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TopologySpec {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

impl TopologySpec {
    pub fn build(&self) -> Result<FiniteTopology, IoError> {
        Ok(FiniteTopology::from_generators(self.points, &self.opens)?)
    }

    pub fn from_topology(t: &FiniteTopology) -> Self {
        TopologySpec { points: t.points(), opens: t.opens().iter().map(Subset::to_vec).collect() }
    }
}

/// Any input the command line accepts, tagged by `"kind"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    Poset {
        #[serde(flatten)]
        poset: PosetSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subset: Option<Vec<usize>>,
    },
    Map(MapSpec),
    Monoid(MonoidSpec),
    Topology(TopologySpec),
}

pub fn parse_structure(text: &str) -> Result<Structure, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Sorted index array for a subset of `universe`, rejecting out-of-range
/// indices.
pub fn subset_from_indices(universe: usize, indices: &[usize]) -> Result<Subset, IoError> {
    Subset::try_from_indices(universe, indices.iter().copied())
        .map_err(|i| OrderError::IndexOutOfRange { index: i, size: universe }.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        for o in [QuasiOrder::pentagon_n5(), QuasiOrder::powerset(3), QuasiOrder::antichain(2)] {
            assert_eq!(parse_poset(&poset_to_json(&o)).unwrap(), o);
        }
    }

    #[test]
    fn pairs_are_generators() {
        let o = parse_poset(r#"{"size": 3, "pairs": [[0, 1], [1, 2]]}"#).unwrap();
        assert!(o.leq(0, 2));
    }

    #[test]
    fn named_shapes() {
        assert_eq!(parse_poset(r#"{"powerset": 2}"#).unwrap(), QuasiOrder::powerset(2));
        assert_eq!(parse_poset(r#"{"chain": 3}"#).unwrap(), QuasiOrder::chain(3));
        let c = parse_poset(r#"{"chain_product": {"k": 2, "dims": 2}}"#).unwrap();
        assert_eq!(c, QuasiOrder::powerset(2));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_poset("{"), Err(IoError::Json(_))));
        assert!(matches!(
            parse_poset(r#"{"size": 2, "pairs": [[0, 5]]}"#),
            Err(IoError::Order(_))
        ));
    }

    #[test]
    fn tagged_structures() {
        let s = parse_structure(
            r#"{"kind": "map", "dom": {"powerset": 2}, "cod": {"powerset": 3}, "image": [0, 1, 2, 7]}"#,
        )
        .unwrap();
        let Structure::Map(m) = s else { panic!() };
        assert!(m.build().unwrap().is_embedding());
        let s = parse_structure(r#"{"kind": "poset", "chain": 3, "subset": [0, 2]}"#).unwrap();
        assert!(matches!(s, Structure::Poset { subset: Some(_), .. }));
        let t = parse_structure(r#"{"kind": "topology", "points": 2, "opens": [[1]]}"#).unwrap();
        let Structure::Topology(t) = t else { panic!() };
        assert_eq!(t.build().unwrap(), FiniteTopology::sierpinski());
    }

    #[test]
    fn monoid_round_trip() {
        let m = FiniteMonoid::cyclic(3);
        let spec = MonoidSpec::from_monoid(&m);
        assert_eq!(spec.build().unwrap(), m);
    }
}
