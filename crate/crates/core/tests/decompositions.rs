mod common;

use std::sync::Arc;

use common::*;
use latkit::embedding::{self, RangeFilters, DEFAULT_NODE_BUDGET};
use latkit::product::ChainProduct;
use latkit::{MonotoneMap, QuasiOrder};

#[test]
fn powerset_round_trip() {
    for (x, y) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
        let (p, q) = (Arc::new(QuasiOrder::powerset(x)), Arc::new(QuasiOrder::powerset(y)));
        let census = embedding::enumerate_embeddings(p.clone(), q.clone(), RangeFilters::CONVEX, DEFAULT_NODE_BUDGET)
            .unwrap();
        for sigma in census.to_maps() {
            let d = embedding::powerset_decompose(&sigma).unwrap();
            assert_eq!(d.image(), sigma.image());
            for a in 0..1usize << x {
                let by_hand = d.b | (0..x).filter(|i| a >> i & 1 == 1).map(|i| 1 << d.h[i]).sum::<usize>();
                assert_eq!(by_hand, sigma.apply(a));
            }
        }
    }
}

#[test]
fn non_convex_embedding_has_no_powerset_form() {
    let p = Arc::new(QuasiOrder::powerset(2));
    let q = Arc::new(QuasiOrder::powerset(3));
    let sigma = MonotoneMap::new(p, q, vec![0, 1, 2, 7]).unwrap();
    assert!(embedding::powerset_decompose(&sigma).is_err());
}

#[test]
fn chainprod_round_trip() {
    let (dom, cod) = (ChainProduct::new(2, 2), ChainProduct::new(3, 3));
    let (rp, rq) = (chain_product_rel(2, 2), chain_product_rel(3, 3));
    let maps = dfs_embeddings(&rp, &rq, |img| is_convex(&rq, &range_mask(rq.len(), img)));
    assert!(!maps.is_empty());
    for img in maps {
        let d = embedding::chainprod_decompose(&dom, &cod, &img).unwrap();
        assert_eq!(d.image(&dom, &cod), img);
    }
}
