mod common;

use std::sync::Arc;

use common::*;
use latkit::embedding::{self, EmbeddingError, MapSearch, RangeFilters, DEFAULT_NODE_BUDGET};
use latkit::{enumerate, QuasiOrder};

fn census(p: &QuasiOrder, q: &QuasiOrder, f: RangeFilters) -> Vec<Vec<usize>> {
    embedding::enumerate_embeddings(Arc::new(p.clone()), Arc::new(q.clone()), f, DEFAULT_NODE_BUDGET)
        .unwrap()
        .images()
        .map(<[usize]>::to_vec)
        .collect()
}

#[test]
fn matches_full_enumeration_on_small_pairs() {
    let posets = enumerate::posets_up_to(4);
    let mut pairs = 0;
    for p in &posets {
        for q in &posets {
            if map_count(p.size(), q.size()) > 1_000_000 {
                continue;
            }
            let (rp, rq) = (rel(p), rel(q));
            let want = naive_embeddings(&rp, &rq, |_| true);
            assert_eq!(census(p, q, RangeFilters::NONE), want, "{p:?} -> {q:?}");
            let convex = naive_embeddings(&rp, &rq, |img| is_convex(&rq, &range_mask(rq.len(), img)));
            assert_eq!(census(p, q, RangeFilters::CONVEX), convex);
            pairs += 1;
        }
    }
    assert!(pairs > 400);
}

#[test]
fn shuffled_labels_give_the_same_count() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let (p, q) = (QuasiOrder::pentagon_n5(), QuasiOrder::powerset(3));
    let base = census(&p, &q, RangeFilters::NONE).len();
    for _ in 0..5 {
        let (sp, sq) = (enumerate::shuffle_labels(&p, &mut rng), enumerate::shuffle_labels(&q, &mut rng));
        let got = census(&sp, &sq, RangeFilters::NONE);
        assert_eq!(got.len(), base);
        let (rp, rq) = (rel(&sp), rel(&sq));
        assert!(got.iter().all(|img| is_embedding(&rp, &rq, img)));
    }
}

#[test]
fn monotone_search_matches_brute_force() {
    let (p, q) = (QuasiOrder::diamond_m3(), QuasiOrder::chain(3));
    let (rp, rq) = (rel(&p), rel(&q));
    let want: Vec<Vec<usize>> = all_maps(p.size(), q.size()).filter(|m| is_monotone(&rp, &rq, m)).collect();
    assert_eq!(embedding::enumerate_monotone(&p, &q, DEFAULT_NODE_BUDGET).unwrap(), want);
}

#[test]
fn budget_is_reported() {
    let err = MapSearch::embeddings(&QuasiOrder::powerset(3), &QuasiOrder::powerset(4)).budget(10).run();
    assert!(matches!(err, Err(EmbeddingError::BudgetExceeded { budget: 10 })));
}
