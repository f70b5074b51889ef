//! Posets and lattices up to isomorphism, and random lattices drawn from
//! those lists.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lattice::LatticeView;
use crate::order::QuasiOrder;

/// Largest size accepted by the isomorphism-class enumerators.
pub const POSET_LIMIT: usize = 7;

/// Isomorphism invariant: the largest upper-triangle bit pattern over all
/// labellings by linear extensions, with the labelling that achieves it.
pub fn canonical_key(order: &QuasiOrder) -> (u64, Vec<usize>) {
    let n = order.size();
    assert!(n <= 11, "canonical keys use at most 64 bits");
    let mut best = (0u64, Vec::new());
    let mut seq = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    fn go(
        order: &QuasiOrder,
        seq: &mut Vec<usize>,
        placed: &mut Vec<bool>,
        key: u64,
        best: &mut (u64, Vec<usize>),
    ) {
        let n = order.size();
        if seq.len() == n {
            if best.1.is_empty() || key > best.0 {
                *best = (key, seq.clone());
            }
            return;
        }
        for p in 0..n {
            if placed[p] || order.down_set(p).iter().any(|q| q != p && !placed[q]) {
                continue;
            }
            // bits for pairs (earlier, p), most significant first
            let mut k = key;
            for &q in seq.iter() {
                k = k << 1 | order.leq(q, p) as u64;
            }
            seq.push(p);
            placed[p] = true;
            go(order, seq, placed, k, best);
            placed[p] = false;
            seq.pop();
        }
    }
    go(order, &mut seq, &mut placed, 0, &mut best);
    let mut perm = vec![0; n];
    for (label, &p) in best.1.iter().enumerate() {
        perm[p] = label;
    }
    (best.0, perm)
}

/// The canonical representative of the isomorphism class of `order`.
/// Labels follow a linear extension, so `p < q` implies `p < q` as indices.
pub fn canonical_form(order: &QuasiOrder) -> QuasiOrder {
    let (_, perm) = canonical_key(order);
    order.relabel(&perm)
}

pub fn isomorphic(a: &QuasiOrder, b: &QuasiOrder) -> bool {
    a.size() == b.size() && canonical_key(a).0 == canonical_key(b).0
}

/// One representative per isomorphism class of posets with exactly `n`
/// elements, in canonical form, sorted by canonical key.
/// Counts for `n` = 0..=7 are 1, 1, 2, 5, 16, 63, 318, 2045.
pub fn posets_up_to_iso(n: usize) -> Vec<QuasiOrder> {
    assert!(n <= POSET_LIMIT, "poset enumeration is limited to {POSET_LIMIT} elements");
    let mut level: BTreeMap<u64, QuasiOrder> = BTreeMap::new();
    level.insert(0, QuasiOrder::antichain(0));
    for m in 0..n {
        let mut next = BTreeMap::new();
        for base in level.values() {
            // new maximal element m on top of any down-closed subset
            for ideal in base.full_set().subsets().filter(|s| base.is_lower_set(s)) {
                let grown = QuasiOrder::from_relation(m + 1, |p, q| {
                    if q == m {
                        p == m || ideal.contains(p)
                    } else {
                        p != m && base.leq(p, q)
                    }
                })
                .expect("adding a maximal element keeps a partial order");
                let (key, perm) = canonical_key(&grown);
                next.entry(key).or_insert_with(|| grown.relabel(&perm));
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Every poset with at most `max` elements, including the empty one.
pub fn posets_up_to(max: usize) -> Vec<QuasiOrder> {
    (0..=max).flat_map(posets_up_to_iso).collect()
}

/// Lattices with exactly `n` elements up to isomorphism.
/// Counts for `n` = 1..=7 are 1, 1, 1, 2, 5, 15, 53.
pub fn lattices_up_to_iso(n: usize) -> Vec<QuasiOrder> {
    posets_up_to_iso(n)
        .into_iter()
        .filter(|o| n > 0 && LatticeView::new(o.clone()).is_ok_and(|v| v.is_lattice()))
        .collect()
}

/// All nonempty lattices with at most `max` elements.
pub fn lattices_up_to(max: usize) -> Vec<QuasiOrder> {
    (1..=max).flat_map(lattices_up_to_iso).collect()
}

/// A random relabelling of `order`.
pub fn shuffle_labels<R: Rng + ?Sized>(order: &QuasiOrder, rng: &mut R) -> QuasiOrder {
    let mut perm: Vec<usize> = (0..order.size()).collect();
    perm.shuffle(rng);
    order.relabel(&perm)
}

/// A lattice of exactly `n` elements: a uniformly chosen isomorphism class
/// with randomly shuffled labels.
pub fn random_lattice<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QuasiOrder {
    random_member(&lattices_up_to_iso(n), rng)
}

/// A uniformly chosen entry of `classes` with shuffled labels.
pub fn random_member<R: Rng + ?Sized>(classes: &[QuasiOrder], rng: &mut R) -> QuasiOrder {
    let pick = &classes[rng.random_range(0..classes.len())];
    shuffle_labels(pick, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| lattices_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        assert_eq!(lattices_up_to(6).len(), 25);
    }

    #[test]
    fn canonical_form_is_label_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for o in [QuasiOrder::pentagon_n5(), QuasiOrder::diamond_m3(), QuasiOrder::powerset(3)] {
            let c = canonical_form(&o);
            for _ in 0..5 {
                assert_eq!(canonical_form(&shuffle_labels(&o, &mut rng)), c);
            }
        }
        assert!(!isomorphic(&QuasiOrder::pentagon_n5(), &QuasiOrder::diamond_m3()));
    }

    #[test]
    fn random_lattices_are_lattices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let l = random_lattice(6, &mut rng);
            assert!(LatticeView::new(l).unwrap().is_lattice());
        }
    }
}
