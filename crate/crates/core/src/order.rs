//! Finite quasi orders and posets.
//!
//! Elements are the dense indices `0..size`. The relation is stored twice,
//! as principal up-sets and principal down-sets, so that bound computations
//! reduce to bitset intersections.

use std::sync::Arc;

use thiserror::Error;

use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("not a partial order: {0} and {1} are distinct but mutually below each other")]
    NotPartialOrder(usize, usize),
    #[error("map has {got} images but its domain has {expected} elements")]
    LengthMismatch { expected: usize, got: usize },
    #[error("map is not order preserving: {0} <= {1} but their images are not ordered")]
    NotOrderPreserving(usize, usize),
    #[error("subset lives over {got} elements, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },
}

/// A reflexive, transitive relation on `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiOrder {
    size: usize,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl std::fmt::Debug for QuasiOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(usize, usize)> = self.strict_pairs().collect();
        f.debug_struct("QuasiOrder")
            .field("size", &self.size)
            .field("strict", &pairs)
            .finish()
    }
}

impl QuasiOrder {
    /// Smallest quasi order on `0..size` containing the generator pairs
    /// `(a, b)`, read as `a <= b`.
    pub fn build(size: usize, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut up: Vec<Subset> = (0..size).map(|p| Subset::singleton(size, p)).collect();
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= size {
                    return Err(OrderError::IndexOutOfRange { index, size });
                }
            }
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Ok(Self::from_up_sets(size, up))
    }

    /// Wraps an explicit relation, checking reflexivity and transitivity.
    pub fn from_relation<F>(size: usize, leq: F) -> Result<Self, OrderError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let up: Vec<Subset> = (0..size)
            .map(|p| Subset::from_indices(size, (0..size).filter(|&q| leq(p, q))))
            .collect();
        for p in 0..size {
            if !up[p].contains(p) {
                return Err(OrderError::NotReflexive(p));
            }
            for q in up[p].iter() {
                if !up[q].is_subset(&up[p]) {
                    let r = up[q].difference(&up[p]).first().unwrap();
                    return Err(OrderError::NotTransitive(p, q, r));
                }
            }
        }
        Ok(Self::from_up_sets(size, up))
    }

    fn from_up_sets(size: usize, up: Vec<Subset>) -> Self {
        let mut down: Vec<Subset> = (0..size).map(|_| Subset::empty(size)).collect();
        for (p, row) in up.iter().enumerate() {
            for q in row.iter() {
                down[q].insert(p);
            }
        }
        QuasiOrder { size, up, down }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation(n, |p, q| p <= q).expect("chain is an order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation(n, |p, q| p == q).expect("antichain is an order")
    }

    /// The power set of an `n`-element set under inclusion. Element `a` is
    /// the subset whose bitmask is `a`.
    pub fn powerset(n: usize) -> Self {
        assert!(n < 16, "power set too large");
        Self::from_relation(1 << n, |p, q| p & !q == 0).expect("inclusion is an order")
    }

    /// The diamond lattice M3: bottom 0, atoms 1..=3, top 4.
    pub fn diamond_m3() -> Self {
        Self::build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// The pentagon N5: 0 < 1 < 2 < 4 and 0 < 3 < 4.
    pub fn pentagon_n5() -> Self {
        Self::build(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    /// Two minimal elements 0, 1 both below the two maximal elements 2, 3.
    pub fn bowtie() -> Self {
        Self::build(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    /// Cartesian product with the componentwise order. Element `(a, b)` has
    /// index `a * other.size() + b`.
    pub fn product(&self, other: &QuasiOrder) -> Self {
        let m = other.size;
        Self::from_relation(self.size * m, |p, q| {
            self.leq(p / m, q / m) && other.leq(p % m, q % m)
        })
        .expect("product of orders is an order")
    }

    /// The same carrier with the relation reversed.
    pub fn dual(&self) -> Self {
        QuasiOrder {
            size: self.size,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Relabels elements: element `p` of `self` becomes `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.size);
        let mut inverse = vec![0; self.size];
        for (p, &q) in perm.iter().enumerate() {
            inverse[q] = p;
        }
        Self::from_relation(self.size, |a, b| self.leq(inverse[a], inverse[b]))
            .expect("relabelling preserves order axioms")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    /// `p < q` in the quasi-order sense: `p <= q` and not `q <= p`.
    #[inline]
    pub fn lt(&self, p: usize, q: usize) -> bool {
        self.leq(p, q) && !self.leq(q, p)
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.leq(p, q) || self.leq(q, p)
    }

    /// Pairs `p != q` with `p <= q`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |p| {
            self.up[p].iter().filter(move |&q| q != p).map(move |q| (p, q))
        })
    }

    pub fn check_element(&self, index: usize) -> Result<(), OrderError> {
        if index < self.size {
            Ok(())
        } else {
            Err(OrderError::IndexOutOfRange { index, size: self.size })
        }
    }

    pub fn check_subset(&self, a: &Subset) -> Result<(), OrderError> {
        if a.universe() == self.size {
            Ok(())
        } else {
            Err(OrderError::UniverseMismatch { expected: self.size, got: a.universe() })
        }
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.size)
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.size)
    }

    pub fn is_partial_order(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        (0..self.size).find_map(|p| {
            self.up[p]
                .intersection(&self.down[p])
                .iter()
                .find(|&q| q != p)
                .map(|q| (p, q))
        })
    }

    pub fn require_partial_order(&self) -> Result<(), OrderError> {
        match self.antisymmetry_violation() {
            None => Ok(()),
            Some((p, q)) => Err(OrderError::NotPartialOrder(p, q)),
        }
    }

    /// Antisymmetric quotient. Classes are numbered in order of their
    /// smallest member; the second component maps each element to its class.
    pub fn asym_quotient(&self) -> (QuasiOrder, Vec<usize>) {
        let mut class_map = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for p in 0..self.size {
            if class_map[p] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(p);
            for q in self.up[p].intersection(&self.down[p]).iter() {
                class_map[q] = class;
            }
        }
        let quotient = QuasiOrder::from_relation(reps.len(), |a, b| self.leq(reps[a], reps[b]))
            .expect("quotient of a quasi order is an order");
        (quotient, class_map)
    }

    /// `D_p = {q : q <= p}`.
    pub fn down_set(&self, p: usize) -> &Subset {
        &self.down[p]
    }

    /// `{q : p <= q}`.
    pub fn up_set(&self, p: usize) -> &Subset {
        &self.up[p]
    }

    /// `↑A = {p : a <= p for some a in A}`.
    pub fn upper_closure(&self, a: &Subset) -> Subset {
        let mut out = self.empty_set();
        for x in a.iter() {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn lower_closure(&self, a: &Subset) -> Subset {
        let mut out = self.empty_set();
        for x in a.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn is_upper_set(&self, a: &Subset) -> bool {
        self.upper_closure(a) == *a
    }

    pub fn is_lower_set(&self, a: &Subset) -> bool {
        self.lower_closure(a) == *a
    }

    /// The interval `[p, q] = {r : p <= r <= q}`.
    pub fn interval(&self, p: usize, q: usize) -> Subset {
        self.up[p].intersection(&self.down[q])
    }

    pub fn upper_bounds(&self, a: &Subset) -> Subset {
        let mut out = self.full_set();
        for x in a.iter() {
            out.intersect_with(&self.up[x]);
        }
        out
    }

    pub fn lower_bounds(&self, a: &Subset) -> Subset {
        let mut out = self.full_set();
        for x in a.iter() {
            out.intersect_with(&self.down[x]);
        }
        out
    }

    /// An element of `a` below every element of `a`. Unique in a poset.
    pub fn least_of(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&u| a.is_subset(&self.up[u]))
    }

    pub fn greatest_of(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&u| a.is_subset(&self.down[u]))
    }

    /// Least upper bound of `a`, if one exists. `sup(∅)` is the minimum.
    pub fn sup(&self, a: &Subset) -> Option<usize> {
        self.least_of(&self.upper_bounds(a))
    }

    pub fn inf(&self, a: &Subset) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(a))
    }

    pub fn join(&self, p: usize, q: usize) -> Option<usize> {
        self.least_of(&self.up[p].intersection(&self.up[q]))
    }

    pub fn meet(&self, p: usize, q: usize) -> Option<usize> {
        self.greatest_of(&self.down[p].intersection(&self.down[q]))
    }

    pub fn minimum(&self) -> Option<usize> {
        self.least_of(&self.full_set())
    }

    pub fn maximum(&self) -> Option<usize> {
        self.greatest_of(&self.full_set())
    }

    /// `S⁰`: elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Subset {
        Subset::from_indices(
            self.size,
            (0..self.size).filter(|&p| self.down[p].is_subset(&self.up[p])),
        )
    }

    pub fn maximal_elements(&self) -> Subset {
        Subset::from_indices(
            self.size,
            (0..self.size).filter(|&p| self.up[p].is_subset(&self.down[p])),
        )
    }

    /// `S⁺`, the complement of the minimal elements.
    pub fn positive_part(&self) -> Subset {
        self.minimal_elements().complement()
    }

    /// Two elements are compatible when some element of `S⁺` lies below both.
    pub fn compatible(&self, q: usize, r: usize) -> bool {
        let common = self.down[q].intersection(&self.down[r]);
        common.intersects(&self.positive_part())
    }

    /// Atoms: elements `p` of `S⁺` such that any two elements of `S⁺` below
    /// `p` have a common lower bound in `S⁺`.
    pub fn atoms(&self) -> Subset {
        let positive = self.positive_part();
        let mut atoms = self.empty_set();
        for p in positive.iter() {
            let below = self.down[p].intersection(&positive);
            let splits = below.iter().any(|q| {
                below.iter().any(|r| {
                    !self.down[q]
                        .intersection(&self.down[r])
                        .intersects(&positive)
                })
            });
            if !splits {
                atoms.insert(p);
            }
        }
        atoms
    }

    /// `D` is dense when every element of `S⁺` has some element of
    /// `D ∩ S⁺` below it.
    pub fn is_dense(&self, d: &Subset) -> bool {
        let positive = self.positive_part();
        let d_pos = d.intersection(&positive);
        positive.iter().all(|p| self.down[p].intersects(&d_pos))
    }

    /// Atomic: the atoms are dense.
    pub fn is_atomic(&self) -> bool {
        self.is_dense(&self.atoms())
    }

    pub fn is_atomless(&self) -> bool {
        self.atoms().is_empty()
    }

    /// Nonempty, and every two members have a common upper bound inside.
    pub fn is_directed(&self, a: &Subset) -> bool {
        !a.is_empty()
            && a.iter().all(|p| {
                a.iter()
                    .all(|q| self.up[p].intersection(&self.up[q]).intersects(a))
            })
    }

    /// Dual of [`QuasiOrder::is_directed`].
    pub fn is_filtered(&self, a: &Subset) -> bool {
        !a.is_empty()
            && a.iter().all(|p| {
                a.iter()
                    .all(|q| self.down[p].intersection(&self.down[q]).intersects(a))
            })
    }

    pub fn is_bounded_above(&self, a: &Subset) -> bool {
        !self.upper_bounds(a).is_empty()
    }

    pub fn is_bounded_below(&self, a: &Subset) -> bool {
        !self.lower_bounds(a).is_empty()
    }

    /// Elements listed so that `p < q` implies `p` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&p| (self.down[p].len(), p));
        order
    }

    /// The suborder induced on `a`, with the list of original indices.
    pub fn induced(&self, a: &Subset) -> (QuasiOrder, Vec<usize>) {
        let members = a.to_vec();
        let sub = QuasiOrder::from_relation(members.len(), |i, j| {
            self.leq(members[i], members[j])
        })
        .expect("suborder of a quasi order is a quasi order");
        (sub, members)
    }
}

/// An order-preserving map between two finite quasi orders.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    dom: Arc<QuasiOrder>,
    cod: Arc<QuasiOrder>,
    image: Vec<usize>,
    reflecting: bool,
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.dom == other.dom && self.cod == other.cod
    }
}

/// First pair `p <= q` whose images are not ordered, if any.
pub fn preservation_failure(
    dom: &QuasiOrder,
    cod: &QuasiOrder,
    image: &[usize],
) -> Option<(usize, usize)> {
    dom.strict_pairs()
        .find(|&(p, q)| !cod.leq(image[p], image[q]))
}

/// First pair whose images are ordered although the pair is not.
pub fn reflection_failure(
    dom: &QuasiOrder,
    cod: &QuasiOrder,
    image: &[usize],
) -> Option<(usize, usize)> {
    (0..dom.size()).find_map(|p| {
        (0..dom.size())
            .find(|&q| cod.leq(image[p], image[q]) && !dom.leq(p, q))
            .map(|q| (p, q))
    })
}

impl MonotoneMap {
    pub fn new(
        dom: Arc<QuasiOrder>,
        cod: Arc<QuasiOrder>,
        image: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if image.len() != dom.size() {
            return Err(OrderError::LengthMismatch { expected: dom.size(), got: image.len() });
        }
        for &v in &image {
            cod.check_element(v)?;
        }
        if let Some((p, q)) = preservation_failure(&dom, &cod, &image) {
            return Err(OrderError::NotOrderPreserving(p, q));
        }
        let reflecting = reflection_failure(&dom, &cod, &image).is_none();
        Ok(MonotoneMap { dom, cod, image, reflecting })
    }

    pub fn identity(order: Arc<QuasiOrder>) -> Self {
        let image = (0..order.size()).collect();
        MonotoneMap { dom: order.clone(), cod: order, image, reflecting: true }
    }

    pub fn dom(&self) -> &QuasiOrder {
        &self.dom
    }

    pub fn cod(&self) -> &QuasiOrder {
        &self.cod
    }

    pub fn dom_arc(&self) -> &Arc<QuasiOrder> {
        &self.dom
    }

    pub fn cod_arc(&self) -> &Arc<QuasiOrder> {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.image[p]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_order_reflecting(&self) -> bool {
        self.reflecting
    }

    /// Order preserving and reflecting.
    pub fn is_embedding(&self) -> bool {
        self.reflecting
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.cod.empty_set();
        self.image.iter().all(|&v| {
            let fresh = !seen.contains(v);
            seen.insert(v);
            fresh
        })
    }

    pub fn range(&self) -> Subset {
        Subset::from_indices(self.cod.size(), self.image.iter().copied())
    }

    /// Image of a subset of the domain.
    pub fn image_of(&self, a: &Subset) -> Subset {
        Subset::from_indices(self.cod.size(), a.iter().map(|p| self.image[p]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn build_takes_reflexive_transitive_closure() {
        let c = QuasiOrder::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c, QuasiOrder::chain(3));
        assert!(c.leq(0, 2));

        let a = QuasiOrder::build(2, &[]).unwrap();
        assert_eq!(a.strict_pairs().count(), 0);
        assert!(a.leq(1, 1));

        let d = QuasiOrder::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(d.leq(0, 3));
        assert!(!d.comparable(1, 2));
        assert_eq!(d, QuasiOrder::powerset(2).relabel(&[0, 1, 2, 3]));
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            QuasiOrder::build(2, &[(0, 2)]),
            Err(OrderError::IndexOutOfRange { index: 2, size: 2 })
        );
    }

    #[test]
    fn from_relation_validates_axioms() {
        assert_eq!(
            QuasiOrder::from_relation(2, |p, q| p < q).unwrap_err(),
            OrderError::NotReflexive(0)
        );
        let err = QuasiOrder::from_relation(3, |p, q| p == q || (p, q) == (0, 1) || (p, q) == (1, 2))
            .unwrap_err();
        assert_eq!(err, OrderError::NotTransitive(0, 1, 2));
    }

    #[test]
    fn partial_order_detection() {
        assert!(QuasiOrder::chain(3).is_partial_order());
        assert!(!QuasiOrder::build(2, &[(0, 1), (1, 0)]).unwrap().is_partial_order());
        assert!(QuasiOrder::powerset(2).is_partial_order());
    }

    #[test]
    fn quotient_of_poset_is_identity() {
        let p = QuasiOrder::diamond_m3();
        let (q, class) = p.asym_quotient();
        assert_eq!(q, p);
        assert_eq!(class, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn quotient_collapses_cycles() {
        let two_cycle = QuasiOrder::build(2, &[(0, 1), (1, 0)]).unwrap();
        let (q, class) = two_cycle.asym_quotient();
        assert_eq!(q.size(), 1);
        assert_eq!(class, vec![0, 0]);

        // 0 < {1 ~ 2} < 3
        let o = QuasiOrder::build(4, &[(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        let (q, class) = o.asym_quotient();
        assert_eq!(class, vec![0, 1, 1, 2]);
        assert_eq!(q, QuasiOrder::chain(3));
    }

    #[test]
    fn sup_and_inf() {
        let p2 = QuasiOrder::powerset(2);
        assert_eq!(p2.sup(&set(4, &[1, 2])), Some(3));
        assert_eq!(p2.inf(&set(4, &[1, 2])), Some(0));
        assert_eq!(p2.sup(&set(4, &[])), Some(0));
        assert_eq!(p2.inf(&set(4, &[])), Some(3));

        let m3 = QuasiOrder::diamond_m3();
        assert_eq!(m3.sup(&set(5, &[1, 3])), Some(4));

        let anti = QuasiOrder::antichain(2);
        assert_eq!(anti.sup(&set(2, &[0, 1])), None);
        assert_eq!(anti.sup(&set(2, &[])), None);
    }

    #[test]
    fn minimal_and_positive_parts() {
        let c3 = QuasiOrder::chain(3);
        assert_eq!(c3.minimal_elements().to_vec(), vec![0]);
        assert_eq!(c3.positive_part().to_vec(), vec![1, 2]);
        let anti = QuasiOrder::antichain(3);
        assert_eq!(anti.minimal_elements().len(), 3);
        assert!(anti.positive_part().is_empty());
        assert_eq!(QuasiOrder::diamond_m3().minimal_elements().to_vec(), vec![0]);
    }

    #[test]
    fn atoms_follow_the_splitting_definition() {
        // singletons of P(3)
        assert_eq!(QuasiOrder::powerset(3).atoms().to_vec(), vec![1, 2, 4]);
        // C2 x C2 with index 2a + b: (1,0) = 2, (0,1) = 1
        let sq = QuasiOrder::chain(2).product(&QuasiOrder::chain(2));
        assert_eq!(sq.atoms().to_vec(), vec![1, 2]);
        // every positive element of a chain is unsplittable
        assert_eq!(QuasiOrder::chain(3).atoms().to_vec(), vec![1, 2]);
    }

    #[test]
    fn atomic_and_atomless() {
        assert!(QuasiOrder::powerset(3).is_atomic());
        assert!(QuasiOrder::antichain(3).is_atomless());
        assert!(!QuasiOrder::chain(2).is_atomless());
    }

    #[test]
    fn closures_and_down_sets() {
        let c3 = QuasiOrder::chain(3);
        assert_eq!(c3.down_set(1).to_vec(), vec![0, 1]);
        let m3 = QuasiOrder::diamond_m3();
        assert_eq!(m3.upper_closure(&set(5, &[2])).to_vec(), vec![2, 4]);
        assert!(m3.upper_closure(&set(5, &[])).is_empty());
        assert!(m3.lower_closure(&set(5, &[])).is_empty());
    }

    #[test]
    fn directedness() {
        let c3 = QuasiOrder::chain(3);
        assert!(c3.is_directed(&set(3, &[0, 2])));
        let m3 = QuasiOrder::diamond_m3();
        assert!(!m3.is_directed(&set(5, &[1, 2])));
        assert!(m3.is_directed(&set(5, &[1, 2, 4])));
        assert!(!m3.is_directed(&set(5, &[])));
    }

    #[test]
    fn boundedness() {
        let m3 = QuasiOrder::diamond_m3();
        assert!(m3.is_bounded_above(&set(5, &[1, 2, 3])));
        let bowtie = QuasiOrder::bowtie();
        assert!(!bowtie.is_bounded_above(&set(4, &[2, 3])));
        assert!(!bowtie.is_bounded_below(&set(4, &[0, 1])));
        assert!(bowtie.is_bounded_above(&set(4, &[])));
    }

    #[test]
    fn monotone_map_validation() {
        let c2 = Arc::new(QuasiOrder::chain(2));
        let c3 = Arc::new(QuasiOrder::chain(3));
        let m = MonotoneMap::new(c2.clone(), c3.clone(), vec![0, 2]).unwrap();
        assert!(m.is_embedding());
        assert_eq!(m.range().to_vec(), vec![0, 2]);
        assert_eq!(
            MonotoneMap::new(c2.clone(), c3.clone(), vec![2, 0]).unwrap_err(),
            OrderError::NotOrderPreserving(0, 1)
        );
        let constant = MonotoneMap::new(c2.clone(), c3.clone(), vec![1, 1]).unwrap();
        assert!(!constant.is_embedding());
        assert!(matches!(
            MonotoneMap::new(c2, c3, vec![0]),
            Err(OrderError::LengthMismatch { .. })
        ));
    }

    fn arb_quasi_order() -> impl Strategy<Value = QuasiOrder> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..10)
                .prop_map(move |pairs| QuasiOrder::build(n, &pairs).unwrap())
        })
    }

    fn arb_poset() -> impl Strategy<Value = QuasiOrder> {
        // Generators pointing upward in index order never create cycles.
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..10).prop_map(move |pairs| {
                let pairs: Vec<_> = pairs
                    .into_iter()
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect();
                QuasiOrder::build(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn quotient_map_preserves_and_reflects(q in arb_quasi_order()) {
            let (quot, class) = q.asym_quotient();
            prop_assert!(quot.is_partial_order());
            for p in 0..q.size() {
                for r in 0..q.size() {
                    prop_assert_eq!(q.leq(p, r), quot.leq(class[p], class[r]));
                }
            }
        }

        #[test]
        fn atoms_are_positive_and_minimal_positives_are_atoms(p in arb_poset()) {
            let atoms = p.atoms();
            let positive = p.positive_part();
            prop_assert!(atoms.is_subset(&positive));
            let (sub, members) = p.induced(&positive);
            for i in sub.minimal_elements().iter() {
                prop_assert!(atoms.contains(members[i]));
            }
        }

        #[test]
        fn sup_is_least_upper_bound(p in arb_poset(), mask in 0u64..64) {
            let n = p.size();
            let a = Subset::from_mask(n, mask & ((1u64 << n) - 1));
            let ub = p.upper_bounds(&a);
            match p.sup(&a) {
                Some(s) => {
                    prop_assert!(ub.contains(s));
                    prop_assert!(ub.iter().all(|u| p.leq(s, u)));
                }
                None => {
                    prop_assert!(ub.iter().all(|u| ub.iter().any(|v| !p.leq(u, v))));
                }
            }
        }

        #[test]
        fn closures_are_lower_and_upper_sets(p in arb_quasi_order(), mask in 0u64..64, x in 0usize..6) {
            let n = p.size();
            let a = Subset::from_mask(n, mask & ((1u64 << n) - 1));
            prop_assert!(p.is_lower_set(p.down_set(x % n)));
            let up = p.upper_closure(&a);
            prop_assert!(a.is_subset(&up));
            prop_assert_eq!(p.upper_closure(&up), up);
        }
    }
}
