//! Commutative monoids, their associated quasi orders and group completions.
//!
//! Two carriers are supported: finite monoids given by a Cayley table, and
//! the intensional vector monoids `ℕ^I` / `ℤ^I` under coordinatewise
//! addition, which stand in for the infinite cancellative case.

use std::collections::BTreeMap;
use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::LatticeView;
use crate::order::QuasiOrder;
use crate::report::Verdict;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("a monoid needs at least one element")]
    Empty,
    #[error("Cayley table row {row} has {got} entries, expected {expected}")]
    RaggedTable { row: usize, expected: usize, got: usize },
    #[error("table value {value} is outside the carrier of size {size}")]
    ValueOutOfRange { value: usize, size: usize },
    #[error("{0} is not a two-sided identity")]
    NotIdentity(usize),
    #[error("operation is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("operation is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("monoid is not cancellative: {0}·{1} = {0}·{2} or {1}·{0} = {2}·{0}")]
    NotCancellative(usize, usize, usize),
    #[error("group completion check failed: {0}")]
    CompletionFailed(String),
}

/// A finite monoid given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
    identity: usize,
}

impl FiniteMonoid {
    /// Validates the table: shape, range, identity and associativity.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, MonoidError> {
        let size = table.len();
        if size == 0 {
            return Err(MonoidError::Empty);
        }
        let mut flat = Vec::with_capacity(size * size);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(MonoidError::RaggedTable { row, expected: size, got: entries.len() });
            }
            for &value in entries {
                if value >= size {
                    return Err(MonoidError::ValueOutOfRange { value, size });
                }
            }
            flat.extend_from_slice(entries);
        }
        if identity >= size {
            return Err(MonoidError::ValueOutOfRange { value: identity, size });
        }
        let m = FiniteMonoid { size, table: flat, identity };
        if (0..size).any(|a| m.op(identity, a) != a || m.op(a, identity) != a) {
            return Err(MonoidError::NotIdentity(identity));
        }
        if let Some((a, b, c)) = m.associativity_violation() {
            return Err(MonoidError::NotAssociative(a, b, c));
        }
        Ok(m)
    }

    pub fn from_fn(size: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, MonoidError> {
        let table = (0..size).map(|a| (0..size).map(|b| op(a, b)).collect()).collect();
        Self::new(table, identity)
    }

    /// The cyclic group `ℤ/n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// `{0, ..., n-1}` under `max`.
    pub fn max_semilattice(n: usize) -> Self {
        Self::from_fn(n, 0, usize::max).expect("max is a monoid")
    }

    /// `{0, ..., cap}` under `min(a + b, cap)`.
    pub fn truncated_sum(cap: usize) -> Self {
        Self::from_fn(cap + 1, 0, |a, b| (a + b).min(cap)).expect("truncated addition")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn commutativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.size;
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.op(a, b) != self.op(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    /// `(a, b, c)` with `b != c` and `a·b = a·c` or `b·a = c·a`.
    pub fn cancellation_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    if self.op(a, b) == self.op(a, c) || self.op(b, a) == self.op(c, a) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellation_violation().is_none()
    }

    /// Elements with a two-sided inverse.
    pub fn invertibles(&self) -> Subset {
        let n = self.size;
        Subset::from_indices(
            n,
            (0..n).filter(|&a| {
                (0..n).any(|b| self.op(a, b) == self.identity && self.op(b, a) == self.identity)
            }),
        )
    }

    /// All `c` with `c·b = a`.
    pub fn quotient_solutions(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.size).filter(|&c| self.op(c, b) == a).collect()
    }

    /// `a·b⁻¹`: the unique `c` with `c·b = a`. Absent when there is no
    /// solution or more than one.
    pub fn quotient(&self, a: usize, b: usize) -> Option<usize> {
        match self.quotient_solutions(a, b).as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// `x <= y` iff `x·a = y` for some `a`.
    pub fn associated_order(&self) -> QuasiOrder {
        let n = self.size;
        QuasiOrder::from_relation(n, |x, y| (0..n).any(|a| self.op(x, a) == y))
            .expect("the associated relation of a monoid is a quasi order")
    }

    pub fn classify(&self) -> MonoidClass {
        let order = self.associated_order();
        let poset = order.is_partial_order();
        let (semilattice, lattice) = if poset {
            let view = LatticeView::new(order).expect("checked partial order");
            let c = crate::lattice::classify_view(&view);
            (c.join_semilattice, c.lattice)
        } else {
            (false, false)
        };
        MonoidClass {
            commutative: self.is_commutative(),
            poset_monoid: poset,
            semilattice_monoid: semilattice,
            lattice_monoid: lattice,
            cancellative: self.is_cancellative(),
            invertibles: self.invertibles().to_vec(),
        }
    }

    /// `a - b ∈ S` whenever `a, b ∈ S` and the difference exists uniquely.
    pub fn closed_under_subtraction(&self, s: &Subset) -> Verdict {
        Verdict::from_witness(s.iter().find_map(|a| {
            s.iter().find_map(|b| {
                let d = self.quotient(a, b)?;
                (!s.contains(d)).then(|| json!({"a": a, "b": b, "difference": d}))
            })
        }))
    }

    /// Builds the group of classes of `M × N` with `N = (M ∖ M⁻) ∪ {0}`,
    /// where `(a, b) ~ (ā, b̄)` iff `a + r = ā + r̄` and `b + r = b̄ + r̄` for
    /// some `r, r̄ ∈ N`. Every conclusion about the result is re-verified.
    pub fn group_completion(&self) -> Result<GroupCompletion, MonoidError> {
        if let Some((a, b)) = self.commutativity_violation() {
            return Err(MonoidError::NotCommutative(a, b));
        }
        if let Some((a, b, c)) = self.cancellation_violation() {
            return Err(MonoidError::NotCancellative(a, b, c));
        }
        let n = self.size;
        let zero = self.identity;
        let units = self.invertibles();
        let mut n_set = units.complement();
        n_set.insert(zero);
        let nn = n_set.to_vec();

        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| nn.iter().map(move |&b| (a, b))).collect();
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let related = |(a, b): (usize, usize), (x, y): (usize, usize)| {
            nn.iter().any(|&r| {
                nn.iter()
                    .any(|&rb| self.op(a, r) == self.op(x, rb) && self.op(b, r) == self.op(y, rb))
            })
        };

        let mut parent: Vec<usize> = (0..pairs.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut relation_transitive = true;
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if related(pairs[i], pairs[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    // keep the smaller index as root so classes are labelled
                    // by their lexicographically least pair
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let roots: Vec<usize> = (0..pairs.len()).map(|i| find(&mut parent, i)).collect();
        // the relation itself must already be an equivalence
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                if roots[i] == roots[j] && !related(pairs[i], pairs[j]) {
                    relation_transitive = false;
                }
            }
        }
        if !relation_transitive {
            return Err(MonoidError::CompletionFailed("relation is not transitive".into()));
        }

        let mut reps: Vec<usize> = roots.clone();
        reps.sort_unstable();
        reps.dedup();
        let class_of_root: BTreeMap<usize, usize> =
            reps.iter().enumerate().map(|(c, &r)| (r, c)).collect();
        let class_of_pair: Vec<usize> = roots.iter().map(|r| class_of_root[r]).collect();
        let k = reps.len();
        let class = |a: usize, b: usize| class_of_pair[index[&(a, b)]];

        let mut table = vec![usize::MAX; k * k];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                let bd = self.op(b, d);
                if !n_set.contains(bd) {
                    return Err(MonoidError::CompletionFailed(format!(
                        "second components {b} and {d} sum outside N"
                    )));
                }
                let sum = class(self.op(a, c), bd);
                let slot = &mut table[class_of_pair[i] * k + class_of_pair[j]];
                if *slot != usize::MAX && *slot != sum {
                    return Err(MonoidError::CompletionFailed(
                        "relation is not a congruence".into(),
                    ));
                }
                *slot = sum;
            }
        }
        let embedding: Vec<usize> = (0..n).map(|a| class(a, zero)).collect();
        let completion = GroupCompletion {
            representatives: reps.iter().map(|&r| pairs[r]).collect(),
            table,
            zero: class(zero, zero),
            embedding,
        };
        completion.verify(self)?;
        Ok(completion)
    }
}

/// Structural flags of a monoid and its associated quasi order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidClass {
    pub commutative: bool,
    pub poset_monoid: bool,
    pub semilattice_monoid: bool,
    pub lattice_monoid: bool,
    pub cancellative: bool,
    pub invertibles: Vec<usize>,
}

/// The quotient of pairs produced by [`FiniteMonoid::group_completion`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCompletion {
    representatives: Vec<(usize, usize)>,
    table: Vec<usize>,
    zero: usize,
    embedding: Vec<usize>,
}

impl GroupCompletion {
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    /// The lexicographically least pair `(a, b)` in each class.
    pub fn representatives(&self) -> &[(usize, usize)] {
        &self.representatives
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size() + y]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn neg(&self, x: usize) -> Option<usize> {
        (0..self.size()).find(|&y| self.add(x, y) == self.zero)
    }

    /// `a ↦ [a, 0]`.
    pub fn embed(&self, a: usize) -> usize {
        self.embedding[a]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn is_embedding_bijective(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for &c in &self.embedding {
            seen[c] = true;
        }
        self.embedding.len() == self.size() && seen.into_iter().all(|s| s)
    }

    fn verify(&self, m: &FiniteMonoid) -> Result<(), MonoidError> {
        let k = self.size();
        let fail = |msg: &str| Err(MonoidError::CompletionFailed(msg.into()));
        for x in 0..k {
            if self.add(x, self.zero) != x {
                return fail("zero class is not an identity");
            }
            if self.neg(x).is_none() {
                return fail("a class has no inverse");
            }
            for y in 0..k {
                if self.add(x, y) != self.add(y, x) {
                    return fail("addition is not commutative");
                }
                for z in 0..k {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail("addition is not associative");
                    }
                }
            }
        }
        let n = m.size();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.embed(a) == self.embed(b) {
                    return fail("embedding is not injective");
                }
                if self.embed(m.op(a, b)) != self.add(self.embed(a), self.embed(b)) {
                    return fail("embedding is not additive");
                }
            }
        }
        Ok(())
    }
}

/// Every commutative monoid on `0..n` with identity `0`, one per Cayley
/// table. Intended for `n <= 4`.
pub fn commutative_monoids(n: usize) -> Vec<FiniteMonoid> {
    assert!((1..=4).contains(&n), "exhaustive monoid tables only up to 4 elements");
    let slots: Vec<(usize, usize)> =
        (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let total = n.pow(slots.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut table = vec![vec![0; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            row[0] = i;
        }
        table[0] = (0..n).collect();
        let mut c = code;
        for &(a, b) in &slots {
            table[a][b] = c % n;
            table[b][a] = c % n;
            c /= n;
        }
        if let Ok(m) = FiniteMonoid::new(table, 0) {
            out.push(m);
        }
    }
    out
}

/// `ℕ^I` (or `ℤ^I` when `signed`) under coordinatewise addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorMonoid {
    dims: usize,
    signed: bool,
}

pub type Vector = Vec<i64>;

impl VectorMonoid {
    pub fn naturals(dims: usize) -> Self {
        VectorMonoid { dims, signed: false }
    }

    pub fn integers(dims: usize) -> Self {
        VectorMonoid { dims, signed: true }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dims && (self.signed || x.iter().all(|&v| v >= 0))
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dims]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vector {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    /// The unique `c` with `c + y = x`, if it lies in the carrier.
    pub fn sub(&self, x: &[i64], y: &[i64]) -> Option<Vector> {
        let d: Vector = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.contains(&d).then_some(d)
    }

    /// The associated order: `x <= y` iff `y - x` exists.
    pub fn leq(&self, x: &[i64], y: &[i64]) -> bool {
        self.signed || x.iter().zip(y).all(|(a, b)| a <= b)
    }

    /// Coordinatewise maximum; in `ℤ^I` the associated order is the complete
    /// quasi order, so there is no join.
    pub fn join(&self, x: &[i64], y: &[i64]) -> Option<Vector> {
        (!self.signed).then(|| x.iter().zip(y).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, x: &[i64], y: &[i64]) -> Option<Vector> {
        (!self.signed).then(|| x.iter().zip(y).map(|(a, b)| *a.min(b)).collect())
    }

    /// Every vector with entries in `0..=bound`.
    pub fn box_elements(&self, bound: i64) -> Vec<Vector> {
        let side = (bound + 1) as usize;
        let count = side.pow(self.dims as u32);
        (0..count)
            .map(|mut c| {
                (0..self.dims)
                    .map(|_| {
                        let v = (c % side) as i64;
                        c /= side;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Classification read off the box `[0, bound]^I`: the associated
    /// relation is computed literally (a witness `a` for `x + a = y` must be
    /// `y - x`, which lies in the box when `y` does).
    pub fn classify_on_box(&self, bound: i64) -> VectorClass {
        assert!(!self.signed, "box classification is for ℕ^I");
        let elems = self.box_elements(bound);
        let idx = |v: &Vector| elems.iter().position(|e| e == v);
        let order = QuasiOrder::from_relation(elems.len(), |p, q| {
            elems.iter().any(|a| self.add(&elems[p], a) == elems[q])
        })
        .expect("associated relation is a quasi order");
        let product_order = (0..elems.len())
            .all(|p| (0..elems.len()).all(|q| order.leq(p, q) == self.leq(&elems[p], &elems[q])));
        let poset = order.is_partial_order();
        let lattice = poset && LatticeView::new(order.clone()).is_ok_and(|v| v.is_lattice());
        let joins_agree = lattice
            && elems.iter().all(|x| {
                elems.iter().all(|y| {
                    let (i, j) = (idx(x).unwrap(), idx(y).unwrap());
                    order.join(i, j).map(|k| elems[k].clone()) == self.join(x, y)
                        && order.meet(i, j).map(|k| elems[k].clone()) == self.meet(x, y)
                })
            });
        let cancellative = elems.iter().all(|a| {
            elems.iter().all(|b| {
                elems.iter().all(|c| b == c || self.add(a, b) != self.add(a, c))
            })
        });
        let invertibles = elems
            .iter()
            .filter(|a| elems.iter().any(|b| self.add(a, b) == self.zero()))
            .cloned()
            .collect();
        VectorClass {
            bound,
            associated_order_is_product_order: product_order,
            poset_monoid: poset,
            lattice_monoid: lattice && joins_agree,
            cancellative,
            invertibles,
        }
    }

    /// Subtraction closure of the subset described by `member`, checked on
    /// every pair in the box `[0, bound]^I`.
    pub fn closed_under_subtraction(&self, bound: i64, member: impl Fn(&[i64]) -> bool) -> Verdict {
        let elems: Vec<Vector> =
            self.box_elements(bound).into_iter().filter(|v| member(v)).collect();
        Verdict::from_witness(elems.iter().find_map(|a| {
            elems.iter().find_map(|b| {
                let d = self.sub(a, b)?;
                (!member(&d)).then(|| json!({"a": a, "b": b, "difference": d}))
            })
        }))
    }

    /// The completion `ℕ^I → ℤ^I`.
    pub fn group_completion(&self) -> VectorCompletion {
        assert!(!self.signed, "ℤ^I is already a group");
        VectorCompletion { dims: self.dims }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorClass {
    pub bound: i64,
    pub associated_order_is_product_order: bool,
    pub poset_monoid: bool,
    pub lattice_monoid: bool,
    pub cancellative: bool,
    pub invertibles: Vec<Vector>,
}

/// Pairs `(a, b)` over `ℕ^I` modulo the completion relation. Since `ℕ^I`
/// has no nonzero units, `N` is all of `ℕ^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorCompletion {
    dims: usize,
}

impl VectorCompletion {
    /// Canonical representative: the pair with disjoint supports.
    pub fn canonical(&self, a: &[i64], b: &[i64]) -> (Vector, Vector) {
        a.iter()
            .zip(b)
            .map(|(x, y)| ((x - y).max(0), (y - x).max(0)))
            .unzip()
    }

    pub fn embed(&self, a: &[i64]) -> (Vector, Vector) {
        (a.to_vec(), vec![0; self.dims])
    }

    pub fn add(&self, x: &(Vector, Vector), y: &(Vector, Vector)) -> (Vector, Vector) {
        let m = VectorMonoid::naturals(self.dims);
        self.canonical(&m.add(&x.0, &y.0), &m.add(&x.1, &y.1))
    }

    pub fn neg(&self, x: &(Vector, Vector)) -> (Vector, Vector) {
        (x.1.clone(), x.0.clone())
    }

    /// The isomorphism onto `ℤ^I`.
    pub fn to_integer(&self, x: &(Vector, Vector)) -> Vector {
        x.0.iter().zip(&x.1).map(|(a, b)| a - b).collect()
    }

    pub fn from_integer(&self, z: &[i64]) -> (Vector, Vector) {
        self.canonical(&z.iter().map(|v| v.max(&0)).copied().collect::<Vec<_>>(), &z.iter().map(|v| (-v).max(0)).collect::<Vec<_>>())
    }

    /// Checks on the box `[0, bound]^I` that the literal relation (with
    /// `r, r̄` searched in the box) coincides with equality of canonical
    /// forms, and that the canonical map is an additive bijection with `ℤ^I`
    /// that restricts to an injective embedding of `ℕ^I`.
    pub fn verify_on_box(&self, bound: i64) -> Verdict {
        let m = VectorMonoid::naturals(self.dims);
        let elems = m.box_elements(bound);
        // for a given r, a + r = x + r̄ pins down r̄
        let related = |a: &Vector, b: &Vector, x: &Vector, y: &Vector| {
            elems.iter().any(|r| {
                m.sub(&m.add(a, r), x)
                    .is_some_and(|rb| m.add(b, r) == m.add(y, &rb))
            })
        };
        let pairs: Vec<(Vector, Vector)> = elems
            .iter()
            .flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        for (a, b) in &pairs {
            for (x, y) in &pairs {
                let lit = related(a, b, x, y);
                let canon = self.canonical(a, b) == self.canonical(x, y);
                if lit != canon {
                    return Verdict::fail(json!({"pair": [a, b], "other": [x, y], "related": lit}));
                }
            }
            let c = self.canonical(a, b);
            if self.from_integer(&self.to_integer(&c)) != c {
                return Verdict::fail(json!({"not_bijective_at": [a, b]}));
            }
            let back = self.add(&c, &self.neg(&c));
            if self.to_integer(&back) != m.zero() {
                return Verdict::fail(json!({"no_inverse": [a, b]}));
            }
        }
        for a in &elems {
            for b in &elems {
                let sum = self.add(&self.embed(a), &self.embed(b));
                if self.canonical(&m.add(a, b), &m.zero()) != sum {
                    return Verdict::fail(json!({"not_additive": [a, b]}));
                }
                if a != b && self.canonical(&a.clone(), &m.zero()) == self.canonical(b, &m.zero()) {
                    return Verdict::fail(json!({"not_injective": [a, b]}));
                }
                let za = self.to_integer(&self.canonical(a, b));
                let zb = self.to_integer(&self.canonical(b, a));
                if za.iter().zip(&zb).any(|(p, q)| p + q != 0) {
                    return Verdict::fail(json!({"not_additive_inverse": [a, b]}));
                }
            }
        }
        Verdict::pass()
    }
}

/// An algebraic law relating addition to the associated order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidLaw {
    /// `a + (b ∨ c) = (a + b) ∨ (a + c)` whenever `b ∨ c` exists.
    PlusJoin,
    /// `a + (b ∧ c) = (a + b) ∧ (a + c)`.
    PlusMeet,
    /// `a + ⋁B = ⋁(a + B)` for finite nonempty `B`.
    PlusJoinInf,
    PlusMeetInf,
    /// `a ∧ b = 0` implies `a ∨ b = a + b`.
    DisjointJoin,
    /// `a ∧ c = 0` and `b ∧ c = 0` imply `(a + b) ∧ c = 0`.
    DisjointSum,
    /// `b <= c` implies `a + b <= a + c`.
    Monotone,
    /// `a - c` exists and `b <= c` imply `a - b` exists and `a - b >= a - c`.
    SubtractionAntitone,
    /// `a - c` exists and `a <= b` imply `b - c` exists and `a - c <= b - c`.
    SubtractionMonotone,
}

impl MonoidLaw {
    pub const ALL: [MonoidLaw; 9] = [
        MonoidLaw::PlusJoin,
        MonoidLaw::PlusMeet,
        MonoidLaw::PlusJoinInf,
        MonoidLaw::PlusMeetInf,
        MonoidLaw::DisjointJoin,
        MonoidLaw::DisjointSum,
        MonoidLaw::Monotone,
        MonoidLaw::SubtractionAntitone,
        MonoidLaw::SubtractionMonotone,
    ];

    pub const DISTRIBUTIVE: [MonoidLaw; 4] = [
        MonoidLaw::PlusJoin,
        MonoidLaw::PlusMeet,
        MonoidLaw::PlusJoinInf,
        MonoidLaw::PlusMeetInf,
    ];

    pub const DISJOINT: [MonoidLaw; 2] = [MonoidLaw::DisjointJoin, MonoidLaw::DisjointSum];

    pub fn name(self) -> &'static str {
        match self {
            MonoidLaw::PlusJoin => "plus_join",
            MonoidLaw::PlusMeet => "plus_meet",
            MonoidLaw::PlusJoinInf => "plus_join_inf",
            MonoidLaw::PlusMeetInf => "plus_meet_inf",
            MonoidLaw::DisjointJoin => "disjoint_join",
            MonoidLaw::DisjointSum => "disjoint_sum",
            MonoidLaw::Monotone => "monotone",
            MonoidLaw::SubtractionAntitone => "subtraction_antitone",
            MonoidLaw::SubtractionMonotone => "subtraction_monotone",
        }
    }

    pub fn from_name(name: &str) -> Option<MonoidLaw> {
        MonoidLaw::ALL.into_iter().find(|l| l.name() == name)
    }
}

/// What the law checker needs from a commutative monoid.
pub trait OrderedMonoid {
    type Elem: Clone + PartialEq + Debug + Serialize;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn sup(&self, family: &[Self::Elem]) -> Option<Self::Elem>;
    fn inf(&self, family: &[Self::Elem]) -> Option<Self::Elem>;
    /// The unique `c` with `c + b = a`.
    fn difference(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

impl OrderedMonoid for FiniteMonoid {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.identity
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        (0..self.size).any(|c| self.op(*a, c) == *b)
    }

    fn sup(&self, family: &[usize]) -> Option<usize> {
        let order = self.associated_order();
        order.sup(&Subset::from_indices(self.size, family.iter().copied()))
    }

    fn inf(&self, family: &[usize]) -> Option<usize> {
        let order = self.associated_order();
        order.inf(&Subset::from_indices(self.size, family.iter().copied()))
    }

    fn difference(&self, a: &usize, b: &usize) -> Option<usize> {
        self.quotient(*a, *b)
    }
}

impl OrderedMonoid for VectorMonoid {
    type Elem = Vector;

    fn zero(&self) -> Vector {
        VectorMonoid::zero(self)
    }

    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        VectorMonoid::add(self, a, b)
    }

    fn leq(&self, a: &Vector, b: &Vector) -> bool {
        VectorMonoid::leq(self, a, b)
    }

    fn sup(&self, family: &[Vector]) -> Option<Vector> {
        if self.signed {
            return None;
        }
        Some(family.iter().fold(self.zero(), |acc, x| self.join(&acc, x).unwrap()))
    }

    fn inf(&self, family: &[Vector]) -> Option<Vector> {
        let (first, rest) = family.split_first()?;
        if self.signed {
            return None;
        }
        Some(rest.iter().fold(first.clone(), |acc, x| self.meet(&acc, x).unwrap()))
    }

    fn difference(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        self.sub(a, b)
    }
}

/// A test case for the monoid laws; each law reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawInstance<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub family: Vec<E>,
}

/// Evaluates one law on one instance. `Some(detail)` is a violation.
pub fn law_violation<M: OrderedMonoid>(
    m: &M,
    law: MonoidLaw,
    inst: &LawInstance<M::Elem>,
) -> Option<Value> {
    let (a, b, c) = (&inst.a, &inst.b, &inst.c);
    let zero = m.zero();
    let pair = [b.clone(), c.clone()];
    let shifted = |fam: &[M::Elem]| fam.iter().map(|x| m.add(a, x)).collect::<Vec<_>>();
    let mismatch = |lhs: Option<M::Elem>, rhs: Option<M::Elem>| {
        (lhs != rhs).then(|| json!({"lhs": lhs, "rhs": rhs}))
    };
    let detail = match law {
        MonoidLaw::PlusJoin => {
            let s = m.sup(&pair)?;
            mismatch(Some(m.add(a, &s)), m.sup(&shifted(&pair)))
        }
        MonoidLaw::PlusMeet => {
            let s = m.inf(&pair)?;
            mismatch(Some(m.add(a, &s)), m.inf(&shifted(&pair)))
        }
        MonoidLaw::PlusJoinInf => {
            if inst.family.is_empty() {
                return None;
            }
            let s = m.sup(&inst.family)?;
            mismatch(Some(m.add(a, &s)), m.sup(&shifted(&inst.family)))
        }
        MonoidLaw::PlusMeetInf => {
            if inst.family.is_empty() {
                return None;
            }
            let s = m.inf(&inst.family)?;
            mismatch(Some(m.add(a, &s)), m.inf(&shifted(&inst.family)))
        }
        MonoidLaw::DisjointJoin => {
            let ab = [a.clone(), b.clone()];
            if m.inf(&ab) != Some(zero) {
                return None;
            }
            mismatch(m.sup(&ab), Some(m.add(a, b)))
        }
        MonoidLaw::DisjointSum => {
            if m.inf(&[a.clone(), c.clone()]) != Some(zero.clone())
                || m.inf(&[b.clone(), c.clone()]) != Some(zero.clone())
            {
                return None;
            }
            mismatch(m.inf(&[m.add(a, b), c.clone()]), Some(zero))
        }
        MonoidLaw::Monotone => {
            if !m.leq(b, c) {
                return None;
            }
            let (lhs, rhs) = (m.add(a, b), m.add(a, c));
            (!m.leq(&lhs, &rhs)).then(|| json!({"a+b": lhs, "a+c": rhs}))
        }
        MonoidLaw::SubtractionAntitone => {
            let ac = m.difference(a, c)?;
            if !m.leq(b, c) {
                return None;
            }
            match m.difference(a, b) {
                None => Some(json!({"a-c": ac, "a-b": null})),
                Some(ab) => (!m.leq(&ac, &ab)).then(|| json!({"a-c": ac, "a-b": ab})),
            }
        }
        MonoidLaw::SubtractionMonotone => {
            let ac = m.difference(a, c)?;
            if !m.leq(a, b) {
                return None;
            }
            match m.difference(b, c) {
                None => Some(json!({"a-c": ac, "b-c": null})),
                Some(bc) => (!m.leq(&ac, &bc)).then(|| json!({"a-c": ac, "b-c": bc})),
            }
        }
    };
    detail.map(|d| json!({"instance": inst, "detail": d}))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawMode {
    Exhaustive,
    Sampled { seed: u64, bound: i64, max_family: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub law: MonoidLaw,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub instance_count: u64,
    pub mode: LawMode,
}

fn run_laws<M: OrderedMonoid>(
    m: &M,
    laws: &[MonoidLaw],
    instances: &[LawInstance<M::Elem>],
    mode: LawMode,
) -> Vec<LawReport> {
    laws.iter()
        .map(|&law| {
            let witness = instances.iter().find_map(|inst| law_violation(m, law, inst));
            LawReport {
                law,
                verdict: Verdict::from_witness(witness),
                instance_count: instances.len() as u64,
                mode: mode.clone(),
            }
        })
        .collect()
}

/// Checks the laws on every triple and every nonempty family of a finite
/// monoid.
pub fn check_laws_exhaustive(m: &FiniteMonoid, laws: &[MonoidLaw]) -> Vec<LawReport> {
    let n = m.size();
    let mut instances = Vec::new();
    let families: Vec<Vec<usize>> = Subset::full(n).nonempty_subsets().map(|s| s.to_vec()).collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                instances.push(LawInstance { a, b, c, family: Vec::new() });
            }
        }
        for fam in &families {
            instances.push(LawInstance { a, b: 0, c: 0, family: fam.clone() });
        }
    }
    run_laws(m, laws, &instances, LawMode::Exhaustive)
}

/// Seeded random instances over `ℕ^I` with entries in `0..=bound` and
/// families of 1 to `max_family` vectors.
pub fn sample_vector_instances(
    m: &VectorMonoid,
    count: usize,
    seed: u64,
    bound: i64,
    max_family: usize,
) -> Vec<LawInstance<Vector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vector = |rng: &mut ChaCha8Rng| -> Vector {
        (0..m.dims()).map(|_| rng.random_range(0..=bound)).collect()
    };
    (0..count)
        .map(|_| {
            let a = vector(&mut rng);
            let b = vector(&mut rng);
            let c = vector(&mut rng);
            let len = rng.random_range(1..=max_family.max(1));
            let family = (0..len).map(|_| vector(&mut rng)).collect();
            LawInstance { a, b, c, family }
        })
        .collect()
}

pub fn check_laws_sampled(
    m: &VectorMonoid,
    laws: &[MonoidLaw],
    count: usize,
    seed: u64,
    bound: i64,
    max_family: usize,
) -> Vec<LawReport> {
    let instances = sample_vector_instances(m, count, seed, bound, max_family);
    run_laws(m, laws, &instances, LawMode::Sampled { seed, bound, max_family })
}

/// Checks laws on caller-supplied instances.
pub fn check_laws_on<M: OrderedMonoid>(
    m: &M,
    laws: &[MonoidLaw],
    instances: &[LawInstance<M::Elem>],
) -> Vec<LawReport> {
    run_laws(m, laws, instances, LawMode::Exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max2() -> FiniteMonoid {
        FiniteMonoid::max_semilattice(2)
    }

    #[test]
    fn validation_rejects_bad_tables() {
        assert_eq!(FiniteMonoid::new(vec![], 0), Err(MonoidError::Empty));
        assert!(matches!(
            FiniteMonoid::new(vec![vec![0, 1], vec![1]], 0),
            Err(MonoidError::RaggedTable { row: 1, .. })
        ));
        assert_eq!(
            FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 1),
            Err(MonoidError::NotIdentity(1))
        );
        // x·y = y is associative but 0 is only a left identity
        assert!(FiniteMonoid::from_fn(2, 0, |_, b| b).is_err());
    }

    #[test]
    fn associated_orders() {
        let o = max2().associated_order();
        assert!(o.lt(0, 1) && !o.leq(1, 0));
        let z2 = FiniteMonoid::cyclic(2).associated_order();
        assert!(z2.leq(0, 1) && z2.leq(1, 0));
        assert!(!z2.is_partial_order());
    }

    #[test]
    fn classification() {
        let c = max2().classify();
        assert!(c.poset_monoid && c.lattice_monoid && !c.cancellative);
        assert_eq!(c.invertibles, vec![0]);
        let c = FiniteMonoid::cyclic(2).classify();
        assert!(!c.poset_monoid && c.cancellative);
        assert_eq!(c.invertibles, vec![0, 1]);
        let t = FiniteMonoid::truncated_sum(2).classify();
        assert!(t.lattice_monoid && !t.cancellative);
    }

    #[test]
    fn vector_order_is_product_order() {
        let n2 = VectorMonoid::naturals(2);
        assert!(n2.leq(&[1, 0], &[2, 3]));
        assert!(!n2.leq(&[1, 2], &[2, 1]));
        let c = VectorMonoid::naturals(1).classify_on_box(5);
        assert!(c.associated_order_is_product_order && c.lattice_monoid && c.cancellative);
        assert_eq!(c.invertibles, vec![vec![0]]);
        let c = n2.classify_on_box(3);
        assert!(c.associated_order_is_product_order && c.lattice_monoid);
    }

    #[test]
    fn quotient_reports_absence_for_ambiguous_solutions() {
        let t = FiniteMonoid::truncated_sum(2);
        assert_eq!(t.quotient(0, 1), None);
        assert_eq!(t.quotient(1, 1), Some(0));
        assert_eq!(t.quotient_solutions(2, 1), vec![1, 2]);
        assert_eq!(t.quotient(2, 1), None);
    }

    #[test]
    fn completion_of_groups_is_themselves() {
        for n in 1..6 {
            let g = FiniteMonoid::cyclic(n).group_completion().unwrap();
            assert_eq!(g.size(), n);
            assert!(g.is_embedding_bijective());
        }
    }

    #[test]
    fn completion_rejects_max() {
        assert!(matches!(
            max2().group_completion(),
            Err(MonoidError::NotCancellative(..))
        ));
    }

    #[test]
    fn completion_rejects_noncommutative() {
        // the symmetric group S3 as permutations of 0..3
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let m = FiniteMonoid::from_fn(6, 0, |a, b| {
            let (p, q) = (perms[a], perms[b]);
            idx([p[q[0]], p[q[1]], p[q[2]]])
        })
        .unwrap();
        assert!(matches!(m.group_completion(), Err(MonoidError::NotCommutative(..))));
    }

    #[test]
    fn vector_completion_is_integer_lattice() {
        let c = VectorMonoid::naturals(2).group_completion();
        assert!(c.verify_on_box(2).holds);
        assert_eq!(c.canonical(&[3, 1], &[1, 2]), (vec![2, 0], vec![0, 1]));
        assert_eq!(c.to_integer(&c.embed(&[4, 5])), vec![4, 5]);
    }

    #[test]
    fn commutative_monoid_counts() {
        // commutative monoids on labelled carriers with identity fixed at 0
        assert_eq!(commutative_monoids(1).len(), 1);
        assert_eq!(commutative_monoids(2).len(), 2);
        for n in 1..=4 {
            for m in commutative_monoids(n) {
                assert!(m.is_commutative());
                assert!(m.associated_order().leq(0, n - 1));
            }
        }
    }

    #[test]
    fn subtraction_closure() {
        let n2 = VectorMonoid::naturals(2);
        assert!(n2.closed_under_subtraction(6, |v| v.iter().all(|x| x % 2 == 0)).holds);
        assert!(n2.closed_under_subtraction(4, |_| true).holds);
        let v = n2.closed_under_subtraction(5, |v| v[1] == 0 && v[0] != 1);
        assert!(!v.holds);
        let z3 = FiniteMonoid::cyclic(4);
        assert!(z3.closed_under_subtraction(&Subset::from_indices(4, [0, 2])).holds);
        assert!(!z3.closed_under_subtraction(&Subset::from_indices(4, [0, 1])).holds);
    }

    #[test]
    fn vector_laws_hold() {
        let m = VectorMonoid::naturals(3);
        for r in check_laws_sampled(&m, &MonoidLaw::ALL, 500, 7, 8, 4) {
            assert!(r.verdict.holds, "{:?}", r);
        }
    }

    #[test]
    fn disjoint_examples() {
        let m = VectorMonoid::naturals(2);
        let inst = LawInstance { a: vec![1, 0], b: vec![0, 2], c: vec![0, 1], family: vec![] };
        assert_eq!(m.join(&inst.a, &inst.b), Some(m.add(&inst.a, &inst.b)));
        assert!(law_violation(&m, MonoidLaw::DisjointJoin, &inst).is_none());
        let inst = LawInstance { a: vec![1, 0], b: vec![2, 0], c: vec![0, 1], family: vec![] };
        assert!(law_violation(&m, MonoidLaw::DisjointSum, &inst).is_none());
        assert_eq!(m.meet(&m.add(&inst.a, &inst.b), &inst.c), Some(vec![0, 0]));
    }

    #[test]
    fn truncated_sum_breaks_subtraction_monotonicity() {
        let t = FiniteMonoid::truncated_sum(2);
        let reports = check_laws_exhaustive(&t, &MonoidLaw::ALL);
        let by_law: BTreeMap<_, _> = reports.iter().map(|r| (r.law, r)).collect();
        for law in MonoidLaw::DISTRIBUTIVE.iter().chain(&MonoidLaw::DISJOINT) {
            assert!(by_law[law].verdict.holds, "{law:?}");
        }
        let sub = &by_law[&MonoidLaw::SubtractionMonotone].verdict;
        assert!(!sub.holds);
        let w = sub.witness.as_ref().unwrap();
        assert_eq!(
            (&w["instance"]["a"], &w["instance"]["b"], &w["instance"]["c"]),
            (&json!(1), &json!(2), &json!(1))
        );
        assert!(by_law[&MonoidLaw::SubtractionAntitone].verdict.holds);
    }
}
