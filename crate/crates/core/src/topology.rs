//! Finite topological spaces, their regular open algebras, the meager
//! ideal and the category algebra.
//!
//! A finite topology is determined by the minimal open neighbourhood `U_x`
//! of each point; the open sets are exactly the sets containing `U_x` for
//! each of their points. Sets are `u64` bitmasks internally.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::lattice::{self, DensityReport, LatticeError, LatticeView};
use crate::order::QuasiOrder;
use crate::report::Verdict;
use crate::subset::Subset;

/// Largest carrier accepted by [`FiniteTopology`].
pub const MAX_POINTS: usize = 63;
/// Largest carrier for scans over all subsets (Baire property, Cat(X)).
pub const SUBSET_SCAN_LIMIT: usize = 12;
/// Largest carrier for [`enumerate_topologies`].
pub const ENUMERATION_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("{points} points exceeds the limit of {limit}")]
    TooManyPoints { points: usize, limit: usize },
    #[error("point {index} out of range for a space of {points} points")]
    OutOfRange { index: usize, points: usize },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("space is not zero-dimensional: open set {0:?} is not a union of clopen sets")]
    NotZeroDimensional(Vec<usize>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    points: usize,
    /// `nbhd[x]` is the smallest open set containing `x`.
    nbhd: Vec<u64>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

impl FiniteTopology {
    fn check_points(points: usize) -> Result<(), TopologyError> {
        if points > MAX_POINTS {
            return Err(TopologyError::TooManyPoints { points, limit: MAX_POINTS });
        }
        Ok(())
    }

    fn to_mask(&self, s: &Subset) -> Result<u64, TopologyError> {
        if s.universe() != self.points {
            return Err(TopologyError::NotATopology(format!(
                "subset over {} points used with a space of {} points",
                s.universe(),
                self.points
            )));
        }
        Ok(s.as_mask())
    }

    fn subset(&self, mask: u64) -> Subset {
        Subset::from_mask(self.points, mask)
    }

    /// Validates that `opens` is exactly a topology: contains ∅ and the
    /// whole space and is closed under pairwise unions and intersections.
    pub fn new(points: usize, opens: &[Vec<usize>]) -> Result<Self, TopologyError> {
        Self::check_points(points)?;
        let masks = Self::masks(points, opens)?;
        let family: std::collections::HashSet<u64> = masks.iter().copied().collect();
        let full = full_mask(points);
        if !family.contains(&0) {
            return Err(TopologyError::NotATopology("the empty set is not open".into()));
        }
        if !family.contains(&full) {
            return Err(TopologyError::NotATopology("the whole space is not open".into()));
        }
        for &a in &family {
            for &b in &family {
                if !family.contains(&(a | b)) || !family.contains(&(a & b)) {
                    return Err(TopologyError::NotATopology(format!(
                        "open sets {:?} and {:?} are not closed under union and intersection",
                        members(a).collect::<Vec<_>>(),
                        members(b).collect::<Vec<_>>()
                    )));
                }
            }
        }
        let t = Self::from_masks(points, &masks);
        debug_assert_eq!(t.open_masks().len(), family.len());
        Ok(t)
    }

    /// The coarsest topology in which every generator is open.
    pub fn from_generators(points: usize, generators: &[Vec<usize>]) -> Result<Self, TopologyError> {
        Self::check_points(points)?;
        let masks = Self::masks(points, generators)?;
        Ok(Self::from_masks(points, &masks))
    }

    fn masks(points: usize, sets: &[Vec<usize>]) -> Result<Vec<u64>, TopologyError> {
        sets.iter()
            .map(|s| {
                s.iter().try_fold(0u64, |m, &x| {
                    if x >= points {
                        Err(TopologyError::OutOfRange { index: x, points })
                    } else {
                        Ok(m | 1 << x)
                    }
                })
            })
            .collect()
    }

    fn from_masks(points: usize, generators: &[u64]) -> Self {
        let full = full_mask(points);
        let nbhd = (0..points)
            .map(|x| generators.iter().filter(|&&g| g >> x & 1 == 1).fold(full, |acc, &g| acc & g))
            .collect();
        FiniteTopology { points, nbhd }
    }

    /// Opens are the up-sets of a preorder: `U_x = ↑x`.
    pub fn from_preorder(order: &QuasiOrder) -> Result<Self, TopologyError> {
        Self::check_points(order.size())?;
        let nbhd = (0..order.size()).map(|x| order.up_set(x).as_mask()).collect();
        Ok(FiniteTopology { points: order.size(), nbhd })
    }

    /// The specialization preorder `x ≤ y ⇔ y ∈ U_x`.
    pub fn specialization(&self) -> QuasiOrder {
        QuasiOrder::from_relation(self.points, |x, y| self.nbhd[x] >> y & 1 == 1)
            .expect("neighbourhoods induce a preorder")
    }

    pub fn discrete(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        FiniteTopology { points: n, nbhd: (0..n).map(|x| 1 << x).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        FiniteTopology { points: n, nbhd: vec![full_mask(n); n] }
    }

    /// Points `{0, 1}` with open sets `∅, {1}, {0, 1}`.
    pub fn sierpinski() -> Self {
        FiniteTopology { points: 2, nbhd: vec![0b11, 0b10] }
    }

    /// Points of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &FiniteTopology) -> Self {
        let points = self.points + other.points;
        assert!(points <= MAX_POINTS);
        let mut nbhd = self.nbhd.clone();
        nbhd.extend(other.nbhd.iter().map(|&u| u << self.points));
        FiniteTopology { points, nbhd }
    }

    /// The subspace on `s`, with points relabelled in increasing order.
    pub fn subspace(&self, s: &Subset) -> Result<(FiniteTopology, Vec<usize>), TopologyError> {
        let mask = self.to_mask(s)?;
        let pts: Vec<usize> = members(mask).collect();
        let compress = |m: u64| {
            pts.iter().enumerate().fold(0u64, |acc, (i, &p)| acc | ((m >> p & 1) << i))
        };
        let nbhd = pts.iter().map(|&p| compress(self.nbhd[p] & mask)).collect();
        Ok((FiniteTopology { points: pts.len(), nbhd }, pts))
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn minimal_neighbourhood(&self, x: usize) -> Subset {
        self.subset(self.nbhd[x])
    }

    fn open_masks(&self) -> Vec<u64> {
        // close {∅} ∪ {U_x} under unions
        let mut seen = std::collections::BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(s) = frontier.pop() {
            for &u in &self.nbhd {
                let t = s | u;
                if seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All open sets, in increasing bitmask order.
    pub fn opens(&self) -> Vec<Subset> {
        self.open_masks().into_iter().map(|m| self.subset(m)).collect()
    }

    fn is_open_mask(&self, s: u64) -> bool {
        members(s).all(|x| self.nbhd[x] & !s == 0)
    }

    fn interior_mask(&self, s: u64) -> u64 {
        members(s).filter(|&x| self.nbhd[x] & !s == 0).fold(0, |acc, x| acc | 1 << x)
    }

    fn closure_mask(&self, s: u64) -> u64 {
        (0..self.points).filter(|&x| self.nbhd[x] & s != 0).fold(0, |acc, x| acc | 1 << x)
    }

    fn is_regular_open_mask(&self, s: u64) -> bool {
        self.interior_mask(self.closure_mask(s)) == s
    }

    fn is_nowhere_dense_mask(&self, s: u64) -> bool {
        self.interior_mask(self.closure_mask(s)) == 0
    }

    pub fn is_open(&self, s: &Subset) -> Result<bool, TopologyError> {
        Ok(self.is_open_mask(self.to_mask(s)?))
    }

    pub fn is_closed(&self, s: &Subset) -> Result<bool, TopologyError> {
        Ok(self.is_open_mask(!self.to_mask(s)? & full_mask(self.points)))
    }

    pub fn interior(&self, s: &Subset) -> Result<Subset, TopologyError> {
        Ok(self.subset(self.interior_mask(self.to_mask(s)?)))
    }

    pub fn closure(&self, s: &Subset) -> Result<Subset, TopologyError> {
        Ok(self.subset(self.closure_mask(self.to_mask(s)?)))
    }

    pub fn is_regular_open(&self, s: &Subset) -> Result<bool, TopologyError> {
        Ok(self.is_regular_open_mask(self.to_mask(s)?))
    }

    pub fn is_nowhere_dense(&self, s: &Subset) -> Result<bool, TopologyError> {
        Ok(self.is_nowhere_dense_mask(self.to_mask(s)?))
    }

    /// A finite union of nowhere dense sets is nowhere dense, and in a
    /// finite space every union is finite, so meager means nowhere dense.
    pub fn is_meager(&self, s: &Subset) -> Result<bool, TopologyError> {
        self.is_nowhere_dense(s)
    }

    fn require_scan(&self) -> Result<(), TopologyError> {
        if self.points > SUBSET_SCAN_LIMIT {
            return Err(TopologyError::TooManyPoints { points: self.points, limit: SUBSET_SCAN_LIMIT });
        }
        Ok(())
    }

    fn all_masks(&self) -> impl Iterator<Item = u64> {
        0..=full_mask(self.points)
    }

    /// Every meager subset, in increasing bitmask order.
    pub fn meager_ideal(&self) -> Result<Vec<Subset>, TopologyError> {
        self.require_scan()?;
        Ok(self
            .all_masks()
            .filter(|&s| self.is_nowhere_dense_mask(s))
            .map(|s| self.subset(s))
            .collect())
    }

    /// `U_X`: the union of all open meager sets.
    pub fn largest_open_meager(&self) -> Subset {
        let u = self
            .open_masks()
            .into_iter()
            .filter(|&s| self.is_nowhere_dense_mask(s))
            .fold(0, |acc, s| acc | s);
        self.subset(u)
    }

    /// No nonempty open set is meager.
    pub fn is_baire(&self) -> bool {
        self.open_masks().into_iter().all(|s| s == 0 || !self.is_nowhere_dense_mask(s))
    }

    /// `S △ U` is meager for some open `U`; returns the least such `U`.
    pub fn baire_witness(&self, s: &Subset) -> Result<Option<Subset>, TopologyError> {
        let m = self.to_mask(s)?;
        Ok(self
            .open_masks()
            .into_iter()
            .find(|&u| self.is_nowhere_dense_mask(m ^ u))
            .map(|u| self.subset(u)))
    }

    pub fn has_baire_property(&self, s: &Subset) -> Result<bool, TopologyError> {
        Ok(self.baire_witness(s)?.is_some())
    }

    fn regular_open_masks(&self) -> Vec<u64> {
        self.open_masks().into_iter().filter(|&s| self.is_regular_open_mask(s)).collect()
    }

    pub fn regular_opens(&self) -> Vec<Subset> {
        self.regular_open_masks().into_iter().map(|s| self.subset(s)).collect()
    }

    pub fn ro_algebra(&self) -> RegularOpenAlgebra {
        let sets = self.regular_open_masks();
        let order = QuasiOrder::from_relation(sets.len(), |i, j| sets[i] & !sets[j] == 0)
            .expect("inclusion is a partial order");
        let view = LatticeView::lattice(order).expect("regular open sets form a lattice");
        RegularOpenAlgebra { space: self.clone(), sets, view }
    }

    /// Clopen sets, in increasing bitmask order.
    pub fn clopens(&self) -> Vec<Subset> {
        let full = full_mask(self.points);
        self.open_masks()
            .into_iter()
            .filter(|&s| self.is_open_mask(!s & full))
            .map(|s| self.subset(s))
            .collect()
    }

    /// Every open set is a union of clopen sets.
    pub fn is_zero_dimensional(&self) -> bool {
        self.zero_dimensional_failure().is_none()
    }

    fn zero_dimensional_failure(&self) -> Option<u64> {
        let clopens: Vec<u64> = self.clopens().iter().map(Subset::as_mask).collect();
        self.open_masks().into_iter().find(|&u| {
            clopens.iter().filter(|&&c| c & !u == 0).fold(0, |acc, &c| acc | c) != u
        })
    }

    /// Builds `BP(X) ÷ M(X)`. Requires at most [`SUBSET_SCAN_LIMIT`] points.
    pub fn category_algebra(&self) -> Result<CategoryAlgebra, TopologyError> {
        self.require_scan()?;
        let mut class_of: BTreeMap<u64, usize> = BTreeMap::new();
        let mut reps: Vec<u64> = Vec::new();
        for s in self.all_masks() {
            if !self.open_masks().iter().any(|&u| self.is_nowhere_dense_mask(s ^ u)) {
                continue;
            }
            let found = reps.iter().position(|&r| self.is_nowhere_dense_mask(r ^ s));
            let idx = found.unwrap_or_else(|| {
                reps.push(s);
                reps.len() - 1
            });
            class_of.insert(s, idx);
        }
        let order = QuasiOrder::from_relation(reps.len(), |i, j| {
            self.is_nowhere_dense_mask(reps[i] & !reps[j])
        })
        .expect("inclusion modulo an ideal is a preorder");
        let view = LatticeView::new(order)?;
        view.require_lattice()?;
        Ok(CategoryAlgebra { space: self.clone(), representatives: reps, class_of, view })
    }

    /// The isomorphism `RO(X ∖ cl U_X) → Cat(X)`, `G ↦ [G]`, checked to be
    /// a bijection that preserves and reflects order.
    pub fn ro_isomorphism(&self) -> Result<RoIsomorphism, TopologyError> {
        let cat = self.category_algebra()?;
        let u = self.largest_open_meager().as_mask();
        let rest = !self.closure_mask(u) & full_mask(self.points);
        let (sub, pts) = self.subspace(&self.subset(rest))?;
        let ro = sub.ro_algebra();
        let lift = |m: u64| members(m).fold(0u64, |acc, i| acc | 1 << pts[i]);
        let mut map = Vec::with_capacity(ro.size());
        let mut missing = None;
        for &g in &ro.sets {
            match cat.class_of.get(&lift(g)) {
                Some(&c) => map.push(c),
                None => {
                    missing.get_or_insert(lift(g));
                    map.push(usize::MAX);
                }
            }
        }
        let verdict = if let Some(g) = missing {
            Verdict::fail(json!({"lacks_baire_property": members(g).collect::<Vec<_>>()}))
        } else {
            bijection_verdict(ro.view.order(), cat.view.order(), &map)
        };
        Ok(RoIsomorphism {
            subspace_points: pts.clone(),
            regular_opens: ro.sets.iter().map(|&g| members(lift(g)).collect()).collect(),
            classes: map,
            verdict,
        })
    }

    /// The classes of clopen sets form a basis of `Cat(X)`.
    pub fn clopen_basis_check(&self) -> Result<ClopenBasisReport, TopologyError> {
        if let Some(u) = self.zero_dimensional_failure() {
            return Err(TopologyError::NotZeroDimensional(members(u).collect()));
        }
        let cat = self.category_algebra()?;
        let mut classes: Vec<usize> =
            self.clopens().iter().map(|c| cat.class_of[&c.as_mask()]).collect();
        classes.sort_unstable();
        classes.dedup();
        let b = Subset::from_indices(cat.size(), classes.iter().copied());
        let density = lattice::density_checks(&cat.view, &b)?;
        Ok(ClopenBasisReport { clopen_classes: classes, density })
    }
}

/// An order-preserving and -reflecting bijection, given as an image array.
fn bijection_verdict(dom: &QuasiOrder, cod: &QuasiOrder, map: &[usize]) -> Verdict {
    let mut hit = vec![false; cod.size()];
    for &c in map {
        hit[c] = true;
    }
    if map.len() != cod.size() || hit.iter().any(|h| !h) {
        return Verdict::fail(json!({"not_bijective": map}));
    }
    for p in 0..dom.size() {
        for q in 0..dom.size() {
            if dom.leq(p, q) != cod.leq(map[p], map[q]) {
                return Verdict::fail(json!({"order_mismatch": [p, q]}));
            }
        }
    }
    Verdict::pass()
}

#[derive(Clone, Debug)]
pub struct RegularOpenAlgebra {
    space: FiniteTopology,
    sets: Vec<u64>,
    view: LatticeView,
}

impl RegularOpenAlgebra {
    pub fn view(&self) -> &LatticeView {
        &self.view
    }

    pub fn size(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> Subset {
        self.space.subset(self.sets[i])
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.sets.binary_search(&s.as_mask()).ok()
    }

    fn index(&self, m: u64) -> usize {
        self.sets.binary_search(&m).expect("result is regular open")
    }

    /// `int(cl(G ∪ H))`
    pub fn join(&self, i: usize, j: usize) -> usize {
        let t = &self.space;
        self.index(t.interior_mask(t.closure_mask(self.sets[i] | self.sets[j])))
    }

    /// `G ∩ H`
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index(self.sets[i] & self.sets[j])
    }

    /// `int(X ∖ G)`
    pub fn complement(&self, i: usize) -> usize {
        let t = &self.space;
        self.index(t.interior_mask(!self.sets[i] & full_mask(t.points)))
    }
}

#[derive(Clone, Debug)]
pub struct CategoryAlgebra {
    space: FiniteTopology,
    representatives: Vec<u64>,
    class_of: BTreeMap<u64, usize>,
    view: LatticeView,
}

impl CategoryAlgebra {
    pub fn view(&self) -> &LatticeView {
        &self.view
    }

    pub fn order_arc(&self) -> &Arc<QuasiOrder> {
        self.view.order_arc()
    }

    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    /// The first member (by bitmask) of each class.
    pub fn representative(&self, class: usize) -> Subset {
        self.space.subset(self.representatives[class])
    }

    /// `None` when `s` lacks the Baire property.
    pub fn class_of(&self, s: &Subset) -> Option<usize> {
        self.class_of.get(&s.as_mask()).copied()
    }

    pub fn baire_property_sets(&self) -> usize {
        self.class_of.len()
    }

    /// `[A] ∨ [B] = [A ∪ B]`
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.class_of[&(self.representatives[i] | self.representatives[j])]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.class_of[&(self.representatives[i] & self.representatives[j])]
    }

    /// `−[A] = [Aᶜ]`
    pub fn complement(&self, i: usize) -> usize {
        self.class_of[&(!self.representatives[i] & full_mask(self.space.points))]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoIsomorphism {
    pub subspace_points: Vec<usize>,
    /// Regular opens of the subspace, as point sets of the whole space.
    pub regular_opens: Vec<Vec<usize>>,
    /// Category-algebra class of each regular open.
    pub classes: Vec<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClopenBasisReport {
    pub clopen_classes: Vec<usize>,
    pub density: DensityReport,
}

impl ClopenBasisReport {
    pub fn is_basis(&self) -> bool {
        self.density.basis.holds
    }
}

/// Every topology on `n` labelled points, as specialization preorders in
/// lexicographic order of their relation bits. Counts are 1, 1, 4, 29, 355,
/// 6942 for `n` = 0..=5.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>, TopologyError> {
    if n > ENUMERATION_LIMIT {
        return Err(TopologyError::TooManyPoints { points: n, limit: ENUMERATION_LIMIT });
    }
    // choose U_x ∋ x for each point, keep the choices closed under
    // y ∈ U_x ⇒ U_y ⊆ U_x
    let mut out = Vec::new();
    let mut nbhd = vec![0u64; n];
    fn go(x: usize, n: usize, nbhd: &mut Vec<u64>, out: &mut Vec<FiniteTopology>) {
        if x == n {
            let ok = (0..n).all(|a| members(nbhd[a]).all(|b| nbhd[b] & !nbhd[a] == 0));
            if ok {
                out.push(FiniteTopology { points: n, nbhd: nbhd.clone() });
            }
            return;
        }
        let others = full_mask(n) & !(1 << x);
        let mut sub = 0u64;
        loop {
            nbhd[x] = sub | 1 << x;
            go(x + 1, n, nbhd, out);
            if sub == others {
                break;
            }
            sub = (sub.wrapping_sub(others)) & others;
        }
    }
    go(0, n, &mut nbhd, &mut out);
    Ok(out)
}
