//! Order embeddings between finite posets: censuses, range properties,
//! continuity, normal forms on power sets and chain products, and
//! extension from join-dense subsets.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::lattice::{self, LatticeView};
use crate::order::{MonotoneMap, OrderError, QuasiOrder};
use crate::product::ChainProduct;
use crate::report::Verdict;
use crate::subset::Subset;

/// Default cap on search-tree nodes for a single census.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// A named premise of an extension or transfer statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    LLattice,
    MLattice,
    LCompleteSemilattice,
    MCompleteSemilattice,
    LJid,
    MJid,
    MFlatComplete,
    DJoinDense,
    DMeetSubsemilattice,
    ZeroInB,
    BStronglyIntervalPredense,
    BBasis,
    EJoinDense,
    EPreregular,
    ESublattice,
    SigmaDomain,
    SigmaIntoE,
    SigmaMonotone,
    SigmaEmbedding,
    SigmaConvexRangeInE,
    SigmaPreservesSups,
    SigmaPreservesBoundedness,
}

impl Hypothesis {
    pub fn slug(self) -> &'static str {
        match self {
            Hypothesis::LLattice => "L-lattice",
            Hypothesis::MLattice => "M-lattice",
            Hypothesis::LCompleteSemilattice => "L-complete-semilattice",
            Hypothesis::MCompleteSemilattice => "M-complete-semilattice",
            Hypothesis::LJid => "L-JID",
            Hypothesis::MJid => "M-JID",
            Hypothesis::MFlatComplete => "M-flat-complete",
            Hypothesis::DJoinDense => "D-join-dense",
            Hypothesis::DMeetSubsemilattice => "D-meet-subsemilattice",
            Hypothesis::ZeroInB => "B-contains-zero",
            Hypothesis::BStronglyIntervalPredense => "B-strongly-interval-predense",
            Hypothesis::BBasis => "B-basis",
            Hypothesis::EJoinDense => "E-join-dense",
            Hypothesis::EPreregular => "E-preregular",
            Hypothesis::ESublattice => "E-sublattice",
            Hypothesis::SigmaDomain => "sigma-domain",
            Hypothesis::SigmaIntoE => "sigma-into-E",
            Hypothesis::SigmaMonotone => "sigma-monotone",
            Hypothesis::SigmaEmbedding => "sigma-embedding",
            Hypothesis::SigmaConvexRangeInE => "sigma-convex-range-in-E",
            Hypothesis::SigmaPreservesSups => "sigma-preserves-nonempty-sups",
            Hypothesis::SigmaPreservesBoundedness => "sigma-preserves-boundedness",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("map is not an order embedding")]
    NotEmbedding,
    #[error("map does not have convex range")]
    NotConvexRange,
    #[error("normal form disagrees with the map at input {input}")]
    DecompositionMismatch { input: usize },
    #[error("orders are not the expected {0}")]
    WrongShape(&'static str),
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(Hypothesis),
    #[error("conclusion failed: {0}")]
    ConclusionFailed(&'static str),
}

/// Optional range filters applied on top of the embedding condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RangeFilters {
    pub convex_range: bool,
    pub preregular_range: bool,
    pub downward_closed_range: bool,
}

impl RangeFilters {
    pub const NONE: RangeFilters =
        RangeFilters { convex_range: false, preregular_range: false, downward_closed_range: false };
    pub const CONVEX: RangeFilters =
        RangeFilters { convex_range: true, preregular_range: false, downward_closed_range: false };
    pub const PREREGULAR: RangeFilters =
        RangeFilters { convex_range: false, preregular_range: true, downward_closed_range: false };
}

/// Properties recorded for each map in a census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub embedding: bool,
    pub convex_range: bool,
    pub preregular_range: bool,
    pub downward_closed_range: bool,
}

impl MapFlags {
    pub fn compute(dom: &QuasiOrder, cod: &QuasiOrder, image: &[usize]) -> Self {
        let range = Subset::from_indices(cod.size(), image.iter().copied());
        MapFlags {
            embedding: crate::order::preservation_failure(dom, cod, image).is_none()
                && crate::order::reflection_failure(dom, cod, image).is_none(),
            convex_range: lattice::is_convex(cod, &range),
            preregular_range: lattice::is_preregular(cod, &range),
            downward_closed_range: cod.is_lower_set(&range),
        }
    }

    fn passes(&self, f: &RangeFilters) -> bool {
        (!f.convex_range || self.convex_range)
            && (!f.preregular_range || self.preregular_range)
            && (!f.downward_closed_range || self.downward_closed_range)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub image: Vec<usize>,
    pub flags: MapFlags,
}

/// Every embedding between two finite posets passing the chosen filters,
/// in lexicographic order of image arrays.
#[derive(Clone, Debug)]
pub struct EmbeddingCensus {
    pub dom: Arc<QuasiOrder>,
    pub cod: Arc<QuasiOrder>,
    pub filters: RangeFilters,
    pub maps: Vec<CensusEntry>,
    pub nodes: u64,
}

impl EmbeddingCensus {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn images(&self) -> impl Iterator<Item = &[usize]> {
        self.maps.iter().map(|e| e.image.as_slice())
    }

    pub fn to_maps(&self) -> Vec<MonotoneMap> {
        self.images()
            .map(|img| {
                MonotoneMap::new(self.dom.clone(), self.cod.clone(), img.to_vec())
                    .expect("census maps are order preserving")
            })
            .collect()
    }

    /// One JSON object per line: `{"image": [...], "flags": {...}}`.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for e in &self.maps {
            s.push_str(&serde_json::to_string(e).expect("census entries serialize"));
            s.push('\n');
        }
        s
    }
}

/// Backtracking search for order-preserving maps, optionally reflecting,
/// with some values pinned in advance.
#[derive(Clone, Debug)]
pub struct MapSearch<'a> {
    dom: &'a QuasiOrder,
    cod: &'a QuasiOrder,
    reflect: bool,
    fixed: Vec<Option<usize>>,
    filters: RangeFilters,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> MapSearch<'a> {
    pub fn monotone(dom: &'a QuasiOrder, cod: &'a QuasiOrder) -> Self {
        MapSearch {
            dom,
            cod,
            reflect: false,
            fixed: vec![None; dom.size()],
            filters: RangeFilters::NONE,
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn embeddings(dom: &'a QuasiOrder, cod: &'a QuasiOrder) -> Self {
        MapSearch { reflect: true, ..Self::monotone(dom, cod) }
    }

    pub fn filters(mut self, filters: RangeFilters) -> Self {
        self.filters = filters;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Pins `σ(p) = v` for every `Some(v)` at index `p`.
    pub fn fixed(mut self, fixed: Vec<Option<usize>>) -> Self {
        assert_eq!(fixed.len(), self.dom.size());
        self.fixed = fixed;
        self
    }

    /// Runs the search, returning images sorted lexicographically and the
    /// number of nodes visited.
    pub fn run(&self) -> Result<(Vec<Vec<usize>>, u64), EmbeddingError> {
        self.dom.require_partial_order()?;
        self.cod.require_partial_order()?;
        for &v in self.fixed.iter().flatten() {
            self.cod.check_element(v)?;
        }
        let n = self.dom.size();
        let seq = self.dom.linear_extension();
        if n == 0 {
            return Ok((vec![Vec::new()], 1));
        }
        let assign = vec![UNSET; n];
        let img = self.cod.empty_set();
        let first = self.candidates(&seq, 0, &assign, &img);
        let branches: Vec<usize> = first.iter().collect();
        let results: Vec<Result<_, EmbeddingError>> = branches
            .par_iter()
            .map(|&v| {
                let mut assign = assign.clone();
                let mut img = img.clone();
                let mut nodes = 1u64;
                let mut out = Vec::new();
                assign[seq[0]] = v;
                img.insert(v);
                self.dfs(&seq, 1, &mut assign, &mut img, &mut nodes, &mut out)?;
                Ok((out, nodes))
            })
            .collect();
        let mut all = Vec::new();
        let mut nodes = 1u64;
        for r in results {
            let (out, k) = r?;
            nodes += k;
            all.extend(out);
        }
        if nodes > self.budget {
            return Err(EmbeddingError::BudgetExceeded { budget: self.budget });
        }
        all.sort_unstable();
        Ok((all, nodes))
    }

    fn candidates(&self, seq: &[usize], step: usize, assign: &[usize], img: &Subset) -> Subset {
        let p = seq[step];
        let mut cand = match self.fixed[p] {
            Some(v) => Subset::singleton(self.cod.size(), v),
            None => self.cod.full_set(),
        };
        for &a in &seq[..step] {
            let sa = assign[a];
            if self.dom.leq(a, p) {
                cand.intersect_with(self.cod.up_set(sa));
            } else if self.reflect {
                // σ(a) <= σ(p) would force a <= p
                cand.difference_with(self.cod.up_set(sa));
            }
            if self.reflect && !self.dom.leq(p, a) {
                cand.difference_with(self.cod.down_set(sa));
            }
        }
        if self.reflect {
            // Anything in the range strictly between σ(a) and σ(p), or below
            // σ(p), is the image of an element below p, hence already placed.
            cand = Subset::from_indices(
                self.cod.size(),
                cand.iter().filter(|&v| self.range_prunes_ok(seq, step, assign, img, v)),
            );
        }
        cand
    }

    fn range_prunes_ok(
        &self,
        seq: &[usize],
        step: usize,
        assign: &[usize],
        img: &Subset,
        v: usize,
    ) -> bool {
        let mut covered = img.clone();
        covered.insert(v);
        if self.filters.downward_closed_range && !self.cod.down_set(v).is_subset(&covered) {
            return false;
        }
        if self.filters.convex_range {
            let p = seq[step];
            for &a in &seq[..step] {
                if self.dom.leq(a, p) && !self.cod.interval(assign[a], v).is_subset(&covered) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(
        &self,
        seq: &[usize],
        step: usize,
        assign: &mut Vec<usize>,
        img: &mut Subset,
        nodes: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), EmbeddingError> {
        if step == seq.len() {
            let flags = MapFlags::compute(self.dom, self.cod, assign);
            if (!self.reflect || flags.embedding) && flags.passes(&self.filters) {
                out.push(assign.clone());
            }
            return Ok(());
        }
        let cand = self.candidates(seq, step, assign, img);
        let p = seq[step];
        for v in cand.iter() {
            *nodes += 1;
            if *nodes > self.budget {
                return Err(EmbeddingError::BudgetExceeded { budget: self.budget });
            }
            let fresh = !img.contains(v);
            assign[p] = v;
            img.insert(v);
            self.dfs(seq, step + 1, assign, img, nodes, out)?;
            if fresh {
                img.remove(v);
            }
            assign[p] = UNSET;
        }
        Ok(())
    }
}

/// Every order embedding `dom → cod` passing `filters`.
pub fn enumerate_embeddings(
    dom: Arc<QuasiOrder>,
    cod: Arc<QuasiOrder>,
    filters: RangeFilters,
    budget: u64,
) -> Result<EmbeddingCensus, EmbeddingError> {
    let (images, nodes) = MapSearch::embeddings(&dom, &cod).filters(filters).budget(budget).run()?;
    let maps = images
        .into_iter()
        .map(|image| {
            let flags = MapFlags::compute(&dom, &cod, &image);
            CensusEntry { image, flags }
        })
        .collect();
    Ok(EmbeddingCensus { dom, cod, filters, maps, nodes })
}

/// Every order-preserving map `dom → cod` (no reflection required).
pub fn enumerate_monotone(
    dom: &QuasiOrder,
    cod: &QuasiOrder,
    budget: u64,
) -> Result<Vec<Vec<usize>>, EmbeddingError> {
    MapSearch::monotone(dom, cod).budget(budget).run().map(|(maps, _)| maps)
}

fn image_of(image: &[usize], cod_size: usize, a: &Subset) -> Subset {
    Subset::from_indices(cod_size, a.iter().map(|p| image[p]))
}

/// Preservation of suprema and infima by a monotone map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityReport {
    /// Nonempty `A` with an existing supremum: `σ(⋁A) = ⋁σ[A]`.
    pub preserves_nonempty_sups: Verdict,
    pub preserves_nonempty_infs: Verdict,
    /// The same restricted to directed `A`.
    pub scott_continuous: Verdict,
    /// The same restricted to filtered `A`, for infima.
    pub co_continuous: Verdict,
    /// Includes `A = ∅`, i.e. the minimum goes to the minimum.
    pub preserves_all_sups: Verdict,
    pub preserves_all_infs: Verdict,
}

pub fn continuity_checks(map: &MonotoneMap) -> ContinuityReport {
    continuity_of(map.dom(), map.cod(), map.image())
}

/// Largest domain on which continuity is checked by subset enumeration.
pub const CONTINUITY_LIMIT: usize = 20;

pub fn continuity_of(dom: &QuasiOrder, cod: &QuasiOrder, image: &[usize]) -> ContinuityReport {
    assert!(dom.size() <= CONTINUITY_LIMIT, "domain too large for subset enumeration");
    let mut sup_w = None;
    let mut inf_w = None;
    let mut scott_w = None;
    let mut co_w = None;
    let mut empty_sup = None;
    let mut empty_inf = None;
    for a in dom.full_set().subsets() {
        let img = image_of(image, cod.size(), &a);
        if let Some(s) = dom.sup(&a) {
            let t = cod.sup(&img);
            if t != Some(image[s]) {
                let w = json!({"subset": a.to_vec(), "image_of_sup": image[s], "sup_of_image": t});
                if a.is_empty() {
                    empty_sup.get_or_insert(w);
                } else {
                    if scott_w.is_none() && dom.is_directed(&a) {
                        scott_w = Some(w.clone());
                    }
                    sup_w.get_or_insert(w);
                }
            }
        }
        if let Some(s) = dom.inf(&a) {
            let t = cod.inf(&img);
            if t != Some(image[s]) {
                let w = json!({"subset": a.to_vec(), "image_of_inf": image[s], "inf_of_image": t});
                if a.is_empty() {
                    empty_inf.get_or_insert(w);
                } else {
                    if co_w.is_none() && dom.is_filtered(&a) {
                        co_w = Some(w.clone());
                    }
                    inf_w.get_or_insert(w);
                }
            }
        }
    }
    ContinuityReport {
        preserves_all_sups: Verdict::from_witness(sup_w.clone().or(empty_sup)),
        preserves_all_infs: Verdict::from_witness(inf_w.clone().or(empty_inf)),
        preserves_nonempty_sups: Verdict::from_witness(sup_w),
        preserves_nonempty_infs: Verdict::from_witness(inf_w),
        scott_continuous: Verdict::from_witness(scott_w),
        co_continuous: Verdict::from_witness(co_w),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub bounded_to_bounded: Verdict,
    pub unbounded_to_unbounded: Verdict,
}

/// Whether images of bounded (above) subsets stay bounded, and images of
/// unbounded subsets stay unbounded.
pub fn boundedness_preservation(map: &MonotoneMap) -> BoundednessReport {
    let (dom, cod, image) = (map.dom(), map.cod(), map.image());
    let mut b = None;
    let mut u = None;
    for a in dom.full_set().subsets() {
        let img = image_of(image, cod.size(), &a);
        let bounded = dom.is_bounded_above(&a);
        let img_bounded = cod.is_bounded_above(&img);
        if bounded && !img_bounded && b.is_none() {
            b = Some(json!({"subset": a.to_vec()}));
        }
        if !bounded && img_bounded && u.is_none() {
            u = Some(json!({"subset": a.to_vec()}));
        }
    }
    BoundednessReport {
        bounded_to_bounded: Verdict::from_witness(b),
        unbounded_to_unbounded: Verdict::from_witness(u),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RangeReport {
    pub up_boc_range: Verdict,
    pub down_boc_range: Verdict,
    pub up_oc_range: Verdict,
    pub down_oc_range: Verdict,
    pub order_closed_range: Verdict,
    /// `ran(σ) = [σ(min), σ(max)]`; absent unless the domain is bounded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval_range: Option<Verdict>,
}

pub fn range_property_checks(map: &MonotoneMap) -> RangeReport {
    let (dom, cod) = (map.dom(), map.cod());
    let range = map.range();
    let oc = lattice::order_closed_checks(cod, &range);
    let order_closed = if !oc.upwards_order_closed.holds {
        oc.upwards_order_closed.clone()
    } else {
        oc.downwards_order_closed.clone()
    };
    let interval_range = match (dom.minimum(), dom.maximum()) {
        (Some(lo), Some(hi)) => {
            let iv = cod.interval(map.apply(lo), map.apply(hi));
            Some(if iv == range {
                Verdict::pass()
            } else {
                Verdict::fail(json!({
                    "range": range.to_vec(),
                    "interval": iv.to_vec(),
                }))
            })
        }
        _ => None,
    };
    RangeReport {
        up_boc_range: oc.upwards_boundedly_order_closed,
        down_boc_range: oc.downwards_boundedly_order_closed,
        up_oc_range: oc.upwards_order_closed,
        down_oc_range: oc.downwards_order_closed,
        order_closed_range: order_closed,
        interval_range,
    }
}

/// Compares `σ[At(dom)]` with the atoms of the range as a subposet, for
/// any monotone map.
pub fn atom_image_comparison(map: &MonotoneMap) -> Verdict {
    let image_atoms = map.image_of(&map.dom().atoms());
    let range = map.range();
    let (sub, members) = map.cod().induced(&range);
    let rel_atoms = Subset::from_indices(map.cod().size(), sub.atoms().iter().map(|i| members[i]));
    if image_atoms == rel_atoms {
        Verdict::pass()
    } else {
        Verdict::fail(json!({
            "image_of_atoms": image_atoms.to_vec(),
            "atoms_of_range": rel_atoms.to_vec(),
        }))
    }
}

/// `σ[At(O)] = At(ran σ)` for an order embedding.
pub fn atom_image_check(map: &MonotoneMap) -> Result<Verdict, EmbeddingError> {
    if !map.is_embedding() {
        return Err(EmbeddingError::PreconditionFailed("map must be an order embedding"));
    }
    Ok(atom_image_comparison(map))
}

/// `σ[O⁰] = ran(σ)⁰` and `σ[O⁺] = ran(σ)⁺`, minimality taken in the range.
pub fn relative_minimal_check(map: &MonotoneMap) -> Verdict {
    let range = map.range();
    let (sub, members) = map.cod().induced(&range);
    let lift = |s: Subset| Subset::from_indices(map.cod().size(), s.iter().map(|i| members[i]));
    let rel_min = lift(sub.minimal_elements());
    let rel_pos = lift(sub.positive_part());
    let img_min = map.image_of(&map.dom().minimal_elements());
    let img_pos = map.image_of(&map.dom().positive_part());
    if rel_min == img_min && rel_pos == img_pos {
        Verdict::pass()
    } else {
        Verdict::fail(json!({
            "image_of_minimal": img_min.to_vec(),
            "minimal_of_range": rel_min.to_vec(),
            "image_of_positive": img_pos.to_vec(),
            "positive_of_range": rel_pos.to_vec(),
        }))
    }
}

/// The `k` with `order ≅ P(k)` under the bitmask labelling, if any.
pub fn powerset_rank(order: &QuasiOrder) -> Option<usize> {
    let n = order.size();
    if !n.is_power_of_two() {
        return None;
    }
    let k = n.trailing_zeros() as usize;
    (k < 16 && *order == QuasiOrder::powerset(k)).then_some(k)
}

/// `σ(a) = h[a] ∪ b` with `h: X → Y` injective and `b ∩ h[X] = ∅`, sets
/// written as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowersetDecomposition {
    pub x: usize,
    pub y: usize,
    pub h: Vec<usize>,
    pub b: usize,
}

impl PowersetDecomposition {
    pub fn new(x: usize, y: usize, h: Vec<usize>, b: usize) -> Result<Self, EmbeddingError> {
        let ok_len = h.len() == x;
        let mut used = 0usize;
        let mut ok = ok_len && b < 1 << y;
        for &t in &h {
            ok &= t < y && used >> t & 1 == 0;
            used |= 1 << t.min(63);
        }
        if !ok || used & b != 0 {
            return Err(EmbeddingError::PreconditionFailed(
                "h must be injective into Y and b disjoint from its image",
            ));
        }
        Ok(PowersetDecomposition { x, y, h, b })
    }

    pub fn apply(&self, a: usize) -> usize {
        let mut out = self.b;
        for (i, &t) in self.h.iter().enumerate() {
            if a >> i & 1 == 1 {
                out |= 1 << t;
            }
        }
        out
    }

    pub fn image(&self) -> Vec<usize> {
        (0..1 << self.x).map(|a| self.apply(a)).collect()
    }
}

/// Recovers `(h, b)` from a convex-range embedding `P(X) → P(Y)`.
pub fn powerset_decompose(map: &MonotoneMap) -> Result<PowersetDecomposition, EmbeddingError> {
    let x = powerset_rank(map.dom()).ok_or(EmbeddingError::WrongShape("power set domain"))?;
    let y = powerset_rank(map.cod()).ok_or(EmbeddingError::WrongShape("power set codomain"))?;
    if !map.is_embedding() {
        return Err(EmbeddingError::NotEmbedding);
    }
    if !lattice::is_convex(map.cod(), &map.range()) {
        return Err(EmbeddingError::NotConvexRange);
    }
    let b = map.apply(0);
    let mut h = Vec::with_capacity(x);
    for i in 0..x {
        let extra = map.apply(1 << i) & !b;
        if extra.count_ones() != 1 {
            return Err(EmbeddingError::DecompositionMismatch { input: 1 << i });
        }
        h.push(extra.trailing_zeros() as usize);
    }
    let dec = PowersetDecomposition::new(x, y, h, b)
        .map_err(|_| EmbeddingError::DecompositionMismatch { input: 0 })?;
    if let Some(input) = (0..1 << x).find(|&a| dec.apply(a) != map.apply(a)) {
        return Err(EmbeddingError::DecompositionMismatch { input });
    }
    Ok(dec)
}

/// `σ(x)(j) = x(g(j)) + y(j)` for `j` in the domain of `g`, and `y(j)`
/// elsewhere; `g` is a bijection from a subset of `J` onto `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainProdDecomposition {
    pub k: usize,
    pub m: usize,
    pub g: Vec<Option<usize>>,
    pub y: Vec<usize>,
}

impl ChainProdDecomposition {
    pub fn new(
        dom: &ChainProduct,
        cod: &ChainProduct,
        g: Vec<Option<usize>>,
        y: Vec<usize>,
    ) -> Result<Self, EmbeddingError> {
        let bad = EmbeddingError::PreconditionFailed(
            "g must be a bijection onto I and y feasible on every coordinate",
        );
        if g.len() != cod.dims() || y.len() != cod.dims() {
            return Err(bad);
        }
        let mut hit = vec![false; dom.dims()];
        for (j, gj) in g.iter().enumerate() {
            let top = match gj {
                Some(i) => {
                    if *i >= dom.dims() || hit[*i] {
                        return Err(bad);
                    }
                    hit[*i] = true;
                    dom.k() - 1 + y[j]
                }
                None => y[j],
            };
            if top >= cod.k() {
                return Err(bad);
            }
        }
        if hit.iter().any(|h| !h) {
            return Err(bad);
        }
        Ok(ChainProdDecomposition { k: dom.k(), m: cod.k(), g, y })
    }

    pub fn apply_vec(&self, x: &[usize]) -> Vec<usize> {
        self.g
            .iter()
            .zip(&self.y)
            .map(|(gj, yj)| gj.map_or(0, |i| x[i]) + yj)
            .collect()
    }

    pub fn image(&self, dom: &ChainProduct, cod: &ChainProduct) -> Vec<usize> {
        (0..dom.size()).map(|c| cod.encode(&self.apply_vec(&dom.decode(c)))).collect()
    }
}

/// Recovers `(g, y)` from a convex-range embedding `C_k^I → C_m^J`.
pub fn chainprod_decompose(
    dom: &ChainProduct,
    cod: &ChainProduct,
    image: &[usize],
) -> Result<ChainProdDecomposition, EmbeddingError> {
    let (dom_o, cod_o) = (dom.order(), cod.order());
    if image.len() != dom.size() {
        return Err(OrderError::LengthMismatch { expected: dom.size(), got: image.len() }.into());
    }
    for &v in image {
        cod_o.check_element(v)?;
    }
    if crate::order::preservation_failure(&dom_o, &cod_o, image).is_some()
        || crate::order::reflection_failure(&dom_o, &cod_o, image).is_some()
    {
        return Err(EmbeddingError::NotEmbedding);
    }
    let range = Subset::from_indices(cod.size(), image.iter().copied());
    if !lattice::is_convex(&cod_o, &range) {
        return Err(EmbeddingError::NotConvexRange);
    }
    let y = cod.decode(image[0]);
    let mut g = vec![None; cod.dims()];
    if dom.k() > 1 {
        for i in 0..dom.dims() {
            let input = dom.scaled_unit(i, 1);
            let v = cod.decode(image[input]);
            let moved: Vec<usize> = (0..cod.dims()).filter(|&j| v[j] != y[j]).collect();
            match moved.as_slice() {
                [j] if v[*j] == y[*j] + 1 && g[*j].is_none() => g[*j] = Some(i),
                _ => return Err(EmbeddingError::DecompositionMismatch { input }),
            }
        }
    }
    let dec = ChainProdDecomposition::new(dom, cod, g, y)
        .map_err(|_| EmbeddingError::DecompositionMismatch { input: 0 })?;
    let rebuilt = dec.image(dom, cod);
    if let Some(input) = (0..dom.size()).find(|&c| rebuilt[c] != image[c]) {
        return Err(EmbeddingError::DecompositionMismatch { input });
    }
    Ok(dec)
}

fn require(ok: bool, h: Hypothesis) -> Result<(), EmbeddingError> {
    if ok {
        Ok(())
    } else {
        Err(EmbeddingError::HypothesisFailed(h))
    }
}

/// Checks that `sigma` is defined exactly on `d` and maps into `cod`.
fn check_partial(sigma: &[Option<usize>], d: &Subset, cod: &QuasiOrder) -> Result<(), EmbeddingError> {
    require(
        sigma.len() == d.universe()
            && (0..sigma.len()).all(|p| sigma[p].is_some() == d.contains(p))
            && sigma.iter().flatten().all(|&v| v < cod.size()),
        Hypothesis::SigmaDomain,
    )
}

/// `σ̄(p) = ⋁ {σ(d) : d ∈ D, d <= p}`, after checking that `D` is a
/// join-dense meet subsemilattice of the JID lattice `L`, that `M` is a
/// complete semilattice, and that `σ` is monotone, preserves nonempty
/// suprema in `L` and preserves boundedness in `L`.
pub fn extend_from_join_dense(
    l: &LatticeView,
    d: &Subset,
    sigma: &[Option<usize>],
    m: &LatticeView,
) -> Result<MonotoneMap, EmbeddingError> {
    require(l.is_lattice(), Hypothesis::LLattice)?;
    let lo = l.order();
    let mo = m.order();
    let m_class = lattice::classify_view(m);
    require(m_class.complete_semilattice, Hypothesis::MCompleteSemilattice)?;
    require(lattice::check_jid(l).is_ok_and(|v| v.verdict.holds), Hypothesis::LJid)?;
    lo.check_subset(d)?;
    let density = lattice::density_checks(l, d).map_err(|_| EmbeddingError::HypothesisFailed(Hypothesis::LLattice))?;
    require(density.join_dense.holds, Hypothesis::DJoinDense)?;
    require(density.meet_subsemilattice.holds, Hypothesis::DMeetSubsemilattice)?;
    check_partial(sigma, d, mo)?;
    let s = |p: usize| sigma[p].expect("defined on D");
    let members = d.to_vec();
    require(
        members.iter().all(|&a| members.iter().all(|&b| !lo.leq(a, b) || mo.leq(s(a), s(b)))),
        Hypothesis::SigmaMonotone,
    )?;
    let mut sups_ok = true;
    let mut bounded_ok = true;
    for a in d.subsets() {
        let img = Subset::from_indices(mo.size(), a.iter().map(s));
        if !a.is_empty() {
            if let Some(top) = lo.sup(&a).filter(|&t| d.contains(t)) {
                sups_ok &= mo.sup(&img) == Some(s(top));
            }
        }
        if lo.is_bounded_above(&a) {
            bounded_ok &= mo.is_bounded_above(&img);
        }
    }
    require(sups_ok, Hypothesis::SigmaPreservesSups)?;
    require(bounded_ok, Hypothesis::SigmaPreservesBoundedness)?;

    let image: Vec<usize> = (0..lo.size())
        .map(|p| {
            let below = d.intersection(lo.down_set(p));
            let img = Subset::from_indices(mo.size(), below.iter().map(s));
            mo.sup(&img).expect("complete semilattice has all bounded sups")
        })
        .collect();
    if members.iter().any(|&p| image[p] != s(p)) {
        return Err(EmbeddingError::ConclusionFailed("extension disagrees with sigma on D"));
    }
    Ok(MonotoneMap::new(l.order_arc().clone(), m.order_arc().clone(), image)?)
}

/// Outcome of extending a convex-range embedding from a basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub extension: Vec<usize>,
    pub agrees_on_basis: Verdict,
    pub lattice_embedding: Verdict,
    pub continuous: Verdict,
    pub convex_range: Verdict,
    /// Number of continuous semilattice homomorphisms `L → M` agreeing with
    /// `σ` on `B`.
    pub continuous_extensions: usize,
    pub unique: Verdict,
}

impl TransferReport {
    pub fn all_hold(&self) -> bool {
        self.agrees_on_basis.holds
            && self.lattice_embedding.holds
            && self.continuous.holds
            && self.convex_range.holds
            && self.unique.holds
    }
}

/// Binary joins and meets preserved and the map injective.
pub fn lattice_embedding_verdict(l: &LatticeView, m: &LatticeView, image: &[usize]) -> Verdict {
    let n = l.size();
    for p in 0..n {
        for q in 0..n {
            if p != q && image[p] == image[q] {
                return Verdict::fail(json!({"collapsed": [p, q]}));
            }
            if m.join(image[p], image[q]) != Some(image[l.join_l(p, q)]) {
                return Verdict::fail(json!({"join_not_preserved": [p, q]}));
            }
            if m.meet(image[p], image[q]) != Some(image[l.meet_l(p, q)]) {
                return Verdict::fail(json!({"meet_not_preserved": [p, q]}));
            }
        }
    }
    Verdict::pass()
}

/// Checks every premise of the convexity transfer statement on the finite
/// instance, extends `σ` from `B`, and checks each conclusion, including
/// uniqueness by enumerating all continuous semilattice extensions.
pub fn verify_convexity_transfer(
    l: &LatticeView,
    b: &Subset,
    e: &Subset,
    m: &LatticeView,
    sigma: &[Option<usize>],
    budget: u64,
) -> Result<TransferReport, EmbeddingError> {
    require(l.is_lattice(), Hypothesis::LLattice)?;
    require(m.is_lattice(), Hypothesis::MLattice)?;
    let (lo, mo) = (l.order(), m.order());
    lo.check_subset(b)?;
    mo.check_subset(e)?;
    let lc = lattice::classify_view(l);
    let mc = lattice::classify_view(m);
    require(lc.complete_semilattice, Hypothesis::LCompleteSemilattice)?;
    require(mc.complete_semilattice, Hypothesis::MCompleteSemilattice)?;
    require(lattice::check_jid(l).is_ok_and(|v| v.verdict.holds), Hypothesis::LJid)?;
    require(lattice::check_jid(m).is_ok_and(|v| v.verdict.holds), Hypothesis::MJid)?;
    require(lattice::is_flat_complete(m).unwrap_or(false), Hypothesis::MFlatComplete)?;
    let zero = l.bottom().expect("finite lattice");
    require(b.contains(zero), Hypothesis::ZeroInB)?;
    let bd = lattice::density_checks(l, b).expect("checked lattice");
    require(bd.strongly_interval_predense.holds, Hypothesis::BStronglyIntervalPredense)?;
    require(bd.basis.holds && bd.meet_subsemilattice.holds, Hypothesis::BBasis)?;
    let ed = lattice::density_checks(m, e).expect("checked lattice");
    require(ed.join_dense.holds, Hypothesis::EJoinDense)?;
    require(lattice::is_preregular(mo, e), Hypothesis::EPreregular)?;
    require(lattice::is_sublattice(m, e), Hypothesis::ESublattice)?;
    check_partial(sigma, b, mo)?;
    let members = b.to_vec();
    let s = |p: usize| sigma[p].expect("defined on B");
    require(members.iter().all(|&p| e.contains(s(p))), Hypothesis::SigmaIntoE)?;
    require(
        members
            .iter()
            .all(|&p| members.iter().all(|&q| lo.leq(p, q) == mo.leq(s(p), s(q)))),
        Hypothesis::SigmaEmbedding,
    )?;
    let range = Subset::from_indices(mo.size(), members.iter().map(|&p| s(p)));
    let (e_order, e_members) = mo.induced(e);
    let range_in_e = Subset::from_indices(
        e_members.len(),
        (0..e_members.len()).filter(|&i| range.contains(e_members[i])),
    );
    require(lattice::is_convex(&e_order, &range_in_e), Hypothesis::SigmaConvexRangeInE)?;

    let ext = extend_from_join_dense(l, b, sigma, m)?;
    let image = ext.image().to_vec();
    let agrees = Verdict::from_witness(
        members
            .iter()
            .find(|&&p| image[p] != s(p))
            .map(|&p| json!({"element": p})),
    );
    let lattice_embedding = lattice_embedding_verdict(l, m, &image);
    let cont = continuity_of(lo, mo, &image);
    let continuous = if cont.preserves_nonempty_sups.holds {
        cont.preserves_nonempty_infs
    } else {
        cont.preserves_nonempty_sups
    };
    let convex_range = lattice::convexity(mo, &ext.range());

    let (candidates, _) = MapSearch::monotone(lo, mo).fixed(sigma.to_vec()).budget(budget).run()?;
    let extensions: Vec<Vec<usize>> = candidates
        .into_iter()
        .filter(|img| continuity_of(lo, mo, img).preserves_nonempty_sups.holds)
        .collect();
    let unique = if extensions.len() == 1 && extensions[0] == image {
        Verdict::pass()
    } else {
        Verdict::fail(json!({"extensions": extensions}))
    };
    Ok(TransferReport {
        extension: image,
        agrees_on_basis: agrees,
        lattice_embedding,
        continuous,
        convex_range,
        continuous_extensions: extensions.len(),
        unique,
    })
}

/// Restricts a total map to `d`, as a partial map.
pub fn restrict(image: &[usize], d: &Subset) -> Vec<Option<usize>> {
    (0..image.len()).map(|p| d.contains(p).then_some(image[p])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: QuasiOrder) -> Arc<QuasiOrder> {
        Arc::new(o)
    }

    fn census(dom: QuasiOrder, cod: QuasiOrder, f: RangeFilters) -> EmbeddingCensus {
        enumerate_embeddings(arc(dom), arc(cod), f, DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn chain_embeddings() {
        let c = census(QuasiOrder::chain(2), QuasiOrder::chain(3), RangeFilters::NONE);
        let images: Vec<_> = c.images().map(<[usize]>::to_vec).collect();
        assert_eq!(images, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let c = census(QuasiOrder::chain(2), QuasiOrder::chain(3), RangeFilters::CONVEX);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn automorphisms_of_p3_are_permutations() {
        let c = census(QuasiOrder::powerset(3), QuasiOrder::powerset(3), RangeFilters::NONE);
        assert_eq!(c.len(), 6);
        for e in &c.maps {
            let sigma = MonotoneMap::new(arc(QuasiOrder::powerset(3)), arc(QuasiOrder::powerset(3)), e.image.clone()).unwrap();
            let d = powerset_decompose(&sigma).unwrap();
            assert_eq!(d.b, 0);
        }
    }

    fn counterexample() -> MonotoneMap {
        MonotoneMap::new(arc(QuasiOrder::powerset(2)), arc(QuasiOrder::powerset(3)), vec![0, 1, 2, 7])
            .unwrap()
    }

    #[test]
    fn counterexample_is_embedding_without_convex_range() {
        let sigma = counterexample();
        let flags = MapFlags::compute(sigma.dom(), sigma.cod(), sigma.image());
        assert!(flags.embedding && !flags.convex_range);
        assert_eq!(powerset_decompose(&sigma), Err(EmbeddingError::NotConvexRange));
    }

    #[test]
    fn identity_decompositions() {
        let id = MonotoneMap::identity(arc(QuasiOrder::powerset(2)));
        let d = powerset_decompose(&id).unwrap();
        assert_eq!((d.h.clone(), d.b), (vec![0, 1], 0));
        let c = ChainProduct::new(2, 2);
        let d = chainprod_decompose(&c, &c, &[0, 1, 2, 3]).unwrap();
        assert_eq!(d.g, vec![Some(0), Some(1)]);
        assert_eq!(d.y, vec![0, 0]);
    }

    #[test]
    fn chain_shifts() {
        let (d, c) = (ChainProduct::new(3, 1), ChainProduct::new(5, 1));
        let census = census(d.order(), c.order(), RangeFilters::CONVEX);
        let images: Vec<_> = census.images().map(<[usize]>::to_vec).collect();
        assert_eq!(images, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]);
        for img in &images {
            let dec = chainprod_decompose(&d, &c, img).unwrap();
            assert_eq!(dec.y, vec![img[0]]);
        }
    }

    #[test]
    fn powerset_form_rejects_bad_input() {
        assert!(PowersetDecomposition::new(2, 3, vec![0, 0], 0).is_err());
        assert!(PowersetDecomposition::new(2, 3, vec![0, 1], 1).is_err());
        let ok = PowersetDecomposition::new(2, 3, vec![2, 0], 2).unwrap();
        assert_eq!(ok.image(), vec![2, 6, 3, 7]);
    }

    #[test]
    fn continuity_of_isomorphism_and_collapse() {
        let id = MonotoneMap::identity(arc(QuasiOrder::diamond_m3()));
        let r = continuity_checks(&id);
        assert!(r.preserves_nonempty_sups.holds && r.preserves_all_infs.holds && r.scott_continuous.holds);

        // M3 onto the chain 0 < 1 < 2 with two atoms going to 1 and one to 2:
        // the join of the first two atoms is the top, but their images join to 1.
        let m = MonotoneMap::new(arc(QuasiOrder::diamond_m3()), arc(QuasiOrder::chain(3)), vec![0, 1, 1, 2, 2]).unwrap();
        let r = continuity_checks(&m);
        assert!(!r.preserves_nonempty_sups.holds);
        assert!(r.scott_continuous.holds);
    }

    #[test]
    fn four_element_sup_collapse() {
        // P(2) onto 0 < 1 < 2 with both singletons at 1: {0} ∨ {1} = X ↦ 2
        let m = MonotoneMap::new(arc(QuasiOrder::powerset(2)), arc(QuasiOrder::chain(3)), vec![0, 1, 1, 2]).unwrap();
        let r = continuity_checks(&m);
        assert!(!r.preserves_nonempty_sups.holds);
        assert_eq!(r.preserves_nonempty_sups.witness.as_ref().unwrap()["subset"], json!([1, 2]));
    }

    #[test]
    fn empty_sup_is_separate() {
        // {1, 2} of the chain 0 < 1 < 2, included: preserves nonempty sups
        // but not the minimum.
        let m = MonotoneMap::new(arc(QuasiOrder::chain(2)), arc(QuasiOrder::chain(3)), vec![1, 2]).unwrap();
        let r = continuity_checks(&m);
        assert!(r.preserves_nonempty_sups.holds);
        assert!(!r.preserves_all_sups.holds);
    }

    #[test]
    fn boundedness() {
        let anti = arc(QuasiOrder::antichain(2));
        let with_top = arc(QuasiOrder::build(3, &[(0, 2), (1, 2)]).unwrap());
        let incl = MonotoneMap::new(anti.clone(), with_top, vec![0, 1]).unwrap();
        let r = boundedness_preservation(&incl);
        assert!(r.bounded_to_bounded.holds);
        assert!(!r.unbounded_to_unbounded.holds);
        let r = boundedness_preservation(&MonotoneMap::identity(anti));
        assert!(r.bounded_to_bounded.holds && r.unbounded_to_unbounded.holds);
    }

    #[test]
    fn range_properties() {
        // {0} ↦ {1} shifted: P(2) into P(3) with b = {2}
        let sigma = MonotoneMap::new(arc(QuasiOrder::powerset(2)), arc(QuasiOrder::powerset(3)), vec![4, 5, 6, 7]).unwrap();
        let r = range_property_checks(&sigma);
        assert!(r.interval_range.unwrap().holds);
        assert!(r.up_boc_range.holds && r.order_closed_range.holds);
        let r = range_property_checks(&counterexample());
        assert!(!r.interval_range.unwrap().holds);
    }

    #[test]
    fn atom_images() {
        let id = MonotoneMap::identity(arc(QuasiOrder::powerset(3)));
        assert!(atom_image_check(&id).unwrap().holds);
        let v = QuasiOrder::build(3, &[(0, 1), (0, 2)]).unwrap();
        let m = MonotoneMap::new(arc(v), arc(QuasiOrder::chain(3)), vec![0, 1, 2]).unwrap();
        assert!(matches!(atom_image_check(&m), Err(EmbeddingError::PreconditionFailed(_))));
        // a constant map sends the atom of 0 < 1 to a range with no atoms
        let m = MonotoneMap::new(arc(QuasiOrder::chain(2)), arc(QuasiOrder::chain(2)), vec![0, 0]).unwrap();
        assert!(!atom_image_comparison(&m).holds);
    }

    #[test]
    fn extension_from_full_set_is_identity() {
        let l = LatticeView::lattice(QuasiOrder::powerset(2)).unwrap();
        let d = l.order().full_set();
        let sigma: Vec<Option<usize>> = (0..4).map(Some).collect();
        let ext = extend_from_join_dense(&l, &d, &sigma, &l).unwrap();
        assert_eq!(ext.image(), &[0, 1, 2, 3]);
    }

    #[test]
    fn extension_from_singletons_recovers_powerset_map() {
        let l = LatticeView::lattice(QuasiOrder::powerset(2)).unwrap();
        let m = LatticeView::lattice(QuasiOrder::powerset(3)).unwrap();
        let dec = PowersetDecomposition::new(2, 3, vec![2, 0], 2).unwrap();
        let full = dec.image();
        let d = Subset::from_indices(4, [0, 1, 2]);
        let ext = extend_from_join_dense(&l, &d, &restrict(&full, &d), &m).unwrap();
        assert_eq!(ext.image(), full.as_slice());
    }

    #[test]
    fn transfer_on_permutation() {
        let l = LatticeView::lattice(QuasiOrder::powerset(3)).unwrap();
        let b = Subset::from_indices(8, [0, 1, 2, 4]);
        let e = l.order().full_set();
        let perm = PowersetDecomposition::new(3, 3, vec![1, 2, 0], 0).unwrap().image();
        let r = verify_convexity_transfer(&l, &b, &e, &l, &restrict(&perm, &b), DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.extension, perm);
        assert_eq!(r.continuous_extensions, 1);
    }

    #[test]
    fn transfer_rejects_non_preregular_e() {
        // 0 < a, b < c < d; E = {0, a, b, d} is join dense but a ∨ b = c ∉ E.
        let m = LatticeView::lattice(
            QuasiOrder::build(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap(),
        )
        .unwrap();
        let l = LatticeView::lattice(QuasiOrder::chain(2)).unwrap();
        let b = l.order().full_set();
        let e = Subset::from_indices(5, [0, 1, 2, 4]);
        let err = verify_convexity_transfer(&l, &b, &e, &m, &[Some(0), Some(1)], DEFAULT_NODE_BUDGET)
            .unwrap_err();
        assert_eq!(err, EmbeddingError::HypothesisFailed(Hypothesis::EPreregular));
        assert_eq!(err.to_string(), "hypothesis failed: E-preregular");
    }

    #[test]
    fn budget_is_enforced() {
        let r = enumerate_embeddings(
            arc(QuasiOrder::powerset(2)),
            arc(QuasiOrder::powerset(3)),
            RangeFilters::NONE,
            5,
        );
        assert_eq!(r.unwrap_err(), EmbeddingError::BudgetExceeded { budget: 5 });
    }

    #[test]
    fn fixed_values_pin_the_search() {
        let c3 = QuasiOrder::chain(3);
        let (maps, _) = MapSearch::monotone(&c3, &c3).fixed(vec![None, Some(1), None]).run().unwrap();
        assert_eq!(maps.len(), 4);
        assert!(maps.iter().all(|m| m[1] == 1));
    }
}
