//! Classification of finite posets and of subsets of them.
//!
//! Subset properties always take the ambient order explicitly. Suprema
//! "inside" a subset `A` are computed from the upper bounds that lie in `A`,
//! never by restricting the ambient join table.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::order::{OrderError, QuasiOrder};
use crate::report::{Verdict, VerdictMap};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("not a lattice: {0} and {1} lack a join or a meet")]
    NotALattice(usize, usize),
    #[error("the empty order is not a lattice")]
    Empty,
}

/// Above this carrier size, subset-quantified checks switch from literal
/// enumeration to sampling or to structural facts about finite lattices.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// A partial order together with its (partial) binary join and meet tables.
#[derive(Clone, Debug)]
pub struct LatticeView {
    order: Arc<QuasiOrder>,
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
    lattice: bool,
}

impl LatticeView {
    /// Tabulates joins and meets of a partial order; missing entries mean
    /// the pair has no supremum (infimum).
    pub fn new(order: impl Into<Arc<QuasiOrder>>) -> Result<Self, LatticeError> {
        let order = order.into();
        order.require_partial_order()?;
        let n = order.size();
        let mut join = vec![None; n * n];
        let mut meet = vec![None; n * n];
        for p in 0..n {
            for q in p..n {
                let j = order.join(p, q);
                let m = order.meet(p, q);
                join[p * n + q] = j;
                join[q * n + p] = j;
                meet[p * n + q] = m;
                meet[q * n + p] = m;
            }
        }
        let lattice = n > 0 && join.iter().chain(&meet).all(Option::is_some);
        Ok(LatticeView { order, join, meet, lattice })
    }

    /// Like [`LatticeView::new`] but fails unless the order is a lattice.
    pub fn lattice(order: impl Into<Arc<QuasiOrder>>) -> Result<Self, LatticeError> {
        let view = Self::new(order)?;
        view.require_lattice()?;
        Ok(view)
    }

    pub fn require_lattice(&self) -> Result<(), LatticeError> {
        if self.lattice {
            return Ok(());
        }
        let n = self.size();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let idx = (0..n * n)
            .find(|&i| self.join[i].is_none() || self.meet[i].is_none())
            .unwrap();
        Err(LatticeError::NotALattice(idx / n, idx % n))
    }

    pub fn order(&self) -> &QuasiOrder {
        &self.order
    }

    pub fn order_arc(&self) -> &Arc<QuasiOrder> {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice
    }

    #[inline]
    pub fn join(&self, p: usize, q: usize) -> Option<usize> {
        self.join[p * self.size() + q]
    }

    #[inline]
    pub fn meet(&self, p: usize, q: usize) -> Option<usize> {
        self.meet[p * self.size() + q]
    }

    /// Total join; panics unless the view is a lattice.
    #[inline]
    pub fn join_l(&self, p: usize, q: usize) -> usize {
        self.join(p, q).expect("join exists in a lattice")
    }

    #[inline]
    pub fn meet_l(&self, p: usize, q: usize) -> usize {
        self.meet(p, q).expect("meet exists in a lattice")
    }

    pub fn bottom(&self) -> Option<usize> {
        self.order.minimum()
    }

    pub fn top(&self) -> Option<usize> {
        self.order.maximum()
    }

    /// All complements of `p` in a bounded lattice.
    pub fn complements(&self, p: usize) -> Subset {
        let (Some(zero), Some(one)) = (self.bottom(), self.top()) else {
            return self.order.empty_set();
        };
        Subset::from_indices(
            self.size(),
            (0..self.size())
                .filter(|&q| self.meet(p, q) == Some(zero) && self.join(p, q) == Some(one)),
        )
    }

    pub fn sup(&self, a: &Subset) -> Option<usize> {
        self.order.sup(a)
    }

    pub fn inf(&self, a: &Subset) -> Option<usize> {
        self.order.inf(a)
    }
}

/// Order-theoretic flags of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub lattice: bool,
    pub join_semilattice: bool,
    pub meet_semilattice: bool,
    pub complete_semilattice: bool,
    pub complete_lattice: bool,
    pub pointed: bool,
    pub bounded: bool,
    pub distributive: bool,
    pub complemented: bool,
    pub boolean: bool,
}

/// Classifies a partial order.
///
/// `boolean` means a bounded distributive lattice in which every element has
/// a complement.
pub fn classify(order: &QuasiOrder) -> Result<Classification, LatticeError> {
    let view = LatticeView::new(order.clone())?;
    Ok(classify_view(&view))
}

pub fn classify_view(view: &LatticeView) -> Classification {
    let order = view.order();
    let n = order.size();
    let pairs = || (0..n).flat_map(move |p| (0..n).map(move |q| (p, q)));
    let join_semilattice = n > 0 && pairs().all(|(p, q)| view.join(p, q).is_some());
    let meet_semilattice = n > 0 && pairs().all(|(p, q)| view.meet(p, q).is_some());
    let lattice = join_semilattice && meet_semilattice;
    let pointed = order.minimum().is_some();
    let has_top = order.maximum().is_some();

    let (complete_semilattice, complete_lattice) = if n <= EXHAUSTIVE_LIMIT {
        let mut cs = join_semilattice;
        let mut cl = lattice;
        for a in order.full_set().subsets() {
            let sup = order.sup(&a);
            if cs && order.is_bounded_above(&a) && sup.is_none() {
                cs = false;
            }
            if cl && (sup.is_none() || order.inf(&a).is_none()) {
                cl = false;
            }
            if !cs && !cl {
                break;
            }
        }
        (cs, cl)
    } else {
        // Finite: pairwise joins give every nonempty join; the empty join
        // is the minimum.
        (join_semilattice && pointed, lattice && pointed && has_top)
    };

    let distributive = lattice && distributivity_witness(view).is_none();
    let bounded = pointed && has_top;
    let complemented =
        lattice && bounded && (0..n).all(|p| !view.complements(p).is_empty());
    Classification {
        lattice,
        join_semilattice,
        meet_semilattice,
        complete_semilattice,
        complete_lattice,
        pointed,
        bounded,
        distributive,
        complemented,
        boolean: complemented && distributive,
    }
}

fn distributivity_witness(view: &LatticeView) -> Option<(usize, usize, usize)> {
    let n = view.size();
    for a in 0..n {
        for b in 0..n {
            for c in b + 1..n {
                let lhs = view.meet_l(a, view.join_l(b, c));
                let rhs = view.join_l(view.meet_l(a, b), view.meet_l(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples.
pub fn distributivity(view: &LatticeView) -> Result<Verdict, LatticeError> {
    view.require_lattice()?;
    Ok(Verdict::from_witness(
        distributivity_witness(view).map(|(a, b, c)| json!({"a": a, "b": b, "c": c})),
    ))
}

pub fn is_distributive(view: &LatticeView) -> Result<bool, LatticeError> {
    distributivity(view).map(|v| v.holds)
}

/// How the subsets `B` in an infinite distributive law were chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive { subsets: u64 },
    Sampled { seed: u64, random_subsets: u64, small_subsets: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfiniteLawVerdict {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub mode: CheckMode,
}

/// Seed used when the join-infinite law is sampled.
pub const DEFAULT_LAW_SEED: u64 = 0x5eed_1a77;
const LAW_SAMPLES: u64 = 10_000;

/// Join-infinite distributivity: `a ∧ ⋁B = ⋁(a ∧ B)`.
pub fn check_jid(view: &LatticeView) -> Result<InfiniteLawVerdict, LatticeError> {
    infinite_law(view, false, DEFAULT_LAW_SEED)
}

/// Meet-infinite distributivity: `a ∨ ⋀B = ⋀(a ∨ B)`.
pub fn check_mid(view: &LatticeView) -> Result<InfiniteLawVerdict, LatticeError> {
    infinite_law(view, true, DEFAULT_LAW_SEED)
}

pub fn check_jid_seeded(view: &LatticeView, seed: u64) -> Result<InfiniteLawVerdict, LatticeError> {
    infinite_law(view, false, seed)
}

fn infinite_law(
    view: &LatticeView,
    dual: bool,
    seed: u64,
) -> Result<InfiniteLawVerdict, LatticeError> {
    view.require_lattice()?;
    let n = view.size();
    let order = view.order();
    let outer = |b: &Subset| if dual { order.inf(b) } else { order.sup(b) };
    let inner: fn(&LatticeView, usize, usize) -> Option<usize> =
        if dual { LatticeView::join } else { LatticeView::meet };
    let violation = |b: &Subset| -> Option<serde_json::Value> {
        let big = outer(b)?;
        for a in 0..n {
            let lhs = inner(view, a, big).unwrap();
            let mapped = Subset::from_indices(n, b.iter().map(|x| inner(view, a, x).unwrap()));
            if outer(&mapped) != Some(lhs) {
                return Some(json!({"a": a, "b": b.to_vec()}));
            }
        }
        None
    };

    if n <= EXHAUSTIVE_LIMIT {
        let mut count = 0;
        for b in order.full_set().subsets() {
            count += 1;
            if let Some(w) = violation(&b) {
                return Ok(InfiniteLawVerdict {
                    verdict: Verdict::fail(w),
                    mode: CheckMode::Exhaustive { subsets: count },
                });
            }
        }
        return Ok(InfiniteLawVerdict {
            verdict: Verdict::pass(),
            mode: CheckMode::Exhaustive { subsets: count },
        });
    }

    let mut small = 0;
    let mut found = None;
    'small: for size in 0..=3usize {
        for b in small_subsets(n, size) {
            small += 1;
            if let Some(w) = violation(&b) {
                found = Some(w);
                break 'small;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = 0;
    if found.is_none() {
        for _ in 0..LAW_SAMPLES {
            random += 1;
            let b = Subset::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
            if let Some(w) = violation(&b) {
                found = Some(w);
                break;
            }
        }
    }
    Ok(InfiniteLawVerdict {
        verdict: Verdict::from_witness(found),
        mode: CheckMode::Sampled { seed, random_subsets: random, small_subsets: small },
    })
}

fn small_subsets(n: usize, size: usize) -> Vec<Subset> {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if cur.len() == size {
            out.push(Subset::from_indices(n, cur.iter().copied()));
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, size, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether `[p, q] ⊆ A` for all `p <= q` in `A`. The witness names the
/// endpoints and one missing element of the interval.
pub fn convexity(order: &QuasiOrder, a: &Subset) -> Verdict {
    for p in a.iter() {
        for q in a.iter() {
            if order.leq(p, q) {
                let missing = order.interval(p, q).difference(a);
                if let Some(r) = missing.first() {
                    return Verdict::fail(json!({"lower": p, "upper": q, "missing": r}));
                }
            }
        }
    }
    Verdict::pass()
}

pub fn is_convex(order: &QuasiOrder, a: &Subset) -> bool {
    convexity(order, a).holds
}

/// Supremum of `b` computed in the subposet `a`.
pub fn sup_within(order: &QuasiOrder, a: &Subset, b: &Subset) -> Option<usize> {
    order.least_of(&order.upper_bounds(b).intersection(a))
}

pub fn inf_within(order: &QuasiOrder, a: &Subset, b: &Subset) -> Option<usize> {
    order.greatest_of(&order.lower_bounds(b).intersection(a))
}

/// Upward/downward halves of preregularity and regularity of a subset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreregularityReport {
    pub upwards_preregular: Verdict,
    pub downwards_preregular: Verdict,
    pub upwards_regular: Verdict,
    pub downwards_regular: Verdict,
}

impl PreregularityReport {
    pub fn preregular(&self) -> bool {
        self.upwards_preregular.holds && self.downwards_preregular.holds
    }

    pub fn regular(&self) -> bool {
        self.upwards_regular.holds && self.downwards_regular.holds
    }
}

fn first_smallest<F>(a: &Subset, mut bad: F) -> Option<serde_json::Value>
where
    F: FnMut(&Subset) -> Option<serde_json::Value>,
{
    let mut best: Option<(usize, serde_json::Value)> = None;
    for b in a.subsets() {
        if best.as_ref().is_some_and(|(len, _)| b.len() >= *len) {
            continue;
        }
        if let Some(w) = bad(&b) {
            best = Some((b.len(), w));
        }
    }
    best.map(|(_, w)| w)
}

/// Compares suprema and infima inside `a` with those in the ambient order,
/// over every `B ⊆ A`.
pub fn preregularity(order: &QuasiOrder, a: &Subset) -> PreregularityReport {
    let up_fail = |b: &Subset| {
        let inside = sup_within(order, a, b)?;
        let outside = order.sup(b);
        (outside != Some(inside))
            .then(|| json!({"subset": b.to_vec(), "sup_in_subset": inside, "sup_in_order": outside}))
    };
    let down_fail = |b: &Subset| {
        let inside = inf_within(order, a, b)?;
        let outside = order.inf(b);
        (outside != Some(inside))
            .then(|| json!({"subset": b.to_vec(), "inf_in_subset": inside, "inf_in_order": outside}))
    };
    let nonempty = |f: &dyn Fn(&Subset) -> Option<serde_json::Value>| {
        first_smallest(a, |b| if b.is_empty() { None } else { f(b) })
    };
    let up_pre = nonempty(&up_fail);
    let down_pre = nonempty(&down_fail);
    let empty = order.empty_set();
    let up_reg = up_pre.clone().or_else(|| up_fail(&empty));
    let down_reg = down_pre.clone().or_else(|| down_fail(&empty));
    PreregularityReport {
        upwards_preregular: Verdict::from_witness(up_pre),
        downwards_preregular: Verdict::from_witness(down_pre),
        upwards_regular: Verdict::from_witness(up_reg),
        downwards_regular: Verdict::from_witness(down_reg),
    }
}

pub fn is_preregular(order: &QuasiOrder, a: &Subset) -> bool {
    preregularity(order, a).preregular()
}

pub fn is_regular(order: &QuasiOrder, a: &Subset) -> bool {
    preregularity(order, a).regular()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderClosedReport {
    pub upwards_boundedly_order_closed: Verdict,
    pub downwards_boundedly_order_closed: Verdict,
    pub upwards_order_closed: Verdict,
    pub downwards_order_closed: Verdict,
}

impl OrderClosedReport {
    pub fn boundedly_order_closed(&self) -> bool {
        self.upwards_boundedly_order_closed.holds && self.downwards_boundedly_order_closed.holds
    }

    pub fn order_closed(&self) -> bool {
        self.upwards_order_closed.holds && self.downwards_order_closed.holds
    }
}

/// Which ambient suprema/infima of nonempty `B ⊆ A` land back in `A`; the
/// bounded variants only consider `B` with a bound inside `A`.
pub fn order_closed_checks(order: &QuasiOrder, a: &Subset) -> OrderClosedReport {
    let check = |dual: bool, bounded: bool| {
        first_smallest(a, |b| {
            if b.is_empty() {
                return None;
            }
            let (bounds, s) = if dual {
                (order.lower_bounds(b), order.inf(b))
            } else {
                (order.upper_bounds(b), order.sup(b))
            };
            if bounded && !bounds.intersects(a) {
                return None;
            }
            let s = s?;
            (!a.contains(s)).then(|| json!({"subset": b.to_vec(), "escapes_to": s}))
        })
    };
    OrderClosedReport {
        upwards_boundedly_order_closed: Verdict::from_witness(check(false, true)),
        downwards_boundedly_order_closed: Verdict::from_witness(check(true, true)),
        upwards_order_closed: Verdict::from_witness(check(false, false)),
        downwards_order_closed: Verdict::from_witness(check(true, false)),
    }
}

/// `{⋁B : B ⊆ A, the supremum exists}`, including `B = ∅` (which
/// contributes the minimum when there is one).
pub fn order_closure_up(order: &QuasiOrder, a: &Subset) -> Subset {
    let mut out = order.empty_set();
    for b in a.subsets() {
        if let Some(s) = order.sup(&b) {
            out.insert(s);
        }
    }
    out
}

pub fn order_closure_down(order: &QuasiOrder, a: &Subset) -> Subset {
    let mut out = order.empty_set();
    for b in a.subsets() {
        if let Some(s) = order.inf(&b) {
            out.insert(s);
        }
    }
    out
}

/// Some `p` is the meet of every two distinct members of `a`.
pub fn is_flat(order: &QuasiOrder, a: &Subset) -> bool {
    let members = a.to_vec();
    if members.len() < 2 {
        return order.size() > 0;
    }
    let Some(p) = order.meet(members[0], members[1]) else {
        return false;
    };
    members.iter().enumerate().all(|(i, &x)| {
        members[i + 1..].iter().all(|&y| order.meet(x, y) == Some(p))
    })
}

/// Every flat subset has a supremum.
pub fn is_flat_complete(view: &LatticeView) -> Result<bool, LatticeError> {
    view.require_lattice()?;
    let order = view.order();
    if order.size() > EXHAUSTIVE_LIMIT {
        // finite lattices have all suprema
        return Ok(true);
    }
    Ok(order
        .full_set()
        .subsets()
        .all(|a| !is_flat(order, &a) || order.sup(&a).is_some()))
}

/// Density notions for a subset `D` of a finite lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub dense: Verdict,
    pub join_dense: Verdict,
    pub interval_predense: Verdict,
    pub strongly_interval_predense: Verdict,
    /// Closed under the ambient binary meet.
    pub meet_subsemilattice: Verdict,
    /// Whenever two members have an infimum inside `D` it is their ambient
    /// meet.
    pub meet_agreement: Verdict,
    /// Meet agreement plus: every element is the join of a pairwise
    /// incompatible family drawn from `D`.
    pub basis: Verdict,
}

impl DensityReport {
    pub fn to_verdicts(&self) -> VerdictMap {
        let mut m = VerdictMap::new();
        m.insert("dense", self.dense.clone());
        m.insert("join_dense", self.join_dense.clone());
        m.insert("interval_predense", self.interval_predense.clone());
        m.insert("strongly_interval_predense", self.strongly_interval_predense.clone());
        m.insert("meet_subsemilattice", self.meet_subsemilattice.clone());
        m.insert("meet_agreement", self.meet_agreement.clone());
        m.insert("basis", self.basis.clone());
        m
    }
}

pub fn density_checks(view: &LatticeView, d: &Subset) -> Result<DensityReport, LatticeError> {
    view.require_lattice()?;
    let order = view.order();
    order.check_subset(d)?;
    let n = order.size();
    let zero = view.bottom().expect("finite lattices are pointed");

    let dense = if order.is_dense(d) {
        Verdict::pass()
    } else {
        let positive = order.positive_part();
        let d_pos = d.intersection(&positive);
        let p = positive
            .iter()
            .find(|&p| !order.down_set(p).intersects(&d_pos))
            .unwrap();
        Verdict::fail(json!({"uncovered": p}))
    };

    let join_dense = Verdict::from_witness((0..n).find_map(|p| {
        let below = d.intersection(order.down_set(p));
        let s = order.sup(&below);
        (s != Some(p)).then(|| json!({"element": p, "sup_of_dense_part": s}))
    }));

    let strict_pairs: Vec<(usize, usize)> = order.strict_pairs().collect();
    let interval_predense = Verdict::from_witness(strict_pairs.iter().find_map(|&(p, q)| {
        let ok = d.iter().any(|x| !order.leq(x, p) && order.leq(x, q));
        (!ok).then(|| json!({"lower": p, "upper": q}))
    }));
    let strongly = Verdict::from_witness(strict_pairs.iter().find_map(|&(p, q)| {
        let ok = d.iter().any(|x| {
            let m = view.meet_l(x, p);
            order.leq(x, q) && m != x && d.contains(m)
        });
        (!ok).then(|| json!({"lower": p, "upper": q}))
    }));

    let members = d.to_vec();
    let meet_subsemilattice = Verdict::from_witness(members.iter().find_map(|&x| {
        members.iter().find_map(|&y| {
            let m = view.meet_l(x, y);
            (!d.contains(m)).then(|| json!({"a": x, "b": y, "meet": m}))
        })
    }));
    let meet_agreement = Verdict::from_witness(members.iter().find_map(|&x| {
        members.iter().find_map(|&y| {
            let pair = Subset::from_indices(n, [x, y]);
            let inside = inf_within(order, d, &pair)?;
            let m = view.meet_l(x, y);
            (inside != m).then(|| json!({"a": x, "b": y, "inf_in_subset": inside, "meet": m}))
        })
    }));
    let basis = if !meet_agreement.holds {
        meet_agreement.clone()
    } else {
        Verdict::from_witness(
            (0..n)
                .find(|&a| incompatible_family(view, d, zero, a).is_none())
                .map(|a| json!({"no_incompatible_family_for": a})),
        )
    };

    Ok(DensityReport {
        dense,
        join_dense,
        interval_predense,
        strongly_interval_predense: strongly,
        meet_subsemilattice,
        meet_agreement,
        basis,
    })
}

/// A family in `d` of elements with pairwise meet `zero` whose join is
/// `target`. The empty family covers `target == zero`.
pub fn incompatible_family(
    view: &LatticeView,
    d: &Subset,
    zero: usize,
    target: usize,
) -> Option<Vec<usize>> {
    if target == zero {
        return Some(Vec::new());
    }
    let order = view.order();
    let mut candidates = d.intersection(order.down_set(target));
    candidates.remove(zero);
    let candidates = candidates.to_vec();

    fn search(
        view: &LatticeView,
        cands: &[usize],
        start: usize,
        zero: usize,
        target: usize,
        current_join: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if current_join == target {
            return true;
        }
        for i in start..cands.len() {
            let c = cands[i];
            if chosen.iter().all(|&x| view.meet_l(x, c) == zero) {
                chosen.push(c);
                if search(view, cands, i + 1, zero, target, view.join_l(current_join, c), chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::new();
    search(view, &candidates, 0, zero, target, zero, &mut chosen).then_some(chosen)
}

/// Closed under ambient binary joins and meets.
pub fn is_sublattice(view: &LatticeView, a: &Subset) -> bool {
    a.iter().all(|x| {
        a.iter().all(|y| {
            view.join(x, y).is_some_and(|j| a.contains(j))
                && view.meet(x, y).is_some_and(|m| a.contains(m))
        })
    })
}

/// Atoms in the usual lattice sense: elements covering the bottom. In a
/// chain `0 < 1 < 2` this is `{1}`, while [`QuasiOrder::atoms`] gives
/// `{1, 2}`.
pub fn covers_of_bottom(view: &LatticeView) -> Subset {
    let order = view.order();
    let Some(zero) = view.bottom() else {
        return order.empty_set();
    };
    let mut out = order.empty_set();
    for p in 0..order.size() {
        if order.lt(zero, p) && order.interval(zero, p).len() == 2 {
            out.insert(p);
        }
    }
    out
}

/// A subset of a fixed ambient order with its verdicts computed on first
/// use.
#[derive(Debug)]
pub struct SubposetAnalysis {
    parent: Arc<QuasiOrder>,
    subset: Subset,
    convex: OnceLock<Verdict>,
    preregularity: OnceLock<PreregularityReport>,
    order_closed: OnceLock<OrderClosedReport>,
}

impl SubposetAnalysis {
    pub fn new(parent: Arc<QuasiOrder>, subset: Subset) -> Result<Self, LatticeError> {
        parent.check_subset(&subset)?;
        Ok(SubposetAnalysis {
            parent,
            subset,
            convex: OnceLock::new(),
            preregularity: OnceLock::new(),
            order_closed: OnceLock::new(),
        })
    }

    pub fn parent(&self) -> &QuasiOrder {
        &self.parent
    }

    pub fn subset(&self) -> &Subset {
        &self.subset
    }

    pub fn convexity(&self) -> &Verdict {
        self.convex.get_or_init(|| convexity(&self.parent, &self.subset))
    }

    pub fn preregularity(&self) -> &PreregularityReport {
        self.preregularity.get_or_init(|| preregularity(&self.parent, &self.subset))
    }

    pub fn order_closed(&self) -> &OrderClosedReport {
        self.order_closed.get_or_init(|| order_closed_checks(&self.parent, &self.subset))
    }

    /// All cached subset properties as named verdicts.
    pub fn verdicts(&self) -> VerdictMap {
        let pre = self.preregularity();
        let oc = self.order_closed();
        let mut m = VerdictMap::new();
        m.insert("convex", self.convexity().clone());
        m.insert("upwards_preregular", pre.upwards_preregular.clone());
        m.insert("downwards_preregular", pre.downwards_preregular.clone());
        m.insert("upwards_regular", pre.upwards_regular.clone());
        m.insert("downwards_regular", pre.downwards_regular.clone());
        m.insert("up_boc", oc.upwards_boundedly_order_closed.clone());
        m.insert("down_boc", oc.downwards_boundedly_order_closed.clone());
        m.insert("up_oc", oc.upwards_order_closed.clone());
        m.insert("down_oc", oc.downwards_order_closed.clone());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied())
    }

    fn view(o: QuasiOrder) -> LatticeView {
        LatticeView::new(o).unwrap()
    }

    #[test]
    fn classify_powerset_and_chain() {
        let c = classify(&QuasiOrder::powerset(3)).unwrap();
        assert!(c.lattice && c.complete_lattice && c.bounded && c.boolean && c.pointed);
        let c = classify(&QuasiOrder::chain(3)).unwrap();
        assert!(c.lattice && c.complete_lattice && c.bounded && !c.boolean);
        assert!(c.complete_semilattice);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        let c = classify(&QuasiOrder::bowtie()).unwrap();
        assert!(!c.lattice && !c.join_semilattice && !c.complete_semilattice);
        assert!(matches!(
            LatticeView::lattice(QuasiOrder::bowtie()),
            Err(LatticeError::NotALattice(..))
        ));
    }

    #[test]
    fn complete_semilattice_without_top() {
        // 0 < a, b with no top: a complete semilattice (the pair is
        // unbounded) that is not a lattice.
        let v = QuasiOrder::build(3, &[(0, 1), (0, 2)]).unwrap();
        let c = classify(&v).unwrap();
        assert!(!c.join_semilattice);
        assert!(c.meet_semilattice && c.pointed);
    }

    #[test]
    fn classify_requires_partial_order() {
        let cyc = QuasiOrder::build(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(matches!(classify(&cyc), Err(LatticeError::Order(_))));
    }

    #[test]
    fn m3_is_complemented_but_not_boolean() {
        let c = classify(&QuasiOrder::diamond_m3()).unwrap();
        assert!(c.complemented && !c.distributive && !c.boolean);
    }

    #[test]
    fn distributivity_examples() {
        assert!(is_distributive(&view(QuasiOrder::powerset(3))).unwrap());
        assert!(!is_distributive(&view(QuasiOrder::diamond_m3())).unwrap());
        assert!(!is_distributive(&view(QuasiOrder::pentagon_n5())).unwrap());
        assert!(matches!(
            is_distributive(&view(QuasiOrder::bowtie())),
            Err(LatticeError::NotALattice(..))
        ));
    }

    #[test]
    fn infinite_laws() {
        let p3 = view(QuasiOrder::powerset(3));
        assert!(check_jid(&p3).unwrap().verdict.holds);
        assert!(check_mid(&p3).unwrap().verdict.holds);
        let m3 = view(QuasiOrder::diamond_m3());
        let jid = check_jid(&m3).unwrap();
        assert!(!jid.verdict.holds);
        assert!(!check_mid(&m3).unwrap().verdict.holds);
        let c5 = view(QuasiOrder::chain(5));
        assert!(check_jid(&c5).unwrap().verdict.holds);
        assert!(check_mid(&c5).unwrap().verdict.holds);
        assert_eq!(
            check_jid(&c5).unwrap().mode,
            CheckMode::Exhaustive { subsets: 32 }
        );
    }

    #[test]
    fn jid_on_large_lattice_is_sampled() {
        let p4 = view(QuasiOrder::powerset(4));
        let v = check_jid(&p4).unwrap();
        assert!(v.verdict.holds);
        assert!(matches!(v.mode, CheckMode::Sampled { random_subsets: 10_000, .. }));
    }

    #[test]
    fn convexity_examples() {
        let p3 = QuasiOrder::powerset(3);
        // an interval
        assert!(is_convex(&p3, &p3.interval(1, 7)));
        // {∅, {0}, {1}, {0,1,2}}: the interval [∅, X] misses {0,1}
        let a = set(8, &[0, 1, 2, 7]);
        let v = convexity(&p3, &a);
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap()["missing"], 3);
        assert!(is_convex(&p3, &set(8, &[])));
        assert!(is_convex(&p3, &set(8, &[5])));
    }

    #[test]
    fn preregularity_examples() {
        // 0 < a, b < c < d; inside {a, b, d} the join of a and b is d.
        let p = QuasiOrder::build(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let a = set(5, &[1, 2, 4]);
        let r = preregularity(&p, &a);
        assert!(!r.upwards_preregular.holds);
        assert!(r.downwards_preregular.holds);
        assert_eq!(r.upwards_preregular.witness.unwrap()["sup_in_order"], 3);

        assert!(is_preregular(&p, &p.full_set()));
        assert!(is_regular(&p, &p.full_set()));
        // a convex subset of a lattice
        assert!(is_preregular(&p, &set(5, &[1, 3, 4])));
    }

    #[test]
    fn regular_differs_from_preregular_on_empty_sup() {
        // {1, 2} inside the chain 0 < 1 < 2: the empty sup inside is 1.
        let c = QuasiOrder::chain(3);
        let a = set(3, &[1, 2]);
        let r = preregularity(&c, &a);
        assert!(r.preregular());
        assert!(!r.upwards_regular.holds);
        assert!(r.downwards_regular.holds);
    }

    #[test]
    fn order_closed_examples() {
        let p3 = QuasiOrder::powerset(3);
        let r = order_closed_checks(&p3, &p3.interval(1, 7));
        assert!(r.order_closed() && r.boundedly_order_closed());

        // a, b < c < d with A = {a, b, d}
        let p = QuasiOrder::build(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let r = order_closed_checks(&p, &set(4, &[0, 1, 3]));
        assert!(!r.upwards_boundedly_order_closed.holds);
        assert_eq!(r.upwards_boundedly_order_closed.witness.unwrap()["escapes_to"], 2);
        assert!(r.downwards_order_closed.holds);
    }

    #[test]
    fn order_closure_examples() {
        let p2 = QuasiOrder::powerset(2);
        assert_eq!(order_closure_up(&p2, &set(4, &[1, 2])).to_vec(), vec![0, 1, 2, 3]);
        let closed = set(4, &[0, 1, 3]);
        assert_eq!(order_closure_up(&p2, &closed), closed);
        // B = ∅ contributes the minimum even when A is empty
        assert_eq!(order_closure_up(&p2, &set(4, &[])).to_vec(), vec![0]);
        let anti = QuasiOrder::antichain(2);
        assert!(order_closure_up(&anti, &set(2, &[])).is_empty());
        assert_eq!(order_closure_down(&p2, &set(4, &[1, 2])).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn flatness() {
        for n in 1..6 {
            assert!(is_flat_complete(&view(QuasiOrder::chain(n))).unwrap());
        }
        let p3 = QuasiOrder::powerset(3);
        assert!(is_flat(&p3, &set(8, &[1, 2, 4])));
        assert!(!is_flat(&p3, &set(8, &[3, 6, 1])));
        assert!(is_flat_complete(&view(p3)).unwrap());
        assert!(is_flat_complete(&view(QuasiOrder::diamond_m3())).unwrap());
    }

    #[test]
    fn density_of_singletons() {
        let p3 = view(QuasiOrder::powerset(3));
        let singletons = set(8, &[1, 2, 4]);
        let r = density_checks(&p3, &singletons).unwrap();
        assert!(r.dense.holds && r.join_dense.holds && r.interval_predense.holds);
        assert!(!r.strongly_interval_predense.holds);
        assert!(!r.meet_subsemilattice.holds);
        assert!(r.meet_agreement.holds);
        assert!(r.basis.holds);

        let with_zero = set(8, &[0, 1, 2, 4]);
        let r = density_checks(&p3, &with_zero).unwrap();
        assert!(r.strongly_interval_predense.holds);
        assert!(r.meet_subsemilattice.holds);
        assert!(r.basis.holds);
    }

    #[test]
    fn successors_in_a_chain_are_not_strongly_interval_predense() {
        let c4 = view(QuasiOrder::chain(4));
        let r = density_checks(&c4, &set(4, &[1, 2, 3])).unwrap();
        assert!(r.join_dense.holds);
        assert!(!r.strongly_interval_predense.holds);
        assert_eq!(
            r.strongly_interval_predense.witness.unwrap(),
            json!({"lower": 0, "upper": 1})
        );
    }

    #[test]
    fn density_requires_a_lattice() {
        let b = view(QuasiOrder::bowtie());
        assert!(density_checks(&b, &set(4, &[0])).is_err());
    }

    #[test]
    fn covers_of_bottom_differs_from_atoms() {
        let c3 = view(QuasiOrder::chain(3));
        assert_eq!(covers_of_bottom(&c3).to_vec(), vec![1]);
        assert_eq!(c3.order().atoms().to_vec(), vec![1, 2]);
        let p3 = view(QuasiOrder::powerset(3));
        assert_eq!(covers_of_bottom(&p3), p3.order().atoms());
    }

    #[test]
    fn subposet_analysis_matches_free_functions() {
        let p = Arc::new(QuasiOrder::powerset(2));
        let a = set(4, &[0, 3]);
        let an = SubposetAnalysis::new(p.clone(), a.clone()).unwrap();
        assert_eq!(an.convexity(), &convexity(&p, &a));
        assert!(!an.verdicts()["convex"].holds);
        assert!(an.verdicts()["upwards_preregular"].holds);
    }
}
