//! Exhaustive and seeded sweeps that check the characterization and
//! extension theorems on finite instances.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::embedding::{
    self, chainprod_decompose, continuity_of, enumerate_embeddings, powerset_decompose,
    ChainProdDecomposition, EmbeddingError, PowersetDecomposition, RangeFilters,
};
use crate::enumerate;
use crate::lattice::{self, LatticeView};
use crate::monoid::{self, FiniteMonoid, MonoidLaw, VectorMonoid};
use crate::order::{MonotoneMap, QuasiOrder};
use crate::product::ChainProduct;
use crate::subset::Subset;
use crate::topology::{self, TopologyError};

/// Witnesses kept in a report; the count is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub instances: u64,
    pub violation_count: u64,
    pub violations: Vec<Value>,
    pub details: BTreeMap<String, Value>,
}

impl SweepReport {
    pub fn new(name: impl Into<String>) -> Self {
        SweepReport {
            name: name.into(),
            instances: 0,
            violation_count: 0,
            violations: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn violation(&mut self, w: Value) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(w);
        }
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(v).expect("detail serializes"));
    }

    /// Adds the counts and witnesses of `other`, keeping `self`'s name.
    pub fn absorb(&mut self, other: SweepReport) {
        self.instances += other.instances;
        self.violation_count += other.violation_count;
        for w in other.violations {
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(w);
            }
        }
    }
}

fn arc(o: QuasiOrder) -> Arc<QuasiOrder> {
    Arc::new(o)
}

/// Injective maps `0..x → 0..y` in lexicographic order.
pub fn injections(x: usize, y: usize) -> Vec<Vec<usize>> {
    fn go(x: usize, y: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == x {
            out.push(cur.clone());
            return;
        }
        for t in 0..y {
            if !cur.contains(&t) {
                cur.push(t);
                go(x, y, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(x, y, &mut Vec::new(), &mut out);
    out
}

/// Every `a ↦ h[a] ∪ b` with `h` injective and `b` disjoint from `h[X]`.
pub fn powerset_normal_forms(x: usize, y: usize) -> Vec<PowersetDecomposition> {
    let mut out = Vec::new();
    for h in injections(x, y) {
        let used = h.iter().fold(0usize, |m, &t| m | 1 << t);
        for b in 0..1usize << y {
            if b & used == 0 {
                out.push(PowersetDecomposition::new(x, y, h.clone(), b).expect("valid by construction"));
            }
        }
    }
    out
}

/// Every `(g, y)` normal form for convex-range embeddings between chain
/// products: `g` a bijection from a subset of `J` onto `I`, and `y` with
/// `y(j) + k - 1 <= m - 1` where `g` is defined and `y(j) <= m - 1` elsewhere.
pub fn chainprod_normal_forms(dom: &ChainProduct, cod: &ChainProduct) -> Vec<ChainProdDecomposition> {
    let (k, m, ni, nj) = (dom.k(), cod.k(), dom.dims(), cod.dims());
    let mut out = Vec::new();
    if k < 2 || k > m {
        return out;
    }
    // g as the list of target coordinates j_0, ..., j_{|I|-1}
    for targets in injections(ni, nj) {
        let mut g = vec![None; nj];
        for (i, &j) in targets.iter().enumerate() {
            g[j] = Some(i);
        }
        let caps: Vec<usize> = g.iter().map(|gj| if gj.is_some() { m - k } else { m - 1 }).collect();
        let mut y = vec![0usize; nj];
        loop {
            out.push(ChainProdDecomposition::new(dom, cod, g.clone(), y.clone()).expect("feasible"));
            let mut pos = 0;
            while pos < nj && y[pos] == caps[pos] {
                y[pos] = 0;
                pos += 1;
            }
            if pos == nj {
                break;
            }
            y[pos] += 1;
        }
    }
    out
}

fn compare_sets(report: &mut SweepReport, census: &BTreeSet<Vec<usize>>, formula: &BTreeSet<Vec<usize>>) {
    for extra in census.difference(formula) {
        report.violation(json!({"in_census_only": extra}));
    }
    for extra in formula.difference(census) {
        report.violation(json!({"in_normal_form_only": extra}));
    }
}

/// Convex-range embeddings `P(x) → P(y)` are exactly the maps
/// `a ↦ h[a] ∪ b`.
pub fn powerset_form(x: usize, y: usize, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("powerset-form");
    let census = enumerate_embeddings(
        arc(QuasiOrder::powerset(x)),
        arc(QuasiOrder::powerset(y)),
        RangeFilters::CONVEX,
        budget,
    )?;
    for sigma in census.to_maps() {
        r.instances += 1;
        match powerset_decompose(&sigma) {
            Ok(d) if d.image() == sigma.image() => {}
            Ok(_) => r.violation(json!({"round_trip_failed": sigma.image()})),
            Err(e) => r.violation(json!({"image": sigma.image(), "error": e.to_string()})),
        }
    }
    let forms = powerset_normal_forms(x, y);
    let cod = QuasiOrder::powerset(y);
    for f in &forms {
        let flags = embedding::MapFlags::compute(&QuasiOrder::powerset(x), &cod, &f.image());
        if !(flags.embedding && flags.convex_range) {
            r.violation(json!({"normal_form_not_convex_embedding": f}));
        }
    }
    let census_set: BTreeSet<Vec<usize>> = census.images().map(<[usize]>::to_vec).collect();
    let formula_set: BTreeSet<Vec<usize>> = forms.iter().map(PowersetDecomposition::image).collect();
    compare_sets(&mut r, &census_set, &formula_set);
    r.detail("x", x);
    r.detail("y", y);
    r.detail("census_count", census.len());
    r.detail("normal_form_count", forms.len());
    r.detail("search_nodes", census.nodes);
    Ok(r)
}

/// Convex-range embeddings `C_k^I → C_m^J` are exactly the shifted partial
/// projections.
pub fn chainprod_form(dom: ChainProduct, cod: ChainProduct, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("chainprod-form");
    let census = enumerate_embeddings(arc(dom.order()), arc(cod.order()), RangeFilters::CONVEX, budget)?;
    for img in census.images() {
        r.instances += 1;
        match chainprod_decompose(&dom, &cod, img) {
            Ok(d) if d.image(&dom, &cod) == img => {}
            Ok(_) => r.violation(json!({"round_trip_failed": img})),
            Err(e) => r.violation(json!({"image": img, "error": e.to_string()})),
        }
    }
    let forms = chainprod_normal_forms(&dom, &cod);
    let census_set: BTreeSet<Vec<usize>> = census.images().map(<[usize]>::to_vec).collect();
    let formula_set: BTreeSet<Vec<usize>> = forms.iter().map(|f| f.image(&dom, &cod)).collect();
    compare_sets(&mut r, &census_set, &formula_set);
    r.detail("k", dom.k());
    r.detail("m", cod.k());
    r.detail("dom_dims", dom.dims());
    r.detail("cod_dims", cod.dims());
    r.detail("census_count", census.len());
    r.detail("normal_form_count", forms.len());
    Ok(r)
}

/// Chain-product shapes `(k, m, |I|, |J|)` covered by the standard sweep.
pub const CHAINPROD_CASES: [(usize, usize, usize, usize); 5] =
    [(2, 2, 1, 2), (2, 3, 1, 1), (3, 5, 1, 1), (2, 2, 2, 2), (2, 2, 2, 3)];

/// Embeddings with preregular range preserve nonempty suprema and infima.
pub fn preregular_continuity(p: &QuasiOrder, q: &QuasiOrder, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("preregular-continuity");
    let census = enumerate_embeddings(arc(p.clone()), arc(q.clone()), RangeFilters::PREREGULAR, budget)?;
    for img in census.images() {
        r.instances += 1;
        let c = continuity_of(p, q, img);
        for (name, v) in [("sups", &c.preserves_nonempty_sups), ("infs", &c.preserves_nonempty_infs)] {
            if !v.holds {
                r.violation(json!({
                    "dom": crate::io::PosetSpec::from_order(p),
                    "cod": crate::io::PosetSpec::from_order(q),
                    "image": img,
                    "fails": name,
                    "witness": v.witness,
                }));
            }
        }
    }
    Ok(r)
}

/// [`preregular_continuity`] over every pair of nonempty posets with at
/// most `max` elements, up to isomorphism.
pub fn preregular_continuity_sweep(max: usize, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let posets: Vec<QuasiOrder> = (1..=max).flat_map(enumerate::posets_up_to_iso).collect();
    let pairs: Vec<(usize, usize)> =
        (0..posets.len()).flat_map(|a| (0..posets.len()).map(move |b| (a, b))).collect();
    let parts: Vec<Result<SweepReport, EmbeddingError>> = pairs
        .par_iter()
        .map(|&(a, b)| preregular_continuity(&posets[a], &posets[b], budget))
        .collect();
    let mut r = SweepReport::new("preregular-continuity");
    for part in parts {
        r.absorb(part?);
    }
    r.detail("posets", posets.len());
    r.detail("pairs", pairs.len());
    Ok(r)
}

/// [`preregular_continuity`] on `count` seeded random pairs of lattices
/// with `size` elements.
pub fn preregular_continuity_random(count: usize, size: usize, seed: u64, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = enumerate::lattices_up_to_iso(size);
    let pairs: Vec<(QuasiOrder, QuasiOrder)> = (0..count)
        .map(|_| (enumerate::random_member(&classes, &mut rng), enumerate::random_member(&classes, &mut rng)))
        .collect();
    let parts: Vec<Result<SweepReport, EmbeddingError>> =
        pairs.par_iter().map(|(p, q)| preregular_continuity(p, q, budget)).collect();
    let mut r = SweepReport::new("preregular-continuity-random");
    for part in parts {
        r.absorb(part?);
    }
    r.detail("pairs", count);
    r.detail("size", size);
    r.detail("seed", seed);
    Ok(r)
}

/// Every convex subset of a lattice is preregular.
pub fn convex_preregular(order: &QuasiOrder) -> SweepReport {
    let mut r = SweepReport::new("convex-preregular");
    for a in order.full_set().subsets() {
        r.instances += 1;
        if lattice::is_convex(order, &a) && !lattice::is_preregular(order, &a) {
            r.violation(json!({
                "order": crate::io::PosetSpec::from_order(order),
                "subset": a.to_vec(),
            }));
        }
    }
    r
}

pub fn convex_preregular_sweep(max: usize) -> SweepReport {
    let lattices = enumerate::lattices_up_to(max);
    let parts: Vec<SweepReport> = lattices.par_iter().map(convex_preregular).collect();
    let mut r = SweepReport::new("convex-preregular");
    for part in parts {
        r.absorb(part);
    }
    r.detail("lattices", lattices.len());
    r
}

/// Extends each convex-range embedding from the basis `{0} ∪ atoms` and
/// checks it comes back unchanged, unique and with convex range.
fn extension_cases(l: &QuasiOrder, m: &QuasiOrder, basis: &Subset, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("extension-convexity");
    let lv = LatticeView::lattice(l.clone()).map_err(|_| EmbeddingError::PreconditionFailed("L must be a lattice"))?;
    let mv = LatticeView::lattice(m.clone()).map_err(|_| EmbeddingError::PreconditionFailed("M must be a lattice"))?;
    let e = m.full_set();
    let census = enumerate_embeddings(arc(l.clone()), arc(m.clone()), RangeFilters::CONVEX, budget)?;
    for img in census.images() {
        r.instances += 1;
        let sigma_b = embedding::restrict(img, basis);
        match embedding::verify_convexity_transfer(&lv, basis, &e, &mv, &sigma_b, budget) {
            Ok(t) if t.all_hold() && t.extension == img => {}
            Ok(t) => r.violation(json!({"image": img, "report": t})),
            Err(err @ EmbeddingError::BudgetExceeded { .. }) => return Err(err),
            Err(err) => r.violation(json!({"image": img, "error": err.to_string()})),
        }
    }
    Ok(r)
}

pub fn extension_powerset(n: usize, m: usize, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let l = QuasiOrder::powerset(n);
    let mut basis = l.atoms();
    basis.insert(0);
    let mut r = extension_cases(&l, &QuasiOrder::powerset(m), &basis, budget)?;
    r.detail("n", n);
    r.detail("m", m);
    Ok(r)
}

pub fn extension_chainprod(dom: ChainProduct, cod: ChainProduct, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut basis = dom.scaled_units();
    basis.insert(0);
    let mut r = extension_cases(&dom.order(), &cod.order(), &basis, budget)?;
    r.detail("k", dom.k());
    r.detail("m", cod.k());
    r.detail("dom_dims", dom.dims());
    r.detail("cod_dims", cod.dims());
    Ok(r)
}

/// Power-set pairs `1 <= n <= m <= 3` and the chain-product cases.
pub fn extension_suite(budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("extension-convexity");
    let mut cases = 0;
    for n in 1..=3 {
        for m in n..=3 {
            r.absorb(extension_powerset(n, m, budget)?);
            cases += 1;
        }
    }
    for (k, m, i, j) in CHAINPROD_CASES {
        r.absorb(extension_chainprod(ChainProduct::new(k, i), ChainProduct::new(m, j), budget)?);
        cases += 1;
    }
    r.detail("cases", cases);
    Ok(r)
}

/// Distributive and disjoint-sum laws on `ℕ^I` for `1 <= |I| <= max_dims`,
/// plus the truncated sum on `{0, 1, 2}`, which must violate some law.
pub fn monoid_laws(max_dims: usize, samples: usize, seed: u64) -> SweepReport {
    let mut r = SweepReport::new("monoid-laws");
    let laws: Vec<MonoidLaw> = MonoidLaw::DISTRIBUTIVE.iter().chain(&MonoidLaw::DISJOINT).copied().collect();
    for dims in 1..=max_dims {
        let m = VectorMonoid::naturals(dims);
        for rep in monoid::check_laws_sampled(&m, &laws, samples, seed ^ dims as u64, 8, 4) {
            r.instances += rep.instance_count;
            if !rep.verdict.holds {
                r.violation(json!({"dims": dims, "law": rep.law.name(), "witness": rep.verdict.witness}));
            }
        }
    }
    let truncated = monoid::check_laws_exhaustive(&FiniteMonoid::truncated_sum(2), &MonoidLaw::ALL);
    let failing: Vec<Value> = truncated
        .iter()
        .filter(|rep| !rep.verdict.holds)
        .map(|rep| json!({"law": rep.law.name(), "witness": rep.verdict.witness}))
        .collect();
    if failing.is_empty() {
        r.violation(json!({"truncated_sum": "no law violated; checker does not discriminate"}));
    }
    r.detail("seed", seed);
    r.detail("samples_per_dimension", samples);
    r.detail("truncated_sum_violations", failing);
    r
}

/// Group completion: `ℕ²` against `ℤ²`, every cancellative commutative
/// monoid with at most four elements, and rejection of `({0, 1}, max)`.
pub fn group_completion() -> SweepReport {
    let mut r = SweepReport::new("group-completion");
    let n2 = VectorMonoid::naturals(2).group_completion();
    r.instances += 1;
    let v = n2.verify_on_box(4);
    if !v.holds {
        r.violation(json!({"naturals_squared": v.witness}));
    }
    let mut cancellative = 0;
    for n in 1..=4 {
        for m in monoid::commutative_monoids(n) {
            if !m.is_cancellative() {
                continue;
            }
            cancellative += 1;
            r.instances += 1;
            match m.group_completion() {
                Ok(g) => {
                    let is_group = (0..g.size()).all(|x| g.neg(x).is_some());
                    let mut img = g.embedding().to_vec();
                    img.sort_unstable();
                    img.dedup();
                    if !is_group || img.len() != m.size() {
                        r.violation(json!({"table": m.table(), "group": is_group, "image_size": img.len()}));
                    }
                }
                Err(e) => r.violation(json!({"table": m.table(), "error": e.to_string()})),
            }
        }
    }
    r.instances += 1;
    if FiniteMonoid::max_semilattice(2).group_completion().is_ok() {
        r.violation(json!({"max_semilattice": "completion accepted a non-cancellative monoid"}));
    }
    r.detail("cancellative_monoids", cancellative);
    r
}

/// For every topology on `points` labelled points: `Cat(X)` is Boolean and
/// `G ↦ [G]` is an isomorphism from `RO(X ∖ cl U_X)`.
pub fn cat_ro_iso(points: usize) -> Result<SweepReport, TopologyError> {
    let mut r = SweepReport::new("cat-ro-iso");
    let spaces = topology::enumerate_topologies(points)?;
    let mut non_baire = 0;
    for t in &spaces {
        r.instances += 1;
        if !t.is_baire() {
            non_baire += 1;
        }
        let cat = t.category_algebra()?;
        let class = lattice::classify_view(cat.view());
        let iso = t.ro_isomorphism()?;
        if !class.boolean || !iso.verdict.holds {
            r.violation(json!({
                "topology": crate::io::TopologySpec::from_topology(t),
                "boolean": class.boolean,
                "isomorphism": iso.verdict,
            }));
        }
    }
    r.detail("points", points);
    r.detail("topologies", spaces.len());
    r.detail("non_baire", non_baire);
    Ok(r)
}

/// Atoms of `P(n)` are the singletons, and embeddings in the power-set and
/// chain-product censuses send atoms onto the atoms of their range.
pub fn atom_laws(budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("atom-laws");
    for n in 0..=4 {
        r.instances += 1;
        let singletons = Subset::from_indices(1 << n, (0..n).map(|i| 1 << i));
        if QuasiOrder::powerset(n).atoms() != singletons {
            r.violation(json!({"powerset": n}));
        }
    }
    let mut check = |dom: QuasiOrder, cod: QuasiOrder| -> Result<(), EmbeddingError> {
        let census = enumerate_embeddings(arc(dom), arc(cod), RangeFilters::NONE, budget)?;
        for sigma in census.to_maps() {
            r.instances += 1;
            let atoms = embedding::atom_image_check(&sigma)?;
            let minimal = embedding::relative_minimal_check(&sigma);
            if !atoms.holds || !minimal.holds {
                r.violation(json!({"image": sigma.image(), "atoms": atoms, "minimal": minimal}));
            }
        }
        Ok(())
    };
    for x in 1..=3 {
        for y in x..=4 {
            check(QuasiOrder::powerset(x), QuasiOrder::powerset(y))?;
        }
    }
    for (k, m, i, j) in CHAINPROD_CASES {
        check(ChainProduct::new(k, i).order(), ChainProduct::new(m, j).order())?;
    }
    Ok(r)
}

/// Lattice homomorphisms between lattices with at most `max` elements are
/// embeddings exactly when they are strictly order preserving.
pub fn embedding_iff_strict(max: usize, budget: u64) -> Result<SweepReport, EmbeddingError> {
    let mut r = SweepReport::new("embedding-iff-strict");
    let lattices = enumerate::lattices_up_to(max);
    for l in &lattices {
        let lv = LatticeView::lattice(l.clone()).expect("enumerated lattice");
        for m in &lattices {
            let mv = LatticeView::lattice(m.clone()).expect("enumerated lattice");
            for img in embedding::enumerate_monotone(l, m, budget)? {
                let hom = (0..l.size()).all(|p| {
                    (0..l.size()).all(|q| {
                        img[lv.join_l(p, q)] == mv.join_l(img[p], img[q])
                            && img[lv.meet_l(p, q)] == mv.meet_l(img[p], img[q])
                    })
                });
                if !hom {
                    continue;
                }
                r.instances += 1;
                let strict = l.strict_pairs().all(|(p, q)| m.lt(img[p], img[q]));
                let sigma = MonotoneMap::new(arc(l.clone()), arc(m.clone()), img.clone())
                    .expect("enumerated maps are monotone");
                if strict != sigma.is_embedding() {
                    r.violation(json!({"dom": crate::io::PosetSpec::from_order(l), "cod": crate::io::PosetSpec::from_order(m), "image": img}));
                }
            }
        }
    }
    Ok(r)
}
