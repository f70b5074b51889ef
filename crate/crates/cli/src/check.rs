//! `check`, `enumerate` and `search`.

use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use latkit::embedding::{self, RangeFilters};
use latkit::io::{IoError, MapSpec, MonoidSpec, PosetSpec, Structure, TopologySpec};
use latkit::lattice::{self, LatticeView, SubposetAnalysis};
use latkit::monoid::{self, MonoidLaw};
use latkit::{enumerate as enumerator, search as searches, QuasiOrder, Subset, Verdict};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::output::Report;
use crate::{read_json, CliError, Enumerable};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Filter {
    None,
    Convex,
    Preregular,
}

impl Filter {
    fn range_filters(self) -> RangeFilters {
        match self {
            Filter::None => RangeFilters::NONE,
            Filter::Convex => RangeFilters::CONVEX,
            Filter::Preregular => RangeFilters::PREREGULAR,
        }
    }
}

fn parse_err(path: &Path, source: impl Into<IoError>) -> CliError {
    CliError::Parse { path: path.to_owned(), source: source.into() }
}

/// Accepts a tagged structure, or an untagged poset or map.
fn load_structure(path: &Path) -> Result<Structure, CliError> {
    let value: Value = read_json(path)?;
    if value.get("kind").is_some() {
        return serde_json::from_value(value).map_err(|e| parse_err(path, e));
    }
    if let Ok(map) = MapSpec::deserialize(&value) {
        return Ok(Structure::Map(map));
    }
    PosetSpec::deserialize(&value)
        .map(|poset| Structure::Poset { poset, subset: None })
        .map_err(|e| parse_err(path, e))
}

pub fn load_poset(path: &Path) -> Result<(QuasiOrder, PosetSpec, Option<Vec<usize>>), CliError> {
    match load_structure(path)? {
        Structure::Poset { poset, subset } => {
            let order = poset.build().map_err(|e| parse_err(path, e))?;
            Ok((order, poset, subset))
        }
        _ => Err(CliError::Usage(format!("{}: expected a poset", path.display()))),
    }
}

#[derive(Deserialize)]
struct PairSpec {
    dom: PosetSpec,
    cod: PosetSpec,
}

/// `{"dom": poset, "cod": poset}`; an `image` field, if present, is ignored.
pub fn load_pair(path: &Path) -> Result<(QuasiOrder, QuasiOrder), CliError> {
    let pair: PairSpec = read_json(path)?;
    let dom = pair.dom.build().map_err(|e| parse_err(path, e))?;
    let cod = pair.cod.build().map_err(|e| parse_err(path, e))?;
    Ok((dom, cod))
}

fn unknown(kind: &str, property: &str, known: &[&str]) -> CliError {
    CliError::Usage(format!("no property {property:?} for a {kind}; expected one of {}", known.join(", ")))
}

/// How an element of a named shape reads: a power-set element as its set
/// of points, a chain-product element as its coordinates.
fn label(spec: &PosetSpec, index: usize) -> Option<Value> {
    match spec {
        PosetSpec::Powerset { powerset } => {
            Some(json!((0..*powerset).filter(|i| index >> i & 1 == 1).collect::<Vec<_>>()))
        }
        PosetSpec::ChainProduct { .. } => spec.chain_product().map(|c| json!(c.decode(index))),
        _ => None,
    }
}

/// Adds `<field>_label` next to each element-valued witness field.
fn labelled(mut v: Verdict, spec: &PosetSpec) -> Verdict {
    if let Some(Value::Object(w)) = v.witness.as_mut() {
        let extra: Vec<(String, Value)> = w
            .iter()
            .filter_map(|(k, val)| Some((format!("{k}_label"), label(spec, val.as_u64()? as usize)?)))
            .collect();
        w.extend(extra);
    }
    v
}

fn verdict_result(v: Verdict) -> (bool, Value) {
    (v.holds, serde_json::to_value(v).expect("verdict serializes"))
}

pub fn run(property: &str, path: &Path, subset: Option<Vec<usize>>) -> Result<Report, CliError> {
    let (passed, result) = match load_structure(path)? {
        Structure::Poset { poset, subset: given } => {
            let order = poset.build().map_err(|e| parse_err(path, e))?;
            check_poset(property, &order, &poset, subset.or(given))?
        }
        Structure::Map(spec) => check_map(property, path, &spec)?,
        Structure::Monoid(spec) => check_monoid(property, path, &spec)?,
        Structure::Topology(spec) => check_topology(property, path, &spec)?,
    };
    Ok(Report::new("check", property, passed, result))
}

const POSET_PROPERTIES: &[&str] = &["classify", "lattice", "distributive", "jid", "mid", "boolean"];
const SUBSET_PROPERTIES: &[&str] =
    &["convexity", "preregularity", "regularity", "order-closed", "density", "sublattice", "subset"];

fn check_poset(
    property: &str,
    order: &QuasiOrder,
    spec: &PosetSpec,
    subset: Option<Vec<usize>>,
) -> Result<(bool, Value), CliError> {
    if SUBSET_PROPERTIES.contains(&property) {
        let indices = subset.ok_or_else(|| CliError::Usage(format!("{property} needs --subset or a \"subset\" field")))?;
        let a = latkit::io::subset_from_indices(order.size(), &indices)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        return check_subset(property, order, spec, a);
    }
    let view = LatticeView::new(order.clone())?;
    let class = lattice::classify_view(&view);
    Ok(match property {
        "classify" => (true, json!(class)),
        "lattice" => (class.lattice, json!(class)),
        "boolean" => (class.boolean, json!(class)),
        "distributive" => verdict_result(lattice::distributivity(&view)?),
        "jid" => {
            let v = lattice::check_jid(&view)?;
            (v.verdict.holds, json!(v))
        }
        "mid" => {
            let v = lattice::check_mid(&view)?;
            (v.verdict.holds, json!(v))
        }
        _ => {
            let all: Vec<&str> = POSET_PROPERTIES.iter().chain(SUBSET_PROPERTIES).copied().collect();
            return Err(unknown("poset", property, &all));
        }
    })
}

fn check_subset(property: &str, order: &QuasiOrder, spec: &PosetSpec, a: Subset) -> Result<(bool, Value), CliError> {
    let analysis = SubposetAnalysis::new(Arc::new(order.clone()), a.clone())?;
    Ok(match property {
        "convexity" => verdict_result(labelled(analysis.convexity().clone(), spec)),
        "preregularity" => {
            let r = analysis.preregularity();
            (r.preregular(), json!(r))
        }
        "regularity" => {
            let r = analysis.preregularity();
            (r.regular(), json!(r))
        }
        "order-closed" => {
            let r = analysis.order_closed();
            (r.order_closed(), json!(r))
        }
        "density" => {
            let view = LatticeView::new(order.clone())?;
            let r = lattice::density_checks(&view, &a)?;
            (r.join_dense.holds, json!(r))
        }
        "sublattice" => {
            let view = LatticeView::lattice(order.clone())?;
            (lattice::is_sublattice(&view, &a), json!({"subset": a.to_vec()}))
        }
        "subset" => (true, json!(analysis.verdicts())),
        _ => unreachable!("listed in SUBSET_PROPERTIES"),
    })
}

const MAP_PROPERTIES: &[&str] =
    &["embedding", "convexity", "preregularity", "continuity", "atoms", "boundedness", "ranges", "powerset-form"];

fn reflection(map: &latkit::MonotoneMap) -> Verdict {
    let n = map.dom().size();
    for p in 0..n {
        for q in 0..n {
            if !map.dom().leq(p, q) && map.cod().leq(map.apply(p), map.apply(q)) {
                return Verdict::fail(json!({"p": p, "q": q, "image_p": map.apply(p), "image_q": map.apply(q)}));
            }
        }
    }
    Verdict::pass()
}

fn check_map(property: &str, path: &Path, spec: &MapSpec) -> Result<(bool, Value), CliError> {
    let map = spec.build().map_err(|e| parse_err(path, e))?;
    let range = map.range();
    Ok(match property {
        "embedding" => verdict_result(reflection(&map)),
        "convexity" => {
            let v = labelled(lattice::convexity(map.cod(), &range), &spec.cod);
            let (ok, mut out) = verdict_result(v);
            out["range"] = json!(range.to_vec());
            (ok, out)
        }
        "preregularity" => {
            let r = lattice::preregularity(map.cod(), &range);
            (r.preregular(), json!({"range": range.to_vec(), "report": r}))
        }
        "continuity" => {
            if map.dom().size() > embedding::CONTINUITY_LIMIT {
                return Err(CliError::Usage("domain too large for the continuity check".into()));
            }
            let r = embedding::continuity_checks(&map);
            (r.preserves_nonempty_sups.holds && r.preserves_nonempty_infs.holds, json!(r))
        }
        "atoms" => verdict_result(embedding::atom_image_check(&map)?),
        "boundedness" => (true, json!(embedding::boundedness_preservation(&map))),
        "ranges" => (true, json!(embedding::range_property_checks(&map))),
        "powerset-form" => match embedding::powerset_decompose(&map) {
            Ok(d) => (true, json!(d)),
            Err(e) => (false, json!({"error": e.to_string()})),
        },
        _ => return Err(unknown("map", property, MAP_PROPERTIES)),
    })
}

const MONOID_PROPERTIES: &[&str] = &["classify", "commutative", "cancellative", "laws", "group-completion"];

fn check_monoid(property: &str, path: &Path, spec: &MonoidSpec) -> Result<(bool, Value), CliError> {
    let m = spec.build().map_err(|e| parse_err(path, e))?;
    Ok(match property {
        "classify" => (true, json!(m.classify())),
        "commutative" => match m.commutativity_violation() {
            None => (true, json!({})),
            Some((a, b)) => (false, json!({"a": a, "b": b})),
        },
        "cancellative" => match m.cancellation_violation() {
            None => (true, json!({})),
            Some((a, b, c)) => (false, json!({"a": a, "b": b, "c": c})),
        },
        "laws" => {
            let reports = monoid::check_laws_exhaustive(&m, &MonoidLaw::ALL);
            (reports.iter().all(|r| r.verdict.holds), json!(reports))
        }
        "group-completion" => match m.group_completion() {
            Ok(g) => (
                true,
                json!({"size": g.size(), "representatives": g.representatives(), "embedding": g.embedding()}),
            ),
            Err(e) => (false, json!({"error": e.to_string()})),
        },
        _ => return Err(unknown("monoid", property, MONOID_PROPERTIES)),
    })
}

const TOPOLOGY_PROPERTIES: &[&str] = &["baire", "ro-iso", "zero-dimensional", "regular-opens", "clopen-basis"];

fn check_topology(property: &str, path: &Path, spec: &TopologySpec) -> Result<(bool, Value), CliError> {
    let t = spec.build().map_err(|e| parse_err(path, e))?;
    let sets = |v: Vec<Subset>| v.iter().map(Subset::to_vec).collect::<Vec<_>>();
    Ok(match property {
        "baire" => (t.is_baire(), json!({"largest_open_meager": t.largest_open_meager().to_vec()})),
        "ro-iso" => {
            let iso = t.ro_isomorphism()?;
            (iso.verdict.holds, json!(iso))
        }
        "zero-dimensional" => (t.is_zero_dimensional(), json!({"clopens": sets(t.clopens())})),
        "regular-opens" => (true, json!(sets(t.regular_opens()))),
        "clopen-basis" => {
            let r = t.clopen_basis_check()?;
            (r.is_basis(), json!(r))
        }
        _ => return Err(unknown("topology", property, TOPOLOGY_PROPERTIES)),
    })
}

pub fn enumerate(
    what: Enumerable,
    input: Option<&Path>,
    size: usize,
    filter: Filter,
    budget: u64,
) -> Result<Report, CliError> {
    let limit = |max: usize| {
        if size > max {
            Err(CliError::Usage(format!("--size {size} is above the supported maximum {max}")))
        } else {
            Ok(())
        }
    };
    let (name, result) = match what {
        Enumerable::Posets | Enumerable::Lattices => {
            limit(enumerator::POSET_LIMIT)?;
            let list = match what {
                Enumerable::Posets => enumerator::posets_up_to_iso(size),
                _ => enumerator::lattices_up_to_iso(size),
            };
            let specs: Vec<PosetSpec> = list.iter().map(PosetSpec::from_order).collect();
            let name = if matches!(what, Enumerable::Posets) { "posets" } else { "lattices" };
            (name, json!({"size": size, "count": specs.len(), "items": specs}))
        }
        Enumerable::Topologies => {
            limit(5)?;
            let specs: Vec<TopologySpec> =
                latkit::topology::enumerate_topologies(size)?.iter().map(TopologySpec::from_topology).collect();
            ("topologies", json!({"points": size, "count": specs.len(), "items": specs}))
        }
        Enumerable::Embeddings | Enumerable::Monotone => {
            let path = input.ok_or_else(|| CliError::Usage("maps need --input {\"dom\": ..., \"cod\": ...}".into()))?;
            let (dom, cod) = load_pair(path)?;
            if matches!(what, Enumerable::Monotone) {
                let maps = embedding::enumerate_monotone(&dom, &cod, budget)?;
                ("monotone", json!({"count": maps.len(), "maps": maps}))
            } else {
                let census =
                    embedding::enumerate_embeddings(Arc::new(dom), Arc::new(cod), filter.range_filters(), budget)?;
                let maps: Vec<&[usize]> = census.images().collect();
                ("embeddings", json!({"count": maps.len(), "filters": census.filters, "maps": maps}))
            }
        }
    };
    Ok(Report::new("enumerate", name, true, result))
}

const SEARCHES: &[&str] =
    &["convex-not-preregular", "sup-collapse", "atom-image-violation", "non-baire-topology", "unboundedness-lost"];

pub fn search(name: &str, max_size: usize, budget: u64) -> Result<Report, CliError> {
    let cap = |m: usize| {
        if max_size > m {
            Err(CliError::Usage(format!("--max-size {max_size} is above the supported maximum {m}")))
        } else {
            Ok(max_size)
        }
    };
    let outcome = match name {
        "convex-not-preregular" => searches::convex_not_preregular(cap(6)?),
        "sup-collapse" => searches::sup_collapse(cap(5)?, budget)?,
        "atom-image-violation" => searches::atom_image_violation(cap(5)?, budget)?,
        "non-baire-topology" => searches::non_baire_topology(cap(5)?)?,
        "unboundedness-lost" => searches::unboundedness_lost(cap(5)?, budget)?,
        _ => {
            return Err(CliError::Usage(format!("unknown search {name:?}; expected one of {}", SEARCHES.join(", "))))
        }
    };
    Ok(Report::new("search", name, outcome.as_expected(), outcome))
}
