//! Theorem verifiers, keyed by slug. `verify` runs one instance chosen by the
//! flags, `sweep` runs the whole standard range.

use latkit::product::ChainProduct;
use latkit::verify::{self, SweepReport, CHAINPROD_CASES};

use crate::check::{load_pair, load_poset};
use crate::output::Report;
use crate::{CliError, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    Sweep,
}

pub struct Verifier {
    pub slug: &'static str,
    pub aliases: &'static [&'static str],
    /// Topic the verified statement belongs to.
    pub tag: &'static str,
    pub summary: &'static str,
    run: fn(&Params, Mode) -> Result<SweepReport, CliError>,
}

impl Verifier {
    pub fn run(&self, params: &Params, mode: Mode) -> Result<Report, CliError> {
        let report = (self.run)(params, mode)?;
        let command = match mode {
            Mode::Single => "verify",
            Mode::Sweep => "sweep",
        };
        Ok(Report::new(command, self.slug, report.passed(), report))
    }
}

pub static REGISTRY: &[Verifier] = &[
    Verifier {
        slug: "thm-powerset-form",
        aliases: &["powerset-characterization", "powerset-form"],
        tag: "embeddings/power-sets",
        summary: "convex-range embeddings P(X) -> P(Y) are a -> h[a] | b",
        run: powerset_form,
    },
    Verifier {
        slug: "thm-chainprod-form",
        aliases: &["chainprod-characterization", "chainprod-form"],
        tag: "embeddings/chain-products",
        summary: "convex-range embeddings C_k^I -> C_m^J are shifted partial projections",
        run: chainprod_form,
    },
    Verifier {
        slug: "thm-preregular-continuity",
        aliases: &["preregular-continuity"],
        tag: "preregularity/continuity",
        summary: "embeddings with preregular range preserve nonempty sups and infs",
        run: preregular_continuity,
    },
    Verifier {
        slug: "lem-convex-preregular",
        aliases: &["convex-preregular"],
        tag: "preregularity/convexity",
        summary: "convex subsets of lattices are preregular",
        run: convex_preregular,
    },
    Verifier {
        slug: "thm-extension-convexity",
        aliases: &["extension-convexity", "extension"],
        tag: "extension/bases",
        summary: "embeddings extend uniquely from a basis and keep convex range",
        run: extension,
    },
    Verifier {
        slug: "prop-cat-ro-iso",
        aliases: &["cat-ro-iso"],
        tag: "topology/category-algebra",
        summary: "Cat(X) is Boolean and isomorphic to RO(X minus cl U_X)",
        run: cat_ro_iso,
    },
    Verifier {
        slug: "cor-monoid-laws",
        aliases: &["monoid-laws"],
        tag: "monoids/distributivity",
        summary: "N^I is (+,join)- and (+,meet)-distributive; disjoint joins are sums",
        run: monoid_laws,
    },
    Verifier {
        slug: "lem-group-completion",
        aliases: &["group-completion"],
        tag: "monoids/completion",
        summary: "cancellative commutative monoids embed in their group completion",
        run: group_completion,
    },
    Verifier {
        slug: "cor-atom-laws",
        aliases: &["atom-laws"],
        tag: "embeddings/atoms",
        summary: "embeddings send atoms onto the relative atoms of their range",
        run: atom_laws,
    },
    Verifier {
        slug: "prop-embedding-iff-strict",
        aliases: &["embedding-iff-strict"],
        tag: "lattices/homomorphisms",
        summary: "a lattice homomorphism is an embedding iff it is strictly monotone",
        run: embedding_iff_strict,
    },
];

pub fn lookup(name: &str) -> Result<&'static Verifier, CliError> {
    REGISTRY
        .iter()
        .find(|v| v.slug == name || v.aliases.contains(&name))
        .ok_or_else(|| CliError::Usage(format!("unknown verifier {name:?}; see --list")))
}

fn bounded(name: &str, value: usize, max: usize) -> Result<usize, CliError> {
    if value > max {
        return Err(CliError::Usage(format!("--{name} {value} is above the supported maximum {max}")));
    }
    Ok(value)
}

fn powerset_form(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    if mode == Mode::Single {
        let x = bounded("x", p.x.unwrap_or(2), 4)?;
        let y = bounded("y", p.y.unwrap_or(3), 5)?;
        return Ok(verify::powerset_form(x, y, p.budget)?);
    }
    let mut r = SweepReport::new("powerset-form");
    let mut counts = Vec::new();
    for x in 1..=3 {
        for y in x..=4 {
            let part = verify::powerset_form(x, y, p.budget)?;
            counts.push(serde_json::json!({"x": x, "y": y, "census_count": part.details["census_count"]}));
            r.absorb(part);
        }
    }
    r.detail("cases", counts);
    Ok(r)
}

fn chainprod_form(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    if mode == Mode::Single {
        let (k, m, i, j) = CHAINPROD_CASES[0];
        let dom = ChainProduct::new(bounded("k", p.k.unwrap_or(k), 8)?, bounded("i", p.i.unwrap_or(i), 4)?);
        let cod = ChainProduct::new(bounded("m", p.m.unwrap_or(m), 8)?, bounded("j", p.j.unwrap_or(j), 4)?);
        return Ok(verify::chainprod_form(dom, cod, p.budget)?);
    }
    let mut r = SweepReport::new("chainprod-form");
    for (k, m, i, j) in CHAINPROD_CASES {
        r.absorb(verify::chainprod_form(ChainProduct::new(k, i), ChainProduct::new(m, j), p.budget)?);
    }
    r.detail("cases", CHAINPROD_CASES.len());
    Ok(r)
}

fn preregular_continuity(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    if let Some(path) = &p.input {
        let (dom, cod) = load_pair(path)?;
        return Ok(verify::preregular_continuity(&dom, &cod, p.budget)?);
    }
    let max = match mode {
        Mode::Single => p.max_size.unwrap_or(4),
        Mode::Sweep => p.max_size.unwrap_or(5),
    };
    let mut r = verify::preregular_continuity_sweep(bounded("max-size", max, 6)?, p.budget)?;
    if mode == Mode::Sweep {
        let samples = p.samples.unwrap_or(200) as usize;
        r.absorb(verify::preregular_continuity_random(samples, 6, p.seed, p.budget)?);
        r.detail("random_pairs", samples);
        r.detail("seed", p.seed);
    }
    r.detail("max_size", max);
    Ok(r)
}

fn convex_preregular(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    if let Some(path) = &p.input {
        return Ok(verify::convex_preregular(&load_poset(path)?.0));
    }
    let max = match mode {
        Mode::Single => p.max_size.unwrap_or(4),
        Mode::Sweep => p.max_size.unwrap_or(6),
    };
    Ok(verify::convex_preregular_sweep(bounded("max-size", max, 7)?))
}

fn extension(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    if mode == Mode::Sweep {
        return Ok(verify::extension_suite(p.budget)?);
    }
    if p.k.is_some() || p.i.is_some() {
        let dom = ChainProduct::new(bounded("k", p.k.unwrap_or(2), 6)?, bounded("i", p.i.unwrap_or(1), 3)?);
        let cod = ChainProduct::new(bounded("m", p.m.unwrap_or(2), 6)?, bounded("j", p.j.unwrap_or(2), 3)?);
        return Ok(verify::extension_chainprod(dom, cod, p.budget)?);
    }
    let n = bounded("x", p.x.unwrap_or(2), 3)?;
    let m = bounded("y", p.y.unwrap_or(3), 4)?;
    Ok(verify::extension_powerset(n, m, p.budget)?)
}

fn cat_ro_iso(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    match (mode, p.points) {
        (Mode::Sweep, None) => {
            let mut r = SweepReport::new("cat-ro-iso");
            let mut per_size = Vec::new();
            for n in 0..=4 {
                let part = verify::cat_ro_iso(n)?;
                per_size.push(part.instances);
                r.absorb(part);
            }
            r.detail("topologies_by_points", per_size);
            Ok(r)
        }
        (_, points) => Ok(verify::cat_ro_iso(bounded("points", points.unwrap_or(3), 5)?)?),
    }
}

fn monoid_laws(p: &Params, mode: Mode) -> Result<SweepReport, CliError> {
    let (dims, samples) = match mode {
        Mode::Single => (p.dims.unwrap_or(2), p.samples.unwrap_or(1000)),
        Mode::Sweep => (p.dims.unwrap_or(4), p.samples.unwrap_or(10_000)),
    };
    let samples = usize::try_from(samples).map_err(|_| CliError::Usage("--samples is too large".into()))?;
    Ok(verify::monoid_laws(bounded("dims", dims, 8)?, samples, p.seed))
}

fn group_completion(_: &Params, _: Mode) -> Result<SweepReport, CliError> {
    Ok(verify::group_completion())
}

fn atom_laws(p: &Params, _: Mode) -> Result<SweepReport, CliError> {
    Ok(verify::atom_laws(p.budget)?)
}

fn embedding_iff_strict(p: &Params, _: Mode) -> Result<SweepReport, CliError> {
    let max = bounded("max-size", p.max_size.unwrap_or(4), 6)?;
    Ok(verify::embedding_iff_strict(max, p.budget)?)
}
