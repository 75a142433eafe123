use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use toppling_core::chipfiring::{
    baker_norine_with, divisor_rank_oracle, flag_socle_matches, flag_socles, groebner_certificate, parking_ideal, toppling_generators, LatticeModule,
};
use toppling_core::hilbert::hilbert_identity_check;
use toppling_core::resolutions::{betti_parking, betti_toppling, conjecture_check, cyc_count};
use toppling_core::riemann_roch::{
    box_dual_identity, construct_rr_ideal, mono_rank, mono_rank_bruteforce, mono_rank_lcm, rr_profile,
    ReflectionInvariantIdeal,
};
use toppling_core::{Characteristic, Monomial, MonomialIdeal, Multigraph};

use crate::report::Report;
use crate::{Cli, Command, IdealKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: toppling_core::Error,
    },
    #[error("invalid list {text:?}: {msg}")]
    Csv { text: String, msg: String },
    #[error(transparent)]
    Core(#[from] toppling_core::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_graph(path: &Path, sink: Option<usize>) -> Result<Multigraph> {
    let input = |source| CliError::Input { path: path.display().to_string(), source };
    let g = Multigraph::parse(&read(path)?).map_err(input)?;
    match sink {
        Some(i) => g.with_sink(i).map_err(input),
        None => Ok(g),
    }
}

fn load_ideal(path: &Path) -> Result<MonomialIdeal> {
    MonomialIdeal::parse(&read(path)?).map_err(|source| CliError::Input { path: path.display().to_string(), source })
}

fn parse_csv(text: &str) -> Result<Vec<i64>> {
    let bad = |msg: &str| CliError::Csv { text: text.into(), msg: msg.into() };
    if text.trim().is_empty() {
        return Err(bad("empty"));
    }
    text.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad(&format!("{t:?} is not an integer")))).collect()
}

fn parse_monomial(text: &str, vars: usize) -> Result<Monomial> {
    let e = parse_csv(text)?;
    if e.len() != vars {
        return Err(CliError::Csv { text: text.into(), msg: format!("expected {vars} entries, found {}", e.len()) });
    }
    Ok(Monomial::new(e))
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn big(x: impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or(Value::String(s), Value::from)
}

fn mono(m: &Monomial) -> Value {
    json!(m.exps())
}

fn graph_json(g: &Multigraph) -> Value {
    let mut edges = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if g.mult(i, j) > 0 {
                edges.push(json!([i + 1, j + 1, g.mult(i, j)]));
            }
        }
    }
    json!({ "nodes": g.n(), "edges": edges })
}

fn ideal_json(m: &MonomialIdeal) -> Value {
    json!({ "vars": m.vars(), "generators": m.generators().iter().map(mono).collect::<Vec<_>>() })
}

fn characteristic(p: u64) -> Result<Characteristic> {
    Ok(Characteristic::new(p)?)
}

/// The raw command-line arguments, for reports on inputs that failed to load.
pub fn echo_inputs(cli: &Cli) -> Value {
    let mut v = match &cli.command {
        Command::Info { graph } | Command::Ideal { graph } | Command::Socle { graph } | Command::Hilbert { graph } => {
            json!({ "file": graph })
        }
        Command::Betti { graph, ideal, characteristic } => {
            json!({ "file": graph, "ideal": format!("{ideal:?}").to_lowercase(), "char": characteristic })
        }
        Command::Conjecture { graph, characteristic } => json!({ "file": graph, "char": characteristic }),
        Command::Rank { graph, divisor } => json!({ "file": graph, "divisor": divisor }),
        Command::Mrank { ideal, monomial } => json!({ "file": ideal, "monomial": monomial }),
        Command::Rrcheck { ideal, b } => json!({ "file": ideal, "b": b }),
        Command::Construct { canonical, seeds } => json!({ "canonical": canonical, "seeds": seeds }),
    };
    if let Some(s) = cli.sink {
        v["sink"] = json!(s);
    }
    v
}

pub fn run(cli: &Cli) -> Result<Report> {
    let mut inputs = echo_inputs(cli);
    let mut r = Report::new(cli.command.name(), Value::Null);
    match &cli.command {
        Command::Info { graph } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            info(&g, &mut r)?;
        }
        Command::Ideal { graph } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            ideal(&g, &mut r);
        }
        Command::Socle { graph } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            socle(&g, &mut r)?;
        }
        Command::Betti { graph, ideal, characteristic: p } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            betti(&g, *ideal, characteristic(*p)?, &mut r)?;
        }
        Command::Conjecture { graph, characteristic: p } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            conjecture(&g, characteristic(*p)?, &mut r)?;
        }
        Command::Hilbert { graph } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            hilbert(&g, &mut r)?;
        }
        Command::Rank { graph, divisor } => {
            let g = load_graph(graph, cli.sink)?;
            inputs["graph"] = graph_json(&g);
            let u = parse_monomial(divisor, g.n())?;
            rank(&g, u.exps(), &mut r)?;
        }
        Command::Mrank { ideal, monomial } => {
            let m = load_ideal(ideal)?;
            inputs["ideal"] = ideal_json(&m);
            let b = parse_monomial(monomial, m.vars())?;
            mrank(&m, &b, &mut r)?;
        }
        Command::Rrcheck { ideal, b } => {
            let m = load_ideal(ideal)?;
            inputs["ideal"] = ideal_json(&m);
            let bs = b.iter().map(|t| parse_monomial(t, m.vars())).collect::<Result<Vec<_>>>()?;
            rrcheck(&m, &bs, &mut r)?;
        }
        Command::Construct { canonical, seeds } => {
            let k = Monomial::new(parse_csv(canonical)?);
            let seeds = seeds.iter().map(|t| parse_monomial(t, k.vars())).collect::<Result<Vec<_>>>()?;
            construct(&k, &seeds, &mut r)?;
        }
    }
    r.inputs = inputs;
    Ok(r)
}

fn info(g: &Multigraph, r: &mut Report) -> Result<()> {
    let classes = g.divisor_class_group();
    let cert = groebner_certificate(g);
    r.results = json!({
        "nodes": g.n(),
        "edges": g.edge_count(),
        "genus": g.genus(),
        "saturated": g.is_saturated(),
        "tree_count": big(g.tree_count()),
        "invariant_factors": classes.invariant_factors.iter().map(big).collect::<Vec<_>>(),
        "connected_splits": g.connected_splits().len(),
        "acyclic_orientations_unique_sink": g.acyclic_orientations_unique_sink(g.n())?,
    });
    r.check(
        "parking_functions_count_trees",
        cert.pass,
        json!({ "standard_monomials": cert.standard_monomials, "tree_count": big(&cert.tree_count) }),
    );
    r.check(
        "group_order_is_tree_count",
        classes.order() == g.tree_count(),
        json!({ "order": big(classes.order()) }),
    );
    r.headline = format!("n = {}, genus {}, {} spanning trees", g.n(), g.genus(), g.tree_count());
    Ok(())
}

fn ideal(g: &Multigraph, r: &mut Report) {
    let gens: Vec<Value> = toppling_generators(g)
        .iter()
        .map(|b| json!({ "split": b.split.to_string(), "lead": mono(&b.lead), "trail": mono(&b.trail) }))
        .collect();
    let m = parking_ideal(g);
    let cert = groebner_certificate(g);
    r.results = json!({ "toppling_generators": gens, "parking_ideal": ideal_json(&m) });
    r.check(
        "parking_functions_count_trees",
        cert.pass,
        json!({ "standard_monomials": cert.standard_monomials, "tree_count": big(&cert.tree_count) }),
    );
    r.headline = format!("{} toppling generators, {} parking generators", gens.len(), m.generators().len());
}

fn socle(g: &Multigraph, r: &mut Report) -> Result<()> {
    let m = parking_ideal(g);
    let socle = m.socle()?;
    let flags: Vec<Value> =
        flag_socles(g).iter().map(|f| json!({ "flag": f.flag, "monomial": mono(&f.monomial) })).collect();
    let module = LatticeModule::new(g);
    r.results = json!({
        "socle": socle.iter().map(mono).collect::<Vec<_>>(),
        "flags": flags,
        "lattice_socle_base": module.socle_base().iter().map(mono).collect::<Vec<_>>(),
    });
    if g.is_saturated() {
        r.check("flag_formula", flag_socle_matches(g)?, json!({ "flags": flags.len(), "socle": socle.len() }));
    }
    r.check(
        "lattice_socle_involution",
        module.involution_holds(),
        json!({ "representatives": module.socle_base().len() }),
    );
    r.headline = format!("{} socle monomials", socle.len());
    Ok(())
}

fn betti(g: &Multigraph, kind: IdealKind, ch: Characteristic, r: &mut Report) -> Result<()> {
    let table = match kind {
        IdealKind::Parking => betti_parking(g, ch),
        IdealKind::Toppling => betti_toppling(g, ch)?,
    };
    let totals = table.totals();
    r.results = json!({
        "ideal": format!("{kind:?}").to_lowercase(),
        "char": ch.value(),
        "ranks": totals,
        "table": serde_json::to_value(&table).expect("Betti tables serialize"),
    });
    let orientations = g.acyclic_orientations_unique_sink(g.n())?;
    let top = totals.get(g.n() - 1).copied().unwrap_or(0);
    r.check(
        "top_betti_counts_acyclic_orientations",
        top as u64 == orientations && totals.len() == g.n(),
        json!({ "top": top, "acyclic_orientations": orientations }),
    );
    if g.is_saturated() {
        let counts: Vec<u128> = (1..=g.n()).map(|k| cyc_count(g.n(), k)).collect();
        let pass = totals.iter().map(|&t| t as u128).eq(counts.iter().copied());
        r.check("saturated_ranks_are_cyc_counts", pass, json!({ "cyc_counts": counts }));
    }
    r.headline = format!("ranks {totals:?}");
    Ok(())
}

fn conjecture(g: &Multigraph, ch: Characteristic, r: &mut Report) -> Result<()> {
    let report = conjecture_check(g, ch)?;
    r.check(
        "class_by_class_agreement",
        report.pass,
        json!({ "disagreements": serde_json::to_value(&report.disagreements).expect("serializable") }),
    );
    r.headline = format!(
        "{} comparisons, {} disagreements, {} classes with several parking degrees",
        report.comparisons.len(),
        report.disagreements.len(),
        report.ambiguous
    );
    r.results = serde_json::to_value(&report).expect("serializable");
    Ok(())
}

fn hilbert(g: &Multigraph, r: &mut Report) -> Result<()> {
    let report = hilbert_identity_check(g)?;
    r.check(
        "parking_sum_times_factors_is_numerator",
        report.difference.is_empty(),
        json!({ "difference": serde_json::to_value(&report.difference).expect("serializable") }),
    );
    r.check(
        "signed_term_count",
        report.signed_terms == report.expected_signed_terms,
        json!({ "signed_terms": report.signed_terms.to_string(), "expected": report.expected_signed_terms.to_string() }),
    );
    r.check(
        "parking_terms_count_trees",
        report.parking_terms.to_string() == report.tree_count,
        json!({ "parking_terms": report.parking_terms, "tree_count": big(&report.tree_count) }),
    );
    r.headline = format!("numerator has {} terms", report.numerator.len());
    r.results = json!({
        "numerator": serde_json::to_value(&report.numerator).expect("serializable"),
        "signed_terms": report.signed_terms.to_string(),
        "parking_terms": report.parking_terms,
    });
    Ok(())
}

fn rank(g: &Multigraph, u: &[i64], r: &mut Report) -> Result<()> {
    let module = LatticeModule::new(g);
    let bn = baker_norine_with(&module, u)?;
    let oracle = divisor_rank_oracle(g, u)?;
    r.results = json!({
        "rank": bn.rank,
        "rank_by_burning": oracle,
        "canonical_divisor_rank": bn.dual_rank,
        "degree": bn.degree,
        "genus": bn.genus,
    });
    r.check("socle_rank_matches_burning", bn.rank == oracle, json!({ "socle": bn.rank, "burning": oracle }));
    r.check(
        "baker_norine",
        bn.pass,
        json!({ "lhs": bn.rank - bn.dual_rank, "rhs": bn.degree - bn.genus + 1 }),
    );
    r.headline = format!("rank {}", bn.rank);
    Ok(())
}

fn mrank(m: &MonomialIdeal, b: &Monomial, r: &mut Report) -> Result<()> {
    let socle_rank = mono_rank(m, b)?;
    let lcm_rank = mono_rank_lcm(m, b)?;
    let mut results = json!({ "rank": socle_rank, "rank_lcm": lcm_rank });
    r.check("socle_and_lcm_forms_agree", socle_rank == lcm_rank, json!({ "socle": socle_rank, "lcm": lcm_rank }));
    if b.is_nonneg() {
        let brute = mono_rank_bruteforce(m, b)?;
        results["rank_by_definition"] = json!(brute.rank);
        results["witness"] = brute.witness.as_ref().map_or(Value::Null, mono);
        r.check(
            "definition_matches_socle",
            brute.rank == socle_rank,
            json!({ "definition": brute.rank, "socle": socle_rank }),
        );
    }
    r.results = results;
    r.headline = format!("rank {socle_rank}");
    Ok(())
}

fn rrcheck(m: &MonomialIdeal, bs: &[Monomial], r: &mut Report) -> Result<()> {
    let p = rr_profile(m)?;
    r.results = json!({
        "socle": p.socle.iter().map(mono).collect::<Vec<_>>(),
        "genus": p.genus(),
        "genus_min": p.genus_min,
        "genus_max": p.genus_max,
        "level": p.level,
        "canonical": p.canonical.as_ref().map(mono),
        "canonical_candidates": p.canonical_candidates.iter().map(mono).collect::<Vec<_>>(),
        "reflection_invariant": p.reflection_invariant,
        "riemann_roch": p.is_riemann_roch(),
    });
    let mut evaluations = Vec::new();
    if let Some(k) = &p.canonical {
        r.check("box_dual_is_socle", box_dual_identity(m, k)?, json!({ "canonical": mono(k) }));
        let ri = ReflectionInvariantIdeal::new(m, k)?;
        for b in bs {
            if p.level {
                let c = ri.verify(b)?;
                evaluations.push(serde_json::to_value(&c).expect("serializable"));
                r.check(&format!("riemann_roch_at_{b}"), c.pass, json!({ "rank": c.rank, "dual_rank": c.dual_rank }));
            } else {
                let c = ri.inequalities(b)?;
                evaluations.push(serde_json::to_value(&c).expect("serializable"));
                r.check(
                    &format!("genus_bounds_at_{b}"),
                    c.pass,
                    json!({ "lower": c.lower, "value": c.value, "upper": c.upper }),
                );
            }
        }
    } else {
        for b in bs {
            evaluations.push(json!({ "b": mono(b), "rank": mono_rank(m, b)? }));
        }
    }
    r.results["evaluations"] = json!(evaluations);
    r.headline = match (p.genus(), &p.canonical) {
        (Some(g), Some(k)) => format!("genus {g}, canonical {k}, reflection-invariant"),
        (Some(g), None) => format!("genus {g}, not reflection-invariant"),
        (None, _) => format!("not level: genus between {} and {}", p.genus_min, p.genus_max),
    };
    Ok(())
}

fn construct(k: &Monomial, seeds: &[Monomial], r: &mut Report) -> Result<()> {
    let m = construct_rr_ideal(k, seeds)?;
    let p = rr_profile(&m)?;
    r.results = json!({
        "ideal": ideal_json(&m),
        "text": m.to_text(),
        "socle": p.socle.iter().map(mono).collect::<Vec<_>>(),
        "genus": p.genus(),
    });
    r.check(
        "riemann_roch",
        p.is_riemann_roch() && p.canonical_candidates.contains(k),
        json!({ "level": p.level, "canonical_candidates": p.canonical_candidates.iter().map(mono).collect::<Vec<_>>() }),
    );
    r.headline = format!("{} generators", m.generators().len());
    Ok(())
}
