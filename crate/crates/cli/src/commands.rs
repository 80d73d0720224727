use serde_json::{json, Value};
use soa_topos::modulators::{
    check_delta_modulator, check_lex_modulator, check_modulator, check_mono_saturated, check_premodulator,
    check_topology, delta_envelope, diagonal_completion, modulator_envelope,
};
use soa_topos::ortho::{self, Relation};
use soa_topos::soa::{compare, iterate, localized_hom, FactorizationResult};
use soa_topos::verify::{check_sheaf, sheafify};
use soa_topos::{Error, GeneratorSet, Machine, Verdict};

use crate::doc::{add_family, components_doc, presheaf_doc, Bundle, Indexing, Loaded};
use crate::{CliError, Outcome};

pub fn read(path: &str) -> Result<Bundle, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Bundle::parse(&text)
}

fn load(b: &Bundle) -> Result<Loaded, CliError> {
    // Outside `check`, a bundle that does not resolve is malformed input.
    Loaded::resolve(b).map_err(|e| match e {
        CliError::Invalid(m) => CliError::Malformed(m),
        e => e,
    })
}

fn verdict_doc(v: &Verdict) -> Value {
    json!({ "passed": v.passed, "axiom": v.axiom, "witness": v.witness })
}

/// Builds every entry of the bundle and, when present, checks the topology axioms.
pub fn check(b: &Bundle) -> Result<Outcome, CliError> {
    let l = match Loaded::resolve(b) {
        Ok(l) => l,
        Err(CliError::Invalid(m)) => {
            return Ok(Outcome::checked(json!({ "command": "check", "valid": false, "violation": m }), false))
        }
        Err(e) => return Err(e),
    };
    if let Some(j) = &l.topology {
        let v = check_topology(j)?;
        if !v.passed {
            let m = format!("topology: {} ({})", v.axiom.unwrap_or_default(), v.witness.unwrap_or_default());
            return Ok(Outcome::checked(json!({ "command": "check", "valid": false, "violation": m }), false));
        }
    }
    let doc = json!({
        "command": "check",
        "valid": true,
        "objects": l.category.num_objects(),
        "morphisms": l.category.num_morphisms(),
        "presheaves": l.presheaves.len(),
        "maps": l.maps.len(),
        "families": l.families.len(),
        "topology": l.topology.is_some(),
    });
    Ok(Outcome::ok(doc))
}

pub struct FactorizeArgs<'a> {
    pub map: &'a str,
    pub family: Option<&'a str>,
    pub machine: Machine,
    pub max_iter: usize,
    pub oracle: bool,
}

fn factorization_doc(r: &FactorizationResult, machine: Machine, converged: bool) -> Value {
    let evidence: Vec<Value> =
        r.certificate.evidence.iter().map(|(m, ok)| json!({ "member": m, "orthogonal": ok })).collect();
    json!({
        "command": "factorize",
        "reference": "convergence of the small object argument to the orthogonal factorization",
        "machine": machine.name(),
        "converged": converged,
        "iterations": r.iterations,
        "middle": presheaf_doc(&r.middle),
        "lambda": components_doc(&r.lambda),
        "rho": components_doc(&r.rho),
        "certificate": {
            "rho_in_right_class": r.certificate.rho_in_right_class,
            "evidence": evidence,
            "comparison_converged": r.certificate.comparison_converged,
        },
    })
}

/// Factors a map; on non-convergence the last stage is emitted with exit code 2.
pub fn factorize(b: &Bundle, a: &FactorizeArgs) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let f = l.map(a.map)?;
    let w = l.family(a.family)?;
    let (r, converged) = match iterate(a.machine, f, &w, a.max_iter) {
        Ok(r) => (r, true),
        Err(Error::NonConvergence { last, .. }) => (*last, false),
        Err(e) => return Err(e.into()),
    };
    let mut doc = factorization_doc(&r, a.machine, converged);
    if a.oracle {
        let rel = if a.machine == Machine::Quillen { Relation::Weak } else { Relation::Unique };
        let m = ortho::membership(&r.rho, &w, rel, true)?;
        doc["oracle"] = json!({ "rho_in_right_class": m.member });
    }
    let exit = if converged { crate::Exit::Ok } else { crate::Exit::NonConvergence };
    Ok(Outcome { doc, exit })
}

pub fn sheafify_cmd(b: &Bundle, presheaf: &str) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let f = l.presheaf(presheaf)?;
    let j = l.topology()?;
    let input = check_sheaf(f, j)?;
    let s = sheafify(f, j)?;
    let doc = json!({
        "command": "sheafify",
        "reference": "sheafification by two plus constructions",
        "sheaf": presheaf_doc(&s.sheaf),
        "unit": components_doc(&s.unit),
        "unit_iso": s.unit.is_objectwise_bijective(),
        "input_is_sheaf": input.is_sheaf(),
        "output_is_sheaf": { "by_plus": s.verdict.by_plus, "by_orthogonality": s.verdict.by_orthogonality },
        "third_plus_iso": s.third_plus_iso,
    });
    Ok(Outcome::checked(doc, s.verdict.is_sheaf() && s.verdict.agree() && s.third_plus_iso))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Pre,
    Mod,
    Lex,
    Delta,
    MonoSat,
}

pub fn validate_modulator(
    b: &Bundle,
    family: Option<&str>,
    level: Level,
    lax: bool,
    max_iter: usize,
) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let w = l.family(family)?;
    let gens = GeneratorSet::all(&l.category);
    let (v, reference) = match level {
        Level::Pre => (check_premodulator(&w, &gens, lax)?, "pre-modulator axioms"),
        Level::Mod => (check_modulator(&w, &gens, lax)?, "modulator: the codomain functor is a fibration"),
        Level::Lex => (check_lex_modulator(&w, &gens, lax)?, "lex modulator: cofiltered fibres"),
        Level::Delta => (check_delta_modulator(&w, &gens, &[], lax, max_iter)?, "modulator closed under diagonals"),
        Level::MonoSat => (check_mono_saturated(&w, &gens, max_iter)?, "mono-saturation"),
    };
    let name = match level {
        Level::Pre => "pre",
        Level::Mod => "mod",
        Level::Lex => "lex",
        Level::Delta => "delta",
        Level::MonoSat => "mono-sat",
    };
    let mut doc = json!({ "command": "validate-modulator", "reference": reference, "level": name, "lax": lax });
    doc["verdict"] = verdict_doc(&v);
    Ok(Outcome::checked(doc, v.passed))
}

pub fn compare_cmd(b: &Bundle, map: &str, family: Option<&str>) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let f = l.map(map)?;
    let w = l.family(family)?;
    let c = compare(f, &w)?;
    let maps: Vec<Value> = c.maps.iter().map(|m| json!({ "name": m.name, "bijective": m.bijective })).collect();
    let passed = c.all_bijective() && c.kelly_plus_iso;
    let doc = json!({
        "command": "compare",
        "reference": "the k-construction agrees with the plus construction for pre-modulators",
        "maps": maps,
        "kelly_plus_iso": c.kelly_plus_iso,
        "passed": passed,
    });
    Ok(Outcome::checked(doc, passed))
}

pub fn localize_hom(b: &Bundle, maps: &[String], src: &str, tgt: &str, max_iter: usize) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let ids: Vec<&str> = maps.iter().map(String::as_str).collect();
    let hom = localized_hom(&l.category, &ids, src, tgt, max_iter)?;
    let doc = json!({
        "command": "localize-hom",
        "reference": "hom-sets of the localization through the reflection of representables",
        "maps": maps,
        "src": src,
        "tgt": tgt,
        "size": hom.len(),
        "elements": hom.elements(),
    });
    Ok(Outcome::ok(doc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// Modulator envelope.
    Mod,
    /// Members and their diagonals.
    Delta,
    /// Modulator envelope of the diagonal completion.
    DeltaMod,
}

/// Emits a bundle over the same category holding only the computed family.
pub fn envelope(b: &Bundle, family: Option<&str>, kind: Kind) -> Result<Outcome, CliError> {
    let l = load(b)?;
    let w = l.family(family)?;
    let gens = GeneratorSet::all(&l.category);
    let (e, name, indexing) = match kind {
        Kind::Mod => (modulator_envelope(&w, &gens)?, "mod", Indexing::Full),
        Kind::Delta => (diagonal_completion(&w)?, "delta", Indexing::Discrete),
        Kind::DeltaMod => (delta_envelope(&w, &gens)?, "delta-mod", Indexing::Full),
    };
    let mut out = Bundle::new(&l.category);
    add_family(&mut out, name, &e, indexing);
    Ok(Outcome::ok(serde_json::to_value(out).expect("bundle serializes")))
}
