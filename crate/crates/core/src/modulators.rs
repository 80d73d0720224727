//! Sieves and Grothendieck topologies on finite sites, the modulator hierarchy
//! (pre-modulator, modulator, lex and Δ-modulators), envelopes and mono-saturation.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arrowcalc;
use crate::error::{Error, Result};
use crate::fincat::{has_cone_over_every_finite_diagram, tuple_id, FinCategory};
use crate::finset::FinSet;
use crate::presheaf::{pullback, yoneda_at, Components, Presheaf, PresheafMap};
use crate::soa::{iterate, Machine, MapFamily};
use crate::verify::{find_arrow_iso, find_iso};

/// Outcome of an axiom check; on failure names the axiom and a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub axiom: Option<String>,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { passed: true, axiom: None, witness: None }
    }
    pub fn fail(axiom: &str, witness: String) -> Verdict {
        Verdict { passed: false, axiom: Some(axiom.to_string()), witness: Some(witness) }
    }
}

/// Objects of the base whose representables serve as generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    objects: Vec<usize>,
}

impl GeneratorSet {
    pub fn all(c: &FinCategory) -> GeneratorSet {
        GeneratorSet { objects: (0..c.num_objects()).collect() }
    }
    pub fn new(c: &FinCategory, ids: &[&str]) -> Result<GeneratorSet> {
        let mut objects = ids.iter().map(|id| c.object_index(id)).collect::<Result<Vec<_>>>()?;
        objects.sort_unstable();
        objects.dedup();
        if objects.is_empty() {
            return Err(Error::MalformedFamily("generator set is empty".into()));
        }
        Ok(GeneratorSet { objects })
    }
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }
}

/// A set of morphisms into `object` closed under precomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    object: usize,
    arrows: Vec<usize>,
}

impl Sieve {
    /// The sieve generated by `gens`.
    pub fn generated(c: &FinCategory, x: usize, gens: &[usize]) -> Result<Sieve> {
        let mut arrows = BTreeSet::new();
        for &g in gens {
            if c.tgt(g) != x {
                return Err(Error::MalformedTopology(format!(
                    "`{}` does not have target `{}`",
                    c.morphism(g).id,
                    c.object(x)
                )));
            }
            for &h in c.incoming(c.src(g)) {
                arrows.insert(c.compose(g, h));
            }
        }
        Ok(Sieve { object: x, arrows: arrows.into_iter().collect() })
    }

    pub fn maximal(c: &FinCategory, x: usize) -> Sieve {
        Sieve::generated(c, x, &[c.identity(x)]).expect("identity has the right target")
    }

    /// Checks closure of an explicit arrow set.
    pub fn from_arrows(c: &FinCategory, x: usize, arrows: &[usize]) -> Result<Sieve> {
        let s = Sieve::generated(c, x, arrows)?;
        if s.arrows.len() != arrows.iter().collect::<BTreeSet<_>>().len() {
            return Err(Error::MalformedTopology("arrow set is not closed under precomposition".into()));
        }
        Ok(s)
    }

    pub fn object(&self) -> usize {
        self.object
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn contains(&self, m: usize) -> bool {
        self.arrows.binary_search(&m).is_ok()
    }
    pub fn is_maximal(&self, c: &FinCategory) -> bool {
        self.contains(c.identity(self.object))
    }
    pub fn is_subsieve_of(&self, other: &Sieve) -> bool {
        self.object == other.object && self.arrows.iter().all(|&m| other.contains(m))
    }

    /// `m*S = {g | m∘g ∈ S}` for `m: Y → X`.
    pub fn pullback(&self, c: &FinCategory, m: usize) -> Sieve {
        let y = c.src(m);
        let arrows = c.incoming(y).iter().copied().filter(|&g| self.contains(c.compose(m, g))).collect::<BTreeSet<_>>();
        Sieve { object: y, arrows: arrows.into_iter().collect() }
    }

    pub fn name(&self, c: &FinCategory) -> String {
        let ids: Vec<&str> = self.arrows.iter().map(|&m| c.morphism(m).id.as_str()).collect();
        format!("sieve({};{})", c.object(self.object), ids.join(","))
    }

    /// The subpresheaf of `y(X)` this sieve determines.
    pub fn presheaf(&self, c: &Arc<FinCategory>) -> Presheaf {
        let values: Vec<FinSet> = (0..c.num_objects())
            .map(|z| {
                FinSet::new(self.arrows.iter().filter(|&&g| c.src(g) == z).map(|&g| c.morphism(g).id.clone()))
                    .expect("distinct ids")
            })
            .collect();
        let restriction = c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                values[m.tgt]
                    .elements()
                    .iter()
                    .map(|g| {
                        let g = c.morphism_index(g).expect("arrow id");
                        values[m.src].index_of(&c.morphism(c.compose(g, u)).id).expect("sieve is closed")
                    })
                    .collect()
            })
            .collect();
        Presheaf::new(c.clone(), values, restriction).expect("sieves are presheaves")
    }

    /// `R ↪ y(X)`.
    pub fn inclusion(&self, c: &Arc<FinCategory>) -> PresheafMap {
        let r = Arc::new(self.presheaf(c));
        let yx = Arc::new(yoneda_at(c, self.object));
        let components = (0..c.num_objects())
            .map(|z| r.value(z).elements().iter().map(|g| yx.value(z).index_of(g).expect("arrow in hom")).collect())
            .collect();
        PresheafMap::new(r, yx, components).expect("inclusion is natural")
    }
}

/// Every sieve on `x`.
pub fn all_sieves(c: &FinCategory, x: usize) -> Result<Vec<Sieve>> {
    let into = c.incoming(x);
    if into.len() > 20 {
        return Err(Error::SizeExceeded { what: "sieve enumeration".into(), size: 1 << 20, limit: crate::guard::limit() });
    }
    crate::guard::check("sieve enumeration", 1 << into.len())?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << into.len()) {
        let arrows: Vec<usize> = (0..into.len()).filter(|&i| mask >> i & 1 == 1).map(|i| into[i]).collect();
        let closed = arrows.iter().all(|&g| c.incoming(c.src(g)).iter().all(|&h| arrows.contains(&c.compose(g, h))));
        if closed {
            let mut arrows = arrows;
            arrows.sort_unstable();
            out.push(Sieve { object: x, arrows });
        }
    }
    out.sort();
    Ok(out)
}

/// Covering sieves per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    base: Arc<FinCategory>,
    covers: Vec<Vec<Sieve>>,
}

impl Topology {
    pub fn new(base: Arc<FinCategory>, mut covers: Vec<Vec<Sieve>>) -> Result<Topology> {
        if covers.len() != base.num_objects() {
            return Err(Error::MalformedTopology("one list of covers per object is required".into()));
        }
        for (x, list) in covers.iter_mut().enumerate() {
            if list.iter().any(|s| s.object != x) {
                return Err(Error::MalformedTopology(format!("sieve on the wrong object at `{}`", base.object(x))));
            }
            list.sort();
            list.dedup();
        }
        Ok(Topology { base, covers })
    }

    /// Covers given by generating morphisms; unlisted objects get the maximal sieve only.
    pub fn from_generators(base: Arc<FinCategory>, covers: &[(&str, Vec<Vec<&str>>)]) -> Result<Topology> {
        let mut lists: Vec<Option<Vec<Sieve>>> = vec![None; base.num_objects()];
        for (obj, sieves) in covers {
            let x = base.object_index(obj)?;
            let mut list = Vec::new();
            for gens in sieves {
                let gens = gens.iter().map(|g| base.morphism_index(g)).collect::<Result<Vec<_>>>()?;
                list.push(Sieve::generated(&base, x, &gens)?);
            }
            lists[x] = Some(list);
        }
        let covers = lists
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.unwrap_or_else(|| vec![Sieve::maximal(&base, x)]))
            .collect();
        Topology::new(base, covers)
    }

    /// Only maximal sieves cover.
    pub fn trivial(base: Arc<FinCategory>) -> Topology {
        let covers = (0..base.num_objects()).map(|x| vec![Sieve::maximal(&base, x)]).collect();
        Topology { base, covers }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }
    pub fn covers(&self, x: usize) -> &[Sieve] {
        &self.covers[x]
    }
    pub fn is_covering(&self, s: &Sieve) -> bool {
        self.covers[s.object].binary_search(s).is_ok()
    }
}

/// Maximality, pullback stability and locality, by enumeration over the site.
pub fn check_topology(j: &Topology) -> Result<Verdict> {
    let c = j.base();
    for x in 0..c.num_objects() {
        if !j.is_covering(&Sieve::maximal(c, x)) {
            return Ok(Verdict::fail("maximality", format!("maximal sieve on `{}` does not cover", c.object(x))));
        }
    }
    for x in 0..c.num_objects() {
        for r in j.covers(x) {
            for &m in c.incoming(x) {
                if !j.is_covering(&r.pullback(c, m)) {
                    return Ok(Verdict::fail(
                        "stability",
                        format!("pullback of {} along `{}` does not cover", r.name(c), c.morphism(m).id),
                    ));
                }
            }
        }
    }
    for x in 0..c.num_objects() {
        for s in all_sieves(c, x)? {
            if j.is_covering(&s) {
                continue;
            }
            for r in j.covers(x) {
                if r.arrows.iter().all(|&m| j.is_covering(&s.pullback(c, m))) {
                    return Ok(Verdict::fail(
                        "locality",
                        format!("{} is covered locally along {} but does not cover", s.name(c), r.name(c)),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// The full family of covering-sieve inclusions `R ↪ y(X)`.
pub fn topology_to_family(j: &Topology) -> Result<MapFamily> {
    let c = j.base();
    let entries = (0..c.num_objects())
        .flat_map(|x| j.covers(x).iter().map(|s| (s.name(c), s.inclusion(c))))
        .collect();
    MapFamily::full(c.clone(), entries)
}

/// The generator `c` and an iso `y(c) → p`, if `p` is representable by a generator.
fn representing(p: &Arc<Presheaf>, gens: &GeneratorSet) -> Result<Option<(usize, PresheafMap)>> {
    let c = p.base();
    for &x in gens.objects() {
        let yx = Arc::new(yoneda_at(c, x));
        if *yx == **p {
            return Ok(Some((x, PresheafMap::identity(yx))));
        }
        if yx.sizes() == p.sizes() {
            if let Some(iso) = find_iso(&yx, p)? {
                return Ok(Some((x, iso)));
            }
        }
    }
    Ok(None)
}

/// The map `y(c) → p` classifying `e ∈ p(c)`.
pub fn element_map(p: &Arc<Presheaf>, c: usize, e: usize) -> PresheafMap {
    let base = p.base();
    let yc = Arc::new(yoneda_at(base, c));
    let components = (0..base.num_objects())
        .map(|z| {
            yc.value(z)
                .elements()
                .iter()
                .map(|h| p.restrict(base.morphism_index(h).expect("hom element"), e))
                .collect()
        })
        .collect();
    PresheafMap::new_unchecked(yc, p.clone(), components)
}

/// Base change of `w` along the generator map `y(c) → t w` picked by `e`.
pub fn base_change(w: &PresheafMap, c: usize, e: usize) -> Result<PresheafMap> {
    let g = element_map(w.t(), c, e);
    Ok(pullback(w, &g)?.pr.clone())
}

fn squares_of(w: &MapFamily, i: usize, j: usize) -> Vec<(&Components, &Components)> {
    let cat = w.indexing();
    cat.hom(i, j).iter().map(|&u| (w.top(u), w.bottom(u))).collect()
}

/// Conditions on a pre-modulator: full faithfulness (or the two weaker conditions under
/// `lax`), codomains among the generators, and identities of generators in the family.
pub fn check_premodulator(w: &MapFamily, gens: &GeneratorSet, lax: bool) -> Result<Verdict> {
    let c = w.base();
    let n = w.len();
    if !lax {
        for i in 0..n {
            for j in 0..n {
                let sq = arrowcalc::squares(w.arrow(i), w.arrow(j))?;
                let mut seen = BTreeSet::new();
                for (top, bottom) in squares_of(w, i, j) {
                    match sq.find(top, bottom) {
                        Some(k) if seen.insert(k) => {}
                        _ => {
                            return Ok(Verdict::fail(
                                "full faithfulness",
                                format!("two morphisms `{}` → `{}` have the same square", w.name(i), w.name(j)),
                            ))
                        }
                    }
                }
                if seen.len() != sq.len() {
                    return Ok(Verdict::fail(
                        "full faithfulness",
                        format!("a square `{}` → `{}` is not in the family", w.name(i), w.name(j)),
                    ));
                }
            }
        }
    }
    let mut codomain = Vec::with_capacity(n);
    for i in 0..n {
        match representing(w.arrow(i).t(), gens)? {
            Some(r) => codomain.push(r),
            None => {
                return Ok(Verdict::fail(
                    "representable codomains",
                    format!("codomain of `{}` is not a representable generator", w.name(i)),
                ))
            }
        }
    }
    let is_identity = |i: usize| w.arrow(i).is_objectwise_bijective();
    for &x in gens.objects() {
        if !(0..n).any(|i| is_identity(i) && codomain[i].0 == x) {
            return Ok(Verdict::fail("identities of generators", format!("no identity of y({}) in the family", c.object(x))));
        }
    }
    if lax {
        for i in 0..n {
            let to_identity = (0..n).any(|j| {
                is_identity(j)
                    && codomain[j].0 == codomain[i].0
                    && w.indexing().hom(i, j).iter().any(|&u| {
                        let b = w.bottom(u);
                        b.iter().enumerate().all(|(x, row)| crate::finset::is_bijective(row, w.arrow(j).t().value(x).len()))
                    })
            });
            if !to_identity {
                return Ok(Verdict::fail("map to the identity", format!("`{}` → 1 of its codomain is not in the family", w.name(i))));
            }
        }
        for j in (0..n).filter(|&j| is_identity(j)) {
            for i in 0..n {
                let sq = arrowcalc::squares(w.arrow(j), w.arrow(i))?;
                if squares_of(w, j, i).len() != sq.len() {
                    return Ok(Verdict::fail(
                        "maps out of identities",
                        format!("squares `{}` → `{}` are not all in the family", w.name(j), w.name(i)),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Members of `W` isomorphic in the arrow category to `a`.
fn find_member(w: &MapFamily, a: &PresheafMap) -> Result<Option<usize>> {
    for j in 0..w.len() {
        let b = w.arrow(j);
        if b.s().sizes() != a.s().sizes() || b.t().sizes() != a.t().sizes() {
            continue;
        }
        if find_arrow_iso(a, b)?.is_some() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Pre-modulator plus stability of the family under base change along generator maps.
pub fn check_modulator(w: &MapFamily, gens: &GeneratorSet, lax: bool) -> Result<Verdict> {
    let pre = check_premodulator(w, gens, lax)?;
    if !pre.passed {
        return Ok(pre);
    }
    check_base_change_closed(w, gens)
}

fn check_base_change_closed(w: &MapFamily, gens: &GeneratorSet) -> Result<Verdict> {
    let c = w.base();
    for i in 0..w.len() {
        let t = w.arrow(i).t();
        for &x in gens.objects() {
            for e in 0..t.value(x).len() {
                let bc = base_change(w.arrow(i), x, e)?;
                if find_member(w, &bc)?.is_none() {
                    return Ok(Verdict::fail(
                        "base change",
                        format!(
                            "base change of `{}` along y({}) → t w at `{}` is not in the family",
                            w.name(i),
                            c.object(x),
                            t.value(x).element(e)
                        ),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Modulator whose fibers `W(X)` over the generators are cofiltered.
pub fn check_lex_modulator(w: &MapFamily, gens: &GeneratorSet, lax: bool) -> Result<Verdict> {
    let m = check_modulator(w, gens, lax)?;
    if !m.passed {
        return Ok(m);
    }
    let c = w.base();
    let cat = w.indexing();
    let mut cod = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        cod.push(representing(w.arrow(i).t(), gens)?.expect("checked by the pre-modulator axioms"));
    }
    for &x in gens.objects() {
        let members: Vec<usize> = (0..w.len()).filter(|&i| cod[i].0 == x).collect();
        // `u: i → j` lies over the identity when `φ_j⁻¹ ∘ bottom ∘ φ_i` fixes `id_x`.
        let id_pos = yoneda_at(c, x).value(x).index_of(&c.morphism(c.identity(x)).id).expect("identity");
        let over_id = |u: usize| {
            let m = cat.morphism(u);
            let (phi_i, phi_j) = (&cod[m.src].1, &cod[m.tgt].1);
            let e = w.bottom(u)[x][phi_i.apply(x, id_pos)];
            phi_j.apply(x, id_pos) == e
        };
        let pos: std::collections::HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mors: Vec<usize> = (0..cat.num_morphisms())
            .filter(|&u| pos.contains_key(&cat.src(u)) && pos.contains_key(&cat.tgt(u)) && over_id(u))
            .collect();
        let mpos: std::collections::HashMap<usize, usize> = mors.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let mut compose = Vec::new();
        for &g in &mors {
            for &f in &mors {
                if cat.tgt(f) == cat.src(g) {
                    compose.push((mpos[&g], mpos[&f], mpos[&cat.compose(g, f)]));
                }
            }
        }
        let (fiber, _, _) = FinCategory::from_indexed(
            members.iter().map(|&i| w.name(i).to_string()).collect(),
            mors.iter().map(|&u| (cat.morphism(u).id.clone(), pos[&cat.src(u)], pos[&cat.tgt(u)])).collect(),
            members.iter().map(|&i| mpos[&cat.identity(i)]).collect(),
            compose,
        );
        if !has_cone_over_every_finite_diagram(&fiber) {
            return Ok(Verdict::fail("cofiltered fibers", format!("the fiber over `{}` is not cofiltered", c.object(x))));
        }
    }
    Ok(Verdict::pass())
}

/// Identities of the generators and all base changes of members along generator maps,
/// deduplicated up to isomorphism, as a full family.
pub fn modulator_envelope(w: &MapFamily, gens: &GeneratorSet) -> Result<MapFamily> {
    let c = w.base();
    let mut entries: Vec<(String, PresheafMap)> = Vec::new();
    let push = |name: String, a: PresheafMap, entries: &mut Vec<(String, PresheafMap)>| -> Result<()> {
        for (_, b) in entries.iter() {
            if b.s().sizes() == a.s().sizes() && b.t().sizes() == a.t().sizes() && find_arrow_iso(&a, b)?.is_some() {
                return Ok(());
            }
        }
        entries.push((name, a));
        crate::guard::check("envelope", entries.len())
    };
    for &x in gens.objects() {
        let yx = Arc::new(yoneda_at(c, x));
        push(format!("id({})", c.object(x)), PresheafMap::identity(yx), &mut entries)?;
    }
    for i in 0..w.len() {
        let t = w.arrow(i).t();
        for &x in gens.objects() {
            for e in 0..t.value(x).len() {
                let name = tuple_id(&[w.name(i), c.object(x), t.value(x).element(e)]);
                push(name, base_change(w.arrow(i), x, e)?, &mut entries)?;
            }
        }
    }
    MapFamily::full(c.clone(), entries)
}

/// `W^Δ`: members and their diagonals, as a discrete family. A diagonal already present by
/// name is not added again.
pub fn diagonal_completion(w: &MapFamily) -> Result<MapFamily> {
    let mut entries = w.entries();
    for i in 0..w.len() {
        let name = format!("delta({})", w.name(i));
        if !entries.iter().any(|e| e.0 == name) {
            entries.push((name, arrowcalc::diagonal(w.arrow(i), 1)?));
        }
    }
    MapFamily::discrete(w.base().clone(), entries)
}

/// `W^{Δmod}`.
pub fn delta_envelope(w: &MapFamily, gens: &GeneratorSet) -> Result<MapFamily> {
    modulator_envelope(&diagonal_completion(w)?, gens)
}

/// Whether the k-construction inverts the right part of `a`, i.e. `a` lies in the left class.
pub fn in_left_class(a: &PresheafMap, w: &MapFamily, max_iter: usize) -> Result<bool> {
    Ok(iterate(Machine::Kelly, a, w, max_iter)?.rho.is_objectwise_bijective())
}

/// Modulator whose diagonals (and the given probes) lie in the generated left class.
pub fn check_delta_modulator(
    w: &MapFamily,
    gens: &GeneratorSet,
    probes: &[PresheafMap],
    lax: bool,
    max_iter: usize,
) -> Result<Verdict> {
    let m = check_modulator(w, gens, lax)?;
    if !m.passed {
        return Ok(m);
    }
    for i in 0..w.len() {
        let d = arrowcalc::diagonal(w.arrow(i), 1)?;
        if !in_left_class(&d, w, max_iter)? {
            return Ok(Verdict::fail("diagonals in the left class", format!("Δ`{}` is not inverted", w.name(i))));
        }
    }
    for (k, p) in probes.iter().enumerate() {
        if !in_left_class(p, w, max_iter)? {
            return Ok(Verdict::fail("probe in the left class", format!("probe #{k} is not inverted")));
        }
    }
    Ok(Verdict::pass())
}

/// Adjoins every sieve inclusion `R ↪ y(X)` over a generator that lies in the left class.
pub fn mono_saturate(w: &MapFamily, gens: &GeneratorSet, max_iter: usize) -> Result<MapFamily> {
    let c = w.base();
    let mut entries = w.entries();
    for &x in gens.objects() {
        for s in all_sieves(c, x)? {
            let incl = s.inclusion(c);
            if find_member(w, &incl)?.is_some() {
                continue;
            }
            if in_left_class(&incl, w, max_iter)? {
                entries.push((s.name(c), incl));
            }
        }
    }
    MapFamily::full(c.clone(), entries)
}

/// Every sieve inclusion over a generator that lies in the left class is already a member.
pub fn check_mono_saturated(w: &MapFamily, gens: &GeneratorSet, max_iter: usize) -> Result<Verdict> {
    let c = w.base();
    for &x in gens.objects() {
        for s in all_sieves(c, x)? {
            let incl = s.inclusion(c);
            if find_member(w, &incl)?.is_none() && in_left_class(&incl, w, max_iter)? {
                return Ok(Verdict::fail("mono-saturation", format!("{} is inverted but not a member", s.name(c))));
            }
        }
    }
    Ok(Verdict::pass())
}

/// For members `v, w` and every map `s v → t w`, the composite of `v` with the base
/// change of `w` is isomorphic to a member.
pub fn check_tower_stable(w: &MapFamily) -> Result<Verdict> {
    for i in 0..w.len() {
        for j in 0..w.len() {
            let (v, wj) = (w.arrow(i), w.arrow(j));
            for h in crate::presheaf::nat_hom(v.s(), wj.t())?.all() {
                let h = PresheafMap::new_unchecked(v.s().clone(), wj.t().clone(), h.clone());
                let pb = pullback(wj, &h)?;
                let u = PresheafMap::compose(v, &pb.pr)?;
                if find_member(w, &u)?.is_none() {
                    return Ok(Verdict::fail(
                        "stability by towers",
                        format!("tower of `{}` under `{}` is not in the family", w.name(j), w.name(i)),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sier_topology_is_valid_and_lex() {
        let j = fixtures::sier_topology();
        assert!(check_topology(&j).unwrap().passed);
        let w = topology_to_family(&j).unwrap();
        let gens = GeneratorSet::all(j.base());
        assert!(check_premodulator(&w, &gens, false).unwrap().passed);
        assert!(check_modulator(&w, &gens, false).unwrap().passed);
        assert!(check_lex_modulator(&w, &gens, false).unwrap().passed);
    }

    #[test]
    fn broken_topologies() {
        let c = fixtures::sier_site();
        let x = c.object_index("X").unwrap();
        let u = c.object_index("U").unwrap();
        let s = Sieve::generated(&c, x, &[c.morphism_index("u").unwrap(), c.morphism_index("v").unwrap()]).unwrap();
        // The pullback of S along u: U → X is maximal on U, so drop the maximal sieve on U.
        let mut covers: Vec<Vec<Sieve>> = (0..c.num_objects()).map(|y| vec![Sieve::maximal(&c, y)]).collect();
        covers[x].push(s.clone());
        covers[u].clear();
        let j = Topology::new(c.clone(), covers).unwrap();
        let v = check_topology(&j).unwrap();
        assert_eq!(v.axiom.as_deref(), Some("maximality"));
        assert!(check_topology(&Topology::trivial(c)).unwrap().passed);
    }

    #[test]
    fn identities_form_a_premodulator() {
        let c = fixtures::sier_site();
        let j = Topology::trivial(c.clone());
        let w = topology_to_family(&j).unwrap();
        let gens = GeneratorSet::all(&c);
        assert!(check_lex_modulator(&w, &gens, false).unwrap().passed);
        let partial = MapFamily::full(c.clone(), w.entries().into_iter().skip(1).collect()).unwrap();
        assert_eq!(check_premodulator(&partial, &gens, false).unwrap().axiom.as_deref(), Some("identities of generators"));
    }

    #[test]
    fn raw_open_family_is_not_a_modulator() {
        let w = fixtures::raw_open_family();
        let gens = GeneratorSet::all(w.base());
        let v = check_modulator(&w, &gens, false).unwrap();
        assert!(!v.passed);
        let env = modulator_envelope(&w, &gens).unwrap();
        assert!(check_modulator(&env, &gens, false).unwrap().passed);
        assert_eq!(env.len(), 3);
        let again = modulator_envelope(&env, &gens).unwrap();
        assert_eq!(again.len(), env.len());
    }

    #[test]
    fn incomparable_sieves_break_cofilteredness() {
        let c = fixtures::sier_site();
        let j = Topology::from_generators(
            c.clone(),
            &[
                ("X", vec![vec!["u"], vec!["v"], vec!["id_X"]]),
                ("U", vec![vec!["pu"], vec!["id_U"]]),
                ("V", vec![vec!["pv"], vec!["id_V"]]),
            ],
        )
        .unwrap();
        let w = topology_to_family(&j).unwrap();
        let gens = GeneratorSet::all(&c);
        assert!(check_modulator(&w, &gens, false).unwrap().passed);
        let v = check_lex_modulator(&w, &gens, false).unwrap();
        assert_eq!(v.axiom.as_deref(), Some("cofiltered fibers"));
    }

    #[test]
    fn towers_of_sieves() {
        let w = topology_to_family(&fixtures::sier_topology()).unwrap();
        assert!(check_tower_stable(&w).unwrap().passed);
    }

    #[test]
    fn diagonal_completion_over_point() {
        let c = fixtures::point();
        let w = MapFamily::discrete(c.clone(), vec![("s0".into(), fixtures::fold_map(&c))]).unwrap();
        let d = diagonal_completion(&w).unwrap();
        assert_eq!(d.len(), 2);
        let delta = d.arrow(d.indexing().object_index("delta(s0)").unwrap());
        assert_eq!((delta.s().sizes(), delta.t().sizes()), (vec![2], vec![4]));
        let gens = GeneratorSet::all(&c);
        // Δ(2→1) is the diagonal 2 → 4, which the fold map does not invert.
        let env = modulator_envelope(&w, &gens).unwrap();
        assert!(!check_delta_modulator(&env, &gens, &[], false, 8).unwrap().passed);
    }

    #[test]
    fn grothendieck_topology_is_mono_saturated() {
        let j = fixtures::sier_topology();
        let w = topology_to_family(&j).unwrap();
        let gens = GeneratorSet::all(j.base());
        let sat = mono_saturate(&w, &gens, 8).unwrap();
        assert_eq!(sat.len(), w.len());
        assert!(check_mono_saturated(&w, &gens, 8).unwrap().passed);
        let raw = fixtures::raw_open_family();
        let gens = GeneratorSet::all(raw.base());
        assert!(!check_mono_saturated(&raw, &gens, 8).unwrap().passed);
    }
}
