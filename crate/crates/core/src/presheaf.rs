//! Finite-set-valued presheaves, natural transformations, pointwise (co)limits,
//! Yoneda, hom-sets and exponentials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::finset::{self, FinSet, SetDiagram, SetMap};
use crate::guard;

/// Per base object, a map between values given by indices.
pub type Components = Vec<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct Presheaf {
    base: Arc<FinCategory>,
    values: Vec<FinSet>,
    /// Per morphism `u: a → b`, the map `F(b) → F(a)`.
    restriction: Vec<Vec<usize>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.base == other.base && self.values == other.values && self.restriction == other.restriction)
    }
}
impl Eq for Presheaf {}

impl Presheaf {
    pub fn new(base: Arc<FinCategory>, values: Vec<FinSet>, restriction: Vec<Vec<usize>>) -> Result<Presheaf> {
        let p = Presheaf { base, values, restriction };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(base: Arc<FinCategory>, values: Vec<FinSet>, restriction: Vec<Vec<usize>>) -> Presheaf {
        let p = Presheaf { base, values, restriction };
        debug_assert!(p.validate().is_ok(), "{:?}", p.validate());
        p
    }

    /// Builds a presheaf from element ids. Restrictions along identities may be omitted.
    pub fn from_ids(
        base: Arc<FinCategory>,
        values: &[(&str, Vec<&str>)],
        restriction: &[(&str, Vec<(&str, &str)>)],
    ) -> Result<Presheaf> {
        let mut vals = vec![None; base.num_objects()];
        for (o, elems) in values {
            let x = base.object_index(o)?;
            vals[x] = Some(FinSet::new(elems.iter().copied())?);
        }
        let vals: Vec<FinSet> = vals
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::MalformedPresheaf(format!("no value at `{}`", base.object(x)))))
            .collect::<Result<_>>()?;
        let mut res: Vec<Option<Vec<usize>>> = vec![None; base.num_morphisms()];
        for (m, pairs) in restriction {
            let u = base.morphism_index(m)?;
            let (a, b) = (base.src(u), base.tgt(u));
            let map = SetMap::from_pairs(vals[b].clone(), vals[a].clone(), pairs)
                .map_err(|e| Error::MalformedPresheaf(format!("restriction along `{m}`: {e}")))?;
            res[u] = Some(map.assignment);
        }
        let res = res
            .into_iter()
            .enumerate()
            .map(|(u, r)| match r {
                Some(r) => Ok(r),
                None if base.is_identity(u) => Ok((0..vals[base.src(u)].len()).collect()),
                None => Err(Error::MalformedPresheaf(format!("no restriction along `{}`", base.morphism(u).id))),
            })
            .collect::<Result<_>>()?;
        Presheaf::new(base, vals, res)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.base;
        let bad = |m: String| Err(Error::MalformedPresheaf(m));
        if self.values.len() != c.num_objects() || self.restriction.len() != c.num_morphisms() {
            return bad("shape does not match the base".into());
        }
        for (u, m) in c.morphisms().iter().enumerate() {
            let r = &self.restriction[u];
            if r.len() != self.values[m.tgt].len() || r.iter().any(|&y| y >= self.values[m.src].len()) {
                return bad(format!("restriction along `{}` is not a total map", m.id));
            }
        }
        for x in 0..c.num_objects() {
            if self.restriction[c.identity(x)].iter().enumerate().any(|(i, &y)| i != y) {
                return bad(format!("identity of `{}` acts nontrivially", c.object(x)));
            }
        }
        for f in 0..c.num_morphisms() {
            for &g in c.out_of(c.tgt(f)) {
                let gf = c.compose(g, f);
                let (rf, rg, rgf) = (&self.restriction[f], &self.restriction[g], &self.restriction[gf]);
                if (0..self.values[c.tgt(g)].len()).any(|x| rgf[x] != rf[rg[x]]) {
                    return bad(format!(
                        "restriction not functorial at {}∘{}",
                        c.morphism(g).id,
                        c.morphism(f).id
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn terminal(base: Arc<FinCategory>) -> Presheaf {
        Self::constant(base, FinSet::singleton("*"))
    }

    pub fn initial(base: Arc<FinCategory>) -> Presheaf {
        Self::constant(base, FinSet::empty())
    }

    pub fn constant(base: Arc<FinCategory>, set: FinSet) -> Presheaf {
        let n = set.len();
        let values = vec![set; base.num_objects()];
        let restriction = vec![(0..n).collect(); base.num_morphisms()];
        Presheaf { base, values, restriction }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }
    pub fn value(&self, x: usize) -> &FinSet {
        &self.values[x]
    }
    pub fn values(&self) -> &[FinSet] {
        &self.values
    }
    /// `F(u)` for `u: a → b`, as a map `F(b) → F(a)`.
    pub fn restriction(&self, u: usize) -> &[usize] {
        &self.restriction[u]
    }
    pub fn restrict(&self, u: usize, e: usize) -> usize {
        self.restriction[u][e]
    }
    pub fn total_size(&self) -> usize {
        self.values.iter().map(FinSet::len).sum()
    }
    pub fn sizes(&self) -> Vec<usize> {
        self.values.iter().map(FinSet::len).collect()
    }
    pub fn value_by_id(&self, obj: &str) -> Result<&FinSet> {
        Ok(&self.values[self.base.object_index(obj)?])
    }
}

fn same_base(a: &Presheaf, b: &Presheaf) -> Result<()> {
    if a.base != b.base {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// Natural transformation between presheaves over the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    src: Arc<Presheaf>,
    tgt: Arc<Presheaf>,
    components: Components,
}

impl PresheafMap {
    pub fn new(src: Arc<Presheaf>, tgt: Arc<Presheaf>, components: Components) -> Result<PresheafMap> {
        same_base(&src, &tgt)?;
        let c = src.base.clone();
        if components.len() != c.num_objects() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for (x, comp) in components.iter().enumerate() {
            if comp.len() != src.values[x].len() || comp.iter().any(|&y| y >= tgt.values[x].len()) {
                return Err(Error::NotNatural(format!("component at `{}` is not a total map", c.object(x))));
            }
        }
        for (u, m) in c.morphisms().iter().enumerate() {
            for e in 0..src.values[m.tgt].len() {
                if components[m.src][src.restrict(u, e)] != tgt.restrict(u, components[m.tgt][e]) {
                    return Err(Error::NotNatural(format!(
                        "square for `{}` fails at element `{}`",
                        m.id,
                        src.values[m.tgt].element(e)
                    )));
                }
            }
        }
        Ok(PresheafMap { src, tgt, components })
    }

    pub(crate) fn new_unchecked(src: Arc<Presheaf>, tgt: Arc<Presheaf>, components: Components) -> PresheafMap {
        let m = PresheafMap { src, tgt, components };
        debug_assert!(
            PresheafMap::new(m.src.clone(), m.tgt.clone(), m.components.clone()).is_ok(),
            "unnatural construction"
        );
        m
    }

    /// Map given by element ids: `(object, [(x, y)])`.
    pub fn from_ids(src: Arc<Presheaf>, tgt: Arc<Presheaf>, components: &[(&str, Vec<(&str, &str)>)]) -> Result<PresheafMap> {
        let c = src.base.clone();
        let mut comps = vec![None; c.num_objects()];
        for (o, pairs) in components {
            let x = c.object_index(o)?;
            let m = SetMap::from_pairs(src.values[x].clone(), tgt.values[x].clone(), pairs)
                .map_err(|e| Error::NotNatural(format!("component at `{o}`: {e}")))?;
            comps[x] = Some(m.assignment);
        }
        let comps = comps
            .into_iter()
            .enumerate()
            .map(|(x, m)| match m {
                Some(m) => Ok(m),
                None if src.values[x].is_empty() => Ok(Vec::new()),
                None => Err(Error::NotNatural(format!("no component at `{}`", c.object(x)))),
            })
            .collect::<Result<_>>()?;
        PresheafMap::new(src, tgt, comps)
    }

    pub fn identity(f: Arc<Presheaf>) -> PresheafMap {
        let components = f.values.iter().map(|v| (0..v.len()).collect()).collect();
        PresheafMap { src: f.clone(), tgt: f, components }
    }

    /// The unique map `F → 1`.
    pub fn to_terminal(f: Arc<Presheaf>) -> PresheafMap {
        let one = Arc::new(Presheaf::terminal(f.base.clone()));
        let components = f.values.iter().map(|v| vec![0; v.len()]).collect();
        PresheafMap { src: f, tgt: one, components }
    }

    /// The unique map `0 → F`.
    pub fn from_initial(f: Arc<Presheaf>) -> PresheafMap {
        let zero = Arc::new(Presheaf::initial(f.base.clone()));
        let components = vec![Vec::new(); f.base.num_objects()];
        PresheafMap { src: zero, tgt: f, components }
    }

    /// `g ∘ f`
    pub fn compose(g: &PresheafMap, f: &PresheafMap) -> Result<PresheafMap> {
        if f.tgt != g.src {
            return Err(Error::NotComposable("target of f differs from source of g".into()));
        }
        let components = f
            .components
            .iter()
            .zip(&g.components)
            .map(|(fc, gc)| fc.iter().map(|&y| gc[y]).collect())
            .collect();
        Ok(PresheafMap { src: f.src.clone(), tgt: g.tgt.clone(), components })
    }

    /// Source (domain) presheaf.
    pub fn s(&self) -> &Arc<Presheaf> {
        &self.src
    }
    /// Target (codomain) presheaf.
    pub fn t(&self) -> &Arc<Presheaf> {
        &self.tgt
    }
    pub fn base(&self) -> &Arc<FinCategory> {
        &self.src.base
    }
    pub fn components(&self) -> &Components {
        &self.components
    }
    pub fn component(&self, x: usize) -> &[usize] {
        &self.components[x]
    }
    pub fn apply(&self, x: usize, e: usize) -> usize {
        self.components[x][e]
    }
    pub fn component_map(&self, x: usize) -> SetMap {
        SetMap {
            src: self.src.values[x].clone(),
            tgt: self.tgt.values[x].clone(),
            assignment: self.components[x].clone(),
        }
    }

    pub fn is_objectwise_injective(&self) -> bool {
        (0..self.components.len()).all(|x| finset::is_injective(&self.components[x], self.tgt.values[x].len()))
    }
    pub fn is_objectwise_surjective(&self) -> bool {
        (0..self.components.len()).all(|x| finset::is_surjective(&self.components[x], self.tgt.values[x].len()))
    }
    pub fn is_objectwise_bijective(&self) -> bool {
        (0..self.components.len()).all(|x| finset::is_bijective(&self.components[x], self.tgt.values[x].len()))
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        if !self.is_objectwise_bijective() {
            return None;
        }
        let components = self.components.iter().map(|c| finset::invert(c)).collect();
        Some(PresheafMap { src: self.tgt.clone(), tgt: self.src.clone(), components })
    }

}

/// Commutative square `f ∘ top = bottom ∘ w`, i.e. a map `w → f` in the arrow category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub w: PresheafMap,
    pub f: PresheafMap,
    pub top: PresheafMap,
    pub bottom: PresheafMap,
}

impl Square {
    pub fn new(w: PresheafMap, f: PresheafMap, top: PresheafMap, bottom: PresheafMap) -> Result<Square> {
        if top.src != w.src || top.tgt != f.src || bottom.src != w.tgt || bottom.tgt != f.tgt {
            return Err(Error::NotCommutative("edges do not match".into()));
        }
        let lhs = PresheafMap::compose(&f, &top)?;
        let rhs = PresheafMap::compose(&bottom, &w)?;
        if lhs.components != rhs.components {
            return Err(Error::NotCommutative("f∘top differs from bottom∘w".into()));
        }
        Ok(Square { w, f, top, bottom })
    }

    pub fn identity(f: &PresheafMap) -> Square {
        Square {
            w: f.clone(),
            f: f.clone(),
            top: PresheafMap::identity(f.src.clone()),
            bottom: PresheafMap::identity(f.tgt.clone()),
        }
    }
}

/// Search constraints for natural transformations.
#[derive(Clone, Debug, Default)]
pub(crate) struct NatConstraints {
    /// Per base object and source element, the allowed target elements (sorted).
    pub candidates: Option<Vec<Vec<Vec<usize>>>>,
    /// Require every component to be injective.
    pub injective: bool,
}

struct Search<'a> {
    src: &'a Presheaf,
    tgt: &'a Presheaf,
    cons: &'a NatConstraints,
    order: Vec<(usize, usize)>,
    assign: Components,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn allowed(&self, x: usize, e: usize, g: usize) -> bool {
        match &self.cons.candidates {
            Some(c) => c[x][e].binary_search(&g).is_ok(),
            None => true,
        }
    }

    fn set(&mut self, x: usize, e: usize, g: usize) -> bool {
        if self.cons.injective {
            if self.used[x][g] {
                return false;
            }
            self.used[x][g] = true;
        }
        self.assign[x][e] = g;
        self.trail.push((x, e));
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, e) = self.trail.pop().unwrap();
            if self.cons.injective {
                self.used[x][self.assign[x][e]] = false;
            }
            self.assign[x][e] = UNSET;
        }
    }

    /// Assigns `η_x(e) = g` and forces all restrictions; false on conflict.
    fn assign_with_propagation(&mut self, x: usize, e: usize, g: usize) -> bool {
        if !self.set(x, e, g) {
            return false;
        }
        let base = self.src.base.clone();
        for &u in base.incoming(x) {
            let y = base.src(u);
            let (e2, g2) = (self.src.restrict(u, e), self.tgt.restrict(u, g));
            let cur = self.assign[y][e2];
            if cur == UNSET {
                if !self.allowed(y, e2, g2) || !self.set(y, e2, g2) {
                    return false;
                }
            } else if cur != g2 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&Components) -> Result<bool>) -> Result<bool> {
        let mut p = pos;
        while p < self.order.len() && self.assign[self.order[p].0][self.order[p].1] != UNSET {
            p += 1;
        }
        if p == self.order.len() {
            return visit(&self.assign);
        }
        let (x, e) = self.order[p];
        let cands: Vec<usize> = match &self.cons.candidates {
            Some(c) => c[x][e].clone(),
            None => (0..self.tgt.values[x].len()).collect(),
        };
        for g in cands {
            let mark = self.trail.len();
            if self.assign_with_propagation(x, e, g) && !self.run(p + 1, visit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

/// Enumerates natural transformations `src → tgt` satisfying `cons`, in a deterministic order.
/// `visit` returns `false` to stop early.
pub(crate) fn search_nat(
    src: &Presheaf,
    tgt: &Presheaf,
    cons: &NatConstraints,
    visit: &mut dyn FnMut(&Components) -> Result<bool>,
) -> Result<()> {
    same_base(src, tgt)?;
    let c = &src.base;
    let mut objs: Vec<usize> = (0..c.num_objects()).collect();
    objs.sort_by_key(|&x| (std::cmp::Reverse(c.incoming(x).len()), x));
    let order = objs.iter().flat_map(|&x| (0..src.values[x].len()).map(move |e| (x, e))).collect();
    let mut s = Search {
        src,
        tgt,
        cons,
        order,
        assign: src.values.iter().map(|v| vec![UNSET; v.len()]).collect(),
        used: tgt.values.iter().map(|v| vec![false; v.len()]).collect(),
        trail: Vec::new(),
    };
    s.run(0, visit)?;
    Ok(())
}

pub(crate) fn collect_nat(src: &Presheaf, tgt: &Presheaf, cons: &NatConstraints) -> Result<Vec<Components>> {
    let mut out = Vec::new();
    search_nat(src, tgt, cons, &mut |c| {
        out.push(c.clone());
        guard::check("hom-set", out.len())?;
        Ok(true)
    })?;
    Ok(out)
}

/// The set `Hom(F, G)` of natural transformations, in enumeration order.
#[derive(Clone, Debug)]
pub struct NatHom {
    src: Arc<Presheaf>,
    tgt: Arc<Presheaf>,
    maps: Vec<Components>,
    index: HashMap<Components, usize>,
}

impl NatHom {
    pub(crate) fn from_maps(src: Arc<Presheaf>, tgt: Arc<Presheaf>, maps: Vec<Components>) -> NatHom {
        let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        NatHom { src, tgt, maps, index }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
    pub fn src(&self) -> &Arc<Presheaf> {
        &self.src
    }
    pub fn tgt(&self) -> &Arc<Presheaf> {
        &self.tgt
    }
    pub fn components(&self, i: usize) -> &Components {
        &self.maps[i]
    }
    pub fn all(&self) -> &[Components] {
        &self.maps
    }
    pub fn map(&self, i: usize) -> PresheafMap {
        PresheafMap { src: self.src.clone(), tgt: self.tgt.clone(), components: self.maps[i].clone() }
    }
    pub fn find(&self, components: &Components) -> Option<usize> {
        self.index.get(components).copied()
    }
    /// Element ids `#0, #1, …`, zero-padded so that id order is enumeration order.
    pub fn element_ids(&self) -> Vec<String> {
        numbered_ids(self.maps.len())
    }
    pub fn set(&self) -> FinSet {
        FinSet::new(self.element_ids()).expect("distinct ids")
    }
}

pub(crate) fn numbered_ids(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("#{i:0width$}")).collect()
}

pub fn nat_hom(f: &Arc<Presheaf>, g: &Arc<Presheaf>) -> Result<NatHom> {
    let maps = collect_nat(f, g, &NatConstraints::default())?;
    Ok(NatHom::from_maps(f.clone(), g.clone(), maps))
}

pub fn yoneda(c: &Arc<FinCategory>, x: &str) -> Result<Presheaf> {
    Ok(yoneda_at(c, c.object_index(x)?))
}

pub fn yoneda_at(c: &Arc<FinCategory>, x: usize) -> Presheaf {
    let values: Vec<FinSet> = (0..c.num_objects())
        .map(|y| FinSet::new(c.hom(y, x).iter().map(|&h| c.morphism(h).id.clone())).expect("distinct ids"))
        .collect();
    let restriction = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            let (from, to) = (&values[m.tgt], &values[m.src]);
            c.hom(m.tgt, x)
                .iter()
                .enumerate()
                .map(|(i, &h)| {
                    debug_assert_eq!(from.element(i), c.morphism(h).id);
                    to.index_of(&c.morphism(c.compose(h, u)).id).expect("composite in hom")
                })
                .collect()
        })
        .collect();
    Presheaf::new_unchecked(c.clone(), values, restriction)
}

/// The map `y(m): y(a) → y(b)` for `m: a → b`.
pub fn yoneda_map(c: &Arc<FinCategory>, m: usize, ya: &Arc<Presheaf>, yb: &Arc<Presheaf>) -> PresheafMap {
    let components = (0..c.num_objects())
        .map(|z| {
            let from = ya.value(z);
            (0..from.len())
                .map(|i| {
                    let h = c.morphism_index(from.element(i)).expect("hom element");
                    yb.value(z).index_of(&c.morphism(c.compose(m, h)).id).expect("composite in hom")
                })
                .collect()
        })
        .collect();
    PresheafMap::new_unchecked(ya.clone(), yb.clone(), components)
}

/// Diagram of presheaves, covariant in the shape.
#[derive(Clone, Debug)]
pub struct PresheafDiagram {
    pub shape: Arc<FinCategory>,
    pub objects: Vec<Arc<Presheaf>>,
    /// Per shape morphism `i → j`, components of the map `objects[i] → objects[j]`.
    pub maps: Vec<Components>,
}

#[derive(Clone, Debug)]
pub struct PresheafColimit {
    pub apex: Arc<Presheaf>,
    pub legs: Vec<Components>,
    /// A member `(diagram object, element)` of each apex class, per base object.
    members: Vec<Vec<(usize, usize)>>,
    sources: Vec<Arc<Presheaf>>,
}

impl PresheafColimit {
    pub fn leg(&self, i: usize) -> PresheafMap {
        PresheafMap { src: self.sources[i].clone(), tgt: self.apex.clone(), components: self.legs[i].clone() }
    }

    /// Map out of the colimit induced by a cocone into `target`.
    pub fn induced(&self, cocone: &[&Components], target: &Arc<Presheaf>) -> Result<PresheafMap> {
        let base = self.apex.base.clone();
        let mut components = Vec::with_capacity(base.num_objects());
        for x in 0..base.num_objects() {
            let comp: Vec<usize> = self.members[x].iter().map(|&(i, e)| cocone[i][x][e]).collect();
            for (i, leg) in self.legs.iter().enumerate() {
                for (e, &c) in leg[x].iter().enumerate() {
                    if comp[c] != cocone[i][x][e] {
                        return Err(Error::NotNatural("family of maps is not a cocone".into()));
                    }
                }
            }
            components.push(comp);
        }
        Ok(PresheafMap::new_unchecked(self.apex.clone(), target.clone(), components))
    }
}

pub fn pointwise_colimit(d: &PresheafDiagram) -> Result<PresheafColimit> {
    let base = match d.objects.first() {
        Some(p) => p.base.clone(),
        None => return Err(Error::MalformedDiagram("empty diagram needs an explicit base; use colimit_over".into())),
    };
    colimit_over(&base, d)
}

/// Pointwise colimit over an explicitly given base (needed for empty diagrams).
pub fn colimit_over(base: &Arc<FinCategory>, d: &PresheafDiagram) -> Result<PresheafColimit> {
    let shape = &d.shape;
    for p in &d.objects {
        if p.base != *base {
            return Err(Error::BaseMismatch);
        }
    }
    let mut values = Vec::with_capacity(base.num_objects());
    let mut legs: Vec<Components> = vec![Vec::with_capacity(base.num_objects()); d.objects.len()];
    let mut members = Vec::with_capacity(base.num_objects());
    for x in 0..base.num_objects() {
        let ids = (0..shape.num_objects()).map(|i| finset::tagged(shape.object(i), &d.objects[i].values[x])).collect();
        let pairs = shape.morphisms().iter().enumerate().flat_map(|(u, m)| {
            d.maps[u][x].iter().enumerate().map(move |(e, &y)| ((m.src, e), (m.tgt, y)))
        });
        let col = finset::quotient(ids, pairs)?;
        let mut mem = vec![(usize::MAX, 0); col.apex.len()];
        for (i, leg) in col.legs.iter().enumerate() {
            for (e, &c) in leg.iter().enumerate() {
                if mem[c].0 == usize::MAX {
                    mem[c] = (i, e);
                }
            }
        }
        for (i, leg) in col.legs.into_iter().enumerate() {
            legs[i].push(leg);
        }
        values.push(col.apex);
        members.push(mem);
    }
    let restriction = base
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| members[m.tgt].iter().map(|&(i, e)| legs[i][m.src][d.objects[i].restrict(u, e)]).collect())
        .collect();
    let apex = Arc::new(Presheaf::new_unchecked(base.clone(), values, restriction));
    Ok(PresheafColimit { apex, legs, members, sources: d.objects.clone() })
}

#[derive(Clone, Debug)]
pub struct PresheafLimit {
    pub apex: Arc<Presheaf>,
    /// Per base object, for each apex element, its component at every diagram object.
    pub families: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    sources: Vec<Arc<Presheaf>>,
}

impl PresheafLimit {
    pub fn projection(&self, i: usize) -> PresheafMap {
        let components = self.families.iter().map(|fams| fams.iter().map(|f| f[i]).collect()).collect();
        PresheafMap { src: self.apex.clone(), tgt: self.sources[i].clone(), components }
    }

    /// Map into the limit induced by a cone from `source`.
    pub fn induced(&self, source: &Arc<Presheaf>, cone: &[&Components]) -> Result<PresheafMap> {
        let components = (0..self.families.len())
            .map(|x| {
                (0..source.values[x].len())
                    .map(|e| {
                        let fam: Vec<usize> = cone.iter().map(|c| c[x][e]).collect();
                        self.index[x]
                            .get(&fam)
                            .copied()
                            .ok_or_else(|| Error::NotNatural("family of maps is not a cone".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Ok(PresheafMap::new_unchecked(source.clone(), self.apex.clone(), components))
    }
}

pub fn pointwise_limit(base: &Arc<FinCategory>, d: &PresheafDiagram) -> Result<PresheafLimit> {
    for p in &d.objects {
        if p.base != *base {
            return Err(Error::BaseMismatch);
        }
    }
    let mut values = Vec::new();
    let mut families = Vec::new();
    let mut index = Vec::new();
    for x in 0..base.num_objects() {
        let sd = SetDiagram {
            shape: d.shape.clone(),
            sets: d.objects.iter().map(|p| p.values[x].clone()).collect(),
            maps: d.maps.iter().map(|m| m[x].clone()).collect(),
        };
        let lim = finset::limit(&sd)?;
        index.push(lim.families.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect::<HashMap<_, _>>());
        values.push(lim.apex);
        families.push(lim.families);
    }
    let restriction = base
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            families[m.tgt]
                .iter()
                .map(|fam| {
                    let r: Vec<usize> = fam.iter().enumerate().map(|(i, &e)| d.objects[i].restrict(u, e)).collect();
                    index[m.src][&r]
                })
                .collect()
        })
        .collect();
    let apex = Arc::new(Presheaf::new_unchecked(base.clone(), values, restriction));
    Ok(PresheafLimit { apex, families, index, sources: d.objects.clone() })
}

fn span_shape() -> Arc<FinCategory> {
    static S: OnceLock<Arc<FinCategory>> = OnceLock::new();
    S.get_or_init(|| Arc::new(FinCategory::poset(&["a", "l", "r"], &[("al", "a", "l"), ("ar", "a", "r")]).unwrap()))
        .clone()
}

fn cospan_shape() -> Arc<FinCategory> {
    static S: OnceLock<Arc<FinCategory>> = OnceLock::new();
    S.get_or_init(|| Arc::new(FinCategory::poset(&["l", "r", "t"], &[("lt", "l", "t"), ("rt", "r", "t")]).unwrap()))
        .clone()
}

fn identity_components(p: &Presheaf) -> Components {
    p.values.iter().map(|v| (0..v.len()).collect()).collect()
}

/// Diagram whose non-identity morphisms are looked up by id.
fn diagram_of(shape: Arc<FinCategory>, objects: Vec<Arc<Presheaf>>, maps: &[(&str, &Components)]) -> PresheafDiagram {
    let all = (0..shape.num_morphisms())
        .map(|u| {
            if shape.is_identity(u) {
                identity_components(&objects[shape.src(u)])
            } else {
                let id = &shape.morphism(u).id;
                maps.iter().find(|(m, _)| m == id).expect("shape morphism").1.clone()
            }
        })
        .collect();
    PresheafDiagram { shape, objects, maps: all }
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub apex: Arc<Presheaf>,
    /// `B → P`
    pub inl: PresheafMap,
    /// `C → P`
    pub inr: PresheafMap,
    colimit: PresheafColimit,
    span: (PresheafMap, PresheafMap),
}

impl Pushout {
    /// The cogap map `P → T` induced by `b: B → T` and `c: C → T`.
    pub fn cogap(&self, b: &PresheafMap, c: &PresheafMap) -> Result<PresheafMap> {
        if b.tgt != c.tgt {
            return Err(Error::NotComposable("cogap legs have different targets".into()));
        }
        let a = PresheafMap::compose(b, &self.span.0)?;
        self.colimit.induced(&[&a.components, &b.components, &c.components], &b.tgt)
    }
}

/// Pushout of `B ← A → C` (`f: A → B`, `g: A → C`). Elements are `(l,b)` or `(r,c)`.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<Pushout> {
    if f.src != g.src {
        return Err(Error::NotComposable("span legs have different sources".into()));
    }
    let d = diagram_of(
        span_shape(),
        vec![f.src.clone(), f.tgt.clone(), g.tgt.clone()],
        &[("al", &f.components), ("ar", &g.components)],
    );
    let colimit = colimit_over(f.base(), &d)?;
    Ok(Pushout {
        apex: colimit.apex.clone(),
        inl: colimit.leg(1),
        inr: colimit.leg(2),
        colimit,
        span: (f.clone(), g.clone()),
    })
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: Arc<Presheaf>,
    /// `P → B`
    pub pl: PresheafMap,
    /// `P → C`
    pub pr: PresheafMap,
    limit: PresheafLimit,
    cospan: (PresheafMap, PresheafMap),
}

impl Pullback {
    /// The gap map `T → P` induced by `b: T → B` and `c: T → C`.
    pub fn gap(&self, b: &PresheafMap, c: &PresheafMap) -> Result<PresheafMap> {
        if b.src != c.src {
            return Err(Error::NotComposable("gap legs have different sources".into()));
        }
        let d = PresheafMap::compose(&self.cospan.0, b)?;
        self.limit.induced(&b.src, &[&b.components, &c.components, &d.components])
    }
}

/// Pullback of `B → D ← C`. Elements are `(b,c,d)`.
pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<Pullback> {
    if f.tgt != g.tgt {
        return Err(Error::NotComposable("cospan legs have different targets".into()));
    }
    let d = diagram_of(
        cospan_shape(),
        vec![f.src.clone(), g.src.clone(), f.tgt.clone()],
        &[("lt", &f.components), ("rt", &g.components)],
    );
    let limit = pointwise_limit(f.base(), &d)?;
    Ok(Pullback {
        apex: limit.apex.clone(),
        pl: limit.projection(0),
        pr: limit.projection(1),
        limit,
        cospan: (f.clone(), g.clone()),
    })
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub apex: Arc<Presheaf>,
    /// Injections in the order the summands were given.
    pub injections: Vec<PresheafMap>,
    colimit: PresheafColimit,
    order: Vec<usize>,
}

impl Coproduct {
    /// Copairing of maps out of the summands (given in summand order).
    pub fn copair(&self, maps: &[PresheafMap], target: &Arc<Presheaf>) -> Result<PresheafMap> {
        let mut sorted: Vec<&Components> = vec![&maps[0].components; maps.len()];
        for (k, m) in maps.iter().enumerate() {
            sorted[self.order[k]] = &m.components;
        }
        self.colimit.induced(&sorted, target)
    }
}

/// Coproduct of named summands; elements are `(name,element)`.
pub fn coproduct(base: &Arc<FinCategory>, summands: &[(String, Arc<Presheaf>)]) -> Result<Coproduct> {
    let names: Vec<String> = summands.iter().map(|s| s.0.clone()).collect();
    let (shape, opos, _) = FinCategory::from_indexed(
        names.clone(),
        names.iter().enumerate().map(|(i, n)| (format!("id_{n}"), i, i)).collect(),
        (0..names.len()).collect(),
        (0..names.len()).map(|i| (i, i, i)),
    );
    let mut objects = vec![None; summands.len()];
    for (k, s) in summands.iter().enumerate() {
        objects[opos[k]] = Some(s.1.clone());
    }
    let objects: Vec<Arc<Presheaf>> = objects.into_iter().map(|o| o.expect("summand")).collect();
    let maps = (0..shape.num_morphisms()).map(|u| identity_components(&objects[shape.src(u)])).collect();
    let d = PresheafDiagram { shape: Arc::new(shape), objects, maps };
    let colimit = colimit_over(base, &d)?;
    let injections = opos.iter().map(|&i| colimit.leg(i)).collect();
    Ok(Coproduct { apex: colimit.apex.clone(), injections, colimit, order: opos })
}

#[derive(Clone, Debug)]
pub struct Product {
    pub apex: Arc<Presheaf>,
    pub p1: PresheafMap,
    pub p2: PresheafMap,
    limit: PresheafLimit,
}

impl Product {
    pub fn pair(&self, a: &PresheafMap, b: &PresheafMap) -> Result<PresheafMap> {
        self.limit.induced(&a.src, &[&a.components, &b.components])
    }
}

/// Binary product; elements are `(x,y)`.
pub fn product(f: &Arc<Presheaf>, g: &Arc<Presheaf>) -> Result<Product> {
    same_base(f, g)?;
    let shape = Arc::new(FinCategory::discrete(&["0", "1"])?);
    let d = PresheafDiagram {
        shape,
        objects: vec![f.clone(), g.clone()],
        maps: vec![identity_components(f), identity_components(g)],
    };
    let limit = pointwise_limit(f.base(), &d)?;
    Ok(Product { apex: limit.apex.clone(), p1: limit.projection(0), p2: limit.projection(1), limit })
}

/// `(F^G)(X) = Hom(y(X) × G, F)`, restrictions by precomposition.
pub fn exponential(f: &Arc<Presheaf>, g: &Arc<Presheaf>) -> Result<Presheaf> {
    same_base(f, g)?;
    let c = f.base().clone();
    let mut homs = Vec::new();
    let mut prods = Vec::new();
    for x in 0..c.num_objects() {
        let p = product(&Arc::new(yoneda_at(&c, x)), g)?;
        homs.push(nat_hom(&p.apex, f)?);
        prods.push(p);
    }
    let values: Vec<FinSet> = homs.iter().map(NatHom::set).collect();
    let mut restriction = Vec::new();
    for (u, m) in c.morphisms().iter().enumerate() {
        // u: Y → X sends η ∈ Hom(y X × G, F) to η ∘ (y(u) × G).
        let (y, x) = (m.src, m.tgt);
        let (py, px) = (&prods[y], &prods[x]);
        let pre: Components = (0..c.num_objects())
            .map(|z| {
                let pv = py.apex.value(z);
                (0..pv.len())
                    .map(|k| {
                        let h = py.p1.apply(z, k);
                        let h_id = py.p1.tgt.value(z).element(h);
                        let hm = c.morphism_index(h_id).expect("hom element");
                        let uh = &c.morphism(c.compose(u, hm)).id;
                        let uh_idx = px.p1.tgt.value(z).index_of(uh).expect("composite in hom");
                        let gi = py.p2.apply(z, k);
                        px.limit.index[z][&vec![uh_idx, gi]]
                    })
                    .collect()
            })
            .collect();
        let r = (0..homs[x].len())
            .map(|i| {
                let eta = homs[x].components(i);
                let comp: Components = pre.iter().enumerate().map(|(z, p)| p.iter().map(|&k| eta[z][k]).collect()).collect();
                homs[y].find(&comp).expect("restricted map is natural")
            })
            .collect();
        restriction.push(r);
    }
    Presheaf::new(c, values, restriction)
}

/// `U ∐_{U×F} F`.
pub fn join(u: &Arc<Presheaf>, f: &Arc<Presheaf>) -> Result<Presheaf> {
    let p = product(u, f)?;
    let po = pushout(&p.p1, &p.p2)?;
    Ok((*po.apex).clone())
}

/// Image of `F → 1`, as a subpresheaf of `1`.
pub fn support(f: &Presheaf) -> Presheaf {
    let values: Vec<FinSet> =
        f.values.iter().map(|v| if v.is_empty() { FinSet::empty() } else { FinSet::singleton("*") }).collect();
    let restriction = f
        .base
        .morphisms()
        .iter()
        .map(|m| vec![0; values[m.tgt].len()])
        .collect();
    Presheaf::new_unchecked(f.base.clone(), values, restriction)
}

pub fn is_subterminal(u: &Presheaf) -> bool {
    u.values.iter().all(|v| v.len() <= 1)
}
