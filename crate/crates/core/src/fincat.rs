//! Finite categories, functors between them, opposite and comma categories.
//!
//! Objects and morphisms are addressed by string ids and stored sorted by id, so
//! every enumeration below is deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Law, Result};

/// Renders a tuple of ids canonically, e.g. `(a,b,c)`.
pub fn tuple_id<S: AsRef<str>>(parts: &[S]) -> String {
    let mut out = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(p.as_ref());
    }
    out.push(')');
    out
}

/// Raw, unvalidated description of a finite category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryData {
    pub objects: Vec<String>,
    /// `(id, src, tgt)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identity: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    into: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.morphisms == other.morphisms
                && self.identity == other.identity
                && self.compose == other.compose)
    }
}
impl Eq for FinCategory {}

/// Permutation sorting `names`; `result[old] = new`.
fn sorted_positions(names: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut pos = vec![0; names.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    pos
}

fn permute<T: Clone>(items: &[T], pos: &[usize]) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (old, item) in items.iter().enumerate() {
        out[pos[old]] = Some(item.clone());
    }
    out.into_iter().map(|x| x.expect("permutation")).collect()
}

impl FinCategory {
    /// Builds a category from index-based parts, sorting objects and morphisms by id.
    /// Returns the category together with the old-to-new index maps for objects and morphisms.
    /// Laws are not checked here; see [`FinCategory::validate`].
    pub(crate) fn from_indexed(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> (FinCategory, Vec<usize>, Vec<usize>) {
        let opos = sorted_positions(&objects);
        let mor_names: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
        let mpos = sorted_positions(&mor_names);
        let objects = permute(&objects, &opos);
        let morphisms: Vec<Morphism> = permute(&morphisms, &mpos)
            .into_iter()
            .map(|(id, s, t)| Morphism { id, src: opos[s], tgt: opos[t] })
            .collect();
        let mut ident = vec![0; objects.len()];
        for (old, &m) in identity.iter().enumerate() {
            ident[opos[old]] = mpos[m];
        }
        let compose = compose
            .into_iter()
            .map(|(g, f, gf)| ((mpos[g], mpos[f]), mpos[gf]))
            .collect();
        (Self::assemble(objects, morphisms, ident, compose), opos, mpos)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> FinCategory {
        let n = objects.len();
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut into = vec![Vec::new(); n];
        let mut out_of = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            hom.entry((m.src, m.tgt)).or_default().push(i);
            into[m.tgt].push(i);
            out_of[m.src].push(i);
        }
        FinCategory { objects, morphisms, identity, compose, hom, into, out_of }
    }

    /// The terminal category 𝟙 with object `*` and morphism `id`.
    pub fn terminal() -> FinCategory {
        Self::poset(&["*"], &[]).expect("terminal category")
    }

    /// Discrete category on the given objects; identities are named `id_<obj>`.
    pub fn discrete(objects: &[&str]) -> Result<FinCategory> {
        Self::poset(objects, &[])
    }

    /// Poset category. `relations` lists every strict relation as `(id, src, tgt)`,
    /// already transitively closed; identities are named `id_<obj>` (`id` for a single object `*`).
    pub fn poset(objects: &[&str], relations: &[(&str, &str, &str)]) -> Result<FinCategory> {
        let ident = |o: &str| if objects == ["*"] { "id".to_string() } else { format!("id_{o}") };
        let mut data = CategoryData {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        let mut arrow: HashMap<(String, String), String> = HashMap::new();
        for o in objects {
            data.morphisms.push((ident(o), o.to_string(), o.to_string()));
            data.identity.push((o.to_string(), ident(o)));
            arrow.insert((o.to_string(), o.to_string()), ident(o));
        }
        for (id, s, t) in relations {
            data.morphisms.push((id.to_string(), s.to_string(), t.to_string()));
            if arrow.insert((s.to_string(), t.to_string()), id.to_string()).is_some() {
                return Err(Error::MalformedCategory {
                    law: Law::DuplicateId,
                    witness: format!("two relations {s} -> {t}"),
                });
            }
        }
        for (f, a, b) in &data.morphisms {
            for (g, b2, c) in &data.morphisms {
                if b == b2 {
                    let gf = arrow.get(&(a.clone(), c.clone())).ok_or_else(|| Error::MalformedCategory {
                        law: Law::MissingComposite,
                        witness: format!("{g}∘{f}: relations not transitively closed"),
                    })?;
                    data.compose.push((g.clone(), f.clone(), gf.clone()));
                }
            }
        }
        check_category(&data)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn object(&self, i: usize) -> &str {
        &self.objects[i]
    }
    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }
    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.morphisms[i]
    }
    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(id))
            .map_err(|_| Error::UnknownObject(id.to_string()))
    }
    pub fn morphism_index(&self, id: &str) -> Result<usize> {
        self.morphisms
            .binary_search_by(|m| m.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownMorphism(id.to_string()))
    }
    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }
    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }
    pub fn is_identity(&self, m: usize) -> bool {
        let mm = &self.morphisms[m];
        mm.src == mm.tgt && self.identity[mm.src] == m
    }
    /// g∘f; panics if the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{}∘{} not composable", self.morphisms[g].id, self.morphisms[f].id))
    }
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }
    /// Morphisms with target `x`.
    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.into[x]
    }
    /// Morphisms with source `x`.
    pub fn out_of(&self, x: usize) -> &[usize] {
        &self.out_of[x]
    }

    pub fn to_data(&self) -> CategoryData {
        let name = |m: usize| self.morphisms[m].id.clone();
        let mut compose: Vec<(String, String, String)> =
            self.compose.iter().map(|(&(g, f), &gf)| (name(g), name(f), name(gf))).collect();
        compose.sort();
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.id.clone(), self.objects[m.src].clone(), self.objects[m.tgt].clone()))
                .collect(),
            identity: (0..self.objects.len())
                .map(|x| (self.objects[x].clone(), name(self.identity[x])))
                .collect(),
            compose,
        }
    }

    /// Checks identity laws, totality of composition on composable pairs, and associativity.
    pub fn validate(&self) -> Result<()> {
        let name = |m: usize| self.morphisms[m].id.clone();
        for (x, &i) in self.identity.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != x || m.tgt != x {
                return Err(Error::MalformedCategory { law: Law::IdentityTyping, witness: name(i) });
            }
        }
        for (&(g, f), &gf) in &self.compose {
            let (mg, mf, mgf) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[gf]);
            if mf.tgt != mg.src {
                return Err(Error::MalformedCategory {
                    law: Law::SpuriousComposite,
                    witness: format!("{}∘{}", name(g), name(f)),
                });
            }
            if mgf.src != mf.src || mgf.tgt != mg.tgt {
                return Err(Error::MalformedCategory {
                    law: Law::CompositeTyping,
                    witness: format!("{}∘{} = {}", name(g), name(f), name(gf)),
                });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.out_of[self.morphisms[f].tgt] {
                if !self.compose.contains_key(&(g, f)) {
                    return Err(Error::MalformedCategory {
                        law: Law::MissingComposite,
                        witness: format!("{}∘{}", name(g), name(f)),
                    });
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(self.identity[m.tgt], f) != f || self.compose(f, self.identity[m.src]) != f {
                return Err(Error::MalformedCategory { law: Law::IdentityLaw, witness: name(f) });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.out_of[self.morphisms[f].tgt] {
                let gf = self.compose(g, f);
                for &h in &self.out_of[self.morphisms[g].tgt] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::MalformedCategory {
                            law: Law::Associativity,
                            witness: format!("({},{},{})", name(h), name(g), name(f)),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Validates a raw description, reporting the first violated law.
pub fn check_category(data: &CategoryData) -> Result<FinCategory> {
    let dup = |what: &str, id: &str| Error::MalformedCategory {
        law: Law::DuplicateId,
        witness: format!("{what} `{id}`"),
    };
    let unknown = |id: &str| Error::MalformedCategory { law: Law::UnknownReference, witness: id.to_string() };
    let mut obj: HashMap<&str, usize> = HashMap::new();
    for (i, o) in data.objects.iter().enumerate() {
        if obj.insert(o, i).is_some() {
            return Err(dup("object", o));
        }
    }
    let mut mor: HashMap<&str, usize> = HashMap::new();
    let mut morphisms = Vec::new();
    for (i, (id, s, t)) in data.morphisms.iter().enumerate() {
        if mor.insert(id, i).is_some() {
            return Err(dup("morphism", id));
        }
        let s = *obj.get(s.as_str()).ok_or_else(|| unknown(s))?;
        let t = *obj.get(t.as_str()).ok_or_else(|| unknown(t))?;
        morphisms.push((id.clone(), s, t));
    }
    let mut identity = vec![None; data.objects.len()];
    for (o, m) in &data.identity {
        let x = *obj.get(o.as_str()).ok_or_else(|| unknown(o))?;
        let m = *mor.get(m.as_str()).ok_or_else(|| unknown(m))?;
        if identity[x].replace(m).is_some() {
            return Err(dup("identity for", o));
        }
    }
    let identity: Vec<usize> = identity
        .into_iter()
        .enumerate()
        .map(|(x, m)| {
            m.ok_or_else(|| Error::MalformedCategory {
                law: Law::IdentityTyping,
                witness: format!("no identity for `{}`", data.objects[x]),
            })
        })
        .collect::<Result<_>>()?;
    let mut compose = Vec::new();
    let mut seen = HashMap::new();
    for (g, f, gf) in &data.compose {
        let gi = *mor.get(g.as_str()).ok_or_else(|| unknown(g))?;
        let fi = *mor.get(f.as_str()).ok_or_else(|| unknown(f))?;
        let gfi = *mor.get(gf.as_str()).ok_or_else(|| unknown(gf))?;
        if seen.insert((gi, fi), gfi).is_some_and(|prev| prev != gfi) {
            return Err(Error::MalformedCategory {
                law: Law::DuplicateId,
                witness: format!("two composites for {g}∘{f}"),
            });
        }
        compose.push((gi, fi, gfi));
    }
    let (cat, _, _) = FinCategory::from_indexed(data.objects.clone(), morphisms, identity, compose);
    cat.validate()?;
    Ok(cat)
}

/// Opposite category with the same ids; `opposite(opposite(C)) == C`.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let morphisms = c
        .morphisms
        .iter()
        .map(|m| Morphism { id: m.id.clone(), src: m.tgt, tgt: m.src })
        .collect();
    let compose = c.compose.iter().map(|(&(g, f), &gf)| ((f, g), gf)).collect();
    FinCategory::assemble(c.objects.clone(), morphisms, c.identity.clone(), compose)
}

#[derive(Clone, Debug)]
pub struct Functor {
    src: Arc<FinCategory>,
    tgt: Arc<FinCategory>,
    obj: Vec<usize>,
    mor: Vec<usize>,
}

impl Functor {
    pub fn new(src: Arc<FinCategory>, tgt: Arc<FinCategory>, obj: Vec<usize>, mor: Vec<usize>) -> Result<Functor> {
        let bad = |msg: String| Err(Error::MalformedFunctor(msg));
        if obj.len() != src.num_objects() || mor.len() != src.num_morphisms() {
            return bad("object or morphism map has the wrong length".into());
        }
        if obj.iter().any(|&o| o >= tgt.num_objects()) || mor.iter().any(|&m| m >= tgt.num_morphisms()) {
            return bad("map lands outside the target".into());
        }
        for (i, m) in src.morphisms().iter().enumerate() {
            let fm = tgt.morphism(mor[i]);
            if fm.src != obj[m.src] || fm.tgt != obj[m.tgt] {
                return bad(format!("`{}` not sent to a morphism between the image objects", m.id));
            }
        }
        for x in 0..src.num_objects() {
            if mor[src.identity(x)] != tgt.identity(obj[x]) {
                return bad(format!("identity of `{}` not preserved", src.object(x)));
            }
        }
        for (&(g, f), &gf) in &src.compose {
            if tgt.compose(mor[g], mor[f]) != mor[gf] {
                return bad(format!("composite {}∘{} not preserved", src.morphism(g).id, src.morphism(f).id));
            }
        }
        Ok(Functor { src, tgt, obj, mor })
    }

    pub fn identity(c: Arc<FinCategory>) -> Functor {
        let obj = (0..c.num_objects()).collect();
        let mor = (0..c.num_morphisms()).collect();
        Functor { src: c.clone(), tgt: c, obj, mor }
    }

    /// Constant functor from 𝟙 (or any category) at object `x`.
    pub fn constant(src: Arc<FinCategory>, tgt: Arc<FinCategory>, x: usize) -> Functor {
        let obj = vec![x; src.num_objects()];
        let mor = vec![tgt.identity(x); src.num_morphisms()];
        Functor { src, tgt, obj, mor }
    }

    pub fn src(&self) -> &Arc<FinCategory> {
        &self.src
    }
    pub fn tgt(&self) -> &Arc<FinCategory> {
        &self.tgt
    }
    pub fn on_object(&self, x: usize) -> usize {
        self.obj[x]
    }
    pub fn on_morphism(&self, m: usize) -> usize {
        self.mor[m]
    }
}

#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FinCategory>,
    pub left: Functor,
    pub right: Functor,
    /// `(a, b, h: F a → G b)` for each object index of `category`.
    pub triples: Vec<(usize, usize, usize)>,
    /// `(u, v)` for each morphism index of `category`.
    pub pairs: Vec<(usize, usize)>,
}

impl CommaCategory {
    /// Object index of the triple `(a, b, h)`.
    pub fn object_of(&self, a: usize, b: usize, h: usize) -> Option<usize> {
        self.triples.iter().position(|&t| t == (a, b, h))
    }
}

/// Comma category F↓G for functors `F: A → C`, `G: B → C`.
pub fn comma(f: &Functor, g: &Functor) -> Result<CommaCategory> {
    if f.tgt != g.tgt {
        return Err(Error::TargetMismatch);
    }
    let c = &f.tgt;
    let (a_cat, b_cat) = (&f.src, &g.src);
    let mut triples = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for a in 0..a_cat.num_objects() {
        for b in 0..b_cat.num_objects() {
            for &h in c.hom(f.obj[a], g.obj[b]) {
                index.insert((a, b, h), triples.len());
                triples.push((a, b, h));
            }
        }
    }
    crate::guard::check("comma category objects", triples.len())?;
    let names: Vec<String> = triples
        .iter()
        .map(|&(a, b, h)| tuple_id(&[a_cat.object(a), b_cat.object(b), &c.morphism(h).id]))
        .collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut mindex: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for (si, &(a, b, h)) in triples.iter().enumerate() {
        for &u in a_cat.out_of(a) {
            for &v in b_cat.out_of(b) {
                let (a2, b2) = (a_cat.tgt(u), b_cat.tgt(v));
                let rhs = c.compose(g.mor[v], h);
                for &h2 in c.hom(f.obj[a2], g.obj[b2]) {
                    if c.compose(h2, f.mor[u]) == rhs {
                        let ti = index[&(a2, b2, h2)];
                        let id = format!(
                            "{}:{}->{}",
                            tuple_id(&[&a_cat.morphism(u).id, &b_cat.morphism(v).id]),
                            names[si],
                            names[ti]
                        );
                        mindex.insert((si, ti, u, v), morphisms.len());
                        morphisms.push((id, si, ti));
                        pairs.push((u, v));
                    }
                }
            }
        }
    }
    crate::guard::check("comma category morphisms", morphisms.len())?;
    let identity: Vec<usize> = triples
        .iter()
        .enumerate()
        .map(|(i, &(a, b, _))| mindex[&(i, i, a_cat.identity(a), b_cat.identity(b))])
        .collect();
    let mut outgoing = vec![Vec::new(); triples.len()];
    for (i, m) in morphisms.iter().enumerate() {
        outgoing[m.1].push(i);
    }
    let mut compose = Vec::new();
    for (fi, &(_, s, t)) in morphisms.iter().enumerate() {
        let (u1, v1) = pairs[fi];
        for &gi in &outgoing[t] {
            let (u2, v2) = pairs[gi];
            let t2 = morphisms[gi].2;
            let gf = mindex[&(s, t2, a_cat.compose(u2, u1), b_cat.compose(v2, v1))];
            compose.push((gi, fi, gf));
        }
    }
    let (category, opos, mpos) = FinCategory::from_indexed(names, morphisms, identity, compose);
    let mut sorted_triples = vec![(0, 0, 0); triples.len()];
    for (old, t) in triples.into_iter().enumerate() {
        sorted_triples[opos[old]] = t;
    }
    let mut sorted_pairs = vec![(0, 0); pairs.len()];
    for (old, p) in pairs.into_iter().enumerate() {
        sorted_pairs[mpos[old]] = p;
    }
    let category = Arc::new(category);
    let left = Functor {
        src: category.clone(),
        tgt: a_cat.clone(),
        obj: sorted_triples.iter().map(|t| t.0).collect(),
        mor: sorted_pairs.iter().map(|p| p.0).collect(),
    };
    let right = Functor {
        src: category.clone(),
        tgt: b_cat.clone(),
        obj: sorted_triples.iter().map(|t| t.1).collect(),
        mor: sorted_pairs.iter().map(|p| p.1).collect(),
    };
    Ok(CommaCategory { category, left, right, triples: sorted_triples, pairs: sorted_pairs })
}

/// Cofilteredness of a finite category: nonempty, every pair of objects has a common
/// source, and every parallel pair is equalized by some incoming morphism.
pub fn has_cone_over_every_finite_diagram(c: &FinCategory) -> bool {
    let n = c.num_objects();
    if n == 0 {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            let common = (0..n).any(|x| !c.hom(x, a).is_empty() && !c.hom(x, b).is_empty());
            if !common {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let hom = c.hom(a, b);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    let equalized = c.incoming(a).iter().any(|&h| c.compose(f, h) == c.compose(g, h));
                    if !equalized {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> FinCategory {
        FinCategory::poset(&["0", "1"], &[("u", "0", "1")]).unwrap()
    }

    #[test]
    fn terminal_and_interval_validate() {
        let t = FinCategory::terminal();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        let i = interval();
        assert_eq!((i.num_objects(), i.num_morphisms()), (2, 3));
    }

    #[test]
    fn wrong_composite_target_is_rejected() {
        let data = CategoryData {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                ("id0".into(), "0".into(), "0".into()),
                ("id1".into(), "1".into(), "1".into()),
                ("u".into(), "0".into(), "1".into()),
            ],
            identity: vec![("0".into(), "id0".into()), ("1".into(), "id1".into())],
            compose: vec![
                ("id0".into(), "id0".into(), "id0".into()),
                ("id1".into(), "id1".into(), "id1".into()),
                ("u".into(), "id0".into(), "id0".into()),
                ("id1".into(), "u".into(), "u".into()),
            ],
        };
        match check_category(&data) {
            Err(Error::MalformedCategory { law, .. }) => assert_eq!(law, Law::CompositeTyping),
            other => panic!("expected typing violation, got {other:?}"),
        }
    }

    #[test]
    fn data_round_trip() {
        let i = interval();
        assert_eq!(check_category(&i.to_data()).unwrap(), i);
    }

    #[test]
    fn opposite_is_involutive() {
        let i = interval();
        let op = opposite(&i);
        let u = op.morphism_index("u").unwrap();
        assert_eq!(op.object(op.src(u)), "1");
        assert!(op.validate().is_ok());
        assert_eq!(opposite(&op), i);
    }

    #[test]
    fn comma_of_identities_on_terminal() {
        let t = Arc::new(FinCategory::terminal());
        let id = Functor::identity(t.clone());
        let c = comma(&id, &id).unwrap();
        assert_eq!((c.category.num_objects(), c.category.num_morphisms()), (1, 1));
    }

    #[test]
    fn under_category_of_interval() {
        let i = Arc::new(interval());
        let one = Arc::new(FinCategory::terminal());
        let zero = i.object_index("0").unwrap();
        let c = comma(&Functor::constant(one, i.clone(), zero), &Functor::identity(i)).unwrap();
        assert_eq!(c.category.num_objects(), 2);
        let non_id = (0..c.category.num_morphisms()).filter(|&m| !c.category.is_identity(m)).count();
        assert_eq!(non_id, 1);
        assert!(c.category.validate().is_ok());
    }

    #[test]
    fn comma_over_empty_category() {
        let e = Arc::new(FinCategory::discrete(&[]).unwrap());
        let i = Arc::new(interval());
        let f = Functor::new(e, i.clone(), vec![], vec![]).unwrap();
        let c = comma(&f, &Functor::identity(i)).unwrap();
        assert_eq!(c.category.num_objects(), 0);
    }

    #[test]
    fn cofiltered_examples() {
        assert!(has_cone_over_every_finite_diagram(&FinCategory::terminal()));
        assert!(!has_cone_over_every_finite_diagram(&FinCategory::discrete(&["a", "b"]).unwrap()));
        let meet = FinCategory::poset(&["m", "a", "b"], &[("ma", "m", "a"), ("mb", "m", "b")]).unwrap();
        assert!(has_cone_over_every_finite_diagram(&meet));
    }

    #[test]
    fn parallel_pair_without_equalizer_is_not_cofiltered() {
        let data = CategoryData {
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![
                ("ia".into(), "a".into(), "a".into()),
                ("ib".into(), "b".into(), "b".into()),
                ("f".into(), "a".into(), "b".into()),
                ("g".into(), "a".into(), "b".into()),
            ],
            identity: vec![("a".into(), "ia".into()), ("b".into(), "ib".into())],
            compose: vec![
                ("ia".into(), "ia".into(), "ia".into()),
                ("ib".into(), "ib".into(), "ib".into()),
                ("f".into(), "ia".into(), "f".into()),
                ("g".into(), "ia".into(), "g".into()),
                ("ib".into(), "f".into(), "f".into()),
                ("ib".into(), "g".into(), "g".into()),
            ],
        };
        let c = check_category(&data).unwrap();
        assert!(!has_cone_over_every_finite_diagram(&c));
    }
}
