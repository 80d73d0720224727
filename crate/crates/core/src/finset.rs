//! Finite sets, maps between them, and exact (co)limit kernels.
//!
//! A [`FinSet`] keeps its element ids sorted, so lookups are binary searches and
//! every construction has a canonical element order. Colimits are quotients of a
//! disjoint union computed with union-find; the representative of a class is its
//! least rendered `(leg,element)` id.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{tuple_id, FinCategory};
use crate::guard;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FinSet {
    elems: Vec<String>,
}

impl FinSet {
    pub fn new<I, S>(elems: I) -> Result<FinSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Self::indexed(elems.into_iter().map(Into::into).collect())?.0)
    }

    /// Builds a set from ids in arbitrary order and returns, for each input id, its index in the set.
    pub fn indexed(names: Vec<String>) -> Result<(FinSet, Vec<usize>)> {
        guard::check("set", names.len())?;
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for w in order.windows(2) {
            if names[w[0]] == names[w[1]] {
                return Err(Error::MalformedSet(format!("duplicate element `{}`", names[w[0]])));
            }
        }
        let mut pos = vec![0; names.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut elems = names;
        elems.sort();
        Ok((FinSet { elems }, pos))
    }

    pub fn empty() -> FinSet {
        FinSet::default()
    }

    pub fn singleton(id: &str) -> FinSet {
        FinSet { elems: vec![id.to_string()] }
    }

    /// The set `{0, …, n-1}` rendered in decimal.
    pub fn range(n: usize) -> FinSet {
        FinSet::new((0..n).map(|i| i.to_string())).expect("distinct numerals")
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn elements(&self) -> &[String] {
        &self.elems
    }
    pub fn element(&self, i: usize) -> &str {
        &self.elems[i]
    }
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elems.binary_search_by(|e| e.as_str().cmp(id)).ok()
    }
}

/// A total map between finite sets, stored as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    pub src: FinSet,
    pub tgt: FinSet,
    pub assignment: Vec<usize>,
}

impl SetMap {
    pub fn new(src: FinSet, tgt: FinSet, assignment: Vec<usize>) -> Result<SetMap> {
        if assignment.len() != src.len() || assignment.iter().any(|&y| y >= tgt.len()) {
            return Err(Error::MalformedSet("assignment is not a total map into the target".into()));
        }
        Ok(SetMap { src, tgt, assignment })
    }

    /// Map given by `(x, y)` id pairs.
    pub fn from_pairs(src: FinSet, tgt: FinSet, pairs: &[(&str, &str)]) -> Result<SetMap> {
        let mut assignment = vec![usize::MAX; src.len()];
        for (x, y) in pairs {
            let xi = src.index_of(x).ok_or_else(|| Error::MalformedSet(format!("unknown element `{x}`")))?;
            let yi = tgt.index_of(y).ok_or_else(|| Error::MalformedSet(format!("unknown element `{y}`")))?;
            assignment[xi] = yi;
        }
        SetMap::new(src, tgt, assignment)
    }

    pub fn identity(s: FinSet) -> SetMap {
        let assignment = (0..s.len()).collect();
        SetMap { src: s.clone(), tgt: s, assignment }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `g ∘ f`
    pub fn compose(g: &SetMap, f: &SetMap) -> Result<SetMap> {
        if f.tgt != g.src {
            return Err(Error::NotComposable("target of f differs from source of g".into()));
        }
        let assignment = f.assignment.iter().map(|&y| g.assignment[y]).collect();
        Ok(SetMap { src: f.src.clone(), tgt: g.tgt.clone(), assignment })
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.assignment, self.tgt.len())
    }
    pub fn is_surjective(&self) -> bool {
        is_surjective(&self.assignment, self.tgt.len())
    }
    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

pub(crate) fn is_injective(assignment: &[usize], tgt_len: usize) -> bool {
    let mut hit = vec![false; tgt_len];
    for &y in assignment {
        if std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    true
}

pub(crate) fn is_surjective(assignment: &[usize], tgt_len: usize) -> bool {
    let mut hit = vec![false; tgt_len];
    for &y in assignment {
        hit[y] = true;
    }
    hit.into_iter().all(|b| b)
}

pub(crate) fn is_bijective(assignment: &[usize], tgt_len: usize) -> bool {
    assignment.len() == tgt_len && is_injective(assignment, tgt_len)
}

/// Inverse of a bijection given by indices.
pub(crate) fn invert(assignment: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; assignment.len()];
    for (x, &y) in assignment.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Covariant functor from a finite category to finite sets.
#[derive(Clone, Debug)]
pub struct SetDiagram {
    pub shape: Arc<FinCategory>,
    pub sets: Vec<FinSet>,
    /// Per morphism `u: i → j`, the map `sets[i] → sets[j]` as indices.
    pub maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    pub fn new(shape: Arc<FinCategory>, sets: Vec<FinSet>, maps: Vec<Vec<usize>>) -> Result<SetDiagram> {
        let bad = |m: String| Err(Error::MalformedDiagram(m));
        if sets.len() != shape.num_objects() || maps.len() != shape.num_morphisms() {
            return bad("diagram does not match its shape".into());
        }
        for (u, m) in shape.morphisms().iter().enumerate() {
            let map = &maps[u];
            if map.len() != sets[m.src].len() || map.iter().any(|&y| y >= sets[m.tgt].len()) {
                return bad(format!("map for `{}` is not total", m.id));
            }
        }
        for x in 0..shape.num_objects() {
            if maps[shape.identity(x)].iter().enumerate().any(|(i, &y)| i != y) {
                return bad(format!("identity of `{}` not sent to an identity", shape.object(x)));
            }
        }
        for f in 0..shape.num_morphisms() {
            for &g in shape.out_of(shape.tgt(f)) {
                let gf = shape.compose(g, f);
                if (0..sets[shape.src(f)].len()).any(|x| maps[g][maps[f][x]] != maps[gf][x]) {
                    return bad(format!("composite {}∘{} not preserved", shape.morphism(g).id, shape.morphism(f).id));
                }
            }
        }
        Ok(SetDiagram { shape, sets, maps })
    }
}

/// Colimit object with its cocone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub apex: FinSet,
    /// Leg from each diagram object, as indices into `apex`.
    pub legs: Vec<Vec<usize>>,
}

impl Colimit {
    pub fn leg(&self, src: &FinSet, i: usize) -> SetMap {
        SetMap { src: src.clone(), tgt: self.apex.clone(), assignment: self.legs[i].clone() }
    }
}

/// Limit object with its cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub apex: FinSet,
    /// For each apex element, its component at every diagram object.
    pub families: Vec<Vec<usize>>,
}

impl Limit {
    pub fn projection(&self, tgt: &FinSet, i: usize) -> SetMap {
        SetMap {
            src: self.apex.clone(),
            tgt: tgt.clone(),
            assignment: self.families.iter().map(|fam| fam[i]).collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Quotient of a disjoint union of blocks by the equivalence relation generated by `pairs`.
/// Block `i` has element ids `ids[i]` (already rendered); `pairs` relate `(block, element)` positions.
pub(crate) fn quotient(
    ids: Vec<Vec<String>>,
    pairs: impl IntoIterator<Item = ((usize, usize), (usize, usize))>,
) -> Result<Colimit> {
    let mut offset = Vec::with_capacity(ids.len());
    let mut total = 0;
    for block in &ids {
        offset.push(total);
        total += block.len();
    }
    guard::check("disjoint union", total)?;
    let mut uf = UnionFind::new(total);
    for ((i, x), (j, y)) in pairs {
        uf.union(offset[i] + x, offset[j] + y);
    }
    let flat: Vec<&String> = ids.iter().flatten().collect();
    let mut least: Vec<Option<usize>> = vec![None; total];
    for p in 0..total {
        let r = uf.find(p);
        match least[r] {
            Some(q) if flat[q] <= flat[p] => {}
            _ => least[r] = Some(p),
        }
    }
    let reps: Vec<usize> = (0..total).filter_map(|p| if uf.find(p) == p { least[p] } else { None }).collect();
    let (apex, pos) = FinSet::indexed(reps.iter().map(|&p| flat[p].clone()).collect())?;
    let mut class_index = vec![0; total];
    for (k, &p) in reps.iter().enumerate() {
        let root = uf.find(p);
        class_index[root] = pos[k];
    }
    let legs = ids
        .iter()
        .enumerate()
        .map(|(i, block)| (0..block.len()).map(|x| class_index[uf.find(offset[i] + x)]).collect())
        .collect();
    Ok(Colimit { apex, legs })
}

/// Element ids of the disjoint union: `(leg,element)`.
pub(crate) fn tagged(leg: &str, set: &FinSet) -> Vec<String> {
    set.elements().iter().map(|e| tuple_id(&[leg, e])).collect()
}

pub fn colimit(d: &SetDiagram) -> Result<Colimit> {
    let shape = &d.shape;
    let ids = (0..shape.num_objects()).map(|i| tagged(shape.object(i), &d.sets[i])).collect();
    let pairs = shape.morphisms().iter().enumerate().flat_map(|(u, m)| {
        d.maps[u].iter().enumerate().map(move |(x, &y)| ((m.src, x), (m.tgt, y)))
    });
    quotient(ids, pairs)
}

pub fn limit(d: &SetDiagram) -> Result<Limit> {
    let shape = &d.shape;
    let n = shape.num_objects();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut families = Vec::new();
    fn go(d: &SetDiagram, assign: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let Some(i) = assign.iter().position(|a| a.is_none()) else {
            out.push(assign.iter().map(|a| a.unwrap()).collect());
            return guard::check("limit", out.len());
        };
        for x in 0..d.sets[i].len() {
            let mut forced = Vec::new();
            let mut ok = true;
            for &u in d.shape.out_of(i) {
                let j = d.shape.tgt(u);
                let y = d.maps[u][x];
                if j == i {
                    ok &= y == x;
                    continue;
                }
                match assign[j] {
                    Some(z) => ok &= z == y,
                    None => {
                        assign[j] = Some(y);
                        forced.push(j);
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                assign[i] = Some(x);
                go(d, assign, out)?;
                assign[i] = None;
            }
            for j in forced {
                assign[j] = None;
            }
        }
        Ok(())
    }
    go(d, &mut assign, &mut families)?;
    let names = families
        .iter()
        .map(|fam| {
            let parts: Vec<&str> = fam.iter().enumerate().map(|(i, &x)| d.sets[i].element(x)).collect();
            tuple_id(&parts)
        })
        .collect();
    let (apex, pos) = FinSet::indexed(names)?;
    let mut sorted = vec![Vec::new(); families.len()];
    for (old, fam) in families.into_iter().enumerate() {
        sorted[pos[old]] = fam;
    }
    Ok(Limit { apex, families: sorted })
}

/// Data of a functor `S: Wᵒᵖ × W → Set` needed for its coend.
#[derive(Clone, Debug)]
pub struct CoendData {
    pub cat: Arc<FinCategory>,
    /// `S(w,w)` per object.
    pub diagonal: Vec<FinSet>,
    /// Per morphism `u: w → w'`: the set `S(w',w)` with the maps `S(u,id)` into `S(w,w)`
    /// and `S(id,u)` into `S(w',w')`.
    pub twisted: Vec<(FinSet, Vec<usize>, Vec<usize>)>,
}

/// Coend of `S`, as the coequalizer of `∐_u S(w',w) ⇉ ∐_w S(w,w)`; legs from each `S(w,w)`.
pub fn coend(s: &CoendData) -> Result<Colimit> {
    let cat = &s.cat;
    if s.diagonal.len() != cat.num_objects() || s.twisted.len() != cat.num_morphisms() {
        return Err(Error::MalformedDiagram("coend data does not match its category".into()));
    }
    let ids = (0..cat.num_objects()).map(|w| tagged(cat.object(w), &s.diagonal[w])).collect();
    let pairs = cat.morphisms().iter().enumerate().flat_map(|(u, m)| {
        let (set, left, right) = &s.twisted[u];
        (0..set.len()).map(move |x| ((m.src, left[x]), (m.tgt, right[x])))
    });
    quotient(ids, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[&str]) -> FinSet {
        FinSet::new(ids.iter().copied()).unwrap()
    }

    fn span() -> Arc<FinCategory> {
        Arc::new(FinCategory::poset(&["a", "b", "c"], &[("f", "a", "b"), ("g", "a", "c")]).unwrap())
    }

    fn cospan() -> Arc<FinCategory> {
        Arc::new(FinCategory::poset(&["a", "b", "c"], &[("f", "a", "c"), ("g", "b", "c")]).unwrap())
    }

    fn parallel() -> Arc<FinCategory> {
        use crate::fincat::{check_category, CategoryData};
        let s = |x: &str| x.to_string();
        let data = CategoryData {
            objects: vec![s("a"), s("b")],
            morphisms: vec![
                (s("ia"), s("a"), s("a")),
                (s("ib"), s("b"), s("b")),
                (s("p"), s("a"), s("b")),
                (s("q"), s("a"), s("b")),
            ],
            identity: vec![(s("a"), s("ia")), (s("b"), s("ib"))],
            compose: vec![
                (s("ia"), s("ia"), s("ia")),
                (s("ib"), s("ib"), s("ib")),
                (s("p"), s("ia"), s("p")),
                (s("q"), s("ia"), s("q")),
                (s("ib"), s("p"), s("p")),
                (s("ib"), s("q"), s("q")),
            ],
        };
        Arc::new(check_category(&data).unwrap())
    }

    /// Maps of a diagram listed in morphism-id order, identities filled in.
    fn diagram(shape: Arc<FinCategory>, sets: Vec<FinSet>, maps: &[(&str, Vec<usize>)]) -> SetDiagram {
        let mut all = Vec::new();
        for (u, m) in shape.morphisms().iter().enumerate() {
            if shape.is_identity(u) {
                all.push((0..sets[m.src].len()).collect());
            } else {
                all.push(maps.iter().find(|(id, _)| *id == m.id).unwrap().1.clone());
            }
        }
        SetDiagram::new(shape, sets, all).unwrap()
    }

    #[test]
    fn sets_are_sorted_and_unique() {
        assert_eq!(set(&["b", "a"]).elements(), ["a", "b"]);
        assert!(FinSet::new(["a", "a"]).is_err());
    }

    #[test]
    fn predicates() {
        let three = FinSet::range(3);
        assert!(SetMap::identity(three).is_bijective());
        let m = SetMap::new(FinSet::range(2), set(&["*"]), vec![0, 0]).unwrap();
        assert!(m.is_surjective() && !m.is_injective());
        let e = SetMap::new(FinSet::empty(), set(&["*"]), vec![]).unwrap();
        assert!(e.is_injective() && !e.is_surjective());
    }

    #[test]
    fn colimit_over_terminal() {
        let d = diagram(Arc::new(FinCategory::terminal()), vec![set(&["a", "b"])], &[]);
        let c = colimit(&d).unwrap();
        assert_eq!(c.apex.len(), 2);
        assert_eq!(c.legs[0], vec![0, 1]);
    }

    #[test]
    fn pushout_of_points_along_two() {
        let d = diagram(span(), vec![FinSet::range(2), set(&["*"]), set(&["*"])], &[("f", vec![0, 0]), ("g", vec![0, 0])]);
        assert_eq!(colimit(&d).unwrap().apex.len(), 1);
    }

    #[test]
    fn coequalizer_of_projections_is_a_point() {
        let pairs = set(&["aa", "ab", "ba", "bb"]);
        let d = diagram(parallel(), vec![pairs, set(&["a", "b"])], &[("p", vec![0, 0, 1, 1]), ("q", vec![0, 1, 0, 1])]);
        let c = colimit(&d).unwrap();
        assert_eq!(c.apex.elements(), ["(a,aa)"]);
    }

    #[test]
    fn representatives_are_least_ids() {
        let d = diagram(span(), vec![set(&["x"]), set(&["p", "q"]), set(&["r"])], &[("f", vec![1]), ("g", vec![0])]);
        let c = colimit(&d).unwrap();
        assert_eq!(c.apex.elements(), ["(a,x)", "(b,p)"]);
    }

    #[test]
    fn limits() {
        let d = diagram(Arc::new(FinCategory::terminal()), vec![set(&["a", "b"])], &[]);
        assert_eq!(limit(&d).unwrap().apex.len(), 2);
        let d = diagram(cospan(), vec![set(&["a", "b"]), set(&["c"]), set(&["1"])], &[("f", vec![0, 0]), ("g", vec![0])]);
        let l = limit(&d).unwrap();
        assert_eq!(l.apex.elements(), ["(a,c,1)", "(b,c,1)"]);
        let d = diagram(parallel(), vec![FinSet::range(2), FinSet::range(2)], &[("p", vec![0, 0]), ("q", vec![1, 1])]);
        assert!(limit(&d).unwrap().apex.is_empty());
    }

    #[test]
    fn coend_over_terminal_and_discrete() {
        let t = Arc::new(FinCategory::terminal());
        let data = CoendData { cat: t, diagonal: vec![FinSet::range(3)], twisted: vec![(FinSet::range(3), vec![0, 1, 2], vec![0, 1, 2])] };
        assert_eq!(coend(&data).unwrap().apex.len(), 3);
        let d = Arc::new(FinCategory::discrete(&["p", "q"]).unwrap());
        let data = CoendData {
            cat: d,
            diagonal: vec![FinSet::range(2), FinSet::range(1)],
            twisted: vec![(FinSet::range(2), vec![0, 1], vec![0, 1]), (FinSet::range(1), vec![0], vec![0])],
        };
        assert_eq!(coend(&data).unwrap().apex.len(), 3);
    }

    #[test]
    fn coend_of_hom_on_the_interval() {
        // Objects 0, 1 and identities sort first: id_0, id_1, u.
        let i = Arc::new(FinCategory::poset(&["0", "1"], &[("u", "0", "1")]).unwrap());
        // S(a, b) = Hom(a, b); along u the twisted set is Hom(1, 0) = ∅, so nothing is glued.
        let data = CoendData {
            cat: i,
            diagonal: vec![FinSet::range(1), FinSet::range(1)],
            twisted: vec![
                (FinSet::range(1), vec![0], vec![0]),
                (FinSet::range(1), vec![0], vec![0]),
                (FinSet::empty(), vec![], vec![]),
            ],
        };
        assert_eq!(coend(&data).unwrap().apex.len(), 2);
    }

    #[test]
    fn guard_aborts_large_sets() {
        let r = guard::with_limit(2, || FinSet::new(["a", "b", "c"]));
        assert!(matches!(r, Err(Error::SizeExceeded { .. })));
    }
}
