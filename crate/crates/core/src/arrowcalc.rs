//! Arrow-category calculus: squares, pullback-hom, pushout-product with set maps,
//! codiagonals, diagonals and cartesian squares.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{self, FinSet, SetMap};
use crate::presheaf::{self, coproduct, nat_hom, pullback, pushout, Components, NatConstraints, NatHom, Presheaf, PresheafMap, Square};

/// A presheaf map regarded as an object of the arrow category; see [`PresheafMap::s`] and [`PresheafMap::t`].
pub type ArrowObject = PresheafMap;
/// A map of finite sets regarded as an object of the arrow category of sets.
pub type SetArrow = SetMap;

/// For each base object and target element of `f`, the source elements over it.
pub(crate) fn fibers(f: &PresheafMap) -> Vec<Vec<Vec<usize>>> {
    (0..f.base().num_objects())
        .map(|x| {
            let mut fib = vec![Vec::new(); f.t().value(x).len()];
            for (e, &y) in f.component(x).iter().enumerate() {
                fib[y].push(e);
            }
            fib
        })
        .collect()
}

/// The set `Hom(w, f)` of commutative squares from `w` to `f`, as `(top, bottom)` pairs.
#[derive(Clone, Debug)]
pub struct SquareSet {
    pub w: PresheafMap,
    pub f: PresheafMap,
    list: Vec<(Components, Components)>,
    index: HashMap<(Components, Components), usize>,
}

impl SquareSet {
    pub fn len(&self) -> usize {
        self.list.len()
    }
    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
    pub fn top(&self, i: usize) -> &Components {
        &self.list[i].0
    }
    pub fn bottom(&self, i: usize) -> &Components {
        &self.list[i].1
    }
    pub fn find(&self, top: &Components, bottom: &Components) -> Option<usize> {
        self.index.get(&(top.clone(), bottom.clone())).copied()
    }
    pub fn square(&self, i: usize) -> Square {
        Square {
            w: self.w.clone(),
            f: self.f.clone(),
            top: PresheafMap::new_unchecked(self.w.s().clone(), self.f.s().clone(), self.list[i].0.clone()),
            bottom: PresheafMap::new_unchecked(self.w.t().clone(), self.f.t().clone(), self.list[i].1.clone()),
        }
    }
}

/// Enumerates `Hom(w, f)`: bottoms first, then the tops compatible with each bottom.
pub fn squares(w: &PresheafMap, f: &PresheafMap) -> Result<SquareSet> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let bottoms = nat_hom(w.t(), f.t())?;
    let fib = fibers(f);
    let mut list = Vec::new();
    for b in bottoms.all() {
        let candidates = (0..w.base().num_objects())
            .map(|x| w.component(x).iter().map(|&y| fib[x][b[x][y]].clone()).collect())
            .collect();
        let cons = NatConstraints { candidates: Some(candidates), injective: false };
        presheaf::search_nat(w.s(), f.s(), &cons, &mut |top| {
            list.push((top.clone(), b.clone()));
            crate::guard::check("square set", list.len())?;
            Ok(true)
        })?;
    }
    let index = list.iter().enumerate().map(|(i, sq)| (sq.clone(), i)).collect();
    Ok(SquareSet { w: w.clone(), f: f.clone(), list, index })
}

pub(crate) fn compose_components(g: &Components, f: &Components) -> Components {
    f.iter().zip(g).map(|(fc, gc)| fc.iter().map(|&y| gc[y]).collect()).collect()
}

/// The pullback-hom `⟨⟨w,f⟩⟩: Hom(t w, s f) → Hom(w, f)`, `h ↦ (h∘w, f∘h)`.
#[derive(Clone, Debug)]
pub struct PullbackHom {
    pub lifts: NatHom,
    pub squares: SquareSet,
    /// Square index of each lift.
    pub map: Vec<usize>,
}

impl PullbackHom {
    pub fn set_arrow(&self) -> SetArrow {
        SetMap {
            src: self.lifts.set(),
            tgt: FinSet::new(presheaf::numbered_ids(self.squares.len())).expect("distinct ids"),
            assignment: self.map.clone(),
        }
    }
    pub fn is_surjective(&self) -> bool {
        finset::is_surjective(&self.map, self.squares.len())
    }
    pub fn is_bijective(&self) -> bool {
        finset::is_bijective(&self.map, self.squares.len())
    }
}

pub fn pullback_hom(w: &ArrowObject, f: &ArrowObject) -> Result<PullbackHom> {
    let squares = squares(w, f)?;
    let lifts = nat_hom(w.t(), f.s())?;
    let map = lifts
        .all()
        .iter()
        .map(|h| {
            let top = compose_components(h, w.components());
            let bottom = compose_components(f.components(), h);
            squares.find(&top, &bottom).expect("a lift determines a square")
        })
        .collect();
    Ok(PullbackHom { lifts, squares, map })
}

/// `S·F`, the coproduct of copies of `F` indexed by the elements of `S`.
fn copower(s: &FinSet, f: &Arc<Presheaf>) -> Result<presheaf::Coproduct> {
    let parts: Vec<(String, Arc<Presheaf>)> = s.elements().iter().map(|e| (e.clone(), f.clone())).collect();
    coproduct(f.base(), &parts)
}

/// Map `S·F → S'·F'` induced by `σ: S → S'` and `φ: F → F'`.
fn copower_map(
    from: &presheaf::Coproduct,
    to: &presheaf::Coproduct,
    sigma: &[usize],
    phi: &PresheafMap,
) -> Result<PresheafMap> {
    let maps = sigma
        .iter()
        .map(|&k| PresheafMap::compose(&to.injections[k], phi))
        .collect::<Result<Vec<_>>>()?;
    if maps.is_empty() {
        return Ok(PresheafMap::new_unchecked(from.apex.clone(), to.apex.clone(), vec![Vec::new(); phi.base().num_objects()]));
    }
    from.copair(&maps, &to.apex)
}

/// Pushout-product `u □ f`: the cogap `(B·X) ∐_{A·X} (A·Y) → B·Y` for `u: A → B`, `f: X → Y`.
pub fn tensor(u: &SetArrow, f: &ArrowObject) -> Result<ArrowObject> {
    let (x, y) = (f.s(), f.t());
    let ax = copower(&u.src, x)?;
    let bx = copower(&u.tgt, x)?;
    let ay = copower(&u.src, y)?;
    let by = copower(&u.tgt, y)?;
    let ident: Vec<usize> = (0..u.src.len()).collect();
    let idx = PresheafMap::identity(x.clone());
    let idy = PresheafMap::identity(y.clone());
    let ax_bx = copower_map(&ax, &bx, &u.assignment, &idx)?;
    let ax_ay = copower_map(&ax, &ay, &ident, f)?;
    let po = pushout(&ax_bx, &ax_ay)?;
    let bx_by = copower_map(&bx, &by, &(0..u.tgt.len()).collect::<Vec<_>>(), f)?;
    let ay_by = copower_map(&ay, &by, &u.assignment, &idy)?;
    po.cogap(&bx_by, &ay_by)
}

/// `∇ⁿf`; `∇f` is the cogap `B ∐_A B → B`.
pub fn codiagonal(f: &ArrowObject, n: usize) -> Result<ArrowObject> {
    let mut g = f.clone();
    for _ in 0..n {
        let po = pushout(&g, &g)?;
        let id = PresheafMap::identity(g.t().clone());
        g = po.cogap(&id, &id)?;
    }
    Ok(g)
}

/// `Δⁿf`; `Δf` is the gap `A → A ×_B A`.
pub fn diagonal(f: &ArrowObject, n: usize) -> Result<ArrowObject> {
    let mut g = f.clone();
    for _ in 0..n {
        let pb = pullback(&g, &g)?;
        let id = PresheafMap::identity(g.s().clone());
        g = pb.gap(&id, &id)?;
    }
    Ok(g)
}

/// Whether the square is a pullback: `s w → s f ×_{t f} t w` is an objectwise bijection.
pub fn is_cartesian(sq: &Square) -> bool {
    let fib = fibers(&sq.f);
    for x in 0..sq.w.base().num_objects() {
        let pairs: usize = (0..sq.w.t().value(x).len()).map(|b| fib[x][sq.bottom.apply(x, b)].len()).sum();
        if pairs != sq.w.s().value(x).len() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for e in 0..sq.w.s().value(x).len() {
            if !seen.insert((sq.top.apply(x, e), sq.w.apply(x, e))) {
                return false;
            }
        }
    }
    true
}

/// Set-level Whitehead criterion: `f` and `Δf` are objectwise surjective.
pub fn is_iso_whitehead(f: &ArrowObject) -> Result<bool> {
    if !f.is_objectwise_surjective() {
        return Ok(false);
    }
    Ok(diagonal(f, 1)?.is_objectwise_surjective())
}
