//! Map families and the four factorization machines: q-construction, Gabriel–Ulmer,
//! Kelly's k-construction and the plus-construction, together with the iteration
//! driver, reflections and localized hom-sets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arrowcalc::{self, compose_components, pullback_hom, squares, ArrowObject, SquareSet};
use crate::error::{Error, Result};
use crate::fincat::{comma, tuple_id, CommaCategory, FinCategory, Functor};
use crate::finset::{self, CoendData, FinSet};
use crate::modulators::Topology;
use crate::ortho::{self, Relation};
use crate::presheaf::{
    self, colimit_over, coproduct, nat_hom, pushout, yoneda_at, yoneda_map, Components, NatHom, Presheaf,
    PresheafColimit, PresheafDiagram, PresheafMap, Square,
};

pub const DEFAULT_MAX_ITER: usize = 64;

/// A diagram `W → Arr(PSh C)`: one arrow per object of the indexing category and one
/// square per morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFamily {
    base: Arc<FinCategory>,
    indexing: Arc<FinCategory>,
    arrows: Vec<PresheafMap>,
    /// `(top, bottom)` per indexing morphism.
    squares: Vec<(Components, Components)>,
}

fn identity_components(p: &Presheaf) -> Components {
    p.values().iter().map(|v| (0..v.len()).collect()).collect()
}

impl MapFamily {
    pub fn new(
        base: Arc<FinCategory>,
        indexing: Arc<FinCategory>,
        arrows: Vec<PresheafMap>,
        squares: Vec<(Components, Components)>,
    ) -> Result<MapFamily> {
        if arrows.len() != indexing.num_objects() || squares.len() != indexing.num_morphisms() {
            return Err(Error::MalformedFamily("arrow or square count does not match the indexing category".into()));
        }
        if arrows.iter().any(|a| *a.base() != base) {
            return Err(Error::BaseMismatch);
        }
        for (u, m) in indexing.morphisms().iter().enumerate() {
            let (wi, wj) = (&arrows[m.src], &arrows[m.tgt]);
            let (top, bottom) = &squares[u];
            let top = PresheafMap::new(wi.s().clone(), wj.s().clone(), top.clone())
                .map_err(|e| Error::MalformedFamily(format!("top of `{}`: {e}", m.id)))?;
            let bottom = PresheafMap::new(wi.t().clone(), wj.t().clone(), bottom.clone())
                .map_err(|e| Error::MalformedFamily(format!("bottom of `{}`: {e}", m.id)))?;
            Square::new(wi.clone(), wj.clone(), top, bottom)
                .map_err(|e| Error::MalformedFamily(format!("square of `{}`: {e}", m.id)))?;
        }
        for x in 0..indexing.num_objects() {
            let (top, bottom) = &squares[indexing.identity(x)];
            if *top != identity_components(arrows[x].s()) || *bottom != identity_components(arrows[x].t()) {
                return Err(Error::MalformedFamily(format!("identity of `{}` is not sent to an identity", indexing.object(x))));
            }
        }
        for g in 0..indexing.num_morphisms() {
            for &f in indexing.incoming(indexing.src(g)) {
                let gf = indexing.compose(g, f);
                let top = compose_components(&squares[g].0, &squares[f].0);
                let bottom = compose_components(&squares[g].1, &squares[f].1);
                if top != squares[gf].0 || bottom != squares[gf].1 {
                    return Err(Error::MalformedFamily(format!(
                        "composite `{}` is not sent to the composite square",
                        indexing.morphism(gf).id
                    )));
                }
            }
        }
        Ok(MapFamily { base, indexing, arrows, squares })
    }

    pub fn empty(base: Arc<FinCategory>) -> MapFamily {
        let indexing = Arc::new(FinCategory::discrete(&[]).expect("empty category"));
        MapFamily { base, indexing, arrows: Vec::new(), squares: Vec::new() }
    }

    /// Family indexed by a discrete category (only identity squares).
    pub fn discrete(base: Arc<FinCategory>, entries: Vec<(String, PresheafMap)>) -> Result<MapFamily> {
        let names: Vec<&str> = entries.iter().map(|e| e.0.as_str()).collect();
        let indexing = Arc::new(FinCategory::discrete(&names)?);
        let mut arrows: Vec<Option<PresheafMap>> = vec![None; entries.len()];
        for (name, a) in entries {
            arrows[indexing.object_index(&name)?] = Some(a);
        }
        let arrows: Vec<PresheafMap> = arrows.into_iter().map(|a| a.expect("every name placed")).collect();
        let squares = indexing
            .morphisms()
            .iter()
            .map(|m| (identity_components(arrows[m.src].s()), identity_components(arrows[m.src].t())))
            .collect();
        MapFamily::new(base, indexing, arrows, squares)
    }

    /// Full subcategory of the arrow category spanned by the given arrows.
    pub fn full(base: Arc<FinCategory>, mut entries: Vec<(String, PresheafMap)>) -> Result<MapFamily> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::MalformedFamily("duplicate arrow name".into()));
        }
        let n = entries.len();
        let mut homs: Vec<Vec<SquareSet>> = Vec::with_capacity(n);
        for (_, wi) in &entries {
            homs.push(entries.iter().map(|(_, wj)| squares(wi, wj)).collect::<Result<_>>()?);
        }
        let mut morphisms = Vec::new();
        let mut sq = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let width = homs[i][j].len().saturating_sub(1).to_string().len();
                for k in 0..homs[i][j].len() {
                    index.insert((i, j, k), morphisms.len());
                    let id = tuple_id(&[entries[i].0.as_str(), entries[j].0.as_str(), &format!("{k:0width$}")]);
                    morphisms.push((id, i, j));
                    sq.push((homs[i][j].top(k).clone(), homs[i][j].bottom(k).clone()));
                }
            }
        }
        crate::guard::check("family morphisms", morphisms.len())?;
        let identity = (0..n)
            .map(|i| {
                let w = &entries[i].1;
                let k = homs[i][i]
                    .find(&identity_components(w.s()), &identity_components(w.t()))
                    .expect("identity square");
                index[&(i, i, k)]
            })
            .collect();
        let mut compose = Vec::new();
        for (f, &(_, i, j)) in morphisms.iter().enumerate() {
            for (g, &(_, j2, l)) in morphisms.iter().enumerate() {
                if j2 != j {
                    continue;
                }
                let top = compose_components(&sq[g].0, &sq[f].0);
                let bottom = compose_components(&sq[g].1, &sq[f].1);
                let k = homs[i][l].find(&top, &bottom).expect("composite square");
                compose.push((g, f, index[&(i, l, k)]));
            }
        }
        let names: Vec<String> = entries.iter().map(|e| e.0.clone()).collect();
        let (indexing, opos, mpos) = FinCategory::from_indexed(names, morphisms, identity, compose);
        let mut arrows = vec![None; n];
        for (old, (_, a)) in entries.into_iter().enumerate() {
            arrows[opos[old]] = Some(a);
        }
        let mut squares_sorted = vec![None; sq.len()];
        for (old, s) in sq.into_iter().enumerate() {
            squares_sorted[mpos[old]] = Some(s);
        }
        Ok(MapFamily {
            base,
            indexing: Arc::new(indexing),
            arrows: arrows.into_iter().map(Option::unwrap).collect(),
            squares: squares_sorted.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }
    pub fn indexing(&self) -> &Arc<FinCategory> {
        &self.indexing
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn name(&self, i: usize) -> &str {
        self.indexing.object(i)
    }
    pub fn arrow(&self, i: usize) -> &PresheafMap {
        &self.arrows[i]
    }
    pub fn arrows(&self) -> &[PresheafMap] {
        &self.arrows
    }
    pub fn top(&self, u: usize) -> &Components {
        &self.squares[u].0
    }
    pub fn bottom(&self, u: usize) -> &Components {
        &self.squares[u].1
    }
    pub fn square(&self, u: usize) -> Square {
        let m = self.indexing.morphism(u);
        let (wi, wj) = (&self.arrows[m.src], &self.arrows[m.tgt]);
        Square {
            w: wi.clone(),
            f: wj.clone(),
            top: PresheafMap::new_unchecked(wi.s().clone(), wj.s().clone(), self.squares[u].0.clone()),
            bottom: PresheafMap::new_unchecked(wi.t().clone(), wj.t().clone(), self.squares[u].1.clone()),
        }
    }
    /// `(name, arrow)` pairs in index order.
    pub fn entries(&self) -> Vec<(String, PresheafMap)> {
        (0..self.len()).map(|i| (self.name(i).to_string(), self.arrows[i].clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rho_in_right_class: bool,
    /// Per member of the family, whether `ρ` is orthogonal (or weakly orthogonal) to it.
    pub evidence: Vec<(String, bool)>,
    /// The stopping rule fired: an invertible unit, or right-class membership for q/GU.
    pub comparison_converged: bool,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub lambda: PresheafMap,
    pub rho: PresheafMap,
    pub middle: Arc<Presheaf>,
    pub iterations: usize,
    pub certificate: Certificate,
}

/// One application of a machine: `arrow ∘ unit = f`.
#[derive(Clone, Debug)]
pub struct Step {
    pub unit: PresheafMap,
    pub arrow: PresheafMap,
}

fn copair(cp: &presheaf::Coproduct, maps: &[PresheafMap], target: &Arc<Presheaf>) -> Result<PresheafMap> {
    if maps.is_empty() {
        let n = target.base().num_objects();
        return Ok(PresheafMap::new_unchecked(cp.apex.clone(), target.clone(), vec![Vec::new(); n]));
    }
    cp.copair(maps, target)
}

/// `u(f): s f → Q f` and `q(f): Q f → t f`, ignoring the morphisms of `W`.
pub fn q_step(f: &ArrowObject, w: &MapFamily) -> Result<Step> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let mut found = Vec::new();
    for i in 0..w.len() {
        let sq = squares(w.arrow(i), f)?;
        found.push((0..sq.len()).map(|k| sq.square(k)).collect());
    }
    attach_cells(f, w, found)
}

/// One Gabriel–Ulmer step: the q-construction over `W^∇`, attaching cells only for lifting
/// problems that have no filler yet. Squares of `w` with several fillers are the unsolved
/// problems of `∇w`, so the step adds missing fillers and merges duplicate ones.
pub fn gu_step(f: &ArrowObject, nabla: &MapFamily) -> Result<Step> {
    if nabla.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let mut found = Vec::new();
    for i in 0..nabla.len() {
        let ph = pullback_hom(nabla.arrow(i), f)?;
        let mut solved = vec![false; ph.squares.len()];
        for &k in &ph.map {
            solved[k] = true;
        }
        found.push((0..ph.squares.len()).filter(|&k| !solved[k]).map(|k| ph.squares.square(k)).collect());
    }
    attach_cells(f, nabla, found)
}

/// Pushout of `∐ w → s f` along the given squares, one list per member of `W`.
fn attach_cells(f: &ArrowObject, w: &MapFamily, found: Vec<Vec<Square>>) -> Result<Step> {
    let base = f.base();
    let mut src_parts = Vec::new();
    let mut tgt_parts = Vec::new();
    let mut cells = Vec::new();
    for (i, list) in found.into_iter().enumerate() {
        let width = list.len().saturating_sub(1).to_string().len();
        for (k, sq) in list.into_iter().enumerate() {
            let name = tuple_id(&[w.name(i), &format!("{k:0width$}")]);
            src_parts.push((name.clone(), w.arrow(i).s().clone()));
            tgt_parts.push((name, w.arrow(i).t().clone()));
            cells.push((i, sq));
        }
    }
    let a = coproduct(base, &src_parts)?;
    let b = coproduct(base, &tgt_parts)?;
    let wmap: Vec<PresheafMap> = cells
        .iter()
        .enumerate()
        .map(|(e, (i, _))| PresheafMap::compose(&b.injections[e], w.arrow(*i)))
        .collect::<Result<_>>()?;
    let wmap = copair(&a, &wmap, &b.apex)?;
    let tops: Vec<PresheafMap> = cells.iter().map(|(_, s)| s.top.clone()).collect();
    let bottoms: Vec<PresheafMap> = cells.iter().map(|(_, s)| s.bottom.clone()).collect();
    let top = copair(&a, &tops, f.s())?;
    let bottom = copair(&b, &bottoms, f.t())?;
    let po = pushout(&wmap, &top)?;
    let arrow = po.cogap(&bottom, f)?;
    Ok(Step { unit: po.inr.clone(), arrow })
}

/// `W^∇`: the members of `W` together with their codiagonals, as a discrete family.
pub fn codiagonal_completion(w: &MapFamily) -> Result<MapFamily> {
    let mut entries = w.entries();
    for i in 0..w.len() {
        entries.push((format!("nabla({})", w.name(i)), arrowcalc::codiagonal(w.arrow(i), 1)?));
    }
    MapFamily::discrete(w.base().clone(), entries)
}

/// `∫^w P(w) × G(w)` for `P: Wᵒᵖ → Set` and `G: W → PSh(C)`, computed objectwise.
#[derive(Debug)]
struct Weighted {
    apex: Arc<Presheaf>,
    /// `legs[w][x][p * |G(w)(x)| + e]`
    legs: Vec<Vec<Vec<usize>>>,
    /// A representative `(w, p * |G(w)(x)| + e)` per apex element.
    members: Vec<Vec<(usize, usize)>>,
    g: Vec<Arc<Presheaf>>,
}

impl Weighted {
    fn leg(&self, w: usize, x: usize, p: usize, e: usize) -> usize {
        self.legs[w][x][p * self.g[w].value(x).len() + e]
    }
    fn member(&self, x: usize, c: usize) -> (usize, usize, usize) {
        let (w, k) = self.members[x][c];
        let n = self.g[w].value(x).len();
        (w, k / n, k % n)
    }

    /// Map between weighted coends induced by `P → P'` and `G → G'`.
    fn map_to(&self, to: &Weighted, pmap: &[Vec<usize>], gmap: &[&Components]) -> PresheafMap {
        let components = (0..self.apex.base().num_objects())
            .map(|x| {
                (0..self.apex.value(x).len())
                    .map(|c| {
                        let (w, p, e) = self.member(x, c);
                        to.leg(w, x, pmap[w][p], gmap[w][x][e])
                    })
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(self.apex.clone(), to.apex.clone(), components)
    }

    /// Map into `target` sending the class of `(w, p, e)` to `eval(w, p)[x][e]`.
    fn map_out<'a>(&self, target: &Arc<Presheaf>, eval: impl Fn(usize, usize) -> &'a Components) -> PresheafMap {
        let components = (0..self.apex.base().num_objects())
            .map(|x| {
                (0..self.apex.value(x).len())
                    .map(|c| {
                        let (w, p, e) = self.member(x, c);
                        eval(w, p)[x][e]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(self.apex.clone(), target.clone(), components)
    }
}

fn weighted_coend(
    fam: &MapFamily,
    p_sizes: &[usize],
    p_restrict: &[Vec<usize>],
    g: Vec<Arc<Presheaf>>,
    g_maps: &[&Components],
) -> Result<Weighted> {
    let cat = fam.indexing();
    let base = fam.base();
    let (nw, nx) = (cat.num_objects(), base.num_objects());
    let p_ids: Vec<Vec<String>> = p_sizes.iter().map(|&n| presheaf::numbered_ids(n)).collect();
    let mut legs = vec![vec![Vec::new(); nx]; nw];
    let mut values = Vec::with_capacity(nx);
    let mut members = Vec::with_capacity(nx);
    for x in 0..nx {
        let mut diagonal = Vec::with_capacity(nw);
        let mut pos = Vec::with_capacity(nw);
        for w in 0..nw {
            let gx = g[w].value(x);
            let names = p_ids[w]
                .iter()
                .flat_map(|p| gx.elements().iter().map(move |e| tuple_id(&[p, e])))
                .collect();
            let (set, ps) = FinSet::indexed(names)?;
            diagonal.push(set);
            pos.push(ps);
        }
        let twisted = cat
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                let (i, j) = (m.src, m.tgt);
                let (gi, gj) = (g[i].value(x).len(), g[j].value(x).len());
                let mut left = Vec::with_capacity(p_sizes[j] * gi);
                let mut right = Vec::with_capacity(p_sizes[j] * gi);
                for p in 0..p_sizes[j] {
                    for e in 0..gi {
                        left.push(pos[i][p_restrict[u][p] * gi + e]);
                        right.push(pos[j][p * gj + g_maps[u][x][e]]);
                    }
                }
                (FinSet::range(left.len()), left, right)
            })
            .collect();
        let col = finset::coend(&CoendData { cat: cat.clone(), diagonal, twisted })?;
        let mut mem = vec![(usize::MAX, 0); col.apex.len()];
        for w in 0..nw {
            let leg: Vec<usize> = pos[w].iter().map(|&q| col.legs[w][q]).collect();
            for (k, &c) in leg.iter().enumerate() {
                if mem[c].0 == usize::MAX {
                    mem[c] = (w, k);
                }
            }
            legs[w][x] = leg;
        }
        values.push(col.apex);
        members.push(mem);
    }
    let restriction = base
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            members[m.tgt]
                .iter()
                .map(|&(w, k)| {
                    let n = g[w].value(m.tgt).len();
                    let (p, e) = (k / n, k % n);
                    let e2 = g[w].restrict(u, e);
                    legs[w][m.src][p * g[w].value(m.src).len() + e2]
                })
                .collect()
        })
        .collect();
    let apex = Arc::new(Presheaf::new_unchecked(base.clone(), values, restriction));
    Ok(Weighted { apex, legs, members, g })
}

/// Every object of the k-construction diagram for `f`, built from coends.
#[derive(Clone, Debug)]
pub struct KellyDiagram {
    /// `∫^w Hom(t w, s f) · s w → ∫^w Hom(t w, s f) · t w`
    pub alpha: PresheafMap,
    /// `∫^w Hom(t w, s f) · s w → ∫^w Hom(w, f) · s w`
    pub beta: PresheafMap,
    /// `∫^w Hom(w, f) · s w → s f`
    pub gamma: PresheafMap,
    /// `∫^w Hom(w, f) · s w → D`
    pub alpha_prime: PresheafMap,
    /// `∫^w Hom(t w, s f) · t w → D`
    pub beta_prime: PresheafMap,
    /// `D → s f`
    pub delta: PresheafMap,
    /// `∫^w Hom(w, f) · t w → K f`
    pub epsilon: PresheafMap,
    /// `D → ∫^w Hom(w, f) · t w`, the map `∫^w ⟨⟨w,f⟩⟩ □ w`.
    pub minus: PresheafMap,
    pub unit: PresheafMap,
    pub k: PresheafMap,
    ck: Arc<Weighted>,
}

pub fn kelly_diagram(f: &ArrowObject, w: &MapFamily) -> Result<KellyDiagram> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let cat = w.indexing();
    let phs: Vec<arrowcalc::PullbackHom> = w.arrows().iter().map(|a| pullback_hom(a, f)).collect::<Result<_>>()?;
    let lift_restrict: Vec<Vec<usize>> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            phs[m.tgt]
                .lifts
                .all()
                .iter()
                .map(|h| phs[m.src].lifts.find(&compose_components(h, w.bottom(u))).expect("restricted lift"))
                .collect()
        })
        .collect();
    let square_restrict: Vec<Vec<usize>> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            let (to, from) = (&phs[m.src].squares, &phs[m.tgt].squares);
            (0..from.len())
                .map(|k| {
                    let top = compose_components(from.top(k), w.top(u));
                    let bottom = compose_components(from.bottom(k), w.bottom(u));
                    to.find(&top, &bottom).expect("restricted square")
                })
                .collect()
        })
        .collect();
    let lift_sizes: Vec<usize> = phs.iter().map(|p| p.lifts.len()).collect();
    let square_sizes: Vec<usize> = phs.iter().map(|p| p.squares.len()).collect();
    let srcs: Vec<Arc<Presheaf>> = w.arrows().iter().map(|a| a.s().clone()).collect();
    let tgts: Vec<Arc<Presheaf>> = w.arrows().iter().map(|a| a.t().clone()).collect();
    let tops: Vec<&Components> = (0..cat.num_morphisms()).map(|u| w.top(u)).collect();
    let bottoms: Vec<&Components> = (0..cat.num_morphisms()).map(|u| w.bottom(u)).collect();

    let e1 = weighted_coend(w, &lift_sizes, &lift_restrict, tgts.clone(), &bottoms)?;
    let e0 = weighted_coend(w, &lift_sizes, &lift_restrict, srcs.clone(), &tops)?;
    let e2 = weighted_coend(w, &square_sizes, &square_restrict, srcs, &tops)?;
    let ck = weighted_coend(w, &square_sizes, &square_restrict, tgts, &bottoms)?;

    let ids = |sizes: &[usize]| -> Vec<Vec<usize>> { sizes.iter().map(|&n| (0..n).collect()).collect() };
    let id_src: Vec<Components> = w.arrows().iter().map(|a| identity_components(a.s())).collect();
    let id_tgt: Vec<Components> = w.arrows().iter().map(|a| identity_components(a.t())).collect();
    let wc: Vec<&Components> = w.arrows().iter().map(|a| a.components()).collect();
    let pbh: Vec<Vec<usize>> = phs.iter().map(|p| p.map.clone()).collect();

    let alpha = e0.map_to(&e1, &ids(&lift_sizes), &wc);
    let beta = e0.map_to(&e2, &pbh, &id_src.iter().collect::<Vec<_>>());
    let a = e1.map_to(&ck, &pbh, &id_tgt.iter().collect::<Vec<_>>());
    let b = e2.map_to(&ck, &ids(&square_sizes), &wc);
    let ev = e1.map_out(f.s(), |i, p| phs[i].lifts.components(p));
    let gamma = e2.map_out(f.s(), |i, k| phs[i].squares.top(k));
    let bottom_ev = ck.map_out(f.t(), |i, k| phs[i].squares.bottom(k));

    let po1 = pushout(&alpha, &beta)?;
    let delta = po1.cogap(&ev, &gamma)?;
    let minus = po1.cogap(&a, &b)?;
    let po2 = pushout(&delta, &minus)?;
    let k = po2.cogap(f, &bottom_ev)?;
    Ok(KellyDiagram {
        alpha,
        beta,
        gamma,
        alpha_prime: po1.inr.clone(),
        beta_prime: po1.inl.clone(),
        delta,
        epsilon: po2.inr.clone(),
        minus,
        unit: po2.inl.clone(),
        k,
        ck: Arc::new(ck),
    })
}

/// `u(f): s f → K f` and `k(f): K f → t f`.
pub fn kelly_step(f: &ArrowObject, w: &MapFamily) -> Result<Step> {
    let d = kelly_diagram(f, w)?;
    Ok(Step { unit: d.unit, arrow: d.k })
}

/// The comma category of `W` over a presheaf on `W` given by element counts and
/// restrictions, built as `incl ↓ const` in the collage of `W` with one extra object.
pub(crate) struct ElementsComma {
    pub comma: CommaCategory,
    /// `(w, k)` per comma object.
    pub entries: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl ElementsComma {
    pub fn object(&self, w: usize, k: usize) -> usize {
        self.index[&(w, k)]
    }
}

fn fresh(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut s = base.to_string();
    while taken(&s) {
        s.push('\'');
    }
    s
}

pub(crate) fn elements_comma(cat: &Arc<FinCategory>, sizes: &[usize], restrict: &[Vec<usize>]) -> Result<ElementsComma> {
    let n = cat.num_objects();
    let mor_taken = |s: &str| cat.morphism_index(s).is_ok();
    let top = fresh("⊤", &|s| cat.object_index(s).is_ok());
    let mut objects: Vec<String> = cat.objects().to_vec();
    objects.push(top.clone());
    let mut morphisms: Vec<(String, usize, usize)> =
        cat.morphisms().iter().map(|m| (m.id.clone(), m.src, m.tgt)).collect();
    let mut identity: Vec<usize> = (0..n).map(|x| cat.identity(x)).collect();
    let id_top = morphisms.len();
    morphisms.push((fresh(&format!("id_{top}"), &mor_taken), n, n));
    identity.push(id_top);
    let mut elem = vec![Vec::new(); n];
    let mut back = HashMap::new();
    for w in 0..n {
        let width = sizes[w].saturating_sub(1).to_string().len();
        for k in 0..sizes[w] {
            back.insert(morphisms.len(), (w, k));
            elem[w].push(morphisms.len());
            let id = fresh(&format!("<{},{k:0width$}>", cat.object(w)), &mor_taken);
            morphisms.push((id, w, n));
        }
    }
    crate::guard::check("collage morphisms", morphisms.len())?;
    let mut compose: Vec<(usize, usize, usize)> = Vec::new();
    for g in 0..cat.num_morphisms() {
        for &f in cat.incoming(cat.src(g)) {
            compose.push((g, f, cat.compose(g, f)));
        }
    }
    compose.push((id_top, id_top, id_top));
    for (u, m) in cat.morphisms().iter().enumerate() {
        for k in 0..sizes[m.tgt] {
            compose.push((elem[m.tgt][k], u, elem[m.src][restrict[u][k]]));
        }
    }
    for es in elem.iter().take(n) {
        for &e in es {
            compose.push((id_top, e, e));
        }
    }
    let (collage, opos, mpos) = FinCategory::from_indexed(objects, morphisms, identity, compose);
    let collage = Arc::new(collage);
    let incl = Functor::new(
        cat.clone(),
        collage.clone(),
        (0..n).map(|x| opos[x]).collect(),
        (0..cat.num_morphisms()).map(|u| mpos[u]).collect(),
    )?;
    let point = Functor::constant(Arc::new(FinCategory::terminal()), collage.clone(), opos[n]);
    let comma = comma(&incl, &point)?;
    let mut unsorted = HashMap::new();
    for (old, wk) in back {
        unsorted.insert(mpos[old], wk);
    }
    let entries: Vec<(usize, usize)> = comma.triples.iter().map(|&(_, _, h)| unsorted[&h]).collect();
    let index = entries.iter().enumerate().map(|(c, &wk)| (wk, c)).collect();
    Ok(ElementsComma { comma, entries, index })
}

fn comma_colimit(
    base: &Arc<FinCategory>,
    ec: &ElementsComma,
    g: &[Arc<Presheaf>],
    g_maps: &[&Components],
) -> Result<PresheafColimit> {
    let d = PresheafDiagram {
        shape: ec.comma.category.clone(),
        objects: ec.entries.iter().map(|&(w, _)| g[w].clone()).collect(),
        maps: ec.comma.pairs.iter().map(|&(u, _)| g_maps[u].clone()).collect(),
    };
    colimit_over(base, &d)
}

/// The plus-construction of `f` and the comparison maps around it.
#[derive(Clone, Debug)]
pub struct PlusParts {
    /// `⁺f: colim_{W↓f} t w → colim_{W↓t f} t w`
    pub plus: PresheafMap,
    /// `b(f): colim_{W↓f} s w → colim_{W↓f} t w`
    pub b: PresheafMap,
    /// `colim_{W↓f} s w → s f`
    pub gamma: PresheafMap,
    /// `colim_{W↓t f} t w → t f`
    pub zeta: PresheafMap,
    /// Comma object `(w, square index)` per leg of the domain colimit.
    pub domain: PresheafColimit,
    domain_entries: Vec<(usize, usize)>,
    domain_index: HashMap<(usize, usize), usize>,
    squares: Vec<SquareSet>,
}

impl PlusParts {
    /// The map `colim_{W↓f'} t w → colim_{W↓f} t w` induced by a square `f' → f`
    /// with the given top and bottom components.
    pub fn map_to(&self, target: &PlusParts, top: &Components, bottom: &Components) -> Result<PresheafMap> {
        let cocone = self
            .domain_entries
            .iter()
            .map(|&(i, k)| {
                let t = compose_components(top, self.squares[i].top(k));
                let b = compose_components(bottom, self.squares[i].bottom(k));
                let k2 = target.squares[i]
                    .find(&t, &b)
                    .ok_or_else(|| Error::NotCommutative("the given maps do not form a square".into()))?;
                Ok(&target.domain.legs[target.domain_index[&(i, k2)]])
            })
            .collect::<Result<Vec<_>>>()?;
        self.domain.induced(&cocone, &target.domain.apex)
    }
}

pub fn plus_parts(f: &ArrowObject, w: &MapFamily) -> Result<PlusParts> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let base = f.base();
    let cat = w.indexing();
    let sqs: Vec<SquareSet> = w.arrows().iter().map(|a| squares(a, f)).collect::<Result<_>>()?;
    let sq_restrict: Vec<Vec<usize>> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            let (to, from) = (&sqs[m.src], &sqs[m.tgt]);
            (0..from.len())
                .map(|k| {
                    let top = compose_components(from.top(k), w.top(u));
                    let bottom = compose_components(from.bottom(k), w.bottom(u));
                    to.find(&top, &bottom).expect("restricted square")
                })
                .collect()
        })
        .collect();
    let bots: Vec<NatHom> = w.arrows().iter().map(|a| nat_hom(a.t(), f.t())).collect::<Result<_>>()?;
    let bot_restrict: Vec<Vec<usize>> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            bots[m.tgt]
                .all()
                .iter()
                .map(|h| bots[m.src].find(&compose_components(h, w.bottom(u))).expect("restricted map"))
                .collect()
        })
        .collect();
    let srcs: Vec<Arc<Presheaf>> = w.arrows().iter().map(|a| a.s().clone()).collect();
    let tgts: Vec<Arc<Presheaf>> = w.arrows().iter().map(|a| a.t().clone()).collect();
    let tops: Vec<&Components> = (0..cat.num_morphisms()).map(|u| w.top(u)).collect();
    let bottoms: Vec<&Components> = (0..cat.num_morphisms()).map(|u| w.bottom(u)).collect();

    let ec_f = elements_comma(cat, &sqs.iter().map(SquareSet::len).collect::<Vec<_>>(), &sq_restrict)?;
    let ec_t = elements_comma(cat, &bots.iter().map(NatHom::len).collect::<Vec<_>>(), &bot_restrict)?;
    let cplus = comma_colimit(base, &ec_f, &tgts, &bottoms)?;
    let es = comma_colimit(base, &ec_f, &srcs, &tops)?;
    let dplus = comma_colimit(base, &ec_t, &tgts, &bottoms)?;

    let b_cocone: Vec<Components> = ec_f
        .entries
        .iter()
        .enumerate()
        .map(|(c, &(i, _))| compose_components(&cplus.legs[c], w.arrow(i).components()))
        .collect();
    let b = es.induced(&b_cocone.iter().collect::<Vec<_>>(), &cplus.apex)?;
    let g_cocone: Vec<&Components> = ec_f.entries.iter().map(|&(i, k)| sqs[i].top(k)).collect();
    let gamma = es.induced(&g_cocone, f.s())?;
    let z_cocone: Vec<&Components> = ec_t.entries.iter().map(|&(i, k)| bots[i].components(k)).collect();
    let zeta = dplus.induced(&z_cocone, f.t())?;
    let p_cocone: Vec<&Components> = ec_f
        .entries
        .iter()
        .map(|&(i, k)| {
            let j = bots[i].find(sqs[i].bottom(k)).expect("bottom of a square");
            &dplus.legs[ec_t.object(i, j)]
        })
        .collect();
    let plus = cplus.induced(&p_cocone, &dplus.apex)?;
    Ok(PlusParts {
        plus,
        b,
        gamma,
        zeta,
        domain: cplus,
        domain_entries: ec_f.entries,
        domain_index: ec_f.index,
        squares: sqs,
    })
}

#[derive(Clone, Debug)]
pub struct PlusStep {
    /// `s f → ⁺f`, the composite `b(f) ∘ γ⁻¹`.
    pub unit: PresheafMap,
    /// `⁺f` with its own codomain `colim_{W↓t f} t w`.
    pub plus: PresheafMap,
    pub zeta: PresheafMap,
    pub zeta_iso: bool,
    /// `ζ ∘ ⁺f`, the arrow the driver iterates on.
    pub arrow: PresheafMap,
}

pub fn plus_step(f: &ArrowObject, w: &MapFamily) -> Result<PlusStep> {
    let parts = plus_parts(f, w)?;
    let inv = parts.gamma.inverse().ok_or_else(|| {
        Error::PlusUnitUndefined("colim over W↓f of s w → s f is not invertible; the family is not a pre-modulator".into())
    })?;
    let unit = PresheafMap::compose(&parts.b, &inv)?;
    let arrow = PresheafMap::compose(&parts.zeta, &parts.plus)?;
    Ok(PlusStep { unit, zeta_iso: parts.zeta.is_objectwise_bijective(), plus: parts.plus, zeta: parts.zeta, arrow })
}

/// `F⁺(X) = colim_{R ∈ J(X)ᵒᵖ} Hom(R, F)`, straight from matching families.
pub fn plus_classic(f: &Arc<Presheaf>, j: &Topology) -> Result<Presheaf> {
    let c = j.base();
    if f.base() != c {
        return Err(Error::BaseMismatch);
    }
    let nx = c.num_objects();
    let mut sieves = Vec::with_capacity(nx);
    let mut matches: Vec<Vec<NatHom>> = Vec::with_capacity(nx);
    for x in 0..nx {
        let sv: Vec<Arc<Presheaf>> = j.covers(x).iter().map(|s| Arc::new(s.presheaf(c))).collect();
        matches.push(sv.iter().map(|r| nat_hom(r, f)).collect::<Result<_>>()?);
        sieves.push(sv);
    }
    // Restriction of a matching family on `from` to the subsieve `to` (arrows are looked up by id).
    let restrict = |eta: &Components, from: &Presheaf, to: &Presheaf, pre: &dyn Fn(&str) -> String| -> Components {
        (0..nx)
            .map(|z| {
                to.value(z)
                    .elements()
                    .iter()
                    .map(|g| eta[z][from.value(z).index_of(&pre(g)).expect("arrow in sieve")])
                    .collect()
            })
            .collect()
    };
    let mut values = Vec::with_capacity(nx);
    let mut legs: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nx);
    let mut members: Vec<Vec<(usize, usize)>> = Vec::with_capacity(nx);
    for x in 0..nx {
        let covers = j.covers(x);
        let ids = covers
            .iter()
            .zip(&matches[x])
            .map(|(s, m)| finset::tagged(&s.name(c), &m.set()))
            .collect();
        let mut pairs = Vec::new();
        for (a, ra) in covers.iter().enumerate() {
            for (b, rb) in covers.iter().enumerate() {
                if a == b || !rb.is_subsieve_of(ra) {
                    continue;
                }
                for (p, eta) in matches[x][a].all().iter().enumerate() {
                    let r = restrict(eta, &sieves[x][a], &sieves[x][b], &|g| g.to_string());
                    pairs.push(((a, p), (b, matches[x][b].find(&r).expect("restricted family"))));
                }
            }
        }
        let col = finset::quotient(ids, pairs)?;
        let mut mem = vec![(usize::MAX, 0); col.apex.len()];
        for (a, leg) in col.legs.iter().enumerate() {
            for (p, &cl) in leg.iter().enumerate() {
                if mem[cl].0 == usize::MAX {
                    mem[cl] = (a, p);
                }
            }
        }
        values.push(col.apex);
        legs.push(col.legs);
        members.push(mem);
    }
    let mut restriction = Vec::with_capacity(c.num_morphisms());
    for (u, m) in c.morphisms().iter().enumerate() {
        let (y, x) = (m.src, m.tgt);
        let mut r = Vec::with_capacity(values[x].len());
        for &(a, p) in &members[x] {
            let pulled = j.covers(x)[a].pullback(c, u);
            let b = j.covers(y).iter().position(|s| *s == pulled).ok_or_else(|| {
                Error::MalformedTopology(format!("pullback of a covering sieve along `{}` does not cover", m.id))
            })?;
            let pre = |g: &str| c.morphism(c.compose(u, c.morphism_index(g).expect("arrow id"))).id.clone();
            let eta = restrict(matches[x][a].components(p), &sieves[x][a], &sieves[y][b], &pre);
            r.push(legs[y][b][matches[y][b].find(&eta).expect("pulled-back family")]);
        }
        restriction.push(r);
    }
    Presheaf::new(c.clone(), values, restriction)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Machine {
    Quillen,
    GabrielUlmer,
    Kelly,
    Plus,
}

impl Machine {
    pub fn name(self) -> &'static str {
        match self {
            Machine::Quillen => "q",
            Machine::GabrielUlmer => "gu",
            Machine::Kelly => "kelly",
            Machine::Plus => "plus",
        }
    }
}

impl std::str::FromStr for Machine {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "q" => Ok(Machine::Quillen),
            "gu" => Ok(Machine::GabrielUlmer),
            "kelly" => Ok(Machine::Kelly),
            "plus" => Ok(Machine::Plus),
            _ => Err(format!("unknown machine `{s}`")),
        }
    }
}

fn certify(machine: Machine, rho: &PresheafMap, w: &MapFamily, converged: bool) -> Result<Certificate> {
    let rel = if machine == Machine::Quillen { Relation::Weak } else { Relation::Unique };
    let m = ortho::membership(rho, w, rel, false)?;
    Ok(Certificate { rho_in_right_class: m.member, evidence: m.per_arrow, comparison_converged: converged })
}

/// Runs a machine until its stopping rule fires or `max_iter` steps have been taken.
pub fn iterate(machine: Machine, f: &ArrowObject, w: &MapFamily, max_iter: usize) -> Result<FactorizationResult> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let mut lambda = PresheafMap::identity(f.s().clone());
    let mut rho = f.clone();
    let mut iterations = 0;
    let nabla = if machine == Machine::GabrielUlmer { Some(codiagonal_completion(w)?) } else { None };
    let converged = loop {
        match machine {
            Machine::Quillen | Machine::GabrielUlmer => {
                let rel = if machine == Machine::Quillen { Relation::Weak } else { Relation::Unique };
                if ortho::membership(&rho, w, rel, false)?.member {
                    break true;
                }
                if iterations == max_iter {
                    break false;
                }
                let step = match &nabla {
                    Some(n) => gu_step(&rho, n)?,
                    None => q_step(&rho, w)?,
                };
                lambda = PresheafMap::compose(&step.unit, &lambda)?;
                rho = step.arrow;
                iterations += 1;
            }
            Machine::Kelly | Machine::Plus => {
                if iterations == max_iter {
                    break false;
                }
                let step = if machine == Machine::Kelly {
                    kelly_step(&rho, w)?
                } else {
                    let p = plus_step(&rho, w)?;
                    Step { unit: p.unit, arrow: p.arrow }
                };
                iterations += 1;
                if step.unit.is_objectwise_bijective() {
                    break true;
                }
                lambda = PresheafMap::compose(&step.unit, &lambda)?;
                rho = step.arrow;
            }
        }
    };
    let certificate = certify(machine, &rho, w, converged)?;
    let result = FactorizationResult { middle: rho.s().clone(), lambda, rho, iterations, certificate };
    if converged {
        Ok(result)
    } else {
        Err(Error::NonConvergence { max_iter, last: Box::new(result) })
    }
}

#[derive(Clone, Debug)]
pub struct Reflection {
    pub object: Arc<Presheaf>,
    pub unit: PresheafMap,
    pub iterations: usize,
}

/// `P_W X` by iterating the k-construction on `X → 1`.
pub fn reflect(x: &Arc<Presheaf>, w: &MapFamily, max_iter: usize) -> Result<Reflection> {
    let r = iterate(Machine::Kelly, &PresheafMap::to_terminal(x.clone()), w, max_iter)?;
    Ok(Reflection { object: r.middle, unit: r.lambda, iterations: r.iterations })
}

/// The family `{y(w) : w ∈ maps}` of representable arrows, indexed discretely by morphism id.
pub fn representable_family(c: &Arc<FinCategory>, maps: &[&str]) -> Result<MapFamily> {
    let mut entries = Vec::with_capacity(maps.len());
    for id in maps {
        let m = c.morphism_index(id)?;
        let ya = Arc::new(yoneda_at(c, c.src(m)));
        let yb = Arc::new(yoneda_at(c, c.tgt(m)));
        entries.push((id.to_string(), yoneda_map(c, m, &ya, &yb)));
    }
    MapFamily::discrete(c.clone(), entries)
}

/// `Hom_{C[W⁻¹]}(x, y) = (P_W y(y))(x)`.
pub fn localized_hom(c: &Arc<FinCategory>, maps: &[&str], x: &str, y: &str, max_iter: usize) -> Result<FinSet> {
    let w = representable_family(c, maps)?;
    let xi = c.object_index(x)?;
    let yy = Arc::new(yoneda_at(c, c.object_index(y)?));
    Ok(reflect(&yy, &w, max_iter)?.object.value(xi).clone())
}

#[derive(Clone, Debug)]
pub struct ComparisonMap {
    pub name: &'static str,
    pub map: PresheafMap,
    pub bijective: bool,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    /// α, β, γ, α', β', δ, ε, ζ in that order.
    pub maps: Vec<ComparisonMap>,
    /// `k(f)` and `ζ ∘ ⁺f` agree through an explicit bijection `⁺f → K f`.
    pub kelly_plus_iso: bool,
}

impl Comparison {
    pub fn all_bijective(&self) -> bool {
        self.maps.iter().all(|m| m.bijective)
    }
}

/// Builds the eight comparison maps relating the k- and plus-constructions of `f`.
pub fn compare(f: &ArrowObject, w: &MapFamily) -> Result<Comparison> {
    let d = kelly_diagram(f, w)?;
    let p = plus_parts(f, w)?;
    let named = [
        ("alpha", d.alpha.clone()),
        ("beta", d.beta.clone()),
        ("gamma", d.gamma.clone()),
        ("alpha'", d.alpha_prime.clone()),
        ("beta'", d.beta_prime.clone()),
        ("delta", d.delta.clone()),
        ("epsilon", d.epsilon.clone()),
        ("zeta", p.zeta.clone()),
    ];
    let maps = named
        .into_iter()
        .map(|(name, map)| ComparisonMap { name, bijective: map.is_objectwise_bijective(), map })
        .collect();
    // The comma colimit and the coend share the generators `(w, square, element)`.
    let cocone: Vec<Components> = p
        .domain_entries
        .iter()
        .map(|&(i, k)| {
            let t = w.arrow(i).t();
            (0..f.base().num_objects()).map(|x| (0..t.value(x).len()).map(|e| d.ck.leg(i, x, k, e)).collect()).collect()
        })
        .collect();
    let kelly_plus_iso = match p.domain.induced(&cocone.iter().collect::<Vec<_>>(), d.epsilon.s()) {
        Ok(cmp) => {
            let phi = PresheafMap::compose(&d.epsilon, &cmp)?;
            let lhs = PresheafMap::compose(&d.k, &phi)?;
            let rhs = PresheafMap::compose(&p.zeta, &p.plus)?;
            phi.is_objectwise_bijective() && lhs.components() == rhs.components()
        }
        Err(_) => false,
    };
    Ok(Comparison { maps, kelly_plus_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modulators::topology_to_family;

    fn fold_family(c: &Arc<FinCategory>) -> MapFamily {
        MapFamily::discrete(c.clone(), vec![("s0".into(), fixtures::fold_map(c))]).unwrap()
    }

    #[test]
    fn image_factorization_by_every_machine() {
        let c = fixtures::point();
        let f = fixtures::epi_fixture(&c);
        let w = fold_family(&c);
        for m in [Machine::Quillen, Machine::GabrielUlmer, Machine::Kelly] {
            let r = iterate(m, &f, &w, DEFAULT_MAX_ITER).unwrap();
            assert_eq!(r.middle.sizes(), vec![1], "{}", m.name());
            assert!(r.rho.is_objectwise_injective());
            assert!(r.certificate.rho_in_right_class);
            assert_eq!(PresheafMap::compose(&r.rho, &r.lambda).unwrap(), f);
        }
        assert_eq!(iterate(Machine::Kelly, &f, &w, 8).unwrap().iterations, 2);
    }

    #[test]
    fn zero_budget_does_not_converge() {
        let c = fixtures::point();
        let f = fixtures::epi_fixture(&c);
        match iterate(Machine::Kelly, &f, &fold_family(&c), 0) {
            Err(Error::NonConvergence { max_iter: 0, last }) => assert_eq!(last.iterations, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plus_needs_identities() {
        let c = fixtures::point();
        let f = fixtures::epi_fixture(&c);
        assert!(matches!(plus_step(&f, &fold_family(&c)), Err(Error::PlusUnitUndefined(_))));
    }

    #[test]
    fn kelly_and_plus_agree_on_sierpinski() {
        let j = fixtures::sier_topology();
        let w = topology_to_family(&j).unwrap();
        let f = PresheafMap::to_terminal(Arc::new(fixtures::sier_presheaf()));
        let cmp = compare(&f, &w).unwrap();
        assert_eq!(cmp.maps.len(), 8);
        assert!(cmp.all_bijective(), "{:?}", cmp.maps.iter().map(|m| (m.name, m.bijective)).collect::<Vec<_>>());
        assert!(cmp.kelly_plus_iso);
        let p = plus_step(&f, &w).unwrap();
        let classic = plus_classic(f.s(), &j).unwrap();
        assert_eq!(p.arrow.s().sizes(), classic.sizes());
        let x = j.base().object_index("X").unwrap();
        assert_eq!(classic.value(x).len(), 2);
    }

    #[test]
    fn comparison_fails_without_identities() {
        let c = fixtures::point();
        let f = fixtures::epi_fixture(&c);
        let cmp = compare(&f, &fold_family(&c)).unwrap();
        assert!(!cmp.all_bijective());
        assert!(!cmp.maps.iter().find(|m| m.name == "gamma").unwrap().bijective);
    }

    #[test]
    fn open_reflection_on_interval() {
        let w = fixtures::open_family();
        let c = w.base().clone();
        let f = Arc::new(
            Presheaf::from_ids(c.clone(), &[("0", vec!["x", "y"]), ("1", vec!["a"])], &[("u", vec![("a", "x")])]).unwrap(),
        );
        let r = reflect(&f, &w, 8).unwrap();
        assert_eq!(r.object.sizes(), vec![2, 2]);
        assert!(r.object.restriction(c.morphism_index("u").unwrap()).iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn localized_homs() {
        let c = fixtures::walking_arrow();
        assert_eq!(localized_hom(&c, &["w"], "a", "b", 8).unwrap().len(), 1);
        assert_eq!(localized_hom(&c, &["w"], "b", "a", 8).unwrap().len(), 1);
        assert_eq!(localized_hom(&c, &[], "b", "a", 8).unwrap().len(), 0);
        assert_eq!(localized_hom(&c, &[], "a", "b", 8).unwrap().len(), 1);
    }

    #[test]
    fn codiagonal_completion_adds_nabla() {
        let c = fixtures::point();
        let n = codiagonal_completion(&fold_family(&c)).unwrap();
        assert_eq!(n.len(), 2);
        assert!(n.indexing().object_index("nabla(s0)").is_ok());
    }

    #[test]
    fn full_family_has_all_squares() {
        let c = fixtures::point();
        let one = Arc::new(Presheaf::terminal(c.clone()));
        let w = MapFamily::full(c.clone(), vec![("s0".into(), fixtures::fold_map(&c)), ("id".into(), PresheafMap::identity(one))]).unwrap();
        let (i, j) = (w.indexing().object_index("s0").unwrap(), w.indexing().object_index("id").unwrap());
        // s0 → s0: any self-map of 2; s0 → id: one; id → s0: a point of 2.
        assert_eq!(w.indexing().hom(i, i).len(), 4);
        assert_eq!(w.indexing().hom(i, j).len(), 1);
        assert_eq!(w.indexing().hom(j, i).len(), 2);
    }
}
