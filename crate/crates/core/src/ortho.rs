//! Lifting problems, diagonal fillers and the relations ⋔ and ⊥.
//!
//! The fast path reads orthogonality off the pullback-hom; the `*_oracle` functions
//! enumerate fillers square by square and serve as ground truth.

use std::sync::Arc;

use crate::arrowcalc::{self, fibers, ArrowObject};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::presheaf::{self, Components, NatConstraints, Presheaf, PresheafMap, Square};
use crate::soa::MapFamily;

/// A commutative square `w → f` asking for a diagonal `t w → s f`.
pub type LiftingProblem = Square;

#[derive(Clone, Debug)]
pub struct FillerSet {
    pub problem: LiftingProblem,
    pub fillers: Vec<Components>,
}

impl FillerSet {
    pub fn len(&self) -> usize {
        self.fillers.len()
    }
    pub fn is_empty(&self) -> bool {
        self.fillers.is_empty()
    }
    pub fn set(&self) -> FinSet {
        FinSet::new(presheaf::numbered_ids(self.fillers.len())).expect("distinct ids")
    }
    pub fn map(&self, i: usize) -> PresheafMap {
        PresheafMap::new_unchecked(self.problem.w.t().clone(), self.problem.f.s().clone(), self.fillers[i].clone())
    }
}

/// All diagonal fillers `h` with `h∘w = top` and `f∘h = bottom`.
pub fn fillers(p: &LiftingProblem) -> Result<FillerSet> {
    let (w, f) = (&p.w, &p.f);
    let fib = fibers(f);
    let mut candidates = Vec::with_capacity(w.base().num_objects());
    for x in 0..w.base().num_objects() {
        let mut forced: Vec<Option<usize>> = vec![None; w.t().value(x).len()];
        let mut clash = vec![false; forced.len()];
        for (e, &y) in w.component(x).iter().enumerate() {
            let z = p.top.apply(x, e);
            match forced[y] {
                Some(z0) if z0 != z => clash[y] = true,
                _ => forced[y] = Some(z),
            }
        }
        let cands: Vec<Vec<usize>> = (0..forced.len())
            .map(|y| {
                let over = &fib[x][p.bottom.apply(x, y)];
                match (clash[y], forced[y]) {
                    (true, _) => Vec::new(),
                    (false, Some(z)) => over.iter().copied().filter(|&c| c == z).collect(),
                    (false, None) => over.clone(),
                }
            })
            .collect();
        candidates.push(cands);
    }
    let cons = NatConstraints { candidates: Some(candidates), injective: false };
    let fillers = presheaf::collect_nat(w.t(), f.s(), &cons)?;
    Ok(FillerSet { problem: p.clone(), fillers })
}

/// `w ⋔ f`: the pullback-hom is surjective.
pub fn is_weak_orthogonal(w: &ArrowObject, f: &ArrowObject) -> Result<bool> {
    Ok(arrowcalc::pullback_hom(w, f)?.is_surjective())
}

/// `w ⊥ f`: the pullback-hom is bijective.
pub fn is_orthogonal(w: &ArrowObject, f: &ArrowObject) -> Result<bool> {
    Ok(arrowcalc::pullback_hom(w, f)?.is_bijective())
}

fn filler_counts(w: &ArrowObject, f: &ArrowObject) -> Result<Vec<usize>> {
    let sq = arrowcalc::squares(w, f)?;
    (0..sq.len()).map(|i| Ok(fillers(&sq.square(i))?.len())).collect()
}

/// Every square has at least one filler.
pub fn is_weak_orthogonal_oracle(w: &ArrowObject, f: &ArrowObject) -> Result<bool> {
    Ok(filler_counts(w, f)?.iter().all(|&n| n >= 1))
}

/// Every square has exactly one filler.
pub fn is_orthogonal_oracle(w: &ArrowObject, f: &ArrowObject) -> Result<bool> {
    Ok(filler_counts(w, f)?.iter().all(|&n| n == 1))
}

/// Which relation a membership test uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// ⋔
    Weak,
    /// ⊥
    Unique,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `(name of w, verdict)` for every member of the family.
    pub per_arrow: Vec<(String, bool)>,
    pub member: bool,
}

pub fn right_class_membership(f: &ArrowObject, w: &MapFamily) -> Result<Membership> {
    membership(f, w, Relation::Unique, false)
}

/// Membership of `f` in `W^⋔` or `W^⊥`, optionally through the filler oracle.
pub fn membership(f: &ArrowObject, w: &MapFamily, rel: Relation, oracle: bool) -> Result<Membership> {
    if w.base() != f.base() {
        return Err(Error::BaseMismatch);
    }
    let mut per_arrow = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let a = w.arrow(i);
        let ok = match (rel, oracle) {
            (Relation::Weak, false) => is_weak_orthogonal(a, f)?,
            (Relation::Unique, false) => is_orthogonal(a, f)?,
            (Relation::Weak, true) => is_weak_orthogonal_oracle(a, f)?,
            (Relation::Unique, true) => is_orthogonal_oracle(a, f)?,
        };
        per_arrow.push((w.name(i).to_string(), ok));
    }
    let member = per_arrow.iter().all(|p| p.1);
    Ok(Membership { per_arrow, member })
}

/// `X → 1` lies in `W^⊥`.
pub fn is_local(x: &Arc<Presheaf>, w: &MapFamily) -> Result<bool> {
    Ok(right_class_membership(&PresheafMap::to_terminal(x.clone()), w)?.member)
}
