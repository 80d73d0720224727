//! Small named sites, presheaves and families used by tests, benches and the CLI.

use std::sync::Arc;

use crate::fincat::FinCategory;
use crate::finset::FinSet;
use crate::modulators::{modulator_envelope, GeneratorSet, Topology};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::soa::MapFamily;

/// 𝟙, with object `*`.
pub fn point() -> Arc<FinCategory> {
    Arc::new(FinCategory::terminal())
}

/// `0 → 1`, morphism `u`.
pub fn interval() -> Arc<FinCategory> {
    Arc::new(FinCategory::poset(&["0", "1"], &[("u", "0", "1")]).expect("interval"))
}

/// `0 → 1 → 2`.
pub fn chain3() -> Arc<FinCategory> {
    Arc::new(
        FinCategory::poset(&["0", "1", "2"], &[("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")]).expect("chain"),
    )
}

/// `a → b`, morphism `w`.
pub fn walking_arrow() -> Arc<FinCategory> {
    Arc::new(FinCategory::poset(&["a", "b"], &[("w", "a", "b")]).expect("walking arrow"))
}

/// The poset `P → U → X`, `P → V → X`.
pub fn sier_site() -> Arc<FinCategory> {
    Arc::new(
        FinCategory::poset(
            &["P", "U", "V", "X"],
            &[("pu", "P", "U"), ("pv", "P", "V"), ("p", "P", "X"), ("u", "U", "X"), ("v", "V", "X")],
        )
        .expect("sierpinski site"),
    )
}

/// On `X` the sieve generated by `u, v` and the maximal sieve; maximal sieves elsewhere.
pub fn sier_topology() -> Topology {
    Topology::from_generators(sier_site(), &[("X", vec![vec!["u", "v"], vec!["id_X"]])]).expect("topology")
}

/// `F(X) = 1`, `F(U) = 2`, `F(V) = 1`, `F(P) = 1`: two sections over `U` that no section over
/// `X` separates, so `F` is not a sheaf.
pub fn sier_presheaf() -> Presheaf {
    Presheaf::from_ids(
        sier_site(),
        &[("X", vec!["x"]), ("U", vec!["u0", "u1"]), ("V", vec!["v0"]), ("P", vec!["p0"])],
        &[
            ("u", vec![("x", "u0")]),
            ("v", vec![("x", "v0")]),
            ("p", vec![("x", "p0")]),
            ("pu", vec![("u0", "p0"), ("u1", "p0")]),
            ("pv", vec![("v0", "p0")]),
        ],
    )
    .expect("fixture presheaf")
}

/// `f: {a,b} → {1,2,3}` with `f(a) = f(b) = 1`, over 𝟙.
pub fn epi_fixture(c: &Arc<FinCategory>) -> PresheafMap {
    set_map(c, &["a", "b"], &["1", "2", "3"], &[("a", "1"), ("b", "1")])
}

/// The fold map `2 → 1` over 𝟙.
pub fn fold_map(c: &Arc<FinCategory>) -> PresheafMap {
    set_map(c, &["0", "1"], &["*"], &[("0", "*"), ("1", "*")])
}

/// A map of constant presheaves over 𝟙.
pub fn set_map(c: &Arc<FinCategory>, a: &[&str], b: &[&str], pairs: &[(&str, &str)]) -> PresheafMap {
    let s = Arc::new(Presheaf::constant(c.clone(), FinSet::new(a.iter().copied()).expect("ids")));
    let t = Arc::new(Presheaf::constant(c.clone(), FinSet::new(b.iter().copied()).expect("ids")));
    PresheafMap::from_ids(s, t, &[("*", pairs.to_vec())]).expect("set map")
}

/// The subterminal `U` on the interval: empty at `1`, a point at `0`.
pub fn int_subterminal() -> Arc<Presheaf> {
    let c = interval();
    Arc::new(Presheaf::from_ids(c, &[("0", vec!["*"]), ("1", vec![])], &[("u", vec![])]).expect("subterminal"))
}

/// `{U → 1}` as given, without base changes.
pub fn raw_open_family() -> MapFamily {
    let u = int_subterminal();
    MapFamily::discrete(u.base().clone(), vec![("U".into(), PresheafMap::to_terminal(u))]).expect("family")
}

/// The modulator envelope of `{U → 1}`.
pub fn open_family() -> MapFamily {
    let raw = raw_open_family();
    modulator_envelope(&raw, &GeneratorSet::all(raw.base())).expect("envelope")
}

/// The modulator envelope of `{∅ → U}`.
pub fn closed_family() -> MapFamily {
    let u = int_subterminal();
    let raw = MapFamily::discrete(u.base().clone(), vec![("U".into(), PresheafMap::from_initial(u.clone()))])
        .expect("family");
    modulator_envelope(&raw, &GeneratorSet::all(raw.base())).expect("envelope")
}
