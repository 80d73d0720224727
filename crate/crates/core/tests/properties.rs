//! Property tests over seeded random fixtures.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use soa_topos::arrowcalc::{codiagonal, diagonal, is_iso_whitehead, pullback_hom, tensor};
use soa_topos::fincat::{comma, has_cone_over_every_finite_diagram, CategoryData, FinCategory, Functor};
use soa_topos::finset::{self, coend, CoendData, FinSet, SetDiagram, SetMap};
use soa_topos::fixtures;
use soa_topos::modulators::{
    diagonal_completion, modulator_envelope, mono_saturate, topology_to_family, GeneratorSet, Topology,
};
use soa_topos::ortho;
use soa_topos::presheaf::{exponential, join, nat_hom, product, yoneda_at, Presheaf, PresheafMap};
use soa_topos::soa::{iterate, reflect, Machine, MapFamily, DEFAULT_MAX_ITER};
use soa_topos::verify::{
    check_lex_step, check_modality, default_probes, find_arrow_iso, find_factorization_iso, find_iso,
    representable_cospans, sheafify, Route,
};

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

fn sites() -> Vec<Arc<FinCategory>> {
    vec![fixtures::point(), fixtures::interval(), fixtures::walking_arrow(), fixtures::chain3(), fixtures::sier_site()]
}

fn site(rng: &mut ChaCha8Rng) -> Arc<FinCategory> {
    let s = sites();
    s[rng.gen_range(0..s.len())].clone()
}

/// A random poset on up to six objects, relations transitively closed.
fn random_poset(rng: &mut ChaCha8Rng) -> (Arc<FinCategory>, Vec<Vec<bool>>) {
    let n = rng.gen_range(1..=6);
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(0.35);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let rel: Vec<(String, String, String)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j)))
        .filter(|&(i, j)| le[i][j])
        .map(|(i, j)| (format!("r{i}_{j}"), names[i].clone(), names[j].clone()))
        .collect();
    let objs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rels: Vec<(&str, &str, &str)> = rel.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    (Arc::new(FinCategory::poset(&objs, &rels).unwrap()), le)
}

fn set_arrow(rng: &mut ChaCha8Rng, max: usize) -> SetMap {
    let a = rng.gen_range(0..=max);
    let b = if a > 0 { rng.gen_range(1..=max) } else { rng.gen_range(0..=max) };
    SetMap::new(FinSet::range(a), FinSet::range(b), (0..a).map(|_| rng.gen_range(0..b)).collect()).unwrap()
}

type Twisted = (Arc<FinCategory>, Vec<(usize, usize, usize, usize)>, Vec<String>);

/// Twisted-arrow category, opposite orientation: an arrow `g → f` for every `(p, q)` with
/// `g = q ∘ f ∘ p`.
fn twisted_op(c: &FinCategory) -> Twisted {
    let name = |m: usize| c.morphism(m).id.clone();
    let mut morphisms = Vec::new();
    let mut info = Vec::new();
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            for &p in c.hom(c.src(g), c.src(f)) {
                for &q in c.hom(c.tgt(f), c.tgt(g)) {
                    if c.compose(q, c.compose(f, p)) == g {
                        morphisms.push((format!("{}|{}|{}|{}", name(g), name(p), name(q), name(f)), name(g), name(f)));
                        info.push((g, f, p, q));
                    }
                }
            }
        }
    }
    let find = |g: usize, f: usize, p: usize, q: usize| {
        info.iter().position(|&t| t == (g, f, p, q)).expect("twisted morphism")
    };
    let mut compose = Vec::new();
    for (k1, &(g, f, p1, q1)) in info.iter().enumerate() {
        for (k2, &(f2, e, p2, q2)) in info.iter().enumerate() {
            if f2 == f {
                let k = find(g, e, c.compose(p2, p1), c.compose(q1, q2));
                compose.push((morphisms[k2].0.clone(), morphisms[k1].0.clone(), morphisms[k].0.clone()));
            }
        }
    }
    let identity = (0..c.num_morphisms())
        .map(|f| (name(f), morphisms[find(f, f, c.identity(c.src(f)), c.identity(c.tgt(f)))].0.clone()))
        .collect();
    let names = morphisms.iter().map(|m| m.0.clone()).collect();
    let data = CategoryData { objects: (0..c.num_morphisms()).map(name).collect(), morphisms, identity, compose };
    (Arc::new(soa_topos::fincat::check_category(&data).unwrap()), info, names)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn random_posets_validate_and_cofilteredness_matches_lower_bounds(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (c, le) = random_poset(&mut rng);
        prop_assert!(c.validate().is_ok());
        let n = le.len();
        let oracle = (0u32..(1 << n)).all(|mask| (0..n).any(|l| (0..n).all(|i| mask >> i & 1 == 0 || le[l][i])));
        prop_assert_eq!(has_cone_over_every_finite_diagram(&c), oracle);
    }

    #[test]
    fn comma_sizes(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let x = rng.gen_range(0..c.num_objects());
        let id = Functor::identity(c.clone());
        let point = Arc::new(FinCategory::terminal());
        let k = Functor::constant(point, c.clone(), x);
        let slice = comma(&id, &k).unwrap();
        prop_assert_eq!(slice.category.num_objects(), c.incoming(x).len());
        let both = comma(&id, &id).unwrap();
        prop_assert_eq!(both.category.num_objects(), c.num_morphisms());
        prop_assert!(slice.category.validate().is_ok());
    }

    #[test]
    fn coend_matches_twisted_arrow_colimit(seed in any::<u64>()) {
        // S(a, b) = F(a) × Hom(x, b); by co-Yoneda its coend is F(x).
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let f = common::random_presheaf(&mut rng, &c, 3);
        let x = rng.gen_range(0..c.num_objects());
        let s_set = |a: usize, b: usize| -> (FinSet, Vec<(usize, usize)>) {
            let pairs: Vec<(usize, usize)> =
                (0..f.value(a).len()).flat_map(|e| c.hom(x, b).iter().map(move |&h| (e, h))).collect();
            (FinSet::new(pairs.iter().map(|(e, h)| format!("{e}|{h}"))).unwrap(), pairs)
        };
        let pos = |a: usize, b: usize, e: usize, h: usize| s_set(a, b).1.iter().position(|&p| p == (e, h)).unwrap();
        let diagonal = (0..c.num_objects()).map(|w| s_set(w, w).0).collect();
        let twisted = c.morphisms().iter().enumerate().map(|(u, m)| {
            let (set, pairs) = s_set(m.tgt, m.src);
            let left = pairs.iter().map(|&(e, h)| pos(m.src, m.src, f.restrict(u, e), h)).collect();
            let right = pairs.iter().map(|&(e, h)| pos(m.tgt, m.tgt, e, c.compose(u, h))).collect();
            (set, left, right)
        }).collect();
        let co = coend(&CoendData { cat: c.clone(), diagonal, twisted }).unwrap();
        prop_assert_eq!(co.apex.len(), f.value(x).len());

        let (tw, info, names) = twisted_op(&c);
        let sets = (0..tw.num_objects()).map(|o| {
            let m = c.morphism_index(tw.object(o)).unwrap();
            s_set(c.tgt(m), c.src(m)).0
        }).collect();
        let maps = tw.morphisms().iter().map(|tm| {
            let (g, fm, p, q) = info[names.iter().position(|n| *n == tm.id).unwrap()];
            s_set(c.tgt(g), c.src(g)).1.iter()
                .map(|&(e, h)| pos(c.tgt(fm), c.src(fm), f.restrict(q, e), c.compose(p, h)))
                .collect()
        }).collect();
        let col = finset::colimit(&SetDiagram::new(tw, sets, maps).unwrap()).unwrap();
        prop_assert_eq!(col.apex.len(), co.apex.len());
    }

    #[test]
    fn yoneda_lemma(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let f = Arc::new(common::random_presheaf(&mut rng, &c, 3));
        for x in 0..c.num_objects() {
            let y = Arc::new(yoneda_at(&c, x));
            prop_assert_eq!(nat_hom(&y, &f).unwrap().len(), f.value(x).len());
        }
    }

    #[test]
    fn exponential_adjunction(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = if rng.gen_bool(0.5) { fixtures::interval() } else { fixtures::point() };
        let e = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let g = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let f = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let eg = product(&e, &g).unwrap();
        let fg = Arc::new(exponential(&f, &g).unwrap());
        prop_assert_eq!(nat_hom(&eg.apex, &f).unwrap().len(), nat_hom(&e, &fg).unwrap().len());
    }

    #[test]
    fn join_with_a_subterminal_is_idempotent(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let u = Arc::new(common::random_presheaf(&mut rng, &c, 1));
        let f = Arc::new(common::random_presheaf(&mut rng, &c, 3));
        let once = Arc::new(join(&u, &f).unwrap());
        let twice = Arc::new(join(&u, &once).unwrap());
        prop_assert!(find_iso(&once, &twice).unwrap().is_some());
    }

    #[test]
    fn tensor_pullback_hom_adjunction(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = if rng.gen_bool(0.5) { fixtures::interval() } else { fixtures::point() };
        let u = set_arrow(&mut rng, 2);
        let w = common::random_map(&mut rng, &c, 2);
        let f = common::random_map(&mut rng, &c, 2);
        let left = pullback_hom(&tensor(&u, &w).unwrap(), &f).unwrap();
        let p = pullback_hom(&w, &f).unwrap().set_arrow();
        // Set-level ⟨⟨u, p⟩⟩: Hom(B, L) → Hom(A, L) ×_{Hom(A, S)} Hom(B, S).
        let (a, b) = (u.src.len(), u.tgt.len());
        let (l, s) = (p.src.len(), p.tgt.len());
        let mut sq = 0usize;
        let mut image = std::collections::HashSet::new();
        let tuples = |n: usize, k: usize| -> Vec<Vec<usize>> {
            let mut out = vec![Vec::new()];
            for _ in 0..n {
                out = out.into_iter().flat_map(|t| (0..k).map(move |v| { let mut t = t.clone(); t.push(v); t })).collect();
            }
            out
        };
        for alpha in tuples(a, l) {
            for beta in tuples(b, s) {
                if (0..a).all(|i| p.assignment[alpha[i]] == beta[u.assignment[i]]) {
                    sq += 1;
                }
            }
        }
        for h in tuples(b, l) {
            let alpha: Vec<usize> = (0..a).map(|i| h[u.assignment[i]]).collect();
            let beta: Vec<usize> = (0..b).map(|j| p.assignment[h[j]]).collect();
            image.insert((alpha, beta));
        }
        prop_assert_eq!(left.lifts.len(), tuples(b, l).len());
        prop_assert_eq!(left.squares.len(), sq);
        prop_assert_eq!(left.is_surjective(), image.len() == sq);
        prop_assert_eq!(ortho::is_orthogonal(&tensor(&u, &w).unwrap(), &f).unwrap(), image.len() == sq && tuples(b, l).len() == sq);
    }

    #[test]
    fn isomorphisms_are_absorbing(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let f = common::random_map(&mut rng, &c, 2);
        let x = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let iso = PresheafMap::identity(x);
        prop_assert!(pullback_hom(&iso, &f).unwrap().is_bijective());
        prop_assert!(pullback_hom(&f, &iso).unwrap().is_bijective());
        let u = set_arrow(&mut rng, 2);
        prop_assert!(tensor(&u, &iso).unwrap().is_objectwise_bijective());
    }

    #[test]
    fn whitehead_matches_bijectivity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let f = common::random_map(&mut rng, &c, 3);
        prop_assert_eq!(is_iso_whitehead(&f).unwrap(), f.is_objectwise_bijective());
    }

    #[test]
    fn diagonal_of_pullback_hom_is_pullback_hom_of_codiagonal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = if rng.gen_bool(0.5) { fixtures::interval() } else { fixtures::point() };
        let g = common::random_map(&mut rng, &c, 2);
        let f = common::random_map(&mut rng, &c, 2);
        let p = pullback_hom(&g, &f).unwrap();
        let q = pullback_hom(&codiagonal(&g, 1).unwrap(), &f).unwrap();
        let fibre_pairs: usize = {
            let mut count = vec![0usize; p.squares.len()];
            for &k in &p.map { count[k] += 1; }
            count.iter().map(|n| n * n).sum()
        };
        prop_assert_eq!(q.lifts.len(), p.lifts.len());
        prop_assert_eq!(q.squares.len(), fibre_pairs);
        prop_assert_eq!(q.is_surjective(), p.map.len() == { let mut s = p.map.clone(); s.sort(); s.dedup(); s.len() });
    }

    #[test]
    fn orthogonal_iff_weak_against_w_and_codiagonal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = if rng.gen_bool(0.5) { fixtures::interval() } else { fixtures::point() };
        let w = common::random_map(&mut rng, &c, 2);
        let f = common::random_map(&mut rng, &c, 3);
        let nabla = codiagonal(&w, 1).unwrap();
        prop_assert_eq!(
            ortho::is_orthogonal(&w, &f).unwrap(),
            ortho::is_weak_orthogonal(&w, &f).unwrap() && ortho::is_weak_orthogonal(&nabla, &f).unwrap()
        );
        prop_assert_eq!(ortho::is_orthogonal(&w, &f).unwrap(), ortho::is_orthogonal_oracle(&w, &f).unwrap());
    }

    #[test]
    fn factorizations_are_sound_and_unique(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (w, c) = if rng.gen_bool(0.5) {
            (fixtures::open_family(), fixtures::interval())
        } else {
            (topology_to_family(&fixtures::sier_topology()).unwrap(), fixtures::sier_site())
        };
        let f = common::random_map(&mut rng, &c, 2);
        let k = iterate(Machine::Kelly, &f, &w, DEFAULT_MAX_ITER).unwrap();
        prop_assert_eq!(PresheafMap::compose(&k.rho, &k.lambda).unwrap(), f.clone());
        prop_assert!(ortho::membership(&k.rho, &w, ortho::Relation::Unique, true).unwrap().member);
        let p = iterate(Machine::Plus, &f, &w, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(find_factorization_iso(&k, &p).unwrap().is_some());
    }

    #[test]
    fn envelope_is_idempotent(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = fixtures::interval();
        let gens = GeneratorSet::all(&c);
        let a = common::random_map(&mut rng, &c, 2);
        let raw = MapFamily::discrete(c.clone(), vec![("a".into(), a)]).unwrap();
        let once = modulator_envelope(&raw, &gens).unwrap();
        let twice = modulator_envelope(&once, &gens).unwrap();
        prop_assert_eq!(once.len(), twice.len());
        for i in 0..once.len() {
            prop_assert!((0..twice.len()).any(|j| find_arrow_iso(once.arrow(i), twice.arrow(j)).unwrap().is_some()));
        }
        prop_assert!(soa_topos::modulators::check_modulator(&once, &gens, false).unwrap().passed);
    }

    #[test]
    fn diagonal_completion_twice_adds_only_isos(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = site(&mut rng);
        let a = common::random_map(&mut rng, &c, 2);
        let once = diagonal_completion(&MapFamily::discrete(c.clone(), vec![("a".into(), a)]).unwrap()).unwrap();
        let twice = diagonal_completion(&once).unwrap();
        for j in 0..twice.len() {
            let known = (0..once.len()).any(|i| find_arrow_iso(once.arrow(i), twice.arrow(j)).unwrap().is_some());
            prop_assert!(known || twice.arrow(j).is_objectwise_bijective());
        }
        prop_assert!(diagonal(&diagonal(twice.arrow(0), 1).unwrap(), 1).unwrap().is_objectwise_bijective());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn lex_implies_modality(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let j = fixtures::sier_topology();
        let w = topology_to_family(&j).unwrap();
        let gens = GeneratorSet::all(j.base());
        prop_assert!(check_lex_step(&w, &representable_cospans(j.base())).unwrap().passed());
        let f = common::random_map(&mut rng, j.base(), 2);
        let probes = default_probes(&f, &gens);
        prop_assert!(check_modality(&w, &f, &probes, Route::Factorization(Machine::Kelly)).unwrap().passed());
    }

    #[test]
    fn sheafification_ignores_mono_saturation(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let j = fixtures::sier_topology();
        let c = j.base().clone();
        let gens = GeneratorSet::all(&c);
        let sat = mono_saturate(&topology_to_family(&j).unwrap(), &gens, DEFAULT_MAX_ITER).unwrap();
        let f = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let a = sheafify(&f, &j).unwrap();
        let b = reflect(&f, &sat, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(find_iso(&a.sheaf, &b.object).unwrap().is_some());
    }

    #[test]
    fn locality_for_the_lex_localization(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = fixtures::interval();
        let gens = GeneratorSet::all(&c);
        let a = common::random_map(&mut rng, &c, 2);
        let w = soa_topos::modulators::delta_envelope(&MapFamily::discrete(c.clone(), vec![("a".into(), a)]).unwrap(), &gens).unwrap();
        let x = Arc::new(common::random_presheaf(&mut rng, &c, 2));
        let by_reflection = reflect(&x, &w, DEFAULT_MAX_ITER).unwrap().unit.is_objectwise_bijective();
        prop_assert_eq!(by_reflection, ortho::is_local(&x, &w).unwrap());
    }

    #[test]
    fn grothendieck_families_are_lex_modulators(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        // Topologies on the sierpinski site generated by a random choice of covers at X.
        let c = fixtures::sier_site();
        let options: [&[&str]; 4] = [&["u", "v"], &["u"], &["v"], &["p"]];
        let mut covers = vec![vec!["id_X"]];
        for o in options {
            if rng.gen_bool(0.5) {
                covers.push(o.to_vec());
            }
        }
        let j = Topology::from_generators(c.clone(), &[("X", covers)]).unwrap();
        if soa_topos::modulators::check_topology(&j).unwrap().passed {
            let w = topology_to_family(&j).unwrap();
            let gens = GeneratorSet::all(&c);
            prop_assert!(soa_topos::modulators::check_lex_modulator(&w, &gens, false).unwrap().passed);
        }
    }
}

#[test]
fn yoneda_values_are_exact_on_every_site() {
    for c in sites() {
        for x in 0..c.num_objects() {
            let y: Presheaf = yoneda_at(&c, x);
            for z in 0..c.num_objects() {
                assert_eq!(y.value(z).len(), c.hom(z, x).len());
            }
        }
    }
}
