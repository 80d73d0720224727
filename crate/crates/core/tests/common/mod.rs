//! Seeded generators and exhaustive enumerators of small presheaves on poset sites.

#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soa_topos::fincat::FinCategory;
use soa_topos::finset::FinSet;
use soa_topos::presheaf::{nat_hom, Presheaf, PresheafMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Objects ordered so that every proper morphism into `x` comes from an earlier object.
fn bottom_up(c: &FinCategory) -> Vec<usize> {
    let mut objs: Vec<usize> = (0..c.num_objects()).collect();
    objs.sort_by_key(|&x| (c.incoming(x).len(), x));
    objs
}

/// Restriction tuples an element of `F(x)` may have, given the values built so far:
/// one element of `F(y)` per proper `u: y → x`, compatible along composites.
fn compatible_tuples(c: &FinCategory, x: usize, restr: &[Vec<usize>], sizes: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let into: Vec<usize> = c.incoming(x).iter().copied().filter(|&u| !c.is_identity(u)).collect();
    let mut out = vec![Vec::new()];
    for &u in &into {
        let mut next = Vec::new();
        for t in &out {
            for e in 0..sizes[c.src(u)] {
                let mut t2: Vec<(usize, usize)> = t.clone();
                t2.push((u, e));
                next.push(t2);
            }
        }
        out = next;
    }
    out.retain(|t| {
        let at = |m: usize| t.iter().find(|p| p.0 == m).map(|p| p.1);
        t.iter().all(|&(u, e)| {
            let y = c.src(u);
            c.incoming(y).iter().filter(|&&v| !c.is_identity(v)).all(|&v| at(c.compose(u, v)) == Some(restr[v][e]))
        })
    });
    out
}

fn build(c: &Arc<FinCategory>, sizes: &[usize], restr: Vec<Vec<usize>>) -> Presheaf {
    let values = sizes.iter().map(|&n| FinSet::range(n)).collect();
    let mut restr = restr;
    for x in 0..c.num_objects() {
        restr[c.identity(x)] = (0..sizes[x]).collect();
    }
    Presheaf::new(c.clone(), values, restr).expect("generated presheaf")
}

/// A random presheaf on a poset site with every value of size at most `max`.
pub fn random_presheaf(rng: &mut impl Rng, c: &Arc<FinCategory>, max: usize) -> Presheaf {
    let mut sizes = vec![0; c.num_objects()];
    let mut restr: Vec<Vec<usize>> = vec![Vec::new(); c.num_morphisms()];
    for x in bottom_up(c) {
        let tuples = compatible_tuples(c, x, &restr, &sizes);
        let n = if tuples.is_empty() { 0 } else { rng.gen_range(0..=max) };
        for _ in 0..n {
            let t = tuples.choose(rng).expect("nonempty");
            for &(u, e) in t {
                restr[u].push(e);
            }
        }
        sizes[x] = n;
    }
    build(c, &sizes, restr)
}

/// A random natural transformation between random presheaves.
pub fn random_map(rng: &mut impl Rng, c: &Arc<FinCategory>, max: usize) -> PresheafMap {
    loop {
        let a = Arc::new(random_presheaf(rng, c, max));
        let b = Arc::new(random_presheaf(rng, c, max));
        let hom = nat_hom(&a, &b).expect("hom");
        if !hom.is_empty() {
            let i = rng.gen_range(0..hom.len());
            return hom.map(i);
        }
    }
}

/// Every presheaf of total size at most `max_total`, one per isomorphism class on `𝟙`
/// and on `0 → 1` (restrictions `F(1) → F(0)` non-decreasing).
pub fn canonical_presheaves(c: &Arc<FinCategory>, max_total: usize) -> Vec<Arc<Presheaf>> {
    let mut out = Vec::new();
    match c.num_objects() {
        1 => {
            for n in 0..=max_total {
                out.push(Arc::new(build(c, &[n], vec![Vec::new(); c.num_morphisms()])));
            }
        }
        2 => {
            let (o0, o1) = (c.object_index("0").unwrap(), c.object_index("1").unwrap());
            let u = c.morphism_index("u").unwrap();
            for n0 in 0..=max_total {
                for n1 in 0..=(max_total - n0) {
                    for r in monotone(n1, n0) {
                        let mut sizes = vec![0; 2];
                        sizes[o0] = n0;
                        sizes[o1] = n1;
                        let mut restr = vec![Vec::new(); c.num_morphisms()];
                        restr[u] = r;
                        out.push(Arc::new(build(c, &sizes, restr)));
                    }
                }
            }
        }
        _ => panic!("canonical enumeration covers the point and the interval only"),
    }
    out
}

/// Non-decreasing maps `[n] → [m]`.
fn monotone(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn go(n: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..m {
            cur.push(v);
            go(n, m, v, cur, out);
            cur.pop();
        }
    }
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Every arrow between canonical presheaves with total size at most `max_total`.
pub fn canonical_arrows(c: &Arc<FinCategory>, max_total: usize) -> Vec<(usize, PresheafMap)> {
    let objs = canonical_presheaves(c, max_total);
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            let total = a.total_size() + b.total_size();
            if total > max_total {
                continue;
            }
            let hom = nat_hom(a, b).expect("hom");
            for i in 0..hom.len() {
                out.push((total, hom.map(i)));
            }
        }
    }
    out
}

/// Every presheaf on a poset site with values of size at most `max`, up to relabeling
/// each value (elements are added in non-decreasing order of their restriction tuple).
pub fn sorted_presheaves(c: &Arc<FinCategory>, max: usize) -> Vec<Arc<Presheaf>> {
    let order = bottom_up(c);
    let mut out = Vec::new();
    fn go(
        c: &Arc<FinCategory>,
        order: &[usize],
        pos: usize,
        max: usize,
        sizes: &mut Vec<usize>,
        restr: &mut Vec<Vec<usize>>,
        out: &mut Vec<Arc<Presheaf>>,
    ) {
        if pos == order.len() {
            out.push(Arc::new(build(c, sizes, restr.clone())));
            return;
        }
        let x = order[pos];
        let tuples = compatible_tuples(c, x, restr, sizes);
        for choice in multisets(tuples.len(), max) {
            let mark: Vec<usize> = restr.iter().map(Vec::len).collect();
            for &t in &choice {
                for &(u, e) in &tuples[t] {
                    restr[u].push(e);
                }
            }
            sizes[x] = choice.len();
            go(c, order, pos + 1, max, sizes, restr, out);
            sizes[x] = 0;
            for (r, m) in restr.iter_mut().zip(mark) {
                r.truncate(m);
            }
        }
    }
    let mut sizes = vec![0; c.num_objects()];
    let mut restr = vec![Vec::new(); c.num_morphisms()];
    go(c, &order, 0, max, &mut sizes, &mut restr, &mut out);
    out
}

/// Non-decreasing sequences of length at most `max` over `0..n`.
fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max {
        if n > 0 {
            out.extend(monotone(len, n));
        }
    }
    out
}
