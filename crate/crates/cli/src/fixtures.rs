//! Ready-made bundles for the built-in sites.

use std::collections::BTreeMap;

use soa_topos::fixtures as fx;
use soa_topos::presheaf::{Presheaf, PresheafMap};

use crate::doc::{add_family, components_doc, presheaf_doc, Bundle, FamilyDoc, Indexing, MapDoc};

pub const NAMES: &[&str] = &["sier", "epi", "interval", "walking-arrow", "chain3"];

fn add_map(b: &mut Bundle, name: &str, src: &str, tgt: &str, f: &PresheafMap) {
    b.presheaves.insert(src.into(), presheaf_doc(f.s()));
    b.presheaves.insert(tgt.into(), presheaf_doc(f.t()));
    b.maps.insert(name.into(), MapDoc { src: src.into(), tgt: tgt.into(), components: components_doc(f) });
}

pub fn bundle(name: &str) -> Option<Bundle> {
    let b = match name {
        // The sierpinski site with its topology and a presheaf that is not a sheaf.
        "sier" => {
            let j = fx::sier_topology();
            let mut b = Bundle::new(j.base());
            b.presheaves.insert("F".into(), presheaf_doc(&fx::sier_presheaf()));
            b.presheaves.insert("1".into(), presheaf_doc(&Presheaf::terminal(j.base().clone())));
            let t = BTreeMap::from([("X".to_string(), vec![vec!["u".to_string(), "v".to_string()], vec!["id_X".to_string()]])]);
            b.topology = Some(t);
            b
        }
        // `{a,b} → {1,2,3}` and the fold map `2 → 1` over the point.
        "epi" => {
            let c = fx::point();
            let mut b = Bundle::new(&c);
            add_map(&mut b, "f", "A", "B", &fx::epi_fixture(&c));
            add_map(&mut b, "fold", "2", "1", &fx::fold_map(&c));
            b.families.insert("W".into(), FamilyDoc { members: vec!["fold".into()], indexing: Some(Indexing::Discrete) });
            b
        }
        // The subterminal `U` on `0 → 1`: the raw family `{U → 1}` and its envelope.
        "interval" => {
            let c = fx::interval();
            let mut b = Bundle::new(&c);
            let raw = fx::raw_open_family();
            add_map(&mut b, "U", "U.s", "U.t", raw.arrow(0));
            b.families.insert("raw".into(), FamilyDoc { members: vec!["U".into()], indexing: Some(Indexing::Discrete) });
            let mut env = Bundle::new(&c);
            add_family(&mut env, "open", &fx::open_family(), Indexing::Full);
            b.presheaves.extend(env.presheaves);
            b.maps.extend(env.maps);
            b.families.extend(env.families);
            b
        }
        "walking-arrow" => Bundle::new(&fx::walking_arrow()),
        "chain3" => Bundle::new(&fx::chain3()),
        _ => return None,
    };
    Some(b)
}
