//! JSON document schema and conversion to and from core values.
//!
//! A bundle carries one category plus named presheaves, maps, families and an optional
//! topology. Maps name their source and target presheaves; families name their member maps;
//! topologies list generating sieves per object as lists of morphism ids. Restrictions along
//! identities may be omitted. Keyed collections are `BTreeMap`s so output order is stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use soa_topos::fincat::{check_category, CategoryData, FinCategory};
use soa_topos::presheaf::{Presheaf, PresheafMap};
use soa_topos::soa::MapFamily;
use soa_topos::Topology;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeDoc {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// Objects, morphisms, identities and the full composition table (identities included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identity: BTreeMap<String, String>,
    pub compose: Vec<ComposeDoc>,
}

/// `element ↦ element`, per object or morphism id.
pub type Assignment = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub values: BTreeMap<String, Vec<String>>,
    /// Along `m: a → b`, a map `F(b) → F(a)`.
    #[serde(default)]
    pub restrictions: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub src: String,
    pub tgt: String,
    pub components: Assignment,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    /// Only identity squares between members.
    #[default]
    Discrete,
    /// Every commutative square between members.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indexing: Option<Indexing>,
}

/// Generating sieves per object, each a list of morphism ids into that object.
pub type TopologyDoc = BTreeMap<String, Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub category: CategoryDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, FamilyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyDoc>,
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Bundle, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))
    }

    pub fn new(c: &FinCategory) -> Bundle {
        Bundle {
            category: category_doc(c),
            presheaves: BTreeMap::new(),
            maps: BTreeMap::new(),
            families: BTreeMap::new(),
            topology: None,
        }
    }
}

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let d = c.to_data();
    CategoryDoc {
        objects: d.objects,
        morphisms: d.morphisms.into_iter().map(|(id, src, tgt)| MorphismDoc { id, src, tgt }).collect(),
        identity: d.identity.into_iter().collect(),
        compose: d.compose.into_iter().map(|(g, f, gf)| ComposeDoc { g, f, gf }).collect(),
    }
}

pub fn category_from_doc(d: &CategoryDoc) -> Result<FinCategory, soa_topos::Error> {
    check_category(&CategoryData {
        objects: d.objects.clone(),
        morphisms: d.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect(),
        identity: d.identity.iter().map(|(o, m)| (o.clone(), m.clone())).collect(),
        compose: d.compose.iter().map(|c| (c.g.clone(), c.f.clone(), c.gf.clone())).collect(),
    })
}

pub fn presheaf_doc(p: &Presheaf) -> PresheafDoc {
    let c = p.base();
    let values = (0..c.num_objects()).map(|x| (c.object(x).to_string(), p.value(x).elements().to_vec())).collect();
    let restrictions = (0..c.num_morphisms())
        .filter(|&u| !c.is_identity(u))
        .map(|u| {
            let (a, b) = (p.value(c.src(u)), p.value(c.tgt(u)));
            let m = (0..b.len()).map(|e| (b.element(e).to_string(), a.element(p.restrict(u, e)).to_string())).collect();
            (c.morphism(u).id.clone(), m)
        })
        .collect();
    PresheafDoc { values, restrictions }
}

pub fn presheaf_from_doc(c: &Arc<FinCategory>, d: &PresheafDoc) -> Result<Presheaf, soa_topos::Error> {
    let values: Vec<(&str, Vec<&str>)> =
        d.values.iter().map(|(o, es)| (o.as_str(), es.iter().map(String::as_str).collect())).collect();
    let restriction: Vec<(&str, Vec<(&str, &str)>)> = d
        .restrictions
        .iter()
        .map(|(m, pairs)| (m.as_str(), pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()))
        .collect();
    Presheaf::from_ids(c.clone(), &values, &restriction)
}

pub fn components_doc(f: &PresheafMap) -> Assignment {
    let c = f.base();
    (0..c.num_objects())
        .map(|x| {
            let (s, t) = (f.s().value(x), f.t().value(x));
            let m = (0..s.len()).map(|e| (s.element(e).to_string(), t.element(f.apply(x, e)).to_string())).collect();
            (c.object(x).to_string(), m)
        })
        .collect()
}

pub fn map_from_doc(src: Arc<Presheaf>, tgt: Arc<Presheaf>, d: &Assignment) -> Result<PresheafMap, soa_topos::Error> {
    let comps: Vec<(&str, Vec<(&str, &str)>)> = d
        .iter()
        .map(|(o, pairs)| (o.as_str(), pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()))
        .collect();
    PresheafMap::from_ids(src, tgt, &comps)
}

/// Bundle entries resolved against the category.
pub struct Loaded {
    pub category: Arc<FinCategory>,
    pub presheaves: BTreeMap<String, Arc<Presheaf>>,
    pub maps: BTreeMap<String, PresheafMap>,
    pub families: BTreeMap<String, MapFamily>,
    pub topology: Option<Topology>,
}

fn invalid(what: String, e: soa_topos::Error) -> CliError {
    match e {
        e @ soa_topos::Error::SizeExceeded { .. } => CliError::Core(e),
        e => CliError::Invalid(format!("{what}: {e}")),
    }
}

impl Loaded {
    /// Builds every entry, stopping at the first violation.
    pub fn resolve(b: &Bundle) -> Result<Loaded, CliError> {
        let category = Arc::new(category_from_doc(&b.category).map_err(|e| invalid("category".into(), e))?);
        let mut presheaves = BTreeMap::new();
        for (name, d) in &b.presheaves {
            let p = presheaf_from_doc(&category, d).map_err(|e| invalid(format!("presheaf `{name}`"), e))?;
            presheaves.insert(name.clone(), Arc::new(p));
        }
        let lookup = |name: &str, what: &str| {
            presheaves.get(name).cloned().ok_or_else(|| CliError::Invalid(format!("{what}: unknown presheaf `{name}`")))
        };
        let mut maps = BTreeMap::new();
        for (name, d) in &b.maps {
            let what = format!("map `{name}`");
            let f = map_from_doc(lookup(&d.src, &what)?, lookup(&d.tgt, &what)?, &d.components)
                .map_err(|e| invalid(what, e))?;
            maps.insert(name.clone(), f);
        }
        let mut families = BTreeMap::new();
        for (name, d) in &b.families {
            let what = format!("family `{name}`");
            let entries = d
                .members
                .iter()
                .map(|m| {
                    let f = maps.get(m).ok_or_else(|| CliError::Invalid(format!("{what}: unknown map `{m}`")))?;
                    Ok((m.clone(), f.clone()))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let fam = match d.indexing.unwrap_or_default() {
                Indexing::Discrete => MapFamily::discrete(category.clone(), entries),
                Indexing::Full => MapFamily::full(category.clone(), entries),
            }
            .map_err(|e| invalid(what, e))?;
            families.insert(name.clone(), fam);
        }
        let topology = match &b.topology {
            None => None,
            Some(t) => {
                let gens: Vec<(&str, Vec<Vec<&str>>)> = t
                    .iter()
                    .map(|(o, ss)| (o.as_str(), ss.iter().map(|s| s.iter().map(String::as_str).collect()).collect()))
                    .collect();
                Some(Topology::from_generators(category.clone(), &gens).map_err(|e| invalid("topology".into(), e))?)
            }
        };
        Ok(Loaded { category, presheaves, maps, families, topology })
    }

    pub fn presheaf(&self, name: &str) -> Result<&Arc<Presheaf>, CliError> {
        self.presheaves.get(name).ok_or_else(|| CliError::Malformed(format!("no presheaf named `{name}`")))
    }

    pub fn map(&self, name: &str) -> Result<&PresheafMap, CliError> {
        self.maps.get(name).ok_or_else(|| CliError::Malformed(format!("no map named `{name}`")))
    }

    pub fn topology(&self) -> Result<&Topology, CliError> {
        self.topology.as_ref().ok_or_else(|| CliError::Malformed("bundle has no topology".into()))
    }

    /// The named family; without a name, the only family, or else the topology's family.
    pub fn family(&self, name: Option<&str>) -> Result<MapFamily, CliError> {
        match name {
            Some(n) => self.families.get(n).cloned().ok_or_else(|| CliError::Malformed(format!("no family named `{n}`"))),
            None if self.families.len() == 1 => Ok(self.families.values().next().expect("one family").clone()),
            None if self.families.is_empty() && self.topology.is_some() => {
                Ok(soa_topos::modulators::topology_to_family(self.topology()?)?)
            }
            None => Err(CliError::Malformed("select a family with --family".into())),
        }
    }
}

/// Adds a family to a bundle, naming member endpoints `<member>.s` and `<member>.t`.
pub fn add_family(b: &mut Bundle, name: &str, w: &MapFamily, indexing: Indexing) {
    for i in 0..w.len() {
        let (m, f) = (w.name(i), w.arrow(i));
        let (s, t) = (format!("{m}.s"), format!("{m}.t"));
        b.presheaves.insert(s.clone(), presheaf_doc(f.s()));
        b.presheaves.insert(t.clone(), presheaf_doc(f.t()));
        b.maps.insert(m.to_string(), MapDoc { src: s, tgt: t, components: components_doc(f) });
    }
    let members = (0..w.len()).map(|i| w.name(i).to_string()).collect();
    b.families.insert(name.to_string(), FamilyDoc { members, indexing: Some(indexing) });
}
