//! JSON schemas for algebras, relations, ideals, filters, lattices, and
//! certificates. Top-level CLI documents carry `"schema": "supalg/1"`.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, OpTable};
use crate::error::{Error, Result};
use crate::filter::RelFilter;
use crate::ideal::RelIdeal;
use crate::lattice::{Lattice, ModularityCertificate};
use crate::relation::{Carrier, Relation};
use crate::superunif::SuperUniformity;

pub const SCHEMA: &str = "supalg/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub name: String,
    pub carrier: usize,
    pub ops: Vec<OpJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpJson {
    pub sym: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl From<&FiniteAlgebra> for AlgebraJson {
    fn from(a: &FiniteAlgebra) -> Self {
        AlgebraJson {
            schema: Some(SCHEMA.into()),
            name: a.name.clone(),
            carrier: a.carrier_size,
            ops: a
                .ops
                .iter()
                .map(|o| OpJson {
                    sym: o.sym.clone(),
                    arity: o.arity,
                    table: o.table.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<AlgebraJson> for FiniteAlgebra {
    type Error = Error;

    fn try_from(j: AlgebraJson) -> Result<FiniteAlgebra> {
        FiniteAlgebra::new(
            &j.name,
            j.carrier,
            j.ops
                .into_iter()
                .map(|o| OpTable {
                    sym: o.sym,
                    arity: o.arity,
                    table: o.table,
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CarrierJson {
    Finite { finite: usize },
    Named(String),
}

impl From<Carrier> for CarrierJson {
    fn from(c: Carrier) -> Self {
        match c {
            Carrier::Finite(n) => CarrierJson::Finite { finite: n },
            Carrier::IntLine => CarrierJson::Named("intline".into()),
        }
    }
}

impl TryFrom<&CarrierJson> for Carrier {
    type Error = Error;

    fn try_from(j: &CarrierJson) -> Result<Carrier> {
        match j {
            CarrierJson::Finite { finite } => Ok(Carrier::Finite(*finite)),
            CarrierJson::Named(s) if s == "intline" => Ok(Carrier::IntLine),
            CarrierJson::Named(s) => Err(Error::Parse(format!("unknown carrier {s:?}"))),
        }
    }
}

/// Canonical form: pairs sorted lexicographically; finite carriers list
/// every pair explicitly with `diagonal: false`, the integer line lists
/// off-diagonal pairs plus the whole-diagonal flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationJson {
    pub carrier: CarrierJson,
    pub pairs: Vec<(i64, i64)>,
    pub diagonal: bool,
}

impl From<&Relation> for RelationJson {
    fn from(r: &Relation) -> Self {
        RelationJson {
            carrier: r.carrier().into(),
            pairs: r.iter_pairs(),
            diagonal: r.has_diagonal_flag(),
        }
    }
}

impl TryFrom<&RelationJson> for Relation {
    type Error = Error;

    fn try_from(j: &RelationJson) -> Result<Relation> {
        let carrier = Carrier::try_from(&j.carrier)?;
        let mut r = Relation::from_pairs(carrier, &j.pairs)?;
        if j.diagonal {
            r = r.union(&Relation::delta(carrier))?;
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub carrier: CarrierJson,
    pub generators: Vec<RelationJson>,
    pub closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<String>,
}

impl From<&RelIdeal> for IdealJson {
    fn from(i: &RelIdeal) -> Self {
        IdealJson {
            carrier: i.carrier().into(),
            generators: i.generators().iter().map(RelationJson::from).collect(),
            closed: i.is_closed_under_composition(),
            encoding: None,
        }
    }
}

impl From<&SuperUniformity> for IdealJson {
    fn from(e: &SuperUniformity) -> Self {
        let mut j = IdealJson::from(&e.encoded);
        j.encoding = Some("principal-filter".into());
        j
    }
}

impl TryFrom<&IdealJson> for RelIdeal {
    type Error = Error;

    fn try_from(j: &IdealJson) -> Result<RelIdeal> {
        let carrier = Carrier::try_from(&j.carrier)?;
        let gens: Result<Vec<Relation>> =
            j.generators.iter().map(Relation::try_from).collect();
        RelIdeal::from_ceiling(carrier, gens?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilterJson {
    pub carrier: CarrierJson,
    pub base: Vec<RelationJson>,
}

impl From<&RelFilter> for FilterJson {
    fn from(f: &RelFilter) -> Self {
        FilterJson {
            carrier: f.carrier().into(),
            base: f.base().iter().map(RelationJson::from).collect(),
        }
    }
}

impl TryFrom<&FilterJson> for RelFilter {
    type Error = Error;

    fn try_from(j: &FilterJson) -> Result<RelFilter> {
        let base: Result<Vec<Relation>> = j.base.iter().map(Relation::try_from).collect();
        RelFilter::generated(base?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl From<&Lattice> for LatticeJson {
    fn from(l: &Lattice) -> Self {
        LatticeJson {
            elements: l.labels.clone(),
            leq: l.leq.clone(),
        }
    }
}

/// A modularity certificate with element indices and their payloads.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub modular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub indices: (usize, usize, usize),
    pub payloads: (String, String, String),
}

pub fn certificate_json(cert: &ModularityCertificate, l: &Lattice) -> CertificateJson {
    CertificateJson {
        modular: cert.modular,
        witness: cert.witness.map(|(x, y, z)| WitnessJson {
            indices: (x, y, z),
            payloads: (
                l.labels[x].clone(),
                l.labels[y].clone(),
                l.labels[z].clone(),
            ),
        }),
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let j: AlgebraJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra json: {e}")))?;
    FiniteAlgebra::try_from(j)
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    let j: RelationJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("relation json: {e}")))?;
    Relation::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn algebra_roundtrip() {
        let z4 = fixtures::cyclic_group(4);
        let text = serde_json::to_string(&AlgebraJson::from(&z4)).unwrap();
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back, z4);
    }

    #[test]
    fn malformed_algebra_rejected() {
        assert!(parse_algebra("{").is_err());
        assert!(parse_algebra(r#"{"name":"x","carrier":2,"ops":[{"sym":"f","arity":1,"table":[5,0]}]}"#).is_err());
    }

    #[test]
    fn relation_canonical_sorted() {
        let r = Relation::from_pairs(Carrier::Finite(3), &[(2, 1), (0, 2), (1, 1)]).unwrap();
        let j = RelationJson::from(&r);
        let mut sorted = j.pairs.clone();
        sorted.sort();
        assert_eq!(j.pairs, sorted);
    }

    #[test]
    fn intline_relation_roundtrip() {
        let mut r = Relation::delta(Carrier::IntLine);
        r.insert(3, 5);
        r.insert(5, 3);
        let text = serde_json::to_string(&RelationJson::from(&r)).unwrap();
        assert_eq!(parse_relation(&text).unwrap(), r);
    }

    proptest! {
        #[test]
        fn finite_relation_roundtrip(bits in prop::collection::vec(prop::bool::ANY, 16)) {
            let mut r = Relation::empty(Carrier::Finite(4));
            for (k, set) in bits.iter().enumerate() {
                if *set {
                    r.insert((k / 4) as i64, (k % 4) as i64);
                }
            }
            let text = serde_json::to_string(&RelationJson::from(&r)).unwrap();
            prop_assert_eq!(parse_relation(&text).unwrap(), r);
        }
    }
}
