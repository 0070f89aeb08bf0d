//! JSON session files declaring rings, cones and homomorphisms.
//!
//! ```json
//! {
//!   "rings": { "Y": { "variables": ["z1", "z2", "z3", "z4"], "relations": ["z1*z2 - z3*z4"] } },
//!   "cones": { "sigma": { "rank": 2, "rays": [[1, 0], [1, 2]] } },
//!   "homs": { "h": { "source": "Y", "target": "T", "images": { "z1": "x1*x2" } } }
//! }
//! ```

use std::collections::BTreeMap;

use azp_core::groebner::{RingHom, RingPresentation};
use azp_core::symcore::VariableContext;
use azp_core::toric::{Cone, LatticeVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_polynomial, ParseError};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("invalid session JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("ring `{ring}`: {source}")]
    Ring { ring: String, source: ParseError },
    #[error("hom `{hom}`: {msg}")]
    Hom { hom: String, msg: String },
    #[error("cone `{cone}`: {msg}")]
    Cone { cone: String, msg: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDecl {
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// `{"rank": n, "rays": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
}

impl ConeJson {
    pub fn to_cone(&self) -> azp_core::Result<Cone> {
        Cone::new(self.rank, self.rays.iter().map(|r| LatticeVector::from_ints(r)).collect())
    }

    /// `None` when a coordinate does not fit in `i64`.
    pub fn from_cone(c: &Cone) -> Option<Self> {
        Some(ConeJson {
            rank: c.rank(),
            rays: c.rays().iter().map(LatticeVector::to_i64).collect::<Option<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDecl {
    pub source: String,
    pub target: String,
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionFile {
    #[serde(default)]
    pub rings: BTreeMap<String, RingDecl>,
    #[serde(default)]
    pub cones: BTreeMap<String, ConeJson>,
    #[serde(default)]
    pub homs: BTreeMap<String, HomDecl>,
}

/// A parsed and type-checked session.
#[derive(Clone, Debug)]
pub struct Session {
    pub rings: BTreeMap<String, RingPresentation>,
    pub cones: BTreeMap<String, Cone>,
    pub homs: BTreeMap<String, RingHom>,
}

impl Session {
    pub fn from_json(text: &str) -> Result<Self, SessionError> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn from_file(f: SessionFile) -> Result<Self, SessionError> {
        let mut rings = BTreeMap::new();
        for (name, decl) in &f.rings {
            let err = |source: ParseError| SessionError::Ring {
                ring: name.clone(),
                source,
            };
            let ctx = VariableContext::new(decl.variables.clone()).map_err(|e| err(e.into()))?;
            let rels = decl
                .relations
                .iter()
                .map(|r| parse_polynomial(r, &ctx))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let p = RingPresentation::new(&ctx, rels).map_err(|e| err(e.into()))?;
            rings.insert(name.clone(), p);
        }
        let mut cones = BTreeMap::new();
        for (name, c) in &f.cones {
            let cone = c.to_cone().map_err(|e| SessionError::Cone {
                cone: name.clone(),
                msg: e.to_string(),
            })?;
            cones.insert(name.clone(), cone);
        }
        let mut homs = BTreeMap::new();
        for (name, h) in &f.homs {
            let err = |msg: String| SessionError::Hom {
                hom: name.clone(),
                msg,
            };
            let src = rings.get(&h.source).ok_or_else(|| err(format!("unknown ring `{}`", h.source)))?;
            let tgt = rings.get(&h.target).ok_or_else(|| err(format!("unknown ring `{}`", h.target)))?;
            for v in h.images.keys() {
                if src.ctx().index_of(v).is_none() {
                    return Err(err(format!("`{v}` is not a variable of `{}`", h.source)));
                }
            }
            let map = h
                .images
                .iter()
                .map(|(k, v)| Ok((k.clone(), parse_polynomial(v, tgt.ctx()).map_err(|e| err(format!("image of {k}: {e}")))?)))
                .collect::<Result<std::collections::HashMap<_, _>, SessionError>>()?;
            let hom = RingHom::from_map(src.clone(), tgt.clone(), &map).map_err(|e| err(e.to_string()))?;
            homs.insert(name.clone(), hom);
        }
        Ok(Session { rings, cones, homs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORIC: &str = r#"{
        "rings": {
            "Y": { "variables": ["z1", "z2", "z3", "z4"] },
            "T": { "variables": ["x1", "x2", "x3", "x4"] }
        },
        "cones": { "c": { "rank": 2, "rays": [[1, 0], [1, 2]] } },
        "homs": { "h": { "source": "Y", "target": "T",
            "images": { "z1": "x1*x2", "z2": "x3*x4", "z3": "x1*x3", "z4": "x2*x4" } } }
    }"#;

    #[test]
    fn toric_session_kernel() {
        let s = Session::from_json(TORIC).unwrap();
        let k = s.homs["h"].kernel().unwrap();
        assert_eq!(k.grevlex_basis().to_string(), "{z1*z2 - z3*z4}");
        assert_eq!(s.cones["c"].rays().len(), 2);
    }

    #[test]
    fn type_errors() {
        let bad = TORIC.replace("\"z4\": \"x2*x4\"", "\"z4\": \"x2*w\"");
        assert!(matches!(Session::from_json(&bad), Err(SessionError::Hom { .. })));
        let missing = TORIC.replace(", \"z4\": \"x2*x4\"", "");
        assert!(Session::from_json(&missing).is_err());
        let unknown = TORIC.replace("\"target\": \"T\"", "\"target\": \"S\"");
        assert!(Session::from_json(&unknown).is_err());
        assert!(Session::from_json("{ \"rings\": 3 }").is_err());
    }

    #[test]
    fn cone_round_trip() {
        let c = ConeJson { rank: 2, rays: vec![vec![2, 4], vec![1, 0]] };
        let back = ConeJson::from_cone(&c.to_cone().unwrap()).unwrap();
        assert_eq!(back, ConeJson { rank: 2, rays: vec![vec![1, 0], vec![1, 2]] });
    }
}
