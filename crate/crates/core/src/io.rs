//! JSON schemas for the stable file formats.
//!
//! Field names are fixed.  Every rational is carried as a decimal-free exact
//! string ("p" or "p/q"); big integers travel the same way, so nothing is
//! ever rounded at the boundary.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hstar::{HStarReport, MacaulayVerdict};
use crate::kclass::KExpansion;
use crate::lorentzian::{LorentzianFailure, LorentzianVerdict};
use crate::matroid::Matroid;
use crate::poly::{Basis, ExactPoly, Rat};
use crate::polymatroid::{MConvexFailure, Polymatroid};
use crate::snapper::BundleSpec;
use crate::subset::Subset;

pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// `{"n": .., "rank": [..]}` or `{"n": .., "bases": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson { n: m.n(), rank: Some(m.rank_table().to_vec()), bases: None }
    }

    pub fn build(&self) -> Result<Matroid> {
        match (&self.rank, &self.bases) {
            (Some(rank), None) => Matroid::from_rank_table(self.n, rank.clone()),
            (None, Some(bases)) => {
                let sets: Vec<Subset> = bases
                    .iter()
                    .map(|b| {
                        if b.iter().any(|&e| e >= self.n) {
                            Err(Error::InvalidInput(format!("basis element out of range: {b:?}")))
                        } else {
                            Ok(Subset::from_elements(b.iter().copied()))
                        }
                    })
                    .collect::<Result<_>>()?;
                Matroid::from_bases(self.n, &sets)
            }
            _ => Err(Error::InvalidInput(
                "matroid JSON needs exactly one of \"rank\" or \"bases\"".into(),
            )),
        }
    }
}

/// `{"m": .., "cage": [..], "rank": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolymatroidJson {
    pub m: usize,
    pub cage: Vec<u32>,
    pub rank: Vec<u32>,
}

impl PolymatroidJson {
    pub fn from_polymatroid(p: &Polymatroid) -> Self {
        PolymatroidJson { m: p.m(), cage: p.cage().to_vec(), rank: p.rank_table().to_vec() }
    }

    pub fn build(&self) -> Result<Polymatroid> {
        Polymatroid::from_rank_table(self.m, self.cage.clone(), self.rank.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// `{"vars": [..], "basis": "power"|"rising"|"shifted", "terms": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &ExactPoly) -> Self {
        PolyJson {
            vars: p.vars().to_vec(),
            basis: p.basis(),
            terms: p
                .terms()
                .map(|(exp, coef)| TermJson { exp: exp.clone(), coef: coef.to_string() })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<ExactPoly> {
        let mut out = ExactPoly::zero(self.vars.clone(), self.basis);
        for t in &self.terms {
            if t.exp.len() != self.vars.len() {
                return Err(Error::InvalidInput(format!(
                    "term exponent {:?} does not match {} variables",
                    t.exp,
                    self.vars.len()
                )));
            }
            out.add_term(t.exp.clone(), parse_rational(&t.coef)?);
        }
        Ok(out)
    }
}

/// `{"subsets": [[..]], "exponents": [..], "augmented": bool}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleJson {
    pub subsets: Vec<Vec<usize>>,
    pub exponents: Vec<i64>,
    pub augmented: bool,
}

impl BundleJson {
    pub fn from_bundle(b: &BundleSpec) -> Self {
        BundleJson {
            subsets: b.subsets.iter().map(|s| s.elements().collect()).collect(),
            exponents: b.exponents.clone(),
            augmented: b.augmented,
        }
    }

    pub fn build(&self) -> Result<BundleSpec> {
        let subsets =
            self.subsets.iter().map(|b| Subset::from_elements(b.iter().copied())).collect();
        BundleSpec::new(subsets, self.exponents.clone(), self.augmented)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KCoeffJson {
    pub b: Vec<u32>,
    pub c: i64,
}

/// `{"cage": [..], "coeffs": [..]}`, coefficients sorted by total degree
/// descending then lexicographically.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KExpansionJson {
    pub cage: Vec<u32>,
    pub coeffs: Vec<KCoeffJson>,
}

impl KExpansionJson {
    pub fn from_expansion(e: &KExpansion) -> Self {
        KExpansionJson {
            cage: e.cage.clone(),
            coeffs: e.sorted_entries().into_iter().map(|(b, c)| KCoeffJson { b, c }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MacaulayJson {
    pub macaulay: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation_index: Option<usize>,
}

impl MacaulayJson {
    pub fn from_verdict(v: &MacaulayVerdict) -> Self {
        MacaulayJson { macaulay: v.ok, violation_index: v.violation_index }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HStarJson {
    pub snapper: PolyJson,
    pub d: usize,
    pub hstar: Vec<String>,
    pub macaulay: MacaulayJson,
    pub top_identity_checked: bool,
}

impl HStarJson {
    pub fn from_report(r: &HStarReport) -> Self {
        HStarJson {
            snapper: PolyJson::from_poly(&r.snapper),
            d: r.d,
            hstar: r.hstar.iter().map(|h| h.to_string()).collect(),
            macaulay: MacaulayJson::from_verdict(&r.macaulay),
            top_identity_checked: r.top_identity_checked,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LorentzianFailureJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<[usize; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LorentzianJson {
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<LorentzianFailureJson>,
}

impl LorentzianJson {
    pub fn from_verdict(v: &LorentzianVerdict) -> Self {
        let failure = v.failure.as_ref().map(|f| match f {
            LorentzianFailure::NotHomogeneous => LorentzianFailureJson {
                kind: "not_homogeneous".into(),
                witness: None,
                signature: None,
            },
            LorentzianFailure::NegativeCoefficient { term } => LorentzianFailureJson {
                kind: "negative_coefficient".into(),
                witness: Some(format!("{term:?}")),
                signature: None,
            },
            LorentzianFailure::SupportNotMConvex { witness } => LorentzianFailureJson {
                kind: "support_not_m_convex".into(),
                witness: Some(match witness {
                    MConvexFailure::Empty => "empty support".to_string(),
                    other => other.to_string(),
                }),
                signature: None,
            },
            LorentzianFailure::BadSignature { derivative, signature } => LorentzianFailureJson {
                kind: "bad_signature".into(),
                witness: Some(format!("{derivative:?}")),
                signature: Some([signature.positives, signature.negatives, signature.zeros]),
            },
        });
        LorentzianJson { verdict: v.verdict, failure }
    }
}
