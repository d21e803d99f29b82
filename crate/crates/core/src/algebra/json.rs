//! JSON form of structure constants.
//!
//! ```json
//! {
//!   "conductor": 3,
//!   "group": "cyclic:2",
//!   "dims": [3, 3],
//!   "product":   [[a, b, i, j, [t, "1*zeta^0", ...]], ...],
//!   "unit":      [t, "1", ...],
//!   "coproduct": [[a, i, [[t1, t2], "1", ...]], ...],
//!   "counit":    [[a, i, "1"], ...],
//!   "antipode":  [[a, i, [t, "1", ...]], ...],
//!   "crossing":  [[b, a, i, [t, "1", ...]], ...],
//!   "rmatrix":   [[t1, t2], "1/3*zeta^0", ...]
//! }
//! ```
//!
//! Grades are group element indices. Omitted entries are zero.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, DeserializeOwned, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{HopfGAlgebra, Sparse, StructureMaps};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupJson};

/// A group given by name (`cyclic:4`) or by explicit table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Table(GroupJson),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Named(s) => FiniteGroup::from_name(s),
            GroupRef::Table(t) => FiniteGroup::from_json(t.clone()),
        }
    }
}

/// Flat alternating list `[key, "scalar", key, "scalar", ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Terms<K>(pub Vec<(K, String)>);

pub type CoproductEntry = (usize, usize, Terms<(usize, usize)>);

impl<K: Serialize> Serialize for Terms<K> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len() * 2))?;
        for (k, c) in &self.0 {
            seq.serialize_element(k)?;
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de, K: DeserializeOwned> Deserialize<'de> for Terms<K> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V<K>(PhantomData<K>);
        impl<'de, K: DeserializeOwned> Visitor<'de> for V<K> {
            type Value = Terms<K>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a flat list alternating target and scalar string")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(k) = seq.next_element::<serde_json::Value>()? {
                    let k: K = serde_json::from_value(k).map_err(de::Error::custom)?;
                    let c = seq
                        .next_element::<ScalarText>()?
                        .ok_or_else(|| de::Error::custom("target without a scalar"))?;
                    out.push((k, c.0));
                }
                Ok(Terms(out))
            }
        }
        de.deserialize_seq(V(PhantomData))
    }
}

/// A scalar written as a string, or as a bare integer for convenience.
struct ScalarText(String);

impl<'de> Deserialize<'de> for ScalarText {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(de)? {
            serde_json::Value::String(s) => Ok(ScalarText(s)),
            serde_json::Value::Number(n) if n.is_i64() => Ok(ScalarText(n.to_string())),
            other => Err(de::Error::custom(format!("expected scalar string, got {other}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub conductor: u32,
    pub group: GroupRef,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub product: Vec<(usize, usize, usize, usize, Terms<usize>)>,
    #[serde(default)]
    pub unit: Terms<usize>,
    #[serde(default)]
    pub coproduct: Vec<CoproductEntry>,
    #[serde(default)]
    pub counit: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub antipode: Vec<(usize, usize, Terms<usize>)>,
    #[serde(default)]
    pub crossing: Vec<(usize, usize, usize, Terms<usize>)>,
    #[serde(default)]
    pub rmatrix: Terms<(usize, usize)>,
}

fn scalars<K: Clone>(cond: u32, terms: &Terms<K>, what: &str) -> Result<Vec<(K, CycloScalar)>> {
    terms
        .0
        .iter()
        .map(|(k, s)| {
            CycloScalar::parse(cond, s)
                .map(|c| (k.clone(), c))
                .map_err(|e| Error::AlgebraLoad(format!("{what}: {e}")))
        })
        .collect()
}

fn terms<K: Clone>(s: &[(K, CycloScalar)]) -> Terms<K> {
    Terms(s.iter().map(|(k, c)| (k.clone(), c.to_term_string())).collect())
}

fn slot<'a, T>(v: &'a mut [T], idx: usize, what: &str) -> Result<&'a mut T> {
    let len = v.len();
    v.get_mut(idx)
        .ok_or_else(|| Error::AlgebraLoad(format!("{what}: index {idx} out of range (< {len})")))
}

impl AlgebraJson {
    pub fn into_algebra(self) -> Result<HopfGAlgebra> {
        let group = self.group.resolve()?;
        let n = group.order();
        let cond = self.conductor;
        if cond == 0 {
            return Err(Error::AlgebraLoad("conductor must be positive".into()));
        }
        if self.dims.len() != n {
            return Err(Error::AlgebraLoad(format!(
                "dims has {} entries for a group of order {n}",
                self.dims.len()
            )));
        }
        let dims = self.dims.clone();
        let grade = |g: usize, what: &str| -> Result<usize> {
            if g >= n {
                return Err(Error::AlgebraLoad(format!("{what}: grade {g} >= group order {n}")));
            }
            Ok(g)
        };
        let mut maps = StructureMaps::empty(&group, cond, dims.clone());
        for (e, (a, b, i, j, t)) in self.product.iter().enumerate() {
            let what = format!("product entry {e}");
            let (a, b) = (grade(*a, &what)?, grade(*b, &what)?);
            if *j >= dims[b] {
                return Err(Error::AlgebraLoad(format!("{what}: index {j} >= dim {}", dims[b])));
            }
            let block = &mut maps.product[a * n + b];
            *slot(block, i * dims[b] + j, &what)? = scalars(cond, t, &what)?;
        }
        maps.unit = scalars(cond, &self.unit, "unit")?;
        for (e, (a, i, t)) in self.coproduct.iter().enumerate() {
            let what = format!("coproduct entry {e}");
            let a = grade(*a, &what)?;
            *slot(&mut maps.coproduct[a], *i, &what)? = scalars(cond, t, &what)?;
        }
        for (e, (a, i, s)) in self.counit.iter().enumerate() {
            let what = format!("counit entry {e}");
            let a = grade(*a, &what)?;
            let c = CycloScalar::parse(cond, s).map_err(|err| Error::AlgebraLoad(format!("{what}: {err}")))?;
            *slot(&mut maps.counit[a], *i, &what)? = c;
        }
        for (e, (a, i, t)) in self.antipode.iter().enumerate() {
            let what = format!("antipode entry {e}");
            let a = grade(*a, &what)?;
            *slot(&mut maps.antipode[a], *i, &what)? = scalars(cond, t, &what)?;
        }
        for (e, (b, a, i, t)) in self.crossing.iter().enumerate() {
            let what = format!("crossing entry {e}");
            let (b, a) = (grade(*b, &what)?, grade(*a, &what)?);
            *slot(&mut maps.crossing[b * n + a], *i, &what)? = scalars(cond, t, &what)?;
        }
        maps.rmatrix = scalars(cond, &self.rmatrix, "rmatrix")?;
        HopfGAlgebra::new(group, maps)
    }

    pub fn from_algebra(h: &HopfGAlgebra) -> Self {
        let g = h.group();
        let n = g.order();
        let m = h.maps();
        let dims = m.dims.clone();
        let nonempty = |s: &Sparse| !s.is_empty();
        let mut product = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (ij, s) in m.product[a * n + b].iter().enumerate() {
                    if nonempty(s) {
                        product.push((a, b, ij / dims[b], ij % dims[b], terms(s)));
                    }
                }
            }
        }
        let mut coproduct = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        for a in 0..n {
            for (i, s) in m.coproduct[a].iter().enumerate() {
                if !s.is_empty() {
                    coproduct.push((a, i, terms(s)));
                }
            }
            for (i, c) in m.counit[a].iter().enumerate() {
                if !c.is_zero() {
                    counit.push((a, i, c.to_term_string()));
                }
            }
            for (i, s) in m.antipode[a].iter().enumerate() {
                if nonempty(s) {
                    antipode.push((a, i, terms(s)));
                }
            }
        }
        let mut crossing = Vec::new();
        for b in 0..n {
            for a in 0..n {
                for (i, s) in m.crossing[b * n + a].iter().enumerate() {
                    if nonempty(s) {
                        crossing.push((b, a, i, terms(s)));
                    }
                }
            }
        }
        AlgebraJson {
            conductor: m.conductor,
            group: GroupRef::Table(g.to_json()),
            dims,
            product,
            unit: terms(&m.unit),
            coproduct,
            counit,
            antipode,
            crossing,
            rmatrix: terms(&m.rmatrix),
        }
    }
}

pub fn algebra_from_json(text: &str) -> Result<HopfGAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(text)?;
    raw.into_algebra()
}

pub fn algebra_to_json(h: &HopfGAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(h)).expect("algebra JSON is serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{build_cyclic, build_kac_paljutkin, CyclicParams};

    #[test]
    fn round_trip_builtins() {
        for h in [
            build_cyclic(CyclicParams { k: 2, l: 3, d: 1 }).unwrap(),
            build_kac_paljutkin(),
        ] {
            let text = algebra_to_json(&h);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back.maps(), h.maps());
            assert_eq!(back.group(), h.group());
        }
    }

    #[test]
    fn minimal_trivial_algebra() {
        let text = r#"{
            "conductor": 1, "group": "cyclic:1", "dims": [1],
            "product": [[0, 0, 0, 0, [0, "1"]]],
            "unit": [0, "1"],
            "coproduct": [[0, 0, [[0, 0], "1"]]],
            "counit": [[0, 0, "1"]],
            "antipode": [[0, 0, [0, "1"]]],
            "crossing": [[0, 0, 0, [0, "1"]]],
            "rmatrix": [[0, 0], "1"]
        }"#;
        let h = algebra_from_json(text).unwrap();
        assert!(crate::algebra::verify_axioms(&h).all_passed());
    }

    #[test]
    fn bad_scalar_names_entry() {
        let text = r#"{"conductor": 1, "group": "cyclic:1", "dims": [1],
            "product": [[0, 0, 0, 0, [0, "1/0x"]]]}"#;
        let err = algebra_from_json(text).unwrap_err().to_string();
        assert!(err.contains("product entry 0"), "{err}");
    }

    #[test]
    fn out_of_range_grade() {
        let text = r#"{"conductor": 1, "group": "cyclic:1", "dims": [1],
            "antipode": [[3, 0, [0, "1"]]]}"#;
        assert!(matches!(algebra_from_json(text), Err(Error::AlgebraLoad(_))));
    }
}
