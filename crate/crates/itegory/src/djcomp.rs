//! The disjoint-join completion.
//!
//! A map of the completion is the downward closure of a finite set of
//! pairwise-disjoint generators. Down-sets are never materialized:
//! because distinct generators of a zero-free pairwise-disjoint set are
//! automatically incomparable, the generator set is a canonical form:
//! two completion maps are equal exactly when their generator sets are.
//! `down_set` materializes the closure at small scale as an independent
//! oracle for that canonicity argument.
//!
//! Composition multiplies generator sets elementwise, restriction maps
//! them through `f ↦ f̄`, disjointness is all-pairs disjointness, and
//! joins are plain unions. The identity at `A` is generated by `1_A`
//! alone (its down-set is every idempotent on `A`); the zero map has no
//! generators. [`DjMap::embed`] is the completion functor on the base:
//! it is injective and preserves composition, restriction, zero, and
//! disjointness.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::{FinObj, PartialMap};
use crate::interference::InterferenceRel;

/// A completion map in canonical form: its zero-free, pairwise-disjoint
/// generator set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DjMap {
    dom: FinObj,
    cod: FinObj,
    gens: BTreeSet<PartialMap>,
}

impl DjMap {
    /// Canonicalize a generator set: zeros are dropped, duplicates
    /// collapse, and the survivors must be pairwise disjoint under `rel`.
    pub fn new(
        rel: &InterferenceRel,
        dom: &FinObj,
        cod: &FinObj,
        gens: impl IntoIterator<Item = PartialMap>,
    ) -> Result<DjMap> {
        let mut set = BTreeSet::new();
        for g in gens {
            if !g.dom().compatible(dom) {
                return Err(shape_mismatch("DjMap::new", g.dom(), dom));
            }
            if !g.cod().compatible(cod) {
                return Err(shape_mismatch("DjMap::new", g.cod(), cod));
            }
            if !g.is_zero() {
                set.insert(g);
            }
        }
        let list: Vec<&PartialMap> = set.iter().collect();
        for (i, f) in list.iter().enumerate() {
            for g in &list[i + 1..] {
                if !rel.perp(f, g)? {
                    return Err(Error::NotDisjoint {
                        context: "DjMap::new",
                        detail: rel.describe_clash(f, g),
                    });
                }
            }
        }
        Ok(DjMap {
            dom: dom.clone(),
            cod: cod.clone(),
            gens: set,
        })
    }

    /// The completion functor on a base map: a singleton generator set,
    /// or no generators for the zero map.
    pub fn embed(f: &PartialMap) -> DjMap {
        let mut gens = BTreeSet::new();
        if !f.is_zero() {
            gens.insert(f.clone());
        }
        DjMap {
            dom: f.dom().clone(),
            cod: f.cod().clone(),
            gens,
        }
    }

    pub fn zero(dom: &FinObj, cod: &FinObj) -> DjMap {
        DjMap {
            dom: dom.clone(),
            cod: cod.clone(),
            gens: BTreeSet::new(),
        }
    }

    /// Identity: generated by the base identity (empty for the empty
    /// carrier, where the identity is the zero map).
    pub fn identity(obj: &FinObj) -> DjMap {
        DjMap::embed(&PartialMap::identity(obj))
    }

    pub fn dom(&self) -> &FinObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinObj {
        &self.cod
    }

    pub fn gens(&self) -> &BTreeSet<PartialMap> {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Elementwise composition of generator sets.
    pub fn compose(&self, then: &DjMap, rel: &InterferenceRel) -> Result<DjMap> {
        if !self.cod.compatible(&then.dom) {
            return Err(shape_mismatch("DjMap::compose", &self.cod, &then.dom));
        }
        let mut products = Vec::new();
        for f in &self.gens {
            for g in &then.gens {
                products.push(f.compose(g)?);
            }
        }
        DjMap::new(rel, &self.dom, &then.cod, products)
    }

    pub fn restriction(&self, rel: &InterferenceRel) -> Result<DjMap> {
        let gens: Vec<PartialMap> = self
            .gens
            .iter()
            .map(|f| f.restriction().into_map())
            .collect();
        DjMap::new(rel, &self.dom, &self.dom, gens)
    }

    /// `S ≤ T`: every generator of `S` is dominated by some generator of
    /// `T` (down-set containment is generated by generator domination).
    pub fn leq(&self, other: &DjMap) -> Result<bool> {
        if !self.dom.compatible(&other.dom) {
            return Err(shape_mismatch("DjMap::leq", &self.dom, &other.dom));
        }
        if !self.cod.compatible(&other.cod) {
            return Err(shape_mismatch("DjMap::leq", &self.cod, &other.cod));
        }
        for f in &self.gens {
            let mut dominated = false;
            for g in &other.gens {
                if f.leq(g)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All-pairs disjointness of generators.
    pub fn perp(&self, other: &DjMap, rel: &InterferenceRel) -> Result<bool> {
        if !self.dom.compatible(&other.dom) {
            return Err(shape_mismatch("DjMap::perp", &self.dom, &other.dom));
        }
        for f in &self.gens {
            for g in &other.gens {
                if !rel.perp(f, g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The join of pairwise-disjoint completion maps: the union of their
    /// generator sets.
    pub fn join(
        rel: &InterferenceRel,
        dom: &FinObj,
        cod: &FinObj,
        family: &[DjMap],
    ) -> Result<DjMap> {
        for (i, s) in family.iter().enumerate() {
            for t in &family[i + 1..] {
                if !s.perp(t, rel)? {
                    return Err(Error::NotDisjoint {
                        context: "DjMap::join",
                        detail: format!("family members {i} and later share interfering generators"),
                    });
                }
            }
        }
        DjMap::new(
            rel,
            dom,
            cod,
            family.iter().flat_map(|s| s.gens.iter().cloned()),
        )
    }

    /// Materialize the down-set `↓gens`: every base map below some
    /// generator. Exponential in the generator domains; capacity-capped,
    /// and used only as the canonicity oracle at desk scale.
    pub fn down_set(&self) -> Result<BTreeSet<PartialMap>> {
        let mut total: usize = 0;
        for g in &self.gens {
            total = total.saturating_add(1usize << g.defined_count());
            if total > 1 << 16 {
                return Err(Error::Capacity {
                    context: "DjMap::down_set",
                    detail: "down-set would exceed 65536 maps".into(),
                });
            }
        }
        let mut out = BTreeSet::new();
        out.insert(PartialMap::zero(&self.dom, &self.cod));
        for g in &self.gens {
            let points = g.domain_indices();
            for mask in 0u64..(1 << points.len()) {
                let mut table = vec![None; self.dom.size()];
                for (bit, &x) in points.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        table[x] = g.apply(x);
                    }
                }
                out.insert(PartialMap::new(self.dom.clone(), self.cod.clone(), table)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "↓{{")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct DjJson {
    dom: usize,
    cod: usize,
    gens: Vec<PartialMap>,
}

impl Serialize for DjMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DjJson {
            dom: self.dom.size(),
            cod: self.cod.size(),
            gens: self.gens.iter().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DjMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DjJson::deserialize(deserializer)?;
        DjMap::new(
            &InterferenceRel::maximal(),
            &FinObj::of_size(raw.dom),
            &FinObj::of_size(raw.cod),
            raw.gens,
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel() -> InterferenceRel {
        InterferenceRel::maximal()
    }

    fn map(dom: usize, cod: usize, entries: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_entries(FinObj::of_size(dom), FinObj::of_size(cod), entries).unwrap()
    }

    #[test]
    fn compose_multiplies_generators() {
        let s = DjMap::embed(&map(3, 3, &[(0, 1)]));
        let t = DjMap::embed(&map(3, 3, &[(1, 2)]));
        let st = s.compose(&t, &rel()).unwrap();
        assert_eq!(st, DjMap::embed(&map(3, 3, &[(0, 2)])));
    }

    #[test]
    fn identity_and_zero() {
        let x3 = FinObj::of_size(3);
        let s = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 1)]), map(3, 3, &[(2, 0)])],
        )
        .unwrap();
        assert_eq!(s.compose(&DjMap::identity(&x3), &rel()).unwrap(), s);
        let z = DjMap::zero(&x3, &x3);
        assert!(s.compose(&z, &rel()).unwrap().is_zero());
        // zeros never appear among generators
        assert!(!s.gens().iter().any(|g| g.is_zero()));
    }

    #[test]
    fn restriction_is_elementwise() {
        let x3 = FinObj::of_size(3);
        let s = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 1)]), map(3, 3, &[(2, 0)])],
        )
        .unwrap();
        let r = s.restriction(&rel()).unwrap();
        let expected = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 0)]), map(3, 3, &[(2, 2)])],
        )
        .unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn splitting_a_generator_changes_the_map_but_respects_order() {
        let x3 = FinObj::of_size(3);
        let f = map(3, 3, &[(0, 1), (2, 0)]);
        let g1 = map(3, 3, &[(0, 1)]);
        let g2 = map(3, 3, &[(2, 0)]);
        let whole = DjMap::embed(&f);
        let split = DjMap::new(&rel(), &x3, &x3, vec![g1, g2]).unwrap();
        assert_ne!(whole, split);
        assert!(split.leq(&whole).unwrap());
        assert!(!whole.leq(&split).unwrap());
    }

    #[test]
    fn join_is_union() {
        let x3 = FinObj::of_size(3);
        let s = DjMap::embed(&map(3, 3, &[(0, 1)]));
        let t = DjMap::embed(&map(3, 3, &[(2, 0)]));
        let joined = DjMap::join(&rel(), &x3, &x3, &[s.clone(), t.clone()]).unwrap();
        assert_eq!(joined.gens().len(), 2);
        assert!(s.leq(&joined).unwrap());
        assert!(t.leq(&joined).unwrap());
    }

    #[test]
    fn embed_preserves_structure() {
        let f = map(3, 3, &[(0, 1)]);
        let g = map(3, 3, &[(1, 2)]);
        assert_eq!(
            DjMap::embed(&f.compose(&g).unwrap()),
            DjMap::embed(&f).compose(&DjMap::embed(&g), &rel()).unwrap()
        );
        assert_eq!(
            DjMap::embed(&f).restriction(&rel()).unwrap(),
            DjMap::embed(f.restriction().as_map())
        );
        let zero = PartialMap::zero(&FinObj::of_size(3), &FinObj::of_size(3));
        assert!(DjMap::embed(&zero).is_zero());
        let h = map(3, 3, &[(2, 0)]);
        assert!(rel().perp(&f, &h).unwrap());
        assert!(DjMap::embed(&f).perp(&DjMap::embed(&h), &rel()).unwrap());
    }

    #[test]
    fn down_sets_certify_canonicity() {
        let x3 = FinObj::of_size(3);
        let a = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 1), (1, 1)]), map(3, 3, &[(2, 0)])],
        )
        .unwrap();
        let b = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(2, 0)]), map(3, 3, &[(0, 1), (1, 1)])],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.down_set().unwrap(), b.down_set().unwrap());

        let c = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 1)]), map(3, 3, &[(2, 0)])],
        )
        .unwrap();
        assert_ne!(a, c);
        assert_ne!(a.down_set().unwrap(), c.down_set().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let x3 = FinObj::of_size(3);
        let s = DjMap::new(
            &rel(),
            &x3,
            &x3,
            vec![map(3, 3, &[(0, 1)]), map(3, 3, &[(2, 0)])],
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: DjMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // non-disjoint generator lists are rejected on the way in
        let bad = r#"{"dom":2,"cod":2,"gens":[
            {"dom":2,"cod":2,"table":[0,null]},
            {"dom":2,"cod":2,"table":[1,null]}]}"#;
        assert!(serde_json::from_str::<DjMap>(bad).is_err());
    }
}
