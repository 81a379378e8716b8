//! Finite sets and extensional partial functions.
//!
//! Objects are finite carriers whose elements are the canonical indices
//! `0..size`; labels, when present, are presentation metadata only and
//! never participate in equality. A map is a table sending each source
//! index to either a target index or nothing. Composition is written
//! diagrammatically: `f.compose(&g)` is "first `f`, then `g`".
//!
//! The structure carried by every map:
//!
//! * `f.restriction()`, the idempotent marking where `f` is defined,
//!   `f̄(x) = x` iff `f(x)` is defined;
//! * `PartialMap::zero`, the nowhere-defined map, absorbing under
//!   composition and the least element of every homset;
//! * `f.leq(&g)`: `f ≤ g` iff `g` agrees with `f` wherever `f` is
//!   defined (equivalently `f̄g = f`).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{shape_mismatch, Error, Result};

/// A finite carrier set. Elements are the indices `0..size`.
#[derive(Clone, Debug)]
pub struct FinObj {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FinObj {
    pub fn of_size(size: usize) -> FinObj {
        FinObj { size, labels: None }
    }

    /// A carrier presented by distinct element names.
    pub fn labeled(labels: Vec<String>) -> Result<FinObj> {
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Invalid {
                    context: "FinObj::labeled",
                    detail: format!("duplicate label `{a}`"),
                });
            }
        }
        Ok(FinObj {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, index: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(index)).map(|s| s.as_str())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|x| x == label))
    }

    /// Whether two objects may be used interchangeably in an operation.
    ///
    /// Objects compare by size; label sequences must agree only when both
    /// sides carry them, so a labeled and an unlabeled carrier of equal
    /// size are interchangeable.
    pub fn compatible(&self, other: &FinObj) -> bool {
        self.size == other.size
            && match (&self.labels, &other.labels) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }
}

impl fmt::Display for FinObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.size)?;
        if let Some(labels) = &self.labels {
            write!(f, "{{{}}}", labels.join(" "))?;
        }
        Ok(())
    }
}

// Labels never participate in equality, ordering, or hashing: the model's
// objects are bare finite sets and map equality must stay extensional.
impl PartialEq for FinObj {
    fn eq(&self, other: &FinObj) -> bool {
        self.size == other.size
    }
}
impl Eq for FinObj {}
impl PartialOrd for FinObj {
    fn partial_cmp(&self, other: &FinObj) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FinObj {
    fn cmp(&self, other: &FinObj) -> Ordering {
        self.size.cmp(&other.size)
    }
}
impl Hash for FinObj {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

/// An extensional partial function between finite carriers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialMap {
    dom: FinObj,
    cod: FinObj,
    table: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(dom: FinObj, cod: FinObj, table: Vec<Option<usize>>) -> Result<PartialMap> {
        if table.len() != dom.size() {
            return Err(Error::Invalid {
                context: "PartialMap::new",
                detail: format!(
                    "table length {} does not match domain size {}",
                    table.len(),
                    dom.size()
                ),
            });
        }
        for (x, entry) in table.iter().enumerate() {
            if let Some(y) = entry {
                if *y >= cod.size() {
                    return Err(Error::Invalid {
                        context: "PartialMap::new",
                        detail: format!("entry {x}↦{y} falls outside codomain of size {}", cod.size()),
                    });
                }
            }
        }
        Ok(PartialMap { dom, cod, table })
    }

    /// Build a map from `source -> target` index pairs; unlisted sources
    /// are undefined. A repeated source is rejected.
    pub fn from_entries(dom: FinObj, cod: FinObj, entries: &[(usize, usize)]) -> Result<PartialMap> {
        let mut table = vec![None; dom.size()];
        for &(x, y) in entries {
            if x >= dom.size() {
                return Err(Error::Invalid {
                    context: "PartialMap::from_entries",
                    detail: format!("source {x} outside domain of size {}", dom.size()),
                });
            }
            if table[x].is_some() {
                return Err(Error::Invalid {
                    context: "PartialMap::from_entries",
                    detail: format!("source {x} listed twice"),
                });
            }
            table[x] = Some(y);
        }
        PartialMap::new(dom, cod, table)
    }

    /// The nowhere-defined map.
    pub fn zero(dom: &FinObj, cod: &FinObj) -> PartialMap {
        PartialMap {
            table: vec![None; dom.size()],
            dom: dom.clone(),
            cod: cod.clone(),
        }
    }

    pub fn identity(obj: &FinObj) -> PartialMap {
        PartialMap {
            dom: obj.clone(),
            cod: obj.clone(),
            table: (0..obj.size()).map(Some).collect(),
        }
    }

    pub fn dom(&self) -> &FinObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinObj {
        &self.cod
    }

    pub fn table(&self) -> &[Option<usize>] {
        &self.table
    }

    /// Evaluate at a point of the carrier.
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.table[x]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.is_none())
    }

    /// Everywhere defined.
    pub fn is_total(&self) -> bool {
        self.table.iter().all(|e| e.is_some())
    }

    /// An endomorphism fixing every point where it is defined.
    pub fn is_rest_idem(&self) -> bool {
        self.dom.compatible(&self.cod)
            && self
                .table
                .iter()
                .enumerate()
                .all(|(x, e)| match e {
                    None => true,
                    Some(y) => *y == x,
                })
    }

    pub fn is_endo(&self) -> bool {
        self.dom.compatible(&self.cod)
    }

    /// Diagrammatic composition: `(f.compose(g))(x) = g(f(x))`.
    pub fn compose(&self, then: &PartialMap) -> Result<PartialMap> {
        if !self.cod.compatible(&then.dom) {
            return Err(shape_mismatch("compose", &self.cod, &then.dom));
        }
        let table = self
            .table
            .iter()
            .map(|e| e.and_then(|y| then.table[y]))
            .collect();
        Ok(PartialMap {
            dom: self.dom.clone(),
            cod: then.cod.clone(),
            table,
        })
    }

    /// The restriction idempotent `f̄`: defined exactly where `f` is, and
    /// the identity there.
    pub fn restriction(&self) -> RestIdem {
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(x, e)| e.map(|_| x))
            .collect();
        RestIdem(PartialMap {
            dom: self.dom.clone(),
            cod: self.dom.clone(),
            table,
        })
    }

    /// `f ≤ g`: wherever `f` is defined, `g` is defined and agrees.
    pub fn leq(&self, other: &PartialMap) -> Result<bool> {
        self.check_parallel("leq", other)?;
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .all(|(a, b)| match a {
                None => true,
                Some(v) => *b == Some(*v),
            }))
    }

    pub(crate) fn check_parallel(&self, context: &'static str, other: &PartialMap) -> Result<()> {
        if !self.dom.compatible(&other.dom) {
            return Err(shape_mismatch(context, &self.dom, &other.dom));
        }
        if !self.cod.compatible(&other.cod) {
            return Err(shape_mismatch(context, &self.cod, &other.cod));
        }
        Ok(())
    }

    /// Indices where the map is defined.
    pub fn domain_indices(&self) -> Vec<usize> {
        self.table
            .iter()
            .enumerate()
            .filter_map(|(x, e)| e.map(|_| x))
            .collect()
    }

    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|e| e.is_some()).count()
    }

    /// Bitmask of the domain of definition. Only valid for carriers of at
    /// most 64 elements, which covers every size the harness works at.
    pub fn domain_mask(&self) -> Result<u64> {
        if self.dom.size() > 64 {
            return Err(Error::Capacity {
                context: "domain_mask",
                detail: format!("carrier size {} exceeds 64", self.dom.size()),
            });
        }
        let mut mask = 0u64;
        for (x, e) in self.table.iter().enumerate() {
            if e.is_some() {
                mask |= 1 << x;
            }
        }
        Ok(mask)
    }

    /// Pointwise union of two parallel maps whose domains must not
    /// overlap. Overlapping definedness is an error naming the clash,
    /// never a silent overwrite.
    pub(crate) fn pointwise_union(&self, other: &PartialMap, context: &'static str) -> Result<PartialMap> {
        self.check_parallel(context, other)?;
        let mut table = Vec::with_capacity(self.table.len());
        for (x, (a, b)) in self.table.iter().zip(&other.table).enumerate() {
            table.push(match (a, b) {
                (Some(_), Some(_)) => {
                    return Err(Error::NotDisjoint {
                        context,
                        detail: format!("both maps are defined at element {}", self.describe_point(x)),
                    })
                }
                (Some(v), None) => Some(*v),
                (None, Some(v)) => Some(*v),
                (None, None) => None,
            });
        }
        Ok(PartialMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table,
        })
    }

    pub(crate) fn describe_point(&self, x: usize) -> String {
        match self.dom.label_of(x) {
            Some(l) => format!("{x} (`{l}`)"),
            None => x.to_string(),
        }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (x, e) in self.table.iter().enumerate() {
            if let Some(y) = e {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                match (self.dom.label_of(x), self.cod.label_of(*y)) {
                    (Some(a), Some(b)) => write!(f, "{a}↦{b}")?,
                    _ => write!(f, "{x}↦{y}")?,
                }
            }
        }
        write!(f, "}}: {} → {}", self.dom, self.cod)
    }
}

/// A restriction idempotent: an endomorphism equal to the identity
/// wherever it is defined, i.e. a subset of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RestIdem(PartialMap);

impl RestIdem {
    pub fn try_new(map: PartialMap) -> Result<RestIdem> {
        if !map.is_rest_idem() {
            return Err(Error::Invalid {
                context: "RestIdem::try_new",
                detail: format!("{map} is not a restriction idempotent"),
            });
        }
        Ok(RestIdem(map))
    }

    pub fn identity(obj: &FinObj) -> RestIdem {
        RestIdem(PartialMap::identity(obj))
    }

    pub fn zero(obj: &FinObj) -> RestIdem {
        RestIdem(PartialMap::zero(obj, obj))
    }

    pub fn from_subset(obj: &FinObj, members: &[usize]) -> Result<RestIdem> {
        let mut table = vec![None; obj.size()];
        for &x in members {
            if x >= obj.size() {
                return Err(Error::Invalid {
                    context: "RestIdem::from_subset",
                    detail: format!("element {x} outside carrier of size {}", obj.size()),
                });
            }
            table[x] = Some(x);
        }
        Ok(RestIdem(PartialMap {
            dom: obj.clone(),
            cod: obj.clone(),
            table,
        }))
    }

    pub fn from_mask(obj: &FinObj, mask: u64) -> Result<RestIdem> {
        if obj.size() < 64 && mask >> obj.size() != 0 {
            return Err(Error::Invalid {
                context: "RestIdem::from_mask",
                detail: format!("mask {mask:#b} outside carrier of size {}", obj.size()),
            });
        }
        let members: Vec<usize> = (0..obj.size()).filter(|x| mask & (1 << x) != 0).collect();
        RestIdem::from_subset(obj, &members)
    }

    pub fn obj(&self) -> &FinObj {
        self.0.dom()
    }

    pub fn mask(&self) -> Result<u64> {
        self.0.domain_mask()
    }

    pub fn as_map(&self) -> &PartialMap {
        &self.0
    }

    pub fn into_map(self) -> PartialMap {
        self.0
    }
}

impl std::ops::Deref for RestIdem {
    type Target = PartialMap;
    fn deref(&self) -> &PartialMap {
        &self.0
    }
}

impl fmt::Display for RestIdem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// ---------------------------------------------------------------------------
// JSON interchange: {"dom": n, "cod": m, "table": [null|int, …]} with
// optional "dom_labels"/"cod_labels". This encoding is shared by every
// other module and by the CLI.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MapJson {
    dom: usize,
    cod: usize,
    table: Vec<Option<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dom_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cod_labels: Option<Vec<String>>,
}

impl Serialize for PartialMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            dom: self.dom.size(),
            cod: self.cod.size(),
            table: self.table.clone(),
            dom_labels: self.dom.labels().map(|l| l.to_vec()),
            cod_labels: self.cod.labels().map(|l| l.to_vec()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartialMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MapJson::deserialize(deserializer)?;
        let mk_obj = |size: usize, labels: Option<Vec<String>>| -> Result<FinObj> {
            match labels {
                None => Ok(FinObj::of_size(size)),
                Some(l) => {
                    if l.len() != size {
                        return Err(Error::Invalid {
                            context: "PartialMap::deserialize",
                            detail: format!("{} labels for carrier of size {size}", l.len()),
                        });
                    }
                    FinObj::labeled(l)
                }
            }
        };
        let dom = mk_obj(raw.dom, raw.dom_labels).map_err(D::Error::custom)?;
        let cod = mk_obj(raw.cod, raw.cod_labels).map_err(D::Error::custom)?;
        PartialMap::new(dom, cod, raw.table).map_err(D::Error::custom)
    }
}

impl Serialize for RestIdem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RestIdem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = PartialMap::deserialize(deserializer)?;
        RestIdem::try_new(map).map_err(D::Error::custom)
    }
}
