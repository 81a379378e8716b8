//! Interference relations: which maps count as formally disjoint.
//!
//! A relation `⊥` declares pairs of maps with a common domain disjoint.
//! Two maps are related exactly when their restriction idempotents are,
//! so a relation is stored on idempotents (subsets of the carrier,
//! encoded as bitmasks). The axioms, checked exhaustively by
//! [`validate_interference`]:
//!
//! * `O⊥.0` zero: `1 ⊥ 0`;
//! * `O⊥.1` symmetry;
//! * `O⊥.2` anti-reflexivity: `e ⊥ e` forces `e = 0`;
//! * `O⊥.3` downward closure under `≤`;
//! * `O⊥.4` pre-composition: `e ⊥ e′` forces `he̅ ⊥ he̅′` for every map
//!   `h` into the object.
//!
//! Two relations always exist: the maximal one (disjoint domains of
//! definition) and the minimal one (some side is zero). Every validated
//! relation sits between them. Custom relations list extra idempotent
//! pairs per carrier size and must pass validation before use.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::{FinObj, PartialMap};

/// A disjointness relation on parallel-domain maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterferenceRel {
    /// `f ⊥ g` iff their domains of definition are disjoint.
    Maximal,
    /// `f ⊥ g` iff `f = 0` or `g = 0`.
    Minimal,
    /// Extra idempotent pairs on top of the minimal relation.
    Custom { rel: CustomRel, validated: bool },
}

/// The stored pairs of a custom relation: for each carrier size, a set of
/// unordered idempotent pairs given as domain bitmasks. Sizes without an
/// entry relate only zero pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "CustomRelJson", into = "CustomRelJson")]
pub struct CustomRel {
    components: BTreeMap<usize, BTreeSet<(u64, u64)>>,
}

impl CustomRel {
    pub fn new() -> CustomRel {
        CustomRel::default()
    }

    /// Add an unordered idempotent pair on the given carrier size.
    pub fn add_pair(&mut self, object_size: usize, a: u64, b: u64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.components
            .entry(object_size)
            .or_default()
            .insert((lo, hi));
    }

    pub fn component(&self, object_size: usize) -> Option<&BTreeSet<(u64, u64)>> {
        self.components.get(&object_size)
    }

    fn contains(&self, object_size: usize, a: u64, b: u64) -> bool {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.components
            .get(&object_size)
            .map(|set| set.contains(&(lo, hi)))
            .unwrap_or(false)
    }
}

/// JSON form: `{"object_size": n, "pairs": [[maskA, maskB], …]}`, or a
/// list of such components for relations spanning several carrier sizes.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CustomRelJson {
    One {
        object_size: usize,
        pairs: Vec<(u64, u64)>,
    },
    Many(Vec<ComponentJson>),
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    object_size: usize,
    pairs: Vec<(u64, u64)>,
}

impl From<CustomRelJson> for CustomRel {
    fn from(json: CustomRelJson) -> CustomRel {
        let mut rel = CustomRel::new();
        match json {
            CustomRelJson::One { object_size, pairs } => {
                for (a, b) in pairs {
                    rel.add_pair(object_size, a, b);
                }
            }
            CustomRelJson::Many(components) => {
                for c in components {
                    for (a, b) in c.pairs {
                        rel.add_pair(c.object_size, a, b);
                    }
                }
            }
        }
        rel
    }
}

impl From<CustomRel> for CustomRelJson {
    fn from(rel: CustomRel) -> CustomRelJson {
        let components: Vec<ComponentJson> = rel
            .components
            .into_iter()
            .map(|(object_size, pairs)| ComponentJson {
                object_size,
                pairs: pairs.into_iter().collect(),
            })
            .collect();
        match <[_; 1]>::try_from(components) {
            Ok([only]) => CustomRelJson::One {
                object_size: only.object_size,
                pairs: only.pairs,
            },
            Err(components) => CustomRelJson::Many(components),
        }
    }
}

/// Exhaustive validation cap: `O⊥.4` quantifies over all maps into the
/// object, so past this bound validation is refused rather than sampled.
pub const VALIDATION_BOUND_CAP: usize = 12;

/// Outcome of validating a relation up to a carrier-size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub bound: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// The first violated axiom, with a witness that replays the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// One of `O⊥.0` … `O⊥.4`.
    pub axiom: &'static str,
    pub object_size: usize,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] violated on carrier of size {}: {}",
            self.axiom, self.object_size, self.witness
        )
    }
}

impl InterferenceRel {
    pub fn maximal() -> InterferenceRel {
        InterferenceRel::Maximal
    }

    pub fn minimal() -> InterferenceRel {
        InterferenceRel::Minimal
    }

    /// Wrap a custom relation after validating it up to `bound`.
    pub fn custom(rel: CustomRel, bound: usize) -> Result<InterferenceRel> {
        let candidate = InterferenceRel::Custom {
            rel,
            validated: false,
        };
        let report = validate_interference(&candidate, bound)?;
        match report.violation {
            None => match candidate {
                InterferenceRel::Custom { rel, .. } => Ok(InterferenceRel::Custom { rel, validated: true }),
                _ => unreachable!(),
            },
            Some(v) => Err(Error::Precondition {
                context: "InterferenceRel::custom",
                detail: v.to_string(),
            }),
        }
    }

    /// Wrap without validating. Such a relation can be inspected and
    /// validated but refuses to drive `perp`/`join`.
    pub fn custom_unchecked(rel: CustomRel) -> InterferenceRel {
        InterferenceRel::Custom {
            rel,
            validated: false,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            InterferenceRel::Maximal => "maximal",
            InterferenceRel::Minimal => "minimal",
            InterferenceRel::Custom { .. } => "custom",
        }
    }

    fn ensure_usable(&self) -> Result<()> {
        if let InterferenceRel::Custom { validated: false, .. } = self {
            return Err(Error::Precondition {
                context: "interference",
                detail: "custom relation has not passed validation".into(),
            });
        }
        Ok(())
    }

    /// The relation on restriction idempotents, as domain bitmasks.
    pub(crate) fn perp_idem(&self, object_size: usize, a: u64, b: u64) -> bool {
        match self {
            InterferenceRel::Maximal => a & b == 0,
            InterferenceRel::Minimal => a == 0 || b == 0,
            InterferenceRel::Custom { rel, .. } => {
                a == 0 || b == 0 || rel.contains(object_size, a, b)
            }
        }
    }

    /// `f ⊥ g` for maps sharing a domain: disjointness of maps is
    /// disjointness of their restrictions.
    pub fn perp(&self, f: &PartialMap, g: &PartialMap) -> Result<bool> {
        self.ensure_usable()?;
        if !f.dom().compatible(g.dom()) {
            return Err(shape_mismatch("perp", f.dom(), g.dom()));
        }
        match self {
            InterferenceRel::Maximal => Ok(f
                .table()
                .iter()
                .zip(g.table())
                .all(|(a, b)| a.is_none() || b.is_none())),
            InterferenceRel::Minimal => Ok(f.is_zero() || g.is_zero()),
            InterferenceRel::Custom { .. } => {
                let a = f.domain_mask()?;
                let b = g.domain_mask()?;
                Ok(self.perp_idem(f.dom().size(), a, b))
            }
        }
    }

    /// Witness for a failed disjointness check, for error messages.
    pub(crate) fn describe_clash(&self, f: &PartialMap, g: &PartialMap) -> String {
        if let Some(x) = f
            .table()
            .iter()
            .zip(g.table())
            .position(|(a, b)| a.is_some() && b.is_some())
        {
            return format!("both defined at element {}", f.describe_point(x));
        }
        format!("{} relation does not relate {f} and {g}", self.describe())
    }

    /// The least upper bound of a pairwise-disjoint family: the pointwise
    /// union. The empty family joins to the zero map.
    pub fn join(&self, family: &DisjointFamily) -> Result<PartialMap> {
        self.ensure_usable()?;
        family.check_pairwise(self)?;
        let mut acc = PartialMap::zero(family.dom(), family.cod());
        for member in family.members() {
            acc = acc.pointwise_union(member, "join")?;
        }
        Ok(acc)
    }

    /// Convenience: build the family and join it in one step.
    pub fn join_maps(&self, dom: &FinObj, cod: &FinObj, maps: &[PartialMap]) -> Result<PartialMap> {
        let family = DisjointFamily::new(self, dom, cod, maps.to_vec())?;
        self.join(&family)
    }

    /// Strength of a join: given that every member is disjoint from `h`,
    /// is the join itself disjoint from `h`?
    pub fn is_strong_join(&self, family: &DisjointFamily, h: &PartialMap) -> Result<bool> {
        self.ensure_usable()?;
        for member in family.members() {
            if !self.perp(member, h)? {
                return Err(Error::Precondition {
                    context: "is_strong_join",
                    detail: format!("family member {member} is not disjoint from {h}"),
                });
            }
        }
        let joined = self.join(family)?;
        self.perp(&joined, h)
    }
}

/// A finite sequence of parallel maps, pairwise disjoint under the
/// relation it was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointFamily {
    dom: FinObj,
    cod: FinObj,
    members: Vec<PartialMap>,
}

impl DisjointFamily {
    pub fn new(
        rel: &InterferenceRel,
        dom: &FinObj,
        cod: &FinObj,
        members: Vec<PartialMap>,
    ) -> Result<DisjointFamily> {
        for m in &members {
            if !m.dom().compatible(dom) {
                return Err(shape_mismatch("DisjointFamily::new", m.dom(), dom));
            }
            if !m.cod().compatible(cod) {
                return Err(shape_mismatch("DisjointFamily::new", m.cod(), cod));
            }
        }
        let family = DisjointFamily {
            dom: dom.clone(),
            cod: cod.clone(),
            members,
        };
        family.check_pairwise(rel)?;
        Ok(family)
    }

    fn check_pairwise(&self, rel: &InterferenceRel) -> Result<()> {
        for (i, f) in self.members.iter().enumerate() {
            for g in &self.members[i + 1..] {
                if !rel.perp(f, g)? {
                    return Err(Error::NotDisjoint {
                        context: "DisjointFamily",
                        detail: format!("members {i} and later clash: {}", rel.describe_clash(f, g)),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dom(&self) -> &FinObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinObj {
        &self.cod
    }

    pub fn members(&self) -> &[PartialMap] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Validate the interference axioms `O⊥.0`–`O⊥.4` on every carrier size
/// up to `bound`, returning the first violation found (axioms checked in
/// order, sizes ascending, pairs in mask order).
pub fn validate_interference(rel: &InterferenceRel, bound: usize) -> Result<ValidationReport> {
    if bound > VALIDATION_BOUND_CAP {
        return Err(Error::Capacity {
            context: "validate_interference",
            detail: format!("bound {bound} exceeds exhaustive cap {VALIDATION_BOUND_CAP}"),
        });
    }

    for axiom in 0..=4 {
        if let Some(violation) = validate_axiom(rel, axiom, bound)? {
            return Ok(ValidationReport {
                bound,
                violation: Some(violation),
            });
        }
    }
    Ok(ValidationReport {
        bound,
        violation: None,
    })
}

/// Check a single axiom `O⊥.{index}` up to the bound.
pub fn validate_axiom(
    rel: &InterferenceRel,
    index: usize,
    bound: usize,
) -> Result<Option<Violation>> {
    if bound > VALIDATION_BOUND_CAP {
        return Err(Error::Capacity {
            context: "validate_axiom",
            detail: format!("bound {bound} exceeds exhaustive cap {VALIDATION_BOUND_CAP}"),
        });
    }
    let checker = match index {
        0 => check_zero,
        1 => check_symmetry,
        2 => check_antireflexive,
        3 => check_downward,
        4 => check_precomposition,
        _ => {
            return Err(Error::Invalid {
                context: "validate_axiom",
                detail: format!("no axiom O⊥.{index}"),
            })
        }
    };
    Ok(checker(rel, bound))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn related_pairs(rel: &InterferenceRel, n: usize) -> Vec<(u64, u64)> {
    let span = 1u64 << n;
    let mut out = Vec::new();
    for a in 0..span {
        for b in 0..span {
            if rel.perp_idem(n, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn check_zero(rel: &InterferenceRel, bound: usize) -> Option<Violation> {
    (0..=bound).find_map(|n| {
        if rel.perp_idem(n, full_mask(n), 0) {
            None
        } else {
            Some(Violation {
                axiom: "O⊥.0",
                object_size: n,
                witness: format!("identity mask {:#b} not related to 0", full_mask(n)),
            })
        }
    })
}

fn check_symmetry(rel: &InterferenceRel, bound: usize) -> Option<Violation> {
    for n in 0..=bound {
        for (a, b) in related_pairs(rel, n) {
            if !rel.perp_idem(n, b, a) {
                return Some(Violation {
                    axiom: "O⊥.1",
                    object_size: n,
                    witness: format!("({a:#b}, {b:#b}) related but ({b:#b}, {a:#b}) is not"),
                });
            }
        }
    }
    None
}

fn check_antireflexive(rel: &InterferenceRel, bound: usize) -> Option<Violation> {
    for n in 0..=bound {
        for e in 0..(1u64 << n) {
            if e != 0 && rel.perp_idem(n, e, e) {
                return Some(Violation {
                    axiom: "O⊥.2",
                    object_size: n,
                    witness: format!("non-zero idempotent {e:#b} related to itself"),
                });
            }
        }
    }
    None
}

fn check_downward(rel: &InterferenceRel, bound: usize) -> Option<Violation> {
    for n in 0..=bound {
        for (a, b) in related_pairs(rel, n) {
            // enumerate sub-masks of a and b
            let mut p = a;
            loop {
                let mut q = b;
                loop {
                    if !rel.perp_idem(n, p, q) {
                        return Some(Violation {
                            axiom: "O⊥.3",
                            object_size: n,
                            witness: format!(
                                "({a:#b}, {b:#b}) related but sub-pair ({p:#b}, {q:#b}) is not"
                            ),
                        });
                    }
                    if q == 0 {
                        break;
                    }
                    q = (q - 1) & b;
                }
                if p == 0 {
                    break;
                }
                p = (p - 1) & a;
            }
        }
    }
    None
}

/// Pre-composition closure. For `e ⊥ e′` on carrier `A` and a map
/// `h: A′ → A`, the induced pair is `(h⁻¹(e), h⁻¹(e′))`. A pair of
/// subsets `(P, Q)` of `A′` arises this way exactly when each region of
/// its Venn diagram is inhabited only if the matching region of
/// `(e, e′)` is. Only those three occupancy bits matter, so distinct
/// related pairs with the same pattern are checked once.
fn check_precomposition(rel: &InterferenceRel, bound: usize) -> Option<Violation> {
    for n in 0..=bound {
        let mut pattern_witness: BTreeMap<(bool, bool, bool), (u64, u64)> = BTreeMap::new();
        for (a, b) in related_pairs(rel, n) {
            let pat = (a & b != 0, a & !b != 0, b & !a != 0);
            pattern_witness.entry(pat).or_insert((a, b));
        }
        for (&(both, only_a, only_b), &(a, b)) in &pattern_witness {
            for source in 0..=bound {
                let span = 1u64 << source;
                for p in 0..span {
                    for q in 0..span {
                        let achievable = (p & q == 0 || both)
                            && (p & !q == 0 || only_a)
                            && (q & !p == 0 || only_b);
                        if achievable && !rel.perp_idem(source, p, q) {
                            return Some(Violation {
                                axiom: "O⊥.4",
                                object_size: n,
                                witness: format!(
                                    "({a:#b}, {b:#b}) related on size {n}, but the pre-composition \
                                     image ({p:#b}, {q:#b}) on size {source} is not related"
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
