//! The law registry.
//!
//! Each entry names one algebraic fact and knows how to generate and
//! check cases for it. Identifiers follow the axiom families:
//!
//! | family | ids |
//! |--------|-----|
//! | restriction | `R.1`–`R.4` |
//! | interference (maps) | `⊥.0`–`⊥.5` |
//! | interference (idempotents) | `O⊥.0`–`O⊥.4` |
//! | joins | `⊔.1`–`⊔.4`, `⊔.dom`, `⊔.rest`, `⊔.comp` |
//! | iteration | `⩚.1`–`⩚.4`, `Alt⩚.1`–`Alt⩚.3`, `⩚.l54`, `⩚.unroll`, `⩚.oracle`, `⩚.uniform`, `⩚.lax`, `⩚.colax`, `⩚.inductive`, `⩚.delta` |
//! | complements and star | `\.1`, `\.2`, `⋆.1`–`⋆.3`, `⋆.bij` |
//! | join completion | `DJ.R`, `DJ.⊥`, `DJ.⊔`, `DJ.embed`, `DJ.canon` |
//! | matrix completion | `MAT.R`, `D.1`, `D.2`, `d.idem`, `Dec.iso`, `Dec.sep`, `Dec.nary`, `MAT.join` |
//! | trace | `Trace.Tightening`, `Trace.Sliding`, `Trace.Vanishing`, `Trace.Superposing`, `Trace.Yanking`, `Trace.Uniform`, `Iter.1`–`Iter.4`, `Iter.bij`, `Trace.closed` |
//!
//! ASCII aliases (`wand.1`, `join.3`, `star.bij`, bare `Yanking`, …) are
//! accepted everywhere a law id is.

use std::sync::OnceLock;

use serde::Serialize;

use crate::djcomp::DjMap;
use crate::error::{Error, Result};
use crate::finpar::{FinObj, PartialMap};
use crate::interference::{validate_axiom, DisjointFamily, InterferenceRel};
use crate::lawlab::gen::*;
use crate::lawlab::oracle::step_simulate;
use crate::lawlab::report::{Counterexample, LawReport, LawStatus};
use crate::lawlab::rng::{Rng, Seed};
use crate::matext::{
    codiagonal, decision_of, injection, nary_separating_decision, quasi_projection,
    separating_decision, symmetry, MatObj, Matrix,
};
use crate::trace::{
    iter_from_trace, iterate_with, mat_wand, trace2_closed, trace2_copairing, trace2_with,
    trace_n_with, wand_from_iter,
};
use crate::wand::{
    complement, kleene_wand, kleene_wand0, relative_complement, star_to_wand, wand_to_star,
};

/// How to drive a law.
#[derive(Clone, Copy, Debug)]
pub enum RunMode {
    /// Run case indices `0..cases`, each on its own split of the seed.
    Seeded { seed: u64, cases: u64 },
    /// Replay exactly one case index.
    Single { seed: u64, case: u64 },
    /// Enumerate every input at the law's exhaustive scale.
    Exhaustive,
}

/// Which built-in relation parameterizes the relation-generic laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelChoice {
    Maximal,
    Minimal,
}

/// Size bounds for generated cases.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Largest carrier size for plain objects (and matrix parts).
    pub max_x: usize,
    /// Largest carrier size for auxiliary codomains.
    pub max_a: usize,
    /// Largest number of parts in a generated object list.
    pub max_parts: usize,
    pub rel: RelChoice,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_x: 4,
            max_a: 3,
            max_parts: 2,
            rel: RelChoice::Maximal,
        }
    }
}

impl Bounds {
    pub fn with_rel(mut self, rel: RelChoice) -> Bounds {
        self.rel = rel;
        self
    }

    fn rel(&self) -> InterferenceRel {
        match self.rel {
            RelChoice::Maximal => InterferenceRel::maximal(),
            RelChoice::Minimal => InterferenceRel::minimal(),
        }
    }
}

/// Deliberately wrong operator variants, used to show the laws can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The honest operators.
    None,
    /// Iteration that returns the exit map unchanged (never loops).
    WandGuardOnly,
    /// Iteration that returns the zero map.
    WandZero,
}

impl Mutation {
    fn base_wand(self) -> impl Fn(&PartialMap, &PartialMap) -> Result<PartialMap> {
        move |body, exit| match self {
            Mutation::None => kleene_wand0(body, exit),
            Mutation::WandGuardOnly => Ok(exit.clone()),
            Mutation::WandZero => Ok(PartialMap::zero(body.dom(), exit.cod())),
        }
    }

    fn matrix_wand(self) -> impl Fn(&Matrix, &Matrix) -> Result<Matrix> {
        move |body, exit| match self {
            Mutation::None => mat_wand(body, exit),
            Mutation::WandGuardOnly => Ok(exit.clone()),
            Mutation::WandZero => Ok(Matrix::zero(body.dom(), exit.cod())),
        }
    }
}

type CheckFn = Box<dyn Fn(&mut Rng, &Bounds, Mutation) -> Result<Option<String>> + Send + Sync>;
type ExhaustFn = Box<dyn Fn(&Bounds, Mutation) -> Result<(u64, Option<String>)> + Send + Sync>;

struct Law {
    id: &'static str,
    about: &'static str,
    /// Deterministic laws ignore the case stream; one case suffices.
    deterministic: bool,
    check: CheckFn,
    exhaustive: Option<ExhaustFn>,
}

/// Run a registered law.
pub fn run_law(id: &str, mode: RunMode, bounds: &Bounds) -> Result<LawReport> {
    run_law_mutated(id, mode, bounds, Mutation::None)
}

/// Run a registered law against a (possibly mutated) operator set.
pub fn run_law_mutated(
    id: &str,
    mode: RunMode,
    bounds: &Bounds,
    mutation: Mutation,
) -> Result<LawReport> {
    let canonical = resolve_law_id(id).ok_or_else(|| Error::UnknownLaw(id.to_string()))?;
    let law = registry()
        .iter()
        .find(|l| l.id == canonical)
        .expect("resolved ids are registered");

    let report = |seed: u64, cases: u64, counterexample: Option<Counterexample>| LawReport {
        law: canonical.to_string(),
        seed,
        cases,
        status: if counterexample.is_none() {
            LawStatus::Pass
        } else {
            LawStatus::Fail
        },
        counterexample,
    };

    match mode {
        RunMode::Seeded { seed, cases } => {
            let total = if law.deterministic { cases.min(1) } else { cases };
            for case in 0..total {
                let mut rng = Rng::new(Seed(seed).split(case));
                match (law.check)(&mut rng, bounds, mutation) {
                    Ok(None) => {}
                    Ok(Some(detail)) => {
                        return Ok(report(seed, case + 1, Some(Counterexample { case, detail })))
                    }
                    Err(err) => {
                        return Ok(report(
                            seed,
                            case + 1,
                            Some(Counterexample {
                                case,
                                detail: format!("operation failed: {err}"),
                            }),
                        ))
                    }
                }
            }
            Ok(report(seed, total, None))
        }
        RunMode::Single { seed, case } => {
            let mut rng = Rng::new(Seed(seed).split(case));
            let counterexample = match (law.check)(&mut rng, bounds, mutation) {
                Ok(None) => None,
                Ok(Some(detail)) => Some(Counterexample { case, detail }),
                Err(err) => Some(Counterexample {
                    case,
                    detail: format!("operation failed: {err}"),
                }),
            };
            Ok(report(seed, 1, counterexample))
        }
        RunMode::Exhaustive => {
            let runner = law.exhaustive.as_ref().ok_or_else(|| Error::Precondition {
                context: "run_law",
                detail: format!("law {canonical} has no exhaustive mode"),
            })?;
            let (cases, failure) = runner(bounds, mutation)?;
            Ok(report(
                0,
                cases,
                failure.map(|detail| Counterexample { case: 0, detail }),
            ))
        }
    }
}

/// All canonical law ids, in registry order.
pub fn law_ids() -> Vec<&'static str> {
    registry().iter().map(|l| l.id).collect()
}

/// Canonical ids with their one-line descriptions.
pub fn law_descriptions() -> Vec<(&'static str, &'static str)> {
    registry().iter().map(|l| (l.id, l.about)).collect()
}

/// Resolve a law id or alias to its canonical form.
pub fn resolve_law_id(id: &str) -> Option<&'static str> {
    let reg = registry();
    if let Some(law) = reg.iter().find(|l| l.id == id) {
        return Some(law.id);
    }
    let lowered = id.to_lowercase();
    for law in reg {
        // family aliases: ⊥→rel, O⊥→orel, ⊔→join, ⩚→wand, Alt⩚→altwand,
        // ⋆→star, \→relcomp
        let ascii = law
            .id
            .replace("Alt⩚", "altwand")
            .replace('⩚', "wand")
            .replace("O⊥", "orel")
            .replace('⊥', "rel")
            .replace('⊔', "join")
            .replace('⋆', "star")
            .replace('\\', "relcomp");
        if ascii.to_lowercase() == lowered {
            return Some(law.id);
        }
        if let Some(bare) = law.id.strip_prefix("Trace.") {
            if bare.to_lowercase() == lowered {
                return Some(law.id);
            }
        }
        if law.id.to_lowercase() == lowered {
            return Some(law.id);
        }
    }
    None
}

fn j<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|_| "<unencodable>".into())
}

fn ne_maps(label: &str, lhs: &PartialMap, rhs: &PartialMap, inputs: String) -> Option<String> {
    (lhs != rhs).then(|| format!("{label}: lhs = {} ≠ rhs = {}; inputs: {inputs}", j(lhs), j(rhs)))
}

fn ne_mats(label: &str, lhs: &Matrix, rhs: &Matrix, inputs: String) -> Option<String> {
    (lhs != rhs).then(|| format!("{label}: lhs = {} ≠ rhs = {}; inputs: {inputs}", j(lhs), j(rhs)))
}

fn rand_obj(rng: &mut Rng, max: usize) -> FinObj {
    FinObj::of_size(rng.range(0, max))
}

fn rand_obj_nonempty(rng: &mut Rng, max: usize) -> FinObj {
    FinObj::of_size(rng.range(1, max.max(1)))
}

fn rand_density(rng: &mut Rng) -> f64 {
    0.25 + 0.15 * rng.below(5) as f64
}

/// A pair `f: X → B`, `g: X → C` disjoint under the chosen relation.
fn gen_perp_pair(
    rng: &mut Rng,
    rel: RelChoice,
    x: &FinObj,
    b: &FinObj,
    c: &FinObj,
) -> (PartialMap, PartialMap) {
    match rel {
        RelChoice::Maximal => {
            let mut ft = vec![None; x.size()];
            let mut gt = vec![None; x.size()];
            for i in 0..x.size() {
                match rng.below(3) {
                    0 if b.size() > 0 => ft[i] = Some(rng.below(b.size())),
                    1 if c.size() > 0 => gt[i] = Some(rng.below(c.size())),
                    _ => {}
                }
            }
            (
                PartialMap::new(x.clone(), b.clone(), ft).expect("valid table"),
                PartialMap::new(x.clone(), c.clone(), gt).expect("valid table"),
            )
        }
        RelChoice::Minimal => {
            let d = rand_density(rng);
            if rng.chance(0.5) {
                (PartialMap::zero(x, b), gen_partial_map(rng, x, c, d))
            } else {
                (gen_partial_map(rng, x, b, d), PartialMap::zero(x, c))
            }
        }
    }
}

/// Endomorphisms `f, f'` and an exit `g`, pairwise maximal-disjoint.
fn gen_disjoint_triple(
    rng: &mut Rng,
    x: &FinObj,
    a: &FinObj,
) -> (PartialMap, PartialMap, PartialMap) {
    let mut ft = vec![None; x.size()];
    let mut f2t = vec![None; x.size()];
    let mut gt = vec![None; x.size()];
    for i in 0..x.size() {
        match rng.below(4) {
            0 if x.size() > 0 => ft[i] = Some(rng.below(x.size())),
            1 if x.size() > 0 => f2t[i] = Some(rng.below(x.size())),
            2 if a.size() > 0 => gt[i] = Some(rng.below(a.size())),
            _ => {}
        }
    }
    (
        PartialMap::new(x.clone(), x.clone(), ft).expect("valid table"),
        PartialMap::new(x.clone(), x.clone(), f2t).expect("valid table"),
        PartialMap::new(x.clone(), a.clone(), gt).expect("valid table"),
    )
}

/// A random completion map with up to `max_gens` generators.
fn gen_dj(rng: &mut Rng, dom: &FinObj, cod: &FinObj, max_gens: usize) -> DjMap {
    let k = rng.range(1, max_gens.max(1));
    let family = gen_disjoint_family(rng, dom, cod, k);
    DjMap::new(&InterferenceRel::maximal(), dom, cod, family)
        .expect("partitioned family is disjoint")
}

/// A map below `of` in the completion order: keep a sub-family of
/// shrunken generators.
fn gen_sub_dj(rng: &mut Rng, of: &DjMap) -> DjMap {
    let mut gens: Vec<PartialMap> = Vec::new();
    for g in of.gens() {
        if rng.chance(0.7) {
            gens.push(gen_submap(rng, g, 0.7));
        }
    }
    DjMap::new(&InterferenceRel::maximal(), of.dom(), of.cod(), gens)
        .expect("sub-generators stay disjoint")
}

/// `k` parallel matrices with pointwise pairwise-disjoint entries.
fn gen_parallel_disjoint_matrices(
    rng: &mut Rng,
    dom: &MatObj,
    cod: &MatObj,
    k: usize,
) -> Vec<Matrix> {
    let mut tables: Vec<Vec<Vec<Vec<Option<usize>>>>> = (0..k)
        .map(|_| {
            dom.parts()
                .iter()
                .map(|p| cod.parts().iter().map(|_| vec![None; p.size()]).collect())
                .collect()
        })
        .collect();
    for (i, part) in dom.parts().iter().enumerate() {
        for x in 0..part.size() {
            let owner = rng.below(k + 1);
            if owner < k && cod.len() > 0 {
                let col = rng.below(cod.len());
                let t = cod.parts()[col].size();
                if t > 0 {
                    tables[owner][i][col][x] = Some(rng.below(t));
                }
            }
        }
    }
    tables
        .into_iter()
        .map(|rows| {
            Matrix::from_fn(dom.clone(), cod.clone(), |i, jx| {
                PartialMap::new(
                    dom.parts()[i].clone(),
                    cod.parts()[jx].clone(),
                    rows[i][jx].clone(),
                )
            })
            .expect("partitioned matrices are row-disjoint")
        })
        .collect()
}

/// Lift `f'` through total surjections: a map `f` with
/// `f;h_cod = h_dom;f'`, picking preimages at random.
fn lift_through(
    rng: &mut Rng,
    h_dom: &PartialMap,
    h_cod: &PartialMap,
    f_prime: &PartialMap,
) -> PartialMap {
    let n = h_dom.dom().size();
    let mut table = vec![None; n];
    for x in 0..n {
        let y = h_dom.apply(x).expect("h is total");
        if let Some(y2) = f_prime.apply(y) {
            let preimages: Vec<usize> = (0..h_cod.dom().size())
                .filter(|&c| h_cod.apply(c) == Some(y2))
                .collect();
            table[x] = Some(preimages[rng.below(preimages.len())]);
        }
    }
    PartialMap::new(h_dom.dom().clone(), h_cod.dom().clone(), table).expect("lift is valid")
}

/// A commuting square for uniformity: total surjection `h: X → Y`,
/// a disjoint pair on `Y`, and its lift `(f, g)` on `X` with
/// `f;h = h;f'` and `g = h;g'`.
struct UniformSquare {
    h: PartialMap,
    f: PartialMap,
    g: PartialMap,
    f_prime: PartialMap,
    g_prime: PartialMap,
}

fn gen_uniform_square(rng: &mut Rng, bounds: &Bounds) -> UniformSquare {
    let y = rand_obj_nonempty(rng, bounds.max_x);
    let x = FinObj::of_size(rng.range(y.size(), bounds.max_x.max(y.size())));
    let a = rand_obj(rng, bounds.max_a);
    let h = gen_surjection(rng, &x, &y).expect("|X| ≥ |Y|");
    let (f_prime, g_prime) = gen_disjoint_pair(rng, &y, &a);
    let f = lift_through(rng, &h, &h, &f_prime);
    let g = h.compose(&g_prime).expect("h;g' composes");
    debug_assert_eq!(f.compose(&h).unwrap(), h.compose(&f_prime).unwrap());
    UniformSquare {
        h,
        f,
        g,
        f_prime,
        g_prime,
    }
}

fn registry() -> &'static Vec<Law> {
    static REGISTRY: OnceLock<Vec<Law>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

fn law(
    id: &'static str,
    about: &'static str,
    check: impl Fn(&mut Rng, &Bounds, Mutation) -> Result<Option<String>> + Send + Sync + 'static,
) -> Law {
    Law {
        id,
        about,
        deterministic: false,
        check: Box::new(check),
        exhaustive: None,
    }
}

fn law_det(
    id: &'static str,
    about: &'static str,
    check: impl Fn(&mut Rng, &Bounds, Mutation) -> Result<Option<String>> + Send + Sync + 'static,
) -> Law {
    Law {
        id,
        about,
        deterministic: true,
        check: Box::new(check),
        exhaustive: None,
    }
}

fn with_exhaustive(
    mut law: Law,
    runner: impl Fn(&Bounds, Mutation) -> Result<(u64, Option<String>)> + Send + Sync + 'static,
) -> Law {
    law.exhaustive = Some(Box::new(runner));
    law
}

fn build_registry() -> Vec<Law> {
    let mut laws: Vec<Law> = Vec::new();

    // ----- restriction axioms -------------------------------------------

    for (idx, about) in [
        ("R.1", "f̄;f = f"),
        ("R.2", "f̄;ḡ = ḡ;f̄"),
        ("R.3", "(ḡ;f)‾ = ḡ;f̄"),
        ("R.4", "f;ḡ = (f;g)‾;f"),
    ] {
        let which = idx.as_bytes()[2] - b'1';
        laws.push(with_exhaustive(
            law(idx, about, move |rng, bounds, _| {
                let a = rand_obj(rng, bounds.max_x);
                let b = rand_obj(rng, bounds.max_x);
                let c = rand_obj(rng, bounds.max_x);
                let d = rand_density(rng);
                let f = gen_partial_map(rng, &a, &b, d);
                let g = match which {
                    3 => gen_partial_map(rng, &b, &c, d),
                    _ => gen_partial_map(rng, &a, &c, d),
                };
                Ok(check_r_law(which, &f, &g))
            }),
            move |bounds, _| {
                let cap = bounds.max_x.min(3);
                let mut cases = 0u64;
                for sa in 0..=cap {
                    for sb in 0..=cap {
                        for sc in 0..=cap {
                            let a = FinObj::of_size(sa);
                            let b = FinObj::of_size(sb);
                            let c = FinObj::of_size(sc);
                            let fs = enumerate_maps(&a, &b)?;
                            let gs = match which {
                                3 => enumerate_maps(&b, &c)?,
                                _ => enumerate_maps(&a, &c)?,
                            };
                            for f in &fs {
                                for g in &gs {
                                    cases += 1;
                                    if let Some(cx) = check_r_law(which, f, g) {
                                        return Ok((cases, Some(cx)));
                                    }
                                }
                            }
                        }
                    }
                }
                Ok((cases, None))
            },
        ));
    }

    // ----- interference axioms on maps ----------------------------------

    laws.push(law("⊥.0", "1 ⊥ 0", |rng, bounds, _| {
        let a = rand_obj(rng, bounds.max_x);
        let rel = bounds.rel();
        let id = PartialMap::identity(&a);
        let zero = PartialMap::zero(&a, &a);
        Ok((!rel.perp(&id, &zero)?).then(|| format!("1 ⊥ 0 fails on {a}")))
    }));

    laws.push(law("⊥.1", "f ⊥ g iff g ⊥ f", |rng, bounds, _| {
        let x = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let c = rand_obj(rng, bounds.max_a);
        let rel = bounds.rel();
        let d = rand_density(rng);
        let f = gen_partial_map(rng, &x, &b, d);
        let g = gen_partial_map(rng, &x, &c, d);
        Ok((rel.perp(&f, &g)? != rel.perp(&g, &f)?)
            .then(|| format!("symmetry fails: f = {}, g = {}", j(&f), j(&g))))
    }));

    laws.push(law("⊥.2", "f ⊥ f iff f = 0", |rng, bounds, _| {
        let x = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let rel = bounds.rel();
        let d = rand_density(rng);
        let f = gen_partial_map(rng, &x, &b, d);
        Ok((rel.perp(&f, &f)? != f.is_zero())
            .then(|| format!("anti-reflexivity fails: f = {}", j(&f))))
    }));

    laws.push(law("⊥.3", "downward closure", |rng, bounds, _| {
        let x = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let c = rand_obj(rng, bounds.max_a);
        let rel = bounds.rel();
        let (fp, gp) = gen_perp_pair(rng, bounds.rel, &x, &b, &c);
        let f = gen_submap(rng, &fp, 0.6);
        let g = gen_submap(rng, &gp, 0.6);
        Ok((!rel.perp(&f, &g)?).then(|| {
            format!(
                "downward closure fails: f' = {}, g' = {}, f = {}, g = {}",
                j(&fp),
                j(&gp),
                j(&f),
                j(&g)
            )
        }))
    }));

    laws.push(law("⊥.4", "h;f;k ⊥ h;g;k'", |rng, bounds, _| {
        let x = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let c = rand_obj(rng, bounds.max_a);
        let a2 = rand_obj(rng, bounds.max_x);
        let b2 = rand_obj(rng, bounds.max_a);
        let c2 = rand_obj(rng, bounds.max_a);
        let rel = bounds.rel();
        let (f, g) = gen_perp_pair(rng, bounds.rel, &x, &b, &c);
        let d = rand_density(rng);
        let h = gen_partial_map(rng, &a2, &x, d);
        let k = gen_partial_map(rng, &b, &b2, d);
        let k2 = gen_partial_map(rng, &c, &c2, d);
        let lhs = h.compose(&f)?.compose(&k)?;
        let rhs = h.compose(&g)?.compose(&k2)?;
        Ok((!rel.perp(&lhs, &rhs)?).then(|| {
            format!(
                "composition closure fails: f = {}, g = {}, h = {}, k = {}, k' = {}",
                j(&f),
                j(&g),
                j(&h),
                j(&k),
                j(&k2)
            )
        }))
    }));

    laws.push(law("⊥.5", "f ⊥ g iff f̄ ⊥ ḡ", |rng, bounds, _| {
        let x = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let c = rand_obj(rng, bounds.max_a);
        let rel = bounds.rel();
        let d = rand_density(rng);
        let f = gen_partial_map(rng, &x, &b, d);
        let g = gen_partial_map(rng, &x, &c, d);
        let on_maps = rel.perp(&f, &g)?;
        let on_idems = rel.perp(f.restriction().as_map(), g.restriction().as_map())?;
        Ok((on_maps != on_idems)
            .then(|| format!("restriction closure fails: f = {}, g = {}", j(&f), j(&g))))
    }));

    // ----- interference axioms on idempotents (exhaustive validators) ---

    for (id, about, axiom) in [
        ("O⊥.0", "zero axiom on idempotents", 0usize),
        ("O⊥.1", "symmetry on idempotents", 1),
        ("O⊥.2", "anti-reflexivity on idempotents", 2),
        ("O⊥.3", "downward closure on idempotents", 3),
        ("O⊥.4", "pre-composition closure on idempotents", 4),
    ] {
        laws.push(law_det(id, about, move |_, bounds, _| {
            let bound = bounds.max_x.min(6);
            Ok(validate_axiom(&bounds.rel(), axiom, bound)?.map(|v| v.to_string()))
        }));
    }

    // ----- join laws ------------------------------------------------------

    laws.push(law("⊔.1", "members are below the join", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let joined = rel.join(&fam)?;
        for member in fam.members() {
            if !member.leq(&joined)? {
                return Ok(Some(format!(
                    "member above join: member = {}, join = {}",
                    j(member),
                    j(&joined)
                )));
            }
        }
        Ok(None)
    }));

    laws.push(law("⊔.2", "join is the least upper bound", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let joined = rel.join(&fam)?;
        // an upper bound: the join extended by something disjoint from it
        let extra = match bounds.rel {
            RelChoice::Maximal => {
                let mut table = vec![None; fam.dom().size()];
                for (x, e) in joined.table().iter().enumerate() {
                    if e.is_none() && fam.cod().size() > 0 && rng.chance(0.5) {
                        table[x] = Some(rng.below(fam.cod().size()));
                    }
                }
                PartialMap::new(fam.dom().clone(), fam.cod().clone(), table)?
            }
            RelChoice::Minimal => PartialMap::zero(fam.dom(), fam.cod()),
        };
        let upper = rel.join_maps(fam.dom(), fam.cod(), &[joined.clone(), extra])?;
        Ok((!joined.leq(&upper)?).then(|| {
            format!(
                "join not below an upper bound: join = {}, upper = {}",
                j(&joined),
                j(&upper)
            )
        }))
    }));

    laws.push(law("⊔.3", "h;(⊔ fᵢ) = ⊔ (h;fᵢ)", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let a2 = rand_obj(rng, bounds.max_x);
        let d = rand_density(rng);
        let h = gen_partial_map(rng, &a2, fam.dom(), d);
        let lhs = h.compose(&rel.join(&fam)?)?;
        let composed: Result<Vec<PartialMap>> =
            fam.members().iter().map(|f| h.compose(f)).collect();
        let rhs = rel.join_maps(&a2, fam.cod(), &composed?)?;
        Ok(ne_maps(
            "pre-composition through join",
            &lhs,
            &rhs,
            j(&fam.members().to_vec()),
        ))
    }));

    laws.push(law("⊔.4", "joins are strong", |rng, bounds, _| {
        // members and h drawn from one partition, so h ⊥ every member
        let x = rand_obj(rng, bounds.max_x);
        let c = rand_obj_nonempty(rng, bounds.max_a);
        let rel = bounds.rel();
        let k = rng.range(1, 4);
        let mut all = gen_family_for(rng, bounds.rel, &x, &c, k + 1);
        let h = all.pop().expect("k+1 members");
        let fam = DisjointFamily::new(&rel, &x, &c, all)?;
        if !rel.is_strong_join(&fam, &h)? {
            return Ok(Some(format!(
                "strength fails: members = {}, h = {}",
                j(&fam.members().to_vec()),
                j(&h)
            )));
        }
        Ok(None)
    }));

    laws.push(law("⊔.dom", "f̄ⱼ;(⊔ fᵢ) = fⱼ", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let joined = rel.join(&fam)?;
        for member in fam.members() {
            let lhs = member.restriction().compose(&joined)?;
            if &lhs != member {
                return Ok(Some(format!(
                    "domain recovery fails: member = {}, join = {}",
                    j(member),
                    j(&joined)
                )));
            }
        }
        Ok(None)
    }));

    laws.push(law("⊔.rest", "(⊔ fᵢ)‾ = ⊔ f̄ᵢ", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let lhs = rel.join(&fam)?.restriction().into_map();
        let rests: Vec<PartialMap> = fam
            .members()
            .iter()
            .map(|f| f.restriction().into_map())
            .collect();
        let rhs = rel.join_maps(fam.dom(), fam.dom(), &rests)?;
        Ok(ne_maps(
            "restriction of join",
            &lhs,
            &rhs,
            j(&fam.members().to_vec()),
        ))
    }));

    laws.push(law("⊔.comp", "k;(⊔ fᵢ);k' = ⊔ (k;fᵢ;k')", |rng, bounds, _| {
        let (rel, fam) = gen_family(rng, bounds)?;
        let a2 = rand_obj(rng, bounds.max_x);
        let b2 = rand_obj(rng, bounds.max_a);
        let d = rand_density(rng);
        let k = gen_partial_map(rng, &a2, fam.dom(), d);
        let k2 = gen_partial_map(rng, fam.cod(), &b2, d);
        let lhs = k.compose(&rel.join(&fam)?)?.compose(&k2)?;
        let terms: Result<Vec<PartialMap>> = fam
            .members()
            .iter()
            .map(|f| k.compose(f)?.compose(&k2))
            .collect();
        let rhs = rel.join_maps(&a2, &b2, &terms?)?;
        Ok(ne_maps(
            "two-sided composition through join",
            &lhs,
            &rhs,
            j(&fam.members().to_vec()),
        ))
    }));

    // ----- iteration laws -------------------------------------------------

    laws.push(law("⩚.1", "g ⊔ f;(f⩚g) = f⩚g", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        let (f, g) = gen_disjoint_pair(rng, &x, &a);
        let wand = mutation.base_wand();
        let w = wand(&f, &g)?;
        let rel = InterferenceRel::maximal();
        let lhs = rel.join_maps(&x, &a, &[g.clone(), f.compose(&w)?])?;
        Ok(ne_maps(
            "fixed-point law",
            &lhs,
            &w,
            format!("f = {}, g = {}", j(&f), j(&g)),
        ))
    }));

    laws.push(law("⩚.2", "(f⩚g);h = f⩚(g;h)", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        let b = rand_obj(rng, bounds.max_a);
        let (f, g) = gen_disjoint_pair(rng, &x, &a);
        let dh = rand_density(rng);
        let h = gen_partial_map(rng, &a, &b, dh);
        let wand = mutation.base_wand();
        let lhs = wand(&f, &g)?.compose(&h)?;
        let rhs = wand(&f, &g.compose(&h)?)?;
        Ok(ne_maps(
            "naturality",
            &lhs,
            &rhs,
            format!("f = {}, g = {}, h = {}", j(&f), j(&g), j(&h)),
        ))
    }));

    laws.push(law("⩚.3", "k;f ⩚ k;g = k;(f;k ⩚ g)", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let y = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        // f: X → Y and g: X → A disjoint; k: Y → X
        let mut ft = vec![None; x.size()];
        let mut gt = vec![None; x.size()];
        for i in 0..x.size() {
            match rng.below(3) {
                0 if y.size() > 0 => ft[i] = Some(rng.below(y.size())),
                1 if a.size() > 0 => gt[i] = Some(rng.below(a.size())),
                _ => {}
            }
        }
        let f = PartialMap::new(x.clone(), y.clone(), ft)?;
        let g = PartialMap::new(x.clone(), a.clone(), gt)?;
        let dk = rand_density(rng);
        let k = gen_partial_map(rng, &y, &x, dk);
        let wand = mutation.base_wand();
        let lhs = wand(&k.compose(&f)?, &k.compose(&g)?)?;
        let rhs = k.compose(&wand(&f.compose(&k)?, &g)?)?;
        Ok(ne_maps(
            "dinaturality",
            &lhs,
            &rhs,
            format!("f = {}, g = {}, k = {}", j(&f), j(&g), j(&k)),
        ))
    }));

    laws.push(law("⩚.4", "(f ⊔ f')⩚g = (f⩚f')⩚(f⩚g)", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        let (f, f2, g) = gen_disjoint_triple(rng, &x, &a);
        let rel = InterferenceRel::maximal();
        let wand = mutation.base_wand();
        let w_ff = wand(&f, &f2)?;
        let w_fg = wand(&f, &g)?;
        if !rel.perp(&w_ff, &w_fg)? {
            return Ok(Some(format!(
                "diagonal disjointness fails: f = {}, f' = {}, g = {}",
                j(&f),
                j(&f2),
                j(&g)
            )));
        }
        let lhs = wand(&rel.join_maps(&x, &x, &[f.clone(), f2.clone()])?, &g)?;
        let rhs = wand(&w_ff, &w_fg)?;
        Ok(ne_maps(
            "diagonal",
            &lhs,
            &rhs,
            format!("f = {}, f' = {}, g = {}", j(&f), j(&f2), j(&g)),
        ))
    }));

    laws.push(law("Alt⩚.1", "g ⊔ f;(f⩚g) ≤ f⩚g", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        let (f, g) = gen_disjoint_pair(rng, &x, &a);
        let wand = mutation.base_wand();
        let w = wand(&f, &g)?;
        let lhs = InterferenceRel::maximal().join_maps(&x, &a, &[g.clone(), f.compose(&w)?])?;
        Ok((!lhs.leq(&w)?)
            .then(|| format!("unfolding not below: f = {}, g = {}", j(&f), j(&g))))
    }));

    laws.push(law(
        "Alt⩚.2",
        "a;(f'⩚g') = (f⩚g);b on commuting squares",
        |rng, bounds, mutation| {
            let sq = gen_uniform_square(rng, bounds);
            let wand = mutation.base_wand();
            // a = h, b = 1: a;g' = g;b and a;f' = f;a hold by construction
            let lhs = sq.h.compose(&wand(&sq.f_prime, &sq.g_prime)?)?;
            let rhs = wand(&sq.f, &sq.g)?;
            Ok(ne_maps(
                "square transport",
                &lhs,
                &rhs,
                format!(
                    "h = {}, f' = {}, g' = {}",
                    j(&sq.h),
                    j(&sq.f_prime),
                    j(&sq.g_prime)
                ),
            ))
        },
    ));

    laws.push(law(
        "Alt⩚.3",
        "f;h ≤ h and g ≤ h imply f⩚g ≤ h",
        |rng, bounds, mutation| check_inductive(rng, bounds, mutation),
    ));

    laws.push(law("⩚.l54", "basic iteration identities", |rng, bounds, mutation| {
        let x = rand_obj(rng, bounds.max_x);
        let a = rand_obj(rng, bounds.max_a);
        let rel = InterferenceRel::maximal();
        let wand = mutation.base_wand();
        let (f, f2, g) = gen_disjoint_triple(rng, &x, &a);
        let inputs = format!("f = {}, g = {}", j(&f), j(&g));

        // (i) f⩚g = (f ⩚ ḡ);g
        let lhs = wand(&f, &g)?;
        let rhs = wand(&f, g.restriction().as_map())?.compose(&g)?;
        if lhs != rhs {
            return Ok(Some(format!("(i) fails: {inputs}")));
        }
        // (ii) 0⩚g = g and (iii) f⩚0 = 0
        if wand(&PartialMap::zero(&x, &x), &g)? != g {
            return Ok(Some(format!("(ii) fails: {inputs}")));
        }
        if !wand(&f, &PartialMap::zero(&x, &a))?.is_zero() {
            return Ok(Some(format!("(iii) fails: {inputs}")));
        }
        // (iv) split exits: a second exit on f2's domain, disjoint from
        // both f and g by the triple partition
        let g2 = {
            let mut t = vec![None; x.size()];
            for (i, e) in f2.table().iter().enumerate() {
                if e.is_some() && a.size() > 0 {
                    t[i] = Some(rng.below(a.size()));
                }
            }
            PartialMap::new(x.clone(), a.clone(), t)?
        };
        let w1 = wand(&f, &g)?;
        let w2 = wand(&f, &g2)?;
        if !rel.perp(&w1, &w2)? {
            return Ok(Some(format!(
                "(iv) disjointness fails: {inputs}, g' = {}",
                j(&g2)
            )));
        }
        let joined_exits = rel.join_maps(&x, &a, &[g.clone(), g2.clone()])?;
        let lhs4 = wand(&f, &joined_exits)?;
        let rhs4 = rel.join_maps(&x, &a, &[w1, w2])?;
        if lhs4 != rhs4 {
            return Ok(Some(format!("(iv) fails: {inputs}, g' = {}", j(&g2))));
        }
        // (v) a total body admits only the zero exit; (vi) a total exit
        // admits only the zero body
        if !wand(&PartialMap::identity(&x), &PartialMap::zero(&x, &a))?.is_zero() {
            return Ok(Some(format!("(v) fails on {x}")));
        }
        if x.size() >= a.size() && a.size() > 0 {
            let tg = gen_surjection(rng, &x, &a)?;
            if wand(&PartialMap::zero(&x, &x), &tg)? != tg {
                return Ok(Some(format!("(vi) fails: g = {}", j(&tg))));
            }
        }
        Ok(None)
    }));

    laws.push(law(
        "⩚.unroll",
        "f⩚g = g ⊔ f;g ⊔ … ⊔ fⁿ;g ⊔ fⁿ⁺¹;(f⩚g)",
        |rng, bounds, mutation| {
            let x = rand_obj(rng, bounds.max_x);
            let a = rand_obj(rng, bounds.max_a);
            let (f, g) = gen_disjoint_pair(rng, &x, &a);
            let wand = mutation.base_wand();
            let w = wand(&f, &g)?;
            let rel = InterferenceRel::maximal();
            for n in 0..=4usize {
                let mut terms = Vec::new();
                let mut power = PartialMap::identity(&x);
                for _ in 0..=n {
                    terms.push(power.compose(&g)?);
                    power = power.compose(&f)?;
                }
                terms.push(power.compose(&w)?);
                let rhs = rel.join_maps(&x, &a, &terms)?;
                if w != rhs {
                    return Ok(Some(format!(
                        "unrolling at depth {n} fails: f = {}, g = {}",
                        j(&f),
                        j(&g)
                    )));
                }
            }
            Ok(None)
        },
    ));

    laws.push(with_exhaustive(
        law("⩚.oracle", "iteration agrees with step simulation", |rng, bounds, mutation| {
            let x = rand_obj_nonempty(rng, bounds.max_x);
            let a = rand_obj(rng, bounds.max_a);
            let (f, g) = gen_disjoint_pair(rng, &x, &a);
            let wand = mutation.base_wand();
            let w = wand(&f, &g)?;
            oracle_compare(&f, &g, &w)
        }),
        |bounds, mutation| {
            let wand = mutation.base_wand();
            let mut cases = 0u64;
            let pairs = enumerate_all(bounds.max_x.min(3), bounds.max_a.min(2))?;
            for (f, g) in pairs {
                cases += 1;
                let w = wand(&f, &g)?;
                if let Some(cx) = oracle_compare(&f, &g, &w)? {
                    return Ok((cases, Some(cx)));
                }
            }
            Ok((cases, None))
        },
    ));

    laws.push(law(
        "⩚.uniform",
        "commuting squares transport iteration",
        |rng, bounds, mutation| {
            let sq = gen_uniform_square(rng, bounds);
            let wand = mutation.base_wand();
            let lhs = wand(&sq.f, &sq.g)?;
            let rhs = sq.h.compose(&wand(&sq.f_prime, &sq.g_prime)?)?;
            Ok(ne_maps(
                "uniformity",
                &lhs,
                &rhs,
                format!(
                    "h = {}, f' = {}, g' = {}",
                    j(&sq.h),
                    j(&sq.f_prime),
                    j(&sq.g_prime)
                ),
            ))
        },
    ));

    laws.push(law(
        "⩚.lax",
        "shrunken sources stay below the transported iteration",
        |rng, bounds, mutation| {
            let sq = gen_uniform_square(rng, bounds);
            let f0 = gen_submap(rng, &sq.f, 0.7);
            let g0 = gen_submap(rng, &sq.g, 0.7);
            let wand = mutation.base_wand();
            let lhs = wand(&f0, &g0)?;
            let rhs = sq.h.compose(&wand(&sq.f_prime, &sq.g_prime)?)?;
            Ok((!lhs.leq(&rhs)?).then(|| {
                format!(
                    "lax uniformity fails: f₀ = {}, g₀ = {}, h = {}, f' = {}, g' = {}",
                    j(&f0),
                    j(&g0),
                    j(&sq.h),
                    j(&sq.f_prime),
                    j(&sq.g_prime)
                )
            }))
        },
    ));

    laws.push(law(
        "⩚.colax",
        "shrunken targets stay below the source iteration",
        |rng, bounds, mutation| {
            let sq = gen_uniform_square(rng, bounds);
            let f0 = gen_submap(rng, &sq.f_prime, 0.7);
            let g0 = gen_submap(rng, &sq.g_prime, 0.7);
            let wand = mutation.base_wand();
            let lhs = sq.h.compose(&wand(&f0, &g0)?)?;
            let rhs = wand(&sq.f, &sq.g)?;
            Ok((!lhs.leq(&rhs)?).then(|| {
                format!(
                    "colax uniformity fails: f'₀ = {}, g'₀ = {}, h = {}, f = {}, g = {}",
                    j(&f0),
                    j(&g0),
                    j(&sq.h),
                    j(&sq.f),
                    j(&sq.g)
                )
            }))
        },
    ));

    laws.push(law(
        "⩚.inductive",
        "f;h ≤ h and g ≤ h imply f⩚g ≤ h",
        |rng, bounds, mutation| check_inductive(rng, bounds, mutation),
    ));

    laws.push(law(
        "⩚.delta",
        "the minimal relation admits only the trivial iteration",
        |rng, bounds, _| {
            let x = rand_obj(rng, bounds.max_x);
            let a = rand_obj(rng, bounds.max_a);
            let rel = InterferenceRel::minimal();
            let d = rand_density(rng);
            let (f, g) = if rng.chance(0.5) {
                (PartialMap::zero(&x, &x), gen_partial_map(rng, &x, &a, d))
            } else {
                (gen_endo(rng, &x, d), PartialMap::zero(&x, &a))
            };
            let canonical = kleene_wand(&rel, &f, &g)?;
            if canonical != g {
                return Ok(Some(format!(
                    "canonical iteration differs from the trivial one: f = {}, g = {}",
                    j(&f),
                    j(&g)
                )));
            }
            // minimality: the canonical iteration sits below the other
            // available one (here, the maximal-relation iteration)
            let other = kleene_wand0(&f, &g)?;
            Ok((!canonical.leq(&other)?).then(|| {
                format!("canonical iteration not minimal: f = {}, g = {}", j(&f), j(&g))
            }))
        },
    ));

    // ----- complements and star -------------------------------------------

    laws.push(with_exhaustive(
        law("\\.1", "(g \\ f) ⊥ f", |rng, bounds, _| {
            let (f, g) = gen_leq_pair(rng, bounds);
            let rc = relative_complement(&f, &g)?;
            Ok((!InterferenceRel::maximal().perp(&rc, &f)?)
                .then(|| format!("residue interferes: f = {}, g = {}", j(&f), j(&g))))
        }),
        |bounds, _| {
            exhaustive_leq_pairs(bounds, |f, g| {
                let rc = relative_complement(f, g)?;
                Ok((!InterferenceRel::maximal().perp(&rc, f)?)
                    .then(|| format!("residue interferes: f = {}, g = {}", j(f), j(g))))
            })
        },
    ));

    laws.push(with_exhaustive(
        law("\\.2", "(g \\ f) ⊔ f = g", |rng, bounds, _| {
            let (f, g) = gen_leq_pair(rng, bounds);
            let rc = relative_complement(&f, &g)?;
            let back = InterferenceRel::maximal().join_maps(g.dom(), g.cod(), &[rc, f.clone()])?;
            Ok(ne_maps(
                "complement recovery",
                &back,
                &g,
                format!("f = {}, g = {}", j(&f), j(&g)),
            ))
        }),
        |bounds, _| {
            exhaustive_leq_pairs(bounds, |f, g| {
                let rc = relative_complement(f, g)?;
                let back =
                    InterferenceRel::maximal().join_maps(g.dom(), g.cod(), &[rc, f.clone()])?;
                Ok(ne_maps(
                    "complement recovery",
                    &back,
                    g,
                    format!("f = {}, g = {}", j(f), j(g)),
                ))
            })
        },
    ));

    laws.push(with_exhaustive(
        law("⋆.1", "f̄ᶜ ⊔ f;f⋆ = f⋆", |rng, bounds, mutation| {
            let x = rand_obj(rng, bounds.max_x);
            let d = rand_density(rng);
            let f = gen_endo(rng, &x, d);
            check_star1(&f, mutation)
        }),
        |bounds, mutation| exhaustive_endos(bounds, |f| check_star1(f, mutation)),
    ));

    laws.push(with_exhaustive(
        law("⋆.2", "(h;f)⋆;h = h;(f;h)⋆;f̄ᶜ", |rng, bounds, mutation| {
            let x = rand_obj(rng, bounds.max_x);
            let y = rand_obj(rng, bounds.max_x);
            let d = rand_density(rng);
            let h = gen_partial_map(rng, &x, &y, d);
            let f = gen_partial_map(rng, &y, &x, d);
            check_star2(&h, &f, mutation)
        }),
        |bounds, mutation| {
            let cap = bounds.max_x.min(2);
            let x = FinObj::of_size(cap);
            let y = FinObj::of_size(cap);
            let mut cases = 0u64;
            for h in enumerate_maps(&x, &y)? {
                for f in enumerate_maps(&y, &x)? {
                    cases += 1;
                    if let Some(cx) = check_star2(&h, &f, mutation)? {
                        return Ok((cases, Some(cx)));
                    }
                }
            }
            Ok((cases, None))
        },
    ));

    laws.push(with_exhaustive(
        law("⋆.3", "(f ⊔ g)⋆ = (f⋆;g)⋆;f⋆", |rng, bounds, mutation| {
            let x = rand_obj(rng, bounds.max_x);
            let (f, raw) = gen_disjoint_pair(rng, &x, &x);
            // reshape the exit into an endomorphism disjoint from f
            let mut t = vec![None; x.size()];
            for (i, e) in raw.table().iter().enumerate() {
                if e.is_some() {
                    t[i] = Some(rng.below(x.size().max(1)));
                }
            }
            let g = PartialMap::new(x.clone(), x.clone(), t)?;
            check_star3(&f, &g, mutation)
        }),
        |bounds, mutation| {
            let size = bounds.max_x.min(3);
            let mut cases = 0u64;
            for (f, raw) in enumerate_all(size, size.min(2))? {
                let gt: Vec<Option<usize>> = raw
                    .table()
                    .iter()
                    .map(|e| e.map(|v| v % size.max(1)))
                    .collect();
                let g = PartialMap::new(f.dom().clone(), f.dom().clone(), gt)?;
                cases += 1;
                if let Some(cx) = check_star3(&f, &g, mutation)? {
                    return Ok((cases, Some(cx)));
                }
            }
            Ok((cases, None))
        },
    ));

    laws.push(with_exhaustive(
        law("⋆.bij", "star and iteration determine each other", |rng, bounds, mutation| {
            let x = rand_obj(rng, bounds.max_x);
            let (f, g) = gen_disjoint_pair(rng, &x, &x);
            check_star_bijection(&f, &g, mutation)
        }),
        |bounds, mutation| {
            let mut cases = 0u64;
            for (f, g) in enumerate_all(bounds.max_x.min(3), bounds.max_a.min(2))? {
                cases += 1;
                if let Some(cx) = check_star_bijection(&f, &g, mutation)? {
                    return Ok((cases, Some(cx)));
                }
            }
            Ok((cases, None))
        },
    ));

    // ----- join completion -------------------------------------------------

    laws.push(law("DJ.R", "restriction axioms in the completion", |rng, bounds, _| {
        let rel = InterferenceRel::maximal();
        let a = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let c = rand_obj(rng, bounds.max_a);
        let f = gen_dj(rng, &a, &b, 3);
        let g = gen_dj(rng, &a, &c, 3);
        let h = gen_dj(rng, &b, &c, 3);
        let inputs = format!("f = {}, g = {}, h = {}", j(&f), j(&g), j(&h));

        let rf = f.restriction(&rel)?;
        if rf.compose(&f, &rel)? != f {
            return Ok(Some(format!("R.1 fails in completion: {inputs}")));
        }
        let rg = g.restriction(&rel)?;
        if rf.compose(&rg, &rel)? != rg.compose(&rf, &rel)? {
            return Ok(Some(format!("R.2 fails in completion: {inputs}")));
        }
        let lhs = rg.compose(&f, &rel)?.restriction(&rel)?;
        if lhs != rg.compose(&rf, &rel)? {
            return Ok(Some(format!("R.3 fails in completion: {inputs}")));
        }
        let lhs4 = f.compose(&h.restriction(&rel)?, &rel)?;
        let rhs4 = f.compose(&h, &rel)?.restriction(&rel)?.compose(&f, &rel)?;
        if lhs4 != rhs4 {
            return Ok(Some(format!("R.4 fails in completion: {inputs}")));
        }
        Ok(None)
    }));

    laws.push(law("DJ.⊥", "interference axioms in the completion", |rng, bounds, _| {
        let rel = InterferenceRel::maximal();
        let a = rand_obj(rng, bounds.max_x);
        let b = rand_obj(rng, bounds.max_a);
        let s = gen_dj(rng, &a, &b, 3);
        let t = gen_dj(rng, &a, &b, 3);
        let inputs = format!("S = {}, T = {}", j(&s), j(&t));
        if s.perp(&t, &rel)? != t.perp(&s, &rel)? {
            return Ok(Some(format!("symmetry fails: {inputs}")));
        }
        if s.perp(&s, &rel)? != s.is_zero() {
            return Ok(Some(format!("anti-reflexivity fails: {inputs}")));
        }
        if !DjMap::identity(&a).perp(&DjMap::zero(&a, &a), &rel)? {
            return Ok(Some(format!("zero axiom fails on {a}")));
        }
        if s.perp(&t, &rel)? {
            let s0 = gen_sub_dj(rng, &s);
            let t0 = gen_sub_dj(rng, &t);
            if !s0.perp(&t0, &rel)? {
                return Ok(Some(format!("downward closure fails: {inputs}")));
            }
            let a3 = rand_obj(rng, bounds.max_x);
            let u = gen_dj(rng, &a3, &a, 2);
            let lhs = u.compose(&s, &rel)?;
            let rhs = u.compose(&t, &rel)?;
            if !lhs.perp(&rhs, &rel)? {
                return Ok(Some(format!(
                    "composition closure fails: {inputs}, U = {}",
                    j(&u)
                )));
            }
            let rs = s.restriction(&rel)?;
            let rt = t.restriction(&rel)?;
            if !rs.perp(&rt, &rel)? {
                return Ok(Some(format!("restriction closure fails: {inputs}")));
            }
        }
        Ok(None)
    }));

    laws.push(law("DJ.⊔", "join laws in the completion", |rng, bounds, _| {
        let rel = InterferenceRel::maximal();
        let a = rand_obj(rng, bounds.max_x);
        let b = rand_obj_nonempty(rng, bounds.max_a);
        // pairwise-disjoint completion maps from a partitioned family
        let k = rng.range(2, 4);
        let family = gen_disjoint_family(rng, &a, &b, k);
        let members: Vec<DjMap> = family.iter().map(DjMap::embed).collect();
        let joined = DjMap::join(&rel, &a, &b, &members)?;
        let inputs = j(&members);
        for m in &members {
            if !m.leq(&joined)? {
                return Ok(Some(format!("member above join: {inputs}")));
            }
        }
        // least upper bound: any common upper bound dominates the join
        let upper = DjMap::join(&rel, &a, &b, &[joined.clone(), gen_upper_extra(rng, &joined)?])?;
        if !joined.leq(&upper)? {
            return Ok(Some(format!("join above an upper bound: {inputs}")));
        }
        // pre-composition distributes
        let a2 = rand_obj(rng, bounds.max_x);
        let h = gen_dj(rng, &a2, &a, 2);
        let lhs = h.compose(&joined, &rel)?;
        let composed: Result<Vec<DjMap>> = members.iter().map(|m| h.compose(m, &rel)).collect();
        let rhs = DjMap::join(&rel, &a2, &b, &composed?)?;
        if lhs != rhs {
            return Ok(Some(format!(
                "pre-composition through join fails: {inputs}, h = {}",
                j(&h)
            )));
        }
        // strength: disjointness from every member passes to the join
        let extra = gen_upper_extra(rng, &joined)?;
        let each_disjoint = members
            .iter()
            .map(|m| m.perp(&extra, &rel))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|p| p);
        if each_disjoint && !joined.perp(&extra, &rel)? {
            return Ok(Some(format!("strength fails: {inputs}, extra = {}", j(&extra))));
        }
        // restriction of the join is the join of restrictions
        let lhs_r = joined.restriction(&rel)?;
        let rests: Result<Vec<DjMap>> = members.iter().map(|m| m.restriction(&rel)).collect();
        let rhs_r = DjMap::join(&rel, &a, &a, &rests?)?;
        if lhs_r != rhs_r {
            return Ok(Some(format!("restriction of join fails: {inputs}")));
        }
        Ok(None)
    }));

    laws.push(law(
        "DJ.embed",
        "the embedding is a faithful structure-preserving functor",
        |rng, bounds, _| {
            let rel = InterferenceRel::maximal();
            let a = rand_obj(rng, bounds.max_x);
            let b = rand_obj(rng, bounds.max_a);
            let c = rand_obj(rng, bounds.max_a);
            let d = rand_density(rng);
            let f = gen_partial_map(rng, &a, &b, d);
            let g = gen_partial_map(rng, &b, &c, d);
            let inputs = format!("f = {}, g = {}", j(&f), j(&g));
            if DjMap::embed(&f.compose(&g)?) != DjMap::embed(&f).compose(&DjMap::embed(&g), &rel)? {
                return Ok(Some(format!("composition not preserved: {inputs}")));
            }
            if DjMap::embed(f.restriction().as_map()) != DjMap::embed(&f).restriction(&rel)? {
                return Ok(Some(format!("restriction not preserved: {inputs}")));
            }
            if !DjMap::embed(&PartialMap::zero(&a, &b)).is_zero() {
                return Ok(Some("zero not preserved".into()));
            }
            let (p, q) = gen_disjoint_pair(rng, &a, &b);
            if !DjMap::embed(&p).perp(&DjMap::embed(&q), &rel)? {
                return Ok(Some(format!(
                    "disjointness not preserved: p = {}, q = {}",
                    j(&p),
                    j(&q)
                )));
            }
            let f2 = gen_partial_map(rng, &a, &b, d);
            if (f == f2) != (DjMap::embed(&f) == DjMap::embed(&f2)) {
                return Ok(Some(format!("faithfulness fails: f = {}, f2 = {}", j(&f), j(&f2))));
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "DJ.canon",
        "generator sets are canonical for down-sets",
        |rng, bounds, _| {
            let a = FinObj::of_size(rng.range(0, bounds.max_x.min(4)));
            let b = FinObj::of_size(rng.range(0, bounds.max_a.min(4)));
            let s = gen_dj(rng, &a, &b, 3);
            let t = if rng.chance(0.4) {
                // rebuild from the same generators, reordered
                let mut gens: Vec<PartialMap> = s.gens().iter().cloned().collect();
                if gens.len() > 1 {
                    let k = rng.below(gens.len());
                    gens.swap(0, k);
                }
                DjMap::new(&InterferenceRel::maximal(), &a, &b, gens)?
            } else {
                gen_dj(rng, &a, &b, 3)
            };
            let canonical_eq = s == t;
            let semantic_eq = s.down_set()? == t.down_set()?;
            Ok((canonical_eq != semantic_eq)
                .then(|| format!("canonicity fails: S = {}, T = {}", j(&s), j(&t))))
        },
    ));

    // ----- matrix completion ------------------------------------------------

    laws.push(law("MAT.R", "restriction axioms for matrices", |rng, bounds, _| {
        let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let c = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let d = rand_density(rng);
        let f = gen_matrix(rng, &a, &b, d);
        let g = gen_matrix(rng, &a, &c, d);
        let h = gen_matrix(rng, &b, &c, d);
        let inputs = format!("f = {}, g = {}, h = {}", j(&f), j(&g), j(&h));
        if f.restriction()?.compose(&f)? != f {
            return Ok(Some(format!("R.1 fails for matrices: {inputs}")));
        }
        let rf = f.restriction()?;
        let rg = g.restriction()?;
        if rf.compose(&rg)? != rg.compose(&rf)? {
            return Ok(Some(format!("R.2 fails for matrices: {inputs}")));
        }
        if rg.compose(&f)?.restriction()? != rg.compose(&rf)? {
            return Ok(Some(format!("R.3 fails for matrices: {inputs}")));
        }
        let lhs = f.compose(&h.restriction()?)?;
        let rhs = f.compose(&h)?.restriction()?.compose(&f)?;
        if lhs != rhs {
            return Ok(Some(format!("R.4 fails for matrices: {inputs}")));
        }
        Ok(None)
    }));

    laws.push(law(
        "D.1",
        "the decision folds back to the restriction",
        |rng, bounds, _| {
            let (f, partition) = gen_matrix_with_partition(rng, bounds);
            let dec = decision_of(&f, &partition)?;
            let nabla: Matrix = codiagonal(f.dom(), partition.len());
            let lhs = dec.matrix().compose(&nabla)?;
            let rhs = f.restriction()?;
            Ok(ne_mats(
                "decision fold",
                &lhs,
                &rhs,
                format!("f = {}, partition = {partition:?}", j(&f)),
            ))
        },
    ));

    laws.push(law(
        "D.2",
        "the decision routes the map into its blocks",
        |rng, bounds, _| {
            let (f, partition) = gen_matrix_with_partition(rng, bounds);
            let dec = decision_of(&f, &partition)?;
            let k = partition.len();
            let mut f_sum = f.clone();
            for _ in 1..k {
                f_sum = f_sum.direct_sum(&f);
            }
            let lhs = dec.matrix().compose(&f_sum)?;
            let blocks = partition_blocks(&f, &partition);
            let mut inj_sum: Option<Matrix> = None;
            for b in 0..k {
                let i: Matrix = injection(&blocks, b)?;
                inj_sum = Some(match inj_sum {
                    None => i,
                    Some(acc) => acc.direct_sum(&i),
                });
            }
            let rhs = f.compose(&inj_sum.expect("at least one block"))?;
            Ok(ne_mats(
                "decision routing",
                &lhs,
                &rhs,
                format!("f = {}, partition = {partition:?}", j(&f)),
            ))
        },
    ));

    laws.push(law("d.idem", "decisions are their own decisions", |rng, bounds, _| {
        let (f, partition) = gen_matrix_with_partition(rng, bounds);
        let dec = decision_of(&f, &partition)?;
        let redo_partition: Vec<usize> = (0..partition.len()).map(|_| f.dom().len()).collect();
        let redo = decision_of(dec.matrix(), &redo_partition)?;
        Ok(ne_mats(
            "decision idempotence",
            redo.matrix(),
            dec.matrix(),
            format!("f = {}, partition = {partition:?}", j(&f)),
        ))
    }));

    laws.push(law(
        "Dec.iso",
        "decisions are restriction isomorphisms",
        |rng, bounds, _| {
            let (f, partition) = gen_matrix_with_partition(rng, bounds);
            let dec = decision_of(&f, &partition)?;
            let inv = dec.restriction_inverse()?;
            let inputs = format!("f = {}, partition = {partition:?}", j(&f));
            if dec.matrix().compose(&inv)? != dec.matrix().restriction()? {
                return Ok(Some(format!("d;d° ≠ d̄: {inputs}")));
            }
            if inv.compose(dec.matrix())? != inv.restriction()? {
                return Ok(Some(format!("d°;d ≠ d°‾: {inputs}")));
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "Dec.sep",
        "separating decisions project to the restrictions",
        |rng, bounds, _| {
            let dom = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let cod = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let pair = gen_parallel_disjoint_matrices(rng, &dom, &cod, 2);
            let (f, g) = (&pair[0], &pair[1]);
            let dec = separating_decision(f, g)?;
            let summands = [dom.clone(), dom.clone()];
            let p1: Matrix = quasi_projection(&summands, 0)?;
            let p2: Matrix = quasi_projection(&summands, 1)?;
            let inputs = format!("f = {}, g = {}", j(f), j(g));
            if dec.matrix().compose(&p1)? != f.restriction()? {
                return Ok(Some(format!("⟨f|g⟩;ι°₁ ≠ f̄: {inputs}")));
            }
            if dec.matrix().compose(&p2)? != g.restriction()? {
                return Ok(Some(format!("⟨f|g⟩;ι°₂ ≠ ḡ: {inputs}")));
            }
            let redo = decision_of(dec.matrix(), &[dom.len(), dom.len()])?;
            if redo.matrix() != dec.matrix() {
                return Ok(Some(format!("⟨f|g⟩ is not its own decision: {inputs}")));
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "Dec.nary",
        "pairwise disjointness yields the n-ary decision",
        |rng, bounds, _| {
            let dom = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let cod = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let k = rng.range(2, 3);
            let family = gen_parallel_disjoint_matrices(rng, &dom, &cod, k);
            let dec = nary_separating_decision(&family)?;
            let summands: Vec<MatObj> = (0..k).map(|_| dom.clone()).collect();
            let inputs = j(&family);
            for (idx, f) in family.iter().enumerate() {
                let p: Matrix = quasi_projection(&summands, idx)?;
                if dec.matrix().compose(&p)? != f.restriction()? {
                    return Ok(Some(format!("⟨…⟩;ι°{idx} is not the restriction: {inputs}")));
                }
            }
            let redo_partition: Vec<usize> = (0..k).map(|_| dom.len()).collect();
            let redo = decision_of(dec.matrix(), &redo_partition)?;
            if redo.matrix() != dec.matrix() {
                return Ok(Some(format!("n-ary witness is not a decision: {inputs}")));
            }
            for (a, f) in family.iter().enumerate() {
                for g in &family[a + 1..] {
                    if !f.perp_d(g)? {
                        return Ok(Some(format!("family not pairwise disjoint: {inputs}")));
                    }
                }
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "MAT.join",
        "entrywise join equals the decision composite",
        |rng, bounds, _| {
            let dom = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let cod = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let pair = gen_parallel_disjoint_matrices(rng, &dom, &cod, 2);
            let (f, g) = (&pair[0], &pair[1]);
            let entrywise = f.join(g)?;
            let dec = separating_decision(f, g)?;
            let nabla: Matrix = codiagonal(&cod, 2);
            let composite = dec.matrix().compose(&f.direct_sum(g))?.compose(&nabla)?;
            Ok(ne_mats(
                "join routes",
                &entrywise,
                &composite,
                format!("f = {}, g = {}", j(f), j(g)),
            ))
        },
    ));

    // ----- trace laws --------------------------------------------------------

    laws.push(law(
        "Trace.Tightening",
        "pre/post-composition passes through untraced blocks",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let a2 = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b2 = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let d = rand_density(rng);
            let f = gen_matrix(rng, &MatObj::concat(&[&x, &a]), &MatObj::concat(&[&x, &b]), d);
            let g = gen_matrix(rng, &a2, &a, d);
            let h = gen_matrix(rng, &b, &b2, d);
            let idx: Matrix = Matrix::identity(&x);
            let squeezed = idx.direct_sum(&g).compose(&f)?.compose(&idx.direct_sum(&h))?;
            let lhs = trace2_with(&squeezed, x.len(), x.len(), &wand)?;
            let rhs = g
                .compose(&trace2_with(&f, x.len(), x.len(), &wand)?)?
                .compose(&h)?;
            Ok(ne_mats(
                "tightening",
                &lhs,
                &rhs,
                format!("f = {}, g = {}, h = {}", j(&f), j(&g), j(&h)),
            ))
        },
    ));

    laws.push(law(
        "Trace.Sliding",
        "the looped block slides around the feedback",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let x2 = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let d = rand_density(rng);
            let f = gen_matrix(rng, &MatObj::concat(&[&x, &a]), &MatObj::concat(&[&x2, &b]), d);
            let k = gen_matrix(rng, &x2, &x, d);
            let idb: Matrix = Matrix::identity(&b);
            let ida: Matrix = Matrix::identity(&a);
            let lhs = trace2_with(&f.compose(&k.direct_sum(&idb))?, x.len(), x.len(), &wand)?;
            let rhs = trace2_with(&k.direct_sum(&ida).compose(&f)?, x2.len(), x2.len(), &wand)?;
            Ok(ne_mats(
                "sliding",
                &lhs,
                &rhs,
                format!("f = {}, k = {}", j(&f), j(&k)),
            ))
        },
    ));

    laws.push(law(
        "Trace.Vanishing",
        "tracing a sum equals nested traces, in any order",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts.min(2), bounds.max_x);
            let y = gen_mat_obj(rng, bounds.max_parts.min(2), bounds.max_x);
            let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let d = rand_density(rng);
            let xy = MatObj::concat(&[&x, &y]);
            let f = gen_matrix(rng, &MatObj::concat(&[&xy, &a]), &MatObj::concat(&[&xy, &b]), d);
            let all_at_once = trace2_with(&f, xy.len(), xy.len(), &wand)?;
            let inner = trace2_with(&f, x.len(), x.len(), &wand)?;
            let nested = trace2_with(&inner, y.len(), y.len(), &wand)?;
            let inputs = format!("f = {}", j(&f));
            if all_at_once != nested {
                return Ok(Some(format!("vanishing fails: {inputs}")));
            }
            let peeled = trace_n_with(&f, xy.len(), &wand)?;
            if peeled != all_at_once {
                return Ok(Some(format!("peel order disagrees: {inputs}")));
            }
            if trace_n_with(&f, 0, &wand)? != f {
                return Ok(Some(format!("empty trace changed the matrix: {inputs}")));
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "Trace.Superposing",
        "spectator summands pass through",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let c = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let e = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let d = rand_density(rng);
            let f = gen_matrix(rng, &MatObj::concat(&[&x, &a]), &MatObj::concat(&[&x, &b]), d);
            let g = gen_matrix(rng, &c, &e, d);
            let lhs = trace2_with(&f.direct_sum(&g), x.len(), x.len(), &wand)?;
            let rhs = trace2_with(&f, x.len(), x.len(), &wand)?.direct_sum(&g);
            Ok(ne_mats(
                "superposing",
                &lhs,
                &rhs,
                format!("f = {}, g = {}", j(&f), j(&g)),
            ))
        },
    ));

    laws.push(law(
        "Trace.Yanking",
        "tracing the symmetry yields the identity",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let sigma: Matrix = symmetry(&x, &x);
            let traced = trace2_with(&sigma, x.len(), x.len(), &wand)?;
            let id: Matrix = Matrix::identity(&x);
            let sizes: Vec<usize> = x.parts().iter().map(|p| p.size()).collect();
            Ok(ne_mats("yanking", &traced, &id, format!("X = {}", j(&sizes))))
        },
    ));

    laws.push(law(
        "Trace.Uniform",
        "commuting squares transport traces",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let (f_side, fp_side, h) = gen_matrix_uniform_square(rng, bounds)?;
            let lhs = trace2_with(&f_side, h.rows(), h.rows(), &wand)?;
            let rhs = trace2_with(&fp_side, h.cols(), h.cols(), &wand)?;
            Ok(ne_mats("trace uniformity", &lhs, &rhs, format!("h = {}", j(&h))))
        },
    ));

    laws.push(law("Iter.1", "f₂ ⊔ f₁;Iter = Iter", |rng, bounds, mutation| {
        let wand = mutation.matrix_wand();
        let (row, cut) = gen_iter_row(rng, bounds);
        let looped = iterate_with(&row, cut, &wand)?;
        let f1 = row.block(0..row.rows(), 0..cut);
        let f2 = row.block(0..row.rows(), cut..row.cols());
        let lhs = f2.join(&f1.compose(&looped)?)?;
        Ok(ne_mats(
            "iteration fixed point",
            &lhs,
            &looped,
            format!("row = {}", j(&row)),
        ))
    }));

    laws.push(law("Iter.2", "Iter(f;(1 ⊕ h)) = Iter(f);h", |rng, bounds, mutation| {
        let wand = mutation.matrix_wand();
        let (row, cut) = gen_iter_row(rng, bounds);
        let a = row.cod().slice(cut..row.cols());
        let a2 = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let dh = rand_density(rng);
        let h = gen_matrix(rng, &a, &a2, dh);
        let idx: Matrix = Matrix::identity(&row.cod().slice(0..cut));
        let lhs = iterate_with(&row.compose(&idx.direct_sum(&h))?, cut, &wand)?;
        let rhs = iterate_with(&row, cut, &wand)?.compose(&h)?;
        Ok(ne_mats(
            "iteration naturality",
            &lhs,
            &rhs,
            format!("row = {}, h = {}", j(&row), j(&h)),
        ))
    }));

    laws.push(law("Iter.3", "Iter(k;f) = k;Iter(f;(k ⊕ 1))", |rng, bounds, mutation| {
        let wand = mutation.matrix_wand();
        let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let x2 = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let d = rand_density(rng);
        // f: X' → X + A, k: X → X'
        let f = gen_matrix(rng, &x2, &MatObj::concat(&[&x, &a]), d);
        let k = gen_matrix(rng, &x, &x2, d);
        let lhs = iterate_with(&k.compose(&f)?, x.len(), &wand)?;
        let ida: Matrix = Matrix::identity(&a);
        let slid = f.compose(&k.direct_sum(&ida))?;
        let rhs = k.compose(&iterate_with(&slid, x2.len(), &wand)?)?;
        Ok(ne_mats(
            "iteration dinaturality",
            &lhs,
            &rhs,
            format!("f = {}, k = {}", j(&f), j(&k)),
        ))
    }));

    laws.push(law("Iter.4", "a doubled loop collapses", |rng, bounds, mutation| {
        let wand = mutation.matrix_wand();
        let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
        let d = rand_density(rng);
        let row3 = gen_matrix(
            rng,
            &x,
            &MatObj::concat(&[&x, &x, &a]),
            d,
        );
        let xp = x.len();
        let f1 = row3.block(0..row3.rows(), 0..xp);
        let f2 = row3.block(0..row3.rows(), xp..2 * xp);
        let f3 = row3.block(0..row3.rows(), 2 * xp..row3.cols());
        let lhs = iterate_with(&f1.join(&f2)?.hstack(&f3)?, xp, &wand)?;
        let w12 = iterate_with(&f1.hstack(&f2)?, xp, &wand)?;
        let w13 = iterate_with(&f1.hstack(&f3)?, xp, &wand)?;
        let rhs = iterate_with(&w12.hstack(&w13)?, xp, &wand)?;
        Ok(ne_mats("diagonal", &lhs, &rhs, format!("row = {}", j(&row3))))
    }));

    laws.push(law(
        "Iter.bij",
        "iteration and the base wand determine each other",
        |rng, bounds, mutation| {
            let x = rand_obj_nonempty(rng, bounds.max_x);
            let a = rand_obj(rng, bounds.max_a);
            let (f, g) = gen_disjoint_pair(rng, &x, &a);
            let wand_fn = mutation.base_wand();
            let matrix_wand = mutation.matrix_wand();
            let inputs = format!("f = {}, g = {}", j(&f), j(&g));
            // wand → iteration → wand
            let iter = |row: &Matrix, cut: usize| iterate_with(row, cut, &matrix_wand);
            let back = wand_from_iter(&iter, &f, &g)?;
            if back != wand_fn(&f, &g)? {
                return Ok(Some(format!("wand→iter→wand does not close: {inputs}")));
            }
            // iteration → trace → iteration: Tr(∇f) rebuilds Iter
            let row = Matrix::from_base(f.clone()).hstack(&Matrix::from_base(g.clone()))?;
            let tr = |m: &Matrix, dc: usize, cc: usize| trace2_with(m, dc, cc, &matrix_wand);
            let rebuilt = iter_from_trace(&tr, &row, 1)?;
            if rebuilt != iterate_with(&row, 1, &matrix_wand)? {
                return Ok(Some(format!("iter→trace→iter does not close: {inputs}")));
            }
            Ok(None)
        },
    ));

    laws.push(law(
        "Trace.closed",
        "the block trace equals its closed forms",
        |rng, bounds, mutation| {
            let wand = mutation.matrix_wand();
            let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
            let d = rand_density(rng);
            let f = gen_matrix(rng, &MatObj::concat(&[&x, &a]), &MatObj::concat(&[&x, &b]), d);
            let block = trace2_with(&f, x.len(), x.len(), &wand)?;
            let closed = trace2_closed(&f, x.len(), x.len())?;
            let copairing = trace2_copairing(&f, x.len(), x.len())?;
            let inputs = format!("f = {}", j(&f));
            if block != closed {
                return Ok(Some(format!("block vs truncated-sum form: {inputs}")));
            }
            if block != copairing {
                return Ok(Some(format!("block vs copairing form: {inputs}")));
            }
            Ok(None)
        },
    ));

    laws
}

// ---------------------------------------------------------------------------
// shared law bodies
// ---------------------------------------------------------------------------

fn check_r_law(which: u8, f: &PartialMap, g: &PartialMap) -> Option<String> {
    let inputs = format!("f = {}, g = {}", j(f), j(g));
    let run = || -> Result<Option<String>> {
        match which {
            0 => Ok(ne_maps("R.1", &f.restriction().compose(f)?, f, inputs.clone())),
            1 => {
                let rf = f.restriction().into_map();
                let rg = g.restriction().into_map();
                Ok(ne_maps("R.2", &rf.compose(&rg)?, &rg.compose(&rf)?, inputs.clone()))
            }
            2 => {
                let rg = g.restriction().into_map();
                let lhs = rg.compose(f)?.restriction().into_map();
                let rhs = rg.compose(f.restriction().as_map())?;
                Ok(ne_maps("R.3", &lhs, &rhs, inputs.clone()))
            }
            _ => {
                let lhs = f.compose(g.restriction().as_map())?;
                let rhs = f.compose(g)?.restriction().compose(f)?;
                Ok(ne_maps("R.4", &lhs, &rhs, inputs.clone()))
            }
        }
    };
    match run() {
        Ok(out) => out,
        Err(e) => Some(format!("operation failed: {e}; {inputs}")),
    }
}

fn gen_family(rng: &mut Rng, bounds: &Bounds) -> Result<(InterferenceRel, DisjointFamily)> {
    let x = rand_obj(rng, bounds.max_x);
    let c = rand_obj(rng, bounds.max_a);
    let rel = bounds.rel();
    let k = rng.range(0, 4);
    let members = gen_family_for(rng, bounds.rel, &x, &c, k);
    let fam = DisjointFamily::new(&rel, &x, &c, members)?;
    Ok((rel, fam))
}

fn gen_family_for(
    rng: &mut Rng,
    rel: RelChoice,
    dom: &FinObj,
    cod: &FinObj,
    k: usize,
) -> Vec<PartialMap> {
    if k == 0 {
        return Vec::new();
    }
    match rel {
        RelChoice::Maximal => gen_disjoint_family(rng, dom, cod, k),
        RelChoice::Minimal => {
            let mut members = vec![PartialMap::zero(dom, cod); k];
            let idx = rng.below(k);
            let d = rand_density(rng);
            members[idx] = gen_partial_map(rng, dom, cod, d);
            members
        }
    }
}

fn gen_leq_pair(rng: &mut Rng, bounds: &Bounds) -> (PartialMap, PartialMap) {
    let x = rand_obj(rng, bounds.max_x);
    let b = rand_obj(rng, bounds.max_a);
    let d = rand_density(rng);
    let g = gen_partial_map(rng, &x, &b, d);
    let f = gen_submap(rng, &g, 0.6);
    (f, g)
}

fn exhaustive_leq_pairs(
    bounds: &Bounds,
    check: impl Fn(&PartialMap, &PartialMap) -> Result<Option<String>>,
) -> Result<(u64, Option<String>)> {
    let size = bounds.max_x.min(3);
    let x = FinObj::of_size(size);
    let b = FinObj::of_size(bounds.max_a.min(2).max(1));
    let mut cases = 0u64;
    for g in enumerate_maps(&x, &b)? {
        // all submaps of g
        let points = g.domain_indices();
        for mask in 0u64..(1 << points.len()) {
            let mut table = vec![None; x.size()];
            for (bit, &p) in points.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    table[p] = g.apply(p);
                }
            }
            let f = PartialMap::new(x.clone(), b.clone(), table)?;
            cases += 1;
            if let Some(cx) = check(&f, &g)? {
                return Ok((cases, Some(cx)));
            }
        }
    }
    Ok((cases, None))
}

fn exhaustive_endos(
    bounds: &Bounds,
    check: impl Fn(&PartialMap) -> Result<Option<String>>,
) -> Result<(u64, Option<String>)> {
    let x = FinObj::of_size(bounds.max_x.min(3));
    let mut cases = 0u64;
    for f in enumerate_maps(&x, &x)? {
        cases += 1;
        if let Some(cx) = check(&f)? {
            return Ok((cases, Some(cx)));
        }
    }
    Ok((cases, None))
}

fn star_of(mutation: Mutation, f: &PartialMap) -> Result<PartialMap> {
    let wand = mutation.base_wand();
    wand(f, complement(&f.restriction()).as_map())
}

fn check_star1(f: &PartialMap, mutation: Mutation) -> Result<Option<String>> {
    let star = star_of(mutation, f)?;
    let compl = complement(&f.restriction()).into_map();
    let lhs =
        InterferenceRel::maximal().join_maps(f.dom(), f.dom(), &[compl, f.compose(&star)?])?;
    Ok(ne_maps("star fixed point", &lhs, &star, format!("f = {}", j(f))))
}

fn check_star2(h: &PartialMap, f: &PartialMap, mutation: Mutation) -> Result<Option<String>> {
    let lhs = star_of(mutation, &h.compose(f)?)?.compose(h)?;
    let rhs = h
        .compose(&star_of(mutation, &f.compose(h)?)?)?
        .compose(complement(&f.restriction()).as_map())?;
    Ok(ne_maps(
        "star dinaturality",
        &lhs,
        &rhs,
        format!("h = {}, f = {}", j(h), j(f)),
    ))
}

fn check_star3(f: &PartialMap, g: &PartialMap, mutation: Mutation) -> Result<Option<String>> {
    let rel = InterferenceRel::maximal();
    if !rel.perp(f, g)? {
        // reshaping can collide; such draws carry no information
        return Ok(None);
    }
    let joined = rel.join_maps(f.dom(), f.dom(), &[f.clone(), g.clone()])?;
    let lhs = star_of(mutation, &joined)?;
    let fs = star_of(mutation, f)?;
    let rhs = star_of(mutation, &fs.compose(g)?)?.compose(&fs)?;
    Ok(ne_maps(
        "star of a join",
        &lhs,
        &rhs,
        format!("f = {}, g = {}", j(f), j(g)),
    ))
}

fn check_star_bijection(
    f: &PartialMap,
    g: &PartialMap,
    mutation: Mutation,
) -> Result<Option<String>> {
    let wand = mutation.base_wand();
    let inputs = format!("f = {}, g = {}", j(f), j(g));
    // wand → star → wand
    let star = |h: &PartialMap| wand_to_star(&wand, h);
    let back = star_to_wand(star, f, g)?;
    if back != wand(f, g)? {
        return Ok(Some(format!("wand→star→wand does not close: {inputs}")));
    }
    // star → wand → star
    let wand2 = |b: &PartialMap, e: &PartialMap| star_to_wand(|h| star_of(mutation, h), b, e);
    let star_back = wand_to_star(wand2, f)?;
    if star_back != star_of(mutation, f)? {
        return Ok(Some(format!("star→wand→star does not close: {inputs}")));
    }
    Ok(None)
}

fn check_inductive(rng: &mut Rng, bounds: &Bounds, mutation: Mutation) -> Result<Option<String>> {
    let x = rand_obj(rng, bounds.max_x);
    let a = rand_obj(rng, bounds.max_a);
    let (f, g) = gen_disjoint_pair(rng, &x, &a);
    // a nontrivial upper map: widen the exit on points untouched by f and
    // g, then close under the loop; the result satisfies f;h ≤ h, g ≤ h
    let mut extra_table = vec![None; x.size()];
    for i in 0..x.size() {
        if f.apply(i).is_none() && g.apply(i).is_none() && a.size() > 0 && rng.chance(0.4) {
            extra_table[i] = Some(rng.below(a.size()));
        }
    }
    let extra = PartialMap::new(x.clone(), a.clone(), extra_table)?;
    let rel = InterferenceRel::maximal();
    let widened = rel.join_maps(&x, &a, &[g.clone(), extra])?;
    let h = kleene_wand0(&f, &widened)?;
    debug_assert!(f.compose(&h)?.leq(&h)?);
    debug_assert!(g.leq(&h)?);
    let wand = mutation.base_wand();
    let w = wand(&f, &g)?;
    Ok((!w.leq(&h)?).then(|| {
        format!("induction fails: f = {}, g = {}, h = {}", j(&f), j(&g), j(&h))
    }))
}

fn oracle_compare(f: &PartialMap, g: &PartialMap, w: &PartialMap) -> Result<Option<String>> {
    for x in 0..f.dom().size() {
        let simulated = step_simulate(f, g, x)?;
        if w.apply(x) != simulated {
            return Ok(Some(format!(
                "oracle disagrees at {x}: operator gives {:?}, simulation gives {:?}; f = {}, g = {}",
                w.apply(x),
                simulated,
                j(f),
                j(g)
            )));
        }
    }
    Ok(None)
}

fn gen_upper_extra(rng: &mut Rng, joined: &DjMap) -> Result<DjMap> {
    // a completion map disjoint from `joined`: one generator on untouched
    // points of the carrier
    let mut used = vec![false; joined.dom().size()];
    for g in joined.gens() {
        for x in g.domain_indices() {
            used[x] = true;
        }
    }
    let mut table = vec![None; joined.dom().size()];
    for (x, flag) in used.iter().enumerate() {
        if !flag && joined.cod().size() > 0 && rng.chance(0.5) {
            table[x] = Some(rng.below(joined.cod().size()));
        }
    }
    let extra = PartialMap::new(joined.dom().clone(), joined.cod().clone(), table)?;
    Ok(DjMap::embed(&extra))
}

fn gen_matrix_with_partition(rng: &mut Rng, bounds: &Bounds) -> (Matrix, Vec<usize>) {
    let dom = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    // at least one codomain part so a partition exists
    let mut cod = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    if cod.is_empty() {
        cod = MatObj::single(FinObj::of_size(rng.range(1, bounds.max_x.max(1))));
    }
    let d = rand_density(rng);
    let f = gen_matrix(rng, &dom, &cod, d);
    // split the columns into up to three consecutive blocks
    let mut partition = Vec::new();
    let mut remaining = cod.len();
    while remaining > 0 {
        let take = rng.range(1, remaining);
        partition.push(take);
        remaining -= take;
        if partition.len() == 2 && remaining > 0 {
            partition.push(remaining);
            break;
        }
    }
    (f, partition)
}

fn partition_blocks(f: &Matrix, partition: &[usize]) -> Vec<MatObj> {
    let mut blocks = Vec::with_capacity(partition.len());
    let mut start = 0usize;
    for &len in partition {
        blocks.push(f.cod().slice(start..start + len));
        start += len;
    }
    blocks
}

fn gen_iter_row(rng: &mut Rng, bounds: &Bounds) -> (Matrix, usize) {
    let x = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    let d = rand_density(rng);
    let row = gen_matrix(rng, &x, &MatObj::concat(&[&x, &a]), d);
    (row, x.len())
}

/// A matrix commuting square for trace uniformity: the two sides
/// `f: X+A → X+B`, `f': Y+A → Y+B` and the loop change `h: X → Y`
/// (a diagonal of total surjections) with `f;(h ⊕ 1) = (h ⊕ 1);f'`.
fn gen_matrix_uniform_square(rng: &mut Rng, bounds: &Bounds) -> Result<(Matrix, Matrix, Matrix)> {
    let parts = rng.range(1, bounds.max_parts.max(1));
    let mut x_parts = Vec::new();
    let mut y_parts = Vec::new();
    let mut h_blocks = Vec::new();
    for _ in 0..parts {
        let ys = rng.range(1, bounds.max_x.max(1));
        let xs = rng.range(ys, bounds.max_x.max(ys));
        let xo = FinObj::of_size(xs);
        let yo = FinObj::of_size(ys);
        h_blocks.push(gen_surjection(rng, &xo, &yo)?);
        x_parts.push(xo);
        y_parts.push(yo);
    }
    let x = MatObj::new(x_parts);
    let y = MatObj::new(y_parts);
    let h = {
        let mut m: Option<Matrix> = None;
        for blockmap in &h_blocks {
            let lifted = Matrix::from_base(blockmap.clone());
            m = Some(match m {
                None => lifted,
                Some(acc) => acc.direct_sum(&lifted),
            });
        }
        m.expect("at least one part")
    };
    let a = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    let b = gen_mat_obj(rng, bounds.max_parts, bounds.max_x);
    let d = rand_density(rng);

    // primed side top row on Y; unprimed bottom row on X
    let top_prime = gen_matrix(rng, &y, &MatObj::concat(&[&y, &b]), d);
    let f1p = top_prime.block(0..y.len(), 0..y.len());
    let f2p = top_prime.block(0..y.len(), y.len()..top_prime.cols());
    let bottom = gen_matrix(rng, &a, &MatObj::concat(&[&x, &b]), d);
    let f3 = bottom.block(0..a.len(), 0..x.len());
    let f4 = bottom.block(0..a.len(), x.len()..bottom.cols());

    // lift f'₁ through h entrywise; f₂ = h;f'₂; f'₃ = f₃;h
    let f1 = Matrix::from_fn(x.clone(), x.clone(), |r, s| {
        Ok(lift_through(rng, &h_blocks[r], &h_blocks[s], f1p.entry(r, s)))
    })?;
    let f2 = h.compose(&f2p)?;
    let f3p = f3.compose(&h)?;

    let f_side = f1.hstack(&f2)?.vstack(&f3.hstack(&f4)?)?;
    let fp_side = f1p.hstack(&f2p)?.vstack(&f3p.hstack(&f4)?)?;

    // hypothesis: f;(h ⊕ 1_B) = (h ⊕ 1_A);f'
    let idb: Matrix = Matrix::identity(&b);
    let ida: Matrix = Matrix::identity(&a);
    debug_assert_eq!(
        f_side.compose(&h.direct_sum(&idb))?,
        h.direct_sum(&ida).compose(&fp_side)?
    );
    Ok((f_side, fp_side, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_law_resolves_and_aliases_work() {
        for id in law_ids() {
            assert_eq!(resolve_law_id(id), Some(id));
        }
        assert_eq!(resolve_law_id("wand.1"), Some("⩚.1"));
        assert_eq!(resolve_law_id("join.3"), Some("⊔.3"));
        assert_eq!(resolve_law_id("rel.0"), Some("⊥.0"));
        assert_eq!(resolve_law_id("orel.4"), Some("O⊥.4"));
        assert_eq!(resolve_law_id("Yanking"), Some("Trace.Yanking"));
        assert_eq!(resolve_law_id("star.bij"), Some("⋆.bij"));
        assert_eq!(resolve_law_id("relcomp.2"), Some("\\.2"));
        assert_eq!(resolve_law_id("altwand.1"), Some("Alt⩚.1"));
        assert!(resolve_law_id("no-such-law").is_none());
    }

    #[test]
    fn quick_sweep_every_law_passes() {
        let bounds = Bounds::default();
        for id in law_ids() {
            let report = run_law(id, RunMode::Seeded { seed: 7, cases: 25 }, &bounds).unwrap();
            assert!(
                report.passed(),
                "law {id} failed: {:?}",
                report.counterexample
            );
        }
    }

    #[test]
    fn minimal_relation_sweep() {
        let bounds = Bounds::default().with_rel(RelChoice::Minimal);
        for id in [
            "⊥.0", "⊥.1", "⊥.2", "⊥.3", "⊥.4", "⊥.5", "⊔.1", "⊔.2", "⊔.3", "⊔.4", "O⊥.0", "O⊥.4",
        ] {
            let report = run_law(id, RunMode::Seeded { seed: 3, cases: 25 }, &bounds).unwrap();
            assert!(report.passed(), "law {id} failed under the minimal relation");
        }
    }

    #[test]
    fn broken_wand_is_caught_with_replayable_counterexample() {
        let bounds = Bounds::default();
        let report = run_law_mutated(
            "⩚.1",
            RunMode::Seeded { seed: 5, cases: 300 },
            &bounds,
            Mutation::WandGuardOnly,
        )
        .unwrap();
        assert!(!report.passed(), "the guard-only mutation must break ⩚.1");
        let cx = report.counterexample.expect("failure carries a counterexample");
        // replaying the same case index reproduces the same failure
        let replay = run_law_mutated(
            "⩚.1",
            RunMode::Single { seed: 5, case: cx.case },
            &bounds,
            Mutation::WandGuardOnly,
        )
        .unwrap();
        assert_eq!(replay.counterexample.map(|c| c.detail), Some(cx.detail));
    }

    #[test]
    fn unknown_law_is_an_error() {
        assert!(matches!(
            run_law("nonsense", RunMode::Exhaustive, &Bounds::default()),
            Err(Error::UnknownLaw(_))
        ));
    }

    #[test]
    fn oracle_exhaustive_counts_cases() {
        let report = run_law("⩚.oracle", RunMode::Exhaustive, &Bounds::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.cases, 216);
    }
}
