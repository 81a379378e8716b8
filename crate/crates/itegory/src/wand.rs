//! Guarded iteration, complements, and the star operator.
//!
//! For an endomorphism `body: X → X` and a disjoint exit map
//! `exit: X → A`, [`kleene_wand`] iterates the body until the exit
//! applies: the result is the join of `exit`, `body;exit`,
//! `body;body;exit`, … . Over a finite carrier the terms have pairwise
//! disjoint domains inside `X`, so the sequence hits zero after at most
//! `|X|` steps and the join is finite.
//!
//! Points that orbit under the body without ever entering the exit's
//! domain stay undefined in the result: iteration from such a point
//! does not terminate, and the join formula records exactly that.
//!
//! The finite model is classical for the maximal relation: every
//! restriction idempotent has a [`complement`], every `f ≤ g` has a
//! [`relative_complement`], and iteration of an endomorphism alone is
//! captured by [`upper_star`], `f⋆ = f ⩚ f̄ᶜ`. Wand and star determine
//! each other ([`wand_to_star`], [`star_to_wand`]); the conversions take
//! the operator to convert as a closure so round trips can be checked
//! against arbitrary implementations.

use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::{PartialMap, RestIdem};
use crate::interference::InterferenceRel;

/// `body ⩚ exit`: iterate `body` until `exit` applies.
///
/// `body` and `exit` must be disjoint under `rel`; the returned map has
/// the body's domain object as source and the exit's codomain as target.
pub fn kleene_wand(
    rel: &InterferenceRel,
    body: &PartialMap,
    exit: &PartialMap,
) -> Result<PartialMap> {
    if !body.is_endo() {
        return Err(shape_mismatch("kleene_wand", body.dom(), body.cod()));
    }
    if !body.dom().compatible(exit.dom()) {
        return Err(shape_mismatch("kleene_wand", body.dom(), exit.dom()));
    }
    if !rel.perp(body, exit)? {
        return Err(Error::NotDisjoint {
            context: "kleene_wand",
            detail: rel.describe_clash(body, exit),
        });
    }

    let bound = body.dom().size() + 1;
    let mut acc = PartialMap::zero(body.dom(), exit.cod());
    let mut term = exit.clone();
    let mut steps = 0usize;
    while !term.is_zero() {
        steps += 1;
        // Non-zero terms occupy pairwise disjoint parts of the carrier,
        // so zero must be reached within |X| steps.
        assert!(steps <= bound, "iteration failed to stabilize within |X|+1 terms");
        acc = acc.pointwise_union(&term, "kleene_wand")?;
        term = body.compose(&term)?;
    }
    Ok(acc)
}

/// The wand under the maximal relation, the model's canonical case.
pub fn kleene_wand0(body: &PartialMap, exit: &PartialMap) -> Result<PartialMap> {
    kleene_wand(&InterferenceRel::maximal(), body, exit)
}

/// The complementary idempotent: defined exactly where `e` is not.
pub fn complement(e: &RestIdem) -> RestIdem {
    let members: Vec<usize> = (0..e.obj().size())
        .filter(|&x| e.apply(x).is_none())
        .collect();
    RestIdem::from_subset(e.obj(), &members).expect("complement subset is valid")
}

/// The part of `g` lying outside `f`, for `f ≤ g`: `f̄ᶜ g`. Satisfies
/// `(g \ f) ⊥ f` and `(g \ f) ⊔ f = g`.
pub fn relative_complement(f: &PartialMap, g: &PartialMap) -> Result<PartialMap> {
    if !f.leq(g)? {
        return Err(Error::Precondition {
            context: "relative_complement",
            detail: format!("{f} is not below {g}"),
        });
    }
    complement(&f.restriction()).compose(g)
}

/// `f⋆ = f ⩚ f̄ᶜ`: iterate `f` for as long as it is defined, emitting the
/// last point reached. Total maps star to zero; zero stars to identity.
pub fn upper_star(f: &PartialMap) -> Result<PartialMap> {
    if !f.is_endo() {
        return Err(shape_mismatch("upper_star", f.dom(), f.cod()));
    }
    kleene_wand0(f, complement(&f.restriction()).as_map())
}

/// Recover a star operator from a wand: `f⋆ = f ⩚ f̄ᶜ`.
pub fn wand_to_star<W>(wand: W, f: &PartialMap) -> Result<PartialMap>
where
    W: Fn(&PartialMap, &PartialMap) -> Result<PartialMap>,
{
    if !f.is_endo() {
        return Err(shape_mismatch("wand_to_star", f.dom(), f.cod()));
    }
    wand(f, complement(&f.restriction()).as_map())
}

/// Recover a wand from a star operator: `f ⩚ g = f⋆ g`.
pub fn star_to_wand<S>(star: S, body: &PartialMap, exit: &PartialMap) -> Result<PartialMap>
where
    S: Fn(&PartialMap) -> Result<PartialMap>,
{
    let rel = InterferenceRel::maximal();
    if !body.dom().compatible(exit.dom()) {
        return Err(shape_mismatch("star_to_wand", body.dom(), exit.dom()));
    }
    if !rel.perp(body, exit)? {
        return Err(Error::NotDisjoint {
            context: "star_to_wand",
            detail: rel.describe_clash(body, exit),
        });
    }
    star(body)?.compose(exit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finpar::FinObj;
    use crate::lawlab::{gen_disjoint_pair, step_simulate, Rng, Seed};

    fn map(dom: usize, cod: usize, entries: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_entries(FinObj::of_size(dom), FinObj::of_size(cod), entries).unwrap()
    }

    #[test]
    fn chain_reaches_exit() {
        // body walks 0→1→2, exit defined at 2 only: every point lands at `a`
        let body = map(3, 3, &[(0, 1), (1, 2)]);
        let exit = map(3, 1, &[(2, 0)]);
        let w = kleene_wand0(&body, &exit).unwrap();
        assert_eq!(w, map(3, 1, &[(0, 0), (1, 0), (2, 0)]));
    }

    #[test]
    fn cycles_stay_undefined() {
        let body = map(3, 3, &[(0, 1), (1, 0)]);
        let exit = map(3, 1, &[(2, 0)]);
        let w = kleene_wand0(&body, &exit).unwrap();
        assert_eq!(w, map(3, 1, &[(2, 0)]));
    }

    #[test]
    fn zero_body_and_zero_exit() {
        let x3 = FinObj::of_size(3);
        let a = FinObj::of_size(2);
        let exit = map(3, 2, &[(0, 1), (2, 0)]);
        let zero_body = PartialMap::zero(&x3, &x3);
        assert_eq!(kleene_wand0(&zero_body, &exit).unwrap(), exit);
        let body = map(3, 3, &[(0, 1)]);
        let zero_exit = PartialMap::zero(&x3, &a);
        assert_eq!(
            kleene_wand0(&body, &zero_exit).unwrap(),
            PartialMap::zero(&x3, &a)
        );
    }

    #[test]
    fn wand_rejects_overlap_with_point() {
        let body = map(2, 2, &[(0, 1)]);
        let exit = map(2, 1, &[(0, 0)]);
        let err = kleene_wand0(&body, &exit).unwrap_err();
        assert!(err.to_string().contains("element 0"), "{err}");
    }

    #[test]
    fn minimal_relation_wand_is_trivial() {
        // under the minimal relation the only wand is body ⩚ exit = exit
        let rel = InterferenceRel::minimal();
        let x3 = FinObj::of_size(3);
        let exit = map(3, 2, &[(0, 1)]);
        let zero_body = PartialMap::zero(&x3, &x3);
        assert_eq!(kleene_wand(&rel, &zero_body, &exit).unwrap(), exit);
        let body = map(3, 3, &[(0, 1)]);
        let zero_exit = PartialMap::zero(&x3, &FinObj::of_size(2));
        assert_eq!(kleene_wand(&rel, &body, &zero_exit).unwrap(), zero_exit);
    }

    #[test]
    fn complement_examples() {
        let x3 = FinObj::of_size(3);
        let e = RestIdem::from_subset(&x3, &[0, 1]).unwrap();
        assert_eq!(complement(&e), RestIdem::from_subset(&x3, &[2]).unwrap());
        assert_eq!(complement(&RestIdem::identity(&x3)), RestIdem::zero(&x3));
        assert_eq!(complement(&RestIdem::zero(&x3)), RestIdem::identity(&x3));
        // e ⊥ eᶜ and e ⊔ eᶜ = 1
        let ec = complement(&e);
        let rel = InterferenceRel::maximal();
        assert!(rel.perp(e.as_map(), ec.as_map()).unwrap());
        assert_eq!(
            rel.join_maps(&x3, &x3, &[e.into_map(), ec.into_map()]).unwrap(),
            PartialMap::identity(&x3)
        );
    }

    #[test]
    fn relative_complement_examples() {
        let g = map(3, 3, &[(0, 1), (2, 0)]);
        let f = map(3, 3, &[(0, 1)]);
        assert_eq!(relative_complement(&f, &g).unwrap(), map(3, 3, &[(2, 0)]));
        assert!(relative_complement(&g, &g).unwrap().is_zero());
        let zero = PartialMap::zero(&FinObj::of_size(3), &FinObj::of_size(3));
        assert_eq!(relative_complement(&zero, &g).unwrap(), g);
        // precondition: f must be below g
        let other = map(3, 3, &[(1, 1)]);
        assert!(relative_complement(&other, &g).is_err());
    }

    #[test]
    fn star_examples() {
        let f = map(3, 3, &[(0, 1), (1, 2)]);
        assert_eq!(
            upper_star(&f).unwrap(),
            map(3, 3, &[(0, 2), (1, 2), (2, 2)])
        );
        let x3 = FinObj::of_size(3);
        assert!(upper_star(&PartialMap::identity(&x3)).unwrap().is_zero());
        assert_eq!(
            upper_star(&PartialMap::zero(&x3, &x3)).unwrap(),
            PartialMap::identity(&x3)
        );
    }

    #[test]
    fn star_and_wand_convert_both_ways() {
        let f = map(3, 3, &[(0, 1), (1, 2)]);
        let g = map(3, 1, &[(2, 0)]);
        let via_star = star_to_wand(|h| upper_star(h), &f, &g).unwrap();
        assert_eq!(via_star, kleene_wand0(&f, &g).unwrap());

        // zero body: star_to_wand gives 0⋆ g = identity; g = g
        let x3 = FinObj::of_size(3);
        let zero = PartialMap::zero(&x3, &x3);
        assert_eq!(star_to_wand(|h| upper_star(h), &zero, &g).unwrap(), g);
    }

    #[test]
    fn round_trips_on_random_pairs() {
        let x = FinObj::of_size(5);
        for case in 0..100 {
            let mut rng = Rng::new(Seed(11).split(case));
            let (body, exit) = gen_disjoint_pair(&mut rng, &x, &x);
            // wand → star → wand
            let star = |h: &PartialMap| wand_to_star(kleene_wand0, h);
            let back = star_to_wand(star, &body, &exit).unwrap();
            assert_eq!(back, kleene_wand0(&body, &exit).unwrap());
            // star → wand → star
            let wand = |b: &PartialMap, e: &PartialMap| star_to_wand(|h| upper_star(h), b, e);
            let star_back = wand_to_star(wand, &body).unwrap();
            assert_eq!(star_back, upper_star(&body).unwrap());
        }
    }

    #[test]
    fn wand_agrees_with_step_oracle_exhaustively() {
        for (body, exit) in crate::lawlab::enumerate_all(3, 2).unwrap() {
            let w = kleene_wand0(&body, &exit).unwrap();
            for x in 0..3 {
                assert_eq!(
                    w.apply(x),
                    step_simulate(&body, &exit, x).unwrap(),
                    "disagreement at {x} for body {body}, exit {exit}"
                );
            }
        }
    }
}
