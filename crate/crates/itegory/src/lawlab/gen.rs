//! Deterministic generators and exhaustive enumerators.
//!
//! Generators build disjointness in by construction (domains are
//! partitioned up front rather than rejection-sampled), so high densities
//! cost nothing. Enumerators stream every extensional value exactly once
//! and are capacity-checked.

use crate::error::{Error, Result};
use crate::finpar::{FinObj, PartialMap, RestIdem};
use crate::lawlab::rng::Rng;
use crate::matext::{MatObj, Matrix};

/// A random partial map with roughly `density` of its points defined.
pub fn gen_partial_map(rng: &mut Rng, dom: &FinObj, cod: &FinObj, density: f64) -> PartialMap {
    let mut table = Vec::with_capacity(dom.size());
    for _ in 0..dom.size() {
        if cod.size() > 0 && rng.chance(density) {
            table.push(Some(rng.below(cod.size())));
        } else {
            table.push(None);
        }
    }
    PartialMap::new(dom.clone(), cod.clone(), table).expect("generated table is valid")
}

/// A random endomorphism.
pub fn gen_endo(rng: &mut Rng, obj: &FinObj, density: f64) -> PartialMap {
    gen_partial_map(rng, obj, obj, density)
}

/// A random restriction idempotent.
pub fn gen_rest_idem(rng: &mut Rng, obj: &FinObj, density: f64) -> RestIdem {
    let members: Vec<usize> = (0..obj.size()).filter(|_| rng.chance(density)).collect();
    RestIdem::from_subset(obj, &members).expect("generated subset is valid")
}

/// A random submap of `of` (keeps each defined point with probability
/// `keep`), so the result is `≤ of` by construction.
pub fn gen_submap(rng: &mut Rng, of: &PartialMap, keep: f64) -> PartialMap {
    let table = of
        .table()
        .iter()
        .map(|e| e.filter(|_| rng.chance(keep)))
        .collect();
    PartialMap::new(of.dom().clone(), of.cod().clone(), table).expect("submap table is valid")
}

/// A disjoint pair `(body, exit)` with `body: X → X`, `exit: X → A`:
/// the carrier is split three ways into body-domain, exit-domain, and
/// undefined, so the pair is maximal-disjoint by construction.
pub fn gen_disjoint_pair(rng: &mut Rng, x: &FinObj, a: &FinObj) -> (PartialMap, PartialMap) {
    let mut body_table = vec![None; x.size()];
    let mut exit_table = vec![None; x.size()];
    for i in 0..x.size() {
        match rng.below(3) {
            0 if x.size() > 0 => body_table[i] = Some(rng.below(x.size())),
            1 if a.size() > 0 => exit_table[i] = Some(rng.below(a.size())),
            _ => {}
        }
    }
    (
        PartialMap::new(x.clone(), x.clone(), body_table).expect("body table is valid"),
        PartialMap::new(x.clone(), a.clone(), exit_table).expect("exit table is valid"),
    )
}

/// A family of `k` parallel maps with pairwise disjoint domains
/// (members may be zero).
pub fn gen_disjoint_family(
    rng: &mut Rng,
    dom: &FinObj,
    cod: &FinObj,
    k: usize,
) -> Vec<PartialMap> {
    let mut tables = vec![vec![None; dom.size()]; k];
    for x in 0..dom.size() {
        let owner = rng.below(k + 1);
        if owner < k && cod.size() > 0 {
            tables[owner][x] = Some(rng.below(cod.size()));
        }
    }
    tables
        .into_iter()
        .map(|t| PartialMap::new(dom.clone(), cod.clone(), t).expect("family table is valid"))
        .collect()
}

/// A total surjection `x → y`; requires `|x| ≥ |y|`. Each target gets a
/// distinct preimage first, remaining points map arbitrarily.
pub fn gen_surjection(rng: &mut Rng, x: &FinObj, y: &FinObj) -> Result<PartialMap> {
    if x.size() < y.size() {
        return Err(Error::Precondition {
            context: "gen_surjection",
            detail: format!("|X| = {} < |Y| = {}", x.size(), y.size()),
        });
    }
    if y.size() == 0 {
        if x.size() == 0 {
            return Ok(PartialMap::zero(x, y));
        }
        return Err(Error::Precondition {
            context: "gen_surjection",
            detail: "cannot map a nonempty carrier totally onto an empty one".into(),
        });
    }
    // a random permutation of sources; the first |Y| of them cover Y
    let mut sources: Vec<usize> = (0..x.size()).collect();
    for i in (1..sources.len()).rev() {
        sources.swap(i, rng.below(i + 1));
    }
    let mut table = vec![None; x.size()];
    for (t, &s) in sources.iter().take(y.size()).enumerate() {
        table[s] = Some(t);
    }
    for e in table.iter_mut() {
        if e.is_none() {
            *e = Some(rng.below(y.size()));
        }
    }
    PartialMap::new(x.clone(), y.clone(), table)
}

/// A random object list for the matrix completion.
pub fn gen_mat_obj(rng: &mut Rng, max_parts: usize, max_size: usize) -> MatObj {
    let parts = (0..rng.below(max_parts + 1))
        .map(|_| FinObj::of_size(rng.range(1, max_size.max(1))))
        .collect();
    MatObj::new(parts)
}

/// A random row-disjoint matrix: each row partitions its part's carrier
/// across the columns (or leaves points undefined), so rows are
/// maximal-disjoint by construction.
pub fn gen_matrix(rng: &mut Rng, dom: &MatObj, cod: &MatObj, density: f64) -> Matrix {
    let m = cod.len();
    let mut rows: Vec<Vec<PartialMap>> = Vec::with_capacity(dom.len());
    for part in dom.parts() {
        let mut tables: Vec<Vec<Option<usize>>> = cod
            .parts()
            .iter()
            .map(|c| {
                let _ = c;
                vec![None; part.size()]
            })
            .collect();
        for x in 0..part.size() {
            if m > 0 && rng.chance(density) {
                let col = rng.below(m);
                let target_size = cod.parts()[col].size();
                if target_size > 0 {
                    tables[col][x] = Some(rng.below(target_size));
                }
            }
        }
        rows.push(
            tables
                .into_iter()
                .zip(cod.parts())
                .map(|(t, c)| PartialMap::new(part.clone(), c.clone(), t).expect("valid entry"))
                .collect(),
        );
    }
    Matrix::new(dom.clone(), cod.clone(), rows).expect("generated rows are disjoint")
}

const ENUMERATION_CAP: usize = 200_000;

/// Every partial map between the given carriers, each exactly once.
pub fn enumerate_maps(dom: &FinObj, cod: &FinObj) -> Result<Vec<PartialMap>> {
    let states = (cod.size() + 1)
        .checked_pow(dom.size() as u32)
        .filter(|&s| s <= ENUMERATION_CAP)
        .ok_or_else(|| Error::Capacity {
            context: "enumerate_maps",
            detail: format!("(|cod|+1)^|dom| exceeds {ENUMERATION_CAP}"),
        })?;
    let mut out = Vec::with_capacity(states);
    for code in 0..states {
        let mut rem = code;
        let mut table = Vec::with_capacity(dom.size());
        for _ in 0..dom.size() {
            let digit = rem % (cod.size() + 1);
            rem /= cod.size() + 1;
            table.push(if digit == 0 { None } else { Some(digit - 1) });
        }
        out.push(PartialMap::new(dom.clone(), cod.clone(), table)?);
    }
    Ok(out)
}

/// Every disjoint pair `(body: X → X, exit: X → A)`, each exactly once.
/// Point by point, each element is undefined on both sides, sent into `X`
/// by the body, or sent into `A` by the exit, so the count has the
/// closed form `(1 + |X| + |A|)^|X|`.
pub fn enumerate_all(x_size: usize, a_size: usize) -> Result<Vec<(PartialMap, PartialMap)>> {
    if x_size > 3 || a_size > 2 {
        return Err(Error::Capacity {
            context: "enumerate_all",
            detail: format!("requested |X| = {x_size}, |A| = {a_size}; cap is |X| ≤ 3, |A| ≤ 2"),
        });
    }
    let x = FinObj::of_size(x_size);
    let a = FinObj::of_size(a_size);
    let choices = 1 + x_size + a_size;
    let total = choices.pow(x_size as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut rem = code;
        let mut body_table = vec![None; x_size];
        let mut exit_table = vec![None; x_size];
        for i in 0..x_size {
            let digit = rem % choices;
            rem /= choices;
            if digit == 0 {
                // undefined on both sides
            } else if digit <= x_size {
                body_table[i] = Some(digit - 1);
            } else {
                exit_table[i] = Some(digit - 1 - x_size);
            }
        }
        out.push((
            PartialMap::new(x.clone(), x.clone(), body_table)?,
            PartialMap::new(x.clone(), a.clone(), exit_table)?,
        ));
    }
    Ok(out)
}

/// The closed-form count `(1 + |X| + |A|)^|X|` matching [`enumerate_all`].
pub fn disjoint_pair_count(x_size: usize, a_size: usize) -> usize {
    (1 + x_size + a_size).pow(x_size as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawlab::rng::Seed;

    #[test]
    fn generators_are_deterministic() {
        let x = FinObj::of_size(5);
        let a = FinObj::of_size(3);
        let one = {
            let mut rng = Rng::new(Seed(9).split(3));
            gen_disjoint_pair(&mut rng, &x, &a)
        };
        let two = {
            let mut rng = Rng::new(Seed(9).split(3));
            gen_disjoint_pair(&mut rng, &x, &a)
        };
        assert_eq!(one, two);
    }

    #[test]
    fn zero_density_gives_zero_map() {
        let mut rng = Rng::new(Seed(1));
        let x = FinObj::of_size(4);
        assert!(gen_partial_map(&mut rng, &x, &x, 0.0).is_zero());
    }

    #[test]
    fn disjoint_pairs_are_disjoint() {
        use crate::interference::InterferenceRel;
        let rel = InterferenceRel::maximal();
        let x = FinObj::of_size(6);
        let a = FinObj::of_size(2);
        for case in 0..1000 {
            let mut rng = Rng::new(Seed(77).split(case));
            let (body, exit) = gen_disjoint_pair(&mut rng, &x, &a);
            assert!(rel.perp(&body, &exit).unwrap());
        }
    }

    #[test]
    fn enumeration_matches_closed_form_and_is_duplicate_free() {
        let pairs = enumerate_all(3, 2).unwrap();
        assert_eq!(pairs.len(), disjoint_pair_count(3, 2));
        assert_eq!(pairs.len(), 216);
        let set: std::collections::BTreeSet<_> = pairs.iter().collect();
        assert_eq!(set.len(), pairs.len());

        // the 1/1 case from first principles: three pairs
        let small = enumerate_all(1, 1).unwrap();
        assert_eq!(small.len(), 3);
    }

    #[test]
    fn enumeration_capacity() {
        assert!(matches!(
            enumerate_all(4, 2),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn surjections_cover_target() {
        let x = FinObj::of_size(5);
        let y = FinObj::of_size(3);
        for case in 0..200 {
            let mut rng = Rng::new(Seed(5).split(case));
            let h = gen_surjection(&mut rng, &x, &y).unwrap();
            assert!(h.is_total());
            let mut hit = vec![false; 3];
            for x in 0..5 {
                hit[h.apply(x).unwrap()] = true;
            }
            assert!(hit.into_iter().all(|b| b));
        }
    }
}
