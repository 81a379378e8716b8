//! Iteration and trace operators on matrices.
//!
//! A matrix `X → X+A` (codomain split by an explicit cut) iterates to a
//! matrix `X → A` by feeding the `X` output back into the input until it
//! falls into `A`; a matrix `X+A → X+B` traces out `X` the same way.
//! With blocks `G = [G₁ G₂; G₃ G₄]`, the 2×2 trace is
//!
//! ```text
//! Tr(G) = G₄ ⊔ G₃ · (G₁ ⩚ G₂)
//! ```
//!
//! where `G₁ ⩚ G₂` is the matrix-level guarded iteration
//! `⊔ₙ G₁ⁿ·G₂` ([`mat_wand`]), finite for the same reason as on the
//! base: nonzero terms occupy pairwise disjoint parts of the finite
//! carrier.
//!
//! [`trace_n`] traces out any prefix of the object list by peeling one
//! part at a time, left to right, each peel being a 2×2 trace; the
//! vanishing law makes the result independent of the order, which the
//! harness asserts rather than assumes. [`iterate`] feeds a row
//! `X → X+A` through the 2×2 trace with duplicated rows, so iteration,
//! trace, and the base wand are one code path with three faces.
//!
//! The `*_with` variants take the matrix-wand to use as a closure; the
//! law harness passes deliberately broken ones through them to show the
//! trace laws can fail.

use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::PartialMap;
use crate::matext::{codiagonal, BaseMap, BaseObj, MatObj, Matrix};

/// Matrix-level guarded iteration: `⊔ₙ bodyⁿ·exit`, stabilizing within
/// the total carrier size of the body's object list.
pub fn mat_wand<M: BaseMap>(body: &Matrix<M>, exit: &Matrix<M>) -> Result<Matrix<M>> {
    if !body.dom().compatible(body.cod()) {
        return Err(shape_mismatch(
            "mat_wand",
            describe(body.dom()),
            describe(body.cod()),
        ));
    }
    if !body.dom().compatible(exit.dom()) {
        return Err(shape_mismatch(
            "mat_wand",
            describe(body.dom()),
            describe(exit.dom()),
        ));
    }
    if !body.perp_d(exit)? {
        return Err(Error::NotDisjoint {
            context: "mat_wand",
            detail: "body and exit matrices interfere".into(),
        });
    }
    let bound = body.dom().total_size() + 1;
    let mut acc = Matrix::zero(body.dom(), exit.cod());
    let mut term = exit.clone();
    let mut steps = 0usize;
    while !term.is_zero() {
        steps += 1;
        assert!(steps <= bound, "matrix iteration failed to stabilize");
        acc = acc.join(&term)?;
        term = body.compose(&term)?;
    }
    Ok(acc)
}

fn describe<O: BaseObj>(obj: &MatObj<O>) -> String {
    let inner: Vec<String> = obj.parts().iter().map(|p| p.describe()).collect();
    format!("({})", inner.join(", "))
}

fn check_cuts<M: BaseMap>(g: &Matrix<M>, dom_cut: usize, cod_cut: usize) -> Result<()> {
    if dom_cut > g.rows() || cod_cut > g.cols() {
        return Err(Error::Invalid {
            context: "trace",
            detail: format!(
                "cuts ({dom_cut}, {cod_cut}) exceed shape {}×{}",
                g.rows(),
                g.cols()
            ),
        });
    }
    let traced_dom = g.dom().slice(0..dom_cut);
    let traced_cod = g.cod().slice(0..cod_cut);
    if !traced_dom.compatible(&traced_cod) {
        return Err(shape_mismatch(
            "trace",
            describe(&traced_dom),
            describe(&traced_cod),
        ));
    }
    Ok(())
}

/// The 2×2 block trace with an explicit wand: `G₄ ⊔ G₃·wand(G₁, G₂)`.
pub fn trace2_with<M, W>(
    g: &Matrix<M>,
    dom_cut: usize,
    cod_cut: usize,
    wand: &W,
) -> Result<Matrix<M>>
where
    M: BaseMap,
    W: Fn(&Matrix<M>, &Matrix<M>) -> Result<Matrix<M>>,
{
    check_cuts(g, dom_cut, cod_cut)?;
    let g1 = g.block(0..dom_cut, 0..cod_cut);
    let g2 = g.block(0..dom_cut, cod_cut..g.cols());
    let g3 = g.block(dom_cut..g.rows(), 0..cod_cut);
    let g4 = g.block(dom_cut..g.rows(), cod_cut..g.cols());
    let looped = wand(&g1, &g2)?;
    g4.join(&g3.compose(&looped)?)
}

/// The 2×2 block trace: feed the first `dom_cut`/`cod_cut` parts back.
pub fn trace2<M: BaseMap>(g: &Matrix<M>, dom_cut: usize, cod_cut: usize) -> Result<Matrix<M>> {
    trace2_with(g, dom_cut, cod_cut, &mat_wand)
}

/// Trace out the first `cut` parts (where domain and codomain lists must
/// agree), peeling one part at a time from the left; each peel is a 2×2
/// trace whose looped block is a single part.
pub fn trace_n<M: BaseMap>(g: &Matrix<M>, cut: usize) -> Result<Matrix<M>> {
    trace_n_with(g, cut, &mat_wand)
}

/// [`trace_n`] with an explicit wand.
pub fn trace_n_with<M, W>(g: &Matrix<M>, cut: usize, wand: &W) -> Result<Matrix<M>>
where
    M: BaseMap,
    W: Fn(&Matrix<M>, &Matrix<M>) -> Result<Matrix<M>>,
{
    check_cuts(g, cut, cut)?;
    let mut current = g.clone();
    for _ in 0..cut {
        current = trace2_with(&current, 1, 1, wand)?;
    }
    Ok(current)
}

/// Iterate a row `X → X+A` (codomain split at `cod_cut`): duplicate the
/// row into `X+X → X+A` and trace out `X`, yielding `X → A`.
pub fn iterate<M: BaseMap>(row: &Matrix<M>, cod_cut: usize) -> Result<Matrix<M>> {
    iterate_with(row, cod_cut, &mat_wand)
}

/// [`iterate`] with an explicit wand.
pub fn iterate_with<M, W>(row: &Matrix<M>, cod_cut: usize, wand: &W) -> Result<Matrix<M>>
where
    M: BaseMap,
    W: Fn(&Matrix<M>, &Matrix<M>) -> Result<Matrix<M>>,
{
    if cod_cut > row.cols() {
        return Err(Error::Invalid {
            context: "iterate",
            detail: format!("cut {cod_cut} exceeds {} codomain parts", row.cols()),
        });
    }
    let traced = row.cod().slice(0..cod_cut);
    if !row.dom().compatible(&traced) {
        return Err(shape_mismatch("iterate", describe(row.dom()), describe(&traced)));
    }
    let doubled = row.vstack(row)?;
    trace2_with(&doubled, row.rows(), cod_cut, wand)
}

/// Rebuild an iteration operator from a trace routine: `Iter(f) = Tr(∇f)`.
pub fn iter_from_trace<M, T>(trace: &T, row: &Matrix<M>, cod_cut: usize) -> Result<Matrix<M>>
where
    M: BaseMap,
    T: Fn(&Matrix<M>, usize, usize) -> Result<Matrix<M>>,
{
    let traced = row.cod().slice(0..cod_cut);
    if !row.dom().compatible(&traced) {
        return Err(shape_mismatch(
            "iter_from_trace",
            describe(row.dom()),
            describe(&traced),
        ));
    }
    let nabla: Matrix<M> = codiagonal(row.dom(), 2);
    let doubled = nabla.compose(row)?;
    trace(&doubled, row.rows(), cod_cut)
}

/// Rebuild a base-level wand from an iteration operator on single-part
/// matrices: `body ⩚ exit = Iter([body exit])`.
pub fn wand_from_iter<I>(iter: &I, body: &PartialMap, exit: &PartialMap) -> Result<PartialMap>
where
    I: Fn(&Matrix<PartialMap>, usize) -> Result<Matrix<PartialMap>>,
{
    let row = Matrix::from_base(body.clone()).hstack(&Matrix::from_base(exit.clone()))?;
    let out = iter(&row, 1)?;
    Ok(out.entry(0, 0).clone())
}

/// The closed-form 2×2 trace `G₄ ⊔ ⊔ₙ G₃·G₁ⁿ·G₂` with the sum truncated
/// at the total size of the traced object: an independent route kept
/// alongside [`trace2`] so the two can be compared.
pub fn trace2_closed<M: BaseMap>(g: &Matrix<M>, dom_cut: usize, cod_cut: usize) -> Result<Matrix<M>> {
    check_cuts(g, dom_cut, cod_cut)?;
    let g1 = g.block(0..dom_cut, 0..cod_cut);
    let g2 = g.block(0..dom_cut, cod_cut..g.cols());
    let g3 = g.block(dom_cut..g.rows(), 0..cod_cut);
    let g4 = g.block(dom_cut..g.rows(), cod_cut..g.cols());
    let mut acc = g4;
    let mut power = Matrix::identity(g1.dom());
    for _ in 0..=g1.dom().total_size() {
        let term = g3.compose(&power)?.compose(&g2)?;
        acc = acc.join(&term)?;
        power = power.compose(&g1)?;
    }
    Ok(acc)
}

/// The copairing-form trace `ι₂;G ; [Iter(ι₁;G); 1]`, derived from
/// tightening and sliding: a second independent route, compared with
/// the block form on every shape including degenerate ones.
pub fn trace2_copairing<M: BaseMap>(
    g: &Matrix<M>,
    dom_cut: usize,
    cod_cut: usize,
) -> Result<Matrix<M>> {
    check_cuts(g, dom_cut, cod_cut)?;
    let top = g.block(0..dom_cut, 0..g.cols());
    let bottom = g.block(dom_cut..g.rows(), 0..g.cols());
    let looped = iterate(&top, cod_cut)?;
    let cod_rest = g.cod().slice(cod_cut..g.cols());
    let column = looped.vstack(&Matrix::identity(&cod_rest))?;
    bottom.compose(&column)
}

/// Base-level iteration recovered through the matrix machinery; equal to
/// [`kleene_wand0`] pointwise, which the harness checks exhaustively.
pub fn iterate_base(body: &PartialMap, exit: &PartialMap) -> Result<PartialMap> {
    wand_from_iter(&|row, cut| iterate(row, cut), body, exit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finpar::FinObj;
    use crate::matext::symmetry;
    use crate::wand::kleene_wand0;

    fn map(dom: usize, cod: usize, entries: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_entries(FinObj::of_size(dom), FinObj::of_size(cod), entries).unwrap()
    }

    fn obj(sizes: &[usize]) -> MatObj {
        MatObj::new(sizes.iter().copied().map(FinObj::of_size).collect())
    }

    #[test]
    fn yanking_traces_symmetry_to_identity() {
        let x = obj(&[3]);
        let sigma: Matrix = symmetry(&x, &x);
        let traced = trace2(&sigma, 1, 1).unwrap();
        assert_eq!(traced, Matrix::identity(&x));
        // and on multi-part X via trace_n
        let xs = obj(&[2, 2]);
        let sigma2: Matrix = symmetry(&xs, &xs);
        assert_eq!(trace_n(&sigma2, 2).unwrap(), Matrix::identity(&xs));
    }

    #[test]
    fn feedback_example() {
        // X = {0,1}, A = B = {a}; body walks 0→1, exit emits from 1;
        // feedback enters at 0: the traced map sends a ↦ a.
        let g = Matrix::new(
            obj(&[2, 1]),
            obj(&[2, 1]),
            vec![
                vec![map(2, 2, &[(0, 1)]), map(2, 1, &[(1, 0)])],
                vec![map(1, 2, &[(0, 0)]), map(1, 1, &[])],
            ],
        )
        .unwrap();
        let traced = trace2(&g, 1, 1).unwrap();
        assert_eq!(traced.entry(0, 0), &map(1, 1, &[(0, 0)]));
    }

    #[test]
    fn no_feedback_path_returns_lower_right() {
        let g = Matrix::new(
            obj(&[2, 1]),
            obj(&[2, 1]),
            vec![
                vec![map(2, 2, &[(0, 1)]), map(2, 1, &[(1, 0)])],
                vec![map(1, 2, &[]), map(1, 1, &[(0, 0)])],
            ],
        )
        .unwrap();
        let traced = trace2(&g, 1, 1).unwrap();
        assert_eq!(traced.entry(0, 0), &map(1, 1, &[(0, 0)]));
    }

    #[test]
    fn trace_zero_cut_is_identity_operation() {
        let g = Matrix::new(
            obj(&[2]),
            obj(&[2]),
            vec![vec![map(2, 2, &[(0, 1)])]],
        )
        .unwrap();
        assert_eq!(trace_n(&g, 0).unwrap(), g);
    }

    #[test]
    fn iterate_matches_base_wand() {
        let body = map(3, 3, &[(0, 1), (1, 2)]);
        let exit = map(3, 1, &[(2, 0)]);
        let through_matrices = iterate_base(&body, &exit).unwrap();
        assert_eq!(through_matrices, kleene_wand0(&body, &exit).unwrap());
    }

    #[test]
    fn closed_form_and_copairing_agree_with_block_form() {
        let g = Matrix::new(
            obj(&[2, 1]),
            obj(&[2, 1]),
            vec![
                vec![map(2, 2, &[(0, 1)]), map(2, 1, &[(1, 0)])],
                vec![map(1, 2, &[(0, 0)]), map(1, 1, &[])],
            ],
        )
        .unwrap();
        let block = trace2(&g, 1, 1).unwrap();
        assert_eq!(trace2_closed(&g, 1, 1).unwrap(), block);
        assert_eq!(trace2_copairing(&g, 1, 1).unwrap(), block);
    }

    #[test]
    fn degenerate_shapes_trace_consistently() {
        // no traced parts at all: every route returns the matrix itself
        let g = Matrix::new(obj(&[2]), obj(&[1]), vec![vec![map(2, 1, &[(0, 0)])]]).unwrap();
        assert_eq!(trace2(&g, 0, 0).unwrap(), g);
        assert_eq!(trace2_closed(&g, 0, 0).unwrap(), g);
        assert_eq!(trace2_copairing(&g, 0, 0).unwrap(), g);

        // empty residual shape: X+() → X+()
        let x = obj(&[2]);
        let id: Matrix = Matrix::identity(&x);
        let everything_traced = trace2(&id, 1, 1).unwrap();
        assert_eq!(everything_traced.rows(), 0);
        assert_eq!(everything_traced.cols(), 0);
        assert_eq!(trace2_copairing(&id, 1, 1).unwrap(), everything_traced);
    }

    #[test]
    fn vanishing_order_independence() {
        let g = Matrix::new(
            obj(&[2, 2, 1]),
            obj(&[2, 2, 1]),
            vec![
                vec![map(2, 2, &[]), map(2, 2, &[(0, 0)]), map(2, 1, &[(1, 0)])],
                vec![map(2, 2, &[(1, 1)]), map(2, 2, &[]), map(2, 1, &[(0, 0)])],
                vec![map(1, 2, &[(0, 0)]), map(1, 2, &[]), map(1, 1, &[])],
            ],
        )
        .unwrap();
        // block route over both parts at once vs peeling one at a time
        let both = trace2(&g, 2, 2).unwrap();
        let peeled = trace_n(&g, 2).unwrap();
        assert_eq!(both, peeled);
        let nested = trace2(&trace2_with_outer(&g), 1, 1).unwrap();
        assert_eq!(both, nested);
    }

    // trace out the *first* part only, leaving a (2,1)→(2,1) matrix
    fn trace2_with_outer(g: &Matrix) -> Matrix {
        trace2(g, 1, 1).unwrap()
    }
}
