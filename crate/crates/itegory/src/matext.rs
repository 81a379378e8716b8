//! The matrix completion: object lists and row-disjoint matrices.
//!
//! Objects are finite lists of base objects (the empty list is the zero
//! object); a map `(A₁,…,Aₙ) → (B₁,…,Bₘ)` is an `n×m` grid of base maps
//! whose rows are pairwise disjoint families. Composition is matrix
//! multiplication with the disjoint join as sum; the restriction is the
//! diagonal of row-wise joined entry restrictions.
//!
//! Matrices into a repeated object support *decisions*: a decision
//! `d: A → A+…+A` is a row of restriction idempotents recording which
//! block a map's output falls into. [`decision_of`] computes the
//! decision of a matrix against an explicit block partition of its
//! codomain; [`separating_decision`] witnesses the disjointness of two
//! parallel matrices; [`nary_separating_decision`] builds the n-ary
//! decision of a pairwise-disjoint family, which is what makes n-ary
//! joins available here.
//!
//! Disjointness of parallel matrices is decided entrywise:
//! `F ⊥ G` iff every `F(i,j)` is disjoint from every `G(i,k)`.
//!
//! The construction is generic over the base through [`BaseMap`]: the
//! shipped bases are plain partial maps (with the maximal relation) and
//! completion maps from [`crate::djcomp`], so the same code yields both
//! the matrix category over the finite model and the matrix category
//! over its join completion. Block partitions are always explicit
//! arguments, since a flat grid admits many block readings, and all laws are
//! stated on the flat form.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::djcomp::DjMap;
use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::{FinObj, PartialMap};
use crate::interference::InterferenceRel;

/// Base objects a matrix can be built over.
pub trait BaseObj: Clone + PartialEq + fmt::Debug {
    fn size(&self) -> usize;
    fn compatible(&self, other: &Self) -> bool;
    fn describe(&self) -> String;
}

impl BaseObj for FinObj {
    fn size(&self) -> usize {
        FinObj::size(self)
    }
    fn compatible(&self, other: &Self) -> bool {
        FinObj::compatible(self, other)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// Maps of a base category the matrix completion can be applied to:
/// composition, restriction, a chosen disjointness relation, and binary
/// joins of disjoint pairs.
pub trait BaseMap: Clone + PartialEq + fmt::Debug {
    type Obj: BaseObj;

    fn dom_obj(&self) -> &Self::Obj;
    fn cod_obj(&self) -> &Self::Obj;
    fn identity(obj: &Self::Obj) -> Self;
    fn zero_map(dom: &Self::Obj, cod: &Self::Obj) -> Self;
    fn is_zero_map(&self) -> bool;
    fn compose_map(&self, then: &Self) -> Result<Self>;
    fn restriction_map(&self) -> Self;
    fn leq_map(&self, other: &Self) -> Result<bool>;
    /// Disjointness under the base's ambient relation.
    fn perp_map(&self, other: &Self) -> Result<bool>;
    /// Join of a disjoint pair.
    fn join_map(&self, other: &Self) -> Result<Self>;
}

impl BaseMap for PartialMap {
    type Obj = FinObj;

    fn dom_obj(&self) -> &FinObj {
        self.dom()
    }
    fn cod_obj(&self) -> &FinObj {
        self.cod()
    }
    fn identity(obj: &FinObj) -> PartialMap {
        PartialMap::identity(obj)
    }
    fn zero_map(dom: &FinObj, cod: &FinObj) -> PartialMap {
        PartialMap::zero(dom, cod)
    }
    fn is_zero_map(&self) -> bool {
        self.is_zero()
    }
    fn compose_map(&self, then: &PartialMap) -> Result<PartialMap> {
        self.compose(then)
    }
    fn restriction_map(&self) -> PartialMap {
        self.restriction().into_map()
    }
    fn leq_map(&self, other: &PartialMap) -> Result<bool> {
        self.leq(other)
    }
    fn perp_map(&self, other: &PartialMap) -> Result<bool> {
        InterferenceRel::maximal().perp(self, other)
    }
    fn join_map(&self, other: &PartialMap) -> Result<PartialMap> {
        InterferenceRel::maximal().join_maps(self.dom(), self.cod(), &[self.clone(), other.clone()])
    }
}

impl BaseMap for DjMap {
    type Obj = FinObj;

    fn dom_obj(&self) -> &FinObj {
        self.dom()
    }
    fn cod_obj(&self) -> &FinObj {
        self.cod()
    }
    fn identity(obj: &FinObj) -> DjMap {
        DjMap::identity(obj)
    }
    fn zero_map(dom: &FinObj, cod: &FinObj) -> DjMap {
        DjMap::zero(dom, cod)
    }
    fn is_zero_map(&self) -> bool {
        self.is_zero()
    }
    fn compose_map(&self, then: &DjMap) -> Result<DjMap> {
        self.compose(then, &InterferenceRel::maximal())
    }
    fn restriction_map(&self) -> DjMap {
        self.restriction(&InterferenceRel::maximal())
            .expect("restriction of a canonical map is canonical")
    }
    fn leq_map(&self, other: &DjMap) -> Result<bool> {
        self.leq(other)
    }
    fn perp_map(&self, other: &DjMap) -> Result<bool> {
        self.perp(other, &InterferenceRel::maximal())
    }
    fn join_map(&self, other: &DjMap) -> Result<DjMap> {
        DjMap::join(
            &InterferenceRel::maximal(),
            self.dom(),
            self.cod(),
            &[self.clone(), other.clone()],
        )
    }
}

/// A finite list of base objects. The empty list is the zero object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatObj<O = FinObj> {
    parts: Vec<O>,
}

impl<O: BaseObj> MatObj<O> {
    pub fn new(parts: Vec<O>) -> MatObj<O> {
        MatObj { parts }
    }

    pub fn empty() -> MatObj<O> {
        MatObj { parts: Vec::new() }
    }

    pub fn single(part: O) -> MatObj<O> {
        MatObj { parts: vec![part] }
    }

    pub fn parts(&self) -> &[O] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_size(&self) -> usize {
        self.parts.iter().map(|p| p.size()).sum()
    }

    pub fn concat(pieces: &[&MatObj<O>]) -> MatObj<O> {
        MatObj {
            parts: pieces.iter().flat_map(|p| p.parts.iter().cloned()).collect(),
        }
    }

    /// Repeat the whole list `k` times (the codomain shape of a
    /// `k`-ary decision).
    pub fn repeat(&self, k: usize) -> MatObj<O> {
        MatObj {
            parts: (0..k).flat_map(|_| self.parts.iter().cloned()).collect(),
        }
    }

    pub fn compatible(&self, other: &MatObj<O>) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.compatible(b))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> MatObj<O> {
        MatObj {
            parts: self.parts[range].to_vec(),
        }
    }

    fn describe(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(|p| p.describe()).collect();
        format!("({})", inner.join(", "))
    }
}

/// A row-disjoint matrix of base maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<M: BaseMap = PartialMap> {
    dom: MatObj<M::Obj>,
    cod: MatObj<M::Obj>,
    /// Row-major `dom.len() × cod.len()` grid.
    entries: Vec<M>,
}

impl<M: BaseMap> Matrix<M> {
    pub fn new(dom: MatObj<M::Obj>, cod: MatObj<M::Obj>, rows: Vec<Vec<M>>) -> Result<Matrix<M>> {
        if rows.len() != dom.len() {
            return Err(Error::Invalid {
                context: "Matrix::new",
                detail: format!("{} rows for a domain of {} parts", rows.len(), dom.len()),
            });
        }
        let mut entries = Vec::with_capacity(dom.len() * cod.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cod.len() {
                return Err(Error::Invalid {
                    context: "Matrix::new",
                    detail: format!("row {i} has {} entries for {} columns", row.len(), cod.len()),
                });
            }
            for (j, entry) in row.into_iter().enumerate() {
                if !entry.dom_obj().compatible(&dom.parts()[i]) {
                    return Err(shape_mismatch(
                        "Matrix::new",
                        entry.dom_obj().describe(),
                        dom.parts()[i].describe(),
                    ));
                }
                if !entry.cod_obj().compatible(&cod.parts()[j]) {
                    return Err(shape_mismatch(
                        "Matrix::new",
                        entry.cod_obj().describe(),
                        cod.parts()[j].describe(),
                    ));
                }
                entries.push(entry);
            }
        }
        let matrix = Matrix { dom, cod, entries };
        matrix.check_rows_disjoint()?;
        Ok(matrix)
    }

    /// Build entrywise from a function.
    pub fn from_fn(
        dom: MatObj<M::Obj>,
        cod: MatObj<M::Obj>,
        mut f: impl FnMut(usize, usize) -> Result<M>,
    ) -> Result<Matrix<M>> {
        let mut rows = Vec::with_capacity(dom.len());
        for i in 0..dom.len() {
            let mut row = Vec::with_capacity(cod.len());
            for j in 0..cod.len() {
                row.push(f(i, j)?);
            }
            rows.push(row);
        }
        Matrix::new(dom, cod, rows)
    }

    fn check_rows_disjoint(&self) -> Result<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for k in j + 1..self.cols() {
                    if !self.entry(i, j).perp_map(self.entry(i, k))? {
                        return Err(Error::NotDisjoint {
                            context: "Matrix",
                            detail: format!("row {i}: entries at columns {j} and {k} interfere"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(obj: &MatObj<M::Obj>) -> Matrix<M> {
        let entries = (0..obj.len())
            .flat_map(|i| {
                (0..obj.len()).map(move |j| (i, j))
            })
            .map(|(i, j)| {
                if i == j {
                    M::identity(&obj.parts()[i])
                } else {
                    M::zero_map(&obj.parts()[i], &obj.parts()[j])
                }
            })
            .collect();
        Matrix {
            dom: obj.clone(),
            cod: obj.clone(),
            entries,
        }
    }

    pub fn zero(dom: &MatObj<M::Obj>, cod: &MatObj<M::Obj>) -> Matrix<M> {
        let entries = dom
            .parts()
            .iter()
            .flat_map(|d| cod.parts().iter().map(move |c| M::zero_map(d, c)))
            .collect();
        Matrix {
            dom: dom.clone(),
            cod: cod.clone(),
            entries,
        }
    }

    /// Lift a base map to a 1×1 matrix.
    pub fn from_base(map: M) -> Matrix<M> {
        Matrix {
            dom: MatObj::single(map.dom_obj().clone()),
            cod: MatObj::single(map.cod_obj().clone()),
            entries: vec![map],
        }
    }

    pub fn dom(&self) -> &MatObj<M::Obj> {
        &self.dom
    }

    pub fn cod(&self) -> &MatObj<M::Obj> {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.dom.len()
    }

    pub fn cols(&self) -> usize {
        self.cod.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &M {
        &self.entries[i * self.cols() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero_map())
    }

    /// Matrix multiplication: entry `(i,k)` is the join over `j` of
    /// `F(i,j);G(j,k)`. The summed terms are pairwise disjoint because
    /// the row of `F` is, so the join is total.
    pub fn compose(&self, then: &Matrix<M>) -> Result<Matrix<M>> {
        if !self.cod.compatible(&then.dom) {
            return Err(shape_mismatch(
                "Matrix::compose",
                self.cod.describe(),
                then.dom.describe(),
            ));
        }
        Matrix::from_fn(self.dom.clone(), then.cod.clone(), |i, k| {
            let mut acc = M::zero_map(&self.dom.parts()[i], &then.cod.parts()[k]);
            for j in 0..self.cols() {
                let term = self.entry(i, j).compose_map(then.entry(j, k))?;
                acc = acc.join_map(&term)?;
            }
            Ok(acc)
        })
    }

    /// The diagonal of row-wise joins of entry restrictions.
    pub fn restriction(&self) -> Result<Matrix<M>> {
        Matrix::from_fn(self.dom.clone(), self.dom.clone(), |i, j| {
            if i != j {
                return Ok(M::zero_map(&self.dom.parts()[i], &self.dom.parts()[j]));
            }
            let mut acc = M::zero_map(&self.dom.parts()[i], &self.dom.parts()[i]);
            for col in 0..self.cols() {
                acc = acc.join_map(&self.entry(i, col).restriction_map())?;
            }
            Ok(acc)
        })
    }

    /// `F ≤ G` as maps: `F̄ G = F`.
    pub fn leq(&self, other: &Matrix<M>) -> Result<bool> {
        if !self.dom.compatible(&other.dom) || !self.cod.compatible(&other.cod) {
            return Err(shape_mismatch(
                "Matrix::leq",
                self.describe_shape(),
                other.describe_shape(),
            ));
        }
        Ok(self.restriction()?.compose(other)? == *self)
    }

    /// Disjointness of same-domain matrices, decided entrywise: every
    /// entry of a row of `F` against every entry of the same row of `G`.
    /// The codomains may differ.
    pub fn perp_d(&self, other: &Matrix<M>) -> Result<bool> {
        if !self.dom.compatible(&other.dom) {
            return Err(shape_mismatch(
                "Matrix::perp_d",
                self.dom.describe(),
                other.dom.describe(),
            ));
        }
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for k in 0..other.cols() {
                    if !self.entry(i, j).perp_map(other.entry(i, k))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Entrywise join of disjoint parallel matrices.
    pub fn join(&self, other: &Matrix<M>) -> Result<Matrix<M>> {
        if !self.cod.compatible(&other.cod) {
            return Err(shape_mismatch(
                "Matrix::join",
                self.describe_shape(),
                other.describe_shape(),
            ));
        }
        if !self.perp_d(other)? {
            return Err(Error::NotDisjoint {
                context: "Matrix::join",
                detail: "matrices are not entrywise disjoint".into(),
            });
        }
        Matrix::from_fn(self.dom.clone(), self.cod.clone(), |i, j| {
            self.entry(i, j).join_map(other.entry(i, j))
        })
    }

    /// Block-diagonal sum `F + G`.
    pub fn direct_sum(&self, other: &Matrix<M>) -> Matrix<M> {
        let dom = MatObj::concat(&[&self.dom, &other.dom]);
        let cod = MatObj::concat(&[&self.cod, &other.cod]);
        Matrix::from_fn(dom, cod, |i, j| {
            Ok(if i < self.rows() && j < self.cols() {
                self.entry(i, j).clone()
            } else if i >= self.rows() && j >= self.cols() {
                other.entry(i - self.rows(), j - self.cols()).clone()
            } else {
                let d = if i < self.rows() {
                    &self.dom.parts()[i]
                } else {
                    &other.dom.parts()[i - self.rows()]
                };
                let c = if j < self.cols() {
                    &self.cod.parts()[j]
                } else {
                    &other.cod.parts()[j - self.cols()]
                };
                M::zero_map(d, c)
            })
        })
        .expect("direct sum preserves row disjointness")
    }

    /// Horizontal juxtaposition `[F G]` of matrices sharing a domain.
    /// Fails unless the rows of the result are disjoint, i.e. `F ⊥ G`.
    pub fn hstack(&self, other: &Matrix<M>) -> Result<Matrix<M>> {
        if !self.dom.compatible(&other.dom) {
            return Err(shape_mismatch(
                "Matrix::hstack",
                self.dom.describe(),
                other.dom.describe(),
            ));
        }
        let cod = MatObj::concat(&[&self.cod, &other.cod]);
        Matrix::from_fn(self.dom.clone(), cod, |i, j| {
            Ok(if j < self.cols() {
                self.entry(i, j).clone()
            } else {
                other.entry(i, j - self.cols()).clone()
            })
        })
    }

    /// Vertical juxtaposition (copairing) of matrices sharing a codomain.
    pub fn vstack(&self, other: &Matrix<M>) -> Result<Matrix<M>> {
        if !self.cod.compatible(&other.cod) {
            return Err(shape_mismatch(
                "Matrix::vstack",
                self.cod.describe(),
                other.cod.describe(),
            ));
        }
        let dom = MatObj::concat(&[&self.dom, &other.dom]);
        Matrix::from_fn(dom, self.cod.clone(), |i, j| {
            Ok(if i < self.rows() {
                self.entry(i, j).clone()
            } else {
                other.entry(i - self.rows(), j).clone()
            })
        })
    }

    /// Materialize a rectangular block.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix<M> {
        let dom = self.dom.slice(rows.clone());
        let cod = self.cod.slice(cols.clone());
        let mut entries = Vec::with_capacity(dom.len() * cod.len());
        for i in rows {
            for j in cols.clone() {
                entries.push(self.entry(i, j).clone());
            }
        }
        Matrix { dom, cod, entries }
    }

    fn describe_shape(&self) -> String {
        format!("{} → {}", self.dom.describe(), self.cod.describe())
    }
}

impl<M: BaseMap> fmt::Display for Matrix<M>
where
    M: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                write!(f, "{}  ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]: {}", self.describe_shape())
    }
}

/// The injection `ιⱼ` of the `j`-th summand into a concatenation.
pub fn injection<M: BaseMap>(summands: &[MatObj<M::Obj>], j: usize) -> Result<Matrix<M>> {
    if j >= summands.len() {
        return Err(Error::Invalid {
            context: "injection",
            detail: format!("index {j} out of range for {} summands", summands.len()),
        });
    }
    let total = MatObj::concat(&summands.iter().collect::<Vec<_>>());
    let offset: usize = summands[..j].iter().map(|o| o.len()).sum();
    Matrix::from_fn(summands[j].clone(), total, |i, col| {
        Ok(if col == offset + i {
            M::identity(&summands[j].parts()[i])
        } else {
            M::zero_map(&summands[j].parts()[i], total_part(summands, col))
        })
    })
}

/// The quasi-projection `ι°ⱼ` back onto the `j`-th summand: identity on
/// that block, zero elsewhere, so `ιⱼ;ι°ⱼ = 1` and `ιᵢ;ι°ⱼ = 0`.
pub fn quasi_projection<M: BaseMap>(summands: &[MatObj<M::Obj>], j: usize) -> Result<Matrix<M>> {
    if j >= summands.len() {
        return Err(Error::Invalid {
            context: "quasi_projection",
            detail: format!("index {j} out of range for {} summands", summands.len()),
        });
    }
    let total = MatObj::concat(&summands.iter().collect::<Vec<_>>());
    let offset: usize = summands[..j].iter().map(|o| o.len()).sum();
    Matrix::from_fn(total.clone(), summands[j].clone(), |row, i| {
        Ok(if row == offset + i {
            M::identity(&summands[j].parts()[i])
        } else {
            M::zero_map(total_part(summands, row), &summands[j].parts()[i])
        })
    })
}

fn total_part<'a, O: BaseObj>(summands: &'a [MatObj<O>], mut index: usize) -> &'a O {
    for s in summands {
        if index < s.len() {
            return &s.parts()[index];
        }
        index -= s.len();
    }
    panic!("index out of range of summands");
}

/// The codiagonal `∇: A+…+A → A` collapsing `k` copies.
pub fn codiagonal<M: BaseMap>(obj: &MatObj<M::Obj>, k: usize) -> Matrix<M> {
    let dom = obj.repeat(k);
    Matrix::from_fn(dom, obj.clone(), |row, j| {
        let copy_pos = row % obj.len().max(1);
        Ok(if copy_pos == j {
            M::identity(&obj.parts()[j])
        } else {
            M::zero_map(&obj.parts()[row % obj.len()], &obj.parts()[j])
        })
    })
    .expect("codiagonal rows hold a single identity")
}

/// The symmetry `σ: A+B → B+A`.
pub fn symmetry<M: BaseMap>(a: &MatObj<M::Obj>, b: &MatObj<M::Obj>) -> Matrix<M> {
    let dom = MatObj::concat(&[a, b]);
    let cod = MatObj::concat(&[b, a]);
    Matrix::from_fn(dom.clone(), cod.clone(), |i, j| {
        let maps_to = if i < a.len() { b.len() + i } else { i - a.len() };
        Ok(if j == maps_to {
            M::identity(&dom.parts()[i])
        } else {
            M::zero_map(&dom.parts()[i], &cod.parts()[j])
        })
    })
    .expect("symmetry rows hold a single identity")
}

/// A decision: a matrix `A → A+…+A` whose entries are restriction
/// idempotents on the matching parts, arranged in `arity` diagonal
/// blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision<M: BaseMap = PartialMap> {
    matrix: Matrix<M>,
    arity: usize,
}

impl<M: BaseMap> Decision<M> {
    pub fn matrix(&self) -> &Matrix<M> {
        &self.matrix
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The restriction inverse `d° = [d;ι°₁ ; … ; d;ι°ₖ]` (a column),
    /// satisfying `d;d° = d̄` and `d°;d = d̄°`.
    pub fn restriction_inverse(&self) -> Result<Matrix<M>> {
        let dom = self.matrix.dom();
        let summands: Vec<MatObj<M::Obj>> = (0..self.arity).map(|_| dom.clone()).collect();
        let mut column: Option<Matrix<M>> = None;
        for j in 0..self.arity {
            let piece = self.matrix.compose(&quasi_projection(&summands, j)?)?;
            column = Some(match column {
                None => piece,
                Some(acc) => acc.vstack(&piece)?,
            });
        }
        Ok(column.unwrap_or_else(|| Matrix::zero(&MatObj::empty(), dom)))
    }
}

/// The decision of a matrix against an explicit partition of its
/// codomain parts into `partition.len()` consecutive blocks: the block
/// row `[F̄₁ … F̄ₖ]` of blockwise restrictions.
pub fn decision_of<M: BaseMap>(f: &Matrix<M>, partition: &[usize]) -> Result<Decision<M>> {
    let total: usize = partition.iter().sum();
    if total != f.cols() {
        return Err(Error::Invalid {
            context: "decision_of",
            detail: format!(
                "partition {partition:?} does not cover {} codomain parts",
                f.cols()
            ),
        });
    }
    let mut pieces: Vec<Matrix<M>> = Vec::with_capacity(partition.len());
    let mut start = 0usize;
    for &len in partition {
        let block = f.block(0..f.rows(), start..start + len);
        pieces.push(block.restriction()?);
        start += len;
    }
    let mut row: Option<Matrix<M>> = None;
    for piece in pieces {
        row = Some(match row {
            None => piece,
            Some(acc) => acc.hstack(&piece)?,
        });
    }
    let matrix = row.unwrap_or_else(|| Matrix::zero(f.dom(), &MatObj::empty()));
    Ok(Decision {
        matrix,
        arity: partition.len(),
    })
}

/// The separating decision `⟨f|g⟩ = [f̄ ḡ]` of two disjoint parallel
/// matrices; fails with the interfering entries when `f ⊥ g` does not
/// hold.
pub fn separating_decision<M: BaseMap>(f: &Matrix<M>, g: &Matrix<M>) -> Result<Decision<M>> {
    if !f.dom().compatible(g.dom()) || !f.cod().compatible(g.cod()) {
        return Err(shape_mismatch(
            "separating_decision",
            f.describe_shape(),
            g.describe_shape(),
        ));
    }
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            for k in 0..f.cols() {
                if !f.entry(i, j).perp_map(g.entry(i, k))? {
                    return Err(Error::NotDisjoint {
                        context: "separating_decision",
                        detail: format!("entries ({i},{j}) of f and ({i},{k}) of g interfere"),
                    });
                }
            }
        }
    }
    let matrix = f.restriction()?.hstack(&g.restriction()?)?;
    Ok(Decision { matrix, arity: 2 })
}

/// The n-ary separating decision `f̄₁;ι₁ ⊔ … ⊔ f̄ₙ;ιₙ` of a pairwise
/// disjoint family: over a base with strong joins, pairwise disjointness
/// is exactly n-ary decision separation.
pub fn nary_separating_decision<M: BaseMap>(family: &[Matrix<M>]) -> Result<Decision<M>> {
    let first = family.first().ok_or_else(|| Error::Precondition {
        context: "nary_separating_decision",
        detail: "family must be nonempty".into(),
    })?;
    for (i, f) in family.iter().enumerate() {
        for g in &family[i + 1..] {
            if !f.perp_d(g)? {
                return Err(Error::NotDisjoint {
                    context: "nary_separating_decision",
                    detail: format!("family member {i} interferes with a later member"),
                });
            }
        }
    }
    let dom = first.dom();
    let summands: Vec<MatObj<M::Obj>> = (0..family.len()).map(|_| dom.clone()).collect();
    let mut acc: Option<Matrix<M>> = None;
    for (j, f) in family.iter().enumerate() {
        let term = f.restriction()?.compose(&injection(&summands, j)?)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.join(&term)?,
        });
    }
    Ok(Decision {
        matrix: acc.expect("family is nonempty"),
        arity: family.len(),
    })
}

// ---------------------------------------------------------------------------
// JSON interchange for matrices over the finite model:
// {"dom": [n₁, …], "cod": [m₁, …], "entries": [[mapJson, …], …]} row-major.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dom: Vec<usize>,
    cod: Vec<usize>,
    entries: Vec<Vec<PartialMap>>,
}

impl Serialize for Matrix<PartialMap> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dom: self.dom.parts().iter().map(|p| p.size()).collect(),
            cod: self.cod.parts().iter().map(|p| p.size()).collect(),
            entries: (0..self.rows())
                .map(|i| (0..self.cols()).map(|j| self.entry(i, j).clone()).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix<PartialMap> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let dom = MatObj::new(raw.dom.into_iter().map(FinObj::of_size).collect());
        let cod = MatObj::new(raw.cod.into_iter().map(FinObj::of_size).collect());
        Matrix::new(dom, cod, raw.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, entries: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_entries(FinObj::of_size(dom), FinObj::of_size(cod), entries).unwrap()
    }

    fn obj(sizes: &[usize]) -> MatObj {
        MatObj::new(sizes.iter().copied().map(FinObj::of_size).collect())
    }

    #[test]
    fn identity_is_neutral() {
        let dom = obj(&[2, 3]);
        let cod = obj(&[2]);
        let g = Matrix::new(
            dom.clone(),
            cod.clone(),
            vec![
                vec![map(2, 2, &[(0, 1)])],
                vec![map(3, 2, &[(1, 0), (2, 1)])],
            ],
        )
        .unwrap();
        assert_eq!(Matrix::identity(&dom).compose(&g).unwrap(), g);
        assert_eq!(g.compose(&Matrix::identity(&cod)).unwrap(), g);
    }

    #[test]
    fn row_times_column_joins() {
        // [f g] ; [h; k] = [f;h ⊔ g;k]
        let x = FinObj::of_size(4);
        let f = map(4, 4, &[(0, 1)]);
        let g = map(4, 4, &[(2, 3)]);
        let h = map(4, 4, &[(1, 0)]);
        let k = map(4, 4, &[(3, 2)]);
        let row = Matrix::new(
            MatObj::single(x.clone()),
            obj(&[4, 4]),
            vec![vec![f.clone(), g.clone()]],
        )
        .unwrap();
        let col = Matrix::new(
            obj(&[4, 4]),
            MatObj::single(x.clone()),
            vec![vec![h.clone()], vec![k.clone()]],
        )
        .unwrap();
        let prod = row.compose(&col).unwrap();
        let expected = f
            .compose(&h)
            .unwrap()
            .pointwise_union(&g.compose(&k).unwrap(), "test")
            .unwrap();
        assert_eq!(prod.entry(0, 0), &expected);
    }

    #[test]
    fn rows_must_be_disjoint() {
        let x = FinObj::of_size(2);
        let f = map(2, 2, &[(0, 0)]);
        let g = map(2, 2, &[(0, 1)]);
        let err = Matrix::new(
            MatObj::single(x.clone()),
            obj(&[2, 2]),
            vec![vec![f, g]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotDisjoint { .. }));
    }

    #[test]
    fn restriction_is_diagonal_of_row_joins() {
        let f = map(3, 2, &[(0, 1)]);
        let g = map(3, 2, &[(2, 0)]);
        let m = Matrix::new(
            MatObj::single(FinObj::of_size(3)),
            obj(&[2, 2]),
            vec![vec![f.clone(), g.clone()]],
        )
        .unwrap();
        let r = m.restriction().unwrap();
        assert_eq!(r.entry(0, 0), &map(3, 3, &[(0, 0), (2, 2)]));
        // zero and identity
        let z: Matrix = Matrix::zero(&obj(&[2, 3]), &obj(&[1]));
        assert_eq!(z.restriction().unwrap(), Matrix::zero(&obj(&[2, 3]), &obj(&[2, 3])));
        let id: Matrix = Matrix::identity(&obj(&[2, 3]));
        assert_eq!(id.restriction().unwrap(), id);
    }

    #[test]
    fn injections_and_projections() {
        let summands = [obj(&[2]), obj(&[3]), obj(&[1])];
        for j in 0..3 {
            let inj: Matrix = injection(&summands, j).unwrap();
            let proj: Matrix = quasi_projection(&summands, j).unwrap();
            assert_eq!(
                inj.compose(&proj).unwrap(),
                Matrix::identity(&summands[j])
            );
            for i in 0..3 {
                if i != j {
                    let other: Matrix = injection(&summands, i).unwrap();
                    assert!(other.compose(&proj).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn symmetry_is_an_involution() {
        let a = obj(&[2, 1]);
        let b = obj(&[3]);
        let s1: Matrix = symmetry(&a, &b);
        let s2: Matrix = symmetry(&b, &a);
        assert_eq!(
            s1.compose(&s2).unwrap(),
            Matrix::identity(&MatObj::concat(&[&a, &b]))
        );
    }

    #[test]
    fn decision_satisfies_both_axioms() {
        // f: X3 → Y ⊔ Z with f = {0↦(a,block 1), 2↦(b,block 2)}
        let f = Matrix::new(
            MatObj::single(FinObj::of_size(3)),
            obj(&[1, 1]),
            vec![vec![map(3, 1, &[(0, 0)]), map(3, 1, &[(2, 0)])]],
        )
        .unwrap();
        let d = decision_of(&f, &[1, 1]).unwrap();
        // ⟨f⟩ lands x in the block its image falls in
        assert_eq!(d.matrix().entry(0, 0), &map(3, 3, &[(0, 0)]));
        assert_eq!(d.matrix().entry(0, 1), &map(3, 3, &[(2, 2)]));

        // [d.1]: d;∇ = f̄
        let nabla: Matrix = codiagonal(f.dom(), 2);
        assert_eq!(
            d.matrix().compose(&nabla).unwrap(),
            f.restriction().unwrap()
        );

        // [d.2]: d;(f+f) = f;(ι₁+ι₂)
        let blocks = [f.block(0..1, 0..1).cod().clone(), f.block(0..1, 1..2).cod().clone()];
        let lhs = d.matrix().compose(&f.direct_sum(&f)).unwrap();
        let i1: Matrix = injection(&blocks, 0).unwrap();
        let i2: Matrix = injection(&blocks, 1).unwrap();
        let rhs = f.compose(&i1.direct_sum(&i2)).unwrap();
        // careful: f;(ι₁+ι₂) needs the summed injections arranged per block
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decision_of_zero_and_injection() {
        let x = obj(&[2]);
        let z: Matrix = Matrix::zero(&x, &obj(&[1, 1]));
        let d = decision_of(&z, &[1, 1]).unwrap();
        assert!(d.matrix().is_zero());

        // ⟨ι₁⟩ for X → X+X is [1 0]
        let summands = [x.clone(), x.clone()];
        let i1: Matrix = injection(&summands, 0).unwrap();
        let d1 = decision_of(&i1, &[1, 1]).unwrap();
        let expected = Matrix::identity(&x)
            .hstack(&Matrix::zero(&x, &x))
            .unwrap();
        assert_eq!(d1.matrix(), &expected);
    }

    #[test]
    fn separating_decision_examples() {
        let x = MatObj::single(FinObj::of_size(3));
        let f = Matrix::new(x.clone(), obj(&[3]), vec![vec![map(3, 3, &[(0, 1)])]]).unwrap();
        let g = Matrix::new(x.clone(), obj(&[3]), vec![vec![map(3, 3, &[(2, 0)])]]).unwrap();
        let d = separating_decision(&f, &g).unwrap();
        assert_eq!(d.matrix().entry(0, 0), &map(3, 3, &[(0, 0)]));
        assert_eq!(d.matrix().entry(0, 1), &map(3, 3, &[(2, 2)]));

        // ⟨1|0⟩ = ι₁
        let id: Matrix = Matrix::identity(&x);
        let z: Matrix = Matrix::zero(&x, &x);
        let d10 = separating_decision(&id, &z).unwrap();
        let summands = [x.clone(), x.clone()];
        assert_eq!(d10.matrix(), &injection(&summands, 0).unwrap());

        // f ⊥ f with f ≠ 0 is rejected
        assert!(separating_decision(&f, &f).is_err());
    }

    #[test]
    fn restriction_inverse_identities() {
        let f = Matrix::new(
            MatObj::single(FinObj::of_size(4)),
            obj(&[2, 2]),
            vec![vec![map(4, 2, &[(0, 1), (3, 0)]), map(4, 2, &[(2, 0)])]],
        )
        .unwrap();
        let d = decision_of(&f, &[1, 1]).unwrap();
        let dinv = d.restriction_inverse().unwrap();
        assert_eq!(
            d.matrix().compose(&dinv).unwrap(),
            d.matrix().restriction().unwrap()
        );
        assert_eq!(
            dinv.compose(d.matrix()).unwrap(),
            dinv.restriction().unwrap()
        );
    }

    #[test]
    fn empty_object_is_first_class() {
        let empty: MatObj = MatObj::empty();
        let x = obj(&[2]);
        let to: Matrix = Matrix::zero(&empty, &x);
        let from: Matrix = Matrix::zero(&x, &empty);
        assert_eq!(to.rows(), 0);
        assert_eq!(from.cols(), 0);
        let through = from.compose(&to).unwrap();
        assert!(through.is_zero());
        assert_eq!(Matrix::identity(&empty).compose(&to).unwrap(), to);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = Matrix::new(
            obj(&[2, 1]),
            obj(&[2]),
            vec![vec![map(2, 2, &[(0, 1)])], vec![map(1, 2, &[(0, 0)])]],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(json.starts_with(r#"{"dom":[2,1],"cod":[2]"#), "{json}");
    }

    #[test]
    fn dj_base_matrices_compose() {
        use crate::djcomp::DjMap;
        let f = DjMap::embed(&map(2, 2, &[(0, 1)]));
        let g = DjMap::embed(&map(2, 2, &[(1, 0)]));
        let m: Matrix<DjMap> = Matrix::new(
            MatObj::single(FinObj::of_size(2)),
            MatObj::new(vec![FinObj::of_size(2), FinObj::of_size(2)]),
            vec![vec![f.clone(), g.clone()]],
        )
        .unwrap();
        let id = Matrix::identity(m.cod());
        assert_eq!(m.compose(&id).unwrap(), m);
        let r = m.restriction().unwrap();
        assert!(!r.entry(0, 0).is_zero());
    }
}
