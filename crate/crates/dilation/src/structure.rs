//! Structure theory for commuting real matrices: joint generalized
//! eigenspace decomposition, joint triangularization, and the real block
//! diagonalization `B A_j B^{-1} = diag(A_{j,r})` with each block a scalar
//! plus strictly upper triangular matrix over R or C.
//!
//! Spectra are inputs. The exact backend demands eigenvalues in the active
//! exact field and certifies everything; the float backend thresholds.

use serde_json::json;
use thiserror::Error;

use crate::linalg::{self, kernel_basis, solve_matrix, LinalgError, Matrix};
use crate::scalar::field::{ComplexField, Field, RealField};

#[derive(Debug, Error, PartialEq)]
pub enum StructureError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices {0} and {1} do not commute")]
    FailingPair(usize, usize),
    #[error("invalid spectrum for matrix {matrix}: {detail}")]
    SpectrumInvalid { matrix: usize, detail: String },
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("eigenvalue tuple is real; realification needs a conjugate pair")]
    NotConjugatePair,
    #[error("matrix does not respect the block structure: {0}")]
    NotBlockForm(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Scalar field of a block in the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BlockField {
    R,
    C,
}

impl BlockField {
    pub fn real_dim(&self) -> usize {
        match self {
            BlockField::R => 1,
            BlockField::C => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlockInfo {
    pub dim: usize,
    pub field: BlockField,
    /// starting row/column in the realified coordinates
    pub offset: usize,
}

impl BlockInfo {
    pub fn real_size(&self) -> usize {
        self.dim * self.field.real_dim()
    }
}

/// Joint real block diagonalization of a commuting family.
#[derive(Clone)]
pub struct BlockStructure<C: ComplexField> {
    /// change of basis: `basis_change * A_j * basis_change^{-1}` is block diagonal
    pub basis_change: Matrix<C>,
    pub basis_change_inv: Matrix<C>,
    pub blocks: Vec<BlockInfo>,
    /// representative joint eigenvalue tuple per block (one per generator)
    pub tuples: Vec<Vec<C>>,
    /// per generator, per block: the block over its own field (complex d x d
    /// entries for C blocks, real d x d for R blocks)
    pub block_matrices: Vec<Vec<Matrix<C>>>,
    pub ambient: usize,
}

pub fn validate_commuting<C: ComplexField>(mats: &[Matrix<C>]) -> Result<(), StructureError> {
    let n = match mats.first() {
        Some(m) => m.rows(),
        None => return Ok(()),
    };
    for (idx, m) in mats.iter().enumerate() {
        if !m.is_square() || m.rows() != n {
            return Err(StructureError::DimensionMismatch(format!(
                "matrix {idx} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let ab = mats[i].matmul(&mats[j]);
            let ba = mats[j].matmul(&mats[i]);
            let diff = ab.sub(&ba);
            let scale = ab.entries().iter().map(|e| e.approx_abs()).fold(0.0, f64::max);
            if !diff.entries().iter().all(|e| e.is_negligible(scale)) {
                return Err(StructureError::FailingPair(i, j));
            }
        }
    }
    Ok(())
}

/// Basis of the generalized eigenspace `N(A, lambda, V)`, i.e. vectors of the
/// (optionally restricted) space killed by `(A - lambda)^n`. Vectors are
/// returned in ambient coordinates.
pub fn generalized_eigenspace<C: ComplexField>(
    a: &Matrix<C>,
    lambda: &C,
    subspace: Option<&Matrix<C>>,
) -> Result<Vec<Vec<C>>, StructureError> {
    let n = a.rows();
    match subspace {
        None => {
            let shifted = a.sub(&Matrix::identity(n).scale(lambda));
            let power = shifted.pow(n as u32);
            Ok(kernel_basis(&power))
        }
        Some(v) => {
            let restricted = restrict(a, v)?;
            let m = restricted.rows();
            let shifted = restricted.sub(&Matrix::identity(m).scale(lambda));
            // ambient exponent per the definition of N(A, lambda, V)
            let power = shifted.pow(n as u32);
            let coords = kernel_basis(&power);
            Ok(coords.into_iter().map(|k| v.apply(&k)).collect())
        }
    }
}

/// Matrix of `A` restricted to the column span of `v`, in `v`-coordinates.
/// Fails with `NotInvariant` when `A * span(v)` leaves the span.
fn restrict<C: ComplexField>(a: &Matrix<C>, v: &Matrix<C>) -> Result<Matrix<C>, StructureError> {
    let image = a.matmul(v);
    solve_matrix(v, &image).map_err(|_| StructureError::NotInvariant)
}

fn dedup_sorted_spectrum<C: ComplexField>(spec: &[C]) -> Vec<C> {
    let mut vals: Vec<C> = Vec::new();
    for s in spec {
        if !vals.iter().any(|v| v == s) {
            vals.push(s.clone());
        }
    }
    vals.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vals
}

/// Verify a claimed spectrum: every claimed eigenvalue must have a nontrivial
/// generalized eigenspace and the dimensions must exhaust the space.
fn verify_spectrum<C: ComplexField>(
    a: &Matrix<C>,
    spec: &[C],
    index: usize,
) -> Result<(), StructureError> {
    let n = a.rows();
    let mut total = 0;
    for lambda in spec {
        let dim = generalized_eigenspace(a, lambda, None)?.len();
        if dim == 0 {
            return Err(StructureError::SpectrumInvalid {
                matrix: index,
                detail: format!("{lambda} is not an eigenvalue"),
            });
        }
        total += dim;
    }
    if total != n {
        return Err(StructureError::SpectrumInvalid {
            matrix: index,
            detail: format!(
                "generalized eigenspaces cover dimension {total} of {n}; spectrum incomplete"
            ),
        });
    }
    Ok(())
}

/// Joint generalized eigenspace decomposition: pairs of (eigenvalue tuple,
/// basis columns of `N(A, tuple)`), nontrivial spaces only, spanning the
/// whole space. Order is deterministic (tuples sorted per refinement level).
pub fn joint_generalized_decomposition<C: ComplexField>(
    mats: &[Matrix<C>],
    spectra: &[Vec<C>],
) -> Result<Vec<(Vec<C>, Matrix<C>)>, StructureError> {
    validate_commuting(mats)?;
    if mats.len() != spectra.len() {
        return Err(StructureError::DimensionMismatch(
            "one spectrum per matrix required".into(),
        ));
    }
    let n = mats[0].rows();
    let cleaned: Vec<Vec<C>> = spectra.iter().map(|s| dedup_sorted_spectrum(s)).collect();
    for (j, (m, s)) in mats.iter().zip(&cleaned).enumerate() {
        verify_spectrum(m, s, j)?;
    }

    let mut parts: Vec<(Vec<C>, Matrix<C>)> = vec![(Vec::new(), Matrix::identity(n))];
    for (j, a) in mats.iter().enumerate() {
        let mut next = Vec::new();
        for (tuple, v) in &parts {
            let restricted = restrict(a, v)?;
            let m = restricted.rows();
            let mut covered = 0;
            for lambda in &cleaned[j] {
                let shifted = restricted.sub(&Matrix::identity(m).scale(lambda));
                let coords = kernel_basis(&shifted.pow(m as u32));
                if coords.is_empty() {
                    continue;
                }
                covered += coords.len();
                let basis = v.matmul(&Matrix::from_cols(coords));
                let mut t = tuple.clone();
                t.push(lambda.clone());
                next.push((t, basis));
            }
            if covered != m {
                return Err(StructureError::SpectrumInvalid {
                    matrix: j,
                    detail: format!(
                        "restriction splits into dimension {covered} of {m}; spectrum incomplete"
                    ),
                });
            }
        }
        parts = next;
    }
    Ok(parts)
}

/// Triangularizing basis for commuting matrices sharing a single joint
/// eigenvalue tuple: returns `T` with `T^{-1} A_j T` upper triangular, built
/// by finding a common eigenvector, completing with standard basis vectors
/// (greedy by index), and recursing on the complementary block.
pub fn joint_triangularize<C: ComplexField>(
    mats: &[Matrix<C>],
    tuple: &[C],
) -> Result<Matrix<C>, StructureError> {
    let m = match mats.first() {
        Some(a) => a.rows(),
        None => return Ok(Matrix::identity(0)),
    };
    if m <= 1 {
        return Ok(Matrix::identity(m));
    }

    // common eigenvector: intersect plain eigenspaces in sequence
    let mut space = Matrix::<C>::identity(m);
    for (a, lambda) in mats.iter().zip(tuple) {
        let restricted = restrict(a, &space)?;
        let k = restricted.rows();
        let shifted = restricted.sub(&Matrix::identity(k).scale(lambda));
        let coords = kernel_basis(&shifted);
        if coords.is_empty() {
            return Err(StructureError::SpectrumInvalid {
                matrix: 0,
                detail: "no common eigenvector; tuple is not a joint eigenvalue".into(),
            });
        }
        space = space.matmul(&Matrix::from_cols(coords));
    }
    let eigvec = space.col(0);

    // complete to a basis: eigenvector first, then standard vectors
    let mut cols = vec![eigvec];
    for i in 0..m {
        if cols.len() == m {
            break;
        }
        let mut e = vec![C::zero(); m];
        e[i] = C::one();
        let mut candidate = cols.clone();
        candidate.push(e.clone());
        if linalg::rank(&Matrix::from_cols(candidate.clone())) == cols.len() + 1 {
            cols.push(e);
        }
    }
    let p = Matrix::from_cols(cols);
    let p_inv = linalg::inverse(&p)?;

    // conjugate, recurse on the trailing (m-1)-block
    let conj: Vec<Matrix<C>> = mats
        .iter()
        .map(|a| p_inv.matmul(&a.matmul(&p)))
        .collect();
    let tails: Vec<Matrix<C>> = conj.iter().map(|c| c.submatrix(1..m, 1..m)).collect();
    let sub = joint_triangularize(&tails, tuple)?;

    let mut lift = Matrix::<C>::identity(m);
    for i in 0..m - 1 {
        for j in 0..m - 1 {
            lift.set(i + 1, j + 1, sub.get(i, j).clone());
        }
    }
    Ok(p.matmul(&lift))
}

/// The R-algebra embedding replacing each complex entry `a+bi` by the 2x2
/// real cell `[[a, -b], [b, a]]`.
pub fn complex_embedding<C: ComplexField>(a: &Matrix<C>) -> Matrix<C> {
    let n = a.rows();
    let c = a.cols();
    let mut out = Matrix::zero(2 * n, 2 * c);
    for i in 0..n {
        for j in 0..c {
            let e = a.get(i, j);
            let re = C::from_real(e.re());
            let im = C::from_real(e.im());
            out.set(2 * i, 2 * j, re.clone());
            out.set(2 * i, 2 * j + 1, im.neg());
            out.set(2 * i + 1, 2 * j, im);
            out.set(2 * i + 1, 2 * j + 1, re);
        }
    }
    out
}

/// Replace a complex basis `v_1..v_d` of `N(A, tuple)` (a non-real tuple) by
/// the real vectors `Im v_1, Re v_1, ..., Im v_d, Re v_d` spanning
/// `N(A, tuple) + N(A, conj tuple)`; the restricted generator blocks become
/// exactly `i_C(C_j)`. (With the pair order reversed the blocks would carry
/// the conjugate eigenvalues instead.)
pub fn realify_conjugate_pair<C: ComplexField>(
    basis: &Matrix<C>,
    blocks: &[Matrix<C>],
    tuple: &[C],
) -> Result<(Matrix<C>, Vec<Matrix<C>>), StructureError> {
    if tuple.iter().all(|l| l.is_real()) {
        return Err(StructureError::NotConjugatePair);
    }
    let n = basis.rows();
    let d = basis.cols();
    let mut real_cols: Vec<Vec<C>> = Vec::with_capacity(2 * d);
    for j in 0..d {
        let col = basis.col(j);
        real_cols.push(col.iter().map(|e| C::from_real(e.im())).collect());
        real_cols.push(col.iter().map(|e| C::from_real(e.re())).collect());
    }
    let real_basis = Matrix::from_fn(n, 2 * d, |i, j| real_cols[j][i].clone());
    let realified = blocks.iter().map(|b| complex_embedding(b)).collect();
    Ok((real_basis, realified))
}

fn tuple_is_real<C: ComplexField>(tuple: &[C]) -> bool {
    tuple.iter().all(|l| l.is_real())
}

/// First non-real component has positive imaginary part: the canonical
/// representative of a conjugate tuple pair.
fn is_canonical_representative<C: ComplexField>(tuple: &[C]) -> bool {
    for l in tuple {
        if !l.is_real() {
            return l.im().to_f64() > 0.0;
        }
    }
    true
}

fn tuple_sort_key<C: ComplexField>(tuple: &[C]) -> Vec<(f64, f64, String)> {
    tuple.iter().map(|l| l.sort_key()).collect()
}

/// Joint real block diagonalization. Blocks come out real-field first, each
/// class sorted lexicographically by eigenvalue tuple.
pub fn block_diagonalize<C: ComplexField>(
    mats: &[Matrix<C>],
    spectra: &[Vec<C>],
) -> Result<BlockStructure<C>, StructureError> {
    let n = mats
        .first()
        .map(Matrix::rows)
        .ok_or_else(|| StructureError::DimensionMismatch("no matrices given".into()))?;
    let parts = joint_generalized_decomposition(mats, spectra)?;

    let mut real_parts: Vec<(Vec<C>, Matrix<C>)> = Vec::new();
    let mut complex_parts: Vec<(Vec<C>, Matrix<C>)> = Vec::new();
    for (tuple, basis) in parts {
        if tuple_is_real(&tuple) {
            real_parts.push((tuple, basis));
        } else if is_canonical_representative(&tuple) {
            complex_parts.push((tuple, basis));
        }
        // non-canonical conjugates are re-created from their partner
    }
    let key = |t: &Vec<C>| tuple_sort_key(t);
    real_parts.sort_by(|a, b| {
        key(&a.0)
            .partial_cmp(&key(&b.0))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    complex_parts.sort_by(|a, b| {
        key(&a.0)
            .partial_cmp(&key(&b.0))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut blocks = Vec::new();
    let mut tuples = Vec::new();
    let mut block_matrices: Vec<Vec<Matrix<C>>> = vec![Vec::new(); mats.len()];
    let mut global_cols: Vec<Vec<C>> = Vec::new();
    let mut offset = 0;

    for (tuple, basis) in &real_parts {
        let d = basis.cols();
        let restricted: Result<Vec<Matrix<C>>, _> =
            mats.iter().map(|a| restrict(a, basis)).collect();
        let restricted = restricted?;
        let t = joint_triangularize(&restricted, tuple)?;
        let t_inv = linalg::inverse(&t)?;
        let cols_matrix = basis.matmul(&t);
        for j in 0..d {
            global_cols.push(cols_matrix.col(j));
        }
        for (j, r) in restricted.iter().enumerate() {
            block_matrices[j].push(t_inv.matmul(&r.matmul(&t)));
        }
        blocks.push(BlockInfo {
            dim: d,
            field: BlockField::R,
            offset,
        });
        tuples.push(tuple.clone());
        offset += d;
    }

    for (tuple, basis) in &complex_parts {
        let d = basis.cols();
        let restricted: Result<Vec<Matrix<C>>, _> =
            mats.iter().map(|a| restrict(a, basis)).collect();
        let restricted = restricted?;
        let t = joint_triangularize(&restricted, tuple)?;
        let t_inv = linalg::inverse(&t)?;
        let tri_basis = basis.matmul(&t);
        let cblocks: Vec<Matrix<C>> = restricted
            .iter()
            .map(|r| t_inv.matmul(&r.matmul(&t)))
            .collect();
        let (real_basis, _) = realify_conjugate_pair(&tri_basis, &cblocks, tuple)?;
        for j in 0..2 * d {
            global_cols.push(real_basis.col(j));
        }
        for (j, c) in cblocks.into_iter().enumerate() {
            block_matrices[j].push(c);
        }
        blocks.push(BlockInfo {
            dim: d,
            field: BlockField::C,
            offset,
        });
        tuples.push(tuple.clone());
        offset += 2 * d;
    }

    if offset != n {
        return Err(StructureError::SpectrumInvalid {
            matrix: 0,
            detail: format!("blocks cover dimension {offset} of {n}"),
        });
    }

    let w = Matrix::from_cols(global_cols);
    let basis_change = linalg::inverse(&w)?;
    let structure = BlockStructure {
        basis_change,
        basis_change_inv: w,
        blocks,
        tuples,
        block_matrices,
        ambient: n,
    };

    // exact invariant: the conjugated generators equal the assembled blocks
    if C::Real::is_exact() {
        for (j, a) in mats.iter().enumerate() {
            let conj = structure
                .basis_change
                .matmul(&a.matmul(&structure.basis_change_inv));
            if conj != structure.assemble(j) {
                return Err(StructureError::NotBlockForm(format!(
                    "conjugated generator {j} does not match its blocks"
                )));
            }
        }
    }
    Ok(structure)
}

impl<C: ComplexField> BlockStructure<C> {
    pub fn torus_dimension(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.field == BlockField::C)
            .count()
    }

    pub fn all_real(&self) -> bool {
        self.blocks.iter().all(|b| b.field == BlockField::R)
    }

    /// Realified block-diagonal form of generator `j`.
    pub fn assemble(&self, j: usize) -> Matrix<C> {
        let mut out = Matrix::zero(self.ambient, self.ambient);
        for (r, info) in self.blocks.iter().enumerate() {
            let block = &self.block_matrices[j][r];
            let realified = match info.field {
                BlockField::R => block.clone(),
                BlockField::C => complex_embedding(block),
            };
            for i in 0..realified.rows() {
                for k in 0..realified.cols() {
                    out.set(info.offset + i, info.offset + k, realified.get(i, k).clone());
                }
            }
        }
        out
    }

    /// Express an arbitrary matrix of the surrounding algebra in block
    /// coordinates: per block, a complex (or real) `d x d` matrix. Fails if
    /// the conjugated matrix is not block diagonal of the expected shape.
    pub fn transform(&self, x: &Matrix<C>) -> Result<Vec<Matrix<C>>, StructureError> {
        if x.rows() != self.ambient || x.cols() != self.ambient {
            return Err(StructureError::DimensionMismatch(format!(
                "expected {0}x{0}",
                self.ambient
            )));
        }
        let conj = self.basis_change.matmul(&x.matmul(&self.basis_change_inv));
        let scale = conj
            .entries()
            .iter()
            .map(|e| e.approx_abs())
            .fold(0.0, f64::max);
        // off-block entries must vanish
        for i in 0..self.ambient {
            for j in 0..self.ambient {
                let inside = self.blocks.iter().any(|b| {
                    let end = b.offset + b.real_size();
                    i >= b.offset && i < end && j >= b.offset && j < end
                });
                if !inside && !conj.get(i, j).is_negligible(scale) {
                    return Err(StructureError::NotBlockForm(format!(
                        "entry ({i},{j}) nonzero outside the blocks"
                    )));
                }
            }
        }
        let mut out = Vec::with_capacity(self.blocks.len());
        for info in &self.blocks {
            let o = info.offset;
            match info.field {
                BlockField::R => {
                    out.push(conj.submatrix(o..o + info.dim, o..o + info.dim));
                }
                BlockField::C => {
                    let d = info.dim;
                    let mut block = Matrix::zero(d, d);
                    for i in 0..d {
                        for j in 0..d {
                            let a = conj.get(o + 2 * i, o + 2 * j).re();
                            let b = conj.get(o + 2 * i + 1, o + 2 * j).re();
                            // the cell must match i_C: [[a, -b], [b, a]]
                            let want_nb = conj.get(o + 2 * i, o + 2 * j + 1).re();
                            let want_a = conj.get(o + 2 * i + 1, o + 2 * j + 1).re();
                            let ok_a = C::from_real(a.sub(&want_a)).is_negligible(scale);
                            let ok_b = C::from_real(b.add(&want_nb)).is_negligible(scale);
                            if !ok_a || !ok_b {
                                return Err(StructureError::NotBlockForm(format!(
                                    "cell ({i},{j}) of a complex block is not of i_C form"
                                )));
                            }
                            block.set(i, j, C::from_parts(a, b));
                        }
                    }
                    out.push(block);
                }
            }
        }
        Ok(out)
    }

    /// JSON form: change of basis, block descriptors, per-generator blocks.
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let render = |m: &Matrix<C>| -> serde_json::Value {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect();
            json!(rows)
        };
        let blocks: Vec<_> = self
            .blocks
            .iter()
            .zip(&self.tuples)
            .map(|(b, t)| {
                json!({
                    "d": b.dim,
                    "K": match b.field { BlockField::R => "R", BlockField::C => "C" },
                    "tuple": t.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut block_mats = serde_json::Map::new();
        for (j, name) in names.iter().enumerate() {
            let per: Vec<_> = self.block_matrices[j].iter().map(render).collect();
            block_mats.insert(name.clone(), json!(per));
        }
        json!({
            "B": render(&self.basis_change),
            "blocks": blocks,
            "blockMatrices": block_mats,
        })
    }
}

/// Multiset of block descriptors, for structure comparisons.
pub fn block_signature<C: ComplexField>(s: &BlockStructure<C>) -> Vec<(usize, BlockField)> {
    let mut sig: Vec<(usize, BlockField)> = s.blocks.iter().map(|b| (b.dim, b.field)).collect();
    sig.sort_by_key(|(d, f)| (*d, matches!(f, BlockField::C)));
    sig
}

/// Check that a square matrix is strictly upper triangular.
pub fn is_strictly_upper<C: ComplexField>(m: &Matrix<C>) -> bool {
    let scale = m.entries().iter().map(|e| e.approx_abs()).fold(0.0, f64::max);
    for i in 0..m.rows() {
        for j in 0..=i.min(m.cols() - 1) {
            if !m.get(i, j).is_negligible(scale) {
                return false;
            }
        }
    }
    true
}

/// Split a single-eigenvalue block into its diagonal scalar and nilpotent
/// part; fails if the diagonal is not constant or the lower part nonzero.
pub fn split_scalar_nilpotent<C: ComplexField>(
    block: &Matrix<C>,
) -> Result<(C, Matrix<C>), StructureError> {
    let d = block.rows();
    let scale = block
        .entries()
        .iter()
        .map(|e| e.approx_abs())
        .fold(0.0, f64::max);
    let alpha = block.get(0, 0).clone();
    for i in 0..d {
        if !block.get(i, i).sub(&alpha).is_negligible(scale) {
            return Err(StructureError::NotBlockForm(
                "block diagonal is not a constant scalar".into(),
            ));
        }
        for j in 0..i {
            if !block.get(i, j).is_negligible(scale) {
                return Err(StructureError::NotBlockForm(
                    "block has entries below the diagonal".into(),
                ));
            }
        }
    }
    let mut nil = block.clone();
    for i in 0..d {
        nil.set(i, i, C::zero());
        for j in 0..i {
            nil.set(i, j, C::zero());
        }
    }
    Ok((alpha, nil))
}

/// Determinant of the realified matrix from its blocks: real blocks
/// contribute `det` directly, complex blocks `|det|^2`.
pub fn det_from_blocks<C: ComplexField>(
    s: &BlockStructure<C>,
    j: usize,
) -> C {
    let mut acc = C::one();
    for (r, info) in s.blocks.iter().enumerate() {
        let d = linalg::det(&s.block_matrices[j][r]);
        match info.field {
            BlockField::R => acc = acc.mul(&d),
            BlockField::C => acc = acc.mul(&d.mul(&d.conj())),
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::scalar::complex::SymComplex;
    use crate::scalar::rational::Rational;
    use crate::scalar::symbolic::SymReal;

    type M = Matrix<SymComplex>;

    fn c(n: i64) -> SymComplex {
        SymComplex::from_i64(n)
    }

    fn ci(re: i64, im: i64) -> SymComplex {
        SymComplex::from_parts(
            SymReal::from_rational(Rational::from_integer(re)),
            SymReal::from_rational(Rational::from_integer(im)),
        )
    }

    fn rot() -> M {
        M::from_i64_rows(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn commuting_validation() {
        let d1 = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let d2 = M::from_i64_rows(&[&[5, 0], &[0, 7]]);
        assert!(validate_commuting(&[d1, d2]).is_ok());
        let e12 = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let e21 = M::from_i64_rows(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            validate_commuting(&[e12, e21]),
            Err(StructureError::FailingPair(0, 1))
        );
        assert!(validate_commuting(&[M::identity(2)]).is_ok());
    }

    #[test]
    fn eigenspace_diag() {
        let a = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let e2 = generalized_eigenspace(&a, &c(2), None).unwrap();
        assert_eq!(e2.len(), 1);
        assert_eq!(e2[0], vec![SymComplex::one(), SymComplex::zero()]);
        assert!(generalized_eigenspace(&a, &c(5), None).unwrap().is_empty());
    }

    #[test]
    fn eigenspace_jordan() {
        let a = M::from_i64_rows(&[&[2, 1], &[0, 2]]);
        let e = generalized_eigenspace(&a, &c(2), None).unwrap();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn eigenspace_not_invariant() {
        let a = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        // span(e2) is not invariant under E12
        let v = M::from_cols(vec![vec![SymComplex::zero(), SymComplex::one()]]);
        assert_eq!(
            generalized_eigenspace(&a, &c(0), Some(&v)),
            Err(StructureError::NotInvariant)
        );
    }

    #[test]
    fn joint_decomposition_diag() {
        let a = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let parts = joint_generalized_decomposition(&[a], &[vec![c(2), c(3)]]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![c(2)]);
        assert_eq!(parts[1].0, vec![c(3)]);
    }

    #[test]
    fn joint_decomposition_rotation() {
        // eigenvalues i and -i; conjugate lines
        let parts =
            joint_generalized_decomposition(&[rot()], &[vec![ci(0, 1), ci(0, -1)]]).unwrap();
        assert_eq!(parts.len(), 2);
        for (tuple, basis) in &parts {
            assert_eq!(basis.cols(), 1);
            // A v = lambda v (solved independently here as the oracle)
            let v = basis.col(0);
            let av = rot().apply(&v);
            let lv: Vec<SymComplex> = v.iter().map(|x| x.mul(&tuple[0])).collect();
            assert_eq!(av, lv);
        }
    }

    #[test]
    fn joint_decomposition_shear_pair() {
        // commuting pair: 2*I and 3*I + E12; single joint tuple (2,3)
        let a = M::identity(2).scale(&c(2));
        let b = M::from_i64_rows(&[&[3, 1], &[0, 3]]);
        let parts =
            joint_generalized_decomposition(&[a.clone(), b.clone()], &[vec![c(2)], vec![c(3)]])
                .unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, vec![c(2), c(3)]);
        assert_eq!(parts[0].1.cols(), 2);
        // oracle: kernels of (A1-2)^2 and (A2-3)^2 are everything
        let k1 = generalized_eigenspace(&a, &c(2), None).unwrap();
        let k2 = generalized_eigenspace(&b, &c(3), None).unwrap();
        assert_eq!((k1.len(), k2.len()), (2, 2));
    }

    #[test]
    fn spectrum_validation_rejects() {
        let a = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let err = joint_generalized_decomposition(&[a.clone()], &[vec![c(2), c(5)]]);
        assert!(matches!(
            err,
            Err(StructureError::SpectrumInvalid { matrix: 0, .. })
        ));
        let err2 = joint_generalized_decomposition(&[a], &[vec![c(2)]]);
        assert!(matches!(
            err2,
            Err(StructureError::SpectrumInvalid { matrix: 0, .. })
        ));
    }

    #[test]
    fn triangularize_already_triangular() {
        let a = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let b = M::from_i64_rows(&[&[2, 3], &[0, 2]]);
        let t = joint_triangularize(&[a.clone(), b.clone()], &[c(1), c(2)]).unwrap();
        let t_inv = linalg::inverse(&t).unwrap();
        for m in [&a, &b] {
            let conj = t_inv.matmul(&m.matmul(&t));
            assert!(conj.get(1, 0).is_zero());
        }
    }

    #[test]
    fn triangularize_symmetric_swap() {
        let a = M::from_i64_rows(&[&[0, 1], &[1, 0]]); // eigenvalues 1, -1
        let parts = joint_generalized_decomposition(&[a.clone()], &[vec![c(1), c(-1)]]).unwrap();
        // blocks are one-dimensional; eigenvectors proportional to (1,1),(1,-1)
        for (tuple, basis) in parts {
            let v = basis.col(0);
            let av = a.apply(&v);
            let lv: Vec<SymComplex> = v.iter().map(|x| x.mul(&tuple[0])).collect();
            assert_eq!(av, lv);
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        let i = M::from_rows(vec![vec![SymComplex::i()]]);
        let e = complex_embedding(&i);
        assert_eq!(e, M::from_i64_rows(&[&[0, -1], &[1, 0]]));
        let one = M::identity(2);
        assert_eq!(complex_embedding(&one), M::identity(4));
        let z = M::from_rows(vec![vec![ci(1, 2)]]);
        assert_eq!(complex_embedding(&z), M::from_i64_rows(&[&[1, -2], &[2, 1]]));
        // multiplicativity on random-ish entries
        let a = M::from_rows(vec![vec![ci(1, 2), ci(0, -1)], vec![ci(3, 0), ci(2, 2)]]);
        let b = M::from_rows(vec![vec![ci(-1, 1), ci(2, 0)], vec![ci(0, 2), ci(1, -1)]]);
        assert_eq!(
            complex_embedding(&a.matmul(&b)),
            complex_embedding(&a).matmul(&complex_embedding(&b))
        );
        assert_eq!(
            complex_embedding(&a.add(&b)),
            complex_embedding(&a).add(&complex_embedding(&b))
        );
    }

    #[test]
    fn realify_rejects_real_tuple() {
        let basis = M::identity(1);
        let err = realify_conjugate_pair(&basis, &[M::identity(1)], &[c(2)]);
        assert_eq!(err.unwrap_err(), StructureError::NotConjugatePair);
    }

    #[test]
    fn realify_rotation_line() {
        // v = (1, -i) spans N(rot, i); basis pair (Im v, Re v), block i_C(i)
        let v = M::from_cols(vec![vec![SymComplex::one(), ci(0, -1)]]);
        let block = M::from_rows(vec![vec![SymComplex::i()]]);
        let (real_basis, blocks) =
            realify_conjugate_pair(&v, &[block], &[SymComplex::i()]).unwrap();
        assert_eq!(real_basis, M::from_i64_rows(&[&[0, 1], &[-1, 0]]));
        assert_eq!(blocks[0], M::from_i64_rows(&[&[0, -1], &[1, 0]]));
        // direct multiplication check: rot * basis == basis * i_C(i)
        assert_eq!(rot().matmul(&real_basis), real_basis.matmul(&blocks[0]));
    }

    #[test]
    fn block_diagonalize_diag() {
        let a = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = block_diagonalize(&[a], &[vec![c(2), c(3)]]).unwrap();
        assert_eq!(s.basis_change, M::identity(2));
        assert_eq!(block_signature(&s), vec![(1, BlockField::R), (1, BlockField::R)]);
    }

    #[test]
    fn block_diagonalize_rotation() {
        let s = block_diagonalize(&[rot()], &[vec![ci(0, 1), ci(0, -1)]]).unwrap();
        assert_eq!(block_signature(&s), vec![(1, BlockField::C)]);
        assert_eq!(s.block_matrices[0][0], M::from_rows(vec![vec![SymComplex::i()]]));
        // B rot B^{-1} = i_C(i)
        let conj = s.basis_change.matmul(&rot().matmul(&s.basis_change_inv));
        assert_eq!(conj, M::from_i64_rows(&[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn block_diagonalize_direct_sum_invertible() {
        let a = M::from_i64_rows(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 5]]);
        let b = M::from_i64_rows(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 7]]);
        let s = block_diagonalize(
            &[a.clone(), b.clone()],
            &[vec![c(2), c(5)], vec![c(3), c(7)]],
        )
        .unwrap();
        assert_eq!(rank(&s.basis_change_inv), 3);
        assert_eq!(
            block_signature(&s),
            vec![(1, BlockField::R), (2, BlockField::R)]
        );
        // single-eigenvalue blocks: scalar plus nilpotent with vanishing power
        for (j, m) in [a, b].iter().enumerate() {
            let conj = s.basis_change.matmul(&m.matmul(&s.basis_change_inv));
            assert_eq!(conj, s.assemble(j));
            for (r, info) in s.blocks.iter().enumerate() {
                let (_, nil) = split_scalar_nilpotent(&s.block_matrices[j][r]).unwrap();
                assert!(nil.pow(info.dim as u32).is_zero_matrix());
            }
        }
    }

    #[test]
    fn det_consistency() {
        let a = M::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = block_diagonalize(&[a.clone()], &[vec![c(2), c(3)]]).unwrap();
        assert_eq!(det_from_blocks(&s, 0), linalg::det(&a));
        let s2 = block_diagonalize(&[rot()], &[vec![ci(0, 1), ci(0, -1)]]).unwrap();
        assert_eq!(det_from_blocks(&s2, 0), linalg::det(&rot()));
    }

    #[test]
    fn transform_recovers_blocks() {
        let s = block_diagonalize(&[rot()], &[vec![ci(0, 1), ci(0, -1)]]).unwrap();
        let blocks = s.transform(&rot()).unwrap();
        assert_eq!(blocks[0], M::from_rows(vec![vec![SymComplex::i()]]));
        // scaling the generator scales the block
        let blocks2 = s.transform(&rot().scale(&c(3))).unwrap();
        assert_eq!(blocks2[0], M::from_rows(vec![vec![ci(0, 3)]]));
    }
}
