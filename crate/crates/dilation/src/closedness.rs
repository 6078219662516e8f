//! Closedness of `H = exp(h)` for an abelian matrix Lie algebra `h`: split
//! `h = h0 + h1` by the kernel of the projection that discards imaginary
//! diagonal parts, read off torus coordinates of `h0`, and test the closure
//! of the corresponding torus subgroup for rationality in Gauss-Jordan
//! echelon form. Includes the stabilizer-product criterion for a surrounding
//! abelian matrix algebra.

use thiserror::Error;

use crate::linalg::{self, gauss_jordan_echelon_vectors, kernel_basis, rref, LinalgError, Matrix};
use crate::scalar::field::{ComplexField, RationalityCfg, RealField};
use crate::structure::{
    block_diagonalize, split_scalar_nilpotent, validate_commuting, BlockField, BlockStructure,
    StructureError,
};
use crate::verdict::{render_vector, Verdict};

#[derive(Debug, Error)]
pub enum ClosednessError {
    #[error("products of basis elements {0} and {1} leave the span; not an algebra")]
    NotAlgebra(usize, usize),
    #[error("matrix {0} of h is not contained in the algebra span")]
    NotContained(usize),
    #[error("not a torus element: {0}")]
    NotTorusElement(String),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The `h = h0 + h1` decomposition relative to a block structure.
pub struct AlgebraSplit<C: ComplexField> {
    /// torus part: kernel of the imaginary-part-discarding projection
    pub h0_basis: Vec<Matrix<C>>,
    /// complement on which that projection is injective
    pub h1_basis: Vec<Matrix<C>>,
    pub structure: BlockStructure<C>,
    /// block forms of the h0 basis elements
    pub h0_blocks: Vec<Vec<Matrix<C>>>,
}

/// Coordinates of an `h0` element on the torus: the imaginary parts of the
/// diagonal scalars, one per complex block.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusVector<R> {
    pub coords: Vec<R>,
}

/// Coordinates of the projection `P_E` (discard imaginary diagonal parts)
/// applied to a block-form element, flattened into real numbers.
fn pe_coordinates<C: ComplexField>(
    blocks: &[Matrix<C>],
    structure: &BlockStructure<C>,
) -> Vec<C::Real> {
    let mut out = Vec::new();
    for (info, block) in structure.blocks.iter().zip(blocks) {
        match info.field {
            BlockField::R => {
                for e in block.entries() {
                    out.push(e.re());
                }
            }
            BlockField::C => {
                let d = info.dim;
                for i in 0..d {
                    for j in 0..d {
                        let e = block.get(i, j);
                        if i == j {
                            out.push(e.re());
                        } else {
                            out.push(e.re());
                            out.push(e.im());
                        }
                    }
                }
            }
        }
    }
    out
}

struct SplitOutcome<R> {
    h0_coefficients: Vec<Vec<R>>,
    h1_indices: Vec<usize>,
}

fn split_in_structure<C: ComplexField>(
    element_blocks: &[Vec<Matrix<C>>],
    structure: &BlockStructure<C>,
) -> SplitOutcome<C::Real> {
    let coords: Vec<Vec<C::Real>> = element_blocks
        .iter()
        .map(|blocks| pe_coordinates(blocks, structure))
        .collect();
    let rows = coords.first().map_or(0, Vec::len);
    let m = Matrix::from_fn(rows, coords.len(), |i, j| coords[j][i].clone());
    let ech = rref(&m);
    SplitOutcome {
        h0_coefficients: kernel_basis(&m),
        h1_indices: ech.pivot_columns,
    }
}

fn combine_blocks<C: ComplexField>(
    element_blocks: &[Vec<Matrix<C>>],
    coeffs: &[C::Real],
) -> Vec<Matrix<C>> {
    let nblocks = element_blocks[0].len();
    (0..nblocks)
        .map(|r| {
            let mut acc = Matrix::zero(
                element_blocks[0][r].rows(),
                element_blocks[0][r].cols(),
            );
            for (blocks, c) in element_blocks.iter().zip(coeffs) {
                acc = acc.add(&blocks[r].scale(&C::from_real(c.clone())));
            }
            acc
        })
        .collect()
}

fn combine_matrices<C: ComplexField>(mats: &[Matrix<C>], coeffs: &[C::Real]) -> Matrix<C> {
    let mut acc = Matrix::zero(mats[0].rows(), mats[0].cols());
    for (m, c) in mats.iter().zip(coeffs) {
        acc = acc.add(&m.scale(&C::from_real(c.clone())));
    }
    acc
}

/// Split a commuting family's span into the torus part `h0` (kernel of the
/// imaginary-diagonal projection) and a complement `h1` (the basis elements
/// carrying pivots in the same elimination).
pub fn split_h0_h1<C: ComplexField>(
    h_basis: &[Matrix<C>],
    spectra: &[Vec<C>],
) -> Result<AlgebraSplit<C>, ClosednessError> {
    validate_commuting(h_basis)?;
    ensure_independent(h_basis)?;
    let structure = block_diagonalize(h_basis, spectra)?;
    let element_blocks: Vec<Vec<Matrix<C>>> = (0..h_basis.len())
        .map(|j| structure.block_matrices[j].clone())
        .collect();
    let split = split_in_structure(&element_blocks, &structure);
    let h0_blocks: Vec<Vec<Matrix<C>>> = split
        .h0_coefficients
        .iter()
        .map(|c| combine_blocks(&element_blocks, c))
        .collect();
    Ok(AlgebraSplit {
        h0_basis: split
            .h0_coefficients
            .iter()
            .map(|c| combine_matrices(h_basis, c))
            .collect(),
        h1_basis: split.h1_indices.iter().map(|&j| h_basis[j].clone()).collect(),
        structure,
        h0_blocks,
    })
}

fn ensure_independent<C: ComplexField>(mats: &[Matrix<C>]) -> Result<(), ClosednessError> {
    if mats.is_empty() {
        return Ok(());
    }
    let n2 = mats[0].rows() * mats[0].cols();
    let flat = Matrix::from_fn(n2, mats.len(), |i, j| {
        mats[j].entries()[i].clone()
    });
    if linalg::rank(&flat) != mats.len() {
        return Err(ClosednessError::DependentBasis);
    }
    Ok(())
}

/// Torus coordinates of block-form elements of `h0`: the imaginary parts of
/// the diagonal scalars over the complex blocks. Fails when a nilpotent part
/// or a real-block component is nonzero.
pub fn torus_coordinates<C: ComplexField>(
    h0_blocks: &[Vec<Matrix<C>>],
    structure: &BlockStructure<C>,
) -> Result<Vec<TorusVector<C::Real>>, ClosednessError> {
    let mut out = Vec::with_capacity(h0_blocks.len());
    for blocks in h0_blocks {
        let mut coords = Vec::new();
        for (info, block) in structure.blocks.iter().zip(blocks) {
            let scale = block
                .entries()
                .iter()
                .map(|e| e.approx_abs())
                .fold(0.0, f64::max);
            match info.field {
                BlockField::R => {
                    if !block.entries().iter().all(|e| e.is_negligible(scale)) {
                        return Err(ClosednessError::NotTorusElement(
                            "nonzero component on a real block".into(),
                        ));
                    }
                }
                BlockField::C => {
                    let (alpha, nil) = split_scalar_nilpotent(block)?;
                    if !nil.entries().iter().all(|e| e.is_negligible(scale)) {
                        return Err(ClosednessError::NotTorusElement(
                            "nonzero nilpotent part".into(),
                        ));
                    }
                    if !C::from_real(alpha.re()).is_negligible(scale) {
                        return Err(ClosednessError::NotTorusElement(
                            "diagonal scalar has a real part".into(),
                        ));
                    }
                    coords.push(alpha.im());
                }
            }
        }
        out.push(TorusVector { coords });
    }
    Ok(out)
}

/// Compactness of the closure of `exp(span(vectors))` inside the torus:
/// bring the span into Gauss-Jordan echelon form and check every entry for
/// rationality. Exact entries give a certified verdict; float entries use
/// bounded continued fractions and stay flagged.
pub fn is_torus_closure_compact<R: RealField>(
    vectors: &[TorusVector<R>],
    cfg: &RationalityCfg,
) -> Verdict {
    let certified = R::is_exact();
    let rows: Vec<Vec<R>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let mut verdict = Verdict::new(true, certified);
    if rows.is_empty() || rows[0].is_empty() {
        verdict.push("torus", "trivial torus part; compact");
        return verdict;
    }
    let echelon = gauss_jordan_echelon_vectors(&rows);
    let rendered: Vec<String> = echelon.iter().map(|v| render_vector(v)).collect();
    verdict.push("echelon", format!("[{}]", rendered.join(", ")));
    for (i, vec) in echelon.iter().enumerate() {
        for (j, entry) in vec.iter().enumerate() {
            if entry.detect_rational(cfg).is_none() {
                verdict.outcome = false;
                verdict.push(
                    "irrational-entry",
                    format!("vector {i}, coordinate {j}, value {entry}"),
                );
                verdict.push("torus", "closure is not compact");
                return verdict;
            }
        }
    }
    verdict.push("torus", "all echelon entries rational; closure is compact");
    verdict
}

/// Is `exp(span(h_basis))` closed? Pipeline: block structure, `h0`/`h1`
/// split, torus coordinates, rationality of the echelon basis.
pub fn is_exp_closed<C: ComplexField>(
    h_basis: &[Matrix<C>],
    spectra: &[Vec<C>],
    cfg: &RationalityCfg,
) -> Result<Verdict, ClosednessError> {
    let split = split_h0_h1(h_basis, spectra)?;
    let element_blocks: Vec<Vec<Matrix<C>>> = (0..h_basis.len())
        .map(|j| split.structure.block_matrices[j].clone())
        .collect();
    closedness_from_split(&split.structure, &element_blocks, cfg)
}

fn closedness_from_split<C: ComplexField>(
    structure: &BlockStructure<C>,
    element_blocks: &[Vec<Matrix<C>>],
    cfg: &RationalityCfg,
) -> Result<Verdict, ClosednessError> {
    let split = split_in_structure(element_blocks, structure);
    let h0_blocks: Vec<Vec<Matrix<C>>> = split
        .h0_coefficients
        .iter()
        .map(|c| combine_blocks(element_blocks, c))
        .collect();
    let torus = torus_coordinates(&h0_blocks, structure)?;
    let mut verdict = is_torus_closure_compact(&torus, cfg);
    let blocks_desc: Vec<String> = structure
        .blocks
        .iter()
        .map(|b| {
            format!(
                "({},{})",
                b.dim,
                match b.field {
                    BlockField::R => "R",
                    BlockField::C => "C",
                }
            )
        })
        .collect();
    let mut prefix = vec![
        crate::verdict::TrailStep::new("blocks", format!("[{}]", blocks_desc.join(", "))),
        crate::verdict::TrailStep::new(
            "split",
            format!(
                "dim h0 = {}, dim h1 = {}",
                split.h0_coefficients.len(),
                split.h1_indices.len()
            ),
        ),
        crate::verdict::TrailStep::new(
            "h1",
            "exp(h1) is closed and simply connected (derived)",
        ),
    ];
    if !torus.is_empty() {
        let rendered: Vec<String> = torus.iter().map(|t| render_vector(&t.coords)).collect();
        prefix.push(crate::verdict::TrailStep::new(
            "torus-coordinates",
            format!("[{}]", rendered.join(", ")),
        ));
    }
    prefix.extend(verdict.trail);
    verdict.trail = prefix;
    verdict.push(
        "closedness",
        if verdict.outcome {
            "exp(h) is closed (h0 closure compact)"
        } else {
            "exp(h) is not closed (h0 closure not compact)"
        },
    );
    Ok(verdict)
}

/// Portion of `is_exp_closed` that runs inside an ambient structure whose
/// block forms are already known; used by the stabilizer-product criterion.
pub fn is_exp_closed_in_structure<C: ComplexField>(
    structure: &BlockStructure<C>,
    elements: &[Matrix<C>],
    cfg: &RationalityCfg,
) -> Result<Verdict, ClosednessError> {
    let element_blocks: Result<Vec<Vec<Matrix<C>>>, StructureError> =
        elements.iter().map(|x| structure.transform(x)).collect();
    closedness_from_split(structure, &element_blocks?, cfg)
}

/// Closedness of `stab(x) * exp(span(h))` inside the unit group of an
/// abelian matrix algebra: compute the stabilizer subalgebra
/// `{X in A : X x = 0}`, adjoin it to `h`, and decide closedness of the
/// resulting exponential image.
pub fn stabilizer_product_closed<C: ComplexField>(
    h_basis: &[Matrix<C>],
    algebra_basis: &[Matrix<C>],
    algebra_spectra: &[Vec<C>],
    x: &[C],
    cfg: &RationalityCfg,
) -> Result<Verdict, ClosednessError> {
    validate_commuting(algebra_basis)?;
    let n = algebra_basis[0].rows();
    let k = algebra_basis.len();
    let flat = Matrix::from_fn(n * n, k, |i, j| algebra_basis[j].entries()[i].clone());

    // closure under products, up to span
    for a in 0..k {
        for b in a..k {
            let prod = algebra_basis[a].matmul(&algebra_basis[b]);
            if linalg::solve(&flat, prod.entries()).is_err() {
                return Err(ClosednessError::NotAlgebra(a, b));
            }
        }
    }
    // h contained in the span
    for (i, m) in h_basis.iter().enumerate() {
        if m.rows() != n || linalg::solve(&flat, m.entries()).is_err() {
            return Err(ClosednessError::NotContained(i));
        }
    }

    // stabilizer subalgebra: kernel of c -> (sum c_i E_i) x
    let action = Matrix::from_fn(n, k, |i, j| {
        let img = algebra_basis[j].apply(x);
        img[i].clone()
    });
    let stab_coeffs = kernel_basis(&action);
    let stab_mats: Vec<Matrix<C>> = stab_coeffs
        .iter()
        .map(|c| {
            let mut acc = Matrix::zero(n, n);
            for (m, coeff) in algebra_basis.iter().zip(c) {
                acc = acc.add(&m.scale(coeff));
            }
            acc
        })
        .collect();

    // g = h + stab, reduced to an independent family
    let mut candidates: Vec<Matrix<C>> = h_basis.to_vec();
    candidates.extend(stab_mats.iter().cloned());
    let cand_flat = Matrix::from_fn(n * n, candidates.len(), |i, j| {
        candidates[j].entries()[i].clone()
    });
    let pivots = rref(&cand_flat).pivot_columns;
    let g_basis: Vec<Matrix<C>> = pivots.iter().map(|&j| candidates[j].clone()).collect();

    let structure = block_diagonalize(algebra_basis, algebra_spectra)?;
    let mut verdict = is_exp_closed_in_structure(&structure, &g_basis, cfg)?;
    let mut prefix = vec![
        crate::verdict::TrailStep::new(
            "stabilizer",
            format!("stabilizer subalgebra dimension {}", stab_mats.len()),
        ),
        crate::verdict::TrailStep::new(
            "product-group",
            format!("g = h + stab(x) has dimension {}", g_basis.len()),
        ),
    ];
    prefix.append(&mut verdict.trail);
    verdict.trail = prefix;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::complex::{ComplexFloat, SymComplex};
    use crate::scalar::field::{Field, DEFAULT_F64_EPS};
    use crate::scalar::rational::Rational;
    use crate::scalar::symbolic::{SymReal, Symbol};

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

    fn cfg() -> RationalityCfg {
        RationalityCfg::default()
    }

    #[test]
    fn rotation_generator_is_torus() {
        // h = span{rot}: h0 = h, h1 empty, closed (SO(2) compact)
        let split = split_h0_h1(&[rot()], &[vec![ci(0, 1), ci(0, -1)]]).unwrap();
        assert_eq!(split.h0_basis.len(), 1);
        assert!(split.h1_basis.is_empty());
        let v = is_exp_closed(&[rot()], &[vec![ci(0, 1), ci(0, -1)]], &cfg()).unwrap();
        assert!(v.outcome && v.certified);
    }

    #[test]
    fn identity_generator_is_h1() {
        let split = split_h0_h1(&[M::identity(2)], &[vec![c(1)]]).unwrap();
        assert!(split.h0_basis.is_empty());
        assert_eq!(split.h1_basis.len(), 1);
        let v = is_exp_closed(&[M::identity(2)], &[vec![c(1)]], &cfg()).unwrap();
        assert!(v.outcome && v.certified);
    }

    #[test]
    fn torus_coordinates_of_x0() {
        // diag(i*pi, i, i, i) inside the diagonal algebra: coordinates (pi,1,1,1)
        let pi = SymReal::symbol(Symbol::Pi);
        let diag_entries: Vec<SymComplex> = vec![
            SymComplex::from_parts(SymReal::zero(), pi.clone()),
            SymComplex::i(),
            SymComplex::i(),
            SymComplex::i(),
        ];
        // four 1-dim complex blocks, constructed directly
        let blocks: Vec<Matrix<SymComplex>> = diag_entries
            .iter()
            .map(|e| Matrix::from_rows(vec![vec![e.clone()]]))
            .collect();
        let structure = BlockStructure {
            basis_change: M::identity(8),
            basis_change_inv: M::identity(8),
            blocks: (0..4)
                .map(|r| crate::structure::BlockInfo {
                    dim: 1,
                    field: BlockField::C,
                    offset: 2 * r,
                })
                .collect(),
            tuples: diag_entries.iter().map(|e| vec![e.clone()]).collect(),
            block_matrices: vec![blocks.clone()],
            ambient: 8,
        };
        let torus = torus_coordinates(&[blocks], &structure).unwrap();
        assert_eq!(torus.len(), 1);
        let coords = &torus[0].coords;
        assert_eq!(coords[0], pi);
        assert_eq!(coords[1], SymReal::one());
        // echelon normalizes by pi: (1, 1/pi, 1/pi, 1/pi)
        let verdict = is_torus_closure_compact(&torus, &cfg());
        assert!(!verdict.outcome);
        assert!(verdict.certified);
        assert!(verdict.trail_text().contains("1/pi"));
    }

    #[test]
    fn rational_torus_vectors_compact() {
        let vs = vec![
            TorusVector {
                coords: vec![Rational::one(), Rational::zero()],
            },
            TorusVector {
                coords: vec![Rational::zero(), Rational::one()],
            },
        ];
        let v = is_torus_closure_compact(&vs, &cfg());
        assert!(v.outcome && v.certified);
    }

    #[test]
    fn empty_torus_part() {
        let v = is_torus_closure_compact::<Rational>(&[], &cfg());
        assert!(v.outcome);
    }

    #[test]
    fn example1_algebra_is_closed() {
        // complex 3x3 generators, realified to 6x6:
        // Y1 = i*1 + E12, Y2 = E13, Y3 = i*E13
        let y1 = example1_y1();
        let y2 = example1_y2();
        let y3 = example1_y3();
        let spectra = vec![
            vec![ci(0, 1), ci(0, -1)],
            vec![c(0)],
            vec![c(0)],
        ];
        let split = split_h0_h1(&[y1.clone(), y2.clone(), y3.clone()], &spectra).unwrap();
        assert!(split.h0_basis.is_empty(), "h0 must be trivial");
        let v = is_exp_closed(&[y1, y2, y3], &spectra, &cfg()).unwrap();
        assert!(v.outcome && v.certified);
    }

    pub(crate) fn example1_y1() -> M {
        // i_C of diag(i,i,i) + E12(1)
        let mut m = M::zero(6, 6);
        for b in 0..3 {
            m.set(2 * b, 2 * b + 1, c(-1));
            m.set(2 * b + 1, 2 * b, c(1));
        }
        m.set(0, 2, c(1));
        m.set(1, 3, c(1));
        m
    }

    pub(crate) fn example1_y2() -> M {
        let mut m = M::zero(6, 6);
        m.set(0, 4, c(1));
        m.set(1, 5, c(1));
        m
    }

    pub(crate) fn example1_y3() -> M {
        let mut m = M::zero(6, 6);
        m.set(0, 5, c(-1));
        m.set(1, 4, c(1));
        m
    }

    #[test]
    fn two_rotation_irrational_family_float() {
        // block rotations with speeds 1 and sqrt2: not closed, flagged
        let s2 = std::f64::consts::SQRT_2;
        let entries = [
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -s2],
            [0.0, 0.0, s2, 0.0],
        ];
        let m = Matrix::<ComplexFloat>::from_fn(4, 4, |i, j| {
            ComplexFloat::from_f64(entries[i][j], 0.0, DEFAULT_F64_EPS)
        });
        let spectra = vec![vec![
            ComplexFloat::from_f64(0.0, 1.0, DEFAULT_F64_EPS),
            ComplexFloat::from_f64(0.0, -1.0, DEFAULT_F64_EPS),
            ComplexFloat::from_f64(0.0, s2, DEFAULT_F64_EPS),
            ComplexFloat::from_f64(0.0, -s2, DEFAULT_F64_EPS),
        ]];
        let tight = RationalityCfg {
            eps: 1e-12,
            max_denominator: 1_000_000,
        };
        let split = split_h0_h1(&[m.clone()], &spectra).unwrap();
        let torus = torus_coordinates(&split.h0_blocks, &split.structure).unwrap();
        let v = is_torus_closure_compact(&torus, &tight);
        assert!(!v.outcome);
        assert!(!v.certified);
    }

    // Kronecker density probe: a not-closed torus direction re-enters any
    // fixed identity neighborhood at a non-identity parameter.
    #[test]
    fn kronecker_probe_two_rotation() {
        let theta = [1.0, std::f64::consts::SQRT_2];
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut found = None;
        for k in 1..=20_000u64 {
            let t = k as f64 * two_pi / theta[0];
            let d = (theta[1] * t / two_pi).fract();
            let dist = d.min(1.0 - d) * two_pi;
            if dist < 0.3 {
                found = Some(t);
                break;
            }
        }
        let t = found.expect("orbit must re-enter the neighborhood");
        assert!(t > 0.0 && t <= 1e4 * two_pi);
    }

    #[test]
    fn stabilizer_with_zero_vector_degenerates() {
        // x = 0: stabilizer is the whole algebra; closedness of exp(algebra)
        let d1 = M::from_i64_rows(&[&[1, 0], &[0, 0]]);
        let d2 = M::from_i64_rows(&[&[0, 0], &[0, 1]]);
        let spectra = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let v = stabilizer_product_closed(
            &[d1.clone()],
            &[d1, d2],
            &spectra,
            &[c(0), c(0)],
            &cfg(),
        )
        .unwrap();
        assert!(v.outcome && v.certified);
    }

    #[test]
    fn stabilizer_trivial_on_generic_vector() {
        // diagonal algebra acting on an all-nonzero vector: stab = 0, g = h
        let d1 = M::from_i64_rows(&[&[1, 0], &[0, 0]]);
        let d2 = M::from_i64_rows(&[&[0, 0], &[0, 1]]);
        let spectra = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let v = stabilizer_product_closed(
            &[M::identity(2)],
            &[d1, d2],
            &spectra,
            &[c(1), c(1)],
            &cfg(),
        )
        .unwrap();
        assert!(v.outcome);
        assert!(v.trail_text().contains("stabilizer subalgebra dimension 0"));
    }

    #[test]
    fn non_algebra_rejected() {
        // span{diag(1,2)} is not closed under products: its square leaves the span
        let d = M::from_i64_rows(&[&[1, 0], &[0, 2]]);
        let err = stabilizer_product_closed(
            &[d.clone()],
            &[d],
            &[vec![c(1), c(2)]],
            &[c(1), c(1)],
            &cfg(),
        );
        assert!(matches!(err, Err(ClosednessError::NotAlgebra(0, 0))));
    }

    #[test]
    fn not_contained_rejected() {
        let d1 = M::from_i64_rows(&[&[1, 0], &[0, 0]]);
        let d2 = M::from_i64_rows(&[&[0, 0], &[0, 1]]);
        let e12 = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let err = stabilizer_product_closed(
            &[e12],
            &[d1, d2],
            &[vec![c(1), c(0)], vec![c(0), c(1)]],
            &[c(1), c(1)],
            &cfg(),
        );
        assert!(matches!(err, Err(ClosednessError::NotContained(0))));
    }
}
