//! Blockwise matrix logarithm for positive-spectrum matrices, its exact
//! exponential inverse, and the freeness/discreteness tests on generator
//! logarithms.
//!
//! Exact logs are scoped to positive rational eigenvalues: the diagonal
//! parts live in prime-log coordinates (`LogScalar`), where linear
//! independence questions over Q reduce to exact rank computations.

use thiserror::Error;

use crate::linalg::bareiss::{symbolic_rank, SymbolicRank};
use crate::linalg::{self, Matrix};
use crate::scalar::complex::SymComplex;
use crate::scalar::field::{ComplexField, Field, RealField};
use crate::scalar::log_scalar::LogScalar;
use crate::scalar::mpoly::MPoly;
use crate::scalar::rational::{ArithError, Rational};
use crate::scalar::symbolic::SymReal;
use crate::structure::{
    split_scalar_nilpotent, BlockField, BlockStructure, StructureError,
};
use crate::verdict::{render_vector, Verdict};

#[derive(Debug, Error)]
pub enum GrouplogError {
    #[error("block {block} does not have a single positive rational eigenvalue: {detail}")]
    NonPositiveSpectrum { block: usize, detail: String },
    #[error("matrix {0} has non-real spectrum")]
    NonRealSpectrum(usize),
    #[error("logarithm diagonal is not a prime-log combination; exact exponential unavailable")]
    NotExactlyExponentiable,
    #[error("log matrices do not share a block structure")]
    MixedStructure,
    #[error("entries mix denominators in formal symbols; unsupported for exact coordinates")]
    UnsupportedSymbolicEntries,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// One block of an exact logarithm: `log a_r * 1 + nilpotent`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogBlock {
    pub diag: LogScalar,
    pub nilpotent: Matrix<SymReal>,
}

/// Exact logarithm of a positive-spectrum matrix, blockwise relative to a
/// shared block structure.
#[derive(Clone)]
pub struct LogMatrix {
    pub structure: BlockStructure<SymComplex>,
    pub blocks: Vec<LogBlock>,
}

impl LogMatrix {
    pub fn add(&self, rhs: &LogMatrix) -> Result<LogMatrix, GrouplogError> {
        if self.blocks.len() != rhs.blocks.len() {
            return Err(GrouplogError::MixedStructure);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&rhs.blocks)
            .map(|(a, b)| LogBlock {
                diag: a.diag.add(&b.diag),
                nilpotent: a.nilpotent.add(&b.nilpotent),
            })
            .collect();
        Ok(LogMatrix {
            structure: self.structure.clone(),
            blocks,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.diag.is_zero() && b.nilpotent.is_zero_matrix())
    }

    /// Value-level entries of every block, flattened as multivariate
    /// polynomials in the prime-log (and any other) symbols.
    pub fn value_row(&self) -> Result<Vec<MPoly>, GrouplogError> {
        let mut out = Vec::new();
        for block in &self.blocks {
            let d = block.nilpotent.rows();
            let diag = block.diag.to_mpoly();
            for i in 0..d {
                for j in 0..d {
                    let mut entry = sym_to_mpoly(block.nilpotent.get(i, j))?;
                    if i == j {
                        entry = entry.add(&diag);
                    }
                    out.push(entry);
                }
            }
        }
        Ok(out)
    }

    /// The logarithm as an ambient-coordinates matrix with polynomial
    /// entries (requires a rational change of basis).
    pub fn ambient_mpoly(&self) -> Result<Vec<Vec<MPoly>>, GrouplogError> {
        let n = self.structure.ambient;
        let b = &self.structure.basis_change;
        let b_inv = &self.structure.basis_change_inv;
        let to_q = |m: &Matrix<SymComplex>| -> Result<Vec<Vec<Rational>>, GrouplogError> {
            let mut rows = Vec::with_capacity(m.rows());
            for i in 0..m.rows() {
                let mut row = Vec::with_capacity(m.cols());
                for j in 0..m.cols() {
                    let e = m.get(i, j);
                    if !Field::is_zero(&e.im()) {
                        return Err(GrouplogError::UnsupportedSymbolicEntries);
                    }
                    row.push(
                        e.re()
                            .as_rational()
                            .ok_or(GrouplogError::UnsupportedSymbolicEntries)?,
                    );
                }
                rows.push(row);
            }
            Ok(rows)
        };
        let bq = to_q(b)?;
        let biq = to_q(b_inv)?;
        // assembled block-diagonal log in structure coordinates
        let mut assembled = vec![vec![MPoly::zero(); n]; n];
        for (info, block) in self.structure.blocks.iter().zip(&self.blocks) {
            let d = block.nilpotent.rows();
            let diag = block.diag.to_mpoly();
            for i in 0..d {
                for j in 0..d {
                    let mut entry = sym_to_mpoly(block.nilpotent.get(i, j))?;
                    if i == j {
                        entry = entry.add(&diag);
                    }
                    assembled[info.offset + i][info.offset + j] = entry;
                }
            }
        }
        // B^{-1} * assembled * B
        let mut tmp = vec![vec![MPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = MPoly::zero();
                for k in 0..n {
                    if biq[i][k].is_zero() {
                        continue;
                    }
                    acc = acc.add(&assembled[k][j].scale(&biq[i][k]));
                }
                tmp[i][j] = acc;
            }
        }
        let mut out = vec![vec![MPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = MPoly::zero();
                for k in 0..n {
                    if bq[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&tmp[i][k].scale(&bq[k][j]));
                }
                out[i][j] = acc;
            }
        }
        Ok(out)
    }
}

fn sym_to_mpoly(v: &SymReal) -> Result<MPoly, GrouplogError> {
    MPoly::from_sym_real(v).ok_or(GrouplogError::UnsupportedSymbolicEntries)
}

/// Blockwise exact logarithm: each block must be `a(1 + N/a)` with `a` a
/// positive rational; the log is `log(a) 1 + sum_{k<d} (-1)^{k+1}(N/a)^k/k`,
/// a finite series.
pub fn matrix_log_positive(
    a: &Matrix<SymComplex>,
    structure: &BlockStructure<SymComplex>,
    factor_bound: u64,
) -> Result<LogMatrix, GrouplogError> {
    let blocks = structure.transform(a)?;
    let mut out = Vec::with_capacity(blocks.len());
    for (r, (info, block)) in structure.blocks.iter().zip(&blocks).enumerate() {
        if info.field == BlockField::C {
            return Err(GrouplogError::NonPositiveSpectrum {
                block: r,
                detail: "complex block; eigenvalue is not positive real".into(),
            });
        }
        let (alpha, nil) = split_scalar_nilpotent(block).map_err(GrouplogError::Structure)?;
        let re = alpha.re();
        if !Field::is_zero(&alpha.im()) || !re.is_positive() {
            return Err(GrouplogError::NonPositiveSpectrum {
                block: r,
                detail: format!("eigenvalue {alpha}"),
            });
        }
        let a_r = re.as_rational().ok_or(GrouplogError::NonPositiveSpectrum {
            block: r,
            detail: format!("eigenvalue {re} is not rational; use the float backend"),
        })?;
        let diag = LogScalar::log_of_rational(&a_r, factor_bound)?;
        // N/a, then the alternating series (finite by nilpotency)
        let d = info.dim;
        let inv = SymReal::from_rational(a_r.recip().expect("positive"));
        let scaled = nil.map(|e| e.re().mul(&inv));
        let mut series = Matrix::<SymReal>::zero(d, d);
        let mut power = Matrix::<SymReal>::identity(d);
        for k in 1..d as i64 {
            power = power.matmul(&scaled);
            let coeff = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k);
            series = series.add(&power.scale(&SymReal::from_rational(coeff)));
        }
        out.push(LogBlock {
            diag,
            nilpotent: series,
        });
    }
    Ok(LogMatrix {
        structure: structure.clone(),
        blocks: out,
    })
}

/// Exact exponential of a [`LogMatrix`]: available when every diagonal is a
/// pure prime-log combination with integer exponents.
pub fn matrix_exp(log: &LogMatrix) -> Result<Matrix<SymComplex>, GrouplogError> {
    let structure = &log.structure;
    let n = structure.ambient;
    let mut assembled = Matrix::<SymComplex>::zero(n, n);
    for (info, block) in structure.blocks.iter().zip(&log.blocks) {
        let a_r = block
            .diag
            .exp_rational()
            .ok_or(GrouplogError::NotExactlyExponentiable)?;
        let d = info.dim;
        // exp(N) by the finite series, then scale by a_r
        let mut exp_n = Matrix::<SymReal>::identity(d);
        let mut power = Matrix::<SymReal>::identity(d);
        let mut fact = Rational::one();
        for k in 1..d as i64 {
            power = power.matmul(&block.nilpotent);
            fact = &fact * &Rational::from_integer(k);
            exp_n = exp_n.add(&power.scale(&SymReal::from_rational(
                fact.recip().expect("factorial"),
            )));
        }
        let scaled = exp_n.scale(&SymReal::from_rational(a_r));
        for i in 0..d {
            for j in 0..d {
                assembled.set(
                    info.offset + i,
                    info.offset + j,
                    SymComplex::from_real(scaled.get(i, j).clone()),
                );
            }
        }
    }
    Ok(structure
        .basis_change_inv
        .matmul(&assembled.matmul(&structure.basis_change)))
}

/// Exponential of a plain scalar-plus-nilpotent upper triangular matrix with
/// a pure prime-log diagonal; convenience for single-block data.
pub fn exp_scalar_plus_nilpotent(
    diag: &LogScalar,
    nilpotent: &Matrix<SymReal>,
) -> Result<Matrix<SymComplex>, GrouplogError> {
    let d = nilpotent.rows();
    let a_r = diag
        .exp_rational()
        .ok_or(GrouplogError::NotExactlyExponentiable)?;
    let mut exp_n = Matrix::<SymReal>::identity(d);
    let mut power = Matrix::<SymReal>::identity(d);
    let mut fact = Rational::one();
    for k in 1..d as i64 {
        power = power.matmul(nilpotent);
        fact = &fact * &Rational::from_integer(k);
        exp_n = exp_n.add(&power.scale(&SymReal::from_rational(fact.recip().unwrap())));
    }
    Ok(exp_n
        .scale(&SymReal::from_rational(a_r))
        .map(|e| SymComplex::from_real(e.clone())))
}

/// Q-linear independence of the logs: flatten each into rational
/// coordinates over (matrix position) x (monomial in the formal symbols)
/// and compute an exact rank. Free generators have full rank.
pub fn generators_free(logs: &[LogMatrix]) -> Result<Verdict, GrouplogError> {
    let k = logs.len();
    let rows = value_rows(logs)?;
    // collect all monomials occurring anywhere, then flatten componentwise
    let mut monomials: Vec<MPoly> = Vec::new();
    let mut coords: Vec<Vec<Rational>> = Vec::new();
    for row in &rows {
        let mut coord_row: Vec<(usize, usize, Rational)> = Vec::new(); // (pos, mono, c)
        for (pos, entry) in row.iter().enumerate() {
            for (mono, c) in monomial_decomposition(entry) {
                let idx = match monomials.iter().position(|m| *m == mono) {
                    Some(i) => i,
                    None => {
                        monomials.push(mono);
                        monomials.len() - 1
                    }
                };
                coord_row.push((pos, idx, c));
            }
        }
        coords.push(flatten_coords(coord_row, rows[0].len()));
    }
    let width = monomials.len() * rows[0].len();
    let m = Matrix::from_fn(k, width, |i, j| {
        coords[i].get(j).cloned().unwrap_or_else(Rational::zero)
    });
    let rank = linalg::rank(&m.transpose());
    let free = rank == k;
    let mut v = Verdict::new(free, true);
    v.push("free-generators", format!("Q-rank of log coordinates = {rank} of {k}"));
    if !free {
        // integer relation witness from the kernel
        if let Some(rel) = linalg::kernel_basis(&m.transpose()).first() {
            let denoms: Vec<Rational> = rel.iter().map(|r| r.clone()).collect();
            v.push("relation", render_vector(&denoms));
        }
    }
    Ok(v)
}

fn flatten_coords(entries: Vec<(usize, usize, Rational)>, npos: usize) -> Vec<Rational> {
    let max_mono = entries.iter().map(|(_, m, _)| *m + 1).max().unwrap_or(0);
    let mut out = vec![Rational::zero(); npos * max_mono];
    for (pos, mono, c) in entries {
        out[mono * npos + pos] = &out[mono * npos + pos] + &c;
    }
    out
}

fn monomial_decomposition(p: &MPoly) -> Vec<(MPoly, Rational)> {
    p.terms_decomposed()
}

fn value_rows(logs: &[LogMatrix]) -> Result<Vec<Vec<MPoly>>, GrouplogError> {
    let width = logs
        .first()
        .map(|l| l.blocks.iter().map(|b| b.nilpotent.rows().pow(2)).sum::<usize>())
        .unwrap_or(0);
    let mut rows = Vec::with_capacity(logs.len());
    for l in logs {
        let row = l.value_row()?;
        if row.len() != width {
            return Err(GrouplogError::MixedStructure);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// R-linear independence of the logs as real matrices, decided by
/// fraction-free elimination over the formal symbols. The group generated by
/// the original matrices is discrete iff this span has full dimension.
pub fn group_discrete(logs: &[LogMatrix]) -> Result<Verdict, GrouplogError> {
    let k = logs.len();
    let rows = value_rows(logs)?;
    let sym = symbolic_rank(&rows);
    let discrete = sym.rank == k;
    let mut v = Verdict::new(discrete, true);
    v.push(
        "discrete",
        format!("dim_R span(logs) = {} of {k}", sym.rank),
    );
    if sym.max_pivot_degree > 1 {
        v.push(
            "assumption",
            "rank certificate involves products of logarithms; treated as algebraically independent",
        );
    }
    Ok(v)
}

/// Symbolic span data of the logs: dimension and a maximal independent
/// subset (indices into the input list).
pub fn log_span(logs: &[LogMatrix]) -> Result<SymbolicRank, GrouplogError> {
    let rows = value_rows(logs)?;
    Ok(symbolic_rank(&rows))
}

/// Square each generator; requires real spectra. The squared family has
/// positive spectrum and generates a cocompact subgroup, so admissibility
/// verdicts transfer.
pub fn square_generators<C: ComplexField>(
    generators: &[Matrix<C>],
    spectra: &[Vec<C>],
) -> Result<(Vec<Matrix<C>>, Vec<Vec<C>>), GrouplogError> {
    for (j, spec) in spectra.iter().enumerate() {
        if spec.iter().any(|l| !l.is_real()) {
            return Err(GrouplogError::NonRealSpectrum(j));
        }
    }
    let squared = generators.iter().map(|a| a.matmul(a)).collect();
    let new_spectra = spectra
        .iter()
        .map(|spec| spec.iter().map(|l| l.mul(l)).collect())
        .collect();
    Ok((squared, new_spectra))
}
