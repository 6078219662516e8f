//! Admissibility decisions for abelian dilation groups with positive real
//! spectrum: local freeness of the infinitesimal action, the determinant
//! condition, and the combined verdicts for connected groups and finitely
//! generated discrete groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedness::{self, ClosednessError};
use crate::grouplog::{self, GrouplogError, LogMatrix};
use crate::linalg::bareiss::symbolic_rank;
use crate::linalg::{self, Matrix};
use crate::scalar::complex::SymComplex;
use crate::scalar::field::{ComplexField, Field, RationalityCfg, RealField};
use crate::scalar::mpoly::{MPoly, Var};
use crate::scalar::rational::{Rational, DEFAULT_FACTOR_BOUND};
use crate::structure::{block_diagonalize, validate_commuting, StructureError};
use crate::verdict::{render_vector, TrailStep};

#[derive(Debug, Error)]
pub enum AdmissibilityError {
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Closedness(#[from] ClosednessError),
    #[error(transparent)]
    Grouplog(#[from] GrouplogError),
    #[error("entries are not supported by the exact backend: {0}")]
    Unsupported(String),
}

/// Group described by finite data, either a Lie algebra basis (connected
/// case) or group generators (discrete case).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Connected,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Condition {
    FreeGenerators,
    Discrete,
    DetCondition,
    LocalFreeness,
    SpectrumClass,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    /// `None` when the condition was not evaluated
    pub passed: Option<bool>,
    pub certified: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Admissible,
    NotAdmissible,
    Unsupported,
    NumericallyIndicated,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub status: Status,
    pub reasons: Vec<ConditionResult>,
    /// rational witness vector for local freeness, when one was certified
    pub witness: Option<Vec<Rational>>,
    pub trail: Vec<TrailStep>,
}

impl AdmissibilityVerdict {
    fn derive_status(&mut self) {
        let any_certified_fail = self
            .reasons
            .iter()
            .any(|r| r.passed == Some(false) && r.certified);
        let all_pass_certified = self
            .reasons
            .iter()
            .filter(|r| r.passed.is_some())
            .all(|r| r.passed == Some(true) && r.certified);
        let any_uncertain = self
            .reasons
            .iter()
            .any(|r| r.passed.is_some() && !r.certified);
        self.status = if any_certified_fail {
            Status::NotAdmissible
        } else if any_uncertain {
            Status::NumericallyIndicated
        } else if all_pass_certified {
            Status::Admissible
        } else {
            Status::NotAdmissible
        };
    }
}

/// Options for the randomized local-freeness search.
#[derive(Debug, Clone)]
pub struct FreenessOpts {
    pub trials: usize,
    pub seed: u64,
    pub use_symbolic: bool,
    /// symbolic expansion is attempted only when `l * n` stays at or below
    /// this limit (full expansion is exponential in general)
    pub symbolic_limit: usize,
}

impl Default for FreenessOpts {
    fn default() -> Self {
        FreenessOpts {
            trials: 20,
            seed: 0,
            use_symbolic: true,
            symbolic_limit: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalFreeness {
    /// rank `l` verified exactly at the witness
    CertifiedYes { witness: Vec<Rational> },
    /// impossible: `l > n`, or the rank polynomial vanishes identically
    No { detail: String },
    /// all sampled points failed; `P = 0` holds with the reported bound on
    /// the failure probability of the conclusion
    ProbablyNo { trials: usize, bound: f64 },
}

type MMat = Vec<Vec<MPoly>>;

fn matrix_to_mpoly(m: &Matrix<SymComplex>) -> Result<MMat, AdmissibilityError> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !Field::is_zero(&e.im()) {
                return Err(AdmissibilityError::Unsupported(
                    "matrix has non-real entries".into(),
                ));
            }
            row.push(MPoly::from_sym_real(&e.re()).ok_or_else(|| {
                AdmissibilityError::Unsupported(
                    "entry has a symbolic denominator".into(),
                )
            })?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn apply_mpoly(m: &MMat, x: &[Rational]) -> Vec<MPoly> {
    m.iter()
        .map(|row| {
            let mut acc = MPoly::zero();
            for (e, c) in row.iter().zip(x) {
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&e.scale(c));
            }
            acc
        })
        .collect()
}

fn apply_mpoly_symbolic(m: &MMat) -> Vec<MPoly> {
    m.iter()
        .map(|row| {
            let mut acc = MPoly::zero();
            for (j, e) in row.iter().enumerate() {
                acc = acc.add(&e.mul(&MPoly::var(Var::Coord(j))));
            }
            acc
        })
        .collect()
}

fn det_mpoly(rows: &[Vec<MPoly>]) -> MPoly {
    let n = rows.len();
    if n == 0 {
        return MPoly::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    // Laplace expansion along the first row; fine for the small sizes the
    // symbolic gate permits
    let mut acc = MPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][j].mul(&det_mpoly(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    rec(0, n, l, &mut cur, &mut out);
    out
}

/// Local freeness of the span of `l` matrices acting on R^n: does the map
/// `A -> A x` have rank `l` for some (hence almost every) `x`?
///
/// `CertifiedYes` returns a rational witness with the rank verified exactly.
/// `No` is certified (dimension bound, or all rank polynomials vanish
/// identically under symbolic expansion). Otherwise Schwartz-Zippel sampling
/// bounds the failure probability of `ProbablyNo` by `(1/4)^trials`.
pub fn local_freeness(
    mats: &[Matrix<SymComplex>],
    opts: &FreenessOpts,
) -> Result<LocalFreeness, AdmissibilityError> {
    let mpolys: Result<Vec<MMat>, _> = mats.iter().map(matrix_to_mpoly).collect();
    local_freeness_mpoly(&mpolys?, opts)
}

pub fn local_freeness_mpoly(
    mats: &[MMat],
    opts: &FreenessOpts,
) -> Result<LocalFreeness, AdmissibilityError> {
    let l = mats.len();
    if l == 0 {
        return Ok(LocalFreeness::CertifiedYes { witness: vec![] });
    }
    let n = mats[0].len();
    if l > n {
        return Ok(LocalFreeness::No {
            detail: format!("dimension {l} exceeds the ambient dimension {n}"),
        });
    }

    if opts.use_symbolic && l * n <= opts.symbolic_limit {
        let rows: Vec<Vec<MPoly>> = mats.iter().map(|m| apply_mpoly_symbolic(m)).collect();
        let mut all_zero = true;
        'outer: for cols in subsets(n, l) {
            let sub: Vec<Vec<MPoly>> = rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect();
            if !det_mpoly(&sub).is_zero() {
                all_zero = false;
                break 'outer;
            }
        }
        if all_zero {
            return Ok(LocalFreeness::No {
                detail: "all rank minors vanish identically".into(),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let half = (8 * l) as i64;
    for _ in 0..opts.trials {
        let x: Vec<Rational> = (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(-half..=half)))
            .collect();
        if x.iter().all(Rational::is_zero) {
            continue;
        }
        let rows: Vec<Vec<MPoly>> = mats.iter().map(|m| apply_mpoly(m, &x)).collect();
        if symbolic_rank(&rows).rank == l {
            return Ok(LocalFreeness::CertifiedYes { witness: x });
        }
    }
    Ok(LocalFreeness::ProbablyNo {
        trials: opts.trials,
        bound: 0.25_f64.powi(opts.trials as i32),
    })
}

/// Exact re-verification of a local-freeness witness.
pub fn verify_witness(
    mats: &[Matrix<SymComplex>],
    witness: &[Rational],
) -> Result<bool, AdmissibilityError> {
    let mpolys: Result<Vec<MMat>, _> = mats.iter().map(matrix_to_mpoly).collect();
    let mpolys = mpolys?;
    let rows: Vec<Vec<MPoly>> = mpolys.iter().map(|m| apply_mpoly(m, witness)).collect();
    Ok(symbolic_rank(&rows).rank == mats.len())
}

/// Determinant condition for generators: some `|det A_i| != 1`.
pub fn det_condition_generators<C: ComplexField>(
    generators: &[Matrix<C>],
) -> (bool, Option<usize>, String) {
    for (i, a) in generators.iter().enumerate() {
        let d = linalg::det(a);
        // |det| != 1  <=>  det^2 != 1 for real determinants
        let sq = d.mul(&d);
        if !sq.sub(&C::one()).is_zero() {
            return (true, Some(i), format!("|det| of generator {i} differs from 1"));
        }
    }
    (false, None, "every generator has |det| = 1".into())
}

/// Determinant condition for a connected group: some basis element with
/// nonzero trace (`|det exp(X)| = e^{trace X}`).
pub fn det_condition_algebra<C: ComplexField>(
    h_basis: &[Matrix<C>],
) -> (bool, Option<usize>, String) {
    for (i, x) in h_basis.iter().enumerate() {
        if !x.trace().is_zero() {
            return (
                true,
                Some(i),
                format!("basis element {i} has nonzero trace"),
            );
        }
    }
    (false, None, "every basis element is traceless".into())
}

fn spectra_all_real<C: ComplexField>(spectra: &[Vec<C>]) -> bool {
    spectra.iter().flatten().all(|l| l.is_real())
}

fn spectra_all_positive<C: ComplexField>(spectra: &[Vec<C>]) -> bool {
    spectra
        .iter()
        .flatten()
        .all(|l| l.is_real() && l.re().is_positive())
}

fn reason(
    condition: Condition,
    passed: Option<bool>,
    certified: bool,
    detail: impl Into<String>,
) -> ConditionResult {
    ConditionResult {
        condition,
        passed,
        certified,
        detail: detail.into(),
    }
}

/// Admissibility of the closed connected group `exp(span(h_basis))`.
/// Supported for real (hence positive) spectra; non-real spectra yield
/// `Unsupported`, since the simple criteria are not valid there.
pub fn decide_admissible_connected(
    h_basis: &[Matrix<SymComplex>],
    spectra: &[Vec<SymComplex>],
    cfg: &RationalityCfg,
    opts: &FreenessOpts,
) -> Result<AdmissibilityVerdict, AdmissibilityError> {
    validate_commuting(h_basis)?;
    ensure_independent(h_basis)?;
    let mut verdict = AdmissibilityVerdict {
        status: Status::NotAdmissible,
        reasons: Vec::new(),
        witness: None,
        trail: Vec::new(),
    };

    let closed = closedness::is_exp_closed(h_basis, spectra, cfg)?;
    verdict.trail.push(TrailStep::new(
        "closedness",
        if closed.outcome { "exp(h) is closed" } else { "exp(h) is not closed" },
    ));
    if !closed.outcome {
        verdict.trail.extend(closed.trail);
        verdict.trail.push(TrailStep::new(
            "conclusion",
            "admissible groups are closed; not admissible",
        ));
        verdict.status = if closed.certified {
            Status::NotAdmissible
        } else {
            Status::NumericallyIndicated
        };
        return Ok(verdict);
    }

    if !spectra_all_real(spectra) {
        verdict.reasons.push(reason(
            Condition::SpectrumClass,
            Some(false),
            true,
            "spectrum is not real; the positive-spectrum criteria do not apply",
        ));
        verdict.status = Status::Unsupported;
        return Ok(verdict);
    }
    verdict.reasons.push(reason(
        Condition::SpectrumClass,
        Some(true),
        true,
        "real spectrum; exp(h) has positive spectrum",
    ));

    let (det_pass, det_witness, det_detail) = det_condition_algebra(h_basis);
    verdict.reasons.push(reason(
        Condition::DetCondition,
        Some(det_pass),
        true,
        match det_witness {
            Some(i) => format!("{det_detail} (witness index {i})"),
            None => det_detail,
        },
    ));

    let lf = local_freeness(h_basis, opts)?;
    push_local_freeness(&mut verdict, &lf);
    verdict.derive_status();
    Ok(verdict)
}

fn push_local_freeness(verdict: &mut AdmissibilityVerdict, lf: &LocalFreeness) {
    match lf {
        LocalFreeness::CertifiedYes { witness } => {
            verdict.reasons.push(reason(
                Condition::LocalFreeness,
                Some(true),
                true,
                format!("rank is full at witness {}", render_vector(witness)),
            ));
            verdict.witness = Some(witness.clone());
        }
        LocalFreeness::No { detail } => {
            verdict.reasons.push(reason(
                Condition::LocalFreeness,
                Some(false),
                true,
                detail.clone(),
            ));
        }
        LocalFreeness::ProbablyNo { trials, bound } => {
            verdict.reasons.push(reason(
                Condition::LocalFreeness,
                Some(false),
                false,
                format!(
                    "no witness in {trials} trials; failure probability of this conclusion <= (1/4)^{trials} = {bound:.3e}"
                ),
            ));
        }
    }
}

fn ensure_independent(mats: &[Matrix<SymComplex>]) -> Result<(), AdmissibilityError> {
    if mats.is_empty() {
        return Ok(());
    }
    let n2 = mats[0].rows() * mats[0].cols();
    let flat = Matrix::from_fn(n2, mats.len(), |i, j| mats[j].entries()[i].clone());
    if linalg::rank(&flat) != mats.len() {
        return Err(AdmissibilityError::DependentBasis);
    }
    Ok(())
}

/// Admissibility checklist for the group generated by commuting invertible
/// matrices: free generators, discreteness, determinant condition, local
/// freeness of the connected hull. Real spectra with negative eigenvalues
/// are squared first (the verdict transfers across the cocompact
/// inclusion); non-real spectra are `Unsupported`.
pub fn decide_admissible_discrete(
    generators: &[Matrix<SymComplex>],
    spectra: &[Vec<SymComplex>],
    opts: &FreenessOpts,
) -> Result<AdmissibilityVerdict, AdmissibilityError> {
    validate_commuting(generators)?;
    for (i, g) in generators.iter().enumerate() {
        if linalg::det(g).is_zero() {
            return Err(AdmissibilityError::NotInvertible(i));
        }
    }
    let mut verdict = AdmissibilityVerdict {
        status: Status::NotAdmissible,
        reasons: Vec::new(),
        witness: None,
        trail: Vec::new(),
    };

    if !spectra_all_real(spectra) {
        verdict.reasons.push(reason(
            Condition::SpectrumClass,
            Some(false),
            true,
            "spectrum is not real; the positive-spectrum checklist does not apply",
        ));
        verdict.status = Status::Unsupported;
        return Ok(verdict);
    }

    let (work_gens, work_spectra) = if spectra_all_positive(spectra) {
        (generators.to_vec(), spectra.to_vec())
    } else {
        let (g, s) = grouplog::square_generators(generators, spectra)?;
        verdict.trail.push(TrailStep::new(
            "squaring",
            "real but not positive spectrum; generators squared (verdict transfers across the cocompact inclusion)",
        ));
        (g, s)
    };
    verdict.reasons.push(reason(
        Condition::SpectrumClass,
        Some(true),
        true,
        "positive real spectrum",
    ));

    let structure = block_diagonalize(&work_gens, &work_spectra)?;
    let logs: Result<Vec<LogMatrix>, _> = work_gens
        .iter()
        .map(|g| grouplog::matrix_log_positive(g, &structure, DEFAULT_FACTOR_BOUND))
        .collect();
    let logs = logs?;

    let free = grouplog::generators_free(&logs)?;
    verdict.reasons.push(reason(
        Condition::FreeGenerators,
        Some(free.outcome),
        free.certified,
        free.trail_text(),
    ));

    let discrete = grouplog::group_discrete(&logs)?;
    verdict.reasons.push(reason(
        Condition::Discrete,
        Some(discrete.outcome),
        discrete.certified,
        discrete.trail_text(),
    ));

    let (det_pass, _, det_detail) = det_condition_generators(&work_gens);
    verdict.reasons.push(reason(
        Condition::DetCondition,
        Some(det_pass),
        true,
        det_detail,
    ));

    // local freeness of the connected hull exp(span(logs)); pick a maximal
    // independent subset of the logs as its basis
    let span = grouplog::log_span(&logs)?;
    let hull_logs: Vec<&LogMatrix> = span.pivot_rows.iter().map(|&i| &logs[i]).collect();
    let hull_mats: Result<Vec<MMat>, _> = hull_logs
        .iter()
        .map(|l| l.ambient_mpoly().map_err(AdmissibilityError::Grouplog))
        .collect();
    let lf = local_freeness_mpoly(&hull_mats?, opts)?;
    push_local_freeness(&mut verdict, &lf);
    verdict.trail.push(TrailStep::new(
        "hull",
        format!(
            "connected hull has dimension {}; admissibility of the generated group matches the hull",
            span.rank
        ),
    ));

    if !free.outcome || !discrete.outcome {
        let hull_ok = det_pass && matches!(lf, LocalFreeness::CertifiedYes { .. });
        verdict.trail.push(TrailStep::new(
            "closure-verdict",
            format!(
                "the generated group is a non-discrete or non-free presentation; its closed hull is {}",
                if hull_ok { "admissible" } else { "not admissible" }
            ),
        ));
    }

    verdict.derive_status();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<SymComplex>;

    fn c(n: i64) -> SymComplex {
        SymComplex::from_i64(n)
    }

    fn opts() -> FreenessOpts {
        FreenessOpts::default()
    }

    fn cfg() -> RationalityCfg {
        RationalityCfg::default()
    }

    #[test]
    fn identity_span_is_locally_free() {
        let lf = local_freeness(&[M::identity(3)], &opts()).unwrap();
        match lf {
            LocalFreeness::CertifiedYes { witness } => {
                assert!(verify_witness(&[M::identity(3)], &witness).unwrap());
            }
            other => panic!("expected CertifiedYes, got {other:?}"),
        }
    }

    #[test]
    fn collinear_images_fail_symbolically() {
        // span{E12, E13} in gl(3): images (x2,0,0) and (x3,0,0)
        let e12 = M::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e13 = M::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let lf = local_freeness(&[e12, e13], &opts()).unwrap();
        assert!(matches!(lf, LocalFreeness::No { .. }));
    }

    #[test]
    fn collinear_images_probably_no_without_symbolic() {
        let e12 = M::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e13 = M::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let o = FreenessOpts {
            use_symbolic: false,
            ..opts()
        };
        let lf = local_freeness(&[e12, e13], &o).unwrap();
        match lf {
            LocalFreeness::ProbablyNo { trials, bound } => {
                assert_eq!(trials, 20);
                assert!(bound <= 0.25_f64.powi(20) + 1e-30);
            }
            other => panic!("expected ProbablyNo, got {other:?}"),
        }
    }

    #[test]
    fn too_many_matrices_certified_no() {
        let mats = vec![
            M::from_i64_rows(&[&[1, 0], &[0, 0]]),
            M::from_i64_rows(&[&[0, 1], &[0, 0]]),
            M::from_i64_rows(&[&[0, 0], &[1, 0]]),
        ];
        let lf = local_freeness(&mats, &opts()).unwrap();
        assert!(matches!(lf, LocalFreeness::No { .. }));
    }

    #[test]
    fn det_conditions() {
        let two = Matrix::from_rows(vec![vec![c(2)]]);
        assert!(det_condition_generators(&[two]).0);
        let unipotent = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(!det_condition_generators(&[unipotent]).0);
        let pair = vec![
            M::from_i64_rows(&[&[2, 0], &[0, 0]]).add(&M::from_fn(2, 2, |i, j| {
                if i == 1 && j == 1 {
                    SymComplex::from_rational(&Rational::new(1, 2))
                } else {
                    SymComplex::zero()
                }
            })),
            M::from_i64_rows(&[&[3, 0], &[0, 0]]).add(&M::from_fn(2, 2, |i, j| {
                if i == 1 && j == 1 {
                    SymComplex::from_rational(&Rational::new(1, 3))
                } else {
                    SymComplex::zero()
                }
            })),
        ];
        // diag(2,1/2) and diag(3,1/3): both determinants 1
        assert!(!det_condition_generators(&pair).0);
    }

    #[test]
    fn connected_similitude_admissible() {
        let v = decide_admissible_connected(&[M::identity(2)], &[vec![c(1)]], &cfg(), &opts())
            .unwrap();
        assert_eq!(v.status, Status::Admissible);
    }

    #[test]
    fn connected_nilpotent_not_admissible() {
        let e12 = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let v = decide_admissible_connected(&[e12], &[vec![c(0)]], &cfg(), &opts()).unwrap();
        assert_eq!(v.status, Status::NotAdmissible);
        let det = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::DetCondition)
            .unwrap();
        assert_eq!(det.passed, Some(false));
    }

    #[test]
    fn discrete_dyadic_admissible() {
        let two = Matrix::from_rows(vec![vec![c(2)]]);
        let v = decide_admissible_discrete(&[two], &[vec![c(2)]], &opts()).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert!(v.reasons.iter().all(|r| r.passed == Some(true)));
    }

    #[test]
    fn discrete_shear_dilation_admissible() {
        let a = M::identity(2).scale(&c(2));
        let b = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let v =
            decide_admissible_discrete(&[a, b], &[vec![c(2)], vec![c(1)]], &opts()).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert!(v.witness.is_some());
    }

    #[test]
    fn discrete_unipotent_fails_det() {
        let b = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let v = decide_admissible_discrete(&[b], &[vec![c(1)]], &opts()).unwrap();
        assert_eq!(v.status, Status::NotAdmissible);
        let det = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::DetCondition)
            .unwrap();
        assert_eq!(det.passed, Some(false));
    }

    #[test]
    fn discrete_rank_deficient_fails_local_freeness() {
        // <2I3, I+E12, I+E13>: dets 8, 1, 1; logs log2*I, E12, E13;
        // images x, (x2,0,0), (x3,0,0) have rank <= 2 < 3
        let a = M::identity(3).scale(&c(2));
        let b = M::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let d = M::from_i64_rows(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        let v = decide_admissible_discrete(
            &[a, b, d],
            &[vec![c(2)], vec![c(1)], vec![c(1)]],
            &opts(),
        )
        .unwrap();
        assert_eq!(v.status, Status::NotAdmissible);
        let lf = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::LocalFreeness)
            .unwrap();
        assert_eq!(lf.passed, Some(false));
        assert!(lf.certified, "symbolic expansion certifies the failure at l*n = 9");
        let det = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::DetCondition)
            .unwrap();
        assert_eq!(det.passed, Some(true));
    }

    #[test]
    fn discrete_four_two_names_both_failures() {
        let four = Matrix::from_rows(vec![vec![c(4)]]);
        let two = Matrix::from_rows(vec![vec![c(2)]]);
        let v = decide_admissible_discrete(&[four, two], &[vec![c(4)], vec![c(2)]], &opts())
            .unwrap();
        let free = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::FreeGenerators)
            .unwrap();
        let disc = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::Discrete)
            .unwrap();
        assert_eq!(free.passed, Some(false));
        assert_eq!(disc.passed, Some(false));
        // the closed hull is the dyadic dilation line, itself admissible
        assert!(v.trail.iter().any(|s| s.step == "closure-verdict"
            && s.detail.contains("is admissible")));
    }

    #[test]
    fn discrete_two_three_dense() {
        let two = Matrix::from_rows(vec![vec![c(2)]]);
        let three = Matrix::from_rows(vec![vec![c(3)]]);
        let v = decide_admissible_discrete(&[two, three], &[vec![c(2)], vec![c(3)]], &opts())
            .unwrap();
        let disc = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::Discrete)
            .unwrap();
        assert_eq!(disc.passed, Some(false));
        assert!(disc.detail.contains("dim_R span(logs) = 1"));
        let free = v
            .reasons
            .iter()
            .find(|r| r.condition == Condition::FreeGenerators)
            .unwrap();
        assert_eq!(free.passed, Some(true));
    }

    #[test]
    fn negative_spectrum_squared() {
        let neg = Matrix::from_rows(vec![vec![c(-2)]]);
        let v = decide_admissible_discrete(&[neg], &[vec![c(-2)]], &opts()).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert!(v.trail.iter().any(|s| s.step == "squaring"));
    }

    #[test]
    fn non_real_unsupported() {
        let rot = M::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let v = decide_admissible_discrete(
            &[rot],
            &[vec![SymComplex::i(), SymComplex::i().neg()]],
            &opts(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Unsupported);
    }

    #[test]
    fn status_monotonicity() {
        // any certified fail forces NotAdmissible; all certified passes force Admissible
        let two = Matrix::from_rows(vec![vec![c(2)]]);
        let v = decide_admissible_discrete(&[two], &[vec![c(2)]], &opts()).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert!(v
            .reasons
            .iter()
            .filter(|r| r.passed.is_some())
            .all(|r| r.passed == Some(true) && r.certified));
    }
}
