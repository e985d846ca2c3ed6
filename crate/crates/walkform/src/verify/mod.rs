//! Theorem checks for the Dynkin graph: intertwining and walk-matrix
//! identities, spectral and trigonometric product formulas, GF(2) kernel
//! structure, and the Smith-normal-form pattern, each producing a
//! [`VerificationReport`].

mod bc;
mod f2;
mod snf;
mod spectral;

pub use bc::{check_intertwine, check_walk_equality, matrix_b, matrix_c};
pub use f2::{
    check_disjoint, check_droot, check_odd_coeffs_even, check_rank2_bound,
    check_symmetric_m2e_exhaustive, kernel_alpha, kernel_beta,
};
pub use snf::{check_snf_theorem, expected_snf_pattern, SnfPattern};
pub use spectral::{
    build_spectral, check_eigen, check_product_e_xi, check_prodsin, check_vandermonde_random,
    cosine_vandermonde_check, det_walk_b, SpectralData, SpectralLine,
};

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("n must be divisible by 4, got {0}")]
    NotMultipleOfFour(usize),
    #[error("n must be even, got {0}")]
    NotEven(usize),
    #[error("parameter must be at least {min}, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("parameter must be between {min} and {max}, got {got}")]
    OutOfRange { min: usize, max: usize, got: usize },
}

/// Outcome of one claim check at one parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Claim identifier, e.g. `"intertwine"`.
    pub claim: &'static str,
    /// Parameter rendering, e.g. `"n=8"`.
    pub params: String,
    pub pass: bool,
    /// Residuals, computed patterns, determinant values: whatever certifies
    /// or refutes the claim.
    pub witness: String,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub(crate) fn finish(
        claim: &'static str,
        params: String,
        pass: bool,
        witness: String,
        started: Instant,
    ) -> Self {
        VerificationReport {
            claim,
            params,
            pass,
            witness,
            elapsed: started.elapsed(),
        }
    }

    pub fn status(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "claim={} {} status={} witness={}",
            self.claim,
            self.params,
            self.status(),
            self.witness
        )
    }
}

/// The checkable claims, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Snf,
    Rank2,
    Disjoint,
    Droot,
    Intertwine,
    WalkEq,
    Eigen,
    Prodsin,
    EXi,
    Vandermonde,
    DetWb,
    LemmaOdd0,
    LemmaM2e,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Snf,
        Claim::Rank2,
        Claim::Disjoint,
        Claim::Droot,
        Claim::Intertwine,
        Claim::WalkEq,
        Claim::Eigen,
        Claim::Prodsin,
        Claim::EXi,
        Claim::Vandermonde,
        Claim::DetWb,
        Claim::LemmaOdd0,
        Claim::LemmaM2e,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Snf => "snf",
            Claim::Rank2 => "rank2",
            Claim::Disjoint => "disjoint",
            Claim::Droot => "droot",
            Claim::Intertwine => "intertwine",
            Claim::WalkEq => "walk-eq",
            Claim::Eigen => "eigen",
            Claim::Prodsin => "prodsin",
            Claim::EXi => "e-xi",
            Claim::Vandermonde => "vandermonde",
            Claim::DetWb => "det-wb",
            Claim::LemmaOdd0 => "lemma-odd0",
            Claim::LemmaM2e => "lemma-m2e",
        }
    }

    pub fn from_id(id: &str) -> Option<Claim> {
        Claim::ALL.iter().copied().find(|c| c.id() == id)
    }

    pub fn index(self) -> usize {
        Claim::ALL.iter().position(|&c| c == self).unwrap()
    }
}

/// Sweep parameters and tolerances. The defaults pin the documented
/// tolerances of each numeric check.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Scaled infinity-norm bound on eigenvector residuals.
    pub eigen_tol: f64,
    /// Relative tolerance on the eigenvector dot-product magnitude.
    pub exi_rel_tol: f64,
    /// Relative tolerance between each dot product and its closed form.
    pub exi_factor_tol: f64,
    /// Relative tolerance on the sine product identity.
    pub prodsin_rel_tol: f64,
    /// Relative tolerance on the cosine Vandermonde identity.
    pub vandermonde_rel_tol: f64,
    /// Relative tolerance between the exact determinant and its spectral
    /// formula (checked for n up to 32).
    pub lemma33_rel_tol: f64,
    /// Seed for the randomized batch claims.
    pub seed: u64,
    /// Trial count for the randomized batch claims.
    pub trials: usize,
    /// Largest matrix size for the exhaustive symmetric-square sweep.
    pub exhaustive_max: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 4,
            n_max: 64,
            eigen_tol: 1e-8,
            exi_rel_tol: 1e-6,
            exi_factor_tol: 1e-9,
            prodsin_rel_tol: 1e-10,
            vandermonde_rel_tol: 1e-9,
            lemma33_rel_tol: 1e-4,
            seed: 42,
            trials: 100,
            exhaustive_max: 4,
        }
    }
}

/// One schedulable unit of a sweep. Jobs are independent and pure, so they
/// can run on any thread in any order; reports are merged by (claim, param).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub claim: Claim,
    pub param: JobParam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JobParam {
    /// Dynkin-graph order.
    N(usize),
    /// Free parameter of the sine product identity.
    M(usize),
    /// Whole randomized or exhaustive batch in one job.
    Batch,
}

impl JobParam {
    fn sort_key(self) -> usize {
        match self {
            JobParam::N(n) => n,
            JobParam::M(m) => m,
            JobParam::Batch => 0,
        }
    }
}

/// Expands one claim into its applicable jobs within the configured range.
pub fn claim_jobs(claim: Claim, cfg: &SweepConfig) -> Vec<Job> {
    let ns = |pred: fn(usize) -> bool| -> Vec<Job> {
        (cfg.n_min.max(4)..=cfg.n_max)
            .filter(|&n| pred(n))
            .map(|n| Job {
                claim,
                param: JobParam::N(n),
            })
            .collect()
    };
    match claim {
        Claim::Snf => ns(|_| true),
        Claim::Rank2 | Claim::Disjoint => ns(|n| n % 4 == 0),
        Claim::Droot => ns(|n| n % 2 == 0),
        Claim::Intertwine | Claim::WalkEq | Claim::Eigen | Claim::EXi | Claim::DetWb => {
            ns(|n| n % 4 == 0 && n >= 8)
        }
        // The sine product is indexed by its own parameter m >= 2, capped by
        // the upper end of the range.
        Claim::Prodsin => (2..=cfg.n_max)
            .map(|m| Job {
                claim,
                param: JobParam::M(m),
            })
            .collect(),
        Claim::Vandermonde | Claim::LemmaOdd0 | Claim::LemmaM2e => vec![Job {
            claim,
            param: JobParam::Batch,
        }],
    }
}

/// Runs one job. Parameters produced by [`claim_jobs`] always satisfy the
/// checks' preconditions; a violation surfaces as a failed report rather
/// than a panic.
pub fn run_job(job: Job, cfg: &SweepConfig) -> VerificationReport {
    let outcome = match (job.claim, job.param) {
        (Claim::Snf, JobParam::N(n)) => check_snf_theorem(n),
        (Claim::Rank2, JobParam::N(n)) => check_rank2_bound(n),
        (Claim::Disjoint, JobParam::N(n)) => check_disjoint(n),
        (Claim::Droot, JobParam::N(n)) => check_droot(n),
        (Claim::Intertwine, JobParam::N(n)) => check_intertwine(n),
        (Claim::WalkEq, JobParam::N(n)) => check_walk_equality(n),
        (Claim::Eigen, JobParam::N(n)) => check_eigen(n, cfg.eigen_tol),
        (Claim::EXi, JobParam::N(n)) => {
            check_product_e_xi(n, cfg.exi_rel_tol, cfg.exi_factor_tol)
        }
        (Claim::DetWb, JobParam::N(n)) => det_walk_b(n, cfg.lemma33_rel_tol).map(|(_, r)| r),
        (Claim::Prodsin, JobParam::M(m)) => check_prodsin(m, cfg.prodsin_rel_tol),
        (Claim::Vandermonde, JobParam::Batch) => Ok(check_vandermonde_random(
            cfg.trials,
            cfg.seed,
            cfg.vandermonde_rel_tol,
        )),
        (Claim::LemmaOdd0, JobParam::Batch) => Ok(check_odd_coeffs_even(cfg.trials, cfg.seed)),
        (Claim::LemmaM2e, JobParam::Batch) => check_symmetric_m2e_exhaustive(cfg.exhaustive_max),
        (claim, param) => {
            return VerificationReport {
                claim: claim.id(),
                params: format!("{param:?}"),
                pass: false,
                witness: "malformed job".into(),
                elapsed: Duration::ZERO,
            }
        }
    };
    outcome.unwrap_or_else(|err| VerificationReport {
        claim: job.claim.id(),
        params: format!("{:?}", job.param),
        pass: false,
        witness: format!("precondition violated: {err}"),
        elapsed: Duration::ZERO,
    })
}

/// Runs every claim over the configured range, sequentially, with the
/// negative-control reports appended. Reports come back ordered by
/// (claim, parameter).
pub fn verify_all(cfg: &SweepConfig) -> Vec<VerificationReport> {
    let mut jobs: Vec<Job> = Claim::ALL
        .iter()
        .flat_map(|&c| claim_jobs(c, cfg))
        .collect();
    jobs.sort_by_key(|j| (j.claim.index(), j.param.sort_key()));
    let mut reports: Vec<VerificationReport> =
        jobs.into_iter().map(|j| run_job(j, cfg)).collect();
    if let Some(n) = (cfg.n_min.max(8)..=cfg.n_max).find(|&n| n % 4 == 0) {
        reports.extend(negative_controls(n).expect("n chosen to satisfy preconditions"));
    }
    reports
}

/// Guards against vacuous passes: perturbed inputs must make the equality and
/// residual checks fail. Each report passes when the corresponding check
/// correctly rejects the perturbation.
pub fn negative_controls(n: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    let started = Instant::now();
    let mut reports = Vec::new();

    // Perturb one entry of B: the intertwining identity must break.
    {
        let a = crate::graph::Graph::dynkin_d(n)
            .map_err(|_| VerifyError::TooSmall { min: 8, got: n })?
            .adjacency_matrix();
        let c = matrix_c(n)?;
        let mut b = matrix_b(n)?;
        b[(0, 0)] += 1;
        let rejected = a.matmul(&c).unwrap() != c.matmul(&b).unwrap();
        reports.push(VerificationReport::finish(
            "negative-control",
            format!("n={n} case=intertwine-perturbed"),
            rejected,
            format!("perturbed B detected: {rejected}"),
            started,
        ));
    }

    // Swap two rows of the truncated walk matrix: equality must break.
    {
        let started = Instant::now();
        let mut wt = crate::walk::truncated_walk_dynkin(n)
            .map_err(|_| VerifyError::NotMultipleOfFour(n))?;
        wt.swap_rows(0, 1);
        let wb = crate::walk::walk_matrix_of_matrix(&matrix_b(n)?).unwrap();
        let rejected = &wt != wb.matrix();
        reports.push(VerificationReport::finish(
            "negative-control",
            format!("n={n} case=walk-eq-perturbed"),
            rejected,
            format!("row-swapped walk matrix detected: {rejected}"),
            started,
        ));
    }

    // Offset every angle: the eigenvector residual must blow past tolerance.
    {
        let started = Instant::now();
        let residual = spectral::max_eigen_residual_with_offset(n, 0.01)?;
        let rejected = residual > SweepConfig::default().eigen_tol;
        reports.push(VerificationReport::finish(
            "negative-control",
            format!("n={n} case=eigen-perturbed"),
            rejected,
            format!("offset angles give residual {residual:.3e}"),
            started,
        ));
    }

    Ok(reports)
}
