//! End-to-end implication and sharpness checks for binomial CI models.
//!
//! For the cyclic model the variety of the CI ideal meets the positive
//! definite cone only inside the components that are not excluded by a
//! certificate. Variables vanishing on all of those components vanish on
//! every positive definite solution, and each such off-diagonal variable
//! `s_ab` is the marginal statement `a _||_ b`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::certificates::{
    certificate_violates_pd, default_counterexample_params, exclusion_certificate,
    rotated_counterexample, ExclusionCertificate,
};
use crate::ci::{ci_holds, cyclic_model, marginal_conclusions, CIModel, CIStatement};
use crate::document::serialize_sym_matrix;
use crate::error::{Error, Result};
use crate::lattice::{basis_matrix, CovVariable};
use crate::linalg::{is_diagonally_dominant, is_positive_definite};
use crate::primes::{minimal_primes, MinimalPrime};
use crate::sampling::{random_pd, seeded_rng};
use crate::RationalSymMatrix;

pub const TORIC_NOT_EXCLUDED: &str =
    "toric component not excluded; candidate implications are not verified";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedPrime {
    pub prime: MinimalPrime,
    pub certificate: ExclusionCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub model: CIModel,
    pub primes: Vec<MinimalPrime>,
    pub excluded: Vec<ExcludedPrime>,
    /// Variables vanishing on every component that is not excluded.
    pub surviving_vars: BTreeSet<CovVariable>,
    /// Marginal statements implied by the model on positive definite matrices.
    pub implied: Vec<CIStatement>,
    /// What would follow if every toric component could be excluded; only
    /// populated alongside a caveat.
    pub candidate_implied: Vec<CIStatement>,
    pub caveat: Option<String>,
    /// Positive definite samples on which each certificate was checked.
    pub evidence_samples: usize,
    pub seed: u64,
}

fn intersect_all<'a>(sets: impl Iterator<Item = &'a BTreeSet<CovVariable>>) -> BTreeSet<CovVariable> {
    let mut acc: Option<BTreeSet<CovVariable>> = None;
    for s in sets {
        acc = Some(match acc {
            None => s.clone(),
            Some(a) => a.intersection(s).copied().collect(),
        });
    }
    acc.unwrap_or_default()
}

fn marginals_of(vars: &BTreeSet<CovVariable>) -> Result<Vec<CIStatement>> {
    vars.iter()
        .filter(|v| !v.is_diagonal())
        .map(|v| CIStatement::marginal(v.i(), v.j()))
        .collect()
}

/// Runs the full pipeline: basis matrix, minimal primes, exclusion of the
/// toric component (cyclic models only), and read-off of the implied
/// marginal statements.
///
/// Each certificate is checked on `samples` random positive definite
/// matrices drawn from `seed`.
pub fn implied_marginals(model: &CIModel, samples: usize, seed: u64) -> Result<ImplicationReport> {
    let basis = basis_matrix(model)?;
    let primes = minimal_primes(&basis)?;
    let n = model.n();

    let mut excluded = Vec::new();
    if model.is_cyclic() {
        let certificate = exclusion_certificate(n)?;
        let mut rng = seeded_rng(seed);
        for _ in 0..samples {
            let sigma = random_pd(&mut rng, n, 3);
            if !certificate_violates_pd(&certificate, &sigma)? {
                return Err(Error::Internal(format!(
                    "positive definite sample satisfies the toric binomial:\n{sigma}"
                )));
            }
        }
        let toric = primes.iter().find(|p| p.is_toric()).expect("toric component is always listed");
        excluded.push(ExcludedPrime { prime: toric.clone(), certificate });
    }

    let remaining: Vec<&MinimalPrime> = primes
        .iter()
        .filter(|p| !excluded.iter().any(|x| &x.prime == *p))
        .collect();
    let surviving_vars = intersect_all(remaining.iter().map(|p| &p.vanishing_vars));
    let implied = marginals_of(&surviving_vars)?;

    let toric_open = remaining.iter().any(|p| p.is_toric());
    let (candidate_implied, caveat) = if toric_open {
        let others = intersect_all(remaining.iter().filter(|p| !p.is_toric()).map(|p| &p.vanishing_vars));
        (marginals_of(&others)?, Some(TORIC_NOT_EXCLUDED.to_string()))
    } else {
        (Vec::new(), None)
    };

    Ok(ImplicationReport {
        model: model.clone(),
        primes,
        excluded,
        surviving_vars,
        implied,
        candidate_implied,
        caveat,
        evidence_samples: samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatementCheck {
    pub statement: CIStatement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub model_checks: Vec<StatementCheck>,
    pub conclusion_checks: Vec<StatementCheck>,
    /// Every model statement holds while some conclusion fails.
    pub non_implication: bool,
    /// Some model statements hold and every conclusion fails.
    pub sharpness: bool,
}

impl WitnessReport {
    pub fn model_holding(&self) -> usize {
        self.model_checks.iter().filter(|c| c.holds).count()
    }

    pub fn conclusions_holding(&self) -> usize {
        self.conclusion_checks.iter().filter(|c| c.holds).count()
    }

    pub fn verdict(&self) -> &'static str {
        match (self.sharpness, self.non_implication) {
            (true, _) => "SHARPNESS",
            (false, true) => "NON-IMPLICATION",
            _ if self.conclusion_checks.iter().all(|c| c.holds)
                && self.model_checks.iter().all(|c| c.holds) =>
            {
                "CONSISTENT"
            }
            _ => "INCONCLUSIVE",
        }
    }
}

/// Evaluates the model statements and the conclusions on a positive
/// definite `sigma`, exactly.
pub fn check_witness(
    sigma: &RationalSymMatrix,
    model: &CIModel,
    conclusions: &[CIStatement],
) -> Result<WitnessReport> {
    if sigma.n() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0}", model.n()),
            found: format!("{0}x{0}", sigma.n()),
        });
    }
    if !is_positive_definite(sigma) {
        return Err(Error::NotPositiveDefinite);
    }
    let check = |s: &CIStatement| -> Result<StatementCheck> {
        Ok(StatementCheck { statement: s.clone(), holds: ci_holds(sigma, s)? })
    };
    let model_checks: Vec<StatementCheck> = model.statements().iter().map(check).collect::<Result<_>>()?;
    let conclusion_checks: Vec<StatementCheck> = conclusions.iter().map(check).collect::<Result<_>>()?;
    let all_model = model_checks.iter().all(|c| c.holds);
    let any_model = model_checks.iter().any(|c| c.holds);
    let no_conclusion = conclusion_checks.iter().all(|c| !c.holds);
    Ok(WitnessReport {
        non_implication: all_model && conclusion_checks.iter().any(|c| !c.holds),
        sharpness: any_model && no_conclusion && !conclusion_checks.is_empty(),
        model_checks,
        conclusion_checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DropOneWitness {
    pub dropped: CIStatement,
    #[serde(serialize_with = "serialize_sym_matrix")]
    pub sigma: RationalSymMatrix,
    pub diagonally_dominant: bool,
    pub all_entries_nonzero: bool,
    pub report: WitnessReport,
}

/// For each statement of the cyclic model, a positive definite matrix that
/// satisfies every other statement and none of the marginal conclusions.
///
/// Fails with an internal error if any witness does not have that shape.
pub fn drop_one_suite(n: usize) -> Result<Vec<DropOneWitness>> {
    let model = cyclic_model(n)?;
    let conclusions = marginal_conclusions(n)?;
    let (a, e) = default_counterexample_params(n);
    let mut out = Vec::with_capacity(n);
    for drop in 1..=n {
        let sigma = rotated_counterexample(n, &a, &e, drop)?;
        let report = check_witness(&sigma, &model, &conclusions)?;
        let dropped = model.statements()[drop - 1].clone();
        let shape_ok = report
            .model_checks
            .iter()
            .all(|c| c.holds == (c.statement != dropped))
            && report.conclusions_holding() == 0;
        if !shape_ok {
            return Err(Error::Internal(format!("drop-one witness for {dropped} has the wrong shape")));
        }
        let all_entries_nonzero = sigma.upper_entries().all(|(_, _, v)| !v.is_zero());
        out.push(DropOneWitness {
            dropped,
            diagonally_dominant: is_diagonally_dominant(&sigma),
            all_entries_nonzero,
            sigma,
            report,
        });
    }
    Ok(out)
}
