//! The exhaustive Boolean sweep and the seeded tropical property suite.

use std::collections::BTreeMap;

use anyhow::{ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tropgrass_core::plucker::{duality_report, exchange_oracle, is_plucker, recover_plucker};
use tropgrass_core::quotient::{certified_free_rank_one, is_free_rank_one, Evidence};
use tropgrass_core::subset::{binomial, combinations};
use tropgrass_core::wedge::{elongate, hodge_star, maximal_minors, stable_sum};
use tropgrass_core::{Boolean, Error, Matrix, Semifield, Subset, Tensor, Tropical};

/// Seed used by randomized suites unless `--seed` overrides it.
pub const DEFAULT_SEED: u64 = 20_240_607;

pub const SWEEP_SHAPES: [(usize, usize); 5] = [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2)];
pub const RANDOM_SHAPES: [(usize, usize); 4] = [(2, 4), (2, 5), (3, 5), (3, 6)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub candidates: usize,
    /// Accepted by the Plücker predicate: the matroid count.
    pub plucker: usize,
    pub free_rank_one: usize,
    pub exchange: usize,
    /// Candidates on which the three recognizers disagree.
    pub disagreements: Vec<String>,
    pub duality_passed: usize,
    pub recovered: usize,
    /// Full-support candidates that fail the Plücker relations, and how
    /// many of those saturate to more than two classes.
    pub full_support_non_plucker: usize,
    pub full_support_many_classes: usize,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
            && self.plucker == self.exchange
            && self.plucker == self.free_rank_one
            && self.duality_passed == self.plucker
            && self.recovered == self.plucker
            && self.full_support_many_classes == self.full_support_non_plucker
    }
}

/// Every nonzero Boolean tensor of shape `(n, d)`, in mask order.
pub fn boolean_tensors(n: usize, d: usize) -> impl Iterator<Item = Tensor<Boolean>> {
    let labels: Vec<Subset> = combinations(n, d).collect();
    let count = labels.len();
    (1u64..1 << count).map(move |mask| {
        let support = (0..count).filter(|i| mask >> i & 1 == 1).map(|i| labels[i]);
        Tensor::indicator(n, d, support).expect("valid indices")
    })
}

pub fn sweep_boolean(n: usize, d: usize, budget: usize) -> Result<SweepRow> {
    ensure!(d >= 1 && d <= n && binomial(n, d) <= 16, "sweep shape ({n},{d}) out of range");
    let mut row = SweepRow {
        n,
        d,
        candidates: 0,
        plucker: 0,
        free_rank_one: 0,
        exchange: 0,
        disagreements: Vec::new(),
        duality_passed: 0,
        recovered: 0,
        full_support_non_plucker: 0,
        full_support_many_classes: 0,
    };
    let full = binomial(n, d);
    for w in boolean_tensors(n, d) {
        row.candidates += 1;
        let p = is_plucker(&w)?.is_plucker;
        let verdict = is_free_rank_one(&w, budget)?;
        let x = exchange_oracle(&w)?;
        row.plucker += p as usize;
        row.free_rank_one += verdict.free as usize;
        row.exchange += x as usize;
        if p != verdict.free || p != x {
            let support: Vec<String> = w.support().map(|k| k.to_string()).collect();
            row.disagreements.push(support.join(" "));
        }
        if p {
            row.duality_passed += duality_report(&w)?.passed() as usize;
            row.recovered += recover_plucker(&w)?.projectively_eq(&w) as usize;
        } else if w.support_len() == full {
            row.full_support_non_plucker += 1;
            if let Evidence::Saturation(s) = &verdict.evidence {
                row.full_support_many_classes += (s.class_count() > 2) as usize;
            }
        }
    }
    Ok(row)
}

fn random_entry(rng: &mut ChaCha8Rng) -> Tropical {
    if rng.random_ratio(1, 8) {
        Tropical::NegInf
    } else {
        Tropical::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=3))
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Tropical> {
    let rows = (0..rows)
        .map(|_| (0..cols).map(|_| random_entry(rng)).collect())
        .collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Maximal minors of a random `d × n` matrix, resampling until nonzero.
/// Returns the vector and the number of resamples.
pub fn random_plucker(rng: &mut ChaCha8Rng, d: usize, n: usize) -> (Tensor<Tropical>, usize) {
    let mut resampled = 0;
    loop {
        let w = maximal_minors(&random_matrix(rng, d, n)).expect("d <= n");
        if !w.is_zero() {
            return (w, resampled);
        }
        resampled += 1;
    }
}

/// One coordinate changed: finite values move by a nonzero amount or drop
/// to `-inf`; `-inf` becomes finite.
pub fn perturb(rng: &mut ChaCha8Rng, w: &Tensor<Tropical>) -> Tensor<Tropical> {
    let labels: Vec<Subset> = combinations(w.n(), w.degree()).collect();
    let k = labels[rng.random_range(0..labels.len())];
    let old = w.value(k);
    let new = if old.is_zero() || !rng.random_ratio(1, 4) {
        let delta = loop {
            let p: i64 = rng.random_range(-6..=6);
            if p != 0 {
                break Tropical::from_ratio(p, rng.random_range(1..=2));
            }
        };
        if old.is_zero() {
            delta
        } else {
            old.mul(&delta)
        }
    } else {
        Tropical::NegInf
    };
    w.with_value(k, new).expect("valid index")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShapeStats {
    pub d: usize,
    pub n: usize,
    pub samples: usize,
    pub resampled: usize,
    pub minors_plucker: usize,
    pub star_plucker: usize,
    pub elongation_checked: usize,
    pub elongation_plucker: usize,
    pub stable_sum_defined: usize,
    pub stable_sum_undefined: usize,
    pub stable_sum_plucker: usize,
    pub certificate_ok: usize,
    pub duality_passed: usize,
    pub recovered: usize,
    pub perturbations_flipped: usize,
    pub perturbation_certificate_failed: usize,
    pub failure_stages: BTreeMap<String, usize>,
}

impl ShapeStats {
    pub fn passed(&self) -> bool {
        self.minors_plucker == self.samples
            && self.star_plucker == self.samples
            && self.elongation_plucker == self.elongation_checked
            && self.stable_sum_plucker == self.stable_sum_defined
            && self.certificate_ok == self.samples
            && self.duality_passed == self.samples
            && self.recovered == self.samples
            && self.perturbation_certificate_failed == self.perturbations_flipped
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub shapes: Vec<ShapeStats>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.shapes.iter().all(ShapeStats::passed)
    }

    pub fn total_flipped(&self) -> usize {
        self.shapes.iter().map(|s| s.perturbations_flipped).sum()
    }
}

/// Attempts per sample to find a perturbation that breaks the relations.
const PERTURBATION_ATTEMPTS: usize = 16;

pub fn random_suite(seed: u64, samples: usize, shapes: &[(usize, usize)]) -> Result<SuiteReport> {
    random_suite_with(seed, samples, shapes, |_| Ok(()))
}

/// [`random_suite`], calling `visit` on every sampled Plücker vector.
pub fn random_suite_with(
    seed: u64,
    samples: usize,
    shapes: &[(usize, usize)],
    mut visit: impl FnMut(&Tensor<Tropical>) -> Result<()>,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        seed,
        shapes: Vec::new(),
    };
    for &(d, n) in shapes {
        let mut s = ShapeStats {
            d,
            n,
            ..ShapeStats::default()
        };
        for _ in 0..samples {
            let (w, resampled) = random_plucker(&mut rng, d, n);
            s.samples += 1;
            s.resampled += resampled;
            visit(&w)?;
            s.minors_plucker += is_plucker(&w)?.is_plucker as usize;
            s.star_plucker += is_plucker(&hodge_star(&w))?.is_plucker as usize;
            if d < n {
                s.elongation_checked += 1;
                s.elongation_plucker += is_plucker(&elongate(&w, d + 1)?)?.is_plucker as usize;
                let (v, _) = random_plucker(&mut rng, 1, n);
                match stable_sum(&w, &v) {
                    Ok(sum) => {
                        s.stable_sum_defined += 1;
                        s.stable_sum_plucker += is_plucker(&sum)?.is_plucker as usize;
                    }
                    Err(Error::UndefinedStableSum) => s.stable_sum_undefined += 1,
                    Err(e) => return Err(e.into()),
                }
            }
            s.certificate_ok += certified_free_rank_one(&w)?.free as usize;
            s.duality_passed += duality_report(&w)?.passed() as usize;
            s.recovered += recover_plucker(&w)?.projectively_eq(&w) as usize;

            for _ in 0..PERTURBATION_ATTEMPTS {
                let bumped = perturb(&mut rng, &w);
                if bumped.is_zero() || is_plucker(&bumped)?.is_plucker {
                    continue;
                }
                s.perturbations_flipped += 1;
                let verdict = certified_free_rank_one(&bumped)?;
                if let Evidence::Failure(f) = &verdict.evidence {
                    s.perturbation_certificate_failed += 1;
                    *s.failure_stages.entry(f.stage().to_string()).or_default() += 1;
                }
                break;
            }
        }
        report.shapes.push(s);
    }
    Ok(report)
}
