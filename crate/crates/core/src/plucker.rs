//! Tropical Plücker vectors (valuated matroids).
//!
//! A nonzero `w ∈ ∧^d V` is a tropical Plücker vector when, for every
//! `A ∈ C([n], d+1)` and `B ∈ C([n], d-1)`, the sum
//! `Σ_{i ∈ A∖B} w_{A-i} w_{B+i}` satisfies its bend relations. This module
//! decides that predicate, builds the circuit forms `α_J` and cocircuit
//! vectors `β_K`, tests tropical-linear-space membership, and carries an
//! independent exchange-axiom recognizer used to cross-check the predicate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linmod::{bend_violation, orth_member, tropker_member, LinearForm, Vector};
use crate::quotient;
use crate::semiring::Semifield;
use crate::subset::{combinations, Subset};
use crate::wedge::{hodge_star, Tensor};

/// A failed Plücker relation: omitting the term `p` changes the sum for the
/// pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub a: Subset,
    pub b: Subset,
    pub omitted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerReport {
    pub is_plucker: bool,
    /// Lexicographically least `(A, B, p)` that fails; present iff not Plücker.
    pub first_violation: Option<Violation>,
    pub relations_checked: usize,
}

fn check_degree<S: Semifield>(w: &Tensor<S>) -> Result<()> {
    if w.degree() == 0 || w.degree() > w.n() {
        return Err(Error::DegreeOutOfRange {
            degree: w.degree(),
            n: w.n(),
        });
    }
    if w.is_zero() {
        return Err(Error::ZeroTensor);
    }
    Ok(())
}

/// The terms `w_{A-i} w_{B+i}` for `i ∈ A∖B`, in increasing `i`.
fn relation_terms<S: Semifield>(w: &Tensor<S>, a: Subset, b: Subset) -> (Vec<usize>, Vec<S>) {
    let mut idx = Vec::new();
    let mut terms = Vec::new();
    for i in a.difference(b) {
        idx.push(i);
        let term = match (w.get(a.without(i)), w.get(b.with(i))) {
            (Some(x), Some(y)) => x.mul(y),
            _ => S::zero(),
        };
        terms.push(term);
    }
    (idx, terms)
}

/// Decides the tropical Plücker relations, sweeping every `(A, B)` pair.
pub fn is_plucker<S: Semifield>(w: &Tensor<S>) -> Result<PluckerReport> {
    check_degree(w)?;
    let (n, d) = (w.n(), w.degree());
    let mut checked = 0;
    for a in combinations(n, d + 1) {
        for b in combinations(n, d - 1) {
            checked += 1;
            let (idx, terms) = relation_terms(w, a, b);
            if let Some(j) = bend_violation(&terms) {
                return Ok(PluckerReport {
                    is_plucker: false,
                    first_violation: Some(Violation {
                        a,
                        b,
                        omitted: idx[j],
                    }),
                    relations_checked: checked,
                });
            }
        }
    }
    Ok(PluckerReport {
        is_plucker: true,
        first_violation: None,
        relations_checked: checked,
    })
}

/// `α_J = Σ_{i ∈ J} w_{J-i} x_i` for every `J ∈ C([n], d+1)`, keyed by `J`.
/// As a matrix these are the rows of `-∧w : V → ∧^{d+1} V`.
pub fn circuits<S: Semifield>(w: &Tensor<S>) -> Result<BTreeMap<Subset, LinearForm<S>>> {
    if w.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let n = w.n();
    Ok(combinations(n, w.degree() + 1)
        .map(|j| {
            let mut row = alloc::vec![S::zero(); n];
            for i in j {
                row[i - 1] = w.value(j.without(i));
            }
            (j, LinearForm::new(row))
        })
        .collect())
}

/// `β_K = Σ_{i ∉ K} w_{K+i} e_i` for every `K ∈ C([n], d-1)`, keyed by `K`.
pub fn cocircuits<S: Semifield>(w: &Tensor<S>) -> Result<BTreeMap<Subset, Vector<S>>> {
    if w.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if w.degree() == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, n: w.n() });
    }
    let n = w.n();
    Ok(combinations(n, w.degree() - 1)
        .map(|k| {
            let mut col = alloc::vec![S::zero(); n];
            for i in k.complement(n) {
                col[i - 1] = w.value(k.with(i));
            }
            (k, Vector::new(col))
        })
        .collect())
}

/// Membership of `v` in `L_w = tropker(-∧w)`.
pub fn tls_member<S: Semifield>(w: &Tensor<S>, v: &Vector<S>) -> Result<bool> {
    if v.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            found: v.len(),
        });
    }
    let rows: Vec<LinearForm<S>> = circuits(w)?.into_values().collect();
    tropker_member(&rows, v)
}

/// Dress–Wenzel exchange: for all `I, J` in the support and `i ∈ I∖J` there
/// is `j ∈ J∖I` with `w_I w_J ≤ w_{I-i+j} w_{J-j+i}`. Over `B` this is the
/// basis exchange axiom. Requires the natural order to be total.
pub fn exchange_oracle<S: Semifield>(w: &Tensor<S>) -> Result<bool> {
    check_degree(w)?;
    for (&bi, wi) in w.iter() {
        for (&bj, wj) in w.iter() {
            let lhs = wi.mul(wj);
            for i in bi.difference(bj) {
                let found = bj.difference(bi).iter().any(|j| {
                    let rhs = w.value(bi.without(i).with(j)).mul(&w.value(bj.without(j).with(i)));
                    lhs.natural_le(&rhs)
                });
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// `★w` satisfies the Plücker relations.
    pub star_is_plucker: bool,
    /// Every cocircuit of `w` lies in the orthogonal dual of the span of the
    /// cocircuits of `★w`.
    pub cocircuits_orthogonal: bool,
    /// The same with the roles of `w` and `★w` exchanged.
    pub dual_cocircuits_orthogonal: bool,
    /// `α(w)_J = β(★w)_{J^c}` for every `J`.
    pub correspondence: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.star_is_plucker
            && self.cocircuits_orthogonal
            && self.dual_cocircuits_orthogonal
            && self.correspondence
    }
}

/// Checks the duality statements for a Plücker vector `w`.
pub fn duality_report<S: Semifield>(w: &Tensor<S>) -> Result<DualityReport> {
    if !is_plucker(w)?.is_plucker {
        return Err(Error::NotPlucker);
    }
    let n = w.n();
    let star = hodge_star(w);
    let star_is_plucker = is_plucker(&star)?.is_plucker;

    let gens: Vec<Vector<S>> = cocircuits(w)?.into_values().collect();
    let dual_gens: Vec<Vector<S>> = cocircuits(&star)?.into_values().collect();
    let mut cocircuits_orthogonal = true;
    for g in &dual_gens {
        cocircuits_orthogonal &= orth_member(&gens, &g.transpose())?;
    }
    let mut dual_cocircuits_orthogonal = true;
    for g in &gens {
        dual_cocircuits_orthogonal &= orth_member(&dual_gens, &g.transpose())?;
    }

    let star_cocircuits = cocircuits(&star)?;
    let correspondence = circuits(w)?
        .into_iter()
        .all(|(j, alpha)| star_cocircuits.get(&j.complement(n)).map(Vector::transpose) == Some(alpha));

    Ok(DualityReport {
        star_is_plucker,
        cocircuits_orthogonal,
        dual_cocircuits_orthogonal,
        correspondence,
    })
}

/// Reconstructs `w` projectively from the presentation of `∧^d Q_w` alone.
///
/// The vanishing coordinates and the ratios between surviving ones are read
/// off the freeness certificate of the top-wedge presentation. The result is
/// normalized so the lexicographically least support index has coefficient
/// one, and it is checked against the input.
pub fn recover_plucker<S: Semifield>(w: &Tensor<S>) -> Result<Tensor<S>> {
    if !is_plucker(w)?.is_plucker {
        return Err(Error::NotPlucker);
    }
    let presentation = quotient::top_wedge_presentation(w)?;
    let certificate = quotient::FreenessCertificate::from_presentation(&presentation).map_err(|f| {
        Error::Inconsistency(alloc::format!("certificate failed for a Plücker vector: {f}"))
    })?;
    let recovered = certificate.functional().normalized();
    if recovered != w.normalized() {
        return Err(Error::Inconsistency(
            "recovered vector differs from the input".into(),
        ));
    }
    Ok(recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Tropical};
    use alloc::vec;

    fn bt(n: usize, d: usize, sets: &[&[usize]]) -> Tensor<Boolean> {
        Tensor::indicator(n, d, sets.iter().map(|s| Subset::of(s))).unwrap()
    }

    fn mk4() -> Tensor<Boolean> {
        let hyperplanes = [
            Subset::of(&[1, 2, 3]),
            Subset::of(&[1, 4, 5]),
            Subset::of(&[2, 5, 6]),
            Subset::of(&[3, 4, 6]),
        ];
        Tensor::indicator(6, 3, combinations(6, 3).filter(|i| !hyperplanes.contains(i))).unwrap()
    }

    #[test]
    fn plucker_examples() {
        assert!(is_plucker(&mk4()).unwrap().is_plucker);
        assert!(is_plucker(&bt(4, 1, &[&[2], &[3]])).unwrap().is_plucker);
        let bad = is_plucker(&bt(4, 2, &[&[1, 2], &[3, 4]])).unwrap();
        assert!(!bad.is_plucker);
        let v = bad.first_violation.unwrap();
        assert_eq!((v.a, v.b, v.omitted), (Subset::of(&[1, 2, 3]), Subset::of(&[4]), 3));
        assert_eq!(is_plucker(&Tensor::<Boolean>::zero(4, 2)), Err(Error::ZeroTensor));
        assert!(is_plucker(&Tensor::<Boolean>::unit(3)).is_err());
    }

    #[test]
    fn circuit_rows_of_mk4() {
        let rows = circuits(&mk4()).unwrap();
        assert_eq!(rows.len(), 15);
        let row = |s: &[usize]| -> Vec<bool> { rows[&Subset::of(s)].entries().iter().map(|b| b.0).collect() };
        assert_eq!(row(&[1, 2, 3, 4]), vec![true, true, true, false, false, false]);
        assert_eq!(row(&[1, 2, 5, 6]), vec![false, true, false, false, true, true]);
    }

    #[test]
    fn single_circuit_in_corank_one() {
        let w = Tensor::<Boolean>::uniform(4, 3);
        let rows = circuits(&w).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[&Subset::full(4)], LinearForm::indicator(4, &[1, 2, 3, 4]));
    }

    #[test]
    fn cocircuit_examples() {
        let w = Tensor::from_vector(&Vector::new(vec![Tropical::from_int(2), Tropical::NegInf]));
        let cc = cocircuits(&w).unwrap();
        assert_eq!(cc.len(), 1);
        assert_eq!(cc[&Subset::EMPTY], w.to_vector().unwrap());

        let beta = &cocircuits(&mk4()).unwrap()[&Subset::of(&[1, 2])];
        assert_eq!(*beta, Vector::indicator(6, &[4, 5, 6]));
        assert!(tls_member(&mk4(), beta).unwrap());
    }

    #[test]
    fn non_plucker_cocircuit_leaves_the_kernel() {
        let w = bt(4, 2, &[&[1, 2], &[3, 4]]);
        let beta = &cocircuits(&w).unwrap()[&Subset::of(&[1])];
        assert_eq!(*beta, Vector::indicator(4, &[2]));
        assert!(!tls_member(&w, beta).unwrap());
    }

    #[test]
    fn exchange_examples() {
        assert!(exchange_oracle(&mk4()).unwrap());
        assert!(!exchange_oracle(&bt(4, 2, &[&[1, 2], &[3, 4]])).unwrap());
        assert!(exchange_oracle(&bt(5, 3, &[&[1, 2, 5]])).unwrap());
    }

    #[test]
    fn duality_examples() {
        assert!(duality_report(&mk4()).unwrap().passed());
        assert!(duality_report(&Tensor::<Boolean>::uniform(4, 2)).unwrap().passed());
        let v = Vector::new(vec![Tropical::from_int(1), Tropical::from_ratio(-1, 2), Tropical::from_int(3)]);
        assert!(duality_report(&Tensor::from_vector(&v)).unwrap().passed());
        assert_eq!(duality_report(&bt(4, 2, &[&[1, 2], &[3, 4]])), Err(Error::NotPlucker));
    }

    #[test]
    fn recovery_examples() {
        assert_eq!(recover_plucker(&mk4()).unwrap(), mk4());
        let e = bt(5, 2, &[&[2, 4]]);
        assert_eq!(recover_plucker(&e).unwrap(), e);
    }
}
