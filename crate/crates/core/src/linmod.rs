//! Free modules `V = S^n`, linear forms, and the bend-relation predicate.
//!
//! Submodules are always given extensionally by a finite list of
//! generators; membership in a tropical kernel or an orthogonal dual is
//! decided coordinatewise.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::semiring::Semifield;

/// An element of `V` in the basis `e_1..e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector<S>(Vec<S>);

/// An element of `V^∨` in the dual basis `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm<S>(Vec<S>);

macro_rules! dense_common {
    ($ty:ident) => {
        impl<S: Semifield> $ty<S> {
            /// Panics on an empty coordinate list (the ambient rank is at least one).
            pub fn new(entries: Vec<S>) -> Self {
                assert!(!entries.is_empty(), "ambient rank must be at least one");
                $ty(entries)
            }

            pub fn zero(n: usize) -> Self {
                Self::new(alloc::vec![S::zero(); n])
            }

            /// The `i`-th basis element (1-based).
            pub fn basis(n: usize, i: usize) -> Self {
                let mut v = alloc::vec![S::zero(); n];
                v[i - 1] = S::one();
                Self::new(v)
            }

            /// Sum of the basis elements with the given 1-based indices.
            pub fn indicator(n: usize, support: &[usize]) -> Self {
                let mut v = alloc::vec![S::zero(); n];
                for &i in support {
                    v[i - 1] = S::one();
                }
                Self::new(v)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn entries(&self) -> &[S] {
                &self.0
            }

            /// 1-based coordinate access.
            pub fn get(&self, i: usize) -> &S {
                &self.0[i - 1]
            }

            pub fn into_entries(self) -> Vec<S> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(S::is_zero)
            }

            pub fn scale(&self, s: &S) -> Self {
                $ty(self.0.iter().map(|x| x.mul(s)).collect())
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                check_len(self.len(), other.len())?;
                Ok($ty(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect()))
            }
        }
    };
}

dense_common!(Vector);
dense_common!(LinearForm);

impl<S: Semifield> Vector<S> {
    /// The same coordinates read as a linear form.
    pub fn transpose(&self) -> LinearForm<S> {
        LinearForm(self.0.clone())
    }
}

impl<S: Semifield> LinearForm<S> {
    pub fn transpose(&self) -> Vector<S> {
        Vector(self.0.clone())
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `⟨v, f⟩ = Σ_i v_i f_i`.
pub fn pairing<S: Semifield>(v: &Vector<S>, f: &LinearForm<S>) -> Result<S> {
    check_len(v.len(), f.len())?;
    Ok(v.0.iter().zip(&f.0).fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
}

/// First index `j` whose omission changes `Σ terms`, if any.
///
/// Uses the definition directly (prefix/suffix sums), so it does not depend
/// on the semifield being totally ordered.
pub fn bend_violation<S: Semifield>(terms: &[S]) -> Option<usize> {
    let m = terms.len();
    let mut suffix = alloc::vec![S::zero(); m + 1];
    for j in (0..m).rev() {
        suffix[j] = terms[j].add(&suffix[j + 1]);
    }
    let total = &suffix[0];
    let mut prefix = S::zero();
    for j in 0..m {
        if prefix.add(&suffix[j + 1]) != *total {
            return Some(j);
        }
        prefix = prefix.add(&terms[j]);
    }
    None
}

/// Whether every single term of `Σ terms` can be omitted without changing
/// the sum. Over a totally ordered semifield: the maximum is attained at
/// least twice, or every term is zero.
pub fn bend_holds<S: Semifield>(terms: &[S]) -> bool {
    bend_violation(terms).is_none()
}

/// Membership of `v` in the tropical kernel of the map whose rows are `rows`.
/// An empty row list imposes no condition.
pub fn tropker_member<S: Semifield>(rows: &[LinearForm<S>], v: &Vector<S>) -> Result<bool> {
    for row in rows {
        check_len(v.len(), row.len())?;
    }
    Ok(rows.iter().all(|row| {
        let terms: Vec<S> = row.0.iter().zip(&v.0).map(|(f, x)| f.mul(x)).collect();
        bend_holds(&terms)
    }))
}

/// Membership of `f` in `L^⊥` where `L` is spanned by `generators`.
///
/// Only the generators are tested. For a totally ordered semifield this
/// agrees with testing every element of the span; both shipped instances
/// are totally ordered.
pub fn orth_member<S: Semifield>(generators: &[Vector<S>], f: &LinearForm<S>) -> Result<bool> {
    let rows: Vec<LinearForm<S>> = generators.iter().map(Vector::transpose).collect();
    tropker_member(&rows, &f.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Tropical};
    use alloc::vec;
    use proptest::prelude::*;

    fn t(s: &str) -> Tropical {
        s.parse().unwrap()
    }

    fn tv(xs: &[&str]) -> Vec<Tropical> {
        xs.iter().map(|s| t(s)).collect()
    }

    #[test]
    fn pairing_examples() {
        let v = Vector::new(tv(&["0", "0"]));
        let f = LinearForm::new(tv(&["1", "2"]));
        assert_eq!(pairing(&v, &f).unwrap(), t("2"));
        for i in 1..=3 {
            for j in 1..=3 {
                let p = pairing(&Vector::<Tropical>::basis(3, i), &LinearForm::basis(3, j)).unwrap();
                assert_eq!(p, if i == j { Tropical::one() } else { Tropical::zero() });
            }
        }
        let v = Vector::indicator(2, &[1]);
        let f = LinearForm::indicator(2, &[2]);
        assert_eq!(pairing::<Boolean>(&v, &f).unwrap(), Boolean::ZERO);
        assert!(matches!(
            pairing(&Vector::<Boolean>::zero(2), &LinearForm::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bend_examples() {
        assert!(bend_holds(&tv(&["3", "3", "1"])));
        assert!(!bend_holds(&tv(&["3", "2", "1"])));
        assert_eq!(bend_violation(&tv(&["1", "3", "2"])), Some(1));
        assert!(bend_holds(&tv(&["-inf"])));
        assert!(!bend_holds(&tv(&["5"])));
        assert!(bend_holds::<Tropical>(&[]));
        assert!(bend_holds(&tv(&["-inf", "-inf"])));
    }

    fn kernel_rows(second: [&str; 3]) -> Vec<LinearForm<Tropical>> {
        vec![LinearForm::new(tv(&["0", "1", "2"])), LinearForm::new(tv(&second))]
    }

    #[test]
    fn tropical_kernel_example() {
        let rows = kernel_rows(["0", "0", "-inf"]);
        assert!(tropker_member(&rows, &Vector::new(tv(&["0", "0", "-1"]))).unwrap());
        assert!(!tropker_member(&rows, &Vector::new(tv(&["0", "0", "0"]))).unwrap());
        let rows = kernel_rows(["0", "1", "-inf"]);
        assert!(tropker_member(&rows, &Vector::new(tv(&["0", "-1", "-2"]))).unwrap());
        assert!(tropker_member(&rows, &Vector::new(tv(&["0", "-1", "-inf"]))).unwrap());
        assert!(tropker_member::<Tropical>(&[], &Vector::new(tv(&["4"]))).unwrap());
    }

    #[test]
    fn orthogonal_dual_example() {
        let l = [Vector::<Boolean>::indicator(3, &[1, 2]), Vector::indicator(3, &[2, 3])];
        assert!(orth_member(&l, &LinearForm::indicator(3, &[1, 2, 3])).unwrap());
        assert!(!orth_member(&l, &LinearForm::indicator(3, &[1, 2])).unwrap());
        assert!(orth_member(&l, &LinearForm::zero(3)).unwrap());
        // e1 + e3 lies in L^⊥⊥ although it is not in L = {0, e12, e23, e123}.
        let perp = [Vector::<Boolean>::indicator(3, &[1, 2, 3])];
        assert!(orth_member(&perp, &LinearForm::indicator(3, &[1, 3])).unwrap());
    }

    fn tropical() -> impl Strategy<Value = Tropical> {
        prop_oneof![
            1 => Just(Tropical::NegInf),
            4 => (-6i64..6).prop_map(Tropical::from_int),
        ]
    }

    fn finite() -> impl Strategy<Value = Tropical> {
        (-20i64..20, 1i64..4).prop_map(|(p, q)| Tropical::from_ratio(p, q))
    }

    proptest! {
        #[test]
        fn bend_is_scale_invariant(terms in prop::collection::vec(tropical(), 0..6), s in finite()) {
            let scaled: Vec<Tropical> = terms.iter().map(|x| x.mul(&s)).collect();
            prop_assert_eq!(bend_holds(&terms), bend_holds(&scaled));
        }

        #[test]
        fn bend_matches_max_twice(terms in prop::collection::vec(tropical(), 1..6)) {
            let max = terms.iter().max().unwrap();
            let attained = terms.iter().filter(|x| *x == max).count();
            prop_assert_eq!(bend_holds(&terms), max.is_zero() || attained >= 2);
        }

        #[test]
        fn tropker_is_scale_invariant(
            rows in prop::collection::vec(prop::collection::vec(tropical(), 3), 1..4),
            v in prop::collection::vec(tropical(), 3),
            s in finite(),
            r in finite(),
        ) {
            let rows: Vec<LinearForm<Tropical>> = rows.into_iter().map(LinearForm::new).collect();
            let v = Vector::new(v);
            let base = tropker_member(&rows, &v).unwrap();
            prop_assert_eq!(base, tropker_member(&rows, &v.scale(&s)).unwrap());
            let rescaled: Vec<_> = rows.iter().map(|f| f.scale(&r)).collect();
            prop_assert_eq!(base, tropker_member(&rescaled, &v).unwrap());
        }

        /// Testing the generators of `L` decides membership in `L^⊥` for the
        /// whole span (total order).
        #[test]
        fn generators_suffice_for_orthogonal_dual(
            gens in prop::collection::vec(prop::collection::vec(tropical(), 4), 1..4),
            coeffs in prop::collection::vec(tropical(), 4),
            f in prop::collection::vec(tropical(), 4),
        ) {
            let gens: Vec<Vector<Tropical>> = gens.into_iter().map(Vector::new).collect();
            let f = LinearForm::new(f);
            if orth_member(&gens, &f).unwrap() {
                let mut c = Vector::zero(4);
                for (g, s) in gens.iter().zip(&coeffs) {
                    c = c.add(&g.scale(s)).unwrap();
                }
                prop_assert!(orth_member(&[c], &f).unwrap());
            }
        }
    }
}
