use proptest::prelude::*;

use tropgrass_core::plucker::{duality_report, is_plucker, recover_plucker};
use tropgrass_core::quotient::{
    equivalent, evaluate, is_free_rank_one, top_wedge_presentation, EquivalenceVerdict, Evidence,
    DEFAULT_BUDGET,
};
use tropgrass_core::wedge::{elongate, hodge_star, maximal_minors, permanent};
use tropgrass_core::{Matrix, Semifield, Subset, Tensor, Tropical};

fn entry() -> impl Strategy<Value = Tropical> {
    prop_oneof![
        1 => Just(Tropical::NegInf),
        6 => (-9i64..10, 1i64..4).prop_map(|(p, q)| Tropical::from_ratio(p, q)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Tropical>> {
    prop::collection::vec(prop::collection::vec(entry(), cols), rows)
        .prop_map(|rows| Matrix::from_rows(rows).unwrap())
}

/// A realizable Plücker vector, or `None` if every minor vanished.
fn minors(m: &Matrix<Tropical>) -> Option<Tensor<Tropical>> {
    let w = maximal_minors(m).unwrap();
    (!w.is_zero()).then_some(w)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 4)), Just((2, 5)), Just((3, 5)), Just((3, 6)), Just((1, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permanent_matches_permutation_sum(m in (1usize..6).prop_flat_map(|k| matrix(k, k))) {
        let k = m.rows();
        let mut perms = Vec::new();
        permutations(&mut (0..k).collect(), 0, &mut perms);
        let brute = perms.iter().fold(Tropical::zero(), |acc, p| {
            let term = (0..k).fold(Tropical::one(), |t, r| t.mul(m.get(r, p[r])));
            acc.add(&term)
        });
        prop_assert_eq!(permanent(&m).unwrap(), brute);
    }

    #[test]
    fn realizable_vectors_are_free_and_recovered(
        m in shape().prop_flat_map(|(d, n)| matrix(d, n)),
    ) {
        let Some(w) = minors(&m) else { return Ok(()) };
        prop_assert!(is_plucker(&w).unwrap().is_plucker);
        let verdict = is_free_rank_one(&w, DEFAULT_BUDGET).unwrap();
        prop_assert!(verdict.free);
        prop_assert!(matches!(verdict.evidence, Evidence::Certificate(_)));
        prop_assert_eq!(verdict.functional().unwrap(), w.normalized());
        prop_assert!(recover_plucker(&w).unwrap().projectively_eq(&w));
        prop_assert!(duality_report(&w).unwrap().passed());
        let star = hodge_star(&w);
        prop_assert!(is_plucker(&star).unwrap().is_plucker);
        if w.degree() < w.n() {
            prop_assert!(is_plucker(&elongate(&w, w.degree() + 1).unwrap()).unwrap().is_plucker);
        }
    }

    #[test]
    fn verdicts_are_invariant_under_relabelling_and_rescaling(
        m in shape().prop_flat_map(|(d, n)| matrix(d, n)),
        seed in any::<u64>(),
        bump in -3i64..4,
        s in -5i64..5,
    ) {
        let Some(w) = minors(&m) else { return Ok(()) };
        let n = w.n();
        // A pseudo-random permutation from the seed.
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let first = w.support().next().unwrap();
        let candidates = [w.clone(), w.with_value(first, w.value(first).mul(&Tropical::from_int(bump))).unwrap()];
        for v in candidates {
            let base = is_plucker(&v).unwrap().is_plucker;
            let free = is_free_rank_one(&v, DEFAULT_BUDGET).unwrap().free;
            prop_assert_eq!(base, free);
            for moved in [v.permute(&perm).unwrap(), v.scale(&Tropical::from_int(s))] {
                prop_assert_eq!(is_plucker(&moved).unwrap().is_plucker, base);
                prop_assert_eq!(is_free_rank_one(&moved, DEFAULT_BUDGET).unwrap().free, base);
            }
        }
    }

    #[test]
    fn tropical_equivalence_is_sound(
        m in prop_oneof![matrix(2, 4), matrix(1, 4)],
        offset in 1i64..3,
    ) {
        let Some(w) = minors(&m) else { return Ok(()) };
        let p = top_wedge_presentation(&w).unwrap();
        let lambda = is_free_rank_one(&w, DEFAULT_BUDGET).unwrap().functional().unwrap();
        let support: Vec<Subset> = w.support().collect();
        let i = support[0];
        let j = *support.last().unwrap();
        let xi = Tensor::basis(w.n(), i).unwrap();
        // c·x_j with λ(c·x_j) = λ(x_i) is identified with x_i.
        let c = lambda.value(i).div(&lambda.value(j)).unwrap();
        let same = Tensor::basis(w.n(), j).unwrap().scale(&c);
        let other = same.scale(&Tropical::from_int(offset));
        match equivalent(&p, &xi, &same, DEFAULT_BUDGET).unwrap() {
            EquivalenceVerdict::Distinct { .. } => prop_assert!(false, "false separation"),
            EquivalenceVerdict::Equal { chain } => {
                if let Some(last) = chain.last() {
                    prop_assert_eq!(&last.to, &same);
                }
            }
            EquivalenceVerdict::Unknown { .. } => {}
        }
        prop_assert_eq!(evaluate(&lambda, &xi), evaluate(&lambda, &same));
        prop_assert!(equivalent(&p, &xi, &other, DEFAULT_BUDGET).unwrap().is_distinct());
    }
}
