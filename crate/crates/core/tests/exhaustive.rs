//! Exhaustive checks over 𝔹 against brute-force oracles.

use tropgrass_core::linmod::{orth_member, Vector};
use tropgrass_core::plucker::{duality_report, exchange_oracle, is_plucker, recover_plucker};
use tropgrass_core::quotient::{
    certified_free_rank_one, equivalent, is_free_rank_one, qw_presentation, saturate,
    top_wedge_presentation, wedge_presentation, EquivalenceVerdict, Presentation, DEFAULT_BUDGET,
};
use tropgrass_core::subset::combinations;
use tropgrass_core::{Boolean, Semifield, Subset, Tensor};

const SHAPES: [(usize, usize); 5] = [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2)];

fn all_tensors(n: usize, d: usize) -> impl Iterator<Item = Tensor<Boolean>> {
    let labels: Vec<Subset> = combinations(n, d).collect();
    (1u64..1 << labels.len()).map(move |mask| {
        let support = labels.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, k)| *k);
        Tensor::indicator(n, d, support).unwrap()
    })
}

/// Union-find over all `2^N` elements of the free 𝔹-module, merging
/// `l ∪ z` with `r ∪ z` for every pair and every `z`. The result is the
/// generated congruence.
struct BruteCongruence {
    parent: Vec<usize>,
}

impl BruteCongruence {
    fn new(p: &Presentation<Boolean>) -> Self {
        let labels = p.labels();
        let mask = |t: &Tensor<Boolean>| {
            t.support()
                .map(|k| 1usize << labels.iter().position(|l| *l == k).unwrap())
                .fold(0, |a, b| a | b)
        };
        let size = 1usize << labels.len();
        let mut uf = BruteCongruence {
            parent: (0..size).collect(),
        };
        let pairs: Vec<(usize, usize)> = p.generators().iter().map(|(l, r)| (mask(l), mask(r))).collect();
        for z in 0..size {
            for &(l, r) in &pairs {
                uf.union(l | z, r | z);
            }
        }
        uf
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[test]
fn three_recognizers_agree() {
    for (n, d) in SHAPES {
        let mut matroids = 0;
        let mut exchange_count = 0;
        for w in all_tensors(n, d) {
            let plucker = is_plucker(&w).unwrap().is_plucker;
            let exchange = exchange_oracle(&w).unwrap();
            let free = is_free_rank_one(&w, DEFAULT_BUDGET).unwrap().free;
            let certified = certified_free_rank_one(&w).unwrap().free;
            assert_eq!(plucker, exchange, "{w:?}");
            assert_eq!(plucker, free, "{w:?}");
            assert_eq!(plucker, certified, "{w:?}");
            matroids += plucker as usize;
            exchange_count += exchange as usize;
            if plucker {
                assert!(duality_report(&w).unwrap().passed(), "{w:?}");
                assert_eq!(recover_plucker(&w).unwrap(), w);
            }
        }
        assert_eq!(matroids, exchange_count);
        assert!(matroids > 0);
    }
}

#[test]
fn saturation_matches_full_enumeration() {
    for (n, d) in SHAPES {
        for w in all_tensors(n, d) {
            let p = top_wedge_presentation(&w).unwrap();
            let s = saturate(&p, DEFAULT_BUDGET).unwrap();
            let mut brute = BruteCongruence::new(&p);
            let labels = p.labels();
            let zero_root = brute.find(0);
            let vanishing: Vec<Subset> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| brute.find(1 << i) == zero_root)
                .map(|(_, k)| *k)
                .collect();
            assert_eq!(s.vanishing, vanishing, "{w:?}");
            for class in &s.classes {
                let i0 = labels.iter().position(|l| *l == class[0]).unwrap();
                for k in class {
                    let i = labels.iter().position(|l| l == k).unwrap();
                    assert_eq!(brute.find(1 << i), brute.find(1 << i0));
                }
            }
            let total = brute.class_count();
            assert_eq!(s.is_free_rank_one(), total == 2, "{w:?}: {total} classes");
        }
    }
}

#[test]
fn equivalence_matches_full_enumeration() {
    let ws = [
        Tensor::indicator(4, 2, [Subset::of(&[1, 2]), Subset::of(&[3, 4])]).unwrap(),
        Tensor::uniform(4, 3),
        Tensor::indicator(4, 2, [Subset::of(&[1, 2]), Subset::of(&[1, 3]), Subset::of(&[2, 3])]).unwrap(),
    ];
    for w in &ws {
        for k in 1..=w.degree() {
            let p = wedge_presentation(&qw_presentation(w).unwrap(), k).unwrap();
            let labels = p.labels();
            let mut brute = BruteCongruence::new(&p);
            let tensor = |mask: usize| {
                Tensor::indicator(4, k, labels.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| *l))
                    .unwrap()
            };
            let size = 1usize << labels.len();
            for a in 0..size {
                for b in (a..size).step_by(3) {
                    let (u, v) = (tensor(a), tensor(b));
                    let verdict = equivalent(&p, &u, &v, DEFAULT_BUDGET).unwrap();
                    let same = brute.find(a) == brute.find(b);
                    match verdict {
                        EquivalenceVerdict::Equal { chain } => {
                            assert!(same);
                            if let (Some(first), Some(last)) = (chain.first(), chain.last()) {
                                assert_eq!(first.from, u);
                                assert_eq!(last.to, v);
                            }
                            for pair in chain.windows(2) {
                                assert_eq!(pair[0].to, pair[1].from);
                            }
                        }
                        EquivalenceVerdict::Distinct { .. } => assert!(!same),
                        EquivalenceVerdict::Unknown { .. } => panic!("𝔹 decision must be complete"),
                    }
                }
            }
        }
    }
}

#[test]
fn presentations_entail_each_other() {
    for (n, d) in [(3, 2), (4, 2), (4, 3)] {
        for w in all_tensors(n, d) {
            let direct = top_wedge_presentation(&w).unwrap();
            let wedged = wedge_presentation(&qw_presentation(&w).unwrap(), d).unwrap();
            for (a, b) in [(&direct, &wedged), (&wedged, &direct)] {
                for (l, r) in a.generators() {
                    let verdict = equivalent(b, l, r, DEFAULT_BUDGET).unwrap();
                    assert!(verdict.is_equal(), "{w:?}: {l:?} vs {r:?}");
                }
            }
        }
    }
}

#[test]
fn orthogonal_dual_generators_suffice() {
    let n = 3;
    let all: Vec<Vector<Boolean>> = (0u32..8)
        .map(|m| Vector::new((0..n).map(|i| Boolean(m >> i & 1 == 1)).collect()))
        .collect();
    for a in &all {
        for b in &all {
            let gens = [a.clone(), b.clone()];
            let span: Vec<Vector<Boolean>> = (0..4)
                .map(|m| {
                    let mut c = Vector::zero(n);
                    for (i, g) in gens.iter().enumerate() {
                        if m >> i & 1 == 1 {
                            c = c.add(g).unwrap();
                        }
                    }
                    c
                })
                .collect();
            for f in &all {
                let f = f.transpose();
                let whole = span.iter().all(|c| orth_member(std::slice::from_ref(c), &f).unwrap());
                assert_eq!(orth_member(&gens, &f).unwrap(), whole);
            }
        }
    }
}

#[test]
fn uniform_tensors_are_free() {
    for n in 1..=5 {
        for d in 1..=n {
            let w = Tensor::<Boolean>::uniform(n, d);
            assert!(is_free_rank_one(&w, DEFAULT_BUDGET).unwrap().free);
            assert_eq!(w.value(Subset::full(d)), Boolean::one());
        }
    }
}
