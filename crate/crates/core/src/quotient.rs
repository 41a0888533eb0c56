//! Congruences on free modules and the quotients `Q_w`, `∧^k Q_w`.
//!
//! A [`Presentation`] is a finite list of generating pairs for a congruence
//! on the free module `∧^k V^∨`, whose basis is `x_I` for `I ∈ C([n], k)`.
//! Presentations built from bend relations also keep the source
//! expressions, which the freeness certificate reads directly.
//!
//! Over 𝔹 the generated congruence is decided exactly. Every class of a
//! congruence on a finite semilattice has a largest element, and the
//! largest element of the class of `u` is the closure of `u` under the Horn
//! rules "if `l ⊆ u` then `u ∪ r`" (both directions of every pair). Two
//! vectors are equivalent iff their closures agree; the closure steps form
//! an explicit rewrite chain, and when they differ the complement of one
//! closure is a separating functional.
//!
//! Over 𝕋(ℚ) the answers are sound but may be [`EquivalenceVerdict::Unknown`].

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::plucker;
use crate::semiring::{Boolean, Semifield, SemifieldKind, Tropical};
use crate::subset::{binomial, combinations, Subset};
use crate::wedge::{wedge, Tensor};

/// Default cap on visited states for the congruence engines.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Generating pairs of a congruence on `∧^k V^∨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<S> {
    n: usize,
    degree: usize,
    generators: Vec<(Tensor<S>, Tensor<S>)>,
    sources: Vec<Tensor<S>>,
}

/// The bend pairs of `Σ_j t_j`: `(Σ_j t_j, Σ_{j≠i} t_j)` for each term.
pub fn bend_pairs<S: Semifield>(expr: &Tensor<S>) -> Vec<(Tensor<S>, Tensor<S>)> {
    expr.support()
        .map(|k| {
            let mut rest = expr.clone();
            rest.remove(k);
            (expr.clone(), rest)
        })
        .collect()
}

impl<S: Semifield> Presentation<S> {
    /// A hand-built presentation. Pairs with identical sides and repeated
    /// pairs are dropped.
    pub fn new(n: usize, degree: usize, generators: Vec<(Tensor<S>, Tensor<S>)>) -> Result<Self> {
        Self::build(n, degree, generators, Vec::new())
    }

    /// The presentation generated by the bend relations of `sources`.
    pub fn from_sources(n: usize, degree: usize, sources: Vec<Tensor<S>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let sources: Vec<Tensor<S>> = sources
            .into_iter()
            .filter(|e| !e.is_zero() && seen.insert(e.clone()))
            .collect();
        let generators = sources.iter().flat_map(bend_pairs).collect();
        Self::build(n, degree, generators, sources)
    }

    fn build(
        n: usize,
        degree: usize,
        generators: Vec<(Tensor<S>, Tensor<S>)>,
        sources: Vec<Tensor<S>>,
    ) -> Result<Self> {
        if degree > n {
            return Err(Error::DegreeOutOfRange { degree, n });
        }
        for t in generators.iter().flat_map(|(l, r)| [l, r]).chain(&sources) {
            if t.n() != n || t.degree() != degree {
                return Err(Error::DimensionMismatch {
                    expected: binomial(n, degree),
                    found: binomial(t.n(), t.degree()),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let generators = generators
            .into_iter()
            .filter(|(l, r)| l != r && seen.insert((l.clone(), r.clone())))
            .collect();
        Ok(Presentation {
            n,
            degree,
            generators,
            sources,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `N = C(n, k)`.
    pub fn rank(&self) -> usize {
        binomial(self.n, self.degree)
    }

    /// Basis labels `I ∈ C([n], k)` in lexicographic order.
    pub fn labels(&self) -> Vec<Subset> {
        combinations(self.n, self.degree).collect()
    }

    pub fn semifield(&self) -> SemifieldKind {
        S::KIND
    }

    pub fn generators(&self) -> &[(Tensor<S>, Tensor<S>)] {
        &self.generators
    }

    /// Bend sources, empty for hand-built presentations.
    pub fn sources(&self) -> &[Tensor<S>] {
        &self.sources
    }

    /// Whether `f : x_K ↦ f_K` takes equal values on both sides of every pair.
    pub fn respects(&self, f: &Tensor<S>) -> bool {
        self.first_violated(f).is_none()
    }

    fn first_violated(&self, f: &Tensor<S>) -> Option<usize> {
        self.generators
            .iter()
            .position(|(l, r)| evaluate(f, l) != evaluate(f, r))
    }

    fn check_element(&self, u: &Tensor<S>) -> Result<()> {
        if u.n() != self.n || u.degree() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: binomial(u.n(), u.degree()),
            });
        }
        Ok(())
    }
}

/// `Σ_K f_K u_K`.
pub fn evaluate<S: Semifield>(f: &Tensor<S>, u: &Tensor<S>) -> S {
    u.iter()
        .fold(S::zero(), |acc, (k, x)| acc.add(&f.value(*k).mul(x)))
}

/// `Q_w`: the bend relations of the circuit forms `α_J`.
pub fn qw_presentation<S: Semifield>(w: &Tensor<S>) -> Result<Presentation<S>> {
    let sources = plucker::circuits(w)?
        .into_values()
        .map(|f| Tensor::from_vector(&f.transpose()))
        .collect();
    Presentation::from_sources(w.n(), 1, sources)
}

/// `∧^k` of a degree-1 presentation: every pair wedged with every `x_I`,
/// `|I| = k-1`.
pub fn wedge_presentation<S: Semifield>(p: &Presentation<S>, k: usize) -> Result<Presentation<S>> {
    let n = p.n();
    if p.degree() != 1 {
        return Err(Error::Precondition("wedge_presentation needs a degree-1 presentation"));
    }
    if k == 0 || k > n {
        return Err(Error::DegreeOutOfRange { degree: k, n });
    }
    let mut generators = Vec::new();
    let mut sources = Vec::new();
    for i in combinations(n, k - 1) {
        let xi = Tensor::basis(n, i)?;
        for (l, r) in p.generators() {
            generators.push((wedge(l, &xi)?, wedge(r, &xi)?));
        }
        for e in p.sources() {
            sources.push(wedge(e, &xi)?);
        }
    }
    let mut q = Presentation::build(n, k, generators, Vec::new())?;
    let mut seen = BTreeSet::new();
    q.sources = sources
        .into_iter()
        .filter(|e| !e.is_zero() && seen.insert(e.clone()))
        .collect();
    Ok(q)
}

/// `∧^d Q_w` directly: the bend relations of
/// `E_{A,B} = Σ_{i ∈ A∖B} w_{A-i} x_{B+i}` over `A ∈ C([n], d+1)`,
/// `B ∈ C([n], d-1)`.
pub fn top_wedge_presentation<S: Semifield>(w: &Tensor<S>) -> Result<Presentation<S>> {
    let (n, d) = (w.n(), w.degree());
    if w.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if d == 0 || d > n {
        return Err(Error::DegreeOutOfRange { degree: d, n });
    }
    let mut sources = Vec::new();
    for a in combinations(n, d + 1) {
        for b in combinations(n, d - 1) {
            let terms = a
                .difference(b)
                .iter()
                .map(|i| (b.with(i), w.value(a.without(i))));
            sources.push(Tensor::from_entries(n, d, terms)?);
        }
    }
    Presentation::from_sources(n, d, sources)
}

/// One application of a generating pair: `from = s·l ⊕ z ↦ to = s·r ⊕ z`,
/// or the mirror image when `reversed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep<S> {
    pub generator: usize,
    pub reversed: bool,
    pub from: Tensor<S>,
    pub to: Tensor<S>,
}

impl<S: Clone> RewriteStep<S> {
    fn flipped(&self) -> Self {
        RewriteStep {
            generator: self.generator,
            reversed: !self.reversed,
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }
}

/// Evidence that two elements are not identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation<S> {
    /// `x_K ↦ f_K` respects every pair and differs on the two elements.
    Functional(Tensor<S>),
    /// `x ↦ [supp(x) ∩ T ≠ ∅]` respects every pair and differs on the two
    /// elements. `T` is listed.
    Support(Vec<Subset>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict<S> {
    Equal { chain: Vec<RewriteStep<S>> },
    Distinct { witness: Separation<S> },
    /// The search budget ran out without a chain or a separation.
    Unknown { explored: usize },
}

impl<S> EquivalenceVerdict<S> {
    pub fn is_equal(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EquivalenceVerdict::Distinct { .. })
    }
}

/// Semifields for which the quotient machinery is implemented.
pub trait Quotient: Semifield {
    fn decide(
        p: &Presentation<Self>,
        u: &Tensor<Self>,
        v: &Tensor<Self>,
        budget: usize,
    ) -> Result<EquivalenceVerdict<Self>>;

    fn free_rank_one(w: &Tensor<Self>, budget: usize) -> Result<FreenessVerdict<Self>>;
}

/// Whether `u ∼ v` in the quotient presented by `p`.
pub fn equivalent<S: Quotient>(
    p: &Presentation<S>,
    u: &Tensor<S>,
    v: &Tensor<S>,
    budget: usize,
) -> Result<EquivalenceVerdict<S>> {
    p.check_element(u)?;
    p.check_element(v)?;
    if u == v {
        return Ok(EquivalenceVerdict::Equal { chain: Vec::new() });
    }
    S::decide(p, u, v, budget)
}

/// Whether `∧^d Q_w` is free of rank one.
pub fn is_free_rank_one<S: Quotient>(w: &Tensor<S>, budget: usize) -> Result<FreenessVerdict<S>> {
    S::free_rank_one(w, budget)
}

// ---------------------------------------------------------------------------
// 𝔹: Horn closure.

struct BoolEngine {
    n: usize,
    degree: usize,
    labels: Vec<Subset>,
    generators: Vec<(BitSet, BitSet)>,
}

struct Closure {
    top: BitSet,
    steps: Vec<(usize, bool, BitSet, BitSet)>,
}

impl BoolEngine {
    fn new<S: Semifield>(p: &Presentation<S>) -> Self {
        let labels = p.labels();
        let mut engine = BoolEngine {
            n: p.n(),
            degree: p.degree(),
            labels,
            generators: Vec::new(),
        };
        engine.generators = p
            .generators()
            .iter()
            .map(|(l, r)| (engine.set_of(l), engine.set_of(r)))
            .collect();
        engine
    }

    fn set_of<S: Semifield>(&self, t: &Tensor<S>) -> BitSet {
        let mut s = BitSet::new(self.labels.len());
        for k in t.support() {
            let i = self.labels.binary_search(&k).expect("label in range");
            s.insert(i);
        }
        s
    }

    fn tensor_of(&self, s: &BitSet) -> Tensor<Boolean> {
        Tensor::indicator(self.n, self.degree, s.iter().map(|i| self.labels[i]))
            .expect("labels have the right degree")
    }

    /// Largest element of the class of `start`.
    fn closure(&self, start: &BitSet, budget: usize, record: bool) -> Result<Closure> {
        let mut top = start.clone();
        let mut steps = Vec::new();
        let mut applied = 0usize;
        loop {
            let mut changed = false;
            for (g, (l, r)) in self.generators.iter().enumerate() {
                for (reversed, from, to) in [(false, l, r), (true, r, l)] {
                    if from.is_subset(&top) && !to.is_subset(&top) {
                        applied += 1;
                        if applied > budget {
                            return Err(Error::ResourceCap {
                                what: "congruence states",
                                cap: budget,
                            });
                        }
                        let before = top.clone();
                        top.union_with(to);
                        if record {
                            steps.push((g, reversed, before, top.clone()));
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(Closure { top, steps });
            }
        }
    }

    fn chain(&self, steps: &[(usize, bool, BitSet, BitSet)]) -> Vec<RewriteStep<Boolean>> {
        steps
            .iter()
            .map(|(g, reversed, before, after)| RewriteStep {
                generator: *g,
                reversed: *reversed,
                from: self.tensor_of(before),
                to: self.tensor_of(after),
            })
            .collect()
    }

    fn decide(&self, u: &BitSet, v: &BitSet, budget: usize, record: bool) -> Result<BoolDecision> {
        let cu = self.closure(u, budget, record)?;
        let cv = self.closure(v, budget, record)?;
        if cu.top == cv.top {
            return Ok(BoolDecision::Equal(cu.steps, cv.steps));
        }
        // Distinct tops: one side is not contained in the other's closure.
        let outside = if !v.is_subset(&cu.top) { &cu.top } else { &cv.top };
        let t: Vec<Subset> = (0..self.labels.len())
            .filter(|&i| !outside.contains(i))
            .map(|i| self.labels[i])
            .collect();
        Ok(BoolDecision::Distinct(t))
    }
}

enum BoolDecision {
    Equal(Vec<(usize, bool, BitSet, BitSet)>, Vec<(usize, bool, BitSet, BitSet)>),
    Distinct(Vec<Subset>),
}

impl Quotient for Boolean {
    fn decide(
        p: &Presentation<Boolean>,
        u: &Tensor<Boolean>,
        v: &Tensor<Boolean>,
        budget: usize,
    ) -> Result<EquivalenceVerdict<Boolean>> {
        let engine = BoolEngine::new(p);
        let (su, sv) = (engine.set_of(u), engine.set_of(v));
        Ok(match engine.decide(&su, &sv, budget, true)? {
            BoolDecision::Equal(up, down) => {
                let mut chain = engine.chain(&up);
                chain.extend(engine.chain(&down).iter().rev().map(RewriteStep::flipped));
                EquivalenceVerdict::Equal { chain }
            }
            BoolDecision::Distinct(t) => {
                let f = Tensor::indicator(p.n(), p.degree(), t)?;
                debug_assert!(p.respects(&f));
                EquivalenceVerdict::Distinct {
                    witness: Separation::Functional(f),
                }
            }
        })
    }

    fn free_rank_one(w: &Tensor<Boolean>, budget: usize) -> Result<FreenessVerdict<Boolean>> {
        let p = top_wedge_presentation(w)?;
        let saturation = saturate(&p, budget)?;
        Ok(FreenessVerdict {
            free: saturation.is_free_rank_one(),
            evidence: Evidence::Saturation(saturation),
        })
    }
}

/// Classes of `0` and of every basis element in a 𝔹 quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub n: usize,
    pub degree: usize,
    /// Labels with `x_K ∼ 0`.
    pub vanishing: Vec<Subset>,
    /// The remaining labels grouped by class, ordered by least member.
    pub classes: Vec<Vec<Subset>>,
}

impl Saturation {
    /// Distinct classes among `0` and the `x_K`.
    pub fn class_count(&self) -> usize {
        1 + self.classes.len()
    }

    /// The quotient is `{0, g}` iff exactly one nonzero class occurs: it is
    /// generated under `+` by the basis classes, and `g + g = g`.
    pub fn is_free_rank_one(&self) -> bool {
        self.classes.len() == 1
    }

    /// `x_K ↦ 1` on the nonzero class, when there is exactly one.
    pub fn functional<S: Semifield>(&self) -> Option<Tensor<S>> {
        match self.classes.as_slice() {
            [g] => Some(
                Tensor::from_entries(self.n, self.degree, g.iter().map(|&k| (k, S::one())))
                    .expect("labels have the right degree"),
            ),
            _ => None,
        }
    }
}

/// Classes of `0` and every `x_K` under a 𝔹 presentation.
pub fn saturate(p: &Presentation<Boolean>, budget: usize) -> Result<Saturation> {
    let engine = BoolEngine::new(p);
    let size = engine.labels.len();
    let zero_top = engine.closure(&BitSet::new(size), budget, false)?.top;
    let mut vanishing = Vec::new();
    let mut by_top: BTreeMap<BitSet, Vec<Subset>> = BTreeMap::new();
    for (i, &k) in engine.labels.iter().enumerate() {
        if zero_top.contains(i) {
            vanishing.push(k);
            continue;
        }
        let mut start = BitSet::new(size);
        start.insert(i);
        let top = engine.closure(&start, budget, false)?.top;
        by_top.entry(top).or_default().push(k);
    }
    let mut classes: Vec<Vec<Subset>> = by_top.into_values().collect();
    classes.sort();
    Ok(Saturation {
        n: p.n(),
        degree: p.degree(),
        vanishing,
        classes,
    })
}

// ---------------------------------------------------------------------------
// 𝕋(ℚ): bounded chain search plus separating functionals.

impl Quotient for Tropical {
    fn decide(
        p: &Presentation<Tropical>,
        u: &Tensor<Tropical>,
        v: &Tensor<Tropical>,
        budget: usize,
    ) -> Result<EquivalenceVerdict<Tropical>> {
        if let Some(witness) = separate(p, u, v, budget)? {
            return Ok(EquivalenceVerdict::Distinct { witness });
        }
        Ok(chain_search(p, u, v, budget))
    }

    fn free_rank_one(w: &Tensor<Tropical>, _budget: usize) -> Result<FreenessVerdict<Tropical>> {
        certified_free_rank_one(w)
    }
}

fn separate<S: Semifield>(
    p: &Presentation<S>,
    u: &Tensor<S>,
    v: &Tensor<S>,
    budget: usize,
) -> Result<Option<Separation<S>>> {
    // The support map S → 𝔹 is a homomorphism, so a 𝔹 separation of the
    // shadows separates the originals.
    let shadow = |t: &Tensor<S>| t.map(|x| Boolean(!x.is_zero()));
    let shadow_p = Presentation::new(
        p.n(),
        p.degree(),
        p.generators().iter().map(|(l, r)| (shadow(l), shadow(r))).collect(),
    )?;
    let engine = BoolEngine::new(&shadow_p);
    let (su, sv) = (engine.set_of(&shadow(u)), engine.set_of(&shadow(v)));
    if let BoolDecision::Distinct(t) = engine.decide(&su, &sv, budget, false)? {
        return Ok(Some(Separation::Support(t)));
    }
    if !p.sources().is_empty() {
        if let Ok(cert) = FreenessCertificate::from_presentation(p) {
            let f = cert.functional();
            if evaluate(&f, u) != evaluate(&f, v) {
                return Ok(Some(Separation::Functional(f)));
            }
        }
    }
    Ok(None)
}

/// Successors of `x` under `s·from ⊕ z ↦ s·to ⊕ z` with the largest
/// admissible `s`, for `z = x` and for the smallest admissible `z`.
fn rewrite_successors<S: Semifield>(x: &Tensor<S>, from: &Tensor<S>, to: &Tensor<S>) -> Vec<Tensor<S>> {
    if from.is_zero() {
        return Vec::new();
    }
    let mut scale: Option<S> = None;
    for (k, c) in from.iter() {
        let Some(xk) = x.get(*k) else {
            return Vec::new();
        };
        let q = xk.div(c).expect("nonzero coefficient");
        scale = Some(match scale {
            Some(s) if s.natural_le(&q) => s,
            _ => q,
        });
    }
    let s = scale.expect("nonempty support");
    let image = to.scale(&s);
    let grown = x.add(&image).expect("same shape");
    let mut rest = x.clone();
    for (k, c) in from.iter() {
        if x.value(*k) == c.mul(&s) {
            rest.remove(*k);
        }
    }
    let swapped = rest.add(&image).expect("same shape");
    let mut out = alloc::vec![grown];
    if swapped != out[0] {
        out.push(swapped);
    }
    out
}

fn chain_search<S: Semifield>(
    p: &Presentation<S>,
    u: &Tensor<S>,
    v: &Tensor<S>,
    budget: usize,
) -> EquivalenceVerdict<S> {
    // Breadth-first from both ends; each side maps a state to the step that
    // reached it.
    let mut parents: [BTreeMap<Tensor<S>, Option<RewriteStep<S>>>; 2] =
        [BTreeMap::new(), BTreeMap::new()];
    let mut queues = [VecDeque::new(), VecDeque::new()];
    for (side, start) in [u, v].into_iter().enumerate() {
        parents[side].insert(start.clone(), None);
        queues[side].push_back(start.clone());
    }
    let mut explored = 2usize;
    let trace = |map: &BTreeMap<Tensor<S>, Option<RewriteStep<S>>>, end: &Tensor<S>| {
        let mut steps = Vec::new();
        let mut cur = end.clone();
        while let Some(Some(step)) = map.get(&cur) {
            steps.push(step.clone());
            cur = step.from.clone();
        }
        steps.reverse();
        steps
    };
    while !(queues[0].is_empty() && queues[1].is_empty()) {
        for side in 0..2 {
            let Some(x) = queues[side].pop_front() else {
                continue;
            };
            for (g, (l, r)) in p.generators().iter().enumerate() {
                for (reversed, from, to) in [(false, l, r), (true, r, l)] {
                    for y in rewrite_successors(&x, from, to) {
                        if parents[side].contains_key(&y) {
                            continue;
                        }
                        let step = RewriteStep {
                            generator: g,
                            reversed,
                            from: x.clone(),
                            to: y.clone(),
                        };
                        parents[side].insert(y.clone(), Some(step));
                        if parents[1 - side].contains_key(&y) {
                            let mut chain = trace(&parents[0], &y);
                            chain.extend(trace(&parents[1], &y).iter().rev().map(RewriteStep::flipped));
                            return EquivalenceVerdict::Equal { chain };
                        }
                        explored += 1;
                        if explored >= budget {
                            return EquivalenceVerdict::Unknown { explored };
                        }
                        queues[side].push_back(y);
                    }
                }
            }
        }
    }
    EquivalenceVerdict::Unknown { explored }
}

// ---------------------------------------------------------------------------
// Freeness certificates.

/// `x_index ∼ 0` because every other term of the source already vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishingStep {
    pub index: Subset,
    pub source: usize,
}

/// A two-term source `a·x_from + b·x_to` (modulo vanished terms), forcing
/// `a·λ_from = b·λ_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeEdge<S> {
    pub from: Subset,
    pub to: Subset,
    pub source: usize,
    pub from_coeff: S,
    pub to_coeff: S,
}

/// Proof that a bend-generated quotient is free of rank one: every `x_K`
/// is `0` or a multiple of `x_pivot`, and `x_K ↦ λ_K` respects the
/// relations with `λ_pivot = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCertificate<S> {
    pub pivot: Subset,
    pub lambda: BTreeMap<Subset, S>,
    pub vanishing: Vec<VanishingStep>,
    /// Spanning tree of the support, in discovery order.
    pub edges: Vec<ExchangeEdge<S>>,
    pub generators_checked: usize,
    n: usize,
    degree: usize,
}

/// The stage at which certificate construction stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    /// The presentation was not built from bend sources.
    NoSources,
    /// Every basis element vanishes.
    Vanishing,
    Connectivity { pivot: Subset, unreached: Subset },
    Consistency { from: Subset, to: Subset, source: usize },
    Functional { generator: usize },
}

impl CertificateFailure {
    pub fn stage(&self) -> &'static str {
        match self {
            CertificateFailure::NoSources => "sources",
            CertificateFailure::Vanishing => "vanishing",
            CertificateFailure::Connectivity { .. } => "connectivity",
            CertificateFailure::Consistency { .. } => "consistency",
            CertificateFailure::Functional { .. } => "functional",
        }
    }
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateFailure::NoSources => write!(f, "sources: presentation has no bend sources"),
            CertificateFailure::Vanishing => write!(f, "vanishing: every basis element is zero"),
            CertificateFailure::Connectivity { pivot, unreached } => write!(
                f,
                "connectivity: {} not linked to {}",
                unreached.label('x'),
                pivot.label('x')
            ),
            CertificateFailure::Consistency { from, to, source } => write!(
                f,
                "consistency: source {source} disagrees on {} and {}",
                from.label('x'),
                to.label('x')
            ),
            CertificateFailure::Functional { generator } => {
                write!(f, "functional: generator {generator} is not respected")
            }
        }
    }
}

impl<S: Semifield> FreenessCertificate<S> {
    /// Builds a certificate from the bend sources of `p`.
    pub fn from_presentation(p: &Presentation<S>) -> core::result::Result<Self, CertificateFailure> {
        let sources = p.sources();
        if sources.is_empty() && !p.generators().is_empty() {
            return Err(CertificateFailure::NoSources);
        }

        let mut zero: BTreeSet<Subset> = BTreeSet::new();
        let mut vanishing = Vec::new();
        loop {
            let mut changed = false;
            for (s, e) in sources.iter().enumerate() {
                let mut live = e.support().filter(|k| !zero.contains(k));
                if let (Some(k), None) = (live.next(), live.next()) {
                    zero.insert(k);
                    vanishing.push(VanishingStep { index: k, source: s });
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let pivot = combinations(p.n(), p.degree())
            .find(|k| !zero.contains(k))
            .ok_or(CertificateFailure::Vanishing)?;

        let mut adjacency: BTreeMap<Subset, Vec<(Subset, usize, S, S)>> = BTreeMap::new();
        let mut all_edges = Vec::new();
        for (s, e) in sources.iter().enumerate() {
            let live: Vec<(&Subset, &S)> = e.iter().filter(|(k, _)| !zero.contains(k)).collect();
            if let [(i, a), (j, b)] = live.as_slice() {
                adjacency.entry(**i).or_default().push((**j, s, (*a).clone(), (*b).clone()));
                adjacency.entry(**j).or_default().push((**i, s, (*b).clone(), (*a).clone()));
                all_edges.push((**i, **j, s, (*a).clone(), (*b).clone()));
            }
        }

        let mut lambda = BTreeMap::new();
        lambda.insert(pivot, S::one());
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([pivot]);
        while let Some(i) = queue.pop_front() {
            let li = lambda[&i].clone();
            for (j, s, a, b) in adjacency.get(&i).into_iter().flatten() {
                if lambda.contains_key(j) {
                    continue;
                }
                // a·λ_i = b·λ_j
                let lj = a.mul(&li).div(b).expect("nonzero coefficient");
                lambda.insert(*j, lj);
                edges.push(ExchangeEdge {
                    from: i,
                    to: *j,
                    source: *s,
                    from_coeff: a.clone(),
                    to_coeff: b.clone(),
                });
                queue.push_back(*j);
            }
        }
        if let Some(unreached) = combinations(p.n(), p.degree())
            .find(|k| !zero.contains(k) && !lambda.contains_key(k))
        {
            return Err(CertificateFailure::Connectivity { pivot, unreached });
        }
        for (i, j, s, a, b) in &all_edges {
            if a.mul(&lambda[i]) != b.mul(&lambda[j]) {
                return Err(CertificateFailure::Consistency {
                    from: *i,
                    to: *j,
                    source: *s,
                });
            }
        }

        let cert = FreenessCertificate {
            pivot,
            lambda,
            vanishing,
            edges,
            generators_checked: p.generators().len(),
            n: p.n(),
            degree: p.degree(),
        };
        if let Some(generator) = p.first_violated(&cert.functional()) {
            return Err(CertificateFailure::Functional { generator });
        }
        Ok(cert)
    }

    /// `λ` as a tensor in the dual basis.
    pub fn functional(&self) -> Tensor<S> {
        Tensor::from_entries(
            self.n,
            self.degree,
            self.lambda.iter().map(|(k, x)| (*k, x.clone())),
        )
        .expect("labels have the right degree")
    }
}

/// Outcome of a free-rank-one decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict<S> {
    pub free: bool,
    pub evidence: Evidence<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence<S> {
    Saturation(Saturation),
    Certificate(FreenessCertificate<S>),
    Failure(CertificateFailure),
}

impl<S: Semifield> FreenessVerdict<S> {
    /// The identification `∧^d Q_w → S` normalized to one on its least
    /// supported label, when free.
    pub fn functional(&self) -> Option<Tensor<S>> {
        if !self.free {
            return None;
        }
        match &self.evidence {
            Evidence::Saturation(s) => s.functional(),
            Evidence::Certificate(c) => Some(c.functional()),
            Evidence::Failure(_) => None,
        }
    }
}

/// The certificate route, for any semifield. Reports an internal
/// inconsistency if the outcome disagrees with the Plücker predicate in a
/// way the theory rules out.
pub fn certified_free_rank_one<S: Semifield>(w: &Tensor<S>) -> Result<FreenessVerdict<S>> {
    let p = top_wedge_presentation(w)?;
    match FreenessCertificate::from_presentation(&p) {
        Ok(cert) => {
            let support: Vec<Subset> = w.support().collect();
            let lambda_support: Vec<Subset> = cert.lambda.keys().copied().collect();
            if support != lambda_support {
                return Err(Error::Inconsistency(format!(
                    "certificate support {lambda_support:?} differs from supp(w) {support:?}"
                )));
            }
            Ok(FreenessVerdict {
                free: true,
                evidence: Evidence::Certificate(cert),
            })
        }
        Err(failure) => {
            if plucker::is_plucker(w)?.is_plucker {
                return Err(Error::Inconsistency(format!(
                    "certificate failed for a Plücker vector: {failure}"
                )));
            }
            Ok(FreenessVerdict {
                free: false,
                evidence: Evidence::Failure(failure),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Pairing with the top wedge.

fn pair_with_top<S: Semifield>(lambda: &Tensor<S>, u: &Tensor<S>, degree: usize) -> Result<Tensor<S>> {
    let n = lambda.n();
    let mut entries = Vec::new();
    for i in combinations(n, degree) {
        let value = evaluate(lambda, &wedge(u, &Tensor::basis(n, i)?)?);
        entries.push((i, value));
    }
    Tensor::from_entries(n, degree, entries)
}

/// `x_I ↦ ⟨λ, u ∧ x_I⟩` on `∧^{d-k} Q_w`, read as an element of
/// `∧^{d-k} V`.
pub fn pairing_image<S: Quotient>(w: &Tensor<S>, u: &Tensor<S>, budget: usize) -> Result<Tensor<S>> {
    let (d, k) = (w.degree(), u.degree());
    if u.n() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            found: u.n(),
        });
    }
    if k == 0 || k >= d {
        return Err(Error::Precondition("pairing needs 1 <= k <= d-1"));
    }
    let lambda = is_free_rank_one(w, budget)?
        .functional()
        .ok_or(Error::Precondition("the top wedge of Q_w is not free of rank one"))?;
    pair_with_top(&lambda, u, d - k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub checked: usize,
    pub matches: usize,
    pub mismatches: Vec<Subset>,
}

impl SurjectivityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the images of the `x_I`, `I ∈ C([n], d-1)`, in `Q_w^∨` with the
/// cocircuits `β_I`, after rescaling by `w` at the pivot.
pub fn surjectivity_check<S: Quotient>(w: &Tensor<S>, budget: usize) -> Result<SurjectivityReport> {
    if !plucker::is_plucker(w)?.is_plucker {
        return Err(Error::NotPlucker);
    }
    let lambda = is_free_rank_one(w, budget)?
        .functional()
        .ok_or_else(|| Error::Inconsistency("Plücker vector with a non-free top wedge".into()))?;
    let pivot = lambda.support().next().expect("nonzero functional");
    let scale = w.value(pivot);
    let mut report = SurjectivityReport {
        checked: 0,
        matches: 0,
        mismatches: Vec::new(),
    };
    for (i, beta) in plucker::cocircuits(w)? {
        let image = pair_with_top(&lambda, &Tensor::basis(w.n(), i)?, 1)?.scale(&scale);
        report.checked += 1;
        if image.to_vector()? == beta {
            report.matches += 1;
        } else {
            report.mismatches.push(i);
        }
    }
    Ok(report)
}
