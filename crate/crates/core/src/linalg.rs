//! Exact linear algebra over ℚ for span and membership questions, plus the
//! two generation checks built on it: one-sided generation of the kernel by
//! differentiators at bounded order, and the degree-zero generator lemma.
//!
//! Vectors are sparse maps from an ordered coordinate type (PBW monomials,
//! target monomials, …) to rationals. `SpanBasis` maintains a reduced
//! row-echelon basis incrementally and, for every membership verdict, emits
//! the combination over the originally inserted generators so the caller
//! can recombine and confirm the certificate.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::differentiator::{omega, DifferentiatorKey};
use crate::morphism::psi;
use crate::report::{CaseFailure, CheckOutcome};
use crate::sample::Sampler;
use crate::scalar::Rational;
use crate::target::TargetContext;
use crate::witt::{WittElement, WittMonomial};

pub type Vector<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(dst: &mut Vector<K>, c: &Rational, src: &Vector<K>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let entry = dst.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += &(c * v);
    }
    dst.retain(|_, v| !v.is_zero());
}

#[derive(Clone, Debug)]
struct Row<K: Ord + Clone> {
    pivot: K,
    coords: Vector<K>,
    /// Expression of this row over the original generators.
    combo: BTreeMap<usize, Rational>,
}

/// A span of vectors held in reduced row-echelon form with exact pivots.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    originals: Vec<Vector<K>>,
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        SpanBasis { rows: Vec::new(), originals: Vec::new() }
    }

    /// Gaussian elimination of all `vectors`, in order.
    pub fn rref(vectors: &[Vector<K>]) -> Self {
        let mut basis = Self::new();
        for v in vectors {
            basis.insert(v.clone());
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.originals.len()
    }

    /// The reduced rows, sorted by pivot coordinate.
    pub fn rows(&self) -> impl Iterator<Item = &Vector<K>> {
        self.rows.iter().map(|r| &r.coords)
    }

    /// Registers `v` as the next generator and grows the basis if it is
    /// independent. Returns whether the rank increased.
    pub fn insert(&mut self, v: Vector<K>) -> bool {
        let index = self.originals.len();
        self.originals.push(v.clone());
        let (mut residue, reduction) = self.reduce(v);
        if residue.is_empty() {
            return false;
        }
        // normalize: pivot is the smallest coordinate, scaled to 1
        let pivot = residue.keys().next().expect("nonempty").clone();
        let lead = residue[&pivot].clone();
        let inv = lead.inv().expect("pivot is nonzero");
        for c in residue.values_mut() {
            *c *= &inv;
        }
        // combo of the new row: (δ_index - Σ c_r · combo_r) / lead
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        combo.insert(index, inv.clone());
        for (r, c) in &reduction {
            let scaled = -&(c * &inv);
            for (g, w) in &self.rows[*r].combo {
                let entry = combo.entry(*g).or_insert_with(Rational::zero);
                *entry += &(&scaled * w);
            }
        }
        combo.retain(|_, c| !c.is_zero());

        // keep full reduction: clear the new pivot column everywhere above
        for row in &mut self.rows {
            if let Some(c) = row.coords.get(&pivot).cloned() {
                let neg = -&c;
                axpy(&mut row.coords, &neg, &residue);
                for (g, w) in &combo {
                    let entry = row.combo.entry(*g).or_insert_with(Rational::zero);
                    *entry += &(&neg * w);
                }
                row.combo.retain(|_, c| !c.is_zero());
            }
        }

        let pos = self
            .rows
            .partition_point(|r| r.pivot < pivot);
        self.rows.insert(pos, Row { pivot, coords: residue, combo });
        true
    }

    /// Reduces `v` against the basis. Returns the residue and the row
    /// coefficients used.
    fn reduce(&self, mut v: Vector<K>) -> (Vector<K>, Vec<(usize, Rational)>) {
        let mut used = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = v.get(&row.pivot).cloned() {
                let neg = -&c;
                axpy(&mut v, &neg, &row.coords);
                used.push((r, c));
            }
        }
        (v, used)
    }

    /// Membership test: `Some(combination)` over the original generators
    /// iff `v` reduces to zero against the basis.
    pub fn member(&self, v: &Vector<K>) -> Option<BTreeMap<usize, Rational>> {
        let (residue, used) = self.reduce(v.clone());
        if !residue.is_empty() {
            return None;
        }
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        for (r, c) in used {
            for (g, w) in &self.rows[r].combo {
                let entry = combo.entry(*g).or_insert_with(Rational::zero);
                *entry += &(&c * w);
            }
        }
        combo.retain(|_, c| !c.is_zero());
        Some(combo)
    }

    /// Recombines a membership certificate and checks that it reproduces
    /// `v` exactly.
    pub fn certify(&self, v: &Vector<K>, combo: &BTreeMap<usize, Rational>) -> bool {
        let mut acc: Vector<K> = BTreeMap::new();
        for (g, c) in combo {
            match self.originals.get(*g) {
                Some(orig) => axpy(&mut acc, c, orig),
                None => return false,
            }
        }
        acc == *v
    }
}

/// Report data for the generation checks.
#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub outcome: CheckOutcome,
    pub span_generators: usize,
    pub rank: usize,
}

/// One-sided generation of ker Ψ_n by differentiators, at a truncation.
///
/// Builds the left span {x · Ω^m_{k,s}} for m ∈ {2n+1, 2n+2}, x a PBW
/// monomial of order ≤ order_bound with letter indices ≤ index_bound, and
/// keys k, s ≤ index_bound. Verifies that
///   (i) every spanning vector maps to zero under Ψ_n, and
///  (ii) seeded two-sided products x·Ω^{2n+2}_{2n+1,-1}·y reduce into the
///       span, with the emitted combination certified by recombination.
///
/// The sampled right factors y use letters in {-1, 0, 1, 2} whose positive
/// indices sum to at most index_bound - (2n+1), and order(x) + order(y) ≤
/// order_bound; products outside that window can require differentiator
/// keys beyond the truncation, and a miss at a bound is evidence about the
/// bound, not the theorem.
pub fn one_sided_generation_check(
    n: u32,
    order_bound: u32,
    index_bound: i64,
    seed: u64,
    samples: usize,
) -> GenerationReport {
    let mut outcome = CheckOutcome::default();
    let ctx = TargetContext::N(n);
    let n_i = n as i64;

    // span generator keys: both m values, all in-domain (k, s) up to the
    // index bound, skipping identically-zero instances
    let mut keys: Vec<DifferentiatorKey> = Vec::new();
    for m in [2 * n + 1, 2 * n + 2] {
        for k in (m as i64 - 1)..=index_bound {
            for s in -1..=index_bound {
                if let Ok(key) = DifferentiatorKey::new(m, k, s) {
                    if !key.is_zero_diagonal() {
                        keys.push(key);
                    }
                }
            }
        }
    }

    // left factors: PBW monomials of order ≤ order_bound over e_{-1}..e_{index_bound}
    let letters: Vec<i64> = (-1..=index_bound).collect();
    let mut left_monomials: Vec<WittMonomial> = vec![WittMonomial::one()];
    for len in 1..=order_bound {
        for combo in letters.iter().copied().combinations_with_replacement(len as usize) {
            left_monomials.push(WittMonomial::from_word(&combo).expect("indices >= -1"));
        }
    }

    let generators: Vec<(String, WittElement)> = left_monomials
        .iter()
        .cartesian_product(keys.iter())
        .map(|(x, key)| {
            let product = &WittElement::monomial(x.clone()) * &omega(key);
            (format!("{x} * {key}"), product)
        })
        .collect();

    // (i) every spanning vector lies in ker Ψ_n
    let kernel_failures: Vec<(String, String)> = generators
        .par_iter()
        .filter_map(|(label, g)| {
            let image = psi(ctx, g).expect("psi is total on U(W)");
            if image.is_zero() {
                None
            } else {
                Some((label.clone(), image.to_string()))
            }
        })
        .collect();
    outcome.cases += generators.len();
    for (label, image) in kernel_failures {
        outcome.failures.push(CaseFailure {
            case: format!("Psi_{n}({label}) = 0"),
            lhs: image,
            rhs: "0".to_string(),
        });
    }

    let mut basis: SpanBasis<WittMonomial> = SpanBasis::new();
    for (_, g) in &generators {
        basis.insert(g.coordinates());
    }

    // (ii) sampled two-sided products reduce into the left span
    let mut sampler = Sampler::derive(seed, &format!("one-sided n={n}"));
    let kernel_generator = omega(
        &DifferentiatorKey::new(2 * n + 2, 2 * n_i + 1, -1).expect("in domain"),
    );
    let index_budget = (index_bound - (2 * n_i + 1)).max(0);
    for case in 0..samples {
        let x_order = sampler.int_range(0, order_bound as i64) as u32;
        let y_order = order_bound - x_order;
        let x = sampler.witt_monomial(x_order, index_bound);
        let y = sampler.witt_monomial_with_budget(y_order, 2, index_budget);
        let product = &(&WittElement::monomial(x.clone()) * &kernel_generator)
            * &WittElement::monomial(y.clone());
        let label = format!(
            "sample {case}: {x} * Omega^{}_({},-1) * {y} in left span",
            2 * n + 2,
            2 * n_i + 1
        );
        match basis.member(&product.coordinates()) {
            Some(combo) => {
                let certified = basis.certify(&product.coordinates(), &combo);
                outcome.record(
                    label,
                    "member with certificate".to_string(),
                    "certificate recombines".to_string(),
                    certified,
                );
            }
            None => {
                outcome.record(
                    label,
                    format!("not found at bounds ({order_bound}, {index_bound})"),
                    "member of left span".to_string(),
                    false,
                );
            }
        }
    }

    outcome.notes.push(format!(
        "left span: {} generators of rank {} at order_bound {}, index_bound {}",
        generators.len(),
        basis.rank(),
        order_bound,
        index_bound
    ));

    GenerationReport {
        span_generators: generators.len(),
        rank: basis.rank(),
        outcome,
    }
}

/// The degree-zero generator lemma at a truncation: every e_{-1}^k e_k with
/// k ≤ k_max must lie in the span of products of {e_0, e_{-1}e_1,
/// e_{-1}^2 e_2} of total order ≤ order_bound. Records the first product
/// order at which each target appears.
pub fn degree_zero_generation_check(k_max: u32, order_bound: u32) -> GenerationReport {
    let mut outcome = CheckOutcome::default();

    let e = |i: i64| WittElement::generator(i).expect("valid index");
    let generators = [
        (e(0), 1u32),
        (&e(-1) * &e(1), 2u32),
        (&(&e(-1) * &e(-1)) * &e(2), 3u32),
    ];

    let targets: Vec<(u32, WittElement)> = (1..=k_max)
        .map(|k| {
            let mut prod = WittElement::one();
            for _ in 0..k {
                prod = &prod * &e(-1);
            }
            (k, &prod * &e(k))
        })
        .collect();

    // all products are degree-0 by construction; build them by extending
    // shorter words on the right, one weight level at a time
    let mut by_weight: Vec<Vec<WittElement>> = vec![Vec::new(); order_bound as usize + 1];
    by_weight[0].push(WittElement::one());
    let mut basis: SpanBasis<WittMonomial> = SpanBasis::new();
    let mut found_at: BTreeMap<u32, u32> = BTreeMap::new();

    for weight in 1..=order_bound {
        let mut level: Vec<WittElement> = Vec::new();
        for (g, w) in &generators {
            if *w > weight {
                continue;
            }
            for prefix in &by_weight[(weight - w) as usize] {
                level.push(prefix * g);
            }
        }
        for p in &level {
            debug_assert_eq!(
                p.degree().expect("products of the generators are nonzero").homogeneous(),
                Some(0)
            );
            basis.insert(p.coordinates());
        }
        by_weight[weight as usize] = level;

        for (k, target) in &targets {
            if !found_at.contains_key(k) && basis.member(&target.coordinates()).is_some() {
                found_at.insert(*k, weight);
            }
        }
        if found_at.len() == targets.len() {
            outcome.notes.push(format!(
                "all targets found by product order {weight} (bound {order_bound})"
            ));
            break;
        }
    }

    for (k, target) in &targets {
        match found_at.get(k) {
            Some(w) => {
                let combo = basis
                    .member(&target.coordinates())
                    .expect("membership already established");
                let certified = basis.certify(&target.coordinates(), &combo);
                outcome.record(
                    format!("e_(-1)^{k} e_{k} in generated span"),
                    format!("member at product order {w}"),
                    "certificate recombines".to_string(),
                    certified,
                );
                outcome
                    .notes
                    .push(format!("e_(-1)^{k} e_{k}: first expressible at product order {w}"));
            }
            None => {
                outcome.record(
                    format!("e_(-1)^{k} e_{k} in generated span"),
                    format!("not found at order_bound {order_bound}"),
                    "member of generated span".to_string(),
                    false,
                );
            }
        }
    }

    GenerationReport {
        span_generators: basis.num_generators(),
        rank: basis.rank(),
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(pairs: &[(i64, i64)]) -> Vector<i64> {
        pairs
            .iter()
            .map(|&(k, v)| (k, Rational::from_int(v)))
            .collect()
    }

    #[test]
    fn member_basics() {
        let v = vec_of(&[(0, 1), (1, 2)]);
        let basis = SpanBasis::rref(&[v.clone()]);
        assert!(basis.member(&v).is_some());
        assert!(basis.member(&vec_of(&[(0, 1)])).is_none());

        // e_3 is not in span{e_1, e_2}
        let basis = SpanBasis::rref(&[vec_of(&[(1, 1)]), vec_of(&[(2, 1)])]);
        assert!(basis.member(&vec_of(&[(3, 1)])).is_none());
        assert!(basis.member(&vec_of(&[(1, 5), (2, -7)])).is_some());
    }

    #[test]
    fn member_is_monotone_under_enlargement() {
        let mut basis = SpanBasis::rref(&[vec_of(&[(0, 1), (1, 1)])]);
        let x = vec_of(&[(0, 2), (1, 2)]);
        assert!(basis.member(&x).is_some());
        basis.insert(vec_of(&[(1, 3), (2, 1)]));
        basis.insert(vec_of(&[(5, 1)]));
        assert!(basis.member(&x).is_some());
    }

    #[test]
    fn certificates_recombine() {
        let gens = [
            vec_of(&[(0, 1), (1, 1)]),
            vec_of(&[(1, 1), (2, 1)]),
            vec_of(&[(0, 1), (2, -1)]),
        ];
        let basis = SpanBasis::rref(&gens);
        let x = vec_of(&[(0, 3), (1, 1), (2, -2)]);
        if let Some(combo) = basis.member(&x) {
            assert!(basis.certify(&x, &combo));
        } else {
            panic!("expected member");
        }
    }

    #[test]
    fn rref_is_idempotent_and_permutation_stable() {
        let mut sampler = Sampler::derive(7, "rref-test");
        for trial in 0..10 {
            let rows = 5 + (trial % 20);
            let cols = 8 + (trial % 25);
            let vectors: Vec<Vector<i64>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .filter_map(|c| {
                            let v = sampler.int_range(-3, 3);
                            if v == 0 {
                                None
                            } else {
                                Some((c as i64, Rational::from_int(v)))
                            }
                        })
                        .collect()
                })
                .collect();
            let basis = SpanBasis::rref(&vectors);
            let reduced: Vec<Vector<i64>> = basis.rows().cloned().collect();

            // idempotent: reducing the reduced rows reproduces them
            let again = SpanBasis::rref(&reduced);
            let rows_again: Vec<Vector<i64>> = again.rows().cloned().collect();
            assert_eq!(reduced, rows_again);

            // rank stable under row permutation (reversal)
            let mut reversed = vectors.clone();
            reversed.reverse();
            assert_eq!(SpanBasis::rref(&reversed).rank(), basis.rank());
        }
    }

    #[test]
    fn degree_zero_small() {
        // k = 1, 2 are generators themselves
        let report = degree_zero_generation_check(2, 3);
        assert!(report.outcome.passed(), "{:?}", report.outcome.failures);
    }
}
