//! Normal ordering of words over an indexed basis {x_i} with bracket
//! [x_i, x_j] = (j - i) x_{i+j}.
//!
//! This one rewriting engine serves all three Lie algebras in the crate:
//! the one-sided Witt algebra (indices ≥ -1), its subalgebra of
//! non-negative modes (indices ≥ 0), and the solvable truncations 𝔤_n
//! (indices ≥ 0 with x_{i+j} dropped once i+j ≥ n).
//!
//! The strategy is fixed for determinism: always rewrite the leftmost
//! descending adjacent pair,
//!     x_i x_j  →  x_j x_i + (j - i) x_{i+j}    (i > j).
//! Each step either shortens a word or decreases its inversion count at
//! fixed length, so the rewriting terminates.

use std::collections::BTreeMap;

use crate::scalar::Rational;

/// Truncation rule for the contracted letter produced by a bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Truncation {
    /// Keep every contracted letter (U(W_{≥-1}) and U(W_{≥0})).
    None,
    /// Drop any term whose contracted letter has index ≥ n (U(𝔤_n)).
    AtIndex(i64),
}

/// Normal-orders `coeff · word` into `out`, merging like monomials and
/// returning the number of rewrite steps taken.
pub(crate) fn normal_order(
    word: &[i64],
    coeff: &Rational,
    truncation: Truncation,
    out: &mut BTreeMap<Vec<i64>, Rational>,
) -> usize {
    let mut steps = 0usize;
    let mut pending: Vec<(Rational, Vec<i64>)> = vec![(coeff.clone(), word.to_vec())];
    while let Some((c, w)) = pending.pop() {
        match first_descent(&w) {
            None => {
                let entry = out.entry(w).or_insert_with(Rational::zero);
                *entry += &c;
                if entry.is_zero() {
                    // removal happens lazily in `prune`
                }
            }
            Some(p) => {
                steps += 1;
                let (i, j) = (w[p], w[p + 1]);
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                pending.push((c.clone(), swapped));

                let keep = match truncation {
                    Truncation::None => true,
                    Truncation::AtIndex(n) => i + j < n,
                };
                if keep {
                    let mut contracted = Vec::with_capacity(w.len() - 1);
                    contracted.extend_from_slice(&w[..p]);
                    contracted.push(i + j);
                    contracted.extend_from_slice(&w[p + 2..]);
                    pending.push((c * Rational::from_int(j - i), contracted));
                }
            }
        }
    }
    steps
}

/// Drops zero coefficients accumulated by cancellation.
pub(crate) fn prune(map: &mut BTreeMap<Vec<i64>, Rational>) {
    map.retain(|_, c| !c.is_zero());
}

fn first_descent(word: &[i64]) -> Option<usize> {
    word.windows(2).position(|w| w[0] > w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(word: &[i64], trunc: Truncation) -> BTreeMap<Vec<i64>, Rational> {
        let mut out = BTreeMap::new();
        normal_order(word, &Rational::one(), trunc, &mut out);
        prune(&mut out);
        out
    }

    #[test]
    fn single_swap() {
        // e_2 e_1 → e_1 e_2 - e_3
        let out = order(&[2, 1], Truncation::None);
        assert_eq!(out.len(), 2);
        assert_eq!(out[&vec![1, 2]], Rational::one());
        assert_eq!(out[&vec![3]], Rational::from_int(-1));
    }

    #[test]
    fn already_ordered_is_untouched() {
        let out = order(&[-1, -1], Truncation::None);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&vec![-1, -1]], Rational::one());
    }

    #[test]
    fn truncation_kills_high_modes() {
        // in 𝔤_2: v_1 v_0 → v_0 v_1 - v_1, and v_1 v_1 stays put
        let out = order(&[1, 0], Truncation::AtIndex(2));
        assert_eq!(out.len(), 2);
        assert_eq!(out[&vec![0, 1]], Rational::one());
        assert_eq!(out[&vec![1]], Rational::from_int(-1));

        let out = order(&[1, 1], Truncation::AtIndex(2));
        assert_eq!(out.len(), 1);
    }
}
