//! Degree bookkeeping shared by every ring in the crate, plus the word
//! comparison underlying all canonical term orders.

use std::cmp::Ordering;

/// The degree of an element under the ℤ-grading: a single integer when all
/// monomials carry the same weight, `Mixed` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    Mixed,
}

impl Degree {
    pub fn homogeneous(self) -> Option<i64> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            Degree::Mixed => None,
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Mixed => write!(f, "inhomogeneous"),
        }
    }
}

/// Compares two sparse exponent lists as the fully expanded letter words
/// they denote, lexicographically. `[(0, 2)]` reads `x_0 x_0` and sorts
/// before `[(0, 1), (1, 1)]` which reads `x_0 x_1`.
pub(crate) fn cmp_exponent_words<A: Ord + Copy>(a: &[(A, u32)], b: &[(A, u32)]) -> Ordering {
    let mut ia = a.iter().copied();
    let mut ib = b.iter().copied();
    let (mut ca, mut cb) = (ia.next(), ib.next());
    loop {
        match (ca, cb) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((xa, ma)), Some((xb, mb))) => {
                match xa.cmp(&xb) {
                    Ordering::Equal => {
                        // Shared prefix of min(ma, mb) copies; advance the
                        // exhausted side(s).
                        let shared = ma.min(mb);
                        ca = if ma > shared { Some((xa, ma - shared)) } else { ia.next() };
                        cb = if mb > shared { Some((xb, mb - shared)) } else { ib.next() };
                    }
                    other => return other,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expanded_word_order() {
        // x_0 x_0 x_5 < x_0 x_1 x_2, even though (0,2) > (0,1) pairwise
        assert_eq!(
            cmp_exponent_words(&[(0, 2), (5, 1)], &[(0, 1), (1, 1), (2, 1)]),
            Ordering::Less
        );
        // prefix is smaller
        assert_eq!(cmp_exponent_words(&[(1, 1)], &[(1, 2)]), Ordering::Less);
        assert_eq!(
            cmp_exponent_words::<i64>(&[(2, 2)], &[(2, 2)]),
            Ordering::Equal
        );
    }
}
