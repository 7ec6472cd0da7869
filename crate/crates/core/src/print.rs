//! Shared canonical term printing. Terms print leading-first: descending by
//! (order, degree), then ascending by word. Signs are pulled onto the
//! `+`/`-` separators and unit coefficients are suppressed.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Rational;

/// Implemented by every monomial type so the term order used for printing
/// (and the JSON export) is defined once.
pub(crate) trait CanonicalMonomial {
    fn order_key(&self) -> u32;
    fn degree_key(&self) -> i64;
    fn word_cmp(&self, other: &Self) -> Ordering;
}

/// Leading-term-first order: bigger (order, degree) first, word ascending
/// among equals.
pub(crate) fn print_cmp<M: CanonicalMonomial>(a: &M, b: &M) -> Ordering {
    b.order_key()
        .cmp(&a.order_key())
        .then_with(|| b.degree_key().cmp(&a.degree_key()))
        .then_with(|| a.word_cmp(b))
}

pub(crate) fn print_sorted<'a, M: CanonicalMonomial>(
    terms: impl Iterator<Item = (&'a M, &'a Rational)>,
) -> Vec<(&'a M, &'a Rational)> {
    let mut v: Vec<_> = terms.collect();
    v.sort_by(|(a, _), (b, _)| print_cmp(*a, *b));
    v
}

/// Writes `terms` (already in print order) as `c1*m1 + c2*m2 - ...`.
/// `fmt_monomial` returns `None` for the unit monomial so constants print
/// bare. An empty list prints `0`.
pub(crate) fn write_terms<'a, M: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, &'a Rational)>,
    fmt_monomial: impl Fn(&M) -> Option<String>,
) -> fmt::Result {
    let mut first = true;
    for (mono, coeff) in terms {
        let negative = coeff.is_negative();
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let magnitude = coeff.abs();
        match fmt_monomial(mono) {
            None => write!(f, "{magnitude}")?,
            Some(m) => {
                if magnitude.is_one() {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{magnitude}*{m}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
