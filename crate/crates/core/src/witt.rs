//! Exact arithmetic in U(W_{≥-1}), the universal enveloping algebra of the
//! one-sided Witt algebra.
//!
//! The Witt algebra has basis {e_i | i ≥ -1} with [e_i, e_j] = (j-i) e_{i+j}.
//! Elements of the enveloping algebra are kept in PBW normal form: 𝕜-linear
//! combinations of ascending words e_{i_1} ⋯ e_{i_m}, i_1 ≤ … ≤ i_m, stored
//! sparsely as exponent lists. Products are normal-ordered through the
//! rewriting rule e_i e_j → e_j e_i + (j-i) e_{i+j} for i > j.
//!
//! The module also carries the commutative shadow: `gr` onto the symmetric
//! algebra S(W_{≥-1}) and its right inverse, the symmetrizer `sym`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::commutative::{CommAlphabet, CommAtom, CommMonomial, CommutativeElement};
use crate::error::{Error, Result};
use crate::grading::{cmp_exponent_words, Degree};
use crate::pbw::{self, Truncation};
use crate::print::{print_sorted, write_terms, CanonicalMonomial};
use crate::scalar::{factorial, Rational};

/// Lowest admissible generator index: e_{-1} = ∂.
pub const MIN_INDEX: i64 = -1;

fn check_index(i: i64) -> Result<()> {
    if i < MIN_INDEX {
        Err(Error::IndexOutOfRange(i, MIN_INDEX))
    } else {
        Ok(())
    }
}

/// An ascending PBW word in the generators e_{-1}, e_0, e_1, …, stored as a
/// sparse exponent list with strictly increasing indices and positive
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittMonomial {
    exps: Vec<(i64, u32)>,
}

impl WittMonomial {
    /// The empty word, i.e. the monomial 1.
    pub fn one() -> Self {
        WittMonomial { exps: Vec::new() }
    }

    pub fn generator(i: i64) -> Result<Self> {
        check_index(i)?;
        Ok(WittMonomial { exps: vec![(i, 1)] })
    }

    /// Builds the monomial from a letter word, sorting it. This is a basis
    /// label, not a product: no bracket corrections are introduced.
    pub fn from_word(word: &[i64]) -> Result<Self> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if let Some(&i) = sorted.first() {
            check_index(i)?;
        }
        Ok(Self::from_sorted_word(&sorted))
    }

    fn from_sorted_word(word: &[i64]) -> Self {
        let mut exps: Vec<(i64, u32)> = Vec::new();
        for &i in word {
            match exps.last_mut() {
                Some((j, m)) if *j == i => *m += 1,
                _ => exps.push((i, 1)),
            }
        }
        WittMonomial { exps }
    }

    pub fn exponents(&self) -> &[(i64, u32)] {
        &self.exps
    }

    /// The expanded letter sequence, ascending.
    pub fn word(&self) -> Vec<i64> {
        let mut w = Vec::with_capacity(self.order() as usize);
        for &(i, m) in &self.exps {
            for _ in 0..m {
                w.push(i);
            }
        }
        w
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Word length: the order filtration level of the monomial.
    pub fn order(&self) -> u32 {
        self.exps.iter().map(|&(_, m)| m).sum()
    }

    /// Index weight: the degree of the monomial under the ℤ-grading.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(i, m)| i * m as i64).sum()
    }
}

impl PartialOrd for WittMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WittMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| cmp_exponent_words(&self.exps, &other.exps))
    }
}

impl CanonicalMonomial for WittMonomial {
    fn order_key(&self) -> u32 {
        self.order()
    }
    fn degree_key(&self) -> i64 {
        self.degree()
    }
    fn word_cmp(&self, other: &Self) -> Ordering {
        cmp_exponent_words(&self.exps, &other.exps)
    }
}

impl fmt::Display for WittMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, m) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "e[{i}]")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// An element of U(W_{≥-1}): a finite 𝕜-linear combination of PBW
/// monomials. Zero coefficients are never stored, so the zero element is
/// the empty map and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElement {
    terms: BTreeMap<WittMonomial, Rational>,
}

impl WittElement {
    pub fn zero() -> Self {
        WittElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(WittMonomial::one(), c);
        }
        WittElement { terms }
    }

    pub fn generator(i: i64) -> Result<Self> {
        Ok(Self::monomial(WittMonomial::generator(i)?))
    }

    pub fn monomial(m: WittMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        WittElement { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (WittMonomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in pairs {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: WittMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending (order, degree, word) order.
    pub fn terms(&self) -> impl Iterator<Item = (&WittMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical print order: leading term first.
    pub fn print_terms(&self) -> Vec<(&WittMonomial, &Rational)> {
        print_sorted(self.terms.iter())
    }

    pub fn coefficient(&self, m: &WittMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coordinates of the element in the PBW basis, consumed by the linear
    /// algebra layer.
    pub fn coordinates(&self) -> BTreeMap<WittMonomial, Rational> {
        self.terms.clone()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WittElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// The Lie bracket of two generators: [e_i, e_j] = (j-i) e_{i+j}.
    pub fn bracket(i: i64, j: i64) -> Result<Self> {
        check_index(i)?;
        check_index(j)?;
        Ok(Self::generator(i + j)?.scale(&Rational::from_int(j - i)))
    }

    /// Normal-ordered product, counting rewrite steps.
    fn mul_with_steps(&self, rhs: &WittElement) -> (WittElement, usize) {
        let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        let mut steps = 0;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut word = ma.word();
                word.extend(mb.word());
                steps += pbw::normal_order(&word, &(ca * cb), Truncation::None, &mut out);
            }
        }
        pbw::prune(&mut out);
        let terms = out
            .into_iter()
            .map(|(w, c)| (WittMonomial::from_sorted_word(&w), c))
            .collect();
        (WittElement { terms }, steps)
    }

    pub fn commutator(&self, rhs: &WittElement) -> WittElement {
        &(self * rhs) - &(rhs * self)
    }

    pub fn pow(&self, n: u32) -> WittElement {
        let mut acc = WittElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Filtration level: the maximal word length. Undefined on zero.
    pub fn order(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|m| m.order())
            .max()
            .ok_or(Error::UndefinedOnZero)
    }

    /// The common index weight of all monomials, or `Mixed`. Undefined on
    /// zero.
    pub fn degree(&self) -> Result<Degree> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next().ok_or(Error::UndefinedOnZero)?;
        if degrees.all(|d| d == first) {
            Ok(Degree::Homogeneous(first))
        } else {
            Ok(Degree::Mixed)
        }
    }

    /// Image of the top-order part in the symmetric algebra S(W_{≥-1}):
    /// each maximal-order word e_{i_1}⋯e_{i_m} becomes ē_{i_1}⋯ē_{i_m}.
    pub fn gr(&self) -> Result<CommutativeElement> {
        let top = self.order()?;
        let mut out = CommutativeElement::zero(CommAlphabet::SymWitt);
        for (m, c) in &self.terms {
            if m.order() == top {
                let mono = CommMonomial::from_exponents(
                    m.exps.iter().map(|&(i, mult)| (CommAtom::EBar(i), mult)),
                );
                out.add_term(mono, c.clone())?;
            }
        }
        Ok(out)
    }
}

impl Add for &WittElement {
    type Output = WittElement;
    fn add(self, rhs: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WittElement {
    type Output = WittElement;
    fn sub(self, rhs: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &WittElement {
    type Output = WittElement;
    fn neg(self) -> WittElement {
        WittElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &WittElement {
    type Output = WittElement;
    fn mul(self, rhs: &WittElement) -> WittElement {
        self.mul_with_steps(rhs).0
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.print_terms().into_iter(), |m: &WittMonomial| {
            if m.is_one() {
                None
            } else {
                Some(m.to_string())
            }
        })
    }
}

/// The symmetrizer S(W_{≥-1}) → U(W_{≥-1}): a word of length m maps to the
/// average of its m! orderings, normal-ordered. This is the linear right
/// inverse of `gr`.
pub fn sym(x: &CommutativeElement) -> Result<WittElement> {
    if x.alphabet() != CommAlphabet::SymWitt {
        return Err(Error::AlphabetMismatch(
            x.alphabet().to_string(),
            CommAlphabet::SymWitt.to_string(),
        ));
    }
    let mut out = WittElement::zero();
    for (mono, coeff) in x.terms() {
        let word: Vec<i64> = mono
            .exponents()
            .iter()
            .flat_map(|&(atom, mult)| {
                let i = match atom {
                    CommAtom::EBar(i) => i,
                    _ => unreachable!("alphabet checked above"),
                };
                std::iter::repeat(i).take(mult as usize)
            })
            .collect();
        let m = word.len();
        if m == 0 {
            out = &out + &WittElement::scalar(coeff.clone());
            continue;
        }
        // Full permutation expansion; words at desk scale have length ≤ ~6.
        let scale = coeff * &Rational::from_bigint(factorial(m as u32)).inv().expect("m! != 0");
        let mut sum = WittElement::zero();
        for perm in word.iter().copied().permutations(m) {
            let mut ordered: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
            pbw::normal_order(&perm, &Rational::one(), Truncation::None, &mut ordered);
            pbw::prune(&mut ordered);
            for (w, c) in ordered {
                sum.add_term(WittMonomial::from_sorted_word(&w), c);
            }
        }
        out = &out + &sum.scale(&scale);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64) -> WittElement {
        WittElement::generator(i).unwrap()
    }

    fn word(w: &[i64]) -> WittMonomial {
        WittMonomial::from_word(w).unwrap()
    }

    #[test]
    fn bracket_values() {
        // [e_1, e_2] = e_3
        assert_eq!(WittElement::bracket(1, 2).unwrap(), e(3));
        // [e_i, e_i] = 0
        assert!(WittElement::bracket(4, 4).unwrap().is_zero());
        // [e_{-1}, e_3] = 4 e_2
        assert_eq!(
            WittElement::bracket(-1, 3).unwrap(),
            e(2).scale(&Rational::from_int(4))
        );
        assert!(WittElement::bracket(-2, 0).is_err());
    }

    #[test]
    fn multiply_single_rewrite() {
        // e_2 e_1 = e_1 e_2 - e_3
        let p = &e(2) * &e(1);
        let expected = &WittElement::monomial(word(&[1, 2])) - &e(3);
        assert_eq!(p, expected);
        // e_{-1} e_{-1} is already ordered
        let sq = &e(-1) * &e(-1);
        assert_eq!(sq, WittElement::monomial(word(&[-1, -1])));
    }

    #[test]
    fn multiply_matches_bracket_on_generators() {
        for i in -1..=8i64 {
            for j in -1..=8i64 {
                let lhs = &(&e(i) * &e(j)) - &(&e(j) * &e(i));
                assert_eq!(lhs, WittElement::bracket(i, j).unwrap(), "({i},{j})");
            }
        }
    }

    #[test]
    fn jacobi_identity_on_generators() {
        for i in -1..=6i64 {
            for j in -1..=6i64 {
                for k in -1..=6i64 {
                    let a = e(i);
                    let b = e(j);
                    let c = e(k);
                    let total = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a)))
                        + &c.commutator(&a.commutator(&b));
                    assert!(total.is_zero(), "Jacobi fails at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn associativity_example() {
        let lhs = &(&e(1) * &e(0)) * &e(-1);
        let rhs = &e(1) * &(&e(0) * &e(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_values() {
        // [e_0, e_k] = k e_k
        for k in -1..=6i64 {
            assert_eq!(e(0).commutator(&e(k)), e(k).scale(&Rational::from_int(k)));
        }
        // [x, x] = 0
        let x = &(&e(1) * &e(2)) + &e(0).scale(&Rational::new(2, 3).unwrap());
        assert!(x.commutator(&x).is_zero());
        // [e_{-1}, e_1 e_1] = 4 e_0 e_1 - 2 e_1, by Leibniz and one rewrite
        let lhs = e(-1).commutator(&(&e(1) * &e(1)));
        let rhs = &WittElement::monomial(word(&[0, 1])).scale(&Rational::from_int(4))
            - &e(1).scale(&Rational::from_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_and_degree() {
        let m = WittElement::monomial(word(&[3, 5]));
        assert_eq!(m.order().unwrap(), 2);
        assert_eq!(m.degree().unwrap(), Degree::Homogeneous(8));

        let mixed = &e(0) + &e(1);
        assert_eq!(mixed.degree().unwrap(), Degree::Mixed);

        assert_eq!(WittElement::zero().order(), Err(Error::UndefinedOnZero));
        assert_eq!(WittElement::zero().degree(), Err(Error::UndefinedOnZero));
    }

    #[test]
    fn order_additive_and_degree_additive() {
        let a = WittElement::monomial(word(&[-1, 2, 2]));
        let b = WittElement::monomial(word(&[0, 3]));
        let p = &a * &b;
        assert_eq!(p.order().unwrap(), 5);
        assert_eq!(p.degree().unwrap(), Degree::Homogeneous(3 + 3));
    }

    #[test]
    fn gr_drops_lower_order() {
        // e_2 e_1 = e_1 e_2 - e_3, whose top part is ē_1 ē_2
        let p = &e(2) * &e(1);
        let g = p.gr().unwrap();
        let expected = CommutativeElement::from_atom_word(
            CommAlphabet::SymWitt,
            &[CommAtom::EBar(1), CommAtom::EBar(2)],
        )
        .unwrap();
        assert_eq!(g, expected);

        let g0 = e(0).gr().unwrap();
        let expected =
            CommutativeElement::from_atom_word(CommAlphabet::SymWitt, &[CommAtom::EBar(0)]).unwrap();
        assert_eq!(g0, expected);
    }

    #[test]
    fn sym_is_right_inverse_of_gr() {
        // sym(ē_0 ē_1) = (e_0 e_1 + e_1 e_0)/2 = e_0 e_1 - 1/2 e_1
        let x = CommutativeElement::from_atom_word(
            CommAlphabet::SymWitt,
            &[CommAtom::EBar(0), CommAtom::EBar(1)],
        )
        .unwrap();
        let s = sym(&x).unwrap();
        let expected = &WittElement::monomial(word(&[0, 1]))
            - &e(1).scale(&Rational::new(1, 2).unwrap());
        assert_eq!(s, expected);
        assert_eq!(s.gr().unwrap(), x);

        // length-1 words are fixed
        let x5 = CommutativeElement::from_atom_word(CommAlphabet::SymWitt, &[CommAtom::EBar(5)])
            .unwrap();
        assert_eq!(sym(&x5).unwrap(), e(5));

        // gr(sym(ē_{-1} ē_3)) = ē_{-1} ē_3
        let x2 = CommutativeElement::from_atom_word(
            CommAlphabet::SymWitt,
            &[CommAtom::EBar(-1), CommAtom::EBar(3)],
        )
        .unwrap();
        assert_eq!(sym(&x2).unwrap().gr().unwrap(), x2);

        // and once more with a square: x = ē_0 ē_1^2
        let x3 = CommutativeElement::from_atom_word(
            CommAlphabet::SymWitt,
            &[CommAtom::EBar(0), CommAtom::EBar(1), CommAtom::EBar(1)],
        )
        .unwrap();
        assert_eq!(sym(&x3).unwrap().gr().unwrap(), x3);
    }

    #[test]
    fn canonical_print() {
        let x = &WittElement::monomial(word(&[-1, -1, 3]))
            - &e(1).scale(&Rational::new(1, 2).unwrap());
        assert_eq!(x.to_string(), "e[-1]^2*e[3] - 1/2*e[1]");
        assert_eq!(WittElement::zero().to_string(), "0");
        assert_eq!(
            e(1).scale(&Rational::new(-1, 2).unwrap()).to_string(),
            "-1/2*e[1]"
        );
    }
}
