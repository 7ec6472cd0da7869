//! Sparse multivariate polynomials over ℚ in a tagged variable alphabet.
//!
//! One representation serves both commutative shadows in the crate: the
//! symmetric algebra S(W_{≥-1}) in the variables ē_i, and the associated
//! graded rings gr T_n, gr T_∞ in t̄, ∂̄, v̄_j. Every element records its
//! alphabet, and arithmetic refuses to mix alphabets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grading::{cmp_exponent_words, Degree};
use crate::print::{print_sorted, write_terms, CanonicalMonomial};
use crate::scalar::Rational;
use crate::target::TargetContext;

/// A commutative variable. `EBar` is the image ē_i of e_i in S(W_{≥-1});
/// `TBar`, `DBar`, `VBar` are t̄, ∂̄ and the 𝔤-mode images in gr T_n or
/// gr T_∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommAtom {
    TBar,
    DBar,
    VBar(u32),
    EBar(i64),
}

impl CommAtom {
    /// Contribution of one power of the atom to the order grading.
    fn order_weight(self) -> u32 {
        match self {
            CommAtom::TBar => 0,
            _ => 1,
        }
    }

    /// Contribution of one power of the atom to the degree grading.
    fn degree_weight(self) -> i64 {
        match self {
            CommAtom::TBar => 1,
            CommAtom::DBar => -1,
            CommAtom::VBar(j) => j as i64,
            CommAtom::EBar(i) => i,
        }
    }
}

/// The variable alphabet an element lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommAlphabet {
    /// ē_{-1}, ē_0, ē_1, …: the symmetric algebra S(W_{≥-1}).
    SymWitt,
    /// t̄, ∂̄ and v̄_0 … v̄_{n-1} (or all modes for T_∞): the ring gr T.
    GrTarget(TargetContext),
}

impl CommAlphabet {
    fn allows(self, atom: CommAtom) -> bool {
        match (self, atom) {
            (CommAlphabet::SymWitt, CommAtom::EBar(i)) => i >= -1,
            (CommAlphabet::SymWitt, _) => false,
            (CommAlphabet::GrTarget(_), CommAtom::TBar | CommAtom::DBar) => true,
            (CommAlphabet::GrTarget(TargetContext::N(n)), CommAtom::VBar(j)) => j < n,
            (CommAlphabet::GrTarget(TargetContext::Infinity), CommAtom::VBar(_)) => true,
            (CommAlphabet::GrTarget(_), CommAtom::EBar(_)) => false,
        }
    }

    fn atom_name(self, atom: CommAtom) -> String {
        match atom {
            CommAtom::TBar => "t".to_string(),
            CommAtom::DBar => "d".to_string(),
            CommAtom::VBar(j) => match self {
                CommAlphabet::GrTarget(TargetContext::Infinity) => format!("E[{j}]"),
                _ => format!("v[{j}]"),
            },
            CommAtom::EBar(i) => format!("e[{i}]"),
        }
    }
}

impl fmt::Display for CommAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommAlphabet::SymWitt => write!(f, "S(W)"),
            CommAlphabet::GrTarget(TargetContext::N(n)) => write!(f, "gr T_{n}"),
            CommAlphabet::GrTarget(TargetContext::Infinity) => write!(f, "gr T_infinity"),
        }
    }
}

/// A commutative monomial: a sparse exponent list with strictly increasing
/// atoms and positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommMonomial {
    exps: Vec<(CommAtom, u32)>,
}

impl CommMonomial {
    pub fn one() -> Self {
        CommMonomial { exps: Vec::new() }
    }

    /// Collects an exponent iterator into canonical form, merging repeats.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (CommAtom, u32)>) -> Self {
        let mut map: BTreeMap<CommAtom, u32> = BTreeMap::new();
        for (a, m) in pairs {
            if m > 0 {
                *map.entry(a).or_insert(0) += m;
            }
        }
        CommMonomial { exps: map.into_iter().collect() }
    }

    pub fn exponents(&self) -> &[(CommAtom, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.exps.iter().map(|&(a, m)| a.order_weight() * m).sum()
    }

    pub fn degree(&self) -> i64 {
        self.exps
            .iter()
            .map(|&(a, m)| a.degree_weight() * m as i64)
            .sum()
    }

    fn mul(&self, other: &CommMonomial) -> CommMonomial {
        CommMonomial::from_exponents(
            self.exps.iter().copied().chain(other.exps.iter().copied()),
        )
    }

    fn format_with(&self, alphabet: CommAlphabet) -> Option<String> {
        if self.is_one() {
            return None;
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(a, m)| {
                let name = alphabet.atom_name(a);
                if m == 1 {
                    name
                } else {
                    format!("{name}^{m}")
                }
            })
            .collect();
        Some(parts.join("*"))
    }
}

impl PartialOrd for CommMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CommMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| cmp_exponent_words(&self.exps, &other.exps))
    }
}

impl CanonicalMonomial for CommMonomial {
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

/// A polynomial over a fixed alphabet. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeElement {
    alphabet: CommAlphabet,
    terms: BTreeMap<CommMonomial, Rational>,
}

impl CommutativeElement {
    pub fn zero(alphabet: CommAlphabet) -> Self {
        CommutativeElement { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: CommAlphabet) -> Self {
        Self::scalar(alphabet, Rational::one())
    }

    pub fn scalar(alphabet: CommAlphabet, c: Rational) -> Self {
        let mut out = Self::zero(alphabet);
        if !c.is_zero() {
            out.terms.insert(CommMonomial::one(), c);
        }
        out
    }

    pub fn atom(alphabet: CommAlphabet, atom: CommAtom) -> Result<Self> {
        Self::atom_pow(alphabet, atom, 1)
    }

    pub fn atom_pow(alphabet: CommAlphabet, atom: CommAtom, power: u32) -> Result<Self> {
        Self::check_atom(alphabet, atom)?;
        let mut out = Self::zero(alphabet);
        out.terms.insert(
            CommMonomial::from_exponents([(atom, power)]),
            Rational::one(),
        );
        Ok(out)
    }

    /// Builds the monomial that is the product of the listed atoms.
    pub fn from_atom_word(alphabet: CommAlphabet, atoms: &[CommAtom]) -> Result<Self> {
        for &a in atoms {
            Self::check_atom(alphabet, a)?;
        }
        let mut out = Self::zero(alphabet);
        out.terms.insert(
            CommMonomial::from_exponents(atoms.iter().map(|&a| (a, 1))),
            Rational::one(),
        );
        Ok(out)
    }

    fn check_atom(alphabet: CommAlphabet, atom: CommAtom) -> Result<()> {
        if alphabet.allows(atom) {
            Ok(())
        } else {
            Err(Error::AtomNotAllowed {
                atom: alphabet.atom_name(atom),
                alphabet: alphabet.to_string(),
            })
        }
    }

    fn check_same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(
                self.alphabet.to_string(),
                other.alphabet.to_string(),
            ))
        }
    }

    pub fn alphabet(&self) -> CommAlphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending (order, degree, word) order.
    pub fn terms(&self) -> impl Iterator<Item = (&CommMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical print order: leading term first.
    pub fn print_terms(&self) -> Vec<(&CommMonomial, &Rational)> {
        print_sorted(self.terms.iter())
    }

    pub fn coordinates(&self) -> BTreeMap<CommMonomial, Rational> {
        self.terms.clone()
    }

    pub fn coefficient(&self, m: &CommMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: CommMonomial, coeff: Rational) -> Result<()> {
        for &(a, _) in mono.exponents() {
            Self::check_atom(self.alphabet, a)?;
        }
        self.add_term_unchecked(mono, coeff);
        Ok(())
    }

    fn add_term_unchecked(&mut self, mono: CommMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v += &coeff;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_unchecked(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CommutativeElement {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.alphabet);
        }
        CommutativeElement {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let mut out = Self::zero(self.alphabet);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term_unchecked(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.alphabet);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|m| m.order())
            .max()
            .ok_or(Error::UndefinedOnZero)
    }

    pub fn degree(&self) -> Result<Degree> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next().ok_or(Error::UndefinedOnZero)?;
        if degrees.all(|d| d == first) {
            Ok(Degree::Homogeneous(first))
        } else {
            Ok(Degree::Mixed)
        }
    }
}

impl fmt::Display for CommutativeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet;
        write_terms(f, self.print_terms().into_iter(), |m: &CommMonomial| {
            m.format_with(alphabet)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_enforced() {
        assert!(CommutativeElement::atom(CommAlphabet::SymWitt, CommAtom::TBar).is_err());
        assert!(CommutativeElement::atom(CommAlphabet::SymWitt, CommAtom::EBar(-2)).is_err());
        assert!(CommutativeElement::atom(
            CommAlphabet::GrTarget(TargetContext::N(2)),
            CommAtom::VBar(2)
        )
        .is_err());
        assert!(CommutativeElement::atom(
            CommAlphabet::GrTarget(TargetContext::Infinity),
            CommAtom::VBar(17)
        )
        .is_ok());

        let a = CommutativeElement::atom(CommAlphabet::SymWitt, CommAtom::EBar(0)).unwrap();
        let b = CommutativeElement::atom(
            CommAlphabet::GrTarget(TargetContext::N(1)),
            CommAtom::VBar(0),
        )
        .unwrap();
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn grading_weights() {
        let g = CommAlphabet::GrTarget(TargetContext::N(3));
        let m = CommMonomial::from_exponents([
            (CommAtom::TBar, 2),
            (CommAtom::DBar, 1),
            (CommAtom::VBar(2), 1),
        ]);
        assert_eq!(m.order(), 2); // t̄ does not count
        assert_eq!(m.degree(), 2 - 1 + 2);
        let x = CommutativeElement::from_atom_word(
            g,
            &[CommAtom::TBar, CommAtom::TBar, CommAtom::DBar, CommAtom::VBar(2)],
        )
        .unwrap();
        assert_eq!(x.order().unwrap(), 2);
        assert_eq!(x.degree().unwrap(), Degree::Homogeneous(3));
    }

    #[test]
    fn multiplication_merges_exponents() {
        let s = CommAlphabet::SymWitt;
        let a = CommutativeElement::atom(s, CommAtom::EBar(1)).unwrap();
        let b = CommutativeElement::atom(s, CommAtom::EBar(-1)).unwrap();
        let p = a.mul(&b).unwrap().mul(&a).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(
            m.exponents(),
            &[(CommAtom::EBar(-1), 1), (CommAtom::EBar(1), 2)]
        );
        assert!(c.is_one());
    }

    #[test]
    fn display_formats() {
        let g = CommAlphabet::GrTarget(TargetContext::N(2));
        let td = CommutativeElement::from_atom_word(g, &[CommAtom::TBar, CommAtom::DBar]).unwrap();
        let v0 = CommutativeElement::atom(g, CommAtom::VBar(0)).unwrap();
        let x = td.add(&v0).unwrap();
        assert_eq!(x.to_string(), "t*d + v[0]");

        let ginf = CommAlphabet::GrTarget(TargetContext::Infinity);
        let e5 = CommutativeElement::atom(ginf, CommAtom::VBar(5)).unwrap();
        assert_eq!(e5.to_string(), "E[5]");
    }
}
