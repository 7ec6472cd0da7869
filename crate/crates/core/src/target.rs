//! Exact arithmetic in the target rings of the orbit homomorphisms:
//! T_n = A_1 ⊗ U(𝔤_n) and T_∞ = A_1 ⊗ U(W_{≥0}).
//!
//! A_1 is the first Weyl algebra on t, ∂ with ∂t - t∂ = 1. The 𝔤-factor has
//! basis v_0, …, v_{n-1} (images of e_0, …, e_{n-1}, with [v_i, v_j] =
//! (j-i) v_{i+j} truncated to zero once i+j ≥ n); in T_∞ the factor is all
//! of W_{≥0} and the modes are written E[j]. Normal form places t, then ∂,
//! then an ascending mode word, so three rewrites normalize any product:
//! ∂t → t∂ + 1, modes commute with t and ∂, and the PBW rule on mode words.
//!
//! The module also hosts the associated graded pieces the kernel
//! computation consumes: `t_gr`, the quotients T_n → T_m, the subring L of
//! ∂-commutants, the projection Π onto the t-free part, the coordinates
//! c̄_i = Φ(ē_i), and the collapsing homomorphism φ on gr T.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::commutative::{CommAlphabet, CommAtom, CommMonomial, CommutativeElement};
use crate::error::{Error, Result};
use crate::grading::{cmp_exponent_words, Degree};
use crate::pbw::{self, Truncation};
use crate::print::{print_sorted, write_terms, CanonicalMonomial};
use crate::scalar::{binomial, binomial_rat, factorial, Rational};

/// Which target ring an element lives in: T_n for finite n, or T_∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetContext {
    N(u32),
    Infinity,
}

impl TargetContext {
    fn allows_mode(self, j: u32) -> bool {
        match self {
            TargetContext::N(n) => j < n,
            TargetContext::Infinity => true,
        }
    }

    fn truncation(self) -> Truncation {
        match self {
            TargetContext::N(n) => Truncation::AtIndex(n as i64),
            TargetContext::Infinity => Truncation::None,
        }
    }

    fn mode_name(self, j: u32) -> String {
        match self {
            TargetContext::N(_) => format!("v[{j}]"),
            TargetContext::Infinity => format!("E[{j}]"),
        }
    }
}

impl fmt::Display for TargetContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetContext::N(n) => write!(f, "T_{n}"),
            TargetContext::Infinity => write!(f, "T_infinity"),
        }
    }
}

/// A normal-form word t^a ∂^b v_{j_1} ⋯ v_{j_r} with the mode word
/// ascending, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetMonomial {
    t_exp: u32,
    d_exp: u32,
    vword: Vec<(u32, u32)>,
}

impl TargetMonomial {
    pub fn one() -> Self {
        TargetMonomial { t_exp: 0, d_exp: 0, vword: Vec::new() }
    }

    pub fn new(t_exp: u32, d_exp: u32, modes: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (j, m) in modes {
            if m > 0 {
                *map.entry(j).or_insert(0) += m;
            }
        }
        TargetMonomial { t_exp, d_exp, vword: map.into_iter().collect() }
    }

    fn from_sorted_mode_word(t_exp: u32, d_exp: u32, word: &[i64]) -> Self {
        let mut vword: Vec<(u32, u32)> = Vec::new();
        for &j in word {
            let j = u32::try_from(j).expect("mode indices are non-negative");
            match vword.last_mut() {
                Some((i, m)) if *i == j => *m += 1,
                _ => vword.push((j, 1)),
            }
        }
        TargetMonomial { t_exp, d_exp, vword }
    }

    pub fn t_exp(&self) -> u32 {
        self.t_exp
    }

    pub fn d_exp(&self) -> u32 {
        self.d_exp
    }

    pub fn modes(&self) -> &[(u32, u32)] {
        &self.vword
    }

    pub fn is_one(&self) -> bool {
        self.t_exp == 0 && self.d_exp == 0 && self.vword.is_empty()
    }

    /// Order filtration level: ∂-exponent plus mode word length (t is free).
    pub fn order(&self) -> u32 {
        self.d_exp + self.vword.iter().map(|&(_, m)| m).sum::<u32>()
    }

    /// Degree grading weight: t counts +1, ∂ counts -1, v_j counts j.
    pub fn degree(&self) -> i64 {
        self.t_exp as i64 - self.d_exp as i64
            + self
                .vword
                .iter()
                .map(|&(j, m)| j as i64 * m as i64)
                .sum::<i64>()
    }

    fn max_mode(&self) -> Option<u32> {
        self.vword.last().map(|&(j, _)| j)
    }

    /// The full letter word with ranks t < ∂ < v_0 < v_1 < …, for the
    /// lexicographic leg of the term order.
    fn ranked_letters(&self) -> Vec<(i64, u32)> {
        let mut out = Vec::with_capacity(2 + self.vword.len());
        if self.t_exp > 0 {
            out.push((0, self.t_exp));
        }
        if self.d_exp > 0 {
            out.push((1, self.d_exp));
        }
        out.extend(self.vword.iter().map(|&(j, m)| (2 + j as i64, m)));
        out
    }

    fn format_with(&self, ctx: TargetContext) -> Option<String> {
        if self.is_one() {
            return None;
        }
        let mut parts = Vec::new();
        if self.t_exp == 1 {
            parts.push("t".to_string());
        } else if self.t_exp > 1 {
            parts.push(format!("t^{}", self.t_exp));
        }
        if self.d_exp == 1 {
            parts.push("d".to_string());
        } else if self.d_exp > 1 {
            parts.push(format!("d^{}", self.d_exp));
        }
        for &(j, m) in &self.vword {
            let name = ctx.mode_name(j);
            if m == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{m}"));
            }
        }
        Some(parts.join("*"))
    }
}

impl PartialOrd for TargetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TargetMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| cmp_exponent_words(&self.ranked_letters(), &other.ranked_letters()))
    }
}

impl CanonicalMonomial for TargetMonomial {
    fn order_key(&self) -> u32 {
        self.order()
    }
    fn degree_key(&self) -> i64 {
        self.degree()
    }
    fn word_cmp(&self, other: &Self) -> Ordering {
        cmp_exponent_words(&self.ranked_letters(), &other.ranked_letters())
    }
}

/// An element of T_n or T_∞, tagged with its context. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetElement {
    context: TargetContext,
    terms: BTreeMap<TargetMonomial, Rational>,
}

impl TargetElement {
    pub fn zero(context: TargetContext) -> Self {
        TargetElement { context, terms: BTreeMap::new() }
    }

    pub fn one(context: TargetContext) -> Self {
        Self::scalar(context, Rational::one())
    }

    pub fn scalar(context: TargetContext, c: Rational) -> Self {
        let mut out = Self::zero(context);
        if !c.is_zero() {
            out.terms.insert(TargetMonomial::one(), c);
        }
        out
    }

    pub fn t(context: TargetContext) -> Self {
        Self::of_monomial(context, TargetMonomial::new(1, 0, []))
    }

    pub fn d(context: TargetContext) -> Self {
        Self::of_monomial(context, TargetMonomial::new(0, 1, []))
    }

    /// The mode generator: v_j in T_n (requires j ≤ n-1), e_j in T_∞.
    pub fn mode(context: TargetContext, j: u32) -> Result<Self> {
        if !context.allows_mode(j) {
            return Err(Error::IndexOutOfRange(j as i64, 0));
        }
        Ok(Self::of_monomial(context, TargetMonomial::new(0, 0, [(j, 1)])))
    }

    fn of_monomial(context: TargetContext, m: TargetMonomial) -> Self {
        let mut out = Self::zero(context);
        out.terms.insert(m, Rational::one());
        out
    }

    pub fn monomial(context: TargetContext, m: TargetMonomial) -> Result<Self> {
        if let Some(j) = m.max_mode() {
            if !context.allows_mode(j) {
                return Err(Error::IndexOutOfRange(j as i64, 0));
            }
        }
        Ok(Self::of_monomial(context, m))
    }

    pub fn from_terms(
        context: TargetContext,
        pairs: impl IntoIterator<Item = (TargetMonomial, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(context);
        for (m, c) in pairs {
            if let Some(j) = m.max_mode() {
                if !context.allows_mode(j) {
                    return Err(Error::IndexOutOfRange(j as i64, 0));
                }
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: TargetMonomial, c: Rational) {
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

    pub fn context(&self) -> TargetContext {
        self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TargetMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn print_terms(&self) -> Vec<(&TargetMonomial, &Rational)> {
        print_sorted(self.terms.iter())
    }

    pub fn coordinates(&self) -> BTreeMap<TargetMonomial, Rational> {
        self.terms.clone()
    }

    pub fn coefficient(&self, m: &TargetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.context == other.context {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                self.context.to_string(),
                other.context.to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TargetElement {
            context: self.context,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.context);
        }
        TargetElement {
            context: self.context,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Normal-ordered product: the Weyl exchange ∂^b t^a = Σ_k C(b,k)
    /// a(a-1)⋯(a-k+1) t^{a-k} ∂^{b-k} moves all t to the left, and mode
    /// words order by the PBW rewrite (truncated in T_n).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let trunc = self.context.truncation();
        let mut out = Self::zero(self.context);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let base = ca * cb;
                let (a1, b1) = (ma.t_exp, ma.d_exp);
                let (a2, b2) = (mb.t_exp, mb.d_exp);
                // modes commute with t and ∂, so the words concatenate
                let mut word: Vec<i64> = Vec::new();
                for &(j, m) in &ma.vword {
                    for _ in 0..m {
                        word.push(j as i64);
                    }
                }
                for &(j, m) in &mb.vword {
                    for _ in 0..m {
                        word.push(j as i64);
                    }
                }
                let mut ordered: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
                pbw::normal_order(&word, &Rational::one(), trunc, &mut ordered);
                pbw::prune(&mut ordered);

                for k in 0..=b1.min(a2) {
                    let coeff = Rational::from_bigint(
                        binomial(b1 as i64, k) * binomial(a2 as i64, k) * factorial(k),
                    );
                    if coeff.is_zero() {
                        continue;
                    }
                    let coeff = &base * &coeff;
                    for (w, cw) in &ordered {
                        out.add_term(
                            TargetMonomial::from_sorted_mode_word(a1 + a2 - k, b1 + b2 - k, w),
                            &coeff * cw,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.context);
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

    /// Top-order part as an element of gr T: t̄^a ∂̄^b v̄-word.
    pub fn gr(&self) -> Result<CommutativeElement> {
        let top = self.order()?;
        let mut out = CommutativeElement::zero(CommAlphabet::GrTarget(self.context));
        for (m, c) in &self.terms {
            if m.order() == top {
                let mono = CommMonomial::from_exponents(
                    [(CommAtom::TBar, m.t_exp), (CommAtom::DBar, m.d_exp)]
                        .into_iter()
                        .chain(m.vword.iter().map(|&(j, mult)| (CommAtom::VBar(j), mult))),
                );
                out.add_term(mono, c.clone())?;
            }
        }
        Ok(out)
    }

    /// Quotient onto T_m, killing every monomial that contains a mode of
    /// index ≥ m (and relabelling e_j → v_j when coming from T_∞).
    pub fn quotient(&self, m: u32) -> Result<TargetElement> {
        if let TargetContext::N(n) = self.context {
            if m > n {
                return Err(Error::InvalidQuotientTarget {
                    source: self.context.to_string(),
                    target: m,
                });
            }
        }
        let mut out = TargetElement::zero(TargetContext::N(m));
        for (mono, c) in &self.terms {
            match mono.max_mode() {
                Some(j) if j >= m => continue,
                _ => out.add_term(mono.clone(), c.clone()),
            }
        }
        Ok(out)
    }

    /// Membership in L = {x ∈ T_∞ | [∂, x] = 0}: no monomial carries a
    /// positive t-exponent.
    pub fn in_l(&self) -> Result<bool> {
        self.require_infinity()?;
        Ok(self.terms.keys().all(|m| m.t_exp == 0))
    }

    /// The projection Π: T_∞ = ⊕_{a≥0} t^a L → L keeping the t-free part.
    pub fn pi_projection(&self) -> Result<TargetElement> {
        self.require_infinity()?;
        let mut out = TargetElement::zero(TargetContext::Infinity);
        for (m, c) in &self.terms {
            if m.t_exp == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    fn require_infinity(&self) -> Result<()> {
        if self.context == TargetContext::Infinity {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                self.context.to_string(),
                TargetContext::Infinity.to_string(),
            ))
        }
    }
}

impl fmt::Display for TargetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.context;
        write_terms(f, self.print_terms().into_iter(), |m: &TargetMonomial| {
            m.format_with(ctx)
        })
    }
}

/// The change-of-coordinates polynomial c̄_i = Φ(ē_i) in gr T:
/// t̄^{i+1} ∂̄ + Σ_j C(i+1, j+1) t̄^{i-j} v̄_j.
pub fn c_bar(i: i64, context: TargetContext) -> Result<CommutativeElement> {
    if i < -1 {
        return Err(Error::IndexOutOfRange(i, -1));
    }
    let alphabet = CommAlphabet::GrTarget(context);
    let mut out = CommutativeElement::zero(alphabet);
    out.add_term(
        CommMonomial::from_exponents([(CommAtom::TBar, (i + 1) as u32), (CommAtom::DBar, 1)]),
        Rational::one(),
    )?;
    let j_end: i64 = match context {
        TargetContext::N(n) => n as i64,
        // C(i+1, j+1) vanishes once j > i, so the sum is finite
        TargetContext::Infinity => i + 1,
    };
    for j in 0..j_end {
        let coeff = binomial_rat(i + 1, (j + 1) as u32);
        if coeff.is_zero() {
            continue;
        }
        // a nonzero binomial forces j ≤ i, so the t̄ exponent is in range
        assert!(i - j >= 0, "negative t exponent with nonzero binomial");
        out.add_term(
            CommMonomial::from_exponents([
                (CommAtom::TBar, (i - j) as u32),
                (CommAtom::VBar(j as u32), 1),
            ]),
            coeff,
        )?;
    }
    Ok(out)
}

/// The graded quotient π_{n,m}: gr T_n → gr T_m (or from gr T_∞), killing
/// every monomial that contains a v̄_j with j ≥ m.
pub fn gr_quotient(x: &CommutativeElement, m: u32) -> Result<CommutativeElement> {
    let src = match x.alphabet() {
        CommAlphabet::GrTarget(ctx) => ctx,
        other => {
            return Err(Error::AlphabetMismatch(other.to_string(), "gr T".to_string()))
        }
    };
    if let TargetContext::N(n) = src {
        if m > n {
            return Err(Error::InvalidQuotientTarget { source: src.to_string(), target: m });
        }
    }
    let mut out = CommutativeElement::zero(CommAlphabet::GrTarget(TargetContext::N(m)));
    'terms: for (mono, c) in x.terms() {
        for &(atom, _) in mono.exponents() {
            if let CommAtom::VBar(j) = atom {
                if j >= m {
                    continue 'terms;
                }
            }
        }
        out.add_term(mono.clone(), c.clone())?;
    }
    Ok(out)
}

/// The collapsing homomorphism φ: gr T → 𝕜[t̄, ∂̄] with
/// v̄_j ↦ (-1)^{j+1} t̄^{j+1} ∂̄ and the identity on t̄, ∂̄.
pub fn phi_map(x: &CommutativeElement) -> Result<CommutativeElement> {
    let alphabet = x.alphabet();
    if !matches!(alphabet, CommAlphabet::GrTarget(_)) {
        return Err(Error::AlphabetMismatch(
            alphabet.to_string(),
            "gr T".to_string(),
        ));
    }
    let mut out = CommutativeElement::zero(alphabet);
    for (mono, coeff) in x.terms() {
        let mut image = CommutativeElement::scalar(alphabet, coeff.clone());
        for &(atom, mult) in mono.exponents() {
            let factor = match atom {
                CommAtom::TBar | CommAtom::DBar => {
                    CommutativeElement::atom_pow(alphabet, atom, mult)?
                }
                CommAtom::VBar(j) => {
                    let sign = if (j + 1) % 2 == 0 {
                        Rational::one()
                    } else {
                        Rational::from_int(-1)
                    };
                    let base = CommutativeElement::from_atom_word(
                        alphabet,
                        &[vec![CommAtom::TBar; (j + 1) as usize], vec![CommAtom::DBar]].concat(),
                    )?
                    .scale(&sign);
                    base.pow(mult)?
                }
                CommAtom::EBar(_) => unreachable!("alphabet checked above"),
            };
            image = image.mul(&factor)?;
        }
        out = out.add(&image)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const T2: TargetContext = TargetContext::N(2);
    const TINF: TargetContext = TargetContext::Infinity;

    fn t(ctx: TargetContext) -> TargetElement {
        TargetElement::t(ctx)
    }
    fn d(ctx: TargetContext) -> TargetElement {
        TargetElement::d(ctx)
    }
    fn v(ctx: TargetContext, j: u32) -> TargetElement {
        TargetElement::mode(ctx, j).unwrap()
    }

    #[test]
    fn weyl_relation() {
        // ∂t = t∂ + 1
        let p = d(T2).mul(&t(T2)).unwrap();
        let expected = t(T2)
            .mul(&d(T2))
            .unwrap()
            .add(&TargetElement::one(T2))
            .unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "t*d + 1");
    }

    #[test]
    fn mode_bracket_and_truncation() {
        // in T_2: v_1 v_0 = v_0 v_1 - v_1
        let p = v(T2, 1).mul(&v(T2, 0)).unwrap();
        let expected = v(T2, 0)
            .mul(&v(T2, 1))
            .unwrap()
            .sub(&v(T2, 1))
            .unwrap();
        assert_eq!(p, expected);

        // in T_2: v_1 v_1 stays put since v_2 = 0
        let sq = v(T2, 1).mul(&v(T2, 1)).unwrap();
        assert_eq!(sq.num_terms(), 1);

        // in T_∞ the bracket survives: E_2 E_1 = E_1 E_2 - E_3
        let p = v(TINF, 2).mul(&v(TINF, 1)).unwrap();
        let expected = v(TINF, 1)
            .mul(&v(TINF, 2))
            .unwrap()
            .sub(&v(TINF, 3))
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        assert!(t(T2).mul(&t(TINF)).is_err());
        assert!(v(T2, 1).add(&v(TINF, 1)).is_err());
        assert!(TargetElement::mode(T2, 5).is_err());
        assert!(TargetElement::mode(TargetContext::N(0), 0).is_err());
    }

    #[test]
    fn degree_and_order() {
        // t^2 ∂ v_1: degree 2 - 1 + 1 = 2, order 1 + 1 = 2
        let x = t(T2)
            .pow(2)
            .unwrap()
            .mul(&d(T2))
            .unwrap()
            .mul(&v(T2, 1))
            .unwrap();
        assert_eq!(x.degree().unwrap(), Degree::Homogeneous(2));
        assert_eq!(x.order().unwrap(), 2);

        // v_0^2 - v_0: degree 0, order 2 (mixed filtration levels)
        let y = v(T2, 0).pow(2).unwrap().sub(&v(T2, 0)).unwrap();
        assert_eq!(y.degree().unwrap(), Degree::Homogeneous(0));
        assert_eq!(y.order().unwrap(), 2);

        // ∂: degree -1, order 1
        assert_eq!(d(T2).degree().unwrap(), Degree::Homogeneous(-1));
        assert_eq!(d(T2).order().unwrap(), 1);

        assert!(TargetElement::zero(T2).order().is_err());
    }

    #[test]
    fn gr_keeps_top_order() {
        // t∂ + v_0 is order-homogeneous: both terms survive
        let x = t(T2).mul(&d(T2)).unwrap().add(&v(T2, 0)).unwrap();
        let g = x.gr().unwrap();
        assert_eq!(g.num_terms(), 2);
        assert_eq!(g.to_string(), "t*d + v[0]");

        // gr(∂t) = t̄∂̄: the order-0 correction drops
        let g = d(T2).mul(&t(T2)).unwrap().gr().unwrap();
        assert_eq!(g.to_string(), "t*d");
    }

    #[test]
    fn quotient_kills_high_modes() {
        let x = v(TargetContext::N(3), 0)
            .mul(&v(TargetContext::N(3), 2))
            .unwrap();
        assert!(x.quotient(1).unwrap().is_zero());

        let y = t(TargetContext::N(3))
            .mul(&d(TargetContext::N(3)))
            .unwrap()
            .add(&v(TargetContext::N(3), 1))
            .unwrap();
        let q = y.quotient(2).unwrap();
        assert_eq!(q.context(), T2);
        assert_eq!(q.to_string(), "t*d + v[1]");

        assert!(y.quotient(4).is_err());
    }

    #[test]
    fn l_membership_and_pi() {
        let dd = d(TINF).pow(2).unwrap();
        assert!(dd.in_l().unwrap());

        let td = t(TINF).mul(&d(TINF)).unwrap();
        assert!(!td.in_l().unwrap());

        let x = d(TINF)
            .mul(&v(TINF, 5))
            .unwrap()
            .add(&v(TINF, 2).scale(&Rational::from_int(7)))
            .unwrap();
        assert!(x.in_l().unwrap());

        // in_l agrees with [∂, x] = 0
        for e in [&dd, &td, &x] {
            let commutes = d(TINF).commutator(e).unwrap().is_zero();
            assert_eq!(commutes, e.in_l().unwrap());
        }

        // Π(t·x) = 0 when x has no t-free part after normalization
        let tx = t(TINF).mul(&x).unwrap();
        assert!(tx.pi_projection().unwrap().is_zero());
        assert!(t(T2).pi_projection().is_err());
    }

    #[test]
    fn c_bar_values() {
        // c̄_{-1} = ∂̄ (empty mode sum)
        let c = c_bar(-1, T2).unwrap();
        assert_eq!(c.to_string(), "d");

        // n=2, i=1: t̄²∂̄ + 2 t̄ v̄_0 + v̄_1
        let c = c_bar(1, T2).unwrap();
        assert_eq!(c.to_string(), "t^2*d + 2*t*v[0] + v[1]");
    }

    #[test]
    fn phi_map_values() {
        // φ(c̄_{-1}) = ∂̄
        assert_eq!(
            phi_map(&c_bar(-1, TargetContext::N(3)).unwrap())
                .unwrap()
                .to_string(),
            "d"
        );
        // φ(c̄_i) = 0 for 0 ≤ i ≤ n-1, here n=3, i=1
        assert!(phi_map(&c_bar(1, TargetContext::N(3)).unwrap())
            .unwrap()
            .is_zero());
        // φ(c̄_{n+2}) = (-1)^n C(n+2, n) t̄^{n+3} ∂̄, n=2: 6 t̄^5 ∂̄
        assert_eq!(
            phi_map(&c_bar(4, T2).unwrap()).unwrap().to_string(),
            "6*t^5*d"
        );
    }
}
