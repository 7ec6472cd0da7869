//! The tensor density module F_λ = 𝕜[t] with the action
//! f∂ · g = f g' + λ f' g, so on the basis e_a · t^b = (b + λ(a+1)) t^{a+b}.
//!
//! The density parameter λ is kept symbolic: polynomials live in 𝕜[λ][t]
//! and a concrete λ is substituted at the end when wanted. This lets the
//! annihilation checks (e.g. Ω^4_{3,-1} killing all of F_λ) run once for a
//! generic parameter instead of per sampled value.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::witt::WittElement;

/// An element of 𝕜[λ][t], stored sparsely by (t-exponent, λ-exponent).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensityPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl DensityPoly {
    pub fn zero() -> Self {
        DensityPoly::default()
    }

    pub fn one() -> Self {
        Self::t_power(0)
    }

    /// The basis vector t^b.
    pub fn t_power(b: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((b, 0), Rational::one());
        DensityPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DensityPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Substitutes a concrete value for λ.
    pub fn eval_lambda(&self, lambda: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(b, l), c) in &self.terms {
            let mut scaled = c.clone();
            for _ in 0..l {
                scaled *= lambda;
            }
            out.add_term((b, 0), scaled);
        }
        out
    }
}

impl fmt::Display for DensityPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(b, l), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if l > 0 {
                write!(f, "*lambda^{l}")?;
            }
            if b > 0 {
                write!(f, "*t^{b}")?;
            }
        }
        Ok(())
    }
}

/// Action of the generator e_a on 𝕜[λ][t] with symbolic λ:
/// e_a · t^b = (b + λ(a+1)) t^{a+b}.
pub fn act_generator_symbolic(a: i64, p: &DensityPoly) -> Result<DensityPoly> {
    if a < -1 {
        return Err(Error::IndexOutOfRange(a, -1));
    }
    let mut out = DensityPoly::zero();
    for (&(b, l), c) in &p.terms {
        let new_exp = a + b as i64;
        if new_exp < 0 {
            // only e_{-1}·t^0 reaches exponent -1, and there b + λ(a+1) = 0
            debug_assert!(b == 0 && a == -1);
            continue;
        }
        let new_exp = new_exp as u32;
        // b-part: stays at the same λ power
        out.add_term((new_exp, l), c * &Rational::from_int(b as i64));
        // λ(a+1)-part: raises the λ power
        out.add_term((new_exp, l + 1), c * &Rational::from_int(a + 1));
    }
    Ok(out)
}

/// Action of a whole enveloping-algebra element with symbolic λ: a PBW word
/// acts letterwise, rightmost letter first.
pub fn act_element_symbolic(x: &WittElement, p: &DensityPoly) -> Result<DensityPoly> {
    let mut out = DensityPoly::zero();
    for (mono, coeff) in x.terms() {
        let mut acc = p.clone();
        for &a in mono.word().iter().rev() {
            acc = act_generator_symbolic(a, &acc)?;
        }
        out = out.add(&acc.scale(coeff));
    }
    Ok(out)
}

/// The density action at a concrete parameter λ, on a polynomial in t.
pub fn density_action(lambda: &Rational, generator_index: i64, p: &DensityPoly) -> Result<DensityPoly> {
    Ok(act_generator_symbolic(generator_index, p)?.eval_lambda(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentiator::omega_mks;

    #[test]
    fn e0_acts_diagonally() {
        // e_0 · t^b = (b + λ) t^b
        let p = DensityPoly::t_power(3);
        let acted = act_generator_symbolic(0, &p).unwrap();
        let mut expected = DensityPoly::zero();
        expected.add_term((3, 0), Rational::from_int(3));
        expected.add_term((3, 1), Rational::one());
        assert_eq!(acted, expected);
    }

    #[test]
    fn adjoint_is_lambda_minus_one() {
        // at λ = -1 the module is the adjoint representation:
        // e_a · t^{b+1} = (b - a) t^{a+b+1}, matching [e_a, e_b] = (b-a) e_{a+b}
        let minus_one = Rational::from_int(-1);
        for a in -1..=4i64 {
            for b in -1..=4i64 {
                let p = DensityPoly::t_power((b + 1) as u32);
                let acted = density_action(&minus_one, a, &p).unwrap();
                let expected =
                    DensityPoly::t_power((a + b + 1) as u32).scale(&Rational::from_int(b - a));
                assert_eq!(acted, expected, "a={a}, b={b}");
            }
        }
    }

    #[test]
    fn omega4_annihilates_generic_density_module() {
        // Ω^4_{3,-1} generates ker Ψ_1 and kills every F_λ; check on t^j
        // with symbolic λ
        let omega = omega_mks(4, 3, -1).unwrap();
        for j in 0..=8u32 {
            let acted = act_element_symbolic(&omega, &DensityPoly::t_power(j)).unwrap();
            assert!(acted.is_zero(), "Omega^4_(3,-1) failed to kill t^{j}: {acted}");
        }
    }
}
