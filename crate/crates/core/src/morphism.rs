//! The orbit homomorphisms Ψ_n: U(W_{≥-1}) → T_n and Ψ_∞: U(W_{≥-1}) → T_∞,
//! their associated graded maps Φ_n, Φ_∞ on the symmetric algebra, and the
//! step operators S (on U(W_{≥-1})) and Ψ_S (on T_∞).
//!
//! On a generator e_k (the field t^{k+1}∂), Ψ sends
//!     e_k ↦ t^{k+1}∂ + Σ_i C(k+1, i+1) t^{k-i} v_i,
//! the sum running over 0 ≤ i ≤ n-1 in T_n and over all i with a nonzero
//! binomial in T_∞. Products map letterwise: Ψ is a ring homomorphism, a
//! fact the verification suites check independently.

use crate::commutative::{CommAlphabet, CommutativeElement};
use crate::error::{Error, Result};
use crate::scalar::{binomial_rat, Rational};
use crate::target::{c_bar, TargetContext, TargetElement, TargetMonomial};
use crate::witt::WittElement;

/// Image of the generator e_k under Ψ in the given target.
pub fn psi_generator(ctx: TargetContext, k: i64) -> Result<TargetElement> {
    if k < -1 {
        return Err(Error::IndexOutOfRange(k, -1));
    }
    let mut terms = vec![(
        TargetMonomial::new((k + 1) as u32, 1, []),
        Rational::one(),
    )];
    let i_end: i64 = match ctx {
        TargetContext::N(n) => n as i64,
        // C(k+1, i+1) vanishes once i > k
        TargetContext::Infinity => k + 1,
    };
    for i in 0..i_end {
        let coeff = binomial_rat(k + 1, (i + 1) as u32);
        if coeff.is_zero() {
            continue;
        }
        assert!(k - i >= 0, "negative t exponent with nonzero binomial");
        terms.push((
            TargetMonomial::new((k - i) as u32, 0, [(i as u32, 1)]),
            coeff,
        ));
    }
    TargetElement::from_terms(ctx, terms)
}

/// The orbit homomorphism: each PBW letter maps through `psi_generator`
/// and the images multiply in the target.
pub fn psi(ctx: TargetContext, a: &WittElement) -> Result<TargetElement> {
    let mut out = TargetElement::zero(ctx);
    for (mono, coeff) in a.terms() {
        let mut image = TargetElement::scalar(ctx, coeff.clone());
        for i in mono.word() {
            image = image.mul(&psi_generator(ctx, i)?)?;
        }
        out = out.add(&image)?;
    }
    Ok(out)
}

/// The associated graded map Φ: S(W_{≥-1}) → gr T, sending ē_k ↦ c̄_k
/// multiplicatively.
pub fn phi(ctx: TargetContext, x: &CommutativeElement) -> Result<CommutativeElement> {
    if x.alphabet() != CommAlphabet::SymWitt {
        return Err(Error::AlphabetMismatch(
            x.alphabet().to_string(),
            CommAlphabet::SymWitt.to_string(),
        ));
    }
    let alphabet = CommAlphabet::GrTarget(ctx);
    let mut out = CommutativeElement::zero(alphabet);
    for (mono, coeff) in x.terms() {
        let mut image = CommutativeElement::scalar(alphabet, coeff.clone());
        for &(atom, mult) in mono.exponents() {
            let i = match atom {
                crate::commutative::CommAtom::EBar(i) => i,
                _ => unreachable!("alphabet checked above"),
            };
            image = image.mul(&c_bar(i, ctx)?.pow(mult)?)?;
        }
        out = out.add(&image)?;
    }
    Ok(out)
}

/// The step operator on U(W_{≥-1}):
/// S(x) = 4[e_2, [e_0, x]] + 2[e_2, x] - 3[e_1, [e_1, x]].
pub fn step_s(x: &WittElement) -> WittElement {
    let e0 = WittElement::generator(0).expect("valid index");
    let e1 = WittElement::generator(1).expect("valid index");
    let e2 = WittElement::generator(2).expect("valid index");
    let term1 = e2.commutator(&e0.commutator(x)).scale(&Rational::from_int(4));
    let term2 = e2.commutator(x).scale(&Rational::from_int(2));
    let term3 = e1.commutator(&e1.commutator(x)).scale(&Rational::from_int(3));
    &(&term1 + &term2) - &term3
}

/// Which generator image the middle commutator of Ψ_S uses. `E2` mirrors
/// the step operator S (middle term 2[Ψ_∞(e_2), x]) and makes
/// Ψ_∞ ∘ S = Ψ_S ∘ Ψ_∞ hold; `E0` is the variant with 2[Ψ_∞(e_0), x].
/// Both are provided so the discrepancy can be inspected rather than
/// silently patched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StepVariant {
    #[default]
    E2,
    E0,
}

/// The step operator on T_∞:
/// Ψ_S(x) = 4[c_2, [c_0, x]] + 2[c_m, x] - 3[c_1, [c_1, x]],
/// where c_i = Ψ_∞(e_i) and the middle letter m is chosen by `variant`.
pub fn step_psi_s(variant: StepVariant, x: &TargetElement) -> Result<TargetElement> {
    if x.context() != TargetContext::Infinity {
        return Err(Error::ContextMismatch(
            x.context().to_string(),
            TargetContext::Infinity.to_string(),
        ));
    }
    let c0 = psi_generator(TargetContext::Infinity, 0)?;
    let c1 = psi_generator(TargetContext::Infinity, 1)?;
    let c2 = psi_generator(TargetContext::Infinity, 2)?;
    let middle = match variant {
        StepVariant::E2 => &c2,
        StepVariant::E0 => &c0,
    };
    let term1 = c2.commutator(&c0.commutator(x)?)?.scale(&Rational::from_int(4));
    let term2 = middle.commutator(x)?.scale(&Rational::from_int(2));
    let term3 = c1.commutator(&c1.commutator(x)?)?.scale(&Rational::from_int(3));
    term1.add(&term2)?.sub(&term3)
}

/// The t-free closed form of Ψ_∞(Ω^{2n}_{2n-1,-1}):
/// Σ_{j=1}^{2n-1} (-1)^j C(2n,j) e_{2n-1-j} e_{j-1} + 2 ∂e_{2n-1} + 2n e_{2n-2}.
/// The element carries no t letter, so it lies in L.
pub fn psi_infty_omega_closed_form(n: u32) -> TargetElement {
    assert!(n >= 1, "closed form requires n >= 1");
    let n = n as i64;
    let mut terms: Vec<(TargetMonomial, Rational)> = Vec::new();
    for j in 1..=(2 * n - 1) {
        let mut coeff = binomial_rat(2 * n, j as u32);
        if j % 2 == 1 {
            coeff = -coeff;
        }
        let (a, b) = ((2 * n - 1 - j) as u32, (j - 1) as u32);
        let word = if a <= b { [(a, 1), (b, 1)] } else { [(b, 1), (a, 1)] };
        terms.push((TargetMonomial::new(0, 0, word), coeff));
    }
    terms.push((
        TargetMonomial::new(0, 1, [((2 * n - 1) as u32, 1)]),
        Rational::from_int(2),
    ));
    terms.push((
        TargetMonomial::new(0, 0, [((2 * n - 2) as u32, 1)]),
        Rational::from_int(2 * n),
    ));
    TargetElement::from_terms(TargetContext::Infinity, terms)
        .expect("modes are valid in T_infinity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentiator::{omega, DifferentiatorKey};
    use crate::grading::Degree;

    fn e(i: i64) -> WittElement {
        WittElement::generator(i).unwrap()
    }

    #[test]
    fn psi_generator_images() {
        // Ψ_n(e_{-1}) = ∂ for any n
        for ctx in [TargetContext::N(0), TargetContext::N(3), TargetContext::Infinity] {
            assert_eq!(psi_generator(ctx, -1).unwrap().to_string(), "d");
        }
        // Ψ_2(e_1) = t²∂ + 2t v_0 + v_1
        assert_eq!(
            psi_generator(TargetContext::N(2), 1).unwrap().to_string(),
            "t^2*d + 2*t*v[0] + v[1]"
        );
        // Ψ_0(e_k) = t^{k+1}∂
        assert_eq!(
            psi_generator(TargetContext::N(0), 2).unwrap().to_string(),
            "t^3*d"
        );
    }

    #[test]
    fn psi_image_of_omega4() {
        // Ψ_2(Ω^4_{3,-1}) = 6 v_1²
        let omega4 = omega(&DifferentiatorKey::new(4, 3, -1).unwrap());
        let image = psi(TargetContext::N(2), &omega4).unwrap();
        assert_eq!(image.to_string(), "6*v[1]^2");
    }

    #[test]
    fn psi_respects_degree_and_order() {
        let x = &(&e(1) * &e(2)) + &e(3);
        let image = psi(TargetContext::N(3), &x).unwrap();
        assert_eq!(image.degree().unwrap(), Degree::Homogeneous(3));
        assert!(image.order().unwrap() <= x.order().unwrap());
    }

    #[test]
    fn step_operator_on_omega() {
        // S(Ω^0_{-1,-1}) = 12 Ω^2_{1,-1}
        let x = omega(&DifferentiatorKey::new(0, -1, -1).unwrap());
        let expected = omega(&DifferentiatorKey::new(2, 1, -1).unwrap())
            .scale(&Rational::from_int(12));
        assert_eq!(step_s(&x), expected);

        // S(Ω^2_{1,-1}) = -2 Ω^4_{3,-1}
        let x = omega(&DifferentiatorKey::new(2, 1, -1).unwrap());
        let expected = omega(&DifferentiatorKey::new(4, 3, -1).unwrap())
            .scale(&Rational::from_int(-2));
        assert_eq!(step_s(&x), expected);

        // S(1) = 0
        assert!(step_s(&WittElement::one()).is_zero());
    }

    #[test]
    fn step_psi_s_matches_s_through_psi() {
        // Ψ_S(Ψ_∞(x)) = Ψ_∞(S(x)) for x = Ω^0_{-1,-1}, with the e_2 middle
        let x = omega(&DifferentiatorKey::new(0, -1, -1).unwrap());
        let lhs = step_psi_s(
            StepVariant::E2,
            &psi(TargetContext::Infinity, &x).unwrap(),
        )
        .unwrap();
        let rhs = psi(TargetContext::Infinity, &step_s(&x)).unwrap();
        assert_eq!(lhs, rhs);

        // the printed variant differs on the same input
        let e0_variant = step_psi_s(
            StepVariant::E0,
            &psi(TargetContext::Infinity, &x).unwrap(),
        )
        .unwrap();
        assert_ne!(e0_variant, rhs);

        // Ψ_S(1) = 0 in both variants
        for variant in [StepVariant::E2, StepVariant::E0] {
            assert!(step_psi_s(variant, &TargetElement::one(TargetContext::Infinity))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn closed_form_matches_psi_image() {
        for n in 1..=3u32 {
            let key = DifferentiatorKey::new(2 * n, 2 * n as i64 - 1, -1).unwrap();
            let image = psi(TargetContext::Infinity, &omega(&key)).unwrap();
            assert_eq!(psi_infty_omega_closed_form(n), image, "n = {n}");
            assert!(image.in_l().unwrap());
        }
    }

    #[test]
    fn phi_sends_ebar_to_cbar() {
        let ctx = TargetContext::N(2);
        let e1bar = CommutativeElement::atom(CommAlphabet::SymWitt, crate::CommAtom::EBar(1))
            .unwrap();
        assert_eq!(phi(ctx, &e1bar).unwrap(), c_bar(1, ctx).unwrap());
        let em1 = CommutativeElement::atom(CommAlphabet::SymWitt, crate::CommAtom::EBar(-1))
            .unwrap();
        assert_eq!(phi(ctx, &em1).unwrap().to_string(), "d");
    }
}
