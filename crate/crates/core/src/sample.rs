//! Seeded random elements for the verification suites. Every suite derives
//! its stream from the user seed plus a suite label, so reports are
//! reproducible case by case and independent of scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commutative::{CommAlphabet, CommAtom, CommMonomial, CommutativeElement};
use crate::scalar::Rational;
use crate::target::{TargetContext, TargetElement, TargetMonomial};
use crate::witt::{WittElement, WittMonomial};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A stream derived from `seed` and a label, stable across runs.
    pub fn derive(seed: u64, label: &str) -> Self {
        // FNV-1a over the label, folded into the seed
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        Self::new(seed ^ h)
    }

    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A small nonzero rational coefficient.
    pub fn coefficient(&mut self) -> Rational {
        let mut p = 0;
        while p == 0 {
            p = self.rng.gen_range(-5..=5i64);
        }
        let q = self.rng.gen_range(1..=3i64);
        Rational::new(p, q).expect("q > 0")
    }

    /// A PBW monomial with exactly `order` letters in [-1, max_index].
    pub fn witt_monomial(&mut self, order: u32, max_index: i64) -> WittMonomial {
        let word: Vec<i64> = (0..order).map(|_| self.int_range(-1, max_index)).collect();
        WittMonomial::from_word(&word).expect("indices >= -1")
    }

    /// A PBW monomial whose positive letter indices sum to at most
    /// `positive_budget`, each letter in [-1, max_letter].
    pub fn witt_monomial_with_budget(
        &mut self,
        order: u32,
        max_letter: i64,
        positive_budget: i64,
    ) -> WittMonomial {
        let mut remaining = positive_budget;
        let word: Vec<i64> = (0..order)
            .map(|_| {
                let hi = max_letter.min(remaining).max(0);
                let letter = self.int_range(-1, hi);
                if letter > 0 {
                    remaining -= letter;
                }
                letter
            })
            .collect();
        WittMonomial::from_word(&word).expect("indices >= -1")
    }

    /// A nonzero element of U(W_{≥-1}) with at most `max_terms` terms of
    /// order ≤ max_order and letter indices ≤ max_index.
    pub fn witt_element(&mut self, max_terms: u32, max_order: u32, max_index: i64) -> WittElement {
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let x = WittElement::from_terms((0..terms).map(|_| {
                let order = self.rng.gen_range(0..=max_order);
                (self.witt_monomial(order, max_index), self.coefficient())
            }));
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero element of T_n or T_∞ with bounded exponents and modes.
    pub fn target_element(
        &mut self,
        ctx: TargetContext,
        max_terms: u32,
        max_order: u32,
        max_t: u32,
        max_mode: u32,
    ) -> TargetElement {
        let mode_cap = match ctx {
            TargetContext::N(n) => n.saturating_sub(1).min(max_mode),
            TargetContext::Infinity => max_mode,
        };
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let pairs: Vec<(TargetMonomial, Rational)> = (0..terms)
                .map(|_| {
                    let t_exp = self.rng.gen_range(0..=max_t);
                    let budget = self.rng.gen_range(0..=max_order);
                    let d_exp = self.rng.gen_range(0..=budget);
                    let modes: Vec<(u32, u32)> = (0..budget - d_exp)
                        .map(|_| {
                            if matches!(ctx, TargetContext::N(0)) {
                                (0, 0) // no modes exist in T_0
                            } else {
                                (self.rng.gen_range(0..=mode_cap), 1)
                            }
                        })
                        .filter(|&(_, m)| m > 0)
                        .collect();
                    (TargetMonomial::new(t_exp, d_exp, modes), self.coefficient())
                })
                .collect();
            let x = TargetElement::from_terms(ctx, pairs).expect("modes within context cap");
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero t-free element of T_∞ (hence a member of L).
    pub fn l_element(&mut self, max_terms: u32, max_order: u32, max_mode: u32) -> TargetElement {
        loop {
            let x = self.target_element(TargetContext::Infinity, max_terms, max_order, 0, max_mode);
            if x.in_l().expect("context is T_infinity") {
                return x;
            }
        }
    }

    /// A nonzero polynomial in S(W_{≥-1}).
    pub fn sym_element(&mut self, max_terms: u32, max_order: u32, max_index: i64) -> CommutativeElement {
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let mut x = CommutativeElement::zero(CommAlphabet::SymWitt);
            for _ in 0..terms {
                let order = self.rng.gen_range(0..=max_order);
                let mono = CommMonomial::from_exponents(
                    (0..order).map(|_| (CommAtom::EBar(self.int_range(-1, max_index)), 1)),
                );
                x.add_term(mono, self.coefficient()).expect("valid atoms");
            }
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero polynomial in gr T_n or gr T_∞.
    pub fn gr_target_element(
        &mut self,
        ctx: TargetContext,
        max_terms: u32,
        max_order: u32,
        max_t: u32,
        max_mode: u32,
    ) -> CommutativeElement {
        let alphabet = CommAlphabet::GrTarget(ctx);
        let mode_cap = match ctx {
            TargetContext::N(n) => n.saturating_sub(1).min(max_mode),
            TargetContext::Infinity => max_mode,
        };
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let mut x = CommutativeElement::zero(alphabet);
            for _ in 0..terms {
                let t_exp = self.rng.gen_range(0..=max_t);
                let budget = self.rng.gen_range(0..=max_order);
                let d_exp = self.rng.gen_range(0..=budget);
                let mut exps = vec![(CommAtom::TBar, t_exp), (CommAtom::DBar, d_exp)];
                if !matches!(ctx, TargetContext::N(0)) {
                    exps.extend(
                        (0..budget - d_exp)
                            .map(|_| (CommAtom::VBar(self.rng.gen_range(0..=mode_cap)), 1)),
                    );
                }
                let mono = CommMonomial::from_exponents(exps);
                x.add_term(mono, self.coefficient()).expect("valid atoms");
            }
            if !x.is_zero() {
                return x;
            }
        }
    }
}
