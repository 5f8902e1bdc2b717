//! The symmetric algebra S(ĝ₋) on the negative-mode generators, the adjoint
//! action on it, and the symmetrization map ω : S(ĝ₋) → U(ĝ₋).
//!
//! Monomials are multisets of negative-mode letters, stored as words sorted
//! by the U(ĝ) PBW key so that an S-monomial and its PBW counterpart are the
//! same `Word` value.  ω sends a monomial of degree n to the average of its
//! n! orderings; it is computed by the recursion
//! `ω(M) = (1/n) Σ_X mult_M(X) · X · ω(M ∖ X)` (sum over distinct letters),
//! memoized per monomial.

use crate::affine::AffineGen;
use crate::envelope::{add_term, word_weight, Engine, PbwOrder, Terms, UElement, Word};
use crate::g2::LieElement;
use crate::rational::{q, qr, Q};
use num::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

/// An element of S(ĝ₋): finitely many commutative monomials in negative-mode
/// letters with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SElement {
    terms: Terms,
}

fn sort_word(mut letters: Vec<AffineGen>) -> Word {
    letters.sort_by_key(|&l| PbwOrder::Uhat.key(l));
    letters.into_boxed_slice()
}

impl SElement {
    pub fn zero() -> Self {
        SElement::default()
    }

    pub fn one() -> Self {
        let mut terms = Terms::new();
        terms.insert(Vec::new().into_boxed_slice(), q(1));
        SElement { terms }
    }

    /// A single monomial (letters in any order; they commute).
    pub fn mono(letters: &[AffineGen]) -> Self {
        for l in letters {
            assert!(
                l.is_negative(),
                "S(g_-) monomials admit only negative-mode letters, got {l}"
            );
        }
        let mut terms = Terms::new();
        terms.insert(sort_word(letters.to_vec()), q(1));
        SElement { terms }
    }

    pub fn from_terms(terms: Terms) -> Self {
        SElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, letters: &[AffineGen]) -> Q {
        let w = sort_word(letters.to_vec());
        self.terms.get(&w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return SElement::zero();
        }
        SElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &SElement) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SElement) -> Self {
        self.add(&other.scaled(&q(-1)))
    }

    pub fn mul(&self, other: &SElement) -> Self {
        let mut terms = Terms::new();
        for (wx, cx) in &self.terms {
            for (wy, cy) in &other.terms {
                let mut w: Vec<AffineGen> = Vec::with_capacity(wx.len() + wy.len());
                w.extend_from_slice(wx);
                w.extend_from_slice(wy);
                add_term(&mut terms, sort_word(w), cx * cy);
            }
        }
        SElement { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = SElement::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Common ĝ-weight of all monomials, if homogeneous.
    pub fn weight(&self) -> Option<crate::affine::QhatWeight> {
        let mut common = None;
        for w in self.terms.keys() {
            let wt = word_weight(w.iter());
            match &common {
                None => common = Some(wt),
                Some(c) if *c == wt => {}
                Some(_) => return None,
            }
        }
        Some(common.unwrap_or_else(crate::affine::QhatWeight::zero))
    }

    /// Adjoint action of one affine letter, extended as a derivation.  The
    /// result must stay inside S(ĝ₋); acting with letters that bracket out of
    /// the negative modes is a caller error.
    pub fn ad_letter(&self, letter: AffineGen) -> SElement {
        let mut terms = Terms::new();
        for (w, cf) in &self.terms {
            for i in 0..w.len() {
                for (l, cb) in crate::affine::affine_bracket(letter, w[i]) {
                    assert!(
                        l.is_negative(),
                        "adjoint action left S(g_-): [{letter}, {}] hits {l}",
                        w[i]
                    );
                    let mut nw: Vec<AffineGen> = w.to_vec();
                    nw[i] = l;
                    add_term(&mut terms, sort_word(nw), cf * &cb);
                }
            }
        }
        SElement { terms }
    }

    /// Adjoint action of a finite Lie algebra element at mode 0.
    pub fn ad_lie(&self, x: &LieElement) -> SElement {
        let mut acc = SElement::zero();
        for (g, c) in x.terms() {
            acc = acc.add(&self.ad_letter(AffineGen::x(g, 0)).scaled(c));
        }
        acc
    }
}

/// Memoizing symmetrization ω : S(ĝ₋) → U(ĝ₋) over one U(ĝ) engine.
pub struct Symmetrizer<'a> {
    engine: &'a Engine,
    memo: RefCell<HashMap<Word, UElement>>,
}

impl<'a> Symmetrizer<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        assert_eq!(
            engine.order(),
            PbwOrder::Uhat,
            "symmetrization targets the U(ghat) PBW presentation"
        );
        Symmetrizer {
            engine,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn omega_word(&self, word: &[AffineGen]) -> UElement {
        if let Some(hit) = self.memo.borrow().get(word) {
            return hit.clone();
        }
        let n = word.len();
        let result = if n <= 1 {
            self.engine.word(word)
        } else {
            // Group the multiset by distinct letter.
            let mut mult: BTreeMap<AffineGen, u32> = BTreeMap::new();
            for &l in word {
                *mult.entry(l).or_insert(0) += 1;
            }
            let mut acc = UElement::zero(self.engine.order());
            for (&letter, &m) in &mult {
                let mut rest: Vec<AffineGen> = word.to_vec();
                let pos = rest.iter().position(|&l| l == letter).unwrap();
                rest.remove(pos);
                let left = self.engine.word(&[letter]);
                let tail = self.omega_word(&rest);
                acc = acc.add(&self.engine.mul(&left, &tail).scaled(&q(m as i64)));
            }
            acc.scaled(&qr(1, n as i64))
        };
        self.memo
            .borrow_mut()
            .insert(word.to_vec().into_boxed_slice(), result.clone());
        result
    }

    pub fn omega(&self, s: &SElement) -> UElement {
        let mut acc = UElement::zero(self.engine.order());
        for (w, c) in s.terms() {
            acc = acc.add(&self.omega_word(w).scaled(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::Gen::*;

    fn x(g: crate::g2::Gen, m: i32) -> AffineGen {
        AffineGen::x(g, m)
    }

    #[test]
    fn s_mul_is_commutative_and_merges_exponents() {
        let a = SElement::mono(&[x(E21, -1)]);
        let b = SElement::mono(&[x(E31, -1), x(E31, -2)]);
        assert_eq!(a.mul(&b), b.mul(&a));
        let sq = a.mul(&a);
        assert_eq!(sq.coefficient(&[x(E21, -1), x(E21, -1)]), q(1));
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn s_ad_is_a_derivation() {
        let f = SElement::mono(&[x(E31, -1), x(E11, -1)]);
        let g = SElement::mono(&[x(E21, -2)]);
        let l = x(E10, 0);
        let lhs = f.mul(&g).ad_letter(l);
        let rhs = f.ad_letter(l).mul(&g).add(&f.mul(&g.ad_letter(l)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_of_single_letters_and_commuting_product() {
        let eng = Engine::new(PbwOrder::Uhat);
        let sym = Symmetrizer::new(&eng);
        let s = SElement::mono(&[x(E21, -1)]);
        assert_eq!(sym.omega(&s), eng.word(&[x(E21, -1)]));
        // Commuting letters: omega is just the ordered product.
        let t = SElement::mono(&[x(E32, -1), x(E32, -2)]);
        assert_eq!(sym.omega(&t), eng.word(&[x(E32, -1), x(E32, -2)]));
    }

    #[test]
    fn omega_averages_noncommuting_letters() {
        // ω(X·Y) = (X·Y + Y·X)/2 in U for a two-letter monomial.
        let eng = Engine::new(PbwOrder::Uhat);
        let sym = Symmetrizer::new(&eng);
        let (a, b) = (x(E21, -1), x(F10, -1));
        let s = SElement::mono(&[a, b]);
        let manual = eng
            .word(&[a, b])
            .add(&eng.word(&[b, a]))
            .scaled(&qr(1, 2));
        assert_eq!(sym.omega(&s), manual);
        // Leading term is the PBW monomial itself.
        assert_eq!(sym.omega(&s).coefficient(&[a, b]), q(1));
    }

    #[test]
    fn omega_is_ad_equivariant() {
        // ad(X)∘ω = ω∘ad(X) — symmetrization intertwines the adjoint actions.
        let eng = Engine::new(PbwOrder::Uhat);
        let sym = Symmetrizer::new(&eng);
        let s = SElement::mono(&[x(E31, -1), x(E11, -1)])
            .add(&SElement::mono(&[x(E21, -1), x(E21, -1)]).scaled(&qr(1, 3)));
        for raiser in [x(E10, 0), x(E01, 0), x(F10, -1)] {
            let lhs = sym.omega(&s.ad_letter(raiser));
            let rhs = eng.ad_letter(raiser, &sym.omega(&s));
            assert_eq!(lhs, rhs, "omega not equivariant under ad({raiser})");
        }
    }

    #[test]
    #[should_panic(expected = "negative-mode letters")]
    fn s_monomials_reject_nonnegative_modes() {
        let _ = SElement::mono(&[x(E21, 0)]);
    }
}
