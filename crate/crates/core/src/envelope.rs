//! PBW-ordered arithmetic in the universal enveloping algebras U(ĝ₋), U(ĝ),
//! and U(g).
//!
//! Elements are sparse rational linear combinations of PBW monomials — words
//! of affine generators sorted by a fixed [`PbwOrder`].  The [`Engine`] turns
//! arbitrary words into PBW normal form by commutator rewriting
//! (`xy = yx + [x,y]`, applied to the leftmost out-of-order adjacent pair),
//! memoizing intermediate words.  The rewriting is confluent, so the normal
//! form is independent of reduction order; the test suite checks this on
//! random words.
//!
//! Three order families are provided:
//!
//! * [`PbwOrder::Uhat`] — mode-major (shallow negative modes first, then `K`,
//!   then mode 0, then positive modes), basis rank within a mode.  This is
//!   the order for U(ĝ) and its subalgebra U(ĝ₋).
//! * [`PbwOrder::Triangular`] — the U(g) order `F's < H's < E's`, basis rank
//!   within each class, so normal forms read off the triangular decomposition
//!   `U(g) = n₋U(g) ⊕ S(h) ⊕ U(g)n₊` directly.
//! * Ideal variants ([`PbwOrder::RightIdeal`] etc.) force one generator to
//!   the far right/left, turning one-sided ideal membership (`x ∈ U(g)·E`,
//!   `x ∈ F·U(g)`) into a per-monomial letter test.

use crate::affine::{affine_bracket, weight_of, AffineGen, QhatWeight};
use crate::g2::Gen;
use crate::rational::{q, Q};
use num::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// A flat word of generators; PBW monomials are words sorted by the ambient
/// order (repeated letters sit adjacent, so a word encodes exponents by
/// run length).
pub type Word = Box<[AffineGen]>;

/// Sparse terms of an element: canonical monomial → nonzero coefficient.
pub type Terms = BTreeMap<Word, Q>;

/// A PBW monomial order on affine generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbwOrder {
    /// Mode-major order for U(ĝ): negative modes (shallowest first) < K <
    /// mode 0 < positive modes; basis rank inside each mode.
    Uhat,
    /// Triangular order for U(g) (mode-0 letters): F < H < E classes,
    /// basis rank inside each class.
    Triangular,
    /// Triangular, with `0` forced maximal: monomials of `x ∈ U(g)·target`
    /// are exactly those whose normal form ends in `target`.
    RightIdeal(Gen),
    /// Triangular, with `0` forced minimal (membership in `target·U(g)`).
    LeftIdeal(Gen),
    /// Triangular with a forced-minimal and a forced-maximal generator.
    TwoSided { lowest: Gen, highest: Gen },
}

type OrderKey = (i16, i32, u8);

impl PbwOrder {
    pub fn key(self, letter: AffineGen) -> OrderKey {
        let AffineGen::X(g, m) = letter else {
            // K is central; it sits between the negative and mode-0 letters
            // in the Uhat order and is never produced under the others.
            return (i16::MIN + 1, 0, 0);
        };
        let rank = g.rank() as u8;
        match self {
            PbwOrder::Uhat => {
                if m < 0 {
                    (i16::MIN, -m, rank)
                } else if m == 0 {
                    (0, 0, rank)
                } else {
                    (1, m, rank)
                }
            }
            PbwOrder::Triangular => (g.triangular_class() as i16, 0, rank),
            PbwOrder::RightIdeal(target) => {
                if g == target {
                    (9, 0, rank)
                } else {
                    (g.triangular_class() as i16, 0, rank)
                }
            }
            PbwOrder::LeftIdeal(target) => {
                if g == target {
                    (-1, 0, rank)
                } else {
                    (g.triangular_class() as i16, 0, rank)
                }
            }
            PbwOrder::TwoSided { lowest, highest } => {
                if g == lowest {
                    (-1, 0, rank)
                } else if g == highest {
                    (9, 0, rank)
                } else {
                    (g.triangular_class() as i16, 0, rank)
                }
            }
        }
    }

    pub fn is_sorted(self, word: &[AffineGen]) -> bool {
        word.windows(2).all(|w| self.key(w[0]) <= self.key(w[1]))
    }
}

/// An element of an enveloping algebra in PBW normal form, tagged with the
/// order (= algebra presentation) it is canonical for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UElement {
    order: PbwOrder,
    terms: Terms,
}

impl UElement {
    pub fn zero(order: PbwOrder) -> Self {
        UElement {
            order,
            terms: Terms::new(),
        }
    }

    pub fn order(&self) -> PbwOrder {
        self.order
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

    /// Coefficient of a PBW monomial (the projection π_y onto the span of a
    /// basis monomial, up to the monomial itself).
    pub fn coefficient(&self, monomial: &[AffineGen]) -> Q {
        self.terms.get(monomial).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return UElement::zero(self.order);
        }
        UElement {
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &UElement) -> Self {
        assert_eq!(self.order, other.order, "algebra marker mismatch in add");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UElement) -> Self {
        self.add(&other.scaled(&q(-1)))
    }

    /// Common weight of all monomials, if the element is weight-homogeneous
    /// (the zero element is homogeneous of every weight; returns zero).
    pub fn weight(&self) -> Option<QhatWeight> {
        homogeneous_weight(self.terms.keys().map(|w| &**w))
    }
}

pub(crate) fn add_term(terms: &mut Terms, word: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(word) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

pub fn word_weight<'a>(word: impl IntoIterator<Item = &'a AffineGen>) -> QhatWeight {
    let mut acc = QhatWeight::zero();
    for l in word {
        acc = acc.add(&weight_of(*l));
    }
    acc
}

fn homogeneous_weight<'a>(
    words: impl IntoIterator<Item = &'a [AffineGen]>,
) -> Option<QhatWeight> {
    let mut common: Option<QhatWeight> = None;
    for w in words {
        let wt = word_weight(w.iter());
        match &common {
            None => common = Some(wt),
            Some(c) if *c == wt => {}
            Some(_) => return None,
        }
    }
    Some(common.unwrap_or_else(QhatWeight::zero))
}

/// Straightening engine for one PBW order.
///
/// Holds a memo table of straightened words.  The memo is interior-mutable
/// and not thread-safe; concurrent callers each construct their own engine
/// (construction is free — the memo warms up as it is used).
pub struct Engine {
    order: PbwOrder,
    memo: RefCell<HashMap<Word, Rc<Terms>>>,
}

impl Engine {
    pub fn new(order: PbwOrder) -> Self {
        Engine {
            order,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> PbwOrder {
        self.order
    }

    /// The unit element 1 (empty monomial).
    pub fn one(&self) -> UElement {
        let mut terms = Terms::new();
        terms.insert(Vec::new().into_boxed_slice(), q(1));
        UElement {
            order: self.order,
            terms,
        }
    }

    /// PBW normal form of a single word.
    pub fn straighten(&self, word: &[AffineGen]) -> Rc<Terms> {
        if let Some(hit) = self.memo.borrow().get(word) {
            return Rc::clone(hit);
        }
        let key = |l: AffineGen| self.order.key(l);
        let bad = word
            .windows(2)
            .position(|w| key(w[0]) > key(w[1]));
        let result = match bad {
            None => {
                let mut t = Terms::new();
                t.insert(word.to_vec().into_boxed_slice(), q(1));
                Rc::new(t)
            }
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut out = Terms::new();
                // x·y = y·x + [x,y] on the offending adjacent pair.
                let mut swapped: Vec<AffineGen> = word.to_vec();
                swapped.swap(i, i + 1);
                for (w, c) in self.straighten(&swapped).iter() {
                    add_term(&mut out, w.clone(), c.clone());
                }
                for (l, cb) in affine_bracket(a, b) {
                    let mut shorter: Vec<AffineGen> = Vec::with_capacity(word.len() - 1);
                    shorter.extend_from_slice(&word[..i]);
                    shorter.push(l);
                    shorter.extend_from_slice(&word[i + 2..]);
                    for (w, c) in self.straighten(&shorter).iter() {
                        add_term(&mut out, w.clone(), &cb * c);
                    }
                }
                Rc::new(out)
            }
        };
        self.memo
            .borrow_mut()
            .insert(word.to_vec().into_boxed_slice(), Rc::clone(&result));
        result
    }

    /// Canonicalize a raw linear combination of words.
    pub fn canon<I>(&self, raw: I) -> UElement
    where
        I: IntoIterator<Item = (Vec<AffineGen>, Q)>,
    {
        let mut terms = Terms::new();
        for (w, c) in raw {
            if c.is_zero() {
                continue;
            }
            for (m, cm) in self.straighten(&w).iter() {
                add_term(&mut terms, m.clone(), &c * cm);
            }
        }
        UElement {
            order: self.order,
            terms,
        }
    }

    /// Element from a single word with coefficient 1.
    pub fn word(&self, letters: &[AffineGen]) -> UElement {
        self.canon([(letters.to_vec(), q(1))])
    }

    /// Associative product in PBW normal form.
    pub fn mul(&self, x: &UElement, y: &UElement) -> UElement {
        assert_eq!(x.order, self.order, "algebra marker mismatch in mul (lhs)");
        assert_eq!(y.order, self.order, "algebra marker mismatch in mul (rhs)");
        let mut terms = Terms::new();
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                let mut w: Vec<AffineGen> = Vec::with_capacity(wx.len() + wy.len());
                w.extend_from_slice(wx);
                w.extend_from_slice(wy);
                let cxy = cx * cy;
                for (m, c) in self.straighten(&w).iter() {
                    add_term(&mut terms, m.clone(), &cxy * c);
                }
            }
        }
        UElement {
            order: self.order,
            terms,
        }
    }

    pub fn pow(&self, x: &UElement, n: u32) -> UElement {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `x·y − y·x`.
    pub fn commutator(&self, x: &UElement, y: &UElement) -> UElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// Adjoint action `[letter, f]`, extended as a derivation over monomials.
    pub fn ad_letter(&self, letter: AffineGen, f: &UElement) -> UElement {
        assert_eq!(f.order, self.order, "algebra marker mismatch in ad");
        let mut terms = Terms::new();
        for (w, cf) in &f.terms {
            for i in 0..w.len() {
                for (l, cb) in affine_bracket(letter, w[i]) {
                    let mut nw: Vec<AffineGen> = w.to_vec();
                    nw[i] = l;
                    let scale = cf * &cb;
                    for (m, c) in self.straighten(&nw).iter() {
                        add_term(&mut terms, m.clone(), &scale * c);
                    }
                }
            }
        }
        UElement {
            order: self.order,
            terms,
        }
    }

    /// Adjoint action of a finite Lie algebra element placed at `mode`.
    pub fn ad_lie(&self, x: &crate::g2::LieElement, mode: i32, f: &UElement) -> UElement {
        let mut acc = UElement::zero(self.order);
        for (g, c) in x.terms() {
            acc = acc.add(&self.ad_letter(AffineGen::x(g, mode), f).scaled(c));
        }
        acc
    }

    /// Iterated adjoint `ad(letter)^n f`.
    pub fn ad_power(&self, letter: AffineGen, n: u32, f: &UElement) -> UElement {
        let mut acc = f.clone();
        for _ in 0..n {
            acc = self.ad_letter(letter, &acc);
        }
        acc
    }
}

/// Run-length view of a canonical word: `(generator, exponent)` pairs.
pub fn run_length(word: &[AffineGen]) -> Vec<(AffineGen, u32)> {
    let mut out: Vec<(AffineGen, u32)> = Vec::new();
    for &l in word {
        match out.last_mut() {
            Some((g, e)) if *g == l => *e += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Scale helper on raw term maps (used by modules that manipulate `Terms`
/// directly, e.g. the vacuum-module code).
pub fn scale_terms(terms: &Terms, s: &Q) -> Terms {
    if s.is_zero() {
        return Terms::new();
    }
    terms.iter().map(|(w, c)| (w.clone(), c * s)).collect()
}

/// `1` as a `Q` — convenience re-export for callers building coefficients.
pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::Gen::*;

    fn x(g: Gen, m: i32) -> AffineGen {
        AffineGen::x(g, m)
    }

    #[test]
    fn straighten_ordered_word_is_identity() {
        let eng = Engine::new(PbwOrder::Uhat);
        let w = [x(E32, -1), x(E31, -1), x(E32, -2)];
        assert!(PbwOrder::Uhat.is_sorted(&w));
        let e = eng.word(&w);
        assert_eq!(e.num_terms(), 1);
        assert_eq!(e.coefficient(&w), q(1));
    }

    #[test]
    fn straighten_commuting_pair_reorders() {
        // E32(-2) and E32(-1) commute; straightening only reorders.
        let eng = Engine::new(PbwOrder::Uhat);
        let e = eng.word(&[x(E32, -2), x(E32, -1)]);
        assert_eq!(e.num_terms(), 1);
        assert_eq!(e.coefficient(&[x(E32, -1), x(E32, -2)]), q(1));
    }

    #[test]
    fn straighten_single_commutator_ug() {
        // E10·F10 = F10·E10 + H10 in the triangular order.
        let eng = Engine::new(PbwOrder::Triangular);
        let e = eng.word(&[x(E10, 0), x(F10, 0)]);
        assert_eq!(e.coefficient(&[x(F10, 0), x(E10, 0)]), q(1));
        assert_eq!(e.coefficient(&[x(H01, 0)]), crate::rational::qr(-3, 2));
        assert_eq!(e.coefficient(&[x(H21, 0)]), crate::rational::qr(1, 2));
        assert_eq!(e.num_terms(), 3);
        // The reverse word is already sorted.
        let f = eng.word(&[x(F10, 0), x(E10, 0)]);
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn mul_matches_straighten_and_is_associative() {
        let eng = Engine::new(PbwOrder::Uhat);
        let a = eng.word(&[x(E21, -1)]);
        let f = eng.word(&[x(F32, 1)]);
        let h = eng.word(&[x(H01, 0)]);
        let afh = eng.mul(&eng.mul(&a, &f), &h);
        let afh2 = eng.mul(&a, &eng.mul(&f, &h));
        assert_eq!(afh, afh2);
        let direct = eng.word(&[x(E21, -1), x(F32, 1), x(H01, 0)]);
        assert_eq!(afh, direct);
    }

    #[test]
    fn central_term_appears_in_uhat() {
        // F21(1)·E21(-1) = E21(-1)·F21(1) - H21(0) + 3K
        // (negative modes sort first, so the left side is the unsorted word).
        let eng = Engine::new(PbwOrder::Uhat);
        let e = eng.word(&[x(F21, 1), x(E21, -1)]);
        assert_eq!(e.coefficient(&[AffineGen::K]), q(3));
        assert_eq!(e.coefficient(&[x(H21, 0)]), q(-1));
        assert_eq!(e.coefficient(&[x(E21, -1), x(F21, 1)]), q(1));
        assert_eq!(e.num_terms(), 3);
        // The reversed word is already in normal form.
        let f = eng.word(&[x(E21, -1), x(F21, 1)]);
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn ad_is_a_derivation() {
        let eng = Engine::new(PbwOrder::Uhat);
        let f = eng.word(&[x(E31, -1), x(E11, -1)]);
        let g = eng.word(&[x(E21, -1), x(E21, -2)]);
        let l = x(E10, 0);
        let lhs = eng.ad_letter(l, &eng.mul(&f, &g));
        let rhs = eng
            .mul(&eng.ad_letter(l, &f), &g)
            .add(&eng.mul(&f, &eng.ad_letter(l, &g)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_ad_acts_by_weight() {
        let eng = Engine::new(PbwOrder::Uhat);
        let f = eng.word(&[x(E31, -1), x(E11, -1), x(F32, -2)]);
        let wt = f.weight().unwrap();
        // H21 pairing: <xa+yb, H21> = <., (2a+b)^v>.
        let got = eng.ad_letter(x(H21, 0), &f);
        let pairing = crate::g2::RootVector::new(wt.c_alpha, wt.c_beta)
            .pair_coroot(crate::g2::RootVector::THETA_SHORT);
        assert_eq!(got, f.scaled(&pairing));
    }

    #[test]
    fn weight_homogeneity_detection() {
        let eng = Engine::new(PbwOrder::Uhat);
        let a = eng.word(&[x(E21, -1)]);
        let b = eng.word(&[x(E31, -1), x(E11, -1)]);
        assert!(a.weight().is_some());
        assert!(a.add(&a).weight().is_some());
        assert_eq!(a.add(&b).weight(), None);
        assert_eq!(
            b.weight().unwrap(),
            QhatWeight::theta_delta_line(2),
        );
    }

    #[test]
    fn run_length_round_trip() {
        let w = [x(E31, -1), x(E31, -1), x(E11, -1)];
        assert_eq!(run_length(&w), vec![(x(E31, -1), 2), (x(E11, -1), 1)]);
    }

    #[test]
    #[should_panic(expected = "marker mismatch")]
    fn marker_mismatch_rejected() {
        let uhat = Engine::new(PbwOrder::Uhat);
        let tri = Engine::new(PbwOrder::Triangular);
        let a = uhat.word(&[x(E21, -1)]);
        let b = tri.word(&[x(E21, 0)]);
        let _ = uhat.mul(&a, &b);
    }

    #[test]
    fn right_ideal_order_detects_membership() {
        // F01·E01 ∈ U(g)·E01: every normal-form monomial under the
        // RightIdeal(E01) order must end in E01.
        let eng = Engine::new(PbwOrder::RightIdeal(E01));
        let e = eng.word(&[x(F01, 0), x(E01, 0)]);
        assert!(e
            .terms()
            .keys()
            .all(|w| w.last() == Some(&x(E01, 0))));
        // E01·F01 = F01·E01 + H01 is not in the right ideal: the H01 monomial
        // survives without a trailing E01.
        let f = eng.word(&[x(E01, 0), x(F01, 0)]);
        assert!(f
            .terms()
            .keys()
            .any(|w| w.last() != Some(&x(E01, 0))));
    }
}
