//! The vacuum module N(k,0) over ĝ and its C₂ subspace.
//!
//! N(k,0) is induced from the trivial module of g[t] ⊕ ℂK, so a PBW basis is
//! given by canonically ordered negative-mode words applied to the vacuum
//! vector 𝟙, with K acting by the level.  The level is kept **symbolic**: a
//! vacuum term is a negative word together with a power of K, so one
//! computation covers all levels at once and can be specialized exactly.
//!
//! C₂ = span{ X(−m)·y·𝟙 : m ≥ 2, y ∈ U(ĝ₋) } is level-independent (no
//! central terms arise among negative modes); reduction modulo C₂ is done
//! per weight space with an exact echelon basis of the spanning vectors.

use crate::affine::{AffineGen, QhatWeight};
use crate::envelope::{word_weight, Engine, PbwOrder, UElement, Word};
use crate::g2::GENERATORS;
use crate::linalg::{add_scaled, Echelon, SparseVec};
use crate::rational::{q, Q};
use num::Zero;
use std::collections::BTreeMap;

/// A basis vector of N(k,0) with a symbolic power of the level: the class of
/// `word · K^kpow · 𝟙` where `word` is a canonical negative-mode PBW word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct VacMono {
    pub word: Word,
    pub kpow: u32,
}

impl VacMono {
    pub fn vacuum() -> Self {
        VacMono {
            word: Vec::new().into_boxed_slice(),
            kpow: 0,
        }
    }
}

/// An element of N(k,0) with the level kept symbolic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VacuumVector {
    terms: BTreeMap<VacMono, Q>,
}

impl VacuumVector {
    pub fn zero() -> Self {
        VacuumVector::default()
    }

    /// The vacuum vector 𝟙.
    pub fn vacuum() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(VacMono::vacuum(), q(1));
        VacuumVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<VacMono, Q> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &[AffineGen], kpow: u32) -> Q {
        let key = VacMono {
            word: word.to_vec().into_boxed_slice(),
            kpow,
        };
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mono: VacMono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    pub fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return VacuumVector::zero();
        }
        VacuumVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &VacuumVector) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VacuumVector) -> Self {
        self.add(&other.scaled(&q(-1)))
    }

    /// Specialize the level: fold `K^p → k^p` into the coefficients.
    pub fn at_level(&self, k: &Q) -> Self {
        let mut out = VacuumVector::zero();
        for (m, c) in &self.terms {
            let mut kp = q(1);
            for _ in 0..m.kpow {
                kp *= k;
            }
            out.add_term(
                VacMono {
                    word: m.word.clone(),
                    kpow: 0,
                },
                c * kp,
            );
        }
        out
    }

    /// Common ĝ-weight of all terms (K is weight zero), if homogeneous.
    pub fn weight(&self) -> Option<QhatWeight> {
        let mut common = None;
        for m in self.terms.keys() {
            let wt = word_weight(m.word.iter());
            match &common {
                None => common = Some(wt),
                Some(c) if *c == wt => {}
                Some(_) => return None,
            }
        }
        Some(common.unwrap_or_else(QhatWeight::zero))
    }

    /// Strip the symbolic level off a level-independent vector.
    pub fn word_vector(&self) -> SparseVec<Word> {
        let mut out = SparseVec::new();
        for (m, c) in &self.terms {
            assert_eq!(m.kpow, 0, "vector carries K powers; specialize first");
            out.insert(m.word.clone(), c.clone());
        }
        out
    }
}

/// Act with `x ∈ U(ĝ)` on a vacuum-module vector.
///
/// Straightens `x`'s words against each term's word and projects onto the
/// PBW basis of N(k,0): canonical words containing a letter of mode ≥ 0 kill
/// the term (they annihilate 𝟙), and K-letters accumulate into the symbolic
/// level power.
pub fn act(engine: &Engine, x: &UElement, v: &VacuumVector) -> VacuumVector {
    assert_eq!(engine.order(), PbwOrder::Uhat, "vacuum action needs the U(ghat) order");
    assert_eq!(x.order(), PbwOrder::Uhat, "vacuum action needs the U(ghat) order");
    let mut out = VacuumVector::zero();
    for (wx, cx) in x.terms() {
        for (mv, cv) in v.terms() {
            let mut word: Vec<AffineGen> = Vec::with_capacity(wx.len() + mv.word.len());
            word.extend_from_slice(wx);
            word.extend_from_slice(&mv.word);
            let scale = cx * cv;
            for (w, c) in engine.straighten(&word).iter() {
                if let Some(mono) = project_word(w, mv.kpow) {
                    out.add_term(mono, &scale * c);
                }
            }
        }
    }
    out
}

/// `x · 𝟙`.
pub fn act_on_vacuum(engine: &Engine, x: &UElement) -> VacuumVector {
    act(engine, x, &VacuumVector::vacuum())
}

/// Project one canonical U(ĝ) word onto the N(k,0) basis.
fn project_word(w: &[AffineGen], base_kpow: u32) -> Option<VacMono> {
    let mut kpow = base_kpow;
    let mut neg: Vec<AffineGen> = Vec::with_capacity(w.len());
    for &l in w {
        match l {
            AffineGen::K => kpow += 1,
            AffineGen::X(_, m) if m < 0 => neg.push(l),
            // Canonical order puts mode ≥ 0 letters rightmost, so they hit
            // the vacuum first and kill the whole monomial.
            AffineGen::X(_, _) => return None,
        }
    }
    Some(VacMono {
        word: neg.into_boxed_slice(),
        kpow,
    })
}

/// All canonical PBW words in U(ĝ₋) with root weight `(wa, wb)` (coefficients
/// on α, β) and total depth `wd` — a basis of the corresponding weight space
/// of N(k,0).
pub fn basis_minus(wa: i64, wb: i64, wd: u32) -> Vec<Word> {
    // Letters sorted exactly as the Uhat PBW order sorts them.
    let mut letters: Vec<AffineGen> = Vec::new();
    for depth in 1..=wd {
        for g in GENERATORS {
            letters.push(AffineGen::x(g, -(depth as i32)));
        }
    }
    letters.sort_by_key(|&l| PbwOrder::Uhat.key(l));

    let mut out: Vec<Word> = Vec::new();
    let mut current: Vec<AffineGen> = Vec::new();
    rec_basis(&letters, 0, wa, wb, wd, &mut current, &mut out);
    out
}

fn rec_basis(
    letters: &[AffineGen],
    start: usize,
    wa: i64,
    wb: i64,
    wd: u32,
    current: &mut Vec<AffineGen>,
    out: &mut Vec<Word>,
) {
    if wd == 0 {
        if wa == 0 && wb == 0 {
            out.push(current.clone().into_boxed_slice());
        }
        return;
    }
    // Each remaining depth unit changes the α-coefficient by at most 3 and
    // the β-coefficient by at most 2.
    if wa.unsigned_abs() > 3 * wd as u64 || wb.unsigned_abs() > 2 * wd as u64 {
        return;
    }
    for i in start..letters.len() {
        let AffineGen::X(g, m) = letters[i] else {
            unreachable!()
        };
        let depth = (-m) as u32;
        if depth > wd {
            continue;
        }
        let root = g.root();
        current.push(letters[i]);
        rec_basis(
            letters,
            i,
            wa - i64::from(root.c_alpha),
            wb - i64::from(root.c_beta),
            wd - depth,
            current,
            out,
        );
        current.pop();
    }
}

/// Echelon basis of the weight-(wa, wb, depth wd) slice of C₂, spanned by
/// `X(−m)·y·𝟙` with `m ≥ 2`.  Level-independent: straightening negative
/// words never produces K.
pub fn c2_echelon(engine: &Engine, wa: i64, wb: i64, wd: u32) -> Echelon<Word> {
    assert_eq!(engine.order(), PbwOrder::Uhat);
    let mut ech = Echelon::new();
    for m in 2..=wd as i32 {
        for g in GENERATORS {
            let head = AffineGen::x(g, -m);
            let root = g.root();
            for tail in basis_minus(wa - i64::from(root.c_alpha), wb - i64::from(root.c_beta), wd - m as u32) {
                let mut word: Vec<AffineGen> = Vec::with_capacity(tail.len() + 1);
                word.push(head);
                word.extend_from_slice(&tail);
                let mut vec: SparseVec<Word> = SparseVec::new();
                for (w, c) in engine.straighten(&word).iter() {
                    debug_assert!(w.iter().all(|l| l.is_negative()));
                    add_scaled(&mut vec, &[(w.clone(), c.clone())].into_iter().collect(), &q(1));
                }
                ech.insert(vec);
            }
        }
    }
    ech
}

/// Reduce a homogeneous vacuum vector modulo C₂ (per symbolic level power;
/// the C₂ pivots carry no level dependence, so the reduction is valid for
/// every level simultaneously).
pub fn reduce_c2(ech: &Echelon<Word>, v: &VacuumVector) -> VacuumVector {
    let mut strata: BTreeMap<u32, SparseVec<Word>> = BTreeMap::new();
    for (m, c) in v.terms() {
        strata
            .entry(m.kpow)
            .or_default()
            .insert(m.word.clone(), c.clone());
    }
    let mut out = VacuumVector::zero();
    for (kpow, vec) in strata {
        for (word, c) in ech.reduce(&vec) {
            out.add_term(VacMono { word, kpow }, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::Gen::{self, *};

    fn x(g: Gen, m: i32) -> AffineGen {
        AffineGen::x(g, m)
    }

    #[test]
    fn mode_zero_and_positive_letters_kill_the_vacuum() {
        let eng = Engine::new(PbwOrder::Uhat);
        for g in GENERATORS {
            assert!(act_on_vacuum(&eng, &eng.word(&[x(g, 0)])).is_zero());
            assert!(act_on_vacuum(&eng, &eng.word(&[x(g, 1)])).is_zero());
        }
    }

    #[test]
    fn k_acts_as_symbolic_level() {
        let eng = Engine::new(PbwOrder::Uhat);
        let v = act_on_vacuum(&eng, &eng.word(&[AffineGen::K, AffineGen::K]));
        assert_eq!(v.coefficient(&[], 2), q(1));
        assert_eq!(v.num_terms(), 1);
        let specialized = v.at_level(&crate::rational::qr(-5, 3));
        assert_eq!(specialized.coefficient(&[], 0), crate::rational::qr(25, 9));
    }

    #[test]
    fn central_term_from_lowering_then_raising() {
        // F21(1)·E21(−1)·𝟙 = (3K − H21(0))·𝟙 + E21(−1)F21(1)·𝟙 = 3K𝟙.
        let eng = Engine::new(PbwOrder::Uhat);
        let xel = eng.word(&[x(F21, 1), x(E21, -1)]);
        let v = act_on_vacuum(&eng, &xel);
        assert_eq!(v.coefficient(&[], 1), q(3));
        assert_eq!(v.num_terms(), 1);
    }

    #[test]
    fn action_is_associative_with_mul() {
        let eng = Engine::new(PbwOrder::Uhat);
        let a = eng.word(&[x(F32, 1)]);
        let b = eng.word(&[x(E31, -1), x(E11, -1)]);
        let via_mul = act_on_vacuum(&eng, &eng.mul(&a, &b));
        let via_act = act(&eng, &a, &act_on_vacuum(&eng, &b));
        assert_eq!(via_mul, via_act);
        assert!(!via_mul.is_zero());
    }

    #[test]
    fn basis_minus_hand_counts() {
        // Depth 1, weight 3α+2β: only E32(−1).
        let b1 = basis_minus(3, 2, 1);
        assert_eq!(b1.len(), 1);
        assert_eq!(&*b1[0], &[x(E32, -1)][..]);
        // Depth 2, weight 3α+2β: E32(−2), E32(−1)H01(−1), E32(−1)H21(−1),
        // E31(−1)E01(−1), E21(−1)E11(−1).
        let b2 = basis_minus(3, 2, 2);
        assert_eq!(b2.len(), 5);
        // Vacuum weight space at depth 0.
        assert_eq!(basis_minus(0, 0, 0).len(), 1);
        assert!(basis_minus(1, 0, 0).is_empty());
    }

    #[test]
    fn basis_minus_words_are_canonical_and_weighted() {
        for w in basis_minus(2, 2, 3) {
            assert!(PbwOrder::Uhat.is_sorted(&w));
            let wt = word_weight(w.iter());
            assert_eq!((wt.c_alpha, wt.c_beta, wt.c_delta), (2, 2, -3));
        }
    }

    #[test]
    fn w_element_lies_in_c2() {
        // w = E31(−1)E32(−2) − E32(−1)E31(−2) has weight (6α+3β, depth 3).
        let eng = Engine::new(PbwOrder::Uhat);
        let w_el = eng
            .word(&[x(E31, -1), x(E32, -2)])
            .sub(&eng.word(&[x(E32, -1), x(E31, -2)]));
        let v = act_on_vacuum(&eng, &w_el);
        let ech = c2_echelon(&eng, 6, 3, 3);
        assert!(reduce_c2(&ech, &v).is_zero());
        // But neither single term is in C₂ alone… E31(−1)E32(−2)·𝟙 is
        // (it has a depth-2 letter and a spanning vector starts with it
        // reversed); instead check a depth-1-only vector survives.
        let a2 = eng.word(&[x(E21, -1), x(E21, -1)]);
        let va = act_on_vacuum(&eng, &a2);
        let ech_a = c2_echelon(&eng, 4, 2, 2);
        assert_eq!(reduce_c2(&ech_a, &va), va);
    }

    #[test]
    fn c2_reduction_is_idempotent_and_linear() {
        let eng = Engine::new(PbwOrder::Uhat);
        let ech = c2_echelon(&eng, 6, 3, 3);
        let v = act_on_vacuum(&eng, &eng.word(&[x(E31, -1), x(E32, -2)]));
        let r = reduce_c2(&ech, &v);
        assert_eq!(reduce_c2(&ech, &r), r);
        let v2 = v.scaled(&q(7));
        assert_eq!(reduce_c2(&ech, &v2), r.scaled(&q(7)));
    }
}
