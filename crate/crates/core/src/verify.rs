//! Identity-verification registry.
//!
//! Two batteries of checks back the `verify-structure` and
//! `verify-appendices` commands:
//!
//! * **structure checks** — antisymmetry, the full Jacobi sweep, Cartan
//!   pairings, Chevalley integrality, the quoted bracket regressions, the
//!   independent table rederivation, invariant-form properties, and the
//!   adjoint actions on the named elements.  They run against an injectable
//!   bracket rule so a deliberately corrupted table is caught and named.
//! * **appendix checks** — the C₂-subspace properties and congruence
//!   battery in the vacuum module N(k,0) (checks `C2`, `A.1`–`A.4`) and the
//!   adjoint-power battery in U(g) (checks `B.1`–`B.7`).
//!
//! Where a stated identity is transcription-damaged, the verifier does not
//! silently patch it: the congruence is established against the recomputed
//! normal form, the deviation is pinned exactly, and an [`IdentityAudit`]
//! records the stated form, the recomputed form, and the reading under
//! which verification proceeded.  [`known_deviations`] lists every audit
//! entry; each is backed by a frozen test somewhere in this crate.

use crate::affine::{AffineGen, QhatWeight};
use crate::envelope::{word_weight, Engine, PbwOrder, UElement, Word};
use crate::g2::{
    bracket_gens, coroot, invariant_form_gens, Gen, LieElement, RootVector, GENERATORS,
};
use crate::invariants::{named_elements, uvw_product, NamedElements};
use crate::linalg::Echelon;
use crate::poly::HPoly;
use crate::rational::{binomial, factorial, q, q_str, qr, Q};
use crate::vacuum::{act, act_on_vacuum, c2_echelon, reduce_c2, VacMono, VacuumVector};
use crate::zhu::{finite_images, pi0, FiniteImages};
use num::{Signed, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::time::Instant;

use Gen::*;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    /// Counts, residuals and diagnostics; on failure, enough to locate the
    /// offending identity.
    pub detail: String,
    pub millis: u128,
}

/// A recorded deviation between a stated identity and exact recomputation.
#[derive(Clone, Debug)]
pub struct IdentityAudit {
    pub id: &'static str,
    /// The stated form, transcribed verbatim (ASCII).
    pub stated: String,
    /// What exact arithmetic yields.
    pub computed: String,
    /// The reading under which verification proceeds.
    pub reading: String,
}

/// Result of an appendix verification run.
#[derive(Debug)]
pub struct AppendixReport {
    pub checks: Vec<CheckOutcome>,
    pub audits: Vec<IdentityAudit>,
}

impl AppendixReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn at(g: Gen, m: i32) -> AffineGen {
    AffineGen::x(g, m)
}

/// Linear combination of explicit words, straightened by `eng`.
fn combo(eng: &Engine, terms: &[(Q, &[AffineGen])]) -> UElement {
    eng.canon(terms.iter().map(|(c, w)| (w.to_vec(), c.clone())))
}

/// Re-straighten an element under a different PBW order.
fn recanon(eng: &Engine, e: &UElement) -> UElement {
    eng.canon(e.terms().iter().map(|(w, c)| (w.to_vec(), c.clone())))
}

// ====================================================================
// structure checks
// ====================================================================

/// A bracket rule on generators; [`standard_bracket`] is the frozen table,
/// and tests may inject a corrupted rule to exercise the failure paths.
pub type BracketRule = dyn Fn(Gen, Gen) -> LieElement;

pub fn standard_bracket(x: Gen, y: Gen) -> LieElement {
    LieElement::from_terms(bracket_gens(x, y))
}

/// The harness hook: the standard table with `[a, b]` (and `[b, a]`)
/// sign-flipped.
pub fn bracket_with_flipped_sign(a: Gen, b: Gen) -> impl Fn(Gen, Gen) -> LieElement {
    move |x, y| {
        let v = standard_bracket(x, y);
        if (x, y) == (a, b) || (x, y) == (b, a) {
            v.scaled(&q(-1))
        } else {
            v
        }
    }
}

fn bracket_of(rule: &BracketRule, x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            out = out.add(&rule(gx, gy).scaled(&(cx.clone() * cy)));
        }
    }
    out
}

pub fn verify_structure() -> Vec<CheckOutcome> {
    verify_structure_with(&standard_bracket)
}

pub fn verify_structure_with(rule: &BracketRule) -> Vec<CheckOutcome> {
    let checks: [(&'static str, &'static str, fn(&BracketRule) -> (bool, String)); 8] = [
        ("antisymmetry", "[x,y] = -[y,x] on all generator pairs", check_antisymmetry),
        ("jacobi", "Jacobi identity over all 14^3 generator triples", check_jacobi),
        ("cartan-pairings", "[h, x_gamma] = <gamma, h> x_gamma for both Cartan letters", check_cartan_pairings),
        ("chevalley-integrality", "integral structure constants; [e,f] pairs land on coroots", check_chevalley_integrality),
        ("quoted-brackets", "frozen bracket regressions ([E01,E31] = -E32 and coroot rows)", check_quoted_brackets),
        ("rederivation", "independent rederivation reproduces the frozen table", check_rederivation),
        ("invariant-form", "normalized invariant form: values, symmetry, invariance", check_invariant_form),
        ("adjoint-actions", "raising-operator actions on the named elements a, b, c, w, u, v", |_| check_adjoint_actions()),
    ];
    checks
        .into_iter()
        .map(|(id, title, f)| {
            let start = Instant::now();
            let (passed, detail) = f(rule);
            CheckOutcome { id, title, passed, detail, millis: start.elapsed().as_millis() }
        })
        .collect()
}

fn check_antisymmetry(rule: &BracketRule) -> (bool, String) {
    for x in GENERATORS {
        if !rule(x, x).is_zero() {
            return (false, format!("[{},{}] != 0", x.name(), x.name()));
        }
        for y in GENERATORS {
            if !rule(x, y).add(&rule(y, x)).is_zero() {
                return (false, format!("[{},{}] + [{},{}] != 0", x.name(), y.name(), y.name(), x.name()));
            }
        }
    }
    (true, "196 ordered pairs".into())
}

fn check_jacobi(rule: &BracketRule) -> (bool, String) {
    for x in GENERATORS {
        let lx = LieElement::generator(x);
        for y in GENERATORS {
            let ly = LieElement::generator(y);
            let xy = rule(x, y);
            for z in GENERATORS {
                let lz = LieElement::generator(z);
                let total = bracket_of(rule, &xy, &lz)
                    .add(&bracket_of(rule, &rule(y, z), &lx))
                    .add(&bracket_of(rule, &rule(z, x), &ly));
                if !total.is_zero() {
                    return (
                        false,
                        format!(
                            "[[{x},{y}],{z}] + [[{y},{z}],{x}] + [[{z},{x}],{y}] != 0",
                            x = x.name(),
                            y = y.name(),
                            z = z.name()
                        ),
                    );
                }
            }
        }
    }
    (true, "2744 triples".into())
}

fn check_cartan_pairings(rule: &BracketRule) -> (bool, String) {
    // H01 = coroot of beta, H21 = coroot of 2a+b (the short dominant root).
    let cartan = [(H01, RootVector::new(0, 1)), (H21, RootVector::new(2, 1))];
    for (h, hroot) in cartan {
        for x in GENERATORS {
            if x.triangular_class() == 1 {
                if !rule(h, x).is_zero() {
                    return (false, format!("[{},{}] != 0", h.name(), x.name()));
                }
                continue;
            }
            let pairing = x.root().pair_coroot(hroot);
            let want = LieElement::generator(x).scaled(&pairing);
            if rule(h, x) != want {
                return (
                    false,
                    format!("[{},{}] != {}*{}", h.name(), x.name(), q_str(&pairing), x.name()),
                );
            }
        }
    }
    (
        true,
        "28 pairings; coroot coordinates H10 = (H21 - 3 H01)/2, H11 = H10 + 3 H01, \
         H31 = H10 + H01, H32 = H10 + 2 H01"
            .into(),
    )
}

fn check_chevalley_integrality(rule: &BracketRule) -> (bool, String) {
    for x in GENERATORS {
        for y in GENERATORS {
            let v = rule(x, y);
            let opposite_roots = x.triangular_class() != 1
                && y.triangular_class() != 1
                && x.root().add(y.root()).is_zero();
            if opposite_roots {
                let pos = if x.root().is_positive_root() { x.root() } else { y.root() };
                let h = coroot(pos).expect("positive root has a coroot");
                let want = if x.root().is_positive_root() { h } else { h.scaled(&q(-1)) };
                if v != want {
                    return (false, format!("[{},{}] is not the expected coroot", x.name(), y.name()));
                }
                continue;
            }
            for (g, c) in v.terms() {
                if !c.is_integer() || c.numer().abs() > 3.into() {
                    return (
                        false,
                        format!("[{},{}] has non-Chevalley coefficient {} on {}", x.name(), y.name(), q_str(c), g.name()),
                    );
                }
            }
        }
    }
    (true, "all mixed-root constants integral with |c| <= 3".into())
}

fn check_quoted_brackets(rule: &BracketRule) -> (bool, String) {
    let e01_e31 = rule(E01, E31);
    let want = LieElement::generator(E32).scaled(&q(-1));
    if e01_e31 != want {
        return (false, "bracket [E01,E31] != -E32".into());
    }
    for root in [RootVector::new(1, 0), RootVector::new(0, 1), RootVector::new(2, 1), RootVector::new(3, 2)] {
        let e = Gen::for_root(root).expect("positive root generator");
        let f = Gen::for_root(root.neg()).expect("negative root generator");
        if rule(e, f) != coroot(root).expect("coroot") {
            return (false, format!("[{},{}] is not the coroot of its root", e.name(), f.name()));
        }
    }
    (true, "[E01,E31] = -E32; four [e,f] coroot rows".into())
}

fn check_rederivation(rule: &BracketRule) -> (bool, String) {
    let table = match crate::g2::rederive_table() {
        Ok(t) => t,
        Err(e) => return (false, format!("rederivation failed: {e}")),
    };
    let n = table.len();
    for ((x, y), want) in table {
        if rule(x, y) != want {
            return (false, format!("rederived table disagrees at [{},{}]", x.name(), y.name()));
        }
    }
    (true, format!("{n} rederived entries match"))
}

fn check_invariant_form(rule: &BracketRule) -> (bool, String) {
    // frozen normalization: (x_gamma | x_-gamma) = 2/(gamma,gamma), i.e. 1 on
    // long roots and 3 on short ones; (theta|theta) = 2.
    let frozen = [
        (E32, F32, q(1)),
        (E31, F31, q(1)),
        (E01, F01, q(1)),
        (E10, F10, q(3)),
        (E11, F11, q(3)),
        (E21, F21, q(3)),
        (H01, H01, q(2)),
        (H21, H21, q(6)),
        (H01, H21, q(0)),
    ];
    for (x, y, want) in frozen {
        if invariant_form_gens(x, y) != want {
            return (false, format!("({}|{}) != {}", x.name(), y.name(), q_str(&want)));
        }
    }
    for x in GENERATORS {
        for y in GENERATORS {
            if invariant_form_gens(x, y) != invariant_form_gens(y, x) {
                return (false, format!("form not symmetric at ({},{})", x.name(), y.name()));
            }
            for z in GENERATORS {
                // (x | [y,z]) = ([x,y] | z)
                let lhs: Q = rule(y, z)
                    .terms()
                    .map(|(g, c)| c.clone() * invariant_form_gens(x, g))
                    .sum();
                let rhs: Q = rule(x, y)
                    .terms()
                    .map(|(g, c)| c.clone() * invariant_form_gens(g, z))
                    .sum();
                if lhs != rhs {
                    return (
                        false,
                        format!("(x|[y,z]) != ([x,y]|z) at ({},{},{})", x.name(), y.name(), z.name()),
                    );
                }
            }
        }
    }
    (true, "9 frozen values; symmetry and invariance over all triples".into())
}

fn check_adjoint_actions() -> (bool, String) {
    let eng = Engine::new(PbwOrder::Uhat);
    let named = named_elements(&eng);
    let e31m = eng.word(&[at(E31, -1)]);
    let cases: [(&str, UElement, UElement); 4] = [
        ("E10.a = -3 E31(-1)", eng.ad_letter(at(E10, 0), &named.a_u), e31m.scaled(&q(-3))),
        ("E10.b = -2 E31(-1) a", eng.ad_letter(at(E10, 0), &named.b_u), eng.mul(&e31m, &named.a_u).scaled(&q(-2))),
        ("E10.c = E31(-1) b", eng.ad_letter(at(E10, 0), &named.c_u), eng.mul(&e31m, &named.b_u)),
        ("E10.w = 0", eng.ad_letter(at(E10, 0), &named.w_u), UElement::zero(eng.order())),
    ];
    for (label, got, want) in cases {
        if got != want {
            return (false, format!("{label} fails"));
        }
    }
    for (label, elem) in [
        ("a", &named.a_u),
        ("b", &named.b_u),
        ("c", &named.c_u),
        ("w", &named.w_u),
        ("u", &named.u_u),
        ("v", &named.v_u),
    ] {
        if !eng.ad_letter(at(E01, 0), elem).is_zero() {
            return (false, format!("E01.{label} != 0"));
        }
    }
    for (label, elem) in [("u", &named.u_u), ("v", &named.v_u), ("w", &named.w_u)] {
        if !eng.ad_letter(at(E10, 0), elem).is_zero() {
            return (false, format!("E10.{label} != 0"));
        }
    }
    (true, "4 lowering-chain actions; E01 kills a,b,c,w; E10 and E01 kill u,v,w".into())
}

// ====================================================================
// shared fixtures for the appendix batteries
// ====================================================================

struct Lab {
    uhat: Engine,
    ug: Engine,
    named: NamedElements,
    finite: FiniteImages,
    c2: RefCell<BTreeMap<(i64, i64, u32), Rc<Echelon<Word>>>>,
}

impl Lab {
    fn new() -> Lab {
        let uhat = Engine::new(PbwOrder::Uhat);
        let ug = Engine::new(PbwOrder::Triangular);
        let named = named_elements(&uhat);
        let finite = finite_images(&ug);
        Lab { uhat, ug, named, finite, c2: RefCell::new(BTreeMap::new()) }
    }

    fn echelon(&self, wa: i64, wb: i64, wd: u32) -> Rc<Echelon<Word>> {
        let mut cache = self.c2.borrow_mut();
        cache
            .entry((wa, wb, wd))
            .or_insert_with(|| Rc::new(c2_echelon(&self.uhat, wa, wb, wd)))
            .clone()
    }

    /// Reduce a weight-homogeneous vacuum vector modulo the C₂-subspace at
    /// its own weight (all K-powers share the word weight).
    fn reduce(&self, v: &VacuumVector) -> VacuumVector {
        if v.is_zero() {
            return VacuumVector::zero();
        }
        let w = v.weight().expect("C₂ reduction requires a weight-homogeneous vector");
        let ech = self.echelon(
            i64::from(w.c_alpha),
            i64::from(w.c_beta),
            u32::try_from(-w.c_delta).expect("vacuum vectors sit at negative depth"),
        );
        reduce_c2(&ech, v)
    }

    fn image(&self, x: &UElement) -> VacuumVector {
        act_on_vacuum(&self.uhat, x)
    }

    fn congruent(&self, lhs: &UElement, rhs: &VacuumVector) -> bool {
        self.reduce(&self.image(lhs).sub(rhs)).is_zero()
    }
}

/// a(-1)-shifted named words used throughout the A battery.
struct A2Words {
    f32_1: UElement,
    e10: UElement,
    e32f01: UElement,
    e31h01: UElement,
    e31h21: UElement,
}

impl A2Words {
    fn new(lab: &Lab) -> A2Words {
        let eng = &lab.uhat;
        A2Words {
            f32_1: eng.word(&[at(F32, 1)]),
            e10: eng.word(&[at(E10, -1)]),
            e32f01: eng.word(&[at(E32, -1), at(F01, -1)]),
            e31h01: eng.word(&[at(E31, -1), at(H01, -1)]),
            e31h21: eng.word(&[at(E31, -1), at(H21, -1)]),
        }
    }

    /// E31(-1)H(-1) for H = c01·H01 + c21·H21.
    fn e31h(&self, c01: Q, c21: Q) -> UElement {
        self.e31h01.scaled(&c01).add(&self.e31h21.scaled(&c21))
    }
}

// ====================================================================
// the C2 / A battery
// ====================================================================

fn check_c2_properties(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.uhat;

    // (i) U(g^-)·C2 stays in C2: push four echelon rows of the (4,2,2)
    // component with three depth-1 letters and reduce at the shifted weight.
    let ech = lab.echelon(4, 2, 2);
    let rows: Vec<VacuumVector> = ech
        .rows()
        .take(4)
        .map(|(_, row)| {
            let mut v = VacuumVector::zero();
            for (w, c) in row {
                v.add_term(VacMono { word: w.clone(), kpow: 0 }, c.clone());
            }
            v
        })
        .collect();
    let mut stability = 0;
    for letter in [at(E21, -1), at(H01, -1), at(F01, -1)] {
        let x = eng.word(&[letter]);
        for row in &rows {
            if !lab.reduce(&act(eng, &x, row)).is_zero() {
                return (false, format!("{letter}·C2 escapes C2 at weight (4,2,2)"));
            }
            stability += 1;
        }
    }

    // (ii) w.1 lies in C2.
    if !lab.reduce(&lab.image(&lab.named.w_u)).is_zero() {
        return (false, "w.1 is not in C2".into());
    }

    // (iii) fg.1 = gf.1 mod C2 on all named pairs.
    let named: [(&str, &UElement); 6] = [
        ("a", &lab.named.a_u),
        ("b", &lab.named.b_u),
        ("c", &lab.named.c_u),
        ("w", &lab.named.w_u),
        ("u", &lab.named.u_u),
        ("v", &lab.named.v_u),
    ];
    let mut commuted = 0;
    for (n1, f) in named {
        for (n2, g) in named {
            let comm = eng.commutator(f, g);
            if comm.is_zero() {
                continue;
            }
            if !lab.reduce(&lab.image(&comm)).is_zero() {
                return (false, format!("[{n1},{n2}].1 is not in C2"));
            }
            commuted += 1;
        }
    }
    (
        true,
        format!("{stability} stability products; w.1 in C2; {commuted} commutators in C2"),
    )
}

fn check_a1(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.uhat;
    let w = A2Words::new(lab);
    let half = qr(1, 2);

    // [u, F32(1)] = -(K + 5/3) E10(-1) - E31(-1)F21(0) - 2/3 E21(-1)F11(0)
    //               + E11(-1)F01(0) + E10(-1)H32(0)
    let lhs_u = eng.commutator(&lab.named.u_u, &w.f32_1);
    let rhs_u = combo(
        eng,
        &[
            (q(-1), &[at(E10, -1), AffineGen::K]),
            (qr(-5, 3), &[at(E10, -1)]),
            (q(-1), &[at(E31, -1), at(F21, 0)]),
            (qr(-2, 3), &[at(E21, -1), at(F11, 0)]),
            (q(1), &[at(E11, -1), at(F01, 0)]),
            (half.clone(), &[at(E10, -1), at(H01, 0)]),
            (half.clone(), &[at(E10, -1), at(H21, 0)]),
        ],
    );
    if lhs_u != rhs_u {
        return (false, "[u, F32(1)] expansion fails".into());
    }

    // [w, F32(1)] = -E32(-2)F01(0) + E32(-1)F01(-1) - E31(-2)H32(0)
    //               + E31(-1)H32(-1) + K E31(-2)
    let lhs_w = eng.commutator(&lab.named.w_u, &w.f32_1);
    let rhs_w = combo(
        eng,
        &[
            (q(-1), &[at(E32, -2), at(F01, 0)]),
            (q(1), &[at(E32, -1), at(F01, -1)]),
            (qr(-1, 2), &[at(E31, -2), at(H01, 0)]),
            (qr(-1, 2), &[at(E31, -2), at(H21, 0)]),
            (half.clone(), &[at(E31, -1), at(H01, -1)]),
            (half.clone(), &[at(E31, -1), at(H21, -1)]),
            (q(1), &[at(E31, -2), AffineGen::K]),
        ],
    );
    if lhs_w != rhs_w {
        return (false, "[w, F32(1)] expansion fails".into());
    }

    // [v, F32(1)] = -E32(-1)E10(-1)F11(0) - 3E32(-1)F01(-1) + 4/3 E31(-2)
    //               + E31(-1)E11(-1)F11(0) - E31(-1)H11(-1) - 2/3 a^2 F11(0)
    //               - 1/3 a E10(-1) - a [b, F32(1)] - 3 [c, F32(1)]
    let lhs_v = eng.commutator(&lab.named.v_u, &w.f32_1);
    let a2 = eng.mul(&lab.named.a_u, &lab.named.a_u);
    let f11_0 = eng.word(&[at(F11, 0)]);
    let br_b = eng.commutator(&lab.named.b_u, &w.f32_1);
    let br_c = eng.commutator(&lab.named.c_u, &w.f32_1);
    let rhs_v = combo(
        eng,
        &[
            (q(-1), &[at(E32, -1), at(E10, -1), at(F11, 0)]),
            (q(-3), &[at(E32, -1), at(F01, -1)]),
            (qr(4, 3), &[at(E31, -2)]),
            (q(1), &[at(E31, -1), at(E11, -1), at(F11, 0)]),
        ],
    )
    .sub(&w.e31h(qr(3, 2), half))
    .sub(&eng.mul(&a2, &f11_0).scaled(&qr(2, 3)))
    .sub(&eng.mul(&lab.named.a_u, &w.e10).scaled(&qr(1, 3)))
    .sub(&eng.mul(&lab.named.a_u, &br_b))
    .sub(&br_c.scaled(&q(3)));
    if lhs_v != rhs_v {
        return (false, "[v, F32(1)] expansion fails".into());
    }
    (true, "three bracket expansions hold exactly in the affine envelope".into())
}

fn check_a2(lab: &Lab, audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.uhat;
    let w = A2Words::new(lab);
    let named = &lab.named;
    let half = qr(1, 2);
    let kw = eng.word(&[AffineGen::K]);

    // (1)  [F32(1),u].1 = (K + 5/3) E10(-1).1
    let lhs1 = eng.commutator(&w.f32_1, &named.u_u);
    let rhs1 = lab.image(&eng.mul(&kw, &w.e10).add(&w.e10.scaled(&qr(5, 3))));
    if !lab.congruent(&lhs1, &rhs1) {
        return (false, "congruence (1) for [F32(1),u].1 fails".into());
    }

    // (2)  [F32(1),v].1 = {3 E32F01 + E31H11 + 1/3 aE10 + (K+1) aE10
    //                      + 6(K+1) E32F01 + 3(K+1) E31H01}.1
    let lhs2 = eng.commutator(&w.f32_1, &named.v_u);
    let a_e10 = eng.mul(&named.a_u, &w.e10);
    let k_plus_1 = |x: &UElement| eng.mul(&kw, x).add(x);
    let rhs2_elem = w
        .e32f01
        .scaled(&q(3))
        .add(&w.e31h(qr(3, 2), half.clone()))
        .add(&a_e10.scaled(&qr(1, 3)))
        .add(&k_plus_1(&a_e10))
        .add(&k_plus_1(&w.e32f01).scaled(&q(6)))
        .add(&k_plus_1(&w.e31h01).scaled(&q(3)));
    if !lab.congruent(&lhs2, &lab.image(&rhs2_elem)) {
        return (false, "congruence (2) for [F32(1),v].1 fails".into());
    }

    // (3)  [F32(1),w].1 = {-E32F01 - E31H32}.1
    let lhs3 = eng.commutator(&w.f32_1, &named.w_u);
    let rhs3_elem = w.e32f01.scaled(&q(-1)).sub(&w.e31h(half.clone(), half.clone()));
    if !lab.congruent(&lhs3, &lab.image(&rhs3_elem)) {
        return (false, "congruence (3) for [F32(1),w].1 fails".into());
    }

    // (4)  [[F32(1),u],u].1: the stated right-hand side misses
    //      +(2/9) a^2 E10(-1); the corrected form is congruent and the
    //      deviation is pinned exactly.
    let lhs4 = eng.commutator(&eng.commutator(&w.f32_1, &named.u_u), &named.u_u);
    let e31e31f10 = eng.word(&[at(E31, -1), at(E31, -1), at(F10, -1)]);
    let e32e31f11 = eng.word(&[at(E32, -1), at(E31, -1), at(F11, -1)]);
    let stated4 = eng
        .mul(&named.a_u, &w.e31h(qr(-3, 2), half.clone()))
        .scaled(&qr(-2, 3))
        .sub(&e31e31f10.scaled(&q(2)))
        .sub(&e32e31f11.scaled(&q(2)))
        .add(&eng.mul(&named.a_u, &w.e32f01).scaled(&q(2)))
        .sub(&eng.mul(&named.u_u, &w.e10).scaled(&q(2)));
    let a2_e10 = eng.mul(&eng.mul(&named.a_u, &named.a_u), &w.e10);
    let corrected4 = stated4.add(&a2_e10.scaled(&qr(2, 9)));
    if !lab.congruent(&lhs4, &lab.image(&corrected4)) {
        return (false, "corrected congruence (4) for [[F32(1),u],u].1 fails".into());
    }
    let resid4 = lab.reduce(&lab.image(&lhs4).sub(&lab.image(&stated4)));
    let pin: Word = vec![at(E21, -1), at(E21, -1), at(E10, -1)].into();
    if resid4.num_terms() != 1 || resid4.coefficient(&pin, 0) != qr(2, 9) {
        return (false, "deviation of stated congruence (4) is not the pinned (2/9) a^2 E10(-1)".into());
    }

    // A.4 needs the stated F10/F11-bearing terms of (4) verbatim.
    let red4 = lab.reduce(&lab.image(&lhs4));
    let yf10: Word = vec![at(E31, -1), at(E31, -1), at(F10, -1)].into();
    let yf11: Word = vec![at(E32, -1), at(E31, -1), at(F11, -1)].into();
    if red4.coefficient(&yf10, 0) != q(-2) || red4.coefficient(&yf11, 0) != q(-2) {
        return (false, "F10/F11-bearing terms of (4) are not -2 as stated".into());
    }

    // the three vanishing double brackets
    for (label, other) in [("u", &named.u_u), ("v", &named.v_u), ("w", &named.w_u)] {
        let lhs = eng.commutator(&eng.commutator(&w.f32_1, other), &named.w_u);
        if !lab.reduce(&lab.image(&lhs)).is_zero() {
            return (false, format!("[[F32(1),{label}],w].1 is not in C2"));
        }
    }

    // (5)  [[F32(1),u],v].1: the stated right-hand side is not
    //      weight-homogeneous; verify the recomputed normal form instead.
    let lhs5 = eng.commutator(&eng.commutator(&w.f32_1, &named.u_u), &named.v_u);
    let red5 = lab.reduce(&lab.image(&lhs5));
    let wt5 = red5.weight();
    let offender_a = word_weight(&[at(E31, -1), at(H01, -1)]);
    let offender_b = word_weight(&[at(E31, -1), at(E10, -1), at(E01, -1)]);
    let facts5 = red5.num_terms() == 13
        && red5.terms().keys().all(|m| m.kpow == 0)
        && wt5 == Some(QhatWeight::from_root(RootVector::new(7, 3), -4))
        && no_letter_from(&red5, &[F10, F11])
        && offender_a == QhatWeight::from_root(RootVector::new(3, 1), -2)
        && offender_b == QhatWeight::from_root(RootVector::new(4, 2), -3);
    if !facts5 {
        return (false, "recomputed normal form of (5) lost its frozen shape".into());
    }

    // (6)  [[F32(1),v],v].1: same situation; additionally the
    //      +6u(E31^2 F10 + E32 E31 F11) terms must match verbatim.
    let lhs6 = eng.commutator(&eng.commutator(&w.f32_1, &named.v_u), &named.v_u);
    let red6 = lab.reduce(&lab.image(&lhs6));
    let six_u = eng
        .mul(&named.u_u, &e31e31f10.add(&e32e31f11))
        .scaled(&q(6));
    let want = lab.reduce(&lab.image(&six_u));
    let facts6 = red6.num_terms() == 30
        && red6.terms().keys().all(|m| m.kpow == 0)
        && red6.weight() == Some(QhatWeight::from_root(RootVector::new(9, 4), -5))
        && letter_part(&red6, &[F10, F11]).sub(&letter_part(&want, &[F10, F11])).is_zero();
    if !facts6 {
        return (false, "recomputed normal form of (6) lost its frozen shape".into());
    }

    audits.extend(a2_audits());
    (
        true,
        "congruences (1)-(3) as stated; (4) corrected and pinned; three double \
         brackets vanish; (5),(6) verified against recomputed normal forms \
         (13 and 30 level-independent monomials)"
            .into(),
    )
}

fn no_letter_from(v: &VacuumVector, gens: &[Gen]) -> bool {
    v.terms().keys().all(|m| {
        m.word
            .iter()
            .all(|l| !matches!(l, AffineGen::X(g, _) if gens.contains(g)))
    })
}

fn letter_part(v: &VacuumVector, gens: &[Gen]) -> VacuumVector {
    let mut out = VacuumVector::zero();
    for (m, c) in v.terms() {
        if m.word
            .iter()
            .any(|l| matches!(l, AffineGen::X(g, _) if gens.contains(g)))
        {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn a2_audits() -> Vec<IdentityAudit> {
    vec![
        IdentityAudit {
            id: "A.2(4)",
            stated: "[[F32(1),u],u].1 = {-(2/3)aE31(-1)H10(-1) - 2E31(-1)^2F10(-1) \
                     - 2E32(-1)E31(-1)F11(-1) + 2aE32(-1)F01(-1) - 2uE10(-1)}.1"
                .into(),
            computed: "stated right-hand side + (2/9)a^2E10(-1).1; equivalently the \
                       term -2uE10(-1) should read -(4/3)uE10(-1) + (2/3)bE10(-1)"
                .into(),
            reading: "congruence verified against the corrected right-hand side; the \
                      deviation of the stated form reduces to exactly \
                      (2/9)E21(-1)^2E10(-1).1; the F10/F11-bearing terms are correct \
                      as stated"
                .into(),
        },
        IdentityAudit {
            id: "A.2(5)",
            stated: "[[F32(1),u],v].1 = {-(2/3)E31(-1)H11(-1) + bE31(-1)H21(-1) \
                     + (2/9)a^3E10(-1) - (4/3)abE10(-1) - 3a^2E32(-1)F01(-1) \
                     - 3vE10(-1) - 6E31(-1)E10(-1)E01(-1) + 6E31(-1)E11(-1)H01(-1) \
                     + 6E32(-1)E10(-1)H01(-1) + 6E32(-1)E11(-1)F01(-1)}.1"
                .into(),
            computed: "left-hand side has weight 7a+3b at depth -4, but the stated \
                       terms -(2/3)E31(-1)H11(-1) (weight 3a+b, depth -2) and \
                       -6E31(-1)E10(-1)E01(-1) (weight 4a+2b, depth -3) cannot \
                       contribute to it; the recomputed normal form mod C2 has 13 \
                       level-independent monomials and carries no F10/F11 letters"
                .into(),
            reading: "stated right-hand side is weight-inhomogeneous (missing \
                      prefixes); the congruence is verified against the recomputed \
                      normal form"
                .into(),
        },
        IdentityAudit {
            id: "A.2(6)",
            stated: "[[F32(1),v],v].1 = {(2/3 a^2 - 2b)(1/3 a^2 - 2b)E10 - 3aE31^2E10 \
                     - 3vE10 + 2uaE31H10 - 6vE31E31H10 - 9vE31H01 + 18cE32F01 \
                     + 18E32^2F01E31H01 - 2a^3E32F01 + 3abE32F01 + 6aE31E11E32F01 \
                     - 6vE32F01 + 3aE32E10E31H01 - 3vE31 \
                     + 6u(E31^2F10 + E32E31F11)}.1 (all modes -1)"
                .into(),
            computed: "left-hand side has weight 9a+4b at depth -5, but e.g. \
                       -3aE31(-1)^2E10(-1) sits at weight 9a+3b, depth -4, and \
                       -6vE31(-1)^2H10(-1) at depth -6; the recomputed normal form \
                       mod C2 has 30 level-independent monomials whose F10/F11 part \
                       equals +6u(E31(-1)^2F10(-1) + E32(-1)E31(-1)F11(-1)).1 \
                       verbatim"
                .into(),
            reading: "stated right-hand side is weight-inhomogeneous; the congruence \
                      is verified against the recomputed normal form, and the \
                      F10/F11-bearing terms consumed downstream are confirmed as \
                      stated"
                .into(),
        },
    ]
}

fn check_a3(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.uhat;
    // Deterministic (X; f_1..f_t) samples: modes -1/-2, t = 2..4, chosen to
    // exercise contractions (K terms), mode-0 remainders and repeats.
    let samples: [(Gen, &[AffineGen]); 12] = [
        (F32, &[at(E32, -1), at(E31, -1)]),
        (F32, &[at(E21, -1), at(E21, -2)]),
        (E10, &[at(F10, -1), at(F11, -1)]),
        (F21, &[at(E21, -1), at(E11, -1), at(E10, -1)]),
        (F31, &[at(E31, -1), at(E32, -2), at(H01, -1)]),
        (H21, &[at(E31, -1), at(F01, -2)]),
        (F32, &[at(E32, -2), at(E31, -1), at(E21, -1)]),
        (E01, &[at(F01, -1), at(F10, -1), at(E11, -2)]),
        (F11, &[at(E31, -1), at(E11, -1), at(E10, -1), at(E01, -1)]),
        (F32, &[at(E31, -1), at(E31, -1), at(E32, -1), at(H21, -2)]),
        (F10, &[at(E10, -1), at(E10, -2), at(E21, -1)]),
        (F31, &[at(E32, -1), at(E32, -1), at(F01, -1), at(E31, -2)]),
    ];
    for (xg, letters) in samples {
        let x1 = eng.word(&[at(xg, 1)]);
        let t = letters.len();
        let lhs = lab.image(&eng.mul(&x1, &eng.word(letters)));
        let mut rhs = VacuumVector::zero();
        for i in 0..t {
            let rest: Vec<AffineGen> = letters
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, l)| *l)
                .collect();
            let inner = eng.commutator(&x1, &eng.word(&[letters[i]]));
            rhs = rhs.add(&lab.image(&eng.mul(&eng.word(&rest), &inner)));
            for jj in i + 1..t {
                let rest2: Vec<AffineGen> = letters
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i && *j != jj)
                    .map(|(_, l)| *l)
                    .collect();
                let second = eng.commutator(&inner, &eng.word(&[letters[jj]]));
                rhs = rhs.add(&lab.image(&eng.mul(&eng.word(&rest2), &second)));
            }
        }
        if !lab.reduce(&lhs.sub(&rhs)).is_zero() {
            return (
                false,
                format!("second-order expansion fails for X={} on a length-{t} word", xg.name()),
            );
        }
    }
    (true, "12 deterministic samples, t = 2..4, modes -1/-2".into())
}

fn check_a4(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.uhat;
    let f32_1 = eng.word(&[at(F32, 1)]);
    let mut projections = 0u32;
    for p in 0..=4u32 {
        for qv in 0..=2u32 {
            for r in 0..=2u32 {
                let n = 2 * p + 3 * qv + 3 * r;
                if n < 4 || n > 8 {
                    continue;
                }
                let base = uvw_product(eng, &lab.named, p, qv, r);
                let img = act(eng, &f32_1, &act_on_vacuum(eng, &base));
                for pp in 0..=n {
                    for qq in 0..=n {
                        if 2 * pp + 3 * qq + 4 != n {
                            continue;
                        }
                        let mut word: Vec<AffineGen> = Vec::new();
                        word.extend(std::iter::repeat_n(at(E31, -1), (pp + 2 * qq + 2) as usize));
                        word.extend(std::iter::repeat_n(at(E11, -1), pp as usize));
                        word.extend(std::iter::repeat_n(at(E01, -1), qq as usize));
                        word.push(at(F10, -1));
                        let want = if r > 0 {
                            Q::zero()
                        } else if p == pp + 2 && qv == qq {
                            let sign = if (p + qv) % 2 == 0 { q(1) } else { q(-1) };
                            q(-2) * binomial(i64::from(p), 2) * sign * q(3i64.pow(qv))
                        } else if p + 1 == pp && qv == qq + 2 {
                            let sign = if (p + qv) % 2 == 0 { q(-1) } else { q(1) };
                            q(6) * binomial(i64::from(qv), 2) * sign * qr(1, 9) * q(3i64.pow(qv))
                        } else {
                            Q::zero()
                        };
                        if img.coefficient(&word, 0) != want {
                            return (
                                false,
                                format!(
                                    "projection coefficient at (p,q,r)=({p},{qv},{r}), (p',q')=({pp},{qq}) \
                                     is {} instead of {}",
                                    q_str(&img.coefficient(&word, 0)),
                                    q_str(&want)
                                ),
                            );
                        }
                        for kpow in 1..=2 {
                            if !img.coefficient(&word, kpow).is_zero() {
                                return (
                                    false,
                                    format!(
                                        "K^{kpow} contamination at (p,q,r)=({p},{qv},{r}), (p',q')=({pp},{qq})"
                                    ),
                                );
                            }
                        }
                        projections += 1;
                    }
                }
            }
        }
    }
    (true, format!("{projections} projection coefficients over 2p+3q+3r <= 8, both branches"))
}

// ====================================================================
// the B battery
// ====================================================================

/// The six sl2-triples (E, F, positive root) of the positive system.
const ROOT_TRIPLES: [(Gen, Gen); 6] =
    [(E10, F10), (E01, F01), (E11, F11), (E21, F21), (E31, F31), (E32, F32)];

fn coroot_of(eng: &Engine, e: Gen, f: Gen) -> UElement {
    eng.commutator(&eng.word(&[at(e, 0)]), &eng.word(&[at(f, 0)]))
}

fn hprod(eng: &Engine, h: &UElement, shifts: impl IntoIterator<Item = i64>) -> UElement {
    let mut acc = eng.one();
    for s in shifts {
        acc = eng.mul(&acc, &h.add(&eng.one().scaled(&q(s))));
    }
    acc
}

fn adpow(eng: &Engine, g: Gen, n: u32, f: &UElement) -> UElement {
    eng.ad_power(at(g, 0), n, f)
}

fn gen_word(eng: &Engine, gens: &[Gen]) -> UElement {
    let letters: Vec<AffineGen> = gens.iter().map(|&g| at(g, 0)).collect();
    eng.word(&letters)
}

/// True when every monomial of the weight-zero element carries a raising
/// letter, i.e. the element lies in U(g)·n₊.
fn in_n_plus_ideal(e: &UElement) -> bool {
    e.terms().keys().all(|w| {
        let cartan_only = w.iter().all(|l| matches!(l, AffineGen::X(g, _) if g.triangular_class() == 1));
        if cartan_only {
            return false;
        }
        assert!(
            w.iter().any(|l| matches!(l, AffineGen::X(g, _) if g.triangular_class() == 2)),
            "weight-zero monomial without raising letters must be pure Cartan"
        );
        true
    })
}

fn check_b1(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;
    let cases: [(Gen, u32, Vec<UElement>); 3] = [
        (E10, 2, vec![gen_word(eng, &[F10]), gen_word(eng, &[F01])]),
        (E10, 3, vec![gen_word(eng, &[F31]), gen_word(eng, &[E01]), gen_word(eng, &[H01])]),
        (F32, 2, vec![lab.finite.b.clone(), lab.finite.a.clone()]),
    ];
    for (x, n, ys) in &cases {
        let mut prod = eng.one();
        for y in ys {
            prod = eng.mul(&prod, y);
        }
        let lhs = adpow(eng, *x, *n, &prod);
        let mut rhs = UElement::zero(eng.order());
        for ks in compositions(*n, ys.len()) {
            let mut coeff = factorial(*n);
            let mut piece = eng.one();
            for (k, y) in ks.iter().zip(ys) {
                coeff = coeff / factorial(*k);
                piece = eng.mul(&piece, &adpow(eng, *x, *k, y));
            }
            rhs = rhs.add(&piece.scaled(&coeff));
        }
        if lhs != rhs {
            return (false, format!("multinomial expansion fails for X={} n={n}", x.name()));
        }
    }
    (true, "3 product expansions (n = 2, 3; factors up to degree 2)".into())
}

fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_b2(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;

    // (1) (ad E)^m(F^m) - m! H(H-1)...(H-m+1) in U(g)E for m <= 4, with the
    // residual term counts frozen per root.
    let frozen_counts: [(Gen, [usize; 4]); 6] = [
        (E10, [0, 1, 3, 7]),
        (E01, [0, 1, 2, 4]),
        (E11, [0, 1, 3, 7]),
        (E21, [0, 1, 2, 4]),
        (E31, [0, 1, 3, 7]),
        (E32, [0, 1, 3, 7]),
    ];
    for ((e, f), (_, counts)) in ROOT_TRIPLES.iter().zip(frozen_counts) {
        let h = coroot_of(eng, *e, *f);
        let ideal = Engine::new(PbwOrder::RightIdeal(*e));
        for m in 1..=4u32 {
            let fm = gen_word(eng, &vec![*f; m as usize]);
            let lhs = adpow(eng, *e, m, &fm);
            let want = hprod(eng, &h, (0..i64::from(m)).map(|t| -t)).scaled(&factorial(m));
            let resid = recanon(&ideal, &lhs.sub(&want));
            let tail = at(*e, 0);
            if !resid.terms().keys().all(|w| w.last() == Some(&tail)) {
                return (false, format!("(ad {})^{m}(F^{m}) residual escapes U(g)E", e.name()));
            }
            if resid.num_terms() != counts[(m - 1) as usize] {
                return (
                    false,
                    format!(
                        "residual of (ad {})^{m}(F^{m}) has {} terms, frozen count {}",
                        e.name(),
                        resid.num_terms(),
                        counts[(m - 1) as usize]
                    ),
                );
            }
        }
    }

    // (2) zero-weight elements: membership in n₋·U(g) and in U(g)·n₊ agree,
    // and both are equivalent to a vanishing pure-Cartan part.
    let samples: [&[Gen]; 5] = [
        &[F10, E10],
        &[E21, F21],
        &[F01, H01, E01],
        &[E32, F32, H01],
        &[E11, E10, F21],
    ];
    let mut ideal_members = 0;
    for gens in samples {
        let x = gen_word(eng, gens);
        assert_eq!(x.weight().map(|w| w.finite()), Some(RootVector::ZERO));
        let cartan_words: Vec<&Word> = x
            .terms()
            .keys()
            .filter(|w| w.iter().all(|l| matches!(l, AffineGen::X(g, _) if g.triangular_class() == 1)))
            .collect();
        let in_ideals = cartan_words.is_empty();
        // constructive double membership for the ideal part: every non-Cartan
        // monomial carries both a lowering and a raising letter
        let both_sided = x
            .terms()
            .keys()
            .filter(|w| !cartan_words.contains(w))
            .all(|w| {
                w.iter().any(|l| matches!(l, AffineGen::X(g, _) if g.triangular_class() == 0))
                    && w.iter().any(|l| matches!(l, AffineGen::X(g, _) if g.triangular_class() == 2))
            });
        if !both_sided {
            return (false, "a weight-zero monomial misses a lowering or raising letter".into());
        }
        if in_ideals {
            ideal_members += 1;
        }
    }

    // (3) the three-term membership (ad E)^n(F^r Y) for 4 >= n > r > 0.
    let mut memberships = 0;
    for (e, f) in ROOT_TRIPLES {
        let h = coroot_of(eng, e, f);
        let ideal = Engine::new(PbwOrder::TwoSided { lowest: f, highest: e });
        let head = at(f, 0);
        let tail = at(e, 0);
        let ys: [UElement; 5] = [
            eng.one(),
            gen_word(eng, &[E21]),
            gen_word(eng, &[H01]),
            gen_word(eng, &[F10, F01]),
            lab.finite.b.clone(),
        ];
        for n in 2..=4u32 {
            for r in 1..n {
                for y in &ys {
                    let fr = gen_word(eng, &vec![f; r as usize]);
                    let lhs = adpow(eng, e, n, &eng.mul(&fr, y));
                    let coeff = factorial(n) / factorial(n - r);
                    let shifts = (1..=i64::from(r)).map(|t| -i64::from(n) + t);
                    let mid = eng
                        .mul(&hprod(eng, &h, shifts), &adpow(eng, e, n - r, y))
                        .scaled(&coeff);
                    let resid = recanon(&ideal, &lhs.sub(&mid));
                    let ok = resid
                        .terms()
                        .keys()
                        .all(|w| w.first() == Some(&head) || w.last() == Some(&tail));
                    if !ok {
                        return (
                            false,
                            format!("three-term membership fails at root {} (n={n}, r={r})", e.name()),
                        );
                    }
                    memberships += 1;
                }
            }
        }
    }
    (
        true,
        format!(
            "24 falling-factorial memberships with frozen residual counts; \
             {ideal_members}/5 zero-weight samples in both one-sided ideals \
             (criteria agree on all 5); {memberships} three-term memberships"
        ),
    )
}

fn check_b3(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;
    let fin = &lab.finite;
    let h31 = coroot_of(eng, E31, F31);
    let h32 = coroot_of(eng, E32, F32);
    let sixth = qr(1, 6);

    // (1/3!)(ad F31)^3[c] = F31(H32+1)E01 + F32E01^2 - F31^2E32
    let rhs_f31_c = eng
        .mul(
            &eng.mul(&gen_word(eng, &[F31]), &h32.add(&eng.one())),
            &gen_word(eng, &[E01]),
        )
        .add(&gen_word(eng, &[F32, E01, E01]))
        .sub(&gen_word(eng, &[F31, F31, E32]));
    // (1/3!)(ad F32)^3[c] = F32^2E31 - F32F01(H31+2) - F31F01^2
    let rhs_f32_c = gen_word(eng, &[F32, F32, E31])
        .sub(&eng.mul(&gen_word(eng, &[F32, F01]), &h31.add(&eng.one().scaled(&q(2)))))
        .sub(&gen_word(eng, &[F31, F01, F01]));

    let identities: [(&str, UElement, UElement); 12] = [
        ("(F31)_L[a] = F10", adpow(eng, F31, 1, &fin.a), gen_word(eng, &[F10])),
        (
            "1/2!(F31^2)_L[b] = F21E01 - F31E11",
            adpow(eng, F31, 2, &fin.b).scaled(&qr(1, 2)),
            gen_word(eng, &[F21, E01]).sub(&gen_word(eng, &[F31, E11])),
        ),
        (
            "1/3!(F31^3)_L[c] = F31(H32+1)E01 + F32E01^2 - F31^2E32",
            adpow(eng, F31, 3, &fin.c).scaled(&sixth),
            rhs_f31_c,
        ),
        ("(F31^2)_L[a] = 0", adpow(eng, F31, 2, &fin.a), UElement::zero(eng.order())),
        ("(F31^3)_L[b] = 0", adpow(eng, F31, 3, &fin.b), UElement::zero(eng.order())),
        ("(F31^4)_L[c] = 0", adpow(eng, F31, 4, &fin.c), UElement::zero(eng.order())),
        ("(F32)_L[a] = F11", adpow(eng, F32, 1, &fin.a), gen_word(eng, &[F11])),
        (
            "1/2!(F32^2)_L[b] = F32E10 - F21F01",
            adpow(eng, F32, 2, &fin.b).scaled(&qr(1, 2)),
            gen_word(eng, &[F32, E10]).sub(&gen_word(eng, &[F21, F01])),
        ),
        (
            "1/3!(F32^3)_L[c] = F32^2E31 - F32F01(H31+2) - F31F01^2",
            adpow(eng, F32, 3, &fin.c).scaled(&sixth),
            rhs_f32_c,
        ),
        ("(F32^2)_L[a] = 0", adpow(eng, F32, 2, &fin.a), UElement::zero(eng.order())),
        ("(F32^3)_L[b] = 0", adpow(eng, F32, 3, &fin.b), UElement::zero(eng.order())),
        ("(F32^4)_L[c] = 0", adpow(eng, F32, 4, &fin.c), UElement::zero(eng.order())),
    ];
    for (label, lhs, rhs) in identities {
        if lhs != rhs {
            return (false, format!("{label} fails"));
        }
    }
    (true, "both displayed blocks (12 equalities) hold exactly".into())
}

fn check_b4(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;
    let fin = &lab.finite;
    let mut congruences = 0;
    for n in 1..=5u32 {
        for p in 0..=n {
            for qv in 0..=((n - p) / 2) {
                let rest = n - p - 2 * qv;
                if rest % 3 != 0 {
                    continue;
                }
                let r = rest / 3;
                let x = eng.mul(
                    &eng.pow(&fin.a, p),
                    &eng.mul(&eng.pow(&fin.b, qv), &eng.pow(&fin.c, r)),
                );
                let tail = eng.mul(&eng.pow(&fin.b, qv), &eng.pow(&fin.c, r));
                for (e, f, eopp) in [(E10, F31, F10), (E11, F32, F11)] {
                    let h = coroot_of(eng, e, eopp);
                    let lhs = adpow(eng, e, n, &adpow(eng, f, n, &x));
                    let coeff = {
                        let c = factorial(n) / factorial(n - p);
                        c.clone() * c
                    };
                    let shifts = (1..=i64::from(p)).map(|t| -i64::from(n) + t);
                    let rhs = eng
                        .mul(
                            &hprod(eng, &h, shifts),
                            &adpow(eng, e, n - p, &adpow(eng, f, n - p, &tail)),
                        )
                        .scaled(&coeff);
                    let diff = lhs.sub(&rhs);
                    if !diff.is_zero() && !in_n_plus_ideal(&diff) {
                        return (
                            false,
                            format!(
                                "strip-[a] congruence fails at (p,q,r)=({p},{qv},{r}) for the ({},{}) pair",
                                e.name(),
                                f.name()
                            ),
                        );
                    }
                    congruences += 1;
                }
            }
        }
    }
    (true, format!("{congruences} congruences over p+2q+3r <= 5, both root pairs"))
}

fn check_b6(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;
    let fin = &lab.finite;
    // frozen degrees of the (E11, F32)-side polynomials per (q, r)
    let cases: [(u32, u32, u32); 6] =
        [(1, 0, 1), (0, 1, 2), (2, 0, 2), (1, 1, 3), (3, 0, 3), (0, 2, 4)];
    for (qv, r, frozen_deg) in cases {
        let m = 2 * qv + 3 * r;
        let x = eng.mul(&eng.pow(&fin.b, qv), &eng.pow(&fin.c, r));
        let p1 = pi0(&adpow(eng, E10, m, &adpow(eng, F31, m, &x)));
        if !p1.is_zero() {
            return (false, format!("pi0 of the (E10,F31) side is nonzero at (q,r)=({qv},{r})"));
        }
        let p2 = pi0(&adpow(eng, E11, m, &adpow(eng, F32, m, &x)));
        let deg = p2.degree();
        if deg != Some(frozen_deg) {
            return (
                false,
                format!(
                    "pi0 degree on the (E11,F32) side at (q,r)=({qv},{r}) is {deg:?}, frozen {frozen_deg}"
                ),
            );
        }
        if frozen_deg > m - 1 {
            return (false, format!("degree bound m-1 violated at (q,r)=({qv},{r})"));
        }
    }
    (true, "6 vanishing/degree cases for m = 2q+3r <= 6 (frozen degrees 1,2,2,3,3,4)".into())
}

fn check_b7(lab: &Lab, _audits: &mut Vec<IdentityAudit>) -> (bool, String) {
    let eng = &lab.ug;
    let b2 = eng.pow(&lab.finite.b, 2);
    let lhs = pi0(&adpow(eng, E21, 4, &adpow(eng, F21, 8, &b2)));

    let h10 = HPoly::h10();
    let h01 = HPoly::h01();
    let h21 = h10.scale(&q(2)).add(&h01.scale(&q(3)));
    let h11 = h10.add(&h01.scale(&q(3)));
    let one = HPoly::one();
    let rhs = h21
        .mul(&h11.sub(&one))
        .scale(&q(2))
        .add(&h10.mul(&h10.sub(&one)).scale(&q(2)))
        .sub(&h01.mul(&h01.add(&one)).scale(&q(6)))
        .scale(&(factorial(4) * factorial(8)));
    if !lhs.sub(&rhs).is_zero() {
        return (false, "the corrected falling-factorial congruence fails".into());
    }
    (
        true,
        "corrected form 4!8!(2H21(H11-1) + 2H10(H10-1) - 6H01(H01+1)) passes exactly; \
         no symmetrized variant needed"
            .into(),
    )
}

// ====================================================================
// driver
// ====================================================================

type AppendixCheckFn = fn(&Lab, &mut Vec<IdentityAudit>) -> (bool, String);

const APPENDIX_CHECKS: [(&str, &str, AppendixCheckFn); 11] = [
    ("C2", "C2-subspace properties: stability, w.1 membership, commutativity", check_c2_properties),
    ("A.1", "bracket expansions of [u|v|w, F32(1)] in the affine envelope", check_a1),
    ("A.2", "congruences of [F32(1), -] brackets modulo C2", check_a2),
    ("A.3", "second-order expansion of X(1) across product states modulo C2", check_a3),
    ("A.4", "projection coefficients of F32(1).(u^p v^q w^r .1)", check_a4),
    ("B.1", "multinomial expansion of adjoint powers over products", check_b1),
    ("B.2", "falling-factorial and three-term ideal memberships", check_b2),
    ("B.3", "the eight displayed adjoint-power identities", check_b3),
    ("B.4", "strip-[a] congruences modulo U(g)n+", check_b4),
    ("B.6", "pi0 vanishing and degree bounds on lowered powers", check_b6),
    ("B.7", "corrected falling-factorial congruence for (E21^4 F21^8)_L([b]^2)", check_b7),
];

/// The check identifiers accepted by `verify-appendices --only`.
pub fn appendix_check_ids() -> Vec<&'static str> {
    APPENDIX_CHECKS.iter().map(|(id, _, _)| *id).collect()
}

/// Run the appendix battery, optionally restricted to a single check id.
pub fn verify_appendices(only: Option<&str>) -> Result<AppendixReport, String> {
    let selected: Vec<_> = match only {
        None => APPENDIX_CHECKS.to_vec(),
        Some(id) => {
            let found: Vec<_> = APPENDIX_CHECKS.iter().filter(|(cid, _, _)| *cid == id).cloned().collect();
            if found.is_empty() {
                return Err(format!(
                    "unknown check id `{id}` (available: {})",
                    appendix_check_ids().join(", ")
                ));
            }
            found
        }
    };
    let lab = Lab::new();
    let mut audits = Vec::new();
    let checks = selected
        .into_iter()
        .map(|(id, title, f)| {
            let start = Instant::now();
            let (passed, detail) = f(&lab, &mut audits);
            CheckOutcome { id, title, passed, detail, millis: start.elapsed().as_millis() }
        })
        .collect();
    Ok(AppendixReport { checks, audits })
}

/// Every recorded stated-versus-recomputed deviation, including those
/// established (and frozen as tests) in other modules.
pub fn known_deviations() -> Vec<IdentityAudit> {
    let mut out = vec![
        IdentityAudit {
            id: "omega(v)",
            stated: "omega(v) = v - 3w".into(),
            computed: "omega(v) = v + 6w (and omega(u) = u, omega(w) = w); certified \
                       monomial-by-monomial and as the unique coefficient compatible \
                       with omega being a g-module map"
                .into(),
            reading: "downstream arguments only use omega(v) = v modulo the line \
                      spanned by w, which holds either way; the symmetrizer returns \
                      the computed value"
                .into(),
        },
        IdentityAudit {
            id: "table-1",
            stated: "tabulated string statistics rows (m1, m2, n) for the eight \
                      simple strings"
                .into(),
            computed: "every tabulated (m1, m2) pair equals the intrinsic value \
                       + (1, 1); the n column matches; later statistic sums \
                       m(B_{p,q,r,s}) = q + 2r + s are consistent only with the \
                       intrinsic values"
                .into(),
            reading: "constructions use the intrinsic statistics; `table1` \
                      reproduces the tabulated rows row-for-row so the shifted \
                      variant remains inspectable"
                .into(),
        },
        IdentityAudit {
            id: "string-expansion-third-sum",
            stated: "third sum of the raising-operator expansion carries \
                     coefficient binom(q, 1)"
                .into(),
            computed: "the coefficient is binom(r, 1); the surrounding first \
                       recurrence is correct as stated and is what the solver \
                       verifies"
                .into(),
            reading: "expansion verified with binom(r, 1)".into(),
        },
        IdentityAudit {
            id: "coefficient-recurrence",
            stated: "3p C_{p,q,r} = 2p C_{p-2,q+1,r} - (r+1) C_{p-1,q-1,r+1}".into(),
            computed: "the rewrite consistent with the verified first recurrence is \
                       3p C_{p,q,r} = -2(q+1) C_{p-2,q+1,r} + (r+1) C_{p-1,q-1,r+1}"
                .into(),
            reading: "solver coefficients satisfy the corrected rewrite at every \
                      solved grade"
                .into(),
        },
        IdentityAudit {
            id: "boundary-recurrence",
            stated: "b_{j+1} = binom(n/2 - 3j + 3, 2) / (3 binom(2j, 2)) b_j".into(),
            computed: "the index-consistent recurrence is b_j = \
                       binom(n/2 - 3(j-1), 2) / (3 binom(2j, 2)) b_{j-1}; the closed \
                       forms for b_j are correct as stated and pass at every solved \
                       grade n <= 12"
                .into(),
            reading: "closed forms are the verified contract; the displayed \
                      recurrence has an index shift"
                .into(),
        },
        IdentityAudit {
            id: "p1-normalization",
            stated: "p1, p2 defined through a 1/n! normalization in the derivation".into(),
            computed: "the statement's 1/(n!)^2 is the correct normalization: the \
                       computed leading coefficient of p1 equals the boundary \
                       coefficient C_{n,0,0} exactly (1/3 at the smallest grade)"
                .into(),
            reading: "classification uses 1/(n!)^2".into(),
        },
        IdentityAudit {
            id: "zhu-image-depth",
            stated: "[v_k] = sum_i b_i [u]^{n/2-3i} [v]^{2i} (even n), resp. \
                     sum_i b_i [u]^{(n-3)/2-3i} [v]^{1+2i} (odd n), for all n"
                .into(),
            computed: "the monomial-wise normal-form image matches the stated \
                       expansion exactly at grades 2 and 3, and deviates at grades \
                       >= 5 by pinned weight-homogeneous residuals (1, 7 and 18 \
                       terms at grades 5, 6, 8): the normal-form recipe is not \
                       multiplicative across u, v factors at depth >= 2"
                .into(),
            reading: "classification consumes the stated boundary expansion built \
                      from the verified single-factor images [u], [v]; the deep \
                      residuals are frozen as tests"
                .into(),
        },
    ];
    out.extend(a2_audits());
    out
}

// ====================================================================
// tests
// ====================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_battery_all_pass() {
        let checks = verify_structure();
        for c in &checks {
            assert!(c.passed, "{} failed: {}", c.id, c.detail);
        }
        assert_eq!(checks.len(), 8);
    }

    #[test]
    fn flipped_bracket_is_caught_and_named() {
        let rule = bracket_with_flipped_sign(E01, E31);
        let checks = verify_structure_with(&rule);
        let failed: Vec<&CheckOutcome> = checks.iter().filter(|c| !c.passed).collect();
        assert!(!failed.is_empty());
        assert!(
            failed.iter().any(|c| c.detail.contains("[E01,E31]")),
            "no failing check names the corrupted pair: {:?}",
            failed.iter().map(|c| (&c.id, &c.detail)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn appendix_battery_all_pass() {
        let report = verify_appendices(None).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{} failed: {}", c.id, c.detail);
        }
        assert_eq!(report.checks.len(), 11);
        assert!(report.audits.iter().any(|a| a.id == "A.2(4)"));
    }

    #[test]
    fn only_filter_selects_a_single_check() {
        let report = verify_appendices(Some("B.3")).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].id, "B.3");
        assert!(report.checks[0].passed);
    }

    #[test]
    fn unknown_check_id_is_rejected() {
        let err = verify_appendices(Some("B.5")).unwrap_err();
        assert!(err.contains("unknown check id"));
        assert!(err.contains("B.4"));
    }

    #[test]
    fn deviation_registry_is_stable() {
        let ids: Vec<&str> = known_deviations().iter().map(|a| a.id).collect();
        assert_eq!(
            ids,
            vec![
                "omega(v)",
                "table-1",
                "string-expansion-third-sum",
                "coefficient-recurrence",
                "boundary-recurrence",
                "p1-normalization",
                "zhu-image-depth",
                "A.2(4)",
                "A.2(5)",
                "A.2(6)",
            ]
        );
    }
}
