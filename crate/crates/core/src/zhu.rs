//! The Zhu image of the vacuum module and the highest-weight classification.
//!
//! The functor sends a₁(−n₁−1)⋯a_m(−n_m−1)·𝟙 to the forward product
//! (−1)^{Σnᵢ} a₁⋯a_m in U(g), evaluated monomial-wise on the canonical
//! straightened form.  The classification is driven by the boundary
//! expansion Σⱼ bⱼ·[u]^{pⱼ}[v]^{qⱼ} of the singular vector — the
//! representative of its class obtained by discarding the w-multiples
//! (their images vanish) and reading each surviving uᵖvᵠ monomial as the
//! product [u]ᵖ[v]ᵠ.  The monomial-wise image of the full straightened
//! vector coincides with that expansion at grades 2 and 3, where the
//! w-free part is a single factor; from grade 5 on the image of a product
//! monomial is not the product of images, so the two differ by an explicit
//! element, pinned in the tests and surfaced by the verification report.
//!
//! The expansion generates, under the adjoint action, a copy of V(nω₁);
//! the Cartan projections of its zero-weight subspace cut out the
//! admissible highest weights: μ is admissible exactly when every
//! projected polynomial vanishes at μ.

use crate::affine::AffineGen;
use crate::envelope::{word_weight, Engine, PbwOrder, UElement, Word};
use crate::g2::Gen;
use crate::invariants::abc_expansion;
use crate::linalg::Echelon;
use crate::poly::{HPoly, QPoly};
use crate::rational::{factorial, q, q_str, Q};
use crate::singular::{Level, SingularVector};
use crate::vacuum::VacuumVector;
use crate::weights::weyl_dimension;
use num::{One, Zero};
use std::collections::BTreeMap;

/// Map a vacuum-module vector (with the central charge already evaluated)
/// through the Zhu functor into U(g) with the triangular PBW order.
pub fn zhu_map(target: &Engine, v: &VacuumVector) -> UElement {
    assert_eq!(
        target.order(),
        PbwOrder::Triangular,
        "the Zhu image lives in U(g)"
    );
    let mut out = UElement::zero(PbwOrder::Triangular);
    for (mono, c) in v.terms() {
        assert_eq!(mono.kpow, 0, "evaluate the central charge before mapping");
        let mut sign = 1i64;
        let letters: Vec<AffineGen> = mono
            .word
            .iter()
            .map(|l| {
                let AffineGen::X(g, m) = *l else {
                    panic!("central letters cannot reach the Zhu image")
                };
                assert!(m < 0);
                if (-m - 1) % 2 == 1 {
                    sign = -sign;
                }
                AffineGen::x(g, 0)
            })
            .collect();
        out = out.add(&target.word(&letters).scaled(&(q(sign) * c)));
    }
    out
}

/// (ad x)ⁿ u — the iterated commutator in the ambient algebra.
pub fn adjoint_power(engine: &Engine, x: AffineGen, n: u32, u: &UElement) -> UElement {
    engine.ad_power(x, n, u)
}

/// The distinguished elements [a], [b], [c], [u], [v] of U(g): images of
/// the vacuum-module generators under the functor, assembled directly from
/// Chevalley words.
pub struct FiniteImages {
    pub a: UElement,
    pub b: UElement,
    pub c: UElement,
    pub u: UElement,
    pub v: UElement,
}

/// Build the finite images.  [w] = 0, so it has no field here.
pub fn finite_images(engine: &Engine) -> FiniteImages {
    assert_eq!(engine.order(), PbwOrder::Triangular);
    let word = |gens: &[Gen]| -> UElement {
        let letters: Vec<AffineGen> = gens.iter().map(|&g| AffineGen::x(g, 0)).collect();
        engine.word(&letters)
    };
    let a = word(&[Gen::E21]);
    let b = word(&[Gen::E31, Gen::E11]).sub(&word(&[Gen::E32, Gen::E10]));
    let c = word(&[Gen::E31, Gen::E31, Gen::E01])
        .sub(&word(&[Gen::E32, Gen::E31, Gen::H01]))
        .sub(&word(&[Gen::E32, Gen::E32, Gen::F01]));
    let u = engine.pow(&a, 2).scaled(&crate::rational::qr(1, 3)).sub(&b);
    let v = engine
        .pow(&a, 3)
        .scaled(&crate::rational::qr(2, 9))
        .sub(&engine.mul(&a, &b))
        .sub(&c.scaled(&q(3)));
    FiniteImages { a, b, c, u, v }
}

/// The boundary expansion Σⱼ bⱼ·[u]^{pⱼ}[v]^{qⱼ} of a singular vector's
/// class: every w-multiple has vanishing class, so only the r = 0
/// coefficients contribute, and those are exactly the boundary
/// coefficients bⱼ.
pub fn boundary_zhu_expansion(engine: &Engine, sv: &SingularVector) -> UElement {
    let images = finite_images(engine);
    let mut out = UElement::zero(PbwOrder::Triangular);
    for ((p, qv, r), coeff) in &sv.coefficients {
        if *r > 0 {
            continue;
        }
        let term = engine.mul(&engine.pow(&images.u, *p), &engine.pow(&images.v, *qv));
        out = out.add(&term.scaled(coeff));
    }
    out
}

/// Cartan projection of a weight-zero element of U(g): straighten to
/// F < H < E order, discard every monomial lying in U(g)·n₊ (those with a
/// raising letter), and rewrite the surviving Cartan monomials as
/// polynomials in the coordinates (H₁₀, H₀₁), using H₂₁ = 2H₁₀ + 3H₀₁.
pub fn pi0(elem: &UElement) -> HPoly {
    assert_eq!(elem.order(), PbwOrder::Triangular);
    if elem.is_zero() {
        return HPoly::zero();
    }
    let wt = elem
        .weight()
        .expect("the Cartan projection needs a weight-homogeneous element");
    assert!(
        wt.finite().is_zero() && wt.c_delta == 0,
        "the Cartan projection is defined on weight-zero elements"
    );
    let h21 = HPoly::h10().scale(&q(2)).add(&HPoly::h01().scale(&q(3)));
    let mut out = HPoly::zero();
    'words: for (word, c) in elem.terms() {
        let mut term = HPoly::constant(c.clone());
        for letter in word.iter() {
            let AffineGen::X(g, 0) = *letter else {
                panic!("the finite algebra has only mode-zero letters")
            };
            match (g.triangular_class(), g) {
                (1, Gen::H01) => term = term.mul(&HPoly::h01()),
                (1, Gen::H21) => term = term.mul(&h21),
                (1, _) => unreachable!("only H01 and H21 are Cartan basis letters"),
                // A raising letter puts the (sorted) monomial inside U(g)·n₊;
                // weight balance means every non-Cartan monomial has one.
                _ => continue 'words,
            }
        }
        out = out.add(&term);
    }
    out
}

/// The two distinguished classification polynomials
///   p₁ = (1/n!²)·π₀((ad E₁₀)ⁿ(ad F₃₁)ⁿ [v]),
///   p₂ = (1/n!²)·π₀((ad E₁₁)ⁿ(ad F₃₂)ⁿ [v]).
pub fn classification_polynomials(engine: &Engine, zhu_v: &UElement, n: u32) -> (HPoly, HPoly) {
    let norm = Q::one() / (factorial(n) * factorial(n));
    let pair = |x: Gen, y: Gen| -> HPoly {
        let lowered = engine.ad_power(AffineGen::x(y, 0), n, zhu_v);
        let raised = engine.ad_power(AffineGen::x(x, 0), n, &lowered);
        pi0(&raised.scaled(&norm))
    };
    (pair(Gen::E10, Gen::F31), pair(Gen::E11, Gen::F32))
}

/// The coefficient of the pure aⁿ monomial in the a,b,c-expansion of the
/// singular vector — the leading constant of both classification
/// polynomials.
pub fn leading_abc_coefficient(sv: &SingularVector) -> Q {
    let n = sv.level.n();
    let mut acc = Q::zero();
    for ((p, qv, r), c) in &sv.coefficients {
        if *r > 0 {
            continue;
        }
        acc += c * abc_expansion(*p, *qv)
            .get(&(n, 0, 0))
            .cloned()
            .unwrap_or_else(Q::zero);
    }
    acc
}

/// The adjoint module generated by a Zhu image, with its zero-weight slice.
pub struct AdjointModule {
    /// Dimension of the full module U(g)·ad-span (equals dim V(nω₁)).
    pub dimension: usize,
    /// Reduced basis of the zero-weight subspace.
    pub zero_weight_basis: Vec<UElement>,
}

/// Saturate the span of the Zhu image under the adjoint action of the two
/// simple lowering operators (sufficient: the image is a highest-weight
/// vector), and slice out the zero-weight rows.
pub fn zero_weight_space(engine: &Engine, zhu_v: &UElement) -> AdjointModule {
    assert_eq!(engine.order(), PbwOrder::Triangular);
    let mut ech: Echelon<Word> = Echelon::new();
    let mut queue: Vec<UElement> = Vec::new();
    if ech.insert(zhu_v.terms().clone()) {
        queue.push(zhu_v.clone());
    }
    while let Some(e) = queue.pop() {
        for g in [Gen::F10, Gen::F01] {
            let img = engine.ad_letter(AffineGen::x(g, 0), &e);
            if img.is_zero() {
                continue;
            }
            if ech.insert(img.terms().clone()) {
                queue.push(img);
            }
        }
    }
    let mut zero_weight_basis = Vec::new();
    for (_, row) in ech.rows() {
        let first = row.keys().next().expect("rows are nonzero");
        if word_weight(first.iter()).finite().is_zero() {
            zero_weight_basis.push(engine.canon(row.iter().map(|(w, c)| (w.to_vec(), c.clone()))));
        }
    }
    AdjointModule {
        dimension: ech.rank(),
        zero_weight_basis,
    }
}

/// Cartan projections of a zero-weight basis, reduced to a linearly
/// independent list (the polynomial filter P(k)₀).
pub fn cartan_polynomials(zero_weight_basis: &[UElement]) -> Vec<HPoly> {
    let mut ech: Echelon<(u32, u32)> = Echelon::new();
    let mut out = Vec::new();
    for e in zero_weight_basis {
        let p = pi0(e);
        if p.is_zero() {
            continue;
        }
        if ech.insert(p.terms().clone()) {
            out.push(p);
        }
    }
    out
}

/// The second coordinate of a candidate weight: either rational, or a root
/// of an irreducible polynomial (identified by its index among that
/// polynomial's roots, in a fixed but unlabeled order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mu01Value {
    Rational(Q),
    Algebraic { factor: QPoly, root_index: u32 },
}

/// One candidate highest weight (μ₁₀, μ₀₁) and whether it survives the full
/// polynomial filter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightCandidate {
    pub mu10: Q,
    pub mu01: Mu01Value,
    pub survives: bool,
}

/// Complete classification data for one level.
pub struct Classification {
    pub level: Level,
    pub n: u32,
    /// Leading constant shared by p₁ and p₂.
    pub leading: Q,
    pub p1: HPoly,
    pub p2: HPoly,
    /// Degree in H₀₁ of p₂(μ₁₀, ·) for each stage-1 root μ₁₀.
    pub stage2_degrees: Vec<(Q, usize)>,
    /// Dimension of the adjoint module generated by the Zhu image.
    pub module_dimension: usize,
    /// The polynomial filter P(k)₀.
    pub cartan_basis: Vec<HPoly>,
    pub candidates: Vec<WeightCandidate>,
}

/// Run the three-stage classification at the level of the given singular
/// vector: roots of p₁ give μ₁₀; for each, roots of p₂(μ₁₀, ·) give μ₀₁
/// (rational or algebraic); each candidate weight survives exactly when
/// every polynomial in P(k)₀ vanishes on it.  Every stage operates on the
/// boundary expansion of the vector's class.
pub fn classify_weights(engine: &Engine, sv: &SingularVector) -> Classification {
    let n = sv.level.n();
    let zhu_v = boundary_zhu_expansion(engine, sv);
    let (p1, p2) = classification_polynomials(engine, &zhu_v, n);
    let module = zero_weight_space(engine, &zhu_v);
    assert_eq!(
        module.dimension as u64,
        weyl_dimension((2 * i64::from(n), i64::from(n))),
        "the adjoint module must be the full irreducible V(nω1)"
    );
    let cartan_basis = cartan_polynomials(&module.zero_weight_basis);

    // p₁ and p₂ are particular elements of the filter span.
    let mut span: Echelon<(u32, u32)> = Echelon::new();
    for p in &cartan_basis {
        span.insert(p.terms().clone());
    }
    assert!(
        span.contains(&p1.terms().clone()) && span.contains(&p2.terms().clone()),
        "the distinguished polynomials must lie in the filter span"
    );

    // Stage 1: p₁ depends on H₁₀ alone; its rational roots are the μ₁₀.
    let p1_uni = univariate_in_h10(&p1);
    let mu10s: Vec<Q> = p1_uni
        .rational_roots()
        .into_iter()
        .map(|(root, _)| root)
        .collect();

    // Stages 2 and 3.
    let mut stage2_degrees = Vec::new();
    let mut candidates = Vec::new();
    for mu10 in &mu10s {
        let uni = p2.substitute_h10(mu10);
        stage2_degrees.push((mu10.clone(), uni.degree().unwrap_or(0)));
        let (_, factors) = uni.factor();
        for (f, _mult) in factors {
            match f.degree() {
                Some(1) => {
                    let root = -(f.coeff(0) / f.coeff(1));
                    let survives = cartan_basis.iter().all(|p| p.eval(mu10, &root).is_zero());
                    candidates.push(WeightCandidate {
                        mu10: mu10.clone(),
                        mu01: Mu01Value::Rational(root),
                        survives,
                    });
                }
                Some(d) if d >= 2 => {
                    // All roots of an irreducible factor behave identically
                    // under rational polynomial conditions: the filter passes
                    // exactly when f divides every substituted polynomial.
                    let survives = cartan_basis
                        .iter()
                        .all(|p| f.divides(&p.substitute_h10(mu10)));
                    for root_index in 0..d as u32 {
                        candidates.push(WeightCandidate {
                            mu10: mu10.clone(),
                            mu01: Mu01Value::Algebraic {
                                factor: f.clone(),
                                root_index,
                            },
                            survives,
                        });
                    }
                }
                _ => unreachable!("factors of a nonconstant polynomial"),
            }
        }
    }

    Classification {
        level: sv.level,
        n,
        leading: leading_abc_coefficient(sv),
        p1,
        p2,
        stage2_degrees,
        module_dimension: module.dimension,
        cartan_basis,
        candidates,
    }
}

/// Restrict an HPoly with no H₀₁ dependence to a univariate polynomial in
/// H₁₀.
pub fn univariate_in_h10(p: &HPoly) -> QPoly {
    let mut coeffs: Vec<Q> = Vec::new();
    for (&(a, b), c) in p.terms() {
        assert_eq!(b, 0, "polynomial must not involve H01");
        if coeffs.len() <= a as usize {
            coeffs.resize(a as usize + 1, Q::zero());
        }
        coeffs[a as usize] += c.clone();
    }
    QPoly::from_coeffs(coeffs)
}

/// Human-readable factored form of p₁ = leading·H₁₀(H₁₀−1)⋯(H₁₀−n+1).
pub fn factored_p1_string(leading: &Q, n: u32) -> String {
    let mut s = format!("{}*H10", q_str(leading));
    for l in 1..n {
        s.push_str(&format!("*(H10-{l})"));
    }
    s
}

/// The survivor (μ₁₀, μ₀₁) pairs among the rational candidates, grouped by
/// μ₁₀ — the shape the frozen tables are written in.
pub fn rational_survivors(c: &Classification) -> BTreeMap<Q, Vec<Q>> {
    let mut out: BTreeMap<Q, Vec<Q>> = BTreeMap::new();
    for cand in &c.candidates {
        if !cand.survives {
            continue;
        }
        if let Mu01Value::Rational(v) = &cand.mu01 {
            out.entry(cand.mu10.clone()).or_default().push(v.clone());
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}
