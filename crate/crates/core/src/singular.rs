//! Singular vectors of the level-k vacuum module.
//!
//! At each level k = m − 2 + i/3 (m ≥ 0, i ∈ {1, 2}) the vacuum module has a
//! singular vector in grade n = 3m + i + 1, lying in the span of the
//! monomials uᵖvᵠwʳ·𝟙 with 2p + 3q + 3r = n.  This module finds that vector
//! by exact linear algebra (the kernel of the single raising operator that
//! does not automatically annihilate the span), normalizes it, and verifies
//! its defining properties together with the closed-form description of the
//! w-free boundary coefficients.

use crate::affine::{AffineGen, QhatWeight};
use crate::envelope::{Engine, UElement, Word};
use crate::g2::Gen;
use crate::invariants::{named_elements, uvw_exponents, uvw_product};
use crate::linalg::{null_space, SparseVec};
use crate::rational::{binomial, q, qr, Q};
use crate::vacuum::{act, act_on_vacuum, VacuumVector};
use num::Zero;
use std::collections::BTreeMap;

/// An admissible non-integer level k = m − 2 + i/3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Level {
    m: u32,
    i: u8,
}

impl Level {
    pub fn new(m: u32, i: u8) -> Self {
        assert!(i == 1 || i == 2, "the fractional part index must be 1 or 2");
        Level { m, i }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    /// The level k = m − 2 + i/3.
    pub fn k(&self) -> Q {
        q(i64::from(self.m) - 2) + qr(i64::from(self.i), 3)
    }

    /// The grade n = 3m + i + 1 of the singular vector.
    pub fn n(&self) -> u32 {
        3 * self.m + u32::from(self.i) + 1
    }

    /// The level whose singular vector sits in grade n, when one exists
    /// (n ≥ 2 and n ≢ 1 mod 3).
    pub fn from_grade(n: u32) -> Option<Level> {
        if n < 2 {
            return None;
        }
        match (n - 1) % 3 {
            1 => Some(Level::new((n - 2) / 3, 1)),
            2 => Some(Level::new((n - 3) / 3, 2)),
            _ => None,
        }
    }

    /// All levels with singular-vector grade ≤ `n_max`, by increasing grade.
    pub fn all_up_to(n_max: u32) -> Vec<Level> {
        (2..=n_max).filter_map(Level::from_grade).collect()
    }
}

/// Exponent triple (p, q, r) of a monomial uᵖvᵠwʳ.
pub type Exponents = (u32, u32, u32);

/// The candidate monomials uᵖvᵠwʳ (as straightened PBW elements) spanning
/// the grade-n highest-weight line's ambient space.
pub fn candidate_space(engine: &Engine, n: u32) -> Vec<(Exponents, UElement)> {
    let named = named_elements(engine);
    uvw_exponents(n)
        .into_iter()
        .map(|(p, qv, r)| ((p, qv, r), uvw_product(engine, &named, p, qv, r)))
        .collect()
}

/// A solved singular vector: the exponent-indexed coefficients and the
/// expanded PBW vector with the central charge evaluated at k.
#[derive(Clone, Debug)]
pub struct SingularVector {
    pub level: Level,
    pub coefficients: BTreeMap<Exponents, Q>,
    pub vector: VacuumVector,
}

/// The exponent triple carrying the j-th boundary coefficient b_j:
/// (n/2 − 3j, 2j, 0) for even n and ((n−3)/2 − 3j, 2j + 1, 0) for odd n.
pub fn boundary_exponents(n: u32, j: u32) -> Option<Exponents> {
    if n % 2 == 0 {
        (n / 2).checked_sub(3 * j).map(|p| (p, 2 * j, 0))
    } else {
        ((n - 3) / 2).checked_sub(3 * j).map(|p| (p, 2 * j + 1, 0))
    }
}

/// The closed-form boundary coefficients b_0, b_1, … for grade n:
///   even n: b_j = 2ʲ ∏_{l<j} C(n/2 − 3l, 2) / (3ʲ (2j)!),
///   odd n:  b_j = 2ʲ ∏_{l<j} C((n−3)/2 − 3l, 2) / (3ʲ (2j + 1)!).
pub fn closed_form_coefficients(n: u32) -> Vec<Q> {
    let top = i64::from(if n % 2 == 0 { n / 2 } else { (n - 3) / 2 });
    let mut out = Vec::new();
    let mut j = 0i64;
    while top - 3 * j >= 0 {
        let mut b = Q::zero() + q(1);
        for l in 0..j {
            b *= binomial(top - 3 * l, 2) * q(2);
        }
        let parity_shift = if n % 2 == 0 { 0 } else { 1 };
        let mut denom = Q::zero() + q(1);
        for t in 1..=(2 * j + parity_shift) {
            denom *= q(t);
        }
        for _ in 0..j {
            denom *= q(3);
        }
        out.push(b / denom);
        j += 1;
    }
    out
}

/// Solve for the singular vector at the given level: the kernel of
/// C ↦ F₃₂(1)·(Σ C_{p,q,r} uᵖvᵠwʳ·𝟙) at k, normalized so the leading
/// boundary coefficient b₀ equals 1.
pub fn solve_singular(engine: &Engine, level: Level) -> SingularVector {
    let n = level.n();
    let k = level.k();
    let candidates = candidate_space(engine, n);
    assert!(
        !candidates.is_empty(),
        "no candidate monomials in grade {n}"
    );
    let raising = engine.word(&[AffineGen::x(Gen::F32, 1)]);
    let columns: Vec<SparseVec<Word>> = candidates
        .iter()
        .map(|(_, cand)| {
            let vac = act_on_vacuum(engine, cand);
            act(engine, &raising, &vac).at_level(&k).word_vector()
        })
        .collect();
    let kernel = null_space(&columns);
    assert_eq!(
        kernel.len(),
        1,
        "the raising-operator kernel must be one-dimensional in grade {n}"
    );
    let mut coeffs = kernel.into_iter().next().unwrap();

    let b0 = boundary_exponents(n, 0).unwrap();
    let pos = candidates
        .iter()
        .position(|(e, _)| *e == b0)
        .expect("leading boundary monomial is always a candidate");
    let scale = coeffs[pos].clone();
    assert!(
        !scale.is_zero(),
        "the leading boundary coefficient must not vanish"
    );
    for c in &mut coeffs {
        *c = &*c / &scale;
    }

    let mut vector = VacuumVector::zero();
    let mut coefficients = BTreeMap::new();
    for ((exps, cand), c) in candidates.iter().zip(&coeffs) {
        if c.is_zero() {
            continue;
        }
        coefficients.insert(*exps, c.clone());
        vector = vector.add(&act_on_vacuum(engine, cand).scaled(c));
    }
    SingularVector {
        level,
        coefficients,
        vector,
    }
}

/// Outcome of the independent property checks on a solved singular vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SingularChecks {
    /// Weight is exactly n·(θ∨ − δ).
    pub weight_ok: bool,
    /// E₀₁(0) annihilates the vector.
    pub e01_kills: bool,
    /// E₁₀(0) annihilates the vector.
    pub e10_kills: bool,
    /// F₃₂(1) annihilates the vector at level k.
    pub f32_kills: bool,
    /// The w-free boundary coefficients match the closed form.
    pub boundary_match: bool,
    /// C_{p,q,0}·C(p,2) = 3·C_{p−3,q+2,0}·C(q+2,2) across the r = 0 plane.
    pub quadratic_recurrence: bool,
}

impl SingularChecks {
    pub fn all_pass(&self) -> bool {
        self.weight_ok
            && self.e01_kills
            && self.e10_kills
            && self.f32_kills
            && self.boundary_match
            && self.quadratic_recurrence
    }

    /// Named check results, for reports.
    pub fn named(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("weight", self.weight_ok),
            ("e01_annihilates", self.e01_kills),
            ("e10_annihilates", self.e10_kills),
            ("f32_annihilates_at_level", self.f32_kills),
            ("boundary_closed_form", self.boundary_match),
            ("quadratic_recurrence", self.quadratic_recurrence),
        ]
    }
}

/// Re-verify every defining property of a solved singular vector from
/// scratch (independent of how it was obtained).
pub fn verify_singular(engine: &Engine, sv: &SingularVector) -> SingularChecks {
    let n = sv.level.n();
    let k = sv.level.k();

    let weight_ok = sv.vector.weight() == Some(QhatWeight::theta_delta_line(n as i32));

    let kills = |g: Gen, mode: i32| -> bool {
        let x = engine.word(&[AffineGen::x(g, mode)]);
        act(engine, &x, &sv.vector).at_level(&k).is_zero()
    };
    let e01_kills = kills(Gen::E01, 0);
    let e10_kills = kills(Gen::E10, 0);
    let f32_kills = kills(Gen::F32, 1);

    let bs = closed_form_coefficients(n);
    let boundary_match = bs.iter().enumerate().all(|(j, b)| {
        let exps = boundary_exponents(n, j as u32).expect("within closed-form range");
        sv.coefficients.get(&exps).cloned().unwrap_or_else(Q::zero) == *b
    });

    let coeff = |p: i64, qv: i64| -> Q {
        if p < 0 || qv < 0 {
            return Q::zero();
        }
        sv.coefficients
            .get(&(p as u32, qv as u32, 0))
            .cloned()
            .unwrap_or_else(Q::zero)
    };
    let mut quadratic_recurrence = true;
    let mut qv = 0i64;
    while 3 * qv <= i64::from(n) {
        let rem = i64::from(n) - 3 * qv;
        if rem % 2 == 0 {
            let p = rem / 2;
            let lhs = coeff(p, qv) * binomial(p, 2);
            let rhs = q(3) * coeff(p - 3, qv + 2) * binomial(qv + 2, 2);
            if lhs != rhs {
                quadratic_recurrence = false;
            }
        }
        qv += 1;
    }

    SingularChecks {
        weight_ok,
        e01_kills,
        e10_kills,
        f32_kills,
        boundary_match,
        quadratic_recurrence,
    }
}
