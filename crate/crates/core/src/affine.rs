//! The affinization ĝ of G2: generators `X(n) = X ⊗ tⁿ`, the central element
//! `K`, the affine bracket with central extension, and the grading by the
//! affine root lattice spanned by α, β, δ (plus Λ₀ for module weights).
//!
//! The bracket is the standard one,
//!
//! ```text
//! [X(m), Y(n)] = [X,Y](m+n) + m·δ_{m+n,0}·(X|Y)·K,     [K, –] = 0,
//! ```
//!
//! with `(·|·)` the invariant form of [`crate::g2`] normalized so the highest
//! long root has squared length 2 (this is the normalization under which `K`
//! acts on a level-k vacuum module by the scalar `k`).

use crate::g2::{bracket_gens, invariant_form_gens, Gen, RootVector};
use crate::rational::{q, Q};
use num::Zero;
use std::fmt;

/// A generator of ĝ: either `X(mode) = X ⊗ t^mode` or the central `K`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AffineGen {
    X(Gen, i32),
    K,
}

impl AffineGen {
    /// Shorthand constructor for `X(mode)`.
    pub fn x(gen: Gen, mode: i32) -> AffineGen {
        AffineGen::X(gen, mode)
    }

    pub fn mode(self) -> i32 {
        match self {
            AffineGen::X(_, m) => m,
            AffineGen::K => 0,
        }
    }

    /// Strictly negative mode, i.e. a generator of ĝ₋ = g ⊗ t⁻¹ℂ[t⁻¹].
    pub fn is_negative(self) -> bool {
        matches!(self, AffineGen::X(_, m) if m < 0)
    }
}

impl fmt::Display for AffineGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineGen::X(g, m) => write!(f, "{g}({m})"),
            AffineGen::K => f.write_str("K"),
        }
    }
}

/// A weight in the affine root lattice extended by Λ₀:
/// `c_alpha·α + c_beta·β + c_delta·δ + c_lambda0·Λ₀`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QhatWeight {
    pub c_alpha: i32,
    pub c_beta: i32,
    pub c_delta: i32,
    pub c_lambda0: Q,
}

impl QhatWeight {
    pub fn zero() -> Self {
        QhatWeight {
            c_alpha: 0,
            c_beta: 0,
            c_delta: 0,
            c_lambda0: Q::zero(),
        }
    }

    pub fn from_root(root: RootVector, delta: i32) -> Self {
        QhatWeight {
            c_alpha: root.c_alpha,
            c_beta: root.c_beta,
            c_delta: delta,
            c_lambda0: Q::zero(),
        }
    }

    /// `n·(θ∨ − δ)` with `θ∨ = 2α+β` — the weight line carrying every
    /// singular-vector computation in this crate.
    pub fn theta_delta_line(n: i32) -> Self {
        QhatWeight::from_root(RootVector::THETA_SHORT.scale(n), -n)
    }

    pub fn add(&self, other: &QhatWeight) -> Self {
        QhatWeight {
            c_alpha: self.c_alpha + other.c_alpha,
            c_beta: self.c_beta + other.c_beta,
            c_delta: self.c_delta + other.c_delta,
            c_lambda0: self.c_lambda0.clone() + other.c_lambda0.clone(),
        }
    }

    /// The finite part (α, β components).
    pub fn finite(&self) -> RootVector {
        RootVector::new(self.c_alpha, self.c_beta)
    }
}

impl fmt::Display for QhatWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}a+{}b+{}d+({})L0",
            self.c_alpha,
            self.c_beta,
            self.c_delta,
            crate::rational::q_str(&self.c_lambda0)
        )
    }
}

/// `wt(X(n)) = root(X) + n·δ`, `wt(K) = 0`.
pub fn weight_of(g: AffineGen) -> QhatWeight {
    match g {
        AffineGen::X(gen, mode) => QhatWeight::from_root(gen.root(), mode),
        AffineGen::K => QhatWeight::zero(),
    }
}

/// The affine bracket `[a, b]` of two generators, as a finite linear
/// combination of generators (possibly including `K`).
pub fn affine_bracket(a: AffineGen, b: AffineGen) -> Vec<(AffineGen, Q)> {
    let (AffineGen::X(gx, mx), AffineGen::X(gy, my)) = (a, b) else {
        return Vec::new();
    };
    let mut out: Vec<(AffineGen, Q)> = bracket_gens(gx, gy)
        .into_iter()
        .map(|(g, c)| (AffineGen::X(g, mx + my), c))
        .collect();
    if mx + my == 0 {
        let f = invariant_form_gens(gx, gy);
        if !f.is_zero() {
            out.push((AffineGen::K, q(mx as i64) * f));
        }
    }
    out
}
