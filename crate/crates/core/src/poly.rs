//! Exact polynomial arithmetic over ℚ: dense univariate polynomials with
//! gcd, squarefree (Yun) decomposition, and complete factorization into
//! irreducibles over ℚ (Zassenhaus: reduction mod a small prime,
//! Cantor–Zassenhaus splitting, quadratic Hensel lifting, subset
//! recombination under the Mignotte bound), plus the sparse bivariate
//! Cartan polynomials used by the weight classification.
//!
//! Everything is deterministic: prime selection scans upward from 3, and the
//! equal-degree splitting uses a fixed enumeration of trial elements, so
//! identical inputs always produce identical factor lists.

use crate::rational::{q, Q};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Dense univariate polynomial over ℚ; `coeffs[i]` is the coefficient of
/// xⁱ, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn one() -> Self {
        QPoly::constant(q(1))
    }

    /// The monomial c·x^d.
    pub fn monomial(d: usize, c: Q) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Q::zero(); d + 1];
        coeffs[d] = c;
        QPoly { coeffs }
    }

    pub fn x() -> Self {
        QPoly::monomial(1, q(1))
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = Q::one() / d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            Q::zero();
            self.coeffs.len().saturating_sub(d.coeffs.len()) + 1
        ];
        while rem.len() >= d.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - d.coeffs.len();
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k + j] -= t;
                }
            }
            // The top coefficient is now exactly zero.
            debug_assert!(rem.last().unwrap().is_zero() || dd == 0);
            rem.pop();
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * q(i as i64 + 1))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Yun's squarefree decomposition: pairwise-coprime squarefree monic
    /// polynomials with multiplicities, ∏ fᵢ^{eᵢ} · leading = self.
    pub fn squarefree_decomposition(&self) -> (Q, Vec<(QPoly, u32)>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let lead = self.leading();
        let f = self.monic();
        if f.degree() == Some(0) {
            return (lead, Vec::new());
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let first_gcd = QPoly::gcd(&f, &df);
        let mut b = f.div_rem(&first_gcd).0;
        let mut d = df.div_rem(&first_gcd).0.sub(&b.derivative());
        let mut mult = 1u32;
        while b.degree() != Some(0) {
            let t = QPoly::gcd(&b, &d);
            if t.degree() != Some(0) {
                out.push((t.clone(), mult));
            }
            b = b.div_rem(&t).0;
            d = d.div_rem(&t).0.sub(&b.derivative());
            mult += 1;
        }
        (lead, out)
    }

    /// All rational roots with multiplicities, sorted ascending.
    pub fn rational_roots(&self) -> Vec<(Q, u32)> {
        let (_, factors) = self.factor();
        let mut roots: Vec<(Q, u32)> = factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, e)| (-(f.coeff(0) / f.coeff(1)), *e))
            .collect();
        roots.sort_by(|x, y| x.0.cmp(&y.0));
        roots
    }

    /// Complete factorization over ℚ: `constant × ∏ fᵢ^{eᵢ}` with each fᵢ
    /// monic irreducible; factors sorted by (degree, coefficient sequence).
    pub fn factor(&self) -> (Q, Vec<(QPoly, u32)>) {
        let (lead, squarefree) = self.squarefree_decomposition();
        let mut factors: Vec<(QPoly, u32)> = Vec::new();
        for (part, mult) in squarefree {
            for irr in factor_squarefree(&part) {
                factors.push((irr, mult));
            }
        }
        factors.sort_by(|(f, _), (g, _)| {
            f.coeffs
                .len()
                .cmp(&g.coeffs.len())
                .then_with(|| f.coeffs.cmp(&g.coeffs))
        });
        (lead, factors)
    }

    /// Remainder of `self` modulo `modulus` — the canonical representative
    /// in the quotient ring ℚ[x]/(modulus).
    pub fn reduce_mod(&self, modulus: &QPoly) -> QPoly {
        self.div_rem(modulus).1
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = crate::rational::q_str(c);
            let shown = if first {
                first = false;
                cs
            } else if let Some(mag) = cs.strip_prefix('-') {
                write!(out, " - ")?;
                mag.to_string()
            } else {
                write!(out, " + ")?;
                cs
            };
            match i {
                0 => write!(out, "{shown}")?,
                1 if shown == "1" => write!(out, "x")?,
                1 if shown == "-1" => write!(out, "-x")?,
                1 => write!(out, "{shown}*x")?,
                _ if shown == "1" => write!(out, "x^{i}")?,
                _ if shown == "-1" => write!(out, "-x^{i}")?,
                _ => write!(out, "{shown}*x^{i}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Factorization of a squarefree monic rational polynomial (Zassenhaus).
// ---------------------------------------------------------------------------

fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    match f.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![f.monic()],
        _ => {
            let fz = clear_denominators(f);
            factor_squarefree_z(&fz)
                .into_iter()
                .map(|g| {
                    let lead = g.last().unwrap().clone();
                    QPoly::from_coeffs(
                        g.iter()
                            .map(|c| Q::new(c.clone(), lead.clone()))
                            .collect(),
                    )
                })
                .collect()
        }
    }
}

/// Primitive integer polynomial proportional to `f` with positive leading
/// coefficient.
fn clear_denominators(f: &QPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().map(Signed::is_negative).unwrap_or(false) {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    ints
}

fn poly_deg(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
    p
}

fn mod_reduce(p: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    trim(p.iter().map(|c| c.mod_floor(m)).collect())
}

fn mod_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    trim(out)
}

fn mod_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    trim(out)
}

fn mod_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in &mut out {
        *c = c.mod_floor(m);
    }
    trim(out)
}

fn mod_scale(a: &[BigInt], s: &BigInt, m: &BigInt) -> Vec<BigInt> {
    trim(a.iter().map(|c| (c * s).mod_floor(m)).collect())
}

/// Modular inverse via extended Euclid; panics if not invertible.
fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "element not invertible in Z/{m}");
    e.x.mod_floor(m)
}

/// Division with remainder by a polynomial whose leading coefficient is
/// invertible mod m.  Returns (quotient, remainder).
fn mod_div_rem(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!d.is_empty());
    let lead_inv = mod_inv(d.last().unwrap(), m);
    let mut rem: Vec<BigInt> = mod_reduce(a, m);
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(d.len()) + 1];
    while rem.len() >= d.len() {
        let k = rem.len() - d.len();
        let c = (rem.last().unwrap() * &lead_inv).mod_floor(m);
        if !c.is_zero() {
            quot[k] = c.clone();
            for (j, dc) in d.iter().enumerate() {
                let t = (&rem[k + j] - dc * &c).mod_floor(m);
                rem[k + j] = t;
            }
        }
        rem.pop();
        rem = trim(rem);
        if rem.len() < d.len() {
            break;
        }
    }
    (trim(quot), trim(rem))
}

fn mod_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let (mut x, mut y) = (mod_reduce(a, p), mod_reduce(b, p));
    while !y.is_empty() {
        let r = mod_div_rem(&x, &y, p).1;
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = mod_inv(&lead, p);
        x = mod_scale(&x, &inv, p);
    }
    x
}

fn mod_pow(base: &[BigInt], mut e: BigInt, f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut result = vec![BigInt::one()];
    let mut b = mod_div_rem(base, f, m).1;
    while e.is_positive() {
        if e.is_odd() {
            result = mod_div_rem(&mod_mul(&result, &b, m), f, m).1;
        }
        b = mod_div_rem(&mod_mul(&b, &b, m), f, m).1;
        e >>= 1;
    }
    result
}

/// Distinct-degree factorization of a squarefree monic polynomial mod p:
/// list of (product of all irreducible factors of degree d, d).
fn ddf(f: &[BigInt], p: &BigInt) -> Vec<(Vec<BigInt>, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = vec![BigInt::zero(), BigInt::one()]; // x
    let mut d = 0usize;
    while poly_deg(&rest) >= 1 {
        d += 1;
        if 2 * d > poly_deg(&rest) {
            out.push((rest.clone(), poly_deg(&rest)));
            break;
        }
        h = mod_pow(&h, p.clone(), &rest, p);
        let hx = mod_sub(&h, &[BigInt::zero(), BigInt::one()], p);
        let g = mod_gcd(&hx, &rest, p);
        if poly_deg(&g) >= 1 {
            out.push((g.clone(), d));
            rest = mod_div_rem(&rest, &g, p).0;
            h = mod_div_rem(&h, &rest, p).1;
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (deterministic trial sequence).
fn edf(f: &[BigInt], d: usize, p: &BigInt) -> Vec<Vec<BigInt>> {
    if poly_deg(f) == d {
        return vec![f.to_vec()];
    }
    let exponent: BigInt = (p.pow(d as u32) - BigInt::one()) / BigInt::from(2);
    // Deterministic sequence of trial polynomials: x + c, then higher-degree
    // perturbations if needed.
    let mut trial = 0u64;
    loop {
        trial += 1;
        let a: Vec<BigInt> = if trial <= 1_000 {
            vec![BigInt::from(trial), BigInt::one()]
        } else {
            // Very unlikely fallback: quadratic trials.
            vec![
                BigInt::from(trial % 1_000),
                BigInt::from(trial / 1_000),
                BigInt::one(),
            ]
        };
        let b = mod_pow(&a, exponent.clone(), f, p);
        let b1 = mod_sub(&b, &[BigInt::one()], p);
        let g = mod_gcd(&b1, f, p);
        let dg = poly_deg(&g);
        if dg >= 1 && dg < poly_deg(f) {
            let rest = mod_div_rem(f, &g, p).0;
            let mut out = edf(&g, d, p);
            out.extend(edf(&rest, d, p));
            return out;
        }
    }
}

/// Balanced representative in (−m/2, m/2].
fn balance(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Quadratic Hensel lifting: given f ≡ g·h (mod m) with g monic and
/// s·g + t·h ≡ 1 (mod m), lift to modulus m² (all inputs reduced mod m).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = mod_sub(f, &mod_mul(g, h, &m2), &m2);
    let (qq, r) = mod_div_rem(&mod_mul(s, &e, &m2), h, &m2);
    let g1 = mod_add(g, &mod_add(&mod_mul(t, &e, &m2), &mod_mul(&qq, g, &m2), &m2), &m2);
    let h1 = mod_add(h, &r, &m2);
    let b = mod_sub(
        &mod_add(&mod_mul(s, &g1, &m2), &mod_mul(t, &h1, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (cc, dd) = mod_div_rem(&mod_mul(s, &b, &m2), &h1, &m2);
    let s1 = mod_sub(s, &dd, &m2);
    let t1 = mod_sub(
        t,
        &mod_add(&mod_mul(t, &b, &m2), &mod_mul(&cc, &g1, &m2), &m2),
        &m2,
    );
    (g1, h1, s1, t1)
}

/// Lift the factorization f ≡ lc(f)·∏gᵢ (mod p), gᵢ monic, to a modulus
/// ≥ target.  Returns the lifted monic factors and the final modulus.
///
/// Orientation per quadratic Hensel lifting: the first factor of each split
/// carries lc(f) and the cofactor is monic; division inside the step is by
/// the monic cofactor.
fn hensel_lift_all(
    f: &[BigInt],
    factors: &[Vec<BigInt>],
    p: &BigInt,
    target: &BigInt,
) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut modulus = p.clone();
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    if factors.len() == 1 {
        let lead_inv = mod_inv(f.last().unwrap(), &modulus);
        return (vec![mod_scale(f, &lead_inv, &modulus)], modulus);
    }
    // Split: g = lc·(first monic factor), h = ∏rest (monic).
    let lc = f.last().unwrap();
    let g0 = mod_scale(&factors[0], &lc.mod_floor(p), p);
    let mut h0 = vec![BigInt::one()];
    for gi in &factors[1..] {
        h0 = mod_mul(&h0, gi, p);
    }
    let (s0, t0) = bezout_mod_p(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (g0, h0, s0, t0);
    let mut m = p.clone();
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        debug_assert_eq!(poly_deg(&g1), poly_deg(&g));
        debug_assert!(h1.last().unwrap().is_one(), "cofactor must stay monic");
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    debug_assert!(mod_sub(f, &mod_mul(&g, &h, &m), &m).is_empty());
    // Recurse on the monic cofactor with the remaining factor list.
    let (mut rest, m_rest) = hensel_lift_all(&h, &factors[1..], p, target);
    assert_eq!(m_rest, m);
    let g_monic = mod_scale(&g, &mod_inv(g.last().unwrap(), &m), &m);
    let mut out = vec![g_monic];
    out.append(&mut rest);
    (out, m)
}

/// Extended Euclid mod prime p on polynomials: s·a + t·b ≡ 1 (mod p).
fn bezout_mod_p(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    // Iterative extended Euclid over the field Z/p.
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
    while !r1.is_empty() {
        let (qq, r2) = mod_div_rem(&r0, &r1, p);
        let s2 = mod_sub(&s0, &mod_mul(&qq, &s1, p), p);
        let t2 = mod_sub(&t0, &mod_mul(&qq, &t1, p), p);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(poly_deg(&r0), 0, "inputs not coprime mod {p}");
    let inv = mod_inv(&r0[0], p);
    (mod_scale(&s0, &inv, p), mod_scale(&t0, &inv, p))
}

const SMALL_PRIMES: [u32; 25] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

/// Factor a squarefree primitive integer polynomial into primitive
/// irreducible integer polynomials (positive leading coefficients).
fn factor_squarefree_z(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = poly_deg(f);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // Prime selection: p ∤ lc and f stays squarefree mod p.
    let p = SMALL_PRIMES
        .iter()
        .map(|&p| BigInt::from(p))
        .find(|p| {
            if (&lc % p).is_zero() {
                return false;
            }
            let fp = mod_reduce(f, p);
            if poly_deg(&fp) != n {
                return false;
            }
            let dfp = mod_reduce(&derivative_z(f), p);
            poly_deg(&mod_gcd(&fp, &dfp, p)) == 0
        })
        .expect("no suitable small prime for factorization (degree too large?)");

    // Monic image mod p and its irreducible factors.
    let fp = mod_reduce(f, &p);
    let fp_monic = mod_scale(&fp, &mod_inv(fp.last().unwrap(), &p), &p);
    let mut modular: Vec<Vec<BigInt>> = Vec::new();
    for (part, d) in ddf(&fp_monic, &p) {
        modular.extend(edf(&part, d, &p));
    }
    modular.sort();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Mignotte-style bound on coefficients of lc·(any monic factor).
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    let bound: BigInt = (BigInt::from(2).pow(n as u32 + 1)) * norm * lc.abs();
    let target = &bound * 2 + 1;
    let (lifted, modulus) = hensel_lift_all(f, &modular, &p, &target);

    // Subset recombination.
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut f_cur = f.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= remaining.len() {
        let indices: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&indices, subset_size) {
            let lc_cur = f_cur.last().unwrap().clone();
            let mut prod = vec![lc_cur.mod_floor(&modulus)];
            for &i in &combo {
                prod = mod_mul(&prod, &remaining[i], &modulus);
            }
            let candidate: Vec<BigInt> =
                trim(prod.iter().map(|c| balance(c, &modulus)).collect());
            let prim = primitive_part(&candidate);
            if prim.len() <= 1 {
                continue;
            }
            if let Some(quot) = exact_div_z(&f_cur, &prim) {
                out.push(prim);
                f_cur = quot;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        subset_size += 1;
    }
    if poly_deg(&f_cur) >= 1 {
        out.push(primitive_part(&f_cur));
    }
    out.sort();
    out
}

fn derivative_z(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from(i as u64 + 1))
        .collect()
}

fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in p {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.iter().map(|c| c / &content).collect();
    if out.last().map(Signed::is_negative).unwrap_or(false) {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    out
}

/// Exact division of integer polynomials; None if not divisible over ℤ.
fn exact_div_z(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.is_empty() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(d.len()) + 1];
    let lead = d.last().unwrap();
    while rem.len() >= d.len() {
        let k = rem.len() - d.len();
        let (c, r) = rem.last().unwrap().div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        quot[k] = c.clone();
        for (j, dc) in d.iter().enumerate() {
            let t = &rem[k + j] - dc * &c;
            rem[k + j] = t;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() < d.len() {
            return None;
        }
    }
    if trim(rem).is_empty() {
        Some(trim(quot))
    } else {
        None
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(items: &[usize], start: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, i + 1, k, current, out);
            current.pop();
        }
    }
    rec(items, 0, k, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Bivariate Cartan polynomials.
// ---------------------------------------------------------------------------

/// Sparse polynomial in the two Cartan coordinates (H₁₀, H₀₁):
/// exponent pair → coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = HPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        HPoly::constant(q(1))
    }

    /// H₁₀ (the α∨ Cartan coordinate).
    pub fn h10() -> Self {
        let mut p = HPoly::zero();
        p.add_term(1, 0, q(1));
        p
    }

    /// H₀₁ (the β∨ Cartan coordinate).
    pub fn h01() -> Self {
        let mut p = HPoly::zero();
        p.add_term(0, 1, q(1));
        p
    }

    pub fn add_term(&mut self, e10: u32, e01: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e10, e01)).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(e10, e01));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e10: u32, e01: u32) -> Q {
        self.terms
            .get(&(e10, e01))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Total degree in the S(h) gradation (max e₁₀+e₀₁); None when zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// The part of total degree exactly d.
    pub fn graded_part(&self, d: u32) -> HPoly {
        let mut out = HPoly::zero();
        for (&(a, b), c) in &self.terms {
            if a + b == d {
                out.add_term(a, b, c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HPoly) -> HPoly {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> HPoly {
        if s.is_zero() {
            return HPoly::zero();
        }
        HPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, c * s))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, h10: &Q, h01: &Q) -> Q {
        let mut acc = Q::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t *= h10;
            }
            for _ in 0..b {
                t *= h01;
            }
            acc += t;
        }
        acc
    }

    /// Substitute H₁₀ = value, producing a univariate polynomial in H₀₁.
    pub fn substitute_h10(&self, value: &Q) -> QPoly {
        let mut coeffs: Vec<Q> = Vec::new();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t *= value;
            }
            if coeffs.len() <= b as usize {
                coeffs.resize(b as usize + 1, Q::zero());
            }
            coeffs[b as usize] += t;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let cs = crate::rational::q_str(c);
            if first {
                first = false;
                write!(out, "{cs}")?;
            } else if cs.starts_with('-') {
                write!(out, " - {}", cs.trim_start_matches('-'))?;
            } else {
                write!(out, " + {cs}")?;
            }
            if a > 0 {
                write!(out, "*H10^{a}")?;
            }
            if b > 0 {
                write!(out, "*H01^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn div_rem_and_gcd() {
        // (x²−1) = (x−1)(x+1)
        let f = p(&[-1, 0, 1]);
        let (quot, rem) = f.div_rem(&p(&[-1, 1]));
        assert_eq!(quot, p(&[1, 1]));
        assert!(rem.is_zero());
        let g = QPoly::gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1]));
        assert_eq!(g, p(&[1, 1]));
        assert!(p(&[-1, 1]).divides(&f));
        assert!(!p(&[-2, 1]).divides(&f));
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // (x−1)²(x+2)³
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]).mul(&p(&[2, 1])).mul(&p(&[2, 1])));
        let (lead, parts) = f.squarefree_decomposition();
        assert_eq!(lead, q(1));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (p(&[-1, 1]), 2));
        assert_eq!(parts[1], (p(&[2, 1]), 3));
    }

    #[test]
    fn factor_products_of_quadratics() {
        // (x²−2)(x²−3): two irreducible quadratics.
        let f = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1]));
        let (lead, factors) = f.factor();
        assert_eq!(lead, q(1));
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, p(&[-3, 0, 1]));
        assert_eq!(factors[1].0, p(&[-2, 0, 1]));
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn factor_with_rational_roots_and_content() {
        // (2x−1)(3x+2)(x²+x+1), leading 6.
        let f = p(&[-1, 2]).mul(&p(&[2, 3])).mul(&p(&[1, 1, 1]));
        let (lead, factors) = f.factor();
        assert_eq!(lead, q(6));
        let degrees: Vec<usize> = factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(qr(-2, 3), 1), (qr(1, 2), 1)]);
    }

    #[test]
    fn factor_irreducibles_stay_whole() {
        for f in [
            p(&[1, 0, 0, 0, 1]),        // x⁴+1
            p(&[1, -1, 0, 0, 1]),       // x⁴−x+1 (irreducible)
            p(&[1, 0, -1, 0, 1]),       // x⁴−x²+1 = Φ₁₂
            p(&[1, 1, 0, 1]),           // x³+x+1... coefficient order: 1+x+x³
        ] {
            let (_, factors) = f.factor();
            assert_eq!(factors.len(), 1, "{f} should be irreducible");
            assert_eq!(factors[0].0, f.monic());
            assert_eq!(factors[0].1, 1);
        }
    }

    #[test]
    fn factor_sixth_cyclotomic_split() {
        // x⁶−1 = (x−1)(x+1)(x²+x+1)(x²−x+1).
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let (lead, factors) = f.factor();
        assert_eq!(lead, q(1));
        let got: Vec<QPoly> = factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            got,
            vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, -1, 1]), p(&[1, 1, 1])]
        );
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x²−2)²(x−1).
        let f = p(&[-2, 0, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[-1, 1]));
        let (_, factors) = f.factor();
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0], (p(&[-1, 1]), 1));
        assert_eq!(factors[1], (p(&[-2, 0, 1]), 2));
    }

    #[test]
    fn factor_two_quartics() {
        // (x⁴+1)(x⁴−x+1): degree-8 recombination exercise.
        let f = p(&[1, 0, 0, 0, 1]).mul(&p(&[1, -1, 0, 0, 1]));
        let (_, factors) = f.factor();
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, p(&[1, -1, 0, 0, 1]));
        assert_eq!(factors[1].0, p(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn factor_reassembles_exactly() {
        let samples = [
            p(&[6, -5, 1]),                          // (x−2)(x−3)
            p(&[-1, 2]).mul(&p(&[2, 3])).mul(&p(&[1, 1, 1])),
            p(&[1, 0, 0, 0, 1]).mul(&p(&[1, -1, 0, 0, 1])),
            p(&[-2, 0, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[-1, 1])),
            QPoly::from_coeffs(vec![qr(1, 2), q(0), qr(-3, 4), q(1)]),
        ];
        for f in samples {
            let (lead, factors) = f.factor();
            let mut acc = QPoly::constant(lead);
            for (g, e) in &factors {
                for _ in 0..*e {
                    acc = acc.mul(g);
                }
            }
            assert_eq!(acc, f, "factorization does not reassemble {f}");
        }
    }

    #[test]
    fn reduce_mod_detects_quotient_ring_zero() {
        // x² ≡ 2 in ℚ[x]/(x²−2): (x²−2)·(x³) reduces to 0; x³ reduces to 2x.
        let f = p(&[-2, 0, 1]);
        let g = f.mul(&p(&[0, 0, 0, 1]));
        assert!(g.reduce_mod(&f).is_zero());
        assert_eq!(p(&[0, 0, 0, 1]).reduce_mod(&f), p(&[0, 2]));
    }

    #[test]
    fn hpoly_arithmetic_substitute_eval() {
        // (H10 + H01)² = H10² + 2H10H01 + H01².
        let s = HPoly::h10().add(&HPoly::h01());
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(2, 0), q(1));
        assert_eq!(sq.coeff(1, 1), q(2));
        assert_eq!(sq.coeff(0, 2), q(1));
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.eval(&q(1), &q(2)), q(9));
        // Substituting H10 = 3 gives (3 + x)².
        let uni = sq.substitute_h10(&q(3));
        assert_eq!(uni, p(&[9, 6, 1]));
        assert_eq!(sq.graded_part(2), sq);
        assert!(sq.graded_part(1).is_zero());
    }

    #[test]
    fn qpoly_display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[2, -3]).to_string(), "-3*x + 2");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(
            QPoly::from_coeffs(vec![qr(1, 2), q(1)]).to_string(),
            "x + 1/2"
        );
    }
}
