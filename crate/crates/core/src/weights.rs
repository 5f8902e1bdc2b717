//! Finite-dimensional representation bookkeeping for the simple algebra:
//! Weyl dimensions and Freudenthal weight multiplicities, in simple-root
//! coordinates.  These provide independent cross-checks on the module
//! generated by a Zhu image (its total dimension and the dimension of its
//! zero-weight subspace).

use std::collections::BTreeMap;

/// Weights and roots written as (a, b) = a·α + b·β in simple-root
/// coordinates, with α the short simple root.
pub type RootCoords = (i64, i64);

/// The six positive roots.
pub const POSITIVE_ROOTS: [RootCoords; 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];

/// Half the sum of the positive roots: ρ = 5α + 3β.
pub const RHO: RootCoords = (5, 3);

/// The short fundamental weight ω₁ = 2α + β (highest weight of the
/// seven-dimensional representation).
pub const OMEGA1: RootCoords = (2, 1);

/// Invariant inner product in simple-root coordinates, normalized so the
/// short root α has squared length 2 (Gram matrix [[2, −3], [−3, 6]]).
pub fn inner(u: RootCoords, v: RootCoords) -> i64 {
    2 * u.0 * v.0 + 6 * u.1 * v.1 - 3 * (u.0 * v.1 + u.1 * v.0)
}

fn vec_add(u: RootCoords, v: RootCoords) -> RootCoords {
    (u.0 + v.0, u.1 + v.1)
}

fn vec_scale(t: i64, u: RootCoords) -> RootCoords {
    (t * u.0, t * u.1)
}

/// Weyl dimension formula: dim V(λ) = ∏_{γ>0} (λ+ρ, γ)/(ρ, γ) for a
/// dominant weight λ in simple-root coordinates.
pub fn weyl_dimension(lambda: RootCoords) -> u64 {
    let shifted = vec_add(lambda, RHO);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for g in POSITIVE_ROOTS {
        num *= i128::from(inner(shifted, g));
        den *= i128::from(inner(RHO, g));
    }
    assert!(num > 0 && num % den == 0, "weight must be dominant");
    u64::try_from(num / den).expect("dimension fits in u64")
}

/// All weight multiplicities of V(λ) by Freudenthal's recursion, keyed by
/// (i, j) with weight μ = λ − iα − jβ.
pub fn weight_multiplicities(lambda: RootCoords) -> BTreeMap<RootCoords, u64> {
    let (a, b) = lambda;
    assert!(a >= 0 && b >= 0);
    let c2 = inner(vec_add(lambda, RHO), vec_add(lambda, RHO));
    let mut mult: BTreeMap<RootCoords, u64> = BTreeMap::new();
    mult.insert((0, 0), 1);
    // Weights live between λ and −λ: descents (i, j) with i ≤ 2a, j ≤ 2b,
    // processed by increasing height i + j.
    let mut descents: Vec<RootCoords> = (0..=2 * a)
        .flat_map(|i| (0..=2 * b).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j > 0)
        .collect();
    descents.sort_by_key(|&(i, j)| (i + j, i));
    for (i, j) in descents {
        let mu = (a - i, b - j);
        let mut num: i64 = 0;
        for g in POSITIVE_ROOTS {
            for t in 1.. {
                let up = vec_add(mu, vec_scale(t, g));
                let (di, dj) = (a - up.0, b - up.1);
                if di < 0 || dj < 0 {
                    break;
                }
                let m = mult.get(&(di, dj)).copied().unwrap_or(0);
                if m > 0 {
                    num += inner(up, g) * m as i64;
                }
            }
        }
        // num = 0 exactly when μ is not a weight of V(λ) (Casimir identity),
        // so the denominator is only consulted for genuine weights, where it
        // is strictly positive.
        if num == 0 {
            continue;
        }
        let den = c2 - inner(vec_add(mu, RHO), vec_add(mu, RHO));
        assert!(den > 0, "positive numerator forces a genuine weight below λ");
        assert_eq!((2 * num) % den, 0, "Freudenthal division must be exact");
        mult.insert((i, j), (2 * num / den) as u64);
    }
    mult
}

/// Multiplicity of the zero weight in V(λ); zero if λ is not in the root
/// lattice... for λ in the root lattice this is the (i, j) = λ entry.
pub fn zero_weight_multiplicity(lambda: RootCoords) -> u64 {
    weight_multiplicities(lambda)
        .get(&lambda)
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_short_fundamental_powers() {
        let dims: Vec<u64> = (0..=8)
            .map(|n| weyl_dimension(vec_scale(n, OMEGA1)))
            .collect();
        assert_eq!(dims, vec![1, 7, 27, 77, 182, 378, 714, 1254, 2079]);
    }

    #[test]
    fn adjoint_and_small_reps() {
        assert_eq!(weyl_dimension((0, 0)), 1);
        assert_eq!(weyl_dimension((3, 2)), 14); // adjoint, highest root 3α+2β
        assert_eq!(weyl_dimension((2, 1)), 7);
    }

    #[test]
    fn multiplicities_sum_to_dimension() {
        for n in 0..=6 {
            let lambda = vec_scale(n, OMEGA1);
            let mults = weight_multiplicities(lambda);
            let total: u64 = mults.values().sum();
            assert_eq!(total, weyl_dimension(lambda), "at n = {n}");
        }
    }

    #[test]
    fn zero_weight_multiplicities() {
        let cases = [(2u32, 3u64), (3, 5), (5, 12), (6, 18), (8, 33)];
        for (n, expect) in cases {
            assert_eq!(
                zero_weight_multiplicity(vec_scale(i64::from(n), OMEGA1)),
                expect,
                "zero-weight multiplicity at n = {n}"
            );
        }
    }

    #[test]
    fn seven_dimensional_weights() {
        // V(ω₁): weights ±(short roots) and 0, all multiplicity 1.
        let mults = weight_multiplicities(OMEGA1);
        assert_eq!(mults.len(), 7);
        assert!(mults.values().all(|&m| m == 1));
        assert_eq!(mults.get(&OMEGA1), Some(&1)); // zero weight at descent λ
    }

    #[test]
    fn adjoint_weights() {
        // V(3α+2β): the twelve roots with multiplicity 1 and 0 with
        // multiplicity 2.
        let mults = weight_multiplicities((3, 2));
        assert_eq!(mults.values().sum::<u64>(), 14);
        assert_eq!(mults.get(&(3, 2)), Some(&2));
        assert_eq!(mults.len(), 13);
    }
}
