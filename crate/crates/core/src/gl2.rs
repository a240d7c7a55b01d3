//! The linear group action on symbol tables: pushforward under a change of
//! basis and the genericity normalization that moves every symbol away from
//! zero by composing shears.

use crate::error::{Error, Result};
use crate::ricci::{rank_signature, ricci};
use crate::symbols::{ChristoffelSymbols, LinearMap};

/// Symbols of the same connection in the coordinates `w = T x`.
///
/// The two lower indices transform covariantly (with `T^-1`) and the upper
/// index contravariantly (with `T`):
///
/// ```text
/// (T C)_ab^c = (T^-1)^i_a (T^-1)^j_b  T^c_k  C_ij^k
/// ```
///
/// `pushforward(C, identity) = C` and pushforwards compose with matrix
/// composition of the maps.
pub fn pushforward(c: &ChristoffelSymbols, t: &LinearMap) -> Result<ChristoffelSymbols> {
    let inv = t.inverse()?;
    // Columns of the inverse: the old-frame components of the new basis
    // vectors d/dw^a.
    let basis = [[inv.t11, inv.t21], [inv.t12, inv.t22]];
    let rows = [[t.t11, t.t12], [t.t21, t.t22]];
    let entry = |a: usize, b: usize, cc: usize| -> f64 {
        let mut v = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    v += basis[a][i] * basis[b][j] * rows[cc][k] * c.gamma(i, j, k);
                }
            }
        }
        v
    };
    ChristoffelSymbols::new(
        entry(0, 0, 0),
        entry(0, 0, 1),
        entry(0, 1, 0),
        entry(0, 1, 1),
        entry(1, 1, 0),
        entry(1, 1, 1),
    )
}

/// Relative genericity threshold: every symbol of the normalized table must
/// exceed this fraction of the largest one.
pub const GENERICITY_FRACTION: f64 = 1e-3;

const EPS_CANDIDATES: [f64; 16] = [
    1.0,
    -1.0,
    0.5,
    -0.5,
    1.0 / 3.0,
    -1.0 / 3.0,
    0.25,
    -0.25,
    0.2,
    -0.2,
    1.0 / 6.0,
    -1.0 / 6.0,
    1.0 / 7.0,
    -1.0 / 7.0,
    0.125,
    -0.125,
];

/// Produces a linearly isomorphic table with every symbol bounded away from
/// zero, together with the map that realizes it.
///
/// Requires a rank-2 Ricci tensor: under that hypothesis each obstruction to
/// genericity is a non-trivial polynomial of degree at most 3 in the shear
/// parameter, so a bounded deterministic search over shear pairs succeeds.
/// The candidate order is rotated by `seed` for reproducible variety; a
/// table that is already generic is returned unchanged.
pub fn normalize_generic(
    c: &ChristoffelSymbols,
    seed: u64,
) -> Result<(ChristoffelSymbols, LinearMap)> {
    let rho = ricci(c);
    let (rank, _) = rank_signature(&rho, 1e-10);
    if rank < 2 {
        return Err(Error::DegenerateRicci { rank });
    }
    if is_generic(c) {
        return Ok((*c, LinearMap::identity()));
    }

    let off_t = (seed % 16) as usize;
    let off_s = ((seed / 16) % 16) as usize;
    // eps = 0 for the first shear means "skip it"; useful when only the
    // second shear is needed.
    for a in 0..17 {
        let eps_t = if a == 0 {
            0.0
        } else {
            EPS_CANDIDATES[(a - 1 + off_t) % 16]
        };
        let sheared = pushforward(c, &LinearMap::shear_first(eps_t))?;
        if sheared.c221().abs() <= GENERICITY_FRACTION * sheared.max_abs() {
            continue;
        }
        for b in 0..16 {
            let eps_s = EPS_CANDIDATES[(b + off_s) % 16];
            let map = LinearMap::shear_second(eps_s).compose(&LinearMap::shear_first(eps_t));
            let moved = pushforward(c, &map)?;
            if is_generic(&moved) {
                return Ok((moved, map));
            }
        }
    }
    Err(Error::NumericFailure(
        "genericity normalization exhausted its shear candidates".into(),
    ))
}

fn is_generic(c: &ChristoffelSymbols) -> bool {
    c.min_abs() > GENERICITY_FRACTION * c.max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ricci::invariants_sigma_psi;
    use crate::symbols::CanonicalModel;

    #[test]
    fn identity_pushforward_is_identity() {
        let c = ChristoffelSymbols::new(0.3, -1.2, 0.5, 0.8, -0.6, 1.4).unwrap();
        assert_eq!(pushforward(&c, &LinearMap::identity()).unwrap(), c);
    }

    #[test]
    fn shear_first_transforms_c221_cubically() {
        let c = ChristoffelSymbols::new(0.7, -0.4, 1.1, 0.3, -0.9, 0.6).unwrap();
        let [c111, c112, c121, c122, c221, c222] = c.components();
        for eps in [-1.5, -0.3, 0.2, 2.0] {
            let moved = pushforward(&c, &LinearMap::shear_first(eps)).unwrap();
            let expected = c221
                + eps * (c222 - 2.0 * c121)
                + eps * eps * (c111 - 2.0 * c122)
                + eps * eps * eps * c112;
            assert!((moved.c221() - expected).abs() < 1e-12, "eps = {eps}");
        }
    }

    #[test]
    fn shear_second_fixes_c221_and_moves_c112_cubically() {
        let c = ChristoffelSymbols::new(0.7, -0.4, 1.1, 0.3, -0.9, 0.6).unwrap();
        let [c111, c112, c121, c122, c221, c222] = c.components();
        for eps in [-1.0, 0.5, 1.25] {
            let moved = pushforward(&c, &LinearMap::shear_second(eps)).unwrap();
            assert!((moved.c221() - c221).abs() < 1e-12);
            let expected = c112
                + eps * (c111 - 2.0 * c122)
                + eps * eps * (c222 - 2.0 * c121)
                + eps * eps * eps * c221;
            assert!((moved.c112() - expected).abs() < 1e-12, "eps = {eps}");
            // The remaining transformed coefficients, for good measure.
            assert!((moved.c222() - (c222 + eps * c221)).abs() < 1e-12);
            assert!((moved.c121() - (c121 - eps * c221)).abs() < 1e-12);
            assert!(
                (moved.c122() - (c122 + eps * (c121 - c222) - eps * eps * c221)).abs() < 1e-12
            );
            assert!(
                (moved.c111() - (c111 - 2.0 * eps * c121 + eps * eps * c221)).abs() < 1e-12
            );
        }
    }

    #[test]
    fn pushforward_rejects_singular_map() {
        let c = ChristoffelSymbols::zero();
        let singular = LinearMap::new(1.0, 1.0, 1.0, 1.0);
        assert!(pushforward(&c, &singular).is_err());
    }

    #[test]
    fn normalize_makes_all_symbols_nonzero_and_preserves_invariants() {
        let c = CanonicalModel::MMinus(1.0).christoffel().unwrap();
        let (sigma0, psi0) = invariants_sigma_psi(&c, 1e-10).unwrap();
        let (moved, map) = normalize_generic(&c, 1).unwrap();
        assert!(moved.min_abs() > GENERICITY_FRACTION * moved.max_abs());
        let reconstructed = pushforward(&c, &map).unwrap();
        assert_eq!(reconstructed, moved);
        let (sigma1, psi1) = invariants_sigma_psi(&moved, 1e-10).unwrap();
        assert!((sigma0 - sigma1).abs() < 1e-9);
        assert!((psi0 - psi1).abs() < 1e-9);
    }

    #[test]
    fn normalize_is_a_no_op_on_generic_tables() {
        let c = ChristoffelSymbols::new(0.7, -0.4, 1.1, 0.3, -0.9, 0.6).unwrap();
        let rho = ricci(&c);
        assert!(rho.det().abs() > 1e-6, "test table should have rank 2");
        let (moved, map) = normalize_generic(&c, 3).unwrap();
        assert_eq!(moved, c);
        assert_eq!(map, LinearMap::identity());
    }

    #[test]
    fn normalize_rejects_rank_deficient_tables() {
        let c = CanonicalModel::M2.christoffel().unwrap();
        assert!(matches!(
            normalize_generic(&c, 0),
            Err(Error::DegenerateRicci { rank: 1 })
        ));
    }
}
