//! Finite point sets in the dual projective space: their ideals, apolarity to a
//! form, and the Waring decompositions they support.

use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{input, Result};
use crate::linalg::{kernel_basis, solve, Matrix, Rational};
use crate::poly::apolarity::homogeneous_form_degree;
use crate::poly::{
    apolar_apply, power_of_linear_form, GradedBasis, LinearFormPoint, Poly, RingSide,
};

fn check_points(points: &[LinearFormPoint]) -> Result<usize> {
    let Some(first) = points.first() else {
        return input("the point set is empty");
    };
    let n = first.num_vars();
    if points.iter().any(|p| p.num_vars() != n) {
        return input("points have different numbers of coordinates");
    }
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p) {
            return input("duplicate point");
        }
    }
    Ok(n)
}

/// Matrix of `D -> (D(L_i))_i` on the monomial basis of `T_e`.
pub fn evaluation_matrix(points: &[LinearFormPoint], basis: &GradedBasis) -> Matrix {
    let mut m = Matrix::zeros(points.len(), basis.len());
    for (i, p) in points.iter().enumerate() {
        for (j, mono) in basis.monomials().iter().enumerate() {
            let mut v = Rational::from_integer(1.into());
            for (c, &k) in p.coords().iter().zip(mono.exponents()) {
                if k > 0 {
                    v *= num_traits::pow(c.clone(), k as usize);
                }
            }
            m.set(i, j, v);
        }
    }
    m
}

/// Basis of `I(Γ)_e`, the degree-`e` operators vanishing at every point.
pub fn ideal_of_points(points: &[LinearFormPoint], e: u32) -> Result<Vec<Poly>> {
    let n = check_points(points)?;
    let basis = GradedBasis::new(n, e);
    let ev = evaluation_matrix(points, &basis);
    Ok(kernel_basis(&ev)
        .iter()
        .map(|v| Poly::from_dense(RingSide::Operator, &basis, v))
        .collect())
}

/// Outcome of the apolarity test: whether `I(Γ) ⊆ F^⊥`, and the first degree
/// where containment fails otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApolarityCertificate {
    pub apolar: bool,
    pub first_failure: Option<u32>,
}

/// Checks `I(Γ)_e · f = 0` for `1 <= e <= deg f`; higher degrees annihilate `f` trivially.
pub fn is_apolar_scheme(points: &[LinearFormPoint], f: &Poly) -> Result<ApolarityCertificate> {
    let n = check_points(points)?;
    let d = homogeneous_form_degree(f)?;
    if f.num_vars() != n {
        return input("points and form have different numbers of variables");
    }
    for e in 1..=d {
        for g in ideal_of_points(points, e)? {
            if !apolar_apply(&g, f)?.is_zero() {
                return Ok(ApolarityCertificate {
                    apolar: false,
                    first_failure: Some(e),
                });
            }
        }
    }
    Ok(ApolarityCertificate {
        apolar: true,
        first_failure: None,
    })
}

/// Coefficients `λ` with `f = Σ λ_i ℓ_i^d`, or `None` when no such combination exists.
pub fn waring_from_points(points: &[LinearFormPoint], f: &Poly) -> Result<Option<Vec<Rational>>> {
    let n = check_points(points)?;
    let d = homogeneous_form_degree(f)?;
    if f.num_vars() != n {
        return input("points and form have different numbers of variables");
    }
    let basis = GradedBasis::new(n, d);
    let columns = points
        .iter()
        .map(|p| {
            Ok(power_of_linear_form(p, d)?
                .coords(&basis)?
                .to_dense(basis.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(&columns, basis.len())?;
    solve(&m, &f.coords(&basis)?.to_dense(basis.len()))
}

/// `Σ λ_i ℓ_i^d` expanded.
pub fn expand_decomposition(
    points: &[LinearFormPoint],
    lambdas: &[Rational],
    d: u32,
) -> Result<Poly> {
    let Some(first) = points.first() else {
        return input("empty decomposition");
    };
    let mut out = Poly::zero(RingSide::Point, first.num_vars());
    for (p, l) in points.iter().zip(lambdas) {
        if !l.is_zero() {
            out = &out + &power_of_linear_form(p, d)?.scale(l);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn pts(coords: &[&[i64]]) -> Vec<LinearFormPoint> {
        coords
            .iter()
            .map(|c| LinearFormPoint::from_i64(c).unwrap())
            .collect()
    }

    fn op(s: &str, n: usize) -> Poly {
        Poly::parse_as(s, RingSide::Operator, n).unwrap()
    }

    #[test]
    fn ideals_of_small_sets() {
        assert_eq!(
            ideal_of_points(&pts(&[&[1, 0], &[0, 1]]), 2).unwrap(),
            vec![op("d0*d1", 2)]
        );
        let three = ideal_of_points(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 2).unwrap();
        assert_eq!(three.len(), 3);
        for g in &three {
            assert_eq!(
                g.len(),
                1,
                "coordinate points cut out by square-free quadrics"
            );
        }
        let one = ideal_of_points(&pts(&[&[1, 1]]), 1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].proportionality(&op("d0 - d1", 2)).is_some());
        assert!(ideal_of_points(&pts(&[&[1, 1], &[2, 2]]), 1).is_err());
        assert!(ideal_of_points(&[], 1).is_err());
    }

    #[test]
    fn apolarity_examples() {
        let f = Poly::parse("x0^4 + x1^4").unwrap();
        assert!(
            is_apolar_scheme(&pts(&[&[1, 0], &[0, 1]]), &f)
                .unwrap()
                .apolar
        );
        let c = is_apolar_scheme(&pts(&[&[1, 1]]), &Poly::parse("x0*x1").unwrap()).unwrap();
        assert_eq!(
            c,
            ApolarityCertificate {
                apolar: false,
                first_failure: Some(1)
            }
        );
        let g = &Poly::parse("x0^3 + x1^3").unwrap()
            + &LinearFormPoint::from_i64(&[1, 1])
                .unwrap()
                .linear_form()
                .pow(3);
        assert!(
            is_apolar_scheme(&pts(&[&[1, 0], &[0, 1], &[1, 1]]), &g)
                .unwrap()
                .apolar
        );
    }

    #[test]
    fn waring_examples() {
        let f = Poly::parse("x0^4 + x1^4").unwrap();
        assert_eq!(
            waring_from_points(&pts(&[&[1, 0], &[0, 1]]), &f).unwrap(),
            Some(vec![rat(1), rat(1)])
        );
        let sq = Poly::parse("x0^2 + 2*x0*x1 + x1^2").unwrap();
        assert_eq!(
            waring_from_points(&pts(&[&[1, 1]]), &sq).unwrap(),
            Some(vec![rat(1)])
        );
        let bad = Poly::parse("x0^3*x1").unwrap();
        assert_eq!(
            waring_from_points(&pts(&[&[1, 0], &[0, 1]]), &bad).unwrap(),
            None
        );
        let p = pts(&[&[1, 2], &[3, -1]]);
        let l = vec![rat(5), rat(-2)];
        let g = expand_decomposition(&p, &l, 3).unwrap();
        assert_eq!(waring_from_points(&p, &g).unwrap(), Some(l));
    }
}
