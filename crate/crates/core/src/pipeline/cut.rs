//! The zero-dimensional scheme `Γ = S ∩ V(η1, η2)` cut on the surface.

use num_traits::Zero;
use rand::Rng;

use crate::apolar::{ideal_of_points, GradedIdeal};
use crate::error::{input, Error, Result};
use crate::linalg::{kernel_basis, Matrix, Rational};
use crate::poly::{LinearFormPoint, Poly, SurfaceKind};
use crate::surfaces::SurfaceEmbedding;

use super::reduction::{cut_ideal, EtaPair, SectionCoordinates};

/// Attempts at drawing rational points before giving up.
pub const CUT_RETRY_BUDGET: usize = 8;

#[derive(Clone, Debug)]
pub struct GammaCut {
    pub coordinates: SectionCoordinates,
    /// `I(Γ)` in the operator ring on the section coordinates.
    pub ideal: GradedIdeal,
    pub hilbert_function: Vec<usize>,
    pub length: usize,
    /// The points, in section coordinates, when the cut was built through them.
    pub points: Option<Vec<LinearFormPoint>>,
}

/// Computes the Hilbert function of the cut up to degree `top` and checks that it
/// has stabilised at the degree of the surface.
pub fn gamma_cut(surface: &SurfaceEmbedding, eta: &EtaPair, top: u32) -> Result<GammaCut> {
    if top < 2 {
        return input("the cut needs degrees up to at least 2");
    }
    let coordinates = SectionCoordinates::choose(eta)?;
    let ideal = cut_ideal(surface, eta, &coordinates, None, top)?;
    let hilbert_function = ideal.hilbert_function();
    let expected = surface.degree() as usize;
    let last = hilbert_function[top as usize];
    if last != expected || hilbert_function[top as usize - 1] != expected {
        return Err(Error::Structural(format!(
            "cut Hilbert function {hilbert_function:?} does not settle at the surface degree {expected}"
        )));
    }
    Ok(GammaCut {
        coordinates,
        ideal,
        hilbert_function,
        length: last,
        points: None,
    })
}

/// A cut through explicit rational points of the surface.
#[derive(Clone, Debug)]
pub struct RationalCut {
    pub eta: EtaPair,
    /// Cox coordinates of the sampled points.
    pub cox_points: Vec<Vec<Rational>>,
    /// Their images in `P^N`.
    pub ambient_points: Vec<Vec<Rational>>,
    pub gamma: GammaCut,
}

fn sample_cox_point(surface: &SurfaceEmbedding, rng: &mut impl Rng) -> Vec<Rational> {
    let mut draw = |k: usize| -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..k).map(|_| rng.gen_range(-9..=9)).collect();
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    };
    let ints = match surface.ring().kind() {
        SurfaceKind::Hirzebruch { .. } => {
            let mut t = draw(2);
            t.extend(draw(2));
            t
        }
        SurfaceKind::ProjectivePlane => draw(3),
    };
    ints.into_iter()
        .map(|c| Rational::from_integer(c.into()))
        .collect()
}

fn evaluate_monomial(m: &crate::poly::Monomial, p: &[Rational]) -> Rational {
    m.exponents()
        .iter()
        .zip(p)
        .fold(Rational::from_integer(1.into()), |acc, (&k, x)| {
            acc * num_traits::pow(x.clone(), k as usize)
        })
}

fn same_scheme(ideal: &GradedIdeal, points: &[LinearFormPoint], top: u32) -> Result<bool> {
    for e in 1..=top {
        let b = ideal.basis_of_ring(e);
        let from_points = ideal_of_points(points, e)?;
        if from_points.len() != ideal.dim(e) {
            return Ok(false);
        }
        for q in from_points {
            if !ideal.piece(e).contains(&q.coords(b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Samples `deg S = N - 1` rational points on a surface of minimal degree and
/// returns the pencil of hyperplane pairs through them. Points where `avoid`
/// vanishes are rejected.
pub fn rational_cut(
    surface: &SurfaceEmbedding,
    avoid: Option<&Poly>,
    top: u32,
    rng: &mut impl Rng,
) -> Result<RationalCut> {
    let n = surface.ambient_dim();
    let len = surface.degree() as usize;
    if len + 1 != n {
        return input(format!(
            "rational cuts need a surface of minimal degree, got degree {len} in P^{n}"
        ));
    }
    for attempt in 0..CUT_RETRY_BUDGET {
        let cox_points: Vec<Vec<Rational>> =
            (0..len).map(|_| sample_cox_point(surface, rng)).collect();
        if let Some(g) = avoid {
            if cox_points.iter().any(|p| g.evaluate(p).is_zero()) {
                log::debug!("attempt {attempt}: a sampled point lies on the curve");
                continue;
            }
        }
        let ambient_points: Vec<Vec<Rational>> = cox_points
            .iter()
            .map(|p| {
                surface
                    .coordinates()
                    .monomials()
                    .iter()
                    .map(|z| evaluate_monomial(z, p))
                    .collect()
            })
            .collect();
        if ambient_points.iter().any(|v| v.iter().all(Zero::is_zero)) {
            continue;
        }
        let ev = Matrix::from_rows(ambient_points.clone(), n + 1)?;
        let kernel = kernel_basis(&ev);
        if kernel.len() != 2 {
            log::debug!("attempt {attempt}: sampled points span too little");
            continue;
        }
        let mut it = kernel.into_iter();
        let eta = EtaPair::new(it.next().unwrap(), it.next().unwrap())?;
        let mut gamma = match gamma_cut(surface, &eta, top) {
            Ok(g) => g,
            Err(Error::Structural(msg)) => {
                log::debug!("attempt {attempt}: {msg}");
                continue;
            }
            Err(e) => return Err(e),
        };
        let points = ambient_points
            .iter()
            .map(|v| gamma.coordinates.restrict_point(v))
            .collect::<Result<Vec<_>>>()?;
        if points
            .iter()
            .enumerate()
            .any(|(i, p)| points[..i].contains(p))
        {
            continue;
        }
        // The explicit points must cut out the same scheme.
        if !same_scheme(&gamma.ideal, &points, top)? {
            log::debug!("attempt {attempt}: the points do not cut out Γ");
            continue;
        }
        gamma.points = Some(points);
        return Ok(RationalCut {
            eta,
            cox_points,
            ambient_points,
            gamma,
        });
    }
    Err(Error::Undetermined(format!(
        "no clean rational cut in {CUT_RETRY_BUDGET} attempts"
    )))
}
