//! Cutting by two hyperplanes `η1 = η2 = 0` and the Artinian algebra that results.
//!
//! Everything is computed in Cox coordinates: the degree-`j` part of the
//! homogeneous coordinate ring of `X ⊂ P^N` is the image of `Sym^j` in
//! `H^0(jH) / g H^0(jH - C)`, and the quotient by `η` is taken there.
//! Coordinates `w_1..w_(N-1)` on `V(η1, η2)` are ambient coordinates completing
//! `η1, η2` to a basis; the cut algebra is a quotient of the operator ring in them.

use num_traits::Zero;
use rand::Rng;

use crate::apolar::{dual_socle_generator, ArtinianGorenstein, GradedIdeal};
use crate::error::{input, Error, Result};
use crate::linalg::{kernel_basis, Matrix, Rational, SparseVec, Subspace};
use crate::poly::cox::modulus_rows;
use crate::poly::{GradedBasis, LinearFormPoint, Monomial, Poly};
use crate::surfaces::SurfaceEmbedding;

use super::curve::EmbeddedCurve;

/// Two linear forms on `P^N`, as coefficient vectors on the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaPair {
    pub eta1: Vec<Rational>,
    pub eta2: Vec<Rational>,
}

impl EtaPair {
    pub fn new(eta1: Vec<Rational>, eta2: Vec<Rational>) -> Result<Self> {
        if eta1.len() != eta2.len() {
            return input("the two linear forms have different lengths");
        }
        Ok(EtaPair { eta1, eta2 })
    }

    /// Integer coefficients drawn uniformly from `[-9, 9]`.
    pub fn random(rng: &mut impl Rng, num_coords: usize) -> Self {
        let mut draw = || {
            (0..num_coords)
                .map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into()))
                .collect()
        };
        EtaPair {
            eta1: draw(),
            eta2: draw(),
        }
    }

    pub fn num_coords(&self) -> usize {
        self.eta1.len()
    }

    fn vectors(&self) -> [&[Rational]; 2] {
        [&self.eta1, &self.eta2]
    }
}

/// The ambient coordinates kept as coordinates on `V(η1, η2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCoordinates {
    kept: Vec<usize>,
}

impl SectionCoordinates {
    /// Greedily completes `η1, η2` by coordinate forms `z_0, z_1, ...`.
    pub fn choose(eta: &EtaPair) -> Result<Self> {
        let n = eta.num_coords();
        let mut span = Subspace::new(n);
        for v in eta.vectors() {
            span.insert(SparseVec::from_dense(v));
        }
        if span.dim() < 2 {
            return input("η1 and η2 are linearly dependent");
        }
        let kept = (0..n)
            .filter(|&i| span.insert(SparseVec::unit(i)))
            .collect();
        Ok(SectionCoordinates { kept })
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    /// A point of `V(η1, η2)`, given by its ambient coordinates, in section coordinates.
    pub fn restrict_point(&self, ambient: &[Rational]) -> Result<LinearFormPoint> {
        LinearFormPoint::new(self.kept.iter().map(|&i| ambient[i].clone()).collect())
    }
}

/// Degreewise ideal of `(I(S) + (g) + (η1, η2)) / (η1, η2)` in the operator ring on
/// the section coordinates, for degrees `0..=top`. Without `g` this is the cut
/// of the surface itself.
pub fn cut_ideal(
    surface: &SurfaceEmbedding,
    eta: &EtaPair,
    coords: &SectionCoordinates,
    modulus: Option<&Poly>,
    top: u32,
) -> Result<GradedIdeal> {
    if eta.num_coords() != surface.coordinates().len() {
        return input(format!(
            "η has {} coefficients for {} coordinates",
            eta.num_coords(),
            surface.coordinates().len()
        ));
    }
    let ring = surface.ring();
    let z = surface.coordinates().monomials();
    let n = coords.len();
    let mut pieces = Vec::with_capacity(top as usize + 1);
    for j in 0..=top {
        let target = ring.basis(j as i64 * surface.hyperplane_class());
        // Rows spanning the relations U_j in H^0(jH); the ideal piece is the set of
        // forms in the section coordinates killed by every functional vanishing on U_j.
        let mut relations: Vec<Vec<Rational>> = Vec::new();
        if let Some(g) = modulus {
            relations.extend(
                modulus_rows(ring, g, &target)?
                    .iter()
                    .map(|v| v.to_dense(target.len())),
            );
        }
        if j > 0 {
            for m in surface.image_monomials(j - 1) {
                for v in eta.vectors() {
                    let mut row = vec![Rational::zero(); target.len()];
                    for (i, c) in v.iter().enumerate() {
                        row[target.index_of(&m.mul(&z[i])).expect("class jH")] = c.clone();
                    }
                    relations.push(row);
                }
            }
        }
        let annihilator = kernel_basis(&Matrix::from_rows(relations, target.len())?);
        let basis = GradedBasis::new(n, j);
        let columns: Vec<usize> = basis
            .monomials()
            .iter()
            .map(|a| {
                let mut ambient = vec![0u32; surface.coordinates().len()];
                for (k, &e) in a.exponents().iter().enumerate() {
                    ambient[coords.kept[k]] = e;
                }
                target
                    .index_of(&surface.coordinate_product(&Monomial::new(ambient)))
                    .expect("class jH")
            })
            .collect();
        let pairing = Matrix::from_rows(
            annihilator
                .iter()
                .map(|phi| columns.iter().map(|&i| phi[i].clone()).collect())
                .collect(),
            basis.len(),
        )?;
        let kernel = kernel_basis(&pairing);
        pieces.push(Subspace::spanned_by(
            basis.len(),
            kernel.iter().map(|v| SparseVec::from_dense(v)),
        ));
    }
    GradedIdeal::from_pieces(n, pieces)
}

/// `A = S_X / (η1, η2)` with its Gorenstein structure.
#[derive(Clone, Debug)]
pub struct ArtinianReduction {
    eta: EtaPair,
    coords: SectionCoordinates,
    hilbert_function: Vec<usize>,
    algebra: ArtinianGorenstein,
}

impl ArtinianReduction {
    pub fn eta(&self) -> &EtaPair {
        &self.eta
    }

    pub fn coordinates(&self) -> &SectionCoordinates {
        &self.coords
    }

    /// `dim A_j` for `j = 0..=s+2`.
    pub fn hilbert_function(&self) -> &[usize] {
        &self.hilbert_function
    }

    pub fn algebra(&self) -> &ArtinianGorenstein {
        &self.algebra
    }

    /// The form `F` with `F^⊥` equal to the defining ideal of `A`.
    pub fn dual_form(&self) -> Result<Poly> {
        dual_socle_generator(&self.algebra)
    }
}

/// Expected `dim A` for `s = 2`: `(1, N-1, g-2N-1, N-1, 1)`.
pub fn expected_quartic_hf(n: usize, genus: i64) -> Vec<i64> {
    let n = n as i64;
    vec![1, n - 1, genus - 2 * n - 1, n - 1, 1]
}

/// Builds the Artinian reduction of a projectively normal curve.
pub fn artinian_reduction(x: &EmbeddedCurve, eta: &EtaPair) -> Result<ArtinianReduction> {
    let s = x.s();
    let normality = x.normality()?;
    if let Some(j) = normality[..=(s + 1) as usize].iter().position(|ok| !ok) {
        return Err(Error::Structural(format!(
            "the curve is not {}-normal",
            j + 1
        )));
    }
    let coords = SectionCoordinates::choose(eta)?;
    let ideal = cut_ideal(x.surface(), eta, &coords, Some(x.equation()), s + 3)?;
    let hf_all = ideal.hilbert_function();
    let d = (s + 2) as usize;
    if hf_all[d + 1] != 0 || hf_all[d] != 1 || hf_all[0] != 1 {
        return Err(Error::Structural(format!(
            "cut is not Artinian with socle in degree {d}: {hf_all:?}"
        )));
    }
    let hilbert_function = hf_all[..=d].to_vec();
    if hilbert_function.iter().ne(hilbert_function.iter().rev()) {
        return Err(Error::Structural(format!(
            "non-symmetric Hilbert function {hilbert_function:?}"
        )));
    }
    if s == 2 {
        let expected = expected_quartic_hf(x.ambient_dim(), x.genus());
        if hilbert_function
            .iter()
            .map(|&h| h as i64)
            .ne(expected.iter().copied())
        {
            return Err(Error::Structural(format!(
                "Hilbert function {hilbert_function:?}, expected {expected:?}"
            )));
        }
    }
    let algebra = ArtinianGorenstein::from_ideal(ideal)?;
    Ok(ArtinianReduction {
        eta: eta.clone(),
        coords,
        hilbert_function,
        algebra,
    })
}

/// The dual form `F_{η1, η2}` of degree `s + 2` in `N - 1` variables.
pub fn alpha_map(x: &EmbeddedCurve, eta: &EtaPair) -> Result<Poly> {
    artinian_reduction(x, eta)?.dual_form()
}
