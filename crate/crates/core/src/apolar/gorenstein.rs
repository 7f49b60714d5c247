//! Graded Artinian quotients `T/I` with one-dimensional socle, and the form
//! they are the apolar algebra of.

use num_traits::Zero;

use super::ideal::{perp, ApolarIdeal, GradedIdeal};
use crate::error::{input, Error, Result};
use crate::linalg::{rank, Matrix, Rational, SparseVec};
use crate::poly::{Monomial, Poly, RingSide};

#[derive(Clone, Debug)]
pub struct ArtinianGorenstein {
    ideal: GradedIdeal,
    socle_degree: u32,
    hilbert_function: Vec<usize>,
    socle_functional: Vec<Rational>,
}

impl ArtinianGorenstein {
    /// Checks that `T/I` is Artinian with a one-dimensional socle. The ideal
    /// must be full in its top stored degree.
    pub fn from_ideal(ideal: GradedIdeal) -> Result<Self> {
        let top = ideal.max_degree();
        if !ideal.piece(top).is_full() {
            return input("the ideal must contain every operator of its top stored degree");
        }
        let hf_all = ideal.hilbert_function();
        let Some(d) = (0..=top).rev().find(|&e| hf_all[e as usize] > 0) else {
            return Err(Error::Structural("the quotient is zero".into()));
        };
        let ideal = if d + 1 < top {
            truncate(&ideal, d + 1)?
        } else {
            ideal
        };
        let hilbert_function = hf_all[..=d as usize].to_vec();
        let socle = socle_dimensions(&ideal, d);
        let total: usize = socle.iter().sum();
        if total != 1 {
            return Err(Error::Structural(format!(
                "socle has dimension {total} (by degree: {socle:?}), expected 1"
            )));
        }
        if hilbert_function.iter().ne(hilbert_function.iter().rev()) {
            return Err(Error::Internal(format!(
                "Gorenstein Hilbert function {hilbert_function:?} is not symmetric"
            )));
        }
        let top_piece = ideal.piece(d);
        let c = top_piece.free_columns()[0];
        let socle_functional = (0..top_piece.ambient())
            .map(|j| top_piece.reduce(&SparseVec::unit(j)).get(c))
            .collect();
        Ok(ArtinianGorenstein {
            ideal,
            socle_degree: d,
            hilbert_function,
            socle_functional,
        })
    }

    pub fn from_apolar(a: &ApolarIdeal) -> Result<Self> {
        ArtinianGorenstein::from_ideal(a.ideal().clone())
    }

    pub fn num_vars(&self) -> usize {
        self.ideal.num_vars()
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn hilbert_function(&self) -> &[usize] {
        &self.hilbert_function
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    /// Values of the socle functional on the monomial basis of `T_d`.
    pub fn socle_functional(&self) -> &[Rational] {
        &self.socle_functional
    }

    /// Monomials whose classes form a basis of `A_e`.
    pub fn complement_basis(&self, e: u32) -> Vec<Monomial> {
        if e > self.socle_degree {
            return Vec::new();
        }
        let b = self.ideal.basis_of_ring(e);
        self.ideal
            .piece(e)
            .free_columns()
            .into_iter()
            .map(|c| b.get(c).clone())
            .collect()
    }
}

fn truncate(ideal: &GradedIdeal, top: u32) -> Result<GradedIdeal> {
    let pieces = (0..=top).map(|e| ideal.piece(e).clone()).collect();
    GradedIdeal::from_pieces(ideal.num_vars(), pieces)
}

/// Socle dimension of `T/I` in each degree `0..=d`.
fn socle_dimensions(ideal: &GradedIdeal, d: u32) -> Vec<usize> {
    let n = ideal.num_vars();
    let mut out = Vec::with_capacity(d as usize + 1);
    for e in 0..d {
        let lower = ideal.piece(e);
        let upper = ideal.piece(e + 1);
        let free = lower.free_columns();
        let upper_index = upper.free_index();
        let lb = ideal.basis_of_ring(e);
        let ub = ideal.basis_of_ring(e + 1);
        let mut columns = Vec::with_capacity(free.len());
        for &c in &free {
            let mut col = Vec::with_capacity(n * upper.codim());
            for i in 0..n {
                let m = lb.get(c).mul(&Monomial::var(n, i));
                let v = SparseVec::unit(ub.index_of(&m).expect("degree e + 1"));
                col.extend(
                    upper
                        .quotient_coords(&v, &upper_index)
                        .to_dense(upper.codim()),
                );
            }
            columns.push(col);
        }
        let m = Matrix::from_columns(&columns, n * upper.codim()).expect("uniform column length");
        out.push(free.len() - rank(&m));
    }
    out.push(ideal.codim(d));
    out
}

/// The form `F = sum phi(d^m)/m! x^m` whose apolar ideal is the defining ideal,
/// scaled so its leading coefficient is 1.
pub fn dual_socle_generator(a: &ArtinianGorenstein) -> Result<Poly> {
    let d = a.socle_degree();
    let basis = a.ideal().basis_of_ring(d);
    let f = Poly::from_terms(
        RingSide::Point,
        a.num_vars(),
        basis
            .monomials()
            .iter()
            .zip(a.socle_functional())
            .filter(|(_, phi)| !phi.is_zero())
            .map(|(m, phi)| (m.clone(), phi / Rational::from_integer(m.factorial()))),
    )
    .normalized();
    let check = perp(&f)?;
    for e in 0..=d {
        if check.ideal().piece(e) != a.ideal().piece(e) {
            return Err(Error::Structural(format!(
                "the dual generator's apolar ideal differs from the input in degree {e}"
            )));
        }
    }
    Ok(f)
}
