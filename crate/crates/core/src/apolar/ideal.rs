//! Homogeneous ideals of the operator ring, stored degree by degree.

use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::linalg::{kernel_basis, rank, SparseVec, Subspace};
use crate::poly::apolarity::{catalecticant, homogeneous_form_degree};
use crate::poly::{GradedBasis, Monomial, Poly, RingSide};

/// For each variable, the position of `x_i * m` in degree `e + 1` for every
/// monomial `m` of degree `e`.
fn shift_table(lower: &GradedBasis, upper: &GradedBasis) -> Vec<Vec<usize>> {
    let n = lower.num_vars();
    (0..n)
        .map(|i| {
            let v = Monomial::var(n, i);
            lower
                .monomials()
                .iter()
                .map(|m| upper.index_of(&m.mul(&v)).expect("degree goes up by one"))
                .collect()
        })
        .collect()
}

fn shift(v: &SparseVec, table: &[usize]) -> SparseVec {
    SparseVec::from_pairs(v.iter().map(|(i, x)| (table[i], x.clone())))
}

/// A homogeneous ideal of `T = Q[d_0..d_{n-1}]` known in degrees `0..=max_degree`.
/// Each piece is a canonical subspace of the monomial coordinates, so equality of
/// pieces is equality of the ideals in that degree.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    num_vars: usize,
    bases: Vec<GradedBasis>,
    pieces: Vec<Subspace>,
}

impl PartialEq for GradedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.pieces == other.pieces
    }
}

impl GradedIdeal {
    pub fn zero(num_vars: usize, max_degree: u32) -> Self {
        let bases: Vec<GradedBasis> = (0..=max_degree)
            .map(|e| GradedBasis::new(num_vars, e))
            .collect();
        let pieces = bases.iter().map(|b| Subspace::new(b.len())).collect();
        GradedIdeal {
            num_vars,
            bases,
            pieces,
        }
    }

    /// Degreewise expansion of the ideal generated by homogeneous operators.
    pub fn generated_by(num_vars: usize, generators: &[Poly], max_degree: u32) -> Result<Self> {
        let mut ideal = GradedIdeal::zero(num_vars, max_degree);
        let mut by_degree: BTreeMap<u32, Vec<&Poly>> = BTreeMap::new();
        for g in generators {
            if g.side() != RingSide::Operator || g.num_vars() != num_vars {
                return input("generators must be operators in the ideal's variables");
            }
            if g.is_zero() {
                continue;
            }
            let Some(e) = g.homogeneous_degree() else {
                return input("generators must be homogeneous");
            };
            by_degree.entry(e).or_default().push(g);
        }
        for e in 0..=max_degree {
            let mut piece = if e == 0 {
                Subspace::new(1)
            } else {
                ideal.times_linear(e - 1)
            };
            for g in by_degree.get(&e).into_iter().flatten() {
                piece.insert(g.coords(&ideal.bases[e as usize])?);
            }
            ideal.pieces[e as usize] = piece;
        }
        Ok(ideal)
    }

    /// Builds an ideal from explicit pieces; piece `e` must live in `T_e`.
    pub fn from_pieces(num_vars: usize, pieces: Vec<Subspace>) -> Result<Self> {
        let bases: Vec<GradedBasis> = (0..pieces.len() as u32)
            .map(|e| GradedBasis::new(num_vars, e))
            .collect();
        for (b, p) in bases.iter().zip(&pieces) {
            if b.len() != p.ambient() {
                return input(format!(
                    "piece of degree {} has the wrong ambient dimension",
                    b.degree()
                ));
            }
        }
        let ideal = GradedIdeal {
            num_vars,
            bases,
            pieces,
        };
        for e in 1..ideal.pieces.len() as u32 {
            if !ideal.pieces[e as usize].contains_subspace(&ideal.times_linear(e - 1)) {
                return Err(Error::Input(format!(
                    "pieces are not closed under multiplication in degree {e}"
                )));
            }
        }
        Ok(ideal)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn basis_of_ring(&self, e: u32) -> &GradedBasis {
        &self.bases[e as usize]
    }

    pub fn piece(&self, e: u32) -> &Subspace {
        &self.pieces[e as usize]
    }

    pub fn dim(&self, e: u32) -> usize {
        self.pieces[e as usize].dim()
    }

    /// `dim (T/I)_e`.
    pub fn codim(&self, e: u32) -> usize {
        self.pieces[e as usize].codim()
    }

    /// Hilbert function of `T/I` in degrees `0..=max_degree`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(Subspace::codim).collect()
    }

    /// Echelon basis of `I_e` as operators.
    pub fn basis(&self, e: u32) -> Vec<Poly> {
        let b = &self.bases[e as usize];
        self.pieces[e as usize]
            .basis()
            .map(|v| Poly::from_coords(RingSide::Operator, b, v))
            .collect()
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let Some(e) = p.homogeneous_degree() else {
            return input("membership is tested for homogeneous operators");
        };
        if e > self.max_degree() {
            return input(format!("degree {e} is beyond the stored range"));
        }
        Ok(self.pieces[e as usize].contains(&p.coords(&self.bases[e as usize])?))
    }

    /// `T_1 * I_e` as a subspace of `T_{e+1}`.
    pub fn times_linear(&self, e: u32) -> Subspace {
        let lower = &self.bases[e as usize];
        let upper = &self.bases[e as usize + 1];
        let tables = shift_table(lower, upper);
        let mut out = Subspace::new(upper.len());
        for v in self.pieces[e as usize].basis() {
            for t in &tables {
                out.insert(shift(v, t));
            }
        }
        out
    }

    /// A minimal generating set: in each degree, echelon vectors of `I_e`
    /// completing `T_1 * I_{e-1}` to all of `I_e`.
    pub fn minimal_generators(&self) -> BTreeMap<u32, Vec<Poly>> {
        let mut out = BTreeMap::new();
        for e in 0..=self.max_degree() {
            let mut span = if e == 0 {
                Subspace::new(1)
            } else {
                self.times_linear(e - 1)
            };
            let b = &self.bases[e as usize];
            let mut gens = Vec::new();
            for v in self.pieces[e as usize].basis() {
                if span.insert(v.clone()) {
                    gens.push(Poly::from_coords(RingSide::Operator, b, v));
                }
            }
            if !gens.is_empty() {
                out.insert(e, gens);
            }
        }
        out
    }

    /// `I_e ⊆ J_e` for every degree stored in both.
    pub fn is_subset_of(&self, other: &GradedIdeal) -> bool {
        self.num_vars == other.num_vars
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .all(|(a, b)| b.contains_subspace(a))
    }

    /// The same ideal with a full piece appended in the next degree.
    fn with_full_top(mut self) -> Self {
        let next = GradedBasis::new(self.num_vars, self.pieces.len() as u32);
        self.pieces.push(Subspace::full(next.len()));
        self.bases.push(next);
        self
    }
}

/// The apolar ideal `F^⊥` of a form of degree `d`, stored in degrees `0..=d+1`.
/// Everything from degree `d + 1` on lies in the ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct ApolarIdeal {
    socle_degree: u32,
    ideal: GradedIdeal,
}

impl ApolarIdeal {
    /// Wraps pieces in degrees `0..=d` and marks degree `d + 1` as full.
    pub fn from_pieces(num_vars: usize, socle_degree: u32, pieces: Vec<Subspace>) -> Result<Self> {
        if pieces.len() != socle_degree as usize + 1 {
            return input("expected one piece per degree up to the socle degree");
        }
        let ideal = GradedIdeal::from_pieces(num_vars, pieces)?.with_full_top();
        Ok(ApolarIdeal {
            socle_degree,
            ideal,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.ideal.num_vars()
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    /// Basis of `(F^⊥)_e`; for `e > d` this is all of `T_e`.
    pub fn basis(&self, e: u32) -> Vec<Poly> {
        if e <= self.socle_degree + 1 {
            self.ideal.basis(e)
        } else {
            GradedBasis::new(self.num_vars(), e)
                .monomials()
                .iter()
                .map(|m| Poly::term(RingSide::Operator, num_traits::One::one(), m.clone()))
                .collect()
        }
    }

    pub fn dim(&self, e: u32) -> usize {
        if e <= self.socle_degree + 1 {
            self.ideal.dim(e)
        } else {
            GradedBasis::new(self.num_vars(), e).len()
        }
    }

    /// Hilbert function of `T/F^⊥` in degrees `0..=d`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut hf = self.ideal.hilbert_function();
        hf.pop();
        hf
    }

    pub fn minimal_generators(&self) -> BTreeMap<u32, Vec<Poly>> {
        self.ideal.minimal_generators()
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        match p.homogeneous_degree() {
            Some(e) if e > self.socle_degree + 1 => Ok(true),
            _ => self.ideal.contains(p),
        }
    }
}

/// `F^⊥` computed degreewise as kernels of the catalecticant maps.
pub fn perp(f: &Poly) -> Result<ApolarIdeal> {
    let d = homogeneous_form_degree(f)?;
    if d == 0 {
        return input("the form must have degree at least 1");
    }
    let n = f.num_vars();
    let mut pieces = vec![Subspace::new(1)];
    for e in 1..=d {
        let cat = catalecticant(f, e)?;
        let kernel = kernel_basis(&cat);
        pieces.push(Subspace::spanned_by(
            cat.cols(),
            kernel.iter().map(|v| SparseVec::from_dense(v)),
        ));
    }
    let ideal = GradedIdeal {
        num_vars: n,
        bases: (0..=d).map(|e| GradedBasis::new(n, e)).collect(),
        pieces,
    }
    .with_full_top();
    Ok(ApolarIdeal {
        socle_degree: d,
        ideal,
    })
}

/// Hilbert function of `A^F` from catalecticant ranks.
pub fn hilbert_function(f: &Poly) -> Result<Vec<usize>> {
    let d = homogeneous_form_degree(f)?;
    (0..=d).map(|e| Ok(rank(&catalecticant(f, e)?))).collect()
}

/// The ideal `(d_i d_j, d_i^d - d_j^d : i < j)` in `r` variables, with everything
/// in degree `d + 1` and beyond.
pub fn fermat_perp(r: usize, d: u32) -> Result<ApolarIdeal> {
    if r == 0 || d < 2 {
        return input("fermat_perp needs r >= 1 and d >= 2");
    }
    let mut gens = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let ij = Monomial::var(r, i).mul(&Monomial::var(r, j));
            gens.push(Poly::term(RingSide::Operator, num_traits::One::one(), ij));
            let pi = Poly::var(RingSide::Operator, r, i).pow(d);
            let pj = Poly::var(RingSide::Operator, r, j).pow(d);
            gens.push(&pi - &pj);
        }
    }
    let ideal = GradedIdeal::generated_by(r, &gens, d)?.with_full_top();
    Ok(ApolarIdeal {
        socle_degree: d,
        ideal,
    })
}

/// Lower bound for the Waring rank: the largest catalecticant rank.
pub fn waring_rank_lower_bound(f: &Poly) -> Result<usize> {
    Ok(hilbert_function(f)?.into_iter().max().unwrap_or(0))
}
