//! Divisor calculus on Hirzebruch surfaces and the embeddings of scrolls and
//! Veronese surfaces through their Cox rings.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::linalg::{kernel_basis, Matrix, SparseVec, Subspace};
use crate::poly::cox::modulus_span;
use crate::poly::{
    binomial, CoxBasis, CoxClass, CoxRing, GradedBasis, Monomial, Poly, RingSide, SurfaceKind,
};

/// The class `a C0 + b f` on `F_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub e: u32,
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub fn new(e: u32, a: i64, b: i64) -> Self {
        DivisorClass { e, a, b }
    }

    pub fn c0(e: u32) -> Self {
        DivisorClass::new(e, 1, 0)
    }

    pub fn fibre(e: u32) -> Self {
        DivisorClass::new(e, 0, 1)
    }

    pub fn scaled(self, k: i64) -> Self {
        DivisorClass::new(self.e, k * self.a, k * self.b)
    }

    pub fn plus(self, other: DivisorClass) -> Result<Self> {
        same_surface(self, other)?;
        Ok(DivisorClass::new(
            self.e,
            self.a + other.a,
            self.b + other.b,
        ))
    }

    pub fn minus(self, other: DivisorClass) -> Result<Self> {
        self.plus(other.scaled(-1))
    }

    pub fn cox_class(self) -> CoxClass {
        CoxClass::new(self.a, self.b)
    }

    /// Very ample on `F_e` exactly when `a > 0` and `b > a e`.
    pub fn is_very_ample(self) -> bool {
        self.a > 0 && self.b > self.a * self.e as i64
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}C0{:+}f", self.a, self.b)
    }
}

fn same_surface(d1: DivisorClass, d2: DivisorClass) -> Result<()> {
    if d1.e != d2.e {
        return input(format!("classes live on F_{} and F_{}", d1.e, d2.e));
    }
    Ok(())
}

/// Intersection form with `C0^2 = -e`, `C0 f = 1`, `f^2 = 0`.
pub fn intersect(d1: DivisorClass, d2: DivisorClass) -> Result<i64> {
    same_surface(d1, d2)?;
    Ok(d1.a * d2.b + d2.a * d1.b - d1.e as i64 * d1.a * d2.a)
}

pub fn canonical_class(e: u32) -> DivisorClass {
    DivisorClass::new(e, -2, -2 - e as i64)
}

/// Arithmetic genus `1 + D(D + K)/2`.
pub fn adjunction_genus(d: DivisorClass) -> i64 {
    let k = canonical_class(d.e);
    let dk = d.plus(k).expect("same surface");
    1 + intersect(d, dk).expect("same surface") / 2
}

fn check_scroll_params(a1: u32, a2: u32) -> Result<()> {
    if a1 < a2 {
        return input("requires a1 >= a2");
    }
    Ok(())
}

/// `(s+2) C0 + ((s+1) a1 - a2 + 2) f` on `F_(a1-a2)`.
pub fn subcanonical_class(s: u32, a1: u32, a2: u32) -> Result<DivisorClass> {
    if s < 2 {
        return input("requires s >= 2");
    }
    check_scroll_params(a1, a2)?;
    let (s, a1i, a2i) = (s as i64, a1 as i64, a2 as i64);
    Ok(DivisorClass::new(a1 - a2, s + 2, (s + 1) * a1i - a2i + 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub class: DivisorClass,
    pub genus: i64,
    pub degree: i64,
    pub ambient_dim: u32,
    pub smooth_ok: bool,
    pub very_ample_ok: bool,
    pub gonality_pencil_degree: i64,
}

/// Genus, degree and the numerical conditions for the curve in the class
/// [`subcanonical_class`] on the scroll `S(a1, a2)`.
pub fn curve_invariants(s: u32, a1: u32, a2: u32) -> Result<CurveInvariants> {
    let class = subcanonical_class(s, a1, a2)?;
    let (si, sum) = (s as i64, (a1 + a2) as i64);
    let genus = (si + 1) * (si * sum + 2) / 2;
    let degree = (si + 1) * sum + 2;
    let adj = adjunction_genus(class);
    if adj != genus {
        return Err(Error::Internal(format!(
            "genus formula gives {genus}, adjunction gives {adj}"
        )));
    }
    let h = DivisorClass::new(class.e, 1, a1 as i64);
    let ch = intersect(class, h)?;
    if ch != degree {
        return Err(Error::Internal(format!(
            "degree formula gives {degree}, C.H = {ch}"
        )));
    }
    Ok(CurveInvariants {
        class,
        genus,
        degree,
        ambient_dim: a1 + a2 + 1,
        smooth_ok: (s + 1) * a2 + 2 >= a1,
        very_ample_ok: class.is_very_ample(),
        gonality_pencil_degree: intersect(class, DivisorClass::fibre(class.e))?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

fn h0_hirzebruch(d: DivisorClass) -> i64 {
    if d.a < 0 {
        return 0;
    }
    (0..=d.a).map(|k| (d.b - k * d.e as i64 + 1).max(0)).sum()
}

/// `h^i(F_e, O(D))`: `h^0` by counting sections, `h^2` by Serre duality, `h^1`
/// from Riemann-Roch.
pub fn line_bundle_cohomology(d: DivisorClass) -> Result<Cohomology> {
    let k = canonical_class(d.e);
    let h0 = h0_hirzebruch(d);
    let h2 = h0_hirzebruch(k.minus(d)?);
    let chi = 1 + intersect(d, d.minus(k)?)? / 2;
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(Error::Internal(format!("negative h1 for {d} on F_{}", d.e)));
    }
    Ok(Cohomology { h0, h1, h2 })
}

/// `h^i(P^2, O(d))`.
pub fn plane_cohomology(d: i64) -> Cohomology {
    let h0 = if d >= 0 {
        binomial(d as u64 + 2, 2) as i64
    } else {
        0
    };
    let h2 = if d <= -3 {
        binomial((-d - 1) as u64, 2) as i64
    } else {
        0
    };
    Cohomology { h0, h1: 0, h2 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EmbeddingKind {
    Scroll { a1: u32, a2: u32 },
    Veronese { m: u32 },
}

/// A surface in `P^N` given by the sections of its hyperplane class in the Cox ring.
#[derive(Clone, Debug)]
pub struct SurfaceEmbedding {
    kind: EmbeddingKind,
    ring: CoxRing,
    hyperplane: CoxClass,
    coordinates: CoxBasis,
}

impl SurfaceEmbedding {
    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn ring(&self) -> &CoxRing {
        &self.ring
    }

    pub fn hyperplane_class(&self) -> CoxClass {
        self.hyperplane
    }

    /// The Cox monomials giving the ambient coordinates `z_0..z_N`.
    pub fn coordinates(&self) -> &CoxBasis {
        &self.coordinates
    }

    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len() - 1
    }

    pub fn degree(&self) -> i64 {
        match self.kind {
            EmbeddingKind::Scroll { a1, a2 } => (a1 + a2) as i64,
            EmbeddingKind::Veronese { m } => (m * m) as i64,
        }
    }

    /// The Hirzebruch parameter, `None` for the plane.
    pub fn hirzebruch_e(&self) -> Option<u32> {
        match self.ring.kind() {
            SurfaceKind::Hirzebruch { e } => Some(e),
            SurfaceKind::ProjectivePlane => None,
        }
    }

    /// Cohomology of the line bundle of a Cox class on the underlying surface.
    pub fn cohomology(&self, class: CoxClass) -> Result<Cohomology> {
        match self.ring.kind() {
            SurfaceKind::Hirzebruch { e } => {
                line_bundle_cohomology(DivisorClass::new(e, class.a, class.b))
            }
            SurfaceKind::ProjectivePlane => Ok(plane_cohomology(class.a)),
        }
    }

    /// The Cox monomial `z^a` for an exponent vector on the ambient coordinates.
    pub fn coordinate_product(&self, exponents: &Monomial) -> Monomial {
        exponents
            .exponents()
            .iter()
            .zip(self.coordinates.monomials())
            .fold(Monomial::one(self.ring.num_vars()), |acc, (&k, z)| {
                acc.mul(&z.pow(k))
            })
    }

    /// Cox polynomial of a linear form with coefficients `c` on `z_0..z_N`.
    pub fn linear_form(&self, c: &[crate::linalg::Rational]) -> Poly {
        Poly::from_terms(
            RingSide::Point,
            self.ring.num_vars(),
            self.coordinates
                .monomials()
                .iter()
                .cloned()
                .zip(c.iter().cloned()),
        )
    }

    /// Distinct Cox monomials `z^a` with `|a| = j`, i.e. a spanning set for the
    /// image of `Sym^j` in the sections of `j H`.
    pub fn image_monomials(&self, j: u32) -> Vec<Monomial> {
        let mut current: HashSet<Monomial> = HashSet::from([Monomial::one(self.ring.num_vars())]);
        for _ in 0..j {
            current = current
                .iter()
                .flat_map(|m| self.coordinates.monomials().iter().map(move |z| m.mul(z)))
                .collect();
        }
        let mut out: Vec<Monomial> = current.into_iter().collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Matrix of `Sym^j -> H^0(j H) / (g H^0(j H - class g))`: rows index the
    /// section basis, columns the monomials of degree `j` in `z_0..z_N`. The
    /// images are normal forms modulo the multiples of `g` when one is given.
    pub fn restriction_matrix(
        &self,
        j: u32,
        modulus: Option<&Poly>,
    ) -> Result<(GradedBasis, Matrix)> {
        let sym = GradedBasis::new(self.coordinates.len(), j);
        let target = self.ring.basis(j as i64 * self.hyperplane);
        let relations = match modulus {
            Some(g) => modulus_span(&self.ring, g, &target)?,
            None => Subspace::new(target.len()),
        };
        let columns: Vec<Vec<_>> = sym
            .monomials()
            .iter()
            .map(|a| {
                let i = target
                    .index_of(&self.coordinate_product(a))
                    .expect("product has class jH");
                relations.reduce(&SparseVec::unit(i)).to_dense(target.len())
            })
            .collect();
        let m = Matrix::from_columns(&columns, target.len())?;
        Ok((sym, m))
    }
}

pub fn build_embedding(kind: EmbeddingKind) -> Result<SurfaceEmbedding> {
    let (ring, hyperplane, expected) = match kind {
        EmbeddingKind::Scroll { a1, a2 } => {
            check_scroll_params(a1, a2)?;
            if a1 + a2 == 0 {
                return input("requires a1 + a2 >= 1");
            }
            let ring = CoxRing::new(SurfaceKind::Hirzebruch { e: a1 - a2 });
            (ring, CoxClass::new(1, a1 as i64), (a1 + a2 + 2) as usize)
        }
        EmbeddingKind::Veronese { m } => {
            if m == 0 {
                return input("requires m >= 1");
            }
            let ring = CoxRing::new(SurfaceKind::ProjectivePlane);
            (
                ring,
                CoxClass::plane(m as i64),
                binomial(m as u64 + 2, 2) as usize,
            )
        }
    };
    let coordinates = ring.basis(hyperplane);
    if coordinates.len() != expected {
        return Err(Error::Internal(format!(
            "embedding has {} coordinates, expected {expected}",
            coordinates.len()
        )));
    }
    Ok(SurfaceEmbedding {
        kind,
        ring,
        hyperplane,
        coordinates,
    })
}

/// Basis of `I(S)_j` as forms in the ambient coordinates `x_0..x_N`.
pub fn surface_ideal_piece(s: &SurfaceEmbedding, j: u32) -> Result<Vec<Poly>> {
    if j == 0 {
        return input("requires j >= 1");
    }
    let (sym, m) = s.restriction_matrix(j, None)?;
    Ok(kernel_basis(&m)
        .iter()
        .map(|v| Poly::from_dense(RingSide::Point, &sym, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_table() {
        for e in 0..5 {
            let c0 = DivisorClass::c0(e);
            let f = DivisorClass::fibre(e);
            assert_eq!(intersect(c0, c0).unwrap(), -(e as i64));
            assert_eq!(intersect(f, f).unwrap(), 0);
            assert_eq!(intersect(c0, f).unwrap(), 1);
            let k = canonical_class(e);
            assert_eq!(intersect(k, k).unwrap(), 8);
            assert_eq!(adjunction_genus(c0), 0);
            assert_eq!(adjunction_genus(f), 0);
        }
        assert!(intersect(DivisorClass::c0(0), DivisorClass::c0(1)).is_err());
        assert_eq!(canonical_class(1), DivisorClass::new(1, -2, -3));
        // Hyperplane self-intersection is the scroll degree.
        for (a1, a2) in [(1u32, 1u32), (2, 1), (3, 1), (4, 2)] {
            let h = DivisorClass::new(a1 - a2, 1, a1 as i64);
            assert_eq!(intersect(h, h).unwrap(), (a1 + a2) as i64);
            assert_eq!(adjunction_genus(h), 0);
            let deg = (a1 + a2) as i64;
            for i in 0..4i64 {
                assert_eq!(
                    adjunction_genus(h.scaled(i + 2)),
                    (i + 2) * (i + 1) / 2 * deg - (i + 1)
                );
            }
            let four = DivisorClass::new(a1 - a2, 4, 3 * a1 as i64 - a2 as i64 + 2);
            assert_eq!(adjunction_genus(four), 3 * (a1 + a2 + 1) as i64);
        }
    }

    #[test]
    fn subcanonical_examples() {
        assert_eq!(
            subcanonical_class(2, 1, 1).unwrap(),
            DivisorClass::new(0, 4, 4)
        );
        assert_eq!(
            subcanonical_class(2, 2, 1).unwrap(),
            DivisorClass::new(1, 4, 7)
        );
        assert_eq!(
            subcanonical_class(3, 1, 1).unwrap(),
            DivisorClass::new(0, 5, 5)
        );
        assert_eq!(subcanonical_class(2, 1, 1).unwrap().to_string(), "4C0+4f");
        let inv = curve_invariants(2, 1, 1).unwrap();
        assert_eq!(
            (
                inv.genus,
                inv.degree,
                inv.smooth_ok,
                inv.gonality_pencil_degree
            ),
            (9, 8, true, 4)
        );
        let inv = curve_invariants(2, 2, 1).unwrap();
        assert_eq!((inv.genus, inv.degree, inv.smooth_ok), (12, 11, true));
        assert!(!curve_invariants(2, 6, 1).unwrap().smooth_ok);
        assert_eq!(curve_invariants(3, 1, 1).unwrap().genus, 16);
        assert!(subcanonical_class(1, 1, 1).is_err());
    }

    #[test]
    fn cohomology_examples() {
        for (a1, a2) in [(1u32, 1u32), (2, 1), (3, 0), (3, 2)] {
            let e = a1 - a2;
            let c = line_bundle_cohomology(DivisorClass::new(e, 1, a1 as i64)).unwrap();
            assert_eq!((c.h0, c.h1), ((a1 + a2 + 2) as i64, 0));
            let k = line_bundle_cohomology(canonical_class(e)).unwrap();
            assert_eq!(
                k,
                Cohomology {
                    h0: 0,
                    h1: 0,
                    h2: 1
                }
            );
            let o = line_bundle_cohomology(DivisorClass::new(e, 0, 0)).unwrap();
            assert_eq!(
                o,
                Cohomology {
                    h0: 1,
                    h1: 0,
                    h2: 0
                }
            );
        }
        // O(-2f) on F_0 has h1 = 1.
        assert_eq!(
            line_bundle_cohomology(DivisorClass::new(0, 0, -2))
                .unwrap()
                .h1,
            1
        );
        assert_eq!(
            plane_cohomology(-3),
            Cohomology {
                h0: 0,
                h1: 0,
                h2: 1
            }
        );
        assert_eq!(plane_cohomology(2).h0, 6);
    }

    #[test]
    fn embeddings() {
        let q = build_embedding(EmbeddingKind::Scroll { a1: 1, a2: 1 }).unwrap();
        assert_eq!((q.ambient_dim(), q.degree()), (3, 2));
        let c = build_embedding(EmbeddingKind::Scroll { a1: 2, a2: 1 }).unwrap();
        assert_eq!((c.ambient_dim(), c.degree()), (4, 3));
        let v = build_embedding(EmbeddingKind::Veronese { m: 2 }).unwrap();
        assert_eq!((v.ambient_dim(), v.degree()), (5, 4));
        assert!(build_embedding(EmbeddingKind::Scroll { a1: 1, a2: 2 }).is_err());
        assert!(build_embedding(EmbeddingKind::Scroll { a1: 0, a2: 0 }).is_err());
        assert!(build_embedding(EmbeddingKind::Veronese { m: 0 }).is_err());
    }

    #[test]
    fn surface_ideals() {
        let q = build_embedding(EmbeddingKind::Scroll { a1: 1, a2: 1 }).unwrap();
        let quadrics = surface_ideal_piece(&q, 2).unwrap();
        assert_eq!(quadrics.len(), 1);
        // z = (t0 u, t1 u, t0 v, t1 v): the quadric is z0 z3 - z1 z2.
        let segre = Poly::parse("x0*x3 - x1*x2").unwrap();
        assert!(quadrics[0].proportionality(&segre).is_some());
        let c = build_embedding(EmbeddingKind::Scroll { a1: 2, a2: 1 }).unwrap();
        assert!(surface_ideal_piece(&c, 1).unwrap().is_empty());
        assert_eq!(surface_ideal_piece(&c, 2).unwrap().len(), 3);
        let v = build_embedding(EmbeddingKind::Veronese { m: 2 }).unwrap();
        assert_eq!(surface_ideal_piece(&v, 2).unwrap().len(), 6);
    }
}
