//! Cox rings of Hirzebruch surfaces and of the plane, with monomial bases of
//! their graded pieces (the section spaces of line bundles).
//!
//! On `F_e` the variables are `t0, t1, u, v` with `deg t0 = deg t1 = f`,
//! `deg u = C0` and `deg v = C0 + e f`. A class `a C0 + b f` with `a >= 0` has
//! the monomials `u^(a-k) v^k t0^i t1^(b-ke-i)`, so `|C0 + a1 f|` on
//! `F_(a1-a2)` is spanned by `u t^(<=a1)` and `v t^(<=a2)`. The plane uses
//! `y0, y1, y2` with the usual grading.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use super::monomial::{GradedBasis, Monomial};
use super::poly::{Poly, RingSide};
use crate::error::{input, Result};
use crate::linalg::{echelon_form, Matrix, SparseVec, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceKind {
    Hirzebruch { e: u32 },
    ProjectivePlane,
}

/// A degree in the Cox grading: the class `a C0 + b f` on `F_e`, or the
/// degree `a` on the plane (where `b` is always 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxClass {
    pub a: i64,
    pub b: i64,
}

impl CoxClass {
    pub fn new(a: i64, b: i64) -> Self {
        CoxClass { a, b }
    }

    pub fn plane(d: i64) -> Self {
        CoxClass { a: d, b: 0 }
    }
}

impl Add for CoxClass {
    type Output = CoxClass;
    fn add(self, o: CoxClass) -> CoxClass {
        CoxClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for CoxClass {
    type Output = CoxClass;
    fn sub(self, o: CoxClass) -> CoxClass {
        CoxClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul<CoxClass> for i64 {
    type Output = CoxClass;
    fn mul(self, c: CoxClass) -> CoxClass {
        CoxClass::new(self * c.a, self * c.b)
    }
}

impl fmt::Display for CoxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}C0{:+}f", self.a, self.b)
    }
}

const HIRZEBRUCH_NAMES: [&str; 4] = ["t0", "t1", "u", "v"];
const PLANE_NAMES: [&str; 3] = ["y0", "y1", "y2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoxRing {
    kind: SurfaceKind,
}

impl CoxRing {
    pub fn new(kind: SurfaceKind) -> Self {
        CoxRing { kind }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.var_names().len()
    }

    pub fn var_names(&self) -> &'static [&'static str] {
        match self.kind {
            SurfaceKind::Hirzebruch { .. } => &HIRZEBRUCH_NAMES,
            SurfaceKind::ProjectivePlane => &PLANE_NAMES,
        }
    }

    pub fn class_of(&self, m: &Monomial) -> CoxClass {
        let x = m.exponents();
        match self.kind {
            SurfaceKind::Hirzebruch { e } => CoxClass::new(
                (x[2] + x[3]) as i64,
                (x[0] + x[1]) as i64 + e as i64 * x[3] as i64,
            ),
            SurfaceKind::ProjectivePlane => CoxClass::plane(m.degree() as i64),
        }
    }

    /// Class of a nonzero Cox polynomial whose terms all share one class.
    pub fn class_of_poly(&self, p: &Poly) -> Result<CoxClass> {
        if p.num_vars() != self.num_vars() {
            return input("polynomial does not live in this Cox ring");
        }
        let mut classes = p.terms().map(|(m, _)| self.class_of(m));
        let Some(first) = classes.next() else {
            return input("the zero polynomial has no class");
        };
        if classes.any(|c| c != first) {
            return input("Cox polynomial is not homogeneous for the class grading");
        }
        Ok(first)
    }

    /// Monomial basis of a graded piece; empty when the class has no sections.
    pub fn basis(&self, class: CoxClass) -> CoxBasis {
        let monomials = match self.kind {
            SurfaceKind::Hirzebruch { e } => {
                let mut out = Vec::new();
                if class.a >= 0 {
                    let a = class.a as u32;
                    for k in 0..=a {
                        let tdeg = class.b - k as i64 * e as i64;
                        if tdeg < 0 {
                            continue;
                        }
                        let tdeg = tdeg as u32;
                        for i in (0..=tdeg).rev() {
                            out.push(Monomial::new(vec![i, tdeg - i, a - k, k]));
                        }
                    }
                }
                out
            }
            SurfaceKind::ProjectivePlane => {
                if class.a >= 0 {
                    GradedBasis::new(3, class.a as u32).monomials().to_vec()
                } else {
                    Vec::new()
                }
            }
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        CoxBasis {
            kind: self.kind,
            class,
            monomials,
            index,
        }
    }

    pub fn h0(&self, class: CoxClass) -> usize {
        self.basis(class).len()
    }

    pub fn monomial_poly(&self, m: &Monomial) -> Poly {
        Poly::term(RingSide::Point, num_traits::One::one(), m.clone())
    }

    pub fn display(&self, p: &Poly) -> String {
        p.display_with(self.var_names())
    }
}

/// Explicit monomial basis of `H^0` of a class, in a fixed enumeration order.
#[derive(Clone, Debug)]
pub struct CoxBasis {
    kind: SurfaceKind,
    class: CoxClass,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl CoxBasis {
    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn class(&self) -> CoxClass {
        self.class
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a Cox polynomial of this class.
    pub fn coords(&self, p: &Poly) -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            match self.index_of(m) {
                Some(i) => pairs.push((i, c.clone())),
                None => return input(format!("term outside the class {}", self.class)),
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }
}

/// Enumerates the section basis of a class; the class must have `a >= 0`.
pub fn cox_basis(kind: SurfaceKind, class: CoxClass) -> Result<CoxBasis> {
    if class.a < 0 {
        return input(format!("class {class} has negative C0-coefficient"));
    }
    if let SurfaceKind::ProjectivePlane = kind {
        if class.b != 0 {
            return input("plane classes carry only a degree");
        }
    }
    Ok(CoxRing::new(kind).basis(class))
}

/// Coordinates of `g * m` in the target piece, for `m` running over the basis of
/// `target - class(g)`. They are independent because the Cox ring is a domain.
pub fn modulus_rows(ring: &CoxRing, g: &Poly, target: &CoxBasis) -> Result<Vec<SparseVec>> {
    let gclass = ring.class_of_poly(g)?;
    let complement = ring.basis(target.class() - gclass);
    complement
        .monomials()
        .iter()
        .map(|m| target.coords(&(g * &ring.monomial_poly(m))))
        .collect()
}

/// Span of `g * (basis of target - class(g))` inside the target piece.
pub fn modulus_span(ring: &CoxRing, g: &Poly, target: &CoxBasis) -> Result<Subspace> {
    let rows: Vec<Vec<_>> = modulus_rows(ring, g, target)?
        .iter()
        .map(|v| v.to_dense(target.len()))
        .collect();
    Ok(echelon_form(&Matrix::from_rows(rows, target.len())?))
}

/// Multiplies out each list of Cox monomials and expresses the products in the
/// basis of their common class, reduced to normal form modulo the multiples of
/// `modulus` when one is given. Rows index the target basis, columns the products.
pub fn cox_multiply_and_reduce(
    ring: &CoxRing,
    products: &[Vec<Monomial>],
    modulus: Option<&Poly>,
) -> Result<Matrix> {
    let mut monos = Vec::with_capacity(products.len());
    for factors in products {
        let Some(first) = factors.first() else {
            return input("empty product");
        };
        let m = factors[1..].iter().fold(first.clone(), |acc, x| acc.mul(x));
        if m.num_vars() != ring.num_vars() {
            return input("monomial does not live in this Cox ring");
        }
        monos.push(m);
    }
    let Some(first) = monos.first() else {
        return input("no products to multiply");
    };
    let class = ring.class_of(first);
    if let Some(bad) = monos.iter().find(|m| ring.class_of(m) != class) {
        return input(format!(
            "products land in different classes: {} and {}",
            class,
            ring.class_of(bad)
        ));
    }
    let target = ring.basis(class);
    let relations = match modulus {
        Some(g) => modulus_span(ring, g, &target)?,
        None => Subspace::new(target.len()),
    };
    let columns: Vec<Vec<_>> = monos
        .iter()
        .map(|m| {
            let i = target.index_of(m).expect("product lies in its own class");
            relations.reduce(&SparseVec::unit(i)).to_dense(target.len())
        })
        .collect();
    Matrix::from_columns(&columns, target.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    fn hz(e: u32) -> CoxRing {
        CoxRing::new(SurfaceKind::Hirzebruch { e })
    }

    #[test]
    fn hyperplane_class_sections() {
        let ring = hz(1);
        let b = cox_basis(ring.kind(), CoxClass::new(1, 2)).unwrap();
        let shown: Vec<String> = b
            .monomials()
            .iter()
            .map(|m| ring.display(&ring.monomial_poly(m)))
            .collect();
        assert_eq!(shown, ["t0^2*u", "t0*t1*u", "t1^2*u", "t0*v", "t1*v"]);
        assert_eq!(hz(0).h0(CoxClass::new(1, 1)), 4);
        assert_eq!(
            CoxRing::new(SurfaceKind::ProjectivePlane).h0(CoxClass::plane(2)),
            6
        );
        assert!(cox_basis(ring.kind(), CoxClass::new(-1, 3)).is_err());
    }

    #[test]
    fn class_sizes_follow_fibre_sum() {
        for e in 0..4u32 {
            for a in 0..5i64 {
                for b in -2..9i64 {
                    let expected: i64 = (0..=a).map(|k| (b - k * e as i64 + 1).max(0)).sum();
                    assert_eq!(hz(e).h0(CoxClass::new(a, b)) as i64, expected);
                }
            }
        }
        for (a1, a2) in [(1u32, 1u32), (2, 1), (3, 1), (2, 2), (4, 0)] {
            let ring = hz(a1 - a2);
            assert_eq!(ring.h0(CoxClass::new(1, a1 as i64)), (a1 + a2 + 2) as usize);
        }
    }

    #[test]
    fn basis_monomials_have_their_class() {
        let ring = hz(2);
        let c = CoxClass::new(3, 7);
        for m in ring.basis(c).monomials() {
            assert_eq!(ring.class_of(m), c);
        }
    }

    #[test]
    fn multiply_examples() {
        let ring = hz(0);
        let ut0 = Monomial::new(vec![1, 0, 1, 0]);
        let ut1 = Monomial::new(vec![0, 1, 1, 0]);
        let m = cox_multiply_and_reduce(&ring, &[vec![ut0.clone(), ut1.clone()]], None).unwrap();
        let target = ring.basis(CoxClass::new(2, 2));
        let idx = target.index_of(&Monomial::new(vec![1, 1, 2, 0])).unwrap();
        assert_eq!(m.column(0), SparseVec::unit(idx).to_dense(target.len()));

        // A modulus of the target class itself kills everything.
        let g = Poly::from_terms(
            RingSide::Point,
            4,
            target
                .monomials()
                .iter()
                .map(|m| (m.clone(), crate::linalg::rat(1))),
        );
        let all: Vec<Vec<Monomial>> = target.monomials().iter().map(|m| vec![m.clone()]).collect();
        let g_only = cox_multiply_and_reduce(&ring, &all, Some(&g)).unwrap();
        assert_eq!(rank(&g_only), target.len() - 1);
        let span = cox_multiply_and_reduce(
            &ring,
            &[vec![ut0.clone(), ut1.clone()]],
            Some(&ring.monomial_poly(&Monomial::new(vec![1, 1, 2, 0]))),
        )
        .unwrap();
        assert!(span.is_zero());

        let bad = cox_multiply_and_reduce(&ring, &[vec![ut0.clone()], vec![ut0, ut1]], None);
        assert!(bad.is_err());
    }

    #[test]
    fn squares_of_cubic_scroll_hyperplanes_span_twelve() {
        let ring = hz(1);
        let h = ring.basis(CoxClass::new(1, 2));
        let mut products = Vec::new();
        for (i, a) in h.monomials().iter().enumerate() {
            for b in &h.monomials()[i..] {
                products.push(vec![a.clone(), b.clone()]);
            }
        }
        let m = cox_multiply_and_reduce(&ring, &products, None).unwrap();
        assert_eq!(m.rows(), 12);
        assert_eq!(rank(&m), 12);
    }
}
