//! Subcanonical curves on scrolls and on the plane, given by one Cox equation.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::linalg::{echelon_form, kernel_basis, rank, Matrix, Rational};
use crate::poly::cox::modulus_rows;
use crate::poly::{CoxClass, Poly, RingSide};
use crate::surfaces::{build_embedding, curve_invariants, EmbeddingKind, SurfaceEmbedding};

/// Where the curve equation comes from.
#[derive(Debug)]
pub enum CurveSource<'a> {
    /// Random coefficients in `[-9, 9] \ {0}` on every monomial of the class.
    Sample(&'a mut rand_chacha::ChaCha8Rng),
    Equation(Poly),
}

#[derive(Clone, Debug)]
pub struct EmbeddedCurve {
    surface: SurfaceEmbedding,
    equation: Poly,
    class: CoxClass,
    s: u32,
    genus: i64,
    degree: i64,
    normality: OnceLock<Vec<bool>>,
}

impl EmbeddedCurve {
    pub fn surface(&self) -> &SurfaceEmbedding {
        &self.surface
    }

    pub fn equation(&self) -> &Poly {
        &self.equation
    }

    pub fn class(&self) -> CoxClass {
        self.class
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    /// The equation written with the Cox variable names.
    pub fn equation_text(&self) -> String {
        self.surface.ring().display(&self.equation)
    }

    /// `normality_check` for `j = 1..=s+3`, computed once.
    pub fn normality(&self) -> Result<&[bool]> {
        if let Some(v) = self.normality.get() {
            return Ok(v);
        }
        let v = (1..=self.s + 3)
            .map(|j| normality_check(self, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normality.get_or_init(|| v))
    }
}

/// Checks the scroll smoothness window `a2 <= a1 <= (s+1) a2 + 2`.
pub fn check_scroll_window(s: u32, a1: u32, a2: u32) -> Result<()> {
    if s < 2 {
        return input("requires s >= 2");
    }
    if a2 > a1 {
        return input("requires a2 <= a1");
    }
    if a1 + a2 == 0 {
        return input("requires a1 + a2 >= 1");
    }
    if a1 > (s + 1) * a2 + 2 {
        return input(format!(
            "requires a1 <= (s+1)a2+2 (here {a1} > {})",
            (s + 1) * a2 + 2
        ));
    }
    Ok(())
}

fn sample_equation(
    surface: &SurfaceEmbedding,
    class: CoxClass,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Poly {
    let basis = surface.ring().basis(class);
    Poly::from_terms(
        RingSide::Point,
        surface.ring().num_vars(),
        basis.monomials().iter().map(|m| {
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-9..=9);
            }
            (m.clone(), Rational::from_integer(c.into()))
        }),
    )
}

fn make_curve(
    surface: SurfaceEmbedding,
    class: CoxClass,
    s: u32,
    genus: i64,
    degree: i64,
    source: CurveSource<'_>,
) -> Result<EmbeddedCurve> {
    let equation = match source {
        CurveSource::Sample(rng) => sample_equation(&surface, class, rng),
        CurveSource::Equation(g) => {
            if g.num_vars() != surface.ring().num_vars() {
                return input("equation does not live in the surface's Cox ring");
            }
            let found = surface.ring().class_of_poly(&g)?;
            if found != class {
                return input(format!("equation has class {found}, expected {class}"));
            }
            g.with_side(RingSide::Point)
        }
    };
    Ok(EmbeddedCurve {
        surface,
        equation,
        class,
        s,
        genus,
        degree,
        normality: OnceLock::new(),
    })
}

/// A member of `|(s+2) C0 + ((s+1) a1 - a2 + 2) f|` on the scroll `S(a1, a2)`.
pub fn curve_on_scroll(s: u32, a1: u32, a2: u32, source: CurveSource<'_>) -> Result<EmbeddedCurve> {
    check_scroll_window(s, a1, a2)?;
    let inv = curve_invariants(s, a1, a2)?;
    let surface = build_embedding(EmbeddingKind::Scroll { a1, a2 })?;
    make_curve(
        surface,
        inv.class.cox_class(),
        s,
        inv.genus,
        inv.degree,
        source,
    )
}

/// A plane curve of degree `s m + 3`, embedded by the Veronese map of degree `m`.
pub fn plane_curve(m: u32, s: u32, source: CurveSource<'_>) -> Result<EmbeddedCurve> {
    if m == 0 {
        return input("requires m >= 1");
    }
    if s < 2 {
        return input("requires s >= 2");
    }
    let d = (s * m + 3) as i64;
    let genus = (d - 1) * (d - 2) / 2;
    if s == 2 {
        let n = (m + 1) as i64;
        if genus != n * (2 * n - 1) {
            return Err(Error::Internal("plane genus disagrees with n(2n-1)".into()));
        }
    }
    let surface = build_embedding(EmbeddingKind::Veronese { m })?;
    let degree = d * m as i64;
    make_curve(surface, CoxClass::plane(d), s, genus, degree, source)
}

/// Basis of `I(X)_j`: forms of degree `j` in `x_0..x_N` whose Cox image is a
/// multiple of the equation.
pub fn curve_ideal_piece(x: &EmbeddedCurve, j: u32) -> Result<Vec<Poly>> {
    if j == 0 || j > x.s + 3 {
        return input(format!("degree must lie in 1..={}", x.s + 3));
    }
    let (sym, m) = x.surface.restriction_matrix(j, Some(&x.equation))?;
    Ok(kernel_basis(&m)
        .iter()
        .map(|v| Poly::from_dense(RingSide::Point, &sym, v))
        .collect())
}

/// `h^0(O_C(j))` from the cohomology of `jH` and `jH - C` on the surface.
pub fn sections_on_curve(x: &EmbeddedCurve, j: u32) -> Result<i64> {
    let jh = j as i64 * x.surface.hyperplane_class();
    let big = x.surface.cohomology(jh)?;
    let small = x.surface.cohomology(jh - x.class)?;
    Ok(big.h0 - small.h0 + small.h1 - big.h1)
}

/// Whether forms of degree `j` restrict onto all sections of `O_C(j)`.
pub fn normality_check(x: &EmbeddedCurve, j: u32) -> Result<bool> {
    if j == 0 {
        return input("requires j >= 1");
    }
    let target = x
        .surface
        .ring()
        .basis(j as i64 * x.surface.hyperplane_class());
    // The multiples of g are independent, so the image of Sym^j in H^0(jH)/(g) has
    // dimension rank(multiples + image) - #multiples.
    let mut rows: Vec<Vec<Rational>> = modulus_rows(x.surface.ring(), &x.equation, &target)?
        .iter()
        .map(|v| v.to_dense(target.len()))
        .collect();
    let multiples = rows.len();
    for m in x.surface.image_monomials(j) {
        let mut row = vec![Rational::zero(); target.len()];
        row[target.index_of(&m).expect("class jH")] = Rational::one();
        rows.push(row);
    }
    let restricted =
        (echelon_form(&Matrix::from_rows(rows, target.len())?).dim() - multiples) as i64;
    Ok(restricted == sections_on_curve(x, j)?)
}

/// Rank of the restriction map in degree `j`, from the dense matrix (an
/// independent route used in tests).
pub fn restriction_rank(x: &EmbeddedCurve, j: u32) -> Result<usize> {
    Ok(rank(&x.surface.restriction_matrix(j, Some(&x.equation))?.1))
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub surface: EmbeddingKind,
    pub ambient_dim: usize,
    pub s: u32,
    pub genus: i64,
    pub degree: i64,
}

impl From<&EmbeddedCurve> for CurveSummary {
    fn from(x: &EmbeddedCurve) -> Self {
        CurveSummary {
            surface: x.surface.kind(),
            ambient_dim: x.ambient_dim(),
            s: x.s,
            genus: x.genus,
            degree: x.degree,
        }
    }
}
