//! The contraction action of operators on forms and the objects built from it.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::monomial::{factorial, falling_factorial, GradedBasis, Monomial};
use super::poly::{Poly, RingSide};
use crate::error::{input, Result};
use crate::linalg::{Matrix, Rational};

/// `d^a . x^b = a! C(b, a) x^(b-a)`, i.e. the product of falling factorials,
/// or `None` when `a` does not divide `b`.
pub fn contract_monomial(a: &Monomial, b: &Monomial) -> Option<(Rational, Monomial)> {
    let rest = a.quotient_of(b)?;
    let c = a
        .exponents()
        .iter()
        .zip(b.exponents())
        .fold(num_bigint::BigInt::one(), |acc, (&ai, &bi)| {
            acc * falling_factorial(bi, ai)
        });
    Some((Rational::from_integer(c), rest))
}

fn check_pair(d: &Poly, f: &Poly) -> Result<()> {
    if d.side() != RingSide::Operator || f.side() != RingSide::Point {
        return input("apolarity acts by an operator (d-variables) on a form (x-variables)");
    }
    if d.num_vars() != f.num_vars() {
        return input(format!(
            "operator has {} variables but the form has {}",
            d.num_vars(),
            f.num_vars()
        ));
    }
    Ok(())
}

/// `D . f`, the bilinear extension of the monomial contraction rule.
pub fn apolar_apply(d: &Poly, f: &Poly) -> Result<Poly> {
    check_pair(d, f)?;
    let mut out = Poly::zero(RingSide::Point, f.num_vars());
    for (a, x) in d.terms() {
        for (b, y) in f.terms() {
            if let Some((c, m)) = contract_monomial(a, b) {
                out.add_term(m, c * x * y);
            }
        }
    }
    Ok(out)
}

/// Perfect pairing `S_d x T_d -> Q`.
pub fn pairing(f: &Poly, d: &Poly) -> Result<Rational> {
    check_pair(d, f)?;
    match (f.homogeneous_degree(), d.homogeneous_degree()) {
        (Some(a), Some(b)) if a != b => {
            return input(format!("pairing needs equal degrees, got {a} and {b}"))
        }
        (None, _) | (_, None) if !(f.is_zero() || d.is_zero()) => {
            return input("pairing needs homogeneous arguments")
        }
        _ => {}
    }
    let r = apolar_apply(d, f)?;
    Ok(r.coefficient(&Monomial::one(f.num_vars())))
}

/// Matrix of `T_e -> S_{d-e}, D -> D.f` with columns indexed by the degree-`e`
/// operator basis and rows by the degree-`(d-e)` form basis.
pub fn catalecticant(f: &Poly, e: u32) -> Result<Matrix> {
    let d = homogeneous_form_degree(f)?;
    if e > d {
        return input(format!(
            "catalecticant degree {e} exceeds the form degree {d}"
        ));
    }
    let n = f.num_vars();
    let ops = GradedBasis::new(n, e);
    let targets = GradedBasis::new(n, d - e);
    let mut m = Matrix::zeros(targets.len(), ops.len());
    for (j, a) in ops.monomials().iter().enumerate() {
        for (b, y) in f.terms() {
            if let Some((c, rest)) = contract_monomial(a, b) {
                let i = targets.index_of(&rest).expect("quotient has degree d - e");
                let cur = m.get(i, j) + c * y;
                m.set(i, j, cur);
            }
        }
    }
    Ok(m)
}

pub(crate) fn homogeneous_form_degree(f: &Poly) -> Result<u32> {
    if f.side() != RingSide::Point {
        return input("expected a form in the x-variables");
    }
    if f.is_zero() {
        return input("the zero polynomial has no apolar ideal");
    }
    f.homogeneous_degree()
        .ok_or_else(|| crate::Error::Input("form is not homogeneous".into()))
}

/// A point of the dual projective space, i.e. a linear form up to scale.
/// Stored with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFormPoint {
    coords: Vec<Rational>,
}

impl LinearFormPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return input("a projective point needs a nonzero coordinate");
        };
        let inv = first.recip();
        Ok(LinearFormPoint {
            coords: coords.into_iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        LinearFormPoint::new(coords.iter().map(|&c| crate::linalg::rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn num_vars(&self) -> usize {
        self.coords.len()
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear_form(&self) -> Poly {
        let n = self.coords.len();
        Poly::from_terms(
            RingSide::Point,
            n,
            self.coords
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }
}

impl Serialize for LinearFormPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

/// `(sum c_i x_i)^d` expanded by the multinomial theorem.
pub fn power_of_linear_form(c: &LinearFormPoint, d: u32) -> Result<Poly> {
    if d == 0 {
        return input("power must be at least 1");
    }
    let n = c.num_vars();
    let basis = GradedBasis::new(n, d);
    let dfact = Rational::from_integer(factorial(d));
    let terms = basis.monomials().iter().filter_map(|m| {
        let mut coeff = &dfact / Rational::from_integer(m.factorial());
        for (ci, &e) in c.coords().iter().zip(m.exponents()) {
            if e > 0 {
                if ci.is_zero() {
                    return None;
                }
                coeff *= num_traits::pow(ci.clone(), e as usize);
            }
        }
        Some((m.clone(), coeff))
    });
    Ok(Poly::from_terms(RingSide::Point, n, terms))
}

/// Value `D(c)` of an operator at a dual point.
pub fn evaluate_at(d: &Poly, p: &LinearFormPoint) -> Rational {
    d.evaluate(p.coords())
}

/// Gram matrix of the pairing on the degree-`d` monomial bases (diagonal with entries `a!`).
pub fn pairing_gram(num_vars: usize, d: u32) -> Matrix {
    let basis = GradedBasis::new(num_vars, d);
    let mut g = Matrix::zeros(basis.len(), basis.len());
    for (i, a) in basis.monomials().iter().enumerate() {
        for (j, b) in basis.monomials().iter().enumerate() {
            if let Some((c, _)) = contract_monomial(a, b) {
                g.set(i, j, c);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rat};

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn op(s: &str, n: usize) -> Poly {
        Poly::parse_as(s, RingSide::Operator, n).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apolar_apply(&op("d0", 1), &p("x0^3")).unwrap(), p("3*x0^2"));
        assert!(apolar_apply(&op("d0*d1", 2), &p("x0^4+x1^4"))
            .unwrap()
            .is_zero());
        let one = apolar_apply(&op("d0*d1", 2), &p("x0*x1")).unwrap();
        assert_eq!(one, Poly::constant(RingSide::Point, 2, rat(1)));
        assert!(apolar_apply(&op("d0", 3), &p("x0^2")).is_err());
        assert!(apolar_apply(&p("x0"), &p("x0^2")).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&p("x0^2"), &op("d0^2", 1)).unwrap(), rat(2));
        assert_eq!(pairing(&p("x0*x1"), &op("d0^2", 2)).unwrap(), rat(0));
        assert!(pairing(&p("x0^2"), &op("d0", 1)).is_err());
        // A point annihilated by D: c = (1,1,1), D = d0 - d1.
        let c = LinearFormPoint::from_i64(&[1, 1, 1]).unwrap();
        let sq = power_of_linear_form(&c, 2).unwrap();
        let d = op("d0 - d1", 3);
        assert_eq!(evaluate_at(&d, &c), rat(0));
        assert!(apolar_apply(&d, &sq).unwrap().is_zero());
        let d2 = op("d0*d1 - d2^2", 3);
        assert_eq!(pairing(&sq, &d2).unwrap(), rat(0));
        let d3 = op("d0*d1", 3);
        assert_eq!(pairing(&sq, &d3).unwrap(), rat(2));
    }

    #[test]
    fn catalecticant_examples() {
        let f = p("x0^4 + x1^4");
        let c = catalecticant(&f, 2).unwrap();
        // d0^2 -> 12 x0^2, d0 d1 -> 0, d1^2 -> 12 x1^2
        assert_eq!(c, Matrix::from_i64(&[&[12, 0, 0], &[0, 0, 0], &[0, 0, 12]]));
        assert_eq!(rank(&c), 2);
        for e in 0..=5 {
            assert_eq!(rank(&catalecticant(&p("x0^5"), e).unwrap()), 1);
        }
        assert_eq!(rank(&catalecticant(&p("x0^3*x1"), 1).unwrap()), 2);
        assert!(catalecticant(&f, 5).is_err());
        assert!(catalecticant(&p("x0^2 + x1"), 1).is_err());
    }

    #[test]
    fn linear_form_powers() {
        let c = LinearFormPoint::from_i64(&[1, 0]).unwrap();
        assert_eq!(
            power_of_linear_form(&c, 4).unwrap(),
            Poly::parse_as("x0^4", RingSide::Point, 2).unwrap()
        );
        let c = LinearFormPoint::from_i64(&[1, 1]).unwrap();
        assert_eq!(
            power_of_linear_form(&c, 2).unwrap(),
            p("x0^2 + 2*x0*x1 + x1^2")
        );
        let c = LinearFormPoint::from_i64(&[1, -1]).unwrap();
        assert_eq!(
            power_of_linear_form(&c, 3).unwrap(),
            p("x0^3 - 3*x0^2*x1 + 3*x0*x1^2 - x1^3")
        );
        assert_eq!(
            power_of_linear_form(&c, 3).unwrap(),
            c.linear_form().pow(3),
            "multinomial expansion agrees with repeated multiplication"
        );
    }

    #[test]
    fn points_are_normalised() {
        let a = LinearFormPoint::from_i64(&[0, 2, 4]).unwrap();
        let b = LinearFormPoint::from_i64(&[0, -1, -2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords()[1], rat(1));
        assert!(LinearFormPoint::from_i64(&[0, 0]).is_err());
    }

    #[test]
    fn gram_is_diagonal_factorials() {
        let g = pairing_gram(3, 3);
        let basis = GradedBasis::new(3, 3);
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                if i == j {
                    assert_eq!(
                        *g.get(i, i),
                        Rational::from_integer(basis.get(i).factorial())
                    );
                } else {
                    assert!(g.get(i, j).is_zero());
                }
            }
        }
    }
}
