//! Univariate rational polynomials: characteristic and minimal polynomials of
//! matrices, squarefreeness, and exact rational roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{solve, Matrix, Rational, SparseVec, Subspace};
use crate::poly::{Monomial, Poly, RingSide};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sqfree = self.div_rem(&self.gcd(&self.derivative())).0;
        let mut ints = integer_coefficients(&sqfree);
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            ints.remove(0);
        }
        let n = ints.len() - 1;
        if n == 0 {
            return roots;
        }
        // b(y) = a_n^(n-1) p(y / a_n) is monic with integer coefficients, so its
        // rational roots are integers.
        let an = ints[n].clone();
        let b: Vec<BigInt> = (0..=n)
            .map(|i| &ints[i] * num_traits::pow(an.clone(), n - i) / &an)
            .collect();
        let bound = BigInt::one() + b[..n].iter().map(|c| c.abs()).max().unwrap_or_default();
        let q = UniPoly::new(
            b.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        let chain = sturm_chain(&q);
        let mut found = Vec::new();
        isolate_integer_roots(&q, &chain, -bound.clone(), bound, &mut found);
        roots.extend(found.into_iter().map(|y| Rational::new(y, an.clone())));
        roots.sort();
        roots
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            RingSide::Point,
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
        )
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().display_with(&["t"]))
    }
}

fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(UniPoly::zero().sub(&r));
    }
    chain
}

fn sign_variations(chain: &[UniPoly], x: &BigInt) -> usize {
    let x = Rational::from_integer(x.clone());
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(&x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Integer roots of the squarefree `q` in `(lo, hi]`, by Sturm bisection.
fn isolate_integer_roots(
    q: &UniPoly,
    chain: &[UniPoly],
    lo: BigInt,
    hi: BigInt,
    out: &mut Vec<BigInt>,
) {
    let count = sign_variations(chain, &lo) - sign_variations(chain, &hi);
    if count == 0 {
        return;
    }
    if &hi - &lo == BigInt::one() {
        if q.eval(&Rational::from_integer(hi.clone())).is_zero() {
            out.push(hi);
        }
        return;
    }
    let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
    isolate_integer_roots(q, chain, lo, mid.clone(), out);
    isolate_integer_roots(q, chain, mid, hi, out);
}

/// `det(t I - M)` by the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(m: &Matrix) -> UniPoly {
    let n = m.rows();
    assert_eq!(
        n,
        m.cols(),
        "characteristic polynomial of a non-square matrix"
    );
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk).expect("square");
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let am = m.mul(&next).expect("square");
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + am.get(i, i));
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
        mk = next;
    }
    UniPoly::new(coeffs)
}

/// Monic polynomial of least degree annihilating `M`, from the first linear
/// dependency among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &Matrix) -> UniPoly {
    let n = m.rows();
    assert_eq!(n, m.cols(), "minimal polynomial of a non-square matrix");
    let flat = |a: &Matrix| -> Vec<Rational> { (0..n).flat_map(|i| a.row(i).to_vec()).collect() };
    let mut powers = vec![flat(&Matrix::identity(n))];
    let mut span = Subspace::new(n * n);
    span.insert(SparseVec::from_dense(&powers[0]));
    let mut current = Matrix::identity(n);
    loop {
        current = current.mul(m).expect("square");
        let v = flat(&current);
        if span.contains(&SparseVec::from_dense(&v)) {
            let basis = Matrix::from_columns(&powers, n * n).expect("uniform length");
            let c = solve(&basis, &v)
                .expect("shapes agree")
                .expect("dependency exists");
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            return UniPoly::new(coeffs);
        }
        span.insert(SparseVec::from_dense(&v));
        powers.push(v);
    }
}
