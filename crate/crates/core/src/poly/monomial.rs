use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

/// Exponent vector of a monomial, ordered graded-lexicographically
/// (higher degree first, then larger exponent of the lowest-index variable).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// `a! = prod_i a_i!`.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &a| acc * factorial(a))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / (n-k)!`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    debug_assert!(k <= n);
    (n - k + 1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All monomials of one degree in a fixed number of variables, listed in
/// decreasing graded-lex order, with a reverse index.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    num_vars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(num_vars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; num_vars];
        enumerate(&mut current, 0, degree, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedBasis {
            num_vars,
            degree,
            monomials,
            index,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn enumerate(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = current.len();
    if n == 0 {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        current[pos] = 0;
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        enumerate(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_match_binomials() {
        for n in 1..6usize {
            for d in 0..7u32 {
                let b = GradedBasis::new(n, d);
                assert_eq!(b.len() as u64, binomial(n as u64 - 1 + d as u64, d as u64));
            }
        }
    }

    #[test]
    fn basis_is_decreasing_grlex() {
        let b = GradedBasis::new(3, 3);
        assert_eq!(b.get(0).exponents(), &[3, 0, 0]);
        assert!(b.monomials().windows(2).all(|w| w[0] > w[1]));
        assert_eq!(b.index_of(&Monomial::new(vec![0, 0, 3])), Some(b.len() - 1));
    }

    #[test]
    fn order_is_graded_first() {
        assert!(Monomial::new(vec![0, 2]) > Monomial::new(vec![1, 0]));
        assert!(Monomial::new(vec![2, 0]) > Monomial::new(vec![1, 1]));
    }

    #[test]
    fn factorials() {
        assert_eq!(Monomial::new(vec![2, 3]).factorial(), BigInt::from(12));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
    }
}
