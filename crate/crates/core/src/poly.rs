//! Sparse polynomials with exact `i128` coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically (total degree first, then exponents left to right), so
//! iteration order is the canonical serialization order. Every arithmetic
//! step is checked; overflow yields [`Error::IntegerOverflow`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub type Coefficient = i128;

/// Exponent vector of a monomial.
pub trait Exponents: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn as_slice(&self) -> &[u32];
    fn from_slice(exps: &[u32]) -> Self;
    fn variable_name(index: usize) -> String;
    /// Fixed arity, or `None` when it is chosen per polynomial.
    fn fixed_arity() -> Option<usize>;

    fn degree(&self) -> u32 {
        self.as_slice().iter().sum()
    }
}

impl Exponents for [u32; 1] {
    fn as_slice(&self) -> &[u32] {
        self
    }
    fn from_slice(exps: &[u32]) -> Self {
        [exps[0]]
    }
    fn variable_name(_: usize) -> String {
        "u".into()
    }
    fn fixed_arity() -> Option<usize> {
        Some(1)
    }
}

impl Exponents for [u32; 2] {
    fn as_slice(&self) -> &[u32] {
        self
    }
    fn from_slice(exps: &[u32]) -> Self {
        [exps[0], exps[1]]
    }
    fn variable_name(index: usize) -> String {
        ["u", "c"][index].into()
    }
    fn fixed_arity() -> Option<usize> {
        Some(2)
    }
}

impl Exponents for Vec<u32> {
    fn as_slice(&self) -> &[u32] {
        self
    }
    fn from_slice(exps: &[u32]) -> Self {
        exps.to_vec()
    }
    fn variable_name(index: usize) -> String {
        format!("x{}", index + 1)
    }
    fn fixed_arity() -> Option<usize> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct GrLex<E>(E);

impl<E: Exponents> Ord for GrLex<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .degree()
            .cmp(&other.0.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl<E: Exponents> PartialOrd for GrLex<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E: Exponents> {
    nvars: usize,
    terms: BTreeMap<GrLex<E>, Coefficient>,
}

/// Polynomial in the leader variable `u`.
pub type UnivariatePolynomial = Polynomial<[u32; 1]>;
/// Polynomial in `u` (leaders) and `c` (degree of vertex 1).
pub type BivariatePolynomial = Polynomial<[u32; 2]>;
/// Polynomial in `x1 .. xn`.
pub type MultivariatePolynomial = Polynomial<Vec<u32>>;

impl<E: Exponents> Polynomial<E> {
    pub fn zero(nvars: usize) -> Self {
        if let Some(k) = E::fixed_arity() {
            assert_eq!(k, nvars, "arity is fixed at {k}");
        }
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: Coefficient) -> Self {
        Self::monomial(E::from_slice(&vec![0; nvars]), value)
    }

    pub fn monomial(exps: E, coefficient: Coefficient) -> Self {
        let mut p = Self::zero(exps.as_slice().len());
        if coefficient != 0 {
            p.terms.insert(GrLex(exps), coefficient);
        }
        p
    }

    /// The variable with the given 0-based index.
    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(E::from_slice(&exps), 1)
    }

    /// Sums like terms; exponent vectors must all have length `nvars`.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, Coefficient)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, coefficient) in terms {
            let len = exps.as_slice().len();
            if len != nvars {
                return Err(Error::VariableMismatch(nvars, len));
            }
            p.add_term(exps, coefficient)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: E, coefficient: Coefficient) -> Result<()> {
        if coefficient == 0 {
            return Ok(());
        }
        let key = GrLex(exps);
        let sum = match self.terms.get(&key) {
            Some(&c) => c.checked_add(coefficient).ok_or(Error::IntegerOverflow)?,
            None => coefficient,
        };
        if sum == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &E) -> Coefficient {
        self.terms.get(&GrLex(exps.clone())).copied().unwrap_or(0)
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&E, Coefficient)> {
        self.terms.iter().map(|(k, &c)| (&k.0, c))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (exps, c) in other.terms() {
            out.add_term(exps.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, factor: Coefficient) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        if factor == 0 {
            return Ok(out);
        }
        for (k, &c) in &self.terms {
            let scaled = c.checked_mul(factor).ok_or(Error::IntegerOverflow)?;
            out.terms.insert(k.clone(), scaled);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        let mut exps = vec![0u32; self.nvars];
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for (slot, (x, y)) in exps.iter_mut().zip(a.as_slice().iter().zip(b.as_slice())) {
                    *slot = x.checked_add(*y).ok_or(Error::IntegerOverflow)?;
                }
                let c = ca.checked_mul(cb).ok_or(Error::IntegerOverflow)?;
                out.add_term(E::from_slice(&exps), c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        let mut out = Self::constant(self.nvars, 1);
        for _ in 0..exponent {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Coefficient> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, point.len()));
        }
        let mut total: Coefficient = 0;
        for (exps, c) in self.terms() {
            let mut term = c;
            for (&x, &e) in point.iter().zip(exps.as_slice()) {
                let power = x.checked_pow(e).ok_or(Error::IntegerOverflow)?;
                term = term.checked_mul(power).ok_or(Error::IntegerOverflow)?;
            }
            total = total.checked_add(term).ok_or(Error::IntegerOverflow)?;
        }
        Ok(total)
    }

    /// One term per line: the exponents, then the coefficient, all space
    /// separated, in graded-lex order.
    pub fn to_golden(&self) -> String {
        let mut out = String::new();
        for (exps, c) in self.terms() {
            for e in exps.as_slice() {
                out.push_str(&e.to_string());
                out.push(' ');
            }
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_golden(nvars: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != nvars + 1 {
                return Err(Error::Parse(format!(
                    "line {}: expected {} fields, got {}",
                    lineno + 1,
                    nvars + 1,
                    fields.len()
                )));
            }
            let bad = |f: &str| Error::Parse(format!("line {}: bad number {f:?}", lineno + 1));
            let exps = fields[..nvars]
                .iter()
                .map(|f| f.parse::<u32>().map_err(|_| bad(f)))
                .collect::<Result<Vec<u32>>>()?;
            let c = fields[nvars]
                .parse::<Coefficient>()
                .map_err(|_| bad(fields[nvars]))?;
            terms.push((E::from_slice(&exps), c));
        }
        Self::from_terms(nvars, terms)
    }
}

impl BivariatePolynomial {
    pub fn u() -> Self {
        Self::variable(2, 0)
    }
    pub fn c() -> Self {
        Self::variable(2, 1)
    }
    pub fn int(value: Coefficient) -> Self {
        Self::constant(2, value)
    }
}

impl UnivariatePolynomial {
    pub fn u() -> Self {
        Self::variable(1, 0)
    }
    pub fn int(value: Coefficient) -> Self {
        Self::constant(1, value)
    }
}

/// `coef u^a c^b + ...`, every variable written with its exponent; `0` for
/// the zero polynomial.
impl<E: Exponents> fmt::Display for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in exps.as_slice().iter().enumerate() {
                write!(f, " {}^{e}", E::variable_name(v))?;
            }
        }
        Ok(())
    }
}

/// `γ · ∏_{i=1}^{n-1} (i·α + (n-i)·β + γ)`.
pub fn pn<E: Exponents>(
    n: usize,
    alpha: &Polynomial<E>,
    beta: &Polynomial<E>,
    gamma: &Polynomial<E>,
) -> Result<Polynomial<E>> {
    if n == 0 {
        return Err(Error::DomainError("P_n needs n >= 1".into()));
    }
    let mut out = gamma.clone();
    for i in 1..n {
        let factor = alpha
            .scale(i as Coefficient)?
            .add(&beta.scale((n - i) as Coefficient)?)?
            .add(gamma)?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// `u · P_{n-1}(1, u, cu)`, the closed form of the leader/degree sum.
pub fn rhs_main(n: usize) -> Result<BivariatePolynomial> {
    if n < 2 {
        return Err(Error::DomainError(format!(
            "the leader/degree closed form is stated for n >= 2, got {n}"
        )));
    }
    let u = BivariatePolynomial::u();
    let cu = BivariatePolynomial::c().mul(&u)?;
    u.mul(&pn(n - 1, &BivariatePolynomial::int(1), &u, &cu)?)
}

/// `c u^2 ∏_{i=2}^{n-1} ((n-i) + (i-1)u + cu)`, one factor per code entry.
pub fn product_formula(n: usize) -> Result<BivariatePolynomial> {
    if n < 2 {
        return Err(Error::DomainError(format!(
            "the product formula is stated for n >= 2, got {n}"
        )));
    }
    let u = BivariatePolynomial::u();
    let cu = BivariatePolynomial::c().mul(&u)?;
    let mut out = cu.mul(&u)?;
    for i in 2..n {
        let factor = BivariatePolynomial::int((n - i) as Coefficient)
            .add(&u.scale((i - 1) as Coefficient)?)?
            .add(&cu)?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// `x1 (x1 + ... + xn)^(n-2)`.
pub fn rhs_indegree(n: usize) -> Result<MultivariatePolynomial> {
    if n < 2 {
        return Err(Error::DomainError(format!(
            "the indegree closed form is stated for n >= 2, got {n}"
        )));
    }
    let total = (0..n).try_fold(MultivariatePolynomial::zero(n), |acc, i| {
        acc.add(&MultivariatePolynomial::variable(n, i))
    })?;
    MultivariatePolynomial::variable(n, 0).mul(&total.pow((n - 2) as u32)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uc(a: u32, b: u32, coef: Coefficient) -> BivariatePolynomial {
        BivariatePolynomial::monomial([a, b], coef)
    }

    fn sum(parts: &[BivariatePolynomial]) -> BivariatePolynomial {
        parts
            .iter()
            .fold(BivariatePolynomial::zero(2), |acc, p| acc.add(p).unwrap())
    }

    #[test]
    fn arithmetic_basics() {
        let u = BivariatePolynomial::u();
        let c = BivariatePolynomial::c();
        assert_eq!(u.mul(&c).unwrap(), uc(1, 1, 1));
        assert_eq!(u.add(&BivariatePolynomial::zero(2)).unwrap(), u);
        let one_u = BivariatePolynomial::int(1).add(&u).unwrap();
        assert_eq!(
            one_u.mul(&one_u).unwrap(),
            sum(&[uc(0, 0, 1), uc(1, 0, 2), uc(2, 0, 1)])
        );
        assert!(u.sub(&u).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = BivariatePolynomial::int(i128::MAX);
        assert_eq!(
            big.add(&BivariatePolynomial::int(1)),
            Err(Error::IntegerOverflow)
        );
        assert_eq!(big.scale(2), Err(Error::IntegerOverflow));
        assert_eq!(
            big.mul(&BivariatePolynomial::int(2)),
            Err(Error::IntegerOverflow)
        );
    }

    #[test]
    fn arity_mismatch() {
        let a = MultivariatePolynomial::variable(3, 0);
        let b = MultivariatePolynomial::variable(4, 0);
        assert_eq!(a.add(&b), Err(Error::VariableMismatch(3, 4)));
        assert_eq!(a.evaluate(&[1, 2]), Err(Error::VariableMismatch(3, 2)));
    }

    #[test]
    fn pn_examples() {
        let u = BivariatePolynomial::u();
        let c = BivariatePolynomial::c();
        let one = BivariatePolynomial::int(1);
        let cu = c.mul(&u).unwrap();
        assert_eq!(pn(1, &one, &u, &cu).unwrap(), cu);
        let expected = cu.mul(&one.add(&u).unwrap().add(&cu).unwrap()).unwrap();
        assert_eq!(pn(2, &one, &u, &cu).unwrap(), expected);

        let uu = UnivariatePolynomial::u();
        let one1 = UnivariatePolynomial::int(1);
        let got = pn(3, &one1, &UnivariatePolynomial::zero(1), &uu).unwrap();
        // u(1+u)(2+u) = 2u + 3u^2 + u^3
        assert_eq!(got.to_golden(), "1 2\n2 3\n3 1\n");
        assert!(pn(0, &one, &u, &cu).is_err());
    }

    #[test]
    fn pn_at_ones() {
        for n in 1..=9usize {
            let one = UnivariatePolynomial::int(1);
            let value = pn(n, &one, &one, &one).unwrap().evaluate(&[0]).unwrap();
            assert_eq!(value, ((n + 1) as i128).pow(n as u32 - 1));
        }
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(rhs_main(2).unwrap(), uc(2, 1, 1));
        assert_eq!(
            rhs_main(3).unwrap(),
            sum(&[uc(2, 1, 1), uc(3, 1, 1), uc(3, 2, 1)])
        );
        assert_eq!(product_formula(2).unwrap(), uc(2, 1, 1));
        assert_eq!(product_formula(3).unwrap(), rhs_main(3).unwrap());
        assert!(rhs_main(1).is_err());
        assert!(product_formula(1).is_err());
    }

    #[test]
    fn indegree_closed_form() {
        assert_eq!(
            rhs_indegree(2).unwrap(),
            MultivariatePolynomial::monomial(vec![1, 0], 1)
        );
        assert_eq!(
            rhs_indegree(3).unwrap().to_golden(),
            "1 0 1 1\n1 1 0 1\n2 0 0 1\n"
        );
        let four = rhs_indegree(4).unwrap();
        assert_eq!(four.evaluate(&[1, 1, 1, 1]).unwrap(), 16);
        assert!(rhs_indegree(1).is_err());
    }

    #[test]
    fn display_and_golden() {
        let p = rhs_main(3).unwrap();
        assert_eq!(p.to_string(), "1 u^2 c^1 + 1 u^3 c^1 + 1 u^3 c^2");
        assert_eq!(p.to_golden(), "2 1 1\n3 1 1\n3 2 1\n");
        assert_eq!(
            BivariatePolynomial::from_golden(2, &p.to_golden()).unwrap(),
            p
        );
        assert_eq!(BivariatePolynomial::zero(2).to_string(), "0");
        assert!(BivariatePolynomial::from_golden(2, "1 2\n").is_err());
        let neg = UnivariatePolynomial::monomial([3], -4);
        assert_eq!(neg.to_string(), "-4 u^3");
    }
}
