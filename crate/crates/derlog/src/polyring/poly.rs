use super::monomial::Monomial;
use super::order::TermOrder;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact multivariate polynomial over the rationals.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so two polynomials are equal iff their term maps are equal.
/// The number of variables is fixed at construction and checked on every
/// binary operation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), BigRational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::unit(self.nvars))
    }

    /// Some(c) iff the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit(self.nvars)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// self -= (c·x^m)·e, in place.
    pub fn sub_term_mul(&mut self, c: &BigRational, m: &Monomial, e: &Poly) {
        debug_assert_eq!(self.nvars, e.nvars);
        for (em, ec) in &e.terms {
            self.add_term(em.mul(m), -(ec * c));
        }
    }

    /// Multiplies by a single term c * x^m.
    pub fn term_mul(&self, c: &BigRational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    /// Divides every coefficient by the leading one under `order`.
    pub fn monic(&self, order: &TermOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The formal partial derivative with respect to the given variable.
    pub fn partial_derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index {var} out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] = e - 1;
            out.add_term(dm, c * BigRational::from(BigInt::from(e)));
        }
        out
    }

    /// Exact quotient `self / q`, or None when q does not divide exactly.
    pub fn exact_divide(&self, q: &Poly) -> Option<Poly> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, q.nvars);
        let order = TermOrder::grevlex();
        let (qlm, qlc) = q.leading_term(&order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rlm, rlc)) = rem.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) {
            if !qlm.divides(&rlm) {
                return None;
            }
            let m = qlm.quotient(&rlm);
            let c = rlc / &qlc;
            quot.add_term(m.clone(), c.clone());
            rem = &rem - &q.term_mul(&c, &m);
        }
        Some(quot)
    }

    /// Evaluates at the origin (all variables zero).
    pub fn eval_at_origin(&self) -> BigRational {
        self.constant_term()
    }

    /// Drops every term of total degree >= k.
    pub fn truncate_degree(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Clears denominators and divides by the integer content, keeping the
    /// sign of the leading coefficient under grevlex. The result generates
    /// the same ideal and has coprime integer coefficients.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let n = (c * BigRational::from(denom_lcm.clone())).to_integer();
            content = num::integer::gcd(content, n);
        }
        let factor = BigRational::new(denom_lcm, content);
        let scaled = self.scale(&factor);
        let order = TermOrder::grevlex();
        let lc = scaled.leading_term(&order).map(|(_, c)| c.clone()).unwrap();
        if lc.is_negative() {
            scaled.scale(&-BigRational::one())
        } else {
            scaled
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·{:?}", c, m)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0.clone(), c.to_string()))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = Poly::zero(repr.nvars);
        for (e, c) in repr.terms {
            let c: BigRational = c
                .parse()
                .map_err(|_| serde::de::Error::custom("malformed rational coefficient"))?;
            if e.len() != repr.nvars {
                return Err(serde::de::Error::custom("exponent arity mismatch"));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn partial_derivative_power_rule() {
        let (x, y) = xy();
        // d/dx (x^2 y) = 2xy
        let p = &x.pow(2) * &y;
        assert_eq!(p.partial_derivative(0), (&x * &y).scale(&int(2)));
        // d/dy (x) = 0
        assert!(x.partial_derivative(1).is_zero());
    }

    #[test]
    fn partial_derivative_termwise() {
        let (x, y) = xy();
        // d/dx (x^4 + y^5 + x y^4) = 4x^3 + y^4
        let p = &(&x.pow(4) + &y.pow(5)) + &(&x * &y.pow(4));
        let expect = &x.pow(3).scale(&int(4)) + &y.pow(4);
        assert_eq!(p.partial_derivative(0), expect);
    }

    #[test]
    fn exact_divide_examples() {
        let (x, y) = xy();
        let f = &x.pow(2) - &y.pow(3);
        let six_f = f.scale(&int(6));
        assert_eq!(six_f.exact_divide(&f), Some(Poly::constant(2, int(6))));
        assert_eq!(f.exact_divide(&Poly::one(2)), Some(f.clone()));
        assert_eq!(x.exact_divide(&y), None);
    }

    #[test]
    fn exact_divide_product_roundtrip() {
        let (x, y) = xy();
        let p = &(&x + &y) * &(&x.pow(2) - &y);
        let q = p.exact_divide(&(&x + &y)).unwrap();
        assert_eq!(q, &x.pow(2) - &y);
    }

    #[test]
    fn leading_term_under_orders() {
        let (x, y) = xy();
        let p = &x + &y.pow(2);
        let (m, _) = p.leading_term(&TermOrder::lex()).unwrap();
        assert_eq!(m, &Monomial(vec![1, 0]));
        let (m, _) = p.leading_term(&TermOrder::grevlex()).unwrap();
        assert_eq!(m, &Monomial(vec![0, 2]));
    }

    #[test]
    fn primitive_part_normalizes() {
        let (x, y) = xy();
        let p = &x.scale(&rat(2, 3)) + &y.scale(&rat(4, 3));
        let pp = p.primitive_part();
        assert_eq!(pp, &x + &y.scale(&int(2)));
    }

    #[test]
    fn serde_roundtrip() {
        let (x, y) = xy();
        let p = &(&x * &y).scale(&rat(-7, 2)) + &Poly::one(2);
        let s = serde_json::to_string(&p).unwrap();
        let q: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
