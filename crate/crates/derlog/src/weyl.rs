//! The Weyl algebra of linear differential operators with polynomial
//! coefficients, in normal form (all coordinate factors left of all
//! partials), together with its action on polynomials and on meromorphic
//! elements g/f^k.

use crate::polyring::{Monomial, Poly, TermOrder};
use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A normal-form element Σ c_{αβ} x^α ∂^β of the Weyl algebra in n
/// variables. Terms are keyed by the concatenated exponent vector
/// (α | β) of length 2n; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOp {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Principal symbols live in the commutative polynomial ring in 2n
/// variables (x_1..x_n, ξ_1..ξ_n), with the same exponent layout as the
/// operators they come from.
pub type SymbolPoly = Poly;

impl WeylOp {
    pub fn zero(nvars: usize) -> Self {
        WeylOp { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        WeylOp::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut op = WeylOp::zero(nvars);
        if !c.is_zero() {
            op.terms.insert(Monomial::unit(2 * nvars), c);
        }
        op
    }

    /// The coordinate operator x_i.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut op = WeylOp::zero(nvars);
        op.terms.insert(Monomial::var(2 * nvars, i), BigRational::one());
        op
    }

    /// The partial derivative operator ∂_i.
    pub fn partial(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut op = WeylOp::zero(nvars);
        op.terms.insert(Monomial::var(2 * nvars, nvars + i), BigRational::one());
        op
    }

    /// Embeds a polynomial as an order-zero operator.
    pub fn from_poly(p: &Poly) -> Self {
        let nvars = p.nvars();
        let mut op = WeylOp::zero(nvars);
        for (m, c) in p.terms() {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat(0).take(nvars));
            op.terms.insert(Monomial(e), c.clone());
        }
        op
    }

    /// The vector field Σ coeffs[i]·∂_i.
    pub fn vector_field(coeffs: &[Poly]) -> Self {
        let nvars = coeffs.len();
        let mut op = WeylOp::zero(nvars);
        for (i, p) in coeffs.iter().enumerate() {
            assert_eq!(p.nvars(), nvars);
            for (m, c) in p.terms() {
                let mut e = m.0.clone();
                e.extend(std::iter::repeat(0).take(nvars));
                e[nvars + i] = 1;
                op.add_term(Monomial(e), c.clone());
            }
        }
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.nvars(), 2 * self.nvars);
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

    /// Order of the operator: max |β| over stored terms. None for 0.
    pub fn order(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.0[self.nvars..].iter().sum::<u32>())
            .max()
    }

    pub fn scale(&self, c: &BigRational) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero(self.nvars);
        }
        WeylOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Normal-form product of the single term c·x^α∂^β with `rhs`,
    /// expanded by the closed Leibniz formula
    /// ∂^β x^γ = Σ_k (β choose k)(γ)_k x^{γ-k} ∂^{β-k}.
    fn term_mul_right(&self, c: &BigRational, alpha: &[u32], beta: &[u32]) -> WeylOp {
        let n = self.nvars;
        let mut out = WeylOp::zero(n);
        for (m, rc) in &self.terms {
            let (gamma, delta) = m.0.split_at(n);
            let limits: Vec<u32> = beta.iter().zip(gamma).map(|(b, g)| *b.min(g)).collect();
            for_each_multi_index(&limits, &mut |k| {
                let mut coeff = BigInt::one();
                for i in 0..n {
                    coeff *= binomial(beta[i], k[i]) * falling(gamma[i], k[i]);
                }
                if coeff.is_zero() {
                    return;
                }
                let mut e = Vec::with_capacity(2 * n);
                for i in 0..n {
                    e.push(alpha[i] + gamma[i] - k[i]);
                }
                for i in 0..n {
                    e.push(beta[i] + delta[i] - k[i]);
                }
                out.add_term(Monomial(e), c * rc * BigRational::from(coeff));
            });
        }
        out
    }

    /// Left multiplication by c·x^m where m is a 2n exponent vector.
    pub fn left_term_mul(&self, c: &BigRational, m: &Monomial) -> WeylOp {
        debug_assert_eq!(m.nvars(), 2 * self.nvars);
        let (alpha, beta) = m.0.split_at(self.nvars);
        self.term_mul_right(c, alpha, beta)
    }

    /// self -= (c·x^m)·e, in place, expanding the product term by term.
    pub fn sub_left_term_mul(&mut self, c: &BigRational, m: &Monomial, e: &WeylOp) {
        debug_assert_eq!(m.nvars(), 2 * self.nvars);
        debug_assert_eq!(self.nvars, e.nvars);
        let n = self.nvars;
        let (alpha, beta) = m.0.split_at(n);
        for (em, rc) in &e.terms {
            let (gamma, delta) = em.0.split_at(n);
            let limits: Vec<u32> = beta.iter().zip(gamma).map(|(b, g)| *b.min(g)).collect();
            let scale = -(c * rc);
            for_each_multi_index(&limits, &mut |k| {
                let mut coeff = BigInt::one();
                for i in 0..n {
                    coeff *= binomial(beta[i], k[i]) * falling(gamma[i], k[i]);
                }
                if coeff.is_zero() {
                    return;
                }
                let mut exps = Vec::with_capacity(2 * n);
                for i in 0..n {
                    exps.push(alpha[i] + gamma[i] - k[i]);
                }
                for i in 0..n {
                    exps.push(beta[i] + delta[i] - k[i]);
                }
                self.add_term(Monomial(exps), &scale * BigRational::from(coeff));
            });
        }
    }

    /// The formal adjoint: x^t = x, ∂^t = -∂, (PQ)^t = Q^t P^t.
    pub fn transpose(&self) -> WeylOp {
        let n = self.nvars;
        let mut out = WeylOp::zero(n);
        for (m, c) in &self.terms {
            let (alpha, beta) = m.0.split_at(n);
            let db: u32 = beta.iter().sum();
            let sign = if db % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            // (x^α ∂^β)^t = (-1)^{|β|} ∂^β x^α, re-normalized
            let xalpha = {
                let mut e = alpha.to_vec();
                e.extend(std::iter::repeat(0).take(n));
                let mut op = WeylOp::zero(n);
                op.terms.insert(Monomial(e), BigRational::one());
                op
            };
            let zeros = vec![0u32; n];
            let part = xalpha.term_mul_right(&(c * sign), &zeros, beta);
            out = &out + &part;
        }
        out
    }

    /// PQ - QP.
    pub fn bracket(&self, other: &WeylOp) -> WeylOp {
        &(self * other) - &(other * self)
    }

    /// Sum of the terms of maximal ∂-order with ∂ replaced by commuting
    /// symbol variables; a polynomial in 2n variables. Panics on 0.
    pub fn principal_symbol(&self) -> SymbolPoly {
        assert!(!self.is_zero(), "principal symbol of the zero operator");
        let top = self.order().unwrap();
        let n = self.nvars;
        Poly::from_terms(
            2 * n,
            self.terms.iter().filter_map(|(m, c)| {
                let db: u32 = m.0[n..].iter().sum();
                if db == top {
                    Some((m.clone(), c.clone()))
                } else {
                    None
                }
            }),
        )
    }

    /// Standard action on a polynomial: ∂ differentiates, x multiplies.
    pub fn apply(&self, g: &Poly) -> Poly {
        assert_eq!(g.nvars(), self.nvars, "ring context mismatch");
        let n = self.nvars;
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let (alpha, beta) = m.0.split_at(n);
            let mut part = g.clone();
            for (i, &b) in beta.iter().enumerate() {
                for _ in 0..b {
                    part = part.partial_derivative(i);
                    if part.is_zero() {
                        break;
                    }
                }
            }
            if part.is_zero() {
                continue;
            }
            out = &out + &part.term_mul(c, &Monomial(alpha.to_vec()));
        }
        out
    }

    /// Exact action on g/f^k with the representation re-reduced.
    pub fn apply_mero(&self, m: &MeroElement) -> MeroElement {
        assert_eq!(m.base.nvars(), self.nvars, "ring context mismatch");
        let n = self.nvars;
        let mut out = MeroElement::zero(m.base.clone());
        for (mono, c) in &self.terms {
            let (alpha, beta) = mono.0.split_at(n);
            let mut part = m.clone();
            for (i, &b) in beta.iter().enumerate() {
                for _ in 0..b {
                    part = part.partial_derivative(i);
                }
            }
            part.numerator = part.numerator.term_mul(c, &Monomial(alpha.to_vec()));
            part.reduce();
            out = &out + &part;
        }
        out
    }

    /// Applies the operator and truncates: terms of total degree >= k are
    /// discarded. For order-one operators the result mod m^k only depends
    /// on the degree <= k part of g.
    pub fn jet_apply(&self, g: &Poly, k: u32) -> Poly {
        self.apply(g).truncate_degree(k)
    }

    /// Splits off the order-zero part. Returns (vector-field coefficients,
    /// constant-order part) when the operator has order <= 1, None
    /// otherwise.
    pub fn as_first_order(&self) -> Option<(Vec<Poly>, Poly)> {
        let n = self.nvars;
        let mut coeffs = vec![Poly::zero(n); n];
        let mut order0 = Poly::zero(n);
        for (m, c) in &self.terms {
            let (alpha, beta) = m.0.split_at(n);
            let db: u32 = beta.iter().sum();
            match db {
                0 => order0.add_term(Monomial(alpha.to_vec()), c.clone()),
                1 => {
                    let i = beta.iter().position(|&b| b == 1).unwrap();
                    coeffs[i].add_term(Monomial(alpha.to_vec()), c.clone());
                }
                _ => return None,
            }
        }
        Some((coeffs, order0))
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

fn for_each_multi_index(limits: &[u32], f: &mut impl FnMut(&[u32])) {
    let mut idx = vec![0u32; limits.len()];
    loop {
        f(&idx);
        let mut pos = 0;
        loop {
            if pos == limits.len() {
                return;
            }
            if idx[pos] < limits[pos] {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.nvars, rhs.nvars, "ring context mismatch");
        let n = self.nvars;
        let mut out = WeylOp::zero(n);
        for (m, c) in &self.terms {
            let (alpha, beta) = m.0.split_at(n);
            out = &out + &rhs.term_mul_right(c, alpha, beta);
        }
        out
    }
}

impl std::fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.nvars;
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (a, b) = m.0.split_at(n);
            write!(f, "{}·x{:?}d{:?}", c, a, b)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WeylRepr {
    nvars: usize,
    terms: Vec<(Vec<u32>, Vec<u32>, String)>,
}

impl Serialize for WeylOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.nvars;
        let repr = WeylRepr {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0[..n].to_vec(), m.0[n..].to_vec(), c.to_string()))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = WeylRepr::deserialize(d)?;
        let mut op = WeylOp::zero(repr.nvars);
        for (a, b, c) in repr.terms {
            if a.len() != repr.nvars || b.len() != repr.nvars {
                return Err(serde::de::Error::custom("exponent arity mismatch"));
            }
            let c: BigRational = c
                .parse()
                .map_err(|_| serde::de::Error::custom("malformed rational coefficient"))?;
            let mut e = a;
            e.extend(b);
            op.add_term(Monomial(e), c);
        }
        Ok(op)
    }
}

/// An element g/f^k of the localization along a fixed divisor f. The
/// representation is kept reduced: when k > 0, f does not divide g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeroElement {
    numerator: Poly,
    pole: u32,
    base: Poly,
}

impl MeroElement {
    pub fn new(numerator: Poly, pole: u32, base: Poly) -> Self {
        assert!(!base.is_zero(), "zero pole base");
        assert_eq!(numerator.nvars(), base.nvars());
        let mut m = MeroElement { numerator, pole, base };
        m.reduce();
        m
    }

    pub fn zero(base: Poly) -> Self {
        let n = base.nvars();
        MeroElement { numerator: Poly::zero(n), pole: 0, base }
    }

    /// 1/f^k.
    pub fn reciprocal_power(base: Poly, k: u32) -> Self {
        let n = base.nvars();
        MeroElement::new(Poly::one(n), k, base)
    }

    pub fn from_poly(p: Poly, base: Poly) -> Self {
        MeroElement::new(p, 0, base)
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn pole_order(&self) -> u32 {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.pole == 0 {
            Some(&self.numerator)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.pole = 0;
            return;
        }
        while self.pole > 0 {
            match self.numerator.exact_divide(&self.base) {
                Some(q) => {
                    self.numerator = q;
                    self.pole -= 1;
                }
                None => break,
            }
        }
    }

    /// d/dx_i of g/f^k, exactly.
    pub fn partial_derivative(&self, var: usize) -> MeroElement {
        let dg = self.numerator.partial_derivative(var);
        if self.pole == 0 {
            return MeroElement::new(dg, 0, self.base.clone());
        }
        let df = self.base.partial_derivative(var);
        let k = BigRational::from(BigInt::from(self.pole));
        // (g' f - k g f') / f^{k+1}
        let num = &(&dg * &self.base) - &(&self.numerator * &df).scale(&k);
        MeroElement::new(num, self.pole + 1, self.base.clone())
    }
}

impl Add for &MeroElement {
    type Output = MeroElement;
    fn add(self, rhs: &MeroElement) -> MeroElement {
        assert_eq!(self.base, rhs.base, "mixed pole bases are unsupported");
        let k = self.pole.max(rhs.pole);
        let lift = |m: &MeroElement| -> Poly {
            let mut p = m.numerator.clone();
            for _ in m.pole..k {
                p = &p * &m.base;
            }
            p
        };
        MeroElement::new(&lift(self) + &lift(rhs), k, self.base.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::{int, rat};

    fn x() -> WeylOp {
        WeylOp::coordinate(2, 0)
    }
    fn dx() -> WeylOp {
        WeylOp::partial(2, 0)
    }
    fn dy() -> WeylOp {
        WeylOp::partial(2, 1)
    }
    fn y() -> WeylOp {
        WeylOp::coordinate(2, 1)
    }

    #[test]
    fn canonical_commutation() {
        // ∂x · x = x ∂x + 1
        let lhs = &dx() * &x();
        let rhs = &(&x() * &dx()) + &WeylOp::one(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_square() {
        // (x∂x)(x∂x) = x^2 ∂x^2 + x ∂x
        let e = &x() * &dx();
        let sq = &e * &e;
        let expect = &(&(&x() * &x()) * &(&dx() * &dx())) + &e;
        assert_eq!(sq, expect);
    }

    #[test]
    fn unit_is_neutral() {
        let p = &(&x() * &dy()) + &WeylOp::constant(2, rat(3, 2));
        assert_eq!(&p * &WeylOp::one(2), p);
        assert_eq!(&WeylOp::one(2) * &p, p);
    }

    #[test]
    fn transpose_rules() {
        // (∂x)^t = -∂x
        assert_eq!(dx().transpose(), -&dx());
        // (x ∂x)^t = -x ∂x - 1
        let e = &x() * &dx();
        assert_eq!(e.transpose(), &(-&e) - &WeylOp::one(2));
        // (x∂x + y∂y - 2)^t = -x∂x - y∂y - 4
        let euler = &(&x() * &dx()) + &(&y() * &dy());
        let p = &euler - &WeylOp::constant(2, int(2));
        let expect = &(-&euler) - &WeylOp::constant(2, int(4));
        assert_eq!(p.transpose(), expect);
    }

    #[test]
    fn bracket_basics() {
        assert_eq!(dx().bracket(&x()), WeylOp::one(2));
        let p = &(&x() * &dy()) + &dx();
        assert!(p.bracket(&p).is_zero());
    }

    #[test]
    fn symbol_drops_lower_order() {
        // σ(∂x² + x³) = ξ²
        let p = &(&dx() * &dx()) + &WeylOp::from_poly(&Poly::var(2, 0).pow(3));
        let sym = p.principal_symbol();
        assert_eq!(sym, Poly::from_terms(4, [(Monomial(vec![0, 0, 2, 0]), int(1))]));
        // σ(x∂x + y∂y) = xξ + yη
        let e = &(&x() * &dx()) + &(&y() * &dy());
        let expect = Poly::from_terms(
            4,
            [
                (Monomial(vec![1, 0, 1, 0]), int(1)),
                (Monomial(vec![0, 1, 0, 1]), int(1)),
            ],
        );
        assert_eq!(e.principal_symbol(), expect);
    }

    #[test]
    fn apply_examples() {
        let px = Poly::var(2, 0);
        // (x∂x)(x^3) = 3x^3
        let e = &x() * &dx();
        assert_eq!(e.apply(&px.pow(3)), px.pow(3).scale(&int(3)));
        // (∂x ∂y)(xy) = 1
        let p = &dx() * &dy();
        let xy = &px * &Poly::var(2, 1);
        assert_eq!(p.apply(&xy), Poly::one(2));
    }

    #[test]
    fn mero_quotient_rule() {
        let fx = Poly::var(2, 0);
        let inv_x = MeroElement::reciprocal_power(fx.clone(), 1);
        // ∂x (1/x) = -1/x^2
        let d = dx().apply_mero(&inv_x);
        assert_eq!(d, MeroElement::new(Poly::constant(2, int(-1)), 2, fx.clone()));
        // (x ∂x + 1)(1/x) = 0
        let op = &(&x() * &dx()) + &WeylOp::one(2);
        assert!(op.apply_mero(&inv_x).is_zero());
    }

    #[test]
    fn mero_agrees_with_poly_action() {
        let f = &Poly::var(2, 0) - &Poly::var(2, 1).pow(3);
        let g = &Poly::var(2, 0) * &Poly::var(2, 1);
        let op = &(&x() * &dx()) + &(&dy() * &y());
        let m = MeroElement::from_poly(g.clone(), f.clone());
        let applied = op.apply_mero(&m);
        assert_eq!(applied.as_poly(), Some(&op.apply(&g)));
    }

    #[test]
    fn jet_truncation() {
        let px = Poly::var(2, 0);
        // jet(∂x, x^2, 2) = 2x
        assert_eq!(dx().jet_apply(&px.pow(2), 2), px.scale(&int(2)));
        // jet(x∂x, x^3 + x^5, 4) = 3x^3
        let e = &x() * &dx();
        let g = &px.pow(3) + &px.pow(5);
        assert_eq!(e.jet_apply(&g, 4), px.pow(3).scale(&int(3)));
        // jet(1, g, k) = g mod m^k
        assert_eq!(WeylOp::one(2).jet_apply(&g, 4), px.pow(3));
    }

    #[test]
    fn serde_roundtrip() {
        let p = &(&x() * &dx()) + &WeylOp::constant(2, rat(-5, 3));
        let s = serde_json::to_string(&p).unwrap();
        let q: WeylOp = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
