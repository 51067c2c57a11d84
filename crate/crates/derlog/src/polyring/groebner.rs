//! Commutative Gröbner bases, syzygies, membership, intersection, quotient
//! and the gcd/squarefreeness tests built on them.

use super::monomial::Monomial;
use super::order::{ModuleOrder, TermOrder};
use super::poly::Poly;
use crate::gb::{self, CommutativeRing};
use num::BigRational;
use serde::{Deserialize, Serialize};

/// A fixed-length vector of polynomials sharing one ring context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyVector(pub Vec<Poly>);

impl PolyVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Poly> {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for PolyVector {
    type Output = Poly;
    fn index(&self, i: usize) -> &Poly {
        &self.0[i]
    }
}

fn ring_of(polys: &[Poly]) -> CommutativeRing {
    CommutativeRing { nvars: polys.first().map(|p| p.nvars()).unwrap_or(0) }
}

/// Normal form of `p` against `basis`: no term of the result is divisible
/// by any basis leading monomial. Deterministic given order and sequence.
pub fn poly_reduce(p: &Poly, basis: &[Poly], order: &TermOrder) -> Poly {
    let alg = CommutativeRing { nvars: p.nvars() };
    let morder = ModuleOrder::pot(order.clone());
    let bvecs: Vec<Vec<Poly>> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| vec![b.clone()])
        .collect();
    gb::normal_form(&alg, &vec![p.clone()], &bvecs, &morder)
        .pop()
        .unwrap()
}

/// Reduced Gröbner basis with monic leading coefficients, sorted descending
/// by leading monomial: unique for (ideal, order). Zero generators are
/// dropped.
pub fn buchberger_commutative(gens: &[Poly], order: &TermOrder) -> Vec<Poly> {
    let alg = ring_of(gens);
    let morder = ModuleOrder::pot(order.clone());
    let gvecs: Vec<Vec<Poly>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| vec![g.clone()])
        .collect();
    gb::groebner(&alg, &gvecs, &morder)
        .into_iter()
        .map(|mut v| v.pop().unwrap())
        .collect()
}

/// True iff `p` lies in the ideal generated by `gens` (grevlex basis,
/// normal form zero).
pub fn ideal_member(p: &Poly, gens: &[Poly]) -> bool {
    let order = TermOrder::grevlex();
    let basis = buchberger_commutative(gens, &order);
    poly_reduce(p, &basis, &order).is_zero()
}

/// Membership against an already computed Gröbner basis.
pub fn ideal_member_gb(p: &Poly, basis: &[Poly], order: &TermOrder) -> bool {
    poly_reduce(p, basis, order).is_zero()
}

fn extend_ring(p: &Poly, extra: usize) -> Poly {
    let n = p.nvars();
    Poly::from_terms(
        n + extra,
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat(0).take(extra));
            (Monomial(e), c.clone())
        }),
    )
}

fn restrict_ring(p: &Poly, n: usize) -> Poly {
    Poly::from_terms(
        n,
        p.terms().map(|(m, c)| {
            debug_assert!(m.0[n..].iter().all(|&e| e == 0));
            (Monomial(m.0[..n].to_vec()), c.clone())
        }),
    )
}

/// Generators of the intersection of two ideals, by eliminating a tag
/// variable t from t·A + (1-t)·B.
pub fn ideal_intersection(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = ring_of(a).nvars.max(ring_of(b).nvars);
    let t = Poly::var(n + 1, n);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let mut gens: Vec<Poly> = Vec::new();
    for p in a {
        gens.push(&t * &extend_ring(p, 1));
    }
    for p in b {
        gens.push(&one_minus_t * &extend_ring(p, 1));
    }
    let mut weights = vec![0u64; n + 1];
    weights[n] = 1;
    let order = TermOrder::weighted_elimination(weights);
    buchberger_commutative(&gens, &order)
        .into_iter()
        .filter(|g| g.terms().all(|(m, _)| m.0[n] == 0))
        .map(|g| restrict_ring(&g, n))
        .collect()
}

/// Generators of the ideal quotient (I : g) = { p : p·g ∈ I }, via the
/// tag-variable intersection (I : g) = (I ∩ ⟨g⟩)/g.
pub fn ideal_quotient(gens: &[Poly], g: &Poly) -> Vec<Poly> {
    assert!(!g.is_zero(), "quotient by the zero polynomial");
    if gens.iter().all(|p| p.is_zero()) {
        return Vec::new();
    }
    let inter = ideal_intersection(gens, std::slice::from_ref(g));
    inter
        .iter()
        .map(|p| {
            p.exact_divide(g)
                .expect("intersection with a principal ideal divides its generator")
        })
        .collect()
}

/// Gcd through ⟨p⟩ ∩ ⟨q⟩ = ⟨lcm⟩ and gcd = pq/lcm, normalized to integer
/// coefficients with positive leading sign.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.primitive_part();
    }
    if q.is_zero() {
        return p.primitive_part();
    }
    let inter = ideal_intersection(std::slice::from_ref(p), std::slice::from_ref(q));
    assert_eq!(inter.len(), 1, "intersection of principal ideals is principal");
    let lcm = &inter[0];
    let prod = p * q;
    prod.exact_divide(lcm)
        .expect("lcm divides the product")
        .primitive_part()
}

/// A polynomial is squarefree iff it has no common factor with all of its
/// partial derivatives (characteristic zero).
pub fn is_squarefree(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.partial_derivative(i);
        g = poly_gcd(&g, &d);
        if g.as_constant().is_some() {
            return true;
        }
    }
    g.as_constant().is_some()
}

/// Whether each entry is a non-zerodivisor modulo its predecessors,
/// decided with ideal quotients. On failure, returns a witness: an
/// element of (⟨p_1..p_{i-1}⟩ : p_i) outside ⟨p_1..p_{i-1}⟩.
pub fn regular_sequence_check(seq: &[Poly]) -> Result<(), Poly> {
    let order = TermOrder::grevlex();
    for (i, p) in seq.iter().enumerate() {
        if p.is_zero() {
            return Err(Poly::zero(p.nvars()));
        }
        if i == 0 {
            continue;
        }
        let prev = &seq[..i];
        let basis = buchberger_commutative(prev, &order);
        for q in ideal_quotient(prev, p) {
            if !ideal_member_gb(&q, &basis, &order) {
                return Err(q);
            }
        }
    }
    Ok(())
}

/// Generating set of the first syzygy module of `gens`, through the tagged
/// Gröbner computation. Every returned vector satisfies
/// Σ v_i · gens_i = 0, which is re-checked by expansion before returning.
pub fn syzygy_module(gens: &[Poly], order: &TermOrder) -> Vec<PolyVector> {
    let alg = ring_of(gens);
    let gvecs: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let ext = gb::extended_groebner(&alg, &gvecs, order);
    for syz in &ext.syzygies {
        let expanded = gb::expand_combination(&alg, syz, &gvecs);
        assert!(
            expanded.iter().all(|p| p.is_zero()),
            "syzygy fails its defining relation"
        );
    }
    ext.syzygies.into_iter().map(PolyVector).collect()
}

/// Reduced Gröbner basis of a submodule of a free module.
pub fn module_groebner(vecs: &[PolyVector], morder: &ModuleOrder) -> Vec<PolyVector> {
    let nvars = vecs
        .iter()
        .flat_map(|v| v.iter())
        .map(|p| p.nvars())
        .next()
        .unwrap_or(0);
    let alg = CommutativeRing { nvars };
    let gvecs: Vec<Vec<Poly>> = vecs.iter().map(|v| v.0.clone()).collect();
    gb::groebner(&alg, &gvecs, morder)
        .into_iter()
        .map(PolyVector)
        .collect()
}

/// Membership of a vector in the submodule spanned by a module Gröbner
/// basis.
pub fn module_member(v: &PolyVector, basis: &[PolyVector], morder: &ModuleOrder) -> bool {
    let nvars = v.iter().map(|p| p.nvars()).next().unwrap_or(0);
    let alg = CommutativeRing { nvars };
    let bvecs: Vec<Vec<Poly>> = basis.iter().map(|b| b.0.clone()).collect();
    let nf = gb::normal_form(&alg, &v.0, &bvecs, morder);
    nf.iter().all(|p| p.is_zero())
}

/// Equality of the modules generated by two sets of vectors.
pub fn module_equal(a: &[PolyVector], b: &[PolyVector], morder: &ModuleOrder) -> bool {
    let gb_a = module_groebner(a, morder);
    let gb_b = module_groebner(b, morder);
    gb_a == gb_b
}

#[allow(dead_code)]
pub fn scale_vector(v: &PolyVector, c: &BigRational) -> PolyVector {
    PolyVector(v.iter().map(|p| p.scale(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::int;

    fn vars2() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn reduce_one_step() {
        let (x, y) = vars2();
        // x^2 y mod {x^2 - y} -> y^2 under grlex
        let p = &x.pow(2) * &y;
        let b = &x.pow(2) - &y;
        let r = poly_reduce(&p, &[b], &TermOrder::grlex());
        assert_eq!(r, y.pow(2));
    }

    #[test]
    fn reduce_trivial_cases() {
        let (x, y) = vars2();
        let b = &x.pow(2) - &y;
        assert!(poly_reduce(&Poly::zero(2), &[b.clone()], &TermOrder::grevlex()).is_zero());
        assert!(poly_reduce(&b, &[b.clone()], &TermOrder::grevlex()).is_zero());
        let q = &x * &y;
        assert_eq!(poly_reduce(&q, &[b], &TermOrder::grevlex()), q);
    }

    #[test]
    fn cusp_jacobian_basis() {
        let (x, y) = vars2();
        // GB({2x, -3y^2, x^2 - y^3}) = {x, y^2}
        let gens = [x.scale(&int(2)), y.pow(2).scale(&int(-3)), &x.pow(2) - &y.pow(3)];
        let basis = buchberger_commutative(&gens, &TermOrder::grevlex());
        assert_eq!(basis, vec![y.pow(2), x.clone()]);
    }

    #[test]
    fn single_generator_bases() {
        let (x, y) = vars2();
        assert_eq!(
            buchberger_commutative(&[x.clone()], &TermOrder::grevlex()),
            vec![x.clone()]
        );
        assert_eq!(
            buchberger_commutative(&[x.clone(), y.clone()], &TermOrder::grevlex()),
            vec![x.clone(), y]
        );
    }

    #[test]
    fn membership_basics() {
        let (x, y) = vars2();
        assert!(ideal_member(&Poly::zero(2), &[x.clone()]));
        assert!(ideal_member(&(&x * &y), &[x.clone()]));
        assert!(!ideal_member(&y, &[x.clone()]));
    }

    #[test]
    fn quotient_examples() {
        let (x, y) = vars2();
        // (⟨x⟩ : y) = ⟨x⟩
        let q = ideal_quotient(&[x.clone()], &y);
        let order = TermOrder::grevlex();
        assert_eq!(buchberger_commutative(&q, &order), vec![x.clone()]);
        // (⟨xy⟩ : x) = ⟨y⟩
        let q = ideal_quotient(&[&x * &y], &x);
        assert_eq!(buchberger_commutative(&q, &order), vec![y.clone()]);
    }

    #[test]
    fn gcd_and_squarefree() {
        let (x, y) = vars2();
        assert_eq!(poly_gcd(&(&x * &y), &x), x);
        let coprime = poly_gcd(&(&x.pow(2) - &y.pow(3)), &x.scale(&int(2)));
        assert!(coprime.as_constant().is_some());
        assert!(is_squarefree(&(&x.pow(2) - &y.pow(3))));
        assert!(!is_squarefree(&(&x.pow(2) * &y)));
        let lines = &(&x * &y) * &(&x + &y);
        assert!(is_squarefree(&lines));
    }

    #[test]
    fn syzygies_of_node_partials() {
        let (x, y) = vars2();
        // gens (xy, y, x): (-1, x, 0) is a syzygy
        let gens = [&x * &y, y.clone(), x.clone()];
        let syz = syzygy_module(&gens, &TermOrder::grevlex());
        assert!(!syz.is_empty());
        let morder = ModuleOrder::pot(TermOrder::grevlex());
        let basis = module_groebner(&syz, &morder);
        let target = PolyVector(vec![Poly::constant(2, int(-1)), x.clone(), Poly::zero(2)]);
        assert!(module_member(&target, &basis, &morder));
    }

    #[test]
    fn koszul_vector_is_syzygy() {
        let (x, y) = vars2();
        let f = &(&x.pow(2) * &y) + &y.pow(4);
        let fx = f.partial_derivative(0);
        let fy = f.partial_derivative(1);
        let gens = [f, fx.clone(), fy.clone()];
        let syz = syzygy_module(&gens, &TermOrder::grevlex());
        let morder = ModuleOrder::pot(TermOrder::grevlex());
        let basis = module_groebner(&syz, &morder);
        let koszul = PolyVector(vec![Poly::zero(2), fy, -&fx]);
        assert!(module_member(&koszul, &basis, &morder));
    }

    #[test]
    fn regular_sequence_decision() {
        let (x, y) = vars2();
        assert!(regular_sequence_check(&[x.clone(), y.clone()]).is_ok());
        // x, xy is not regular: y·x ∈ ⟨x⟩ but y ∉ ⟨x⟩... the quotient
        // (⟨x⟩ : xy) = ⟨1⟩ escapes ⟨x⟩.
        assert!(regular_sequence_check(&[x.clone(), &x * &y]).is_err());
    }
}
