//! Generic Gröbner-basis engine over algebras whose elements are finite
//! rational linear combinations of exponent monomials.
//!
//! The engine is shared by the commutative polynomial ring and by the Weyl
//! algebra: both satisfy lt(PQ) = lt(P)·lt(Q) for every multiplicative
//! well-order (in the Weyl algebra the commutator corrections are strictly
//! componentwise smaller), which is all Buchberger's algorithm needs.
//! Everything works uniformly over free-module vectors; ideals are the
//! one-component case. S-pairs are processed smallest lcm degree first.
//!
//! Syzygies and membership certificates come from one construction: the
//! generators are augmented with tag components `(g_i ; e_i)` under a
//! position-over-term order that eliminates the original block. A reduction
//! that empties the original block leaves the relation it found in the tag
//! block; since the input generators carry identity tags, those recorded
//! rows generate the whole syzygy module, so the tag block never needs
//! S-pairs of its own.

use crate::polyring::{ModuleOrder, Monomial, TermOrder};
use num::{BigRational, One};

pub trait GbAlgebra {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    /// Length of the exponent vectors of this algebra's monomials.
    fn arity(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn term_elem(&self, c: &BigRational, m: &Monomial) -> Self::Elem;
    fn leading_term(&self, e: &Self::Elem, order: &TermOrder) -> Option<(Monomial, BigRational)>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &BigRational, e: &Self::Elem) -> Self::Elem;
    /// Left multiplication by the term c·x^m.
    fn term_mul(&self, c: &BigRational, m: &Monomial, e: &Self::Elem) -> Self::Elem;
    /// target -= (c·x^m)·e, in place.
    fn sub_term_mul_assign(
        &self,
        target: &mut Self::Elem,
        c: &BigRational,
        m: &Monomial,
        e: &Self::Elem,
    );
    /// Full product a·b (left factor a).
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Whether the product is commutative (enables the coprimality
    /// criterion on S-pairs, which is unsound otherwise).
    fn is_commutative(&self) -> bool;
}

/// A free-module vector over the algebra.
pub type ModVec<E> = Vec<E>;

pub fn mv_zero<A: GbAlgebra>(alg: &A, ncomps: usize) -> ModVec<A::Elem> {
    (0..ncomps).map(|_| alg.zero()).collect()
}

pub fn mv_is_zero<A: GbAlgebra>(alg: &A, v: &ModVec<A::Elem>) -> bool {
    v.iter().all(|e| alg.is_zero(e))
}

pub fn mv_scale<A: GbAlgebra>(alg: &A, c: &BigRational, v: &ModVec<A::Elem>) -> ModVec<A::Elem> {
    v.iter().map(|e| alg.scale(c, e)).collect()
}

/// Leading module term (component, monomial, coefficient).
pub fn mv_leading<A: GbAlgebra>(
    alg: &A,
    v: &ModVec<A::Elem>,
    morder: &ModuleOrder,
) -> Option<(usize, Monomial, BigRational)> {
    let mut best: Option<(usize, Monomial, BigRational)> = None;
    for (comp, e) in v.iter().enumerate() {
        if let Some((m, c)) = alg.leading_term(e, &morder.order) {
            let better = match &best {
                None => true,
                Some((bc, bm, _)) => {
                    morder.cmp((comp, &m), (*bc, bm)) == std::cmp::Ordering::Greater
                }
            };
            if better {
                best = Some((comp, m, c));
            }
        }
    }
    best
}

fn mv_monic<A: GbAlgebra>(
    alg: &A,
    v: &ModVec<A::Elem>,
    morder: &ModuleOrder,
) -> ModVec<A::Elem> {
    match mv_leading(alg, v, morder) {
        None => v.clone(),
        Some((_, _, c)) => mv_scale(alg, &c.recip(), v),
    }
}

type Lead = (usize, Monomial, BigRational);

fn basis_leads<A: GbAlgebra>(
    alg: &A,
    basis: &[ModVec<A::Elem>],
    morder: &ModuleOrder,
) -> Vec<Lead> {
    basis
        .iter()
        .map(|b| mv_leading(alg, b, morder).expect("nonzero basis element"))
        .collect()
}

fn reduce_in_place<A: GbAlgebra>(
    alg: &A,
    p: &mut ModVec<A::Elem>,
    basis: &[ModVec<A::Elem>],
    leads: &[Lead],
    morder: &ModuleOrder,
) -> ModVec<A::Elem> {
    let ncomps = p.len();
    let mut comp_has_reducer = vec![false; ncomps];
    for (c, _, _) in leads {
        comp_has_reducer[*c] = true;
    }
    let mut rem = mv_zero(alg, ncomps);
    'outer: while let Some((comp, m, coeff)) = mv_leading(alg, p, morder) {
        if !comp_has_reducer[comp] {
            // nothing can touch this component: move it over whole
            rem[comp] = alg.add(&rem[comp], &p[comp]);
            p[comp] = alg.zero();
            continue;
        }
        for (b, (bc, bm, blc)) in basis.iter().zip(leads) {
            if *bc == comp && bm.divides(&m) {
                let q = bm.quotient(&m);
                let factor = &coeff / blc;
                for (pi, bi) in p.iter_mut().zip(b) {
                    alg.sub_term_mul_assign(pi, &factor, &q, bi);
                }
                continue 'outer;
            }
        }
        let t = alg.term_elem(&coeff, &m);
        rem[comp] = alg.add(&rem[comp], &t);
        p[comp] = alg.sub(&p[comp], &t);
    }
    rem
}

/// Full normal form: every term of the result is out of reach of the
/// basis leading terms. Deterministic given the basis sequence.
pub fn normal_form<A: GbAlgebra>(
    alg: &A,
    v: &ModVec<A::Elem>,
    basis: &[ModVec<A::Elem>],
    morder: &ModuleOrder,
) -> ModVec<A::Elem> {
    let nonzero: Vec<ModVec<A::Elem>> = basis
        .iter()
        .filter(|b| !mv_is_zero(alg, b))
        .cloned()
        .collect();
    let leads = basis_leads(alg, &nonzero, morder);
    let mut p = v.clone();
    reduce_in_place(alg, &mut p, &nonzero, &leads, morder)
}

fn s_vector<A: GbAlgebra>(
    alg: &A,
    a: &ModVec<A::Elem>,
    la: &Lead,
    b: &ModVec<A::Elem>,
    lb: &Lead,
) -> ModVec<A::Elem> {
    let (ca, ma, lca) = la;
    let (cb, mb, lcb) = lb;
    debug_assert_eq!(ca, cb);
    let lcm = ma.lcm(mb);
    let ua = ma.quotient(&lcm);
    let ub = mb.quotient(&lcm);
    let one = BigRational::one();
    let mut s = a
        .iter()
        .map(|e| alg.term_mul(&(&one / lca), &ua, e))
        .collect::<Vec<_>>();
    for (si, bi) in s.iter_mut().zip(b) {
        alg.sub_term_mul_assign(si, &(&one / lcb), &ub, bi);
    }
    s
}

struct PairQueue {
    pairs: Vec<(u32, usize, usize)>,
}

impl PairQueue {
    fn new() -> Self {
        PairQueue { pairs: Vec::new() }
    }

    fn push<A: GbAlgebra>(&mut self, alg: &A, leads: &[Lead], i: usize, j: usize) {
        let _ = alg;
        let (ci, mi, _) = &leads[i];
        let (cj, mj, _) = &leads[j];
        if ci != cj {
            return;
        }
        let deg = mi.lcm(mj).degree();
        self.pairs.push((deg, i, j));
    }

    /// Smallest lcm degree first; ties broken by insertion order.
    fn pop(&mut self) -> Option<(usize, usize)> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if self.pairs[k].0 < self.pairs[best].0 {
                best = k;
            }
        }
        let (_, i, j) = self.pairs.remove(best);
        Some((i, j))
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`:
/// monic leading coefficients, no term divisible by another leading term,
/// sorted descending by leading module term. Unique for (module, order),
/// so permuting the generators cannot change the result.
pub fn groebner<A: GbAlgebra>(
    alg: &A,
    gens: &[ModVec<A::Elem>],
    morder: &ModuleOrder,
) -> Vec<ModVec<A::Elem>> {
    let mut basis: Vec<ModVec<A::Elem>> = Vec::new();
    for g in gens {
        if !mv_is_zero(alg, g) {
            basis.push(mv_monic(alg, g, morder));
        }
    }
    let mut leads = basis_leads(alg, &basis, morder);
    let mut queue = PairQueue::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            queue.push(alg, &leads, i, j);
        }
    }
    let ideal_case = basis.first().map(|v| v.len() == 1).unwrap_or(true);
    while let Some((i, j)) = queue.pop() {
        let (_, mi, _) = &leads[i];
        let (_, mj, _) = &leads[j];
        if alg.is_commutative() && ideal_case && mi.is_coprime_with(mj) {
            continue;
        }
        let mut s = s_vector(alg, &basis[i], &leads[i], &basis[j], &leads[j]);
        let r = reduce_in_place(alg, &mut s, &basis, &leads, morder);
        if !mv_is_zero(alg, &r) {
            let r = mv_monic(alg, &r, morder);
            let new = basis.len();
            leads.push(mv_leading(alg, &r, morder).unwrap());
            basis.push(r);
            for k in 0..new {
                queue.push(alg, &leads, k, new);
            }
        }
    }
    interreduce(alg, basis, morder)
}

fn interreduce<A: GbAlgebra>(
    alg: &A,
    basis: Vec<ModVec<A::Elem>>,
    morder: &ModuleOrder,
) -> Vec<ModVec<A::Elem>> {
    // minimalize: drop elements whose leading term another one divides
    let leads: Vec<(usize, Monomial)> = basis
        .iter()
        .map(|b| {
            let (c, m, _) = mv_leading(alg, b, morder).unwrap();
            (c, m)
        })
        .collect();
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && keep[i] {
                let ((ci, mi), (cj, mj)) = (&leads[i], &leads[j]);
                if ci == cj && mj.divides(mi) && (mj != mi || j < i) {
                    keep[i] = false;
                }
            }
        }
    }
    let mut minimal: Vec<ModVec<A::Elem>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| if k { Some(b) } else { None })
        .collect();
    // tail-reduce to a fixpoint
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let mut others: Vec<ModVec<A::Elem>> = Vec::with_capacity(minimal.len() - 1);
            for (j, b) in minimal.iter().enumerate() {
                if j != i {
                    others.push(b.clone());
                }
            }
            let leads = basis_leads(alg, &others, morder);
            let mut p = minimal[i].clone();
            let r = reduce_in_place(alg, &mut p, &others, &leads, morder);
            let r = mv_monic(alg, &r, morder);
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|b| !mv_is_zero(alg, b));
    minimal.sort_by(|a, b| {
        let (ca, ma, _) = mv_leading(alg, a, morder).unwrap();
        let (cb, mb, _) = mv_leading(alg, b, morder).unwrap();
        morder.cmp((cb, &mb), (ca, &ma))
    });
    minimal
}

/// Membership in the submodule generated by `basis` (a Gröbner basis).
pub fn is_member<A: GbAlgebra>(
    alg: &A,
    v: &ModVec<A::Elem>,
    basis: &[ModVec<A::Elem>],
    morder: &ModuleOrder,
) -> bool {
    mv_is_zero(alg, &normal_form(alg, v, basis, morder))
}

/// Result of the augmented (tagged) computation.
pub struct ExtendedGb<E> {
    /// Reduced Gröbner basis of the input module.
    pub basis: Vec<ModVec<E>>,
    /// For each basis element, coefficients on the original generators:
    /// `basis[i] = sum_j certificates[i][j] · gens[j]`.
    pub certificates: Vec<ModVec<E>>,
    /// Generating set of the syzygy module
    /// `{ (A_1..A_k) : sum A_i · gens_i = 0 }` (not reduced).
    pub syzygies: Vec<ModVec<E>>,
}

/// Runs the augmented computation `(g_i ; e_i)` under a component-wise
/// position-over-term elimination order. Reductions that empty the
/// original block are recorded as syzygies and never re-enter the basis;
/// the coprimality criterion stays off so that no recorded relation is
/// skipped.
pub fn extended_groebner<A: GbAlgebra>(
    alg: &A,
    gens: &[ModVec<A::Elem>],
    order: &TermOrder,
) -> ExtendedGb<A::Elem> {
    assert!(!gens.is_empty(), "no generators");
    let m = gens[0].len();
    let k = gens.len();
    let morder = ModuleOrder::pot(order.clone());
    let one = alg.term_elem(&BigRational::one(), &Monomial::unit(alg.arity()));
    let mut basis: Vec<ModVec<A::Elem>> = Vec::new();
    let mut syzygies: Vec<ModVec<A::Elem>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), m, "module vector length mismatch");
        if g.iter().all(|e| alg.is_zero(e)) {
            // a zero generator contributes its own tag as a syzygy
            let mut trivial = mv_zero(alg, k);
            trivial[i] = one.clone();
            syzygies.push(trivial);
            continue;
        }
        let mut v = g.clone();
        for j in 0..k {
            v.push(if j == i { one.clone() } else { alg.zero() });
        }
        basis.push(mv_monic(alg, &v, &morder));
    }
    let mut leads = basis_leads(alg, &basis, &morder);
    let mut queue = PairQueue::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            queue.push(alg, &leads, i, j);
        }
    }
    while let Some((i, j)) = queue.pop() {
        let mut s = s_vector(alg, &basis[i], &leads[i], &basis[j], &leads[j]);
        let r = reduce_in_place(alg, &mut s, &basis, &leads, &morder);
        if r.iter().take(m).all(|e| alg.is_zero(e)) {
            if !r.iter().skip(m).all(|e| alg.is_zero(e)) {
                syzygies.push(r[m..].to_vec());
            }
            continue;
        }
        let r = mv_monic(alg, &r, &morder);
        let new = basis.len();
        leads.push(mv_leading(alg, &r, &morder).unwrap());
        basis.push(r);
        for t in 0..new {
            queue.push(alg, &leads, t, new);
        }
    }
    let reduced = interreduce(alg, basis, &morder);
    let mut out = ExtendedGb { basis: Vec::new(), certificates: Vec::new(), syzygies };
    for row in reduced {
        let (first, tags) = row.split_at(m);
        debug_assert!(!first.iter().all(|e| alg.is_zero(e)));
        out.basis.push(first.to_vec());
        out.certificates.push(tags.to_vec());
    }
    out
}

/// Expands `sum coeffs[i] · gens[i]`; used to verify syzygies and
/// certificates by direct computation.
pub fn expand_combination<A: GbAlgebra>(
    alg: &A,
    coeffs: &[A::Elem],
    gens: &[ModVec<A::Elem>],
) -> ModVec<A::Elem> {
    let m = gens[0].len();
    let mut acc = mv_zero(alg, m);
    for (c, g) in coeffs.iter().zip(gens) {
        for (slot, e) in acc.iter_mut().zip(g) {
            *slot = alg.add(slot, &alg.mul(c, e));
        }
    }
    acc
}

/// The commutative polynomial ring in `nvars` variables.
#[derive(Clone, Copy, Debug)]
pub struct CommutativeRing {
    pub nvars: usize,
}

impl GbAlgebra for CommutativeRing {
    type Elem = crate::polyring::Poly;

    fn arity(&self) -> usize {
        self.nvars
    }
    fn zero(&self) -> Self::Elem {
        crate::polyring::Poly::zero(self.nvars)
    }
    fn is_zero(&self, e: &Self::Elem) -> bool {
        e.is_zero()
    }
    fn term_elem(&self, c: &BigRational, m: &Monomial) -> Self::Elem {
        crate::polyring::Poly::from_terms(self.nvars, [(m.clone(), c.clone())])
    }
    fn leading_term(&self, e: &Self::Elem, order: &TermOrder) -> Option<(Monomial, BigRational)> {
        e.leading_term(order).map(|(m, c)| (m.clone(), c.clone()))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn scale(&self, c: &BigRational, e: &Self::Elem) -> Self::Elem {
        e.scale(c)
    }
    fn term_mul(&self, c: &BigRational, m: &Monomial, e: &Self::Elem) -> Self::Elem {
        e.term_mul(c, m)
    }
    fn sub_term_mul_assign(
        &self,
        target: &mut Self::Elem,
        c: &BigRational,
        m: &Monomial,
        e: &Self::Elem,
    ) {
        target.sub_term_mul(c, m, e);
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

/// The Weyl algebra in `nvars` variables; monomials carry 2n exponents.
#[derive(Clone, Copy, Debug)]
pub struct WeylRing {
    pub nvars: usize,
}

impl GbAlgebra for WeylRing {
    type Elem = crate::weyl::WeylOp;

    fn arity(&self) -> usize {
        2 * self.nvars
    }
    fn zero(&self) -> Self::Elem {
        crate::weyl::WeylOp::zero(self.nvars)
    }
    fn is_zero(&self, e: &Self::Elem) -> bool {
        e.is_zero()
    }
    fn term_elem(&self, c: &BigRational, m: &Monomial) -> Self::Elem {
        let mut op = crate::weyl::WeylOp::zero(self.nvars);
        op.add_term(m.clone(), c.clone());
        op
    }
    fn leading_term(&self, e: &Self::Elem, order: &TermOrder) -> Option<(Monomial, BigRational)> {
        e.leading_term(order).map(|(m, c)| (m.clone(), c.clone()))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn scale(&self, c: &BigRational, e: &Self::Elem) -> Self::Elem {
        e.scale(c)
    }
    fn term_mul(&self, c: &BigRational, m: &Monomial, e: &Self::Elem) -> Self::Elem {
        e.left_term_mul(c, m)
    }
    fn sub_term_mul_assign(
        &self,
        target: &mut Self::Elem,
        c: &BigRational,
        m: &Monomial,
        e: &Self::Elem,
    ) {
        target.sub_left_term_mul(c, m, e);
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn is_commutative(&self) -> bool {
        false
    }
}
