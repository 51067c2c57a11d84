//! Left-ideal Gröbner machinery in the Weyl algebra: reduction, Buchberger,
//! membership, reduced-basis ideal equality, left syzygies over free
//! modules, and operator-matrix composition.
//!
//! Any multiplicative well-order on the (x, ∂)-exponents is admissible:
//! leading terms multiply like commutative monomials because the
//! commutator corrections lower both exponent blocks at once.

use crate::gb::{self, WeylRing};
use crate::polyring::{ModuleOrder, TermOrder};
use crate::weyl::WeylOp;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::sync::OnceLock;

fn weyl_ring(ops: &[WeylOp]) -> WeylRing {
    WeylRing { nvars: ops.first().map(|p| p.nvars()).unwrap_or(0) }
}

/// Normal form of `P` modulo the left ideal spanned by `basis`: leading
/// terms are cancelled by left multiples of basis elements until no term
/// is divisible by a basis leading monomial.
pub fn left_reduce(p: &WeylOp, basis: &[WeylOp], order: &TermOrder) -> WeylOp {
    let alg = WeylRing { nvars: p.nvars() };
    let morder = ModuleOrder::pot(order.clone());
    let bvecs: Vec<Vec<WeylOp>> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| vec![b.clone()])
        .collect();
    gb::normal_form(&alg, &vec![p.clone()], &bvecs, &morder)
        .pop()
        .unwrap()
}

/// Reduced monic left Gröbner basis; unique for (ideal, order).
pub fn left_buchberger(gens: &[WeylOp], order: &TermOrder) -> Vec<WeylOp> {
    let alg = weyl_ring(gens);
    let morder = ModuleOrder::pot(order.clone());
    let gvecs: Vec<Vec<WeylOp>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| vec![g.clone()])
        .collect();
    gb::groebner(&alg, &gvecs, &morder)
        .into_iter()
        .map(|mut v| v.pop().unwrap())
        .collect()
}

/// Reduced left basis together with, for each element, the left
/// coefficients expressing it in the original generators.
pub fn left_buchberger_with_certificates(
    gens: &[WeylOp],
    order: &TermOrder,
) -> (Vec<WeylOp>, Vec<OperatorVector>) {
    let alg = weyl_ring(gens);
    let gvecs: Vec<Vec<WeylOp>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let ext = gb::extended_groebner(&alg, &gvecs, order);
    let basis: Vec<WeylOp> = ext.basis.into_iter().map(|mut v| v.pop().unwrap()).collect();
    let certs = ext.certificates.into_iter().map(OperatorVector).collect();
    (basis, certs)
}

/// A left ideal given by generators, with its reduced Gröbner basis
/// computed once on demand and shared read-only afterwards.
#[derive(Debug)]
pub struct IdealPresentation {
    generators: Vec<WeylOp>,
    order: TermOrder,
    basis: OnceLock<Vec<WeylOp>>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<WeylOp>, order: TermOrder) -> Self {
        let generators: Vec<WeylOp> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealPresentation { generators, order, basis: OnceLock::new() }
    }

    pub fn generators(&self) -> &[WeylOp] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[WeylOp] {
        self.basis
            .get_or_init(|| left_buchberger(&self.generators, &self.order))
    }

    /// Membership: the normal form against the reduced basis vanishes.
    pub fn contains(&self, p: &WeylOp) -> bool {
        left_reduce(p, self.basis(), &self.order).is_zero()
    }

    /// Ideal equality through reduced-basis identity.
    pub fn equals(&self, other: &IdealPresentation) -> bool {
        assert_eq!(self.order, other.order, "term order mismatch");
        self.basis() == other.basis()
    }

    /// Stable hash of the reduced basis; a canonical fingerprint of
    /// (ideal, order).
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(self.basis()).expect("serializable basis");
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A fixed-length vector of operators sharing one context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorVector(pub Vec<WeylOp>);

impl OperatorVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylOp> {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for OperatorVector {
    type Output = WeylOp;
    fn index(&self, i: usize) -> &WeylOp {
        &self.0[i]
    }
}

/// A rectangular matrix of operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    rows: Vec<OperatorVector>,
}

impl OperatorMatrix {
    pub fn new(rows: Vec<OperatorVector>) -> Self {
        if let Some(first) = rows.first() {
            assert!(
                rows.iter().all(|r| r.len() == first.len()),
                "ragged operator matrix"
            );
        }
        OperatorMatrix { rows }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map(|r| r.len()).unwrap_or(0))
    }

    pub fn rows(&self) -> &[OperatorVector] {
        &self.rows
    }

    pub fn row_vector(v: Vec<WeylOp>) -> Self {
        OperatorMatrix::new(vec![OperatorVector(v)])
    }

    pub fn column_vector(v: Vec<WeylOp>) -> Self {
        OperatorMatrix::new(v.into_iter().map(|p| OperatorVector(vec![p])).collect())
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                OperatorVector(
                    (0..n)
                        .map(|j| if i == j { WeylOp::one(nvars) } else { WeylOp::zero(nvars) })
                        .collect(),
                )
            })
            .collect();
        OperatorMatrix::new(rows)
    }

    /// Matrix product with `self` acting as left factors entry-wise.
    pub fn compose(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let (ra, ca) = self.shape();
        let (rb, cb) = rhs.shape();
        assert_eq!(ca, rb, "shape mismatch: {ra}x{ca} · {rb}x{cb}");
        let rows = (0..ra)
            .map(|i| {
                OperatorVector(
                    (0..cb)
                        .map(|j| {
                            let mut acc: Option<WeylOp> = None;
                            for k in 0..ca {
                                let prod = &self.rows[i][k] * &rhs.rows[k][j];
                                acc = Some(match acc {
                                    None => prod,
                                    Some(a) => &a + &prod,
                                });
                            }
                            acc.expect("nonempty inner dimension")
                        })
                        .collect(),
                )
            })
            .collect();
        OperatorMatrix::new(rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }
}

/// Generating set of the left syzygies { (A_1..A_k) : Σ A_i·gens_i = 0 }
/// of vectors over the Weyl algebra. Each returned vector is re-verified
/// by expansion before being returned.
pub fn left_syzygies_of_vectors(
    gens: &[OperatorVector],
    order: &TermOrder,
) -> Vec<OperatorVector> {
    let nvars = gens
        .iter()
        .flat_map(|v| v.iter())
        .map(|p| p.nvars())
        .next()
        .unwrap_or(0);
    let alg = WeylRing { nvars };
    let gvecs: Vec<Vec<WeylOp>> = gens.iter().map(|v| v.0.clone()).collect();
    let ext = gb::extended_groebner(&alg, &gvecs, order);
    for syz in &ext.syzygies {
        let expanded = gb::expand_combination(&alg, syz, &gvecs);
        assert!(
            expanded.iter().all(|p| p.is_zero()),
            "left syzygy fails its defining relation"
        );
    }
    ext.syzygies.into_iter().map(OperatorVector).collect()
}

/// Left syzygies of a list of operators (the one-component case).
pub fn left_syzygies(gens: &[WeylOp], order: &TermOrder) -> Vec<OperatorVector> {
    let vecs: Vec<OperatorVector> = gens
        .iter()
        .map(|g| OperatorVector(vec![g.clone()]))
        .collect();
    left_syzygies_of_vectors(&vecs, order)
}

/// Reduced left Gröbner basis of a submodule of a free module.
pub fn left_module_groebner(vecs: &[OperatorVector], morder: &ModuleOrder) -> Vec<OperatorVector> {
    let nvars = vecs
        .iter()
        .flat_map(|v| v.iter())
        .map(|p| p.nvars())
        .next()
        .unwrap_or(0);
    let alg = WeylRing { nvars };
    let gvecs: Vec<Vec<WeylOp>> = vecs.iter().map(|v| v.0.clone()).collect();
    gb::groebner(&alg, &gvecs, morder)
        .into_iter()
        .map(OperatorVector)
        .collect()
}

pub fn left_module_member(
    v: &OperatorVector,
    basis: &[OperatorVector],
    morder: &ModuleOrder,
) -> bool {
    let nvars = v.iter().map(|p| p.nvars()).next().unwrap_or(0);
    let alg = WeylRing { nvars };
    let bvecs: Vec<Vec<WeylOp>> = basis.iter().map(|b| b.0.clone()).collect();
    gb::normal_form(&alg, &v.0, &bvecs, morder)
        .iter()
        .all(|p| p.is_zero())
}

/// Equality of left submodules through reduced-basis identity.
pub fn left_module_equal(
    a: &[OperatorVector],
    b: &[OperatorVector],
    morder: &ModuleOrder,
) -> bool {
    left_module_groebner(a, morder) == left_module_groebner(b, morder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::int;
    use crate::polyring::Poly;

    fn x() -> WeylOp {
        WeylOp::coordinate(2, 0)
    }
    fn y() -> WeylOp {
        WeylOp::coordinate(2, 1)
    }
    fn dx() -> WeylOp {
        WeylOp::partial(2, 0)
    }
    fn dy() -> WeylOp {
        WeylOp::partial(2, 1)
    }

    #[test]
    fn reduce_own_generator_and_left_multiple() {
        let g = &(&x() * &dx()) + &WeylOp::one(2);
        let order = TermOrder::grevlex();
        assert!(left_reduce(&g, &[g.clone()], &order).is_zero());
        let multiple = &dx() * &g;
        assert!(left_reduce(&multiple, &[g.clone()], &order).is_zero());
    }

    #[test]
    fn partials_are_self_reduced() {
        let order = TermOrder::grevlex();
        let basis = left_buchberger(&[dx(), dy()], &order);
        assert_eq!(basis, vec![dx(), dy()]);
    }

    #[test]
    fn euler_and_partial_collapse_to_unit() {
        // (x∂x + 1) - x·∂x = 1, so the ideal contains 1
        let order = TermOrder::grevlex();
        let g = &(&x() * &dx()) + &WeylOp::one(2);
        let basis = left_buchberger(&[g, dx()], &order);
        assert_eq!(basis, vec![WeylOp::one(2)]);
    }

    #[test]
    fn node_annihilator_basis_is_stable() {
        // f = xy: the ideal ⟨x∂x+1, y∂y+1⟩ is its own reduced basis
        let order = TermOrder::grevlex();
        let g1 = &(&x() * &dx()) + &WeylOp::one(2);
        let g2 = &(&y() * &dy()) + &WeylOp::one(2);
        let i = IdealPresentation::new(vec![g1.clone(), g2.clone()], order);
        assert_eq!(i.basis().len(), 2);
        assert!(i.contains(&g1));
        assert!(i.contains(&(&dy() * &g2)));
        assert!(!i.contains(&WeylOp::one(2)));
    }

    #[test]
    fn ideal_equality_and_inequality() {
        let order = TermOrder::grevlex();
        let a = IdealPresentation::new(vec![dx()], order.clone());
        let b = IdealPresentation::new(vec![x()], order.clone());
        assert!(!a.equals(&b));
        let c = IdealPresentation::new(vec![dx(), &x() * &dx()], order);
        assert!(a.equals(&c));
        assert_eq!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn no_syzygies_of_a_single_operator() {
        let p = &(&x() * &dx()) + &WeylOp::constant(2, int(3));
        let syz = left_syzygies(&[p], &TermOrder::grevlex());
        assert!(syz.is_empty());
    }

    #[test]
    fn commutator_syzygy_of_two_partials() {
        // A·∂x + B·∂y = 0 admits (∂y, -∂x)
        let syz = left_syzygies(&[dx(), dy()], &TermOrder::grevlex());
        assert!(!syz.is_empty());
        let morder = ModuleOrder::pot(TermOrder::grevlex());
        let target = OperatorVector(vec![dy(), -&dx()]);
        let basis = left_module_groebner(&syz, &morder);
        assert!(left_module_member(&target, &basis, &morder));
    }

    #[test]
    fn matrix_identity_and_compose() {
        let a = OperatorMatrix::new(vec![
            OperatorVector(vec![x(), dx()]),
            OperatorVector(vec![WeylOp::zero(2), y()]),
        ]);
        let id = OperatorMatrix::identity(2, 2);
        assert_eq!(id.compose(&a), a);
        let e = OperatorMatrix::row_vector(vec![dx(), WeylOp::one(2)]);
        let f = OperatorMatrix::column_vector(vec![x(), WeylOp::zero(2)]);
        // (∂x, 1)·(x, 0)^t = ∂x·x = x∂x + 1
        let composed = e.compose(&f);
        let expect = &(&x() * &dx()) + &WeylOp::one(2);
        assert_eq!(composed.rows()[0][0], expect);
    }

    #[test]
    fn certificates_reexpand() {
        let order = TermOrder::grevlex();
        let fpoly = {
            let px = Poly::var(2, 0);
            let py = Poly::var(2, 1);
            &px.pow(2) - &py.pow(3)
        };
        let _ = fpoly;
        let g1 = &(&x() * &dx()) + &(&y() * &dy());
        let g2 = &dx() * &dx();
        let (basis, certs) = left_buchberger_with_certificates(&[g1.clone(), g2.clone()], &order);
        assert_eq!(basis.len(), certs.len());
        for (b, c) in basis.iter().zip(&certs) {
            let expanded = &(&c[0] * &g1) + &(&c[1] * &g2);
            assert_eq!(&expanded, b);
        }
    }
}
