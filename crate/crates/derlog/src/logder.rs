//! Logarithmic derivations of a divisor: generation from syzygies, Saito
//! basis selection, bracket decomposition into structure coefficients, and
//! the quasi-homogeneity test.

use crate::error::{EngineError, Result};
use crate::polyring::{
    buchberger_commutative, ideal_member_gb, is_squarefree, syzygy_module, Poly, PolyVector,
    TermOrder,
};
use crate::weyl::WeylOp;
use num::{BigRational, One, Zero};

/// A vector field δ together with the cofactor a satisfying δ(f) = a·f.
/// The identity is checked exactly at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDerivation {
    field: WeylOp,
    cofactor: Poly,
}

impl LogDerivation {
    pub fn new(field: WeylOp, cofactor: Poly, divisor: &Poly) -> Result<Self> {
        let (_, order0) = field
            .as_first_order()
            .ok_or_else(|| EngineError::Input("a logarithmic derivation must have order one".into()))?;
        if !order0.is_zero() {
            return Err(EngineError::Input(
                "a logarithmic derivation must have no order-zero part".into(),
            ));
        }
        let lhs = field.apply(divisor);
        let rhs = &cofactor * divisor;
        if lhs != rhs {
            return Err(EngineError::Input(format!(
                "δ(f) ≠ a·f for the proposed pair (difference {:?})",
                &lhs - &rhs
            )));
        }
        Ok(LogDerivation { field, cofactor })
    }

    pub fn field(&self) -> &WeylOp {
        &self.field
    }

    pub fn cofactor(&self) -> &Poly {
        &self.cofactor
    }

    pub fn coefficients(&self) -> Vec<Poly> {
        self.field.as_first_order().expect("validated at construction").0
    }

    /// The operator δ + a annihilating 1/f.
    pub fn annihilator_operator(&self) -> WeylOp {
        &self.field + &WeylOp::from_poly(&self.cofactor)
    }

    /// Σ ∂_i(b_i) for δ = Σ b_i ∂_i.
    pub fn divergence(&self) -> Poly {
        let coeffs = self.coefficients();
        let n = coeffs.len();
        let mut acc = Poly::zero(n);
        for (i, b) in coeffs.iter().enumerate() {
            acc = &acc + &b.partial_derivative(i);
        }
        acc
    }
}

fn check_divisor(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(EngineError::ZeroDivisor);
    }
    if !f.constant_term().is_zero() {
        return Err(EngineError::NotVanishingAtOrigin);
    }
    if !is_squarefree(f) {
        return Err(EngineError::NotReduced);
    }
    Ok(())
}

/// Generators of Der(log f) from the syzygies of (f, ∂f/∂x_1, ..):
/// a syzygy (v_0, v_1..v_n) yields δ = Σ v_i ∂_i with cofactor -v_0,
/// so that Σ v_i ∂f/∂x_i = (-v_0)·f.
pub fn derlog_generators(f: &Poly) -> Result<Vec<LogDerivation>> {
    check_divisor(f)?;
    let n = f.nvars();
    let mut gens = vec![f.clone()];
    for i in 0..n {
        gens.push(f.partial_derivative(i));
    }
    let syzygies = syzygy_module(&gens, &TermOrder::grevlex());
    let mut out = Vec::new();
    for v in syzygies {
        let cofactor = -&v[0];
        let coeffs: Vec<Poly> = (1..=n).map(|i| v[i].clone()).collect();
        if coeffs.iter().all(|p| p.is_zero()) {
            continue;
        }
        let field = WeylOp::vector_field(&coeffs);
        out.push(LogDerivation::new(field, cofactor, f)?);
    }
    Ok(out)
}

/// Maps a derivation to its syzygy-layout vector (-a, b_1..b_n); used for
/// module-equality comparisons between generating sets.
pub fn derivation_to_vector(d: &LogDerivation) -> PolyVector {
    let mut entries = vec![-d.cofactor()];
    entries.extend(d.coefficients());
    PolyVector(entries)
}

/// n derivations whose coefficient matrix has determinant unit·f.
#[derive(Clone, Debug)]
pub struct SaitoBasis {
    pub derivations: Vec<LogDerivation>,
    pub unit: BigRational,
}

impl SaitoBasis {
    /// Rows are the derivations, columns the ∂_i coefficients.
    pub fn coefficient_matrix(&self) -> Vec<Vec<Poly>> {
        self.derivations.iter().map(|d| d.coefficients()).collect()
    }

    pub fn len(&self) -> usize {
        self.derivations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derivations.is_empty()
    }

    pub fn validate(derivations: Vec<LogDerivation>, f: &Poly) -> Result<Self> {
        let n = f.nvars();
        if derivations.len() != n {
            return Err(EngineError::Input(format!(
                "a Saito basis needs exactly {n} derivations"
            )));
        }
        let matrix: Vec<Vec<Poly>> = derivations.iter().map(|d| d.coefficients()).collect();
        let det = determinant(&matrix);
        match det.exact_divide(f).and_then(|q| q.as_constant()) {
            Some(unit) if !unit.is_zero() => Ok(SaitoBasis { derivations, unit }),
            _ => Err(EngineError::Input(
                "coefficient determinant is not a unit multiple of the divisor".into(),
            )),
        }
    }
}

/// Determinant by cofactor expansion; the matrices here are at most 3x3.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(k, p)| if k != j { Some(p.clone()) } else { None })
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &determinant(&minor);
        if j % 2 == 0 {
            det = &det + &term;
        } else {
            det = &det - &term;
        }
    }
    det
}

/// Adjugate matrix: M·adj(M) = adj(M)·M = det(M)·I.
pub fn adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return vec![vec![Poly::one(nvars)]];
    }
    let mut adj = vec![vec![Poly::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let cof = determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -&cof };
        }
    }
    adj
}

fn subset_score(gens: &[LogDerivation], subset: &[usize]) -> u32 {
    subset
        .iter()
        .map(|&i| {
            gens[i]
                .coefficients()
                .iter()
                .map(|p| p.total_degree())
                .max()
                .unwrap_or(0)
        })
        .sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n || k == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance the rightmost index that can still move
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in (i + 1)..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        if exps.iter().sum::<u32>() <= bound {
            out.push(Poly::from_terms(
                nvars,
                [(crate::polyring::Monomial(exps.clone()), BigRational::one())],
            ));
        }
        let mut pos = 0;
        loop {
            if pos == nvars {
                return out;
            }
            if exps[pos] < bound {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// Searches the generating set for n derivations with coefficient
/// determinant unit·f: all n-subsets first (smallest total degree wins,
/// ties broken by enumeration order), then one elementary combination
/// δ_i + c·m·δ_j with |c| ∈ {1, 2} and deg m ≤ `degree_bound`.
pub fn saito_basis(gens: &[LogDerivation], f: &Poly, degree_bound: u32) -> Result<SaitoBasis> {
    let n = f.nvars();
    let mut tried = 0usize;

    let mut best: Option<(u32, usize, SaitoBasis)> = None;
    for (rank, subset) in combinations(gens.len(), n).into_iter().enumerate() {
        let set: Vec<LogDerivation> = subset.iter().map(|&i| gens[i].clone()).collect();
        tried += 1;
        if let Ok(basis) = SaitoBasis::validate(set, f) {
            let score = subset_score(gens, &subset);
            let better = match &best {
                None => true,
                Some((s, r, _)) => score < *s || (score == *s && rank < *r),
            };
            if better {
                best = Some((score, rank, basis));
            }
        }
    }
    if let Some((_, _, basis)) = best {
        return Ok(basis);
    }

    // elementary combinations over the subsets
    let monos = monomials_up_to(n, degree_bound);
    for subset in combinations(gens.len(), n) {
        for pos in 0..n {
            for j in 0..gens.len() {
                if j == subset[pos] {
                    continue;
                }
                for scalar in [1i64, -1, 2, -2] {
                    for m in &monos {
                        let mut set: Vec<LogDerivation> =
                            subset.iter().map(|&i| gens[i].clone()).collect();
                        let extra = m.scale(&BigRational::from(num::BigInt::from(scalar)));
                        let field =
                            &set[pos].field + &(&WeylOp::from_poly(&extra) * &gens[j].field);
                        let cof = &set[pos].cofactor + &(&extra * &gens[j].cofactor);
                        match LogDerivation::new(field, cof, f) {
                            Ok(d) => set[pos] = d,
                            Err(_) => continue,
                        }
                        tried += 1;
                        if let Ok(basis) = SaitoBasis::validate(set, f) {
                            return Ok(basis);
                        }
                    }
                }
            }
        }
    }
    Err(EngineError::SaitoSearchFailed { candidates: tried, bound: degree_bound })
}

/// Structure coefficients of the basis brackets: for each pair i < j,
/// the vector α with [δ_i, δ_j] = Σ_k α_k δ_k. Solved with the adjugate
/// of the coefficient matrix and exact division by unit·f, then verified
/// by re-expansion.
#[derive(Clone, Debug)]
pub struct BracketStructure {
    pub coefficients: Vec<((usize, usize), Vec<Poly>)>,
}

impl BracketStructure {
    pub fn get(&self, i: usize, j: usize) -> Option<&[Poly]> {
        self.coefficients
            .iter()
            .find(|((a, b), _)| (*a, *b) == (i, j))
            .map(|(_, v)| v.as_slice())
    }
}

pub fn bracket_decompose(basis: &SaitoBasis, f: &Poly) -> Result<BracketStructure> {
    let n = f.nvars();
    let matrix = basis.coefficient_matrix();
    let adj = adjugate(&matrix);
    let det = f.scale(&basis.unit);
    let mut coefficients = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let bracket = basis.derivations[i]
                .field()
                .bracket(basis.derivations[j].field());
            let (bracket_coeffs, order0) = bracket
                .as_first_order()
                .expect("bracket of derivations is a derivation");
            debug_assert!(order0.is_zero());
            // row vector v·adj, then divide by unit·f
            let mut alpha = Vec::with_capacity(n);
            for col in 0..n {
                let mut acc = Poly::zero(n);
                for (k, b) in bracket_coeffs.iter().enumerate() {
                    acc = &acc + &(b * &adj[k][col]);
                }
                let q = acc.exact_divide(&det).ok_or_else(|| {
                    EngineError::Inconsistency(
                        "bracket does not decompose over the proposed Saito basis".into(),
                    )
                })?;
                alpha.push(q);
            }
            // re-expansion check
            let mut expanded = WeylOp::zero(n);
            for (k, a) in alpha.iter().enumerate() {
                expanded = &expanded + &(&WeylOp::from_poly(a) * basis.derivations[k].field());
            }
            if expanded != bracket {
                return Err(EngineError::Inconsistency(
                    "bracket decomposition failed re-expansion".into(),
                ));
            }
            coefficients.push(((i, j), alpha));
        }
    }
    Ok(BracketStructure { coefficients })
}

/// Quasi-homogeneity verdict with its witnesses. The cofactor-unit and
/// Jacobian-membership criteria are computed independently and must
/// agree; a disagreement aborts the run.
#[derive(Clone, Debug)]
pub struct QhReport {
    pub quasi_homogeneous: bool,
    /// A generator cofactor with nonzero constant term, when one exists.
    pub unit_cofactor: Option<Poly>,
    /// Whether f lies in the ideal of its partial derivatives.
    pub jacobian_member: bool,
}

pub fn qh_test(gens: &[LogDerivation], f: &Poly) -> Result<QhReport> {
    let unit_cofactor = gens
        .iter()
        .map(|d| d.cofactor())
        .find(|a| !a.constant_term().is_zero())
        .cloned();
    let criterion_units = unit_cofactor.is_some();

    let n = f.nvars();
    let partials: Vec<Poly> = (0..n).map(|i| f.partial_derivative(i)).collect();
    let order = TermOrder::grevlex();
    let basis = buchberger_commutative(&partials, &order);
    let criterion_jacobian = ideal_member_gb(f, &basis, &order);

    if criterion_units != criterion_jacobian {
        return Err(EngineError::CriteriaDisagree(format!(
            "cofactor-unit criterion says {criterion_units}, Jacobian membership says {criterion_jacobian}"
        )));
    }
    Ok(QhReport {
        quasi_homogeneous: criterion_units,
        unit_cofactor,
        jacobian_member: criterion_jacobian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::int;
    use crate::polyring::{module_groebner, module_member, ModuleOrder};

    fn node() -> Poly {
        &Poly::var(2, 0) * &Poly::var(2, 1)
    }

    fn cusp() -> Poly {
        &Poly::var(2, 0).pow(2) - &Poly::var(2, 1).pow(3)
    }

    fn nonqh_curve() -> Poly {
        // x^4 + y^5 + x y^4
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        &(&x.pow(4) + &y.pow(5)) + &(&x * &y.pow(4))
    }

    fn contains_derivation(gens: &[LogDerivation], d: &LogDerivation) -> bool {
        let vecs: Vec<PolyVector> = gens.iter().map(derivation_to_vector).collect();
        let morder = ModuleOrder::pot(TermOrder::grevlex());
        let basis = module_groebner(&vecs, &morder);
        module_member(&derivation_to_vector(d), &basis, &morder)
    }

    #[test]
    fn node_generators() {
        let f = node();
        let gens = derlog_generators(&f).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let d1 = LogDerivation::new(
            WeylOp::vector_field(&[x.clone(), Poly::zero(2)]),
            Poly::one(2),
            &f,
        )
        .unwrap();
        let d2 = LogDerivation::new(
            WeylOp::vector_field(&[Poly::zero(2), y.clone()]),
            Poly::one(2),
            &f,
        )
        .unwrap();
        assert!(contains_derivation(&gens, &d1));
        assert!(contains_derivation(&gens, &d2));
    }

    #[test]
    fn cusp_generators_and_basis() {
        let f = cusp();
        let gens = derlog_generators(&f).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        // (3x∂x + 2y∂y, 6) and (3y²∂x + 2x∂y, 0)
        let e1 = LogDerivation::new(
            WeylOp::vector_field(&[x.scale(&int(3)), y.scale(&int(2))]),
            Poly::constant(2, int(6)),
            &f,
        )
        .unwrap();
        let e2 = LogDerivation::new(
            WeylOp::vector_field(&[y.pow(2).scale(&int(3)), x.scale(&int(2))]),
            Poly::zero(2),
            &f,
        )
        .unwrap();
        assert!(contains_derivation(&gens, &e1));
        assert!(contains_derivation(&gens, &e2));

        let basis = saito_basis(&gens, &f, 2).unwrap();
        let det = determinant(&basis.coefficient_matrix());
        assert_eq!(det, f.scale(&basis.unit));

        // the fixture pair has determinant 6f
        let fixture = SaitoBasis::validate(vec![e1, e2], &f).unwrap();
        assert_eq!(fixture.unit, int(6));
    }

    #[test]
    fn node_saito_determinant_is_unit_times_f() {
        let f = node();
        let gens = derlog_generators(&f).unwrap();
        let basis = saito_basis(&gens, &f, 2).unwrap();
        assert_eq!(determinant(&basis.coefficient_matrix()), f.scale(&basis.unit));
    }

    #[test]
    fn reject_bad_divisors() {
        assert!(matches!(derlog_generators(&Poly::zero(2)), Err(EngineError::ZeroDivisor)));
        assert!(matches!(
            derlog_generators(&Poly::one(2)),
            Err(EngineError::NotVanishingAtOrigin)
        ));
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert!(matches!(
            derlog_generators(&(&x.pow(2) * &y)),
            Err(EngineError::NotReduced)
        ));
    }

    #[test]
    fn node_brackets_vanish() {
        let f = node();
        let gens = derlog_generators(&f).unwrap();
        let basis = saito_basis(&gens, &f, 2).unwrap();
        let brackets = bracket_decompose(&basis, &f).unwrap();
        let alpha = brackets.get(0, 1).unwrap();
        assert!(alpha.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn cusp_bracket_structure() {
        let f = cusp();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let e1 = LogDerivation::new(
            WeylOp::vector_field(&[x.scale(&int(3)), y.scale(&int(2))]),
            Poly::constant(2, int(6)),
            &f,
        )
        .unwrap();
        let e2 = LogDerivation::new(
            WeylOp::vector_field(&[y.pow(2).scale(&int(3)), x.scale(&int(2))]),
            Poly::zero(2),
            &f,
        )
        .unwrap();
        let basis = SaitoBasis::validate(vec![e1, e2], &f).unwrap();
        let brackets = bracket_decompose(&basis, &f).unwrap();
        // [δ1, δ2] = δ2, so α = (0, 1)
        let alpha = brackets.get(0, 1).unwrap();
        assert!(alpha[0].is_zero());
        assert_eq!(alpha[1], Poly::one(2));
    }

    #[test]
    fn divergence_identity_on_cusp() {
        let f = cusp();
        let gens = derlog_generators(&f).unwrap();
        let basis = saito_basis(&gens, &f, 2).unwrap();
        let brackets = bracket_decompose(&basis, &f).unwrap();
        let alpha = brackets.get(0, 1).unwrap();
        let d1 = &basis.derivations[0];
        let d2 = &basis.derivations[1];
        // a1 = α2 + div(δ1), a2 = -α1 + div(δ2)
        assert_eq!(*d1.cofactor(), &alpha[1] + &d1.divergence());
        assert_eq!(*d2.cofactor(), &(-&alpha[0]) + &d2.divergence());
    }

    #[test]
    fn qh_verdicts() {
        let smooth = Poly::var(2, 0);
        let r = qh_test(&derlog_generators(&smooth).unwrap(), &smooth).unwrap();
        assert!(r.quasi_homogeneous);

        let f = cusp();
        let r = qh_test(&derlog_generators(&f).unwrap(), &f).unwrap();
        assert!(r.quasi_homogeneous);
        assert!(!r.unit_cofactor.unwrap().constant_term().is_zero());

        let g = nonqh_curve();
        let r = qh_test(&derlog_generators(&g).unwrap(), &g).unwrap();
        assert!(!r.quasi_homogeneous);
        assert!(r.unit_cofactor.is_none());
    }

    #[test]
    fn nonqh_curve_has_saito_basis() {
        let g = nonqh_curve();
        let gens = derlog_generators(&g).unwrap();
        let basis = saito_basis(&gens, &g, 2).unwrap();
        let det = determinant(&basis.coefficient_matrix());
        assert_eq!(det, g.scale(&basis.unit));
    }
}
