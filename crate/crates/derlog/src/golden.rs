//! Built-in golden data for the shipped surface example
//! h = x·y·(x+y)·(xz+y) and the checks the `verify-paper` command runs
//! against it: the known basis with cofactors (4, x, 2x-3y), determinant
//! exactly h, the bracket table, the single second-syzygy generator, the
//! transposed-presentation duality and the symbol-level facts.

use crate::dmodcheck::{
    annihilator_containment, build_log_ideals, duality_check_surface, grf_analysis,
    resolution_check_surface, symbol_witness_facts,
};
use crate::error::Result;
use crate::logder::{
    bracket_decompose, derivation_to_vector, derlog_generators, LogDerivation, SaitoBasis,
};
use crate::ncgb::{left_module_groebner, OperatorMatrix, OperatorVector};
use crate::polyring::{int, module_equal, ModuleOrder, Poly, PolyVector, TermOrder};
use crate::weyl::WeylOp;

pub fn surface_vars() -> Vec<String> {
    vec!["x".into(), "y".into(), "z".into()]
}

/// The divisor x·y·(x+y)·(xz+y), expanded.
pub fn surface_divisor() -> Poly {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    &(&(&x * &y) * &(&x + &y)) * &(&(&x * &z) + &y)
}

/// The known basis of logarithmic derivations with cofactors
/// (4, x, 2x - 3y); the constructor re-checks δ(h) = a·h for each.
pub fn surface_basis_fixture(h: &Poly) -> Result<Vec<LogDerivation>> {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    let zero = Poly::zero(3);
    let d1 = LogDerivation::new(
        WeylOp::vector_field(&[x.clone(), y.clone(), zero.clone()]),
        Poly::constant(3, int(4)),
        h,
    )?;
    let d2 = LogDerivation::new(
        WeylOp::vector_field(&[zero.clone(), zero.clone(), &(&x * &z) + &y]),
        x.clone(),
        h,
    )?;
    let d3 = LogDerivation::new(
        WeylOp::vector_field(&[x.pow(2), -&y.pow(2), -&(&(&x * &z) + &(&y * &z))]),
        &x.scale(&int(2)) - &y.scale(&int(3)),
        h,
    )?;
    Ok(vec![d1, d2, d3])
}

/// The single generator of the second syzygy module:
/// s = (δ₃ - x, -δ₂, δ₁ - 2).
pub fn surface_syzygy_fixture(basis: &[LogDerivation]) -> OperatorVector {
    OperatorVector(vec![
        &basis[2].field().clone() - &WeylOp::coordinate(3, 0),
        -&basis[1].field().clone(),
        &basis[0].field().clone() - &WeylOp::constant(3, int(2)),
    ])
}

/// The symbol-ring element z·η·ζ - ξ·ζ witnessing the failure of
/// regularity.
pub fn surface_symbol_witness() -> Poly {
    let z = Poly::var(6, 2);
    let xi = Poly::var(6, 3);
    let eta = Poly::var(6, 4);
    let zeta = Poly::var(6, 5);
    &(&(&z * &eta) * &zeta) - &(&xi * &zeta)
}

#[derive(Clone, Debug)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> GoldenCheck {
    GoldenCheck { name, pass, detail: detail.into() }
}

/// Runs every golden check for the surface example and returns one entry
/// per check. All comparisons are exact.
pub fn verify_surface_example() -> Result<Vec<GoldenCheck>> {
    let order = TermOrder::grevlex();
    let morder = ModuleOrder::pot(order.clone());
    let h = surface_divisor();
    let fixture_derivs = surface_basis_fixture(&h)?;
    let mut checks = Vec::new();

    // computed generators span the same module as the fixture triple
    let computed = derlog_generators(&h)?;
    let computed_vecs: Vec<PolyVector> = computed.iter().map(derivation_to_vector).collect();
    let fixture_vecs: Vec<PolyVector> = fixture_derivs.iter().map(derivation_to_vector).collect();
    let pmorder = ModuleOrder::pot(TermOrder::grevlex());
    checks.push(check(
        "derlog-module-equality",
        module_equal(&computed_vecs, &fixture_vecs, &pmorder),
        format!("{} computed generators", computed.len()),
    ));

    // determinant exactly h (unit 1)
    let basis = SaitoBasis::validate(fixture_derivs.clone(), &h)?;
    checks.push(check(
        "determinant-equals-divisor",
        basis.unit == int(1),
        format!("unit = {}", basis.unit),
    ));

    // bracket table: [δ1,δ2] = δ2, [δ1,δ3] = δ3, [δ2,δ3] = -x δ2
    let structure = bracket_decompose(&basis, &h)?;
    let zero = Poly::zero(3);
    let one = Poly::one(3);
    let neg_x = -&Poly::var(3, 0);
    let expected: [(usize, usize, [&Poly; 3]); 3] = [
        (0, 1, [&zero, &one, &zero]),
        (0, 2, [&zero, &zero, &one]),
        (1, 2, [&zero, &neg_x, &zero]),
    ];
    let mut brackets_ok = true;
    for (i, j, alpha) in expected {
        let got = structure.get(i, j).unwrap();
        for (g, e) in got.iter().zip(alpha) {
            if g != e {
                brackets_ok = false;
            }
        }
    }
    checks.push(check("bracket-table", brackets_ok, "three pairs compared exactly"));

    // resolution chain and second syzygies
    let res = resolution_check_surface(&basis, &structure, &order)?;
    checks.push(check(
        "first-syzygies-are-bracket-relations",
        res.first_matches_relations,
        format!("{} reduced first syzygies", res.first_syzygies.len()),
    ));
    let s_fixture = surface_syzygy_fixture(&fixture_derivs);
    let computed_gb = left_module_groebner(&res.second_syzygies, &morder);
    let fixture_gb = left_module_groebner(std::slice::from_ref(&s_fixture), &morder);
    checks.push(check(
        "second-syzygy-single-generator",
        res.second_syzygies.len() == 1 && computed_gb == fixture_gb,
        format!("{} generators", res.second_syzygies.len()),
    ));
    checks.push(check(
        "syzygy-composition-zero",
        res.composition_zero,
        "s ∘ relations = 0",
    ));
    let relation_matrix = OperatorMatrix::new(res.relations.clone());
    let fixture_compose = OperatorMatrix::row_vector(s_fixture.0.clone()).compose(&relation_matrix);
    checks.push(check(
        "fixture-composition-zero",
        fixture_compose.is_zero(),
        "paper vector against computed relations",
    ));

    // duality through the transposed entries
    let (_, shifted) = build_log_ideals(&basis, &order);
    let duality = duality_check_surface(&res.second_syzygies, &shifted, &order);
    checks.push(check(
        "transposed-syzygy-duality",
        duality.equal,
        format!(
            "fingerprints {}.. == {}..",
            &duality.transposed_fingerprint[..12],
            &duality.shifted_fingerprint[..12]
        ),
    ));

    // symbol-level facts
    let grf = grf_analysis(&basis);
    checks.push(check(
        "symbols-not-regular",
        !grf.regular,
        "regular-sequence test reports failure",
    ));
    let witness = surface_symbol_witness();
    let (outside, product_in) = symbol_witness_facts(&grf.symbols, &witness);
    checks.push(check(
        "witness-outside-pair-ideal",
        outside,
        "z·η·ζ - ξ·ζ not in the pair ideal",
    ));
    checks.push(check(
        "witness-product-inside-pair-ideal",
        product_in,
        "(z·η·ζ - ξ·ζ)·σ₃ in the pair ideal",
    ));

    checks.push(check(
        "annihilator-containment",
        annihilator_containment(&basis, &h),
        "each δ + a sends 1/h to 0",
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        let h = surface_divisor();
        let basis = surface_basis_fixture(&h).unwrap();
        assert_eq!(basis.len(), 3);
        let s = surface_syzygy_fixture(&basis);
        assert_eq!(s.len(), 3);
    }
}
