//! The structured result of one divisor run and its two renderings: a
//! text report following the presentation order generators → cofactors →
//! brackets → syzygies → duality → graded data → verdict, and a stable
//! JSON document (schema_version 1) that round-trips losslessly.

use crate::error::{EngineError, Result};
use crate::parse::{pretty_operator, pretty_poly, pretty_poly_atom};
use crate::polyring::Poly;
use crate::weyl::WeylOp;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaitoSection {
    pub derivations: Vec<WeylOp>,
    pub cofactors: Vec<Poly>,
    /// Unit u with det(coefficients) = u·f, as an exact rational string.
    pub unit: String,
    pub determinant_is_unit_multiple: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketSection {
    pub i: usize,
    pub j: usize,
    pub alpha: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QhSection {
    pub quasi_homogeneous: bool,
    pub unit_cofactor: Option<Poly>,
    pub jacobian_member: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualitySection {
    pub equal: bool,
    pub transposed_generators: Vec<WeylOp>,
    pub transposed_fingerprint: String,
    pub shifted_fingerprint: String,
    pub operator_identities: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ResolutionSection {
    Curve {
        phi_composition_zero: bool,
        psi_composition_zero: bool,
        symbol_regular: bool,
    },
    Surface {
        relations: Vec<Vec<WeylOp>>,
        first_syzygies_match_relations: bool,
        second_syzygies: Vec<Vec<WeylOp>>,
        composition_zero: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrfSection {
    pub symbols: Vec<Poly>,
    pub regular: bool,
    pub witness: Option<Poly>,
    pub symbol_ideals_equal: bool,
    /// For a failed triple: witness ∉ ⟨σ₁, σ₂⟩ and witness·σ₃ ∈ ⟨σ₁, σ₂⟩.
    pub witness_outside_pair: Option<bool>,
    pub witness_times_last_inside_pair: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ext2Section {
    pub solvable: Vec<(u32, bool)>,
    pub first_unsolvable: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LctSection {
    /// "holds", "fails", or "holds-chain-verified" for surfaces.
    pub verdict: String,
    pub holds: bool,
    pub certificate_k: Option<u32>,
    pub note: String,
}

/// Externally computed facts consumed as fixtures, never derived here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExternalFacts {
    pub b_function: String,
    pub b_function_note: String,
    pub annihilator_equality_note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub vars: Vec<String>,
    /// Canonical (expanded, grevlex-sorted) form of the divisor.
    pub divisor: String,
    /// Display name used in the text rendering, "f" by default.
    pub symbol: String,
    pub dimension: usize,
    pub order_name: String,
    pub kmax: u32,
    pub generator_count: usize,
    pub saito: SaitoSection,
    pub brackets: Vec<BracketSection>,
    pub qh: QhSection,
    pub duality: DualitySection,
    pub resolution: ResolutionSection,
    pub grf: GrfSection,
    pub ext2: Option<Ext2Section>,
    pub annihilator_containment: bool,
    pub lct: LctSection,
    pub external_facts: Option<ExternalFacts>,
    pub timing_micros: u64,
}

/// Stable structured rendering; `parse_structured` inverts it.
pub fn emit_structured(report: &CurveReport) -> String {
    serde_json::to_string_pretty(report).expect("serializable report")
}

pub fn parse_structured(text: &str) -> Result<CurveReport> {
    serde_json::from_str(text)
        .map_err(|e| EngineError::Input(format!("malformed structured report: {e}")))
}

fn bracket_display(alpha: &[Poly], vars: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, a) in alpha.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if let Some(c) = a.as_constant() {
            use num::One;
            if c.is_one() {
                parts.push(format!("δ{}", k + 1));
                continue;
            }
            if (-c.clone()).is_one() {
                parts.push(format!("-δ{}", k + 1));
                continue;
            }
        }
        parts.push(format!("{} δ{}", pretty_poly_atom(a, vars), k + 1));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cofactor_display(a: &Poly, vars: &[String], symbol: &str) -> String {
    if a.is_zero() {
        "0".to_string()
    } else {
        format!("{} {}", pretty_poly_atom(a, vars), symbol)
    }
}

/// Text rendering in presentation order.
pub fn emit_text(r: &CurveReport) -> String {
    let vars = &r.vars;
    let sym = &r.symbol;
    let mut out = String::new();
    let divisor_pretty = r.divisor.clone();
    out.push_str(&format!("divisor {sym} = {divisor_pretty}\n"));
    out.push_str(&format!(
        "vars {} | order {} | kmax {} | engine {}\n\n",
        vars.join(", "),
        r.order_name,
        r.kmax,
        r.engine_version
    ));

    out.push_str(&format!(
        "Saito basis ({} generators computed, unit {}):\n",
        r.generator_count, r.saito.unit
    ));
    for (i, d) in r.saito.derivations.iter().enumerate() {
        out.push_str(&format!("  δ{} = {}\n", i + 1, pretty_operator(d, vars)));
    }
    out.push_str(&format!(
        "  determinant = unit · {sym}: {}\n",
        verdict_word(r.saito.determinant_is_unit_multiple)
    ));
    out.push_str("cofactors:\n");
    for (i, a) in r.saito.cofactors.iter().enumerate() {
        out.push_str(&format!(
            "  δ{}({sym}) = {}\n",
            i + 1,
            cofactor_display(a, vars, sym)
        ));
    }

    out.push_str("brackets:\n");
    for b in &r.brackets {
        out.push_str(&format!(
            "  [δ{}, δ{}] = {}\n",
            b.i + 1,
            b.j + 1,
            bracket_display(&b.alpha, vars)
        ));
    }

    match &r.resolution {
        ResolutionSection::Curve { phi_composition_zero, psi_composition_zero, symbol_regular } => {
            out.push_str("resolution:\n");
            out.push_str(&format!(
                "  φ2 ∘ φ1 = 0: {}\n  ψ2 ∘ ψ1 = 0: {}\n  symbol regular sequence: {}\n",
                verdict_word(*phi_composition_zero),
                verdict_word(*psi_composition_zero),
                verdict_word(*symbol_regular)
            ));
        }
        ResolutionSection::Surface {
            first_syzygies_match_relations,
            second_syzygies,
            composition_zero,
            ..
        } => {
            out.push_str("syzygies:\n");
            out.push_str(&format!(
                "  first syzygies = bracket relations: {}\n",
                verdict_word(*first_syzygies_match_relations)
            ));
            for s in second_syzygies {
                for (i, entry) in s.iter().enumerate() {
                    out.push_str(&format!(
                        "  s{} = {}\n",
                        i + 1,
                        pretty_operator(entry, vars)
                    ));
                }
            }
            out.push_str(&format!(
                "  composition with relation matrix vanishes: {}\n",
                verdict_word(*composition_zero)
            ));
        }
    }

    out.push_str("duality:\n");
    for (i, g) in r.duality.transposed_generators.iter().enumerate() {
        out.push_str(&format!("  t{} = {}\n", i + 1, pretty_operator(g, vars)));
    }
    out.push_str(&format!(
        "  transposed generators span the shifted ideal: {}\n",
        verdict_word(r.duality.equal)
    ));
    out.push_str(&format!(
        "  fingerprints {}..{} vs {}..{}\n",
        &r.duality.transposed_fingerprint[..8],
        &r.duality.transposed_fingerprint[56..],
        &r.duality.shifted_fingerprint[..8],
        &r.duality.shifted_fingerprint[56..],
    ));
    if let Some(ids) = r.duality.operator_identities {
        out.push_str(&format!("  operator identities: {}\n", verdict_word(ids)));
    }

    out.push_str("graded (symbol) data:\n");
    let symbol_vars = symbol_var_names(vars);
    for (i, s) in r.grf.symbols.iter().enumerate() {
        out.push_str(&format!("  σ{} = {}\n", i + 1, pretty_poly(s, &symbol_vars)));
    }
    out.push_str(&format!(
        "  regular sequence: {}\n",
        verdict_word(r.grf.regular)
    ));
    if let Some(w) = &r.grf.witness {
        out.push_str(&format!("  witness: {}\n", pretty_poly(w, &symbol_vars)));
        if let (Some(a), Some(b)) =
            (r.grf.witness_outside_pair, r.grf.witness_times_last_inside_pair)
        {
            out.push_str(&format!(
                "  witness outside the pair ideal: {}\n  witness·σ{} inside the pair ideal: {}\n",
                verdict_word(a),
                r.grf.symbols.len(),
                verdict_word(b)
            ));
        }
    }
    out.push_str(&format!(
        "  symbol ideals of plain and shifted generators agree: {}\n",
        verdict_word(r.grf.symbol_ideals_equal)
    ));

    out.push_str(&format!(
        "quasi-homogeneous: {}",
        if r.qh.quasi_homogeneous { "yes" } else { "no" }
    ));
    if let Some(w) = &r.qh.unit_cofactor {
        out.push_str(&format!(" (witness cofactor {})", pretty_poly(w, vars)));
    }
    out.push('\n');

    if let Some(probe) = &r.ext2 {
        match probe.first_unsolvable {
            None => out.push_str(&format!(
                "ext2 jet probe: solvable at every K ≤ {}\n",
                probe.solvable.len()
            )),
            Some(k) => out.push_str(&format!(
                "ext2 jet probe: first unsolvable K = {k} (certificate of a nonzero obstruction)\n"
            )),
        }
    }
    out.push_str(&format!(
        "containment of the shifted ideal in Ann(1/{sym}): {}\n",
        verdict_word(r.annihilator_containment)
    ));
    if let Some(facts) = &r.external_facts {
        out.push_str(&format!(
            "external facts: b(s) = {} ({}); {}\n",
            facts.b_function, facts.b_function_note, facts.annihilator_equality_note
        ));
    }
    out.push_str(&format!("verdict: {}\n", r.lct.note));
    out.push_str(&format!("timing: {} µs\n", r.timing_micros));
    out
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "verified"
    } else {
        "FAILED"
    }
}

/// Symbol variable names: ξ, η, ζ for up to three variables, ξ1.. beyond.
pub fn symbol_var_names(vars: &[String]) -> Vec<String> {
    let greek = ["ξ", "η", "ζ"];
    let mut out: Vec<String> = vars.to_vec();
    for i in 0..vars.len() {
        if i < greek.len() && vars.len() <= 3 {
            out.push(greek[i].to_string());
        } else {
            out.push(format!("ξ{}", i + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_names_for_three_vars() {
        let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        assert_eq!(
            symbol_var_names(&vars),
            vec!["x", "y", "z", "ξ", "η", "ζ"]
        );
    }
}
