use super::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// The comparison kind of a term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
}

/// A multiplicative total well-ordering on monomials.
///
/// `weights`, when present, are compared first (weighted degree), which
/// yields elimination orders: give weight 1 to the variables to eliminate
/// and 0 to the rest. `priority`, when present, permutes variables before
/// comparison, so `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub weights: Option<Vec<u64>>,
    pub priority: Option<Vec<usize>>,
}

impl TermOrder {
    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, weights: None, priority: None }
    }

    pub fn grlex() -> Self {
        TermOrder { kind: OrderKind::GrLex, weights: None, priority: None }
    }

    pub fn grevlex() -> Self {
        TermOrder { kind: OrderKind::GrevLex, weights: None, priority: None }
    }

    /// Grevlex refined by a weight vector compared first. With a 0/1
    /// weight vector this is the usual elimination order for the
    /// variables of weight 1.
    pub fn weighted_elimination(weights: Vec<u64>) -> Self {
        TermOrder { kind: OrderKind::GrevLex, weights: Some(weights), priority: None }
    }

    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        self.priority = Some(priority);
        self
    }

    fn exp<'a>(&self, m: &'a Monomial, i: usize) -> u32 {
        match &self.priority {
            Some(p) => m.0[p[i]],
            None => m.0[i],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        if let Some(w) = &self.weights {
            let wa: u64 = a.0.iter().zip(w).map(|(e, w)| *e as u64 * w).sum();
            let wb: u64 = b.0.iter().zip(w).map(|(e, w)| *e as u64 * w).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        let n = a.nvars();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    match self.exp(a, i).cmp(&self.exp(b, i)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for i in 0..n {
                        match self.exp(a, i).cmp(&self.exp(b, i)) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
            OrderKind::GrevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    // ties broken by the smallest trailing exponent: the
                    // monomial with the larger rightmost differing entry
                    // is the smaller one
                    for i in (0..n).rev() {
                        let (ea, eb) = (self.exp(a, i), self.exp(b, i));
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }
}

/// How module positions enter the comparison of module terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleScheme {
    /// Position over term: lower component index always wins.
    Pot,
    /// Term over position: the scalar order decides, components break ties.
    Top,
}

/// A term order extended to free-module terms `(component, monomial)`.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    pub scheme: ModuleScheme,
    pub order: TermOrder,
    /// Degree shifts per component, added to the monomial degree in
    /// graded comparisons under `Top`.
    pub shifts: Option<Vec<u32>>,
}

impl ModuleOrder {
    pub fn pot(order: TermOrder) -> Self {
        ModuleOrder { scheme: ModuleScheme::Pot, order, shifts: None }
    }

    pub fn top(order: TermOrder) -> Self {
        ModuleOrder { scheme: ModuleScheme::Top, order, shifts: None }
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.scheme {
            ModuleScheme::Pot => match a.0.cmp(&b.0) {
                // lower component index is the greater module term
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => self.order.cmp(a.1, b.1),
            },
            ModuleScheme::Top => {
                if let Some(sh) = &self.shifts {
                    let da = a.1.degree() + sh[a.0];
                    let db = b.1.degree() + sh[b.0];
                    match da.cmp(&db) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                match self.order.cmp(a.1, b.1) {
                    Ordering::Equal => match a.0.cmp(&b.0) {
                        Ordering::Less => Ordering::Greater,
                        Ordering::Greater => Ordering::Less,
                        Ordering::Equal => Ordering::Equal,
                    },
                    ord => ord,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn lex_compares_first_difference() {
        let o = TermOrder::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn grevlex_standard_examples() {
        let o = TermOrder::grevlex();
        // x^2 y z > x y^2 z under grevlex with x > y > z? degrees equal,
        // rightmost difference is y-slot: 1 vs 2, larger trailing loses.
        assert_eq!(o.cmp(&m(&[2, 1, 1]), &m(&[1, 2, 1])), Ordering::Greater);
        // x z > y^2 in grlex but y^2 > x z in plain lex-degree tie rules:
        // grevlex: deg equal, rightmost diff at z: 1 vs 0 so x z loses.
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_weight_dominates() {
        // eliminate the last variable
        let o = TermOrder::weighted_elimination(vec![0, 0, 1]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
    }

    #[test]
    fn pot_component_dominates() {
        let o = ModuleOrder::pot(TermOrder::grevlex());
        assert_eq!(o.cmp((0, &m(&[0, 0])), (1, &m(&[7, 7]))), Ordering::Greater);
    }
}
