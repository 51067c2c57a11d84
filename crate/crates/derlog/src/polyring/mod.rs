//! Exact multivariate polynomial arithmetic over the rationals with
//! commutative Gröbner bases, syzygies, membership and ideal quotients.

pub mod groebner;
pub mod monomial;
pub mod order;
pub mod poly;

pub use groebner::{
    buchberger_commutative, ideal_intersection, ideal_member, ideal_member_gb, ideal_quotient,
    is_squarefree, module_equal, module_groebner, module_member, poly_gcd, poly_reduce,
    regular_sequence_check, syzygy_module, PolyVector,
};
pub use monomial::Monomial;
pub use order::{ModuleOrder, ModuleScheme, OrderKind, TermOrder};
pub use poly::{int, rat, Poly};
