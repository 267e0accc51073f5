//! Clifford algebra of Majorana generators and its Jordan-Wigner image.

mod expansion;
mod monomial;
mod pauli;
mod phase;
mod register;

pub use expansion::{
    expand_in_monomials, expand_on_register, support_profile, OperatorExpansion, DEFAULT_THRESHOLD,
};
pub use monomial::{masks_commute, monomial_product, monomials_commute, Monomial, MAX_GENERATORS};
pub use pauli::{jordan_wigner, monomial_to_pauli, PauliString, PauliSum};
pub use phase::Phase;
pub use register::{Layout, Normalization, Register, Side};
