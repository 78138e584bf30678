//! Exact quadratic-form arithmetic over Q and prime fields: local invariants,
//! Witt-ring decisions, Pfister decompositions, the Clifford 2-groups `G_n`
//! and evaluators for essential-dimension and Pfister-number bounds.

pub mod bounds;
pub mod clifford;
pub mod error;
pub mod field;
pub mod forms;
pub mod group;
pub mod io;
pub mod pfister;
pub mod sample;
pub mod selftest;
pub mod table;
pub mod witt;

pub use error::{Error, Result};
pub use field::{BaseField, FieldElem, Fp, Place, Rational, Sign};
pub use forms::{diagonalize, DiagonalForm, WittInvariants};
pub use pfister::{
    assemble_phi, decompose_i1, decompose_i2, expand_pfister, pfister_number_upper_fp, pure_part, witt_sum,
    PfisterSlots,
};
pub use witt::{anisotropic_kernel_fp, ideal_membership, is_hyperbolic, witt_equivalent, IdealLevel};

/// Forms over Q.
pub type RationalForm = DiagonalForm<Rational>;
/// Forms over a prime field.
pub type FpForm = DiagonalForm<Fp>;

pub use bounds::{
    chernousov_serre_lower, grassmannian_penalty, hspin_value, merkurjev_lower, pfister3_lower_bound, quadratic_check,
    quadratic_value, r_plus, rost_table, spin_lower, spin_rep_dimension, spin_upper, tn_interval, BoundReport,
    BoundValue, Parity, RangePolicy, RealWitness,
};
pub use clifford::{
    cliff_mul, ed_of_clifford_group, group_summary, group_summary_brute, pair_commutator, CenterKind, CliffordElement,
    CliffordGroup, GroupSummary,
};
pub use group::{analyze, ed_formula, FiniteGroup, GroupStructure};
pub use table::{render_table, TableKind};
