//! The fourteen symplectic half-flat algebras, their closed extensions, the
//! worked examples and the lattice identities.

mod entries;
mod examples;
mod lattice;
mod table1;

pub use entries::{
    find_entry, fmou_catalog, CatalogEntry, FreeConstant, SolvedDisplay, VariantCheck, VariantSource,
};
pub use examples::{verify_examples, Claim, ClaimStatus, ExampleReport, ExamplesReport, SignVariant};
pub use lattice::{check_fixture, golden_square, lattice_check, lattice_fixture, LatticeCheck, LatticeData, LatticeReport};
pub use table1::{reproduce_table1, table1_row, table1_row_at, Table1Report, Table1Row};
