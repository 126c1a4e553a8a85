//! Block linkage for finite-dimensional representations: two tensor products
//! of shifted fundamental representations are linked exactly when their
//! elliptic central characters agree.

pub mod moves;
pub mod relations;
pub mod search;
pub mod subreps;
pub mod tensor;

pub use moves::{lemma_moves, Move};
pub use relations::{build_t, verify_relations, RelationReport, TMatrix, Verdict};
pub use search::{fund_match, product_match_search, table2, FundMatch, ProductMatch, Table2Row, Target};
pub use subreps::{subrep_identities, SubrepCheck, SubrepFact};
pub use tensor::{ecc, linked, Ecc, Factor, TensorSpec};
