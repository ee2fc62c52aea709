//! Concrete pseudoalgebras and modules.

mod current;
mod gc;
mod modules;
mod rank1;
mod sd;
mod wd;

pub use current::Current;
pub use gc::{wd_to_gc1, Cend, CendKey, CendModule, Gamma, Gc, GcModule};
pub use modules::VModule;
pub use rank1::{
    check_ybe, defining_beta, embed_rank1_in_wd, embedding_trace_form, make_rank1, rank1_module_check,
    rank1_module_residual, Rank1Datum,
};
pub use sd::{split_right, PairKey, Sd};
pub use wd::{as_tensor, check_div2, div2, divergence, validate_trace_form, Wd, WdOnH};
