//! Colored succession rules with exact counting and uniform path sampling,
//! and the active-site realizer for `Av(1423, 4123)`.

pub mod av1423;
pub mod clt;
pub mod count;
mod error;
pub mod rule;

pub use av1423::{active_sites_brute, read_path_1423_4123, realize_1423_4123, Growth};
pub use clt::{clt_scan, clt_scan_1423_4123, CltRow, MIN_REPS};
pub use count::{count_table, sample_path, CountTable, PathSampler, EXACT_LIMIT};
pub use error::GenTreeError;
pub use rule::{enumerate_paths, Builtin, ChildItem, Children, ColoredLabel, LabelExpr, LabelPath, SuccessionRule, DEFAULT_LABEL_CAP};
