//! Persistence and report output.

pub mod heatmap;
pub mod level_file;
pub mod reports;

pub use heatmap::{render_heatmap, Heatmap};
pub use level_file::{load_level, load_store, read_level, save_level, save_store, write_level};
pub use reports::{export_reports, format_sig9};
