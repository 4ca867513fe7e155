//! Fixtures, file formats and rendering.

pub mod fixtures;
pub mod format;
pub mod heatmap;

pub use format::{load_category, load_module, save_category, save_module, CategoryFile, ModuleFile};
pub use heatmap::{flatten_f, render_pgm, render_svg, HeatmapOptions};
