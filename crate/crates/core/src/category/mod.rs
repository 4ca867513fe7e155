//! Skeletal fusion and module category data.

pub mod align;
pub mod conventions;
pub mod data;
pub mod gauge;
pub mod pentagon;
pub mod ring;
pub mod symbols;

pub use conventions::{check_gauge_conventions, ConventionReport};
pub use data::{FusionCategoryData, ModuleCategoryData};
pub use gauge::{apply_gauge, apply_module_gauge, GaugeTransform};
pub use pentagon::{module_pentagon_residual, pentagon_residual};
pub use ring::{FusionAction, FusionRing, ModuleFusion};
pub use symbols::{Block, BlockKey, SymbolTable, Tree};
