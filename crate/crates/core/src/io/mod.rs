pub mod export;
pub mod spec;
pub mod svg;
