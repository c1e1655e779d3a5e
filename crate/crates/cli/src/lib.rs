//! Command-line front end for `ptile-core`, with a JSON-lines result cache.

pub mod app;
pub mod cache;
pub mod record;

pub use app::run;
