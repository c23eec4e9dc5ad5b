pub mod domain;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod grammar;
pub mod implsynth;
pub mod ir;
pub mod manifest;
pub mod pipeline;
pub mod report;
pub mod rewrite;
pub mod sexp;
pub mod specsynth;
pub mod term;
