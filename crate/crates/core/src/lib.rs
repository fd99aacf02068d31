pub mod cli;
pub mod error;
pub mod format;
pub mod pbw;
pub mod polyseries;
pub mod rootdata;
pub mod scalar;
pub mod singvec;
pub mod weylaction;
