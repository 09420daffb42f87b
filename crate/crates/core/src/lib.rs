pub mod bch;
pub mod cohomology;
pub mod corpus;
pub mod format;
pub mod lhs;
pub mod lie;
pub mod modarith;
pub mod report;
