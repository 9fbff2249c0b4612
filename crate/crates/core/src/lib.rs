pub mod certificate;
pub mod curve;
pub mod document;
pub mod gallery;
pub mod graph;
pub mod group;
pub mod perm;
pub mod report;
