pub mod admissibility;
pub mod closedness;
pub mod grouplog;
pub mod linalg;
pub mod scalar;
pub mod structure;
pub mod verdict;
