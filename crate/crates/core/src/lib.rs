//! Graded Lie algebras over Q and F_p (p odd): dimension series, presentations,
//! enveloping algebras, Chevalley-Eilenberg homology and depth/grade
//! computations.

pub mod error;
pub mod field;
pub mod linalg;
pub mod series;
pub mod lie;
pub mod presentation;
pub mod enveloping;
pub mod homology;
pub mod analysis;
pub mod io;
