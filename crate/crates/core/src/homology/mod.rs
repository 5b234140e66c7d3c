//! Modules, the Chevalley-Eilenberg complex, Ext against `UL`, grade and depth.

mod complex;
mod ext;
mod module;

pub use complex::*;
pub use ext::*;
pub use module::*;

#[cfg(test)]
mod tests;
