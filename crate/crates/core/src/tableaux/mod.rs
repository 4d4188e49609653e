//! Young diagrams, tableaux and the orders on them.

mod shape;
mod tableau;

pub use shape::{Composition, Node, Partition};
pub use tableau::{row_standard_tableaux, standard_tableaux, Tableau};
