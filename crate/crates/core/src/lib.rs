pub mod error;
pub mod exactpoly;
pub mod filtration;
pub mod hecke;
pub mod murphy;
pub mod suite;
pub mod symgroup;
pub mod tableaux;

pub use error::{Error, Result};
pub use exactpoly::{LaurentPoly, RationalFunction};
pub use hecke::HeckeElement;
pub use symgroup::Permutation;
pub use tableaux::{Composition, Node, Partition, Tableau};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/laurent.md")]
    mod laurent {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/tableaux.md")]
    mod tableaux {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/murphy.md")]
    mod murphy {}
    #[doc = include_str!("../../../book/src/garnir.md")]
    mod garnir {}
    #[doc = include_str!("../../../book/src/filtration.md")]
    mod filtration {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
