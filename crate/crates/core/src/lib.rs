pub mod blocks;
pub mod cache;
pub mod cartan;
pub mod divisor;
pub mod error;
pub mod linalg;
pub mod mq;
pub mod qpoly;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/cartan.md")]
    mod cartan {}
    #[doc = include_str!("../../../book/src/mq.md")]
    mod mq {}
    #[doc = include_str!("../../../book/src/divisors.md")]
    mod divisors {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/linkage.md")]
    mod linkage {}
    #[doc = include_str!("../../../book/src/searches.md")]
    mod searches {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
