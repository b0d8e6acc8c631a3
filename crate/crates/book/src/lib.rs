//! Compiles every chapter of the guide in `book/src` as a doc-test, so
//! `cargo test --doc` keeps the listings honest.

#[cfg(doctest)]
macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

#[cfg(doctest)]
chapters! {
    intro => "intro.md",
    matrices => "matrices.md",
    concepts => "concepts.md",
    essential => "essential.md",
    greess => "greess.md",
    baselines => "baselines.md",
    experiments => "experiments.md",
    cli => "cli.md",
}
