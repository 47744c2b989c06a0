//! Reconstruction of finite discrete groupoids from inverse semigroups of
//! their bisections, through germs of the action on the tight spectrum.
//!
//! The pipeline runs [`groupoid`] (bisections and their opaque
//! multiplication table) into [`reconstruction::reconstruct`], which only
//! sees the table: [`algebra`] validates it, [`spectrum`] finds the tight
//! characters of its idempotents and [`action`] builds the germ groupoid.
//! [`convolution`] checks the indicator representation exactly over the
//! rationals.

pub mod action;
pub mod algebra;
pub mod bits;
pub mod cli;
pub mod convolution;
pub mod corpus;
pub mod groupoid;
pub mod io;
pub mod reconstruction;
pub mod spectrum;
