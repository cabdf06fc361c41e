//! Determinantal facet ideals, Gröbner bases under the matrix lex order, and
//! interval-type classes of simplicial complexes and graphs.

pub mod formats;
pub mod graphs;
pub mod groebner;
pub mod harness;
pub mod polyring;
pub mod scomplex;
pub mod sortable;
pub mod symmatrix;
pub mod vset;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] polyring::PolyError),
    #[error(transparent)]
    Matrix(#[from] symmatrix::MatrixError),
    #[error(transparent)]
    Groebner(#[from] groebner::GroebnerError),
    #[error(transparent)]
    Complex(#[from] scomplex::ComplexError),
    #[error(transparent)]
    Graph(#[from] graphs::GraphError),
    #[error(transparent)]
    Sort(#[from] sortable::SortError),
    #[error(transparent)]
    Format(#[from] formats::FormatError),
}
