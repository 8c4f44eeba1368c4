//! Exact-arithmetic library for plurigraph coloring and its chromatic
//! symmetric function in noncommuting variables.
//!
//! A *plurigraph* is a vertex set together with a multiset of graphs
//! ("pluriedges") on that vertex set; a coloring is proper when every
//! pluriedge has a non-monochromatic edge. This crate implements:
//!
//! * set partitions and set compositions of `[n]` with the refinement
//!   lattice and the induction (`↑`) / contraction (`↓`) operators
//!   ([`setpart`]),
//! * sparse integer linear algebra over the monomial and powersum bases
//!   of NCSym and the monomial basis of NCQSym ([`ncalg`]),
//! * plurigraphs, proper coloring, deletion-contraction, and three
//!   independent algorithms for the chromatic nc-symmetric function
//!   ([`plurigraph`]),
//! * the boolean scheduling DSL, its nc-quasisymmetric function, and the
//!   scheduling deletion-contraction law ([`scheduling`]),
//! * encodings of graph, hypergraph, simplicial, oriented, acyclic, and
//!   star coloring as plurigraph coloring ([`encodings`]),
//! * hypertree structure theory, the commutative chromatic symmetric
//!   function, degree-sequence recovery, isomorphism testing, and the
//!   built-in 21-vertex counterexample pairs ([`hypertree`]).
//!
//! All coefficients are exact arbitrary-precision integers. Every value is
//! immutable after construction and every operation is a pure function, so
//! values are safe to share across threads.

pub mod caps;
pub mod encodings;
mod error;
pub mod hypertree;
pub mod ncalg;
pub mod plurigraph;
pub mod scheduling;
pub mod setpart;

pub use error::{Error, Result};
