//! Representations of tensor diagrams: exact linear algebra, diagram
//! surgery, the finite/tame/wild classification, decomposition of tame
//! representations into indecomposables, flows, and wildness embeddings.

pub mod classify;
pub mod decompose;
pub mod exactalg;
pub mod flows;
pub mod generate;
pub mod io;
pub mod representation;
pub mod semigraph;
pub mod tensor;
pub mod wildness;

pub use classify::{classify_connected, classify_diagram, find_forbidden_witness, DiagramClass, Shape, WildWitness, WitnessKind};
pub use decompose::{decompose, isomorphic, realize, realize_sum, DecompError, Decomposition, IndecompDescriptor, PathAlias};
pub use exactalg::{RatMatrix, RatPoly, Rational};
pub use flows::{extend_flow, verify_partial_flow, FlowAssignment, FlowError};
pub use generate::{gen_random, GenMode, Generated, SeededStream};
pub use representation::{Dims, RepError, Representation, WireMaps};
pub use semigraph::{shapes, SubdiagramRef, TensorDiagram, Wire};
pub use wildness::MatrixPair;
