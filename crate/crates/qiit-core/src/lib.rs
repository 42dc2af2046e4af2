//! Compiler for quotient inductive-inductive signatures.
//!
//! A signature is a telescope in a small type theory with a universe of
//! sorts, inductive/external/infinitary function spaces and an equality
//! code. This crate checks signature sources, derives the types of
//! algebras, displayed algebras, sections, homomorphisms and induction
//! principles for a checked signature, renders them as text or structured
//! data, and builds desk-scale free term algebras for the equation-free
//! finitary fragment.

pub mod corpus;
pub mod elab;
pub mod emit;
pub mod kernel;
pub mod siggen;
pub mod surface;
pub mod termmodel;
pub mod translate;
