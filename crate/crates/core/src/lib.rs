//! Leavitt path algebras of finite directed graphs: graph structure,
//! simplicity and almost-simplicity classification, normal-form arithmetic
//! over the rationals, and commutator brackets of skew-symmetric elements.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod graph;
pub mod laurent;
pub mod lie;
pub mod span;
