//! Computational group theory over prime fields for affine rank-3 questions:
//! dense linear algebra, matrix groups, modules, first cohomology and
//! complements, parabolic block scenes, verified group fixtures and a
//! verification harness.

pub mod gf;
pub mod grp;
pub mod module;
pub mod cohom;
pub mod fixtures;
pub mod scene;
pub mod harness;
