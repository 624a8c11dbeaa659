//! Named structure files bundled with the library. Every check in a fixture
//! carries its expected verdict.

use crate::error::Result;
use crate::structure::{parse, StructureFile};

const FIXTURES: &[(&str, &str)] = &[
    ("b-transform-r4", include_str!("b-transform-r4.toml")),
    ("broken-algebroid", include_str!("broken-algebroid.toml")),
    ("broken-cocycle", include_str!("broken-cocycle.toml")),
    ("broken-double-r2", include_str!("broken-double-r2.toml")),
    ("broken-quadruple-r4", include_str!("broken-quadruple-r4.toml")),
    ("complex-r2", include_str!("complex-r2.toml")),
    ("conformal-defects-r4", include_str!("conformal-defects-r4.toml")),
    ("conformal-symplectic-r4", include_str!("conformal-symplectic-r4.toml")),
    ("contact-defects-r3", include_str!("contact-defects-r3.toml")),
    ("contact-jacobi-e1", include_str!("contact-jacobi-e1.toml")),
    ("non-jacobi-r3", include_str!("non-jacobi-r3.toml")),
    ("nonintegrable-r4", include_str!("nonintegrable-r4.toml")),
    ("poisson-type-r4", include_str!("poisson-type-r4.toml")),
    ("std-contact-r3", include_str!("std-contact-r3.toml")),
    ("symplectic-r2", include_str!("symplectic-r2.toml")),
];

/// Fixture names in sorted order.
pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// The TOML source of a fixture.
pub fn source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Option<Result<StructureFile>> {
    source(name).map(parse)
}
