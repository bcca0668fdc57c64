//! Harness around the counting toolkit: seeded instance generators and the
//! identity verification suites. The `cocount` binary wires both to the
//! command line.

pub mod gen;
pub mod verify;
