//! Acceptance checks for `wheelhouse` live in `tests/acceptance.rs`.
