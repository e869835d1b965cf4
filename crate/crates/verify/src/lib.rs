//! Holds the acceptance suite in `tests/acceptance.rs`; the package name sorts last so it runs after every other suite.
