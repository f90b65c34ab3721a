//! Holds the `acceptance` test target, which checks every acceptance
//! criterion of `pidc` and prints one PASS/FAIL line for each.
//!
//! It shares the brute-force oracles of the `pidc` integration tests and is
//! run with `cargo test -p pidc-criteria --test acceptance`.
