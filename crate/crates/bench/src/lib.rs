//! Fixed benchmark inputs shared by the criterion benches.

use ba_core::{random_very_good, Field, Matrix};

pub const DIAMETERS: [usize; 3] = [4, 8, 12];

pub fn rational() -> Field {
    Field::Rational
}

pub fn gf101() -> Field {
    Field::prime(101).expect("101 is prime")
}

/// A very good matrix that is the same on every run.
pub fn fixture(d: usize, field: Field) -> Matrix {
    random_very_good(d, field, 0x5eed + d as u64)
}
