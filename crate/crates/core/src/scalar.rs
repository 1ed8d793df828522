use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer type that the lattice and group arithmetic is generic over.
///
/// Implemented for every signed integer satisfying the bounds, in particular
/// `i64`, `i128` and [`num_bigint::BigInt`].
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
