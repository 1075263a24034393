use std::fmt;
use std::ops::Add;

/// A value of a degree map: either `-∞` (the degree of zero) or a finite value.
///
/// The derived ordering places `NegInfinity` below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree<T = i64> {
    NegInfinity,
    Finite(T),
}

impl<T> Degree<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::NegInfinity => None,
        }
    }

    pub fn as_ref(&self) -> Degree<&T> {
        match self {
            Degree::Finite(v) => Degree::Finite(v),
            Degree::NegInfinity => Degree::NegInfinity,
        }
    }
}

impl<T: Add<Output = T>> Add for Degree<T> {
    type Output = Degree<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl<T> From<T> for Degree<T> {
    fn from(v: T) -> Self {
        Degree::Finite(v)
    }
}

impl<T: fmt::Display> fmt::Display for Degree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(v) => write!(f, "{v}"),
        }
    }
}
