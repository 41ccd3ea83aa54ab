//! Colour admissibility for reductions of orbifolds.
//!
//! A reduction sphere meets the coloured singular graph in at most three
//! points. The profile of colours at those points decides whether the
//! reduction is allowed: no single points, pairs only of equal colour, and
//! triples only of the forms `(2, 2, n)` and `(2, 3, k)` with `3 <= k <= 5`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("colour {0} is not an integer greater than 1")]
    InvalidColor(u64),
    #[error("a profile has at most 3 points, got {0}")]
    ProfileTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u64);

impl Color {
    pub fn new(value: u64) -> Result<Self, ColorError> {
        if value >= 2 {
            Ok(Color(value))
        } else {
            Err(ColorError::InvalidColor(value))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Color {
    type Error = ColorError;

    fn try_from(value: u64) -> Result<Self, Self::Error> {
        Color::new(value)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Colours of the points where a sphere crosses the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile(Vec<Color>);

impl IntersectionProfile {
    pub fn new(colors: impl Into<Vec<Color>>) -> Result<Self, ColorError> {
        let colors = colors.into();
        if colors.len() > 3 {
            return Err(ColorError::ProfileTooLarge(colors.len()));
        }
        Ok(IntersectionProfile(colors))
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn is_admissible(&self) -> bool {
        profile_admissible(&self.0).expect("size checked on construction")
    }
}

pub fn pair_admissible(a: Color, b: Color) -> bool {
    a == b
}

pub fn triple_admissible(a: Color, b: Color, c: Color) -> bool {
    let mut t = [a.0, b.0, c.0];
    t.sort_unstable();
    matches!(t, [2, 2, _] | [2, 3, 3..=5])
}

/// Admissibility of an arbitrary multiset of at most three colours. The empty
/// profile (a sphere missing the graph) is admissible.
pub fn profile_admissible(colors: &[Color]) -> Result<bool, ColorError> {
    match *colors {
        [] => Ok(true),
        [_] => Ok(false),
        [a, b] => Ok(pair_admissible(a, b)),
        [a, b, c] => Ok(triple_admissible(a, b, c)),
        _ => Err(ColorError::ProfileTooLarge(colors.len())),
    }
}
