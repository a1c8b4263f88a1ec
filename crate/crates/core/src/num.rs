//! Exact integer scalars and two-dimensional vectors.
//!
//! Everything in this crate is exact. The [`Scalar`] trait abstracts over the
//! integer type used for coordinates so the geometric code (cones, cross
//! products) can run on machine integers or on [`BigInt`] when magnitudes are
//! unbounded. Sign tests on products are computed in a wider type so they never
//! overflow.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// An exact signed integer usable as a vector coordinate.
pub trait Scalar: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display {
    /// Sign of `a.x * b.y - a.y * b.x`.
    fn cross_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering;

    /// Sign of `a.x * b.x + a.y * b.y`.
    fn dot_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering;
}

macro_rules! widened_scalar {
    ($t:ty, $wide:ty) => {
        impl Scalar for $t {
            fn cross_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering {
                let lhs = a.x as $wide * b.y as $wide;
                let rhs = a.y as $wide * b.x as $wide;
                lhs.cmp(&rhs)
            }

            fn dot_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering {
                let lhs = a.x as $wide * b.x as $wide;
                let rhs = -(a.y as $wide * b.y as $wide);
                lhs.cmp(&rhs)
            }
        }
    };
}

widened_scalar!(i32, i64);
widened_scalar!(i64, i128);

impl Scalar for BigInt {
    fn cross_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering {
        (&a.x * &b.y).cmp(&(&a.y * &b.x))
    }

    fn dot_sign(a: &Vec2<Self>, b: &Vec2<Self>) -> Ordering {
        (&a.x * &b.x + &a.y * &b.y).cmp(&BigInt::zero())
    }
}

/// A vector of ℤ² (or ℕ² when both coordinates are nonnegative).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[T; 2]", from = "[T; 2]")]
#[serde(bound(serialize = "T: Clone + Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }
}

impl<T> From<[T; 2]> for Vec2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Vec2 { x, y }
    }
}

impl<T> From<Vec2<T>> for [T; 2] {
    fn from(v: Vec2<T>) -> Self {
        [v.x, v.y]
    }
}

impl<T: Scalar> Vec2<T> {
    pub fn zero() -> Self {
        Vec2::new(T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Componentwise `self ≥ (0, 0)`.
    pub fn is_nonneg(&self) -> bool {
        !self.x.is_negative() && !self.y.is_negative()
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.x >= other.x && self.y >= other.y
    }

    /// Divides out the gcd of the coordinates. The zero vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.x.gcd(&self.y);
        if g.is_zero() {
            return self.clone();
        }
        Vec2::new(self.x.div_floor(&g), self.y.div_floor(&g))
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Self {
        Vec2::new(-self.y.clone(), self.x.clone())
    }

    pub fn cross_sign(&self, other: &Self) -> Ordering {
        T::cross_sign(self, other)
    }

    pub fn dot_sign(&self, other: &Self) -> Ordering {
        T::dot_sign(self, other)
    }

    /// Compares the counterclockwise angle from the positive x-axis, in `[0°, 360°)`.
    /// Both vectors must be nonzero.
    pub fn angle_cmp(&self, other: &Self) -> Ordering {
        let half = |v: &Self| {
            if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
                0
            } else {
                1
            }
        };
        half(self)
            .cmp(&half(other))
            .then_with(|| other.cross_sign(self))
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Vec2<T>;

    fn add(self, rhs: Self) -> Self {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<'a, T: Scalar> Add<&'a Vec2<T>> for &'a Vec2<T> {
    type Output = Vec2<T>;

    fn add(self, rhs: &Vec2<T>) -> Vec2<T> {
        Vec2::new(self.x.clone() + rhs.x.clone(), self.y.clone() + rhs.y.clone())
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Vec2<T>;

    fn sub(self, rhs: Self) -> Self {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<'a, T: Scalar> Sub<&'a Vec2<T>> for &'a Vec2<T> {
    type Output = Vec2<T>;

    fn sub(self, rhs: &Vec2<T>) -> Vec2<T> {
        Vec2::new(self.x.clone() - rhs.x.clone(), self.y.clone() - rhs.y.clone())
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Vec2<T>;

    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<T: fmt::Display> fmt::Display for Vec2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Vec2<i64> {
    /// `Σ counts[i] · gens[i]`.
    pub fn combination(gens: &[Vec2<i64>], counts: &[u64]) -> Vec2<i64> {
        debug_assert_eq!(gens.len(), counts.len());
        gens.iter()
            .zip(counts)
            .fold(Vec2::zero(), |acc, (g, &n)| {
                let n = n as i64;
                Vec2::new(acc.x + n * g.x, acc.y + n * g.y)
            })
    }
}
