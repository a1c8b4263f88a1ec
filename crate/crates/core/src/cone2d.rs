//! Exact convex cones of ℚ².
//!
//! A cone spanned by finitely many integer directions is one of six shapes.
//! Each is stored with primitive boundary directions, so structural equality
//! is semantic equality. All angle comparisons go through integer cross and
//! dot products.

use std::cmp::Ordering;

use crate::num::{Scalar, Vec2};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneralCone2<T> {
    Zero,
    Ray(Vec2<T>),
    /// Canonical direction: `x > 0`, or `x = 0` and `y > 0`.
    Line(Vec2<T>),
    /// Counterclockwise from `lo` to `hi`, strictly less than a half turn.
    Sector { lo: Vec2<T>, hi: Vec2<T> },
    /// The closed half-plane counterclockwise from `lo` to `-lo`.
    HalfPlane(Vec2<T>),
    Plane,
}

/// A cone contained in `ℚ≥0²`: `Zero`, a `Ray` or a `Sector`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadrantCone2<T>(GeneralCone2<T>);

fn axes<T: Scalar>() -> [Vec2<T>; 2] {
    [
        Vec2::new(T::one(), T::zero()),
        Vec2::new(T::zero(), T::one()),
    ]
}

impl<T: Scalar> GeneralCone2<T> {
    /// The cone of all nonnegative combinations of `dirs`.
    pub fn span<'a>(dirs: impl IntoIterator<Item = &'a Vec2<T>>) -> Self
    where
        T: 'a,
    {
        let mut d: Vec<Vec2<T>> = dirs
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(Vec2::primitive)
            .collect();
        d.sort_by(|a, b| a.angle_cmp(b));
        d.dedup();
        let n = d.len();
        match n {
            0 => return GeneralCone2::Zero,
            1 => return GeneralCone2::Ray(d.pop().unwrap()),
            _ => {}
        }
        let mut straight = Vec::new();
        for i in 0..n {
            let (a, b) = (&d[i], &d[(i + 1) % n]);
            match a.cross_sign(b) {
                // The only reflex gap: everything else fits in the complement.
                Ordering::Less => {
                    return GeneralCone2::Sector {
                        lo: b.clone(),
                        hi: a.clone(),
                    }
                }
                Ordering::Equal => straight.push(i),
                Ordering::Greater => {}
            }
        }
        match straight.as_slice() {
            [] => GeneralCone2::Plane,
            [i] => GeneralCone2::HalfPlane(d[(i + 1) % n].clone()),
            _ => GeneralCone2::Line(canonical_line(&d[0])),
        }
    }

    pub fn contains(&self, p: &Vec2<T>) -> bool {
        match self {
            GeneralCone2::Zero => p.is_zero(),
            GeneralCone2::Ray(d) => {
                d.cross_sign(p) == Ordering::Equal && d.dot_sign(p) != Ordering::Less
            }
            GeneralCone2::Line(d) => d.cross_sign(p) == Ordering::Equal,
            GeneralCone2::Sector { lo, hi } => {
                lo.cross_sign(p) != Ordering::Less && p.cross_sign(hi) != Ordering::Less
            }
            GeneralCone2::HalfPlane(lo) => lo.cross_sign(p) != Ordering::Less,
            GeneralCone2::Plane => true,
        }
    }

    /// A finite generating set whose span is `self`.
    pub fn rays(&self) -> Vec<Vec2<T>> {
        match self {
            GeneralCone2::Zero => vec![],
            GeneralCone2::Ray(d) => vec![d.clone()],
            GeneralCone2::Line(d) => vec![d.clone(), -d.clone()],
            GeneralCone2::Sector { lo, hi } => vec![lo.clone(), hi.clone()],
            GeneralCone2::HalfPlane(lo) => vec![lo.clone(), -lo.clone(), lo.perp()],
            GeneralCone2::Plane => {
                let [e1, e2] = axes();
                vec![e1, e2, Vec2::new(-T::one(), -T::one())]
            }
        }
    }

    /// `self ∩ ℚ≥0²`.
    pub fn clip_to_quadrant(&self) -> QuadrantCone2<T> {
        // Extreme rays of the intersection are extreme rays of `self` lying in
        // the quadrant or axes lying in `self`.
        let mut keep: Vec<Vec2<T>> = self.rays().into_iter().filter(Vec2::is_nonneg).collect();
        keep.extend(axes().into_iter().filter(|e| self.contains(e)));
        QuadrantCone2(GeneralCone2::span(&keep))
    }
}

fn canonical_line<T: Scalar>(d: &Vec2<T>) -> Vec2<T> {
    if d.x.is_positive() || (d.x.is_zero() && d.y.is_positive()) {
        d.clone()
    } else {
        -d.clone()
    }
}

impl<T: Scalar> QuadrantCone2<T> {
    pub fn zero() -> Self {
        QuadrantCone2(GeneralCone2::Zero)
    }

    /// `con(dirs) ∩ ℚ≥0²`.
    pub fn span_clipped<'a>(dirs: impl IntoIterator<Item = &'a Vec2<T>>) -> Self
    where
        T: 'a,
    {
        GeneralCone2::span(dirs).clip_to_quadrant()
    }

    pub fn as_cone(&self) -> &GeneralCone2<T> {
        &self.0
    }

    pub fn into_cone(self) -> GeneralCone2<T> {
        self.0
    }

    pub fn contains(&self, p: &Vec2<T>) -> bool {
        self.0.contains(p)
    }

    /// `(self + ℚ≥0·v) ∩ ℚ≥0²`.
    pub fn stabilize(&self, v: &Vec2<T>) -> Self {
        let mut dirs = self.0.rays();
        dirs.push(v.clone());
        GeneralCone2::span(&dirs).clip_to_quadrant()
    }

    pub fn is_v_stable(&self, v: &Vec2<T>) -> bool {
        self.stabilize(v) == *self
    }
}

/// The cone of `perP(a)`: zero when `a` has no nonzero element of ℕ², otherwise
/// `con(a) ∩ ℚ≥0²`.
pub fn con_p_formula<T: Scalar>(a: &[Vec2<T>]) -> QuadrantCone2<T> {
    if !a.iter().any(|v| v.is_nonneg() && !v.is_zero()) {
        return QuadrantCone2::zero();
    }
    QuadrantCone2::span_clipped(a)
}
