//! Positive definite binary quadratic forms `[a, b, c] = ax² + bxy + cy²`.

use super::HeegnerError;
use crate::arith::ext_gcd;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    /// `b² − 4ac`
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_primitive(&self) -> bool {
        let g = crate::arith::gcd(self.a.unsigned_abs(), self.b.unsigned_abs());
        crate::arith::gcd(g, self.c.unsigned_abs()) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && !(self.b < 0 && (self.b.abs() == self.a || self.a == self.c))
    }

    /// `[a, −b, c]`, the inverse class.
    pub fn inverse(&self) -> Form {
        Form::new(self.a, -self.b, self.c)
    }

    /// The principal form of discriminant `−d`.
    pub fn principal(d: u64) -> Form {
        let d = d as i64;
        if d % 4 == 3 {
            Form::new(1, 1, (1 + d) / 4)
        } else {
            Form::new(1, 0, d / 4)
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// The reduced form in the `SL₂(Z)`-class of `f`.
pub fn reduce_form(f: Form) -> Result<Form, HeegnerError> {
    if !f.is_positive_definite() {
        return Err(HeegnerError::NotPositiveDefinite(f));
    }
    let d = -(f.discriminant() as i128);
    let (mut a, mut b) = (f.a as i128, f.b as i128);
    let mut c = f.c as i128;
    loop {
        if b > a || b <= -a {
            // b ↦ b + 2at into (−a, a]
            let r = (b + a - 1).rem_euclid(2 * a);
            b = r - a + 1;
            c = (b * b + d) / (4 * a);
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if a == c && b < 0 {
        b = -b;
    }
    Ok(Form::new(a as i64, b as i64, c as i64))
}

/// Gauss composition, reduced. Follows the classical algorithm in Cohen's
/// *A Course in Computational Algebraic Number Theory*, Alg. 5.4.7.
pub fn compose(f: Form, g: Form) -> Result<Form, HeegnerError> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(HeegnerError::DiscriminantMismatch { left: disc, right: g.discriminant() });
    }
    if !f.is_positive_definite() {
        return Err(HeegnerError::NotPositiveDefinite(f));
    }
    if !g.is_positive_definite() {
        return Err(HeegnerError::NotPositiveDefinite(g));
    }
    let (f1, f2) = if f.a > g.a { (g, f) } else { (f, g) };
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (d, y1) = if a2 % a1 == 0 {
        (a1, 0)
    } else {
        let (d, u, _) = ext_gcd(a2, a1);
        (d, u)
    };
    let (d1, x2, y2) = if s % d == 0 {
        (d, 0, -1)
    } else {
        let (d1, u, v) = ext_gcd(s, d);
        (d1, u, -v)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - disc as i128) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, disc as i128);
    reduce_form(Form::new(a3 as i64, b3 as i64, c3 as i64))
}
