//! The form class group of discriminant `−D`, tabulated.

use super::forms::{compose, reduce_form, Form};
use super::HeegnerError;
use crate::arith::is_squarefree;
use std::collections::HashMap;

/// Accepts `D > 0` with `−D` a fundamental discriminant.
pub fn is_negative_fundamental(d: u64) -> bool {
    match d % 4 {
        3 => is_squarefree(d),
        0 => {
            let m = d / 4;
            (m % 4 == 1 || m % 4 == 2) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Reduced representatives, ordered by `(a, |b|, sign b)`, with the principal
/// class first, and the full multiplication table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    d: u64,
    classes: Vec<Form>,
    index: HashMap<Form, usize>,
    table: Vec<Vec<usize>>,
}

/// All reduced primitive forms of discriminant `−D`, `|b| ≤ a ≤ √(D/3)`.
pub fn reduced_forms(d: u64) -> Vec<Form> {
    let di = d as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= di {
        for b in -a + 1..=a {
            if (b - di).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b + di;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), f.b < 0));
    out
}

pub fn class_group(d: u64) -> Result<ClassGroup, HeegnerError> {
    if !is_negative_fundamental(d) {
        return Err(HeegnerError::NotFundamental(d));
    }
    let classes = reduced_forms(d);
    debug_assert_eq!(classes[0], Form::principal(d));
    let index: HashMap<Form, usize> = classes.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut table = vec![vec![0usize; classes.len()]; classes.len()];
    for (i, f) in classes.iter().enumerate() {
        for (j, g) in classes.iter().enumerate().skip(i) {
            let k = index[&compose(*f, *g)?];
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    Ok(ClassGroup { d, classes, index, table })
}

impl ClassGroup {
    pub fn d(&self) -> u64 {
        self.d
    }

    /// The class number `h(−D)`.
    pub fn h(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Form] {
        &self.classes
    }

    pub fn form(&self, i: usize) -> Form {
        self.classes[i]
    }

    pub fn principal(&self) -> usize {
        0
    }

    /// Class index of any form of discriminant `−D`.
    pub fn index_of(&self, f: Form) -> Result<usize, HeegnerError> {
        if f.discriminant() != -(self.d as i64) {
            return Err(HeegnerError::DiscriminantMismatch {
                left: f.discriminant(),
                right: -(self.d as i64),
            });
        }
        Ok(self.index[&reduce_form(f)?])
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&reduce_form(self.classes[i].inverse()).expect("reduced forms are definite")]
    }

    pub fn pow(&self, i: usize, k: u64) -> usize {
        (0..k).fold(self.principal(), |acc, _| self.mul(acc, i))
    }

    /// Least `k ≥ 1` with `i^k` principal.
    pub fn order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != self.principal() {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.h()).any(|i| self.order(i) == self.h())
    }

    /// Whether class `i` is a square, by squaring every class.
    pub fn is_square(&self, i: usize) -> bool {
        (0..self.h()).any(|j| self.mul(j, j) == i)
    }

    /// Orders of all classes, indexed like [`classes`](Self::classes).
    pub fn orders(&self) -> Vec<usize> {
        (0..self.h()).map(|i| self.order(i)).collect()
    }
}

/// Order of the class of `f` by repeated composition.
pub fn class_order(g: &ClassGroup, f: Form) -> Result<usize, HeegnerError> {
    Ok(g.order(g.index_of(f)?))
}
