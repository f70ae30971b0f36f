//! Row reduction over GF(q).

use crate::gf::{Field, FieldElement};

/// A matrix over GF(q) in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    width: usize,
}

impl RowSpace {
    /// Row-reduces `rows`; all rows must share one length.
    pub fn new(field: &Field, rows: Vec<Vec<FieldElement>>) -> Self {
        let width = rows.first().map_or(0, Vec::len);
        let mut space = RowSpace {
            rows: Vec::new(),
            pivots: Vec::new(),
            width,
        };
        for row in rows {
            space.insert(field, row);
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows and returns the remainder.
    pub fn reduce(&self, field: &Field, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.width, "vector length differs from row length");
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let coef = v[col];
            if coef.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = field.sub(*x, field.mul(coef, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, field: &Field, v: Vec<FieldElement>) -> bool {
        self.reduce(field, v).iter().all(|x| x.is_zero())
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, field: &Field, v: Vec<FieldElement>) -> bool {
        if self.rows.is_empty() && self.width == 0 {
            self.width = v.len();
        }
        let mut v = self.reduce(field, v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let scale = field.inv(v[col]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, scale);
        }
        for row in self.rows.iter_mut() {
            let coef = row[col];
            if coef.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                *x = field.sub(*x, field.mul(coef, r));
            }
        }
        let at = self.pivots.partition_point(|&c| c < col);
        self.pivots.insert(at, col);
        self.rows.insert(at, v);
        true
    }
}

pub fn rank(field: &Field, rows: Vec<Vec<FieldElement>>) -> usize {
    RowSpace::new(field, rows).rank()
}
