//! Incremental row echelon builder.
//!
//! Every stored row has its lowest nonzero column as pivot, normalized to 1.
//! Reducing a vector walks its columns upward and cancels each pivot column it
//! meets; a pivot row only touches columns at or above its pivot, so a single
//! pass suffices. Over GF(2) rows are word bitsets and reduction is XOR.

use crate::scalar::{Field, Scalar};

use super::{LaError, Subspace, Vector};

#[derive(Clone, Debug)]
enum Rows {
    Bits { words: usize, rows: Vec<Vec<u64>> },
    Generic { rows: Vec<Vector> },
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ambient: usize,
    rows: Rows,
    /// Row index for each pivot column.
    pivot_row: Vec<Option<u32>>,
    pivots: Vec<usize>,
}

pub(crate) fn bits_from_vector(v: &[Scalar], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, s) in v.iter().enumerate() {
        if !s.is_zero() {
            out[i / 64] |= 1u64 << (i % 64);
        }
    }
    out
}

fn lowest_bit(bits: &[u64], from: usize) -> Option<usize> {
    let mut wi = from / 64;
    if wi >= bits.len() {
        return None;
    }
    let mut w = bits[wi] & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            return Some(wi * 64 + w.trailing_zeros() as usize);
        }
        wi += 1;
        if wi == bits.len() {
            return None;
        }
        w = bits[wi];
    }
}

impl Echelon {
    pub fn new(field: &Field, ambient: usize) -> Self {
        let rows = if field.is_gf2() {
            Rows::Bits { words: ambient.div_ceil(64).max(1), rows: Vec::new() }
        } else {
            Rows::Generic { rows: Vec::new() }
        };
        Echelon { field: field.clone(), ambient, rows, pivot_row: vec![None; ambient], pivots: Vec::new() }
    }

    /// Generic backend even over GF(2); used to cross-check the bitset path.
    pub fn new_generic(field: &Field, ambient: usize) -> Self {
        Echelon {
            field: field.clone(),
            ambient,
            rows: Rows::Generic { rows: Vec::new() },
            pivot_row: vec![None; ambient],
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_bits(&self) -> bool {
        matches!(self.rows, Rows::Bits { .. })
    }

    fn reduce_bits(rows: &[Vec<u64>], pivot_row: &[Option<u32>], v: &mut [u64]) {
        let mut c = 0;
        while let Some(b) = lowest_bit(v, c) {
            if let Some(r) = pivot_row[b] {
                let row = &rows[r as usize];
                for (x, y) in v[b / 64..].iter_mut().zip(&row[b / 64..]) {
                    *x ^= y;
                }
            }
            c = b + 1;
        }
    }

    fn reduce_generic(&self, rows: &[Vector], v: &mut [Scalar]) {
        for c in 0..self.ambient {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = v[c].clone();
                let row = &rows[r as usize];
                for j in c..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = v[j].add(&self.field.mul(&coef, &row[j]));
                    }
                }
            }
        }
    }

    /// Insert a GF(2) bitset row; returns whether it was independent.
    pub fn insert_bits(&mut self, mut v: Vec<u64>) -> bool {
        let Rows::Bits { rows, words } = &mut self.rows else {
            panic!("bitset insertion into a generic echelon");
        };
        debug_assert_eq!(v.len(), *words);
        Self::reduce_bits(rows, &self.pivot_row, &mut v);
        match lowest_bit(&v, 0) {
            Some(p) => {
                self.pivot_row[p] = Some(rows.len() as u32);
                rows.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    /// Insert a dense vector; returns whether it was independent.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        if let Rows::Bits { words, .. } = &self.rows {
            let bits = bits_from_vector(v, *words);
            return self.insert_bits(bits);
        }
        let mut v = v.to_vec();
        let Rows::Generic { rows } = &self.rows else { unreachable!() };
        self.reduce_generic(rows, &mut v);
        let Some(p) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        if !v[p].is_one() {
            let inv = self.field.inv(&v[p]).expect("pivot is nonzero");
            for s in v[p..].iter_mut() {
                if !s.is_zero() {
                    *s = self.field.mul(s, &inv);
                }
            }
        }
        let Rows::Generic { rows } = &mut self.rows else { unreachable!() };
        self.pivot_row[p] = Some(rows.len() as u32);
        rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Insert a sparse vector given as `(column, coefficient)` pairs.
    pub fn insert_sparse(&mut self, v: &[(usize, Scalar)]) -> bool {
        if let Rows::Bits { words, .. } = &self.rows {
            let mut bits = vec![0u64; *words];
            for (c, s) in v {
                if !s.is_zero() {
                    bits[c / 64] ^= 1u64 << (c % 64);
                }
            }
            return self.insert_bits(bits);
        }
        let mut dense = vec![self.field.zero(); self.ambient];
        for (c, s) in v {
            dense[*c] = dense[*c].add(s);
        }
        self.insert(&dense)
    }

    /// Remainder of `v` after cancelling every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        match &self.rows {
            Rows::Bits { words, rows } => {
                let mut bits = bits_from_vector(v, *words);
                Self::reduce_bits(rows, &self.pivot_row, &mut bits);
                (0..self.ambient)
                    .map(|i| Scalar::Gf((bits[i / 64] >> (i % 64)) & 1))
                    .collect()
            }
            Rows::Generic { rows } => {
                let mut v = v.to_vec();
                self.reduce_generic(rows, &mut v);
                v
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_sparse(&self, v: &[(usize, Scalar)]) -> bool {
        let mut dense = vec![self.field.zero(); self.ambient];
        for (c, s) in v {
            dense[*c] = dense[*c].add(s);
        }
        self.contains(&dense)
    }

    /// Stored (unreduced) rows as dense vectors, in insertion order.
    pub fn rows(&self) -> Vec<Vector> {
        match &self.rows {
            Rows::Bits { rows, .. } => rows
                .iter()
                .map(|r| (0..self.ambient).map(|i| Scalar::Gf((r[i / 64] >> (i % 64)) & 1)).collect())
                .collect(),
            Rows::Generic { rows } => rows.clone(),
        }
    }

    /// Fully reduced row echelon form as a canonical subspace.
    pub fn to_subspace(&self) -> Subspace {
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let rows = match &self.rows {
            Rows::Bits { rows, .. } => {
                let mut rs: Vec<Vec<u64>> = order.iter().map(|&i| rows[i].clone()).collect();
                // back substitution: clear each pivot column in rows above
                for i in (0..rs.len()).rev() {
                    let p = pivots[i];
                    let (above, rest) = rs.split_at_mut(i);
                    let row = &rest[0];
                    for r in above.iter_mut() {
                        if (r[p / 64] >> (p % 64)) & 1 == 1 {
                            for (x, y) in r[p / 64..].iter_mut().zip(&row[p / 64..]) {
                                *x ^= y;
                            }
                        }
                    }
                }
                rs.iter()
                    .map(|r| (0..self.ambient).map(|i| Scalar::Gf((r[i / 64] >> (i % 64)) & 1)).collect())
                    .collect()
            }
            Rows::Generic { rows } => {
                let mut rs: Vec<Vector> = order.iter().map(|&i| rows[i].clone()).collect();
                for i in (0..rs.len()).rev() {
                    let p = pivots[i];
                    let (above, rest) = rs.split_at_mut(i);
                    let row = &rest[0];
                    for r in above.iter_mut() {
                        if !r[p].is_zero() {
                            let c = r[p].clone();
                            for j in p..self.ambient {
                                if !row[j].is_zero() {
                                    r[j] = r[j].add(&self.field.mul(&c, &row[j]));
                                }
                            }
                        }
                    }
                }
                rs
            }
        };
        Subspace::from_rref_unchecked(self.field.clone(), self.ambient, rows, pivots)
    }

    /// Checked insertion used by the public subspace constructors.
    pub(crate) fn insert_checked(&mut self, v: &[Scalar]) -> Result<bool, LaError> {
        if v.len() != self.ambient {
            return Err(LaError::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        if !v.iter().all(|s| self.field.contains(s)) {
            return Err(LaError::FieldMismatch);
        }
        Ok(self.insert(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bitset_and_generic_agree_over_gf2() {
        let f = Field::gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = 1 + trial * 7 % 150;
            let mut fast = Echelon::new(&f, n);
            let mut slow = Echelon::new_generic(&f, n);
            assert!(fast.is_bits() && !slow.is_bits());
            for _ in 0..(n / 2 + 3) {
                let v: Vector = (0..n).map(|_| Scalar::Gf(u64::from(rng.gen_bool(0.2)))).collect();
                assert_eq!(fast.insert(&v), slow.insert(&v));
            }
            assert_eq!(fast.to_subspace(), slow.to_subspace());
        }
    }
}
