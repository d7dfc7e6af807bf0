//! A compact row-echelon accumulator over a small prime field.
//!
//! Unlike the general solver this keeps rows forward-reduced only (no RREF
//! maintenance), stores entries as bytes, and extracts kernel vectors by
//! per-vector back-substitution — the right trade-offs for the wide streamed
//! systems produced by the cohomology engines.

/// Forward-only row echelon over F_p with byte entries (p < 256).
pub(crate) struct Echelon8 {
    p: u16,
    cols: usize,
    rows: Vec<Vec<u8>>,
    /// pivot column of each stored row, strictly increasing per insertion
    /// order is not guaranteed; `pivot_of_col[c]` locates the row.
    pivot_cols: Vec<usize>,
    pivot_of_col: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Echelon8 {
    pub fn new(p: u64, cols: usize) -> Self {
        assert!(p >= 2 && p < 256, "byte echelon needs a small prime");
        Echelon8 { p: p as u16, cols, rows: Vec::new(), pivot_cols: Vec::new(), pivot_of_col: vec![NONE; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NONE
    }

    /// Forward-reduce `row` against the stored pivots.
    pub fn reduce(&self, row: &mut [u8]) {
        debug_assert_eq!(row.len(), self.cols);
        let p = self.p;
        for c in 0..self.cols {
            let x = row[c];
            if x == 0 {
                continue;
            }
            let r = self.pivot_of_col[c];
            if r == NONE {
                continue;
            }
            // pivot rows have leading value 1, so add (p - x) * pivot row
            let f = (p - x as u16) % p;
            if f == 0 {
                continue;
            }
            let prow = &self.rows[r as usize];
            if f == 1 {
                for j in c..self.cols {
                    let v = prow[j];
                    if v != 0 {
                        let t = row[j] as u16 + v as u16;
                        row[j] = if t >= p { (t - p) as u8 } else { t as u8 };
                    }
                }
            } else {
                for j in c..self.cols {
                    let v = prow[j];
                    if v != 0 {
                        row[j] = ((row[j] as u16 + f * v as u16) % p) as u8;
                    }
                }
            }
        }
    }

    /// Offer a row; returns `true` if it increased the rank.
    pub fn offer(&mut self, mut row: Vec<u8>) -> bool {
        self.reduce(&mut row);
        let Some(lead) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        // normalize leading entry to 1
        let inv = mod_inverse(row[lead] as u16, self.p);
        if inv != 1 {
            for x in row.iter_mut() {
                *x = ((*x as u16 * inv) % self.p) as u8;
            }
        }
        self.pivot_of_col[lead] = self.rows.len() as u32;
        self.pivot_cols.push(lead);
        self.rows.push(row);
        true
    }

    /// Is the (already forward-reduced or raw) row in the row span?
    pub fn contains(&self, row: &[u8]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&x| x == 0)
    }

    /// Kernel basis of the row span seen as a coefficient matrix, one vector
    /// per non-pivot column, via back-substitution.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        // sort pivot rows by pivot column for triangular substitution
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_cols[r]);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if self.is_pivot(free) {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for &r in order.iter().rev() {
                let pc = self.pivot_cols[r];
                let row = &self.rows[r];
                let mut acc: u32 = 0;
                for j in (pc + 1)..self.cols {
                    let rv = row[j];
                    if rv != 0 && v[j] != 0 {
                        acc += rv as u32 * v[j] as u32;
                        if acc >= 1 << 24 {
                            acc %= p as u32;
                        }
                    }
                }
                let s = (acc % p as u32) as u16;
                v[pc] = ((p - s) % p) as u8;
            }
            basis.push(v);
        }
        basis
    }
}

fn mod_inverse(a: u16, p: u16) -> u16 {
    // p is prime and small: Fermat by square-and-multiply
    let mut result = 1u32;
    let mut base = a as u32 % p as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    result as u16
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_and_kernel() {
        let mut e = Echelon8::new(5, 4);
        assert!(e.offer(vec![1, 2, 3, 4]));
        assert!(e.offer(vec![0, 1, 1, 1]));
        assert!(!e.offer(vec![2, 4, 6 % 5, 8 % 5]));
        assert!(!e.offer(vec![1, 3, 4, 0]));
        assert_eq!(e.rank(), 2);
        let kernel = e.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for v in kernel {
            // check both original rows annihilate v
            let dot1: u32 = [1u32, 2, 3, 4].iter().zip(&v).map(|(a, &b)| a * b as u32).sum();
            let dot2: u32 = [0u32, 1, 1, 1].iter().zip(&v).map(|(a, &b)| a * b as u32).sum();
            assert_eq!(dot1 % 5, 0);
            assert_eq!(dot2 % 5, 0);
        }
    }

    #[test]
    fn echelon_contains() {
        let mut e = Echelon8::new(3, 3);
        e.offer(vec![1, 1, 0]);
        e.offer(vec![0, 1, 1]);
        assert!(e.contains(&[1, 2, 1]));
        assert!(!e.contains(&[1, 0, 1]));
    }
}
