//! Dense linear systems over GF(2).

/// A system `A ε = b` over GF(2) with rows stored as bit vectors.
#[derive(Clone, Debug)]
pub struct Gf2System {
    vars: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new() }
    }

    fn words(&self) -> usize {
        self.vars.div_ceil(64).max(1)
    }

    /// Adds `Σ_{i ∈ vars} ε_i = rhs`. Repeated indices cancel.
    pub fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words()];
        for &v in vars {
            assert!(v < self.vars, "variable index out of range");
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs));
    }

    /// Gauss–Jordan elimination. Each pivot is the highest-index variable of
    /// its row; free variables are set to zero. Returns `None` when the
    /// system is inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut reduced: Vec<(Vec<u64>, bool, usize)> = Vec::new();
        for (row, rhs) in &self.rows {
            let (mut row, mut rhs) = (row.clone(), *rhs);
            for (prow, prhs, pcol) in &reduced {
                if bit(&row, *pcol) {
                    xor(&mut row, prow);
                    rhs ^= prhs;
                }
            }
            match highest(&row) {
                None if rhs => return None,
                None => {}
                Some(col) => {
                    for (prow, prhs, _) in reduced.iter_mut() {
                        if bit(prow, col) {
                            xor(prow, &row);
                            *prhs ^= rhs;
                        }
                    }
                    reduced.push((row, rhs, col));
                }
            }
        }
        let mut eps = vec![false; self.vars];
        for (_, rhs, col) in reduced {
            eps[col] = rhs;
        }
        Some(eps)
    }
}

fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn xor(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn highest(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pivots_on_highest_variable() {
        let mut s = Gf2System::new(4);
        s.push(&[0, 1, 2, 3], true);
        assert_eq!(s.solve(), Some(vec![false, false, false, true]));
    }

    #[test]
    fn inconsistent_system() {
        let mut s = Gf2System::new(3);
        s.push(&[0, 1], true);
        s.push(&[1, 2], false);
        s.push(&[0, 2], false);
        assert_eq!(s.solve(), None);
    }

    #[test]
    fn wide_systems() {
        let mut s = Gf2System::new(130);
        s.push(&[129, 3], true);
        s.push(&[3, 64], true);
        let e = s.solve().unwrap();
        assert!(e[129] ^ e[3]);
        assert!(e[3] ^ e[64]);
    }

    proptest! {
        #[test]
        fn solutions_satisfy_consistent_systems(
            n in 1usize..80,
            rows in prop::collection::vec(prop::collection::vec(0usize..80, 0..6), 0..40),
            hidden in prop::collection::vec(any::<bool>(), 80),
        ) {
            let mut s = Gf2System::new(n);
            let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().map(|v| v % n).collect()).collect();
            for r in &rows {
                let rhs = r.iter().fold(false, |acc, &v| acc ^ hidden[v]);
                s.push(r, rhs);
            }
            let e = s.solve().expect("consistent by construction");
            for r in &rows {
                let lhs = r.iter().fold(false, |acc, &v| acc ^ e[v]);
                let rhs = r.iter().fold(false, |acc, &v| acc ^ hidden[v]);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
