//! Small dense exact linear algebra.

use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<C: Field>(m: &mut [Vec<C>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = f.mul_ref(&m[r][j]);
                m[i][j] = m[i][j].sub_ref(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: Field>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{ v : m v = 0 }`, one vector per free column.
pub fn nullspace<C: Field>(rows: &[Vec<C>]) -> Vec<Vec<C>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); cols];
            v[f] = C::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[r][f].neg_ref();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use crate::scalar::Ring;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(&m), 1);
        let ker = nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let dot = row.iter().zip(v).fold(q(0), |a, (x, y)| a + x * y);
                assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert!(nullspace(&m).is_empty());
    }
}
