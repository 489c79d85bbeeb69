//! Dense linear algebra over `F_p` for the small systems in this crate.

use crate::fppoly::Prime;

/// Reduce `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: Prime) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = p.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<u64>], p: Prime) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of `{x : rows * x = 0}` in `F_p^ncols`.
pub(crate) fn kernel(rows: &[Vec<u64>], ncols: usize, p: Prime) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![0; ncols];
        v[f] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = p.neg(row[f]);
        }
        v
    })
    .collect()
}

/// The vector with base-`p` digits of `idx`, least significant first.
pub(crate) fn decode(idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut r = idx;
    (0..n)
        .map(|_| {
            let d = r % p;
            r /= p;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_annihilated() {
        let p = Prime::new(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3]];
        let ker = kernel(&rows, 4, p);
        assert_eq!(ker.len(), 4 - rank(&rows, p));
        for v in &ker {
            for r in &rows {
                let dot = r.iter().zip(v).fold(0, |acc, (a, b)| p.add(acc, p.mul(*a, *b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn decode_digits() {
        assert_eq!(decode(7, 3, 3), vec![1, 2, 0]);
    }
}
