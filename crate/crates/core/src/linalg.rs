//! Gaussian elimination over a [`Field`].

use alloc::vec::Vec;

use crate::gf::{Field, FieldElement};

/// Reduces `rows` in place to row echelon form and returns the rank.
pub fn row_reduce(field: &Field, rows: &mut [Vec<FieldElement>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(prow) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(field: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(field, &mut work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_ranks() {
        let k = Field::with_order(5, None).unwrap();
        let e = |i| k.elem(i).unwrap();
        let m = vec![vec![e(1), e(2), e(3)], vec![e(0), e(1), e(2)], vec![e(1), e(3), e(0)]];
        // third row = first + second
        assert_eq!(rank(&k, &m), 2);
        let id = vec![vec![e(1), e(0)], vec![e(0), e(1)]];
        assert_eq!(rank(&k, &id), 2);
        assert_eq!(rank(&k, &[]), 0);
        assert_eq!(rank(&k, &[vec![e(0), e(0)]]), 0);
    }

    #[test]
    fn vandermonde_matrix_has_full_rank() {
        let k = Field::with_order(9, None).unwrap();
        let rows: Vec<Vec<_>> = (0..5u64)
            .map(|i| k.elements().map(|x| k.pow(x, i)).collect())
            .collect();
        assert_eq!(rank(&k, &rows), 5);
    }
}
