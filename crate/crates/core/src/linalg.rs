//! Gaussian elimination over a cyclotomic field.

use crate::cyclo::CycloScalar;
use crate::error::Result;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [Vec<CycloScalar>], ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv()?;
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v = &*v - &(&f * pv);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

/// Basis of `{v : A v = 0}` for an `m x n` matrix.
pub fn nullspace(mut rows: Vec<Vec<CycloScalar>>, ncols: usize, conductor: u32) -> Result<Vec<Vec<CycloScalar>>> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let pivots = rref(&mut rows, ncols)?;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![CycloScalar::zero(conductor); ncols];
        v[f] = CycloScalar::one(conductor);
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[ri][f];
        }
        basis.push(v);
    }
    Ok(basis)
}

pub type AffineSolution = (Vec<CycloScalar>, Vec<Vec<CycloScalar>>);

/// Solution set of `A v = b`: a particular solution plus the nullspace basis,
/// or `None` if inconsistent.
pub fn solve_affine(
    rows: Vec<Vec<CycloScalar>>,
    rhs: Vec<CycloScalar>,
    ncols: usize,
    conductor: u32,
) -> Result<Option<AffineSolution>> {
    let mut aug: Vec<Vec<CycloScalar>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();
    aug.retain(|r| r.iter().any(|v| !v.is_zero()));
    let pivots = rref(&mut aug, ncols + 1)?;
    if pivots.contains(&ncols) {
        return Ok(None);
    }
    let mut particular = vec![CycloScalar::zero(conductor); ncols];
    for (ri, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[ri][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![CycloScalar::zero(conductor); ncols];
        v[f] = CycloScalar::one(conductor);
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -&aug[ri][f];
        }
        basis.push(v);
    }
    Ok(Some((particular, basis)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> CycloScalar {
        CycloScalar::from_int(1, v)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let ns = nullspace(rows.clone(), 3, 1).unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &rows {
                let dot = r.iter().zip(&v).fold(s(0), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn affine_inconsistent() {
        let rows = vec![vec![s(1), s(1)], vec![s(1), s(1)]];
        assert!(solve_affine(rows, vec![s(1), s(2)], 2, 1).unwrap().is_none());
    }

    #[test]
    fn affine_unique() {
        let rows = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        let (p, ns) = solve_affine(rows, vec![s(3), s(1)], 2, 1).unwrap().unwrap();
        assert!(ns.is_empty());
        assert_eq!(p, vec![s(2), s(1)]);
    }
}
