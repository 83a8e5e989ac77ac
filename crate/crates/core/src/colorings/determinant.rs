use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::diagram::Diagram;
use crate::error::ColoringError;

/// Fox crossing matrix: one row per crossing, one column per strand;
/// 2 on the over-strand, -1 on each under-strand, summed on coincidence.
pub fn fox_matrix(d: &Diagram) -> Vec<Vec<i64>> {
    let strands = d.strands();
    let index: std::collections::BTreeMap<_, _> = strands
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |a| (*a, i)))
        .collect();
    d.crossings()
        .iter()
        .map(|x| {
            let mut row = vec![0i64; strands.len()];
            row[index[&x.slots[1]]] += 2;
            row[index[&x.slots[0]]] -= 1;
            row[index[&x.slots[2]]] -= 1;
            row
        })
        .collect()
}

/// Determinant of a knot: |any first minor| of the Fox matrix.
pub fn determinant(d: &Diagram) -> Result<u64, ColoringError> {
    let comps = d.components();
    if !d.is_closed() || comps.count() != 1 {
        return Err(ColoringError::NotAKnot(comps.count()));
    }
    Ok(link_determinant(d))
}

/// First-minor determinant for closed diagrams with any number of
/// components. A component with no undercrossing makes the link split and
/// gives 0; so does an extra crossing-free circle.
pub fn link_determinant(d: &Diagram) -> u64 {
    let comps = d.components().count();
    if d.crossings().is_empty() {
        return u64::from(comps <= 1);
    }
    let m = fox_matrix(d);
    let n = m.len();
    let strands = m[0].len() + d.circles().len();
    if strands != n {
        return 0;
    }
    let minor: Vec<Vec<BigInt>> = m[..n - 1]
        .iter()
        .map(|row| row[..n - 1].iter().map(|x| BigInt::from(*x)).collect())
        .collect();
    let det = bareiss(minor);
    u64::try_from(det.abs()).expect("determinant fits in u64")
}

/// Fraction-free Gaussian elimination.
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|i| !a[*i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let sub: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&sub)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![2, -1, 0, 3],
            vec![1, 4, -2, 0],
            vec![0, 5, 1, -1],
            vec![3, 0, 2, 2],
        ];
        let big = m
            .iter()
            .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
            .collect();
        assert_eq!(bareiss(big), BigInt::from(cofactor_det(&m)));
        let singular = [vec![0, 1], vec![0, 2]];
        let big = singular
            .iter()
            .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
            .collect();
        assert_eq!(bareiss(big), BigInt::from(0));
    }

    #[test]
    fn small_knots() {
        let tref = Diagram::parse("X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3").unwrap();
        assert_eq!(determinant(&tref).unwrap(), 3);
        let fig8 = Diagram::parse("X 4 2 5 1; X 8 6 1 5; X 6 3 7 4; X 2 7 3 8").unwrap();
        assert_eq!(determinant(&fig8).unwrap(), 5);
        assert_eq!(determinant(&Diagram::unknot()).unwrap(), 1);
        let hopf = Diagram::parse("X 1 3 2 4; X 3 1 4 2").unwrap();
        assert!(determinant(&hopf).is_err());
        assert_eq!(link_determinant(&hopf), 2);
        assert_eq!(link_determinant(&Diagram::parse("O 1\nO 2").unwrap()), 0);
    }
}
