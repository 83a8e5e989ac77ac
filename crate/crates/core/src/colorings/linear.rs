//! Diagonalization of integer matrices over Z/NZ (or Z) by unimodular row
//! and column operations with extended-gcd pivoting. Composite moduli are
//! handled directly: each 2x2 combination step has determinant 1.

use num_integer::Integer;

/// Result of `U A V = D` with `D` diagonal; only `V` and `U b` are kept.
#[derive(Clone, Debug)]
pub(crate) struct Diagonal {
    pub diag: Vec<i128>,
    pub rhs: Vec<i128>,
    /// Column transform, `cols x cols`.
    pub v: Vec<Vec<i128>>,
}

impl Diagonal {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn reduce(x: i128, modulus: u64) -> i128 {
    if modulus == 0 {
        x
    } else {
        x.rem_euclid(modulus as i128)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, s, t) with s*a + t*b = g >= 0
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Diagonalizes `a` (rows x cols) carrying the right-hand side `b` along.
pub(crate) fn diagonalize(
    mut a: Vec<Vec<i128>>,
    mut b: Vec<i128>,
    cols: usize,
    modulus: u64,
) -> Diagonal {
    let rows = a.len();
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = reduce(*x, modulus);
        }
    }
    for x in b.iter_mut() {
        *x = reduce(*x, modulus);
    }
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut diag = Vec::new();
    let mut r = 0;
    while r < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(i128, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, x) in row.iter().enumerate().skip(r) {
                if *x != 0 && best.is_none_or(|(m, _, _)| x.abs() < m) {
                    best = Some((x.abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(r, pi);
        b.swap(r, pi);
        if pj != r {
            for row in a.iter_mut() {
                row.swap(r, pj);
            }
            for row in v.iter_mut() {
                row.swap(r, pj);
            }
        }
        loop {
            for i in r + 1..rows {
                if a[i][r] != 0 {
                    combine_rows(&mut a, &mut b, r, i, modulus);
                }
            }
            for j in r + 1..cols {
                if a[r][j] != 0 {
                    combine_cols(&mut a, &mut v, r, j, modulus);
                }
            }
            if (r + 1..rows).all(|i| a[i][r] == 0) {
                break;
            }
        }
        diag.push(a[r][r]);
        r += 1;
    }
    Diagonal { diag, rhs: b, v }
}

fn combine_rows(a: &mut [Vec<i128>], b: &mut [i128], r: usize, i: usize, modulus: u64) {
    let (x, y) = (a[r][r], a[i][r]);
    if y % x == 0 {
        let q = y / x;
        for k in 0..a[r].len() {
            a[i][k] = reduce(a[i][k] - q * a[r][k], modulus);
        }
        b[i] = reduce(b[i] - q * b[r], modulus);
        return;
    }
    let (g, s, t) = ext_gcd(x, y);
    let (xg, yg) = (x / g, y / g);
    for k in 0..a[r].len() {
        let (p, q) = (a[r][k], a[i][k]);
        a[r][k] = reduce(s * p + t * q, modulus);
        a[i][k] = reduce(-yg * p + xg * q, modulus);
    }
    let (p, q) = (b[r], b[i]);
    b[r] = reduce(s * p + t * q, modulus);
    b[i] = reduce(-yg * p + xg * q, modulus);
}

fn combine_cols(a: &mut [Vec<i128>], v: &mut [Vec<i128>], r: usize, j: usize, modulus: u64) {
    let (x, y) = (a[r][r], a[r][j]);
    let (s, t, yg, xg, exact) = if y % x == 0 {
        (1, 0, y / x, 1, true)
    } else {
        let (g, s, t) = ext_gcd(x, y);
        (s, t, y / g, x / g, false)
    };
    let apply = |m: &mut [Vec<i128>]| {
        for row in m.iter_mut() {
            let (p, q) = (row[r], row[j]);
            if exact {
                row[j] = reduce(q - yg * p, modulus);
            } else {
                row[r] = reduce(s * p + t * q, modulus);
                row[j] = reduce(-yg * p + xg * q, modulus);
            }
        }
    };
    apply(a);
    apply(v);
}

/// Affine solution set `x0 + span{generators}` of `A x = b` mod N.
#[derive(Clone, Debug)]
pub(crate) struct Affine {
    pub particular: Option<Vec<u64>>,
    /// Each generator with its additive order.
    pub generators: Vec<(Vec<u64>, u64)>,
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (g, s, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

/// Solves `A x = b (mod N)` for N >= 2.
pub(crate) fn solve_mod(a: Vec<Vec<i128>>, b: Vec<i128>, cols: usize, modulus: u64) -> Affine {
    let n = modulus as i128;
    let dg = diagonalize(a, b, cols, modulus);
    let rank = dg.rank();
    if dg.rhs.iter().skip(rank).any(|c| *c != 0) {
        return Affine {
            particular: None,
            generators: vec![],
        };
    }
    let mut y0 = vec![0i128; cols];
    let mut generators = Vec::new();
    let column = |j: usize, scale: i128| -> Vec<u64> {
        dg.v.iter()
            .map(|row| (row[j] * scale).rem_euclid(n) as u64)
            .collect()
    };
    #[allow(clippy::needless_range_loop)]
    for i in 0..rank {
        let d = dg.diag[i].rem_euclid(n);
        let c = dg.rhs[i].rem_euclid(n);
        let g = d.gcd(&n);
        if c % g != 0 {
            return Affine {
                particular: None,
                generators: vec![],
            };
        }
        let m = n / g;
        y0[i] = if m == 1 {
            0
        } else {
            (c / g) * mod_inverse(d / g, m).expect("coprime after division") % m
        };
        if g > 1 {
            generators.push((column(i, m), g as u64));
        }
    }
    for j in rank..cols {
        generators.push((column(j, 1), modulus));
    }
    let particular = (0..cols)
        .map(|r| {
            let s: i128 = (0..cols).map(|k| dg.v[r][k] * y0[k]).sum();
            s.rem_euclid(n) as u64
        })
        .collect();
    Affine {
        particular: Some(particular),
        generators,
    }
}
