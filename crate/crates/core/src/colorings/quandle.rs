use crate::error::ColoringError;

/// Finite quandle given by its Cayley table `table[a][b] = a * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quandle {
    name: String,
    size: u32,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl Quandle {
    /// Validates idempotence, right-invertibility and self-distributivity;
    /// a failing axiom is reported with its witness.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<u32>>) -> Result<Self, ColoringError> {
        let n = rows.len();
        if n == 0 {
            return Err(ColoringError::QuandleFormat("empty table".into()));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ColoringError::QuandleFormat(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| **x as usize >= n) {
                return Err(ColoringError::QuandleFormat(format!(
                    "entry {x} in row {a} is out of range"
                )));
            }
        }
        let at = |a: usize, b: usize| rows[a][b] as usize;
        for a in 0..n {
            if at(a, a) != a {
                return Err(ColoringError::Axiom(format!(
                    "idempotence: {a}*{a} = {}",
                    at(a, a)
                )));
            }
        }
        let mut inverse = vec![u32::MAX; n * n];
        for b in 0..n {
            for a in 0..n {
                let c = at(a, b);
                if inverse[c * n + b] != u32::MAX {
                    return Err(ColoringError::Axiom(format!(
                        "right-invertibility: {}*{b} = {a}*{b} = {c}",
                        inverse[c * n + b]
                    )));
                }
                inverse[c * n + b] = a as u32;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = at(at(a, b), c);
                    let rhs = at(at(a, c), at(b, c));
                    if lhs != rhs {
                        return Err(ColoringError::Axiom(format!(
                            "self-distributivity fails for (a, b, c) = ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let table = rows.into_iter().flatten().collect();
        Ok(Quandle {
            name: name.into(),
            size: n as u32,
            table,
            inverse,
        })
    }

    /// Reads `Q n` followed by `n` rows of `n` integers.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, ColoringError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| ColoringError::QuandleFormat("missing `Q n` header".into()))?;
        let mut head = header.split_whitespace();
        if head.next() != Some("Q") {
            return Err(ColoringError::QuandleFormat("header must be `Q n`".into()));
        }
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ColoringError::QuandleFormat("header must be `Q n`".into()))?;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| {
                    ColoringError::QuandleFormat(format!("row {i} is not a list of integers"))
                })?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(ColoringError::QuandleFormat(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Quandle::from_table(name, rows)
    }

    pub fn to_text(&self) -> String {
        let n = self.size as usize;
        let mut out = format!("Q {n}\n");
        for a in 0..n {
            let row: Vec<String> = self.table[a * n..(a + 1) * n]
                .iter()
                .map(|x| x.to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.size + b) as usize]
    }

    /// `a *̄ b`, the unique `x` with `x * b = a`.
    pub fn op_inv(&self, a: u32, b: u32) -> u32 {
        self.inverse[(a * self.size + b) as usize]
    }

    pub fn is_involutory(&self) -> bool {
        self.table == self.inverse
    }
}

/// Dihedral quandle on Z/n: `a * b = 2b - a`.
pub fn dihedral(n: u32) -> Result<Quandle, ColoringError> {
    if n < 2 {
        return Err(ColoringError::Modulus(u64::from(n)));
    }
    let rows = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| ((2 * u64::from(b) + u64::from(n) - u64::from(a)) % u64::from(n)) as u32)
                .collect()
        })
        .collect();
    Quandle::from_table(format!("dihedral-{n}"), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_tables() {
        let q3 = dihedral(3).unwrap();
        assert_eq!(q3.op(0, 1), 2);
        assert!(q3.is_involutory());
        let q2 = dihedral(2).unwrap();
        assert_eq!(q2.op(0, 1), 0);
        assert!(dihedral(1).is_err());
        for n in 2..12 {
            assert!(dihedral(n).unwrap().is_involutory());
        }
    }

    #[test]
    fn parse_roundtrip() {
        let q = dihedral(5).unwrap();
        let back = Quandle::parse("dihedral-5", &q.to_text()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn axiom_failures_name_the_witness() {
        let err = Quandle::from_table("bad", vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("idempotence"), "{err}");
        let err = Quandle::from_table("bad", vec![vec![0, 0], vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("right-invertibility"), "{err}");
        // Idempotent and right-invertible but not self-distributive.
        let rows = vec![vec![0, 2, 0], vec![2, 1, 1], vec![1, 0, 2]];
        let err = Quandle::from_table("bad", rows).unwrap_err();
        assert!(err.to_string().contains("self-distributivity"), "{err}");
        assert!(Quandle::parse("x", "Q 2\n0 0\n").is_err());
        assert!(Quandle::parse("x", "P 2\n0 0\n1 1\n").is_err());
    }

    #[test]
    fn non_involutory_alexander_quandle() {
        // Alexander quandle on Z/5 with t = 2: a * b = t a + (1 - t) b.
        let n = 5u32;
        let rows = (0..n)
            .map(|a| (0..n).map(|b| (2 * a + 4 * b) % n).collect())
            .collect();
        let q = Quandle::from_table("alexander-5-2", rows).unwrap();
        assert!(!q.is_involutory());
        for a in 0..n {
            for b in 0..n {
                assert_eq!(q.op_inv(q.op(a, b), b), a);
            }
        }
    }
}
