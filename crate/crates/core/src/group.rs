//! Finite groups as validated Cayley tables, with a few standard families.

use crate::error::GroupError;

/// A finite group on `0..order`. `table[a][b]` is the product `a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(GroupError::OutOfRange(i, j));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or(GroupError::NoInverse(x))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Group {
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_table(table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`: rotations `0..n`, reflections `n..2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        // element (s, r) with s in {0,1}: x = rot^r · ref^s
        let idx = |s: usize, r: usize| s * n + r % n;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for s1 in 0..2 {
            for r1 in 0..n {
                for s2 in 0..2 {
                    for r2 in 0..n {
                        // rot^r1 ref^s1 rot^r2 ref^s2 = rot^(r1 ± r2) ref^(s1+s2)
                        let r = if s1 == 0 { r1 + r2 } else { r1 + n - r2 };
                        table[idx(s1, r1)][idx(s2, r2)] = idx((s1 + s2) % 2, r);
                    }
                }
            }
        }
        Group::from_table(table).expect("dihedral table is a group")
    }

    /// The symmetric group on three letters. Elements are the permutations
    /// of `{0,1,2}` in lexicographic order, so `0` is the identity, `1`,
    /// `2`, `5` are transpositions and `3`, `4` are 3-cycles.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Group::from_table(table).expect("S3 table is a group")
    }

    /// Quaternion group {±1, ±i, ±j, ±k}, ordered 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion() -> Self {
        // unit u in {1,i,j,k} as 0..4 with sign bit
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = unit_mul(a / 2, b / 2);
                        let sign = (a % 2) ^ (b % 2) ^ (neg as usize);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        Group::from_table(table).expect("Q8 table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(g: &Group, h: &Group) -> Self {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Group::from_table(table).expect("product of groups is a group")
    }

    /// Looks up a named group: `S3`, `C<n>`, `D<n>` (order `2n`), `Q8`,
    /// `V4` (= `C2xC2`).
    pub fn by_name(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::Unknown(name.to_string());
        match name {
            "S3" => Ok(Group::symmetric3()),
            "Q8" => Ok(Group::quaternion()),
            "V4" | "C2xC2" => Ok(Group::direct_product(&Group::cyclic(2), &Group::cyclic(2))),
            _ => {
                let (kind, n) = name.split_at(1);
                let n: usize = n.parse().map_err(|_| unknown())?;
                match kind {
                    "C" if n >= 1 => Ok(Group::cyclic(n)),
                    "D" if n >= 1 => Ok(Group::dihedral(n)),
                    _ => Err(unknown()),
                }
            }
        }
    }

    /// Parses a Cayley table file: the order `n`, then `n` rows of `n`
    /// 1-based element indices. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let rows =
            crate::quandle::parse_square_table(text).map_err(|(line, message)| GroupError::Parse { line, message })?;
        Group::from_table(rows)
    }
}
