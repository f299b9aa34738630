//! Finite quandles as operation tables.
//!
//! Elements are stored 0-based (`0..n`); everything user-facing (quandle
//! matrix files, error witnesses, [`FiniteQuandle::to_matrix`]) is 1-based,
//! so printed matrices transcribe directly.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::QuandleError;
use crate::field::Prime;
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    op: Vec<Vec<usize>>,
    inv_op: Vec<Vec<usize>>,
}

impl FiniteQuandle {
    /// Validates a 1-based quandle matrix (`m[i][j] = i▷j`).
    pub fn validate(matrix: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let op = zero_based(matrix)?;
        Self::from_op(op)
    }

    /// Validates a 0-based operation table.
    pub fn from_op(op: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let n = check_shape(&op)?;
        if let Some(i) = (0..n).find(|&i| op[i][i] != i) {
            return Err(QuandleError::NotIdempotent(i + 1));
        }
        let inv_op = invert_columns(&op)?;
        check_distributive(&op)?;
        Ok(FiniteQuandle { op, inv_op })
    }

    /// Builds from a table known to satisfy the axioms.
    pub(crate) fn from_op_unchecked(op: Vec<Vec<usize>>) -> Self {
        let inv_op = invert_columns(&op).expect("columns are permutations");
        let q = FiniteQuandle { op, inv_op };
        debug_assert!(q.n() > 64 || FiniteQuandle::from_op(q.op.clone()).is_ok());
        q
    }

    pub fn n(&self) -> usize {
        self.op.len()
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    /// `x ▷⁻¹ y`.
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_op[x][y]
    }

    pub fn op_table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn inv_op_table(&self) -> &[Vec<usize>] {
        &self.inv_op
    }

    /// 1-based quandle matrix.
    pub fn to_matrix(&self) -> Vec<Vec<usize>> {
        self.op.iter().map(|row| row.iter().map(|&x| x + 1).collect()).collect()
    }

    pub fn is_involutory(&self) -> bool {
        self.op == self.inv_op
    }

    pub fn is_trivial(&self) -> bool {
        self.op.iter().enumerate().all(|(i, row)| row.iter().all(|&x| x == i))
    }

    /// The trivial quandle `x ▷ y = x` on `n` elements.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "quandles are nonempty");
        let op = (0..n).map(|i| vec![i; n]).collect();
        FiniteQuandle::from_op_unchecked(op)
    }

    /// The Alexander quandle `x ▷ y = t·x + (1−t)·y` on `Z_p`; element `i`
    /// (0-based) is the residue `i`.
    pub fn alexander(p: u32, t: i64) -> Result<Self, QuandleError> {
        let p = Prime::new(p)?;
        let t = p.reduce(t);
        if t == 0 {
            return Err(QuandleError::AlexanderNotUnit {
                p: p.get(),
                t: t as i64,
            });
        }
        let one_minus_t = p.sub(1, t);
        let n = p.get() as usize;
        let op = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| p.add(p.mul(t, x as u32), p.mul(one_minus_t, y as u32)) as usize)
                    .collect()
            })
            .collect();
        FiniteQuandle::from_op(op)
    }

    /// `n`-fold conjugation `x ▷ y = y⁻ⁿ x yⁿ` on a group, in the group's
    /// element order.
    pub fn conjugation(group: &Group, n: i64) -> Self {
        let size = group.order();
        let op = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| group.mul(group.mul(group.pow(y, -n), x), group.pow(y, n)))
                    .collect()
            })
            .collect();
        FiniteQuandle::from_op_unchecked(op)
    }

    /// The symplectic quandle `x ▷ y = x + ⟨x,y⟩y` on `F_p^{2m}` with the
    /// standard form `⟨e_i, e_{m+i}⟩ = 1`. Vectors are indexed in
    /// lexicographic order (first coordinate most significant), so index 0
    /// is the zero vector.
    pub fn symplectic(p: u32, m: usize) -> Result<Self, QuandleError> {
        let p = Prime::new(p)?;
        assert!(m >= 1);
        let dim = 2 * m;
        let size = (p.get() as usize).pow(dim as u32);
        let vectors: Vec<Vec<u32>> = (0..size).map(|i| digits(i, p.get(), dim)).collect();
        let index = |v: &[u32]| v.iter().fold(0usize, |acc, &c| acc * p.get() as usize + c as usize);
        let form = |x: &[u32], y: &[u32]| {
            (0..m).fold(0u32, |acc, i| {
                p.add(acc, p.sub(p.mul(x[i], y[m + i]), p.mul(x[m + i], y[i])))
            })
        };
        let op = vectors
            .iter()
            .map(|x| {
                vectors
                    .iter()
                    .map(|y| {
                        let c = form(x, y);
                        let z: Vec<u32> = x.iter().zip(y).map(|(&a, &b)| p.add(a, p.mul(c, b))).collect();
                        index(&z)
                    })
                    .collect()
            })
            .collect();
        FiniteQuandle::from_op(op)
    }

    /// Smallest superset of `seed` closed under ▷ and ▷⁻¹.
    pub fn subquandle_generated(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut members = vec![false; self.n()];
        let mut order = Vec::new();
        for x in seed {
            if !members[x] {
                members[x] = true;
                order.push(x);
            }
        }
        let mut k = 0;
        while k < order.len() {
            let a = order[k];
            for idx in 0..=k {
                let b = order[idx];
                for z in [self.op(a, b), self.op(b, a), self.inv_op(a, b), self.inv_op(b, a)] {
                    if !members[z] {
                        members[z] = true;
                        order.push(z);
                    }
                }
            }
            k += 1;
        }
        order.into_iter().collect()
    }

    /// Greedy generating set: elements in increasing order, each one kept
    /// only if not already generated by the earlier ones.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut generated = BTreeSet::new();
        for x in 0..self.n() {
            if !generated.contains(&x) {
                gens.push(x);
                generated = self.subquandle_generated(gens.iter().copied());
            }
        }
        gens
    }

    /// Restriction to a ▷-closed subset, relabeled in increasing order.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Option<FiniteQuandle> {
        let elems: Vec<usize> = subset.iter().copied().collect();
        let pos = |z: usize| elems.binary_search(&z).ok();
        let mut op = Vec::with_capacity(elems.len());
        for &x in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &y in &elems {
                row.push(pos(self.op(x, y))?);
            }
            op.push(row);
        }
        Some(FiniteQuandle::from_op_unchecked(op))
    }
}

impl fmt::Display for FiniteQuandle {
    /// Quandle matrix file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for row in self.to_matrix() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn digits(mut i: usize, p: u32, len: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (i % p as usize) as u32;
        i /= p as usize;
    }
    v
}

fn zero_based(matrix: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, QuandleError> {
    let n = matrix.len();
    let mut op = Vec::with_capacity(n);
    for (i, row) in matrix.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, &v) in row.iter().enumerate() {
            if v == 0 || v > n {
                return Err(QuandleError::EntryOutOfRange {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                    n,
                });
            }
            out.push(v - 1);
        }
        op.push(out);
    }
    Ok(op)
}

fn check_shape(op: &[Vec<usize>]) -> Result<usize, QuandleError> {
    let n = op.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (i, row) in op.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::NotSquare {
                row: i + 1,
                len: row.len(),
                n,
            });
        }
        if let Some(j) = row.iter().position(|&x| x >= n) {
            return Err(QuandleError::EntryOutOfRange {
                row: i + 1,
                col: j + 1,
                value: row[j] + 1,
                n,
            });
        }
    }
    Ok(n)
}

// column-major so the first broken column is the one reported
#[allow(clippy::needless_range_loop)]
fn invert_columns(op: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, QuandleError> {
    let n = op.len();
    let mut inv = vec![vec![usize::MAX; n]; n];
    for j in 0..n {
        for i in 0..n {
            let z = op[i][j];
            if inv[z][j] != usize::MAX {
                return Err(QuandleError::ColumnNotPermutation(j + 1));
            }
            inv[z][j] = i;
        }
    }
    Ok(inv)
}

fn check_distributive(op: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = op.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if op[op[i][j]][k] != op[op[i][k]][op[j][k]] {
                    return Err(QuandleError::NotSelfDistributive(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    Ok(())
}

/// Checks the rack axioms only (right-invertibility and
/// self-distributivity), skipping idempotence.
pub fn check_rack(matrix: &[Vec<usize>]) -> Result<(), QuandleError> {
    let op = zero_based(matrix)?;
    check_shape(&op)?;
    invert_columns(&op)?;
    check_distributive(&op)
}

/// Reads an `n` line followed by `n` rows of `n` 1-based integers and
/// returns the 0-based table. Errors carry a line number.
pub(crate) fn parse_square_table(text: &str) -> Result<Vec<Vec<usize>>, (usize, String)> {
    let mut size: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse::<usize>).collect();
        let nums = nums.map_err(|_| (line_no, format!("expected integers, found {line:?}")))?;
        match size {
            None => {
                if nums.len() != 1 || nums[0] == 0 {
                    return Err((line_no, "first line must be the positive size n".into()));
                }
                size = Some(nums[0]);
            }
            Some(n) => {
                if rows.len() == n {
                    return Err((line_no, format!("more than {n} rows")));
                }
                if nums.len() != n {
                    return Err((line_no, format!("expected {n} entries, found {}", nums.len())));
                }
                if let Some(&bad) = nums.iter().find(|&&v| v == 0 || v > n) {
                    return Err((line_no, format!("entry {bad} is outside 1..{n}")));
                }
                rows.push(nums.into_iter().map(|v| v - 1).collect());
            }
        }
    }
    match size {
        None => Err((last_line.max(1), "missing size line".into())),
        Some(n) if rows.len() != n => Err((last_line, format!("expected {n} rows, found {}", rows.len()))),
        Some(_) => Ok(rows),
    }
}

/// Parses a quandle matrix file and validates the axioms.
pub fn parse_quandle(text: &str) -> Result<FiniteQuandle, QuandleError> {
    let op = parse_square_table(text).map_err(|(line, message)| QuandleError::Parse { line, message })?;
    FiniteQuandle::from_op(op)
}

/// Parses a quandle matrix file, checking only the rack axioms.
pub fn parse_rack(text: &str) -> Result<(), QuandleError> {
    let op = parse_square_table(text).map_err(|(line, message)| QuandleError::Parse { line, message })?;
    check_shape(&op)?;
    invert_columns(&op)?;
    check_distributive(&op)
}

/// Backtracking search for an injective homomorphism `source → target`.
///
/// Images of a generating set of `source` are tried in increasing target
/// order; every assignment is immediately propagated through products, so
/// the first map found is the lexicographically smallest one on the
/// generators.
struct EmbeddingSearch<'a> {
    source: &'a FiniteQuandle,
    target: &'a FiniteQuandle,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl<'a> EmbeddingSearch<'a> {
    fn new(source: &'a FiniteQuandle, target: &'a FiniteQuandle) -> Self {
        EmbeddingSearch {
            source,
            target,
            map: vec![None; source.n()],
            used: vec![false; target.n()],
            assigned: Vec::new(),
        }
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        match self.map[x] {
            Some(z) => z == y,
            None if self.used[y] => false,
            None => {
                self.map[x] = Some(y);
                self.used[y] = true;
                self.assigned.push(x);
                true
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.assigned.len() > len {
            let x = self.assigned.pop().unwrap();
            let y = self.map[x].take().unwrap();
            self.used[y] = false;
        }
    }

    /// Assigns `x ↦ y` and closes the domain under the operations.
    fn assign_and_close(&mut self, x: usize, y: usize) -> bool {
        let start = self.assigned.len();
        if !self.set(x, y) {
            return false;
        }
        let (s, t) = (self.source, self.target);
        let mut k = start;
        while k < self.assigned.len() {
            let a = self.assigned[k];
            for idx in 0..=k {
                let b = self.assigned[idx];
                let (fa, fb) = (self.map[a].unwrap(), self.map[b].unwrap());
                let checks = [
                    (s.op(a, b), t.op(fa, fb)),
                    (s.op(b, a), t.op(fb, fa)),
                    (s.inv_op(a, b), t.inv_op(fa, fb)),
                    (s.inv_op(b, a), t.inv_op(fb, fa)),
                ];
                for (z, fz) in checks {
                    if !self.set(z, fz) {
                        return false;
                    }
                }
            }
            k += 1;
        }
        true
    }

    fn run(&mut self, gens: &[usize], allowed: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        let Some((&g, rest)) = gens.split_first() else {
            return Some(
                self.map
                    .iter()
                    .map(|m| m.expect("generators cover the source"))
                    .collect(),
            );
        };
        if self.map[g].is_some() {
            // already forced by earlier generators
            return self.run(rest, allowed);
        }
        for y in 0..self.target.n() {
            if self.used[y] || !allowed(g, y) {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign_and_close(g, y) {
                if let Some(found) = self.run(rest, allowed) {
                    return Some(found);
                }
            }
            self.undo_to(mark);
        }
        None
    }
}

/// An injective homomorphism `source → target` (as a 0-based image list),
/// the lexicographically first on a greedy generating set of `source`.
pub fn find_embedding(source: &FiniteQuandle, target: &FiniteQuandle) -> Option<Vec<usize>> {
    if source.n() > target.n() {
        return None;
    }
    let gens = source.generating_set();
    EmbeddingSearch::new(source, target).run(&gens, &|_, _| true)
}

/// Conjugacy-invariant fingerprint of an element: cycle type of its column
/// permutation `z ↦ z ▷ x` and the number of `y` fixing `x`.
fn profile(q: &FiniteQuandle, x: usize) -> (Vec<usize>, usize) {
    let n = q.n();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut z = start;
        while !seen[z] {
            seen[z] = true;
            z = q.op(z, x);
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    let stabilizers = (0..n).filter(|&y| q.op(x, y) == x).count();
    (cycles, stabilizers)
}

/// A witnessing isomorphism `q1 → q2` (0-based image list), if any.
pub fn are_isomorphic(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Option<Vec<usize>> {
    if q1.n() != q2.n() {
        return None;
    }
    let p1: Vec<_> = (0..q1.n()).map(|x| profile(q1, x)).collect();
    let p2: Vec<_> = (0..q2.n()).map(|x| profile(q2, x)).collect();
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let gens = q1.generating_set();
    let allowed = |x: usize, y: usize| p1[x] == p2[y];
    EmbeddingSearch::new(q1, q2).run(&gens, &allowed)
}

/// Checks that `map` is an injective homomorphism `source → target`.
pub fn is_embedding(source: &FiniteQuandle, target: &FiniteQuandle, map: &[usize]) -> bool {
    let n = source.n();
    map.len() == n
        && map.iter().collect::<BTreeSet<_>>().len() == n
        && (0..n).all(|x| (0..n).all(|y| map[source.op(x, y)] == target.op(map[x], map[y])))
}
