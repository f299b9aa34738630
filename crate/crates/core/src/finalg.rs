//! Finite-dimensional associative unital algebras over F_p, given by
//! structure constants, and their quandles of units.
//!
//! The `n`-th quandle of units acts by `u ▷ v = v⁻ⁿ u vⁿ`. Elements are
//! ordered lexicographically by coefficient vector and every labeling
//! derived from enumerating an algebra follows that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::{solve, Prime};
use crate::group::Group;
use crate::quandle::{find_embedding, FiniteQuandle};

/// Default cap on `p^dim` for brute-force enumeration of an algebra.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 20;

/// Coefficient vector with respect to the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraElement(Vec<u32>);

impl AlgebraElement {
    pub fn new(coeffs: Vec<u32>) -> Self {
        AlgebraElement(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: Prime,
    dim: usize,
    /// `products[i][j]` lists the nonzero `(k, c)` with `e_i e_j = Σ c e_k`.
    products: Vec<Vec<Vec<(usize, u32)>>>,
    one: AlgebraElement,
    name: String,
}

impl FiniteAlgebra {
    /// Builds an algebra from dense structure constants `c[i][j][k]` and a
    /// unity, checking associativity and the unit law on the basis.
    pub fn from_structure_constants(
        p: u32,
        constants: &[Vec<Vec<u32>>],
        one: Vec<u32>,
        name: impl Into<String>,
    ) -> Result<Self, AlgebraError> {
        let p = Prime::new(p)?;
        let dim = constants.len();
        for row in constants {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
            }
        }
        if one.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                got: one.len(),
            });
        }
        let products = constants
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter_map(|(k, &c)| {
                                let c = c % p.get();
                                (c != 0).then_some((k, c))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let one = AlgebraElement(one.into_iter().map(|c| c % p.get()).collect());
        let alg = FiniteAlgebra {
            p,
            dim,
            products,
            one,
            name: name.into(),
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let basis: Vec<AlgebraElement> = (0..self.dim).map(|i| self.basis(i)).collect();
        for (i, a) in basis.iter().enumerate() {
            if self.mul(&self.one, a) != *a || self.mul(a, &self.one) != *a {
                return Err(AlgebraError::BadUnity);
            }
            for (j, b) in basis.iter().enumerate() {
                let ab = self.mul(a, b);
                for (k, c) in basis.iter().enumerate() {
                    if self.mul(&ab, c) != self.mul(a, &self.mul(b, c)) {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M_m(F_p)` with the matrix units `E_ij` (index `i·m + j`) as basis.
    pub fn matrix(p: u32, m: usize) -> Result<Self, AlgebraError> {
        let p = Prime::new(p)?;
        assert!(m >= 1, "matrix size must be positive");
        let dim = m * m;
        let mut products = vec![vec![Vec::new(); dim]; dim];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    products[i * m + j][j * m + k] = vec![(i * m + k, 1)];
                }
            }
        }
        let mut one = vec![0; dim];
        for i in 0..m {
            one[i * m + i] = 1;
        }
        Ok(FiniteAlgebra {
            p,
            dim,
            products,
            one: AlgebraElement(one),
            name: format!("M{m}:{p}"),
        })
    }

    /// The group algebra `F_p[G]`, basis indexed by group elements.
    pub fn group_algebra(p: u32, group: &Group, group_name: &str) -> Result<Self, AlgebraError> {
        let p = Prime::new(p)?;
        let dim = group.order();
        let products = (0..dim)
            .map(|g| (0..dim).map(|h| vec![(group.mul(g, h), 1)]).collect())
            .collect();
        let mut one = vec![0; dim];
        one[group.identity()] = 1;
        Ok(FiniteAlgebra {
            p,
            dim,
            products,
            one: AlgebraElement(one),
            name: format!("GA:{p}:{group_name}"),
        })
    }

    /// Parses `M<m>:<p>` or `GA:<p>:<group>`, where `<group>` is a name
    /// accepted by [`Group::by_name`] or a path to a Cayley table file.
    pub fn from_spec(spec: &str) -> Result<Self, AlgebraError> {
        let bad = |message: &str| AlgebraError::BadSpec {
            spec: spec.to_string(),
            message: message.to_string(),
        };
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            [m, p] if m.starts_with('M') => {
                let m: usize = m[1..].parse().map_err(|_| bad("matrix size is not an integer"))?;
                if m == 0 {
                    return Err(bad("matrix size must be positive"));
                }
                let p: u32 = p.parse().map_err(|_| bad("prime is not an integer"))?;
                FiniteAlgebra::matrix(p, m)
            }
            ["GA", p, group @ ..] if !group.is_empty() => {
                let p: u32 = p.parse().map_err(|_| bad("prime is not an integer"))?;
                let group_ref = group.join(":");
                let group = match Group::by_name(&group_ref) {
                    Ok(g) => g,
                    Err(named_err) => match std::fs::read_to_string(&group_ref) {
                        Ok(text) => Group::parse(&text)?,
                        Err(_) => return Err(named_err.into()),
                    },
                };
                FiniteAlgebra::group_algebra(p, &group, &group_ref)
            }
            _ => Err(bad("expected M<m>:<p> or GA:<p>:<group>")),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements `p^dim`, if it fits in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        (self.p.get() as u128).checked_pow(self.dim as u32)
    }

    pub fn one(&self) -> AlgebraElement {
        self.one.clone()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![0; self.dim])
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        AlgebraElement(v)
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: coeffs.len(),
            });
        }
        Ok(AlgebraElement(coeffs.into_iter().map(|c| c % self.p.get()).collect()))
    }

    /// The `index`-th element in lexicographic order.
    pub fn element_at(&self, mut index: u128) -> AlgebraElement {
        let p = self.p.get() as u128;
        let mut v = vec![0; self.dim];
        for slot in v.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        AlgebraElement(v)
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(&a, &b)| self.p.add(a, b)).collect())
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(&a, &b)| self.p.sub(a, b)).collect())
    }

    pub fn scale(&self, c: u32, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().map(|&a| self.p.mul(c, a)).collect())
    }

    /// Product without dimension checks; both operands must have length
    /// `dim`.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let p = self.p;
        let mut acc = vec![0u64; self.dim];
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = p.mul(a, b) as u64;
                for &(k, c) in &self.products[i][j] {
                    acc[k] = (acc[k] + ab * c as u64) % p.get() as u64;
                }
            }
        }
        AlgebraElement(acc.into_iter().map(|c| c as u32).collect())
    }

    /// `[x, y] = xy − yx`.
    pub fn bracket_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    fn check_dim(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            })
        }
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.products[i][j] == self.products[j][i]))
    }

    /// Two-sided inverse via the linear system `x·v = 1`, confirmed by
    /// `v·x = 1`.
    pub fn inverse(&self, x: &AlgebraElement) -> Option<AlgebraElement> {
        if x.dim() != self.dim {
            return None;
        }
        // column j of left multiplication by x is x·e_j
        let columns: Vec<AlgebraElement> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        let rows: Vec<Vec<u32>> = (0..self.dim)
            .map(|r| columns.iter().map(|c| c.0[r]).collect())
            .collect();
        let v = AlgebraElement(solve(self.p, &rows, &self.one.0)?);
        (self.mul(&v, x) == self.one).then_some(v)
    }

    pub fn is_unit(&self, x: &AlgebraElement) -> bool {
        self.inverse(x).is_some()
    }

    /// `x^k`; negative powers need `x` to be a unit.
    pub fn pow(&self, x: &AlgebraElement, k: i64) -> Option<AlgebraElement> {
        let mut base = if k < 0 { self.inverse(x)? } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }

    fn check_bound(&self, bound: u128) -> Result<u128, AlgebraError> {
        match self.cardinality() {
            Some(size) if size <= bound => Ok(size),
            size => Err(AlgebraError::BoundExceeded {
                size: size.unwrap_or(u128::MAX),
                bound,
            }),
        }
    }

    /// Every element, in lexicographic order.
    pub fn elements(&self, bound: u128) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let size = self.check_bound(bound)?;
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }

    /// All units, in lexicographic order.
    pub fn units(&self, bound: u128) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let size = self.check_bound(bound)? as u64;
        Ok((0..size)
            .into_par_iter()
            .filter_map(|i| {
                let x = self.element_at(i as u128);
                self.is_unit(&x).then_some(x)
            })
            .collect())
    }

    /// The `n`-th quandle of units on all units.
    pub fn quandle_of_units(&self, n: i64, bound: u128) -> Result<UnitsQuandle, AlgebraError> {
        let units = self.units(bound)?;
        Ok(UnitsQuandle::from_closed_set(self, units, n))
    }

    /// Closes `gens` under `u ↦ v⁻ⁿ u vⁿ` and its inverse action, giving a
    /// finite subquandle of the quandle of units.
    pub fn embed_elements(&self, gens: &[AlgebraElement], n: i64) -> Result<UnitsQuandle, AlgebraError> {
        for g in gens {
            self.check_dim(g)?;
            if !self.is_unit(g) {
                return Err(AlgebraError::NotAUnit(g.to_string()));
            }
        }
        let mut members: BTreeSet<AlgebraElement> = BTreeSet::new();
        let mut order: Vec<AlgebraElement> = Vec::new();
        let mut powers: Vec<(AlgebraElement, AlgebraElement)> = Vec::new();
        let push = |x: AlgebraElement,
                    members: &mut BTreeSet<AlgebraElement>,
                    order: &mut Vec<AlgebraElement>,
                    powers: &mut Vec<(AlgebraElement, AlgebraElement)>| {
            if members.insert(x.clone()) {
                let fwd = self.pow(&x, n).expect("unit");
                let back = self.pow(&x, -n).expect("unit");
                powers.push((fwd, back));
                order.push(x);
            }
        };
        for g in gens {
            push(g.clone(), &mut members, &mut order, &mut powers);
        }
        let mut k = 0;
        while k < order.len() {
            for idx in 0..=k {
                for (a, b) in [(k, idx), (idx, k)] {
                    let (vn, v_n) = powers[b].clone();
                    let u = order[a].clone();
                    let act = self.mul(&self.mul(&v_n, &u), &vn);
                    let back = self.mul(&self.mul(&vn, &u), &v_n);
                    push(act, &mut members, &mut order, &mut powers);
                    push(back, &mut members, &mut order, &mut powers);
                }
            }
            k += 1;
        }
        Ok(UnitsQuandle::from_closed_set(self, members.into_iter().collect(), n))
    }

    /// Finds a subquandle of the `n`-th quandle of units isomorphic to `q`
    /// (the first embedding in canonical unit order) and labels it by `q`'s
    /// own elements.
    pub fn embed_quandle(&self, q: &FiniteQuandle, n: i64, bound: u128) -> Result<UnitsQuandle, AlgebraError> {
        let all = self.quandle_of_units(n, bound)?;
        let map = find_embedding(q, &all.quandle).ok_or(AlgebraError::NoEmbedding)?;
        let elements = map.iter().map(|&i| all.elements[i].clone()).collect();
        Ok(UnitsQuandle {
            quandle: q.clone(),
            elements,
            n_fold: n,
        })
    }

    /// First ordered unit pair `(u, v)` violating `[v⁻¹, u] = [v, u⁻¹]`,
    /// or `None` when the identity holds on all units.
    pub fn bracket_identity_counterexample(
        &self,
        bound: u128,
    ) -> Result<Option<(AlgebraElement, AlgebraElement)>, AlgebraError> {
        let units = self.units(bound)?;
        let inverses: Vec<AlgebraElement> = units.iter().map(|u| self.inverse(u).expect("unit")).collect();
        let found = (0..units.len()).into_par_iter().find_first(|&i| {
            (0..units.len()).any(|j| {
                let lhs = self.bracket_unchecked(&inverses[j], &units[i]);
                let rhs = self.bracket_unchecked(&units[j], &inverses[i]);
                lhs != rhs
            })
        });
        Ok(found.map(|i| {
            let j = (0..units.len())
                .find(|&j| {
                    self.bracket_unchecked(&inverses[j], &units[i]) != self.bracket_unchecked(&units[j], &inverses[i])
                })
                .expect("witness exists");
            (units[i].clone(), units[j].clone())
        }))
    }

    pub fn verify_bracket_identity(&self, bound: u128) -> Result<bool, AlgebraError> {
        Ok(self.bracket_identity_counterexample(bound)?.is_none())
    }

    /// Whether `[u, v] = 0` for every pair of units.
    pub fn brackets_vanish_on_units(&self, bound: u128) -> Result<bool, AlgebraError> {
        let units = self.units(bound)?;
        Ok(units
            .par_iter()
            .all(|u| units.iter().all(|v| self.bracket_unchecked(u, v).is_zero())))
    }
}

/// A finite subquandle of the quandle of units, with its labeling:
/// quandle element `i` is `elements[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitsQuandle {
    pub quandle: FiniteQuandle,
    pub elements: Vec<AlgebraElement>,
    pub n_fold: i64,
}

impl UnitsQuandle {
    /// Builds the table on a set of units closed under the action.
    fn from_closed_set(alg: &FiniteAlgebra, elements: Vec<AlgebraElement>, n: i64) -> Self {
        let index: HashMap<&AlgebraElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let powers: Vec<(AlgebraElement, AlgebraElement)> = elements
            .par_iter()
            .map(|v| (alg.pow(v, n).expect("unit"), alg.pow(v, -n).expect("unit")))
            .collect();
        let op: Vec<Vec<usize>> = elements
            .par_iter()
            .map(|u| {
                powers
                    .iter()
                    .map(|(vn, v_n)| index[&alg.mul(&alg.mul(v_n, u), vn)])
                    .collect()
            })
            .collect();
        UnitsQuandle {
            quandle: FiniteQuandle::from_op_unchecked(op),
            elements,
            n_fold: n,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &AlgebraElement) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }
}
