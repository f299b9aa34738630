//! Subspaces of F_p^d in reduced row echelon form, and Lie / two-sided
//! ideal closures inside a [`FiniteAlgebra`].

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::Prime;
use crate::finalg::{AlgebraElement, FiniteAlgebra};

/// A linear subspace of F_p^d with a canonical RREF basis. Two subspaces
/// are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceData")]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct SubspaceData {
    p: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
}

impl TryFrom<SubspaceData> for Subspace {
    type Error = String;

    fn try_from(d: SubspaceData) -> Result<Self, String> {
        let p = Prime::new(d.p).map_err(|e| e.to_string())?;
        let s = Subspace::span(p, d.ambient_dim, &d.basis).map_err(|e| e.to_string())?;
        if s.basis != d.basis {
            return Err("basis is not in reduced row echelon form".into());
        }
        Ok(s)
    }
}

impl Subspace {
    pub fn zero(p: Prime, ambient_dim: usize) -> Self {
        Subspace {
            p: p.get(),
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn span(p: Prime, ambient_dim: usize, vectors: &[Vec<u32>]) -> Result<Self, AlgebraError> {
        let mut s = Subspace::zero(p, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    fn prime(&self) -> Prime {
        Prime::new(self.p).expect("stored prime")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `p^rank`.
    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.p).pow(self.rank() as u32)
    }

    fn pivot(row: &[u32]) -> usize {
        row.iter().position(|&c| c != 0).expect("basis rows are nonzero")
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.prime();
        let mut v: Vec<u32> = v.iter().map(|&c| c % self.p).collect();
        for row in &self.basis {
            let piv = Self::pivot(row);
            let c = v[piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = p.sub(*x, p.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Adds `v` to the span. Returns the normalized new basis row, or
    /// `None` if `v` was already in the subspace.
    pub fn insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        let p = self.prime();
        let mut r = self.reduce(v);
        let piv = r.iter().position(|&c| c != 0)?;
        let inv = p.inv(r[piv]).expect("nonzero");
        for x in r.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for row in self.basis.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = p.sub(*x, p.mul(c, y));
                }
            }
        }
        let at = self
            .basis
            .iter()
            .position(|row| Self::pivot(row) > piv)
            .unwrap_or(self.basis.len());
        self.basis.insert(at, r.clone());
        Some(r)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Every vector of the subspace, in lexicographic order. Only sensible
    /// for small ranks.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.prime();
        let mut out = Vec::new();
        let total = (self.p as u64).pow(self.rank() as u32);
        for mut idx in 0..total {
            let mut v = vec![0; self.ambient_dim];
            for row in self.basis.iter().rev() {
                let c = (idx % self.p as u64) as u32;
                idx /= self.p as u64;
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = p.add(*x, p.mul(c, r));
                }
            }
            out.push(v);
        }
        out.sort();
        out
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by rank, then by basis rows lexicographically.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), &self.basis, self.p, self.ambient_dim).cmp(&(
            other.rank(),
            &other.basis,
            other.p,
            other.ambient_dim,
        ))
    }
}

fn saturate(
    alg: &FiniteAlgebra,
    gens: &[AlgebraElement],
    products: impl Fn(&AlgebraElement, &AlgebraElement) -> Vec<AlgebraElement>,
) -> Result<Subspace, AlgebraError> {
    let mut s = Subspace::zero(alg.p(), alg.dim());
    let mut queue = Vec::new();
    for g in gens {
        if g.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: alg.dim(),
                got: g.dim(),
            });
        }
        if let Some(row) = s.insert(g.coeffs()) {
            queue.push(AlgebraElement::new(row));
        }
    }
    let basis: Vec<AlgebraElement> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    while let Some(x) = queue.pop() {
        for e in &basis {
            for y in products(e, &x) {
                if let Some(row) = s.insert(y.coeffs()) {
                    queue.push(AlgebraElement::new(row));
                }
            }
        }
    }
    Ok(s)
}

/// Smallest subspace containing `gens` and closed under bracketing with
/// the whole algebra.
pub fn lie_ideal(alg: &FiniteAlgebra, gens: &[AlgebraElement]) -> Result<Subspace, AlgebraError> {
    saturate(alg, gens, |e, x| vec![alg.bracket_unchecked(e, x)])
}

/// Smallest two-sided ideal containing `gens`.
pub fn assoc_ideal(alg: &FiniteAlgebra, gens: &[AlgebraElement]) -> Result<Subspace, AlgebraError> {
    saturate(alg, gens, |e, x| vec![alg.mul(e, x), alg.mul(x, e)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn is_rref(s: &Subspace) -> bool {
        let pivots: Vec<usize> = s.basis().iter().map(|r| Subspace::pivot(r)).collect();
        pivots.windows(2).all(|w| w[0] < w[1])
            && s.basis().iter().zip(&pivots).all(|(r, &c)| r[c] == 1)
            && pivots
                .iter()
                .enumerate()
                .all(|(i, &c)| s.basis().iter().enumerate().all(|(j, r)| j == i || r[c] == 0))
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(p(3), 3, &[]).unwrap().rank(), 0);
        let s = Subspace::span(p(3), 3, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(is_rref(&s));
        let four = [vec![0, 0, 0, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![1, 1, 1, 1]];
        let s = Subspace::span(p(2), 4, &four).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.elements(), {
            let mut v = four.to_vec();
            v.sort();
            v
        });
        assert!(Subspace::span(p(2), 4, &[vec![1]]).is_err());
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(p(5), 3, &[vec![1, 2, 3], vec![0, 1, 4]]).unwrap();
        let b = Subspace::span(p(5), 3, &[vec![1, 3, 2], vec![2, 4, 1], vec![1, 2, 3]]).unwrap();
        assert!(is_rref(&a) && is_rref(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn cardinalities() {
        assert_eq!(Subspace::zero(p(2), 3).cardinality(), BigUint::from(1u32));
        let s = Subspace::span(p(2), 4, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        assert_eq!(s.cardinality(), BigUint::from(4u32));
        let full = Subspace::span(
            p(2),
            4,
            &(0..4)
                .map(|i| FiniteAlgebra::matrix(2, 2).unwrap().basis(i).into_coeffs())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(full.cardinality(), BigUint::from(16u32));
    }

    #[test]
    fn lie_ideal_of_identity_and_swap() {
        let a = FiniteAlgebra::matrix(2, 2).unwrap();
        let i = AlgebraElement::new(vec![1, 0, 0, 1]);
        let e = AlgebraElement::new(vec![0, 1, 1, 0]);
        let s = lie_ideal(&a, &[i.clone(), e.clone()]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(
            s.elements(),
            vec![vec![0, 0, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(lie_ideal(&a, &[]).unwrap().rank(), 0);
        assert_eq!(lie_ideal(&a, std::slice::from_ref(&i)).unwrap().rank(), 1);
        assert_eq!(assoc_ideal(&a, &[e]).unwrap().rank(), 4);
        assert_eq!(assoc_ideal(&a, &[a.one()]).unwrap().rank(), 4);
        assert_eq!(assoc_ideal(&a, &[]).unwrap().rank(), 0);
        // E_11 generates everything as a two-sided ideal of a simple algebra
        assert_eq!(assoc_ideal(&a, &[a.basis(0)]).unwrap().rank(), 4);
    }

    #[test]
    fn commutative_lie_ideal_is_span() {
        let c4 = FiniteAlgebra::group_algebra(3, &Group::cyclic(4), "C4").unwrap();
        let gens = [c4.basis(1), AlgebraElement::new(vec![2, 0, 1, 0])];
        let s = lie_ideal(&c4, &gens).unwrap();
        let span = Subspace::span(c4.p(), 4, &gens.iter().map(|g| g.coeffs().to_vec()).collect::<Vec<_>>()).unwrap();
        assert_eq!(s, span);
        assert_eq!(assoc_ideal(&c4, &[c4.basis(2)]).unwrap().rank(), 4);
    }

    #[test]
    fn ordering_by_rank_then_basis() {
        let a = Subspace::span(p(2), 2, &[vec![0, 1]]).unwrap();
        let b = Subspace::span(p(2), 2, &[vec![1, 0]]).unwrap();
        let c = Subspace::span(p(2), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let mut v = vec![c.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn json_round_trip() {
        let s = Subspace::span(p(3), 3, &[vec![1, 2, 0]]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Subspace>(&text).unwrap(), s);
        assert!(serde_json::from_str::<Subspace>(r#"{"p":4,"ambient_dim":1,"basis":[]}"#).is_err());
        assert!(serde_json::from_str::<Subspace>(r#"{"p":3,"ambient_dim":2,"basis":[[2,0]]}"#).is_err());
    }
}
