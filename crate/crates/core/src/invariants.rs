//! Enhancement polynomials built from colorings and ideal closures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::colorings::{coloring_image, enumerate_colorings, Coloring};
use crate::error::AlgebraError;
use crate::finalg::{AlgebraElement, FiniteAlgebra, UnitsQuandle};
use crate::ideals::{assoc_ideal, lie_ideal, Subspace};
use crate::linkdiag::LinkDiagram;
use crate::quandle::FiniteQuandle;

/// `Σ c·u^e` with natural exponents and positive coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(String, u64)>", try_from = "Vec<(String, u64)>")]
pub struct GenPolynomial {
    terms: BTreeMap<BigUint, u64>,
}

impl GenPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, exponent: BigUint, coeff: u64) {
        if coeff > 0 {
            *self.terms.entry(exponent).or_insert(0) += coeff;
        }
    }

    pub fn terms(&self) -> &BTreeMap<BigUint, u64> {
        &self.terms
    }

    pub fn coefficient(&self, exponent: &BigUint) -> u64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    /// Value at `u = 1`.
    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `f` to every exponent, merging collisions.
    pub fn map_exponents(&self, f: impl Fn(&BigUint) -> BigUint) -> GenPolynomial {
        let mut out = GenPolynomial::new();
        for (e, &c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }
}

impl FromIterator<(BigUint, u64)> for GenPolynomial {
    fn from_iter<I: IntoIterator<Item = (BigUint, u64)>>(iter: I) -> Self {
        let mut p = GenPolynomial::new();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }
}

impl From<GenPolynomial> for Vec<(String, u64)> {
    fn from(p: GenPolynomial) -> Self {
        p.terms.into_iter().map(|(e, c)| (e.to_string(), c)).collect()
    }
}

impl TryFrom<Vec<(String, u64)>> for GenPolynomial {
    type Error = String;

    fn try_from(pairs: Vec<(String, u64)>) -> Result<Self, String> {
        pairs
            .into_iter()
            .map(|(e, c)| {
                e.parse::<BigUint>()
                    .map(|e| (e, c))
                    .map_err(|_| format!("bad exponent {e:?}"))
            })
            .collect()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, var: &str, e: &BigUint) -> fmt::Result {
    if *e == BigUint::from(0u32) {
        Ok(())
    } else if *e == BigUint::from(1u32) {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

/// Terms in decreasing exponent order, e.g. `20u^16+9u^4+2u^2`; `0` when
/// empty.
impl fmt::Display for GenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let constant = *e == BigUint::from(0u32);
            if c != 1 || constant {
                write!(f, "{c}")?;
            }
            write_monomial(f, "u", e)?;
        }
        Ok(())
    }
}

pub fn format_polynomial(poly: &GenPolynomial) -> String {
    poly.to_string()
}

/// `Σ c·u^a v^b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(String, String, u64)>", try_from = "Vec<(String, String, u64)>")]
pub struct BiPolynomial {
    terms: BTreeMap<(BigUint, BigUint), u64>,
}

impl BiPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, u: BigUint, v: BigUint, coeff: u64) {
        if coeff > 0 {
            *self.terms.entry((u, v)).or_insert(0) += coeff;
        }
    }

    pub fn terms(&self) -> &BTreeMap<(BigUint, BigUint), u64> {
        &self.terms
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Substitutes `v = 1`.
    pub fn at_v_one(&self) -> GenPolynomial {
        self.terms.iter().map(|((u, _), &c)| (u.clone(), c)).collect()
    }

    /// Substitutes `u = 1`, renaming `v` to `u`.
    pub fn at_u_one(&self) -> GenPolynomial {
        self.terms.iter().map(|((_, v), &c)| (v.clone(), c)).collect()
    }
}

impl From<BiPolynomial> for Vec<(String, String, u64)> {
    fn from(p: BiPolynomial) -> Self {
        p.terms
            .into_iter()
            .map(|((u, v), c)| (u.to_string(), v.to_string(), c))
            .collect()
    }
}

impl TryFrom<Vec<(String, String, u64)>> for BiPolynomial {
    type Error = String;

    fn try_from(triples: Vec<(String, String, u64)>) -> Result<Self, String> {
        let mut p = BiPolynomial::new();
        for (u, v, c) in triples {
            let parse = |s: &str| s.parse::<BigUint>().map_err(|_| format!("bad exponent {s:?}"));
            p.add_term(parse(&u)?, parse(&v)?, c);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((u, v), &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let zero = BigUint::from(0u32);
            if c != 1 || (*u == zero && *v == zero) {
                write!(f, "{c}")?;
            }
            write_monomial(f, "u", u)?;
            write_monomial(f, "v", v)?;
        }
        Ok(())
    }
}

/// Whether ideal exponents record `p^rank` or the rank itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentMode {
    #[default]
    #[serde(rename = "card")]
    Cardinality,
    Rank,
}

impl ExponentMode {
    pub fn exponent(self, s: &Subspace) -> BigUint {
        match self {
            ExponentMode::Cardinality => s.cardinality(),
            ExponentMode::Rank => BigUint::from(s.rank()),
        }
    }
}

/// `Σ u^{|Im f|}` over colorings `f`.
pub fn image_enhancement(d: &LinkDiagram, q: &FiniteQuandle) -> GenPolynomial {
    image_polynomial(&enumerate_colorings(d, q), q)
}

fn image_polynomial(colorings: &[Coloring], q: &FiniteQuandle) -> GenPolynomial {
    colorings
        .iter()
        .map(|c| (BigUint::from(coloring_image(c, q).len()), 1))
        .collect()
}

/// Lie and associative ideals of each coloring's image, memoized by image.
pub struct IdealTable<'a> {
    alg: &'a FiniteAlgebra,
    uq: &'a UnitsQuandle,
    cache: HashMap<BTreeSet<usize>, (Subspace, Subspace)>,
}

impl<'a> IdealTable<'a> {
    pub fn new(alg: &'a FiniteAlgebra, uq: &'a UnitsQuandle) -> Self {
        IdealTable {
            alg,
            uq,
            cache: HashMap::new(),
        }
    }

    /// `(I(Im f), AI(Im f))` for one coloring.
    pub fn ideals(&mut self, col: &Coloring) -> Result<&(Subspace, Subspace), AlgebraError> {
        let image = coloring_image(col, &self.uq.quandle);
        if !self.cache.contains_key(&image) {
            let gens: Vec<AlgebraElement> = image.iter().map(|&i| self.uq.elements[i].clone()).collect();
            let pair = (lie_ideal(self.alg, &gens)?, assoc_ideal(self.alg, &gens)?);
            self.cache.insert(image.clone(), pair);
        }
        Ok(&self.cache[&image])
    }
}

fn ideal_pairs(
    d: &LinkDiagram,
    uq: &UnitsQuandle,
    alg: &FiniteAlgebra,
) -> Result<Vec<(Subspace, Subspace)>, AlgebraError> {
    let mut table = IdealTable::new(alg, uq);
    enumerate_colorings(d, &uq.quandle)
        .iter()
        .map(|c| table.ideals(c).cloned())
        .collect()
}

/// `Σ u^{|I(Im f)|}` (or `u^{rank}` in rank mode).
pub fn lie_polynomial(
    d: &LinkDiagram,
    uq: &UnitsQuandle,
    alg: &FiniteAlgebra,
    mode: ExponentMode,
) -> Result<GenPolynomial, AlgebraError> {
    Ok(ideal_pairs(d, uq, alg)?
        .iter()
        .map(|(lie, _)| (mode.exponent(lie), 1))
        .collect())
}

/// `Σ u^{|AI(Im f)|}`.
pub fn assoc_polynomial(
    d: &LinkDiagram,
    uq: &UnitsQuandle,
    alg: &FiniteAlgebra,
    mode: ExponentMode,
) -> Result<GenPolynomial, AlgebraError> {
    Ok(ideal_pairs(d, uq, alg)?
        .iter()
        .map(|(_, assoc)| (mode.exponent(assoc), 1))
        .collect())
}

/// `Σ u^{|I(Im f)|} v^{|AI(Im f)|}`.
pub fn two_variable_polynomial(
    d: &LinkDiagram,
    uq: &UnitsQuandle,
    alg: &FiniteAlgebra,
    mode: ExponentMode,
) -> Result<BiPolynomial, AlgebraError> {
    let mut out = BiPolynomial::new();
    for (lie, assoc) in ideal_pairs(d, uq, alg)? {
        out.add_term(mode.exponent(&lie), mode.exponent(&assoc), 1);
    }
    Ok(out)
}

/// The multiset of Lie ideals, sorted by rank and then basis.
pub fn lie_multiset(d: &LinkDiagram, uq: &UnitsQuandle, alg: &FiniteAlgebra) -> Result<Vec<Subspace>, AlgebraError> {
    let mut out: Vec<Subspace> = ideal_pairs(d, uq, alg)?.into_iter().map(|(lie, _)| lie).collect();
    out.sort();
    Ok(out)
}

/// Stirling number of the second kind; `None` when `k > c`.
pub fn stirling2(c: u32, k: u32) -> Option<u64> {
    if k > c {
        return None;
    }
    // row-by-row recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1)
    let mut row = vec![1u64];
    for n in 1..=c as usize {
        let mut next = vec![0u64; n + 1];
        for j in 1..=n {
            let keep = if j < n {
                row[j].checked_mul(j as u64).expect("Stirling number overflows u64")
            } else {
                0
            };
            next[j] = keep.checked_add(row[j - 1]).expect("Stirling number overflows u64");
        }
        row = next;
    }
    Some(row[k as usize])
}

/// `(n)_k = n(n-1)…(n-k+1)`; `None` when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return None;
    }
    Some((0..k).fold(1u64, |acc, i| {
        acc.checked_mul(n - i).expect("falling factorial overflows u64")
    }))
}

/// `Σ_{k=1}^{c} (n)_k S(c,k) u^{p^k}`; with `p = None` the exponents are
/// `k` (the rank form).
pub fn abelian_closed_form(n: u64, c: u32, p: Option<u32>) -> GenPolynomial {
    (1..=c)
        .filter_map(|k| {
            let coeff = falling_factorial(n, k as u64)?.checked_mul(stirling2(c, k)?)?;
            let e = match p {
                Some(p) => BigUint::from(p).pow(k),
                None => BigUint::from(k),
            };
            Some((e, coeff))
        })
        .collect()
}

/// All invariants of one (link, quandle, algebra) input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnhancementReport {
    pub link: String,
    pub quandle: String,
    pub algebra: Option<String>,
    pub counting: u64,
    pub phi_im: GenPolynomial,
    pub phi_lie: Option<GenPolynomial>,
    pub phi_assoc: Option<GenPolynomial>,
    pub phi_two: Option<BiPolynomial>,
    pub mode: ExponentMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_multiset: Option<Vec<Vec<Vec<u32>>>>,
}

impl EnhancementReport {
    /// Counting invariant and image enhancement only.
    pub fn for_quandle(link: &str, quandle: &str, d: &LinkDiagram, q: &FiniteQuandle) -> Self {
        let cols = enumerate_colorings(d, q);
        EnhancementReport {
            link: link.to_string(),
            quandle: quandle.to_string(),
            algebra: None,
            counting: cols.len() as u64,
            phi_im: image_polynomial(&cols, q),
            phi_lie: None,
            phi_assoc: None,
            phi_two: None,
            mode: ExponentMode::Cardinality,
            ideal_multiset: None,
        }
    }

    /// Everything, for a quandle realized inside the units of `alg`.
    pub fn for_units(
        link: &str,
        quandle: &str,
        d: &LinkDiagram,
        uq: &UnitsQuandle,
        alg: &FiniteAlgebra,
        mode: ExponentMode,
        with_multiset: bool,
    ) -> Result<Self, AlgebraError> {
        let cols = enumerate_colorings(d, &uq.quandle);
        let mut table = IdealTable::new(alg, uq);
        let mut lie = GenPolynomial::new();
        let mut assoc = GenPolynomial::new();
        let mut two = BiPolynomial::new();
        let mut multiset = Vec::new();
        for c in &cols {
            let (li, ai) = table.ideals(c)?;
            lie.add_term(mode.exponent(li), 1);
            assoc.add_term(mode.exponent(ai), 1);
            two.add_term(mode.exponent(li), mode.exponent(ai), 1);
            if with_multiset {
                multiset.push(li.clone());
            }
        }
        multiset.sort();
        Ok(EnhancementReport {
            link: link.to_string(),
            quandle: quandle.to_string(),
            algebra: Some(alg.name().to_string()),
            counting: cols.len() as u64,
            phi_im: image_polynomial(&cols, &uq.quandle),
            phi_lie: Some(lie),
            phi_assoc: Some(assoc),
            phi_two: Some(two),
            mode,
            ideal_multiset: with_multiset.then(|| multiset.into_iter().map(|s| s.basis().to_vec()).collect()),
        })
    }

    /// Every polynomial's coefficients sum to the counting invariant.
    pub fn sums_consistent(&self) -> bool {
        let c = self.counting;
        self.phi_im.coefficient_sum() == c
            && self.phi_lie.as_ref().is_none_or(|p| p.coefficient_sum() == c)
            && self.phi_assoc.as_ref().is_none_or(|p| p.coefficient_sum() == c)
            && self.phi_two.as_ref().is_none_or(|p| p.coefficient_sum() == c)
            && self.ideal_multiset.as_ref().is_none_or(|m| m.len() as u64 == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::{build_diagram, lookup_link};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn poly(terms: &[(u64, u64)]) -> GenPolynomial {
        terms.iter().map(|&(e, c)| (big(e), c)).collect()
    }

    fn diagram(name: &str) -> LinkDiagram {
        build_diagram(&lookup_link(name).unwrap())
    }

    #[test]
    fn formatting() {
        assert_eq!(poly(&[(16, 20), (4, 9), (2, 2)]).to_string(), "20u^16+9u^4+2u^2");
        assert_eq!(poly(&[(1, 3), (3, 6)]).to_string(), "6u^3+3u");
        assert_eq!(GenPolynomial::new().to_string(), "0");
        assert_eq!(poly(&[(0, 1), (1, 1)]).to_string(), "u+1");
        let mut b = BiPolynomial::new();
        b.add_term(big(16), big(16), 20);
        b.add_term(big(2), big(16), 1);
        assert_eq!(b.to_string(), "20u^16v^16+u^2v^16");
        assert_eq!(BiPolynomial::new().to_string(), "0");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = poly(&[(3, 0), (2, 1)]);
        assert_eq!(p.terms().len(), 1);
    }

    #[test]
    fn json_round_trips() {
        let p = poly(&[(16, 20), (4, 9)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"[["4",9],["16",20]]"#);
        assert_eq!(serde_json::from_str::<GenPolynomial>(&text).unwrap(), p);
        assert!(serde_json::from_str::<GenPolynomial>(r#"[["x",1]]"#).is_err());
    }

    #[test]
    fn image_examples() {
        let q = FiniteQuandle::alexander(3, 2).unwrap();
        assert_eq!(image_enhancement(&diagram("3_1"), &q).to_string(), "6u^3+3u");
        assert_eq!(
            image_enhancement(&diagram("unknot"), &FiniteQuandle::trivial(4)).to_string(),
            "4u"
        );
        assert_eq!(
            image_enhancement(&diagram("L2a1"), &FiniteQuandle::trivial(2)).to_string(),
            "2u^2+2u"
        );
    }

    #[test]
    fn stirling_and_falling() {
        assert_eq!(stirling2(3, 1), Some(1));
        assert_eq!(stirling2(3, 2), Some(3));
        assert_eq!(stirling2(3, 3), Some(1));
        assert_eq!(stirling2(5, 2), Some(15));
        assert_eq!(stirling2(0, 0), Some(1));
        assert_eq!(stirling2(4, 0), Some(0));
        assert_eq!(stirling2(2, 3), None);
        assert_eq!(falling_factorial(4, 3), Some(24));
        assert_eq!(falling_factorial(4, 0), Some(1));
        assert_eq!(falling_factorial(2, 3), None);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(abelian_closed_form(4, 3, Some(3)).to_string(), "24u^27+36u^9+4u^3");
        assert_eq!(abelian_closed_form(7, 1, Some(5)).to_string(), "7u^5");
        assert_eq!(abelian_closed_form(2, 2, Some(2)).to_string(), "2u^4+2u^2");
        assert_eq!(abelian_closed_form(2, 3, None).to_string(), "6u^2+2u");
    }

    #[test]
    fn l7a4_units_of_m2() {
        let alg = FiniteAlgebra::matrix(2, 2).unwrap();
        let uq = alg
            .quandle_of_units(1, crate::finalg::DEFAULT_ENUMERATION_BOUND)
            .unwrap();
        let d = diagram("L7a4");
        let r = EnhancementReport::for_units("L7a4", "units", &d, &uq, &alg, ExponentMode::Cardinality, true).unwrap();
        assert!(r.sums_consistent());
        assert_eq!(r.phi_assoc.as_ref().unwrap().to_string(), format!("{}u^16", r.counting));
        let two = r.phi_two.as_ref().unwrap();
        assert_eq!(two.at_v_one(), *r.phi_lie.as_ref().unwrap());
        assert_eq!(two.at_u_one(), *r.phi_assoc.as_ref().unwrap());
        let rank = lie_polynomial(&d, &uq, &alg, ExponentMode::Rank).unwrap();
        assert_eq!(
            rank.map_exponents(|e| big(2).pow(e.try_into().unwrap())),
            *r.phi_lie.as_ref().unwrap()
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<EnhancementReport>(&text).unwrap(), r);
    }

    #[test]
    fn unknot_one_element_subquandle() {
        let alg = FiniteAlgebra::group_algebra(3, &crate::group::Group::cyclic(4), "C4").unwrap();
        let uq = alg.embed_elements(&[alg.one()], 1).unwrap();
        let d = diagram("unknot");
        let ms = lie_multiset(&d, &uq, &alg).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].rank(), 1);
        let two = two_variable_polynomial(&d, &uq, &alg, ExponentMode::Cardinality).unwrap();
        assert_eq!(two.to_string(), "u^3v^81");
    }
}
