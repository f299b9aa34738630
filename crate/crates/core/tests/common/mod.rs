#![allow(dead_code)]

use std::collections::BTreeSet;

use quandle_lie::linkdiag::{build_diagram, lookup_link, parse_pd};
use quandle_lie::{FiniteAlgebra, FiniteQuandle, Group, LinkDiagram, DEFAULT_ENUMERATION_BOUND};

pub const MQ: &str = include_str!("../../data/quandles/mq.txt");

pub const TREFOIL: &str = "X- 1 4 2 5\nX- 3 6 4 1\nX- 5 2 6 3\n";
/// Trefoil with an extra Reidemeister I kink, two ways.
pub const TREFOIL_KINK_A: &str = "X- 1 4 2 5\nX- 3 8 4 1\nX- 5 2 6 3\nX+ 6 8 7 7\n";
pub const TREFOIL_KINK_B: &str = "X- 1 4 2 5\nX- 3 8 4 1\nX- 5 2 6 3\nX- 6 7 7 8\n";
/// Trefoil with a Reidemeister II pair pushed across one strand.
pub const TREFOIL_R2: &str = "X- 8 10 2 5\nX- 3 6 4 1\nX- 5 2 6 3\nX- 1 4 7 9\nX+ 7 10 8 9\n";

pub fn mq() -> FiniteQuandle {
    quandle_lie::parse_quandle(MQ).unwrap()
}

pub fn diagram(name: &str) -> LinkDiagram {
    build_diagram(&lookup_link(name).unwrap())
}

pub fn pd_diagram(text: &str) -> LinkDiagram {
    build_diagram(&parse_pd(text).unwrap())
}

/// Quandles with at most six elements, with names.
pub fn small_quandles() -> Vec<(String, FiniteQuandle)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("trivial:{n}"), FiniteQuandle::trivial(n)));
    }
    for (p, t) in [(2, 1), (3, 2), (5, 2), (5, 3), (5, 4)] {
        out.push((format!("alexander:{p}:{t}"), FiniteQuandle::alexander(p, t).unwrap()));
    }
    out.push(("symplectic:2:1".into(), FiniteQuandle::symplectic(2, 1).unwrap()));
    out.push(("conj:S3".into(), FiniteQuandle::conjugation(&Group::symmetric3(), 1)));
    out.push(("conj:S3:2".into(), FiniteQuandle::conjugation(&Group::symmetric3(), 2)));
    out.push(("conj:C4".into(), FiniteQuandle::conjugation(&Group::cyclic(4), 1)));
    out.push(("M_Q".into(), mq()));
    let units = FiniteAlgebra::matrix(2, 2)
        .unwrap()
        .quandle_of_units(1, DEFAULT_ENUMERATION_BOUND)
        .unwrap();
    out.push(("units:M2:2".into(), units.quandle));
    out
}

/// Diagrams with at most four arcs.
pub fn small_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = ["unknot", "3_1", "L2a1", "L4a1"]
        .iter()
        .map(|n| (n.to_string(), diagram(n)))
        .collect();
    out.push(("trefoil+kink".into(), pd_diagram(TREFOIL_KINK_A)));
    out.push(("trefoil+kink'".into(), pd_diagram(TREFOIL_KINK_B)));
    let mirrored = quandle_lie::mirror(&parse_pd(TREFOIL).unwrap());
    out.push(("mirror 3_1".into(), build_diagram(&mirrored)));
    for c in 1..=3 {
        out.push((format!("unlink{c}"), LinkDiagram::unlink(c)));
    }
    out.retain(|(_, d)| d.arc_count() <= 4);
    out
}

/// Brute-force colorings: every assignment of labels to arcs, filtered
/// by the crossing relations. Right division is found by searching the
/// column rather than through the quandle's inverse table.
pub fn naive_colorings(d: &LinkDiagram, q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.n();
    let arcs = d.arc_count();
    let total = n.pow(arcs as u32);
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut labels = vec![0; arcs];
        for slot in labels.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        let ok = d.relations().iter().all(|r| {
            let (a, b, c) = (labels[r.under_in], labels[r.over], labels[r.under_out]);
            match r.sign.as_i8() {
                1 => q.op(a, b) == c,
                _ => q.op(c, b) == a,
            }
        });
        if ok {
            out.push(labels);
        }
    }
    out
}

/// Checks the three quandle axioms straight from the table.
pub fn is_quandle(q: &FiniteQuandle) -> bool {
    let n = q.n();
    (0..n).all(|x| q.op(x, x) == x)
        && (0..n).all(|y| (0..n).map(|x| q.op(x, y)).collect::<BTreeSet<_>>().len() == n)
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| q.op(q.op(x, y), z) == q.op(q.op(x, z), q.op(y, z)))))
}

type Product = Box<dyn Fn(&[u32], &[u32]) -> Vec<u32>>;

/// An algebra known only through its elements and a hand-written product,
/// for exhaustive ideal checks.
pub struct OracleAlgebra {
    pub p: u32,
    pub dim: usize,
    mul: Product,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Lie,
    TwoSided,
}

impl OracleAlgebra {
    /// m×m matrices, row-major.
    pub fn matrices(p: u32, m: usize) -> Self {
        let mul = move |a: &[u32], b: &[u32]| {
            let mut c = vec![0; m * m];
            for i in 0..m {
                for j in 0..m {
                    let s: u32 = (0..m).map(|k| a[i * m + k] * b[k * m + j]).sum();
                    c[i * m + j] = s % p;
                }
            }
            c
        };
        OracleAlgebra {
            p,
            dim: m * m,
            mul: Box::new(mul),
        }
    }

    /// Group ring, coefficient `i` on group element `i`.
    pub fn group_ring(p: u32, g: &Group) -> Self {
        let table = g.table().to_vec();
        let n = table.len();
        let mul = move |a: &[u32], b: &[u32]| {
            let mut c = vec![0; n];
            for x in 0..n {
                for y in 0..n {
                    c[table[x][y]] = (c[table[x][y]] + a[x] * b[y]) % p;
                }
            }
            c
        };
        OracleAlgebra {
            p,
            dim: n,
            mul: Box::new(mul),
        }
    }

    pub fn all(&self) -> Vec<Vec<u32>> {
        let total = (self.p as usize).pow(self.dim as u32);
        (0..total)
            .map(|mut i| {
                let mut v = vec![0; self.dim];
                for slot in v.iter_mut().rev() {
                    *slot = (i % self.p as usize) as u32;
                    i /= self.p as usize;
                }
                v
            })
            .collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        (self.mul)(a, b)
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|x| x * c % self.p).collect()
    }

    fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    /// Smallest subset containing `gens` (and 0) closed under sums,
    /// scalar multiples, and brackets with (or two-sided products by)
    /// every element of the algebra.
    pub fn closure(&self, gens: &[Vec<u32>], kind: Closure) -> BTreeSet<Vec<u32>> {
        let everything = self.all();
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut todo: Vec<Vec<u32>> = vec![vec![0; self.dim]];
        todo.extend(gens.iter().cloned());
        while let Some(x) = todo.pop() {
            if !set.insert(x.clone()) {
                continue;
            }
            let mut fresh = Vec::new();
            for y in &set {
                fresh.push(self.add(&x, y));
            }
            for c in 2..self.p {
                fresh.push(self.scale(c, &x));
            }
            for a in &everything {
                match kind {
                    Closure::Lie => fresh.push(self.sub(&self.mul(a, &x), &self.mul(&x, a))),
                    Closure::TwoSided => {
                        fresh.push(self.mul(a, &x));
                        fresh.push(self.mul(&x, a));
                    }
                }
            }
            todo.extend(fresh.into_iter().filter(|v| !set.contains(v)));
        }
        set
    }
}

/// The three small algebras used by the exhaustive ideal checks, as
/// (name, library algebra, oracle).
pub fn oracle_algebras() -> Vec<(&'static str, FiniteAlgebra, OracleAlgebra)> {
    let v4 = Group::by_name("V4").unwrap();
    vec![
        (
            "M2:2",
            FiniteAlgebra::matrix(2, 2).unwrap(),
            OracleAlgebra::matrices(2, 2),
        ),
        (
            "GA:2:V4",
            FiniteAlgebra::group_algebra(2, &v4, "V4").unwrap(),
            OracleAlgebra::group_ring(2, &v4),
        ),
        (
            "GA:3:C4",
            FiniteAlgebra::group_algebra(3, &Group::cyclic(4), "C4").unwrap(),
            OracleAlgebra::group_ring(3, &Group::cyclic(4)),
        ),
    ]
}

/// Signed PD text of the closure of a braid on `strands` strands. Letter
/// `k > 0` is σ_k (left strand over), `k < 0` its inverse. Strands run
/// upward; each crossing is read counterclockwise from its incoming
/// under-edge.
pub fn braid_closure(strands: usize, word: &[i32]) -> String {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings: Vec<(char, [u32; 4])> = Vec::new();
    for &k in word {
        let i = k.unsigned_abs() as usize - 1;
        let (x, y) = (cur[i], cur[i + 1]);
        let (xo, yo) = (next, next + 1);
        next += 2;
        if k > 0 {
            // under runs bottom-right to top-left
            crossings.push(('+', [y, yo, xo, x]));
        } else {
            crossings.push(('-', [x, y, yo, xo]));
        }
        cur[i] = xo;
        cur[i + 1] = yo;
    }
    // close up: the top edge at each position is the bottom edge there
    let rename = |e: u32| cur.iter().position(|&c| c == e).map_or(e, |j| j as u32 + 1);
    let mut used: Vec<u32> = crossings
        .iter()
        .flat_map(|(_, es)| es.iter().map(|&e| rename(e)))
        .collect();
    used.sort();
    used.dedup();
    let id = |e: u32| used.binary_search(&rename(e)).unwrap() as u32 + 1;
    crossings
        .iter()
        .map(|(s, es)| format!("X{s} {} {} {} {}\n", id(es[0]), id(es[1]), id(es[2]), id(es[3])))
        .collect()
}
