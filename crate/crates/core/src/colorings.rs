//! Quandle colorings of a link diagram by constraint propagation and
//! backtracking.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linkdiag::{LinkDiagram, Relation, Sign};
use crate::quandle::FiniteQuandle;

/// An arc labeling; `labels[a]` is the quandle element on arc `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    pub labels: Vec<usize>,
}

impl Coloring {
    /// Distinct labels used.
    pub fn image(&self) -> BTreeSet<usize> {
        self.labels.iter().copied().collect()
    }
}

/// The label a relation forces on its outgoing under-arc.
fn forward(q: &FiniteQuandle, r: &Relation, under_in: usize, over: usize) -> usize {
    match r.sign {
        Sign::Positive => q.op(under_in, over),
        Sign::Negative => q.inv_op(under_in, over),
    }
}

fn backward(q: &FiniteQuandle, r: &Relation, under_out: usize, over: usize) -> usize {
    match r.sign {
        Sign::Positive => q.inv_op(under_out, over),
        Sign::Negative => q.op(under_out, over),
    }
}

pub fn is_coloring(d: &LinkDiagram, q: &FiniteQuandle, labels: &[usize]) -> bool {
    labels.len() == d.arc_count()
        && labels.iter().all(|&x| x < q.n())
        && d.relations()
            .iter()
            .all(|r| labels[r.under_out] == forward(q, r, labels[r.under_in], labels[r.over]))
}

struct Search<'a> {
    q: &'a FiniteQuandle,
    relations: &'a [Relation],
    /// relations touching each arc
    watch: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(d: &'a LinkDiagram, q: &'a FiniteQuandle) -> Self {
        let mut watch = vec![Vec::new(); d.arc_count()];
        for (i, r) in d.relations().iter().enumerate() {
            for a in [r.under_in, r.over, r.under_out] {
                if watch[a].last() != Some(&i) {
                    watch[a].push(i);
                }
            }
        }
        Search {
            q,
            relations: d.relations(),
            watch,
        }
    }

    fn set(&self, labels: &mut [Option<usize>], arc: usize, x: usize, queue: &mut Vec<usize>) -> bool {
        match labels[arc] {
            Some(y) => y == x,
            None => {
                labels[arc] = Some(x);
                queue.push(arc);
                true
            }
        }
    }

    /// Propagates from the arcs in `queue`; false on a conflict.
    fn propagate(&self, labels: &mut [Option<usize>], mut queue: Vec<usize>) -> bool {
        while let Some(arc) = queue.pop() {
            for &ri in &self.watch[arc] {
                let r = &self.relations[ri];
                let Some(over) = labels[r.over] else { continue };
                match (labels[r.under_in], labels[r.under_out]) {
                    (Some(a), _) => {
                        if !self.set(labels, r.under_out, forward(self.q, r, a, over), &mut queue) {
                            return false;
                        }
                    }
                    (None, Some(b)) => {
                        if !self.set(labels, r.under_in, backward(self.q, r, b, over), &mut queue) {
                            return false;
                        }
                    }
                    (None, None) => {}
                }
            }
        }
        true
    }

    fn assign(&self, labels: &[Option<usize>], arc: usize, x: usize) -> Option<Vec<Option<usize>>> {
        let mut next = labels.to_vec();
        next[arc] = Some(x);
        self.propagate(&mut next, vec![arc]).then_some(next)
    }

    fn run(&self, labels: Vec<Option<usize>>, out: &mut Vec<Coloring>) {
        match labels.iter().position(Option::is_none) {
            None => out.push(Coloring {
                labels: labels.into_iter().map(Option::unwrap).collect(),
            }),
            Some(arc) => {
                for x in 0..self.q.n() {
                    if let Some(next) = self.assign(&labels, arc, x) {
                        self.run(next, out);
                    }
                }
            }
        }
    }
}

/// All colorings of `d` by `q`, sorted lexicographically by arc labels.
pub fn enumerate_colorings(d: &LinkDiagram, q: &FiniteQuandle) -> Vec<Coloring> {
    let search = Search::new(d, q);
    let start = vec![None; d.arc_count()];
    if d.arc_count() == 0 {
        return vec![Coloring { labels: Vec::new() }];
    }
    let mut all: Vec<Coloring> = (0..q.n())
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = Vec::new();
            if let Some(next) = search.assign(&start, 0, x) {
                search.run(next, &mut out);
            }
            out
        })
        .collect();
    all.sort();
    all
}

pub fn counting_invariant(d: &LinkDiagram, q: &FiniteQuandle) -> usize {
    enumerate_colorings(d, q).len()
}

/// The image subquandle of a coloring: its labels, closed under the
/// quandle operations.
pub fn coloring_image(col: &Coloring, q: &FiniteQuandle) -> BTreeSet<usize> {
    q.subquandle_generated(col.labels.iter().copied())
}
