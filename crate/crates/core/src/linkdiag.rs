//! Oriented link diagrams given as signed PD codes.
//!
//! A crossing `X± a b c d` lists its four edge ids counterclockwise starting
//! from the incoming under-edge `a`; `c` is the outgoing under-edge and
//! `b`, `d` are the over-edges. The sign fixes the direction of the over
//! strand: for `X-` it enters along `b` and leaves along `d`, for `X+` it
//! enters along `d` and leaves along `b`.
//!
//! Every slot is therefore either the head of its edge (the edge runs into
//! the crossing) or the tail, and a code is well formed exactly when every
//! edge has one head slot and one tail slot.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::PdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// `[a, b, c, d]`, counterclockwise from the incoming under-edge.
    pub edges: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [u32; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    pub fn under_in(&self) -> u32 {
        self.edges[0]
    }

    pub fn under_out(&self) -> u32 {
        self.edges[2]
    }

    pub fn over_in(&self) -> u32 {
        match self.sign {
            Sign::Negative => self.edges[1],
            Sign::Positive => self.edges[3],
        }
    }

    pub fn over_out(&self) -> u32 {
        match self.sign {
            Sign::Negative => self.edges[3],
            Sign::Positive => self.edges[1],
        }
    }

    /// The same crossing seen in the mirror: over and under trade places
    /// and the sign flips.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        let edges = match self.sign {
            Sign::Positive => [d, a, b, c],
            Sign::Negative => [b, c, d, a],
        };
        Crossing {
            edges,
            sign: self.sign.flip(),
        }
    }
}

/// A validated signed PD code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedPDCode {
    crossings: Vec<Crossing>,
    edge_count: u32,
    components: usize,
}

impl OrientedPDCode {
    /// Validates `crossings`. `components` is the declared component count;
    /// components beyond those traced through crossings are crossingless
    /// unknots. With `None` the traced count is used (at least one).
    pub fn new(crossings: Vec<Crossing>, components: Option<usize>) -> Result<Self, PdError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &crossings {
            for &e in &x.edges {
                *counts.entry(e).or_default() += 1;
            }
        }
        if let Some((&edge, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(PdError::EdgeMultiplicity { edge, count });
        }
        let edge_count = counts.len() as u32;
        for (expected, &edge) in (1..=edge_count).zip(counts.keys()) {
            if edge != expected {
                return Err(PdError::EdgeGap {
                    edge: expected,
                    edge_count,
                });
            }
        }

        let mut heads = vec![0usize; edge_count as usize + 1];
        let mut tails = vec![0usize; edge_count as usize + 1];
        for x in &crossings {
            heads[x.under_in() as usize] += 1;
            heads[x.over_in() as usize] += 1;
            tails[x.under_out() as usize] += 1;
            tails[x.over_out() as usize] += 1;
        }
        for e in 1..=edge_count as usize {
            if heads[e] != 1 || tails[e] != 1 {
                return Err(PdError::OpenComponent {
                    edge: e as u32,
                    heads: heads[e],
                    tails: tails[e],
                });
            }
        }

        let traced = traced_components(&crossings, edge_count).1;
        let components = match components {
            Some(declared) if declared < traced.max(1) => {
                return Err(PdError::ComponentCount {
                    declared,
                    found: traced.max(1),
                })
            }
            Some(declared) => declared,
            None => traced.max(1),
        };
        Ok(OrientedPDCode {
            crossings,
            edge_count,
            components,
        })
    }

    pub fn unknot() -> Self {
        OrientedPDCode {
            crossings: Vec::new(),
            edge_count: 0,
            components: 1,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Writes the code in the signed PD file grammar.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OrientedPDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components: {}", self.components)?;
        for x in &self.crossings {
            let s = if x.sign == Sign::Positive { '+' } else { '-' };
            let [a, b, c, d] = x.edges;
            writeln!(f, "X{s} {a} {b} {c} {d}")?;
        }
        Ok(())
    }
}

/// Union-find over edge ids `1..=edge_count`, joining edges that meet at a
/// crossing through the given slot pairs. Returns class roots per edge and
/// the number of classes.
fn union_edges(crossings: &[Crossing], edge_count: u32, pairs: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let n = edge_count as usize + 1;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in crossings {
        for &(i, j) in pairs {
            let a = find(&mut parent, x.edges[i] as usize);
            let b = find(&mut parent, x.edges[j] as usize);
            if a != b {
                // keep the smaller edge id as root so classes are labeled
                // by their minimum edge
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|e| find(&mut parent, e)).collect();
    let classes = (1..n).filter(|&e| roots[e] == e).count();
    (roots, classes)
}

fn traced_components(crossings: &[Crossing], edge_count: u32) -> (Vec<usize>, usize) {
    union_edges(crossings, edge_count, &[(0, 2), (1, 3)])
}

/// Parses the signed PD file grammar.
///
/// ```text
/// # comment
/// components: 2
/// X- 4 1 3 2
/// X- 2 3 1 4
/// ```
///
/// The `components:` header may be omitted, in which case the count is
/// traced from the crossings (an empty text is the unknot).
pub fn parse_pd(text: &str) -> Result<OrientedPDCode, PdError> {
    let mut components = None;
    let mut crossings = Vec::new();
    let mut uses: BTreeMap<u32, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| PdError::Syntax { line: line_no, message };
        if let Some(rest) = line.strip_prefix("components:") {
            if components.is_some() {
                return Err(syntax("duplicate components header".into()));
            }
            let k: usize = rest
                .trim()
                .parse()
                .map_err(|_| syntax(format!("bad component count {:?}", rest.trim())))?;
            if k == 0 {
                return Err(syntax("component count must be positive".into()));
            }
            components = Some(k);
            continue;
        }
        let rest = line
            .strip_prefix('X')
            .ok_or_else(|| syntax(format!("expected `X<sign> a b c d`, found {line:?}")))?
            .trim_start();
        let mut chars = rest.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Positive,
            Some('-') | Some('−') => Sign::Negative,
            other => return Err(syntax(format!("expected crossing sign + or -, found {other:?}"))),
        };
        let fields: Vec<&str> = chars.as_str().split_whitespace().collect();
        if fields.len() != 4 {
            return Err(syntax(format!("expected 4 edge ids, found {}", fields.len())));
        }
        let mut edges = [0u32; 4];
        for (slot, field) in edges.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .ok()
                .filter(|&e| e > 0)
                .ok_or_else(|| syntax(format!("edge id {field:?} is not a positive integer")))?;
            let used = uses.entry(*slot).or_default();
            *used += 1;
            if *used > 2 {
                return Err(syntax(format!("edge {slot} used more than twice")));
            }
        }
        crossings.push(Crossing::new(edges, sign));
    }
    OrientedPDCode::new(crossings, components)
}

/// One crossing relation: the under strand enters on arc `under_in`,
/// passes below `over`, and leaves on arc `under_out`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    pub under_in: usize,
    pub over: usize,
    pub under_out: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    arc_count: usize,
    component_of_arc: Vec<usize>,
    relations: Vec<Relation>,
    component_count: usize,
}

impl LinkDiagram {
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of_arc(&self) -> &[usize] {
        &self.component_of_arc
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The crossingless `c`-component unlink: `c` free arcs.
    pub fn unlink(c: usize) -> Self {
        LinkDiagram {
            arc_count: c,
            component_of_arc: (0..c).collect(),
            relations: Vec::new(),
            component_count: c,
        }
    }
}

/// Cuts a PD code into arcs (maximal strands between undercrossings) and
/// emits one relation per crossing, in input order.
///
/// Arcs and components are numbered by their smallest edge id. Crossingless
/// components come last, one free arc each.
pub fn build_diagram(pd: &OrientedPDCode) -> LinkDiagram {
    let crossings = pd.crossings();
    let edge_count = pd.edge_count();
    let (arc_root, _) = union_edges(crossings, edge_count, &[(1, 3)]);
    let (comp_root, traced) = traced_components(crossings, edge_count);

    let mut arc_index = vec![usize::MAX; edge_count as usize + 1];
    let mut comp_index = vec![usize::MAX; edge_count as usize + 1];
    let mut arcs = 0;
    let mut comps = 0;
    let mut component_of_arc = Vec::new();
    for e in 1..=edge_count as usize {
        if comp_root[e] == e {
            comp_index[e] = comps;
            comps += 1;
        }
        if arc_root[e] == e {
            arc_index[e] = arcs;
            arcs += 1;
            component_of_arc.push(comp_index[comp_root[e]]);
        }
    }
    debug_assert_eq!(comps, traced);

    let arc_of = |e: u32| arc_index[arc_root[e as usize]];
    let relations = crossings
        .iter()
        .map(|x| Relation {
            under_in: arc_of(x.under_in()),
            over: arc_of(x.edges[1]),
            under_out: arc_of(x.under_out()),
            sign: x.sign,
        })
        .collect();

    let component_count = pd.component_count();
    for c in traced..component_count {
        component_of_arc.push(c);
        arcs += 1;
    }
    LinkDiagram {
        arc_count: arcs,
        component_of_arc,
        relations,
        component_count,
    }
}

pub fn mirror(pd: &OrientedPDCode) -> OrientedPDCode {
    OrientedPDCode {
        crossings: pd.crossings.iter().map(Crossing::mirrored).collect(),
        edge_count: pd.edge_count,
        components: pd.components,
    }
}

macro_rules! link_table {
    ($($name:literal),* $(,)?) => {
        const LINK_TABLE: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../data/links/", $name, ".pd"))),)*
        ];
    };
}

link_table!(
    "unknot", "3_1", "L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1", "L7a1", "L7a2", "L7a3",
    "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2",
);

/// The prime links through seven crossings, in table order.
pub const PRIME_LINKS_LE7: &[&str] = &[
    "L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1", "L7a1", "L7a2", "L7a3", "L7a4", "L7a5",
    "L7a6", "L7a7", "L7n1", "L7n2",
];

/// Names in the built-in table.
pub fn link_names() -> impl Iterator<Item = &'static str> {
    LINK_TABLE.iter().map(|(name, _)| *name)
}

pub fn lookup_link(name: &str) -> Result<OrientedPDCode, PdError> {
    let (_, text) = LINK_TABLE
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| PdError::UnknownLink {
            name: name.to_string(),
            available: link_names().collect::<Vec<_>>().join(", "),
        })?;
    Ok(parse_pd(text).expect("built-in link table entries are valid"))
}
