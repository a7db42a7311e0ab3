//! Genus-zero stable pointed curves as marked trees: every vertex is a
//! projective line, edges are nodes, and stability demands at least three
//! special points on every vertex. Contraction forgets a marking and
//! repairs stability; stabilization adds one, inserting a new line when
//! the new point collides with a marking or a node.

mod limit;
mod projective;

pub use limit::stable_limit;
pub use projective::{cross_ratio, moduli_point_m04, ProjPoint};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{FieldSpec, K};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurvesError {
    #[error("the zero pair is not a projective point")]
    ZeroPoint,
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("tree is not stable")]
    Unstable,
    #[error("need at least {0} markings here")]
    TooFewMarkings(u32),
    #[error("marking {0} does not exist")]
    UnknownMarking(u32),
    #[error("invalid attachment reference")]
    InvalidAttach,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("this place does not support exact stable limits")]
    NonComputableValuation,
}

/// Residue positions of special points: one per marking, and one per edge
/// end (stored parallel to the edge list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positions {
    pub markings: BTreeMap<u32, ProjPoint<K>>,
    pub edge_ends: Vec<(ProjPoint<K>, ProjPoint<K>)>,
}

/// The dual tree of a genus-zero stable pointed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTree {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    markings: BTreeMap<u32, usize>,
    positions: Option<Positions>,
}

impl MarkedTree {
    /// Builds and canonicalizes a tree. The markings must be exactly
    /// `1..=n`; the graph must be connected and acyclic.
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        markings: BTreeMap<u32, usize>,
        positions: Option<Positions>,
    ) -> Result<MarkedTree, CurvesError> {
        if num_vertices == 0 {
            return Err(CurvesError::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != num_vertices {
            return Err(CurvesError::InvalidTree(
                "edge count must be one less than vertex count".into(),
            ));
        }
        for &(a, b) in &edges {
            if a >= num_vertices || b >= num_vertices || a == b {
                return Err(CurvesError::InvalidTree("bad edge".into()));
            }
        }
        // connectivity
        let adj = adjacency(num_vertices, &edges);
        let mut seen = vec![false; num_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(CurvesError::InvalidTree("graph is disconnected".into()));
        }
        let n = markings.len() as u32;
        for k in 1..=n {
            match markings.get(&k) {
                Some(&v) if v < num_vertices => {}
                _ => {
                    return Err(CurvesError::InvalidTree(format!(
                        "markings must be exactly 1..={n}"
                    )))
                }
            }
        }
        if let Some(p) = &positions {
            if p.edge_ends.len() != edges.len() {
                return Err(CurvesError::InvalidTree(
                    "one position pair per edge required".into(),
                ));
            }
            if p.markings.keys().ne(markings.keys()) {
                return Err(CurvesError::InvalidTree(
                    "marking positions must cover exactly the markings".into(),
                ));
            }
        }
        let mut tree = MarkedTree {
            num_vertices,
            edges,
            markings,
            positions,
        };
        // all special points on one vertex must be distinct
        if let Some(()) = tree.positions_collide() {
            return Err(CurvesError::InvalidTree(
                "special points collide on a vertex".into(),
            ));
        }
        tree.canonicalize();
        Ok(tree)
    }

    fn positions_collide(&self) -> Option<()> {
        let p = self.positions.as_ref()?;
        for v in 0..self.num_vertices {
            let mut seen: Vec<&ProjPoint<K>> = Vec::new();
            for (m, &mv) in &self.markings {
                if mv == v {
                    seen.push(&p.markings[m]);
                }
            }
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if a == v {
                    seen.push(&p.edge_ends[e].0);
                }
                if b == v {
                    seen.push(&p.edge_ends[e].1);
                }
            }
            for i in 0..seen.len() {
                for j in i + 1..seen.len() {
                    if seen[i] == seen[j] {
                        return Some(());
                    }
                }
            }
        }
        None
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn markings(&self) -> &BTreeMap<u32, usize> {
        &self.markings
    }

    pub fn positions(&self) -> Option<&Positions> {
        self.positions.as_ref()
    }

    pub fn num_markings(&self) -> u32 {
        self.markings.len() as u32
    }

    pub fn marking_vertex(&self, m: u32) -> Result<usize, CurvesError> {
        self.markings
            .get(&m)
            .copied()
            .ok_or(CurvesError::UnknownMarking(m))
    }

    fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn markings_on(&self, v: usize) -> Vec<u32> {
        self.markings
            .iter()
            .filter(|(_, &mv)| mv == v)
            .map(|(&m, _)| m)
            .collect()
    }

    /// Special points on a vertex: markings plus edge ends.
    pub fn special_points(&self, v: usize) -> usize {
        self.markings_on(v).len() + self.degree(v)
    }

    /// Stability: at least three markings overall and at least three
    /// special points on every vertex.
    pub fn is_stable(&self) -> bool {
        self.num_markings() >= 3
            && (0..self.num_vertices).all(|v| self.special_points(v) >= 3)
    }

    /// Canonical vertex numbering: depth-first from the vertex holding
    /// marking 1, neighbors ordered by the least marking reachable through
    /// them. Establishes structural equality of isomorphic labeled trees.
    fn canonicalize(&mut self) {
        let root = self.markings[&1];
        let adj = adjacency(self.num_vertices, &self.edges);
        // least marking in the component of `to` after deleting the edge
        fn least_marking(
            tree: &MarkedTree,
            adj: &[Vec<(usize, usize)>],
            from: usize,
            to: usize,
        ) -> u32 {
            let mut best = u32::MAX;
            let mut stack = vec![(to, from)];
            while let Some((v, parent)) = stack.pop() {
                for m in tree.markings_on(v) {
                    best = best.min(m);
                }
                for &(u, _) in &adj[v] {
                    if u != parent {
                        stack.push((u, v));
                    }
                }
            }
            best
        }
        let mut order: Vec<usize> = Vec::with_capacity(self.num_vertices);
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, parent)) = stack.pop() {
            order.push(v);
            let mut nbrs: Vec<usize> = adj[v]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| u != parent)
                .collect();
            nbrs.sort_by_key(|&u| least_marking(self, &adj, v, u));
            // stack pops in reverse
            for &u in nbrs.iter().rev() {
                stack.push((u, v));
            }
        }
        let mut relabel = vec![0usize; self.num_vertices];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut new_edges: Vec<(usize, usize, bool)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (relabel[a], relabel[b]);
                if x <= y {
                    (x, y, false)
                } else {
                    (y, x, true)
                }
            })
            .collect();
        let perm: Vec<usize> = {
            let mut idx: Vec<usize> = (0..new_edges.len()).collect();
            idx.sort_by_key(|&i| (new_edges[i].0, new_edges[i].1));
            idx
        };
        let sorted_edges: Vec<(usize, usize)> = perm
            .iter()
            .map(|&i| (new_edges[i].0, new_edges[i].1))
            .collect();
        if let Some(p) = &mut self.positions {
            let ends: Vec<(ProjPoint<K>, ProjPoint<K>)> = perm
                .iter()
                .map(|&i| {
                    let (a, b) = p.edge_ends[i].clone();
                    if new_edges[i].2 {
                        (b, a)
                    } else {
                        (a, b)
                    }
                })
                .collect();
            p.edge_ends = ends;
        }
        new_edges.clear();
        self.edges = sorted_edges;
        for v in self.markings.values_mut() {
            *v = relabel[*v];
        }
    }

    /// Forgets marking `k` and contracts the vertex if it became unstable.
    /// Remaining markings are relabeled, order preserved, to `1..=n-1`.
    /// Positions do not survive contraction.
    pub fn contract(&self, k: u32) -> Result<MarkedTree, CurvesError> {
        if !self.is_stable() {
            return Err(CurvesError::Unstable);
        }
        if self.num_markings() <= 3 {
            return Err(CurvesError::TooFewMarkings(4));
        }
        let v = self.marking_vertex(k)?;
        let mut markings = self.markings.clone();
        markings.remove(&k);
        let mut edges = self.edges.clone();
        let mut num_vertices = self.num_vertices;

        let special =
            markings.values().filter(|&&mv| mv == v).count() + self.degree(v);
        let mut contracted = false;
        if special < 3 {
            contracted = true;
            let incident: Vec<usize> = (0..edges.len())
                .filter(|&e| edges[e].0 == v || edges[e].1 == v)
                .collect();
            match incident.len() {
                2 => {
                    // internal vertex: splice the two edges into one
                    let other = |e: usize| {
                        if edges[e].0 == v {
                            edges[e].1
                        } else {
                            edges[e].0
                        }
                    };
                    let (a, b) = (other(incident[0]), other(incident[1]));
                    edges.remove(incident[1]);
                    edges.remove(incident[0]);
                    edges.push((a, b));
                }
                1 => {
                    // leaf vertex: transfer its remaining markings across
                    let e = incident[0];
                    let a = if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
                    edges.remove(e);
                    for mv in markings.values_mut() {
                        if *mv == v {
                            *mv = a;
                        }
                    }
                }
                _ => {
                    return Err(CurvesError::InvalidTree(
                        "unstable vertex with unexpected degree".into(),
                    ))
                }
            }
            // drop vertex v, shifting the labels above it
            for (a, b) in edges.iter_mut() {
                if *a > v {
                    *a -= 1;
                }
                if *b > v {
                    *b -= 1;
                }
            }
            for mv in markings.values_mut() {
                if *mv > v {
                    *mv -= 1;
                }
            }
            num_vertices -= 1;
        }
        // relabel markings to 1..=n-1, order preserved
        let relabeled: BTreeMap<u32, usize> = markings
            .into_iter()
            .enumerate()
            .map(|(i, (_, mv))| (i as u32 + 1, mv))
            .collect();
        let out = MarkedTree::new(num_vertices, edges, relabeled, None)?;
        if !out.is_stable() {
            // a single contraction must repair stability for genus zero
            assert!(
                contracted,
                "contraction cascade required; this cannot happen for trees"
            );
            return Err(CurvesError::Unstable);
        }
        Ok(out)
    }
}

/// Where to attach a new marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttachPoint {
    /// At a free position of this vertex.
    Free(usize),
    /// On top of an existing marking: a new line carries both.
    AtMarking(u32),
    /// At a node (an edge index): a new line is inserted in the middle.
    AtNode(usize),
}

impl MarkedTree {
    /// Adds marking `n+1` at the given attachment, inserting a new vertex
    /// when the position collides with a marking or a node. The inverse of
    /// [`MarkedTree::contract`] at the new marking.
    pub fn stabilize(&self, attach: &AttachPoint) -> Result<MarkedTree, CurvesError> {
        if !self.is_stable() {
            return Err(CurvesError::Unstable);
        }
        let new_mark = self.num_markings() + 1;
        let mut edges = self.edges.clone();
        let mut markings = self.markings.clone();
        let mut num_vertices = self.num_vertices;
        match attach {
            AttachPoint::Free(v) => {
                if *v >= self.num_vertices {
                    return Err(CurvesError::InvalidAttach);
                }
                markings.insert(new_mark, *v);
            }
            AttachPoint::AtMarking(m) => {
                let v = self.marking_vertex(*m)?;
                let w = num_vertices;
                num_vertices += 1;
                edges.push((v, w));
                markings.insert(*m, w);
                markings.insert(new_mark, w);
            }
            AttachPoint::AtNode(e) => {
                if *e >= self.edges.len() {
                    return Err(CurvesError::InvalidAttach);
                }
                let (a, b) = edges.remove(*e);
                let w = num_vertices;
                num_vertices += 1;
                edges.push((a, w));
                edges.push((w, b));
                markings.insert(new_mark, w);
            }
        }
        let out = MarkedTree::new(num_vertices, edges, markings, None)?;
        debug_assert!(out.is_stable());
        Ok(out)
    }

    /// All attachment points of this tree, in a deterministic order.
    pub fn attach_points(&self) -> Vec<AttachPoint> {
        let mut out: Vec<AttachPoint> =
            (0..self.num_vertices).map(AttachPoint::Free).collect();
        out.extend(self.markings.keys().map(|&m| AttachPoint::AtMarking(m)));
        out.extend((0..self.edges.len()).map(AttachPoint::AtNode));
        out
    }
}

// ---- quartet separation ------------------------------------------------------

/// How a tree separates an ordered quadruple of markings `(i, j, k; l)`,
/// matching the degeneration classes of the cross-ratio with basis
/// `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuartetSeparation {
    /// Some edge splits `{i, l}` from `{j, k}`: the cross-ratio residue is 0.
    WithFirst,
    /// `{j, l}` vs `{i, k}`: residue 1.
    WithSecond,
    /// `{k, l}` vs `{i, j}`: residue infinity.
    WithThird,
    /// No edge separates the quadruple; all four meet at the given vertex.
    Star(usize),
}

impl MarkedTree {
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        adjacency(self.num_vertices, &self.edges)
    }

    fn side_of_edge(&self, e: usize) -> BTreeSet<usize> {
        // vertices on the `.0` side of edge e
        let (a, b) = self.edges[e];
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &(u, ei) in &adj[v] {
                if ei == e || seen.contains(&u) {
                    continue;
                }
                seen.insert(u);
                let _ = b;
                stack.push(u);
            }
        }
        seen
    }

    /// Vertices on the path between two vertices, inclusive.
    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.num_vertices];
        let mut queue = VecDeque::from([from]);
        let mut seen = vec![false; self.num_vertices];
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    fn median(&self, a: usize, b: usize, c: usize) -> usize {
        let pab: BTreeSet<usize> = self.path(a, b).into_iter().collect();
        let pbc: BTreeSet<usize> = self.path(b, c).into_iter().collect();
        let pac: BTreeSet<usize> = self.path(a, c).into_iter().collect();
        *pab.intersection(&pbc)
            .copied()
            .collect::<BTreeSet<_>>()
            .intersection(&pac)
            .next()
            .expect("tree paths share a median")
    }

    /// Separation class of `(i, j, k; l)`.
    pub fn quartet_separation(
        &self,
        i: u32,
        j: u32,
        k: u32,
        l: u32,
    ) -> Result<QuartetSeparation, CurvesError> {
        let vi = self.marking_vertex(i)?;
        let vj = self.marking_vertex(j)?;
        let vk = self.marking_vertex(k)?;
        let vl = self.marking_vertex(l)?;
        for e in 0..self.edges.len() {
            let side = self.side_of_edge(e);
            let split = |x: usize, y: usize, o1: usize, o2: usize| {
                let sx = side.contains(&x);
                let sy = side.contains(&y);
                let s1 = side.contains(&o1);
                let s2 = side.contains(&o2);
                sx == sy && s1 == s2 && sx != s1
            };
            if split(vi, vl, vj, vk) {
                return Ok(QuartetSeparation::WithFirst);
            }
            if split(vj, vl, vi, vk) {
                return Ok(QuartetSeparation::WithSecond);
            }
            if split(vk, vl, vi, vj) {
                return Ok(QuartetSeparation::WithThird);
            }
        }
        let m = self.median(vi, vj, vk);
        debug_assert_eq!(m, self.median(vi, vj, vl));
        Ok(QuartetSeparation::Star(m))
    }

    /// Residue position on `at` in the direction of marking `m`: the
    /// marking's own position when it lives on `at`, otherwise the position
    /// of the edge end leaving `at` towards it. Requires positions.
    pub fn direction_position(&self, at: usize, m: u32) -> Result<ProjPoint<K>, CurvesError> {
        let p = self
            .positions
            .as_ref()
            .ok_or_else(|| CurvesError::InvalidTree("tree carries no positions".into()))?;
        let vm = self.marking_vertex(m)?;
        if vm == at {
            return Ok(p.markings[&m].clone());
        }
        let path = self.path(at, vm);
        let next = path[1];
        let e = self
            .edges
            .iter()
            .position(|&(a, b)| (a, b) == (at, next) || (a, b) == (next, at))
            .expect("path edge exists");
        Ok(if self.edges[e].0 == at {
            p.edge_ends[e].0.clone()
        } else {
            p.edge_ends[e].1.clone()
        })
    }
}

fn adjacency(num_vertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_vertices];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    adj
}

// ---- JSON wire format --------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub markings: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions: Option<PositionsJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PositionsJson {
    pub field: String,
    pub markings: BTreeMap<String, String>,
    pub edge_ends: Vec<[String; 2]>,
}

fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Q => "Q".to_string(),
        FieldSpec::Fp(p) => format!("F{p}"),
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, CurvesError> {
    if s == "Q" {
        return Ok(FieldSpec::Q);
    }
    if let Some(p) = s.strip_prefix('F') {
        let p: u64 = p
            .parse()
            .map_err(|_| CurvesError::InvalidTree(format!("bad field {s:?}")))?;
        return FieldSpec::fp(p).map_err(|_| CurvesError::InvalidTree(format!("bad field {s:?}")));
    }
    Err(CurvesError::InvalidTree(format!("bad field {s:?}")))
}

fn point_to_string(p: &ProjPoint<K>) -> String {
    p.to_string()
}

fn point_from_string(f: FieldSpec, s: &str) -> Result<ProjPoint<K>, CurvesError> {
    if s == "inf" {
        return Ok(ProjPoint::infinity(&f.zero()));
    }
    let k = K::parse(f, s).map_err(|e| CurvesError::InvalidTree(e.to_string()))?;
    Ok(ProjPoint::affine(k))
}

impl MarkedTree {
    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            vertices: self.num_vertices,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            markings: self
                .markings
                .iter()
                .map(|(m, &v)| (m.to_string(), v))
                .collect(),
            positions: self.positions.as_ref().map(|p| {
                let spec = p
                    .markings
                    .values()
                    .next()
                    .map(|pt| pt.numerator().spec())
                    .or_else(|| p.edge_ends.first().map(|(a, _)| a.numerator().spec()))
                    .unwrap_or(FieldSpec::Q);
                PositionsJson {
                    field: field_name(spec),
                    markings: p
                        .markings
                        .iter()
                        .map(|(m, pt)| (m.to_string(), point_to_string(pt)))
                        .collect(),
                    edge_ends: p
                        .edge_ends
                        .iter()
                        .map(|(a, b)| [point_to_string(a), point_to_string(b)])
                        .collect(),
                }
            }),
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<MarkedTree, CurvesError> {
        let markings: BTreeMap<u32, usize> = j
            .markings
            .iter()
            .map(|(m, &v)| {
                m.parse::<u32>()
                    .map(|m| (m, v))
                    .map_err(|_| CurvesError::InvalidTree(format!("bad marking key {m:?}")))
            })
            .collect::<Result<_, _>>()?;
        let positions = match &j.positions {
            None => None,
            Some(pj) => {
                let f = parse_field(&pj.field)?;
                let markings = pj
                    .markings
                    .iter()
                    .map(|(m, s)| {
                        let key = m.parse::<u32>().map_err(|_| {
                            CurvesError::InvalidTree(format!("bad marking key {m:?}"))
                        })?;
                        Ok((key, point_from_string(f, s)?))
                    })
                    .collect::<Result<_, CurvesError>>()?;
                let edge_ends = pj
                    .edge_ends
                    .iter()
                    .map(|[a, b]| Ok((point_from_string(f, a)?, point_from_string(f, b)?)))
                    .collect::<Result<_, CurvesError>>()?;
                Some(Positions {
                    markings,
                    edge_ends,
                })
            }
        };
        MarkedTree::new(
            j.vertices,
            j.edges.iter().map(|&[a, b]| (a, b)).collect(),
            markings,
            positions,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(vertices: usize, edges: &[(usize, usize)], marks: &[(u32, usize)]) -> MarkedTree {
        MarkedTree::new(
            vertices,
            edges.to_vec(),
            marks.iter().copied().collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn stability_examples() {
        let one = tree(1, &[], &[(1, 0), (2, 0), (3, 0)]);
        assert!(one.is_stable());
        let two_marks = tree(1, &[], &[(1, 0), (2, 0)]);
        assert!(!two_marks.is_stable());
        let split = tree(2, &[(0, 1)], &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        assert!(split.is_stable());
    }

    #[test]
    fn contract_examples() {
        // two vertices, markings 1,2 | 3,4; forgetting 4 collapses to one
        let t = tree(2, &[(0, 1)], &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        let c = t.contract(4).unwrap();
        assert_eq!(c.num_vertices(), 1);
        assert_eq!(c.num_markings(), 3);

        // one vertex with four markings needs no contraction
        let t = tree(1, &[], &[(1, 0), (2, 0), (3, 0), (4, 0)]);
        let c = t.contract(4).unwrap();
        assert_eq!(c.num_vertices(), 1);

        // chain 1,2 | 3 | 4,5: forgetting 3 splices the middle vertex
        let t = tree(
            3,
            &[(0, 1), (1, 2)],
            &[(1, 0), (2, 0), (3, 1), (4, 2), (5, 2)],
        );
        let c = t.contract(3).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.edges().len(), 1);
        assert!(c.is_stable());

        // three markings cannot be reduced
        let t = tree(1, &[], &[(1, 0), (2, 0), (3, 0)]);
        assert_eq!(t.contract(3).unwrap_err(), CurvesError::TooFewMarkings(4));
    }

    #[test]
    fn stabilize_examples() {
        let t = tree(1, &[], &[(1, 0), (2, 0), (3, 0)]);
        // free position just adds the marking
        let s = t.stabilize(&AttachPoint::Free(0)).unwrap();
        assert_eq!(s.num_vertices(), 1);
        assert_eq!(s.num_markings(), 4);

        // attaching at marking 3 blows up a new line carrying 3 and 4
        let s = t.stabilize(&AttachPoint::AtMarking(3)).unwrap();
        assert_eq!(s.num_vertices(), 2);
        let v3 = s.marking_vertex(3).unwrap();
        let v4 = s.marking_vertex(4).unwrap();
        assert_eq!(v3, v4);
        assert_ne!(s.marking_vertex(1).unwrap(), v3);

        // attaching at a node inserts a middle component
        let t2 = tree(2, &[(0, 1)], &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        let s = t2.stabilize(&AttachPoint::AtNode(0)).unwrap();
        assert_eq!(s.num_vertices(), 3);
        assert!(s.is_stable());
        let mid = s.marking_vertex(5).unwrap();
        assert_eq!(s.special_points(mid), 3);
    }

    #[test]
    fn round_trip_examples() {
        let t = tree(2, &[(0, 1)], &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        for attach in t.attach_points() {
            let s = t.stabilize(&attach).unwrap();
            let back = s.contract(s.num_markings()).unwrap();
            assert_eq!(back, t, "attach {attach:?}");
        }
    }

    #[test]
    fn canonical_form_is_label_independent() {
        // same tree, two different vertex numberings
        let a = tree(
            3,
            &[(0, 1), (1, 2)],
            &[(1, 0), (2, 0), (3, 1), (4, 2), (5, 2)],
        );
        let b = tree(
            3,
            &[(2, 1), (1, 0)],
            &[(1, 2), (2, 2), (3, 1), (4, 0), (5, 0)],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn quartet_separation_classes() {
        let t = tree(2, &[(0, 1)], &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        // {3,4} split from {1,2}: basis (1,2,3), target 4 rides with 3
        assert_eq!(
            t.quartet_separation(1, 2, 3, 4).unwrap(),
            QuartetSeparation::WithThird
        );
        assert_eq!(
            t.quartet_separation(1, 3, 2, 4).unwrap(),
            QuartetSeparation::WithSecond
        );
        assert_eq!(
            t.quartet_separation(3, 1, 2, 4).unwrap(),
            QuartetSeparation::WithFirst
        );
        let star = tree(1, &[], &[(1, 0), (2, 0), (3, 0), (4, 0)]);
        assert_eq!(
            star.quartet_separation(1, 2, 3, 4).unwrap(),
            QuartetSeparation::Star(0)
        );
    }

    #[test]
    fn json_round_trip() {
        let t = tree(
            3,
            &[(0, 1), (1, 2)],
            &[(1, 0), (2, 0), (3, 1), (4, 2), (5, 2)],
        );
        let j = t.to_json();
        let back = MarkedTree::from_json(&j).unwrap();
        assert_eq!(t, back);
    }
}
