//! Encodings of classical coloring problems as plurigraph coloring:
//! graphs, hypergraphs (clique or spanning-path form), simplicial
//! complexes via their face hypergraphs, and the oriented / acyclic /
//! star coloring variants.
//!
//! Each encoder has a matching definitional checker
//! ([`is_proper_graph_coloring`], [`is_proper_oriented_coloring`],
//! [`is_acyclic_coloring`], [`is_star_coloring`]) implemented straight
//! from the coloring definition, independent of the plurigraph route, so
//! the two can be played against each other in tests.

use std::collections::BTreeSet;
use std::fmt;

use crate::hypertree::Hypergraph;
use crate::plurigraph::{content_lines, parse_header, Coloring, Pluriedge, Plurigraph};
use crate::setpart::UnionFind;
use crate::{Error, Result};

/// An undirected graph on `[n]`; loops and multiple edges are allowed at
/// construction, the simple-graph encoders reject them.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// An abstract simplicial complex, stored by its facets; singleton faces
/// are implicit, so facets need not cover every vertex at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

/// A directed graph with no loops and no opposite arcs.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// How a hyperedge becomes a pluriedge: the complete graph on its
/// vertices, or the ascending path through them (a specific spanning
/// tree, chosen for determinism).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HyperedgeMode {
    Clique,
    Path,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("vertex set must be nonempty".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidStructure(format!(
                    "edge {u}-{v} out of range 1..={n}"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(Graph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// No loops and no repeated edges.
    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u != v)
            && self.edges.windows(2).all(|w| w[0] != w[1])
    }

    fn require_simple(&self) -> Result<()> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::InvalidStructure(
                "graph must be simple (no loops or multiple edges)".into(),
            ))
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Parses the `graph <n>` / `e u v` file format.
    pub fn parse(text: &str) -> Result<Graph> {
        let (n, pairs) = parse_pair_lines(text, "graph", "e")?;
        Graph::new(n, pairs)
    }
}

impl OrientedGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("vertex set must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &arcs {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidStructure(format!(
                    "arc ({u},{v}) out of range 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidStructure(format!("loop arc at {u}")));
            }
            if seen.contains(&(v, u)) {
                return Err(Error::InvalidStructure(format!(
                    "opposite arcs ({u},{v}) and ({v},{u})"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidStructure(format!("duplicate arc ({u},{v})")));
            }
        }
        Ok(OrientedGraph {
            n,
            arcs: seen.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Parses the `digraph <n>` / `a u v` file format.
    pub fn parse(text: &str) -> Result<OrientedGraph> {
        let (n, pairs) = parse_pair_lines(text, "digraph", "a")?;
        OrientedGraph::new(n, pairs)
    }
}

impl SimplicialComplex {
    /// Normalizes a facet family: drops faces contained in others and adds
    /// the implicit singleton facets of uncovered vertices.
    pub fn from_facets(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("vertex set must be nonempty".into()));
        }
        let mut norm: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            let mut f = f;
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if f[0] == 0 || *f.last().expect("nonempty") > n {
                return Err(Error::InvalidStructure(format!(
                    "facet vertex out of range 1..={n}"
                )));
            }
            norm.push(f);
        }
        let mut covered = vec![false; n + 1];
        for f in &norm {
            for &v in f {
                covered[v] = true;
            }
        }
        for v in 1..=n {
            if !covered[v] {
                norm.push(vec![v]);
            }
        }
        let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for f in &norm {
            if norm
                .iter()
                .any(|g| g.len() > f.len() && is_subset(f, g))
            {
                continue;
            }
            if !maximal.contains(f) {
                maximal.push(f.clone());
            }
        }
        maximal.sort();
        Ok(SimplicialComplex { n, facets: maximal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// An `s`-simplicial coloring leaves at most `s` vertices of any one
    /// color inside each facet.
    pub fn is_s_simplicial_proper(&self, s: usize, f: &Coloring) -> Result<bool> {
        if f.n() != self.n {
            return Err(Error::PartialColoring {
                expected: self.n,
                got: f.n(),
            });
        }
        for facet in &self.facets {
            let mut counts = std::collections::HashMap::new();
            for &v in facet {
                let c = counts.entry(f.color(v)).or_insert(0usize);
                *c += 1;
                if *c > s {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses the `complex <n>` / `f v1 v2 ...` file format.
    pub fn parse(text: &str) -> Result<SimplicialComplex> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::syntax(0, "empty complex file"))?;
        let n = parse_header(lineno, header, "complex")?;
        let mut facets = Vec::new();
        for (lineno, line) in lines {
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("f") => {}
                Some(other) => {
                    return Err(Error::syntax(lineno, format!("expected 'f', got '{other}'")));
                }
                None => unreachable!("content lines are nonempty"),
            }
            let facet = tokens
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::syntax(lineno, format!("bad vertex '{t}'")))
                })
                .collect::<Result<Vec<usize>>>()?;
            facets.push(facet);
        }
        SimplicialComplex::from_facets(n, facets)
    }
}

/// One single-edge pluriedge per graph edge.
pub fn graph_to_plurigraph(g: &Graph) -> Plurigraph {
    let pluriedges = g
        .edges
        .iter()
        .map(|&(u, v)| Pluriedge::new(g.n, vec![(u, v)]).expect("validated edge"))
        .collect();
    Plurigraph::new(g.n, pluriedges).expect("validated graph")
}

/// One pluriedge per hyperedge: its clique, or its ascending path.
pub fn hypergraph_to_plurigraph(h: &Hypergraph, mode: HyperedgeMode) -> Plurigraph {
    let pluriedges = h
        .hyperedges()
        .iter()
        .map(|e| {
            let edges: Vec<(usize, usize)> = match mode {
                HyperedgeMode::Clique => {
                    let mut out = Vec::new();
                    for i in 0..e.len() {
                        for j in i + 1..e.len() {
                            out.push((e[i], e[j]));
                        }
                    }
                    out
                }
                HyperedgeMode::Path => e.windows(2).map(|w| (w[0], w[1])).collect(),
            };
            Pluriedge::new(h.n(), edges).expect("hyperedge has >= 2 vertices")
        })
        .collect();
    Plurigraph::new(h.n(), pluriedges).expect("validated hypergraph")
}

/// The `(s+1)`-faces of the complex, as a hypergraph: all `(s+1)`-subsets
/// of facets, deduplicated.
pub fn complex_to_hypergraph(k: &SimplicialComplex, s: usize) -> Result<Hypergraph> {
    if s == 0 {
        return Err(Error::Unsupported("s must be >= 1".into()));
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for facet in &k.facets {
        subsets_of_size(facet, s + 1, &mut faces);
    }
    Hypergraph::new(k.n, faces.into_iter().collect())
}

fn subsets_of_size(set: &[usize], size: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn rec(set: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if cur.len() == size {
            out.insert(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < size - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, size, i + 1, cur, out);
            cur.pop();
        }
    }
    if size <= set.len() {
        rec(set, size, 0, &mut Vec::new(), out);
    }
}

/// The complex whose faces are the subsets of hyperedges (plus implicit
/// singletons): facets are the inclusion-maximal hyperedges and the
/// isolated vertices.
pub fn hypergraph_to_complex(h: &Hypergraph) -> SimplicialComplex {
    SimplicialComplex::from_facets(h.n(), h.hyperedges().to_vec())
        .expect("hyperedges are valid facets")
}

/// The oriented-coloring plurigraph: one single-edge pluriedge per arc,
/// and one pluriedge `{uv', u'v}` per unordered pair of distinct arcs
/// `(u,v)`, `(u',v')`. Degenerate identifications produce loop edges and
/// are kept verbatim (a loop is never non-monochromatic, matching the
/// disjunction's semantics). Self-pairs are omitted: they repeat the
/// single-arc clause verbatim. [`oriented_to_plurigraph_verbatim`] keeps
/// them.
pub fn oriented_to_plurigraph(d: &OrientedGraph) -> Plurigraph {
    oriented_with_self_pairs(d, false)
}

/// As [`oriented_to_plurigraph`], but pairing every arc with itself too,
/// adding a redundant two-copy pluriedge `{uv, uv}` per arc.
pub fn oriented_to_plurigraph_verbatim(d: &OrientedGraph) -> Plurigraph {
    oriented_with_self_pairs(d, true)
}

fn oriented_with_self_pairs(d: &OrientedGraph, self_pairs: bool) -> Plurigraph {
    let mut pluriedges: Vec<Pluriedge> = d
        .arcs
        .iter()
        .map(|&(u, v)| Pluriedge::new(d.n, vec![(u, v)]).expect("validated arc"))
        .collect();
    for i in 0..d.arcs.len() {
        let start = if self_pairs { i } else { i + 1 };
        for j in start..d.arcs.len() {
            let (u1, v1) = d.arcs[i];
            let (u2, v2) = d.arcs[j];
            pluriedges
                .push(Pluriedge::new(d.n, vec![(u1, v2), (u2, v1)]).expect("validated arcs"));
        }
    }
    Plurigraph::new(d.n, pluriedges).expect("validated digraph")
}

/// Simple cycles of the graph, each exactly once: vertex sequences
/// canonicalized to start at the cycle's minimum vertex, oriented so the
/// second vertex is smaller than the last. `max_len` prunes the search.
pub fn cycles(g: &Graph, max_len: Option<usize>) -> Result<Vec<Vec<usize>>> {
    g.require_simple()?;
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut visited = vec![false; g.n + 1];
    for s in 1..=g.n {
        path.push(s);
        visited[s] = true;
        extend_cycles(&adj, s, &mut path, &mut visited, max_len, &mut out);
        visited[s] = false;
        path.pop();
    }
    Ok(out)
}

fn extend_cycles(
    adj: &[Vec<usize>],
    s: usize,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    max_len: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if let Some(cap) = max_len {
        if path.len() > cap {
            return;
        }
    }
    let cur = *path.last().expect("path nonempty");
    for &u in &adj[cur] {
        if u == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
            out.push(path.clone());
        } else if u > s && !visited[u] {
            path.push(u);
            visited[u] = true;
            extend_cycles(adj, s, path, visited, max_len, out);
            visited[u] = false;
            path.pop();
        }
    }
}

/// The even-length cycles of a simple graph.
pub fn even_cycles(g: &Graph, max_len: Option<usize>) -> Result<Vec<Vec<usize>>> {
    Ok(cycles(g, max_len)?
        .into_iter()
        .filter(|c| c.len() % 2 == 0)
        .collect())
}

/// The acyclic-coloring plurigraph: one pluriedge per edge, plus one per
/// even cycle containing all pairs inside each of the cycle's two
/// alternating position classes.
pub fn acyclic_to_plurigraph(g: &Graph, max_cycle_len: Option<usize>) -> Result<Plurigraph> {
    let mut pluriedges: Vec<Pluriedge> = g
        .edges
        .iter()
        .map(|&(u, v)| Pluriedge::new(g.n, vec![(u, v)]).expect("validated edge"))
        .collect();
    for cycle in even_cycles(g, max_cycle_len)? {
        let mut edges = Vec::new();
        for parity in 0..2 {
            let class: Vec<usize> = cycle.iter().copied().skip(parity).step_by(2).collect();
            for i in 0..class.len() {
                for j in i + 1..class.len() {
                    edges.push((class[i], class[j]));
                }
            }
        }
        pluriedges.push(Pluriedge::new(g.n, edges)?);
    }
    Plurigraph::new(g.n, pluriedges)
}

/// Paths on 4 distinct vertices (as subgraphs), canonicalized up to
/// reversal by requiring the first endpoint below the last.
pub fn p4_paths(g: &Graph) -> Result<Vec<[usize; 4]>> {
    g.require_simple()?;
    let adj = g.adjacency();
    let mut out = Vec::new();
    for a in 1..=g.n {
        for &b in &adj[a] {
            for &c in &adj[b] {
                if c == a {
                    continue;
                }
                for &d in &adj[c] {
                    if d == b || d == a || a >= d {
                        continue;
                    }
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The star-coloring plurigraph: one pluriedge per edge, plus a pluriedge
/// `{P1P3, P2P4}` per path on four vertices.
pub fn star_to_plurigraph(g: &Graph) -> Result<Plurigraph> {
    let mut pluriedges: Vec<Pluriedge> = g
        .edges
        .iter()
        .map(|&(u, v)| Pluriedge::new(g.n, vec![(u, v)]).expect("validated edge"))
        .collect();
    for [a, b, c, d] in p4_paths(g)? {
        pluriedges.push(Pluriedge::new(g.n, vec![(a, c), (b, d)])?);
    }
    Plurigraph::new(g.n, pluriedges)
}

/// No monochromatic edge; a loop makes every coloring improper.
pub fn is_proper_graph_coloring(g: &Graph, f: &Coloring) -> Result<bool> {
    check_total(g.n, f)?;
    Ok(g.edges.iter().all(|&(u, v)| f.color(u) != f.color(v)))
}

/// The two oriented-coloring conditions: arcs are non-monochromatic, and
/// no two arcs run between the same ordered pair of color classes in
/// opposite directions.
pub fn is_proper_oriented_coloring(d: &OrientedGraph, f: &Coloring) -> Result<bool> {
    check_total(d.n, f)?;
    for &(u, v) in &d.arcs {
        if f.color(u) == f.color(v) {
            return Ok(false);
        }
    }
    for &(u1, v1) in &d.arcs {
        for &(u2, v2) in &d.arcs {
            if f.color(u1) == f.color(v2) && f.color(u2) == f.color(v1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Proper and every cycle uses at least three colors.
pub fn is_acyclic_coloring(g: &Graph, f: &Coloring) -> Result<bool> {
    if !is_proper_graph_coloring(g, f)? {
        return Ok(false);
    }
    for cycle in cycles(g, None)? {
        let mut seen = BTreeSet::new();
        for &v in &cycle {
            seen.insert(f.color(v));
        }
        if seen.len() < 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Proper and every subgraph induced by two color classes is a star
/// forest (a forest whose components each have at most one vertex of
/// degree two or more).
pub fn is_star_coloring(g: &Graph, f: &Coloring) -> Result<bool> {
    if !is_proper_graph_coloring(g, f)? {
        return Ok(false);
    }
    let palette: BTreeSet<usize> = f.colors().iter().copied().collect();
    let palette: Vec<usize> = palette.into_iter().collect();
    for i in 0..palette.len() {
        for j in i + 1..palette.len() {
            let keep = |v: usize| f.color(v) == palette[i] || f.color(v) == palette[j];
            let mut uf = UnionFind::new(g.n);
            let mut degree = vec![0usize; g.n + 1];
            let mut is_forest = true;
            for &(u, v) in &g.edges {
                if keep(u) && keep(v) {
                    degree[u] += 1;
                    degree[v] += 1;
                    if !uf.union(u - 1, v - 1) {
                        is_forest = false;
                    }
                }
            }
            if !is_forest {
                return Ok(false);
            }
            let mut centers = std::collections::HashMap::new();
            for v in 1..=g.n {
                if degree[v] >= 2 {
                    let root = uf.find(v - 1);
                    let c = centers.entry(root).or_insert(0usize);
                    *c += 1;
                    if *c > 1 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn check_total(n: usize, f: &Coloring) -> Result<()> {
    if f.n() != n {
        return Err(Error::PartialColoring {
            expected: n,
            got: f.n(),
        });
    }
    Ok(())
}

fn parse_pair_lines(text: &str, keyword: &str, tag: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::syntax(0, format!("empty {keyword} file")))?;
    let n = parse_header(lineno, header, keyword)?;
    let mut pairs = Vec::new();
    for (lineno, line) in lines {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some(t) if t == tag => {}
            Some(other) => {
                return Err(Error::syntax(lineno, format!("expected '{tag}', got '{other}'")));
            }
            None => unreachable!("content lines are nonempty"),
        }
        let mut parse_vertex = |name: &str| -> Result<usize> {
            let t = tokens
                .next()
                .ok_or_else(|| Error::syntax(lineno, format!("missing {name}")))?;
            t.parse()
                .map_err(|_| Error::syntax(lineno, format!("bad vertex '{t}'")))
        };
        let u = parse_vertex("source")?;
        let v = parse_vertex("target")?;
        if tokens.next().is_some() {
            return Err(Error::syntax(lineno, "trailing tokens"));
        }
        pairs.push((u, v));
    }
    Ok((n, pairs))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph {}", self.n)?;
        for &(u, v) in &self.edges {
            write!(f, "\ne {u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "digraph {}", self.n)?;
        for &(u, v) in &self.arcs {
            write!(f, "\na {u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex {}", self.n)?;
        for facet in &self.facets {
            write!(f, "\nf")?;
            for v in facet {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_string().replace('\n', "; "))
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph({})", self.to_string().replace('\n', "; "))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex({})", self.to_string().replace('\n', "; "))
    }
}
