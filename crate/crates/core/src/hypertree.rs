//! Hypergraph structure theory: connectivity, cycles, hypertree
//! recognition, hyperedge magnitude, the commutative chromatic symmetric
//! function `X_H`, coefficient identities, degree-sequence recovery from
//! `X_H`, isomorphism testing, small-scale hypertree enumeration, and the
//! built-in 21-vertex counterexample pairs.
//!
//! A hypertree is a connected hypergraph with no cycle of length >= 2.
//! Cycle detection runs on the bipartite vertex-hyperedge incidence graph,
//! where hypergraph cycles of length >= 2 correspond exactly to graph
//! cycles; a lone hyperedge of any size is acyclic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ncalg::{binomial, SymExpr};
use crate::plurigraph::{content_lines, parse_header, Coloring};
use crate::setpart::{IntegerPartition, Permutation, SetPartition, UnionFind};
use crate::{Error, Result};

/// A vertex count plus a set of distinct hyperedges of size >= 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

/// Vertex degrees arranged weakly decreasing.
#[derive(Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

/// The three hypertree conditions; any two imply the third.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoOfThree {
    pub connected: bool,
    pub acyclic: bool,
    pub magnitude_matches: bool,
}

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegreeSequence{self}")
    }
}

impl Hypergraph {
    /// Validates: sizes >= 2, vertices in range, no repeated vertex within
    /// a hyperedge, no duplicate hyperedges. Edges are stored sorted.
    pub fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("vertex set must be nonempty".into()));
        }
        let mut norm = Vec::with_capacity(hyperedges.len());
        for e in hyperedges {
            if e.len() < 2 {
                return Err(Error::InvalidStructure(format!(
                    "hyperedge of size {} (must be >= 2)",
                    e.len()
                )));
            }
            let mut e = e;
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidStructure("repeated vertex in hyperedge".into()));
            }
            if e[0] == 0 || *e.last().expect("nonempty") > n {
                return Err(Error::InvalidStructure(format!(
                    "hyperedge vertex out of range 1..={n}"
                )));
            }
            norm.push(e);
        }
        norm.sort();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidStructure("duplicate hyperedge".into()));
        }
        Ok(Hypergraph {
            n,
            hyperedges: norm,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn num_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    /// `Some(s)` when every hyperedge has size `s`.
    pub fn uniform_size(&self) -> Option<usize> {
        let s = self.hyperedges.first()?.len();
        self.hyperedges.iter().all(|e| e.len() == s).then_some(s)
    }

    /// Pairwise hyperedge intersections of size <= 1.
    pub fn is_linear(&self) -> bool {
        for (i, a) in self.hyperedges.iter().enumerate() {
            for b in &self.hyperedges[i + 1..] {
                let common = a.iter().filter(|v| b.binary_search(v).is_ok()).count();
                if common > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Partition of `[n]` by hyperedge-path reachability.
    pub fn components(&self) -> SetPartition {
        let mut uf = UnionFind::new(self.n);
        for e in &self.hyperedges {
            for w in e.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        uf.into_partition()
    }

    pub fn is_connected(&self) -> bool {
        self.components().num_blocks() == 1
    }

    /// Whether a cycle of length >= 2 exists, via the incidence graph: an
    /// incidence edge closing an existing connection closes a cycle.
    pub fn has_cycle(&self) -> bool {
        let mut uf = UnionFind::new(self.n + self.hyperedges.len());
        for (ei, e) in self.hyperedges.iter().enumerate() {
            for &v in e {
                if !uf.union(v - 1, self.n + ei) {
                    return true;
                }
            }
        }
        false
    }

    /// `Σ (|e| - 1)` over the hyperedges.
    pub fn hyperedge_magnitude(&self) -> usize {
        self.hyperedges.iter().map(|e| e.len() - 1).sum()
    }

    pub fn is_hypertree(&self) -> bool {
        self.is_connected() && !self.has_cycle()
    }

    pub fn two_of_three(&self) -> TwoOfThree {
        TwoOfThree {
            connected: self.is_connected(),
            acyclic: !self.has_cycle(),
            magnitude_matches: self.hyperedge_magnitude() + 1 == self.n,
        }
    }

    fn shape_of_mask(&self, mask: u64) -> IntegerPartition {
        let mut uf = UnionFind::new(self.n);
        for (ei, e) in self.hyperedges.iter().enumerate() {
            if mask & (1 << ei) != 0 {
                for w in e.windows(2) {
                    uf.union(w[0] - 1, w[1] - 1);
                }
            }
        }
        uf.into_partition().shape()
    }

    /// `X_H = Σ_{A ⊆ E} (-1)^{|A|} p_{λ(A)}` with `λ(A)` the component
    /// sizes of `(V, A)`.
    pub fn csf(&self) -> SymExpr {
        let m = self.hyperedges.len();
        assert!(m < 64, "subset expansion limited to < 64 hyperedges");
        let total: u64 = 1 << m;
        let terms = (0..total)
            .into_par_iter()
            .fold(
                std::collections::BTreeMap::<IntegerPartition, i128>::new,
                |mut acc, mask| {
                    let lambda = self.shape_of_mask(mask);
                    let sign: i128 = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                    *acc.entry(lambda).or_insert(0) += sign;
                    acc
                },
            )
            .reduce(std::collections::BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        SymExpr::from_terms(
            self.n,
            terms.into_iter().map(|(l, c)| (l, BigInt::from(c))),
        )
        .expect("homogeneous shapes")
    }

    /// `P_H(t)`: the number of colorings from `[t]` with no monochromatic
    /// hyperedge, as the specialization `p_λ ↦ t^{len λ}` of the CSF.
    pub fn chromatic_polynomial(&self, t: usize) -> BigInt {
        self.csf().eval(t)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.hyperedges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new((1..=self.n).map(|v| self.degree(v)).collect())
    }

    pub fn permute(&self, d: &Permutation) -> Result<Hypergraph> {
        if d.n() != self.n {
            return Err(Error::GroundSetMismatch(self.n, d.n()));
        }
        Hypergraph::new(
            self.n,
            self.hyperedges
                .iter()
                .map(|e| e.iter().map(|&v| d.apply(v)).collect())
                .collect(),
        )
    }

    /// Hypergraph isomorphism: invariant pre-screen (vertex count,
    /// hyperedge size multiset, degree sequence, per-vertex incident-size
    /// profiles), then backtracking over hyperedge assignments with the
    /// vertex map built incrementally and pruned by those profiles.
    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        if self.n != other.n || self.hyperedges.len() != other.hyperedges.len() {
            return false;
        }
        let size_multiset = |h: &Hypergraph| {
            let mut v: Vec<usize> = h.hyperedges.iter().map(Vec::len).collect();
            v.sort_unstable();
            v
        };
        if size_multiset(self) != size_multiset(other) {
            return false;
        }
        let profiles_a = vertex_profiles(self);
        let profiles_b = vertex_profiles(other);
        let mut sorted_a = profiles_a.clone();
        let mut sorted_b = profiles_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return false;
        }
        IsoSearch {
            a: self,
            b: other,
            profiles_a: &profiles_a,
            profiles_b: &profiles_b,
            edge_order: connected_edge_order(self),
            vmap: vec![0; self.n],
            used_v: vec![false; self.n],
            used_e: vec![false; other.hyperedges.len()],
        }
        .run(0)
    }

    /// Parses the `hypergraph <n>` / `h v1 v2 ...` file format.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::syntax(0, "empty hypergraph file"))?;
        let n = parse_header(lineno, header, "hypergraph")?;
        let mut hyperedges = Vec::new();
        for (lineno, line) in lines {
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("h") => {}
                Some(other) => {
                    return Err(Error::syntax(lineno, format!("expected 'h', got '{other}'")));
                }
                None => unreachable!("content lines are nonempty"),
            }
            let edge = tokens
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::syntax(lineno, format!("bad vertex '{t}'")))
                })
                .collect::<Result<Vec<usize>>>()?;
            hyperedges.push(edge);
        }
        Hypergraph::new(n, hyperedges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hypergraph {}", self.n)?;
        for e in &self.hyperedges {
            write!(f, "\nh")?;
            for v in e {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph({})", self.to_string().replace('\n', "; "))
    }
}

/// Sorted multiset of incident hyperedge sizes per vertex.
fn vertex_profiles(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut profiles = vec![Vec::new(); h.n];
    for e in &h.hyperedges {
        for &v in e {
            profiles[v - 1].push(e.len());
        }
    }
    for p in profiles.iter_mut() {
        p.sort_unstable();
    }
    profiles
}

/// Orders hyperedge indices so each one shares a vertex with an earlier
/// one when its component allows, keeping the search connected.
fn connected_edge_order(h: &Hypergraph) -> Vec<usize> {
    let m = h.hyperedges.len();
    let mut order = Vec::with_capacity(m);
    let mut placed = vec![false; m];
    let mut covered: Vec<bool> = vec![false; h.n];
    while order.len() < m {
        let next = (0..m)
            .filter(|&i| !placed[i])
            .find(|&i| h.hyperedges[i].iter().any(|&v| covered[v - 1]))
            .or_else(|| (0..m).find(|&i| !placed[i]))
            .expect("an unplaced edge exists");
        placed[next] = true;
        for &v in &h.hyperedges[next] {
            covered[v - 1] = true;
        }
        order.push(next);
    }
    order
}

struct IsoSearch<'a> {
    a: &'a Hypergraph,
    b: &'a Hypergraph,
    profiles_a: &'a [Vec<usize>],
    profiles_b: &'a [Vec<usize>],
    edge_order: Vec<usize>,
    vmap: Vec<usize>, // 0 = unassigned, else image vertex
    used_v: Vec<bool>,
    used_e: Vec<bool>,
}

impl IsoSearch<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.edge_order.len() {
            return true;
        }
        let ea = self.edge_order[depth];
        let edge_a = &self.a.hyperedges[ea];
        for eb in 0..self.b.hyperedges.len() {
            if self.used_e[eb] || self.b.hyperedges[eb].len() != edge_a.len() {
                continue;
            }
            self.used_e[eb] = true;
            if self.try_match(edge_a, eb, 0, depth) {
                return true;
            }
            self.used_e[eb] = false;
        }
        false
    }

    /// Extends the vertex map over `edge_a[pos..]` into edge `eb` of `b`.
    fn try_match(&mut self, edge_a: &[usize], eb: usize, pos: usize, depth: usize) -> bool {
        if pos == edge_a.len() {
            return self.run(depth + 1);
        }
        let va = edge_a[pos];
        if self.vmap[va - 1] != 0 {
            let w = self.vmap[va - 1];
            if self.b.hyperedges[eb].binary_search(&w).is_ok() {
                return self.try_match(edge_a, eb, pos + 1, depth);
            }
            return false;
        }
        let candidates: Vec<usize> = self.b.hyperedges[eb]
            .iter()
            .copied()
            .filter(|&w| !self.used_v[w - 1] && self.profiles_a[va - 1] == self.profiles_b[w - 1])
            .collect();
        for w in candidates {
            self.vmap[va - 1] = w;
            self.used_v[w - 1] = true;
            if self.try_match(edge_a, eb, pos + 1, depth) {
                return true;
            }
            self.vmap[va - 1] = 0;
            self.used_v[w - 1] = false;
        }
        false
    }
}

/// Recovers the degree sequence of an `s`-uniform hypertree from its CSF
/// by forward-substituting the triangular system over the signed
/// `c_λ · 1(λ)` length sums. The vertex count is the homogeneity degree;
/// the edge count comes from `m = (n-1)/(s-1)` and is cross-checked
/// against `-c_s`.
pub fn degree_sequence_from_csf(x: &SymExpr, s: usize) -> Result<DegreeSequence> {
    if s < 2 {
        return Err(Error::Unsupported(format!("uniformity {s} must be >= 2")));
    }
    let n = x.n();
    if n == 0 || !(n - 1).is_multiple_of(s - 1) {
        return Err(Error::NotHypertreeCsf(format!(
            "degree {n} incompatible with {s}-uniformity"
        )));
    }
    let m = (n - 1) / (s - 1);
    if m == 0 {
        // the one-vertex hypertree
        return Ok(DegreeSequence::new(vec![0]));
    }
    let mut parts = vec![1usize; n - s];
    parts.push(s);
    let c_s = x.coefficient(&IntegerPartition::new(parts)?);
    if -&c_s != BigInt::from(m) {
        return Err(Error::NotHypertreeCsf(format!(
            "-c_s = {} but (n-1)/(s-1) = {m}",
            -c_s
        )));
    }
    let mut d = vec![BigInt::zero(); m + 1];
    for i in 1..=m {
        let k_i = n - (s - 1) * (m - i);
        let mut lhs = BigInt::zero();
        for (lambda, c) in x.terms() {
            if lambda.len() == k_i {
                lhs += c * BigInt::from(lambda.num_ones());
            }
        }
        if (m - i) % 2 == 1 {
            lhs = -lhs;
        }
        for j in 1..i {
            lhs -= binomial(m - j, i - j) * &d[j];
        }
        if lhs.is_negative() {
            return Err(Error::NotHypertreeCsf(format!("negative count for degree {i}")));
        }
        d[i] = lhs;
    }
    let mut seq = Vec::new();
    for i in (1..=m).rev() {
        let count = d[i]
            .to_usize()
            .ok_or_else(|| Error::NotHypertreeCsf(format!("oversized count for degree {i}")))?;
        seq.extend(std::iter::repeat_n(i, count));
    }
    if seq.len() != n {
        return Err(Error::NotHypertreeCsf(format!(
            "degree counts cover {} of {n} vertices",
            seq.len()
        )));
    }
    Ok(DegreeSequence::new(seq))
}

/// Consistency checks an `s`-uniform acyclic hypergraph's CSF must pass:
/// every nonzero coefficient sits at a length `n - (s-1)j` for some
/// `0 <= j <= m`, and the signed length sums hit `C(m, j)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoefficientReport {
    pub lengths_consistent: bool,
    pub binomial_identity: bool,
}

pub fn coefficient_identities(x: &SymExpr, s: usize, m: usize) -> CoefficientReport {
    let n = x.n();
    let lengths_consistent = x.terms().all(|(lambda, _)| {
        let k = lambda.len();
        n >= k && (n - k).is_multiple_of(s - 1) && (n - k) / (s - 1) <= m
    });
    let mut binomial_identity = true;
    for j in 0..=m {
        let k = match n.checked_sub((s - 1) * j) {
            Some(k) if k >= 1 => k,
            _ => {
                binomial_identity = false;
                break;
            }
        };
        let mut total = BigInt::zero();
        for (lambda, c) in x.terms() {
            if lambda.len() == k {
                total += c;
            }
        }
        if j % 2 == 1 {
            total = -total;
        }
        if total != binomial(m, j) {
            binomial_identity = false;
        }
    }
    CoefficientReport {
        lengths_consistent,
        binomial_identity,
    }
}

/// All `s`-uniform hypertrees on `n` vertices, one representative per
/// isomorphism class, generated by attaching a hyperedge with `s-1` fresh
/// vertices at every vertex of every smaller class and deduplicating.
pub fn enumerate_hypertrees(n: usize, s: usize) -> Result<Vec<Hypergraph>> {
    if s < 2 {
        return Err(Error::Unsupported(format!("uniformity {s} must be >= 2")));
    }
    if n == 0 || !(n - 1).is_multiple_of(s - 1) {
        return Err(Error::Unsupported(format!(
            "no {s}-uniform hypertree on {n} vertices: (n-1) not divisible by (s-1)"
        )));
    }
    let steps = (n - 1) / (s - 1);
    let mut classes = vec![Hypergraph::new(1, Vec::new())?];
    for step in 0..steps {
        let cur_n = 1 + step * (s - 1);
        let mut next: Vec<Hypergraph> = Vec::new();
        for h in &classes {
            for v in 1..=cur_n {
                let mut edge = vec![v];
                edge.extend(cur_n + 1..=cur_n + s - 1);
                let mut edges = h.hyperedges.clone();
                edges.push(edge);
                let candidate = Hypergraph::new(cur_n + s - 1, edges)?;
                if !next.iter().any(|g| g.is_isomorphic(&candidate)) {
                    next.push(candidate);
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}

/// Per-`n` tallies and the offending pairs from a CSF collision search.
#[derive(Clone, Debug, Default)]
pub struct CollisionReport {
    /// `(n, class count, equal-CSF non-isomorphic pairs at that n)`.
    pub per_n: Vec<(usize, usize, usize)>,
    pub collisions: Vec<(Hypergraph, Hypergraph)>,
}

impl CollisionReport {
    pub fn total_collisions(&self) -> usize {
        self.collisions.len()
    }
}

/// Enumerates the `s`-uniform hypertree classes for every feasible vertex
/// count up to `max_n`, groups them by CSF, and reports every pair of
/// non-isomorphic hypertrees sharing a CSF.
pub fn search_csf_collisions(s: usize, max_n: usize) -> Result<CollisionReport> {
    if s < 2 {
        return Err(Error::Unsupported(format!("uniformity {s} must be >= 2")));
    }
    let mut report = CollisionReport::default();
    let mut n = 1;
    while n <= max_n {
        let classes = enumerate_hypertrees(n, s)?;
        let mut groups: std::collections::BTreeMap<String, Vec<&Hypergraph>> =
            std::collections::BTreeMap::new();
        for h in &classes {
            groups.entry(h.csf().to_string()).or_default().push(h);
        }
        let mut pairs_here = 0;
        for group in groups.values() {
            for i in 0..group.len() {
                for j in i + 1..group.len() {
                    if !group[i].is_isomorphic(group[j]) {
                        pairs_here += 1;
                        report
                            .collisions
                            .push((group[i].clone(), group[j].clone()));
                    }
                }
            }
        }
        report.per_n.push((n, classes.len(), pairs_here));
        n += s - 1;
    }
    Ok(report)
}

/// The four 3-uniform hypertrees on 21 vertices with `X_{H1} = X_{H2}`
/// and `X_{H3} = X_{H4}` despite `H1 !~ H2` and `H3 !~ H4`. Vertices are
/// relabeled 1..=21 (the source lists use 0..=20; every label is shifted
/// up by one).
pub fn builtin_examples() -> [Hypergraph; 4] {
    let shift = |edges: &[[usize; 3]]| {
        Hypergraph::new(
            21,
            edges
                .iter()
                .map(|e| e.iter().map(|&v| v + 1).collect())
                .collect(),
        )
        .expect("builtin edge lists are valid")
    };
    let e1 = [
        [0, 1, 2],
        [0, 3, 4],
        [1, 5, 6],
        [0, 7, 8],
        [2, 9, 10],
        [1, 11, 12],
        [9, 13, 14],
        [16, 3, 15],
        [17, 18, 7],
        [19, 20, 13],
    ];
    let e2 = [
        [0, 1, 2],
        [0, 3, 4],
        [1, 5, 6],
        [0, 7, 8],
        [2, 9, 10],
        [1, 11, 12],
        [9, 13, 14],
        [16, 3, 15],
        [17, 18, 5],
        [19, 20, 15],
    ];
    let e3 = [
        [0, 1, 2],
        [0, 3, 4],
        [1, 5, 6],
        [0, 7, 8],
        [5, 9, 10],
        [5, 11, 12],
        [0, 13, 14],
        [16, 2, 15],
        [1, 17, 18],
        [19, 20, 15],
    ];
    let e4 = [
        [0, 1, 2],
        [0, 3, 4],
        [1, 5, 6],
        [0, 7, 8],
        [2, 9, 10],
        [1, 11, 12],
        [0, 13, 14],
        [16, 9, 15],
        [17, 18, 9],
        [3, 19, 20],
    ];
    [shift(&e1), shift(&e2), shift(&e3), shift(&e4)]
}

/// Brute-force proper-coloring count (no monochromatic hyperedge), used as
/// the oracle for the chromatic polynomial at small sizes.
pub fn count_proper_colorings(h: &Hypergraph, t: usize) -> BigInt {
    if t == 0 {
        return if h.n() == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let mut count = BigInt::zero();
    let mut colors = vec![1usize; h.n()];
    loop {
        let f = Coloring::new(colors.clone()).expect("positive colors");
        let proper = h
            .hyperedges()
            .iter()
            .all(|e| e.iter().any(|&v| f.color(v) != f.color(e[0])));
        if proper {
            count += 1;
        }
        let mut i = h.n();
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if colors[i] < t {
                colors[i] += 1;
                for c in colors[i + 1..].iter_mut() {
                    *c = 1;
                }
                break;
            }
        }
    }
}
