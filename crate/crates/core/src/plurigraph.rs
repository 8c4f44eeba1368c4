//! Plurigraphs, proper coloring, deletion and contraction, and three
//! independent algorithms for the chromatic nc-symmetric function `Y_G`.
//!
//! A plurigraph is a vertex set `[n]` plus a multiset of pluriedges, each
//! pluriedge itself a multiset of undirected edges (loops allowed). A
//! coloring is proper when every pluriedge contains a non-monochromatic
//! edge, so a pluriedge whose edges are all loops (a pluriloop) admits no
//! proper coloring at all.
//!
//! `Y_G` can be computed three ways: summing `m_π` over the partition
//! patterns that color properly, the signed powersum expansion over
//! pluriedge subsets, and the deletion-contraction recursion. They agree
//! after basis normalization; the test suites lean on that redundancy.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::ncalg::{NcBasis, NcSymExpr};
use crate::setpart::{
    enumerate_set_partitions, Permutation, SetComposition, SetPartition, UnionFind,
};
use crate::{Error, Result};

/// One pluriedge: a nonempty multiset of undirected edges on `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pluriedge {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// A vertex count plus a multiset of pluriedges sharing it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Plurigraph {
    n: usize,
    pluriedges: Vec<Pluriedge>,
}

/// A total assignment of positive colors to the vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        if colors.contains(&0) {
            return Err(Error::InvalidStructure("colors must be positive".into()));
        }
        Ok(Coloring { colors })
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }
}

impl Pluriedge {
    /// Validates endpoints and normalizes: each pair stored `(min, max)`,
    /// the multiset sorted. Multiplicities and loops are preserved.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidStructure("pluriedge must have edges".into()));
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
        Ok(Pluriedge { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// All edges are loops, so no coloring can make this pluriedge proper.
    pub fn is_pluriloop(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u == v)
    }

    /// Connected components of the underlying graph, as a partition of `[n]`.
    pub fn component_partition(&self) -> SetPartition {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u - 1, v - 1);
        }
        uf.into_partition()
    }

    /// The unique contraction-ready composition ordering the component
    /// blocks, when one exists: blocks strictly decreasing in the
    /// all-elements order, non-singletons first.
    pub fn contraction_ready_composition(&self) -> Option<SetComposition> {
        let part = self.component_partition();
        let mut blocks = part.blocks().to_vec();
        blocks.sort_by(|a, b| b[0].cmp(&a[0]));
        for w in blocks.windows(2) {
            // every element of the earlier block must exceed every element
            // of the later one
            if w[0][0] <= *w[1].last().expect("nonempty block") {
                return None;
            }
        }
        let mut seen_singleton = false;
        for b in &blocks {
            if b.len() == 1 {
                seen_singleton = true;
            } else if seen_singleton {
                return None;
            }
        }
        Some(SetComposition::new(self.n, blocks).expect("component blocks partition [n]"))
    }

    pub fn permute(&self, d: &Permutation) -> Result<Pluriedge> {
        if d.n() != self.n {
            return Err(Error::GroundSetMismatch(self.n, d.n()));
        }
        Pluriedge::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (d.apply(u), d.apply(v))).collect(),
        )
    }
}

impl Plurigraph {
    /// Validates and canonicalizes: pluriedges sorted by their normalized
    /// edge multisets, so handles (indices) are deterministic.
    pub fn new(n: usize, pluriedges: Vec<Pluriedge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("vertex set must be nonempty".into()));
        }
        for pe in &pluriedges {
            if pe.n != n {
                return Err(Error::GroundSetMismatch(n, pe.n));
            }
        }
        let mut pluriedges = pluriedges;
        pluriedges.sort();
        Ok(Plurigraph { n, pluriedges })
    }

    pub fn edgeless(n: usize) -> Self {
        Plurigraph {
            n,
            pluriedges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pluriedges(&self) -> &[Pluriedge] {
        &self.pluriedges
    }

    pub fn num_pluriedges(&self) -> usize {
        self.pluriedges.len()
    }

    pub fn has_pluriloop(&self) -> bool {
        self.pluriedges.iter().any(Pluriedge::is_pluriloop)
    }

    /// Whether every pluriedge contains a non-monochromatic edge under `f`.
    pub fn is_proper(&self, f: &Coloring) -> Result<bool> {
        if f.n() != self.n {
            return Err(Error::PartialColoring {
                expected: self.n,
                got: f.n(),
            });
        }
        Ok(self
            .pluriedges
            .iter()
            .all(|pe| pe.edges.iter().any(|&(u, v)| f.color(u) != f.color(v))))
    }

    /// Connected components of the union of the selected pluriedges.
    pub fn components_of_subset(&self, subset: &[usize]) -> Result<SetPartition> {
        let mut mask = 0u64;
        for &i in subset {
            if i >= self.pluriedges.len() {
                return Err(Error::InvalidHandle {
                    handle: i,
                    count: self.pluriedges.len(),
                });
            }
            mask |= 1 << i;
        }
        Ok(self.components_of_mask(mask))
    }

    fn components_of_mask(&self, mask: u64) -> SetPartition {
        let mut uf = UnionFind::new(self.n);
        for (i, pe) in self.pluriedges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for &(u, v) in &pe.edges {
                    uf.union(u - 1, v - 1);
                }
            }
        }
        uf.into_partition()
    }

    /// Removes one occurrence of the pluriedge at `idx`.
    pub fn delete(&self, idx: usize) -> Result<Plurigraph> {
        self.check_handle(idx)?;
        let mut pluriedges = self.pluriedges.clone();
        pluriedges.remove(idx);
        Ok(Plurigraph {
            n: self.n,
            pluriedges,
        })
    }

    fn check_handle(&self, idx: usize) -> Result<()> {
        if idx >= self.pluriedges.len() {
            return Err(Error::InvalidHandle {
                handle: idx,
                count: self.pluriedges.len(),
            });
        }
        Ok(())
    }

    /// Relabels via some `δ` so that pluriedge `idx` becomes
    /// contraction-ready. Returns `(δ(G), δ, new index of the pluriedge)`.
    ///
    /// The deterministic rule: list the component blocks with
    /// non-singletons first (ordered by descending minimum element), then
    /// singletons by descending element; the i-th listed block is relabeled
    /// onto the i-th range from the top, elements in ascending order. On an
    /// already-ready pluriedge this is the identity.
    pub fn make_contraction_ready(&self, idx: usize) -> Result<(Plurigraph, Permutation, usize)> {
        self.check_handle(idx)?;
        let part = self.pluriedges[idx].component_partition();
        let mut non_singletons: Vec<&Vec<usize>> =
            part.blocks().iter().filter(|b| b.len() >= 2).collect();
        non_singletons.sort_by(|a, b| b[0].cmp(&a[0]));
        let mut singletons: Vec<&Vec<usize>> =
            part.blocks().iter().filter(|b| b.len() == 1).collect();
        singletons.sort_by(|a, b| b[0].cmp(&a[0]));

        let mut image = vec![0usize; self.n];
        let mut hi = self.n;
        for b in non_singletons.into_iter().chain(singletons) {
            let lo = hi - b.len() + 1;
            for (offset, &v) in b.iter().enumerate() {
                image[v - 1] = lo + offset;
            }
            hi = lo.saturating_sub(1);
        }
        let delta = Permutation::new(image)?;
        let relabeled_edge = self.pluriedges[idx].permute(&delta)?;
        let g = self.permute(&delta)?;
        let new_idx = g
            .pluriedges
            .iter()
            .position(|pe| *pe == relabeled_edge)
            .expect("relabeled pluriedge present");
        Ok((g, delta, new_idx))
    }

    /// Contracts the contraction-ready pluriedge at `idx`: the vertices of
    /// block `B_i` of the contraction-ready composition `(B_1, ..., B_ℓ)`
    /// collapse to the new vertex `ℓ-i+1`; remaining pluriedges map
    /// edgewise, keeping loops and multiplicities. Returns the contracted
    /// plurigraph, the induction sequence `r_i = |B_i| - 1` over the
    /// non-singleton blocks, and the composition itself.
    pub fn contract(&self, idx: usize) -> Result<(Plurigraph, Vec<usize>, SetComposition)> {
        self.check_handle(idx)?;
        let phi = self.pluriedges[idx]
            .contraction_ready_composition()
            .ok_or(Error::NotContractionReady(idx))?;
        let l = phi.num_blocks();
        let mut vmap = vec![0usize; self.n];
        for (i0, b) in phi.blocks().iter().enumerate() {
            for &v in b {
                vmap[v - 1] = l - i0;
            }
        }
        let mut mapped = Vec::with_capacity(self.pluriedges.len().saturating_sub(1));
        for (i, pe) in self.pluriedges.iter().enumerate() {
            if i == idx {
                continue;
            }
            let edges = pe
                .edges
                .iter()
                .map(|&(u, v)| (vmap[u - 1], vmap[v - 1]))
                .collect();
            mapped.push(Pluriedge::new(l, edges)?);
        }
        let r: Vec<usize> = phi
            .blocks()
            .iter()
            .filter(|b| b.len() >= 2)
            .map(|b| b.len() - 1)
            .collect();
        Ok((Plurigraph::new(l, mapped)?, r, phi))
    }

    pub fn permute(&self, d: &Permutation) -> Result<Plurigraph> {
        let pluriedges = self
            .pluriedges
            .iter()
            .map(|pe| pe.permute(d))
            .collect::<Result<Vec<_>>>()?;
        Plurigraph::new(self.n, pluriedges)
    }

    /// `Y_G` by direct enumeration: the coefficient of `m_π` is 1 exactly
    /// when coloring the blocks of `π` with distinct colors is proper,
    /// i.e. every pluriedge has an edge joining two different blocks.
    pub fn chromatic_ncsym_enum(&self) -> NcSymExpr {
        let mut terms = Vec::new();
        for pi in enumerate_set_partitions(self.n) {
            let assign = pi.assignment();
            let proper = self
                .pluriedges
                .iter()
                .all(|pe| pe.edges.iter().any(|&(u, v)| assign[u - 1] != assign[v - 1]));
            if proper {
                terms.push((pi, BigInt::one()));
            }
        }
        NcSymExpr::from_terms(self.n, NcBasis::Monomial, terms).expect("homogeneous terms")
    }

    /// `Y_G` by the signed powersum expansion over pluriedge subsets:
    /// `Σ_{A ⊆ 𝓔} (-1)^{|A|} p_{π(A)}`, subsets taken with multiplicity.
    pub fn chromatic_ncsym_powersum(&self) -> NcSymExpr {
        let m = self.pluriedges.len();
        assert!(m < 64, "subset expansion limited to < 64 pluriedges");
        let total: u64 = 1 << m;
        let terms = (0..total)
            .into_par_iter()
            .fold(BTreeMap::<SetPartition, i128>::new, |mut acc, mask| {
                let pi = self.components_of_mask(mask);
                let sign: i128 = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                *acc.entry(pi).or_insert(0) += sign;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        NcSymExpr::from_terms(
            self.n,
            NcBasis::Powersum,
            terms.into_iter().map(|(pi, c)| (pi, BigInt::from(c))),
        )
        .expect("homogeneous terms")
    }

    /// `Y_G` by deletion-contraction: `Y_G = Y_{G\e} - Y_{G/e}↑^{(r...)}`
    /// on a contraction-ready pluriedge (relabeling internally and undoing
    /// the relabeling at the end), bottoming out at edgeless plurigraphs
    /// and short-circuiting to zero on pluriloops.
    pub fn chromatic_ncsym_delcon(&self) -> NcSymExpr {
        if self.has_pluriloop() {
            return NcSymExpr::zero(self.n, NcBasis::Powersum);
        }
        if self.pluriedges.is_empty() {
            return NcSymExpr::powersum(SetPartition::discrete(self.n));
        }
        let (g, delta, idx) = self
            .make_contraction_ready(0)
            .expect("handle 0 valid on nonempty multiset");
        let y_delete = g.delete(idx).expect("idx valid").chromatic_ncsym_delcon();
        let (contracted, r, _phi) = g.contract(idx).expect("relabeled pluriedge is ready");
        let y_contract = contracted
            .chromatic_ncsym_delcon()
            .induct(&r)
            .expect("r fits the contracted degree");
        let y = y_delete.sub(&y_contract).expect("same degree and basis");
        y.permute(&delta.inverse()).expect("degree preserved")
    }

    /// Number of proper colorings with colors drawn from `[k]`.
    pub fn chromatic_polynomial(&self, k: usize) -> BigInt {
        self.chromatic_ncsym_powersum().eval_principal(k)
    }

    /// A simple plurigraph: every component of every pluriedge is a
    /// complete graph, and no pluriedge's component partition refines
    /// another's (the `≺` preorder relates no two distinct members).
    pub fn is_simple(&self) -> bool {
        for pe in &self.pluriedges {
            let support: HashSet<(usize, usize)> = pe
                .edges
                .iter()
                .copied()
                .filter(|&(u, v)| u != v)
                .collect();
            for b in pe.component_partition().blocks() {
                for i in 0..b.len() {
                    for j in i + 1..b.len() {
                        if !support.contains(&(b[i], b[j])) {
                            return false;
                        }
                    }
                }
            }
        }
        let parts: Vec<SetPartition> = self
            .pluriedges
            .iter()
            .map(Pluriedge::component_partition)
            .collect();
        for i in 0..parts.len() {
            for j in 0..parts.len() {
                if i != j && parts[i].refines(&parts[j]).expect("same n") {
                    return false;
                }
            }
        }
        true
    }

    /// Parses the line-oriented plurigraph file format:
    /// `plurigraph <n>` then one `edge <u>-<v> <u>-<v> ...` line per
    /// pluriedge, loops written `u-u`. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Plurigraph> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::syntax(0, "empty plurigraph file"))?;
        let n = parse_header(lineno, header, "plurigraph")?;
        let mut pluriedges = Vec::new();
        for (lineno, line) in lines {
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("edge") => {}
                Some(other) => {
                    return Err(Error::syntax(lineno, format!("expected 'edge', got '{other}'")));
                }
                None => unreachable!("content lines are nonempty"),
            }
            let mut edges = Vec::new();
            for tok in tokens {
                let (u, v) = tok
                    .split_once('-')
                    .ok_or_else(|| Error::syntax(lineno, format!("expected 'u-v', got '{tok}'")))?;
                let u: usize = u
                    .parse()
                    .map_err(|_| Error::syntax(lineno, format!("bad vertex '{u}'")))?;
                let v: usize = v
                    .parse()
                    .map_err(|_| Error::syntax(lineno, format!("bad vertex '{v}'")))?;
                edges.push((u, v));
            }
            pluriedges.push(Pluriedge::new(n, edges)?);
        }
        Plurigraph::new(n, pluriedges)
    }
}

/// Skips blank lines and `#` comments, yielding `(line number, content)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header(lineno: usize, line: &str, keyword: &str) -> Result<usize> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(k) if k == keyword => {}
        other => {
            return Err(Error::syntax(
                lineno,
                format!("expected '{keyword} <n>', got '{}'", other.unwrap_or("")),
            ));
        }
    }
    let n = tokens
        .next()
        .ok_or_else(|| Error::syntax(lineno, "missing vertex count"))?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::syntax(lineno, format!("bad vertex count '{n}'")))?;
    if tokens.next().is_some() {
        return Err(Error::syntax(lineno, "trailing tokens after header"));
    }
    Ok(n)
}

impl fmt::Display for Plurigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "plurigraph {}", self.n)?;
        for pe in &self.pluriedges {
            write!(f, "\nedge")?;
            for &(u, v) in &pe.edges {
                write!(f, " {u}-{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Plurigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plurigraph({})", self.to_string().replace('\n', "; "))
    }
}

impl fmt::Debug for Pluriedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pluriedge[n={}](", self.n)?;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}

/// The refinement-minimal partitions above the discrete one carrying a
/// nonzero powersum coefficient. For `Y_G` of a simple plurigraph these
/// are exactly the pluriedge component partitions.
pub fn reconstruct_simple(e: &NcSymExpr) -> Result<Vec<SetPartition>> {
    if e.basis() != NcBasis::Powersum {
        return Err(Error::WrongBasis {
            expected: "powersum",
            got: "monomial",
        });
    }
    let discrete = SetPartition::discrete(e.n());
    let support: Vec<&SetPartition> = e
        .terms()
        .map(|(pi, _)| pi)
        .filter(|pi| **pi != discrete)
        .collect();
    let mut minimal = Vec::new();
    for pi in &support {
        let is_minimal = support
            .iter()
            .all(|sigma| *sigma == *pi || !sigma.refines(pi).expect("same n"));
        if is_minimal {
            minimal.push((*pi).clone());
        }
    }
    minimal.sort();
    Ok(minimal)
}

/// `Y_A = Σ_{A' ⊆ A} (-1)^{|A'|} p_{⋁ A'}` for a family of partitions of
/// the same `[n]` (the join over the empty set is the discrete partition).
pub fn y_from_antichain(n: usize, family: &[SetPartition]) -> Result<NcSymExpr> {
    for pi in family {
        if pi.n() != n {
            return Err(Error::GroundSetMismatch(n, pi.n()));
        }
    }
    assert!(family.len() < 64, "antichain expansion limited to < 64 members");
    let mut terms = Vec::new();
    for mask in 0u64..(1 << family.len()) {
        let mut join = SetPartition::discrete(n);
        for (i, pi) in family.iter().enumerate() {
            if mask & (1 << i) != 0 {
                join = join.join(pi)?;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        terms.push((join, BigInt::from(sign)));
    }
    NcSymExpr::from_terms(n, NcBasis::Powersum, terms)
}
