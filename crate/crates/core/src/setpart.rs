//! Set partitions and set compositions of `[n]`, the refinement lattice,
//! and the induction (`↑`) / contraction (`↓`) operators on them.
//!
//! A partition of `[n]` splits `{1..n}` into unordered disjoint nonempty
//! blocks; a composition is the same with the block order significant.
//! Partitions are kept in canonical form (blocks ordered by minimum
//! element, elements ascending within a block), so equality and hashing
//! are structural.
//!
//! Induction with respect to a sequence `(r_0, ..., r_k)` repeatedly
//! applies the single step `↑^{s,t}`: shift the top `t` elements up by
//! `s`, then adjoin `s` fresh elements to the block of element `n-t`.
//! Contraction `↓` is the inverse where defined: it identifies runs of
//! consecutive elements counted from the top, and is undefined when a run
//! straddles two blocks.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// A partition of `{1..n}` into unordered nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// A partition of `{1..n}` into an ordered sequence of nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetComposition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

/// A bijection on `{1..n}`, stored as the image vector `image[i-1] = d(i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

fn validate_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidBlocks("ground set must be nonempty".into()));
    }
    let mut seen = vec![false; n + 1];
    let mut count = 0usize;
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidBlocks("empty block".into()));
        }
        for &e in b {
            if e == 0 || e > n {
                return Err(Error::InvalidBlocks(format!(
                    "element {e} out of range 1..={n}"
                )));
            }
            if seen[e] {
                return Err(Error::InvalidBlocks(format!("element {e} repeated")));
            }
            seen[e] = true;
            count += 1;
        }
    }
    if count != n {
        return Err(Error::InvalidBlocks(format!(
            "blocks cover {count} of {n} elements"
        )));
    }
    Ok(())
}

/// One induction step `↑^{s,t}` on a block family over `[n]`; returns the
/// new ground-set size `n + s`. Elements above `n - t` shift up by `s`,
/// then `n-t+1 ..= n-t+s` join the block of element `n - t`.
fn induct_step(blocks: &mut [Vec<usize>], n: usize, s: usize, t: usize) -> usize {
    debug_assert!(t < n);
    let target = n - t;
    for b in blocks.iter_mut() {
        for e in b.iter_mut() {
            if *e > target {
                *e += s;
            }
        }
    }
    if s > 0 {
        for b in blocks.iter_mut() {
            if b.contains(&target) {
                b.extend(target + 1..=target + s);
                b.sort_unstable();
                break;
            }
        }
    }
    n + s
}

fn induct_blocks(blocks: &mut [Vec<usize>], n: usize, r: &[usize]) -> Result<usize> {
    if r.len() > n {
        return Err(Error::InductionTooLong { len: r.len(), n });
    }
    let mut cur = n;
    let mut t = 0usize;
    for &s in r {
        cur = induct_step(blocks, cur, s, t);
        t += s + 1;
    }
    Ok(cur)
}

impl SetPartition {
    /// Builds a partition from blocks, validating and canonicalizing.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate_blocks(n, &blocks)?;
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// The discrete partition `1|2|...|n`, the bottom of the lattice.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|e| vec![e]).collect(),
        }
    }

    /// The one-block partition `12...n`, the top of the lattice.
    pub fn single_block(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// Builds a partition from a block assignment (`assign[i]` is the block
    /// label of element `i+1`; labels are arbitrary).
    pub fn from_assignment(assign: &[usize]) -> Self {
        let n = assign.len();
        let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &lbl) in assign.iter().enumerate() {
            by_label.entry(lbl).or_default().push(i + 1);
        }
        Self::canonical(n, by_label.into_values().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index (into canonical order) of each element; entry `i` is the
    /// block of element `i+1`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut assign = vec![0usize; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &e in b {
                assign[e - 1] = bi;
            }
        }
        assign
    }

    /// Whether `self ≤ other` in the refinement order: every block of
    /// `self` is contained in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        let assign = other.assignment();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&e| assign[e - 1] == assign[b[0] - 1])))
    }

    /// Least upper bound in the refinement lattice.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        let mut uf = UnionFind::new(self.n);
        for p in [self, other] {
            for b in &p.blocks {
                for w in b.windows(2) {
                    uf.union(w[0] - 1, w[1] - 1);
                }
            }
        }
        Ok(uf.into_partition())
    }

    /// Block sizes, sorted weakly decreasing.
    pub fn shape(&self) -> IntegerPartition {
        IntegerPartition::new(self.blocks.iter().map(|b| b.len()).collect())
            .expect("block sizes are positive")
    }

    /// Induction by a sequence. The `↑^{s,t}` step acts on elements, so no
    /// block ordering is involved; inducting any ordering of the blocks as
    /// a composition and forgetting the order gives the same partition.
    pub fn induct(&self, r: &[usize]) -> Result<SetPartition> {
        let mut blocks = self.blocks.clone();
        let n = induct_blocks(&mut blocks, self.n, r)?;
        Ok(Self::canonical(n, blocks))
    }

    /// Relabels every element through `d` and re-canonicalizes.
    pub fn permute(&self, d: &Permutation) -> Result<SetPartition> {
        if d.n() != self.n {
            return Err(Error::GroundSetMismatch(self.n, d.n()));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| d.apply(e)).collect())
            .collect();
        Ok(Self::canonical(self.n, blocks))
    }

    /// Parses the `12|3` / `{1,10}|{2}` syntax. The ground set is inferred
    /// from the elements, which must cover `1..=max` exactly.
    pub fn parse(text: &str) -> Result<Self> {
        let blocks = parse_blocks(text, '|')?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks)
    }
}

impl SetComposition {
    /// Builds a composition from ordered blocks, validating element cover.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate_blocks(n, &blocks)?;
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(SetComposition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element along the composition order; entry `i`
    /// is the (0-based) block of element `i+1`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut assign = vec![0usize; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &e in b {
                assign[e - 1] = bi;
            }
        }
        assign
    }

    /// Forgets the block order.
    pub fn forget_order(&self) -> SetPartition {
        SetPartition::canonical(self.n, self.blocks.clone())
    }

    /// Induction by a sequence (see module docs); the block order carries
    /// over unchanged.
    pub fn induct(&self, r: &[usize]) -> Result<SetComposition> {
        let mut blocks = self.blocks.clone();
        let n = induct_blocks(&mut blocks, self.n, r)?;
        Ok(SetComposition { n, blocks })
    }

    /// Contraction by a sequence, or `None` when some run of identified
    /// elements straddles two blocks (the undefined case) or the sequence
    /// runs out of elements.
    pub fn contract(&self, r: &[usize]) -> Option<SetComposition> {
        let mut blocks = self.blocks.clone();
        let mut n = self.n;
        let mut t = 0usize;
        for &s in r {
            if t + s + 1 > n {
                return None;
            }
            let lo = n - t - s;
            let hi = n - t;
            let idx = blocks.iter().position(|b| b.contains(&lo))?;
            if !(lo..=hi).all(|e| blocks[idx].contains(&e)) {
                return None;
            }
            for b in blocks.iter_mut() {
                b.retain(|&e| !(lo + 1..=hi).contains(&e));
                for e in b.iter_mut() {
                    if *e > hi {
                        *e -= s;
                    }
                }
            }
            n -= s;
            t += 1;
        }
        Some(SetComposition { n, blocks })
    }

    /// Parses the `(12,3)` / `({1,10},{2})` syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if !t.starts_with('(') || !t.ends_with(')') {
            return Err(Error::syntax(0, "composition must be parenthesized"));
        }
        let blocks = parse_blocks(&t[1..t.len() - 1], ',')?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetComposition::new(n, blocks)
    }
}

// Partitions order finer-first (more blocks first), then by block lists;
// compositions order coarser-first, matching the usual display order of
// monomial expansions.
impl Ord for SetPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(other.blocks.len().cmp(&self.blocks.len()))
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SetComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.blocks.len().cmp(&other.blocks.len()))
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for SetComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl IntegerPartition {
    /// Sorts the parts weakly decreasing; all parts must be positive.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidBlocks("zero part in integer partition".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts equal to 1.
    pub fn num_ones(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    /// `(1^n)`, the all-ones partition.
    pub fn ones(n: usize) -> Self {
        IntegerPartition { parts: vec![1; n] }
    }
}

impl Ord for IntegerPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sum()
            .cmp(&other.sum())
            .then(other.parts.len().cmp(&self.parts.len()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for IntegerPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Permutation {
    /// Validates that `image` is a bijection on `{1..n}`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0usize; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v - 1] = i + 1;
        }
        Permutation { image }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::GroundSetMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            image: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false when the two were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    /// The partition of `[n]` given by the current components (1-based).
    pub fn into_partition(mut self) -> SetPartition {
        let n = self.parent.len();
        let assign: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        SetPartition::from_assignment(&assign)
    }
}

/// Streams every partition of `[n]` exactly once, in lexicographic order of
/// restricted growth strings (so the one-block partition comes first).
pub fn enumerate_set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        rgs: vec![0; n],
        started: false,
        done: n == 0,
    }
}

pub struct SetPartitions {
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.started {
            // Lexicographic successor of the restricted growth string.
            let n = self.rgs.len();
            let mut i = n;
            loop {
                if i <= 1 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                let prefix_max = *self.rgs[..i].iter().max().expect("nonempty prefix");
                if self.rgs[i] <= prefix_max {
                    self.rgs[i] += 1;
                    for v in self.rgs[i + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        } else {
            self.started = true;
        }
        Some(SetPartition::from_assignment(&self.rgs))
    }
}

/// Streams every composition of `[n]` exactly once: each partition in
/// `enumerate_set_partitions` order, with its blocks permuted through all
/// orderings lexicographically.
pub fn enumerate_set_compositions(n: usize) -> SetCompositions {
    SetCompositions {
        partitions: enumerate_set_partitions(n),
        current: None,
        perm: Vec::new(),
    }
}

pub struct SetCompositions {
    partitions: SetPartitions,
    current: Option<SetPartition>,
    perm: Vec<usize>,
}

impl Iterator for SetCompositions {
    type Item = SetComposition;

    fn next(&mut self) -> Option<SetComposition> {
        loop {
            match &self.current {
                Some(p) => {
                    let comp = SetComposition {
                        n: p.n(),
                        blocks: self.perm.iter().map(|&i| p.blocks()[i].clone()).collect(),
                    };
                    if !next_permutation(&mut self.perm) {
                        self.current = None;
                    }
                    return Some(comp);
                }
                None => {
                    let p = self.partitions.next()?;
                    self.perm = (0..p.num_blocks()).collect();
                    self.current = Some(p);
                }
            }
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn fmt_block(f: &mut fmt::Formatter<'_>, b: &[usize], compact: bool) -> fmt::Result {
    if compact {
        for e in b {
            write!(f, "{e}")?;
        }
        Ok(())
    } else {
        write!(f, "{{")?;
        for (i, e) in b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.n <= 9;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            fmt_block(f, b, compact)?;
        }
        Ok(())
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.n <= 9;
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            fmt_block(f, b, compact)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetComposition{self}")
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPartition{self}")
    }
}

/// Parses blocks separated by `sep`; a block is either a run of digits
/// 1-9 (one element per digit) or `{a,b,...}` with full decimal elements.
fn parse_blocks(text: &str, sep: char) -> Result<Vec<Vec<usize>>> {
    let mut blocks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut expect_block = true;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
        } else if c == sep {
            if expect_block {
                return Err(Error::syntax(pos, "expected block"));
            }
            expect_block = true;
            pos += 1;
        } else if c == '{' {
            pos += 1;
            let mut block = Vec::new();
            let mut num = String::new();
            loop {
                if pos >= chars.len() {
                    return Err(Error::syntax(pos, "unterminated '{'"));
                }
                let c = chars[pos];
                if c.is_ascii_digit() {
                    num.push(c);
                    pos += 1;
                } else if c == ',' || c == '}' {
                    if num.is_empty() {
                        return Err(Error::syntax(pos, "expected element"));
                    }
                    let e: usize = num.parse().map_err(|_| Error::syntax(pos, "bad number"))?;
                    if e == 0 {
                        return Err(Error::syntax(pos, "element 0 is not allowed"));
                    }
                    block.push(e);
                    num.clear();
                    pos += 1;
                    if c == '}' {
                        break;
                    }
                } else {
                    return Err(Error::syntax(pos, format!("unexpected character '{c}'")));
                }
            }
            blocks.push(block);
            expect_block = false;
        } else if ('1'..='9').contains(&c) {
            let mut block = Vec::new();
            while pos < chars.len() && ('1'..='9').contains(&chars[pos]) {
                block.push(chars[pos] as usize - '0' as usize);
                pos += 1;
            }
            blocks.push(block);
            expect_block = false;
        } else {
            return Err(Error::syntax(pos, format!("unexpected character '{c}'")));
        }
    }
    if expect_block {
        return Err(Error::syntax(chars.len(), "expected block"));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(text: &str) -> SetPartition {
        SetPartition::parse(text).unwrap()
    }

    fn sc(text: &str) -> SetComposition {
        SetComposition::parse(text).unwrap()
    }

    #[test]
    fn refines_examples() {
        assert!(sp("12|3").refines(&sp("123")).unwrap());
        assert!(!sp("12|3").refines(&sp("13|2")).unwrap());
        assert!(sp("1|2|3").refines(&sp("12|3")).unwrap());
        assert!(matches!(
            sp("12|3").refines(&sp("12")),
            Err(Error::GroundSetMismatch(3, 2))
        ));
    }

    #[test]
    fn join_examples() {
        // 123/4/5 ∨ 1/234/5 = 1234/5
        assert_eq!(sp("123|4|5").join(&sp("1|234|5")).unwrap(), sp("1234|5"));
        // 13/24 ∨ 12/34 = 1234
        assert_eq!(sp("12|34").join(&sp("13|24")).unwrap(), sp("1234"));
        let p = sp("14|2|35");
        assert_eq!(p.join(&SetPartition::discrete(5)).unwrap(), p);
    }

    #[test]
    fn shape_examples() {
        assert_eq!(sp("12|3").shape(), IntegerPartition::new(vec![2, 1]).unwrap());
        assert_eq!(
            sp("1|2|3|4").shape(),
            IntegerPartition::new(vec![1, 1, 1, 1]).unwrap()
        );
        assert_eq!(sp("1234").shape(), IntegerPartition::new(vec![4]).unwrap());
    }

    #[test]
    fn induct_composition_paper_example() {
        // (1,2)↑^{(2,1)} = (12,345)
        assert_eq!(sc("(1,2)").induct(&[2, 1]).unwrap(), sc("(12,345)"));
        let f = sc("(13,2)");
        assert_eq!(f.induct(&[]).unwrap(), f);
        // hand application of the recursion with t = 0
        assert_eq!(sc("(1,2)").induct(&[1]).unwrap(), sc("(1,23)"));
    }

    #[test]
    fn induct_too_long() {
        assert!(matches!(
            sc("(1,2)").induct(&[1, 1, 1]),
            Err(Error::InductionTooLong { len: 3, n: 2 })
        ));
    }

    #[test]
    fn induct_partition_examples() {
        // forced by Y_{G/G}↑^{(1,1)} = m_{12/34}
        assert_eq!(sp("1|2").induct(&[1, 1]).unwrap(), sp("12|34"));
        let p = sp("13|2");
        assert_eq!(p.induct(&[]).unwrap(), p);
        assert_eq!(sp("1|2|3").induct(&[2]).unwrap(), sp("1|2|345"));
    }

    #[test]
    fn induct_partition_is_order_independent() {
        // Inducting any block ordering as a composition and forgetting the
        // order agrees with the element-wise partition induction.
        for p in enumerate_set_partitions(4) {
            for r in [&[1usize][..], &[2], &[1, 1], &[2, 1]] {
                let direct = p.induct(r).unwrap();
                let blocks = p.blocks().to_vec();
                let mut perm: Vec<usize> = (0..blocks.len()).collect();
                loop {
                    let ordered: Vec<Vec<usize>> =
                        perm.iter().map(|&i| blocks[i].clone()).collect();
                    let comp = SetComposition::new(p.n(), ordered).unwrap();
                    assert_eq!(comp.induct(r).unwrap().forget_order(), direct);
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn contract_composition_paper_examples() {
        // (12,345)↓_{(2,1)} = (1,2)
        assert_eq!(sc("(12,345)").contract(&[2, 1]), Some(sc("(1,2)")));
        // (125,34)↓_{(2,1)} is not defined: 3,4,5 straddle two blocks
        assert_eq!(sc("(125,34)").contract(&[2, 1]), None);
        let f = sc("(3,12)");
        assert_eq!(f.contract(&[]), Some(f.clone()));
    }

    #[test]
    fn induct_contract_round_trip() {
        let seqs: &[&[usize]] = &[&[1], &[2], &[3], &[1, 1], &[1, 2], &[2, 1], &[1, 1, 1]];
        for n in 1..=4 {
            for f in enumerate_set_compositions(n) {
                for &r in seqs {
                    if r.len() > n {
                        continue;
                    }
                    let up = f.induct(r).unwrap();
                    assert_eq!(up.contract(r), Some(f.clone()), "↓ undoes ↑ on {f} by {r:?}");
                }
                // Whenever contraction is defined, induction undoes it;
                // when it is undefined, no preimage under ↑ exists.
                for &r in seqs {
                    let total: usize = r.iter().sum();
                    match f.contract(r) {
                        Some(down) => {
                            assert_eq!(down.induct(r).unwrap(), f, "↑ undoes ↓ on {f} by {r:?}")
                        }
                        None => {
                            if n > total && r.len() <= n - total {
                                let preimage = enumerate_set_compositions(n - total)
                                    .any(|g| g.induct(r).unwrap() == f);
                                assert!(!preimage, "undefined ↓ but ↑ preimage exists: {f} {r:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn permute_partition_examples() {
        assert!(matches!(
            Permutation::new(vec![1, 1, 2]),
            Err(Error::NotBijection(3))
        ));
        let p = sp("12|3");
        assert_eq!(p.permute(&Permutation::identity(3)).unwrap(), p);
        // transposition (1 3): 12|3 -> 23|1 = 1|23
        let d = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(p.permute(&d).unwrap(), sp("1|23"));
        let back = p.permute(&d).unwrap().permute(&d.inverse()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn permute_is_group_action() {
        let p = sp("14|2|35");
        let d1 = Permutation::new(vec![2, 3, 4, 5, 1]).unwrap();
        let d2 = Permutation::new(vec![5, 4, 3, 2, 1]).unwrap();
        let lhs = p.permute(&d1).unwrap().permute(&d2).unwrap();
        let rhs = p.permute(&d2.compose(&d1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn enumeration_counts_match_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        let fubini = [1usize, 1, 3, 13, 75, 541, 4683, 47293, 545835];
        for n in 1..=8 {
            assert_eq!(enumerate_set_partitions(n).count(), bell[n], "Bell({n})");
            assert_eq!(
                enumerate_set_compositions(n).count(),
                fubini[n],
                "ordered Bell({n})"
            );
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let parts: Vec<_> = enumerate_set_partitions(1).collect();
        assert_eq!(parts, vec![sp("1")]);
        assert_eq!(enumerate_set_partitions(3).count(), 5);
        assert_eq!(enumerate_set_compositions(3).count(), 13);
        // each object exactly once
        let mut seen = std::collections::HashSet::new();
        for f in enumerate_set_compositions(4) {
            assert!(seen.insert(f.to_string()));
        }
    }

    #[test]
    fn join_lattice_laws_exhaustive() {
        let all: Vec<_> = enumerate_set_partitions(4).collect();
        for p in &all {
            for q in &all {
                let j = p.join(q).unwrap();
                assert_eq!(j, q.join(p).unwrap());
                assert!(p.refines(&j).unwrap());
                assert!(q.refines(&j).unwrap());
                assert!(j.shape().len() <= p.shape().len().min(q.shape().len()));
                for r in &all {
                    assert_eq!(
                        p.join(q).unwrap().join(r).unwrap(),
                        p.join(&q.join(r).unwrap()).unwrap()
                    );
                }
            }
            assert_eq!(p.join(p).unwrap(), *p);
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["12|3", "1|2|3", "1234", "14|2|35"] {
            assert_eq!(sp(text).to_string(), text);
        }
        assert_eq!(
            SetPartition::parse("{1,10}|{2}|{3,4,5,6,7,8,9}").unwrap().to_string(),
            "{1,10}|{2}|{3,4,5,6,7,8,9}"
        );
        for text in ["(12,3)", "(3,12)", "(1,2,3)"] {
            assert_eq!(sc(text).to_string(), text);
        }
        assert!(SetPartition::parse("12|").is_err());
        assert!(SetPartition::parse("12|4").is_err()); // gap: 3 missing
        assert!(SetPartition::parse("10|2").is_err()); // 0 not an element
        assert!(SetComposition::parse("12,3").is_err());
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = SetPartition::new(3, vec![vec![3], vec![2, 1]]).unwrap();
        let b = SetPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(a, b);
        // compositions keep order
        let c = SetComposition::new(3, vec![vec![3], vec![1, 2]]).unwrap();
        let d = SetComposition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        assert_ne!(c, d);
    }

    #[test]
    fn partitions_carry_their_ground_set() {
        let p2 = SetPartition::new(2, vec![vec![1], vec![2]]).unwrap();
        let p3 = SetPartition::new(3, vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_ne!(p2, p3);
    }
}
