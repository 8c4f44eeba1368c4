//! Sparse exact-integer linear combinations over the monomial and powersum
//! bases of NCSym (indexed by set partitions) and the monomial basis of
//! NCQSym (indexed by set compositions), plus the commutative powersum
//! algebra (indexed by integer partitions).
//!
//! Infinite formal sums in the noncommuting variables `y_1, y_2, ...` are
//! represented purely symbolically. [`TruncatedExpansion`] is the one
//! concrete expansion — words over a finite color bound — and exists as a
//! finite oracle for the symbolic operations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::setpart::{
    enumerate_set_partitions, IntegerPartition, Permutation, SetComposition, SetPartition,
};
use crate::{Error, Result};

/// Basis tag for [`NcSymExpr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcBasis {
    Monomial,
    Powersum,
}

impl NcBasis {
    fn letter(self) -> char {
        match self {
            NcBasis::Monomial => 'm',
            NcBasis::Powersum => 'p',
        }
    }

    fn name(self) -> &'static str {
        match self {
            NcBasis::Monomial => "monomial",
            NcBasis::Powersum => "powersum",
        }
    }
}

/// A homogeneous element of NCSym of degree `n`, tagged with its basis.
#[derive(Clone)]
pub struct NcSymExpr {
    n: usize,
    basis: NcBasis,
    terms: BTreeMap<SetPartition, BigInt>,
}

/// A homogeneous element of NCQSym of degree `n` in the monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct NcQSymExpr {
    n: usize,
    terms: BTreeMap<SetComposition, BigInt>,
}

/// A homogeneous symmetric function of degree `n` in the commutative
/// powersum basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymExpr {
    n: usize,
    terms: BTreeMap<IntegerPartition, BigInt>,
}

/// Words of length `n` over the colors `{1..c}` with integer coefficients:
/// the expansion of a degree-`n` expression with every variable `y_i`,
/// `i > c`, set to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedExpansion {
    n: usize,
    colors: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

fn add_into<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, coef: BigInt) {
    use std::collections::btree_map::Entry;
    if coef.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += coef;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(coef);
        }
    }
}

/// `k (k-1) ... (k-len+1)` as a big integer.
pub fn falling_factorial(k: usize, len: usize) -> BigInt {
    if len > k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..len {
        acc *= BigInt::from(k - i);
    }
    acc
}

/// Binomial coefficient `C(k, len)` as a big integer.
pub fn binomial(k: usize, len: usize) -> BigInt {
    if len > k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..len {
        acc *= BigInt::from(k - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

fn int_pow(k: usize, e: usize) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= BigInt::from(k);
    }
    acc
}

impl NcSymExpr {
    pub fn zero(n: usize, basis: NcBasis) -> Self {
        NcSymExpr {
            n,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `m_π`.
    pub fn monomial(pi: SetPartition) -> Self {
        Self::basis_element(NcBasis::Monomial, pi)
    }

    /// The basis element `p_π`.
    pub fn powersum(pi: SetPartition) -> Self {
        Self::basis_element(NcBasis::Powersum, pi)
    }

    pub fn basis_element(basis: NcBasis, pi: SetPartition) -> Self {
        let n = pi.n();
        let mut terms = BTreeMap::new();
        terms.insert(pi, BigInt::one());
        NcSymExpr { n, basis, terms }
    }

    pub fn from_terms(
        n: usize,
        basis: NcBasis,
        terms: impl IntoIterator<Item = (SetPartition, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pi, c) in terms {
            if pi.n() != n {
                return Err(Error::DegreeMismatch(n, pi.n()));
            }
            add_into(&mut map, pi, c);
        }
        Ok(NcSymExpr {
            n,
            basis,
            terms: map,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> NcBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartition, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pi: &SetPartition) -> BigInt {
        self.terms.get(pi).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &NcSymExpr) -> Result<NcSymExpr> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        if self.basis != other.basis {
            return Err(Error::WrongBasis {
                expected: self.basis.name(),
                got: other.basis.name(),
            });
        }
        let mut terms = self.terms.clone();
        for (pi, c) in &other.terms {
            add_into(&mut terms, pi.clone(), c.clone());
        }
        Ok(NcSymExpr {
            n: self.n,
            basis: self.basis,
            terms,
        })
    }

    pub fn neg(&self) -> NcSymExpr {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &NcSymExpr) -> Result<NcSymExpr> {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &BigInt) -> NcSymExpr {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            for (pi, c) in &self.terms {
                terms.insert(pi.clone(), c * a);
            }
        }
        NcSymExpr {
            n: self.n,
            basis: self.basis,
            terms,
        }
    }

    /// The linear extension of `p_π ↦ Σ_{σ ≥ π} m_σ`. Errors unless the
    /// expression is in the powersum basis.
    pub fn p_to_m(&self) -> Result<NcSymExpr> {
        if self.basis != NcBasis::Powersum {
            return Err(Error::WrongBasis {
                expected: "powersum",
                got: self.basis.name(),
            });
        }
        let mut terms = BTreeMap::new();
        for (pi, c) in &self.terms {
            for sigma in coarsenings(pi) {
                add_into(&mut terms, sigma, c.clone());
            }
        }
        Ok(NcSymExpr {
            n: self.n,
            basis: NcBasis::Monomial,
            terms,
        })
    }

    /// Monomial-basis normal form: identity on monomial input.
    pub fn to_monomial(&self) -> NcSymExpr {
        match self.basis {
            NcBasis::Monomial => self.clone(),
            NcBasis::Powersum => self.p_to_m().expect("basis checked"),
        }
    }

    /// `m_π ↦ Σ_Φ M_Φ` over all orderings of the blocks of `π`. Errors
    /// unless the expression is in the monomial basis.
    pub fn to_ncqsym(&self) -> Result<NcQSymExpr> {
        if self.basis != NcBasis::Monomial {
            return Err(Error::WrongBasis {
                expected: "monomial",
                got: self.basis.name(),
            });
        }
        let mut terms = BTreeMap::new();
        for (pi, c) in &self.terms {
            let blocks = pi.blocks().to_vec();
            let mut order: Vec<usize> = (0..blocks.len()).collect();
            loop {
                let comp = SetComposition::new(
                    pi.n(),
                    order.iter().map(|&i| blocks[i].clone()).collect(),
                )
                .expect("permuted blocks form a composition");
                add_into(&mut terms, comp, c.clone());
                if !next_index_permutation(&mut order) {
                    break;
                }
            }
        }
        Ok(NcQSymExpr { n: self.n, terms })
    }

    /// Index-wise induction: `m_π ↑ = m_{π↑}` and `p_π ↑ = p_{π↑}`.
    pub fn induct(&self, r: &[usize]) -> Result<NcSymExpr> {
        if r.len() > self.n {
            return Err(Error::InductionTooLong {
                len: r.len(),
                n: self.n,
            });
        }
        let mut terms = BTreeMap::new();
        for (pi, c) in &self.terms {
            add_into(&mut terms, pi.induct(r)?, c.clone());
        }
        Ok(NcSymExpr {
            n: self.n + r.iter().sum::<usize>(),
            basis: self.basis,
            terms,
        })
    }

    /// The relabeling action: basis elements are permuted index-wise.
    pub fn permute(&self, d: &Permutation) -> Result<NcSymExpr> {
        let mut terms = BTreeMap::new();
        for (pi, c) in &self.terms {
            add_into(&mut terms, pi.permute(d)?, c.clone());
        }
        Ok(NcSymExpr {
            n: self.n,
            basis: self.basis,
            terms,
        })
    }

    /// Lets the variables commute: `p_π ↦ p_{type π}` with coefficients
    /// collected by shape. Requires the powersum basis.
    pub fn commutative_image(&self) -> Result<SymExpr> {
        if self.basis != NcBasis::Powersum {
            return Err(Error::WrongBasis {
                expected: "powersum",
                got: self.basis.name(),
            });
        }
        let mut terms = BTreeMap::new();
        for (pi, c) in &self.terms {
            add_into(&mut terms, pi.shape(), c.clone());
        }
        Ok(SymExpr { n: self.n, terms })
    }

    /// Specialization `y_i = 1` for `i ≤ k` and `y_i = 0` for `i > k`:
    /// `m_π ↦ k(k-1)...(k-ℓ+1)` and `p_π ↦ k^ℓ` with `ℓ` the block count.
    pub fn eval_principal(&self, k: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (pi, c) in &self.terms {
            let l = pi.num_blocks();
            let v = match self.basis {
                NcBasis::Monomial => falling_factorial(k, l),
                NcBasis::Powersum => int_pow(k, l),
            };
            acc += c * v;
        }
        acc
    }

    /// Expands into words over the colors `{1..c}`: for `m_π` the words
    /// constant on blocks and distinct across blocks; powersum input is
    /// converted through the monomial basis first.
    pub fn expand_truncated(&self, c: usize) -> TruncatedExpansion {
        let mono = self.to_monomial();
        let mut out = TruncatedExpansion::zero(self.n, c);
        for (pi, coef) in &mono.terms {
            let l = pi.num_blocks();
            let mut colors = Vec::with_capacity(l);
            let mut used = vec![false; c + 1];
            expand_monomial_words(pi, c, &mut colors, &mut used, coef, &mut out.terms);
        }
        out
    }

    /// Parses the one-term-per-line `<signed int> <m|p>[<partition>]`
    /// format; all terms must share one basis letter and one degree.
    pub fn parse(text: &str) -> Result<NcSymExpr> {
        let mut basis: Option<NcBasis> = None;
        let mut n: Option<usize> = None;
        let mut terms: Vec<(SetPartition, BigInt)> = Vec::new();
        for (coef, letter, key) in parse_term_lines(text)? {
            let b = match letter {
                'm' => NcBasis::Monomial,
                'p' => NcBasis::Powersum,
                _ => {
                    return Err(Error::syntax(0, format!("unknown NCSym basis '{letter}'")));
                }
            };
            if *basis.get_or_insert(b) != b {
                return Err(Error::WrongBasis {
                    expected: basis.unwrap().name(),
                    got: b.name(),
                });
            }
            let pi = SetPartition::parse(&key)?;
            if let Some(n0) = n {
                if pi.n() != n0 {
                    return Err(Error::DegreeMismatch(n0, pi.n()));
                }
            } else {
                n = Some(pi.n());
            }
            terms.push((pi, coef));
        }
        let n = n.ok_or_else(|| Error::syntax(0, "empty expression"))?;
        NcSymExpr::from_terms(n, basis.expect("basis set with n"), terms)
    }
}

impl PartialEq for NcSymExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        if self.basis == other.basis {
            self.terms == other.terms
        } else {
            self.to_monomial().terms == other.to_monomial().terms
        }
    }
}

impl Eq for NcSymExpr {}

/// All partitions `σ ≥ π` in the refinement order, built by merging the
/// blocks of `π` along every partition of the block-index set.
fn coarsenings(pi: &SetPartition) -> Vec<SetPartition> {
    let blocks = pi.blocks();
    enumerate_set_partitions(blocks.len())
        .map(|grouping| {
            let merged: Vec<Vec<usize>> = grouping
                .blocks()
                .iter()
                .map(|g| {
                    let mut u: Vec<usize> =
                        g.iter().flat_map(|&bi| blocks[bi - 1].iter().copied()).collect();
                    u.sort_unstable();
                    u
                })
                .collect();
            SetPartition::new(pi.n(), merged).expect("merged blocks partition [n]")
        })
        .collect()
}

fn next_index_permutation(perm: &mut [usize]) -> bool {
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

fn expand_monomial_words(
    pi: &SetPartition,
    c: usize,
    colors: &mut Vec<usize>,
    used: &mut [bool],
    coef: &BigInt,
    out: &mut BTreeMap<Vec<usize>, BigInt>,
) {
    let l = pi.num_blocks();
    if colors.len() == l {
        let mut word = vec![0usize; pi.n()];
        for (bi, b) in pi.blocks().iter().enumerate() {
            for &e in b {
                word[e - 1] = colors[bi];
            }
        }
        add_into(out, word, coef.clone());
        return;
    }
    for color in 1..=c {
        if !used[color] {
            used[color] = true;
            colors.push(color);
            expand_monomial_words(pi, c, colors, used, coef, out);
            colors.pop();
            used[color] = false;
        }
    }
}

impl NcQSymExpr {
    pub fn zero(n: usize) -> Self {
        NcQSymExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `M_Φ`.
    pub fn monomial(phi: SetComposition) -> Self {
        let n = phi.n();
        let mut terms = BTreeMap::new();
        terms.insert(phi, BigInt::one());
        NcQSymExpr { n, terms }
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (SetComposition, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (phi, c) in terms {
            if phi.n() != n {
                return Err(Error::DegreeMismatch(n, phi.n()));
            }
            add_into(&mut map, phi, c);
        }
        Ok(NcQSymExpr { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetComposition, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, phi: &SetComposition) -> BigInt {
        self.terms.get(phi).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &NcQSymExpr) -> Result<NcQSymExpr> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let mut terms = self.terms.clone();
        for (phi, c) in &other.terms {
            add_into(&mut terms, phi.clone(), c.clone());
        }
        Ok(NcQSymExpr { n: self.n, terms })
    }

    pub fn neg(&self) -> NcQSymExpr {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &NcQSymExpr) -> Result<NcQSymExpr> {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &BigInt) -> NcQSymExpr {
        let terms = if a.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(k, c)| (k.clone(), c * a)).collect()
        };
        NcQSymExpr { n: self.n, terms }
    }

    /// Index-wise induction: `M_Φ ↑ = M_{Φ↑}`.
    pub fn induct(&self, r: &[usize]) -> Result<NcQSymExpr> {
        if r.len() > self.n {
            return Err(Error::InductionTooLong {
                len: r.len(),
                n: self.n,
            });
        }
        let mut terms = BTreeMap::new();
        for (phi, c) in &self.terms {
            add_into(&mut terms, phi.induct(r)?, c.clone());
        }
        Ok(NcQSymExpr {
            n: self.n + r.iter().sum::<usize>(),
            terms,
        })
    }

    /// `M_Φ ↦ C(k, ℓ)` with `ℓ` the block count.
    pub fn eval_principal(&self, k: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (phi, c) in &self.terms {
            acc += c * binomial(k, phi.num_blocks());
        }
        acc
    }

    /// Words constant on blocks with colors strictly increasing along the
    /// block order, truncated to colors `≤ c`.
    pub fn expand_truncated(&self, c: usize) -> TruncatedExpansion {
        let mut out = TruncatedExpansion::zero(self.n, c);
        for (phi, coef) in &self.terms {
            let l = phi.num_blocks();
            let mut colors = Vec::with_capacity(l);
            expand_increasing_words(phi, c, 1, &mut colors, coef, &mut out.terms);
        }
        out
    }

    /// Parses the one-term-per-line `<signed int> M[<composition>]` format.
    pub fn parse(text: &str) -> Result<NcQSymExpr> {
        let mut n: Option<usize> = None;
        let mut terms: Vec<(SetComposition, BigInt)> = Vec::new();
        for (coef, letter, key) in parse_term_lines(text)? {
            if letter != 'M' {
                return Err(Error::syntax(0, format!("unknown NCQSym basis '{letter}'")));
            }
            let phi = SetComposition::parse(&key)?;
            if let Some(n0) = n {
                if phi.n() != n0 {
                    return Err(Error::DegreeMismatch(n0, phi.n()));
                }
            } else {
                n = Some(phi.n());
            }
            terms.push((phi, coef));
        }
        let n = n.ok_or_else(|| Error::syntax(0, "empty expression"))?;
        NcQSymExpr::from_terms(n, terms)
    }
}

fn expand_increasing_words(
    phi: &SetComposition,
    c: usize,
    min_color: usize,
    colors: &mut Vec<usize>,
    coef: &BigInt,
    out: &mut BTreeMap<Vec<usize>, BigInt>,
) {
    let l = phi.num_blocks();
    if colors.len() == l {
        let mut word = vec![0usize; phi.n()];
        for (bi, b) in phi.blocks().iter().enumerate() {
            for &e in b {
                word[e - 1] = colors[bi];
            }
        }
        add_into(out, word, coef.clone());
        return;
    }
    for color in min_color..=c {
        colors.push(color);
        expand_increasing_words(phi, c, color + 1, colors, coef, out);
        colors.pop();
    }
}

impl SymExpr {
    pub fn zero(n: usize) -> Self {
        SymExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The powersum basis element `p_λ`.
    pub fn powersum(lambda: IntegerPartition) -> Self {
        let n = lambda.sum();
        let mut terms = BTreeMap::new();
        terms.insert(lambda, BigInt::one());
        SymExpr { n, terms }
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (IntegerPartition, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (l, c) in terms {
            if l.sum() != n {
                return Err(Error::DegreeMismatch(n, l.sum()));
            }
            add_into(&mut map, l, c);
        }
        Ok(SymExpr { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntegerPartition, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &IntegerPartition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &SymExpr) -> Result<SymExpr> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let mut terms = self.terms.clone();
        for (l, c) in &other.terms {
            add_into(&mut terms, l.clone(), c.clone());
        }
        Ok(SymExpr { n: self.n, terms })
    }

    pub fn neg(&self) -> SymExpr {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &SymExpr) -> Result<SymExpr> {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &BigInt) -> SymExpr {
        let terms = if a.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(k, c)| (k.clone(), c * a)).collect()
        };
        SymExpr { n: self.n, terms }
    }

    /// Point evaluation `p_λ ↦ t^{len λ}`.
    pub fn eval(&self, t: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (l, c) in &self.terms {
            acc += c * int_pow(t, l.len());
        }
        acc
    }
}

impl TruncatedExpansion {
    pub fn zero(n: usize, colors: usize) -> Self {
        TruncatedExpansion {
            n,
            colors,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        colors: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if w.len() != n {
                return Err(Error::DegreeMismatch(n, w.len()));
            }
            if w.iter().any(|&l| l == 0 || l > colors) {
                return Err(Error::InvalidStructure(format!(
                    "word letter out of 1..={colors}"
                )));
            }
            add_into(&mut map, w, c);
        }
        Ok(TruncatedExpansion {
            n,
            colors,
            terms: map,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[usize]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients (the value under `y_i = 1` for `i ≤ c`).
    pub fn total_mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Word-level induction: for the sequence `(r_0, ..., r_k)` the last
    /// letter is repeated `1+r_0` times, the next-to-last `1+r_1` times,
    /// and so on. This is the semantic counterpart of index induction and
    /// serves as its independent oracle.
    pub fn induct(&self, r: &[usize]) -> Result<TruncatedExpansion> {
        if r.len() > self.n {
            return Err(Error::InductionTooLong {
                len: r.len(),
                n: self.n,
            });
        }
        let m = r.len();
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut word = w[..self.n - m].to_vec();
            for (back, &letter) in w[self.n - m..].iter().enumerate() {
                let reps = 1 + r[m - 1 - back];
                word.extend(std::iter::repeat_n(letter, reps));
            }
            add_into(&mut terms, word, c.clone());
        }
        Ok(TruncatedExpansion {
            n: self.n + r.iter().sum::<usize>(),
            colors: self.colors,
            terms,
        })
    }
}

fn fmt_coef(f: &mut fmt::Formatter<'_>, c: &BigInt) -> fmt::Result {
    if c.is_negative() {
        write!(f, "{c}")
    } else {
        write!(f, "+{c}")
    }
}

impl fmt::Display for NcSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (pi, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            fmt_coef(f, c)?;
            write!(f, " {}[{}]", self.basis.letter(), pi)?;
        }
        Ok(())
    }
}

impl fmt::Display for NcQSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (phi, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            fmt_coef(f, c)?;
            write!(f, " M[{phi}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            fmt_coef(f, c)?;
            write!(f, " p[{l}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcSymExpr[deg {}] {{ {} }}", self.n, self.to_string().replace('\n', "  "))
    }
}

impl fmt::Debug for NcQSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcQSymExpr[deg {}] {{ {} }}", self.n, self.to_string().replace('\n', "  "))
    }
}

impl fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymExpr[deg {}] {{ {} }}", self.n, self.to_string().replace('\n', "  "))
    }
}

/// Splits expression text into `(coefficient, basis letter, key)` triples,
/// one term per line; blank lines are skipped.
fn parse_term_lines(text: &str) -> Result<Vec<(BigInt, char, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (coef_str, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::syntax(lineno, "expected '<coef> <basis>[<key>]'"))?;
        let coef: BigInt = coef_str
            .parse()
            .map_err(|_| Error::syntax(lineno, format!("bad coefficient '{coef_str}'")))?;
        let rest = rest.trim();
        let mut chars = rest.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::syntax(lineno, "missing basis letter"))?;
        let body = chars.as_str();
        if !body.starts_with('[') || !body.ends_with(']') {
            return Err(Error::syntax(lineno, "expected '[<key>]' after basis letter"));
        }
        out.push((coef, letter, body[1..body.len() - 1].to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(text: &str) -> SetPartition {
        SetPartition::parse(text).unwrap()
    }

    fn sc(text: &str) -> SetComposition {
        SetComposition::parse(text).unwrap()
    }

    /// Direct powersum word semantics: constant on blocks, no distinctness
    /// requirement. Independent of the `p_to_m` conversion path.
    fn powersum_words_direct(pi: &SetPartition, c: usize) -> TruncatedExpansion {
        let l = pi.num_blocks();
        let mut out = TruncatedExpansion::zero(pi.n(), c);
        if c == 0 {
            return out;
        }
        let mut colors = vec![1usize; l];
        loop {
            let mut word = vec![0usize; pi.n()];
            for (bi, b) in pi.blocks().iter().enumerate() {
                for &e in b {
                    word[e - 1] = colors[bi];
                }
            }
            add_into(&mut out.terms, word, BigInt::one());
            // odometer over [1..c]^l
            let mut i = l;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if colors[i] < c {
                    colors[i] += 1;
                    for v in colors[i + 1..].iter_mut() {
                        *v = 1;
                    }
                    break;
                }
            }
            if c == 0 {
                return out;
            }
        }
    }

    #[test]
    fn p_to_m_paper_example() {
        // p_{12/3} = m_{12/3} + m_{123}
        let p = NcSymExpr::powersum(sp("12|3"));
        let m = p.p_to_m().unwrap();
        assert_eq!(m.coefficient(&sp("12|3")), BigInt::one());
        assert_eq!(m.coefficient(&sp("123")), BigInt::one());
        assert_eq!(m.num_terms(), 2);
    }

    #[test]
    fn p_to_m_extremes() {
        let bottom = NcSymExpr::powersum(SetPartition::discrete(3)).p_to_m().unwrap();
        assert_eq!(bottom.num_terms(), 5);
        assert!(bottom.terms().all(|(_, c)| c.is_one()));
        let top = NcSymExpr::powersum(sp("123")).p_to_m().unwrap();
        assert_eq!(top, NcSymExpr::monomial(sp("123")));
        assert!(NcSymExpr::monomial(sp("12|3")).p_to_m().is_err());
    }

    #[test]
    fn to_ncqsym_examples() {
        // m_{12/3} = M_{(12,3)} + M_{(3,12)}
        let q = NcSymExpr::monomial(sp("12|3")).to_ncqsym().unwrap();
        assert_eq!(q.coefficient(&sc("(12,3)")), BigInt::one());
        assert_eq!(q.coefficient(&sc("(3,12)")), BigInt::one());
        assert_eq!(q.num_terms(), 2);

        let single = NcSymExpr::monomial(sp("123")).to_ncqsym().unwrap();
        assert_eq!(single, NcQSymExpr::monomial(sc("(123)")));

        let six = NcSymExpr::monomial(sp("1|2|3")).to_ncqsym().unwrap();
        assert_eq!(six.num_terms(), 6);
        assert!(NcSymExpr::powersum(sp("12|3")).to_ncqsym().is_err());
    }

    #[test]
    fn induct_examples() {
        // M_{(1,2)}↑^{(2,1)} = M_{(12,345)}
        let e = NcQSymExpr::monomial(sc("(1,2)")).induct(&[2, 1]).unwrap();
        assert_eq!(e, NcQSymExpr::monomial(sc("(12,345)")));
        let m = NcSymExpr::monomial(sp("1|2")).induct(&[1, 1]).unwrap();
        assert_eq!(m, NcSymExpr::monomial(sp("12|34")));
        let fixed = NcSymExpr::powersum(sp("12|3"));
        assert_eq!(fixed.induct(&[]).unwrap(), fixed);
    }

    #[test]
    fn permute_examples() {
        let m = NcSymExpr::monomial(sp("12|3"));
        assert_eq!(m.permute(&Permutation::identity(3)).unwrap(), m);
        let swap23 = Permutation::new(vec![1, 3, 2]).unwrap();
        assert_eq!(m.permute(&swap23).unwrap(), NcSymExpr::monomial(sp("13|2")));
        let p = NcSymExpr::powersum(sp("1234"));
        let d = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(p.permute(&d).unwrap(), p);
    }

    #[test]
    fn commutative_image_examples() {
        let e = NcSymExpr::powersum(sp("12|34"))
            .sub(&NcSymExpr::powersum(sp("13|24")))
            .unwrap();
        assert!(e.commutative_image().unwrap().is_zero());

        // shape-collecting p_{1/2/3/4} - p_{12/34} - p_{13/24} + p_{1234}
        let y = NcSymExpr::from_terms(
            4,
            NcBasis::Powersum,
            vec![
                (SetPartition::discrete(4), BigInt::one()),
                (sp("12|34"), BigInt::from(-1)),
                (sp("13|24"), BigInt::from(-1)),
                (sp("1234"), BigInt::one()),
            ],
        )
        .unwrap();
        let x = y.commutative_image().unwrap();
        assert_eq!(x.coefficient(&IntegerPartition::ones(4)), BigInt::one());
        assert_eq!(
            x.coefficient(&IntegerPartition::new(vec![2, 2]).unwrap()),
            BigInt::from(-2)
        );
        assert_eq!(
            x.coefficient(&IntegerPartition::new(vec![4]).unwrap()),
            BigInt::one()
        );
        assert!(NcSymExpr::zero(3, NcBasis::Powersum)
            .commutative_image()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn expand_truncated_examples() {
        // m_{12/3} at c = 2: words 112 and 221
        let e = NcSymExpr::monomial(sp("12|3")).expand_truncated(2);
        assert_eq!(e.coefficient(&[1, 1, 2]), BigInt::one());
        assert_eq!(e.coefficient(&[2, 2, 1]), BigInt::one());
        assert_eq!(e.terms().count(), 2);

        // M_{(3,12)} at c = 2: only 221
        let q = NcQSymExpr::monomial(sc("(3,12)")).expand_truncated(2);
        assert_eq!(q.coefficient(&[2, 2, 1]), BigInt::one());
        assert_eq!(q.terms().count(), 1);

        // homogeneity
        let any = NcSymExpr::powersum(sp("12|3")).expand_truncated(3);
        assert!(any.terms().all(|(w, _)| w.len() == 3));
    }

    #[test]
    fn eval_principal_examples() {
        let p = NcSymExpr::powersum(sp("12|3"));
        // oracle: total mass of the truncated expansion
        assert_eq!(p.eval_principal(2), p.expand_truncated(2).total_mass());
        assert_eq!(p.eval_principal(2), BigInt::from(4));
        let m = NcSymExpr::monomial(sp("12|3"));
        assert_eq!(m.eval_principal(2), m.expand_truncated(2).total_mass());
        assert_eq!(m.eval_principal(2), BigInt::from(2));
        assert_eq!(NcSymExpr::zero(3, NcBasis::Monomial).eval_principal(4), BigInt::zero());
    }

    #[test]
    fn eval_principal_matches_expansion_mass_small() {
        for n in 1..=5 {
            for pi in enumerate_set_partitions(n) {
                for k in 0..=4 {
                    let m = NcSymExpr::monomial(pi.clone());
                    assert_eq!(m.eval_principal(k), m.expand_truncated(k).total_mass());
                    let p = NcSymExpr::powersum(pi.clone());
                    assert_eq!(p.eval_principal(k), p.expand_truncated(k).total_mass());
                }
            }
        }
        for n in 1..=4 {
            for phi in crate::setpart::enumerate_set_compositions(n) {
                let e = NcQSymExpr::monomial(phi);
                for k in 0..=4 {
                    assert_eq!(e.eval_principal(k), e.expand_truncated(k).total_mass());
                }
            }
        }
    }

    #[test]
    fn powersum_expansion_matches_direct_semantics() {
        for n in 1..=5 {
            for pi in enumerate_set_partitions(n) {
                for c in 0..=4 {
                    let via_m = NcSymExpr::powersum(pi.clone()).expand_truncated(c);
                    let direct = powersum_words_direct(&pi, c);
                    assert_eq!(via_m, direct, "p_{{{pi}}} at c={c}");
                }
            }
        }
    }

    #[test]
    fn ncqsym_induction_commutes_with_expansion_small() {
        // Word-level check of M_Φ↑ = M_{Φ↑} for a few sequences; the
        // exhaustive version is in the acceptance suite.
        let seqs: &[&[usize]] = &[&[1], &[2], &[1, 1]];
        for n in 1..=4 {
            for phi in crate::setpart::enumerate_set_compositions(n) {
                for &r in seqs {
                    if r.len() > n {
                        continue;
                    }
                    let e = NcQSymExpr::monomial(phi.clone());
                    for c in 1..=3 {
                        assert_eq!(
                            e.expand_truncated(c).induct(r).unwrap(),
                            e.induct(r).unwrap().expand_truncated(c)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ncqsym_image_is_symmetric() {
        // membership criterion: coefficients constant across block reorderings
        for pi in enumerate_set_partitions(4) {
            let q = NcSymExpr::monomial(pi).to_ncqsym().unwrap();
            for (phi, c) in q.terms() {
                let reordered = phi.forget_order();
                for other in q.terms().filter(|(o, _)| o.forget_order() == reordered) {
                    assert_eq!(c, other.1);
                }
            }
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let text = "+1 p[1|2|3|4]\n-1 p[12|34]\n-1 p[13|24]\n+1 p[1234]";
        let e = NcSymExpr::parse(text).unwrap();
        assert_eq!(e.to_string(), text);
        let q = NcQSymExpr::parse("+1 M[(12)]\n+1 M[(1,2)]").unwrap();
        assert_eq!(q.to_string(), "+1 M[(12)]\n+1 M[(1,2)]");
        assert!(NcSymExpr::parse("+1 m[12]\n+1 p[12]").is_err());
        assert!(NcSymExpr::parse("+1 m[12]\n+1 m[123]").is_err());
        assert!(NcSymExpr::parse("").is_err());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = SetPartition> {
        prop::collection::vec(0..n, n).prop_map(|assign| SetPartition::from_assignment(&assign))
    }

    fn arb_expr(n: usize, basis: NcBasis) -> impl Strategy<Value = NcSymExpr> {
        prop::collection::vec((arb_partition(n), -4i64..=4), 1..4).prop_map(move |terms| {
            NcSymExpr::from_terms(
                n,
                basis,
                terms.into_iter().map(|(pi, c)| (pi, BigInt::from(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn linear_maps_are_linear(e1 in arb_expr(4, NcBasis::Powersum),
                                  e2 in arb_expr(4, NcBasis::Powersum),
                                  a in -3i64..=3) {
            let a = BigInt::from(a);
            let combo = e1.scale(&a).add(&e2).unwrap();
            // p_to_m
            prop_assert_eq!(
                combo.p_to_m().unwrap(),
                e1.p_to_m().unwrap().scale(&a).add(&e2.p_to_m().unwrap()).unwrap()
            );
            // induct
            prop_assert_eq!(
                combo.induct(&[1, 1]).unwrap(),
                e1.induct(&[1, 1]).unwrap().scale(&a).add(&e2.induct(&[1, 1]).unwrap()).unwrap()
            );
            // permute
            let d = Permutation::new(vec![2, 4, 1, 3]).unwrap();
            prop_assert_eq!(
                combo.permute(&d).unwrap(),
                e1.permute(&d).unwrap().scale(&a).add(&e2.permute(&d).unwrap()).unwrap()
            );
            // commutative image
            prop_assert_eq!(
                combo.commutative_image().unwrap(),
                e1.commutative_image().unwrap().scale(&a)
                    .add(&e2.commutative_image().unwrap()).unwrap()
            );
            // basis conversion into NCQSym
            let m1 = e1.p_to_m().unwrap();
            let m2 = e2.p_to_m().unwrap();
            prop_assert_eq!(
                m1.scale(&a).add(&m2).unwrap().to_ncqsym().unwrap(),
                m1.to_ncqsym().unwrap().scale(&a).add(&m2.to_ncqsym().unwrap()).unwrap()
            );
        }

        #[test]
        fn equality_is_basis_independent(e in arb_expr(4, NcBasis::Powersum)) {
            let m = e.p_to_m().unwrap();
            prop_assert_eq!(&m, &e);
            prop_assert_eq!(&e, &m);
        }
    }
}
