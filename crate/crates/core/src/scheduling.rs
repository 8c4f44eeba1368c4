//! The scheduling-problem DSL: boolean formulas over the atoms
//! `(x_i <= x_j)`, solution enumeration into NCQSym, edge-like and
//! graph-like recognition, the plurigraph correspondence, formula
//! contraction `↓`, and the scheduling deletion-contraction law.
//!
//! The derived atoms `<`, `=`, `!=` are kept as first-class macro nodes so
//! that edge-like recognition stays syntactic; evaluation agrees with
//! their expansions (`(x_i < x_j) = !(x_j <= x_i)` and so on).
//!
//! Grammar: atoms `x<int> <op> x<int>` with op in `<=`, `<`, `=`, `!=`;
//! connectives `&`, `|`, `!`; parentheses; `true` / `false` literals;
//! precedence `!` > `&` > `|`; whitespace insensitive.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::ncalg::NcQSymExpr;
use crate::plurigraph::{Coloring, Pluriedge, Plurigraph};
use crate::setpart::{enumerate_set_compositions, SetComposition, UnionFind};
use crate::{Error, Result};

/// One node of the boolean AST. Variable indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    True,
    False,
    Le(usize, usize),
    Lt(usize, usize),
    Eq(usize, usize),
    Ne(usize, usize),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

/// A scheduling problem: a boolean formula together with an explicit
/// element count `n` (variables may be unmentioned).
#[derive(Clone, PartialEq, Eq)]
pub struct Formula {
    n: usize,
    expr: Expr,
}

/// The ordered `∼_C` equivalence classes of an edge-like clause, listed in
/// the forced decreasing order when one exists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimClasses {
    classes: Vec<Vec<usize>>,
}

impl SimClasses {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `r_i = |O_i| - 1` along the class order; zero entries (singleton
    /// classes) are kept, acting as position-advancing identities under
    /// induction and contraction.
    pub fn r_sequence(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len() - 1).collect()
    }
}

impl Expr {
    /// Variables appearing in the formula.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::True | Expr::False => {}
            Expr::Le(i, j) | Expr::Lt(i, j) | Expr::Eq(i, j) | Expr::Ne(i, j) => {
                out.insert(*i);
                out.insert(*j);
            }
            Expr::Not(c) => c.collect_variables(out),
            Expr::And(cs) | Expr::Or(cs) => {
                for c in cs {
                    c.collect_variables(out);
                }
            }
        }
    }

    fn eval(&self, f: &[usize]) -> bool {
        match self {
            Expr::True => true,
            Expr::False => false,
            Expr::Le(i, j) => f[i - 1] <= f[j - 1],
            Expr::Lt(i, j) => f[i - 1] < f[j - 1],
            Expr::Eq(i, j) => f[i - 1] == f[j - 1],
            Expr::Ne(i, j) => f[i - 1] != f[j - 1],
            Expr::Not(c) => !c.eval(f),
            Expr::And(cs) => cs.iter().all(|c| c.eval(f)),
            Expr::Or(cs) => cs.iter().any(|c| c.eval(f)),
        }
    }

    fn map_indices(&self, map: &impl Fn(usize) -> usize) -> Expr {
        match self {
            Expr::True => Expr::True,
            Expr::False => Expr::False,
            Expr::Le(i, j) => Expr::Le(map(*i), map(*j)),
            Expr::Lt(i, j) => Expr::Lt(map(*i), map(*j)),
            Expr::Eq(i, j) => Expr::Eq(map(*i), map(*j)),
            Expr::Ne(i, j) => Expr::Ne(map(*i), map(*j)),
            Expr::Not(c) => Expr::Not(Box::new(c.map_indices(map))),
            Expr::And(cs) => Expr::And(cs.iter().map(|c| c.map_indices(map)).collect()),
            Expr::Or(cs) => Expr::Or(cs.iter().map(|c| c.map_indices(map)).collect()),
        }
    }

    /// Tautology folding: `(x_i <= x_i) -> true`, `(x_i != x_i) -> false`,
    /// then boolean constant propagation with singleton unwrapping. No
    /// equivalence reasoning beyond constants.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Le(i, j) if i == j => Expr::True,
            Expr::Lt(i, j) if i == j => Expr::False,
            Expr::Eq(i, j) if i == j => Expr::True,
            Expr::Ne(i, j) if i == j => Expr::False,
            Expr::True | Expr::False | Expr::Le(..) | Expr::Lt(..) | Expr::Eq(..)
            | Expr::Ne(..) => self.clone(),
            Expr::Not(c) => match c.simplify() {
                Expr::True => Expr::False,
                Expr::False => Expr::True,
                other => Expr::Not(Box::new(other)),
            },
            Expr::And(cs) => {
                let mut kept = Vec::new();
                for c in cs {
                    match c.simplify() {
                        Expr::True => {}
                        Expr::False => return Expr::False,
                        other => kept.push(other),
                    }
                }
                match kept.len() {
                    0 => Expr::True,
                    1 => kept.pop().expect("len checked"),
                    _ => Expr::And(kept),
                }
            }
            Expr::Or(cs) => {
                let mut kept = Vec::new();
                for c in cs {
                    match c.simplify() {
                        Expr::False => {}
                        Expr::True => return Expr::True,
                        other => kept.push(other),
                    }
                }
                match kept.len() {
                    0 => Expr::False,
                    1 => kept.pop().expect("len checked"),
                    _ => Expr::Or(kept),
                }
            }
        }
    }

    /// Replaces macro atoms by their defining expansions over `<=`.
    pub fn expand_macros(&self) -> Expr {
        match self {
            Expr::Lt(i, j) => Expr::Not(Box::new(Expr::Le(*j, *i))),
            Expr::Eq(i, j) => Expr::And(vec![Expr::Le(*i, *j), Expr::Le(*j, *i)]),
            Expr::Ne(i, j) => Expr::Not(Box::new(Expr::Eq(*i, *j).expand_macros())),
            Expr::True | Expr::False | Expr::Le(..) => self.clone(),
            Expr::Not(c) => Expr::Not(Box::new(c.expand_macros())),
            Expr::And(cs) => Expr::And(cs.iter().map(Expr::expand_macros).collect()),
            Expr::Or(cs) => Expr::Or(cs.iter().map(Expr::expand_macros).collect()),
        }
    }
}

impl Formula {
    /// Wraps an AST with its element count, checking variable bounds.
    pub fn from_expr(n: usize, expr: Expr) -> Result<Formula> {
        if let Some(&max) = expr.variables().iter().next_back() {
            if max > n {
                return Err(Error::FormulaShape(format!(
                    "variable x{max} exceeds element count {n}"
                )));
            }
        }
        Ok(Formula { n, expr })
    }

    /// Parses the DSL text for a problem on `n` elements.
    pub fn parse(text: &str, n: usize) -> Result<Formula> {
        let tokens = lex(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.parse_or()?;
        if parser.pos < parser.tokens.len() {
            let (pos, _) = parser.tokens[parser.pos];
            return Err(Error::syntax(pos, "trailing input"));
        }
        Formula::from_expr(n, expr)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Truth value with `x_i = f(i)`.
    pub fn evaluate(&self, f: &Coloring) -> Result<bool> {
        if f.n() != self.n {
            return Err(Error::PartialColoring {
                expected: self.n,
                got: f.n(),
            });
        }
        Ok(self.expr.eval(f.colors()))
    }

    /// Whether the composition solves the problem via its block-index map.
    pub fn solves(&self, phi: &SetComposition) -> Result<bool> {
        if phi.n() != self.n {
            return Err(Error::GroundSetMismatch(self.n, phi.n()));
        }
        let f: Vec<usize> = phi.assignment().iter().map(|&b| b + 1).collect();
        Ok(self.expr.eval(&f))
    }

    /// `Ŝ_S = Σ M_Φ` over the set compositions of `[n]` solving `S`.
    pub fn scheduling_ncqsym(&self) -> NcQSymExpr {
        let mut terms = Vec::new();
        for phi in enumerate_set_compositions(self.n) {
            let f: Vec<usize> = phi.assignment().iter().map(|&b| b + 1).collect();
            if self.expr.eval(&f) {
                terms.push((phi, BigInt::one()));
            }
        }
        NcQSymExpr::from_terms(self.n, terms).expect("homogeneous terms")
    }

    /// The clause list when the formula is graph-like, `None` otherwise.
    pub fn graph_like_clauses(&self) -> Option<Vec<Vec<(usize, usize)>>> {
        graph_like_clauses(&self.expr)
    }

    /// The plurigraph whose proper colorings are the solutions of a
    /// graph-like problem: one pluriedge per clause, edges `jk` for the
    /// clause's nonequality pairs `(j,k)`.
    pub fn to_plurigraph(&self) -> Result<Plurigraph> {
        let clauses = self
            .graph_like_clauses()
            .ok_or_else(|| Error::FormulaShape("formula is not graph-like".into()))?;
        let pluriedges = clauses
            .into_iter()
            .map(|pairs| Pluriedge::new(self.n, pairs))
            .collect::<Result<Vec<_>>>()?;
        Plurigraph::new(self.n, pluriedges)
    }

    /// Contraction `↓` by a sequence, followed by tautology folding.
    pub fn contract(&self, r: &[usize]) -> Result<Formula> {
        let mut expr = self.expr.clone();
        let mut n = self.n;
        let mut t = 0usize;
        for &s in r {
            if t + s + 1 > n {
                return Err(Error::InvalidSequence(format!(
                    "step ({s},{t}) does not fit {n} elements"
                )));
            }
            let hi = n - t;
            let lo = n - t - s;
            expr = expr.map_indices(&|i| {
                if i <= lo {
                    i
                } else if i <= hi {
                    lo
                } else {
                    i - s
                }
            });
            n -= s;
            t += 1;
        }
        Ok(Formula {
            n,
            expr: expr.simplify(),
        })
    }
}

/// The nonequality pairs of an edge-like clause (a disjunction, possibly
/// unary or nested, of `!=` atoms), or `None` if the clause has any other
/// shape. Recognition is syntactic on the macro-preserving AST.
pub fn edge_like_pairs(clause: &Expr) -> Option<Vec<(usize, usize)>> {
    fn walk(e: &Expr, out: &mut Vec<(usize, usize)>) -> bool {
        match e {
            Expr::Ne(i, j) => {
                out.push((*i, *j));
                true
            }
            Expr::Or(cs) => cs.iter().all(|c| walk(c, out)),
            _ => false,
        }
    }
    let mut pairs = Vec::new();
    if walk(clause, &mut pairs) && !pairs.is_empty() {
        Some(pairs)
    } else {
        None
    }
}

/// The per-clause pair lists of a graph-like formula (a conjunction,
/// possibly unary or nested, of edge-like clauses), or `None`. `true` is
/// the empty conjunction.
pub fn graph_like_clauses(expr: &Expr) -> Option<Vec<Vec<(usize, usize)>>> {
    match expr {
        Expr::True => Some(Vec::new()),
        Expr::And(cs) => {
            let mut clauses = Vec::new();
            for c in cs {
                clauses.extend(graph_like_clauses(c)?);
            }
            Some(clauses)
        }
        other => edge_like_pairs(other).map(|pairs| vec![pairs]),
    }
}

/// The scheduling problem of properly coloring `G`: one edge-like clause
/// per pluriedge. An edgeless plurigraph yields `true`.
pub fn from_plurigraph(g: &Plurigraph) -> Formula {
    let mut clauses: Vec<Expr> = Vec::new();
    for pe in g.pluriedges() {
        let atoms: Vec<Expr> = pe.edges().iter().map(|&(u, v)| Expr::Ne(u, v)).collect();
        clauses.push(if atoms.len() == 1 {
            atoms.into_iter().next().expect("len checked")
        } else {
            Expr::Or(atoms)
        });
    }
    let expr = match clauses.len() {
        0 => Expr::True,
        1 => clauses.pop().expect("len checked"),
        _ => Expr::And(clauses),
    };
    Formula { n: g.n(), expr }
}

/// The `∼_C` equivalence classes of an edge-like clause: the reflexive
/// transitive closure of the pairs whose equalities appear in `¬C`.
/// Classes are listed by descending minimum element.
pub fn sim_classes(clause: &Expr) -> Result<SimClasses> {
    let pairs = edge_like_pairs(clause)
        .ok_or_else(|| Error::FormulaShape("clause is not edge-like".into()))?;
    let vars: Vec<usize> = clause.variables().into_iter().collect();
    let index = |v: usize| vars.binary_search(&v).expect("variable present");
    let mut uf = UnionFind::new(vars.len());
    for (i, j) in &pairs {
        uf.union(index(*i), index(*j));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = std::collections::HashMap::new();
    for (k, &v) in vars.iter().enumerate() {
        let root = uf.find(k);
        let slot = *root_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(v);
    }
    classes.sort_by(|a, b| b[0].cmp(&a[0]));
    Ok(SimClasses { classes })
}

/// Checks the contractible-clause conditions for `C` inside a problem on
/// `n` elements: edge-like, `V(C)` a top interval `{n-s..n}` with `s > 0`,
/// and the classes orderable strictly decreasing. Returns the ordered
/// classes and the `r` sequence.
pub fn contractible_clause(clause: &Expr, n: usize) -> Option<(SimClasses, Vec<usize>)> {
    edge_like_pairs(clause)?;
    let vars = clause.variables();
    let &max = vars.iter().next_back()?;
    let &min = vars.iter().next()?;
    if max != n || vars.len() < 2 || vars.len() != max - min + 1 {
        return None;
    }
    let sim = sim_classes(clause).ok()?;
    for w in sim.classes.windows(2) {
        if w[0][0] <= *w[1].last().expect("nonempty class") {
            return None;
        }
    }
    let r = sim.r_sequence();
    Some((sim, r))
}

/// Deletion-contraction evaluation of `Ŝ_{S' ∧ C}` for a contractible clause `C`:
/// `Ŝ_{S'} - (Ŝ_{S'↓_{(r...)}})↑^{(r...)}`, both sides by enumeration.
pub fn delcon_ncqsym(s_prime: &Formula, clause: &Expr) -> Result<NcQSymExpr> {
    let n = s_prime.n();
    if let Some(&max) = clause.variables().iter().next_back() {
        if max > n {
            return Err(Error::FormulaShape(format!(
                "clause variable x{max} exceeds element count {n}"
            )));
        }
    }
    let (_classes, r) = contractible_clause(clause, n)
        .ok_or_else(|| Error::FormulaShape("clause is not contractible".into()))?;
    let whole = s_prime.scheduling_ncqsym();
    let contracted = s_prime.contract(&r)?.scheduling_ncqsym().induct(&r)?;
    whole.sub(&contracted)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::True => write!(f, "true"),
            Expr::False => write!(f, "false"),
            Expr::Le(i, j) => write!(f, "(x{i} <= x{j})"),
            Expr::Lt(i, j) => write!(f, "(x{i} < x{j})"),
            Expr::Eq(i, j) => write!(f, "(x{i} = x{j})"),
            Expr::Ne(i, j) => write!(f, "(x{i} != x{j})"),
            Expr::Not(c) => match **c {
                Expr::And(_) | Expr::Or(_) => write!(f, "!({c})"),
                _ => write!(f, "!{c}"),
            },
            Expr::And(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " & ")?;
                    }
                    match c {
                        Expr::Or(_) => write!(f, "({c})")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                Ok(())
            }
            Expr::Or(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula[n={}]({})", self.n, self.expr)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LParen,
    RParen,
    AndOp,
    OrOp,
    NotOp,
    Var(usize),
    OpLe,
    OpLt,
    OpEq,
    OpNe,
    LitTrue,
    LitFalse,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < chars.len() {
        let c = chars[pos];
        let start = pos;
        match c {
            _ if c.is_whitespace() => pos += 1,
            '(' => {
                out.push((start, Token::LParen));
                pos += 1;
            }
            ')' => {
                out.push((start, Token::RParen));
                pos += 1;
            }
            '&' => {
                out.push((start, Token::AndOp));
                pos += 1;
            }
            '|' => {
                out.push((start, Token::OrOp));
                pos += 1;
            }
            '!' => {
                if pos + 1 < chars.len() && chars[pos + 1] == '=' {
                    out.push((start, Token::OpNe));
                    pos += 2;
                } else {
                    out.push((start, Token::NotOp));
                    pos += 1;
                }
            }
            '<' => {
                if pos + 1 < chars.len() && chars[pos + 1] == '=' {
                    out.push((start, Token::OpLe));
                    pos += 2;
                } else {
                    out.push((start, Token::OpLt));
                    pos += 1;
                }
            }
            '=' => {
                out.push((start, Token::OpEq));
                pos += 1;
            }
            'x' => {
                pos += 1;
                let digits_start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == digits_start {
                    return Err(Error::syntax(start, "non-numeric variable"));
                }
                let idx: usize = chars[digits_start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::syntax(start, "bad variable index"))?;
                if idx == 0 {
                    return Err(Error::syntax(start, "variable index 0 is not allowed"));
                }
                out.push((start, Token::Var(idx)));
            }
            _ if c.is_alphabetic() => {
                let word_start = pos;
                while pos < chars.len() && chars[pos].is_alphabetic() {
                    pos += 1;
                }
                let word: String = chars[word_start..pos].iter().collect();
                match word.as_str() {
                    "true" => out.push((start, Token::LitTrue)),
                    "false" => out.push((start, Token::LitFalse)),
                    other => {
                        return Err(Error::syntax(start, format!("unknown word '{other}'")));
                    }
                }
            }
            other => {
                return Err(Error::syntax(start, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|(p, _)| *p)
            .unwrap_or(0)
    }

    fn parse_or(&mut self) -> Result<Expr> {
        let mut parts = vec![self.parse_and()?];
        while self.peek() == Some(&Token::OrOp) {
            self.pos += 1;
            parts.push(self.parse_and()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("len checked")
        } else {
            Expr::Or(parts)
        })
    }

    fn parse_and(&mut self) -> Result<Expr> {
        let mut parts = vec![self.parse_unary()?];
        while self.peek() == Some(&Token::AndOp) {
            self.pos += 1;
            parts.push(self.parse_unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("len checked")
        } else {
            Expr::And(parts)
        })
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::NotOp) {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.parse_unary()?)));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::syntax(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::LitTrue) => {
                self.pos += 1;
                Ok(Expr::True)
            }
            Some(Token::LitFalse) => {
                self.pos += 1;
                Ok(Expr::False)
            }
            Some(Token::Var(i)) => {
                self.pos += 1;
                let op = self.peek().cloned();
                self.pos += 1;
                let make = match op {
                    Some(Token::OpLe) => Expr::Le as fn(usize, usize) -> Expr,
                    Some(Token::OpLt) => Expr::Lt,
                    Some(Token::OpEq) => Expr::Eq,
                    Some(Token::OpNe) => Expr::Ne,
                    _ => return Err(Error::syntax(self.here(), "expected comparison operator")),
                };
                match self.peek().cloned() {
                    Some(Token::Var(j)) => {
                        self.pos += 1;
                        Ok(make(i, j))
                    }
                    _ => Err(Error::syntax(self.here(), "expected variable after operator")),
                }
            }
            _ => Err(Error::syntax(self.here(), "expected formula")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setpart::enumerate_set_partitions;

    fn parse(text: &str, n: usize) -> Formula {
        Formula::parse(text, n).unwrap()
    }

    fn sc(text: &str) -> SetComposition {
        SetComposition::parse(text).unwrap()
    }

    // running example: a chain of weak inequalities plus an edge-like clause
    fn s_prime() -> Formula {
        parse("(x1 <= x2) & (x2 <= x3) & (x3 <= x4)", 4)
    }

    fn clause_c() -> Expr {
        parse("(x1 != x2) | (x3 != x4)", 4).expr().clone()
    }

    #[test]
    fn parse_examples() {
        let f = parse("(x1 <= x2) & (x2 <= x3)", 3);
        assert_eq!(
            *f.expr(),
            Expr::And(vec![Expr::Le(1, 2), Expr::Le(2, 3)])
        );
        let g = parse("(x1 != x2) | (x3 != x4)", 4);
        assert_eq!(*g.expr(), Expr::Or(vec![Expr::Ne(1, 2), Expr::Ne(3, 4)]));
        assert!(Formula::parse("x1 <", 2).is_err());
        assert!(Formula::parse("x0 <= x1", 2).is_err());
        assert!(Formula::parse("y1 <= x1", 2).is_err());
        assert!(Formula::parse("x1 <= x5", 2).is_err());
        assert!(Formula::parse("(x1 <= x2", 2).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        for text in [
            "(x1 <= x2) & (x2 <= x3) & (x3 <= x4)",
            "(x1 != x2) | (x3 != x4)",
            "!(x1 = x2) & ((x1 < x3) | (x2 != x3))",
            "true",
            "!false",
        ] {
            let f = parse(text, 4);
            let round = parse(&f.to_string(), 4);
            assert_eq!(f, round, "round trip of {text}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let le = parse("x1 <= x2", 2);
        assert!(le.evaluate(&Coloring::new(vec![1, 2]).unwrap()).unwrap());
        assert!(!le.evaluate(&Coloring::new(vec![2, 1]).unwrap()).unwrap());

        let unsat = parse("x1 != x1", 1);
        for v in 1..=4 {
            assert!(!unsat.evaluate(&Coloring::new(vec![v]).unwrap()).unwrap());
        }

        assert!(s_prime()
            .evaluate(&Coloring::new(vec![1, 1, 2, 2]).unwrap())
            .unwrap());
    }

    #[test]
    fn macro_atoms_equal_their_expansions() {
        // exhaustive over n <= 4 variables and colorings with values <= 3
        let atoms = |n: usize| {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    out.push(Expr::Lt(i, j));
                    out.push(Expr::Eq(i, j));
                    out.push(Expr::Ne(i, j));
                }
            }
            out
        };
        for n in 1..=4usize {
            for e in atoms(n) {
                let expanded = e.expand_macros();
                for code in 0..3usize.pow(n as u32) {
                    let mut f = Vec::with_capacity(n);
                    let mut rest = code;
                    for _ in 0..n {
                        f.push(rest % 3 + 1);
                        rest /= 3;
                    }
                    assert_eq!(e.eval(&f), expanded.eval(&f), "{e} vs expansion at {f:?}");
                }
            }
        }
    }

    #[test]
    fn solves_examples() {
        let s = s_prime();
        assert!(s.solves(&sc("(1,2,34)")).unwrap());
        assert!(!s.solves(&sc("(4,3,2,1)")).unwrap());
        let t = Formula::from_expr(3, Expr::True).unwrap();
        assert!(t.solves(&sc("(3,12)")).unwrap());
        assert!(matches!(
            s.solves(&sc("(12,3)")),
            Err(crate::Error::GroundSetMismatch(4, 3))
        ));
    }

    #[test]
    fn scheduling_ncqsym_worked_example() {
        // Ŝ_{S'}: the eight weakly-increasing interval compositions
        let s1 = s_prime().scheduling_ncqsym();
        let expected = [
            "(1234)", "(1,234)", "(12,34)", "(123,4)", "(1,2,34)", "(1,23,4)", "(12,3,4)",
            "(1,2,3,4)",
        ];
        assert_eq!(s1.num_terms(), 8);
        for comp in expected {
            assert_eq!(s1.coefficient(&sc(comp)), BigInt::one(), "missing {comp}");
        }

        // Ŝ_{S''} = M_{(12)} + M_{(1,2)}
        let s2 = parse("x1 <= x2", 2).scheduling_ncqsym();
        assert_eq!(s2.num_terms(), 2);
        assert_eq!(s2.coefficient(&sc("(12)")), BigInt::one());
        assert_eq!(s2.coefficient(&sc("(1,2)")), BigInt::one());

        // Ŝ_{FALSE} = 0
        assert!(Formula::from_expr(3, Expr::False)
            .unwrap()
            .scheduling_ncqsym()
            .is_zero());
    }

    #[test]
    fn edge_like_examples() {
        assert_eq!(
            edge_like_pairs(&clause_c()),
            Some(vec![(1, 2), (3, 4)])
        );
        assert_eq!(edge_like_pairs(&Expr::Le(1, 2)), None);
        assert_eq!(edge_like_pairs(&Expr::Ne(2, 2)), Some(vec![(2, 2)]));
    }

    #[test]
    fn graph_like_and_plurigraph_correspondence() {
        // the oriented-coloring example formula
        let s = parse("(x1 != x2) & (x3 != x4) & ((x1 != x4) | (x3 != x2))", 4);
        let clauses = s.graph_like_clauses().unwrap();
        assert_eq!(clauses.len(), 3);
        let g = s.to_plurigraph().unwrap();
        let expected = Plurigraph::new(
            4,
            vec![
                Pluriedge::new(4, vec![(1, 2)]).unwrap(),
                Pluriedge::new(4, vec![(3, 4)]).unwrap(),
                Pluriedge::new(4, vec![(1, 4), (2, 3)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g, expected);

        // edgeless plurigraph <-> true
        let t = from_plurigraph(&Plurigraph::edgeless(3));
        assert_eq!(*t.expr(), Expr::True);
        assert_eq!(t.to_plurigraph().unwrap(), Plurigraph::edgeless(3));

        // round trip through the formula on canonical plurigraphs
        assert_eq!(from_plurigraph(&expected).to_plurigraph().unwrap(), expected);

        assert!(parse("x1 <= x2", 2).to_plurigraph().is_err());
    }

    #[test]
    fn sim_classes_examples() {
        let sim = sim_classes(&clause_c()).unwrap();
        assert_eq!(sim.classes(), &[vec![3, 4], vec![1, 2]]);

        let chained = parse("(x1 != x2) | (x2 != x3)", 3).expr().clone();
        assert_eq!(sim_classes(&chained).unwrap().classes(), &[vec![1, 2, 3]]);

        let reflexive = Expr::Ne(1, 1);
        assert_eq!(sim_classes(&reflexive).unwrap().classes(), &[vec![1]]);
        assert!(sim_classes(&Expr::Le(1, 2)).is_err());
    }

    #[test]
    fn contractible_clause_examples() {
        let (sim, r) = contractible_clause(&clause_c(), 4).unwrap();
        assert_eq!(sim.classes(), &[vec![3, 4], vec![1, 2]]);
        assert_eq!(r, vec![1, 1]);

        // {1,3} vs {2,4} are not orderable
        let skew = parse("(x1 != x3) | (x2 != x4)", 4).expr().clone();
        assert_eq!(contractible_clause(&skew, 4), None);

        // V(C) must be a top interval
        assert_eq!(contractible_clause(&clause_c(), 5), None);

        // single nonequality: one class {1,2}, r = (1)
        let single = parse("x1 != x2", 2).expr().clone();
        let (sim, r) = contractible_clause(&single, 2).unwrap();
        assert_eq!(sim.classes(), &[vec![1, 2]]);
        assert_eq!(r, vec![1]);

        // a singleton class from a loop atom keeps its zero entry
        let loopy = parse("(x4 != x4) | (x2 != x3)", 4).expr().clone();
        let (sim, r) = contractible_clause(&loopy, 4).unwrap();
        assert_eq!(sim.classes(), &[vec![4], vec![2, 3]]);
        assert_eq!(r, vec![0, 1]);
    }

    #[test]
    fn contract_formula_paper_examples() {
        // the five-variable example contracts to (x1 < x2)
        let f = parse(
            "((x1 <= x2) & (x1 < x3)) | ((x3 != x4) & (x4 <= x5))",
            5,
        );
        let c = f.contract(&[2, 1]).unwrap();
        assert_eq!(*c.expr(), Expr::Lt(1, 2));
        assert_eq!(c.n(), 2);

        // S'↓_{(1,1)} = (x1 <= x2)
        let c = s_prime().contract(&[1, 1]).unwrap();
        assert_eq!(*c.expr(), Expr::Le(1, 2));
        assert_eq!(c.n(), 2);

        let s = s_prime();
        assert_eq!(s.contract(&[]).unwrap(), s);
        assert!(s.contract(&[4]).is_err());
    }

    #[test]
    fn delcon_worked_example() {
        let result = delcon_ncqsym(&s_prime(), &clause_c()).unwrap();
        let expected = [
            "(1,234)", "(123,4)", "(1,2,34)", "(1,23,4)", "(12,3,4)", "(1,2,3,4)",
        ];
        assert_eq!(result.num_terms(), 6);
        for comp in expected {
            assert_eq!(result.coefficient(&sc(comp)), BigInt::one(), "missing {comp}");
        }
        // the Ŝ_{S''}↑^{(1,1)} intermediate
        let lifted = s_prime()
            .contract(&[1, 1])
            .unwrap()
            .scheduling_ncqsym()
            .induct(&[1, 1])
            .unwrap();
        assert_eq!(lifted.num_terms(), 2);
        assert_eq!(lifted.coefficient(&sc("(1234)")), BigInt::one());
        assert_eq!(lifted.coefficient(&sc("(12,34)")), BigInt::one());

        // agrees with direct enumeration of S' ∧ C
        let s = Formula::from_expr(
            4,
            Expr::And(vec![s_prime().expr().clone(), clause_c()]),
        )
        .unwrap();
        assert_eq!(result, s.scheduling_ncqsym());
    }

    #[test]
    fn delcon_single_edge() {
        let t = Formula::from_expr(2, Expr::True).unwrap();
        let result = delcon_ncqsym(&t, &Expr::Ne(1, 2)).unwrap();
        assert_eq!(result.num_terms(), 2);
        assert_eq!(result.coefficient(&sc("(1,2)")), BigInt::one());
        assert_eq!(result.coefficient(&sc("(2,1)")), BigInt::one());
        assert!(delcon_ncqsym(&t, &Expr::Le(1, 2)).is_err());
    }

    #[test]
    fn delcon_handles_zero_entries() {
        // C = (x4 != x4) | (x2 != x3): classes ({4},{2,3}), r = (0,1).
        // Dropping the leading zero would contract the wrong positions.
        let s_pr = parse("(x1 <= x2) & (x2 <= x4)", 4);
        let clause = parse("(x4 != x4) | (x2 != x3)", 4).expr().clone();
        let result = delcon_ncqsym(&s_pr, &clause).unwrap();
        let direct = Formula::from_expr(
            4,
            Expr::And(vec![s_pr.expr().clone(), clause]),
        )
        .unwrap()
        .scheduling_ncqsym();
        assert_eq!(result, direct);
    }

    #[test]
    fn negation_lemma_small() {
        // Ŝ_{S'} = Ŝ_{S'∧C} + Ŝ_{S'∧¬C} termwise
        let s_pr = s_prime();
        let c = clause_c();
        let with_c = Formula::from_expr(4, Expr::And(vec![s_pr.expr().clone(), c.clone()]))
            .unwrap()
            .scheduling_ncqsym();
        let with_not_c = Formula::from_expr(
            4,
            Expr::And(vec![s_pr.expr().clone(), Expr::Not(Box::new(c))]),
        )
        .unwrap()
        .scheduling_ncqsym();
        assert_eq!(
            s_pr.scheduling_ncqsym(),
            with_c.add(&with_not_c).unwrap()
        );
    }

    #[test]
    fn edge_lemma_by_enumeration() {
        // {Φ solving S'∧¬C} = {Ψ↑^{(r...)} : Ψ solving S'↓_{(r...)}}
        let s_pr = s_prime();
        let c = clause_c();
        let (_, r) = contractible_clause(&c, 4).unwrap();
        let down = s_pr.contract(&r).unwrap();

        let mut lifted: Vec<SetComposition> = enumerate_set_compositions(down.n())
            .filter(|phi| down.solves(phi).unwrap())
            .map(|phi| phi.induct(&r).unwrap())
            .collect();
        lifted.sort();

        let neg = Formula::from_expr(
            4,
            Expr::And(vec![s_pr.expr().clone(), Expr::Not(Box::new(c))]),
        )
        .unwrap();
        let mut direct: Vec<SetComposition> = enumerate_set_compositions(4)
            .filter(|phi| neg.solves(phi).unwrap())
            .collect();
        direct.sort();
        assert_eq!(lifted, direct);
    }

    #[test]
    fn graph_like_image_lies_in_ncsym() {
        // coefficients constant across block reorderings of each composition
        let s = parse("(x1 != x2) & ((x1 != x3) | (x2 != x3))", 3);
        let q = s.scheduling_ncqsym();
        for (phi, c) in q.terms() {
            for pi in enumerate_set_partitions(3) {
                if phi.forget_order() == pi {
                    for (other, c2) in q.terms() {
                        if other.forget_order() == pi {
                            assert_eq!(c, c2);
                        }
                    }
                }
            }
        }
    }
}
