#![allow(dead_code)]

//! Seeded random generators shared by the integration suites.

use plurichrome_core::hypertree::Hypergraph;
use plurichrome_core::plurigraph::{Pluriedge, Plurigraph};
use plurichrome_core::scheduling::{contractible_clause, Expr, Formula};
use plurichrome_core::setpart::{Permutation, SetPartition};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (1..=n).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled identity is a bijection")
}

pub fn random_pluriedge(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_edges: usize,
    allow_loops: bool,
) -> Pluriedge {
    let count = rng.gen_range(1..=max_edges);
    let edges = (0..count)
        .map(|_| {
            let u = rng.gen_range(1..=n);
            let v = if allow_loops || n == 1 {
                rng.gen_range(1..=n)
            } else {
                loop {
                    let v = rng.gen_range(1..=n);
                    if v != u {
                        break v;
                    }
                }
            };
            (u, v)
        })
        .collect();
    Pluriedge::new(n, edges).expect("generated edges are in range")
}

pub fn random_plurigraph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_pluriedges: usize,
    max_edges: usize,
    allow_loops: bool,
) -> Plurigraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_pluriedges);
    let pluriedges = (0..m)
        .map(|_| random_pluriedge(rng, n, max_edges, allow_loops))
        .collect();
    Plurigraph::new(n, pluriedges).expect("generated pluriedges share n")
}

/// A random antichain of non-discrete partitions of `[n]` (possibly
/// empty; always empty for `n < 2`).
pub fn random_antichain(rng: &mut ChaCha8Rng, n: usize, max_members: usize) -> Vec<SetPartition> {
    let mut family: Vec<SetPartition> = Vec::new();
    if n < 2 {
        return family;
    }
    let attempts = rng.gen_range(0..=max_members);
    'outer: for _ in 0..attempts {
        // random non-discrete partition: at least one block of size >= 2
        let pi = loop {
            let assign: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(2) - 1)).collect();
            let pi = SetPartition::from_assignment(&assign);
            if pi.num_blocks() < n {
                break pi;
            }
        };
        for other in &family {
            if pi.refines(other).unwrap() || other.refines(&pi).unwrap() {
                continue 'outer;
            }
        }
        family.push(pi);
    }
    family
}

/// The simple plurigraph whose pluriedges are the complete graphs on the
/// blocks of each partition in the antichain.
pub fn plurigraph_from_antichain(n: usize, family: &[SetPartition]) -> Plurigraph {
    let pluriedges = family
        .iter()
        .map(|pi| {
            let mut edges = Vec::new();
            for b in pi.blocks() {
                for i in 0..b.len() {
                    for j in i + 1..b.len() {
                        edges.push((b[i], b[j]));
                    }
                }
            }
            Pluriedge::new(n, edges).expect("non-discrete partition has an edge")
        })
        .collect();
    Plurigraph::new(n, pluriedges).expect("blocks lie in [n]")
}

/// A random graph-like formula: a conjunction of disjunctions of
/// nonequalities (loop atoms allowed).
pub fn random_graph_like(rng: &mut ChaCha8Rng, n: usize, max_clauses: usize) -> Formula {
    let m = rng.gen_range(0..=max_clauses);
    let clauses: Vec<Expr> = (0..m).map(|_| random_edge_like(rng, n)).collect();
    let expr = match clauses.len() {
        0 => Expr::True,
        1 => clauses.into_iter().next().unwrap(),
        _ => Expr::And(clauses),
    };
    Formula::from_expr(n, expr).expect("indices in range")
}

pub fn random_edge_like(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    let k = rng.gen_range(1..=3);
    let atoms: Vec<Expr> = (0..k)
        .map(|_| Expr::Ne(rng.gen_range(1..=n), rng.gen_range(1..=n)))
        .collect();
    if atoms.len() == 1 {
        atoms.into_iter().next().unwrap()
    } else {
        Expr::Or(atoms)
    }
}

/// A random contractible clause on a problem of `n` elements: `V(C)` is a
/// top interval split into decreasing consecutive classes; each class of
/// size >= 2 is connected by chained nonequalities plus optional extras,
/// singleton classes contribute a loop atom.
pub fn random_contractible_clause(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    assert!(n >= 2, "contractible clauses need at least two elements");
    let s = rng.gen_range(1..n.min(4));
    let lo = n - s;
    // split lo..=n into consecutive classes, top first
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut hi = n;
    while hi >= lo {
        let max_size = hi - lo + 1;
        let size = rng.gen_range(1..=max_size);
        classes.push(((hi - size + 1)..=hi).collect());
        if hi - size + 1 == lo {
            break;
        }
        hi -= size;
    }
    let mut atoms = Vec::new();
    for class in &classes {
        if class.len() == 1 {
            atoms.push(Expr::Ne(class[0], class[0]));
        } else {
            for w in class.windows(2) {
                atoms.push(Expr::Ne(w[0], w[1]));
            }
            if rng.gen_bool(0.3) {
                let a = class[rng.gen_range(0..class.len())];
                let b = class[rng.gen_range(0..class.len())];
                atoms.push(Expr::Ne(a, b));
            }
        }
    }
    let clause = if atoms.len() == 1 {
        atoms.into_iter().next().unwrap()
    } else {
        Expr::Or(atoms)
    };
    debug_assert!(contractible_clause(&clause, n).is_some());
    clause
}

/// A random boolean formula over all atom kinds, for identities that hold
/// beyond the graph-like fragment.
pub fn random_formula(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.4) {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        return match rng.gen_range(0..4) {
            0 => Expr::Le(i, j),
            1 => Expr::Lt(i, j),
            2 => Expr::Eq(i, j),
            _ => Expr::Ne(i, j),
        };
    }
    match rng.gen_range(0..3) {
        0 => Expr::Not(Box::new(random_formula(rng, n, depth - 1))),
        1 => Expr::And(
            (0..rng.gen_range(1..=3))
                .map(|_| random_formula(rng, n, depth - 1))
                .collect(),
        ),
        _ => Expr::Or(
            (0..rng.gen_range(1..=3))
                .map(|_| random_formula(rng, n, depth - 1))
                .collect(),
        ),
    }
}

/// A random hypergraph with distinct hyperedges of sizes 2..=4.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_n: usize, max_edges: usize) -> Hypergraph {
    let n = rng.gen_range(2..=max_n);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let target = rng.gen_range(0..=max_edges);
    let mut attempts = 0;
    while edges.len() < target && attempts < 50 {
        attempts += 1;
        let size = rng.gen_range(2..=3.min(n));
        let mut vs: Vec<usize> = (1..=n).collect();
        vs.shuffle(rng);
        let mut e: Vec<usize> = vs.into_iter().take(size).collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).expect("distinct valid edges")
}
