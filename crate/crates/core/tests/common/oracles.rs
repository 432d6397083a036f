//! Independent brute-force oracles over plain data (vertex count + edge
//! list, signed-integer clauses). They share no code with the solvers they
//! check.
#![allow(dead_code)]

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn component_of(adj: &[u32], start: usize, within: u32) -> u32 {
    let mut comp = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in 0..adj.len() {
            if adj[v] >> u & 1 == 1 && within >> u & 1 == 1 && comp >> u & 1 == 0 {
                comp |= 1 << u;
                stack.push(u);
            }
        }
    }
    comp
}

/// Treedepth straight from the recursive definition, without memoisation.
pub fn direct_td(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(adj: &[u32], set: u32) -> usize {
        if set == 0 {
            return 0;
        }
        let first = set.trailing_zeros() as usize;
        let comp = component_of(adj, first, set);
        if comp != set {
            return go(adj, comp).max(go(adj, set & !comp));
        }
        (0..adj.len())
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| 1 + go(adj, set & !(1 << v)))
            .min()
            .unwrap()
    }
    assert!(n <= 16);
    let adj = adjacency(n, edges);
    go(&adj, if n == 0 { 0 } else { (1u32 << n) - 1 })
}

/// Minimum vertex cover size by trying all `2^n` subsets.
pub fn brute_vc(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= 24);
    (0u32..1 << n)
        .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// All minimum vertex covers as sorted vertex lists.
pub fn brute_min_covers(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let best = brute_vc(n, edges);
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == best)
        .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| (0..n).filter(|v| s >> v & 1 == 1).collect())
        .collect()
}

/// MAX-SAT value by recursive branching; clauses are DIMACS literals.
pub fn brute_max_sat(n: usize, clauses: &[Vec<i64>]) -> usize {
    fn go(n: usize, clauses: &[Vec<i64>], assignment: &mut Vec<bool>) -> usize {
        if assignment.len() == n {
            return clauses
                .iter()
                .filter(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
                .count();
        }
        let mut best = 0;
        for value in [false, true] {
            assignment.push(value);
            best = best.max(go(n, clauses, assignment));
            assignment.pop();
        }
        best
    }
    go(n, clauses, &mut Vec::new())
}

/// Satisfiability by checking each clause in turn under every assignment.
pub fn brute_satisfiable(n: usize, clauses: &[Vec<i64>]) -> bool {
    (0u64..1 << n).any(|bits| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
    })
}
