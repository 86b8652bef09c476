//! Directed-graph helpers on complexes: weak components, strong components,
//! terminal classes.

/// Connected components of the underlying undirected graph, each sorted,
/// ordered by smallest member.
pub fn weak_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    group(n, |v| find(&mut parent, v))
}

fn group(n: usize, mut label: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index_of = std::collections::HashMap::new();
    for v in 0..n {
        let l = label(v);
        let i = *index_of.entry(l).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[i].push(v);
    }
    out
}

/// Strongly connected components (Tarjan), each sorted, ordered by smallest member.
pub fn strong_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0;
    let mut ncomp = 0;

    // Iterative Tarjan: frames of (node, next child position).
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, pos)) = frames.last() {
            if pos < adj[v].len() {
                let w = adj[v][pos];
                if let Some(top) = frames.last_mut() {
                    top.1 += 1;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    group(n, |v| comp[v])
}

/// Indices (into `components`) of strong components with no edge leaving them.
pub fn terminal_components(components: &[Vec<usize>], n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut comp_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut leaves = vec![false; components.len()];
    for &(a, b) in edges {
        if comp_of[a] != comp_of[b] {
            leaves[comp_of[a]] = true;
        }
    }
    (0..components.len()).filter(|&i| !leaves[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_one_component() {
        let e = [(0, 1), (1, 2), (2, 0)];
        assert_eq!(strong_components(3, &e), vec![vec![0, 1, 2]]);
        assert_eq!(weak_components(3, &e), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn chain_has_singleton_components() {
        let e = [(0, 1)];
        let s = strong_components(2, &e);
        assert_eq!(s.len(), 2);
        let t = terminal_components(&s, 2, &e);
        assert_eq!(t.len(), 1);
        assert_eq!(s[t[0]], vec![1]);
    }

    #[test]
    fn two_weak_components() {
        let e = [(0, 1), (2, 3), (3, 2)];
        assert_eq!(weak_components(4, &e), vec![vec![0, 1], vec![2, 3]]);
        let s = strong_components(4, &e);
        assert_eq!(s.len(), 3);
        assert_eq!(terminal_components(&s, 4, &e).len(), 2);
    }
}
