//! Independent oracles shared by the integration suites. These deliberately
//! avoid the code paths they are used to check.

use ksum::gridcount::Graph;

/// Count connected vertex subsets of size >= `min_size` by recursive subset
/// generation plus union-find connectivity.
pub fn naive_connected_count(g: &Graph, min_size: usize) -> u64 {
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    fn recurse(g: &Graph, min_size: usize, next: usize, chosen: &mut Vec<usize>, count: &mut u64) {
        if next == g.vertex_count() {
            if chosen.len() < min_size {
                return;
            }
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            for &(a, b) in g.edges() {
                if chosen.contains(&a) && chosen.contains(&b) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
            let root = find(&mut parent, chosen[0]);
            if chosen.iter().all(|&v| find(&mut parent, v) == root) {
                *count += 1;
            }
            return;
        }
        recurse(g, min_size, next + 1, chosen, count);
        chosen.push(next);
        recurse(g, min_size, next + 1, chosen, count);
        chosen.pop();
    }
    let mut count = 0;
    recurse(g, min_size, 0, &mut Vec::new(), &mut count);
    count
}
