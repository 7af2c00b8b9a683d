//! Routing several disjoint path demands at once in a small graph.

/// True iff every demand `(x, y, b)` can be served by `b` paths from `x` to
/// `y` with all paths mutually edge-disjoint, or, with `vertex_disjoint`,
/// with no path touching an inner vertex of another. Exhaustive search.
pub fn solve_demands(
    n: usize,
    edges: &[(usize, usize)],
    demands: &[(usize, usize, u8)],
    vertex_disjoint: bool,
) -> bool {
    let mut units: Vec<(usize, usize)> = Vec::new();
    for &(x, y, b) in demands {
        if x == y {
            continue;
        }
        units.extend(std::iter::repeat_n((x, y), b as usize));
    }
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut terminal = vec![false; n];
    for &(x, y) in &units {
        terminal[x] = true;
        terminal[y] = true;
    }
    let mut router = Router {
        adj,
        units,
        used_edge: vec![false; edges.len()],
        used_vertex: vec![false; n],
        terminal,
        vertex_disjoint,
    };
    router.route(0)
}

struct Router {
    adj: Vec<Vec<(usize, usize)>>,
    units: Vec<(usize, usize)>,
    used_edge: Vec<bool>,
    used_vertex: Vec<bool>,
    terminal: Vec<bool>,
    vertex_disjoint: bool,
}

impl Router {
    fn route(&mut self, i: usize) -> bool {
        if i == self.units.len() {
            return true;
        }
        let (x, y) = self.units[i];
        let mut on_path = vec![false; self.adj.len()];
        on_path[x] = true;
        self.extend(i, x, y, &mut on_path)
    }

    /// Depth-first over simple paths from `at` to `y`, routing the rest of
    /// the units for each complete path.
    fn extend(&mut self, i: usize, at: usize, y: usize, on_path: &mut Vec<bool>) -> bool {
        for k in 0..self.adj[at].len() {
            let (w, e) = self.adj[at][k];
            if self.used_edge[e] || on_path[w] {
                continue;
            }
            if w == y {
                self.used_edge[e] = true;
                let ok = self.route(i + 1);
                self.used_edge[e] = false;
                if ok {
                    return true;
                }
                continue;
            }
            if self.vertex_disjoint && (self.used_vertex[w] || self.terminal[w]) {
                continue;
            }
            self.used_edge[e] = true;
            on_path[w] = true;
            let was = self.used_vertex[w];
            if self.vertex_disjoint {
                self.used_vertex[w] = true;
            }
            let ok = self.extend(i, w, y, on_path);
            self.used_vertex[w] = was;
            on_path[w] = false;
            self.used_edge[e] = false;
            if ok {
                return true;
            }
        }
        false
    }
}
