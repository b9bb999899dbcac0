//! Left-right planarity test with embedding extraction (Brandes' formulation
//! of de Fraysseix–Rosenstiehl). Operates on simple graphs given as edge
//! lists; all DFS passes are iterative so deep graphs do not overflow the
//! stack.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
    fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

struct Lr<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    adj: Vec<Vec<usize>>,
    // orientation
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    // testing
    refs: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
}

impl<'a> Lr<'a> {
    fn new(n: usize, edges: &'a [(usize, usize)]) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(i);
            adj[v].push(i);
        }
        Lr {
            n,
            edges,
            adj,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            out: vec![Vec::new(); n],
            roots: Vec::new(),
            refs: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
        }
    }

    #[inline]
    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn orient(&mut self) {
        for root in 0..self.n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            self.roots.push(root);
            let mut st: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&(v, i)) = st.last() {
                if i < self.adj[v].len() {
                    st.last_mut().unwrap().1 += 1;
                    let e = self.adj[v][i];
                    if self.oriented[e] {
                        continue;
                    }
                    let w = self.other(e, v);
                    self.oriented[e] = true;
                    self.src[e] = v;
                    self.dst[e] = w;
                    self.out[v].push(e);
                    self.lowpt[e] = self.height[v];
                    self.lowpt2[e] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = e;
                        self.height[w] = self.height[v] + 1;
                        st.push((w, 0));
                    } else {
                        self.lowpt[e] = self.height[w];
                        self.finish_orientation(e);
                    }
                } else {
                    st.pop();
                    let e = self.parent_edge[v];
                    if e != NONE {
                        self.finish_orientation(e);
                    }
                }
            }
        }
    }

    /// Nesting depth of `vw` and lowpoint propagation into the parent edge of `v`.
    fn finish_orientation(&mut self, vw: usize) {
        let v = self.src[vw];
        self.nesting[vw] = 2 * self.lowpt[vw] as i64;
        if self.lowpt2[vw] < self.height[v] {
            self.nesting[vw] += 1;
        }
        let e = self.parent_edge[v];
        if e != NONE {
            if self.lowpt[vw] < self.lowpt[e] {
                self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                self.lowpt[e] = self.lowpt[vw];
            } else if self.lowpt[vw] > self.lowpt[e] {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
            } else {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
            }
        }
    }

    fn sort_by_nesting(&mut self) {
        for v in 0..self.n {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
    }

    #[inline]
    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => NONE,
        }
    }

    fn test(&mut self) -> bool {
        for ri in 0..self.roots.len() {
            let root = self.roots[ri];
            // (vertex, next out index, waiting for child of edge out[i-1])
            let mut st: Vec<(usize, usize, bool)> = vec![(root, 0, false)];
            while let Some(&(v, i, waiting)) = st.last() {
                if waiting {
                    st.last_mut().unwrap().2 = false;
                    let ei = self.out[v][i - 1];
                    if !self.integrate(ei, v) {
                        return false;
                    }
                    continue;
                }
                if i < self.out[v].len() {
                    let ei = self.out[v][i];
                    st.last_mut().unwrap().1 += 1;
                    self.stack_bottom[ei] = self.stack.len();
                    let w = self.dst[ei];
                    if self.parent_edge[w] == ei {
                        st.last_mut().unwrap().2 = true;
                        st.push((w, 0, false));
                        continue;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                    if !self.integrate(ei, v) {
                        return false;
                    }
                } else {
                    st.pop();
                    let e = self.parent_edge[v];
                    if e != NONE {
                        self.remove_back_edges(e);
                    }
                }
            }
        }
        true
    }

    /// Integrates the return edges of `ei` (an out-edge of `v`).
    fn integrate(&mut self, ei: usize, v: usize) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if ei == self.out[v][0] {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("nonempty right interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.refs[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qlow] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() <= self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.refs[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.refs[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !p.is_empty() {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            if !p.is_empty() {
                self.stack.push(p);
            }
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.refs[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = Vec::new();
        let mut x = e;
        while let Some(r) = self.refs[x] {
            chain.push(x);
            x = r;
        }
        for &y in chain.iter().rev() {
            let r = self.refs[y].take().unwrap();
            self.side[y] *= self.side[r];
        }
        self.side[e]
    }

    /// Builds the rotation system. Half-edge ids are `2 * e` (at `src[e]`)
    /// and `2 * e + 1` (at `dst[e]`).
    fn embed(mut self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        for e in 0..m {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        self.sort_by_nesting();

        let hm = 2 * m;
        let mut cw = vec![NONE; hm];
        let mut ccw = vec![NONE; hm];
        let mut first = vec![NONE; self.n];

        fn add_cw(cw: &mut [usize], ccw: &mut [usize], first: &mut [usize], v: usize, h: usize, r: usize) {
            if r == NONE {
                cw[h] = h;
                ccw[h] = h;
                first[v] = h;
                return;
            }
            let c = cw[r];
            cw[r] = h;
            cw[h] = c;
            ccw[c] = h;
            ccw[h] = r;
        }
        fn add_ccw(cw: &mut [usize], ccw: &mut [usize], first: &mut [usize], v: usize, h: usize, r: usize) {
            if r == NONE {
                add_cw(cw, ccw, first, v, h, NONE);
                return;
            }
            let c = ccw[r];
            add_cw(cw, ccw, first, v, h, c);
            if first[v] == r {
                first[v] = h;
            }
        }

        for v in 0..self.n {
            let mut prev = NONE;
            for &e in &self.out[v] {
                let h = 2 * e;
                add_cw(&mut cw, &mut ccw, &mut first, v, h, prev);
                prev = h;
            }
        }

        let mut left_ref = vec![NONE; self.n];
        let mut right_ref = vec![NONE; self.n];
        for ri in 0..self.roots.len() {
            let root = self.roots[ri];
            let mut st: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&(v, i)) = st.last() {
                if i >= self.out[v].len() {
                    st.pop();
                    continue;
                }
                st.last_mut().unwrap().1 += 1;
                let ei = self.out[v][i];
                let w = self.dst[ei];
                let hw = 2 * ei + 1;
                if self.parent_edge[w] == ei {
                    let f = first[w];
                    add_ccw(&mut cw, &mut ccw, &mut first, w, hw, f);
                    left_ref[v] = 2 * ei;
                    right_ref[v] = 2 * ei;
                    st.push((w, 0));
                } else if self.side[ei] == 1 {
                    add_cw(&mut cw, &mut ccw, &mut first, w, hw, right_ref[w]);
                } else {
                    add_ccw(&mut cw, &mut ccw, &mut first, w, hw, left_ref[w]);
                    left_ref[w] = hw;
                }
            }
        }

        // translate half-edges into per-vertex edge-id rotations
        let mut rot = vec![Vec::new(); self.n];
        for v in 0..self.n {
            let start = first[v];
            if start == NONE {
                continue;
            }
            let mut h = start;
            loop {
                rot[v].push(h / 2);
                h = cw[h];
                if h == start {
                    break;
                }
            }
        }
        rot
    }
}

fn too_dense(n: usize, m: usize) -> bool {
    n > 2 && m > 3 * n - 6
}

/// Planarity of a simple graph.
pub(crate) fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    if too_dense(n, edges.len()) {
        return false;
    }
    let mut lr = Lr::new(n, edges);
    lr.orient();
    lr.sort_by_nesting();
    lr.test()
}

/// Rotation system of a simple planar graph: for each vertex, its incident
/// edge ids in cyclic order. `None` when the graph is not planar.
pub(crate) fn embed(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if too_dense(n, edges.len()) {
        return None;
    }
    let mut lr = Lr::new(n, edges);
    lr.orient();
    lr.sort_by_nesting();
    if !lr.test() {
        return None;
    }
    Some(lr.embed())
}
