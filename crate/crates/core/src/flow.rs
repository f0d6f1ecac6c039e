//! Maximum s-t flow and minimum s-t cut on integer-capacity networks.
//!
//! The solver is highest-label push-relabel with the gap heuristic and
//! periodic global relabeling. A first phase computes a maximum preflow; a
//! second phase runs the same machinery toward the source to return the
//! remaining excess, so the final state is a proper flow. The reported cut
//! is the set of nodes reachable from the source in the final residual
//! network.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub type Capacity = i64;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("source and sink must differ")]
    SameTerminals,
    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("negative capacity {0}")]
    NegativeCapacity(Capacity),
    #[error("total capacity exceeds the 64-bit range")]
    CapacityOverflow,
    #[error("arcs cannot be added after solving")]
    AlreadySolved,
}

/// A directed arc as it was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

/// Result of a max-flow computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub flow_value: Capacity,
    /// `source_side[v]` is true iff `v` is reachable from the source in the
    /// final residual network.
    pub source_side: Vec<bool>,
}

impl CutResult {
    pub fn contains(&self, v: usize) -> bool {
        self.source_side[v]
    }
}

#[derive(Debug, Clone)]
struct Solved {
    residual: Vec<Capacity>,
    result: CutResult,
}

/// Directed network with integer capacities. Each added arc gets an implicit
/// reverse arc of capacity zero.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    source_capacity: u128,
    solved: Option<Solved>,
}

impl FlowNetwork {
    pub fn new(n: usize, source: usize, sink: usize) -> Result<Self, FlowError> {
        for node in [source, sink] {
            if node >= n {
                return Err(FlowError::NodeOutOfRange { node, n });
            }
        }
        if source == sink {
            return Err(FlowError::SameTerminals);
        }
        Ok(FlowNetwork {
            n,
            source,
            sink,
            arcs: Vec::new(),
            source_capacity: 0,
            solved: None,
        })
    }

    pub fn with_arc_capacity(mut self, arcs: usize) -> Self {
        self.arcs.reserve(arcs);
        self
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_solved(&self) -> bool {
        self.solved.is_some()
    }

    /// Appends an arc. Parallel arcs are allowed and add up.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> Result<ArcId, FlowError> {
        if self.solved.is_some() {
            return Err(FlowError::AlreadySolved);
        }
        for node in [tail, head] {
            if node >= self.n {
                return Err(FlowError::NodeOutOfRange { node, n: self.n });
            }
        }
        if capacity < 0 {
            return Err(FlowError::NegativeCapacity(capacity));
        }
        if tail == self.source {
            // Bounds every excess and the flow value.
            let total = self.source_capacity + capacity as u128;
            if total > Capacity::MAX as u128 {
                return Err(FlowError::CapacityOverflow);
            }
            self.source_capacity = total;
        }
        self.arcs.push(Arc { tail, head, capacity });
        Ok(self.arcs.len() - 1)
    }

    /// Solves on first call; later calls return the cached result.
    pub fn max_flow_min_cut(&mut self) -> CutResult {
        if self.solved.is_none() {
            let mut solver = PushRelabel::new(self);
            let flow_value = solver.run(self.source, self.sink);
            let source_side = solver.reachable_from(self.source);
            self.solved = Some(Solved {
                residual: solver.residual,
                result: CutResult {
                    flow_value,
                    source_side,
                },
            });
        }
        self.solved.as_ref().unwrap().result.clone()
    }

    /// Flow on arc `id`, once solved.
    pub fn flow(&self, id: ArcId) -> Option<Capacity> {
        let solved = self.solved.as_ref()?;
        Some(self.arcs[id].capacity - solved.residual[2 * id])
    }

    /// Total capacity of arcs leaving `side`.
    pub fn cut_capacity(&self, side: &[bool]) -> Capacity {
        self.arcs
            .iter()
            .filter(|a| side[a.tail] && !side[a.head])
            .map(|a| a.capacity)
            .sum()
    }
}

const NONE: usize = usize::MAX;

/// Residual arc `r` is forward for arc `r / 2` when `r` is even; `r ^ 1` is
/// its partner.
struct PushRelabel {
    n: usize,
    adj_start: Vec<usize>,
    adj: Vec<usize>,
    head: Vec<usize>,
    residual: Vec<Capacity>,
    excess: Vec<Capacity>,
    height: Vec<usize>,
    current: Vec<usize>,
    active: Vec<Vec<usize>>,
    // Intrusive doubly linked lists of nodes per height below `n`; index
    // `n + h` is the sentinel of level `h`.
    level_next: Vec<usize>,
    level_prev: Vec<usize>,
    max_level: usize,
    max_active: usize,
    work: usize,
}

impl PushRelabel {
    fn new(net: &FlowNetwork) -> Self {
        let n = net.n;
        let mut degree = vec![0usize; n + 1];
        for a in &net.arcs {
            degree[a.tail] += 1;
            degree[a.head] += 1;
        }
        let mut adj_start = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for d in &degree[..n] {
            adj_start.push(acc);
            acc += d;
        }
        adj_start.push(acc);
        let mut fill = adj_start.clone();
        let mut adj = vec![0; acc];
        let mut head = vec![0; 2 * net.arcs.len()];
        let mut residual = vec![0; 2 * net.arcs.len()];
        for (id, a) in net.arcs.iter().enumerate() {
            head[2 * id] = a.head;
            head[2 * id + 1] = a.tail;
            residual[2 * id] = a.capacity;
            adj[fill[a.tail]] = 2 * id;
            fill[a.tail] += 1;
            adj[fill[a.head]] = 2 * id + 1;
            fill[a.head] += 1;
        }
        PushRelabel {
            n,
            current: adj_start[..n].to_vec(),
            adj_start,
            adj,
            head,
            residual,
            excess: vec![0; n],
            height: vec![0; n],
            active: vec![Vec::new(); n],
            level_next: vec![NONE; 2 * n],
            level_prev: vec![NONE; 2 * n],
            max_level: 0,
            max_active: 0,
            work: 0,
        }
    }

    fn run(&mut self, source: usize, sink: usize) -> Capacity {
        for p in self.adj_start[source]..self.adj_start[source + 1] {
            let r = self.adj[p];
            let cap = self.residual[r];
            if cap > 0 {
                let v = self.head[r];
                self.residual[r] = 0;
                self.residual[r ^ 1] += cap;
                self.excess[v] += cap;
                self.excess[source] -= cap;
            }
        }
        // Phase one: maximum preflow into the sink.
        self.phase(sink, source);
        let value = self.excess[sink];
        // Phase two: send leftover excess back to the source.
        self.phase(source, sink);
        value
    }

    fn phase(&mut self, target: usize, blocked: usize) {
        self.global_relabel(target, blocked);
        while let Some(u) = self.pop_active() {
            self.discharge(u, target, blocked);
            if self.work > 6 * self.n + self.adj.len() {
                self.global_relabel(target, blocked);
            }
        }
    }

    fn pop_active(&mut self) -> Option<usize> {
        loop {
            let h = self.max_active;
            if let Some(u) = self.active[h].pop() {
                if self.height[u] == h && self.excess[u] > 0 {
                    return Some(u);
                }
                continue;
            }
            if h == 0 {
                return None;
            }
            self.max_active -= 1;
        }
    }

    fn level_insert(&mut self, v: usize, h: usize) {
        let head = self.n + h;
        let first = self.level_next[head];
        self.level_next[v] = first;
        self.level_prev[v] = head;
        if first != NONE {
            self.level_prev[first] = v;
        }
        self.level_next[head] = v;
        self.max_level = self.max_level.max(h);
    }

    fn level_remove(&mut self, v: usize) {
        let (prev, next) = (self.level_prev[v], self.level_next[v]);
        self.level_next[prev] = next;
        if next != NONE {
            self.level_prev[next] = prev;
        }
    }

    fn level_is_empty(&self, h: usize) -> bool {
        self.level_next[self.n + h] == NONE
    }

    /// Exact distances to `target` in the residual network; nodes that
    /// cannot reach it (and `blocked`) get height `n` or more.
    fn global_relabel(&mut self, target: usize, blocked: usize) {
        let n = self.n;
        self.work = 0;
        self.height.fill(n);
        self.height[blocked] = 2 * n;
        self.height[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(u) = queue.pop_front() {
            for p in self.adj_start[u]..self.adj_start[u + 1] {
                let r = self.adj[p];
                let v = self.head[r];
                if self.height[v] == n && self.residual[r ^ 1] > 0 {
                    self.height[v] = self.height[u] + 1;
                    queue.push_back(v);
                }
            }
        }

        self.level_next.fill(NONE);
        self.level_prev.fill(NONE);
        self.max_level = 0;
        self.max_active = 0;
        for bucket in &mut self.active {
            bucket.clear();
        }
        for v in 0..n {
            let h = self.height[v];
            if h >= n {
                continue;
            }
            self.level_insert(v, h);
            if v != target && self.excess[v] > 0 {
                self.active[h].push(v);
                self.max_active = self.max_active.max(h);
            }
        }
        self.current.copy_from_slice(&self.adj_start[..n]);
    }

    fn discharge(&mut self, u: usize, target: usize, blocked: usize) {
        let end = self.adj_start[u + 1];
        while self.excess[u] > 0 {
            if self.current[u] == end {
                self.relabel(u);
                if self.height[u] >= self.n {
                    return;
                }
                continue;
            }
            let r = self.adj[self.current[u]];
            let v = self.head[r];
            if self.residual[r] > 0 && self.height[u] == self.height[v] + 1 {
                let delta = self.excess[u].min(self.residual[r]);
                self.residual[r] -= delta;
                self.residual[r ^ 1] += delta;
                self.excess[u] -= delta;
                let was_idle = self.excess[v] <= 0;
                self.excess[v] += delta;
                if was_idle && v != target && v != blocked {
                    let h = self.height[v];
                    self.active[h].push(v);
                    self.max_active = self.max_active.max(h);
                }
            } else {
                self.current[u] += 1;
            }
        }
    }

    fn relabel(&mut self, u: usize) {
        let n = self.n;
        let old = self.height[u];
        self.level_remove(u);
        if self.level_is_empty(old) {
            // Gap: nothing above `old` can reach the target any more.
            for h in old + 1..=self.max_level {
                let mut v = self.level_next[n + h];
                while v != NONE {
                    self.height[v] = n;
                    v = self.level_next[v];
                }
                self.level_next[n + h] = NONE;
            }
            self.max_level = old.saturating_sub(1);
            self.height[u] = n;
            return;
        }
        let (start, end) = (self.adj_start[u], self.adj_start[u + 1]);
        self.work += end - start + 12;
        let mut lowest = n;
        for p in start..end {
            let r = self.adj[p];
            if self.residual[r] > 0 {
                lowest = lowest.min(self.height[self.head[r]]);
            }
        }
        let h = (lowest + 1).min(n);
        self.height[u] = h;
        self.current[u] = start;
        if h < n {
            self.level_insert(u, h);
        }
    }

    fn reachable_from(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for p in self.adj_start[u]..self.adj_start[u + 1] {
                let r = self.adj[p];
                let v = self.head[r];
                if !seen[v] && self.residual[r] > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
