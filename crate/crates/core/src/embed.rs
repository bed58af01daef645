//! Exact decision of the embedding relation: every guest node goes to one
//! host node, every guest link to one simple host path, and node and link
//! capacities hold once relay costs are charged.
//!
//! The search assigns guest nodes one at a time (most constrained first),
//! routes each newly closed guest link over every feasible path in
//! shortest-first order, and prunes with capacity counting arguments. It is
//! exact: a `false` is a proof of non-embeddability, and running out of
//! budget is reported as [`VnxError::Budget`], never as `false`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Result, VnxError};
use crate::graph::{edge_key, CapGraph, Edge, NodeId, Weight};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub fn default_epsilon() -> Weight {
    Ratio::new(1, 100)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedConfig {
    /// Node capacity consumed per guest link relayed through a host node.
    pub epsilon: Weight,
    /// Maximum number of search expansions before giving up.
    pub budget: u64,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self { epsilon: default_epsilon(), budget: DEFAULT_BUDGET }
    }
}

impl EmbedConfig {
    pub fn with_epsilon(epsilon: Weight) -> Self {
        Self { epsilon, ..Self::default() }
    }
}

/// A witness for `guest ↦ host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub node_map: Vec<NodeId>,
    /// Host path for every guest link `(u, v)`, `u < v`, listed from the image
    /// of `u` to the image of `v`. A single node means the empty path.
    pub edge_map: BTreeMap<Edge, Vec<NodeId>>,
    pub epsilon: Weight,
}

impl Embedding {
    /// Resources used on each host node (hosted demand plus relay cost).
    pub fn node_usage(&self, guest: &CapGraph, host: &CapGraph) -> Vec<Weight> {
        let mut used = vec![Weight::zero(); host.node_count()];
        for (u, &h) in self.node_map.iter().enumerate() {
            used[h] += guest.node(u).demand;
        }
        for path in self.edge_map.values() {
            for &x in path.iter().skip(1).take(path.len().saturating_sub(2)) {
                used[x] += self.epsilon;
            }
        }
        used
    }

    /// Demand routed over each host link.
    pub fn edge_usage(&self, guest: &CapGraph) -> BTreeMap<Edge, Weight> {
        let mut used: BTreeMap<Edge, Weight> = BTreeMap::new();
        for (&(u, v), path) in &self.edge_map {
            let d = guest.edge(u, v).map(|a| a.demand).unwrap_or_default();
            for w in path.windows(2) {
                *used.entry(edge_key(w[0], w[1])).or_default() += d;
            }
        }
        used
    }
}

/// Which condition of a valid embedding failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Every guest node maps to exactly one host node.
    NodeMapping,
    /// Every guest link maps to one simple path between its endpoint images.
    LinkMapping,
    /// Host node capacity, relay costs included.
    NodeCapacity,
    /// Host link capacity.
    LinkCapacity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub element: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.condition {
            Condition::NodeMapping => "(i) node mapping",
            Condition::LinkMapping => "(ii) link mapping",
            Condition::NodeCapacity => "(iii) node capacity",
            Condition::LinkCapacity => "(iv) link capacity",
        };
        write!(f, "{c} violated at {}", self.element)
    }
}

/// Checks a witness against all four validity conditions. `Ok(Err(_))`
/// reports the first violated condition; `Err(_)` means the witness refers
/// to elements that do not exist.
pub fn validate_embedding(e: &Embedding, guest: &CapGraph, host: &CapGraph) -> Result<std::result::Result<(), Violation>> {
    let violation = |condition, element: String| Ok(Err(Violation { condition, element }));
    if e.node_map.len() != guest.node_count() {
        return violation(Condition::NodeMapping, format!("{} of {} guest nodes mapped", e.node_map.len(), guest.node_count()));
    }
    for (u, &h) in e.node_map.iter().enumerate() {
        if !host.has_node(h) {
            return Err(VnxError::MalformedWitness(format!("guest node {u} mapped to unknown host node {h}")));
        }
    }
    for &(u, v) in e.edge_map.keys() {
        if !guest.has_edge(u, v) {
            return Err(VnxError::MalformedWitness(format!("path given for unknown guest link {u}-{v}")));
        }
    }
    for (u, v) in guest.edges() {
        let Some(path) = e.edge_map.get(&(u, v)) else {
            return violation(Condition::LinkMapping, format!("guest link {u}-{v} unmapped"));
        };
        if let Some(&x) = path.iter().find(|&&x| !host.has_node(x)) {
            return Err(VnxError::MalformedWitness(format!("path of {u}-{v} uses unknown host node {x}")));
        }
        let (hu, hv) = (e.node_map[u], e.node_map[v]);
        if path.first() != Some(&hu) || path.last() != Some(&hv) {
            return violation(Condition::LinkMapping, format!("guest link {u}-{v} path does not join its endpoint images"));
        }
        let mut seen = std::collections::BTreeSet::new();
        if !path.iter().all(|x| seen.insert(*x)) {
            return violation(Condition::LinkMapping, format!("guest link {u}-{v} path is not simple"));
        }
        if let Some(w) = path.windows(2).find(|w| !host.has_edge(w[0], w[1])) {
            return violation(Condition::LinkMapping, format!("guest link {u}-{v} uses missing host link {}-{}", w[0], w[1]));
        }
    }
    let node_use = e.node_usage(guest, host);
    for h in host.nodes() {
        if node_use[h] > host.node(h).cap {
            return violation(Condition::NodeCapacity, format!("host node {h}"));
        }
    }
    for ((a, b), used) in e.edge_usage(guest) {
        if used > host.edge(a, b).expect("checked above").cap {
            return violation(Condition::LinkCapacity, format!("host link {a}-{b}"));
        }
    }
    Ok(Ok(()))
}

pub fn is_embeddable(guest: &CapGraph, host: &CapGraph, epsilon: Weight) -> Result<bool> {
    is_embeddable_with(guest, host, &EmbedConfig::with_epsilon(epsilon))
}

pub fn is_embeddable_with(guest: &CapGraph, host: &CapGraph, cfg: &EmbedConfig) -> Result<bool> {
    Ok(find_embedding_with(guest, host, cfg)?.is_some())
}

pub fn find_embedding(guest: &CapGraph, host: &CapGraph, epsilon: Weight) -> Result<Option<Embedding>> {
    find_embedding_with(guest, host, &EmbedConfig::with_epsilon(epsilon))
}

pub fn find_embedding_with(guest: &CapGraph, host: &CapGraph, cfg: &EmbedConfig) -> Result<Option<Embedding>> {
    if cfg.epsilon <= Weight::zero() {
        return Err(VnxError::InvalidGraph("epsilon must be positive".into()));
    }
    if guest.node_count() == 0 {
        return Ok(Some(Embedding { node_map: Vec::new(), edge_map: BTreeMap::new(), epsilon: cfg.epsilon }));
    }
    if host.node_count() == 0 {
        return Ok(None);
    }
    let mut s = Search::new(guest, host, cfg)?;
    if !s.globally_feasible() {
        return Ok(None);
    }
    if s.place()? {
        Ok(Some(s.witness(cfg.epsilon)))
    } else {
        Ok(None)
    }
}

/// Fixed-point integer view of the weights, scaled by the lcm of all denominators.
struct Scale(i64);

impl Scale {
    fn of<'a>(weights: impl Iterator<Item = &'a Weight>) -> Result<Self> {
        let mut l: i64 = 1;
        for w in weights {
            l = l.lcm(w.denom());
            if l > 1 << 40 {
                return Err(VnxError::InvalidGraph("weights have too fine a resolution".into()));
            }
        }
        Ok(Self(l))
    }

    fn apply(&self, w: &Weight) -> Result<i64> {
        let x = (*w * Ratio::from_integer(self.0)).to_integer();
        if x.to_i64().is_some_and(|x| x < 1 << 52) {
            Ok(x)
        } else {
            Err(VnxError::InvalidGraph("weight too large".into()))
        }
    }
}

const NONE: usize = usize::MAX;

struct Search {
    // host
    hn: usize,
    h_adj: Vec<Vec<(NodeId, usize)>>,
    res_node: Vec<i64>,
    res_edge: Vec<i64>,
    h_cap_node: Vec<i64>,
    eps: i64,
    // guest
    gn: usize,
    g_adj: Vec<Vec<(NodeId, usize)>>,
    g_ends: Vec<Edge>,
    dem_node: Vec<i64>,
    dem_edge: Vec<i64>,
    min_dem: i64,
    min_edge_dem: i64,
    injective: bool,
    twin_before: Vec<Vec<NodeId>>,
    twin_after: Vec<Vec<NodeId>>,
    // state
    map: Vec<usize>,
    links: Vec<usize>,
    open: Vec<usize>,
    paths: Vec<Option<Vec<NodeId>>>,
    assigned: usize,
    hostable: usize,
    // budget
    budget: u64,
    ticks: u64,
}

impl Search {
    fn new(guest: &CapGraph, host: &CapGraph, cfg: &EmbedConfig) -> Result<Self> {
        let scale = Scale::of(
            std::iter::once(&cfg.epsilon)
                .chain(host.nodes().map(|v| &host.node(v).cap))
                .chain(host.edge_attrs().map(|(_, a)| &a.cap))
                .chain(guest.nodes().map(|v| &guest.node(v).demand))
                .chain(guest.edge_attrs().map(|(_, a)| &a.demand)),
        )?;
        let hn = host.node_count();
        let mut h_adj = vec![Vec::new(); hn];
        let mut res_edge = Vec::new();
        for (i, ((u, v), a)) in host.edge_attrs().enumerate() {
            h_adj[u].push((v, i));
            h_adj[v].push((u, i));
            res_edge.push(scale.apply(&a.cap)?);
        }
        let res_node: Vec<i64> = host.nodes().map(|v| scale.apply(&host.node(v).cap)).collect::<Result<_>>()?;

        let gn = guest.node_count();
        let mut g_adj = vec![Vec::new(); gn];
        let mut g_ends = Vec::new();
        let mut dem_edge = Vec::new();
        for (i, ((u, v), a)) in guest.edge_attrs().enumerate() {
            g_adj[u].push((v, i));
            g_adj[v].push((u, i));
            g_ends.push((u, v));
            dem_edge.push(scale.apply(&a.demand)?);
        }
        let dem_node: Vec<i64> = guest.nodes().map(|v| scale.apply(&guest.node(v).demand)).collect::<Result<_>>()?;
        let min_dem = *dem_node.iter().min().expect("non-empty guest");
        let min_edge_dem = dem_edge.iter().copied().min().unwrap_or(0);
        let injective = res_node.iter().all(|&c| c < 2 * min_dem);
        let hostable = res_node.iter().filter(|&&c| c >= min_dem).count();

        let (twin_before, twin_after) = twin_constraints(guest);
        let open = (0..gn).map(|u| g_adj[u].len()).collect();
        let edges = g_ends.len();
        Ok(Self {
            hn,
            h_adj,
            h_cap_node: res_node.clone(),
            res_node,
            res_edge,
            eps: scale.apply(&cfg.epsilon)?,
            gn,
            g_adj,
            g_ends,
            dem_node,
            dem_edge,
            min_dem,
            min_edge_dem,
            injective,
            twin_before,
            twin_after,
            map: vec![NONE; gn],
            links: vec![0; gn],
            open,
            paths: vec![None; edges],
            assigned: 0,
            hostable,
            budget: cfg.budget,
            ticks: 0,
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks > self.budget {
            Err(VnxError::Budget { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Counting arguments that hold before any assignment.
    fn globally_feasible(&self) -> bool {
        let total_dem: i64 = self.dem_node.iter().sum();
        let total_cap: i64 = self.res_node.iter().sum();
        if total_dem > total_cap {
            return false;
        }
        if self.injective {
            if self.gn > self.hostable {
                return false;
            }
            let total_edge_dem: i64 = self.dem_edge.iter().sum();
            if total_edge_dem > self.res_edge.iter().sum::<i64>() {
                return false;
            }
            // degree domination: the k-th largest guest degree needs a host
            // node offering at least that many usable links
            let mut gd: Vec<usize> = self.g_adj.iter().map(Vec::len).collect();
            let mut hd: Vec<usize> = (0..self.hn)
                .map(|h| self.h_adj[h].iter().map(|&(_, e)| (self.res_edge[e] / self.min_edge_dem.max(1)) as usize).sum())
                .collect();
            gd.sort_unstable_by(|a, b| b.cmp(a));
            hd.sort_unstable_by(|a, b| b.cmp(a));
            if gd.iter().zip(&hd).any(|(g, h)| g > h) {
                return false;
            }
        }
        true
    }

    /// Fewest candidate hosts first, then most assigned neighbours, then
    /// highest degree.
    fn pick(&self, domains: &[Vec<NodeId>]) -> NodeId {
        (0..self.gn)
            .filter(|&u| self.map[u] == NONE)
            .min_by_key(|&u| (domains[u].len(), std::cmp::Reverse(self.links[u]), std::cmp::Reverse(self.g_adj[u].len()), u))
            .expect("unassigned node")
    }

    fn free_units(&self, h: NodeId) -> i64 {
        self.h_adj[h].iter().map(|&(_, e)| self.res_edge[e] / self.min_edge_dem.max(1)).sum()
    }

    fn twin_ok(&self, u: NodeId, h: NodeId) -> bool {
        let strictly = self.injective;
        let before_ok = self.twin_before[u].iter().all(|&a| {
            let ha = self.map[a];
            ha == NONE || if strictly { ha < h } else { ha <= h }
        });
        before_ok
            && self.twin_after[u].iter().all(|&b| {
                let hb = self.map[b];
                hb == NONE || if strictly { h < hb } else { h <= hb }
            })
    }

    /// Links at `h` needed by guest node `u` placed there: every guest link
    /// to a neighbour that cannot share `h` must leave over some host link,
    /// and a host link carries at most `cap / min demand` of them.
    fn links_fit(&self, u: NodeId, h: NodeId, spare_after: i64, only_open: bool) -> bool {
        let mut need_count = 0usize;
        let mut need_sum = 0i64;
        let mut min_need = i64::MAX;
        for &(w, e) in &self.g_adj[u] {
            if only_open && self.paths[e].is_some() {
                continue;
            }
            let must_leave = match self.map[w] {
                NONE => spare_after < self.dem_node[w],
                hw => hw != h,
            };
            if must_leave {
                need_count += 1;
                need_sum += self.dem_edge[e];
                min_need = min_need.min(self.dem_edge[e]);
            }
        }
        if need_count == 0 {
            return true;
        }
        let mut have_count = 0usize;
        let mut have_sum = 0i64;
        for &(_, e) in &self.h_adj[h] {
            if self.res_edge[e] >= min_need {
                have_count += (self.res_edge[e] / min_need.max(1)) as usize;
                have_sum += self.res_edge[e];
            }
        }
        need_count <= have_count && need_sum <= have_sum
    }

    fn set_node_res(&mut self, h: NodeId, value: i64) {
        let was = self.res_node[h] >= self.min_dem;
        self.res_node[h] = value;
        let now = value >= self.min_dem;
        match (was, now) {
            (true, false) => self.hostable -= 1,
            (false, true) => self.hostable += 1,
            _ => {}
        }
    }

    fn assign(&mut self, u: NodeId, h: NodeId) {
        self.map[u] = h;
        self.assigned += 1;
        self.set_node_res(h, self.res_node[h] - self.dem_node[u]);
        for i in 0..self.g_adj[u].len() {
            let w = self.g_adj[u][i].0;
            self.links[w] += 1;
        }
    }

    fn unassign(&mut self, u: NodeId, h: NodeId) {
        for i in 0..self.g_adj[u].len() {
            let w = self.g_adj[u][i].0;
            self.links[w] -= 1;
        }
        self.set_node_res(h, self.res_node[h] + self.dem_node[u]);
        self.assigned -= 1;
        self.map[u] = NONE;
    }

    fn place(&mut self) -> Result<bool> {
        if self.assigned == self.gn {
            return Ok(true);
        }
        let Some(domains) = self.domains(true) else {
            return Ok(false);
        };
        if self.injective && !distinct_hosts_exist(&domains, self.hn) {
            return Ok(false);
        }
        let u = self.pick(&domains);
        let mut candidates = domains[u].clone();
        // best connected hosts first
        candidates.sort_by_key(|&h| (std::cmp::Reverse(self.free_units(h)), h));
        for h in candidates {
            if !self.twin_ok(u, h) {
                continue;
            }
            self.tick()?;
            self.assign(u, h);
            let pending: Vec<usize> = self.g_adj[u]
                .iter()
                .filter(|&&(w, _)| w != u && self.map[w] != NONE)
                .map(|&(_, e)| e)
                .collect();
            if self.flow_ok(u, &pending) && self.route(u, &pending, 0)? {
                return Ok(true);
            }
            self.unassign(u, h);
        }
        Ok(false)
    }

    /// Remaining-capacity bounds checked after every completed placement.
    fn forward_ok(&self) -> bool {
        let remaining = self.gn - self.assigned;
        if remaining > 0 {
            if self.injective && remaining > self.hostable {
                return false;
            }
            let rem_dem: i64 = (0..self.gn).filter(|&u| self.map[u] == NONE).map(|u| self.dem_node[u]).sum();
            let room: i64 = self.res_node.iter().filter(|&&r| r >= self.min_dem).sum();
            if rem_dem > room {
                return false;
            }
        }
        if self.injective {
            let unrouted: i64 = (0..self.g_ends.len()).filter(|&e| self.paths[e].is_none()).map(|e| self.dem_edge[e]).sum();
            if unrouted > self.res_edge.iter().sum::<i64>() {
                return false;
            }
        }
        (0..self.gn).all(|u| {
            let h = self.map[u];
            h == NONE || self.open[u] == 0 || self.links_fit(u, h, self.res_node[h], true)
        })
    }

    fn reach_ok(&self) -> bool {
        match self.domains(true) {
            None => false,
            Some(d) => !self.injective || distinct_hosts_exist(&d, self.hn),
        }
    }

    /// Candidate hosts of every unassigned guest node: enough spare capacity,
    /// reachable from the images of all assigned neighbours and, when `full`,
    /// with enough free incident links. `None` if some node has none left.
    fn domains(&self, full: bool) -> Option<Vec<Vec<NodeId>>> {
        let mut allowed: Vec<Option<Vec<bool>>> = vec![None; self.gn];
        for u in 0..self.gn {
            let h = self.map[u];
            if h == NONE || self.open[u] == 0 {
                continue;
            }
            let mut reach: Option<Vec<bool>> = None;
            for &(w, e) in &self.g_adj[u] {
                if self.map[w] != NONE {
                    continue;
                }
                let r = reach.get_or_insert_with(|| self.reachable_from(h, self.dem_edge[e]));
                let mut any = false;
                let slot = allowed[w].get_or_insert_with(|| vec![true; self.hn]);
                for z in 0..self.hn {
                    let ok = slot[z] && self.res_node[z] >= self.dem_node[w] && (r[z] || (z == h && self.res_node[h] >= self.dem_node[w]));
                    slot[z] = ok;
                    any |= ok;
                }
                if !any {
                    return None;
                }
            }
        }
        if !full {
            return Some(Vec::new());
        }
        let mut out = vec![Vec::new(); self.gn];
        for w in (0..self.gn).filter(|&w| self.map[w] == NONE) {
            let slot = allowed[w].as_deref();
            out[w] = (0..self.hn)
                .filter(|&z| {
                    slot.is_none_or(|s| s[z])
                        && self.res_node[z] >= self.dem_node[w]
                        && self.links_fit(w, z, self.res_node[z] - self.dem_node[w], false)
                })
                .collect();
            if out[w].is_empty() {
                return None;
            }
        }
        Some(out)
    }

    /// Enough link-disjoint relay paths leave the image of `u` to carry the
    /// given links to their other endpoints, ignoring relay costs.
    fn flow_ok(&self, u: NodeId, links: &[usize]) -> bool {
        let src = self.map[u];
        let mut sink = vec![0usize; self.hn];
        let mut need = 0usize;
        let mut unit = i64::MAX;
        for &e in links {
            let (a, b) = self.g_ends[e];
            let t = self.map[if a == u { b } else { a }];
            if t != src {
                sink[t] += 1;
                need += 1;
                unit = unit.min(self.dem_edge[e]);
            }
        }
        if need <= 1 {
            return true;
        }
        let cap = |eid: usize| if unit == 0 { need as i64 } else { self.res_edge[eid] / unit };
        // flow[eid] is signed, positive along (lower id -> higher id)
        let mut flow = vec![0i64; self.res_edge.len()];
        let mut got = 0usize;
        while got < need {
            let mut prev: Vec<Option<(NodeId, usize)>> = vec![None; self.hn];
            let mut seen = vec![false; self.hn];
            seen[src] = true;
            let mut queue = VecDeque::from([src]);
            let mut end = None;
            'bfs: while let Some(y) = queue.pop_front() {
                let relay = y == src || self.res_node[y] >= self.eps;
                for &(x, eid) in &self.h_adj[y] {
                    if seen[x] {
                        continue;
                    }
                    let along = if y < x { flow[eid] } else { -flow[eid] };
                    if along >= cap(eid) || (!relay && along >= 0) {
                        continue;
                    }
                    seen[x] = true;
                    prev[x] = Some((y, eid));
                    if sink[x] > 0 {
                        end = Some(x);
                        break 'bfs;
                    }
                    queue.push_back(x);
                }
            }
            let Some(t) = end else { return false };
            sink[t] -= 1;
            got += 1;
            let mut x = t;
            while let Some((y, eid)) = prev[x] {
                flow[eid] += if y < x { 1 } else { -1 };
                x = y;
            }
        }
        true
    }

    /// Host nodes reachable from `start` over links that can carry `demand`,
    /// relaying only through nodes with spare relay capacity.
    fn reachable_from(&self, start: NodeId, demand: i64) -> Vec<bool> {
        let mut seen = vec![false; self.hn];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(y) = queue.pop_front() {
            if y != start && self.res_node[y] < self.eps {
                continue;
            }
            for &(x, eid) in &self.h_adj[y] {
                if !seen[x] && self.res_edge[eid] >= demand {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        seen[start] = false;
        seen
    }

    fn route(&mut self, u: NodeId, pending: &[usize], k: usize) -> Result<bool> {
        if k == pending.len() {
            if !self.forward_ok() {
                return Ok(false);
            }
            return self.place();
        }
        let e = pending[k];
        // grow from the older endpoint, where resources are scarcer
        let (a, b) = self.g_ends[e];
        let (ha, hb) = if a == u { (self.map[b], self.map[a]) } else { (self.map[a], self.map[b]) };
        if ha == hb {
            self.commit_path(e, vec![ha]);
            if self.route(u, pending, k + 1)? {
                return Ok(true);
            }
            self.release_path(e);
            return Ok(false);
        }
        let dist = self.distances_to(hb, self.dem_edge[e]);
        if dist[ha] == usize::MAX {
            return Ok(false);
        }
        let mut visited = vec![false; self.hn];
        visited[ha] = true;
        let slack = if self.injective { self.hostable.saturating_sub(self.gn - self.assigned) } else { usize::MAX };
        let mut nodes = vec![ha];
        self.extend_path(u, e, hb, &dist, &mut visited, &mut nodes, slack, pending, k)
    }

    /// BFS distances to `target` over links that can still carry `demand`,
    /// passing only through nodes able to relay.
    fn distances_to(&self, target: NodeId, demand: i64) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.hn];
        dist[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(y) = queue.pop_front() {
            if y != target && self.res_node[y] < self.eps {
                continue;
            }
            for &(x, eid) in &self.h_adj[y] {
                if dist[x] == usize::MAX && self.res_edge[eid] >= demand {
                    dist[x] = dist[y] + 1;
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    /// Whether `target` can still be reached from `from` without touching
    /// the nodes already on the path.
    fn reaches(&self, from: NodeId, target: NodeId, demand: i64, visited: &[bool]) -> bool {
        let mut seen = visited.to_vec();
        let mut queue = VecDeque::from([from]);
        while let Some(y) = queue.pop_front() {
            for &(x, eid) in &self.h_adj[y] {
                if self.res_edge[eid] < demand {
                    continue;
                }
                if x == target {
                    return true;
                }
                if !seen[x] && self.res_node[x] >= self.eps {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        false
    }

    fn relay_costs_host(&self, x: NodeId) -> bool {
        self.res_node[x] >= self.min_dem && self.res_node[x] - self.eps < self.min_dem
    }

    /// Grows a simple path towards `target`, nearest neighbours first.
    /// Resources are charged as the prefix grows so that hopeless prefixes
    /// are cut before their completions are enumerated.
    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        &mut self,
        u: NodeId,
        e: usize,
        target: NodeId,
        dist: &[usize],
        visited: &mut [bool],
        nodes: &mut Vec<NodeId>,
        slack: usize,
        pending: &[usize],
        k: usize,
    ) -> Result<bool> {
        let x = *nodes.last().expect("path start");
        let demand = self.dem_edge[e];
        let mut next: Vec<(NodeId, usize)> =
            self.h_adj[x].iter().copied().filter(|&(y, eid)| self.res_edge[eid] >= demand && dist[y] != usize::MAX).collect();
        next.sort_by_key(|&(y, _)| (dist[y], y));
        for (y, eid) in next {
            if y == target {
                self.tick()?;
                nodes.push(y);
                self.res_edge[eid] -= demand;
                self.commit_path(e, nodes.clone());
                if self.route(u, pending, k + 1)? {
                    return Ok(true);
                }
                self.release_path(e);
                self.res_edge[eid] += demand;
                nodes.pop();
                continue;
            }
            if visited[y] || self.res_node[y] < self.eps {
                continue;
            }
            let costs = self.relay_costs_host(y);
            if costs && slack == 0 {
                continue;
            }
            self.tick()?;
            visited[y] = true;
            nodes.push(y);
            self.res_edge[eid] -= demand;
            self.set_node_res(y, self.res_node[y] - self.eps);
            let found = self.reaches(y, target, demand, visited)
                && self.reach_ok()
                && self.flow_ok(u, &pending[k + 1..])
                && self.extend_path(u, e, target, dist, visited, nodes, if costs { slack - 1 } else { slack }, pending, k)?;
            self.set_node_res(y, self.res_node[y] + self.eps);
            self.res_edge[eid] += demand;
            nodes.pop();
            visited[y] = false;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn commit_path(&mut self, e: usize, path: Vec<NodeId>) {
        let (a, b) = self.g_ends[e];
        self.open[a] -= 1;
        self.open[b] -= 1;
        self.paths[e] = Some(path);
    }

    fn release_path(&mut self, e: usize) {
        let (a, b) = self.g_ends[e];
        self.open[a] += 1;
        self.open[b] += 1;
        self.paths[e] = None;
    }

    fn witness(&self, epsilon: Weight) -> Embedding {
        let mut edge_map = BTreeMap::new();
        for (e, &(u, v)) in self.g_ends.iter().enumerate() {
            let mut p = self.paths[e].clone().expect("all links routed");
            if p[0] != self.map[u] {
                p.reverse();
            }
            edge_map.insert((u, v), p);
        }
        debug_assert!(self.h_cap_node.len() == self.hn);
        Embedding { node_map: self.map.clone(), edge_map, epsilon }
    }
}

/// Whether the unassigned guest nodes (non-empty domains) can be given
/// pairwise distinct hosts.
fn distinct_hosts_exist(domains: &[Vec<NodeId>], hn: usize) -> bool {
    fn augment(u: usize, domains: &[Vec<NodeId>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &h in &domains[u] {
            if !seen[h] {
                seen[h] = true;
                if owner[h] == NONE || augment(owner[h], domains, owner, seen) {
                    owner[h] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![NONE; hn];
    for u in 0..domains.len() {
        if !domains[u].is_empty() && !augment(u, domains, &mut owner, &mut vec![false; hn]) {
            return false;
        }
    }
    true
}

/// Interchangeable guest nodes: swapping any two members of a class is an
/// automorphism, so their images may be required to be ordered.
fn twin_constraints(g: &CapGraph) -> (Vec<Vec<NodeId>>, Vec<Vec<NodeId>>) {
    let n = g.node_count();
    let twins = |a: NodeId, b: NodeId| {
        g.node(a).demand == g.node(b).demand
            && g.degree(a) == g.degree(b)
            && g.neighbors(a).filter(|&w| w != b).all(|w| g.edge(b, w).map(|x| &x.demand) == g.edge(a, w).map(|x| &x.demand))
    };
    let mut classes: Vec<Vec<NodeId>> = Vec::new();
    for v in 0..n {
        match classes.iter_mut().find(|c| c.iter().all(|&m| twins(m, v))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut before = vec![Vec::new(); n];
    let mut after = vec![Vec::new(); n];
    for c in classes {
        for w in c.windows(2) {
            after[w[0]].push(w[1]);
            before[w[1]].push(w[0]);
        }
    }
    (before, after)
}
