//! Exact transportation between two block distributions under Hamming cost,
//! by successive shortest paths with Dijkstra potentials.

use alloc::vec;
use alloc::vec::Vec;

use super::BlockDistribution;
use crate::error::{Error, Result};
use crate::word::{hamming_count, Word};

/// Largest support on either side of a transport problem.
pub const TRANSPORT_SUPPORT_CAP: usize = 4096;

const EPS: f64 = 1e-15;

/// Solution of a transport problem; costs are per symbol (divided by `k`).
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    /// cost of the computed coupling
    pub primal: f64,
    /// value of a feasible dual solution: a certified lower bound
    pub dual: f64,
    /// `(source word, target word, mass)` with positive mass
    pub plan: Vec<(Word, Word, f64)>,
}

/// Certified lower bound on `d̄` between invariant measures with the given
/// `k`-marginals: the transport dual divided by `k`, clamped at zero.
pub fn ot_lower_bound(a: &BlockDistribution, b: &BlockDistribution) -> Result<f64> {
    Ok(optimal_transport(a, b)?.dual.max(0.0))
}

pub fn optimal_transport(a: &BlockDistribution, b: &BlockDistribution) -> Result<Transport> {
    if a.k() != b.k() {
        return Err(Error::BlockLengthMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    let (src, supply): (Vec<&Word>, Vec<f64>) = a.probs().iter().map(|(w, &p)| (w, p)).unzip();
    let (dst, demand): (Vec<&Word>, Vec<f64>) = b.probs().iter().map(|(w, &p)| (w, p)).unzip();
    if src.is_empty() || dst.is_empty() {
        return Err(Error::EmptySet);
    }
    if src.len().max(dst.len()) > TRANSPORT_SUPPORT_CAP {
        return Err(Error::ResourceLimit {
            what: "transport support",
            limit: TRANSPORT_SUPPORT_CAP as u64,
        });
    }
    let cost: Vec<Vec<f64>> = src
        .iter()
        .map(|u| dst.iter().map(|w| hamming_count(u, w) as f64).collect())
        .collect();
    let sol = Solver::new(&cost, &supply, &demand).run()?;
    let k = a.k() as f64;
    let mut plan = Vec::new();
    let mut primal = 0.0;
    for (i, row) in sol.flow.iter().enumerate() {
        for (j, &f) in row.iter().enumerate() {
            if f > 0.0 {
                primal += f * cost[i][j];
                plan.push((src[i].clone(), dst[j].clone(), f));
            }
        }
    }
    // repair the dual: u_i = min_j (c_ij - v_j) is feasible whatever v is
    let v = &sol.sink_potential;
    let mut dual: f64 = demand.iter().zip(v).map(|(b, v)| b * v).sum();
    for (i, &s) in supply.iter().enumerate() {
        let u = cost[i]
            .iter()
            .zip(v)
            .map(|(c, v)| c - v)
            .fold(f64::INFINITY, f64::min);
        dual += s * u;
    }
    Ok(Transport {
        primal: primal / k,
        dual: dual / k,
        plan,
    })
}

struct Solution {
    flow: Vec<Vec<f64>>,
    sink_potential: Vec<f64>,
}

/// Min-cost flow on the bipartite network `S -> sources -> sinks -> T`.
struct Solver<'a> {
    cost: &'a [Vec<f64>],
    supply: &'a [f64],
    demand: &'a [f64],
    n: usize,
    m: usize,
    out: Vec<f64>,
    inflow: Vec<f64>,
    flow: Vec<Vec<f64>>,
    pot: Vec<f64>,
}

// node numbering: S = 0, source i = 1 + i, sink j = 1 + n + j, T = 1 + n + m
impl<'a> Solver<'a> {
    fn new(cost: &'a [Vec<f64>], supply: &'a [f64], demand: &'a [f64]) -> Self {
        let (n, m) = (supply.len(), demand.len());
        Solver {
            cost,
            supply,
            demand,
            n,
            m,
            out: vec![0.0; n],
            inflow: vec![0.0; m],
            flow: vec![vec![0.0; m]; n],
            pot: vec![0.0; n + m + 2],
        }
    }

    fn run(mut self) -> Result<Solution> {
        let target = self
            .supply
            .iter()
            .sum::<f64>()
            .min(self.demand.iter().sum());
        let mut sent = 0.0;
        let cap = 8 * (self.n + self.m) * (self.n + self.m) + 64;
        for _ in 0..cap {
            if sent >= target - 1e-13 {
                return Ok(self.finish());
            }
            let Some((dist, pred)) = self.dijkstra() else {
                return Ok(self.finish());
            };
            let t = self.n + self.m + 1;
            let dt = dist[t];
            for (p, d) in self.pot.iter_mut().zip(&dist) {
                *p += d.min(dt);
            }
            sent += self.augment(&pred);
        }
        Err(Error::ResourceLimit {
            what: "transport augmentations",
            limit: cap as u64,
        })
    }

    fn finish(self) -> Solution {
        let sink_potential = (0..self.m)
            .map(|j| self.pot[1 + self.n + j] - self.pot[0])
            .collect();
        Solution {
            flow: self.flow,
            sink_potential,
        }
    }

    /// Residual arcs leaving `u` as `(v, cost)`.
    fn arcs(&self, u: usize, visit: &mut impl FnMut(usize, f64)) {
        let (n, m) = (self.n, self.m);
        if u == 0 {
            for i in 0..n {
                if self.supply[i] - self.out[i] > EPS {
                    visit(1 + i, 0.0);
                }
            }
        } else if u <= n {
            let i = u - 1;
            if self.out[i] > EPS {
                visit(0, 0.0);
            }
            for j in 0..m {
                visit(1 + n + j, self.cost[i][j]);
            }
        } else if u <= n + m {
            let j = u - 1 - n;
            for i in 0..n {
                if self.flow[i][j] > EPS {
                    visit(1 + i, -self.cost[i][j]);
                }
            }
            if self.demand[j] - self.inflow[j] > EPS {
                visit(1 + n + m, 0.0);
            }
        } else {
            for j in 0..m {
                if self.inflow[j] > EPS {
                    visit(1 + n + j, 0.0);
                }
            }
        }
    }

    /// Dense Dijkstra on reduced costs from `S`; `None` when `T` is unreachable.
    fn dijkstra(&self) -> Option<(Vec<f64>, Vec<usize>)> {
        let total = self.n + self.m + 2;
        let mut dist = vec![f64::INFINITY; total];
        let mut pred = vec![usize::MAX; total];
        let mut done = vec![false; total];
        dist[0] = 0.0;
        loop {
            let mut u = usize::MAX;
            for v in 0..total {
                if !done[v] && dist[v].is_finite() && (u == usize::MAX || dist[v] < dist[u]) {
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            let du = dist[u];
            let pu = self.pot[u];
            let pot = &self.pot;
            self.arcs(u, &mut |v, c| {
                // clamp tiny negative reduced costs from rounding
                let nd = du + (c + pu - pot[v]).max(0.0);
                if !done[v] && nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = u;
                }
            });
        }
        let t = total - 1;
        dist[t].is_finite().then_some((dist, pred))
    }

    fn augment(&mut self, pred: &[usize]) -> f64 {
        let (n, m) = (self.n, self.m);
        let t = n + m + 1;
        let mut path = vec![t];
        while *path.last().expect("nonempty") != 0 {
            let v = *path.last().expect("nonempty");
            path.push(pred[v]);
        }
        path.reverse();
        let mut delta = f64::INFINITY;
        for w in path.windows(2) {
            delta = delta.min(self.residual(w[0], w[1]));
        }
        for w in path.windows(2) {
            self.push(w[0], w[1], delta);
        }
        delta
    }

    fn node(&self, u: usize) -> Node {
        match u {
            0 => Node::S,
            u if u <= self.n => Node::Source(u - 1),
            u if u <= self.n + self.m => Node::Sink(u - 1 - self.n),
            _ => Node::T,
        }
    }

    fn residual(&self, u: usize, v: usize) -> f64 {
        match (self.node(u), self.node(v)) {
            (Node::S, Node::Source(i)) => self.supply[i] - self.out[i],
            (Node::Source(i), Node::S) => self.out[i],
            (Node::Source(_), Node::Sink(_)) => f64::INFINITY,
            (Node::Sink(j), Node::Source(i)) => self.flow[i][j],
            (Node::Sink(j), Node::T) => self.demand[j] - self.inflow[j],
            (Node::T, Node::Sink(j)) => self.inflow[j],
            _ => unreachable!("no such residual arc"),
        }
    }

    fn push(&mut self, u: usize, v: usize, delta: f64) {
        match (self.node(u), self.node(v)) {
            (Node::S, Node::Source(i)) => self.out[i] += delta,
            (Node::Source(i), Node::S) => self.out[i] -= delta,
            (Node::Source(i), Node::Sink(j)) => self.flow[i][j] += delta,
            (Node::Sink(j), Node::Source(i)) => self.flow[i][j] -= delta,
            (Node::Sink(j), Node::T) => self.inflow[j] += delta,
            (Node::T, Node::Sink(j)) => self.inflow[j] -= delta,
            _ => unreachable!("no such residual arc"),
        }
    }
}

#[derive(Clone, Copy)]
enum Node {
    S,
    Source(usize),
    Sink(usize),
    T,
}
