use crate::error::{internal, Error, Result};
use crate::reduction::{RadialGraph, RadialWalk, VertexKind};

use super::lifted::{EdgeIdx, LiftedGraph, VertexId};

/// The quadrilateral traced `a –id→ b –e2→ x –e1→ y –e0→ a` from a lifted
/// directed edge, with the local orientations of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quad {
    pub e2: u32,
    pub e1: u32,
    pub e0: u32,
    pub flip_x: bool,
    pub flip_y: bool,
}

#[inline]
pub fn trace_quad(radial: &RadialGraph, kind_a: VertexKind, kind_b: VertexKind, flip_b: bool, id: u32) -> Quad {
    let e2 = radial.succ(kind_b, flip_b, id);
    let flip_x = flip_b ^ radial.is_twisted(e2);
    let e1 = radial.succ(kind_a, flip_x, e2);
    let flip_y = flip_x ^ radial.is_twisted(e1);
    let e0 = radial.succ(kind_b, flip_y, e1);
    Quad { e2, e1, e0, flip_x, flip_y }
}

/// Relevant region of a lifted radial walk, stored as the adjacency graph
/// Γ of its faces.
#[derive(Debug)]
pub struct RelevantRegion<'a> {
    radial: &'a RadialGraph,
    graph: LiftedGraph,
    start: VertexId,
    current: VertexId,
    weight: usize,
}

impl<'a> RelevantRegion<'a> {
    /// Region of the null path: one face of the given type.
    pub fn new(radial: &'a RadialGraph, start: VertexKind, capacity: usize) -> Result<Self> {
        let graph = LiftedGraph::new(radial.r(), capacity)?;
        Self::with_graph(radial, graph, start, capacity)
    }

    /// Like [`RelevantRegion::new`], reusing the tables of an earlier graph.
    pub fn with_graph(radial: &'a RadialGraph, mut graph: LiftedGraph, start: VertexKind, capacity: usize) -> Result<Self> {
        if graph.r() != radial.r() {
            graph = LiftedGraph::new(radial.r(), capacity)?;
        }
        graph.reset(capacity.max(1));
        let v = graph.new_vertex(start, false)?;
        Ok(RelevantRegion { radial, graph, start: v, current: v, weight: 0 })
    }

    /// Lifts a whole walk, starting from a fresh region.
    pub fn build(radial: &'a RadialGraph, walk: &RadialWalk) -> Result<Self> {
        let mut region = Self::new(radial, walk.start_kind(), capacity_for(walk.crossing_weight()))?;
        for &e in &walk.edges {
            region.step(e)?;
        }
        Ok(region)
    }

    /// Extends the lift by one radial edge, mirroring across its line when
    /// that line has not been crossed yet. Returns the Γ edge crossed.
    pub fn step(&mut self, e: u32) -> Result<EdgeIdx> {
        if e as usize >= self.radial.r() {
            return Err(Error::InvalidWalk(format!("radial edge {e} out of range")));
        }
        let v = self.current;
        let x = match self.graph.edge_at(v, e) {
            Some(x) => x,
            None => {
                self.mirror(v, e)?;
                match self.graph.edge_at(v, e) {
                    Some(x) => x,
                    None => return internal("mirror left the crossed edge unjoined"),
                }
            }
        };
        self.current = self.graph.other_end(x, v);
        self.weight += 1;
        let bound = (5 * self.weight).max(1);
        if self.graph.vertex_count() > bound {
            return Err(Error::RegionBound { faces: self.graph.vertex_count(), weight: self.weight });
        }
        Ok(x)
    }

    /// Reflects the chain of faces along the line of `e` through `v`.
    fn mirror(&mut self, v: VertexId, e: u32) -> Result<()> {
        let radial = self.radial;
        let g = &mut self.graph;
        let kind_v = g.kind(v);
        let w = g.new_vertex(kind_v.other(), g.flipped(v) ^ radial.is_twisted(e))?;
        g.join(v, w, e);

        // One side: quad a –id→ b –e2→ x –e1→ y –e0→ a, with a old and b new.
        let (mut a, mut b, mut id) = (v, w, e);
        loop {
            let q = trace_quad(radial, g.kind(a), g.kind(b), g.flipped(b), id);
            let Some(y) = g.next(a, q.e0) else { break };
            debug_assert_eq!(g.flipped(y), q.flip_y);
            let x = g.new_vertex(g.kind(a), q.flip_x)?;
            g.join(y, x, q.e1);
            g.join(x, b, q.e2);
            (a, b, id) = (y, x, q.e1);
        }
        // Other side: quad b –id→ a –e2→ x –e1→ y –e0→ b, with x old.
        let (mut a, mut b, mut id) = (v, w, e);
        loop {
            let q = trace_quad(radial, g.kind(b), g.kind(a), g.flipped(a), id);
            let Some(x) = g.next(a, q.e2) else { break };
            debug_assert_eq!(g.flipped(x), q.flip_x);
            let y = g.new_vertex(g.kind(a), q.flip_y)?;
            g.join(x, y, q.e1);
            g.join(y, b, q.e0);
            (a, b, id) = (x, y, q.e1);
        }
        Ok(())
    }

    pub fn radial(&self) -> &'a RadialGraph {
        self.radial
    }

    pub fn graph(&self) -> &LiftedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LiftedGraph {
        self.graph
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn current(&self) -> VertexId {
        self.current
    }

    /// Crossing weight processed so far.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn face_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Whether the lift processed so far is closed.
    pub fn is_closed(&self) -> bool {
        self.start == self.current
    }

    #[inline]
    pub fn succ(&self, v: VertexId, e: u32) -> u32 {
        self.radial.succ(self.graph.kind(v), self.graph.flipped(v), e)
    }

    /// Quad traced from the directed Γ edge `tail → head` (id `e`), with the
    /// region vertices `x` (next to `head`) and `y` (next to `tail`).
    pub fn quad_after(&self, tail: VertexId, head: VertexId, e: u32) -> (Quad, Option<VertexId>, Option<VertexId>) {
        let g = &self.graph;
        let q = trace_quad(self.radial, g.kind(tail), g.kind(head), g.flipped(head), e);
        (q, g.next(head, q.e2), g.next(tail, q.e0))
    }

    /// Γ edge facing `tail → head` across the quad traced from it, oriented
    /// `y → x` so that it crosses the same line in the same direction.
    pub fn facing(&self, tail: VertexId, head: VertexId, e: u32) -> Option<(VertexId, VertexId, EdgeIdx)> {
        let (q, x, y) = self.quad_after(tail, head, e);
        let (x, y) = (x?, y?);
        let f = self.graph.edge_at(y, q.e1)?;
        debug_assert_eq!(self.graph.other_end(f, y), x, "region graph is not induced");
        Some((y, x, f))
    }

    /// Some face has at least `r − 2` consecutive absent neighbours.
    pub fn has_dehn_face(&self) -> bool {
        let r = self.radial.r();
        let g = &self.graph;
        (0..g.vertex_count() as VertexId).any(|v| {
            let absent = r - g.degree(v);
            if absent < r.saturating_sub(2) {
                return false;
            }
            if absent == r {
                return true;
            }
            let start = g.joined(v).next().unwrap().0;
            let (mut run, mut best, mut e) = (0, 0, start);
            for _ in 0..2 * r {
                e = self.succ(v, e);
                if g.edge_at(v, e).is_none() {
                    run += 1;
                    best = best.max(run);
                } else {
                    run = 0;
                }
            }
            best >= r - 2
        })
    }

    /// Boundary vertices of the region incident to no interior edge: corners
    /// `(e, succ e)` of a face with both neighbours absent.
    pub fn convex_corner_count(&self) -> usize {
        let g = &self.graph;
        let mut n = 0;
        for v in 0..g.vertex_count() as VertexId {
            for e in 0..self.radial.r() as u32 {
                if g.edge_at(v, e).is_none() && g.edge_at(v, self.succ(v, e)).is_none() {
                    n += 1;
                }
            }
        }
        n
    }

    /// Checks that Γ is connected and that every edge joins its ends along
    /// its own radial id.
    pub fn check_consistency(&self) -> Result<()> {
        let g = &self.graph;
        let n = g.vertex_count();
        for x in 0..g.edge_count() as EdgeIdx {
            let (a, b) = g.ends(x);
            let e = g.edge_id(x);
            if g.next(a, e) != Some(b) || g.next(b, e) != Some(a) {
                return internal(format!("edge {x} is not mutually joined"));
            }
            if g.flipped(b) != g.flipped(a) ^ self.radial.is_twisted(e) {
                return internal(format!("edge {x} has inconsistent orientations"));
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for (_, x) in g.joined(v) {
                let w = g.other_end(x, v);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return internal("region graph is disconnected");
        }
        Ok(())
    }
}

/// Arena capacity for a walk of the given crossing weight.
pub fn capacity_for(weight: usize) -> usize {
    5 * weight + 1
}

/// Tags of maximal components of facing Γ edges: one tag per line segment
/// crossing the region.
#[derive(Clone, Debug)]
pub struct LineTags {
    pub tag: Vec<u32>,
    pub count: usize,
}

impl LineTags {
    pub fn of(region: &RelevantRegion<'_>) -> Result<Self> {
        let g = region.graph();
        let m = g.edge_count();
        let unset = u32::MAX;
        let mut tag = vec![unset; m];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for x0 in 0..m as EdgeIdx {
            if tag[x0 as usize] != unset {
                continue;
            }
            tag[x0 as usize] = count;
            stack.push(x0);
            let (mut edges, mut links) = (0usize, 0usize);
            while let Some(x) = stack.pop() {
                edges += 1;
                let (a, b) = g.ends(x);
                let e = g.edge_id(x);
                for (tail, head) in [(a, b), (b, a)] {
                    if let Some((_, _, f)) = region.facing(tail, head, e) {
                        links += 1;
                        if tag[f as usize] == unset {
                            tag[f as usize] = count;
                            stack.push(f);
                        }
                    }
                }
            }
            if links != 2 * (edges - 1) {
                return internal(format!("line component {count} is not a segment"));
            }
            count += 1;
        }
        Ok(LineTags { tag, count: count as usize })
    }
}
