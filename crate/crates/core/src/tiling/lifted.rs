use crate::error::{Error, Result};
use crate::reduction::VertexKind;

pub type VertexId = u32;
pub type EdgeIdx = u32;

const CHUNK: usize = 1 << 12;

/// Lifted vertices with constant-time `new`, `join` and `next`.
///
/// Each vertex owns three tables of `r` entries: `index[k]` is the radial
/// edge of its `k`-th join, `rev[e]` the slot of edge `e`, and `slot[k]` the
/// Γ edge created by that join. Tables live in chunks that are zeroed
/// lazily by the allocator and never cleared afterwards, so they hold stale
/// entries from earlier vertices or queries. Only slots below `count` are
/// trusted, and `next` confirms `index[rev[e]] == e` before answering.
#[derive(Debug)]
pub struct LiftedGraph {
    r: usize,
    header: Vec<u8>,
    count: Vec<u16>,
    index: Vec<Box<[u16]>>,
    rev: Vec<Box<[u16]>>,
    slot: Vec<Box<[u32]>>,
    ends: Vec<[VertexId; 2]>,
    edge_id: Vec<u16>,
    capacity: usize,
}

const KIND_T: u8 = 1;
const FLIPPED: u8 = 2;

impl LiftedGraph {
    pub fn new(r: usize, capacity: usize) -> Result<Self> {
        if r == 0 || r > u16::MAX as usize {
            return Err(Error::Unsupported(format!("radial degree {r} out of range")));
        }
        Ok(LiftedGraph {
            r,
            header: Vec::with_capacity(capacity.min(1 << 20)),
            count: Vec::with_capacity(capacity.min(1 << 20)),
            index: Vec::new(),
            rev: Vec::new(),
            slot: Vec::new(),
            ends: Vec::new(),
            edge_id: Vec::new(),
            capacity,
        })
    }

    /// Forgets all vertices and edges, keeping the table chunks (and their
    /// stale contents) for reuse.
    pub fn reset(&mut self, capacity: usize) {
        self.header.clear();
        self.count.clear();
        self.ends.clear();
        self.edge_id.clear();
        self.capacity = capacity;
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.header.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Bytes held by table chunks, including ones not yet touched.
    pub fn table_bytes(&self) -> usize {
        self.index.len() * CHUNK * self.r * 8
    }

    pub fn new_vertex(&mut self, kind: VertexKind, flipped: bool) -> Result<VertexId> {
        let v = self.header.len();
        if v >= self.capacity {
            return Err(Error::ArenaExhausted(v));
        }
        if v / CHUNK >= self.index.len() {
            let n = CHUNK * self.r;
            self.index.push(vec![0u16; n].into_boxed_slice());
            self.rev.push(vec![0u16; n].into_boxed_slice());
            self.slot.push(vec![0u32; n].into_boxed_slice());
        }
        let mut h = 0;
        if kind == VertexKind::T {
            h |= KIND_T;
        }
        if flipped {
            h |= FLIPPED;
        }
        self.header.push(h);
        self.count.push(0);
        Ok(v as VertexId)
    }

    #[inline]
    pub fn kind(&self, v: VertexId) -> VertexKind {
        if self.header[v as usize] & KIND_T != 0 {
            VertexKind::T
        } else {
            VertexKind::S
        }
    }

    #[inline]
    pub fn flipped(&self, v: VertexId) -> bool {
        self.header[v as usize] & FLIPPED != 0
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.count[v as usize] as usize
    }

    #[inline]
    fn locate(&self, v: VertexId) -> (usize, usize) {
        let v = v as usize;
        (v / CHUNK, (v % CHUNK) * self.r)
    }

    /// Γ edge joined to `v` along radial edge `e`, after the round-trip check.
    #[inline]
    pub fn edge_at(&self, v: VertexId, e: u32) -> Option<EdgeIdx> {
        let (c, off) = self.locate(v);
        let k = self.rev[c][off + e as usize] as usize;
        if k < self.count[v as usize] as usize && self.index[c][off + k] as u32 == e {
            Some(self.slot[c][off + k])
        } else {
            None
        }
    }

    #[inline]
    pub fn next(&self, v: VertexId, e: u32) -> Option<VertexId> {
        self.edge_at(v, e).map(|x| self.other_end(x, v))
    }

    #[inline]
    pub fn other_end(&self, x: EdgeIdx, v: VertexId) -> VertexId {
        let [a, b] = self.ends[x as usize];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(s-end, t-end)` of a Γ edge.
    #[inline]
    pub fn ends(&self, x: EdgeIdx) -> (VertexId, VertexId) {
        let [a, b] = self.ends[x as usize];
        (a, b)
    }

    #[inline]
    pub fn edge_id(&self, x: EdgeIdx) -> u32 {
        self.edge_id[x as usize] as u32
    }

    /// Records that `v` and `w` are adjacent across radial edge `e`.
    pub fn join(&mut self, v: VertexId, w: VertexId, e: u32) -> EdgeIdx {
        debug_assert!((e as usize) < self.r);
        debug_assert_ne!(self.kind(v), self.kind(w), "join of same-type vertices");
        debug_assert!(self.edge_at(v, e).is_none(), "join repeated on ({v}, {e})");
        debug_assert!(self.edge_at(w, e).is_none(), "join repeated on ({w}, {e})");
        let x = self.ends.len() as EdgeIdx;
        let pair = if self.kind(v) == VertexKind::S { [v, w] } else { [w, v] };
        self.ends.push(pair);
        self.edge_id.push(e as u16);
        for u in [v, w] {
            let (c, off) = self.locate(u);
            let k = self.count[u as usize];
            self.index[c][off + k as usize] = e as u16;
            self.rev[c][off + e as usize] = k;
            self.slot[c][off + k as usize] = x;
            self.count[u as usize] = k + 1;
        }
        x
    }

    /// Radial edge ids joined at `v`, in join order.
    pub fn joined(&self, v: VertexId) -> impl Iterator<Item = (u32, EdgeIdx)> + '_ {
        let (c, off) = self.locate(v);
        (0..self.degree(v)).map(move |k| (self.index[c][off + k] as u32, self.slot[c][off + k]))
    }

    /// Overwrites every table entry with pseudo-random junk (testing aid).
    pub fn scribble(&mut self, seed: u64) {
        let mut x = seed | 1;
        let mut junk = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        for c in 0..self.index.len() {
            for i in 0..self.index[c].len() {
                self.index[c][i] = (junk() % self.r as u64) as u16;
                self.rev[c][i] = (junk() % self.r as u64) as u16;
                self.slot[c][i] = junk() as u32;
            }
        }
    }
}
