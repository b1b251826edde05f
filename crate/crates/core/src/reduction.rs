//! Linear-time reduction of an embedded graph to a one-vertex, one-face
//! system, the term-product encoding of closed walks, and the two-vertex
//! radial graph that hosts encoded walks.
//!
//! Cut graph: a spanning tree `T` plus every edge whose dual is not in a
//! spanning tree of the dual avoiding `T`. Contracting `T` leaves the loops
//! `A = H ∖ T` on one vertex `s`, bounding a single polygon `P`. Corner `k`
//! of `P` sits just before the `k`-th letter of the facial word `f_H|_A`.

use std::collections::VecDeque;

use crate::error::{internal, Error, Result};
use crate::oracle::{GenWord, Letter};
use crate::surface_model::{edge_of, is_forward, opposite, CellularEmbedding, Dart, FaceStep, SurfaceClass};

pub const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct CutGraph {
    /// Input embedding switched so that every tree edge is untwisted.
    switched: CellularEmbedding,
    in_tree: Vec<bool>,
    in_h: Vec<bool>,
    /// Facial walk of `H` (the unique face).
    face: Vec<FaceStep>,
    /// Positions of `A`-darts in `face`, in order.
    a_positions: Vec<u32>,
    /// Generator index of each `A` edge, `NONE` elsewhere.
    generator: Vec<u32>,
    /// Non-`H` darts strictly inside each corner of the walk, flattened.
    corner_darts: Vec<Dart>,
    corner_start: Vec<u32>,
}

impl CutGraph {
    pub fn compute(emb: &CellularEmbedding) -> Result<Self> {
        let n_v = emb.vertex_count();
        let n_e = emb.edge_count();

        // BFS spanning tree, switching vertices so tree edges are untwisted.
        let mut by_vertex: Vec<Vec<Dart>> = vec![Vec::new(); n_v];
        for d in 0..emb.dart_count() as Dart {
            by_vertex[emb.origin(d) as usize].push(d);
        }
        let mut in_tree = vec![false; n_e];
        let mut flip = vec![false; n_v];
        let mut seen = vec![false; n_v];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &by_vertex[v as usize] {
                let w = emb.head(d) as usize;
                if !seen[w] {
                    seen[w] = true;
                    in_tree[edge_of(d)] = true;
                    flip[w] = flip[v as usize] ^ emb.is_twisted(edge_of(d));
                    queue.push_back(w as u32);
                }
            }
        }
        let switched = emb.switched(&flip)?;

        // Dual BFS tree over faces, never crossing a tree edge.
        let mut in_cotree = vec![false; n_e];
        let mut face_seen = vec![false; switched.face_count()];
        let mut queue = VecDeque::from([0usize]);
        face_seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for &step in &switched.faces()[f] {
                let e = edge_of(step.dart);
                if in_tree[e] {
                    continue;
                }
                let other = switched.side_face(switched.side_of(step) ^ 1);
                if !face_seen[other] {
                    face_seen[other] = true;
                    in_cotree[e] = true;
                    queue.push_back(other);
                }
            }
        }
        let in_h: Vec<bool> = (0..n_e).map(|e| !in_cotree[e]).collect();

        let mut generator = vec![NONE; n_e];
        let mut rank = 0;
        for e in 0..n_e {
            if in_h[e] && !in_tree[e] {
                generator[e] = rank;
                rank += 1;
            }
        }

        let mut cut = CutGraph {
            switched,
            in_tree,
            in_h,
            face: Vec::new(),
            a_positions: Vec::new(),
            generator,
            corner_darts: Vec::new(),
            corner_start: Vec::new(),
        };
        cut.trace_h_face()?;
        let class = emb.classify();
        if cut.a_positions.len() != class.relator_len() {
            return internal(format!(
                "cut graph has {} A-letters, expected {}",
                cut.a_positions.len(),
                class.relator_len()
            ));
        }
        Ok(cut)
    }

    fn trace_h_face(&mut self) -> Result<()> {
        let emb = &self.switched;
        let h_edges = self.in_h.iter().filter(|&&b| b).count();
        let Some(e0) = self.in_h.iter().position(|&b| b) else {
            self.corner_start = vec![0];
            return Ok(());
        };
        let start = FaceStep { dart: 2 * e0 as Dart, flipped: false };
        let mut s = start;
        loop {
            let pos = self.face.len();
            if pos > 2 * h_edges {
                return internal("facial walk of the cut graph does not close");
            }
            self.face.push(s);
            if !self.in_tree[edge_of(s.dart)] {
                self.a_positions.push(pos as u32);
            }
            self.corner_start.push(self.corner_darts.len() as u32);
            let flipped = s.flipped ^ emb.is_twisted(edge_of(s.dart));
            let mut d = emb.rot_in(opposite(s.dart), flipped);
            while !self.in_h[edge_of(d)] {
                self.corner_darts.push(d);
                d = emb.rot_in(d, flipped);
            }
            s = FaceStep { dart: d, flipped };
            if s == start {
                break;
            }
        }
        self.corner_start.push(self.corner_darts.len() as u32);
        if self.face.len() != 2 * h_edges {
            return internal(format!(
                "cut graph has more than one face ({} of {} sides on the first)",
                self.face.len(),
                2 * h_edges
            ));
        }
        Ok(())
    }

    pub fn switched(&self) -> &CellularEmbedding {
        &self.switched
    }

    pub fn in_tree(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    pub fn in_h(&self, e: usize) -> bool {
        self.in_h[e]
    }

    pub fn in_a(&self, e: usize) -> bool {
        self.in_h[e] && !self.in_tree[e]
    }

    pub fn tree_size(&self) -> usize {
        self.in_tree.iter().filter(|&&b| b).count()
    }

    pub fn a_count(&self) -> usize {
        self.a_positions.len() / 2
    }

    /// Facial word `f_H` of the cut graph.
    pub fn face(&self) -> &[FaceStep] {
        &self.face
    }

    /// `f_H|_A`, as steps.
    pub fn reduced_face(&self) -> Vec<FaceStep> {
        self.a_positions.iter().map(|&p| self.face[p as usize]).collect()
    }

    /// Letter of an `A` dart in the presentation `⟨A; f_H|_A⟩`.
    pub fn letter(&self, d: Dart) -> Option<Letter> {
        let g = self.generator[edge_of(d)];
        (g != NONE).then(|| 2 * g + (!is_forward(d)) as u32)
    }

    /// The relator `f_H|_A` as a word.
    pub fn relator(&self) -> GenWord {
        GenWord::new(
            self.reduced_face()
                .iter()
                .map(|s| self.letter(s.dart).expect("A dart"))
                .collect(),
        )
    }

    fn corner(&self, pos: usize) -> &[Dart] {
        let a = self.corner_start[pos] as usize;
        let b = self.corner_start[pos + 1] as usize;
        &self.corner_darts[a..b]
    }
}

/// Enter/exit pointers from darts of `G` into the facial word of `H`.
#[derive(Clone, Debug)]
pub struct EnterExitIndex {
    /// Per position of `f_H`: position of the last `A` letter at or before it.
    p: Vec<u32>,
    /// Per position of `f_H`: position of the first `A` letter at or after it.
    s: Vec<u32>,
    /// `A`-index of each position, `NONE` for tree positions.
    a_index: Vec<u32>,
    /// Per dart: `p(e_i)` of the corner it leaves from, `NONE` if in `H`.
    exit: Vec<u32>,
    /// Per dart: `s(e_{i+1})` of the corner it arrives at, `NONE` if in `H`.
    enter: Vec<u32>,
    /// Per `A` dart: chord of `P` realizing it, as `(from, to)` corners.
    a_chord: Vec<(u32, u32)>,
    r: u32,
}

impl EnterExitIndex {
    pub fn build(cut: &CutGraph) -> Result<Self> {
        let len = cut.face.len();
        let r = cut.a_positions.len() as u32;
        let darts = cut.switched.dart_count();
        let mut a_index = vec![NONE; len];
        for (k, &p) in cut.a_positions.iter().enumerate() {
            a_index[p as usize] = k as u32;
        }
        let mut p = vec![NONE; len];
        let mut s = vec![NONE; len];
        if r > 0 {
            let last = *cut.a_positions.last().unwrap();
            let mut cur = last;
            for i in 0..len {
                if a_index[i] != NONE {
                    cur = i as u32;
                }
                p[i] = cur;
            }
            let first = cut.a_positions[0];
            let mut cur = first;
            for i in (0..len).rev() {
                if a_index[i] != NONE {
                    cur = i as u32;
                }
                s[i] = cur;
            }
        }
        let mut exit = vec![NONE; darts];
        let mut enter = vec![NONE; darts];
        for i in 0..len {
            let next = (i + 1) % len;
            for &d in cut.corner(i) {
                if exit[d as usize] != NONE {
                    return internal(format!("dart {d} lies in two corners"));
                }
                exit[d as usize] = p[i];
                enter[opposite(d) as usize] = s[next];
            }
        }
        let mut a_chord = vec![(NONE, NONE); darts];
        for (k, &pos) in cut.a_positions.iter().enumerate() {
            let d = cut.face[pos as usize].dart;
            let k = k as u32;
            a_chord[d as usize] = (k, (k + 1) % r);
            if a_chord[opposite(d) as usize].0 == NONE {
                a_chord[opposite(d) as usize] = ((k + 1) % r, k);
            }
        }
        Ok(EnterExitIndex { p, s, a_index, exit, enter, a_chord, r })
    }

    pub fn p(&self, pos: usize) -> u32 {
        self.p[pos]
    }

    pub fn s(&self, pos: usize) -> u32 {
        self.s[pos]
    }

    /// `(exit handle, enter handle)` of a dart, `None` for darts of `H`.
    pub fn handles(&self, d: Dart) -> Option<(u32, u32)> {
        let x = self.exit[d as usize];
        (x != NONE).then(|| (x, self.enter[d as usize]))
    }

    /// Corner of `P` following the `A` letter at position `pos`.
    fn corner_after(&self, pos: u32) -> u32 {
        (self.a_index[pos as usize] + 1) % self.r
    }

    fn corner_before(&self, pos: u32) -> u32 {
        self.a_index[pos as usize]
    }

    /// Chord of `P` followed by a dart after contracting `T`, if nontrivial.
    #[inline]
    pub fn chord(&self, d: Dart) -> Option<(u32, u32)> {
        let (from, to) = self.a_chord[d as usize];
        if from != NONE {
            return Some((from, to));
        }
        let x = self.exit[d as usize];
        if x == NONE {
            return None;
        }
        let from = self.corner_after(x);
        let to = self.corner_before(self.enter[d as usize]);
        (from != to).then_some((from, to))
    }
}

/// A subword of `f_H|_A`, stored as its first and last letter positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub first: u32,
    pub last: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermProduct {
    pub terms: Vec<Term>,
    pub r: u32,
}

impl TermProduct {
    pub fn height(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenated letters of all terms.
    pub fn expand(&self, cut: &CutGraph) -> GenWord {
        let f = cut.relator();
        let mut out = Vec::new();
        for t in &self.terms {
            let mut k = t.first;
            loop {
                out.push(f.letters()[k as usize]);
                if k == t.last {
                    break;
                }
                k = (k + 1) % self.r;
            }
        }
        GenWord::new(out)
    }
}

/// Encodes a closed walk of `G` as a term product of height at most its
/// length. Tree darts vanish, `A` darts become single letters (or the
/// complementary path when read backwards), and every other dart is a chord
/// of `P` between the corners it leaves and enters.
pub fn encode_walk(walk: &[Dart], emb: &CellularEmbedding, idx: &EnterExitIndex) -> Result<TermProduct> {
    validate_walk(walk, emb)?;
    let r = idx.r;
    let mut terms = Vec::new();
    for &d in walk {
        if let Some((from, to)) = idx.chord(d) {
            terms.push(Term { first: from, last: (to + r - 1) % r });
        }
    }
    Ok(TermProduct { terms, r })
}

pub fn validate_walk(walk: &[Dart], emb: &CellularEmbedding) -> Result<()> {
    let n = emb.dart_count() as Dart;
    for (i, &d) in walk.iter().enumerate() {
        if d >= n {
            return Err(Error::InvalidWalk(format!("dart {d} out of range at step {i}")));
        }
    }
    for i in 0..walk.len() {
        let (d, next) = (walk[i], walk[(i + 1) % walk.len()]);
        if emb.head(d) != emb.origin(next) {
            let what = if i + 1 == walk.len() { "walk is not closed" } else { "walk is not connected" };
            return Err(Error::InvalidWalk(format!("{what}: step {i} ends at vertex {} but the next starts at {}", emb.head(d), emb.origin(next))));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    S,
    T,
}

impl VertexKind {
    pub fn other(self) -> Self {
        match self {
            VertexKind::S => VertexKind::T,
            VertexKind::T => VertexKind::S,
        }
    }
}

/// The radial graph: vertex `s` (the contracted tree), vertex `t` (center of
/// `P`), and edge `ρ_k` joining `t` to corner `k`. Dart `2k` runs `s → t`.
#[derive(Clone, Debug)]
pub struct RadialGraph {
    r: usize,
    rot: [Vec<u32>; 2],
    rot_inv: [Vec<u32>; 2],
    twisted: Vec<bool>,
    embedding: CellularEmbedding,
}

impl RadialGraph {
    pub fn build(cut: &CutGraph) -> Result<Self> {
        let f = cut.reduced_face();
        let r = f.len();
        if r == 0 {
            return Err(Error::Unsupported("the sphere has no radial graph".into()));
        }
        // Corner k lies between opp(a_{k-1}) and a_k, read in state σ_k.
        let mut left_of = vec![NONE; cut.switched.dart_count()];
        let mut right = vec![0; r];
        for k in 0..r {
            let a = f[k].dart;
            let prev = opposite(f[(k + r - 1) % r].dart);
            let (l, rt) = if f[k].flipped { (a, prev) } else { (prev, a) };
            if left_of[l as usize] != NONE {
                return internal("corner darts of the reduced polygon collide");
            }
            left_of[l as usize] = k as u32;
            right[k] = rt;
        }
        let mut rot_s = vec![0; r];
        for k in 0..r {
            let next = left_of[right[k] as usize];
            if next == NONE {
                return internal("reduced polygon corner has no successor");
            }
            rot_s[k] = next;
        }
        let rot_t: Vec<u32> = (0..r).map(|k| ((k + r - 1) % r) as u32).collect();
        let twisted: Vec<bool> = f.iter().map(|s| s.flipped).collect();

        let cycle = |perm: &[u32], base: u32| -> Result<Vec<Dart>> {
            let mut out = Vec::with_capacity(r);
            let mut k = 0u32;
            loop {
                out.push(2 * k + base);
                k = perm[k as usize];
                if k == 0 {
                    break;
                }
                if out.len() > r {
                    return internal("radial rotation is not a cycle");
                }
            }
            if out.len() != r {
                return internal("radial rotation is not a single cycle");
            }
            Ok(out)
        };
        let rotations = vec![cycle(&rot_s, 0)?, cycle(&rot_t, 1)?];
        let embedding = CellularEmbedding::from_rotation("radial", &rotations, twisted.clone())?;

        let invert = |p: &[u32]| {
            let mut inv = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                inv[j as usize] = i as u32;
            }
            inv
        };
        let rot_inv = [invert(&rot_s), invert(&rot_t)];
        let radial = RadialGraph { r, rot: [rot_s, rot_t], rot_inv, twisted, embedding };
        radial.check_quadrangulation(&cut.switched.classify())?;
        Ok(radial)
    }

    fn check_quadrangulation(&self, class: &SurfaceClass) -> Result<()> {
        let faces = self.embedding.faces();
        if faces.len() != self.r / 2 || faces.iter().any(|f| f.len() != 4) {
            return internal(format!(
                "radial graph is not a quadrangulation: {} faces of lengths {:?}",
                faces.len(),
                faces.iter().map(|f| f.len()).collect::<Vec<_>>()
            ));
        }
        if self.embedding.classify() != *class {
            return internal("radial graph lives on a different surface");
        }
        Ok(())
    }

    /// Number of radial edges (`4g` or `2g`).
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn embedding(&self) -> &CellularEmbedding {
        &self.embedding
    }

    /// Successor of edge `e` around a lifted vertex of the given kind and
    /// local orientation.
    #[inline]
    pub fn succ(&self, kind: VertexKind, flipped: bool, e: u32) -> u32 {
        let k = kind as usize;
        if flipped {
            self.rot_inv[k][e as usize]
        } else {
            self.rot[k][e as usize]
        }
    }

    #[inline]
    pub fn is_twisted(&self, e: u32) -> bool {
        self.twisted[e as usize]
    }
}

/// Closed walk in the radial graph, alternating `s` and `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadialWalk {
    pub start: Option<VertexKind>,
    pub edges: Vec<u32>,
}

impl RadialWalk {
    pub fn new(start: VertexKind, edges: Vec<u32>) -> Self {
        RadialWalk { start: Some(start), edges }
    }

    pub fn crossing_weight(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start_kind(&self) -> VertexKind {
        self.start.unwrap_or(VertexKind::S)
    }

    pub fn pow(&self, k: usize) -> RadialWalk {
        RadialWalk { start: self.start, edges: self.edges.repeat(k) }
    }

    /// Term product read back from a walk starting at `s`.
    pub fn to_terms(&self, r: u32) -> Result<TermProduct> {
        if self.edges.len() % 2 != 0 {
            return Err(Error::InvalidWalk("radial walk of odd length is not closed".into()));
        }
        let mut edges = self.edges.clone();
        if self.start_kind() == VertexKind::T && !edges.is_empty() {
            edges.rotate_left(1);
        }
        let terms = edges
            .chunks(2)
            .filter(|p| p[0] != p[1])
            .map(|p| Term { first: p[0], last: (p[1] + r - 1) % r })
            .collect();
        Ok(TermProduct { terms, r })
    }
}

/// Replaces every term by the two-edge walk `s → t → s` through the
/// corners at its ends.
pub fn terms_to_radial_walk(tp: &TermProduct) -> RadialWalk {
    let mut edges = Vec::with_capacity(2 * tp.terms.len());
    for t in &tp.terms {
        edges.push(t.first);
        edges.push((t.last + 1) % tp.r);
    }
    RadialWalk::new(VertexKind::S, edges)
}
