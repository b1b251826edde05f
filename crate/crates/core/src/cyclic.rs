//! Free homotopy on orientable surfaces of genus at least two.
//!
//! The relevant region of `c⁶` contains a lift of the canonical belt of
//! the cyclic cover generated by `c` (or half of it). From that region we
//! read off the rightmost minimal generator, a cycle of the radial graph
//! that depends only on the free homotopy class of `c`. Two walks are then
//! freely homotopic exactly when their canonical cycles agree up to
//! rotation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{internal, Result};
use crate::reduction::{RadialGraph, RadialWalk, VertexKind, NONE};
use crate::tiling::{capacity_for, EdgeIdx, LineTags, RelevantRegion, VertexId};

/// An oriented radial edge: its id and the kind of its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub edge: u32,
    pub tail: VertexKind,
}

impl Token {
    fn key(self) -> u64 {
        ((self.edge as u64) << 1) | (self.tail == VertexKind::T) as u64
    }
}

/// Projection of the canonical generator: a cyclic sequence of oriented
/// radial edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCycle {
    pub tokens: Vec<Token>,
}

impl CanonicalCycle {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The cycle as a closed radial walk.
    pub fn to_walk(&self) -> RadialWalk {
        let start = self.tokens.first().map(|t| t.tail).unwrap_or(VertexKind::S);
        RadialWalk::new(start, self.tokens.iter().map(|t| t.edge).collect())
    }

    /// Equality up to rotation.
    pub fn same_cycle(&self, other: &CanonicalCycle) -> bool {
        let a: Vec<u64> = self.tokens.iter().map(|t| t.key()).collect();
        let b: Vec<u64> = other.tokens.iter().map(|t| t.key()).collect();
        cyclic_equal(&a, &b)
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Vec<Token> {
        let keys: Vec<u64> = self.tokens.iter().map(|t| t.key()).collect();
        let k = least_rotation(&keys);
        let mut t = self.tokens.clone();
        t.rotate_left(k);
        t
    }
}

impl fmt::Display for CanonicalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| format!("{}{}", if t.tail == VertexKind::S { "s" } else { "t" }, t.edge))
            .collect();
        write!(f, "({})", parts.join(" "))
    }
}

fn failure_function(p: &[u64]) -> Vec<usize> {
    let mut fail = vec![0; p.len()];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = fail[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// First occurrence of `pattern` in `text` (Knuth–Morris–Pratt).
pub fn kmp_find(pattern: &[u64], text: &[u64]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    let fail = failure_function(pattern);
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Whether `a` is a rotation of `b`: equal lengths and `a` occurs in `b·b`.
pub fn cyclic_equal(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let mut bb = Vec::with_capacity(2 * b.len() - 1);
    bb.extend_from_slice(b);
    bb.extend_from_slice(&b[..b.len() - 1]);
    kmp_find(a, &bb).is_some()
}

/// Start of the least rotation (Booth).
pub fn least_rotation(s: &[u64]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != s[(k + i.wrapping_add(1) as usize) % n] {
            if sj < s[(k + i.wrapping_add(1) as usize) % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Relevant region of `c⁶` with the Γ edge crossed at every step.
#[derive(Debug)]
pub struct LiftedPower<'a> {
    pub region: RelevantRegion<'a>,
    /// `(tail, Γ edge)` of step `j` of copy `i`, at index `i·|c| + j`.
    pub steps: Vec<(VertexId, EdgeIdx)>,
    pub len: usize,
    pub tags: LineTags,
}

impl LiftedPower<'_> {
    /// Lift of `c(0)` after `i` copies.
    pub fn x(&self, i: usize) -> VertexId {
        if i == 0 {
            self.region.start()
        } else {
            let (tail, x) = self.steps[i * self.len - 1];
            self.region.graph().other_end(x, tail)
        }
    }

    fn tag_at(&self, copy: usize, j: usize) -> u32 {
        self.tags.tag[self.steps[copy * self.len + j].1 as usize]
    }
}

/// Builds `Π` for `c⁶`, or returns `None` when `c` itself lifts to a closed
/// walk (contractible input).
pub fn lift_power<'a>(c: &RadialWalk, radial: &'a RadialGraph) -> Result<Option<LiftedPower<'a>>> {
    let len = c.crossing_weight();
    if len == 0 {
        return Ok(None);
    }
    let mut region = RelevantRegion::new(radial, c.start_kind(), capacity_for(6 * len))?;
    let mut steps = Vec::with_capacity(6 * len);
    for copy in 0..6 {
        for &e in &c.edges {
            let tail = region.current();
            let x = region.step(e)?;
            steps.push((tail, x));
        }
        if copy == 0 && region.is_closed() {
            return Ok(None);
        }
    }
    let tags = LineTags::of(&region)?;
    Ok(Some(LiftedPower { region, steps, len, tags }))
}

/// Per-line data over the tags of a lifted power.
#[derive(Clone, Debug)]
pub struct LineTables {
    /// `τ(ℓ)` for lines crossing `c1..c5`, `NONE` elsewhere.
    pub tau: Vec<u32>,
    /// Whether `ℓ` meets `τ(ℓ)` inside the region.
    pub meets_translate: Vec<bool>,
    /// Parity of the crossings of `ℓ` with `c2`, `c3`, `c4`.
    pub parity: Vec<[bool; 3]>,
    /// Transversal lines (separating consecutive `x_i` for `i ∈ 0..6`).
    pub transversal: Vec<bool>,
    /// Anchor step index of every transversal: the step of the lift that
    /// orients it.
    pub anchor: Vec<u32>,
    pub invariant: Option<u32>,
    /// The chosen transversal `ℓ` (separating `x2` from `x3`) and its
    /// anchor position `j` within a copy.
    pub chosen: u32,
    pub chosen_j: usize,
    /// Number of transversals separating `x2` from `x3`.
    pub separating: usize,
}

impl LineTables {
    pub fn is_k(&self, tag: u32) -> bool {
        !self.transversal[tag as usize] && self.invariant != Some(tag)
    }
}

pub fn classify_lines(lp: &LiftedPower<'_>) -> Result<LineTables> {
    let n = lp.tags.count;
    let len = lp.len;
    let mut tau = vec![NONE; n];
    for i in 0..5 {
        for j in 0..len {
            let (t1, t2) = (lp.tag_at(i, j), lp.tag_at(i + 1, j));
            let slot = &mut tau[t1 as usize];
            if *slot == NONE {
                *slot = t2;
            } else if *slot != t2 {
                return internal("translation of line tags is inconsistent");
            }
        }
    }

    let region = &lp.region;
    let g = region.graph();
    let mut meets_translate = vec![false; n];
    for x in 0..g.edge_count() as EdgeIdx {
        let (a, b) = g.ends(x);
        let e = g.edge_id(x);
        for (tail, head) in [(a, b), (b, a)] {
            let (q, qx, qy) = region.quad_after(tail, head, e);
            if let (Some(_), Some(_)) = (qx, qy) {
                let Some(y_edge) = g.edge_at(tail, q.e0) else {
                    return internal("interior quad with a missing side");
                };
                let (t1, t2) = (lp.tags.tag[x as usize], lp.tags.tag[y_edge as usize]);
                if tau[t1 as usize] == t2 {
                    meets_translate[t1 as usize] = true;
                }
                if tau[t2 as usize] == t1 {
                    meets_translate[t2 as usize] = true;
                }
            }
        }
    }

    let mut parity = vec![[false; 3]; n];
    for (slot, copy) in [1, 2, 3].into_iter().enumerate() {
        for j in 0..len {
            parity[lp.tag_at(copy, j) as usize][slot] ^= true;
        }
    }

    let mut invariant = None;
    for t in 0..n {
        if tau[t] == t as u32 {
            if invariant.is_some() {
                return internal("more than one invariant line");
            }
            invariant = Some(t as u32);
        }
    }

    let mut transversal = vec![false; n];
    let mut anchor = vec![NONE; n];
    let mut chosen = None;
    let mut separating = 0;
    for j in 0..len {
        let t = lp.tag_at(2, j) as usize;
        let p = parity[t];
        let separates = !meets_translate[t] && p[1] && !p[0] && !p[2];
        if !separates || transversal[t] {
            continue;
        }
        separating += 1;
        if chosen.is_none() {
            chosen = Some((t as u32, j));
        }
        for copy in 0..6 {
            let tc = lp.tag_at(copy, j) as usize;
            if transversal[tc] {
                return internal("translates of a transversal coincide");
            }
            transversal[tc] = true;
            anchor[tc] = (copy * len + j) as u32;
        }
    }
    let Some((chosen, chosen_j)) = chosen else {
        return internal("no transversal separates consecutive lifts of the basepoint");
    };
    Ok(LineTables { tau, meets_translate, parity, transversal, anchor, invariant, chosen, chosen_j, separating })
}

/// Orientation and position of the Γ edges lying on transversal lines.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// Tail of each transversal Γ edge (on the side `c` crosses from).
    pub tail: Vec<VertexId>,
    /// Signed distance from the anchor, increasing to the right.
    pub offset: Vec<i32>,
}

fn orient_transversals(lp: &LiftedPower<'_>, lt: &LineTables) -> Result<Orientation> {
    let region = &lp.region;
    let g = region.graph();
    let m = g.edge_count();
    let mut tail = vec![NONE; m];
    let mut offset = vec![0i32; m];
    for t in 0..lp.tags.count {
        if !lt.transversal[t] {
            continue;
        }
        let (a_tail, a_edge) = lp.steps[lt.anchor[t] as usize];
        tail[a_edge as usize] = a_tail;
        for rightward in [true, false] {
            let (mut v, mut x, mut off) = (a_tail, a_edge, 0i32);
            loop {
                let w = g.other_end(x, v);
                let e = g.edge_id(x);
                let next = if rightward {
                    region.facing(v, w, e).map(|(y, _, f)| (y, f))
                } else {
                    region.facing(w, v, e).map(|(_, xx, f)| (xx, f))
                };
                let Some((nv, nx)) = next else { break };
                off += if rightward { 1 } else { -1 };
                if tail[nx as usize] != NONE {
                    return internal("transversal segment revisited while orienting");
                }
                tail[nx as usize] = nv;
                offset[nx as usize] = off;
                (v, x) = (nv, nx);
            }
        }
    }
    Ok(Orientation { tail, offset })
}

/// The part of the region between `ℓ` and `τ(ℓ)` that projects to the
/// canonical belt.
#[derive(Clone, Debug)]
pub struct Slice {
    pub ell: u32,
    pub tau_ell: u32,
    /// Γ edges of `Σ`, duals of the belt slice `Σ*`.
    pub sigma: Vec<EdgeIdx>,
    pub orientation: Orientation,
}

pub fn extract_belt(lp: &LiftedPower<'_>, lt: &LineTables) -> Result<Slice> {
    let region = &lp.region;
    let g = region.graph();
    let tags = &lp.tags.tag;
    let ell = lt.chosen;
    let tau_ell = lp.tag_at(3, lt.chosen_j);
    let orientation = orient_transversals(lp, lt)?;

    // Faces strictly between ℓ and τ(ℓ), reached from x3.
    let n = g.vertex_count();
    let mut in_band = vec![false; n];
    let x3 = lp.x(3);
    let mut stack = vec![x3];
    in_band[x3 as usize] = true;
    while let Some(v) = stack.pop() {
        for (_, x) in g.joined(v) {
            let t = tags[x as usize];
            if t == ell || t == tau_ell {
                continue;
            }
            let w = g.other_end(x, v);
            if !in_band[w as usize] {
                in_band[w as usize] = true;
                stack.push(w);
            }
        }
    }

    // Γ_C ∖ K: edges touching the band whose line is transversal or invariant.
    let mut candidates = Vec::new();
    for x in 0..g.edge_count() as EdgeIdx {
        let (a, b) = g.ends(x);
        if !in_band[a as usize] && !in_band[b as usize] {
            continue;
        }
        let t = tags[x as usize];
        if in_band[a as usize] != in_band[b as usize] && t != ell && t != tau_ell {
            return internal("band boundary edge off the bounding lines");
        }
        if !lt.is_k(t) {
            candidates.push(x);
        }
    }

    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut v: u32) -> u32 {
        while p[v as usize] != v {
            p[v as usize] = p[p[v as usize] as usize];
            v = p[v as usize];
        }
        v
    }
    for &x in &candidates {
        let (a, b) = g.ends(x);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra as usize] = rb;
        }
    }
    let mut translate_at: HashMap<i32, u32> = HashMap::new();
    for &x in &candidates {
        if tags[x as usize] == tau_ell {
            let root = find(&mut parent, g.ends(x).0);
            translate_at.insert(orientation.offset[x as usize], root);
        }
    }
    let mut component = None;
    for &x in &candidates {
        if tags[x as usize] == ell {
            let root = find(&mut parent, g.ends(x).0);
            if translate_at.get(&orientation.offset[x as usize]) == Some(&root) {
                component = Some(root);
                break;
            }
        }
    }
    let Some(component) = component else {
        return internal("no component of the slice holds an edge together with its translate");
    };
    let sigma = candidates
        .into_iter()
        .filter(|&x| find(&mut parent, g.ends(x).0) == component)
        .collect();
    Ok(Slice { ell, tau_ell, sigma, orientation })
}

/// Which case of the belt/region configuration was met.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Situation {
    /// The region holds a whole lift of the belt slice.
    Whole,
    /// Only the half of the belt left of the invariant line is in the region.
    LeftHalf,
    /// Only the half of the belt right of the invariant line is in the region.
    RightHalf,
}

/// Size of the canonical belt: interior vertices and edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeltStats {
    pub situation: Situation,
    pub gamma_len: usize,
    pub interior_vertices: usize,
    pub edges: usize,
}

impl BeltStats {
    pub fn within_bounds(&self) -> bool {
        self.interior_vertices <= self.gamma_len && self.edges <= 3 * self.gamma_len
    }
}

pub fn canonical_generator(lp: &LiftedPower<'_>, lt: &LineTables, slice: &Slice) -> Result<(CanonicalCycle, BeltStats)> {
    let region = &lp.region;
    let g = region.graph();
    let tags = &lp.tags.tag;
    let tails = &slice.orientation.tail;
    let oriented = |x: EdgeIdx| -> (VertexId, VertexId) {
        let t = tails[x as usize];
        (t, g.other_end(x, t))
    };

    // Half belt beyond the invariant line: all edges on distinct
    // transversals, consecutive ones linked around their shared face.
    let mut right_half = false;
    let mut distinct = true;
    let mut seen_tags: HashMap<u32, EdgeIdx> = HashMap::new();
    for &x in &slice.sigma {
        let t = tags[x as usize];
        if !lt.transversal[t as usize] || seen_tags.insert(t, x).is_some() {
            distinct = false;
            break;
        }
    }
    if distinct {
        if let Some(chain) = chain_from(&slice.sigma, slice, lp)? {
            // Consecutive pieces are two sides apart around their shared
            // face, on the side of the line that links them.
            let linked = |right: bool| {
                chain.windows(2).all(|w| {
                    let (_, head) = oriented(w[0]);
                    let (from, to) = if right { (w[0], w[1]) } else { (w[1], w[0]) };
                    let after = region.succ(head, region.succ(head, g.edge_id(from)));
                    oriented(w[1]).0 == head && after == g.edge_id(to)
                })
            };
            if linked(false) {
                right_half = true;
            } else if linked(true) {
                let mut tokens = Vec::with_capacity(chain.len() - 1);
                for &x in &chain[..chain.len() - 1] {
                    let (v, w) = oriented(x);
                    let e = g.edge_id(x);
                    let q = crate::tiling::trace_quad(region.radial(), g.kind(v), g.kind(w), g.flipped(w), e);
                    tokens.push(Token { edge: q.e1, tail: g.kind(w) });
                }
                let n = tokens.len();
                let stats = BeltStats { situation: Situation::LeftHalf, gamma_len: n, interior_vertices: n, edges: 3 * n };
                return Ok((CanonicalCycle { tokens }, stats));
            }
        }
    }

    // Rightmost transversal edges of the slice.
    let crossing_is_k = |tail: VertexId, head: VertexId, e: u32| -> bool {
        let (q, qx, qy) = region.quad_after(tail, head, e);
        match (qx, qy) {
            (Some(_), Some(_)) => match g.edge_at(tail, q.e0) {
                Some(side) => lt.is_k(tags[side as usize]),
                None => true,
            },
            _ => true,
        }
    };
    let chosen: Vec<EdgeIdx> = slice
        .sigma
        .iter()
        .copied()
        .filter(|&x| {
            lt.transversal[tags[x as usize] as usize] && {
                let (v, w) = oriented(x);
                crossing_is_k(v, w, g.edge_id(x))
            }
        })
        .collect();
    let Some(chain) = chain_from(&chosen, slice, lp)? else {
        return internal("rightmost slice edges do not chain from ℓ to τ(ℓ)");
    };
    let tokens: Vec<Token> = chain[..chain.len() - 1]
        .iter()
        .map(|&x| Token { edge: g.edge_id(x), tail: g.kind(oriented(x).0) })
        .collect();
    let n = tokens.len();

    // Whole belt: count interior vertices from the exterior ends of the
    // transversal pieces (2E = 4V + ends).
    let mut edges = 0usize;
    let mut ends = 0usize;
    for &x in &slice.sigma {
        let t = tags[x as usize];
        if t == slice.tau_ell {
            continue;
        }
        edges += 1;
        if lt.invariant == Some(t) {
            continue;
        }
        let (v, w) = oriented(x);
        let e = g.edge_id(x);
        ends += crossing_is_k(v, w, e) as usize + crossing_is_k(w, v, e) as usize;
    }
    let stats = if right_half {
        BeltStats { situation: Situation::RightHalf, gamma_len: n, interior_vertices: n, edges: 3 * n }
    } else {
        if (2 * edges) < ends || (2 * edges - ends) % 4 != 0 {
            return internal(format!("belt counts are inconsistent: {edges} edges, {ends} exterior ends"));
        }
        BeltStats { situation: Situation::Whole, gamma_len: n, interior_vertices: (2 * edges - ends) / 4, edges }
    };
    Ok((CanonicalCycle { tokens }, stats))
}

/// Chains edges head to tail starting from the one on `ℓ` and ending with
/// its translate on `τ(ℓ)`, which is the last element.
fn chain_from(
    edges: &[EdgeIdx],
    slice: &Slice,
    lp: &LiftedPower<'_>,
) -> Result<Option<Vec<EdgeIdx>>> {
    let g = lp.region.graph();
    let tags = &lp.tags.tag;
    let tails = &slice.orientation.tail;
    let mut by_tail: HashMap<VertexId, EdgeIdx> = HashMap::with_capacity(edges.len());
    let mut start = None;
    for &x in edges {
        if by_tail.insert(tails[x as usize], x).is_some() {
            return Ok(None);
        }
        if tags[x as usize] == slice.ell {
            if start.is_some() {
                return Ok(None);
            }
            start = Some(x);
        }
    }
    let Some(mut x) = start else { return Ok(None) };
    let start_offset = slice.orientation.offset[x as usize];
    let mut chain = Vec::new();
    loop {
        chain.push(x);
        if chain.len() > edges.len() {
            return Ok(None);
        }
        let head = g.other_end(x, tails[x as usize]);
        let Some(&next) = by_tail.get(&head) else { return Ok(None) };
        if tags[next as usize] == slice.tau_ell {
            if slice.orientation.offset[next as usize] != start_offset {
                return Ok(None);
            }
            chain.push(next);
            return Ok(Some(chain));
        }
        x = next;
    }
}

/// Canonical cycle of a radial walk with its belt statistics, or `None`
/// for contractible walks.
pub fn canonical_cycle_with_stats(c: &RadialWalk, radial: &RadialGraph) -> Result<Option<(CanonicalCycle, BeltStats)>> {
    let Some(lp) = lift_power(c, radial)? else { return Ok(None) };
    let lt = classify_lines(&lp)?;
    let slice = extract_belt(&lp, &lt)?;
    let (cycle, stats) = canonical_generator(&lp, &lt, &slice)?;
    if cycle.len() != lt.separating {
        return internal(format!(
            "canonical cycle has {} edges but {} transversals separate x2 from x3",
            cycle.len(),
            lt.separating
        ));
    }
    debug_assert!(stats.within_bounds(), "belt bound violated: {stats:?}");
    Ok(Some((cycle, stats)))
}

pub fn canonical_cycle(c: &RadialWalk, radial: &RadialGraph) -> Result<Option<CanonicalCycle>> {
    Ok(canonical_cycle_with_stats(c, radial)?.map(|(cycle, _)| cycle))
}

/// Free homotopy of two radial walks on an orientable surface of genus ≥ 2.
pub fn free_homotopic(c: &RadialWalk, d: &RadialWalk, radial: &RadialGraph) -> Result<bool> {
    if c == d {
        return Ok(true);
    }
    match (canonical_cycle(c, radial)?, canonical_cycle(d, radial)?) {
        (None, None) => Ok(true),
        (Some(a), Some(b)) => Ok(a.same_cycle(&b)),
        _ => Ok(false),
    }
}
