//! Cellular embeddings of graphs on closed surfaces.
//!
//! An embedding is a signed rotation system: for every vertex the cyclic
//! counterclockwise order of its darts, plus a twist bit per edge. Edge `i`
//! owns darts `2i` (forward) and `2i + 1` (backward), so the opposite of a
//! dart is `d ^ 1`. Untwisted systems describe orientable surfaces; a
//! twisted edge reverses the local orientation when crossed.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Oriented edge handle.
pub type Dart = u32;

#[inline]
pub fn opposite(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    (d >> 1) as usize
}

#[inline]
pub fn is_forward(d: Dart) -> bool {
    d & 1 == 0
}

/// One step of a facial walk: the dart traversed and whether the walk is
/// currently reading rotations clockwise (after an odd number of twists).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceStep {
    pub dart: Dart,
    pub flipped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    pub orientable: bool,
    pub genus: u32,
    pub euler_char: i64,
}

impl SurfaceClass {
    pub fn from_euler(orientable: bool, euler_char: i64) -> Result<Self> {
        let genus = if orientable {
            if euler_char > 2 || euler_char % 2 != 0 {
                return Err(Error::Embedding(format!(
                    "Euler characteristic {euler_char} impossible for an orientable closed surface"
                )));
            }
            (2 - euler_char) / 2
        } else {
            if euler_char > 1 {
                return Err(Error::Embedding(format!(
                    "Euler characteristic {euler_char} impossible for a non-orientable closed surface"
                )));
            }
            2 - euler_char
        };
        Ok(SurfaceClass { orientable, genus: genus as u32, euler_char })
    }

    /// Length of the single facial word of a reduced system (4g or 2g).
    pub fn relator_len(&self) -> usize {
        if self.orientable {
            4 * self.genus as usize
        } else {
            2 * self.genus as usize
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.orientable && self.genus == 0
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.genus == 0 {
            write!(f, "genus 0, χ={}", self.euler_char)
        } else {
            let kind = if self.orientable { "orientable" } else { "non-orientable" };
            write!(f, "{kind} genus {}, χ={}", self.genus, self.euler_char)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellularEmbedding {
    name: String,
    vertex_count: usize,
    origin: Vec<u32>,
    rot: Vec<Dart>,
    rot_inv: Vec<Dart>,
    twisted: Vec<bool>,
    faces: Vec<Vec<FaceStep>>,
    /// Face holding each edge side; side `2e` is the flag `(2e, unflipped)`.
    side_face: Vec<u32>,
    /// Vertex switching making every edge untwisted, when one exists.
    switching: Option<Vec<bool>>,
}

impl CellularEmbedding {
    /// Builds an embedding from per-vertex counterclockwise dart orders.
    pub fn from_rotation(
        name: impl Into<String>,
        rotations: &[Vec<Dart>],
        twisted: Vec<bool>,
    ) -> Result<Self> {
        let vertex_count = rotations.len();
        let edge_count = twisted.len();
        let darts = 2 * edge_count;
        if vertex_count == 0 {
            return Err(Error::Embedding("no vertices".into()));
        }
        let unset = u32::MAX;
        let mut origin = vec![unset; darts];
        let mut rot = vec![0; darts];
        let mut rot_inv = vec![0; darts];
        for (v, order) in rotations.iter().enumerate() {
            for (i, &d) in order.iter().enumerate() {
                if d as usize >= darts {
                    return Err(Error::Embedding(format!("dart {d} out of range at vertex {v}")));
                }
                if origin[d as usize] != unset {
                    return Err(Error::Embedding(format!(
                        "rotation not a permutation: dart {d} listed twice"
                    )));
                }
                origin[d as usize] = v as u32;
                let next = order[(i + 1) % order.len()];
                rot[d as usize] = next;
                rot_inv[next as usize] = d;
            }
        }
        if let Some(d) = origin.iter().position(|&o| o == unset) {
            return Err(Error::Embedding(format!(
                "rotation not a permutation: dart {d} missing"
            )));
        }
        let mut emb = CellularEmbedding {
            name: name.into(),
            vertex_count,
            origin,
            rot,
            rot_inv,
            twisted,
            faces: Vec::new(),
            side_face: Vec::new(),
            switching: None,
        };
        emb.check_connected()?;
        emb.switching = emb.compute_switching();
        emb.trace_faces()?;
        Ok(emb)
    }

    /// One-vertex, one-face system whose facial walk spells `word`.
    ///
    /// Every edge must occur exactly twice in `word` (as either dart). The
    /// corners of the polygon are glued around the vertex: corner `i` is the
    /// wedge between `opp(word[i−1])` and `word[i]`, and an edge is twisted
    /// when the wedges at its two ends are glued with opposite orientations.
    pub fn from_face_word(name: impl Into<String>, word: &[Dart]) -> Result<Self> {
        if word.is_empty() {
            return Self::from_rotation(name, &[Vec::new()], Vec::new());
        }
        if word.len() % 2 != 0 {
            return Err(Error::Embedding("facial word has odd length".into()));
        }
        let n = word.len();
        let edges = n / 2;
        let mut seen = vec![0u8; edges];
        for &d in word {
            let e = edge_of(d);
            if e >= edges {
                return Err(Error::Embedding(format!("edge {e} out of range in facial word")));
            }
            seen[e] += 1;
            if seen[e] > 2 {
                return Err(Error::Embedding(format!("edge {e} occurs more than twice")));
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != 2) {
            return Err(Error::Embedding(format!("edge {e} does not occur twice")));
        }
        // Wedge i runs from dart opp(word[i−1]) (end 0) to word[i] (end 1).
        let wedge_end = |i: usize, end: usize| if end == 0 { opposite(word[(i + n - 1) % n]) } else { word[i] };
        let unset = (u32::MAX, 0u8);
        let mut at = vec![[unset; 2]; n];
        for i in 0..n {
            for end in 0..2 {
                let d = wedge_end(i, end) as usize;
                let slot = if at[d][0] == unset { 0 } else { 1 };
                if at[d][slot] != unset {
                    return Err(Error::Embedding("facial word is not realizable by one vertex".into()));
                }
                at[d][slot] = (i as u32, end as u8);
            }
        }
        // Walk the wedges around the vertex, recording each wedge's
        // orientation relative to the rotation.
        let mut reversed = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let (mut w, mut rev) = (0usize, false);
        while reversed[w].is_none() {
            reversed[w] = Some(rev);
            let exit = wedge_end(w, if rev { 0 } else { 1 });
            order.push(exit);
            let [p, q] = at[exit as usize];
            let (nw, nend) = if p == (w as u32, !rev as u8) { q } else { p };
            if nw == w as u32 {
                return Err(Error::Embedding("facial word backtracks".into()));
            }
            (w, rev) = (nw as usize, nend == 1);
        }
        if order.len() != n {
            return Err(Error::Embedding("facial word yields more than one vertex".into()));
        }
        let mut twisted = vec![false; edges];
        for i in 0..n {
            twisted[edge_of(word[i])] = reversed[i] != reversed[(i + 1) % n];
        }
        let emb = Self::from_rotation(name, &[order], twisted)?;
        if emb.face_count() != 1 {
            return internal_faces(emb.face_count());
        }
        Ok(emb)
    }

    /// Canonical one-vertex system: `a1 b1 a1⁻¹ b1⁻¹ ⋯` (orientable) or
    /// `a1 a1 a2 a2 ⋯` (non-orientable). Generators are numbered in that
    /// order, so edge `i` carries generator `i`.
    pub fn gen_canonical(genus: u32, orientable: bool) -> Result<Self> {
        if !orientable && genus == 0 {
            return Err(Error::Embedding("non-orientable genus must be at least 1".into()));
        }
        let word = canonical_relator(genus, orientable);
        let name = if orientable {
            format!("canonical-orientable-{genus}")
        } else {
            format!("canonical-nonorientable-{genus}")
        };
        let emb = Self::from_face_word(name, &word)?;
        let class = emb.classify();
        if class.genus != genus || class.orientable != orientable || emb.face_count() != 1 {
            return internal_faces(emb.face_count());
        }
        Ok(emb)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.twisted.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn origin(&self, d: Dart) -> u32 {
        self.origin[d as usize]
    }

    pub fn head(&self, d: Dart) -> u32 {
        self.origin[opposite(d) as usize]
    }

    /// Next dart counterclockwise around the origin of `d`.
    pub fn rot(&self, d: Dart) -> Dart {
        self.rot[d as usize]
    }

    pub fn rot_inv(&self, d: Dart) -> Dart {
        self.rot_inv[d as usize]
    }

    /// `rot` read in the given local orientation.
    #[inline]
    pub fn rot_in(&self, d: Dart, flipped: bool) -> Dart {
        if flipped {
            self.rot_inv[d as usize]
        } else {
            self.rot[d as usize]
        }
    }

    pub fn is_twisted(&self, e: usize) -> bool {
        self.twisted[e]
    }

    pub fn twisted(&self) -> &[bool] {
        &self.twisted
    }

    /// Counterclockwise dart order around `v`.
    pub fn rotation_at(&self, v: u32) -> Vec<Dart> {
        let Some(start) = (0..self.dart_count() as Dart).find(|&d| self.origin(d) == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut d = self.rot(start);
        while d != start {
            out.push(d);
            d = self.rot(d);
        }
        out
    }

    pub fn rotations(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        let mut done = vec![false; self.dart_count()];
        for s in 0..self.dart_count() as Dart {
            if done[s as usize] {
                continue;
            }
            let v = self.origin(s) as usize;
            let mut d = s;
            loop {
                done[d as usize] = true;
                out[v].push(d);
                d = self.rot(d);
                if d == s {
                    break;
                }
            }
        }
        out
    }

    pub fn faces(&self) -> &[Vec<FaceStep>] {
        &self.faces
    }

    /// Successor flag in the facial-walk permutation.
    #[inline]
    pub fn face_step(&self, s: FaceStep) -> FaceStep {
        let o = opposite(s.dart);
        let flipped = s.flipped ^ self.twisted[edge_of(s.dart)];
        FaceStep { dart: self.rot_in(o, flipped), flipped }
    }

    /// Side index of a flag: `2e` for the side read by `(2e, unflipped)`.
    #[inline]
    pub fn side_of(&self, s: FaceStep) -> usize {
        let e = edge_of(s.dart);
        let bit = if is_forward(s.dart) {
            s.flipped
        } else {
            // (2e+1, σ) reads the same side as (2e, −σ·sign(e)).
            !(s.flipped ^ self.twisted[e])
        };
        2 * e + bit as usize
    }

    pub fn side_face(&self, side: usize) -> usize {
        self.side_face[side] as usize
    }

    /// Vertex switching (true = reversed) that untwists every edge, if any.
    pub fn switching(&self) -> Option<&[bool]> {
        self.switching.as_deref()
    }

    pub fn is_orientable(&self) -> bool {
        self.switching.is_some()
    }

    pub fn classify(&self) -> SurfaceClass {
        let chi = self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64;
        SurfaceClass::from_euler(self.is_orientable(), chi)
            .expect("validated embedding has a consistent Euler characteristic")
    }

    /// Equivalent embedding with the rotations at `flip`ped vertices reversed
    /// and edge signs adjusted accordingly.
    pub fn switched(&self, flip: &[bool]) -> Result<Self> {
        let mut rotations = self.rotations();
        for (v, order) in rotations.iter_mut().enumerate() {
            if flip[v] {
                order.reverse();
            }
        }
        let twisted = (0..self.edge_count())
            .map(|e| {
                let d = 2 * e as Dart;
                self.twisted[e]
                    ^ flip[self.origin(d) as usize]
                    ^ flip[self.head(d) as usize]
            })
            .collect();
        Self::from_rotation(self.name.clone(), &rotations, twisted)
    }

    pub fn dual(&self) -> Result<DualEmbedding> {
        DualEmbedding::new(self)
    }

    /// Serializes in the line-oriented embedding file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("surface {}\n", self.name));
        out.push_str(&format!("vertices {}\n", self.vertex_count));
        out.push_str(&format!("edges {}\n", self.edge_count()));
        for (v, order) in self.rotations().iter().enumerate() {
            let darts: Vec<String> = order.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("rot {v}: {}\n", darts.join(" ")));
        }
        let tw: Vec<String> = (0..self.edge_count())
            .filter(|&e| self.twisted[e])
            .map(|e| e.to_string())
            .collect();
        if !tw.is_empty() {
            out.push_str(&format!("twisted {}\n", tw.join(" ")));
        }
        out
    }

    fn check_connected(&self) -> Result<()> {
        let mut adj_seen = vec![false; self.vertex_count];
        let mut by_vertex: Vec<Vec<Dart>> = vec![Vec::new(); self.vertex_count];
        for d in 0..self.dart_count() as Dart {
            by_vertex[self.origin(d) as usize].push(d);
        }
        let mut stack = vec![0u32];
        adj_seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &d in &by_vertex[v as usize] {
                let w = self.head(d);
                if !adj_seen[w as usize] {
                    adj_seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != self.vertex_count {
            let v = adj_seen.iter().position(|&s| !s).unwrap_or(0);
            return Err(Error::Embedding(format!("graph is disconnected: vertex {v} unreachable")));
        }
        Ok(())
    }

    fn compute_switching(&self) -> Option<Vec<bool>> {
        let mut flip = vec![false; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut by_vertex: Vec<Vec<Dart>> = vec![Vec::new(); self.vertex_count];
        for d in 0..self.dart_count() as Dart {
            by_vertex[self.origin(d) as usize].push(d);
        }
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &by_vertex[v as usize] {
                let w = self.head(d) as usize;
                let want = flip[v as usize] ^ self.twisted[edge_of(d)];
                if !seen[w] {
                    seen[w] = true;
                    flip[w] = want;
                    stack.push(w as u32);
                } else if flip[w] != want {
                    return None;
                }
            }
        }
        Some(flip)
    }

    fn trace_faces(&mut self) -> Result<()> {
        let unset = u32::MAX;
        let sides = self.dart_count();
        self.side_face = vec![unset; sides];
        self.faces.clear();
        if sides == 0 {
            self.faces.push(Vec::new());
            return Ok(());
        }
        for d in 0..sides as Dart {
            for flipped in [false, true] {
                let start = FaceStep { dart: d, flipped };
                if self.side_face[self.side_of(start)] != unset {
                    continue;
                }
                let id = self.faces.len() as u32;
                let mut walk = Vec::new();
                let mut s = start;
                loop {
                    let side = self.side_of(s);
                    if self.side_face[side] != unset {
                        return Err(Error::Embedding("facial walk revisits an edge side".into()));
                    }
                    self.side_face[side] = id;
                    walk.push(s);
                    s = self.face_step(s);
                    if s == start {
                        break;
                    }
                }
                self.faces.push(walk);
            }
        }
        Ok(())
    }
}

fn internal_faces<T>(f: usize) -> Result<T> {
    Err(Error::Internal(format!("canonical system self-check failed: {f} faces")))
}

/// Dart word of the canonical relator.
pub fn canonical_relator(genus: u32, orientable: bool) -> Vec<Dart> {
    let mut word = Vec::new();
    for k in 0..genus {
        if orientable {
            let a = 2 * (2 * k);
            let b = 2 * (2 * k + 1);
            word.extend([a, b, a + 1, b + 1]);
        } else {
            let a = 2 * k;
            word.extend([a, a]);
        }
    }
    word
}

/// Dual of a cellular embedding.
///
/// Dual edge `e*` has darts `2e` and `2e + 1`; dart `2e` leaves the face
/// holding side `2e` of `e`. Face `f` is dual vertex `f`, with the rotation
/// given by the order in which its facial walk meets the edges.
#[derive(Clone, Debug)]
pub struct DualEmbedding {
    embedding: CellularEmbedding,
    /// For orientable primals: dual dart of each primal dart, oriented from
    /// its left face to its right face.
    left_to_right: Option<Vec<Dart>>,
}

impl DualEmbedding {
    fn new(primal: &CellularEmbedding) -> Result<Self> {
        let e_count = primal.edge_count();
        let mut rotations = Vec::with_capacity(primal.face_count());
        // Local state of the walk at each side, read in the frame of the
        // origin of the forward dart.
        let mut frame = vec![false; 2 * e_count];
        for walk in primal.faces() {
            let mut order = Vec::with_capacity(walk.len());
            for &s in walk {
                let side = primal.side_of(s);
                order.push(side as Dart);
                let e = edge_of(s.dart);
                frame[side] = if is_forward(s.dart) { s.flipped } else { s.flipped ^ primal.twisted[e] };
            }
            rotations.push(order);
        }
        let twisted = (0..e_count).map(|e| frame[2 * e] != frame[2 * e + 1]).collect();
        let embedding = CellularEmbedding::from_rotation(
            format!("{}-dual", primal.name),
            &rotations,
            twisted,
        )?;
        let left_to_right = primal.switching().map(|flip| {
            (0..primal.dart_count() as Dart)
                .map(|d| {
                    let right = FaceStep { dart: d, flipped: flip[primal.origin(d) as usize] };
                    let side = primal.side_of(right);
                    // The dual dart leaving the left face enters the side's face.
                    opposite(side as Dart)
                })
                .collect()
        });
        Ok(DualEmbedding { embedding, left_to_right })
    }

    pub fn embedding(&self) -> &CellularEmbedding {
        &self.embedding
    }

    /// Dual vertex (primal face) count.
    pub fn vertex_count(&self) -> usize {
        self.embedding.vertex_count()
    }

    /// The dual edge crossing primal edge `e`.
    pub fn dual_edge(&self, e: usize) -> usize {
        e
    }

    /// Dual dart crossing `d` from its left face to its right face.
    pub fn dual_dart(&self, d: Dart) -> Option<Dart> {
        self.left_to_right.as_ref().map(|m| m[d as usize])
    }
}

/// Parses the line-oriented embedding format.
///
/// ```text
/// surface <name>
/// vertices <V>
/// edges <E>
/// rot <v>: <d0> <d1> ...
/// twisted <e> ...          (optional: edges that reverse orientation)
/// ```
pub fn load_embedding(text: &str) -> Result<CellularEmbedding> {
    let mut name = String::from("unnamed");
    let mut vertices: Option<(usize, usize)> = None;
    let mut edges: Option<(usize, usize)> = None;
    let mut rot_lines: Vec<(usize, usize, Vec<Dart>)> = Vec::new();
    let mut twisted_list: Vec<(usize, usize)> = Vec::new();
    let perr = |line: usize, msg: String| Error::Parse { line, msg };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "surface" => name = rest.to_string(),
            "vertices" | "edges" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| perr(line, format!("expected a count after `{key}`")))?;
                let slot = if key == "vertices" { &mut vertices } else { &mut edges };
                if slot.is_some() {
                    return Err(perr(line, format!("duplicate `{key}` line")));
                }
                *slot = Some((n, line));
            }
            "rot" => {
                let (v, darts) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line, "expected `rot <v>: <darts>`".into()))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| perr(line, "bad vertex index".into()))?;
                let darts = darts
                    .split_whitespace()
                    .map(|t| t.parse::<Dart>().map_err(|_| perr(line, format!("bad dart `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                rot_lines.push((v, line, darts));
            }
            "twisted" => {
                for t in rest.split_whitespace() {
                    let e = t.parse().map_err(|_| perr(line, format!("bad edge `{t}`")))?;
                    twisted_list.push((e, line));
                }
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }

    let (v_count, v_line) = vertices.ok_or_else(|| perr(0, "missing `vertices` line".into()))?;
    let (e_count, e_line) = edges.ok_or_else(|| perr(0, "missing `edges` line".into()))?;
    if v_count == 0 {
        return Err(perr(v_line, "at least one vertex required".into()));
    }
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); v_count];
    let mut given = vec![false; v_count];
    let mut dart_line: HashMap<Dart, usize> = HashMap::new();
    for (v, line, darts) in rot_lines {
        if v >= v_count {
            return Err(perr(line, format!("vertex {v} out of range")));
        }
        if given[v] {
            return Err(perr(line, format!("duplicate rotation for vertex {v}")));
        }
        given[v] = true;
        for &d in &darts {
            if d as usize >= 2 * e_count {
                return Err(perr(line, format!("dart {d} out of range")));
            }
            if dart_line.insert(d, line).is_some() {
                return Err(perr(line, format!("rotation not a permutation: dart {d} listed twice")));
            }
        }
        rotations[v] = darts;
    }
    if let Some(d) = (0..2 * e_count as Dart).find(|d| !dart_line.contains_key(d)) {
        return Err(perr(e_line, format!("rotation not a permutation: dart {d} missing")));
    }
    let mut twisted = vec![false; e_count];
    for (e, line) in twisted_list {
        if e >= e_count {
            return Err(perr(line, format!("edge {e} out of range")));
        }
        twisted[e] = true;
    }
    CellularEmbedding::from_rotation(name, &rotations, twisted).map_err(|err| match err {
        Error::Embedding(msg) => perr(v_line, msg),
        other => other,
    })
}
