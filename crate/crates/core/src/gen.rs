//! Seeded random words, embeddings and closed walks for tests and
//! benchmarks.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::error::{internal, Result};
use crate::oracle::{free_reduce, inverse_letter, GenWord, Letter};
use crate::surface_model::{edge_of, opposite, CellularEmbedding, Dart};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform word of length `len` over `rank` generators and their inverses.
/// With `reduced`, no letter is followed by its inverse.
pub fn random_word(rng: &mut impl Rng, rank: usize, len: usize, reduced: bool) -> GenWord {
    let n = 2 * rank as Letter;
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = rng.gen_range(0..n);
        if reduced && out.last() == Some(&inverse_letter(l)) {
            continue;
        }
        out.push(l);
    }
    GenWord::new(out)
}

/// Cyclically reduced word of exactly `len` letters.
pub fn random_cyclic_word(rng: &mut impl Rng, rank: usize, len: usize) -> GenWord {
    loop {
        let w = random_word(rng, rank, len, true);
        let l = w.letters();
        if len < 2 || l[0] != inverse_letter(l[len - 1]) {
            return w;
        }
    }
}

/// `g·w·g⁻¹`, freely reduced.
pub fn conjugate_by(w: &GenWord, g: &GenWord) -> GenWord {
    free_reduce(&g.concat(w).concat(&g.inverse()))
}

/// Inserts a cyclic rotation of `relator^±1` at a random position.
pub fn insert_relator(rng: &mut impl Rng, w: &GenWord, relator: &GenWord) -> GenWord {
    let r = if rng.gen_bool(0.5) { relator.clone() } else { relator.inverse() };
    let k = rng.gen_range(0..r.len().max(1));
    let mut rot = r.letters().to_vec();
    rot.rotate_left(k);
    let at = rng.gen_range(0..=w.len());
    let mut out = w.letters()[..at].to_vec();
    out.extend(rot);
    out.extend_from_slice(&w.letters()[at..]);
    GenWord::new(out)
}

/// Random refinement of an embedding on the same surface: `subdivisions`
/// edge subdivisions and `splits` face splits by new edges.
pub fn refine_embedding(rng: &mut impl Rng, emb: &CellularEmbedding, subdivisions: usize, splits: usize) -> Result<CellularEmbedding> {
    let mut rot = emb.rotations();
    let mut twisted = emb.twisted().to_vec();
    let mut ops: Vec<bool> = std::iter::repeat(true).take(subdivisions).chain(std::iter::repeat(false).take(splits)).collect();
    ops.shuffle(rng);
    let mut cur = emb.clone();
    if twisted.is_empty() && !ops.is_empty() {
        // A lone vertex gets a pendant edge to work with.
        rot[0].push(0);
        rot.push(vec![1]);
        twisted.push(false);
        cur = CellularEmbedding::from_rotation(emb.name(), &rot, twisted.clone())?;
    }
    for subdivide in ops {
        let e = rng.gen_range(0..twisted.len());
        if subdivide || cur.faces().is_empty() {
            // u –2e→ v becomes u –2e→ w –2f→ v.
            let f = twisted.len() as Dart;
            let v = cur.head(2 * e as Dart) as usize;
            let back = (2 * e + 1) as Dart;
            let pos = rot[v].iter().position(|&d| d == back).expect("dart in rotation");
            rot[v][pos] = 2 * f + 1;
            rot.push(vec![back, 2 * f]);
            twisted.push(false);
        } else {
            let faces = cur.faces();
            let face = &faces[rng.gen_range(0..faces.len())];
            let n = face.len();
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n.max(2))) % n;
            if i == j {
                continue;
            }
            let f = twisted.len() as Dart;
            let mut insert = |k: usize, x: Dart| {
                let prev = face[(k + n - 1) % n].dart;
                let s = face[k];
                let v = cur.origin(s.dart) as usize;
                let anchor = if s.flipped { s.dart } else { opposite(prev) };
                let pos = rot[v].iter().position(|&d| d == anchor).expect("dart in rotation");
                rot[v].insert(pos + 1, x);
            };
            insert(i, 2 * f);
            insert(j, 2 * f + 1);
            twisted.push(face[i].flipped != face[j].flipped);
        }
        let next = CellularEmbedding::from_rotation(emb.name(), &rot, twisted.clone())?;
        if next.classify() != cur.classify() {
            return internal("refinement changed the surface");
        }
        cur = next;
    }
    Ok(cur)
}

/// Random closed walk based at `base`: a random walk of `len` steps closed
/// by a shortest path back.
pub fn random_closed_walk(rng: &mut impl Rng, emb: &CellularEmbedding, base: u32, len: usize) -> Vec<Dart> {
    let mut walk = Vec::with_capacity(len);
    let mut v = base;
    for _ in 0..len {
        let out = emb.rotation_at(v);
        if out.is_empty() {
            break;
        }
        let d = *out.choose(rng).unwrap();
        walk.push(d);
        v = emb.head(d);
    }
    walk.extend(shortest_path(emb, v, base));
    walk
}

/// BFS path between two vertices.
pub fn shortest_path(emb: &CellularEmbedding, from: u32, to: u32) -> Vec<Dart> {
    let n = emb.vertex_count();
    let mut via: Vec<Option<Dart>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for d in emb.rotation_at(v) {
            let w = emb.head(d) as usize;
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(d);
                queue.push_back(w as u32);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let d = via[v as usize].expect("connected embedding");
        path.push(d);
        v = emb.origin(d);
    }
    path.reverse();
    path
}

/// `g·c·g⁻¹` for closed walks `g`, `c` based at the same vertex.
pub fn conjugate_walk(c: &[Dart], g: &[Dart]) -> Vec<Dart> {
    let mut out = g.to_vec();
    out.extend_from_slice(c);
    out.extend(g.iter().rev().map(|&d| opposite(d)));
    out
}

/// Cyclic rotation of a closed walk: freely homotopic, new basepoint.
pub fn rotate_walk(c: &[Dart], k: usize) -> Vec<Dart> {
    let mut out = c.to_vec();
    if !out.is_empty() {
        let k = k % out.len();
        out.rotate_left(k);
    }
    out
}

/// Every edge of the walk, for coverage checks.
pub fn walk_edges(c: &[Dart]) -> Vec<usize> {
    c.iter().map(|&d| edge_of(d)).collect()
}
