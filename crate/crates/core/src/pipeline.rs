//! Preprocessing of a surface and the query front end: contractibility,
//! homotopy with fixed basepoint, and free homotopy.

use crate::cyclic::{self, BeltStats, CanonicalCycle};
use crate::error::{Error, Result};
use crate::oracle::{abelianize, klein_conjugate, GenWord};
use crate::reduction::{encode_walk, terms_to_radial_walk, validate_walk, CutGraph, EnterExitIndex, RadialGraph, RadialWalk, TermProduct};
use crate::surface_model::{opposite, CellularEmbedding, Dart, SurfaceClass};
use crate::tiling::{RelevantRegion, SmallSurface};

/// A preprocessed surface, shared immutably by all queries.
#[derive(Clone, Debug)]
pub struct Surface {
    emb: CellularEmbedding,
    class: SurfaceClass,
    cut: CutGraph,
    index: EnterExitIndex,
    /// Absent on the sphere, where every walk is contractible.
    radial: Option<RadialGraph>,
    small: Option<SmallSurface>,
}

impl Surface {
    pub fn preprocess(emb: CellularEmbedding) -> Result<Self> {
        let class = emb.classify();
        let cut = CutGraph::compute(&emb)?;
        let index = EnterExitIndex::build(&cut)?;
        let radial = if class.is_sphere() { None } else { Some(RadialGraph::build(&cut)?) };
        let small = if radial.as_ref().is_some_and(|r| r.r() < 6) {
            SmallSurface::from_relator(&cut.relator(), &class)?
        } else {
            None
        };
        Ok(Surface { emb, class, cut, index, radial, small })
    }

    /// One-vertex system of a surface relator; letter `l` is dart `l`.
    pub fn from_relator(relator: &GenWord) -> Result<Self> {
        let emb = CellularEmbedding::from_face_word("relator", relator.letters())
            .map_err(|e| Error::InvalidWord(format!("relator {relator} is not a surface word: {e}")))?;
        Self::preprocess(emb)
    }

    pub fn canonical(genus: u32, orientable: bool) -> Result<Self> {
        Self::preprocess(CellularEmbedding::gen_canonical(genus, orientable)?)
    }

    pub fn embedding(&self) -> &CellularEmbedding {
        &self.emb
    }

    pub fn class(&self) -> &SurfaceClass {
        &self.class
    }

    pub fn cut(&self) -> &CutGraph {
        &self.cut
    }

    pub fn radial(&self) -> Option<&RadialGraph> {
        self.radial.as_ref()
    }

    fn hyperbolic_radial(&self) -> Result<&RadialGraph> {
        match &self.radial {
            Some(r) if self.class.orientable && self.class.genus >= 2 => Ok(r),
            _ => Err(Error::Unsupported(format!("canonical cycles need an orientable surface of genus at least 2, not {}", self.class))),
        }
    }

    /// Reads a closed walk: letters `a..z` (uppercase for inverses) on a
    /// one-vertex system, or whitespace-separated signed edge tokens `+e`,
    /// `-e` on any system.
    pub fn parse_walk(&self, text: &str) -> Result<Vec<Dart>> {
        let text = text.trim();
        let signed = text.starts_with(['+', '-']) || text.chars().next().is_some_and(|c| c.is_ascii_digit() && c != '1');
        let walk = if signed {
            text.split_whitespace()
                .map(|tok| {
                    let (sign, num) = tok.split_at(1);
                    let e: Dart = num
                        .parse()
                        .map_err(|_| Error::InvalidWalk(format!("bad edge token `{tok}`")))?;
                    match sign {
                        "+" => Ok(2 * e),
                        "-" => Ok(2 * e + 1),
                        _ => Err(Error::InvalidWalk(format!("edge token `{tok}` needs a sign"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            self.word_walk(&GenWord::parse(text)?)?
        };
        validate_walk(&walk, &self.emb)?;
        Ok(walk)
    }

    /// The walk spelled by a word on a one-vertex system.
    pub fn word_walk(&self, word: &GenWord) -> Result<Vec<Dart>> {
        if self.emb.vertex_count() != 1 {
            return Err(Error::InvalidWalk("letter words need a one-vertex system; use signed edge tokens".into()));
        }
        let n = self.emb.dart_count() as Dart;
        if let Some(&l) = word.letters().iter().find(|&&l| l >= n) {
            return Err(Error::InvalidWord(format!("letter {} outside the alphabet of {} generators", GenWord::new(vec![l]), n / 2)));
        }
        Ok(word.letters().to_vec())
    }

    pub fn encode(&self, walk: &[Dart]) -> Result<TermProduct> {
        encode_walk(walk, &self.emb, &self.index)
    }

    pub fn radial_walk(&self, walk: &[Dart]) -> Result<RadialWalk> {
        Ok(terms_to_radial_walk(&self.encode(walk)?))
    }

    /// The walk as a word in the generators of the reduced system.
    pub fn reduced_word(&self, walk: &[Dart]) -> Result<GenWord> {
        Ok(self.encode(walk)?.expand(&self.cut))
    }

    fn radial_is_contractible(&self, rw: &RadialWalk) -> Result<bool> {
        let Some(radial) = self.radial.as_ref().filter(|_| !rw.is_empty()) else {
            return Ok(true);
        };
        match &self.small {
            Some(small) => small.is_trivial(&rw.to_terms(radial.r() as u32)?.expand(&self.cut)),
            None => Ok(RelevantRegion::build(radial, rw)?.is_closed()),
        }
    }

    pub fn is_contractible(&self, walk: &[Dart]) -> Result<bool> {
        self.radial_is_contractible(&self.radial_walk(walk)?)
    }

    /// Homotopy with fixed basepoint: `c·d⁻¹` is contractible.
    pub fn homotopic_fixed(&self, c: &[Dart], d: &[Dart]) -> Result<bool> {
        validate_walk(c, &self.emb)?;
        validate_walk(d, &self.emb)?;
        let (Some(&c0), Some(&d0)) = (c.first(), d.first()) else {
            // An empty walk has no basepoint of its own.
            return self.is_contractible(if c.is_empty() { d } else { c });
        };
        if self.emb.origin(c0) != self.emb.origin(d0) {
            return Err(Error::InvalidWalk("walks do not share a basepoint".into()));
        }
        let mut cd: Vec<Dart> = c.to_vec();
        cd.extend(d.iter().rev().map(|&x| opposite(x)));
        self.is_contractible(&cd)
    }

    /// Canonical cycle with belt statistics; `None` for contractible walks.
    pub fn canonical_cycle_with_stats(&self, walk: &[Dart]) -> Result<Option<(CanonicalCycle, BeltStats)>> {
        let radial = self.hyperbolic_radial()?;
        cyclic::canonical_cycle_with_stats(&self.radial_walk(walk)?, radial)
    }

    pub fn canonical_cycle(&self, walk: &[Dart]) -> Result<Option<CanonicalCycle>> {
        Ok(self.canonical_cycle_with_stats(walk)?.map(|(c, _)| c))
    }

    /// Canonical cycle of a radial walk (for instance a canonical cycle fed
    /// back in).
    pub fn canonical_cycle_radial(&self, rw: &RadialWalk) -> Result<Option<CanonicalCycle>> {
        cyclic::canonical_cycle(rw, self.hyperbolic_radial()?)
    }

    pub fn free_homotopic(&self, c: &[Dart], d: &[Dart]) -> Result<bool> {
        let (rc, rd) = (self.radial_walk(c)?, self.radial_walk(d)?);
        if rc == rd {
            return Ok(true);
        }
        let Some(radial) = &self.radial else { return Ok(true) };
        let r = radial.r() as u32;
        let word = |rw: &RadialWalk| -> Result<GenWord> { Ok(rw.to_terms(r)?.expand(&self.cut)) };
        match (&self.small, self.class.orientable, self.class.genus) {
            (Some(SmallSurface::Torus), ..) => {
                Ok(abelianize(&word(&rc)?, 2) == abelianize(&word(&rd)?, 2))
            }
            (Some(SmallSurface::ProjectivePlane), ..) => {
                Ok(abelianize(&word(&rc)?, 1)[0].rem_euclid(2) == abelianize(&word(&rd)?, 1)[0].rem_euclid(2))
            }
            (Some(small @ SmallSurface::Klein(_)), ..) => {
                let (u, v) = small.klein_form(&word(&rc)?)?.expect("klein surface");
                let (u2, v2) = small.klein_form(&word(&rd)?)?.expect("klein surface");
                Ok(klein_conjugate(u, v, u2, v2))
            }
            (_, true, _) => cyclic::free_homotopic(&rc, &rd, radial),
            _ => Err(Error::Unsupported(format!("free homotopy on the {} surface", self.class))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GenWord {
        GenWord::parse(s).unwrap()
    }

    #[test]
    fn relator_is_contractible() {
        let s = Surface::canonical(2, true).unwrap();
        let rel = s.word_walk(&w("abABcdCD")).unwrap();
        assert!(s.is_contractible(&rel).unwrap());
        assert!(!s.is_contractible(&s.word_walk(&w("abAB")).unwrap()).unwrap());
    }

    #[test]
    fn signed_tokens_parse() {
        let s = Surface::canonical(2, true).unwrap();
        assert_eq!(s.parse_walk("+0 -1").unwrap(), vec![0, 3]);
        assert_eq!(s.parse_walk("aB").unwrap(), vec![0, 3]);
        assert!(s.parse_walk("+0 x1").is_err());
        assert!(s.parse_walk("q").is_err());
    }

    #[test]
    fn fixed_versus_free() {
        let s = Surface::canonical(2, true).unwrap();
        let ab = s.word_walk(&w("ab")).unwrap();
        let ba = s.word_walk(&w("ba")).unwrap();
        assert!(s.homotopic_fixed(&ab, &ab).unwrap());
        assert!(!s.homotopic_fixed(&ab, &ba).unwrap());
        assert!(s.free_homotopic(&ab, &ba).unwrap());
    }
}
