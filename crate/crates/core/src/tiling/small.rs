//! Word problems on surfaces whose reduced polygon has fewer than six
//! sides, where the tiling argument does not apply.

use crate::error::{Error, Result};
use crate::oracle::{abelianize, inverse_letter, klein_normal_form, GenWord, Letter};
use crate::surface_model::SurfaceClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallSurface {
    Sphere,
    Torus,
    ProjectivePlane,
    /// Images of the relator's generators in `⟨x, y; x y x y⁻¹⟩`.
    Klein(Vec<GenWord>),
}

impl SmallSurface {
    /// Recognizes a small surface from its reduced relator.
    pub fn from_relator(relator: &GenWord, class: &SurfaceClass) -> Result<Option<Self>> {
        Ok(Some(match (class.orientable, class.genus) {
            (true, 0) => SmallSurface::Sphere,
            (true, 1) => SmallSurface::Torus,
            (false, 1) => SmallSurface::ProjectivePlane,
            (false, 2) => SmallSurface::Klein(klein_basis(relator)?),
            _ => return Ok(None),
        }))
    }

    pub fn is_trivial(&self, word: &GenWord) -> Result<bool> {
        Ok(match self {
            SmallSurface::Sphere => true,
            SmallSurface::Torus => abelianize(word, 2).iter().all(|&x| x == 0),
            SmallSurface::ProjectivePlane => abelianize(word, 1)[0] % 2 == 0,
            SmallSurface::Klein(images) => klein_normal_form(&substitute(word, images))? == (0, 0),
        })
    }

    /// `(u, v)` with `word = x^u y^v` in the Klein bottle group.
    pub fn klein_form(&self, word: &GenWord) -> Result<Option<(i64, i64)>> {
        match self {
            SmallSurface::Klein(images) => Ok(Some(klein_normal_form(&substitute(word, images))?)),
            _ => Ok(None),
        }
    }
}

const X: Letter = 0;
const Y: Letter = 2;

fn inv(l: Letter) -> Letter {
    inverse_letter(l)
}

/// Finds a change of generators taking the relator to `x y x y⁻¹`.
fn klein_basis(relator: &GenWord) -> Result<Vec<GenWord>> {
    let f = relator.letters();
    if f.len() != 4 {
        return Err(Error::InvalidWord(format!("{relator} is not a Klein bottle relator")));
    }
    let image = |l: Letter, w: Vec<Letter>| -> (usize, GenWord) {
        let w = GenWord::new(w);
        let fwd = if l & 1 == 0 { w } else { w.inverse() };
        (l as usize / 2, fwd)
    };
    for word in [relator.clone(), relator.inverse()] {
        let f = word.letters();
        for k in 0..4 {
            let w: Vec<Letter> = (0..4).map(|i| f[(k + i) % 4]).collect();
            let mut out = vec![GenWord::default(), GenWord::default()];
            if w[0] == w[2] && w[3] == inv(w[1]) {
                // w = p q p q⁻¹: p ↦ x, q ↦ y.
                for (g, img) in [image(w[0], vec![X]), image(w[1], vec![Y])] {
                    out[g] = img;
                }
                return Ok(out);
            }
            if w[0] == w[1] && w[2] == w[3] && w[0] / 2 != w[2] / 2 {
                // w = p p q q: p ↦ x y, q ↦ y⁻¹ turns it into x y x y⁻¹.
                for (g, img) in [image(w[0], vec![X, Y]), image(w[2], vec![inv(Y)])] {
                    out[g] = img;
                }
                return Ok(out);
            }
        }
    }
    Err(Error::InvalidWord(format!("{relator} is not a Klein bottle relator")))
}

fn substitute(word: &GenWord, images: &[GenWord]) -> GenWord {
    let mut out = Vec::new();
    for &l in word.letters() {
        let img = &images[l as usize / 2];
        if l & 1 == 0 {
            out.extend_from_slice(img.letters());
        } else {
            out.extend(img.letters().iter().rev().map(|&m| inv(m)));
        }
    }
    GenWord::new(out)
}

/// Word problem on the sphere, torus, projective plane and Klein bottle.
pub fn special_small(word: &GenWord, relator: &GenWord, class: &SurfaceClass) -> Result<bool> {
    match SmallSurface::from_relator(relator, class)? {
        Some(s) => s.is_trivial(word),
        None => Err(Error::Unsupported(format!("{class} is not a small surface"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GenWord {
        GenWord::parse(s).unwrap()
    }

    fn class(orientable: bool, genus: u32) -> SurfaceClass {
        let chi = if orientable { 2 - 2 * genus as i64 } else { 2 - genus as i64 };
        SurfaceClass { orientable, genus, euler_char: chi }
    }

    #[test]
    fn torus_uses_abelianization() {
        let t = class(true, 1);
        assert!(special_small(&w("aabBAA"), &w("abAB"), &t).unwrap());
        assert!(!special_small(&w("aabAA"), &w("abAB"), &t).unwrap());
    }

    #[test]
    fn projective_plane_parity() {
        assert!(!special_small(&w("aaa"), &w("aa"), &class(false, 1)).unwrap());
        assert!(special_small(&w("aA"), &w("aa"), &class(false, 1)).unwrap());
        assert!(special_small(&w("aaaa"), &w("aa"), &class(false, 1)).unwrap());
    }

    #[test]
    fn klein_relators() {
        let k = class(false, 2);
        assert!(special_small(&w("abaB"), &w("abaB"), &k).unwrap());
        assert!(special_small(&w("aabb"), &w("aabb"), &k).unwrap());
        assert!(special_small(&w("bbaa"), &w("aabb"), &k).unwrap());
        assert!(!special_small(&w("ab"), &w("aabb"), &k).unwrap());
        assert!(!special_small(&w("a"), &w("abaB"), &k).unwrap());
        // b a b⁻¹ = a⁻¹ in ⟨a, b; a b a b⁻¹⟩
        assert!(special_small(&w("baBa"), &w("abaB"), &k).unwrap());
    }

    #[test]
    fn sphere_is_trivial() {
        assert!(special_small(&w(""), &w(""), &class(true, 0)).unwrap());
    }
}
