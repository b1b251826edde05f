//! Independent word-level oracles for surface groups.
//!
//! Nothing here touches the tiling machinery: words are reduced with a
//! stack, the word problem is solved by Dehn's algorithm under the
//! C′(1/6) condition, and abelianization gives cheap non-conjugacy
//! certificates.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::surface_model::CellularEmbedding;

/// Generator `i` is letter `2i`, its inverse `2i + 1`.
pub type Letter = u32;

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenWord(pub Vec<Letter>);

impl GenWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GenWord(letters)
    }

    /// Parses `a..z` with uppercase inverses. Whitespace, `.` and `·`
    /// separate factors and are ignored; `1` and `ε` denote the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for c in s.chars() {
            match c {
                'a'..='z' => out.push(2 * (c as u32 - 'a' as u32)),
                'A'..='Z' => out.push(2 * (c as u32 - 'A' as u32) + 1),
                ' ' | '\t' | '.' | '·' | '1' | 'ε' => {}
                other => return Err(Error::InvalidWord(format!("unexpected character `{other}`"))),
            }
        }
        Ok(GenWord(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> GenWord {
        GenWord(self.0.iter().rev().map(|&l| inverse_letter(l)).collect())
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GenWord(v)
    }

    pub fn pow(&self, k: usize) -> GenWord {
        GenWord(self.0.repeat(k))
    }

    /// Largest generator index used, plus one.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|&l| l as usize / 2 + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let g = l / 2;
            if g < 26 {
                let base = if l & 1 == 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + g as u8) as char)?;
            } else if l & 1 == 0 {
                write!(f, "[g{g}]")?;
            } else {
                write!(f, "[g{g}^-1]")?;
            }
        }
        Ok(())
    }
}

pub fn free_reduce(w: &GenWord) -> GenWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&inverse_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    GenWord(out)
}

/// Free reduction followed by removal of cancelling first/last pairs.
pub fn cyclic_reduce(w: &GenWord) -> GenWord {
    let r = free_reduce(w).0;
    let (mut i, mut j) = (0, r.len());
    while j - i >= 2 && r[i] == inverse_letter(r[j - 1]) {
        i += 1;
        j -= 1;
    }
    GenWord(r[i..j].to_vec())
}

/// One-relator surface-group presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    relator: GenWord,
    rank: usize,
    orientable: bool,
    genus: u32,
    max_piece: usize,
}

impl Presentation {
    /// `⟨a1, b1, …; a1 b1 a1⁻¹ b1⁻¹ ⋯⟩` or `⟨a1, …; a1² ⋯⟩`.
    pub fn canonical(genus: u32, orientable: bool) -> Result<Self> {
        let word = crate::surface_model::canonical_relator(genus, orientable);
        Self::from_relator(GenWord(word))
    }

    /// Validates that the relator is the facial word of a one-vertex
    /// cellular system and derives its surface type.
    pub fn from_relator(relator: GenWord) -> Result<Self> {
        let emb = CellularEmbedding::from_face_word("relator", &relator.0)
            .map_err(|e| Error::InvalidWord(format!("relator {relator} is not a surface word: {e}")))?;
        let class = emb.classify();
        let max_piece = max_piece_len(&relator.0);
        Ok(Presentation {
            rank: relator.len() / 2,
            relator,
            orientable: class.orientable,
            genus: class.genus,
            max_piece,
        })
    }

    pub fn relator(&self) -> &GenWord {
        &self.relator
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Longest piece shared by two distinct cyclic conjugates of r^±1.
    pub fn max_piece(&self) -> usize {
        self.max_piece
    }

    /// Whether C′(1/6) holds, so that Dehn's algorithm is sound.
    pub fn dehn_applicable(&self) -> bool {
        !self.relator.is_empty() && 6 * self.max_piece < self.relator.len()
    }
}

fn cyclic_words(r: &[Letter]) -> Vec<Vec<Letter>> {
    let n = r.len();
    let inv: Vec<Letter> = r.iter().rev().map(|&l| inverse_letter(l)).collect();
    let mut out = Vec::with_capacity(2 * n);
    for base in [r, &inv[..]] {
        for k in 0..n {
            out.push((0..n).map(|i| base[(k + i) % n]).collect());
        }
    }
    out
}

fn max_piece_len(r: &[Letter]) -> usize {
    let rots = cyclic_words(r);
    let mut best = 0;
    for len in 1..=r.len() {
        let mut seen: HashMap<&[Letter], usize> = HashMap::new();
        let mut dup = false;
        for rot in &rots {
            *seen.entry(&rot[..len]).or_default() += 1;
        }
        for &c in seen.values() {
            if c > 1 {
                dup = true;
            }
        }
        if !dup {
            break;
        }
        best = len;
    }
    best
}

/// Dehn's algorithm: repeatedly replace a factor covering more than half of
/// a cyclic conjugate of r^±1 by the inverse of its complement.
pub fn dehn_trivial(w: &GenWord, pres: &Presentation) -> Result<bool> {
    Ok(dehn_reduce(w, pres)?.is_empty())
}

/// Output of Dehn's algorithm: a freely reduced word with no factor longer
/// than half a relator.
pub fn dehn_reduce(w: &GenWord, pres: &Presentation) -> Result<GenWord> {
    if !pres.dehn_applicable() {
        return Err(Error::Unsupported(format!(
            "relator {} violates C'(1/6) (longest piece {}), Dehn's algorithm does not apply",
            pres.relator, pres.max_piece
        )));
    }
    let n = pres.relator.len();
    let h = n / 2 + 1;
    let rots = cyclic_words(&pres.relator.0);
    let mut window: HashMap<&[Letter], usize> = HashMap::new();
    for (i, rot) in rots.iter().enumerate() {
        window.insert(&rot[..h], i);
    }
    let mut cur = free_reduce(w).0;
    'outer: loop {
        if cur.len() < h {
            break;
        }
        for i in 0..=cur.len() - h {
            if let Some(&k) = window.get(&cur[i..i + h]) {
                let rot = &rots[k];
                let mut m = h;
                while m < n && i + m < cur.len() && cur[i + m] == rot[m] {
                    m += 1;
                }
                let mut next = Vec::with_capacity(cur.len());
                next.extend_from_slice(&cur[..i]);
                next.extend(rot[m..].iter().rev().map(|&l| inverse_letter(l)));
                next.extend_from_slice(&cur[i + m..]);
                cur = free_reduce(&GenWord(next)).0;
                continue 'outer;
            }
        }
        break;
    }
    Ok(GenWord(cur))
}

/// Exponent sum of each generator.
pub fn abelianize(w: &GenWord, rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank.max(w.rank())];
    for &l in &w.0 {
        v[l as usize / 2] += if l & 1 == 0 { 1 } else { -1 };
    }
    v.truncate(rank.max(w.rank()));
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    Yes,
    /// No conjugator within the bound; does not prove non-conjugacy.
    NoCertificate,
}

/// Searches reduced conjugators `g` with `|g| ≤ bound` such that
/// `g·w1·g⁻¹·w2⁻¹` is trivial.
pub fn brute_conjugate(w1: &GenWord, w2: &GenWord, pres: &Presentation, bound: usize) -> Result<Conjugacy> {
    let w2_inv = w2.inverse();
    let letters = 2 * pres.rank() as Letter;
    let mut g: Vec<Letter> = Vec::new();
    fn search(
        g: &mut Vec<Letter>,
        bound: usize,
        letters: Letter,
        test: &mut dyn FnMut(&[Letter]) -> Result<bool>,
    ) -> Result<bool> {
        if test(g)? {
            return Ok(true);
        }
        if g.len() == bound {
            return Ok(false);
        }
        for l in 0..letters {
            if g.last() == Some(&inverse_letter(l)) {
                continue;
            }
            g.push(l);
            let found = search(g, bound, letters, test)?;
            g.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut test = |g: &[Letter]| -> Result<bool> {
        let gw = GenWord(g.to_vec());
        let word = gw.concat(w1).concat(&gw.inverse()).concat(&w2_inv);
        dehn_trivial(&word, pres)
    };
    let found = search(&mut g, bound, letters, &mut test)?;
    Ok(if found { Conjugacy::Yes } else { Conjugacy::NoCertificate })
}

/// Normal form `x^u y^v` in `⟨x, y; x y x y⁻¹⟩`, with `x` the first
/// generator and `y` the second.
pub fn klein_normal_form(w: &GenWord) -> Result<(i64, i64)> {
    let (mut u, mut v) = (0i64, 0i64);
    for &l in &w.0 {
        let sign = if l & 1 == 0 { 1 } else { -1 };
        match l / 2 {
            // y^v x = x^{(−1)^v} y^v
            0 => u += if v.rem_euclid(2) == 0 { sign } else { -sign },
            1 => v += sign,
            g => return Err(Error::InvalidWord(format!("generator {g} not in a rank-2 presentation"))),
        }
    }
    Ok((u, v))
}

/// Conjugacy of `x^u y^v` and `x^u' y^v'` in the Klein bottle group.
///
/// Conjugating by `x` shifts `u` by 2 when `v` is odd and fixes it when `v`
/// is even; conjugating by `y` negates `u`. Hence the classes are: `v`
/// fixed, and `u` up to parity (odd `v`) or up to sign (even `v`).
pub fn klein_conjugate(u: i64, v: i64, u2: i64, v2: i64) -> bool {
    if v != v2 {
        return false;
    }
    if v.rem_euclid(2) == 1 {
        (u - u2).rem_euclid(2) == 0
    } else {
        u == u2 || u == -u2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GenWord {
        GenWord::parse(s).unwrap()
    }

    fn cyclic_genus2() -> Presentation {
        Presentation::from_relator(w("abcdABCD")).unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&w("aAb")), w("b"));
        assert_eq!(cyclic_reduce(&w("baB")), w("a"));
        assert_eq!(free_reduce(&w("abAB")), w("abAB"));
        assert_eq!(cyclic_reduce(&w("abAB")), w("abAB"));
        assert_eq!(cyclic_reduce(&w("aA")), w(""));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = w("abCd");
        assert_eq!(x.to_string(), "abCd");
        assert_eq!(x.inverse().to_string(), "DcBA");
        assert!(GenWord::parse("a-b").is_err());
    }

    #[test]
    fn dehn_single_replacement() {
        let p = cyclic_genus2();
        assert_eq!(dehn_reduce(&w("abcdA"), &p).unwrap(), w("dcb"));
        assert!(dehn_trivial(&w("abcdABCD"), &p).unwrap());
        assert!(!dehn_trivial(&w("abAB"), &p).unwrap());
    }

    #[test]
    fn piece_lengths() {
        assert_eq!(Presentation::canonical(2, true).unwrap().max_piece(), 1);
        assert!(Presentation::canonical(2, true).unwrap().dehn_applicable());
        assert!(!Presentation::canonical(3, false).unwrap().dehn_applicable());
        assert!(Presentation::canonical(4, false).unwrap().dehn_applicable());
        assert!(!Presentation::canonical(1, true).unwrap().dehn_applicable());
    }

    #[test]
    fn rewriting_counterexample_identity_holds() {
        let p = cyclic_genus2();
        let w1 = w("dcbdcb");
        let w2 = w("abcdbcdA");
        assert!(dehn_trivial(&w1.concat(&w2.inverse()), &p).unwrap());
    }

    #[test]
    fn abelianization() {
        assert_eq!(abelianize(&w("abAB"), 4), vec![0, 0, 0, 0]);
        assert_eq!(abelianize(&w("aab"), 4), vec![2, 1, 0, 0]);
        let (x, y) = (w("abcA"), w("dBd"));
        let sum: Vec<i64> = abelianize(&x, 4).iter().zip(abelianize(&y, 4)).map(|(a, b)| a + b).collect();
        assert_eq!(abelianize(&x.concat(&y), 4), sum);
    }

    #[test]
    fn brute_force_conjugacy() {
        let p = Presentation::canonical(2, true).unwrap();
        assert_eq!(brute_conjugate(&w("ab"), &w("babB"), &p, 1).unwrap(), Conjugacy::Yes);
        assert_eq!(brute_conjugate(&w("acD"), &w("acD"), &p, 0).unwrap(), Conjugacy::Yes);
        assert_eq!(brute_conjugate(&w("ab"), &w("aB"), &p, 3).unwrap(), Conjugacy::NoCertificate);
        assert_ne!(abelianize(&w("ab"), 4), abelianize(&w("aB"), 4));
    }

    #[test]
    fn klein_forms() {
        assert_eq!(klein_normal_form(&w("abaB")).unwrap(), (0, 0));
        assert_eq!(klein_normal_form(&w("ba")).unwrap(), (-1, 1));
        assert!(klein_conjugate(1, 1, 3, 1));
        assert!(!klein_conjugate(1, 2, 3, 2));
        assert!(klein_conjugate(2, 5, 2, 5));
        // y x y⁻¹ = x⁻¹
        assert_eq!(klein_normal_form(&w("baB")).unwrap(), (-1, 0));
        assert!(klein_conjugate(1, 0, -1, 0));
    }
}
