//! Decision queries with optional oracle cross-checks.

use std::time::Instant;

use anyhow::{bail, Result};
use surface_homotopy::oracle::{abelianize, brute_conjugate, dehn_trivial, Conjugacy, GenWord, Presentation};
use surface_homotopy::tiling::special_small;
use surface_homotopy::{Dart, Error, Surface};

use crate::output::Answer;

/// Conjugator length searched by the free-homotopy cross-check.
const CONJUGATOR_BOUND: usize = 3;

/// Maps `f` over `items` on up to `jobs` threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> Result<R> + Sync) -> Result<Vec<R>> {
    if jobs <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|part| scope.spawn(|| part.iter().map(&f).collect::<Result<Vec<R>>>())).collect();
        let mut out = Vec::with_capacity(items.len());
        for h in handles {
            out.extend(h.join().expect("worker panicked")?);
        }
        Ok(out)
    })
}

fn timed(k: usize, f: impl FnOnce() -> surface_homotopy::Result<bool>) -> Result<Answer> {
    let t = Instant::now();
    let yes = f()?;
    Ok(Answer { yes, k, ns: t.elapsed().as_nanos() })
}

/// Independent verdict on the triviality of a word of the reduced system,
/// when one is available.
fn word_oracle(s: &Surface, w: &GenWord) -> Result<Option<bool>> {
    if s.class().is_sphere() {
        return Ok(Some(true));
    }
    let rel = s.cut().relator();
    match special_small(w, &rel, s.class()) {
        Ok(b) => return Ok(Some(b)),
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let pres = Presentation::from_relator(rel)?;
    Ok(if pres.dehn_applicable() { Some(dehn_trivial(w, &pres)?) } else { None })
}

fn check_contractible(s: &Surface, walk: &[Dart], answer: bool) -> Result<()> {
    let word = s.reduced_word(walk)?;
    if let Some(expected) = word_oracle(s, &word)? {
        if expected != answer {
            bail!("oracle disagreement on {word}: algorithm says {answer}, oracle says {expected}");
        }
    }
    Ok(())
}

pub fn contractible(s: &Surface, text: &str, check: bool) -> Result<Answer> {
    let walk = s.parse_walk(text)?;
    let a = timed(walk.len(), || s.is_contractible(&walk))?;
    if check {
        check_contractible(s, &walk, a.yes)?;
    }
    Ok(a)
}

fn inverse(walk: &[Dart]) -> Vec<Dart> {
    walk.iter().rev().map(|&d| d ^ 1).collect()
}

fn check_free(s: &Surface, c: &[Dart], d: &[Dart], answer: bool) -> Result<()> {
    let (wc, wd) = (s.reduced_word(c)?, s.reduced_word(d)?);
    if answer && s.class().orientable {
        let rank = 2 * s.class().genus as usize;
        if abelianize(&wc, rank) != abelianize(&wd, rank) {
            bail!("oracle disagreement: {wc} and {wd} have different homology classes");
        }
    }
    if !answer && !s.class().is_sphere() {
        let pres = Presentation::from_relator(s.cut().relator())?;
        if pres.dehn_applicable() && brute_conjugate(&wc, &wd, &pres, CONJUGATOR_BOUND)? == Conjugacy::Yes {
            bail!("oracle disagreement: {wc} and {wd} are conjugate");
        }
    }
    Ok(())
}

pub fn homotopic(s: &Surface, a: &str, b: &str, fixed: bool, check: bool) -> Result<Answer> {
    let (c, d) = (s.parse_walk(a)?, s.parse_walk(b)?);
    let k = c.len() + d.len();
    let ans = if fixed {
        timed(k, || s.homotopic_fixed(&c, &d))?
    } else {
        timed(k, || s.free_homotopic(&c, &d))?
    };
    if check {
        if fixed {
            let mut cd = c.clone();
            cd.extend(inverse(&d));
            check_contractible(s, &cd, ans.yes)?;
        } else {
            check_free(s, &c, &d, ans.yes)?;
        }
    }
    Ok(ans)
}

/// Conjugacy of two group words, on a one-vertex system.
pub fn conjugate(s: &Surface, a: &str, b: &str, check: bool) -> Result<Answer> {
    let (c, d) = (s.word_walk(&GenWord::parse(a)?)?, s.word_walk(&GenWord::parse(b)?)?);
    let ans = timed(c.len() + d.len(), || s.free_homotopic(&c, &d))?;
    if check {
        check_free(s, &c, &d, ans.yes)?;
    }
    Ok(ans)
}
