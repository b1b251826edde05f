//! Scaling benchmark: ns per edge of contractibility and free-homotopy
//! queries on random words, with preprocessing timed on its own.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::Rng;
use surface_homotopy::gen::{conjugate_by, random_cyclic_word, random_word, rng};
use surface_homotopy::Surface;

use crate::output::{Format, Record};

/// Conjugator length for the free-homotopy inputs.
const CONJUGATOR_LEN: usize = 8;

/// `1024` or `2^10`.
pub fn parse_length(s: &str) -> Result<usize> {
    let s = s.trim();
    let k = match s.split_once('^') {
        Some((base, exp)) => {
            let base: usize = base.parse().with_context(|| format!("bad length `{s}`"))?;
            let exp: u32 = exp.parse().with_context(|| format!("bad length `{s}`"))?;
            base.checked_pow(exp).with_context(|| format!("length `{s}` overflows"))?
        }
        None => s.parse().with_context(|| format!("bad length `{s}`"))?,
    };
    if k == 0 {
        bail!("lengths must be positive");
    }
    Ok(k)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

pub fn run(genus: u32, lengths: &[usize], trials: usize, seed: u64, fmt: Format) -> Result<()> {
    eprintln!("seed {seed}");
    let t = Instant::now();
    let s = Surface::canonical(genus, true)?;
    let pre_ns = t.elapsed().as_nanos() as f64;
    let edges = s.embedding().edge_count();
    let rank = 2 * genus as usize;
    let mut r = rng(seed);
    match fmt {
        Format::Text => {
            println!("preprocessing: {:.1} µs for {edges} edges", pre_ns / 1e3);
            println!("{:>10} {:>22} {:>22}", "k", "contractible ns/edge", "free ns/edge");
        }
        Format::Jsonl => Record::new("preprocess").k(edges).ns_per_edge(Some(pre_ns / edges as f64)).emit(),
    }
    for &k in lengths {
        let (mut contr, mut free) = (Vec::new(), Vec::new());
        for _ in 0..trials {
            let w = random_word(&mut r, rank, k, true);
            let walk = s.word_walk(&w)?;
            let t = Instant::now();
            s.is_contractible(&walk)?;
            contr.push(t.elapsed().as_nanos() as f64 / k as f64);

            let c = random_cyclic_word(&mut r, rank, k);
            let g = random_word(&mut r, rank, CONJUGATOR_LEN, true);
            let mut d = conjugate_by(&c, &g);
            let rot = r.gen_range(0..d.len());
            d.0.rotate_left(rot);
            let (cw, dw) = (s.word_walk(&c)?, s.word_walk(&d)?);
            let t = Instant::now();
            if !s.free_homotopic(&cw, &dw)? {
                bail!("conjugate words reported as not freely homotopic at k = {k}");
            }
            free.push(t.elapsed().as_nanos() as f64 / (cw.len() + dw.len()) as f64);
        }
        let (c, f) = (median(contr), median(free));
        match fmt {
            Format::Text => println!("{k:>10} {c:>22.1} {f:>22.1}"),
            Format::Jsonl => {
                Record::new("contractible").k(k).ns_per_edge(Some(c)).emit();
                Record::new("free-homotopic").k(k).ns_per_edge(Some(f)).emit();
            }
        }
    }
    Ok(())
}
