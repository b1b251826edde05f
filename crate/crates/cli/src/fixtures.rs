//! Regression fixtures, written as `a ; b ; label` lines that the batch
//! modes of `homotopic` and `conjugate` read directly.

use anyhow::Result;
use rand::Rng;
use surface_homotopy::gen::{conjugate_by, random_cyclic_word, random_word, rng};
use surface_homotopy::oracle::{abelianize, GenWord};

/// Genus-2 relator of the reaction-calculus counterexamples.
pub const COUNTEREXAMPLE_RELATOR: &str = "abcdABCD";

/// Group identities that a term-rewriting canonical form gets wrong. Each
/// pair is equal in the group; labels name the identity.
pub const COUNTEREXAMPLE_PAIRS: &[(&str, &str, &str)] = &[
    ("dcbdcb", "abcdbcdA", "two stable products"),
    ("dcb", "abcdA", "complementary terms"),
    ("Adc.CD", "A", "merge to one term"),
    ("bcd.A", "bcdA", "merged pair"),
    ("bcd.Adc.CD", "bcdA", "three-term merge"),
    ("Ad.DCB", "A.CB", "shorter two-term form"),
];

pub fn appendix() -> String {
    let mut out = format!("# relator {COUNTEREXAMPLE_RELATOR}\n# every pair is equal in the group\n");
    for (a, b, label) in COUNTEREXAMPLE_PAIRS {
        out.push_str(&format!("{a} ; {b} ; yes ; {label}\n"));
    }
    out
}

/// Conjugate pairs and pairs with distinct homology, labeled by
/// construction.
pub fn random(genus: u32, count: usize, seed: u64) -> Result<String> {
    eprintln!("seed {seed}");
    let mut r = rng(seed);
    let rank = 2 * genus as usize;
    let mut out = format!("# genus {genus} seed {seed}\n");
    for _ in 0..count {
        let (cl, gl) = (r.gen_range(1..=32), r.gen_range(0..=8));
        let c = random_cyclic_word(&mut r, rank, cl);
        let g = random_word(&mut r, rank, gl, true);
        let mut d = conjugate_by(&c, &g);
        if !d.is_empty() {
            let k = r.gen_range(0..d.len());
            d.0.rotate_left(k);
        }
        out.push_str(&format!("{c} ; {d} ; yes\n"));
    }
    let mut written = 0;
    while written < count {
        let (l1, l2) = (r.gen_range(1..=32), r.gen_range(1..=32));
        let c = random_word(&mut r, rank, l1, true);
        let d = random_word(&mut r, rank, l2, true);
        if abelianize(&c, rank) != abelianize(&d, rank) {
            out.push_str(&format!("{c} ; {d} ; no\n"));
            written += 1;
        }
    }
    Ok(out)
}

/// `x^u y^v` with `x = a`, `y = b`.
pub fn klein_word(u: i64, v: i64) -> GenWord {
    let x = if u >= 0 { 0 } else { 1 };
    let y = if v >= 0 { 2 } else { 3 };
    let mut letters = vec![x; u.unsigned_abs() as usize];
    letters.extend(std::iter::repeat(y).take(v.unsigned_abs() as usize));
    GenWord::new(letters)
}

/// The stated conjugacy rule for `x^u y^v` and `x^u' y^v'` in
/// `⟨x, y; x y x y⁻¹⟩`.
pub fn klein_rule(u: i64, v: i64, u2: i64, v2: i64) -> bool {
    v == v2 && if v.rem_euclid(2) == 0 { u == u2 } else { (u - u2).rem_euclid(2) == 0 }
}

pub const KLEIN_RELATOR: &str = "abaB";
pub const KLEIN_RANGE: std::ops::RangeInclusive<i64> = -5..=5;

/// Every grid cell of the stated rule, labeled with its answer.
pub fn klein() -> String {
    let mut out = format!("# relator {KLEIN_RELATOR}\n# x^u y^v ; x^u' y^v' ; stated rule ; u v u' v'\n");
    for u in KLEIN_RANGE {
        for v in KLEIN_RANGE {
            for u2 in KLEIN_RANGE {
                for v2 in KLEIN_RANGE {
                    let rule = if klein_rule(u, v, u2, v2) { "yes" } else { "no" };
                    out.push_str(&format!("{} ; {} ; {rule} ; {u} {v} {u2} {v2}\n", klein_word(u, v), klein_word(u2, v2)));
                }
            }
        }
    }
    out
}
