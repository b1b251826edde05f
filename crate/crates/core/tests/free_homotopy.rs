use rand::Rng;
use surface_homotopy::cyclic::{canonical_cycle_with_stats, Situation};
use surface_homotopy::gen::{
    conjugate_by, conjugate_walk, random_closed_walk, random_cyclic_word, random_word, refine_embedding, rng, rotate_walk,
};
use surface_homotopy::oracle::{abelianize, brute_conjugate, cyclic_reduce, dehn_trivial, free_reduce, Conjugacy, GenWord, Presentation};
use surface_homotopy::reduction::{RadialWalk, VertexKind};
use surface_homotopy::tiling::trace_quad;
use surface_homotopy::{CellularEmbedding, Error, Surface};

fn w(s: &str) -> GenWord {
    GenWord::parse(s).unwrap()
}

fn walk(s: &Surface, word: &GenWord) -> Vec<u32> {
    s.word_walk(word).unwrap()
}

#[test]
fn conjugates_share_canonical_cycles() {
    let mut r = rng(41);
    for genus in [2u32, 3] {
        let s = Surface::canonical(genus, true).unwrap();
        let pres = Presentation::canonical(genus, true).unwrap();
        let rank = 2 * genus as usize;
        let mut checked = 0;
        while checked < 300 {
            let len = r.gen_range(1..=32);
            let c = random_cyclic_word(&mut r, rank, len);
            if dehn_trivial(&c, &pres).unwrap() {
                continue;
            }
            let glen = r.gen_range(0..=8);
            let g = random_word(&mut r, rank, glen, true);
            let d = conjugate_by(&c, &g);
            let (x, sx) = s.canonical_cycle_with_stats(&walk(&s, &c)).unwrap().unwrap();
            let (y, sy) = s.canonical_cycle_with_stats(&walk(&s, &d)).unwrap().unwrap();
            assert!(x.same_cycle(&y), "c = {c}, g = {g}: {x} vs {y}");
            assert_eq!(x.least_rotation(), y.least_rotation());
            assert!(sx.within_bounds() && sy.within_bounds(), "{sx:?} {sy:?}");
            assert!(x.len() <= s.radial_walk(&walk(&s, &c)).unwrap().crossing_weight());
            assert!(s.free_homotopic(&walk(&s, &c), &walk(&s, &d)).unwrap());
            checked += 1;
        }
    }
}

/// Radial walks running alongside a closed line of the tiling: their
/// classes have an invariant line, which the region of `c⁶` never crosses.
fn line_walks(s: &Surface) -> Vec<RadialWalk> {
    let rad = s.radial().unwrap();
    let mut out = Vec::new();
    for e in 0..rad.r() as u32 {
        for kind in [VertexKind::S, VertexKind::T] {
            let (mut a, mut id) = (kind, e);
            let mut edges = Vec::new();
            loop {
                let q = trace_quad(rad, a, a.other(), false, id);
                edges.push(q.e0);
                (a, id) = (a.other(), q.e1);
                if (a, id) == (kind, e) {
                    break;
                }
            }
            out.push(RadialWalk::new(kind, edges.clone()));
            edges.reverse();
            out.push(RadialWalk::new(kind, edges));
        }
    }
    out
}

#[test]
fn classes_with_an_invariant_line_are_canonical() {
    let mut r = rng(43);
    for genus in [2u32, 3] {
        let s = Surface::canonical(genus, true).unwrap();
        let r_len = s.radial().unwrap().r() as u32;
        let mut seen = [false; 3];
        for lw in line_walks(&s) {
            let (direct, stats) = canonical_cycle_with_stats(&lw, s.radial().unwrap()).unwrap().unwrap();
            seen[stats.situation as usize] = true;
            assert!(stats.within_bounds());
            let c = cyclic_reduce(&free_reduce(&lw.to_terms(r_len).unwrap().expand(s.cut())));
            for k in 1..=2 {
                let ck = c.pow(k);
                let base = s.canonical_cycle(&walk(&s, &ck)).unwrap().unwrap();
                if k == 1 {
                    assert!(base.same_cycle(&direct), "{ck}: {base} vs {direct}");
                }
                for _ in 0..20 {
                    let glen = r.gen_range(0..6);
                    let g = random_word(&mut r, 2 * genus as usize, glen, true);
                    let mut d = conjugate_by(&ck, &g);
                    let rot = r.gen_range(0..d.len());
                    d.0.rotate_left(rot);
                    let other = s.canonical_cycle(&walk(&s, &d)).unwrap().unwrap();
                    assert!(base.same_cycle(&other), "{ck} vs {d}");
                }
            }
        }
        assert!(seen[Situation::LeftHalf as usize] && seen[Situation::RightHalf as usize], "situations met: {seen:?}");
    }
}

#[test]
fn distinct_homology_is_never_homotopic() {
    let mut r = rng(47);
    for genus in [2u32, 3] {
        let s = Surface::canonical(genus, true).unwrap();
        let rank = 2 * genus as usize;
        let mut checked = 0;
        while checked < 300 {
            let (l1, l2) = (r.gen_range(1..=32), r.gen_range(1..=32));
            let c = random_word(&mut r, rank, l1, true);
            let d = random_word(&mut r, rank, l2, true);
            if abelianize(&c, rank) == abelianize(&d, rank) {
                continue;
            }
            assert!(!s.free_homotopic(&walk(&s, &c), &walk(&s, &d)).unwrap(), "{c} ~ {d}");
            checked += 1;
        }
    }
}

#[test]
fn canonical_cycles_are_fixed_points() {
    let mut r = rng(53);
    let s = Surface::canonical(2, true).unwrap();
    let pres = Presentation::canonical(2, true).unwrap();
    let mut checked = 0;
    while checked < 200 {
        let len = r.gen_range(1..=40);
        let c = random_word(&mut r, 4, len, false);
        if dehn_trivial(&c, &pres).unwrap() {
            continue;
        }
        let cc = s.canonical_cycle(&walk(&s, &c)).unwrap().unwrap();
        let again = s.canonical_cycle_radial(&cc.to_walk()).unwrap().unwrap();
        assert_eq!(again.least_rotation(), cc.least_rotation(), "{c}");
        checked += 1;
    }
}

#[test]
fn refined_embeddings() {
    let mut r = rng(59);
    for trial in 0..20 {
        let genus = 2 + (trial % 2) as u32;
        let base = CellularEmbedding::gen_canonical(genus, true).unwrap();
        let emb = refine_embedding(&mut r, &base, 12, 12).unwrap();
        let s = Surface::preprocess(emb.clone()).unwrap();
        for _ in 0..10 {
            let len = r.gen_range(1..30);
            let c = random_closed_walk(&mut r, &emb, 0, len);
            let glen = r.gen_range(0..10);
            let g = random_closed_walk(&mut r, &emb, 0, glen);
            let k = r.gen_range(0..=c.len() + 2 * g.len());
            let d = rotate_walk(&conjugate_walk(&c, &g), k);
            assert!(s.free_homotopic(&c, &d).unwrap());
            assert!(s.free_homotopic(&d, &c).unwrap());
            if let Some(cc) = s.canonical_cycle(&c).unwrap() {
                let again = s.canonical_cycle_radial(&cc.to_walk()).unwrap().unwrap();
                assert!(again.same_cycle(&cc));
            }
        }
    }
}

#[test]
fn agrees_with_bounded_conjugator_search() {
    let mut r = rng(61);
    let s = Surface::canonical(2, true).unwrap();
    let pres = Presentation::canonical(2, true).unwrap();
    let (mut yes, mut total) = (0, 0);
    while total < 150 {
        let l1 = r.gen_range(1..=6);
        let c = random_word(&mut r, 4, l1, true);
        let d = if r.gen_bool(0.5) {
            let glen = r.gen_range(0..=2);
            let g = random_word(&mut r, 4, glen, true);
            conjugate_by(&c, &g)
        } else {
            let l2 = r.gen_range(1..=8);
            random_word(&mut r, 4, l2, true)
        };
        if d.len() > 8 {
            continue;
        }
        total += 1;
        let ours = s.free_homotopic(&walk(&s, &c), &walk(&s, &d)).unwrap();
        if ours {
            assert_eq!(abelianize(&c, 4), abelianize(&d, 4), "{c} ~ {d}");
        }
        if brute_conjugate(&c, &d, &pres, 4).unwrap() == Conjugacy::Yes {
            assert!(ours, "oracle finds {c} and {d} conjugate");
            yes += 1;
        }
    }
    assert!(yes > 30);
}

#[test]
fn small_surfaces_and_unsupported_cases() {
    let torus = Surface::canonical(1, true).unwrap();
    assert!(torus.free_homotopic(&walk(&torus, &w("ab")), &walk(&torus, &w("ba"))).unwrap());
    assert!(torus.free_homotopic(&walk(&torus, &w("aab")), &walk(&torus, &w("aba"))).unwrap());
    assert!(!torus.free_homotopic(&walk(&torus, &w("ab")), &walk(&torus, &w("aB"))).unwrap());

    let klein = Surface::from_relator(&w("abaB")).unwrap();
    // b a b⁻¹ = a⁻¹
    assert!(klein.free_homotopic(&walk(&klein, &w("a")), &walk(&klein, &w("A"))).unwrap());
    assert!(!klein.free_homotopic(&walk(&klein, &w("a")), &walk(&klein, &w("b"))).unwrap());

    let n3 = Surface::canonical(3, false).unwrap();
    let err = n3.free_homotopic(&walk(&n3, &w("ab")), &walk(&n3, &w("ba"))).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));

    let sphere = Surface::canonical(0, true).unwrap();
    assert!(sphere.free_homotopic(&[], &[]).unwrap());
}

#[test]
fn symmetric_and_reflexive() {
    let s = Surface::canonical(2, true).unwrap();
    for (a, b) in [("ab", "ba"), ("abab", "baba"), ("ab", "aB"), ("abcd", "dabc"), ("aab", "abb")] {
        let (x, y) = (walk(&s, &w(a)), walk(&s, &w(b)));
        assert_eq!(s.free_homotopic(&x, &y).unwrap(), s.free_homotopic(&y, &x).unwrap());
        assert!(s.free_homotopic(&x, &x).unwrap());
    }
}

#[test]
fn contractible_inputs() {
    let s = Surface::canonical(2, true).unwrap();
    let rel = walk(&s, &w("abABcdCD"));
    assert!(s.canonical_cycle(&rel).unwrap().is_none());
    assert!(s.free_homotopic(&rel, &[]).unwrap());
    assert!(!s.free_homotopic(&rel, &walk(&s, &w("a"))).unwrap());
}
