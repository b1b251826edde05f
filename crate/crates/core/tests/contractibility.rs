use rand::Rng;
use surface_homotopy::gen::{insert_relator, random_word, rng, Rng8};
use surface_homotopy::oracle::{dehn_trivial, free_reduce, GenWord, Presentation};
use surface_homotopy::Surface;

/// Mix of random words, relator consequences and one-letter perturbations
/// of those, all of length at most `max_len`.
fn sample(r: &mut Rng8, pres: &Presentation, max_len: usize) -> GenWord {
    let rank = pres.rank();
    loop {
        let w = match r.gen_range(0..3) {
            0 => {
                let (len, reduced) = (r.gen_range(0..=max_len), r.gen_bool(0.5));
                random_word(r, rank, len, reduced)
            }
            kind => {
                let mut w = GenWord::default();
                for _ in 0..r.gen_range(1..=3) {
                    let len = r.gen_range(0..6);
                    let u = random_word(r, rank, len, true);
                    w = insert_relator(r, &w, pres.relator());
                    w = u.concat(&w).concat(&u.inverse());
                }
                let mut w = free_reduce(&w);
                if kind == 2 && !w.is_empty() {
                    let i = r.gen_range(0..w.len());
                    w.0[i] = r.gen_range(0..2 * rank as u32);
                }
                w
            }
        };
        if w.len() <= max_len {
            return w;
        }
    }
}

#[test]
fn agrees_with_dehn_on_random_words() {
    for genus in [2u32, 3, 4] {
        let s = Surface::canonical(genus, true).unwrap();
        let pres = Presentation::canonical(genus, true).unwrap();
        let mut r = rng(1000 + genus as u64);
        let mut trivial = 0;
        for _ in 0..2000 {
            let w = sample(&mut r, &pres, 64);
            let walk = s.word_walk(&w).unwrap();
            let got = s.is_contractible(&walk).unwrap();
            let want = dehn_trivial(&w, &pres).unwrap();
            assert_eq!(got, want, "genus {genus}, word {w}");
            trivial += want as usize;
        }
        assert!(trivial > 300, "too few trivial samples: {trivial}");
    }
}

#[test]
fn agrees_with_dehn_on_non_orientable_words() {
    for genus in [4u32, 5] {
        let s = Surface::canonical(genus, false).unwrap();
        let pres = Presentation::canonical(genus, false).unwrap();
        assert!(pres.dehn_applicable());
        let mut r = rng(2000 + genus as u64);
        for _ in 0..1000 {
            let w = sample(&mut r, &pres, 48);
            let got = s.is_contractible(&s.word_walk(&w).unwrap()).unwrap();
            assert_eq!(got, dehn_trivial(&w, &pres).unwrap(), "genus {genus}, word {w}");
        }
    }
}

#[test]
fn refined_embeddings_agree_with_reduced_word() {
    use surface_homotopy::gen::{random_closed_walk, refine_embedding};
    use surface_homotopy::CellularEmbedding;
    let mut r = rng(77);
    let mut checked = 0;
    for trial in 0..40 {
        let (genus, orientable) = [(2, true), (3, true), (4, false), (5, false)][trial % 4];
        let base = CellularEmbedding::gen_canonical(genus, orientable).unwrap();
        let emb = refine_embedding(&mut r, &base, 12, 12).unwrap();
        let s = Surface::preprocess(emb.clone()).unwrap();
        let pres = Presentation::from_relator(s.cut().relator()).unwrap();
        if !pres.dehn_applicable() {
            continue;
        }
        for _ in 0..50 {
            let len = r.gen_range(0..30);
            let mut c = random_closed_walk(&mut r, &emb, 0, len);
            if r.gen_bool(0.4) {
                // Trace the boundary of a face: contractible by construction.
                let faces = emb.faces();
                let f = &faces[r.gen_range(0..faces.len())];
                let v = emb.origin(f[0].dart);
                let to = surface_homotopy::gen::shortest_path(&emb, 0, v);
                let face: Vec<u32> = f.iter().map(|st| st.dart).collect();
                c = surface_homotopy::gen::conjugate_walk(&face, &to);
            }
            let got = s.is_contractible(&c).unwrap();
            let want = dehn_trivial(&s.reduced_word(&c).unwrap(), &pres).unwrap();
            assert_eq!(got, want, "trial {trial}, walk {c:?}");
            checked += 1;
        }
    }
    assert!(checked >= 500);
}
