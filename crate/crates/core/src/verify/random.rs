use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentation::FinitePresentation;
use crate::words::Word;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform freely reduced word of exactly `len` letters.
pub fn reduced_letters(rng: &mut impl Rng, gens: usize, len: usize) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(len);
    while out.len() < len {
        let g = rng.gen_range(1..=gens as i32);
        let a = if rng.gen_bool(0.5) { g } else { -g };
        if out.last() != Some(&-a) {
            out.push(a);
        }
    }
    out
}

pub fn letters_to_word(gens: usize, letters: &[i32]) -> Word {
    Word::from_runs(
        gens,
        letters
            .iter()
            .map(|&a| ((a.unsigned_abs() - 1) as usize, a.signum() as i64)),
    )
    .expect("letters within alphabet")
}

pub fn word_to_letters(w: &Word) -> Vec<i32> {
    w.letters()
        .into_iter()
        .map(|l| {
            let g = l.generator as i32 + 1;
            if l.inverse {
                -g
            } else {
                g
            }
        })
        .collect()
}

pub fn random_word(rng: &mut impl Rng, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    letters_to_word(gens, &reduced_letters(rng, gens, len))
}

pub fn random_presentation(
    rng: &mut impl Rng,
    max_gens: usize,
    max_relators: usize,
    max_len: usize,
) -> FinitePresentation {
    let gens = rng.gen_range(1..=max_gens);
    let count = rng.gen_range(0..=max_relators);
    let relators = (0..count).map(|_| random_word(rng, gens, max_len)).collect();
    FinitePresentation::new(FinitePresentation::numbered_names("x", gens), relators)
        .expect("random relators are nontrivial")
}
