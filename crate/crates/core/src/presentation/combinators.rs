use crate::error::{Error, Result};
use crate::word::{substitute, Alphabet, Letter, Substitution, Word};

use super::Presentation;

/// Copies `p`'s relators into a larger alphabet, generator `g` landing at `offset + g`.
fn shifted(p: &Presentation, offset: usize) -> Vec<Word> {
    let map: Vec<usize> = (0..p.generator_count()).map(|g| g + offset).collect();
    p.relators().iter().map(|r| r.relabel(&map)).collect()
}

fn suffixed(p: &Presentation, q: &Presentation) -> Result<Alphabet> {
    let mut alphabet = Alphabet::default();
    for name in p.alphabet().names() {
        alphabet.push(&format!("{name}_1"))?;
    }
    for name in q.alphabet().names() {
        alphabet.push(&format!("{name}_2"))?;
    }
    Ok(alphabet)
}

/// Joint alphabet; names are kept unless the two alphabets overlap, in
/// which case every generator gets its `_1` / `_2` suffix.
fn joined(p: &Presentation, q: &Presentation) -> Result<Alphabet> {
    let clash = q.alphabet().names().iter().any(|n| p.alphabet().contains(n));
    if clash {
        return suffixed(p, q);
    }
    Alphabet::new(
        &p.alphabet()
            .names()
            .iter()
            .chain(q.alphabet().names())
            .collect::<Vec<_>>(),
    )
}

/// `< A_1, A_2 | R_1, R_2, [x_1, y_2] for all x, y >`.
///
/// Generators of `p` become `g_1`, those of `q` become `g_2`. Relator count
/// is `|R_p| + |R_q| + |A_p| |A_q|`.
pub fn direct_product(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    let alphabet = suffixed(p, q)?;
    let np = p.generator_count();
    let mut relators = shifted(p, 0);
    relators.extend(shifted(q, np));
    for x in 0..np {
        for y in 0..q.generator_count() {
            relators.push(Word::commutator(
                &Word::generator(x),
                &Word::generator(np + y),
            ));
        }
    }
    Presentation::new(alphabet, relators)
}

/// Free product with amalgamation along the listed identifications `u_i = v_i`.
pub fn amalgam(
    p: &Presentation,
    q: &Presentation,
    identifications: &[(Word, Word)],
) -> Result<Presentation> {
    let alphabet = joined(p, q)?;
    let np = p.generator_count();
    let qmap: Vec<usize> = (0..q.generator_count()).map(|g| g + np).collect();
    let mut relators = shifted(p, 0);
    relators.extend(shifted(q, np));
    for (u, v) in identifications {
        check_over(u, np)?;
        check_over(v, q.generator_count())?;
        relators.push(u.mul(&v.relabel(&qmap).inverse()));
    }
    Presentation::new(alphabet, relators)
}

pub fn free_product(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    amalgam(p, q, &[])
}

/// `< A, t | R, t^-1 a t = phi(a) >` for an endomorphism `phi` of `p`'s free group.
pub fn hnn_ascending(p: &Presentation, phi: &Substitution, t: &str) -> Result<Presentation> {
    let n = p.generator_count();
    if phi.domain_size() != n {
        return Err(Error::Dimension(format!(
            "endomorphism has {} images for {} generators",
            phi.domain_size(),
            n
        )));
    }
    let mut alphabet = p.alphabet().clone();
    let ti = alphabet.push(t)?;
    let mut relators = p.relators().to_vec();
    for a in 0..n {
        check_over(phi.image(a), n)?;
        let image = substitute(&Word::generator(a), phi)?;
        let tw = Word::from_letters(vec![
            Letter::new(ti, true),
            Letter::positive(a),
            Letter::positive(ti),
        ]);
        relators.push(tw.mul(&image.inverse()));
    }
    Presentation::new(alphabet, relators)
}

fn check_over(w: &Word, n: usize) -> Result<()> {
    match w.max_generator() {
        Some(g) if g >= n => Err(Error::Domain { index: g, size: n }),
        _ => Ok(()),
    }
}
