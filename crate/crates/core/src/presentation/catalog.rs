use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

use super::Presentation;

pub const CATALOG_NAMES: &[&str] = &[
    "Bp",
    "baumslag25",
    "A5",
    "free",
    "cyclic",
    "klein4",
    "S3",
    "padded",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<i64>,
    #[serde(serialize_with = "serialize_presentation")]
    pub presentation: Presentation,
    pub notes: String,
}

fn serialize_presentation<S: serde::Serializer>(
    p: &Presentation,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    p.to_json().serialize(s)
}

fn bad(name: &str, reason: &str) -> Error {
    Error::BadParameters {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn arity(name: &str, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(bad(name, &format!("expected {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

fn pw(runs: &[(usize, i64)]) -> Word {
    Word::from_powers(runs)
}

/// A named presentation. Regenerating with the same parameters gives an
/// identical presentation.
pub fn catalog(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    let (presentation, notes) = match name {
        "Bp" => {
            arity(name, params, 1)?;
            let p = params[0];
            if !(2..=1000).contains(&p) {
                return Err(bad(name, "p must satisfy 2 <= p <= 1000"));
            }
            let (a, b, al, be) = (0, 1, 2, 3);
            let bab = pw(&[(b, 1), (a, 1), (b, -1)]);
            let bab2 = pw(&[(be, 1), (al, 1), (be, -1)]);
            let rels = vec![
                pw(&[(b, 1), (a, -p), (b, -1), (a, p + 1)]),
                pw(&[(be, 1), (al, -p), (be, -1), (al, p + 1)]),
                Word::commutator(&bab, &Word::generator(a)).mul(&pw(&[(be, -1)])),
                Word::commutator(&bab2, &Word::generator(al)).mul(&pw(&[(b, -1)])),
            ];
            (
                Presentation::from_names(&["a", "b", "alpha", "beta"], rels)?,
                format!("aspherical perfect group B_{p} with no nontrivial finite quotients"),
            )
        }
        "baumslag25" => {
            arity(name, params, 1)?;
            let e = match params[0] {
                1 => 6,
                2 => 11,
                _ => return Err(bad(name, "variant must be 1 or 2")),
            };
            let rels = vec![pw(&[(0, 25)]), pw(&[(1, -1), (0, 1), (1, 1), (0, -e)])];
            (
                Presentation::from_names(&["a", "t"], rels)?,
                format!("Z/25 semidirect Z with t^-1 a t = a^{e}"),
            )
        }
        "A5" => {
            arity(name, params, 0)?;
            let rels = vec![
                pw(&[(0, 2)]),
                pw(&[(1, 3)]),
                pw(&[(0, 1), (1, 1)]).pow(5),
            ];
            (
                Presentation::from_names(&["a", "b"], rels)?,
                "alternating group of order 60".to_string(),
            )
        }
        "free" => {
            arity(name, params, 1)?;
            let n = params[0];
            if !(0..=26).contains(&n) {
                return Err(bad(name, "rank must lie in 0..=26"));
            }
            let names: Vec<String> = (0..n as u8).map(|i| ((b'a' + i) as char).to_string()).collect();
            (
                Presentation::new(Alphabet::new(&names)?, vec![])?,
                format!("free group of rank {n}"),
            )
        }
        "cyclic" => {
            arity(name, params, 1)?;
            let n = params[0];
            if n < 1 {
                return Err(bad(name, "order must be at least 1"));
            }
            (
                Presentation::from_names(&["a"], vec![pw(&[(0, n)])])?,
                format!("cyclic group of order {n}"),
            )
        }
        "klein4" => {
            arity(name, params, 0)?;
            let rels = vec![
                pw(&[(0, 2)]),
                pw(&[(1, 2)]),
                Word::commutator(&Word::generator(0), &Word::generator(1)),
            ];
            (
                Presentation::from_names(&["a", "b"], rels)?,
                "Klein four group".to_string(),
            )
        }
        "S3" => {
            arity(name, params, 0)?;
            let rels = vec![pw(&[(0, 2)]), pw(&[(1, 2)]), pw(&[(0, 1), (1, 1)]).pow(3)];
            (
                Presentation::from_names(&["a", "b"], rels)?,
                "symmetric group of degree 3".to_string(),
            )
        }
        "padded" => {
            arity(name, params, 1)?;
            let n = params[0];
            if !(1..=1000).contains(&n) {
                return Err(bad(name, "n must satisfy 1 <= n <= 1000"));
            }
            let rels = vec![
                pw(&[(1, 1), (0, -n), (1, -1), (0, n + 1)]),
                pw(&[(0, 1), (1, -n), (0, -1), (1, n + 1)]),
                Word::commutator(&Word::generator(0), &Word::generator(1)),
            ];
            (
                Presentation::from_names(&["a", "b"], rels)?,
                format!("presentation of the trivial group with 2 generators and 3 relators (n = {n})"),
            )
        }
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        parameters: params.to_vec(),
        presentation,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_relators() {
        let p = catalog("Bp", &[2]).unwrap().presentation;
        let rels: Vec<String> = p.relators().iter().map(|r| p.display_word(r)).collect();
        assert_eq!(
            rels,
            vec![
                "b a^-2 b^-1 a^3",
                "beta alpha^-2 beta^-1 alpha^3",
                "b a b^-1 a b a^-1 b^-1 a^-1 beta^-1",
                "beta alpha beta^-1 alpha beta alpha^-1 beta^-1 alpha^-1 b^-1",
            ]
        );
        assert_eq!(Presentation::parse(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn baumslag_variants() {
        let g2 = catalog("baumslag25", &[2]).unwrap().presentation;
        assert_eq!(g2.serialize(), "< a, t | a^25, t^-1 a t a^-11 >");
        // 6^2 = 36 = 11 mod 25
        assert_eq!(6 * 6 % 25, 11);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(catalog("Bp", &[1]), Err(Error::BadParameters { .. })));
        assert!(matches!(catalog("Bp", &[]), Err(Error::BadParameters { .. })));
        assert!(matches!(catalog("nope", &[]), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn deterministic() {
        for name in CATALOG_NAMES {
            let params: Vec<i64> = match *name {
                "Bp" => vec![4],
                "baumslag25" => vec![1],
                "free" | "cyclic" | "padded" => vec![3],
                _ => vec![],
            };
            assert_eq!(catalog(name, &params).unwrap(), catalog(name, &params).unwrap());
        }
    }
}
