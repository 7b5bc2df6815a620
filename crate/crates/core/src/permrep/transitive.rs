use crate::error::{Error, Result};

use super::group::PermGroup;

/// The nontrivial transitive permutation groups of degree at most 5, up to
/// conjugacy in the symmetric group: (name, degree, generators).
const TRANSITIVE: &[(&str, usize, &[&str])] = &[
    ("C2", 2, &["(1,2)"]),
    ("C3", 3, &["(1,2,3)"]),
    ("S3", 3, &["(1,2,3)", "(1,2)"]),
    ("C4", 4, &["(1,2,3,4)"]),
    ("V4", 4, &["(1,2)(3,4)", "(1,3)(2,4)"]),
    ("D4", 4, &["(1,2,3,4)", "(1,3)"]),
    ("A4", 4, &["(1,2,3)", "(2,3,4)"]),
    ("S4", 4, &["(1,2,3,4)", "(1,2)"]),
    ("C5", 5, &["(1,2,3,4,5)"]),
    ("D5", 5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
    ("F20", 5, &["(1,2,3,4,5)", "(2,3,5,4)"]),
    ("A5", 5, &["(1,2,3,4,5)", "(1,2,3)"]),
    ("S5", 5, &["(1,2,3,4,5)", "(1,2)"]),
];

fn build(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::from_cycles(gens, Some(degree)).expect("table entries are valid")
}

/// Named transitive groups of degree at most `max_degree`.
pub fn transitive_groups(max_degree: usize) -> Vec<(&'static str, PermGroup)> {
    TRANSITIVE
        .iter()
        .filter(|(_, d, _)| *d <= max_degree)
        .map(|&(name, d, gens)| (name, build(d, gens)))
        .collect()
}

/// A small permutation group by name: the table above, `Sn`, `An`, `Cn` or `Dn`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    if let Some(&(_, d, gens)) = TRANSITIVE.iter().find(|(n, _, _)| *n == name) {
        return Ok(build(d, gens));
    }
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().map_err(|_| unknown())?;
    if n == 0 {
        return Err(unknown());
    }
    let cycle = |k: usize| -> String {
        let pts: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        format!("({})", pts.join(","))
    };
    let gens: Vec<String> = match kind {
        "C" => vec![cycle(n)],
        "S" if n >= 2 => vec![cycle(n), "(1,2)".into()],
        "S" => vec![],
        "A" if n >= 3 => (3..=n).map(|k| format!("(1,2,{k})")).collect(),
        "A" => vec![],
        "D" if n >= 3 => {
            let refl: String = (2..=n)
                .filter_map(|i| {
                    let j = n + 2 - i;
                    (i < j).then(|| format!("({i},{j})"))
                })
                .collect();
            vec![cycle(n), if refl.is_empty() { "()".into() } else { refl }]
        }
        _ => return Err(unknown()),
    };
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    PermGroup::from_cycles(&refs, Some(n))
}
