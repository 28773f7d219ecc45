//! A built-in catalog of models with frozen invariants.
//!
//! Every entry records the canonical render of its E-polynomial and the
//! expected outcome of the resolution comparison, computed once and pinned.
//! [`selftest`] recomputes everything from scratch and diffs against the
//! frozen strings, so a regression anywhere in the pipeline surfaces as a
//! named failure.

use crate::error::Error;
use crate::monomial::{Angle, MonomialElement, MonomialGroup};
use crate::orbifold::{compare_k_equivalent, verify_mckay, wps_fan, OrbifoldModel};
use crate::scalar::{fr, fr_int, Frac};
use crate::toric::{Cone, Fan, RefinedLattice};
use crate::Int;

/// A named model or comparison pair with pinned expectations.
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    /// Canonical render of the orbifold (for comparisons: stringy)
    /// E-polynomial.
    pub expected: String,
    /// Expected comparison outcome; `None` when no resolution applies.
    pub expect_equal: Option<bool>,
}

pub enum EntryKind {
    Model(OrbifoldModel<Int>),
    Compare(Fan<Int>, Fan<Int>),
}

/// One line of self test output.
pub struct SelftestLine {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn diagonal(angles: &[(i64, i64)]) -> MonomialElement<Int> {
    MonomialElement::diagonal(angles.iter().map(|&(n, d)| Angle::new(fr(n, d))).collect())
}

fn diagonal_group(dim: usize, gens: &[Vec<(i64, i64)>]) -> MonomialGroup<Int> {
    let gens = gens.iter().map(|g| diagonal(g)).collect();
    MonomialGroup::close_default(dim, gens).expect("built-in group closes under the default cap")
}

fn cyclic(r: i64, weights: &[i64]) -> OrbifoldModel<Int> {
    let angles: Vec<(i64, i64)> = weights.iter().map(|&w| (w, r)).collect();
    OrbifoldModel::LocalQuotient(diagonal_group(weights.len(), &[angles]))
}

fn monomial_group(dim: usize, gens: &[MonomialElement<Int>]) -> OrbifoldModel<Int> {
    OrbifoldModel::LocalQuotient(
        MonomialGroup::close_default(dim, gens.to_vec())
            .expect("built-in group closes under the default cap"),
    )
}

fn flop_pair() -> (Fan<Int>, Fan<Int>) {
    let lattice = RefinedLattice::standard(3);
    let rays: Vec<Vec<Frac<Int>>> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| fr_int(x)).collect())
        .collect();
    let cone = |v: Vec<usize>| Cone::new(v).expect("built-in cone");
    let left = Fan::new(
        lattice.clone(),
        rays.clone(),
        vec![cone(vec![0, 1, 3]), cone(vec![0, 2, 3])],
    )
    .expect("built-in fan");
    let right = Fan::new(lattice, rays, vec![cone(vec![0, 1, 2]), cone(vec![1, 2, 3])])
        .expect("built-in fan");
    (left, right)
}

/// The built-in entries, in a fixed order.
pub fn builtin() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for r in 2..=10i64 {
        out.push(CatalogEntry {
            name: match r {
                2 => "A1",
                3 => "A2",
                4 => "A3",
                5 => "A4",
                6 => "A5",
                7 => "A6",
                8 => "A7",
                9 => "A8",
                _ => "A9",
            },
            kind: EntryKind::Model(cyclic(r, &[1, r - 1])),
            expected: format!("{}*(uv)^1 + 1*(uv)^2", r - 1),
            expect_equal: Some(true),
        });
    }
    let entries: Vec<(&'static str, EntryKind, &'static str, Option<bool>)> = vec![
        (
            "1/3(1,1,1)",
            EntryKind::Model(cyclic(3, &[1, 1, 1])),
            "1*(uv)^1 + 1*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "1/5(1,1,3)",
            EntryKind::Model(cyclic(5, &[1, 1, 3])),
            "2*(uv)^1 + 2*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "1/2(1,1,0)",
            EntryKind::Model(cyclic(2, &[1, 1, 0])),
            "1*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "1/7(1,2,4)",
            EntryKind::Model(cyclic(7, &[1, 2, 4])),
            "3*(uv)^1 + 3*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "(Z/2)x(Z/2)",
            EntryKind::Model(OrbifoldModel::LocalQuotient(diagonal_group(
                3,
                &[vec![(1, 2), (1, 2), (0, 1)], vec![(1, 2), (0, 1), (1, 2)]],
            ))),
            "3*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "(Z/3)x(Z/3)",
            EntryKind::Model(OrbifoldModel::LocalQuotient(diagonal_group(
                3,
                &[vec![(1, 3), (2, 3), (0, 1)], vec![(0, 1), (1, 3), (2, 3)]],
            ))),
            "1*(uv)^1 + 7*(uv)^2 + 1*(uv)^3",
            Some(true),
        ),
        (
            "Q8",
            EntryKind::Model(monomial_group(
                2,
                &[
                    diagonal(&[(1, 4), (3, 4)]),
                    MonomialElement::new(vec![1, 0], vec![Angle::zero(), Angle::new(fr(1, 2))])
                        .expect("built-in element"),
                ],
            )),
            "4*(uv)^1 + 1*(uv)^2",
            None,
        ),
        (
            "BD3",
            EntryKind::Model(monomial_group(
                2,
                &[
                    diagonal(&[(1, 6), (5, 6)]),
                    MonomialElement::new(vec![1, 0], vec![Angle::zero(), Angle::new(fr(1, 2))])
                        .expect("built-in element"),
                ],
            )),
            "5*(uv)^1 + 1*(uv)^2",
            None,
        ),
        (
            "P(1,1,2)",
            EntryKind::Model(OrbifoldModel::WeightedProjective(vec![1, 1, 2])),
            "1 + 2*(uv)^1 + 1*(uv)^2",
            Some(true),
        ),
        (
            "P(1,2,3)",
            EntryKind::Model(OrbifoldModel::WeightedProjective(vec![1, 2, 3])),
            "1 + 4*(uv)^1 + 1*(uv)^2",
            Some(true),
        ),
        (
            "P2",
            EntryKind::Model(OrbifoldModel::Toric(
                wps_fan(&[1, 1, 1]).expect("built-in fan"),
            )),
            "1 + 1*(uv)^1 + 1*(uv)^2",
            Some(true),
        ),
        ("flop pair", {
            let (l, r) = flop_pair();
            EntryKind::Compare(l, r)
        }, "1*(uv)^2 + 1*(uv)^3", Some(true)),
    ];
    for (name, kind, expected, expect_equal) in entries {
        out.push(CatalogEntry { name, kind, expected: expected.into(), expect_equal });
    }
    out
}

/// Diagonal special linear groups of order at most 200 in rank at most 3,
/// for cross checking the conjugacy class route against lattice point
/// enumeration.
pub fn special_linear_samples() -> Vec<(String, MonomialGroup<Int>)> {
    let mut out = Vec::new();
    for r in 2..=50i64 {
        out.push((
            format!("1/{r}(1,{})", r - 1),
            diagonal_group(2, &[vec![(1, r), (r - 1, r)]]),
        ));
    }
    for (r, w) in [(30i64, [1i64, 7, 22]), (100, [1, 13, 86]), (200, [3, 7, 190])] {
        out.push((
            format!("1/{r}({},{},{})", w[0], w[1], w[2]),
            diagonal_group(3, &[w.iter().map(|&x| (x, r)).collect()]),
        ));
    }
    for n in [12i64, 14] {
        out.push((
            format!("(Z/{n})x(Z/{n})"),
            diagonal_group(
                3,
                &[vec![(1, n), (n - 1, n), (0, 1)], vec![(0, 1), (1, n), (n - 1, n)]],
            ),
        ));
    }
    out
}

/// Recompute every built-in entry and diff it against its pinned values.
pub fn selftest(cap: u64) -> Result<Vec<SelftestLine>, Error> {
    let mut out = Vec::new();
    for entry in builtin() {
        let (computed, equal) = match &entry.kind {
            EntryKind::Model(model) => {
                let report = verify_mckay(model, cap)?;
                (report.orbifold_epoly.to_string(), report.equal)
            }
            EntryKind::Compare(left, right) => {
                let report = compare_k_equivalent(left, right, cap)?;
                (report.stringy_left.to_string(), Some(report.equal))
            }
        };
        let ok = computed == entry.expected && equal == entry.expect_equal;
        let detail = if ok {
            computed
        } else {
            format!(
                "got {computed} (equal {equal:?}), pinned {} (equal {:?})",
                entry.expected, entry.expect_equal
            )
        };
        out.push(SelftestLine { name: entry.name, ok, detail });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;
    use std::collections::BTreeSet;

    #[test]
    fn selftest_matches_every_pinned_value() {
        let lines = selftest(DEFAULT_CAP).unwrap();
        assert_eq!(lines.len(), builtin().len());
        for line in &lines {
            assert!(line.ok, "{}: {}", line.name, line.detail);
        }
    }

    #[test]
    fn catalog_is_deterministic() {
        let names: Vec<&str> = builtin().iter().map(|e| e.name).collect();
        let again: Vec<&str> = builtin().iter().map(|e| e.name).collect();
        assert_eq!(names, again);
        let unique: BTreeSet<&str> = names.iter().copied().collect();
        assert_eq!(unique.len(), names.len());
        assert_eq!(names.len(), 21);
    }

    #[test]
    fn cross_check_samples_are_diagonal_special_linear() {
        let samples = special_linear_samples();
        assert_eq!(samples.len(), 54);
        for (name, group) in &samples {
            assert!(group.is_diagonal(), "{name}");
            assert!(group.is_sl(), "{name}");
            assert!(group.order() <= 200, "{name}");
            assert!(group.dim() <= 3, "{name}");
        }
    }
}
