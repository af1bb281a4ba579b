//! Brute-force reference semantics.
//!
//! Enumerates every subset of the arguments and applies the textbook
//! definitions literally. Shares only the framework primitives with the rest
//! of the crate, never the search code, so it can serve as ground truth for
//! differential tests.

use crate::argset::ArgumentSet;
use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;
use crate::semantics::{self, Budget, ExtensionSet, SemanticsKind};

pub const DEFAULT_CAP: usize = 20;

struct Classified {
    conflict_free: Vec<ArgumentSet>,
    admissible: Vec<ArgumentSet>,
    stable: Vec<ArgumentSet>,
}

fn classify(af: &ArgumentationFramework, cap: usize) -> Result<Classified> {
    let n = af.len();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { args: n, cap });
    }
    let all = af.all_arguments();
    let mut out = Classified {
        conflict_free: Vec::new(),
        admissible: Vec::new(),
        stable: Vec::new(),
    };
    for mask in 0..(1u64 << n) {
        let s = ArgumentSet::from_mask(n, mask);
        if !af.is_conflict_free(&s) {
            continue;
        }
        if s.iter().all(|a| af.defends(&s, a)) {
            out.admissible.push(s.clone());
        }
        if af.range_of(&s) == all {
            out.stable.push(s.clone());
        }
        out.conflict_free.push(s);
    }
    Ok(out)
}

/// Sets in `sets` with no strict superset in `sets`.
fn subset_maximal(sets: &[ArgumentSet]) -> Vec<ArgumentSet> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t.is_proper_superset(s)))
        .cloned()
        .collect()
}

/// Sets in `sets` whose range has no strict superset among the ranges of `sets`.
fn range_maximal(af: &ArgumentationFramework, sets: &[ArgumentSet]) -> Vec<ArgumentSet> {
    let ranges: Vec<ArgumentSet> = sets.iter().map(|s| af.range_of(s)).collect();
    let mut distinct = ranges.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let maximal: Vec<&ArgumentSet> = distinct
        .iter()
        .filter(|r| !distinct.iter().any(|q| q.is_proper_superset(r)))
        .collect();
    sets.iter()
        .zip(&ranges)
        .filter(|(_, r)| maximal.contains(r))
        .map(|(s, _)| s.clone())
        .collect()
}

/// The extensions of `af` under `kind`, by exhaustive enumeration.
pub fn brute_force(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    cap: usize,
) -> Result<ExtensionSet> {
    let c = classify(af, cap)?;
    let sets = match kind {
        SemanticsKind::ConflictFree => c.conflict_free,
        SemanticsKind::Admissible => c.admissible,
        SemanticsKind::Stable => c.stable,
        SemanticsKind::Preferred => subset_maximal(&c.admissible),
        SemanticsKind::SemiStable => range_maximal(af, &c.admissible),
        SemanticsKind::Stage => range_maximal(af, &c.conflict_free),
    };
    Ok(ExtensionSet::new(af, sets))
}

/// All six semantics from one pass over the subsets, in [`SemanticsKind::ALL`] order.
pub fn brute_force_all(af: &ArgumentationFramework, cap: usize) -> Result<Vec<ExtensionSet>> {
    let c = classify(af, cap)?;
    Ok(vec![
        ExtensionSet::new(af, c.conflict_free.clone()),
        ExtensionSet::new(af, c.admissible.clone()),
        ExtensionSet::new(af, c.stable),
        ExtensionSet::new(af, subset_maximal(&c.admissible)),
        ExtensionSet::new(af, range_maximal(af, &c.admissible)),
        ExtensionSet::new(af, range_maximal(af, &c.conflict_free)),
    ])
}

/// Does the search engine agree with brute force on `af` under `kind`?
pub fn check_equivalence(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    cap: usize,
) -> Result<bool> {
    let expected = brute_force(af, kind, cap)?;
    let actual = semantics::enumerate(af, kind, &mut Budget::default())?;
    Ok(expected == actual)
}
