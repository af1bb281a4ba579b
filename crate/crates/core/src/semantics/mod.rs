//! Extension enumeration and verification for conflict-free, admissible,
//! stable, preferred, semi-stable and stage semantics.
//!
//! Enumeration runs a labelling search (see [`Labelling`]) that produces
//! candidates satisfying a necessary condition for the requested semantics.
//! Candidates for the second-level semantics are then confirmed with the
//! witness searches in this module: preferred candidates must admit no
//! conflict-compatible admissible witness outside them, and semi-stable or
//! stage candidates must admit no cover of their range plus one more argument.

mod search;
mod witness;

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::argset::ArgumentSet;
use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;

pub use search::{Label, Labelling};
pub use witness::{
    exists_cover_with_property, is_preferred_by_maximality, is_preferred_by_witness,
    is_range_supreme_by_cover, is_range_supreme_by_superset,
};

use search::{Mode, Search};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticsKind {
    ConflictFree,
    Admissible,
    Stable,
    Preferred,
    SemiStable,
    Stage,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 6] = [
        SemanticsKind::ConflictFree,
        SemanticsKind::Admissible,
        SemanticsKind::Stable,
        SemanticsKind::Preferred,
        SemanticsKind::SemiStable,
        SemanticsKind::Stage,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SemanticsKind::ConflictFree => "cf",
            SemanticsKind::Admissible => "adm",
            SemanticsKind::Stable => "stb",
            SemanticsKind::Preferred => "prf",
            SemanticsKind::SemiStable => "sem",
            SemanticsKind::Stage => "stg",
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SemanticsKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown semantics `{s}` (expected cf, adm, stb, prf, sem or stg)")
            })
    }
}

/// The property a range-maximality check is relative to: stage extensions
/// compare against conflict-free sets, semi-stable ones against admissible sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseProperty {
    ConflictFree,
    Admissible,
}

impl BaseProperty {
    pub fn holds(self, af: &ArgumentationFramework, set: &ArgumentSet) -> bool {
        match self {
            BaseProperty::ConflictFree => af.is_conflict_free(set),
            BaseProperty::Admissible => is_admissible(af, set),
        }
    }
}

impl TryFrom<SemanticsKind> for BaseProperty {
    type Error = Error;

    fn try_from(kind: SemanticsKind) -> Result<Self> {
        match kind {
            SemanticsKind::ConflictFree => Ok(BaseProperty::ConflictFree),
            SemanticsKind::Admissible => Ok(BaseProperty::Admissible),
            _ => Err(Error::Precondition("base property must be cf or adm")),
        }
    }
}

/// Node budget shared by every search performed within one call.
///
/// Exceeding the limit yields [`Error::BudgetExceeded`]. An optional cancel
/// flag lets an outside watchdog stop a running search with
/// [`Error::Cancelled`].
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: 0,
            cancel: None,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        if self.used & 0x3ff == 0 {
            if let Some(flag) = &self.cancel {
                if flag.load(Ordering::Relaxed) {
                    return Err(Error::Cancelled);
                }
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_NODES)
    }
}

/// The extensions of one framework under one semantics, deduplicated and in
/// ascending [`ArgumentSet`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSet {
    fingerprint: u64,
    extensions: Vec<ArgumentSet>,
}

impl ExtensionSet {
    pub fn new(af: &ArgumentationFramework, sets: impl IntoIterator<Item = ArgumentSet>) -> Self {
        let mut extensions: Vec<_> = sets.into_iter().collect();
        extensions.sort_unstable();
        extensions.dedup();
        ExtensionSet {
            fingerprint: af.fingerprint(),
            extensions,
        }
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn contains(&self, set: &ArgumentSet) -> bool {
        self.extensions.binary_search(set).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ArgumentSet> {
        self.extensions.iter()
    }

    pub fn as_slice(&self) -> &[ArgumentSet] {
        &self.extensions
    }

    pub fn into_vec(self) -> Vec<ArgumentSet> {
        self.extensions
    }

    /// Every extension of `self` is also an extension of `other`.
    pub fn is_subset(&self, other: &ExtensionSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }
}

impl<'a> IntoIterator for &'a ExtensionSet {
    type Item = &'a ArgumentSet;
    type IntoIter = std::slice::Iter<'a, ArgumentSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

pub fn is_admissible(af: &ArgumentationFramework, set: &ArgumentSet) -> bool {
    if !af.is_conflict_free(set) {
        return false;
    }
    let counter = af.attacked_by_set(set);
    set.iter()
        .all(|a| af.attackers_of(a).iter().all(|&b| counter.contains(b)))
}

pub fn is_stable(af: &ArgumentationFramework, set: &ArgumentSet) -> bool {
    af.is_conflict_free(set) && af.range_of(set).is_full()
}

/// Admissible and containing every argument it defends.
pub(crate) fn is_complete(af: &ArgumentationFramework, set: &ArgumentSet) -> bool {
    if !is_admissible(af, set) {
        return false;
    }
    let counter = af.attacked_by_set(set);
    (0..af.len())
        .filter(|&a| !set.contains(a))
        .all(|a| !af.attackers_of(a).iter().all(|&b| counter.contains(b)))
}

/// Conflict-free and not extendable by any argument.
pub(crate) fn is_naive(af: &ArgumentationFramework, set: &ArgumentSet) -> bool {
    af.is_conflict_free(set)
        && (0..af.len())
            .filter(|&a| !set.contains(a))
            .all(|a| !af.compatible_with(set, a))
}

/// Enumerates all extensions, sorted and deduplicated.
pub fn enumerate(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    budget: &mut Budget,
) -> Result<ExtensionSet> {
    let mut found = Vec::new();
    enumerate_with(af, kind, budget, |s| {
        found.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(ExtensionSet::new(af, found))
}

/// Streams extensions to `visit` in search order, stopping early on
/// [`ControlFlow::Break`]. Each extension is reported exactly once.
pub fn enumerate_with(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    budget: &mut Budget,
    mut visit: impl FnMut(&ArgumentSet) -> ControlFlow<()>,
) -> Result<()> {
    let mode = match kind {
        SemanticsKind::ConflictFree => Mode::ConflictFree,
        SemanticsKind::Admissible => Mode::Admissible,
        SemanticsKind::Stable => Mode::Stable,
        SemanticsKind::Preferred | SemanticsKind::SemiStable => Mode::Complete,
        SemanticsKind::Stage => Mode::Naive,
    };
    // Stable extensions, when there are any, are exactly the semi-stable and
    // stage extensions.
    if matches!(kind, SemanticsKind::SemiStable | SemanticsKind::Stage) {
        let mut stable = Vec::new();
        Search::new(af, Mode::Stable).run(budget, |labelling, _| {
            let set = labelling.in_set();
            if is_stable(af, &set) {
                stable.push(set);
            }
            Ok(ControlFlow::Continue(()))
        })?;
        if !stable.is_empty() {
            for set in &stable {
                if visit(set).is_break() {
                    break;
                }
            }
            return Ok(());
        }
    }

    // Candidates sharing a range share the outcome of the range check.
    let mut range_verdicts: HashMap<ArgumentSet, bool> = HashMap::new();

    let mut search = Search::new(af, mode);
    search.run(budget, |labelling, budget| {
        let set = labelling.in_set();
        let accept = match kind {
            SemanticsKind::ConflictFree => af.is_conflict_free(&set),
            SemanticsKind::Admissible => is_admissible(af, &set),
            SemanticsKind::Stable => is_stable(af, &set),
            SemanticsKind::Preferred => {
                is_complete(af, &set) && witness::preferred_check(af, &set, budget)?
            }
            SemanticsKind::SemiStable | SemanticsKind::Stage => {
                let base = if kind == SemanticsKind::Stage {
                    if !is_naive(af, &set) {
                        return Ok(ControlFlow::Continue(()));
                    }
                    BaseProperty::ConflictFree
                } else {
                    if !is_complete(af, &set) {
                        return Ok(ControlFlow::Continue(()));
                    }
                    BaseProperty::Admissible
                };
                let range = af.range_of(&set);
                match range_verdicts.get(&range) {
                    Some(&v) => v,
                    None => {
                        let v = witness::range_supreme_check(af, &range, base, budget)?;
                        range_verdicts.insert(range, v);
                        v
                    }
                }
            }
        };
        Ok(if accept {
            visit(&set)
        } else {
            ControlFlow::Continue(())
        })
    })
}

/// Is `a` in some extension?
pub fn credulous(
    af: &ArgumentationFramework,
    a: usize,
    kind: SemanticsKind,
    budget: &mut Budget,
) -> Result<bool> {
    af.check_index(a)?;
    let mut accepted = false;
    enumerate_with(af, kind, budget, |s| {
        if s.contains(a) {
            accepted = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(accepted)
}

/// Is `a` in every extension? Vacuously true when there are none.
pub fn skeptical(
    af: &ArgumentationFramework,
    a: usize,
    kind: SemanticsKind,
    budget: &mut Budget,
) -> Result<bool> {
    af.check_index(a)?;
    let mut accepted = true;
    enumerate_with(af, kind, budget, |s| {
        if s.contains(a) {
            ControlFlow::Continue(())
        } else {
            accepted = false;
            ControlFlow::Break(())
        }
    })?;
    Ok(accepted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::tests::{example1, three_cycle};

    fn exts(af: &ArgumentationFramework, kind: SemanticsKind) -> Vec<Vec<String>> {
        enumerate(af, kind, &mut Budget::default())
            .unwrap()
            .iter()
            .map(|s| af.member_names(s).map(str::to_owned).collect())
            .collect()
    }

    fn names(sets: &[&[&str]]) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| s.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    #[test]
    fn example1_preferred_and_stable() {
        let af = example1();
        let expected = names(&[&["a", "c", "f"], &["a", "d", "f"]]);
        assert_eq!(exts(&af, SemanticsKind::Preferred), expected);
        assert_eq!(exts(&af, SemanticsKind::Stable), expected);
        assert_eq!(exts(&af, SemanticsKind::Stage), expected);
        assert_eq!(exts(&af, SemanticsKind::SemiStable), expected);
    }

    #[test]
    fn example1_admissible() {
        let af = example1();
        let expected = names(&[
            &[],
            &["a"],
            &["a", "c"],
            &["a", "c", "f"],
            &["a", "d"],
            &["a", "d", "f"],
            &["c"],
            &["c", "f"],
        ]);
        assert_eq!(exts(&af, SemanticsKind::Admissible), expected);
    }

    #[test]
    fn three_cycle_semantics() {
        // brute force over the 8 subsets: cf = {}, {a}, {b}, {c}; only {} is admissible
        let af = three_cycle();
        assert!(exts(&af, SemanticsKind::Stable).is_empty());
        assert_eq!(
            exts(&af, SemanticsKind::Stage),
            names(&[&["a"], &["b"], &["c"]])
        );
        assert_eq!(exts(&af, SemanticsKind::SemiStable), names(&[&[]]));
        assert_eq!(exts(&af, SemanticsKind::Preferred), names(&[&[]]));
        assert_eq!(
            exts(&af, SemanticsKind::ConflictFree),
            names(&[&[], &["a"], &["b"], &["c"]])
        );
    }

    #[test]
    fn empty_framework_yields_empty_extension() {
        let af = ArgumentationFramework::build(Vec::<&str>::new(), Vec::new()).unwrap();
        for kind in SemanticsKind::ALL {
            assert_eq!(exts(&af, kind), names(&[&[]]), "{kind}");
        }
    }

    #[test]
    fn admissible_and_stable_checks() {
        let af = example1();
        assert!(is_admissible(&af, &af.set_of(["c", "f"]).unwrap()));
        assert!(!is_admissible(&af, &af.set_of(["b"]).unwrap()));
        assert!(is_admissible(&af, &af.empty_set()));
        assert!(is_stable(&af, &af.set_of(["a", "d", "f"]).unwrap()));
        assert!(is_stable(&af, &af.set_of(["a", "c", "f"]).unwrap()));
        assert!(!is_stable(&af, &af.empty_set()));
    }

    #[test]
    fn acceptance_queries() {
        let af = example1();
        let idx = |n: &str| af.lookup(n).unwrap();
        let mut b = Budget::default();
        assert!(credulous(&af, idx("c"), SemanticsKind::Preferred, &mut b).unwrap());
        assert!(!credulous(&af, idx("b"), SemanticsKind::Preferred, &mut b).unwrap());
        assert!(credulous(&af, idx("a"), SemanticsKind::Stable, &mut b).unwrap());
        assert!(skeptical(&af, idx("a"), SemanticsKind::Preferred, &mut b).unwrap());
        assert!(!skeptical(&af, idx("c"), SemanticsKind::Preferred, &mut b).unwrap());
        let cyc = three_cycle();
        assert!(skeptical(&cyc, 0, SemanticsKind::Stable, &mut b).unwrap());
        assert!(credulous(&af, 17, SemanticsKind::Stable, &mut b).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let af = example1();
        let err = enumerate(&af, SemanticsKind::Preferred, &mut Budget::new(2)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(2)));
    }

    #[test]
    fn cancel_flag_stops_search() {
        let af = ArgumentationFramework::from_index_pairs(40, []);
        let flag = Arc::new(AtomicBool::new(true));
        let mut budget = Budget::unlimited().with_cancel(flag);
        let err = enumerate(&af, SemanticsKind::ConflictFree, &mut budget).unwrap_err();
        assert!(matches!(err, Error::Cancelled));
    }

    #[test]
    fn kind_tags_round_trip() {
        for kind in SemanticsKind::ALL {
            assert_eq!(kind.tag().parse::<SemanticsKind>().unwrap(), kind);
        }
        assert!("grd".parse::<SemanticsKind>().is_err());
        assert!(BaseProperty::try_from(SemanticsKind::Stable).is_err());
    }
}
