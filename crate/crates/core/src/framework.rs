//! Argumentation frameworks and the primitive predicates every semantics is
//! assembled from: conflict-freeness, defense, range and covers.

use std::collections::HashMap;

use crate::argset::ArgumentSet;
use crate::error::{Error, Result};

/// How attack endpoints that were never declared as arguments are treated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EndpointMode {
    /// Undeclared endpoints are an error.
    #[default]
    Strict,
    /// Undeclared endpoints are appended to the argument list in order of
    /// first appearance.
    Lenient,
}

/// An immutable framework `(A, R)` with arguments interned to dense indices.
///
/// Argument indices follow first appearance in the input. Attacks are kept
/// deduplicated and sorted by `(attacker, target)`.
#[derive(Debug, Clone)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    attackers_of: Vec<Vec<usize>>,
    attacked_by: Vec<Vec<usize>>,
    attacker_sets: Vec<ArgumentSet>,
    target_sets: Vec<ArgumentSet>,
    self_attacking: ArgumentSet,
}

impl ArgumentationFramework {
    /// Builds a framework in strict mode.
    pub fn build<N, S, A>(names: N, attacks: A) -> Result<Self>
    where
        N: IntoIterator<Item = S>,
        S: Into<String>,
        A: IntoIterator<Item = (S, S)>,
    {
        Self::build_with(names, attacks, EndpointMode::Strict).map(|(af, _)| af)
    }

    /// Builds a framework, returning the names that were auto-declared in
    /// lenient mode (always empty in strict mode).
    pub fn build_with<N, S, A>(
        names: N,
        attacks: A,
        mode: EndpointMode,
    ) -> Result<(Self, Vec<String>)>
    where
        N: IntoIterator<Item = S>,
        S: Into<String>,
        A: IntoIterator<Item = (S, S)>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for name in names {
            let name = name.into();
            if index.contains_key(&name) {
                return Err(Error::DuplicateArgument(name));
            }
            index.insert(name.clone(), list.len());
            list.push(name);
        }

        let mut auto_declared = Vec::new();
        let mut pairs = Vec::new();
        for (from, to) in attacks {
            let (from, to) = (from.into(), to.into());
            let mut resolve = |name: String| -> Result<usize> {
                if let Some(&i) = index.get(&name) {
                    return Ok(i);
                }
                match mode {
                    EndpointMode::Strict => Err(Error::UnknownArgument(name)),
                    EndpointMode::Lenient => {
                        let i = list.len();
                        index.insert(name.clone(), i);
                        list.push(name.clone());
                        auto_declared.push(name);
                        Ok(i)
                    }
                }
            };
            let a = resolve(from)?;
            let b = resolve(to)?;
            pairs.push((a, b));
        }

        let af = Self::assemble(list, index, pairs);
        Ok((af, auto_declared))
    }

    /// Builds a framework over arguments named by their decimal index.
    pub fn from_index_pairs(n: usize, attacks: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_named_index_pairs(names, attacks).expect("generated names are unique")
    }

    /// Builds a framework from unique names and index-based attacks.
    /// Panics if an attack endpoint is out of range.
    pub fn from_named_index_pairs(
        names: Vec<String>,
        attacks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateArgument(name.clone()));
            }
        }
        let n = names.len();
        let pairs: Vec<_> = attacks
            .into_iter()
            .inspect(|&(a, b)| assert!(a < n && b < n, "attack ({a},{b}) out of range"))
            .collect();
        Ok(Self::assemble(names, index, pairs))
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        mut attacks: Vec<(usize, usize)>,
    ) -> Self {
        attacks.sort_unstable();
        attacks.dedup();
        let n = names.len();
        let mut attackers_of = vec![Vec::new(); n];
        let mut attacked_by = vec![Vec::new(); n];
        let mut attacker_sets = vec![ArgumentSet::empty(n); n];
        let mut target_sets = vec![ArgumentSet::empty(n); n];
        let mut self_attacking = ArgumentSet::empty(n);
        for &(a, b) in &attacks {
            attacked_by[a].push(b);
            attackers_of[b].push(a);
            target_sets[a].insert(b);
            attacker_sets[b].insert(a);
            if a == b {
                self_attacking.insert(a);
            }
        }
        // Attacks are sorted by source, so attackers_of is already ascending.
        ArgumentationFramework {
            names,
            index,
            attacks,
            attackers_of,
            attacked_by,
            attacker_sets,
            target_sets,
            self_attacking,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn num_attacks(&self) -> usize {
        self.attacks.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Like [`index_of`](Self::index_of) but with an error for unknown names.
    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownArgument(name.to_owned()))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// All attacks, sorted by `(attacker, target)`.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn attacks_pair(&self, from: usize, to: usize) -> bool {
        self.target_sets[from].contains(to)
    }

    /// Attackers of `a`, ascending.
    #[inline]
    pub fn attackers_of(&self, a: usize) -> &[usize] {
        &self.attackers_of[a]
    }

    /// Arguments attacked by `a`, ascending.
    #[inline]
    pub fn attacked_by(&self, a: usize) -> &[usize] {
        &self.attacked_by[a]
    }

    #[inline]
    pub fn attacker_set(&self, a: usize) -> &ArgumentSet {
        &self.attacker_sets[a]
    }

    #[inline]
    pub fn target_set(&self, a: usize) -> &ArgumentSet {
        &self.target_sets[a]
    }

    pub fn is_self_attacking(&self, a: usize) -> bool {
        self.self_attacking.contains(a)
    }

    pub fn empty_set(&self) -> ArgumentSet {
        ArgumentSet::empty(self.len())
    }

    pub fn all_arguments(&self) -> ArgumentSet {
        ArgumentSet::full(self.len())
    }

    /// Builds a set from argument names.
    pub fn set_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<ArgumentSet> {
        let mut set = self.empty_set();
        for name in names {
            set.insert(self.lookup(name)?);
        }
        Ok(set)
    }

    pub fn member_names<'a>(&'a self, set: &'a ArgumentSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |i| self.name(i))
    }

    /// Arguments attacked by at least one member of `set`.
    pub fn attacked_by_set(&self, set: &ArgumentSet) -> ArgumentSet {
        let mut out = self.empty_set();
        for a in set {
            out.union_with(&self.target_sets[a]);
        }
        out
    }

    /// No attack has both endpoints in `set`.
    pub fn is_conflict_free(&self, set: &ArgumentSet) -> bool {
        set.iter().all(|a| !self.target_sets[a].intersects(set))
    }

    /// Every attacker of `a` is attacked by some member of `set`.
    pub fn defends(&self, set: &ArgumentSet, a: usize) -> bool {
        let counter = self.attacked_by_set(set);
        self.attackers_of[a].iter().all(|&b| counter.contains(b))
    }

    /// `set` together with everything it attacks.
    pub fn range_of(&self, set: &ArgumentSet) -> ArgumentSet {
        let mut range = self.attacked_by_set(set);
        range.union_with(set);
        range
    }

    /// `target ⊆ range_of(cover)`.
    pub fn is_cover(&self, cover: &ArgumentSet, target: &ArgumentSet) -> bool {
        target.is_subset(&self.range_of(cover))
    }

    /// `a` can join `set` without creating a conflict.
    pub fn compatible_with(&self, set: &ArgumentSet, a: usize) -> bool {
        !self.is_self_attacking(a)
            && !self.target_sets[a].intersects(set)
            && !self.attacker_sets[a].intersects(set)
    }

    /// A stable 64-bit digest of names and attacks (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        for name in &self.names {
            feed(name.as_bytes());
            feed(&[0]);
        }
        feed(&[0xff]);
        for &(a, b) in &self.attacks {
            feed(&(a as u64).to_le_bytes());
            feed(&(b as u64).to_le_bytes());
        }
        h
    }
}

impl PartialEq for ArgumentationFramework {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.attacks == other.attacks
    }
}

impl Eq for ArgumentationFramework {}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn example1() -> ArgumentationFramework {
        ArgumentationFramework::build(
            ["a", "b", "c", "d", "e", "f"],
            [
                ("a", "b"),
                ("b", "d"),
                ("c", "b"),
                ("c", "d"),
                ("c", "e"),
                ("d", "c"),
                ("d", "e"),
                ("e", "f"),
            ],
        )
        .unwrap()
    }

    pub(crate) fn three_cycle() -> ArgumentationFramework {
        ArgumentationFramework::build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
            .unwrap()
    }

    fn self_loop() -> ArgumentationFramework {
        ArgumentationFramework::build(["a"], [("a", "a")]).unwrap()
    }

    #[test]
    fn build_small() {
        let af = ArgumentationFramework::build(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(af.len(), 2);
        assert_eq!(af.attackers_of(1), &[0]);
        assert_eq!(af.attacked_by(0), &[1]);
    }

    #[test]
    fn build_empty() {
        let af = ArgumentationFramework::build(Vec::<&str>::new(), Vec::new()).unwrap();
        assert!(af.is_empty());
        assert_eq!(af.num_attacks(), 0);
    }

    #[test]
    fn build_example1() {
        let af = example1();
        assert_eq!(af.len(), 6);
        assert_eq!(af.num_attacks(), 8);
    }

    #[test]
    fn build_errors() {
        let dup = ArgumentationFramework::build(["a", "a"], []);
        assert!(matches!(dup, Err(Error::DuplicateArgument(n)) if n == "a"));
        let unknown = ArgumentationFramework::build(["a"], [("a", "z")]);
        assert!(matches!(unknown, Err(Error::UnknownArgument(n)) if n == "z"));
    }

    #[test]
    fn lenient_declares_in_first_appearance_order() {
        let (af, auto) = ArgumentationFramework::build_with(
            ["a"],
            [("z", "a"), ("a", "y")],
            EndpointMode::Lenient,
        )
        .unwrap();
        assert_eq!(af.names(), &["a", "z", "y"]);
        assert_eq!(auto, vec!["z", "y"]);
    }

    #[test]
    fn duplicate_attacks_are_merged() {
        let af = ArgumentationFramework::build(["a", "b"], [("a", "b"), ("a", "b")]).unwrap();
        assert_eq!(af.num_attacks(), 1);
        assert_eq!(af.attackers_of(1), &[0]);
    }

    #[test]
    fn conflict_freeness() {
        let af = example1();
        assert!(af.is_conflict_free(&af.set_of(["a", "c", "f"]).unwrap()));
        assert!(af.is_conflict_free(&af.empty_set()));
        assert!(!af.is_conflict_free(&af.set_of(["c", "d"]).unwrap()));
        let sl = self_loop();
        assert!(!sl.is_conflict_free(&sl.set_of(["a"]).unwrap()));
    }

    #[test]
    fn defense() {
        let af = example1();
        let a = af.lookup("a").unwrap();
        let d = af.lookup("d").unwrap();
        assert!(af.defends(&af.set_of(["a"]).unwrap(), a));
        assert!(!af.defends(&af.empty_set(), d));
        // d is attacked by b and c; {a,d} attacks both
        assert!(af.defends(&af.set_of(["a", "d"]).unwrap(), d));
        let free = ArgumentationFramework::build(["x", "y"], []).unwrap();
        assert!(free.defends(&free.empty_set(), 0));
    }

    #[test]
    fn range() {
        let af = example1();
        let s = af.set_of(["a", "d", "f"]).unwrap();
        assert!(af.range_of(&s).is_full());
        assert!(af.range_of(&af.empty_set()).is_empty());
        let sl = self_loop();
        let s = sl.set_of(["a"]).unwrap();
        assert_eq!(sl.range_of(&s), s);
    }

    #[test]
    fn covers() {
        let af = example1();
        let e = af.set_of(["a", "c", "f"]).unwrap();
        assert!(af.is_cover(&e, &af.all_arguments()));
        assert!(af.is_cover(&af.empty_set(), &af.empty_set()));
        assert!(!af.is_cover(&af.empty_set(), &af.set_of(["a"]).unwrap()));
    }

    fn arb_framework(max_n: usize) -> impl Strategy<Value = ArgumentationFramework> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = if n == 0 {
                Just(Vec::new()).boxed()
            } else {
                proptest::collection::vec((0..n, 0..n), 0..(n * n).min(40)).boxed()
            };
            pairs.prop_map(move |p| ArgumentationFramework::from_index_pairs(n, p))
        })
    }

    fn arb_with_sets(
        max_n: usize,
    ) -> impl Strategy<Value = (ArgumentationFramework, ArgumentSet, ArgumentSet)> {
        arb_framework(max_n).prop_flat_map(|af| {
            let n = af.len();
            let masks = (0u64..(1u64 << n), 0u64..(1u64 << n));
            (Just(af), masks).prop_map(move |(af, (m1, m2))| {
                let s = ArgumentSet::from_mask(n, m1);
                let t = ArgumentSet::from_mask(n, m1 | m2);
                (af, s, t)
            })
        })
    }

    proptest! {
        #[test]
        fn range_contains_set_and_is_monotone((af, s, t) in arb_with_sets(12)) {
            let rs = af.range_of(&s);
            prop_assert!(s.is_subset(&rs));
            prop_assert!(rs.is_subset(&af.range_of(&t)));
        }

        #[test]
        fn cover_unfolds_to_range_inclusion((af, e, t) in arb_with_sets(12)) {
            let by_def = t.iter().all(|x| e.contains(x) || e.iter().any(|y| af.attacks_pair(y, x)));
            prop_assert_eq!(af.is_cover(&e, &t), by_def);
        }

        #[test]
        fn defends_matches_double_loop((af, s, _t) in arb_with_sets(12)) {
            for a in 0..af.len() {
                let by_def = (0..af.len())
                    .filter(|&b| af.attacks_pair(b, a))
                    .all(|b| s.iter().any(|c| af.attacks_pair(c, b)));
                prop_assert_eq!(af.defends(&s, a), by_def);
            }
        }

        #[test]
        fn adjacency_reproduces_attacks(af in arb_framework(12)) {
            let mut forward = Vec::new();
            let mut backward = Vec::new();
            for a in 0..af.len() {
                forward.extend(af.attacked_by(a).iter().map(|&b| (a, b)));
                backward.extend(af.attackers_of(a).iter().map(|&b| (b, a)));
            }
            backward.sort_unstable();
            prop_assert_eq!(&forward, af.attacks());
            prop_assert_eq!(&backward, af.attacks());
        }
    }
}
