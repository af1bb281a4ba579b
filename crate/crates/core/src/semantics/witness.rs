//! Maximality checks for preferred, semi-stable and stage semantics.
//!
//! Each check exists twice. The witness routes search for a counterexample
//! built the way the saturation encodings build theirs:
//!
//! * preferred: an admissible `E ⊄ S` with `E ∪ S` conflict-free, grown from
//!   an argument outside `S` by repeatedly adding a counter-attacker for an
//!   unanswered attacker;
//! * semi-stable / stage: for some `a` outside the range of `S`, an admissible
//!   (resp. conflict-free) cover of `range(S) ∪ {a}`, grown by picking for
//!   each uncovered element either the element itself or one of its attackers.
//!
//! The direct routes compare against all admissible or conflict-free sets.

use crate::argset::ArgumentSet;
use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;

use super::{is_admissible, BaseProperty, Budget};

/// `S` is preferred iff no admissible `E ⊄ S` is conflict-free together with `S`.
///
/// Errors unless `set` is admissible.
pub fn is_preferred_by_witness(
    af: &ArgumentationFramework,
    set: &ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    if !is_admissible(af, set) {
        return Err(Error::Precondition("set is not admissible"));
    }
    preferred_check(af, set, budget)
}

/// Witness search for an admissible set that is not contained in the
/// (admissible) `set` and conflict-free with it.
pub(super) fn preferred_check(
    af: &ArgumentationFramework,
    set: &ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    let pool = ArgumentSet::from_indices(
        af.len(),
        (0..af.len()).filter(|&x| af.compatible_with(set, x)),
    );
    for seed in pool.difference(set).iter() {
        // Any witness E can be widened to E ∪ S, so the search grows from S.
        let mut witness = set.clone();
        witness.insert(seed);
        if grow_admissible(af, &mut witness, &pool, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tries to extend `current` to an admissible set using only `pool` members.
fn grow_admissible(
    af: &ArgumentationFramework,
    current: &mut ArgumentSet,
    pool: &ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    let answered = af.attacked_by_set(current);
    let mut best: Option<Vec<usize>> = None;
    for m in current.iter() {
        for &attacker in af.attackers_of(m) {
            if answered.contains(attacker) {
                continue;
            }
            let options: Vec<usize> = af
                .attackers_of(attacker)
                .iter()
                .copied()
                .filter(|&z| pool.contains(z) && af.compatible_with(current, z))
                .collect();
            if options.is_empty() {
                return Ok(false);
            }
            if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                best = Some(options);
            }
        }
    }
    let Some(options) = best else {
        return Ok(true);
    };
    for z in options {
        current.insert(z);
        let found = grow_admissible(af, current, pool, budget)?;
        current.remove(z);
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Subset-maximality among admissible sets, by searching all conflict-free
/// proper supersets. Returns `false` for non-admissible input.
pub fn is_preferred_by_maximality(
    af: &ArgumentationFramework,
    set: &ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    if !is_admissible(af, set) {
        return Ok(false);
    }
    let candidates: Vec<usize> = (0..af.len())
        .filter(|&x| !set.contains(x) && af.compatible_with(set, x))
        .collect();
    let mut current = set.clone();
    let larger = admissible_superset(af, &candidates, 0, &mut current, budget)?;
    Ok(!larger)
}

fn admissible_superset(
    af: &ArgumentationFramework,
    candidates: &[usize],
    from: usize,
    current: &mut ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    for i in from..candidates.len() {
        budget.tick()?;
        let x = candidates[i];
        if !af.compatible_with(current, x) {
            continue;
        }
        current.insert(x);
        let found = is_admissible(af, current)
            || admissible_superset(af, candidates, i + 1, current, budget)?;
        current.remove(x);
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Range-maximality by direct comparison: no set satisfying `base` has a
/// strictly larger range.
///
/// Errors unless `set` satisfies `base`.
pub fn is_range_supreme_by_superset(
    af: &ArgumentationFramework,
    set: &ArgumentSet,
    base: BaseProperty,
    budget: &mut Budget,
) -> Result<bool> {
    if !base.holds(af, set) {
        return Err(Error::Precondition(
            "set does not satisfy the base property",
        ));
    }
    let range = af.range_of(set);
    let mut current = af.empty_set();
    let larger = larger_range(af, base, &range, 0, &mut current, budget)?;
    Ok(!larger)
}

fn larger_range(
    af: &ArgumentationFramework,
    base: BaseProperty,
    range: &ArgumentSet,
    from: usize,
    current: &mut ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    if base.holds(af, current) && af.range_of(current).is_proper_superset(range) {
        return Ok(true);
    }
    for x in from..af.len() {
        if !af.compatible_with(current, x) {
            continue;
        }
        current.insert(x);
        let found = larger_range(af, base, range, x + 1, current, budget)?;
        current.remove(x);
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Range-maximality via covers: for every `a` outside `range(S)`, no set
/// satisfying `base` covers `range(S) ∪ {a}`. Stable sets pass immediately.
///
/// Errors unless `set` satisfies `base`.
pub fn is_range_supreme_by_cover(
    af: &ArgumentationFramework,
    set: &ArgumentSet,
    base: BaseProperty,
    budget: &mut Budget,
) -> Result<bool> {
    if !base.holds(af, set) {
        return Err(Error::Precondition(
            "set does not satisfy the base property",
        ));
    }
    range_supreme_check(af, &af.range_of(set), base, budget)
}

pub(super) fn range_supreme_check(
    af: &ArgumentationFramework,
    range: &ArgumentSet,
    base: BaseProperty,
    budget: &mut Budget,
) -> Result<bool> {
    if range.is_full() {
        return Ok(true);
    }
    for a in range.complement().iter() {
        let mut target = range.clone();
        target.insert(a);
        if exists_cover_with_property(af, &target, base, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is there a set satisfying `base` whose range includes `target`?
pub fn exists_cover_with_property(
    af: &ArgumentationFramework,
    target: &ArgumentSet,
    base: BaseProperty,
    budget: &mut Budget,
) -> Result<bool> {
    let mut cover = af.empty_set();
    grow_cover(af, target, base, &mut cover, budget)
}

fn grow_cover(
    af: &ArgumentationFramework,
    target: &ArgumentSet,
    base: BaseProperty,
    cover: &mut ArgumentSet,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    let attacked = af.attacked_by_set(cover);
    let viable = |z: usize| !cover.contains(z) && af.compatible_with(cover, z);

    let mut best: Option<Vec<usize>> = None;
    let mut consider = |options: Vec<usize>| -> bool {
        if options.is_empty() {
            return false;
        }
        if best.as_ref().is_none_or(|b| options.len() < b.len()) {
            best = Some(options);
        }
        true
    };

    // Each uncovered target element needs itself or one of its attackers.
    for t in target.iter() {
        if cover.contains(t) || attacked.contains(t) {
            continue;
        }
        let options = std::iter::once(t)
            .chain(af.attackers_of(t).iter().copied())
            .filter(|&z| viable(z))
            .collect();
        if !consider(options) {
            return Ok(false);
        }
    }
    // Admissible covers also need a counter-attacker for every attacker.
    if base == BaseProperty::Admissible {
        for m in cover.iter() {
            for &y in af.attackers_of(m) {
                if attacked.contains(y) {
                    continue;
                }
                let options = af
                    .attackers_of(y)
                    .iter()
                    .copied()
                    .filter(|&z| viable(z))
                    .collect();
                if !consider(options) {
                    return Ok(false);
                }
            }
        }
    }

    let Some(options) = best else {
        return Ok(true);
    };
    for z in options {
        cover.insert(z);
        let found = grow_cover(af, target, base, cover, budget)?;
        cover.remove(z);
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}
