//! Depth-first labelling search with unit propagation.
//!
//! Arguments are decided in index order, IN before OUT. After each decision a
//! worklist propagates the mode's constraints; a conflict backtracks. Every
//! completed labelling is handed to the caller, which re-checks the candidate
//! against the exact definition.

use std::ops::ControlFlow;

use crate::argset::ArgumentSet;
use crate::error::Result;
use crate::framework::ArgumentationFramework;

use super::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    In,
    Out,
    Undec,
}

/// Per-argument IN/OUT/UNDEC assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    labels: Vec<Label>,
}

impl Labelling {
    pub fn undecided(n: usize) -> Self {
        Labelling {
            labels: vec![Label::Undec; n],
        }
    }

    pub fn get(&self, a: usize) -> Label {
        self.labels[a]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn in_set(&self) -> ArgumentSet {
        self.with_label(Label::In)
    }

    pub fn out_set(&self) -> ArgumentSet {
        self.with_label(Label::Out)
    }

    fn with_label(&self, label: Label) -> ArgumentSet {
        ArgumentSet::from_indices(
            self.labels.len(),
            self.labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == label)
                .map(|(i, _)| i),
        )
    }

    /// No argument is UNDEC, so the IN and OUT sets partition the arguments.
    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|&l| l != Label::Undec)
    }
}

/// Which necessary condition the candidates must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Conflict-free sets.
    ConflictFree,
    /// Admissible sets.
    Admissible,
    /// Complete extensions (admissible, containing all they defend).
    Complete,
    /// Stable extensions.
    Stable,
    /// Naive sets (maximal conflict-free).
    Naive,
}

impl Mode {
    fn defense(self) -> bool {
        matches!(self, Mode::Admissible | Mode::Complete)
    }
}

struct Conflict;

pub(crate) struct Search<'a> {
    af: &'a ArgumentationFramework,
    mode: Mode,
    labelling: Labelling,
    trail: Vec<usize>,
    /// Number of IN attackers per argument.
    in_attackers: Vec<u32>,
    /// Number of attackers not yet attacked by IN (complete mode only).
    unanswered: Vec<u32>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(af: &'a ArgumentationFramework, mode: Mode) -> Self {
        let n = af.len();
        let unanswered = (0..n).map(|a| af.attackers_of(a).len() as u32).collect();
        Search {
            af,
            mode,
            labelling: Labelling::undecided(n),
            trail: Vec::with_capacity(n),
            in_attackers: vec![0; n],
            unanswered,
            queue: Vec::new(),
        }
    }

    /// Runs the search, calling `visit` on every total labelling that
    /// survives propagation.
    pub(crate) fn run<F>(&mut self, budget: &mut Budget, mut visit: F) -> Result<()>
    where
        F: FnMut(&Labelling, &mut Budget) -> Result<ControlFlow<()>>,
    {
        budget.tick()?;
        let n = self.af.len();
        let mut root_ok = true;
        for a in 0..n {
            if self.af.is_self_attacking(a) && self.assign(a, Label::Out).is_err() {
                root_ok = false;
            }
        }
        self.queue.extend(0..n);
        if root_ok && self.propagate().is_ok() {
            let _stopped = self.descend(0, budget, &mut visit)?;
        }
        Ok(())
    }

    fn descend<F>(
        &mut self,
        from: usize,
        budget: &mut Budget,
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Labelling, &mut Budget) -> Result<ControlFlow<()>>,
    {
        budget.tick()?;
        let next = (from..self.af.len()).find(|&a| self.labelling.labels[a] == Label::Undec);
        let Some(a) = next else {
            return visit(&self.labelling, budget);
        };
        for label in [Label::In, Label::Out] {
            let mark = self.trail.len();
            if self.assign(a, label).is_ok() && self.propagate().is_ok() {
                let flow = self.descend(a + 1, budget, visit);
                if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                    self.undo(mark);
                    return flow;
                }
            }
            self.queue.clear();
            self.undo(mark);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn assign(&mut self, a: usize, label: Label) -> Result<(), Conflict> {
        match self.labelling.labels[a] {
            Label::Undec => {}
            current if current == label => return Ok(()),
            _ => return Err(Conflict),
        }
        self.labelling.labels[a] = label;
        self.trail.push(a);
        let af = self.af;
        if label == Label::In {
            for &b in af.attacked_by(a) {
                self.in_attackers[b] += 1;
                if self.in_attackers[b] == 1 && self.mode == Mode::Complete {
                    for &y in af.attacked_by(b) {
                        self.unanswered[y] -= 1;
                        if self.unanswered[y] == 0 {
                            self.queue.push(y);
                        }
                    }
                }
            }
        }
        self.queue.push(a);
        self.queue.extend_from_slice(af.attackers_of(a));
        self.queue.extend_from_slice(af.attacked_by(a));
        Ok(())
    }

    fn undo(&mut self, mark: usize) {
        let af = self.af;
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail longer than mark");
            if self.labelling.labels[a] == Label::In {
                for &b in af.attacked_by(a) {
                    if self.in_attackers[b] == 1 && self.mode == Mode::Complete {
                        for &y in af.attacked_by(b) {
                            self.unanswered[y] += 1;
                        }
                    }
                    self.in_attackers[b] -= 1;
                }
            }
            self.labelling.labels[a] = Label::Undec;
        }
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while let Some(y) = self.queue.pop() {
            if let Err(c) = self.check(y) {
                self.queue.clear();
                return Err(c);
            }
        }
        Ok(())
    }

    /// Undecided attackers of `a` that could still become IN.
    fn open_attackers(&self, a: usize) -> (usize, Option<usize>) {
        let mut count = 0;
        let mut last = None;
        for &c in self.af.attackers_of(a) {
            if self.labelling.labels[c] == Label::Undec {
                count += 1;
                last = Some(c);
            }
        }
        (count, last)
    }

    fn check(&mut self, y: usize) -> Result<(), Conflict> {
        let af = self.af;
        let label = self.labelling.labels[y];

        // Conflict-freeness: neighbours of an IN argument are OUT.
        if label == Label::In {
            for &d in af.attackers_of(y).iter().chain(af.attacked_by(y)) {
                self.assign(d, Label::Out)?;
            }
        }

        // Defense: an attacker of an IN argument needs an IN counter-attacker.
        if self.mode.defense()
            && self.in_attackers[y] == 0
            && af
                .attacked_by(y)
                .iter()
                .any(|&t| self.labelling.labels[t] == Label::In)
        {
            match self.open_attackers(y) {
                (0, _) => return Err(Conflict),
                (1, Some(c)) => self.assign(c, Label::In)?,
                _ => {}
            }
        }

        let label = self.labelling.labels[y];
        match self.mode {
            // Completeness: whatever IN defends must be IN.
            Mode::Complete if label != Label::In && self.unanswered[y] == 0 => {
                self.assign(y, Label::In)?;
            }
            // Stability: an argument outside the set must be attacked by it.
            Mode::Stable if label != Label::In && self.in_attackers[y] == 0 => {
                match (label, self.open_attackers(y)) {
                    (Label::Out, (0, _)) => return Err(Conflict),
                    (Label::Out, (1, Some(c))) => self.assign(c, Label::In)?,
                    (Label::Undec, (0, _)) => self.assign(y, Label::In)?,
                    _ => {}
                }
            }
            // Maximality: an argument with no possible conflict must be IN.
            Mode::Naive
                if label != Label::In && !af.is_self_attacking(y) && self.in_attackers[y] == 0 =>
            {
                let neighbours = af.attackers_of(y).iter().chain(af.attacked_by(y));
                let settled_out = neighbours
                    .clone()
                    .all(|&d| self.labelling.labels[d] == Label::Out);
                if settled_out {
                    self.assign(y, Label::In)?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::tests::{example1, three_cycle};

    fn labellings(af: &ArgumentationFramework, mode: Mode) -> Vec<Labelling> {
        let mut out = Vec::new();
        Search::new(af, mode)
            .run(&mut Budget::default(), |l, _| {
                out.push(l.clone());
                Ok(ControlFlow::Continue(()))
            })
            .unwrap();
        out
    }

    #[test]
    fn completed_labellings_partition_arguments() {
        for af in [example1(), three_cycle()] {
            for mode in [
                Mode::ConflictFree,
                Mode::Admissible,
                Mode::Complete,
                Mode::Stable,
                Mode::Naive,
            ] {
                for l in labellings(&af, mode) {
                    assert!(l.is_total());
                    let ins = l.in_set();
                    let outs = l.out_set();
                    assert!(!ins.intersects(&outs));
                    assert!(ins.union(&outs).is_full());
                }
            }
        }
    }

    #[test]
    fn complete_mode_on_example1() {
        // complete extensions: {a}, {a,c,f}, {a,d,f}
        let af = example1();
        let mut sets: Vec<_> = labellings(&af, Mode::Complete)
            .iter()
            .map(|l| af.member_names(&l.in_set()).collect::<String>())
            .collect();
        sets.sort();
        assert_eq!(sets, vec!["a", "acf", "adf"]);
    }

    #[test]
    fn naive_mode_on_three_cycle() {
        let af = three_cycle();
        assert_eq!(labellings(&af, Mode::Naive).len(), 3);
    }

    #[test]
    fn self_attackers_never_in() {
        let af = ArgumentationFramework::build(["a", "b"], [("a", "a")]).unwrap();
        for l in labellings(&af, Mode::ConflictFree) {
            assert_eq!(l.get(0), Label::Out);
        }
        // stable: a is out and unattacked by anything that can be IN
        assert!(labellings(&af, Mode::Stable).is_empty());
    }
}
