use super::{check_with, verify, Derivation, Hints, Judgment};
use crate::reduce::{contract_at, redex_positions, step, RedexInfo};
use crate::syntax::Term;

#[derive(Clone, Debug)]
pub struct StepOutcome {
    /// 1-based step number.
    pub index: usize,
    pub redex: RedexInfo,
    pub term: Term,
    /// Whether the checker re-derived the original type for this reduct.
    pub found: bool,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub judgment: Judgment,
    pub steps: Vec<StepOutcome>,
    pub reached_normal_form: bool,
}

impl InvarianceReport {
    pub fn all_found(&self) -> bool {
        self.steps.iter().all(|s| s.found)
    }

    /// Steps where the checker found nothing. These are incompleteness
    /// findings about the checker, not counterexamples.
    pub fn misses(&self) -> impl Iterator<Item = &StepOutcome> {
        self.steps.iter().filter(|s| !s.found)
    }
}

/// Follows leftmost-outermost reduction from the subject of `d` for at most
/// `fuel` steps, and re-checks the judgment's type at every reduct.
///
/// # Panics
///
/// If `d` does not verify.
pub fn invariance_test(d: &Derivation, hints: &Hints, fuel: usize) -> InvarianceReport {
    let judgment = verify(d).expect("invariance_test needs a valid derivation");
    let mut steps = Vec::new();
    let mut cur = judgment.term.clone();
    let mut reached_normal_form = false;
    for index in 1..=fuel {
        let Some(s) = step(&cur) else {
            reached_normal_form = true;
            break;
        };
        let found = check_with(&judgment.ctx, &s.term, &judgment.ty, hints).is_some();
        steps.push(StepOutcome { index, redex: s.redex, term: s.term.clone(), found });
        cur = s.term;
    }
    if !reached_normal_form && step(&cur).is_none() {
        reached_normal_form = true;
    }
    InvarianceReport { judgment, steps, reached_normal_form }
}

/// Subject expansion for one pair: given `d` typing `m`, and `n` that
/// reduces to `m` in one step (at any position), searches a derivation of
/// the same type for `n`. `None` if `n` does not reduce to `m`.
pub fn expansion_test(d: &Derivation, n: &Term, hints: &Hints) -> Option<Option<Derivation>> {
    let j = verify(d).ok()?;
    let reduces = redex_positions(n).iter().any(|r| contract_at(n, &r.position).is_some_and(|(_, m)| m == j.term));
    if !reduces {
        return None;
    }
    Some(check_with(&j.ctx, n, &j.ty, hints))
}
