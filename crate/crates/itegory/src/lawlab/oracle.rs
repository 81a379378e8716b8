//! The independent operational oracle for guarded iteration.
//!
//! `step_simulate` runs the loop "until the exit map applies, keep
//! stepping the body" point by point, with a visited set that detects
//! both dead ends and cycles. It never touches the join formula the
//! production operator is built from, so agreement between the two is a
//! real check, not a tautology.

use crate::error::{shape_mismatch, Error, Result};
use crate::finpar::PartialMap;
use crate::interference::InterferenceRel;

/// Operational loop semantics at a single start point.
///
/// At the current point `y`: if `exit(y)` is defined, stop with that
/// value; otherwise, if `body(y)` is defined and `y` has not been seen
/// before, mark `y` seen and step; otherwise the run is undefined.
pub fn step_simulate(body: &PartialMap, exit: &PartialMap, start: usize) -> Result<Option<usize>> {
    if !body.is_endo() {
        return Err(shape_mismatch("step_simulate", body.dom(), body.cod()));
    }
    if !body.dom().compatible(exit.dom()) {
        return Err(shape_mismatch("step_simulate", body.dom(), exit.dom()));
    }
    let rel = InterferenceRel::maximal();
    if !rel.perp(body, exit)? {
        return Err(Error::NotDisjoint {
            context: "step_simulate",
            detail: rel.describe_clash(body, exit),
        });
    }
    let n = body.dom().size();
    if start >= n {
        return Err(Error::Invalid {
            context: "step_simulate",
            detail: format!("start point {start} outside carrier of size {n}"),
        });
    }

    let mut visited = vec![false; n];
    let mut current = start;
    let mut steps = 0usize;
    loop {
        steps += 1;
        assert!(steps <= n + 1, "step bound exceeded: the visited set must cap the walk");
        if let Some(out) = exit.apply(current) {
            return Ok(Some(out));
        }
        match body.apply(current) {
            Some(next) if !visited[current] => {
                visited[current] = true;
                current = next;
            }
            _ => return Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finpar::FinObj;

    fn map(dom: usize, cod: usize, entries: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_entries(FinObj::of_size(dom), FinObj::of_size(cod), entries).unwrap()
    }

    #[test]
    fn walks_a_chain() {
        let body = map(3, 3, &[(0, 1), (1, 2)]);
        let exit = map(3, 1, &[(2, 0)]);
        assert_eq!(step_simulate(&body, &exit, 0).unwrap(), Some(0));
        assert_eq!(step_simulate(&body, &exit, 1).unwrap(), Some(0));
        assert_eq!(step_simulate(&body, &exit, 2).unwrap(), Some(0));
    }

    #[test]
    fn detects_cycles() {
        let body = map(3, 3, &[(0, 1), (1, 0)]);
        let exit = map(3, 1, &[(2, 0)]);
        assert_eq!(step_simulate(&body, &exit, 0).unwrap(), None);
        assert_eq!(step_simulate(&body, &exit, 1).unwrap(), None);
        assert_eq!(step_simulate(&body, &exit, 2).unwrap(), Some(0));
    }

    #[test]
    fn exit_applies_immediately() {
        let body = map(2, 2, &[(0, 1)]);
        let exit = map(2, 2, &[(1, 1)]);
        assert_eq!(step_simulate(&body, &exit, 1).unwrap(), Some(1));
    }

    #[test]
    fn dead_end_is_undefined() {
        let body = map(3, 3, &[(0, 1)]);
        let exit = map(3, 1, &[(2, 0)]);
        assert_eq!(step_simulate(&body, &exit, 1).unwrap(), None);
    }

    #[test]
    fn rejects_overlapping_maps() {
        let body = map(2, 2, &[(0, 1)]);
        let exit = map(2, 1, &[(0, 0)]);
        assert!(matches!(
            step_simulate(&body, &exit, 0),
            Err(Error::NotDisjoint { .. })
        ));
    }
}
