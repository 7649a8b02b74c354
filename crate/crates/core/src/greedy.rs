//! The greedy variant of the order: the up move carries the east step past
//! the row's hit point instead of its touch point, taking as much as
//! possible in one move.

use std::sync::Arc;

use crate::paths::{AreaVector, Nu, NuDyckPath, Step};
use crate::poset::FinitePoset;
use crate::tamari;
use crate::{distance, Error, Result};

/// Greedy up move at row `i`: defined exactly when the right hand point is
/// preceded by an east step (it is always followed by a north step).
pub fn greedy_up(d: &NuDyckPath, i: usize) -> Result<Option<NuDyckPath>> {
    if i == 0 || i > d.rows() {
        return Err(Error::RowOutOfRange { row: i, rows: d.rows() });
    }
    if !d.east_before_row(i) {
        return Ok(None);
    }
    let steps = d.word().steps();
    let p = d.right_hand_point(i)?.word_index;
    let q = d.hit_point(i)?.word_index;
    let mut out = Vec::with_capacity(steps.len());
    out.extend_from_slice(&steps[..p - 1]);
    out.extend_from_slice(&steps[p..q]);
    out.push(Step::East);
    out.extend_from_slice(&steps[q..]);
    Ok(Some(d.with_word(out)?))
}

/// All defined greedy up moves.
pub fn greedy_up_covers(d: &NuDyckPath) -> Vec<(usize, NuDyckPath)> {
    (1..=d.rows())
        .filter_map(|i| greedy_up(d, i).expect("row in range").map(|t| (i, t)))
        .collect()
}

/// Order test for the greedy order; the staircase boundary short-circuits
/// through the two distance vectors.
pub fn greedy_leq(d: &NuDyckPath, e: &NuDyckPath) -> Result<bool> {
    if d.nu() != e.nu() {
        return Err(Error::NuMismatch);
    }
    if d.nu().is_staircase() {
        return distance::greedy_leq_by_distance(d, e);
    }
    greedy_order_by_search(d, e)
}

pub(crate) fn greedy_order_by_search(d: &NuDyckPath, e: &NuDyckPath) -> Result<bool> {
    if d.nu() != e.nu() {
        return Err(Error::NuMismatch);
    }
    if d == e {
        return Ok(true);
    }
    let dominates = |a: &AreaVector, b: &AreaVector| {
        a.entries().iter().zip(b.entries()).all(|(x, y)| x >= y)
    };
    if !dominates(d.left_area(), e.left_area()) {
        return Ok(false);
    }
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![d.clone()];
    seen.insert(d.left_area().clone());
    while let Some(cur) = frontier.pop() {
        for (_, up) in greedy_up_covers(&cur) {
            if &up == e {
                return Ok(true);
            }
            if dominates(up.left_area(), e.left_area()) && seen.insert(up.left_area().clone()) {
                frontier.push(up);
            }
        }
    }
    Ok(false)
}

/// The greedy order on all paths above ν, keyed by left area vector.
pub fn greedy_poset(nu: &Arc<Nu>) -> Result<FinitePoset<AreaVector>> {
    tamari::poset_from_moves(nu, greedy_up_covers)
}
