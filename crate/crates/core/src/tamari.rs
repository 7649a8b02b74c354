//! Covering moves of the lattice order on paths above ν: the up move splices
//! the east step before a row's right hand point to just after its touch
//! point, and the down move is its inverse at rows where touch and hit
//! points coincide.

use std::sync::Arc;

use crate::paths::{AreaVector, NuDyckPath, Step};
use crate::poset::FinitePoset;
use crate::{distance, Error, Result};

/// One covering move between two paths over the same ν.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMove {
    pub row: usize,
    pub direction: Direction,
    pub source: NuDyckPath,
    pub target: NuDyckPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

fn splice_up(d: &NuDyckPath, i: usize, to: usize) -> Result<NuDyckPath> {
    // d = prefix E mid suffix  ->  prefix mid E suffix, with the moved east
    // step landing right after the point at word index `to`.
    let steps = d.word().steps();
    let p = d.right_hand_point(i)?.word_index;
    debug_assert!(p > 0 && steps[p - 1] == Step::East);
    let mut out = Vec::with_capacity(steps.len());
    out.extend_from_slice(&steps[..p - 1]);
    out.extend_from_slice(&steps[p..to]);
    out.push(Step::East);
    out.extend_from_slice(&steps[to..]);
    d.with_word(out)
}

/// Up move at row `i`: defined exactly when the right hand point is
/// preceded by an east step.
pub fn tamari_up(d: &NuDyckPath, i: usize) -> Result<Option<NuDyckPath>> {
    if i == 0 || i > d.rows() {
        return Err(Error::RowOutOfRange { row: i, rows: d.rows() });
    }
    if !d.east_before_row(i) {
        return Ok(None);
    }
    let t = d.touch_point(i)?.word_index;
    Ok(Some(splice_up(d, i, t)?))
}

/// Down move at row `i`: defined exactly when the touch and hit points
/// coincide and the right hand point has nonzero horizontal distance.
pub fn tamari_down(d: &NuDyckPath, i: usize) -> Result<Option<NuDyckPath>> {
    if i == 0 || i > d.rows() {
        return Err(Error::RowOutOfRange { row: i, rows: d.rows() });
    }
    let r = d.right_hand_point(i)?;
    if d.nu().horiz(r.point) == 0 {
        return Ok(None);
    }
    let t = d.touch_point(i)?;
    let h = d.hit_point(i)?;
    if t != h {
        return Ok(None);
    }
    // d = prefix mid E suffix -> prefix E mid suffix; the east step after
    // the hit point moves to just before the right hand point.
    let steps = d.word().steps();
    let q = h.word_index;
    debug_assert!(q < steps.len() && steps[q] == Step::East);
    let mut out = Vec::with_capacity(steps.len());
    out.extend_from_slice(&steps[..r.word_index]);
    out.push(Step::East);
    out.extend_from_slice(&steps[r.word_index..q]);
    out.extend_from_slice(&steps[q + 1..]);
    Ok(Some(d.with_word(out)?))
}

/// All defined up moves; the list length is the out-degree.
pub fn up_covers(d: &NuDyckPath) -> Vec<(usize, NuDyckPath)> {
    (1..=d.rows())
        .filter_map(|i| tamari_up(d, i).expect("row in range").map(|t| (i, t)))
        .collect()
}

/// All defined down moves; the list length is the in-degree.
pub fn down_covers(d: &NuDyckPath) -> Vec<(usize, NuDyckPath)> {
    (1..=d.rows())
        .filter_map(|i| tamari_down(d, i).expect("row in range").map(|t| (i, t)))
        .collect()
}

pub fn cover_moves_up(d: &NuDyckPath) -> Vec<CoverMove> {
    up_covers(d)
        .into_iter()
        .map(|(row, target)| CoverMove {
            row,
            direction: Direction::Up,
            source: d.clone(),
            target,
        })
        .collect()
}

fn leq_by_search<F>(d: &NuDyckPath, e: &NuDyckPath, mut moves: F) -> Result<bool>
where
    F: FnMut(&NuDyckPath) -> Vec<(usize, NuDyckPath)>,
{
    if d.nu() != e.nu() {
        return Err(Error::NuMismatch);
    }
    if d == e {
        return Ok(true);
    }
    // Up moves only shrink the area vector entrywise, so prune any state
    // that has already dropped below the target somewhere.
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
        for (_, up) in moves(&cur) {
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

/// Order test: is `e` reachable from `d` by up moves? For the staircase
/// boundary the distance-vector criterion answers directly; otherwise a
/// memoized upward search is used.
pub fn tamari_leq(d: &NuDyckPath, e: &NuDyckPath) -> Result<bool> {
    if d.nu() != e.nu() {
        return Err(Error::NuMismatch);
    }
    if d.nu().is_staircase() {
        return distance::tamari_leq_by_distance(d, e);
    }
    leq_by_search(d, e, up_covers)
}

pub(crate) fn order_by_search(d: &NuDyckPath, e: &NuDyckPath) -> Result<bool> {
    leq_by_search(d, e, up_covers)
}

/// The full order on all paths above ν, keyed by left area vector.
pub fn tamari_poset(nu: &Arc<crate::paths::Nu>) -> Result<FinitePoset<AreaVector>> {
    poset_from_moves(nu, up_covers)
}

pub(crate) fn poset_from_moves<F>(
    nu: &Arc<crate::paths::Nu>,
    mut moves: F,
) -> Result<FinitePoset<AreaVector>>
where
    F: FnMut(&NuDyckPath) -> Vec<(usize, NuDyckPath)>,
{
    let cap = crate::verify::DESK_SIZE_CAP;
    let count = crate::paths::count_nu_dyck(nu);
    if count > num_bigint::BigUint::from(cap) {
        return Err(Error::SizeCapExceeded { size: usize::MAX, cap });
    }
    let paths: Vec<NuDyckPath> = crate::paths::enumerate_nu_dyck(nu).collect();
    let elements: Vec<AreaVector> = paths.iter().map(|d| d.left_area().clone()).collect();
    let mut edges = Vec::new();
    for d in &paths {
        for (_, up) in moves(d) {
            edges.push((d.left_area().clone(), up.left_area().clone()));
        }
    }
    FinitePoset::from_cover_edges(elements, &edges)
}
