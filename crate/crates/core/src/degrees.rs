//! Degree statistics of the order on paths above ν: in/out degrees, the
//! staircase construction of the maximal degree, the vector and geometric
//! forms of the descent algorithm that reaches a maximal in-degree path,
//! and extraction of the maximal-degree subposets.

use std::sync::Arc;

use crate::paths::{AreaVector, Nu, NuDyckPath};
use crate::poset::FinitePoset;
use crate::tamari::tamari_down;
use crate::{Error, Result};

/// Number of elements covering `d`: rows whose right hand point is
/// preceded by an east step.
pub fn out_degree(d: &NuDyckPath) -> usize {
    (1..=d.rows()).filter(|&i| d.east_before_row(i)).count()
}

/// Number of elements covered by `d`: rows where touch and hit points
/// coincide and the right hand point has nonzero horizontal distance.
pub fn in_degree(d: &NuDyckPath) -> usize {
    (1..=d.rows())
        .filter(|&i| {
            let r = d.right_hand_point(i).expect("row in range");
            d.nu().horiz(r.point) != 0
                && d.touch_point(i).expect("row in range") == d.hit_point(i).expect("row in range")
        })
        .count()
}

/// The largest staircase path `N^a (EN)^size E^b` fitting weakly above ν.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseResult {
    pub size: usize,
    pub xi: NuDyckPath,
}

/// Shrinks the boundary's area vector step by step into the staircase
/// profile `(0,..,0,1,2,..,size)` and reports the largest size that fits.
pub fn staircase_algorithm(nu: &Arc<Nu>) -> StaircaseResult {
    let mut lambda: Vec<usize> = nu.left_area().entries().to_vec();
    let mut i = 1usize;
    // First entry >= i becomes i; later entries equal to i reset to 0 and
    // move to the front.
    while let Some(d) = lambda.iter().position(|&v| v >= i) {
        lambda[d] = i;
        let extra = lambda[d + 1..].iter().filter(|&&v| v == i).count();
        if extra > 0 {
            let mut seen = false;
            lambda.retain(|&v| {
                if v == i {
                    !std::mem::replace(&mut seen, true)
                } else {
                    true
                }
            });
            lambda.splice(0..0, std::iter::repeat_n(0, extra));
        }
        i += 1;
    }
    let size = i - 1;
    let xi = NuDyckPath::from_left_area(Arc::clone(nu), AreaVector::new(lambda))
        .expect("staircase profile stays weakly above the boundary");
    StaircaseResult { size, xi }
}

/// One recorded step of the descent algorithms: the matched row `i`, the
/// row `j` where the path moves down, the first bound `h` past `j`, and the
/// right area vector after the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub i: usize,
    pub j: usize,
    pub h: usize,
    pub ra: AreaVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgorithmTrace {
    pub steps: Vec<TraceStep>,
}

impl AlgorithmTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Finds the maximal `i` with a matching `j > i`: equal nonzero right area
/// entries with everything strictly between them strictly larger.
fn area_condition(ra: &[usize]) -> Option<(usize, usize)> {
    let rows = ra.len();
    for i in (1..=rows).rev() {
        let target = ra[i - 1];
        if target == 0 {
            continue;
        }
        for j in i + 1..=rows {
            if ra[j - 1] == target {
                return Some((i, j));
            }
            if ra[j - 1] < target {
                break;
            }
        }
    }
    None
}

/// Vector form of the descent: starting from the top path, repeatedly
/// subtract the 0/1 mask spanning rows `j..h-1` from the right area vector.
pub fn area_algorithm(nu: &Arc<Nu>) -> (NuDyckPath, AlgorithmTrace) {
    area_algorithm_impl(nu, true)
}

/// Trace-free variant for bulk sweeps.
pub fn area_algorithm_terminal(nu: &Arc<Nu>) -> NuDyckPath {
    area_algorithm_impl(nu, false).0
}

fn area_algorithm_impl(nu: &Arc<Nu>, keep_trace: bool) -> (NuDyckPath, AlgorithmTrace) {
    let rows = nu.rows();
    let mut ra: Vec<usize> = nu.left_area().entries().to_vec();
    let mut trace = AlgorithmTrace::default();
    while let Some((i, j)) = area_condition(&ra) {
        let target = ra[i - 1];
        let h = (j + 1..=rows).find(|&k| ra[k - 1] < target).unwrap_or(rows + 1);
        for e in ra[j - 1..h - 1].iter_mut() {
            *e -= 1;
        }
        if keep_trace {
            trace.steps.push(TraceStep { i, j, h, ra: AreaVector::new(ra.clone()) });
        }
    }
    let la: Vec<usize> =
        nu.left_area().entries().iter().zip(&ra).map(|(b, r)| b - r).collect();
    let terminal = NuDyckPath::from_left_area(Arc::clone(nu), AreaVector::new(la))
        .expect("descent never leaves the region above the boundary");
    (terminal, trace)
}

/// Geometric form of the descent: find the largest row whose touch and hit
/// points differ while its right hand point has room, then move down at the
/// row its touch point leans on. Produces the same path as the vector form.
pub fn dyck_path_algorithm(nu: &Arc<Nu>) -> (NuDyckPath, AlgorithmTrace) {
    let rows = nu.rows();
    let mut d = NuDyckPath::maximal(Arc::clone(nu));
    let mut trace = AlgorithmTrace::default();
    loop {
        let mut chosen = None;
        for i in (1..=rows).rev() {
            let r = d.right_hand_point(i).expect("row in range");
            if nu.horiz(r.point) == 0 {
                continue;
            }
            let t = d.touch_point(i).expect("row in range");
            if t != d.hit_point(i).expect("row in range") {
                chosen = Some((i, t));
                break;
            }
        }
        let Some((i, t)) = chosen else { break };
        // The touch point is followed by a north step, so it is the right
        // hand point of some higher row j.
        let j = t.point.y + 1;
        debug_assert_eq!(d.right_hand_point(j).expect("row in range").point, t.point);
        let h_row = d.hit_point(i).expect("row in range").point.y + 1;
        d = tamari_down(&d, j)
            .expect("row in range")
            .expect("the leaned-on row always admits a down move");
        trace.steps.push(TraceStep {
            i,
            j,
            h: h_row,
            ra: crate::paths::right_area_vector(&d),
        });
    }
    (d, trace)
}

/// All paths above ν attaining the maximal out-degree.
pub fn max_out_set(nu: &Arc<Nu>) -> Result<Vec<NuDyckPath>> {
    max_set_by(nu, out_degree)
}

/// All paths above ν attaining the maximal in-degree.
pub fn max_in_set(nu: &Arc<Nu>) -> Result<Vec<NuDyckPath>> {
    max_set_by(nu, in_degree)
}

fn max_set_by(nu: &Arc<Nu>, degree: fn(&NuDyckPath) -> usize) -> Result<Vec<NuDyckPath>> {
    let cap = crate::verify::DESK_SIZE_CAP;
    let count = crate::paths::count_nu_dyck(nu);
    if count > num_bigint::BigUint::from(cap) {
        return Err(Error::SizeCapExceeded { size: usize::MAX, cap });
    }
    let mut best = 0usize;
    let mut out: Vec<NuDyckPath> = Vec::new();
    for d in crate::paths::enumerate_nu_dyck(nu) {
        let deg = degree(&d);
        match deg.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = deg;
                out.clear();
                out.push(d);
            }
            std::cmp::Ordering::Equal => out.push(d),
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(out)
}

/// Induced subposet; see [`FinitePoset::restrict`].
pub fn subposet(
    poset: &FinitePoset<AreaVector>,
    keep: &[AreaVector],
) -> Result<FinitePoset<AreaVector>> {
    poset.restrict(keep)
}
