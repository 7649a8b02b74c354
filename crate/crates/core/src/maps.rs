//! Bijections between maximal-degree path sets and smaller path families:
//! the staircase subtraction for maximal out-degree, the hit-point squeeze
//! for maximal in-degree together with its inverse, the block embedding of
//! m-ary paths into standard staircase paths, and the embedded form of the
//! squeeze.

use std::sync::Arc;

use crate::degrees::{in_degree, out_degree, staircase_algorithm};
use crate::paths::{AreaVector, LatticePath, Nu, NuDyckPath, Step};
use crate::{Error, Result};

/// The boundary family `(NE^m)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MDyckShape {
    pub n: usize,
    pub m: usize,
}

impl MDyckShape {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::NotMDyckShape);
        }
        Ok(MDyckShape { n, m })
    }

    pub fn nu(&self) -> Arc<Nu> {
        Nu::shared(LatticePath::ne_power(self.n, self.m))
    }

    /// Recognizes boundaries of the form `(NE^m)^n`.
    pub fn detect(nu: &Nu) -> Option<MDyckShape> {
        let n = nu.rows();
        if n == 0 || !nu.width().is_multiple_of(n) {
            return None;
        }
        let m = nu.width() / n;
        if m == 0 || nu.path() != &LatticePath::ne_power(n, m) {
            return None;
        }
        Some(MDyckShape { n, m })
    }
}

fn detect_shape(d: &NuDyckPath) -> Result<MDyckShape> {
    MDyckShape::detect(d.nu()).ok_or(Error::NotMDyckShape)
}

/// Subtracts the maximal staircase path's area vector; defined on paths of
/// maximal out-degree, where the difference stays a valid area vector.
pub fn d_minus(d: &NuDyckPath) -> Result<NuDyckPath> {
    let xi = staircase_algorithm(d.nu()).xi;
    let mut entries = Vec::with_capacity(d.rows());
    for (a, b) in d.left_area().entries().iter().zip(xi.left_area().entries()) {
        if a < b {
            return Err(Error::NotInMaxOutSet);
        }
        entries.push(a - b);
    }
    let la = AreaVector::new(entries);
    if !la.is_weakly_increasing() {
        return Err(Error::NotInMaxOutSet);
    }
    NuDyckPath::from_left_area(Arc::clone(d.nu()), la)
}

/// Order-preserving bijection from the maximal out-degree paths over
/// `(NE^m)^n` onto all paths over `(NE^{m-1})^n`: subtract the staircase
/// and drop the final n east steps.
pub fn phi_out(d: &NuDyckPath) -> Result<NuDyckPath> {
    let shape = detect_shape(d)?;
    if shape.m < 2 {
        return Err(Error::MNotAtLeastTwo);
    }
    let sigma = staircase_algorithm(d.nu()).size;
    if out_degree(d) != sigma {
        return Err(Error::NotInMaxOutSet);
    }
    let dm = d_minus(d)?;
    let target = MDyckShape::new(shape.n, shape.m - 1)?.nu();
    NuDyckPath::from_left_area(target, dm.left_area().clone())
}

/// Inverse of [`phi_out`]: add the staircase profile back.
pub fn phi_out_inverse(x: &NuDyckPath) -> Result<NuDyckPath> {
    let shape = detect_shape(x)?;
    let target = MDyckShape::new(shape.n, shape.m + 1)?.nu();
    let xi = staircase_algorithm(&target).xi;
    let entries: Vec<usize> = x
        .left_area()
        .entries()
        .iter()
        .zip(xi.left_area().entries())
        .map(|(a, b)| a + b)
        .collect();
    NuDyckPath::from_left_area(target, AreaVector::new(entries))
}

/// Squeezes a path west: each row moves one step left for every hit point
/// strictly west of its right hand point. On paths outside the maximal
/// in-degree set the subtraction can underflow or break monotonicity, so
/// the result is checked.
pub fn hat(d: &NuDyckPath) -> Result<NuDyckPath> {
    let hit_xs: Vec<usize> =
        (1..=d.rows()).map(|j| d.hit_point(j).expect("row in range").point.x).collect();
    let mut entries = Vec::with_capacity(d.rows());
    for &x in d.left_area().entries() {
        let shift = hit_xs.iter().filter(|&&hx| hx < x).count();
        entries.push(x.checked_sub(shift).ok_or(Error::NotInMaxInSet)?);
    }
    NuDyckPath::from_left_area(Arc::clone(d.nu()), AreaVector::new(entries))
}

/// Set bijection from the maximal in-degree paths over `(NE^m)^n` onto all
/// paths over `(NE^{m-1})^n`: squeeze, then drop the final n east steps.
pub fn phi_in(d: &NuDyckPath) -> Result<NuDyckPath> {
    let shape = detect_shape(d)?;
    if shape.m < 2 {
        return Err(Error::MNotAtLeastTwo);
    }
    let sigma = staircase_algorithm(d.nu()).size;
    if in_degree(d) != sigma {
        return Err(Error::NotInMaxInSet);
    }
    let hatted = hat(d)?;
    let target = MDyckShape::new(shape.n, shape.m - 1)?.nu();
    NuDyckPath::from_left_area(target, hatted.left_area().clone())
}

/// Inverse of [`phi_in`]: walking rows from the top down, insert an east
/// step right after the row's hit point, widening the boundary by one east
/// step in that row as well.
pub fn phi_in_inverse(x: &NuDyckPath) -> Result<NuDyckPath> {
    let shape = detect_shape(x)?;
    let mut word: Vec<Step> = x.word().steps().to_vec();
    let mut boundary: Vec<Step> = x.nu().path().steps().to_vec();
    for row in (1..=shape.n).rev() {
        let cur = NuDyckPath::new(Nu::shared(LatticePath::new(boundary.clone())), LatticePath::new(word.clone()))?;
        let h = cur.hit_point(row)?;
        word.insert(h.word_index, Step::East);
        let nth_north = boundary
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::North)
            .nth(row - 1)
            .map(|(k, _)| k)
            .expect("boundary has enough north steps");
        boundary.insert(nth_north + 1, Step::East);
    }
    let target = MDyckShape::new(shape.n, shape.m + 1)?.nu();
    debug_assert_eq!(target.path().steps(), &boundary[..]);
    NuDyckPath::new(target, LatticePath::new(word))
}

/// Embeds a path over `(NE^m)^n` into the staircase family of height `m*n`
/// by turning every north step into m north steps.
pub fn pi_embed(d: &NuDyckPath) -> Result<NuDyckPath> {
    let shape = detect_shape(d)?;
    let mut steps = Vec::with_capacity(shape.m * shape.n + d.width());
    for s in d.word().steps() {
        match s {
            Step::North => steps.extend(std::iter::repeat_n(Step::North, shape.m)),
            Step::East => steps.push(Step::East),
        }
    }
    let target = Nu::shared(LatticePath::staircase(shape.m * shape.n));
    NuDyckPath::new(target, LatticePath::new(steps))
}

/// Inverse of [`pi_embed`]: every maximal run of north steps must have
/// length divisible by m and shrinks by that factor.
pub fn pi_inverse(d: &NuDyckPath, m: usize) -> Result<NuDyckPath> {
    if m == 0 || !d.rows().is_multiple_of(m) {
        return Err(Error::NotMDyckShape);
    }
    let n = d.rows() / m;
    let mut steps = Vec::with_capacity(n + d.width());
    let mut run = 0usize;
    for s in d.word().steps().iter().chain(std::iter::once(&Step::East)) {
        match s {
            Step::North => run += 1,
            Step::East => {
                if !run.is_multiple_of(m) {
                    return Err(Error::NotMDyckShape);
                }
                steps.extend(std::iter::repeat_n(Step::North, run / m));
                run = 0;
                steps.push(Step::East);
            }
        }
    }
    steps.pop();
    let target = MDyckShape::new(n, m)?.nu();
    NuDyckPath::new(target, LatticePath::new(steps))
}

/// Which mechanical form of the embedded squeeze to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarPhiVariant {
    /// Move only the east step after each designated hit point to the end,
    /// then strip `E^n` and thin each north block.
    MoveEast,
    /// Move the north step after the right hand point together with the
    /// east step after the hit point, appending `NE`; strip `(NE)^n`.
    MoveNorthEast,
}

fn require_embedded_max_in(d: &NuDyckPath, n: usize, m: usize) -> Result<()> {
    if !d.nu().is_staircase() || d.rows() != m * n {
        return Err(Error::NotInEmbeddedMaxInSet);
    }
    let pre = pi_inverse(d, m).map_err(|_| Error::NotInEmbeddedMaxInSet)?;
    let sigma = staircase_algorithm(pre.nu()).size;
    if in_degree(&pre) != sigma {
        return Err(Error::NotInEmbeddedMaxInSet);
    }
    Ok(())
}

fn east_after_or_last(word: &[Step], point_index: usize) -> usize {
    if point_index < word.len() && word[point_index] == Step::East {
        point_index
    } else {
        word.iter().rposition(|s| *s == Step::East).expect("paths here always contain east steps")
    }
}

/// The embedded squeeze on height-`m*n` staircase paths, equal to
/// embed-after-squeeze of the preimage.
pub fn bar_phi(d: &NuDyckPath, n: usize, m: usize, variant: BarPhiVariant) -> Result<NuDyckPath> {
    require_embedded_max_in(d, n, m)?;
    let mn = m * n;
    let big = Nu::shared(LatticePath::staircase(mn));
    let mut word: Vec<Step> = d.word().steps().to_vec();
    match variant {
        BarPhiVariant::MoveEast => {
            for it in 0..n {
                let cur = NuDyckPath::new(Arc::clone(&big), LatticePath::new(word.clone()))?;
                let h = cur.hit_point(it * m + 1)?;
                let e = east_after_or_last(&word, h.word_index);
                word.remove(e);
                word.push(Step::East);
            }
            for _ in 0..n {
                debug_assert_eq!(word.last(), Some(&Step::East));
                word.pop();
            }
            // Thin each north block: drop norths number 1, m+1, 2m+1, ...
            let mut out = Vec::with_capacity(word.len() - n);
            let mut norths = 0usize;
            for s in word {
                if s == Step::North {
                    norths += 1;
                    if (norths - 1).is_multiple_of(m) {
                        continue;
                    }
                }
                out.push(s);
            }
            word = out;
        }
        BarPhiVariant::MoveNorthEast => {
            // The pair move can push an intermediate below the staircase
            // or disturb the appended tail; both mean the pair recipe is
            // not defined on this input.
            for it in 0..n {
                let cur = NuDyckPath::new(Arc::clone(&big), LatticePath::new(word.clone()))
                    .map_err(|_| Error::MoveUndefined)?;
                let row = it * (m - 1) + 1;
                let r = cur.right_hand_point(row)?;
                let h = cur.hit_point(row)?;
                let e = east_after_or_last(&word, h.word_index);
                debug_assert!(e > r.word_index);
                word.remove(e);
                word.remove(r.word_index);
                word.push(Step::North);
                word.push(Step::East);
            }
            for _ in 0..n {
                if word.pop() != Some(Step::East) || word.pop() != Some(Step::North) {
                    return Err(Error::MoveUndefined);
                }
            }
        }
    }
    let target = Nu::shared(LatticePath::staircase((m - 1) * n));
    NuDyckPath::new(target, LatticePath::new(word))
}

/// The intermediate paths `D^0, ..., D^n` of the pair-moving variant, all
/// of height `m*n`. The pair move can push an intermediate path below the
/// staircase; the returned chain is the maximal valid prefix, so its
/// length is `n + 1` exactly when every iteration stays above.
pub fn bar_phi_iterations(d: &NuDyckPath, n: usize, m: usize) -> Result<Vec<NuDyckPath>> {
    require_embedded_max_in(d, n, m)?;
    let big = Nu::shared(LatticePath::staircase(m * n));
    let mut word: Vec<Step> = d.word().steps().to_vec();
    let mut out = vec![d.clone()];
    for it in 0..n {
        let cur = out.last().unwrap();
        let row = it * (m - 1) + 1;
        let r = cur.right_hand_point(row)?;
        let h = cur.hit_point(row)?;
        let e = east_after_or_last(&word, h.word_index);
        word.remove(e);
        word.remove(r.word_index);
        word.push(Step::North);
        word.push(Step::East);
        match NuDyckPath::new(Arc::clone(&big), LatticePath::new(word.clone())) {
            Ok(next) => out.push(next),
            Err(_) => break,
        }
    }
    Ok(out)
}
