//! Touch and hit distance vectors for paths above the staircase boundary
//! `(NE)^k`, the componentwise order criteria built from them, and the two
//! incremental update rules for greedy covers and the embedded squeeze map.

use crate::greedy::greedy_up;
use crate::paths::{GridPoint, NuDyckPath};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Touch,
    Hit,
}

/// Per-row half path-lengths from the right hand point to its touch or hit
/// point; equal to the number of north steps in between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub entries: Vec<usize>,
    pub kind: DistanceKind,
}

impl DistanceVector {
    pub fn le(&self, other: &DistanceVector) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

fn require_staircase(d: &NuDyckPath) -> Result<usize> {
    if !d.nu().is_staircase() {
        return Err(Error::NotStaircaseNu);
    }
    Ok(d.rows())
}

fn norths_between(d: &NuDyckPath, from: usize, to: usize) -> usize {
    d.word().steps()[from..to]
        .iter()
        .filter(|s| **s == crate::paths::Step::North)
        .count()
}

fn distance_vector(d: &NuDyckPath, kind: DistanceKind) -> Result<DistanceVector> {
    let k = require_staircase(d)?;
    let mut entries = Vec::with_capacity(k);
    for i in 1..=k {
        let r = d.right_hand_point(i)?;
        let p = match kind {
            DistanceKind::Touch => d.touch_point(i)?,
            DistanceKind::Hit => d.hit_point(i)?,
        };
        entries.push(norths_between(d, r.word_index, p.word_index));
    }
    Ok(DistanceVector { entries, kind })
}

pub fn touch_distance_vector(d: &NuDyckPath) -> Result<DistanceVector> {
    distance_vector(d, DistanceKind::Touch)
}

pub fn hit_distance_vector(d: &NuDyckPath) -> Result<DistanceVector> {
    distance_vector(d, DistanceKind::Hit)
}

fn check_pair(a: &NuDyckPath, b: &NuDyckPath) -> Result<()> {
    require_staircase(a)?;
    require_staircase(b)?;
    if a.rows() != b.rows() {
        return Err(Error::HeightMismatch);
    }
    Ok(())
}

/// Base-order test by componentwise touch-distance comparison.
pub fn tamari_leq_by_distance(a: &NuDyckPath, b: &NuDyckPath) -> Result<bool> {
    check_pair(a, b)?;
    Ok(touch_distance_vector(a)?.le(&touch_distance_vector(b)?))
}

/// Greedy-order test: both the touch and hit distance vectors must grow.
pub fn greedy_leq_by_distance(a: &NuDyckPath, b: &NuDyckPath) -> Result<bool> {
    check_pair(a, b)?;
    Ok(touch_distance_vector(a)?.le(&touch_distance_vector(b)?)
        && hit_distance_vector(a)?.le(&hit_distance_vector(b)?))
}

/// Predicts the distance vectors of `greedy_up(d, i)` from those of `d`:
/// rows whose touch point sits on `r_i` gain the full jump on the touch
/// side, and rows whose hit point sits just west of `r_i` gain it on the
/// hit side.
pub fn gup_distance_update(d: &NuDyckPath, i: usize) -> Result<(DistanceVector, DistanceVector)> {
    let k = require_staircase(d)?;
    if greedy_up(d, i)?.is_none() {
        return Err(Error::MoveUndefined);
    }
    let r = d.right_hand_point(i)?;
    let h = d.hit_point(i)?;
    let jump = norths_between(d, r.word_index, h.word_index);
    let west = GridPoint::new(r.point.x - 1, r.point.y);
    let mut touch = touch_distance_vector(d)?;
    let mut hit = hit_distance_vector(d)?;
    for j in 1..=k {
        if d.touch_point(j)?.point == r.point {
            touch.entries[j - 1] += jump;
        }
        if d.hit_point(j)?.point == west {
            hit.entries[j - 1] += jump;
        }
    }
    Ok((touch, hit))
}

/// The pair-moving squeeze pushes rows above the worked one south by a
/// step. The step formulas below are exact when every pushed row keeps a
/// horizontal distance of at least two, so that no hit point decays to the
/// final point.
pub fn squeeze_step_applicable(d: &NuDyckPath, iter: usize, n: usize, m: usize) -> bool {
    let mn = m * n;
    let idx = iter * (m - 1) + 1;
    (idx + 1..=mn - iter).all(|k| {
        let r = d.right_hand_point(k).expect("row in range");
        d.nu().horiz(r.point) >= 2
    })
}

/// Predicts the distance vectors after one iteration of the pair-moving
/// squeeze (see [`crate::maps::bar_phi_iterations`]): `d` is the `iter`-th
/// intermediate height-`m*n` path and the result describes the next one.
pub fn phibar_distance_step(
    d: &NuDyckPath,
    iter: usize,
    n: usize,
    m: usize,
) -> Result<(DistanceVector, DistanceVector)> {
    let k = require_staircase(d)?;
    if k != m * n {
        return Err(Error::HeightMismatch);
    }
    if iter >= n {
        return Err(Error::IterationOutOfRange { index: iter, bound: n });
    }
    let mn = m * n;
    let idx = iter * (m - 1) + 1;
    let touch = touch_distance_vector(d)?;
    let hit = hit_distance_vector(d)?;
    let t_ref = d.touch_point(idx)?.point.x;
    let h_ref = d.hit_point(idx)?.point.x;

    let mut new_touch = Vec::with_capacity(mn);
    let mut new_hit = Vec::with_capacity(mn);
    for j in 1..=mn {
        let t = if j >= mn - iter {
            1
        } else if j >= idx {
            touch.entries[j]
        } else if d.touch_point(j)?.point.x >= t_ref {
            touch.entries[j - 1] - 1
        } else {
            touch.entries[j - 1]
        };
        new_touch.push(t);

        let h = if j >= mn - iter {
            mn - j + 1
        } else if j >= idx && j != 1 {
            hit.entries[j]
        } else if j == 1 {
            mn
        } else if d.hit_point(j)?.point.x >= h_ref {
            hit.entries[j - 1] - 1
        } else {
            hit.entries[j - 1]
        };
        new_hit.push(h);
    }
    Ok((
        DistanceVector { entries: new_touch, kind: DistanceKind::Touch },
        DistanceVector { entries: new_hit, kind: DistanceKind::Hit },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::greedy_up_covers;
    use crate::paths::{enumerate_nu_dyck, parse_path, LatticePath, Nu, NuDyckPath, Step};
    use crate::tamari::up_covers;
    use std::sync::Arc;

    fn staircase(k: usize) -> Arc<Nu> {
        Nu::shared(LatticePath::staircase(k))
    }

    fn dyck(k: usize, word: &str) -> NuDyckPath {
        NuDyckPath::new(staircase(k), parse_path(word).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_vectors() {
        let d = dyck(6, "NNNN EE NN EEEE");
        assert_eq!(touch_distance_vector(&d).unwrap().entries, vec![6, 5, 2, 1, 2, 1]);
        assert_eq!(hit_distance_vector(&d).unwrap().entries, vec![6, 5, 4, 1, 2, 1]);
    }

    #[test]
    fn extreme_paths() {
        for k in 1..=6usize {
            // On the bottom path each touch point is the very next lattice
            // point, while every hit point is the final point (all rows
            // have horizontal distance zero).
            let bottom = NuDyckPath::minimal(staircase(k));
            let descending: Vec<usize> = (1..=k).rev().collect();
            assert_eq!(touch_distance_vector(&bottom).unwrap().entries, vec![1; k]);
            assert_eq!(hit_distance_vector(&bottom).unwrap().entries, descending);
            let top = NuDyckPath::maximal(staircase(k));
            let expect: Vec<usize> = (1..=k).rev().collect();
            assert_eq!(touch_distance_vector(&top).unwrap().entries, expect);
            assert_eq!(hit_distance_vector(&top).unwrap().entries, expect);
        }
    }

    #[test]
    fn hit_dominates_touch_and_lengths_balance() {
        for k in 1..=6usize {
            let nu = staircase(k);
            for d in enumerate_nu_dyck(&nu) {
                let t = touch_distance_vector(&d).unwrap();
                let h = hit_distance_vector(&d).unwrap();
                assert!(t.le(&h));
                for i in 1..=k {
                    let r = d.right_hand_point(i).unwrap();
                    for p in [d.touch_point(i).unwrap(), d.hit_point(i).unwrap()] {
                        let steps = &d.word().steps()[r.word_index..p.word_index];
                        let norths = steps.iter().filter(|s| **s == Step::North).count();
                        let easts = steps.len() - norths;
                        assert_eq!(norths, easts, "half-length must be integral");
                    }
                    assert!(t.entries[i - 1] >= 1 && t.entries[i - 1] <= k);
                }
            }
        }
    }

    #[test]
    fn rejects_non_staircase_and_height_mismatch() {
        let nu = Nu::from_word("EENN").unwrap();
        let d = NuDyckPath::maximal(nu);
        assert_eq!(touch_distance_vector(&d), Err(Error::NotStaircaseNu));

        let a = NuDyckPath::maximal(staircase(3));
        let b = NuDyckPath::maximal(staircase(4));
        assert_eq!(tamari_leq_by_distance(&a, &b), Err(Error::HeightMismatch));
    }

    #[test]
    fn distance_orders_match_search_orders() {
        for k in 3..=5usize {
            let nu = staircase(k);
            let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
            for a in &paths {
                for b in &paths {
                    assert_eq!(
                        tamari_leq_by_distance(a, b).unwrap(),
                        crate::tamari::order_by_search(a, b).unwrap(),
                    );
                    assert_eq!(
                        greedy_leq_by_distance(a, b).unwrap(),
                        crate::greedy::greedy_order_by_search(a, b).unwrap(),
                    );
                }
            }
        }
    }

    #[test]
    fn distance_orders_match_closure_at_height_six() {
        // Full quadratic check against the closure of the cover graphs.
        let nu = staircase(6);
        let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
        assert_eq!(paths.len(), 132);
        let t_poset = crate::tamari::poset_from_moves(&nu, crate::tamari::up_covers).unwrap();
        let g_poset = crate::tamari::poset_from_moves(&nu, greedy_up_covers).unwrap();
        for a in &paths {
            for b in &paths {
                assert_eq!(
                    tamari_leq_by_distance(a, b).unwrap(),
                    t_poset.le(a.left_area(), b.left_area()).unwrap(),
                );
                assert_eq!(
                    greedy_leq_by_distance(a, b).unwrap(),
                    g_poset.le(a.left_area(), b.left_area()).unwrap(),
                );
            }
        }
    }

    #[test]
    fn touch_alone_does_not_capture_the_greedy_order() {
        // A pair whose touch vectors compare but whose hit vectors do not.
        let k = 4;
        let nu = staircase(k);
        let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
        let mut witness = None;
        for a in &paths {
            for b in &paths {
                let t = touch_distance_vector(a).unwrap().le(&touch_distance_vector(b).unwrap());
                let h = hit_distance_vector(a).unwrap().le(&hit_distance_vector(b).unwrap());
                if t && !h {
                    witness = Some((a.clone(), b.clone()));
                }
            }
        }
        let (a, b) = witness.expect("height 4 must contain a separating pair");
        assert!(!greedy_leq_by_distance(&a, &b).unwrap());
        // Frozen instance: the base order relates these, the greedy does not.
        let a = NuDyckPath::minimal(staircase(4));
        let b = NuDyckPath::from_left_area(staircase(4), vec![0, 0, 2, 3].into()).unwrap();
        assert!(tamari_leq_by_distance(&a, &b).unwrap());
        assert!(!greedy_leq_by_distance(&a, &b).unwrap());
    }

    #[test]
    fn reflexivity() {
        for d in enumerate_nu_dyck(&staircase(4)) {
            assert!(tamari_leq_by_distance(&d, &d).unwrap());
            assert!(greedy_leq_by_distance(&d, &d).unwrap());
        }
    }

    #[test]
    fn covers_only_grow_distances() {
        // Greedy covers grow both vectors (their bumps are nonnegative).
        // Plain covers grow the touch vector but may shrink hit entries: a
        // witness is frozen below.
        for k in 1..=5usize {
            let nu = staircase(k);
            for d in enumerate_nu_dyck(&nu) {
                let t = touch_distance_vector(&d).unwrap();
                let h = hit_distance_vector(&d).unwrap();
                for (_, up) in up_covers(&d) {
                    assert!(t.le(&touch_distance_vector(&up).unwrap()));
                }
                for (_, up) in greedy_up_covers(&d) {
                    assert!(t.le(&touch_distance_vector(&up).unwrap()));
                    assert!(h.le(&hit_distance_vector(&up).unwrap()));
                }
            }
        }
        let bottom = NuDyckPath::minimal(staircase(3));
        let up = crate::tamari::tamari_up(&bottom, 2).unwrap().unwrap();
        assert_eq!(up.left_area().entries(), &[0, 0, 2]);
        assert_eq!(hit_distance_vector(&bottom).unwrap().entries, vec![3, 2, 1]);
        assert_eq!(hit_distance_vector(&up).unwrap().entries, vec![3, 1, 1]);
    }

    #[test]
    fn greedy_cover_update_matches_recomputation() {
        for k in 1..=5usize {
            let nu = staircase(k);
            for d in enumerate_nu_dyck(&nu) {
                for i in 1..=k {
                    match greedy_up(&d, i).unwrap() {
                        None => {
                            assert_eq!(gup_distance_update(&d, i), Err(Error::MoveUndefined));
                        }
                        Some(up) => {
                            let (pt, ph) = gup_distance_update(&d, i).unwrap();
                            assert_eq!(pt, touch_distance_vector(&up).unwrap());
                            assert_eq!(ph, hit_distance_vector(&up).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn update_rows_follow_the_two_cases()  {
        // Rows not leaning on r_i keep their touch distance, and the bump
        // is exactly the jump from r_i to h_i.
        let d = dyck(6, "NNNN EE NN EEEE");
        let i = 5;
        let up = greedy_up(&d, i).unwrap().unwrap();
        let (pt, _) = gup_distance_update(&d, i).unwrap();
        let before = touch_distance_vector(&d).unwrap();
        let after = touch_distance_vector(&up).unwrap();
        let r = d.right_hand_point(i).unwrap();
        let h = d.hit_point(i).unwrap();
        let jump = super::norths_between(&d, r.word_index, h.word_index);
        for j in 1..=6usize {
            if d.touch_point(j).unwrap().point == r.point {
                assert_eq!(pt.entries[j - 1], before.entries[j - 1] + jump);
            } else {
                assert_eq!(pt.entries[j - 1], before.entries[j - 1]);
            }
            assert_eq!(pt.entries[j - 1], after.entries[j - 1]);
        }
    }

    #[test]
    fn squeeze_step_prediction_matches_recomputation() {
        // The pair move pushes everything above the worked row one step
        // south. On steps where every pushed row keeps horizontal distance
        // at least two (so no hit point decays to the final point), both
        // predicted vectors are exact; the touch prediction is exact on
        // every step whose result stays above the staircase.
        for (n, m) in [(3usize, 2usize), (4, 2), (3, 3)] {
            let shape = crate::maps::MDyckShape::new(n, m).unwrap();
            let mut applicable_steps = 0usize;
            for d in crate::degrees::max_in_set(&shape.nu()).unwrap() {
                let embedded = crate::maps::pi_embed(&d).unwrap();
                let chain = crate::maps::bar_phi_iterations(&embedded, n, m).unwrap();
                for (i, cur) in chain.iter().enumerate() {
                    if i + 1 >= chain.len() {
                        break;
                    }
                    let (pt, ph) = phibar_distance_step(cur, i, n, m).unwrap();
                    let next = &chain[i + 1];
                    assert_eq!(pt, touch_distance_vector(next).unwrap(), "iter {i} of {d}");
                    if squeeze_step_applicable(cur, i, n, m) {
                        applicable_steps += 1;
                        assert_eq!(ph, hit_distance_vector(next).unwrap(), "iter {i} of {d}");
                        // Tail rows follow the fixed profile.
                        for j in (m * n - i).max(1)..=m * n {
                            assert_eq!(pt.entries[j - 1], 1);
                            assert_eq!(ph.entries[j - 1], m * n - j + 1);
                        }
                        assert_eq!(ph.entries[0], m * n);
                    }
                }
            }
            assert!(applicable_steps > 0, "no applicable steps for n={n} m={m}");
        }

        let shape = crate::maps::MDyckShape::new(3, 2).unwrap();
        let top = crate::maps::pi_embed(&NuDyckPath::maximal(shape.nu())).unwrap();
        let out_of_range = phibar_distance_step(&top, 3, 3, 2);
        assert_eq!(out_of_range, Err(Error::IterationOutOfRange { index: 3, bound: 3 }));
    }
}
