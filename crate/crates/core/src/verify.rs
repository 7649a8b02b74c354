//! Exhaustive verification suites shared by the test harness and the CLI:
//! algorithm equivalence, degree bounds, the two subposet isomorphisms, the
//! distance criteria and update rules, boundary reversal, the no-bijection
//! table and the in/out cardinality sweep.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::degrees::{in_degree, max_in_set, max_out_set, out_degree, staircase_algorithm};
use crate::distance::{
    greedy_leq_by_distance, gup_distance_update, hit_distance_vector, phibar_distance_step,
    tamari_leq_by_distance, touch_distance_vector,
};
use crate::greedy::{greedy_poset, greedy_up, greedy_up_covers};
use crate::maps::{bar_phi_iterations, phi_in, phi_out, pi_embed, MDyckShape};
use crate::paths::{
    count_nu_dyck, enumerate_nu_dyck, reverse_path, AreaVector, LatticePath, Nu, NuDyckPath,
    Step,
};
use crate::tamari::{tamari_poset, up_covers};
use crate::Result;

/// Largest path family the poset builders and max-degree scans accept.
pub const DESK_SIZE_CAP: usize = 20_000;

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass(name: &str, detail: String) -> Self {
        CheckOutcome { name: name.into(), pass: true, detail, witness: None }
    }

    fn fail(name: &str, detail: String, witness: String) -> Self {
        CheckOutcome { name: name.into(), pass: false, detail, witness: Some(witness) }
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::one();
    for j in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// `1/(mn+1) * C((m+1)n, n)`, the count of paths above `(NE^m)^n`.
pub fn fuss_catalan(n: usize, m: usize) -> BigUint {
    binomial((m + 1) * n, n) / BigUint::from(m * n + 1)
}

/// Every boundary word with at most `max_steps` steps, the empty word
/// included, in (length, bit-pattern) order.
pub fn all_boundary_paths(max_steps: usize) -> Vec<LatticePath> {
    let mut out = vec![LatticePath::empty()];
    for len in 1..=max_steps {
        for mask in 0u64..(1 << len) {
            let steps = (0..len)
                .map(|k| if mask >> k & 1 == 1 { Step::North } else { Step::East })
                .collect();
            out.push(LatticePath::new(steps));
        }
    }
    out
}

/// Every boundary word with exactly `easts` east and `norths` north steps.
pub fn boundary_paths_of_shape(easts: usize, norths: usize) -> Vec<LatticePath> {
    let len = easts + norths;
    let mut out = Vec::new();
    for mask in 0u64..(1 << len) {
        if mask.count_ones() as usize != norths {
            continue;
        }
        let steps = (0..len)
            .map(|k| if mask >> k & 1 == 1 { Step::North } else { Step::East })
            .collect();
        out.push(LatticePath::new(steps));
    }
    out
}

/// Vector and geometric descent forms agree: same terminal path and same
/// recorded steps, for every boundary with at most `max_steps` steps.
pub fn verify_same_algo(max_steps: usize) -> CheckOutcome {
    let name = "same-algo";
    let bad = all_boundary_paths(max_steps).into_par_iter().find_map_first(|p| {
        let nu = Nu::shared(p);
        let (a, ta) = crate::degrees::area_algorithm(&nu);
        let (d, td) = crate::degrees::dyck_path_algorithm(&nu);
        if a != d || ta.steps != td.steps {
            return Some(nu.path().to_string());
        }
        None
    });
    match bad {
        None => CheckOutcome::pass(
            name,
            format!("both descent forms agree for all boundaries with <= {max_steps} steps"),
        ),
        Some(w) => CheckOutcome::fail(name, "descent forms disagree".into(), w),
    }
}

/// The staircase size equals the maximal out-degree and the maximal
/// in-degree, and the descent terminal attains the in-degree bound.
pub fn verify_max_degrees(max_steps: usize) -> CheckOutcome {
    let name = "maxdeg";
    let bad = all_boundary_paths(max_steps).into_par_iter().find_map_first(|p| {
        let nu = Nu::shared(p);
        let sigma = staircase_algorithm(&nu).size;
        let mut max_out = 0usize;
        let mut max_in = 0usize;
        for d in enumerate_nu_dyck(&nu) {
            max_out = max_out.max(out_degree(&d));
            max_in = max_in.max(in_degree(&d));
        }
        let terminal = crate::degrees::area_algorithm_terminal(&nu);
        if sigma != max_out || sigma != max_in || in_degree(&terminal) != sigma {
            return Some(format!(
                "{} sigma={sigma} maxout={max_out} maxin={max_in} terminal_in={}",
                nu.path(),
                in_degree(&terminal)
            ));
        }
        None
    });
    match bad {
        None => CheckOutcome::pass(
            name,
            format!("degree bounds hold for all boundaries with <= {max_steps} steps"),
        ),
        Some(w) => CheckOutcome::fail(name, "degree bound violated".into(), w),
    }
}

/// The maximal out-degree subposet over `(NE^m)^n` is order isomorphic to
/// the full order over `(NE^{m-1})^n` via the staircase subtraction.
pub fn verify_out_iso(n: usize, m: usize) -> Result<CheckOutcome> {
    let name = "out-iso";
    let shape = MDyckShape::new(n, m)?;
    let nu = shape.nu();
    let full = tamari_poset(&nu)?;
    let dout = max_out_set(&nu)?;
    let keep: Vec<AreaVector> = dout.iter().map(|d| d.left_area().clone()).collect();
    let sub = full.restrict(&keep)?;
    let smaller = MDyckShape::new(n, m - 1)?.nu();
    let target = tamari_poset(&smaller)?;
    let by_la: std::collections::HashMap<AreaVector, AreaVector> = dout
        .iter()
        .map(|d| (d.left_area().clone(), phi_out(d).expect("maximal out-degree").left_area().clone()))
        .collect();
    let viol = sub.verify_order_iso(&target, |la| by_la[la].clone())?;
    Ok(match viol {
        None => CheckOutcome::pass(
            name,
            format!("subtraction map is an order isomorphism for n={n} m={m} ({} elements)", sub.len()),
        ),
        Some((a, b)) => CheckOutcome::fail(
            name,
            format!("order not preserved for n={n} m={m}"),
            format!("pair {a} {b}"),
        ),
    })
}

/// The maximal in-degree subposet over `(NE^m)^n` is poset isomorphic to
/// the greedy order over `(NE^{m-1})^n` via the squeeze map.
pub fn verify_in_iso(n: usize, m: usize) -> Result<CheckOutcome> {
    let name = "in-iso";
    let shape = MDyckShape::new(n, m)?;
    let nu = shape.nu();
    let full = tamari_poset(&nu)?;
    let din = max_in_set(&nu)?;
    let keep: Vec<AreaVector> = din.iter().map(|d| d.left_area().clone()).collect();
    let sub = full.restrict(&keep)?;
    let smaller = MDyckShape::new(n, m - 1)?.nu();
    let target = greedy_poset(&smaller)?;
    let by_la: std::collections::HashMap<AreaVector, AreaVector> = din
        .iter()
        .map(|d| (d.left_area().clone(), phi_in(d).expect("maximal in-degree").left_area().clone()))
        .collect();
    let viol = sub.verify_order_iso(&target, |la| by_la[la].clone())?;
    Ok(match viol {
        None => CheckOutcome::pass(
            name,
            format!("squeeze map is a poset isomorphism for n={n} m={m} ({} elements)", sub.len()),
        ),
        Some((a, b)) => CheckOutcome::fail(
            name,
            format!("order not preserved for n={n} m={m}"),
            format!("pair {a} {b}"),
        ),
    })
}

/// The squeeze map is *not* an isomorphism onto the plain order of the
/// smaller family; returns the witnessing pair.
pub fn in_iso_wrong_codomain_witness(n: usize, m: usize) -> Result<Option<(String, String)>> {
    let shape = MDyckShape::new(n, m)?;
    let nu = shape.nu();
    let full = tamari_poset(&nu)?;
    let din = max_in_set(&nu)?;
    let keep: Vec<AreaVector> = din.iter().map(|d| d.left_area().clone()).collect();
    let sub = full.restrict(&keep)?;
    let smaller = MDyckShape::new(n, m - 1)?.nu();
    let wrong_target = tamari_poset(&smaller)?;
    let by_la: std::collections::HashMap<AreaVector, AreaVector> = din
        .iter()
        .map(|d| (d.left_area().clone(), phi_in(d).expect("maximal in-degree").left_area().clone()))
        .collect();
    Ok(sub
        .verify_order_iso(&wrong_target, |la| by_la[la].clone())?
        .map(|(a, b)| (a.to_string(), b.to_string())))
}

/// Closure order and touch-distance order agree on the staircase family.
pub fn verify_distance_tamari(heights: &[usize]) -> CheckOutcome {
    let name = "distance-tamari";
    for &k in heights {
        let nu = Nu::shared(LatticePath::staircase(k));
        let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
        for a in &paths {
            for b in &paths {
                let by_distance = tamari_leq_by_distance(a, b).expect("staircase");
                let by_search = crate::tamari::order_by_search(a, b).expect("same boundary");
                if by_distance != by_search {
                    return CheckOutcome::fail(
                        name,
                        format!("criterion disagrees at height {k}"),
                        format!("{a} vs {b}"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(name, format!("touch criterion exact at heights {heights:?}"))
}

/// Closure order and the two-vector criterion agree for the greedy order.
pub fn verify_distance_greedy(heights: &[usize]) -> CheckOutcome {
    let name = "distance-greedy";
    for &k in heights {
        let nu = Nu::shared(LatticePath::staircase(k));
        let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
        for a in &paths {
            for b in &paths {
                let by_distance = greedy_leq_by_distance(a, b).expect("staircase");
                let by_search =
                    crate::greedy::greedy_order_by_search(a, b).expect("same boundary");
                if by_distance != by_search {
                    return CheckOutcome::fail(
                        name,
                        format!("criterion disagrees at height {k}"),
                        format!("{a} vs {b}"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(name, format!("two-vector criterion exact at heights {heights:?}"))
}

/// Predicted distance vectors of greedy covers match recomputation.
pub fn verify_cover_update(max_height: usize) -> CheckOutcome {
    let name = "cover-update";
    for k in 1..=max_height {
        let nu = Nu::shared(LatticePath::staircase(k));
        for d in enumerate_nu_dyck(&nu) {
            for i in 1..=k {
                if let Some(up) = greedy_up(&d, i).expect("row in range") {
                    let (pt, ph) = gup_distance_update(&d, i).expect("move defined");
                    if pt != touch_distance_vector(&up).unwrap()
                        || ph != hit_distance_vector(&up).unwrap()
                    {
                        return CheckOutcome::fail(
                            name,
                            format!("update rule wrong at height {k}"),
                            format!("{d} row {i}"),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(name, format!("cover update exact up to height {max_height}"))
}

/// Predicted distance vectors along the embedded squeeze iterations match
/// recomputation: the touch prediction on every step whose result stays
/// above the staircase, the hit prediction additionally on steps whose
/// pushed rows keep a horizontal distance of at least two.
pub fn verify_phibar_update(n: usize, m: usize) -> Result<CheckOutcome> {
    let name = "phibar-update";
    let shape = MDyckShape::new(n, m)?;
    let mut applicable = 0usize;
    let mut steps = 0usize;
    for d in max_in_set(&shape.nu())? {
        let big = pi_embed(&d)?;
        let chain = bar_phi_iterations(&big, n, m)?;
        for (i, cur) in chain.iter().enumerate() {
            if i + 1 >= chain.len() {
                break;
            }
            steps += 1;
            let (pt, ph) = phibar_distance_step(cur, i, n, m)?;
            let next = &chain[i + 1];
            if pt != touch_distance_vector(next).unwrap() {
                return Ok(CheckOutcome::fail(
                    name,
                    format!("touch step formula wrong for n={n} m={m}"),
                    format!("{d} iteration {i}"),
                ));
            }
            if crate::distance::squeeze_step_applicable(cur, i, n, m) {
                applicable += 1;
                if ph != hit_distance_vector(next).unwrap() {
                    return Ok(CheckOutcome::fail(
                        name,
                        format!("hit step formula wrong for n={n} m={m}"),
                        format!("{d} iteration {i}"),
                    ));
                }
            }
        }
    }
    if applicable == 0 {
        return Ok(CheckOutcome::fail(
            name,
            format!("no applicable steps for n={n} m={m}"),
            String::new(),
        ));
    }
    Ok(CheckOutcome::pass(
        name,
        format!("squeeze step formula exact for n={n} m={m} ({applicable}/{steps} steps fully applicable)"),
    ))
}

/// The order over ν and over its reversal are isomorphic. This is false:
/// reversal turns the order upside down, and for boundaries as small as
/// ENEEN the order is not isomorphic to its own dual. Kept as stated so
/// the discrepancy stays visible; see [`verify_reversal_dual_iso`] for the
/// statement that does hold.
pub fn verify_reversal_iso(max_steps: usize) -> CheckOutcome {
    let name = "reversal-iso";
    let bad = all_boundary_paths(max_steps).into_par_iter().find_map_first(|p| {
        let nu = Nu::shared(p.clone());
        let rev = Nu::shared(reverse_path(&p));
        let a = tamari_poset(&nu).expect("desk scale");
        let b = tamari_poset(&rev).expect("desk scale");
        match a.is_isomorphic(&b) {
            Ok(Some(_)) => None,
            _ => Some(p.to_string()),
        }
    });
    match bad {
        None => CheckOutcome::pass(
            name,
            format!("order isomorphic to its reversal for all boundaries with <= {max_steps} steps"),
        ),
        Some(w) => CheckOutcome::fail(
            name,
            "reversal does not preserve the order up to isomorphism; it dualizes it".into(),
            w,
        ),
    }
}

/// The order over the reversal of ν is isomorphic to the dual of the order
/// over ν; this is the reversal statement that verifies exhaustively.
pub fn verify_reversal_dual_iso(max_steps: usize) -> CheckOutcome {
    let name = "reversal-dual-iso";
    let bad = all_boundary_paths(max_steps).into_par_iter().find_map_first(|p| {
        let nu = Nu::shared(p.clone());
        let rev = Nu::shared(reverse_path(&p));
        let a = tamari_poset(&nu).expect("desk scale");
        let b = tamari_poset(&rev).expect("desk scale");
        match a.opposite().is_isomorphic(&b) {
            Ok(Some(_)) => None,
            _ => Some(p.to_string()),
        }
    });
    match bad {
        None => CheckOutcome::pass(
            name,
            format!(
                "order dual-isomorphic to its reversal for all boundaries with <= {max_steps} steps"
            ),
        ),
        Some(w) => CheckOutcome::fail(name, "dual reversal failed".into(), w),
    }
}

/// One cell of the no-set-bijection table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub easts: usize,
    pub norths: usize,
    /// Boundaries of this shape whose maximal in-degree count matches no
    /// weakly-above boundary's path count.
    pub count: usize,
    pub witnesses: Vec<String>,
}

/// Is some boundary weakly above ν (same endpoints) whose family has
/// exactly `target` elements?
fn bijection_partner_exists(nu: &Arc<Nu>, target: &BigUint) -> bool {
    enumerate_nu_dyck(nu).any(|candidate| {
        let as_boundary = Nu::new(candidate.word().clone());
        count_nu_dyck(&as_boundary) == *target
    })
}

/// Computes one table cell by scanning all boundaries of the shape.
pub fn table_cell(easts: usize, norths: usize) -> TableCell {
    let mut flagged: Vec<String> = boundary_paths_of_shape(easts, norths)
        .into_par_iter()
        .filter_map(|p| {
            let nu = Nu::shared(p);
            let din = max_in_set(&nu).expect("desk scale");
            let target = BigUint::from(din.len());
            if bijection_partner_exists(&nu, &target) {
                None
            } else {
                Some(nu.path().to_string())
            }
        })
        .collect();
    flagged.sort();
    TableCell { easts, norths, count: flagged.len(), witnesses: flagged }
}

/// Per-shape summary of the in/out cardinality sweep.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub max_steps: usize,
    pub boundaries_checked: usize,
    /// (easts, norths, boundaries of that shape checked)
    pub shape_tallies: Vec<(usize, usize, usize)>,
    /// Boundaries where |max in set| != |max out set| (expected empty).
    pub counterexamples: Vec<String>,
}

/// Checks `|max_in_set| == |max_out_set|` for every boundary with at most
/// `max_steps` steps.
pub fn conjecture_sweep(max_steps: usize) -> ConjectureReport {
    let paths = all_boundary_paths(max_steps);
    let boundaries_checked = paths.len();
    let results: Vec<(usize, usize, Option<String>)> = paths
        .into_par_iter()
        .map(|p| {
            let nu = Nu::shared(p);
            let din = max_in_set(&nu).expect("desk scale").len();
            let dout = max_out_set(&nu).expect("desk scale").len();
            let bad = (din != dout).then(|| {
                format!("{} |in|={din} |out|={dout}", nu.path())
            });
            (nu.width(), nu.rows(), bad)
        })
        .collect();
    let mut tallies: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    let mut counterexamples = Vec::new();
    for (e, n, bad) in results {
        *tallies.entry((e, n)).or_default() += 1;
        if let Some(w) = bad {
            counterexamples.push(w);
        }
    }
    counterexamples.sort();
    ConjectureReport {
        max_steps,
        boundaries_checked,
        shape_tallies: tallies.into_iter().map(|((e, n), c)| (e, n, c)).collect(),
        counterexamples,
    }
}

/// Census line for one boundary: the out-degree bound, both maximal-degree
/// set sizes and the family size.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub nu_word: String,
    pub sigma: usize,
    pub max_in: usize,
    pub max_out: usize,
    pub total: BigUint,
}

pub fn census(nu: &Arc<Nu>) -> Result<CensusRow> {
    Ok(CensusRow {
        nu_word: nu.path().to_string(),
        sigma: staircase_algorithm(nu).size,
        max_in: max_in_set(nu)?.len(),
        max_out: max_out_set(nu)?.len(),
        total: count_nu_dyck(nu),
    })
}

/// Greedy covers for use as generic cover edges (re-exported for the CLI).
pub fn greedy_covers_of(d: &NuDyckPath) -> Vec<(usize, NuDyckPath)> {
    greedy_up_covers(d)
}

/// Plain covers for use as generic cover edges (re-exported for the CLI).
pub fn tamari_covers_of(d: &NuDyckPath) -> Vec<(usize, NuDyckPath)> {
    up_covers(d)
}
