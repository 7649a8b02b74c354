//! Core lattice-path types: monotone N/E words, the boundary path ν, paths
//! weakly above ν, area vectors, horizontal distances and touch/hit points.
//!
//! Conventions used throughout the crate:
//! * rows are indexed `1..=s_N` from the bottom;
//! * the left area vector of a path stores, for each row, the x-coordinate
//!   of the point just before that row's north step (bottom row first), so
//!   it is always weakly increasing;
//! * a path `d` is weakly above ν exactly when `la(d) <= la(ν)` entrywise.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// One step of a monotone lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }

    /// Swaps north and east; used by path reversal.
    pub fn flipped(self) -> Step {
        match self {
            Step::North => Step::East,
            Step::East => Step::North,
        }
    }
}

/// A monotone path from `(0,0)` to `(easts, norths)` stored as a step word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
    norths: usize,
    easts: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        let norths = steps.iter().filter(|s| **s == Step::North).count();
        let easts = steps.len() - norths;
        LatticePath { steps, norths, easts }
    }

    pub fn empty() -> Self {
        LatticePath::new(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of north steps (`s_N`).
    pub fn norths(&self) -> usize {
        self.norths
    }

    /// Number of east steps (`s_E`).
    pub fn easts(&self) -> usize {
        self.easts
    }

    /// `(NE^m)^n`, the boundary of m-ary paths of height n.
    pub fn ne_power(n: usize, m: usize) -> Self {
        let mut steps = Vec::with_capacity(n * (m + 1));
        for _ in 0..n {
            steps.push(Step::North);
            steps.extend(std::iter::repeat_n(Step::East, m));
        }
        LatticePath::new(steps)
    }

    /// `(NE)^k`, the staircase boundary of standard height-k paths.
    pub fn staircase(k: usize) -> Self {
        Self::ne_power(k, 1)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Parses a word over `{N, E}`; whitespace is ignored.
pub fn parse_path(word: &str) -> Result<LatticePath> {
    let mut steps = Vec::new();
    for ch in word.chars() {
        match ch {
            'N' => steps.push(Step::North),
            'E' => steps.push(Step::East),
            c if c.is_whitespace() => {}
            c => return Err(Error::InvalidCharacter(c)),
        }
    }
    if steps.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(LatticePath::new(steps))
}

/// Reverses the word and swaps north with east steps.
pub fn reverse_path(path: &LatticePath) -> LatticePath {
    LatticePath::new(path.steps().iter().rev().map(|s| s.flipped()).collect())
}

/// Per-row area values, bottom row first. Left area vectors are weakly
/// increasing; right area vectors are the row-wise horizontal distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AreaVector(Vec<usize>);

impl AreaVector {
    pub fn new(entries: Vec<usize>) -> Self {
        AreaVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for AreaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for AreaVector {
    fn from(entries: Vec<usize>) -> Self {
        AreaVector(entries)
    }
}

impl std::ops::Index<usize> for AreaVector {
    type Output = usize;
    fn index(&self, k: usize) -> &usize {
        &self.0[k]
    }
}

/// Left area vector of an arbitrary path: entry `i` is the x-coordinate of
/// the point just before the `i`-th north step.
pub fn left_area_vector(path: &LatticePath) -> AreaVector {
    let mut out = Vec::with_capacity(path.norths());
    let mut x = 0usize;
    for s in path.steps() {
        match s {
            Step::East => x += 1,
            Step::North => out.push(x),
        }
    }
    AreaVector(out)
}

/// A grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
}

impl GridPoint {
    pub fn new(x: usize, y: usize) -> Self {
        GridPoint { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point on a specific path: grid coordinates plus the index into the step
/// word (the number of steps taken to reach it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathPoint {
    pub point: GridPoint,
    pub word_index: usize,
}

/// The boundary path ν together with its cached left area vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nu {
    path: LatticePath,
    la: AreaVector,
}

impl Nu {
    pub fn new(path: LatticePath) -> Self {
        let la = left_area_vector(&path);
        Nu { path, la }
    }

    pub fn shared(path: LatticePath) -> Arc<Nu> {
        Arc::new(Nu::new(path))
    }

    pub fn from_word(word: &str) -> Result<Arc<Nu>> {
        Ok(Nu::shared(parse_path(word)?))
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn left_area(&self) -> &AreaVector {
        &self.la
    }

    pub fn rows(&self) -> usize {
        self.path.norths()
    }

    pub fn width(&self) -> usize {
        self.path.easts()
    }

    /// Largest x-coordinate weakly above ν at height `y`.
    pub fn max_x(&self, y: usize) -> usize {
        if y < self.rows() {
            self.la[y]
        } else {
            self.width()
        }
    }

    /// Horizontal distance of a point weakly above ν: how many east steps
    /// fit from it before crossing below ν.
    pub fn horiz(&self, p: GridPoint) -> usize {
        debug_assert!(p.x <= self.max_x(p.y));
        self.max_x(p.y) - p.x
    }

    /// True when ν is exactly `(NE)^k`.
    pub fn is_staircase(&self) -> bool {
        self.rows() == self.width()
            && self.la.entries().iter().enumerate().all(|(k, v)| *v == k)
    }
}

/// A path bound to ν and validated to lie weakly above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NuDyckPath {
    nu: Arc<Nu>,
    word: LatticePath,
    la: AreaVector,
}

impl NuDyckPath {
    pub fn new(nu: Arc<Nu>, word: LatticePath) -> Result<Self> {
        if word.norths() != nu.rows() || word.easts() != nu.width() {
            return Err(Error::HeightMismatch);
        }
        let la = left_area_vector(&word);
        for (k, (d, b)) in la.entries().iter().zip(nu.left_area().entries()).enumerate() {
            if d > b {
                return Err(Error::AboveViolation(k + 1));
            }
        }
        Ok(NuDyckPath { nu, word, la })
    }

    /// Builds the path with the given left area vector over ν.
    pub fn from_left_area(nu: Arc<Nu>, la: AreaVector) -> Result<Self> {
        if la.len() != nu.rows() {
            return Err(Error::HeightMismatch);
        }
        if !la.is_weakly_increasing() {
            return Err(Error::NotWeaklyIncreasing);
        }
        for (k, (d, b)) in la.entries().iter().zip(nu.left_area().entries()).enumerate() {
            if d > b {
                return Err(Error::AboveViolation(k + 1));
            }
        }
        let mut steps = Vec::with_capacity(nu.rows() + nu.width());
        let mut x = 0usize;
        for &v in la.entries() {
            steps.extend(std::iter::repeat_n(Step::East, v - x));
            steps.push(Step::North);
            x = v;
        }
        steps.extend(std::iter::repeat_n(Step::East, nu.width() - x));
        Ok(NuDyckPath { nu, word: LatticePath::new(steps), la })
    }

    /// The top element `N^{s_N} E^{s_E}`.
    pub fn maximal(nu: Arc<Nu>) -> Self {
        let la = AreaVector(vec![0; nu.rows()]);
        NuDyckPath::from_left_area(nu, la).expect("all-zero area vector is always valid")
    }

    /// The bottom element, ν itself.
    pub fn minimal(nu: Arc<Nu>) -> Self {
        let la = nu.left_area().clone();
        NuDyckPath::from_left_area(nu, la).expect("the boundary is weakly above itself")
    }

    pub fn nu(&self) -> &Arc<Nu> {
        &self.nu
    }

    pub fn word(&self) -> &LatticePath {
        &self.word
    }

    pub fn left_area(&self) -> &AreaVector {
        &self.la
    }

    pub fn rows(&self) -> usize {
        self.nu.rows()
    }

    pub fn width(&self) -> usize {
        self.nu.width()
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rows() {
            return Err(Error::RowOutOfRange { row: i, rows: self.rows() });
        }
        Ok(())
    }

    /// Right hand point of row `i`: the point just before the `i`-th north
    /// step. Its word index is `la[i-1] + i - 1`.
    pub fn right_hand_point(&self, i: usize) -> Result<PathPoint> {
        self.check_row(i)?;
        let x = self.la[i - 1];
        Ok(PathPoint { point: GridPoint::new(x, i - 1), word_index: x + i - 1 })
    }

    /// True when row `i`'s right hand point is preceded by an east step.
    pub fn east_before_row(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.rows());
        if i == 1 {
            self.la[0] > 0
        } else {
            self.la[i - 1] > self.la[i - 2]
        }
    }

    /// Horizontal distance of an on-path point.
    pub fn horizontal_distance(&self, p: GridPoint) -> Result<usize> {
        if !self.is_on_path(p) {
            return Err(Error::PointNotOnPath(p.x, p.y));
        }
        Ok(self.nu.horiz(p))
    }

    fn is_on_path(&self, p: GridPoint) -> bool {
        if p.y > self.rows() || p.x > self.width() {
            return false;
        }
        // Row y spans x from la[y-1]..=next row's entry (or width at the top).
        let lo = if p.y == 0 { 0 } else { self.la[p.y - 1] };
        let hi = if p.y < self.rows() { self.la[p.y] } else { self.width() };
        lo <= p.x && p.x <= hi
    }

    /// All points along the path with their horizontal distances.
    pub fn horizontal_distance_vector(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.word.len() + 1);
        let (mut x, mut y) = (0usize, 0usize);
        out.push(self.nu.horiz(GridPoint::new(x, y)));
        for s in self.word.steps() {
            match s {
                Step::East => x += 1,
                Step::North => y += 1,
            }
            out.push(self.nu.horiz(GridPoint::new(x, y)));
        }
        out
    }

    fn scan_for(&self, i: usize, hit: bool) -> Result<PathPoint> {
        let r = self.right_hand_point(i)?;
        let target = self.nu.horiz(r.point);
        let steps = self.word.steps();
        let (mut x, mut y) = (r.point.x, r.point.y);
        for k in r.word_index..steps.len() {
            match steps[k] {
                Step::East => x += 1,
                Step::North => y += 1,
            }
            let here = GridPoint::new(x, y);
            if self.nu.horiz(here) == target {
                let followed_by_east = k + 1 == steps.len() || steps[k + 1] == Step::East;
                if !hit || followed_by_east {
                    return Ok(PathPoint { point: here, word_index: k + 1 });
                }
            }
        }
        unreachable!("the final point has horizontal distance 0, so the scan always lands")
    }

    /// First point after the row's right hand point with the same horizontal
    /// distance.
    pub fn touch_point(&self, i: usize) -> Result<PathPoint> {
        self.scan_for(i, false)
    }

    /// First point after the row's right hand point with the same horizontal
    /// distance that is followed by an east step or ends the path.
    pub fn hit_point(&self, i: usize) -> Result<PathPoint> {
        self.scan_for(i, true)
    }

    /// Rebinds a spliced word over the same ν.
    pub(crate) fn with_word(&self, steps: Vec<Step>) -> Result<NuDyckPath> {
        NuDyckPath::new(Arc::clone(&self.nu), LatticePath::new(steps))
    }
}

impl fmt::Display for NuDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Row-wise horizontal distances; always `la(ν) - la(d)` entrywise.
pub fn right_area_vector(d: &NuDyckPath) -> AreaVector {
    AreaVector(
        d.nu()
            .left_area()
            .entries()
            .iter()
            .zip(d.left_area().entries())
            .map(|(b, v)| b - v)
            .collect(),
    )
}

/// See [`NuDyckPath::from_left_area`].
pub fn path_from_left_area(la: AreaVector, nu: &Arc<Nu>) -> Result<NuDyckPath> {
    NuDyckPath::from_left_area(Arc::clone(nu), la)
}

/// Drops the first entry of the left area vector and duplicates the last,
/// the "shift down" of a path. Fails when the result dips below ν.
pub fn shift_down(d: &NuDyckPath) -> Result<NuDyckPath> {
    if d.rows() <= 1 {
        return Ok(d.clone());
    }
    let old = d.left_area().entries();
    let mut entries: Vec<usize> = old[1..].to_vec();
    entries.push(*old.last().unwrap());
    NuDyckPath::from_left_area(Arc::clone(d.nu()), AreaVector(entries))
}

/// Streams every path weakly above ν, ordered lexicographically by left
/// area vector.
pub fn enumerate_nu_dyck(nu: &Arc<Nu>) -> NuDyckIter {
    NuDyckIter { nu: Arc::clone(nu), next: Some(vec![0; nu.rows()]) }
}

pub struct NuDyckIter {
    nu: Arc<Nu>,
    next: Option<Vec<usize>>,
}

impl Iterator for NuDyckIter {
    type Item = NuDyckPath;

    fn next(&mut self) -> Option<NuDyckPath> {
        let la = self.next.take()?;
        let bound = self.nu.left_area().entries();
        // Lexicographic successor: bump the last bumpable entry, then reset
        // the suffix to its minimum (a run of the bumped value).
        let mut succ = la.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < bound[k] {
                succ[k] += 1;
                let v = succ[k];
                for e in succ[k + 1..].iter_mut() {
                    *e = v;
                }
                self.next = Some(succ);
                break;
            }
        }
        let path = NuDyckPath::from_left_area(Arc::clone(&self.nu), AreaVector(la))
            .expect("enumerated area vectors are valid by construction");
        Some(path)
    }
}

/// Cardinality of the set enumerated by [`enumerate_nu_dyck`], by dynamic
/// programming over rows instead of materializing the paths.
pub fn count_nu_dyck(nu: &Nu) -> BigUint {
    let bound = nu.left_area().entries();
    if bound.is_empty() {
        return BigUint::one();
    }
    // f[x] = number of completions of rows k.. whose row-k entry equals x.
    let top = *bound.last().unwrap();
    let mut f = vec![BigUint::one(); top + 1];
    for k in (0..bound.len() - 1).rev() {
        // Suffix-sum the next row, then restrict to this row's bound.
        let mut suffix = vec![BigUint::zero(); bound[k] + 1];
        let mut acc = BigUint::zero();
        let next_bound = f.len() - 1;
        for x in (0..=next_bound).rev() {
            acc += &f[x];
            if x <= bound[k] {
                suffix[x] = acc.clone();
            }
        }
        f = suffix;
    }
    f.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nu(word: &str) -> Arc<Nu> {
        Nu::from_word(word).unwrap()
    }

    fn path(nu: &Arc<Nu>, word: &str) -> NuDyckPath {
        NuDyckPath::new(Arc::clone(nu), parse_path(word).unwrap()).unwrap()
    }

    /// ν and D of the running worked example.
    fn example() -> (Arc<Nu>, NuDyckPath) {
        let nu = nu("EEEENEENENE");
        let d = path(&nu, "EE NEE N NEEEE");
        (nu, d)
    }

    #[test]
    fn parse_counts_and_errors() {
        let p = parse_path("EE NEE N NEEEE").unwrap();
        assert_eq!((p.easts(), p.norths()), (8, 3));
        let p = parse_path("N").unwrap();
        assert_eq!((p.easts(), p.norths()), (0, 1));
        let p = parse_path("EENNENN").unwrap();
        assert_eq!((p.easts(), p.norths()), (3, 4));
        assert_eq!(parse_path("EExN"), Err(Error::InvalidCharacter('x')));
        assert_eq!(parse_path("ne"), Err(Error::InvalidCharacter('n')));
        assert_eq!(parse_path("  "), Err(Error::EmptyWord));
        assert_eq!(parse_path(""), Err(Error::EmptyWord));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<LatticePath>();
        assert_send_sync::<Nu>();
        assert_send_sync::<NuDyckPath>();
        assert_send_sync::<AreaVector>();
    }

    #[test]
    fn left_area_examples() {
        let (nu, d) = example();
        assert_eq!(d.left_area().entries(), &[2, 4, 4]);
        assert_eq!(nu.left_area().entries(), &[4, 6, 7]);
        let ks = parse_path("NNNN").unwrap();
        assert_eq!(left_area_vector(&ks).entries(), &[0, 0, 0, 0]);
    }

    #[test]
    fn right_area_examples() {
        let (_, d) = example();
        assert_eq!(right_area_vector(&d).entries(), &[2, 2, 3]);

        let self_path = NuDyckPath::minimal(Arc::clone(d.nu()));
        assert_eq!(right_area_vector(&self_path).entries(), &[0, 0, 0]);

        let nu = nu("EENNENN");
        let top = NuDyckPath::maximal(Arc::clone(&nu));
        assert_eq!(top.word().to_string(), "NNNNEEE");
        assert_eq!(right_area_vector(&top).entries(), &[2, 2, 3, 3]);
    }

    #[test]
    fn horizontal_distance_vector_matches_worked_example() {
        let (_, d) = example();
        assert_eq!(d.horizontal_distance_vector(), vec![4, 3, 2, 4, 3, 2, 3, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn horizontal_distance_point_queries() {
        let (_, d) = example();
        assert_eq!(d.horizontal_distance(GridPoint::new(2, 1)).unwrap(), 4);
        assert_eq!(d.horizontal_distance(GridPoint::new(8, 3)).unwrap(), 0);
        assert_eq!(d.horizontal_distance(GridPoint::new(7, 3)).unwrap(), 1);
        assert_eq!(
            d.horizontal_distance(GridPoint::new(0, 3)),
            Err(Error::PointNotOnPath(0, 3))
        );
    }

    #[test]
    fn touch_and_hit_points() {
        let (_, d) = example();
        assert_eq!(d.touch_point(1).unwrap().point, GridPoint::new(4, 1));
        assert_eq!(d.touch_point(3).unwrap().point, GridPoint::new(5, 3));
        assert_eq!(d.hit_point(1).unwrap().point, GridPoint::new(6, 3));
        assert_eq!(d.hit_point(3).unwrap().point, GridPoint::new(5, 3));
        assert_eq!(d.touch_point(0), Err(Error::RowOutOfRange { row: 0, rows: 3 }));
        assert_eq!(d.touch_point(4), Err(Error::RowOutOfRange { row: 4, rows: 3 }));
    }

    #[test]
    fn touch_is_next_point_on_flat_boundaries() {
        // Over E^a N^b the boundary never moves east again, so on the
        // bottom path every row has distance 0 and touches at the very
        // next lattice point.
        let nu = nu("EEENNN");
        let d = NuDyckPath::minimal(Arc::clone(&nu));
        for i in 1..=d.rows() {
            let r = d.right_hand_point(i).unwrap();
            assert_eq!(d.nu().horiz(r.point), 0);
            let t = d.touch_point(i).unwrap();
            assert_eq!(t.word_index, r.word_index + 1);
        }
    }

    #[test]
    fn maximal_path_over_distinct_boundary_has_coinciding_touch_and_hit() {
        // Strictly increasing boundary area vector: on the top path every
        // touch point is already a hit point.
        for nu_path in all_paths_up_to(10) {
            let la = left_area_vector(&nu_path);
            if la.len() < 2 || !la.entries().windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            let nu = Nu::shared(nu_path);
            let d = NuDyckPath::maximal(Arc::clone(&nu));
            for i in 1..=d.rows() {
                assert_eq!(d.touch_point(i).unwrap(), d.hit_point(i).unwrap());
            }
        }
    }

    #[test]
    fn from_left_area_round_trip_and_errors() {
        let (nu, _) = example();
        let top = NuDyckPath::from_left_area(Arc::clone(&nu), vec![0, 0, 0].into()).unwrap();
        assert_eq!(top.word().to_string(), "NNNEEEEEEEE");
        let again = NuDyckPath::from_left_area(Arc::clone(&nu), nu.left_area().clone()).unwrap();
        assert_eq!(again.word(), nu.path());

        assert_eq!(
            NuDyckPath::from_left_area(Arc::clone(&nu), vec![2, 1, 4].into()),
            Err(Error::NotWeaklyIncreasing)
        );
        assert_eq!(
            NuDyckPath::from_left_area(Arc::clone(&nu), vec![2, 7, 7].into()),
            Err(Error::AboveViolation(2))
        );

        // The hat-image path of the four-row example.
        let nu4 = super::Nu::from_word("EEEENEENENEN").unwrap();
        let d = NuDyckPath::from_left_area(Arc::clone(&nu4), vec![1, 3, 4, 5].into()).unwrap();
        assert_eq!(d.word().to_string(), "ENEENENENEEE");
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_path(&parse_path("NE").unwrap()).to_string(), "NE");
        assert_eq!(reverse_path(&parse_path("EENNENN").unwrap()).to_string(), "EENEENN");
    }

    #[test]
    fn shift_down_examples() {
        let nu = nu("EEEENNNN");
        let d = NuDyckPath::from_left_area(Arc::clone(&nu), vec![0, 2, 3, 4].into()).unwrap();
        assert_eq!(shift_down(&d).unwrap().left_area().entries(), &[2, 3, 4, 4]);

        let c = NuDyckPath::from_left_area(Arc::clone(&nu), vec![3, 3, 3, 3].into()).unwrap();
        assert_eq!(shift_down(&c).unwrap(), c);

        let one = super::Nu::from_word("EN").unwrap();
        let d1 = NuDyckPath::minimal(Arc::clone(&one));
        assert_eq!(shift_down(&d1).unwrap(), d1);

        // Shifting down can dip below a boundary that rises late.
        let steep = super::Nu::from_word("NNEN").unwrap();
        let top = NuDyckPath::from_left_area(Arc::clone(&steep), vec![0, 0, 1].into()).unwrap();
        assert!(matches!(shift_down(&top), Err(Error::AboveViolation(_))));
    }

    #[test]
    fn enumeration_counts() {
        let nu232 = nu("NEENEENEE");
        assert_eq!(enumerate_nu_dyck(&nu232).count(), 12);
        assert_eq!(count_nu_dyck(&nu232), BigUint::from(12u32));

        let east_only = nu("EEE");
        assert_eq!(enumerate_nu_dyck(&east_only).count(), 1);

        let st3 = Nu::shared(LatticePath::staircase(3));
        assert_eq!(enumerate_nu_dyck(&st3).count(), 5);

        let north_only = nu("NNNN");
        assert_eq!(count_nu_dyck(&north_only), BigUint::one());

        let empty = Nu::shared(LatticePath::empty());
        assert_eq!(enumerate_nu_dyck(&empty).count(), 1);
        assert_eq!(count_nu_dyck(&empty), BigUint::one());
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        let nu = nu("NEENEENEE");
        let las: Vec<Vec<usize>> =
            enumerate_nu_dyck(&nu).map(|d| d.left_area().entries().to_vec()).collect();
        let mut sorted = las.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(las, sorted);
    }

    pub(crate) fn all_paths_up_to(max_steps: usize) -> Vec<LatticePath> {
        let mut out = vec![LatticePath::empty()];
        for len in 1..=max_steps {
            for mask in 0u32..(1 << len) {
                let steps = (0..len)
                    .map(|k| if mask >> k & 1 == 1 { Step::North } else { Step::East })
                    .collect();
                out.push(LatticePath::new(steps));
            }
        }
        out
    }

    #[test]
    fn count_matches_enumeration_and_reversal() {
        for p in all_paths_up_to(8) {
            let n = Nu::new(p.clone());
            let counted = count_nu_dyck(&n);
            let listed = enumerate_nu_dyck(&Arc::new(n)).count();
            assert_eq!(counted, BigUint::from(listed));
            let rev = Nu::new(reverse_path(&p));
            assert_eq!(count_nu_dyck(&rev), counted, "reversal must preserve cardinality");
        }
    }

    #[test]
    fn fuss_catalan_closed_form() {
        // 1/(mn+1) * C((m+1)n, n) for the (NE^m)^n boundary.
        for n in 1..=4usize {
            for m in 1..=4usize {
                let nu = Nu::new(LatticePath::ne_power(n, m));
                let num = crate::verify::binomial((m + 1) * n, n);
                let expect = num / BigUint::from(m * n + 1);
                assert_eq!(count_nu_dyck(&nu), expect, "n={n} m={m}");
            }
        }
    }

    proptest! {
        #[test]
        fn left_area_round_trip(word in proptest::collection::vec(prop::bool::ANY, 0..14)) {
            let steps: Vec<Step> =
                word.iter().map(|b| if *b { Step::North } else { Step::East }).collect();
            let nu = Nu::shared(LatticePath::new(steps));
            for d in enumerate_nu_dyck(&nu) {
                let la = d.left_area().clone();
                let rebuilt = NuDyckPath::from_left_area(Arc::clone(&nu), la.clone()).unwrap();
                prop_assert_eq!(rebuilt.word(), d.word());
                prop_assert_eq!(left_area_vector(d.word()), la);
            }
        }

        #[test]
        fn areas_sum_to_boundary(word in proptest::collection::vec(prop::bool::ANY, 0..12)) {
            let steps: Vec<Step> =
                word.iter().map(|b| if *b { Step::North } else { Step::East }).collect();
            let nu = Nu::shared(LatticePath::new(steps));
            for d in enumerate_nu_dyck(&nu) {
                let ra = right_area_vector(&d);
                for k in 0..d.rows() {
                    prop_assert_eq!(d.left_area()[k] + ra[k], nu.left_area()[k]);
                }
                // Distance vector boundary values.
                let hv = d.horizontal_distance_vector();
                prop_assert_eq!(*hv.last().unwrap(), 0);
                if d.rows() >= 1 {
                    prop_assert_eq!(hv[0], nu.left_area()[0]);
                }
                // Touch comes weakly before hit. A row with distance 0 can
                // only hit the final point (a distance-0 point followed by
                // an east step would dip below the boundary).
                for i in 1..=d.rows() {
                    let t = d.touch_point(i).unwrap();
                    let h = d.hit_point(i).unwrap();
                    prop_assert!(t.word_index <= h.word_index);
                    let r = d.right_hand_point(i).unwrap();
                    if d.nu().horiz(r.point) == 0 {
                        prop_assert_eq!(h.point, GridPoint::new(nu.width(), nu.rows()));
                    } else {
                        // Nonzero distance: the hit point is followed by an
                        // east step exactly when it is not final.
                        let idx = h.word_index;
                        prop_assert!(
                            idx == d.word().len() || d.word().steps()[idx] == Step::East
                        );
                    }
                }
            }
        }

        #[test]
        fn reversal_is_an_involution(word in proptest::collection::vec(prop::bool::ANY, 0..20)) {
            let steps: Vec<Step> =
                word.iter().map(|b| if *b { Step::North } else { Step::East }).collect();
            let p = LatticePath::new(steps);
            prop_assert_eq!(reverse_path(&reverse_path(&p)), p);
        }
    }
}
