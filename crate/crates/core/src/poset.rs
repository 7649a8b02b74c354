//! Finite poset engine: construction from a cover generator, reachability
//! closure, transitive reduction, induced subposets, isomorphism search and
//! order-map verification. Sized for desk-scale posets (thousands of
//! elements); the closure is kept as one bitset row per element.

use std::collections::HashMap;
use std::hash::Hash;

use crate::{Error, Result};

/// Elements above this bound are rejected by the isomorphism search.
pub const ISO_SIZE_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] |= v;
        }
    }

    /// Rows of the transpose: down-sets when `self` stores up-sets.
    fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                if self.get(r, c) {
                    t.set(c, r);
                }
            }
        }
        t
    }

    /// Is `row(a) & other.row(b)` nonempty apart from the skipped indices?
    fn rows_intersect_excluding(
        &self,
        a: usize,
        other: &BitMatrix,
        b: usize,
        skip: (usize, usize),
    ) -> bool {
        let (ra, rb) = (a * self.words, b * other.words);
        for k in 0..self.words {
            let mut w = self.data[ra + k] & other.data[rb + k];
            if w != 0 {
                for s in [skip.0, skip.1] {
                    if s / 64 == k {
                        w &= !(1 << (s % 64));
                    }
                }
                if w != 0 {
                    return true;
                }
            }
        }
        false
    }
}

/// A finite poset over keys of type `K`. `covers` holds the generating
/// relation it was built from; `order` is its reflexive-transitive closure.
#[derive(Debug, Clone)]
pub struct FinitePoset<K> {
    elements: Vec<K>,
    index: HashMap<K, usize>,
    covers: Vec<(usize, usize)>,
    order: BitMatrix,
}

impl<K: Clone + Eq + Hash + Ord> FinitePoset<K> {
    /// Builds the poset on `elements` with cover edges generated by
    /// `cover_fn` (mapping an element to the elements covering it).
    pub fn build<F>(elements: Vec<K>, mut cover_fn: F) -> Result<Self>
    where
        F: FnMut(&K) -> Vec<K>,
    {
        let mut edges = Vec::new();
        for (k, e) in elements.iter().enumerate() {
            for up in cover_fn(e) {
                edges.push((k, up));
            }
        }
        let index: HashMap<K, usize> =
            elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let mut resolved = Vec::with_capacity(edges.len());
        for (lo, up) in edges {
            let hi = *index.get(&up).ok_or(Error::ElementNotInPoset)?;
            resolved.push((lo, hi));
        }
        Self::from_cover_edges_indexed(elements, index, resolved)
    }

    /// Builds from explicit cover edges given as element pairs.
    pub fn from_cover_edges(elements: Vec<K>, edges: &[(K, K)]) -> Result<Self> {
        let index: HashMap<K, usize> =
            elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let mut resolved = Vec::with_capacity(edges.len());
        for (lo, up) in edges {
            let l = *index.get(lo).ok_or(Error::ElementNotInPoset)?;
            let h = *index.get(up).ok_or(Error::ElementNotInPoset)?;
            resolved.push((l, h));
        }
        Self::from_cover_edges_indexed(elements, index, resolved)
    }

    fn from_cover_edges_indexed(
        elements: Vec<K>,
        index: HashMap<K, usize>,
        mut covers: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = elements.len();
        covers.sort_unstable();
        covers.dedup();

        // Topological order via Kahn; a leftover node means a cycle.
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(lo, hi) in &covers {
            if lo == hi {
                return Err(Error::CycleDetected);
            }
            out[lo].push(hi);
            indeg[hi] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&k| indeg[k] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            topo.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CycleDetected);
        }

        // Closure: process in reverse topological order, OR-ing successors.
        let mut order = BitMatrix::new(n);
        for &v in topo.iter().rev() {
            order.set(v, v);
            let ups = std::mem::take(&mut out[v]);
            for &w in &ups {
                order.or_row_into(w, v);
            }
            out[v] = ups;
        }

        Ok(FinitePoset { elements, index, covers, order })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &K {
        &self.elements[k]
    }

    pub fn index_of(&self, e: &K) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The generating cover edges as `(lower, upper)` index pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn le_idx(&self, a: usize, b: usize) -> bool {
        self.order.get(a, b)
    }

    pub fn le(&self, a: &K, b: &K) -> Result<bool> {
        let (a, b) = (
            self.index_of(a).ok_or(Error::ElementNotInPoset)?,
            self.index_of(b).ok_or(Error::ElementNotInPoset)?,
        );
        Ok(self.le_idx(a, b))
    }

    /// Covers of the order itself: strict pairs with nothing strictly
    /// between. Independent of the generating edges.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let down = self.order.transpose();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.order.get(a, b)
                    && !self.order.rows_intersect_excluding(a, &down, b, (a, b))
                {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when the generating edges are exactly the order's covers.
    pub fn is_hasse(&self) -> bool {
        let mut given = self.covers.clone();
        given.sort_unstable();
        given == self.transitive_reduction()
    }

    /// The order turned upside down: same elements, reversed covers and
    /// reversed order matrix.
    pub fn opposite(&self) -> FinitePoset<K> {
        let covers = self.covers.iter().map(|&(lo, hi)| (hi, lo)).collect::<Vec<_>>();
        let mut covers = covers;
        covers.sort_unstable();
        FinitePoset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            covers,
            order: self.order.transpose(),
        }
    }

    /// Induced subposet on `keep`; covers are recomputed as the transitive
    /// reduction of the restricted order.
    pub fn restrict(&self, keep: &[K]) -> Result<FinitePoset<K>> {
        let mut kept: Vec<usize> = Vec::with_capacity(keep.len());
        for e in keep {
            kept.push(self.index_of(e).ok_or(Error::ElementNotInPoset)?);
        }
        kept.sort_unstable();
        kept.dedup();
        let n = kept.len();
        let mut order = BitMatrix::new(n);
        for (a, &ia) in kept.iter().enumerate() {
            for (b, &ib) in kept.iter().enumerate() {
                if self.order.get(ia, ib) {
                    order.set(a, b);
                }
            }
        }
        let elements: Vec<K> = kept.iter().map(|&k| self.elements[k].clone()).collect();
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let mut sub = FinitePoset { elements, index, covers: Vec::new(), order };
        sub.covers = sub.transitive_reduction();
        Ok(sub)
    }

    fn cover_adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let reduction = self.transitive_reduction();
        let mut up = vec![Vec::new(); self.len()];
        let mut down = vec![Vec::new(); self.len()];
        for (lo, hi) in reduction {
            up[lo].push(hi);
            down[hi].push(lo);
        }
        (up, down)
    }

    /// Levels: longest cover-chain distance from the minimal elements.
    pub fn levels(&self) -> Vec<usize> {
        let (up, down) = self.cover_adjacency();
        let n = self.len();
        let mut level = vec![0usize; n];
        let mut indeg: Vec<usize> = down.iter().map(|d| d.len()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&k| indeg[k] == 0).collect();
        while let Some(v) = stack.pop() {
            for &w in &up[v] {
                level[w] = level[w].max(level[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        level
    }

    /// Searches for a cover-preserving bijection onto `other`, which for
    /// posets is exactly an order isomorphism. Returns the image index of
    /// each element, or `None` when the posets are not isomorphic.
    pub fn is_isomorphic<L: Clone + Eq + Hash + Ord>(
        &self,
        other: &FinitePoset<L>,
    ) -> Result<Option<Vec<usize>>> {
        let n = self.len();
        if n > ISO_SIZE_CAP || other.len() > ISO_SIZE_CAP {
            return Err(Error::SizeCapExceeded { size: n.max(other.len()), cap: ISO_SIZE_CAP });
        }
        if n != other.len() {
            return Ok(None);
        }
        if n == 0 {
            return Ok(Some(Vec::new()));
        }

        let (up_a, down_a) = self.cover_adjacency();
        let (up_b, down_b) = other.cover_adjacency();
        if up_a.iter().map(Vec::len).sum::<usize>() != up_b.iter().map(Vec::len).sum::<usize>() {
            return Ok(None);
        }

        // Iterated refinement of vertex colors, seeded with
        // (level, indegree, outdegree) and refined by neighbor colors.
        // Class ids come from one table shared by both posets so colors
        // stay comparable across them.
        let seed = |levels: &[usize], up: &[Vec<usize>], down: &[Vec<usize>]| -> Vec<u64> {
            (0..levels.len())
                .map(|k| pack3(levels[k], down[k].len(), up[k].len()))
                .collect()
        };
        let mut col_a = seed(&self.levels(), &up_a, &down_a);
        let mut col_b = seed(&other.levels(), &up_b, &down_b);
        if sorted(&col_a) != sorted(&col_b) {
            return Ok(None);
        }
        for _ in 0..n {
            match refine_pair(&col_a, &up_a, &down_a, &col_b, &up_b, &down_b) {
                None => return Ok(None),
                Some((na, nb)) => {
                    let stable = partition_eq(&col_a, &na);
                    col_a = na;
                    col_b = nb;
                    if stable {
                        break;
                    }
                }
            }
        }

        // Backtracking match, rarest color first.
        let mut freq: HashMap<u64, usize> = HashMap::new();
        for &c in &col_a {
            *freq.entry(c).or_default() += 1;
        }
        let mut vertex_order: Vec<usize> = (0..n).collect();
        vertex_order.sort_by_key(|&v| (freq[&col_a[v]], col_a[v], v));

        let mut map = vec![usize::MAX; n];
        let mut inv = vec![usize::MAX; n];
        let ok = match_next(
            0,
            &vertex_order,
            &mut map,
            &mut inv,
            &col_a,
            &col_b,
            &up_a,
            &down_a,
            &up_b,
            &down_b,
        );
        Ok(if ok { Some(map) } else { None })
    }

    /// Checks that `map` is a bijection with `x <= y` iff `map(x) <= map(y)`.
    /// Returns the first violating pair if any.
    pub fn verify_order_iso<L, F>(
        &self,
        other: &FinitePoset<L>,
        mut map: F,
    ) -> Result<Option<(K, K)>>
    where
        L: Clone + Eq + Hash + Ord,
        F: FnMut(&K) -> L,
    {
        if self.len() != other.len() {
            return Err(Error::MapNotBijective);
        }
        let mut image = Vec::with_capacity(self.len());
        let mut seen = vec![false; other.len()];
        for e in &self.elements {
            let im = map(e);
            let k = other.index_of(&im).ok_or(Error::MapNotBijective)?;
            if seen[k] {
                return Err(Error::MapNotBijective);
            }
            seen[k] = true;
            image.push(k);
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.le_idx(a, b) != other.le_idx(image[a], image[b]) {
                    return Ok(Some((self.elements[a].clone(), self.elements[b].clone())));
                }
            }
        }
        Ok(None)
    }

    /// Deterministic DOT rendering: nodes in element order, one rank group
    /// per level, edges from the stored covers.
    pub fn to_dot<F>(&self, name: &str, mut label: F) -> String
    where
        F: FnMut(&K) -> String,
    {
        use std::fmt::Write;
        let mut s = String::new();
        let levels = self.levels();
        writeln!(s, "digraph {name} {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        for (k, e) in self.elements.iter().enumerate() {
            writeln!(s, "  v{k} [label=\"{}\"];", label(e)).unwrap();
        }
        let max_level = levels.iter().copied().max().unwrap_or(0);
        for lvl in 0..=max_level {
            let group: Vec<String> =
                (0..self.len()).filter(|&k| levels[k] == lvl).map(|k| format!("v{k}")).collect();
            if group.len() > 1 {
                writeln!(s, "  {{ rank=same; {}; }}", group.join("; ")).unwrap();
            }
        }
        let mut edges = self.covers.clone();
        edges.sort_unstable();
        for (lo, hi) in edges {
            writeln!(s, "  v{lo} -> v{hi};").unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

fn pack3(a: usize, b: usize, c: usize) -> u64 {
    (a as u64) << 42 ^ (b as u64) << 21 ^ c as u64
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

type Sig = (u64, Vec<u64>, Vec<u64>);

fn signatures(col: &[u64], up: &[Vec<usize>], down: &[Vec<usize>]) -> Vec<Sig> {
    (0..col.len())
        .map(|v| {
            let mut u: Vec<u64> = up[v].iter().map(|&w| col[w]).collect();
            let mut d: Vec<u64> = down[v].iter().map(|&w| col[w]).collect();
            u.sort_unstable();
            d.sort_unstable();
            (col[v], u, d)
        })
        .collect()
}

/// One round of color refinement over both cover digraphs at once; `None`
/// when the refined color multisets diverge.
fn refine_pair(
    col_a: &[u64],
    up_a: &[Vec<usize>],
    down_a: &[Vec<usize>],
    col_b: &[u64],
    up_b: &[Vec<usize>],
    down_b: &[Vec<usize>],
) -> Option<(Vec<u64>, Vec<u64>)> {
    let sa = signatures(col_a, up_a, down_a);
    let sb = signatures(col_b, up_b, down_b);
    let mut uniq: Vec<&Sig> = sa.iter().chain(sb.iter()).collect();
    uniq.sort();
    uniq.dedup();
    let class = |s: &Sig| uniq.binary_search(&s).unwrap() as u64;
    let na: Vec<u64> = sa.iter().map(class).collect();
    let nb: Vec<u64> = sb.iter().map(class).collect();
    if sorted(&na) != sorted(&nb) {
        return None;
    }
    Some((na, nb))
}

/// Refinement only ever splits classes, so the partition is unchanged
/// exactly when the number of classes is.
fn partition_eq(old: &[u64], new: &[u64]) -> bool {
    class_count(old) == class_count(new)
}

fn class_count(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

#[allow(clippy::too_many_arguments)]
fn match_next(
    pos: usize,
    order: &[usize],
    map: &mut [usize],
    inv: &mut [usize],
    col_a: &[u64],
    col_b: &[u64],
    up_a: &[Vec<usize>],
    down_a: &[Vec<usize>],
    up_b: &[Vec<usize>],
    down_b: &[Vec<usize>],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    'cand: for w in 0..col_b.len() {
        if inv[w] != usize::MAX || col_b[w] != col_a[v] {
            continue;
        }
        if up_a[v].len() != up_b[w].len() || down_a[v].len() != down_b[w].len() {
            continue;
        }
        // Every already-mapped cover neighbor must map consistently.
        for &x in &up_a[v] {
            if map[x] != usize::MAX && !up_b[w].contains(&map[x]) {
                continue 'cand;
            }
        }
        for &x in &down_a[v] {
            if map[x] != usize::MAX && !down_b[w].contains(&map[x]) {
                continue 'cand;
            }
        }
        // And mapped neighbors of w must pull back to neighbors of v.
        for &y in &up_b[w] {
            if inv[y] != usize::MAX && !up_a[v].contains(&inv[y]) {
                continue 'cand;
            }
        }
        for &y in &down_b[w] {
            if inv[y] != usize::MAX && !down_a[v].contains(&inv[y]) {
                continue 'cand;
            }
        }
        map[v] = w;
        inv[w] = v;
        if match_next(pos + 1, order, map, inv, col_a, col_b, up_a, down_a, up_b, down_b) {
            return true;
        }
        map[v] = usize::MAX;
        inv[w] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset<usize> {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|k| (k, k + 1)).collect();
        FinitePoset::from_cover_edges((0..n).collect(), &edges).unwrap()
    }

    #[test]
    fn closure_and_reduction_roundtrip() {
        // Diamond with an extra transitive edge: reduction drops it.
        let p = FinitePoset::from_cover_edges(
            vec![0usize, 1, 2, 3],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
        )
        .unwrap();
        assert!(p.le(&0, &3).unwrap());
        assert!(!p.le(&1, &2).unwrap());
        assert_eq!(p.transitive_reduction(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(!p.is_hasse());

        let q = FinitePoset::from_cover_edges(
            vec![0usize, 1, 2, 3],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(q.is_hasse());
    }

    #[test]
    fn cycle_detection() {
        let r = FinitePoset::from_cover_edges(vec![0usize, 1], &[(0, 1), (1, 0)]);
        assert_eq!(r.unwrap_err(), Error::CycleDetected);
        let r = FinitePoset::build(vec![0usize, 1, 2], |&k| vec![(k + 1) % 3]);
        assert_eq!(r.unwrap_err(), Error::CycleDetected);
    }

    #[test]
    fn build_from_cover_generator() {
        // Divisibility on 1..=8; covers of k are k times a prime.
        let p = FinitePoset::build((1usize..=8).collect(), |&k| {
            [2usize, 3, 5, 7].iter().map(|q| k * q).filter(|&j| j <= 8).collect()
        })
        .unwrap();
        assert!(p.le(&2, &8).unwrap());
        assert!(!p.le(&3, &8).unwrap());
        assert!(p.is_hasse());
        let single = FinitePoset::build(vec![42usize], |_| Vec::new()).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.covers().is_empty());
        let missing = FinitePoset::build(vec![1usize], |_| vec![9]);
        assert_eq!(missing.unwrap_err(), Error::ElementNotInPoset);
    }

    #[test]
    fn restriction_is_induced() {
        // 0 < 1 < 3 and 0 < 2 < 3; restricting to {0,3} creates a new cover.
        let p = FinitePoset::from_cover_edges(
            vec![0usize, 1, 2, 3],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let s = p.restrict(&[0, 3]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.covers(), &[(0, 1)]);
        assert!(s.le(&0, &3).unwrap());

        assert_eq!(p.restrict(&[]).unwrap().len(), 0);
        let all = p.restrict(&[0, 1, 2, 3]).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.is_hasse());
        assert_eq!(p.restrict(&[7]).unwrap_err(), Error::ElementNotInPoset);

        // Nested restriction agrees with direct restriction.
        let ab = p.restrict(&[0, 1, 3]).unwrap();
        let nested = ab.restrict(&[0, 3]).unwrap();
        assert_eq!(nested.covers(), s.covers());
        assert_eq!(nested.elements(), s.elements());
    }

    #[test]
    fn isomorphism_finds_relabellings() {
        let p = FinitePoset::from_cover_edges(
            vec!["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let q = FinitePoset::from_cover_edges(
            vec![10usize, 11, 12, 13],
            &[(12, 11), (12, 10), (11, 13), (10, 13)],
        )
        .unwrap();
        let map = p.is_isomorphic(&q).unwrap().expect("diamonds are isomorphic");
        // Verify the found mapping is an order isomorphism, and that the
        // search is symmetric.
        let viol = p
            .verify_order_iso(&q, |e| {
                let k = p.index_of(e).unwrap();
                *q.element(map[k])
            })
            .unwrap();
        assert_eq!(viol, None);
        assert!(q.is_isomorphic(&p).unwrap().is_some());

        let c = chain(4);
        assert!(p.is_isomorphic(&c).unwrap().is_none());
        assert!(c.is_isomorphic(&chain(4)).unwrap().is_some());
    }

    #[test]
    fn order_iso_verifier_reports_violations() {
        let c4 = chain(4);
        let viol = c4.verify_order_iso(&chain(4), |&k| 3 - k).unwrap();
        assert!(viol.is_some());
        let id = c4.verify_order_iso(&chain(4), |&k| k).unwrap();
        assert_eq!(id, None);
        assert_eq!(
            c4.verify_order_iso(&chain(4), |_| 0).unwrap_err(),
            Error::MapNotBijective
        );
    }

    #[test]
    fn isomorphism_search_enforces_its_size_cap() {
        let big = chain(ISO_SIZE_CAP + 1);
        let err = big.is_isomorphic(&chain(ISO_SIZE_CAP + 1)).unwrap_err();
        assert_eq!(err, Error::SizeCapExceeded { size: ISO_SIZE_CAP + 1, cap: ISO_SIZE_CAP });
    }

    #[test]
    fn dot_output_is_deterministic() {
        let p = FinitePoset::from_cover_edges(vec![0usize, 1, 2], &[(0, 1), (0, 2)]).unwrap();
        let dot = p.to_dot("t", |k| k.to_string());
        assert!(dot.contains("v0 -> v1;"));
        assert!(dot.contains("rank=same"));
        assert_eq!(dot, p.to_dot("t", |k| k.to_string()));
    }
}
