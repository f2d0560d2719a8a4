//! Truncated simplicial sets, materialized degree by degree.
//!
//! A [`MaterializedSSet`] stores *every* simplex (degenerate ones
//! included) in each degree up to a truncation bound, together with
//! full face and degeneracy tables. Non-degeneracy is computed, not
//! stored. All construction outputs use dense ids starting at 0 per
//! degree, and every constructor is deterministic, so serialized
//! output is stable across runs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A simplicial set with all data materialized up to a truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaterializedSSet {
    trunc: usize,
    /// Per degree `n` in `0..=trunc`: display labels, one per simplex.
    labels: Vec<Vec<String>>,
    /// `faces[n][i][id]`, defined for `1 <= n <= trunc`, `0 <= i <= n`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][id]`, defined for `0 <= n < trunc`, `0 <= i <= n`.
    degens: Vec<Vec<Vec<usize>>>,
    basepoint: Option<usize>,
}

/// One failed simplicial identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub degree: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: usize,
}

impl std::fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at degree {} (i={}, j={}) on simplex {}",
            self.identity, self.degree, self.i, self.j, self.simplex
        )
    }
}

impl MaterializedSSet {
    /// Assembles a simplicial set from raw tables, checking shapes only
    /// (use [`MaterializedSSet::verify_identities`] for the laws).
    pub fn new(
        trunc: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        basepoint: Option<usize>,
    ) -> Self {
        assert_eq!(labels.len(), trunc + 1, "one label vector per degree");
        assert_eq!(faces.len(), trunc + 1);
        assert_eq!(degens.len(), trunc + 1);
        assert!(faces[0].is_empty(), "no faces out of degree 0");
        for n in 1..=trunc {
            assert_eq!(faces[n].len(), n + 1, "face indices 0..=n at degree {n}");
            for (i, table) in faces[n].iter().enumerate() {
                assert_eq!(table.len(), labels[n].len());
                assert!(
                    table.iter().all(|&t| t < labels[n - 1].len()),
                    "face d_{i} lands outside degree {}",
                    n - 1
                );
            }
        }
        for n in 0..=trunc {
            if n < trunc {
                assert_eq!(degens[n].len(), n + 1, "degeneracy indices 0..=n at degree {n}");
                for (i, table) in degens[n].iter().enumerate() {
                    assert_eq!(table.len(), labels[n].len());
                    assert!(
                        table.iter().all(|&t| t < labels[n + 1].len()),
                        "degeneracy s_{i} lands outside degree {}",
                        n + 1
                    );
                }
            } else {
                assert!(degens[n].is_empty(), "no degeneracies out of the top degree");
            }
        }
        if let Some(b) = basepoint {
            assert!(b < labels[0].len(), "basepoint must be a vertex id");
        }
        MaterializedSSet {
            trunc,
            labels,
            faces,
            degens,
            basepoint,
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn label(&self, n: usize, id: usize) -> &str {
        &self.labels[n][id]
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, id: usize) -> usize {
        self.faces[n][i][id]
    }

    #[inline]
    pub fn degen(&self, n: usize, i: usize, id: usize) -> usize {
        self.degens[n][i][id]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn is_based(&self) -> bool {
        self.basepoint.is_some()
    }

    pub fn with_basepoint(mut self, id: usize) -> Self {
        assert!(id < self.count(0));
        self.basepoint = Some(id);
        self
    }

    /// The degenerate tower of a vertex: its unique degeneracy in each degree.
    pub fn vertex_tower(&self, vertex: usize) -> Vec<usize> {
        let mut tower = Vec::with_capacity(self.trunc + 1);
        tower.push(vertex);
        for n in 0..self.trunc {
            let prev = tower[n];
            tower.push(self.degen(n, 0, prev));
        }
        tower
    }

    /// Basepoint tower, one id per degree.
    pub fn basepoint_tower(&self) -> Result<Vec<usize>> {
        let b = self.basepoint.ok_or(Error::NotBased)?;
        Ok(self.vertex_tower(b))
    }

    /// Degeneracy test: `x` of degree `n >= 1` is degenerate iff
    /// `s_i(d_{i+1} x) = x` for some `i`.
    pub fn is_degenerate(&self, n: usize, id: usize) -> bool {
        if n == 0 {
            return false;
        }
        (0..n).any(|i| self.degen(n - 1, i, self.face(n, i + 1, id)) == id)
    }

    pub fn nondegenerate_ids(&self, n: usize) -> Vec<usize> {
        (0..self.count(n))
            .filter(|&id| !self.is_degenerate(n, id))
            .collect()
    }

    /// Checks all five simplicial identities everywhere both sides are
    /// defined within the truncation. Empty report means all hold.
    pub fn verify_identities(&self) -> Vec<IdentityViolation> {
        let mut out = Vec::new();
        let top = self.trunc;
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..=top {
            for x in 0..self.count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, i, self.face(n, j, x));
                        let rhs = self.face(n - 1, j - 1, self.face(n, i, x));
                        if lhs != rhs {
                            out.push(IdentityViolation {
                                identity: "d_i d_j = d_{j-1} d_i",
                                degree: n,
                                i,
                                j,
                                simplex: x,
                            });
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..top.saturating_sub(1) {
            for x in 0..self.count(n) {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degen(n + 1, i, self.degen(n, j, x));
                        let rhs = self.degen(n + 1, j + 1, self.degen(n, i, x));
                        if lhs != rhs {
                            out.push(IdentityViolation {
                                identity: "s_i s_j = s_{j+1} s_i",
                                degree: n,
                                i,
                                j,
                                simplex: x,
                            });
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for x in 0..self.count(n) {
                for j in 0..=n {
                    let sx = self.degen(n, j, x);
                    // d_i s_j = s_{j-1} d_i for i < j (needs n >= 1)
                    for i in 0..j {
                        if n >= 1 {
                            let lhs = self.face(n + 1, i, sx);
                            let rhs = self.degen(n - 1, j - 1, self.face(n, i, x));
                            if lhs != rhs {
                                out.push(IdentityViolation {
                                    identity: "d_i s_j = s_{j-1} d_i",
                                    degree: n,
                                    i,
                                    j,
                                    simplex: x,
                                });
                            }
                        }
                    }
                    // d_j s_j = id = d_{j+1} s_j
                    if self.face(n + 1, j, sx) != x {
                        out.push(IdentityViolation {
                            identity: "d_j s_j = id",
                            degree: n,
                            i: j,
                            j,
                            simplex: x,
                        });
                    }
                    if self.face(n + 1, j + 1, sx) != x {
                        out.push(IdentityViolation {
                            identity: "d_{j+1} s_j = id",
                            degree: n,
                            i: j + 1,
                            j,
                            simplex: x,
                        });
                    }
                    // d_i s_j = s_j d_{i-1} for i > j + 1 (needs n >= 1)
                    for i in j + 2..=n + 1 {
                        if n >= 1 {
                            let lhs = self.face(n + 1, i, sx);
                            let rhs = self.degen(n - 1, j, self.face(n, i - 1, x));
                            if lhs != rhs {
                                out.push(IdentityViolation {
                                    identity: "d_i s_j = s_j d_{i-1}",
                                    degree: n,
                                    i,
                                    j,
                                    simplex: x,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Canonical Eilenberg-Zilber form: a strictly decreasing degeneracy
/// word applied to a non-degenerate base simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexRef {
    pub base_degree: usize,
    pub base: usize,
    /// Strictly decreasing degeneracy indices; empty for a
    /// non-degenerate simplex.
    pub degword: Vec<usize>,
}

/// Unique normal form of a simplex as a degeneracy word on a
/// non-degenerate base.
pub fn normalize_nondegenerate(x: &MaterializedSSet, n: usize, id: usize) -> SimplexRef {
    // Peel the smallest degeneracy witness, then merge the index into
    // the strictly decreasing word via s_i s_j = s_{j+1} s_i.
    let mut degree = n;
    let mut cur = id;
    let mut word: Vec<usize> = Vec::new();
    'peel: while degree >= 1 {
        for i in 0..degree {
            let y = x.face(degree, i + 1, cur);
            if x.degen(degree - 1, i, y) == cur {
                // cur = s_i y, so s_i is the innermost degeneracy found
                // so far. Move it leftwards through the word with
                // s_j s_i = s_{i+1} s_j (j <= i) until strictly
                // decreasing.
                let mut cur_i = i;
                let mut pos = word.len();
                while pos > 0 && word[pos - 1] <= cur_i {
                    cur_i += 1;
                    pos -= 1;
                }
                word.insert(pos, cur_i);
                debug_assert!(word.windows(2).all(|w| w[0] > w[1]));
                degree -= 1;
                cur = y;
                continue 'peel;
            }
        }
        break;
    }
    SimplexRef {
        base_degree: degree,
        base: cur,
        degword: word,
    }
}

/// Applies a strictly decreasing degeneracy word to a base simplex.
pub fn apply_degword(x: &MaterializedSSet, base_degree: usize, base: usize, word: &[usize]) -> usize {
    let mut cur = base;
    let mut degree = base_degree;
    for &i in word.iter().rev() {
        cur = x.degen(degree, i, cur);
        degree += 1;
    }
    cur
}

/// A per-degree function on simplex ids between two simplicial sets of
/// equal truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub degrees: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &MaterializedSSet) -> Self {
        SimplicialMap {
            degrees: (0..=x.trunc()).map(|n| (0..x.count(n)).collect()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, n: usize, id: usize) -> usize {
        self.degrees[n][id]
    }

    pub fn compose(&self, then: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            degrees: self
                .degrees
                .iter()
                .enumerate()
                .map(|(n, table)| table.iter().map(|&v| then.degrees[n][v]).collect())
                .collect(),
        }
    }

    /// Commutes with every face and degeneracy table; returns the
    /// first obstruction as text.
    pub fn check_simplicial(
        &self,
        from: &MaterializedSSet,
        to: &MaterializedSSet,
    ) -> std::result::Result<(), String> {
        if from.trunc() != to.trunc() {
            return Err("truncation mismatch".into());
        }
        if self.degrees.len() != from.trunc() + 1 {
            return Err("degree table count mismatch".into());
        }
        for n in 0..=from.trunc() {
            if self.degrees[n].len() != from.count(n) {
                return Err(format!("degree {n}: table size mismatch"));
            }
            if let Some(&bad) = self.degrees[n].iter().find(|&&v| v >= to.count(n)) {
                return Err(format!("degree {n}: image {bad} out of range"));
            }
        }
        for n in 1..=from.trunc() {
            for id in 0..from.count(n) {
                for i in 0..=n {
                    let lhs = self.apply(n - 1, from.face(n, i, id));
                    let rhs = to.face(n, i, self.apply(n, id));
                    if lhs != rhs {
                        return Err(format!(
                            "does not commute with d_{i} at degree {n}, simplex {id}"
                        ));
                    }
                }
            }
        }
        for n in 0..from.trunc() {
            for id in 0..from.count(n) {
                for i in 0..=n {
                    let lhs = self.apply(n + 1, from.degen(n, i, id));
                    let rhs = to.degen(n, i, self.apply(n, id));
                    if lhs != rhs {
                        return Err(format!(
                            "does not commute with s_{i} at degree {n}, simplex {id}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn preserves_basepoint(&self, from: &MaterializedSSet, to: &MaterializedSSet) -> bool {
        match (from.basepoint(), to.basepoint()) {
            (Some(a), Some(b)) => self.apply(0, a) == b,
            _ => true,
        }
    }

    pub fn is_injective(&self) -> std::result::Result<(), Error> {
        for (n, table) in self.degrees.iter().enumerate() {
            let mut seen = BTreeMap::new();
            for (id, &v) in table.iter().enumerate() {
                if let Some(&prev) = seen.get(&v) {
                    return Err(Error::NotInjective {
                        degree: n,
                        a: prev,
                        b: id,
                    });
                }
                seen.insert(v, id);
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, to: &MaterializedSSet) -> bool {
        self.is_injective().is_ok()
            && self
                .degrees
                .iter()
                .enumerate()
                .all(|(n, table)| table.len() == to.count(n))
    }
}

/// The standard n-simplex, truncated: degree-k simplices are monotone
/// maps `[k] -> [n]`, faces and degeneracies precompose with the
/// coface and codegeneracy operators.
pub fn standard_simplex(n: usize, trunc: usize) -> MaterializedSSet {
    // Monotone sequences of length k+1 with values in 0..=n, in
    // lexicographic order.
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(trunc + 1);
    for k in 0..=trunc {
        let mut level = Vec::new();
        let mut seq = vec![0usize; k + 1];
        loop {
            level.push(seq.clone());
            // Lexicographic successor: bump the rightmost entry that can
            // grow and reset the tail to the new value.
            match (0..=k).rev().find(|&p| seq[p] < n) {
                None => break,
                Some(p) => {
                    let v = seq[p] + 1;
                    for slot in seq.iter_mut().skip(p) {
                        *slot = v;
                    }
                }
            }
        }
        simplices.push(level);
    }
    let index: Vec<BTreeMap<Vec<usize>, usize>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();
    let labels: Vec<Vec<String>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| {
                    let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
                    format!("({})", inner.join(","))
                })
                .collect()
        })
        .collect();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); trunc + 1];
    let mut degens: Vec<Vec<Vec<usize>>> = vec![Vec::new(); trunc + 1];
    for k in 1..=trunc {
        faces[k] = (0..=k)
            .map(|i| {
                simplices[k]
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.remove(i);
                        index[k - 1][&t]
                    })
                    .collect()
            })
            .collect();
    }
    for k in 0..trunc {
        degens[k] = (0..=k)
            .map(|i| {
                simplices[k]
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.insert(i, s[i]);
                        index[k + 1][&t]
                    })
                    .collect()
            })
            .collect();
    }
    MaterializedSSet::new(trunc, labels, faces, degens, None)
}

/// The simplicial point: one simplex in every degree, based.
pub fn point(trunc: usize) -> MaterializedSSet {
    standard_simplex(0, trunc).with_basepoint(0)
}

/// The discrete simplicial set on `k` vertices: every degree has `k`
/// simplices (the vertex towers) and all operators are the identity.
pub fn discrete(k: usize, trunc: usize) -> MaterializedSSet {
    let labels = (0..=trunc)
        .map(|_| (0..k).map(|v| format!("p{v}")).collect())
        .collect();
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = vec![(0..k).collect(); n + 1];
    }
    for n in 0..trunc {
        degens[n] = vec![(0..k).collect(); n + 1];
    }
    MaterializedSSet::new(trunc, labels, faces, degens, None)
}

/// Degreewise product with diagonal operators.
pub struct ProductSpace {
    pub space: MaterializedSSet,
    left_counts: Vec<usize>,
    right_counts: Vec<usize>,
}

impl ProductSpace {
    #[inline]
    pub fn pair(&self, n: usize, x: usize, y: usize) -> usize {
        debug_assert!(x < self.left_counts[n] && y < self.right_counts[n]);
        x * self.right_counts[n] + y
    }

    #[inline]
    pub fn split(&self, n: usize, id: usize) -> (usize, usize) {
        (id / self.right_counts[n], id % self.right_counts[n])
    }
}

pub fn product(x: &MaterializedSSet, y: &MaterializedSSet) -> Result<ProductSpace> {
    if x.trunc() != y.trunc() {
        return Err(Error::TruncationMismatch {
            left: x.trunc(),
            right: y.trunc(),
        });
    }
    let trunc = x.trunc();
    let left_counts: Vec<usize> = (0..=trunc).map(|n| x.count(n)).collect();
    let right_counts: Vec<usize> = (0..=trunc).map(|n| y.count(n)).collect();
    let labels: Vec<Vec<String>> = (0..=trunc)
        .map(|n| {
            let mut level = Vec::with_capacity(x.count(n) * y.count(n));
            for a in 0..x.count(n) {
                for b in 0..y.count(n) {
                    level.push(format!("({},{})", x.label(n, a), y.label(n, b)));
                }
            }
            level
        })
        .collect();
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = (0..=n)
            .map(|i| {
                let mut table = Vec::with_capacity(x.count(n) * y.count(n));
                for a in 0..x.count(n) {
                    for b in 0..y.count(n) {
                        table.push(x.face(n, i, a) * right_counts[n - 1] + y.face(n, i, b));
                    }
                }
                table
            })
            .collect();
    }
    for n in 0..trunc {
        degens[n] = (0..=n)
            .map(|i| {
                let mut table = Vec::with_capacity(x.count(n) * y.count(n));
                for a in 0..x.count(n) {
                    for b in 0..y.count(n) {
                        table.push(x.degen(n, i, a) * right_counts[n + 1] + y.degen(n, i, b));
                    }
                }
                table
            })
            .collect();
    }
    let basepoint = match (x.basepoint(), y.basepoint()) {
        (Some(a), Some(b)) => Some(a * right_counts[0] + b),
        _ => None,
    };
    Ok(ProductSpace {
        space: MaterializedSSet::new(trunc, labels, faces, degens, basepoint),
        left_counts,
        right_counts,
    })
}

/// A subcomplex, as per-degree membership masks.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &MaterializedSSet) -> Self {
        Subcomplex {
            members: (0..=x.trunc()).map(|n| vec![false; x.count(n)]).collect(),
        }
    }

    pub fn full(x: &MaterializedSSet) -> Self {
        Subcomplex {
            members: (0..=x.trunc()).map(|n| vec![true; x.count(n)]).collect(),
        }
    }

    /// The smallest subcomplex containing the seeds.
    pub fn generated(x: &MaterializedSSet, seeds: &[(usize, usize)]) -> Self {
        let mut members: Vec<Vec<bool>> =
            (0..=x.trunc()).map(|n| vec![false; x.count(n)]).collect();
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((n, id)) = stack.pop() {
            if members[n][id] {
                continue;
            }
            members[n][id] = true;
            if n >= 1 {
                for i in 0..=n {
                    stack.push((n - 1, x.face(n, i, id)));
                }
            }
            if n < x.trunc() {
                for i in 0..=n {
                    stack.push((n + 1, x.degen(n, i, id)));
                }
            }
        }
        Subcomplex { members }
    }

    pub fn contains(&self, n: usize, id: usize) -> bool {
        self.members[n][id]
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|m| m.iter().all(|&b| !b))
    }

    /// Closure under faces and degeneracies.
    pub fn validate(&self, x: &MaterializedSSet) -> Result<()> {
        for n in 0..=x.trunc() {
            for id in 0..x.count(n) {
                if !self.members[n][id] {
                    continue;
                }
                if n >= 1 {
                    for i in 0..=n {
                        if !self.members[n - 1][x.face(n, i, id)] {
                            return Err(Error::NotSubcomplex {
                                op: "face",
                                degree: n,
                                id,
                            });
                        }
                    }
                }
                if n < x.trunc() {
                    for i in 0..=n {
                        if !self.members[n + 1][x.degen(n, i, id)] {
                            return Err(Error::NotSubcomplex {
                                op: "degeneracy",
                                degree: n,
                                id,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root id wins, for deterministic representatives.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Quotient data shared by collapse and pushout: per-degree class
/// structure over an id space.
struct Classes {
    /// member id -> class id (dense, ordered by smallest member).
    class_of: Vec<usize>,
    /// class id -> representative (smallest member id).
    reps: Vec<usize>,
}

fn classes_from(mut uf: UnionFind) -> Classes {
    let n = uf.parent.len();
    let mut reps: Vec<usize> = (0..n).filter(|&i| uf.find(i) == i).collect();
    reps.sort_unstable();
    let mut class_index = BTreeMap::new();
    for (c, &r) in reps.iter().enumerate() {
        class_index.insert(r, c);
    }
    let class_of = (0..n).map(|i| class_index[&uf.find(i)]).collect();
    Classes { class_of, reps }
}

/// Result of collapsing a subcomplex to the basepoint.
pub struct Quotient {
    pub space: MaterializedSSet,
    /// Projection X -> X/A.
    pub projection: SimplicialMap,
}

/// Collapses a non-empty subcomplex `A` of `X` to a single basepoint
/// tower. Operators are induced; the result is based at the collapsed
/// class.
pub fn quotient_collapse(x: &MaterializedSSet, a: &Subcomplex) -> Result<Quotient> {
    a.validate(x)?;
    if a.is_empty() {
        return Err(Error::Unsupported(
            "cannot collapse an empty subcomplex".into(),
        ));
    }
    let trunc = x.trunc();
    let mut classes: Vec<Classes> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut uf = UnionFind::new(x.count(n));
        let mut in_a = (0..x.count(n)).filter(|&id| a.contains(n, id));
        if let Some(first) = in_a.next() {
            for other in in_a {
                uf.union(first, other);
            }
        }
        classes.push(classes_from(uf));
    }
    // A non-empty subcomplex has members in every degree (it contains a
    // vertex tower), so the basepoint class exists everywhere.
    let bp_class = (0..x.count(0))
        .find(|&id| a.contains(0, id))
        .map(|id| classes[0].class_of[id])
        .expect("non-empty subcomplex has a vertex");
    let space = induce_quotient_space(x, &classes)?;
    let projection = SimplicialMap {
        degrees: classes.iter().map(|c| c.class_of.clone()).collect(),
    };
    Ok(Quotient {
        space: space.with_basepoint(bp_class),
        projection,
    })
}

/// Builds the quotient simplicial set for a per-degree class structure,
/// checking that operators are well defined on classes.
fn induce_quotient_space(x: &MaterializedSSet, classes: &[Classes]) -> Result<MaterializedSSet> {
    let trunc = x.trunc();
    let labels: Vec<Vec<String>> = (0..=trunc)
        .map(|n| {
            classes[n]
                .reps
                .iter()
                .map(|&r| x.label(n, r).to_string())
                .collect()
        })
        .collect();
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = (0..=n)
            .map(|i| {
                let mut table = vec![usize::MAX; classes[n].reps.len()];
                for id in 0..x.count(n) {
                    let c = classes[n].class_of[id];
                    let v = classes[n - 1].class_of[x.face(n, i, id)];
                    if table[c] == usize::MAX {
                        table[c] = v;
                    } else {
                        assert_eq!(
                            table[c], v,
                            "face d_{i} not well defined on quotient classes at degree {n}"
                        );
                    }
                }
                table
            })
            .collect();
    }
    for n in 0..trunc {
        degens[n] = (0..=n)
            .map(|i| {
                let mut table = vec![usize::MAX; classes[n].reps.len()];
                for id in 0..x.count(n) {
                    let c = classes[n].class_of[id];
                    let v = classes[n + 1].class_of[x.degen(n, i, id)];
                    if table[c] == usize::MAX {
                        table[c] = v;
                    } else {
                        assert_eq!(
                            table[c], v,
                            "degeneracy s_{i} not well defined on quotient classes at degree {n}"
                        );
                    }
                }
                table
            })
            .collect();
    }
    Ok(MaterializedSSet::new(trunc, labels, faces, degens, None))
}

/// Degreewise set pushout of `B <-f- A -g-> C` along an injective `f`.
pub struct Pushout {
    pub space: MaterializedSSet,
    pub leg_left: SimplicialMap,
    pub leg_right: SimplicialMap,
}

/// Pushout of based simplicial sets; `f` must be degreewise injective.
/// The combined id space per degree is `B`'s ids followed by `C`'s ids,
/// glued by `f(a) ~ g(a)` via union-find; representatives are the
/// smallest combined id.
pub fn pushout(
    f: &SimplicialMap,
    g: &SimplicialMap,
    a: &MaterializedSSet,
    b: &MaterializedSSet,
    c: &MaterializedSSet,
) -> Result<Pushout> {
    f.check_simplicial(a, b).map_err(Error::NotSimplicial)?;
    g.check_simplicial(a, c).map_err(Error::NotSimplicial)?;
    f.is_injective()?;
    let trunc = a.trunc();
    let mut classes = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let total = b.count(n) + c.count(n);
        let mut uf = UnionFind::new(total);
        for id in 0..a.count(n) {
            uf.union(f.apply(n, id), b.count(n) + g.apply(n, id));
        }
        classes.push(classes_from(uf));
    }
    // Build a synthetic "disjoint union" view to reuse the quotient
    // machinery directly.
    let labels: Vec<Vec<String>> = (0..=trunc)
        .map(|n| {
            classes[n]
                .reps
                .iter()
                .map(|&r| {
                    if r < b.count(n) {
                        b.label(n, r).to_string()
                    } else {
                        c.label(n, r - b.count(n)).to_string()
                    }
                })
                .collect()
        })
        .collect();
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = (0..=n)
            .map(|i| {
                let mut table = vec![usize::MAX; classes[n].reps.len()];
                for id in 0..(b.count(n) + c.count(n)) {
                    let cls = classes[n].class_of[id];
                    let image = if id < b.count(n) {
                        classes[n - 1].class_of[b.face(n, i, id)]
                    } else {
                        classes[n - 1].class_of[b.count(n - 1) + c.face(n, i, id - b.count(n))]
                    };
                    if table[cls] == usize::MAX {
                        table[cls] = image;
                    } else {
                        assert_eq!(table[cls], image, "pushout face not well defined");
                    }
                }
                table
            })
            .collect();
    }
    for n in 0..trunc {
        degens[n] = (0..=n)
            .map(|i| {
                let mut table = vec![usize::MAX; classes[n].reps.len()];
                for id in 0..(b.count(n) + c.count(n)) {
                    let cls = classes[n].class_of[id];
                    let image = if id < b.count(n) {
                        classes[n + 1].class_of[b.degen(n, i, id)]
                    } else {
                        classes[n + 1].class_of[b.count(n + 1) + c.degen(n, i, id - b.count(n))]
                    };
                    if table[cls] == usize::MAX {
                        table[cls] = image;
                    } else {
                        assert_eq!(table[cls], image, "pushout degeneracy not well defined");
                    }
                }
                table
            })
            .collect();
    }
    let leg_left = SimplicialMap {
        degrees: (0..=trunc)
            .map(|n| (0..b.count(n)).map(|id| classes[n].class_of[id]).collect())
            .collect(),
    };
    let leg_right = SimplicialMap {
        degrees: (0..=trunc)
            .map(|n| {
                (0..c.count(n))
                    .map(|id| classes[n].class_of[b.count(n) + id])
                    .collect()
            })
            .collect(),
    };
    let basepoint = match (b.basepoint(), c.basepoint()) {
        (Some(bb), _) => Some(leg_left.apply(0, bb)),
        (None, Some(cb)) => Some(leg_right.apply(0, cb)),
        (None, None) => None,
    };
    if let (Some(bb), Some(cb)) = (b.basepoint(), c.basepoint()) {
        assert_eq!(
            leg_left.apply(0, bb),
            leg_right.apply(0, cb),
            "based pushout must identify the basepoints"
        );
    }
    let mut space = MaterializedSSet::new(trunc, labels, faces, degens, None);
    if let Some(bp) = basepoint {
        space = space.with_basepoint(bp);
    }
    Ok(Pushout {
        space,
        leg_left,
        leg_right,
    })
}

/// Returns the first stage index at which the chain has stabilized in
/// every degree, verified by comparing consecutive stages.
pub fn directed_colimit(
    stages: &[MaterializedSSet],
    maps: &[SimplicialMap],
) -> Result<(usize, MaterializedSSet)> {
    assert_eq!(maps.len() + 1, stages.len(), "one map between consecutive stages");
    for (k, map) in maps.iter().enumerate() {
        map.check_simplicial(&stages[k], &stages[k + 1])
            .map_err(Error::NotSimplicial)?;
        map.is_injective()?;
    }
    for k in 0..maps.len() {
        if maps[k].is_bijective(&stages[k + 1]) {
            return Ok((k, stages[k].clone()));
        }
    }
    Err(Error::NotStabilized {
        stages: stages.len(),
    })
}

/// The simplicial circle, i.e. the interval with its endpoints glued.
pub fn circle(trunc: usize) -> MaterializedSSet {
    let interval = standard_simplex(1, trunc);
    // Boundary: the two vertex towers (0,...,0) and (1,...,1).
    let v0 = 0usize;
    let v1 = interval.count(0) - 1;
    let boundary = Subcomplex::generated(&interval, &[(0, v0), (0, v1)]);
    quotient_collapse(&interval, &boundary)
        .expect("boundary of the interval is a subcomplex")
        .space
}

#[derive(Serialize)]
struct DegreeDoc<'a> {
    n: usize,
    count: usize,
    labels: &'a [String],
}

#[derive(Serialize)]
struct SSetDoc<'a> {
    trunc: usize,
    degrees: Vec<DegreeDoc<'a>>,
    faces: Vec<[usize; 4]>,
    degens: Vec<[usize; 4]>,
    basepoint: Option<usize>,
}

/// Serializes to the canonical JSON document; entries are listed in
/// lexicographic `[n, i, from, to]` order so output is bit-exact
/// across runs.
pub fn to_json(x: &MaterializedSSet) -> String {
    let degrees = (0..=x.trunc())
        .map(|n| DegreeDoc {
            n,
            count: x.count(n),
            labels: &x.labels[n],
        })
        .collect();
    let mut faces = Vec::new();
    for n in 1..=x.trunc() {
        for i in 0..=n {
            for id in 0..x.count(n) {
                faces.push([n, i, id, x.face(n, i, id)]);
            }
        }
    }
    let mut degens = Vec::new();
    for n in 0..x.trunc() {
        for i in 0..=n {
            for id in 0..x.count(n) {
                degens.push([n, i, id, x.degen(n, i, id)]);
            }
        }
    }
    let doc = SSetDoc {
        trunc: x.trunc(),
        degrees,
        faces,
        degens,
        basepoint: x.basepoint(),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d0 = standard_simplex(0, 2);
        assert_eq!((0..=2).map(|n| d0.count(n)).collect::<Vec<_>>(), vec![1, 1, 1]);
        let d1 = standard_simplex(1, 1);
        assert_eq!(d1.count(1), 3);
        assert_eq!(
            (0..d1.count(1)).map(|i| d1.label(1, i)).collect::<Vec<_>>(),
            vec!["(0,0)", "(0,1)", "(1,1)"]
        );
    }

    #[test]
    fn standard_simplex_identities() {
        let d2 = standard_simplex(2, 3);
        assert!(d2.verify_identities().is_empty());
    }

    #[test]
    fn face_omits_vertex() {
        // face i of the top simplex (0,1,...,n) omits vertex i
        let n = 3;
        let dn = standard_simplex(n, n);
        let top = (0..dn.count(n))
            .find(|&id| dn.label(n, id) == "(0,1,2,3)")
            .unwrap();
        for i in 0..=n {
            let f = dn.face(n, i, top);
            let expect: Vec<String> = (0..=n).filter(|&v| v != i).map(|v| v.to_string()).collect();
            assert_eq!(dn.label(n - 1, f), format!("({})", expect.join(",")));
        }
    }

    #[test]
    fn planted_defect_is_reported() {
        let mut x = standard_simplex(1, 1);
        // Break d_0 s_0 = id at degree 0 by rewiring d_0 out of degree 1.
        let s0_of_v0 = x.degen(0, 0, 0);
        x.faces[1][0][s0_of_v0] = 1 - x.faces[1][0][s0_of_v0];
        let report = x.verify_identities();
        assert!(!report.is_empty());
        assert!(report.iter().any(|v| v.identity.contains("s_j")));
    }

    #[test]
    fn product_counts_and_unit() {
        let d1 = standard_simplex(1, 1);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.space.count(1), 9);
        assert!(p.space.verify_identities().is_empty());

        let pt = point(1);
        let xp = product(&d1, &pt).unwrap();
        for n in 0..=1 {
            assert_eq!(xp.space.count(n), d1.count(n));
        }
    }

    #[test]
    fn product_nondegenerate_squares() {
        let d1 = standard_simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.space.nondegenerate_ids(2).len(), 2);
    }

    #[test]
    fn normalize_roundtrip() {
        let d1 = standard_simplex(1, 3);
        for n in 0..=3 {
            for id in 0..d1.count(n) {
                let r = normalize_nondegenerate(&d1, n, id);
                assert!(!d1.is_degenerate(r.base_degree, r.base));
                assert!(r.degword.windows(2).all(|w| w[0] > w[1]));
                assert_eq!(apply_degword(&d1, r.base_degree, r.base, &r.degword), id);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let pt = point(2);
        // s_1 s_0 (v) has canonical word [1, 0]
        let v = 0;
        let s0 = pt.degen(0, 0, v);
        let s1s0 = pt.degen(1, 1, s0);
        let r = normalize_nondegenerate(&pt, 2, s1s0);
        assert_eq!(r.degword, vec![1, 0]);
        assert_eq!(r.base, v);
        assert_eq!(r.base_degree, 0);
    }

    #[test]
    fn circle_counts() {
        let s1 = circle(3);
        assert_eq!(s1.count(0), 1);
        assert_eq!(s1.count(1), 2);
        assert_eq!(s1.nondegenerate_ids(0).len(), 1);
        assert_eq!(s1.nondegenerate_ids(1).len(), 1);
        assert_eq!(s1.nondegenerate_ids(2).len(), 0);
        assert!(s1.verify_identities().is_empty());
        assert!(s1.is_based());
    }

    #[test]
    fn collapse_whole_space_is_point() {
        let d2 = standard_simplex(2, 2);
        let q = quotient_collapse(&d2, &Subcomplex::full(&d2)).unwrap();
        for n in 0..=2 {
            assert_eq!(q.space.count(n), 1);
        }
    }

    #[test]
    fn collapse_basepoint_tower_is_identity() {
        let s1 = circle(2);
        let bp = s1.basepoint().unwrap();
        let a = Subcomplex::generated(&s1, &[(0, bp)]);
        let q = quotient_collapse(&s1, &a).unwrap();
        for n in 0..=2 {
            assert_eq!(q.space.count(n), s1.count(n));
        }
        assert!(q
            .projection
            .check_simplicial(&s1, &q.space)
            .is_ok());
    }

    #[test]
    fn pushout_of_identity_legs() {
        let s1 = circle(2);
        let id = SimplicialMap::identity(&s1);
        let p = pushout(&id, &id, &s1, &s1, &s1).unwrap();
        for n in 0..=2 {
            assert_eq!(p.space.count(n), s1.count(n));
        }
        assert!(p.space.verify_identities().is_empty());
    }

    #[test]
    fn pushout_matches_quotient() {
        // Collapsing A inside B to a point = pushout along A -> point.
        let b = standard_simplex(1, 2);
        let a_sub = Subcomplex::generated(&b, &[(0, 0)]);
        // Build A as a standalone point mapped into B.
        let pt = point(2);
        let tower = b.vertex_tower(0);
        let f = SimplicialMap {
            degrees: tower.iter().map(|&t| vec![t]).collect(),
        };
        let g = SimplicialMap::identity(&pt);
        let p = pushout(&f, &g, &pt, &b, &pt).unwrap();
        let q = quotient_collapse(&b, &a_sub).unwrap();
        for n in 0..=2 {
            assert_eq!(p.space.count(n), q.space.count(n));
        }
    }

    #[test]
    fn colimit_constant_chain() {
        let s1 = circle(2);
        let stages = vec![s1.clone(), s1.clone()];
        let maps = vec![SimplicialMap::identity(&s1)];
        let (k, space) = directed_colimit(&stages, &maps).unwrap();
        assert_eq!(k, 0);
        assert_eq!(space.count(1), s1.count(1));
    }

    #[test]
    fn colimit_unstabilized_chain_errors() {
        let stages: Vec<MaterializedSSet> = (1..=3).map(|k| discrete(k, 1)).collect();
        let maps: Vec<SimplicialMap> = (1..3)
            .map(|k| SimplicialMap {
                degrees: vec![(0..k).collect(), (0..k).collect()],
            })
            .collect();
        match directed_colimit(&stages, &maps) {
            Err(Error::NotStabilized { .. }) => {}
            other => panic!("expected stabilization error, got {other:?}"),
        }
    }

    #[test]
    fn json_is_stable() {
        let d1 = standard_simplex(1, 1);
        let a = to_json(&d1);
        let b = to_json(&d1);
        assert_eq!(a, b);
        assert!(a.contains("\"trunc\": 1"));
    }
}
