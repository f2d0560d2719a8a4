//! Lazy simplicial sets: faces and degeneracies on canonical symbolic
//! encodings, without global enumeration. This is how degreewise
//! infinite objects (Kan groups) are exposed.

use crate::error::Result;
use crate::sset::MaterializedSSet;

pub trait LazySSet {
    /// Canonical encoding: two encodings are equal iff the simplices are.
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn face(&self, n: usize, i: usize, x: &Self::Elem) -> Result<Self::Elem>;
    fn degeneracy(&self, n: usize, i: usize, x: &Self::Elem) -> Result<Self::Elem>;

    /// Per-degree enumerator; absent for degreewise infinite objects.
    fn enumerate(&self, _n: usize) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Checks all five simplicial identities on a finite probe set of
/// degree-`n` elements. Returns human-readable violation descriptions.
pub fn check_identities_on<L: LazySSet>(
    lazy: &L,
    n: usize,
    probes: &[L::Elem],
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for x in probes {
        // d_i d_j = d_{j-1} d_i, i < j (needs n >= 2)
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = lazy.face(n - 1, i, &lazy.face(n, j, x)?)?;
                    let rhs = lazy.face(n - 1, j - 1, &lazy.face(n, i, x)?)?;
                    if lhs != rhs {
                        out.push(format!("d_{i} d_{j} != d_{} d_{i} at degree {n} on {x:?}", j - 1));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i, i <= j
        for j in 0..=n {
            for i in 0..=j {
                let lhs = lazy.degeneracy(n + 1, i, &lazy.degeneracy(n, j, x)?)?;
                let rhs = lazy.degeneracy(n + 1, j + 1, &lazy.degeneracy(n, i, x)?)?;
                if lhs != rhs {
                    out.push(format!("s_{i} s_{j} != s_{} s_{i} at degree {n} on {x:?}", j + 1));
                }
            }
        }
        for j in 0..=n {
            let sx = lazy.degeneracy(n, j, x)?;
            for i in 0..j {
                if n >= 1 {
                    let lhs = lazy.face(n + 1, i, &sx)?;
                    let rhs = lazy.degeneracy(n - 1, j - 1, &lazy.face(n, i, x)?)?;
                    if lhs != rhs {
                        out.push(format!("d_{i} s_{j} != s_{} d_{i} at degree {n} on {x:?}", j - 1));
                    }
                }
            }
            if lazy.face(n + 1, j, &sx)? != *x {
                out.push(format!("d_{j} s_{j} != id at degree {n} on {x:?}"));
            }
            if lazy.face(n + 1, j + 1, &sx)? != *x {
                out.push(format!("d_{} s_{j} != id at degree {n} on {x:?}", j + 1));
            }
            for i in j + 2..=n + 1 {
                if n >= 1 {
                    let lhs = lazy.face(n + 1, i, &sx)?;
                    let rhs = lazy.degeneracy(n - 1, j, &lazy.face(n, i - 1, x)?)?;
                    if lhs != rhs {
                        out.push(format!("d_{i} s_{j} != s_{j} d_{} at degree {n} on {x:?}", i - 1));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Adapter viewing a materialized simplicial set through the lazy
/// interface, mostly for cross-checking the two code paths.
pub struct MaterializedAsLazy<'a>(pub &'a MaterializedSSet);

impl LazySSet for MaterializedAsLazy<'_> {
    type Elem = usize;

    fn face(&self, n: usize, i: usize, x: &usize) -> Result<usize> {
        Ok(self.0.face(n, i, *x))
    }

    fn degeneracy(&self, n: usize, i: usize, x: &usize) -> Result<usize> {
        Ok(self.0.degen(n, i, *x))
    }

    fn enumerate(&self, n: usize) -> Option<Vec<usize>> {
        Some((0..self.0.count(n)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard_simplex;

    #[test]
    fn adapter_agrees_with_checker() {
        let d2 = standard_simplex(2, 4);
        let lazy = MaterializedAsLazy(&d2);
        for n in 0..=2 {
            let probes = lazy.enumerate(n).unwrap();
            let report = check_identities_on(&lazy, n, &probes).unwrap();
            assert!(report.is_empty(), "{report:?}");
        }
    }
}
