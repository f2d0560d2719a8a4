//! Simplicial groups and simplicial group actions.
//!
//! A [`SimplicialGroup`] is a based materialized simplicial set whose
//! degrees carry group structure; all faces and degeneracies must be
//! homomorphisms and the units must form the basepoint tower. Those
//! laws are what [`SimplicialGroup::validate`] checks, exhaustively.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sset::{MaterializedSSet, SimplicialMap};

#[derive(Clone, Debug)]
pub struct SimplicialGroup {
    pub space: MaterializedSSet,
    /// Per degree: row-major multiplication table over simplex ids.
    mult: Vec<Vec<usize>>,
    unit: Vec<usize>,
    inv: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub degree: usize,
    pub detail: String,
}

impl SimplicialGroup {
    pub fn new(
        space: MaterializedSSet,
        mult: Vec<Vec<usize>>,
        unit: Vec<usize>,
        inv: Vec<Vec<usize>>,
    ) -> Self {
        let g = SimplicialGroup {
            space,
            mult,
            unit,
            inv,
        };
        let report = g.validate();
        assert!(
            report.is_empty(),
            "simplicial group laws violated: {:?}",
            report.first()
        );
        g
    }

    pub fn trunc(&self) -> usize {
        self.space.trunc()
    }

    pub fn order(&self, n: usize) -> usize {
        self.space.count(n)
    }

    #[inline]
    pub fn mul(&self, n: usize, a: usize, b: usize) -> usize {
        self.mult[n][a * self.space.count(n) + b]
    }

    pub fn unit(&self, n: usize) -> usize {
        self.unit[n]
    }

    pub fn inverse(&self, n: usize, a: usize) -> usize {
        self.inv[n][a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..=self.trunc()).all(|n| {
            (0..self.order(n))
                .all(|a| (0..self.order(n)).all(|b| self.mul(n, a, b) == self.mul(n, b, a)))
        })
    }

    /// First degree at which commutativity fails, if any.
    pub fn nonabelian_degree(&self) -> Option<usize> {
        (0..=self.trunc()).find(|&n| {
            (0..self.order(n))
                .any(|a| (0..self.order(n)).any(|b| self.mul(n, a, b) != self.mul(n, b, a)))
        })
    }

    /// Exhaustive check of all type invariants: group laws per degree,
    /// homomorphy of every operator, unit tower, basepoint.
    pub fn validate(&self) -> Vec<LawViolation> {
        let mut out = Vec::new();
        let top = self.trunc();
        for n in 0..=top {
            let m = self.order(n);
            assert_eq!(self.mult[n].len(), m * m);
            assert_eq!(self.inv[n].len(), m);
            let e = self.unit[n];
            for a in 0..m {
                if self.mul(n, a, e) != a || self.mul(n, e, a) != a {
                    out.push(LawViolation {
                        law: "unit",
                        degree: n,
                        detail: format!("element {a}"),
                    });
                }
                let ia = self.inverse(n, a);
                if self.mul(n, a, ia) != e || self.mul(n, ia, a) != e {
                    out.push(LawViolation {
                        law: "inverse",
                        degree: n,
                        detail: format!("element {a}"),
                    });
                }
                for b in 0..m {
                    for c in 0..m {
                        if self.mul(n, self.mul(n, a, b), c) != self.mul(n, a, self.mul(n, b, c)) {
                            out.push(LawViolation {
                                law: "associativity",
                                degree: n,
                                detail: format!("({a},{b},{c})"),
                            });
                        }
                    }
                }
            }
        }
        // Operators are homomorphisms and preserve units.
        for n in 1..=top {
            for i in 0..=n {
                if self.space.face(n, i, self.unit[n]) != self.unit[n - 1] {
                    out.push(LawViolation {
                        law: "unit tower (faces)",
                        degree: n,
                        detail: format!("d_{i}"),
                    });
                }
                for a in 0..self.order(n) {
                    for b in 0..self.order(n) {
                        let lhs = self.space.face(n, i, self.mul(n, a, b));
                        let rhs = self.mul(
                            n - 1,
                            self.space.face(n, i, a),
                            self.space.face(n, i, b),
                        );
                        if lhs != rhs {
                            out.push(LawViolation {
                                law: "face homomorphy",
                                degree: n,
                                detail: format!("d_{i} on ({a},{b})"),
                            });
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                if self.space.degen(n, i, self.unit[n]) != self.unit[n + 1] {
                    out.push(LawViolation {
                        law: "unit tower (degeneracies)",
                        degree: n,
                        detail: format!("s_{i}"),
                    });
                }
                for a in 0..self.order(n) {
                    for b in 0..self.order(n) {
                        let lhs = self.space.degen(n, i, self.mul(n, a, b));
                        let rhs = self.mul(
                            n + 1,
                            self.space.degen(n, i, a),
                            self.space.degen(n, i, b),
                        );
                        if lhs != rhs {
                            out.push(LawViolation {
                                law: "degeneracy homomorphy",
                                degree: n,
                                detail: format!("s_{i} on ({a},{b})"),
                            });
                        }
                    }
                }
            }
        }
        match self.space.basepoint() {
            Some(b) if b == self.unit[0] => {}
            _ => out.push(LawViolation {
                law: "basepoint is the unit",
                degree: 0,
                detail: String::new(),
            }),
        }
        out
    }
}

/// The constant simplicial group on a finite group: every degree is G
/// and all operators are the identity.
pub fn constant_group(g: &FiniteGroup, trunc: usize) -> SimplicialGroup {
    let labels: Vec<Vec<String>> = (0..=trunc)
        .map(|_| (0..g.order).map(|a| g.elem_name(a).to_string()).collect())
        .collect();
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = vec![(0..g.order).collect(); n + 1];
    }
    for n in 0..trunc {
        degens[n] = vec![(0..g.order).collect(); n + 1];
    }
    let space = crate::sset::MaterializedSSet::new(trunc, labels, faces, degens, Some(g.identity()));
    let mult_row: Vec<usize> = (0..g.order)
        .flat_map(|a| (0..g.order).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(a, b))
        .collect();
    let inv_row: Vec<usize> = (0..g.order).map(|a| g.inverse(a)).collect();
    SimplicialGroup::new(
        space,
        vec![mult_row; trunc + 1],
        vec![g.identity(); trunc + 1],
        vec![inv_row; trunc + 1],
    )
}

/// A right action of a simplicial group on a simplicial set, as
/// materialized per-degree tables.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    /// `tables[n][x * |K_n| + g]` = x.g
    pub tables: Vec<Vec<usize>>,
}

impl SimplicialAction {
    #[inline]
    pub fn act(&self, n: usize, group_order: usize, x: usize, g: usize) -> usize {
        self.tables[n][x * group_order + g]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionViolation {
    pub law: &'static str,
    pub degree: usize,
    pub detail: String,
}

/// Unit law, associativity, and equivariance of every operator.
pub fn check_action(
    x: &MaterializedSSet,
    k: &SimplicialGroup,
    a: &SimplicialAction,
) -> Vec<ActionViolation> {
    let mut out = Vec::new();
    let top = x.trunc();
    assert_eq!(top, k.trunc());
    for n in 0..=top {
        let m = k.order(n);
        assert_eq!(a.tables[n].len(), x.count(n) * m);
        for id in 0..x.count(n) {
            if a.act(n, m, id, k.unit(n)) != id {
                out.push(ActionViolation {
                    law: "unit",
                    degree: n,
                    detail: format!("x={id}"),
                });
            }
            for g in 0..m {
                for h in 0..m {
                    let lhs = a.act(n, m, a.act(n, m, id, g), h);
                    let rhs = a.act(n, m, id, k.mul(n, g, h));
                    if lhs != rhs {
                        out.push(ActionViolation {
                            law: "associativity",
                            degree: n,
                            detail: format!("x={id}, g={g}, h={h}"),
                        });
                    }
                }
            }
        }
    }
    for n in 1..=top {
        let m = k.order(n);
        for id in 0..x.count(n) {
            for g in 0..m {
                for i in 0..=n {
                    let lhs = x.face(n, i, a.act(n, m, id, g));
                    let rhs = a.act(
                        n - 1,
                        k.order(n - 1),
                        x.face(n, i, id),
                        k.space.face(n, i, g),
                    );
                    if lhs != rhs {
                        out.push(ActionViolation {
                            law: "face equivariance",
                            degree: n,
                            detail: format!("d_{i}, x={id}, g={g}"),
                        });
                    }
                }
            }
        }
    }
    for n in 0..top {
        let m = k.order(n);
        for id in 0..x.count(n) {
            for g in 0..m {
                for i in 0..=n {
                    let lhs = x.degen(n, i, a.act(n, m, id, g));
                    let rhs = a.act(
                        n + 1,
                        k.order(n + 1),
                        x.degen(n, i, id),
                        k.space.degen(n, i, g),
                    );
                    if lhs != rhs {
                        out.push(ActionViolation {
                            law: "degeneracy equivariance",
                            degree: n,
                            detail: format!("s_{i}, x={id}, g={g}"),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessViolation {
    pub degree: usize,
    pub simplex: usize,
    pub stabilizer: usize,
}

/// Empty iff `x.g = x` implies `g = e` in every degree up to `trunc`.
pub fn check_free_action(
    x: &MaterializedSSet,
    k: &SimplicialGroup,
    a: &SimplicialAction,
    trunc: usize,
) -> Vec<FreenessViolation> {
    let mut out = Vec::new();
    for n in 0..=trunc.min(x.trunc()) {
        let m = k.order(n);
        for id in 0..x.count(n) {
            for g in 0..m {
                if g != k.unit(n) && a.act(n, m, id, g) == id {
                    out.push(FreenessViolation {
                        degree: n,
                        simplex: id,
                        stabilizer: g,
                    });
                }
            }
        }
    }
    out
}

/// Right translation of a simplicial group on itself.
pub fn translation_action(k: &SimplicialGroup) -> SimplicialAction {
    let tables = (0..=k.trunc())
        .map(|n| {
            let m = k.order(n);
            let mut t = Vec::with_capacity(m * m);
            for x in 0..m {
                for g in 0..m {
                    t.push(k.mul(n, x, g));
                }
            }
            t
        })
        .collect();
    SimplicialAction { tables }
}

/// Orbit space of an action together with the orbit projection.
/// Operators are induced; equivariance makes them well defined, which
/// is asserted during construction.
pub fn orbit_quotient(
    x: &MaterializedSSet,
    k: &SimplicialGroup,
    a: &SimplicialAction,
) -> Result<(MaterializedSSet, SimplicialMap)> {
    let trunc = x.trunc();
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let m = k.order(n);
        let mut cls = vec![usize::MAX; x.count(n)];
        let mut rep = Vec::new();
        for id in 0..x.count(n) {
            if cls[id] != usize::MAX {
                continue;
            }
            let c = rep.len();
            rep.push(id);
            // Orbits of a group action: saturate from the seed.
            let mut stack = vec![id];
            cls[id] = c;
            while let Some(y) = stack.pop() {
                for g in 0..m {
                    let z = a.act(n, m, y, g);
                    if cls[z] == usize::MAX {
                        cls[z] = c;
                        stack.push(z);
                    } else if cls[z] != c {
                        return Err(Error::Mismatch(
                            "orbit relation is not an equivalence".into(),
                        ));
                    }
                }
            }
        }
        class_of.push(cls);
        reps.push(rep);
    }
    let labels: Vec<Vec<String>> = (0..=trunc)
        .map(|n| {
            reps[n]
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
                let mut table = vec![usize::MAX; reps[n].len()];
                for id in 0..x.count(n) {
                    let c = class_of[n][id];
                    let v = class_of[n - 1][x.face(n, i, id)];
                    if table[c] == usize::MAX {
                        table[c] = v;
                    } else {
                        assert_eq!(table[c], v, "orbit faces not well defined (action not equivariant?)");
                    }
                }
                table
            })
            .collect();
    }
    for n in 0..trunc {
        degens[n] = (0..=n)
            .map(|i| {
                let mut table = vec![usize::MAX; reps[n].len()];
                for id in 0..x.count(n) {
                    let c = class_of[n][id];
                    let v = class_of[n + 1][x.degen(n, i, id)];
                    if table[c] == usize::MAX {
                        table[c] = v;
                    } else {
                        assert_eq!(table[c], v, "orbit degeneracies not well defined");
                    }
                }
                table
            })
            .collect();
    }
    let basepoint = x.basepoint().map(|b| class_of[0][b]);
    let mut space = MaterializedSSet::new(trunc, labels, faces, degens, None);
    if let Some(b) = basepoint {
        space = space.with_basepoint(b);
    }
    let projection = SimplicialMap { degrees: class_of };
    Ok((space, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::point;

    #[test]
    fn constant_groups_validate() {
        let c1 = constant_group(&FiniteGroup::cyclic(1), 3);
        for n in 0..=3 {
            assert_eq!(c1.order(n), 1);
        }
        let c2 = constant_group(&FiniteGroup::cyclic(2), 3);
        for n in 0..=3 {
            assert_eq!(c2.order(n), 2);
        }
        assert!(c2.space.verify_identities().is_empty());
        assert!(c2.validate().is_empty());
        let s3 = constant_group(&FiniteGroup::symmetric3(), 2);
        assert!(s3.validate().is_empty());
        assert!(!s3.is_abelian());
    }

    #[test]
    fn translation_is_free() {
        let k = constant_group(&FiniteGroup::cyclic(3), 2);
        let act = translation_action(&k);
        assert!(check_action(&k.space, &k, &act).is_empty());
        assert!(check_free_action(&k.space, &k, &act, 2).is_empty());
    }

    #[test]
    fn trivial_action_is_not_free() {
        let k = constant_group(&FiniteGroup::cyclic(2), 1);
        let pt = point(1);
        let tables = (0..=1)
            .map(|n| vec![0usize; pt.count(n) * k.order(n)])
            .collect();
        let act = SimplicialAction { tables };
        assert!(check_action(&pt, &k, &act).is_empty());
        let report = check_free_action(&pt, &k, &act, 1);
        assert!(report.iter().any(|v| v.degree == 0));
    }

    #[test]
    fn orbit_quotient_of_translation_is_point() {
        let k = constant_group(&FiniteGroup::symmetric3(), 2);
        let act = translation_action(&k);
        let (q, proj) = orbit_quotient(&k.space, &k, &act).unwrap();
        for n in 0..=2 {
            assert_eq!(q.count(n), 1);
        }
        assert!(proj.check_simplicial(&k.space, &q).is_ok());
    }
}
