//! The economical simplicial cone: an (n+1)-simplex serves as a cone
//! on an n-simplex.
//!
//! The unreduced cone on X has, in degree n, a copy of X_m at height
//! i = n - m for every m, plus one apex simplex of height n + 1.
//! Operators act on the X-part for indices up to dim x and shift the
//! height beyond. The reduced cone collapses the cone over the
//! basepoint tower. The unit embeds X at height 0; the multiplication
//! adds heights, and these make the reduced cone a monad whose
//! algebras are the conical contractions.

use crate::error::{Error, Result};
use crate::sset::{
    quotient_collapse, MaterializedSSet, SimplicialMap, Subcomplex,
};

/// What a simplex of a reduced cone is: the collapsed class, or a pair
/// (x, height) with x not in the basepoint tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMember {
    Star,
    At { height: usize, x: usize },
}

/// Unreduced cone, with the block layout of its id space.
pub struct UnreducedCone {
    pub space: MaterializedSSet,
    /// `offsets[n][i]` = first id of the block X_{n-i} x {i}; the apex
    /// (o, n+1) is the last id in degree n.
    offsets: Vec<Vec<usize>>,
}

impl UnreducedCone {
    /// Id of (x, i) in cone degree `x_degree + i`.
    pub fn pair_id(&self, height: usize, x_degree: usize, x: usize) -> usize {
        self.offsets[x_degree + height][height] + x
    }

    pub fn apex_id(&self, n: usize) -> usize {
        self.space.count(n) - 1
    }
}

/// Builds the unreduced cone at the same truncation as X.
pub fn unreduced_cone(x: &MaterializedSSet) -> UnreducedCone {
    let trunc = x.trunc();
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut level_offsets = Vec::with_capacity(n + 2);
        let mut level_labels = Vec::new();
        for i in 0..=n {
            level_offsets.push(level_labels.len());
            let m = n - i;
            for id in 0..x.count(m) {
                level_labels.push(format!("({},{i})", x.label(m, id)));
            }
        }
        // the apex (o, n+1)
        level_labels.push(format!("(o,{})", n + 1));
        offsets.push(level_offsets);
        labels.push(level_labels);
    }
    let mut faces = vec![Vec::new(); trunc + 1];
    let mut degens = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        faces[n] = (0..=n)
            .map(|j| {
                let mut table = Vec::with_capacity(labels[n].len());
                for i in 0..=n {
                    let m = n - i;
                    for id in 0..x.count(m) {
                        let target = if j <= m {
                            if m >= 1 {
                                offsets[n - 1][i] + x.face(m, j, id)
                            } else {
                                // x is a vertex: d_j x is the formal (-1)-simplex o,
                                // so the face is the apex (o, i) in degree i - 1.
                                debug_assert_eq!(j, 0);
                                labels[n - 1].len() - 1
                            }
                        } else {
                            offsets[n - 1][i - 1] + id
                        };
                        table.push(target);
                    }
                }
                // apex (o, n+1): every face is (o, n)
                table.push(labels[n - 1].len() - 1);
                table
            })
            .collect();
    }
    for n in 0..trunc {
        degens[n] = (0..=n)
            .map(|j| {
                let mut table = Vec::with_capacity(labels[n].len());
                for i in 0..=n {
                    let m = n - i;
                    for id in 0..x.count(m) {
                        let target = if j <= m {
                            offsets[n + 1][i] + x.degen(m, j, id)
                        } else {
                            offsets[n + 1][i + 1] + id
                        };
                        table.push(target);
                    }
                }
                // apex (o, n+1) -> (o, n+2)
                table.push(labels[n + 1].len() - 1);
                table
            })
            .collect();
    }
    let space = MaterializedSSet::new(trunc, labels, faces, degens, None);
    UnreducedCone { space, offsets }
}

/// The reduced cone on a based simplicial set, with the bookkeeping
/// needed to treat it as a monad.
pub struct ConeSpace {
    pub base: MaterializedSSet,
    pub space: MaterializedSSet,
    /// Per cone degree, per cone id.
    members: Vec<Vec<ConeMember>>,
    /// `class[n][i][x]` = cone id of the class of (x, i), x of degree n - i.
    class: Vec<Vec<Vec<usize>>>,
}

impl ConeSpace {
    pub fn member(&self, n: usize, id: usize) -> ConeMember {
        self.members[n][id]
    }

    /// Cone id of the class of (x, height); basepoint-tower pairs and
    /// the apex all land on the star class.
    pub fn class_of(&self, height: usize, x_degree: usize, x: usize) -> usize {
        self.class[x_degree + height][height][x]
    }

    pub fn star(&self, n: usize) -> usize {
        self.space
            .basepoint_tower()
            .expect("reduced cones are based")[n]
    }

    /// The unit X -> CX, x at height 0.
    pub fn unit_map(&self) -> SimplicialMap {
        SimplicialMap {
            degrees: (0..=self.base.trunc())
                .map(|n| (0..self.base.count(n)).map(|x| self.class_of(0, n, x)).collect())
                .collect(),
        }
    }
}

/// Reduced cone CX = unreduced cone / cone on the basepoint tower.
pub fn reduced_cone(x: &MaterializedSSet) -> Result<ConeSpace> {
    let tower = x.basepoint_tower()?;
    let hat = unreduced_cone(x);
    let trunc = x.trunc();
    // The collapsed subcomplex: all (tower_m, i) plus the apex tower.
    let mut members: Vec<Vec<bool>> = (0..=trunc)
        .map(|n| vec![false; hat.space.count(n)])
        .collect();
    for n in 0..=trunc {
        for i in 0..=n {
            members[n][hat.pair_id(i, n - i, tower[n - i])] = true;
        }
        members[n][hat.apex_id(n)] = true;
    }
    let sub = Subcomplex { members };
    sub.validate(&hat.space)?;
    let q = quotient_collapse(&hat.space, &sub)?;
    let star_tower = q.space.basepoint_tower()?;
    let mut cone_members: Vec<Vec<ConeMember>> = (0..=trunc)
        .map(|n| vec![ConeMember::Star; q.space.count(n)])
        .collect();
    let mut class: Vec<Vec<Vec<usize>>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut per_height = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let m = n - i;
            let mut table = Vec::with_capacity(x.count(m));
            for id in 0..x.count(m) {
                let image = q.projection.apply(n, hat.pair_id(i, m, id));
                table.push(image);
                if image != star_tower[n] {
                    cone_members[n][image] = ConeMember::At { height: i, x: id };
                }
            }
            per_height.push(table);
        }
        class.push(per_height);
    }
    Ok(ConeSpace {
        base: x.clone(),
        space: q.space,
        members: cone_members,
        class,
    })
}

/// Functoriality: C(f) : CX -> CY for a based simplicial map f.
pub fn cone_functor_map(f: &SimplicialMap, cx: &ConeSpace, cy: &ConeSpace) -> SimplicialMap {
    let trunc = cx.space.trunc();
    SimplicialMap {
        degrees: (0..=trunc)
            .map(|n| {
                (0..cx.space.count(n))
                    .map(|id| match cx.member(n, id) {
                        ConeMember::Star => cy.star(n),
                        ConeMember::At { height, x } => {
                            cy.class_of(height, n - height, f.apply(n - height, x))
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

/// The monad multiplication CCX -> CX, adding heights.
pub fn cone_mult(cx: &ConeSpace, ccx: &ConeSpace) -> SimplicialMap {
    let trunc = cx.space.trunc();
    SimplicialMap {
        degrees: (0..=trunc)
            .map(|n| {
                (0..ccx.space.count(n))
                    .map(|id| match ccx.member(n, id) {
                        ConeMember::Star => cx.star(n),
                        ConeMember::At { height: j, x: y } => {
                            match cx.member(n - j, y) {
                                // (star, j) classes were collapsed in CCX already.
                                ConeMember::Star => cx.star(n),
                                ConeMember::At { height: i, x } => {
                                    cx.class_of(i + j, n - j - i, x)
                                }
                            }
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

/// A contraction: a based simplicial map CX -> X restricting to the
/// identity along the unit.
pub struct Contraction {
    pub cone: ConeSpace,
    pub map: SimplicialMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicalViolation {
    pub degree: usize,
    pub simplex: usize,
}

impl Contraction {
    /// Simpliciality, basepoint preservation, and `psi . eta = id`.
    pub fn validate(&self) -> Result<()> {
        self.map
            .check_simplicial(&self.cone.space, &self.cone.base)
            .map_err(Error::NotSimplicial)?;
        if !self.map.preserves_basepoint(&self.cone.space, &self.cone.base) {
            return Err(Error::NotSimplicial("contraction must be based".into()));
        }
        let eta = self.cone.unit_map();
        let round = eta.compose(&self.map);
        let id = SimplicialMap::identity(&self.cone.base);
        if round != id {
            return Err(Error::Mismatch("psi . eta != id".into()));
        }
        Ok(())
    }

    /// Empty iff `psi . C(psi) = psi . mu` degreewise.
    pub fn check_conical(&self) -> Result<Vec<ConicalViolation>> {
        let cx = &self.cone;
        let ccx = reduced_cone(&cx.space)?;
        let c_psi = cone_functor_map(&self.map, &ccx, cx);
        let mu = cone_mult(cx, &ccx);
        let lhs = c_psi.compose(&self.map);
        let rhs = mu.compose(&self.map);
        let mut out = Vec::new();
        for n in 0..=cx.space.trunc() {
            for id in 0..ccx.space.count(n) {
                if lhs.apply(n, id) != rhs.apply(n, id) {
                    out.push(ConicalViolation {
                        degree: n,
                        simplex: id,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// The multiplication itself is a conical contraction of CX.
pub fn mult_contraction(x: &MaterializedSSet) -> Result<Contraction> {
    let cx = reduced_cone(x)?;
    let ccx = reduced_cone(&cx.space)?;
    let map = cone_mult(&cx, &ccx);
    Ok(Contraction {
        cone: ConeSpace {
            base: cx.space.clone(),
            space: ccx.space.clone(),
            members: ccx.members,
            class: ccx.class,
        },
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{circle, point, standard_simplex};

    #[test]
    fn cone_of_point_is_interval() {
        let pt = point(2);
        let hat = unreduced_cone(&pt);
        assert!(hat.space.verify_identities().is_empty());
        assert_eq!(hat.space.count(0), 2);
        assert_eq!(hat.space.nondegenerate_ids(1).len(), 1);
    }

    #[test]
    fn apex_formulas() {
        let s1 = circle(3);
        let hat = unreduced_cone(&s1);
        for n in 1..=3 {
            for j in 0..=n {
                assert_eq!(hat.space.face(n, j, hat.apex_id(n)), hat.apex_id(n - 1));
            }
        }
        for n in 0..3 {
            for j in 0..=n {
                assert_eq!(hat.space.degen(n, j, hat.apex_id(n)), hat.apex_id(n + 1));
            }
        }
    }

    #[test]
    fn reduced_cone_of_point_is_point() {
        let pt = point(2);
        let c = reduced_cone(&pt).unwrap();
        for n in 0..=2 {
            assert_eq!(c.space.count(n), 1);
        }
    }

    #[test]
    fn reduced_cone_nondegenerate_count() {
        // Non-star non-degenerate simplices are (x,0) and (x,1) for x
        // non-degenerate outside the basepoint tower; only the base
        // vertex itself is a non-degenerate tower element, so degree 1
        // loses exactly one pair (bp, 1) to the collapse.
        for x in [circle(3), standard_simplex(2, 3).with_basepoint(0)] {
            let c = reduced_cone(&x).unwrap();
            assert!(c.space.verify_identities().is_empty());
            for n in 1..=3 {
                let nd = c.space.nondegenerate_ids(n);
                let star = c.star(n);
                let nd_not_star = nd.iter().filter(|&&id| id != star).count();
                let expect = x.nondegenerate_ids(n).len() + x.nondegenerate_ids(n - 1).len()
                    - usize::from(n == 1);
                assert_eq!(nd_not_star, expect, "degree {n}");
            }
        }
        // The documented instance: CS^1 has one non-degenerate 2-simplex.
        let c = reduced_cone(&circle(3)).unwrap();
        let star = c.star(2);
        assert_eq!(
            c.space
                .nondegenerate_ids(2)
                .iter()
                .filter(|&&id| id != star)
                .count(),
            1
        );
    }

    #[test]
    fn monad_unit_laws() {
        let s1 = circle(3);
        let cx = reduced_cone(&s1).unwrap();
        let ccx = reduced_cone(&cx.space).unwrap();
        let mu = cone_mult(&cx, &ccx);
        // mu . eta_{CX} = id
        let eta_cx = ccx.unit_map();
        assert_eq!(eta_cx.compose(&mu), SimplicialMap::identity(&cx.space));
        // mu . C(eta) = id
        let eta = cx.unit_map();
        let c_eta = cone_functor_map(&eta, &cx, &ccx);
        assert_eq!(c_eta.compose(&mu), SimplicialMap::identity(&cx.space));
    }

    #[test]
    fn monad_associativity_on_circle() {
        let s1 = circle(3);
        let cx = reduced_cone(&s1).unwrap();
        let ccx = reduced_cone(&cx.space).unwrap();
        let cccx = reduced_cone(&ccx.space).unwrap();
        let mu = cone_mult(&cx, &ccx);
        let mu_c = cone_mult(&ccx, &cccx);
        let c_mu = cone_functor_map(&mu, &cccx, &ccx);
        // mu . mu_{CX} = mu . C(mu) : CCCX -> CX
        let lhs = mu_c.compose(&mu);
        let rhs = c_mu.compose(&mu);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mult_is_conical() {
        for x in [point(3), circle(3), standard_simplex(2, 3).with_basepoint(0)] {
            let c = mult_contraction(&x).unwrap();
            c.validate().unwrap();
            assert!(c.check_conical().unwrap().is_empty());
        }
    }

    #[test]
    fn planted_nonassociative_contraction_reported() {
        // Start from the conical contraction mu on the cone over the
        // based two-point set and reroute a single positive-height
        // value; the conical law must notice.
        let s0 = crate::sset::discrete(2, 3).with_basepoint(0);
        let mut psi = mult_contraction(&s0).unwrap();
        assert!(psi.check_conical().unwrap().is_empty());
        let (v_p1_h1, v_s0p1_h1) = base_cone_class(&psi.cone.base, &s0);
        let input = psi.cone.class_of(1, 1, v_p1_h1);
        psi.map.degrees[2][input] = v_s0p1_h1;
        assert!(!psi.check_conical().unwrap().is_empty());
    }

    /// For X = C(S^0): the degree-1 class (p1, 1) and the degree-2
    /// class (s_0 p1, 1), located through a fresh cone over S^0.
    fn base_cone_class(base: &MaterializedSSet, s0: &MaterializedSSet) -> (usize, usize) {
        let c = reduced_cone(s0).unwrap();
        assert_eq!(c.space, *base);
        (c.class_of(1, 0, 1), c.class_of(1, 1, 1))
    }
}
