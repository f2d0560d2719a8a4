//! Finite groups given by explicit multiplication tables.

use serde::Deserialize;

use crate::error::{Error, Result};

/// A finite group: full multiplication table, identity and inverses
/// computed and validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    elem_names: Vec<String>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses over the full table.
    pub fn from_table(name: &str, order: usize, table: Vec<Vec<usize>>, elem_names: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if table.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup(format!(
                "table must be {order}x{order}"
            )));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidGroup(format!(
                "table entry {bad} out of range"
            )));
        }
        let mul = |a: usize, b: usize| flat[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let elem_names = match elem_names {
            Some(names) => {
                if names.len() != order {
                    return Err(Error::InvalidGroup("one name per element".into()));
                }
                names
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            table: flat,
            identity,
            inverse,
            elem_names,
        })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elem_name(&self, a: usize) -> &str {
        &self.elem_names[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The cyclic group of order n, elements 0..n under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(&format!("C{n}"), n, table, None)
            .expect("cyclic tables are groups")
    }

    /// The symmetric group on three letters; elements are permutations
    /// of (0,1,2) in lexicographic one-line order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        // (a*b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&[a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect();
        FiniteGroup::from_table("S3", 6, table, Some(names)).expect("S3 is a group")
    }

    /// Loads and validates the JSON input format
    /// `{"order": m, "table": [[...]], "name": "..."}`.
    pub fn from_json(input: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            order: usize,
            table: Vec<Vec<usize>>,
            name: String,
        }
        let doc: Doc = serde_json::from_str(input)?;
        FiniteGroup::from_table(&doc.name, doc.order, doc.table, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        for n in 1..=4 {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(g.order, n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn s3_is_nonabelian_order_6() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order, 6);
        assert!(!g.is_abelian());
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inverse(a)), g.identity());
        }
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let good = r#"{"order": 2, "table": [[0,1],[1,0]], "name": "C2"}"#;
        let g = FiniteGroup::from_json(good).unwrap();
        assert_eq!(g.order, 2);

        let not_assoc = r#"{"order": 2, "table": [[0,1],[1,1]], "name": "bad"}"#;
        assert!(FiniteGroup::from_json(not_assoc).is_err());

        let out_of_range = r#"{"order": 2, "table": [[0,5],[1,0]], "name": "bad"}"#;
        assert!(FiniteGroup::from_json(out_of_range).is_err());
    }
}
