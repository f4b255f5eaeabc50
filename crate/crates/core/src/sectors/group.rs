//! Finite groups given by multiplication tables.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on the elements `0..order`. The table is validated on
/// construction and immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

/// JSON form `{"order": n, "table": [[…], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Checks closure, identity, inverses and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
        })
    }

    pub fn from_json(json: &GroupTableJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but table has {} rows",
                json.order,
                json.table.len()
            )));
        }
        Self::from_table(json.table.clone())
    }

    pub fn to_json(&self) -> GroupTableJson {
        GroupTableJson {
            order: self.order,
            table: self
                .table
                .chunks(self.order)
                .map(<[usize]>::to_vec)
                .collect(),
        }
    }

    /// Built-in groups by name: `C<n>` (cyclic of order n), `D<2n>`
    /// (dihedral of order 2n), and `x`-separated products such as `C2xC3`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split(['x', '×']).map(str::trim).collect();
        let mut groups = parts.iter().map(|p| {
            let bad = || Error::Parse(format!("unknown group name {p:?}"));
            if let Some(n) = p.strip_prefix('C') {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(cyclic_group(n))
            } else if let Some(n) = p.strip_prefix('D') {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n < 2 || !n.is_multiple_of(2) {
                    return Err(bad());
                }
                Ok(dihedral_group(n / 2))
            } else {
                Err(bad())
            }
        });
        let first = groups.next().expect("split yields one part")?;
        groups.try_fold(first, |acc, g| Ok(direct_product(&acc, &g?)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inverses[g])
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..e.unsigned_abs() % self.order as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Whether `elements` is closed under the group law (and hence, being
    /// finite and nonempty, a subgroup).
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.order)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }
}

/// `Z/n` with element `i` standing for `g^i`.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let rows = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroup::from_table(rows).expect("cyclic table is a group")
}

/// The dihedral group of order `2n`. Element `i < n` is the rotation `r^i`;
/// element `n + i` is the reflection `r^i s`.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let decode = |x: usize| (x % n, x >= n);
    let encode = |(i, refl): (usize, bool)| if refl { n + i } else { i };
    let rows = (0..2 * n)
        .map(|a| {
            (0..2 * n)
                .map(|b| {
                    let (i, s1) = decode(a);
                    let (j, s2) = decode(b);
                    // r^i s^e1 · r^j s^e2 = r^(i ± j) s^(e1 + e2)
                    let k = if s1 { (i + n - j) % n } else { (i + j) % n };
                    encode((k, s1 ^ s2))
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(rows).expect("dihedral table is a group")
}

/// `A × B`, with `(a, b)` stored at index `a·|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let rows = (0..na * nb)
        .map(|x| {
            (0..na * nb)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(rows).expect("product of groups is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c6 = cyclic_group(6);
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert_eq!(c6.generated_subgroup(&[1]).len(), 6);
        let d6 = dihedral_group(3);
        assert_eq!(d6.order(), 6);
        assert!(!d6.is_abelian());
        assert_eq!(d6.element_order(1), 3);
        assert_eq!(d6.element_order(3), 2);
        // s r s⁻¹ = r⁻¹
        assert_eq!(d6.conjugate(3, 1), 2);
        let p = direct_product(&cyclic_group(2), &cyclic_group(3));
        assert_eq!(p.order(), 6);
        assert!((0..6).any(|x| p.element_order(x) == 6));
    }

    #[test]
    fn names() {
        assert_eq!(FiniteGroup::by_name("C6").unwrap(), cyclic_group(6));
        assert_eq!(FiniteGroup::by_name("D10").unwrap(), dihedral_group(5));
        assert_eq!(FiniteGroup::by_name("C2xC3").unwrap().order(), 6);
        assert!(FiniteGroup::by_name("D7").is_err());
        assert!(FiniteGroup::by_name("Q8").is_err());
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        // A Latin square with identity that is not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
        let json = cyclic_group(4).to_json();
        assert_eq!(FiniteGroup::from_json(&json).unwrap(), cyclic_group(4));
    }

    #[test]
    fn subgroups() {
        let d10 = dihedral_group(5);
        assert_eq!(d10.generated_subgroup(&[5]), vec![0, 5]);
        assert!(d10.is_subgroup(&[0, 1, 2, 3, 4]));
        assert!(!d10.is_subgroup(&[0, 1]));
    }
}
