//! Closed orientable 2-orbifold signatures `Σ_g(m_1, …, m_k)`.
//!
//! The cone multiset is a map from order to multiplicity. Multiplicities are
//! arbitrary precision because the collision builders multiply them by
//! power-sum differences that leave the machine-word range after a few levels.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OrbifoldSignature {
    genus: u64,
    cones: BTreeMap<u64, BigUint>,
}

impl OrbifoldSignature {
    /// The closed genus-`genus` surface with no cone points.
    pub fn manifold(genus: u64) -> Self {
        OrbifoldSignature {
            genus,
            cones: BTreeMap::new(),
        }
    }

    /// Builds a signature from a flat list of cone orders.
    pub fn from_orders(genus: u64, orders: &[u64]) -> Result<Self> {
        let mut sig = Self::manifold(genus);
        for &m in orders {
            sig.add_cones(m, BigUint::one())?;
        }
        Ok(sig)
    }

    /// Builds a signature from `(order, multiplicity)` pairs. Repeated orders
    /// accumulate; zero multiplicities are dropped.
    pub fn from_counts<I, C>(genus: u64, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        let mut sig = Self::manifold(genus);
        for (m, c) in counts {
            sig.add_cones(m, c.into())?;
        }
        Ok(sig)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Order → multiplicity, ascending by order.
    pub fn cones(&self) -> &BTreeMap<u64, BigUint> {
        &self.cones
    }

    pub fn multiplicity(&self, order: u64) -> BigUint {
        self.cones.get(&order).cloned().unwrap_or_default()
    }

    /// Total number of cone points `k`.
    pub fn cone_count(&self) -> BigUint {
        self.cones.values().sum()
    }

    pub fn distinct_orders(&self) -> usize {
        self.cones.len()
    }

    pub fn is_manifold(&self) -> bool {
        self.cones.is_empty()
    }

    /// Every cone order with multiplicity, as a flat ascending list.
    ///
    /// Returns `None` when the total count does not fit comfortably in memory.
    pub fn flat_orders(&self) -> Option<Vec<u64>> {
        let k = self.cone_count().to_usize()?;
        if k > 1 << 24 {
            return None;
        }
        let mut out = Vec::with_capacity(k);
        for (&m, c) in &self.cones {
            out.extend(std::iter::repeat_n(m, c.to_usize()?));
        }
        Some(out)
    }

    pub(crate) fn add_cones(&mut self, order: u64, count: BigUint) -> Result<()> {
        if order < 2 {
            return Err(Error::InvalidSignature(format!(
                "cone order {order} is below 2"
            )));
        }
        if count.is_zero() {
            return Ok(());
        }
        *self.cones.entry(order).or_default() += count;
        Ok(())
    }

    /// Removes `count` cone points of order `order`; the caller guarantees
    /// that many are present.
    pub(crate) fn take_cones(&mut self, order: u64, count: &BigUint) {
        if count.is_zero() {
            return;
        }
        let entry = self.cones.get_mut(&order).expect("order present");
        *entry -= count;
        if entry.is_zero() {
            self.cones.remove(&order);
        }
    }

    pub(crate) fn cones_mut(&mut self) -> &mut BTreeMap<u64, BigUint> {
        &mut self.cones
    }

    /// Runs of the ascending flattened order tuple.
    fn runs(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.cones.iter().map(|(&m, c)| (m, c))
    }
}

/// Canonical order: genus, then cone count, then the ascending order tuple
/// compared lexicographically.
impl Ord for OrbifoldSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then_with(|| self.cone_count().cmp(&other.cone_count()))
            .then_with(|| compare_runs(self.runs(), other.runs()))
    }
}

impl PartialOrd for OrbifoldSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Lexicographic comparison of two flattened tuples given as runs, without
// materialising them.
fn compare_runs<'a>(
    mut a: impl Iterator<Item = (u64, &'a BigUint)>,
    mut b: impl Iterator<Item = (u64, &'a BigUint)>,
) -> Ordering {
    let mut cur_a = a.next().map(|(m, c)| (m, c.clone()));
    let mut cur_b = b.next().map(|(m, c)| (m, c.clone()));
    loop {
        match (&mut cur_a, &mut cur_b) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ma, ca)), Some((mb, cb))) => {
                if ma != mb {
                    return ma.cmp(&mb);
                }
                match (*ca).cmp(cb) {
                    Ordering::Equal => {
                        cur_a = a.next().map(|(m, c)| (m, c.clone()));
                        cur_b = b.next().map(|(m, c)| (m, c.clone()));
                    }
                    Ordering::Less => {
                        *cb -= &*ca;
                        cur_a = a.next().map(|(m, c)| (m, c.clone()));
                    }
                    Ordering::Greater => {
                        *ca -= &*cb;
                        cur_b = b.next().map(|(m, c)| (m, c.clone()));
                    }
                }
            }
        }
    }
}

/// Prints `Σ_g(m_1,…)`; runs longer than three are written `m^c`.
impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{}(", self.genus)?;
        let mut first = true;
        for (&m, c) in &self.cones {
            let small = c.to_u64().filter(|&c| c <= 3);
            match small {
                Some(n) => {
                    for _ in 0..n {
                        if !first {
                            f.write_str(",")?;
                        }
                        first = false;
                        write!(f, "{m}")?;
                    }
                }
                None => {
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    write!(f, "{m}^{c}")?;
                }
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts the inline sugar `Σ_g(m1,m2,…)` (also `S_g(…)`), where an entry
/// may be `m^c` for `c` copies of `m`, or the JSON object form.
impl FromStr for OrbifoldSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let bad = |why: &str| Error::Parse(format!("{why} in signature {s:?}"));
        let rest = s
            .strip_prefix("Σ_")
            .or_else(|| s.strip_prefix("S_"))
            .ok_or_else(|| bad("expected Σ_g(...)"))?;
        let (genus, body) = rest.split_once('(').ok_or_else(|| bad("missing '('"))?;
        let body = body.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let genus: u64 = genus.trim().parse().map_err(|_| bad("bad genus"))?;
        let mut sig = OrbifoldSignature::manifold(genus);
        for entry in body.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (m, c) = match entry.split_once('^') {
                Some((m, c)) => (
                    m,
                    c.trim().parse::<BigUint>().map_err(|_| bad("bad count"))?,
                ),
                None => (entry, BigUint::one()),
            };
            let m: u64 = m.trim().parse().map_err(|_| bad("bad cone order"))?;
            sig.add_cones(m, c)?;
        }
        Ok(sig)
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    order: u64,
    count: String,
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    genus: u64,
    cones: Vec<ConeJson>,
}

impl Serialize for OrbifoldSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SignatureJson {
            genus: self.genus,
            cones: self
                .cones
                .iter()
                .map(|(&order, c)| ConeJson {
                    order,
                    count: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbifoldSignature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SignatureJson::deserialize(deserializer)?;
        let mut sig = OrbifoldSignature::manifold(raw.genus);
        for cone in raw.cones {
            let count: BigUint = cone
                .count
                .parse()
                .map_err(|_| D::Error::custom(format!("bad cone count {:?}", cone.count)))?;
            if count.is_zero() {
                return Err(D::Error::custom("cone count must be positive"));
            }
            sig.add_cones(cone.order, count).map_err(D::Error::custom)?;
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u64, orders: &[u64]) -> OrbifoldSignature {
        OrbifoldSignature::from_orders(g, orders).unwrap()
    }

    #[test]
    fn multiset_equality_ignores_input_order() {
        assert_eq!(sig(0, &[10, 5, 5]), sig(0, &[5, 10, 5]));
        assert_ne!(sig(0, &[5, 5, 10]), sig(0, &[4, 8, 8]));
        assert_ne!(sig(1, &[]), sig(0, &[2, 2]));
    }

    #[test]
    fn rejects_small_orders() {
        assert!(OrbifoldSignature::from_orders(0, &[1]).is_err());
        assert!(OrbifoldSignature::from_orders(0, &[0]).is_err());
    }

    #[test]
    fn json_shape() {
        let s = sig(0, &[5, 5, 10]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"genus":0,"cones":[{"order":5,"count":"2"},{"order":10,"count":"1"}]}"#
        );
        let back: OrbifoldSignature = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let zero = r#"{"genus":0,"cones":[{"order":5,"count":"0"}]}"#;
        assert!(serde_json::from_str::<OrbifoldSignature>(zero).is_err());
    }

    #[test]
    fn inline_sugar() {
        assert_eq!(
            "Σ_0(5,5,10)".parse::<OrbifoldSignature>().unwrap(),
            sig(0, &[5, 5, 10])
        );
        assert_eq!("S_2()".parse::<OrbifoldSignature>().unwrap(), sig(2, &[]));
        let nine = "Σ_0(3^9)".parse::<OrbifoldSignature>().unwrap();
        assert_eq!(nine.multiplicity(3), BigUint::from(9u8));
        assert_eq!(nine.to_string(), "Σ_0(3^9)");
        assert_eq!(sig(1, &[2, 2, 7]).to_string(), "Σ_1(2,2,7)");
        assert!("Σ_x(2)".parse::<OrbifoldSignature>().is_err());
        assert!("Σ_0(1)".parse::<OrbifoldSignature>().is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![
            sig(1, &[]),
            sig(0, &[3, 3]),
            sig(0, &[2, 5]),
            sig(0, &[2, 2, 2]),
            sig(0, &[]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                sig(0, &[]),
                sig(0, &[2, 5]),
                sig(0, &[3, 3]),
                sig(0, &[2, 2, 2]),
                sig(1, &[])
            ]
        );
        // Runs of different lengths still compare as flattened tuples.
        assert!(sig(0, &[2, 2, 3, 9]) < sig(0, &[2, 3, 3, 3]));
        assert!(sig(0, &[2, 2, 2, 9]) < sig(0, &[2, 2, 3, 3]));
    }
}
