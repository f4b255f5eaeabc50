//! Brute-force collision search over a bounded box of signatures.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{char_sequence, CharSequence};
use crate::signature::OrbifoldSignature;

/// Distinct signatures sharing one characteristic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionGroup {
    pub sequence: CharSequence,
    pub members: Vec<OrbifoldSignature>,
}

/// Every signature with genus ≤ `g_max`, at most `k_max` cone points and all
/// orders in `2..=m_max`, grouped by `(χ_(0), …, χ_(last))`. Only groups with
/// two or more members are returned; members and groups are in canonical
/// order.
pub fn search_collisions(g_max: u64, k_max: usize, m_max: u64, last: u32) -> Vec<CollisionGroup> {
    let mut tuples = Vec::new();
    let mut prefix = Vec::new();
    multisets(k_max, 2, m_max, &mut prefix, &mut tuples);

    let signatures: Vec<OrbifoldSignature> = (0..=g_max)
        .flat_map(|g| {
            tuples
                .iter()
                .map(move |t| OrbifoldSignature::from_orders(g, t).expect("orders ≥ 2"))
        })
        .collect();
    let keyed: Vec<(CharSequence, OrbifoldSignature)> = signatures
        .into_par_iter()
        .map(|s| (char_sequence(&s, last), s))
        .collect();

    let mut groups: HashMap<CharSequence, Vec<OrbifoldSignature>> = HashMap::new();
    for (seq, sig) in keyed {
        groups.entry(seq).or_default().push(sig);
    }
    let mut out: Vec<CollisionGroup> = groups
        .into_iter()
        .filter(|(_, members)| members.len() > 1)
        .map(|(sequence, mut members)| {
            members.sort();
            CollisionGroup { sequence, members }
        })
        .collect();
    out.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    out
}

// All nondecreasing tuples of length ≤ max_len over lo..=hi, including the
// empty tuple.
fn multisets(max_len: usize, lo: u64, hi: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    out.push(prefix.clone());
    if prefix.len() == max_len {
        return;
    }
    for m in lo..=hi {
        prefix.push(m);
        multisets(max_len, m, hi, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_count() {
        // C(7 + 3, 3) = 120 multisets of size ≤ 3 over 7 symbols.
        let mut out = Vec::new();
        multisets(3, 2, 8, &mut Vec::new(), &mut out);
        assert_eq!(out.len(), 120);
    }

    #[test]
    fn base_pair_is_found() {
        let groups = search_collisions(0, 3, 10, 2);
        let a = OrbifoldSignature::from_orders(0, &[5, 5, 10]).unwrap();
        let b = OrbifoldSignature::from_orders(0, &[4, 8, 8]).unwrap();
        assert!(groups
            .iter()
            .any(|g| g.members.contains(&a) && g.members.contains(&b)));
    }
}
