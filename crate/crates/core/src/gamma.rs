//! Finitely generated groups Γ used to index the Γ-sectors.
//!
//! Equality of descriptors is structural (same variant, rank and sorted
//! torsion list), not group isomorphism: `Z/6` and `Z/2+Z/3` compare unequal
//! even though they are the same group. Every computation in the crate goes
//! through the gcd formula for `|HOM(Γ, Z/m)|`, which does not depend on how
//! the finite part is decomposed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A word in the generators: `(generator index, exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaDescriptor {
    /// The free group `F_rank`.
    Free {
        rank: u32,
    },
    /// `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_s`, torsion sorted ascending, each `d ≥ 2`.
    Abelian {
        rank: u32,
        torsion: Vec<u64>,
    },
    Presented(Presentation),
}

impl GammaDescriptor {
    pub fn trivial() -> Self {
        GammaDescriptor::Abelian {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: u32) -> Self {
        GammaDescriptor::Free { rank }
    }

    /// `Z^rank`.
    pub fn free_abelian(rank: u32) -> Self {
        GammaDescriptor::Abelian {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank ⊕ ⊕ Z/d`. Factors equal to 1 are dropped; 0 is rejected
    /// (use the rank for free summands).
    pub fn abelian(rank: u32, torsion: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut t = Vec::new();
        for d in torsion {
            match d {
                0 => {
                    return Err(Error::InvalidArgument(
                        "torsion factor Z/0 is not allowed; raise the rank instead".into(),
                    ))
                }
                1 => {}
                d => t.push(d),
            }
        }
        t.sort_unstable();
        Ok(GammaDescriptor::Abelian { rank, torsion: t })
    }

    pub fn presented(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(&(g, _)) = w.iter().find(|(g, _)| *g >= generators.len()) {
                return Err(Error::UnsupportedGamma(format!(
                    "relator uses generator index {g} but only {} generators exist",
                    generators.len()
                )));
            }
        }
        Ok(GammaDescriptor::Presented(Presentation {
            generators,
            relators,
        }))
    }

    /// Number of generators in the descriptor's own presentation.
    pub fn generator_count(&self) -> usize {
        match self {
            GammaDescriptor::Free { rank } => *rank as usize,
            GammaDescriptor::Abelian { rank, torsion } => *rank as usize + torsion.len(),
            GammaDescriptor::Presented(p) => p.generators.len(),
        }
    }

    /// Rank and torsion of the abelianization, `(l, [d_j])`.
    pub fn abelian_invariants(&self) -> Result<(u32, Vec<u64>)> {
        match abelianize(self)? {
            GammaDescriptor::Abelian { rank, torsion } => Ok((rank, torsion)),
            _ => unreachable!("abelianize returns the abelian form"),
        }
    }
}

/// `Γ/[Γ,Γ]` in the form `Z^l ⊕ ⊕_j Z/d_j`.
///
/// Presented groups are handled by Smith reduction of the relator exponent
/// matrix; the torsion list holds the invariant factors greater than one.
pub fn abelianize(gamma: &GammaDescriptor) -> Result<GammaDescriptor> {
    match gamma {
        GammaDescriptor::Free { rank } => Ok(GammaDescriptor::free_abelian(*rank)),
        GammaDescriptor::Abelian { rank, torsion } => {
            GammaDescriptor::abelian(*rank, torsion.iter().copied())
        }
        GammaDescriptor::Presented(p) => {
            let n = p.generators.len();
            let mut matrix: Vec<Vec<BigInt>> = p
                .relators
                .iter()
                .map(|w| {
                    let mut row = vec![BigInt::zero(); n];
                    for &(g, e) in w {
                        row[g] += e;
                    }
                    row
                })
                .filter(|row| row.iter().any(|x| !x.is_zero()))
                .collect();
            let diagonal = smith_diagonal(&mut matrix, n);
            let rank = n - diagonal.len();
            let mut torsion = Vec::new();
            for d in diagonal {
                let d = d.to_u64().ok_or_else(|| {
                    Error::UnsupportedGamma(format!("invariant factor {d} exceeds 64 bits"))
                })?;
                torsion.push(d);
            }
            let rank = u32::try_from(rank)
                .map_err(|_| Error::UnsupportedGamma("too many generators".into()))?;
            GammaDescriptor::abelian(rank, torsion)
        }
    }
}

/// Nonzero diagonal entries (absolute values) of a Smith form of `matrix`.
/// The matrix is consumed as scratch space.
#[allow(clippy::needless_range_loop)]
fn smith_diagonal(matrix: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = matrix.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if matrix[i][j].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => matrix[i][j].abs() < matrix[pi][pj].abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        matrix.swap(t, pi);
        for row in matrix.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = matrix[i][t].div_floor(&matrix[t][t]);
            if q.is_zero() && matrix[i][t].is_zero() {
                continue;
            }
            for j in t..cols {
                let v = &q * &matrix[t][j];
                matrix[i][j] -= v;
            }
            if !matrix[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = matrix[t][j].div_floor(&matrix[t][t]);
            if q.is_zero() && matrix[t][j].is_zero() {
                continue;
            }
            for i in t..rows {
                let v = &q * &matrix[i][t];
                matrix[i][j] -= v;
            }
            if !matrix[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by the pivot back into row t.
        let p = matrix[t][t].clone();
        let mut offender = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&matrix[i][j] % &p).is_zero() {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            for j in t..cols {
                let v = matrix[i][j].clone();
                matrix[t][j] += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag.into_iter().filter(|d| !d.is_zero()).collect()
}

impl fmt::Display for GammaDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaDescriptor::Free { rank } => write!(f, "F_{rank}"),
            GammaDescriptor::Abelian { rank, torsion } => {
                if *rank == 0 && torsion.is_empty() {
                    return f.write_str("trivial");
                }
                let mut parts = Vec::new();
                match rank {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    r => parts.push(format!("Z^{r}")),
                }
                parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
                f.write_str(&parts.join("+"))
            }
            GammaDescriptor::Presented(p) => {
                write!(f, "<{} | ", p.generators.join(","))?;
                let words: Vec<String> = p
                    .relators
                    .iter()
                    .map(|w| {
                        w.iter()
                            .map(|&(g, e)| {
                                if e == 1 {
                                    p.generators[g].clone()
                                } else {
                                    format!("{}^{e}", p.generators[g])
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                write!(f, "{}>", words.join(", "))
            }
        }
    }
}

/// Grammar: `trivial`, `Z`, `Z^l`, `Z/d`, sums such as `Z^l+Z/d1+Z/d2`,
/// `F_k`, or a presentation `<x,y | x y x^-1 y^-1, …>`.
impl FromStr for GammaDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised group {s:?}"));
        if s.eq_ignore_ascii_case("trivial") || s == "1" || s == "Z^0" {
            return Ok(GammaDescriptor::trivial());
        }
        if let Some(k) = s.strip_prefix("F_") {
            let rank = k.trim().parse().map_err(|_| bad())?;
            return Ok(GammaDescriptor::free(rank));
        }
        if s.starts_with('<') {
            return parse_presentation(s);
        }
        let mut rank = 0u32;
        let mut torsion = Vec::new();
        for term in s.split('+').map(str::trim) {
            if let Some(d) = term.strip_prefix("Z/") {
                torsion.push(d.trim().parse::<u64>().map_err(|_| bad())?);
            } else if term == "Z" {
                rank += 1;
            } else if let Some(l) = term.strip_prefix("Z^") {
                rank += l.trim().parse::<u32>().map_err(|_| bad())?;
            } else {
                return Err(bad());
            }
        }
        GammaDescriptor::abelian(rank, torsion)
    }
}

fn parse_presentation(s: &str) -> Result<GammaDescriptor> {
    let bad = |why: &str| Error::Parse(format!("{why} in presentation {s:?}"));
    let inner = s
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| bad("expected <gens | relators>"))?;
    let (gens, rels) = inner.split_once('|').unwrap_or((inner, ""));
    let generators: Vec<String> = gens
        .split(',')
        .map(|g| g.trim().to_string())
        .filter(|g| !g.is_empty())
        .collect();
    if generators
        .iter()
        .any(|g| !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
    {
        return Err(bad("generator names must be alphanumeric"));
    }
    let mut relators = Vec::new();
    for rel in rels.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        relators.push(parse_word(rel, &generators).ok_or_else(|| bad("unparseable relator"))?);
    }
    GammaDescriptor::presented(generators, relators)
}

// Greedy longest-match tokenisation, so `xyx^-1y^-1` works with one-letter
// generators.
fn parse_word(text: &str, generators: &[String]) -> Option<Word> {
    let chars: Vec<char> = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let mut word = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let rest: String = chars[pos..].iter().collect();
        let (idx, name) = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| rest.starts_with(g.as_str()))
            .max_by_key(|(_, g)| g.len())?;
        pos += name.chars().count();
        let mut exp = 1i64;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            let start = pos;
            if chars.get(pos) == Some(&'-') {
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let lit: String = chars[start..pos].iter().collect();
            exp = lit.parse().ok()?;
        }
        word.push((idx, exp));
    }
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GammaDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(g("Z^2"), GammaDescriptor::free_abelian(2));
        assert_eq!(g("trivial"), GammaDescriptor::trivial());
        assert_eq!(g("Z+Z/4"), GammaDescriptor::abelian(1, [4]).unwrap());
        assert_eq!(
            g("Z/6+Z^2+Z/2"),
            GammaDescriptor::abelian(2, [2, 6]).unwrap()
        );
        assert_eq!(g("F_3"), GammaDescriptor::free(3));
        for text in ["Z^2+Z/2+Z/6", "F_3", "trivial", "Z", "Z/3"] {
            assert_eq!(g(text).to_string(), text);
        }
        assert!("Q".parse::<GammaDescriptor>().is_err());
        assert!("Z/0".parse::<GammaDescriptor>().is_err());
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(abelianize(&g("F_3")).unwrap(), g("Z^3"));
        assert_eq!(abelianize(&g("<x,y | xyx^-1y^-1>")).unwrap(), g("Z^2"));
        assert_eq!(abelianize(&g("<x | x^6>")).unwrap(), g("Z/6"));
    }

    #[test]
    fn abelianize_needs_smith_reduction() {
        // <x,y | x^2 y^4, x^4 y^2>: exponent matrix [[2,4],[4,2]] has Smith form diag(2, 6).
        assert_eq!(
            abelianize(&g("<x,y | x^2 y^4, x^4 y^2>")).unwrap(),
            g("Z/2+Z/6")
        );
        // Dihedral group of order 6: <r,s | r^3, s^2, s r s^-1 r> abelianizes to Z/2.
        assert_eq!(
            abelianize(&g("<r,s | r^3, s^2, srs^-1r>")).unwrap(),
            g("Z/2")
        );
        // One generator killed outright; b c^-1 has order 2.
        assert_eq!(abelianize(&g("<a,b,c | a, b^2 c^-2>")).unwrap(), g("Z+Z/2"));
        // Integer Heisenberg-style quotient with torsion 1 factors dropped.
        assert_eq!(abelianize(&g("<x,y | x^3 y^5>")).unwrap(), g("Z"));
    }

    #[test]
    fn malformed_presentations() {
        assert!("<x | y>".parse::<GammaDescriptor>().is_err());
        assert!(GammaDescriptor::presented(vec!["x".into()], vec![vec![(3, 1)]]).is_err());
    }
}
