//! Homomorphisms from a finitely presented Γ into a finite group, and their
//! classes under simultaneous conjugation.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::gamma::{GammaDescriptor, Word};

use super::group::FiniteGroup;

/// Default cap on `|G|^(#generators)`.
pub const DEFAULT_HOM_BUDGET: u64 = 10_000_000;

/// A homomorphism, given by the images of Γ's generators.
pub type Hom = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    pub representative: Hom,
    pub class_size: usize,
    pub centralizer_order: usize,
    /// `⟨Im φ⟩`, sorted.
    pub image: Vec<usize>,
}

enum Constraint<'a> {
    /// Each new image must commute with the earlier ones; torsion generators
    /// carry their order bound.
    Abelian {
        free_rank: usize,
        torsion: &'a [u64],
    },
    Relators(Vec<(usize, &'a Word)>),
    None,
}

/// Every homomorphism `Γ → G`, in lexicographic order of image tuples.
///
/// Fails with [`Error::BudgetExceeded`] when `|G|^(#generators)` exceeds
/// `budget`; the search is never truncated silently.
pub fn enumerate_homs(
    gamma: &GammaDescriptor,
    group: &FiniteGroup,
    budget: u64,
) -> Result<Vec<Hom>> {
    let gens = gamma.generator_count();
    let needed: BigUint = Pow::pow(BigUint::from(group.order()), gens as u32);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    let constraint = match gamma {
        GammaDescriptor::Free { .. } => Constraint::None,
        GammaDescriptor::Abelian { rank, torsion } => Constraint::Abelian {
            free_rank: *rank as usize,
            torsion,
        },
        // A relator can be checked once its last generator has an image.
        GammaDescriptor::Presented(p) => Constraint::Relators(
            p.relators
                .iter()
                .map(|w| (w.iter().map(|&(g, _)| g).max().unwrap_or(0), w))
                .collect(),
        ),
    };
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(gens);
    extend(group, &constraint, gens, &mut current, &mut out);
    Ok(out)
}

fn extend(
    group: &FiniteGroup,
    constraint: &Constraint<'_>,
    gens: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Hom>,
) {
    let i = current.len();
    if i == gens {
        out.push(current.clone());
        return;
    }
    for x in 0..group.order() {
        current.push(x);
        if admissible(group, constraint, current) {
            extend(group, constraint, gens, current, out);
        }
        current.pop();
    }
}

fn admissible(group: &FiniteGroup, constraint: &Constraint<'_>, current: &[usize]) -> bool {
    let i = current.len() - 1;
    let x = current[i];
    match constraint {
        Constraint::None => true,
        Constraint::Abelian { free_rank, torsion } => {
            if i >= *free_rank {
                let d = torsion[i - free_rank];
                if d % group.element_order(x) as u64 != 0 {
                    return false;
                }
            }
            current[..i].iter().all(|&y| group.commute(x, y))
        }
        Constraint::Relators(rels) => rels
            .iter()
            .filter(|(last, w)| *last == i && !w.is_empty())
            .all(|(_, w)| evaluates_to_identity(group, current, w)),
    }
}

fn evaluates_to_identity(group: &FiniteGroup, images: &[usize], word: &Word) -> bool {
    let value = word.iter().fold(group.identity(), |acc, &(g, e)| {
        group.mul(acc, group.pow(images[g], e))
    });
    value == group.identity()
}

/// Homomorphisms up to simultaneous conjugation, each with the order of its
/// centralizer `C_G(φ)` (the stabilizer of the tuple) and its image.
pub fn hom_classes(
    gamma: &GammaDescriptor,
    group: &FiniteGroup,
    budget: u64,
) -> Result<Vec<HomClass>> {
    let homs = enumerate_homs(gamma, group, budget)?;
    let mut seen: HashSet<Hom> = HashSet::with_capacity(homs.len());
    let mut classes = Vec::new();
    for hom in homs {
        if seen.contains(&hom) {
            continue;
        }
        let mut orbit = HashSet::new();
        let mut centralizer_order = 0;
        for g in 0..group.order() {
            let conj: Hom = hom.iter().map(|&x| group.conjugate(g, x)).collect();
            if conj == hom {
                centralizer_order += 1;
            }
            orbit.insert(conj);
        }
        let class_size = orbit.len();
        seen.extend(orbit);
        let image = group.generated_subgroup(&hom);
        classes.push(HomClass {
            representative: hom,
            class_size,
            centralizer_order,
            image,
        });
    }
    Ok(classes)
}
