//! Factor groups via the regular action on cosets.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::Homomorphism;
use crate::perm::Permutation;

/// `G/N` as a permutation group on its cosets (so its degree equals its
/// order), together with the projection `G -> G/N`.
///
/// Cosets are numbered by their least element.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !g.is_normal(n)? {
        return Err(Error::NotNormal);
    }
    let labels = coset_labels(g, n);
    let index = g.order() / n.order();
    let reps: Vec<usize> = {
        let mut reps = vec![usize::MAX; index];
        for x in 0..g.order() {
            if reps[labels[x]] == usize::MAX {
                reps[labels[x]] = x;
            }
        }
        reps
    };
    // Right multiplication: coset N r ↦ N r x.
    let action = |x: usize| -> Permutation {
        let images: Vec<u16> = reps.iter().map(|&r| labels[g.mul(r, x)] as u16).collect();
        Permutation::from_raw(images)
    };
    let gens: Vec<Permutation> = g.generator_indices().into_iter().map(action).collect();
    let q = FiniteGroup::close(index, &gens, usize::MAX)?;
    let q = match g.name() {
        Some(name) => q.with_name(format!("{name}/N{}", n.order())),
        None => q,
    };
    let map: Vec<u32> = (0..g.order())
        .map(|x| q.index_of(&action(x)).expect("image lies in the quotient") as u32)
        .collect();
    let gens = g.generator_indices();
    let images: Vec<usize> = gens.iter().map(|&x| map[x] as usize).collect();
    let pi = Homomorphism::from_parts(g, &q, &gens, &images, map);
    Ok((q, pi))
}

/// Label of the coset `N x` for every element, numbered by least element.
pub fn coset_labels(g: &FiniteGroup, n: &Subgroup) -> Vec<usize> {
    let mut labels = vec![usize::MAX; g.order()];
    let members = n.member_vec();
    let mut next = 0;
    for x in 0..g.order() {
        if labels[x] != usize::MAX {
            continue;
        }
        for &m in &members {
            labels[g.mul(m, x)] = next;
        }
        next += 1;
    }
    labels
}
