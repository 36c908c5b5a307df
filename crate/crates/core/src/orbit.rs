//! Orbit decomposition of permutations of finite state spaces.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{all_ideals, apply_sequence, OrderIdeal, TogglePlan};
use crate::poset::Poset;

/// Orbits of a permutation. Within each orbit the map sends entry `k` to
/// entry `k + 1`, and the last entry back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition<S> {
    pub orbits: Vec<Vec<S>>,
}

impl<S> OrbitPartition<S> {
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Order of the permutation: lcm of the orbit lengths.
    pub fn order(&self) -> u64 {
        self.orbits
            .iter()
            .fold(1u64, |acc, o| num_integer::lcm(acc, o.len() as u64))
    }

    pub fn state_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    /// Sorted orbit lengths, i.e. the cycle type.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut v = self.lengths();
        v.sort_unstable();
        v
    }
}

/// Splits `states` into orbits of the map `k -> image[k]`. Orbits are listed
/// by their smallest state index, each starting from that state.
pub fn orbits_of_permutation<S: Clone>(states: &[S], image: &[usize]) -> Result<OrbitPartition<S>> {
    let n = states.len();
    if image.len() != n {
        return Err(Error::Length {
            expected: n,
            got: image.len(),
        });
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            orbit.push(states[k].clone());
            k = image[k];
        }
        if k != start {
            return Err(Error::Unsupported("map is not a permutation".into()));
        }
        orbits.push(orbit);
    }
    Ok(OrbitPartition { orbits })
}

/// Index map for a finite state list, then the image of every state under `f`.
pub fn permutation_of<S, F>(states: &[S], f: F) -> Result<Vec<usize>>
where
    S: Eq + Hash + Sync,
    F: Fn(&S) -> S + Sync,
{
    let index: HashMap<&S, usize> = states.iter().enumerate().map(|(k, s)| (s, k)).collect();
    states
        .par_iter()
        .map(|s| {
            index
                .get(&f(s))
                .copied()
                .ok_or_else(|| Error::Unsupported("map leaves the state space".into()))
        })
        .collect()
}

/// All orbits of the permutation of `J(P)` induced by `plan`.
pub fn orbit_partition(p: &Poset, plan: &TogglePlan, limit: usize) -> Result<OrbitPartition<OrderIdeal>> {
    let seq = plan.resolve(p)?;
    let states = all_ideals(p, limit)?;
    let image = permutation_of(&states, |i| apply_sequence(p, i, &seq))?;
    orbits_of_permutation(&states, &image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::apply_plan;

    #[test]
    fn rect_2x2_rowmotion_orbits() {
        let p = Poset::rect(2, 2).unwrap();
        let o = orbit_partition(&p, &TogglePlan::Rowmotion, 100).unwrap();
        assert_eq!(o.cycle_type(), vec![2, 4]);
        assert_eq!(o.order(), 4);
        assert_eq!(o.state_count(), 6);
    }

    #[test]
    fn chains_have_one_orbit() {
        for b in 1..=6 {
            let p = Poset::rect(1, b).unwrap();
            let o = orbit_partition(&p, &TogglePlan::Rowmotion, 100).unwrap();
            assert_eq!(o.lengths(), vec![b + 1]);
        }
    }

    #[test]
    fn promotion_3x3_has_order_6() {
        let p = Poset::rect(3, 3).unwrap();
        let o = orbit_partition(&p, &TogglePlan::Promotion, 100).unwrap();
        assert_eq!(o.order(), 6);
    }

    #[test]
    fn orbits_follow_the_map() {
        let p = Poset::rect(2, 3).unwrap();
        let o = orbit_partition(&p, &TogglePlan::Promotion, 100).unwrap();
        for orbit in &o.orbits {
            for k in 0..orbit.len() {
                let next = &orbit[(k + 1) % orbit.len()];
                assert_eq!(&apply_plan(&p, &orbit[k], &TogglePlan::Promotion).unwrap(), next);
            }
        }
    }

    #[test]
    fn rowmotion_and_promotion_share_cycle_type() {
        for a in 1..=4 {
            for b in 1..=4 {
                let p = Poset::rect(a, b).unwrap();
                let r = orbit_partition(&p, &TogglePlan::Rowmotion, 1000).unwrap();
                let q = orbit_partition(&p, &TogglePlan::Promotion, 1000).unwrap();
                assert_eq!(r.cycle_type(), q.cycle_type(), "[{a}]x[{b}]");
            }
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(orbits_of_permutation(&[0, 1, 2], &[1, 1, 2]).is_err());
        assert!(orbits_of_permutation(&[0, 1], &[0]).is_err());
    }
}
