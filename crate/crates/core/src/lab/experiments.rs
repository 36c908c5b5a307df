use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{sample_array, sample_rng, Aggregate, HomomesyReport, OrbitRecord, Setting, Statistic, Verdict};
use crate::algebra::{Birational, ToggleAlgebra, Tropical};
use crate::array::{LabeledArray, Profile};
use crate::dynamics;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, alpha1, alpha2, alpha3, maximal_elements, TogglePlan};
use crate::orbit::{orbits_of_permutation, permutation_of};
use crate::polytope::{chain_dynamics, phi_map, psi_map, transfer_phi};
use crate::poset::{Element, Poset};
use crate::rational::{self, frac, Q};
use crate::VERSION;

fn require_two_by_two(p: &Poset) -> Result<()> {
    match p.dims() {
        Some((2, 2)) => Ok(()),
        _ => Err(Error::Unsupported("this experiment runs on [2]×[2] only".into())),
    }
}

/// The order `w, x, z, y` on `[2]×[2]` that carries `(1,k,k,k)/d` through the
/// twelve listed states to `(1,k-2,k-2,k-2)/d`.
pub fn resolved_plan(p: &Poset) -> Result<TogglePlan> {
    require_two_by_two(p)?;
    Ok(TogglePlan::Custom(vec![Element(0), Element(1), Element(3), Element(2)]))
}

/// Numerators (over `d`) of the state reached after `step` applications,
/// `0 <= step <= 12`, starting from `(1,k,k,k)/d`.
pub fn published_state(d: i64, k: i64, step: usize) -> Option<[i64; 4]> {
    Some(match step {
        0 => [1, k, k, k],
        1 => [k - 1, k - 1, d - 1, d],
        2 => [0, d - k + 1, 0, d - 1],
        3 => [0, k - 2, k - 1, k - 1],
        4 => [k - 2, k - 1, d - 1, d],
        5 => [1, d - k + 2, 1, d - 1],
        6 => [0, k - 3, k - 3, k - 2],
        7 => [k - 3, k - 2, d, d],
        8 => [1, d - k + 3, 1, d],
        9 => [0, k - 3, k - 4, k - 3],
        10 => [k - 4, k - 4, d - 1, d - 1],
        11 => [0, d - k + 3, 1, d],
        12 => [1, k - 2, k - 2, k - 2],
        _ => return None,
    })
}

fn over_d(p: &Poset, nums: [i64; 4], d: i64) -> Result<LabeledArray> {
    LabeledArray::with_profile(p, Profile::UnitInterval, nums.iter().map(|&n| frac(n, d)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k: i64,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteOrderReport {
    pub version: String,
    pub map: String,
    pub d: i64,
    pub rows: Vec<TableRow>,
    pub all_match: bool,
}

/// Compares twelve steps of `plan` from `(1,k,k,k)/d` with the listed table
/// for every `k` in `ks`.
pub fn infinite_order_experiment(
    p: &Poset,
    plan: &TogglePlan,
    d: i64,
    ks: RangeInclusive<i64>,
) -> Result<InfiniteOrderReport> {
    require_two_by_two(p)?;
    let seq = plan.resolve(p)?;
    if seq.len() != 4 {
        return Err(Error::BadPlan("the table compares plans of four toggles".into()));
    }
    if *ks.start() < 4 || *ks.end() > d {
        return Err(Error::Unsupported(format!("need 4 <= k <= d = {d}")));
    }
    let rows = ks
        .map(|k| {
            let mut f = over_d(p, published_state(d, k, 0).unwrap(), d)?;
            let mut first_mismatch = None;
            for step in 1..=12 {
                f = dynamics::apply_sequence(Tropical, p, &f, &seq)?;
                if f != over_d(p, published_state(d, k, step).unwrap(), d)? {
                    first_mismatch = Some(step);
                    break;
                }
            }
            Ok(TableRow {
                k,
                matches: first_mismatch.is_none(),
                first_mismatch,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InfiniteOrderReport {
        version: VERSION.into(),
        map: plan.describe(p),
        d,
        all_match: rows.iter().all(|r| r.matches),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitLength {
    pub d: i64,
    pub start: Vec<String>,
    pub length: Option<usize>,
}

/// Orbit length of `start` under `plan` (tropical), or `None` past `bound` steps.
pub fn orbit_length(p: &Poset, plan: &TogglePlan, start: &LabeledArray, bound: usize) -> Result<OrbitLength> {
    let seq = plan.resolve(p)?;
    let mut f = start.clone();
    let mut length = None;
    for step in 1..=bound {
        f = dynamics::apply_sequence(Tropical, p, &f, &seq)?;
        if &f == start {
            length = Some(step);
            break;
        }
    }
    let d = start
        .values
        .iter()
        .map(|v| v.denom().clone())
        .fold(num_bigint::BigInt::from(1), |a, b| num_integer::Integer::lcm(&a, &b));
    Ok(OrbitLength {
        d: d.try_into().unwrap_or(i64::MAX),
        start: start.formatted(),
        length,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub steps: usize,
    #[serde(with = "rational")]
    pub average: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CesaroReport {
    pub version: String,
    pub map: String,
    pub statistic: String,
    pub horizon: usize,
    pub steps: usize,
    pub period: Option<usize>,
    #[serde(with = "rational")]
    pub sum: Q,
    #[serde(with = "rational")]
    pub average: Q,
    pub checkpoints: Vec<Checkpoint>,
}

/// Running averages `(1/N) Σ_{k<N} F(T^k v)` of a tropical statistic. Stops
/// early, with an exact orbit average, if `v` returns to itself.
pub fn cesaro_average(
    p: &Poset,
    plan: &TogglePlan,
    start: &LabeledArray,
    stat: &Statistic,
    horizon: usize,
) -> Result<CesaroReport> {
    if horizon == 0 {
        return Err(Error::Unsupported("horizon must be at least 1".into()));
    }
    let seq = plan.resolve(p)?;
    let mut f = start.clone();
    let mut sum = rational::zero();
    let mut checkpoints = Vec::new();
    let mut next_mark = 10;
    let mut period = None;
    let mut steps = 0;
    while steps < horizon {
        sum += stat.eval_array(Tropical, &f)?;
        steps += 1;
        if steps == next_mark {
            checkpoints.push(Checkpoint {
                steps,
                average: &sum / rational::int(steps as i64),
            });
            next_mark *= 10;
        }
        f = dynamics::apply_sequence(Tropical, p, &f, &seq)?;
        if &f == start {
            period = Some(steps);
            break;
        }
    }
    let average = &sum / rational::int(steps as i64);
    Ok(CesaroReport {
        version: VERSION.into(),
        map: plan.describe(p),
        statistic: stat.name.clone(),
        horizon,
        steps,
        period,
        sum,
        average,
        checkpoints,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AntichainMode {
    Combinatorial,
    Pl,
    Birational,
}

/// Cardinality of antichains under `α₂ ∘ α₁ ∘ α₃`, and its lifts to the chain
/// polytope: the mean of `Σ g(x)` under `Φ ∘ ρ ∘ Ψ`, and the product of
/// `Π g(x)` under the birational maps with unit boundary.
pub fn antichain_experiment(
    p: &Poset,
    mode: AntichainMode,
    samples: usize,
    seed: u64,
    limit: usize,
) -> Result<HomomesyReport> {
    let card = Statistic::cardinality(p);
    let (setting, statistic, records, seed, samples) = match mode {
        AntichainMode::Combinatorial => {
            let states: Vec<_> = all_ideals(p, limit)?.iter().map(|i| maximal_elements(p, i)).collect();
            let image = permutation_of(&states, |a| alpha2(p, &alpha1(p, &alpha3(p, a))))?;
            let part = orbits_of_permutation(&states, &image)?;
            let records = part
                .orbits
                .iter()
                .enumerate()
                .map(|(id, orbit)| {
                    let values: Vec<Q> = orbit.iter().map(|a| rational::int(a.len() as i64)).collect();
                    OrbitRecord {
                        id,
                        start: orbit[0].to_json(p),
                        length: orbit.len(),
                        aggregate: Aggregate::Mean.apply(&values),
                        values,
                    }
                })
                .collect();
            (Setting::Combinatorial, "antichain-cardinality", records, None, None)
        }
        AntichainMode::Pl | AntichainMode::Birational => {
            let n = p.n().ok_or(Error::NotRectangle("antichain experiment"))?;
            if samples == 0 {
                return Err(Error::Unsupported("at least one sample is required".into()));
            }
            let birational = mode == AntichainMode::Birational;
            let records = (0..samples)
                .into_par_iter()
                .map(|id| {
                    let mut rng = sample_rng(seed, id as u64);
                    let (g, states) = if birational {
                        let g = sample_array(p, Setting::Birational, &mut rng)?;
                        let states = chain_orbit(&g, n, |h| {
                            let r = dynamics::apply_plan(
                                Birational,
                                p,
                                &psi_map(Birational, p, h),
                                &TogglePlan::Rowmotion,
                            )?;
                            phi_map(Birational, p, &r)
                        })?;
                        (g, states)
                    } else {
                        let g = transfer_phi(p, &sample_array(p, Setting::PlUnit, &mut rng)?)?;
                        let states = chain_orbit(&g, n, |h| chain_dynamics(p, h))?;
                        (g, states)
                    };
                    let (alg_values, aggregate) = if birational {
                        (eval_all(Birational, &card, &states)?, Aggregate::Product)
                    } else {
                        (eval_all(Tropical, &card, &states)?, Aggregate::Mean)
                    };
                    Ok(OrbitRecord {
                        id,
                        start: serde_json::to_value(g.to_json(p)).expect("array serializes"),
                        length: states.len(),
                        aggregate: aggregate.apply(&alg_values),
                        values: alg_values,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (setting, name) = if birational {
                (Setting::Birational, "chain-product")
            } else {
                (Setting::PlUnit, "chain-sum")
            };
            (setting, name, records, Some(seed), Some(samples))
        }
    };
    Ok(HomomesyReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: "antichain-rowmotion".into(),
        setting,
        statistic: statistic.into(),
        aggregate: setting.aggregate(),
        seed,
        samples,
        resampled: 0,
        verdict: Verdict::of(&records)?,
        records,
    })
}

fn chain_orbit(
    g: &LabeledArray,
    n: usize,
    step: impl Fn(&LabeledArray) -> Result<LabeledArray>,
) -> Result<Vec<LabeledArray>> {
    let mut states = vec![g.clone()];
    for _ in 1..n {
        let next = step(states.last().unwrap())?;
        states.push(next);
    }
    Ok(states)
}

fn eval_all<A: ToggleAlgebra>(alg: A, stat: &Statistic, states: &[LabeledArray]) -> Result<Vec<Q>> {
    states.iter().map(|s| stat.eval_array(alg, s)).collect()
}
