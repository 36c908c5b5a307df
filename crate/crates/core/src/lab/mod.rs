//! Statistics, orbit averages and homomesy checks in the combinatorial,
//! piecewise-linear and birational settings.

mod experiments;
mod sample;
mod span;

pub use experiments::{
    antichain_experiment, cesaro_average, infinite_order_experiment, orbit_length, published_state, resolved_plan,
    AntichainMode, CesaroReport, InfiniteOrderReport, OrbitLength, TableRow,
};
pub use sample::{sample_array, sample_rng};
pub use span::{homomesy_span, predicted_span, SpanReport, SpanVerdict};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Birational, ToggleAlgebra, Tropical};
use crate::array::{LabeledArray, Profile};
use crate::dynamics;
use crate::error::{Error, Result};
use crate::ideal::{self, OrderIdeal, TogglePlan};
use crate::orbit::orbit_partition;
use crate::poset::{ClassSelector, Element, Poset, PosetSpec};
use crate::rational::{self, Q};
use crate::VERSION;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    Combinatorial,
    PlUnit,
    PlHomog,
    Birational,
}

impl Setting {
    pub fn name(self) -> &'static str {
        match self {
            Setting::Combinatorial => "combinatorial",
            Setting::PlUnit => "pl-unit",
            Setting::PlHomog => "pl-homog",
            Setting::Birational => "birational",
        }
    }

    pub fn profile(self) -> Option<Profile> {
        match self {
            Setting::Combinatorial => None,
            Setting::PlUnit => Some(Profile::UnitInterval),
            Setting::PlHomog => Some(Profile::HomogeneousPl),
            Setting::Birational => Some(Profile::HomogeneousBirational),
        }
    }

    /// How one period of statistic values is summarized.
    pub fn aggregate(self) -> Aggregate {
        match self {
            Setting::Combinatorial | Setting::PlUnit => Aggregate::Mean,
            Setting::PlHomog => Aggregate::Sum,
            Setting::Birational => Aggregate::Product,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregate {
    Mean,
    Sum,
    Product,
}

impl Aggregate {
    pub fn apply(self, values: &[Q]) -> Q {
        match self {
            Aggregate::Mean => Tropical.mul_fold(values) / rational::int(values.len() as i64),
            Aggregate::Sum => Tropical.mul_fold(values),
            Aggregate::Product => Birational.mul_fold(values),
        }
    }
}

/// A functional given by one coefficient per element: `Σ c_x f(x)` additively,
/// `Π f(x)^{c_x}` multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistic {
    pub name: String,
    #[serde(with = "rational::vec")]
    pub coefficients: Vec<Q>,
}

impl Statistic {
    pub fn cardinality(p: &Poset) -> Self {
        Statistic {
            name: "cardinality".into(),
            coefficients: vec![rational::one(); p.size()],
        }
    }

    /// Indicator of file `i`.
    pub fn file(p: &Poset, i: usize) -> Result<Self> {
        let files = p.classes(ClassSelector::Files)?.classes;
        if i == 0 || i > files.len() {
            return Err(Error::FileIndex {
                index: i,
                max: files.len(),
            });
        }
        Ok(Self::indicator_of(p, format!("file({i})"), &files[i - 1]))
    }

    /// Indicator of `{x, x'}` where `x'` is the element opposite `x`.
    pub fn opposite_pair(p: &Poset, x: Element) -> Result<Self> {
        let y = p.opposite(x)?;
        Ok(Self::indicator_of(p, format!("opposite-pair{}", p.label(x)), &[x, y]))
    }

    pub fn element(p: &Poset, x: Element) -> Self {
        Self::indicator_of(p, format!("element{}", p.label(x)), &[x])
    }

    pub fn custom(name: impl Into<String>, coefficients: Vec<Q>) -> Self {
        Statistic {
            name: name.into(),
            coefficients,
        }
    }

    fn indicator_of(p: &Poset, name: String, xs: &[Element]) -> Self {
        let mut coefficients = vec![rational::zero(); p.size()];
        for x in xs {
            coefficients[x.index()] = rational::one();
        }
        Statistic { name, coefficients }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.coefficients.len() == n {
            Ok(())
        } else {
            Err(Error::Length {
                expected: n,
                got: self.coefficients.len(),
            })
        }
    }

    pub fn eval_ideal(&self, ideal: &OrderIdeal) -> Q {
        ideal
            .elements()
            .map(|x| self.coefficients[x.index()].clone())
            .fold(rational::zero(), |acc, c| acc + c)
    }

    /// `mul`-fold of `pow(f(x), c_x)`; birationally the exponents must be integers.
    pub fn eval_array<A: ToggleAlgebra>(&self, alg: A, f: &LabeledArray) -> Result<Q> {
        self.check_len(f.values.len())?;
        let mut terms = Vec::new();
        for (c, v) in self.coefficients.iter().zip(&f.values) {
            if *c == rational::zero() {
                continue;
            }
            let t = alg.pow(v, c).ok_or_else(|| Error::InvalidValue {
                algebra: A::NAME,
                value: format!("exponent {} on {}", rational::format(c), rational::format(v)),
            })?;
            terms.push(t);
        }
        Ok(alg.mul_fold(&terms))
    }
}

/// Promotion-orbit mean of `|I ∩ P_k|`, files numbered left to right.
///
/// With `i = n - k` this is `ai/n` for `i <= b` and `b(n-i)/n` for `i > b`.
pub fn file_mean(a: usize, b: usize, k: usize) -> Option<Q> {
    let n = a + b;
    if k == 0 || k >= n {
        return None;
    }
    let i = n - k;
    let num = if i <= b { a * i } else { b * (n - i) };
    Some(rational::frac(num as i64, n as i64))
}

/// A state of one of the three settings.
#[derive(Copy, Clone, Debug)]
pub enum State<'a> {
    Ideal(&'a OrderIdeal),
    Array(&'a LabeledArray),
}

pub fn eval_stat(stat: &Statistic, state: State<'_>, setting: Setting) -> Result<Q> {
    match (state, setting) {
        (State::Ideal(i), Setting::Combinatorial) => {
            stat.check_len(i.bits().len())?;
            Ok(stat.eval_ideal(i))
        }
        (State::Array(f), Setting::Birational) => stat.eval_array(Birational, f),
        (State::Array(f), Setting::PlUnit | Setting::PlHomog) => stat.eval_array(Tropical, f),
        _ => Err(Error::Unsupported(format!(
            "state kind does not match the {} setting",
            setting.name()
        ))),
    }
}

/// States visited from a start point. With a period, `states` is exactly one
/// period; otherwise it holds the states seen before the bound ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRun<S> {
    pub states: Vec<S>,
    pub period: Option<usize>,
}

/// `4n` steps for rowmotion and promotion, `12n` for other plans, where `n`
/// is the rank of `1̂` in `P̂`.
pub fn default_max_steps(p: &Poset, plan: &TogglePlan) -> usize {
    let n = p.n().or(p.max_rank().map(|r| r + 2)).unwrap_or(p.size() + 1);
    if plan.is_preset() {
        4 * n
    } else {
        12 * n
    }
}

fn run_orbit<S: Clone + PartialEq>(
    start: &S,
    max_steps: usize,
    mut step: impl FnMut(&S) -> Result<S>,
) -> Result<OrbitRun<S>> {
    if max_steps == 0 {
        return Err(Error::Unsupported("max_steps must be at least 1".into()));
    }
    let mut states = vec![start.clone()];
    for k in 1..=max_steps {
        let next = step(states.last().unwrap())?;
        if &next == start {
            return Ok(OrbitRun {
                states,
                period: Some(k),
            });
        }
        if k < max_steps {
            states.push(next);
        }
    }
    Ok(OrbitRun { states, period: None })
}

pub fn array_orbit<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    plan: &TogglePlan,
    start: &LabeledArray,
    max_steps: usize,
) -> Result<OrbitRun<LabeledArray>> {
    let seq = plan.resolve(p)?;
    run_orbit(start, max_steps, |f| dynamics::apply_sequence(alg, p, f, &seq))
}

pub fn ideal_orbit(p: &Poset, plan: &TogglePlan, start: &OrderIdeal, max_steps: usize) -> Result<OrbitRun<OrderIdeal>> {
    let seq = plan.resolve(p)?;
    run_orbit(start, max_steps, |i| Ok(ideal::apply_sequence(p, i, &seq)))
}

/// One orbit or one sample in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub id: usize,
    pub start: Value,
    pub length: usize,
    #[serde(with = "rational::vec")]
    pub values: Vec<Q>,
    #[serde(with = "rational")]
    pub aggregate: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Homomesic {
        #[serde(with = "rational")]
        constant: Q,
    },
    NotHomomesic {
        first: usize,
        second: usize,
        #[serde(with = "rational")]
        first_value: Q,
        #[serde(with = "rational")]
        second_value: Q,
    },
}

impl Verdict {
    pub fn of(records: &[OrbitRecord]) -> Result<Verdict> {
        let first = records
            .first()
            .ok_or_else(|| Error::Unsupported("no orbits or samples to compare".into()))?;
        Ok(match records.iter().find(|r| r.aggregate != first.aggregate) {
            None => Verdict::Homomesic {
                constant: first.aggregate.clone(),
            },
            Some(r) => Verdict::NotHomomesic {
                first: first.id,
                second: r.id,
                first_value: first.aggregate.clone(),
                second_value: r.aggregate.clone(),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomesyReport {
    pub version: String,
    pub poset: PosetSpec,
    pub map: String,
    pub setting: Setting,
    pub statistic: String,
    pub aggregate: Aggregate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub resampled: usize,
    pub records: Vec<OrbitRecord>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl HomomesyReport {
    pub fn is_homomesic(&self) -> bool {
        matches!(self.verdict, Verdict::Homomesic { .. })
    }

    pub fn constant(&self) -> Option<&Q> {
        match &self.verdict {
            Verdict::Homomesic { constant } => Some(constant),
            Verdict::NotHomomesic { .. } => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per recorded step: id, step, statistic, value.
    pub fn to_csv(&self) -> Result<String> {
        let id = if self.samples.is_some() {
            "sample_id"
        } else {
            "orbit_id"
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
        w.write_record([id, "step", "statistic", "value"]).map_err(io)?;
        for r in &self.records {
            for (step, v) in r.values.iter().enumerate() {
                w.write_record([
                    r.id.to_string(),
                    step.to_string(),
                    self.statistic.clone(),
                    rational::format(v),
                ])
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Exact per-orbit means of `stat` over every orbit of `plan` on `J(P)`.
pub fn check_homomesy_exhaustive(
    p: &Poset,
    plan: &TogglePlan,
    stat: &Statistic,
    limit: usize,
) -> Result<HomomesyReport> {
    stat.check_len(p.size())?;
    let part = orbit_partition(p, plan, limit)?;
    let records: Vec<OrbitRecord> = part
        .orbits
        .iter()
        .enumerate()
        .map(|(id, orbit)| {
            let values: Vec<Q> = orbit.iter().map(|i| stat.eval_ideal(i)).collect();
            OrbitRecord {
                id,
                start: orbit[0].to_json(p),
                length: orbit.len(),
                aggregate: Aggregate::Mean.apply(&values),
                values,
            }
        })
        .collect();
    Ok(HomomesyReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: plan.describe(p),
        setting: Setting::Combinatorial,
        statistic: stat.name.clone(),
        aggregate: Aggregate::Mean,
        seed: None,
        samples: None,
        resampled: 0,
        verdict: Verdict::of(&records)?,
        records,
    })
}

/// The states `f, Tf, ..., T^{w-1} f` over one period window: `n` steps for
/// the presets on a rectangle, the detected period otherwise.
pub fn period_window<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    plan: &TogglePlan,
    f: &LabeledArray,
) -> Result<Vec<LabeledArray>> {
    match (plan.is_preset(), p.n()) {
        (true, Some(n)) => {
            let mut t = dynamics::trajectory(alg, p, f, plan, n)?;
            t.pop();
            Ok(t)
        }
        _ => {
            let bound = default_max_steps(p, plan);
            let run = array_orbit(alg, p, plan, f, bound)?;
            match run.period {
                Some(_) => Ok(run.states),
                None => Err(Error::Unsupported(format!("no period within {bound} steps"))),
            }
        }
    }
}

const MAX_RESAMPLES: usize = 1000;

/// Samples arrays, evaluates `stat` over one period of each, and compares
/// the aggregates (mean, sum or product according to `setting`).
pub fn check_homomesy_sampled(
    p: &Poset,
    plan: &TogglePlan,
    stat: &Statistic,
    setting: Setting,
    samples: usize,
    seed: u64,
) -> Result<HomomesyReport> {
    stat.check_len(p.size())?;
    plan.resolve(p)?;
    if samples == 0 {
        return Err(Error::Unsupported("at least one sample is required".into()));
    }
    let aggregate = setting.aggregate();
    let results: Vec<(OrbitRecord, usize)> = (0..samples)
        .into_par_iter()
        .map(|id| {
            let mut rng = sample_rng(seed, id as u64);
            let mut resampled = 0;
            loop {
                let f = sample_array(p, setting, &mut rng)?;
                let window = match setting {
                    Setting::Birational => period_window(Birational, p, plan, &f),
                    Setting::PlUnit | Setting::PlHomog => period_window(Tropical, p, plan, &f),
                    Setting::Combinatorial => unreachable!("sample_array rejects the combinatorial setting"),
                };
                match window {
                    Ok(states) => {
                        let values = states
                            .iter()
                            .map(|s| eval_stat(stat, State::Array(s), setting))
                            .collect::<Result<Vec<_>>>()?;
                        let record = OrbitRecord {
                            id,
                            start: serde_json::to_value(f.to_json(p)).expect("array serializes"),
                            length: states.len(),
                            aggregate: aggregate.apply(&values),
                            values,
                        };
                        return Ok((record, resampled));
                    }
                    Err(Error::Singular { .. }) if resampled < MAX_RESAMPLES => resampled += 1,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect::<Result<_>>()?;
    let resampled = results.iter().map(|r| r.1).sum();
    let records: Vec<OrbitRecord> = results.into_iter().map(|r| r.0).collect();
    Ok(HomomesyReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: plan.describe(p),
        setting,
        statistic: stat.name.clone(),
        aggregate,
        seed: Some(seed),
        samples: Some(samples),
        resampled,
        verdict: Verdict::of(&records)?,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p22() -> Poset {
        Poset::rect(2, 2).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p = p22();
        let wy = OrderIdeal::from_elements(&p, [Element(0), Element(2)]).unwrap();
        let card = Statistic::cardinality(&p);
        assert_eq!(
            eval_stat(&card, State::Ideal(&wy), Setting::Combinatorial).unwrap(),
            int(2)
        );

        let f = LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vec![int(1), int(2), int(3), int(4)])
            .unwrap();
        let file2 = Statistic::file(&p, 2).unwrap();
        assert_eq!(
            eval_stat(&file2, State::Array(&f), Setting::Birational).unwrap(),
            int(4)
        );

        let wx = OrderIdeal::from_elements(&p, [Element(0), Element(1)]).unwrap();
        let pair = Statistic::opposite_pair(&p, Element(0)).unwrap();
        assert_eq!(
            eval_stat(&pair, State::Ideal(&wx), Setting::Combinatorial).unwrap(),
            int(1)
        );

        let half = Statistic::custom("half", vec![frac(1, 2), int(0), int(0), int(0)]);
        assert!(eval_stat(&half, State::Array(&f), Setting::Birational).is_err());
        assert!(eval_stat(&card, State::Array(&f), Setting::Combinatorial).is_err());
    }

    #[test]
    fn orbit_examples() {
        let p = p22();
        let run = ideal_orbit(&p, &TogglePlan::Rowmotion, &OrderIdeal::empty(&p), 16).unwrap();
        assert_eq!(run.period, Some(4));
        let sizes: Vec<usize> = run.states.iter().map(OrderIdeal::len).collect();
        assert_eq!(sizes, vec![0, 1, 3, 4]);
        assert!(run.states[2].contains(Element(1)) && run.states[2].contains(Element(2)));

        let f = LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vec![int(1), int(2), int(3), int(4)])
            .unwrap();
        assert_eq!(
            array_orbit(Birational, &p, &TogglePlan::Rowmotion, &f, 16)
                .unwrap()
                .period,
            Some(4)
        );

        let plan = resolved_plan(&p).unwrap();
        let v = LabeledArray::with_profile(
            &p,
            Profile::UnitInterval,
            vec![frac(1, 100), frac(1, 2), frac(1, 2), frac(1, 2)],
        )
        .unwrap();
        let bound = default_max_steps(&p, &plan);
        assert_eq!(bound, 48);
        let run = array_orbit(Tropical, &p, &plan, &v, bound).unwrap();
        assert_eq!(run.period, None);
        assert_eq!(run.states.len(), 48);
        assert!(array_orbit(Tropical, &p, &plan, &v, 0).is_err());
    }

    #[test]
    fn exhaustive_examples() {
        let p = p22();
        let r = check_homomesy_exhaustive(&p, &TogglePlan::Rowmotion, &Statistic::cardinality(&p), 1000).unwrap();
        assert_eq!(r.constant(), Some(&int(2)));
        let mut lens: Vec<usize> = r.records.iter().map(|o| o.length).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![2, 4]);

        let p34 = Poset::rect(3, 4).unwrap();
        let means: Vec<Q> = (1..=6)
            .map(|k| {
                let stat = Statistic::file(&p34, k).unwrap();
                let r = check_homomesy_exhaustive(&p34, &TogglePlan::Promotion, &stat, 1000).unwrap();
                r.constant().unwrap().clone()
            })
            .collect();
        assert_eq!(means, [4, 8, 12, 9, 6, 3].map(|k| frac(k, 7)));
        assert_eq!(file_mean(3, 4, 5), Some(frac(6, 7)));
        assert!((1..=6).all(|k| file_mean(3, 4, k).as_ref() == Some(&means[k - 1])));

        // [1]×[2] is a single orbit; the bottom element is in two of three ideals.
        let chain = Poset::rect(1, 2).unwrap();
        let r = check_homomesy_exhaustive(&chain, &TogglePlan::Promotion, &Statistic::file(&chain, 1).unwrap(), 10)
            .unwrap();
        assert_eq!(r.constant(), Some(&frac(2, 3)));
        assert_eq!(file_mean(1, 2, 1), Some(frac(2, 3)));

        let r =
            check_homomesy_exhaustive(&p, &TogglePlan::Rowmotion, &Statistic::element(&p, Element(0)), 1000).unwrap();
        match r.verdict {
            Verdict::NotHomomesic {
                first_value,
                second_value,
                ..
            } => {
                let mut pair = [first_value, second_value];
                pair.sort();
                assert_eq!(pair, [frac(3, 4), int(1)]);
            }
            v => panic!("expected a counterexample, got {v:?}"),
        }
    }

    #[test]
    fn sampled_examples() {
        let p33 = Poset::rect(3, 3).unwrap();
        let card = Statistic::cardinality(&p33);
        let r = check_homomesy_sampled(&p33, &TogglePlan::Promotion, &card, Setting::Birational, 5, 3).unwrap();
        assert_eq!(r.constant(), Some(&int(1)));
        assert!(r.records.iter().all(|o| o.length == 6));
        let r = check_homomesy_sampled(&p33, &TogglePlan::Promotion, &card, Setting::PlHomog, 5, 3).unwrap();
        assert_eq!(r.constant(), Some(&int(0)));
        let p = p22();
        let r = check_homomesy_sampled(
            &p,
            &TogglePlan::Promotion,
            &Statistic::cardinality(&p),
            Setting::PlUnit,
            5,
            3,
        )
        .unwrap();
        assert_eq!(r.constant(), Some(&int(2)));
        assert!(check_homomesy_sampled(
            &p,
            &TogglePlan::Promotion,
            &Statistic::cardinality(&p),
            Setting::Combinatorial,
            5,
            3
        )
        .is_err());
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let p = p22();
        let card = Statistic::cardinality(&p);
        let a = check_homomesy_sampled(&p, &TogglePlan::Rowmotion, &card, Setting::Birational, 8, 11).unwrap();
        let b = check_homomesy_sampled(&p, &TogglePlan::Rowmotion, &card, Setting::Birational, 8, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = check_homomesy_sampled(&p, &TogglePlan::Rowmotion, &card, Setting::Birational, 8, 12).unwrap();
        assert_ne!(a.records[0].start, c.records[0].start);
    }

    #[test]
    fn csv_columns() {
        let p = p22();
        let r = check_homomesy_exhaustive(&p, &TogglePlan::Rowmotion, &Statistic::cardinality(&p), 1000).unwrap();
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("orbit_id,step,statistic,value"));
        assert_eq!(csv.lines().count(), 1 + 6);
    }
}
