use serde::{Serialize, Serializer};

use super::Statistic;
use crate::error::{Error, Result};
use crate::ideal::TogglePlan;
use crate::linalg::{independent_subset, nullspace, span_contains};
use crate::orbit::orbit_partition;
use crate::poset::{ClassSelector, Poset, PosetSpec};
use crate::rational::{self, Q};
use crate::VERSION;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpanVerdict {
    /// Computed and predicted spans coincide.
    Equal,
    /// The predicted span is a proper subspace of the computed one.
    PredictedStrict,
    /// The computed span is a proper subspace of the predicted one.
    ComputedStrict,
    Incomparable,
}

/// All homomesic linear functionals `I -> Σ c_x [x ∈ I]`, against the span
/// of file and opposite-pair indicators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub version: String,
    pub poset: PosetSpec,
    pub map: String,
    pub orbits: usize,
    pub dimension: usize,
    #[serde(serialize_with = "matrix")]
    pub basis: Vec<Vec<Q>>,
    pub predicted_dimension: usize,
    #[serde(serialize_with = "matrix")]
    pub predicted_basis: Vec<Vec<Q>>,
    pub verdict: SpanVerdict,
}

fn matrix<S: Serializer>(m: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(rational::format).collect()).collect();
    strings.serialize(s)
}

/// File indicators and opposite-pair indicators, reduced to a basis.
pub fn predicted_span(p: &Poset) -> Result<Vec<Vec<Q>>> {
    p.dims().ok_or(Error::NotRectangle("predicted homomesy span"))?;
    let files = p.classes(ClassSelector::Files)?.classes.len();
    let mut gens = Vec::new();
    for i in 1..=files {
        gens.push(Statistic::file(p, i)?.coefficients);
    }
    for x in p.elements() {
        gens.push(Statistic::opposite_pair(p, x)?.coefficients);
    }
    Ok(independent_subset(&gens, p.size()))
}

/// Exact space of coefficient vectors `c` whose orbit averages agree on
/// every orbit of `plan` acting on `J(P)`.
pub fn homomesy_span(p: &Poset, plan: &TogglePlan, limit: usize) -> Result<SpanReport> {
    let n = p.size();
    let part = orbit_partition(p, plan, limit)?;
    let averages: Vec<Vec<Q>> = part
        .orbits
        .iter()
        .map(|orbit| {
            let mut counts = vec![0i64; n];
            for ideal in orbit {
                for x in ideal.elements() {
                    counts[x.index()] += 1;
                }
            }
            counts.iter().map(|&c| rational::frac(c, orbit.len() as i64)).collect()
        })
        .collect();
    let rows: Vec<Vec<Q>> = averages[1..]
        .iter()
        .map(|avg| avg.iter().zip(&averages[0]).map(|(a, b)| a - b).collect())
        .collect();
    let basis = nullspace(&rows, n);
    let predicted = predicted_span(p)?;
    let up = span_contains(&basis, &predicted, n);
    let down = span_contains(&predicted, &basis, n);
    let verdict = match (up, down) {
        (true, true) => SpanVerdict::Equal,
        (true, false) => SpanVerdict::PredictedStrict,
        (false, true) => SpanVerdict::ComputedStrict,
        (false, false) => SpanVerdict::Incomparable,
    };
    Ok(SpanReport {
        version: VERSION.into(),
        poset: p.spec(),
        map: plan.describe(p),
        orbits: part.orbits.len(),
        dimension: basis.len(),
        basis,
        predicted_dimension: predicted.len(),
        predicted_basis: predicted,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::check_homomesy_exhaustive;
    use crate::rational::int;

    #[test]
    fn two_by_two_rowmotion() {
        let p = Poset::rect(2, 2).unwrap();
        let r = homomesy_span(&p, &TogglePlan::Rowmotion, 1000).unwrap();
        assert_eq!(r.dimension, 3);
        assert_eq!(r.verdict, SpanVerdict::Equal);
        for c in &r.basis {
            assert_eq!(c[0], c[3]);
        }
        let wz = vec![int(1), int(0), int(0), int(1)];
        assert!(span_contains(&r.basis, &[wz], 4));
    }

    #[test]
    fn single_element() {
        let p = Poset::rect(1, 1).unwrap();
        let r = homomesy_span(&p, &TogglePlan::Rowmotion, 10).unwrap();
        assert_eq!((r.orbits, r.dimension), (1, 1));
    }

    #[test]
    fn basis_vectors_are_homomesic() {
        let p = Poset::rect(3, 3).unwrap();
        let r = homomesy_span(&p, &TogglePlan::Promotion, 1000).unwrap();
        assert_eq!(r.dimension, r.predicted_dimension);
        assert_eq!(r.verdict, SpanVerdict::Equal);
        for (k, c) in r.basis.iter().enumerate() {
            let stat = Statistic::custom(format!("basis-{k}"), c.clone());
            assert!(check_homomesy_exhaustive(&p, &TogglePlan::Promotion, &stat, 1000)
                .unwrap()
                .is_homomesic());
        }
    }
}
