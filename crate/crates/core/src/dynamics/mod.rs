//! Toggle dynamics over a [`ToggleAlgebra`].
//!
//! One toggle rule serves both settings: `f'(x) = (L · R) / f(x)` where `L` is
//! the series fold of `f` over the lower covers of `x` in `P̂` and `R` the
//! parallel fold over its upper covers.

mod homogenize;
mod quotient;
mod recombine;

pub use homogenize::{dehomogenize, homogenize};
pub use quotient::{file_toggle, quotient_sequence, QuotientSequence};
pub use recombine::{recombine, RecombineDirection};

use crate::algebra::ToggleAlgebra;
use crate::array::LabeledArray;
use crate::error::{Error, Result};
use crate::ideal::TogglePlan;
use crate::poset::{Element, Poset};
use crate::rational::Q;

fn singular(p: &Poset, x: Element, detail: &str) -> Error {
    Error::Singular {
        element: p.label(x),
        detail: detail.to_string(),
    }
}

fn lower_value<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, x: Element) -> Q {
    let lower = p.lower_covers(x);
    if lower.is_empty() {
        f.bottom.clone()
    } else {
        alg.ser_fold(lower.iter().map(|&y| f.get(y)))
    }
}

fn upper_value<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, x: Element) -> Result<Q> {
    let upper = p.upper_covers(x);
    if upper.is_empty() {
        Ok(f.top.clone())
    } else {
        alg.par_fold(upper.iter().map(|&y| f.get(y)))
            .ok_or_else(|| singular(p, x, "parallel-sum denominator vanishes"))
    }
}

fn toggle_in_place<A: ToggleAlgebra>(alg: A, p: &Poset, f: &mut LabeledArray, x: Element) -> Result<()> {
    let l = lower_value(alg, p, f, x);
    let r = upper_value(alg, p, f, x)?;
    let v = alg
        .div(&alg.mul(&l, &r), f.get(x))
        .ok_or_else(|| singular(p, x, "value is zero"))?;
    f.set(x, v);
    Ok(())
}

/// Toggles the single coordinate `x`.
pub fn toggle<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, x: Element) -> Result<LabeledArray> {
    p.check(x)?;
    check_len(p, f)?;
    let mut out = f.clone();
    toggle_in_place(alg, p, &mut out, x)?;
    Ok(out)
}

fn check_len(p: &Poset, f: &LabeledArray) -> Result<()> {
    if f.values.len() == p.size() {
        Ok(())
    } else {
        Err(Error::Length {
            expected: p.size(),
            got: f.values.len(),
        })
    }
}

/// Applies an explicit toggle sequence, first to last.
pub fn apply_sequence<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, seq: &[Element]) -> Result<LabeledArray> {
    check_len(p, f)?;
    let mut out = f.clone();
    for &x in seq {
        toggle_in_place(alg, p, &mut out, x)?;
    }
    Ok(out)
}

pub fn apply_plan<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, plan: &TogglePlan) -> Result<LabeledArray> {
    apply_sequence(alg, p, f, &plan.resolve(p)?)
}

/// Inverse of `apply_plan`: the same toggles in reverse order.
pub fn apply_plan_inverse<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    f: &LabeledArray,
    plan: &TogglePlan,
) -> Result<LabeledArray> {
    let mut seq = plan.resolve(p)?;
    seq.reverse();
    apply_sequence(alg, p, f, &seq)
}

/// `f, T f, T² f, ..., T^k f`.
pub fn trajectory<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    f: &LabeledArray,
    plan: &TogglePlan,
    steps: usize,
) -> Result<Vec<LabeledArray>> {
    let seq = plan.resolve(p)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(f.clone());
    for _ in 0..steps {
        let next = apply_sequence(alg, p, out.last().unwrap(), &seq)?;
        out.push(next);
    }
    Ok(out)
}

/// `T^k f`.
pub fn iterate<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    f: &LabeledArray,
    plan: &TogglePlan,
    k: usize,
) -> Result<LabeledArray> {
    let seq = plan.resolve(p)?;
    let mut out = f.clone();
    for _ in 0..k {
        out = apply_sequence(alg, p, &out, &seq)?;
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Rowmotion,
    Promotion,
}

/// One rowmotion or promotion step computed from the coordinate recurrences
/// rather than by sequencing toggles. Rectangles only.
///
/// Rowmotion: `ρf(i,j) = ser{f(i-1,j), f(i,j-1)} · par{ρf(i+1,j), ρf(i,j+1)} / f(i,j)`.
/// Promotion: `πf(i,j) = ser{f(i-1,j), πf(i,j-1)} · par{πf(i+1,j), f(i,j+1)} / f(i,j)`.
/// Missing neighbours are dropped; a fold with nothing left takes the
/// boundary value (`f(0̂)` below, `f(1̂)` above).
pub fn step_by_recurrence<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    f: &LabeledArray,
    kind: StepKind,
) -> Result<LabeledArray> {
    let (a, b) = p.dims().ok_or(Error::NotRectangle("recurrence step"))?;
    check_len(p, f)?;
    let at = |i: usize, j: usize| (1..=a).contains(&i) && (1..=b).contains(&j);
    let idx = |i: usize, j: usize| (j - 1) * a + (i - 1);

    let mut cells: Vec<(usize, usize)> = (1..=b).flat_map(|j| (1..=a).map(move |i| (i, j))).collect();
    match kind {
        StepKind::Rowmotion => cells.sort_by_key(|&(i, j)| std::cmp::Reverse(i + j)),
        StepKind::Promotion => cells.sort_by_key(|&(i, j)| j as i64 - i as i64),
    }

    let mut new: Vec<Option<Q>> = vec![None; a * b];
    let old = &f.values;
    for (i, j) in cells {
        let fresh = |new: &Vec<Option<Q>>, ii: usize, jj: usize| -> Q {
            new[idx(ii, jj)]
                .clone()
                .expect("recurrence order visits neighbours first")
        };
        let mut lower = Vec::new();
        if at(i.wrapping_sub(1), j) {
            lower.push(old[idx(i - 1, j)].clone());
        }
        if at(i, j.wrapping_sub(1)) {
            lower.push(match kind {
                StepKind::Rowmotion => old[idx(i, j - 1)].clone(),
                StepKind::Promotion => fresh(&new, i, j - 1),
            });
        }
        let mut upper = Vec::new();
        if at(i + 1, j) {
            upper.push(fresh(&new, i + 1, j));
        }
        if at(i, j + 1) {
            upper.push(match kind {
                StepKind::Rowmotion => fresh(&new, i, j + 1),
                StepKind::Promotion => old[idx(i, j + 1)].clone(),
            });
        }
        let x = Element(idx(i, j));
        let l = if lower.is_empty() {
            f.bottom.clone()
        } else {
            alg.ser_fold(&lower)
        };
        let r = if upper.is_empty() {
            f.top.clone()
        } else {
            alg.par_fold(&upper)
                .ok_or_else(|| singular(p, x, "parallel-sum denominator vanishes"))?
        };
        let v = alg
            .div(&alg.mul(&l, &r), &old[idx(i, j)])
            .ok_or_else(|| singular(p, x, "value is zero"))?;
        new[idx(i, j)] = Some(v);
    }
    Ok(LabeledArray {
        values: new.into_iter().map(Option::unwrap).collect(),
        bottom: f.bottom.clone(),
        top: f.top.clone(),
    })
}

/// Series fold of `f(x) / f(y)` over every cover `x ⋖ y` of `P̂`.
///
/// Birationally this is the sum of ratios; tropically it is the largest
/// difference `f(x) - f(y)`, the negative of the smallest upward gap.
pub fn edge_invariant<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray) -> Result<Q> {
    check_len(p, f)?;
    let mut ratios = Vec::new();
    let zero_div = |x: Element| singular(p, x, "value is zero");
    for x in p.elements() {
        if p.lower_covers(x).is_empty() {
            ratios.push(alg.div(&f.bottom, f.get(x)).ok_or_else(|| zero_div(x))?);
        }
        for &y in p.upper_covers(x) {
            ratios.push(alg.div(f.get(x), f.get(y)).ok_or_else(|| zero_div(y))?);
        }
        if p.upper_covers(x).is_empty() {
            let r = alg.div(f.get(x), &f.top).ok_or_else(|| Error::Singular {
                element: "1̂".into(),
                detail: "value is zero".into(),
            })?;
            ratios.push(r);
        }
    }
    Ok(alg.ser_fold(&ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Birational, Tropical};
    use crate::array::Profile;
    use crate::rational::{frac, int};

    fn p22() -> Poset {
        Poset::rect(2, 2).unwrap()
    }

    fn bir(p: &Poset, v: &[(i64, i64)]) -> LabeledArray {
        let vals = v.iter().map(|&(n, d)| frac(n, d)).collect();
        LabeledArray::with_profile(p, Profile::HomogeneousBirational, vals).unwrap()
    }

    fn unit(p: &Poset, v: &[(i64, i64)]) -> LabeledArray {
        let vals = v.iter().map(|&(n, d)| frac(n, d)).collect();
        LabeledArray::with_profile(p, Profile::UnitInterval, vals).unwrap()
    }

    #[test]
    fn birational_single_toggle() {
        let p = p22();
        let f = bir(&p, &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let g = toggle(Birational, &p, &f, Element(3)).unwrap();
        assert_eq!(g.values, vec![int(1), int(2), int(3), frac(5, 4)]);
    }

    #[test]
    fn birational_rowmotion_intermediate_states() {
        let p = p22();
        let mut f = bir(&p, &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let expected = [
            [(1, 1), (2, 1), (3, 1), (5, 4)],
            [(1, 1), (2, 1), (5, 12), (5, 4)],
            [(1, 1), (5, 8), (5, 12), (5, 4)],
            [(1, 4), (5, 8), (5, 12), (5, 4)],
        ];
        for (x, want) in [3, 2, 1, 0].into_iter().zip(expected) {
            f = toggle(Birational, &p, &f, Element(x)).unwrap();
            assert_eq!(f, bir(&p, &want));
            assert_eq!(edge_invariant(Birational, &p, &f).unwrap(), frac(85, 12));
        }
    }

    #[test]
    fn tropical_rowmotion_intermediate_states() {
        let p = p22();
        let mut f = unit(&p, &[(1, 10), (2, 10), (3, 10), (4, 10)]);
        let expected = [
            [(1, 10), (2, 10), (3, 10), (9, 10)],
            [(1, 10), (2, 10), (7, 10), (9, 10)],
            [(1, 10), (8, 10), (7, 10), (9, 10)],
            [(6, 10), (8, 10), (7, 10), (9, 10)],
        ];
        for (x, want) in [3, 2, 1, 0].into_iter().zip(expected) {
            f = toggle(Tropical, &p, &f, Element(x)).unwrap();
            assert_eq!(f, unit(&p, &want));
        }
    }

    #[test]
    fn presets_and_recurrence_agree_on_worked_examples() {
        let p = p22();
        let f = bir(&p, &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let want = bir(&p, &[(1, 4), (5, 8), (5, 12), (5, 4)]);
        assert_eq!(apply_plan(Birational, &p, &f, &TogglePlan::Rowmotion).unwrap(), want);
        assert_eq!(
            step_by_recurrence(Birational, &p, &f, StepKind::Rowmotion).unwrap(),
            want
        );
        assert_eq!(iterate(Birational, &p, &f, &TogglePlan::Rowmotion, 4).unwrap(), f);

        let v = unit(&p, &[(1, 10), (2, 10), (3, 10), (4, 10)]);
        let want = unit(&p, &[(6, 10), (8, 10), (7, 10), (9, 10)]);
        assert_eq!(step_by_recurrence(Tropical, &p, &v, StepKind::Rowmotion).unwrap(), want);
    }

    #[test]
    fn homogeneous_single_element() {
        let p = Poset::rect(1, 1).unwrap();
        let f = LabeledArray::with_profile(&p, Profile::HomogeneousPl, vec![frac(3, 7)]).unwrap();
        let g = apply_plan(Tropical, &p, &f, &TogglePlan::Promotion).unwrap();
        assert_eq!(g.values, vec![frac(-3, 7)]);
    }

    #[test]
    fn edge_invariant_examples() {
        let p = p22();
        let ones = bir(&p, &[(1, 1); 4]);
        assert_eq!(edge_invariant(Birational, &p, &ones).unwrap(), int(6));
        let v = unit(&p, &[(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert_eq!(edge_invariant(Tropical, &p, &v).unwrap(), frac(-1, 10));
    }

    #[test]
    fn singular_inputs_name_the_element() {
        let p = p22();
        // x + y = 0 makes the parallel sum above w undefined.
        let f = LabeledArray::from_values_unchecked(vec![int(1), int(2), int(-2), int(4)], int(1), int(1));
        match toggle(Birational, &p, &f, Element(0)) {
            Err(Error::Singular { element, .. }) => assert_eq!(element, "(1,1)"),
            other => panic!("expected singular error, got {other:?}"),
        }
        let f = LabeledArray::from_values_unchecked(vec![int(0), int(2), int(3), int(4)], int(1), int(1));
        assert!(matches!(
            toggle(Birational, &p, &f, Element(0)),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            step_by_recurrence(Birational, &p, &f, StepKind::Rowmotion),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn non_braid_relation_of_file_toggles() {
        let p = p22();
        let f = unit(&p, &[(3, 10), (4, 10), (5, 10), (7, 10)]);
        let mut g = f.clone();
        for _ in 0..3 {
            g = file_toggle(Tropical, &p, &g, 2).unwrap();
            g = file_toggle(Tropical, &p, &g, 1).unwrap();
        }
        assert_ne!(g, f);
    }

    #[test]
    fn inverse_plan_undoes_plan() {
        let p = Poset::rect(2, 3).unwrap();
        let f = bir(&p, &[(1, 2), (3, 1), (2, 5), (7, 3), (1, 1), (4, 9)]);
        for plan in [TogglePlan::Rowmotion, TogglePlan::Promotion] {
            let g = apply_plan(Birational, &p, &f, &plan).unwrap();
            assert_eq!(apply_plan_inverse(Birational, &p, &g, &plan).unwrap(), f);
        }
    }

    #[test]
    fn trajectory_lengths() {
        let p = p22();
        let f = bir(&p, &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let t = trajectory(Birational, &p, &f, &TogglePlan::Rowmotion, 4).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t[4], f);
    }
}
