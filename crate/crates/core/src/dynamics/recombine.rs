use super::{apply_plan, apply_plan_inverse};
use crate::algebra::ToggleAlgebra;
use crate::array::LabeledArray;
use crate::error::{Error, Result};
use crate::ideal::TogglePlan;
use crate::poset::Poset;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RecombineDirection {
    /// `(Δf)(i,j) = (ρ^{j-1} f)(i,j)`.
    Forward,
    /// `(Δ⁻¹g)(i,j) = (π^{-(j-1)} g)(i,j)`.
    Inverse,
}

/// Recombination: column `j` of the output is read off the `(j-1)`-th iterate.
pub fn recombine<A: ToggleAlgebra>(
    alg: A,
    p: &Poset,
    f: &LabeledArray,
    dir: RecombineDirection,
) -> Result<LabeledArray> {
    let (a, b) = p.dims().ok_or(Error::NotRectangle("recombination"))?;
    let mut iterates = vec![f.clone()];
    for _ in 1..b {
        let prev = iterates.last().unwrap();
        let next = match dir {
            RecombineDirection::Forward => apply_plan(alg, p, prev, &TogglePlan::Rowmotion)?,
            RecombineDirection::Inverse => apply_plan_inverse(alg, p, prev, &TogglePlan::Promotion)?,
        };
        iterates.push(next);
    }
    let mut out = f.clone();
    for j in 1..=b {
        for i in 1..=a {
            let x = p.element_at(i, j)?;
            out.set(x, iterates[j - 1].get(x).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Birational;
    use crate::array::Profile;
    use crate::rational::{frac, int};

    #[test]
    fn worked_example_and_inverse() {
        let p = Poset::rect(2, 2).unwrap();
        let f = LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vec![int(1), int(2), int(3), int(4)])
            .unwrap();
        let d = recombine(Birational, &p, &f, RecombineDirection::Forward).unwrap();
        assert_eq!(d.values, vec![int(1), int(2), frac(5, 12), frac(5, 4)]);
        assert_eq!(recombine(Birational, &p, &d, RecombineDirection::Inverse).unwrap(), f);
    }

    #[test]
    fn intertwines_rowmotion_and_promotion() {
        let p = Poset::rect(3, 2).unwrap();
        let vals = [(1, 2), (3, 1), (2, 5), (7, 3), (1, 1), (4, 9)]
            .iter()
            .map(|&(n, d)| frac(n, d))
            .collect();
        let f = LabeledArray::with_profile(&p, Profile::HomogeneousBirational, vals).unwrap();
        let lhs = recombine(
            Birational,
            &p,
            &apply_plan(Birational, &p, &f, &TogglePlan::Rowmotion).unwrap(),
            RecombineDirection::Forward,
        )
        .unwrap();
        let rhs = apply_plan(
            Birational,
            &p,
            &recombine(Birational, &p, &f, RecombineDirection::Forward).unwrap(),
            &TogglePlan::Promotion,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}
