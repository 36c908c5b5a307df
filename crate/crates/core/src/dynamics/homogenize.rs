use crate::algebra::ToggleAlgebra;
use crate::array::LabeledArray;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::rational::{int, Q};

/// Rank of `1̂` in `P̂` and the `P̂`-rank of every element.
fn hat_ranks(p: &Poset) -> Result<(u32, Vec<u32>)> {
    let r = p.max_rank().ok_or(Error::NotGraded("homogenization"))?;
    let ranks = p.elements().map(|x| p.rank(x).unwrap() as u32 + 1).collect();
    Ok((r as u32 + 2, ranks))
}

fn scale<A: ToggleAlgebra>(alg: A, bottom: &Q, top: &Q, n: u32, m: u32) -> Result<Q> {
    let root = |v: &Q, which: &str| {
        alg.root(v, n)
            .ok_or_else(|| Error::Unsupported(format!("{which} boundary value {v} has no exact {n}-th root")))
    };
    let alpha = root(bottom, "bottom")?;
    let omega = root(top, "top")?;
    let lo = alg.pow(&alpha, &int((n - m) as i64)).expect("integer exponent");
    let hi = alg.pow(&omega, &int(m as i64)).expect("integer exponent");
    Ok(alg.mul(&lo, &hi))
}

/// Rescales a labelling with boundary `(A, Ω)` to one with unit boundary.
///
/// Tropically `f̄(x) = f(x) - A - (m/n)(Ω - A)` where `m` is the rank of `x`
/// in `P̂` and `n` that of `1̂`; birationally `f̄(x) = f(x) / (α^{n-m} ω^m)`
/// with `αⁿ = A`, `ωⁿ = Ω`. Toggles commute with this rescaling.
pub fn homogenize<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray) -> Result<LabeledArray> {
    let (n, ranks) = hat_ranks(p)?;
    let mut out = LabeledArray::from_values_unchecked(f.values.clone(), alg.unit(), alg.unit());
    for x in p.elements() {
        let s = scale(alg, &f.bottom, &f.top, n, ranks[x.index()])?;
        out.set(x, alg.div(f.get(x), &s).expect("boundary roots are invertible"));
    }
    Ok(out)
}

/// Inverse of [`homogenize`] for the given boundary values.
pub fn dehomogenize<A: ToggleAlgebra>(alg: A, p: &Poset, g: &LabeledArray, bottom: Q, top: Q) -> Result<LabeledArray> {
    let (n, ranks) = hat_ranks(p)?;
    let mut out = LabeledArray::from_values_unchecked(g.values.clone(), bottom.clone(), top.clone());
    for x in p.elements() {
        let s = scale(alg, &bottom, &top, n, ranks[x.index()])?;
        out.set(x, alg.mul(g.get(x), &s));
    }
    Ok(out)
}
