//! Order and chain polytopes, their vertices, the transfer maps between them,
//! and the three-step factorization of rowmotion.

use serde::{Deserialize, Serialize};

use crate::algebra::{ToggleAlgebra, Tropical};
use crate::array::{LabeledArray, Profile};
use crate::dynamics;
use crate::error::{Error, Result};
use crate::ideal::{Antichain, Filter, OrderIdeal, TogglePlan};
use crate::poset::{Element, Poset};
use crate::rational::{self, Q};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polytope {
    Order,
    Chain,
}

impl Polytope {
    pub fn name(self) -> &'static str {
        match self {
            Polytope::Order => "order",
            Polytope::Chain => "chain",
        }
    }
}

/// A violated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub constraint: String,
    #[serde(with = "rational")]
    pub lhs: Q,
    #[serde(with = "rational")]
    pub rhs: Q,
}

/// Exact membership test. `None` means `v` lies in the polytope; otherwise
/// the first violated inequality is returned.
pub fn violation(p: &Poset, v: &[Q], which: Polytope) -> Option<Witness> {
    if v.len() != p.size() {
        return Some(Witness {
            constraint: format!("array has {} values, poset has {} elements", v.len(), p.size()),
            lhs: rational::int(v.len() as i64),
            rhs: rational::int(p.size() as i64),
        });
    }
    let name = |x: Element| format!("v{}", p.label(x));
    let fail = |constraint: String, lhs: &Q, rhs: &Q| {
        Some(Witness {
            constraint,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        })
    };
    let (zero, one) = (rational::zero(), rational::one());
    match which {
        Polytope::Order => {
            for &x in p.linear_extension() {
                if p.lower_covers(x).is_empty() && v[x.index()] < zero {
                    return fail(format!("0 <= {}", name(x)), &zero, &v[x.index()]);
                }
                for &y in p.upper_covers(x) {
                    if v[x.index()] > v[y.index()] {
                        return fail(format!("{} <= {}", name(x), name(y)), &v[x.index()], &v[y.index()]);
                    }
                }
                if p.upper_covers(x).is_empty() && v[x.index()] > one {
                    return fail(format!("{} <= 1", name(x)), &v[x.index()], &one);
                }
            }
            None
        }
        Polytope::Chain => {
            for &x in p.linear_extension() {
                if v[x.index()] < zero {
                    return fail(format!("0 <= {}", name(x)), &zero, &v[x.index()]);
                }
            }
            let (sum, chain) = heaviest_chain(p, v);
            if sum > one {
                let terms: Vec<String> = chain.iter().map(|&x| name(x)).collect();
                return fail(format!("{} <= 1", terms.join(" + ")), &sum, &one);
            }
            None
        }
    }
}

pub fn in_polytope(p: &Poset, v: &[Q], which: Polytope) -> bool {
    violation(p, v, which).is_none()
}

fn require(p: &Poset, v: &[Q], which: Polytope) -> Result<()> {
    match violation(p, v, which) {
        None => Ok(()),
        Some(w) => Err(Error::NotInPolytope {
            polytope: which.name(),
            constraint: format!(
                "{} fails with {} > {}",
                w.constraint,
                rational::format(&w.lhs),
                rational::format(&w.rhs)
            ),
        }),
    }
}

/// Largest sum of `v` along a maximal chain, with one chain attaining it.
pub fn heaviest_chain(p: &Poset, v: &[Q]) -> (Q, Vec<Element>) {
    let mut best: Vec<Q> = vec![rational::zero(); p.size()];
    let mut prev: Vec<Option<Element>> = vec![None; p.size()];
    for &x in p.linear_extension() {
        let below = p
            .lower_covers(x)
            .iter()
            .max_by(|a, b| best[a.index()].cmp(&best[b.index()]));
        let base = below.map_or_else(rational::zero, |y| best[y.index()].clone());
        best[x.index()] = base + &v[x.index()];
        prev[x.index()] = below.copied();
    }
    let top = p
        .elements()
        .filter(|&x| p.upper_covers(x).is_empty())
        .max_by(|a, b| best[a.index()].cmp(&best[b.index()]))
        .expect("nonempty poset");
    let mut chain = vec![top];
    while let Some(y) = prev[chain.last().unwrap().index()] {
        chain.push(y);
    }
    chain.reverse();
    (best[top.index()].clone(), chain)
}

fn indicator(p: &Poset, members: impl Fn(Element) -> bool) -> LabeledArray {
    let values = p
        .elements()
        .map(|x| if members(x) { rational::one() } else { rational::zero() })
        .collect();
    let (bottom, top) = Profile::UnitInterval.boundary();
    LabeledArray::from_values_unchecked(values, bottom, top)
}

fn support(p: &Poset, v: &LabeledArray) -> Result<Vec<Element>> {
    if v.values.len() != p.size() {
        return Err(Error::Length {
            expected: p.size(),
            got: v.values.len(),
        });
    }
    let mut out = Vec::new();
    for x in p.elements() {
        let val = v.get(x);
        if *val == rational::one() {
            out.push(x);
        } else if *val != rational::zero() {
            return Err(Error::WrongKind {
                kind: "a 0/1 vertex",
                detail: format!("value {} at {}", rational::format(val), p.label(x)),
            });
        }
    }
    Ok(out)
}

/// Order-polytope vertex: the indicator of a filter.
pub fn filter_vertex(p: &Poset, f: &Filter) -> LabeledArray {
    indicator(p, |x| f.contains(x))
}

pub fn vertex_filter(p: &Poset, v: &LabeledArray) -> Result<Filter> {
    Filter::from_elements(p, support(p, v)?)
}

/// Chain-polytope vertex: the indicator of an antichain.
pub fn antichain_vertex(p: &Poset, a: &Antichain) -> LabeledArray {
    indicator(p, |x| a.contains(x))
}

pub fn vertex_antichain(p: &Poset, v: &LabeledArray) -> Result<Antichain> {
    Antichain::from_elements(p, support(p, v)?)
}

/// Order-polytope vertex of the complementary filter of an ideal.
pub fn ideal_vertex(p: &Poset, i: &OrderIdeal) -> LabeledArray {
    indicator(p, |x| !i.contains(x))
}

pub fn vertex_ideal(p: &Poset, v: &LabeledArray) -> Result<OrderIdeal> {
    let up = support(p, v)?;
    OrderIdeal::from_elements(p, p.elements().filter(|x| !up.contains(x)))
}

/// `Φ(f)(x) = par{ f(x) / f(y) : y ⋖ x }` with `0̂` among the lower covers.
pub fn phi_map<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray) -> Result<LabeledArray> {
    let mut out = f.clone();
    for x in p.elements() {
        let lower = p.lower_covers(x);
        let ratios: Vec<Q> = if lower.is_empty() {
            vec![ratio(alg, p, f.get(x), &f.bottom, x)?]
        } else {
            lower
                .iter()
                .map(|&y| ratio(alg, p, f.get(x), f.get(y), y))
                .collect::<Result<_>>()?
        };
        let v = alg.par_fold(&ratios).ok_or_else(|| Error::Singular {
            element: p.label(x),
            detail: "parallel-sum denominator vanishes".into(),
        })?;
        out.set(x, v);
    }
    Ok(out)
}

fn ratio<A: ToggleAlgebra>(alg: A, p: &Poset, num: &Q, den: &Q, at: Element) -> Result<Q> {
    alg.div(num, den).ok_or_else(|| Error::Singular {
        element: p.label(at),
        detail: "value is zero".into(),
    })
}

/// `Ψ(g)(x) = g(x) · ser{ Ψ(g)(y) : y ⋖ x }`, `0̂` contributing the bottom value.
pub fn psi_map<A: ToggleAlgebra>(alg: A, p: &Poset, g: &LabeledArray) -> LabeledArray {
    let mut out = g.clone();
    for &x in p.linear_extension() {
        let lower = p.lower_covers(x);
        let below = if lower.is_empty() {
            g.bottom.clone()
        } else {
            alg.ser_fold(lower.iter().map(|&y| out.get(y)))
        };
        out.set(x, alg.mul(g.get(x), &below));
    }
    out
}

/// Stanley's transfer map `O(P) -> C(P)`.
pub fn transfer_phi(p: &Poset, v: &LabeledArray) -> Result<LabeledArray> {
    require(p, &v.values, Polytope::Order)?;
    phi_map(Tropical, p, &unit_boundary(v))
}

/// Inverse transfer map `C(P) -> O(P)`.
pub fn transfer_psi(p: &Poset, g: &LabeledArray) -> Result<LabeledArray> {
    require(p, &g.values, Polytope::Chain)?;
    Ok(psi_map(Tropical, p, &unit_boundary(g)))
}

fn unit_boundary(v: &LabeledArray) -> LabeledArray {
    let (bottom, top) = Profile::UnitInterval.boundary();
    LabeledArray::from_values_unchecked(v.values.clone(), bottom, top)
}

/// The three stages `α₂f`, `α₃α₂f`, `α₁α₃α₂f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaChain {
    pub alpha2: LabeledArray,
    pub alpha3: LabeledArray,
    pub alpha1: LabeledArray,
}

/// Rowmotion factored as `α₁ ∘ α₃ ∘ α₂`.
///
/// `α₂` is [`phi_map`]. `α₃g(x) = g(x) · ser{ α₃g(y) : x ⋖ y }`, evaluated top
/// down, where `1̂` contributes `1 / f(1̂)`. `α₁` takes reciprocals.
pub fn alpha_chain<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray) -> Result<AlphaChain> {
    let alpha2 = phi_map(alg, p, f)?;
    let cap = alg.div(&alg.unit(), &f.top).ok_or_else(|| Error::Singular {
        element: "1̂".into(),
        detail: "value is zero".into(),
    })?;
    let mut alpha3 = alpha2.clone();
    for &x in p.linear_extension().iter().rev() {
        let upper = p.upper_covers(x);
        let above = if upper.is_empty() {
            cap.clone()
        } else {
            alg.ser_fold(upper.iter().map(|&y| alpha3.get(y)))
        };
        alpha3.set(x, alg.mul(alpha2.get(x), &above));
    }
    let mut alpha1 = alpha3.clone();
    for x in p.elements() {
        alpha1.set(x, ratio(alg, p, &alg.unit(), alpha3.get(x), x)?);
    }
    Ok(AlphaChain { alpha2, alpha3, alpha1 })
}

/// Rowmotion moved to the chain polytope: `Φ ∘ ρ ∘ Ψ`.
pub fn chain_dynamics(p: &Poset, g: &LabeledArray) -> Result<LabeledArray> {
    let v = transfer_psi(p, g)?;
    let r = dynamics::apply_plan(Tropical, p, &v, &TogglePlan::Rowmotion)?;
    transfer_phi(p, &r)
}
