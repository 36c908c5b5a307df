//! Order ideals, filters and antichains, combinatorial toggles, and the
//! three bijections `J(P) -> F(P) -> A(P) -> J(P)` whose composite is rowmotion.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poset::{ClassSelector, Element, Poset};

/// Default bound on the number of states any exhaustive routine will enumerate.
pub const DEFAULT_MAX_STATES: usize = 10_000_000;

macro_rules! subset_type {
    ($(#[$doc:meta])* $name:ident, $kind:literal, $check:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(FixedBitSet);

        impl $name {
            /// Builds the set, rejecting it if it violates the kind's invariant.
            pub fn from_elements(p: &Poset, xs: impl IntoIterator<Item = Element>) -> Result<Self> {
                let bits = bits_of(p, xs)?;
                if let Some(detail) = $check(p, &bits) {
                    return Err(Error::WrongKind { kind: $kind, detail });
                }
                Ok($name(bits))
            }

            pub fn contains(&self, x: Element) -> bool {
                self.0.contains(x.0)
            }

            pub fn len(&self) -> usize {
                self.0.count_ones(..)
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_clear()
            }

            pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
                self.0.ones().map(Element)
            }

            pub fn bits(&self) -> &FixedBitSet {
                &self.0
            }

            /// Sorted `[[i,j],...]` for rectangles, `[k,...]` otherwise.
            pub fn to_json(&self, p: &Poset) -> Value {
                set_json(p, &self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.0.ones()).finish()
            }
        }
    };
}

subset_type!(
    /// A downward-closed subset of `P`.
    OrderIdeal, "an order ideal", ideal_violation
);
subset_type!(
    /// An upward-closed subset of `P`.
    Filter, "a filter", filter_violation
);
subset_type!(
    /// A set of pairwise incomparable elements.
    Antichain, "an antichain", antichain_violation
);

fn bits_of(p: &Poset, xs: impl IntoIterator<Item = Element>) -> Result<FixedBitSet> {
    let mut bits = FixedBitSet::with_capacity(p.size());
    for x in xs {
        p.check(x)?;
        bits.insert(x.0);
    }
    Ok(bits)
}

fn ideal_violation(p: &Poset, s: &FixedBitSet) -> Option<String> {
    s.ones().find_map(|x| {
        p.lower_covers(Element(x))
            .iter()
            .find(|y| !s.contains(y.0))
            .map(|y| format!("{} present but {} missing", p.label(Element(x)), p.label(*y)))
    })
}

fn filter_violation(p: &Poset, s: &FixedBitSet) -> Option<String> {
    s.ones().find_map(|x| {
        p.upper_covers(Element(x))
            .iter()
            .find(|y| !s.contains(y.0))
            .map(|y| format!("{} present but {} missing", p.label(Element(x)), p.label(*y)))
    })
}

fn antichain_violation(p: &Poset, s: &FixedBitSet) -> Option<String> {
    for x in s.ones() {
        for y in s.ones().filter(|&y| y > x) {
            if p.comparable(Element(x), Element(y)) {
                return Some(format!(
                    "{} and {} are comparable",
                    p.label(Element(x)),
                    p.label(Element(y))
                ));
            }
        }
    }
    None
}

fn set_json(p: &Poset, s: &FixedBitSet) -> Value {
    if p.dims().is_some() {
        let mut cells: Vec<_> = s.ones().map(|x| p.cell(Element(x)).unwrap()).collect();
        cells.sort();
        Value::Array(cells.into_iter().map(|c| json!([c.i, c.j])).collect())
    } else {
        Value::Array(s.ones().map(|x| json!(x)).collect())
    }
}

impl OrderIdeal {
    pub fn empty(p: &Poset) -> Self {
        OrderIdeal(FixedBitSet::with_capacity(p.size()))
    }

    pub fn full(p: &Poset) -> Self {
        let mut bits = FixedBitSet::with_capacity(p.size());
        bits.insert_range(..);
        OrderIdeal(bits)
    }

    /// Parses `[[i,j],...]` (rectangles) or `[k,...]` (general posets).
    pub fn from_json(p: &Poset, v: &Value) -> Result<Self> {
        let bad = || Error::WrongKind {
            kind: "an order ideal",
            detail: format!("cannot read {v}"),
        };
        let items = v.as_array().ok_or_else(bad)?;
        let mut xs = Vec::with_capacity(items.len());
        for item in items {
            let x = match item {
                Value::Array(ij) if ij.len() == 2 => {
                    let i = ij[0].as_u64().ok_or_else(bad)? as usize;
                    let j = ij[1].as_u64().ok_or_else(bad)? as usize;
                    p.element_at(i, j)?
                }
                Value::Number(k) => Element(k.as_u64().ok_or_else(bad)? as usize),
                _ => return Err(bad()),
            };
            xs.push(x);
        }
        Self::from_elements(p, xs)
    }
}

/// `τ_x`: add or remove `x` when the result is still an order ideal.
pub fn toggle_ideal(p: &Poset, ideal: &OrderIdeal, x: Element) -> Result<OrderIdeal> {
    p.check(x)?;
    let mut out = ideal.clone();
    toggle_in_place(p, &mut out.0, x);
    Ok(out)
}

fn toggle_in_place(p: &Poset, bits: &mut FixedBitSet, x: Element) {
    if bits.contains(x.0) {
        if p.upper_covers(x).iter().all(|y| !bits.contains(y.0)) {
            bits.set(x.0, false);
        }
    } else if p.lower_covers(x).iter().all(|y| bits.contains(y.0)) {
        bits.insert(x.0);
    }
}

/// An ordered list of toggles, applied first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TogglePlan {
    /// Ranks from top to bottom.
    Rowmotion,
    /// Files from left to right.
    Promotion,
    Custom(Vec<Element>),
}

impl TogglePlan {
    /// The concrete toggle sequence on `p`, in application order.
    pub fn resolve(&self, p: &Poset) -> Result<Vec<Element>> {
        match self {
            TogglePlan::Rowmotion => Ok(p.linear_extension().iter().rev().copied().collect()),
            TogglePlan::Promotion => {
                let files = p
                    .classes(ClassSelector::Files)
                    .map_err(|_| Error::BadPlan("promotion needs a rectangle poset".into()))?;
                Ok(files.classes.into_iter().flatten().collect())
            }
            TogglePlan::Custom(xs) => {
                if xs.is_empty() {
                    return Err(Error::BadPlan("plan is empty".into()));
                }
                for &x in xs {
                    p.check(x).map_err(|e| Error::BadPlan(e.to_string()))?;
                }
                Ok(xs.clone())
            }
        }
    }

    pub fn is_preset(&self) -> bool {
        !matches!(self, TogglePlan::Custom(_))
    }

    /// `rowmotion`, `promotion`, or `plan:` followed by element labels.
    pub fn describe(&self, p: &Poset) -> String {
        match self {
            TogglePlan::Rowmotion => "rowmotion".into(),
            TogglePlan::Promotion => "promotion".into(),
            TogglePlan::Custom(xs) => {
                let names: Vec<String> = xs.iter().map(|&x| p.label(x)).collect();
                format!("plan:{}", names.join(","))
            }
        }
    }
}

/// Applies every toggle of `plan` in order.
pub fn apply_plan(p: &Poset, ideal: &OrderIdeal, plan: &TogglePlan) -> Result<OrderIdeal> {
    let seq = plan.resolve(p)?;
    Ok(apply_sequence(p, ideal, &seq))
}

pub(crate) fn apply_sequence(p: &Poset, ideal: &OrderIdeal, seq: &[Element]) -> OrderIdeal {
    let mut bits = ideal.0.clone();
    for &x in seq {
        toggle_in_place(p, &mut bits, x);
    }
    OrderIdeal(bits)
}

/// `α₁`: complement.
pub fn alpha1(p: &Poset, ideal: &OrderIdeal) -> Filter {
    let mut bits = ideal.0.clone();
    bits.toggle_range(..p.size());
    Filter(bits)
}

/// `α₂`: minimal elements of a filter.
pub fn alpha2(p: &Poset, filter: &Filter) -> Antichain {
    let mut bits = FixedBitSet::with_capacity(p.size());
    for x in filter.0.ones() {
        if p.lower_covers(Element(x)).iter().all(|y| !filter.0.contains(y.0)) {
            bits.insert(x);
        }
    }
    Antichain(bits)
}

/// `α₃`: downward saturation of an antichain.
pub fn alpha3(p: &Poset, antichain: &Antichain) -> OrderIdeal {
    let mut bits = FixedBitSet::with_capacity(p.size());
    for x in antichain.0.ones() {
        bits.union_with(p.down_set(Element(x)));
    }
    OrderIdeal(bits)
}

/// Maximal elements of an ideal (the inverse of `α₃`).
pub fn maximal_elements(p: &Poset, ideal: &OrderIdeal) -> Antichain {
    let mut bits = FixedBitSet::with_capacity(p.size());
    for x in ideal.0.ones() {
        if p.upper_covers(Element(x)).iter().all(|y| !ideal.0.contains(y.0)) {
            bits.insert(x);
        }
    }
    Antichain(bits)
}

/// Every order ideal of `p` exactly once, in a deterministic order.
///
/// Fails with [`Error::SizeGuard`] as soon as more than `limit` ideals exist.
pub fn all_ideals(p: &Poset, limit: usize) -> Result<Vec<OrderIdeal>> {
    if let Some((a, b)) = p.dims() {
        if binomial(a + b, a).is_none_or(|c| c > limit as u128) {
            return Err(Error::SizeGuard { limit });
        }
    }
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut bits = FixedBitSet::with_capacity(p.size());
    enumerate(p, order, 0, &mut bits, &mut out, limit)?;
    Ok(out)
}

fn enumerate(
    p: &Poset,
    order: &[Element],
    depth: usize,
    bits: &mut FixedBitSet,
    out: &mut Vec<OrderIdeal>,
    limit: usize,
) -> Result<()> {
    if depth == order.len() {
        if out.len() == limit {
            return Err(Error::SizeGuard { limit });
        }
        out.push(OrderIdeal(bits.clone()));
        return Ok(());
    }
    let x = order[depth];
    enumerate(p, order, depth + 1, bits, out, limit)?;
    if p.lower_covers(x).iter().all(|y| bits.contains(y.0)) {
        bits.insert(x.0);
        enumerate(p, order, depth + 1, bits, out, limit)?;
        bits.set(x.0, false);
    }
    Ok(())
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc.checked_mul((n - t) as u128)? / (t as u128 + 1);
    }
    Some(acc)
}
