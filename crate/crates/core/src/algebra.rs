//! The five-operation algebra that toggles are written in.
//!
//! A toggle only ever uses a unit, a series sum, a parallel sum, a product
//! and a quotient. Reading those as `(0, max, min, +, -)` gives the
//! piecewise-linear maps; reading them as `(1, +, ∥, ×, ÷)` with
//! `x ∥ y = xy/(x+y)` gives the birational maps.

use num_traits::{Signed, Zero};

use crate::rational::{self, Q};

pub trait ToggleAlgebra: Copy + Send + Sync + 'static {
    const NAME: &'static str;

    fn unit(&self) -> Q;

    /// Whether `x` belongs to the carrier.
    fn is_valid(&self, x: &Q) -> bool;

    fn ser(&self, x: &Q, y: &Q) -> Q;

    /// `None` when the parallel sum is undefined (birational `x + y = 0`).
    fn par(&self, x: &Q, y: &Q) -> Option<Q>;

    fn mul(&self, x: &Q, y: &Q) -> Q;

    /// `None` on division by zero.
    fn div(&self, x: &Q, y: &Q) -> Option<Q>;

    /// `x` raised to a coefficient: `e·x` tropically, `x^e` birationally.
    /// `None` if the exponent is not admissible or the power is singular.
    fn pow(&self, x: &Q, e: &Q) -> Option<Q>;

    /// Exact `n`-th root: `x / n` tropically, the rational root birationally.
    fn root(&self, x: &Q, n: u32) -> Option<Q>;

    /// Whether statistics are read additively (`true`) or multiplicatively.
    fn is_additive(&self) -> bool;

    /// Series fold; the empty fold is the unit.
    fn ser_fold<'a>(&self, xs: impl IntoIterator<Item = &'a Q>) -> Q {
        let mut it = xs.into_iter();
        match it.next() {
            None => self.unit(),
            Some(first) => it.fold(first.clone(), |acc, x| self.ser(&acc, x)),
        }
    }

    /// Parallel fold; the empty fold is the unit.
    fn par_fold<'a>(&self, xs: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
        let mut it = xs.into_iter();
        match it.next() {
            None => Some(self.unit()),
            Some(first) => it.try_fold(first.clone(), |acc, x| self.par(&acc, x)),
        }
    }

    fn mul_fold<'a>(&self, xs: impl IntoIterator<Item = &'a Q>) -> Q {
        xs.into_iter().fold(self.unit(), |acc, x| self.mul(&acc, x))
    }
}

/// Max-plus reading: unit 0, `ser = max`, `par = min`, `mul = +`, `div = -`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Tropical;

/// Subtraction-free reading on positive rationals.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Birational;

impl ToggleAlgebra for Tropical {
    const NAME: &'static str = "tropical";

    fn unit(&self) -> Q {
        rational::zero()
    }

    fn is_valid(&self, _: &Q) -> bool {
        true
    }

    fn ser(&self, x: &Q, y: &Q) -> Q {
        x.max(y).clone()
    }

    fn par(&self, x: &Q, y: &Q) -> Option<Q> {
        Some(x.min(y).clone())
    }

    fn mul(&self, x: &Q, y: &Q) -> Q {
        x + y
    }

    fn div(&self, x: &Q, y: &Q) -> Option<Q> {
        Some(x - y)
    }

    fn pow(&self, x: &Q, e: &Q) -> Option<Q> {
        Some(x * e)
    }

    fn root(&self, x: &Q, n: u32) -> Option<Q> {
        (n > 0).then(|| x / rational::int(n as i64))
    }

    fn is_additive(&self) -> bool {
        true
    }
}

impl ToggleAlgebra for Birational {
    const NAME: &'static str = "birational";

    fn unit(&self) -> Q {
        rational::one()
    }

    fn is_valid(&self, x: &Q) -> bool {
        x.is_positive()
    }

    fn ser(&self, x: &Q, y: &Q) -> Q {
        x + y
    }

    fn par(&self, x: &Q, y: &Q) -> Option<Q> {
        let s = x + y;
        (!s.is_zero()).then(|| x * y / s)
    }

    fn mul(&self, x: &Q, y: &Q) -> Q {
        x * y
    }

    fn div(&self, x: &Q, y: &Q) -> Option<Q> {
        (!y.is_zero()).then(|| x / y)
    }

    fn pow(&self, x: &Q, e: &Q) -> Option<Q> {
        if !e.is_integer() {
            return None;
        }
        let e: i64 = e.to_integer().try_into().ok()?;
        rational::powi(x, e)
    }

    fn root(&self, x: &Q, n: u32) -> Option<Q> {
        rational::nth_root(x, n)
    }

    fn is_additive(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn q() -> impl Strategy<Value = Q> {
        (-50i64..=50, 1i64..=50).prop_map(|(n, d)| frac(n, d))
    }

    fn pos() -> impl Strategy<Value = Q> {
        (1i64..=50, 1i64..=50).prop_map(|(n, d)| frac(n, d))
    }

    #[test]
    fn units_and_empty_folds() {
        assert_eq!(Tropical.unit(), int(0));
        assert_eq!(Birational.unit(), int(1));
        assert_eq!(Birational.ser_fold([]), int(1));
        assert_eq!(Birational.par_fold([]), Some(int(1)));
        assert_eq!(Tropical.par_fold([]), Some(int(0)));
    }

    #[test]
    fn birational_singularities() {
        assert_eq!(Birational.par(&int(1), &int(-1)), None);
        assert_eq!(Birational.div(&int(1), &int(0)), None);
        assert_eq!(Birational.par(&int(2), &int(2)), Some(int(1)));
        assert_eq!(Birational.pow(&int(2), &frac(1, 2)), None);
        assert_eq!(Birational.pow(&int(2), &int(-2)), Some(frac(1, 4)));
        assert_eq!(Tropical.pow(&int(2), &frac(1, 2)), Some(int(1)));
        assert!(!Birational.is_valid(&int(0)));
    }

    proptest! {
        #[test]
        fn ser_par_commute_and_associate(x in pos(), y in pos(), z in pos()) {
            for_both(|alg| {
                assert_eq!(alg.0(&x, &y), alg.0(&y, &x));
                assert_eq!(alg.0(&alg.0(&x, &y), &z), alg.0(&x, &alg.0(&y, &z)));
                assert_eq!(alg.1(&x, &y), alg.1(&y, &x));
                assert_eq!(alg.1(&alg.1(&x, &y).unwrap(), &z), alg.1(&x, &alg.1(&y, &z).unwrap()));
            });
        }

        #[test]
        fn duality_birational(x in pos(), y in pos()) {
            let b = Birational;
            prop_assert_eq!(b.mul(&b.par(&x, &y).unwrap(), &b.ser(&x, &y)), b.mul(&x, &y));
        }

        #[test]
        fn duality_tropical(x in q(), y in q()) {
            let t = Tropical;
            prop_assert_eq!(t.mul(&t.par(&x, &y).unwrap(), &t.ser(&x, &y)), t.mul(&x, &y));
        }

        #[test]
        fn reciprocity(xs in proptest::collection::vec(pos(), 1..6)) {
            let b = Birational;
            let par = b.par_fold(&xs).unwrap();
            let recips: Vec<Q> = xs.iter().map(|x| x.recip()).collect();
            prop_assert_eq!(par * b.ser_fold(&recips), int(1));
        }
    }

    type Ops = (fn(&Q, &Q) -> Q, fn(&Q, &Q) -> Option<Q>);

    fn for_both(check: impl Fn(Ops)) {
        check((|x, y| Tropical.ser(x, y), |x, y| Tropical.par(x, y)));
        check((|x, y| Birational.ser(x, y), |x, y| Birational.par(x, y)));
    }
}
