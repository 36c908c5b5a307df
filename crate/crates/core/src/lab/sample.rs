use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Setting;
use crate::array::LabeledArray;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::rational::{frac, Q};

const MAX_DENOMINATOR: i64 = 50;

/// The random stream for sample `index` under `seed`. Streams are
/// independent of each other and of how many samples run in parallel.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn positive(rng: &mut ChaCha8Rng) -> Q {
    frac(
        rng.random_range(1..=MAX_DENOMINATOR),
        rng.random_range(1..=MAX_DENOMINATOR),
    )
}

fn signed(rng: &mut ChaCha8Rng) -> Q {
    frac(
        rng.random_range(-MAX_DENOMINATOR..=MAX_DENOMINATOR),
        rng.random_range(1..=MAX_DENOMINATOR),
    )
}

fn unit(rng: &mut ChaCha8Rng) -> Q {
    let d = rng.random_range(1..=MAX_DENOMINATOR);
    frac(rng.random_range(0..=d), d)
}

/// Draws a random array for `setting`.
///
/// Birational entries are `n/d` with `1 <= n, d <= 50`; homogeneous
/// piecewise-linear entries allow `-50 <= n <= 50`. Points of the order
/// polytope take a random `r_x` in `[0, 1]` at each element and set
/// `f(x) = max { r_y : y <= x }`.
pub fn sample_array(p: &Poset, setting: Setting, rng: &mut ChaCha8Rng) -> Result<LabeledArray> {
    let profile = setting
        .profile()
        .ok_or_else(|| Error::Unsupported("the combinatorial setting has no arrays to sample".into()))?;
    let values = match setting {
        Setting::Birational => p.elements().map(|_| positive(rng)).collect(),
        Setting::PlHomog => p.elements().map(|_| signed(rng)).collect(),
        Setting::PlUnit => {
            let mut out: Vec<Q> = p.elements().map(|_| unit(rng)).collect();
            for &x in p.linear_extension() {
                for &y in p.lower_covers(x) {
                    if out[y.index()] > out[x.index()] {
                        out[x.index()] = out[y.index()].clone();
                    }
                }
            }
            out
        }
        Setting::Combinatorial => unreachable!(),
    };
    LabeledArray::with_profile(p, profile, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{in_polytope, Polytope};
    use crate::rational::{int, zero};

    #[test]
    fn samples_respect_their_setting() {
        let p = Poset::rect(3, 4).unwrap();
        for i in 0..50 {
            let mut rng = sample_rng(9, i);
            let u = sample_array(&p, Setting::PlUnit, &mut rng).unwrap();
            assert!(in_polytope(&p, &u.values, Polytope::Order));
            let b = sample_array(&p, Setting::Birational, &mut rng).unwrap();
            assert!(b.values.iter().all(|v| *v > zero() && *v <= int(50)));
            let h = sample_array(&p, Setting::PlHomog, &mut rng).unwrap();
            assert!(h.values.iter().all(|v| *v >= int(-50) && *v <= int(50)));
        }
        assert!(sample_array(&p, Setting::Combinatorial, &mut sample_rng(0, 0)).is_err());
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let p = Poset::rect(2, 3).unwrap();
        let a = sample_array(&p, Setting::Birational, &mut sample_rng(5, 1)).unwrap();
        let b = sample_array(&p, Setting::Birational, &mut sample_rng(5, 1)).unwrap();
        let c = sample_array(&p, Setting::Birational, &mut sample_rng(5, 2)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
