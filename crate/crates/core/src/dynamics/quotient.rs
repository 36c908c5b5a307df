use serde::Serialize;

use super::apply_sequence;
use crate::algebra::ToggleAlgebra;
use crate::array::LabeledArray;
use crate::error::{Error, Result};
use crate::poset::{Element, Poset};
use crate::rational::{self, Q};

/// File aggregates `p_1..p_{n-1}` and their successive quotients `q_1..q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSequence {
    #[serde(with = "rational::vec")]
    pub p: Vec<Q>,
    #[serde(with = "rational::vec")]
    pub q: Vec<Q>,
}

/// `p_i` multiplies the values on file `i`; with `p_0 = p_n = 1` each
/// `q_i = p_i / p_{i-1}`.
pub fn quotient_sequence<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray) -> Result<QuotientSequence> {
    let files = p.classes(crate::poset::ClassSelector::Files)?.classes;
    let mut agg = vec![alg.unit()];
    agg.extend(files.iter().map(|file| alg.mul_fold(file.iter().map(|&x| f.get(x)))));
    agg.push(alg.unit());
    let q = agg
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            alg.div(&w[1], &w[0]).ok_or_else(|| Error::Singular {
                element: format!("file {i}"),
                detail: "file product is zero".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p_inner = agg[1..agg.len() - 1].to_vec();
    Ok(QuotientSequence { p: p_inner, q })
}

/// Toggles every element of file `i`. No two elements of a file form a
/// cover, so the order does not matter.
pub fn file_toggle<A: ToggleAlgebra>(alg: A, p: &Poset, f: &LabeledArray, i: usize) -> Result<LabeledArray> {
    let files = p.classes(crate::poset::ClassSelector::Files)?.classes;
    if i == 0 || i > files.len() {
        return Err(Error::FileIndex {
            index: i,
            max: files.len(),
        });
    }
    let seq: Vec<Element> = files[i - 1].clone();
    apply_sequence(alg, p, f, &seq)
}
