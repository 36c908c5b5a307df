//! Finite posets, with first-class support for the rectangle `[a] x [b]`.
//!
//! Elements are indices into a canonical enumeration. For a rectangle the
//! enumeration runs over `j` first and `i` second, so `[2] x [2]` is listed as
//! `(1,1), (2,1), (1,2), (2,2)`. Boundary elements `0̂` and `1̂` are never
//! stored; they appear only as [`Neighbor::Bottom`] and [`Neighbor::Top`].

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element in its poset's canonical enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Coordinates `(i, j)` of a rectangle element, 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A neighbour in the augmented poset `P̂`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Neighbor {
    Bottom,
    Top,
    Elem(Element),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PosetKind {
    Rect { a: usize, b: usize },
    General,
}

/// Serialized form of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PosetSpec {
    Rect { a: usize, b: usize },
    General { size: usize, covers: Vec<[usize; 2]> },
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        match self {
            PosetSpec::Rect { a, b } => Poset::rect(*a, *b),
            PosetSpec::General { size, covers } => {
                let pairs: Vec<(usize, usize)> = covers.iter().map(|c| (c[0], c[1])).collect();
                Poset::general(*size, &pairs)
            }
        }
    }
}

/// Which partition of `P` to produce.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSelector {
    Ranks,
    Files,
    NegativeFibers,
    PositiveFibers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClassSet {
    pub selector: ClassSelector,
    pub classes: Vec<Vec<Element>>,
}

/// Immutable finite poset given by its cover relation.
#[derive(Clone, Debug)]
pub struct Poset {
    kind: PosetKind,
    lower: Vec<Vec<Element>>,
    upper: Vec<Vec<Element>>,
    rank: Option<Vec<usize>>,
    /// `below[x]` holds every `y` with `y <= x`.
    below: Vec<FixedBitSet>,
    linear_extension: Vec<Element>,
}

impl Poset {
    /// The product of chains `[a] x [b]`.
    pub fn rect(a: usize, b: usize) -> Result<Poset> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidDimensions { a, b });
        }
        let idx = |i: usize, j: usize| (j - 1) * a + (i - 1);
        let size = a * b;
        let mut covers = Vec::with_capacity(a * (b - 1) + b * (a - 1));
        for j in 1..=b {
            for i in 1..=a {
                if i < a {
                    covers.push((idx(i, j), idx(i + 1, j)));
                }
                if j < b {
                    covers.push((idx(i, j), idx(i, j + 1)));
                }
            }
        }
        let mut p = Self::from_covers(size, &covers)?;
        p.kind = PosetKind::Rect { a, b };
        Ok(p)
    }

    /// A general poset on elements `0..size` from its cover pairs `(lower, upper)`.
    pub fn general(size: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let p = Self::from_covers(size, covers)?;
        for &(x, y) in covers {
            // A cover must not be implied by a longer path.
            let implied = p.upper[x].iter().any(|&z| z.0 != y && p.below[y].contains(z.0));
            if implied {
                return Err(Error::InvalidPoset(format!(
                    "relation {x} < {y} is not a cover (not transitively reduced)"
                )));
            }
        }
        Ok(p)
    }

    fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if size == 0 {
            return Err(Error::InvalidPoset("empty poset".into()));
        }
        let mut lower = vec![Vec::new(); size];
        let mut upper = vec![Vec::new(); size];
        for &(x, y) in covers {
            if x >= size || y >= size {
                return Err(Error::InvalidPoset(format!("cover ({x},{y}) out of range")));
            }
            if x == y {
                return Err(Error::InvalidPoset(format!("self-cover at {x}")));
            }
            if upper[x].contains(&Element(y)) {
                return Err(Error::InvalidPoset(format!("duplicate cover ({x},{y})")));
            }
            upper[x].push(Element(y));
            lower[y].push(Element(x));
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort();
        }

        // Kahn's algorithm, smallest index first for determinism.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(size);
        while let Some(x) = ready.pop_first() {
            order.push(Element(x));
            for &y in &upper[x] {
                indeg[y.0] -= 1;
                if indeg[y.0] == 0 {
                    ready.insert(y.0);
                }
            }
        }
        if order.len() != size {
            return Err(Error::InvalidPoset("cover relation has a cycle".into()));
        }

        let mut below = vec![FixedBitSet::with_capacity(size); size];
        for &x in &order {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(x.0);
            for &y in &lower[x.0] {
                set.union_with(&below[y.0]);
            }
            below[x.0] = set;
        }

        // Graded iff every cover raises the longest-path rank by exactly one.
        let mut rank = vec![0usize; size];
        for &x in &order {
            rank[x.0] = lower[x.0].iter().map(|y| rank[y.0] + 1).max().unwrap_or(0);
        }
        let graded = covers.iter().all(|&(x, y)| rank[y] == rank[x] + 1)
            && (0..size).all(|x| !lower[x].is_empty() || rank[x] == 0);

        let mut linear_extension = order;
        if graded {
            linear_extension.sort_by_key(|e| (rank[e.0], e.0));
        }

        Ok(Poset {
            kind: PosetKind::General,
            lower,
            upper,
            rank: graded.then_some(rank),
            below,
            linear_extension,
        })
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn spec(&self) -> PosetSpec {
        match self.kind {
            PosetKind::Rect { a, b } => PosetSpec::Rect { a, b },
            PosetKind::General => PosetSpec::General {
                size: self.size(),
                covers: self.covers().map(|(x, y)| [x.0, y.0]).collect(),
            },
        }
    }

    pub fn size(&self) -> usize {
        self.lower.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(Element)
    }

    /// `(a, b)` for rectangles.
    pub fn dims(&self) -> Option<(usize, usize)> {
        match self.kind {
            PosetKind::Rect { a, b } => Some((a, b)),
            PosetKind::General => None,
        }
    }

    /// `n = a + b` for rectangles.
    pub fn n(&self) -> Option<usize> {
        self.dims().map(|(a, b)| a + b)
    }

    fn rect_dims(&self, op: &'static str) -> Result<(usize, usize)> {
        self.dims().ok_or(Error::NotRectangle(op))
    }

    pub fn check(&self, x: Element) -> Result<()> {
        if x.0 < self.size() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{}", x.0)))
        }
    }

    /// Every cover pair `x ⋖ y` of `P`, ordered by `x` then `y`.
    pub fn covers(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (Element(x), y)))
    }

    pub fn lower_covers(&self, x: Element) -> &[Element] {
        &self.lower[x.0]
    }

    pub fn upper_covers(&self, x: Element) -> &[Element] {
        &self.upper[x.0]
    }

    /// Covers of `x` in `P̂`. With `include_boundary`, minimal elements report
    /// `0̂` below and maximal elements report `1̂` above.
    pub fn neighbors(&self, x: Element, dir: Direction, include_boundary: bool) -> Result<Vec<Neighbor>> {
        self.check(x)?;
        let (inner, boundary) = match dir {
            Direction::Up => (&self.upper[x.0], Neighbor::Top),
            Direction::Down => (&self.lower[x.0], Neighbor::Bottom),
        };
        let mut out: Vec<Neighbor> = inner.iter().map(|&y| Neighbor::Elem(y)).collect();
        if include_boundary && out.is_empty() {
            out.push(boundary);
        }
        Ok(out)
    }

    /// `x <= y`.
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.below[y.0].contains(x.0)
    }

    pub fn comparable(&self, x: Element, y: Element) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// All `y <= x`, as a bitset over element indices.
    pub fn down_set(&self, x: Element) -> &FixedBitSet {
        &self.below[x.0]
    }

    pub fn is_graded(&self) -> bool {
        self.rank.is_some()
    }

    pub fn rank(&self, x: Element) -> Option<usize> {
        self.rank.as_ref().map(|r| r[x.0])
    }

    /// Largest rank `r`; the poset has ranks `0..=r`.
    pub fn max_rank(&self) -> Option<usize> {
        self.rank.as_ref().map(|r| r.iter().copied().max().unwrap_or(0))
    }

    /// Elements sorted by rank, then index (a topological order for ungraded posets).
    pub fn linear_extension(&self) -> &[Element] {
        &self.linear_extension
    }

    pub fn cell(&self, x: Element) -> Option<Cell> {
        let (a, _) = self.dims()?;
        Some(Cell {
            i: x.0 % a + 1,
            j: x.0 / a + 1,
        })
    }

    pub fn element_at(&self, i: usize, j: usize) -> Result<Element> {
        let (a, b) = self.rect_dims("coordinate lookup")?;
        if !(1..=a).contains(&i) || !(1..=b).contains(&j) {
            return Err(Error::UnknownElement(format!("({i},{j})")));
        }
        Ok(Element((j - 1) * a + (i - 1)))
    }

    /// File index `j - i + a`, in `1..=n-1`.
    pub fn file(&self, x: Element) -> Option<usize> {
        let (a, _) = self.dims()?;
        let c = self.cell(x)?;
        Some(c.j + a - c.i)
    }

    /// Position `(j - i, i + j - 2)` in the rc embedding.
    pub fn rc_position(&self, x: Element) -> Option<(i64, i64)> {
        let c = self.cell(x)?;
        Some((c.j as i64 - c.i as i64, (c.i + c.j) as i64 - 2))
    }

    /// Human-readable name: `(i,j)` for rectangles, `#k` otherwise.
    pub fn label(&self, x: Element) -> String {
        match self.cell(x) {
            Some(c) => c.to_string(),
            None => format!("#{}", x.0),
        }
    }

    /// `(a + 1 - i, b + 1 - j)`.
    pub fn opposite(&self, x: Element) -> Result<Element> {
        let (a, b) = self.rect_dims("opposite")?;
        self.check(x)?;
        let c = self.cell(x).expect("rectangle");
        self.element_at(a + 1 - c.i, b + 1 - c.j)
    }

    pub fn classes(&self, selector: ClassSelector) -> Result<ElementClassSet> {
        let classes = match selector {
            ClassSelector::Ranks => {
                let r = self.max_rank().ok_or(Error::NotGraded("rank classes"))?;
                let mut out = vec![Vec::new(); r + 1];
                for x in self.elements() {
                    out[self.rank(x).unwrap()].push(x);
                }
                out
            }
            ClassSelector::Files => {
                let (a, b) = self.rect_dims("file classes")?;
                let mut out = vec![Vec::new(); a + b - 1];
                for x in self.elements() {
                    out[self.file(x).unwrap() - 1].push(x);
                }
                out
            }
            ClassSelector::NegativeFibers => {
                let (a, b) = self.rect_dims("fiber classes")?;
                (1..=b)
                    .map(|j| (1..=a).map(|i| self.element_at(i, j).unwrap()).collect())
                    .collect()
            }
            ClassSelector::PositiveFibers => {
                let (a, b) = self.rect_dims("fiber classes")?;
                (1..=a)
                    .map(|i| (1..=b).map(|j| self.element_at(i, j).unwrap()).collect())
                    .collect()
            }
        };
        Ok(ElementClassSet { selector, classes })
    }

    /// Every maximal chain of `P`, listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        let mut queue: VecDeque<Vec<Element>> = self
            .elements()
            .filter(|&x| self.lower[x.0].is_empty())
            .map(|x| vec![x])
            .collect();
        while let Some(chain) = queue.pop_front() {
            let last = *chain.last().unwrap();
            if self.upper[last.0].is_empty() {
                out.push(chain);
                continue;
            }
            for &y in &self.upper[last.0] {
                let mut next = chain.clone();
                next.push(y);
                queue.push_back(next);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(p: &Poset, xs: &[Element]) -> Vec<(usize, usize)> {
        xs.iter()
            .map(|&x| {
                let c = p.cell(x).unwrap();
                (c.i, c.j)
            })
            .collect()
    }

    #[test]
    fn rect_2x2_matches_wxyz() {
        let p = Poset::rect(2, 2).unwrap();
        assert_eq!(p.size(), 4);
        let [w, x, y, z] = [(1, 1), (2, 1), (1, 2), (2, 2)].map(|(i, j)| p.element_at(i, j).unwrap());
        assert_eq!([w, x, y, z], [Element(0), Element(1), Element(2), Element(3)]);
        let covers: Vec<_> = p.covers().collect();
        assert_eq!(covers, vec![(w, x), (w, y), (x, z), (y, z)]);
        assert_eq!(p.n(), Some(4));
    }

    #[test]
    fn rect_1x1_and_rejects_zero() {
        let p = Poset::rect(1, 1).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(p.covers().count(), 0);
        assert_eq!(Poset::rect(0, 2).unwrap_err(), Error::InvalidDimensions { a: 0, b: 2 });
        assert!(Poset::rect(3, 0).is_err());
    }

    #[test]
    fn rect_3x4_file_and_rank() {
        let p = Poset::rect(3, 4).unwrap();
        assert_eq!(p.size(), 12);
        let e = p.element_at(1, 1).unwrap();
        assert_eq!(p.file(e), Some(3));
        assert_eq!(p.rank(e), Some(0));
        // Labels from the standard rc picture of [3]x[4].
        assert_eq!(p.file(p.element_at(3, 1).unwrap()), Some(1));
        assert_eq!(p.file(p.element_at(1, 4).unwrap()), Some(6));
        assert_eq!(p.rank(p.element_at(3, 4).unwrap()), Some(5));
        assert_eq!(p.max_rank(), Some(5));
    }

    #[test]
    fn neighbors_with_and_without_boundary() {
        let p = Poset::rect(2, 2).unwrap();
        let w = p.element_at(1, 1).unwrap();
        let z = p.element_at(2, 2).unwrap();
        let up = p.neighbors(w, Direction::Up, false).unwrap();
        assert_eq!(up, vec![Neighbor::Elem(Element(1)), Neighbor::Elem(Element(2))]);
        assert_eq!(p.neighbors(z, Direction::Up, true).unwrap(), vec![Neighbor::Top]);
        assert_eq!(p.neighbors(z, Direction::Up, false).unwrap(), vec![]);
        assert_eq!(p.neighbors(w, Direction::Down, true).unwrap(), vec![Neighbor::Bottom]);
        assert!(p.neighbors(Element(9), Direction::Up, true).is_err());

        let q = Poset::rect(3, 4).unwrap();
        let down = q.neighbors(q.element_at(2, 2).unwrap(), Direction::Down, true).unwrap();
        let mut got: Vec<_> = down
            .into_iter()
            .map(|n| match n {
                Neighbor::Elem(e) => q.cell(e).unwrap(),
                _ => panic!("unexpected boundary"),
            })
            .map(|c| (c.i, c.j))
            .collect();
        got.sort();
        assert_eq!(got, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn class_partitions() {
        let p = Poset::rect(2, 2).unwrap();
        let files = p.classes(ClassSelector::Files).unwrap();
        assert_eq!(
            files.classes.iter().map(|c| cells(&p, c)).collect::<Vec<_>>(),
            vec![vec![(2, 1)], vec![(1, 1), (2, 2)], vec![(1, 2)]]
        );
        let ranks = p.classes(ClassSelector::Ranks).unwrap();
        assert_eq!(
            ranks.classes.iter().map(|c| cells(&p, c)).collect::<Vec<_>>(),
            vec![vec![(1, 1)], vec![(2, 1), (1, 2)], vec![(2, 2)]]
        );
        let q = Poset::rect(3, 3).unwrap();
        let neg = q.classes(ClassSelector::NegativeFibers).unwrap();
        assert_eq!(
            neg.classes.iter().map(|c| cells(&q, c)).collect::<Vec<_>>(),
            vec![
                vec![(1, 1), (2, 1), (3, 1)],
                vec![(1, 2), (2, 2), (3, 2)],
                vec![(1, 3), (2, 3), (3, 3)]
            ]
        );
    }

    #[test]
    fn opposite_examples() {
        let p = Poset::rect(2, 2).unwrap();
        let op = |i, j| p.cell(p.opposite(p.element_at(i, j).unwrap()).unwrap()).unwrap();
        assert_eq!(op(2, 1), Cell { i: 1, j: 2 });
        assert_eq!(op(1, 1), Cell { i: 2, j: 2 });
        let q = Poset::rect(3, 4).unwrap();
        let x = q.opposite(q.element_at(2, 2).unwrap()).unwrap();
        assert_eq!(q.cell(x), Some(Cell { i: 2, j: 3 }));
    }

    #[test]
    fn general_poset_validation() {
        // Diamond.
        let p = Poset::general(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(p.is_graded());
        assert_eq!(p.kind(), PosetKind::General);
        assert!(p.classes(ClassSelector::Files).is_err());
        assert!(p.opposite(Element(0)).is_err());
        assert!(Poset::general(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::general(3, &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(Poset::general(2, &[(0, 5)]).is_err());
        // Not graded: 0 < 1 < 2 and 0 < 2 would be reduced, so use 0<1<2, 3<2.
        let q = Poset::general(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert!(!q.is_graded());
        assert!(q.classes(ClassSelector::Ranks).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = Poset::rect(3, 2).unwrap().spec();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"rect","a":3,"b":2}"#);
        let back: PosetSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap().dims(), Some((3, 2)));
        let g = Poset::general(3, &[(0, 1), (0, 2)]).unwrap().spec();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"kind":"general","size":3,"covers":[[0,1],[0,2]]}"#);
    }

    #[test]
    fn maximal_chains_of_rectangle_are_lattice_paths() {
        let p = Poset::rect(3, 3).unwrap();
        assert_eq!(p.maximal_chains().len(), 6); // C(4,2)
        assert!(p.maximal_chains().iter().all(|c| c.len() == 5));
    }

    proptest::proptest! {
        #[test]
        fn rectangle_invariants(a in 1usize..6, b in 1usize..6) {
            let p = Poset::rect(a, b).unwrap();
            proptest::prop_assert_eq!(p.size(), a * b);
            proptest::prop_assert_eq!(p.covers().count(), a * (b - 1) + b * (a - 1));
            let mut seen = std::collections::HashSet::new();
            for x in p.elements() {
                let o = p.opposite(x).unwrap();
                proptest::prop_assert_eq!(p.opposite(o).unwrap(), x);
                let c = p.cell(x).unwrap();
                proptest::prop_assert_eq!(p.rank(x), Some(c.i + c.j - 2));
                proptest::prop_assert!(seen.insert(p.rc_position(x).unwrap()));
            }
            for (x, y) in p.covers() {
                let (x0, y0) = p.rc_position(x).unwrap();
                let (x1, y1) = p.rc_position(y).unwrap();
                proptest::prop_assert_eq!(y1 - y0, 1);
                proptest::prop_assert_eq!((x1 - x0).abs(), 1);
            }
            for sel in [ClassSelector::Ranks, ClassSelector::Files] {
                let cls = p.classes(sel).unwrap();
                proptest::prop_assert_eq!(cls.classes.iter().map(Vec::len).sum::<usize>(), a * b);
                for class in &cls.classes {
                    for &u in class {
                        for &v in class {
                            proptest::prop_assert!(!p.upper_covers(u).contains(&v));
                            if sel == ClassSelector::Ranks {
                                proptest::prop_assert!(u == v || !p.comparable(u, v));
                            }
                        }
                    }
                }
            }
        }
    }
}
