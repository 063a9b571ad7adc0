//! Affine Cartan data for the eight type labels.
//!
//! Indices run over `0..=n`. Matrices are stored row-major with
//! `matrix[i][j] = a_ij = <alpha_i^vee, alpha_j>`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// The affine families handled by the crate.
///
/// `A2dag` is the transpose of `A2even`, kept as a separate label because
/// only the transposed form carries a geometric chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Family {
    A1,
    B1,
    C1,
    D1,
    A2odd,
    D2,
    A2even,
    A2dag,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A1,
        Family::B1,
        Family::C1,
        Family::D1,
        Family::A2odd,
        Family::D2,
        Family::A2even,
        Family::A2dag,
    ];

    /// Smallest admissible rank.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A1 | Family::C1 | Family::D2 | Family::A2even | Family::A2dag => 2,
            Family::B1 | Family::A2odd => 3,
            Family::D1 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A1 => "A1",
            Family::B1 => "B1",
            Family::C1 => "C1",
            Family::D1 => "D1",
            Family::A2odd => "A2odd",
            Family::D2 => "D2",
            Family::A2even => "A2even",
            Family::A2dag => "A2dag",
        }
    }

    /// Whether the family carries a geometric crystal chart.
    pub fn has_chart(self) -> bool {
        self != Family::A2even
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown type label `{0}`")]
pub struct UnknownFamily(pub alloc::string::String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFamily(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("rank {rank} is below the minimum {min} for {family}")]
    TooSmall { family: Family, rank: usize, min: usize },
}

/// A family together with its rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self, RankError> {
        let min = family.min_rank();
        if rank < min {
            return Err(RankError::TooSmall { family, rank, min });
        }
        Ok(TypeLabel { family, rank })
    }

    /// Size of the index set `I = {0, .., n}`.
    pub fn size(&self) -> usize {
        self.rank + 1
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.family, self.rank)
    }
}

/// The full static record for one type label.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CartanData {
    pub label: TypeLabel,
    pub matrix: Vec<Vec<i64>>,
    /// Coefficients of `delta` in the simple roots.
    pub marks: Vec<i64>,
    /// Coefficients of the canonical central element in the simple coroots.
    pub comarks: Vec<i64>,
    pub sigma: Option<Vec<usize>>,
    pub iota: Vec<usize>,
    /// Letters of the translation word; empty for `A2even`, which has no chart.
    pub word_w1: Vec<usize>,
    pub word_w2: Option<Vec<usize>>,
    pub dual: TypeLabel,
}

impl CartanData {
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn n(&self) -> usize {
        self.label.rank
    }

    /// `cl(alpha_i)` written in the fundamental weights: column `i`.
    pub fn cl_alpha(&self, i: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[i]).collect()
    }
}

fn entry(family: Family, n: usize, i: usize, j: usize) -> i64 {
    use Family::*;
    if i == j {
        return 2;
    }
    let adj = i.abs_diff(j) == 1;
    let inner = (1..n).contains(&i) && (1..n).contains(&j);
    let is = |p: usize, q: usize| (i, j) == (p, q);
    match family {
        A1 => {
            if (i + 1) % (n + 1) == j || (j + 1) % (n + 1) == i {
                -1
            } else {
                0
            }
        }
        B1 => {
            if is(n, n - 1) {
                -2
            } else if (adj && !is(0, 1) && !is(1, 0)) || is(0, 2) || is(2, 0) {
                -1
            } else {
                0
            }
        }
        C1 => match () {
            _ if is(1, 0) || is(n - 1, n) => -2,
            _ if adj => -1,
            _ => 0,
        },
        D1 => {
            if (adj && inner) || is(0, 2) || is(2, 0) || is(n - 2, n) || is(n, n - 2) {
                -1
            } else {
                0
            }
        }
        A2odd => {
            if is(n - 1, n) {
                -2
            } else if (adj && inner) || is(0, 2) || is(2, 0) || is(n, n - 1) {
                -1
            } else {
                0
            }
        }
        D2 => match () {
            _ if is(0, 1) || is(n, n - 1) => -2,
            _ if adj => -1,
            _ => 0,
        },
        A2even => match () {
            _ if is(0, 1) || is(n - 1, n) => -2,
            _ if adj => -1,
            _ => 0,
        },
        A2dag => entry(A2even, n, j, i),
    }
}

fn marks(family: Family, n: usize) -> Vec<i64> {
    use Family::*;
    (0..=n)
        .map(|i| match family {
            A1 | D2 => 1,
            B1 => if i <= 1 { 1 } else { 2 },
            C1 => if i == 0 || i == n { 1 } else { 2 },
            D1 => if i <= 1 || i >= n - 1 { 1 } else { 2 },
            A2odd => if i <= 1 || i == n { 1 } else { 2 },
            A2even => if i == n { 1 } else { 2 },
            A2dag => if i == 0 { 1 } else { 2 },
        })
        .collect()
}

fn comarks(family: Family, n: usize) -> Vec<i64> {
    use Family::*;
    (0..=n)
        .map(|i| match family {
            A1 | C1 => 1,
            B1 => if i <= 1 || i == n { 1 } else { 2 },
            D2 => if i == 0 || i == n { 1 } else { 2 },
            D1 => if i <= 1 || i >= n - 1 { 1 } else { 2 },
            A2odd => if i <= 1 { 1 } else { 2 },
            A2even => if i == 0 { 1 } else { 2 },
            A2dag => if i == n { 1 } else { 2 },
        })
        .collect()
}

fn sigma(family: Family, n: usize) -> Option<Vec<usize>> {
    use Family::*;
    match family {
        A1 => Some((0..=n).map(|k| (k + 1) % (n + 1)).collect()),
        B1 | D1 | A2odd => Some(swap01(n)),
        C1 | D2 => Some((0..=n).map(|k| n - k).collect()),
        A2even | A2dag => None,
    }
}

fn swap01(n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=n).collect();
    p.swap(0, 1);
    p
}

fn iota(family: Family, n: usize) -> Vec<usize> {
    use Family::*;
    match family {
        A1 | B1 | A2odd => sigma(family, n).expect("sigma exists"),
        D1 => {
            let mut p = swap01(n);
            p.swap(n - 1, n);
            p
        }
        C1 | D2 | A2even | A2dag => (0..=n).collect(),
    }
}

fn word_w1(family: Family, n: usize) -> Vec<usize> {
    use Family::*;
    let up = |hi: usize| (1..=hi).collect::<Vec<_>>();
    let down = |hi: usize| (1..=hi).rev().collect::<Vec<_>>();
    match family {
        A1 => down(n),
        B1 | A2odd => [up(n), down(n - 1)].concat(),
        C1 | D2 | A2dag => [alloc::vec![0], up(n), down(n - 1)].concat(),
        D1 => [up(n), down(n - 2)].concat(),
        A2even => Vec::new(),
    }
}

fn word_w2(family: Family, n: usize) -> Option<Vec<usize>> {
    (family == Family::A2dag).then(|| {
        let mut w: Vec<usize> = (0..=n).rev().collect();
        w.extend(1..n);
        w
    })
}

/// Pairs each family with its Langlands dual; ranks are preserved.
pub fn langlands_dual(t: TypeLabel) -> TypeLabel {
    use Family::*;
    let family = match t.family {
        A1 => A1,
        B1 => A2odd,
        A2odd => B1,
        C1 => D2,
        D2 => C1,
        D1 => D1,
        A2even => A2dag,
        A2dag => A2even,
    };
    TypeLabel { family, rank: t.rank }
}

/// Builds the Cartan record. Fails only on out-of-range ranks.
pub fn cartan_data(t: TypeLabel) -> Result<CartanData, RankError> {
    let t = TypeLabel::new(t.family, t.rank)?;
    let n = t.rank;
    let matrix = (0..=n)
        .map(|i| (0..=n).map(|j| entry(t.family, n, i, j)).collect())
        .collect();
    Ok(CartanData {
        label: t,
        matrix,
        marks: marks(t.family, n),
        comarks: comarks(t.family, n),
        sigma: sigma(t.family, n),
        iota: iota(t.family, n),
        word_w1: word_w1(t.family, n),
        word_w2: word_w2(t.family, n),
        dual: langlands_dual(t),
    })
}

/// Shorthand that panics on an invalid rank; meant for tests and fixed grids.
pub fn data(family: Family, rank: usize) -> CartanData {
    cartan_data(TypeLabel { family, rank }).expect("rank in range")
}

/// The `(a_ij, a_ji)` shape of a pair, used to pick a Verma relation.
pub fn pair_shape(cd: &CartanData, i: usize, j: usize) -> (i64, i64) {
    (cd.a(i, j), cd.a(j, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn every_label(max_rank: usize) -> impl Iterator<Item = TypeLabel> {
        Family::ALL.into_iter().flat_map(move |family| {
            (family.min_rank()..=max_rank).map(move |rank| TypeLabel { family, rank })
        })
    }

    #[test]
    fn a1_rank2_matrix() {
        let cd = data(Family::A1, 2);
        assert_eq!(cd.matrix, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(cd.marks, vec![1, 1, 1]);
        assert_eq!(cd.comarks, vec![1, 1, 1]);
    }

    #[test]
    fn b1_rank3_entries() {
        let cd = data(Family::B1, 3);
        assert_eq!(cd.a(3, 2), -2);
        assert_eq!(cd.a(2, 3), -1);
        assert_eq!(cd.a(0, 1), 0);
        assert_eq!(cd.a(0, 2), -1);
        assert_eq!(cd.marks, vec![1, 1, 2, 2]);
        assert_eq!(cd.comarks, vec![1, 1, 2, 1]);
    }

    #[test]
    fn words() {
        assert_eq!(data(Family::C1, 2).word_w1, vec![0, 1, 2, 1]);
        assert_eq!(data(Family::C1, 2).iota, vec![0, 1, 2]);
        assert_eq!(data(Family::A2dag, 2).word_w2, Some(vec![2, 1, 0, 1]));
        assert_eq!(data(Family::A1, 3).word_w1, vec![3, 2, 1]);
        assert_eq!(data(Family::B1, 3).word_w1, vec![1, 2, 3, 2, 1]);
        assert_eq!(data(Family::D1, 4).word_w1, vec![1, 2, 3, 4, 2, 1]);
        assert!(data(Family::A2even, 2).word_w1.is_empty());
    }

    #[test]
    fn rank_errors() {
        assert!(cartan_data(TypeLabel { family: Family::D1, rank: 3 }).is_err());
        assert!(cartan_data(TypeLabel { family: Family::B1, rank: 2 }).is_err());
        assert!(cartan_data(TypeLabel { family: Family::A1, rank: 2 }).is_ok());
    }

    #[test]
    fn duals() {
        let d = |f| langlands_dual(TypeLabel { family: f, rank: 3 }).family;
        assert_eq!(d(Family::B1), Family::A2odd);
        assert_eq!(d(Family::D1), Family::D1);
        assert_eq!(d(Family::C1), Family::D2);
        assert_eq!(d(Family::A2even), Family::A2dag);
        for t in every_label(6) {
            assert_eq!(langlands_dual(langlands_dual(t)), t);
        }
    }

    #[test]
    fn structural_invariants() {
        for t in every_label(6) {
            let cd = cartan_data(t).unwrap();
            let n = t.rank;
            for i in 0..=n {
                assert_eq!(cd.a(i, i), 2, "{t}");
                let row: i64 = (0..=n).map(|j| cd.a(i, j) * cd.marks[j]).sum();
                assert_eq!(row, 0, "{t} marks row {i}");
                let col: i64 = (0..=n).map(|j| cd.comarks[j] * cd.a(j, i)).sum();
                assert_eq!(col, 0, "{t} comarks column {i}");
                for j in 0..=n {
                    if i != j {
                        assert!([0, -1, -2].contains(&cd.a(i, j)), "{t} ({i},{j})");
                        assert_eq!(cd.a(i, j) == 0, cd.a(j, i) == 0, "{t}");
                    }
                }
            }
            let perms = cd.sigma.iter().chain(core::iter::once(&cd.iota));
            for p in perms {
                for i in 0..=n {
                    for j in 0..=n {
                        assert_eq!(cd.a(p[i], p[j]), cd.a(i, j), "{t} automorphism");
                    }
                }
            }
            let dual = cartan_data(cd.dual).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(dual.a(i, j), cd.a(j, i), "{t} dual transpose");
                }
            }
            for &letter in &cd.word_w1 {
                assert!(letter <= n);
            }
        }
    }
}
