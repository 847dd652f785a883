use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::num::q;

use super::RootDataError;

/// Which Kac-Moody axiom an entry violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// a_ii = 2
    I,
    /// a_ij ≤ 0 for i ≠ j
    II,
    /// a_ij = 0 ⟺ a_ji = 0
    III,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::I => "i",
            Axiom::II => "ii",
            Axiom::III => "iii",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NotKacMoody({},{},{})", self.axiom, self.i, self.j)
    }
}

/// Coarse type of a generalized Cartan matrix, read off from principal minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixType {
    Finite,
    Affine,
    Indefinite,
}

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KacMoodyMatrix {
    labels: Vec<String>,
    a: Vec<Vec<i64>>,
    m: u64,
}

/// Checks the Kac-Moody axioms, reporting every violation; labels default to `0..n`.
pub fn validate_matrix(entries: &[Vec<i64>]) -> Result<KacMoodyMatrix, RootDataError> {
    let n = entries.len();
    if n == 0 || entries.iter().any(|r| r.len() != n) {
        return Err(RootDataError::NotSquare);
    }
    let mut violations = Vec::new();
    for i in 0..n {
        if entries[i][i] != 2 {
            violations.push(Violation { axiom: Axiom::I, i, j: i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && entries[i][j] > 0 {
                violations.push(Violation { axiom: Axiom::II, i, j });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (entries[i][j] == 0) != (entries[j][i] == 0) {
                violations.push(Violation { axiom: Axiom::III, i, j });
            }
        }
    }
    if !violations.is_empty() {
        return Err(RootDataError::NotKacMoody(violations));
    }
    let m = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| entries[i][j].unsigned_abs())
        .max()
        .unwrap_or(0);
    Ok(KacMoodyMatrix { labels: (0..n).map(|i| i.to_string()).collect(), a: entries.to_vec(), m })
}

impl KacMoodyMatrix {
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// |I|
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// M = max_{i≠j} |a_ij| (0 in rank one).
    pub fn m_max(&self) -> u64 {
        self.m
    }

    pub fn det(&self) -> i64 {
        principal_minor(&self.a, &(0..self.rank()).collect::<Vec<_>>())
    }

    /// Rank of A over ℚ.
    pub fn matrix_rank(&self) -> usize {
        let rows: Vec<_> = self.a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        linalg::rank(&rows)
    }

    pub fn submatrix(&self, subset: &[usize]) -> KacMoodyMatrix {
        let a: Vec<Vec<i64>> =
            subset.iter().map(|&i| subset.iter().map(|&j| self.a[i][j]).collect()).collect();
        let mut sub = validate_matrix(&a).expect("principal submatrices stay Kac-Moody");
        sub.labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        sub
    }

    /// Finite type ⟺ every principal minor is positive (the empty matrix is of finite type).
    pub fn subset_is_finite_type(&self, subset: &[usize]) -> bool {
        let k = subset.len();
        (1u64..(1u64 << k)).all(|mask| {
            let s: Vec<usize> =
                (0..k).filter(|b| mask & (1 << b) != 0).map(|b| subset[b]).collect();
            principal_minor(&self.a, &s) > 0
        })
    }

    pub fn is_finite_type(&self) -> bool {
        self.subset_is_finite_type(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Finite / affine / indefinite detection (for indecomposable matrices) by principal minors.
    pub fn matrix_type(&self) -> MatrixType {
        let all: Vec<usize> = (0..self.rank()).collect();
        if self.subset_is_finite_type(&all) {
            return MatrixType::Finite;
        }
        let proper_finite = (0..self.rank()).all(|drop| {
            let s: Vec<usize> = all.iter().copied().filter(|&i| i != drop).collect();
            self.subset_is_finite_type(&s)
        });
        if self.det() == 0 && proper_finite {
            MatrixType::Affine
        } else {
            MatrixType::Indefinite
        }
    }

    /// Whether the Dynkin diagram restricted to `support` is connected.
    pub fn is_connected(&self, support: &[usize]) -> bool {
        if support.is_empty() {
            return false;
        }
        let mut seen = vec![support[0]];
        let mut stack = vec![support[0]];
        while let Some(i) = stack.pop() {
            for &j in support {
                if !seen.contains(&j) && self.a[i][j] != 0 {
                    seen.push(j);
                    stack.push(j);
                }
            }
        }
        seen.len() == support.len()
    }

    /// ⟨α, α_i^∨⟩ = Σ_j c_j a_ij for α = Σ c_j α_j.
    pub fn pairing(&self, coords: &[i64], i: usize) -> i64 {
        coords.iter().zip(&self.a[i]).map(|(c, a)| c * a).sum()
    }
}

fn principal_minor(a: &[Vec<i64>], subset: &[usize]) -> i64 {
    let rows: Vec<Vec<_>> =
        subset.iter().map(|&i| subset.iter().map(|&j| q(a[i][j])).collect()).collect();
    linalg::det(&rows).to_integer().try_into().expect("small determinant")
}

/// Standard matrices used throughout examples and tests.
pub mod standard {
    use super::*;

    pub fn a1() -> KacMoodyMatrix {
        validate_matrix(&[vec![2]]).unwrap()
    }

    pub fn a2() -> KacMoodyMatrix {
        validate_matrix(&[vec![2, -1], vec![-1, 2]]).unwrap()
    }

    /// Index 0 short, index 1 long: (ad e_0)^3 e_1 = 0 and (ad e_1)^2 e_0 = 0.
    pub fn b2() -> KacMoodyMatrix {
        validate_matrix(&[vec![2, -2], vec![-1, 2]]).unwrap()
    }

    pub fn a1_affine() -> KacMoodyMatrix {
        validate_matrix(&[vec![2, -2], vec![-2, 2]]).unwrap()
    }

    /// The rank-two hyperbolic matrix (2, −m; −m, 2).
    pub fn hyperbolic(m: i64) -> KacMoodyMatrix {
        validate_matrix(&[vec![2, -m], vec![-m, 2]]).unwrap()
    }

    /// Affine type Ã_{n−1} (n ≥ 3): the cycle on n nodes.
    pub fn affine_a(n: usize) -> KacMoodyMatrix {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            a[i][(i + 1) % n] = -1;
            a[(i + 1) % n][i] = -1;
        }
        validate_matrix(&a).unwrap()
    }
}
