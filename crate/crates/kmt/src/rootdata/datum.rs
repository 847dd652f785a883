use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::num::{q, to_i64, z, Q, Z};

use super::{KacMoodyMatrix, RootDataError};

/// A root generation system: a Kac-Moody matrix realized on a lattice Y ≅ ℤⁿ.
///
/// Coroots are vectors of Y, roots are covectors on Y, both in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    matrix: KacMoodyMatrix,
    rank_y: usize,
    coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    is_free: bool,
    is_cofree: bool,
    is_cotorsion_free: bool,
}

impl RootDatum {
    /// Checks dimensions and the compatibility ᾱ_j(α_i^∨) = a_ij.
    pub fn new(
        matrix: KacMoodyMatrix,
        rank_y: usize,
        coroots: Vec<Vec<i64>>,
        roots: Vec<Vec<i64>>,
    ) -> Result<Self, RootDataError> {
        let r = matrix.rank();
        if rank_y == 0 {
            return Err(RootDataError::Incompatible("rank_Y must be positive".into()));
        }
        if coroots.len() != r || roots.len() != r {
            return Err(RootDataError::Incompatible(format!(
                "expected {r} coroots and {r} roots"
            )));
        }
        if coroots.iter().chain(&roots).any(|v| v.len() != rank_y) {
            return Err(RootDataError::Incompatible(format!("vectors must have length {rank_y}")));
        }
        for i in 0..r {
            for j in 0..r {
                let pairing: i64 = roots[j].iter().zip(&coroots[i]).map(|(a, b)| a * b).sum();
                if pairing != matrix.entry(i, j) {
                    return Err(RootDataError::Incompatible(format!(
                        "root {j} on coroot {i} gives {pairing}, expected a[{i}][{j}] = {}",
                        matrix.entry(i, j)
                    )));
                }
            }
        }
        let qrows = |m: &[Vec<i64>]| -> Vec<Vec<Q>> {
            m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
        };
        let is_free = linalg::rank(&qrows(&roots)) == r;
        let is_cofree = linalg::rank(&qrows(&coroots)) == r;
        let zrows: Vec<Vec<Z>> = coroots.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect();
        let is_cotorsion_free = linalg::smith_invariants(&zrows).iter().all(|d| *d == z(1));
        Ok(RootDatum { matrix, rank_y, coroots, roots, is_free, is_cofree, is_cotorsion_free })
    }

    pub fn matrix(&self) -> &KacMoodyMatrix {
        &self.matrix
    }

    /// |I|
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn rank_y(&self) -> usize {
        self.rank_y
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root_covector(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn root_covectors(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn is_free(&self) -> bool {
        self.is_free
    }

    pub fn is_cofree(&self) -> bool {
        self.is_cofree
    }

    pub fn is_cotorsion_free(&self) -> bool {
        self.is_cotorsion_free
    }

    /// ᾱ_i(y) for an integral y.
    pub fn eval_root(&self, i: usize, y: &[i64]) -> i64 {
        self.roots[i].iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// α(v) for α = Σ c_j α_j and rational v ∈ V = Y ⊗ ℚ.
    pub fn eval_q(&self, coords: &[i64], v: &[Q]) -> Q {
        let mut acc = Q::from_integer(0.into());
        for (j, &c) in coords.iter().enumerate() {
            if c != 0 {
                let val: Q = self.roots[j].iter().zip(v).map(|(&a, x)| x * q(a)).sum();
                acc += val * q(c);
            }
        }
        acc
    }

    /// The covector of α = Σ c_j α_j as an integer vector on Y.
    pub fn covector_of(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank_y];
        for (j, &c) in coords.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(&self.roots[j]) {
                *o += c * a;
            }
        }
        out
    }
}

/// S_A: Y has the coroots as basis and ᾱ_j(α_i^∨) = a_ij.
pub fn simply_connected_datum(a: &KacMoodyMatrix) -> RootDatum {
    let r = a.rank();
    let coroots: Vec<Vec<i64>> =
        (0..r).map(|i| (0..r).map(|k| i64::from(i == k)).collect()).collect();
    let roots: Vec<Vec<i64>> = (0..r).map(|j| (0..r).map(|i| a.entry(i, j)).collect()).collect();
    RootDatum::new(a.clone(), r, coroots, roots).expect("S_A is compatible by construction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    /// Central toric extension, cofree and cotorsion-free.
    Sc,
    /// Semi-direct extension, free.
    Ell,
    /// Minimal free, cofree, cotorsion-free subdatum of dimension 2r − s.
    Mat,
}

/// A morphism of root data φ: Y_source → Y_target with an index injection.
///
/// `lattice_map[k]` is the image of the k-th basis vector of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumMorphism {
    pub lattice_map: Vec<Vec<i64>>,
    pub index_map: Vec<usize>,
}

impl DatumMorphism {
    pub fn apply(&self, y: &[i64]) -> Vec<i64> {
        let n = self.lattice_map.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (c, img) in y.iter().zip(&self.lattice_map) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }

    /// φ(α_i^∨) = α_{σ(i)}^∨ and ᾱ_{σ(i)} ∘ φ = ᾱ_i.
    pub fn is_compatible(&self, source: &RootDatum, target: &RootDatum) -> bool {
        if self.lattice_map.len() != source.rank_y()
            || self.lattice_map.iter().any(|v| v.len() != target.rank_y())
            || self.index_map.len() != source.rank()
        {
            return false;
        }
        (0..source.rank()).all(|i| {
            let t = self.index_map[i];
            self.apply(source.coroot(i)) == target.coroot(t)
                && (0..source.rank_y()).all(|k| {
                    target.eval_root(t, &self.lattice_map[k]) == source.root_covector(i)[k]
                })
        })
    }
}

/// Builds S^sc, S^ℓ or S^mat together with the canonical morphism.
///
/// sc: φ is the projection Y^sc → Y; ell: φ is the inclusion Y → Y^ℓ;
/// mat: φ is the inclusion Y^mat → Y.
pub fn extend_datum(
    s: &RootDatum,
    kind: ExtensionKind,
) -> Result<(RootDatum, DatumMorphism), RootDataError> {
    let r = s.rank();
    let n = s.rank_y();
    let ident: Vec<usize> = (0..r).collect();
    let unit = |k: usize, len: usize| -> Vec<i64> { (0..len).map(|t| i64::from(t == k)).collect() };
    match kind {
        ExtensionKind::Sc => {
            let coroots: Vec<Vec<i64>> = (0..r)
                .map(|i| s.coroot(i).iter().copied().chain(unit(i, r)).collect())
                .collect();
            let roots: Vec<Vec<i64>> = (0..r)
                .map(|i| s.root_covector(i).iter().copied().chain(vec![0; r]).collect())
                .collect();
            let ext = RootDatum::new(s.matrix.clone(), n + r, coroots, roots)?;
            let lattice_map =
                (0..n + r).map(|k| if k < n { unit(k, n) } else { vec![0; n] }).collect();
            Ok((ext, DatumMorphism { lattice_map, index_map: ident }))
        }
        ExtensionKind::Ell => {
            let coroots: Vec<Vec<i64>> =
                (0..r).map(|i| s.coroot(i).iter().copied().chain(vec![0; r]).collect()).collect();
            let roots: Vec<Vec<i64>> = (0..r)
                .map(|i| s.root_covector(i).iter().copied().chain(unit(i, r)).collect())
                .collect();
            let ext = RootDatum::new(s.matrix.clone(), n + r, coroots, roots)?;
            let lattice_map = (0..n).map(|k| unit(k, n + r)).collect();
            Ok((ext, DatumMorphism { lattice_map, index_map: ident }))
        }
        ExtensionKind::Mat => minimal_subdatum(s),
    }
}

fn minimal_subdatum(s: &RootDatum) -> Result<(RootDatum, DatumMorphism), RootDataError> {
    if !(s.is_free() && s.is_cofree() && s.is_cotorsion_free()) {
        return Err(RootDataError::PreconditionFailed(
            "mat extension needs a free, cofree and cotorsion-free datum".into(),
        ));
    }
    let r = s.rank();
    let n = s.rank_y();
    let eval_all = |y: &[i64]| -> Vec<Q> { (0..r).map(|i| q(s.eval_root(i, y))).collect() };
    // Start from Q^∨ and add standard basis vectors until the roots become independent.
    let mut gens: Vec<Vec<i64>> = s.coroots().to_vec();
    let mut images: Vec<Vec<Q>> = gens.iter().map(|g| eval_all(g)).collect();
    let mut current = linalg::rank(&images);
    for k in 0..n {
        if current == r {
            break;
        }
        let e: Vec<i64> = (0..n).map(|t| i64::from(t == k)).collect();
        let mut trial = images.clone();
        trial.push(eval_all(&e));
        let rk = linalg::rank(&trial);
        if rk > current {
            current = rk;
            images = trial;
            gens.push(e);
        }
    }
    // Saturate so that Y^mat is a direct factor of Y.
    let qgens: Vec<Vec<Q>> = gens.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect();
    let annihilator = linalg::right_nullspace(&qgens, n);
    let basis: Vec<Vec<Z>> = if annihilator.is_empty() {
        (0..n).map(|k| (0..n).map(|t| z(i64::from(t == k))).collect()).collect()
    } else {
        let cols: Vec<Vec<Q>> =
            (0..n).map(|row| annihilator.iter().map(|a| a[row].clone()).collect()).collect();
        let (k, _) = linalg::scale_to_integer(&cols);
        linalg::integer_left_kernel(&k)
    };
    let basis: Vec<Vec<i64>> = basis
        .iter()
        .map(|v| v.iter().map(|x| to_i64(x).expect("small entries")).collect())
        .collect();
    let dim = basis.len();
    let zb: Vec<Vec<Z>> = basis.iter().map(|v| v.iter().map(|&x| z(x)).collect()).collect();
    let coroots = s
        .coroots()
        .iter()
        .map(|c| {
            let target: Vec<Z> = c.iter().map(|&x| z(x)).collect();
            let coeffs = linalg::solve_integer_left(&zb, &target)
                .expect("coroots lie in the saturated sublattice");
            coeffs.iter().map(|x| to_i64(x).expect("small entries")).collect()
        })
        .collect();
    let roots = (0..r).map(|i| basis.iter().map(|b| s.eval_root(i, b)).collect()).collect();
    let sub = RootDatum::new(s.matrix.clone(), dim, coroots, roots)?;
    Ok((sub, DatumMorphism { lattice_map: basis, index_map: (0..r).collect() }))
}

/// The datum used for apartments: roots form the standard dual basis and α_i^∨ is the i-th row of A.
///
/// A point y ∈ V is written in coordinates (α_0(y), …, α_{r−1}(y)).
pub fn essential_adjoint_datum(a: &KacMoodyMatrix) -> RootDatum {
    let r = a.rank();
    let coroots: Vec<Vec<i64>> = (0..r).map(|i| a.entries()[i].clone()).collect();
    let roots: Vec<Vec<i64>> =
        (0..r).map(|j| (0..r).map(|k| i64::from(j == k)).collect()).collect();
    RootDatum::new(a.clone(), r, coroots, roots).expect("adjoint datum is compatible")
}

#[cfg(test)]
mod tests {
    use super::super::standard::*;
    use super::*;

    #[test]
    fn simply_connected_flags() {
        let a1 = simply_connected_datum(&a1());
        assert_eq!(a1.rank_y(), 1);
        assert_eq!(a1.eval_root(0, a1.coroot(0)), 2);
        let at = simply_connected_datum(&a1_affine());
        assert_eq!(at.rank_y(), 2);
        assert!(!at.is_free() && at.is_cofree() && at.is_cotorsion_free());
        assert!(simply_connected_datum(&a2()).is_free());
    }

    #[test]
    fn sc_extension_of_affine() {
        let s = simply_connected_datum(&a1_affine());
        let (sc, phi) = extend_datum(&s, ExtensionKind::Sc).unwrap();
        assert_eq!(sc.rank_y(), 4);
        assert!(sc.is_cofree() && sc.is_cotorsion_free());
        assert!(phi.is_compatible(&sc, &s));
    }

    #[test]
    fn ell_extension_of_a2() {
        let s = simply_connected_datum(&a2());
        let (l, phi) = extend_datum(&s, ExtensionKind::Ell).unwrap();
        assert_eq!(l.rank_y(), 4);
        assert!(l.is_free());
        assert!(phi.is_compatible(&s, &l));
        let roots: Vec<Vec<Z>> =
            l.root_covectors().iter().map(|v| v.iter().map(|&x| z(x)).collect()).collect();
        assert!(linalg::smith_invariants(&roots).iter().all(|d| *d == z(1)));
    }

    #[test]
    fn mat_extension_dimension() {
        let s = simply_connected_datum(&a1_affine());
        let (l, _) = extend_datum(&s, ExtensionKind::Ell).unwrap();
        let (m, phi) = extend_datum(&l, ExtensionKind::Mat).unwrap();
        assert_eq!(m.rank_y(), 3);
        assert!(m.is_free() && m.is_cofree() && m.is_cotorsion_free());
        assert!(phi.is_compatible(&m, &l));
        assert!(matches!(
            extend_datum(&s, ExtensionKind::Mat),
            Err(RootDataError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn adjoint_affine() {
        let s = essential_adjoint_datum(&a1_affine());
        assert_eq!(s.coroot(0), &[2, -2]);
        assert!(s.is_free());
    }
}
