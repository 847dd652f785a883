//! Height growth under simple reflections: height(s_i α) ≤ (1 + M)·height(α) with
//! M = max_{i≠j} |a_ij|.

use serde::{Deserialize, Serialize};

use crate::num::{fmt_q, qr, Q};
use crate::rootdata::{classify_vector, enumerate_root_set, KacMoodyMatrix, VectorClass};

use super::GroupFiltError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub m: i64,
    pub height: u32,
    /// Pairs (α, i) examined, α ≠ α_i.
    pub pairs: usize,
    #[serde(with = "crate::num::serde_q")]
    pub max_ratio: Q,
    /// (α, i) attaining the maximum.
    pub worst: Option<(Vec<i64>, usize)>,
    pub bound_holds: bool,
    /// Every s_i α is again a positive root.
    pub images_are_roots: bool,
}

impl DegreeAudit {
    pub fn summary(&self) -> String {
        format!("M={} H={} max ratio {} ≤ {}: {}", self.m, self.height, fmt_q(&self.max_ratio), 1 + self.m, self.bound_holds)
    }
}

/// Audits every positive root (real and imaginary) of height ≤ `height`.
pub fn degree_bound_audit(a: &KacMoodyMatrix, height: u32) -> Result<DegreeAudit, GroupFiltError> {
    if height == 0 {
        return Err(GroupFiltError::HeightBoundTooSmall("the audited height must be ≥ 1".into()));
    }
    let r = a.rank();
    let m = (0..r).flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a.entry(i, j).abs()).max().unwrap_or(0);
    let roots = enumerate_root_set(a, height)?;
    let mut out = DegreeAudit {
        m,
        height,
        pairs: 0,
        max_ratio: Q::from_integer(0.into()),
        worst: None,
        bound_holds: true,
        images_are_roots: true,
    };
    for (alpha, _) in roots {
        for i in 0..r {
            if alpha.0.iter().enumerate().all(|(k, &c)| c == i64::from(k == i)) {
                continue;
            }
            let img = alpha.reflect(a, i);
            if !img.is_positive() || classify_vector(a, &img) == VectorClass::NotRoot {
                out.images_are_roots = false;
            }
            out.pairs += 1;
            let ratio = qr(img.height(), alpha.height());
            if ratio > out.max_ratio {
                out.max_ratio = ratio.clone();
                out.worst = Some((alpha.0.clone(), i));
            }
            if img.height() > (1 + m) * alpha.height() {
                out.bound_holds = false;
            }
        }
    }
    if out.pairs == 0 {
        out.max_ratio = Q::from_integer(1.into());
    }
    Ok(out)
}
