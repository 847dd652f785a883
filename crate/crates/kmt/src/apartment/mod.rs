//! The affine apartment 𝔸 = V = Y ⊗ ℚ over Λ = ℤ: values f_Ω, half-apartments, enclosures,
//! facets and chimneys, the affine Weyl group and fixators.
//!
//! Points are rational vectors in the basis of Y. Roots are given in simple-root coordinates and
//! act on points through the root covectors of the datum. Root sets are truncated at a height
//! bound, and every predicate over Φ or Δ is certified relative to that truncation only.

mod chimney;
mod polyhedron;
mod value;
mod weyl;

pub use chimney::{chimney, Chimney};
pub use value::ExtendedValue;
pub use weyl::{
    coroot_of_real, fixator_compare, wall_reflection, weyl_fixator_generators, AffineWeylElement,
    FixatorComparison, WallReflection,
};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::num::{ceil_q, qz, Q};
use crate::rootdata::{
    enumerate_real_roots, enumerate_root_set, essential_adjoint_datum, tits_cone_membership, KacMoodyMatrix, Root,
    RootDataError, RootDatum, TitsMembership, VectorClass, WeylElement,
};

use polyhedron::{infimum, Ineq, Infimum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApartmentError {
    #[error("unsupported filter shape: {0}")]
    UnsupportedFilterShape(String),
    #[error("height bound too small: {0}")]
    HeightBoundTooSmall(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// The apartment of a root datum, with Φ and Δ enumerated up to a height bound.
#[derive(Debug, Clone)]
pub struct Apartment {
    datum: RootDatum,
    height: u32,
    real: Vec<Root>,
    imaginary: Vec<Root>,
}

impl Apartment {
    pub fn new(datum: RootDatum, height: u32) -> Result<Self, ApartmentError> {
        if height == 0 {
            return Err(ApartmentError::HeightBoundTooSmall("the height bound must be ≥ 1".into()));
        }
        let a = datum.matrix();
        let real = enumerate_real_roots(a, height)?;
        let imaginary = enumerate_root_set(a, height)?
            .into_iter()
            .filter(|(_, c)| *c == VectorClass::Imaginary)
            .map(|(r, _)| r)
            .collect();
        Ok(Apartment { datum, height, real, imaginary })
    }

    /// The apartment of the essential adjoint datum: coordinates are (α_0(y), …, α_{r−1}(y)).
    pub fn essential(a: &KacMoodyMatrix, height: u32) -> Result<Self, ApartmentError> {
        Self::new(essential_adjoint_datum(a), height)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dim(&self) -> usize {
        self.datum.rank_y()
    }

    /// Φ⁺ up to the height bound.
    pub fn positive_real_roots(&self) -> &[Root] {
        &self.real
    }

    /// Φ = Φ⁺ ∪ −Φ⁺.
    pub fn real_roots(&self) -> Vec<Root> {
        self.real.iter().flat_map(|r| [r.clone(), r.neg()]).collect()
    }

    /// Δ = Δ⁺ ∪ −Δ⁺ (real and imaginary).
    pub fn roots(&self) -> Vec<Root> {
        self.real.iter().chain(&self.imaginary).flat_map(|r| [r.clone(), r.neg()]).collect()
    }

    pub fn covector(&self, alpha: &Root) -> Vec<Q> {
        self.datum.covector_of(&alpha.0).into_iter().map(|x| Q::from_integer(x.into())).collect()
    }

    pub fn eval(&self, alpha: &Root, y: &[Q]) -> Q {
        self.datum.eval_q(&alpha.0, y)
    }

    fn check_point(&self, y: &[Q]) -> Result<(), ApartmentError> {
        if y.len() == self.dim() {
            Ok(())
        } else {
            Err(ApartmentError::InvalidInput(format!("expected a point with {} coordinates", self.dim())))
        }
    }
}

fn dot(a: &[Q], y: &[Q]) -> Q {
    a.iter().zip(y).map(|(x, z)| x * z).sum()
}

/// The sign pattern of a covector on a vector facet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetSign {
    Positive,
    Negative,
    Zero,
    Mixed,
}

impl FacetSign {
    /// Whether the covector takes negative values on the facet.
    pub fn takes_negative(self) -> bool {
        matches!(self, FacetSign::Negative | FacetSign::Mixed)
    }
}

/// F^v = ε·w(F^v(J)) with F^v(J) = {v ∈ C̄_f : α_j(v) = 0 ⟺ j ∈ J}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VectorFacet {
    pub word: Vec<usize>,
    pub j: Vec<usize>,
    /// +1 or −1.
    pub sign: i8,
}

impl VectorFacet {
    /// The fundamental chamber C_f^v.
    pub fn chamber() -> Self {
        VectorFacet { word: Vec::new(), j: Vec::new(), sign: 1 }
    }

    pub fn standard(j: Vec<usize>) -> Self {
        VectorFacet { word: Vec::new(), j, sign: 1 }
    }

    /// The minimal facet F^v(I).
    pub fn minimal(rank: usize) -> Self {
        Self::standard((0..rank).collect())
    }

    fn weyl(&self, ap: &Apartment) -> WeylElement {
        WeylElement::from_word(ap.datum(), &self.word)
    }

    /// Requires the simple roots to be independent on V so that F^v(J) is described by the
    /// signs of the coefficients of w⁻¹α outside J.
    pub fn sign_of(&self, ap: &Apartment, alpha: &Root) -> Result<FacetSign, ApartmentError> {
        if !ap.datum().is_free() {
            return Err(ApartmentError::UnsupportedFilterShape("vector facets need a free datum".into()));
        }
        let w = self.weyl(ap).inverse(ap.datum());
        let c = w.apply_root(alpha);
        let vals: Vec<i64> = (0..c.0.len()).filter(|i| !self.j.contains(i)).map(|i| c.0[i] * i64::from(self.sign)).collect();
        let pos = vals.iter().any(|&v| v > 0);
        let neg = vals.iter().any(|&v| v < 0);
        Ok(match (pos, neg) {
            (true, true) => FacetSign::Mixed,
            (true, false) => FacetSign::Positive,
            (false, true) => FacetSign::Negative,
            (false, false) => FacetSign::Zero,
        })
    }

    /// A basis of the linear span of F^v: w·{v : α_j(v) = 0 for j ∈ J}.
    pub fn span(&self, ap: &Apartment) -> Vec<Vec<Q>> {
        let rows: Vec<Vec<Q>> =
            self.j.iter().map(|&j| ap.covector(&Root::simple(ap.datum().rank(), j))).collect();
        let w = self.weyl(ap);
        linalg::right_nullspace(&rows, ap.dim()).iter().map(|v| w.apply_v(v)).collect()
    }

    /// Membership of v in the closure ε·w(F̄^v(J)).
    pub fn closure_contains(&self, ap: &Apartment, v: &[Q]) -> bool {
        let s = ap.datum();
        let u: Vec<Q> = self.weyl(ap).inverse(s).apply_v(v).into_iter().map(|x| x * crate::num::q(i64::from(self.sign))).collect();
        (0..s.rank()).all(|i| {
            let a = ap.eval(&Root::simple(s.rank(), i), &u);
            if self.j.contains(&i) {
                a.is_zero()
            } else {
                !a.is_negative()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetVariant {
    /// The local facet germ_x(x + F^v).
    Local,
    /// The facet F(x, F^v).
    Facet,
    /// The closed facet.
    Closed,
}

/// D(α, k) = {y : α(y) + k ≥ 0}, or the open D°(α, r) when k = r⁺.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(rename = "alpha", with = "crate::num::serde_q::vec")]
    pub covector: Vec<Q>,
    /// The root, in simple-root coordinates, when the covector is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Vec<i64>>,
    pub k: ExtendedValue,
    pub open: bool,
}

impl HalfSpace {
    pub fn new(covector: Vec<Q>, root: Option<Vec<i64>>, k: ExtendedValue) -> Self {
        let open = k.is_plus();
        HalfSpace { covector, root, k, open }
    }

    pub fn contains(&self, y: &[Q]) -> bool {
        self.k.admits(&dot(&self.covector, y))
    }

    /// A wall-bounded half-apartment: a real root and k ∈ Λ.
    pub fn is_half_apartment(&self, ap: &Apartment) -> bool {
        let real = self.root.as_ref().is_some_and(|r| {
            let r = Root(r.clone());
            let pos = if r.is_negative() { r.neg() } else { r };
            ap.positive_real_roots().contains(&pos)
        });
        real && matches!(&self.k, ExtendedValue::Value(v) if v.is_integer())
    }
}

/// The filter shapes handled symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Filter {
    Points {
        #[serde(with = "points_serde")]
        points: Vec<Vec<Q>>,
    },
    Facet {
        #[serde(with = "crate::num::serde_q::vec")]
        x: Vec<Q>,
        facet: VectorFacet,
        variant: FacetVariant,
    },
    /// F + ξ + F^v for the local facet F = germ_x(x + base).
    Chimney {
        #[serde(with = "crate::num::serde_q::vec")]
        x: Vec<Q>,
        base: VectorFacet,
        direction: VectorFacet,
        #[serde(with = "crate::num::serde_q::vec")]
        shortening: Vec<Q>,
    },
    /// A finite intersection of half-spaces, taken as a set.
    Intersection { halfspaces: Vec<HalfSpace> },
}

mod points_serde {
    use crate::num::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = p.iter().map(|x| x.iter().map(fmt_q).collect()).collect();
        serde::Serialize::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        v.iter()
            .map(|x| x.iter().map(|s| parse_q(s).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

impl Filter {
    pub fn points(points: Vec<Vec<Q>>) -> Self {
        Filter::Points { points }
    }

    pub fn point(x: Vec<Q>) -> Self {
        Filter::Points { points: vec![x] }
    }

    fn validate(&self, ap: &Apartment) -> Result<(), ApartmentError> {
        match self {
            Filter::Points { points } => {
                if points.is_empty() {
                    return Err(ApartmentError::InvalidInput("empty point set".into()));
                }
                points.iter().try_for_each(|p| ap.check_point(p))
            }
            Filter::Facet { x, .. } => ap.check_point(x),
            Filter::Chimney { x, direction, shortening, .. } => {
                ap.check_point(x)?;
                ap.check_point(shortening)?;
                if !direction.closure_contains(ap, shortening) {
                    return Err(ApartmentError::InvalidInput("ξ must lie in the closure of F^v".into()));
                }
                Ok(())
            }
            Filter::Intersection { halfspaces } => {
                if halfspaces.iter().any(|h| h.covector.len() != ap.dim()) {
                    return Err(ApartmentError::InvalidInput("covector of the wrong length".into()));
                }
                Ok(())
            }
        }
    }
}

/// inf{λ ∈ Λ̃ : λ ≥ c} (or λ > c): ⌈c⌉ for c ∉ ℤ, c or c⁺ for c ∈ ℤ.
fn least_value(c: Q, strict: bool) -> ExtendedValue {
    if c.is_integer() && strict {
        ExtendedValue::ValuePlus(c)
    } else {
        ExtendedValue::Value(qz(ceil_q(&c)))
    }
}

/// f_Ω(α) = inf{λ ∈ Λ : Ω ⊂ D(α, λ)}, in Λ̃.
pub fn f_omega(ap: &Apartment, omega: &Filter, alpha: &Root) -> Result<ExtendedValue, ApartmentError> {
    omega.validate(ap)?;
    match omega {
        Filter::Points { points } => {
            let c = points.iter().map(|x| -ap.eval(alpha, x)).max().expect("nonempty");
            Ok(least_value(c, false))
        }
        Filter::Facet { x, facet, .. } => {
            let s = facet.sign_of(ap, alpha)?;
            Ok(least_value(-ap.eval(alpha, x), s.takes_negative()))
        }
        Filter::Chimney { x, base, direction, shortening } => {
            if direction.sign_of(ap, alpha)?.takes_negative() {
                return Ok(ExtendedValue::Infinity);
            }
            let y: Vec<Q> = x.iter().zip(shortening).map(|(a, b)| a + b).collect();
            Ok(least_value(-ap.eval(alpha, &y), base.sign_of(ap, alpha)?.takes_negative()))
        }
        Filter::Intersection { .. } => f_covector(ap, omega, &ap.covector(alpha)),
    }
}

/// f_Ω for an arbitrary covector on V (point sets and half-space intersections only).
pub fn f_covector(ap: &Apartment, omega: &Filter, a: &[Q]) -> Result<ExtendedValue, ApartmentError> {
    omega.validate(ap)?;
    match omega {
        Filter::Points { points } => {
            Ok(least_value(points.iter().map(|x| -dot(a, x)).max().expect("nonempty"), false))
        }
        Filter::Intersection { halfspaces } => {
            let ineqs: Vec<Ineq> = halfspaces
                .iter()
                .filter_map(|h| {
                    h.k.base().map(|b| Ineq { a: h.covector.clone(), b: b.clone(), strict: h.k.is_plus() })
                })
                .collect();
            match infimum(&ineqs, a) {
                Infimum::Empty => Err(ApartmentError::InvalidInput("empty intersection".into())),
                Infimum::Unbounded => Ok(ExtendedValue::Infinity),
                // For a set, λ = −inf still works when the infimum is not attained.
                Infimum::At { value, .. } => Ok(least_value(-value, false)),
            }
        }
        _ => Err(ApartmentError::UnsupportedFilterShape("general covectors need a point set".into())),
    }
}

/// The first pair violating f(α + β) ≤ f(α) + f(β), if any; also checks f(0) = 0.
pub fn concavity_check(
    ap: &Apartment,
    omega: &Filter,
    pairs: &[(Root, Root)],
) -> Result<Option<(Root, Root)>, ApartmentError> {
    let zero = Root::zero(ap.datum().rank());
    if f_omega(ap, omega, &zero)? != ExtendedValue::zero() {
        return Ok(Some((zero.clone(), zero)));
    }
    for (a, b) in pairs {
        let lhs = f_omega(ap, omega, &a.add(b))?;
        let rhs = &f_omega(ap, omega, a)? + &f_omega(ap, omega, b)?;
        if lhs > rhs {
            return Ok(Some((a.clone(), b.clone())));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Narrowness {
    pub almost_open: bool,
    pub almost_open_witness: Option<Vec<i64>>,
    pub narrow: bool,
    pub narrow_witness: Option<Vec<i64>>,
    /// The predicates quantify over Φ⁺ up to this height.
    pub height_bound: u32,
}

/// Almost open: f(α) + f(−α) > 0 on Φ. Narrow: f(α) + f(−α) ∈ {0, 0⁺, 1} and never
/// (f(α), f(−α)) = (λ⁺, (−λ)⁺).
pub fn narrowness_predicates(ap: &Apartment, omega: &Filter) -> Result<Narrowness, ApartmentError> {
    let mut out = Narrowness {
        almost_open: true,
        almost_open_witness: None,
        narrow: true,
        narrow_witness: None,
        height_bound: ap.height(),
    };
    let allowed = [ExtendedValue::zero(), ExtendedValue::ValuePlus(Q::zero()), ExtendedValue::int(1)];
    for alpha in ap.positive_real_roots() {
        let (fp, fm) = (f_omega(ap, omega, alpha)?, f_omega(ap, omega, &alpha.neg())?);
        let s = &fp + &fm;
        if out.almost_open && s <= ExtendedValue::zero() {
            out.almost_open = false;
            out.almost_open_witness = Some(alpha.0.clone());
        }
        let split = matches!((&fp, &fm), (ExtendedValue::ValuePlus(a), ExtendedValue::ValuePlus(b)) if (a + b).is_zero());
        if out.narrow && (!allowed.contains(&s) || split) {
            out.narrow = false;
            out.narrow_witness = Some(alpha.0.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnclosureVariant {
    /// Half-apartments of all roots Δ.
    ClDelta,
    /// Real roots only.
    ClSi,
    /// Finite intersections of real half-apartments; as a point set this is cl^si at a
    /// finite truncation.
    ClSharp,
    /// Closed convex hull, via sampled integral covectors with exact constants.
    Conv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub variant: EnclosureVariant,
    pub halfspaces: Vec<HalfSpace>,
}

impl Enclosure {
    pub fn contains(&self, y: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(y))
    }

    pub fn into_filter(self) -> Filter {
        Filter::Intersection { halfspaces: self.halfspaces }
    }
}

/// Integral covectors with entries in [−b, b], except 0.
fn sample_covectors(dim: usize, b: i64) -> Vec<Vec<Q>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Q>| {
                (-b..=b).map(move |c| {
                    let mut w = v.clone();
                    w.push(Q::from_integer(c.into()));
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|x| !x.is_zero()));
    out
}

/// The half-space description {D(α, f_Ω(α))} over the variant's covector family; constraints
/// with f_Ω(α) = ∞ are dropped.
pub fn enclosure(ap: &Apartment, omega: &Filter, variant: EnclosureVariant) -> Result<Enclosure, ApartmentError> {
    let mut halfspaces = Vec::new();
    match variant {
        EnclosureVariant::Conv => {
            let Filter::Points { points } = omega else {
                return Err(ApartmentError::UnsupportedFilterShape("conv needs a point set".into()));
            };
            for a in sample_covectors(ap.dim(), 2) {
                let c = points.iter().map(|x| -dot(&a, x)).max().expect("nonempty");
                halfspaces.push(HalfSpace::new(a, None, ExtendedValue::Value(c)));
            }
        }
        _ => {
            let family = if variant == EnclosureVariant::ClDelta { ap.roots() } else { ap.real_roots() };
            for alpha in family {
                let k = f_omega(ap, omega, &alpha)?;
                if k != ExtendedValue::Infinity {
                    halfspaces.push(HalfSpace::new(ap.covector(&alpha), Some(alpha.0.clone()), k));
                }
            }
        }
    }
    Ok(Enclosure { variant, halfspaces })
}

/// The Tits preorder between two points: x ≤ y when y − x ∈ 𝒯.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsOrder {
    pub leq: bool,
    pub geq: bool,
    /// y − x in the interior of the Tits cone.
    pub leq_open: bool,
    pub geq_open: bool,
    /// Some membership could not be decided within the step cap.
    pub indeterminate: bool,
}

pub fn tits_preorder(ap: &Apartment, x: &[Q], y: &[Q], step_cap: usize) -> Result<TitsOrder, ApartmentError> {
    ap.check_point(x)?;
    ap.check_point(y)?;
    let d: Vec<Q> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let nd: Vec<Q> = d.iter().map(|v| -v.clone()).collect();
    let classify = |v: &[Q]| match tits_cone_membership(ap.datum(), v, step_cap) {
        TitsMembership::Inside { open, .. } => (true, open, false),
        TitsMembership::OutsideCertified { .. } => (false, false, false),
        TitsMembership::Indeterminate { .. } => (false, false, true),
    };
    let (leq, leq_open, i1) = classify(&d);
    let (geq, geq_open, i2) = classify(&nd);
    Ok(TitsOrder { leq, geq, leq_open, geq_open, indeterminate: i1 || i2 })
}
