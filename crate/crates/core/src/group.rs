//! Group-level verdicts: a finite group, or a group that is almost abelian of
//! rank one, certified by the τ homomorphism (unipotent case) or a scaling
//! character into a discrete cyclic group of units (hyperbolic case).

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{big_rat, int, serde_rational, QuadSurd, Rational};
use crate::classify::{classify, finite_order, ElementClass};
use crate::error::{Error, Mechanism, Result};
use crate::forms::{
    preserves_pair, primitive_part, FieldVector, LatticeMap, LinearForm, TrilinearForm,
};
use crate::geometry::{
    check_hyperbolic_relations, check_unipotent_relations, hyperbolic_factorization,
    mat_mul, singular_locus, transpose, unipotent_factorization,
    Factorization, Frame, QuadraticForm, RelationReport, SurdMat,
};

/// Largest `enumerate_symmetries` bound accepted without the override.
pub const MAX_DEFAULT_BOUND: u32 = 6;
/// Bound used when `analyze_group` has to find its own generators.
pub const DEFAULT_ENUMERATION_BOUND: u32 = 3;
/// Exponent range searched by [`certify_discrete_cyclic`].
pub const EXPONENT_BOUND: i32 = 64;
pub const CLOSURE_CAP: usize = 5000;
pub const WORD_LENGTH_CAP: usize = 24;

/// `h` restricted to the plane `ker L`, in the basis `basis` of `ker L ∩ ℤ³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedAction {
    pub matrix: [[i64; 2]; 2],
    pub basis: [[i64; 3]; 2],
}

impl RestrictedAction {
    pub fn det(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    fn apply(&self, v: &[QuadSurd; 2]) -> Result<[QuadSurd; 2]> {
        let m = self.matrix.map(|r| r.map(QuadSurd::from_int));
        let row = |i: usize| -> Result<QuadSurd> {
            m[i][0].checked_mul(&v[0])?.checked_add(&m[i][1].checked_mul(&v[1])?)
        };
        Ok([row(0)?, row(1)?])
    }

    fn checked_mul(&self, other: &RestrictedAction) -> Option<RestrictedAction> {
        let (a, b) = (self.matrix, other.matrix);
        let mut m = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0]
                    .checked_mul(b[0][j])?
                    .checked_add(a[i][1].checked_mul(b[1][j])?)?;
            }
        }
        Some(RestrictedAction {
            matrix: m,
            basis: self.basis,
        })
    }

    /// Coordinates of a vector of `ker L` in [`Self::basis`].
    pub fn coordinates(&self, v: &FieldVector) -> Result<[QuadSurd; 2]> {
        let [b1, b2] = self.basis.map(|b| b.map(QuadSurd::from_int));
        // pick the 2×2 minor of (b1 b2) with nonzero determinant
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let det = b1[i].checked_mul(&b2[j])?.checked_sub(&b1[j].checked_mul(&b2[i])?)?;
            if det.is_zero() {
                continue;
            }
            let x = v.0[i].checked_mul(&b2[j])?.checked_sub(&v.0[j].checked_mul(&b2[i])?)?;
            let y = b1[i].checked_mul(&v.0[j])?.checked_sub(&b1[j].checked_mul(&v.0[i])?)?;
            let coords = [x.checked_div(&det)?, y.checked_div(&det)?];
            for k in 0..3 {
                let back = coords[0]
                    .checked_mul(&b1[k])?
                    .checked_add(&coords[1].checked_mul(&b2[k])?)?;
                if back != v.0[k] {
                    return Err(Error::Validation("vector does not lie in ker L".into()));
                }
            }
            return Ok(coords);
        }
        Err(Error::ZeroVector)
    }
}

/// Unimodular `U` with `L·U = (0, 0, g)`; its first two columns span `ker L ∩ ℤ³`.
fn kernel_completion(l: &LinearForm) -> Result<[[i64; 3]; 3]> {
    let mut r = l.coeffs().map(BigInt::from);
    let mut cols = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]].map(|c| c.map(BigInt::from));
    for i in [1usize, 0] {
        let j = 2;
        if r[i].is_zero() {
            continue;
        }
        let eg = r[j].extended_gcd(&r[i]);
        let g = eg.gcd;
        let (x, y) = (eg.x, eg.y);
        let (ri_g, rj_g) = (&r[i] / &g, &r[j] / &g);
        let new_j: [BigInt; 3] = std::array::from_fn(|k| &x * &cols[j][k] + &y * &cols[i][k]);
        let new_i: [BigInt; 3] =
            std::array::from_fn(|k| &rj_g * &cols[i][k] - &ri_g * &cols[j][k]);
        cols[j] = new_j;
        cols[i] = new_i;
        r[j] = g;
        r[i] = BigInt::zero();
    }
    let mut u = [[0i64; 3]; 3];
    for (c, col) in cols.iter().enumerate() {
        for k in 0..3 {
            u[k][c] = col[k].to_i64().ok_or(Error::Overflow)?;
        }
    }
    Ok(u)
}

/// `h|_L` on a deterministic integral basis of `ker L`; for `L = z` the
/// basis is `(e1, e2)`.
pub fn restrict_to_plane(h: &LatticeMap, l: &LinearForm) -> Result<RestrictedAction> {
    if !l.is_preserved_by(h) {
        return Err(Error::DoesNotPreserveL);
    }
    let u = LatticeMap::new(kernel_completion(l)?)?;
    let u_inv = u.inverse().ok_or(Error::Overflow)?;
    let conj = u_inv
        .checked_mul(h)
        .and_then(|m| m.checked_mul(&u))
        .ok_or(Error::Overflow)?;
    let c = conj.entries();
    Ok(RestrictedAction {
        matrix: [[c[0][0], c[0][1]], [c[1][0], c[1][1]]],
        basis: [u.column(0), u.column(1)],
    })
}

fn eigenvalue_on(h: &RestrictedAction, line: &[QuadSurd; 2]) -> Result<Option<QuadSurd>> {
    let image = h.apply(line)?;
    let k = if line[0].is_zero() { 1 } else { 0 };
    let lambda = image[k].checked_div(&line[k])?;
    for i in 0..2 {
        if image[i] != lambda.checked_mul(&line[i])? {
            return Ok(None);
        }
    }
    Ok(Some(lambda))
}

fn pad(v: &[QuadSurd; 2]) -> FieldVector {
    FieldVector([v[0].clone(), v[1].clone(), QuadSurd::zero()])
}

/// `α_{h⁴}`: the eigenvalue of `h2⁴` on `line1`. Both lines lie in `ker L`.
pub fn scaling_character(
    h2: &RestrictedAction,
    line1: &FieldVector,
    line2: &FieldVector,
) -> Result<QuadSurd> {
    let l1 = h2.coordinates(line1)?;
    let l2 = h2.coordinates(line2)?;
    let (img1, img2) = (pad(&h2.apply(&l1)?), pad(&h2.apply(&l2)?));
    let (p1, p2) = (pad(&l1), pad(&l2));
    let fixed = img1.projective_eq(&p1) && img2.projective_eq(&p2);
    let swapped = img1.projective_eq(&p2) && img2.projective_eq(&p1);
    if !fixed && !swapped {
        return Err(Error::LinesNotPreserved);
    }
    let h4 = h2
        .checked_mul(h2)
        .and_then(|sq| sq.checked_mul(&sq))
        .ok_or(Error::Overflow)?;
    let lambda = eigenvalue_on(&h4, &l1)?.ok_or(Error::LinesNotPreserved)?;
    if eigenvalue_on(&h4, &l2)?.is_none() || !lambda.is_positive() {
        return Err(Error::LinesNotPreserved);
    }
    Ok(lambda)
}

/// Outcome of [`certify_discrete_cyclic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CyclicCertificate {
    /// Every value is 1.
    Finite,
    /// `values[i] = gamma^exponents[i]`, with `gamma` the fundamental unit
    /// `> 1` of the ring of integers; the values generate the cyclic group
    /// spanned by `value_group_generator = gamma^gcd(exponents)`.
    Cyclic {
        gamma: QuadSurd,
        exponents: Vec<i32>,
        value_group_generator: QuadSurd,
        exponent_bound: i32,
    },
    Inconclusive {
        reason: String,
    },
}

const UNIT_SEARCH_CAP: u64 = 10_000_000;

fn big_to_surd(a: &BigInt, b: &BigInt, d: u64) -> QuadSurd {
    let two = BigInt::from(2);
    QuadSurd::new(
        Rational::new(a.clone(), two.clone()),
        Rational::new(b.clone(), two),
        d,
    )
}

/// Smallest unit `(a + b√d)/2 > 1` of the ring of integers of `ℚ(√d)`,
/// searching `b ≤ cap`.
pub fn fundamental_unit(d: u64, cap: u64) -> Option<QuadSurd> {
    let d_big = BigInt::from(d);
    let d_is_1_mod_4 = d % 4 == 1;
    for b in 1..=cap {
        let b_big = BigInt::from(b);
        let db2 = &d_big * &b_big * &b_big;
        let mut best: Option<BigInt> = None;
        for a2 in [&db2 - 4i32, &db2 + 4i32] {
            if a2.is_negative() {
                continue;
            }
            let a: BigInt = Roots::sqrt(&a2);
            if &a * &a != a2 {
                continue;
            }
            if !d_is_1_mod_4 && (a.is_odd() || b % 2 == 1) {
                continue;
            }
            if best.as_ref().map_or(true, |x| &a < x) {
                best = Some(a);
            }
        }
        if let Some(a) = best {
            return Some(big_to_surd(&a, &b_big, d));
        }
    }
    None
}

fn is_algebraic_integer_unit(v: &QuadSurd) -> bool {
    let Some((a, b)) = v.half_integral_parts() else {
        return false;
    };
    let d = BigInt::from(v.field());
    let norm4 = &a * &a - &d * &b * &b;
    if norm4.abs() != BigInt::from(4) {
        return false;
    }
    // (a + b√d)/2 is integral iff a ≡ b (mod 2) for d ≡ 1 mod 4, else both even
    if v.field() % 4 == 1 {
        (&a - &b).is_even()
    } else {
        a.is_even() && b.is_even()
    }
}

/// Writes every value as an exact power `γ^k`, `|k| ≤ 64`, of the fundamental
/// unit `γ` of their common quadratic field.
pub fn certify_discrete_cyclic(values: &[QuadSurd]) -> CyclicCertificate {
    let inconclusive = |reason: &str| CyclicCertificate::Inconclusive {
        reason: reason.to_string(),
    };
    if values.iter().all(QuadSurd::is_one) {
        return CyclicCertificate::Finite;
    }
    if values.iter().any(|v| !v.is_positive()) {
        return inconclusive("a character value is not positive");
    }
    let fields: BTreeSet<u64> = values.iter().map(QuadSurd::field).filter(|&d| d != 0).collect();
    if fields.len() != 1 {
        return inconclusive("character values are not in a single real quadratic field");
    }
    let d = *fields.iter().next().expect("one field");
    if let Some(bad) = values.iter().find(|v| !v.is_one() && !is_algebraic_integer_unit(v)) {
        return inconclusive(&format!("{bad} is not a unit of the ring of integers"));
    }
    let largest = values
        .iter()
        .map(|v| v.to_f64().max(1.0 / v.to_f64()))
        .fold(1.0f64, f64::max);
    let cap = if largest.is_finite() {
        ((largest + 2.0) as u64).clamp(1, UNIT_SEARCH_CAP)
    } else {
        UNIT_SEARCH_CAP
    };
    let Some(gamma) = fundamental_unit(d, cap) else {
        return inconclusive("no fundamental unit found within the search range");
    };
    let mut exponents = Vec::with_capacity(values.len());
    'values: for v in values {
        let step = if v >= &QuadSurd::one() {
            (gamma.clone(), 1)
        } else {
            (gamma.inv().expect("unit"), -1)
        };
        let mut power = QuadSurd::one();
        for k in 0..=EXPONENT_BOUND {
            if &power == v {
                exponents.push(k * step.1);
                continue 'values;
            }
            power = power.checked_mul(&step.0).expect("same field");
        }
        return inconclusive(&format!(
            "{v} is not a power of {gamma} with exponent at most {EXPONENT_BOUND}"
        ));
    }
    let g = exponents.iter().fold(0i32, |acc, &k| acc.gcd(&k));
    CyclicCertificate::Cyclic {
        value_group_generator: gamma.pow(g).expect("unit"),
        gamma,
        exponents,
        exponent_bound: EXPONENT_BOUND,
    }
}

/// Entries of `h` in a unipotent frame:
/// `h·w = w`, `h·w1 = a·w + b·w1`, `h·w2 = d·w + c·w1 + w2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentConstraintRecord {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "serde_rational")]
    pub c: Rational,
    #[serde(with = "serde_rational")]
    pub d: Rational,
}

/// `P⁻¹·h·P` for the frame matrix `P`.
pub fn in_frame(h: &LatticeMap, frame: &Frame) -> Result<SurdMat> {
    let p = frame.matrix();
    let h_surd = h.entries().map(|r| r.map(QuadSurd::from_int));
    mat_mul(&frame.inverse()?, &mat_mul(&h_surd, &p)?)
}

fn rational_entry(m: &SurdMat, i: usize, j: usize) -> Result<Rational> {
    m[i][j]
        .to_rational()
        .ok_or_else(|| Error::NotUnipotentInFrame(format!("entry ({i}, {j}) is irrational")))
}

/// Reads `(a, b, c, d)` off `h` in the frame and checks `b = 1`, `a = c`,
/// `d = a(a - 1)/2` and `p·a ∈ ℤ`.
pub fn verify_unipotent_constraints(
    h: &LatticeMap,
    frame: (&[i64; 3], &[i64; 3], &[i64; 3]),
    p: i64,
) -> Result<UnipotentConstraintRecord> {
    let f = Frame::from_ints([frame.0, frame.1, frame.2]);
    let m = in_frame(h, &f)?;
    let r = |i, j| rational_entry(&m, i, j);
    for (i, j) in [(1, 0), (2, 0), (2, 1)] {
        if !r(i, j)?.is_zero() {
            return Err(Error::NotUnipotentInFrame(format!(
                "entry ({i}, {j}) is nonzero"
            )));
        }
    }
    for i in [0, 2] {
        if !r(i, i)?.is_one() {
            return Err(Error::NotUnipotentInFrame(format!("diagonal entry {i} is not 1")));
        }
    }
    let record = UnipotentConstraintRecord {
        a: r(0, 1)?,
        b: r(1, 1)?,
        c: r(1, 2)?,
        d: r(0, 2)?,
    };
    check_constraints(&record, p)?;
    Ok(record)
}

/// The constraint part of [`verify_unipotent_constraints`], on a record.
pub fn check_constraints(record: &UnipotentConstraintRecord, p: i64) -> Result<()> {
    let UnipotentConstraintRecord { a, b, c, d } = record;
    if !b.is_one() {
        return Err(Error::NotUnipotentInFrame(format!("b = {b}, expected 1")));
    }
    if a != c {
        return Err(Error::ConstraintViolated(format!("a = {a} but c = {c}")));
    }
    let expected = a * (a - int(1)) / int(2);
    if d != &expected {
        return Err(Error::ConstraintViolated(format!(
            "d = {d} but a(a - 1)/2 = {expected}"
        )));
    }
    if !(a * big_rat(p)).is_integer() {
        return Err(Error::ConstraintViolated(format!("p*a = {} is not an integer", a * big_rat(p))));
    }
    Ok(())
}

/// `λ` with `Hᵗ·Q·H = λ·Q`; anything but `λ = 1` is a violation.
pub fn quadric_multiplier(h_frame: &SurdMat, q: &QuadraticForm) -> Result<QuadSurd> {
    let pulled = mat_mul(&transpose(h_frame), &mat_mul(q.matrix(), h_frame)?)?;
    let qm = q.matrix();
    let (i, j) = (0..9)
        .map(|n| (n / 3, n % 3))
        .find(|&(i, j)| !qm[i][j].is_zero())
        .ok_or_else(|| Error::ConstraintViolated("quadric is zero".into()))?;
    let lambda = pulled[i][j].checked_div(&qm[i][j])?;
    for r in 0..3 {
        for c in 0..3 {
            if pulled[r][c] != lambda.checked_mul(&qm[r][c])? {
                return Err(Error::ConstraintViolated(
                    "h does not rescale the quadric".into(),
                ));
            }
        }
    }
    if !lambda.is_one() {
        return Err(Error::ConstraintViolated(format!("h scales the quadric by {lambda}")));
    }
    Ok(lambda)
}

/// `τ(h) = p·a`.
pub fn tau(record: &UnipotentConstraintRecord, p: i64) -> Result<i64> {
    let v = &record.a * big_rat(p);
    if !v.is_integer() {
        return Err(Error::NonIntegral(v.to_string()));
    }
    v.to_integer().to_i64().ok_or(Error::Overflow)
}

fn column_candidates(
    t: &TrilinearForm,
    l: &LinearForm,
    j: usize,
    bound: i64,
) -> Vec<[i64; 3]> {
    let mut e = [0i64; 3];
    e[j] = 1;
    let target_l = l.apply_int(&e);
    let target_c = t.eval_scaled_int(&e, &e, &e);
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                let c = [x, y, z];
                if l.apply_int(&c) == target_l && t.eval_scaled_int(&c, &c, &c) == target_c {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Every `g` with entries in `[-bound, bound]`, `det g = ±1`, `g*T = T` and
/// `L ∘ g = L`, in lexicographic order. The identity is always included.
pub fn enumerate_symmetries(
    t: &TrilinearForm,
    l: &LinearForm,
    bound: u32,
    allow_large: bool,
) -> Result<Vec<LatticeMap>> {
    if bound > MAX_DEFAULT_BOUND && !allow_large {
        return Err(Error::BoundTooLarge {
            bound,
            limit: MAX_DEFAULT_BOUND,
        });
    }
    let b = i64::from(bound);
    let cands: Vec<Vec<[i64; 3]>> = (0..3).map(|j| column_candidates(t, l, j, b)).collect();
    let e = |i: usize| {
        let mut v = [0i64; 3];
        v[i] = 1;
        v
    };
    let pair_ok = |ci: &[i64; 3], cj: &[i64; 3], i: usize, j: usize| {
        t.eval_scaled_int(ci, ci, cj) == t.eval_scaled_int(&e(i), &e(i), &e(j))
            && t.eval_scaled_int(ci, cj, cj) == t.eval_scaled_int(&e(i), &e(j), &e(j))
    };
    let target_xyz = t.eval_scaled_int(&e(0), &e(1), &e(2));
    let mut found: Vec<LatticeMap> = cands[0]
        .par_iter()
        .flat_map_iter(|c0| {
            let mut local = Vec::new();
            for c1 in cands[1].iter().filter(|c1| pair_ok(c0, c1, 0, 1)) {
                for c2 in &cands[2] {
                    if !pair_ok(c0, c2, 0, 2)
                        || !pair_ok(c1, c2, 1, 2)
                        || t.eval_scaled_int(c0, c1, c2) != target_xyz
                    {
                        continue;
                    }
                    let m: [[i64; 3]; 3] =
                        std::array::from_fn(|r| [c0[r], c1[r], c2[r]]);
                    if let Ok(g) = LatticeMap::new(m) {
                        if preserves_pair(&g, t, l) {
                            local.push(g);
                        }
                    }
                }
            }
            local
        })
        .collect();
    found.push(LatticeMap::identity());
    found.sort();
    found.dedup();
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementRole {
    Input,
    /// Produced by the determinant-one reduction.
    Reduced,
    /// The infinite-order element the certificate is built around.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub role: ElementRole,
    pub matrix: LatticeMap,
    pub det: i64,
    pub class: ElementClass,
}

impl ElementRecord {
    pub fn new(role: ElementRole, g: &LatticeMap, l: &LinearForm) -> Result<Self> {
        Ok(ElementRecord {
            role,
            matrix: *g,
            det: g.det(),
            class: classify(g, l)?,
        })
    }
}

/// A finite-index step taken on the way to the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reduction {
    EnumeratedGenerators { bound: u32, count: usize },
    /// Passed to `G ∩ SL(3, ℤ)` (index `index`) via Schreier generators.
    DeterminantOne { index: u32, generators: usize },
    /// An element was replaced by its square.
    Squared { element: LatticeMap, reason: String },
    /// Characters are taken on fourth powers, so both lines are fixed with
    /// positive scalars; index at most 4.
    FourthPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `τ(h) = p·a_h` embeds the group in ℤ; `generator_value` spans the image.
    Tau {
        generator_value: i64,
        p: i64,
        values: Vec<i64>,
        records: Vec<UnipotentConstraintRecord>,
    },
    /// `h ↦ α_{h⁴}` into the cyclic group spanned by `generator_surd`.
    Character {
        generator_surd: QuadSurd,
        /// `γ` with `γ⁴ = generator_surd`, when it exists in the field.
        fourth_root: Option<QuadSurd>,
        values: Vec<QuadSurd>,
        certificate: CyclicCertificate,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupVerdict {
    Finite { order: usize, elements: Vec<LatticeMap> },
    AlmostAbelianRankOne { witness: Witness },
    Inconclusive { reason: String },
}

impl GroupVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            GroupVerdict::Finite { .. } => "finite",
            GroupVerdict::AlmostAbelianRankOne { .. } => "almost_abelian_rank_one",
            GroupVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// A factorization together with the geometry read off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub factorization: Factorization,
    pub singular_locus: Vec<FieldVector>,
    pub signature: Option<crate::geometry::Signature>,
    pub reconstructs: bool,
}

impl FactorizationCertificate {
    pub fn new(t: &TrilinearForm, factorization: Factorization) -> Result<Self> {
        let signature = match &factorization {
            Factorization::QuadricLine { quadric, .. } => {
                Some(crate::geometry::quadric_signature(quadric)?)
            }
            Factorization::ThreeLines { .. } => None,
        };
        Ok(FactorizationCertificate {
            singular_locus: singular_locus(&factorization)?,
            reconstructs: factorization.reconstructs(t)?,
            signature,
            factorization,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAnalysis {
    pub elements: Vec<ElementRecord>,
    pub relations: Option<RelationReport>,
    pub factorization: Option<FactorizationCertificate>,
    pub verdict: GroupVerdict,
    pub reductions: Vec<Reduction>,
}

/// Schreier generators of `G ∩ SL(3, ℤ)` for the transversal `{id, s}`.
fn determinant_one_generators(gens: &[LatticeMap]) -> Result<(Vec<LatticeMap>, bool)> {
    let Some(s) = gens.iter().find(|g| g.det() == -1).copied() else {
        return Ok((gens.to_vec(), false));
    };
    let s_inv = s.inverse().ok_or(Error::Overflow)?;
    let mut out = Vec::new();
    for t in [LatticeMap::identity(), s] {
        for g in gens {
            let tg = t.checked_mul(g).ok_or(Error::Overflow)?;
            let h = if tg.det() == 1 {
                tg
            } else {
                tg.checked_mul(&s_inv).ok_or(Error::Overflow)?
            };
            if !h.is_identity() && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok((out, true))
}

enum Closure {
    Finite(Vec<LatticeMap>),
    InfiniteElement(LatticeMap),
    Capped(String),
}

fn bounded_closure(gens: &[LatticeMap]) -> Closure {
    let id = LatticeMap::identity();
    let mut seen: HashSet<LatticeMap> = HashSet::from([id]);
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((x, depth)) = queue.pop_front() {
        for g in gens {
            let Some(y) = x.checked_mul(g) else {
                return Closure::Capped("entries overflowed during the closure".into());
            };
            if seen.contains(&y) {
                continue;
            }
            if finite_order(&y).is_none() {
                return Closure::InfiniteElement(y);
            }
            if depth + 1 > WORD_LENGTH_CAP {
                return Closure::Capped(format!(
                    "closure not reached within word length {WORD_LENGTH_CAP}"
                ));
            }
            seen.insert(y);
            if seen.len() > CLOSURE_CAP {
                return Closure::Capped(format!("closure exceeded {CLOSURE_CAP} elements"));
            }
            queue.push_back((y, depth + 1));
        }
    }
    let mut elements: Vec<LatticeMap> = seen.into_iter().collect();
    elements.sort();
    Closure::Finite(elements)
}

fn inconclusive(reason: impl Into<String>) -> GroupVerdict {
    GroupVerdict::Inconclusive {
        reason: reason.into(),
    }
}

/// Decides between a finite group and an almost abelian group of rank one.
///
/// Without generators, the group is taken to be generated by
/// `enumerate_symmetries` at bound 3.
pub fn analyze_group(
    t: &TrilinearForm,
    l: &LinearForm,
    generators: Option<&[LatticeMap]>,
) -> Result<GroupAnalysis> {
    let mut reductions = Vec::new();
    let gens: Vec<LatticeMap> = match generators {
        Some(g) => g.to_vec(),
        None => {
            let found = enumerate_symmetries(t, l, DEFAULT_ENUMERATION_BOUND, false)?;
            reductions.push(Reduction::EnumeratedGenerators {
                bound: DEFAULT_ENUMERATION_BOUND,
                count: found.len(),
            });
            found
        }
    };
    for (i, g) in gens.iter().enumerate() {
        if !preserves_pair(g, t, l) {
            return Err(Error::NonPreservingGenerator(i));
        }
    }
    let mut elements = gens
        .iter()
        .map(|g| ElementRecord::new(ElementRole::Input, g, l))
        .collect::<Result<Vec<_>>>()?;
    let (sl_gens, reduced) = determinant_one_generators(&gens)?;
    if reduced {
        reductions.push(Reduction::DeterminantOne {
            index: 2,
            generators: sl_gens.len(),
        });
        for g in &sl_gens {
            elements.push(ElementRecord::new(ElementRole::Reduced, g, l)?);
        }
    }
    let sl_gens: Vec<LatticeMap> = sl_gens.into_iter().filter(|g| !g.is_identity()).collect();

    let mut analysis = GroupAnalysis {
        elements,
        relations: None,
        factorization: None,
        verdict: inconclusive("not analyzed"),
        reductions,
    };

    let witness = match sl_gens.iter().find(|g| finite_order(g).is_none()) {
        Some(g) => *g,
        None => match bounded_closure(&gens) {
            Closure::Finite(elements) => {
                analysis.verdict = GroupVerdict::Finite {
                    order: elements.len(),
                    elements,
                };
                return Ok(analysis);
            }
            Closure::Capped(reason) => {
                analysis.verdict = inconclusive(reason);
                return Ok(analysis);
            }
            Closure::InfiniteElement(y) => {
                if y.det() == 1 {
                    y
                } else {
                    let sq = y.checked_mul(&y).ok_or(Error::Overflow)?;
                    analysis.reductions.push(Reduction::Squared {
                        element: y,
                        reason: "determinant -1".into(),
                    });
                    sq
                }
            }
        },
    };

    let mut class = classify(&witness, l)?;
    let mut witness = witness;
    if let ElementClass::OutOfTheory { reason } = &class {
        analysis.reductions.push(Reduction::Squared {
            element: witness,
            reason: reason.clone(),
        });
        witness = witness.checked_mul(&witness).ok_or(Error::Overflow)?;
        class = classify(&witness, l)?;
    }
    analysis
        .elements
        .push(ElementRecord::new(ElementRole::Witness, &witness, l)?);

    let kinds: BTreeSet<&str> = sl_gens
        .iter()
        .map(|g| classify(g, l).map(|c| c.name()))
        .collect::<Result<_>>()?;
    if kinds.contains("hyperbolic")
        && (kinds.contains("unipotent_full") || kinds.contains("unipotent_deficient"))
    {
        analysis.verdict = inconclusive("generators mix hyperbolic and unipotent elements");
        return Ok(analysis);
    }

    match class {
        ElementClass::Hyperbolic { u, v, w, .. } => {
            hyperbolic_route(t, l, &sl_gens, (&u, &v, &w), &mut analysis)?
        }
        ElementClass::UnipotentFull { w, w1, w2 } => {
            unipotent_route(t, l, &sl_gens, (&w, &w1, &w2), &mut analysis)?
        }
        ElementClass::UnipotentDeficient { .. } => {
            return Err(Error::geometric(
                Mechanism::RankOneJordanBlock,
                format!("{witness} has rank(g - id) = 1"),
            ))
        }
        other => {
            analysis.verdict =
                inconclusive(format!("infinite-order element classified as {}", other.name()));
        }
    }
    Ok(analysis)
}

fn not_verified_to_inconclusive<T>(r: Result<T>, analysis: &mut GroupAnalysis) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::RelationsNotVerified(what)) => {
            analysis.verdict = inconclusive(format!("relations not verified: {what}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn hyperbolic_route(
    t: &TrilinearForm,
    l: &LinearForm,
    gens: &[LatticeMap],
    (u, v, w): (&FieldVector, &FieldVector, &[i64; 3]),
    analysis: &mut GroupAnalysis,
) -> Result<()> {
    let report = check_hyperbolic_relations(t, l, u, v, &FieldVector::from_ints(w))?;
    analysis.relations = Some(report);
    let Some(fact) = not_verified_to_inconclusive(hyperbolic_factorization(t, l, u, v, w), analysis)?
    else {
        return Ok(());
    };
    let Some(cert) = not_verified_to_inconclusive(FactorizationCertificate::new(t, fact), analysis)?
    else {
        return Ok(());
    };
    analysis.factorization = Some(cert);
    analysis.reductions.push(Reduction::FourthPower);
    let mut values = Vec::with_capacity(gens.len());
    for g in gens {
        if g.apply(w) != Some(*w) {
            analysis.verdict = inconclusive(format!("{g} does not fix w"));
            return Ok(());
        }
        let restricted = restrict_to_plane(g, l)?;
        match scaling_character(&restricted, v, u) {
            Ok(value) => values.push(value),
            Err(Error::LinesNotPreserved) => {
                analysis.verdict = inconclusive(format!("{g} does not preserve the singular lines"));
                return Ok(());
            }
            Err(e) => return Err(e),
        }
    }
    let certificate = certify_discrete_cyclic(&values);
    analysis.verdict = match &certificate {
        CyclicCertificate::Cyclic {
            gamma,
            exponents,
            value_group_generator,
            ..
        } => {
            let g = exponents.iter().fold(0i32, |acc, &k| acc.gcd(&k));
            let fourth_root = (g % 4 == 0).then(|| gamma.pow(g / 4).expect("unit"));
            GroupVerdict::AlmostAbelianRankOne {
                witness: Witness::Character {
                    generator_surd: value_group_generator.clone(),
                    fourth_root,
                    values,
                    certificate,
                },
            }
        }
        CyclicCertificate::Finite => inconclusive("every character value is 1"),
        CyclicCertificate::Inconclusive { reason } => inconclusive(reason.clone()),
    };
    Ok(())
}

fn unipotent_route(
    t: &TrilinearForm,
    l: &LinearForm,
    gens: &[LatticeMap],
    (w, w1, w2): (&[i64; 3], &[i64; 3], &[i64; 3]),
    analysis: &mut GroupAnalysis,
) -> Result<()> {
    let report = check_unipotent_relations(t, l, w, w1, w2)?;
    let overall = report.overall;
    let failing = report.failing().join(", ");
    analysis.relations = Some(report);
    if !overall {
        analysis.verdict = inconclusive(format!("unipotent relations fail: {failing}"));
        return Ok(());
    }
    let Some(uf) = not_verified_to_inconclusive(unipotent_factorization(t, l, w, w1, w2), analysis)?
    else {
        return Ok(());
    };
    let quadric_in_frame = match &uf.factorization {
        Factorization::QuadricLine {
            quadric_in_frame, ..
        } => quadric_in_frame.clone(),
        Factorization::ThreeLines { .. } => unreachable!("unipotent splitting is quadric-line"),
    };
    let Some(cert) = not_verified_to_inconclusive(
        FactorizationCertificate::new(t, uf.factorization),
        analysis,
    )?
    else {
        return Ok(());
    };
    analysis.factorization = Some(cert);
    let p = primitive_part(w)?.scale;
    let frame = Frame::from_ints([w, w1, w2]);
    let mut used = Vec::with_capacity(gens.len());
    let mut records = Vec::with_capacity(gens.len());
    for g in gens {
        if g.apply(w) != Some(*w) {
            analysis.verdict = inconclusive(format!("{g} does not fix w"));
            return Ok(());
        }
        let (h, record) = match verify_unipotent_constraints(g, (w, w1, w2), p) {
            Ok(r) => (*g, r),
            Err(Error::NotUnipotentInFrame(_)) => {
                let sq = g.checked_mul(g).ok_or(Error::Overflow)?;
                let r = verify_unipotent_constraints(&sq, (w, w1, w2), p)?;
                analysis.reductions.push(Reduction::Squared {
                    element: *g,
                    reason: "not unipotent in the frame".into(),
                });
                (sq, r)
            }
            Err(e) => return Err(e),
        };
        quadric_multiplier(&in_frame(&h, &frame)?, &quadric_in_frame)?;
        used.push(h);
        records.push(record);
    }
    let values = records
        .iter()
        .map(|r| tau(r, p))
        .collect::<Result<Vec<i64>>>()?;
    for (i, a) in used.iter().enumerate() {
        for (j, b) in used.iter().enumerate() {
            let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
            let r = verify_unipotent_constraints(&ab, (w, w1, w2), p)?;
            if tau(&r, p)? != values[i] + values[j] {
                return Err(Error::ConstraintViolated(format!(
                    "tau is not additive on generators {i} and {j}"
                )));
            }
        }
    }
    let generator_value = values.iter().fold(0i64, |acc, &k| acc.gcd(&k));
    analysis.verdict = if generator_value == 0 {
        inconclusive("tau vanishes on every generator")
    } else {
        GroupVerdict::AlmostAbelianRankOne {
            witness: Witness::Tau {
                generator_value,
                p,
                values,
                records,
            },
        }
    };
    Ok(())
}
