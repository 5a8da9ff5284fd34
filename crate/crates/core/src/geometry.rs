//! Intersection relations in an eigenframe, the splitting `C = L1·L2·L` or
//! `C = Q·L` they force, and the derived geometry: quadric signature,
//! tangent planes, singular locus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{big_rat, int, rat, serde_rational, QuadSurd, Rational};
use crate::error::{Error, Mechanism, Result};
use crate::forms::{
    monomials_as_surds, triple_index, Covector, FieldVector, LinearForm, TrilinearForm,
    MONOMIAL_TRIPLES,
};

pub(crate) type SurdMat = [[QuadSurd; 3]; 3];

fn zero_mat() -> SurdMat {
    std::array::from_fn(|_| std::array::from_fn(|_| QuadSurd::zero()))
}

pub(crate) fn det(m: &SurdMat) -> Result<QuadSurd> {
    let minor = |r: usize, c: usize| -> Result<QuadSurd> {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
        m[r1][c1]
            .checked_mul(&m[r2][c2])?
            .checked_sub(&m[r1][c2].checked_mul(&m[r2][c1])?)
    };
    let mut acc = QuadSurd::zero();
    for c in 0..3 {
        acc = acc.checked_add(&m[0][c].checked_mul(&minor(0, c)?)?)?;
    }
    Ok(acc)
}

pub(crate) fn inverse(m: &SurdMat) -> Result<SurdMat> {
    let d = det(m)?;
    let d_inv = d.inv()?;
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            // cyclic cofactor of (j, i) already carries its sign
            let (r1, r2) = ((j + 1) % 3, (j + 2) % 3);
            let (c1, c2) = ((i + 1) % 3, (i + 2) % 3);
            let cof = m[r1][c1]
                .checked_mul(&m[r2][c2])?
                .checked_sub(&m[r1][c2].checked_mul(&m[r2][c1])?)?;
            out[i][j] = cof.checked_mul(&d_inv)?;
        }
    }
    Ok(out)
}

pub(crate) fn mat_vec(m: &SurdMat, v: &FieldVector) -> Result<FieldVector> {
    let mut out = FieldVector::zero();
    for i in 0..3 {
        let mut acc = QuadSurd::zero();
        for j in 0..3 {
            acc = acc.checked_add(&m[i][j].checked_mul(&v.0[j])?)?;
        }
        out.0[i] = acc;
    }
    Ok(out)
}

pub(crate) fn mat_mul(a: &SurdMat, b: &SurdMat) -> Result<SurdMat> {
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = QuadSurd::zero();
            for k in 0..3 {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub(crate) fn transpose(m: &SurdMat) -> SurdMat {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Symmetric 3×3 matrix `M` of `Q(x) = xᵗ·M·x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurdMat", into = "SurdMat")]
pub struct QuadraticForm {
    m: SurdMat,
}

impl QuadraticForm {
    pub fn new(m: SurdMat) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::Validation("quadratic form is not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { m })
    }

    pub fn from_rationals(m: [[Rational; 3]; 3]) -> Result<Self> {
        QuadraticForm::new(m.map(|r| r.map(QuadSurd::from)))
    }

    pub fn matrix(&self) -> &SurdMat {
        &self.m
    }

    pub fn eval(&self, v: &FieldVector) -> Result<QuadSurd> {
        v.dot(&mat_vec(&self.m, v)?)
    }

    /// `M·v`, half the gradient.
    pub fn apply(&self, v: &FieldVector) -> Result<FieldVector> {
        mat_vec(&self.m, v)
    }

    pub fn determinant(&self) -> Result<QuadSurd> {
        det(&self.m)
    }

    /// `Pᵗ·M·P`, the form in the coordinates `x = P·y`.
    pub fn congruent(&self, p: &SurdMat) -> Result<QuadraticForm> {
        let m = mat_mul(&transpose(p), &mat_mul(&self.m, p)?)?;
        QuadraticForm::new(m)
    }
}

impl TryFrom<SurdMat> for QuadraticForm {
    type Error = Error;
    fn try_from(m: SurdMat) -> Result<Self> {
        QuadraticForm::new(m)
    }
}

impl From<QuadraticForm> for SurdMat {
    fn from(q: QuadraticForm) -> Self {
        q.m
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub pos: u32,
    pub neg: u32,
    pub zero: u32,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

/// Sylvester inertia by exact symmetric elimination.
pub fn quadric_signature(q: &QuadraticForm) -> Result<Signature> {
    let mut a = q.m.clone();
    let n = 3;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k -> e_k + e_j makes the pivot 2·a[k][j]
                for c in 0..n {
                    let v = a[k][c].checked_add(&a[j][c])?;
                    a[k][c] = v;
                }
                for r in 0..n {
                    let v = a[r][k].checked_add(&a[r][j])?;
                    a[r][k] = v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].checked_div(&pivot)?;
            for c in 0..n {
                let v = a[i][c].checked_sub(&factor.checked_mul(&a[k][c])?)?;
                a[i][c] = v;
            }
            for r in 0..n {
                let v = a[r][i].checked_sub(&factor.checked_mul(&a[r][k])?)?;
                a[r][i] = v;
            }
        }
    }
    let mut sig = Signature {
        pos: 0,
        neg: 0,
        zero: 0,
    };
    for (k, row) in a.iter().enumerate() {
        match row[k].signum() {
            std::cmp::Ordering::Greater => sig.pos += 1,
            std::cmp::Ordering::Less => sig.neg += 1,
            std::cmp::Ordering::Equal => sig.zero += 1,
        }
    }
    Ok(sig)
}

/// Projectively normalized covector `∇Q(pt)`.
pub fn tangent_plane(q: &QuadraticForm, pt: &FieldVector) -> Result<Covector> {
    if pt.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !q.eval(pt)?.is_zero() {
        return Err(Error::NotOnQuadric);
    }
    let grad = q.apply(pt)?;
    if grad.is_zero() {
        return Err(Error::SingularPoint);
    }
    grad.normalized()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationOp {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "!=")]
    NotEqual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub left: QuadSurd,
    pub op: RelationOp,
    pub right: QuadSurd,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub rows: Vec<Relation>,
    pub overall: bool,
}

impl RelationReport {
    fn from_rows(rows: Vec<Relation>) -> Self {
        let overall = rows.iter().all(|r| r.holds);
        RelationReport { rows, overall }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.rows.iter().find(|r| r.name == name)
    }
}

fn eq_row(name: &str, left: QuadSurd, right: QuadSurd) -> Relation {
    Relation {
        name: name.to_string(),
        holds: left == right,
        left,
        op: RelationOp::Equal,
        right,
    }
}

fn ne_row(name: &str, left: QuadSurd, right: QuadSurd) -> Relation {
    Relation {
        name: name.to_string(),
        holds: left != right,
        left,
        op: RelationOp::NotEqual,
        right,
    }
}

/// The eight vanishing triple products of a hyperbolic eigenframe, plus
/// `L(u) = L(v) = 0`.
pub fn check_hyperbolic_relations(
    t: &TrilinearForm,
    l: &LinearForm,
    u: &FieldVector,
    v: &FieldVector,
    w: &FieldVector,
) -> Result<RelationReport> {
    let z = QuadSurd::zero;
    let products: [(&str, [&FieldVector; 3]); 8] = [
        ("u^3", [u, u, u]),
        ("v^3", [v, v, v]),
        ("u^2 v", [u, u, v]),
        ("u v^2", [u, v, v]),
        ("u^2 w", [u, u, w]),
        ("u w^2", [u, w, w]),
        ("v^2 w", [v, v, w]),
        ("v w^2", [v, w, w]),
    ];
    let mut rows = Vec::with_capacity(10);
    for (name, [a, b, c]) in products {
        rows.push(eq_row(name, t.eval(a, b, c)?, z()));
    }
    rows.push(eq_row("L(u)", l.apply(u)?, z()));
    rows.push(eq_row("L(v)", l.apply(v)?, z()));
    Ok(RelationReport::from_rows(rows))
}

/// Relations of a unipotent frame `(w, w1, w2)`.
///
/// When every other row holds but `w·w2² = 0`, the frame is that of a
/// non-geometric input and the result is a [`Mechanism::Lefschetz`] error.
pub fn check_unipotent_relations(
    t: &TrilinearForm,
    l: &LinearForm,
    w: &[i64; 3],
    w1: &[i64; 3],
    w2: &[i64; 3],
) -> Result<RelationReport> {
    let tri = |a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]| -> QuadSurd {
        QuadSurd::from(Rational::new(t.eval_scaled_int(a, b, c), 6.into()))
    };
    let z = QuadSurd::zero;
    let lin = |v: &[i64; 3]| QuadSurd::from(big_rat(l.apply_int(v)));
    let mut rows = vec![eq_row("L(w)", lin(w), z()), eq_row("L(w1)", lin(w1), z())];
    for (i, name) in ["w^2 x", "w^2 y", "w^2 z"].iter().enumerate() {
        let mut e = [0i64; 3];
        e[i] = 1;
        rows.push(eq_row(name, tri(w, w, &e), z()));
    }
    rows.push(eq_row("w1^3", tri(w1, w1, w1), z()));
    rows.push(eq_row("w w1^2", tri(w, w1, w1), z()));
    rows.push(eq_row("w w1 w2", tri(w, w1, w2), z()));
    let w_w2w2 = tri(w, w2, w2);
    let two_w1_w2w2 = tri(w1, w2, w2).scale(&int(2));
    let minus_two_w1w1_w2 = tri(w1, w1, w2).scale(&int(-2));
    rows.push(eq_row("w w2^2 = 2 w1 w2^2", w_w2w2.clone(), two_w1_w2w2.clone()));
    rows.push(eq_row(
        "2 w1 w2^2 = -2 w1^2 w2",
        two_w1_w2w2,
        minus_two_w1w1_w2,
    ));
    rows.push(ne_row("w w2^2 != 0", w_w2w2, z()));
    let report = RelationReport::from_rows(rows);
    let failing = report.failing();
    if failing == ["w w2^2 != 0"] {
        return Err(Error::geometric(
            Mechanism::Lefschetz,
            "every other unipotent relation holds but w*w2^2 = 0",
        ));
    }
    Ok(report)
}

/// A cubic over a quadratic field, by monomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdCubic(pub [QuadSurd; 10]);

impl SurdCubic {
    /// Collects `Σ_{ijk} f(i, j, k)·x_i·x_j·x_k` by monomial.
    pub fn from_ordered_terms(
        mut f: impl FnMut(usize, usize, usize) -> Result<QuadSurd>,
    ) -> Result<Self> {
        let mut c: [QuadSurd; 10] = std::array::from_fn(|_| QuadSurd::zero());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let n = triple_index(i, j, k);
                    c[n] = c[n].checked_add(&f(i, j, k)?)?;
                }
            }
        }
        Ok(SurdCubic(c))
    }

    pub fn of_form(t: &TrilinearForm) -> Self {
        SurdCubic(monomials_as_surds(t))
    }

    pub fn gradient(&self, p: &FieldVector) -> Result<[QuadSurd; 3]> {
        let mut grad: [QuadSurd; 3] = std::array::from_fn(|_| QuadSurd::zero());
        for (n, triple) in MONOMIAL_TRIPLES.iter().enumerate() {
            if self.0[n].is_zero() {
                continue;
            }
            for (var, slot) in grad.iter_mut().enumerate() {
                let exp = triple.iter().filter(|&&i| i == var).count();
                if exp == 0 {
                    continue;
                }
                let mut term = self.0[n].scale(&big_rat(exp as i64));
                let mut dropped = false;
                for &i in triple {
                    if i == var && !dropped {
                        dropped = true;
                        continue;
                    }
                    term = term.checked_mul(&p.0[i])?;
                }
                *slot = slot.checked_add(&term)?;
            }
        }
        Ok(grad)
    }
}

/// Frame basis vectors in standard coordinates (the columns of `P`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frame(pub [FieldVector; 3]);

impl Frame {
    pub fn from_ints(cols: [&[i64; 3]; 3]) -> Self {
        Frame(cols.map(FieldVector::from_ints))
    }

    pub(crate) fn matrix(&self) -> SurdMat {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[j].0[i].clone()))
    }

    pub(crate) fn inverse(&self) -> Result<SurdMat> {
        inverse(&self.matrix())
    }

    /// Standard coordinates of the frame point `(y0, y1, y2)`.
    pub fn to_standard(&self, y: &FieldVector) -> Result<FieldVector> {
        mat_vec(&self.matrix(), y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadricShape {
    /// `Q = A·z² + 6B·xy` in the frame `(u, v, w)`.
    Hyperbolic { a: QuadSurd, b: QuadSurd },
    /// `Q = F·z² + 2E·xz - E·y² + E·yz` in the frame `(w, w1, w2)`.
    Unipotent {
        #[serde(with = "serde_rational")]
        e: Rational,
        #[serde(with = "serde_rational")]
        f: Rational,
    },
}

/// Splitting of the cubic, with factors in both frame and standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factorization {
    /// `C = L1·L2·L`; in the frame `L1 = 6B·y`, `L2 = x`.
    ThreeLines {
        frame: Frame,
        a: QuadSurd,
        b: QuadSurd,
        l1: Covector,
        l2: Covector,
        l: LinearForm,
        l1_rational: bool,
        l2_rational: bool,
    },
    /// `C = Q·L`.
    QuadricLine {
        frame: Frame,
        shape: QuadricShape,
        quadric_in_frame: QuadraticForm,
        quadric: QuadraticForm,
        l: LinearForm,
        tangency_points: Vec<FieldVector>,
    },
}

impl Factorization {
    pub fn frame(&self) -> &Frame {
        match self {
            Factorization::ThreeLines { frame, .. } | Factorization::QuadricLine { frame, .. } => {
                frame
            }
        }
    }

    pub fn linear_factor(&self) -> &LinearForm {
        match self {
            Factorization::ThreeLines { l, .. } | Factorization::QuadricLine { l, .. } => l,
        }
    }

    /// Multiplies the standard-coordinate factors back out.
    pub fn expand_standard(&self) -> Result<SurdCubic> {
        let l = self.linear_factor().as_field_vector();
        match self {
            Factorization::ThreeLines { l1, l2, .. } => SurdCubic::from_ordered_terms(|i, j, k| {
                l1.0[i].checked_mul(&l2.0[j])?.checked_mul(&l.0[k])
            }),
            Factorization::QuadricLine { quadric, .. } => {
                SurdCubic::from_ordered_terms(|i, j, k| quadric.m[i][j].checked_mul(&l.0[k]))
            }
        }
    }

    /// The expanded factors reproduce all ten coefficients of `C`.
    pub fn reconstructs(&self, t: &TrilinearForm) -> Result<bool> {
        Ok(self.expand_standard()? == SurdCubic::of_form(t))
    }
}

fn covector_row(m: &SurdMat, r: usize) -> Covector {
    FieldVector(m[r].clone())
}

/// `Q_std(x) = Q_frame(P⁻¹x) / L(P·e3)`, so that `C = Q_std·L`.
fn quadric_to_standard(q_frame: &QuadraticForm, p_inv: &SurdMat, l_last: &QuadSurd) -> Result<QuadraticForm> {
    let q = q_frame.congruent(p_inv)?;
    let scale = l_last.inv()?;
    QuadraticForm::new(q.m.map(|r| r.map(|x| x.checked_mul(&scale).expect("same field"))))
}

/// Splits `C` in the hyperbolic eigenframe: `(xu + yv + zw)³ = z(Az² + 6Bxy)`.
pub fn hyperbolic_factorization(
    t: &TrilinearForm,
    l: &LinearForm,
    u: &FieldVector,
    v: &FieldVector,
    w: &[i64; 3],
) -> Result<Factorization> {
    let wv = FieldVector::from_ints(w);
    let report = check_hyperbolic_relations(t, l, u, v, &wv)?;
    if !report.overall {
        return Err(Error::RelationsNotVerified(report.failing().join(", ")));
    }
    let a = t.eval(&wv, &wv, &wv)?;
    let b = t.eval(u, v, &wv)?;
    if b.is_zero() {
        return Err(Error::geometric(
            Mechanism::HodgeIndex,
            "B = uvw vanishes in the hyperbolic eigenframe",
        ));
    }
    let frame = Frame([u.clone(), v.clone(), wv]);
    let p_inv = frame.inverse()?;
    let l_w = QuadSurd::from(big_rat(l.apply_int(w)));
    let fact = if a.is_zero() {
        let l1 = covector_row(&p_inv, 1).scale(&b.scale(&int(6)))?;
        let l2 = covector_row(&p_inv, 0).scale(&l_w.inv()?)?;
        Factorization::ThreeLines {
            frame,
            a,
            l1_rational: l1.is_rational(),
            l2_rational: l2.is_rational(),
            b,
            l1,
            l2,
            l: *l,
        }
    } else {
        let three_b = b.scale(&int(3));
        let z = QuadSurd::zero;
        let quadric_in_frame = QuadraticForm::new([
            [z(), three_b.clone(), z()],
            [three_b, z(), z()],
            [z(), z(), a.clone()],
        ])?;
        let quadric = quadric_to_standard(&quadric_in_frame, &p_inv, &l_w)?;
        Factorization::QuadricLine {
            frame,
            shape: QuadricShape::Hyperbolic { a, b },
            quadric_in_frame,
            quadric,
            l: *l,
            tangency_points: vec![u.clone(), v.clone()],
        }
    };
    if !fact.reconstructs(t)? {
        return Err(Error::RelationsNotVerified(
            "factors do not multiply back to the cubic".into(),
        ));
    }
    Ok(fact)
}

/// Output of [`unipotent_factorization`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentFactorization {
    #[serde(with = "serde_rational")]
    pub e: Rational,
    #[serde(with = "serde_rational")]
    pub f: Rational,
    /// `(L(w), L(w1), L(w2))`: `L` read in the frame, `L(w2)·z`.
    pub l_in_frame: [i64; 3],
    pub factorization: Factorization,
}

/// Splits `C` in the unipotent frame:
/// `(xw + yw1 + zw2)³ = z(Fz² + 2Exz - Ey² + Eyz)` with `E = 3·ww2²/2`, `F = w2³`.
pub fn unipotent_factorization(
    t: &TrilinearForm,
    l: &LinearForm,
    w: &[i64; 3],
    w1: &[i64; 3],
    w2: &[i64; 3],
) -> Result<UnipotentFactorization> {
    let tri = |a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]| {
        Rational::new(t.eval_scaled_int(a, b, c), 6.into())
    };
    let e = tri(w, w2, w2) * rat(3, 2);
    let f = tri(w2, w2, w2);
    if e == int(0) {
        return Err(Error::geometric(
            Mechanism::Lefschetz,
            "E = 3*w*w2^2/2 vanishes in the unipotent frame",
        ));
    }
    let l_in_frame = [w, w1, w2].map(|v| l.apply_int(v));
    if l_in_frame[0] != 0 || l_in_frame[1] != 0 {
        return Err(Error::RelationsNotVerified("L(w) = L(w1) = 0".into()));
    }
    let l_in_frame = l_in_frame.map(|x| i64::try_from(x).unwrap_or(i64::MAX));
    let half_e = &e / int(2);
    let q = |r: &Rational| QuadSurd::from(r.clone());
    let z = QuadSurd::zero;
    let quadric_in_frame = QuadraticForm::new([
        [z(), z(), q(&e)],
        [z(), q(&-e.clone()), q(&half_e)],
        [q(&e), q(&half_e), q(&f)],
    ])?;
    if tangent_plane(&quadric_in_frame, &FieldVector::basis(0))? != FieldVector::basis(2) {
        return Err(Error::RelationsNotVerified("tangent plane at w is z = 0".into()));
    }
    let frame = Frame::from_ints([w, w1, w2]);
    let p_inv = frame.inverse()?;
    let l_last = QuadSurd::from_int(l_in_frame[2]);
    let quadric = quadric_to_standard(&quadric_in_frame, &p_inv, &l_last)?;
    let factorization = Factorization::QuadricLine {
        frame,
        shape: QuadricShape::Unipotent {
            e: e.clone(),
            f: f.clone(),
        },
        quadric_in_frame,
        quadric,
        l: *l,
        tangency_points: vec![FieldVector::from_ints(w)],
    };
    if !factorization.reconstructs(t)? {
        return Err(Error::RelationsNotVerified(
            "factors do not multiply back to the cubic".into(),
        ));
    }
    Ok(UnipotentFactorization {
        e,
        f,
        l_in_frame,
        factorization,
    })
}

/// Exact square root of a rational, as a surd.
fn rational_sqrt(r: &Rational) -> Option<QuadSurd> {
    use num_traits::{Signed, ToPrimitive};
    if r.is_negative() {
        return None;
    }
    // √(n/d) = √(n·d)/d
    let nd = (r.numer() * r.denom()).to_u64()?;
    Some(QuadSurd::sqrt(nd).scale(&Rational::new(1.into(), r.denom().clone())))
}

/// Lines through the origin on `a·x² + 2b·xy + c·y² = 0`.
fn binary_quadratic_lines(a: &QuadSurd, b: &QuadSurd, c: &QuadSurd) -> Result<Vec<[QuadSurd; 2]>> {
    let one = QuadSurd::one;
    let zero = QuadSurd::zero;
    let two_b = b.scale(&int(2));
    let mut lines: Vec<[QuadSurd; 2]> = Vec::new();
    if a.is_zero() && c.is_zero() {
        if !b.is_zero() {
            lines.push([one(), zero()]);
            lines.push([zero(), one()]);
        }
    } else if a.is_zero() {
        lines.push([one(), zero()]);
        if !b.is_zero() {
            lines.push([c.clone(), -&two_b]);
        }
    } else if c.is_zero() {
        lines.push([zero(), one()]);
        if !b.is_zero() {
            lines.push([two_b, -a]);
        }
    } else {
        let disc = b.checked_mul(b)?.checked_sub(&a.checked_mul(c)?)?;
        if disc.is_zero() {
            lines.push([b.clone(), -a]);
        } else if disc.is_positive() {
            let root = disc
                .to_rational()
                .and_then(|r| rational_sqrt(&r))
                .ok_or_else(|| Error::RelationsNotVerified("discriminant has no exact root".into()))?;
            let minus_b = -b;
            lines.push([minus_b.checked_add(&root)?, a.clone()]);
            lines.push([minus_b.checked_sub(&root)?, a.clone()]);
        }
    }
    Ok(lines)
}

/// Singular lines of a verified factorization: the pairwise intersections
/// of the three planes, or the lines of `Q ∩ L`.
///
/// Every returned line is checked against the exact gradient of the
/// expanded cubic.
pub fn singular_locus(f: &Factorization) -> Result<Vec<FieldVector>> {
    let lines = match f {
        Factorization::ThreeLines { frame, .. } => frame.0.to_vec(),
        Factorization::QuadricLine {
            frame,
            quadric_in_frame,
            ..
        } => {
            let m = quadric_in_frame.matrix();
            let mut out = Vec::new();
            for [x, y] in binary_quadratic_lines(&m[0][0], &m[0][1], &m[1][1])? {
                out.push(frame.to_standard(&FieldVector([x, y, QuadSurd::zero()]))?);
            }
            out
        }
    };
    let cubic = f.expand_standard()?;
    let mut result = Vec::with_capacity(lines.len());
    for line in lines {
        if cubic.gradient(&line)?.iter().any(|g| !g.is_zero()) {
            return Err(Error::RelationsNotVerified(format!(
                "gradient does not vanish on {line}"
            )));
        }
        result.push(line.normalized()?);
    }
    Ok(result)
}

/// True iff `∇C(p) = 0`.
pub fn gradient_vanishes(t: &TrilinearForm, p: &FieldVector) -> Result<bool> {
    Ok(t.gradient(p)?.iter().all(QuadSurd::is_zero))
}
