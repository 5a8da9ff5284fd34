//! The rank-3 lattice and its structures: the symmetric trilinear form of a
//! cubic, the linear form `L`, unimodular lattice maps, and vectors over a
//! real quadratic field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_rat, QuadSurd, Rational};
use crate::error::{Error, Result};

/// Monomial keys of a ternary cubic, in the order used everywhere.
pub const MONOMIAL_KEYS: [&str; 10] = [
    "x3", "x2y", "x2z", "xy2", "xyz", "xz2", "y3", "y2z", "yz2", "z3",
];

/// Sorted index triple of each monomial, aligned with [`MONOMIAL_KEYS`].
pub const MONOMIAL_TRIPLES: [[usize; 3]; 10] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 0, 2],
    [0, 1, 1],
    [0, 1, 2],
    [0, 2, 2],
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 2],
    [2, 2, 2],
];

/// Number of distinct orderings of each monomial's index triple.
pub const MULTINOMIALS: [i64; 10] = [1, 3, 3, 3, 6, 3, 1, 3, 3, 1];

pub(crate) fn triple_index(i: usize, j: usize, k: usize) -> usize {
    let mut t = [i, j, k];
    t.sort_unstable();
    MONOMIAL_TRIPLES
        .iter()
        .position(|m| *m == t)
        .expect("indices in 0..3")
}

/// Symmetric trilinear form `T` with `C(v) = T(v, v, v)`.
///
/// Stored as `6·T` on the ten sorted index triples. For a cubic with integer
/// monomial coefficients `6·T` is integral, and it stays integral under
/// integer changes of basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrilinearForm {
    scaled: [BigInt; 10],
}

impl TrilinearForm {
    /// Polarizes a cubic given by its monomial coefficients.
    pub fn from_monomials<T: Into<BigInt> + Clone>(coeffs: &[T; 10]) -> Self {
        let scaled = std::array::from_fn(|n| {
            let c: BigInt = coeffs[n].clone().into();
            c * (6 / MULTINOMIALS[n])
        });
        TrilinearForm { scaled }
    }

    pub fn monomial_coefficients(&self) -> [BigInt; 10] {
        std::array::from_fn(|n| {
            let num = &self.scaled[n] * MULTINOMIALS[n];
            let (q, r) = num.div_rem(&BigInt::from(6));
            debug_assert!(r.is_zero());
            q
        })
    }

    /// `T(e_i, e_j, e_k)`.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Rational {
        Rational::new(self.scaled[triple_index(i, j, k)].clone(), BigInt::from(6))
    }

    /// `6·T(a, b, c)` on integer vectors.
    pub fn eval_scaled_int(&self, a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..3 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..3 {
                if b[j] == 0 {
                    continue;
                }
                for k in 0..3 {
                    if c[k] == 0 {
                        continue;
                    }
                    let w = BigInt::from(a[i]) * b[j] * c[k];
                    acc += &self.scaled[triple_index(i, j, k)] * w;
                }
            }
        }
        acc
    }

    /// Exact `T(a, b, c)` over a common quadratic field.
    pub fn eval(&self, a: &FieldVector, b: &FieldVector, c: &FieldVector) -> Result<QuadSurd> {
        let mut acc = QuadSurd::zero();
        for i in 0..3 {
            for j in 0..3 {
                let ab = a.0[i].checked_mul(&b.0[j])?;
                if ab.is_zero() {
                    continue;
                }
                for k in 0..3 {
                    if c.0[k].is_zero() {
                        continue;
                    }
                    let term = ab.checked_mul(&c.0[k])?.scale(&self.entry(i, j, k));
                    acc = acc.checked_add(&term)?;
                }
            }
        }
        Ok(acc)
    }

    pub fn cubic_eval(&self, v: &FieldVector) -> Result<QuadSurd> {
        self.eval(v, v, v)
    }

    /// Pullback `(g·T)(a, b, c) = T(ga, gb, gc)`.
    pub fn transform(&self, g: &LatticeMap) -> TrilinearForm {
        let cols = [g.column(0), g.column(1), g.column(2)];
        let scaled = std::array::from_fn(|n| {
            let [i, j, k] = MONOMIAL_TRIPLES[n];
            self.eval_scaled_int(&cols[i], &cols[j], &cols[k])
        });
        TrilinearForm { scaled }
    }

    /// Exact gradient of `C` at `p`: the components `3·T(p, p, e_i)`.
    pub fn gradient(&self, p: &FieldVector) -> Result<[QuadSurd; 3]> {
        let mut out = [QuadSurd::zero(), QuadSurd::zero(), QuadSurd::zero()];
        for (i, slot) in out.iter_mut().enumerate() {
            let e = FieldVector::basis(i);
            *slot = self.eval(p, p, &e)?.scale(&big_rat(3));
        }
        Ok(out)
    }
}

pub fn transform_cubic(t: &TrilinearForm, g: &LatticeMap) -> TrilinearForm {
    t.transform(g)
}

pub fn trilinear_eval(
    t: &TrilinearForm,
    a: &FieldVector,
    b: &FieldVector,
    c: &FieldVector,
) -> Result<QuadSurd> {
    t.eval(a, b, c)
}

pub fn cubic_eval(t: &TrilinearForm, v: &FieldVector) -> Result<QuadSurd> {
    t.cubic_eval(v)
}

/// Integral covector; the pairing with the second Chern class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm(pub [i64; 3]);

impl LinearForm {
    /// Rejects the zero form.
    pub fn nonzero(coeffs: [i64; 3]) -> Result<Self> {
        if coeffs == [0, 0, 0] {
            return Err(Error::ZeroVector);
        }
        Ok(LinearForm(coeffs))
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.0
    }

    pub fn apply_int(&self, v: &[i64; 3]) -> i128 {
        (0..3).map(|i| self.0[i] as i128 * v[i] as i128).sum()
    }

    pub fn apply(&self, v: &FieldVector) -> Result<QuadSurd> {
        let mut acc = QuadSurd::zero();
        for i in 0..3 {
            acc = acc.checked_add(&v.0[i].scale(&big_rat(self.0[i])))?;
        }
        Ok(acc)
    }

    /// `L ∘ g`, as a row vector times the matrix.
    pub fn compose(&self, g: &LatticeMap) -> [i128; 3] {
        std::array::from_fn(|j| self.apply_int(&g.column(j)))
    }

    pub fn is_preserved_by(&self, g: &LatticeMap) -> bool {
        self.compose(g) == self.0.map(i128::from)
    }

    pub fn as_field_vector(&self) -> FieldVector {
        FieldVector::from_ints(&self.0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.0.map(|c| c.to_string()))
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, coeffs: &[String; 3]) -> fmt::Result {
    let vars = ["x", "y", "z"];
    let mut first = true;
    for (c, v) in coeffs.iter().zip(vars) {
        if c == "0" {
            continue;
        }
        let grouped = c.contains(' ');
        let (sign, body) = match c.strip_prefix('-') {
            Some(rest) if !grouped => ("-", rest),
            _ => ("+", c.as_str()),
        };
        if first {
            if sign == "-" {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match body {
            "1" => f.write_str(v)?,
            _ if grouped => write!(f, "({body}){v}")?,
            _ => write!(f, "{body}{v}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A 3×3 integer matrix with determinant ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 3]; 3]", into = "[[i64; 3]; 3]")]
pub struct LatticeMap {
    m: [[i64; 3]; 3],
}

pub(crate) fn det3(m: &[[i64; 3]; 3]) -> i128 {
    let e = |i: usize, j: usize| m[i][j] as i128;
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
        - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

pub(crate) fn mat_mul_checked(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> Option<[[i64; 3]; 3]> {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0i64;
            for k in 0..3 {
                acc = acc.checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

impl LatticeMap {
    pub fn new(m: [[i64; 3]; 3]) -> Result<Self> {
        match det3(&m) {
            1 | -1 => Ok(LatticeMap { m }),
            d => Err(Error::NotUnimodular(d)),
        }
    }

    pub fn identity() -> Self {
        LatticeMap {
            m: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    pub fn entries(&self) -> &[[i64; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> i64 {
        det3(&self.m) as i64
    }

    pub fn trace(&self) -> i128 {
        (0..3).map(|i| self.m[i][i] as i128).sum()
    }

    pub fn column(&self, j: usize) -> [i64; 3] {
        [self.m[0][j], self.m[1][j], self.m[2][j]]
    }

    pub fn is_identity(&self) -> bool {
        *self == LatticeMap::identity()
    }

    pub fn checked_mul(&self, other: &LatticeMap) -> Option<LatticeMap> {
        mat_mul_checked(&self.m, &other.m).map(|m| LatticeMap { m })
    }

    pub fn checked_pow(&self, n: u32) -> Option<LatticeMap> {
        let mut acc = LatticeMap::identity();
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    /// Exact inverse; `None` only if an adjugate entry overflows `i64`.
    pub fn inverse(&self) -> Option<LatticeMap> {
        let m = |i: usize, j: usize| self.m[i % 3][j % 3] as i128;
        let det = det3(&self.m);
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of (j, i) gives the adjugate entry (i, j)
                let c = m(j + 1, i + 1) * m(j + 2, i + 2) - m(j + 1, i + 2) * m(j + 2, i + 1);
                out[i][j] = i64::try_from(c * det).ok()?;
            }
        }
        Some(LatticeMap { m: out })
    }

    pub fn apply(&self, v: &[i64; 3]) -> Option<[i64; 3]> {
        let mut out = [0i64; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (j, vj) in v.iter().enumerate() {
                acc = acc.checked_add(self.m[i][j].checked_mul(*vj)?)?;
            }
            *slot = acc;
        }
        Some(out)
    }

    pub fn apply_field(&self, v: &FieldVector) -> Result<FieldVector> {
        let mut out = FieldVector::zero();
        for i in 0..3 {
            let mut acc = QuadSurd::zero();
            for j in 0..3 {
                acc = acc.checked_add(&v.0[j].scale(&big_rat(self.m[i][j])))?;
            }
            out.0[i] = acc;
        }
        Ok(out)
    }

    /// `g - id` as a plain integer matrix.
    pub fn minus_identity(&self) -> [[i64; 3]; 3] {
        let mut n = self.m;
        for (i, row) in n.iter_mut().enumerate() {
            row[i] -= 1;
        }
        n
    }
}

impl TryFrom<[[i64; 3]; 3]> for LatticeMap {
    type Error = Error;
    fn try_from(m: [[i64; 3]; 3]) -> Result<Self> {
        LatticeMap::new(m)
    }
}

impl From<LatticeMap> for [[i64; 3]; 3] {
    fn from(g: LatticeMap) -> Self {
        g.m
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// True iff `g` preserves both the cubic and the linear form.
pub fn preserves_pair(g: &LatticeMap, t: &TrilinearForm, l: &LinearForm) -> bool {
    l.is_preserved_by(g) && t.transform(g) == *t
}

/// A vector with coordinates in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldVector(pub [QuadSurd; 3]);

/// Covectors share the representation.
pub type Covector = FieldVector;

impl FieldVector {
    pub fn zero() -> Self {
        FieldVector([QuadSurd::zero(), QuadSurd::zero(), QuadSurd::zero()])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = FieldVector::zero();
        v.0[i] = QuadSurd::one();
        v
    }

    pub fn from_ints(v: &[i64; 3]) -> Self {
        FieldVector(v.map(QuadSurd::from_int))
    }

    pub fn from_rationals(v: [Rational; 3]) -> Self {
        FieldVector(v.map(QuadSurd::from))
    }

    pub fn coords(&self) -> &[QuadSurd; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(QuadSurd::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(QuadSurd::is_rational)
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_ints(&self) -> Option<[i64; 3]> {
        let mut out = [0i64; 3];
        for (slot, c) in out.iter_mut().zip(&self.0) {
            let r = c.to_rational()?;
            if !r.is_integer() {
                return None;
            }
            *slot = r.to_integer().to_i64()?;
        }
        Some(out)
    }

    pub fn checked_add(&self, other: &FieldVector) -> Result<FieldVector> {
        Ok(FieldVector([
            self.0[0].checked_add(&other.0[0])?,
            self.0[1].checked_add(&other.0[1])?,
            self.0[2].checked_add(&other.0[2])?,
        ]))
    }

    pub fn scale(&self, s: &QuadSurd) -> Result<FieldVector> {
        Ok(FieldVector([
            self.0[0].checked_mul(s)?,
            self.0[1].checked_mul(s)?,
            self.0[2].checked_mul(s)?,
        ]))
    }

    pub fn dot(&self, other: &FieldVector) -> Result<QuadSurd> {
        let mut acc = QuadSurd::zero();
        for i in 0..3 {
            acc = acc.checked_add(&self.0[i].checked_mul(&other.0[i])?)?;
        }
        Ok(acc)
    }

    pub fn cross(&self, other: &FieldVector) -> Result<FieldVector> {
        let c = |i: usize, j: usize| -> Result<QuadSurd> {
            self.0[i]
                .checked_mul(&other.0[j])?
                .checked_sub(&self.0[j].checked_mul(&other.0[i])?)
        };
        Ok(FieldVector([c(1, 2)?, c(2, 0)?, c(0, 1)?]))
    }

    /// Projective representative: first nonzero coordinate scaled to 1.
    pub fn normalized(&self) -> Result<FieldVector> {
        let lead = self
            .0
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroVector)?;
        self.scale(&lead.inv()?)
    }

    /// Same line through the origin.
    pub fn projective_eq(&self, other: &FieldVector) -> bool {
        match (self.normalized(), other.normalized()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Renders a covector as a linear form in `x, y, z`.
pub fn display_covector(c: &Covector) -> String {
    struct Lin<'a>(&'a Covector);
    impl fmt::Display for Lin<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_linear(f, &self.0 .0.clone().map(|c| c.to_string()))
        }
    }
    Lin(c).to_string()
}

/// `v = p·w̄` with `w̄` primitive and its first nonzero coordinate positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primitive {
    pub vector: [i64; 3],
    pub scale: i64,
    /// Set when `v = -p·w̄`.
    pub negated: bool,
}

pub fn primitive_part(v: &[i64; 3]) -> Result<Primitive> {
    if *v == [0, 0, 0] {
        return Err(Error::ZeroVector);
    }
    let g = v
        .iter()
        .fold(BigInt::zero(), |acc, &c| acc.gcd(&BigInt::from(c)));
    let g = g.to_i64().ok_or(Error::Overflow)?;
    let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(1);
    let negated = lead < 0;
    let vector = v.map(|c| {
        let q = c / g;
        if negated {
            -q
        } else {
            q
        }
    });
    Ok(Primitive {
        vector,
        scale: g,
        negated,
    })
}

/// Integer kernel direction of a rank-2 integer matrix, made primitive.
pub(crate) fn integer_kernel_line(rows: &[[i64; 3]; 3]) -> Option<[i64; 3]> {
    let cross = |a: &[i64; 3], b: &[i64; 3]| -> [i128; 3] {
        let (a, b) = (a.map(i128::from), b.map(i128::from));
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&rows[i], &rows[j]);
        if c != [0, 0, 0] {
            let g = c.iter().fold(0i128, |acc, &x| acc.gcd(&x));
            let v = c.map(|x| x / g);
            let v = [
                i64::try_from(v[0]).ok()?,
                i64::try_from(v[1]).ok()?,
                i64::try_from(v[2]).ok()?,
            ];
            return primitive_part(&v).ok().map(|p| p.vector);
        }
    }
    None
}

/// Monomial coefficients lifted to surds, for comparing reconstructed cubics.
pub fn monomials_as_surds(t: &TrilinearForm) -> [QuadSurd; 10] {
    t.monomial_coefficients()
        .map(|c| QuadSurd::from(Rational::from_integer(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, solve_unit_quadratic};

    fn cubic(pairs: &[(&str, i64)]) -> TrilinearForm {
        let mut c = [0i64; 10];
        for (k, v) in pairs {
            c[MONOMIAL_KEYS.iter().position(|m| m == k).unwrap()] = *v;
        }
        TrilinearForm::from_monomials(&c)
    }

    fn golden() -> TrilinearForm {
        cubic(&[("x2z", 1), ("xyz", -1), ("y2z", -1)])
    }

    fn e(i: usize) -> FieldVector {
        FieldVector::basis(i)
    }

    #[test]
    fn trilinear_examples() {
        let t = cubic(&[("xyz", 6)]);
        assert_eq!(t.eval(&e(0), &e(1), &e(2)).unwrap(), QuadSurd::one());
        assert_eq!(t.eval(&e(0), &e(0), &e(0)).unwrap(), QuadSurd::zero());
        let u = cubic(&[("z3", 1), ("xz2", 6), ("y2z", -3), ("yz2", 3)]);
        assert_eq!(u.eval(&e(0), &e(2), &e(2)).unwrap(), QuadSurd::from_int(2));
    }

    #[test]
    fn cubic_eval_examples() {
        let t = cubic(&[("xyz", 6)]);
        assert_eq!(
            t.cubic_eval(&FieldVector::from_ints(&[1, 1, 1])).unwrap(),
            QuadSurd::from_int(6)
        );
        let (_, lo) = solve_unit_quadratic(3).unwrap();
        // (-1 + √5)/2 = 1 - (3 - √5)/2
        let y = &QuadSurd::one() - &lo;
        assert_eq!(y, QuadSurd::new(rat(-1, 2), rat(1, 2), 5));
        let p = FieldVector([QuadSurd::one(), y, QuadSurd::zero()]);
        assert_eq!(golden().cubic_eval(&p).unwrap(), QuadSurd::zero());
        let z3 = cubic(&[("z3", 1)]);
        assert_eq!(
            z3.cubic_eval(&FieldVector::from_ints(&[0, 0, 2])).unwrap(),
            QuadSurd::from_int(8)
        );
    }

    #[test]
    fn transform_examples() {
        let t = golden();
        assert_eq!(t.transform(&LatticeMap::identity()), t);
        let cyc = LatticeMap::new([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap();
        let s = cubic(&[("xyz", 6)]);
        assert_eq!(s.transform(&cyc), s);
        let g = LatticeMap::new([[2, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(t.transform(&g), t);
    }

    #[test]
    fn preserves_pair_examples() {
        let z = LinearForm([0, 0, 1]);
        let g = LatticeMap::new([[2, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        assert!(preserves_pair(&LatticeMap::identity(), &golden(), &z));
        assert!(preserves_pair(&g, &golden(), &z));
        let shear = LatticeMap::new([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(!preserves_pair(&shear, &cubic(&[("xyz", 6)]), &z));
    }

    #[test]
    fn primitive_examples() {
        let p = primitive_part(&[2, 4, 6]).unwrap();
        assert_eq!((p.vector, p.scale, p.negated), ([1, 2, 3], 2, false));
        let p = primitive_part(&[1, 0, 0]).unwrap();
        assert_eq!((p.vector, p.scale, p.negated), ([1, 0, 0], 1, false));
        let p = primitive_part(&[-3, 0, 6]).unwrap();
        assert_eq!((p.vector, p.scale, p.negated), ([1, 0, -2], 3, true));
        assert_eq!(primitive_part(&[0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn unimodular_guard_and_inverse() {
        assert_eq!(
            LatticeMap::new([[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
            Err(Error::NotUnimodular(2))
        );
        let g = LatticeMap::new([[2, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        let inv = g.inverse().unwrap();
        assert_eq!(inv.entries(), &[[1, -1, 0], [-1, 2, 0], [0, 0, 1]]);
        assert!(g.checked_mul(&inv).unwrap().is_identity());
        let h = LatticeMap::new([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(h.det(), -1);
        assert!(h.checked_mul(&h.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn monomial_roundtrip() {
        let c: [i64; 10] = [1, -2, 3, 4, -5, 6, 7, -8, 9, 10];
        let t = TrilinearForm::from_monomials(&c);
        assert_eq!(t.monomial_coefficients(), c.map(BigInt::from));
        assert_eq!(t.entry(0, 1, 2), rat(-5, 6));
        assert_eq!(t.entry(2, 1, 0), rat(-5, 6));
        assert_eq!(t.entry(0, 0, 1), rat(-2, 3));
    }

    #[test]
    fn gradient_of_xyz() {
        let t = cubic(&[("xyz", 6)]);
        let g = t.gradient(&FieldVector::from_ints(&[1, 2, 3])).unwrap();
        assert_eq!(g, [6, 3, 2].map(|x| QuadSurd::from_int(x)).map(|x| x.scale(&rat(6, 1))));
    }
}
