//! Classification of a single lattice symmetry: finite order, hyperbolic
//! (a real eigenvalue `α > 1`), or unipotent, with exact eigen-data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{solve_unit_quadratic, CubicPolyZ, QuadSurd};
use crate::error::{Error, Result};
use crate::forms::{integer_kernel_line, mat_mul_checked, FieldVector, LatticeMap, LinearForm};

/// Largest order searched by [`finite_order`]. Determinant-one elements
/// never exceed 6; the margin covers determinant −1.
pub const MAX_FINITE_ORDER: u32 = 12;

/// The non-real (or, for determinant −1, real) eigenvalue pair of a
/// finite-order symmetry besides the eigenvalue 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenTag {
    /// λ = −1 (double), order 2.
    MinusOne,
    /// λ = ±i, order 4.
    PlusMinusI,
    /// λ = 1/2 ± i√3/2, order 6.
    SixthRoot,
    /// λ = −1/2 ± i√3/2, order 3.
    CubeRoot,
    /// Determinant −1: the remaining eigenvalues are real.
    RealPair,
}

impl EigenTag {
    /// `λ + λ̄` for the determinant-one tags.
    pub fn trace_of_pair(self) -> Option<i64> {
        match self {
            EigenTag::MinusOne => Some(-2),
            EigenTag::PlusMinusI => Some(0),
            EigenTag::SixthRoot => Some(1),
            EigenTag::CubeRoot => Some(-1),
            EigenTag::RealPair => None,
        }
    }

    pub fn order(self) -> Option<u32> {
        match self {
            EigenTag::MinusOne => Some(2),
            EigenTag::PlusMinusI => Some(4),
            EigenTag::SixthRoot => Some(6),
            EigenTag::CubeRoot => Some(3),
            EigenTag::RealPair => None,
        }
    }
}

impl fmt::Display for EigenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EigenTag::MinusOne => "λ = -1",
            EigenTag::PlusMinusI => "λ = ±i",
            EigenTag::SixthRoot => "λ = 1/2 ± i√3/2",
            EigenTag::CubeRoot => "λ = -1/2 ± i√3/2",
            EigenTag::RealPair => "real pair (det -1)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementClass {
    Identity,
    FiniteOrder {
        n: u32,
        lambda_tag: EigenTag,
    },
    /// `g·u = u/α`, `g·v = α·v`, `g·w = w`, with `α > 1`; `u`, `v` are
    /// projectively normalized and `w` is primitive.
    Hyperbolic {
        s: i64,
        alpha: QuadSurd,
        u: FieldVector,
        v: FieldVector,
        w: [i64; 3],
    },
    /// `(g - id)·w2 = w1`, `(g - id)·w1 = w`, `(g - id)·w = 0`.
    UnipotentFull {
        w: [i64; 3],
        w1: [i64; 3],
        w2: [i64; 3],
    },
    UnipotentDeficient {
        rank_of_g_minus_id: u32,
    },
    OutOfTheory {
        reason: String,
    },
}

impl ElementClass {
    pub fn is_finite(&self) -> bool {
        matches!(self, ElementClass::Identity | ElementClass::FiniteOrder { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ElementClass::Identity => "identity",
            ElementClass::FiniteOrder { .. } => "finite_order",
            ElementClass::Hyperbolic { .. } => "hyperbolic",
            ElementClass::UnipotentFull { .. } => "unipotent_full",
            ElementClass::UnipotentDeficient { .. } => "unipotent_deficient",
            ElementClass::OutOfTheory { .. } => "out_of_theory",
        }
    }
}

/// `det(t·I - g)`.
pub fn char_poly(g: &LatticeMap) -> CubicPolyZ {
    let m = g.entries().map(|r| r.map(i128::from));
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    CubicPolyZ::new([1, -trace, minors, -(g.det() as i128)]).expect("monic")
}

/// Smallest `n ≤ 12` with `gⁿ = id`.
pub fn finite_order(g: &LatticeMap) -> Option<u32> {
    let mut power = *g;
    for n in 1..=MAX_FINITE_ORDER {
        if power.is_identity() {
            return Some(n);
        }
        power = power.checked_mul(g)?;
    }
    None
}

/// Trace `s` of the quadratic cofactor, for `char_poly = (t - 1)(t² - s·t + 1)`.
fn unit_cofactor_trace(g: &LatticeMap) -> Option<i64> {
    let (p, q) = char_poly(g).divide_by_t_minus_one()?;
    (q == 1).then_some(())?;
    i64::try_from(-p).ok()
}

pub fn finite_eigenvalue_tag(g: &LatticeMap) -> Result<EigenTag> {
    let n = finite_order(g).ok_or(Error::NotFiniteOrder)?;
    if n < 2 {
        return Err(Error::NotFiniteOrder);
    }
    if g.det() == -1 {
        return Ok(EigenTag::RealPair);
    }
    let tag = match unit_cofactor_trace(g) {
        Some(-2) => EigenTag::MinusOne,
        Some(0) => EigenTag::PlusMinusI,
        Some(1) => EigenTag::SixthRoot,
        Some(-1) => EigenTag::CubeRoot,
        _ => return Err(Error::InconsistentTag(n)),
    };
    if tag.order() != Some(n) {
        return Err(Error::InconsistentTag(n));
    }
    Ok(tag)
}

/// Frame of a unipotent symmetry `g ≠ id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnipotentFrame {
    Full {
        w: [i64; 3],
        w1: [i64; 3],
        w2: [i64; 3],
    },
    /// `rank(g - id) = 1`.
    Deficient,
}

/// `w2` is the first standard basis vector with `(g - id)²·w2 ≠ 0`.
pub fn unipotent_frame(g: &LatticeMap) -> Result<UnipotentFrame> {
    if char_poly(g).coeffs() != [1, -3, 3, -1] {
        return Err(Error::NotUnipotent);
    }
    if g.is_identity() {
        return Err(Error::IsIdentity);
    }
    let n = g.minus_identity();
    let n2 = mat_mul_checked(&n, &n).ok_or(Error::Overflow)?;
    let col = |m: &[[i64; 3]; 3], j: usize| [m[0][j], m[1][j], m[2][j]];
    for j in 0..3 {
        let w = col(&n2, j);
        if w != [0, 0, 0] {
            let mut w2 = [0i64; 3];
            w2[j] = 1;
            return Ok(UnipotentFrame::Full {
                w,
                w1: col(&n, j),
                w2,
            });
        }
    }
    Ok(UnipotentFrame::Deficient)
}

fn surd_kernel_line(g: &LatticeMap, lambda: &QuadSurd) -> Result<FieldVector> {
    let rows: Vec<FieldVector> = (0..3)
        .map(|i| {
            let mut r = FieldVector::from_ints(&g.entries()[i]);
            r.0[i] = r.0[i].checked_sub(lambda)?;
            Ok(r)
        })
        .collect::<Result<_>>()?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = rows[i].cross(&rows[j])?;
        if !c.is_zero() {
            return c.normalized();
        }
    }
    Err(Error::ZeroVector)
}

fn out_of_theory(reason: impl Into<String>) -> ElementClass {
    ElementClass::OutOfTheory {
        reason: reason.into(),
    }
}

fn hyperbolic(g: &LatticeMap, s: i64) -> Result<ElementClass> {
    let (alpha, alpha_inv) = solve_unit_quadratic(s)?;
    let v = surd_kernel_line(g, &alpha)?;
    let u = surd_kernel_line(g, &alpha_inv)?;
    let Some(w) = integer_kernel_line(&g.minus_identity()) else {
        return Ok(out_of_theory("eigenvalue 1 has no integral eigenvector"));
    };
    let holds = g.apply_field(&v)? == v.scale(&alpha)?
        && g.apply_field(&u)? == u.scale(&alpha_inv)?
        && g.apply(&w) == Some(w);
    if !holds {
        return Ok(out_of_theory("eigen-relations failed their exact recheck"));
    }
    Ok(ElementClass::Hyperbolic { s, alpha, u, v, w })
}

/// Places `g` in the finite / hyperbolic / unipotent trichotomy.
///
/// `L ∘ g = L` is required; with `L ≠ 0` it forces the eigenvalue 1, so the
/// characteristic polynomial splits as `(t - 1)(t² - s·t + 1)` when `det g = 1`.
pub fn classify(g: &LatticeMap, l: &LinearForm) -> Result<ElementClass> {
    if !l.is_preserved_by(g) {
        return Err(Error::DoesNotPreserveL);
    }
    if g.is_identity() {
        return Ok(ElementClass::Identity);
    }
    if g.det() == -1 {
        return Ok(match finite_order(g) {
            Some(n) => ElementClass::FiniteOrder {
                n,
                lambda_tag: EigenTag::RealPair,
            },
            None => out_of_theory(
                "determinant -1 element of infinite order; classify its square instead",
            ),
        });
    }
    let Some(s) = unit_cofactor_trace(g) else {
        return Ok(out_of_theory("characteristic polynomial has no eigenvalue 1"));
    };
    match s {
        -1..=1 => {
            let lambda_tag = finite_eigenvalue_tag(g)?;
            let n = lambda_tag.order().ok_or(Error::InconsistentTag(0))?;
            Ok(ElementClass::FiniteOrder { n, lambda_tag })
        }
        -2 => {
            if g.checked_pow(2).is_some_and(|h| h.is_identity()) {
                Ok(ElementClass::FiniteOrder {
                    n: 2,
                    lambda_tag: EigenTag::MinusOne,
                })
            } else {
                Ok(out_of_theory(
                    "eigenvalue -1 carries a nontrivial Jordan block (quasi-unipotent)",
                ))
            }
        }
        2 => Ok(match unipotent_frame(g)? {
            UnipotentFrame::Full { w, w1, w2 } => ElementClass::UnipotentFull { w, w1, w2 },
            UnipotentFrame::Deficient => ElementClass::UnipotentDeficient {
                rank_of_g_minus_id: 1,
            },
        }),
        s if s > 2 => hyperbolic(g, s),
        _ => Ok(out_of_theory(
            "negative real eigenvalues of modulus != 1; the square is hyperbolic",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: [[i64; 3]; 3]) -> LatticeMap {
        LatticeMap::new(rows).unwrap()
    }

    const Z: LinearForm = LinearForm([0, 0, 1]);

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&LatticeMap::identity()).coeffs(), [1, -3, 3, -1]);
        // (t - 1)(t² + 1) = t³ - t² + t - 1
        let rot = m([[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(char_poly(&rot).coeffs(), [1, -1, 1, -1]);
        // (t - 1)(t² - 3t + 1) = t³ - 4t² + 4t - 1
        let g = m([[2, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(char_poly(&g).coeffs(), [1, -4, 4, -1]);
    }

    #[test]
    fn finite_order_examples() {
        assert_eq!(finite_order(&LatticeMap::identity()), Some(1));
        assert_eq!(finite_order(&m([[0, -1, 0], [1, 0, 0], [0, 0, 1]])), Some(4));
        assert_eq!(finite_order(&m([[1, 1, 0], [0, 1, 1], [0, 0, 1]])), None);
    }

    #[test]
    fn classify_hyperbolic_golden() {
        let g = m([[2, 1, 0], [1, 1, 0], [0, 0, 1]]);
        let ElementClass::Hyperbolic { s, alpha, u, v, w } = classify(&g, &Z).unwrap() else {
            panic!("expected hyperbolic");
        };
        assert_eq!(s, 3);
        assert_eq!(alpha, QuadSurd::new(rat(3, 2), rat(1, 2), 5));
        let one = QuadSurd::one();
        let zero = QuadSurd::zero();
        assert_eq!(
            u,
            FieldVector([one.clone(), QuadSurd::new(rat(-1, 2), rat(-1, 2), 5), zero.clone()])
        );
        assert_eq!(
            v,
            FieldVector([one, QuadSurd::new(rat(-1, 2), rat(1, 2), 5), zero])
        );
        assert_eq!(w, [0, 0, 1]);
    }

    #[test]
    fn classify_unipotent_and_finite() {
        let g = m([[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        assert_eq!(
            classify(&g, &Z).unwrap(),
            ElementClass::UnipotentFull {
                w: [1, 0, 0],
                w1: [0, 1, 0],
                w2: [0, 0, 1]
            }
        );
        let rot = m([[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(
            classify(&rot, &Z).unwrap(),
            ElementClass::FiniteOrder {
                n: 4,
                lambda_tag: EigenTag::PlusMinusI
            }
        );
        assert_eq!(classify(&LatticeMap::identity(), &Z).unwrap(), ElementClass::Identity);
        let swap = m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert!(matches!(classify(&swap, &LinearForm([1, -1, 0])), Err(Error::DoesNotPreserveL)));
        assert!(matches!(classify(&swap, &Z), Ok(ElementClass::FiniteOrder { n: 2, lambda_tag: EigenTag::RealPair })));
    }

    #[test]
    fn tag_examples() {
        assert_eq!(
            finite_eigenvalue_tag(&m([[0, -1, 0], [1, 0, 0], [0, 0, 1]])).unwrap(),
            EigenTag::PlusMinusI
        );
        let third = m([[0, -1, 0], [1, -1, 0], [0, 0, 1]]);
        assert_eq!(finite_order(&third), Some(3));
        assert_eq!(finite_eigenvalue_tag(&third).unwrap(), EigenTag::CubeRoot);
        assert_eq!(EigenTag::CubeRoot.trace_of_pair(), Some(-1));
        let sixth = m([[1, -1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(finite_eigenvalue_tag(&sixth).unwrap(), EigenTag::SixthRoot);
        assert_eq!(
            finite_eigenvalue_tag(&LatticeMap::identity()),
            Err(Error::NotFiniteOrder)
        );
    }

    #[test]
    fn unipotent_frame_examples() {
        assert_eq!(
            unipotent_frame(&m([[1, 1, 0], [0, 1, 1], [0, 0, 1]])).unwrap(),
            UnipotentFrame::Full {
                w: [1, 0, 0],
                w1: [0, 1, 0],
                w2: [0, 0, 1]
            }
        );
        assert_eq!(
            unipotent_frame(&m([[1, 1, 0], [0, 1, 0], [0, 0, 1]])).unwrap(),
            UnipotentFrame::Deficient
        );
        assert_eq!(
            unipotent_frame(&m([[1, 0, 2], [0, 1, 3], [0, 0, 1]])).unwrap(),
            UnipotentFrame::Deficient
        );
        assert_eq!(unipotent_frame(&LatticeMap::identity()), Err(Error::IsIdentity));
        assert_eq!(
            unipotent_frame(&m([[2, 1, 0], [1, 1, 0], [0, 0, 1]])),
            Err(Error::NotUnipotent)
        );
    }

    #[test]
    fn out_of_theory_cases() {
        // s = -3: negative eigenvalues
        let g = m([[-2, 1, 0], [1, -1, 0], [0, 0, 1]]);
        assert!(matches!(classify(&g, &Z).unwrap(), ElementClass::OutOfTheory { .. }));
        // eigenvalue -1 with a Jordan block
        let j = m([[-1, 1, 0], [0, -1, 0], [0, 0, 1]]);
        assert!(matches!(classify(&j, &Z).unwrap(), ElementClass::OutOfTheory { .. }));
        assert_eq!(finite_order(&j), None);
    }
}
