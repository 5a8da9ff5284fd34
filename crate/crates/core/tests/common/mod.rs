//! Independent oracles: plain polynomial evaluation, polarization, power
//! tests and brute-force search, sharing no code paths with the library
//! beyond the surd type itself.
#![allow(dead_code)]

use cy3_core::arith::{int, QuadSurd, Rational};
use std::cmp::Ordering;

pub const KEYS: [&str; 10] = ["x3", "x2y", "x2z", "xy2", "xyz", "xz2", "y3", "y2z", "yz2", "z3"];
/// Exponents of x, y, z for each key.
pub const EXPONENTS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

pub type Mat = [[i64; 3]; 3];

pub fn coeffs(pairs: &[(&str, i64)]) -> [i64; 10] {
    let mut c = [0i64; 10];
    for (k, v) in pairs {
        c[KEYS.iter().position(|m| m == k).expect("monomial key")] += *v;
    }
    c
}

pub fn golden() -> [i64; 10] {
    coeffs(&[("x2z", 1), ("xyz", -1), ("y2z", -1)])
}

pub fn golden_quadric() -> [i64; 10] {
    coeffs(&[("x2z", 1), ("xyz", -1), ("y2z", -1), ("z3", 1)])
}

pub fn unipotent() -> [i64; 10] {
    coeffs(&[("z3", 1), ("xz2", 6), ("y2z", -3), ("yz2", 3)])
}

pub const GOLDEN_G: Mat = [[2, 1, 0], [1, 1, 0], [0, 0, 1]];
pub const JORDAN: Mat = [[1, 1, 0], [0, 1, 1], [0, 0, 1]];

fn spow(x: &QuadSurd, e: u32) -> QuadSurd {
    (0..e).fold(QuadSurd::one(), |acc, _| acc.checked_mul(x).unwrap())
}

/// `C(p)` by direct monomial expansion.
pub fn cubic_at(c: &[i64; 10], p: &[QuadSurd; 3]) -> QuadSurd {
    let mut acc = QuadSurd::zero();
    for (coef, e) in c.iter().zip(EXPONENTS) {
        if *coef == 0 {
            continue;
        }
        let term = spow(&p[0], e[0])
            .checked_mul(&spow(&p[1], e[1]))
            .unwrap()
            .checked_mul(&spow(&p[2], e[2]))
            .unwrap();
        acc = acc.checked_add(&term.scale(&int(*coef))).unwrap();
    }
    acc
}

pub fn cubic_at_int(c: &[i64; 10], p: &[i64; 3]) -> i128 {
    c.iter()
        .zip(EXPONENTS)
        .map(|(coef, e)| {
            i128::from(*coef)
                * i128::from(p[0]).pow(e[0])
                * i128::from(p[1]).pow(e[1])
                * i128::from(p[2]).pow(e[2])
        })
        .sum()
}

fn add3(a: &[QuadSurd; 3], b: &[QuadSurd; 3]) -> [QuadSurd; 3] {
    std::array::from_fn(|i| a[i].checked_add(&b[i]).unwrap())
}

/// `T(a, b, c)` by polarization of `C`.
pub fn polarize(c: &[i64; 10], a: &[QuadSurd; 3], b: &[QuadSurd; 3], d: &[QuadSurd; 3]) -> QuadSurd {
    let f = |p: &[QuadSurd; 3]| cubic_at(c, p);
    let abd = add3(&add3(a, b), d);
    let six_t = f(&abd)
        .checked_sub(&f(&add3(a, b)))
        .unwrap()
        .checked_sub(&f(&add3(a, d)))
        .unwrap()
        .checked_sub(&f(&add3(b, d)))
        .unwrap()
        .checked_add(&f(a))
        .unwrap()
        .checked_add(&f(b))
        .unwrap()
        .checked_add(&f(d))
        .unwrap();
    six_t.scale(&Rational::new(1.into(), 6.into()))
}

pub fn ints(v: &[i64; 3]) -> [QuadSurd; 3] {
    v.map(QuadSurd::from_int)
}

pub fn mat_mul(a: &Mat, b: &Mat) -> [[i128; 3]; 3] {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| i128::from(a[i][k]) * i128::from(b[k][j])).sum();
        }
    }
    out
}

pub fn mat_mul_i128(a: &[[i128; 3]; 3], b: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn det(m: &Mat) -> i128 {
    let m = m.map(|r| r.map(i128::from));
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Smallest `n ≤ 12` with `gⁿ = I`, by repeated multiplication.
pub fn power_order(g: &Mat) -> Option<u32> {
    let id = [[1i128, 0, 0], [0, 1, 0], [0, 0, 1]];
    let g = g.map(|r| r.map(i128::from));
    let mut p = g;
    for n in 1..=12 {
        if p == id {
            return Some(n);
        }
        p = mat_mul_i128(&p, &g);
        if p.iter().flatten().any(|x| x.abs() > 1 << 60) {
            return None;
        }
    }
    None
}

pub fn apply(g: &Mat, v: &[i64; 3]) -> [i64; 3] {
    std::array::from_fn(|i| (0..3).map(|k| g[i][k] * v[k]).sum())
}

/// `C(g·x) = C(x)` and `L(g·x) = L(x)` on the grid `[-2, 2]³`, which
/// determines a ternary cubic.
pub fn preserves_on_grid(c: &[i64; 10], l: &[i64; 3], g: &Mat) -> bool {
    for x in -2..=2 {
        for y in -2..=2 {
            for z in -2..=2 {
                let p = [x, y, z];
                let q = apply(g, &p);
                let lp: i64 = (0..3).map(|i| l[i] * p[i]).sum();
                let lq: i64 = (0..3).map(|i| l[i] * q[i]).sum();
                if lp != lq || cubic_at_int(c, &p) != cubic_at_int(c, &q) {
                    return false;
                }
            }
        }
    }
    true
}

/// All det ±1 matrices with entries in `[-b, b]` preserving `(C, L)`,
/// sorted row-major lexicographically.
pub fn brute_force(c: &[i64; 10], l: &[i64; 3], b: i64) -> Vec<Mat> {
    let range: Vec<i64> = (-b..=b).collect();
    let mut rows: Vec<[i64; 3]> = Vec::new();
    for &x in &range {
        for &y in &range {
            for &z in &range {
                rows.push([x, y, z]);
            }
        }
    }
    let mut out = Vec::new();
    for r0 in &rows {
        for r1 in &rows {
            for r2 in &rows {
                let m = [*r0, *r1, *r2];
                // L(g·x) = L(x) means Lᵗ·g = Lᵗ
                let lg: [i64; 3] = std::array::from_fn(|j| (0..3).map(|i| l[i] * m[i][j]).sum());
                if lg != *l || det(&m).abs() != 1 {
                    continue;
                }
                if preserves_on_grid(c, l, &m) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// Inertia of a real symmetric matrix from the signs of its characteristic
/// polynomial (Descartes' rule is exact for real-rooted polynomials).
pub fn inertia(m: &[[QuadSurd; 3]; 3]) -> (u32, u32, u32) {
    let mul = |a: &QuadSurd, b: &QuadSurd| a.checked_mul(b).unwrap();
    let sub = |a: &QuadSurd, b: &QuadSurd| a.checked_sub(b).unwrap();
    let add = |a: &QuadSurd, b: &QuadSurd| a.checked_add(b).unwrap();
    let tr = add(&add(&m[0][0], &m[1][1]), &m[2][2]);
    let minor = |i: usize, j: usize| sub(&mul(&m[i][i], &m[j][j]), &mul(&m[i][j], &m[j][i]));
    let m2 = add(&add(&minor(0, 1), &minor(0, 2)), &minor(1, 2));
    let d = sub(
        &add(
            &mul(&m[0][0], &minor(1, 2)),
            &mul(&m[0][2], &sub(&mul(&m[1][0], &m[2][1]), &mul(&m[1][1], &m[2][0]))),
        ),
        &mul(&m[0][1], &sub(&mul(&m[1][0], &m[2][2]), &mul(&m[1][2], &m[2][0]))),
    );
    // p(t) = t³ - tr·t² + m2·t - d
    let p = [QuadSurd::one(), -&tr, m2.clone(), -&d];
    let q = [-&QuadSurd::one(), -&tr, -&m2, -&d];
    let variations = |cs: &[QuadSurd; 4]| {
        let signs: Vec<Ordering> = cs
            .iter()
            .map(QuadSurd::signum)
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count() as u32
    };
    let zero = if d.is_zero() {
        if m2.is_zero() {
            if tr.is_zero() {
                3
            } else {
                2
            }
        } else {
            1
        }
    } else {
        0
    };
    (variations(&p), variations(&q), zero)
}
