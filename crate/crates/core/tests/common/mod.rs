//! Oracles shared by the integration tests. Nothing here calls into the
//! library's polynomial or series code: values are computed numerically at
//! integer points and compared against evaluations of library output.
#![allow(dead_code)]

use chern_calculus::chern_roots::{KClass, LineElement};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// `c_t(x)` evaluated at `u = point`, as coefficients of `t^0..=t^max`.
///
/// Each line contributes `(1 + a t)^{m}` with `a = sum a_j point_j`; negative
/// multiplicities divide, which over the integers is the geometric series.
pub fn chern_series_at(x: &KClass, point: &[i64], max: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); max + 1];
    series[0] = BigInt::one();
    for (l, m) in x.multiplicities() {
        let a: BigInt = l.coeffs().iter().zip(point).map(|(c, p)| BigInt::from(c * p)).sum();
        let times: i64 = m.try_into().expect("small multiplicity");
        for _ in 0..times.unsigned_abs() {
            if times > 0 {
                for k in (1..=max).rev() {
                    series[k] = &series[k] + &a * &series[k - 1];
                }
            } else {
                for k in 1..=max {
                    series[k] = &series[k] - &a * &series[k - 1];
                }
            }
        }
    }
    series
}

pub fn big_point(point: &[i64]) -> Vec<BigInt> {
    point.iter().map(|&p| BigInt::from(p)).collect()
}

pub fn random_point<R: Rng>(rng: &mut R, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-7..=7)).collect()
}

/// Determinant by Bareiss elimination; exact over the integers.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Schur polynomial `s_parts(x_1..x_n)` by the bialternant formula. The
/// points must be pairwise distinct.
pub fn schur_bialternant(parts: &[u32], point: &[i64]) -> BigInt {
    let n = point.len();
    if parts.len() > n {
        return BigInt::zero();
    }
    let lam = |j: usize| parts.get(j).copied().unwrap_or(0);
    let alt = |shift: &dyn Fn(usize) -> u32| {
        let rows = point
            .iter()
            .map(|&x| (0..n).map(|j| BigInt::from(x).pow(shift(j) + (n - 1 - j) as u32)).collect())
            .collect();
        determinant(rows)
    };
    let num = alt(&lam);
    let den = alt(&|_| 0);
    assert!(!den.is_zero(), "points must be distinct");
    num / den
}

/// A seeded split class with `pos` positive and `neg` negative lines on
/// `roots` roots; root coefficients lie in `lo..=hi`.
pub fn random_split_class<R: Rng>(rng: &mut R, roots: usize, pos: usize, neg: usize, lo: i64, hi: i64) -> KClass {
    let line = |rng: &mut R| LineElement::new((0..roots).map(|_| rng.gen_range(lo..=hi)).collect());
    let p = (0..pos).map(|_| line(rng)).collect();
    let n = (0..neg).map(|_| line(rng)).collect();
    KClass::from_pos_neg(p, n)
}

/// A seeded class of rank zero: `sum m_L (L - 1)` over a few random lines.
pub fn random_augmentation_zero<R: Rng>(rng: &mut R, roots: usize, lines: usize) -> KClass {
    let mut acc = KClass::zero();
    for _ in 0..lines {
        let l = LineElement::new((0..roots).map(|_| rng.gen_range(-1..=2)).collect());
        let m: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let reduced = &KClass::line(l) - &KClass::one();
        acc = &acc + &reduced.scale(&BigInt::from(m));
    }
    acc
}
