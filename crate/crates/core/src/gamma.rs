//! Gamma operations, the gamma filtration and its associated graded pieces.
//!
//! Classes are read in the coordinates `v_j = L_j - 1`: a line element
//! `L^a = prod L_j^{a_j}` becomes `prod (1 + v_j)^{a_j}`, expanded and
//! truncated at degree `D`. The augmentation ideal is `(v)`, and in this split
//! model the gamma filtration is its power filtration, so the filtration
//! degree of a class is the lowest `v`-degree of its augmented expansion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::bigpoly::{GradedPoly, Ring, TotalChern};
use crate::chern_roots::{lambda_k, KClass};
use crate::error::{Error, Result};

/// Ring with `count` degree-1 variables `v1..v{count}`.
pub fn v_ring(count: usize, degree: u32) -> Ring {
    Ring::with_prefix("v", count, degree)
}

/// `gamma^i(x) = lambda^i(x + i - 1)`.
pub fn gamma_op(i: usize, x: &KClass) -> KClass {
    if i == 0 {
        return KClass::one();
    }
    let shifted = x + &KClass::integer(BigInt::from(i - 1));
    lambda_k(i, &shifted)
}

/// Full expansion of `x` in `v`-coordinates (rank included as the constant term).
pub fn v_expand_in(x: &KClass, ring: &Ring) -> Result<GradedPoly> {
    if x.root_span() > ring.num_vars() {
        return Err(Error::Context("v ring has fewer variables than the class has roots".into()));
    }
    let one = GradedPoly::one(ring);
    let n = ring.num_vars();
    // (1 + v_j) and its inverse, truncated.
    let up: Vec<GradedPoly> = (0..n).map(|j| &one + &GradedPoly::var(ring, j)).collect();
    let down: Vec<GradedPoly> = up
        .iter()
        .map(|p| {
            // (1 + v)^{-1} = sum (-v)^k
            let neg_v = -&(p - &one);
            let mut acc = one.clone();
            let mut power = one.clone();
            for _ in 0..ring.truncation() {
                power = &power * &neg_v;
                if power.is_zero() {
                    break;
                }
                acc = &acc + &power;
            }
            acc
        })
        .collect();
    let mut out = GradedPoly::zero(ring);
    for (l, m) in x.multiplicities() {
        let mut term = GradedPoly::constant(ring, m.clone());
        for (j, &a) in l.coeffs().iter().enumerate() {
            let base = if a >= 0 { &up[j] } else { &down[j] };
            term = &term * &base.pow(a.unsigned_abs() as u32);
        }
        out = &out + &term;
    }
    Ok(out)
}

/// `x - rank(x)` in `v`-coordinates, truncated at `degree`.
pub fn augmentation_expand(x: &KClass, degree: u32) -> GradedPoly {
    let ring = v_ring(x.root_span(), degree);
    augmentation_expand_in(x, &ring).expect("ring sized from the class")
}

pub fn augmentation_expand_in(x: &KClass, ring: &Ring) -> Result<GradedPoly> {
    let full = v_expand_in(x, ring)?;
    Ok(&full - &GradedPoly::constant(ring, x.rank()))
}

/// Position of a class in the gamma filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum FiltrationDegree {
    Finite(u32),
    /// Nonzero, but invisible below the truncation degree: lies in `F^{n}`.
    AtLeast(u32),
    /// `x - rank(x)` is the zero class.
    Infinite,
}

impl FiltrationDegree {
    /// Whether the class provably lies in `F^i`.
    pub fn at_least(self, i: u32) -> bool {
        match self {
            FiltrationDegree::Finite(d) | FiltrationDegree::AtLeast(d) => d >= i,
            FiltrationDegree::Infinite => true,
        }
    }
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDegree::Finite(d) => write!(f, "{d}"),
            FiltrationDegree::AtLeast(d) => write!(f, ">={d}"),
            FiltrationDegree::Infinite => write!(f, "inf"),
        }
    }
}

/// Gamma-filtration degree of `x - rank(x)`, read off below `degree`.
pub fn filtration_degree(x: &KClass, degree: u32) -> FiltrationDegree {
    let reduced = x - &KClass::integer(x.rank());
    if reduced.is_zero() {
        return FiltrationDegree::Infinite;
    }
    match augmentation_expand(&reduced, degree).min_degree() {
        Some(d) => FiltrationDegree::Finite(d),
        None => FiltrationDegree::AtLeast(degree + 1),
    }
}

/// `gamma_t(x) = sum gamma^j(x) t^j` with coefficients in `v`-coordinates.
///
/// Uses `gamma_t(r + sum m_L (L - 1)) = (1 - t)^{-r} prod (1 + v_L t)^{m_L}`.
pub fn gamma_series_in(x: &KClass, ring: &Ring) -> Result<TotalChern> {
    let mut series = TotalChern::one(ring);
    let minus_one = GradedPoly::constant(ring, -1);
    let rank = x.rank();
    let r = rank.abs().to_u64().ok_or_else(|| Error::Class("rank too large".into()))?;
    for _ in 0..r {
        series = if rank.is_positive() { series.div_linear(&minus_one) } else { series.mul_linear(&minus_one) };
    }
    for (l, m) in x.multiplicities() {
        if l.is_trivial() {
            continue;
        }
        let w = augmentation_expand_in(&KClass::line(l.clone()), ring)?;
        let times = m.abs().to_u64().ok_or_else(|| Error::Class("multiplicity too large".into()))?;
        for _ in 0..times {
            series = if m.is_positive() { series.mul_linear(&w) } else { series.div_linear(&w) };
        }
    }
    Ok(series)
}

pub fn gamma_series(x: &KClass, degree: u32) -> TotalChern {
    gamma_series_in(x, &v_ring(x.root_span(), degree)).expect("ring sized from the class")
}

/// Element of `gr^i = F^i / F^{i+1}`, represented by a homogeneous degree-`i`
/// polynomial in the `v` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGradedClass {
    pub degree: u32,
    pub representative: GradedPoly,
}

impl GammaGradedClass {
    /// Projection of a class of filtration degree at least `degree` into `gr^degree`.
    pub fn project(x: &KClass, degree: u32, ring: &Ring) -> Result<Self> {
        let full = if degree == 0 { v_expand_in(x, ring)? } else { augmentation_expand_in(x, ring)? };
        if let Some(low) = full.min_degree() {
            if low < degree {
                return Err(Error::Precondition(format!("class has filtration degree {low}, below {degree}")));
            }
        }
        Ok(GammaGradedClass { degree, representative: full.homogeneous_part(degree) })
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

/// The `i`-th gamma Chern class of an effective class, in `gr^i`.
///
/// Computed as `gamma^i([F] - rk F)`, so that `gamma_t` is the product of
/// `1 + (L - 1) t` over the lines of `F`. In degree one this agrees with
/// `rk F - [F^dual]` modulo `I^2`; in higher degrees the dual form would give
/// complete rather than elementary symmetric functions of the `v_j`.
pub fn gamma_chern(i: u32, x: &KClass, degree: u32) -> Result<GammaGradedClass> {
    if !x.is_effective() {
        return Err(Error::Domain("gamma Chern classes are defined for effective classes only".into()));
    }
    let y = x - &KClass::integer(x.rank());
    let g = gamma_op(i as usize, &y);
    let ring = v_ring(x.root_span(), degree.max(i));
    GammaGradedClass::project(&g, i, &ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_roots::LineElement;

    fn line(c: Vec<i64>) -> KClass {
        KClass::line(LineElement::new(c))
    }

    #[test]
    fn gamma_low_orders() {
        let x = &line(vec![1]) + &line(vec![0, 1]);
        assert_eq!(gamma_op(0, &x), KClass::one());
        assert_eq!(gamma_op(1, &x), x);
        let red = KClass::reduced_line(0);
        assert!(gamma_op(2, &red).is_zero());
        assert!(gamma_op(3, &red).is_zero());
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(augmentation_expand(&KClass::reduced_line(0), 4).to_string(), "v1");
        assert_eq!(augmentation_expand(&line(vec![1, 1]), 4).to_string(), "v1+v2+v1*v2");
        let prod = KClass::reduced_line(0).tensor(&KClass::reduced_line(1));
        assert_eq!(augmentation_expand(&prod, 4).to_string(), "v1*v2");
        assert_eq!(augmentation_expand(&line(vec![-1]), 3).to_string(), "-v1+v1^2-v1^3");
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(filtration_degree(&KClass::integer(3), 5), FiltrationDegree::Infinite);
        assert_eq!(filtration_degree(&KClass::reduced_line(0), 5), FiltrationDegree::Finite(1));
        let triple = (0..3).fold(KClass::one(), |acc, j| acc.tensor(&KClass::reduced_line(j)));
        assert_eq!(filtration_degree(&triple, 5), FiltrationDegree::Finite(3));
        assert_eq!(filtration_degree(&triple, 2), FiltrationDegree::AtLeast(3));
    }

    #[test]
    fn gamma_series_examples() {
        let s = gamma_series(&KClass::reduced_line(0), 4);
        assert_eq!(s.coeffs().len(), 2);
        assert_eq!(s.coeff(1).to_string(), "v1");
        let two = &KClass::reduced_line(0) + &KClass::reduced_line(1);
        let s = gamma_series(&two, 4);
        assert_eq!(s.coeff(1).to_string(), "v1+v2");
        assert_eq!(s.coeff(2).to_string(), "v1*v2");
        assert!(s.coeff(3).is_zero());
        let s = gamma_series(&-&KClass::reduced_line(0), 3);
        let got: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, vec!["1", "-v1", "v1^2", "-v1^3"]);
        let s = gamma_series(&KClass::one(), 3);
        assert_eq!(s.constant_coeffs(), Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn gamma_chern_examples() {
        let x = line(vec![1]);
        let c1 = gamma_chern(1, &x, 4).unwrap();
        assert_eq!(c1.representative.to_string(), "v1");
        assert_eq!(gamma_chern(0, &x, 4).unwrap().representative.to_string(), "1");
        let rank2 = &line(vec![1]) + &line(vec![0, 1]);
        assert!(gamma_chern(3, &rank2, 4).unwrap().is_zero());
        assert_eq!(gamma_chern(2, &rank2, 4).unwrap().representative.to_string(), "v1*v2");
        // degree one agrees with the dual form rk - [F^dual] modulo I^2
        let dual_form = &KClass::integer(x.rank()) - &x.dual();
        let projected = GammaGradedClass::project(&dual_form, 1, &v_ring(1, 4)).unwrap();
        assert_eq!(projected, c1);
        assert!(matches!(gamma_chern(1, &-&x, 4), Err(Error::Domain(_))));
    }
}
