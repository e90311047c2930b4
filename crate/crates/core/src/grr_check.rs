//! Verification harness for the vanishing and factorial identities of
//! products of `(L - 1)`, and for the two compositions between `B^i` and
//! `gr^i_gamma`.
//!
//! Every check runs in the split model: classes are integer combinations of
//! products `(L_1 - 1)...(L_j - 1)`, Chern classes are read in root variables
//! `u`, graded gamma classes in `v = L - 1`.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bigpoly::{GradedPoly, Ring};
use crate::chern_roots::{root_ring, KClass, LineElement};
use crate::error::{Error, Result};
use crate::gamma::{filtration_degree, v_ring, GammaGradedClass};

/// Outcome of one exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: String,
    pub i: u32,
    /// Distinct line elements in the class under test.
    pub lines: usize,
    pub degree: u32,
    pub expected: GradedPoly,
    pub actual: GradedPoly,
    pub pass: bool,
    pub seed: Option<u64>,
}

impl VerificationReport {
    fn new(case: String, i: u32, x: &KClass, degree: u32, expected: GradedPoly, actual: GradedPoly) -> Self {
        let pass = expected == actual;
        VerificationReport { case, i, lines: x.multiplicities().count(), degree, expected, actual, pass, seed: None }
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            case: self.case.clone(),
            i: self.i,
            lines: self.lines,
            degree: self.degree,
            expected: self.expected.to_string(),
            actual: self.actual.to_string(),
            pass: self.pass,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub case: String,
    pub i: u32,
    pub lines: usize,
    pub degree: u32,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `(-1)^{i-1} (i-1)!`
pub fn grr_factor(i: u32) -> BigInt {
    let fact: BigInt = (1..i).map(BigInt::from).product();
    if i.is_multiple_of(2) {
        -fact
    } else {
        fact
    }
}

/// `prod_{j=1}^{count} (L_j - 1)` on the first `count` primitive roots.
pub fn reduced_product(count: usize) -> KClass {
    (0..count).fold(KClass::one(), |acc, j| acc.tensor(&KClass::reduced_line(j)))
}

/// Default truncation used by the harness for index `i`.
pub fn default_degree(i: u32) -> u32 {
    i + 2
}

/// `c_k(prod_{j=1}^{i+1} (L_j - 1)) = 0` for `0 < k <= i`; one report per `k`.
pub fn verify_vanishing(i: u32, degree: u32) -> Result<Vec<VerificationReport>> {
    if i == 0 {
        return Err(Error::Domain("vanishing check needs i >= 1".into()));
    }
    let degree = degree.max(i);
    let x = reduced_product(i as usize + 1);
    let ring = root_ring(i as usize + 1, degree);
    let c = x.total_chern_in(&ring)?;
    Ok((1..=i)
        .map(|k| {
            VerificationReport::new(
                format!("vanishing i={i} k={k}"),
                i,
                &x,
                degree,
                GradedPoly::zero(&ring),
                c.coeff(k as usize),
            )
        })
        .collect())
}

/// `c_i(prod_{j=1}^{i} (L_j - 1)) = (-1)^{i-1} (i-1)! u_1 ... u_i`.
pub fn verify_factor(i: u32, degree: u32) -> Result<VerificationReport> {
    if i == 0 {
        return Err(Error::Domain("factor check needs i >= 1".into()));
    }
    let degree = degree.max(i);
    let x = reduced_product(i as usize);
    let ring = root_ring(i as usize, degree);
    let actual = x.total_chern_in(&ring)?.coeff(i as usize);
    let expected = GradedPoly::from_terms(&ring, [(vec![1; i as usize], grr_factor(i))])?;
    Ok(VerificationReport::new(format!("factor i={i}"), i, &x, degree, expected, actual))
}

/// The class `sum c * prod (L_j - 1)^{e_j}` lifting a polynomial in `v`.
pub fn lift_v_poly(p: &GradedPoly) -> KClass {
    let mut acc = KClass::zero();
    for (mono, c) in p.terms() {
        let mut term = KClass::integer(c.clone());
        for (j, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                term = term.tensor(&KClass::reduced_line(j));
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Checks both composites of `c_i: gr^i -> B^i` and `b_gamma: B^i -> gr^i`
/// on the class `x` of filtration degree at least `i`.
///
/// `b_gamma` sends `u_{j_1}...u_{j_i}` to the class of `v_{j_1}...v_{j_i}`;
/// `c_i` on `gr^i` is the degree-`i` Chern class of any representative.
/// Returns `(b∘c, c∘b)` reports.
pub fn verify_grr_composition(i: u32, x: &KClass, degree: u32) -> Result<(VerificationReport, VerificationReport)> {
    if i == 0 {
        return Err(Error::Domain("composition check needs i >= 1".into()));
    }
    let degree = degree.max(i);
    let fd = filtration_degree(x, degree);
    if !fd.at_least(i) {
        return Err(Error::Precondition(format!("class has filtration degree {fd}, need at least {i}")));
    }
    let roots = x.root_span().max(1);
    let u_ring = root_ring(roots, degree);
    let v_ring = v_ring(roots, degree);
    let identity: Vec<usize> = (0..roots).collect();
    let k = grr_factor(i);

    let chern = x.total_chern_in(&u_ring)?.coeff(i as usize);
    let graded = GammaGradedClass::project(x, i, &v_ring)?.representative;

    // b_gamma(c_i(x)) against k * [x]
    let b_of_c = chern.rename(&identity, &v_ring)?;
    let first = VerificationReport::new(format!("b∘c i={i}"), i, x, degree, graded.scale(&k), b_of_c.clone());

    // c_i(b_gamma(c_i(x))) against k * c_i(x)
    let lifted = lift_v_poly(&b_of_c);
    let c_of_b = lifted.total_chern_in(&u_ring)?.coeff(i as usize);
    let second = VerificationReport::new(format!("c∘b i={i}"), i, x, degree, chern.scale(&k), c_of_b);
    Ok((first, second))
}

/// Every degree-`i` monomial in `v_1..v_roots`, lifted to a class.
pub fn v_monomial_generators(i: u32, roots: usize) -> Vec<KClass> {
    let ring = v_ring(roots, i);
    let mut out = Vec::new();
    let mut exps = vec![0u32; roots];
    fn go(pos: usize, left: u32, exps: &mut Vec<u32>, ring: &Ring, out: &mut Vec<KClass>) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            let mono = GradedPoly::from_terms(ring, [(exps.clone(), BigInt::one())]).expect("valid shape");
            out.push(lift_v_poly(&mono));
            exps[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e;
            go(pos + 1, left - e, exps, ring, out);
        }
        exps[pos] = 0;
    }
    if roots > 0 {
        go(0, i, &mut exps, &ring, &mut out);
    }
    out
}

/// A seeded random class of filtration degree at least `i`: an integer
/// combination of up to three products of `i` or `i + 1` factors `(L - 1)`,
/// where each `L` is a primitive or composite line on `roots` roots.
pub fn random_filtered_class<R: Rng>(i: u32, roots: usize, rng: &mut R) -> KClass {
    let mut acc = KClass::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mut coeff: i64 = rng.gen_range(-3..=3);
        if coeff == 0 {
            coeff = 1;
        }
        let len = i + rng.gen_range(0..=1);
        let mut term = KClass::integer(coeff);
        for _ in 0..len {
            let line = if rng.gen_bool(0.6) {
                LineElement::primitive(rng.gen_range(0..roots))
            } else {
                let mut v: Vec<i64> = (0..roots).map(|_| rng.gen_range(-1..=2)).collect();
                if v.iter().all(|a| *a == 0) {
                    v[0] = 1;
                }
                LineElement::new(v)
            };
            term = term.tensor(&(&KClass::line(line) - &KClass::one()));
        }
        acc = &acc + &term;
    }
    acc
}

fn rng_for(seed: u64, i: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(i) << 32))
}

/// Reports for one index `i`, at truncation `i + 2`.
pub fn verify_index(i: u32, seed: u64) -> Result<Vec<VerificationReport>> {
    let degree = default_degree(i);
    let mut out = vec![verify_factor(i, degree)?];
    out.extend(verify_vanishing(i, degree)?);
    let (a, b) = verify_grr_composition(i, &reduced_product(i as usize), degree)?;
    out.push(a);
    out.push(b);
    let mut rng = rng_for(seed, i);
    let x = random_filtered_class(i, 4, &mut rng);
    let (mut a, mut b) = verify_grr_composition(i, &x, degree)?;
    a.case.push_str(" random");
    b.case.push_str(" random");
    out.push(a);
    out.push(b);
    for r in &mut out {
        r.seed = Some(seed);
    }
    Ok(out)
}

/// The full harness for `i = 1..=max_i`, evaluated in parallel and reported
/// in index order.
pub fn verify_all(max_i: u32, seed: u64) -> Result<Vec<VerificationReport>> {
    let per_index: Vec<Result<Vec<VerificationReport>>> =
        (1..=max_i).into_par_iter().map(|i| verify_index(i, seed)).collect();
    let mut out = Vec::new();
    for r in per_index {
        out.extend(r?);
    }
    Ok(out)
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_signs() {
        let values: Vec<i64> = (1..=5).map(|i| grr_factor(i).try_into().unwrap()).collect();
        assert_eq!(values, vec![1, -1, 2, -6, 24]);
    }

    #[test]
    fn factor_small() {
        let r = verify_factor(1, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.actual.to_string(), "u1");
        let r = verify_factor(2, 4).unwrap();
        assert_eq!(r.actual.to_string(), "-u1*u2");
        assert!(r.pass);
    }

    #[test]
    fn vanishing_small() {
        let reports = verify_vanishing(2, 4).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.pass && r.actual.is_zero()));
    }

    #[test]
    fn composition_on_line() {
        let (a, b) = verify_grr_composition(1, &KClass::reduced_line(0), 3).unwrap();
        assert!(a.pass && b.pass);
        assert_eq!(a.actual.to_string(), "v1");
    }

    #[test]
    fn composition_precondition() {
        let err = verify_grr_composition(2, &KClass::reduced_line(0), 4).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn generators_count() {
        // C(6 + 2 - 1, 2)
        assert_eq!(v_monomial_generators(2, 6).len(), 21);
        assert_eq!(v_monomial_generators(1, 3).len(), 3);
    }

    #[test]
    fn lift_round_trips_through_expansion() {
        let ring = v_ring(3, 4);
        let p = &(&GradedPoly::var(&ring, 0) * &GradedPoly::var(&ring, 2)).scale(&BigInt::from(3))
            - &GradedPoly::var(&ring, 1).pow(2);
        let lifted = lift_v_poly(&p);
        assert_eq!(crate::gamma::augmentation_expand_in(&lifted, &ring).unwrap(), p);
    }
}
