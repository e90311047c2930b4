//! Splitting-principle model of virtual bundles.
//!
//! A [`KClass`] is an integer combination of line elements. A line element is
//! the tensor product of primitive lines `L_1^{a_1} ⊗ L_2^{a_2} ⊗ ...`,
//! recorded by the integer vector `a`; its first Chern class is the root
//! `a_1 u_1 + a_2 u_2 + ...`. The empty vector is the trivial line. The class
//! ring is therefore the group ring of the root lattice, with tensor product
//! as multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bigpoly::{elementary_symmetric_reduce, GradedPoly, Ring, SymmetricGroup, TotalChern};
use crate::error::{Error, Result};
use crate::partitions::{lr_coefficient, partitions_of, Partition};

/// Tensor product of primitive lines, stored as its root coefficient vector
/// with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LineElement(Vec<i64>);

impl LineElement {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        LineElement(coeffs)
    }

    pub fn trivial() -> Self {
        LineElement(Vec::new())
    }

    /// The primitive line with root `u_{index+1}`.
    pub fn primitive(index: usize) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = 1;
        LineElement(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of root slots the element touches.
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn tensor(&self, other: &LineElement) -> LineElement {
        let n = self.0.len().max(other.0.len());
        LineElement::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn power(&self, k: i64) -> LineElement {
        LineElement::new(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dual(&self) -> LineElement {
        self.power(-1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// First Chern class `sum a_j u_j` in a ring whose first variables are the roots.
    pub fn first_chern(&self, ring: &Ring) -> Result<GradedPoly> {
        if self.span() > ring.num_vars() {
            return Err(Error::Context(format!(
                "line touches {} roots but the ring has {} variables",
                self.span(),
                ring.num_vars()
            )));
        }
        let terms = self.0.iter().enumerate().filter(|(_, a)| **a != 0).map(|(j, a)| {
            let mut exps = vec![0; ring.num_vars()];
            exps[j] = 1;
            (exps, BigInt::from(*a))
        });
        GradedPoly::from_terms(ring, terms)
    }
}

impl fmt::Display for LineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "L[0]");
        }
        let mut s = String::new();
        for (j, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if a < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if a.abs() != 1 {
                s.push_str(&format!("{}*", a.abs()));
            }
            s.push_str(&format!("u{}", j + 1));
        }
        write!(f, "L[{s}]")
    }
}

/// Allocator of fresh primitive roots. The only stateful piece of the model.
#[derive(Debug, Clone, Default)]
pub struct RootContext {
    next: usize,
}

impl RootContext {
    pub fn new() -> Self {
        RootContext::default()
    }

    /// Context whose next fresh root comes after every root used by `classes`.
    pub fn after(classes: &[&KClass]) -> Self {
        RootContext { next: classes.iter().map(|c| c.root_span()).max().unwrap_or(0) }
    }

    pub fn fresh_root(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    pub fn fresh_line(&mut self) -> LineElement {
        LineElement::primitive(self.fresh_root())
    }

    /// Split bundle `L_a + ... + L_{a+rank-1}` on fresh roots.
    pub fn fresh_bundle(&mut self, rank: usize) -> KClass {
        (0..rank).fold(KClass::zero(), |acc, _| &acc + &KClass::line(self.fresh_line()))
    }

    pub fn used(&self) -> usize {
        self.next
    }
}

/// Virtual bundle: formal integer combination of line elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KClass {
    lines: BTreeMap<LineElement, BigInt>,
}

impl KClass {
    pub fn zero() -> Self {
        KClass::default()
    }

    pub fn one() -> Self {
        KClass::line(LineElement::trivial())
    }

    /// `n` copies of the trivial line.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        KClass::from_multiplicities([(LineElement::trivial(), n.into())])
    }

    pub fn line(l: LineElement) -> Self {
        KClass::from_multiplicities([(l, BigInt::one())])
    }

    /// `L_{index+1} - 1`.
    pub fn reduced_line(index: usize) -> Self {
        &KClass::line(LineElement::primitive(index)) - &KClass::one()
    }

    pub fn from_multiplicities<I: IntoIterator<Item = (LineElement, BigInt)>>(items: I) -> Self {
        let mut lines: BTreeMap<LineElement, BigInt> = BTreeMap::new();
        for (l, m) in items {
            *lines.entry(l).or_insert_with(BigInt::zero) += m;
        }
        lines.retain(|_, m| !m.is_zero());
        KClass { lines }
    }

    /// `[positive] - [negative]` from two multisets of line elements.
    pub fn from_pos_neg(pos: Vec<LineElement>, neg: Vec<LineElement>) -> Self {
        KClass::from_multiplicities(
            pos.into_iter().map(|l| (l, BigInt::one())).chain(neg.into_iter().map(|l| (l, -BigInt::one()))),
        )
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = (&LineElement, &BigInt)> {
        self.lines.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.lines.is_empty()
    }

    /// No line with negative multiplicity.
    pub fn is_effective(&self) -> bool {
        self.lines.values().all(|m| m.is_positive())
    }

    pub fn rank(&self) -> BigInt {
        self.lines.values().sum()
    }

    /// Number of primitive root slots referenced.
    pub fn root_span(&self) -> usize {
        self.lines.keys().map(LineElement::span).max().unwrap_or(0)
    }

    /// Line elements with positive multiplicity, repeated.
    pub fn positive(&self) -> Vec<LineElement> {
        self.expand(|m| m.is_positive())
    }

    /// Line elements with negative multiplicity, repeated.
    pub fn negative(&self) -> Vec<LineElement> {
        self.expand(|m| m.is_negative())
    }

    fn expand(&self, keep: impl Fn(&BigInt) -> bool) -> Vec<LineElement> {
        let mut out = Vec::new();
        for (l, m) in &self.lines {
            if keep(m) {
                let n = m.abs().to_usize().expect("multiplicity fits in memory");
                out.extend(std::iter::repeat_n(l.clone(), n));
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> KClass {
        KClass::from_multiplicities(self.lines.iter().map(|(l, m)| (l.clone(), m * k)))
    }

    /// Tensor product: bilinear, with line ⊗ line adding roots.
    pub fn tensor(&self, other: &KClass) -> KClass {
        let mut lines: BTreeMap<LineElement, BigInt> = BTreeMap::new();
        for (a, ma) in &self.lines {
            for (b, mb) in &other.lines {
                *lines.entry(a.tensor(b)).or_insert_with(BigInt::zero) += ma * mb;
            }
        }
        lines.retain(|_, m| !m.is_zero());
        KClass { lines }
    }

    /// Every root negated; multiplicities unchanged.
    pub fn dual(&self) -> KClass {
        KClass::from_multiplicities(self.lines.iter().map(|(l, m)| (l.dual(), m.clone())))
    }

    pub fn pow(&self, e: u32) -> KClass {
        (0..e).fold(KClass::one(), |acc, _| acc.tensor(self))
    }

    /// Total Chern class `prod (1 + c_1(L) t)^{m_L}` in `ring`, whose first
    /// variables must be the roots.
    pub fn total_chern_in(&self, ring: &Ring) -> Result<TotalChern> {
        let mut series = TotalChern::one(ring);
        for (l, m) in &self.lines {
            let root = l.first_chern(ring)?;
            if root.is_zero() {
                continue;
            }
            let times = m.abs().to_u64().ok_or_else(|| Error::Class("multiplicity too large".into()))?;
            for _ in 0..times {
                series = if m.is_positive() { series.mul_linear(&root) } else { series.div_linear(&root) };
            }
        }
        Ok(series)
    }

    /// Total Chern class in [`root_ring`] over this class's roots, truncated at `degree`.
    pub fn total_chern(&self, degree: u32) -> TotalChern {
        self.total_chern_in(&root_ring(self.root_span(), degree)).expect("root ring covers every root of the class")
    }

    /// `lambda_t(x) = prod (1 + L t)^{m_L}` up to `t^max`, as classes.
    pub fn lambda_series(&self, max: usize) -> Vec<KClass> {
        let mut series = vec![KClass::zero(); max + 1];
        series[0] = KClass::one();
        for (l, m) in &self.lines {
            let times = m.abs().to_u64().expect("multiplicity fits in u64");
            let line = KClass::line(l.clone());
            for _ in 0..times {
                if m.is_positive() {
                    for k in (1..=max).rev() {
                        series[k] = &series[k] + &series[k - 1].tensor(&line);
                    }
                } else {
                    for k in 1..=max {
                        series[k] = &series[k] - &series[k - 1].tensor(&line);
                    }
                }
            }
        }
        series
    }

    /// The character: line `a` goes to the monomial `y^a` in `ring`. Fails for
    /// lines with negative root coefficients.
    pub fn character(&self, ring: &Ring) -> Result<GradedPoly> {
        let mut terms = Vec::new();
        for (l, m) in &self.lines {
            if l.span() > ring.num_vars() {
                return Err(Error::Context("character ring has too few variables".into()));
            }
            let mut exps = vec![0u32; ring.num_vars()];
            for (j, &a) in l.coeffs().iter().enumerate() {
                exps[j] = u32::try_from(a).map_err(|_| Error::Class(format!("{l} has a negative root coefficient")))?;
            }
            terms.push((exps, m.clone()));
        }
        GradedPoly::from_terms(ring, terms)
    }

    pub fn to_json(&self) -> KClassJson {
        KClassJson {
            pos: self.positive().into_iter().map(|l| l.0).collect(),
            neg: self.negative().into_iter().map(|l| l.0).collect(),
        }
    }

    pub fn from_json(json: &KClassJson) -> KClass {
        KClass::from_pos_neg(
            json.pos.iter().cloned().map(LineElement::new).collect(),
            json.neg.iter().cloned().map(LineElement::new).collect(),
        )
    }

    pub fn parse_json(s: &str) -> Result<KClass> {
        let json: KClassJson =
            serde_json::from_str(s).map_err(|e| Error::Class(format!("malformed class JSON: {e}")))?;
        Ok(KClass::from_json(&json))
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lines.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, m)) in self.lines.iter().enumerate() {
            if m.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if !m.abs().is_one() {
                write!(f, "{}*", m.abs())?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a KClass> for &'a KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        KClass::from_multiplicities(self.lines.iter().chain(&rhs.lines).map(|(l, m)| (l.clone(), m.clone())))
    }
}

impl<'a> std::ops::Sub<&'a KClass> for &'a KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::from_multiplicities(self.lines.iter().map(|(l, m)| (l.clone(), -m)))
    }
}

impl<'a> std::ops::Mul<&'a KClass> for &'a KClass {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        self.tensor(rhs)
    }
}

/// `{pos:[[coeffs]...], neg:[...]}`; each line lists root coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassJson {
    #[serde(default)]
    pub pos: Vec<Vec<i64>>,
    #[serde(default)]
    pub neg: Vec<Vec<i64>>,
}

/// Ring with `count` degree-1 root variables `u1..u{count}`.
pub fn root_ring(count: usize, degree: u32) -> Ring {
    Ring::with_prefix("u", count, degree)
}

pub fn total_chern(x: &KClass, degree: u32) -> TotalChern {
    x.total_chern(degree)
}

pub fn tensor(x: &KClass, y: &KClass) -> KClass {
    x.tensor(y)
}

pub fn dual(x: &KClass) -> KClass {
    x.dual()
}

/// `lambda^k(x)`; virtual classes go through `lambda_t(x - y) = lambda_t(x) / lambda_t(y)`.
pub fn lambda_k(k: usize, x: &KClass) -> KClass {
    x.lambda_series(k).pop().expect("series has k+1 entries")
}

/// `S^mu(x) = det(lambda^{mu_i + j - i}(x))`.
///
/// Under the character map this is the Schur polynomial of the conjugate
/// shape: the determinant is the dual Jacobi-Trudi form in the elementary
/// classes `lambda^k`.
pub fn schur_op(mu: &Partition, x: &KClass) -> KClass {
    let n = mu.len();
    if n == 0 {
        return KClass::one();
    }
    let max = (mu.part(0) as usize) + n - 1;
    let lambdas = x.lambda_series(max);
    let entry = |i: usize, j: usize| -> KClass {
        let idx = mu.part(i) as i64 + j as i64 - i as i64;
        if idx < 0 {
            KClass::zero()
        } else {
            lambdas[idx as usize].clone()
        }
    };
    // Laplace expansion over column subsets: minors[mask] is the determinant
    // of the first popcount(mask) rows restricted to the columns in mask.
    let mut minors: Vec<Option<KClass>> = vec![None; 1 << n];
    minors[0] = Some(KClass::one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = KClass::zero();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = mask & !(1 << col);
            // Sign: number of chosen columns to the right of `col`.
            let after = (rest >> col).count_ones();
            let e = entry(row, col);
            if e.is_zero() {
                continue;
            }
            let term = e.tensor(minors[rest].as_ref().expect("smaller masks computed first"));
            acc = if after % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().expect("full minor computed")
}

/// `S^{mu/eps}(x) = sum_nu c^mu_{eps,nu} S^nu(x)`; zero unless `eps ⊆ mu`.
pub fn skew_schur_op(mu: &Partition, eps: &Partition, x: &KClass) -> KClass {
    if !mu.contains(eps) {
        return KClass::zero();
    }
    let n = mu.weight() - eps.weight();
    let mut acc = KClass::zero();
    for nu in partitions_of(n, mu.len(), mu.part(0)) {
        let c = lr_coefficient(mu, eps, &nu);
        if c > 0 {
            acc = &acc + &schur_op(&nu, x).scale(&BigInt::from(c));
        }
    }
    acc
}

/// Names `c1(label) .. c{n}(label)` for a rank-`n` bundle.
fn chern_names(n: usize, label: &str) -> Vec<String> {
    (1..=n).map(|k| format!("c{k}({label})")).collect()
}

/// `Q_{n,m,i}`: the degree-`i` Chern class of `F ⊗ G` as a polynomial in the
/// Chern classes `c_k(F)` (rank `n`) and `c_k(G)` (rank `m`).
pub fn universal_tensor_poly(n: usize, m: usize, i: u32) -> Result<GradedPoly> {
    if n == 0 || m == 0 || i == 0 {
        return Err(Error::Domain("universal tensor polynomial needs n, m, i >= 1".into()));
    }
    let mut ctx = RootContext::new();
    let f = ctx.fresh_bundle(n);
    let g = ctx.fresh_bundle(m);
    let ring = root_ring(ctx.used(), i);
    let c = f.tensor(&g).total_chern_in(&ring)?.coeff(i as usize);
    elementary_symmetric_reduce(
        &c,
        &[
            SymmetricGroup::with_names((0..n).collect(), chern_names(n, "F")),
            SymmetricGroup::with_names((n..n + m).collect(), chern_names(m, "G")),
        ],
    )
}

/// The polynomial expressing `c_i(Λ^k F)` in the Chern classes of a rank-`n` bundle `F`.
pub fn chern_of_lambda(k: usize, n: usize, i: u32) -> Result<GradedPoly> {
    if k > n {
        return Err(Error::Domain(format!("lambda^{k} of a rank-{n} bundle: need k <= n")));
    }
    let mut ctx = RootContext::new();
    let f = ctx.fresh_bundle(n);
    let ring = root_ring(n, i);
    let c = lambda_k(k, &f).total_chern_in(&ring)?.coeff(i as usize);
    elementary_symmetric_reduce(&c, &[SymmetricGroup::with_names((0..n).collect(), chern_names(n, "F"))])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> LineElement {
        LineElement::primitive(i)
    }

    fn coeff_strings(s: &TotalChern) -> Vec<String> {
        s.padded_coeffs().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn chern_of_line_and_rank_two() {
        let x = KClass::line(u(0));
        assert_eq!(coeff_strings(&x.total_chern(2)), vec!["1", "u1", "0"]);
        let y = &KClass::line(u(0)) + &KClass::line(u(1));
        assert_eq!(coeff_strings(&y.total_chern(2)), vec!["1", "u1+u2", "u1*u2"]);
    }

    #[test]
    fn chern_of_negative_line() {
        let x = -&KClass::line(u(0));
        assert_eq!(coeff_strings(&x.total_chern(3)), vec!["1", "-u1", "u1^2", "-u1^3"]);
    }

    #[test]
    fn tensor_examples() {
        let lu = KClass::line(u(0));
        let lv = KClass::line(u(1));
        assert_eq!(lu.tensor(&lv), KClass::line(LineElement::new(vec![1, 1])));
        let x = &(&lu + &lv) - &KClass::integer(3);
        assert_eq!(x.tensor(&KClass::one()), x);
        let a = &lu - &KClass::one();
        let b = &lv - &KClass::one();
        let expect = KClass::from_multiplicities([
            (LineElement::new(vec![1, 1]), BigInt::one()),
            (u(0), -BigInt::one()),
            (u(1), -BigInt::one()),
            (LineElement::trivial(), BigInt::one()),
        ]);
        assert_eq!(a.tensor(&b), expect);
    }

    #[test]
    fn dual_rules() {
        let x = &KClass::line(u(0)) + &KClass::line(u(1));
        assert_eq!(KClass::line(u(0)).dual(), KClass::line(LineElement::new(vec![-1])));
        let (c, cd) = (x.total_chern(2), x.dual().total_chern(2));
        assert_eq!(cd.coeff(1), -c.coeff(1));
        assert_eq!(cd.coeff(2), c.coeff(2));
        assert_eq!(x.dual().dual(), x);
    }

    #[test]
    fn lambda_basics() {
        let x = &(&KClass::line(u(0)) + &KClass::line(u(1))) + &KClass::line(u(2));
        assert_eq!(lambda_k(0, &x), KClass::one());
        assert_eq!(lambda_k(1, &x), x);
        let expect = KClass::from_pos_neg(
            vec![LineElement::new(vec![1, 1]), LineElement::new(vec![1, 0, 1]), LineElement::new(vec![0, 1, 1])],
            vec![],
        );
        assert_eq!(lambda_k(2, &x), expect);
        assert!(lambda_k(4, &x).is_zero());
    }

    #[test]
    fn lambda_of_virtual_class_inverts() {
        // lambda_t(-L) = 1 - L t + L^2 t^2 - ...
        let x = -&KClass::line(u(0));
        assert_eq!(lambda_k(2, &x), KClass::line(LineElement::new(vec![2])));
        assert_eq!(lambda_k(3, &x), -&KClass::line(LineElement::new(vec![3])));
    }

    #[test]
    fn schur_small_shapes() {
        let mut ctx = RootContext::new();
        let x = ctx.fresh_bundle(3);
        assert_eq!(schur_op(&"1".parse().unwrap(), &x), x);
        // det [[λ1, λ2], [λ0, λ1]] = λ1² − λ2
        let s11 = schur_op(&"1,1".parse().unwrap(), &x);
        let l1 = lambda_k(1, &x);
        assert_eq!(s11, &l1.tensor(&l1) - &lambda_k(2, &x));
        assert_eq!(schur_op(&Partition::empty(), &x), KClass::one());
    }

    #[test]
    fn schur_character_is_conjugate_schur_polynomial() {
        let x = RootContext::new().fresh_bundle(3);
        let ring = Ring::with_prefix("x", 3, 3);
        for mu in ["1,1", "2", "2,1", "1,1,1", "3"] {
            let mu: Partition = mu.parse().unwrap();
            let got = schur_op(&mu, &x).character(&ring).unwrap();
            assert_eq!(got, crate::partitions::schur_polynomial(&mu.conjugate(), &ring), "{mu}");
        }
    }

    #[test]
    fn universal_polys() {
        assert_eq!(universal_tensor_poly(1, 1, 1).unwrap().to_string(), "c1(F)+c1(G)");
        assert_eq!(universal_tensor_poly(2, 2, 1).unwrap().to_string(), "2*c1(F)+2*c1(G)");
        assert!(universal_tensor_poly(0, 1, 1).is_err());
    }

    #[test]
    fn lambda_chern_polys() {
        assert_eq!(chern_of_lambda(1, 3, 2).unwrap().to_string(), "c2(F)");
        assert_eq!(chern_of_lambda(3, 3, 1).unwrap().to_string(), "c1(F)");
        assert_eq!(chern_of_lambda(2, 3, 1).unwrap().to_string(), "2*c1(F)");
        assert!(chern_of_lambda(4, 3, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = KClass::parse_json(r#"{"pos":[[1],[0,1],[1,1]],"neg":[[],[2,0]]}"#).unwrap();
        assert_eq!(x.rank(), BigInt::from(1));
        let back = KClass::from_json(&x.to_json());
        assert_eq!(back, x);
        assert!(KClass::parse_json("{pos:").is_err());
    }

    #[test]
    fn character_rejects_duals() {
        let ring = Ring::with_prefix("y", 2, 4);
        let x = KClass::line(LineElement::new(vec![1, 2]));
        assert_eq!(x.character(&ring).unwrap().to_string(), "y1*y2^2");
        assert!(x.dual().character(&ring).is_err());
    }
}
