//! Truncated graded polynomials and power series over the integers.
//!
//! Every value lives in a [`Ring`]: an ordered list of weighted variables and
//! a truncation degree `D`. Terms of weighted degree above `D` are dropped on
//! construction, so the arithmetic is that of `Z[vars] / (monomials of degree > D)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial generator with a grading weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable { name: name.into(), degree }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingInner {
    vars: Vec<Variable>,
    truncation: u32,
}

/// Ring context shared by polynomials. Cheap to clone; compared by value.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(vars: Vec<Variable>, truncation: u32) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(Error::InvalidRing(format!("variable `{}` has degree 0", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Ring(Arc::new(RingInner { vars, truncation })))
    }

    /// Ring on `count` degree-1 variables named `{prefix}1 .. {prefix}count`.
    pub fn with_prefix(prefix: &str, count: usize, truncation: u32) -> Ring {
        let vars = (1..=count).map(|i| Variable::new(format!("{prefix}{i}"), 1)).collect();
        Ring::new(vars, truncation).expect("generated names are unique")
    }

    pub fn vars(&self) -> &[Variable] {
        &self.0.vars
    }

    pub fn num_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn truncation(&self) -> u32 {
        self.0.truncation
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v.name == name)
    }

    /// Same variables, different truncation degree.
    pub fn with_truncation(&self, truncation: u32) -> Ring {
        Ring(Arc::new(RingInner { vars: self.0.vars.clone(), truncation }))
    }

    fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.0.vars).map(|(e, v)| e * v.degree).sum()
    }

    fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "[{}] (D={}) vs [{}] (D={})",
                self.var_names().join(","),
                self.truncation(),
                other.var_names().join(","),
                other.truncation()
            )))
        }
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.0.vars.iter().map(|v| v.name.as_str()).collect()
    }
}

/// Exponent vector with its cached weighted degree.
///
/// Ordered graded-lexicographically: lower weighted degree first, then by
/// exponent vector with larger exponents on earlier variables first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in a truncated graded ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GradedPoly {
    pub fn zero(ring: &Ring) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Ring, c: impl Into<BigInt>) -> Self {
        let exps = vec![0; ring.num_vars()];
        Self::from_terms(ring, [(exps, c.into())]).expect("constant has valid shape")
    }

    /// The generator at `index`; zero when its degree exceeds the truncation.
    pub fn var(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.num_vars(), "variable index {index} out of range");
        let mut exps = vec![0; ring.num_vars()];
        exps[index] = 1;
        Self::from_terms(ring, [(exps, BigInt::one())]).expect("variable has valid shape")
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring.var_index(name).ok_or_else(|| Error::Context(format!("no variable named `{name}`")))?;
        Ok(Self::var(ring, idx))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and discarding zero or over-degree terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != ring.num_vars() {
                return Err(Error::Context(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    exps.len(),
                    ring.num_vars()
                )));
            }
            let degree = ring.weighted_degree(&exps);
            if degree > ring.truncation() || c.is_zero() {
                continue;
            }
            *map.entry(Monomial { degree, exps }).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(GradedPoly { ring: ring.clone(), terms: map })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.degree == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        let m = Monomial { degree: self.ring.weighted_degree(exps), exps: exps.to_vec() };
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.ring.num_vars()])
    }

    /// Lowest weighted degree of a stored term; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree == degree)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms =
            self.terms.iter().filter(|(m, _)| m.degree == degree).map(|(m, c)| (m.clone(), c.clone())).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GradedPoly { ring: self.ring.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Product with every term above the truncation degree discarded.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let d = self.ring.truncation();
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                // Terms are sorted by degree, so the rest of `other` is too big.
                if ma.degree + mb.degree > d {
                    break;
                }
                let exps: Vec<u32> = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                *acc.entry(exps).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let ring = &self.ring;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, c)| (Monomial { degree: ring.weighted_degree(&exps), exps }, c))
            .collect();
        Ok(GradedPoly { ring: ring.clone(), terms })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reinterprets the polynomial in a ring with a different truncation
    /// degree but the same variables; terms above the new bound are dropped.
    pub fn retruncate(&self, ring: &Ring) -> Result<Self> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::Context("retruncate requires identical variables".into()));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree <= ring.truncation())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(GradedPoly { ring: ring.clone(), terms })
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images must
    /// share one target ring.
    pub fn substitute(&self, images: &[GradedPoly], target: &Ring) -> Result<Self> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::Context(format!(
                "substitution needs {} images, got {}",
                self.ring.num_vars(),
                images.len()
            )));
        }
        for img in images {
            target.check_same(&img.ring)?;
        }
        // Power cache per variable.
        let mut powers: Vec<Vec<GradedPoly>> =
            images.iter().map(|img| vec![GradedPoly::one(target), img.clone()]).collect();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = GradedPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target` by renaming: variable `i` goes to
    /// `target` variable `mapping[i]`.
    pub fn rename(&self, mapping: &[usize], target: &Ring) -> Result<Self> {
        let images: Vec<GradedPoly> = mapping.iter().map(|&j| GradedPoly::var(target, j)).collect();
        self.substitute(&images, target)
    }

    /// Exact integer evaluation, ignoring truncation.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::Context("evaluation point has wrong length".into()));
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.ring.vars().iter().map(|v| v.name.clone()).collect(),
            terms: self.terms.iter().map(|(m, c)| TermJson { exps: m.exps.clone(), coeff: c.to_string() }).collect(),
        }
    }

    /// Reads the JSON form back into `ring`; variable names must match.
    pub fn from_json(json: &PolyJson, ring: &Ring) -> Result<Self> {
        if json.vars.iter().map(String::as_str).ne(ring.var_names()) {
            return Err(Error::Context("JSON variables differ from the ring".into()));
        }
        let terms = json
            .terms
            .iter()
            .map(|t| {
                t.coeff
                    .parse::<BigInt>()
                    .map(|c| (t.exps.clone(), c))
                    .map_err(|e| Error::Parse(format!("coefficient `{}`: {e}", t.coeff)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ring, terms)
    }
}

impl fmt::Display for GradedPoly {
    /// Canonical text form: `coeff*var^k*...` terms joined by `+`/`-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.degree == 0 || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in self.ring.vars().iter().zip(&m.exps) {
                match e {
                    0 => {}
                    1 => factors.push(v.name.clone()),
                    _ => factors.push(format!("{}^{e}", v.name)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// `{vars:[...], terms:[{exps:[...], coeff:"<decimal>"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Truncated power series `1 + c_1 t + c_2 t^2 + ...` with polynomial
/// coefficients.
///
/// The series variable `t` is truncated at the ring's degree `D`. For Chern
/// series coefficient `i` is homogeneous of degree `i`; gamma series reuse
/// the type with mixed-degree coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalChern {
    ring: Ring,
    coeffs: Vec<GradedPoly>,
}

impl TotalChern {
    pub fn one(ring: &Ring) -> Self {
        TotalChern { ring: ring.clone(), coeffs: vec![GradedPoly::one(ring)] }
    }

    /// Series from `coeffs[i]` = coefficient of `t^i`. The constant term must be 1.
    pub fn from_coeffs(ring: &Ring, coeffs: Vec<GradedPoly>) -> Result<Self> {
        match coeffs.first() {
            Some(c0) if c0.is_one() => {}
            _ => return Err(Error::Degree("series constant term must be 1".into())),
        }
        for c in &coeffs {
            ring.check_same(c.ring())?;
        }
        let mut s = TotalChern { ring: ring.clone(), coeffs };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        self.coeffs.truncate(self.ring.truncation() as usize + 1);
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(GradedPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Bound on the power of `t` kept.
    pub fn t_bound(&self) -> usize {
        self.ring.truncation() as usize
    }

    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GradedPoly::zero(&self.ring))
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    /// Coefficients padded with zeros up to `t^D`.
    pub fn padded_coeffs(&self) -> Vec<GradedPoly> {
        (0..=self.t_bound()).map(|i| self.coeff(i)).collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let n = self.t_bound();
        let mut out = vec![GradedPoly::zero(&self.ring); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut s = TotalChern { ring: self.ring.clone(), coeffs: out };
        s.normalize();
        Ok(s)
    }

    /// Multiplies by `1 + a t`.
    pub fn mul_linear(&self, a: &GradedPoly) -> Self {
        let n = self.t_bound();
        let padded = self.padded_coeffs();
        let mut out = padded.clone();
        for k in 1..=n {
            out[k] = &padded[k] + &(a * &padded[k - 1]);
        }
        let mut s = TotalChern { ring: self.ring.clone(), coeffs: out };
        s.normalize();
        s
    }

    /// Divides by `1 + a t`.
    pub fn div_linear(&self, a: &GradedPoly) -> Self {
        let n = self.t_bound();
        let mut out = self.padded_coeffs();
        for k in 1..=n {
            out[k] = &out[k] - &(a * &out[k - 1]);
        }
        let mut s = TotalChern { ring: self.ring.clone(), coeffs: out };
        s.normalize();
        s
    }

    /// Multiplicative inverse by degree-by-degree recursion:
    /// `g_0 = 1`, `g_n = -sum_{k=1..n} f_k g_{n-k}`.
    pub fn invert(&self) -> Self {
        let n = self.t_bound();
        let f = self.padded_coeffs();
        let mut g: Vec<GradedPoly> = Vec::with_capacity(n + 1);
        g.push(GradedPoly::one(&self.ring));
        for m in 1..=n {
            let mut acc = GradedPoly::zero(&self.ring);
            for k in 1..=m {
                if !f[k].is_zero() {
                    acc = &acc - &(&f[k] * &g[m - k]);
                }
            }
            g.push(acc);
        }
        let mut s = TotalChern { ring: self.ring.clone(), coeffs: g };
        s.normalize();
        s
    }

    /// Substitutes `t -> t / (1 + a t)` for a degree-1 element `a` and
    /// re-expands, by composing with the series of `t (1 + a t)^{-1}`.
    pub fn tau_substitute(&self, a: &GradedPoly) -> Result<Self> {
        self.ring.check_same(a.ring())?;
        if !a.is_homogeneous(1) {
            return Err(Error::Degree(format!("tau substitution needs a degree-1 element, got {a}")));
        }
        let n = self.t_bound();
        // tau[k] = coefficient of t^k in t/(1+at) = (-a)^{k-1}
        let mut tau = vec![GradedPoly::zero(&self.ring); n + 1];
        let neg_a = -a;
        if n >= 1 {
            tau[1] = GradedPoly::one(&self.ring);
            for k in 2..=n {
                tau[k] = &tau[k - 1] * &neg_a;
            }
        }
        let mut out = vec![GradedPoly::zero(&self.ring); n + 1];
        out[0] = self.coeff(0);
        // power = tau^k, starting at k = 1
        let mut power = tau.clone();
        for k in 1..=n {
            let fk = self.coeff(k);
            if !fk.is_zero() {
                for (idx, p) in power.iter().enumerate().skip(k) {
                    if !p.is_zero() {
                        out[idx] = &out[idx] + &(&fk * p);
                    }
                }
            }
            if k < n {
                power = series_product(&power, &tau, n);
            }
        }
        let mut s = TotalChern { ring: self.ring.clone(), coeffs: out };
        s.normalize();
        Ok(s)
    }

    /// Coefficients as numbers when every coefficient is constant.
    pub fn constant_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.max_degree().unwrap_or(0) == 0 { c.constant_term().to_i64() } else { None })
            .collect()
    }

    pub fn to_json(&self) -> Vec<PolyJson> {
        self.coeffs.iter().map(GradedPoly::to_json).collect()
    }
}

impl fmt::Display for TotalChern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

fn series_product(a: &[GradedPoly], b: &[GradedPoly], n: usize) -> Vec<GradedPoly> {
    let ring = a[0].ring().clone();
    let mut out = vec![GradedPoly::zero(&ring); n + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// One group of same-degree variables under whose permutations a polynomial
/// is symmetric, with the names for its elementary symmetric generators.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    pub vars: Vec<usize>,
    pub names: Vec<String>,
}

impl SymmetricGroup {
    /// Generators named `{label}1 .. {label}n`.
    pub fn new(vars: Vec<usize>, label: &str) -> Self {
        let names = (1..=vars.len()).map(|k| format!("{label}{k}")).collect();
        SymmetricGroup { vars, names }
    }

    pub fn with_names(vars: Vec<usize>, names: Vec<String>) -> Self {
        SymmetricGroup { vars, names }
    }
}

/// The polynomial `e_k` in the variables at `vars`.
pub fn elementary_symmetric(ring: &Ring, vars: &[usize], k: usize) -> GradedPoly {
    // prefix recursion: e_k(x_1..x_j) = e_k(x_1..x_{j-1}) + x_j e_{k-1}(x_1..x_{j-1})
    let mut e: Vec<GradedPoly> = vec![GradedPoly::one(ring)];
    for &v in vars {
        let x = GradedPoly::var(ring, v);
        e.push(GradedPoly::zero(ring));
        for j in (1..e.len()).rev() {
            e[j] = &e[j] + &(&x * &e[j - 1]);
        }
    }
    e.get(k).cloned().unwrap_or_else(|| GradedPoly::zero(ring))
}

/// Rewrites a polynomial that is separately symmetric in each group as a
/// polynomial in the groups' elementary symmetric functions.
///
/// The output ring lists the variables outside every group (in their original
/// order) followed by each group's generators `e_1 .. e_n`, where `e_k` has
/// weight `k` times the group's variable weight. Reduction is iterated
/// leading-term elimination in lexicographic order within each group.
pub fn elementary_symmetric_reduce(p: &GradedPoly, groups: &[SymmetricGroup]) -> Result<GradedPoly> {
    let ring = p.ring();
    let n = ring.num_vars();
    let mut in_group = vec![false; n];
    let mut group_degree = Vec::with_capacity(groups.len());
    for (gi, g) in groups.iter().enumerate() {
        if g.names.len() != g.vars.len() {
            return Err(Error::Context(format!("group {gi} needs one name per variable")));
        }
        let mut d = None;
        for &v in &g.vars {
            if v >= n || in_group[v] {
                return Err(Error::Context(format!("group {gi} has an invalid or repeated variable")));
            }
            in_group[v] = true;
            let vd = ring.vars()[v].degree;
            if *d.get_or_insert(vd) != vd {
                return Err(Error::Context(format!("group {gi} mixes variable degrees")));
            }
        }
        group_degree.push(d.unwrap_or(1));
    }

    // Working ring: original variables followed by every e-generator.
    let mut work_vars = ring.vars().to_vec();
    let mut e_index: Vec<Vec<usize>> = Vec::new();
    for (g, &d) in groups.iter().zip(&group_degree) {
        let mut idx = Vec::new();
        for (k, name) in g.names.iter().enumerate() {
            idx.push(work_vars.len());
            work_vars.push(Variable::new(name.clone(), d * (k as u32 + 1)));
        }
        e_index.push(idx);
    }
    let work = Ring::new(work_vars, ring.truncation())?;
    let pad = work.num_vars() - n;
    let mut current = GradedPoly::from_terms(
        &work,
        p.terms().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.extend(std::iter::repeat_n(0, pad));
            (exps, c.clone())
        }),
    )?;

    for (gi, g) in groups.iter().enumerate() {
        let e_polys: Vec<GradedPoly> = (1..=g.vars.len()).map(|k| elementary_symmetric(&work, &g.vars, k)).collect();
        let mut carried = GradedPoly::zero(&work);
        loop {
            let group_exps = |m: &Monomial| -> Vec<u32> { g.vars.iter().map(|&v| m.exps[v]).collect() };
            let lead = current.terms.keys().map(group_exps).filter(|a| a.iter().any(|&e| e > 0)).max();
            let Some(alpha) = lead else { break };
            if alpha.windows(2).any(|w| w[0] < w[1]) {
                let name = g.names.first().cloned().unwrap_or_else(|| format!("#{gi}"));
                return Err(Error::NotSymmetric(name));
            }
            // Coefficient of x^alpha as a polynomial in everything else.
            let coeff = GradedPoly::from_terms(
                &work,
                current.terms.iter().filter(|(m, _)| group_exps(m) == alpha).map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    for &v in &g.vars {
                        exps[v] = 0;
                    }
                    (exps, c.clone())
                }),
            )?;
            let mut expanded = coeff.clone();
            let mut e_exps = vec![0u32; work.num_vars()];
            for k in 0..alpha.len() {
                let next = alpha.get(k + 1).copied().unwrap_or(0);
                let power = alpha[k] - next;
                if power > 0 {
                    expanded = &expanded * &e_polys[k].pow(power);
                    e_exps[e_index[gi][k]] = power;
                }
            }
            let e_mono = GradedPoly::from_terms(&work, [(e_exps, BigInt::one())])?;
            current = &current - &expanded;
            carried = &carried + &(&coeff * &e_mono);
        }
        current = &current + &carried;
    }

    // Drop the (now absent) grouped variables.
    let keep: Vec<usize> = (0..work.num_vars()).filter(|&i| i >= n || !in_group[i]).collect();
    let out_ring = Ring::new(keep.iter().map(|&i| work.vars()[i].clone()).collect(), ring.truncation())?;
    GradedPoly::from_terms(
        &out_ring,
        current.terms.iter().map(|(m, c)| (keep.iter().map(|&i| m.exps[i]).collect(), c.clone())),
    )
}
