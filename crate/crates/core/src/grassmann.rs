//! Boxed Schur-basis model of the Chern ring of a Grassmannian `Gr(m, n)` and
//! its presentation by the inverse total Chern class.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bigpoly::{GradedPoly, PolyJson, Ring, TotalChern, Variable};
use crate::error::{Error, Result};
use crate::partitions::{binomial, lr_coefficient, partitions_in_box, partitions_of, Partition};

/// Integer combination of Schur classes `s_mu` with `mu` inside a
/// `rows x cols` box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxedSchurElement {
    rows: usize,
    cols: u32,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl BoxedSchurElement {
    pub fn zero(rows: usize, cols: u32) -> Self {
        BoxedSchurElement { rows, cols, coeffs: BTreeMap::new() }
    }

    pub fn one(rows: usize, cols: u32) -> Self {
        Self::basis(rows, cols, Partition::empty())
    }

    /// `s_mu`, or zero when `mu` leaves the box.
    pub fn basis(rows: usize, cols: u32, mu: Partition) -> Self {
        Self::from_coeffs(rows, cols, [(mu, BigInt::one())])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (Partition, BigInt)>>(rows: usize, cols: u32, items: I) -> Self {
        let mut coeffs: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (mu, c) in items {
            if mu.fits_in_box(rows, cols) {
                *coeffs.entry(mu).or_insert_with(BigInt::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        BoxedSchurElement { rows, cols, coeffs }
    }

    pub fn box_shape(&self) -> (usize, u32) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mu: &Partition) -> BigInt {
        self.coeffs.get(mu).cloned().unwrap_or_default()
    }

    /// Terms ordered by weight, then lexicographically decreasing.
    pub fn terms(&self) -> Vec<(&Partition, &BigInt)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then_with(|| b.0.cmp(a.0)));
        v
    }

    fn check_box(&self, other: &Self) -> Result<()> {
        if self.box_shape() == other.box_shape() {
            Ok(())
        } else {
            Err(Error::Context(format!("box {:?} vs box {:?}", self.box_shape(), other.box_shape())))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        Ok(Self::from_coeffs(
            self.rows,
            self.cols,
            self.coeffs.iter().chain(&other.coeffs).map(|(p, c)| (p.clone(), c.clone())),
        ))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.rows, self.cols, self.coeffs.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    /// Littlewood-Richardson product, dropping partitions outside the box.
    pub fn schur_multiply(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let mut acc: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (eps, a) in &self.coeffs {
            for (nu, b) in &other.coeffs {
                let ab = a * b;
                for (mu, c) in basis_product(eps, nu, self.rows, self.cols) {
                    *acc.entry(mu).or_insert_with(BigInt::zero) += &ab * BigInt::from(c);
                }
            }
        }
        Ok(Self::from_coeffs(self.rows, self.cols, acc))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.rows, self.cols);
        for _ in 0..e {
            acc = acc.schur_multiply(self).expect("same box");
        }
        acc
    }

    pub fn to_json(&self) -> Vec<SchurTermJson> {
        self.terms()
            .into_iter()
            .map(|(p, c)| SchurTermJson { partition: p.parts().to_vec(), coeff: c.to_string() })
            .collect()
    }
}

impl fmt::Display for BoxedSchurElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if !c.abs().is_one() {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "s{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurTermJson {
    pub partition: Vec<u32>,
    pub coeff: String,
}

/// `s_eps * s_nu` restricted to the box.
fn basis_product(eps: &Partition, nu: &Partition, rows: usize, cols: u32) -> Vec<(Partition, u64)> {
    partitions_of(eps.weight() + nu.weight(), rows, cols)
        .into_iter()
        .filter(|mu| mu.contains(eps) && mu.contains(nu))
        .filter_map(|mu| {
            let c = lr_coefficient(&mu, eps, nu);
            (c > 0).then_some((mu, c))
        })
        .collect()
}

pub fn schur_multiply(a: &BoxedSchurElement, b: &BoxedSchurElement) -> Result<BoxedSchurElement> {
    a.schur_multiply(b)
}

/// Which tautological bundle supplies the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tautological {
    /// Universal quotient, rank `n - m`; used when `m <= n - m`.
    Q,
    /// Universal subbundle, rank `m`; used when `m > n - m`.
    S,
}

/// Presentation data for `Gr(m, n)`.
#[derive(Debug, Clone)]
pub struct GrassmannModel {
    pub m: usize,
    pub n: usize,
    pub bundle: Tautological,
    /// Rank of the generating bundle; also the box's row count.
    pub rank: usize,
}

impl GrassmannModel {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || m >= n {
            return Err(Error::Domain(format!("Gr({m},{n}) needs 1 <= m < n")));
        }
        let (bundle, rank) = if m <= n - m { (Tautological::Q, n - m) } else { (Tautological::S, m) };
        Ok(GrassmannModel { m, n, bundle, rank })
    }

    /// Box `rows x cols`: rows bound the number of parts, cols the part size.
    pub fn box_shape(&self) -> (usize, u32) {
        (self.rank, (self.n - self.rank) as u32)
    }

    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.rank).map(|k| format!("c{k}")).collect()
    }

    /// `Z[c_1..c_r]` graded by `deg c_k = k`, truncated at `n`.
    pub fn generator_ring(&self) -> Ring {
        let vars = self.generator_names().into_iter().zip(1..).map(|(name, d)| Variable::new(name, d)).collect();
        Ring::new(vars, self.n as u32).expect("distinct generator names")
    }

    /// Coefficients of `t^{n-r+1} .. t^n` in `1 / c_t`.
    pub fn relations(&self) -> Vec<GradedPoly> {
        let ring = self.generator_ring();
        let mut coeffs = vec![GradedPoly::one(&ring)];
        coeffs.extend((0..self.rank).map(|k| GradedPoly::var(&ring, k)));
        let inverse = TotalChern::from_coeffs(&ring, coeffs).expect("constant term is 1").invert();
        (self.n - self.rank + 1..=self.n).map(|j| inverse.coeff(j)).collect()
    }

    /// Index of the first relation, i.e. `n - r + 1`.
    pub fn first_relation_index(&self) -> usize {
        self.n - self.rank + 1
    }

    /// `c_k ↦ s_{(1^k)}`.
    pub fn generator_images(&self) -> Vec<BoxedSchurElement> {
        let (rows, cols) = self.box_shape();
        (1..=self.rank).map(|k| BoxedSchurElement::basis(rows, cols, Partition::column(k))).collect()
    }

    /// Value of a polynomial in the generators inside the boxed model.
    pub fn evaluate(&self, p: &GradedPoly) -> Result<BoxedSchurElement> {
        if p.ring() != &self.generator_ring() {
            return Err(Error::Context("polynomial is not in the generator ring".into()));
        }
        let (rows, cols) = self.box_shape();
        let images = self.generator_images();
        let mut powers: Vec<Vec<BoxedSchurElement>> =
            images.iter().map(|g| vec![BoxedSchurElement::one(rows, cols), g.clone()]).collect();
        let mut out = BoxedSchurElement::zero(rows, cols);
        for (mono, c) in p.terms() {
            let mut prod = BoxedSchurElement::one(rows, cols).scale(c);
            for (k, &e) in mono.exps().iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().expect("nonempty").schur_multiply(&images[k])?;
                    powers[k].push(next);
                }
                if e > 0 {
                    prod = prod.schur_multiply(&powers[k][e as usize])?;
                }
                if prod.is_zero() {
                    break;
                }
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Additive basis of the model.
    pub fn basis(&self) -> Vec<Partition> {
        let (rows, cols) = self.box_shape();
        partitions_in_box(rows, cols)
    }

    /// `c_t(S) c_t(Q)` in the model up to `t^n`, with the complementary
    /// bundle's classes `(-1)^j s_{(j)}`.
    pub fn whitney_product(&self) -> Vec<BoxedSchurElement> {
        let (rows, cols) = self.box_shape();
        let gen: Vec<BoxedSchurElement> =
            (0..=self.rank).map(|k| BoxedSchurElement::basis(rows, cols, Partition::column(k))).collect();
        let other: Vec<BoxedSchurElement> = (0..=cols)
            .map(|j| {
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                BoxedSchurElement::basis(rows, cols, Partition::row(j)).scale(&sign)
            })
            .collect();
        (0..=self.n)
            .map(|d| {
                let mut acc = BoxedSchurElement::zero(rows, cols);
                for (a, ga) in gen.iter().enumerate() {
                    if a > d || d - a >= other.len() {
                        continue;
                    }
                    let term = ga.schur_multiply(&other[d - a]).expect("same box");
                    acc = acc.try_add(&term).expect("same box");
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PresentationChecks {
    pub relations_vanish: bool,
    pub rank_matches: bool,
    pub whitney_inverse: bool,
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub model: GrassmannModel,
    pub generators: Vec<String>,
    pub relations: Vec<GradedPoly>,
    pub rank: usize,
    pub expected_rank: BigInt,
    pub checks: PresentationChecks,
}

impl PresentationReport {
    pub fn pass(&self) -> bool {
        let c = &self.checks;
        c.relations_vanish && c.rank_matches && c.whitney_inverse
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationJson {
    pub m: usize,
    pub n: usize,
    pub bundle: Tautological,
    #[serde(rename = "box")]
    pub box_shape: (usize, u32),
    pub generators: Vec<String>,
    pub relations: Vec<PolyJson>,
    pub relations_text: Vec<String>,
    pub rank: usize,
    pub checks: PresentationChecks,
    pub pass: bool,
}

impl PresentationReport {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            m: self.model.m,
            n: self.model.n,
            bundle: self.model.bundle,
            box_shape: self.model.box_shape(),
            generators: self.generators.clone(),
            relations: self.relations.iter().map(GradedPoly::to_json).collect(),
            relations_text: self.relations.iter().map(GradedPoly::to_string).collect(),
            rank: self.rank,
            checks: self.checks.clone(),
            pass: self.pass(),
        }
    }
}

pub fn chern_relations(m: usize, n: usize) -> Result<Vec<GradedPoly>> {
    Ok(GrassmannModel::new(m, n)?.relations())
}

/// Additive rank of the boxed model of `Gr(m, n)`.
pub fn model_rank(m: usize, n: usize) -> Result<usize> {
    Ok(GrassmannModel::new(m, n)?.basis().len())
}

/// Checks that the relations vanish in the boxed model, that the model has
/// rank `binom(n, m)`, and that `c_t(S) c_t(Q) = 1` up to degree `n`.
pub fn verify_presentation(m: usize, n: usize) -> Result<PresentationReport> {
    let model = GrassmannModel::new(m, n)?;
    let relations = model.relations();
    let mut relations_vanish = true;
    for f in &relations {
        if !model.evaluate(f)?.is_zero() {
            relations_vanish = false;
        }
    }
    let rank = model.basis().len();
    let expected_rank = binomial(n as u64, m as u64);
    let whitney = model.whitney_product();
    let (rows, cols) = model.box_shape();
    let whitney_inverse =
        whitney[0] == BoxedSchurElement::one(rows, cols) && whitney[1..].iter().all(BoxedSchurElement::is_zero);
    Ok(PresentationReport {
        generators: model.generator_names(),
        relations,
        rank,
        checks: PresentationChecks {
            relations_vanish,
            rank_matches: BigInt::from(rank) == expected_rank,
            whitney_inverse,
        },
        expected_rank,
        model,
    })
}
