//! Integer partitions, boxes, Littlewood-Richardson coefficients and
//! brute-force Schur polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bigpoly::{GradedPoly, Ring};
use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts. Trailing zeros are stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::Partition(format!("{parts:?} has an interior zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    /// The single row `(k)`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `[2,1]`, or an empty string / `[]` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap_or(body).trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Partition(format!("bad part `{}` in `{s}`", p.trim()))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

/// Partitions of `n` with at most `rows` parts, each at most `cols`, in
/// lexicographically decreasing order.
pub fn partitions_of(n: u32, rows: usize, cols: u32) -> Vec<Partition> {
    fn go(rest: u32, max_part: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, cols, rows, &mut Vec::new(), &mut out);
    out
}

/// Every partition fitting in a `rows x cols` box, graded by weight and then
/// lexicographically decreasing within each weight.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    let max = rows as u32 * cols;
    (0..=max).flat_map(|n| partitions_of(n, rows, cols)).collect()
}

/// Littlewood-Richardson coefficient `c^mu_{eps,nu}`: the number of
/// semistandard skew tableaux of shape `mu/eps` and content `nu` whose
/// reverse reading word is a lattice word.
pub fn lr_coefficient(mu: &Partition, eps: &Partition, nu: &Partition) -> u64 {
    if eps.weight() + nu.weight() != mu.weight() || !mu.contains(eps) || !mu.contains(nu) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    // Cells of mu/eps in reading order: rows top to bottom, right to left.
    let mut cells = Vec::new();
    for r in 0..mu.len() {
        for c in (eps.part(r)..mu.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = mu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; mu.len()];
    let mut counts = vec![0u32; nu.len() + 1];
    let content: Vec<u32> = nu.parts().to_vec();

    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        eps: &Partition,
        grid: &mut [Vec<u32>],
        counts: &mut [u32],
        content: &[u32],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        // Row weakly increases: value <= the already-filled cell to the right.
        let mut hi = content.len() as u32;
        if c + 1 < grid[r].len() && grid[r][c + 1] > 0 {
            hi = hi.min(grid[r][c + 1]);
        }
        // Column strictly increases: value > the cell above when it is in the skew shape.
        let mut lo = 1;
        if r > 0 && (c as u32) >= eps.part(r - 1) {
            lo = grid[r - 1][c] + 1;
        }
        // An entry in row r (0-based) can be at most r + 1 in an LR filling.
        hi = hi.min(r as u32 + 1);
        let mut total = 0;
        for v in lo..=hi {
            let k = v as usize;
            if counts[k] >= content[k - 1] {
                continue;
            }
            if k > 1 && counts[k] + 1 > counts[k - 1] {
                continue;
            }
            counts[k] += 1;
            grid[r][c] = v;
            total += fill(idx + 1, cells, eps, grid, counts, content);
            grid[r][c] = 0;
            counts[k] -= 1;
        }
        total
    }

    fill(0, &cells, eps, &mut grid, &mut counts, &content)
}

/// Schur polynomial `s_mu` in every variable of `ring`, by enumerating
/// semistandard tableaux. Zero when `mu` has more parts than variables.
pub fn schur_polynomial(mu: &Partition, ring: &Ring) -> GradedPoly {
    let k = ring.num_vars();
    if mu.len() > k {
        return GradedPoly::zero(ring);
    }
    let shape: Vec<usize> = mu.parts().iter().map(|&p| p as usize).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut exps = vec![0u32; k];
    let mut terms: Vec<(Vec<u32>, BigInt)> = Vec::new();

    fn fill(
        r: usize,
        c: usize,
        shape: &[usize],
        k: usize,
        grid: &mut [Vec<usize>],
        exps: &mut [u32],
        terms: &mut Vec<(Vec<u32>, BigInt)>,
    ) {
        if r == shape.len() {
            terms.push((exps.to_vec(), BigInt::one()));
            return;
        }
        if c == shape[r] {
            fill(r + 1, 0, shape, k, grid, exps, terms);
            return;
        }
        let mut lo = 0;
        if c > 0 {
            lo = grid[r][c - 1];
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        // Leave room for the strictly increasing column below.
        let below = shape[r + 1..].iter().take_while(|&&w| w > c).count();
        for v in lo..k.saturating_sub(below) {
            grid[r][c] = v;
            exps[v] += 1;
            fill(r, c + 1, shape, k, grid, exps, terms);
            exps[v] -= 1;
        }
    }

    fill(0, 0, &shape, k, &mut grid, &mut exps, &mut terms);
    GradedPoly::from_terms(ring, terms).expect("exponent vectors match the ring")
}

/// `s_mu(x_1, .., x_k)` in a fresh ring of `k` degree-1 variables truncated at `|mu|`.
pub fn schur_in_variables(mu: &Partition, k: usize) -> GradedPoly {
    let ring = Ring::with_prefix("x", k, mu.weight());
    schur_polynomial(mu, &ring)
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(partitions_in_box(0, 5), vec![Partition::empty()]);
        assert_eq!(partitions_in_box(1, 2), vec![p(""), p("1"), p("2")]);
        assert_eq!(partitions_in_box(2, 2), vec![p(""), p("1"), p("2"), p("1,1"), p("2,1"), p("2,2")]);
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("[2,1]").to_string(), "[2,1]");
        assert_eq!(p("3,1,0").parts(), &[3, 1]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert!("2,0,1".parse::<Partition>().is_err());
        assert_eq!(p("4,2,1").conjugate(), p("3,2,1,1"));
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p("1"), &p(""), &p("1")), 1);
        assert_eq!(lr_coefficient(&p("2,1"), &p("1"), &p("1,1")), 1);
        assert_eq!(lr_coefficient(&p("4,2"), &p("2,1"), &p("2,1")), 1);
        assert_eq!(lr_coefficient(&p("3,2,1"), &p("2,1"), &p("2,1")), 2);
        assert_eq!(lr_coefficient(&p("3"), &p("1"), &p("1,1")), 0);
        assert_eq!(lr_coefficient(&p("2,1"), &p("3"), &p("")), 0);
    }

    #[test]
    fn schur_small_cases() {
        assert_eq!(schur_in_variables(&p("1"), 3).to_string(), "x1+x2+x3");
        assert_eq!(schur_in_variables(&p("1,1"), 2).to_string(), "x1*x2");
        let s21 = schur_in_variables(&p("2,1"), 3);
        let total: BigInt = s21.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, BigInt::from(8));
        assert!(schur_in_variables(&p("1,1,1"), 2).is_zero());
    }

    #[test]
    fn schur_matches_jacobi_trudi_for_21() {
        // s_{2,1} = h2 h1 - h3 in three variables
        let ring = Ring::with_prefix("x", 3, 3);
        let h = |k: u32| schur_polynomial(&Partition::row(k), &ring);
        let jt = &(&h(2) * &h(1)) - &h(3);
        assert_eq!(schur_polynomial(&p("2,1"), &ring), jt);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(16, 8), BigInt::from(12870));
    }
}
