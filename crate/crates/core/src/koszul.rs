//! Degree-truncated Koszul homology over `Q[x_1..x_n]`, a Hilbert-series
//! oracle, and the rank-one Steinberg chart that feeds them.
//!
//! Everything is exact rational linear algebra on monomial bases —
//! no Gröbner bases anywhere.  For homogeneous generators the complex
//! splits by internal degree and each slice is handled independently;
//! inhomogeneous generators go through a single window computation on
//! the total-degree-truncated subcomplex, which certifies vanishing only
//! within the window.
//!
//! # The rank-one chart
//!
//! For `sl_2`, the space of pairs (traceless matrix, preserved line) has
//! an affine chart with coordinates `(z, t, b)`: the line is spanned by
//! `(1, z)`, the matrix acts on that vector with eigenvalue `t`, and `b`
//! is the upper-right entry.  Solving the eigenvector condition gives
//!
//! `X(z, t, b) = [[t − bz, b], [2tz − bz², bz − t]]`.
//!
//! The fibre product of two copies of this chart over the space of
//! matrices is cut out by matching the three matrix entries; after the
//! linear reduction the three equations in `(z₁,t₁,b₁,z₂,t₂,b₂)` are
//!
//! * `G₁ = b₁ − b₂`,
//! * `G₂ = t₁ − t₂ − b₁z₁ + b₂z₂`  (matching the diagonal entries),
//! * `G₃ = (z₁ − z₂)(t₁ + t₂)`,
//!
//! where `G₃` replaces the lower-left matching `E₃ = 2t₁z₁ − b₁z₁² −
//! 2t₂z₂ + b₂z₂²` via the identity `E₃ = (z₁+z₂)G₂ + G₃ + z₁z₂G₁`, so
//! the two triples generate the same ideal.  The locus they cut has two
//! sheets: the diagonal, and the graph of the involution
//! `(z, t, b) ↦ (z − 2t/b, −t, b)` that moves to the other eigenline and
//! negates the eigenvalue — the rank-one deck transformation.  Both
//! sheets provide exact sampling oracles for the equations.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, SparseRow};

/// Hard cap on the total number of basis cells a single homology
/// computation may touch.
const MAX_KOSZUL_CELLS: usize = 4_000_000;

/// A polynomial over `Q` in a fixed number of variables, stored as a
/// map from exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl QPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(&vec![0; n], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(&e, BigRational::one());
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: &[u32], c: BigRational) {
        assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exps.to_vec())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero(self.n);
        }
        QPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        assert_eq!(self.n, other.n);
        let mut out = QPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(&m, ca * cb);
            }
        }
        out
    }

    /// Multiply by the monomial with the given exponents.
    pub fn mul_monomial(&self, exps: &[u32]) -> QPoly {
        QPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// `Some(d)` when every monomial has total degree exactly `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n);
        let mut out = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (e, x) in m.iter().zip(point) {
                for _ in 0..*e {
                    term *= x;
                }
            }
            out += term;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "terms": self
                .terms
                .iter()
                .map(|(m, c)| serde_json::json!({ "m": m, "c": c.to_string() }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QPoly> {
        let n = v
            .get("n")
            .and_then(|n| n.as_u64())
            .ok_or_else(|| Error::Parse("polynomial needs a variable count \"n\"".into()))?
            as usize;
        let mut p = QPoly::zero(n);
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("polynomial needs \"terms\"".into()))?;
        for term in terms {
            let m: Vec<u32> = term
                .get("m")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::Parse("term needs exponents \"m\"".into()))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .map(|e| e as u32)
                        .ok_or_else(|| Error::Parse("bad exponent".into()))
                })
                .collect::<Result<_>>()?;
            if m.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.len(),
                });
            }
            let c_str = term
                .get("c")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("term needs a coefficient string \"c\"".into()))?;
            let c = BigRational::from_str(c_str)
                .map_err(|e| Error::Parse(format!("bad rational {c_str:?}: {e}")))?;
            p.add_term(&m, c);
        }
        Ok(p)
    }

    /// Render with the given variable names.
    pub fn display_with_vars(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.n);
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let is_const = m.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const {
                out.push_str(&mag.to_string());
                if !is_const {
                    out.push('*');
                }
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        names[j].to_string()
                    } else {
                        format!("{}^{}", names[j], e)
                    }
                })
                .collect();
            out.push_str(&vars.join("*"));
        }
        out
    }
}

/// Exact homology dimensions of a (possibly truncated) Koszul complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub num_vars: usize,
    pub generator_degrees: Vec<u32>,
    pub max_degree: u32,
    /// whether the computation split by internal degree
    pub graded: bool,
    /// `homology[i]`: for graded runs, the dimension of `H_i` in each
    /// internal degree `0..=max_degree`; for window runs, a single
    /// total dimension within the truncation window.
    pub homology: Vec<Vec<usize>>,
    /// `H_i = 0` for all `i ≥ 1` (within the window when not graded)
    pub regular_in_window: bool,
}

impl KoszulReport {
    pub fn h_total(&self, i: usize) -> usize {
        self.homology[i].iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num_vars": self.num_vars,
            "generator_degrees": self.generator_degrees,
            "max_degree": self.max_degree,
            "graded": self.graded,
            "homology": self.homology,
            "regular_in_window": self.regular_in_window,
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// All exponent vectors of total degree at most `d`.
fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Basis labels of one exterior slot: the subsets of generator indices
/// of size `k`, as sorted index lists.
fn subsets(c: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, c: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..=c.saturating_sub(k) {
            prefix.push(i);
            rec(i + 1, c, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, c, k, &mut Vec::new(), &mut out);
    out
}

/// Column key for the sparse rows: (exterior label, monomial).
type Cell = (Vec<usize>, Vec<u32>);

/// The image of the basis element `e_S ⊗ x^m` under the Koszul
/// differential, as a sparse row over the `(k−1)`-cells.
fn differential_row(gens: &[QPoly], subset: &[usize], monomial: &[u32]) -> SparseRow<Cell> {
    let mut row: SparseRow<Cell> = BTreeMap::new();
    for (pos, &i) in subset.iter().enumerate() {
        let reduced: Vec<usize> = subset
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &j)| j)
            .collect();
        let sign = if pos % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        for (m, c) in gens[i].mul_monomial(monomial).terms() {
            let key = (reduced.clone(), m.clone());
            let entry = row.entry(key.clone()).or_insert_with(BigRational::zero);
            *entry += c * &sign;
            if entry.is_zero() {
                row.remove(&key);
            }
        }
    }
    row
}

fn validate_gens(gens: &[QPoly]) -> Result<(usize, Vec<u32>)> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("need at least one generator".into()));
    }
    let n = gens[0].num_vars();
    let mut degrees = Vec::new();
    for g in gens {
        if g.num_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.num_vars(),
            });
        }
        let d = g
            .total_degree()
            .ok_or_else(|| Error::InvalidArgument("zero generators are not allowed".into()))?;
        degrees.push(d);
    }
    Ok((n, degrees))
}

/// Exact dimensions of the Koszul homology of `gens` through internal
/// degree `max_degree`.  Homogeneous inputs are computed degree by
/// degree; otherwise the whole weighted window is one computation and
/// vanishing is certified only within it.
pub fn koszul_homology(gens: &[QPoly], max_degree: u32) -> Result<KoszulReport> {
    let (n, degrees) = validate_gens(gens)?;
    let c = gens.len();
    if let Some(&dmax) = degrees.iter().max() {
        if max_degree < dmax {
            return Err(Error::InvalidArgument(format!(
                "max_degree {max_degree} is below the top generator degree {dmax}"
            )));
        }
    }
    let graded = gens.iter().all(|g| g.homogeneous_degree().is_some());

    // cell-count bound
    let mut total_cells: u64 = 0;
    for k in 0..=c {
        for subset in subsets(c, k) {
            let weight: u32 = subset.iter().map(|&i| degrees[i]).sum();
            if weight <= max_degree {
                let room = (max_degree - weight) as u64;
                total_cells += binomial(n as u64 + room, n as u64);
            }
        }
    }
    if total_cells > MAX_KOSZUL_CELLS as u64 {
        return Err(Error::WindowExceeded(format!(
            "koszul window holds {total_cells} cells, above the {MAX_KOSZUL_CELLS} bound"
        )));
    }

    // basis of C_k, either one internal-degree slice or the whole window
    let basis = |k: usize, slice: Option<u32>| -> Vec<(Vec<usize>, Vec<u32>)> {
        let mut out = Vec::new();
        for subset in subsets(c, k) {
            let weight: u32 = subset.iter().map(|&i| degrees[i]).sum();
            if weight > max_degree {
                continue;
            }
            let monomials = match slice {
                Some(d) => {
                    if weight > d {
                        continue;
                    }
                    monomials_of_degree(n, d - weight)
                }
                None => monomials_up_to(n, max_degree - weight),
            };
            for m in monomials {
                out.push((subset.clone(), m));
            }
        }
        out
    };

    let rank_of_dk = |k: usize, slice: Option<u32>| -> usize {
        if k == 0 || k > c {
            return 0;
        }
        rational_rank(
            basis(k, slice)
                .iter()
                .map(|(subset, m)| differential_row(gens, subset, m)),
        )
    };

    let mut homology: Vec<Vec<usize>> = Vec::new();
    if graded {
        let mut per_index: Vec<Vec<usize>> = vec![Vec::new(); c + 1];
        for d in 0..=max_degree {
            let mut ranks = vec![0usize; c + 2];
            for (k, rank) in ranks.iter_mut().enumerate().take(c + 2) {
                *rank = rank_of_dk(k, Some(d));
            }
            for (k, slot) in per_index.iter_mut().enumerate() {
                let dim = basis(k, Some(d)).len();
                slot.push(dim - ranks[k] - ranks[k + 1]);
            }
        }
        homology = per_index;
    } else {
        let mut ranks = vec![0usize; c + 2];
        for (k, rank) in ranks.iter_mut().enumerate().take(c + 2) {
            *rank = rank_of_dk(k, None);
        }
        for k in 0..=c {
            let dim = basis(k, None).len();
            homology.push(vec![dim - ranks[k] - ranks[k + 1]]);
        }
    }

    let regular_in_window = homology[1..]
        .iter()
        .all(|dims| dims.iter().all(|&d| d == 0));
    Ok(KoszulReport {
        num_vars: n,
        generator_degrees: degrees,
        max_degree,
        graded,
        homology,
        regular_in_window,
    })
}

/// Quotient dimensions against the product formula
/// `∏(1−t^{d_i})/(1−t)^n`, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub quotient_dims: Vec<usize>,
    pub predicted: Vec<i64>,
    pub matches: bool,
}

impl HilbertReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quotient_dims": self.quotient_dims,
            "predicted": self.predicted,
            "matches": self.matches,
        })
    }
}

/// Compare the exact dimensions of `(R/(gens))_d` with the coefficients
/// of `∏(1−t^{d_i})/(1−t)^n` for `d ≤ max_degree`.  Homogeneous input
/// only; degreewise agreement is exactly the in-window evidence that the
/// generators form a regular sequence.
pub fn hilbert_series_check(gens: &[QPoly], max_degree: u32) -> Result<HilbertReport> {
    let (n, _) = validate_gens(gens)?;
    let mut degrees = Vec::new();
    for g in gens {
        degrees.push(g.homogeneous_degree().ok_or_else(|| {
            Error::InvalidArgument("the series oracle needs homogeneous generators".into())
        })?);
    }

    // exact quotient dimensions
    let mut quotient_dims = Vec::new();
    for d in 0..=max_degree {
        let rows = gens.iter().zip(&degrees).flat_map(|(g, &dg)| {
            let shifts = if d >= dg {
                monomials_of_degree(n, d - dg)
            } else {
                Vec::new()
            };
            shifts.into_iter().map(move |m| {
                g.mul_monomial(&m)
                    .terms()
                    .map(|(mm, c)| (mm.clone(), c.clone()))
                    .collect::<SparseRow<Vec<u32>>>()
            })
        });
        let ideal_dim = rational_rank(rows);
        quotient_dims.push(monomials_of_degree(n, d).len() - ideal_dim);
    }

    // numerator ∏(1 − t^{d_i}) times (1 − t)^{-n}, truncated
    let top = max_degree as usize;
    let mut series = vec![0i64; top + 1];
    for (k, coeff) in series.iter_mut().enumerate() {
        *coeff = binomial((n + k - 1) as u64, k as u64) as i64;
    }
    for &dg in &degrees {
        let mut next = series.clone();
        for k in 0..=top {
            if k >= dg as usize {
                next[k] -= series[k - dg as usize];
            }
        }
        series = next;
    }

    let matches = quotient_dims
        .iter()
        .zip(&series)
        .all(|(&q, &p)| p >= 0 && q == p as usize);
    Ok(HilbertReport {
        quotient_dims,
        predicted: series,
        matches,
    })
}

/// Append one variable and pad every monomial of each generator up to
/// its total degree, making the generators homogeneous in `n+1`
/// variables.
pub fn homogenize(gens: &[QPoly]) -> Vec<QPoly> {
    gens.iter()
        .map(|g| {
            let n = g.num_vars();
            let d = g.total_degree().unwrap_or(0);
            let mut out = QPoly::zero(n + 1);
            for (m, c) in g.terms() {
                let deg: u32 = m.iter().sum();
                let mut e = m.clone();
                e.push(d - deg);
                out.add_term(&e, c.clone());
            }
            out
        })
        .collect()
}

/// Variable names of the double chart, in storage order.
pub const SL2_CHART_VARS: [&str; 6] = ["z1", "t1", "b1", "z2", "t2", "b2"];

/// The three equations cutting the rank-one fibre product in the double
/// chart `(z1, t1, b1, z2, t2, b2)`; see the module documentation for
/// the derivation.
pub fn sl2_steinberg_chart() -> Vec<QPoly> {
    let v = |i: usize| QPoly::var(6, i);
    let (z1, t1, b1, z2, t2, b2) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let g1 = b1.sub(&b2);
    let g2 = t1.sub(&t2).sub(&b1.mul(&z1)).add(&b2.mul(&z2));
    let g3 = z1.sub(&z2).mul(&t1.add(&t2));
    vec![g1, g2, g3]
}

/// The chart matrix `X(z, t, b)` as four rational entries, row-major.
pub fn sl2_chart_matrix(z: &BigRational, t: &BigRational, b: &BigRational) -> [BigRational; 4] {
    let two = BigRational::from_integer(2.into());
    [t - &(b * z), b.clone(), &two * t * z - b * z * z, b * z - t]
}

/// A point of the second sheet: the pair (chart point, its image under
/// the deck involution).  `None` when `b = 0`, where the other eigenline
/// leaves the chart.
pub fn sl2_graph_point(
    z: &BigRational,
    t: &BigRational,
    b: &BigRational,
) -> Option<[BigRational; 6]> {
    if b.is_zero() {
        return None;
    }
    let two = BigRational::from_integer(2.into());
    let z2 = z - &(&two * t / b);
    Some([z.clone(), t.clone(), b.clone(), z2, -t.clone(), b.clone()])
}
