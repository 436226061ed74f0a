//! Laurent polynomials in one variable with integer coefficients.
//!
//! Used both for `Z[v, v^{-1}]` (Hecke coefficients, character functions)
//! and for ordinary polynomials in `q` (Kazhdan–Lusztig and R-polynomials,
//! which simply never use negative exponents).

use std::collections::BTreeMap;
use std::fmt;

/// An element of `Z[v, v^{-1}]`.  Zero coefficients are never stored, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * v^e`.
    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// `v - v^{-1}`, the coefficient in the Iwahori–Matsumoto
    /// multiplication rule.
    pub fn v_minus_vinv() -> Self {
        let mut p = Self::monomial(1, 1);
        p.add_term(-1, -1);
        p
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the polynomial is `±v^k`, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().all(|&c| c == 1 || c == -1)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry = entry.checked_add(c).expect("laurent coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(
                    e1 + e2,
                    c1.checked_mul(c2).expect("laurent coefficient overflow"),
                );
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (e, k) in self.terms() {
            out.add_term(e, k.checked_mul(c).expect("laurent coefficient overflow"));
        }
        out
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Exact division by a unit `±v^k`; panics if `unit` is not a unit.
    pub fn div_unit(&self, unit: &Self) -> Self {
        assert!(unit.is_unit(), "divisor must be ±v^k");
        let (e, c) = unit.terms().next().unwrap();
        self.shift(-e).scale(c) // c is ±1
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Substitute `v -> v^k` (useful for `q = v^2` bookkeeping).
    pub fn stretch(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e * k, c)).collect(),
        }
    }

    /// Substitute `v -> v^{-1}` (the bar involution on coefficients).
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// The part with exponents `<= cutoff`.
    pub fn truncate_above(&self, cutoff: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e <= cutoff)
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// Render with a custom variable name, lowest exponent first:
    /// `1+q`, `v^-1+v`, `2q^2-q`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push(if c < 0 { '-' } else { '+' });
            }
            let show_coeff = mag != 1 || e == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if e != 0 {
                out.push_str(var);
                if e != 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.display_with("v"))
    }
}
