//! The extended affine Hecke algebra with exact Iwahori–Matsumoto
//! basis arithmetic.
//!
//! Elements are finite `Z[v^{±1}]`-combinations of basis symbols `T_a`
//! indexed by extended affine Weyl group elements, subject to
//!
//! * `T_s T_a = T_{sa}` when the length goes up, and
//!   `T_s T_a = T_{sa} + (v − v^{-1}) T_a` when it goes down,
//! * `T_ω T_a = T_{ωa}` for length-zero `ω`,
//!
//! which together encode the quadratic relation
//! `(T_s + v^{-1})(T_s − v) = 0`.  The Bernstein elements `θ_x`, braid
//! word evaluation, conversions into the two standard bases
//! `{T_w θ_x}` / `{θ_x T_w}` (`w` finite), and the `v → 1`
//! specialization onto the group algebra live here too.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::braid::{lift_tw, BraidLetter, BraidWord};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rootdata::Weight;
use crate::weyl::{AffWeylElt, WeylGroup};

/// An element of the affine Hecke algebra in the Iwahori–Matsumoto
/// basis: a finite map from group elements to Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElt {
    terms: BTreeMap<AffWeylElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffWeylElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: &AffWeylElt) -> LaurentPoly {
        self.terms.get(a).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &AffWeylElt> {
        self.terms.keys()
    }

    fn insert(&mut self, a: AffWeylElt, c: LaurentPoly) {
        if !c.is_zero() {
            self.terms.insert(a, c);
        }
    }

    pub fn add_term(&mut self, a: &AffWeylElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(a.clone())
            .or_insert_with(LaurentPoly::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(a);
        }
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a, c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a, &c.neg());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        if c.is_zero() {
            return HeckeElt::zero();
        }
        HeckeElt {
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.mul(c)))
                .collect(),
        }
    }
}

/// Which standard basis a coordinate table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// coordinates of `Σ c_{w,x} · T_w θ_x`
    Left,
    /// coordinates of `Σ c_{w,x} · θ_x T_w`
    Right,
}

/// Coordinates in one of the standard bases, keyed by
/// `(finite Weyl element, weight)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdCoords {
    pub side: Side,
    pub coords: BTreeMap<(u32, Weight), LaurentPoly>,
}

/// Standard-basis coordinates of one basis element, keyed by the
/// finite part and the translation weight.
type StdCoordMap = BTreeMap<(u32, Weight), LaurentPoly>;

/// The Hecke algebra attached to one enumerated Weyl group.  All
/// operations are exact; caches are write-once memo tables.
pub struct Hecke<'g> {
    g: &'g WeylGroup,
    decomp_cache: Mutex<HashMap<AffWeylElt, (Vec<u8>, AffWeylElt)>>,
    theta_cache: Mutex<HashMap<Weight, HeckeElt>>,
    std_cache: Mutex<HashMap<(AffWeylElt, bool), StdCoordMap>>,
}

impl<'g> Hecke<'g> {
    pub fn new(g: &'g WeylGroup) -> Self {
        Self {
            g,
            decomp_cache: Mutex::new(HashMap::new()),
            theta_cache: Mutex::new(HashMap::new()),
            std_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &WeylGroup {
        self.g
    }

    pub fn one(&self) -> HeckeElt {
        self.basis(&self.g.aff_identity())
    }

    pub fn basis(&self, a: &AffWeylElt) -> HeckeElt {
        let mut h = HeckeElt::zero();
        h.insert(a.clone(), LaurentPoly::one());
        h
    }

    /// The basis element `T_s` for an affine simple reflection, indexed
    /// into the generator list (finite generators first).
    pub fn gen_t(&self, s: usize) -> HeckeElt {
        self.basis(&self.g.aff_gens()[s].elt.clone())
    }

    fn decompose(&self, a: &AffWeylElt) -> (Vec<u8>, AffWeylElt) {
        if let Some(d) = self.decomp_cache.lock().unwrap().get(a) {
            return d.clone();
        }
        let d = self.g.aff_decompose(a);
        self.decomp_cache
            .lock()
            .unwrap()
            .insert(a.clone(), d.clone());
        d
    }

    /// Left multiplication by a generator `T_s`, `s ∈ S_aff`.
    fn mul_gen_left(&self, gen: &AffWeylElt, x: &HeckeElt) -> HeckeElt {
        let vdiff = LaurentPoly::v_minus_vinv();
        let mut out = HeckeElt::zero();
        for (a, c) in &x.terms {
            let sa = self.g.aff_compose(gen, a);
            if self.g.aff_length(&sa) > self.g.aff_length(a) {
                out.add_term(&sa, c);
            } else {
                out.add_term(&sa, c);
                out.add_term(a, &c.mul(&vdiff));
            }
        }
        out
    }

    /// Left multiplication by `T_ω` for a length-zero element.
    fn mul_omega_left(&self, omega: &AffWeylElt, x: &HeckeElt) -> HeckeElt {
        debug_assert_eq!(self.g.aff_length(omega), 0);
        let mut out = HeckeElt::zero();
        for (a, c) in &x.terms {
            out.add_term(&self.g.aff_compose(omega, a), c);
        }
        out
    }

    /// The product, computed by peeling the left factor into affine
    /// simple reflections and a length-zero part.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (elt, c) in &a.terms {
            let (word, omega) = self.decompose(elt);
            let mut x = self.mul_omega_left(&omega, b);
            for &gi in word.iter().rev() {
                x = self.mul_gen_left(&self.g.aff_gens()[gi as usize].elt, &x);
            }
            out = out.add(&x.scale(c));
        }
        out
    }

    /// `T_s^{-1} = T_s − (v − v^{-1})` for `s ∈ S_aff`.
    pub fn inv_ts(&self, s: usize) -> HeckeElt {
        let mut h = self.gen_t(s);
        h.add_term(&self.g.aff_identity(), &LaurentPoly::v_minus_vinv().neg());
        h
    }

    /// The inverse of a basis element `T_a`.
    pub fn inv_basis(&self, a: &AffWeylElt) -> HeckeElt {
        let (word, omega) = self.decompose(a);
        // (s_1 ... s_n ω)^{-1} = ω^{-1} s_n^{-1} ... s_1^{-1}
        let mut out = self.basis(&self.g.aff_inverse(&omega));
        for &gi in word.iter().rev() {
            out = self.mul(&out, &self.inv_ts(gi as usize));
        }
        out
    }

    /// The Bernstein element `θ_x = T_{t_{x⁺}} (T_{t_{x⁻}})^{-1}` for the
    /// coordinatewise dominant splitting `x = x⁺ − x⁻`.
    pub fn theta(&self, x: &[i64]) -> HeckeElt {
        if let Some(h) = self.theta_cache.lock().unwrap().get(x) {
            return h.clone();
        }
        let plus: Weight = x.iter().map(|&c| c.max(0)).collect();
        let minus: Weight = x.iter().map(|&c| (-c).max(0)).collect();
        let head = self.basis(&self.g.aff_translation(&plus));
        let h = if minus.iter().all(|&c| c == 0) {
            head
        } else {
            let tail = self.inv_basis(&self.g.aff_translation(&minus));
            self.mul(&head, &tail)
        };
        self.theta_cache
            .lock()
            .unwrap()
            .insert(x.to_vec(), h.clone());
        h
    }

    /// Evaluate one braid letter.
    pub fn eval_letter(&self, letter: &BraidLetter) -> HeckeElt {
        match letter {
            BraidLetter::T { s, inv: false } => self.gen_t(*s),
            BraidLetter::T { s, inv: true } => self.inv_ts(*s),
            BraidLetter::Theta(x) => self.theta(x),
        }
    }

    /// Evaluate a braid word: the quotient map onto the Hecke algebra.
    pub fn eval_word(&self, word: &BraidWord) -> HeckeElt {
        let mut out = self.one();
        for letter in &word.letters {
            out = self.mul(&out, &self.eval_letter(letter));
        }
        out
    }

    /// Coefficientwise evaluation at `v = 1`: the ring morphism onto the
    /// integral group algebra of the extended affine Weyl group.
    pub fn specialize_v1(&self, h: &HeckeElt) -> BTreeMap<AffWeylElt, i64> {
        h.terms
            .iter()
            .filter_map(|(a, c)| {
                let n = c.eval_at_one();
                (n != 0).then(|| (a.clone(), n))
            })
            .collect()
    }

    // ---- standard bases -------------------------------------------------

    /// Coordinates of a basis element `T_a` in the chosen standard
    /// basis, by folding its Bernstein word through the commutation
    /// `θ_x T_s = T_s θ_{s(x)} + (v−v^{-1})·Σ(root-string θ's)`.
    fn std_coords_of_basis(
        &self,
        a: &AffWeylElt,
        side: Side,
    ) -> BTreeMap<(u32, Weight), LaurentPoly> {
        let key = (a.clone(), matches!(side, Side::Left));
        if let Some(c) = self.std_cache.lock().unwrap().get(&key) {
            return c.clone();
        }
        let word = lift_tw(self.g, a);
        let mut state: BTreeMap<(u32, Weight), LaurentPoly> = BTreeMap::new();
        state.insert(
            (self.g.identity(), vec![0; self.g.rank()]),
            LaurentPoly::one(),
        );
        match side {
            Side::Left => {
                for letter in &word.letters {
                    state = self.std_step_left(state, letter);
                }
            }
            Side::Right => {
                for letter in word.letters.iter().rev() {
                    state = self.std_step_right(state, letter);
                }
            }
        }
        self.std_cache.lock().unwrap().insert(key, state.clone());
        state
    }

    /// Right-multiply a `Σ c T_w θ_x` state by one letter.
    fn std_step_left(
        &self,
        state: BTreeMap<(u32, Weight), LaurentPoly>,
        letter: &BraidLetter,
    ) -> BTreeMap<(u32, Weight), LaurentPoly> {
        let vdiff = LaurentPoly::v_minus_vinv();
        let mut next: BTreeMap<(u32, Weight), LaurentPoly> = BTreeMap::new();
        let mut add = |key: (u32, Weight), c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            let entry = next.entry(key).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(&c);
            if entry.is_zero() {
                // removal happens lazily below
            }
        };
        match letter {
            BraidLetter::Theta(y) => {
                for ((w, x), c) in state {
                    let shifted = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    add((w, shifted), c);
                }
            }
            BraidLetter::T { s, inv } => {
                for ((w, x), c) in state {
                    // theta_x T_s = T_s theta_{s(x)} + (v-v^-1) (string sum)
                    let sx = self.g.datum().reflect_weight(*s, &x);
                    let ws = self.g.mul_gen_right(w, *s);
                    if self.g.length(ws) > self.g.length(w) {
                        add((ws, sx.clone()), c.clone());
                    } else {
                        add((ws, sx.clone()), c.clone());
                        add((w, sx.clone()), c.mul(&vdiff));
                    }
                    for (mu, sign) in self.g.datum().root_string_sum(*s, &x) {
                        let mut corr = c.mul(&vdiff);
                        if sign < 0 {
                            corr = corr.neg();
                        }
                        add((w, mu), corr);
                    }
                    if *inv {
                        // T_s^{-1} = T_s - (v - v^{-1})
                        add((w, x), c.mul(&vdiff).neg());
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        next
    }

    /// Left-multiply a `Σ c θ_x T_w` state by one letter.
    fn std_step_right(
        &self,
        state: BTreeMap<(u32, Weight), LaurentPoly>,
        letter: &BraidLetter,
    ) -> BTreeMap<(u32, Weight), LaurentPoly> {
        let vdiff = LaurentPoly::v_minus_vinv();
        let mut next: BTreeMap<(u32, Weight), LaurentPoly> = BTreeMap::new();
        let mut add = |key: (u32, Weight), c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            let entry = next.entry(key).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(&c);
        };
        match letter {
            BraidLetter::Theta(y) => {
                for ((w, x), c) in state {
                    let shifted = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    add((w, shifted), c);
                }
            }
            BraidLetter::T { s, inv } => {
                for ((w, x), c) in state {
                    // T_s theta_x = theta_{s(x)} T_s - (v-v^-1) (string sum at s(x))
                    let sx = self.g.datum().reflect_weight(*s, &x);
                    let sw = self.g.mul_gen_left(w, *s);
                    if self.g.length(sw) > self.g.length(w) {
                        add((sw, sx.clone()), c.clone());
                    } else {
                        add((sw, sx.clone()), c.clone());
                        add((w, sx.clone()), c.mul(&vdiff));
                    }
                    for (mu, sign) in self.g.datum().root_string_sum(*s, &sx) {
                        let mut corr = c.mul(&vdiff);
                        if sign > 0 {
                            corr = corr.neg();
                        }
                        add((w, mu), corr);
                    }
                    if *inv {
                        add((w, x), c.mul(&vdiff).neg());
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        next
    }

    /// Exact coordinates of `h` in the standard basis `{T_w θ_x}`
    /// (left) or `{θ_x T_w}` (right), `w` ranging over the finite Weyl
    /// group.  The translation parts of `h` must lie in the window
    /// `|coordinate| ≤ window`; the conversion is triangular and
    /// terminates, the window only bounds work.
    pub fn to_standard_basis(&self, h: &HeckeElt, side: Side, window: i64) -> Result<StdCoords> {
        for a in h.support() {
            if a.trans.iter().any(|&c| c.abs() > window) {
                return Err(Error::WindowExceeded(format!(
                    "translation part {:?} outside the |x| <= {} conversion window",
                    a.trans, window
                )));
            }
        }
        let mut coords: BTreeMap<(u32, Weight), LaurentPoly> = BTreeMap::new();
        for (a, c) in &h.terms {
            for (key, p) in self.std_coords_of_basis(a, side) {
                let entry = coords.entry(key).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&p.mul(c));
            }
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(StdCoords { side, coords })
    }

    /// Rebuild the Hecke element from standard-basis coordinates.
    pub fn from_standard_basis(&self, coords: &StdCoords) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for ((w, x), c) in &coords.coords {
            let tw = self.basis(&self.g.aff_finite(*w));
            let th = self.theta(x);
            let product = match coords.side {
                Side::Left => self.mul(&tw, &th),
                Side::Right => self.mul(&th, &tw),
            };
            out = out.add(&product.scale(c));
        }
        out
    }

    // ---- serialization --------------------------------------------------

    /// JSON form with deterministic term order: by length, then by the
    /// canonical word of the finite part, then by translation.
    pub fn to_json(&self, h: &HeckeElt) -> serde_json::Value {
        let mut terms: Vec<&AffWeylElt> = h.terms.keys().collect();
        terms.sort_by_key(|a| {
            (
                self.g.aff_length(a),
                self.g.canonical_word(a.fin).to_vec(),
                a.trans.clone(),
            )
        });
        serde_json::Value::Array(
            terms
                .into_iter()
                .map(|a| {
                    let c = &h.terms[a];
                    let coeffs: serde_json::Map<String, serde_json::Value> = c
                        .terms()
                        .map(|(e, n)| (e.to_string(), serde_json::json!(n)))
                        .collect();
                    serde_json::json!({ "w": self.g.aff_to_json(a), "c": coeffs })
                })
                .collect::<Vec<_>>(),
        )
        .pipe_into_terms()
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<HeckeElt> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("expected {\"terms\": [...]}".into()))?;
        let mut out = HeckeElt::zero();
        for term in terms {
            let a = self.g.aff_from_json(
                term.get("w")
                    .ok_or_else(|| Error::Parse("term missing \"w\"".into()))?,
            )?;
            let c = term
                .get("c")
                .and_then(|c| c.as_object())
                .ok_or_else(|| Error::Parse("term missing \"c\"".into()))?;
            let mut p = LaurentPoly::zero();
            for (exp, coeff) in c {
                let e: i64 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
                let n = coeff
                    .as_i64()
                    .ok_or_else(|| Error::Parse("bad coefficient".into()))?;
                p.add_term(e, n);
            }
            out.add_term(&a, &p);
        }
        Ok(out)
    }
}

/// Small helper so `to_json` returns `{"terms": [...]}`.
trait PipeIntoTerms {
    fn pipe_into_terms(self) -> serde_json::Value;
}

impl PipeIntoTerms for serde_json::Value {
    fn pipe_into_terms(self) -> serde_json::Value {
        serde_json::json!({ "terms": self })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid;
    use crate::rootdata::RootDatum;

    fn group(spec: &str) -> WeylGroup {
        WeylGroup::enumerate(&RootDatum::build(spec).unwrap()).unwrap()
    }

    fn vp(exp: i64) -> LaurentPoly {
        LaurentPoly::monomial(exp, 1)
    }

    #[test]
    fn identity_and_simple_products() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let one = h.one();
        let ts = h.gen_t(0);
        assert_eq!(h.mul(&one, &ts), ts);
        assert_eq!(h.mul(&ts, &one), ts);
        // length-additive case: T_{s1} T_{s2} = T_{s1 s2}
        let t12 = h.mul(&h.gen_t(0), &h.gen_t(1));
        let s1s2 = g.aff_finite(g.word_to_elt(&[0, 1]).unwrap());
        assert_eq!(t12, h.basis(&s1s2));
    }

    #[test]
    fn quadratic_relation_all_affine_generators() {
        for spec in ["A1", "A2", "A3", "B2", "G2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            for s in 0..g.aff_gens().len() {
                let ts = h.gen_t(s);
                // T_s^2 = 1 + (v - v^{-1}) T_s
                let square = h.mul(&ts, &ts);
                let mut expect = h.one();
                expect = expect.add(&ts.scale(&LaurentPoly::v_minus_vinv()));
                assert_eq!(square, expect, "{spec} generator {s}");
                // (T_s + v^{-1})(T_s - v) = 0
                let lhs = ts.add(&h.one().scale(&vp(-1)));
                let rhs = ts.sub(&h.one().scale(&vp(1)));
                assert!(h.mul(&lhs, &rhs).is_zero(), "{spec} generator {s}");
            }
        }
    }

    #[test]
    fn generator_inverses() {
        for spec in ["A2", "B2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            for s in 0..g.aff_gens().len() {
                let ts = h.gen_t(s);
                let inv = h.inv_ts(s);
                assert_eq!(h.mul(&inv, &ts), h.one());
                assert_eq!(h.mul(&ts, &inv), h.one());
                // v = 1 sends T_s^{-1} to the group element s
                let spec1 = h.specialize_v1(&inv);
                assert_eq!(
                    spec1,
                    [(g.aff_gens()[s].elt.clone(), 1)].into_iter().collect()
                );
                // swapped-eigenvalue quadratic relation for the inverse
                let lhs = inv.sub(&h.one().scale(&vp(-1)));
                let rhs = inv.add(&h.one().scale(&vp(1)));
                assert!(h.mul(&lhs, &rhs).is_zero());
            }
        }
    }

    #[test]
    fn basis_inverses() {
        let g = group("B2");
        let h = Hecke::new(&g);
        let samples = [
            g.aff_finite(g.longest_elt()),
            g.aff_translation(&[1, 1]),
            g.aff_translation(&[-1, 2]),
            AffWeylElt {
                fin: g.simple(1),
                trans: vec![1, -1],
            },
        ];
        for a in &samples {
            let inv = h.inv_basis(a);
            assert_eq!(h.mul(&inv, &h.basis(a)), h.one());
            assert_eq!(h.mul(&h.basis(a), &inv), h.one());
        }
    }

    #[test]
    fn associativity_exhaustive_a1() {
        let g = group("A1");
        let h = Hecke::new(&g);
        let mut elts = Vec::new();
        for w in g.all() {
            for k in -3..=3 {
                let a = AffWeylElt {
                    fin: w,
                    trans: vec![k],
                };
                if g.aff_length(&a) <= 4 {
                    elts.push(h.basis(&a));
                }
            }
        }
        assert!(elts.len() >= 10);
        for a in &elts {
            for b in &elts {
                let ab = h.mul(a, b);
                for c in &elts {
                    assert_eq!(h.mul(&ab, c), h.mul(a, &h.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn associativity_sampled_a2() {
        use rand::prelude::*;
        let g = group("A2");
        let h = Hecke::new(&g);
        let mut elts = Vec::new();
        for w in g.all() {
            for t1 in -2..=2 {
                for t2 in -2..=2 {
                    let a = AffWeylElt {
                        fin: w,
                        trans: vec![t1, t2],
                    };
                    if g.aff_length(&a) <= 6 {
                        elts.push(a);
                    }
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let a = h.basis(elts.choose(&mut rng).unwrap());
            let b = h.basis(elts.choose(&mut rng).unwrap());
            let c = h.basis(elts.choose(&mut rng).unwrap());
            assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
        }
    }

    #[test]
    fn matsumoto_all_reduced_words() {
        for spec in ["A3", "B2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            for w in g.all() {
                let words = g.reduced_words(w);
                let reference = h.basis(&g.aff_finite(w));
                for word in words {
                    let mut prod = h.one();
                    for s in word {
                        prod = h.mul(&prod, &h.gen_t(s as usize));
                    }
                    assert_eq!(prod, reference, "{spec} element {w}");
                }
            }
        }
    }

    #[test]
    fn theta_translates_and_inverts() {
        let g = group("A1");
        let h = Hecke::new(&g);
        // dominant x: theta is the single basis element T_{t_x}
        assert_eq!(h.theta(&[1]), h.basis(&g.aff_translation(&[1])));
        assert_eq!(h.theta(&[0]), h.one());
        // theta_x theta_{-x} = 1
        for x in [vec![1], vec![2], vec![3]] {
            let neg: Weight = x.iter().map(|&c| -c).collect();
            assert_eq!(h.mul(&h.theta(&x), &h.theta(&neg)), h.one());
        }
    }

    #[test]
    fn theta_additive_on_boxes() {
        // G2 stops at radius 1 and A3 at radius 1: a single product of
        // radius-2 G2 thetas already takes over a minute
        for (spec, radius) in [("A1", 3), ("A2", 2), ("B2", 2), ("G2", 1), ("A3", 1)] {
            let g = group(spec);
            let h = Hecke::new(&g);
            let weights = braid::weight_box(g.rank(), radius);
            for x in &weights {
                for y in &weights {
                    let sum: Weight = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    assert_eq!(
                        h.mul(&h.theta(x), &h.theta(y)),
                        h.theta(&sum),
                        "{spec} {x:?}+{y:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn theta_additive_spot_checks_g2_radius_two() {
        // radius-2 pairs with a dominant factor stay cheap: the dominant
        // theta is a single basis element
        let g = group("G2");
        let h = Hecke::new(&g);
        let dominant = [vec![2, 0], vec![0, 2], vec![2, 1], vec![1, 2], vec![2, 2]];
        let other = [
            vec![-1, 0],
            vec![0, -1],
            vec![1, -1],
            vec![-1, 1],
            vec![-2, 1],
        ];
        for x in &dominant {
            for y in &other {
                let sum: Weight = x.iter().zip(y).map(|(a, b)| a + b).collect();
                assert_eq!(h.mul(&h.theta(x), &h.theta(y)), h.theta(&sum));
                assert_eq!(h.mul(&h.theta(y), &h.theta(x)), h.theta(&sum));
            }
        }
    }

    #[test]
    fn translation_basis_multiplicative_on_dominants() {
        // T_{t_mu} T_{t_nu} = T_{t_{mu+nu}} for dominant mu, nu: lengths add
        for spec in ["A2", "B2", "G2", "A3"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            let dominants: Vec<Weight> = braid::weight_box(g.rank(), 2)
                .into_iter()
                .filter(|x| g.datum().is_dominant(x))
                .collect();
            for mu in &dominants {
                for nu in &dominants {
                    let sum: Weight = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
                    assert_eq!(
                        g.aff_length(&g.aff_translation(&sum)),
                        g.aff_length(&g.aff_translation(mu)) + g.aff_length(&g.aff_translation(nu)),
                        "{spec} lengths must add on dominants"
                    );
                    assert_eq!(
                        h.mul(
                            &h.basis(&g.aff_translation(mu)),
                            &h.basis(&g.aff_translation(nu))
                        ),
                        h.basis(&g.aff_translation(&sum)),
                        "{spec} {mu:?}+{nu:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn theta_well_defined_across_decompositions() {
        // x = y - z for dominant y,z: all decompositions in a small
        // window give the same element as the canonical splitting
        let g = group("A2");
        let h = Hecke::new(&g);
        for x in braid::weight_box(2, 1) {
            for extra in braid::weight_box(2, 1) {
                if !g.datum().is_dominant(&extra) {
                    continue;
                }
                let y: Weight = x.iter().zip(&extra).map(|(&c, &e)| c.max(0) + e).collect();
                let z: Weight = x
                    .iter()
                    .zip(&extra)
                    .map(|(&c, &e)| (-c).max(0) + e)
                    .collect();
                let alt = h.mul(
                    &h.basis(&g.aff_translation(&y)),
                    &h.inv_basis(&g.aff_translation(&z)),
                );
                assert_eq!(alt, h.theta(&x), "{x:?} via {y:?}-{z:?}");
            }
        }
    }

    #[test]
    fn braid_relation_instances_evaluate_equally() {
        // relation (i) instances are T-only words: evaluate everywhere
        for spec in ["A2", "A3", "B2", "G2", "A1xA1"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            for inst in braid::relation_instances(&g, 1).unwrap() {
                if inst.tag == braid::RelationTag::I {
                    assert_eq!(
                        h.eval_word(&inst.lhs),
                        h.eval_word(&inst.rhs),
                        "{spec} {}",
                        inst.label
                    );
                }
            }
        }
    }

    #[test]
    fn commutation_and_straightening_instances() {
        // relations (iii) and (iv) on radius-2 boxes
        for spec in ["A1", "A2", "B2", "G2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            for inst in braid::relation_instances(&g, 2).unwrap() {
                match inst.tag {
                    braid::RelationTag::III | braid::RelationTag::IV => {
                        assert_eq!(
                            h.eval_word(&inst.lhs),
                            h.eval_word(&inst.rhs),
                            "{spec} {}",
                            inst.label
                        );
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn eval_word_respects_braid_lift() {
        // the section is multiplicative on length-additive products and
        // independent of the reduced word used (A2 longest element)
        let g = group("A2");
        let h = Hecke::new(&g);
        let w0 = g.longest_elt();
        let reference = h.basis(&g.aff_finite(w0));
        assert_eq!(
            h.eval_word(&braid::lift_tw(&g, &g.aff_finite(w0))),
            reference
        );
        for word in g.reduced_words(w0) {
            let mut braid_word = BraidWord::identity();
            for s in word {
                braid_word = braid_word.concat(&BraidWord::t(s as usize));
            }
            assert_eq!(h.eval_word(&braid_word), reference);
        }
    }

    #[test]
    fn lift_tw_evaluates_to_basis_elements() {
        for spec in ["A1", "A2", "B2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            let mut samples = vec![g.aff_identity()];
            for w in g.all() {
                samples.push(g.aff_finite(w));
                samples.push(AffWeylElt {
                    fin: w,
                    trans: vec![1; g.rank()],
                });
                samples.push(AffWeylElt {
                    fin: w,
                    trans: (0..g.rank() as i64).map(|i| -1 - i).collect(),
                });
            }
            for a in samples {
                assert_eq!(
                    h.eval_word(&braid::lift_tw(&g, &a)),
                    h.basis(&a),
                    "{spec} {a:?}"
                );
            }
        }
    }

    #[test]
    fn specialization_examples() {
        let g = group("A1");
        let h = Hecke::new(&g);
        let ts = h.gen_t(0);
        let s_elt = g.aff_gens()[0].elt.clone();
        assert_eq!(
            h.specialize_v1(&ts),
            [(s_elt.clone(), 1)].into_iter().collect()
        );
        // 1 + (v - v^{-1}) T_s specializes to the identity element
        let mixed = h.one().add(&ts.scale(&LaurentPoly::v_minus_vinv()));
        assert_eq!(
            h.specialize_v1(&mixed),
            [(g.aff_identity(), 1)].into_iter().collect()
        );
        // specialization is multiplicative: T_s^2 -> s^2 = e
        let sq = h.mul(&ts, &ts);
        assert_eq!(
            h.specialize_v1(&sq),
            [(g.aff_identity(), 1)].into_iter().collect()
        );
    }

    #[test]
    fn standard_basis_units() {
        let g = group("A2");
        let h = Hecke::new(&g);
        // h = 1 has coordinate 1 at (e, 0) on both sides
        for side in [Side::Left, Side::Right] {
            let coords = h.to_standard_basis(&h.one(), side, 3).unwrap();
            assert_eq!(
                coords.coords,
                [((g.identity(), vec![0, 0]), LaurentPoly::one())]
                    .into_iter()
                    .collect()
            );
        }
        // theta_x has left coordinates {(e, x): 1}; T_w has {(w, 0): 1}
        for x in braid::weight_box(2, 1) {
            let coords = h.to_standard_basis(&h.theta(&x), Side::Left, 3).unwrap();
            assert_eq!(
                coords.coords,
                [((g.identity(), x.clone()), LaurentPoly::one())]
                    .into_iter()
                    .collect(),
                "{x:?}"
            );
            let coords = h.to_standard_basis(&h.theta(&x), Side::Right, 3).unwrap();
            assert_eq!(
                coords.coords,
                [((g.identity(), x), LaurentPoly::one())]
                    .into_iter()
                    .collect()
            );
        }
        for w in g.all() {
            let tw = h.basis(&g.aff_finite(w));
            for side in [Side::Left, Side::Right] {
                let coords = h.to_standard_basis(&tw, side, 3).unwrap();
                assert_eq!(
                    coords.coords,
                    [((w, vec![0, 0]), LaurentPoly::one())]
                        .into_iter()
                        .collect()
                );
            }
        }
    }

    #[test]
    fn standard_basis_frozen_example() {
        // T_s theta_omega in the right basis: theta_{-omega} T_s + (v-v^{-1}) theta_omega
        let g = group("A1");
        let h = Hecke::new(&g);
        let ts_theta = h.mul(&h.gen_t(0), &h.theta(&[1]));
        let coords = h.to_standard_basis(&ts_theta, Side::Right, 3).unwrap();
        let s = g.simple(0);
        let expect: BTreeMap<(u32, Weight), LaurentPoly> = [
            ((s, vec![-1]), LaurentPoly::one()),
            ((g.identity(), vec![1]), LaurentPoly::v_minus_vinv()),
        ]
        .into_iter()
        .collect();
        assert_eq!(coords.coords, expect);
    }

    #[test]
    fn standard_basis_round_trips() {
        for spec in ["A1", "A2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            let mut samples = vec![h.one()];
            for w in g.all() {
                samples.push(h.basis(&AffWeylElt {
                    fin: w,
                    trans: vec![1; g.rank()],
                }));
                samples.push(h.basis(&AffWeylElt {
                    fin: w,
                    trans: vec![-1; g.rank()],
                }));
            }
            // a mixed element
            let mixed = samples[1].add(&samples[2].scale(&vp(2)));
            samples.push(mixed);
            for x in &samples {
                for side in [Side::Left, Side::Right] {
                    let coords = h.to_standard_basis(x, side, 4).unwrap();
                    let back = h.from_standard_basis(&coords);
                    assert_eq!(&back, x, "{spec} {side:?}");
                }
            }
        }
    }

    #[test]
    fn standard_basis_coordinate_round_trip() {
        // coords -> element -> coords is the identity on unit coordinates
        let g = group("A2");
        let h = Hecke::new(&g);
        for w in [g.identity(), g.simple(0), g.longest_elt()] {
            for x in braid::weight_box(2, 1) {
                for side in [Side::Left, Side::Right] {
                    let coords = StdCoords {
                        side,
                        coords: [((w, x.clone()), LaurentPoly::one())].into_iter().collect(),
                    };
                    let elt = h.from_standard_basis(&coords);
                    let back = h.to_standard_basis(&elt, side, 4).unwrap();
                    assert_eq!(back.coords, coords.coords, "{side:?} ({w}, {x:?})");
                }
            }
        }
    }

    #[test]
    fn window_rejection() {
        let g = group("A1");
        let h = Hecke::new(&g);
        let far = h.basis(&g.aff_translation(&[9]));
        match h.to_standard_basis(&far, Side::Left, 3) {
            Err(Error::WindowExceeded(_)) => {}
            other => panic!("expected window error, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let elt = h
            .theta(&[1, -1])
            .add(&h.gen_t(0).scale(&vp(-2)))
            .add(&h.one().scale(&LaurentPoly::from_terms(&[(0, 3), (2, -1)])));
        let json = h.to_json(&elt);
        assert_eq!(h.from_json(&json).unwrap(), elt);
        let json2 = h.to_json(&elt);
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            serde_json::to_string(&json2).unwrap()
        );
        assert!(h
            .from_json(&serde_json::json!({"terms": [{"w": 3}]}))
            .is_err());
    }
}
