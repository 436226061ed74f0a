//! The kernel-class dictionary: classes of twisted kernel sheaves as
//! Hecke algebra elements, convolution as Hecke multiplication in the
//! exchanged-factor order, and the group-algebra shadow at `v = 1`.
//!
//! The normalization is fixed once: the untwisted class attached to `w`
//! has value `(−v)^{ℓ(w)}·T_{w^{-1}}`, equivalently
//! `T_w = (−v^{-1})^{ℓ(w)}` times the class of `w^{-1}`.  Twists act by
//! `θ`-multiplication, the left slot as a left factor and the right slot
//! as a right factor.  Convolution composes in the exchanged order —
//! `convolve(a, b)` is the Hecke product `b.value · a.value` — and every
//! serialized output carries the convention strings so the choices can
//! be reconciled against other normalizations.

use std::collections::BTreeMap;

use num::{BigRational, FromPrimitive, Zero};

use crate::hecke::{Hecke, HeckeElt};
use crate::laurent::LaurentPoly;
use crate::linalg::{rational_rank, SparseRow};
use crate::rootdata::Weight;
use crate::weyl::AffWeylElt;

/// The class of one twisted kernel, remembering its label and twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    /// finite Weyl group label
    pub w: u32,
    pub twist_left: Weight,
    pub twist_right: Weight,
    /// the class in Hecke (K-theory) coordinates
    pub value: HeckeElt,
}

/// Which twist slot a family varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistSide {
    Left,
    Right,
}

/// The fixed convention strings, embedded in all serialized output.
pub fn conventions() -> serde_json::Value {
    serde_json::json!({
        "class_normalization": "(-v)^length times the standard basis element of the inverse",
        "composition_order": "exchanged: convolve(a,b) = hecke product b.value * a.value",
        "twist_sides": "left twist acts as a left theta factor, right twist as a right theta factor",
        "shift_dictionary": "internal degree shift by 2 corresponds to multiplication by v",
    })
}

/// Kernel-class arithmetic over one Hecke algebra.
pub struct KernelCalc<'g, 'h> {
    h: &'h Hecke<'g>,
}

/// Per-reduced-word outcome of the convolution check.
#[derive(Debug, Clone)]
pub struct ConvolutionReport {
    pub w: String,
    /// `(reduced word, iterated convolution equals the class of w^{-1})`
    pub words: Vec<(String, bool)>,
    pub all_pass: bool,
}

impl<'g, 'h> KernelCalc<'g, 'h> {
    pub fn new(h: &'h Hecke<'g>) -> Self {
        Self { h }
    }

    pub fn hecke(&self) -> &Hecke<'g> {
        self.h
    }

    /// `(−v)^n` as a coefficient.
    fn neg_v_pow(n: i64) -> LaurentPoly {
        LaurentPoly::monomial(n, if n % 2 == 0 { 1 } else { -1 })
    }

    /// The class with label `w` and the given twists:
    /// `θ_x · (−v)^{ℓ(w)} T_{w^{-1}} · θ_y`.
    pub fn kernel_class(&self, w: u32, x: &[i64], y: &[i64]) -> KernelClass {
        let g = self.h.group();
        let len = g.length(w) as i64;
        let core = self
            .h
            .basis(&g.aff_finite(g.inv(w)))
            .scale(&Self::neg_v_pow(len));
        let with_right = if y.iter().all(|&c| c == 0) {
            core
        } else {
            self.h.mul(&core, &self.h.theta(y))
        };
        let value = if x.iter().all(|&c| c == 0) {
            with_right
        } else {
            self.h.mul(&self.h.theta(x), &with_right)
        };
        KernelClass {
            w,
            twist_left: x.to_vec(),
            twist_right: y.to_vec(),
            value,
        }
    }

    /// The class of the diagonal: the convolution unit.
    pub fn diagonal(&self) -> KernelClass {
        let rank = self.h.group().rank();
        self.kernel_class(self.h.group().identity(), &vec![0; rank], &vec![0; rank])
    }

    /// Convolution in the exchanged-factor order.
    pub fn convolve(&self, a: &KernelClass, b: &KernelClass) -> HeckeElt {
        self.h.mul(&b.value, &a.value)
    }

    /// Convolve a class onto an accumulated Hecke element (for chains).
    pub fn convolve_elt(&self, a: &KernelClass, acc: &HeckeElt) -> HeckeElt {
        self.h.mul(acc, &a.value)
    }

    /// For every reduced word `w = s_1 ⋯ s_n`, iterated convolution of
    /// the simple classes must give the class of `w^{-1}`.
    pub fn verify_reduced_word_convolution(&self, w: u32) -> ConvolutionReport {
        let g = self.h.group();
        let expected = self
            .kernel_class(g.inv(w), &vec![0; g.rank()], &vec![0; g.rank()])
            .value;
        let mut words = Vec::new();
        let mut all_pass = true;
        for word in g.reduced_words(w) {
            let mut acc = self.diagonal().value;
            for &s in &word {
                let class =
                    self.kernel_class(g.simple(s as usize), &vec![0; g.rank()], &vec![0; g.rank()]);
                acc = self.convolve_elt(&class, &acc);
            }
            let pass = acc == expected;
            all_pass &= pass;
            let word_str: String = word.iter().map(|s| format!("s{}", s + 1)).collect();
            words.push((
                if word_str.is_empty() {
                    "e".into()
                } else {
                    word_str
                },
                pass,
            ));
        }
        ConvolutionReport {
            w: g.word_string(w),
            words,
            all_pass,
        }
    }

    /// The group-algebra class of `w` on the homology side of the
    /// dictionary: the indicator of `w` itself.
    pub fn bm_class(&self, w: u32) -> BTreeMap<u32, i64> {
        [(w, 1)].into_iter().collect()
    }

    /// Composition of group-algebra classes, in the same exchanged order
    /// as `convolve`.
    pub fn bm_compose(&self, a: &BTreeMap<u32, i64>, b: &BTreeMap<u32, i64>) -> BTreeMap<u32, i64> {
        let g = self.h.group();
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        for (&wb, &cb) in b {
            for (&wa, &ca) in a {
                let prod = g.mul(wb, wa);
                let entry = out.entry(prod).or_insert(0);
                *entry += ca * cb;
                if *entry == 0 {
                    out.remove(&prod);
                }
            }
        }
        out
    }

    /// The `v = 1` shadow of an untwisted class, renormalized by
    /// `(−v^{-1})^{ℓ(w)}`: the indicator of `w^{-1}` in the group
    /// algebra.  This is the K-theory side's own specialization; it is
    /// recorded separately from the homology dictionary.
    pub fn specialized_class(&self, w: u32) -> BTreeMap<AffWeylElt, i64> {
        let g = self.h.group();
        let len = g.length(w) as i64;
        let class = self.kernel_class(w, &vec![0; g.rank()], &vec![0; g.rank()]);
        // (−v^{-1})^n = (−v)^{-n}
        let renorm = class.value.scale(&Self::neg_v_pow(-len));
        self.h.specialize_v1(&renorm)
    }

    /// One twisted family `{class(w^{-1}, x, 0)}` or `{class(w^{-1}, 0, x)}`
    /// over all of `W` and the box `|x_i| ≤ radius`.
    pub fn twisted_family(&self, side: TwistSide, radius: i64) -> Vec<KernelClass> {
        let g = self.h.group();
        let zero = vec![0i64; g.rank()];
        let mut out = Vec::new();
        for w in g.all() {
            for x in crate::braid::weight_box(g.rank(), radius) {
                let class = match side {
                    TwistSide::Left => self.kernel_class(g.inv(w), &x, &zero),
                    TwistSide::Right => self.kernel_class(g.inv(w), &zero, &x),
                };
                out.push(class);
            }
        }
        out
    }

    pub fn class_to_json(&self, class: &KernelClass) -> serde_json::Value {
        let g = self.h.group();
        serde_json::json!({
            "w": g.word_string(class.w),
            "twist": [class.twist_left, class.twist_right],
            "value": self.h.to_json(&class.value),
            "conventions": conventions(),
        })
    }
}

/// Evaluate a Laurent polynomial at a rational value of `v`.
fn eval_laurent_at(p: &LaurentPoly, v: &BigRational) -> BigRational {
    let mut out = BigRational::zero();
    for (e, c) in p.terms() {
        let mut power = BigRational::from_i64(1).unwrap();
        for _ in 0..e.unsigned_abs() {
            power *= v;
        }
        if e < 0 {
            power = power.recip();
        }
        out += BigRational::from_i64(c).unwrap() * power;
    }
    out
}

/// Rank of a family of classes after evaluating `v` at a rational
/// number.  Specialization can only lower rank, so a full-rank answer
/// here certifies linear independence over the fraction field of
/// `Z[v^{±1}]`, hence over `Z[v^{±1}]` itself.
pub fn family_rank_at(classes: &[KernelClass], v: &BigRational) -> usize {
    let rows = classes.iter().map(|class| {
        let mut row: SparseRow<AffWeylElt> = BTreeMap::new();
        for (a, c) in class.value.terms() {
            let val = eval_laurent_at(c, v);
            if !val.is_zero() {
                row.insert(a.clone(), val);
            }
        }
        row
    });
    rational_rank(rows)
}

/// Rank of a family of classes directly over the Laurent fraction
/// field, for cross-checking `family_rank_at` on small windows.
pub fn family_rank_laurent(classes: &[KernelClass]) -> usize {
    // collect the union of basis keys as columns
    let mut columns: BTreeMap<AffWeylElt, usize> = BTreeMap::new();
    for class in classes {
        for (a, _) in class.value.terms() {
            let next = columns.len();
            columns.entry(a.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<LaurentPoly>> = classes
        .iter()
        .map(|class| {
            let mut row = vec![LaurentPoly::zero(); columns.len()];
            for (a, c) in class.value.terms() {
                row[columns[a]] = c.clone();
            }
            row
        })
        .collect();
    crate::linalg::laurent_rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use crate::weyl::WeylGroup;

    fn group(spec: &str) -> WeylGroup {
        WeylGroup::enumerate(&RootDatum::build(spec).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_is_the_unit() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let diag = kc.diagonal();
        assert_eq!(diag.value, h.one());
        let a = kc.kernel_class(g.parse_word("s1s2").unwrap(), &[1, 0], &[0, -1]);
        assert_eq!(kc.convolve(&diag, &a), a.value);
        assert_eq!(kc.convolve(&a, &diag), a.value);
    }

    #[test]
    fn simple_class_values() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        // class(s) = -v T_s
        let s1 = g.simple(0);
        let class = kc.kernel_class(s1, &[0, 0], &[0, 0]);
        let expect = h
            .basis(&g.aff_finite(s1))
            .scale(&LaurentPoly::monomial(1, -1));
        assert_eq!(class.value, expect);
        // class(s1s2) = v^2 T_{s2s1}
        let w = g.parse_word("s1s2").unwrap();
        let class = kc.kernel_class(w, &[0, 0], &[0, 0]);
        let expect = h
            .basis(&g.aff_finite(g.parse_word("s2s1").unwrap()))
            .scale(&LaurentPoly::monomial(2, 1));
        assert_eq!(class.value, expect);
    }

    #[test]
    fn squared_simple_class() {
        // convolve(class(s), class(s)) = v^2 (1 + (v - v^{-1}) T_s)
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let class = kc.kernel_class(g.simple(0), &[0, 0], &[0, 0]);
        let square = kc.convolve(&class, &class);
        let ts = h.basis(&g.aff_finite(g.simple(0)));
        let expect = h
            .one()
            .add(&ts.scale(&LaurentPoly::v_minus_vinv()))
            .scale(&LaurentPoly::monomial(2, 1));
        assert_eq!(square, expect);
    }

    #[test]
    fn braid_property_of_convolution() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let c1 = kc.kernel_class(g.simple(0), &[0, 0], &[0, 0]);
        let c2 = kc.kernel_class(g.simple(1), &[0, 0], &[0, 0]);
        let lhs = kc.convolve_elt(&c1, &kc.convolve(&c2, &c1));
        let rhs = kc.convolve_elt(&c2, &kc.convolve(&c1, &c2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_word_convolution_a3_and_b2() {
        let g = group("A3");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        for w in g.all() {
            let report = kc.verify_reduced_word_convolution(w);
            assert!(report.all_pass, "A3 {}: {:?}", g.word_string(w), report);
            assert_eq!(report.words.len(), g.reduced_words(w).len());
        }
        let g = group("B2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let report = kc.verify_reduced_word_convolution(g.longest_elt());
        assert!(report.all_pass);
        assert_eq!(report.words.len(), 2);
    }

    #[test]
    fn specialization_shadow() {
        // (−v^{-1})^{ℓ(w)} times the class value specializes to the
        // indicator of w^{-1}
        for spec in ["A2", "B2"] {
            let g = group(spec);
            let h = Hecke::new(&g);
            let kc = KernelCalc::new(&h);
            for w in g.all() {
                let shadow = kc.specialized_class(w);
                assert_eq!(
                    shadow,
                    [(g.aff_finite(g.inv(w)), 1)].into_iter().collect(),
                    "{spec} {}",
                    g.word_string(w)
                );
            }
        }
    }

    #[test]
    fn bm_dictionary() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        assert_eq!(
            kc.bm_class(g.identity()),
            BTreeMap::from([(g.identity(), 1)])
        );
        // a simple class squares to the identity class
        let s = g.simple(0);
        assert_eq!(
            kc.bm_compose(&kc.bm_class(s), &kc.bm_class(s)),
            kc.bm_class(g.identity())
        );
        // both reduced words of s1s2s1 compose to the same class
        let fold = |word: &[usize]| {
            let mut acc = kc.bm_class(g.identity());
            for &s in word {
                acc = kc.bm_compose(&kc.bm_class(g.simple(s)), &acc);
            }
            acc
        };
        assert_eq!(fold(&[0, 1, 0]), fold(&[1, 0, 1]));
        // exchanged order: composing class(s1) then class(s2) gives s2·s1
        let composed = kc.bm_compose(&kc.bm_class(g.simple(1)), &kc.bm_class(g.simple(0)));
        let expect = g.mul(g.simple(0), g.simple(1));
        assert_eq!(composed, BTreeMap::from([(expect, 1)]));
    }

    #[test]
    fn twist_additivity() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let w = g.parse_word("s1s2").unwrap();
        for x in crate::braid::weight_box(2, 1) {
            for xp in [[1, 0], [0, -1], [1, 1]] {
                let total: Weight = x.iter().zip(&xp).map(|(a, b)| a + b).collect();
                let left = kc.kernel_class(w, &total, &[0, -1]).value;
                let step = kc.kernel_class(w, &x, &[0, -1]).value;
                assert_eq!(left, h.mul(&h.theta(&xp), &step));
            }
        }
        // right-slot additivity
        for y in crate::braid::weight_box(2, 1) {
            for yp in [[1, 0], [0, -1]] {
                let total: Weight = y.iter().zip(&yp).map(|(a, b)| a + b).collect();
                let full = kc.kernel_class(w, &[1, 0], &total).value;
                let step = kc.kernel_class(w, &[1, 0], &y).value;
                assert_eq!(full, h.mul(&step, &h.theta(&yp)));
            }
        }
    }

    #[test]
    fn family_independence_small_window() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let v2 = BigRational::from_i64(2).unwrap();
        for side in [TwistSide::Left, TwistSide::Right] {
            let family = kc.twisted_family(side, 1);
            assert_eq!(family.len(), 6 * 9);
            let rank = family_rank_at(&family, &v2);
            assert_eq!(rank, family.len(), "{side:?} family must be independent");
            // cross-check the direct fraction-field rank on a sub-window
            let sub: Vec<KernelClass> = family
                .iter()
                .filter(|c| {
                    let x = match side {
                        TwistSide::Left => &c.twist_left,
                        TwistSide::Right => &c.twist_right,
                    };
                    x.iter().all(|&v| v.abs() <= 1) && x[1] == 0
                })
                .cloned()
                .collect();
            assert_eq!(family_rank_laurent(&sub), sub.len());
        }
    }

    #[test]
    fn rank_detects_dependence() {
        // sanity: duplicating a class drops the rank below the row count
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let a = kc.kernel_class(g.simple(0), &[0, 0], &[0, 0]);
        let doubled = vec![a.clone(), a.clone()];
        let v2 = BigRational::from_i64(2).unwrap();
        assert_eq!(family_rank_at(&doubled, &v2), 1);
        assert_eq!(family_rank_laurent(&doubled), 1);
    }

    #[test]
    fn class_json_embeds_conventions() {
        let g = group("A2");
        let h = Hecke::new(&g);
        let kc = KernelCalc::new(&h);
        let class = kc.kernel_class(g.simple(0), &[1, 0], &[0, 0]);
        let json = kc.class_to_json(&class);
        assert_eq!(json["w"], "s1");
        assert_eq!(json["twist"][0], serde_json::json!([1, 0]));
        assert!(json["conventions"]["composition_order"]
            .as_str()
            .unwrap()
            .contains("exchanged"));
        assert!(json["value"]["terms"].is_array());
    }

    #[test]
    fn laurent_eval_helper() {
        let v2 = BigRational::from_i64(2).unwrap();
        let p = LaurentPoly::from_terms(&[(-1, 3), (2, 1)]); // 3v^{-1} + v^2
        assert_eq!(
            eval_laurent_at(&p, &v2),
            BigRational::new(11.into(), 2.into())
        );
    }
}
