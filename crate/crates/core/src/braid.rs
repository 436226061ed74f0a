//! Words in the extended affine braid group under the Bernstein
//! presentation.
//!
//! The alphabet has two kinds of letters: `T_s^{±1}` for finite simple
//! reflections `s`, and `θ_x` for arbitrary weights `x`.  Words are free
//! — no normal forms are computed here; equality is meaningful only
//! after evaluation in a representation (the Hecke algebra or the
//! polynomial representation).  The defining relations are
//!
//! 1. finite braid relations between `T_s` and `T_t`,
//! 2. `θ_x θ_y = θ_{x+y}`,
//! 3. `T_s θ_x = θ_x T_s` when `s(x) = x`,
//! 4. `θ_x = T_s θ_{x−α} T_s` when `⟨x, α∨⟩ = 1`,
//!
//! and [`relation_instances`] emits finite families of them for
//! downstream verification.

use crate::error::{Error, Result};
use crate::rootdata::Weight;
use crate::weyl::{AffWeylElt, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    /// `T_s` (inv = false) or `T_s^{-1}` (inv = true), `s` finite.
    T { s: usize, inv: bool },
    /// `θ_x` for any weight `x`.
    Theta(Weight),
}

impl BraidLetter {
    pub fn inverse(&self) -> BraidLetter {
        match self {
            BraidLetter::T { s, inv } => BraidLetter::T { s: *s, inv: !inv },
            BraidLetter::Theta(x) => BraidLetter::Theta(x.iter().map(|&c| -c).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<BraidLetter>) -> Self {
        Self { letters }
    }

    pub fn t(s: usize) -> Self {
        Self {
            letters: vec![BraidLetter::T { s, inv: false }],
        }
    }

    pub fn theta(x: &[i64]) -> Self {
        Self {
            letters: vec![BraidLetter::Theta(x.to_vec())],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        BraidWord { letters }
    }

    /// The formal inverse: reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.letters
                .iter()
                .map(|l| match l {
                    BraidLetter::T { s, inv } => serde_json::json!({
                        "T": s,
                        "e": if *inv { -1 } else { 1 },
                    }),
                    BraidLetter::Theta(x) => serde_json::json!({ "theta": x }),
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BraidWord> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("braid word must be a JSON array".into()))?;
        let mut letters = Vec::with_capacity(arr.len());
        for item in arr {
            let obj = item
                .as_object()
                .ok_or_else(|| Error::Parse("braid letter must be an object".into()))?;
            if let Some(theta) = obj.get("theta") {
                let x = theta
                    .as_array()
                    .ok_or_else(|| Error::Parse("theta coordinates must be an array".into()))?
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .ok_or_else(|| Error::Parse("bad theta coordinate".into()))
                    })
                    .collect::<Result<Weight>>()?;
                letters.push(BraidLetter::Theta(x));
            } else {
                let s =
                    obj.get("T").and_then(|x| x.as_u64()).ok_or_else(|| {
                        Error::Parse("braid letter needs \"T\" or \"theta\"".into())
                    })? as usize;
                let e = obj.get("e").and_then(|x| x.as_i64()).unwrap_or(1);
                if e != 1 && e != -1 {
                    return Err(Error::Parse("T exponent must be 1 or -1".into()));
                }
                letters.push(BraidLetter::T { s, inv: e == -1 });
            }
        }
        Ok(BraidWord { letters })
    }
}

/// The canonical section `a ↦ T_a` of the projection onto the extended
/// affine Weyl group, written in the Bernstein alphabet.
///
/// `a` is decomposed as `s_{i_1} ⋯ s_{i_n} · ω` with the `s` affine
/// simple reflections and `ℓ(ω) = 0`.  Each finite `s` becomes the
/// letter `T_s`.  The affine reflection `s_0 = t_β s_β` (β the root
/// with highest coroot, which is dominant) becomes `θ_β T_{s_β}^{-1}`,
/// using that `t_β = s_0 s_β` is length-additive.  The length-zero part
/// `ω = t_ν u` becomes `θ_ν (T_{u^{-1}})^{-1}`, using that `ν = u(μ)`
/// is dominant (its pairings with positive coroots lie in {0,1}) and
/// `t_ν = ω u^{-1}` is length-additive.
pub fn lift_tw(g: &WeylGroup, a: &AffWeylElt) -> BraidWord {
    let (word, omega) = g.aff_decompose(a);
    let mut letters = Vec::new();
    for &gi in &word {
        let gen = &g.aff_gens()[gi as usize];
        match gen.finite {
            Some(s) => letters.push(BraidLetter::T { s, inv: false }),
            None => {
                let comp = &g.datum().components()[gen.component];
                let beta = g.datum().highest_short_root(comp);
                letters.push(BraidLetter::Theta(beta.weight.clone()));
                // T_{s_beta}^{-1}: inverse word of a reduced word for s_beta
                let s_beta = gen.elt.fin;
                for &s in g.canonical_word(s_beta).iter().rev() {
                    letters.push(BraidLetter::T {
                        s: s as usize,
                        inv: true,
                    });
                }
            }
        }
    }
    if omega != g.aff_identity() {
        let u = omega.fin;
        let nu = g.apply(u, &omega.trans);
        assert!(
            g.datum().is_dominant(&nu),
            "translation part of a length-zero element conjugates to a dominant weight"
        );
        letters.push(BraidLetter::Theta(nu));
        // (T_{u^{-1}})^{-1}
        for &s in g.canonical_word(g.inv(u)).iter().rev() {
            letters.push(BraidLetter::T {
                s: s as usize,
                inv: true,
            });
        }
    }
    BraidWord { letters }
}

/// The Bernstein lift of a translation: `θ_x` as a braid word.
///
/// Splits `x = x⁺ − x⁻` into coordinatewise dominant parts and returns
/// `lift(t_{x⁺}) · lift(t_{x⁻})^{-1}`; any other dominant splitting
/// evaluates equally in the Hecke algebra (verified there).
pub fn bernstein_theta(g: &WeylGroup, x: &[i64]) -> BraidWord {
    let plus: Weight = x.iter().map(|&c| c.max(0)).collect();
    let minus: Weight = x.iter().map(|&c| (-c).max(0)).collect();
    let head = lift_tw(g, &g.aff_translation(&plus));
    let tail = lift_tw(g, &g.aff_translation(&minus));
    head.concat(&tail.inverse())
}

/// The projection onto the extended affine Weyl group:
/// `T_s^{±1} ↦ s`, `θ_x ↦ t_x`.
pub fn project_to_waff(g: &WeylGroup, w: &BraidWord) -> Result<AffWeylElt> {
    let mut acc = g.aff_identity();
    for letter in &w.letters {
        let step = match letter {
            BraidLetter::T { s, .. } => {
                if *s >= g.rank() {
                    return Err(Error::InvalidArgument(format!(
                        "generator index {s} out of range for rank {}",
                        g.rank()
                    )));
                }
                g.aff_finite(g.simple(*s))
            }
            BraidLetter::Theta(x) => {
                if x.len() != g.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: g.rank(),
                        got: x.len(),
                    });
                }
                g.aff_translation(x)
            }
        };
        acc = g.aff_compose(&acc, &step);
    }
    Ok(acc)
}

/// Which Bernstein relation an emitted instance comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationTag {
    /// finite braid relation
    I,
    /// `θ_x θ_y = θ_{x+y}`
    II,
    /// `T_s θ_x = θ_x T_s` when `s(x) = x`
    III,
    /// `θ_x = T_s θ_{x−α} T_s` when `⟨x, α∨⟩ = 1`
    IV,
}

impl RelationTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RelationTag::I => "i",
            RelationTag::II => "ii",
            RelationTag::III => "iii",
            RelationTag::IV => "iv",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub lhs: BraidWord,
    pub rhs: BraidWord,
    pub tag: RelationTag,
    /// Human-readable instance label for reports.
    pub label: String,
}

/// All instances of the defining relations with weights drawn from the
/// box `{x : |⟨x, α_i∨⟩| ≤ radius}`: every finite braid relation, every
/// additivity pair, and the commutation/straightening relations for
/// each weight in the box satisfying their premises.  Each emitted
/// pair is checked to project to equal affine Weyl group elements.
pub fn relation_instances(g: &WeylGroup, radius: i64) -> Result<Vec<RelationInstance>> {
    if radius < 1 {
        return Err(Error::InvalidArgument(
            "relation box radius must be at least 1".into(),
        ));
    }
    let rank = g.rank();
    let mut out = Vec::new();

    // (i) finite braid relations, one per unordered pair
    for s in 0..rank {
        for t in s + 1..rank {
            let m = braid_order(g, s, t);
            let alternating = |a: usize, b: usize| -> BraidWord {
                BraidWord {
                    letters: (0..m)
                        .map(|k| BraidLetter::T {
                            s: if k % 2 == 0 { a } else { b },
                            inv: false,
                        })
                        .collect(),
                }
            };
            out.push(RelationInstance {
                lhs: alternating(s, t),
                rhs: alternating(t, s),
                tag: RelationTag::I,
                label: format!("braid(s{},s{}) m={}", s + 1, t + 1, m),
            });
        }
    }

    let box_weights = weight_box(rank, radius);

    // (ii) theta additivity over ordered pairs
    for x in &box_weights {
        for y in &box_weights {
            let sum: Weight = x.iter().zip(y).map(|(a, b)| a + b).collect();
            out.push(RelationInstance {
                lhs: BraidWord::from_letters(vec![
                    BraidLetter::Theta(x.clone()),
                    BraidLetter::Theta(y.clone()),
                ]),
                rhs: BraidWord::from_letters(vec![BraidLetter::Theta(sum)]),
                tag: RelationTag::II,
                label: format!("theta{x:?}+theta{y:?}"),
            });
        }
    }

    // (iii) commutation with s-fixed weights; (iv) straightening when
    // <x, alpha_s^vee> = 1; non-matching weights are skipped
    for s in 0..rank {
        let alpha = g.datum().simple_root(s);
        for x in &box_weights {
            let pairing = x[s];
            if pairing == 0 {
                out.push(RelationInstance {
                    lhs: BraidWord::from_letters(vec![
                        BraidLetter::T { s, inv: false },
                        BraidLetter::Theta(x.clone()),
                    ]),
                    rhs: BraidWord::from_letters(vec![
                        BraidLetter::Theta(x.clone()),
                        BraidLetter::T { s, inv: false },
                    ]),
                    tag: RelationTag::III,
                    label: format!("T{} commutes theta{x:?}", s + 1),
                });
            } else if pairing == 1 {
                let shifted: Weight = x.iter().zip(&alpha).map(|(c, a)| c - a).collect();
                out.push(RelationInstance {
                    lhs: BraidWord::from_letters(vec![BraidLetter::Theta(x.clone())]),
                    rhs: BraidWord::from_letters(vec![
                        BraidLetter::T { s, inv: false },
                        BraidLetter::Theta(shifted),
                        BraidLetter::T { s, inv: false },
                    ]),
                    tag: RelationTag::IV,
                    label: format!("theta{x:?} = T{0} theta T{0}", s + 1),
                });
            }
        }
    }

    for inst in &out {
        let lp = project_to_waff(g, &inst.lhs)?;
        let rp = project_to_waff(g, &inst.rhs)?;
        assert_eq!(
            lp, rp,
            "relation sides must project equally: {}",
            inst.label
        );
    }
    Ok(out)
}

/// Order of `s_a s_b` in the finite Weyl group.
pub fn braid_order(g: &WeylGroup, a: usize, b: usize) -> usize {
    let st = g.mul(g.simple(a), g.simple(b));
    let mut cur = st;
    let mut m = 1;
    while cur != g.identity() {
        cur = g.mul(cur, st);
        m += 1;
    }
    m
}

/// All weights with every fundamental coordinate in `[-radius, radius]`.
pub fn weight_box(rank: usize, radius: i64) -> Vec<Weight> {
    let mut out = vec![Vec::with_capacity(rank)];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix: Weight| {
                (-radius..=radius).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn group(spec: &str) -> WeylGroup {
        WeylGroup::enumerate(&RootDatum::build(spec).unwrap()).unwrap()
    }

    #[test]
    fn lift_of_identity_and_simples() {
        let g = group("A2");
        assert!(lift_tw(&g, &g.aff_identity()).is_empty());
        for s in 0..2 {
            let lifted = lift_tw(&g, &g.aff_finite(g.simple(s)));
            assert_eq!(lifted, BraidWord::t(s));
        }
    }

    #[test]
    fn lift_projects_back() {
        for spec in ["A1", "A2", "B2", "G2"] {
            let g = group(spec);
            let mut samples = vec![g.aff_identity()];
            for w in g.all() {
                samples.push(g.aff_finite(w));
                samples.push(AffWeylElt {
                    fin: w,
                    trans: vec![1; g.rank()],
                });
                samples.push(AffWeylElt {
                    fin: w,
                    trans: (0..g.rank() as i64).map(|i| i - 2).collect(),
                });
            }
            for a in samples {
                let word = lift_tw(&g, &a);
                assert_eq!(project_to_waff(&g, &word).unwrap(), a, "{spec}");
            }
        }
    }

    #[test]
    fn theta_word_projects_to_translation() {
        for spec in ["A2", "B2"] {
            let g = group(spec);
            for x in weight_box(g.rank(), 2) {
                let word = bernstein_theta(&g, &x);
                assert_eq!(
                    project_to_waff(&g, &word).unwrap(),
                    g.aff_translation(&x),
                    "{spec} {x:?}"
                );
            }
        }
        let g = group("A1");
        assert!(bernstein_theta(&g, &[0]).is_empty());
        // dominant weights lift by the section itself
        assert_eq!(
            bernstein_theta(&g, &[1]),
            lift_tw(&g, &g.aff_translation(&[1]))
        );
        // antidominant weights by the inverse word
        assert_eq!(
            bernstein_theta(&g, &[-1]),
            lift_tw(&g, &g.aff_translation(&[1])).inverse()
        );
    }

    #[test]
    fn projection_examples() {
        let g = group("A2");
        assert_eq!(
            project_to_waff(&g, &BraidWord::identity()).unwrap(),
            g.aff_identity()
        );
        let ss = BraidWord::t(0).concat(&BraidWord::t(0));
        assert_eq!(project_to_waff(&g, &ss).unwrap(), g.aff_identity());
        let bad = BraidWord::t(7);
        assert!(project_to_waff(&g, &bad).is_err());
        let bad_dim = BraidWord::theta(&[1, 2, 3]);
        assert!(project_to_waff(&g, &bad_dim).is_err());
    }

    #[test]
    fn inverse_word_is_formal_inverse() {
        let g = group("B2");
        let word = lift_tw(
            &g,
            &AffWeylElt {
                fin: g.longest_elt(),
                trans: vec![2, -1],
            },
        );
        let inv = word.inverse();
        let product = word.concat(&inv);
        assert_eq!(project_to_waff(&g, &product).unwrap(), g.aff_identity());
        assert_eq!(inv.inverse(), word);
    }

    #[test]
    fn relation_instance_counts() {
        // A1 has a single generator, so no finite braid relations
        let g = group("A1");
        let rels = relation_instances(&g, 1).unwrap();
        assert!(rels.iter().all(|r| r.tag != RelationTag::I));
        // the A1 radius-1 straightening instance: theta_omega = T theta_{omega-alpha} T
        let iv: Vec<_> = rels.iter().filter(|r| r.tag == RelationTag::IV).collect();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].lhs.letters, vec![BraidLetter::Theta(vec![1])]);
        assert_eq!(
            iv[0].rhs.letters,
            vec![
                BraidLetter::T { s: 0, inv: false },
                BraidLetter::Theta(vec![-1]),
                BraidLetter::T { s: 0, inv: false },
            ]
        );

        // A2: one braid relation with 3 letters per side
        let g = group("A2");
        let rels = relation_instances(&g, 1).unwrap();
        let braid: Vec<_> = rels.iter().filter(|r| r.tag == RelationTag::I).collect();
        assert_eq!(braid.len(), 1);
        assert_eq!(braid[0].lhs.len(), 3);
        assert_eq!(braid[0].rhs.len(), 3);
        // 9 weights in the radius-1 box: 81 additivity pairs
        assert_eq!(rels.iter().filter(|r| r.tag == RelationTag::II).count(), 81);

        // G2 braid relation has 6 letters per side
        let g = group("G2");
        let rels = relation_instances(&g, 1).unwrap();
        let braid: Vec<_> = rels.iter().filter(|r| r.tag == RelationTag::I).collect();
        assert_eq!(braid.len(), 1);
        assert_eq!(braid[0].lhs.len(), 6);

        assert!(relation_instances(&g, 0).is_err());
    }

    #[test]
    fn relation_premises_filtered() {
        let g = group("B2");
        for inst in relation_instances(&g, 2).unwrap() {
            match inst.tag {
                RelationTag::III => {
                    // lhs = T_s theta_x with s(x) = x
                    let (s, x) = match &inst.lhs.letters[..] {
                        [BraidLetter::T { s, .. }, BraidLetter::Theta(x)] => (*s, x.clone()),
                        other => panic!("unexpected shape {other:?}"),
                    };
                    assert_eq!(g.apply(g.simple(s), &x), x);
                }
                RelationTag::IV => {
                    let x = match &inst.lhs.letters[..] {
                        [BraidLetter::Theta(x)] => x.clone(),
                        other => panic!("unexpected shape {other:?}"),
                    };
                    let s = match &inst.rhs.letters[..] {
                        [BraidLetter::T { s, .. }, _, _] => *s,
                        other => panic!("unexpected shape {other:?}"),
                    };
                    assert_eq!(x[s], 1, "premise <x, alpha_s^vee> = 1");
                }
                _ => {}
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = group("A2");
        let word = lift_tw(
            &g,
            &AffWeylElt {
                fin: g.simple(0),
                trans: vec![-2, 1],
            },
        );
        let json = word.to_json();
        assert_eq!(BraidWord::from_json(&json).unwrap(), word);
        assert!(BraidWord::from_json(&serde_json::json!([{"e": 1}])).is_err());
        assert!(BraidWord::from_json(&serde_json::json!([{"T": 0, "e": 2}])).is_err());
    }
}
