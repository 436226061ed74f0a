//! Finite, affine and extended affine Weyl groups.
//!
//! The finite group is enumerated once into a [`WeylGroup`] and then
//! shared read-only; elements elsewhere in the crate are indices into
//! this enumeration.  Extended affine elements are pairs `w · t_lambda`
//! ([`AffWeylElt`]) with the Iwahori–Matsumoto length.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, FromPrimitive, One, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

/// An element of the finite Weyl group: its matrix in fundamental-weight
/// coordinates (row-major) plus the cached Coxeter length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElt {
    pub mat: Vec<i64>,
    pub length: u32,
}

impl WeylElt {
    pub fn apply(&self, rank: usize, x: &[i64]) -> Weight {
        (0..rank)
            .map(|i| (0..rank).map(|j| self.mat[i * rank + j] * x[j]).sum())
            .collect()
    }
}

/// An element `fin · t_trans` of the extended affine Weyl group
/// `W_aff = W ⋉ X`.  `fin` indexes into the owning [`WeylGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWeylElt {
    pub fin: u32,
    pub trans: Weight,
}

/// An affine simple reflection: either a finite `s_i` or, per simple
/// component, `s_0 = t_theta · s_theta` for the highest root `theta`.
#[derive(Debug, Clone)]
pub struct AffGen {
    pub elt: AffWeylElt,
    /// For finite generators, the simple-root index; for affine ones,
    /// the component whose highest root they reflect in.
    pub finite: Option<usize>,
    pub component: usize,
}

pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: Vec<WeylElt>,
    index: HashMap<Vec<i64>, u32>,
    right_mul: Vec<Vec<u32>>,
    left_mul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    canonical_word: Vec<Vec<u8>>,
    longest: u32,
    aff_gens: Vec<AffGen>,
    omega: OnceLock<Vec<AffWeylElt>>,
    bruhat_cache: Mutex<HashMap<(u32, u32), bool>>,
}

impl WeylGroup {
    /// Enumerate the finite Weyl group of `datum` by closure under right
    /// multiplication, identity first, respecting the configured bound.
    pub fn enumerate(datum: &RootDatum) -> Result<Self> {
        Self::enumerate_bounded(datum, crate::max_group_size())
    }

    pub fn enumerate_bounded(datum: &RootDatum, bound: usize) -> Result<Self> {
        let datum = Arc::new(datum.clone());
        let rank = datum.rank();
        let gens: Vec<WeylElt> = (0..rank)
            .map(|i| {
                let alpha = datum.simple_root(i);
                let mut mat = vec![0i64; rank * rank];
                for k in 0..rank {
                    for j in 0..rank {
                        mat[k * rank + j] = i64::from(k == j) - i64::from(j == i) * alpha[k];
                    }
                }
                WeylElt { mat, length: 1 }
            })
            .collect();

        let mut elements = vec![WeylElt {
            mat: identity(rank),
            length: 0,
        }];
        let mut index = HashMap::new();
        index.insert(elements[0].mat.clone(), 0u32);
        let mut right_mul: Vec<Vec<u32>> = vec![vec![u32::MAX; rank]];
        let mut canonical_word: Vec<Vec<u8>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0u32]);
        while let Some(w) = queue.pop_front() {
            for (s, gen) in gens.iter().enumerate() {
                if right_mul[w as usize][s] != u32::MAX {
                    continue;
                }
                let mat = mat_mul(rank, &elements[w as usize].mat, &gen.mat);
                let idx = match index.get(&mat) {
                    Some(&idx) => idx,
                    None => {
                        let idx = elements.len() as u32;
                        if elements.len() >= bound {
                            return Err(Error::SizeBound { bound });
                        }
                        // right multiplication by s changes length by +-1
                        // according to the sign of w(alpha_s)
                        let ws_longer = {
                            let image = elements[w as usize].apply(rank, &datum.simple_root(s));
                            datum.root_sign(&image).expect("W permutes the roots").1
                        };
                        let length = if ws_longer {
                            elements[w as usize].length + 1
                        } else {
                            elements[w as usize].length - 1
                        };
                        let mut word = canonical_word[w as usize].clone();
                        word.push(s as u8);
                        elements.push(WeylElt {
                            mat: mat.clone(),
                            length,
                        });
                        index.insert(mat, idx);
                        right_mul.push(vec![u32::MAX; rank]);
                        canonical_word.push(word);
                        queue.push_back(idx);
                        idx
                    }
                };
                right_mul[w as usize][s] = idx;
                right_mul[idx as usize][s] = w;
            }
        }

        let n = elements.len();
        let mut left_mul = vec![vec![0u32; rank]; n];
        for w in 0..n {
            for s in 0..rank {
                let mat = mat_mul(rank, &gens[s].mat, &elements[w].mat);
                left_mul[w][s] = index[&mat];
            }
        }
        let mut inverse = vec![0u32; n];
        for w in 0..n {
            let mut cur = 0u32;
            for &s in canonical_word[w].iter().rev() {
                cur = right_mul[cur as usize][s as usize];
            }
            inverse[w] = cur;
            debug_assert_eq!(
                mat_mul(rank, &elements[w].mat, &elements[cur as usize].mat),
                identity(rank)
            );
        }
        let longest = (0..n as u32)
            .max_by_key(|&w| elements[w as usize].length)
            .expect("nonempty group");

        let mut group = Self {
            datum,
            elements,
            index,
            right_mul,
            left_mul,
            inverse,
            canonical_word,
            longest,
            aff_gens: Vec::new(),
            omega: OnceLock::new(),
            bruhat_cache: Mutex::new(HashMap::new()),
        };
        group.aff_gens = group.build_aff_gens();
        Ok(group)
    }

    fn build_aff_gens(&self) -> Vec<AffGen> {
        let rank = self.rank();
        let mut gens: Vec<AffGen> = (0..rank)
            .map(|i| AffGen {
                elt: AffWeylElt {
                    fin: self.simple(i),
                    trans: vec![0; rank],
                },
                finite: Some(i),
                component: self
                    .datum
                    .components()
                    .iter()
                    .position(|c| c.indices.contains(&i))
                    .expect("simple root lies in a component"),
            })
            .collect();
        for (ci, comp) in self.datum.components().iter().enumerate() {
            // s_0 = t_beta s_beta = (s_beta, -beta) for beta the root with
            // highest coroot: the unique choice with length 1 when the
            // translations range over ZR
            let beta = self.datum.highest_short_root(comp);
            let s_beta = self.reflection_in(&beta.weight, &beta.coroot);
            let trans = beta.weight.iter().map(|&c| -c).collect();
            gens.push(AffGen {
                elt: AffWeylElt { fin: s_beta, trans },
                finite: None,
                component: ci,
            });
        }
        gens
    }

    /// Index of the reflection `x -> x - <x, coroot> root`.
    fn reflection_in(&self, root: &[i64], coroot: &[i64]) -> u32 {
        let rank = self.rank();
        let mut mat = vec![0i64; rank * rank];
        for k in 0..rank {
            for j in 0..rank {
                mat[k * rank + j] = i64::from(k == j) - coroot[j] * root[k];
            }
        }
        self.index[&mat]
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elt(&self, w: u32) -> &WeylElt {
        &self.elements[w as usize]
    }

    pub fn length(&self, w: u32) -> u32 {
        self.elements[w as usize].length
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn simple(&self, i: usize) -> u32 {
        self.right_mul[0][i]
    }

    pub fn longest_elt(&self) -> u32 {
        self.longest
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        // follow b's canonical word through the right-multiplication table
        let mut cur = a;
        for &s in &self.canonical_word[b as usize] {
            cur = self.right_mul[cur as usize][s as usize];
        }
        cur
    }

    pub fn mul_gen_right(&self, w: u32, s: usize) -> u32 {
        self.right_mul[w as usize][s]
    }

    pub fn mul_gen_left(&self, w: u32, s: usize) -> u32 {
        self.left_mul[w as usize][s]
    }

    pub fn inv(&self, w: u32) -> u32 {
        self.inverse[w as usize]
    }

    pub fn lookup(&self, mat: &[i64]) -> Option<u32> {
        self.index.get(mat).copied()
    }

    /// Apply `w` to a weight.
    pub fn apply(&self, w: u32, x: &[i64]) -> Weight {
        self.elements[w as usize].apply(self.rank(), x)
    }

    /// The dot action `w • x = w(x + rho) - rho`.
    pub fn dot_apply(&self, w: u32, x: &[i64]) -> Weight {
        let rho = self.datum.rho();
        let shifted: Weight = x.iter().zip(rho).map(|(a, b)| a + b).collect();
        self.apply(w, &shifted)
            .iter()
            .zip(rho)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// One fixed reduced word per element (the BFS discovery word).
    pub fn canonical_word(&self, w: u32) -> &[u8] {
        &self.canonical_word[w as usize]
    }

    pub fn all(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.elements.len() as u32
    }

    /// Product of a word in the simple generators.
    pub fn word_to_elt(&self, word: &[u8]) -> Result<u32> {
        let mut cur = 0u32;
        for &s in word {
            if (s as usize) >= self.rank() {
                return Err(Error::InvalidArgument(format!(
                    "generator index {s} out of range for rank {}",
                    self.rank()
                )));
            }
            cur = self.right_mul[cur as usize][s as usize];
        }
        Ok(cur)
    }

    /// Render an element as a word string, `"e"` for the identity and
    /// `"s2s1"` style otherwise (1-based generator numbers).
    pub fn word_string(&self, w: u32) -> String {
        let word = self.canonical_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|s| format!("s{}", s + 1)).collect()
        }
    }

    /// Parse a word string into generator letters: `"e"`, or a sequence
    /// of `s<number>` tokens with optional whitespace or `*` in between
    /// (1-based numbers).  The word is not required to be reduced.
    pub fn parse_letters(&self, input: &str) -> Result<Vec<u8>> {
        let trimmed = input.trim();
        if trimmed.is_empty() || trimmed == "e" || trimmed == "1" {
            return Ok(Vec::new());
        }
        let mut word = Vec::new();
        let mut chars = trimmed.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() || c == '*' {
                continue;
            }
            if c != 's' {
                return Err(Error::Parse(format!(
                    "expected 's<number>' at {c:?} in {input:?}"
                )));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let n: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("missing generator number in {input:?}")))?;
            if n == 0 || n > self.rank() {
                return Err(Error::Parse(format!(
                    "generator s{n} out of range 1..={} in {input:?}",
                    self.rank()
                )));
            }
            word.push((n - 1) as u8);
        }
        Ok(word)
    }

    /// Parse a word string and multiply it out.
    pub fn parse_word(&self, input: &str) -> Result<u32> {
        self.word_to_elt(&self.parse_letters(input)?)
    }

    /// All reduced words for `w`, by descent recursion.
    pub fn reduced_words(&self, w: u32) -> Vec<Vec<u8>> {
        let mut cache: HashMap<u32, Vec<Vec<u8>>> = HashMap::new();
        self.reduced_words_rec(w, &mut cache);
        cache.remove(&w).expect("computed")
    }

    fn reduced_words_rec(&self, w: u32, cache: &mut HashMap<u32, Vec<Vec<u8>>>) {
        if cache.contains_key(&w) {
            return;
        }
        if w == 0 {
            cache.insert(0, vec![Vec::new()]);
            return;
        }
        let mut words = Vec::new();
        for s in 0..self.rank() {
            let ws = self.right_mul[w as usize][s];
            if self.length(ws) < self.length(w) {
                self.reduced_words_rec(ws, cache);
                for prefix in cache[&ws].iter() {
                    let mut word = prefix.clone();
                    word.push(s as u8);
                    words.push(word);
                }
            }
        }
        words.sort();
        cache.insert(w, words);
    }

    /// Bruhat order, via the descent-lifting recursion implied by the
    /// subword property.
    pub fn bruhat_leq(&self, y: u32, w: u32) -> bool {
        if y == w {
            return true;
        }
        if self.length(y) >= self.length(w) {
            return false;
        }
        if let Some(&v) = self.bruhat_cache.lock().unwrap().get(&(y, w)) {
            return v;
        }
        let s = (0..self.rank())
            .find(|&s| self.length(self.left_mul[w as usize][s]) < self.length(w))
            .expect("w != e has a left descent");
        let sw = self.left_mul[w as usize][s];
        let sy = self.left_mul[y as usize][s];
        let ans = if self.length(sy) < self.length(y) {
            self.bruhat_leq(sy, sw)
        } else {
            self.bruhat_leq(y, sw)
        };
        self.bruhat_cache.lock().unwrap().insert((y, w), ans);
        ans
    }

    // ---- extended affine Weyl group -------------------------------------

    pub fn aff_identity(&self) -> AffWeylElt {
        AffWeylElt {
            fin: 0,
            trans: vec![0; self.rank()],
        }
    }

    pub fn aff_translation(&self, lambda: &[i64]) -> AffWeylElt {
        AffWeylElt {
            fin: 0,
            trans: lambda.to_vec(),
        }
    }

    pub fn aff_finite(&self, w: u32) -> AffWeylElt {
        AffWeylElt {
            fin: w,
            trans: vec![0; self.rank()],
        }
    }

    /// `(w1, l1) · (w2, l2) = (w1 w2, w2^{-1}(l1) + l2)`.
    pub fn aff_compose(&self, a: &AffWeylElt, b: &AffWeylElt) -> AffWeylElt {
        let fin = self.mul(a.fin, b.fin);
        let moved = self.apply(self.inv(b.fin), &a.trans);
        let trans = moved.iter().zip(&b.trans).map(|(x, y)| x + y).collect();
        AffWeylElt { fin, trans }
    }

    pub fn aff_inverse(&self, a: &AffWeylElt) -> AffWeylElt {
        let fin = self.inv(a.fin);
        let trans = self.apply(a.fin, &a.trans).iter().map(|&c| -c).collect();
        AffWeylElt { fin, trans }
    }

    /// Iwahori–Matsumoto length of `w · t_lambda`.
    pub fn aff_length(&self, a: &AffWeylElt) -> i64 {
        let mut total = 0i64;
        for root in self.datum.positive_roots() {
            let p: i64 = a.trans.iter().zip(&root.coroot).map(|(x, c)| x * c).sum();
            let image = self.apply(a.fin, &root.weight);
            let positive = self
                .datum
                .root_sign(&image)
                .expect("W permutes the roots")
                .1;
            total += if positive { p.abs() } else { (p + 1).abs() };
        }
        total
    }

    /// The affine simple reflections: finite `s_i` first, then one
    /// `s_0 = t_theta s_theta` per component.
    pub fn aff_gens(&self) -> &[AffGen] {
        &self.aff_gens
    }

    /// Greedy left-descent decomposition `a = s_{i_1} ... s_{i_n} · omega`
    /// with all `s` in `S_aff` and `omega` length-zero.  Returns the word
    /// (as indices into [`Self::aff_gens`]) and `omega`.
    pub fn aff_decompose(&self, a: &AffWeylElt) -> (Vec<u8>, AffWeylElt) {
        let mut word = Vec::new();
        let mut cur = a.clone();
        let mut len = self.aff_length(&cur);
        while len > 0 {
            let mut advanced = false;
            for (gi, gen) in self.aff_gens.iter().enumerate() {
                let cand = self.aff_compose(&gen.elt, &cur);
                let cl = self.aff_length(&cand);
                if cl < len {
                    debug_assert_eq!(cl, len - 1, "descents step by one");
                    word.push(gi as u8);
                    cur = cand;
                    len = cl;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "positive-length element must have a descent");
        }
        (word, cur)
    }

    /// The length-zero subgroup, one element per class of `X/ZR`.
    /// Identity first, then sorted by (fin, trans).
    pub fn omega_elements(&self) -> &[AffWeylElt] {
        self.omega.get_or_init(|| {
            let rank = self.rank();
            let mut out = Vec::new();
            // a length-zero (w, mu) pairs every simple coroot into {0, -1}
            let mut mu = vec![0i64; rank];
            loop {
                for w in self.all() {
                    let cand = AffWeylElt {
                        fin: w,
                        trans: mu.clone(),
                    };
                    if self.aff_length(&cand) == 0 {
                        out.push(cand);
                    }
                }
                let mut k = 0;
                while k < rank && mu[k] == -1 {
                    mu[k] = 0;
                    k += 1;
                }
                if k == rank {
                    break;
                }
                mu[k] = -1;
            }
            out.sort_by_key(|a| {
                (
                    a.fin != 0 || a.trans.iter().any(|&c| c != 0),
                    a.fin,
                    a.trans.clone(),
                )
            });
            // one element per coset of the root lattice in X
            let classes: BTreeSet<Vec<BigRational>> = out
                .iter()
                .map(|a| self.root_lattice_class(&a.trans))
                .collect();
            assert_eq!(classes.len(), out.len(), "one element per X/ZR class");
            assert_eq!(
                out.len(),
                cartan_det(self.datum.cartan()),
                "|Omega| = [X : ZR] = det(Cartan)"
            );
            out
        })
    }

    /// The class of `mu` in `X / ZR`, as the fractional part of the
    /// simple-root coordinates.
    fn root_lattice_class(&self, mu: &[i64]) -> Vec<BigRational> {
        let a: Vec<Vec<BigRational>> = self
            .datum
            .cartan()
            .iter()
            .map(|row| row.iter().map(|&v| big(v)).collect())
            .collect();
        let b: Vec<BigRational> = mu.iter().map(|&v| big(v)).collect();
        let c = crate::linalg::solve_rational(&a, &b).expect("Cartan matrix invertible");
        c.into_iter().map(|x| &x - x.floor()).collect()
    }

    pub fn omega_index(&self, a: &AffWeylElt) -> Option<usize> {
        self.omega_elements().iter().position(|o| o == a)
    }

    // ---- serialization --------------------------------------------------

    pub fn aff_to_json(&self, a: &AffWeylElt) -> serde_json::Value {
        serde_json::json!({
            "fin": self.canonical_word(a.fin).iter().map(|&s| s as u64).collect::<Vec<_>>(),
            "trans": a.trans,
        })
    }

    pub fn aff_from_json(&self, v: &serde_json::Value) -> Result<AffWeylElt> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("element must be an object".into()))?;
        let fin_word: Vec<u8> = obj
            .get("fin")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing \"fin\" word".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|n| n as u8)
                    .ok_or_else(|| Error::Parse("bad generator index".into()))
            })
            .collect::<Result<_>>()?;
        let trans: Weight = obj
            .get("trans")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing \"trans\"".into()))?
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| Error::Parse("bad translation coordinate".into()))
            })
            .collect::<Result<_>>()?;
        if trans.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: trans.len(),
            });
        }
        Ok(AffWeylElt {
            fin: self.word_to_elt(&fin_word)?,
            trans,
        })
    }
}

fn identity(rank: usize) -> Vec<i64> {
    let mut m = vec![0i64; rank * rank];
    for i in 0..rank {
        m[i * rank + i] = 1;
    }
    m
}

fn mat_mul(rank: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik == 0 {
                continue;
            }
            for j in 0..rank {
                out[i * rank + j] += aik * b[k * rank + j];
            }
        }
    }
    out
}

fn big(n: i64) -> BigRational {
    BigRational::from_i64(n).expect("i64 fits")
}

/// Integer determinant of the Cartan matrix (the index `[X : ZR]`),
/// via exact rational elimination.
fn cartan_det(cartan: &[Vec<i64>]) -> usize {
    let n = cartan.len();
    let mut m: Vec<Vec<BigRational>> = cartan
        .iter()
        .map(|row| row.iter().map(|&v| big(v)).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return 0;
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let pivot_row = m[col][col..n].to_vec();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (dst, src) in row[col..n].iter_mut().zip(&pivot_row) {
                *dst = &*dst - &(src * &f);
            }
        }
    }
    assert!(det.is_integer());
    let d = det.to_integer();
    usize::try_from(d).expect("Cartan determinant is positive")
}
