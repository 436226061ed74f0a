//! Root data of simply-connected semisimple type.
//!
//! Weights live in `X = Z^r` written in the fundamental-weight basis, so
//! the simple coroots are the coordinate functionals.  The Cartan
//! convention throughout: `cartan[i][j] = <alpha_j, alpha_i^vee>`, which
//! makes the omega-coordinates of `alpha_j` the `j`-th column of the
//! Cartan matrix.

use std::collections::{BTreeSet, HashMap};

use num::{BigRational, FromPrimitive, Signed};

use crate::error::{Error, Result};
use crate::linalg;

pub type Weight = Vec<i64>;

/// A root together with everything the rest of the crate needs of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the fundamental-weight basis.
    pub weight: Weight,
    /// Coordinates in the simple-root basis (all `>= 0` here: only
    /// positive roots are stored).
    pub alpha: Vec<i64>,
    /// The coroot as a functional: `<x, coroot> = sum_i coroot[i] * x[i]`.
    pub coroot: Vec<i64>,
    /// Sum of the simple-root coordinates.
    pub height: i64,
}

/// A connected component of the Dynkin diagram.
#[derive(Debug, Clone)]
pub struct Component {
    pub indices: Vec<usize>,
    pub letter: char,
    pub rank: usize,
    pub num_positive: usize,
    pub coxeter_number: i64,
    /// Index into `positive_roots` of the component's highest root.
    pub highest_root: usize,
}

#[derive(Debug, Clone)]
pub struct ConvHull {
    /// `X` intersected with the convex hull of the Weyl orbit.
    pub conv: BTreeSet<Weight>,
    /// `conv` minus the orbit itself.
    pub conv0: BTreeSet<Weight>,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    /// weight-coordinates -> (index into positive_roots, is_positive)
    root_lookup: HashMap<Weight, (usize, bool)>,
    components: Vec<Component>,
    coxeter_number: i64,
    n_g: i64,
    rho: Weight,
}

/// Bound on root generation; a generalized Cartan matrix whose closure
/// exceeds this is reported as non-finite.
const ROOT_GENERATION_BOUND: usize = 10_000;

impl RootDatum {
    /// Build from a type string such as `"A3"`, `"G2"` or `"A1xF4"`.
    pub fn build(type_spec: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut label_parts = Vec::new();
        for part in type_spec.split(['x', 'X']) {
            let part = part.trim();
            let (letter, rank) = parse_simple_type(part)?;
            blocks.push(cartan_block(letter, rank));
            label_parts.push(format!("{letter}{rank}"));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidType(type_spec.to_string()));
        }
        let cartan = block_diagonal(&blocks);
        let datum = Self::from_cartan_inner(cartan)?;
        // the parsed label and the classified label must agree
        debug_assert_eq!(datum.label, label_parts.join("x"));
        Ok(datum)
    }

    /// Build from an explicit Cartan matrix (entry `(i,j)` is
    /// `<alpha_j, alpha_i^vee>`).  The matrix must be a generalized
    /// Cartan matrix of finite type.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_cartan_inner(cartan)
    }

    fn from_cartan_inner(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(format!(
                    "row {i} has length {}, expected {rank}",
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {}, must be 2",
                    row[i]
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j {
                    if a > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry ({i},{j}) is {a}, must be <= 0"
                        )));
                    }
                    if (a == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "entries ({i},{j}) and ({j},{i}) must vanish together"
                        )));
                    }
                }
            }
        }
        let positive_roots = generate_positive_roots(&cartan)?;
        let mut root_lookup = HashMap::new();
        for (idx, r) in positive_roots.iter().enumerate() {
            root_lookup.insert(r.weight.clone(), (idx, true));
            root_lookup.insert(r.weight.iter().map(|&c| -c).collect(), (idx, false));
        }
        let components = classify_components(&cartan, &positive_roots)?;
        let coxeter_number = components
            .iter()
            .map(|c| c.coxeter_number)
            .max()
            .expect("at least one component");
        let mut n_g = 1;
        if components.iter().any(|c| c.letter == 'F') {
            n_g *= 2;
        }
        if components.iter().any(|c| c.letter == 'G') {
            n_g *= 3;
        }
        let label = components
            .iter()
            .map(|c| format!("{}{}", c.letter, c.rank))
            .collect::<Vec<_>>()
            .join("x");
        Ok(Self {
            label,
            rank,
            cartan,
            positive_roots,
            root_lookup,
            components,
            coxeter_number,
            n_g,
            rho: vec![1; rank],
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Omega-coordinates of `alpha_i` (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        (0..self.rank).map(|k| self.cartan[k][i]).collect()
    }

    /// The coroot `alpha_i^vee` as a functional (the `i`-th coordinate
    /// functional in the fundamental-weight basis).
    pub fn simple_coroot(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// The torsion constant: 1, times 2 per F4-presence, times 3 per
    /// G2-presence — always one of 1, 2, 3, 6.
    pub fn n_g(&self) -> i64 {
        self.n_g
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn highest_root(&self, comp: &Component) -> &Root {
        &self.positive_roots[comp.highest_root]
    }

    /// The root of the component whose coroot is the highest coroot
    /// (the highest short root; equals the highest root when all roots
    /// have one length).  This is the translation part of the affine
    /// simple reflection for `W ⋉ ZR`.
    pub fn highest_short_root(&self, comp: &Component) -> &Root {
        self.positive_roots
            .iter()
            .filter(|r| {
                r.alpha
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || comp.indices.contains(&i))
            })
            .max_by_key(|r| r.coroot.iter().sum::<i64>())
            .expect("component has roots")
    }

    /// `<x, coroot>` for a weight and a coroot functional.
    pub fn pairing(&self, x: &[i64], coroot: &[i64]) -> Result<i64> {
        if x.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: x.len(),
            });
        }
        if coroot.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: coroot.len(),
            });
        }
        Ok(x.iter().zip(coroot).map(|(a, b)| a * b).sum())
    }

    /// `s_i(x) = x - <x, alpha_i^vee> alpha_i` in omega-coordinates.
    pub fn reflect_weight(&self, i: usize, x: &[i64]) -> Weight {
        let c = x[i];
        (0..self.rank)
            .map(|k| x[k] - c * self.cartan[k][i])
            .collect()
    }

    /// The finite geometric sum `(e^x - e^{s_i(x)}) / (1 - e^{-alpha_i})`
    /// as a signed list of exponents: for `m = <x, alpha_i^vee> > 0` the
    /// weights `x - k alpha_i` (`0 <= k < m`) with sign `+1`; for `m < 0`
    /// the weights `x + k alpha_i` (`1 <= k <= -m`) with sign `-1`;
    /// empty for `m = 0`.  The quotient is exact — no division happens.
    pub fn root_string_sum(&self, i: usize, x: &[i64]) -> Vec<(Weight, i64)> {
        let m = x[i];
        let step = |k: i64| -> Weight {
            (0..self.rank)
                .map(|j| x[j] - k * self.cartan[j][i])
                .collect()
        };
        if m > 0 {
            (0..m).map(|k| (step(k), 1)).collect()
        } else {
            (1..=-m).map(|k| (step(-k), -1)).collect()
        }
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        x.iter().all(|&c| c >= 0)
    }

    /// The dominant representative of the Weyl orbit of `x`.
    pub fn dominant_rep(&self, x: &[i64]) -> Weight {
        let mut y = x.to_vec();
        loop {
            match y.iter().position(|&c| c < 0) {
                Some(i) => y = self.reflect_weight(i, &y),
                None => return y,
            }
        }
    }

    /// The full Weyl orbit of `x`.
    pub fn weyl_orbit(&self, x: &[i64]) -> BTreeSet<Weight> {
        let mut orbit: BTreeSet<Weight> = BTreeSet::new();
        let mut todo = vec![x.to_vec()];
        orbit.insert(x.to_vec());
        while let Some(y) = todo.pop() {
            for i in 0..self.rank {
                let z = self.reflect_weight(i, &y);
                if orbit.insert(z.clone()) {
                    todo.push(z);
                }
            }
        }
        orbit
    }

    /// Look up a weight vector as a root: `Some((index, positive))` when
    /// it is plus or minus a positive root.
    pub fn root_sign(&self, weight: &[i64]) -> Option<(usize, bool)> {
        self.root_lookup.get(weight).copied()
    }

    /// `conv(lambda) = X ∩ hull(W·lambda)` and
    /// `conv0(lambda) = conv(lambda) \ W·lambda`, computed exactly.
    ///
    /// A lattice point `mu` lies in the hull iff its dominant
    /// representative `mu+` satisfies `lambda+ - mu+ ∈ Q_{>=0}·{alpha_i}`,
    /// which is a rational half-space test solved over `Q`.
    pub fn conv_hull_weights(&self, lambda: &[i64]) -> Result<ConvHull> {
        if lambda.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: lambda.len(),
            });
        }
        let orbit = self.weyl_orbit(lambda);
        let dom = self.dominant_rep(lambda);
        let cartan_q: Vec<Vec<BigRational>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&a| big(a)).collect())
            .collect();
        // bounding box of the hull, coordinate-wise over the orbit
        let mut lo = vec![i64::MAX; self.rank];
        let mut hi = vec![i64::MIN; self.rank];
        for p in &orbit {
            for (k, &c) in p.iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        let mut conv = BTreeSet::new();
        let mut cursor = lo.clone();
        'enumerate: loop {
            let mu_dom = self.dominant_rep(&cursor);
            let diff: Vec<BigRational> =
                dom.iter().zip(&mu_dom).map(|(&a, &b)| big(a - b)).collect();
            if let Some(c) = linalg::solve_rational(&cartan_q, &diff) {
                if c.iter().all(|x| !x.is_negative()) {
                    conv.insert(cursor.clone());
                }
            }
            // advance the box cursor
            for k in 0..self.rank {
                if cursor[k] < hi[k] {
                    cursor[k] += 1;
                    continue 'enumerate;
                }
                cursor[k] = lo[k];
            }
            break;
        }
        let conv0 = conv.difference(&orbit).cloned().collect();
        Ok(ConvHull { conv, conv0 })
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_i64(n).expect("i64 fits")
}

fn parse_simple_type(part: &str) -> Result<(char, usize)> {
    let mut chars = part.chars();
    let letter = chars
        .next()
        .ok_or_else(|| Error::InvalidType(part.to_string()))?
        .to_ascii_uppercase();
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::InvalidType(part.to_string()))?;
    let ok = match letter {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidType(part.to_string()));
    }
    Ok((letter, rank))
}

/// Standard Cartan matrices, in the `(i,j) = <alpha_j, alpha_i^vee>`
/// convention (Bourbaki numbering of nodes).
fn cartan_block(letter: char, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        'A' => {
            for i in 1..n {
                link(i - 1, i);
            }
        }
        'B' => {
            for i in 1..n {
                link(i - 1, i);
            }
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            a[n - 1][n - 2] = -2;
        }
        'C' => {
            for i in 1..n {
                link(i - 1, i);
            }
            // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
            a[n - 2][n - 1] = -2;
        }
        'D' => {
            for i in 1..n - 1 {
                link(i - 1, i);
            }
            link(n - 3, n - 1);
        }
        'E' => {
            // nodes 1,3,4,...,n in a path; node 2 hangs off node 4
            link(0, 2);
            for i in 3..n {
                link(i - 1, i);
            }
            link(1, 3);
        }
        'F' => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
            // alpha_3, alpha_4 short: <alpha_2, alpha_3^vee> = -2
            a[2][1] = -2;
        }
        'G' => {
            // alpha_1 short: <alpha_2, alpha_1^vee> = -3
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => unreachable!("validated by parse_simple_type"),
    }
    a
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let rank: usize = blocks.iter().map(Vec::len).sum();
    let mut a = vec![vec![0i64; rank]; rank];
    let mut off = 0;
    for b in blocks {
        let r = b.len();
        for i in 0..r {
            for j in 0..r {
                a[off + i][off + j] = b[i][j];
            }
        }
        off += r;
    }
    a
}

/// Close the simple roots (with their coroots) under simple reflections.
/// Terminates within the generation bound exactly when the type is
/// finite; positive roots come out sorted by height then coordinates.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Root>> {
    let rank = cartan.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new(); // alpha coords -> coroot
    let mut todo: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        seen.insert(e.clone(), e.clone());
        todo.push((e.clone(), e));
    }
    while let Some((alpha, coroot)) = todo.pop() {
        for i in 0..rank {
            // pairing of the root with alpha_i^vee, in alpha-coordinates
            let p: i64 = (0..rank).map(|j| cartan[i][j] * alpha[j]).sum();
            let mut na = alpha.clone();
            na[i] -= p;
            // pairing of alpha_i with the coroot functional
            let q: i64 = (0..rank).map(|k| cartan[k][i] * coroot[k]).sum();
            let mut nc = coroot.clone();
            nc[i] -= q;
            if !seen.contains_key(&na) {
                seen.insert(na.clone(), nc.clone());
                todo.push((na, nc));
                if seen.len() > ROOT_GENERATION_BOUND {
                    return Err(Error::InfiniteType {
                        bound: ROOT_GENERATION_BOUND,
                    });
                }
            }
        }
    }
    let mut roots: Vec<Root> = seen
        .into_iter()
        .filter(|(alpha, _)| alpha.iter().all(|&c| c >= 0))
        .map(|(alpha, coroot)| {
            let weight = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * alpha[j]).sum())
                .collect();
            let height = alpha.iter().sum();
            Root {
                weight,
                alpha,
                coroot,
                height,
            }
        })
        .collect();
    roots.sort_by(|a, b| (a.height, &a.alpha).cmp(&(b.height, &b.alpha)));
    Ok(roots)
}

fn classify_components(cartan: &[Vec<i64>], roots: &[Root]) -> Result<Vec<Component>> {
    let rank = cartan.len();
    let mut comp_of = vec![usize::MAX; rank];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..rank {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_of[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..rank {
                if i != j && cartan[i][j] != 0 && comp_of[j] == usize::MAX {
                    comp_of[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by_key(|m| m[0]);

    let mut out = Vec::new();
    for indices in comps {
        let n = indices.len();
        // roots supported on this component
        let mut num_positive = 0;
        let mut best: Option<(i64, usize)> = None;
        for (idx, r) in roots.iter().enumerate() {
            let support_here = indices.iter().any(|&i| r.alpha[i] != 0);
            if support_here {
                num_positive += 1;
                if best.is_none_or(|(h, _)| r.height > h) {
                    best = Some((r.height, idx));
                }
            }
        }
        let (max_height, highest_root) = best.expect("component has roots");
        let coxeter_number = max_height + 1;
        let letter = classify_letter(cartan, &indices, num_positive)?;
        out.push(Component {
            indices,
            letter,
            rank: n,
            num_positive,
            coxeter_number,
            highest_root,
        });
    }
    Ok(out)
}

/// Recognize the Cartan letter of one connected component from its bond
/// structure and its positive-root count.
fn classify_letter(cartan: &[Vec<i64>], indices: &[usize], num_positive: usize) -> Result<char> {
    let n = indices.len();
    let bond = |i: usize, j: usize| cartan[i][j] * cartan[j][i];
    let degree = |i: usize| {
        indices
            .iter()
            .filter(|&&j| j != i && cartan[i][j] != 0)
            .count()
    };
    let mut max_bond = 1;
    let mut double: Option<(usize, usize)> = None; // (short side i, long side j): a_ij = -2
    for &i in indices {
        for &j in indices {
            if i < j && cartan[i][j] != 0 {
                let b = bond(i, j);
                max_bond = max_bond.max(b);
                if b == 2 {
                    if cartan[i][j] == -2 {
                        double = Some((i, j));
                    } else {
                        double = Some((j, i));
                    }
                }
            }
        }
    }
    let letter = match max_bond {
        3 => 'G',
        2 => {
            if n == 4 && num_positive == 24 {
                'F'
            } else if n == 2 {
                'B'
            } else {
                // B_n: the long end of the double bond is interior;
                // C_n: the long end is a leaf.
                let (_short, long) = double.expect("double bond present");
                if degree(long) == 1 {
                    'C'
                } else {
                    'B'
                }
            }
        }
        1 => {
            let branched = indices.iter().any(|&i| degree(i) >= 3);
            if !branched {
                'A'
            } else if num_positive == n * (n - 1) {
                'D'
            } else {
                'E'
            }
        }
        _ => {
            return Err(Error::InvalidCartan(format!(
                "bond product {max_bond} is not realizable in finite type"
            )))
        }
    };
    // count sanity per letter
    let expected = match letter {
        'A' => n * (n + 1) / 2,
        'B' | 'C' => n * n,
        'D' => n * (n - 1),
        'E' => match n {
            6 => 36,
            7 => 63,
            8 => 120,
            _ => 0,
        },
        'F' => 24,
        'G' => 6,
        _ => 0,
    };
    if expected != num_positive {
        return Err(Error::InvalidCartan(format!(
            "component classified as {letter}{n} but has {num_positive} positive roots"
        )));
    }
    Ok(letter)
}
