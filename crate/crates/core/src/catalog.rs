//! Named lattices, binary-code constructions and Mukai-vector numerics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{direct_sum_all, overlattice_from_glue, GramLattice, Overlattice};
use crate::linalg::RatRows;

pub fn hyperbolic_plane() -> GramLattice {
    GramLattice::from_i64(&[vec![0, 1], vec![1, 0]])
        .unwrap()
        .with_label("U")
}

/// Negative-definite E8 on a basis of simple roots.
pub fn e8_minus() -> GramLattice {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    GramLattice::from_i64(&g).unwrap().with_label("E8(-1)")
}

/// `U^3 + E8(-1)^2`.
pub fn k3_lattice() -> GramLattice {
    let u = hyperbolic_plane();
    let e = e8_minus();
    direct_sum_all([&u, &u, &u, &e, &e]).with_label("K3")
}

/// `K3 + U`.
pub fn mukai_lattice() -> GramLattice {
    direct_sum_all([&k3_lattice(), &hyperbolic_plane()]).with_label("Mukai")
}

/// Looks up `U`, `E8minus`, `A1`, `K3`, `Mukai` or `diag(n)` / `<n>` for an
/// even nonzero `n`.
pub fn standard_lattice(name: &str) -> Result<GramLattice> {
    let trimmed = name.trim();
    match trimmed {
        "U" => return Ok(hyperbolic_plane()),
        "E8minus" | "E8(-1)" => return Ok(e8_minus()),
        "A1" => return Ok(GramLattice::diagonal(&[-2])?.with_label("A1(-1)")),
        "K3" => return Ok(k3_lattice()),
        "Mukai" => return Ok(mukai_lattice()),
        _ => {}
    }
    let inner = trimmed
        .strip_prefix("diag(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| trimmed.strip_prefix('<').and_then(|s| s.strip_suffix('>')));
    if let Some(inner) = inner {
        let entries: std::result::Result<Vec<i64>, _> = inner.split(',').map(|s| s.trim().parse::<i64>()).collect();
        if let Ok(entries) = entries {
            if !entries.is_empty() && entries.iter().all(|&x| x != 0 && x % 2 == 0) {
                return Ok(GramLattice::diagonal(&entries)?.with_label(format!("<{inner}>")));
            }
        }
    }
    Err(Error::UnknownName(name.to_string()))
}

/// Binary linear code given by generator words (entries 0/1).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generators: Vec<Vec<u8>>,
}

impl BinaryCode {
    pub fn new(length: usize, generators: Vec<Vec<u8>>) -> Result<Self> {
        for (i, w) in generators.iter().enumerate() {
            if w.len() != length {
                return Err(Error::InvalidSpec(format!(
                    "generator {i} has length {}, expected {length}",
                    w.len()
                )));
            }
            if w.iter().any(|&b| b > 1) {
                return Err(Error::InvalidSpec(format!("generator {i} is not a 0/1 word")));
            }
        }
        Ok(BinaryCode { length, generators })
    }

    /// Parses the asset format: a `# length=N dim=D` header and one word
    /// per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut length = None;
        let mut dim = None;
        let mut words = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(header) = line.strip_prefix('#') {
                for field in header.split_whitespace() {
                    if let Some(v) = field.strip_prefix("length=") {
                        length = v.parse::<usize>().ok();
                    } else if let Some(v) = field.strip_prefix("dim=") {
                        dim = v.parse::<usize>().ok();
                    }
                }
                continue;
            }
            let word: Option<Vec<u8>> = line
                .chars()
                .map(|c| match c {
                    '0' => Some(0),
                    '1' => Some(1),
                    _ => None,
                })
                .collect();
            words.push(word.ok_or_else(|| Error::Parse(format!("bad code word '{line}'")))?);
        }
        let length = length
            .or_else(|| words.first().map(Vec::len))
            .ok_or_else(|| Error::Parse("code has no length header and no words".into()))?;
        let code = BinaryCode::new(length, words)?;
        if let Some(d) = dim {
            if code.dimension() != d {
                return Err(Error::InvalidSpec(format!(
                    "header says dim={d} but generators span dimension {}",
                    code.dimension()
                )));
            }
        }
        Ok(code)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# length={} dim={}\n", self.length, self.dimension());
        for w in &self.generators {
            s.extend(w.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    pub fn empty(length: usize) -> Self {
        BinaryCode {
            length,
            generators: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    /// Rank over GF(2).
    pub fn dimension(&self) -> usize {
        let mut rows = self.generators.clone();
        let mut rank = 0;
        for col in 0..self.length {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][col] == 1 {
                    let pivot = rows[rank].clone();
                    rows[r].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Every codeword, including zero (feasible for small dimension only).
    pub fn words(&self) -> Vec<Vec<u8>> {
        let g = &self.generators;
        let mut out = Vec::with_capacity(1 << g.len());
        for mask in 0u64..(1u64 << g.len()) {
            let mut w = vec![0u8; self.length];
            for (i, gen) in g.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w.iter_mut().zip(gen).for_each(|(a, b)| *a ^= b);
                }
            }
            out.push(w);
        }
        out
    }

    /// First word whose weight is not divisible by 4, if any.
    pub fn non_doubly_even_word(&self) -> Option<Vec<u8>> {
        self.words()
            .into_iter()
            .find(|w| w.iter().filter(|&&b| b == 1).count() % 4 != 0)
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode({})", self.to_text().trim_end().replace('\n', " | "))
    }
}

const CODE_ASSETS: &[(&str, &str)] = &[
    ("todorov-0-9", include_str!("../assets/codes/todorov-0-9.txt")),
    ("todorov-0-10", include_str!("../assets/codes/todorov-0-10.txt")),
    ("todorov-0-11", include_str!("../assets/codes/todorov-0-11.txt")),
    ("todorov-1-10", include_str!("../assets/codes/todorov-1-10.txt")),
    ("todorov-1-11", include_str!("../assets/codes/todorov-1-11.txt")),
    ("todorov-1-12", include_str!("../assets/codes/todorov-1-12.txt")),
    ("todorov-2-12", include_str!("../assets/codes/todorov-2-12.txt")),
    ("todorov-2-13", include_str!("../assets/codes/todorov-2-13.txt")),
    ("todorov-3-14", include_str!("../assets/codes/todorov-3-14.txt")),
    ("todorov-4-15", include_str!("../assets/codes/todorov-4-15.txt")),
    ("kummer-16-5", include_str!("../assets/codes/kummer-16-5.txt")),
];

/// A shipped code asset by name, e.g. `kummer-16-5` or `todorov-4-15`.
pub fn reference_code(name: &str) -> Result<BinaryCode> {
    CODE_ASSETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| BinaryCode::parse(text))
        .unwrap_or_else(|| Err(Error::UnknownName(name.to_string())))
}

pub fn kummer_code() -> BinaryCode {
    reference_code("kummer-16-5").expect("shipped asset parses")
}

/// Whether `(alpha, k)` satisfies the numerical admissibility conditions.
pub fn is_admissible(alpha: u32, k: u32) -> bool {
    if alpha > 4 || k < 9 || (alpha, k) == (1, 9) {
        return false;
    }
    let lower = (1u32 << (4 - alpha)) * ((1u32 << alpha) - 1);
    lower <= k && k <= alpha + 11
}

/// All admissible `(alpha, k)`, ordered by `alpha` then `k`.
pub fn admissible_todorov_pairs() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for alpha in 0..=4 {
        // k is bounded above by alpha + 11
        for k in 9..=alpha + 11 {
            if is_admissible(alpha, k) {
                out.push((alpha, k));
            }
        }
    }
    out
}

/// Data for a Todorov-type lattice: the 2-index `alpha`, the number of
/// nodes `k` and a doubly-even code of length `k` and dimension `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TodorovSpec {
    alpha: u32,
    k: u32,
    code: BinaryCode,
}

impl TodorovSpec {
    pub fn new(alpha: u32, k: u32, code: BinaryCode) -> Result<Self> {
        if !is_admissible(alpha, k) {
            return Err(Error::InvalidSpec(format!("({alpha},{k}) is not an admissible pair")));
        }
        validate_code(&code, k as usize, alpha as usize)?;
        Ok(TodorovSpec { alpha, k, code })
    }

    /// The admissible pair with its shipped reference code.
    pub fn reference(alpha: u32, k: u32) -> Result<Self> {
        if !is_admissible(alpha, k) {
            return Err(Error::InvalidSpec(format!("({alpha},{k}) is not an admissible pair")));
        }
        Self::new(alpha, k, reference_code(&format!("todorov-{alpha}-{k}"))?)
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    /// Self-intersection of the extra class, `2k - 16`.
    pub fn lambda_sq(&self) -> i64 {
        2 * self.k as i64 - 16
    }
}

fn validate_code(code: &BinaryCode, length: usize, dim: usize) -> Result<()> {
    if code.length() != length {
        return Err(Error::InvalidSpec(format!(
            "code length {} differs from {length}",
            code.length()
        )));
    }
    if code.dimension() != dim || code.generators().len() != dim {
        return Err(Error::InvalidSpec(format!(
            "code needs {dim} independent generators, got {} spanning dimension {}",
            code.generators().len(),
            code.dimension()
        )));
    }
    if let Some(w) = code.non_doubly_even_word() {
        let weight = w.iter().filter(|&&b| b == 1).count();
        return Err(Error::InvalidSpec(format!(
            "code word of weight {weight} is not doubly even"
        )));
    }
    Ok(())
}

fn half_sum(support: impl IntoIterator<Item = usize>, n: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut v = vec![BigRational::zero(); n];
    for i in support {
        v[i] = half.clone();
    }
    v
}

fn word_glue(code: &BinaryCode, n: usize) -> RatRows {
    code.generators()
        .iter()
        .map(|w| half_sum(w.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i), n))
        .collect()
}

/// Overlattice of `<-2>^k` obtained by adjoining `(1/2) sum_{i in w} e_i`
/// for each generator `w` of `code`. The embedding of `<-2>^k` is recorded
/// in the result.
pub fn double_point_lattice(code: &BinaryCode) -> Result<Overlattice> {
    let k = code.length();
    let base = GramLattice::diagonal(&vec![-2; k])?;
    let mut ov = overlattice_from_glue(&base, &word_glue(code, k))?;
    ov.lattice = ov.lattice.with_label(format!("nodes({k}, dim {})", code.dimension()));
    Ok(ov)
}

pub fn build_double_point_lattice(spec: &TodorovSpec) -> Result<Overlattice> {
    double_point_lattice(&spec.code)
}

/// Rank-17 model of the Néron–Severi lattice of a principally polarized
/// Kummer surface: the rank-16 Kummer lattice plus a polarization `h` with
/// `h^2 = 4`, glued by `(h + sum_{i in T} e_i) / 2` for the first six-node
/// set `T` meeting every word of the Kummer code evenly.
pub fn kummer_ns_lattice() -> Result<GramLattice> {
    let code = kummer_code();
    let n = code.length();
    let words = code.words();
    let six = (0u32..1 << n)
        .filter(|m| m.count_ones() == 6)
        .find(|m| {
            words.iter().all(|w| {
                let meet = (0..n).filter(|&i| w[i] == 1 && m >> i & 1 == 1).count();
                meet % 2 == 0
            })
        })
        .ok_or_else(|| Error::GlueRejected("no six-node set meets the code evenly".into()))?;
    let mut diag = vec![-2i64; n];
    diag.push(4);
    let base = GramLattice::diagonal(&diag)?;
    let mut glue = word_glue(&code, n + 1);
    glue.push(half_sum((0..n).filter(|&i| six >> i & 1 == 1).chain([n]), n + 1));
    let ov = overlattice_from_glue(&base, &glue)?;
    Ok(ov.lattice.with_label("kummer-ns"))
}

/// A Todorov-type lattice with the coordinates of its distinguished classes
/// in its own basis.
#[derive(Clone, Debug)]
pub struct TodorovLattice {
    pub spec: TodorovSpec,
    pub lattice: GramLattice,
    /// The nodes `e_1..e_k`.
    pub nodes: Vec<Vec<BigInt>>,
    pub lambda: Vec<BigInt>,
    /// `(lambda + sum e_i) / 2`.
    pub mu: Vec<BigInt>,
    /// Index over `<-2>^k + <2k-16>`.
    pub index: BigInt,
}

/// Overlattice of `<-2>^k + <2k-16>` adjoining the code glue and
/// `mu = (lambda + sum e_i) / 2`.
pub fn build_todorov_lattice(spec: &TodorovSpec) -> Result<TodorovLattice> {
    let k = spec.k as usize;
    let mut diag = vec![-2i64; k];
    diag.push(spec.lambda_sq());
    let base = GramLattice::diagonal(&diag)?;
    let mu = half_sum(0..=k, k + 1);
    let mut glue = word_glue(&spec.code, k + 1);
    // mu pairs with the glue word w to -|w|/2
    for (i, w) in spec.code.generators().iter().enumerate() {
        let weight = w.iter().filter(|&&b| b == 1).count();
        if weight % 2 != 0 {
            return Err(Error::GlueRejected(format!(
                "pairing with code generator {i} is -{weight}/2"
            )));
        }
    }
    glue.push(mu.clone());
    let ov = overlattice_from_glue(&base, &glue).map_err(|e| match e {
        Error::NotIntegral(s) | Error::NotEven(s) => Error::GlueRejected(s),
        other => other,
    })?;
    let coords = |v: &[BigRational]| ov.coordinates(v).expect("generator lies in overlattice");
    let unit = |i: usize| {
        let mut v = vec![BigRational::zero(); k + 1];
        v[i] = BigRational::one();
        coords(&v)
    };
    let nodes = (0..k).map(unit).collect();
    let lambda = unit(k);
    let mu = coords(&mu);
    let lattice = ov
        .lattice
        .clone()
        .with_label(format!("todorov({},{})", spec.alpha, spec.k));
    let out = TodorovLattice {
        spec: spec.clone(),
        lattice,
        nodes,
        lambda,
        mu,
        index: ov.index,
    };
    debug_assert_eq!(out.lattice.norm(&out.mu), BigInt::from(-4));
    Ok(out)
}

/// A Mukai vector `(v0, v1, v2)` with `v1` recorded only through `v1^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MukaiVector {
    pub v0: i64,
    pub v1_selfint: i64,
    pub v2: i64,
}

impl MukaiVector {
    pub fn new(v0: i64, v1_selfint: i64, v2: i64) -> Result<Self> {
        if v1_selfint % 2 != 0 {
            return Err(Error::OddSelfIntersection(v1_selfint));
        }
        Ok(MukaiVector { v0, v1_selfint, v2 })
    }

    pub fn square(&self) -> i64 {
        mukai_pairing(self, self, self.v1_selfint)
    }
}

/// `(v, w) = v1.w1 - v0 w2 - v2 w0`, with `v1.w1` supplied as `cross`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector, cross: i64) -> i64 {
    cross - v.v0 * w.v2 - v.v2 * w.v0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SheafNumerics {
    pub vector: MukaiVector,
    pub euler: i64,
    pub moduli_dim: i64,
}

/// Numerics of a sheaf with rank `r`, `c1^2 = c1_sq`, and `c2` on a K3.
pub fn sheaf_numerics(r: i64, c1_sq: i64, c2: i64) -> Result<SheafNumerics> {
    if c1_sq % 2 != 0 {
        return Err(Error::OddSelfIntersection(c1_sq));
    }
    let v = MukaiVector::new(r, c1_sq, r + c1_sq / 2 - c2)?;
    Ok(SheafNumerics {
        vector: v,
        euler: v.v0 + v.v2,
        moduli_dim: v.square() + 2,
    })
}

/// Genus of a polarization of degree `h^2 = degree`.
pub fn polarization_genus(degree: i64) -> Result<i64> {
    if degree <= 0 || degree % 2 != 0 {
        return Err(Error::InvalidDegree(degree));
    }
    Ok(degree / 2 + 1)
}

/// Degree of the locus of singular quadrics in `P^n`.
pub fn discriminant_hypersurface_degree(n: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    Ok(n + 1)
}
