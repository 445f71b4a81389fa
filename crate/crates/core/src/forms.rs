//! Finite quadratic forms and discriminant groups `A_L = L^∨ / L`.
//!
//! A form is stored on a list of cyclic generators `g_1, ..., g_m` of orders
//! `d_1 | d_2 | ... | d_m` together with one symmetric rational matrix: the
//! diagonal holds `q(g_i)` reduced into `[0, 2)` and the off-diagonal holds
//! `b(g_i, g_j)` reduced into `[0, 1)`. Values of `q` are taken modulo `2Z`
//! (even lattices); the bilinear form is always derived from that matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::linalg::{bilinear_rat, smith_normal_form, IntMatrix, RatRows};

/// Default bound on `|A|` for full enumeration of the group.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 14;
/// Default node budget for isomorphism and automorphism searches.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    factors: Vec<BigInt>,
    q: RatRows,
}

impl FiniteQuadraticForm {
    /// Validates the divisibility chain and that every generator's values
    /// are compatible with its order, then reduces the matrix.
    pub fn new(factors: Vec<BigInt>, q: RatRows) -> Result<Self> {
        let m = factors.len();
        if q.len() != m || q.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "{m} factors but a {}-row value matrix",
                q.len()
            )));
        }
        for d in &factors {
            if d <= &BigInt::one() {
                return Err(Error::InconsistentInput(format!("invariant factor {d} must exceed 1")));
            }
        }
        for w in factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InconsistentInput(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        let mut red = q.clone();
        for i in 0..m {
            for j in 0..m {
                if q[i][j] != q[j][i] {
                    return Err(Error::NotSymmetric);
                }
                let di = BigRational::from_integer(factors[i].clone());
                if !(&q[i][j] * &di).is_integer() {
                    return Err(Error::InconsistentInput(format!(
                        "generator {i} of order {} pairs to {} with generator {j}",
                        factors[i], q[i][j]
                    )));
                }
                red[i][j] = reduce_mod(&q[i][j], if i == j { 2 } else { 1 });
            }
            let di = BigRational::from_integer(factors[i].clone());
            let v = &q[i][i] * &di * &di;
            if !v.is_integer() || v.to_integer().is_odd() {
                return Err(Error::InconsistentInput(format!(
                    "q(g_{i}) = {} is not compatible with order {}",
                    q[i][i], factors[i]
                )));
            }
        }
        Ok(FiniteQuadraticForm { factors, q: red })
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            factors: Vec::new(),
            q: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn values(&self) -> &RatRows {
        &self.q
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `q(sum a_i g_i)` in `[0, 2)`.
    pub fn q_of(&self, a: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..a.len() {
            if a[i].is_zero() {
                continue;
            }
            let ai = BigRational::from_integer(a[i].clone());
            acc += &ai * &ai * &self.q[i][i];
            for j in i + 1..a.len() {
                if !a[j].is_zero() {
                    let aj = BigRational::from_integer(a[j].clone());
                    acc += BigRational::from_integer(BigInt::from(2)) * &ai * aj * &self.q[i][j];
                }
            }
        }
        reduce_mod(&acc, 2)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_of(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                if !x[i].is_zero() && !y[j].is_zero() {
                    acc += BigRational::from_integer(&x[i] * &y[j]) * &self.q[i][j];
                }
            }
        }
        reduce_mod(&acc, 1)
    }

    /// The form `-q`.
    pub fn negate(&self) -> Self {
        let m = self.factors.len();
        let mut q = self.q.clone();
        for i in 0..m {
            for j in 0..m {
                q[i][j] = reduce_mod(&-&self.q[i][j], if i == j { 2 } else { 1 });
            }
        }
        FiniteQuadraticForm {
            factors: self.factors.clone(),
            q,
        }
    }

    fn table(&self) -> Option<Table> {
        Table::new(self)
    }

    /// Multiset of `q` over the whole group, or `None` above `bound`.
    pub fn value_multiset(&self, bound: u64) -> Option<BTreeMap<BigRational, u64>> {
        let t = self.table()?;
        if t.size > bound {
            return None;
        }
        let mut hist: BTreeMap<i128, u64> = BTreeMap::new();
        let mut x = vec![0u64; t.m()];
        for _ in 0..t.size {
            *hist.entry(t.q(&x)).or_default() += 1;
            t.advance(&mut x);
        }
        let den = BigInt::from(t.den);
        Some(
            hist.into_iter()
                .map(|(k, c)| (BigRational::new(BigInt::from(k), den.clone()), c))
                .collect(),
        )
    }

    /// Gauss sum `sum_x exp(pi i q(x))` as `(re, im)`.
    pub fn gauss_sum(&self) -> (f64, f64) {
        let t = self.table().expect("group too large to enumerate");
        let mut x = vec![0u64; t.m()];
        let (mut re, mut im) = (0.0f64, 0.0f64);
        let step = std::f64::consts::PI / t.den as f64;
        for _ in 0..t.size {
            let a = t.q(&x) as f64 * step;
            re += a.cos();
            im += a.sin();
            t.advance(&mut x);
        }
        (re, im)
    }

    /// Residue `s mod 8` with `sum_x exp(pi i q(x)) = sqrt|A| exp(2 pi i s / 8)`.
    ///
    /// For the discriminant form of an even lattice this equals the
    /// signature mod 8.
    pub fn milgram_signature(&self) -> u8 {
        if self.is_trivial() {
            return 0;
        }
        let (re, im) = self.gauss_sum();
        let modulus = (re * re + im * im).sqrt();
        let expected = self.order().to_f64().unwrap().sqrt();
        debug_assert!(
            (modulus - expected).abs() <= 1e-6 * expected.max(1.0),
            "Gauss sum modulus {modulus} != sqrt|A| = {expected}; form is degenerate"
        );
        let eighths = im.atan2(re) / (std::f64::consts::PI / 4.0);
        (eighths.round() as i64).rem_euclid(8) as u8
    }

    /// True if `|gauss sum| = sqrt|A|` to 1e-6, i.e. the form is nondegenerate.
    pub fn gauss_sum_is_balanced(&self) -> bool {
        if self.is_trivial() {
            return true;
        }
        let (re, im) = self.gauss_sum();
        let expected = self.order().to_f64().unwrap().sqrt();
        ((re * re + im * im).sqrt() - expected).abs() <= 1e-6 * expected.max(1.0)
    }
}

/// Number of invariant factors greater than one, `l(A)`.
pub fn min_generators(a: &FiniteQuadraticForm) -> usize {
    a.factors.len()
}

pub fn milgram_signature(a: &FiniteQuadraticForm) -> u8 {
    a.milgram_signature()
}

impl fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuadraticForm(factors=[")?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "], q=[")?;
        for (i, row) in self.q.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "])")
    }
}

/// Machine-integer view of a form for enumeration: values are numerators
/// over a common denominator `den`, `q` taken mod `2 den` and `b` mod `den`.
#[derive(Clone, Debug)]
pub(crate) struct Table {
    pub factors: Vec<u64>,
    pub den: i128,
    pub num: Vec<Vec<i128>>,
    pub size: u64,
}

impl Table {
    pub fn new(form: &FiniteQuadraticForm) -> Option<Self> {
        let factors: Option<Vec<u64>> = form.factors.iter().map(|d| d.to_u64()).collect();
        let factors = factors?;
        let mut size: u64 = 1;
        for &d in &factors {
            size = size.checked_mul(d)?;
        }
        let mut den = BigInt::one();
        for row in &form.q {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let den_i = den.to_i128()?;
        let num: Option<Vec<Vec<i128>>> = form
            .q
            .iter()
            .map(|row| row.iter().map(|x| (x.numer() * (&den / x.denom())).to_i128()).collect())
            .collect();
        Some(Table {
            factors,
            den: den_i,
            num: num?,
            size,
        })
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// Numerator of `q(x)` in `[0, 2 den)`.
    pub fn q(&self, x: &[u64]) -> i128 {
        let m = self.m();
        let mut acc: i128 = 0;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            acc += xi * xi % (2 * self.den) * self.num[i][i];
            for j in i + 1..m {
                if x[j] != 0 {
                    acc += 2 * (xi * x[j] as i128 % self.den) * self.num[i][j];
                }
            }
            acc %= 2 * self.den;
        }
        acc.rem_euclid(2 * self.den)
    }

    /// Numerator of `b(x, y)` in `[0, den)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> i128 {
        let m = self.m();
        let mut acc: i128 = 0;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                if y[j] != 0 {
                    acc += (x[i] as i128 * y[j] as i128 % self.den) * self.num[i][j];
                }
            }
            acc %= self.den;
        }
        acc.rem_euclid(self.den)
    }

    /// Mixed-radix increment.
    pub fn advance(&self, x: &mut [u64]) {
        for i in 0..x.len() {
            x[i] += 1;
            if x[i] < self.factors[i] {
                return;
            }
            x[i] = 0;
        }
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.size as usize);
        let mut x = vec![0u64; self.m()];
        for _ in 0..self.size {
            out.push(x.clone());
            self.advance(&mut x);
        }
        out
    }

    /// `k * x`.
    pub fn scale(&self, x: &[u64], k: u64) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| ((a as u128 * k as u128) % d as u128) as u64)
            .collect()
    }

    pub fn is_killed_by(&self, x: &[u64], k: u64) -> bool {
        self.scale(x, k).iter().all(|&a| a == 0)
    }

    /// `sum_j c_j * img_j` where `img_j` are elements of this group.
    pub fn combine(&self, coeffs: &[u64], images: &[Vec<u64>]) -> Vec<u64> {
        let mut out = vec![0u64; self.m()];
        for (c, img) in coeffs.iter().zip(images) {
            if *c == 0 {
                continue;
            }
            for k in 0..self.m() {
                let d = self.factors[k] as u128;
                out[k] = ((out[k] as u128 + *c as u128 * img[k] as u128) % d) as u64;
            }
        }
        out
    }
}

/// The discriminant group of a lattice together with the data needed to
/// read off coordinates of dual vectors.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub form: FiniteQuadraticForm,
    /// Dual-lattice representatives of the generators, in lattice coordinates.
    pub generators: RatRows,
    gram: IntMatrix,
    /// Rows of the left SNF transform belonging to nontrivial factors.
    reader: IntMatrix,
}

impl DiscriminantGroup {
    /// From the Smith form `u G v = d`: generators are `v e_i / d_i`, and a
    /// dual vector `x` has coordinates `(u G x)_i mod d_i`.
    pub fn new(l: &GramLattice) -> Self {
        let g = l.gram();
        let n = l.rank();
        let snf = smith_normal_form(g);
        let diag: Vec<BigInt> = (0..n).map(|i| snf.d[(i, i)].clone()).collect();
        let nontrivial: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let factors: Vec<BigInt> = nontrivial.iter().map(|&i| diag[i].clone()).collect();
        let generators: RatRows = nontrivial
            .iter()
            .map(|&i| {
                (0..n)
                    .map(|r| BigRational::new(snf.v[(r, i)].clone(), diag[i].clone()))
                    .collect()
            })
            .collect();
        let m = factors.len();
        let mut q = vec![vec![BigRational::zero(); m]; m];
        for i in 0..m {
            for j in 0..=i {
                let v = bilinear_rat(g, &generators[i], &generators[j]);
                q[i][j] = v.clone();
                q[j][i] = v;
            }
        }
        let form = FiniteQuadraticForm::new(factors, q).expect("discriminant form is consistent");
        DiscriminantGroup {
            form,
            generators,
            gram: g.clone(),
            reader: snf.u.select_rows(&nontrivial),
        }
    }

    /// Coordinates of a dual vector (lattice coordinates, rational) in the
    /// generator basis, reduced mod the invariant factors.
    pub fn coordinates(&self, x: &[BigRational]) -> Result<Vec<BigInt>> {
        let n = self.gram.rows();
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::zero();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    acc += xj * BigRational::from_integer(self.gram[(i, j)].clone());
                }
            }
            if !acc.is_integer() {
                return Err(Error::NotIntegral("vector is not in the dual lattice".into()));
            }
            y.push(acc.to_integer());
        }
        let c = self.reader.mul_vec(&y);
        Ok(c.iter().zip(self.form.factors()).map(|(a, d)| a.mod_floor(d)).collect())
    }
}

pub fn discriminant_form(l: &GramLattice) -> FiniteQuadraticForm {
    DiscriminantGroup::new(l).form
}

/// Why two forms are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Order { left: String, right: String },
    InvariantFactors { left: Vec<String>, right: Vec<String> },
    ValueMultiset,
    Milgram { left: u8, right: u8 },
}

/// An explicit isomorphism: row `i` holds the image of generator `i` of the
/// source in generator coordinates of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMap {
    pub images: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormIsomorphism {
    Yes(FormMap),
    No(Witness),
    Unknown { nodes: u64 },
}

impl FormIsomorphism {
    pub fn is_yes(&self) -> bool {
        matches!(self, FormIsomorphism::Yes(_))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
    pub enumeration_bound: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            seed: 0,
        }
    }
}

/// Checks that `map` is a well-defined homomorphism `a -> b` preserving `q`
/// on generators and `b` on generator pairs. Since discriminant forms are
/// nondegenerate and the orders agree, this makes it an isomorphism.
pub fn verify_map(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm, map: &FormMap) -> bool {
    let m = a.factors.len();
    if map.images.len() != m || a.order() != b.order() {
        return false;
    }
    for (i, img) in map.images.iter().enumerate() {
        if img.len() != b.factors.len() {
            return false;
        }
        // d_i * img == 0 in b
        let killed = img
            .iter()
            .zip(&b.factors)
            .all(|(x, d)| (x * &a.factors[i]).is_multiple_of(d));
        if !killed || b.q_of(img) != a.q[i][i] {
            return false;
        }
        for j in 0..i {
            if b.b_of(img, &map.images[j]) != a.q[i][j] {
                return false;
            }
        }
    }
    true
}

fn screen(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm, bound: u64) -> Option<Witness> {
    if a.order() != b.order() {
        return Some(Witness::Order {
            left: a.order().to_string(),
            right: b.order().to_string(),
        });
    }
    if a.factors != b.factors {
        return Some(Witness::InvariantFactors {
            left: a.factors.iter().map(|x| x.to_string()).collect(),
            right: b.factors.iter().map(|x| x.to_string()).collect(),
        });
    }
    if let (Some(ma), Some(mb)) = (a.value_multiset(bound), b.value_multiset(bound)) {
        if ma != mb {
            return Some(Witness::ValueMultiset);
        }
        let (sa, sb) = (a.milgram_signature(), b.milgram_signature());
        if sa != sb {
            return Some(Witness::Milgram { left: sa, right: sb });
        }
    }
    None
}

struct IsoSearch<'a> {
    src: &'a Table,
    dst: &'a Table,
    order: Vec<usize>,
    candidates: Vec<Vec<Vec<u64>>>,
    images: Vec<Option<Vec<u64>>>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    /// Depth-first assignment of generator images; `Err` on budget.
    fn run(&mut self, depth: usize) -> std::result::Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let i = self.order[depth];
        for c in 0..self.candidates[i].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            let cand = &self.candidates[i][c];
            let ok = self.order[..depth].iter().all(|&j| {
                let img = self.images[j].as_ref().unwrap();
                self.dst.b(cand, img) * self.src.den == self.src.num[i][j] * self.dst.den
            });
            if !ok {
                continue;
            }
            self.images[i] = Some(cand.clone());
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.images[i] = None;
        }
        Ok(false)
    }
}

/// Semi-decision for isomorphism of finite quadratic forms: invariant
/// screening, then a seeded backtracking search over generator images.
pub fn fqf_isomorphic(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm, opts: &SearchOptions) -> FormIsomorphism {
    if let Some(w) = screen(a, b, opts.enumeration_bound) {
        return FormIsomorphism::No(w);
    }
    if a.is_trivial() {
        return FormIsomorphism::Yes(FormMap { images: Vec::new() });
    }
    let (Some(ta), Some(tb)) = (a.table(), b.table()) else {
        return FormIsomorphism::Unknown { nodes: 0 };
    };
    if tb.size > opts.enumeration_bound {
        return FormIsomorphism::Unknown { nodes: 0 };
    }
    let elements = tb.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let m = ta.m();
    let mut candidates = Vec::with_capacity(m);
    for i in 0..m {
        let target = ta.num[i][i];
        let mut c: Vec<Vec<u64>> = elements
            .iter()
            .filter(|y| tb.is_killed_by(y, ta.factors[i]) && tb.q(y) * ta.den == target * tb.den)
            .cloned()
            .collect();
        c.shuffle(&mut rng);
        candidates.push(c);
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    let mut search = IsoSearch {
        src: &ta,
        dst: &tb,
        order,
        candidates,
        images: vec![None; m],
        nodes: 0,
        budget: opts.node_budget,
    };
    match search.run(0) {
        Ok(true) => {
            let map = FormMap {
                images: search
                    .images
                    .iter()
                    .map(|x| x.as_ref().unwrap().iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
            };
            if verify_map(a, b, &map) {
                FormIsomorphism::Yes(map)
            } else {
                FormIsomorphism::Unknown { nodes: search.nodes }
            }
        }
        Ok(false) => FormIsomorphism::No(Witness::ValueMultiset),
        Err(()) => FormIsomorphism::Unknown { nodes: search.nodes },
    }
}

/// All automorphisms of a form, each as generator images (rows), or
/// `BudgetExceeded`.
pub(crate) fn all_automorphisms(
    form: &FiniteQuadraticForm,
    node_budget: u64,
    enumeration_bound: u64,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let t = form.table().ok_or(Error::BudgetExceeded(0))?;
    if t.size > enumeration_bound {
        return Err(Error::BudgetExceeded(0));
    }
    let m = t.m();
    if m == 0 {
        return Ok(vec![Vec::new()]);
    }
    let elements = t.elements();
    let candidates: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|i| {
            elements
                .iter()
                .filter(|y| t.is_killed_by(y, t.factors[i]) && t.q(y) == t.num[i][i])
                .cloned()
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(m);
    let mut nodes = 0u64;
    fn rec(
        t: &Table,
        cands: &[Vec<Vec<u64>>],
        images: &mut Vec<Vec<u64>>,
        out: &mut Vec<Vec<Vec<u64>>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        let i = images.len();
        if i == t.m() {
            out.push(images.clone());
            return Ok(());
        }
        for c in &cands[i] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded(*nodes));
            }
            if (0..i).all(|j| t.b(c, &images[j]) == t.num[i][j]) {
                images.push(c.clone());
                rec(t, cands, images, out, nodes, budget)?;
                images.pop();
            }
        }
        Ok(())
    }
    rec(&t, &candidates, &mut images, &mut out, &mut nodes, node_budget)?;
    Ok(out)
}

/// JSON form `{ "factors": [int], "q": [["p/q"]] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormJson {
    pub factors: Vec<crate::json::JsonInt>,
    pub q: Vec<Vec<String>>,
}

impl FormJson {
    pub fn from_form(f: &FiniteQuadraticForm) -> Self {
        FormJson {
            factors: f.factors.iter().map(crate::json::JsonInt::from).collect(),
            q: f.q
                .iter()
                .map(|r| r.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect())
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<FiniteQuadraticForm> {
        let q: Result<RatRows> = self
            .q
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect())
            .collect();
        FiniteQuadraticForm::new(self.factors.iter().map(|x| x.0.clone()).collect(), q?)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("'{s}' is not a rational 'p/q'"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() || q.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, rescale};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(bi(n), bi(d))
    }

    fn e8_minus() -> GramLattice {
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        // E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            g[a][b] = 1;
            g[b][a] = 1;
        }
        GramLattice::from_i64(&g).unwrap()
    }

    fn z2(q: BigRational) -> FiniteQuadraticForm {
        FiniteQuadraticForm::new(vec![bi(2)], vec![vec![q]]).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        let u = GramLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(discriminant_form(&u).is_trivial());

        let a1 = GramLattice::diagonal(&[-2]).unwrap();
        let f = discriminant_form(&a1);
        assert_eq!(f.factors(), &[bi(2)]);
        assert_eq!(f.values()[0][0], rat(3, 2));

        assert!(discriminant_form(&e8_minus()).is_trivial());
    }

    #[test]
    fn min_generators_examples() {
        assert_eq!(min_generators(&FiniteQuadraticForm::trivial()), 0);
        let l = GramLattice::diagonal(&[2, 2, 2, 2, 2, 2]).unwrap();
        assert_eq!(min_generators(&discriminant_form(&l)), 6);
        let l = GramLattice::diagonal(&[2, 4, 6]).unwrap();
        // Z/2 + Z/4 + Z/6 = Z/2 + Z/2 + Z/12
        let f = discriminant_form(&l);
        assert_eq!(f.factors(), &[bi(2), bi(2), bi(12)]);
        assert_eq!(min_generators(&f), 3);
    }

    #[test]
    fn milgram_examples() {
        assert_eq!(milgram_signature(&FiniteQuadraticForm::trivial()), 0);
        let two = GramLattice::diagonal(&[2]).unwrap();
        assert_eq!(milgram_signature(&discriminant_form(&two)), 1);
        assert_eq!(milgram_signature(&discriminant_form(&e8_minus())), 0);
        let a1 = GramLattice::diagonal(&[-2]).unwrap();
        assert_eq!(milgram_signature(&discriminant_form(&a1)), 7);
    }

    #[test]
    fn coordinates_of_generators() {
        let l = GramLattice::from_i64(&[vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap();
        let d = DiscriminantGroup::new(&l);
        for (i, g) in d.generators.iter().enumerate() {
            let c = d.coordinates(g).unwrap();
            let mut e = vec![bi(0); d.form.factors().len()];
            e[i] = bi(1);
            assert_eq!(c, e);
        }
        // lattice vectors map to zero
        let v = vec![rat(1, 1), rat(-2, 1), rat(3, 1)];
        assert!(d.coordinates(&v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn isomorphism_examples() {
        let opts = SearchOptions::default();
        let a = z2(rat(1, 2));
        match fqf_isomorphic(&a, &a, &opts) {
            FormIsomorphism::Yes(m) => assert_eq!(m.images, vec![vec![bi(1)]]),
            other => panic!("expected Yes, got {other:?}"),
        }
        let b = z2(rat(3, 2));
        assert_eq!(
            fqf_isomorphic(&a, &b, &opts),
            FormIsomorphism::No(Witness::ValueMultiset)
        );
        let c = FiniteQuadraticForm::new(vec![bi(4)], vec![vec![rat(1, 4)]]).unwrap();
        assert!(matches!(
            fqf_isomorphic(&a, &c, &opts),
            FormIsomorphism::No(Witness::Order { .. })
        ));
    }

    #[test]
    fn isomorphism_across_bases() {
        // <2> + <-2> versus U(2): both (Z/2)^2 but with different q
        let l1 = GramLattice::diagonal(&[2, -2]).unwrap();
        let l2 = GramLattice::from_i64(&[vec![0, 2], vec![2, 0]]).unwrap();
        let opts = SearchOptions::default();
        let r = fqf_isomorphic(&discriminant_form(&l1), &discriminant_form(&l2), &opts);
        assert!(matches!(r, FormIsomorphism::No(_)));
        // the same lattice on a different basis gives an isomorphic form
        let l3 = GramLattice::from_i64(&[vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap();
        let p = IntMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1]]);
        let l4 = l3.change_basis(&p).unwrap();
        let r = fqf_isomorphic(&discriminant_form(&l3), &discriminant_form(&l4), &opts);
        match r {
            FormIsomorphism::Yes(m) => {
                assert!(verify_map(&discriminant_form(&l3), &discriminant_form(&l4), &m))
            }
            other => panic!("expected Yes, got {other:?}"),
        }
    }

    #[test]
    fn negation_matches_rescale() {
        let l = GramLattice::from_i64(&[vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, -6]]).unwrap();
        let neg = rescale(&l, -1).unwrap();
        assert_eq!(discriminant_form(&neg), discriminant_form(&l).negate());
    }

    #[test]
    fn values_respect_polarization() {
        let l = direct_sum(
            &GramLattice::from_i64(&[vec![2, 1], vec![1, 4]]).unwrap(),
            &GramLattice::diagonal(&[-6]).unwrap(),
        );
        let f = discriminant_form(&l);
        let t = f.table().unwrap();
        let els = t.elements();
        for x in &els {
            for y in &els {
                let sum: Vec<u64> = t.combine(&[1, 1], &[x.clone(), y.clone()]);
                let lhs = (t.q(&sum) - t.q(x) - t.q(y)).rem_euclid(2 * t.den);
                assert_eq!(lhs, (2 * t.b(x, y)).rem_euclid(2 * t.den));
            }
        }
    }

    #[test]
    fn invalid_forms_rejected() {
        assert!(FiniteQuadraticForm::new(vec![bi(2)], vec![vec![rat(1, 3)]]).is_err());
        assert!(FiniteQuadraticForm::new(vec![bi(4), bi(2)], vec![vec![rat(0, 1); 2]; 2]).is_err());
        assert!(FiniteQuadraticForm::new(vec![bi(1)], vec![vec![rat(0, 1)]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = GramLattice::diagonal(&[2, -4]).unwrap();
        let f = discriminant_form(&l);
        let j = FormJson::from_form(&f);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"factors":[2,4],"q":[["1/2","0/1"],["0/1","7/4"]]}"#);
        let back: FormJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_form().unwrap(), f);
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
    }

    #[test]
    fn automorphisms_of_small_forms() {
        // (Z/2)^2 with q = (3/2, 3/2): only the swap and the identity
        let l = GramLattice::diagonal(&[-2, -2]).unwrap();
        let f = discriminant_form(&l);
        let all = all_automorphisms(&f, 1000, 1 << 10).unwrap();
        assert_eq!(all.len(), 2);
        // U(2): q = (0, 0) on generators, b = 1/2; swap and identity again
        let u2 = GramLattice::from_i64(&[vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(
            all_automorphisms(&discriminant_form(&u2), 1000, 1 << 10).unwrap().len(),
            2
        );
    }
}
