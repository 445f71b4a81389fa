//! Short vectors, isometries and automorphism groups of definite lattices.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{all_automorphisms, verify_map, DiscriminantGroup, FormMap, Table};
use crate::json::{matrix_to_json, JsonInt};
use crate::lattice::GramLattice;
use crate::linalg::{unimodular_inverse, IntMatrix};

type Matrix = Vec<Vec<i64>>;

/// Default largest rank accepted by [`automorphism_group`].
pub const DEFAULT_MAX_RANK: usize = 16;

/// A nonzero lattice vector and its norm `v^2` (negative on a
/// negative-definite lattice).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: i64,
}

/// `+1` for positive-definite, `-1` for negative-definite.
fn definite_sign(l: &GramLattice) -> Result<i64> {
    let s = l.signature();
    if l.rank() == 0 || s.is_positive_definite() {
        Ok(1)
    } else if s.is_negative_definite() {
        Ok(-1)
    } else {
        Err(Error::NotDefinite)
    }
}

fn gram_i64(g: &IntMatrix, sign: i64) -> Result<Vec<Vec<i64>>> {
    let rows = g
        .to_i64()
        .ok_or_else(|| Error::InconsistentInput("Gram entries exceed 64 bits".into()))?;
    Ok(rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * sign).collect())
        .collect())
}

fn norm_i64(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut acc = 0i64;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        let mut row = 0i64;
        for j in 0..x.len() {
            row += g[i][j] * x[j];
        }
        acc += x[i] * row;
    }
    acc
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Fincke-Pohst: nonzero `x` with `x^T g x <= bound` for positive-definite
/// `g`, one of each `±x` pair (the last nonzero coordinate is positive).
fn fincke_pohst(g: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    if n == 0 || bound <= 0 {
        return Vec::new();
    }
    // q[i][i] > 0 and q[i][j] (j > i) with x^T g x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    let mut q: Vec<Vec<BigRational>> = g.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(
        i: usize,
        remaining: BigRational,
        all_zero_above: bool,
        q: &[Vec<BigRational>],
        x: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = x.len();
        let mut center = BigRational::zero();
        for j in i + 1..n {
            if x[j] != 0 {
                center -= &q[i][j] * rat(x[j]);
            }
        }
        let r = &remaining / &q[i][i];
        let fits = |v: i64| {
            let d = rat(v) - &center;
            &d * &d <= r
        };
        let c = center.to_f64().unwrap_or(0.0);
        let s = r.to_f64().unwrap_or(0.0).max(0.0).sqrt();
        let mut lo = (c - s).floor() as i64 - 1;
        let mut hi = (c + s).ceil() as i64 + 1;
        if all_zero_above {
            lo = lo.max(0);
        }
        while lo <= hi && !fits(lo) {
            lo += 1;
        }
        while hi >= lo && !fits(hi) {
            hi -= 1;
        }
        for v in lo..=hi {
            x[i] = v;
            let d = rat(v) - &center;
            let rest = &remaining - &q[i][i] * &d * &d;
            if i == 0 {
                if x.iter().any(|&a| a != 0) {
                    out.push(x.clone());
                }
            } else {
                rec(i - 1, rest, all_zero_above && v == 0, q, x, out);
            }
        }
        x[i] = 0;
    }
    rec(n - 1, rat(bound), true, &q, &mut x, &mut out);
    out
}

fn normalize_sign(v: &mut [i64]) {
    if let Some(&first) = v.iter().find(|&&a| a != 0) {
        if first < 0 {
            v.iter_mut().for_each(|a| *a = -*a);
        }
    }
}

/// All nonzero vectors with `|v^2| <= norm_bound`, one per `±v` pair with
/// the first nonzero coordinate positive, in lexicographic order.
pub fn short_vectors(l: &GramLattice, norm_bound: i64) -> Result<Vec<ShortVector>> {
    let sign = definite_sign(l)?;
    let g = gram_i64(l.gram(), sign)?;
    let mut out: Vec<ShortVector> = fincke_pohst(&g, norm_bound)
        .into_iter()
        .map(|mut v| {
            normalize_sign(&mut v);
            let norm = sign * norm_i64(&g, &v);
            ShortVector { coords: v, norm }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// LLL reduction (`delta = 3/4`) of a definite lattice. Returns the
/// unimodular transform `t` (rows: new basis in old coordinates) and the
/// reduced lattice `t G t^T`.
pub fn lll_reduce(l: &GramLattice) -> Result<(IntMatrix, GramLattice)> {
    let sign = definite_sign(l)?;
    let n = l.rank();
    let mut h: Vec<Vec<BigInt>> = l.gram().to_rows();
    if sign < 0 {
        h.iter_mut().flatten().for_each(|x| *x = -x.clone());
    }
    let mut t: Vec<Vec<BigInt>> = IntMatrix::identity(n).to_rows();
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    let gso = |h: &Vec<Vec<BigInt>>| {
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut b = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in 0..i {
                let mut s = BigRational::from_integer(h[i][j].clone());
                for k in 0..j {
                    s -= &mu[j][k] * &mu[i][k] * &b[k];
                }
                mu[i][j] = s / &b[j];
            }
            let mut s = BigRational::from_integer(h[i][i].clone());
            for k in 0..i {
                s -= &mu[i][k] * &mu[i][k] * &b[k];
            }
            b[i] = s;
        }
        (mu, b)
    };

    let mut k = 1;
    while k < n {
        let (mut mu, _) = gso(&h);
        for j in (0..k).rev() {
            if mu[k][j].abs() <= half {
                continue;
            }
            let r = mu[k][j].round().to_integer();
            // b_k -= r b_j
            for c in 0..n {
                let v = &r * &t[j][c];
                t[k][c] -= v;
            }
            for c in 0..n {
                let v = &r * &h[j][c];
                h[k][c] -= v;
            }
            for c in 0..n {
                let v = &r * &h[c][j];
                h[c][k] -= v;
            }
            let rr = BigRational::from_integer(r);
            for c in 0..j {
                let v = &rr * &mu[j][c];
                mu[k][c] -= v;
            }
            mu[k][j] -= rr;
        }
        let (mu, b) = gso(&h);
        if b[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1] {
            k += 1;
        } else {
            t.swap(k, k - 1);
            h.swap(k, k - 1);
            for row in h.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    let t = IntMatrix::from_rows(t, n)?;
    let reduced = l.change_basis(&t)?;
    Ok((t, reduced))
}

/// A lattice automorphism; column `j` of `matrix` is the image of basis
/// vector `j`, so `matrix^T G matrix = G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(l: &GramLattice, matrix: IntMatrix) -> Result<Self> {
        let n = l.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a rank-{n} lattice",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let lhs = matrix.transpose().try_mul(l.gram())?.try_mul(&matrix)?;
        if &lhs != l.gram() {
            return Err(Error::InconsistentInput(
                "matrix does not preserve the Gram matrix".into(),
            ));
        }
        Ok(Isometry { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Isometry {
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }
}

impl Serialize for Isometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_json(&self.matrix).serialize(s)
    }
}

impl PartialOrd for IntMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows(), self.cols(), self.entries()).cmp(&(other.rows(), other.cols(), other.entries()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismGroup {
    pub generators: Vec<Isometry>,
    #[serde(serialize_with = "ser_big")]
    pub order: BigInt,
    /// Basic orbit lengths of the stabilizer chain; their product is the order.
    pub orbit_lengths: Vec<u64>,
    pub nodes: u64,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    JsonInt(x.clone()).serialize(s)
}

#[derive(Clone, Copy, Debug)]
pub struct AutomorphismOptions {
    pub node_budget: u64,
    pub max_rank: usize,
    pub reduce: bool,
}

impl Default for AutomorphismOptions {
    fn default() -> Self {
        AutomorphismOptions {
            node_budget: crate::forms::DEFAULT_NODE_BUDGET,
            max_rank: DEFAULT_MAX_RANK,
            reduce: true,
        }
    }
}

/// Backtracking state over a positive-definite Gram matrix.
struct AutSearch {
    g: Vec<Vec<i64>>,
    vectors: Vec<Vec<i64>>,
    /// `g * v` for each vector, for fast pairings.
    gv: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Candidate images of each basis vector.
    cands: Vec<Vec<usize>>,
    /// Order in which basis vectors are assigned.
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl AutSearch {
    fn new(g: Vec<Vec<i64>>, budget: u64) -> Self {
        let n = g.len();
        let max_norm = (0..n).map(|i| g[i][i]).max().unwrap_or(0);
        let mut vectors = Vec::new();
        for v in fincke_pohst(&g, max_norm) {
            let neg: Vec<i64> = v.iter().map(|a| -a).collect();
            vectors.push(v);
            vectors.push(neg);
        }
        vectors.sort();
        let gv: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| (0..n).map(|i| dot(&g[i], v)).collect())
            .collect();
        let index: HashMap<Vec<i64>, usize> = vectors.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let norms: Vec<i64> = vectors.iter().zip(&gv).map(|(v, w)| dot(v, w)).collect();

        // Fingerprint of x standing in for basis vector i: for each basis
        // vector j, how many vectors of norm g_jj pair with x as b_i pairs
        // with b_j. Built from one histogram of (norm, pairing) per vector.
        let mut diag_norms: Vec<i64> = (0..n).map(|i| g[i][i]).collect();
        diag_norms.sort();
        diag_norms.dedup();
        let relevant: Vec<usize> = (0..vectors.len())
            .filter(|&k| diag_norms.binary_search(&norms[k]).is_ok())
            .collect();
        // |x.y| <= max_norm for vectors of norm <= max_norm
        let width = (2 * max_norm + 1) as usize;
        let slot = |nm: i64, p: i64| diag_norms.binary_search(&nm).unwrap() * width + (p + max_norm) as usize;
        // vectors come in ±pairs: count over representatives and mirror
        let positive = |k: usize| vectors[k].iter().find(|&&a| a != 0).is_some_and(|&a| a > 0);
        let reps: Vec<usize> = relevant.iter().copied().filter(|&k| positive(k)).collect();
        let mut hist: HashMap<usize, Vec<u32>> = HashMap::new();
        for &x in &reps {
            let mut h = vec![0u32; diag_norms.len() * width];
            for &y in &reps {
                let p = dot(&gv[y], &vectors[x]);
                h[slot(norms[y], p)] += 1;
                h[slot(norms[y], -p)] += 1;
            }
            let neg: Vec<i64> = vectors[x].iter().map(|a| -a).collect();
            let mut mirrored = vec![0u32; h.len()];
            for (nm, _) in diag_norms.iter().enumerate() {
                for p in 0..width {
                    mirrored[nm * width + p] = h[nm * width + (width - 1 - p)];
                }
            }
            hist.insert(index[&neg], mirrored);
            hist.insert(x, h);
        }
        let fingerprint =
            |x: usize, i: usize| -> Vec<u32> { (0..n).map(|j| hist[&x][slot(g[j][j], g[i][j])]).collect() };
        let by_norm: HashMap<i64, Vec<usize>> = {
            let mut m: HashMap<i64, Vec<usize>> = HashMap::new();
            for &k in &relevant {
                m.entry(norms[k]).or_default().push(k);
            }
            m
        };
        let index: HashMap<Vec<i64>, usize> = index;
        let mut cands = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            let target = fingerprint(index[&e], i);
            let c: Vec<usize> = by_norm[&g[i][i]]
                .iter()
                .copied()
                .filter(|&k| fingerprint(k, i) == target)
                .collect();
            cands.push(c);
        }
        // most constrained first, then greedily prefer vectors that pair
        // nontrivially with those already placed
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut left: Vec<usize> = (0..n).collect();
        while !left.is_empty() {
            let best = *left
                .iter()
                .min_by_key(|&&i| {
                    let linked = order.iter().filter(|&&j| g[i][j] != 0).count();
                    (cands[i].len(), usize::MAX - linked, i)
                })
                .unwrap();
            order.push(best);
            left.retain(|&i| i != best);
        }
        AutSearch {
            g,
            vectors,
            gv,
            index,
            cands,
            order,
            nodes: 0,
            budget,
        }
    }

    fn n(&self) -> usize {
        self.g.len()
    }

    /// Completes `images` (indexed by basis vector) from depth `depth` of
    /// the assignment order, with forward checking.
    fn extend(&mut self, depth: usize, images: &mut [usize], lists: Vec<Vec<usize>>) -> Result<bool> {
        let n = self.n();
        if depth == n {
            return Ok(true);
        }
        let i = self.order[depth];
        for &x in &lists[depth] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.nodes));
            }
            let mut next = lists.clone();
            let mut dead = false;
            for (d, list) in next.iter_mut().enumerate().skip(depth + 1) {
                let f = self.order[d];
                let want = self.g[i][f];
                let gvx = &self.gv[x];
                list.retain(|&y| dot(gvx, &self.vectors[y]) == want);
                if list.is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            images[i] = x;
            if self.extend(depth + 1, images, next)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Candidate lists for the order positions after fixing the first
    /// `fixed.len()` positions to the given vector indices.
    fn lists_after(&self, fixed: &[usize]) -> Option<Vec<Vec<usize>>> {
        let n = self.n();
        let mut lists: Vec<Vec<usize>> = self.order.iter().map(|&i| self.cands[i].clone()).collect();
        for (d, &x) in fixed.iter().enumerate() {
            let i = self.order[d];
            lists[d] = vec![x];
            for (e, list) in lists.iter_mut().enumerate().skip(d + 1) {
                let f = self.order[e];
                let want = self.g[i][f];
                list.retain(|&y| dot(&self.gv[x], &self.vectors[y]) == want);
            }
            if lists[d + 1..n].iter().any(|l| l.is_empty()) {
                return None;
            }
        }
        Some(lists)
    }

    fn to_matrix(&self, images: &[usize]) -> Vec<Vec<i64>> {
        let n = self.n();
        // column i = image of e_i
        (0..n)
            .map(|r| (0..n).map(|c| self.vectors[images[c]][r]).collect())
            .collect()
    }

    fn basis_index(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.n()];
        e[i] = 1;
        self.index[&e]
    }

    fn orbit(&self, start: usize, gens: &[Vec<Vec<i64>>]) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for m in gens {
                let w: Vec<i64> = m.iter().map(|row| dot(row, &self.vectors[v])).collect();
                let k = self.index[&w];
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        seen
    }

    /// Stabilizer chain along the assignment order. Returns generators
    /// (as matrices) and basic orbit lengths.
    fn run(&mut self) -> Result<(Vec<Matrix>, Vec<u64>)> {
        let n = self.n();
        let base: Vec<usize> = self.order.iter().map(|&i| self.basis_index(i)).collect();
        let mut gens: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut lengths = vec![1u64; n];
        for t in (0..n).rev() {
            let Some(lists) = self.lists_after(&base[..t]) else {
                unreachable!("identity always extends");
            };
            let candidates = lists[t].clone();
            let mut orbit = self.orbit(base[t], &gens);
            let mut rejected: HashSet<usize> = HashSet::new();
            for x in candidates {
                if orbit.contains(&x) || rejected.contains(&x) {
                    continue;
                }
                let mut fixed = base[..t].to_vec();
                fixed.push(x);
                let found = match self.lists_after(&fixed) {
                    None => false,
                    Some(lists) => {
                        let mut images = vec![0usize; n];
                        for (d, &v) in fixed.iter().enumerate() {
                            images[self.order[d]] = v;
                        }
                        if self.extend(t + 1, &mut images, lists)? {
                            gens.push(self.to_matrix(&images));
                            true
                        } else {
                            false
                        }
                    }
                };
                if found {
                    orbit = self.orbit(base[t], &gens);
                } else {
                    rejected.extend(self.orbit(x, &gens));
                }
            }
            lengths[t] = orbit.len() as u64;
        }
        Ok((gens, lengths))
    }
}

fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(m)
}

/// Generators and order of `O(L)` for a definite lattice.
pub fn automorphism_group(l: &GramLattice, opts: &AutomorphismOptions) -> Result<AutomorphismGroup> {
    let sign = definite_sign(l)?;
    let n = l.rank();
    if n > opts.max_rank {
        return Err(Error::BudgetExceeded(0));
    }
    if n == 0 {
        return Ok(AutomorphismGroup {
            generators: Vec::new(),
            order: BigInt::one(),
            orbit_lengths: Vec::new(),
            nodes: 0,
        });
    }
    let (t, work) = if opts.reduce {
        lll_reduce(l)?
    } else {
        (IntMatrix::identity(n), l.clone())
    };
    let g = gram_i64(work.gram(), sign)?;
    let mut search = AutSearch::new(g, opts.node_budget);
    let (gens, lengths) = search.run()?;
    // back to the original basis: M = t^T M' t^{-T}
    let tt = t.transpose();
    let tt_inv = unimodular_inverse(&tt)?;
    let mut generators: Vec<Isometry> = gens
        .iter()
        .map(|m| {
            let m = &(&tt * &to_int_matrix(m)) * &tt_inv;
            Isometry::new(l, m).expect("search produces isometries")
        })
        .collect();
    generators.sort();
    generators.dedup();
    let order = lengths.iter().map(|&x| BigInt::from(x)).product();
    Ok(AutomorphismGroup {
        generators,
        order,
        orbit_lengths: lengths,
        nodes: search.nodes,
    })
}

/// The automorphism of `A_L` induced by `iso`, in the generator basis of
/// `disc`.
pub fn induced_action(iso: &Isometry, disc: &DiscriminantGroup) -> FormMap {
    let images = disc
        .generators
        .iter()
        .map(|g| {
            let n = g.len();
            let img: Vec<BigRational> = (0..n)
                .map(|r| {
                    (0..n).fold(BigRational::zero(), |acc, c| {
                        acc + BigRational::from_integer(iso.matrix[(r, c)].clone()) * &g[c]
                    })
                })
                .collect();
            disc.coordinates(&img).expect("isometries preserve the dual lattice")
        })
        .collect();
    let map = FormMap { images };
    debug_assert!(verify_map(&disc.form, &disc.form, &map));
    map
}

pub fn induced_disc_action(iso: &Isometry, l: &GramLattice) -> FormMap {
    induced_action(iso, &DiscriminantGroup::new(l))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum SurjectivityVerdict {
    Surjective { image_order: u64, target_order: u64 },
    NotSurjective { image_order: u64, target_order: u64 },
    BudgetExceeded { stage: String },
}

#[derive(Clone, Copy, Debug)]
pub struct SurjectivityOptions {
    pub node_budget: u64,
    pub disc_bound: u64,
}

impl Default for SurjectivityOptions {
    fn default() -> Self {
        SurjectivityOptions {
            node_budget: crate::forms::DEFAULT_NODE_BUDGET,
            disc_bound: crate::forms::DEFAULT_ENUMERATION_BOUND,
        }
    }
}

fn flatten(images: &[Vec<u64>]) -> Vec<u64> {
    images.iter().flatten().copied().collect()
}

/// Decides whether `O(L) -> O(A_L)` is onto by comparing the subgroup
/// generated by induced actions with the full `O(A_L)`.
pub fn surjectivity_onto_disc(l: &GramLattice, opts: &SurjectivityOptions) -> Result<SurjectivityVerdict> {
    definite_sign(l)?;
    let disc = DiscriminantGroup::new(l);
    if disc.form.is_trivial() {
        return Ok(SurjectivityVerdict::Surjective {
            image_order: 1,
            target_order: 1,
        });
    }
    let target = match all_automorphisms(&disc.form, opts.node_budget, opts.disc_bound) {
        Ok(all) => all.len() as u64,
        Err(Error::BudgetExceeded(_)) => {
            return Ok(SurjectivityVerdict::BudgetExceeded {
                stage: "O(A) enumeration".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let aut_opts = AutomorphismOptions {
        node_budget: opts.node_budget,
        ..AutomorphismOptions::default()
    };
    let group = match automorphism_group(l, &aut_opts) {
        Ok(g) => g,
        Err(Error::BudgetExceeded(_)) => {
            return Ok(SurjectivityVerdict::BudgetExceeded {
                stage: "automorphism group".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let table = Table::new(&disc.form).expect("bounded group");
    let gens: Vec<Vec<Vec<u64>>> = group
        .generators
        .iter()
        .map(|iso| {
            induced_action(iso, &disc)
                .images
                .iter()
                .map(|r| r.iter().map(|x| x.to_u64().unwrap()).collect())
                .collect()
        })
        .collect();
    let m = table.m();
    let identity: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect();
    let mut seen = HashSet::from([flatten(&identity)]);
    let mut queue = VecDeque::from([identity]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            // g ∘ a
            let c: Vec<Vec<u64>> = a.iter().map(|img| table.combine(img, g)).collect();
            if seen.insert(flatten(&c)) {
                queue.push_back(c);
            }
        }
    }
    let image_order = seen.len() as u64;
    Ok(if image_order == target {
        SurjectivityVerdict::Surjective {
            image_order,
            target_order: target,
        }
    } else {
        SurjectivityVerdict::NotSurjective {
            image_order,
            target_order: target,
        }
    })
}

/// JSON list of isometry matrices.
pub fn isometries_to_json(isos: &[Isometry]) -> Vec<Vec<Vec<JsonInt>>> {
    isos.iter().map(|i| matrix_to_json(&i.matrix)).collect()
}

#[derive(Deserialize)]
struct IsometryListJson(Vec<Vec<Vec<JsonInt>>>);

/// Parses and validates a JSON list of isometry matrices against `l`.
pub fn isometries_from_json(l: &GramLattice, text: &str) -> Result<Vec<Isometry>> {
    let IsometryListJson(list) = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    list.iter()
        .map(|m| Isometry::new(l, crate::json::matrix_from_json(m, Some(l.rank()))?))
        .collect()
}
