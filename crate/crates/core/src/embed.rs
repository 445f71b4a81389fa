//! Search for primitive embeddings of a lattice into a decomposable ambient.
//!
//! The ambient Gram matrix is split into orthogonal blocks. Indefinite
//! blocks (hyperbolic planes in practice) contribute a box of coordinate
//! vectors `|x_i| <= box_bound`; definite blocks contribute all vectors of
//! absolute norm at most `definite_bound`. A candidate image is one
//! indefinite part plus one definite part, and the two halves are matched
//! through a hash of their norms and pairings with the images already
//! placed. Partial assignments are pruned as soon as they stop spanning a
//! primitive sublattice: a subset of a basis of a primitive sublattice is
//! itself primitive.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, signature_of_gram, Embedding, GramLattice};
use crate::linalg::IntMatrix;

#[derive(Clone, Copy, Debug)]
pub struct EmbeddingOptions {
    /// Coordinate bound for the indefinite blocks, `|a|, |b| <= box_bound`.
    pub box_bound: i64,
    /// Largest `|v^2|` for the definite part of a candidate.
    pub definite_bound: i64,
    pub node_budget: u64,
    pub restarts: u32,
    pub seed: u64,
}

impl Default for EmbeddingOptions {
    fn default() -> Self {
        EmbeddingOptions {
            box_bound: 4,
            definite_bound: 4,
            node_budget: 200_000,
            restarts: 4,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub enum EmbeddingOutcome {
    Found {
        embedding: Embedding,
        nodes: u64,
        restart: u32,
    },
    NotFound {
        nodes: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub restart: u32,
}

/// Largest box the indefinite part may produce.
const MAX_BOX: u64 = 2_000_000;

struct Halves {
    n: usize,
    g: Vec<Vec<i64>>,
    hyp: Vec<usize>,
    def: Vec<usize>,
    hparts: Vec<Vec<i64>>,
    hnorm: Vec<i64>,
    dparts: Vec<Vec<i64>>,
    dnorm: Vec<i64>,
}

fn components(g: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..n {
                if w != v && g[v][w] != 0 && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

fn sub_gram(g: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| idx.iter().map(|&j| g[i][j]).collect()).collect()
}

fn quad(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut acc = 0;
    for i in 0..x.len() {
        if x[i] != 0 {
            acc += x[i] * g[i].iter().zip(x).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    acc
}

impl Halves {
    fn new(ambient: &GramLattice, opts: &EmbeddingOptions) -> Result<Self> {
        let g = ambient
            .gram()
            .to_i64()
            .ok_or_else(|| Error::InconsistentInput("ambient Gram entries exceed 64 bits".into()))?;
        let n = g.len();
        let mut hyp = Vec::new();
        let mut def = Vec::new();
        // majorant of the definite part: each block made positive
        let mut def_sign = Vec::new();
        for block in components(&g) {
            let sig = signature_of_gram(&IntMatrix::from_i64(&sub_gram(&g, &block)))?;
            if sig.is_positive_definite() {
                def.extend(&block);
                def_sign.extend(std::iter::repeat_n(1, block.len()));
            } else if sig.is_negative_definite() {
                def.extend(&block);
                def_sign.extend(std::iter::repeat_n(-1, block.len()));
            } else {
                hyp.extend(&block);
            }
        }
        let side = (2 * opts.box_bound + 1) as u64;
        let count = side.checked_pow(hyp.len() as u32).unwrap_or(u64::MAX);
        if count > MAX_BOX {
            return Err(Error::InconsistentInput(format!(
                "indefinite part of rank {} gives {count} box vectors at bound {}",
                hyp.len(),
                opts.box_bound
            )));
        }
        let hg = sub_gram(&g, &hyp);
        let mut hparts = Vec::with_capacity(count as usize);
        let mut x = vec![-opts.box_bound; hyp.len()];
        for _ in 0..count {
            hparts.push(x.clone());
            for c in x.iter_mut() {
                *c += 1;
                if *c <= opts.box_bound {
                    break;
                }
                *c = -opts.box_bound;
            }
        }
        hparts.sort_by_key(|v| (v.iter().map(|a| a.abs()).sum::<i64>(), v.clone()));
        let hnorm = hparts.iter().map(|v| quad(&hg, v)).collect();

        let dg = sub_gram(&g, &def);
        let major: Vec<Vec<i64>> = dg
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|x| x * def_sign[i]).collect())
            .collect();
        let mut dparts = vec![vec![0i64; def.len()]];
        if !def.is_empty() {
            let major_lattice = GramLattice::new_odd(IntMatrix::from_i64(&major))?;
            for sv in crate::isometry::short_vectors(&major_lattice, opts.definite_bound)? {
                let neg: Vec<i64> = sv.coords.iter().map(|a| -a).collect();
                dparts.push(sv.coords);
                dparts.push(neg);
            }
        }
        let dnorm = dparts.iter().map(|v| quad(&dg, v)).collect();
        Ok(Halves {
            n,
            g,
            hyp,
            def,
            hparts,
            hnorm,
            dparts,
            dnorm,
        })
    }

    fn assemble(&self, h: usize, d: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.n];
        for (c, &i) in self.hyp.iter().enumerate() {
            v[i] = self.hparts[h][c];
        }
        for (c, &i) in self.def.iter().enumerate() {
            v[i] = self.dparts[d][c];
        }
        v
    }

    /// Pairings of every indefinite and definite part with `w`.
    fn pairings(&self, w: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let gw: Vec<i64> = (0..self.n)
            .map(|i| self.g[i].iter().zip(w).map(|(a, b)| a * b).sum())
            .collect();
        let hw: Vec<i64> = self.hyp.iter().map(|&i| gw[i]).collect();
        let dw: Vec<i64> = self.def.iter().map(|&i| gw[i]).collect();
        let hp = self
            .hparts
            .iter()
            .map(|v| v.iter().zip(&hw).map(|(a, b)| a * b).sum())
            .collect();
        let dp = self
            .dparts
            .iter()
            .map(|v| v.iter().zip(&dw).map(|(a, b)| a * b).sum())
            .collect();
        (hp, dp)
    }
}

/// True when the rows span a primitive sublattice of full row rank: a
/// diagonalization by unimodular row and column moves has all entries ±1.
pub(crate) fn rows_primitive(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for p in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in p..k {
                for j in p..n {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return false;
            };
            m.swap(p, bi);
            for row in m.iter_mut() {
                row.swap(p, bj);
            }
            let piv = m[p][p];
            let mut clean = true;
            for i in p + 1..k {
                let q = m[i][p] / piv;
                if q != 0 {
                    for j in p..n {
                        m[i][j] -= q * m[p][j];
                    }
                }
                clean &= m[i][p] == 0;
            }
            for j in p + 1..n {
                let q = m[p][j] / piv;
                if q != 0 {
                    for row in m.iter_mut().skip(p) {
                        row[j] -= q * row[p];
                    }
                }
                clean &= m[p][j] == 0;
            }
            if clean {
                break;
            }
        }
        if m[p][p].abs() != 1 {
            return false;
        }
    }
    true
}

fn key(norm: i64, sig: impl Iterator<Item = i64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ (norm as u64);
    for s in sig {
        h = (h ^ s as u64).wrapping_mul(0x100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

struct Search<'a> {
    halves: &'a Halves,
    sub: Vec<Vec<i64>>,
    order: Vec<usize>,
    hperm: Vec<u32>,
    dperm: Vec<u32>,
    /// Per placed depth: pairings of every part with that image.
    hpair: Vec<Vec<i64>>,
    dpair: Vec<Vec<i64>>,
    images: Vec<Vec<i64>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, t: usize) -> std::result::Result<bool, ()> {
        if t == self.order.len() {
            return Ok(true);
        }
        let hv = self.halves;
        let i = self.order[t];
        let norm = self.sub[i][i];
        let targets: Vec<i64> = (0..t).map(|j| self.sub[i][self.order[j]]).collect();
        let mut table: HashMap<u64, Vec<u32>> = HashMap::new();
        for &d in &self.dperm {
            let d = d as usize;
            let k = key(hv.dnorm[d], (0..t).map(|j| self.dpair[j][d]));
            table.entry(k).or_default().push(d as u32);
        }
        for hi in 0..self.hperm.len() {
            let h = self.hperm[hi] as usize;
            let need = norm - hv.hnorm[h];
            let k = key(need, (0..t).map(|j| targets[j] - self.hpair[j][h]));
            let Some(ds) = table.get(&k) else { continue };
            for &d in ds {
                let d = d as usize;
                if hv.dnorm[d] != need || (0..t).any(|j| self.dpair[j][d] + self.hpair[j][h] != targets[j]) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(());
                }
                let v = hv.assemble(h, d);
                self.images.push(v);
                if rows_primitive(&self.images) {
                    let (hp, dp) = hv.pairings(self.images.last().unwrap());
                    self.hpair.push(hp);
                    self.dpair.push(dp);
                    let done = self.run(t + 1)?;
                    if done {
                        return Ok(true);
                    }
                    self.hpair.pop();
                    self.dpair.pop();
                }
                self.images.pop();
            }
        }
        Ok(false)
    }
}

/// Order in which the basis of `sub` is placed: positive norms first (they
/// need the indefinite part and have few candidates), then greedily the
/// vector with most nonzero pairings into what is already placed.
fn placement_order(sub: &[Vec<i64>]) -> Vec<usize> {
    let n = sub.len();
    let mut order = Vec::with_capacity(n);
    let mut left: Vec<usize> = (0..n).collect();
    while !left.is_empty() {
        let best = *left
            .iter()
            .max_by_key(|&&i| {
                let links = order.iter().filter(|&&j: &&usize| sub[i][j] != 0).count();
                (sub[i][i] > 0, links, std::cmp::Reverse(i))
            })
            .unwrap();
        order.push(best);
        left.retain(|&i| i != best);
    }
    order
}

/// Searches for a primitive embedding of `sub` (on its given basis) into
/// `ambient`.
pub fn find_primitive_embedding(
    sub: &GramLattice,
    ambient: &GramLattice,
    opts: &EmbeddingOptions,
) -> Result<EmbeddingOutcome> {
    let (ss, sa) = (sub.signature(), ambient.signature());
    if sub.rank() > ambient.rank() || ss.positive > sa.positive || ss.negative > sa.negative {
        return Err(Error::SignatureObstruction(format!(
            "signature {ss} does not fit into {sa}"
        )));
    }
    let halves = Halves::new(ambient, opts)?;
    let subg = sub
        .gram()
        .to_i64()
        .ok_or_else(|| Error::InconsistentInput("Gram entries exceed 64 bits".into()))?;
    let order = placement_order(&subg);
    let restarts = opts.restarts.max(1);
    let per_restart = (opts.node_budget / restarts as u64).max(1);
    let mut total = 0u64;
    for r in 0..restarts {
        let mut hperm: Vec<u32> = (0..halves.hparts.len() as u32).collect();
        let mut dperm: Vec<u32> = (0..halves.dparts.len() as u32).collect();
        if r > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9e37_79b9).wrapping_add(r as u64));
            hperm.shuffle(&mut rng);
            dperm.shuffle(&mut rng);
            // keep light indefinite parts first
            let weight = |h: u32| halves.hparts[h as usize].iter().map(|a| a.abs()).sum::<i64>();
            hperm.sort_by_key(|&h| weight(h));
        }
        let mut search = Search {
            halves: &halves,
            sub: subg.clone(),
            order: order.clone(),
            hperm,
            dperm,
            hpair: Vec::new(),
            dpair: Vec::new(),
            images: Vec::new(),
            nodes: 0,
            budget: per_restart,
        };
        let result = search.run(0);
        total += search.nodes;
        if let Ok(true) = result {
            let mut rows = vec![Vec::new(); order.len()];
            for (t, &i) in order.iter().enumerate() {
                rows[i] = search.images[t].clone();
            }
            let basis = IntMatrix::from_i64(&rows);
            let embedding = Embedding::new(ambient.clone(), basis)?;
            debug_assert_eq!(&embedding.induced_gram(), sub.gram());
            debug_assert!(is_primitive(&embedding));
            return Ok(EmbeddingOutcome::Found {
                embedding,
                nodes: total,
                restart: r,
            });
        }
    }
    Ok(EmbeddingOutcome::NotFound { nodes: total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_todorov_lattice, e8_minus, k3_lattice, TodorovSpec};
    use crate::forms::{discriminant_form, fqf_isomorphic, SearchOptions};
    use crate::lattice::{orthogonal_complement, Signature};
    use proptest::prelude::*;

    fn found(o: EmbeddingOutcome) -> Embedding {
        match o {
            EmbeddingOutcome::Found { embedding, .. } => embedding,
            EmbeddingOutcome::NotFound { nodes } => panic!("not found after {nodes} nodes"),
        }
    }

    #[test]
    fn root_into_e8() {
        let a1 = GramLattice::diagonal(&[-2]).unwrap();
        let e = found(find_primitive_embedding(&a1, &e8_minus(), &EmbeddingOptions::default()).unwrap());
        assert_eq!(e.sublattice().unwrap().gram(), a1.gram());
        assert!(is_primitive(&e));
    }

    #[test]
    fn positive_into_negative_definite() {
        let l = GramLattice::diagonal(&[4]).unwrap();
        assert!(matches!(
            find_primitive_embedding(&l, &e8_minus(), &EmbeddingOptions::default()),
            Err(Error::SignatureObstruction(_))
        ));
    }

    #[test]
    fn imprimitive_images_are_skipped() {
        // <-8> sits in E8(-1) both as 2r (imprimitive) and primitively
        let l = GramLattice::diagonal(&[-8]).unwrap();
        let opts = EmbeddingOptions {
            definite_bound: 8,
            ..EmbeddingOptions::default()
        };
        let e = found(find_primitive_embedding(&l, &e8_minus(), &opts).unwrap());
        assert!(is_primitive(&e));
    }

    #[test]
    fn primitivity_oracle() {
        assert!(rows_primitive(&[vec![2, 1]]));
        assert!(!rows_primitive(&[vec![2, 4]]));
        assert!(!rows_primitive(&[vec![1, 1, 0], vec![1, -1, 0]]));
        assert!(rows_primitive(&[vec![1, 1, 0], vec![0, 1, 1]]));
        assert!(!rows_primitive(&[vec![1, 2], vec![2, 4]]));
    }

    #[test]
    fn todorov_lattices_embed_into_k3() {
        let k3 = k3_lattice();
        for (k, sig) in [(9, Signature::new(2, 10)), (10, Signature::new(2, 9))] {
            let m = build_todorov_lattice(&TodorovSpec::reference(0, k).unwrap()).unwrap();
            let e = found(find_primitive_embedding(&m.lattice, &k3, &EmbeddingOptions::default()).unwrap());
            assert!(is_primitive(&e));
            assert_eq!(&e.induced_gram(), m.lattice.gram());
            let t = orthogonal_complement(&e).sublattice().unwrap();
            assert_eq!(t.signature(), sig);
            let iso = fqf_isomorphic(
                &discriminant_form(&t),
                &discriminant_form(&m.lattice).negate(),
                &SearchOptions::default(),
            );
            assert!(iso.is_yes(), "{iso:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Oracle: primitivity of a single row is gcd = 1; of a pair, the
        /// gcd of its 2x2 minors is 1.
        #[test]
        fn primitivity_matches_minors(a in prop::collection::vec(-6i64..=6, 4), b in prop::collection::vec(-6i64..=6, 4)) {
            use num_integer::Integer;
            let g1 = a.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            prop_assert_eq!(rows_primitive(std::slice::from_ref(&a)), g1 == 1);
            let mut g2 = 0i64;
            for i in 0..4 {
                for j in i + 1..4 {
                    g2 = g2.gcd(&(a[i] * b[j] - a[j] * b[i]));
                }
            }
            prop_assert_eq!(rows_primitive(&[a, b]), g2 == 1);
        }
    }
}
