//! Even integral lattices given by Gram matrices, and sublattices given by
//! integer coordinates inside an ambient lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, bilinear, common_denominator, determinant, hermite_normal_form, integer_kernel, inverse_rational,
    smith_normal_form, IntMatrix, RatRows,
};

/// Counts of positive and negative eigenvalues of a Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Signature { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0
    }

    pub fn is_definite(&self) -> bool {
        self.is_positive_definite() || self.is_negative_definite()
    }

    pub fn is_indefinite(&self) -> bool {
        !self.is_definite()
    }

    /// `positive - negative` reduced into `0..8`.
    pub fn mod8(&self) -> u8 {
        (self.positive as i64 - self.negative as i64).rem_euclid(8) as u8
    }

    pub fn swapped(&self) -> Self {
        Signature::new(self.negative, self.positive)
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.positive + o.positive, self.negative + o.negative)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

/// Signature of a symmetric matrix by congruent diagonalization over the
/// rationals. A zero diagonal block is repaired by adding a row/column with
/// a nonzero off-diagonal entry, which puts `2 a_kj` on the diagonal.
pub fn signature_of_gram(gram: &IntMatrix) -> Result<Signature> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = gram.rows();
    let mut a = linalg::to_rational(gram);
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                return Err(Error::Degenerate);
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k + 1..n {
                let s = &f * &a[k][j];
                a[i][j] -= s;
            }
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
            a[k][i] = BigRational::zero();
        }
    }
    Ok(Signature::new(pos, neg))
}

/// A nondegenerate integral lattice presented by its Gram matrix.
///
/// Lattices are even unless built through [`GramLattice::new_odd`], which
/// exists for oracle tests.
#[derive(Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
    label: Option<String>,
    det: BigInt,
    even: bool,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let l = Self::new_odd(gram)?;
        if !l.even {
            let bad = (0..l.rank()).find(|&i| l.gram[(i, i)].is_odd()).unwrap();
            return Err(Error::NotEven(format!(
                "diagonal entry {} is {}",
                bad,
                l.gram[(bad, bad)]
            )));
        }
        Ok(l)
    }

    /// Same checks as [`GramLattice::new`] except evenness.
    pub fn new_odd(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NonSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = determinant(&gram)?;
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let even = (0..gram.rows()).all(|i| gram[(i, i)].is_even());
        Ok(GramLattice {
            gram,
            label: None,
            det,
            even,
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// `<d_1> + ... + <d_n>`.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let e: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(IntMatrix::diagonal(&e))
    }

    /// The rank-0 lattice.
    pub fn empty() -> Self {
        GramLattice {
            gram: IntMatrix::zeros(0, 0),
            label: None,
            det: BigInt::one(),
            even: true,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn signature(&self) -> Signature {
        signature_of_gram(&self.gram).expect("nondegenerate by construction")
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        bilinear(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }

    /// Rebuilds the lattice on a new basis given by the rows of `basis`
    /// (coordinates in the current basis).
    pub fn change_basis(&self, basis: &IntMatrix) -> Result<GramLattice> {
        let g = &(basis * &self.gram) * &basis.transpose();
        let mut l = Self::new_odd(g)?;
        l.label = self.label.clone();
        Ok(l)
    }

    fn display_name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("L{}", self.rank()))
    }
}

impl fmt::Debug for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramLattice({}, {})", self.display_name(), self.gram)
    }
}

/// Orthogonal direct sum.
pub fn direct_sum(a: &GramLattice, b: &GramLattice) -> GramLattice {
    let label = match (a.rank(), b.rank()) {
        (0, _) => b.label.clone(),
        (_, 0) => a.label.clone(),
        _ => Some(format!("{} + {}", a.display_name(), b.display_name())),
    };
    GramLattice {
        gram: a.gram.block_diag(&b.gram),
        label,
        det: &a.det * &b.det,
        even: a.even && b.even,
    }
}

pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a GramLattice>) -> GramLattice {
    parts
        .into_iter()
        .fold(GramLattice::empty(), |acc, l| direct_sum(&acc, l))
}

/// `L(n)`: the Gram matrix multiplied by `n`.
pub fn rescale(l: &GramLattice, n: i64) -> Result<GramLattice> {
    if n == 0 {
        return Err(Error::ZeroScale);
    }
    let k = BigInt::from(n);
    let label = match (&l.label, n) {
        (_, 1) => l.label.clone(),
        (Some(s), _) => Some(format!("{s}({n})")),
        (None, _) => None,
    };
    Ok(GramLattice {
        gram: l.gram.scaled(&k),
        label,
        det: &l.det * num_traits::pow(k, l.rank()),
        even: l.even || n % 2 == 0,
    })
}

/// A sublattice given by the integer coordinates (rows of `basis`) of its
/// generators in the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    ambient: GramLattice,
    basis: IntMatrix,
}

impl Embedding {
    pub fn new(ambient: GramLattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} columns, ambient rank is {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        if linalg::rank(&basis) != basis.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(Embedding { ambient, basis })
    }

    /// The whole ambient lattice, embedded by the identity.
    pub fn full(ambient: GramLattice) -> Self {
        let n = ambient.rank();
        Embedding {
            ambient,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn ambient(&self) -> &GramLattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// `basis * gram * basis^T`; may be degenerate in an indefinite ambient.
    pub fn induced_gram(&self) -> IntMatrix {
        &(&self.basis * self.ambient.gram()) * &self.basis.transpose()
    }

    /// The sublattice as an abstract lattice. Fails if the induced form is
    /// degenerate or odd.
    pub fn sublattice(&self) -> Result<GramLattice> {
        GramLattice::new(self.induced_gram())
    }
}

/// Primitive closure `(span_Q e) ∩ ambient`, on an HNF basis.
pub fn saturation(e: &Embedding) -> Embedding {
    let n = e.ambient.rank();
    if e.rank() == 0 {
        return Embedding {
            ambient: e.ambient.clone(),
            basis: IntMatrix::zeros(0, n),
        };
    }
    let k = integer_kernel(&e.basis);
    let basis = if k.rows() == 0 {
        IntMatrix::identity(n)
    } else {
        integer_kernel(&k)
    };
    Embedding {
        ambient: e.ambient.clone(),
        basis,
    }
}

/// Index of `e` inside its saturation.
pub fn embedding_index(e: &Embedding) -> BigInt {
    smith_normal_form(&e.basis).invariant_factors().iter().product()
}

pub fn is_primitive(e: &Embedding) -> bool {
    embedding_index(e).is_one()
}

/// All ambient vectors orthogonal to `e`, on an HNF basis. The result is
/// primitive by construction.
pub fn orthogonal_complement(e: &Embedding) -> Embedding {
    let n = e.ambient.rank();
    let basis = if e.rank() == 0 {
        IntMatrix::identity(n)
    } else {
        integer_kernel(&(&e.basis * e.ambient.gram()))
    };
    Embedding {
        ambient: e.ambient.clone(),
        basis,
    }
}

/// Result of adjoining glue vectors to a lattice.
#[derive(Clone, Debug)]
pub struct Overlattice {
    /// The new lattice on an integral (HNF-derived) basis.
    pub lattice: GramLattice,
    /// The original lattice inside the new one.
    pub embedding: Embedding,
    /// Rows: new basis vectors in coordinates of the original lattice.
    pub basis: RatRows,
    pub index: BigInt,
}

impl Overlattice {
    /// Coordinates in the new basis of a vector given in old (rational)
    /// coordinates, if it lies in the overlattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        // old e_i = sum_j E_ij new_j, so x = sum_i x_i e_i has new coordinates x * E
        let e = self.embedding.basis();
        let coords = linalg::rat_vec_mul(v, e);
        coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

fn rat_bilinear(g: &IntMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    linalg::bilinear_rat(g, x, y)
}

/// Lattice generated by `l` and rational vectors `glue` (coordinates in the
/// basis of `l`). Every glue vector must pair integrally with `l` and with
/// every other glue vector, and have even norm when `l` is even.
pub fn overlattice_from_glue(l: &GramLattice, glue: &[Vec<BigRational>]) -> Result<Overlattice> {
    let n = l.rank();
    let g = l.gram();
    for (k, v) in glue.iter().enumerate() {
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "glue vector {k} has length {}, lattice rank {n}",
                v.len()
            )));
        }
        for i in 0..n {
            let mut p = BigRational::zero();
            for (j, x) in v.iter().enumerate() {
                p += x * BigRational::from_integer(g[(i, j)].clone());
            }
            if !p.is_integer() {
                return Err(Error::NotIntegral(format!(
                    "glue vector {k} pairs to {p} with basis vector {i}"
                )));
            }
        }
        for (m, w) in glue.iter().enumerate().take(k) {
            let p = rat_bilinear(g, v, w);
            if !p.is_integer() {
                return Err(Error::NotIntegral(format!("glue vectors {m} and {k} pair to {p}")));
            }
        }
        let sq = rat_bilinear(g, v, v);
        if !sq.is_integer() {
            return Err(Error::NotIntegral(format!("glue vector {k} has norm {sq}")));
        }
        if l.is_even() && sq.to_integer().is_odd() {
            return Err(Error::NotEven(format!("glue vector {k} has norm {sq}")));
        }
    }

    let mut d = BigInt::one();
    for v in glue {
        d = d.lcm(&common_denominator(v));
    }
    let mut gens = IntMatrix::identity(n).scaled(&d);
    for v in glue {
        let row: Vec<BigInt> = v.iter().map(|x| (x * &d).to_integer()).collect();
        gens = gens.vstack(&IntMatrix::from_rows(vec![row], n)?)?;
    }
    let hnf = hermite_normal_form(&gens);
    debug_assert_eq!(hnf.rank, n);
    let idx: Vec<usize> = (0..n).collect();
    let h = hnf.h.select_rows(&idx);
    let dr = BigRational::from_integer(d.clone());
    let basis: RatRows = (0..n)
        .map(|i| {
            h.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()) / &dr)
                .collect()
        })
        .collect();
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let p = rat_bilinear(g, &basis[i], &basis[j]);
            debug_assert!(p.is_integer());
            gram[(i, j)] = p.to_integer();
            gram[(j, i)] = p.to_integer();
        }
    }
    let mut lattice = GramLattice::new_odd(gram)?;
    lattice.even = l.is_even();
    lattice.label = l.label.clone();

    // old e_i in new coordinates: (h / d)^{-1} = d * h^{-1}
    let hinv = inverse_rational(&h)?;
    let mut coords = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = &hinv[i][j] * &dr;
            debug_assert!(c.is_integer());
            coords[(i, j)] = c.to_integer();
        }
    }
    let det_h = determinant(&h)?.abs();
    let index = num_traits::pow(d, n) / det_h;
    Ok(Overlattice {
        embedding: Embedding {
            ambient: lattice.clone(),
            basis: coords,
        },
        lattice,
        basis,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bilinear;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(bi(n), bi(d))
    }

    fn u() -> GramLattice {
        GramLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            GramLattice::from_i64(&[vec![2, 1], vec![0, 2]]),
            Err(Error::NotSymmetric)
        );
        assert!(matches!(GramLattice::from_i64(&[vec![3]]), Err(Error::NotEven(_))));
        assert_eq!(GramLattice::from_i64(&[vec![2, 2], vec![2, 2]]), Err(Error::Degenerate));
        let odd = GramLattice::new_odd(IntMatrix::from_i64(&[vec![1]])).unwrap();
        assert!(!odd.is_even());
    }

    #[test]
    fn direct_sum_examples() {
        let uu = direct_sum(&u(), &u());
        assert_eq!(uu.rank(), 4);
        assert_eq!(uu.determinant(), &bi(1));
        assert_eq!(direct_sum(&u(), &GramLattice::empty()).gram(), u().gram());
        let s = direct_sum(
            &GramLattice::diagonal(&[-2]).unwrap(),
            &GramLattice::diagonal(&[2]).unwrap(),
        );
        assert_eq!(s.determinant(), &bi(-4));
        assert_eq!(s.signature(), Signature::new(1, 1));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(rescale(&u(), 0), Err(Error::ZeroScale));
        assert_eq!(rescale(&u(), 1).unwrap().gram(), u().gram());
        let u2 = rescale(&u(), 2).unwrap();
        assert_eq!(u2.gram(), &IntMatrix::from_i64(&[vec![0, 2], vec![2, 0]]));
        assert_eq!(u2.determinant(), &bi(-4));
        assert_eq!(determinant(u2.gram()).unwrap(), bi(-4));
        let a = GramLattice::diagonal(&[2, 4]).unwrap();
        assert_eq!(rescale(&a, -1).unwrap().signature(), Signature::new(0, 2));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(u().signature(), Signature::new(1, 1));
        // zero diagonal everywhere, needs the pivot repair twice
        let g = IntMatrix::from_i64(&[vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 0, 0, 1], vec![0, 1, 1, 2]]);
        assert_eq!(signature_of_gram(&g), Err(Error::Degenerate));
        let g = IntMatrix::from_i64(&[vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 0]]);
        // eigenvalues of this matrix: 2.73.., -0.73.., -2
        assert_eq!(signature_of_gram(&g).unwrap(), Signature::new(1, 2));
        assert_eq!(
            signature_of_gram(&IntMatrix::zeros(0, 0)).unwrap(),
            Signature::new(0, 0)
        );
    }

    #[test]
    fn saturation_examples() {
        let e = Embedding::new(u(), IntMatrix::from_i64(&[vec![2, 0]])).unwrap();
        let s = saturation(&e);
        assert_eq!(s.basis(), &IntMatrix::from_i64(&[vec![1, 0]]));
        assert_eq!(embedding_index(&e), bi(2));
        assert!(!is_primitive(&e));
        assert!(is_primitive(&s));

        let p = Embedding::new(u(), IntMatrix::from_i64(&[vec![1, 0]])).unwrap();
        assert_eq!(saturation(&p).basis(), p.basis());
        assert_eq!(embedding_index(&p), bi(1));

        let a1a1 = GramLattice::diagonal(&[-2, -2]).unwrap();
        let e = Embedding::new(a1a1, IntMatrix::from_i64(&[vec![1, 1], vec![1, -1]])).unwrap();
        assert_eq!(saturation(&e).basis(), &IntMatrix::identity(2));
        assert_eq!(embedding_index(&e), bi(2));
        let ratio = determinant(&e.induced_gram()).unwrap() / bi(4);
        assert_eq!(ratio, bi(4));
    }

    #[test]
    fn complement_examples() {
        let e = Embedding::new(u(), IntMatrix::from_i64(&[vec![1, 1]])).unwrap();
        let c = orthogonal_complement(&e);
        assert_eq!(c.rank(), 1);
        assert_eq!(c.induced_gram(), IntMatrix::from_i64(&[vec![-2]]));
        let full = Embedding::full(u());
        assert_eq!(orthogonal_complement(&full).rank(), 0);
    }

    #[test]
    fn overlattice_examples() {
        let mut diag = vec![-2; 9];
        diag.push(2);
        let base = GramLattice::diagonal(&diag).unwrap();
        let mu: Vec<BigRational> = (0..10).map(|_| rat(1, 2)).collect();
        let o = overlattice_from_glue(&base, &[mu]).unwrap();
        assert_eq!(o.lattice.rank(), 10);
        assert_eq!(o.lattice.determinant(), &bi(-256));
        assert_eq!(o.index, bi(2));
        assert!(o.lattice.is_even());
        // embedding of the old lattice reproduces the old Gram matrix
        assert_eq!(o.embedding.induced_gram(), *base.gram());

        let same = overlattice_from_glue(&base, &[]).unwrap();
        assert_eq!(same.lattice.gram(), base.gram());
        assert_eq!(same.index, bi(1));

        let a1a1 = GramLattice::diagonal(&[-2, -2]).unwrap();
        let r = overlattice_from_glue(&a1a1, &[vec![rat(1, 2), rat(1, 2)]]);
        assert!(matches!(r, Err(Error::NotEven(_))));
        let r = overlattice_from_glue(&a1a1, &[vec![rat(1, 4), rat(0, 1)]]);
        assert!(matches!(r, Err(Error::NotIntegral(_))));
    }

    #[test]
    fn overlattice_coordinates() {
        let base = GramLattice::diagonal(&[-2, -2, -2, -2]).unwrap();
        let half: Vec<BigRational> = (0..4).map(|_| rat(1, 2)).collect();
        let o = overlattice_from_glue(&base, std::slice::from_ref(&half)).unwrap();
        let c = o.coordinates(&half).expect("glue lies in overlattice");
        let g = o.lattice.gram();
        assert_eq!(bilinear(g, &c, &c), bi(-2));
        assert!(o.coordinates(&[rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)]).is_none());
    }

    fn random_even_gram() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
                let mut m = IntMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..i {
                        m[(i, j)] = bi(v[i * n + j]);
                        m[(j, i)] = bi(v[i * n + j]);
                    }
                    m[(i, i)] = bi(2 * v[i * n + i]);
                }
                m
            })
        })
    }

    fn random_unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for &(a, b, k) in ops {
            let (a, b) = (a % n, b % n);
            if a != b {
                for j in 0..n {
                    let s = &m[(b, j)] * bi(k);
                    m[(a, j)] += s;
                }
            }
        }
        m
    }

    proptest! {
        #[test]
        fn signature_is_congruence_invariant(
            g in random_even_gram(),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..8)
        ) {
            prop_assume!(!determinant(&g).unwrap().is_zero());
            let l = GramLattice::new(g).unwrap();
            let p = random_unimodular(l.rank(), &ops);
            let l2 = l.change_basis(&p).unwrap();
            prop_assert_eq!(l.signature(), l2.signature());
            prop_assert_eq!(l.determinant(), l2.determinant());
        }

        #[test]
        fn saturation_is_idempotent_and_primitive(
            g in random_even_gram(),
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 6), 1..4)
        ) {
            prop_assume!(!determinant(&g).unwrap().is_zero());
            let l = GramLattice::new(g).unwrap();
            let n = l.rank();
            let b: Vec<Vec<i64>> = rows.iter().map(|r| r[..n].to_vec()).collect();
            let b = IntMatrix::from_i64(&b);
            prop_assume!(linalg::rank(&b) == b.rows());
            let e = Embedding::new(l, b).unwrap();
            let s = saturation(&e);
            prop_assert!(is_primitive(&s));
            let ss = saturation(&s);
            prop_assert_eq!(ss.basis(), s.basis());
            prop_assert_eq!(s.rank(), e.rank());

            let c = orthogonal_complement(&e);
            prop_assert_eq!(c.rank() + s.rank(), n);
            let cc = orthogonal_complement(&c);
            prop_assert_eq!(cc.basis(), s.basis());
        }
    }
}
