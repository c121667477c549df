//! Exact sparse linear algebra over the rationals: reduced echelon bases,
//! kernels, subspace intersections and membership. Everything is
//! deterministic and bit-reproducible regardless of the parallel backend:
//! pivots are chosen by a fixed rule before any parallel row update runs.

use crate::par;
use crate::{Error, Rat, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse rational vector: sorted `(index, coefficient)` pairs, no zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rat::one())],
        }
    }

    /// From entries already sorted by index with no duplicates.
    pub fn from_sorted(entries: Vec<(usize, Rat)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// From arbitrary entries; duplicates are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rat)>>(it: I) -> Self {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, c) in it {
            let slot = acc.entry(i).or_insert_with(Rat::zero);
            *slot += c;
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Rat]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rat)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, Rat)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&Rat> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&mut self, k: &Rat) {
        if k.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, c) in &mut self.entries {
            *c *= k;
        }
    }

    pub fn scaled(&self, k: &Rat) -> SparseVec {
        let mut v = self.clone();
        v.scale(k);
        v
    }

    /// `self += k * other`, merging sorted entry lists.
    pub fn add_scaled(&mut self, other: &SparseVec, k: &Rat) {
        if k.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut na = a.next();
        let mut nb = b.next();
        loop {
            match (na, nb) {
                (Some((ia, ca)), Some((ib, cb))) => {
                    if ia < ib {
                        out.push((*ia, ca.clone()));
                        na = a.next();
                    } else if ib < ia {
                        out.push((*ib, cb * k));
                        nb = b.next();
                    } else {
                        let c = ca + cb * k;
                        if !c.is_zero() {
                            out.push((*ia, c));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some((ia, ca)), None) => {
                    out.push((*ia, ca.clone()));
                    na = a.next();
                }
                (None, Some((ib, cb))) => {
                    out.push((*ib, cb * k));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// Shift every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }

    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

// Size of a rational for the pivot tie-break: total bit length.
fn coeff_bits(c: &Rat) -> u64 {
    c.numer().bits() + c.denom().bits()
}

/// Forward elimination restricted to indices `< width`. Pivots are selected
/// by smallest leading index, then smallest coefficient bit-length, then
/// original order; every other vector is cleared at the pivot index in
/// parallel. Returns `(pivot rows, survivors)`, where survivors have no
/// entries below `width` (their tail indices are the caller's bookkeeping
/// region).
fn forward_eliminate(vecs: Vec<SparseVec>, width: usize) -> (Vec<SparseVec>, Vec<SparseVec>) {
    let mut rest: Vec<SparseVec> = vecs.into_iter().filter(|v| !v.is_zero()).collect();
    let mut pivots: Vec<SparseVec> = Vec::new();
    loop {
        let mut best: Option<(usize, usize, u64)> = None; // (pos, col, bits)
        for (pos, v) in rest.iter().enumerate() {
            if let Some((col, c)) = v.leading() {
                if *col >= width {
                    continue;
                }
                let bits = coeff_bits(c);
                let better = match best {
                    None => true,
                    Some((_, bcol, bbits)) => *col < bcol || (*col == bcol && bits < bbits),
                };
                if better {
                    best = Some((pos, *col, bits));
                }
            }
        }
        let Some((pos, col, _)) = best else { break };
        let mut pivot = rest.swap_remove(pos);
        let lead = pivot.leading().unwrap().1.clone();
        pivot.scale(&lead.recip());
        par::for_each_mut(&mut rest, |v| {
            if let Some(c) = v.get(col) {
                let c = -c.clone();
                v.add_scaled(&pivot, &c);
            }
        });
        pivots.push(pivot);
        rest.retain(|v| !v.is_zero());
    }
    // Selection order gives strictly increasing pivot columns already.
    (pivots, rest)
}

/// Clear every pivot column from the other pivot rows, turning an echelon
/// set into the reduced form.
fn back_reduce(pivots: &mut [SparseVec]) {
    for k in (1..pivots.len()).rev() {
        let (head, tail) = pivots.split_at_mut(k);
        let row = &tail[0];
        let col = row.leading().unwrap().0;
        par::for_each_mut(head, |v| {
            if let Some(c) = v.get(col) {
                let c = -c.clone();
                v.add_scaled(row, &c);
            }
        });
    }
}

/// A subspace of a coordinatized space, held as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Canonical reduced echelon basis of the span of `vectors`.
    pub fn echelon_basis(vectors: Vec<SparseVec>, ambient: usize) -> Result<Self> {
        for v in &vectors {
            if let Some(m) = v.max_index() {
                if m >= ambient {
                    return Err(Error::AmbientMismatch {
                        expected: ambient,
                        got: m + 1,
                    });
                }
            }
        }
        let (mut rows, _) = forward_eliminate(vectors, ambient);
        back_reduce(&mut rows);
        let pivots = rows.iter().map(|r| r.leading().unwrap().0).collect();
        Ok(Subspace {
            ambient,
            rows,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for row in &self.rows {
            let col = row.leading().unwrap().0;
            if let Some(c) = v.get(col) {
                let c = -c.clone();
                v.add_scaled(row, &c);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        if let Some(m) = v.max_index() {
            if m >= self.ambient {
                return Err(Error::AmbientMismatch {
                    expected: self.ambient,
                    got: m + 1,
                });
            }
        }
        Ok(self.reduce(v).is_zero())
    }

    /// Span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        let mut vecs = self.rows.clone();
        vecs.extend(other.rows.iter().cloned());
        Subspace::echelon_basis(vecs, self.ambient)
    }
}

/// Exact intersection by the Zassenhaus double-block elimination.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch {
            expected: a.ambient,
            got: b.ambient,
        });
    }
    let amb = a.ambient;
    let mut vecs: Vec<SparseVec> = Vec::with_capacity(a.dim() + b.dim());
    for r in &a.rows {
        let mut doubled = r.clone();
        doubled.add_scaled(&r.shifted(amb), &Rat::one());
        vecs.push(doubled);
    }
    vecs.extend(b.rows.iter().cloned());
    let (_, survivors) = forward_eliminate(vecs, amb);
    let inter: Vec<SparseVec> = survivors
        .into_iter()
        .map(|v| v.map_indices(|i| i - amb))
        .collect();
    Subspace::echelon_basis(inter, amb)
}

/// Express `v` as a combination of `rows` (not necessarily independent).
/// Returns one coefficient per row; dependent rows that the greedy
/// elimination drops get coefficient zero. `None` if `v` is outside the span.
pub fn express_in_rows(rows: &[SparseVec], v: &SparseVec, ambient: usize) -> Option<Vec<Rat>> {
    let augmented: Vec<SparseVec> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let mut a = r.clone();
            a.add_scaled(&SparseVec::unit(ambient + k), &Rat::one());
            a
        })
        .collect();
    let (pivots, _) = forward_eliminate(augmented, ambient);
    let mut w = v.clone();
    for row in &pivots {
        let col = row.leading().unwrap().0;
        if let Some(c) = w.get(col) {
            let c = -c.clone();
            w.add_scaled(row, &c);
        }
    }
    if w.iter().any(|(i, _)| *i < ambient) {
        return None;
    }
    let mut coords = vec![Rat::zero(); rows.len()];
    for (i, c) in w.iter() {
        coords[i - ambient] = -c.clone();
    }
    Some(coords)
}

/// Sparse rational matrix, stored column-major: `data[j]` is column `j` as a
/// vector over row indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![SparseVec::zero(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.max_index().map_or(true, |m| m < rows)));
        RatMatrix {
            rows,
            cols: columns.len(),
            data: columns,
        }
    }

    pub fn identity(k: usize) -> Self {
        RatMatrix {
            rows: k,
            cols: k,
            data: (0..k).map(SparseVec::unit).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Matrix-vector product `A x` for sparse `x` over column indices.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (j, c) in x.iter() {
            acc.add_scaled(&self.data[*j], c);
        }
        acc
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let cols = par::map_slice(&other.data, |c| self.apply(c));
        RatMatrix {
            rows: self.rows,
            cols: other.cols,
            data: cols,
        }
    }

    /// Exact rank by forward elimination of the columns.
    pub fn rank(&self) -> usize {
        let (pivots, _) = forward_eliminate(self.data.clone(), self.rows);
        pivots.len()
    }

    /// Canonical basis of the right nullspace.
    pub fn kernel_basis(&self) -> Subspace {
        let augmented: Vec<SparseVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut a = c.clone();
                a.add_scaled(&SparseVec::unit(self.rows + j), &Rat::one());
                a
            })
            .collect();
        let (_, survivors) = forward_eliminate(augmented, self.rows);
        let kernel: Vec<SparseVec> = survivors
            .into_iter()
            .map(|v| v.map_indices(|i| i - self.rows))
            .collect();
        Subspace::echelon_basis(kernel, self.cols).expect("kernel indices bounded by cols")
    }

    /// Sparse triple dump, one `row col value` line per entry, in column
    /// order. Suitable for external verification.
    pub fn to_triples(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.rows, self.cols));
        for (j, col) in self.data.iter().enumerate() {
            for (i, c) in col.iter() {
                out.push_str(&format!("{i} {j} {c}\n"));
            }
        }
        out
    }
}

/// Free function mirror of [`Subspace::echelon_basis`].
pub fn echelon_basis(vectors: Vec<SparseVec>, ambient: usize) -> Result<Subspace> {
    Subspace::echelon_basis(vectors, ambient)
}

/// Free function mirror of [`RatMatrix::kernel_basis`].
pub fn kernel_basis(m: &RatMatrix) -> Subspace {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, rat_int(c))))
    }

    #[test]
    fn echelon_identity_pair() {
        let s = Subspace::echelon_basis(vec![sv(&[(0, 1)]), sv(&[(1, 1)])], 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
    }

    #[test]
    fn echelon_dependent_rows() {
        let s = Subspace::echelon_basis(vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 2), (1, 2)])], 2)
            .unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows()[0], sv(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn echelon_empty() {
        let s = Subspace::echelon_basis(vec![], 4).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn echelon_is_canonical_under_shuffles() {
        let a = sv(&[(0, 2), (2, 4), (3, 2)]);
        let b = sv(&[(1, 3), (2, 1)]);
        let c = sv(&[(0, 1), (1, 3), (2, 3), (3, 1)]); // a/2 + b
        let s1 = Subspace::echelon_basis(vec![a.clone(), b.clone(), c.clone()], 4).unwrap();
        let s2 = Subspace::echelon_basis(vec![c, a, b], 4).unwrap();
        assert_eq!(s1, s2);
        // idempotent
        let s3 = Subspace::echelon_basis(s1.basis_rows().to_vec(), 4).unwrap();
        assert_eq!(s1, s3);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(RatMatrix::identity(3).kernel_basis().dim(), 0);
        assert_eq!(RatMatrix::zero(2, 3).kernel_basis().dim(), 3);
        let m = RatMatrix::from_columns(1, vec![sv(&[(0, 1)]), sv(&[(0, 1)])]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_rows()[0], sv(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn intersect_examples() {
        let s = Subspace::echelon_basis(vec![sv(&[(0, 1), (1, 2)]), sv(&[(2, 1)])], 3).unwrap();
        let i = intersect(&s, &s).unwrap();
        assert_eq!(i, s);
        let e1 = Subspace::echelon_basis(vec![sv(&[(0, 1)])], 2).unwrap();
        let e2 = Subspace::echelon_basis(vec![sv(&[(1, 1)])], 2).unwrap();
        assert_eq!(intersect(&e1, &e2).unwrap().dim(), 0);
    }

    #[test]
    fn intersect_dim_identity() {
        let a = Subspace::echelon_basis(vec![sv(&[(0, 1), (1, 1)]), sv(&[(2, 1), (3, 5)])], 4)
            .unwrap();
        let b = Subspace::echelon_basis(vec![sv(&[(0, 1), (1, 1), (2, 1), (3, 5)]), sv(&[(1, 7)])], 4)
            .unwrap();
        let i = intersect(&a, &b).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::echelon_basis(vec![sv(&[(0, 1), (1, 1)])], 2).unwrap();
        assert!(s.contains(&sv(&[(0, 1), (1, 1)])).unwrap());
        assert!(!s.contains(&sv(&[(0, 1)])).unwrap());
        let z = Subspace::zero(2);
        assert!(!z.contains(&sv(&[(0, 1)])).unwrap());
        assert!(s.contains(&SparseVec::zero()).unwrap());
        assert!(s.contains(&sv(&[(2, 1)])).is_err());
    }

    #[test]
    fn rank_and_product() {
        let m = RatMatrix::from_columns(
            2,
            vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(1, 1)])],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        let id = RatMatrix::identity(3);
        assert_eq!(m.mul(&id), m);
    }

    #[test]
    fn express_in_rows_works() {
        let rows = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)]), sv(&[(0, 2), (1, 2)])];
        let v = sv(&[(0, 3), (1, 5)]);
        let coords = express_in_rows(&rows, &v, 2).unwrap();
        // deterministic greedy: first two rows carry the expression
        assert_eq!(coords, vec![rat_int(3), rat_int(2), rat_int(0)]);
        assert!(express_in_rows(&rows[1..2], &sv(&[(0, 1)]), 2).is_none());
    }

    #[test]
    fn triples_dump() {
        let m = RatMatrix::from_columns(2, vec![sv(&[(1, 1)]), SparseVec::from_entries([(0, rat(1, 2))])]);
        assert_eq!(m.to_triples(), "2 2\n1 0 1\n0 1 1/2\n");
    }
}
