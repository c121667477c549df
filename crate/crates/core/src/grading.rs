//! Degreewise model of the graded quotient of the free algebra by the
//! two-sided ideal of a relation subspace: ideal components, normal-word
//! bases, reduction to normal form, Hilbert dimensions, and the target
//! series `(1 - n t + n t^N - t^(N+1))^{-1}`.

use crate::exactla::{SparseVec, Subspace};
use crate::ncpoly::{cyclic_derivative, NcPoly, Potential};
use crate::par;
use crate::word::{tensor_dim, Word};
use crate::{Error, Result};
use std::collections::HashMap;

/// Coefficients of the criterion series, truncated at a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub n: usize,
    pub relation_degree: usize,
    pub bound: usize,
    pub coeffs: Vec<i64>,
}

/// Expand `(1 - n t + n t^N - t^(N+1))^{-1}` through degree `bound` by the
/// linear recurrence `a_d = n a_{d-1} - n a_{d-N} + a_{d-N-1}`.
pub fn target_series(n: usize, relation_degree: usize, bound: usize) -> SeriesSpec {
    let big_n = relation_degree;
    let mut coeffs: Vec<i64> = Vec::with_capacity(bound + 1);
    let at = |coeffs: &Vec<i64>, d: i64| -> i64 {
        if d < 0 {
            0
        } else {
            coeffs[d as usize]
        }
    };
    for d in 0..=bound as i64 {
        let v = if d == 0 {
            1
        } else {
            n as i64 * at(&coeffs, d - 1) - n as i64 * at(&coeffs, d - big_n as i64)
                + at(&coeffs, d - big_n as i64 - 1)
        };
        coeffs.push(v);
    }
    SeriesSpec {
        n,
        relation_degree,
        bound,
        coeffs,
    }
}

/// Default degree bound used when a caller does not pin one.
pub fn default_degree_bound(relation_degree: usize) -> usize {
    2 * (relation_degree + 1) + 2
}

/// Echelon basis of the relation space: the span of the cyclic partial
/// derivatives inside the `N`-th tensor power.
pub fn relation_subspace(w: &Potential) -> Result<Subspace> {
    let n = w.n();
    let big_n = w.relation_degree();
    let ambient = tensor_dim(n, big_n)? as usize;
    let mut vecs = Vec::with_capacity(n);
    for i in 0..n {
        let r = cyclic_derivative(w.poly(), i);
        if !r.is_zero() {
            vecs.push(r.coordinates(n, big_n)?);
        }
    }
    Subspace::echelon_basis(vecs, ambient)
}

/// Spanning vectors of the degree-`d` component of the two-sided ideal:
/// every shift `left (x) r (x) right` of a relation basis row.
fn ideal_spanning_vectors(
    n: usize,
    relations: &Subspace,
    rel_degree: usize,
    d: usize,
) -> Result<Vec<SparseVec>> {
    tensor_dim(n, d)?;
    let free = d - rel_degree;
    let mut vecs = Vec::new();
    for left_deg in 0..=free {
        let right_deg = free - left_deg;
        let left_dim = tensor_dim(n, left_deg)?;
        let right_dim = tensor_dim(n, right_deg)?;
        let rel_block = tensor_dim(n, rel_degree)?;
        for row in relations.basis_rows() {
            for l in 0..left_dim {
                for r in 0..right_dim {
                    let base = l * rel_block;
                    vecs.push(row.map_indices(|idx| {
                        ((base + idx as u64) * right_dim + r) as usize
                    }));
                }
            }
        }
    }
    Ok(vecs)
}

/// Echelon basis of the degree-`d` component of the two-sided ideal
/// generated by a space of homogeneous relations. Degrees below the relation
/// degree give the zero subspace.
pub fn ideal_component(
    n: usize,
    relations: &Subspace,
    rel_degree: usize,
    d: usize,
) -> Result<Subspace> {
    let ambient = tensor_dim(n, d)? as usize;
    if d < rel_degree {
        return Ok(Subspace::zero(ambient));
    }
    let vecs = ideal_spanning_vectors(n, relations, rel_degree, d)?;
    Subspace::echelon_basis(vecs, ambient)
}

/// One degree of the quotient: the surviving (normal) words and the
/// rewriting of every pivot word over them.
struct Level {
    ambient: usize,
    normal: Vec<u64>,
    pos_of: HashMap<u64, usize>,
    /// pivot word index -> coordinates over the normal words of this degree
    reduction: HashMap<u64, SparseVec>,
    ideal_dim: usize,
}

impl Level {
    fn build(n: usize, relations: &Subspace, rel_degree: usize, d: usize) -> Result<Level> {
        let ambient = tensor_dim(n, d)? as usize;
        let ideal = ideal_component(n, relations, rel_degree, d)?;
        let mut is_pivot = vec![false; ambient];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let mut normal = Vec::with_capacity(ambient - ideal.dim());
        let mut pos_in_normal = vec![usize::MAX; ambient];
        for idx in 0..ambient {
            if !is_pivot[idx] {
                pos_in_normal[idx] = normal.len();
                normal.push(idx as u64);
            }
        }
        let pos_of = normal
            .iter()
            .enumerate()
            .map(|(pos, &idx)| (idx, pos))
            .collect();
        let mut reduction = HashMap::with_capacity(ideal.dim());
        for row in ideal.basis_rows() {
            let pivot = row.leading().unwrap().0;
            let rewritten = SparseVec::from_sorted(
                row.iter()
                    .filter(|(i, _)| *i != pivot)
                    .map(|(i, c)| (pos_in_normal[*i], -c.clone()))
                    .collect::<std::collections::BTreeMap<_, _>>()
                    .into_iter()
                    .collect(),
            );
            reduction.insert(pivot as u64, rewritten);
        }
        Ok(Level {
            ambient,
            normal,
            pos_of,
            reduction,
            ideal_dim: ideal.dim(),
        })
    }
}

/// Degreewise data of the quotient algebra up to a fixed degree bound.
pub struct GradedQuotient {
    n: usize,
    rel_degree: usize,
    bound: usize,
    relations: Subspace,
    levels: Vec<Level>,
}

impl GradedQuotient {
    /// Build the quotient of the free algebra on `n` generators by the
    /// two-sided ideal of `relations` (homogeneous of degree `rel_degree`),
    /// with all data through degree `bound`. Levels are independent and are
    /// computed in parallel.
    pub fn new(n: usize, rel_degree: usize, relations: Subspace, bound: usize) -> Result<Self> {
        if rel_degree < 1 {
            return Err(Error::InvalidParameter(
                "relation degree must be at least 1".into(),
            ));
        }
        tensor_dim(n, bound)?;
        let levels: Vec<Result<Level>> =
            par::map_range(bound + 1, |d| Level::build(n, &relations, rel_degree, d));
        let levels = levels.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(GradedQuotient {
            n,
            rel_degree,
            bound,
            relations,
            levels,
        })
    }

    /// The quotient derived from a potential: relations are its cyclic
    /// partial derivatives.
    pub fn from_potential(w: &Potential, bound: usize) -> Result<Self> {
        let relations = relation_subspace(w)?;
        GradedQuotient::new(w.n(), w.relation_degree(), relations, bound)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation_degree(&self) -> usize {
        self.rel_degree
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    fn level(&self, d: usize) -> Result<&Level> {
        self.levels.get(d).ok_or(Error::DegreeOutOfRange {
            degree: d,
            bound: self.bound,
        })
    }

    /// `dim A_d` for `d = 0 ..= bound`.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.normal.len()).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.levels[d].normal.len()
    }

    pub fn ideal_dim(&self, d: usize) -> usize {
        self.levels[d].ideal_dim
    }

    pub fn ambient_dim(&self, d: usize) -> usize {
        self.levels[d].ambient
    }

    /// Word indices of the normal-word basis at degree `d`, ascending.
    pub fn normal_indices(&self, d: usize) -> &[u64] {
        &self.levels[d].normal
    }

    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        self.levels[d]
            .normal
            .iter()
            .map(|&idx| Word::from_index(idx, self.n, d))
            .collect()
    }

    pub fn normal_word(&self, d: usize, pos: usize) -> Word {
        Word::from_index(self.levels[d].normal[pos], self.n, d)
    }

    /// Position of a word index inside the normal basis, if it is normal.
    pub fn normal_position(&self, d: usize, idx: u64) -> Option<usize> {
        self.levels[d].pos_of.get(&idx).copied()
    }

    /// Coordinates of the class of the word with index `idx` (degree `d`)
    /// over the normal words of degree `d`.
    pub fn reduce_index(&self, d: usize, idx: u64) -> Result<SparseVec> {
        let level = self.level(d)?;
        if let Some(&pos) = level.pos_of.get(&idx) {
            return Ok(SparseVec::unit(pos));
        }
        Ok(level
            .reduction
            .get(&idx)
            .cloned()
            .unwrap_or_else(SparseVec::zero))
    }

    pub fn reduce_word(&self, w: &Word) -> Result<SparseVec> {
        self.reduce_index(w.degree(), w.index(self.n))
    }

    /// Reduce a homogeneous polynomial; returns `(degree, coordinates)`.
    /// The zero polynomial reduces to degree 0.
    pub fn reduce_poly(&self, p: &NcPoly) -> Result<(usize, SparseVec)> {
        let Some(d) = p.homogeneous_degree() else {
            if p.is_zero() {
                return Ok((0, SparseVec::zero()));
            }
            return Err(Error::NotHomogeneous(p.degrees()));
        };
        let mut acc = SparseVec::zero();
        for (w, c) in p.terms() {
            acc.add_scaled(&self.reduce_index(d, w.index(self.n))?, c);
        }
        Ok((d, acc))
    }

    /// Index of the concatenation of two word indices of known degrees.
    pub fn concat_index(&self, left: u64, right_degree: usize, right: u64) -> u64 {
        left * (self.n as u64).pow(right_degree as u32) + right
    }

    /// Product of two normal basis words, as coordinates in degree `d1+d2`.
    pub fn mul_normal(&self, d1: usize, p1: usize, d2: usize, p2: usize) -> Result<SparseVec> {
        let idx = self.concat_index(self.levels[d1].normal[p1], d2, self.levels[d2].normal[p2]);
        self.reduce_index(d1 + d2, idx)
    }

    /// Product `normal word * generator`.
    pub fn mul_normal_letter(&self, d: usize, pos: usize, t: usize) -> Result<SparseVec> {
        let idx = self.concat_index(self.levels[d].normal[pos], 1, t as u64);
        self.reduce_index(d + 1, idx)
    }

    /// Product `generator * normal word`.
    pub fn mul_letter_normal(&self, t: usize, d: usize, pos: usize) -> Result<SparseVec> {
        let idx = self.concat_index(t as u64, d, self.levels[d].normal[pos]);
        self.reduce_index(d + 1, idx)
    }

    /// Product `normal word * arbitrary word`.
    pub fn mul_normal_word(&self, d: usize, pos: usize, w: &Word) -> Result<SparseVec> {
        let idx = self.concat_index(self.levels[d].normal[pos], w.degree(), w.index(self.n));
        self.reduce_index(d + w.degree(), idx)
    }

    /// Product `arbitrary word * normal word`.
    pub fn mul_word_normal(&self, w: &Word, d: usize, pos: usize) -> Result<SparseVec> {
        let idx = self.concat_index(w.index(self.n), d, self.levels[d].normal[pos]);
        self.reduce_index(d + w.degree(), idx)
    }

    /// Product `left word * normal word * right word` in one reduction.
    pub fn sandwich(
        &self,
        left: &Word,
        d: usize,
        pos: usize,
        right: &Word,
    ) -> Result<SparseVec> {
        let mid = self.concat_index(left.index(self.n), d, self.levels[d].normal[pos]);
        let idx = self.concat_index(mid, right.degree(), right.index(self.n));
        self.reduce_index(d + left.degree() + right.degree(), idx)
    }
}

/// `dim A_d` for the algebra derived from a potential, through `bound`.
pub fn hilbert_dims(w: &Potential, bound: usize) -> Result<Vec<usize>> {
    Ok(GradedQuotient::from_potential(w, bound)?.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::GenSet;
    use crate::{rat_int, Rat};
    use num::Zero;

    #[test]
    fn target_series_examples() {
        assert_eq!(target_series(3, 2, 4).coeffs, vec![1, 3, 6, 10, 15]);
        assert_eq!(target_series(2, 3, 6).coeffs, vec![1, 2, 4, 6, 9, 12, 16]);
        assert_eq!(target_series(1, 2, 4).coeffs, vec![1, 1, 0, 0, 1]);
        // recurrence invariant: convolution with the quartic polynomial is 1
        let s = target_series(3, 3, 9);
        for d in 1..=9usize {
            let a = |k: i64| if k < 0 { 0 } else { s.coeffs[k as usize] };
            let d = d as i64;
            assert_eq!(a(d) - 3 * a(d - 1) + 3 * a(d - 3) - a(d - 4), 0);
        }
    }

    fn power_potential(big_n: usize) -> Potential {
        let gens = GenSet::new(["x"]).unwrap();
        let poly = NcPoly::gen(0).pow(big_n + 1);
        Potential::new(gens, poly).unwrap()
    }

    #[test]
    fn ideal_component_examples() {
        // n = 1, R = span(x^2): degree 2 component is R itself, degree 3 is x^3
        let w = power_potential(2);
        let rel = relation_subspace(&w).unwrap();
        assert_eq!(rel.dim(), 1);
        let i2 = ideal_component(1, &rel, 2, 2).unwrap();
        assert_eq!(i2.dim(), 1);
        assert_eq!(i2.basis_rows()[0], SparseVec::unit(0));
        let i3 = ideal_component(1, &rel, 2, 3).unwrap();
        assert_eq!(i3.dim(), 1);
        // below the relation degree the component is zero
        assert_eq!(ideal_component(1, &rel, 2, 1).unwrap().dim(), 0);
    }

    #[test]
    fn ideal_component_polynomial_algebra() {
        // commutative polynomial algebra on 3 generators: dim I_3 = 27 - 10
        let (w, _) = catalog::antisymmetrizer(3).unwrap();
        let rel = relation_subspace(&w).unwrap();
        let i3 = ideal_component(3, &rel, 2, 3).unwrap();
        assert_eq!(i3.dim(), 27 - 10);
    }

    #[test]
    fn quotient_dims_power_potential() {
        let w = power_potential(2);
        let gq = GradedQuotient::from_potential(&w, 4).unwrap();
        assert_eq!(gq.dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn quotient_dims_antisymmetrizer() {
        let (w, _) = catalog::antisymmetrizer(3).unwrap();
        let gq = GradedQuotient::from_potential(&w, 4).unwrap();
        assert_eq!(gq.dims(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn quotient_dims_sklyanin() {
        let (w, _) = catalog::sklyanin(rat_int(1), rat_int(1), rat_int(1)).unwrap();
        let gq = GradedQuotient::from_potential(&w, 5).unwrap();
        assert_eq!(gq.dims(), vec![1, 3, 6, 10, 15, 21]);
    }

    #[test]
    fn reduction_is_a_projection() {
        let (w, _) = catalog::sklyanin(rat_int(1), rat_int(1), rat_int(1)).unwrap();
        let gq = GradedQuotient::from_potential(&w, 4).unwrap();
        let d = 3;
        // reducing a normal word gives its indicator
        for (pos, &idx) in gq.normal_indices(d).iter().enumerate() {
            assert_eq!(gq.reduce_index(d, idx).unwrap(), SparseVec::unit(pos));
        }
        // re-expressing a reduced pivot word through normal words is stable:
        // each normal word reduces to itself, so reducing twice is reducing once
        for idx in 0..gq.ambient_dim(d) as u64 {
            let red = gq.reduce_index(d, idx).unwrap();
            let mut again = SparseVec::zero();
            for (pos, c) in red.iter() {
                let widx = gq.normal_indices(d)[*pos];
                again.add_scaled(&gq.reduce_index(d, widx).unwrap(), c);
            }
            assert_eq!(red, again);
        }
    }

    #[test]
    fn dims_complement_ideal() {
        let (w, _) = catalog::sklyanin(rat_int(1), rat_int(1), rat_int(1)).unwrap();
        let gq = GradedQuotient::from_potential(&w, 4).unwrap();
        for d in 0..=4 {
            assert_eq!(gq.dim(d) + gq.ideal_dim(d), gq.ambient_dim(d));
        }
    }

    // Independent dense oracle: dimension of the span of all u*r*v products
    // by naive dense Gaussian elimination, no sparse machinery.
    fn dense_ideal_dim(w: &Potential, d: usize) -> usize {
        let n = w.n();
        let big_n = w.relation_degree();
        if d < big_n {
            return 0;
        }
        let ambient = (n as u64).pow(d as u32) as usize;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let rels = w.relations();
        for left_deg in 0..=(d - big_n) {
            let right_deg = d - big_n - left_deg;
            for l in 0..(n as u64).pow(left_deg as u32) {
                for r in 0..(n as u64).pow(right_deg as u32) {
                    for rel in &rels {
                        if rel.is_zero() {
                            continue;
                        }
                        let mut row = vec![Rat::zero(); ambient];
                        for (word, c) in rel.terms() {
                            let mid = word.index(n);
                            let idx = ((l * (n as u64).pow(big_n as u32) + mid)
                                * (n as u64).pow(right_deg as u32)
                                + r) as usize;
                            row[idx] += c.clone();
                        }
                        rows.push(row);
                    }
                }
            }
        }
        // naive dense elimination
        let mut rank = 0;
        let mut mat = rows;
        for col in 0..ambient {
            let Some(p) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(rank, p);
            let inv = mat[rank][col].clone().recip();
            for c in col..ambient {
                let v = mat[rank][c].clone() * inv.clone();
                mat[rank][c] = v;
            }
            for r in 0..mat.len() {
                if r != rank && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..ambient {
                        let sub = mat[rank][c].clone() * f.clone();
                        mat[r][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn dense_oracle_agrees() {
        let cases: Vec<Potential> = vec![
            power_potential(2),
            catalog::antisymmetrizer(3).unwrap().0,
            catalog::sklyanin(rat_int(1), rat_int(1), rat_int(1)).unwrap().0,
            catalog::sklyanin(rat_int(1), rat_int(2), rat_int(0)).unwrap().0,
        ];
        for w in &cases {
            let gq = GradedQuotient::from_potential(w, 4).unwrap();
            for d in 0..=4usize {
                let expect = gq.ambient_dim(d) - dense_ideal_dim(w, d);
                assert_eq!(gq.dim(d), expect, "degree {d}");
            }
        }
    }
}
