//! Free-algebra polynomials, tensor-split elements, and the cyclic calculus:
//! cyclic sums, cyclic derivatives, ordinary (tensor-valued) partial
//! derivatives, Hessians, flips and commutators. Coefficients are exact
//! rationals; zero coefficients are never stored.

use crate::exactla::SparseVec;
use crate::word::{tensor_dim, GenSet, Word};
use crate::{Error, Rat, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Finite rational combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::unit())
    }

    pub fn gen(i: usize) -> Self {
        NcPoly::from_word(Word::gen(i))
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rat::one());
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rat)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    /// Add `c * w`, dropping the monomial if the total cancels.
    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn scaled(&self, k: &Rat) -> NcPoly {
        if k.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> NcPoly {
        let mut out = NcPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The common degree of all words, if the polynomial is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|w| w.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|w| w.degree()).collect();
        ds.dedup();
        ds
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().filter_map(|w| w.max_letter()).max()
    }

    /// Coordinates in the fixed word basis of the `d`-th tensor power.
    /// Requires homogeneity of degree `d`.
    pub fn coordinates(&self, n: usize, d: usize) -> Result<SparseVec> {
        tensor_dim(n, d)?;
        let mut entries = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            if w.degree() != d {
                return Err(Error::NotHomogeneous(self.degrees()));
            }
            entries.push((w.index(n) as usize, c.clone()));
        }
        Ok(SparseVec::from_sorted(entries))
    }

    pub fn display(&self, gens: &GenSet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_one = abs.is_one();
            if !coeff_one || w.is_unit() {
                out.push_str(&abs.to_string());
                if !w.is_unit() {
                    out.push(' ');
                }
            }
            if !w.is_unit() {
                out.push_str(&w.display(gens));
            }
        }
        out
    }
}

/// Finite rational combination of ordered word pairs: an element of the
/// tensor square of the free algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Rat>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Word, Rat)>>(it: I) -> Self {
        let mut t = TensorPoly::zero();
        for (u, v, c) in it {
            t.add_term(u, v, c);
        }
        t
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), -c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rat {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }
}

/// Cyclic sum: a degree-r word contributes the sum of its r rotations.
pub fn cyclic_sum(p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        for i in 0..w.degree() {
            out.add_term(w.rotated_left(i), c.clone());
        }
    }
    out
}

/// Cyclic derivative with respect to generator `x`: every factorization
/// `w = u x v` contributes `v u`.
pub fn cyclic_derivative(p: &NcPoly, x: usize) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        for pos in 0..w.degree() {
            if w.letter(pos) == x {
                let vu = w.suffix_from(pos + 1).concat(&w.prefix(pos));
                out.add_term(vu, c.clone());
            }
        }
    }
    out
}

/// Ordinary partial derivative: every factorization `w = u x v` contributes
/// the pair `u (x) v` in the tensor square.
pub fn partial_derivative(p: &NcPoly, x: usize) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for (w, c) in p.terms() {
        for pos in 0..w.degree() {
            if w.letter(pos) == x {
                out.add_term(w.prefix(pos), w.suffix_from(pos + 1), c.clone());
            }
        }
    }
    out
}

/// Collapse each pair `u (x) v` to the product `v u`. Contracting the
/// ordinary derivative recovers the cyclic derivative.
pub fn contract(t: &TensorPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for ((u, v), c) in t.terms() {
        out.add_term(v.concat(u), c.clone());
    }
    out
}

/// The flip `a (x) b -> b (x) a`.
pub fn flip(t: &TensorPoly) -> TensorPoly {
    TensorPoly {
        terms: t
            .terms
            .iter()
            .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone()))
            .collect(),
    }
}

/// Commutator `[a, b] = ab - ba`.
pub fn commutator(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a.mul(b).sub(&b.mul(a))
}

/// A nonzero homogeneous potential of degree `N + 1 >= 3` together with its
/// generator set. Stored as a chosen representative of its cyclic class; all
/// derived data is invariant under rotating that representative.
#[derive(Clone, Debug)]
pub struct Potential {
    gens: GenSet,
    degree: usize,
    poly: NcPoly,
}

impl Potential {
    pub fn new(gens: GenSet, poly: NcPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPotential);
        }
        let degree = poly
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(poly.degrees()))?;
        if degree < 3 {
            return Err(Error::DegreeTooSmall(degree));
        }
        if let Some(m) = poly.max_letter() {
            if m >= gens.len() {
                return Err(Error::BadGeneratorIndex {
                    index: m,
                    n: gens.len(),
                });
            }
        }
        Ok(Potential { gens, degree, poly })
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    /// Degree of the potential, `N + 1`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree `N` of the derived relations.
    pub fn relation_degree(&self) -> usize {
        self.degree - 1
    }

    pub fn poly(&self) -> &NcPoly {
        &self.poly
    }

    /// The cyclic partial derivatives, one per generator. These span the
    /// relation space of the derived algebra.
    pub fn relations(&self) -> Vec<NcPoly> {
        (0..self.n())
            .map(|i| cyclic_derivative(&self.poly, i))
            .collect()
    }

    pub fn cyclic_representative(&self) -> NcPoly {
        cyclic_sum(&self.poly)
    }
}

/// Hessian matrix: entry `(i, j)` is the ordinary derivative by `x_i` of the
/// cyclic derivative by `x_j`.
pub fn hessian(w: &Potential) -> Vec<Vec<TensorPoly>> {
    let n = w.n();
    let rels: Vec<NcPoly> = w.relations();
    (0..n)
        .map(|i| (0..n).map(|j| partial_derivative(&rels[j], i)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};
    use num::One;

    fn gens3() -> GenSet {
        GenSet::new(["x", "y", "z"]).unwrap()
    }

    fn word(ls: &[usize]) -> Word {
        Word::from_letters(ls)
    }

    fn poly(ls: &[usize]) -> NcPoly {
        NcPoly::from_word(word(ls))
    }

    #[test]
    fn cyclic_sum_examples() {
        // xy -> xy + yx
        let c = cyclic_sum(&poly(&[0, 1]));
        assert_eq!(c.coeff(&word(&[0, 1])), Rat::one());
        assert_eq!(c.coeff(&word(&[1, 0])), Rat::one());
        assert_eq!(c.num_terms(), 2);
        // x^2 -> 2 x^2
        let c = cyclic_sum(&poly(&[0, 0]));
        assert_eq!(c.coeff(&word(&[0, 0])), rat_int(2));
        assert_eq!(c.num_terms(), 1);
        // xyz -> xyz + yzx + zxy
        let c = cyclic_sum(&poly(&[0, 1, 2]));
        assert_eq!(c.num_terms(), 3);
        assert_eq!(c.coeff(&word(&[1, 2, 0])), Rat::one());
        assert_eq!(c.coeff(&word(&[2, 0, 1])), Rat::one());
    }

    #[test]
    fn cyclic_derivative_examples() {
        // d_x(xyz) = yz
        let d = cyclic_derivative(&poly(&[0, 1, 2]), 0);
        assert_eq!(d, poly(&[1, 2]));
        // d_x(x^3) = 3 x^2
        let d = cyclic_derivative(&poly(&[0, 0, 0]), 0);
        assert_eq!(d.coeff(&word(&[0, 0])), rat_int(3));
        assert_eq!(d.num_terms(), 1);
        // d_{x1}(x2 x1 z) = z x2 (generators x1=0, x2=1, z=2)
        let d = cyclic_derivative(&poly(&[1, 0, 2]), 0);
        assert_eq!(d, poly(&[2, 1]));
    }

    #[test]
    fn partial_derivative_examples() {
        // d(xyx)/dx = 1 (x) yx + xy (x) 1
        let t = partial_derivative(&poly(&[0, 1, 0]), 0);
        assert_eq!(t.coeff(&Word::unit(), &word(&[1, 0])), Rat::one());
        assert_eq!(t.coeff(&word(&[0, 1]), &Word::unit()), Rat::one());
        // d(yz)/dx = 0
        assert!(partial_derivative(&poly(&[1, 2]), 0).is_zero());
        // d(zx)/dx = z (x) 1
        let t = partial_derivative(&poly(&[2, 0]), 0);
        assert_eq!(t.coeff(&word(&[2]), &Word::unit()), Rat::one());
    }

    #[test]
    fn contraction_matches_cyclic_derivative() {
        let p = NcPoly::from_terms([
            (word(&[0, 1, 0]), rat_int(2)),
            (word(&[2, 0, 1]), rat_int(-3)),
            (word(&[0, 0, 0]), Rat::one()),
        ]);
        for x in 0..3 {
            assert_eq!(contract(&partial_derivative(&p, x)), cyclic_derivative(&p, x));
        }
    }

    #[test]
    fn hessian_examples() {
        // w = xyz
        let w = Potential::new(gens3(), poly(&[0, 1, 2])).unwrap();
        let h = hessian(&w);
        // entry (x, y) = z (x) 1
        assert_eq!(h[0][1].coeff(&word(&[2]), &Word::unit()), Rat::one());
        // entry (y, x) = 1 (x) z
        assert_eq!(h[1][0].coeff(&Word::unit(), &word(&[2])), Rat::one());
        // flip symmetry on this pair
        assert_eq!(flip(&h[0][1]), h[1][0]);
    }

    #[test]
    fn flip_examples() {
        let t = TensorPoly::from_terms([(word(&[2]), Word::unit(), Rat::one())]);
        let f = flip(&t);
        assert_eq!(f.coeff(&Word::unit(), &word(&[2])), Rat::one());
        assert_eq!(flip(&f), t);
        assert!(flip(&TensorPoly::zero()).is_zero());
    }

    #[test]
    fn commutator_examples() {
        let x = NcPoly::gen(0);
        let y = NcPoly::gen(1);
        let z = NcPoly::gen(2);
        let c = commutator(&x, &y);
        assert_eq!(c.coeff(&word(&[0, 1])), Rat::one());
        assert_eq!(c.coeff(&word(&[1, 0])), rat_int(-1));
        assert!(commutator(&x, &x).is_zero());
        let c = commutator(&x.mul(&y), &z);
        assert_eq!(c.coeff(&word(&[0, 1, 2])), Rat::one());
        assert_eq!(c.coeff(&word(&[2, 0, 1])), rat_int(-1));
    }

    #[test]
    fn euler_relation_small() {
        // sum_i d_i(w) x_i = sum_i x_i d_i(w) = c(w) on a mixed cubic
        let w = NcPoly::from_terms([
            (word(&[0, 1, 2]), rat_int(2)),
            (word(&[1, 1, 0]), rat_int(-5)),
            (word(&[2, 2, 2]), Rat::one()),
        ]);
        let mut right = NcPoly::zero();
        let mut left = NcPoly::zero();
        for i in 0..3 {
            let d = cyclic_derivative(&w, i);
            right = right.add(&d.mul(&NcPoly::gen(i)));
            left = left.add(&NcPoly::gen(i).mul(&d));
        }
        let c = cyclic_sum(&w);
        assert_eq!(right, c);
        assert_eq!(left, c);
    }

    #[test]
    fn potential_validation() {
        let g = gens3();
        assert!(matches!(
            Potential::new(g.clone(), NcPoly::zero()),
            Err(crate::Error::ZeroPotential)
        ));
        let mixed = NcPoly::from_terms([(word(&[0, 1]), Rat::one()), (word(&[2]), Rat::one())]);
        assert!(matches!(
            Potential::new(g.clone(), mixed),
            Err(crate::Error::NotHomogeneous(_))
        ));
        assert!(matches!(
            Potential::new(g.clone(), poly(&[0, 1])),
            Err(crate::Error::DegreeTooSmall(2))
        ));
        assert!(Potential::new(g, poly(&[0, 1, 2])).is_ok());
    }

    #[test]
    fn display_round_readable() {
        let g = gens3();
        let p = NcPoly::from_terms([
            (word(&[0, 1, 2]), Rat::one()),
            (word(&[1, 0, 2]), rat_int(-1)),
            (word(&[0, 0, 0]), crate::rat(1, 2)),
        ]);
        assert_eq!(p.display(&g), "1/2 x*x*x + x*y*z - y*x*z");
    }
}
