//! Generators and monomials (words) of the free algebra.

use crate::{Error, Result};
use std::cmp::Ordering;

/// Ordered set of degree-one generators. Indices are positions in `names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    names: Vec<String>,
}

impl GenSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidParameter("need at least one generator".into()));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::InvalidParameter("too many generators".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidParameter("empty generator name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidParameter(format!("duplicate generator `{a}`")));
            }
        }
        Ok(GenSet { names })
    }

    /// Generators named `x1 .. xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        GenSet::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }
}

/// A monomial in the free algebra: a sequence of generator indices.
/// The empty word is the unit; the degree is the length.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        debug_assert!(i <= u8::MAX as usize);
        Word(vec![i as u8])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    /// Largest generator index used, if any.
    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn append_letter(&self, l: usize) -> Word {
        let mut v = self.0.clone();
        v.push(l as u8);
        Word(v)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotated_left(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Position of this word in the fixed basis of the `degree`-th tensor
    /// power: the mixed-radix number with the first letter most significant.
    pub fn index(&self, n: usize) -> u64 {
        let mut idx = 0u64;
        for &l in &self.0 {
            idx = idx * n as u64 + l as u64;
        }
        idx
    }

    pub fn from_index(mut idx: u64, n: usize, degree: usize) -> Word {
        let mut v = vec![0u8; degree];
        for k in (0..degree).rev() {
            v[k] = (idx % n as u64) as u8;
            idx /= n as u64;
        }
        Word(v)
    }

    pub fn display(&self, gens: &GenSet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.letters()
            .map(|l| gens.name(l))
            .collect::<Vec<_>>()
            .join("*")
    }
}

// Degree first, then lexicographic on the index sequence. This total order
// fixes every basis enumeration in the crate.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `n^d` as the dimension of a tensor power, with an overflow/enumeration cap.
pub fn tensor_dim(n: usize, d: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..d {
        acc = acc
            .checked_mul(n as u64)
            .filter(|&v| v <= 1 << 26)
            .ok_or(Error::AmbientTooLarge { n, d })?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_order_is_degree_then_lex() {
        let a = Word::from_letters(&[1]);
        let b = Word::from_letters(&[0, 0]);
        assert!(a < b);
        assert!(Word::from_letters(&[0, 1]) < Word::from_letters(&[1, 0]));
        assert!(Word::unit() < a);
    }

    #[test]
    fn index_round_trip() {
        let n = 3;
        for idx in 0..27u64 {
            let w = Word::from_index(idx, n, 3);
            assert_eq!(w.index(n), idx);
        }
        // concatenation is index arithmetic
        let u = Word::from_letters(&[2, 1]);
        let v = Word::from_letters(&[0, 2, 1]);
        assert_eq!(
            u.concat(&v).index(n),
            u.index(n) * 27 + v.index(n)
        );
    }

    #[test]
    fn rotations() {
        let w = Word::from_letters(&[0, 1, 2]);
        assert_eq!(w.rotated_left(1), Word::from_letters(&[1, 2, 0]));
        assert_eq!(w.rotated_left(3), w);
    }

    #[test]
    fn genset_rejects_duplicates() {
        assert!(GenSet::new(["x", "x"]).is_err());
        assert!(GenSet::new(["x", "y"]).is_ok());
    }

    #[test]
    fn tensor_dim_caps() {
        assert_eq!(tensor_dim(3, 4).unwrap(), 81);
        assert!(tensor_dim(10, 30).is_err());
    }
}
