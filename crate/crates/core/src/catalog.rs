//! Constructors for the standard potential families used as fixtures:
//! antisymmetrizer potentials, Yang-Mills quartics, three-generator Sklyanin
//! cubics, two-generator type-A quartics, one-variable power potentials, and
//! oriented Steiner-triple cubics.

use crate::ncpoly::{commutator, NcPoly, Potential};
use crate::quadric::SquareMat;
use crate::word::{GenSet, Word};
use crate::{rat_int, Error, Rat, Result};
use itertools::Itertools;
use num::Zero;

/// What the literature says the family should do, for the given parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedTag {
    Cy3,
    NotCy3,
    /// Parameters sit in the family's excluded locus; behavior is not
    /// asserted, only recorded.
    Conditional,
}

#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub family: String,
    pub description: String,
    pub n: usize,
    pub degree: usize,
    pub tag: ExpectedTag,
}

fn sign_of_permutation(perm: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Full signed sum over all orderings of the given letters.
fn antisymmetrized_word(letters: &[usize]) -> NcPoly {
    let k = letters.len();
    let mut out = NcPoly::zero();
    for perm in (0..k).permutations(k) {
        let word = Word::from_letters(&perm.iter().map(|&p| letters[p]).collect::<Vec<_>>());
        out.add_term(word, rat_int(sign_of_permutation(&perm)));
    }
    out
}

/// Antisymmetrizer potential on an odd number `n >= 3` of generators:
/// the signed sum over all orderings of the first `n - 1` generators,
/// multiplied by the last one. Degree `n`, so the relations live in degree
/// `n - 1`.
pub fn antisymmetrizer(n: usize) -> Result<(Potential, ExampleSpec)> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "antisymmetrizer needs odd n >= 3, got {n}"
        )));
    }
    let gens = GenSet::numbered(n)?;
    let letters: Vec<usize> = (0..n - 1).collect();
    let poly = antisymmetrized_word(&letters).mul(&NcPoly::gen(n - 1));
    let w = Potential::new(gens, poly)?;
    let spec = ExampleSpec {
        family: "antisymmetrizer".into(),
        description: format!("antisymmetrizer potential in {n} variables"),
        n,
        degree: n,
        tag: ExpectedTag::Cy3,
    };
    Ok((w, spec))
}

/// Three-generator cubic `a xyz + b yxz + c (x^3 + y^3 + z^3)`.
/// The excluded locus is `a^3 = b^3 = 27 c^3` together with the coordinate
/// points of the parameter plane.
pub fn sklyanin(a: Rat, b: Rat, c: Rat) -> Result<(Potential, ExampleSpec)> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::InvalidParameter("all parameters zero".into()));
    }
    let gens = GenSet::new(["x", "y", "z"])?;
    let (x, y, z) = (NcPoly::gen(0), NcPoly::gen(1), NcPoly::gen(2));
    let cubes = x.pow(3).add(&y.pow(3)).add(&z.pow(3));
    let poly = x
        .mul(&y)
        .mul(&z)
        .scaled(&a)
        .add(&y.mul(&x).mul(&z).scaled(&b))
        .add(&cubes.scaled(&c));
    let a3 = a.clone() * a.clone() * a.clone();
    let b3 = b.clone() * b.clone() * b.clone();
    let c3 = c.clone() * c.clone() * c.clone();
    let in_cubic_locus = a3 == b3 && b3 == c3 * rat_int(27);
    let coordinate_point = (b.is_zero() && c.is_zero())
        || (a.is_zero() && c.is_zero())
        || (a.is_zero() && b.is_zero());
    let tag = if in_cubic_locus || coordinate_point {
        ExpectedTag::Conditional
    } else {
        ExpectedTag::Cy3
    };
    let w = Potential::new(gens, poly)?;
    let spec = ExampleSpec {
        family: "sklyanin".into(),
        description: format!("sklyanin cubic, parameters ({a}, {b}, {c})"),
        n: 3,
        degree: 3,
        tag,
    };
    Ok((w, spec))
}

/// Two-generator quartic `a x^2 y^2 + b (xy)^2 + c (x^4 + y^4)`.
/// Excluded locus: `a^2 = 4 b^2 = 16 c^2` and the two coordinate points
/// with `a = 0`.
pub fn cubic_type_a(a: Rat, b: Rat, c: Rat) -> Result<(Potential, ExampleSpec)> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::InvalidParameter("all parameters zero".into()));
    }
    let gens = GenSet::new(["x", "y"])?;
    let (x, y) = (NcPoly::gen(0), NcPoly::gen(1));
    let poly = x
        .pow(2)
        .mul(&y.pow(2))
        .scaled(&a)
        .add(&x.mul(&y).pow(2).scaled(&b))
        .add(&x.pow(4).add(&y.pow(4)).scaled(&c));
    let a2 = a.clone() * a.clone();
    let b2 = b.clone() * b.clone();
    let c2 = c.clone() * c.clone();
    let in_locus = a2 == b2.clone() * rat_int(4) && b2 * rat_int(4) == c2 * rat_int(16);
    let coordinate_point = a.is_zero() && (b.is_zero() || c.is_zero());
    let tag = if in_locus || coordinate_point {
        ExpectedTag::Conditional
    } else {
        ExpectedTag::Cy3
    };
    let w = Potential::new(gens, poly)?;
    let spec = ExampleSpec {
        family: "cubic_type_a".into(),
        description: format!("cubic type-A quartic, parameters ({a}, {b}, {c})"),
        n: 2,
        degree: 4,
        tag,
    };
    Ok((w, spec))
}

/// Yang-Mills quartic for a symmetric invertible metric `g` (identity when
/// omitted): `w1 + lambda * w2` where `w1` contracts pairs of commutators
/// through the inverse metric and `w2` is the square of the quadratic
/// Casimir. The boundary value `lambda = (n-1)/(n+1)` is flagged, not
/// asserted.
pub fn yang_mills(n: usize, lambda: Rat, g: Option<SquareMat>) -> Result<(Potential, ExampleSpec)> {
    if n < 2 {
        return Err(Error::InvalidParameter("yang_mills needs n >= 2".into()));
    }
    let g = match g {
        Some(g) => {
            if g.size() != n {
                return Err(Error::InvalidParameter("metric size mismatch".into()));
            }
            if !g.is_symmetric() {
                return Err(Error::InvalidParameter("metric must be symmetric".into()));
            }
            g
        }
        None => SquareMat::identity(n),
    };
    let ginv = g.inverse().map_err(|_| {
        Error::InvalidParameter("metric must be invertible".into())
    })?;
    let gens = GenSet::numbered(n)?;
    let mut w1 = NcPoly::zero();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let coeff = ginv.get(i, p).clone() * ginv.get(j, q).clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let c1 = commutator(&NcPoly::gen(i), &NcPoly::gen(j));
                    let c2 = commutator(&NcPoly::gen(p), &NcPoly::gen(q));
                    w1 = w1.add(&c1.mul(&c2).scaled(&coeff));
                }
            }
        }
    }
    let mut casimir = NcPoly::zero();
    for i in 0..n {
        for j in 0..n {
            let coeff = ginv.get(i, j).clone();
            if !coeff.is_zero() {
                casimir = casimir.add(&NcPoly::gen(i).mul(&NcPoly::gen(j)).scaled(&coeff));
            }
        }
    }
    let w2 = casimir.pow(2);
    let poly = w1.add(&w2.scaled(&lambda));
    let boundary = Rat::new((n as i64 - 1).into(), (n as i64 + 1).into());
    let tag = if lambda == boundary {
        ExpectedTag::Conditional
    } else {
        ExpectedTag::Cy3
    };
    let w = Potential::new(gens, poly)?;
    let spec = ExampleSpec {
        family: "yang_mills".into(),
        description: format!("yang-mills quartic, n={n}, lambda={lambda}"),
        n,
        degree: 4,
        tag,
    };
    Ok((w, spec))
}

/// One-variable power potential `x^(N+1)`; never 3-Calabi-Yau.
pub fn power_potential(relation_degree: usize) -> Result<(Potential, ExampleSpec)> {
    if relation_degree < 2 {
        return Err(Error::InvalidParameter("need N >= 2".into()));
    }
    let gens = GenSet::new(["x"])?;
    let poly = NcPoly::gen(0).pow(relation_degree + 1);
    let w = Potential::new(gens, poly)?;
    let spec = ExampleSpec {
        family: "power".into(),
        description: format!("power potential x^{}", relation_degree + 1),
        n: 1,
        degree: relation_degree + 1,
        tag: ExpectedTag::NotCy3,
    };
    Ok((w, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::cyclic_derivative;
    use crate::rat;

    #[test]
    fn antisymmetrizer_three_variables() {
        let (w, spec) = antisymmetrizer(3).unwrap();
        // (x1 x2 - x2 x1) x3
        let p = w.poly();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Word::from_letters(&[0, 1, 2])), rat_int(1));
        assert_eq!(p.coeff(&Word::from_letters(&[1, 0, 2])), rat_int(-1));
        assert_eq!(spec.tag, ExpectedTag::Cy3);
        assert!(antisymmetrizer(4).is_err());
    }

    #[test]
    fn sklyanin_tags() {
        assert_eq!(
            sklyanin(rat_int(1), rat_int(1), rat_int(1)).unwrap().1.tag,
            ExpectedTag::Cy3
        );
        // a = b = 3c sits in the excluded cubic locus over the rationals
        assert_eq!(
            sklyanin(rat_int(3), rat_int(3), rat_int(1)).unwrap().1.tag,
            ExpectedTag::Conditional
        );
        // coordinate point (1:0:0)
        assert_eq!(
            sklyanin(rat_int(1), rat_int(0), rat_int(0)).unwrap().1.tag,
            ExpectedTag::Conditional
        );
    }

    #[test]
    fn cubic_type_a_tags() {
        assert_eq!(
            cubic_type_a(rat_int(1), rat_int(1), rat_int(1)).unwrap().1.tag,
            ExpectedTag::Cy3
        );
        // a^2 = 4 b^2 = 16 c^2 with a = 4, b = 2, c = 1
        assert_eq!(
            cubic_type_a(rat_int(4), rat_int(2), rat_int(1)).unwrap().1.tag,
            ExpectedTag::Conditional
        );
    }

    #[test]
    fn yang_mills_identity_metric() {
        let (w, spec) = yang_mills(3, rat_int(0), None).unwrap();
        assert_eq!(w.degree(), 4);
        assert_eq!(spec.tag, ExpectedTag::Cy3);
        // with the identity metric, w2 = (sum x_i^2)^2 exactly
        let (w2only, _) = yang_mills(3, rat_int(1), None).unwrap();
        let diff = w2only.poly().sub(w.poly());
        let mut square = NcPoly::zero();
        for i in 0..3 {
            square = square.add(&NcPoly::gen(i).pow(2));
        }
        assert_eq!(diff, square.pow(2));
        // boundary lambda = (n-1)/(n+1) = 1/2 is conditional
        assert_eq!(
            yang_mills(3, rat(1, 2), None).unwrap().1.tag,
            ExpectedTag::Conditional
        );
    }

    #[test]
    fn power_potential_relations() {
        let (w, spec) = power_potential(2).unwrap();
        assert_eq!(spec.tag, ExpectedTag::NotCy3);
        let r = cyclic_derivative(w.poly(), 0);
        assert_eq!(r.coeff(&Word::from_letters(&[0, 0])), rat_int(3));
    }
}
