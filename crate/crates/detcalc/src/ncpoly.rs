//! Polynomials in two noncommuting symbols with exact rational coefficients.

use crate::{c64, CMatrix, DetError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Largest order accepted by [`tk_polynomial`].
pub const MAX_TK_ORDER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

/// A word over `{A, B}`. Ordered by length first, then lexicographically
/// with `A < B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NCWord(Vec<Letter>);

impl NCWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn parse(s: &str) -> Result<Self, DetError> {
        s.chars()
            .map(|c| match c {
                'A' => Ok(Letter::A),
                'B' => Ok(Letter::B),
                _ => Err(DetError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        NCWord(v)
    }

    /// Lexicographically smallest rotation.
    pub fn canonical_rotation(&self) -> NCWord {
        let n = self.0.len();
        if n < 2 {
            return self.clone();
        }
        let mut best: Option<Vec<Letter>> = None;
        for shift in 0..n {
            let rot: Vec<Letter> = self.0[shift..]
                .iter()
                .chain(&self.0[..shift])
                .copied()
                .collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
        NCWord(best.unwrap())
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::A { 'A' } else { 'B' })?;
        }
        Ok(())
    }
}

/// Finite sum of words with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, BigRational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(word: NCWord, coeff: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(NCWord(vec![l]), BigRational::one())
    }

    /// Builds from `(word, numerator, denominator)` triples.
    pub fn from_triples<'a, I>(triples: I) -> Result<Self, DetError>
    where
        I: IntoIterator<Item = (&'a str, i64, i64)>,
    {
        let mut p = Self::zero();
        for (w, num, den) in triples {
            if den == 0 {
                return Err(DetError::Golden(format!("zero denominator for {w}")));
            }
            p.add_term(
                NCWord::parse(w)?,
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            );
        }
        Ok(p)
    }

    pub fn add_term(&mut self, word: NCWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(word.clone())
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &NCWord) -> BigRational {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in &self.terms {
            p.add_term(w.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                p.add_term(w1.concat(w2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut p = NCPoly::monomial(NCWord::empty(), BigRational::one());
        for _ in 0..n {
            p = p.mul(self);
        }
        p
    }

    /// Terms of total degree `m`.
    pub fn homogeneous_part(&self, m: usize) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == m)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(NCWord::degree).collect();
        d.dedup();
        d
    }
}

impl fmt::Display for NCPoly {
    /// One `coefficient word` pair per line, e.g. `-1 AB` or `1/2 ABAB`;
    /// the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            if c.denom().is_one() {
                write!(f, "{} {}", c.numer(), w)?;
            } else {
                write!(f, "{}/{} {}", c.numer(), c.denom(), w)?;
            }
        }
        Ok(())
    }
}

/// Replaces each word by its smallest rotation and merges coefficients.
pub fn cyclic_reduce(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.canonical_rotation(), c.clone());
    }
    out
}

/// Full expansion `sum_{j=1}^{k-1} ((A + B - AB)^j - A^j - B^j) / j`.
///
/// The parameter `t` of the generating expression counts letters, so its
/// homogeneous parts are simply the parts of fixed word length.
pub fn tk_generator(k: u32) -> Result<NCPoly, DetError> {
    if k == 0 || k > MAX_TK_ORDER {
        return Err(DetError::UnsupportedOrder(k));
    }
    let a = NCPoly::letter(Letter::A);
    let b = NCPoly::letter(Letter::B);
    let x = a.add(&b).sub(&a.mul(&b));
    let mut total = NCPoly::zero();
    let mut xp = NCPoly::monomial(NCWord::empty(), BigRational::one());
    let mut ap = xp.clone();
    let mut bp = xp.clone();
    for j in 1..k {
        xp = xp.mul(&x);
        ap = ap.mul(&a);
        bp = bp.mul(&b);
        let inv = BigRational::new(BigInt::one(), BigInt::from(j));
        total = total.add(&xp.sub(&ap).sub(&bp).scale(&inv));
    }
    Ok(total)
}

/// `T_k(A, B)`: the parts of degree `k..=2k-2` of [`tk_generator`], as
/// generated (apply [`cyclic_reduce`] for the canonical representative).
pub fn tk_polynomial(k: u32) -> Result<NCPoly, DetError> {
    let full = tk_generator(k)?;
    let mut t = NCPoly::zero();
    for (w, c) in full.terms() {
        let d = w.degree() as u32;
        if d >= k && d + 2 <= 2 * k {
            t.add_term(w.clone(), c.clone());
        }
    }
    Ok(t)
}

fn ratio_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let sign = if c.is_negative() { -1.0 } else { 1.0 };
        sign * f64::INFINITY
    })
}

/// Substitutes matrices for `A` and `B`. Word products are cached by prefix.
pub fn eval_poly(p: &NCPoly, a: &CMatrix, b: &CMatrix) -> Result<CMatrix, DetError> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(DetError::Dimension(format!(
            "eval_poly needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut cache: HashMap<Vec<Letter>, CMatrix> = HashMap::new();
    let mut out = CMatrix::zeros(n, n);
    for (w, c) in p.terms() {
        let letters = w.letters();
        let value = if letters.is_empty() {
            CMatrix::identity(n)
        } else {
            // longest cached prefix, then extend one letter at a time
            let mut len = letters.len();
            while len > 1 && !cache.contains_key(&letters[..len]) {
                len -= 1;
            }
            let mut acc = match cache.get(&letters[..len]) {
                Some(m) => m.clone(),
                None => {
                    len = 1;
                    if letters[0] == Letter::A {
                        a.clone()
                    } else {
                        b.clone()
                    }
                }
            };
            for i in len..letters.len() {
                acc = &acc * if letters[i] == Letter::A { a } else { b };
                cache.insert(letters[..=i].to_vec(), acc.clone());
            }
            acc
        };
        out = &out + &value.scale(c64(ratio_to_f64(c)));
    }
    Ok(out)
}

/// Convenience: `tr p(A, B)`.
pub fn trace_poly(p: &NCPoly, a: &CMatrix, b: &CMatrix) -> Result<Complex64, DetError> {
    eval_poly(p, a, b)?.trace()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> NCWord {
        NCWord::parse(s).unwrap()
    }

    #[test]
    fn rotations_share_canonical_word() {
        assert_eq!(
            w("ABAB").canonical_rotation(),
            w("BABA").canonical_rotation()
        );
        for s in ["AAB", "ABA", "BAA"] {
            assert_eq!(w(s).canonical_rotation(), w("AAB"));
        }
        assert!(NCWord::parse("ABC").is_err());
    }

    #[test]
    fn low_orders() {
        assert!(tk_polynomial(1).unwrap().is_zero());
        let t2 = tk_polynomial(2).unwrap();
        assert_eq!(t2, NCPoly::from_triples([("AB", -1, 1)]).unwrap());
        assert_eq!(t2.to_string(), "-1 AB");
        assert_eq!(tk_polynomial(1).unwrap().to_string(), "0");
        let t3 = NCPoly::from_triples([("AAB", -1, 1), ("ABB", -1, 1), ("ABAB", 1, 2)]).unwrap();
        let r3 = cyclic_reduce(&tk_polynomial(3).unwrap());
        assert_eq!(r3, t3);
        assert_eq!(r3.to_string(), "-1 AAB\n-1 ABB\n1/2 ABAB");
    }

    #[test]
    fn order_guard() {
        assert_eq!(tk_polynomial(0), Err(DetError::UnsupportedOrder(0)));
        assert_eq!(tk_polynomial(9), Err(DetError::UnsupportedOrder(9)));
        assert!(tk_polynomial(8).is_ok());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = NCPoly::from_triples([("AB", 1, 2), ("AB", -1, 2)]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn scalar_evaluation() {
        let one = CMatrix::identity(1);
        let p = NCPoly::from_triples([("AB", -1, 1)]).unwrap();
        assert_eq!(eval_poly(&p, &one, &one).unwrap()[(0, 0)], c64(-1.0));
        let z = eval_poly(
            &NCPoly::zero(),
            &CMatrix::identity(3),
            &CMatrix::identity(3),
        )
        .unwrap();
        assert_eq!(z, CMatrix::zeros(3, 3));
        assert!(eval_poly(&p, &CMatrix::identity(2), &CMatrix::identity(3)).is_err());
    }
}
