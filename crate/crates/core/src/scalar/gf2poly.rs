//! Dense univariate polynomials over GF(2), one bit per coefficient.

use std::cmp::Ordering;
use std::fmt;

/// Polynomial over GF(2) stored little-endian in 64-bit words.
///
/// The word vector never has trailing zero words, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// The monomial `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        Gf2Poly { words }
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut p = Gf2Poly { words: vec![bits] };
        p.trim();
        p
    }

    /// Low 64 coefficients; only meaningful when `degree() < 64`.
    pub fn low_bits(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    pub fn add_assign(&mut self, other: &Gf2Poly) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(&other.words) {
            *w ^= s;
        }
        self.trim();
    }

    /// Multiply by `X^k`.
    pub fn shl(&self, k: usize) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            let mut a = a;
            while a != 0 {
                let b = a.trailing_zeros() as usize;
                a &= a - 1;
                // add other << (64 i + b)
                for (j, &o) in other.words.iter().enumerate() {
                    words[i + j] ^= o << b;
                    if b != 0 {
                        words[i + j + 1] ^= o >> (64 - b);
                    }
                }
            }
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = Gf2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quo.flip(shift);
            rem.add_assign(&divisor.shl(shift));
        }
        quo.trim();
        (quo, rem)
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        self.divrem(divisor).1
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Every exponent doubled: the image under `X -> X^2`, which is also the
    /// square of the polynomial in characteristic two.
    pub fn square(&self) -> Gf2Poly {
        let mut p = Gf2Poly::zero();
        for e in self.exponents() {
            p.flip(2 * e);
        }
        p.trim();
        p
    }

    /// Square root when every exponent is even.
    pub fn sqrt(&self) -> Option<Gf2Poly> {
        let exps = self.exponents();
        if exps.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let mut p = Gf2Poly::zero();
        for e in exps {
            p.flip(e / 2);
        }
        p.trim();
        Some(p)
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Irreducibility over GF(2) by trial division against every polynomial of
/// degree at most `deg/2`. Degree-0 polynomials are not irreducible.
pub fn is_irreducible(p: &Gf2Poly) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if !p.coeff(0) {
        return false;
    }
    for dd in 1..=d / 2 {
        // monic divisors of degree dd: bit dd set, all lower-bit patterns
        let base = 1u64 << dd;
        for low in 0..base {
            let q = Gf2Poly::from_bits(base | low);
            if p.rem(&q).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest irreducible polynomial of degree `deg`
/// (as a bit pattern read as an integer), `deg <= 32`.
pub fn smallest_irreducible(deg: u32) -> u64 {
    assert!((1..=32).contains(&deg), "degree out of range");
    let base = 1u64 << deg;
    (0..base)
        .map(|low| base | low)
        .find(|&bits| is_irreducible(&Gf2Poly::from_bits(bits)))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divrem_round_trip() {
        let a = Gf2Poly::from_bits(0b1011_0111);
        let b = Gf2Poly::from_bits(0b110_1001);
        let prod = a.mul(&b);
        let (q, r) = prod.divrem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = prod.add(&Gf2Poly::one()).divrem(&b);
        assert_eq!(q, a);
        assert!(r.is_one());
    }

    #[test]
    fn multiword_shift() {
        let p = Gf2Poly::from_bits(0b11).shl(100);
        assert_eq!(p.degree(), Some(101));
        assert_eq!(p.exponents(), vec![100, 101]);
        let sq = Gf2Poly::monomial(40).add(&Gf2Poly::one()).square();
        assert_eq!(sq.exponents(), vec![0, 80]);
        assert_eq!(sq.sqrt().unwrap().exponents(), vec![0, 40]);
    }

    #[test]
    fn gcd_of_products() {
        let f = Gf2Poly::from_bits(0b111); // X^2+X+1
        let g = Gf2Poly::from_bits(0b1011); // X^3+X+1
        let h = Gf2Poly::from_bits(0b11); // X+1
        let a = f.mul(&h);
        let b = g.mul(&h);
        assert_eq!(a.gcd(&b), h);
    }

    #[test]
    fn irreducibility_small_degrees() {
        // degree-2: only X^2+X+1; degree-3: X^3+X+1, X^3+X^2+1
        let irr2: Vec<u64> = (4..8).filter(|&b| is_irreducible(&Gf2Poly::from_bits(b))).collect();
        assert_eq!(irr2, vec![0b111]);
        let irr3: Vec<u64> = (8..16).filter(|&b| is_irreducible(&Gf2Poly::from_bits(b))).collect();
        assert_eq!(irr3, vec![0b1011, 0b1101]);
        assert_eq!(smallest_irreducible(4), 0b10011);
        assert_eq!(smallest_irreducible(8), 0b1_0001_1011);
    }
}
