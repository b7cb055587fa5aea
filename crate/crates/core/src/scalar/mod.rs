//! Exact coefficient fields of characteristic two.
//!
//! Two backends are supported: finite fields GF(2^k) with an explicitly
//! supplied modulus, and the rational function field GF(2)(X, Y).

pub mod gf2poly;
pub mod ratfunc;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use gf2poly::{is_irreducible, smallest_irreducible, Gf2Poly};
pub use ratfunc::{BiPoly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element has no square root in this field")]
    NoSquareRoot,
    #[error("modulus is reducible over GF(2)")]
    ReducibleModulus,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Largest supported extension degree; products of residues fit in a u64.
pub const MAX_GF2K_DEGREE: u32 = 32;
const TABLE_DEGREE_LIMIT: u32 = 16;

#[derive(Debug)]
struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// GF(2)[t]/(modulus) with `deg(modulus) = k`.
#[derive(Clone)]
pub struct Gf2k {
    k: u32,
    modulus: u64,
    tables: Option<Arc<LogTables>>,
}

impl PartialEq for Gf2k {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Gf2k {}

impl fmt::Debug for Gf2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:?}", self.k, Gf2Poly::from_bits(self.modulus))
    }
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut a = a;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
    }
    acc
}

impl Gf2k {
    pub fn new(k: u32, modulus: u64) -> Result<Self, ScalarError> {
        if !(1..=MAX_GF2K_DEGREE).contains(&k) {
            return Err(ScalarError::BadModulus(format!(
                "extension degree {k} outside 1..={MAX_GF2K_DEGREE}"
            )));
        }
        if 64 - modulus.leading_zeros() != k + 1 {
            return Err(ScalarError::BadModulus(format!(
                "modulus degree does not equal k = {k}"
            )));
        }
        if !is_irreducible(&Gf2Poly::from_bits(modulus)) {
            return Err(ScalarError::ReducibleModulus);
        }
        let mut field = Gf2k { k, modulus, tables: None };
        if k <= TABLE_DEGREE_LIMIT && k > 1 {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> u64 {
        1u64 << self.k
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let mut p = clmul(a, b);
        let k = self.k;
        // reduce from the top bit down
        for bit in (k..(2 * k).max(k + 1)).rev() {
            if (p >> bit) & 1 == 1 {
                p ^= self.modulus << (bit - k);
            }
        }
        p
    }

    fn build_tables(&self) -> LogTables {
        let order = (1u64 << self.k) - 1;
        for g in 2..(1u64 << self.k) {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u64;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x as u32);
                x = self.mul_slow(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; 1usize << self.k];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return LogTables { log, exp };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let order = t.exp.len();
                let s = t.log[a as usize] as usize + t.log[b as usize] as usize;
                let s = if s >= order { s - order } else { s };
                t.exp[s] as u64
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let order = t.exp.len();
            let l = t.log[a as usize] as usize;
            return Some(t.exp[(order - l) % order] as u64);
        }
        // a^(2^k - 2)
        Some(self.pow(a, (1u64 << self.k) - 2))
    }

    /// Unique square root: the Frobenius map applied k-1 times.
    pub fn sqrt(&self, a: u64) -> u64 {
        let mut x = a;
        for _ in 1..self.k {
            x = self.mul(x, x);
        }
        x
    }
}

/// A coefficient field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum Field {
    Gf2k(Gf2k),
    RatFunc2,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FieldRepr {
    Gf2k { k: u32, modulus: Vec<u8> },
    Ratfunc2 {},
}

impl TryFrom<FieldRepr> for Field {
    type Error = ScalarError;

    fn try_from(repr: FieldRepr) -> Result<Self, Self::Error> {
        match repr {
            FieldRepr::Ratfunc2 {} => Ok(Field::RatFunc2),
            FieldRepr::Gf2k { k, modulus } => {
                if modulus.len() != k as usize + 1 || k > MAX_GF2K_DEGREE {
                    return Err(ScalarError::BadModulus(format!(
                        "expected {} modulus bits for k = {k}",
                        k as usize + 1
                    )));
                }
                let mut bits = 0u64;
                for (i, &b) in modulus.iter().enumerate() {
                    match b {
                        0 => {}
                        1 => bits |= 1 << i,
                        _ => return Err(ScalarError::BadModulus("bits must be 0 or 1".into())),
                    }
                }
                Ok(Field::Gf2k(Gf2k::new(k, bits)?))
            }
        }
    }
}

impl From<Field> for FieldRepr {
    fn from(f: Field) -> Self {
        match f {
            Field::RatFunc2 => FieldRepr::Ratfunc2 {},
            Field::Gf2k(g) => FieldRepr::Gf2k {
                k: g.k,
                modulus: (0..=g.k).map(|i| ((g.modulus >> i) & 1) as u8).collect(),
            },
        }
    }
}

/// An element of some [`Field`]; the field is always passed alongside.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Gf(u64),
    Rat(Arc<RatFunc>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gf(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Gf(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Field-independent addition: both backends add without the modulus.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(a ^ b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Arc::new(a.add(b))),
            (a, b) if b.is_zero() => a.clone(),
            (a, b) if a.is_zero() => b.clone(),
            _ => panic!("adding scalars from different backends"),
        }
    }

    pub fn rat(r: RatFunc) -> Scalar {
        Scalar::Rat(Arc::new(r))
    }

    pub fn as_rat(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Gf(_) => None,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gf(v) => write!(f, "{v:x}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Div,
}

/// How to enlarge a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionSpec {
    /// Degree multiplier `m` with an irreducible modulus of degree `k * m`.
    Degree { multiplier: u32, modulus: u64 },
    /// Adjoin square roots of `X` and `Y` to GF(2)(X, Y).
    SqrtXY,
}

/// Injective ring homomorphism from a field into an extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    /// Images of `1, t, ..., t^(k-1)` in the larger GF(2^(km)).
    Gf { images: Vec<u64> },
    /// `X -> X^2, Y -> Y^2` into a fresh copy of GF(2)(X, Y); on this field
    /// the substitution coincides with the Frobenius map.
    SqrtXY,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        match field {
            Field::Gf2k(g) => Embedding::Gf { images: (0..g.k).map(|i| 1u64 << i).collect() },
            Field::RatFunc2 => panic!("no identity embedding object for GF(2)(X, Y)"),
        }
    }

    pub fn apply(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Embedding::Gf { images }, Scalar::Gf(v)) => {
                let mut out = 0u64;
                let mut v = *v;
                while v != 0 {
                    let i = v.trailing_zeros() as usize;
                    out ^= images[i];
                    v &= v - 1;
                }
                Scalar::Gf(out)
            }
            (Embedding::SqrtXY, Scalar::Rat(r)) => Scalar::rat(r.square()),
            _ => panic!("embedding applied to a scalar of the wrong field"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub field: Field,
    pub embedding: Embedding,
}

impl Field {
    pub fn gf2() -> Field {
        Field::Gf2k(Gf2k::new(1, 0b11).expect("X+1 is irreducible"))
    }

    pub fn gf4() -> Field {
        Field::Gf2k(Gf2k::new(2, 0b111).expect("t^2+t+1 is irreducible"))
    }

    pub fn gf2k(k: u32, modulus: u64) -> Result<Field, ScalarError> {
        Ok(Field::Gf2k(Gf2k::new(k, modulus)?))
    }

    /// GF(2^k) with the smallest irreducible modulus of degree k; GF(2) uses
    /// the modulus `t + 1`.
    pub fn gf2k_default(k: u32) -> Result<Field, ScalarError> {
        if k == 1 {
            return Ok(Field::gf2());
        }
        if !(1..=MAX_GF2K_DEGREE).contains(&k) {
            return Err(ScalarError::BadModulus(format!("unsupported degree {k}")));
        }
        Field::gf2k(k, smallest_irreducible(k))
    }

    pub fn ratfunc2() -> Field {
        Field::RatFunc2
    }

    pub fn is_gf2(&self) -> bool {
        matches!(self, Field::Gf2k(g) if g.k == 1)
    }

    pub fn as_gf2k(&self) -> Option<&Gf2k> {
        match self {
            Field::Gf2k(g) => Some(g),
            Field::RatFunc2 => None,
        }
    }

    /// Number of elements, `None` for the infinite field.
    pub fn size(&self) -> Option<u64> {
        self.as_gf2k().map(Gf2k::size)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Gf2k(_) => Scalar::Gf(0),
            Field::RatFunc2 => Scalar::rat(RatFunc::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Gf2k(_) => Scalar::Gf(1),
            Field::RatFunc2 => Scalar::rat(RatFunc::one()),
        }
    }

    pub fn from_bool(&self, b: bool) -> Scalar {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Gf2k(g), Scalar::Gf(v)) => *v >> g.k == 0,
            (Field::RatFunc2, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Gf2k(g), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(g.mul(*x, *y)),
            (Field::RatFunc2, Scalar::Rat(x), Scalar::Rat(y)) => {
                if y.is_one() {
                    a.clone()
                } else if x.is_one() {
                    b.clone()
                } else {
                    Scalar::rat(x.mul(y))
                }
            }
            _ => panic!("multiplying scalars from the wrong field"),
        }
    }

    pub fn square(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Gf2k(g), Scalar::Gf(x)) => Scalar::Gf(g.mul(*x, *x)),
            (Field::RatFunc2, Scalar::Rat(x)) => Scalar::rat(x.square()),
            _ => panic!("squaring a scalar from the wrong field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, a) {
            (Field::Gf2k(g), Scalar::Gf(x)) => {
                g.inv(*x).map(Scalar::Gf).ok_or(ScalarError::DivisionByZero)
            }
            (Field::RatFunc2, Scalar::Rat(x)) => Ok(Scalar::rat(x.inv()?)),
            _ => Err(ScalarError::FieldMismatch),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    /// Checked arithmetic; `b` is ignored for `Inv`.
    pub fn arith(&self, a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if !self.contains(a) || (op != ArithOp::Inv && !self.contains(b)) {
            return Err(ScalarError::FieldMismatch);
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Div => self.div(a, b),
        }
    }

    pub fn sqrt(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, a) {
            (Field::Gf2k(g), Scalar::Gf(x)) => Ok(Scalar::Gf(g.sqrt(*x))),
            (Field::RatFunc2, Scalar::Rat(x)) => {
                x.sqrt().map(Scalar::rat).ok_or(ScalarError::NoSquareRoot)
            }
            _ => Err(ScalarError::FieldMismatch),
        }
    }

    /// The class of `t` in GF(2)[t]/(modulus), or `X` for GF(2)(X, Y).
    pub fn generator(&self) -> Scalar {
        match self {
            Field::Gf2k(g) if g.k == 1 => Scalar::Gf(1),
            Field::Gf2k(_) => Scalar::Gf(0b10),
            Field::RatFunc2 => Scalar::rat(RatFunc::x()),
        }
    }

    /// All elements of a finite field in increasing bit order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let g = self.as_gf2k()?;
        Some((0..g.size()).map(Scalar::Gf).collect())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Gf2k(g) => Scalar::Gf(rng.gen_range(0..g.size())),
            Field::RatFunc2 => {
                let poly = |rng: &mut R, max: usize| {
                    let terms: Vec<(usize, usize)> = (0..=max)
                        .flat_map(|dx| (0..=max - dx).map(move |dy| (dx, dy)))
                        .filter(|_| rng.gen_bool(0.4))
                        .collect();
                    BiPoly::from_terms(&terms)
                };
                let num = poly(rng, 2);
                let mut den = poly(rng, 1);
                if den.is_zero() {
                    den = BiPoly::one();
                }
                Scalar::rat(RatFunc::new(num, den).expect("nonzero denominator"))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Text form: lowercase hex for GF(2^k), fraction syntax for GF(2)(X, Y).
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Gf(v) => format!("{v:x}"),
            Scalar::Rat(r) => r.to_string(),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        match self {
            Field::Gf2k(g) => {
                let v = u64::from_str_radix(s.trim(), 16)
                    .map_err(|e| ScalarError::Parse(format!("`{s}`: {e}")))?;
                if v >> g.k != 0 {
                    return Err(ScalarError::Parse(format!("`{s}` exceeds {} bits", g.k)));
                }
                Ok(Scalar::Gf(v))
            }
            Field::RatFunc2 => Ok(Scalar::rat(RatFunc::parse(s)?)),
        }
    }

    /// Short human-readable name such as `GF(4)` or `F2(X,Y)`.
    pub fn name(&self) -> String {
        match self {
            Field::Gf2k(g) => format!("GF({})", g.size()),
            Field::RatFunc2 => "F2(X,Y)".to_string(),
        }
    }

    pub fn extend(&self, spec: &ExtensionSpec) -> Result<Extension, ScalarError> {
        match (self, spec) {
            (Field::Gf2k(g), ExtensionSpec::Degree { multiplier, modulus }) => {
                let big_k = g.k.checked_mul(*multiplier).filter(|&d| d >= 1).ok_or_else(|| {
                    ScalarError::BadModulus("degree multiplier must be at least 1".into())
                })?;
                let big = Gf2k::new(big_k, *modulus)?;
                let root = if g.k == 1 { 1 } else { find_root(g, &big) };
                let mut images = Vec::with_capacity(g.k as usize);
                let mut p = 1u64;
                for _ in 0..g.k {
                    images.push(p);
                    p = big.mul(p, root);
                }
                Ok(Extension { field: Field::Gf2k(big), embedding: Embedding::Gf { images } })
            }
            (Field::RatFunc2, ExtensionSpec::SqrtXY) => {
                Ok(Extension { field: Field::RatFunc2, embedding: Embedding::SqrtXY })
            }
            _ => Err(ScalarError::FieldMismatch),
        }
    }

    /// Extension of degree `multiplier` using the smallest irreducible modulus.
    pub fn extend_default(&self, multiplier: u32) -> Result<Extension, ScalarError> {
        let g = self.as_gf2k().ok_or(ScalarError::FieldMismatch)?;
        let big_k = g.k * multiplier;
        if !(1..=MAX_GF2K_DEGREE).contains(&big_k) {
            return Err(ScalarError::BadModulus(format!("unsupported degree {big_k}")));
        }
        let modulus = if big_k == 1 { 0b11 } else { smallest_irreducible(big_k) };
        self.extend(&ExtensionSpec::Degree { multiplier, modulus })
    }
}

/// Evaluate the bit polynomial `poly` at `x` in `field` by Horner's rule.
fn eval_bits(field: &Gf2k, poly: u64, x: u64) -> u64 {
    let mut acc = 0u64;
    for i in (0..64 - poly.leading_zeros()).rev() {
        acc = field.mul(acc, x) ^ ((poly >> i) & 1);
    }
    acc
}

/// A root in `big` of the modulus of `small`. The roots lie in the subfield of
/// order 2^k, which is the image of `x -> x^((2^K - 1)/(2^k - 1))`; the powers
/// of a generator of that subfield's unit group hit every root.
fn find_root(small: &Gf2k, big: &Gf2k) -> u64 {
    let sub_order = (1u64 << small.k) - 1;
    let cofactor = ((1u64 << big.k) - 1) / sub_order;
    for x in 2..big.size() {
        let y = big.pow(x, cofactor);
        let mut z = y;
        for _ in 0..sub_order {
            if eval_bits(big, small.modulus, z) == 0 {
                return z;
            }
            z = big.mul(z, y);
        }
    }
    unreachable!("an irreducible polynomial of degree k splits in GF(2^(km))")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf4_multiplication() {
        let f = Field::gf4();
        let t = f.generator();
        assert_eq!(f.mul(&t, &t), Scalar::Gf(0b11));
        assert_eq!(f.sqrt(&t).unwrap(), Scalar::Gf(0b11));
        // oracle: square every element
        for a in f.elements().unwrap() {
            let r = f.sqrt(&a).unwrap();
            assert_eq!(f.square(&r), a);
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Field::gf2k_default(8).unwrap();
        let g = f.as_gf2k().unwrap();
        for a in 0..256u64 {
            for b in (0..256u64).step_by(7) {
                assert_eq!(g.mul(a, b), g.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(Gf2k::new(2, 0b101).unwrap_err(), ScalarError::ReducibleModulus);
        assert!(matches!(Gf2k::new(3, 0b111), Err(ScalarError::BadModulus(_))));
    }

    #[test]
    fn extension_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = Field::gf4();
        let ext = f.extend_default(2).unwrap();
        let big = &ext.field;
        assert_eq!(ext.embedding.apply(&f.one()), big.one());
        for _ in 0..20 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let phi = |s: &Scalar| ext.embedding.apply(s);
            assert_eq!(phi(&f.mul(&a, &b)), big.mul(&phi(&a), &phi(&b)));
            assert_eq!(phi(&f.add(&a, &b)), big.add(&phi(&a), &phi(&b)));
        }
    }

    #[test]
    fn ratfunc_sqrt_adjunction() {
        let f = Field::ratfunc2();
        let x = f.generator();
        assert_eq!(f.sqrt(&x).unwrap_err(), ScalarError::NoSquareRoot);
        let ext = f.extend(&ExtensionSpec::SqrtXY).unwrap();
        let img = ext.embedding.apply(&x);
        assert_eq!(ext.field.sqrt(&img).unwrap(), x);
    }

    #[test]
    fn field_json_round_trip() {
        let f = Field::gf4();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"gf2k","k":2,"modulus":[1,1,1]}"#);
        assert_eq!(serde_json::from_str::<Field>(&s).unwrap(), f);
        let r: Field = serde_json::from_str(r#"{"kind":"ratfunc2"}"#).unwrap();
        assert_eq!(r, Field::RatFunc2);
        assert!(serde_json::from_str::<Field>(r#"{"kind":"gf2k","k":2,"modulus":[1,0,1]}"#).is_err());
        assert!(serde_json::from_str::<Field>(r#"{"kind":"ratfunc2","x":1}"#).is_err());
    }

    #[test]
    fn arith_errors() {
        let f = Field::gf4();
        let z = f.zero();
        assert_eq!(f.arith(&f.one(), &z, ArithOp::Div), Err(ScalarError::DivisionByZero));
        assert_eq!(f.arith(&Scalar::Gf(9), &z, ArithOp::Add), Err(ScalarError::FieldMismatch));
        let r = Field::ratfunc2();
        let a = r.parse("X^2+Y").unwrap();
        let q = r.arith(&a, &r.generator(), ArithOp::Div).unwrap();
        assert_eq!(r.format(&q), "(X^2+Y)/(X)");
    }
}
