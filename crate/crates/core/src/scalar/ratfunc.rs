//! The rational function field GF(2)(X, Y).
//!
//! Bivariate polynomials are stored as polynomials in `Y` whose coefficients
//! are dense GF(2)[X] polynomials. Fractions are kept in lowest terms with the
//! gcd computed by a primitive pseudo-remainder sequence over GF(2)[X][Y].

use std::fmt;

use super::gf2poly::Gf2Poly;
use super::ScalarError;

/// Polynomial in GF(2)[X][Y]; `coeffs[j]` is the coefficient of `Y^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<Gf2Poly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::constant(Gf2Poly::one())
    }

    pub fn constant(c: Gf2Poly) -> Self {
        let mut p = BiPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `X^dx Y^dy`.
    pub fn monomial(dx: usize, dy: usize) -> Self {
        let mut coeffs = vec![Gf2Poly::zero(); dy + 1];
        coeffs[dy] = Gf2Poly::monomial(dx);
        BiPoly { coeffs }
    }

    /// Sum of monomials given as `(degX, degY)` pairs; repeated pairs cancel.
    pub fn from_terms(terms: &[(usize, usize)]) -> Self {
        let mut p = BiPoly::zero();
        for &(dx, dy) in terms {
            p = p.add(&BiPoly::monomial(dx, dy));
        }
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Gf2Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn deg_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &Gf2Poly {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Monomials as `(degX, degY)`, sorted descending lexicographically.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(dy, c)| c.exponents().into_iter().map(move |dx| (dx, dy)))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            let c = match (self.coeffs.get(j), other.coeffs.get(j)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut p = BiPoly { coeffs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![Gf2Poly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_assign(&a.mul(b));
                }
            }
        }
        let mut p = BiPoly { coeffs };
        p.trim();
        p
    }

    fn scale(&self, c: &Gf2Poly) -> BiPoly {
        let mut p = BiPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        };
        p.trim();
        p
    }

    fn shift_y(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![Gf2Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly { coeffs }
    }

    /// gcd of the GF(2)[X] coefficients.
    fn content(&self) -> Gf2Poly {
        self.coeffs
            .iter()
            .fold(Gf2Poly::zero(), |g, c| g.gcd(c))
    }

    /// Divide every coefficient by `c`, which must divide each exactly.
    fn div_content(&self, c: &Gf2Poly) -> BiPoly {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.divrem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        }
    }

    fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        self.div_content(&self.content())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b` in Y.
    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y().expect("pseudo-remainder by zero");
        let lb = b.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            r = r.scale(&lb).add(&b.shift_y(dr - db).scale(&lr));
        }
        r
    }

    /// Exact division; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &BiPoly) -> Option<BiPoly> {
        let db = b.deg_y()?;
        let lb = b.lc().clone();
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        while let Some(dr) = r.deg_y() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.lc().divrem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let term = BiPoly::constant(c).shift_y(dr - db);
            r = r.add(&b.mul(&term));
            q = q.add(&term);
        }
        Some(q)
    }

    /// Greatest common divisor, unique because GF(2) has no nontrivial units.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Image under `X -> X^2, Y -> Y^2`; equals the square of the polynomial.
    pub fn square(&self) -> BiPoly {
        let mut coeffs = vec![Gf2Poly::zero(); 2 * self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * j] = c.square();
        }
        let mut p = BiPoly { coeffs };
        p.trim();
        p
    }

    pub fn sqrt(&self) -> Option<BiPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j % 2 == 1 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                coeffs.push(c.sqrt()?);
            }
        }
        let mut p = BiPoly { coeffs };
        p.trim();
        Some(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(dx, dy)| {
                let mut factors = Vec::new();
                match dx {
                    0 => {}
                    1 => factors.push("X".to_string()),
                    _ => factors.push(format!("X^{dx}")),
                }
                match dy {
                    0 => {}
                    1 => factors.push("Y".to_string()),
                    _ => factors.push(format!("Y^{dy}")),
                }
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of GF(2)(X, Y) in lowest terms; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: BiPoly::one(), den: BiPoly::one() }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc { num: p, den: BiPoly::one() }
    }

    pub fn x() -> Self {
        RatFunc::from_poly(BiPoly::monomial(1, 0))
    }

    pub fn y() -> Self {
        RatFunc::from_poly(BiPoly::monomial(0, 1))
    }

    /// Normalizing constructor.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(RatFunc { num, den })
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return RatFunc::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc { num: n1.mul(&n2), den: d1.mul(&d2) }
    }

    pub fn inv(&self) -> Result<RatFunc, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RatFunc { num: self.den.clone(), den: self.num.clone() })
    }

    pub fn square(&self) -> RatFunc {
        RatFunc { num: self.num.square(), den: self.den.square() }
    }

    /// Square root; a reduced fraction is a square iff numerator and
    /// denominator both are.
    pub fn sqrt(&self) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.sqrt()?, den: self.den.sqrt()? })
    }

    /// Parse `poly` or `(poly)/(poly)` where a poly is a `+`-separated sum of
    /// `1`, `0`, or `*`-separated factors `X`, `Y`, `X^k`, `Y^k`.
    pub fn parse(s: &str) -> Result<RatFunc, ScalarError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match split_fraction(&s) {
            Some((n, d)) => (parse_poly(n)?, parse_poly(d)?),
            None => (parse_poly(strip_parens(&s))?, BiPoly::one()),
        };
        RatFunc::new(num, den)
    }
}

fn strip_parens(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') && s.len() >= 2 {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                return Some((strip_parens(&s[..i]), strip_parens(&s[i + 1..])));
            }
            _ => {}
        }
    }
    None
}

fn parse_poly(s: &str) -> Result<BiPoly, ScalarError> {
    let bad = || ScalarError::Parse(format!("malformed polynomial `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut p = BiPoly::zero();
    for term in s.split('+') {
        if term.is_empty() {
            return Err(bad());
        }
        if term == "0" {
            continue;
        }
        let (mut dx, mut dy) = (0usize, 0usize);
        for factor in term.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<usize>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            match var {
                "X" => dx += exp,
                "Y" => dy += exp,
                "1" if exp == 1 => {}
                _ => return Err(bad()),
            }
        }
        p = p.add(&BiPoly::monomial(dx, dy));
    }
    Ok(p)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn normalizes_common_factors() {
        // (X^2+Y^2)/(X+Y) = X+Y in characteristic two
        assert_eq!(rf("(X^2+Y^2)/(X+Y)"), rf("X+Y"));
        assert_eq!(rf("(X*Y+X)/(X)"), rf("Y+1"));
        assert_eq!(rf("(X^2*Y+X*Y^2)/(X*Y)").to_string(), "X+Y");
    }

    #[test]
    fn display_sorted_descending() {
        let p = rf("1+X^2*Y");
        assert_eq!(p.to_string(), "X^2*Y+1");
        assert_eq!(rf("(X^2*Y+1)/(X+Y)").to_string(), "(X^2*Y+1)/(X+Y)");
        assert_eq!(rf("(X^2+Y)/(X)").to_string(), "(X^2+Y)/(X)");
    }

    #[test]
    fn gcd_nontrivial_bivariate() {
        let a = BiPoly::from_terms(&[(1, 0), (0, 1), (0, 0)]); // X+Y+1
        let b = BiPoly::from_terms(&[(1, 1), (0, 0)]); // XY+1
        let c = BiPoly::from_terms(&[(2, 0), (0, 1)]); // X^2+Y
        let g = a.mul(&c).gcd(&b.mul(&c));
        assert_eq!(g, c);
    }

    #[test]
    fn arithmetic_identities() {
        let a = rf("(X+1)/(Y)");
        let b = rf("(Y^2+X)/(X*Y+1)");
        let ab = a.mul(&b);
        assert_eq!(ab.mul(&b.inv().unwrap()), a);
        assert!(a.add(&a).is_zero());
        assert_eq!(a.square().sqrt().unwrap(), a);
        assert!(RatFunc::x().sqrt().is_none());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(RatFunc::parse("Z+1").is_err());
        assert!(RatFunc::parse("(X)/(0)").is_err());
        assert!(RatFunc::parse("X++Y").is_err());
    }
}
