//! Exact sparse Laurent polynomials in the two deformation parameters.
//!
//! `Laurent2` is the ring Z[r, r^-1, s, s^-1] with arbitrary-precision
//! integer coefficients, stored as a map from exponent pairs `(a, b)`
//! (meaning `r^a * s^b`) to nonzero coefficients.  `Laurent1` is the
//! one-parameter ring Z[q, q^-1] obtained by the specialization
//! `r = q`, `s = q^-1`, under which `c * r^a * s^b` maps to `c * q^(a-b)`.
//!
//! # Key operations
//!
//! * ring arithmetic (`+`, `-`, `*`, negation), always canonical: zero
//!   coefficients are never stored, so `==` is structural equality;
//! * [`Laurent2::div_exact_r_minus_s`], exact division by `(r - s)` with a
//!   [`NotDivisible`] error carrying the obstructing residue;
//! * [`Laurent2::specialize_q`], the ring homomorphism onto `Laurent1`;
//! * `Display`/`FromStr` with a stable term order so rendered values can be
//!   parsed back verbatim.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Exact division by `(r - s)` failed; the dividend was not a multiple.
///
/// `remainder` is the nonzero residue in `s` alone that is left over at the
/// lowest `r`-degree when the division is run from the top `r`-degree down.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not divisible by (r - s): residue {remainder}")]
pub struct NotDivisible {
    pub remainder: Laurent2,
}

/// A malformed polynomial string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a Laurent polynomial: {reason}")]
pub struct ParseLaurentError {
    pub input: String,
    pub reason: String,
}

/// Element of Z[r, r^-1, s, s^-1].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Laurent2::default()
    }

    pub fn one() -> Self {
        Laurent2::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Laurent2::monomial(c, 0, 0)
    }

    /// `c * r^a * s^b`.
    pub fn monomial<T: Into<BigInt>>(c: T, a: i64, b: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Laurent2 { terms }
    }

    pub fn var_r() -> Self {
        Laurent2::monomial(1, 1, 0)
    }

    pub fn var_s() -> Self {
        Laurent2::monomial(1, 0, 1)
    }

    pub fn r_minus_s() -> Self {
        Laurent2::var_r() - Laurent2::var_s()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    /// The single term of a monomial, if this is one.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64, i64)> {
        if self.terms.len() == 1 {
            let ((a, b), c) = self.terms.iter().next().unwrap();
            Some((c, *a, *b))
        } else {
            None
        }
    }

    fn add_term(&mut self, key: (i64, i64), c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Multiply in place by the unit monomial `r^a * s^b`.
    pub fn shift(&self, a: i64, b: i64) -> Laurent2 {
        let terms = self
            .terms
            .iter()
            .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
            .collect();
        Laurent2 { terms }
    }

    /// Exact quotient by `(r - s)`.
    ///
    /// Runs long division along the `r`-degree: writing the dividend as
    /// `sum_a r^a p_a(s)`, the quotient coefficients satisfy
    /// `q_(a-1) = p_a + s * q_a` from the top degree down, and the dividend
    /// is a multiple of `(r - s)` exactly when the final residue vanishes.
    pub fn div_exact_r_minus_s(&self) -> Result<Laurent2, NotDivisible> {
        if self.is_zero() {
            return Ok(Laurent2::zero());
        }
        // group terms as s-polynomials keyed by r-exponent
        let mut by_r: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            by_r.entry(a).or_default().insert(b, c.clone());
        }
        let a_max = *by_r.keys().next_back().unwrap();
        let a_min = *by_r.keys().next().unwrap();
        let mut quotient = Laurent2::zero();
        // carry holds q_a as an s-polynomial while we step a downward
        let mut carry: BTreeMap<i64, BigInt> = BTreeMap::new();
        for a in (a_min..=a_max).rev() {
            // q_(a-1) = p_a + s * q_a
            let mut next: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (b, c) in &carry {
                next.insert(b + 1, c.clone());
            }
            if let Some(p_a) = by_r.get(&a) {
                for (b, c) in p_a {
                    let entry = next.entry(*b).or_insert_with(BigInt::zero);
                    *entry += c;
                    if entry.is_zero() {
                        next.remove(b);
                    }
                }
            }
            carry = next;
            if a > a_min {
                for (b, c) in &carry {
                    quotient.add_term((a - 1, *b), c);
                }
            }
        }
        if carry.is_empty() {
            Ok(quotient)
        } else {
            let remainder = Laurent2 {
                terms: carry.into_iter().map(|(b, c)| ((0, b), c)).collect(),
            };
            Err(NotDivisible { remainder })
        }
    }

    /// The specialization `r = q`, `s = q^-1`.
    pub fn specialize_q(&self) -> Laurent1 {
        let mut out = Laurent1::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a - b, c);
        }
        out
    }
}

/// Element of Z[q, q^-1].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent1 {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent1 {
    pub fn zero() -> Self {
        Laurent1::default()
    }

    pub fn one() -> Self {
        Laurent1::monomial(1, 0)
    }

    /// `c * q^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent1 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c, *k))
        } else {
            None
        }
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }
}

// ---- arithmetic ----

impl AddAssign<&Laurent2> for Laurent2 {
    fn add_assign(&mut self, rhs: &Laurent2) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&Laurent2> for Laurent2 {
    fn sub_assign(&mut self, rhs: &Laurent2) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c.clone());
        }
    }
}

impl MulAssign<&Laurent2> for Laurent2 {
    fn mul_assign(&mut self, rhs: &Laurent2) {
        let product = (&*self) * rhs;
        *self = product;
    }
}

impl Mul<&Laurent2> for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

impl Add<&Laurent2> for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Laurent2> for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        Laurent2 { terms }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Laurent2, Add, add);
forward_owned_binop!(Laurent2, Sub, sub);
forward_owned_binop!(Laurent2, Mul, mul);

impl Neg for Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        -&self
    }
}

impl AddAssign<&Laurent1> for Laurent1 {
    fn add_assign(&mut self, rhs: &Laurent1) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Add<&Laurent1> for &Laurent1 {
    type Output = Laurent1;
    fn add(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Laurent1> for &Laurent1 {
    type Output = Laurent1;
    fn sub(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c.clone());
        }
        out
    }
}

impl Mul<&Laurent1> for &Laurent1 {
    type Output = Laurent1;
    fn mul(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = Laurent1::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Laurent1 {
    type Output = Laurent1;
    fn neg(self) -> Laurent1 {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        Laurent1 { terms }
    }
}

forward_owned_binop!(Laurent1, Add, add);
forward_owned_binop!(Laurent1, Sub, sub);
forward_owned_binop!(Laurent1, Mul, mul);

impl Neg for Laurent1 {
    type Output = Laurent1;
    fn neg(self) -> Laurent1 {
        -&self
    }
}

// ---- rendering ----

fn push_var(parts: &mut Vec<String>, name: &str, exp: i64) {
    if exp == 0 {
        return;
    }
    if exp == 1 {
        parts.push(name.to_string());
    } else {
        parts.push(format!("{name}^{exp}"));
    }
}

fn render_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigInt, Vec<(&'a str, i64)>)>,
{
    let mut first = true;
    let mut any = false;
    for (coeff, vars) in terms {
        any = true;
        let mag = coeff.abs();
        if first {
            if coeff.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if coeff.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut parts = Vec::new();
        let pure_exponents = vars.iter().all(|&(_, e)| e == 0);
        if !mag.is_one() || pure_exponents {
            parts.push(mag.to_string());
        }
        for (name, exp) in vars {
            push_var(&mut parts, name, exp);
        }
        write!(f, "{}", parts.join("*"))?;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Laurent2 {
    /// Terms in graded order, total degree then r-exponent descending,
    /// e.g. `3*r^-1*s^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a as i128 + b as i128, a)));
        render_terms(
            f,
            keys.into_iter()
                .map(|(a, b)| (self.terms[&(a, b)].clone(), vec![("r", a), ("s", b)])),
        )
    }
}

impl fmt::Display for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(&k, c)| (c.clone(), vec![("q", k)])),
        )
    }
}

// ---- parsing ----

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Some(text.parse().unwrap())
    }

    fn signed_int(&mut self) -> Option<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mag: BigInt = self.digits()?;
        let val = i64::try_from(mag).ok()?;
        Some(if neg { -val } else { val })
    }
}

impl FromStr for Laurent2 {
    type Err = ParseLaurentError;

    /// Whitespace-insensitive; the `*` between factors is optional, so
    /// `3r^-1s^2 - 1` and `3*r^-1*s^2 - 1` parse identically.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParseLaurentError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut cur = Cursor::new(input);
        let mut out = Laurent2::zero();
        let mut first = true;
        loop {
            let negative = match cur.peek() {
                None if first => return Err(fail("empty input")),
                None => break,
                Some(b'+') => {
                    cur.bump();
                    false
                }
                Some(b'-') => {
                    cur.bump();
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(fail(&format!("expected + or - before {:?}", c as char))),
            };
            first = false;
            let mut coeff = BigInt::one();
            let mut a = 0i64;
            let mut b = 0i64;
            let mut saw_factor = false;
            loop {
                match cur.peek() {
                    Some(b'*') => {
                        cur.bump();
                        continue;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        coeff *= cur.digits().unwrap();
                        saw_factor = true;
                    }
                    Some(c @ (b'r' | b's')) => {
                        cur.bump();
                        let exp = if cur.peek() == Some(b'^') {
                            cur.bump();
                            cur.signed_int()
                                .ok_or_else(|| fail("expected integer exponent after ^"))?
                        } else {
                            1
                        };
                        if c == b'r' {
                            a += exp;
                        } else {
                            b += exp;
                        }
                        saw_factor = true;
                    }
                    _ => break,
                }
            }
            if !saw_factor {
                return Err(fail("expected a term"));
            }
            if negative {
                coeff = -coeff;
            }
            out += &Laurent2::monomial(coeff, a, b);
        }
        Ok(out)
    }
}
