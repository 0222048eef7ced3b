//! Binary field arithmetic GF(2^n) for n <= 8.
//!
//! Elements are residue classes of GF(2)[x] modulo an irreducible polynomial,
//! stored as coefficient bitvectors (bit k = coefficient of x^k). Every
//! element carries its [`FieldCtx`] so that mixing two fields is caught at
//! the operation site instead of producing garbage bits.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("field degree {0} out of range (1..=8)")]
    DegreeOutOfRange(u32),
    #[error("polynomial {0} does not have degree {1}")]
    WrongDegree(String, u32),
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("cannot parse polynomial {0:?}")]
    BadPolynomial(String),
    #[error("element value {0} out of range for GF(2^{1})")]
    ElementOutOfRange(u8, u32),
    #[error("cannot parse element literal {0:?}")]
    BadElement(String),
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("basis has {0} elements, field degree is {1}")]
    WrongBasisSize(usize, u32),
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("basis is not self-dual")]
    NotSelfDual,
}

fn poly_string(bits: u16) -> String {
    if bits == 0 {
        return "0".to_owned();
    }
    let mut terms = Vec::new();
    for k in (0..16).rev() {
        if bits >> k & 1 != 0 {
            terms.push(match k {
                0 => "1".to_owned(),
                1 => "x".to_owned(),
                _ => format!("x^{k}"),
            });
        }
    }
    terms.join("+")
}

/// Remainder of dividend mod divisor in GF(2)[x].
fn poly_rem(mut dividend: u32, divisor: u32) -> u32 {
    let dlen = 32 - divisor.leading_zeros();
    loop {
        let len = 32 - dividend.leading_zeros();
        if len < dlen {
            return dividend;
        }
        dividend ^= divisor << (len - dlen);
    }
}

/// An immutable field description: degree n and modulus polynomial.
///
/// Cheap to copy; equality of contexts is what makes two elements
/// compatible. For GF(4) the only accepted modulus is x^2+x+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldCtx {
    n: u32,
    poly: u16,
}

impl FieldCtx {
    pub fn new(n: u32, poly: u16) -> Result<Self, GaloisError> {
        if !(1..=8).contains(&n) {
            return Err(GaloisError::DegreeOutOfRange(n));
        }
        if 16 - poly.leading_zeros() != n + 1 {
            return Err(GaloisError::WrongDegree(poly_string(poly), n));
        }
        // trial division by every polynomial of degree 1..=n/2
        for d in 1..=n / 2 {
            for g in 1u32 << d..1u32 << (d + 1) {
                if poly_rem(u32::from(poly), g) == 0 {
                    return Err(GaloisError::Reducible(poly_string(poly)));
                }
            }
        }
        Ok(FieldCtx { n, poly })
    }

    /// GF(4) with modulus x^2+x+1 (the only irreducible quadratic).
    pub fn gf4() -> Self {
        FieldCtx { n: 2, poly: 0b111 }
    }

    /// Parses "x^2+x+1" style modulus strings.
    pub fn from_poly_str(s: &str) -> Result<Self, GaloisError> {
        let mut bits: u16 = 0;
        for term in s.split('+') {
            let term = term.trim();
            let k = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<u32>().ok())
                    .filter(|&e| e <= 15)
                    .ok_or_else(|| GaloisError::BadPolynomial(s.to_owned()))?,
            };
            if bits >> k & 1 != 0 {
                return Err(GaloisError::BadPolynomial(s.to_owned()));
            }
            bits |= 1 << k;
        }
        let n = 16 - bits.leading_zeros();
        if n < 2 {
            return Err(GaloisError::BadPolynomial(s.to_owned()));
        }
        FieldCtx::new(n - 1, bits)
    }

    pub fn poly_str(&self) -> String {
        poly_string(self.poly)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        1 << self.n
    }

    pub fn element(&self, bits: u8) -> Result<FieldElement, GaloisError> {
        if u32::from(bits) >= self.order() {
            return Err(GaloisError::ElementOutOfRange(bits, self.n));
        }
        Ok(FieldElement { bits, ctx: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            bits: 0,
            ctx: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            bits: 1,
            ctx: *self,
        }
    }

    /// The residue class of x. For GF(4) this is the primitive element u.
    pub fn x(&self) -> FieldElement {
        FieldElement {
            bits: 2,
            ctx: *self,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|b| FieldElement {
            bits: b as u8,
            ctx: *self,
        })
    }

    /// Parses an element literal. GF(4) uses the fixed alphabet
    /// {"0", "1", "u", "u2"}; other fields accept modulus-style
    /// polynomial strings in x.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, GaloisError> {
        if self.n == 2 {
            return match s {
                "0" => Ok(self.zero()),
                "1" => Ok(self.one()),
                "u" => self.element(2),
                "u2" => self.element(3),
                _ => Err(GaloisError::BadElement(s.to_owned())),
            };
        }
        match s {
            "0" => Ok(self.zero()),
            _ => {
                let bits = FieldCtx::from_poly_str_bits(s)
                    .ok_or_else(|| GaloisError::BadElement(s.to_owned()))?;
                if u32::from(bits) >= self.order() {
                    return Err(GaloisError::BadElement(s.to_owned()));
                }
                self.element(bits as u8)
            }
        }
    }

    fn from_poly_str_bits(s: &str) -> Option<u16> {
        let mut bits: u16 = 0;
        for term in s.split('+') {
            let k = match term.trim() {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")?
                    .parse::<u32>()
                    .ok()
                    .filter(|&e| e <= 15)?,
            };
            if bits >> k & 1 != 0 {
                return None;
            }
            bits |= 1 << k;
        }
        Some(bits)
    }
}

/// An element of GF(2^n), tagged with its field context.
///
/// The derived ordering sorts by coefficient bits, which for GF(4) is the
/// canonical element order 0 < 1 < u < u2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    bits: u8,
    ctx: FieldCtx,
}

impl FieldElement {
    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Addition with an explicit context check.
    pub fn checked_add(self, rhs: Self) -> Result<Self, GaloisError> {
        if self.ctx != rhs.ctx {
            return Err(GaloisError::ContextMismatch);
        }
        Ok(FieldElement {
            bits: self.bits ^ rhs.bits,
            ctx: self.ctx,
        })
    }

    /// Multiplication with an explicit context check.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, GaloisError> {
        if self.ctx != rhs.ctx {
            return Err(GaloisError::ContextMismatch);
        }
        let mut a = u16::from(self.bits);
        let mut b = u16::from(rhs.bits);
        let mut acc: u16 = 0;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.ctx.n & 1 != 0 {
                a ^= self.ctx.poly;
            }
        }
        Ok(FieldElement {
            bits: acc as u8,
            ctx: self.ctx,
        })
    }

    pub fn square(self) -> Self {
        self.checked_mul(self).expect("same context")
    }

    /// Field trace onto GF(2): x + x^2 + ... + x^(2^(n-1)).
    /// The result is always the class of 0 or of 1.
    pub fn trace(self) -> Self {
        let mut acc = self;
        let mut pow = self;
        for _ in 1..self.ctx.n {
            pow = pow.square();
            acc = acc + pow;
        }
        acc
    }

    /// Trace as a subfield bit, for use as an exponent.
    pub fn trace_bit(self) -> u8 {
        self.trace().bits
    }

    /// Expansion coefficients over a self-dual basis: bit i is
    /// tr(x * e_i). Rejects bases that are not self-dual, where the
    /// trace formula does not reproduce the expansion.
    pub fn coordinates(self, basis: &DualBasis) -> Result<Vec<u8>, GaloisError> {
        if basis.ctx() != self.ctx {
            return Err(GaloisError::ContextMismatch);
        }
        if !basis.is_self_dual() {
            return Err(GaloisError::NotSelfDual);
        }
        Ok(basis
            .elements()
            .iter()
            .map(|e| (self * *e).trace_bit())
            .collect())
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    /// Panics on mismatched contexts; use [`FieldElement::checked_add`]
    /// when the contexts are not structurally identical.
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field context mismatch")
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    /// Panics on mismatched contexts; use [`FieldElement::checked_mul`]
    /// when the contexts are not structurally identical.
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field context mismatch")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.n == 2 {
            f.write_str(["0", "1", "u", "u2"][self.bits as usize])
        } else {
            f.write_str(&poly_string(u16::from(self.bits)))
        }
    }
}

/// Serialized as the GF(4) literal / polynomial string.
impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(_: D) -> Result<Self, D::Error> {
        Err(serde::de::Error::custom(
            "field elements deserialize through FieldCtx::parse_element",
        ))
    }
}

/// An ordered basis of GF(2^n) over GF(2), with its self-duality
/// (tr(e_i e_j) = delta_ij) established at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    elements: Vec<FieldElement>,
    self_dual: bool,
}

impl DualBasis {
    pub fn new(elements: Vec<FieldElement>) -> Result<Self, GaloisError> {
        let ctx = elements
            .first()
            .ok_or(GaloisError::WrongBasisSize(0, 0))?
            .ctx();
        if elements.iter().any(|e| e.ctx() != ctx) {
            return Err(GaloisError::ContextMismatch);
        }
        if elements.len() != ctx.degree() as usize {
            return Err(GaloisError::WrongBasisSize(elements.len(), ctx.degree()));
        }
        // Gaussian elimination over GF(2) on the coefficient bitvectors.
        let mut rows: Vec<u8> = elements.iter().map(|e| e.bits()).collect();
        for i in 0..rows.len() {
            let pivot = (i..rows.len()).find(|&j| rows[j] != 0);
            let Some(pivot) = pivot else {
                return Err(GaloisError::DependentBasis);
            };
            rows.swap(i, pivot);
            let high = 7 - rows[i].leading_zeros() as u8;
            for j in 0..rows.len() {
                if j != i && rows[j] >> high & 1 != 0 {
                    rows[j] ^= rows[i];
                }
            }
        }
        let self_dual = (0..elements.len()).all(|i| {
            (0..elements.len()).all(|j| {
                let want = u8::from(i == j);
                (elements[i] * elements[j]).trace_bit() == want
            })
        });
        Ok(DualBasis {
            elements,
            self_dual,
        })
    }

    /// The self-dual basis {u, u2} of GF(4).
    pub fn gf4_self_dual() -> Self {
        let ctx = FieldCtx::gf4();
        let u = ctx.x();
        DualBasis::new(vec![u, u.square()]).expect("u, u2 form a self-dual basis")
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn ctx(&self) -> FieldCtx {
        self.elements[0].ctx()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> (FieldCtx, [FieldElement; 4]) {
        let ctx = FieldCtx::gf4();
        let e: Vec<_> = ctx.elements().collect();
        (ctx, [e[0], e[1], e[2], e[3]])
    }

    /// Independent multiplication oracle: full convolution in GF(2)[x],
    /// then long-division reduction. Different route than the shifted
    /// per-step folding in checked_mul.
    fn mul_oracle(a: u8, b: u8, poly: u16) -> u8 {
        let mut conv: u32 = 0;
        for i in 0..8 {
            for j in 0..8 {
                conv ^= u32::from(a >> i & b >> j & 1) << (i + j);
            }
        }
        poly_rem(conv, u32::from(poly)) as u8
    }

    #[test]
    fn gf4_multiplication_table() {
        let (_, [zero, one, u, u2]) = gf4();
        assert_eq!(u * u, u2, "u^2 = u+1");
        assert_eq!(u * u2, one, "u^3 = 1");
        assert_eq!(u2 * u2, u, "u^4 = u");
        assert_eq!(u * zero, zero);
        assert_eq!(u2 * one, u2);
        // the defining relation u^2 + u + 1 = 0
        assert_eq!(u * u + u + one, zero);
    }

    #[test]
    fn gf4_trace_values() {
        let (_, [zero, one, u, u2]) = gf4();
        assert_eq!(zero.trace(), zero);
        assert_eq!(one.trace(), zero);
        assert_eq!(u.trace(), one);
        assert_eq!(u2.trace(), one);
    }

    #[test]
    fn multiplication_matches_oracle_for_all_fields() {
        for (n, poly) in [
            (2u32, 0b111u16),
            (3, 0b1011),
            (4, 0b10011),
            (8, 0b100011011),
        ] {
            let ctx = FieldCtx::new(n, poly).unwrap();
            for a in ctx.elements() {
                for b in ctx.elements() {
                    assert_eq!(
                        (a * b).bits(),
                        mul_oracle(a.bits(), b.bits(), poly),
                        "mul mismatch in GF(2^{n}) at {a} * {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf8() {
        let ctx = FieldCtx::new(3, 0b1011).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                assert_eq!(a * b, b * a);
                assert_eq!(a + b, b + a);
                for c in ctx.elements() {
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
            if !a.is_zero() {
                let inv = ctx.elements().find(|&y| a * y == ctx.one());
                assert!(inv.is_some(), "no inverse for {a}");
            }
        }
    }

    #[test]
    fn trace_is_additive_frobenius_invariant_and_balanced() {
        for (n, poly) in [
            (2u32, 0b111u16),
            (3, 0b1011),
            (4, 0b10011),
            (8, 0b100011011),
        ] {
            let ctx = FieldCtx::new(n, poly).unwrap();
            let mut zeros = 0;
            for x in ctx.elements() {
                assert!(x.trace_bit() <= 1, "trace must land in the prime subfield");
                assert_eq!(
                    x.square().trace(),
                    x.trace(),
                    "trace is Frobenius-invariant"
                );
                for y in ctx.elements() {
                    assert_eq!((x + y).trace(), x.trace() + y.trace());
                }
                if x.trace_bit() == 0 {
                    zeros += 1;
                }
            }
            assert_eq!(zeros, ctx.order() / 2, "trace splits GF(2^{n}) evenly");
        }
    }

    #[test]
    fn gf4_self_dual_basis_and_coordinates() {
        let (ctx, [zero, one, u, u2]) = gf4();
        let basis = DualBasis::gf4_self_dual();
        assert!(basis.is_self_dual());
        assert_eq!(u.coordinates(&basis).unwrap(), vec![1, 0]);
        assert_eq!(u2.coordinates(&basis).unwrap(), vec![0, 1]);
        assert_eq!(one.coordinates(&basis).unwrap(), vec![1, 1], "1 = u + u2");
        assert_eq!(zero.coordinates(&basis).unwrap(), vec![0, 0]);
        // reconstruction: x = sum_i bit_i * e_i
        for x in ctx.elements() {
            let bits = x.coordinates(&basis).unwrap();
            let mut acc = ctx.zero();
            for (bit, e) in bits.iter().zip(basis.elements()) {
                if *bit == 1 {
                    acc = acc + *e;
                }
            }
            assert_eq!(acc, x, "coordinates must reconstruct {x}");
        }
    }

    #[test]
    fn non_self_dual_basis_is_rejected_by_coordinates() {
        let (_, [_, one, u, _]) = gf4();
        let basis = DualBasis::new(vec![one, u]).unwrap();
        assert!(
            !basis.is_self_dual(),
            "tr(1*1) = 0, so {{1, u}} is not self-dual"
        );
        assert_eq!(u.coordinates(&basis), Err(GaloisError::NotSelfDual));
    }

    #[test]
    fn gf8_normal_basis_is_self_dual() {
        // beta = x+1 in GF(8) with modulus x^3+x+1; {beta, beta^2, beta^4}
        let ctx = FieldCtx::new(3, 0b1011).unwrap();
        let beta = ctx.element(0b011).unwrap();
        let basis = DualBasis::new(vec![beta, beta.square(), beta.square().square()]).unwrap();
        assert!(basis.is_self_dual());
        for x in ctx.elements() {
            let bits = x.coordinates(&basis).unwrap();
            let mut acc = ctx.zero();
            for (bit, e) in bits.iter().zip(basis.elements()) {
                if *bit == 1 {
                    acc = acc + *e;
                }
            }
            assert_eq!(acc, x);
        }
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let (_, [_, one, u, u2]) = gf4();
        assert_eq!(
            DualBasis::new(vec![one, one]).map(|_| ()),
            Err(GaloisError::DependentBasis)
        );
        // u + u2 = 1, so any two of {1, u, u2} are independent
        assert!(DualBasis::new(vec![u, u2]).is_ok());
    }

    #[test]
    fn context_mismatch_is_an_error_not_garbage() {
        let gf4 = FieldCtx::gf4();
        let gf8 = FieldCtx::new(3, 0b1011).unwrap();
        let a = gf4.one();
        let b = gf8.one();
        assert_eq!(a.checked_add(b), Err(GaloisError::ContextMismatch));
        assert_eq!(a.checked_mul(b), Err(GaloisError::ContextMismatch));
    }

    #[test]
    fn modulus_validation() {
        // x^2+1 = (x+1)^2 is reducible
        assert_eq!(
            FieldCtx::new(2, 0b101).map(|_| ()),
            Err(GaloisError::Reducible("x^2+1".to_owned()))
        );
        // wrong degree
        assert!(matches!(
            FieldCtx::new(3, 0b111),
            Err(GaloisError::WrongDegree(..))
        ));
        // out of range
        assert!(matches!(
            FieldCtx::new(9, 0b1111111111),
            Err(GaloisError::DegreeOutOfRange(9))
        ));
        assert!(matches!(
            FieldCtx::new(0, 0b1),
            Err(GaloisError::DegreeOutOfRange(0))
        ));
    }

    #[test]
    fn poly_string_round_trip() {
        for s in ["x^2+x+1", "x^3+x+1", "x^4+x+1", "x^8+x^4+x^3+x+1"] {
            let ctx = FieldCtx::from_poly_str(s).unwrap();
            assert_eq!(ctx.poly_str(), s);
        }
        assert!(
            FieldCtx::from_poly_str("x^2+1").is_err(),
            "reducible modulus"
        );
        assert!(FieldCtx::from_poly_str("2x+1").is_err());
        assert!(FieldCtx::from_poly_str("x+x").is_err(), "repeated term");
    }

    #[test]
    fn element_literals_round_trip() {
        let ctx = FieldCtx::gf4();
        for lit in ["0", "1", "u", "u2"] {
            let e = ctx.parse_element(lit).unwrap();
            assert_eq!(e.to_string(), lit);
        }
        assert!(ctx.parse_element("v").is_err());
        assert!(ctx.parse_element("u3").is_err());

        let gf8 = FieldCtx::new(3, 0b1011).unwrap();
        for e in gf8.elements() {
            assert_eq!(gf8.parse_element(&e.to_string()).unwrap(), e);
        }
    }
}
