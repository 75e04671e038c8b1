//! Exact scalars: rationals and cyclotomic field elements.
//!
//! A field is either Q (`m = 1`) or the cyclotomic field Q(z_m), represented
//! as Q[x] modulo the m-th cyclotomic polynomial. Elements are dense vectors
//! of exact rationals of length deg(Phi_m), so equality is coefficient-wise
//! and every operation is exact.

use crate::error::Error;
use crate::Result;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Which field scalars live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The m-th cyclotomic field Q(z_m); `m = 1` coincides with Q.
    Cyclotomic { m: u32 },
}

impl FieldSpec {
    fn m(self) -> u32 {
        match self {
            FieldSpec::Rationals => 1,
            FieldSpec::Cyclotomic { m } => m,
        }
    }
}

#[derive(Debug)]
struct FieldData {
    spec: FieldSpec,
    /// Coefficients of Phi_m below the leading (monic) term:
    /// Phi_m(x) = x^degree + minpoly[degree-1] x^{degree-1} + ... + minpoly[0].
    minpoly: Vec<BigRational>,
    degree: usize,
}

/// A shared handle to a scalar field. Cheap to clone; equality compares the
/// underlying spec, not the handle.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.spec.m() == other.0.spec.m()
    }
}
impl Eq for Field {}

/// Multiply two integer polynomials (dense, ascending degree).
fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is inexact,
/// which cannot happen for products of cyclotomic polynomials.
fn zpoly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    assert!(!lead.is_zero());
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = &rem[k + dn] / &lead;
        if (&c * &lead) != rem[k + dn] {
            panic!("inexact polynomial division");
        }
        quot[k] = c.clone();
        for (i, di) in den.iter().enumerate() {
            let sub = di * &c;
            rem[k + i] -= sub;
        }
    }
    assert!(rem.iter().all(|r| r.is_zero()), "inexact polynomial division");
    quot
}

/// The m-th cyclotomic polynomial as integer coefficients, ascending degree.
/// Computed by dividing x^m - 1 by the cyclotomic polynomials of the proper
/// divisors of m.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::from(1);
    let mut den = vec![BigInt::one()];
    for d in 1..m {
        if m % d == 0 {
            den = zpoly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    zpoly_div_exact(&num, &den)
}

impl Field {
    /// Create a field from a spec. `field_create` in the interface sense.
    pub fn new(spec: FieldSpec) -> Field {
        let m = spec.m();
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let minpoly = phi[..degree]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Field(Arc::new(FieldData {
            spec,
            minpoly,
            degree,
        }))
    }

    /// Plain Q.
    pub fn rationals() -> Field {
        Field::new(FieldSpec::Rationals)
    }

    /// Q(z_m).
    pub fn cyclotomic(m: u32) -> Field {
        Field::new(FieldSpec::Cyclotomic { m })
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    /// Degree of the field over Q (Euler phi of m).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Order of the distinguished root of unity (1 for plain Q).
    pub fn root_order(&self) -> u32 {
        self.0.spec.m()
    }

    pub fn describe(&self) -> String {
        match self.0.spec {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::Cyclotomic { m } if m == 1 => "Q".into(),
            FieldSpec::Cyclotomic { m } => format!("Q(z_{m})"),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            c: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        let mut s = self.zero();
        s.c[0] = BigRational::from_integer(BigInt::from(n));
        s
    }

    /// Exact rational p/q. Errors on q = 0.
    pub fn ratio(&self, p: i64, q: i64) -> Result<Scalar> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut s = self.zero();
        s.c[0] = BigRational::new(BigInt::from(p), BigInt::from(q));
        Ok(s)
    }

    pub fn from_rational(&self, r: BigRational) -> Scalar {
        let mut s = self.zero();
        s.c[0] = r;
        s
    }

    /// The distinguished primitive m-th root of unity: the class of x.
    /// For m = 1 this is 1, for m = 2 it is -1.
    pub fn zeta(&self) -> Scalar {
        if self.degree() == 1 {
            // x reduces to -minpoly[0]
            let mut s = self.zero();
            s.c[0] = -self.0.minpoly[0].clone();
            return s;
        }
        let mut s = self.zero();
        s.c[1] = BigRational::one();
        s
    }

    /// Reduce a polynomial (ascending coefficients, any length) mod Phi_m.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Scalar {
        let d = self.degree();
        while poly.len() > d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = poly.len() - d; // x^{d+k} = -minpoly * x^k
            for (i, m) in self.0.minpoly.iter().enumerate() {
                let sub = m * &top;
                poly[k + i] -= sub;
            }
        }
        poly.resize(d, BigRational::zero());
        Scalar {
            field: self.clone(),
            c: poly,
        }
    }
}

/// An exact element of a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    c: Vec<BigRational>,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational part, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalars from different fields: {} vs {}",
            self.field.describe(),
            other.field.describe()
        );
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        Ok(self * other)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the (irreducible) minimal polynomial. `scalar_invert`.
    pub fn invert(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.degree();
        if d == 1 {
            let mut s = self.field.zero();
            s.c[0] = BigRational::one() / self.c[0].clone();
            return Ok(s);
        }
        // r0 = Phi_m (monic), r1 = self; track s-coefficients for r1 only:
        // invariant r_i = s_i * self (mod Phi_m).
        let mut r0: Vec<BigRational> = self
            .field
            .0
            .minpoly
            .iter()
            .cloned()
            .chain(std::iter::once(BigRational::one()))
            .collect();
        let mut r1 = self.c.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = qpoly_divmod(&r0, &r1);
            // s2 = s0 - q * s1
            let mut s2 = s0.clone();
            let qs1 = qpoly_mul(&q, &s1);
            sub_into(&mut s2, &qs1);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd = nonzero constant (Phi_m irreducible), r0 = s0 * self mod Phi.
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be irreducible");
        let inv_const = BigRational::one() / r0[0].clone();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x * &inv_const).collect();
        Ok(self.field.reduce(scaled))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |x| x.is_zero()) {
        p.pop();
    }
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn sub_into(a: &mut Vec<BigRational>, b: &[BigRational]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        a[i] -= bi;
    }
    trim(a);
}

/// Division with remainder in Q[x]; inputs trimmed, quotient and trimmed
/// remainder returned.
fn qpoly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty());
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn] / &den[dn];
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, di) in den.iter().enumerate() {
            let sub = di * &c;
            rem[k + i] -= sub;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: self.field.clone(),
            c,
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            field: self.field.clone(),
            c,
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        self.field.reduce(prod)
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Renders as a polynomial in `z` with rational coefficients, highest
    /// power first, e.g. `1/2*z^2 - 1`. Plain rationals render as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pow, coeff) in self.c.iter().enumerate().rev() {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            let sign_neg = coeff.is_negative();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = rational_string(&mag);
            if pow == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coeff_str}*")?;
                }
                if pow == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{pow}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// How the square root of the deformation parameter q is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPowerConvention {
    /// For odd n, take q^{1/2} := q^{(n+1)/2}, an honest power of q.
    OddPower,
    /// Work in Q(z_{2n}) with q := z_{2n}^2 and q^{1/2} := z_{2n}.
    ExtendToDouble,
}

/// The field, q and q^{1/2} for a primitive n-th root of unity q under the
/// chosen convention. `resolve_half_power`.
pub fn resolve_half_power(
    n: u32,
    convention: HalfPowerConvention,
) -> Result<(Field, Scalar, Scalar)> {
    match convention {
        HalfPowerConvention::OddPower => {
            if n % 2 == 0 {
                return Err(Error::EvenOrderNeedsExtension(n));
            }
            let field = Field::cyclotomic(n);
            let q = field.zeta();
            let half = q.pow(i64::from((n + 1) / 2))?;
            Ok((field, q, half))
        }
        HalfPowerConvention::ExtendToDouble => {
            let field = Field::cyclotomic(2 * n);
            let half = field.zeta();
            let q = &half * &half;
            Ok((field, q, half))
        }
    }
}

/// The default convention for a given order: odd orders stay inside Q(z_n),
/// even orders extend.
pub fn default_half_power(n: u32) -> HalfPowerConvention {
    if n % 2 == 1 {
        HalfPowerConvention::OddPower
    } else {
        HalfPowerConvention::ExtendToDouble
    }
}

/// Render a linear combination of basis symbols with scalar coefficients,
/// folding single-term coefficient signs into the summand sign. An empty
/// symbol stands for the constant term. Pairs come pre-ordered.
pub(crate) fn render_terms<'a>(pairs: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (i, (sym, c)) in pairs.enumerate() {
        let cs = format!("{c}");
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if !cs.contains(" + ") && !cs.contains(" - ") => (true, rest.to_string()),
            _ => (false, cs),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let compound = mag.contains(" + ") || mag.contains(" - ");
        if sym.is_empty() {
            if compound {
                out.push_str(&format!("({mag})"));
            } else {
                out.push_str(&mag);
            }
        } else if mag == "1" {
            out.push_str(&sym);
        } else if compound {
            out.push_str(&format!("({mag})*{sym}"));
        } else {
            out.push_str(&format!("{mag}*{sym}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn totient(m: u32) -> usize {
        (1..=m).filter(|k| num::integer::gcd(*k, m) == 1).count()
    }

    #[test]
    fn cyclotomic_degrees_match_euler_totient() {
        for m in 1..=24 {
            let f = Field::cyclotomic(m);
            assert_eq!(f.degree(), totient(m), "degree of Phi_{m}");
        }
        assert_eq!(Field::cyclotomic(12).degree(), 4);
    }

    #[test]
    fn phi_twelve_is_x4_minus_x2_plus_1() {
        let phi = cyclotomic_polynomial(12);
        let expect: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(phi, expect);
    }

    #[test]
    fn zeta_has_multiplicative_order_m() {
        for m in [3u32, 4, 5, 6, 7, 8, 12] {
            let f = Field::cyclotomic(m);
            let z = f.zeta();
            let mut acc = f.one();
            for k in 1..m {
                acc = &acc * &z;
                assert!(!acc.is_one(), "z_{m}^{k} must not be 1");
            }
            acc = &acc * &z;
            assert!(acc.is_one(), "z_{m}^{m} must be 1");
        }
    }

    #[test]
    fn inverse_of_q_minus_q_inverse_over_fifth_roots() {
        let f = Field::cyclotomic(5);
        let q = f.zeta();
        let qinv = q.invert().unwrap();
        let d = &q - &qinv;
        let dinv = d.invert().unwrap();
        assert!((&d * &dinv).is_one());
        assert!((&dinv * &d).is_one());
    }

    #[test]
    fn invert_round_trips_on_dense_elements() {
        let f = Field::cyclotomic(7);
        let z = f.zeta();
        // 2 + 3z - z^2/5
        let a = &(&f.integer(2) + &(&f.integer(3) * &z)) - &(&f.ratio(1, 5).unwrap() * &z.pow(2).unwrap());
        let ainv = a.invert().unwrap();
        assert!((&a * &ainv).is_one());
    }

    #[test]
    fn zero_inverse_is_rejected() {
        let f = Field::cyclotomic(3);
        assert!(matches!(f.zero().invert(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn even_order_half_power_requires_extension() {
        assert!(matches!(
            resolve_half_power(4, HalfPowerConvention::OddPower),
            Err(Error::EvenOrderNeedsExtension(4))
        ));
        let (f, q, half) = resolve_half_power(4, HalfPowerConvention::ExtendToDouble).unwrap();
        assert_eq!(f.root_order(), 8);
        assert_eq!(&half * &half, q);
        // q = z_8^2 is a primitive fourth root: q^2 = -1.
        assert_eq!(&q * &q, f.integer(-1));
    }

    #[test]
    fn odd_power_convention_squares_to_q() {
        let (_, q, half) = resolve_half_power(3, HalfPowerConvention::OddPower).unwrap();
        // q^{1/2} = q^2 when n = 3, and its square is q^4 = q.
        assert_eq!(half, q.pow(2).unwrap());
        assert_eq!(&half * &half, q);
    }

    #[test]
    fn rational_field_is_degree_one() {
        let f = Field::rationals();
        assert_eq!(f.degree(), 1);
        assert!(f.zeta().is_one());
        let x = f.ratio(3, 4).unwrap();
        assert_eq!(format!("{x}"), "3/4");
        assert_eq!(&x + &f.ratio(1, 4).unwrap(), f.one());
    }

    #[test]
    fn display_is_descending_in_z() {
        let f = Field::cyclotomic(5);
        let z = f.zeta();
        let e = &(&f.ratio(1, 2).unwrap() * &(&z * &z)) - &f.one();
        assert_eq!(format!("{e}"), "1/2*z^2 - 1");
    }

    #[test]
    fn field_arithmetic_axioms_hold_on_sampled_triples() {
        // A deterministic sweep standing in for the random-triple invariant:
        // associativity, commutativity, distributivity and inverses.
        let f = Field::cyclotomic(12);
        let z = f.zeta();
        let mut samples = vec![f.zero(), f.one(), f.integer(-3), f.ratio(2, 7).unwrap()];
        samples.push(z.clone());
        samples.push(&z * &z);
        samples.push(&f.integer(2) - &z.pow(3).unwrap());
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    assert_eq!(&(a + b) * c, &(a * c) + &(b * c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * b, b * a);
                }
                if !b.is_zero() {
                    let binv = b.invert().unwrap();
                    assert_eq!(&(a * b) * &binv, a.clone());
                }
            }
        }
    }
}
