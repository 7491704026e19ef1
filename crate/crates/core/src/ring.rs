//! Exact scalar arithmetic over the rationals and prime fields, plus the
//! truncated power-series ring `F[eps]/(eps^K)` used for border computation.
//!
//! All values are immutable and all operations are pure; mixing elements of
//! different fields (or different moduli) is rejected rather than coerced.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use smallvec::{smallvec, SmallVec};
use thiserror::Error;

/// Default modulus for randomized evaluation: the Mersenne prime `2^61 - 1`.
///
/// Large enough that per-trial Schwartz-Zippel failure probability
/// `deg / p` is negligible for every circuit handled at desk scale.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("coefficient index {index} out of range (truncation order {trunc})")]
    CoeffOutOfRange { index: usize, trunc: usize },
    #[error("eps-dependent value used where a plain field element is required")]
    EpsInScalarContext,
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit below 2^63")]
    ModulusTooLarge(u64),
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("series must carry at least one coefficient")]
    EmptySeries,
}

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The coefficient field: exact rationals (characteristic zero) or a prime
/// field `GF(p)` with `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Field {
    /// Validated prime-field constructor.
    pub fn prime(p: u64) -> Result<Field, RingError> {
        if p >= 1 << 63 {
            return Err(RingError::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Prime { value: 1 % p, modulus: *p },
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from(BigInt::from(v))),
            Field::Prime(p) => {
                let r = v.rem_euclid(*p as i64 as i64);
                // rem_euclid on i64 is fine because p < 2^63.
                Scalar::Prime { value: r as u64 % p, modulus: *p }
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, RingError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = bigint_mod_u64(q.numer(), *p);
                let den = bigint_mod_u64(q.denom(), *p);
                if den == 0 {
                    return Err(RingError::DenominatorVanishes(*p));
                }
                let inv = pow_mod(den, p - 2, *p);
                Ok(Scalar::Prime { value: mul_mod(num, inv, *p), modulus: *p })
            }
        }
    }

    /// Uniform element for prime fields; small random rationals over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => {
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=10);
                Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            Field::Prime(p) => Scalar::Prime { value: rng.gen_range(0..*p), modulus: *p },
        }
    }
}

fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

/// An exact field element: a reduced rational or a prime-field residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn from_integer(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn check_same_field(&self, other: &Scalar) -> Result<(), RingError> {
        let (a, b) = (self.field(), other.field());
        if a != b {
            return Err(RingError::FieldMismatch(a, b));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => {
                let s = a + b;
                Scalar::Prime { value: if s >= *p { s - p } else { s }, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: if a >= b { a - b } else { a + p - b }, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, RingError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_one(),
            Scalar::Prime { value, modulus } => *value == 1 % modulus,
        }
    }

    /// Move a value into `target`. Only `Q -> GF(p)` reduction and the
    /// identity conversions are meaningful.
    pub fn to_field(&self, target: &Field) -> Result<Scalar, RingError> {
        match (self, target) {
            (Scalar::Rational(q), _) => target.from_rational(q),
            (Scalar::Prime { modulus, .. }, Field::Prime(p)) if modulus == p => Ok(self.clone()),
            _ => Err(RingError::FieldMismatch(self.field(), *target)),
        }
    }

    /// The underlying rational, if this is a `Q` element.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Evaluation context for `EpsSeries`: base field plus truncation order `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesCtx {
    pub field: Field,
    pub trunc: usize,
}

impl Default for SeriesCtx {
    fn default() -> Self {
        SeriesCtx { field: Field::Rational, trunc: 1 }
    }
}

impl SeriesCtx {
    pub fn new(field: Field, trunc: usize) -> SeriesCtx {
        assert!(trunc >= 1, "truncation order must be at least 1");
        SeriesCtx { field, trunc }
    }
}

/// A truncated power series `c_0 + c_1 eps + ... + c_{K-1} eps^{K-1}` over a
/// single base field. Binary operations truncate to the smaller operand
/// order, so every result is exact modulo `eps^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsSeries {
    coeffs: SmallVec<[Scalar; 4]>,
}

impl EpsSeries {
    pub fn new(coeffs: Vec<Scalar>) -> Result<EpsSeries, RingError> {
        if coeffs.is_empty() {
            return Err(RingError::EmptySeries);
        }
        let field = coeffs[0].field();
        for c in &coeffs[1..] {
            if c.field() != field {
                return Err(RingError::FieldMismatch(field, c.field()));
            }
        }
        Ok(EpsSeries { coeffs: SmallVec::from_vec(coeffs) })
    }

    /// Constant series, zero-padded to truncation order `trunc`.
    pub fn from_scalar(value: Scalar, trunc: usize) -> EpsSeries {
        assert!(trunc >= 1);
        let field = value.field();
        let mut coeffs: SmallVec<[Scalar; 4]> = smallvec![value];
        while coeffs.len() < trunc {
            coeffs.push(field.zero());
        }
        EpsSeries { coeffs }
    }

    pub fn zero(ctx: &SeriesCtx) -> EpsSeries {
        EpsSeries::from_scalar(ctx.field.zero(), ctx.trunc)
    }

    pub fn one(ctx: &SeriesCtx) -> EpsSeries {
        EpsSeries::from_scalar(ctx.field.one(), ctx.trunc)
    }

    /// The formal infinitesimal itself. At `K = 1` this truncates to zero.
    pub fn eps(ctx: &SeriesCtx) -> EpsSeries {
        let mut s = EpsSeries::zero(ctx);
        if ctx.trunc >= 2 {
            s.coeffs[1] = ctx.field.one();
        }
        s
    }

    /// Convenience constructor over `Q` from integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> EpsSeries {
        assert!(!coeffs.is_empty());
        EpsSeries {
            coeffs: coeffs.iter().map(|&c| Scalar::from_integer(c)).collect(),
        }
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn ctx(&self) -> SeriesCtx {
        SeriesCtx { field: self.field(), trunc: self.trunc_order() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `eps^j`; indices at or above the truncation order are
    /// not tracked and are an error.
    pub fn coeff(&self, j: usize) -> Result<&Scalar, RingError> {
        self.coeffs.get(j).ok_or(RingError::CoeffOutOfRange {
            index: j,
            trunc: self.trunc_order(),
        })
    }

    /// Order of the lowest nonzero coefficient; `None` for the zero series.
    pub fn leading_eps_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    /// True when every coefficient is a rational (the storage form used by
    /// file formats and circuit constants).
    pub fn is_rational(&self) -> bool {
        self.field() == Field::Rational
    }

    fn check_same_field(&self, other: &EpsSeries) -> Result<(), RingError> {
        let (a, b) = (self.field(), other.field());
        if a != b {
            return Err(RingError::FieldMismatch(a, b));
        }
        Ok(())
    }

    /// Truncate to order `k` (clamped to the current order; `k >= 1`).
    pub fn truncate(&self, k: usize) -> EpsSeries {
        assert!(k >= 1);
        let k = k.min(self.coeffs.len());
        EpsSeries { coeffs: self.coeffs[..k].iter().cloned().collect() }
    }

    pub fn add(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        self.check_same_field(other)?;
        let k = self.trunc_order().min(other.trunc_order());
        let mut coeffs = SmallVec::with_capacity(k);
        for j in 0..k {
            coeffs.push(self.coeffs[j].add(&other.coeffs[j])?);
        }
        Ok(EpsSeries { coeffs })
    }

    pub fn sub(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        self.check_same_field(other)?;
        let k = self.trunc_order().min(other.trunc_order());
        let mut coeffs = SmallVec::with_capacity(k);
        for j in 0..k {
            coeffs.push(self.coeffs[j].sub(&other.coeffs[j])?);
        }
        Ok(EpsSeries { coeffs })
    }

    /// Truncated product: `(a*b)_j = sum_{i<=j} a_i b_{j-i}` for `j < K`.
    pub fn mul(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        self.check_same_field(other)?;
        let k = self.trunc_order().min(other.trunc_order());
        let field = self.field();
        let mut coeffs: SmallVec<[Scalar; 4]> = smallvec![field.zero(); k];
        for (i, a) in self.coeffs.iter().take(k).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(EpsSeries { coeffs })
    }

    pub fn neg(&self) -> EpsSeries {
        EpsSeries { coeffs: self.coeffs.iter().map(Scalar::neg).collect() }
    }

    pub fn scalar_mul(&self, by: &Scalar) -> Result<EpsSeries, RingError> {
        let mut coeffs = SmallVec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul(by)?);
        }
        Ok(EpsSeries { coeffs })
    }

    /// Exact polynomial sum (no truncation): for stored constants, which are
    /// polynomials in `eps` rather than truncated values.
    pub fn poly_add(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        self.check_same_field(other)?;
        let n = self.trunc_order().max(other.trunc_order());
        let field = self.field();
        let mut coeffs: SmallVec<[Scalar; 4]> = smallvec![field.zero(); n];
        for (j, a) in self.coeffs.iter().enumerate() {
            coeffs[j] = coeffs[j].add(a)?;
        }
        for (j, b) in other.coeffs.iter().enumerate() {
            coeffs[j] = coeffs[j].add(b)?;
        }
        Ok(EpsSeries { coeffs })
    }

    /// Exact polynomial product (no truncation); see `poly_add`.
    pub fn poly_mul(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        self.check_same_field(other)?;
        let n = self.trunc_order() + other.trunc_order() - 1;
        let field = self.field();
        let mut coeffs: SmallVec<[Scalar; 4]> = smallvec![field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(EpsSeries { coeffs })
    }

    /// Drop trailing zero coefficients (keeping at least one).
    pub fn trimmed(&self) -> EpsSeries {
        let mut n = self.coeffs.len();
        while n > 1 && self.coeffs[n - 1].is_zero() {
            n -= 1;
        }
        EpsSeries { coeffs: self.coeffs[..n].iter().cloned().collect() }
    }

    /// Move a rational-coefficient constant into an evaluation context:
    /// coefficients are mapped into `ctx.field` and the length is resized to
    /// `ctx.trunc`. Extension is exact because stored constants are
    /// polynomials in `eps`.
    pub fn convert(&self, ctx: &SeriesCtx) -> Result<EpsSeries, RingError> {
        let mut coeffs: SmallVec<[Scalar; 4]> = SmallVec::with_capacity(ctx.trunc);
        for c in self.coeffs.iter().take(ctx.trunc) {
            coeffs.push(c.to_field(&ctx.field)?);
        }
        while coeffs.len() < ctx.trunc {
            coeffs.push(ctx.field.zero());
        }
        Ok(EpsSeries { coeffs })
    }

    /// Collapse to a plain field element; any nonzero `eps` coefficient is an
    /// error.
    pub fn to_scalar(&self, field: &Field) -> Result<Scalar, RingError> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(RingError::EpsInScalarContext);
        }
        self.coeffs[0].to_field(field)
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Common surface of the rings circuits evaluate over: plain field elements
/// and truncated `eps`-series.
pub trait RingElem: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + Default + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    /// Lift a stored (rational-coefficient) constant into this ring.
    fn from_const(c: &EpsSeries, ctx: &Self::Ctx) -> Result<Self, RingError>;
    fn from_rational(q: &BigRational, ctx: &Self::Ctx) -> Result<Self, RingError>;
    fn add(&self, other: &Self) -> Result<Self, RingError>;
    fn sub(&self, other: &Self) -> Result<Self, RingError>;
    fn mul(&self, other: &Self) -> Result<Self, RingError>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

impl RingElem for Scalar {
    type Ctx = Field;

    fn ctx(&self) -> Field {
        self.field()
    }

    fn zero(ctx: &Field) -> Scalar {
        ctx.zero()
    }

    fn one(ctx: &Field) -> Scalar {
        ctx.one()
    }

    fn from_const(c: &EpsSeries, ctx: &Field) -> Result<Scalar, RingError> {
        c.to_scalar(ctx)
    }

    fn from_rational(q: &BigRational, ctx: &Field) -> Result<Scalar, RingError> {
        ctx.from_rational(q)
    }

    fn add(&self, other: &Scalar) -> Result<Scalar, RingError> {
        Scalar::add(self, other)
    }

    fn sub(&self, other: &Scalar) -> Result<Scalar, RingError> {
        Scalar::sub(self, other)
    }

    fn mul(&self, other: &Scalar) -> Result<Scalar, RingError> {
        Scalar::mul(self, other)
    }

    fn neg(&self) -> Scalar {
        Scalar::neg(self)
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl RingElem for EpsSeries {
    type Ctx = SeriesCtx;

    fn ctx(&self) -> SeriesCtx {
        EpsSeries::ctx(self)
    }

    fn zero(ctx: &SeriesCtx) -> EpsSeries {
        EpsSeries::zero(ctx)
    }

    fn one(ctx: &SeriesCtx) -> EpsSeries {
        EpsSeries::one(ctx)
    }

    fn from_const(c: &EpsSeries, ctx: &SeriesCtx) -> Result<EpsSeries, RingError> {
        c.convert(ctx)
    }

    fn from_rational(q: &BigRational, ctx: &SeriesCtx) -> Result<EpsSeries, RingError> {
        Ok(EpsSeries::from_scalar(ctx.field.from_rational(q)?, ctx.trunc))
    }

    fn add(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        EpsSeries::add(self, other)
    }

    fn sub(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        EpsSeries::sub(self, other)
    }

    fn mul(&self, other: &EpsSeries) -> Result<EpsSeries, RingError> {
        EpsSeries::mul(self, other)
    }

    fn neg(&self) -> EpsSeries {
        EpsSeries::neg(self)
    }

    fn is_zero(&self) -> bool {
        EpsSeries::is_zero(self)
    }

    fn is_one(&self) -> bool {
        EpsSeries::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(Field::prime(DEFAULT_PRIME).is_ok());
        assert_eq!(Field::prime(10), Err(RingError::NotPrime(10)));
    }

    #[test]
    fn miller_rabin_small_cases() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
        // Strong pseudoprime to several bases.
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn scalar_field_mismatch_rejected() {
        let a = Field::Prime(101).from_i64(3);
        let b = Field::Prime(103).from_i64(3);
        assert!(matches!(a.add(&b), Err(RingError::FieldMismatch(_, _))));
        let c = Scalar::from_integer(3);
        assert!(matches!(a.mul(&c), Err(RingError::FieldMismatch(_, _))));
    }

    #[test]
    fn rationals_stay_reduced_with_positive_denominator() {
        let x = q(4, -6);
        match &x {
            Scalar::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-2));
                assert_eq!(r.denom(), &BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert_eq!(x.to_string(), "-2/3");
    }

    // (1+eps)*(1-eps) at K=2 -> 1; at K=3 -> 1 - eps^2.
    #[test]
    fn eps_mul_truncates() {
        let a2 = EpsSeries::from_integers(&[1, 1]);
        let b2 = EpsSeries::from_integers(&[1, -1]);
        assert_eq!(a2.mul(&b2).unwrap(), EpsSeries::from_integers(&[1, 0]));

        let a3 = EpsSeries::from_integers(&[1, 1, 0]);
        let b3 = EpsSeries::from_integers(&[1, -1, 0]);
        assert_eq!(a3.mul(&b3).unwrap(), EpsSeries::from_integers(&[1, 0, -1]));
    }

    // (2+3eps) + (-2+eps) at K=2 -> 4eps.
    #[test]
    fn eps_add_example() {
        let a = EpsSeries::from_integers(&[2, 3]);
        let b = EpsSeries::from_integers(&[-2, 1]);
        assert_eq!(a.add(&b).unwrap(), EpsSeries::from_integers(&[0, 4]));
    }

    #[test]
    fn mismatched_orders_truncate_to_min() {
        let a = EpsSeries::from_integers(&[1, 2, 3]);
        let b = EpsSeries::from_integers(&[1, 1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.trunc_order(), 2);
        assert_eq!(p, EpsSeries::from_integers(&[1, 3]));
    }

    #[test]
    fn eps_order_examples() {
        assert_eq!(EpsSeries::from_integers(&[0, 0, 5]).leading_eps_order(), Some(2));
        assert_eq!(EpsSeries::from_integers(&[0, 0, 0]).leading_eps_order(), None);
        assert_eq!(EpsSeries::from_integers(&[7, 0]).leading_eps_order(), Some(0));
    }

    #[test]
    fn coeff_at_examples() {
        let a = EpsSeries::from_integers(&[1, 2]);
        assert_eq!(a.coeff(1).unwrap(), &Scalar::from_integer(2));
        assert_eq!(a.coeff(0).unwrap(), &Scalar::from_integer(1));
        assert_eq!(
            a.coeff(5),
            Err(RingError::CoeffOutOfRange { index: 5, trunc: 2 })
        );
    }

    fn random_series<R: Rng>(rng: &mut R, field: &Field, k: usize) -> EpsSeries {
        EpsSeries::new((0..k).map(|_| field.random(rng)).collect()).unwrap()
    }

    #[test]
    fn ring_axioms_hold_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fields = [Field::Rational, Field::Prime(DEFAULT_PRIME)];
        for trial in 0..1000 {
            let field = &fields[trial % 2];
            let k = 1 + trial % 4;
            let a = random_series(&mut rng, field, k);
            let b = random_series(&mut rng, field, k);
            let c = random_series(&mut rng, field, k);
            // Associativity.
            assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            // Commutativity.
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            // Distributivity.
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            // Identities.
            let ctx = a.ctx();
            assert_eq!(a.add(&EpsSeries::zero(&ctx)).unwrap(), a);
            assert_eq!(a.mul(&EpsSeries::one(&ctx)).unwrap(), a);
        }
    }

    #[test]
    fn truncation_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let fields = [Field::Rational, Field::Prime(DEFAULT_PRIME)];
        for trial in 0..400 {
            let field = &fields[trial % 2];
            let k = 2 + trial % 3;
            let kp = 1 + trial % k;
            let a = random_series(&mut rng, field, k);
            let b = random_series(&mut rng, field, k);
            assert_eq!(
                a.truncate(kp).mul(&b.truncate(kp)).unwrap(),
                a.mul(&b).unwrap().truncate(kp)
            );
            assert_eq!(
                a.truncate(kp).add(&b.truncate(kp)).unwrap(),
                a.add(&b).unwrap().truncate(kp)
            );
        }
    }

    #[test]
    fn rational_arithmetic_matches_prime_field_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = DEFAULT_PRIME;
        let fp = Field::Prime(p);
        for _ in 0..400 {
            let a = Field::Rational.random(&mut rng);
            let b = Field::Rational.random(&mut rng);
            let sum = a.add(&b).unwrap().to_field(&fp).unwrap();
            let prod = a.mul(&b).unwrap().to_field(&fp).unwrap();
            assert_eq!(sum, a.to_field(&fp).unwrap().add(&b.to_field(&fp).unwrap()).unwrap());
            assert_eq!(prod, a.to_field(&fp).unwrap().mul(&b.to_field(&fp).unwrap()).unwrap());
        }
        // Denominator divisible by p is rejected.
        let bad = Scalar::Rational(BigRational::new(BigInt::from(1), BigInt::from(5)));
        assert_eq!(bad.to_field(&Field::Prime(5)), Err(RingError::DenominatorVanishes(5)));
    }

    #[test]
    fn poly_ops_do_not_truncate() {
        let a = EpsSeries::from_integers(&[1, 1]);
        let b = EpsSeries::from_integers(&[1, -1]);
        assert_eq!(a.poly_mul(&b).unwrap(), EpsSeries::from_integers(&[1, 0, -1]));
        let c = EpsSeries::from_integers(&[2]);
        assert_eq!(c.poly_add(&a).unwrap(), EpsSeries::from_integers(&[3, 1]));
    }

    #[test]
    fn convert_and_collapse() {
        let c = EpsSeries::from_integers(&[1, 0, -2]);
        let ctx = SeriesCtx::new(Field::Prime(97), 2);
        let conv = c.convert(&ctx).unwrap();
        assert_eq!(conv.trunc_order(), 2);
        assert_eq!(conv.coeff(0).unwrap(), &Field::Prime(97).from_i64(1));
        assert!(c.to_scalar(&Field::Rational).is_err());
        let plain = EpsSeries::from_integers(&[5, 0]);
        assert_eq!(plain.to_scalar(&Field::Rational).unwrap(), Scalar::from_integer(5));
    }
}
