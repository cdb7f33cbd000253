//! Table-driven arithmetic in GF(p^n) for odd primes p ≡ 3 (mod 4) and odd n.
//!
//! Elements are stored by their *code*: the coefficient vector
//! `[c0, c1, .., c_{n-1}]` (constant term first) read as the base-p integer
//! `c0 + c1·p + .. + c_{n-1}·p^{n-1}`. Every [`FieldCtx`] carries full
//! log/antilog tables and a trace table, so trace, discrete log and the
//! quadratic character are single lookups.
//!
//! "Lexicographically smallest" for moduli and primitive elements refers to
//! this code order, i.e. the order of the integers `c0 + c1·p + ..`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is not congruent to 3 mod 4")]
    WrongResidueClass(u64),
    #[error("extension degree n = {0} must be odd and positive")]
    EvenDegree(u32),
    #[error("field order {0} exceeds the table limit of {MAX_FIELD_ORDER}")]
    TooLarge(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0:?} is reducible over Z_p")]
    ReducibleModulus(Vec<u32>),
    #[error("element {0:?} is not primitive")]
    NotPrimitive(Vec<u32>),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete log of zero")]
    LogOfZero,
    #[error("operands belong to different fields")]
    MixedFields,
}

pub type Result<T> = std::result::Result<T, FieldError>;

/// An element of a particular [`FieldCtx`].
///
/// The element remembers which field it came from; mixing elements of
/// different fields in one operation is rejected with
/// [`FieldError::MixedFields`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    code: u32,
    tag: u64,
}

impl FieldElement {
    /// Base-p code of the coefficient vector.
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.code)
    }
}

/// Serializable provenance of a field realization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub alpha: Vec<u32>,
}

/// A concrete realization of GF(p^n).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: u32,
    log: Vec<u32>,
    antilog: Vec<u32>,
    trace: Vec<u32>,
    trace_by_log: Vec<u32>,
    /// log(1 - α^k), NO_LOG at k = 0.
    zech: Vec<u32>,
    tag: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("alpha", &self.coeffs_of_code(self.alpha))
            .finish()
    }
}

/// Builds a field with the default (lexicographically first) choices, or with
/// the supplied modulus.
pub fn build_field(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    let mut builder = FieldBuilder::new(p, n);
    if let Some(m) = modulus {
        builder = builder.modulus(m.to_vec());
    }
    builder.build()
}

#[derive(Debug, Clone)]
pub struct FieldBuilder {
    p: u64,
    n: u32,
    modulus: Option<Vec<u32>>,
    alpha: Option<Vec<u32>>,
}

impl FieldBuilder {
    pub fn new(p: u64, n: u32) -> Self {
        FieldBuilder {
            p,
            n,
            modulus: None,
            alpha: None,
        }
    }

    /// Monic modulus of degree n, constant term first (length n + 1).
    pub fn modulus(mut self, modulus: Vec<u32>) -> Self {
        self.modulus = Some(modulus);
        self
    }

    /// Primitive element as a coefficient vector, constant term first.
    pub fn alpha(mut self, alpha: Vec<u32>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn build(self) -> Result<FieldCtx> {
        let (p, n) = (self.p, self.n);
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p % 4 != 3 {
            return Err(FieldError::WrongResidueClass(p));
        }
        if n == 0 || n % 2 == 0 {
            return Err(FieldError::EvenDegree(n));
        }
        let q = checked_order(p, n)?;
        let p32 = p as u32;

        let modulus = match self.modulus {
            Some(m) => {
                validate_modulus(&m, p32, n)?;
                if !is_irreducible(&m, p32) {
                    return Err(FieldError::ReducibleModulus(m));
                }
                m
            }
            None => first_irreducible(p32, n),
        };

        let arith = PolyArith {
            p: p32,
            n: n as usize,
            modulus: &modulus,
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);

        let alpha = match self.alpha {
            Some(a) => {
                if a.len() != n as usize || a.iter().any(|&c| c >= p32) {
                    return Err(FieldError::InvalidElement(format!(
                        "expected {n} coefficients in [0, {}), got {a:?}",
                        p32 - 1
                    )));
                }
                if !arith.is_primitive(&a, order, &factors) {
                    return Err(FieldError::NotPrimitive(a));
                }
                encode(&a, p32)
            }
            None => (1..q)
                .find(|&code| arith.is_primitive(&decode(code, p32, n), order, &factors))
                .expect("a finite field always has a primitive element"),
        };

        FieldCtx::from_parts(p32, n, q, modulus, alpha)
    }
}

impl FieldCtx {
    pub fn builder(p: u64, n: u32) -> FieldBuilder {
        FieldBuilder::new(p, n)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<FieldCtx> {
        FieldBuilder::new(desc.p, desc.n)
            .modulus(desc.modulus.clone())
            .alpha(desc.alpha.clone())
            .build()
    }

    fn from_parts(p: u32, n: u32, q: u32, modulus: Vec<u32>, alpha: u32) -> Result<FieldCtx> {
        let arith = PolyArith {
            p,
            n: n as usize,
            modulus: &modulus,
        };
        let alpha_poly = decode(alpha, p, n);
        let mut log = vec![NO_LOG; q as usize];
        let mut antilog = Vec::with_capacity(q as usize - 1);
        let mut cur = decode(1, p, n);
        for k in 0..q - 1 {
            let code = encode(&cur, p);
            if log[code as usize] != NO_LOG {
                return Err(FieldError::NotPrimitive(alpha_poly));
            }
            log[code as usize] = k;
            antilog.push(code);
            cur = arith.mul(&cur, &alpha_poly);
        }
        if encode(&cur, p) != 1 {
            return Err(FieldError::NotPrimitive(alpha_poly));
        }

        let mut hasher = DefaultHasher::new();
        (p, n, &modulus).hash(&mut hasher);
        let tag = hasher.finish();

        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            alpha,
            log,
            antilog,
            trace: Vec::new(),
            trace_by_log: Vec::new(),
            zech: Vec::new(),
            tag,
        };
        ctx.fill_trace_tables();
        ctx.zech = ctx
            .antilog
            .iter()
            .map(|&c| ctx.log[ctx.add_codes(1, ctx.neg_code(c)) as usize])
            .collect();
        Ok(ctx)
    }

    // Tr is Z_p-linear, so it suffices to evaluate it on the power basis
    // 1, x, .., x^{n-1} through the Frobenius orbit.
    fn fill_trace_tables(&mut self) {
        let (p, n) = (self.p, self.n);
        let basis_trace: Vec<u32> = (0..n)
            .map(|k| {
                let code = p.pow(k);
                let mut acc = 0u32;
                let mut y = code;
                for _ in 0..n {
                    acc = self.add_codes(acc, y);
                    y = self.pow_code(y, p as u64);
                }
                debug_assert!(acc < p, "trace must land in the prime subfield");
                acc
            })
            .collect();
        self.trace = (0..self.q)
            .map(|code| {
                let mut c = code;
                let mut acc = 0u64;
                for &t in &basis_trace {
                    acc += (c % p) as u64 * t as u64;
                    c /= p;
                }
                (acc % p as u64) as u32
            })
            .collect();
        self.trace_by_log = self
            .antilog
            .iter()
            .map(|&c| self.trace[c as usize])
            .collect();
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Half period N = (q - 1) / 2.
    pub fn half_order(&self) -> u32 {
        (self.q - 1) / 2
    }

    /// Order of the multiplicative group, q - 1.
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p as u64,
            n: self.n,
            modulus: self.modulus.clone(),
            alpha: self.coeffs_of_code(self.alpha),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn alpha(&self) -> FieldElement {
        self.wrap(self.alpha)
    }

    /// α^k for any integer k.
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let e = k.rem_euclid(self.group_order() as i64) as usize;
        self.wrap(self.antilog[e])
    }

    /// Element from a coefficient vector (constant term first, length n).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::InvalidElement(format!(
                "expected {} coefficients in [0, {}), got {coeffs:?}",
                self.n, self.p
            )));
        }
        Ok(self.wrap(encode(coeffs, self.p)))
    }

    pub fn from_code(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(FieldError::InvalidElement(format!(
                "code {code} out of range for q = {}",
                self.q
            )));
        }
        Ok(self.wrap(code))
    }

    /// Element embedding of an integer through the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        self.wrap(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>> {
        self.check(x)?;
        Ok(self.coeffs_of_code(x.code))
    }

    /// All q elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |c| self.wrap(c))
    }

    /// The N nonzero squares α^0, α^2, .., α^{2(N-1)}.
    pub fn quadratic_residues(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.half_order() as usize).map(move |k| self.wrap(self.antilog[2 * k]))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.tag == self.tag && x.code < self.q
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_codes(x.code, y.code)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_codes(x.code, self.neg_code(y.code))))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.wrap(self.neg_code(x.code)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_codes(x.code, y.code)))
    }

    /// x^k; negative k requires x ≠ 0. By convention 0^0 = 1.
    pub fn pow(&self, x: FieldElement, k: i64) -> Result<FieldElement> {
        self.check(x)?;
        if x.code == 0 {
            return match k {
                0 => Ok(self.one()),
                k if k > 0 => Ok(self.zero()),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let order = self.group_order() as i128;
        let e = (self.log[x.code as usize] as i128 * k as i128).rem_euclid(order);
        Ok(self.wrap(self.antilog[e as usize]))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.code == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.pow(x, -1)
    }

    /// Absolute trace Tr(x) = x + x^p + .. + x^{p^{n-1}}, as an integer in [0, p-1].
    pub fn trace(&self, x: FieldElement) -> Result<u32> {
        self.check(x)?;
        Ok(self.trace[x.code as usize])
    }

    /// Discrete logarithm to base α, in [0, q-2].
    pub fn dlog(&self, x: FieldElement) -> Result<u32> {
        self.check(x)?;
        match self.log[x.code as usize] {
            NO_LOG => Err(FieldError::LogOfZero),
            k => Ok(k),
        }
    }

    /// Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at zero.
    pub fn eta(&self, x: FieldElement) -> Result<i8> {
        self.check(x)?;
        Ok(self.eta_code(x.code))
    }

    /// Every primitive element α^k with gcd(k, q-1) = 1, in increasing code order.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        let order = self.group_order() as u64;
        let mut out: Vec<FieldElement> = (1..order)
            .filter(|&k| gcd(k, order) == 1)
            .map(|k| self.wrap(self.antilog[k as usize]))
            .collect();
        out.sort_by_key(|x| x.code);
        out
    }

    /// Same modulus, different primitive element.
    pub fn with_alpha(&self, alpha: FieldElement) -> Result<FieldCtx> {
        self.check(alpha)?;
        FieldBuilder::new(self.p as u64, self.n)
            .modulus(self.modulus.clone())
            .alpha(self.coeffs_of_code(alpha.code))
            .build()
    }

    // ---- code-level fast paths used by the sequence and correlation layers ----

    pub(crate) fn wrap(&self, code: u32) -> FieldElement {
        FieldElement {
            code,
            tag: self.tag,
        }
    }

    pub(crate) fn check(&self, x: FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    /// Tr(α^k), i.e. the β = 1 m-sequence indexed by exponent.
    pub(crate) fn trace_by_log(&self) -> &[u32] {
        &self.trace_by_log
    }

    pub(crate) fn trace_code(&self, code: u32) -> u32 {
        self.trace[code as usize]
    }

    pub(crate) fn log_code(&self, code: u32) -> Option<u32> {
        match self.log[code as usize] {
            NO_LOG => None,
            k => Some(k),
        }
    }

    pub(crate) fn antilog_code(&self, k: u64) -> u32 {
        self.antilog[(k % self.group_order() as u64) as usize]
    }

    /// α^x - α^y = α^x (1 - α^{y-x}), for x, y < q - 1.
    pub(crate) fn sub_powers_code(&self, x: u32, y: u32) -> u32 {
        let order = self.q - 1;
        let mut k = y + order - x;
        if k >= order {
            k -= order;
        }
        match self.zech[k as usize] {
            NO_LOG => 0,
            z => {
                let mut e = x + z;
                if e >= order {
                    e -= order;
                }
                self.antilog[e as usize]
            }
        }
    }

    pub(crate) fn eta_code(&self, code: u32) -> i8 {
        match self.log[code as usize] {
            NO_LOG => 0,
            k if k % 2 == 0 => 1,
            _ => -1,
        }
    }

    pub(crate) fn add_codes(&self, mut x: u32, mut y: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn neg_code(&self, mut x: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn mul_codes(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let order = self.q - 1;
        let mut e = self.log[x as usize] + self.log[y as usize];
        if e >= order {
            e -= order;
        }
        self.antilog[e as usize]
    }

    pub(crate) fn pow_code(&self, x: u32, k: u64) -> u32 {
        if x == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let order = self.group_order() as u64;
        self.antilog_code((self.log[x as usize] as u64 * (k % order)) % order)
    }

    fn coeffs_of_code(&self, code: u32) -> Vec<u32> {
        decode(code, self.p, self.n)
    }
}

fn checked_order(p: u64, n: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.saturating_mul(p);
        if q > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge(q));
        }
    }
    Ok(q as u32)
}

fn validate_modulus(m: &[u32], p: u32, n: u32) -> Result<()> {
    if m.len() != n as usize + 1 {
        return Err(FieldError::InvalidModulus(format!(
            "expected {} coefficients (degree {n}), got {}",
            n + 1,
            m.len()
        )));
    }
    if m[n as usize] != 1 {
        return Err(FieldError::InvalidModulus(format!("{m:?} is not monic")));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(FieldError::InvalidModulus(format!(
            "coefficients of {m:?} must lie in [0, {}]",
            p - 1
        )));
    }
    Ok(())
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = p.pow(n);
    (0..count)
        .map(|code| {
            let mut m = decode(code, p, n);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rabin's test: f | x^{p^n} - x, and gcd(f, x^{p^{n/r}} - x) = 1 for each
/// prime r dividing n.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let arith = PolyArith { p, n, modulus: m };
    let x = {
        let mut v = vec![0; n];
        v[1] = 1;
        v
    };
    let frob = |times: usize| {
        let mut y = x.clone();
        for _ in 0..times {
            y = arith.pow(&y, p as u64);
        }
        y
    };
    if frob(n) != x {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let mut h = frob(n / r as usize);
        h[1] = (h[1] + p - 1) % p;
        let g = zp_gcd(m.to_vec(), trim(h), p);
        g.len() == 1
    })
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^{p-2} inverts a.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Euclidean gcd over Z_p; returns a trimmed polynomial.
fn zp_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    a = trim(a);
    b = trim(b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = zp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn zp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
        if r.len() - 1 < db || (r.len() == 1 && db == 0) {
            if db == 0 {
                return vec![0];
            }
            break;
        }
    }
    r
}

/// Arithmetic in Z_p[x]/(m) on dense coefficient vectors of length n.
struct PolyArith<'a> {
    p: u32,
    n: usize,
    modulus: &'a [u32],
}

impl PolyArith<'_> {
    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (p, n) = (self.p as u64, self.n);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..=n {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u32).collect()
    }

    fn pow(&self, base: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = vec![0; self.n];
        result[0] = 1;
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }

    fn is_primitive(&self, a: &[u32], order: u64, factors: &[u64]) -> bool {
        let one = {
            let mut v = vec![0; self.n];
            v[0] = 1;
            v
        };
        if a.iter().all(|&c| c == 0) || self.pow(a, order) != one {
            return false;
        }
        factors.iter().all(|&r| self.pow(a, order / r) != one)
    }
}
