//! The cyclotomic field ℚ(ζₙ) as ℚ[x]/(Φₙ) and its elements.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;
use parking_lot::RwLock;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::rational::Rational;
use crate::error::{Error, Result};

pub(crate) type Coeffs = SmallVec<[Rational; 8]>;

/// Precomputed data for one cyclotomic field. Instances are interned and
/// live for the whole process.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    deg: usize,
    phi: Vec<Rational>,
    /// `x^k mod Φₙ` for `0 <= k < max(n, 2·deg - 1)`.
    reduce: Vec<Vec<Rational>>,
    /// Integer copy of `reduce`, absent if some entry overflows `i64`.
    reduce_int: Option<Vec<Vec<i64>>>,
}

static FIELDS: OnceLock<RwLock<HashMap<u32, &'static CycloField>>> = OnceLock::new();

/// Returns the interned field of order `n`. Panics if `n == 0`.
pub fn field(n: u32) -> &'static CycloField {
    assert!(n >= 1, "cyclotomic order must be positive");
    let map = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = map.read().get(&n) {
        return f;
    }
    let mut w = map.write();
    w.entry(n)
        .or_insert_with(|| Box::leak(Box::new(CycloField::build(n))))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &x.mul_ref(y);
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![Rational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (r, d) in den.iter().enumerate() {
            rem[k + r] -= &c.mul_ref(d);
        }
        q[k] = c;
    }
    assert!(rem.iter().all(Rational::is_zero), "inexact polynomial division");
    q
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<Rational>>) -> Vec<Rational> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // xⁿ − 1 = ∏_{d | n} Φ_d
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = Rational::from_int(-1);
    num[n as usize] = Rational::one();
    let mut den = vec![Rational::one()];
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_poly(d, memo);
            den = poly_mul(&den, &pd);
        }
    }
    let p = poly_div_exact(&num, &den);
    memo.insert(n, p.clone());
    p
}

/// Coefficients of Φₙ from the constant term up, monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    field(n).phi.clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

impl CycloField {
    fn build(n: u32) -> Self {
        let phi = cyclotomic_poly(n, &mut HashMap::new());
        let deg = phi.len() - 1;
        let top = (n as usize).max(2 * deg).max(1);
        let mut reduce: Vec<Vec<Rational>> = Vec::with_capacity(top);
        let mut cur = vec![Rational::zero(); deg];
        cur[0] = Rational::one();
        for _ in 0..top {
            reduce.push(cur.clone());
            // multiply by x, then fold the x^deg term using Φₙ monic
            let lead = cur[deg - 1].clone();
            let mut next = vec![Rational::zero(); deg];
            for r in (1..deg).rev() {
                next[r] = cur[r - 1].clone();
            }
            if !lead.is_zero() {
                for (r, slot) in next.iter_mut().enumerate() {
                    *slot -= &lead.mul_ref(&phi[r]);
                }
            }
            cur = next;
        }
        let reduce_int = reduce
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.as_small().filter(|&(_, b)| b == 1).map(|(a, _)| a))
                    .collect::<Option<Vec<i64>>>()
            })
            .collect();
        CycloField {
            n,
            deg,
            phi,
            reduce,
            reduce_int,
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    fn power_coeffs(&self, e: i64) -> &[Rational] {
        let k = e.rem_euclid(self.n as i64) as usize;
        &self.reduce[k]
    }
}

/// An element of ℚ(ζₙ), stored as coefficients of 1, ζ, …, ζ^{φ(n)−1}.
#[derive(Clone)]
pub struct CycNum {
    field: &'static CycloField,
    coeffs: Coeffs,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let f = field(n);
        CycNum {
            field: f,
            coeffs: SmallVec::from_elem(Rational::zero(), f.deg),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, Rational::from_int(v))
    }

    pub fn from_rational(n: u32, v: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = v;
        z
    }

    /// ζₙ^e for any integer e.
    pub fn root_power(n: u32, e: i64) -> Self {
        let f = field(n);
        CycNum {
            field: f,
            coeffs: f.power_coeffs(e).iter().cloned().collect(),
        }
    }

    /// Builds from coefficients of 1, ζ, ζ², … of any length, reducing modulo Φₙ.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Self {
        let f = field(n);
        let mut out = Self::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = f.power_coeffs(k as i64);
            for (r, v) in red.iter().enumerate() {
                if !v.is_zero() {
                    out.coeffs[r] += &c.mul_ref(v);
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Exponent e in `0..n` with `self = ζₙ^e`, if any.
    pub fn root_exponent(&self) -> Option<u32> {
        let f = self.field;
        (0..f.n).find(|&e| f.reduce[e as usize][..] == self.coeffs[..])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field.n != o.field.n {
            return Err(Error::DomainMismatch(format!(
                "cyclotomic orders {} and {}",
                self.field.n, o.field.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_unchecked(&o.neg_ref()))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(o.coeffs.iter())
            .map(|(a, b)| a.add_ref(b))
            .collect();
        CycNum {
            field: self.field,
            coeffs,
        }
    }

    /// In-place `self += a·b`.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        assert_eq!(self.field.n, a.field.n, "cyclotomic order mismatch");
        let p = a.mul_unchecked(b);
        for (x, y) in self.coeffs.iter_mut().zip(p.coeffs.iter()) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Self) {
        assert_eq!(self.field.n, o.field.n, "cyclotomic order mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(o.coeffs.iter()) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    pub fn sub_assign_ref(&mut self, o: &Self) {
        assert_eq!(self.field.n, o.field.n, "cyclotomic order mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(o.coeffs.iter()) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let f = self.field;
        let d = f.deg;
        // scalar fast paths
        if let Some(r) = self.as_rational() {
            return o.scale(r);
        }
        if let Some(r) = o.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.mul_integral(o) {
            return r;
        }
        let mut prod: SmallVec<[Rational; 16]> = SmallVec::from_elem(Rational::zero(), 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &a.mul_ref(b);
                }
            }
        }
        let mut coeffs: Coeffs = prod[..d].iter().cloned().collect();
        for k in d..2 * d - 1 {
            let c = &prod[k];
            if c.is_zero() {
                continue;
            }
            for (r, v) in f.reduce[k].iter().enumerate() {
                if !v.is_zero() {
                    coeffs[r] += &c.mul_ref(v);
                }
            }
        }
        CycNum { field: f, coeffs }
    }

    /// Writes the coefficients over a common denominator into `out` and
    /// returns that denominator, or `None` on overflow.
    fn integral(&self, out: &mut [i128]) -> Option<i128> {
        let mut den: i64 = 1;
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            let (a, b) = c.as_small()?;
            *slot = a as i128;
            if b != 1 {
                den = den.checked_mul(b / den.gcd(&b))?;
            }
        }
        if den != 1 {
            for (slot, c) in out.iter_mut().zip(&self.coeffs) {
                let (_, b) = c.as_small()?;
                *slot = slot.checked_mul((den / b) as i128)?;
            }
        }
        Some(den as i128)
    }

    /// Product in `i128` arithmetic; `None` when anything overflows.
    fn mul_integral(&self, o: &Self) -> Option<Self> {
        const CAP: usize = 16;
        let f = self.field;
        let d = f.deg;
        if d > CAP {
            return None;
        }
        let rows = f.reduce_int.as_ref()?;
        let (mut a, mut b) = ([0i128; CAP], [0i128; CAP]);
        let da = self.integral(&mut a[..d])?;
        let db = o.integral(&mut b[..d])?;
        let mut prod = [0i128; 2 * CAP];
        for (i, &x) in a[..d].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b[..d].iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
        for k in d..2 * d - 1 {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (r, &v) in rows[k].iter().enumerate() {
                if v != 0 {
                    prod[r] = prod[r].checked_add(c.checked_mul(v as i128)?)?;
                }
            }
        }
        let den = da.checked_mul(db)?;
        let coeffs = prod[..d].iter().map(|&v| Rational::from_i128(v, den)).collect();
        Some(CycNum { field: f, coeffs })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect(),
        }
    }

    pub fn neg_ref(&self) -> Self {
        CycNum {
            field: self.field,
            coeffs: self.coeffs.iter().map(Rational::neg_ref).collect(),
        }
    }

    /// Multiplicative inverse; solves the linear system for multiplication by `self`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), r.inv().expect("nonzero")));
        }
        let n = self.order();
        let d = self.field.deg;
        // column r of M holds coeffs of self·ζ^r; solve M y = e₀
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for r in 0..d {
            let col = self.mul_unchecked(&Self::root_power(n, r as i64));
            for (row, v) in col.coeffs.iter().enumerate() {
                m[row][r] = v.clone();
            }
        }
        m[0][d] = Rational::one();
        let y = solve_rational(m, d).ok_or(Error::DivisionByZero)?;
        Ok(CycNum {
            field: self.field,
            coeffs: y.into_iter().collect(),
        })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    /// `self^e` for a non-negative exponent.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Renders with `ζ` for the generator.
    pub fn render(&self) -> String {
        self.render_with("ζ")
    }

    pub fn render_with(&self, sym: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{k}"),
            };
            if k == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Gaussian elimination on an augmented `d × (d+1)` rational system.
fn solve_rational(mut m: Vec<Vec<Rational>>, d: usize) -> Option<Vec<Rational>> {
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv()?;
        for v in m[col].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        for r in 0..d {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=d {
                let t = f.mul_ref(&m[col][c]);
                m[r][c] -= &t;
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, o: &Self) -> bool {
        self.field.n == o.field.n && self.coeffs == o.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        for c in &self.coeffs {
            c.hash(state);
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.field.n, self.render())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operators panic on mixed orders; the `try_*` methods and the free
// functions below report it as an error instead.
impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.try_add(o).expect("cyclotomic order mismatch")
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.try_sub(o).expect("cyclotomic order mismatch")
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.try_mul(o).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        &self + &o
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        &self - &o
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        &self * &o
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: String,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            order: self.order().to_string(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let (a, b) = c.to_string_pair();
                    [a, b]
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycNumRepr::deserialize(d)?;
        let n: u32 = r.order.parse().map_err(D::Error::custom)?;
        if n == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|[a, b]| Rational::parse_pair(a, b).ok_or_else(|| D::Error::custom("bad rational")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.len() != euler_phi(n) {
            return Err(D::Error::custom("coefficient count must equal φ(order)"));
        }
        Ok(CycNum::from_coeffs(n, &coeffs))
    }
}

/// ζₙ^{e mod n} in canonical form.
pub fn cyc_root_power(n: u32, e: i64) -> CycNum {
    CycNum::root_power(n, e)
}

pub fn cyc_add(a: &CycNum, b: &CycNum) -> Result<CycNum> {
    a.try_add(b)
}

pub fn cyc_mul(a: &CycNum, b: &CycNum) -> Result<CycNum> {
    a.try_mul(b)
}

pub fn cyc_neg(a: &CycNum) -> CycNum {
    a.neg_ref()
}

pub fn cyc_inv(a: &CycNum) -> Result<CycNum> {
    a.inv()
}
