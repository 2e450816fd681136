//! Exact arithmetic in Q(ζ_{2p}) and in the quadratic extension Q(ζ_{2p})[θ]/(θ² − c)
//! where c = (1 − ξ⁻²)λ and λ = (ξ − 1)/(ξ + 1).
//!
//! Cyclotomic elements are stored as an integer numerator polynomial over a positive
//! common denominator, reduced modulo the (monic, integral) cyclotomic polynomial Φ_{2p}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Shared field data for Q(ζ_{2p}).
#[derive(Debug)]
pub struct FieldCtx {
    p: usize,
    deg: usize,
    /// Φ_{2p}, low to high, monic.
    phi: Vec<BigInt>,
    /// ξ^k reduced, k ∈ [0, 2p).
    xi_pows: Vec<Vec<BigInt>>,
    lambda: (Vec<BigInt>, BigInt),
    theta_sq: (Vec<BigInt>, BigInt),
}

/// Handle to the field Q(ζ_{2p}) with the distinguished elements ξ, λ and c = θ².
#[derive(Clone, Debug)]
pub struct ScalarContext(Arc<FieldCtx>);

impl PartialEq for ScalarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.p == other.0.p
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Exact division of integer polynomials by a monic divisor; panics if not exact.
fn poly_div_exact(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    if rem.len() <= dd {
        return vec![];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - dd] = c.clone();
        for (i, d) in div.iter().enumerate() {
            rem[k - dd + i] -= &c * d;
        }
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact cyclotomic division");
    trim(&mut q);
    q
}

/// The n-th cyclotomic polynomial by iterated exact division of xⁿ − 1.
pub fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); n + 1];
    f[0] = BigInt::from(-1);
    f[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            f = poly_div_exact(&f, &cyclotomic_poly(d));
        }
    }
    f
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

impl FieldCtx {
    /// Reduce an integer polynomial modulo Φ (monic, so stays integral).
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.deg;
        if v.len() > n {
            for k in (n..v.len()).rev() {
                let c = std::mem::take(&mut v[k]);
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    v[k - n + i] -= &c * &self.phi[i];
                }
            }
            v.truncate(n);
        }
        trim(&mut v);
        v
    }

    fn mul_raw(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Inverse of num/den by solving the multiplication-matrix system over Q.
    fn inv_raw(&self, num: &[BigInt], den: &BigInt) -> (Vec<BigInt>, BigInt) {
        let n = self.deg;
        // column k = num * x^k mod Φ
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut cur = num.to_vec();
        for _ in 0..n {
            cols.push(cur.clone());
            let mut sh = vec![BigInt::zero()];
            sh.extend(cur);
            cur = self.reduce(sh);
        }
        // augmented matrix rows: M[r][k] = cols[k][r], rhs e_0
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|k| BigRational::from_integer(cols[k].get(r).cloned().unwrap_or_default()))
                    .collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonzero field element is invertible");
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        // a^{-1} = den * y
        let y: Vec<BigRational> = (0..n).map(|r| m[r][n].clone() * BigRational::from_integer(den.clone())).collect();
        let mut common = BigInt::one();
        for q in &y {
            common = common.lcm(q.denom());
        }
        let nums: Vec<BigInt> = y.iter().map(|q| q.numer() * (&common / q.denom())).collect();
        normalize(nums, common)
    }
}

fn normalize(mut num: Vec<BigInt>, mut den: BigInt) -> (Vec<BigInt>, BigInt) {
    trim(&mut num);
    if num.is_empty() {
        return (num, BigInt::one());
    }
    if den.is_negative() {
        den = -den;
        for c in num.iter_mut() {
            *c = -&*c;
        }
    }
    if !den.is_one() {
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
    }
    (num, den)
}

impl ScalarContext {
    /// Build Q(ζ_{2p}); rejects p < 2.
    pub fn new(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("p must be at least 2, got {p}")));
        }
        let n = 2 * p;
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        debug_assert_eq!(deg, euler_phi(n));
        let mut f = FieldCtx {
            p,
            deg,
            phi,
            xi_pows: vec![],
            lambda: (vec![], BigInt::one()),
            theta_sq: (vec![], BigInt::one()),
        };
        let mut pows = Vec::with_capacity(n);
        let mut cur = vec![BigInt::one()];
        for _ in 0..n {
            pows.push(cur.clone());
            let mut sh = vec![BigInt::zero()];
            sh.extend(cur);
            cur = f.reduce(sh);
        }
        f.xi_pows = pows;
        // λ = (ξ−1)(ξ+1)⁻¹ and c = (1 − ξ⁻²)λ, computed on raw representatives.
        let one = BigInt::one();
        let xm1 = f.reduce(vec![-one.clone(), one.clone()]);
        let xp1 = f.reduce(vec![one.clone(), one.clone()]);
        let (ip, ipd) = f.inv_raw(&xp1, &one);
        let lam = normalize(f.mul_raw(&xm1, &ip), ipd);
        let mut one_minus = f.xi_pows[n - 2].iter().map(|c| -c).collect::<Vec<_>>();
        if one_minus.is_empty() {
            one_minus.push(BigInt::zero());
        }
        one_minus[0] += 1;
        let one_minus = f.reduce(one_minus);
        let c = normalize(f.mul_raw(&one_minus, &lam.0), lam.1.clone());
        f.lambda = lam;
        f.theta_sq = c;
        Ok(ScalarContext(Arc::new(f)))
    }

    pub fn p(&self) -> usize {
        self.0.p
    }

    /// The cyclotomic modulus 2p.
    pub fn order(&self) -> usize {
        2 * self.0.p
    }

    /// Degree φ(2p) of the field over Q.
    pub fn degree(&self) -> usize {
        self.0.deg
    }

    /// Coefficients of Φ_{2p}, low to high.
    pub fn phi(&self) -> &[BigInt] {
        &self.0.phi
    }

    fn cyc(&self, num: Vec<BigInt>, den: BigInt) -> Cyclotomic {
        let (num, den) = normalize(num, den);
        Cyclotomic { f: self.0.clone(), num, den }
    }

    fn lift(&self, c: Cyclotomic) -> ThetaScalar {
        ThetaScalar { th: Cyclotomic::zero_in(&self.0), re: c }
    }

    pub fn zero(&self) -> ThetaScalar {
        self.lift(Cyclotomic::zero_in(&self.0))
    }

    pub fn one(&self) -> ThetaScalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> ThetaScalar {
        self.lift(self.cyc(vec![BigInt::from(n)], BigInt::one()))
    }

    pub fn ratio(&self, n: i64, d: i64) -> ThetaScalar {
        assert!(d != 0, "zero denominator");
        self.lift(self.cyc(vec![BigInt::from(n)], BigInt::from(d)))
    }

    pub fn rational(&self, q: &BigRational) -> ThetaScalar {
        self.lift(self.cyc(vec![q.numer().clone()], q.denom().clone()))
    }

    /// The canonical primitive 2p-th root ξ (class of the indeterminate).
    pub fn xi(&self) -> ThetaScalar {
        self.xi_pow(1)
    }

    /// ξ^k for any integer k.
    pub fn xi_pow(&self, k: i64) -> ThetaScalar {
        let n = self.order() as i64;
        let k = k.rem_euclid(n) as usize;
        self.lift(Cyclotomic { f: self.0.clone(), num: self.0.xi_pows[k].clone(), den: BigInt::one() })
    }

    /// (−1)^k.
    pub fn sign(&self, k: i64) -> ThetaScalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.int(-1)
        }
    }

    /// λ = (ξ − 1)/(ξ + 1).
    pub fn lambda(&self) -> ThetaScalar {
        let (n, d) = &self.0.lambda;
        self.lift(Cyclotomic { f: self.0.clone(), num: n.clone(), den: d.clone() })
    }

    pub fn lambda_inv(&self) -> ThetaScalar {
        self.lambda().inv().expect("λ ≠ 0")
    }

    /// c = θ² = (1 − ξ⁻²)λ.
    pub fn theta_sq(&self) -> ThetaScalar {
        let (n, d) = &self.0.theta_sq;
        self.lift(Cyclotomic { f: self.0.clone(), num: n.clone(), den: d.clone() })
    }

    /// The formal square root θ.
    pub fn theta(&self) -> ThetaScalar {
        ThetaScalar { re: Cyclotomic::zero_in(&self.0), th: self.cyc(vec![BigInt::one()], BigInt::one()) }
    }

    /// θ⁻¹ = θ/c.
    pub fn theta_inv(&self) -> ThetaScalar {
        self.theta().inv().expect("θ is invertible")
    }

    /// θ⁻² = 1/c, an element of Q(ζ).
    pub fn theta_inv_sq(&self) -> ThetaScalar {
        self.theta_sq().inv().expect("c ≠ 0")
    }

    /// Parse the canonical text form (`x` for ξ, `t` for θ).
    pub fn parse(&self, s: &str) -> Result<ThetaScalar> {
        Parser { ctx: self, s: s.as_bytes(), pos: 0 }.parse_all()
    }
}

/// Element of Q(ζ_{2p}) = Q[x]/Φ_{2p}.
#[derive(Clone)]
pub struct Cyclotomic {
    f: Arc<FieldCtx>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}
impl Eq for Cyclotomic {}

impl Cyclotomic {
    fn zero_in(f: &Arc<FieldCtx>) -> Self {
        Cyclotomic { f: f.clone(), num: vec![], den: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// Rational coefficients, low to high, padded to the field degree.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.f.deg)
            .map(|k| {
                let n = self.num.get(k).cloned().unwrap_or_default();
                BigRational::new(n, self.den.clone())
            })
            .collect()
    }

    /// Number of nonzero coefficients.
    pub fn support(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    /// Some(q) if the element is the rational number q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn add_c(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let len = self.num.len().max(o.num.len());
        let mut v = Vec::with_capacity(len);
        if self.den == o.den {
            for k in 0..len {
                let a = self.num.get(k);
                let b = o.num.get(k);
                v.push(match (a, b) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    _ => unreachable!(),
                });
            }
            let (num, den) = normalize(v, self.den.clone());
            return Cyclotomic { f: self.f.clone(), num, den };
        }
        for k in 0..len {
            let a = self.num.get(k).map(|a| a * &o.den).unwrap_or_default();
            let b = o.num.get(k).map(|b| b * &self.den).unwrap_or_default();
            v.push(a + b);
        }
        let (num, den) = normalize(v, &self.den * &o.den);
        Cyclotomic { f: self.f.clone(), num, den }
    }

    fn neg_c(&self) -> Self {
        Cyclotomic { f: self.f.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    fn mul_c(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Cyclotomic::zero_in(&self.f);
        }
        let v = self.f.mul_raw(&self.num, &o.num);
        let (num, den) = normalize(v, &self.den * &o.den);
        Cyclotomic { f: self.f.clone(), num, den }
    }

    fn inv_c(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.num.len() == 1 {
            let (num, den) = normalize(vec![self.den.clone()], self.num[0].clone());
            return Some(Cyclotomic { f: self.f.clone(), num, den });
        }
        let (num, den) = self.f.inv_raw(&self.num, &self.den);
        Some(Cyclotomic { f: self.f.clone(), num, den })
    }
}

/// Element re + th·θ of Q(ζ_{2p})[θ]/(θ² − c).
#[derive(Clone, PartialEq, Eq)]
pub struct ThetaScalar {
    pub re: Cyclotomic,
    pub th: Cyclotomic,
}

impl ThetaScalar {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.th.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.th.is_zero() && self.re.is_one()
    }

    /// True when the θ-component vanishes, i.e. the element lies in Q(ζ).
    pub fn is_cyclotomic(&self) -> bool {
        self.th.is_zero()
    }

    pub fn ctx(&self) -> ScalarContext {
        ScalarContext(self.re.f.clone())
    }

    /// Total coefficient support, used by pivot selection.
    pub fn support(&self) -> usize {
        self.re.support() + self.th.support()
    }

    pub fn zero_like(&self) -> Self {
        ThetaScalar { re: Cyclotomic::zero_in(&self.re.f), th: Cyclotomic::zero_in(&self.re.f) }
    }

    pub fn one_like(&self) -> Self {
        let f = &self.re.f;
        ThetaScalar {
            re: Cyclotomic { f: f.clone(), num: vec![BigInt::one()], den: BigInt::one() },
            th: Cyclotomic::zero_in(f),
        }
    }

    /// The automorphism θ ↦ −θ.
    pub fn conj(&self) -> Self {
        ThetaScalar { re: self.re.clone(), th: self.th.neg_c() }
    }

    fn c(&self) -> Cyclotomic {
        let (n, d) = &self.re.f.theta_sq;
        Cyclotomic { f: self.re.f.clone(), num: n.clone(), den: d.clone() }
    }

    /// Norm re² − th²c down to Q(ζ); the element is a unit iff the norm is nonzero.
    pub fn norm(&self) -> Cyclotomic {
        let a = self.re.mul_c(&self.re);
        if self.th.is_zero() {
            return a;
        }
        let b = self.th.mul_c(&self.th).mul_c(&self.c());
        a.add_c(&b.neg_c())
    }

    pub fn is_unit(&self) -> bool {
        !self.norm().is_zero()
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.th.is_zero() {
            let re = self.re.inv_c().expect("nonzero");
            return Ok(ThetaScalar { re, th: Cyclotomic::zero_in(&self.re.f) });
        }
        let n = self.norm();
        let ninv = n.inv_c().ok_or(Error::DivisionByZeroDivisor)?;
        Ok(ThetaScalar { re: self.re.mul_c(&ninv), th: self.th.neg_c().mul_c(&ninv) })
    }

    pub fn inv(&self) -> Result<Self> {
        self.try_inv()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.try_inv()?)
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let (mut base, mut k) = if e < 0 { (self.try_inv()?, (-e) as u64) } else { (self.clone(), e as u64) };
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Smallest n ≥ 1 with sⁿ = 1, searched up to 4p.
    pub fn order_of_unity(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let bound = 4 * self.re.f.p;
        let mut cur = self.clone();
        for n in 1..=bound {
            if cur.is_one() {
                return Some(n);
            }
            cur = &cur * self;
        }
        None
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let c = Cyclotomic { f: self.re.f.clone(), num: vec![BigInt::from(k)], den: BigInt::one() };
        let c = ThetaScalar { re: c, th: Cyclotomic::zero_in(&self.re.f) };
        self * &c
    }

    fn mul_t(&self, o: &Self) -> Self {
        if self.th.is_zero() && o.th.is_zero() {
            return ThetaScalar { re: self.re.mul_c(&o.re), th: Cyclotomic::zero_in(&self.re.f) };
        }
        let ac = self.re.mul_c(&o.re);
        let bd = self.th.mul_c(&o.th);
        let re = if bd.is_zero() { ac } else { ac.add_c(&bd.mul_c(&self.c())) };
        let th = self.re.mul_c(&o.th).add_c(&self.th.mul_c(&o.re));
        ThetaScalar { re, th }
    }

    /// Canonical text: re-terms in ascending powers of `x`, then the `t`-terms.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<(BigRational, usize, bool)> = vec![];
        for (k, c) in self.re.coeffs().into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((c, k, false));
            }
        }
        for (k, c) in self.th.coeffs().into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((c, k, true));
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (c, k, t)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = vec![];
            match k {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{k}")),
            }
            if t {
                mono.push("t".into());
            }
            let mono = mono.join("*");
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for ThetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ThetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = ThetaScalar { re: self.clone(), th: Cyclotomic::zero_in(&self.f) };
        write!(f, "[{}]", t.to_text())
    }
}

impl<'a> Add<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn add(self, o: &ThetaScalar) -> ThetaScalar {
        ThetaScalar { re: self.re.add_c(&o.re), th: self.th.add_c(&o.th) }
    }
}
impl<'a> Sub<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn sub(self, o: &ThetaScalar) -> ThetaScalar {
        ThetaScalar { re: self.re.add_c(&o.re.neg_c()), th: self.th.add_c(&o.th.neg_c()) }
    }
}
impl<'a> Mul<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn mul(self, o: &ThetaScalar) -> ThetaScalar {
        self.mul_t(o)
    }
}
impl Neg for &ThetaScalar {
    type Output = ThetaScalar;
    fn neg(self) -> ThetaScalar {
        ThetaScalar { re: self.re.neg_c(), th: self.th.neg_c() }
    }
}
impl Neg for ThetaScalar {
    type Output = ThetaScalar;
    fn neg(self) -> ThetaScalar {
        -&self
    }
}
impl Add for ThetaScalar {
    type Output = ThetaScalar;
    fn add(self, o: ThetaScalar) -> ThetaScalar {
        &self + &o
    }
}
impl Sub for ThetaScalar {
    type Output = ThetaScalar;
    fn sub(self, o: ThetaScalar) -> ThetaScalar {
        &self - &o
    }
}
impl Mul for ThetaScalar {
    type Output = ThetaScalar;
    fn mul(self, o: ThetaScalar) -> ThetaScalar {
        &self * &o
    }
}

struct Parser<'a> {
    ctx: &'a ScalarContext,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i64 = self.int()?.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<ThetaScalar> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(self.ctx.xi_pow(e))
            }
            Some(b't') => {
                self.pos += 1;
                let e = self.exponent()?;
                self.ctx.theta().pow(e)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.int()?
                } else {
                    BigInt::one()
                };
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(self.ctx.rational(&BigRational::new(n, d)))
            }
            _ => Err(self.err("expected factor")),
        }
    }

    fn term(&mut self) -> Result<ThetaScalar> {
        let mut v = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            v = &v * &self.factor()?;
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<ThetaScalar> {
        let mut acc = self.ctx.zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn parse_all(mut self) -> Result<ThetaScalar> {
        let v = self.expr()?;
        self.ws();
        if self.pos != self.s.len() {
            return Err(self.err("trailing input"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(10), ints(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn p2_lambda_and_theta() {
        let k = ScalarContext::new(2).unwrap();
        assert_eq!(k.phi(), &ints(&[1, 0, 1])[..]);
        assert_eq!(k.lambda(), k.xi());
        assert_eq!(k.theta_sq(), k.xi().scale_int(2));
        let t = k.theta();
        let lhs = &(&k.one() + &t) * &(&k.one() - &t);
        assert_eq!(lhs, &k.one() - &k.xi().scale_int(2));
    }

    #[test]
    fn rejects_small_p() {
        assert!(ScalarContext::new(1).is_err());
        assert!(ScalarContext::new(0).is_err());
    }

    #[test]
    fn inverses() {
        for p in 2..=7 {
            let k = ScalarContext::new(p).unwrap();
            assert_eq!(k.xi().inv().unwrap(), k.xi_pow(2 * p as i64 - 1));
            let t = k.theta();
            assert_eq!(t.inv().unwrap(), &t * &k.theta_sq().inv().unwrap());
            let l = k.lambda();
            assert!((&l * &l.inv().unwrap()).is_one());
            let z = &(&k.xi() + &k.int(3)) + &k.theta().scale_int(2);
            assert!((&z * &z.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn zero_divisor_at_p2() {
        // c = 2i = (1+i)², so (1+i) − θ is a zero divisor.
        let k = ScalarContext::new(2).unwrap();
        let z = &(&k.one() + &k.xi()) - &k.theta();
        assert!(matches!(z.inv(), Err(Error::DivisionByZeroDivisor)));
        assert!(matches!(k.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn orders() {
        for p in 2..=6 {
            let k = ScalarContext::new(p).unwrap();
            let n = 2 * p;
            for e in 0..n {
                assert_eq!(k.xi_pow(e as i64).order_of_unity(), Some(n / e.gcd(&n)));
            }
            assert_eq!(k.int(-1).order_of_unity(), Some(2));
            assert_eq!(k.int(2).order_of_unity(), None);
        }
        let k = ScalarContext::new(2).unwrap();
        assert_eq!((-k.xi_pow(-1)).order_of_unity(), Some(4));
    }

    #[test]
    fn text_round_trip() {
        let k = ScalarContext::new(3).unwrap();
        let v = &(&k.ratio(3, 2) - &k.xi()) + &(&k.theta() * &k.xi_pow(5));
        let s = v.to_text();
        assert_eq!(k.parse(&s).unwrap(), v);
        assert_eq!(k.zero().to_text(), "0");
        assert_eq!(k.parse("x^6").unwrap(), k.one());
        assert_eq!(k.parse("t^2").unwrap(), k.theta_sq());
        assert_eq!(k.parse("-x*t + 1/3").unwrap().to_text(), "1/3 - x*t");
        assert!(k.parse("1 +").is_err());
    }
}
