//! Exact univariate polynomials over the integers.
//!
//! Root locations are certified with Sturm sign-variation counts evaluated in
//! exact rational arithmetic; no floating point enters any decision made here.
//! Also holds the two cubics of the counterexample family:
//!
//! * `g(x) = x³ − e x² + ((2q−2k−1)(p−1) − 1) x − (p−2)(q−k−1)`, whose largest
//!   root is `ρ(K^±_{p,q−k})²`;
//! * `f_a(x) = x³ − e x² + (k−a) p (p−1) (q−a−(k−a)p) x`, whose largest root is
//!   `ρ(^eK_{p,q−a})²`;
//!
//! with `e = p(q−k)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Coefficient arithmetic is exact; brackets default to this width.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 40u32)
}

/// Separation threshold below which two largest roots are reported unresolved.
pub fn unresolved_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 60u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("requires p > 2 (got p = {p})")]
    PTooSmall { p: u64 },
    #[error("requires k >= 1 (got k = 0)")]
    KZero,
    #[error("requires q > kp+2 (got q = {q}, kp+2 = {bound})")]
    QTooSmall { q: u64, bound: u64 },
    #[error("requires 0 <= a <= k-1 (got a = {a}, k = {k})")]
    AOutOfRange { a: u64, k: u64 },
}

/// `p > 2`, `k >= 1`, `q > kp + 2`.
pub fn check_hypotheses(p: u64, q: u64, k: u64) -> Result<(), HypothesisError> {
    if p <= 2 {
        return Err(HypothesisError::PTooSmall { p });
    }
    if k == 0 {
        return Err(HypothesisError::KZero);
    }
    let bound = k * p + 2;
    if q <= bound {
        return Err(HypothesisError::QTooSmall { q, bound });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
    #[error("polynomial is constant")]
    Constant,
    #[error("leading coefficient must be positive")]
    NonPositiveLeading,
    #[error("no real root below the Cauchy bound {bound}")]
    NoRealRoot { bound: BigRational },
    #[error("largest roots not separated at width {width}")]
    Unresolved { width: BigRational },
}

/// Integer polynomial, coefficients in ascending degree, leading coefficient
/// nonzero. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `c x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by the content, leading coefficient made positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `self(x)` from the homogenised integer sum `Σ c_i n^i d^(deg−i)`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let (n, d) = (x.numer(), x.denom());
        let mut n_pow = BigInt::one();
        let mut d_pows = Vec::with_capacity(deg + 1);
        let mut dp = BigInt::one();
        for _ in 0..=deg {
            d_pows.push(dp.clone());
            dp *= d;
        }
        let mut total = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * &n_pow * &d_pows[deg - i];
            }
            n_pow *= n;
        }
        total.cmp(&BigInt::zero())
    }

    /// Positive multiple of `self mod divisor`: `c·self − Q·divisor` with `c > 0`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("division by zero polynomial");
        let lb = divisor.leading().unwrap().clone();
        let lb_abs = lb.abs();
        let lb_sign = lb.signum();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shifted = Self::monomial(&lb_sign * lr, dr - db) * divisor.clone();
            r = r.scale(&lb_abs) - shifted;
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient, `None` if `divisor` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        let lb = divisor.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (quot, rem) = r.leading().unwrap().div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            r = r - Self::monomial(quot.clone(), dr - db) * divisor.clone();
            q[dr - db] = quot;
        }
        Some(Self::new(q))
    }

    /// Same roots, each simple; primitive with positive leading coefficient.
    pub fn squarefree(&self) -> Self {
        let p = self.primitive();
        if p.degree().unwrap_or(0) < 1 {
            return p;
        }
        let g = p.gcd(&p.derivative());
        p.div_exact(&g).expect("gcd divides").primitive()
    }

    /// Text form such as `x^3 - 15x^2 + 17x - 4`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = magnitude.is_one();
            match k {
                0 => out.push_str(&magnitude.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&magnitude.to_string());
                    }
                    out.push('x');
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Serialised as a JSON array of decimal strings, ascending degree.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self::new(coeffs))
    }
}

impl Add for IntPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for IntPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for IntPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for IntPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

/// Characteristic polynomial `det(xI − M)` of a square integer matrix, by
/// Laplace expansion along rows with memoisation over column subsets.
///
/// # Panics
/// If `m` is not square or has more than 20 rows.
pub fn char_poly(m: &[Vec<BigInt>]) -> IntPolynomial {
    let n = m.len();
    assert!(n <= 20, "char_poly supports order <= 20");
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let entry = |i: usize, j: usize| {
        let c = IntPolynomial::new(vec![-m[i][j].clone()]);
        if i == j {
            c + IntPolynomial::monomial(BigInt::one(), 1)
        } else {
            c
        }
    };
    // minor[mask] = determinant of rows (n - |mask|).. over the columns in mask
    let mut minors: Vec<Option<IntPolynomial>> = vec![None; 1 << n];
    minors[0] = Some(IntPolynomial::from_i64(&[1]));
    for mask in 1usize..(1 << n) {
        let row = n - mask.count_ones() as usize;
        let mut acc = IntPolynomial::zero();
        let mut sign_positive = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = minors[mask & !(1 << col)].as_ref().unwrap().clone();
            let term = entry(row, col) * sub;
            acc = if sign_positive { acc + term } else { acc - term };
            sign_positive = !sign_positive;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().unwrap()
}

/// Closed interval `[lo, hi]` holding one certified real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn disjoint_from(&self, other: &Self) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

impl Serialize for RootBracket {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootBracket", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RootBracket {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: String,
            hi: String,
        }
        let raw = Raw::deserialize(d)?;
        let parse = |s: &str| s.parse::<BigRational>().map_err(serde::de::Error::custom);
        Ok(Self {
            lo: parse(&raw.lo)?,
            hi: parse(&raw.hi)?,
        })
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Chain of the squarefree part of `poly`, so counts are of distinct roots.
    pub fn new(poly: &IntPolynomial) -> Self {
        let p0 = poly.squarefree();
        let mut chain = vec![p0.clone()];
        let mut prev = p0;
        let mut cur = prev.derivative().primitive();
        while !cur.is_zero() {
            let next = -prev.pseudo_rem(&cur);
            let next = if next.is_zero() {
                next
            } else {
                // dividing by the positive content keeps the sign
                let c = next.content();
                IntPolynomial::new(next.coefficients().iter().map(|x| x / &c).collect())
            };
            chain.push(cur.clone());
            prev = cur;
            cur = next;
        }
        Self { chain }
    }

    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut changes = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        Self::count_changes(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// `1 + max_i |c_i| / |c_n|`; every real root lies strictly inside `(−B, B)`.
pub fn cauchy_bound(poly: &IntPolynomial) -> BigRational {
    let lead = poly.leading().expect("nonzero polynomial").abs();
    let max = poly.coefficients()[..poly.coefficients().len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    BigRational::one() + BigRational::new(max, lead)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Narrows `(lo, hi]`, known to hold exactly one root of the chain's base,
/// until its width is at most `width`. Collapses to a point on an exact hit.
fn refine(chain: &SturmChain, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> RootBracket {
    let base = chain.base();
    if base.sign_at(&hi) == Ordering::Equal {
        return RootBracket { lo: hi.clone(), hi };
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        if base.sign_at(&mid) == Ordering::Equal {
            return RootBracket {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if chain.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootBracket { lo, hi }
}

fn validate_for_roots(poly: &IntPolynomial) -> Result<(), PolyError> {
    match (poly.degree(), poly.leading()) {
        (None | Some(0), _) => Err(PolyError::Constant),
        (_, Some(l)) if !l.is_positive() => Err(PolyError::NonPositiveLeading),
        _ => Ok(()),
    }
}

/// Bracket of at most `width` around the largest real root of `poly`.
pub fn largest_real_root(poly: &IntPolynomial, width: &BigRational) -> Result<RootBracket, PolyError> {
    validate_for_roots(poly)?;
    let chain = SturmChain::new(poly);
    let bound = cauchy_bound(poly);
    let mut lo = -bound.clone();
    let mut hi = bound.clone();
    if chain.count(&lo, &hi) == 0 {
        return Err(PolyError::NoRealRoot { bound });
    }
    // invariant: a root in (lo, hi], none above hi
    loop {
        if chain.count(&lo, &hi) == 1 {
            return Ok(refine(&chain, lo, hi, width));
        }
        let mid = (&lo + &hi) * half();
        if chain.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Brackets of every distinct real root, ascending.
pub fn real_root_brackets(poly: &IntPolynomial, width: &BigRational) -> Result<Vec<RootBracket>, PolyError> {
    validate_for_roots(poly)?;
    let chain = SturmChain::new(poly);
    let bound = cauchy_bound(poly);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi) {
            0 => {}
            1 => out.push(refine(&chain, lo, hi, width)),
            _ => {
                let mid = (&lo + &hi) * half();
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    /// All coefficients `>= 0`, at least one `> 0`: positive for every `x > 0`.
    Certified,
    /// The difference is the zero polynomial.
    Zero,
    /// Some coefficient is negative; nothing certified.
    Indeterminate,
}

/// Coefficientwise evidence that `f − g > 0` on `x > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffCertificate {
    pub diff: IntPolynomial,
    pub positivity: Positivity,
}

impl DiffCertificate {
    pub fn is_certified(&self) -> bool {
        self.positivity == Positivity::Certified
    }
}

pub fn diff_positive_on_positives(f: &IntPolynomial, g: &IntPolynomial) -> DiffCertificate {
    let diff = f.clone() - g.clone();
    let positivity = if diff.is_zero() {
        Positivity::Zero
    } else if diff.coefficients().iter().any(Signed::is_negative) {
        Positivity::Indeterminate
    } else {
        Positivity::Certified
    };
    DiffCertificate { diff, positivity }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonMethod {
    Identical,
    Certificate,
    Bisection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootComparison {
    /// Order of `root(f)` relative to `root(g)`.
    pub ordering: Ordering,
    pub method: ComparisonMethod,
    pub certificate: DiffCertificate,
    pub f_bracket: RootBracket,
    pub g_bracket: RootBracket,
}

/// Orders the largest real roots of `f` and `g`.
///
/// A coefficientwise-positive `f − g` with `root(g) > 0` proves
/// `root(f) < root(g)` (and symmetrically); otherwise both brackets are
/// refined until disjoint, giving up at width `2^-60`.
pub fn compare_largest_roots(f: &IntPolynomial, g: &IntPolynomial) -> Result<RootComparison, PolyError> {
    let width = default_width();
    let f_bracket = largest_real_root(f, &width)?;
    let g_bracket = largest_real_root(g, &width)?;
    let certificate = diff_positive_on_positives(f, g);
    if f == g {
        return Ok(RootComparison {
            ordering: Ordering::Equal,
            method: ComparisonMethod::Identical,
            certificate,
            f_bracket,
            g_bracket,
        });
    }
    let zero = BigRational::zero();
    if certificate.is_certified() && g_bracket.lo > zero {
        return Ok(RootComparison {
            ordering: Ordering::Less,
            method: ComparisonMethod::Certificate,
            certificate,
            f_bracket,
            g_bracket,
        });
    }
    let reverse = diff_positive_on_positives(g, f);
    if reverse.is_certified() && f_bracket.lo > zero {
        return Ok(RootComparison {
            ordering: Ordering::Greater,
            method: ComparisonMethod::Certificate,
            certificate,
            f_bracket,
            g_bracket,
        });
    }
    let floor = unresolved_width();
    let mut w = width;
    let (mut fb, mut gb) = (f_bracket, g_bracket);
    loop {
        if fb.disjoint_from(&gb) {
            let ordering = if fb.hi < gb.lo {
                Ordering::Less
            } else {
                Ordering::Greater
            };
            return Ok(RootComparison {
                ordering,
                method: ComparisonMethod::Bisection,
                certificate,
                f_bracket: fb,
                g_bracket: gb,
            });
        }
        if fb.is_exact() && gb.is_exact() {
            // same rational root
            return Ok(RootComparison {
                ordering: Ordering::Equal,
                method: ComparisonMethod::Bisection,
                certificate,
                f_bracket: fb,
                g_bracket: gb,
            });
        }
        if shares_largest_root(f, g, &fb, &gb) {
            return Ok(RootComparison {
                ordering: Ordering::Equal,
                method: ComparisonMethod::Bisection,
                certificate,
                f_bracket: fb,
                g_bracket: gb,
            });
        }
        if w <= floor {
            return Err(PolyError::Unresolved { width: floor });
        }
        w = (&w * BigRational::new(BigInt::one(), BigInt::from(1 << 10))).max(floor.clone());
        fb = largest_real_root(f, &w)?;
        gb = largest_real_root(g, &w)?;
    }
}

/// Whether both brackets isolate the same root of `gcd(f, g)`.
fn shares_largest_root(f: &IntPolynomial, g: &IntPolynomial, fb: &RootBracket, gb: &RootBracket) -> bool {
    let h = f.gcd(g);
    if h.degree().unwrap_or(0) == 0 {
        return false;
    }
    let isolates = |poly: &IntPolynomial, b: &RootBracket| b.is_exact() || SturmChain::new(poly).count(&b.lo, &b.hi) == 1;
    if !isolates(f, fb) || !isolates(g, gb) {
        return false;
    }
    let lo = (&fb.lo).max(&gb.lo);
    let hi = (&fb.hi).min(&gb.hi);
    // half-open brackets exclude their lower end
    let lo_open = (!fb.is_exact() && lo == &fb.lo) || (!gb.is_exact() && lo == &gb.lo);
    match lo.cmp(hi) {
        Ordering::Greater => false,
        Ordering::Equal => !lo_open && h.sign_at(lo) == Ordering::Equal,
        Ordering::Less => {
            let extra = usize::from(!lo_open && h.sign_at(lo) == Ordering::Equal);
            SturmChain::new(&h).count(lo, hi) + extra >= 1
        }
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `g(x)`; its largest root is `ρ(K^±_{p,q−k})²`.
pub fn g_poly(p: u64, q: u64, k: u64) -> Result<IntPolynomial, HypothesisError> {
    check_hypotheses(p, q, k)?;
    let (p, q, k) = (big(p), big(q), big(k));
    let one = BigInt::one();
    let e = &p * (&q - &k);
    let x1 = (big(2) * &q - big(2) * &k - &one) * (&p - &one) - &one;
    let x0 = -((&p - big(2)) * (&q - &k - &one));
    Ok(IntPolynomial::new(vec![x0, x1, -e, one]))
}

/// `f_a(x)`; its largest root is `ρ(^eK_{p,q−a})²`.
pub fn f_poly(p: u64, q: u64, k: u64, a: u64) -> Result<IntPolynomial, HypothesisError> {
    check_hypotheses(p, q, k)?;
    if a >= k {
        return Err(HypothesisError::AOutOfRange { a, k });
    }
    let e = big(p) * (big(q) - big(k));
    let x1 = f_x_coefficient(p, q, k, a);
    Ok(IntPolynomial::new(vec![BigInt::zero(), x1, -e, BigInt::one()]))
}

/// `(k−a) p (p−1) (q−a−(k−a)p)`, the linear coefficient of `f_a`. Signed, so it
/// can be evaluated outside the hypotheses.
pub fn f_x_coefficient(p: u64, q: u64, k: u64, a: u64) -> BigInt {
    let (p, q, k, a) = (big(p), big(q), big(k), big(a));
    let ka = &k - &a;
    &ka * &p * (&p - 1) * (&q - &a - &ka * &p)
}

/// `(p−1)[p(k−a)(q−a−(k−a)p) − 2q + 2k + 1] + 1`, the linear coefficient of `f_a − g`.
pub fn diff_x_coefficient(p: u64, q: u64, k: u64, a: u64) -> BigInt {
    let (pb, qb, kb, ab) = (big(p), big(q), big(k), big(a));
    let ka = &kb - &ab;
    let inner = &pb * &ka * (&qb - &ab - &ka * &pb) - big(2) * &qb + big(2) * &kb + 1;
    (&pb - 1) * inner + 1
}

/// `(p−2)(q−k−1)`, the constant of `f_a − g`, independent of `a`.
pub fn diff_constant(p: u64, q: u64, k: u64) -> BigInt {
    let (p, q, k) = (big(p), big(q), big(k));
    (&p - 2) * (&q - &k - 1)
}

/// Least value of [`diff_x_coefficient`] over `a ∈ [0, k−1]`, from the
/// endpoint formulas: `a = 0` gives `(p−1)[(kp−2)(q−kp−2)+2k−3]+1`, and for
/// `k > 1`, `a = k−1` gives `(p−1)[(p−2)(q−p−k−2)+p−3]+1`.
pub fn least_diff_x_coefficient(p: u64, q: u64, k: u64) -> BigInt {
    let (pb, qb, kb) = (big(p), big(q), big(k));
    let at_zero: BigInt = (&pb - 1) * ((&kb * &pb - 2) * (&qb - &kb * &pb - 2) + big(2) * &kb - 3) + 1;
    if k > 1 {
        let at_last: BigInt = (&pb - 1) * ((&pb - 2) * (&qb - &pb - &kb - 2) + &pb - 3) + 1;
        at_zero.min(at_last)
    } else {
        at_zero
    }
}
