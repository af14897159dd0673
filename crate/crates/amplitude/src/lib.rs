//! Exact complex arithmetic for quantum amplitudes.
//!
//! Every amplitude that appears in the verifier is an element of the ring
//! `Z[w] / sqrt(2)^k` where `w = e^{i pi/8}` is a primitive 16th root of
//! unity (`w^8 = -1`).  A value is stored as eight arbitrary-precision
//! integer coefficients `a0..a7` (the residue of the numerator modulo
//! `w^8 + 1`) together with a non-negative exponent `k`, denoting
//!
//! ```text
//! (a0 + a1 w + ... + a7 w^7) / sqrt(2)^k
//! ```
//!
//! This is closed under all gate entries we admit: Hadamard (`1/sqrt(2)`
//! factors), T (`w^2`), rotations by multiples of `pi/4` (half angles
//! `n pi/8`, i.e. powers of `w`), and the phase roots `w_N` for `N | 16`.
//! Arithmetic is exact; conversion to `f64` exists only as a test bridge.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use std::hash::{Hash, Hasher};
use thiserror::Error;

/// An exact complex number `(sum a_j w^j) / sqrt(2)^k`, `w = e^{i pi/8}`.
///
/// Canonical form: `k == 0` when all coefficients are zero; otherwise the
/// pair `(coeffs/2, k-2)` reduction has been applied to fixpoint, so while
/// `k >= 2` not all coefficients are even.  Reduction by a *single* sqrt(2)
/// factor is deliberately not part of the canonical form; equality aligns
/// both operands to the larger exponent instead (and hashing uses the fully
/// reduced minimal-exponent representative so `Eq`/`Hash` agree).
#[derive(Debug, Clone)]
pub struct AlgebraicComplex {
    coeffs: [BigInt; 8],
    sqrt2_exp: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmplitudeError {
    #[error("angle {num}*pi/{den} is not an integer multiple of pi/4")]
    UnsupportedAngle { num: i64, den: i64 },
    #[error("cannot parse amplitude literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

fn zero_coeffs() -> [BigInt; 8] {
    Default::default()
}

impl AlgebraicComplex {
    pub fn zero() -> Self {
        AlgebraicComplex { coeffs: zero_coeffs(), sqrt2_exp: 0 }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        let mut c = zero_coeffs();
        c[0] = BigInt::from(n);
        AlgebraicComplex { coeffs: c, sqrt2_exp: 0 }.canonical()
    }

    /// The imaginary unit, `i = w^4`.
    pub fn i() -> Self {
        Self::omega(4)
    }

    /// `w^n` for any integer exponent, reduced via `w^16 = 1`, `w^8 = -1`.
    pub fn omega(n: i64) -> Self {
        let r = n.rem_euclid(16) as usize;
        let (idx, sign) = if r < 8 { (r, 1) } else { (r - 8, -1) };
        let mut c = zero_coeffs();
        c[idx] = BigInt::from(sign);
        AlgebraicComplex { coeffs: c, sqrt2_exp: 0 }
    }

    /// `1 / sqrt(2)`.
    pub fn inv_sqrt2() -> Self {
        let mut c = zero_coeffs();
        c[0] = BigInt::from(1);
        AlgebraicComplex { coeffs: c, sqrt2_exp: 1 }
    }

    /// `1 / 2`, used for the exact cos/sin entries of R_X.
    pub fn half() -> Self {
        let mut c = zero_coeffs();
        c[0] = BigInt::from(1);
        AlgebraicComplex { coeffs: c, sqrt2_exp: 2 }
    }

    /// Raw constructor; canonicalizes.
    pub fn from_parts(coeffs: [i64; 8], sqrt2_exp: u32) -> Self {
        let coeffs = coeffs.map(BigInt::from);
        AlgebraicComplex { coeffs, sqrt2_exp }.canonical()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn sqrt2_exp(&self) -> u32 {
        self.sqrt2_exp
    }

    pub fn coeffs(&self) -> &[BigInt; 8] {
        &self.coeffs
    }

    fn canonical(mut self) -> Self {
        if self.is_zero() {
            self.sqrt2_exp = 0;
            return self;
        }
        let two = BigInt::from(2);
        while self.sqrt2_exp >= 2 && self.coeffs.iter().all(|c| (c % &two).is_zero()) {
            for c in &mut self.coeffs {
                *c /= &two;
            }
            self.sqrt2_exp -= 2;
        }
        self
    }

    /// Numerator multiplied by `sqrt(2) = w^2 - w^6` (exponent untouched).
    fn numerator_times_sqrt2(coeffs: &[BigInt; 8]) -> [BigInt; 8] {
        // (sum a_j w^j)(w^2 - w^6) with w^8 = -1.
        let mut out = zero_coeffs();
        for (j, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (shift, sgn) in [(2usize, 1), (6usize, -1)] {
                let pos = j + shift;
                let (idx, sign) = if pos < 8 { (pos, sgn) } else { (pos - 8, -sgn) };
                if sign > 0 {
                    out[idx] += a;
                } else {
                    out[idx] -= a;
                }
            }
        }
        out
    }

    /// Both operands rewritten over the common exponent `max(k1, k2)`.
    fn aligned(&self, other: &Self) -> ([BigInt; 8], [BigInt; 8], u32) {
        let k = self.sqrt2_exp.max(other.sqrt2_exp);
        let lift = |v: &Self| {
            let mut c = v.coeffs.clone();
            for _ in v.sqrt2_exp..k {
                c = Self::numerator_times_sqrt2(&c);
            }
            c
        };
        (lift(self), lift(other), k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, k) = self.aligned(other);
        let mut c = zero_coeffs();
        for j in 0..8 {
            c[j] = &a[j] + &b[j];
        }
        AlgebraicComplex { coeffs: c, sqrt2_exp: k }.canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut c = self.coeffs.clone();
        for x in &mut c {
            *x = -&*x;
        }
        AlgebraicComplex { coeffs: c, sqrt2_exp: self.sqrt2_exp }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = zero_coeffs();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let pos = i + j;
                if pos < 8 {
                    c[pos] += prod;
                } else {
                    c[pos - 8] -= prod;
                }
            }
        }
        AlgebraicComplex { coeffs: c, sqrt2_exp: self.sqrt2_exp + other.sqrt2_exp }.canonical()
    }

    /// Complex conjugate: `w^j -> w^{-j} = -w^{8-j}` for `j >= 1`.
    pub fn conjugate(&self) -> Self {
        let mut c = zero_coeffs();
        c[0] = self.coeffs[0].clone();
        for j in 1..8 {
            c[8 - j] = -&self.coeffs[j];
        }
        AlgebraicComplex { coeffs: c, sqrt2_exp: self.sqrt2_exp }.canonical()
    }

    /// `|x|^2 = x * conj(x)` (a non-negative real value of the same ring).
    pub fn norm_sqr(&self) -> Self {
        self.mul(&self.conjugate())
    }

    /// Double-precision evaluation `(re, im)`.
    pub fn to_float(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a.to_f64().unwrap_or(f64::NAN);
            let theta = std::f64::consts::PI * (j as f64) / 8.0;
            re += a * theta.cos();
            im += a * theta.sin();
        }
        let scale = 2f64.powf(-(self.sqrt2_exp as f64) / 2.0);
        (re * scale, im * scale)
    }

    /// Minimal-exponent representative; the basis for `Hash`.
    fn minimal(&self) -> ([BigInt; 8], u32) {
        let mut v = self.clone().canonical();
        let two = BigInt::from(2);
        while v.sqrt2_exp > 0 {
            let lifted = Self::numerator_times_sqrt2(&v.coeffs);
            if lifted.iter().all(|c| (c % &two).is_zero()) {
                for (dst, src) in v.coeffs.iter_mut().zip(lifted) {
                    *dst = src / &two;
                }
                v.sqrt2_exp -= 1;
            } else {
                break;
            }
        }
        (v.coeffs, v.sqrt2_exp)
    }

    /// Parses the literal grammar shared with the automaton text format:
    /// `C(a0,a1,a2,a3,a4,a5,a6,a7)` with optional `/s2^k` suffix, or the
    /// sugar tokens `0`, `1`, `-1`, `i`, `-i`, `1/s2`, `-1/s2`, `w^n`.
    pub fn parse(text: &str) -> Result<Self, AmplitudeError> {
        let s = text.trim();
        let bad = |reason: &str| AmplitudeError::BadLiteral {
            literal: text.to_string(),
            reason: reason.to_string(),
        };
        match s {
            "0" => return Ok(Self::zero()),
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::from_i64(-1)),
            "i" => return Ok(Self::i()),
            "-i" => return Ok(Self::i().neg()),
            "1/s2" => return Ok(Self::inv_sqrt2()),
            "-1/s2" => return Ok(Self::inv_sqrt2().neg()),
            _ => {}
        }
        if let Some(exp) = s.strip_prefix("w^") {
            let n: i64 = exp.parse().map_err(|_| bad("bad exponent after w^"))?;
            return Ok(Self::omega(n));
        }
        let rest = s.strip_prefix("C(").ok_or_else(|| bad("unknown literal form"))?;
        let (body, suffix) = rest
            .split_once(')')
            .ok_or_else(|| bad("missing closing parenthesis"))?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(bad("expected 8 comma-separated coefficients"));
        }
        let mut coeffs = zero_coeffs();
        for (dst, p) in coeffs.iter_mut().zip(&parts) {
            *dst = p.parse().map_err(|_| bad("bad integer coefficient"))?;
        }
        let sqrt2_exp = match suffix.trim() {
            "" => 0,
            t => {
                let e = t.strip_prefix("/s2^").ok_or_else(|| bad("expected /s2^k suffix"))?;
                e.parse().map_err(|_| bad("bad exponent after /s2^"))?
            }
        };
        Ok(AlgebraicComplex { coeffs, sqrt2_exp }.canonical())
    }
}

impl PartialEq for AlgebraicComplex {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.aligned(other);
        a == b
    }
}

impl Eq for AlgebraicComplex {}

impl PartialOrd for AlgebraicComplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An arbitrary total order (on the minimal representative), consistent
/// with `Eq`; exists so amplitudes can key ordered maps.
impl Ord for AlgebraicComplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.minimal().cmp(&other.minimal())
    }
}

impl Hash for AlgebraicComplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.minimal().hash(state);
    }
}

impl fmt::Display for AlgebraicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.clone().canonical();
        if v.is_zero() {
            return write!(f, "0");
        }
        if v == Self::one() {
            return write!(f, "1");
        }
        if v == Self::from_i64(-1) {
            return write!(f, "-1");
        }
        if v == Self::i() {
            return write!(f, "i");
        }
        if v == Self::i().neg() {
            return write!(f, "-i");
        }
        if v == Self::inv_sqrt2() {
            return write!(f, "1/s2");
        }
        if v == Self::inv_sqrt2().neg() {
            return write!(f, "-1/s2");
        }
        for n in 1..16 {
            if v == Self::omega(n) {
                return write!(f, "w^{n}");
            }
        }
        write!(f, "C(")?;
        for (j, c) in v.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")?;
        if v.sqrt2_exp > 0 {
            write!(f, "/s2^{}", v.sqrt2_exp)?;
        }
        Ok(())
    }
}

/// Row-major exact 2x2 matrix `(u1 u2; u3 u4)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2 {
    pub u1: AlgebraicComplex,
    pub u2: AlgebraicComplex,
    pub u3: AlgebraicComplex,
    pub u4: AlgebraicComplex,
}

impl Mat2 {
    pub fn new(
        u1: AlgebraicComplex,
        u2: AlgebraicComplex,
        u3: AlgebraicComplex,
        u4: AlgebraicComplex,
    ) -> Self {
        Mat2 { u1, u2, u3, u4 }
    }

    pub fn identity() -> Self {
        let o = AlgebraicComplex::one;
        let z = AlgebraicComplex::zero;
        Mat2::new(o(), z(), z(), o())
    }

    pub fn diag(r0: AlgebraicComplex, r1: AlgebraicComplex) -> Self {
        let z = AlgebraicComplex::zero;
        Mat2::new(r0, z(), z(), r1)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Mat2::new(
            self.u1.mul(&other.u1).add(&self.u2.mul(&other.u3)),
            self.u1.mul(&other.u2).add(&self.u2.mul(&other.u4)),
            self.u3.mul(&other.u1).add(&self.u4.mul(&other.u3)),
            self.u3.mul(&other.u2).add(&self.u4.mul(&other.u4)),
        )
    }

    /// Conjugate transpose `(conj u1, conj u3; conj u2, conj u4)`.
    pub fn dagger(&self) -> Self {
        Mat2::new(
            self.u1.conjugate(),
            self.u3.conjugate(),
            self.u2.conjugate(),
            self.u4.conjugate(),
        )
    }

    pub fn scale(&self, c: &AlgebraicComplex) -> Self {
        Mat2::new(c.mul(&self.u1), c.mul(&self.u2), c.mul(&self.u3), c.mul(&self.u4))
    }

    pub fn is_unitary(&self) -> bool {
        self.matmul(&self.dagger()) == Mat2::identity()
    }
}

/// The named gate matrices with exact entries.
pub mod consts {
    use super::{AlgebraicComplex, Mat2};

    pub fn x() -> Mat2 {
        let o = AlgebraicComplex::one;
        let z = AlgebraicComplex::zero;
        Mat2::new(z(), o(), o(), z())
    }

    /// `Y = X * diag(i, -i)`.
    pub fn y() -> Mat2 {
        x().matmul(&Mat2::diag(AlgebraicComplex::i(), AlgebraicComplex::i().neg()))
    }

    pub fn z() -> Mat2 {
        Mat2::diag(AlgebraicComplex::one(), AlgebraicComplex::from_i64(-1))
    }

    pub fn h() -> Mat2 {
        let r = AlgebraicComplex::inv_sqrt2();
        Mat2::new(r.clone(), r.clone(), r.clone(), r.neg())
    }

    pub fn s() -> Mat2 {
        Mat2::diag(AlgebraicComplex::one(), AlgebraicComplex::i())
    }

    pub fn sdg() -> Mat2 {
        s().dagger()
    }

    /// `T = diag(1, w^2)`, `w^2 = e^{i pi/4}`.
    pub fn t() -> Mat2 {
        Mat2::diag(AlgebraicComplex::one(), AlgebraicComplex::omega(2))
    }

    pub fn tdg() -> Mat2 {
        t().dagger()
    }

    /// `R_Z(n pi/4) = diag(w^-n, w^n)` (half-angle `n pi/8`).
    pub fn rz(n: i64) -> Mat2 {
        Mat2::diag(AlgebraicComplex::omega(-n), AlgebraicComplex::omega(n))
    }

    /// `R_X(n pi/4)`: `cos(n pi/8)` on the diagonal, `-i sin(n pi/8)` off it,
    /// both exact via `cos = (w^n + w^-n)/2` and `-i sin = (w^-n - w^n)/2`.
    pub fn rx(n: i64) -> Mat2 {
        let half = AlgebraicComplex::half();
        let wp = AlgebraicComplex::omega(n);
        let wm = AlgebraicComplex::omega(-n);
        let c = wp.add(&wm).mul(&half);
        let s = wm.sub(&wp).mul(&half);
        Mat2::new(c.clone(), s.clone(), s, c)
    }

    /// Global phase `Ph(n pi/4) = w^{2n} I`.
    pub fn ph(n: i64) -> Mat2 {
        Mat2::identity().scale(&AlgebraicComplex::omega(2 * n))
    }

    /// Named lookup used by the table-driven tests and the CLI.
    pub fn by_name(name: &str) -> Option<Mat2> {
        Some(match name {
            "X" => x(),
            "Y" => y(),
            "Z" => z(),
            "H" => h(),
            "S" => s(),
            "Sdg" => sdg(),
            "T" => t(),
            "Tdg" => tdg(),
            _ => return None,
        })
    }

    pub const NAMES: [&str; 8] = ["X", "Y", "Z", "H", "S", "Sdg", "T", "Tdg"];
}

/// Converts an angle `num/den * pi` to quarter-turn steps `n` (angle `n pi/4`).
pub fn angle_steps(num: i64, den: i64) -> Result<i64, AmplitudeError> {
    if den == 0 {
        return Err(AmplitudeError::UnsupportedAngle { num, den });
    }
    let four_num = num.checked_mul(4).ok_or(AmplitudeError::UnsupportedAngle { num, den })?;
    if four_num % den != 0 {
        return Err(AmplitudeError::UnsupportedAngle { num, den });
    }
    Ok(four_num / den)
}

/// Sanity helper for tests: |re| and |im| of the difference of two float pairs.
pub fn float_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

pub use num_bigint::BigInt as Coefficient;

impl Default for AlgebraicComplex {
    fn default() -> Self {
        Self::zero()
    }
}
