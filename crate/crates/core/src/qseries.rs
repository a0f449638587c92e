//! Exact truncated power series in `q` with integer coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `q^0..=q^N`; every
//! operation works modulo `q^(N+1)`. Coefficients are `i128` and every
//! addition and multiplication is checked, so overflow is reported as
//! [`SeriesError::Overflow`] instead of wrapping.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Coefficient type of every series.
pub type Coeff = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("exponent {exponent} exceeds truncation order {order}")]
    ExponentOutOfRange { exponent: usize, order: usize },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(Coeff),
    #[error("coefficient overflow")]
    Overflow,
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("invalid q-Pochhammer symbol: {0}")]
    InvalidPochhammer(&'static str),
}

type Result<T> = std::result::Result<T, SeriesError>;

fn add_c(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_add(b).ok_or(SeriesError::Overflow)
}

fn mul_c(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_mul(b).ok_or(SeriesError::Overflow)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Coeff>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![0; order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1, order)
    }

    pub fn constant(c: Coeff, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^k`; `k` must not exceed `order`.
    pub fn monomial(c: Coeff, k: usize, order: usize) -> Result<Self> {
        if k > order {
            return Err(SeriesError::ExponentOutOfRange { exponent: k, order });
        }
        let mut s = Self::zero(order);
        s.coeffs[k] = c;
        Ok(s)
    }

    /// Takes the coefficients of `q^0..=q^N`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coeff> {
        self.coeffs
    }

    /// Coefficient of `q^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<Coeff> {
        self.coeffs.get(k).copied()
    }

    pub fn set_coeff(&mut self, k: usize, c: Coeff) -> Result<()> {
        let order = self.order();
        let slot = self
            .coeffs
            .get_mut(k)
            .ok_or(SeriesError::ExponentOutOfRange { exponent: k, order })?;
        *slot = c;
        Ok(())
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| add_c(a, b))
            .collect::<Result<_>>()?;
        Ok(Series { coeffs })
    }

    pub fn checked_neg(&self) -> Result<Series> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_neg().ok_or(SeriesError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Series { coeffs })
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn scale(&self, c: Coeff) -> Result<Series> {
        let coeffs = self.coeffs.iter().map(|&a| mul_c(a, c)).collect::<Result<_>>()?;
        Ok(Series { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![0 as Coeff; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                if b != 0 {
                    out[i + j] = add_c(out[i + j], mul_c(a, b)?)?;
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplicative inverse; the constant term must be `+1` or `-1`.
    ///
    /// With `b_0 = 1 / a_0`, each later coefficient is
    /// `b_k = -(1 / a_0) * sum_{j=1..=k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Series> {
        let a0 = self.coeffs[0];
        if a0 != 1 && a0 != -1 {
            return Err(SeriesError::NonUnitConstant(a0));
        }
        let n = self.order();
        let mut b = vec![0 as Coeff; n + 1];
        // 1 / a0 == a0 for a unit
        b[0] = a0;
        for k in 1..=n {
            let mut acc: Coeff = 0;
            for j in 1..=k {
                let aj = self.coeffs[j];
                if aj != 0 {
                    acc = add_c(acc, mul_c(aj, b[k - j])?)?;
                }
            }
            b[k] = mul_c(acc, -a0)?;
        }
        Ok(Series { coeffs: b })
    }

    /// Multiplies by `q^k`, dropping terms beyond the order.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = vec![0 as Coeff; n + 1];
        if k <= n {
            out[k..].copy_from_slice(&self.coeffs[..=n - k]);
        }
        Series { coeffs: out }
    }

    /// Adds `c * q^k`; a term beyond the order vanishes under truncation.
    pub fn add_term(&self, c: Coeff, k: usize) -> Result<Series> {
        let mut out = self.clone();
        if let Some(slot) = out.coeffs.get_mut(k) {
            *slot = add_c(*slot, c)?;
        }
        Ok(out)
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, order: usize) -> Series {
        let keep = (order + 1).min(self.coeffs.len());
        let mut coeffs = self.coeffs[..keep].to_vec();
        coeffs.resize(order + 1, 0);
        Series { coeffs }
    }

    /// In-place product with the binomial `1 + c q^e`, in `O(N)`.
    fn mul_binomial(&mut self, c: Coeff, e: usize) -> Result<()> {
        let n = self.order();
        if e > n || c == 0 {
            return Ok(());
        }
        for k in (e..=n).rev() {
            let lower = self.coeffs[k - e];
            if lower != 0 {
                self.coeffs[k] = add_c(self.coeffs[k], mul_c(c, lower)?)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Series {
    /// Coefficients 0..=N separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Sign of the base `a = ±q^offset` in `(a; q^step)_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> Coeff {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u32),
    Infinite,
}

/// The product `prod_{j=0}^{len-1} (1 - sign * q^(offset + j*step))`.
///
/// `(-q^2; q^2)_n` is `PochhammerSpec::new(Sign::Minus, 2, 2, Length::Finite(n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochhammerSpec {
    sign: Sign,
    offset: u32,
    step: u32,
    length: Length,
}

impl PochhammerSpec {
    pub fn new(sign: Sign, offset: u32, step: u32, length: Length) -> Result<Self> {
        if offset == 0 {
            return Err(SeriesError::InvalidPochhammer("offset must be at least 1"));
        }
        if step == 0 {
            return Err(SeriesError::InvalidPochhammer("step must be at least 1"));
        }
        Ok(Self { sign, offset, step, length })
    }

    pub fn finite(sign: Sign, offset: u32, step: u32, len: u32) -> Self {
        Self::new(sign, offset, step, Length::Finite(len)).expect("offset and step are positive")
    }

    pub fn infinite(sign: Sign, offset: u32, step: u32) -> Self {
        Self::new(sign, offset, step, Length::Infinite).expect("offset and step are positive")
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn length(&self) -> Length {
        self.length
    }
}

/// Expands the q-Pochhammer product modulo `q^(order+1)`. Factors whose
/// exponent exceeds `order` are 1 and are skipped.
pub fn pochhammer(spec: &PochhammerSpec, order: usize) -> Result<Series> {
    let mut out = Series::one(order);
    let coeff = -spec.sign.value();
    let (offset, step) = (spec.offset as usize, spec.step as usize);
    let mut j = 0usize;
    loop {
        if let Length::Finite(len) = spec.length {
            if j >= len as usize {
                break;
            }
        }
        let e = offset + j * step;
        if e > order {
            break;
        }
        out.mul_binomial(coeff, e)?;
        j += 1;
    }
    Ok(out)
}

/// `sum ped(n) q^n` from the product `(-q^2;q^2)_inf / (q;q^2)_inf`.
pub fn gf_ped(order: usize) -> Result<Series> {
    let num = pochhammer(&PochhammerSpec::infinite(Sign::Minus, 2, 2), order)?;
    let den = pochhammer(&PochhammerSpec::infinite(Sign::Plus, 1, 2), order)?;
    num.checked_mul(&den.invert()?)
}

/// `(q^4;q^4)_inf / (q;q)_inf`, the 4-regular partition generating function.
pub fn gf_4regular(order: usize) -> Result<Series> {
    let num = pochhammer(&PochhammerSpec::infinite(Sign::Plus, 4, 4), order)?;
    let den = pochhammer(&PochhammerSpec::infinite(Sign::Plus, 1, 1), order)?;
    num.checked_mul(&den.invert()?)
}

/// The three sums `sum_n (-q^2;q^2)_n q^d(n) / (q;q^2)_m(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeSum {
    /// `d = 2n+1`, `m = n+1`.
    De1,
    /// `d = 4n+2`, `m = n+1`.
    De2,
    /// `d = 2n+1`, `m = n`.
    De3,
}

impl DeSum {
    pub const ALL: [DeSum; 3] = [DeSum::De1, DeSum::De2, DeSum::De3];

    /// Exponent of the monomial in summand `n`, which is also the summand's
    /// lowest degree because both Pochhammer factors start with 1.
    pub fn min_degree(self, n: usize) -> usize {
        match self {
            DeSum::De1 | DeSum::De3 => 2 * n + 1,
            DeSum::De2 => 4 * n + 2,
        }
    }

    fn denominator_len(self, n: usize) -> usize {
        match self {
            DeSum::De1 | DeSum::De2 => n + 1,
            DeSum::De3 => n,
        }
    }

    /// Number of summands that can contribute below `q^(order+1)`.
    pub fn term_count(self, order: usize) -> usize {
        (0..).take_while(|&n| self.min_degree(n) <= order).count()
    }

    /// Summand `n`, truncated at `order`.
    pub fn summand(self, n: usize, order: usize) -> Result<Series> {
        let num = pochhammer(&PochhammerSpec::finite(Sign::Minus, 2, 2, n as u32), order)?;
        let den = pochhammer(&PochhammerSpec::finite(Sign::Plus, 1, 2, self.denominator_len(n) as u32), order)?;
        Ok(num.checked_mul(&den.invert()?)?.shift(self.min_degree(n)))
    }

    /// Sum of summands `0..terms`, truncated at `order`.
    pub fn partial_sum(self, terms: usize, order: usize) -> Result<Series> {
        (0..terms).try_fold(Series::zero(order), |acc, n| acc.checked_add(&self.summand(n, order)?))
    }

    /// The full sum modulo `q^(order+1)`.
    pub fn series(self, order: usize) -> Result<Series> {
        self.partial_sum(self.term_count(order), order)
    }
}

pub fn gf_de1(order: usize) -> Result<Series> {
    DeSum::De1.series(order)
}

pub fn gf_de2(order: usize) -> Result<Series> {
    DeSum::De2.series(order)
}

pub fn gf_de3(order: usize) -> Result<Series> {
    DeSum::De3.series(order)
}

/// The three theorem identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    T1,
    T2,
    T3,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::T1, Theorem::T2, Theorem::T3];

    pub fn sum(self) -> DeSum {
        match self {
            Theorem::T1 => DeSum::De1,
            Theorem::T2 => DeSum::De2,
            Theorem::T3 => DeSum::De3,
        }
    }

    /// Left side from an already built sum: `(1+q) S` for T1, `(1+q^3) S`
    /// otherwise.
    pub fn lhs_from(self, sum: &Series) -> Result<Series> {
        let k = match self {
            Theorem::T1 => 1,
            Theorem::T2 | Theorem::T3 => 3,
        };
        let factor = Series::one(sum.order()).add_term(1, k)?;
        factor.checked_mul(sum)
    }

    pub fn lhs(self, order: usize) -> Result<Series> {
        self.lhs_from(&self.sum().series(order)?)
    }

    /// Right side, built from its own product form. It shares no
    /// intermediate series with the left side.
    pub fn rhs(self, order: usize) -> Result<Series> {
        match self {
            Theorem::T1 => gf_4regular(order)?.add_term(-1, 0),
            Theorem::T2 => {
                let num = pochhammer(&PochhammerSpec::infinite(Sign::Plus, 4, 4), order)?;
                let den = pochhammer(&PochhammerSpec::infinite(Sign::Plus, 2, 1), order)?;
                num.checked_mul(&den.invert()?)?.add_term(-1, 0)
            }
            Theorem::T3 => gf_4regular(order)?.shift(2).add_term(-1, 2)?.add_term(1, 1),
        }
    }
}

/// Both sides of a theorem at truncation `order`.
pub fn theorem_sides(which: Theorem, order: usize) -> Result<(Series, Series)> {
    Ok((which.lhs(order)?, which.rhs(order)?))
}

/// Every series that can be printed by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesExpr {
    Ped,
    FourRegular,
    De1,
    De2,
    De3,
    Lhs(Theorem),
    Rhs(Theorem),
}

impl SeriesExpr {
    pub const ALL: [SeriesExpr; 11] = [
        SeriesExpr::Ped,
        SeriesExpr::FourRegular,
        SeriesExpr::De1,
        SeriesExpr::De2,
        SeriesExpr::De3,
        SeriesExpr::Lhs(Theorem::T1),
        SeriesExpr::Rhs(Theorem::T1),
        SeriesExpr::Lhs(Theorem::T2),
        SeriesExpr::Rhs(Theorem::T2),
        SeriesExpr::Lhs(Theorem::T3),
        SeriesExpr::Rhs(Theorem::T3),
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesExpr::Ped => "ped",
            SeriesExpr::FourRegular => "4regular",
            SeriesExpr::De1 => "de1",
            SeriesExpr::De2 => "de2",
            SeriesExpr::De3 => "de3",
            SeriesExpr::Lhs(Theorem::T1) => "t1-lhs",
            SeriesExpr::Rhs(Theorem::T1) => "t1-rhs",
            SeriesExpr::Lhs(Theorem::T2) => "t2-lhs",
            SeriesExpr::Rhs(Theorem::T2) => "t2-rhs",
            SeriesExpr::Lhs(Theorem::T3) => "t3-lhs",
            SeriesExpr::Rhs(Theorem::T3) => "t3-rhs",
        }
    }

    pub fn build(self, order: usize) -> Result<Series> {
        match self {
            SeriesExpr::Ped => gf_ped(order),
            SeriesExpr::FourRegular => gf_4regular(order),
            SeriesExpr::De1 => gf_de1(order),
            SeriesExpr::De2 => gf_de2(order),
            SeriesExpr::De3 => gf_de3(order),
            SeriesExpr::Lhs(t) => t.lhs(order),
            SeriesExpr::Rhs(t) => t.rhs(order),
        }
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesExpr {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        SeriesExpr::ALL
            .into_iter()
            .find(|e| e.name() == lower)
            .ok_or_else(|| format!("unknown series expression {s:?}"))
    }
}
