//! Exact upper bounds on the quotient complexity of atoms.
//!
//! For a language with `n` quotients, an atom with `r` complemented
//! quotients has at most
//!
//! ```text
//! f(n, r) = 1 + sum_{k=1..r} sum_{h=k+1..k+n-r} C(n, h) * C(h, k)
//! ```
//!
//! quotients when `1 <= r <= n-1`, and at most `2^n - 1` when `r` is `0`
//! or `n`. All values are exact big integers.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `upper` choose `lower`, zero when `lower` is negative or exceeds `upper`.
///
/// Argument order is (upper, lower); a textbook `C_j^i` with the upper
/// index as superscript is `binom(i, j)`.
pub fn binom(upper: i64, lower: i64) -> Result<BigCount> {
    if upper < 0 {
        return Err(Error::InvalidArgument(format!(
            "binomial upper index {upper} is negative"
        )));
    }
    if lower < 0 || lower > upper {
        return Ok(BigUint::zero());
    }
    let lower = lower.min(upper - lower) as u64;
    let upper = upper as u64;
    let mut acc = BigUint::one();
    for i in 0..lower {
        acc *= upper - i;
        acc /= i + 1;
    }
    Ok(acc)
}

fn c(upper: u32, lower: u32) -> BigCount {
    binom(upper as i64, lower as i64).expect("nonnegative upper index")
}

fn pow2_minus_one(n: u32) -> BigCount {
    (BigUint::one() << n as usize) - 1u32
}

/// The bound on the quotient complexity of an atom with `r` complemented
/// quotients of a language with `n` quotients.
pub fn atom_bound(n: u32, r: u32) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if r > n {
        return Err(Error::InvalidArgument(format!("r = {r} exceeds n = {n}")));
    }
    if r == 0 || r == n {
        return Ok(pow2_minus_one(n));
    }
    let mut total = BigUint::one();
    for k in 1..=r {
        for h in (k + 1)..=(k + n - r) {
            total += c(n, h) * c(h, k);
        }
    }
    Ok(total)
}

/// Closed forms of the bound for `r` in `{1, 2, 3}`.
pub fn atom_bound_closed(n: u32, r: u32) -> Result<BigCount> {
    if !(1..=3).contains(&r) {
        return Err(Error::InvalidArgument(format!(
            "closed form only for r in 1..=3, got {r}"
        )));
    }
    if n < 2 || r > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "closed form needs 2 <= n and r <= n-1, got n = {n}, r = {r}"
        )));
    }
    let nn = BigInt::from(n);
    let pow = |e: u32| BigInt::one() << e as usize;
    let head = &nn * pow(n - 1);
    let value: BigInt = match r {
        1 => head - &nn + 1,
        2 => head - 2 * &nn + (&nn * (&nn - 1) / 2) * (pow(n - 2) - 1) + 1,
        _ => head - (&nn * &nn + &nn) + (&nn * (&nn - 1) * (&nn + 4) / 6) * (pow(n - 3) - 1) + 1,
    };
    value
        .to_biguint()
        .ok_or_else(|| Error::InvalidArgument("closed form evaluated negative".into()))
}

/// The largest bound over all `r` for a given `n`, with the `r` attaining it.
pub fn max_bound(n: u32) -> Result<(u32, BigCount)> {
    match n {
        0 => Err(Error::InvalidArgument("n must be at least 1".into())),
        1 => Ok((0, BigUint::one())),
        _ => Ok((n / 2, atom_bound(n, n / 2)?)),
    }
}

/// Whether `f(n, r) = f(n, n - r)` for every `1 <= r <= n-1`.
pub fn symmetry_check(n: u32) -> bool {
    (1..n).all(|r| atom_bound(n, r).ok() == atom_bound(n, n - r).ok())
}

/// An exact nonnegative rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub numer: BigUint,
    pub denom: BigUint,
}

impl Ratio {
    pub fn new(numer: BigUint, denom: BigUint) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Ratio { numer, denom }
    }

    /// Decimal expansion rounded half-up to `places` digits after the point.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigUint::from(10u32).pow(places as u32);
        let (q, rem) = (&self.numer * &scale).div_rem(&self.denom);
        let scaled = if rem * 2u32 >= self.denom { q + 1u32 } else { q };
        let (int, frac) = scaled.div_rem(&scale);
        let mut out = int.to_string();
        if places > 0 {
            let digits = frac.to_string();
            let _ = write!(out, ".{}{}", "0".repeat(places - digits.len()), digits);
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        // Shift both sides down so the conversion stays in range.
        let excess = self.numer.bits().max(self.denom.bits()).saturating_sub(1000) as usize;
        let n = (&self.numer >> excess).to_f64().unwrap_or(f64::INFINITY);
        let d = (&self.denom >> excess).to_f64().unwrap_or(f64::INFINITY);
        n / d
    }
}

/// Ratio of the maximal bound at `n` to the maximal bound at `n - 1`.
pub fn growth_ratio(n: u32) -> Result<Ratio> {
    if n < 2 {
        return Err(Error::InvalidArgument("growth ratio needs n >= 2".into()));
    }
    Ok(Ratio::new(max_bound(n)?.1, max_bound(n - 1)?.1))
}

/// The table of bounds for `n = 1..=max_n`, rows `r = 0..=max_r`.
#[derive(Clone, Debug)]
pub struct BoundTable {
    pub max_n: u32,
    pub max_r: u32,
    /// `cells[r][n-1]`, `None` where `r > n`.
    pub cells: Vec<Vec<Option<BigCount>>>,
    /// Maximal bound for each `n`, over all `r`.
    pub max: Vec<BigCount>,
    /// Growth ratio for each `n >= 2`.
    pub ratio: Vec<Option<Ratio>>,
}

impl BoundTable {
    pub fn new(max_n: u32, max_r: u32) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::InvalidArgument("table needs max_n >= 1".into()));
        }
        let mut cells = Vec::new();
        for r in 0..=max_r {
            let row = (1..=max_n)
                .map(|n| if r <= n { atom_bound(n, r).map(Some) } else { Ok(None) })
                .collect::<Result<Vec<_>>>()?;
            cells.push(row);
        }
        let max = (1..=max_n)
            .map(|n| {
                (0..=n)
                    .map(|r| atom_bound(n, r))
                    .try_fold(BigUint::zero(), |m, v| v.map(|v| m.max(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        let ratio = (1..=max_n)
            .map(|n| if n >= 2 { growth_ratio(n).map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundTable {
            max_n,
            max_r,
            cells,
            max,
            ratio,
        })
    }

    fn rows(&self, thousands: bool) -> Vec<Vec<String>> {
        let fmt = |v: &BigUint| if thousands { with_separators(v) } else { v.to_string() };
        let mut rows = Vec::new();
        let mut header = vec!["n".to_string()];
        header.extend((1..=self.max_n).map(|n| n.to_string()));
        rows.push(header);
        for (r, row) in self.cells.iter().enumerate() {
            let mut line = vec![format!("r={r}")];
            for (i, cell) in row.iter().enumerate() {
                line.push(match cell {
                    None => "-".to_string(),
                    Some(v) if *v == self.max[i] => format!("{}*", fmt(v)),
                    Some(v) => fmt(v),
                });
            }
            rows.push(line);
        }
        let mut max_line = vec!["max".to_string()];
        max_line.extend(self.max.iter().map(fmt));
        rows.push(max_line);
        let mut ratio_line = vec!["ratio".to_string()];
        ratio_line.extend(self.ratio.iter().map(|r| match r {
            Some(r) => r.to_decimal(2),
            None => "-".to_string(),
        }));
        rows.push(ratio_line);
        rows
    }

    /// Right-aligned text with thousands separators; maxima carry a `*`.
    pub fn to_text(&self) -> String {
        let rows = self.rows(true);
        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, &w))| {
                    if c == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows(false) {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Decimal rendering with comma thousands separators, e.g. `48,733`.
pub fn with_separators(v: &BigUint) -> String {
    let digits = v.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Factorial-based binomial, independent of the multiplicative loop.
    fn binom_oracle(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2).unwrap(), big(6));
        assert_eq!(binom(7, 0).unwrap(), big(1));
        assert_eq!(binom(3, 5).unwrap(), big(0));
        assert_eq!(binom(3, -1).unwrap(), big(0));
        assert!(binom(-1, 0).is_err());
        for n in 0..30 {
            for k in 0..=n {
                assert_eq!(binom(n as i64, k as i64).unwrap(), binom_oracle(n, k));
            }
        }
    }

    #[test]
    fn table_values() {
        assert_eq!(atom_bound(3, 1).unwrap(), big(10));
        assert_eq!(atom_bound(4, 2).unwrap(), big(43));
        assert_eq!(atom_bound(5, 2).unwrap(), big(141));
        assert_eq!(atom_bound(8, 4).unwrap(), big(5083));
        assert_eq!(atom_bound(10, 5).unwrap(), big(48733));
        assert_eq!(atom_bound(10, 0).unwrap(), big(1023));
        assert_eq!(atom_bound(1, 0).unwrap(), big(1));
        assert_eq!(atom_bound(1, 1).unwrap(), big(1));
    }

    #[test]
    fn bound_argument_checks() {
        assert!(atom_bound(0, 0).is_err());
        assert!(atom_bound(3, 4).is_err());
        assert!(atom_bound_closed(3, 4).is_err());
        assert!(atom_bound_closed(3, 3).is_err());
        assert!(atom_bound_closed(1, 1).is_err());
    }

    #[test]
    fn closed_forms_spot() {
        assert_eq!(atom_bound_closed(3, 1).unwrap(), big(10));
        assert_eq!(atom_bound_closed(4, 2).unwrap(), big(43));
        assert_eq!(atom_bound_closed(5, 3).unwrap(), big(141));
    }

    #[test]
    fn maxima() {
        assert_eq!(max_bound(1).unwrap(), (0, big(1)));
        assert_eq!(max_bound(7).unwrap(), (3, big(1548)));
        assert_eq!(max_bound(9).unwrap(), (4, big(15361)));
    }

    #[test]
    fn ratio_rendering() {
        assert_eq!(growth_ratio(2).unwrap().to_decimal(6), "3.000000");
        assert_eq!(growth_ratio(4).unwrap().to_decimal(2), "4.30");
        assert_eq!(growth_ratio(5).unwrap().to_decimal(2), "3.28");
        assert_eq!(Ratio::new(big(2), big(3)).to_decimal(3), "0.667");
        assert_eq!(Ratio::new(big(1), big(200)).to_decimal(2), "0.01");
        assert_eq!(Ratio::new(big(7), big(1)).to_decimal(0), "7");
    }

    #[test]
    fn separators() {
        assert_eq!(with_separators(&big(1548)), "1,548");
        assert_eq!(with_separators(&big(999)), "999");
        assert_eq!(with_separators(&big(1_000_000)), "1,000,000");
    }

    #[test]
    fn table_marks_column_maxima() {
        let t = BoundTable::new(4, 2).unwrap();
        let csv = t.to_csv();
        assert!(csv.contains("r=2,-,3*,10*,43*"), "{csv}");
        assert!(csv.contains("r=0,1*,3*,7,15"), "{csv}");
        assert!(csv.ends_with("ratio,-,3.00,3.33,4.30\n"), "{csv}");
    }
}
