//! Triangular fuzzy numbers.
//!
//! A [`Tfn`] `(a1, a2, a3)` holds the smallest possible, most promising and
//! largest possible value. Sum, product and crisp scaling are componentwise;
//! subtraction and division pair the lower bound of one operand with the upper
//! bound of the other, so `x - x` widens instead of vanishing.
//!
//! Multiplication, division and exponentiation are restricted to nonnegative
//! operands. Every value the ranking methods feed them (performance values,
//! normalized scores and weights in `[0, 1]`) lives there.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::ranking::scores_tie;

/// Absolute tolerance for ordering checks on fuzzy numbers.
pub const TFN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tfn {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a1, self.a2, self.a3)
    }
}

impl Tfn {
    pub const ZERO: Tfn = Tfn::crisp(0.0);
    pub const ONE: Tfn = Tfn::crisp(1.0);

    /// Builds a fuzzy number, rejecting non-finite or unordered triples.
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let t = Tfn { a1, a2, a3 };
        if !(a1.is_finite() && a2.is_finite() && a3.is_finite()) {
            return Err(DssError::FuzzyDomain {
                op: "new",
                reason: format!("non-finite component in {t}"),
            });
        }
        if !t.is_ordered() {
            return Err(DssError::FuzzyDomain {
                op: "new",
                reason: format!("components must satisfy a1 <= a2 <= a3, got {t}"),
            });
        }
        Ok(t)
    }

    /// A degenerate fuzzy number representing the crisp value `c`.
    pub const fn crisp(c: f64) -> Self {
        Tfn { a1: c, a2: c, a3: c }
    }

    pub fn is_ordered(&self) -> bool {
        self.a1 <= self.a2 + TFN_TOLERANCE && self.a2 <= self.a3 + TFN_TOLERANCE
    }

    pub fn is_crisp(&self) -> bool {
        self.a1 == self.a2 && self.a2 == self.a3
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a1 >= 0.0
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    #[inline]
    fn checked(self) -> Self {
        debug_assert!(self.is_ordered(), "fuzzy ordering invariant violated: {self}");
        self
    }

    pub fn add(self, other: Tfn) -> Tfn {
        Tfn {
            a1: self.a1 + other.a1,
            a2: self.a2 + other.a2,
            a3: self.a3 + other.a3,
        }
        .checked()
    }

    /// Widening subtraction `(a1 - b3, a2 - b2, a3 - b1)`.
    pub fn sub(self, other: Tfn) -> Tfn {
        Tfn {
            a1: self.a1 - other.a3,
            a2: self.a2 - other.a2,
            a3: self.a3 - other.a1,
        }
        .checked()
    }

    pub fn mul(self, other: Tfn) -> Result<Tfn> {
        if !self.is_nonnegative() || !other.is_nonnegative() {
            return Err(DssError::FuzzyDomain {
                op: "mul",
                reason: format!("operands must be nonnegative, got {self} and {other}"),
            });
        }
        Ok(Tfn {
            a1: self.a1 * other.a1,
            a2: self.a2 * other.a2,
            a3: self.a3 * other.a3,
        }
        .checked())
    }

    /// Division `(a1 / b3, a2 / b2, a3 / b1)`; the divisor must be strictly positive.
    pub fn div(self, other: Tfn) -> Result<Tfn> {
        if other.a1 <= 0.0 {
            return Err(DssError::FuzzyDomain {
                op: "div",
                reason: format!("divisor must be strictly positive, got {other}"),
            });
        }
        if !self.is_nonnegative() {
            return Err(DssError::FuzzyDomain {
                op: "div",
                reason: format!("dividend must be nonnegative, got {self}"),
            });
        }
        Ok(Tfn {
            a1: self.a1 / other.a3,
            a2: self.a2 / other.a2,
            a3: self.a3 / other.a1,
        }
        .checked())
    }

    pub fn scale(self, c: f64) -> Result<Tfn> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(DssError::FuzzyDomain {
                op: "scale",
                reason: format!("scale factor must be finite and nonnegative, got {c}"),
            });
        }
        Ok(Tfn {
            a1: c * self.a1,
            a2: c * self.a2,
            a3: c * self.a3,
        }
        .checked())
    }

    /// Exponentiation `(v1^w3, v2^w2, v3^w1)` for a base in `(0, 1]` and an
    /// exponent in `[0, 1]`, componentwise.
    pub fn pow(self, exponent: Tfn) -> Result<Tfn> {
        let base_ok = self.components().iter().all(|&c| c > 0.0 && c <= 1.0);
        let exp_ok = exponent.components().iter().all(|&c| (0.0..=1.0).contains(&c));
        if !base_ok || !exp_ok {
            return Err(DssError::FuzzyDomain {
                op: "pow",
                reason: format!(
                    "base must lie in (0, 1] and exponent in [0, 1], got {self} ^ {exponent}"
                ),
            });
        }
        Ok(Tfn {
            a1: self.a1.powf(exponent.a3),
            a2: self.a2.powf(exponent.a2),
            a3: self.a3.powf(exponent.a1),
        }
        .checked())
    }

    /// Vertex distance between two fuzzy numbers.
    pub fn distance(self, other: Tfn) -> f64 {
        let d1 = self.a1 - other.a1;
        let d2 = self.a2 - other.a2;
        let d3 = self.a3 - other.a3;
        ((d1 * d1 + d2 * d2 + d3 * d3) / 3.0).sqrt()
    }

    /// Componentwise maximum.
    pub fn max(self, other: Tfn) -> Tfn {
        Tfn {
            a1: self.a1.max(other.a1),
            a2: self.a2.max(other.a2),
            a3: self.a3.max(other.a3),
        }
    }

    /// Componentwise minimum.
    pub fn min(self, other: Tfn) -> Tfn {
        Tfn {
            a1: self.a1.min(other.a1),
            a2: self.a2.min(other.a2),
            a3: self.a3.min(other.a3),
        }
    }

    /// `(a1 + 2 a2 + a3) / 4`
    pub fn defuzz_weighted_mean2(&self) -> f64 {
        if self.is_crisp() {
            return self.a2;
        }
        (self.a1 + 2.0 * self.a2 + self.a3) / 4.0
    }

    /// Best nonfuzzy performance, `((a3 - a1) + (a2 - a1)) / 3 + a1`.
    pub fn defuzz_bnp(&self) -> f64 {
        if self.is_crisp() {
            return self.a2;
        }
        ((self.a3 - self.a1) + (self.a2 - self.a1)) / 3.0 + self.a1
    }

    pub fn defuzz_centroid(&self) -> f64 {
        if self.is_crisp() {
            return self.a2;
        }
        (self.a1 + self.a2 + self.a3) / 3.0
    }
}

/// Total utilities of Chen's maximizing/minimizing-set comparison.
///
/// Set bounds are the smallest `a1` and largest `a3` over the group; the
/// optimism index is the symmetric default (equal weight on the left and
/// right utilities, exponent 1).
pub fn chen_utilities(xs: &[Tfn]) -> Vec<f64> {
    if xs.is_empty() {
        return Vec::new();
    }
    let xmin = xs.iter().map(|x| x.a1).fold(f64::INFINITY, f64::min);
    let xmax = xs.iter().map(|x| x.a3).fold(f64::NEG_INFINITY, f64::max);
    let range = xmax - xmin;
    if range <= 0.0 {
        return vec![0.5; xs.len()];
    }
    xs.iter()
        .map(|x| {
            let right = (x.a3 - xmin) / (range - x.a2 + x.a3);
            let left = (xmax - x.a1) / (range + x.a2 - x.a1);
            (right + 1.0 - left) / 2.0
        })
        .collect()
}

/// Orders fuzzy numbers best first by Chen utility; utilities equal within
/// the ranking tie tolerance keep input order.
pub fn chen_compare(xs: &[Tfn]) -> Vec<usize> {
    let utilities = chen_utilities(xs);
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| utilities[j].total_cmp(&utilities[i]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if scores_tie(utilities[g[0]], utilities[i]) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
        .into_iter()
        .flat_map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect()
}
