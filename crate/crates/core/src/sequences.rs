//! Row sequences of the `{4,q}` triangle in closed form and by recurrence.
//!
//! * `s_n`: number of vertices in row `n` ([`row_count`]).
//! * `ŝ_n`: sum of the values in row `n` ([`row_sum`]).
//! * `s̃_n`: alternating sum of row `n`, first element positive
//!   ([`alt_sum_closed`], [`alt_sum_via_recurrence`]).
//!
//! Row 0 is covered by the conventions `s_0 = ŝ_0 = s̃_0 = 1`.
//!
//! The alternating sums split into type-A and type-B subsums that evolve by
//! an affine 2×2 system over a fixed row step ([`InfluenceCoefficients`]);
//! [`lemma_reduce`] turns such a system into a single ternary recurrence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::mosaic::{Mosaic, Parity};

/// `z[k+3] = c2·z[k+2] + c1·z[k+1] + c0·z[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceCoefficients {
    pub c2: BigInt,
    pub c1: BigInt,
    pub c0: BigInt,
}

impl RecurrenceCoefficients {
    pub fn new(c2: impl Into<BigInt>, c1: impl Into<BigInt>, c0: impl Into<BigInt>) -> Self {
        RecurrenceCoefficients {
            c2: c2.into(),
            c1: c1.into(),
            c0: c0.into(),
        }
    }

    /// Next term after the window `[z[k], z[k+1], z[k+2]]`.
    pub fn apply(&self, window: [&BigInt; 3]) -> BigInt {
        &self.c2 * window[2] + &self.c1 * window[1] + &self.c0 * window[0]
    }

    /// `z[k+3] - (c2·z[k+2] + c1·z[k+1] + c0·z[k])`.
    pub fn residual(&self, window: [&BigInt; 4]) -> BigInt {
        window[3] - self.apply([window[0], window[1], window[2]])
    }
}

impl fmt::Display for RecurrenceCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c2={} c1={} c0={}", self.c2, self.c1, self.c0)
    }
}

/// A ternary recurrence together with its three initial terms, which sit at
/// indices `start`, `start + 1` and `start + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryRecurrence {
    coefficients: RecurrenceCoefficients,
    start: usize,
    initial: [BigInt; 3],
}

impl TernaryRecurrence {
    pub fn new(coefficients: RecurrenceCoefficients, start: usize, initial: [BigInt; 3]) -> Self {
        TernaryRecurrence {
            coefficients,
            start,
            initial,
        }
    }

    pub fn coefficients(&self) -> &RecurrenceCoefficients {
        &self.coefficients
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn initial(&self) -> &[BigInt; 3] {
        &self.initial
    }

    /// Terms from index `start` onward.
    pub fn terms(&self) -> Terms {
        Terms {
            coefficients: self.coefficients.clone(),
            window: self.initial.clone(),
            emitted: 0,
        }
    }

    /// Term at index `index`, or `None` below `start`.
    pub fn term(&self, index: usize) -> Option<BigInt> {
        let offset = index.checked_sub(self.start)?;
        self.terms().nth(offset)
    }
}

pub struct Terms {
    coefficients: RecurrenceCoefficients,
    window: [BigInt; 3],
    emitted: usize,
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.emitted < 3 {
            self.emitted += 1;
            return Some(self.window[self.emitted - 1].clone());
        }
        let [a, b, c] = &self.window;
        let next = self.coefficients.apply([a, b, c]);
        self.window.rotate_left(1);
        self.window[2] = next.clone();
        Some(next)
    }
}

fn big(q: Mosaic) -> BigInt {
    BigInt::from(q.q())
}

/// `s_n = (q-1)s_{n-1} - (q-1)s_{n-2} + s_{n-3}` with `s_1, s_2, s_3 = 2, 3, q`.
pub fn row_count_recurrence(mosaic: Mosaic) -> TernaryRecurrence {
    let q = big(mosaic);
    let q1: BigInt = &q - 1;
    TernaryRecurrence::new(
        RecurrenceCoefficients::new(q1.clone(), -q1, 1),
        1,
        [2.into(), 3.into(), q],
    )
}

/// `ŝ_n = q·ŝ_{n-1} - (q+1)ŝ_{n-2} + 2ŝ_{n-3}` with `ŝ_1, ŝ_2, ŝ_3 = 2, 4, 2q`.
pub fn row_sum_recurrence(mosaic: Mosaic) -> TernaryRecurrence {
    let q = big(mosaic);
    TernaryRecurrence::new(
        RecurrenceCoefficients::new(q.clone(), -(&q + 1u32), 2),
        1,
        [2.into(), 4.into(), 2 * q],
    )
}

pub fn row_count(mosaic: Mosaic, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    row_count_recurrence(mosaic).term(n).expect("n >= 1")
}

pub fn row_sum(mosaic: Mosaic, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    row_sum_recurrence(mosaic).term(n).expect("n >= 1")
}

/// Alternating sum of row `n` from the closed forms.
///
/// Even `q`: zero on odd rows, `2 - 2(5-q)^(t-1)` on row `2t`.
/// Odd `q`: zero on rows `3t+1`, `(-2)^t (q-5)^(t-1) + 2` on row `3t-1` and
/// twice the power term plus 2 on row `3t`. `{4,5}` has its own branch.
pub fn alt_sum_closed(mosaic: Mosaic, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    match mosaic.parity() {
        Parity::Even => {
            if n % 2 == 1 {
                return BigInt::zero();
            }
            let t = n / 2;
            let base = 5 - big(mosaic);
            2 - 2 * Pow::pow(base, t - 1)
        }
        Parity::Odd if mosaic.q() == 5 => alt_sum_q5(n),
        Parity::Odd => odd_closed_form(mosaic, n),
    }
}

/// Odd-q closed form with `0^0 = 1`, so it also covers `q = 5`.
fn odd_closed_form(mosaic: Mosaic, n: usize) -> BigInt {
    let (t, scale) = match n % 3 {
        1 => return BigInt::zero(),
        2 => ((n + 1) / 3, 1),
        _ => (n / 3, 2),
    };
    let power = Pow::pow(BigInt::from(-2), t) * Pow::pow(big(mosaic) - 5, t - 1);
    scale * power + 2
}

fn alt_sum_q5(n: usize) -> BigInt {
    match n {
        0 => 1,
        _ if n % 3 == 1 => 0,
        2 => 0,
        3 => -2,
        _ => 2,
    }
    .into()
}

/// Recurrence for `s̃_{2k}` with even `q`, seeded by `s̃_0, s̃_2, s̃_4`.
pub fn even_alt_recurrence(mosaic: Mosaic) -> TernaryRecurrence {
    let q = big(mosaic);
    TernaryRecurrence::new(
        RecurrenceCoefficients::new(6 - &q, &q - 5, 0),
        0,
        [1.into(), 0.into(), 2 * (&q - 4)],
    )
}

/// Recurrences for odd `q` over the residue classes `n ≡ 0` and `n ≡ 2`
/// (mod 3), indexed by `t` with `n = 3t` and `n = 3t + 2` respectively.
pub fn odd_alt_recurrences(mosaic: Mosaic) -> (TernaryRecurrence, TernaryRecurrence) {
    let q = big(mosaic);
    let coefficients = RecurrenceCoefficients::new(11 - 2 * &q, 2 * &q - 10, 0);
    let s3 = BigInt::from(-2);
    let s6 = 8 * &q - 38;
    let s2 = BigInt::zero();
    let s5 = 4 * &q - 18;
    // c0 = 0, so s̃_8 is already fixed by s̃_2 and s̃_5
    let s8 = coefficients.apply([&BigInt::zero(), &s2, &s5]);
    (
        TernaryRecurrence::new(coefficients.clone(), 0, [BigInt::one(), s3, s6]),
        TernaryRecurrence::new(coefficients, 0, [s2, s5, s8]),
    )
}

/// Alternating sum of row `n` by iterating the merged recurrences.
pub fn alt_sum_via_recurrence(mosaic: Mosaic, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    if mosaic.is_euclidean() {
        return BigInt::zero();
    }
    match mosaic.parity() {
        Parity::Even if n % 2 == 1 => BigInt::zero(),
        Parity::Even => even_alt_recurrence(mosaic).term(n / 2).expect("start 0"),
        Parity::Odd => {
            let (zero_class, two_class) = odd_alt_recurrences(mosaic);
            match n % 3 {
                0 => zero_class.term(n / 3).expect("start 0"),
                1 => BigInt::zero(),
                _ => two_class.term(n / 3).expect("start 0"),
            }
        }
    }
}

/// `Σ (v if i even else w) · value(i)` over row `n`, from `ŝ_n` and `s̃_n`.
pub fn weighted_alt_sum(mosaic: Mosaic, n: usize, v: &BigInt, w: &BigInt) -> BigInt {
    let sum = row_sum(mosaic, n);
    let alt = alt_sum_closed(mosaic, n);
    let numerator = (v + w) * sum + (v - w) * alt;
    let (half, rem) = numerator.div_rem(&BigInt::from(2));
    assert!(
        rem.is_zero(),
        "row {n} of {mosaic}: ŝ and s̃ differ in parity, construction is inconsistent"
    );
    half
}

/// Affine coupled system
/// `x' = u1·x + v1·y + w1`, `y' = u2·x + v2·y + w2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoupledSystem {
    pub u1: BigInt,
    pub v1: BigInt,
    pub w1: BigInt,
    pub u2: BigInt,
    pub v2: BigInt,
    pub w2: BigInt,
}

impl CoupledSystem {
    pub fn step(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.u1 * x + &self.v1 * y + &self.w1,
            &self.u2 * x + &self.v2 * y + &self.w2,
        )
    }

    /// Both component sequences satisfy the returned ternary recurrence.
    ///
    /// The reduction is stated under the side condition `u2·v1 ≠ 0` (printed
    /// as `a2·b1 ≠ 0` in the source of the identity, where no `a`, `b`
    /// exist); systems violating it are refused.
    pub fn reduce(&self) -> Result<RecurrenceCoefficients> {
        if (&self.u2 * &self.v1).is_zero() {
            return Err(Error::LemmaCondition);
        }
        let det = &self.u1 * &self.v2 - &self.u2 * &self.v1;
        Ok(RecurrenceCoefficients {
            c2: &self.u1 + &self.v2 + 1,
            c1: -&det - &self.u1 - &self.v2,
            c0: det,
        })
    }
}

pub fn lemma_reduce(
    u1: BigInt,
    v1: BigInt,
    w1: BigInt,
    u2: BigInt,
    v2: BigInt,
    w2: BigInt,
) -> Result<RecurrenceCoefficients> {
    CoupledSystem { u1, v1, w1, u2, v2, w2 }.reduce()
}

/// How the type-A and type-B alternating subsums of row `n` determine those
/// of row `n + step`, including the fixed contribution of the two wingers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfluenceCoefficients {
    pub parity: Parity,
    pub step: usize,
    pub matrix: [[i64; 2]; 2],
    pub winger_constants: [i64; 2],
}

impl InfluenceCoefficients {
    /// `(A', B') = matrix · (A, B) + winger_constants`.
    pub fn apply(&self, sub_a: &BigInt, sub_b: &BigInt) -> (BigInt, BigInt) {
        self.as_coupled_system().step(sub_a, sub_b)
    }

    pub fn as_coupled_system(&self) -> CoupledSystem {
        let [[u1, v1], [u2, v2]] = self.matrix;
        let [w1, w2] = self.winger_constants;
        CoupledSystem {
            u1: u1.into(),
            v1: v1.into(),
            w1: w1.into(),
            u2: u2.into(),
            v2: v2.into(),
            w2: w2.into(),
        }
    }
}

pub fn influence_coefficients(mosaic: Mosaic) -> Result<InfluenceCoefficients> {
    if mosaic.is_euclidean() {
        return Err(Error::UnsupportedMosaic {
            q: mosaic.q(),
            reason: "the subsum system degenerates (u2·v1 = 0) for the classical triangle",
        });
    }
    let q = i64::from(mosaic.q());
    Ok(match mosaic.parity() {
        Parity::Even => InfluenceCoefficients {
            parity: Parity::Even,
            step: 2,
            matrix: [[-2 * (q - 4), -2 * (q - 3)], [q - 4, q - 3]],
            winger_constants: [-2, 0],
        },
        Parity::Odd => InfluenceCoefficients {
            parity: Parity::Odd,
            step: 3,
            matrix: [[-4 * (q - 4), -4 * (q - 3)], [2 * (q - 4), 2 * (q - 3)]],
            winger_constants: [-6, 2],
        },
    })
}

/// Polynomial with coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigInt>);

impl Polynomial {
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial(out)
    }
}

/// Characteristic polynomial of the merged alternating-sum recurrence in the
/// row variable: `x^(2s) - c2·x^s - c1` where `s` is the row step.
pub fn alt_characteristic_polynomial(mosaic: Mosaic) -> Result<Polynomial> {
    let influence = influence_coefficients(mosaic)?;
    let reduced = influence.as_coupled_system().reduce()?;
    let s = influence.step;
    let mut coefficients = vec![BigInt::zero(); 2 * s + 1];
    coefficients[2 * s] = BigInt::one();
    coefficients[s] = -reduced.c2;
    coefficients[0] = -reduced.c1;
    Ok(Polynomial(coefficients))
}

/// The factorization `(x^s - r)(x^s - 1)` with `r = 5 - q` for even `q` and
/// `r = 2(5 - q)` for odd `q`.
pub fn alt_characteristic_factors(mosaic: Mosaic) -> Result<(Polynomial, Polynomial)> {
    let influence = influence_coefficients(mosaic)?;
    let s = influence.step;
    let root = match influence.parity {
        Parity::Even => 5 - big(mosaic),
        Parity::Odd => 2 * (5 - big(mosaic)),
    };
    let binomial = |constant: BigInt| {
        let mut c = vec![BigInt::zero(); s + 1];
        c[s] = BigInt::one();
        c[0] = -constant;
        Polynomial(c)
    };
    Ok((binomial(root), binomial(BigInt::one())))
}
