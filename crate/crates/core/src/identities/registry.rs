//! The identity table.
//!
//! Every entry carries two evaluators. The primary one reads the memoized
//! sequence functions and spells out each summation as a plain loop. The
//! alternate one works from an independently built value table and rewrites
//! the sums: single sums as differences of prefix sums, and double sums
//! `sum_j sum_{i <= N-j} S(N-i-j)` as the weighted single sum
//! `sum_m (m+1) S(N-m)` (and the reverse for the weighted corollaries).

use num_bigint::BigInt;

use super::{AltTable, EvalContext, IdentityError, Variant};

pub type Sides = (BigInt, BigInt);
type Primary = fn(&mut EvalContext, usize, usize) -> Result<Sides, IdentityError>;
type Alternate = fn(&mut AltTable, usize, usize) -> Result<Sides, IdentityError>;

#[derive(Clone, Copy)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub variant: Variant,
    /// The identity written out with `F`, `L`, `F_n`, `L_n`.
    pub statement: &'static str,
    /// Free variables. When `multiplier` is set, `n` scales `k` inside the
    /// sequence indices and the grid iterates the multiplier.
    pub params: &'static [&'static str],
    pub multiplier: bool,
    /// The stated range.
    pub applies: fn(usize, usize) -> bool,
    /// Wider range where both sides are still defined, evaluated only when
    /// exploring; `None` means the stated range is the whole domain.
    pub explore: Option<fn(usize, usize) -> bool>,
    pub(crate) primary: Primary,
    pub(crate) alternate: Alternate,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("variant", &self.variant)
            .field("statement", &self.statement)
            .finish()
    }
}

const KN: &[&str] = &["k", "n"];
const N_ONLY: &[&str] = &["n"];

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn int(v: usize) -> i64 {
    v as i64
}

pub fn registry() -> Vec<IdentityDescriptor> {
    use Variant::{AsPrinted, Corrected};
    vec![
        IdentityDescriptor {
            id: "I-3.1",
            variant: AsPrinted,
            statement: "F(k,n-(k-1)) = F(k,n-k) + F(k,n-(2k-1))",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: None,
            primary: |c, k, n| {
                let (kk, n) = (int(k), int(n));
                Ok((
                    c.fib(k, n - (kk - 1))?,
                    c.fib(k, n - kk)? + c.fib(k, n - (2 * kk - 1))?,
                ))
            },
            alternate: |t, k, n| {
                let (kk, n) = (int(k), int(n));
                Ok((
                    t.fib(k, n - (kk - 1))?,
                    t.fib(k, n - kk)? + t.fib(k, n - (2 * kk - 1))?,
                ))
            },
        },
        IdentityDescriptor {
            id: "I-3.2",
            variant: AsPrinted,
            statement: "F(k,n) = k + sum_{i=0}^{n-k} F(k,i)",
            params: KN,
            multiplier: false,
            applies: |k, n| n > k,
            explore: None,
            primary: |c, k, n| {
                let mut rhs = big(int(k));
                for i in 0..=int(n) - int(k) {
                    rhs += c.fib(k, i)?;
                }
                Ok((c.fib(k, int(n))?, rhs))
            },
            alternate: |t, k, n| {
                let rhs = big(int(k)) + t.fib_prefix(k, int(n) - int(k))?;
                Ok((t.fib(k, int(n))?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3.3",
            variant: AsPrinted,
            statement: "F(k,nk) = 1 + sum_{i=1}^{n} F(k,ik-1)",
            params: KN,
            multiplier: true,
            applies: |k, n| n >= k,
            explore: None,
            primary: |c, k, n| {
                let kk = int(k);
                let mut rhs = big(1);
                for i in 1..=int(n) {
                    rhs += c.fib(k, i * kk - 1)?;
                }
                Ok((c.fib(k, int(n) * kk)?, rhs))
            },
            alternate: |t, k, n| {
                let kk = int(k);
                let terms = (1..=int(n))
                    .map(|i| t.fib(k, i * kk - 1))
                    .collect::<Result<Vec<_>, _>>()?;
                let rhs = terms.into_iter().fold(big(1), |acc, v| acc + v);
                Ok((t.fib(k, int(n) * kk)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3.4",
            variant: AsPrinted,
            statement: "F(k,n) = sum_{i=0}^{k-1} F(k,n-(k-1)-i)",
            params: KN,
            multiplier: false,
            applies: |k, n| n + 2 >= 2 * k,
            explore: None,
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                let mut rhs = big(0);
                for i in 0..kk {
                    rhs += c.fib(k, nn - (kk - 1) - i)?;
                }
                Ok((c.fib(k, nn)?, rhs))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                let rhs = t.fib_range(k, nn - 2 * kk + 2, nn - kk + 1)?;
                Ok((t.fib(k, nn)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3.5",
            variant: AsPrinted,
            statement: "F(k,n) = F(k,n-1) + F(k,n-2) - sum_{i=0}^{k-3} F(k,n-(2k-1)+i)",
            params: KN,
            multiplier: false,
            applies: |k, n| n + 1 >= 2 * k,
            explore: None,
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                let mut rhs = c.fib(k, nn - 1)? + c.fib(k, nn - 2)?;
                for i in 0..=kk - 3 {
                    rhs -= c.fib(k, nn - (2 * kk - 1) + i)?;
                }
                Ok((c.fib(k, nn)?, rhs))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                let rhs = t.fib(k, nn - 1)? + t.fib(k, nn - 2)?
                    - t.fib_range(k, nn - (2 * kk - 1), nn - kk - 2)?;
                Ok((t.fib(k, nn)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3.6",
            variant: AsPrinted,
            statement: "L(k,n) = L(k,n-1) + L(k,n-k)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: Some(|k, n| n >= k),
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                Ok((c.lucas(k, nn)?, c.lucas(k, nn - 1)? + c.lucas(k, nn - kk)?))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                Ok((t.lucas(k, nn)?, t.lucas(k, nn - 1)? + t.lucas(k, nn - kk)?))
            },
        },
        IdentityDescriptor {
            id: "I-3.7",
            variant: AsPrinted,
            statement: "L(k,n) = k F(k,n-(2k-1)) + F(k,n-k)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: None,
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                let rhs = big(kk) * c.fib(k, nn - (2 * kk - 1))? + c.fib(k, nn - kk)?;
                Ok((c.lucas(k, nn)?, rhs))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                let rhs = big(kk) * t.fib(k, nn - (2 * kk - 1))? + t.fib(k, nn - kk)?;
                Ok((t.lucas(k, nn)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3.8",
            variant: AsPrinted,
            statement: "L(k,nk+1) = sum_{i=0}^{n} L(k,ik)",
            params: KN,
            multiplier: true,
            applies: |k, n| n >= 2 * k,
            explore: Some(|_, _| true),
            primary: |c, k, n| {
                let kk = int(k);
                let mut rhs = big(0);
                for i in 0..=int(n) {
                    rhs += c.lucas(k, i * kk)?;
                }
                Ok((c.lucas(k, int(n) * kk + 1)?, rhs))
            },
            alternate: |t, k, n| {
                let kk = int(k);
                let terms = (0..=int(n))
                    .map(|i| t.lucas(k, i * kk))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((t.lucas(k, int(n) * kk + 1)?, terms.into_iter().sum()))
            },
        },
        IdentityDescriptor {
            id: "I-4.1",
            variant: AsPrinted,
            statement: "F(k,n+k) = F(k,n) + sum_{i=0}^{k-1} F(k,n-i)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= k,
            explore: None,
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                let mut rhs = c.fib(k, nn)?;
                for i in 0..kk {
                    rhs += c.fib(k, nn - i)?;
                }
                Ok((c.fib(k, nn + kk)?, rhs))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                let rhs = t.fib(k, nn)? + t.fib_range(k, nn - kk + 1, nn)?;
                Ok((t.fib(k, nn + kk)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-4.2p",
            variant: AsPrinted,
            statement: "F(k,n) = k + (k-1)(n+1-k) - k(k-1)/2 + sum_{j=0}^{n-2k} sum_{i=0}^{n-2k-j} F(k,n-2k-i-j)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: None,
            primary: |c, k, n| fib_two_grays_primary(c, k, n, int(k) - 1),
            alternate: |t, k, n| fib_two_grays_alternate(t, k, n, int(k) - 1),
        },
        IdentityDescriptor {
            id: "I-4.2c",
            variant: Corrected,
            statement: "F(k,n) = k + k(n+1-k) - k(k-1)/2 + sum_{j=0}^{n-2k} sum_{i=0}^{n-2k-j} F(k,n-2k-i-j)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: None,
            primary: |c, k, n| fib_two_grays_primary(c, k, n, int(k)),
            alternate: |t, k, n| fib_two_grays_alternate(t, k, n, int(k)),
        },
        IdentityDescriptor {
            id: "I-4.3p",
            variant: AsPrinted,
            statement: "F_n = n + sum_{i=0}^{n-4} (i+1) F_{n-4-i}",
            params: N_ONLY,
            multiplier: false,
            applies: |k, n| k == 2 && n >= 4,
            explore: None,
            primary: |c, _, n| weighted_fib_primary(c, n, int(n)),
            alternate: |t, _, n| weighted_fib_alternate(t, n, int(n)),
        },
        IdentityDescriptor {
            id: "I-4.3c",
            variant: Corrected,
            statement: "F_n = (2n-1) + sum_{i=0}^{n-4} (i+1) F_{n-4-i}",
            params: N_ONLY,
            multiplier: false,
            applies: |k, n| k == 2 && n >= 4,
            explore: None,
            primary: |c, _, n| weighted_fib_primary(c, n, 2 * int(n) - 1),
            alternate: |t, _, n| weighted_fib_alternate(t, n, 2 * int(n) - 1),
        },
        IdentityDescriptor {
            id: "I-4.4p",
            variant: AsPrinted,
            statement: "L(k,n) = k + k(k-1) + (k-1)(n+1-(k-1)-k) + (k-1)(n+1-(2k-1)-k) - k(k-1) + sum_{j=0}^{n-2k} sum_{i=0}^{n-2k-j} L(k,n-2k-i-j)",
            params: KN,
            multiplier: false,
            applies: |k, n| n >= 2 * k,
            explore: None,
            primary: |c, k, n| {
                let (kk, nn) = (int(k), int(n));
                let top = nn - 2 * kk;
                let mut rhs = big(lucas_two_grays_linear(kk, nn));
                for j in 0..=top {
                    for i in 0..=top - j {
                        rhs += c.lucas(k, nn - 2 * kk - i - j)?;
                    }
                }
                Ok((c.lucas(k, nn)?, rhs))
            },
            alternate: |t, k, n| {
                let (kk, nn) = (int(k), int(n));
                let top = nn - 2 * kk;
                let mut rhs = big(lucas_two_grays_linear(kk, nn));
                for m in 0..=top {
                    rhs += big(m + 1) * t.lucas(k, top - m)?;
                }
                Ok((t.lucas(k, nn)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-4.5p",
            variant: AsPrinted,
            statement: "L_n = 2(n-2) + sum_{i=0}^{n-4} (i+1) L_{n-4-i}",
            params: N_ONLY,
            multiplier: false,
            applies: |k, n| k == 2 && n >= 4,
            explore: None,
            primary: |c, _, n| {
                let nn = int(n);
                let mut rhs = big(2 * (nn - 2));
                for i in 0..=nn - 4 {
                    rhs += big(i + 1) * c.classic_lucas(nn - 4 - i)?;
                }
                Ok((c.classic_lucas(nn)?, rhs))
            },
            alternate: |t, _, n| {
                let nn = int(n);
                let top = nn - 4;
                let mut rhs = big(2 * (nn - 2));
                for j in 0..=top {
                    for i in 0..=top - j {
                        rhs += t.classic_lucas(top - i - j)?;
                    }
                }
                Ok((t.classic_lucas(nn)?, rhs))
            },
        },
        IdentityDescriptor {
            id: "I-3FN",
            variant: AsPrinted,
            statement: "F_{n+2} + F_{n-2} = 3 F_n",
            params: N_ONLY,
            multiplier: false,
            applies: |k, n| k == 2 && n >= 2,
            explore: None,
            primary: |c, _, n| {
                let nn = int(n);
                Ok((c.fib(2, nn + 2)? + c.fib(2, nn - 2)?, big(3) * c.fib(2, nn)?))
            },
            alternate: |t, _, n| {
                let nn = int(n);
                Ok((t.fib(2, nn + 2)? + t.fib(2, nn - 2)?, big(3) * t.fib(2, nn)?))
            },
        },
    ]
}

/// `k + coeff(n+1-k) - k(k-1)/2`: the tilings with no gray plus those with one.
fn fib_two_grays_linear(k: i64, n: i64, coeff: i64) -> i64 {
    k + coeff * (n + 1 - k) - k * (k - 1) / 2
}

fn fib_two_grays_primary(c: &mut EvalContext, k: usize, n: usize, coeff: i64) -> Result<Sides, IdentityError> {
    let (kk, nn) = (int(k), int(n));
    let top = nn - 2 * kk;
    let mut rhs = big(fib_two_grays_linear(kk, nn, coeff));
    for j in 0..=top {
        for i in 0..=top - j {
            rhs += c.fib(k, nn - 2 * kk - i - j)?;
        }
    }
    Ok((c.fib(k, nn)?, rhs))
}

fn fib_two_grays_alternate(t: &mut AltTable, k: usize, n: usize, coeff: i64) -> Result<Sides, IdentityError> {
    let (kk, nn) = (int(k), int(n));
    let top = nn - 2 * kk;
    let mut rhs = big(fib_two_grays_linear(kk, nn, coeff));
    for m in 0..=top {
        rhs += big(m + 1) * t.fib(k, top - m)?;
    }
    Ok((t.fib(k, nn)?, rhs))
}

fn lucas_two_grays_linear(k: i64, n: i64) -> i64 {
    k + k * (k - 1) + (k - 1) * (n + 1 - (k - 1) - k) + (k - 1) * (n + 1 - (2 * k - 1) - k)
        - k * (k - 1)
}

fn weighted_fib_primary(c: &mut EvalContext, n: usize, constant: i64) -> Result<Sides, IdentityError> {
    let nn = int(n);
    let mut rhs = big(constant);
    for i in 0..=nn - 4 {
        rhs += big(i + 1) * c.fib(2, nn - 4 - i)?;
    }
    Ok((c.fib(2, nn)?, rhs))
}

fn weighted_fib_alternate(t: &mut AltTable, n: usize, constant: i64) -> Result<Sides, IdentityError> {
    let nn = int(n);
    let top = nn - 4;
    let mut rhs = big(constant);
    for j in 0..=top {
        rhs += t.fib_prefix(2, top - j)?;
    }
    Ok((t.fib(2, nn)?, rhs))
}
