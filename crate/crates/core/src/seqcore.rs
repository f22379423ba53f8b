//! Generalized Fibonacci numbers `F(k, n)` and generalized Lucas numbers
//! `L(k, n)` with exact big-integer arithmetic.
//!
//! ```text
//! F(k, n) = n + 1                          for n < k
//! F(k, n) = F(k, n - 1) + F(k, n - k)      for n >= k
//!
//! L(k, n) = n + 1                                      for n < 2k
//! L(k, n) = (k - 1) F(k, n - (2k - 1)) + F(k, n - (k - 1))   for n >= 2k
//! ```
//!
//! All evaluation is bottom-up, so large `n` never grows the call stack.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

/// Exact non-negative sequence value.
pub type Natural = BigUint;

#[derive(Debug, Error)]
pub enum SeqError {
    #[error("invalid argument: k must be at least 2 (got k={0})")]
    InvalidK(usize),
    #[error("cache conflict at {key}: stored {stored}, attempted {attempted}")]
    CacheConflict {
        key: SequenceKey,
        stored: Natural,
        attempted: Natural,
    },
    #[error("cache file line {line}: {reason}")]
    CacheFormat { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    GenFib,
    GenLucas,
}

impl SequenceKind {
    pub fn tag(self) -> &'static str {
        match self {
            SequenceKind::GenFib => "fib",
            SequenceKind::GenLucas => "lucas",
        }
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fib" => Ok(SequenceKind::GenFib),
            "lucas" => Ok(SequenceKind::GenLucas),
            other => Err(format!("unknown sequence kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceKey {
    pub kind: SequenceKind,
    pub k: usize,
    pub n: usize,
}

impl SequenceKey {
    pub fn new(kind: SequenceKind, k: usize, n: usize) -> Result<Self, SeqError> {
        check_k(k)?;
        Ok(SequenceKey { kind, k, n })
    }
}

impl fmt::Display for SequenceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind.tag(), self.k, self.n)
    }
}

/// Write-once memo table. An existing entry may be re-inserted only with an
/// identical value.
#[derive(Debug, Clone, Default)]
pub struct SequenceCache {
    entries: HashMap<SequenceKey, Natural>,
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &SequenceKey) -> Option<&Natural> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: SequenceKey, value: Natural) -> Result<(), SeqError> {
        match self.entries.get(&key) {
            Some(stored) if *stored != value => Err(SeqError::CacheConflict {
                key,
                stored: stored.clone(),
                attempted: value,
            }),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(key, value);
                Ok(())
            }
        }
    }

    /// Folds another cache into this one under the same write-once rule.
    pub fn merge(&mut self, other: SequenceCache) -> Result<(), SeqError> {
        for (key, value) in other.entries {
            self.insert(key, value)?;
        }
        Ok(())
    }

    /// Reads `kind,k,n,value` lines. Blank lines and `#` comments are skipped.
    pub fn load<R: BufRead>(reader: R) -> Result<Self, SeqError> {
        let mut cache = SequenceCache::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let bad = |reason: String| SeqError::CacheFormat {
                line: line_no,
                reason,
            };
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            }
            let kind = fields[0].parse::<SequenceKind>().map_err(bad)?;
            let k = fields[1]
                .parse::<usize>()
                .map_err(|e| bad(format!("bad k: {e}")))?;
            let n = fields[2]
                .parse::<usize>()
                .map_err(|e| bad(format!("bad n: {e}")))?;
            let value = fields[3]
                .parse::<Natural>()
                .map_err(|e| bad(format!("bad value: {e}")))?;
            let key = SequenceKey::new(kind, k, n).map_err(|e| bad(e.to_string()))?;
            cache.insert(key, value)?;
        }
        Ok(cache)
    }

    /// Writes entries sorted by key so the file is diff-friendly.
    pub fn save<W: Write>(&self, mut out: W) -> Result<(), SeqError> {
        let mut keys: Vec<&SequenceKey> = self.entries.keys().collect();
        keys.sort();
        for key in keys {
            writeln!(
                out,
                "{},{},{},{}",
                key.kind.tag(),
                key.k,
                key.n,
                self.entries[key]
            )?;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<(), SeqError> {
    if k < 2 {
        Err(SeqError::InvalidK(k))
    } else {
        Ok(())
    }
}

fn base(n: usize) -> Natural {
    Natural::from(n + 1)
}

/// `F(k, n)`, filling the cache for every index `0..=n`.
pub fn gen_fib(k: usize, n: usize, cache: &mut SequenceCache) -> Result<Natural, SeqError> {
    check_k(k)?;
    let key = |m| SequenceKey {
        kind: SequenceKind::GenFib,
        k,
        n: m,
    };
    if let Some(v) = cache.get(&key(n)) {
        return Ok(v.clone());
    }
    for m in 0..=n {
        if cache.get(&key(m)).is_some() {
            continue;
        }
        let value = if m < k {
            base(m)
        } else {
            cache.entries[&key(m - 1)].clone() + &cache.entries[&key(m - k)]
        };
        cache.insert(key(m), value)?;
    }
    Ok(cache.entries[&key(n)].clone())
}

/// `L(k, n)` from its definition in terms of `F`.
pub fn gen_lucas(k: usize, n: usize, cache: &mut SequenceCache) -> Result<Natural, SeqError> {
    check_k(k)?;
    let key = SequenceKey {
        kind: SequenceKind::GenLucas,
        k,
        n,
    };
    if let Some(v) = cache.get(&key) {
        return Ok(v.clone());
    }
    let value = if n < 2 * k {
        base(n)
    } else {
        let short = gen_fib(k, n - (2 * k - 1), cache)?;
        let long = gen_fib(k, n - (k - 1), cache)?;
        short * (k - 1) + long
    };
    cache.insert(key, value.clone())?;
    Ok(value)
}

/// `L(k, n)` by the recurrence `L(k, n) = L(k, n - 1) + L(k, n - k)`, seeded
/// with `L(k, m) = m + 1` for `m < 2k`.
///
/// The recurrence is applied only from `n = 2k` upward: for `k < n < 2k` it
/// disagrees with the base values (e.g. `L(3, 4) = 5` but
/// `L(3, 3) + L(3, 1) = 6`). This route never touches [`SequenceCache`] so it
/// stays independent of [`gen_lucas`].
pub fn gen_lucas_rec(k: usize, n: usize) -> Result<Natural, SeqError> {
    check_k(k)?;
    let mut values: Vec<Natural> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = if m < 2 * k {
            base(m)
        } else {
            values[m - 1].clone() + &values[m - k]
        };
        values.push(value);
    }
    Ok(values.swap_remove(n))
}

/// Classical Fibonacci number in the shifted convention `F_0 = 1, F_1 = 2`,
/// i.e. `F(2, n)`.
pub fn classic_fib(n: usize, cache: &mut SequenceCache) -> Result<Natural, SeqError> {
    gen_fib(2, n, cache)
}

/// Classical Lucas number `L_n`.
///
/// Agrees with `L(2, n)` only for `n >= 3`. Below that the generalized
/// sequence gives `1, 2, 3` while the classical one is `2, 1, 3`; this
/// function returns the classical constants.
pub fn classic_lucas(n: usize, cache: &mut SequenceCache) -> Result<Natural, SeqError> {
    match n {
        0 => Ok(Natural::from(2u32)),
        1 => Ok(Natural::from(1u32)),
        2 => Ok(Natural::from(3u32)),
        _ => gen_lucas(2, n, cache),
    }
}

/// `F(k, n)` with a rolling window of the last `k` values and no memo table.
pub fn gen_fib_uncached(k: usize, n: usize) -> Result<Natural, SeqError> {
    check_k(k)?;
    if n < k {
        return Ok(base(n));
    }
    // window[m % k] holds F(k, m) for the k most recent indices
    let mut window: Vec<Natural> = (0..k).map(base).collect();
    for m in k..=n {
        let slot = m % k;
        let prev = window[(m - 1) % k].clone();
        window[slot] += prev;
    }
    Ok(window.swap_remove(n % k))
}

/// `L(k, n)` from its definition without a memo table.
pub fn gen_lucas_uncached(k: usize, n: usize) -> Result<Natural, SeqError> {
    check_k(k)?;
    if n < 2 * k {
        return Ok(base(n));
    }
    Ok(gen_fib_uncached(k, n - (2 * k - 1))? * (k - 1) + gen_fib_uncached(k, n - (k - 1))?)
}
