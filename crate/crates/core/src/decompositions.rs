//! Structural cuts on tilings used by the counting arguments.
//!
//! Each cut splits a tiling into a `remainder` and the `removed` pieces, plus
//! a few named integer parameters. [`Decomposition::reassemble`] puts them
//! back together; for every kind that must reproduce the input exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tilings::{self, code_of, is_type_b, total_width, Piece, Tiling, TilingError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("board too small: n={n}, need n >= {min}")]
    BoardTooSmall { n: usize, min: usize },
    #[error("no gray piece present")]
    NoGrayPresent,
    #[error("fewer than two gray pieces")]
    FewerThanTwoGrays,
    #[error("no piece before the tail")]
    NoPieceBeforeTail,
    #[error("removing {removed:?} before the tail leaves {remainder}, not type-B for n={reduced_n}")]
    ReducedNotTypeB {
        removed: Piece,
        remainder: String,
        reduced_n: usize,
    },
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionKind {
    LastPiece,
    RightmostGray,
    TrailingWhiteRun,
    BeforeTail,
    LastTwoGrays,
}

impl DecompositionKind {
    pub const ALL: [DecompositionKind; 5] = [
        DecompositionKind::LastPiece,
        DecompositionKind::RightmostGray,
        DecompositionKind::TrailingWhiteRun,
        DecompositionKind::BeforeTail,
        DecompositionKind::LastTwoGrays,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::LastPiece => "last-piece",
            DecompositionKind::RightmostGray => "rightmost-gray",
            DecompositionKind::TrailingWhiteRun => "trailing-white-run",
            DecompositionKind::BeforeTail => "before-tail",
            DecompositionKind::LastTwoGrays => "last-two-grays",
        }
    }
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecompositionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecompositionKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = DecompositionKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown decomposition kind `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub k: usize,
    pub remainder: Vec<Piece>,
    pub removed: Vec<Piece>,
    pub params: BTreeMap<&'static str, usize>,
}

impl Decomposition {
    fn new(kind: DecompositionKind, k: usize, remainder: Vec<Piece>, removed: Vec<Piece>) -> Self {
        Decomposition {
            kind,
            k,
            remainder,
            removed,
            params: BTreeMap::new(),
        }
    }

    fn with(mut self, name: &'static str, value: usize) -> Self {
        self.params.insert(name, value);
        self
    }

    pub fn param(&self, name: &str) -> Option<usize> {
        self.params.get(name).copied()
    }

    /// `n` of the board the remainder covers (its width minus one).
    pub fn remainder_n(&self) -> usize {
        total_width(self.k, &self.remainder).saturating_sub(1)
    }

    pub fn reassemble(&self) -> Vec<Piece> {
        match self.kind {
            DecompositionKind::BeforeTail => {
                let tail_len = self.params["tail_len"];
                let split = self.remainder.len() - tail_len;
                let mut out = self.remainder[..split].to_vec();
                out.extend_from_slice(&self.removed);
                out.extend_from_slice(&self.remainder[split..]);
                out
            }
            _ => {
                let mut out = self.remainder.clone();
                out.extend_from_slice(&self.removed);
                out
            }
        }
    }

    /// Single-line `key=value` record.
    pub fn record(&self) -> String {
        let mut line = format!(
            "kind={} k={} remainder={} removed={}",
            self.kind,
            self.k,
            code_of(&self.remainder),
            code_of(&self.removed)
        );
        for (name, value) in &self.params {
            line.push_str(&format!(" {name}={value}"));
        }
        line
    }
}

pub fn decompose(kind: DecompositionKind, t: &Tiling) -> Result<Decomposition, DecompositionError> {
    match kind {
        DecompositionKind::LastPiece => split_last_piece(t),
        DecompositionKind::RightmostGray => split_rightmost_gray(t),
        DecompositionKind::TrailingWhiteRun => Ok(trailing_white_run(t)),
        DecompositionKind::BeforeTail => split_before_tail(t),
        DecompositionKind::LastTwoGrays => split_last_two_grays(t),
    }
}

/// Removes the final piece. For `n >= k` it is never the black square.
pub fn split_last_piece(t: &Tiling) -> Result<Decomposition, DecompositionError> {
    let (k, n) = (t.k(), t.n());
    if n < k {
        return Err(DecompositionError::BoardTooSmall { n, min: k });
    }
    let (last, rest) = t.pieces().split_last().expect("non-empty tiling");
    Ok(Decomposition::new(
        DecompositionKind::LastPiece,
        k,
        rest.to_vec(),
        vec![*last],
    ))
}

/// Removes the rightmost gray and the `j` whites after it.
pub fn split_rightmost_gray(t: &Tiling) -> Result<Decomposition, DecompositionError> {
    let pieces = t.pieces();
    let at = pieces
        .iter()
        .rposition(|p| *p == Piece::Gray)
        .ok_or(DecompositionError::NoGrayPresent)?;
    let j = pieces.len() - at - 1;
    Ok(Decomposition::new(
        DecompositionKind::RightmostGray,
        t.k(),
        pieces[..at].to_vec(),
        pieces[at..].to_vec(),
    )
    .with("j", j))
}

/// Removes the maximal run of trailing whites (`r` may be zero).
pub fn trailing_white_run(t: &Tiling) -> Decomposition {
    let pieces = t.pieces();
    let r = pieces.iter().rev().take_while(|p| **p == Piece::White).count();
    let split = pieces.len() - r;
    Decomposition::new(
        DecompositionKind::TrailingWhiteRun,
        t.k(),
        pieces[..split].to_vec(),
        pieces[split..].to_vec(),
    )
    .with("r", r)
}

/// Removes the single piece just before the tail of a type-B tiling.
///
/// A white or gray removal is checked to leave a type-B tiling of the shorter
/// board, and [`DecompositionError::ReducedNotTypeB`] reports when it does
/// not. A black square before the tail (possible when `n <= 3k - 2`) is
/// returned as its own case with no type-B check on the remainder.
pub fn split_before_tail(t: &Tiling) -> Result<Decomposition, DecompositionError> {
    let k = t.k();
    let tail = tilings::tail(t)?;
    if tail.start_piece_index == 0 {
        return Err(DecompositionError::NoPieceBeforeTail);
    }
    let at = tail.start_piece_index - 1;
    let removed = t.pieces()[at];
    let mut remainder = t.pieces().to_vec();
    remainder.remove(at);
    if removed != Piece::Black {
        let reduced_n = t.n() - removed.width(k);
        if !is_type_b(k, reduced_n, &remainder) {
            return Err(DecompositionError::ReducedNotTypeB {
                removed,
                remainder: code_of(&remainder),
                reduced_n,
            });
        }
    }
    Ok(
        Decomposition::new(DecompositionKind::BeforeTail, k, remainder, vec![removed])
            .with("tail_len", tail.len(k)),
    )
}

/// Removes the closing `[gray, w^i, gray, w^j]` block.
pub fn split_last_two_grays(t: &Tiling) -> Result<Decomposition, DecompositionError> {
    let pieces = t.pieces();
    let grays: Vec<usize> = pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| **p == Piece::Gray)
        .map(|(idx, _)| idx)
        .collect();
    let [.., second_last, last] = grays[..] else {
        return Err(DecompositionError::FewerThanTwoGrays);
    };
    let i = last - second_last - 1;
    let j = pieces.len() - last - 1;
    Ok(Decomposition::new(
        DecompositionKind::LastTwoGrays,
        t.k(),
        pieces[..second_last].to_vec(),
        pieces[second_last..].to_vec(),
    )
    .with("i", i)
    .with("j", j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilings::{decode, parse_pieces};

    fn tiling(k: usize, code: &str) -> Tiling {
        let pieces = parse_pieces(code).unwrap();
        let n = total_width(k, &pieces) - 1;
        Tiling::new(k, n, pieces).unwrap()
    }

    fn code(p: &[Piece]) -> String {
        code_of(p)
    }

    #[test]
    fn last_piece_examples() {
        let d = split_last_piece(&tiling(2, "bgww")).unwrap();
        assert_eq!((code(&d.remainder), code(&d.removed)), ("bgw".into(), "w".into()));
        let d = split_last_piece(&tiling(2, "bwg")).unwrap();
        assert_eq!((code(&d.remainder), code(&d.removed)), ("bw".into(), "g".into()));
        assert_eq!(d.remainder_n(), 1);
        assert_eq!(
            split_last_piece(&tiling(3, "wbw")).unwrap_err(),
            DecompositionError::BoardTooSmall { n: 2, min: 3 }
        );
    }

    #[test]
    fn rightmost_gray_examples() {
        let d = split_rightmost_gray(&tiling(2, "bwgw")).unwrap();
        assert_eq!(code(&d.remainder), "bw");
        assert_eq!(code(&d.removed), "gw");
        assert_eq!(d.param("j"), Some(1));
        let d = split_rightmost_gray(&tiling(3, "wbg")).unwrap();
        assert_eq!(code(&d.remainder), "wb");
        assert_eq!(d.param("j"), Some(0));
        assert_eq!(
            split_rightmost_gray(&tiling(3, "bww")).unwrap_err(),
            DecompositionError::NoGrayPresent
        );
    }

    #[test]
    fn trailing_white_examples() {
        assert_eq!(trailing_white_run(&tiling(3, "bwgww")).param("r"), Some(2));
        assert_eq!(trailing_white_run(&tiling(2, "bg")).param("r"), Some(0));
        let d = trailing_white_run(&tiling(2, "bww"));
        assert_eq!(code(&d.remainder), "b");
    }

    #[test]
    fn before_tail_examples() {
        let t = decode(3, 7, "wwbgww").unwrap();
        let d = split_before_tail(&t).unwrap();
        assert_eq!(code(&d.removed), "g");
        assert_eq!(code(&d.remainder), "wwbww");
        assert_eq!(d.remainder_n(), 4);
        assert_eq!(d.reassemble(), t.pieces());

        let t = decode(2, 4, "bwwg").unwrap();
        let d = split_before_tail(&t).unwrap();
        assert_eq!(code(&d.removed), "w");
        assert_eq!(code(&d.remainder), "bwg");
        assert_eq!(d.param("tail_len"), Some(2));
    }

    #[test]
    fn before_tail_black_case() {
        let t = decode(2, 4, "wbwg").unwrap();
        let d = split_before_tail(&t).unwrap();
        assert_eq!(d.removed, [Piece::Black]);
        assert_eq!(d.reassemble(), t.pieces());
    }

    #[test]
    fn before_tail_rejects_degenerate_boards() {
        let t = decode(2, 2, "bg").unwrap();
        assert_eq!(
            split_before_tail(&t).unwrap_err(),
            DecompositionError::Tiling(TilingError::BoardTooSmall { n: 2, min: 4 })
        );
        let t = decode(2, 4, "bgg").unwrap();
        assert!(matches!(
            split_before_tail(&t),
            Err(DecompositionError::Tiling(TilingError::NotTypeB(_)))
        ));
    }

    #[test]
    fn last_two_grays_examples() {
        let d = split_last_two_grays(&tiling(2, "bwggw")).unwrap();
        assert_eq!((d.param("i"), d.param("j")), (Some(0), Some(1)));
        assert_eq!(code(&d.remainder), "bw");
        let d = split_last_two_grays(&tiling(2, "bgwgww")).unwrap();
        assert_eq!((d.param("i"), d.param("j")), (Some(1), Some(2)));
        assert_eq!(code(&d.removed), "gwgww");
        assert_eq!(
            split_last_two_grays(&tiling(2, "bwg")).unwrap_err(),
            DecompositionError::FewerThanTwoGrays
        );
    }

    #[test]
    fn record_format() {
        let d = split_rightmost_gray(&tiling(2, "bwgw")).unwrap();
        assert_eq!(d.record(), "kind=rightmost-gray k=2 remainder=bw removed=gw j=1");
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in DecompositionKind::ALL {
            assert_eq!(kind.name().parse::<DecompositionKind>().unwrap(), kind);
        }
        assert!("middle".parse::<DecompositionKind>().is_err());
    }
}
