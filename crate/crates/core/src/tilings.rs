//! Tilings of a `1 x (n+1)` board by white squares, black squares and gray
//! `1 x k` rectangles.
//!
//! A *type-A* tiling has exactly one black square, sitting in one of the first
//! `k` cells; these are counted by `F(k, n)`. A *type-B* tiling is a type-A
//! tiling that also satisfies the Lucas-side conditions and is counted by
//! `L(k, n)`.
//!
//! Tilings are written one character per piece: `b`, `g`, `w`. Enumeration
//! order is lexicographic on that code.

use std::fmt;

use thiserror::Error;

/// Enumeration bound applied when nothing else is configured.
pub const DEFAULT_ENUM_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("invalid argument: k must be at least 2 (got k={0})")]
    InvalidK(usize),
    #[error("enumeration limit exceeded: n={n} > limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("malformed code: unexpected {found:?} at position {position}")]
    MalformedCode { found: char, position: usize },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("tiling {0} is not type-B")]
    NotTypeB(String),
    #[error("board too small: n={n}, need n >= {min}")]
    BoardTooSmall { n: usize, min: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    White,
    Black,
    Gray,
}

impl Piece {
    pub fn width(self, k: usize) -> usize {
        match self {
            Piece::White | Piece::Black => 1,
            Piece::Gray => k,
        }
    }

    pub fn code(self) -> char {
        match self {
            Piece::White => 'w',
            Piece::Black => 'b',
            Piece::Gray => 'g',
        }
    }

    pub fn from_code(c: char) -> Option<Piece> {
        match c {
            'w' => Some(Piece::White),
            'b' => Some(Piece::Black),
            'g' => Some(Piece::Gray),
            _ => None,
        }
    }
}

pub fn code_of(pieces: &[Piece]) -> String {
    pieces.iter().map(|p| p.code()).collect()
}

/// Parses a code string without checking any tiling invariant.
pub fn parse_pieces(s: &str) -> Result<Vec<Piece>, TilingError> {
    s.chars()
        .enumerate()
        .map(|(position, found)| {
            Piece::from_code(found).ok_or(TilingError::MalformedCode { found, position })
        })
        .collect()
}

pub fn total_width(k: usize, pieces: &[Piece]) -> usize {
    pieces.iter().map(|p| p.width(k)).sum()
}

/// 1-based cell where the first black piece starts, if any.
fn first_black_cell(k: usize, pieces: &[Piece]) -> Option<usize> {
    let mut cell = 1;
    for p in pieces {
        if *p == Piece::Black {
            return Some(cell);
        }
        cell += p.width(k);
    }
    None
}

/// A type-A tiling. Construction validates every invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    k: usize,
    board_length: usize,
    pieces: Vec<Piece>,
}

impl Tiling {
    pub fn new(k: usize, n: usize, pieces: Vec<Piece>) -> Result<Tiling, TilingError> {
        if k < 2 {
            return Err(TilingError::InvalidK(k));
        }
        let width = total_width(k, &pieces);
        if width != n + 1 {
            return Err(TilingError::InvariantViolation(format!(
                "pieces cover {width} cells, board has {}",
                n + 1
            )));
        }
        let blacks = pieces.iter().filter(|p| **p == Piece::Black).count();
        if blacks != 1 {
            return Err(TilingError::InvariantViolation(format!(
                "expected exactly one black square, found {blacks}"
            )));
        }
        let cell = first_black_cell(k, &pieces).expect("one black present");
        if cell > k {
            return Err(TilingError::InvariantViolation(format!(
                "black square at cell {cell}, must be within the first {k}"
            )));
        }
        Ok(Tiling {
            k,
            board_length: n + 1,
            pieces,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.board_length - 1
    }

    pub fn board_length(&self) -> usize {
        self.board_length
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn black_cell(&self) -> usize {
        black_cell(self)
    }

    pub fn gray_count(&self) -> usize {
        self.pieces.iter().filter(|p| **p == Piece::Gray).count()
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode(self))
    }
}

/// 1-based cell index of the black square.
pub fn black_cell(t: &Tiling) -> usize {
    first_black_cell(t.k, &t.pieces).expect("tiling invariant: one black square")
}

pub fn is_type_a(k: usize, n: usize, pieces: &[Piece]) -> bool {
    if k < 2 || total_width(k, pieces) != n + 1 {
        return false;
    }
    if pieces.iter().filter(|p| **p == Piece::Black).count() != 1 {
        return false;
    }
    matches!(first_black_cell(k, pieces), Some(c) if c <= k)
}

/// Type-A plus:
/// * `k <= n < 2k`: at least `n-k+1` pieces after the black square, and at
///   least `n-k` whites among all pieces after it;
/// * `n >= 2k`: at least `k` pieces exist and the last `k` contain at least
///   `k-1` whites.
pub fn is_type_b(k: usize, n: usize, pieces: &[Piece]) -> bool {
    if !is_type_a(k, n, pieces) {
        return false;
    }
    if n < k {
        return true;
    }
    if n < 2 * k {
        let black = pieces
            .iter()
            .position(|p| *p == Piece::Black)
            .expect("type-A has a black");
        let after = &pieces[black + 1..];
        let whites = after.iter().filter(|p| **p == Piece::White).count();
        return after.len() > n - k && whites >= n - k;
    }
    if pieces.len() < k {
        return false;
    }
    let whites = pieces[pieces.len() - k..]
        .iter()
        .filter(|p| **p == Piece::White)
        .count();
    whites + 1 >= k
}

fn check_enum_args(k: usize, n: usize, limit: usize) -> Result<(), TilingError> {
    if k < 2 {
        return Err(TilingError::InvalidK(k));
    }
    if n > limit {
        return Err(TilingError::LimitExceeded { n, limit });
    }
    Ok(())
}

/// Visits every type-A tiling of the `(k, n)` board in code order.
///
/// Depth-first search trying `b`, `g`, `w` in that order. No complete tiling
/// is a proper prefix of another (they all cover `n+1` cells), so preorder is
/// lexicographic order. Branches that have passed cell `k` without a black
/// square are cut.
pub fn for_each_type_a<F>(k: usize, n: usize, limit: usize, mut visit: F) -> Result<(), TilingError>
where
    F: FnMut(&[Piece]),
{
    check_enum_args(k, n, limit)?;
    let mut stack = Vec::with_capacity(n + 1);
    search(k, n + 1, 0, false, &mut stack, &mut visit);
    Ok(())
}

fn search<F>(k: usize, board: usize, used: usize, has_black: bool, stack: &mut Vec<Piece>, visit: &mut F)
where
    F: FnMut(&[Piece]),
{
    if used == board {
        if has_black {
            visit(stack);
        }
        return;
    }
    if !has_black && used >= k {
        return;
    }
    for piece in [Piece::Black, Piece::Gray, Piece::White] {
        let width = piece.width(k);
        if used + width > board {
            continue;
        }
        let black_now = match piece {
            Piece::Black if has_black => continue,
            Piece::Black => true,
            _ => has_black,
        };
        stack.push(piece);
        search(k, board, used + width, black_now, stack, visit);
        stack.pop();
    }
}

pub fn enumerate_type_a(k: usize, n: usize, limit: usize) -> Result<Vec<Tiling>, TilingError> {
    let mut out = Vec::new();
    for_each_type_a(k, n, limit, |p| {
        out.push(Tiling {
            k,
            board_length: n + 1,
            pieces: p.to_vec(),
        })
    })?;
    Ok(out)
}

/// Visits every type-B tiling in code order. Filters the type-A stream.
pub fn for_each_type_b<F>(k: usize, n: usize, limit: usize, mut visit: F) -> Result<(), TilingError>
where
    F: FnMut(&[Piece]),
{
    for_each_type_a(k, n, limit, |p| {
        if is_type_b(k, n, p) {
            visit(p)
        }
    })
}

pub fn enumerate_type_b(k: usize, n: usize, limit: usize) -> Result<Vec<Tiling>, TilingError> {
    let mut out = Vec::new();
    for_each_type_b(k, n, limit, |p| {
        out.push(Tiling {
            k,
            board_length: n + 1,
            pieces: p.to_vec(),
        })
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailSize {
    KMinus1,
    K,
}

/// Tail of a type-B tiling with `n >= 2k`.
///
/// `gray_offset` is the 1-based position of the gray piece counted from the
/// end of the tail, in `1..=k-1`. A gray that would be the tail's first piece
/// leaves `k-1` trailing whites, which is a size `k-1` tail instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TailDescriptor {
    pub size: TailSize,
    pub start_piece_index: usize,
    pub gray_offset: Option<usize>,
}

impl TailDescriptor {
    pub fn len(&self, k: usize) -> usize {
        match self.size {
            TailSize::KMinus1 => k - 1,
            TailSize::K => k,
        }
    }
}

pub fn tail(t: &Tiling) -> Result<TailDescriptor, TilingError> {
    let (k, n) = (t.k, t.n());
    if n < 2 * k {
        return Err(TilingError::BoardTooSmall { n, min: 2 * k });
    }
    if !is_type_b(k, n, &t.pieces) {
        return Err(TilingError::NotTypeB(encode(t)));
    }
    let len = t.pieces.len();
    if t.pieces[len - (k - 1)..].iter().all(|p| *p == Piece::White) {
        return Ok(TailDescriptor {
            size: TailSize::KMinus1,
            start_piece_index: len - (k - 1),
            gray_offset: None,
        });
    }
    let start = len - k;
    let from_start = t.pieces[start..]
        .iter()
        .position(|p| *p == Piece::Gray)
        .expect("type-B tail without k-1 trailing whites holds a gray");
    Ok(TailDescriptor {
        size: TailSize::K,
        start_piece_index: start,
        gray_offset: Some(k - from_start),
    })
}

pub fn encode(t: &Tiling) -> String {
    code_of(&t.pieces)
}

pub fn decode(k: usize, n: usize, s: &str) -> Result<Tiling, TilingError> {
    Tiling::new(k, n, parse_pieces(s)?)
}
