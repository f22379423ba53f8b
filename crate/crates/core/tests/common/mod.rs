//! Test-only brute force, written without the library's enumerator or
//! predicates.

#![allow(dead_code)]

/// Every word over {b, g, w} whose pieces cover exactly `n + 1` cells, with no
/// pruning on the black square.
pub fn all_covers(k: usize, n: usize) -> Vec<String> {
    fn go(k: usize, left: usize, word: &mut String, out: &mut Vec<String>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for (c, w) in [('b', 1), ('g', k), ('w', 1)] {
            if w <= left {
                word.push(c);
                go(k, left - w, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, n + 1, &mut String::new(), &mut out);
    out
}

/// Paints the board cell by cell.
pub fn cells(k: usize, word: &str) -> Vec<char> {
    word.chars()
        .flat_map(|c| std::iter::repeat_n(c, if c == 'g' { k } else { 1 }))
        .collect()
}

pub fn naive_type_a(k: usize, word: &str) -> bool {
    let painted = cells(k, word);
    let blacks: Vec<usize> = painted
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == 'b')
        .map(|(i, _)| i + 1)
        .collect();
    blacks.len() == 1 && blacks[0] <= k
}

pub fn naive_type_b(k: usize, n: usize, word: &str) -> bool {
    if !naive_type_a(k, word) {
        return false;
    }
    let pieces: Vec<char> = word.chars().collect();
    if n < k {
        true
    } else if n < 2 * k {
        let after: Vec<char> = pieces.iter().skip_while(|c| **c != 'b').skip(1).copied().collect();
        after.len() > n - k && after.iter().filter(|c| **c == 'w').count() >= n - k
    } else {
        pieces.len() >= k && pieces.iter().rev().take(k).filter(|c| **c == 'w').count() >= k - 1
    }
}

pub fn naive_a(k: usize, n: usize) -> Vec<String> {
    let mut v: Vec<String> = all_covers(k, n).into_iter().filter(|w| naive_type_a(k, w)).collect();
    v.sort();
    v
}

pub fn naive_b(k: usize, n: usize) -> Vec<String> {
    let mut v: Vec<String> = all_covers(k, n)
        .into_iter()
        .filter(|w| naive_type_b(k, n, w))
        .collect();
    v.sort();
    v
}

/// `F(k, n)` and `L(k, n)` from their definitions, small `n` only.
pub fn small_f(k: usize, n: usize) -> u64 {
    let mut v: Vec<u64> = Vec::new();
    for m in 0..=n {
        v.push(if m < k { m as u64 + 1 } else { v[m - 1] + v[m - k] });
    }
    v[n]
}

pub fn small_l(k: usize, n: usize) -> u64 {
    if n < 2 * k {
        n as u64 + 1
    } else {
        (k as u64 - 1) * small_f(k, n - (2 * k - 1)) + small_f(k, n - (k - 1))
    }
}

/// Table 1 rows as printed, n = 0..=11.
pub const TABLE_FN: [u64; 12] = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];
pub const TABLE_F3: [u64; 12] = [1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60, 88];
pub const TABLE_F4: [u64; 12] = [1, 2, 3, 4, 5, 7, 10, 14, 19, 26, 36, 50];
pub const TABLE_LN: [u64; 12] = [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199];
pub const TABLE_L3: [u64; 12] = [1, 2, 3, 4, 5, 6, 10, 15, 21, 31, 46, 67];
pub const TABLE_L4: [u64; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 13, 19, 26, 34];
