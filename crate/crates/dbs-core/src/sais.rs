//! Suffix array construction by induced sorting (SA-IS), linear time.
//!
//! The input must end with a unique, lexicographically smallest sentinel.
//! Output positions are 0-based; callers layer their own indexing on top.

const EMPTY: u32 = u32::MAX;

/// Builds the suffix array of `text`. The last byte must be a unique
/// sentinel strictly smaller than every other byte.
pub(crate) fn suffix_array(text: &[u8]) -> Vec<u32> {
    debug_assert!(!text.is_empty());
    debug_assert!(text.len() < EMPTY as usize);
    let s: Vec<u32> = text.iter().map(|&b| u32::from(b)).collect();
    sais(&s, 256)
}

/// Recursive core over an integer alphabet `0..k`; `s` ends with the unique
/// smallest symbol 0.
fn sais(s: &[u32], k: usize) -> Vec<u32> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    if n == 2 {
        return vec![1, 0];
    }

    // Type classification: S-type iff the suffix is smaller than its successor.
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut bucket_sizes = vec![0u32; k];
    for &c in s {
        bucket_sizes[c as usize] += 1;
    }

    // First pass: drop LMS positions at their bucket tails in any order;
    // induction then sorts the LMS substrings.
    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_tails(&bucket_sizes);
    for i in 1..n {
        if is_lms(i) {
            let c = s[i] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = i as u32;
        }
    }
    induce(s, &mut sa, &is_s, &bucket_sizes);

    // Name the LMS substrings in their induced (sorted) order.
    let lms_positions: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();
    let mut lms_rank = vec![EMPTY; n];
    for (idx, &p) in lms_positions.iter().enumerate() {
        lms_rank[p as usize] = idx as u32;
    }
    let mut names = vec![EMPTY; lms_positions.len()];
    let mut name = 0u32;
    let mut prev = EMPTY;
    for &p in sa.iter() {
        if p == EMPTY || !is_lms(p as usize) {
            continue;
        }
        if prev != EMPTY && !lms_substrings_equal(s, &is_s, prev as usize, p as usize) {
            name += 1;
        }
        names[lms_rank[p as usize] as usize] = name;
        prev = p;
    }
    let distinct = name as usize + 1;

    // Order the LMS suffixes, recursing when substring names collide.
    let lms_order: Vec<u32> = if distinct == lms_positions.len() {
        let mut order = vec![0u32; lms_positions.len()];
        for (idx, &nm) in names.iter().enumerate() {
            order[nm as usize] = lms_positions[idx];
        }
        order
    } else {
        let reduced_sa = sais(&names, distinct);
        reduced_sa
            .iter()
            .map(|&ri| lms_positions[ri as usize])
            .collect()
    };

    // Final pass: seed with LMS suffixes in sorted order, induce the rest.
    sa.fill(EMPTY);
    let mut tails = bucket_tails(&bucket_sizes);
    for &p in lms_order.iter().rev() {
        let c = s[p as usize] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p;
    }
    induce(s, &mut sa, &is_s, &bucket_sizes);
    sa
}

fn bucket_heads(sizes: &[u32]) -> Vec<u32> {
    let mut heads = Vec::with_capacity(sizes.len());
    let mut sum = 0u32;
    for &sz in sizes {
        heads.push(sum);
        sum += sz;
    }
    heads
}

fn bucket_tails(sizes: &[u32]) -> Vec<u32> {
    let mut tails = Vec::with_capacity(sizes.len());
    let mut sum = 0u32;
    for &sz in sizes {
        sum += sz;
        tails.push(sum);
    }
    tails
}

fn induce(s: &[u32], sa: &mut [u32], is_s: &[bool], bucket_sizes: &[u32]) {
    let n = s.len();

    // L-type, left to right.
    let mut heads = bucket_heads(bucket_sizes);
    for i in 0..n {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p as usize - 1;
        if !is_s[j] {
            let c = s[j] as usize;
            sa[heads[c] as usize] = j as u32;
            heads[c] += 1;
        }
    }

    // S-type, right to left, overwriting the seeded tail slots.
    let mut tails = bucket_tails(bucket_sizes);
    for i in (0..n).rev() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p as usize - 1;
        if is_s[j] {
            let c = s[j] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = j as u32;
        }
    }
}

/// Two LMS substrings are equal iff they have the same symbols and the same
/// LMS boundaries up to and including their terminating LMS position.
fn lms_substrings_equal(s: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == b {
        return true;
    }
    // The sentinel substring is unique.
    if a == n - 1 || b == n - 1 {
        return false;
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];
    let mut d = 0;
    loop {
        if s[a + d] != s[b + d] {
            return false;
        }
        if d > 0 {
            let la = is_lms(a + d);
            let lb = is_lms(b + d);
            if la != lb {
                return false;
            }
            if la && lb {
                return true;
            }
        }
        d += 1;
        if a + d >= n || b + d >= n {
            // Only the sentinel suffix runs off the end, handled above.
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(text: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by_key(|&i| &text[i as usize..]);
        sa
    }

    fn check(text: &[u8]) {
        assert_eq!(suffix_array(text), brute_force(text), "text={text:?}");
    }

    #[test]
    fn tiny_inputs() {
        check(&[0]);
        check(&[1, 0]);
        check(&[1, 1, 0]);
        check(&[2, 1, 0]);
        check(&[1, 2, 0]);
    }

    #[test]
    fn repeated_runs() {
        check(&[1, 1, 1, 1, 1, 0]);
        check(&[2, 2, 1, 1, 2, 2, 1, 1, 0]);
        check(&[1, 2, 1, 2, 1, 2, 1, 2, 0]);
    }

    #[test]
    fn exhaustive_small_alphabet() {
        // Every text over {1,2,3} up to length 8, sentinel appended.
        for len in 1..=8usize {
            let mut text = vec![1u8; len + 1];
            text[len] = 0;
            loop {
                check(&text);
                // odometer increment over symbols 1..=3
                let mut i = 0;
                while i < len {
                    if text[i] < 3 {
                        text[i] += 1;
                        break;
                    }
                    text[i] = 1;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn pseudo_random_long() {
        let mut state = 0x243F6A8885A308D3u64;
        let mut text: Vec<u8> = (0..4096)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 15) as u8 + 1
            })
            .collect();
        text.push(0);
        check(&text);
    }

    #[test]
    fn full_byte_range() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut text: Vec<u8> = (0..2048)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 255) as u8 + 1
            })
            .collect();
        text.push(0);
        check(&text);
    }
}
