//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod geometry;

use matchflip::Matching;

/// Catalan numbers by the convolution recurrence, independent of the library.
pub fn catalan_table(max: usize) -> Vec<u128> {
    let mut c = vec![0u128; max + 1];
    c[0] = 1;
    for n in 1..=max {
        c[n] = (0..n).map(|i| c[i] * c[n - 1 - i]).sum();
    }
    c
}

/// Binomial coefficients from Pascal's triangle.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

/// Counts nonnegative lattice paths with `up` upsteps, `down` downsteps and
/// exactly `k` peaks, by dynamic programming over (height, peaks, last step).
pub fn lattice_paths_with_peaks(up: usize, down: usize, k: usize) -> u128 {
    // state[u][d][h-offset][peaks][last_up]
    let len = up + down;
    let mut state = std::collections::HashMap::<(usize, usize, usize, bool), u128>::new();
    state.insert((0, 0, 0, false), 1);
    for _ in 0..len {
        let mut next = std::collections::HashMap::new();
        for (&(u, d, peaks, last_up), &count) in &state {
            if u < up {
                *next.entry((u + 1, d, peaks, true)).or_insert(0) += count;
            }
            if d < down && u > d {
                let p = peaks + usize::from(last_up);
                *next.entry((u, d + 1, p, false)).or_insert(0) += count;
            }
        }
        state = next;
    }
    state.iter().filter(|(&(u, d, p, _), _)| u == up && d == down && p == k).map(|(_, &c)| c).sum()
}

/// All matchings of `2n` points by direct recursion on the partner of point 1.
pub fn brute_force_matchings(n: usize) -> Vec<Matching> {
    fn rec(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if points.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for j in (1..points.len()).step_by(2) {
            let inside = &points[1..j];
            let outside = &points[j + 1..];
            for a in rec(inside) {
                for b in rec(outside) {
                    let mut m = vec![(points[0], points[j])];
                    m.extend(a.iter().copied());
                    m.extend(b.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    let points: Vec<usize> = (1..=2 * n).collect();
    rec(&points)
        .into_iter()
        .map(|pairs| {
            let chords = pairs.into_iter().map(|(a, b)| matchflip::Chord::new(a, b).unwrap());
            Matching::from_chords(n, chords).unwrap()
        })
        .collect()
}
