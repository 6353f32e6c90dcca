//! Oracles shared by the integration tests and the acceptance suite. They use
//! methods unrelated to the library code: Jacobi-Trudi expansion with
//! horizontal strips for LR coefficients, and floating-point eigenvalue sums
//! for character values.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Every `kappa'` with `kappa <= kappa' <= outer` and `kappa'/kappa` a
/// horizontal strip of `k` boxes.
fn horizontal_strips(kappa: &[usize], outer: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(outer.len());
    fn go(
        i: usize,
        left: usize,
        kappa: &[usize],
        outer: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == outer.len() {
            if left == 0 {
                out.push(trimmed(cur.clone()));
            }
            return;
        }
        let lo = kappa.get(i).copied().unwrap_or(0);
        // a horizontal strip never reaches past the old row above
        let cap = if i == 0 {
            outer[0]
        } else {
            outer[i].min(kappa.get(i - 1).copied().unwrap_or(0))
        };
        if cap < lo {
            return;
        }
        for v in lo..=cap.min(lo + left) {
            cur.push(v);
            go(i + 1, left - (v - lo), kappa, outer, cur, out);
            cur.pop();
        }
    }
    if kappa
        .iter()
        .enumerate()
        .any(|(i, &x)| x > outer.get(i).copied().unwrap_or(0))
    {
        return out;
    }
    go(0, k, kappa, outer, &mut cur, &mut out);
    out
}

/// `c^outer_{inner,content}` via `s_content = det(h_{content_i - i + j})`
/// and Pieri's rule for each `h`.
pub fn lr_oracle(outer: &[usize], inner: &[usize], content: &[usize]) -> i64 {
    let outer = trimmed(outer.to_vec());
    let inner = trimmed(inner.to_vec());
    let content = trimmed(content.to_vec());
    if outer.iter().sum::<usize>() != inner.iter().sum::<usize>() + content.iter().sum::<usize>() {
        return 0;
    }
    let l = content.len();
    // state: (columns used so far, current shape) -> signed count
    let mut states: HashMap<(u32, Vec<usize>), i64> = HashMap::new();
    states.insert((0, inner.clone()), 1);
    for i in 0..l {
        let mut next: HashMap<(u32, Vec<usize>), i64> = HashMap::new();
        for ((used, kappa), count) in states {
            for j in 0..l {
                if used & (1 << j) != 0 {
                    continue;
                }
                let k = content[i] as i64 - i as i64 + j as i64;
                if k < 0 {
                    continue;
                }
                let inversions = (j + 1..l).filter(|&c| used & (1 << c) != 0).count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                for strip in horizontal_strips(&kappa, &outer, k as usize) {
                    *next.entry((used | (1 << j), strip)).or_insert(0) += sign * count;
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|((_, kappa), _)| *kappa == outer)
        .map(|(_, c)| c)
        .sum()
}

pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn contained_in(outer: &[usize]) -> Vec<Vec<usize>> {
    fn go(i: usize, outer: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == outer.len() {
            out.push(trimmed(cur.clone()));
            return;
        }
        let cap = if i == 0 {
            outer[0]
        } else {
            outer[i].min(cur[i - 1])
        };
        for v in 0..=cap {
            cur.push(v);
            go(i + 1, outer, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, outer, &mut Vec::new(), &mut out);
    out
}

/// Character values `(chi(1), chi(u^p), chi(u^q), chi(u))` of a unit of order
/// `pq` whose eigenvalues are 1, primitive p-th, q-th and pq-th roots with the
/// given multiplicities, summed numerically.
pub fn eigenvalue_sums(mu: [i64; 4], p: u64, q: u64) -> [i64; 4] {
    let n = p * q;
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mult = |e: u64| match n / gcd(e, n) {
        1 => mu[0],
        o if o == p => mu[1],
        o if o == q => mu[2],
        _ => mu[3],
    };
    let value = |k: u64| -> i64 {
        let s: f64 = (0..n)
            .map(|e| mult(e) as f64 * (2.0 * PI * (e * k % n) as f64 / n as f64).cos())
            .sum();
        s.round() as i64
    };
    [value(0), value(p), value(q), value(1)]
}

/// `c^outer_{inner,content}` by trying every arrangement of the content
/// letters in the boxes of `outer/inner` and keeping the semistandard
/// fillings whose reverse reading word is a lattice word.
pub fn lr_brute_force(outer: &[usize], inner: &[usize], content: &[usize]) -> u64 {
    let row = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    if (0..inner.len()).any(|i| row(inner, i) > row(outer, i)) {
        return 0;
    }
    let boxes: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|i| (row(inner, i)..outer[i]).map(move |j| (i, j)))
        .collect();
    if boxes.len() != content.iter().sum::<usize>() {
        return 0;
    }
    let mut left: Vec<usize> = content.to_vec();
    let mut filling = vec![0usize; boxes.len()];
    let mut count = 0;
    fn place(
        k: usize,
        boxes: &[(usize, usize)],
        left: &mut [usize],
        filling: &mut [usize],
        count: &mut u64,
        check: &dyn Fn(&[usize]) -> bool,
    ) {
        if k == boxes.len() {
            if check(filling) {
                *count += 1;
            }
            return;
        }
        for letter in 0..left.len() {
            if left[letter] > 0 {
                left[letter] -= 1;
                filling[k] = letter + 1;
                place(k + 1, boxes, left, filling, count, check);
                left[letter] += 1;
            }
        }
    }
    let check = |f: &[usize]| -> bool {
        let at = |i: usize, j: usize| boxes.iter().position(|&b| b == (i, j)).map(|k| f[k]);
        for (k, &(i, j)) in boxes.iter().enumerate() {
            if at(i, j + 1).is_some_and(|right| right < f[k]) {
                return false;
            }
            if at(i + 1, j).is_some_and(|below| below <= f[k]) {
                return false;
            }
        }
        let mut seen = vec![0usize; content.len() + 2];
        for i in 0..outer.len() {
            for j in (row(inner, i)..outer[i]).rev() {
                let v = at(i, j).expect("box in shape");
                seen[v] += 1;
                if v > 1 && seen[v] > seen[v - 1] {
                    return false;
                }
            }
        }
        true
    };
    place(0, &boxes, &mut left, &mut filling, &mut count, &check);
    count
}
