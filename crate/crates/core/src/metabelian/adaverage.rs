//! The identity `sum_w ad_w = C(i+j, i) tau_{i,j} + (i+j-1)!/((i-1)! j!) ad_sigma_{i-1,j-1}`,
//! summing over all words `w` with `i` letters `B` and `j` letters `A`.
//!
//! Everything here has integer entries, so operators are sparse maps from
//! basis index to `i64` and words are enumerated by brute force.

use std::collections::BTreeMap;

use serde::Serialize;

use super::elt::Basis;

type Vector = BTreeMap<usize, i64>;

fn add_into(acc: &mut Vector, b: Basis, c: i64, depth: usize) {
    if c == 0 || b.weight() > depth {
        return;
    }
    let e = acc.entry(b.index()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&b.index());
    }
}

fn ad_letter(letter: Basis, v: &Vector, depth: usize) -> Vector {
    let mut out = Vector::new();
    for (&i, &c) in v {
        if let Some((b, sign)) = Basis::ad_letter(letter, Basis::from_index(i)) {
            add_into(&mut out, b, sign * c, depth);
        }
    }
    out
}

/// `[sigma_{r,s}, e]` on a basis vector.
fn ad_sigma(r: usize, s: usize, b: Basis, depth: usize) -> Vector {
    let mut out = Vector::new();
    match b {
        Basis::A => add_into(&mut out, Basis::Sigma(r, s + 1), -1, depth),
        Basis::B => add_into(&mut out, Basis::Sigma(r + 1, s), -1, depth),
        Basis::Sigma(..) => {}
    }
    out
}

fn multinomial(parts: &[usize]) -> i64 {
    let mut acc: i64 = 1;
    let mut total = 0usize;
    for &p in parts {
        for k in 1..=p {
            total += 1;
            acc = acc * total as i64 / k as i64;
        }
    }
    acc
}

/// Result of checking the identity for one `(i, j)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdaverageCheck {
    pub i: usize,
    pub j: usize,
    pub words: usize,
    pub holds: bool,
    /// `(row, column, lhs, rhs)` for each differing entry.
    pub mismatches: Vec<(String, String, i64, i64)>,
}

/// Checks the identity for `i` letters `B` and `j` letters `A`, as operators
/// on the algebra truncated at `depth`.
pub fn adaverage(i: usize, j: usize, depth: usize) -> AdaverageCheck {
    let n = i + j;
    let words: Vec<u32> = (0u32..1 << n).filter(|w| w.count_ones() as usize == i).collect();
    let tau = multinomial(&[i, j]);
    let side = if i >= 1 && j >= 1 { multinomial(&[i - 1, j]) } else { 0 };
    let mut mismatches = Vec::new();
    for col in 0..Basis::dim(depth) {
        let b = Basis::from_index(col);
        let mut lhs = Vector::new();
        for &w in &words {
            let mut v = Vector::new();
            add_into(&mut v, b, 1, depth);
            // bit k set means the k-th letter from the left is B; apply right to left
            for k in (0..n).rev() {
                let letter = if w >> (n - 1 - k) & 1 == 1 { Basis::B } else { Basis::A };
                v = ad_letter(letter, &v, depth);
            }
            for (idx, c) in v {
                add_into(&mut lhs, Basis::from_index(idx), c, depth);
            }
        }
        let mut rhs = Vector::new();
        let mut v = Vector::new();
        add_into(&mut v, b, 1, depth);
        for _ in 0..j {
            v = ad_letter(Basis::A, &v, depth);
        }
        for _ in 0..i {
            v = ad_letter(Basis::B, &v, depth);
        }
        for (idx, c) in v {
            add_into(&mut rhs, Basis::from_index(idx), tau * c, depth);
        }
        if side != 0 {
            for (idx, c) in ad_sigma(i - 1, j - 1, b, depth) {
                add_into(&mut rhs, Basis::from_index(idx), side * c, depth);
            }
        }
        let rows: std::collections::BTreeSet<usize> = lhs.keys().chain(rhs.keys()).copied().collect();
        for row in rows {
            let l = lhs.get(&row).copied().unwrap_or(0);
            let r = rhs.get(&row).copied().unwrap_or(0);
            if l != r {
                mismatches.push((Basis::from_index(row).label(), b.label(), l, r));
            }
        }
    }
    AdaverageCheck {
        i,
        j,
        words: words.len(),
        holds: mismatches.is_empty(),
        mismatches,
    }
}

/// Runs [`adaverage`] for every `i + j <= max`, at depth `max + 2`.
pub fn adaverage_all(max: usize) -> Vec<AdaverageCheck> {
    let mut out = Vec::new();
    for t in 0..=max {
        for i in 0..=t {
            out.push(adaverage(i, t - i, max + 2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_one() {
        let c = adaverage(1, 1, 5);
        assert_eq!(c.words, 2);
        assert!(c.holds, "{:?}", c.mismatches);
    }

    #[test]
    fn all_small() {
        for c in adaverage_all(6) {
            assert!(c.holds, "({}, {}): {:?}", c.i, c.j, c.mismatches);
        }
    }

    #[test]
    fn wrong_coefficient_is_caught() {
        assert_eq!(multinomial(&[2, 3]), 10);
        assert_eq!(multinomial(&[1, 3]), 4);
    }
}
