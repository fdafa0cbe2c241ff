//! Sign bookkeeping for permutations of graded elements.

use super::space::Parity;
use crate::error::{Error, Result};

/// Koszul sign of moving graded elements by a permutation.
///
/// `permutation[i]` is the (0-based) slot that element `i` is moved to. The
/// result is `(-1)^m` where `m` counts the pairs of odd elements whose
/// relative order is reversed.
pub fn koszul_sign(permutation: &[usize], parities: &[Parity]) -> Result<i8> {
    if permutation.len() != parities.len() {
        return Err(Error::Input(format!(
            "permutation of length {} with {} parities",
            permutation.len(),
            parities.len()
        )));
    }
    check_bijection(permutation)?;
    let mut sign = 1i8;
    for i in 0..permutation.len() {
        for j in i + 1..permutation.len() {
            if permutation[i] > permutation[j] && parities[i].is_odd() && parities[j].is_odd() {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Ordinary sign of a permutation (destination convention as above).
pub fn permutation_sign(permutation: &[usize]) -> Result<i8> {
    check_bijection(permutation)?;
    let mut sign = 1i8;
    for i in 0..permutation.len() {
        for j in i + 1..permutation.len() {
            if permutation[i] > permutation[j] {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

fn check_bijection(permutation: &[usize]) -> Result<()> {
    let mut seen = vec![false; permutation.len()];
    for &p in permutation {
        if p >= permutation.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Input(format!("{permutation:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Sign picked up by a graded-antisymmetric map when its arguments are
/// permuted: `l(x_σ) = sign · l(x)`, where the permuted list puts element
/// `i` at slot `permutation[i]`.
pub(crate) fn antisymmetric_sign(permutation: &[usize], parities: &[Parity]) -> i8 {
    let mut sign = 1i8;
    for i in 0..permutation.len() {
        for j in i + 1..permutation.len() {
            if permutation[i] > permutation[j] {
                sign = -sign;
                if parities[i].is_odd() && parities[j].is_odd() {
                    sign = -sign;
                }
            }
        }
    }
    sign
}

/// Graded-symmetric counterpart of [`antisymmetric_sign`].
pub(crate) fn symmetric_sign(permutation: &[usize], parities: &[Parity]) -> i8 {
    let mut sign = 1i8;
    for i in 0..permutation.len() {
        for j in i + 1..permutation.len() {
            if permutation[i] > permutation[j] && parities[i].is_odd() && parities[j].is_odd() {
                sign = -sign;
            }
        }
    }
    sign
}

/// All `(i, n-i)` unshuffles of `0..n`: the first `i` entries increase and
/// the remaining `n-i` entries increase. Each is returned as the ordered
/// list of original positions.
pub(crate) fn unshuffles(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == i {
            let mut order = pick.clone();
            order.extend((0..n).filter(|k| !pick.contains(k)));
            out.push(order);
            return;
        }
        for k in start..n {
            pick.push(k);
            rec(k + 1, n, i, pick, out);
            pick.pop();
        }
    }
    rec(0, n, i, &mut pick, &mut out);
    out
}

/// Sign `χ` of reordering a list of graded elements into `order` (a list of
/// original positions) under graded antisymmetry: the ordinary sign times
/// the Koszul sign.
pub(crate) fn reorder_sign(order: &[usize], parities: &[Parity]) -> i8 {
    let mut sign = 1i8;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                sign = -sign;
                if parities[order[a]].is_odd() && parities[order[b]].is_odd() {
                    sign = -sign;
                }
            }
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Parity::{Even as E, Odd as O};

    #[test]
    fn small_cases() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[O, O, O]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[O, O]).unwrap(), -1);
        assert_eq!(koszul_sign(&[1, 0], &[O, E]).unwrap(), 1);
        assert_eq!(koszul_sign(&[2, 0, 1], &[O, O, E]).unwrap(), -1);
        assert!(koszul_sign(&[0, 1], &[O]).is_err());
        assert!(koszul_sign(&[0, 0], &[O, O]).is_err());
    }

    // Independent oracle: realise the permutation by bubble sort on the
    // target slots and count adjacent odd/odd swaps.
    fn bubble_oracle(perm: &[usize], par: &[Parity]) -> i8 {
        let mut items: Vec<(usize, Parity)> = perm.iter().copied().zip(par.iter().copied()).collect();
        let mut sign = 1;
        for _ in 0..items.len() {
            for k in 0..items.len().saturating_sub(1) {
                if items[k].0 > items[k + 1].0 {
                    if items[k].1.is_odd() && items[k + 1].1.is_odd() {
                        sign = -sign;
                    }
                    items.swap(k, k + 1);
                }
            }
        }
        sign
    }

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(4, 2).len(), 6);
        assert_eq!(unshuffles(3, 0), vec![vec![0, 1, 2]]);
        assert_eq!(unshuffles(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(permutations(4).len(), 24);
    }

    proptest! {
        #[test]
        fn matches_bubble_oracle(seed in prop::collection::vec((0u8..2, 0u32..1000), 1..7)) {
            let par: Vec<Parity> = seed.iter().map(|(p, _)| if *p == 1 { O } else { E }).collect();
            let mut idx: Vec<usize> = (0..seed.len()).collect();
            idx.sort_by_key(|&i| (seed[i].1, i));
            // idx lists elements in target order; invert to destination form
            let mut perm = vec![0; idx.len()];
            for (slot, &elem) in idx.iter().enumerate() {
                perm[elem] = slot;
            }
            prop_assert_eq!(koszul_sign(&perm, &par).unwrap(), bubble_oracle(&perm, &par));
            let sgn = permutation_sign(&perm).unwrap();
            prop_assert_eq!(antisymmetric_sign(&perm, &par), sgn * koszul_sign(&perm, &par).unwrap());
            // reorder_sign uses the list convention on the same rearrangement
            prop_assert_eq!(reorder_sign(&idx, &par), antisymmetric_sign(&perm, &par));
        }
    }
}
