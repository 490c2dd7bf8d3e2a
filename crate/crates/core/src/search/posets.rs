use std::collections::BTreeSet;

use crate::bitset::ElemSet;
use crate::order::{Carrier, FinPoset};

/// Calls `f` on every permutation of `0..m` (as a map old -> new).
pub(crate) fn for_each_perm(m: usize, mut f: impl FnMut(&[usize])) {
    fn go(perm: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize])) {
        let m = used.len();
        if perm.len() == m {
            f(perm);
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                go(perm, used, f);
                perm.pop();
                used[v] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(m), &mut vec![false; m], &mut f);
}

/// Up-sets of a relabelled order, as raw bits.
fn permuted_up(up: &[ElemSet], perm: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; up.len()];
    for (x, u) in up.iter().enumerate() {
        out[perm[x]] = ElemSet::from_iter(u.iter().map(|y| perm[y])).0;
    }
    out
}

fn canonical_up(up: &[ElemSet]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for_each_perm(up.len(), |perm| {
        let k = permuted_up(up, perm);
        if best.as_ref().is_none_or(|b| k > *b) {
            best = Some(k);
        }
    });
    best.unwrap_or_default()
}

/// All posets on `m` elements up to isomorphism, as up-sets in the
/// lexicographically greatest labelling, so a bottom, when present, is
/// element 0. Candidates are generated from natural labellings.
fn posets_up_to_iso(m: usize) -> Vec<Vec<ElemSet>> {
    fn down_closed(down: &[ElemSet], d: ElemSet) -> bool {
        d.iter().all(|x| down[x].is_subset(d))
    }
    fn go(j: usize, m: usize, down: &mut Vec<ElemSet>, seen: &mut BTreeSet<Vec<u64>>, out: &mut Vec<Vec<ElemSet>>) {
        if j == m {
            let up: Vec<ElemSet> =
                (0..m).map(|x| ElemSet::from_iter((0..m).filter(|&y| down[y].contains(x)))).collect();
            let key = canonical_up(&up);
            if seen.insert(key.clone()) {
                out.push(key.into_iter().map(ElemSet).collect());
            }
            return;
        }
        for mask in 0u64..1 << j {
            let d = ElemSet(mask);
            if down_closed(down, d) {
                down.push(d.with(j));
                go(j + 1, m, down, seen, out);
                down.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, m, &mut Vec::new(), &mut BTreeSet::new(), &mut out);
    out
}

/// Labels: `0` for a bottom, `1` for the top, letters for the rest.
pub(crate) fn standard_carrier(n: usize, has_bottom: bool) -> Carrier {
    let mut letters = "abcdefghijklmnopqrstuvwxyz".chars().map(String::from);
    let labels = (0..n)
        .map(|x| {
            if x == n - 1 {
                "1".to_string()
            } else if x == 0 && has_bottom {
                "0".to_string()
            } else {
                letters.next().expect("small carrier")
            }
        })
        .collect();
    Carrier::new(labels).expect("distinct labels")
}

/// All posets of size `n` with a top, up to isomorphism. The top is element
/// `n - 1` and a bottom, when present and distinct from the top, is element 0.
pub fn posets_with_top(n: usize) -> Vec<FinPoset> {
    if n == 0 {
        return Vec::new();
    }
    let top = n - 1;
    let mut out: Vec<FinPoset> = posets_up_to_iso(n - 1)
        .into_iter()
        .map(|up| {
            let mut up: Vec<ElemSet> = up.into_iter().map(|u| u.with(top)).collect();
            up.push(ElemSet::singleton(top));
            let has_bottom = n > 1 && up[0].len() == n;
            FinPoset::from_up_sets(standard_carrier(n, has_bottom), up).expect("generated order")
        })
        .collect();
    out.sort_by_key(|p| (std::cmp::Reverse(p.covers().len()), (0..n).map(|x| p.up(x).0).collect::<Vec<_>>()));
    out
}

/// Permutations of the carrier that preserve the order.
pub(crate) fn automorphisms(p: &FinPoset) -> Vec<Vec<usize>> {
    let n = p.size();
    let mut out = Vec::new();
    for_each_perm(n, |perm| {
        if (0..n).all(|x| p.up(x).iter().all(|y| p.leq(perm[x], perm[y]))) {
            out.push(perm.to_vec());
        }
    });
    out
}
