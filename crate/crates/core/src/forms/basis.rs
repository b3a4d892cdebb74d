//! Bookkeeping for the canonical basis `dx^{i₁}∧…∧dx^{i_p}`, `i₁ < … < i_p`.
//!
//! A basis element is a bitmask of axes; components are stored in the
//! lexicographic order of their axis tuples.

pub(crate) type Mask = u8;

pub(crate) fn axes(mask: Mask) -> Vec<usize> {
    (0..8).filter(|&a| mask & (1 << a) != 0).collect()
}

pub(crate) fn mask_of(axes: &[usize]) -> Mask {
    axes.iter().fold(0, |m, &a| m | (1 << a))
}

/// Basis masks of `p`-forms in dimension `dim`, lexicographic in the axis tuples.
pub(crate) fn basis(dim: usize, p: usize) -> Vec<Mask> {
    fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Mask>) {
        if left == 0 {
            out.push(mask_of(cur));
            return;
        }
        for a in start..dim {
            cur.push(a);
            rec(a + 1, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= dim {
        rec(0, dim, p, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn position(dim: usize, p: usize, mask: Mask) -> usize {
    basis(dim, p)
        .iter()
        .position(|&m| m == mask)
        .expect("mask is a basis element")
}

/// Sign of sorting an axis list, or `None` when an axis repeats.
pub(crate) fn sort_sign(list: &[usize]) -> Option<f64> {
    let mut inversions = 0;
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if list[i] == list[j] {
                return None;
            }
            if list[i] > list[j] {
                inversions += 1;
            }
        }
    }
    Some(if inversions % 2 == 0 { 1.0 } else { -1.0 })
}

/// Sign of `dx^I ∧ dx^J` relative to the sorted basis element of `I ∪ J` (disjoint masks).
pub(crate) fn wedge_sign(i: Mask, j: Mask) -> f64 {
    let mut inversions = 0;
    for a in axes(i) {
        inversions += axes(j).iter().filter(|&&b| b < a).count();
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
