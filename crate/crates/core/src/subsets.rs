//! Small combinatorial helpers on subsets.

/// All `k`-subsets of `{1..=n}`, each sorted, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Bitmask (bit `c-1` for element `c`) of a set of 1-based elements.
pub fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &c| m | 1 << (c - 1))
}

/// Sorted 1-based elements of a bitmask.
pub fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// All submasks of `within` with exactly `size` bits, in increasing order.
pub fn submasks_of_size(within: u32, size: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut sub = within;
    loop {
        if sub.count_ones() == size {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & within;
    }
    out.reverse();
    out
}

/// Sign of `E_a ∧ E_b` relative to `E_{a ∪ b}`; zero if the sets meet.
pub fn wedge_sign(a: u32, b: u32) -> i64 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inv = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inv += (a >> (y + 1)).count_ones();
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(4, 2)[0], vec![1, 2]);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(9, 3).len(), 84);
    }

    #[test]
    fn submasks() {
        assert_eq!(submasks_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(submasks_of_size(0b101, 0), vec![0]);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(mask_of(&[1]), mask_of(&[2])), 1);
        assert_eq!(wedge_sign(mask_of(&[2]), mask_of(&[1])), -1);
        assert_eq!(wedge_sign(mask_of(&[1]), mask_of(&[1])), 0);
        assert_eq!(wedge_sign(mask_of(&[2, 3]), mask_of(&[1])), 1);
        assert_eq!(wedge_sign(mask_of(&[1, 3, 4]), mask_of(&[2])), 1);
        assert_eq!(wedge_sign(mask_of(&[1, 3]), mask_of(&[2])), -1);
    }
}
