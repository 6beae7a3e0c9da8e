//! Subset enumeration helpers shared by the ideal and matroid builders.

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of the given items, preserving item order.
pub fn choose<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    k_subsets(items.len(), k)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| items[i].clone()).collect())
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Mixed-radix enumeration of all joint states for the given cardinalities,
/// last coordinate varying fastest. States are 0-based.
pub fn joint_states(cards: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = cards.iter().product();
    let mut out = Vec::with_capacity(total);
    if cards.iter().any(|&c| c == 0) {
        return out;
    }
    let mut cur = vec![0; cards.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for pos in (0..cards.len()).rev() {
            cur[pos] += 1;
            if cur[pos] < cards[pos] {
                break;
            }
            cur[pos] = 0;
        }
    }
    out
}
