//! Brute-force reference filters, kept independent of the library code paths.

/// All permutations of 1..=n in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let mut i = n;
        while i >= 2 && cur[i - 2] >= cur[i - 1] {
            i -= 1;
        }
        if i < 2 {
            break;
        }
        let pivot = i - 2;
        let mut j = n - 1;
        while cur[j] <= cur[pivot] {
            j -= 1;
        }
        cur.swap(pivot, j);
        cur[pivot + 1..].reverse();
    }
    out
}

fn sign(x: i64) -> i64 {
    x.signum()
}

/// Naive Sturm test: fixed endpoints, pairwise non-crossing arcs on each side,
/// and nonnegative Morse numbers from the recursion along the axis.
pub fn naive_is_sturm(sigma: &[usize]) -> bool {
    let n = sigma.len();
    if n.is_multiple_of(2) || sigma[0] != 1 || sigma[n - 1] != n {
        return false;
    }
    // curve order: k-th crossing along the curve sits at axis position sigma^{-1}(k)
    let mut inv = vec![0usize; n + 1];
    for (j, &s) in sigma.iter().enumerate() {
        inv[s] = j + 1;
    }
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for k in 1..n {
        let (a, b) = (inv[k].min(inv[k + 1]), inv[k].max(inv[k + 1]));
        if k % 2 == 1 {
            upper.push((a, b));
        } else {
            lower.push((a, b));
        }
    }
    for arcs in [&upper, &lower] {
        for x in 0..arcs.len() {
            for y in 0..arcs.len() {
                let (a, b) = arcs[x];
                let (c, d) = arcs[y];
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
    }
    // Morse numbers along the axis (h1 = id)
    let mut morse = 0i64;
    for j in 1..n {
        let step = if (j + 1) % 2 == 0 { 1 } else { -1 };
        morse += step * sign(sigma[j] as i64 - sigma[j - 1] as i64);
        if morse < 0 {
            return false;
        }
    }
    true
}

/// All Sturm permutations of size n, by filtering every permutation.
pub fn naive_sturm_list(n: usize) -> Vec<Vec<usize>> {
    all_permutations(n)
        .into_iter()
        .filter(|s| naive_is_sturm(s))
        .collect()
}

/// Morse numbers along the axis by recursion (h1 = id), indexed by axis position.
pub fn naive_morse(sigma: &[usize]) -> Vec<i64> {
    let n = sigma.len();
    let mut out = vec![0i64; n];
    for j in 1..n {
        let step = if (j + 1) % 2 == 0 { 1 } else { -1 };
        out[j] = out[j - 1] + step * sign(sigma[j] as i64 - sigma[j - 1] as i64);
    }
    out
}
