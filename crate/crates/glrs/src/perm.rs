//! Permutation enumeration with inversion counts.

/// All permutations of `1..=n` as vectors, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut items: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Number of inversions `l(sigma)`: pairs i < j with sigma(i) > sigma(j).
pub fn inversions(sigma: &[u8]) -> i64 {
    let mut count = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_lengths() {
        let p3 = permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(inversions(&[1, 2, 3]), 0);
        assert_eq!(inversions(&[3, 2, 1]), 3);
        assert_eq!(inversions(&[2, 3, 1]), 2);
        // sum over S_n of x^{l} at x=1 is n!
        let total: i64 = p3.iter().map(|p| inversions(p)).sum();
        assert_eq!(total, 9); // 0+1+1+2+2+3
    }
}
