//! Hook-length degrees of symmetric groups, used as a lower-bound oracle
//! for the largest degree of the alternating group.

use crate::error::{Error, Result};

/// Partitions of `m` in descending lexicographic order.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn conjugate(lambda: &[u32]) -> Vec<u32> {
    let width = lambda.first().copied().unwrap_or(0);
    (1..=width)
        .map(|j| lambda.iter().filter(|&&r| r >= j).count() as u32)
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn hook_degree(lambda: &[u32]) -> u128 {
    let m: u32 = lambda.iter().sum();
    let cols = conjugate(lambda);
    let mut num: u128 = (1..=m as u128).product();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = cols[j] as usize - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    // hooks divides m! exactly, so divide once at the end
    num /= hooks;
    num
}

/// `(partition, f_lambda, self-conjugate)` for every partition of `m`.
pub fn partition_degrees(m: u32) -> Vec<(Vec<u32>, u128, bool)> {
    partitions(m)
        .into_iter()
        .map(|l| {
            let f = hook_degree(&l);
            let sc = conjugate(&l) == l;
            (l, f, sc)
        })
        .collect()
}

/// Max over partitions of `f` (or `f/2` when self-conjugate). This is a
/// lower bound for the largest degree of `A_m`.
pub fn alternating_max_degree(m: u32) -> Result<u128> {
    if !(3..=16).contains(&m) {
        return Err(Error::domain(format!("m = {m} outside 3..=16")));
    }
    Ok(partition_degrees(m)
        .into_iter()
        .map(|(_, f, sc)| if sc { f / 2 } else { f })
        .max()
        .expect("m has partitions"))
}
