//! Shared fixtures and the brute-force oracle used across integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use missp::SetFamily;

/// Every nonempty sub-multiset sum, by enumerating all `2^m - 1` index masks.
pub fn brute_sums(items: &[u64]) -> BTreeSet<u64> {
    assert!(items.len() < 24, "oracle is exponential");
    (1u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .sum()
        })
        .collect()
}

pub fn brute_common(sets: &[Vec<u64>]) -> BTreeSet<u64> {
    let mut iter = sets.iter().map(|s| brute_sums(s));
    let first = iter.next().expect("nonempty family");
    iter.fold(first, |acc, s| acc.intersection(&s).copied().collect())
}

pub fn family(sets: &[Vec<u64>]) -> SetFamily {
    SetFamily::from_items(sets.iter().cloned()).unwrap()
}

pub fn family_one_sum() -> Vec<Vec<u64>> {
    vec![vec![22, 4, 23, 16], vec![8, 3, 17, 21], vec![8, 13, 9, 19]]
}

pub fn family_no_sum() -> Vec<Vec<u64>> {
    vec![
        vec![22, 3, 20, 15],
        vec![5, 1, 17, 21],
        vec![8, 10, 7, 19],
        vec![23, 5, 26, 19, 4],
    ]
}

pub fn family_two_sums() -> Vec<Vec<u64>> {
    vec![
        vec![8, 15, 11, 9, 1],
        vec![13, 2, 7, 1],
        vec![18, 11, 10, 19],
    ]
}

pub const WORKED_BLOCK: &str = "55495458205016966826278532461565";

pub fn worked_sets() -> Vec<Vec<u64>> {
    vec![
        vec![55, 49, 54, 58],
        vec![20, 50, 16, 96],
        vec![68, 26, 27, 85],
        vec![32, 46, 15, 65],
    ]
}

pub fn wide_sets() -> Vec<Vec<u64>> {
    vec![
        vec![
            3549, 3131, 7488, 1315, 4458, 7365, 2855, 2740, 7048, 6229, 8228,
        ],
        vec![
            2929, 5455, 4958, 9854, 5140, 6684, 4221, 9644, 3311, 5138, 4929,
        ],
        vec![
            2218, 2856, 7934, 5148, 1685, 3161, 2583, 6929, 5654, 3931, 3931,
        ],
        vec![
            6597, 1925, 9012, 6079, 9466, 5153, 1897, 3136, 9989, 7530, 1895,
        ],
    ]
}

/// As printed, including the line breaks of the original layout.
pub const WIDE_BLOCK: &str =
    "3549313174881315445873652855274070486229822829295455495898545140668442219644
 3311513849292218285679345148168531612583692956543931393165971925901260799466
 515318973136998975301895";

pub fn wide_witnesses() -> Vec<Vec<u64>> {
    vec![
        vec![3549, 7365, 2740, 7048, 6229],
        vec![2929, 5455, 4958, 5140, 3311, 5138],
        vec![2218, 1685, 2583, 6929, 5654, 3931, 3931],
        vec![6597, 9012, 1897, 7530, 1895],
    ]
}

pub fn mid_sets() -> Vec<Vec<u64>> {
    vec![
        vec![799, 983, 342, 767, 152, 577, 242, 663, 441],
        vec![740, 985, 671, 678, 720, 845, 472, 559, 646],
        vec![208, 978, 678, 249, 295, 875, 506, 162, 204],
        vec![711, 109, 183, 474, 250, 893, 534, 771, 926],
    ]
}

pub const MID_BLOCK: &str =
    "7999833427671525772426634417409856716787208454725596462089786782492958755061
62204711109183474250893534771926";

pub fn mid_witnesses() -> Vec<Vec<u64>> {
    vec![
        vec![342, 767, 152, 577, 663, 441],
        vec![985, 678, 720, 559],
        vec![978, 678, 249, 875, 162],
        vec![711, 534, 771, 926],
    ]
}

pub fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// True if `picked` is a sub-multiset of `set`.
pub fn is_sub_multiset(picked: &[u64], set: &[u64]) -> bool {
    let mut pool = set.to_vec();
    picked
        .iter()
        .all(|v| match pool.iter().position(|x| x == v) {
            Some(i) => {
                pool.swap_remove(i);
                true
            }
            None => false,
        })
}

pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `missp` binary.
pub fn missp<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_missp"))
        .args(args)
        .output()
        .expect("spawn missp");
    Output {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Picks a loopback port that was free a moment ago.
pub fn free_port() -> u16 {
    std::net::TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port()
}
