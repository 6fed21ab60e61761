#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trisurf_core::hyperelliptic::{BranchSet, MoebiusMap, ProjPoint};

/// `chi(O(-p, -q)) = (1 - p)(1 - q)` on `P^1 x P^1`.
pub fn chi_line_bundle(p: i64, q: i64) -> i64 {
    (1 - p) * (1 - q)
}

/// Pushforward of the structure sheaf splits as `O + L1^-1 + L2^-1 + L3^-1`.
pub fn chi_oracle(a: i64, b: i64, c: i64, d: i64) -> i64 {
    [(0, 0), (a, b), (c, d), (a + c, b + d)]
        .iter()
        .map(|&(p, q)| chi_line_bundle(p, q))
        .sum()
}

/// `2K = pi^*(2K_Y + D)` with `D` of bidegree `(2a + 2c, 2b + 2d)`, and
/// `(x, y)^2 = 2xy` on the quadric; the cover has degree 4.
pub fn ksq_oracle(a: i64, b: i64, c: i64, d: i64) -> i64 {
    let (x, y) = (a + c - 2, b + d - 2);
    4 * 2 * x * y
}

pub type Matrix = Vec<Vec<BigRational>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(q(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Unreduced Burau matrix at `t = 2`.
pub fn burau(strands: usize, letters: &[i32]) -> Matrix {
    let t = q(2);
    let mut m = identity(strands);
    for &l in letters {
        let i = (l.unsigned_abs() - 1) as usize;
        let mut g = identity(strands);
        if l > 0 {
            g[i][i] = q(1) - &t;
            g[i][i + 1] = t.clone();
            g[i + 1][i] = q(1);
            g[i + 1][i + 1] = q(0);
        } else {
            let tinv = BigRational::one() / &t;
            g[i][i] = q(0);
            g[i][i + 1] = q(1);
            g[i + 1][i] = tinv.clone();
            g[i + 1][i + 1] = q(1) - tinv;
        }
        m = mul(&m, &g);
    }
    m
}

/// Hurwitz orbit computed on Burau matrices instead of braid words.
pub fn burau_orbit(start: Vec<Matrix>) -> usize {
    let inverse = |m: &Matrix| -> Matrix {
        // Gauss-Jordan on a 3x3 rational matrix.
        let n = m.len();
        let mut a: Matrix = m.clone();
        let mut inv = identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).unwrap();
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] - &f * &a[col][j];
                        inv[r][j] = &inv[r][j] - &f * &inv[col][j];
                    }
                }
            }
        }
        inv
    };
    let mut seen: HashSet<Vec<Matrix>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for i in 0..s.len() - 1 {
            let (t, u) = (&s[i], &s[i + 1]);
            let mut fwd = s.clone();
            fwd[i] = mul(&mul(t, u), &inverse(t));
            fwd[i + 1] = t.clone();
            let mut bwd = s.clone();
            bwd[i] = u.clone();
            bwd[i + 1] = mul(&mul(&inverse(u), t), u);
            for next in [fwd, bwd] {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.len()
}

/// `[a, b]` determinant of homogeneous coordinates.
pub fn det(a: &ProjPoint, b: &ProjPoint) -> BigRational {
    let (ax, ay) = a.homogeneous();
    let (bx, by) = b.homogeneous();
    ax * by - ay * bx
}

/// Cross-ratio `(a, b; c, d)` as a point of the projective line.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> ProjPoint {
    ProjPoint::from_homogeneous(det(a, c) * det(b, d), det(a, d) * det(b, c))
}

/// Sets are projectively equivalent exactly when some ordered triple of the
/// second set sees the remaining points at the same cross-ratios as the
/// first three points of the first set see theirs.
pub fn oracle_equivalent(b1: &BranchSet, b2: &BranchSet) -> bool {
    if b1.len() != b2.len() {
        return false;
    }
    let p = b1.points();
    let mut target: Vec<ProjPoint> = p[3..]
        .iter()
        .map(|x| cross_ratio(&p[0], &p[1], &p[2], x))
        .collect();
    target.sort();
    let q = b2.points();
    let n = q.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let mut seen: Vec<ProjPoint> = (0..n)
                    .filter(|&l| l != i && l != j && l != k)
                    .map(|l| cross_ratio(&q[i], &q[j], &q[k], &q[l]))
                    .collect();
                seen.sort();
                if seen == target {
                    return true;
                }
            }
        }
    }
    false
}

pub fn random_set(rng: &mut ChaCha8Rng, size: usize) -> BranchSet {
    let mut pts: Vec<ProjPoint> = Vec::new();
    if rng.gen_bool(0.3) {
        pts.push(ProjPoint::Infinity);
    }
    while pts.len() < size {
        let p = if rng.gen_bool(0.2) {
            ProjPoint::ratio(rng.gen_range(-30..=30), rng.gen_range(1..=4))
        } else {
            ProjPoint::integer(rng.gen_range(-30..=30))
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    BranchSet::new(pts).unwrap()
}

pub fn random_map(rng: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-10..=10));
        if let Ok(m) = MoebiusMap::from_integers(e[0], e[1], e[2], e[3]) {
            return m;
        }
    }
}
