//! Coloring-family and hash-family primitives shared by the color-coding
//! detectors and the orientation reduction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("family search exhausted at cap {0}")]
    SearchExhausted(usize),
    #[error("k = {0} outside 2..=n = {1}")]
    BadColorCount(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// Guaranteed full coverage via search; intended for n <= 16.
    ExactSmall,
    /// Random members until a verifier passes; coverage exhaustively checked
    /// whenever the subset space is small enough, sampled otherwise.
    RandomizedVerified,
}

/// Family of k-colorings of `0..n` with the rainbow-coverage property: every
/// k-subset receives all k colors under at least one member.
#[derive(Debug, Clone)]
pub struct ColoringFamily {
    pub n: usize,
    pub k: usize,
    members: Vec<Vec<u8>>,
    /// True when coverage was verified over every k-subset.
    pub exhaustively_verified: bool,
}

impl ColoringFamily {
    pub fn members(&self) -> usize {
        self.members.len()
    }

    pub fn color(&self, member: usize, v: u32) -> u8 {
        self.members[member][v as usize]
    }

    pub fn member(&self, member: usize) -> &[u8] {
        &self.members[member]
    }

    /// Words to account for storing the family as tables.
    pub fn table_words(&self) -> u64 {
        (self.members.len() * self.n) as u64
    }

    fn rainbow(coloring: &[u8], subset: &[u32], k: usize) -> bool {
        let mut seen = 0u32;
        for &v in subset {
            seen |= 1 << coloring[v as usize];
        }
        seen.count_ones() as usize == k
    }

    pub fn covers(&self, subset: &[u32]) -> bool {
        self.members.iter().any(|m| Self::rainbow(m, subset, self.k))
    }
}

fn subset_count(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

const EXHAUSTIVE_SUBSET_CAP: u128 = 2_000_000;

/// Build a coloring family with the coverage property.
pub fn build_family(
    n: usize,
    k: usize,
    mode: FamilyMode,
    seed: u64,
) -> Result<ColoringFamily, ColoringError> {
    if k < 2 || k > n {
        return Err(ColoringError::BadColorCount(k, n));
    }
    if k == n {
        // The unique k-subset is the whole ground set; identity covers it.
        let identity: Vec<u8> = (0..n as u8).collect();
        return Ok(ColoringFamily { n, k, members: vec![identity], exhaustively_verified: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f_6c6f_7266_616d);
    let exhaustive = subset_count(n, k) <= EXHAUSTIVE_SUBSET_CAP;
    let cap = match mode {
        FamilyMode::ExactSmall => 200_000,
        FamilyMode::RandomizedVerified => 500_000,
    };
    let mut members: Vec<Vec<u8>> = Vec::new();
    if exhaustive {
        // Greedy cover: draw random colorings, keep the ones that cover a
        // still-uncovered subset, until every subset is covered.
        let mut uncovered: Vec<Vec<u32>> = Vec::new();
        let mut subset = vec![0u32; k];
        enumerate_subsets(n, k, 0, 0, &mut subset, &mut |s| uncovered.push(s.to_vec()));
        while !uncovered.is_empty() {
            if members.len() >= cap {
                return Err(ColoringError::SearchExhausted(cap));
            }
            let cand: Vec<u8> = (0..n).map(|_| rng.gen_range(0..k as u8)).collect();
            let before = uncovered.len();
            uncovered.retain(|s| !ColoringFamily::rainbow(&cand, s, k));
            if uncovered.len() < before {
                members.push(cand);
            }
        }
        Ok(ColoringFamily { n, k, members, exhaustively_verified: true })
    } else {
        // Sampled verification: add batches until a fresh sample finds no
        // uncovered subset.
        let sample_rounds = 10_000usize;
        loop {
            for _ in 0..32 {
                members.push((0..n).map(|_| rng.gen_range(0..k as u8)).collect());
            }
            if members.len() >= cap {
                return Err(ColoringError::SearchExhausted(cap));
            }
            let fam =
                ColoringFamily { n, k, members: members.clone(), exhaustively_verified: false };
            let mut all_covered = true;
            for _ in 0..sample_rounds {
                let subset = random_subset(n, k, &mut rng);
                if !fam.covers(&subset) {
                    all_covered = false;
                    break;
                }
            }
            if all_covered {
                return Ok(fam);
            }
        }
    }
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    depth: usize,
    buf: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if depth == k {
        f(buf);
        return;
    }
    for v in start..=(n - (k - depth)) {
        buf[depth] = v as u32;
        enumerate_subsets(n, k, v + 1, depth + 1, buf, f);
    }
}

fn random_subset(n: usize, k: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut subset = Vec::with_capacity(k);
    while subset.len() < k {
        let v = rng.gen_range(0..n as u32);
        if !subset.contains(&v) {
            subset.push(v);
        }
    }
    subset
}

/// Compose every member with every permutation of the k colors, so that any
/// rainbow subset can be hit with any designated color assignment.
pub fn expand_with_permutations(family: &ColoringFamily) -> ColoringFamily {
    let k = family.k;
    let mut perms: Vec<Vec<u8>> = Vec::new();
    permutations(k, &mut (0..k as u8).collect::<Vec<_>>(), 0, &mut perms);
    let mut members = Vec::with_capacity(family.members() * perms.len());
    for m in &family.members {
        for p in &perms {
            members.push(m.iter().map(|&c| p[c as usize]).collect());
        }
    }
    ColoringFamily {
        n: family.n,
        k,
        members,
        exhaustively_verified: family.exhaustively_verified,
    }
}

fn permutations(k: usize, arr: &mut Vec<u8>, at: usize, out: &mut Vec<Vec<u8>>) {
    if at == k {
        out.push(arr.clone());
        return;
    }
    for i in at..k {
        arr.swap(at, i);
        permutations(k, arr, at + 1, out);
        arr.swap(at, i);
    }
}

/// m-wise independent hash by the polynomial method over a prime field
/// q > n^2, reduced to a codomain.
#[derive(Debug, Clone)]
pub struct MWiseHash {
    pub m: usize,
    pub q: u64,
    pub codomain: u64,
    coefficients: Vec<u64>,
}

pub fn smallest_prime_above(x: u64) -> u64 {
    let mut c = x + 1;
    loop {
        if is_prime(c) {
            return c;
        }
        c += 1;
    }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl MWiseHash {
    /// Random degree-(m-1) polynomial over F_q, q prime > n^2.
    pub fn new(n: usize, m: usize, codomain: u64, seed: u64) -> Self {
        let q = smallest_prime_above((n as u64).pow(2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coefficients = (0..m).map(|_| rng.gen_range(0..q)).collect();
        MWiseHash { m, q, codomain, coefficients }
    }

    pub fn from_coefficients(q: u64, codomain: u64, coefficients: Vec<u64>) -> Self {
        MWiseHash { m: coefficients.len(), q, codomain, coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Horner evaluation in the field.
    pub fn eval_field(&self, x: u64) -> u64 {
        let q = self.q as u128;
        let x = (x as u128) % q;
        let mut acc: u128 = 0;
        for &c in self.coefficients.iter().rev() {
            acc = (acc * x + c as u128) % q;
        }
        acc as u64
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.eval_field(x) % self.codomain
    }

    /// Canonical pair code for an undirected edge; keeps orientation choices
    /// consistent across passes.
    pub fn orient_edge(&self, n: usize, a: u32, b: u32) -> (u32, u32) {
        let (lo, hi) = (a.min(b), a.max(b));
        let code = lo as u64 * n as u64 + hi as u64;
        if self.eval(code) & 1 == 0 {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    pub fn seed_words(&self) -> u64 {
        self.m as u64 + 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_family_when_k_equals_n() {
        let fam = build_family(5, 5, FamilyMode::ExactSmall, 1).unwrap();
        assert_eq!(fam.members(), 1);
        assert!(fam.covers(&[0, 1, 2, 3, 4]));
    }

    #[test]
    fn exact_small_covers_all_triples() {
        let fam = build_family(5, 3, FamilyMode::ExactSmall, 7).unwrap();
        assert!(fam.exhaustively_verified);
        let mut buf = vec![0u32; 3];
        enumerate_subsets(5, 3, 0, 0, &mut buf, &mut |s| assert!(fam.covers(s), "{:?}", s));
        assert!(fam.members() <= 25, "family too large: {}", fam.members());
    }

    #[test]
    fn permutation_expansion_realizes_assignments() {
        let fam = build_family(8, 4, FamilyMode::ExactSmall, 3).unwrap();
        let expanded = expand_with_permutations(&fam);
        assert_eq!(expanded.members(), fam.members() * 24);
        // Any 4-subset, any target assignment: some member realizes it.
        let mut buf = vec![0u32; 4];
        enumerate_subsets(8, 4, 0, 0, &mut buf, &mut |s| {
            // target: s[i] gets color i
            let hit = (0..expanded.members()).any(|m| {
                (0..4).all(|i| expanded.color(m, s[i]) == i as u8)
            });
            assert!(hit, "assignment not realized for {:?}", s);
        });
    }

    #[test]
    fn swap_expansion_for_two_colors() {
        let fam = ColoringFamily {
            n: 2,
            k: 2,
            members: vec![vec![0, 1]],
            exhaustively_verified: true,
        };
        let exp = expand_with_permutations(&fam);
        assert_eq!(exp.members(), 2);
    }

    #[test]
    fn mwise_constant_when_m_is_one() {
        let h = MWiseHash::new(10, 1, 16, 5);
        let v0 = h.eval(0);
        for x in 1..100u64 {
            assert_eq!(h.eval(x), v0);
        }
    }

    #[test]
    fn mwise_deterministic() {
        let a = MWiseHash::new(20, 3, 8, 99);
        let b = MWiseHash::new(20, 3, 8, 99);
        for x in 0..400 {
            assert_eq!(a.eval(x), b.eval(x));
        }
    }

    /// Full seed enumeration: the field outputs on any m distinct points are
    /// exactly uniform over the q^m polynomials when q is prime.
    #[test]
    fn mwise_exact_uniformity_small_field() {
        let q = 5u64;
        let m = 2usize;
        let points = [1u64, 3u64];
        let mut counts = std::collections::HashMap::new();
        for c0 in 0..q {
            for c1 in 0..q {
                let h = MWiseHash::from_coefficients(q, q, vec![c0, c1]);
                let key = (h.eval_field(points[0]), h.eval_field(points[1]));
                *counts.entry(key).or_insert(0u64) += 1;
            }
        }
        assert_eq!(counts.len(), (q * q) as usize);
        assert!(counts.values().all(|&c| c == 1));
    }

    #[test]
    fn pairwise_bit_correlation_small() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let trials = 30_000;
        let mut agree = 0i64;
        for _ in 0..trials {
            let h = MWiseHash::new(100, 2, 2, rng.gen());
            let b0 = h.eval(17) as i64 * 2 - 1;
            let b1 = h.eval(55) as i64 * 2 - 1;
            agree += b0 * b1;
        }
        let corr = agree as f64 / trials as f64;
        assert!(corr.abs() <= 0.05, "pairwise correlation too high: {}", corr);
    }

    #[test]
    fn randomized_verified_large() {
        let fam = build_family(200, 5, FamilyMode::RandomizedVerified, 11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10_000 {
            let s = random_subset(200, 5, &mut rng);
            assert!(fam.covers(&s), "uncovered subset {:?}", s);
        }
    }
}
