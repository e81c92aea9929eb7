//! Exact jam-state law of the simple process for tiny `N`.
//!
//! A state is the multiset of component `(size, kind)` pairs. Every event
//! removes one tree (merge, cycle birth or glue), so the reachable states
//! form a DAG and the absorption law follows from one memoized pass over
//! the embedded jump chain.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::OracleError;

/// Largest `N` the enumerator accepts.
pub const MAX_EXACT_N: usize = 6;

/// Components as sorted `(size, is_unicycle)` pairs.
pub type ChainState = Vec<(u32, bool)>;

/// Probability weights the enumeration can run on.
pub trait Weight:
    Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn from_u64(x: u64) -> Self;
}

impl Weight for f64 {
    fn from_u64(x: u64) -> Self {
        x as f64
    }
}

impl Weight for BigRational {
    fn from_u64(x: u64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
}

fn canonical(mut s: ChainState) -> ChainState {
    s.sort_unstable();
    s
}

/// Outgoing transitions with their jump-chain probabilities.
///
/// All rates carry the common factor `1/N`, which cancels: tree pairs merge
/// with weight `2ij`, a tree closes with weight `k²`, and a tree glues onto
/// a unicycle with weight `2pij`.
pub fn transitions<W: Weight>(state: &ChainState, p: &W) -> Vec<(ChainState, W)> {
    let mut out: Vec<(ChainState, W)> = Vec::new();
    let n = state.len();
    for a in 0..n {
        let (i, ua) = state[a];
        if ua {
            continue;
        }
        let mut closed = state.clone();
        closed[a].1 = true;
        out.push((canonical(closed), W::from_u64(i as u64 * i as u64)));
        for b in 0..n {
            if b == a {
                continue;
            }
            let (j, ub) = state[b];
            if ub && p.is_zero() {
                continue;
            }
            if !ub && b < a {
                continue;
            }
            let mut next: ChainState = state
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != a && x != b)
                .map(|(_, &c)| c)
                .collect();
            next.push((i + j, ub));
            let w = W::from_u64(2 * i as u64 * j as u64);
            let w = if ub { w * p.clone() } else { w };
            out.push((canonical(next), w));
        }
    }
    let total = out.iter().fold(W::zero(), |acc, (_, w)| acc + w.clone());
    // Merge identical targets so each successor appears once.
    let mut merged: Vec<(ChainState, W)> = Vec::new();
    for (s, w) in out {
        let w = w / total.clone();
        match merged.iter_mut().find(|(t, _)| *t == s) {
            Some(slot) => slot.1 = slot.1.clone() + w,
            None => merged.push((s, w)),
        }
    }
    merged
}

/// Law of the jam state, keyed by the sorted unicycle sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactJamDistribution<W> {
    pub n: usize,
    pub states: BTreeMap<Vec<u32>, W>,
}

impl<W: Weight> ExactJamDistribution<W> {
    pub fn total(&self) -> W {
        self.states.values().fold(W::zero(), |acc, w| acc + w.clone())
    }

    /// `P[U_jam = m]`.
    pub fn prob_u_jam(&self, m: usize) -> W {
        self.states
            .iter()
            .filter(|(s, _)| s.len() == m)
            .fold(W::zero(), |acc, (_, w)| acc + w.clone())
    }
}

impl ExactJamDistribution<f64> {
    pub fn mean_u_jam(&self) -> f64 {
        self.states.iter().map(|(s, w)| s.len() as f64 * w).sum()
    }

    pub fn mean_largest(&self) -> f64 {
        self.states
            .iter()
            .map(|(s, w)| *s.iter().max().unwrap_or(&0) as f64 * w)
            .sum()
    }
}

impl ExactJamDistribution<BigRational> {
    pub fn to_f64(&self) -> ExactJamDistribution<f64> {
        use num_traits::ToPrimitive;
        ExactJamDistribution {
            n: self.n,
            states: self
                .states
                .iter()
                .map(|(s, w)| (s.clone(), w.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }
}

fn absorb<W: Weight>(
    state: &ChainState,
    p: &W,
    memo: &mut HashMap<ChainState, BTreeMap<Vec<u32>, W>>,
) -> BTreeMap<Vec<u32>, W> {
    if let Some(d) = memo.get(state) {
        return d.clone();
    }
    let dist = if state.iter().all(|&(_, u)| u) {
        let sizes: Vec<u32> = state.iter().map(|&(k, _)| k).collect();
        BTreeMap::from([(sizes, W::one())])
    } else {
        let mut acc: BTreeMap<Vec<u32>, W> = BTreeMap::new();
        for (next, w) in transitions(state, p) {
            for (jam, q) in absorb(&next, p, memo) {
                let e = acc.entry(jam).or_insert_with(W::zero);
                *e = e.clone() + w.clone() * q;
            }
        }
        acc
    };
    memo.insert(state.clone(), dist.clone());
    dist
}

fn enumerate<W: Weight>(n: usize, p: W) -> Result<ExactJamDistribution<W>, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidConfig("need N >= 1".into()));
    }
    if n > MAX_EXACT_N {
        return Err(OracleError::NTooLarge(n));
    }
    let start: ChainState = vec![(1, false); n];
    let mut memo = HashMap::new();
    Ok(ExactJamDistribution {
        n,
        states: absorb(&start, &p, &mut memo),
    })
}

/// Jam-state law in floating point, `N <= 6`.
pub fn enumerate_exact(n: usize, p: f64) -> Result<ExactJamDistribution<f64>, OracleError> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(OracleError::InvalidConfig(format!("invalid p = {p}")));
    }
    enumerate(n, p)
}

/// Jam-state law in exact rational arithmetic, `N <= 6`.
pub fn enumerate_exact_rational(
    n: usize,
    p: BigRational,
) -> Result<ExactJamDistribution<BigRational>, OracleError> {
    if p < BigRational::zero() {
        return Err(OracleError::InvalidConfig(format!("invalid p = {p}")));
    }
    enumerate(n, p)
}

/// `num/den` as a rational.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices() {
        let d = enumerate_exact_rational(2, ratio(1, 2)).unwrap();
        assert_eq!(d.prob_u_jam(1), ratio(3, 4));
        assert_eq!(d.prob_u_jam(2), ratio(1, 4));
        let d = enumerate_exact_rational(2, ratio(0, 1)).unwrap();
        assert_eq!(d.prob_u_jam(1), ratio(1, 2));
        let d = enumerate_exact(1, 0.3).unwrap();
        assert_eq!(d.prob_u_jam(1), 1.0);
    }

    #[test]
    fn from_tree_and_unicycle_state() {
        // Tree {a} next to unicycle {b}: glue and self-loop equally likely.
        let start: ChainState = vec![(1, false), (1, true)];
        let mut memo = HashMap::new();
        let d = absorb(&start, &ratio(1, 2), &mut memo);
        assert_eq!(d[&vec![2]], ratio(1, 2));
        assert_eq!(d[&vec![1, 1]], ratio(1, 2));
    }

    #[test]
    fn jump_probabilities_sum_to_one() {
        let states: Vec<ChainState> = vec![
            vec![(1, false); 4],
            vec![(1, false), (1, true), (2, false)],
            vec![(2, true), (2, false)],
            vec![(1, false), (3, false)],
        ];
        for p in [ratio(0, 1), ratio(1, 2), ratio(1, 1)] {
            for s in &states {
                let total = transitions(s, &p)
                    .into_iter()
                    .fold(BigRational::zero(), |a, (_, w)| a + w);
                assert_eq!(total, BigRational::one());
            }
        }
    }

    #[test]
    fn rational_and_float_agree_and_are_normalized() {
        for n in 1..=4 {
            for (num, den) in [(0, 1), (1, 2), (1, 1)] {
                let q = enumerate_exact_rational(n, ratio(num, den)).unwrap();
                assert_eq!(q.total(), BigRational::one());
                let f = enumerate_exact(n, num as f64 / den as f64).unwrap();
                let qf = q.to_f64();
                for (s, w) in &f.states {
                    assert!((w - qf.states[s]).abs() < 1e-14);
                }
            }
        }
        let d = enumerate_exact(6, 0.7).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert!(matches!(enumerate_exact(7, 0.5), Err(OracleError::NTooLarge(7))));
    }

    #[test]
    fn p_half_matches_random_map_law() {
        for n in 1..=6u32 {
            let d = enumerate_exact(n as usize, 0.5).unwrap();
            let want = crate::theory::random_map_probs(n).unwrap();
            assert!((d.prob_u_jam(1) - want.prob_one_unicycle).abs() < 1e-12, "N={n}");
            assert!((d.prob_u_jam(n as usize) - want.prob_all_unicycles).abs() < 1e-12);
        }
    }
}
