//! Brute-force ground truth: enumeration of partitions into distinct parts
//! and exact reciprocal-sum statistics over them.

use crate::arith::legendre_symbol;
use crate::error::Result;
use crate::Rational;

/// A partition of n into strictly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinctPartition {
    parts: Vec<u64>,
}

impl DistinctPartition {
    /// Parts must be strictly decreasing and positive.
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] > w[1]) && parts.last().map_or(true, |&p| p > 0),
            "parts must be strictly decreasing positive integers"
        );
        DistinctPartition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Sum of reciprocals of the parts.
    pub fn srp(&self) -> Rational {
        let mut acc = Rational::new();
        for &p in &self.parts {
            acc += Rational::from((1u64, p));
        }
        acc
    }

    /// (sum of reciprocals)^k. k = 0 gives 1.
    pub fn srp_moment(&self, k: u32) -> Rational {
        use rug::ops::Pow;
        self.srp().pow(k)
    }

    /// Sum of the k-th powers of the reciprocals, k >= 1.
    pub fn srp_power_sum(&self, k: u32) -> Rational {
        use rug::ops::Pow;
        assert!(k >= 1, "power sum needs k >= 1");
        let mut acc = Rational::new();
        for &p in &self.parts {
            acc += Rational::from((1u64, p)).pow(k);
        }
        acc
    }

    /// Sum of chi_p(part)/part with chi_p the Legendre symbol mod p.
    pub fn srp_twisted(&self, p: u64) -> Result<Rational> {
        let mut acc = Rational::new();
        for &part in &self.parts {
            let chi = legendre_symbol(part as i64, p)?;
            if chi != 0 {
                acc += Rational::from((i64::from(chi), part as i64));
            }
        }
        Ok(acc)
    }
}

struct Frame {
    remaining: u64,
    /// Next part size to try at this level, counting down; 0 = exhausted.
    candidate: u64,
}

/// Streaming enumeration of all partitions of n into distinct parts, in
/// order of decreasing largest part.
pub struct DistinctPartitions {
    stack: Vec<Frame>,
    prefix: Vec<u64>,
}

/// Iterate over the set of partitions of n into distinct parts. The empty
/// partition is yielded (exactly once) for n = 0.
pub fn enumerate_distinct(n: u64) -> DistinctPartitions {
    DistinctPartitions {
        stack: vec![Frame {
            remaining: n,
            candidate: n,
        }],
        prefix: Vec::new(),
    }
}

impl DistinctPartitions {
    fn backtrack(&mut self) -> bool {
        self.stack.pop();
        if self.stack.is_empty() {
            return false;
        }
        self.prefix.pop();
        true
    }
}

impl Iterator for DistinctPartitions {
    type Item = DistinctPartition;

    fn next(&mut self) -> Option<DistinctPartition> {
        loop {
            let top = self.stack.len().checked_sub(1)?;
            if self.stack[top].remaining == 0 {
                let item = DistinctPartition {
                    parts: self.prefix.clone(),
                };
                self.backtrack();
                return Some(item);
            }
            let frame = &mut self.stack[top];
            // Part c is viable if the residue fits below it: the largest
            // sum of distinct parts < c is c(c-1)/2.
            let mut c = frame.candidate.min(frame.remaining);
            while c >= 1 && frame.remaining - c > c * (c - 1) / 2 {
                c -= 1;
            }
            if c == 0 {
                if !self.backtrack() {
                    return None;
                }
                continue;
            }
            frame.candidate = c - 1;
            let rest = frame.remaining - c;
            self.prefix.push(c);
            self.stack.push(Frame {
                remaining: rest,
                candidate: (c - 1).min(rest),
            });
        }
    }
}

/// s_k(n): sum of srp(lambda)^k over all partitions of n into distinct parts.
pub fn s_oracle(k: u32, n: u64) -> Rational {
    let mut acc = Rational::new();
    for lambda in enumerate_distinct(n) {
        acc += lambda.srp_moment(k);
    }
    acc
}

/// s_k^*(n): sum of the k-th reciprocal power sums over the same set, k >= 1.
pub fn s_star_oracle(k: u32, n: u64) -> Rational {
    assert!(k >= 1, "s_star_oracle needs k >= 1");
    let mut acc = Rational::new();
    for lambda in enumerate_distinct(n) {
        acc += lambda.srp_power_sum(k);
    }
    acc
}

/// Twisted first moment: sum of srp_{chi_p}(lambda) over the same set.
pub fn s_twisted_oracle(p: u64, n: u64) -> Result<Rational> {
    legendre_symbol(1, p)?; // validates p
    let mut acc = Rational::new();
    for lambda in enumerate_distinct(n) {
        acc += lambda.srp_twisted(p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::distinct_count;
    use std::collections::HashSet;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn enumerate_three() {
        let got: Vec<_> = enumerate_distinct(3).map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![3], vec![2, 1]]);
    }

    #[test]
    fn enumerate_zero_yields_empty_once() {
        let got: Vec<_> = enumerate_distinct(0).collect();
        assert_eq!(got.len(), 1);
        assert!(got[0].is_empty());
    }

    #[test]
    fn counts_match_generating_function() {
        for n in 0u64..=40 {
            let count = enumerate_distinct(n).count();
            assert_eq!(
                rug::Integer::from(count),
                distinct_count(n as usize),
                "n = {n}"
            );
        }
    }

    #[test]
    fn count_for_ten() {
        assert_eq!(enumerate_distinct(10).count(), 10);
    }

    #[test]
    fn no_duplicates_and_valid_parts() {
        for n in 0u64..=30 {
            let all: Vec<_> = enumerate_distinct(n).collect();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len(), set.len(), "duplicates at n = {n}");
            for p in &all {
                assert_eq!(p.sum(), n);
                assert!(p.parts().windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn srp_values() {
        let p = DistinctPartition::new(vec![2, 1]);
        assert_eq!(p.srp_moment(1), rat(3, 2));
        assert_eq!(p.srp_moment(2), rat(9, 4));
        assert_eq!(p.srp_moment(0), rat(1, 1));
        assert_eq!(p.srp_power_sum(3), rat(9, 8));
        let single = DistinctPartition::new(vec![7]);
        assert_eq!(single.srp_power_sum(4), rat(1, 2401));
        let h = DistinctPartition::new(vec![3, 2, 1]);
        assert_eq!(h.srp_power_sum(1), rat(11, 6));
    }

    #[test]
    fn oracle_values() {
        assert_eq!(s_oracle(1, 3), rat(11, 6));
        assert_eq!(s_oracle(1, 4), rat(19, 12));
        assert_eq!(s_oracle(2, 2), rat(1, 4));
        assert_eq!(s_star_oracle(3, 1), rat(1, 1));
        assert_eq!(s_star_oracle(3, 3), rat(1, 27) + rat(9, 8));
        for n in 0..=20 {
            assert_eq!(s_star_oracle(1, n), s_oracle(1, n), "n = {n}");
        }
    }

    #[test]
    fn oracle_counts_partitions_at_k0() {
        for n in 0u64..=25 {
            assert_eq!(
                s_oracle(0, n),
                Rational::from(distinct_count(n as usize)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn twisted_oracle_values() {
        assert_eq!(s_twisted_oracle(3, 1).unwrap(), rat(1, 1));
        assert_eq!(s_twisted_oracle(3, 2).unwrap(), rat(-1, 2));
        assert_eq!(s_twisted_oracle(3, 3).unwrap(), rat(1, 2));
        assert!(s_twisted_oracle(4, 1).is_err());
    }

    #[test]
    fn even_moments_positive() {
        for n in 1u64..=20 {
            for k in [0u32, 2, 4] {
                assert!(s_oracle(k, n) > 0, "k = {k}, n = {n}");
            }
        }
    }
}
