//! Integer partitions and the restricted classes they are counted in.
//!
//! A [`Partition`] is always stored in canonical (non-increasing) form. All
//! counting in this module is done by walking every partition of `n`; no
//! generating-function or recurrence shortcut is used, so the counts here
//! serve as an independent oracle for the series in [`crate::qseries`].
//!
//! Enumeration order is fixed: partitions of `n` are produced in
//! lexicographically decreasing order, starting with `(n)` and ending with
//! `(1, 1, ..., 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("part {0} does not fit in a 32-bit part")]
    PartTooLarge(i64),
    #[error("partition weight overflows")]
    WeightOverflow,
    #[error("cannot parse partition from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A partition in canonical non-increasing form together with its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    weight: u64,
}

impl Partition {
    /// Canonicalizes `parts` (sorts non-increasing) and computes the weight.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositivePart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(u64::from(p)))
            .ok_or(PartitionError::WeightOverflow)?;
        Ok(Self { parts, weight })
    }

    /// Builds a partition from signed input, rejecting zero and negative entries.
    pub fn from_signed(parts: &[i64]) -> Result<Self, PartitionError> {
        let parts = parts
            .iter()
            .map(|&p| {
                if p <= 0 {
                    Err(PartitionError::NonPositivePart(p))
                } else {
                    u32::try_from(p).map_err(|_| PartitionError::PartTooLarge(p))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    /// The empty partition, the unique partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new(), weight: 0 }
    }

    /// Wraps parts that are already non-increasing and positive.
    pub(crate) fn from_canonical(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p >= 1));
        let weight = parts.iter().map(|&p| u64::from(p)).sum();
        Self { parts, weight }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, `None` for the empty partition.
    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn is_member(&self, class: PartitionClass) -> bool {
        class.contains(&self.parts)
    }

    /// Parts joined by commas with no surrounding parentheses, e.g. `5,4,1`.
    pub fn to_csv_parts(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&p.to_string());
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv_parts())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses comma-separated parts in any order. Whitespace around parts is
    /// ignored; an empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|e| PartitionError::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_signed(&parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// The restricted partition classes that appear in the identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartitionClass {
    /// No even part is repeated.
    #[serde(rename = "ped")]
    Ped,
    /// No part is divisible by 4.
    #[serde(rename = "4regular")]
    FourRegular,
    /// Ped, and the largest part is odd.
    #[serde(rename = "de1")]
    De1,
    /// De1, and the largest part appears at least twice.
    #[serde(rename = "de2")]
    De2,
    /// De1, and the largest part appears exactly once.
    #[serde(rename = "de3")]
    De3,
    /// Ped, and every part is at least 2.
    #[serde(rename = "ped-gt1")]
    PedGt1,
}

impl PartitionClass {
    pub const ALL: [PartitionClass; 6] = [
        PartitionClass::Ped,
        PartitionClass::FourRegular,
        PartitionClass::De1,
        PartitionClass::De2,
        PartitionClass::De3,
        PartitionClass::PedGt1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionClass::Ped => "ped",
            PartitionClass::FourRegular => "4regular",
            PartitionClass::De1 => "de1",
            PartitionClass::De2 => "de2",
            PartitionClass::De3 => "de3",
            PartitionClass::PedGt1 => "ped-gt1",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Membership test on a canonical (non-increasing) slice of parts.
    pub fn contains(self, parts: &[u32]) -> bool {
        match self {
            PartitionClass::Ped => distinct_even_parts(parts),
            PartitionClass::FourRegular => parts.iter().all(|p| p % 4 != 0),
            PartitionClass::De1 => odd_largest(parts) && distinct_even_parts(parts),
            PartitionClass::De2 => {
                odd_largest(parts) && parts.len() >= 2 && parts[1] == parts[0] && distinct_even_parts(parts)
            }
            PartitionClass::De3 => {
                odd_largest(parts) && (parts.len() == 1 || parts[1] < parts[0]) && distinct_even_parts(parts)
            }
            PartitionClass::PedGt1 => parts.last().map_or(true, |&p| p >= 2) && distinct_even_parts(parts),
        }
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartitionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        PartitionClass::ALL
            .into_iter()
            .find(|c| c.name() == lower)
            .or(match lower.as_str() {
                "four_regular" | "four-regular" => Some(PartitionClass::FourRegular),
                "ped_gt1" => Some(PartitionClass::PedGt1),
                _ => None,
            })
            .ok_or_else(|| format!("unknown partition class {s:?}"))
    }
}

// Sorted input: a repeated even part shows up as two equal neighbours.
fn distinct_even_parts(parts: &[u32]) -> bool {
    parts.windows(2).all(|w| w[0] != w[1] || w[0] % 2 == 1)
}

fn odd_largest(parts: &[u32]) -> bool {
    parts.first().is_some_and(|p| p % 2 == 1)
}

/// Calls `visit` on every partition of `n` in lexicographically decreasing order.
///
/// The slice handed to `visit` is only valid for the duration of the call.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    fn descend<F: FnMut(&[u32])>(remaining: u32, max_part: u32, buf: &mut Vec<u32>, visit: &mut F) {
        if remaining == 0 {
            visit(buf);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            buf.push(part);
            descend(remaining - part, part, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(n as usize);
    descend(n, n, &mut buf, &mut visit);
}

/// Every partition of `n`, in lexicographically decreasing order.
pub fn enumerate_all(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| out.push(Partition::from_canonical(parts.to_vec())));
    out
}

/// The members of `class` of weight `n`, in the same order as [`enumerate_all`].
pub fn enumerate_class(n: u32, class: PartitionClass) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        if class.contains(parts) {
            out.push(Partition::from_canonical(parts.to_vec()));
        }
    });
    out
}

pub fn count_class(n: u32, class: PartitionClass) -> u64 {
    let mut count = 0u64;
    for_each_partition(n, |parts| {
        if class.contains(parts) {
            count += 1;
        }
    });
    count
}

/// Number of partitions of `n` whose parts satisfy `pred`.
pub fn count_matching<P: Fn(&[u32]) -> bool>(n: u32, pred: P) -> u64 {
    let mut count = 0u64;
    for_each_partition(n, |parts| {
        if pred(parts) {
            count += 1;
        }
    });
    count
}

/// Counts for every class at one weight, gathered in a single enumeration pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub total: u64,
    counts: [u64; 6],
}

impl ClassCounts {
    pub fn get(&self, class: PartitionClass) -> u64 {
        self.counts[class.index()]
    }
}

pub fn count_all_classes(n: u32) -> ClassCounts {
    let mut out = ClassCounts::default();
    for_each_partition(n, |parts| {
        out.total += 1;
        for class in PartitionClass::ALL {
            if class.contains(parts) {
                out.counts[class.index()] += 1;
            }
        }
    });
    out
}

/// Per-weight class counts for `0..=n_max`, indexed by weight.
#[derive(Debug, Clone)]
pub struct CountTable {
    rows: Vec<ClassCounts>,
}

impl CountTable {
    pub fn build(n_max: u32) -> Self {
        Self { rows: (0..=n_max).map(count_all_classes).collect() }
    }

    pub fn max_weight(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// Count of `class` at weight `n`; negative weights count zero.
    pub fn get(&self, n: i64, class: PartitionClass) -> u64 {
        if n < 0 {
            return 0;
        }
        self.rows
            .get(n as usize)
            .map(|row| row.get(class))
            .unwrap_or_else(|| panic!("weight {n} outside table of max weight {}", self.max_weight()))
    }

    pub fn total(&self, n: u32) -> u64 {
        self.rows[n as usize].total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn canonicalizes_on_construction() {
        let part = p(&[1, 3, 2]);
        assert_eq!(part.parts(), &[3, 2, 1]);
        assert_eq!(part.weight(), 6);
        assert_eq!(p(&[]).weight(), 0);
        assert!(p(&[]).is_empty());
        assert_eq!(p(&[5, 5]).parts(), &[5, 5]);
        assert_eq!(p(&[5, 5]).weight(), 10);
    }

    #[test]
    fn rejects_non_positive_parts() {
        assert_eq!(Partition::new(vec![2, 0]), Err(PartitionError::NonPositivePart(0)));
        assert_eq!(Partition::from_signed(&[3, -1]), Err(PartitionError::NonPositivePart(-1)));
        assert!(matches!("3,x".parse::<Partition>(), Err(PartitionError::Parse { .. })));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("1, 3,2".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn enumerate_small_weights() {
        assert_eq!(enumerate_all(0), vec![Partition::empty()]);
        let four: Vec<Vec<u32>> = enumerate_all(4).into_iter().map(Partition::into_parts).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate_all(10).len(), 42);
    }

    // Independent count of p(n) via the standard "largest part at most m" recursion.
    fn p_oracle(n: u32, m: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=m.min(n)).map(|k| p_oracle(n - k, k)).sum()
    }

    #[test]
    fn enumeration_cardinality_matches_recursion() {
        for n in 0..=20 {
            assert_eq!(enumerate_all(n).len() as u64, p_oracle(n, n), "n={n}");
        }
        assert_eq!(p_oracle(20, 20), 627);
    }

    #[test]
    fn enumeration_order_is_lexicographically_decreasing() {
        let all = enumerate_all(12);
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
    }

    #[test]
    fn membership_examples() {
        assert!(p(&[3, 2, 1]).is_member(PartitionClass::De1));
        assert!(!p(&[2, 2, 1]).is_member(PartitionClass::Ped));
        assert!(p(&[3, 1, 1]).is_member(PartitionClass::De3));
        assert!(!p(&[1, 1, 1]).is_member(PartitionClass::De3));
        assert!(p(&[1, 1, 1]).is_member(PartitionClass::De2));
        assert!(!p(&[4, 3]).is_member(PartitionClass::FourRegular));
        assert!(!p(&[3, 1]).is_member(PartitionClass::PedGt1));
        assert!(p(&[4, 2]).is_member(PartitionClass::PedGt1));
    }

    #[test]
    fn empty_partition_membership() {
        let e = Partition::empty();
        assert!(e.is_member(PartitionClass::Ped));
        assert!(e.is_member(PartitionClass::FourRegular));
        assert!(e.is_member(PartitionClass::PedGt1));
        assert!(!e.is_member(PartitionClass::De1));
        assert!(!e.is_member(PartitionClass::De2));
        assert!(!e.is_member(PartitionClass::De3));
    }

    #[test]
    fn enumerate_class_examples() {
        let de1_3: Vec<_> = enumerate_class(3, PartitionClass::De1);
        assert_eq!(de1_3, vec![p(&[3]), p(&[1, 1, 1])]);
        let de3_5 = enumerate_class(5, PartitionClass::De3);
        assert_eq!(de3_5, vec![p(&[5]), p(&[3, 2]), p(&[3, 1, 1])]);
        assert!(enumerate_class(0, PartitionClass::De2).is_empty());
    }

    #[test]
    fn count_class_examples() {
        assert_eq!(count_class(5, PartitionClass::Ped), 6);
        assert_eq!(count_class(5, PartitionClass::FourRegular), 6);
        assert_eq!(count_class(6, PartitionClass::De2), 2);
        assert_eq!(enumerate_class(6, PartitionClass::De2), vec![p(&[3, 3]), p(&[1, 1, 1, 1, 1, 1])]);
    }

    #[test]
    fn class_relations_by_enumeration() {
        let table = CountTable::build(30);
        for n in 0..=30i64 {
            let get = |c| table.get(n, c);
            assert_eq!(get(PartitionClass::Ped), get(PartitionClass::FourRegular), "n={n}");
            assert_eq!(get(PartitionClass::De1), get(PartitionClass::De2) + get(PartitionClass::De3));
            if n >= 1 {
                assert_eq!(get(PartitionClass::PedGt1), get(PartitionClass::Ped) - table.get(n - 1, PartitionClass::Ped));
            }
        }
    }

    #[test]
    fn enumerate_class_is_distinct_and_sound() {
        for n in 0..=14 {
            for class in PartitionClass::ALL {
                let members = enumerate_class(n, class);
                let set: HashSet<_> = members.iter().collect();
                assert_eq!(set.len(), members.len());
                assert!(members.iter().all(|m| m.is_member(class) && m.weight() == u64::from(n)));
                assert_eq!(members.len() as u64, count_class(n, class));
            }
        }
    }

    #[test]
    fn class_names_round_trip() {
        for class in PartitionClass::ALL {
            assert_eq!(class.name().parse::<PartitionClass>().unwrap(), class);
        }
        assert!("bogus".parse::<PartitionClass>().is_err());
    }
}
