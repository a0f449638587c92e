//! The explicit maps behind the two counting lemmas.
//!
//! * `phi1`: ped partitions of `n` onto DE1 partitions of weight `n` or `n - 1`,
//!   with inverse `psi1`.
//! * `phi3`: ped partitions of `n` onto DE3 partitions of weight `n + 2` or
//!   `n - 1`, with inverse `psi3`.
//!
//! Every image carries the [`CaseTag`] of the branch that produced it. When a
//! partition has a single part, its missing second part is read as 0.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::partition::{enumerate_class, Partition, PartitionClass};
use crate::report::{CheckedRange, IdentityId, IdentityReport, Method, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("the empty partition has no image")]
    Empty,
    #[error("{partition} is not a {class} partition")]
    NotInClass { partition: Partition, class: PartitionClass },
    #[error("{partition} has weight {weight}, expected one of {expected:?}")]
    WeightNotInTarget { partition: Partition, weight: u64, expected: Vec<u64> },
    #[error("{partition} would map to a non-partition")]
    Degenerate { partition: Partition },
}

/// Which branch of which map produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    P1Case1,
    P1Case2,
    P3Case1,
    P3Case2i,
    P3Case2ii,
    Psi1Case1,
    Psi1Case2,
    Psi3Case1,
    Psi3Case2,
    Psi3Case3,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::P1Case1,
        CaseTag::P1Case2,
        CaseTag::P3Case1,
        CaseTag::P3Case2i,
        CaseTag::P3Case2ii,
        CaseTag::Psi1Case1,
        CaseTag::Psi1Case2,
        CaseTag::Psi3Case1,
        CaseTag::Psi3Case2,
        CaseTag::Psi3Case3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::P1Case1 => "P1_CASE1",
            CaseTag::P1Case2 => "P1_CASE2",
            CaseTag::P3Case1 => "P3_CASE1",
            CaseTag::P3Case2i => "P3_CASE2I",
            CaseTag::P3Case2ii => "P3_CASE2II",
            CaseTag::Psi1Case1 => "PSI1_CASE1",
            CaseTag::Psi1Case2 => "PSI1_CASE2",
            CaseTag::Psi3Case1 => "PSI3_CASE1",
            CaseTag::Psi3Case2 => "PSI3_CASE2",
            CaseTag::Psi3Case3 => "PSI3_CASE3",
        }
    }

    /// Short human label, e.g. `case 2(i)`.
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::P1Case1 | CaseTag::P3Case1 | CaseTag::Psi1Case1 | CaseTag::Psi3Case1 => "case 1",
            CaseTag::P1Case2 | CaseTag::Psi1Case2 | CaseTag::Psi3Case2 => "case 2",
            CaseTag::P3Case2i => "case 2(i)",
            CaseTag::P3Case2ii => "case 2(ii)",
            CaseTag::Psi3Case3 => "case 3",
        }
    }

    /// The map this case belongs to.
    pub fn bijection(self) -> Bijection {
        match self {
            CaseTag::P1Case1 | CaseTag::P1Case2 | CaseTag::Psi1Case1 | CaseTag::Psi1Case2 => Bijection::Phi1,
            _ => Bijection::Phi3,
        }
    }

    /// The inverse-map case that undoes a forward case, and vice versa.
    pub fn partner(self) -> CaseTag {
        match self {
            CaseTag::P1Case1 => CaseTag::Psi1Case1,
            CaseTag::P1Case2 => CaseTag::Psi1Case2,
            CaseTag::P3Case1 => CaseTag::Psi3Case1,
            CaseTag::P3Case2i => CaseTag::Psi3Case2,
            CaseTag::P3Case2ii => CaseTag::Psi3Case3,
            CaseTag::Psi1Case1 => CaseTag::P1Case1,
            CaseTag::Psi1Case2 => CaseTag::P1Case2,
            CaseTag::Psi3Case1 => CaseTag::P3Case1,
            CaseTag::Psi3Case2 => CaseTag::P3Case2i,
            CaseTag::Psi3Case3 => CaseTag::P3Case2ii,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        CaseTag::ALL
            .into_iter()
            .find(|t| t.name() == upper)
            .ok_or_else(|| format!("unknown case tag {s:?}"))
    }
}

/// Image of a map together with the branch that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MappedPartition {
    pub image: Partition,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
    pub target_weight: u64,
}

impl MappedPartition {
    fn new(image: Partition, case_tag: CaseTag) -> Self {
        let target_weight = image.weight();
        Self { image, case_tag, target_weight }
    }
}

fn require_nonempty_ped(lambda: &Partition) -> Result<(), BijectionError> {
    if lambda.is_empty() {
        return Err(BijectionError::Empty);
    }
    if !lambda.is_member(PartitionClass::Ped) {
        return Err(BijectionError::NotInClass { partition: lambda.clone(), class: PartitionClass::Ped });
    }
    Ok(())
}

fn second_part(parts: &[u32]) -> u32 {
    parts.get(1).copied().unwrap_or(0)
}

/// Forward map of the DE1 lemma.
pub fn phi1(lambda: &Partition) -> Result<MappedPartition, BijectionError> {
    require_nonempty_ped(lambda)?;
    let mut parts = lambda.parts().to_vec();
    if parts[0] % 2 == 1 {
        return Ok(MappedPartition::new(lambda.clone(), CaseTag::P1Case1));
    }
    // An even largest part is unrepeated, so lowering it by one keeps the order.
    parts[0] -= 1;
    Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::P1Case2))
}

/// Inverse of [`phi1`] onto ped partitions of `n`.
pub fn psi1(mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError> {
    if !mu.is_member(PartitionClass::De1) {
        return Err(BijectionError::NotInClass { partition: mu.clone(), class: PartitionClass::De1 });
    }
    let weight = mu.weight();
    if weight == n {
        return Ok(MappedPartition::new(mu.clone(), CaseTag::Psi1Case1));
    }
    if n >= 1 && weight == n - 1 {
        let mut parts = mu.parts().to_vec();
        parts[0] += 1;
        return Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::Psi1Case2));
    }
    Err(BijectionError::WeightNotInTarget {
        partition: mu.clone(),
        weight,
        expected: [Some(n), n.checked_sub(1)].into_iter().flatten().collect(),
    })
}

/// Forward map of the DE3 lemma.
pub fn phi3(lambda: &Partition) -> Result<MappedPartition, BijectionError> {
    require_nonempty_ped(lambda)?;
    let mut parts = lambda.parts().to_vec();
    let head = parts[0];
    if head % 2 == 1 {
        parts[0] += 2;
        return Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::P3Case1));
    }
    let next = second_part(&parts);
    if next == head - 1 {
        parts[0] = next + 2;
        parts[1] = head;
        Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::P3Case2i))
    } else {
        parts[0] -= 1;
        Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::P3Case2ii))
    }
}

/// Inverse of [`phi3`] onto ped partitions of `n`.
pub fn psi3(mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError> {
    if !mu.is_member(PartitionClass::De3) {
        return Err(BijectionError::NotInClass { partition: mu.clone(), class: PartitionClass::De3 });
    }
    let weight = mu.weight();
    let mut parts = mu.parts().to_vec();
    let head = parts[0];
    if weight == n + 2 {
        let gap = head - second_part(&parts);
        if gap >= 2 {
            if head < 3 {
                return Err(BijectionError::Degenerate { partition: mu.clone() });
            }
            parts[0] -= 2;
            return Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::Psi3Case1));
        }
        // gap == 1: the second part is the even part head - 1, and it exists.
        parts[0] = parts[1];
        parts[1] = head - 2;
        return Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::Psi3Case2));
    }
    if n >= 1 && weight == n - 1 {
        parts[0] += 1;
        return Ok(MappedPartition::new(Partition::from_canonical(parts), CaseTag::Psi3Case3));
    }
    Err(BijectionError::WeightNotInTarget {
        partition: mu.clone(),
        weight,
        expected: [Some(n + 2), n.checked_sub(1)].into_iter().flatten().collect(),
    })
}

/// One of the two explicit bijections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bijection {
    Phi1,
    Phi3,
}

impl Bijection {
    pub fn identity(self) -> IdentityId {
        match self {
            Bijection::Phi1 => IdentityId::Lemma2_1,
            Bijection::Phi3 => IdentityId::Lemma2_2,
        }
    }

    pub fn target_class(self) -> PartitionClass {
        match self {
            Bijection::Phi1 => PartitionClass::De1,
            Bijection::Phi3 => PartitionClass::De3,
        }
    }

    /// Weights of the two target layers for source weight `n >= 1`.
    pub fn target_weights(self, n: u64) -> [u64; 2] {
        match self {
            Bijection::Phi1 => [n, n - 1],
            Bijection::Phi3 => [n + 2, n - 1],
        }
    }

    /// The forward case a ped partition must fall into, read off its first two
    /// parts without running the map.
    pub fn expected_case(self, lambda: &Partition) -> Option<CaseTag> {
        let parts = lambda.parts();
        let head = *parts.first()?;
        let odd_head = head % 2 == 1;
        Some(match (self, odd_head) {
            (Bijection::Phi1, true) => CaseTag::P1Case1,
            (Bijection::Phi1, false) => CaseTag::P1Case2,
            (Bijection::Phi3, true) => CaseTag::P3Case1,
            (Bijection::Phi3, false) if second_part(parts) + 1 == head => CaseTag::P3Case2i,
            (Bijection::Phi3, false) => CaseTag::P3Case2ii,
        })
    }
}

/// A forward/backward pair that the layer check runs. [`Bijection`] is the
/// genuine pair; other implementations exist to exercise failure reporting.
pub trait BijectionMaps {
    fn forward(&self, lambda: &Partition) -> Result<MappedPartition, BijectionError>;
    fn backward(&self, mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError>;
}

impl BijectionMaps for Bijection {
    fn forward(&self, lambda: &Partition) -> Result<MappedPartition, BijectionError> {
        match self {
            Bijection::Phi1 => phi1(lambda),
            Bijection::Phi3 => phi3(lambda),
        }
    }

    fn backward(&self, mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError> {
        match self {
            Bijection::Phi1 => psi1(mu, n),
            Bijection::Phi3 => psi3(mu, n),
        }
    }
}

/// Checks the gap condition attached to a forward image of `phi3`.
fn gap_condition_holds(mapped: &MappedPartition) -> bool {
    let parts = mapped.image.parts();
    let gap = parts[0] - second_part(parts);
    match mapped.case_tag {
        CaseTag::P3Case1 => gap >= 2,
        CaseTag::P3Case2i => gap == 1,
        _ => true,
    }
}

/// Runs every check on layer `n` and returns the first failure.
///
/// Checks, in order: each image lands in the target class at a target weight
/// with the case predicted by the preimage; images are pairwise distinct; the
/// inverse undoes the map; the images cover the whole target set; and the map
/// undoes the inverse on the whole target set. Preimages are visited in
/// enumeration order, so the witness is deterministic.
pub fn check_layer(n: u64, which: Bijection, maps: &dyn BijectionMaps) -> Option<Witness> {
    assert!(n >= 1, "bijection layers start at n = 1");
    let fail = |partition: &Partition, detail: String| Some(Witness::Bijection { n, partition: partition.clone(), detail });
    let target_class = which.target_class();
    let weights = which.target_weights(n);
    let mut images = HashSet::new();

    let sources = enumerate_class(n as u32, PartitionClass::Ped);
    for lambda in &sources {
        let mapped = match maps.forward(lambda) {
            Ok(m) => m,
            Err(e) => return fail(lambda, format!("forward map failed: {e}")),
        };
        if mapped.image.weight() != mapped.target_weight || !weights.contains(&mapped.target_weight) {
            return fail(lambda, format!("image {} has weight {} outside {weights:?}", mapped.image, mapped.image.weight()));
        }
        if !mapped.image.is_member(target_class) {
            return fail(lambda, format!("image {} is not {target_class}", mapped.image));
        }
        if which.expected_case(lambda) != Some(mapped.case_tag) {
            return fail(lambda, format!("tagged {} but preimage selects another case", mapped.case_tag));
        }
        if !gap_condition_holds(&mapped) {
            return fail(lambda, format!("image {} violates the gap condition of {}", mapped.image, mapped.case_tag));
        }
        if !images.insert(mapped.image.clone()) {
            return fail(lambda, format!("image {} already hit by another preimage", mapped.image));
        }
        match maps.backward(&mapped.image, n) {
            Ok(back) if back.image == *lambda && back.case_tag == mapped.case_tag.partner() => {}
            Ok(back) => {
                return fail(lambda, format!("inverse sends {} to {} ({})", mapped.image, back.image, back.case_tag));
            }
            Err(e) => return fail(lambda, format!("inverse failed on {}: {e}", mapped.image)),
        }
    }

    let targets: Vec<Partition> = weights
        .iter()
        .flat_map(|&w| enumerate_class(w as u32, target_class))
        .collect();
    if let Some(missed) = targets.iter().find(|mu| !images.contains(*mu)) {
        return fail(missed, "target not hit by any preimage".to_string());
    }
    if images.len() != targets.len() {
        let target_set: HashSet<_> = targets.iter().collect();
        let stray = images.iter().find(|img| !target_set.contains(img)).expect("size mismatch implies a stray image");
        return fail(stray, "image outside the target set".to_string());
    }
    for mu in &targets {
        let back = match maps.backward(mu, n) {
            Ok(b) => b,
            Err(e) => return fail(mu, format!("inverse failed: {e}")),
        };
        if back.target_weight != n || !back.image.is_member(PartitionClass::Ped) {
            return fail(mu, format!("inverse image {} is not a ped partition of {n}", back.image));
        }
        match maps.forward(&back.image) {
            Ok(again) if again.image == *mu => {}
            Ok(again) => return fail(mu, format!("map sends inverse image {} to {}", back.image, again.image)),
            Err(e) => return fail(mu, format!("forward map failed on {}: {e}", back.image)),
        }
    }
    None
}

/// Full bijection check of one layer `n >= 1`, as a report.
pub fn verify_bijection_layer(n: u64, which: Bijection) -> IdentityReport {
    verify_bijection_layer_with(n, which, &which)
}

pub fn verify_bijection_layer_with(n: u64, which: Bijection, maps: &dyn BijectionMaps) -> IdentityReport {
    let witness = check_layer(n, which, maps);
    IdentityReport::new(which.identity(), Method::Bijection, CheckedRange::new(n, n), witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mapped(parts: &[u32], tag: CaseTag, w: u64) -> MappedPartition {
        MappedPartition { image: p(parts), case_tag: tag, target_weight: w }
    }

    #[test]
    fn phi1_examples() {
        assert_eq!(phi1(&p(&[3, 2, 1])).unwrap(), mapped(&[3, 2, 1], CaseTag::P1Case1, 6));
        assert_eq!(phi1(&p(&[4, 3])).unwrap(), mapped(&[3, 3], CaseTag::P1Case2, 6));
        assert_eq!(phi1(&p(&[2])).unwrap(), mapped(&[1], CaseTag::P1Case2, 1));
    }

    #[test]
    fn phi1_rejects_bad_input() {
        assert_eq!(phi1(&Partition::empty()), Err(BijectionError::Empty));
        assert!(matches!(phi1(&p(&[2, 2, 1])), Err(BijectionError::NotInClass { .. })));
    }

    #[test]
    fn psi1_examples() {
        assert_eq!(psi1(&p(&[3, 3]), 7).unwrap(), mapped(&[4, 3], CaseTag::Psi1Case2, 7));
        assert_eq!(psi1(&p(&[3, 2, 1]), 6).unwrap(), mapped(&[3, 2, 1], CaseTag::Psi1Case1, 6));
        assert_eq!(psi1(&p(&[1]), 2).unwrap(), mapped(&[2], CaseTag::Psi1Case2, 2));
        assert!(matches!(psi1(&p(&[3, 3]), 9), Err(BijectionError::WeightNotInTarget { .. })));
        assert!(matches!(psi1(&p(&[4, 3]), 7), Err(BijectionError::NotInClass { .. })));
    }

    #[test]
    fn phi3_examples() {
        assert_eq!(phi3(&p(&[3, 2])).unwrap(), mapped(&[5, 2], CaseTag::P3Case1, 7));
        assert_eq!(phi3(&p(&[4, 3, 1])).unwrap(), mapped(&[5, 4, 1], CaseTag::P3Case2i, 10));
        assert_eq!(phi3(&p(&[4, 1])).unwrap(), mapped(&[3, 1], CaseTag::P3Case2ii, 4));
        // single even part: the missing second part reads as 0
        assert_eq!(phi3(&p(&[2])).unwrap(), mapped(&[1], CaseTag::P3Case2ii, 1));
        assert_eq!(phi3(&Partition::empty()), Err(BijectionError::Empty));
        assert!(matches!(phi3(&p(&[4, 4])), Err(BijectionError::NotInClass { .. })));
    }

    #[test]
    fn psi3_examples() {
        assert_eq!(psi3(&p(&[5, 2]), 5).unwrap(), mapped(&[3, 2], CaseTag::Psi3Case1, 5));
        assert_eq!(psi3(&p(&[5, 4, 1]), 8).unwrap(), mapped(&[4, 3, 1], CaseTag::Psi3Case2, 8));
        assert_eq!(psi3(&p(&[3, 1]), 5).unwrap(), mapped(&[4, 1], CaseTag::Psi3Case3, 5));
        // single odd part of weight n + 2 goes through case 1
        assert_eq!(psi3(&p(&[5]), 3).unwrap(), mapped(&[3], CaseTag::Psi3Case1, 3));
        assert!(matches!(psi3(&p(&[5, 2]), 6), Err(BijectionError::WeightNotInTarget { .. })));
        assert!(matches!(psi3(&p(&[3, 3]), 4), Err(BijectionError::NotInClass { .. })));
    }

    #[test]
    fn small_layers_pass() {
        for n in 1..=12 {
            assert!(verify_bijection_layer(n, Bijection::Phi1).passed(), "phi1 n={n}");
            assert!(verify_bijection_layer(n, Bijection::Phi3).passed(), "phi3 n={n}");
        }
    }

    #[test]
    fn layer_sizes_match_targets() {
        assert_eq!(enumerate_class(3, PartitionClass::Ped).len(), 3);
        assert_eq!(enumerate_class(3, PartitionClass::De1).len(), 2);
        assert_eq!(enumerate_class(2, PartitionClass::De1).len(), 1);
        assert_eq!(enumerate_class(7, PartitionClass::De3).len(), 5);
        assert_eq!(enumerate_class(4, PartitionClass::De3).len(), 1);
        assert_eq!(enumerate_class(0, PartitionClass::De1).len(), 0);
    }

    struct ForgetSwap;

    impl BijectionMaps for ForgetSwap {
        fn forward(&self, lambda: &Partition) -> Result<MappedPartition, BijectionError> {
            let m = phi3(lambda)?;
            if m.case_tag == CaseTag::P3Case2i {
                let mut parts = lambda.parts().to_vec();
                parts[0] += 2;
                return Ok(MappedPartition::new(Partition::new(parts).unwrap(), CaseTag::P3Case2i));
            }
            Ok(m)
        }

        fn backward(&self, mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError> {
            psi3(mu, n)
        }
    }

    #[test]
    fn broken_case_is_reported_with_first_witness() {
        // the first 2(i) preimage in enumeration order is (2,1) at n = 3
        assert!(verify_bijection_layer_with(2, Bijection::Phi3, &ForgetSwap).passed());
        let report = verify_bijection_layer_with(3, Bijection::Phi3, &ForgetSwap);
        match report.witness() {
            Some(Witness::Bijection { n: 3, partition, .. }) => assert_eq!(partition, &p(&[2, 1])),
            other => panic!("unexpected witness {other:?}"),
        }
    }
}
