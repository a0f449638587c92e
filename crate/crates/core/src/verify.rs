//! Runs every identity check over a finite range and collects the reports.
//!
//! Checks fall into four methods. ENUMERATION compares counts that come only
//! from walking partitions. SERIES compares coefficients that come only from
//! series arithmetic. BIJECTION runs the explicit maps layer by layer. CROSS
//! compares enumeration counts against series coefficients.
//!
//! A [`Verifier`] can carry [`Fault`]s, which perturb one series coefficient
//! or one bijection case before the checks consume it. A clean verifier has
//! none.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bijection::{check_layer, Bijection, BijectionError, BijectionMaps, CaseTag, MappedPartition};
use crate::partition::{count_matching, CountTable, Partition, PartitionClass};
use crate::qseries::{Coeff, DeSum, Series, SeriesError, SeriesExpr, Theorem};
use crate::report::{CheckedRange, IdentityId, IdentityReport, Method, Witness};

pub const DEFAULT_ENUM_BOUND: u64 = 40;
pub const DEFAULT_SERIES_BOUND: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("method {method} does not apply to {identity}")]
    Incompatible { identity: IdentityId, method: Method },
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The (identity, method) pairs run by [`Verifier::verify_all`], in report order.
pub const DEFAULT_MATRIX: [(IdentityId, Method); 14] = [
    (IdentityId::Eq1_1, Method::Enumeration),
    (IdentityId::Eq1_1, Method::Series),
    (IdentityId::Eq1_1, Method::Cross),
    (IdentityId::T1, Method::Series),
    (IdentityId::T2, Method::Series),
    (IdentityId::T3, Method::Series),
    (IdentityId::Lemma2_1, Method::Bijection),
    (IdentityId::Lemma2_1, Method::Enumeration),
    (IdentityId::Lemma2_2, Method::Bijection),
    (IdentityId::Lemma2_2, Method::Enumeration),
    (IdentityId::Lemma2_3, Method::Enumeration),
    (IdentityId::GfDe1, Method::Cross),
    (IdentityId::GfDe2, Method::Cross),
    (IdentityId::GfDe3, Method::Cross),
];

/// Methods that apply to `id`.
///
/// Besides the default matrix, `GF_DE*` also accept SERIES, which checks that
/// the summation cutoff drops only summands that vanish at the truncation.
pub fn methods_for(id: IdentityId) -> &'static [Method] {
    match id {
        IdentityId::Eq1_1 => &[Method::Enumeration, Method::Series, Method::Cross],
        IdentityId::T1 | IdentityId::T2 | IdentityId::T3 => &[Method::Series],
        IdentityId::Lemma2_1 | IdentityId::Lemma2_2 => &[Method::Bijection, Method::Enumeration],
        IdentityId::Lemma2_3 => &[Method::Enumeration],
        IdentityId::GfDe1 | IdentityId::GfDe2 | IdentityId::GfDe3 => &[Method::Cross, Method::Series],
    }
}

pub fn is_compatible(id: IdentityId, method: Method) -> bool {
    methods_for(id).contains(&method)
}

/// Methods that `verify_all` runs for `id`.
pub fn default_methods(id: IdentityId) -> Vec<Method> {
    DEFAULT_MATRIX.iter().filter(|(i, _)| *i == id).map(|&(_, m)| m).collect()
}

/// A deliberate corruption, for checking that failures are caught and localized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds `delta` to coefficient `index` of a named series wherever the
    /// verifier builds it.
    Coefficient { series: SeriesExpr, index: usize, delta: Coeff },
    /// Appends a part 1 to every image produced by this case.
    Case(CaseTag),
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::Coefficient { series, index, delta } => write!(f, "coeff:{series}:{index}:{delta}"),
            Fault::Case(tag) => write!(f, "case:{tag}"),
        }
    }
}

impl FromStr for Fault {
    type Err = String;

    /// `coeff:<series>:<index>[:<delta>]` or `case:<TAG>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["case", tag] => Ok(Fault::Case(tag.parse()?)),
            ["coeff", series, index, rest @ ..] if rest.len() <= 1 => {
                let series = series.parse()?;
                let index = index.parse().map_err(|e| format!("bad coefficient index {index:?}: {e}"))?;
                let delta = match rest {
                    [d] => d.parse().map_err(|e| format!("bad delta {d:?}: {e}"))?,
                    _ => 1,
                };
                Ok(Fault::Coefficient { series, index, delta })
            }
            _ => Err(format!("cannot parse fault {s:?}; expected coeff:<series>:<k>[:<delta>] or case:<TAG>")),
        }
    }
}

struct FaultyMaps<'a> {
    inner: Bijection,
    faults: &'a [Fault],
}

impl FaultyMaps<'_> {
    fn perturb(&self, mut mapped: MappedPartition) -> MappedPartition {
        if self.faults.contains(&Fault::Case(mapped.case_tag)) {
            let mut parts = mapped.image.into_parts();
            parts.push(1);
            mapped.image = Partition::new(parts).expect("parts stay positive");
            mapped.target_weight = mapped.image.weight();
        }
        mapped
    }
}

impl BijectionMaps for FaultyMaps<'_> {
    fn forward(&self, lambda: &Partition) -> Result<MappedPartition, BijectionError> {
        self.inner.forward(lambda).map(|m| self.perturb(m))
    }

    fn backward(&self, mu: &Partition, n: u64) -> Result<MappedPartition, BijectionError> {
        self.inner.backward(mu, n).map(|m| self.perturb(m))
    }
}

/// First index in `range` where the two sides differ.
fn first_mismatch<F>(range: CheckedRange, relation: &str, mut sides: F) -> Option<Witness>
where
    F: FnMut(u64) -> (Coeff, Coeff),
{
    (range.start..=range.end).find_map(|n| {
        let (lhs, rhs) = sides(n);
        (lhs != rhs).then(|| Witness::Mismatch { n, relation: relation.to_string(), lhs, rhs })
    })
}

fn coeff_at(s: &Series, n: u64) -> Coeff {
    s.coeff(n as usize).expect("index within truncation order")
}

fn class_of(sum: DeSum) -> PartitionClass {
    match sum {
        DeSum::De1 => PartitionClass::De1,
        DeSum::De2 => PartitionClass::De2,
        DeSum::De3 => PartitionClass::De3,
    }
}

fn gf_sum(id: IdentityId) -> Option<DeSum> {
    match id {
        IdentityId::GfDe1 => Some(DeSum::De1),
        IdentityId::GfDe2 => Some(DeSum::De2),
        IdentityId::GfDe3 => Some(DeSum::De3),
        _ => None,
    }
}

fn sum_expr(sum: DeSum) -> SeriesExpr {
    match sum {
        DeSum::De1 => SeriesExpr::De1,
        DeSum::De2 => SeriesExpr::De2,
        DeSum::De3 => SeriesExpr::De3,
    }
}

/// Runs identity checks, optionally with injected faults.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    faults: Vec<Fault>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.faults.push(fault);
        self
    }

    pub fn faults(&self) -> &[Fault] {
        &self.faults
    }

    fn perturb(&self, expr: SeriesExpr, mut s: Series) -> Series {
        for fault in &self.faults {
            if let Fault::Coefficient { series, index, delta } = *fault {
                if series == expr {
                    if let Some(c) = s.coeff(index) {
                        s.set_coeff(index, c + delta).expect("index checked");
                    }
                }
            }
        }
        s
    }

    /// Builds a named series, then applies any coefficient fault aimed at it.
    fn series(&self, expr: SeriesExpr, order: usize) -> Result<Series, SeriesError> {
        let built = match expr {
            SeriesExpr::Lhs(t) => t.lhs_from(&self.series(sum_expr(t.sum()), order)?)?,
            other => other.build(order)?,
        };
        Ok(self.perturb(expr, built))
    }

    fn maps(&self, which: Bijection) -> FaultyMaps<'_> {
        FaultyMaps { inner: which, faults: &self.faults }
    }

    fn table_bound(id: IdentityId, method: Method, bound: u64) -> Option<u32> {
        match method {
            Method::Enumeration | Method::Cross => {
                let extra = if id == IdentityId::Lemma2_2 { 2 } else { 0 };
                Some((bound + extra) as u32)
            }
            Method::Series | Method::Bijection => None,
        }
    }

    /// Checks `id` by `method` for every `n` (or coefficient index) up to `bound`.
    pub fn verify_identity(&self, id: IdentityId, bound: u64, method: Method) -> Result<IdentityReport, VerifyError> {
        if bound < 1 {
            return Err(VerifyError::ZeroBound);
        }
        if !is_compatible(id, method) {
            return Err(VerifyError::Incompatible { identity: id, method });
        }
        let table = Self::table_bound(id, method, bound).map(CountTable::build);
        self.run(id, method, bound, table.as_ref())
    }

    /// Runs [`DEFAULT_MATRIX`]: enumeration-based checks up to `bound_enum`,
    /// series checks up to `bound_series`.
    pub fn verify_all(&self, bound_enum: u64, bound_series: u64) -> Result<Vec<IdentityReport>, VerifyError> {
        if bound_enum < 1 || bound_series < 1 {
            return Err(VerifyError::ZeroBound);
        }
        let table = CountTable::build(bound_enum as u32 + 2);
        DEFAULT_MATRIX
            .iter()
            .map(|&(id, method)| {
                let bound = if method == Method::Series { bound_series } else { bound_enum };
                self.run(id, method, bound, Some(&table))
            })
            .collect()
    }

    fn run(
        &self,
        id: IdentityId,
        method: Method,
        bound: u64,
        table: Option<&CountTable>,
    ) -> Result<IdentityReport, VerifyError> {
        let count = |n: i64, c: PartitionClass| -> Coeff {
            Coeff::from(table.expect("enumeration checks get a count table").get(n, c))
        };
        let order = bound as usize;
        let full = CheckedRange::new(0, bound);
        let from_one = CheckedRange::new(1, bound);

        let (range, witness) = match (id, method) {
            (IdentityId::Eq1_1, Method::Enumeration) => (
                full,
                first_mismatch(full, "ped(n) = #4-regular(n)", |n| {
                    (count(n as i64, PartitionClass::Ped), count(n as i64, PartitionClass::FourRegular))
                }),
            ),
            (IdentityId::Eq1_1, Method::Series) => {
                let ped = self.series(SeriesExpr::Ped, order)?;
                let four = self.series(SeriesExpr::FourRegular, order)?;
                (
                    full,
                    first_mismatch(full, "(-q^2;q^2)/(q;q^2) = (q^4;q^4)/(q;q)", |n| {
                        (coeff_at(&ped, n), coeff_at(&four, n))
                    }),
                )
            }
            (IdentityId::Eq1_1, Method::Cross) => {
                let ped = self.series(SeriesExpr::Ped, order)?;
                let four = self.series(SeriesExpr::FourRegular, order)?;
                let witness = first_mismatch(full, "[q^n] gf_ped = ped(n)", |n| {
                    (coeff_at(&ped, n), count(n as i64, PartitionClass::Ped))
                })
                .or_else(|| {
                    first_mismatch(full, "[q^n] gf_4regular = #4-regular(n)", |n| {
                        (coeff_at(&four, n), count(n as i64, PartitionClass::FourRegular))
                    })
                });
                (full, witness)
            }
            (IdentityId::T1 | IdentityId::T2 | IdentityId::T3, Method::Series) => {
                let theorem = match id {
                    IdentityId::T1 => Theorem::T1,
                    IdentityId::T2 => Theorem::T2,
                    _ => Theorem::T3,
                };
                let lhs = self.series(SeriesExpr::Lhs(theorem), order)?;
                let rhs = self.series(SeriesExpr::Rhs(theorem), order)?;
                (full, first_mismatch(full, "lhs = rhs", |n| (coeff_at(&lhs, n), coeff_at(&rhs, n))))
            }
            (IdentityId::Lemma2_1 | IdentityId::Lemma2_2, Method::Bijection) => {
                let which = if id == IdentityId::Lemma2_1 { Bijection::Phi1 } else { Bijection::Phi3 };
                let maps = self.maps(which);
                (from_one, (1..=bound).find_map(|n| check_layer(n, which, &maps)))
            }
            (IdentityId::Lemma2_1, Method::Enumeration) => (
                from_one,
                first_mismatch(from_one, "DE1(n) + DE1(n-1) = ped(n)", |n| {
                    let n = n as i64;
                    (count(n, PartitionClass::De1) + count(n - 1, PartitionClass::De1), count(n, PartitionClass::Ped))
                }),
            ),
            (IdentityId::Lemma2_2, Method::Enumeration) => (
                from_one,
                first_mismatch(from_one, "DE3(n+2) + DE3(n-1) = ped(n)", |n| {
                    let n = n as i64;
                    (count(n + 2, PartitionClass::De3) + count(n - 1, PartitionClass::De3), count(n, PartitionClass::Ped))
                }),
            ),
            (IdentityId::Lemma2_3, Method::Enumeration) => (from_one, self.lemma_2_3(bound, &count)),
            (IdentityId::GfDe1 | IdentityId::GfDe2 | IdentityId::GfDe3, Method::Cross) => {
                let sum = gf_sum(id).expect("GF identity");
                let class = class_of(sum);
                let series = self.series(sum_expr(sum), order)?;
                let relation = format!("[q^n] gf_{class} = {class}(n)");
                (full, first_mismatch(full, &relation, |n| (coeff_at(&series, n), count(n as i64, class))))
            }
            (IdentityId::GfDe1 | IdentityId::GfDe2 | IdentityId::GfDe3, Method::Series) => {
                let sum = gf_sum(id).expect("GF identity");
                let cut = self.series(sum_expr(sum), order)?;
                // every summand n <= order, far past where the cutoff stops
                let long = sum.partial_sum(order + 1, order)?;
                (full, first_mismatch(full, "cutoff sum = long sum", |n| (coeff_at(&cut, n), coeff_at(&long, n))))
            }
            _ => return Err(VerifyError::Incompatible { identity: id, method }),
        };
        Ok(IdentityReport::new(id, method, range, witness))
    }

    /// Every link of the counting argument, each compared on its own so that a
    /// failure names the link that broke.
    fn lemma_2_3(&self, bound: u64, count: &dyn Fn(i64, PartitionClass) -> Coeff) -> Option<Witness> {
        use PartitionClass::{De1, De2, Ped, PedGt1};
        // the displayed chain needs the DE3 lemma at n - 2, so it starts at 3
        let chain_start = 3;
        let four_regular_gt1 =
            |n: u64| Coeff::from(count_matching(n as u32, |p| p.iter().all(|&x| x >= 2 && x % 4 != 0)));
        for n in 1..=bound {
            let i = n as i64;
            let de2_pair = count(i, De2) + count(i - 3, De2);
            let de1_diff = count(i, De1) - count(i - 2, De1);
            let ped_diff = count(i, Ped) - count(i - 1, Ped);
            let gt1 = count(i, PedGt1);
            let single = CheckedRange::new(n, n);
            let witness = first_mismatch(single, "DE2(n) + DE2(n-3) = ped_>1(n)", |_| (de2_pair, gt1))
                .or_else(|| {
                    if n < chain_start {
                        return None;
                    }
                    first_mismatch(single, "DE2(n) + DE2(n-3) = DE1(n) - DE1(n-2)", |_| (de2_pair, de1_diff))
                        .or_else(|| first_mismatch(single, "DE1(n) - DE1(n-2) = ped(n) - ped(n-1)", |_| (de1_diff, ped_diff)))
                        .or_else(|| first_mismatch(single, "ped(n) - ped(n-1) = ped_>1(n)", |_| (ped_diff, gt1)))
                })
                .or_else(|| first_mismatch(single, "ped_>1(n) = #4-regular_>1(n)", |n| (gt1, four_regular_gt1(n))));
            if witness.is_some() {
                return witness;
            }
        }
        None
    }
}

/// [`Verifier::verify_identity`] without faults.
pub fn verify_identity(id: IdentityId, bound: u64, method: Method) -> Result<IdentityReport, VerifyError> {
    Verifier::new().verify_identity(id, bound, method)
}

/// [`Verifier::verify_all`] without faults.
pub fn verify_all(bound_enum: u64, bound_series: u64) -> Result<Vec<IdentityReport>, VerifyError> {
    Verifier::new().verify_all(bound_enum, bound_series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_is_compatible_and_complete() {
        for (id, method) in DEFAULT_MATRIX {
            assert!(is_compatible(id, method), "{id} {method}");
        }
        for id in IdentityId::ALL {
            assert!(!default_methods(id).is_empty(), "{id}");
        }
    }

    #[test]
    fn incompatible_pairs_are_rejected() {
        assert_eq!(
            verify_identity(IdentityId::T1, 5, Method::Bijection),
            Err(VerifyError::Incompatible { identity: IdentityId::T1, method: Method::Bijection })
        );
        assert!(verify_identity(IdentityId::GfDe1, 5, Method::Bijection).is_err());
        assert!(verify_identity(IdentityId::Lemma2_3, 5, Method::Series).is_err());
        assert_eq!(verify_identity(IdentityId::T1, 0, Method::Series), Err(VerifyError::ZeroBound));
    }

    #[test]
    fn spot_checks_pass() {
        assert!(verify_identity(IdentityId::Lemma2_1, 12, Method::Bijection).unwrap().passed());
        assert!(verify_identity(IdentityId::T2, 60, Method::Series).unwrap().passed());
        assert!(verify_identity(IdentityId::GfDe3, 30, Method::Cross).unwrap().passed());
        assert!(verify_identity(IdentityId::GfDe2, 40, Method::Series).unwrap().passed());
        assert!(verify_identity(IdentityId::Lemma2_3, 25, Method::Enumeration).unwrap().passed());
    }

    #[test]
    fn degenerate_bounds_are_well_formed() {
        let reports = verify_all(1, 1).unwrap();
        assert_eq!(reports.len(), DEFAULT_MATRIX.len());
        assert!(reports.iter().all(IdentityReport::passed));
        let lemma = &reports[8];
        assert_eq!(lemma.identity(), IdentityId::Lemma2_2);
        assert_eq!(lemma.range(), CheckedRange::new(1, 1));
    }

    #[test]
    fn coefficient_fault_names_index() {
        let v = Verifier::new().with_fault(Fault::Coefficient { series: SeriesExpr::De3, index: 7, delta: 1 });
        let r = v.verify_identity(IdentityId::GfDe3, 20, Method::Cross).unwrap();
        match r.witness() {
            Some(Witness::Mismatch { n: 7, lhs, rhs, .. }) => assert_eq!(*lhs, *rhs + 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(v.verify_identity(IdentityId::GfDe1, 20, Method::Cross).unwrap().passed());
        assert!(!v.verify_identity(IdentityId::T3, 20, Method::Series).unwrap().passed());
    }

    #[test]
    fn case_fault_breaks_only_its_lemma() {
        let v = Verifier::new().with_fault(Fault::Case(CaseTag::Psi1Case2));
        assert!(!v.verify_identity(IdentityId::Lemma2_1, 6, Method::Bijection).unwrap().passed());
        assert!(v.verify_identity(IdentityId::Lemma2_2, 6, Method::Bijection).unwrap().passed());
        assert!(v.verify_identity(IdentityId::Lemma2_1, 6, Method::Enumeration).unwrap().passed());
    }

    #[test]
    fn fault_strings_parse() {
        assert_eq!(
            "coeff:de3:17".parse::<Fault>().unwrap(),
            Fault::Coefficient { series: SeriesExpr::De3, index: 17, delta: 1 }
        );
        assert_eq!(
            "coeff:t1-lhs:4:-2".parse::<Fault>().unwrap(),
            Fault::Coefficient { series: SeriesExpr::Lhs(Theorem::T1), index: 4, delta: -2 }
        );
        assert_eq!("case:P3_CASE2I".parse::<Fault>().unwrap(), Fault::Case(CaseTag::P3Case2i));
        assert!("coeff:de9:1".parse::<Fault>().is_err());
        assert!("nonsense".parse::<Fault>().is_err());
    }

    #[test]
    fn smaller_bounds_give_the_same_verdicts() {
        let v = Verifier::new().with_fault(Fault::Coefficient { series: SeriesExpr::Ped, index: 9, delta: 1 });
        for (id, method) in DEFAULT_MATRIX {
            let wide = v.verify_identity(id, 14, method).unwrap();
            for b in [9, 14] {
                let narrow = v.verify_identity(id, b, method).unwrap();
                assert_eq!(wide.witness(), narrow.witness(), "{id} {method} bound {b}");
            }
            let below = v.verify_identity(id, 8, method).unwrap();
            assert!(below.passed() || wide.witness() == below.witness());
        }
    }
}
