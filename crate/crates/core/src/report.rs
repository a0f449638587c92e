//! Verdict records shared by the bijection checks and the verifier.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::partition::Partition;
use crate::qseries::Coeff;

/// Which identity a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    /// ped(n) equals the number of 4-regular partitions of n.
    #[serde(rename = "EQ_1_1")]
    Eq1_1,
    /// `(1+q) * sum_DE1 = (q^4;q^4)_inf / (q;q)_inf - 1`.
    T1,
    /// `(1+q^3) * sum_DE2 = (q^4;q^4)_inf / (q^2;q)_inf - 1`.
    T2,
    /// `(1+q^3) * sum_DE3 = q^2 (q^4;q^4)_inf / (q;q)_inf - q^2 + q`.
    T3,
    /// `DE1(n) + DE1(n-1) = ped(n)`, realized by phi1/psi1.
    #[serde(rename = "LEMMA_2_1")]
    Lemma2_1,
    /// `DE3(n+2) + DE3(n-1) = ped(n)`, realized by phi3/psi3.
    #[serde(rename = "LEMMA_2_2")]
    Lemma2_2,
    /// `DE2(n) + DE2(n-3) = ped_{>1}(n)`.
    #[serde(rename = "LEMMA_2_3")]
    Lemma2_3,
    #[serde(rename = "GF_DE1")]
    GfDe1,
    #[serde(rename = "GF_DE2")]
    GfDe2,
    #[serde(rename = "GF_DE3")]
    GfDe3,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::Eq1_1,
        IdentityId::T1,
        IdentityId::T2,
        IdentityId::T3,
        IdentityId::Lemma2_1,
        IdentityId::Lemma2_2,
        IdentityId::Lemma2_3,
        IdentityId::GfDe1,
        IdentityId::GfDe2,
        IdentityId::GfDe3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq1_1 => "EQ_1_1",
            IdentityId::T1 => "T1",
            IdentityId::T2 => "T2",
            IdentityId::T3 => "T3",
            IdentityId::Lemma2_1 => "LEMMA_2_1",
            IdentityId::Lemma2_2 => "LEMMA_2_2",
            IdentityId::Lemma2_3 => "LEMMA_2_3",
            IdentityId::GfDe1 => "GF_DE1",
            IdentityId::GfDe2 => "GF_DE2",
            IdentityId::GfDe3 => "GF_DE3",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// How a check was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    /// Counts from full enumeration only.
    Enumeration,
    /// Coefficients of truncated series only.
    Series,
    /// Executing the explicit maps and checking they are mutually inverse.
    Bijection,
    /// Enumeration counts against series coefficients.
    Cross,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Enumeration, Method::Series, Method::Bijection, Method::Cross];

    pub fn name(self) -> &'static str {
        match self {
            Method::Enumeration => "ENUMERATION",
            Method::Series => "SERIES",
            Method::Bijection => "BIJECTION",
            Method::Cross => "CROSS",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        Method::ALL
            .into_iter()
            .find(|m| m.name() == upper)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Inclusive range of `n` (or coefficient index) that was actually checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckedRange {
    pub start: u64,
    pub end: u64,
}

impl CheckedRange {
    pub fn new(start: u64, end: u64) -> Self {
        Self { start, end }
    }
}

impl Serialize for CheckedRange {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.start)?;
        tup.serialize_element(&self.end)?;
        tup.end()
    }
}

impl fmt::Display for CheckedRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The smallest counterexample attached to a failing report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two quantities that should agree at index `n` but do not.
    Mismatch {
        n: u64,
        relation: String,
        lhs: Coeff,
        rhs: Coeff,
    },
    /// A partition on which a bijection check broke.
    Bijection {
        n: u64,
        partition: Partition,
        detail: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mismatch { n, relation, lhs, rhs } => {
                write!(f, "n={n}: {relation}: {lhs} != {rhs}")
            }
            Witness::Bijection { n, partition, detail } => write!(f, "n={n}: {partition}: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one identity check. The verdict is `Pass` exactly when there is
/// no witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    identity: IdentityId,
    method: Method,
    range: CheckedRange,
    verdict: Verdict,
    witness: Option<Witness>,
}

impl IdentityReport {
    pub fn new(identity: IdentityId, method: Method, range: CheckedRange, witness: Option<Witness>) -> Self {
        let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
        Self { identity, method, range, verdict, witness }
    }

    pub fn identity(&self) -> IdentityId {
        self.identity
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn range(&self) -> CheckedRange {
        self.range
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// JSON object with keys `identity`, `method`, `range`, `verdict`, `witness`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {} {}", self.identity, self.method, self.range)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_witness() {
        let ok = IdentityReport::new(IdentityId::T1, Method::Series, CheckedRange::new(0, 5), None);
        assert!(ok.passed());
        let bad = IdentityReport::new(
            IdentityId::T1,
            Method::Series,
            CheckedRange::new(0, 5),
            Some(Witness::Mismatch { n: 3, relation: "lhs = rhs".into(), lhs: 1, rhs: 2 }),
        );
        assert_eq!(bad.verdict(), Verdict::Fail);
    }

    #[test]
    fn json_keys_are_stable() {
        let r = IdentityReport::new(IdentityId::Lemma2_3, Method::Enumeration, CheckedRange::new(1, 4), None);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "identity": "LEMMA_2_3",
                "method": "ENUMERATION",
                "range": [1, 4],
                "verdict": "pass",
                "witness": null
            })
        );
    }

    #[test]
    fn names_parse_back() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("lemma_2_1".parse::<IdentityId>().unwrap(), IdentityId::Lemma2_1);
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }
}
