//! Shared record type for per-character check results, and report encoding.

use serde::{Deserialize, Serialize};

/// One (group, character, prime) check result with its intermediate
/// quantities: a = nu_p(c(chi)), the conductor c(chi), the degree index
/// relevant to the check, chi(1), and the verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct VerificationRecord {
    pub group: String,
    pub char_index: usize,
    /// The prime of the check; absent for checks that are not per-prime.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    pub a: u32,
    pub conductor: u64,
    pub index: u64,
    pub degree: u64,
    pub check: String,
    /// true = pass
    pub verdict: bool,
    /// A pass that holds because the check hypothesis is empty (a = 0).
    #[serde(default)]
    pub vacuous: bool,
    /// Set from corpus metadata: a failure here is the expected outcome.
    #[serde(default)]
    pub expected_fail: bool,
}

impl VerificationRecord {
    /// Failures that are not annotated as expected.
    pub fn is_unexpected_failure(&self) -> bool {
        !self.verdict && !self.expected_fail
    }

    /// Stable sort key: (group, charIndex, prime, check).
    pub fn sort_key(&self) -> (String, usize, u64, String) {
        (
            self.group.clone(),
            self.char_index,
            self.prime.unwrap_or(0),
            self.check.clone(),
        )
    }

    pub fn csv_header() -> &'static str {
        "group,charIndex,prime,a,conductor,index,degree,check,verdict"
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.group,
            self.char_index,
            self.prime.map_or(String::new(), |p| p.to_string()),
            self.a,
            self.conductor,
            self.index,
            self.degree,
            self.check,
            if self.verdict { "pass" } else { "fail" }
        )
    }
}
