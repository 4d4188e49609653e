use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::tableaux::{Partition, Tableau};

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lambda: Partition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Tableau>,
    pub detail: String,
}

/// Ternary outcome of a check. Serializes to `"pass"`, or to an object
/// carrying the witness or the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Skipped(String),
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped(_) => "skipped",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    /// A failure beats a skip, which beats a pass; the first of equals wins.
    pub fn and(self, other: Verdict) -> Verdict {
        match (&self, &other) {
            (Verdict::Fail(_), _) => self,
            (_, Verdict::Fail(_)) => other,
            (Verdict::Skipped(_), _) => self,
            (_, Verdict::Skipped(_)) => other,
            _ => Verdict::Pass,
        }
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().fold(Verdict::Pass, Verdict::and)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Pass => s.serialize_str("pass"),
            Verdict::Fail(w) => {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("status", "fail")?;
                map.serialize_entry("witness", w)?;
                map.end()
            }
            Verdict::Skipped(reason) => {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("status", "skipped")?;
                map.serialize_entry("reason", reason)?;
                map.end()
            }
        }
    }
}
