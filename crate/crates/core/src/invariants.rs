use serde::{Deserialize, Serialize};

/// Numerical invariants of a minimal surface of general type.
///
/// `e` and `tau` always satisfy the Noether relations `e = 12 chi - K^2`
/// and `tau = K^2 - 8 chi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub ksq: i64,
    pub e: i64,
    pub tau: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg: Option<i64>,
}

impl SurfaceInvariants {
    pub fn from_chi_ksq(chi: i64, ksq: i64) -> Self {
        SurfaceInvariants {
            chi,
            ksq,
            e: 12 * chi - ksq,
            tau: ksq - 8 * chi,
            q: None,
            pg: None,
        }
    }

    /// Sets `q` and the geometric genus `pg = chi - 1 + q`.
    pub fn with_irregularity(mut self, q: i64) -> Self {
        self.q = Some(q);
        self.pg = Some(self.chi - 1 + q);
        self
    }

    pub fn is_consistent(&self) -> bool {
        let noether = self.e == 12 * self.chi - self.ksq && self.tau == self.ksq - 8 * self.chi;
        let holomorphic = match (self.q, self.pg) {
            (Some(q), Some(pg)) => self.chi == 1 - q + pg,
            _ => true,
        };
        noether && holomorphic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noether_relations() {
        let inv = SurfaceInvariants::from_chi_ksq(34, 128);
        assert_eq!(inv.e, 280);
        assert_eq!(inv.tau, -144);
        assert!(inv.is_consistent());
        let inv = SurfaceInvariants::from_chi_ksq(1, 8).with_irregularity(0);
        assert_eq!((inv.q, inv.pg), (Some(0), Some(0)));
        assert!(inv.is_consistent());
    }
}
