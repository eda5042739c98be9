//! Self-checking result records emitted by the command line.

use serde::Serialize;
use serde_json::{json, Value};
use shiftlab_core::metrics::point_sofic_certificate;
use shiftlab_core::sofic::LabeledGraph;
use shiftlab_core::{ExactRational, PeriodicPoint, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CertValue {
    /// `"p/q"`
    Exact(String),
    Float(f64),
}

impl From<&ExactRational> for CertValue {
    fn from(r: &ExactRational) -> Self {
        CertValue::Exact(r.to_string())
    }
}

/// An independent computation compared with the certified value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub method: String,
    pub value: CertValue,
    /// `"=="`, `"<="` or `">="`, read as `value relation certified`
    pub relation: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub value: CertValue,
    pub witnesses: Value,
    pub cross_checks: Vec<CrossCheck>,
}

impl Certificate {
    pub fn consistent(&self) -> bool {
        self.cross_checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Certificate for `dist(p, X(g))` with the optimal product cycle, the
/// witness point and two cross-checks: the witness density (must equal the
/// value) and the finite-window lower envelope (must not exceed it).
pub fn point_sofic(p: &PeriodicPoint, g: &LabeledGraph, horizon: usize) -> Result<Certificate> {
    let a = g.alphabet();
    let c = point_sofic_certificate(p, g, horizon)?;
    let verified = c.verify(p, g).is_ok();
    Ok(Certificate {
        claim: format!(
            "d-bar distance from {} to the shift presented by the graph",
            p.render(a)
        ),
        value: (&c.value).into(),
        witnesses: json!({
            "point": p.render(a),
            "nearest_point": c.witness.render(a),
            "product_cycle": c.cycle.iter().map(|&(phase, v)| json!([phase, v])).collect::<Vec<_>>(),
            "lower_envelope_window": c.lower_envelope_window,
        }),
        cross_checks: vec![
            CrossCheck {
                method: "mismatch density of the nearest point".into(),
                value: (&c.witness_density).into(),
                relation: "==",
                holds: verified && c.witness_density == c.value,
            },
            CrossCheck {
                method: "finite-window lower envelope".into(),
                value: (&c.lower_envelope).into(),
                relation: "<=",
                holds: c.lower_envelope <= c.value,
            },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn nondbar_certificate() {
        let c = point_sofic(&catalog::nondbar_point(1), &catalog::parity_shift(), 16).unwrap();
        assert!(c.consistent());
        assert_eq!(c.value, CertValue::Exact("1/7".into()));
        let v: Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["value"], "1/7");
        assert_eq!(v["cross_checks"][0]["relation"], "==");
    }
}
