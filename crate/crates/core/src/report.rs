//! Structured analysis document for one pair of boundary orders.

use std::time::Instant;

use serde::Serialize;

use crate::ball::{
    ball_anatomy, check_centre_partition, is_sturm_3ball, is_three_meander_template, BallAnatomy,
    CentreReport, TemplateVerdict,
};
use crate::invariants::{
    check_traversal_table, Connection, HemisphereTemplate, Invariants, TraversalReport, ZeroMatrix,
};
use crate::meander::{is_sturm, morse_numbers, MorseVector, Orders, Permutation, SturmVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub sigma: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallSection {
    pub template: TemplateVerdict,
    pub sturm_3ball: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anatomy: Option<BallAnatomy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centre: Option<CentreReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub verdict: SturmVerdict,
    pub sturm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morse: Option<MorseVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<ZeroMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hetero: Option<Vec<Connection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hemispheres: Option<HemisphereTemplate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traversal: Option<TraversalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSection>,
    /// Wall time in milliseconds; only present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
}

pub fn analyze(orders: &Orders, timing: bool) -> AnalysisReport {
    let start = Instant::now();
    let verdict = is_sturm(orders);
    let mut report = AnalysisReport {
        input: InputEcho {
            h0: orders.h0_list().to_vec(),
            h1: orders.h1_list().to_vec(),
            sigma: orders.sigma(),
        },
        verdict,
        sturm: verdict.is_sturm(),
        morse: morse_numbers(orders).ok(),
        zero: None,
        hetero: None,
        hemispheres: None,
        traversal: None,
        ball: None,
        millis: None,
    };
    if let Ok(inv) = Invariants::new(orders) {
        let template = is_three_meander_template(&inv);
        let anatomy = ball_anatomy(&inv).ok();
        let centre = anatomy.as_ref().map(|a| check_centre_partition(&inv, a));
        report.traversal = check_traversal_table(&inv).ok();
        report.ball = Some(BallSection {
            template,
            sturm_3ball: is_sturm_3ball(&inv),
            anatomy,
            centre,
        });
        report.hetero = Some(inv.graph.hetero.clone());
        report.hemispheres = Some(inv.template.clone());
        report.zero = Some(inv.zero);
    }
    if timing {
        report.millis = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::octahedron_orders;

    #[test]
    fn octahedron_report() {
        let r = analyze(&octahedron_orders(), false);
        assert!(r.sturm);
        assert_eq!(r.morse.as_ref().unwrap().get(27), 3);
        let ball = r.ball.as_ref().unwrap();
        assert!(ball.sturm_3ball && ball.template.passed());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["morse"][26], 3);
        assert!(json.get("millis").is_none());
    }

    #[test]
    fn report_is_deterministic() {
        let o = octahedron_orders();
        assert_eq!(analyze(&o, false).to_json(), analyze(&o, false).to_json());
    }

    #[test]
    fn non_sturm_report() {
        let o = Orders::from_permutation(&"1 3 2".parse().unwrap());
        let r = analyze(&o, true);
        assert!(!r.sturm);
        assert!(r.zero.is_none() && r.ball.is_none());
        assert!(r.millis.is_some());
    }
}
