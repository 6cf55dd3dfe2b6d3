//! Invariant reports and their JSON and plain-text renderings.

use locinv_core::{
    canonical_from_gate, classify_region, eta_analytic, eta_numeric, eta_spectral,
    makhlin_from_gate, CanonicalParams, GateMatrix, MakhlinInvariants, TolerancePolicy, WeylRegion,
};
use serde::Serialize;

use crate::error::CliError;

/// Which `eta` routes to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSelection {
    Numeric,
    Analytic,
    Spectral,
    All,
}

impl MethodSelection {
    fn wants(self, m: MethodSelection) -> bool {
        self == MethodSelection::All || self == m
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EtaValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<usize>,
}

impl EtaValues {
    pub fn present(&self) -> Vec<(&'static str, usize)> {
        [("numeric", self.numeric), ("analytic", self.analytic), ("spectral", self.spectral)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect()
    }

    pub fn agree(&self) -> bool {
        let present = self.present();
        present.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub gate: String,
    pub canonical: CanonicalParams,
    pub makhlin: MakhlinInvariants,
    pub region: WeylRegion,
    pub eta: EtaValues,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    pub fn compute(
        gate: &GateMatrix,
        methods: MethodSelection,
        tol: &TolerancePolicy,
    ) -> Result<Self, CliError> {
        let canonical = canonical_from_gate(gate, tol)?;
        let makhlin = makhlin_from_gate(gate)?;
        let region = classify_region(canonical, tol)?;
        let mut eta = EtaValues::default();
        if methods.wants(MethodSelection::Numeric) {
            eta.numeric = Some(eta_numeric(gate, tol)?.eta);
        }
        if methods.wants(MethodSelection::Analytic) {
            eta.analytic = Some(eta_analytic(canonical, tol)?.eta);
        }
        if methods.wants(MethodSelection::Spectral) {
            eta.spectral = Some(eta_spectral(gate, tol)?.eta);
        }
        let mut warnings = Vec::new();
        if !eta.agree() {
            let parts: Vec<String> =
                eta.present().iter().map(|(k, v)| format!("{k} {v}")).collect();
            warnings.push(format!("eta methods disagree: {}", parts.join(", ")));
        }
        let gate = gate.label().unwrap_or("gate").to_string();
        Ok(InvariantReport { gate, canonical, makhlin, region, eta, warnings })
    }

    pub fn is_consistent(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn to_json(&self, degrees: bool) -> String {
        let angle = |x: f64| display_number(if degrees { x.to_degrees() } else { x });
        let json = JsonReport {
            gate: &self.gate,
            angle_unit: if degrees { "degrees" } else { "radians" },
            c1: angle(self.canonical.c1),
            c2: angle(self.canonical.c2),
            c3: angle(self.canonical.c3),
            g1: display_number(self.makhlin.g1),
            g2: display_number(self.makhlin.g2),
            g3: display_number(self.makhlin.g3),
            region: self.region.name(),
            eta: self.eta,
            warnings: &self.warnings,
        };
        serde_json::to_string(&json).expect("report serializes")
    }

    pub fn to_plain(&self, degrees: bool) -> String {
        let angle = |x: f64| display_number(if degrees { x.to_degrees() } else { x });
        let unit = if degrees { " deg" } else { "" };
        let eta: Vec<String> = self.eta.present().iter().map(|(k, v)| format!("{k} {v}")).collect();
        let mut out = format!(
            "gate     {}\nc        [{}, {}, {}]{unit}\ng        ({}, {}, {})\nregion   {}\neta      {}\n",
            self.gate,
            angle(self.canonical.c1),
            angle(self.canonical.c2),
            angle(self.canonical.c3),
            display_number(self.makhlin.g1),
            display_number(self.makhlin.g2),
            display_number(self.makhlin.g3),
            self.region,
            eta.join(", "),
        );
        for w in &self.warnings {
            out.push_str(&format!("warning  {w}\n"));
        }
        out
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    gate: &'a str,
    angle_unit: &'static str,
    c1: f64,
    c2: f64,
    c3: f64,
    g1: f64,
    g2: f64,
    g3: f64,
    region: &'static str,
    eta: EtaValues,
    warnings: &'a [String],
}

/// Rounds to 12 significant digits; magnitudes below `1e-12` print as zero
/// so that rounding residue does not show up as `1e-17`.
pub fn display_number(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use locinv_core::{build_named, GateSpec};

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(display_number(1.234567890123456), 1.23456789012);
        assert_eq!(display_number(-1e-17), 0.0);
        assert_eq!(display_number(0.25), 0.25);
        assert_eq!(display_number(-1.0), -1.0);
    }

    #[test]
    fn cnot_report() {
        let u = build_named(GateSpec::Cnot).unwrap();
        let r =
            InvariantReport::compute(&u, MethodSelection::All, &TolerancePolicy::DEFAULT).unwrap();
        assert_eq!(r.region, WeylRegion::EdgeOA1);
        assert_eq!(r.eta.present(), vec![("numeric", 4), ("analytic", 4), ("spectral", 4)]);
        assert!(r.is_consistent());
        let json = r.to_json(false);
        assert!(json.contains(r#""c1":1.57079632679"#), "{json}");
        assert!(json.contains(r#""g3":1.0"#), "{json}");
        assert!(r.to_json(true).contains(r#""c1":90.0"#));
    }

    #[test]
    fn single_method_selection() {
        let u = build_named(GateSpec::Swap).unwrap();
        let r = InvariantReport::compute(&u, MethodSelection::Spectral, &TolerancePolicy::DEFAULT)
            .unwrap();
        assert_eq!(r.eta, EtaValues { spectral: Some(0), ..Default::default() });
        assert!(!r.to_json(false).contains("numeric"));
    }
}
