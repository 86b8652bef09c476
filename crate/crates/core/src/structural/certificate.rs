use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CertificateKind {
    Acr,
    Bcr,
    Ucb,
    Ccb,
    Multistat,
    Param,
}

impl CertificateKind {
    pub fn label(self) -> &'static str {
        match self {
            CertificateKind::Acr => "ACR",
            CertificateKind::Bcr => "BCR",
            CertificateKind::Ucb => "UCB",
            CertificateKind::Ccb => "CCB",
            CertificateKind::Multistat => "MULTISTAT",
            CertificateKind::Param => "PARAM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    NumericallySupported,
    UserAsserted,
    Failed,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::NumericallySupported => "numerically-supported",
            Status::UserAsserted => "user-asserted",
            Status::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub species: Option<String>,
    /// Which theorem form was applied.
    pub route: String,
    pub anchor: String,
    pub hypotheses: Vec<Hypothesis>,
    pub established: bool,
    /// Names of hypotheses resting on numerics or on user assertion.
    pub flagged: Vec<String>,
    pub conclusion: String,
}

impl Certificate {
    pub fn new(kind: CertificateKind, species: Option<String>, route: &str, anchor: &str) -> Self {
        Certificate {
            kind,
            species,
            route: route.into(),
            anchor: anchor.into(),
            hypotheses: Vec::new(),
            established: false,
            flagged: Vec::new(),
            conclusion: String::new(),
        }
    }

    pub fn push(&mut self, name: &str, status: Status, evidence: impl Into<String>) {
        self.hypotheses.push(Hypothesis { name: name.into(), status, evidence: evidence.into() });
    }

    pub fn check(&mut self, name: &str, ok: bool, evidence: impl Into<String>) -> bool {
        self.push(name, if ok { Status::Verified } else { Status::Failed }, evidence);
        ok
    }

    pub fn failed(&self) -> Vec<&Hypothesis> {
        self.hypotheses.iter().filter(|h| h.status == Status::Failed).collect()
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.hypotheses.iter().find(|h| h.name == name).map(|h| h.status)
    }

    /// Sets `established`, `flagged` and the conclusion text from the hypothesis list.
    pub fn finish(mut self, property: &str) -> Self {
        self.established = !self.hypotheses.is_empty() && self.failed().is_empty();
        self.flagged = self
            .hypotheses
            .iter()
            .filter(|h| matches!(h.status, Status::NumericallySupported | Status::UserAsserted))
            .map(|h| h.name.clone())
            .collect();
        self.conclusion = if self.established {
            if self.flagged.is_empty() {
                property.to_string()
            } else {
                format!("{property} (conditional on flagged hypotheses)")
            }
        } else {
            let names: Vec<&str> = self.failed().iter().map(|h| h.name.as_str()).collect();
            format!("not established: {}", names.join(", "))
        };
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_numeric_support() {
        let mut c = Certificate::new(CertificateKind::Acr, None, "r", "a");
        c.check("deficiency one", true, "");
        c.push("positive equilibrium", Status::NumericallySupported, "x");
        let c = c.finish("ACR in X");
        assert!(c.established);
        assert_eq!(c.flagged, vec!["positive equilibrium".to_string()]);
        assert!(c.conclusion.contains("conditional"));
    }

    #[test]
    fn any_failure_blocks() {
        let mut c = Certificate::new(CertificateKind::Bcr, None, "r", "a");
        c.check("weak reversibility", false, "sl > l");
        c.push("x", Status::UserAsserted, "");
        let c = c.finish("BCR");
        assert!(!c.established);
        assert_eq!(c.conclusion, "not established: weak reversibility");
    }
}
