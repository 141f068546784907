//! Report structures: every verdict rendered both human-readable and as
//! JSON, with each rational shown exactly (`p/q`) and as a decimal to 12
//! significant digits.

use serde::Serialize;

use crate::game::{BestResponse, ClassificationResult, GameVerdict, Witness};
use crate::prob::{JointDistribution, Ratio};
use crate::rational::{decimal_string, exact_string};
use crate::solve::{Certificate, CertificateKind, IntersectionResult};
use crate::strategy::LinearConstraint;

/// A rational rendered exactly and in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QView {
    pub exact: String,
    pub decimal: String,
}

impl From<&Ratio> for QView {
    fn from(r: &Ratio) -> Self {
        QView {
            exact: exact_string(r),
            decimal: decimal_string(r),
        }
    }
}

impl std::fmt::Display for QView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exact == self.decimal {
            write!(f, "{}", self.exact)
        } else {
            write!(f, "{} ({})", self.exact, self.decimal)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionView {
    pub outcomes: Vec<String>,
    pub probs: Vec<QView>,
}

impl From<&JointDistribution> for DistributionView {
    fn from(j: &JointDistribution) -> Self {
        DistributionView {
            outcomes: j
                .space()
                .outcomes()
                .map(|a| j.space().outcome_label(&a))
                .collect(),
            probs: j.probs().iter().map(QView::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateView {
    pub kind: CertificateKind,
    pub multipliers: Vec<QView>,
    pub constraint_labels: Vec<String>,
    /// Result of recombining the constraints under the multipliers.
    pub verified: bool,
}

impl CertificateView {
    pub fn new(cert: &Certificate, constraints: &[LinearConstraint]) -> Self {
        CertificateView {
            kind: cert.kind,
            multipliers: cert.multipliers.iter().map(QView::from).collect(),
            constraint_labels: constraints.iter().map(|c| c.label.clone()).collect(),
            verified: cert.verify(constraints),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictView {
    Empty {
        certificate: Option<CertificateView>,
    },
    Singleton {
        distribution: DistributionView,
    },
    Polytope {
        dimension: usize,
        sample: DistributionView,
    },
}

impl VerdictView {
    /// Render an intersection verdict; pass the originating constraints to
    /// have the certificate verified inline.
    pub fn new(result: &IntersectionResult, constraints: Option<&[LinearConstraint]>) -> Self {
        match result {
            IntersectionResult::Empty { certificate } => VerdictView::Empty {
                certificate: constraints.map(|cs| CertificateView::new(certificate, cs)),
            },
            IntersectionResult::Singleton(j) => VerdictView::Singleton {
                distribution: j.into(),
            },
            IntersectionResult::Polytope { dimension, sample } => VerdictView::Polytope {
                dimension: *dimension,
                sample: sample.into(),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VerdictView::Empty { .. } => "empty",
            VerdictView::Singleton { .. } => "singleton",
            VerdictView::Polytope { .. } => "polytope",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessView {
    pub choice: Vec<String>,
    pub result: VerdictView,
}

impl From<&Witness> for WitnessView {
    fn from(w: &Witness) -> Self {
        WitnessView {
            choice: w.choice_labels.clone(),
            result: VerdictView::new(&w.result, None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationView {
    pub verdict: GameVerdict,
    pub checked: usize,
    pub coverage_note: String,
    pub witnesses: Vec<WitnessView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClassificationView {
    pub fn new(c: &ClassificationResult) -> Self {
        ClassificationView {
            verdict: c.verdict,
            checked: c.checked,
            coverage_note: c.coverage_note.clone(),
            witnesses: c.witnesses.iter().map(WitnessView::from).collect(),
            note: None,
        }
    }

    /// Like [`ClassificationView::new`], but resolves each witness's
    /// constraint system through the game so infeasibility certificates are
    /// shown and verified inline.
    pub fn with_certificates(
        c: &ClassificationResult,
        game: &crate::game::ExtendedGame,
    ) -> crate::Result<Self> {
        let mut witnesses = Vec::with_capacity(c.witnesses.len());
        for w in &c.witnesses {
            let constraints = game.choice_constraints(&w.choice)?;
            witnesses.push(WitnessView {
                choice: w.choice_labels.clone(),
                result: VerdictView::new(&w.result, constraints.as_deref()),
            });
        }
        Ok(ClassificationView {
            verdict: c.verdict,
            checked: c.checked,
            coverage_note: c.coverage_note.clone(),
            witnesses,
            note: None,
        })
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestResponseView {
    pub player: String,
    pub maximizer: String,
    pub value: QView,
    pub maximizers: Vec<String>,
    /// `(candidate label, expected utility)` over the whole grid.
    pub table: Vec<(String, QView)>,
}

impl BestResponseView {
    pub fn new(player: &str, br: &BestResponse) -> Self {
        BestResponseView {
            player: player.to_string(),
            maximizer: br.best_label.clone(),
            value: QView::from(&br.value),
            maximizers: br
                .table
                .iter()
                .filter(|(c, _, _)| br.maximizers.contains(c))
                .map(|(_, l, _)| l.clone())
                .collect(),
            table: br
                .table
                .iter()
                .map(|(_, l, v)| (l.clone(), QView::from(v)))
                .collect(),
        }
    }
}

pub fn render_distribution(d: &DistributionView, indent: &str) -> String {
    d.outcomes
        .iter()
        .zip(&d.probs)
        .map(|(o, p)| format!("{indent}P({o}) = {p}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_verdict(v: &VerdictView, indent: &str) -> String {
    match v {
        VerdictView::Empty { certificate } => {
            let mut s = format!("{indent}empty (over-played joint choice)");
            if let Some(c) = certificate {
                s.push_str(&format!(
                    "\n{indent}  infeasibility certificate ({:?}, verified={}): [{}]",
                    c.kind,
                    c.verified,
                    c.multipliers
                        .iter()
                        .map(|m| m.exact.clone())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            s
        }
        VerdictView::Singleton { distribution } => format!(
            "{indent}singleton:\n{}",
            render_distribution(distribution, &format!("{indent}  "))
        ),
        VerdictView::Polytope { dimension, sample } => format!(
            "{indent}polytope of dimension {dimension}; sample point:\n{}",
            render_distribution(sample, &format!("{indent}  "))
        ),
    }
}

pub fn render_classification(c: &ClassificationView) -> String {
    let mut out = format!("verdict: {:?}\nchecked: {} joint choices\n", c.verdict, c.checked);
    if let Some(n) = &c.note {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("coverage: {}\n", c.coverage_note));
    for (i, w) in c.witnesses.iter().enumerate() {
        out.push_str(&format!("witness {}: {}\n", i + 1, w.choice.join(" / ")));
        out.push_str(&render_verdict(&w.result, "  "));
        out.push('\n');
        if i >= 4 && c.witnesses.len() > 6 {
            out.push_str(&format!(
                "... and {} more witnesses\n",
                c.witnesses.len() - i - 1
            ));
            break;
        }
    }
    out
}

pub fn render_best_response(b: &BestResponseView) -> String {
    let mut out = format!(
        "best response for {}: {} with expected value {}\n",
        b.player, b.maximizer, b.value
    );
    if b.maximizers.len() > 1 {
        out.push_str(&format!("tie among: {}\n", b.maximizers.join(", ")));
    }
    out.push_str("expected utility by candidate:\n");
    for (label, v) in &b.table {
        out.push_str(&format!("  {label}: {v}\n"));
    }
    out
}
