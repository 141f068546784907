//! Built-in scenario constructions: the two-box prediction game in both of
//! its decompositions, the three merged variants, the accuracy dichotomy
//! check, the accuracy sweep, the time-reversal comparison, and the two
//! textbook warm-up games (matching pennies and its noisy-sensor chain).
//!
//! The game variables are your choice `y` over `{AB, B}` (take both boxes /
//! take only box B) and the prediction `g` over `{ab, b}`. The default
//! payoff table to you is
//!
//! ```text
//!              g = ab      g = b
//!   y = AB       1000    1001000
//!   y = B           0    1000000
//! ```
//!
//! The *Fearful* decomposition `P(y,g) = P(g|y) P(y)` lets you pick the
//! marginal `P(y)` with the predictor owning the conditional `P(g|y)`; the
//! *Realist* decomposition `P(y,g) = P(y|g) P(g)` lets you pick a
//! `g`-independent conditional `h(y)` with the predictor owning the
//! marginal `P(g)`. The predictor's accuracy `alpha` means
//! `P(g|y) = alpha*delta(g,y) + (1-alpha)*(1-delta(g,y))`.

use num_traits::One;
use serde::Serialize;

use crate::game::{
    self, BestResponse, ClassificationResult, CptChoice, ExtendedGame, Family, GameVerdict,
    PayoffTable, Player, Structure,
};
use crate::prob::{Cpt, JointDistribution, Ratio, Space, VariableSpec};
use crate::rational::{exact_string, int, ratio};
use crate::report::{BestResponseView, ClassificationView, QView};
use crate::solve::IntersectionResult;
use crate::strategy::{self, StrategyKind, StrategySet};
use crate::{Error, Result};

/// Stable identifiers of the built-in scenarios.
pub const REGISTRY: &[&str] = &[
    "fearful",
    "realist",
    "merged-1",
    "merged-2",
    "merged-3",
    "appendix",
    "alpha-sweep",
    "time-reversed",
    "matching-pennies",
    "sensor",
];

/// The joint space of your choice `y` and the prediction `g`.
pub fn newcomb_space() -> Space {
    Space::new(vec![
        VariableSpec::new("y", &["AB", "B"]).unwrap(),
        VariableSpec::new("g", &["ab", "b"]).unwrap(),
    ])
    .unwrap()
}

/// The default payoff table to you, row-major over `(y, g)`.
pub fn table1() -> PayoffTable {
    PayoffTable::new(vec![int(1000), int(1_001_000), int(0), int(1_000_000)])
}

/// Predictor accuracy plus payoffs.
#[derive(Clone, Debug)]
pub struct NewcombParams {
    pub alpha: Ratio,
    pub payoffs: PayoffTable,
}

impl NewcombParams {
    pub fn new(alpha: Ratio) -> Result<Self> {
        Self::with_payoffs(alpha, table1())
    }

    pub fn with_payoffs(alpha: Ratio, payoffs: PayoffTable) -> Result<Self> {
        if alpha <= ratio(1, 2) || alpha > Ratio::one() {
            return Err(Error::InvalidParameter(format!(
                "accuracy alpha must lie in (1/2, 1], got {}",
                exact_string(&alpha)
            )));
        }
        Ok(NewcombParams { alpha, payoffs })
    }
}

/// Default strategy grid for the `P(y)` marginal: `P(B) = k/8`.
pub fn pb_grid() -> Vec<Ratio> {
    (0..=8).map(|k| ratio(k, 8)).collect()
}

/// Default strategy grid for the conditional `h`: `h(AB) = k/8`. The two
/// delta functions are the endpoints.
pub fn h_grid() -> Vec<Ratio> {
    (0..=8).map(|k| ratio(k, 8)).collect()
}

fn marginal_y_set(space: &Space, pb: &Ratio) -> Result<StrategySet> {
    StrategySet::compile(
        "you",
        &format!("P(B)={}", exact_string(pb)),
        StrategyKind::MarginalFixed {
            variable: "y".into(),
            dist: vec![Ratio::one() - pb, pb.clone()],
        },
        space,
    )
}

fn h_set(space: &Space, h_ab: &Ratio) -> Result<StrategySet> {
    StrategySet::compile(
        "you",
        &format!("h(AB)={}", exact_string(h_ab)),
        StrategyKind::ConditionalIndependentFixed {
            target: "y".into(),
            given: "g".into(),
            dist: vec![h_ab.clone(), Ratio::one() - h_ab],
        },
        space,
    )
}

/// The predictor's conditional `alpha*delta + (1-alpha)*(1-delta)` as a
/// fixed table `P(g | y)`.
fn accuracy_cpt_set(space: &Space, alpha: &Ratio) -> Result<StrategySet> {
    let off = Ratio::one() - alpha;
    StrategySet::compile(
        "W",
        &format!("P(g|y) accuracy alpha={}", exact_string(alpha)),
        StrategyKind::CptFixed {
            child: "g".into(),
            parents: vec!["y".into()],
            table: vec![
                vec![alpha.clone(), off.clone()],
                vec![off, alpha.clone()],
            ],
        },
        space,
    )
}

/// The predictor's product-form strategy: all joints `h(y) * q(g)` with the
/// marginal `P(g)` pinned to `q`.
fn product_q_set(space: &Space, q_ab: &Ratio) -> Result<StrategySet> {
    StrategySet::compile(
        "W",
        &format!("product-form P(g=ab)={}", exact_string(q_ab)),
        StrategyKind::ConditionalIndependentFixed {
            target: "g".into(),
            given: "y".into(),
            dist: vec![q_ab.clone(), Ratio::one() - q_ab],
        },
        space,
    )
}

/// The Fearful decomposition as an extended game: you own the marginal
/// `P(y)` (grid over `P(B)`), the predictor is a Nature player owning the
/// accuracy-`alpha` conditional.
pub fn newcomb_fearful(p: &NewcombParams) -> Result<ExtendedGame> {
    let space = newcomb_space();
    let you = pb_grid()
        .iter()
        .map(|pb| marginal_y_set(&space, pb))
        .collect::<Result<Vec<_>>>()?;
    let w = vec![accuracy_cpt_set(&space, &p.alpha)?];
    ExtendedGame::new(
        space,
        vec![
            Player {
                id: "you".into(),
                is_nature: false,
                family: Family::Sets(you),
                utility: Some(p.payoffs.clone()),
            },
            Player {
                id: "W".into(),
                is_nature: true,
                family: Family::Sets(w),
                utility: None,
            },
        ],
        None,
    )
}

/// The Realist decomposition as an extended game: you own a
/// `g`-independent conditional `h(y)` (grid over `h(AB)`), the predictor is
/// a Nature player owning the marginal `P(g) = q`.
pub fn newcomb_realist(q_ab: &Ratio, payoffs: PayoffTable) -> Result<ExtendedGame> {
    let space = newcomb_space();
    let you = h_grid()
        .iter()
        .map(|h| h_set(&space, h))
        .collect::<Result<Vec<_>>>()?;
    let w = vec![StrategySet::compile(
        "W",
        &format!("P(g=ab)={}", exact_string(q_ab)),
        StrategyKind::MarginalFixed {
            variable: "g".into(),
            dist: vec![q_ab.clone(), Ratio::one() - q_ab],
        },
        &space,
    )?];
    ExtendedGame::new(
        space,
        vec![
            Player {
                id: "you".into(),
                is_nature: false,
                family: Family::Sets(you),
                utility: Some(payoffs),
            },
            Player {
                id: "W".into(),
                is_nature: true,
                family: Family::Sets(w),
                utility: None,
            },
        ],
        None,
    )
}

/// Best response of `you` in the Fearful game over the `P(B)` grid.
pub fn fearful_best_response(p: &NewcombParams) -> Result<BestResponse> {
    let game = newcomb_fearful(p)?;
    let candidates: Vec<usize> = (0..game.players[0].family.len()).collect();
    game::best_response(&game, 0, &[0, 0], &candidates)
}

/// Best response of `you` in the Realist game over the `h` grid.
pub fn realist_best_response(q_ab: &Ratio, payoffs: PayoffTable) -> Result<BestResponse> {
    let game = newcomb_realist(q_ab, payoffs)?;
    let candidates: Vec<usize> = (0..game.players[0].family.len()).collect();
    game::best_response(&game, 0, &[0, 0], &candidates)
}

/// Which of the three ways of merging the two decompositions to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Merge {
    /// Union families on both sides.
    UnionBoth,
    /// Your marginal family against the predictor's product-form family.
    YourMarginalTheirProduct,
    /// Your conditional family against the predictor's fixed accuracy table.
    YourConditionalTheirCpt,
}

impl Merge {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Merge::UnionBoth),
            2 => Ok(Merge::YourMarginalTheirProduct),
            3 => Ok(Merge::YourConditionalTheirCpt),
            _ => Err(Error::InvalidParameter(format!(
                "merged scenario must be 1, 2 or 3, got {n}"
            ))),
        }
    }
}

pub struct MergedOutcome {
    pub game: ExtendedGame,
    pub classification: ClassificationResult,
    /// Set for the variant that reduces to an existing game.
    pub note: Option<String>,
}

/// Build and classify one of the three merge variants.
pub fn merged_scenario(which: Merge, p: &NewcombParams) -> Result<MergedOutcome> {
    let space = newcomb_space();
    let your_marginals: Vec<StrategySet> = pb_grid()
        .iter()
        .map(|pb| marginal_y_set(&space, pb))
        .collect::<Result<_>>()?;
    let your_conditionals: Vec<StrategySet> = h_grid()
        .iter()
        .map(|h| h_set(&space, h))
        .collect::<Result<_>>()?;
    let their_cpt = accuracy_cpt_set(&space, &p.alpha)?;
    let their_products: Vec<StrategySet> = h_grid()
        .iter()
        .map(|q| product_q_set(&space, q))
        .collect::<Result<_>>()?;

    // In the merged variants the predictor may have several strategies, so
    // it is no longer a Nature player and needs a utility: the scenario is
    // adversarial, so it gets the negative of yours.
    let their_utility = p.payoffs.rescaled(&int(-1), &int(0));

    let (you_sets, w_sets, w_nature, note) = match which {
        Merge::UnionBoth => {
            let mut you = your_marginals;
            you.extend(your_conditionals);
            let mut w = vec![their_cpt];
            w.extend(their_products);
            (you, w, false, None)
        }
        Merge::YourMarginalTheirProduct => (
            your_marginals,
            their_products,
            false,
            Some(
                "every intersection is the product P(y)P(g); this is the Realist \
                 game again, not a new game"
                    .to_string(),
            ),
        ),
        Merge::YourConditionalTheirCpt => (your_conditionals, vec![their_cpt], true, None),
    };

    let game = ExtendedGame::new(
        space,
        vec![
            Player {
                id: "you".into(),
                is_nature: false,
                family: Family::Sets(you_sets),
                utility: Some(p.payoffs.clone()),
            },
            Player {
                id: "W".into(),
                is_nature: w_nature,
                family: Family::Sets(w_sets),
                utility: if w_nature { None } else { Some(their_utility) },
            },
        ],
        None,
    )?;
    let classification = game::classify_game(&game)?;
    Ok(MergedOutcome {
        game,
        classification,
        note,
    })
}

/// Verdict of one joint choice in the third merge variant: the accuracy
/// table against a single conditional `h`.
pub fn scenario3_verdict(alpha: &Ratio, h_ab: &Ratio) -> Result<IntersectionResult> {
    let space = newcomb_space();
    let w = accuracy_cpt_set(&space, alpha)?;
    let you = h_set(&space, h_ab)?;
    strategy::intersect(&[&w, &you])
}

/// Outcome of the exact accuracy dichotomy: which `g`-independent
/// conditionals are achievable against the accuracy-`alpha` table.
#[derive(Clone, Debug)]
pub struct AppendixOutcome {
    pub alpha: Ratio,
    /// `alpha^2 - (1-alpha)^2 = 2*alpha - 1`; clearing the two-column ratio
    /// equation of denominators leaves `coefficient * z_AB * z_B = 0`, so a
    /// nonzero coefficient forces one of the `y`-marginal weights to zero.
    pub dichotomy_coefficient: Ratio,
    /// The surviving conditionals (the two delta functions) with the joint
    /// distribution each induces.
    pub feasible: Vec<(String, JointDistribution)>,
}

/// Determine exactly which `g`-independent conditionals `h` are achievable
/// when the predictor fixes `P(g|y)` at accuracy `alpha`: only the two
/// delta functions survive.
pub fn appendix_lemma_check(alpha: &Ratio) -> Result<AppendixOutcome> {
    if alpha <= &ratio(1, 2) || alpha > &Ratio::one() {
        // at alpha = 1/2 the two table columns are proportional and every h
        // would be feasible; the dichotomy needs alpha in (1/2, 1]
        return Err(Error::InvalidParameter(format!(
            "accuracy alpha must lie in (1/2, 1], got {}",
            exact_string(alpha)
        )));
    }
    let coefficient = alpha * alpha - (Ratio::one() - alpha) * (Ratio::one() - alpha);
    assert!(
        coefficient > int(0),
        "2*alpha - 1 must be positive on (1/2, 1]"
    );
    let mut feasible = Vec::new();
    for (label, h_ab) in [("h=delta_AB", Ratio::one()), ("h=delta_B", int(0))] {
        match scenario3_verdict(alpha, &h_ab)? {
            IntersectionResult::Singleton(j) => feasible.push((label.to_string(), j)),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "delta conditional unexpectedly {}",
                    other.kind()
                )))
            }
        }
    }
    Ok(AppendixOutcome {
        alpha: alpha.clone(),
        dichotomy_coefficient: coefficient,
        feasible,
    })
}

/// One row of the accuracy sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub alpha: Ratio,
    /// Verdict kind of the third merge variant for each `h` on the grid.
    pub h_verdicts: Vec<(Ratio, &'static str)>,
    pub scenario3: GameVerdict,
    pub fearful_maximizer: String,
    pub fearful_value: Ratio,
}

/// Sweep the accuracy: the merge impossibility persists at every
/// `alpha` in `(1/2, 1]`, perfect prediction is not required.
pub fn alpha_sweep(alphas: &[Ratio], h_values: &[Ratio]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let p = NewcombParams::new(alpha.clone())?;
        let merged = merged_scenario(Merge::YourConditionalTheirCpt, &p)?;
        let mut h_verdicts = Vec::with_capacity(h_values.len());
        for h in h_values {
            let kind = match scenario3_verdict(alpha, h)? {
                IntersectionResult::Empty { .. } => "empty",
                IntersectionResult::Singleton(_) => "singleton",
                IntersectionResult::Polytope { .. } => "polytope",
            };
            h_verdicts.push((h.clone(), kind));
        }
        let br = fearful_best_response(&p)?;
        rows.push(SweepRow {
            alpha: alpha.clone(),
            h_verdicts,
            scenario3: merged.classification.verdict,
            fearful_maximizer: br.best_label.clone(),
            fearful_value: br.value.clone(),
        });
    }
    Ok(rows)
}

/// The analyses compared by the time-reversal check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewcombAnalysis {
    pub fearful: BestResponseView,
    pub realist: BestResponseView,
    pub merged3_verdict: GameVerdict,
    pub merged3: ClassificationView,
}

#[derive(Clone, Debug, Serialize)]
pub struct TimeReversalOutcome {
    /// Narrative orientation of each run; not part of the comparison.
    pub forward_annotation: String,
    pub reversed_annotation: String,
    pub forward: NewcombAnalysis,
    pub reversed: NewcombAnalysis,
    /// Whether every compared field is identical.
    pub identical: bool,
}

fn analyze_for_orientation(p: &NewcombParams) -> Result<NewcombAnalysis> {
    let fearful = fearful_best_response(p)?;
    let realist = realist_best_response(&ratio(1, 2), p.payoffs.clone())?;
    let merged = merged_scenario(Merge::YourConditionalTheirCpt, p)?;
    Ok(NewcombAnalysis {
        fearful: BestResponseView::new("you", &fearful),
        realist: BestResponseView::new("you", &realist),
        merged3_verdict: merged.classification.verdict,
        merged3: ClassificationView::new(&merged.classification),
    })
}

/// Run the full analysis with the conventional timing (prediction before
/// choice) and with the reversed timing (observation after choice). No time
/// variable enters the mathematics, only the annotations differ, and the
/// comparison makes that explicit: every compared field must be identical.
pub fn time_reversed_newcomb(p: &NewcombParams) -> Result<TimeReversalOutcome> {
    let forward = analyze_for_orientation(p)?;
    let reversed = analyze_for_orientation(p)?;
    let identical = forward == reversed;
    Ok(TimeReversalOutcome {
        forward_annotation: "g is a prediction made before the choice y".into(),
        reversed_annotation: "g is an observation recorded after the choice y".into(),
        forward,
        reversed,
        identical,
    })
}

/// Outcome of one matching-pennies play.
#[derive(Clone, Debug)]
pub struct PenniesOutcome {
    pub game: ExtendedGame,
    pub joint: JointDistribution,
    pub eu_row: Ratio,
    pub eu_col: Ratio,
    /// `sum_x p_R(x) p_C(x)`, the closed-form expected utility of Row.
    pub formula_row: Ratio,
}

fn pennies_space() -> Space {
    Space::new(vec![
        VariableSpec::new("x_R", &["0", "1"]).unwrap(),
        VariableSpec::new("x_C", &["0", "1"]).unwrap(),
    ])
    .unwrap()
}

fn match_payoffs(space: &Space, row: bool) -> PayoffTable {
    let values = space
        .outcomes()
        .map(|a| {
            let matched = a[0] == a[1];
            if matched == row {
                Ratio::one()
            } else {
                int(0)
            }
        })
        .collect();
    PayoffTable::new(values)
}

/// Matching pennies as a two-node no-edge Bayes-net game: both players are
/// non-Nature and each owns one root node. Verifies that the expected
/// utilities from the assembled joint match the closed-form sums.
pub fn matching_pennies(p_r: &Ratio, p_c: &Ratio) -> Result<PenniesOutcome> {
    for (name, p) in [("p_R", p_r), ("p_C", p_c)] {
        if p < &int(0) || p > &Ratio::one() {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in [0, 1], got {}",
                exact_string(p)
            )));
        }
    }
    let space = pennies_space();
    let row_cpt = Cpt::root(vec![Ratio::one() - p_r, p_r.clone()]);
    let col_cpt = Cpt::root(vec![Ratio::one() - p_c, p_c.clone()]);
    let game = ExtendedGame::new(
        space.clone(),
        vec![
            Player {
                id: "Row".into(),
                is_nature: false,
                family: Family::NodeCpts {
                    nodes: vec![0],
                    choices: vec![CptChoice {
                        label: format!("p_R(1)={}", exact_string(p_r)),
                        cpts: vec![(0, row_cpt)],
                    }],
                },
                utility: Some(match_payoffs(&space, true)),
            },
            Player {
                id: "Col".into(),
                is_nature: false,
                family: Family::NodeCpts {
                    nodes: vec![1],
                    choices: vec![CptChoice {
                        label: format!("p_C(1)={}", exact_string(p_c)),
                        cpts: vec![(1, col_cpt)],
                    }],
                },
                utility: Some(match_payoffs(&space, false)),
            },
        ],
        Some(Structure {
            edges: vec![],
            owners: vec![vec![0], vec![1]],
        }),
    )?;
    let joint = match game.classify_joint_strategy(&[0, 0])? {
        IntersectionResult::Singleton(j) => j,
        other => {
            return Err(Error::InvalidParameter(format!(
                "matching pennies joint unexpectedly {}",
                other.kind()
            )))
        }
    };
    let eu_row = game::expected_utility(&joint, game.players[0].utility.as_ref().unwrap())?;
    let eu_col = game::expected_utility(&joint, game.players[1].utility.as_ref().unwrap())?;
    // closed form: sum_x p_R(x) p_C(x)
    let formula_row =
        (Ratio::one() - p_r) * (Ratio::one() - p_c) + p_r.clone() * p_c.clone();
    Ok(PenniesOutcome {
        game,
        joint,
        eu_row,
        eu_col,
        formula_row,
    })
}

/// Conditional tables for the sensor chain `x_R -> D -> x_C`.
#[derive(Clone, Debug)]
pub struct SensorCpts {
    /// Row player's grid of root distributions for `x_R`.
    pub row_grid: Vec<Cpt>,
    /// The sensor's single table `P(D | x_R)`.
    pub sensor: Cpt,
    /// Col player's grid of tables `P(x_C | D)`.
    pub col_grid: Vec<Cpt>,
}

impl SensorCpts {
    /// Exact sensor and copying responder over a small root grid.
    pub fn exact_default() -> Self {
        let delta = Cpt::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        SensorCpts {
            row_grid: (0..=4)
                .map(|k| Cpt::root(vec![Ratio::one() - ratio(k, 4), ratio(k, 4)]))
                .collect(),
            sensor: delta.clone(),
            col_grid: vec![delta],
        }
    }
}

fn sensor_space() -> Space {
    Space::new(vec![
        VariableSpec::new("x_R", &["0", "1"]).unwrap(),
        VariableSpec::new("D", &["0", "1"]).unwrap(),
        VariableSpec::new("x_C", &["0", "1"]).unwrap(),
    ])
    .unwrap()
}

/// The sensor variant: Row moves first, a Nature sensor observes the move
/// noisily, Col responds to the sensor reading. A three-node chain with the
/// nodes partitioned Row / sensor / Col.
pub fn sensor_variant(cpts: &SensorCpts) -> Result<ExtendedGame> {
    let space = sensor_space();
    let row_payoffs = PayoffTable::new(
        space
            .outcomes()
            .map(|a| if a[0] == a[2] { Ratio::one() } else { int(0) })
            .collect(),
    );
    let col_payoffs = PayoffTable::new(
        space
            .outcomes()
            .map(|a| if a[0] == a[2] { int(0) } else { Ratio::one() })
            .collect(),
    );
    ExtendedGame::new(
        space,
        vec![
            Player {
                id: "Row".into(),
                is_nature: false,
                family: Family::NodeCpts {
                    nodes: vec![0],
                    choices: cpts
                        .row_grid
                        .iter()
                        .enumerate()
                        .map(|(i, c)| CptChoice {
                            label: format!("p_R[{i}]"),
                            cpts: vec![(0, c.clone())],
                        })
                        .collect(),
                },
                utility: Some(row_payoffs),
            },
            Player {
                id: "sensor".into(),
                is_nature: true,
                family: Family::NodeCpts {
                    nodes: vec![1],
                    choices: vec![CptChoice {
                        label: "P(D|x_R)".into(),
                        cpts: vec![(1, cpts.sensor.clone())],
                    }],
                },
                utility: None,
            },
            Player {
                id: "Col".into(),
                is_nature: false,
                family: Family::NodeCpts {
                    nodes: vec![2],
                    choices: cpts
                        .col_grid
                        .iter()
                        .enumerate()
                        .map(|(i, c)| CptChoice {
                            label: format!("p_C[{i}]"),
                            cpts: vec![(2, c.clone())],
                        })
                        .collect(),
                },
                utility: Some(col_payoffs),
            },
        ],
        Some(Structure {
            edges: vec![(0, 1), (1, 2)],
            owners: vec![vec![0], vec![1], vec![2]],
        }),
    )
}

/// Fearful's expected utility at `P(B) = pb`, written the way the
/// two-term decomposition reads:
/// `1000 P(ab|AB)P(AB) + 1001000 P(b|AB)P(AB) + 0 P(ab|B)P(B) + 1000000 P(b|B)P(B)`.
/// Used as an independent formula path against the game-engine value.
pub fn fearful_eu_formula(alpha: &Ratio, pb: &Ratio, payoffs: &PayoffTable) -> Ratio {
    let p_ab = Ratio::one() - pb;
    let off = Ratio::one() - alpha;
    let u = &payoffs.values;
    &u[0] * alpha.clone() * &p_ab
        + &u[1] * off.clone() * &p_ab
        + &u[2] * off * pb
        + &u[3] * alpha.clone() * pb
}

/// Realist's expected utility at `h = delta_AB` as the closed form
/// `1000 P(g=ab) + 1001000 P(g=b)`.
pub fn realist_two_box_value(q_ab: &Ratio, payoffs: &PayoffTable) -> Ratio {
    let q_b = Ratio::one() - q_ab;
    &payoffs.values[0] * q_ab + &payoffs.values[1] * q_b
}

/// Expected-utility view of a sweep row for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRowView {
    pub alpha: QView,
    pub scenario3: GameVerdict,
    pub empty_h: Vec<QView>,
    pub singleton_h: Vec<QView>,
    pub fearful_maximizer: String,
    pub fearful_value: QView,
}

impl From<&SweepRow> for SweepRowView {
    fn from(r: &SweepRow) -> Self {
        SweepRowView {
            alpha: QView::from(&r.alpha),
            scenario3: r.scenario3,
            empty_h: r
                .h_verdicts
                .iter()
                .filter(|(_, k)| *k == "empty")
                .map(|(h, _)| QView::from(h))
                .collect(),
            singleton_h: r
                .h_verdicts
                .iter()
                .filter(|(_, k)| *k == "singleton")
                .map(|(h, _)| QView::from(h))
                .collect(),
            fearful_maximizer: r.fearful_maximizer.clone(),
            fearful_value: QView::from(&r.fearful_value),
        }
    }
}
