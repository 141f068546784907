//! Extended games: players, Nature players, strategy families,
//! properness classification, expected utility and best response.

use crate::prob::{BayesNet, Cpt, JointDistribution, Ratio, Space};
use crate::solve::IntersectionResult;
use crate::strategy::{self, LinearConstraint, StrategySet};
use crate::{Error, Result};

/// Payoff table over joint outcomes, row-major like the joint table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffTable {
    pub values: Vec<Ratio>,
}

impl PayoffTable {
    pub fn new(values: Vec<Ratio>) -> Self {
        PayoffTable { values }
    }

    /// Affine rescale `a * u + b` (with `a > 0` this preserves maximizers).
    pub fn rescaled(&self, a: &Ratio, b: &Ratio) -> PayoffTable {
        PayoffTable {
            values: self.values.iter().map(|v| a * v + b).collect(),
        }
    }
}

/// `sum_outcomes P(outcome) * u(outcome)`, exact.
pub fn expected_utility(j: &JointDistribution, u: &PayoffTable) -> Result<Ratio> {
    if u.values.len() != j.probs().len() {
        return Err(Error::TableSize {
            expected: j.probs().len(),
            got: u.values.len(),
        });
    }
    Ok(j.probs().iter().zip(&u.values).map(|(p, v)| p * v).sum())
}

/// One choice in a structured (Bayes-net-partition) family: the conditional
/// tables at the player's owned nodes.
#[derive(Clone, Debug)]
pub struct CptChoice {
    pub label: String,
    /// `(node index, table)` pairs covering exactly the owned nodes.
    pub cpts: Vec<(usize, Cpt)>,
}

/// A player's strategy family: either an explicit list of compiled affine
/// strategy sets, or (for games defined through a Bayes-net node partition)
/// a grid of conditional-table assignments at the player's owned nodes.
#[derive(Clone, Debug)]
pub enum Family {
    Sets(Vec<StrategySet>),
    NodeCpts {
        nodes: Vec<usize>,
        choices: Vec<CptChoice>,
    },
}

impl Family {
    pub fn len(&self) -> usize {
        match self {
            Family::Sets(s) => s.len(),
            Family::NodeCpts { choices, .. } => choices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> &str {
        match self {
            Family::Sets(s) => &s[i].label,
            Family::NodeCpts { choices, .. } => &choices[i].label,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Player {
    pub id: String,
    pub is_nature: bool,
    pub family: Family,
    pub utility: Option<PayoffTable>,
}

/// Bayes-net skeleton for structured games: edges over variable indices and
/// a per-player node ownership partition.
#[derive(Clone, Debug)]
pub struct Structure {
    pub edges: Vec<(usize, usize)>,
    /// `owners[i]` are the nodes owned by player `i`; must partition `V`.
    pub owners: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct ExtendedGame {
    pub space: Space,
    pub players: Vec<Player>,
    pub structure: Option<Structure>,
}

impl ExtendedGame {
    pub fn new(space: Space, players: Vec<Player>, structure: Option<Structure>) -> Result<Self> {
        let n_outcomes = space.size();
        for p in &players {
            if p.family.is_empty() {
                return Err(Error::InvalidPlayer(
                    p.id.clone(),
                    "strategy family is empty".into(),
                ));
            }
            if p.is_nature && p.family.len() != 1 {
                return Err(Error::InvalidPlayer(
                    p.id.clone(),
                    "a Nature player has exactly one strategy".into(),
                ));
            }
            match &p.utility {
                Some(u) if u.values.len() != n_outcomes => {
                    return Err(Error::InvalidPlayer(
                        p.id.clone(),
                        "utility table does not cover every joint outcome".into(),
                    ));
                }
                None if !p.is_nature => {
                    return Err(Error::InvalidPlayer(
                        p.id.clone(),
                        "a non-Nature player needs a utility table".into(),
                    ));
                }
                _ => {}
            }
        }
        if let Some(s) = &structure {
            if s.owners.len() != players.len() {
                return Err(Error::InvalidParameter(
                    "node ownership must list every player".into(),
                ));
            }
            let n_vars = space.vars().len();
            let mut seen = vec![false; n_vars];
            for owned in &s.owners {
                for &v in owned {
                    if v >= n_vars || seen[v] {
                        return Err(Error::InvalidParameter(
                            "node ownership must partition the variables".into(),
                        ));
                    }
                    seen[v] = true;
                }
            }
            if !seen.iter().all(|&s| s) {
                return Err(Error::InvalidParameter(
                    "node ownership must partition the variables".into(),
                ));
            }
            for p in &players {
                if !matches!(p.family, Family::NodeCpts { .. }) {
                    return Err(Error::InvalidPlayer(
                        p.id.clone(),
                        "structured games need node-CPT families".into(),
                    ));
                }
            }
        }
        Ok(ExtendedGame {
            space,
            players,
            structure,
        })
    }

    pub fn player_index(&self, id: &str) -> Result<usize> {
        self.players
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown player `{id}`")))
    }

    pub fn choice_labels(&self, choice: &[usize]) -> Vec<String> {
        self.players
            .iter()
            .zip(choice)
            .map(|(p, &i)| format!("{}: {}", p.id, p.family.label(i)))
            .collect()
    }

    /// Intersect one chosen strategy per player.
    ///
    /// Affine games delegate to the exact feasibility solver. Structured
    /// games assemble the full Bayes net fixed by the joint choice — every
    /// conditional table is then determined, so the factorization gives the
    /// one consistent joint distribution, which is checked against each
    /// player's table constraints.
    pub fn classify_joint_strategy(&self, choice: &[usize]) -> Result<IntersectionResult> {
        if choice.len() != self.players.len() {
            return Err(Error::InvalidParameter(
                "one strategy index per player required".into(),
            ));
        }
        match &self.structure {
            None => {
                let sets = self.chosen_sets(choice)?;
                strategy::intersect(&sets.iter().collect::<Vec<_>>())
            }
            Some(s) => {
                let joint = self.assemble_structured(s, choice)?;
                // membership check: the factorized joint satisfies every
                // player's chosen conditional tables
                for (p, &i) in self.players.iter().zip(choice) {
                    let Family::NodeCpts { choices, .. } = &p.family else {
                        unreachable!("validated at construction");
                    };
                    for (node, cpt) in &choices[i].cpts {
                        let set = cpt_strategy_set(&self.space, s, &p.id, *node, cpt)?;
                        if !set.contains(&joint) {
                            return Err(Error::InvalidPlayer(
                                p.id.clone(),
                                "factorized joint violates a chosen table".into(),
                            ));
                        }
                    }
                }
                Ok(IntersectionResult::Singleton(joint))
            }
        }
    }

    /// The affine constraint system (including normalization) that one
    /// joint choice intersects, for verifying infeasibility certificates in
    /// reports. `None` for structured games, whose verdicts come from
    /// assembly rather than a linear system.
    pub fn choice_constraints(&self, choice: &[usize]) -> Result<Option<Vec<LinearConstraint>>> {
        match &self.structure {
            None => {
                let sets = self.chosen_sets(choice)?;
                Ok(Some(strategy::intersection_constraints(
                    &sets.iter().collect::<Vec<_>>(),
                )))
            }
            Some(_) => Ok(None),
        }
    }

    fn chosen_sets(&self, choice: &[usize]) -> Result<Vec<StrategySet>> {
        self.players
            .iter()
            .zip(choice)
            .map(|(p, &i)| match &p.family {
                Family::Sets(sets) => sets
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParameter(format!("bad strategy index for `{}`", p.id))),
                Family::NodeCpts { .. } => Err(Error::InvalidPlayer(
                    p.id.clone(),
                    "node-CPT family in an unstructured game".into(),
                )),
            })
            .collect()
    }

    fn assemble_structured(&self, s: &Structure, choice: &[usize]) -> Result<JointDistribution> {
        let n_vars = self.space.vars().len();
        let mut cpts: Vec<Option<Cpt>> = vec![None; n_vars];
        for (p, &i) in self.players.iter().zip(choice) {
            let Family::NodeCpts { choices, .. } = &p.family else {
                unreachable!("validated at construction");
            };
            let c = choices
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("bad strategy index for `{}`", p.id)))?;
            for (node, cpt) in &c.cpts {
                cpts[*node] = Some(cpt.clone());
            }
        }
        let cpts: Vec<Cpt> = cpts
            .into_iter()
            .enumerate()
            .map(|(v, c)| {
                c.ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "no conditional table assigned for `{}`",
                        self.space.vars()[v].name
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let edge_names: Vec<(&str, &str)> = s
            .edges
            .iter()
            .map(|&(a, b)| {
                (
                    self.space.vars()[a].name.as_str(),
                    self.space.vars()[b].name.as_str(),
                )
            })
            .collect();
        Ok(BayesNet::new(self.space.clone(), &edge_names, cpts)?.joint())
    }
}

/// A chosen CPT at one node of a structured game, as an affine constraint set.
fn cpt_strategy_set(
    space: &Space,
    s: &Structure,
    owner: &str,
    node: usize,
    cpt: &Cpt,
) -> Result<StrategySet> {
    let parents: Vec<String> = s
        .edges
        .iter()
        .filter(|&&(_, c)| c == node)
        .map(|&(p, _)| space.vars()[p].name.clone())
        .collect();
    let child = space.vars()[node].name.clone();
    let kind = if parents.is_empty() {
        // a root-node table constrains the marginal
        crate::strategy::StrategyKind::MarginalFixed {
            variable: child,
            dist: cpt.rows[0].clone(),
        }
    } else {
        crate::strategy::StrategyKind::CptFixed {
            child,
            parents,
            table: cpt.rows.clone(),
        }
    };
    StrategySet::compile(owner, "node table", kind, space)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GameVerdict {
    Proper,
    OverPlayed,
    UnderPlayed,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub choice: Vec<usize>,
    pub choice_labels: Vec<String>,
    pub result: IntersectionResult,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub verdict: GameVerdict,
    /// Joint choices exhibiting the verdict (empty for Proper).
    pub witnesses: Vec<Witness>,
    pub checked: usize,
    /// Whether Proper is certified only over the declared grids.
    pub coverage_note: String,
}

/// Classify a game over the Cartesian product of its players' declared
/// strategy grids.
///
/// An empty intersection anywhere makes the game over-played; otherwise a
/// higher-dimensional intersection anywhere makes it under-played; the game
/// is proper when every checked joint choice is a singleton. A Proper
/// verdict is certified only over the checked grid.
pub fn classify_game(game: &ExtendedGame) -> Result<ClassificationResult> {
    let sizes: Vec<usize> = game.players.iter().map(|p| p.family.len()).collect();
    let mut choice = vec![0usize; sizes.len()];
    let mut empties = Vec::new();
    let mut polytopes = Vec::new();
    let mut checked = 0usize;
    loop {
        let result = game.classify_joint_strategy(&choice)?;
        checked += 1;
        match &result {
            IntersectionResult::Empty { .. } => empties.push(Witness {
                choice: choice.clone(),
                choice_labels: game.choice_labels(&choice),
                result,
            }),
            IntersectionResult::Polytope { .. } => polytopes.push(Witness {
                choice: choice.clone(),
                choice_labels: game.choice_labels(&choice),
                result,
            }),
            IntersectionResult::Singleton(_) => {}
        }
        if !advance(&mut choice, &sizes) {
            break;
        }
    }
    let (verdict, witnesses) = if !empties.is_empty() {
        (GameVerdict::OverPlayed, empties)
    } else if !polytopes.is_empty() {
        (GameVerdict::UnderPlayed, polytopes)
    } else {
        (GameVerdict::Proper, Vec::new())
    };
    Ok(ClassificationResult {
        verdict,
        witnesses,
        checked,
        coverage_note: format!(
            "exhaustive over the declared grids ({checked} joint choices); \
             a Proper verdict is certified only for the checked grid"
        ),
    })
}

fn advance(choice: &mut [usize], sizes: &[usize]) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < sizes[i] {
            return true;
        }
        choice[i] = 0;
    }
    false
}

#[derive(Clone, Debug)]
pub struct BestResponse {
    /// Candidate index and label of the canonical (first-in-grid) maximizer.
    pub best: usize,
    pub best_label: String,
    pub value: Ratio,
    /// Every maximizing candidate, in grid order.
    pub maximizers: Vec<usize>,
    /// `(candidate index, label, expected utility)` for the whole grid.
    pub table: Vec<(usize, String, Ratio)>,
}

/// Maximize a player's expected utility over candidate strategies, with the
/// other players' choices held fixed.
///
/// `fixed` supplies one strategy index per player; the entry at `player` is
/// ignored. Every evaluated joint choice must intersect to a singleton —
/// any empty or higher-dimensional intersection means the game is improper
/// and best response is undefined, reported as [`Error::ImproperGame`].
pub fn best_response(
    game: &ExtendedGame,
    player: usize,
    fixed: &[usize],
    candidates: &[usize],
) -> Result<BestResponse> {
    let p = game
        .players
        .get(player)
        .ok_or_else(|| Error::InvalidParameter("bad player index".into()))?;
    let utility = p.utility.as_ref().ok_or_else(|| {
        Error::InvalidPlayer(p.id.clone(), "Nature has no utility to maximize".into())
    })?;
    if candidates.is_empty() {
        return Err(Error::InvalidParameter("no candidate strategies".into()));
    }
    let mut table = Vec::with_capacity(candidates.len());
    for &c in candidates {
        let mut choice = fixed.to_vec();
        choice[player] = c;
        match game.classify_joint_strategy(&choice)? {
            IntersectionResult::Singleton(j) => {
                let eu = expected_utility(&j, utility)?;
                table.push((c, p.family.label(c).to_string(), eu));
            }
            other => {
                return Err(Error::ImproperGame {
                    choice: game.choice_labels(&choice),
                    verdict: other.kind().to_string(),
                });
            }
        }
    }
    let best_value = table
        .iter()
        .map(|(_, _, v)| v.clone())
        .max()
        .expect("candidates are nonempty");
    let maximizers: Vec<usize> = table
        .iter()
        .filter(|(_, _, v)| *v == best_value)
        .map(|(c, _, _)| *c)
        .collect();
    let best = maximizers[0];
    Ok(BestResponse {
        best,
        best_label: p.family.label(best).to_string(),
        value: best_value,
        maximizers,
        table,
    })
}
