//! Declarative TOML scenario files: variables, an optional Bayes-net
//! structure, players with strategy families, and a requested analysis.
//! Files parse into a validated [`ExtendedGame`] or fail with a
//! line-anchored diagnostic.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use extgame::game::{CptChoice, ExtendedGame, Family, PayoffTable, Player, Structure};
use extgame::prob::Cpt;
use extgame::rational::parse_ratio;
use extgame::{Ratio, Space, StrategyKind, StrategySet, VariableSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileScenario {
    pub variables: Vec<VarDecl>,
    pub net: Option<NetDecl>,
    pub players: Vec<PlayerDecl>,
    pub analysis: Option<AnalysisDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarDecl {
    pub name: String,
    pub domain: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDecl {
    /// Directed edges `[from, to]` by variable name.
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerDecl {
    pub id: String,
    #[serde(default)]
    pub nature: bool,
    /// Payoffs row-major over variable declaration order, as exact
    /// rationals or decimal literals.
    pub utility: Option<Vec<String>>,
    pub strategies: Vec<StrategyDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StrategyDecl {
    /// Fix the marginal of one variable.
    Marginal {
        label: Option<String>,
        variable: String,
        dist: Vec<String>,
    },
    /// Fix a conditional table of `child` given `parents`.
    Cpt {
        label: Option<String>,
        child: String,
        parents: Vec<String>,
        table: Vec<Vec<String>>,
    },
    /// Fix the conditional of `target` given `given` to a value that does
    /// not depend on `given`.
    ConditionalIndependent {
        label: Option<String>,
        target: String,
        given: String,
        dist: Vec<String>,
    },
    /// One table per owned Bayes-net node (structured games only).
    NodeCpts {
        label: Option<String>,
        cpts: Vec<NodeCptDecl>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeCptDecl {
    pub node: String,
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDecl {
    /// `classify` or `best-response`.
    pub mode: String,
    /// Responding player for best-response mode.
    pub player: Option<String>,
    /// Fixed strategy index per other player (defaults to 0).
    #[serde(default)]
    pub fixed: BTreeMap<String, usize>,
}

pub struct LoadedScenario {
    pub game: ExtendedGame,
    pub analysis: Option<AnalysisDecl>,
}

pub fn parse_str(text: &str) -> Result<LoadedScenario> {
    let file: FileScenario = toml::from_str(text)?;
    build(file)
}

fn parse_dist(strings: &[String], what: &str) -> Result<Vec<Ratio>> {
    strings
        .iter()
        .map(|s| parse_ratio(s).with_context(|| format!("in {what}")))
        .collect()
}

fn parse_table(rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<Ratio>>> {
    rows.iter().map(|r| parse_dist(r, what)).collect()
}

fn build(file: FileScenario) -> Result<LoadedScenario> {
    let vars = file
        .variables
        .iter()
        .map(|v| {
            let domain: Vec<&str> = v.domain.iter().map(String::as_str).collect();
            Ok(VariableSpec::new(&v.name, &domain)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let space = Space::new(vars)?;

    let structured = file.net.is_some();
    let mut owners: Vec<Vec<usize>> = Vec::new();
    let mut players = Vec::new();

    for decl in &file.players {
        let ctx = format!("player `{}`", decl.id);
        let family = if structured {
            let mut nodes: Option<Vec<usize>> = None;
            let mut choices = Vec::new();
            for (i, s) in decl.strategies.iter().enumerate() {
                let StrategyDecl::NodeCpts { label, cpts } = s else {
                    bail!(
                        "{ctx}, strategy {i}: a scenario with a [net] section \
                         must use kind = \"node-cpts\" strategies"
                    );
                };
                let mut pairs = Vec::new();
                for c in cpts {
                    let node = space.var_index(&c.node).with_context(|| ctx.clone())?;
                    let table =
                        parse_table(&c.table, &format!("{ctx}, node `{}`", c.node))?;
                    pairs.push((node, Cpt::new(table)));
                }
                let these: Vec<usize> = pairs.iter().map(|(n, _)| *n).collect();
                match &nodes {
                    None => nodes = Some(these),
                    Some(prev) if *prev == these => {}
                    Some(_) => bail!(
                        "{ctx}: every strategy must supply tables for the same \
                         owned nodes"
                    ),
                }
                choices.push(CptChoice {
                    label: label.clone().unwrap_or_else(|| format!("choice {i}")),
                    cpts: pairs,
                });
            }
            let nodes = nodes
                .with_context(|| format!("{ctx}: needs at least one strategy"))?;
            owners.push(nodes.clone());
            Family::NodeCpts { nodes, choices }
        } else {
            let sets = decl
                .strategies
                .iter()
                .enumerate()
                .map(|(i, s)| compile_affine(&space, &decl.id, i, s))
                .collect::<Result<Vec<StrategySet>>>()?;
            Family::Sets(sets)
        };

        let utility = match &decl.utility {
            Some(rows) => {
                let values = parse_dist(rows, &format!("{ctx} utility"))?;
                if values.len() != space.size() {
                    bail!(
                        "{ctx}: utility table has {} entries, the joint space \
                         has {} outcomes",
                        values.len(),
                        space.size()
                    );
                }
                Some(PayoffTable::new(values))
            }
            None => None,
        };

        players.push(Player {
            id: decl.id.clone(),
            is_nature: decl.nature,
            family,
            utility,
        });
    }

    let structure = file.net.as_ref().map(|net| {
        let edges = net
            .edges
            .iter()
            .map(|[a, b]| Ok((space.var_index(a)?, space.var_index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok::<_, anyhow::Error>(Structure {
            edges,
            owners: owners.clone(),
        })
    });
    let structure = match structure {
        Some(r) => Some(r?),
        None => None,
    };

    let game = ExtendedGame::new(space, players, structure)?;
    Ok(LoadedScenario {
        game,
        analysis: file.analysis,
    })
}

fn compile_affine(
    space: &Space,
    owner: &str,
    index: usize,
    decl: &StrategyDecl,
) -> Result<StrategySet> {
    let ctx = format!("player `{owner}`, strategy {index}");
    let (label, kind) = match decl {
        StrategyDecl::Marginal {
            label,
            variable,
            dist,
        } => (
            label.clone().unwrap_or_else(|| format!("P({variable}) fixed")),
            StrategyKind::MarginalFixed {
                variable: variable.clone(),
                dist: parse_dist(dist, &ctx)?,
            },
        ),
        StrategyDecl::Cpt {
            label,
            child,
            parents,
            table,
        } => (
            label.clone().unwrap_or_else(|| format!("P({child}|…) fixed")),
            StrategyKind::CptFixed {
                child: child.clone(),
                parents: parents.clone(),
                table: parse_table(table, &ctx)?,
            },
        ),
        StrategyDecl::ConditionalIndependent {
            label,
            target,
            given,
            dist,
        } => (
            label
                .clone()
                .unwrap_or_else(|| format!("P({target}|{given}) independent")),
            StrategyKind::ConditionalIndependentFixed {
                target: target.clone(),
                given: given.clone(),
                dist: parse_dist(dist, &ctx)?,
            },
        ),
        StrategyDecl::NodeCpts { .. } => {
            bail!("{ctx}: kind = \"node-cpts\" requires a [net] section")
        }
    };
    StrategySet::compile(owner, &label, kind, space).with_context(|| ctx.clone())
}
