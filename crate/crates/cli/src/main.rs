//! Command-line front end: run the built-in scenarios or a declarative
//! scenario file, print verdicts with exact rationals, and exit 0 on
//! success, 1 on input errors, 2 when a best-response analysis detects an
//! improper game.

mod scenario_file;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use extgame::game::{self, ExtendedGame};
use extgame::rational::{exact_string, parse_ratio, parse_ratio_list, ratio};
use extgame::report::{
    render_best_response, render_classification, render_distribution, BestResponseView,
    ClassificationView, DistributionView, QView,
};
use extgame::scenarios::{self, Merge, NewcombParams, SweepRowView};
use extgame::{Error as GameError, Ratio};

use num_traits::One;

#[derive(Parser)]
#[command(name = "extgame", version, about = "Analyze extended games: games whose \
strategies are sets of joint distributions")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario's primary analysis (best response where defined)
    Analyze {
        /// Registry id (see `list`) or path to a scenario file
        target: String,
        /// Predictor accuracy in (1/2, 1], e.g. 3/4 or 0.75
        #[arg(long)]
        alpha: Option<String>,
        /// Predictor marginal for `realist`, e.g. 1/2,1/2
        #[arg(long)]
        q: Option<String>,
        /// Row player's P(1) for `matching-pennies`
        #[arg(long)]
        p_r: Option<String>,
        /// Col player's P(1) for `matching-pennies`
        #[arg(long)]
        p_c: Option<String>,
    },
    /// Classify a game as proper, over-played, or under-played
    Classify {
        /// Registry id (see `list`) or path to a scenario file
        target: String,
        /// Predictor accuracy in (1/2, 1]
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Sweep the predictor accuracy over a grid
    Sweep {
        /// Comma list (51/100,3/5,1) or range start:stop:step (0.51:1.0:0.05)
        #[arg(long, default_value = "51/100,3/5,3/4,9/10,1")]
        alphas: String,
    },
    /// List the built-in scenario ids
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(format: Format, text: &str, value: serde_json::Value) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    // ignore write errors (e.g. a closed pipe downstream)
    let _ = match format {
        Format::Text => writeln!(out, "{text}"),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()),
    };
}

fn parse_flag(opt: &Option<String>, default: &str, what: &str) -> Result<Ratio> {
    let s = opt.as_deref().unwrap_or(default);
    parse_ratio(s).with_context(|| format!("invalid {what} `{s}`"))
}

fn parse_alphas(spec: &str) -> Result<Vec<Ratio>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let alphas = match parts.as_slice() {
        [_] => parse_ratio_list(spec)?,
        [start, stop, step] => {
            let (start, stop, step) = (parse_ratio(start)?, parse_ratio(stop)?, parse_ratio(step)?);
            if step <= ratio(0, 1) {
                bail!("sweep step must be positive");
            }
            let mut out = Vec::new();
            let mut a = start;
            while a <= stop {
                out.push(a.clone());
                a += &step;
            }
            out
        }
        _ => bail!("alphas must be a comma list or start:stop:step"),
    };
    if alphas.is_empty() {
        bail!("empty accuracy grid");
    }
    Ok(alphas)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::List => {
            let ids = scenarios::REGISTRY;
            emit(
                cli.format,
                &ids.join("\n"),
                json!({ "scenarios": ids }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { alphas } => {
            let alphas = parse_alphas(alphas)?;
            let rows = scenarios::alpha_sweep(&alphas, &scenarios::h_grid())?;
            let views: Vec<SweepRowView> = rows.iter().map(SweepRowView::from).collect();
            let mut text = String::from(
                "accuracy sweep (merged-3 verdict and Fearful best response)\n",
            );
            for v in &views {
                text.push_str(&format!(
                    "  alpha={}: merged-3 {:?}; infeasible h: {}; Fearful max {} (EU {})\n",
                    v.alpha,
                    v.scenario3,
                    v.empty_h.len(),
                    v.fearful_maximizer,
                    v.fearful_value,
                ));
            }
            emit(
                cli.format,
                text.trim_end(),
                json!({ "analysis": "sweep", "rows": views }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { target, alpha } => classify(cli.format, target, alpha),
        Command::Analyze {
            target,
            alpha,
            q,
            p_r,
            p_c,
        } => analyze(cli.format, target, alpha, q, p_r, p_c),
    }
}

fn is_file_target(target: &str) -> bool {
    !scenarios::REGISTRY.contains(&target)
        && (std::path::Path::new(target).exists() || target.contains('.') || target.contains('/'))
}

fn load_file(target: &str) -> Result<scenario_file::LoadedScenario> {
    let text = std::fs::read_to_string(target)
        .with_context(|| format!("cannot read scenario file `{target}`"))?;
    scenario_file::parse_str(&text).with_context(|| format!("in scenario file `{target}`"))
}

fn classification_report(
    format: Format,
    id: &str,
    game: &ExtendedGame,
    note: Option<&str>,
) -> Result<ExitCode> {
    let c = game::classify_game(game)?;
    let mut view = ClassificationView::with_certificates(&c, game)?;
    if let Some(n) = note {
        view = view.with_note(n);
    }
    emit(
        format,
        &format!("scenario {id}\n{}", render_classification(&view)),
        json!({ "scenario": id, "analysis": "classify", "classification": view }),
    );
    Ok(ExitCode::SUCCESS)
}

fn classify(format: Format, target: &str, alpha: &Option<String>) -> Result<ExitCode> {
    if is_file_target(target) {
        let loaded = load_file(target)?;
        return classification_report(format, target, &loaded.game, None);
    }
    match target {
        "fearful" => {
            let p = NewcombParams::new(parse_flag(alpha, "1", "accuracy")?)?;
            classification_report(format, target, &scenarios::newcomb_fearful(&p)?, None)
        }
        "realist" => {
            let game = scenarios::newcomb_realist(&ratio(1, 2), scenarios::table1())?;
            classification_report(format, target, &game, None)
        }
        "merged-1" | "merged-2" | "merged-3" => {
            let which = Merge::from_number(target.as_bytes()[7] - b'0')?;
            let p = NewcombParams::new(parse_flag(alpha, "1", "accuracy")?)?;
            let out = scenarios::merged_scenario(which, &p)?;
            let mut view = ClassificationView::with_certificates(&out.classification, &out.game)?;
            if let Some(n) = &out.note {
                view = view.with_note(n);
            }
            emit(
                format,
                &format!("scenario {target}\n{}", render_classification(&view)),
                json!({ "scenario": target, "analysis": "classify", "classification": view }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "matching-pennies" => {
            let out = scenarios::matching_pennies(&ratio(1, 2), &ratio(1, 2))?;
            classification_report(format, target, &out.game, None)
        }
        "sensor" => {
            let game = scenarios::sensor_variant(&scenarios::SensorCpts::exact_default())?;
            classification_report(format, target, &game, None)
        }
        "appendix" | "alpha-sweep" | "time-reversed" => Err(anyhow!(
            "`{target}` is an analysis, not a game; use `analyze {target}`"
        )),
        other => Err(anyhow!(
            "unknown scenario `{other}`; run `extgame list` for the registry"
        )),
    }
}

fn best_response_report(
    format: Format,
    id: &str,
    game: &ExtendedGame,
    player: usize,
    classification: Option<ClassificationView>,
) -> Result<ExitCode> {
    let fixed = vec![0; game.players.len()];
    let candidates: Vec<usize> = (0..game.players[player].family.len()).collect();
    match game::best_response(game, player, &fixed, &candidates) {
        Ok(br) => {
            let view = BestResponseView::new(&game.players[player].id, &br);
            let mut text = format!("scenario {id}\n{}", render_best_response(&view));
            if let Some(c) = &classification {
                text = format!("scenario {id}\n{}\n{}", render_classification(c), render_best_response(&view));
            }
            emit(
                format,
                &text,
                json!({
                    "scenario": id,
                    "analysis": "best-response",
                    "classification": classification,
                    "best_response": view,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(GameError::ImproperGame { choice, verdict }) => {
            let mut text = String::new();
            if let Some(c) = &classification {
                text.push_str(&format!("scenario {id}\n{}\n", render_classification(c)));
            }
            text.push_str(&format!(
                "improper game: the joint choice [{}] intersects to {verdict}, \
                 so best response is undefined",
                choice.join("; ")
            ));
            emit(
                format,
                &text,
                json!({
                    "scenario": id,
                    "analysis": "best-response",
                    "classification": classification,
                    "improper": { "choice": choice, "verdict": verdict },
                }),
            );
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e.into()),
    }
}

fn analyze(
    format: Format,
    target: &str,
    alpha: &Option<String>,
    q: &Option<String>,
    p_r: &Option<String>,
    p_c: &Option<String>,
) -> Result<ExitCode> {
    if is_file_target(target) {
        return analyze_file(format, target);
    }
    match target {
        "fearful" => {
            let p = NewcombParams::new(parse_flag(alpha, "1", "accuracy")?)?;
            let br = scenarios::fearful_best_response(&p)?;
            let view = BestResponseView::new("you", &br);
            emit(
                format,
                &format!("scenario fearful (alpha={})\n{}", exact_string(&p.alpha), render_best_response(&view)),
                json!({ "scenario": target, "analysis": "best-response", "alpha": QView::from(&p.alpha), "best_response": view }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "realist" => {
            let qs = parse_ratio_list(q.as_deref().unwrap_or("1/2,1/2"))
                .context("invalid --q")?;
            if qs.len() != 2 || qs.iter().sum::<Ratio>() != Ratio::one() {
                bail!("--q must be two rationals summing to 1");
            }
            let br = scenarios::realist_best_response(&qs[0], scenarios::table1())?;
            let view = BestResponseView::new("you", &br);
            emit(
                format,
                &format!(
                    "scenario realist (q=({},{}))\n{}",
                    exact_string(&qs[0]),
                    exact_string(&qs[1]),
                    render_best_response(&view)
                ),
                json!({ "scenario": target, "analysis": "best-response", "q": [QView::from(&qs[0]), QView::from(&qs[1])], "best_response": view }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "merged-1" | "merged-2" | "merged-3" => {
            let which = Merge::from_number(target.as_bytes()[7] - b'0')?;
            let p = NewcombParams::new(parse_flag(alpha, "1", "accuracy")?)?;
            let out = scenarios::merged_scenario(which, &p)?;
            let mut view = ClassificationView::with_certificates(&out.classification, &out.game)?;
            if let Some(n) = &out.note {
                view = view.with_note(n);
            }
            best_response_report(format, target, &out.game, 0, Some(view))
        }
        "appendix" => {
            let a = parse_flag(alpha, "3/4", "accuracy")?;
            let out = scenarios::appendix_lemma_check(&a)?;
            let mut text = format!(
                "appendix dichotomy at alpha={}\n  coefficient 2*alpha-1 = {} (nonzero \
                 forces a delta conditional)\n  feasible g-independent conditionals:\n",
                exact_string(&out.alpha),
                exact_string(&out.dichotomy_coefficient),
            );
            let mut feasible = Vec::new();
            for (label, j) in &out.feasible {
                let d = DistributionView::from(j);
                text.push_str(&format!("    {label}:\n{}\n", render_distribution(&d, "      ")));
                feasible.push(json!({ "label": label, "distribution": d }));
            }
            emit(
                format,
                text.trim_end(),
                json!({
                    "scenario": target,
                    "analysis": "appendix",
                    "alpha": QView::from(&out.alpha),
                    "dichotomy_coefficient": QView::from(&out.dichotomy_coefficient),
                    "feasible": feasible,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "alpha-sweep" => run(&Cli {
            format,
            command: Command::Sweep {
                alphas: "51/100,3/5,3/4,9/10,1".into(),
            },
        }),
        "time-reversed" => {
            let p = NewcombParams::new(parse_flag(alpha, "1", "accuracy")?)?;
            let out = scenarios::time_reversed_newcomb(&p)?;
            let text = format!(
                "time-reversal check at alpha={}\n  forward:  {}\n  reversed: {}\n  \
                 compared fields identical: {}\n  fearful maximizer {} (EU {}); realist \
                 maximizer {} (EU {}); merged-3 verdict {:?}",
                exact_string(&p.alpha),
                out.forward_annotation,
                out.reversed_annotation,
                out.identical,
                out.forward.fearful.maximizer,
                out.forward.fearful.value,
                out.forward.realist.maximizer,
                out.forward.realist.value,
                out.forward.merged3_verdict,
            );
            emit(
                format,
                &text,
                json!({ "scenario": target, "analysis": "time-reversal", "report": out }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "matching-pennies" => {
            let pr = parse_flag(p_r, "1/2", "--p-r")?;
            let pc = parse_flag(p_c, "1/2", "--p-c")?;
            let out = scenarios::matching_pennies(&pr, &pc)?;
            let joint = DistributionView::from(&out.joint);
            let text = format!(
                "matching pennies (p_R={}, p_C={})\n  joint:\n{}\n  EU(Row) = {} = \
                 sum_x p_R(x) p_C(x); EU(Col) = {}",
                exact_string(&pr),
                exact_string(&pc),
                render_distribution(&joint, "    "),
                QView::from(&out.eu_row),
                QView::from(&out.eu_col),
            );
            emit(
                format,
                &text,
                json!({
                    "scenario": target,
                    "analysis": "expected-utility",
                    "joint": joint,
                    "eu_row": QView::from(&out.eu_row),
                    "eu_col": QView::from(&out.eu_col),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        "sensor" => {
            let game = scenarios::sensor_variant(&scenarios::SensorCpts::exact_default())?;
            classification_report(format, target, &game, None)
        }
        other => Err(anyhow!(
            "unknown scenario `{other}`; run `extgame list` for the registry"
        )),
    }
}

fn analyze_file(format: Format, target: &str) -> Result<ExitCode> {
    let loaded = load_file(target)?;
    let mode = loaded
        .analysis
        .as_ref()
        .map(|a| a.mode.as_str())
        .unwrap_or("classify");
    match mode {
        "classify" => classification_report(format, target, &loaded.game, None),
        "best-response" => {
            let analysis = loaded.analysis.as_ref().unwrap();
            let player_id = analysis
                .player
                .as_deref()
                .ok_or_else(|| anyhow!("best-response analysis needs a `player` field"))?;
            let player = loaded.game.player_index(player_id)?;
            let mut fixed = vec![0usize; loaded.game.players.len()];
            for (id, idx) in &analysis.fixed {
                fixed[loaded.game.player_index(id)?] = *idx;
            }
            let candidates: Vec<usize> =
                (0..loaded.game.players[player].family.len()).collect();
            match game::best_response(&loaded.game, player, &fixed, &candidates) {
                Ok(br) => {
                    let view = BestResponseView::new(player_id, &br);
                    emit(
                        format,
                        &format!("scenario {target}\n{}", render_best_response(&view)),
                        json!({ "scenario": target, "analysis": "best-response", "best_response": view }),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(GameError::ImproperGame { choice, verdict }) => {
                    emit(
                        format,
                        &format!(
                            "improper game: the joint choice [{}] intersects to {verdict}, \
                             so best response is undefined",
                            choice.join("; ")
                        ),
                        json!({
                            "scenario": target,
                            "analysis": "best-response",
                            "improper": { "choice": choice, "verdict": verdict },
                        }),
                    );
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.into()),
            }
        }
        other => Err(anyhow!(
            "unknown analysis mode `{other}` (expected classify or best-response)"
        )),
    }
}
