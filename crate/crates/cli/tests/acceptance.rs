//! Acceptance gate: one test per criterion, each emitting a single
//! `[PASS]`/`[FAIL]` line (run with `--nocapture` to see them on success).

use std::process::Command;
use std::time::Instant;

use num_traits::One;

use extgame::game::{
    classify_game, CptChoice, ExtendedGame, Family, GameVerdict, PayoffTable, Player, Structure,
};
use extgame::prob::Cpt;
use extgame::rational::{int, ratio};
use extgame::scenarios::{
    self, appendix_lemma_check, fearful_best_response, matching_pennies, merged_scenario,
    newcomb_fearful, newcomb_realist, realist_best_response, scenario3_verdict, sensor_variant,
    Merge, NewcombParams, SensorCpts,
};
use extgame::strategy::{intersect, StrategyKind, StrategySet};
use extgame::{IntersectionResult, Ratio, Space, VariableSpec};

fn pass(criterion: u32, what: &str) {
    println!("[PASS] criterion {criterion}: {what}");
}

struct Guard(u32, &'static str, bool);
impl Guard {
    fn done(mut self) {
        self.2 = true;
    }
}
impl Drop for Guard {
    fn drop(&mut self) {
        if self.2 {
            pass(self.0, self.1);
        } else {
            println!("[FAIL] criterion {}: {}", self.0, self.1);
        }
    }
}

fn alpha_grid() -> Vec<Ratio> {
    vec![ratio(51, 100), ratio(3, 5), ratio(3, 4), ratio(9, 10), int(1)]
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_extgame"))
}

#[test]
fn criterion_1_fearful_reproduction() {
    let g = Guard(1, "analyze fearful --alpha 1 → P(B)=1, value 1000000, < 1 s", false);
    let start = Instant::now();
    let out = bin()
        .args(["--format", "json", "analyze", "fearful", "--alpha", "1"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["best_response"]["maximizer"], "P(B)=1");
    assert_eq!(v["best_response"]["value"]["exact"], "1000000");
    // and through the library, exactly
    let br = fearful_best_response(&NewcombParams::new(int(1)).unwrap()).unwrap();
    assert_eq!(br.value, int(1_000_000));
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
    g.done();
}

#[test]
fn criterion_2_realist_reproduction() {
    let g = Guard(2, "realist maximizer δ_AB with values 1000 / 1001000 / 501000", false);
    for (q, expected) in [
        (int(1), int(1000)),
        (int(0), int(1_001_000)),
        (ratio(1, 2), int(501_000)),
    ] {
        let br = realist_best_response(&q, scenarios::table1()).unwrap();
        assert_eq!(br.best_label, "h(AB)=1", "two-boxing must win at q_ab={q}");
        assert_eq!(br.maximizers.len(), 1);
        assert_eq!(br.value, expected);
    }
    g.done();
}

#[test]
fn criterion_3_merge_impossibilities() {
    let g = Guard(
        3,
        "merged-1/merged-3 OverPlayed with verified certificates on the α grid; merged-2 Proper with exact products; < 5 s",
        false,
    );
    let start = Instant::now();
    for alpha in alpha_grid() {
        let p = NewcombParams::new(alpha.clone()).unwrap();
        for which in [Merge::UnionBoth, Merge::YourConditionalTheirCpt] {
            let out = merged_scenario(which, &p).unwrap();
            assert_eq!(out.classification.verdict, GameVerdict::OverPlayed);
            // every witness carries a certificate that recombines exactly
            for w in &out.classification.witnesses {
                let IntersectionResult::Empty { certificate } = &w.result else {
                    panic!("over-played witness must be empty");
                };
                let constraints = out
                    .game
                    .choice_constraints(&w.choice)
                    .unwrap()
                    .expect("affine game");
                assert!(certificate.verify(&constraints), "certificate must verify");
            }
        }
        let out = merged_scenario(Merge::YourMarginalTheirProduct, &p).unwrap();
        assert_eq!(out.classification.verdict, GameVerdict::Proper);
        assert!(out.note.is_some());
        // every intersection equals the product P(y) P(g) exactly
        let (you, w) = (&out.game.players[0], &out.game.players[1]);
        let (Family::Sets(you_sets), Family::Sets(w_sets)) = (&you.family, &w.family) else {
            panic!("affine families expected");
        };
        for ys in you_sets {
            for ws in w_sets {
                let StrategyKind::MarginalFixed { dist: py, .. } = &ys.kind else {
                    panic!("your strategies fix the y-marginal");
                };
                let StrategyKind::ConditionalIndependentFixed { dist: pg, .. } = &ws.kind
                else {
                    panic!("W's strategies are product-form");
                };
                match intersect(&[ys, ws]).unwrap() {
                    IntersectionResult::Singleton(j) => {
                        let product: Vec<Ratio> = py
                            .iter()
                            .flat_map(|a| pg.iter().map(move |b| a * b))
                            .collect();
                        assert_eq!(j.probs(), &product[..]);
                    }
                    other => panic!("expected singleton, got {}", other.kind()),
                }
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "took {:?}", start.elapsed());
    g.done();
}

/// Every rational in [0, 1] with denominator at most `max_denom`.
fn farey(max_denom: i64) -> Vec<Ratio> {
    let mut out = Vec::new();
    for d in 1..=max_denom {
        for n in 0..=d {
            let r = ratio(n, d);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

#[test]
fn criterion_4_appendix_lemma_vs_grid_oracle() {
    let g = Guard(
        4,
        "feasible g-independent conditionals are exactly the two deltas — solver and denominator-≤20 grid oracle agree",
        false,
    );
    let space = scenarios::newcomb_space();
    let h_candidates = farey(20);
    // any joint satisfying the accuracy table lies on the one-parameter
    // family z ↦ (z·α, z·(1−α), (1−z)·(1−α), (1−z)·α); the oracle scans z
    // over the same denominator-≤20 grid and tests exact membership
    let z_candidates = farey(20);
    for alpha in alpha_grid() {
        let check = appendix_lemma_check(&alpha).unwrap();
        assert_eq!(check.feasible.len(), 2);
        assert!(check.dichotomy_coefficient > int(0));
        let w_set = StrategySet::compile(
            "W",
            "cpt",
            StrategyKind::CptFixed {
                child: "g".into(),
                parents: vec!["y".into()],
                table: vec![
                    vec![alpha.clone(), Ratio::one() - &alpha],
                    vec![Ratio::one() - &alpha, alpha.clone()],
                ],
            },
            &space,
        )
        .unwrap();
        for h in &h_candidates {
            let h_set = StrategySet::compile(
                "you",
                "h",
                StrategyKind::ConditionalIndependentFixed {
                    target: "y".into(),
                    given: "g".into(),
                    dist: vec![h.clone(), Ratio::one() - h],
                },
                &space,
            )
            .unwrap();
            let solver_feasible =
                !matches!(scenario3_verdict(&alpha, h).unwrap(), IntersectionResult::Empty { .. });
            let oracle_feasible = z_candidates.iter().any(|z| {
                let probs = vec![
                    z * &alpha,
                    z * (Ratio::one() - &alpha),
                    (Ratio::one() - z) * (Ratio::one() - &alpha),
                    (Ratio::one() - z) * &alpha,
                ];
                let j = extgame::JointDistribution::new(space.clone(), probs).unwrap();
                w_set.contains(&j) && h_set.contains(&j)
            });
            assert_eq!(
                solver_feasible, oracle_feasible,
                "alpha={alpha} h={h}: solver and oracle disagree"
            );
            let is_delta = h == &int(0) || h == &Ratio::one();
            assert_eq!(solver_feasible, is_delta, "alpha={alpha} h={h}");
        }
    }
    g.done();
}

#[test]
fn criterion_5_threshold_property() {
    let g = Guard(
        5,
        "Fearful's maximizer flips AB→B exactly at α = 1001/2000, with a tie at equality",
        false,
    );
    let threshold = ratio(1001, 2000);
    let eps = ratio(1, 10_000);

    let at = fearful_best_response(&NewcombParams::new(threshold.clone()).unwrap()).unwrap();
    assert_eq!(at.maximizers.len(), 9, "EU is constant in P(B) at the threshold");
    assert_eq!(at.value, int(500_500));

    let below =
        fearful_best_response(&NewcombParams::new(&threshold - &eps).unwrap()).unwrap();
    assert_eq!(below.best_label, "P(B)=0");
    assert_eq!(below.maximizers.len(), 1);

    let above =
        fearful_best_response(&NewcombParams::new(&threshold + &eps).unwrap()).unwrap();
    assert_eq!(above.best_label, "P(B)=1");
    assert_eq!(above.maximizers.len(), 1);

    // independent oracle: the closed-form EU decomposition at α ± ε
    for (alpha, expect_one_box) in [(&threshold - &eps, false), (&threshold + &eps, true)] {
        let eu = |pb: &Ratio| scenarios::fearful_eu_formula(&alpha, pb, &scenarios::table1());
        let two_box = eu(&int(0));
        let one_box = eu(&int(1));
        assert_eq!(one_box > two_box, expect_one_box, "alpha={alpha}");
    }
    g.done();
}

/// Minimal deterministic PRNG (xorshift64*) so the randomized criterion is
/// reproducible without extra dependencies.
struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
    fn dist(&mut self, arity: usize) -> Vec<Ratio> {
        let weights: Vec<i64> = (0..arity).map(|_| 1 + self.below(12) as i64).collect();
        let total: i64 = weights.iter().sum();
        weights.into_iter().map(|w| ratio(w, total)).collect()
    }
    fn cpt(&mut self, rows: usize, arity: usize) -> Cpt {
        Cpt::new((0..rows).map(|_| self.dist(arity)).collect())
    }
}

#[test]
fn criterion_6_bayes_net_properness() {
    let g = Guard(6, "100 randomized Bayes-net-partition games all classify Proper", false);
    let mut rng = Rng(0x9E37_79B9_7F4A_7C15);
    for round in 0..100 {
        let n_vars = 2 + (round % 2); // alternate 2- and 3-variable nets
        let names = ["v0", "v1", "v2"];
        let space = Space::new(
            (0..n_vars)
                .map(|i| VariableSpec::new(names[i], &["0", "1"]).unwrap())
                .collect(),
        )
        .unwrap();
        // random subset of the forward edges keeps the graph acyclic
        let mut edges = Vec::new();
        for a in 0..n_vars {
            for b in (a + 1)..n_vars {
                if rng.below(2) == 0 {
                    edges.push((a, b));
                }
            }
        }
        let n_parent_rows = |v: usize| 1usize << edges.iter().filter(|&&(_, b)| b == v).count();
        // two players split the nodes: player 0 gets node 0, player 1 the rest
        let owners: Vec<Vec<usize>> = vec![vec![0], (1..n_vars).collect()];
        let players = owners
            .iter()
            .enumerate()
            .map(|(pi, nodes)| {
                let choices = (0..2)
                    .map(|ci| CptChoice {
                        label: format!("c{ci}"),
                        cpts: nodes
                            .iter()
                            .map(|&v| (v, rng.cpt(n_parent_rows(v), 2)))
                            .collect(),
                    })
                    .collect();
                Player {
                    id: format!("p{pi}"),
                    is_nature: false,
                    family: Family::NodeCpts {
                        nodes: nodes.clone(),
                        choices,
                    },
                    utility: Some(PayoffTable::new(vec![int(0); space.size()])),
                }
            })
            .collect::<Vec<_>>();
        let players: Vec<Player> = players
            .into_iter()
            .filter(|p| {
                let Family::NodeCpts { nodes, .. } = &p.family else { unreachable!() };
                !nodes.is_empty()
            })
            .collect();
        let owners: Vec<Vec<usize>> = players
            .iter()
            .map(|p| {
                let Family::NodeCpts { nodes, .. } = &p.family else { unreachable!() };
                nodes.clone()
            })
            .collect();
        let game = ExtendedGame::new(
            space,
            players,
            Some(Structure {
                edges: edges.clone(),
                owners,
            }),
        )
        .unwrap();
        let c = classify_game(&game).unwrap();
        assert_eq!(c.verdict, GameVerdict::Proper, "round {round} edges {edges:?}");
    }
    g.done();
}

#[test]
fn criterion_7_matching_pennies_and_sensor() {
    let g = Guard(
        7,
        "matching-pennies EU matches exhaustive enumeration on a 9×9 grid; sensor variant Proper",
        false,
    );
    for i in 0..=8 {
        for j in 0..=8 {
            let (p_r, p_c) = (ratio(i, 8), ratio(j, 8));
            let out = matching_pennies(&p_r, &p_c).unwrap();
            // independent enumeration over the four outcomes
            let pr = [Ratio::one() - &p_r, p_r.clone()];
            let pc = [Ratio::one() - &p_c, p_c.clone()];
            let mut eu_row = int(0);
            let mut eu_col = int(0);
            for x in 0..2usize {
                for y in 0..2usize {
                    let mass = &pr[x] * &pc[y];
                    if x == y {
                        eu_row += mass;
                    } else {
                        eu_col += mass;
                    }
                }
            }
            assert_eq!(out.eu_row, eu_row);
            assert_eq!(out.eu_col, eu_col);
            assert_eq!(out.formula_row, eu_row);
            assert_eq!(&eu_row + &eu_col, Ratio::one());
        }
    }
    let game = sensor_variant(&SensorCpts::exact_default()).unwrap();
    assert_eq!(classify_game(&game).unwrap().verdict, GameVerdict::Proper);
    g.done();
}

#[test]
fn criterion_8_time_reversal() {
    let g = Guard(
        8,
        "forward and reversed reports field-identical for fearful, realist, merged-3 at α=1",
        false,
    );
    let p = NewcombParams::new(int(1)).unwrap();
    let out = scenarios::time_reversed_newcomb(&p).unwrap();
    assert!(out.identical);
    // field-identical at the serialization level too
    assert_eq!(
        serde_json::to_value(&out.forward).unwrap(),
        serde_json::to_value(&out.reversed).unwrap()
    );
    g.done();
}

#[test]
fn criterion_9_utility_irrelevance() {
    let g = Guard(
        9,
        "positive affine payoff rescaling preserves all maximizer sets and verdicts of criteria 1–3",
        false,
    );
    let rescales = [(int(3), int(-500)), (ratio(1, 7), int(1_000_000))];
    for (a, b) in &rescales {
        let scaled = scenarios::table1().rescaled(a, b);
        // criterion 1: fearful
        for alpha in [ratio(3, 4), int(1)] {
            let base = fearful_best_response(&NewcombParams::new(alpha.clone()).unwrap()).unwrap();
            let re = fearful_best_response(
                &NewcombParams::with_payoffs(alpha.clone(), scaled.clone()).unwrap(),
            )
            .unwrap();
            assert_eq!(base.maximizers, re.maximizers);
            assert_eq!(re.value, a * &base.value + b);
        }
        // criterion 2: realist
        for q in [int(1), int(0), ratio(1, 2)] {
            let base = realist_best_response(&q, scenarios::table1()).unwrap();
            let re = realist_best_response(&q, scaled.clone()).unwrap();
            assert_eq!(base.maximizers, re.maximizers);
        }
        // criterion 3: merged classifications (verdicts do not involve
        // payoffs, but the games must still build and classify identically)
        for which in [Merge::UnionBoth, Merge::YourMarginalTheirProduct, Merge::YourConditionalTheirCpt] {
            let p0 = NewcombParams::new(int(1)).unwrap();
            let p1 = NewcombParams::with_payoffs(int(1), scaled.clone()).unwrap();
            let v0 = merged_scenario(which, &p0).unwrap().classification.verdict;
            let v1 = merged_scenario(which, &p1).unwrap().classification.verdict;
            assert_eq!(v0, v1);
        }
    }
    // sanity: the unscaled games still classify as before
    assert_eq!(
        classify_game(&newcomb_fearful(&NewcombParams::new(int(1)).unwrap()).unwrap())
            .unwrap()
            .verdict,
        GameVerdict::Proper
    );
    assert_eq!(
        classify_game(&newcomb_realist(&ratio(1, 2), scenarios::table1()).unwrap())
            .unwrap()
            .verdict,
        GameVerdict::Proper
    );
    g.done();
}
