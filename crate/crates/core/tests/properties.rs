//! Randomized invariants for the probability layer, the strategy encoder,
//! and the intersection solver, checked against brute-force oracles where
//! one exists.

use num_traits::{One, Zero};
use proptest::prelude::*;

use extgame::{
    BayesNet, Cpt, IntersectionResult, JointDistribution, Ratio, Space, StrategyKind,
    StrategySet, VariableSpec,
};
use extgame::game::{
    best_response, classify_game, CptChoice, ExtendedGame, Family, GameVerdict, PayoffTable,
    Player, Structure,
};
use extgame::rational::{int, ratio};
use extgame::strategy::intersect;

fn binary_space(names: &[&str]) -> Space {
    Space::new(
        names
            .iter()
            .map(|n| VariableSpec::new(n, &["0", "1"]).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Normalize positive integer weights into an exact distribution.
fn dist_from_weights(w: &[u32]) -> Vec<Ratio> {
    let total: i64 = w.iter().map(|&x| i64::from(x)).sum();
    w.iter().map(|&x| ratio(i64::from(x), total)).collect()
}

fn arb_dist(n: usize) -> impl Strategy<Value = Vec<Ratio>> {
    prop::collection::vec(1u32..=20, n).prop_map(|w| dist_from_weights(&w))
}

fn arb_cpt(rows: usize, arity: usize) -> impl Strategy<Value = Cpt> {
    prop::collection::vec(arb_dist(arity), rows).prop_map(Cpt::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A Bayes net over a chain always factors into a valid joint whose
    /// node marginals come back out of the joint by summation.
    #[test]
    fn chain_net_joint_is_valid_and_marginals_round_trip(
        root in arb_dist(2),
        mid in arb_cpt(2, 2),
        leaf in arb_cpt(2, 2),
    ) {
        let space = binary_space(&["a", "b", "c"]);
        let net = BayesNet::new(
            space,
            &[("a", "b"), ("b", "c")],
            vec![Cpt::root(root.clone()), mid, leaf],
        ).unwrap();
        let joint = net.joint();
        // construction re-validates: exact nonnegativity and total mass 1
        let root_back = joint.marginal(&["a"]).unwrap();
        prop_assert_eq!(root_back.probs(), &root[..]);
    }

    /// The conditional read back from a factored joint equals the table
    /// that produced it, on every row the joint gives positive mass.
    #[test]
    fn conditional_round_trips_through_the_joint(
        root in arb_dist(2),
        child in arb_cpt(2, 2),
    ) {
        let space = binary_space(&["a", "b"]);
        let net = BayesNet::new(space, &[("a", "b")], vec![Cpt::root(root.clone()), child.clone()]).unwrap();
        let table = net.joint().conditional("b", "a").unwrap();
        for (row, mass) in root.iter().enumerate() {
            if mass.is_zero() { continue; }
            let got = table.rows[row].as_ref().expect("positive-mass row must be supported");
            prop_assert_eq!(&got[..], &child.rows[row][..]);
        }
    }

    /// Strategy sets contain the joints built from their own parameters.
    #[test]
    fn compiled_sets_contain_their_generating_joints(
        d in arb_dist(2),
        other in arb_dist(2),
    ) {
        let space = binary_space(&["x", "y"]);
        // product joint with x-marginal d
        let probs: Vec<Ratio> = d.iter()
            .flat_map(|p| other.iter().map(move |q| p * q))
            .collect();
        let product = JointDistribution::new(space.clone(), probs).unwrap();

        let marginal = StrategySet::compile(
            "p", "m",
            StrategyKind::MarginalFixed { variable: "x".into(), dist: d.clone() },
            &space,
        ).unwrap();
        prop_assert!(marginal.contains(&product));

        let cond = StrategySet::compile(
            "p", "ci",
            StrategyKind::ConditionalIndependentFixed {
                target: "x".into(), given: "y".into(), dist: d.clone(),
            },
            &space,
        ).unwrap();
        prop_assert!(cond.contains(&product));

        // a CPT strategy built from the conditional of the product
        let cpt = StrategySet::compile(
            "p", "cpt",
            StrategyKind::CptFixed {
                child: "x".into(), parents: vec!["y".into()],
                table: vec![vec![d[0].clone(), d[1].clone()]; 2],
            },
            &space,
        ).unwrap();
        prop_assert!(cpt.contains(&product));
    }

    /// Any game whose players own disjoint nodes of a shared Bayes net is
    /// proper: every joint choice determines exactly one distribution.
    #[test]
    fn node_partition_games_are_always_proper(
        roots in prop::collection::vec(arb_dist(2), 2),
        tables in prop::collection::vec(arb_cpt(2, 2), 2),
    ) {
        let space = binary_space(&["x", "y"]);
        let game = ExtendedGame::new(
            space.clone(),
            vec![
                Player {
                    id: "A".into(),
                    is_nature: false,
                    family: Family::NodeCpts {
                        nodes: vec![0],
                        choices: roots.iter().enumerate().map(|(i, d)| CptChoice {
                            label: format!("r{i}"),
                            cpts: vec![(0, Cpt::root(d.clone()))],
                        }).collect(),
                    },
                    utility: Some(PayoffTable::new(vec![int(1), int(0), int(0), int(1)])),
                },
                Player {
                    id: "B".into(),
                    is_nature: false,
                    family: Family::NodeCpts {
                        nodes: vec![1],
                        choices: tables.iter().enumerate().map(|(i, c)| CptChoice {
                            label: format!("t{i}"),
                            cpts: vec![(1, c.clone())],
                        }).collect(),
                    },
                    utility: Some(PayoffTable::new(vec![int(0), int(1), int(1), int(0)])),
                },
            ],
            Some(Structure { edges: vec![(0, 1)], owners: vec![vec![0], vec![1]] }),
        ).unwrap();
        let c = classify_game(&game).unwrap();
        prop_assert_eq!(c.verdict, GameVerdict::Proper);
    }

    /// Positive affine rescaling of the payoffs never changes the set of
    /// best-response maximizers.
    #[test]
    fn best_response_is_invariant_under_affine_payoff_rescale(
        payoffs in prop::collection::vec(-50i64..=50, 4),
        a in 1i64..=7,
        b in -100i64..=100,
    ) {
        let u = PayoffTable::new(payoffs.iter().map(|&v| int(v)).collect());
        let game = |u: PayoffTable| {
            let space = binary_space(&["x", "y"]);
            let sets = (0..=4).map(|k| StrategySet::compile(
                "A",
                &format!("p={k}/4"),
                StrategyKind::ConditionalIndependentFixed {
                    target: "x".into(), given: "y".into(),
                    dist: vec![ratio(k, 4), Ratio::one() - ratio(k, 4)],
                },
                &space,
            ).unwrap()).collect();
            ExtendedGame::new(
                space.clone(),
                vec![
                    Player { id: "A".into(), is_nature: false, family: Family::Sets(sets), utility: Some(u) },
                    Player {
                        id: "N".into(),
                        is_nature: true,
                        family: Family::Sets(vec![StrategySet::compile(
                            "N", "uniform",
                            StrategyKind::MarginalFixed { variable: "y".into(), dist: vec![ratio(1, 2), ratio(1, 2)] },
                            &space,
                        ).unwrap()]),
                        utility: None,
                    },
                ],
                None,
            ).unwrap()
        };
        let candidates: Vec<usize> = (0..5).collect();
        let before = best_response(&game(u.clone()), 0, &[0, 0], &candidates).unwrap();
        let after = best_response(&game(u.rescaled(&int(a), &int(b))), 0, &[0, 0], &candidates).unwrap();
        prop_assert_eq!(before.maximizers, after.maximizers);
        prop_assert_eq!(
            &after.value,
            &(int(a) * &before.value + int(b))
        );
    }
}

/// Every joint over a 2x2 table with denominator `denom`.
fn grid_joints(space: &Space, denom: i64) -> Vec<JointDistribution> {
    let mut out = Vec::new();
    for a in 0..=denom {
        for b in 0..=denom - a {
            for c in 0..=denom - a - b {
                let d = denom - a - b - c;
                let probs = vec![
                    ratio(a, denom),
                    ratio(b, denom),
                    ratio(c, denom),
                    ratio(d, denom),
                ];
                out.push(JointDistribution::new(space.clone(), probs).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The exact solver agrees with a brute-force membership scan over all
    /// joints with a small common denominator: an empty verdict admits no
    /// grid point, and a singleton admits exactly its own point.
    #[test]
    fn solver_agrees_with_grid_oracle(
        num1 in 0i64..=4,
        num2 in 0i64..=4,
        pick_cpt in any::<bool>(),
    ) {
        let space = binary_space(&["x", "y"]);
        let p1 = ratio(num1, 4);
        let p2 = ratio(num2, 4);
        let first = StrategySet::compile(
            "A", "first",
            StrategyKind::ConditionalIndependentFixed {
                target: "x".into(), given: "y".into(),
                dist: vec![p1.clone(), Ratio::one() - &p1],
            },
            &space,
        ).unwrap();
        let second = if pick_cpt {
            StrategySet::compile(
                "B", "second",
                StrategyKind::CptFixed {
                    child: "y".into(), parents: vec!["x".into()],
                    table: vec![
                        vec![p2.clone(), Ratio::one() - &p2],
                        vec![Ratio::one() - &p2, p2.clone()],
                    ],
                },
                &space,
            ).unwrap()
        } else {
            StrategySet::compile(
                "B", "second",
                StrategyKind::MarginalFixed {
                    variable: "y".into(),
                    dist: vec![p2.clone(), Ratio::one() - &p2],
                },
            &space,
            ).unwrap()
        };

        let verdict = intersect(&[&first, &second]).unwrap();
        // denominator 16 covers every vertex expressible from quarters
        let members: Vec<JointDistribution> = grid_joints(&space, 16)
            .into_iter()
            .filter(|j| first.contains(j) && second.contains(j))
            .collect();
        match verdict {
            IntersectionResult::Empty { .. } => prop_assert!(members.is_empty()),
            IntersectionResult::Singleton(j) => {
                prop_assert!(!members.is_empty());
                for m in &members {
                    prop_assert_eq!(m.probs(), j.probs());
                }
            }
            IntersectionResult::Polytope { dimension, sample } => {
                prop_assert!(dimension >= 1);
                prop_assert!(members.len() > 1);
                prop_assert!(first.contains(&sample) && second.contains(&sample));
            }
        }
    }
}
