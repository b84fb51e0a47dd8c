use proptest::prelude::*;

use edgeaug::cut_structure::{build_representation, CutRepresentation, RepKind};
use edgeaug::cuts::DEFAULT_ENUM_THRESHOLD;
use edgeaug::generate::{generate_random, Draws, GenKind, GenParams};
use edgeaug::instance::{contract_partition, inseparable_partition};
use edgeaug::io::{parse_instance, parse_solution, serialize_instance, serialize_solution};
use edgeaug::kernel::corner_nodes;
use edgeaug::metric::{metric_completion, metric_violations};
use edgeaug::oracle::{brute_force_solve, Mode, Target};
use edgeaug::solver::solve;
use edgeaug::{Instance, LinkKey, MultiGraph};

fn instance(kind: GenKind, k: u32, n: usize, p: u32, seed: u64) -> Instance {
    generate_random(&GenParams {
        kind,
        k,
        n,
        p,
        seed,
        max_den: 3,
        density_per_mille: 350,
        ..GenParams::default()
    })
    .unwrap()
}

fn by_one() -> impl Strategy<Value = Instance> {
    let shapes = prop_oneof![
        Just((GenKind::Tree, 2)),
        Just((GenKind::Cactus, 3)),
        Just((GenKind::General, 3)),
        Just((GenKind::General, 4)),
    ];
    (shapes, 3usize..=7, 1u32..=3, any::<u64>())
        .prop_map(|((kind, k), n, p, seed)| instance(kind, k, n, p, seed))
}

fn relabel(inst: &Instance, seed: u64) -> Instance {
    let n = inst.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut d = Draws::new(seed);
    for i in (1..n).rev() {
        perm.swap(i, d.index(i + 1));
    }
    let edges = inst
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u], perm[v]))
        .collect();
    let links = inst
        .links()
        .iter()
        .map(|l| (LinkKey::new(perm[l.key.u], perm[l.key.v], l.key.t), l.cost));
    Instance::new(
        MultiGraph::new(n, edges).unwrap(),
        links,
        inst.k(),
        inst.p(),
    )
    .unwrap()
}

/// The contracted instance on the representation's node set.
fn on_representation(inst: &Instance) -> (Instance, CutRepresentation) {
    let (contracted, _) = contract_partition(inst, &inseparable_partition(inst));
    let rep = build_representation(&contracted, DEFAULT_ENUM_THRESHOLD).unwrap();
    let h = Instance::new(
        rep.h.clone(),
        contracted.links().iter().map(|l| (l.key, l.cost)),
        rep.kind.target(),
        inst.p(),
    )
    .unwrap();
    (h, rep)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn value_is_relabelling_invariant(inst in by_one(), seed in any::<u64>()) {
        let a = solve(&inst).unwrap();
        let b = solve(&relabel(&inst, seed)).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.cost, b.cost);
    }

    #[test]
    fn set_never_beats_multiset(inst in by_one()) {
        let target = Target::EdgeConn(inst.k());
        let set = brute_force_solve(&inst, Mode::Set, target).unwrap();
        let multi = brute_force_solve(&inst, Mode::Multiset, target).unwrap();
        if set.is_optimal() {
            prop_assert!(multi.is_optimal());
            prop_assert!(multi.cost <= set.cost);
        }
    }

    #[test]
    fn completion_is_metric_and_lowers_costs(inst in by_one()) {
        let (h, rep) = on_representation(&inst);
        let (done, _) = metric_completion(&h, &rep).unwrap();
        prop_assert!(metric_violations(&done, &rep).is_empty());
        for l in h.links() {
            prop_assert!(done.cost(&l.key) <= l.cost);
        }
        let (again, trace) = metric_completion(&done, &rep).unwrap();
        prop_assert!(trace.steps.is_empty());
        prop_assert_eq!(again, done);
    }

    #[test]
    fn solve_is_deterministic(inst in by_one()) {
        prop_assert_eq!(solve(&inst).unwrap(), solve(&inst).unwrap());
    }

    #[test]
    fn text_round_trip(inst in by_one()) {
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst.clone());
        let sol = solve(&inst).unwrap();
        prop_assert_eq!(parse_solution(&serialize_solution(&sol)).unwrap(), sol);
    }

    #[test]
    fn tree_branching_nodes_below_leaves(n in 2usize..40, seed in any::<u64>()) {
        let inst = instance(GenKind::Tree, 2, n, 1, seed);
        let rep = build_representation(&inst, DEFAULT_ENUM_THRESHOLD).unwrap();
        let corners = corner_nodes(&rep);
        prop_assert_eq!(corners.kind, RepKind::Tree);
        prop_assert!(corners.r2.len() + 2 <= corners.r1.len());
    }

    #[test]
    fn cactus_r2_bound(n in 2usize..30, seed in any::<u64>()) {
        let inst = instance(GenKind::Cactus, 3, n, 1, seed);
        let (_, rep) = on_representation(&inst);
        let corners = corner_nodes(&rep);
        if rep.h.node_count() >= 2 {
            prop_assert!(corners.r2.len() + 8 <= 4 * corners.r1.len());
        }
    }
}
