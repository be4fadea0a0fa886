use proptest::prelude::*;
use vamp_core::{logical_size, FpnntConfig, FpnntNode, PointLabel};

type Node = FpnntNode<u32>;

fn occupancy_bits(depth: usize, m: usize) -> Vec<Option<usize>> {
    let mut q = (depth - 1) / m;
    let mut out = Vec::new();
    let mut i = 0;
    while q > 0 {
        out.push(if q & 1 == 1 { Some((1 << i) * m) } else { None });
        q >>= 1;
        i += 1;
    }
    out
}

fn trim(mut occ: Vec<Option<usize>>) -> Vec<Option<usize>> {
    while occ.last() == Some(&None) {
        occ.pop();
    }
    occ
}

fn sorted_labels(hits: Vec<&PointLabel<u32>>) -> Vec<u32> {
    let mut v: Vec<u32> = hits.into_iter().map(|p| p.label).collect();
    v.sort_unstable();
    v
}

fn scan(chain: &[([f64; 2], u32)], c: [f64; 2], r: f64) -> Vec<u32> {
    let mut v: Vec<u32> = chain
        .iter()
        .filter(|(p, _)| (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) <= r * r)
        .map(|&(_, l)| l)
        .collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug)]
enum Op {
    Insert { parent: usize, p: (i8, i8) },
    Query { version: usize, c: (i8, i8), r: u8 },
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        4 => (any::<usize>(), any::<(i8, i8)>()).prop_map(|(parent, p)| Op::Insert { parent, p }),
        1 => (any::<usize>(), any::<(i8, i8)>(), any::<u8>()).prop_map(|(version, c, r)| Op::Query { version, c, r }),
    ]
}

fn pt(p: (i8, i8)) -> [f64; 2] {
    // Coarse lattice: many duplicates and exact-boundary hits.
    [(p.0 / 8) as f64, (p.1 / 8) as f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn occupancy_follows_binary_counter(m in prop::sample::select(vec![1usize, 2, 3, 5, 32]), extra in 0usize..40) {
        let mut node: Node = FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), FpnntConfig::new(m));
        let depth_max = 20 * m + extra;
        for d in 1..=depth_max {
            prop_assert_eq!(node.depth(), d);
            prop_assert_eq!(trim(node.forest().occupancy()), occupancy_bits(d, m));
            prop_assert_eq!(node.lookback_len(), (d - 1) % m + 1);
            prop_assert!(node.lookback_len() <= m);
            node = node.insert_node(PointLabel::new([d as f64, 0.0], d as u32));
        }
    }

    #[test]
    fn random_schedules_match_chain_scan(
        m in prop::sample::select(vec![1usize, 2, 5, 32]),
        ops in prop::collection::vec(op(), 1..300),
    ) {
        let cfg = FpnntConfig::new(m);
        let mut nodes: Vec<Node> = vec![FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), cfg)];
        let mut chains: Vec<Vec<([f64; 2], u32)>> = vec![vec![([0.0, 0.0], 0)]];
        for op in ops {
            match op {
                Op::Insert { parent, p } => {
                    let parent = parent % nodes.len();
                    let label = nodes.len() as u32;
                    let point = pt(p);
                    let child = nodes[parent].insert_node(PointLabel::new(point, label));
                    let mut chain = chains[parent].clone();
                    chain.push((point, label));
                    nodes.push(child);
                    chains.push(chain);
                }
                Op::Query { version, c, r } => {
                    let v = version % nodes.len();
                    let center = pt(c);
                    let r = (r % 20) as f64 * 0.5;
                    let got = sorted_labels(nodes[v].range_query(&center, r).unwrap());
                    prop_assert_eq!(got, scan(&chains[v], center, r));
                }
            }
        }
        // Every version still answers for its own chain only.
        for (node, chain) in nodes.iter().zip(&chains) {
            prop_assert_eq!(node.depth(), chain.len());
            let all = sorted_labels(node.range_query(&[0.0, 0.0], 1e9).unwrap());
            prop_assert_eq!(all, scan(chain, [0.0, 0.0], 1e9));
        }
    }

    #[test]
    fn rebuild_work_is_amortized(m in prop::sample::select(vec![1usize, 2, 5, 32]), len in 1usize..3000) {
        let mut node: Node = FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), FpnntConfig::new(m));
        let mut built = 0usize;
        for i in 1..len {
            let (next, b) = node.insert_counted(PointLabel::new([i as f64, 0.0], i as u32));
            built += b;
            node = next;
        }
        let l = len as f64;
        let levels = (l / m as f64).max(1.0).log2().floor() as usize;
        prop_assert!(built <= len * (levels + 2), "built {} for L={} M={}", built, len, m);
    }
}

#[test]
fn sibling_branches_do_not_disturb_the_trunk() {
    let cfg = FpnntConfig::new(5);
    let mut trunk: Vec<Node> = vec![FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), cfg)];
    for i in 1..100u32 {
        let n = trunk.last().unwrap().insert_node(PointLabel::new([i as f64, (i % 7) as f64], i));
        trunk.push(n);
    }
    let probes = [([10.0, 3.0], 6.0), ([50.0, 0.0], 20.0), ([99.0, 6.0], 2.5)];
    let snapshot = |trunk: &[Node]| -> Vec<Vec<u32>> {
        trunk
            .iter()
            .flat_map(|n| probes.iter().map(move |(c, r)| sorted_labels(n.range_query(c, *r).unwrap())))
            .collect()
    };
    let before = snapshot(&trunk);
    let size_before = logical_size(trunk.last().unwrap());

    let mut branches = Vec::new();
    for b in 0..100u32 {
        let mut n = trunk[(b as usize * 37) % trunk.len()].clone();
        for j in 0..20u32 {
            n = n.insert_node(PointLabel::new([(b * 3) as f64, j as f64], 10_000 + b * 100 + j));
        }
        branches.push(n);
    }
    assert_eq!(snapshot(&trunk), before);
    assert_eq!(logical_size(trunk.last().unwrap()), size_before);
    let deepest = sorted_labels(trunk.last().unwrap().range_query(&[0.0, 0.0], 1e9).unwrap());
    assert!(deepest.iter().all(|&l| l < 100));
}
