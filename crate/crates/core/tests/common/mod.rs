//! Brute-force reference implementations shared by the integration tests.
//! Each one is written directly from the definition and shares no code with
//! the library beyond the `Graph` container.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;
use ramsey_lab::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Calls `f` on every injective map `0..k -> 0..n`.
pub fn for_each_injection(k: usize, n: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(map: &mut Vec<usize>, used: &mut Vec<bool>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if map.len() == k {
            return f(map);
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                map.push(v);
                let stop = rec(map, used, k, f);
                map.pop();
                used[v] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    rec(&mut Vec::new(), &mut vec![false; n], k, f)
}

/// Colour of the host edge `{u, v}` under an edge-indexed colouring, by linear scan.
fn edge_colour(host: &Graph, colours: &[usize], u: usize, v: usize) -> Option<usize> {
    host.edges().iter().position(|&(a, b)| (a, b) == (u.min(v), u.max(v))).map(|i| colours[i])
}

/// Whether some injective map sends `pattern` into `host` with all image
/// colours equal (`rainbow = false`) or pairwise distinct (`rainbow = true`).
pub fn naive_has_copy(host: &Graph, colours: &[usize], pattern: &Graph, rainbow: bool) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    for_each_injection(pattern.n(), host.n(), &mut |map| {
        let mut cs = Vec::new();
        for &(u, v) in pattern.edges() {
            match edge_colour(host, colours, map[u], map[v]) {
                Some(c) => cs.push(c),
                None => return false,
            }
        }
        if rainbow {
            let set: BTreeSet<usize> = cs.iter().copied().collect();
            set.len() == cs.len()
        } else {
            cs.windows(2).all(|w| w[0] == w[1])
        }
    })
}

/// Every function from edges to `0..e`, not just canonical ones.
pub fn naive_arrows(g: &Graph, h1: &Graph, h2: &Graph) -> bool {
    let e = g.edge_count();
    let mut colours = vec![0usize; e];
    loop {
        if !naive_has_copy(g, &colours, h1, false) && !naive_has_copy(g, &colours, h2, true) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == e {
                return true;
            }
            colours[i] += 1;
            if colours[i] < e.max(1) {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

fn neighbour_masks(g: &Graph) -> Vec<u32> {
    let mut m = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        m[u] |= 1 << v;
        m[v] |= 1 << u;
    }
    m
}

/// `e(G[S])` by summing degrees into `S` and halving.
fn edges_within(masks: &[u32], s: u32) -> i64 {
    let twice: u32 = (0..masks.len()).filter(|&u| s >> u & 1 == 1).map(|u| (masks[u] & s).count_ones()).sum();
    i64::from(twice / 2)
}

/// Largest `num/den` over the given pairs, compared by cross-multiplication.
fn max_fraction(pairs: impl Iterator<Item = (i64, i64)>) -> BigRational {
    let (n, d) = pairs
        .reduce(|(bn, bd), (n, d)| if n * bd > bn * d { (n, d) } else { (bn, bd) })
        .expect("non-empty");
    q(n, d)
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `max e(J)/v(J)` over all non-empty vertex subsets.
pub fn oracle_m(g: &Graph) -> BigRational {
    let masks = neighbour_masks(g);
    max_fraction((1u32..1 << g.n()).map(|s| (edges_within(&masks, s), i64::from(s.count_ones()))))
}

/// The literal maximum 2-density.
pub fn oracle_m2(g: &Graph) -> BigRational {
    match (g.n(), g.edge_count()) {
        (1, _) | (2, 0) => return q(0, 1),
        (2, 1) => return q(1, 2),
        _ => {}
    }
    let masks = neighbour_masks(g);
    max_fraction(
        (1u32..1 << g.n())
            .filter(|s| s.count_ones() >= 3)
            .map(|s| (edges_within(&masks, s) - 1, i64::from(s.count_ones()) - 2)),
    )
}

/// All labelled graphs on `n` vertices, from the bits of a pair mask.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_injection(n, n, &mut |p| {
        out.push(p.to_vec());
        false
    });
    out
}

/// Canonical form: the least sorted relabelled edge list over all permutations.
pub fn canonical_form(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn iso_classes(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    labelled_graphs(n).filter(|g| seen.insert(canonical_form(g, &perms))).collect()
}

/// Isomorphism classes of trees on `k` vertices, from Prüfer sequences.
pub fn brute_tree_classes(k: usize) -> usize {
    if k <= 2 {
        return 1;
    }
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut seq = vec![0usize; k - 2];
    loop {
        seen.insert(canonical_form(&from_prufer(&seq, k), &perms));
        let mut i = 0;
        loop {
            if i == seq.len() {
                return seen.len();
            }
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn from_prufer(seq: &[usize], k: usize) -> Graph {
    let mut degree = vec![1; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(k, edges).unwrap()
}

/// `f(H)` over all roots and all injective labelings with values in `1..=max_label`.
pub fn brute_f(h: &Graph, max_label: usize) -> u128 {
    let a = adjacency(h);
    let n = h.n();
    let m = h.edge_count();
    let mut best = u128::MAX;
    for_each_injection(m, max_label, &mut |labels| {
        let labels: Vec<u128> = labels.iter().map(|&l| l as u128 + 1).collect();
        for root in 0..n {
            // depth-first over root-to-leaf paths
            let mut worst = 1;
            let mut stack = vec![(root, usize::MAX, 1u128)];
            while let Some((v, parent, prod)) = stack.pop() {
                let kids: Vec<usize> = (0..n).filter(|&w| a[v][w] && w != parent).collect();
                if kids.is_empty() && v != root {
                    worst = worst.max(prod);
                }
                for w in kids {
                    let id = h.edge_id(v, w).unwrap();
                    stack.push((w, v, prod * labels[id]));
                }
            }
            best = best.min(worst);
        }
        false
    });
    best
}

/// A seeded random forest on `n` vertices: each vertex joins an earlier one
/// with probability `attach`, then vertices are shuffled.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize, attach: f64) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(attach) {
            let u = rng.gen_range(0..v);
            edges.push((perm[u], perm[v]));
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    random_forest(rng, n, 1.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs on up to `max_n` vertices with arbitrary edge sets.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Forests on up to `max_n` vertices.
pub fn arb_forest(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.3f64..1.0).prop_map(|(n, seed, attach)| random_forest(&mut rng(seed), n, attach))
}

pub fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(&mut rng(seed), n))
}
