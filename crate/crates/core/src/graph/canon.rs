//! Canonical codes for trees and isomorph-free tree enumeration.

use std::collections::BTreeSet;

use super::Graph;

/// AHU parenthesis code of the tree component containing `root`.
///
/// Two rooted trees are isomorphic (as rooted trees) iff their codes agree.
pub fn rooted_tree_code(g: &Graph, root: usize) -> String {
    fn code(g: &Graph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = g.neighbours(v).filter(|&w| Some(w) != parent).map(|w| code(g, w, Some(v))).collect();
        kids.sort();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        s
    }
    code(g, root, None)
}

/// Free-tree code: the least rooted code over all root choices.
pub fn free_tree_code(g: &Graph) -> String {
    (0..g.n()).map(|r| rooted_tree_code(g, r)).min().unwrap_or_default()
}

/// Isomorphism code of a forest: component codes, largest first; `None` if `g` has a cycle.
pub fn forest_code(g: &Graph) -> Option<String> {
    if !g.is_forest() {
        return None;
    }
    let mut parts: Vec<(usize, String)> = g.components().iter().map(|c| (c.len(), free_tree_code(&g.induced(c)))).collect();
    parts.sort_by(|a, b| b.cmp(a));
    Some(parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join(" "))
}

/// Rebuilds a tree from a rooted code, numbering vertices in level order.
fn tree_from_code(code: &str) -> Graph {
    // children lists in code order
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in code.chars() {
        if ch == '(' {
            let id = children.len();
            children.push(Vec::new());
            if let Some(&p) = stack.last() {
                children[p].push(id);
            }
            stack.push(id);
        } else {
            stack.pop();
        }
    }
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        order.extend(children[v].iter().copied());
    }
    let mut label = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    let edges = children.iter().enumerate().flat_map(|(p, ks)| {
        let label = &label;
        ks.iter().map(move |&c| (label[p], label[c]))
    });
    Graph::new(order.len(), edges).expect("code describes a tree")
}

/// One representative per isomorphism class of trees on `k` vertices,
/// ordered by canonical code. Each representative is numbered in level order
/// from the root that realises its canonical code.
pub fn enumerate_trees(k: usize) -> impl Iterator<Item = Graph> {
    let mut codes: BTreeSet<String> = BTreeSet::new();
    if k >= 1 {
        codes.insert("()".to_string());
    }
    for _ in 1..k {
        let mut next = BTreeSet::new();
        for c in &codes {
            let t = tree_from_code(c);
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, t.n()));
                let grown = Graph::new(t.n() + 1, edges).expect("leaf extension is simple");
                next.insert(free_tree_code(&grown));
            }
        }
        codes = next;
    }
    codes.into_iter().map(|c| tree_from_code(&c))
}
