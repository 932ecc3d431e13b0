//! Backtracking subgraph search for monochromatic and rainbow copies.
//!
//! Copies are not-necessarily-induced subgraphs. Isolated pattern vertices
//! consume distinct host vertices but are otherwise unconstrained.

use super::{Colouring, Embedding, Graph};

/// A host whose edges carry colours; `None` means "no edge".
pub trait ColouredHost {
    fn edge_colour(&self, u: usize, v: usize) -> Option<usize>;
}

#[derive(Clone, Copy, Debug)]
pub struct ColouredGraph<'a> {
    pub graph: &'a Graph,
    pub colouring: &'a Colouring,
}

impl ColouredHost for ColouredGraph<'_> {
    fn edge_colour(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.edge_id(u, v).map(|e| self.colouring.colour(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyKind {
    Monochromatic,
    Rainbow,
}

/// Checks that `emb` is an injective map sending every pattern edge to a host
/// edge, with all image edges sharing one colour.
pub fn verify_monochromatic(host: &dyn ColouredHost, pattern: &Graph, emb: &Embedding) -> bool {
    image_colours(host, pattern, emb).is_some_and(|cs| cs.windows(2).all(|w| w[0] == w[1]))
}

/// As [`verify_monochromatic`], with pairwise distinct image colours.
pub fn verify_rainbow(host: &dyn ColouredHost, pattern: &Graph, emb: &Embedding) -> bool {
    image_colours(host, pattern, emb).is_some_and(|mut cs| {
        cs.sort_unstable();
        cs.windows(2).all(|w| w[0] != w[1])
    })
}

fn image_colours(host: &dyn ColouredHost, pattern: &Graph, emb: &Embedding) -> Option<Vec<usize>> {
    if emb.len() != pattern.n() || !emb.is_injective() {
        return None;
    }
    pattern.edges().iter().map(|&(u, v)| host.edge_colour(emb.image(u), emb.image(v))).collect()
}

pub fn find_monochromatic_copy(g: &Graph, chi: &Colouring, h: &Graph) -> Option<Embedding> {
    find_copy(g, &|e| Some(chi.colour(e)), h, CopyKind::Monochromatic)
}

pub fn find_rainbow_copy(g: &Graph, chi: &Colouring, h: &Graph) -> Option<Embedding> {
    find_copy(g, &|e| Some(chi.colour(e)), h, CopyKind::Rainbow)
}

/// Copy search over a partially coloured host: `colour_of(edge id)` returning
/// `None` removes that edge from consideration.
pub fn find_copy(host: &Graph, colour_of: &dyn Fn(usize) -> Option<usize>, pattern: &Graph, kind: CopyKind) -> Option<Embedding> {
    if pattern.n() > host.n() {
        return None;
    }
    let plan = Plan::new(pattern);
    match kind {
        CopyKind::Rainbow => Search::new(host, pattern, &plan, colour_of, None).run(),
        CopyKind::Monochromatic => {
            if pattern.edge_count() == 0 {
                return Search::new(host, pattern, &plan, colour_of, None).run();
            }
            let mut colours: Vec<usize> = (0..host.edge_count()).filter_map(colour_of).collect();
            colours.sort_unstable();
            colours.dedup();
            colours.into_iter().find_map(|c| Search::new(host, pattern, &plan, colour_of, Some(c)).run())
        }
    }
}

/// Number of distinct colours on edges from `v` to vertices of `x`.
pub fn colour_degree(g: &Graph, chi: &Colouring, v: usize, x: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &u in x {
        inside[u] = true;
    }
    let mut cs: Vec<usize> = g.incident(v).iter().filter(|&&(w, _)| inside[w]).map(|&(_, e)| chi.colour(e)).collect();
    cs.sort_unstable();
    cs.dedup();
    cs.len()
}

/// Pattern vertex order: non-isolated vertices component by component (larger
/// components first), each component breadth-first from a maximum-degree
/// vertex, then isolated vertices.
struct Plan {
    order: Vec<usize>,
    /// For each position: the already-placed neighbours of that vertex.
    back: Vec<Vec<usize>>,
    isolated: usize,
}

impl Plan {
    fn new(p: &Graph) -> Self {
        let mut comps: Vec<Vec<usize>> = p.components().into_iter().filter(|c| c.len() > 1).collect();
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut order = Vec::with_capacity(p.n());
        let mut placed = vec![false; p.n()];
        for comp in comps {
            let start = *comp.iter().max_by(|&&a, &&b| p.degree(a).cmp(&p.degree(b)).then(b.cmp(&a))).unwrap();
            placed[start] = true;
            let base = order.len();
            order.push(start);
            let mut i = base;
            while i < order.len() {
                let u = order[i];
                i += 1;
                let mut nb: Vec<usize> = p.neighbours(u).filter(|&w| !placed[w]).collect();
                nb.sort_by(|&a, &b| p.degree(b).cmp(&p.degree(a)).then(a.cmp(&b)));
                for w in nb {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
        let isolated = p.n() - order.len();
        let mut pos = vec![usize::MAX; p.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| p.neighbours(v).filter(|&w| pos[w] < i).collect())
            .collect();
        Plan { order, back, isolated }
    }
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    plan: &'a Plan,
    colour_of: &'a dyn Fn(usize) -> Option<usize>,
    mono: Option<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    avail_deg: Vec<usize>,
    rainbow_used: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, plan: &'a Plan, colour_of: &'a dyn Fn(usize) -> Option<usize>, mono: Option<usize>) -> Self {
        let mut avail_deg = vec![0; host.n()];
        for (e, &(u, v)) in host.edges().iter().enumerate() {
            if let Some(c) = colour_of(e) {
                if mono.is_none_or(|m| m == c) {
                    avail_deg[u] += 1;
                    avail_deg[v] += 1;
                }
            }
        }
        Search {
            host,
            pattern,
            plan,
            colour_of,
            mono,
            map: vec![usize::MAX; pattern.n()],
            used: vec![false; host.n()],
            avail_deg,
            rainbow_used: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Embedding> {
        if self.extend(0) {
            Some(Embedding::new(self.map))
        } else {
            None
        }
    }

    fn colour(&self, e: usize) -> Option<usize> {
        let c = (self.colour_of)(e)?;
        match self.mono {
            Some(m) if m != c => None,
            _ => Some(c),
        }
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.plan.order.len() {
            return self.place_isolated();
        }
        let p = self.plan.order[i];
        let need = self.pattern.degree(p);
        let candidates: Vec<usize> = match self.plan.back[i].first() {
            Some(&anchor) => {
                let a = self.map[anchor];
                self.host
                    .incident(a)
                    .iter()
                    .filter(|&&(_, e)| self.colour(e).is_some())
                    .map(|&(w, _)| w)
                    .collect()
            }
            None => (0..self.host.n()).collect(),
        };
        for c in candidates {
            if self.used[c] || self.avail_deg[c] < need {
                continue;
            }
            let mark = self.rainbow_used.len();
            if self.accept(i, c) {
                self.map[p] = c;
                self.used[c] = true;
                if self.extend(i + 1) {
                    return true;
                }
                self.used[c] = false;
                self.map[p] = usize::MAX;
            }
            self.rainbow_used.truncate(mark);
        }
        false
    }

    /// Checks the edges back to placed neighbours; records rainbow colours.
    fn accept(&mut self, i: usize, c: usize) -> bool {
        for &q in &self.plan.back[i] {
            let Some(e) = self.host.edge_id(c, self.map[q]) else {
                return false;
            };
            let Some(col) = self.colour(e) else {
                return false;
            };
            if self.mono.is_none() {
                if self.rainbow_used.contains(&col) {
                    return false;
                }
                self.rainbow_used.push(col);
            }
        }
        true
    }

    fn place_isolated(&mut self) -> bool {
        let start = self.plan.order.len();
        let free: Vec<usize> = (0..self.host.n()).filter(|&v| !self.used[v]).take(self.plan.isolated).collect();
        if free.len() < self.plan.isolated {
            return false;
        }
        for (k, v) in free.into_iter().enumerate() {
            let p = isolated_vertex(self.pattern, self.plan, start + k);
            self.map[p] = v;
        }
        true
    }
}

fn isolated_vertex(p: &Graph, plan: &Plan, position: usize) -> usize {
    let k = position - plan.order.len();
    (0..p.n()).filter(|&v| p.degree(v) == 0).nth(k).expect("isolated vertex exists")
}
