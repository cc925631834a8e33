//! Directed graphs with `(2,1)`-valent vertices, their sign identifications,
//! the directed IH move and normal forms.
//!
//! A graph over `(p, q)` has `V = p − q` vertices. Vertex `v` has two ordered
//! input slots and one output; covariant legs `0..p` and vertex outputs are
//! the sources, input slots and contravariant legs `0..q` are the sinks. A
//! graph stores, for every sink, the source feeding it.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::combinatorics::{sequence_sign, FiniteSetPair, LabeledPartition, Part};
use crate::error::{Error, Result};
use crate::guard::Limits;
use crate::linalg::{Echelon, Rational};
use crate::partition::{DetGenerator, DetWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    Leg(usize),
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sink {
    Leg(usize),
    Input(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedGraph21 {
    p: usize,
    q: usize,
    inputs: Vec<[Source; 2]>,
    feeds: Vec<Source>,
    sign: i8,
}

impl DirectedGraph21 {
    pub fn new(p: usize, q: usize, inputs: Vec<[Source; 2]>, feeds: Vec<Source>) -> Result<Self> {
        if p < q || inputs.len() != p - q || feeds.len() != q {
            return Err(Error::Invalid(format!(
                "a graph over ({p},{q}) needs {} vertices and {q} leg feeds",
                p.saturating_sub(q)
            )));
        }
        let v = inputs.len();
        let mut seen = HashSet::new();
        for s in inputs.iter().flatten().chain(&feeds) {
            let ok = match *s {
                Source::Leg(i) => i < p,
                Source::Vertex(u) => u < v,
            };
            if !ok || !seen.insert(*s) {
                return Err(Error::Invalid(format!("source {s:?} out of range or used twice")));
            }
        }
        Ok(DirectedGraph21 { p, q, inputs, feeds, sign: 1 })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn vertex_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[[Source; 2]] {
        &self.inputs
    }

    pub fn feeds(&self) -> &[Source] {
        &self.feeds
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = sign;
        self
    }

    /// Same graph, ignoring sign.
    pub fn same_shape(&self, other: &DirectedGraph21) -> bool {
        self.inputs == other.inputs && self.feeds == other.feeds
    }

    pub fn target(&self, s: Source) -> Sink {
        for (v, ins) in self.inputs.iter().enumerate() {
            for (slot, x) in ins.iter().enumerate() {
                if *x == s {
                    return Sink::Input(v, slot);
                }
            }
        }
        let t = self.feeds.iter().position(|x| *x == s).expect("every source is matched");
        Sink::Leg(t)
    }

    /// The vertex fed by `v`'s output, if any.
    fn successor(&self, v: usize) -> Option<usize> {
        match self.target(Source::Vertex(v)) {
            Sink::Input(w, _) => Some(w),
            Sink::Leg(_) => None,
        }
    }

    /// Legs and vertices upstream of a source, the source's vertex included.
    fn upstream(&self, s: Source) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut legs = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            match x {
                Source::Leg(i) => {
                    legs.insert(i);
                }
                Source::Vertex(u) => {
                    if vertices.insert(u) {
                        stack.extend(self.inputs[u]);
                    }
                }
            }
        }
        (legs, vertices)
    }

    /// Vertices on directed cycles, one list per cycle in traversal order.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut on_cycle = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            let mut path = Vec::new();
            let mut cur = Some(start);
            while let Some(v) = cur {
                if on_cycle[v] {
                    break;
                }
                if let Some(i) = path.iter().position(|&x| x == v) {
                    let cycle: Vec<usize> = path[i..].to_vec();
                    for &c in &cycle {
                        on_cycle[c] = true;
                    }
                    out.push(cycle);
                    break;
                }
                path.push(v);
                cur = self.successor(v);
            }
        }
        out
    }

    /// Reorder vertices (`order[i]` is the old vertex placed at `i`) and swap
    /// the inputs of the old vertices flagged in `swaps`. Returns the new graph
    /// with `[old] = sign · [new]` folded into its sign, and that sign.
    pub fn reorder_sign(&self, order: &[usize], swaps: &[bool]) -> Result<(DirectedGraph21, i8)> {
        let v = self.vertex_count();
        let mut position = vec![usize::MAX; v];
        for (i, &old) in order.iter().enumerate() {
            if old >= v || position[old] != usize::MAX {
                return Err(Error::Invalid("vertex reordering is not a bijection".into()));
            }
            position[old] = i;
        }
        if order.len() != v || swaps.len() != v {
            return Err(Error::Invalid("reordering has the wrong length".into()));
        }
        let rename = |s: Source| match s {
            Source::Vertex(u) => Source::Vertex(position[u]),
            leg => leg,
        };
        let inputs = order
            .iter()
            .map(|&old| {
                let [a, b] = self.inputs[old];
                if swaps[old] {
                    [rename(b), rename(a)]
                } else {
                    [rename(a), rename(b)]
                }
            })
            .collect();
        let feeds = self.feeds.iter().map(|&s| rename(s)).collect();
        let flips = swaps.iter().filter(|&&s| s).count();
        let sign = sequence_sign(order) * if flips % 2 == 0 { 1 } else { -1 };
        Ok((
            DirectedGraph21 {
                p: self.p,
                q: self.q,
                inputs,
                feeds,
                sign: self.sign * sign,
            },
            sign,
        ))
    }

    /// Canonical representative of the reordering class, sign folded in.
    /// Vertices are numbered in a traversal from the contravariant legs, then
    /// from the smallest leg of each remaining component; inputs of a vertex
    /// are ordered by (cycle input last, smallest upstream leg).
    pub fn canonical(&self) -> DirectedGraph21 {
        let v = self.vertex_count();
        let key = |at: usize, s: Source| -> (bool, usize) {
            match s {
                Source::Leg(i) => (false, i),
                Source::Vertex(u) => {
                    let (legs, vertices) = self.upstream(Source::Vertex(u));
                    (vertices.contains(&at), *legs.iter().next().expect("components carry legs"))
                }
            }
        };
        let mut order = Vec::with_capacity(v);
        let mut swaps = vec![false; v];
        let mut visited = vec![false; v];
        fn visit(
            g: &DirectedGraph21,
            s: Source,
            key: &dyn Fn(usize, Source) -> (bool, usize),
            order: &mut Vec<usize>,
            swaps: &mut [bool],
            visited: &mut [bool],
        ) {
            let Source::Vertex(u) = s else { return };
            if visited[u] {
                return;
            }
            visited[u] = true;
            order.push(u);
            let [a, b] = g.inputs[u];
            let (first, second) = if key(u, a) <= key(u, b) { (a, b) } else { (b, a) };
            swaps[u] = first != a;
            visit(g, first, key, order, swaps, visited);
            visit(g, second, key, order, swaps, visited);
        }
        for &s in &self.feeds {
            visit(self, s, &key, &mut order, &mut swaps, &mut visited);
        }
        for leg in 0..self.p {
            let mut walk = Vec::new();
            let mut sink = self.target(Source::Leg(leg));
            while let Sink::Input(u, _) = sink {
                if visited[u] {
                    break;
                }
                if walk.contains(&u) {
                    visit(self, Source::Vertex(u), &key, &mut order, &mut swaps, &mut visited);
                    break;
                }
                walk.push(u);
                sink = self.target(Source::Vertex(u));
            }
        }
        debug_assert_eq!(order.len(), v);
        self.reorder_sign(&order, &swaps).expect("traversal is a bijection").0
    }

    /// The directed IH move on the edge `u → w`: with `u = [x₁, x₂]` feeding
    /// the first input of `w = [u, x₃]`, the result is `u = [x₃, x₁]`,
    /// `w = [u, x₂]`. The output of `u` is moved to the first input first.
    pub fn ih_move(&self, u: usize, w: usize) -> Result<DirectedGraph21> {
        let Sink::Input(target, slot) = self.target(Source::Vertex(u)) else {
            return Err(Error::Invalid(format!("vertex {u} feeds a leg")));
        };
        if target != w || u == w {
            return Err(Error::Invalid(format!("no edge from vertex {u} to vertex {w}")));
        }
        let mut g = self.clone();
        if slot == 1 {
            g.inputs[w].swap(0, 1);
            g.sign = -g.sign;
        }
        let [x1, x2] = g.inputs[u];
        let x3 = g.inputs[w][1];
        g.inputs[u] = [x3, x1];
        g.inputs[w][1] = x2;
        Ok(g)
    }

    fn swap_inputs(&mut self, v: usize) {
        self.inputs[v].swap(0, 1);
        self.sign = -self.sign;
    }
}

/// `a = factor · b` as signed elements when the graphs are reorderings of
/// each other.
pub fn relate(a: &DirectedGraph21, b: &DirectedGraph21) -> Option<i8> {
    let ca = a.canonical();
    let cb = b.canonical();
    ca.same_shape(&cb).then(|| ca.sign * cb.sign)
}

/// `V=2; out=[(v1→v2.in1),(v2→t1)]; legs=[(s1→v1.in1),…]`, 1-based.
impl fmt::Display for DirectedGraph21 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sink = |s: Sink| match s {
            Sink::Leg(t) => format!("t{}", t + 1),
            Sink::Input(v, slot) => format!("v{}.in{}", v + 1, slot + 1),
        };
        let outs: Vec<String> = (0..self.vertex_count())
            .map(|v| format!("(v{}→{})", v + 1, sink(self.target(Source::Vertex(v)))))
            .collect();
        let legs: Vec<String> = (0..self.p)
            .map(|i| format!("(s{}→{})", i + 1, sink(self.target(Source::Leg(i)))))
            .collect();
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "V={}; out=[{}]; legs=[{}]", self.vertex_count(), outs.join(","), legs.join(","))
    }
}

fn check_size(p: usize, q: usize, limits: &Limits) -> Result<()> {
    let v = p.saturating_sub(q);
    let raw: u128 = (1..=(p + v) as u128).product::<u128>() >> v;
    limits.check_tensor(&format!("graphs over ({p},{q})"), raw)
}

/// One representative per reordering class, in canonical form with sign `+1`.
pub fn enumerate_graphs(s: &FiniteSetPair) -> Result<Vec<DirectedGraph21>> {
    enumerate_graphs_with(s, &Limits::from_env())
}

pub fn enumerate_graphs_with(s: &FiniteSetPair, limits: &Limits) -> Result<Vec<DirectedGraph21>> {
    let (p, q) = s.shape();
    if p < q {
        return Ok(Vec::new());
    }
    check_size(p, q, limits)?;
    let v = p - q;
    let sources: Vec<Source> = (0..p).map(Source::Leg).chain((0..v).map(Source::Vertex)).collect();
    let mut seen: HashSet<(Vec<[Source; 2]>, Vec<Source>)> = HashSet::new();
    let mut out = Vec::new();
    let mut used = vec![false; sources.len()];
    let mut inputs: Vec<[Source; 2]> = Vec::with_capacity(v);
    #[allow(clippy::too_many_arguments)]
    fn fill(
        p: usize,
        q: usize,
        sources: &[Source],
        used: &mut [bool],
        inputs: &mut Vec<[Source; 2]>,
        seen: &mut HashSet<(Vec<[Source; 2]>, Vec<Source>)>,
        out: &mut Vec<DirectedGraph21>,
    ) {
        if inputs.len() < p - q {
            for a in 0..sources.len() {
                if used[a] {
                    continue;
                }
                used[a] = true;
                for b in a + 1..sources.len() {
                    if used[b] {
                        continue;
                    }
                    used[b] = true;
                    inputs.push([sources[a], sources[b]]);
                    fill(p, q, sources, used, inputs, seen, out);
                    inputs.pop();
                    used[b] = false;
                }
                used[a] = false;
            }
            return;
        }
        let rest: Vec<Source> = sources.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(s, _)| *s).collect();
        for perm in crate::combinatorics::permutations(rest.len()) {
            let feeds = perm.iter().map(|&i| rest[i]).collect();
            let g = DirectedGraph21::new(p, q, inputs.clone(), feeds).expect("valid by construction");
            let c = g.canonical();
            if seen.insert((c.inputs.clone(), c.feeds.clone())) {
                out.push(c.with_sign(1));
            }
        }
    }
    fill(p, q, &sources, &mut used, &mut inputs, &mut seen, &mut out);
    out.sort_by(|a, b| (&a.inputs, &a.feeds).cmp(&(&b.inputs, &b.feeds)));
    Ok(out)
}

/// Every marked graph over `(p, q)`, one per matching of sources to sinks.
pub fn enumerate_marked(p: usize, q: usize) -> Vec<DirectedGraph21> {
    if p < q {
        return Vec::new();
    }
    let v = p - q;
    let sources: Vec<Source> = (0..p).map(Source::Leg).chain((0..v).map(Source::Vertex)).collect();
    crate::combinatorics::permutations(sources.len())
        .into_iter()
        .map(|perm| {
            let s: Vec<Source> = perm.iter().map(|&i| sources[i]).collect();
            let inputs = (0..v).map(|k| [s[2 * k], s[2 * k + 1]]).collect();
            DirectedGraph21::new(p, q, inputs, s[2 * v..].to_vec()).expect("valid matching")
        })
        .collect()
}

/// A connected component of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    /// Left comb on increasing legs feeding `out`.
    Comb { legs: Vec<usize>, out: usize },
    /// Left comb on increasing legs feeding a final vertex with a loop.
    LoopComb { legs: Vec<usize> },
    Strand { leg: usize, out: usize },
}

impl Component {
    fn min_leg(&self) -> usize {
        match self {
            Component::Comb { legs, .. } | Component::LoopComb { legs } => legs[0],
            Component::Strand { leg, .. } => *leg,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub p: usize,
    pub q: usize,
    pub components: Vec<Component>,
    pub sign: i8,
}

impl NormalForm {
    /// The normal-form graph, vertices numbered component by component.
    pub fn graph(&self) -> DirectedGraph21 {
        let mut inputs: Vec<[Source; 2]> = Vec::new();
        let mut feeds = vec![Source::Leg(0); self.q];
        let comb = |legs: &[usize], inputs: &mut Vec<[Source; 2]>| -> Source {
            let mut top = Source::Leg(legs[0]);
            for &l in &legs[1..] {
                inputs.push([top, Source::Leg(l)]);
                top = Source::Vertex(inputs.len() - 1);
            }
            top
        };
        for c in &self.components {
            match c {
                Component::Strand { leg, out } => feeds[*out] = Source::Leg(*leg),
                Component::Comb { legs, out } => feeds[*out] = comb(legs, &mut inputs),
                Component::LoopComb { legs } => {
                    let top = comb(legs, &mut inputs);
                    let l = inputs.len();
                    inputs.push([top, Source::Vertex(l)]);
                }
            }
        }
        DirectedGraph21 {
            p: self.p,
            q: self.q,
            inputs,
            feeds,
            sign: self.sign,
        }
    }

    fn read(g: &DirectedGraph21) -> NormalForm {
        let mut components = Vec::new();
        for (t, &s) in g.feeds.iter().enumerate() {
            components.push(match s {
                Source::Leg(leg) => Component::Strand { leg, out: t },
                v => Component::Comb {
                    legs: g.upstream(v).0.into_iter().collect(),
                    out: t,
                },
            });
        }
        for cycle in g.cycles() {
            components.push(Component::LoopComb {
                legs: g.upstream(Source::Vertex(cycle[0])).0.into_iter().collect(),
            });
        }
        components.sort_by_key(Component::min_leg);
        NormalForm {
            p: g.p,
            q: g.q,
            components,
            sign: 1,
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs = |l: &[usize]| l.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match c {
                Component::Comb { legs: l, out } => format!("comb({};t{})", legs(l), out + 1),
                Component::LoopComb { legs: l } => format!("loop({})", legs(l)),
                Component::Strand { leg, out } => format!("s{}→t{}", leg + 1, out + 1),
            })
            .collect();
        write!(f, "{}[{}]", if self.sign < 0 { "-" } else { "" }, parts.join(" "))
    }
}

struct Rewriter<'a> {
    g: DirectedGraph21,
    choose: &'a mut dyn FnMut(usize) -> usize,
}

impl Rewriter<'_> {
    fn apply(&mut self, u: usize, w: usize) {
        self.g = self.g.ih_move(u, w).expect("rewrite sites are edges");
    }

    /// Shrink one cycle of length ≥ 2 by moving a cycle input up one vertex.
    fn shrink(&mut self) -> bool {
        let mut sites = Vec::new();
        for cycle in self.g.cycles() {
            if cycle.len() >= 2 {
                for i in 0..cycle.len() {
                    let u = cycle[i];
                    let w = cycle[(i + 1) % cycle.len()];
                    let pred = cycle[(i + cycle.len() - 1) % cycle.len()];
                    sites.push((u, w, pred));
                }
            }
        }
        if sites.is_empty() {
            return false;
        }
        sites.sort_unstable();
        let k = (self.choose)(sites.len());
        let (u, w, pred) = sites[k];
        if self.g.inputs[w][0] != Source::Vertex(u) {
            self.g.swap_inputs(w);
        }
        let moves = if self.g.inputs[u][0] == Source::Vertex(pred) { 2 } else { 1 };
        for _ in 0..moves {
            self.apply(u, w);
        }
        true
    }

    /// Bring the tree rooted at `w` to a left comb with its largest leg
    /// attached directly to `w`.
    fn comb(&mut self, w: usize) {
        match self.g.inputs[w] {
            [Source::Leg(a), Source::Leg(b)] => {
                if a > b {
                    self.g.swap_inputs(w);
                }
                return;
            }
            [Source::Leg(_), Source::Vertex(_)] => self.g.swap_inputs(w),
            [Source::Vertex(_), Source::Vertex(_)] => {
                if (self.choose)(2) == 1 {
                    self.g.swap_inputs(w);
                }
            }
            [Source::Vertex(_), Source::Leg(_)] => {}
        }
        while let Source::Vertex(u) = self.g.inputs[w][1] {
            self.g.swap_inputs(w);
            let moves = 1 + (self.choose)(2);
            for _ in 0..moves {
                self.apply(u, w);
            }
        }
        let Source::Vertex(u) = self.g.inputs[w][0] else {
            unreachable!("the kept side is a vertex")
        };
        let Source::Leg(leg) = self.g.inputs[w][1] else { unreachable!() };
        self.comb(u);
        let Source::Leg(top) = self.g.inputs[u][1] else { unreachable!() };
        if leg < top {
            self.apply(u, w);
            self.comb(u);
        }
    }

    fn run(mut self) -> NormalForm {
        while self.shrink() {}
        for t in 0..self.g.q {
            if let Source::Vertex(v) = self.g.feeds[t] {
                self.comb(v);
            }
        }
        for cycle in self.g.cycles() {
            let l = cycle[0];
            if self.g.inputs[l][0] == Source::Vertex(l) {
                self.g.swap_inputs(l);
            }
            if let Source::Vertex(x) = self.g.inputs[l][0] {
                self.comb(x);
            }
        }
        let mut nf = NormalForm::read(&self.g);
        let sign = relate(&self.g, &nf.graph()).expect("rewriting ends in a normal form");
        nf.sign = sign;
        nf
    }
}

/// Rewrite to normal form, always taking the first available site.
pub fn ih_rewrite(g: &DirectedGraph21) -> NormalForm {
    ih_rewrite_choosing(g, &mut |_| 0)
}

/// Rewrite to normal form; `choose(k)` picks one of `k` available sites.
pub fn ih_rewrite_choosing(g: &DirectedGraph21, choose: &mut dyn FnMut(usize) -> usize) -> NormalForm {
    Rewriter { g: g.clone(), choose }.run()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub runs: usize,
    pub outcomes: Vec<NormalForm>,
    pub confluent: bool,
}

/// Run every sequence of rewrite choices and collect the distinct results.
pub fn confluence_check(g: &DirectedGraph21) -> ConfluenceReport {
    let mut outcomes: Vec<NormalForm> = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    let mut runs = 0;
    loop {
        let mut trace: Vec<(usize, usize)> = Vec::new();
        let nf = ih_rewrite_choosing(g, &mut |k| {
            let c = prefix.get(trace.len()).copied().unwrap_or(0);
            trace.push((c, k));
            c
        });
        runs += 1;
        if !outcomes.contains(&nf) {
            outcomes.push(nf);
        }
        loop {
            match trace.pop() {
                Some((c, k)) if c + 1 < k => {
                    prefix = trace.iter().map(|x| x.0).collect();
                    prefix.push(c + 1);
                    break;
                }
                Some(_) => {}
                None => {
                    return ConfluenceReport {
                        runs,
                        confluent: outcomes.len() == 1,
                        outcomes,
                    }
                }
            }
        }
    }
}

/// Labeled partition of a normal form, its sign on the standard wedge word.
pub fn graph_to_partition(nf: &NormalForm) -> Result<(LabeledPartition, DetGenerator)> {
    let parts = nf
        .components
        .iter()
        .map(|c| match c {
            Component::Comb { legs, out } => Part { block: legs.clone(), label: Some(*out) },
            Component::LoopComb { legs } => Part { block: legs.clone(), label: None },
            Component::Strand { leg, out } => Part { block: vec![*leg], label: Some(*out) },
        })
        .collect();
    let partition = LabeledPartition::new(nf.p, nf.q, parts)?;
    let det = DetGenerator {
        coefficient: Rational::from_integer(nf.sign.into()),
        word: DetWord::standard(nf.p, nf.q),
    };
    Ok((partition, det))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSpaceReport {
    pub shape: (usize, usize),
    pub graphs: usize,
    pub ih_rank: usize,
    pub dim: usize,
    pub partitions: usize,
    /// The normal-form map sends both sides of every IH move to the same
    /// signed partition.
    pub normal_forms_consistent: bool,
}

/// `G(S)`: reordering classes modulo IH differences.
pub fn graph_space(s: &FiniteSetPair) -> Result<GraphSpaceReport> {
    graph_space_with(s, &Limits::from_env())
}

pub fn graph_space_with(s: &FiniteSetPair, limits: &Limits) -> Result<GraphSpaceReport> {
    let (p, q) = s.shape();
    let graphs = enumerate_graphs_with(s, limits)?;
    let index: HashMap<(Vec<[Source; 2]>, Vec<Source>), usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| ((g.inputs.clone(), g.feeds.clone()), i))
        .collect();
    let locate = |g: &DirectedGraph21| {
        let c = g.canonical();
        (index[&(c.inputs.clone(), c.feeds.clone())], c.sign)
    };
    let normal: Vec<NormalForm> = graphs.iter().map(ih_rewrite).collect();
    let mut echelon = Echelon::new(graphs.len());
    let mut consistent = true;
    for (i, g) in graphs.iter().enumerate() {
        for u in 0..g.vertex_count() {
            let Sink::Input(w, _) = g.target(Source::Vertex(u)) else { continue };
            if w == u {
                continue;
            }
            let (j, sign) = locate(&g.ih_move(u, w)?);
            if i == j {
                if sign != 1 {
                    echelon.insert_i64(&[(i, 2)]);
                    consistent = false;
                }
                continue;
            }
            echelon.insert_i64(&[(i, 1), (j, -i64::from(sign))]);
            let (a, b) = (&normal[i], &normal[j]);
            if a.components != b.components || a.sign != sign * b.sign {
                consistent = false;
            }
        }
    }
    let partitions = crate::combinatorics::enumerate_partitions(p, q).len();
    let rank = echelon.rank();
    Ok(GraphSpaceReport {
        shape: (p, q),
        graphs: graphs.len(),
        ih_rank: rank,
        dim: graphs.len() - rank,
        partitions,
        normal_forms_consistent: consistent,
    })
}

pub fn graph_space_dim(s: &FiniteSetPair) -> Result<usize> {
    Ok(graph_space(s)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Source::{Leg, Vertex};

    fn graph(p: usize, q: usize, inputs: Vec<[Source; 2]>, feeds: Vec<Source>) -> DirectedGraph21 {
        DirectedGraph21::new(p, q, inputs, feeds).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_graphs(&FiniteSetPair::standard(1, 1)).unwrap().len(), 1);
        assert_eq!(enumerate_marked(2, 1).len(), 6);
        assert_eq!(enumerate_graphs(&FiniteSetPair::standard(2, 1)).unwrap().len(), 3);
        assert!(enumerate_graphs(&FiniteSetPair::standard(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn reorder_signs() {
        let g = graph(3, 1, vec![[Leg(0), Leg(1)], [Vertex(0), Leg(2)]], vec![Vertex(1)]);
        assert_eq!(g.reorder_sign(&[0, 1], &[false, false]).unwrap().1, 1);
        assert_eq!(g.reorder_sign(&[0, 1], &[true, false]).unwrap().1, -1);
        assert_eq!(g.reorder_sign(&[1, 0], &[false, false]).unwrap().1, -1);
        assert!(g.reorder_sign(&[0, 0], &[false, false]).is_err());
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        for g in enumerate_marked(3, 1) {
            let c = g.canonical();
            for order in [[0, 1], [1, 0]] {
                for swaps in [[false, false], [true, false], [false, true], [true, true]] {
                    let (h, _) = g.reorder_sign(&order, &swaps).unwrap();
                    let d = h.canonical();
                    assert!(c.same_shape(&d));
                    assert_eq!(c.sign, d.sign);
                }
            }
        }
    }

    #[test]
    fn rewrite_examples() {
        let strand = graph(1, 1, vec![], vec![Leg(0)]);
        let nf = ih_rewrite(&strand);
        assert_eq!(nf.components, vec![Component::Strand { leg: 0, out: 0 }]);
        let two_cycle = graph(2, 0, vec![[Vertex(1), Leg(0)], [Vertex(0), Leg(1)]], vec![]);
        let nf = ih_rewrite(&two_cycle);
        assert_eq!(nf.components, vec![Component::LoopComb { legs: vec![0, 1] }]);
        let tree = graph(3, 1, vec![[Leg(2), Leg(0)], [Leg(1), Vertex(0)]], vec![Vertex(1)]);
        let nf = ih_rewrite(&tree);
        assert_eq!(nf.components, vec![Component::Comb { legs: vec![0, 1, 2], out: 0 }]);
        assert_eq!(ih_rewrite(&nf.graph()), nf);
    }

    #[test]
    fn small_graph_spaces() {
        for (p, q, dim) in [(1, 1, 1), (2, 1, 3), (2, 0, 2), (3, 1, 10)] {
            let r = graph_space(&FiniteSetPair::standard(p, q)).unwrap();
            assert_eq!(r.dim, dim, "({p},{q})");
            assert_eq!(r.partitions, dim);
            assert!(r.normal_forms_consistent);
        }
    }

    #[test]
    fn partition_of_normal_form() {
        let nf = NormalForm {
            p: 3,
            q: 1,
            components: vec![Component::Comb { legs: vec![0, 2], out: 0 }, Component::LoopComb { legs: vec![1] }],
            sign: -1,
        };
        let (lp, det) = graph_to_partition(&nf).unwrap();
        assert_eq!(lp.to_string(), "{1,3;1|2;·}");
        assert_eq!(det.coefficient, Rational::from_integer((-1).into()));
    }
}
