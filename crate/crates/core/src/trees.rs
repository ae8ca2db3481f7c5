//! Black and white plane trees and the Goulden–Jackson encoding of top
//! factorizations of the full cycle.
//!
//! An edge-rooted tree with `k` edges is stored as a tree hanging from its
//! white root vertex, the root edge being the edge to the first child. The
//! same arena stores planted trees, where an extra uncoloured vertex sits
//! above the root.

use std::fmt::{self, Write as _};

use crate::colours::ColouredPermutation;
use crate::error::{Error, Result};
use crate::perm::{compose, Permutation};
use crate::polyring::{Context, Monomial, MultiPoly, PowerSeries, Scalar, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    White,
    Black,
}

impl VertexClass {
    pub fn other(self) -> Self {
        match self {
            Self::White => Self::Black,
            Self::Black => Self::White,
        }
    }
}

/// How a tree is rooted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rooting {
    /// Root edge from the white root to its first child.
    Edge,
    /// An uncoloured planted vertex of the given class above the root.
    Planted(VertexClass),
}

/// The planted classes: `B_i` (planted black, white root coloured `i`),
/// `W_i` (planted white, black root coloured `i`, properly coloured) and
/// `Ŵ_i` (planted white, black root coloured `i` whose white children all
/// have colours below `i`, with at least one child).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlantedClass {
    B(usize),
    W(usize),
    WHat(usize),
}

impl PlantedClass {
    pub fn colour(self) -> usize {
        match self {
            Self::B(i) | Self::W(i) | Self::WHat(i) => i,
        }
    }

    fn root_class(self) -> VertexClass {
        match self {
            Self::B(_) => VertexClass::White,
            Self::W(_) | Self::WHat(_) => VertexClass::Black,
        }
    }
}

/// A plane tree with vertices in preorder; vertex 0 is the root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    rooting: Rooting,
    class: Vec<VertexClass>,
    label: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl PlaneTree {
    /// Builds the tree of a Dyck word: `(` descends to a new child and `)`
    /// returns to the parent.
    pub fn from_dyck(word: &str, root: VertexClass, rooting: Rooting) -> Result<Self> {
        let mut parent = vec![None];
        let mut children = vec![Vec::new()];
        let mut class = vec![root];
        let mut current = 0;
        for ch in word.chars() {
            match ch {
                '(' => {
                    let v = parent.len();
                    parent.push(Some(current));
                    children.push(Vec::new());
                    class.push(class[current].other());
                    children[current].push(v);
                    current = v;
                }
                ')' => {
                    current = parent[current].ok_or_else(|| {
                        Error::MalformedTree(format!("{word:?} closes past the root"))
                    })?;
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::MalformedTree(format!(
                        "unexpected {c:?} in tree word {word:?}"
                    )))
                }
            }
        }
        if current != 0 {
            return Err(Error::MalformedTree(format!("{word:?} is unbalanced")));
        }
        let label = vec![None; parent.len()];
        let tree = Self {
            rooting,
            class,
            label,
            parent,
            children,
        };
        tree.check_rooting()?;
        Ok(tree)
    }

    fn check_rooting(&self) -> Result<()> {
        match self.rooting {
            Rooting::Edge if self.class[0] != VertexClass::White || self.num_edges() == 0 => {
                Err(Error::MalformedTree(
                    "an edge-rooted tree needs a white root and at least one edge".into(),
                ))
            }
            Rooting::Planted(c) if c == self.class[0] => Err(Error::MalformedTree(
                "planted vertex and root must have different colours".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn rooting(&self) -> Rooting {
        self.rooting
    }

    pub fn num_vertices(&self) -> usize {
        self.class.len()
    }

    pub fn num_edges(&self) -> usize {
        self.class.len() - 1
    }

    pub fn class(&self, v: usize) -> VertexClass {
        self.class[v]
    }

    pub fn label(&self, v: usize) -> Option<usize> {
        self.label[v]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.label
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Dyck word of the underlying shape.
    pub fn dyck_word(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                out.push('(');
                stack.push((c, 0));
            } else if v != 0 {
                out.push(')');
            }
        }
        out
    }

    /// Vertices of the given class in preorder.
    pub fn vertices_of(&self, class: VertexClass) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| self.class[v] == class)
            .collect()
    }

    /// Labels the white vertices (in preorder) and gives each black vertex
    /// the largest label among its neighbours.
    pub fn propagate_colours(&self, white_labels: &[usize]) -> Result<Self> {
        let whites = self.vertices_of(VertexClass::White);
        if whites.len() != white_labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} white vertices",
                white_labels.len(),
                whites.len()
            )));
        }
        if white_labels.contains(&0) {
            return Err(Error::InvalidArgument("colours start at 1".into()));
        }
        let mut t = self.clone();
        t.label = vec![None; t.num_vertices()];
        for (&v, &c) in whites.iter().zip(white_labels) {
            t.label[v] = Some(c);
        }
        for v in t.vertices_of(VertexClass::Black) {
            t.label[v] = t.neighbours(v).filter_map(|u| t.label[u]).max();
        }
        Ok(t)
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v]
            .into_iter()
            .chain(self.children[v].iter().copied())
    }

    /// Checks proper bicolouring, the labelling rule, and (for planted
    /// trees) membership of the given class.
    pub fn validate(&self, class: Option<PlantedClass>, m: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedTree(msg));
        for v in 1..self.num_vertices() {
            let p = self.parent[v].expect("non-root vertex has a parent");
            if self.class[p] == self.class[v] {
                return bad(format!(
                    "vertices {p} and {v} are adjacent and share a colour class"
                ));
            }
        }
        for v in 0..self.num_vertices() {
            match self.label[v] {
                Some(c) if (1..=m).contains(&c) => {}
                other => return bad(format!("vertex {v} has label {other:?} outside 1..={m}")),
            }
        }
        let child_max = |v: usize| self.children[v].iter().filter_map(|&c| self.label[c]).max();
        for v in self.vertices_of(VertexClass::Black) {
            if v == 0 && matches!(self.rooting, Rooting::Planted(_)) {
                continue;
            }
            if self.label[v] != self.neighbours(v).filter_map(|u| self.label[u]).max() {
                return bad(format!("black vertex {v} is not labelled by the max rule"));
            }
        }
        match (class, self.rooting) {
            (None, Rooting::Edge) => Ok(()),
            (Some(c), Rooting::Planted(p)) if p == c.root_class().other() => {
                let i = c.colour();
                if self.label[0] != Some(i) {
                    return bad(format!("root is not coloured {i}"));
                }
                match c {
                    PlantedClass::B(_) => Ok(()),
                    PlantedClass::W(_) => match child_max(0) {
                        None => Ok(()),
                        Some(x) if x == i => Ok(()),
                        Some(x) => bad(format!("root coloured {i} has a child coloured {x}")),
                    },
                    PlantedClass::WHat(_) => match child_max(0) {
                        Some(x) if x < i => Ok(()),
                        _ => bad(format!("root of an improper tree needs children below {i}")),
                    },
                }
            }
            _ => bad(format!(
                "rooting {:?} does not fit class {class:?}",
                self.rooting
            )),
        }
    }

    /// Edge labels `0..k` by walking around the tree with the tree on the
    /// right, numbering an edge when it is traversed from white to black.
    /// Entry `v` is the label of the edge from `v` to its parent.
    pub fn edge_labels(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.num_vertices()];
        let mut next = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                if self.class[v] == VertexClass::White {
                    out[c] = Some(next);
                    next += 1;
                }
                stack.push((c, 0));
            } else if v != 0 && self.class[v] == VertexClass::White {
                out[v] = Some(next);
                next += 1;
            }
        }
        out
    }

    /// Edge labels around `v`: the parent edge first, then the child edges.
    fn rotation(&self, v: usize, edge: &[Option<usize>]) -> Vec<usize> {
        let up = (v != 0).then(|| edge[v].expect("every edge is labelled"));
        up.into_iter()
            .chain(
                self.children[v]
                    .iter()
                    .map(|&c| edge[c].expect("every edge is labelled")),
            )
            .collect()
    }

    /// Monomial pair `(∏ p_i^{#white labelled i}, ∏ q_i^{#black labelled i})`.
    pub fn weight(&self, ctx: &Context) -> Result<(Monomial, Monomial)> {
        let mut pe = vec![0u32; ctx.len()];
        let mut qe = vec![0u32; ctx.len()];
        for v in 0..self.num_vertices() {
            let c = self.label[v]
                .ok_or_else(|| Error::MalformedTree(format!("vertex {v} has no colour")))?;
            match self.class[v] {
                VertexClass::White => pe[ctx.p(c)] += 1,
                VertexClass::Black => qe[ctx.q(c)] += 1,
            }
        }
        Ok((Monomial::from_exponents(&pe), Monomial::from_exponents(&qe)))
    }

    /// Graphviz rendering: white vertices as circles, black as filled boxes,
    /// each showing its colour; edges of an edge-rooted tree carry their
    /// 1-based labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tree {\n");
        let edge = match self.rooting {
            Rooting::Edge => self.edge_labels(),
            Rooting::Planted(_) => vec![None; self.num_vertices()],
        };
        if let Rooting::Planted(c) = self.rooting {
            let style = match c {
                VertexClass::White => "shape=circle, style=dashed",
                VertexClass::Black => "shape=box, style=dashed",
            };
            let _ = writeln!(s, "  planted [{style}, label=\"\"];");
        }
        for v in 0..self.num_vertices() {
            let text = self.label[v].map(|c| c.to_string()).unwrap_or_default();
            let style = match self.class[v] {
                VertexClass::White => "shape=circle",
                VertexClass::Black => "shape=box, style=filled, fillcolor=black, fontcolor=white",
            };
            let _ = writeln!(s, "  v{v} [{style}, label=\"{text}\"];");
        }
        if matches!(self.rooting, Rooting::Planted(_)) {
            let _ = writeln!(s, "  planted -- v0;");
        }
        for v in 1..self.num_vertices() {
            let p = self.parent[v].expect("non-root vertex has a parent");
            match edge[v] {
                Some(e) if v == self.children[0][0] => {
                    let _ = writeln!(s, "  v{p} -- v{v} [label=\"{}\", penwidth=2];", e + 1);
                }
                Some(e) => {
                    let _ = writeln!(s, "  v{p} -- v{v} [label=\"{}\"];", e + 1);
                }
                None => {
                    let _ = writeln!(s, "  v{p} -- v{v};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .label
            .iter()
            .map(|l| l.map_or("-".into(), |c| c.to_string()))
            .collect();
        write!(
            f,
            "PlaneTree({:?}, {}, root {:?}, labels [{}])",
            self.rooting,
            self.dyck_word(),
            self.class[0],
            labels.join(" ")
        )
    }
}

/// `(α, β)` with `αβ = (1 2 .. k)` read from an edge-rooted tree: `α` from
/// the rotations at white vertices, `β` from those at black vertices.
pub fn tree_to_factorization(t: &PlaneTree) -> Result<(Permutation, Permutation)> {
    if t.rooting != Rooting::Edge {
        return Err(Error::MalformedTree("expected an edge-rooted tree".into()));
    }
    for v in 1..t.num_vertices() {
        if t.class[t.parent[v].unwrap()] == t.class[v] {
            return Err(Error::MalformedTree(format!(
                "vertex {v} matches its parent's colour"
            )));
        }
    }
    let edge = t.edge_labels();
    let k = t.num_edges();
    let cycles_of = |class| -> Vec<Vec<usize>> {
        t.vertices_of(class)
            .into_iter()
            .map(|v| t.rotation(v, &edge))
            .collect()
    };
    let alpha = Permutation::from_cycles(k, &cycles_of(VertexClass::White))?;
    let beta = Permutation::from_cycles(k, &cycles_of(VertexClass::Black))?;
    Ok((alpha, beta))
}

/// Inverse of [`tree_to_factorization`].
pub fn factorization_to_tree(a: &Permutation, b: &Permutation) -> Result<PlaneTree> {
    let k = a.degree();
    if k == 0 {
        return Err(Error::NotTopFactorization(
            "the empty product has no tree".into(),
        ));
    }
    let ab = compose(a, b)?;
    if ab != Permutation::full_cycle(k) {
        return Err(Error::NotTopFactorization(format!(
            "{a} · {b} = {ab} is not the full cycle"
        )));
    }
    if a.kappa() + b.kappa() != k + 1 {
        return Err(Error::NotTopFactorization(format!(
            "κ({a}) + κ({b}) = {} instead of {}",
            a.kappa() + b.kappa(),
            k + 1
        )));
    }
    let (ai, na) = a.cycle_index();
    let (bi, nb) = b.cycle_index();
    let mut seen_white = vec![false; na];
    let mut seen_black = vec![false; nb];
    let mut class = vec![VertexClass::White];
    let mut parent = vec![None];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    seen_white[ai[0]] = true;

    // Edges out of a vertex entered through edge `e`, in rotation order.
    let orbit = |sigma: &Permutation, e: usize, skip_first: bool| -> Vec<usize> {
        let mut out = vec![e];
        let mut x = sigma.apply(e);
        while x != e {
            out.push(x);
            x = sigma.apply(x);
        }
        if skip_first {
            out.remove(0);
        }
        out
    };
    let mut stack = vec![(0usize, orbit(a, 0, false), 0usize)];
    while let Some((v, edges, i)) = stack.pop() {
        let Some(&e) = edges.get(i) else { continue };
        stack.push((v, edges.clone(), i + 1));
        let c = class.len();
        let (child_class, sigma, seen, id) = match class[v] {
            VertexClass::White => (VertexClass::Black, b, &mut seen_black, bi[e]),
            VertexClass::Black => (VertexClass::White, a, &mut seen_white, ai[e]),
        };
        if seen[id] {
            return Err(Error::NotTopFactorization(
                "cycle graph is not a tree".into(),
            ));
        }
        seen[id] = true;
        class.push(child_class);
        parent.push(Some(v));
        children.push(Vec::new());
        children[v].push(c);
        stack.push((c, orbit(sigma, e, true), 0));
    }
    if class.len() != k + 1 {
        return Err(Error::NotTopFactorization(
            "cycle graph is disconnected".into(),
        ));
    }
    Ok(PlaneTree {
        rooting: Rooting::Edge,
        label: vec![None; class.len()],
        class,
        parent,
        children,
    })
}

/// The coloured tree of a coloured top factorization `(α, ψ)` of the full
/// cycle. It is the tree of `α^{-1} · (αω_k) = ω_k` with each white vertex
/// coloured by `ψ`, so that black colours are those of `(α, ψ) ∘ ω_k`.
pub fn coloured_factorization_to_tree(ap: &ColouredPermutation) -> Result<PlaneTree> {
    let alpha = ap.perm();
    let k = alpha.degree();
    let product = compose(alpha, &Permutation::full_cycle(k))?;
    let t = factorization_to_tree(&alpha.inverse(), &product)?;
    let edge = t.edge_labels();
    let point_colour = ap.point_colours();
    let white_labels: Vec<usize> = t
        .vertices_of(VertexClass::White)
        .into_iter()
        .map(|v| point_colour[t.rotation(v, &edge)[0]])
        .collect();
    t.propagate_colours(&white_labels)
}

/// Inverse of [`coloured_factorization_to_tree`]: returns `(α, ψ)` and the
/// coloured product `(α, ψ) ∘ ω_k` read from the black vertices.
pub fn tree_to_coloured_factorization(
    t: &PlaneTree,
    m: usize,
) -> Result<(ColouredPermutation, ColouredPermutation)> {
    t.validate(None, m)?;
    let (a, b) = tree_to_factorization(t)?;
    let edge = t.edge_labels();
    let k = t.num_edges();
    let mut white = vec![0; k];
    let mut black = vec![0; k];
    for v in 0..t.num_vertices() {
        let target = match t.class[v] {
            VertexClass::White => &mut white,
            VertexClass::Black => &mut black,
        };
        for x in t.rotation(v, &edge) {
            target[x] = t.label[v].expect("validated");
        }
    }
    let alpha = ColouredPermutation::from_point_colours(a.inverse(), &white, m)?;
    let product = ColouredPermutation::from_point_colours(b, &black, m)?;
    Ok((alpha, product))
}

/// Dyck words of plane trees with `vertices` vertices, in lexicographic
/// order with `(` before `)`.
pub fn plane_tree_words(vertices: usize) -> Vec<String> {
    fn go(open: usize, close: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
        if open == n && close == n {
            out.push(cur.clone());
            return;
        }
        if open < n {
            cur.push('(');
            go(open + 1, close, n, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(')');
            go(open, close + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vertices > 0 {
        go(0, 0, vertices - 1, &mut String::new(), &mut out);
    }
    out
}

fn check_colours(m: usize) -> Result<()> {
    if m == 0 || 2 * m > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "number of colours must be in 1..={}, got {m}",
            MAX_VARS / 2
        )));
    }
    Ok(())
}

/// Calls `f` with every admissible labelling of `shape`: the white labels
/// run over an odometer in preorder (the root fixed to `root_label` when
/// given), black labels follow the max rule, and a black root takes
/// `root_label`.
fn for_each_colouring(
    shape: &PlaneTree,
    m: usize,
    root_label: Option<usize>,
    mut f: impl FnMut(&[usize]),
) {
    let n = shape.num_vertices();
    let free: Vec<usize> = shape
        .vertices_of(VertexClass::White)
        .into_iter()
        .filter(|&v| !(v == 0 && root_label.is_some()))
        .collect();
    let blacks = shape.vertices_of(VertexClass::Black);
    let mut labels = vec![1usize; n];
    if let Some(c) = root_label {
        labels[0] = c;
    }
    loop {
        for &v in blacks.iter().rev() {
            if v == 0 {
                continue;
            }
            labels[v] = shape.neighbours(v).map(|u| labels[u]).max().unwrap();
        }
        f(&labels);
        let Some(pos) = free.iter().rposition(|&v| labels[v] < m) else {
            return;
        };
        labels[free[pos]] += 1;
        for &v in &free[pos + 1..] {
            labels[v] = 1;
        }
    }
}

fn labelled(shape: &PlaneTree, labels: &[usize]) -> PlaneTree {
    let mut t = shape.clone();
    t.label = labels.iter().map(|&c| Some(c)).collect();
    t
}

/// All coloured edge-rooted trees with `k` edges: shapes in Dyck order,
/// then white colourings in odometer order.
pub fn enumerate_trees(k: usize, m: usize) -> Result<Vec<PlaneTree>> {
    check_colours(m)?;
    let mut out = Vec::new();
    if k == 0 {
        return Ok(out);
    }
    for word in plane_tree_words(k + 1) {
        let shape = PlaneTree::from_dyck(&word, VertexClass::White, Rooting::Edge)?;
        for_each_colouring(&shape, m, None, |l| out.push(labelled(&shape, l)));
    }
    Ok(out)
}

/// All trees of a planted class with the given number of non-planted
/// vertices.
pub fn enumerate_planted(class: PlantedClass, m: usize, vertices: usize) -> Result<Vec<PlaneTree>> {
    check_colours(m)?;
    let i = class.colour();
    if !(1..=m).contains(&i) {
        return Err(Error::InvalidArgument(format!(
            "colour {i} outside 1..={m}"
        )));
    }
    let root = class.root_class();
    let mut out = Vec::new();
    for word in plane_tree_words(vertices) {
        let shape = PlaneTree::from_dyck(&word, root, Rooting::Planted(root.other()))?;
        for_each_colouring(&shape, m, Some(i), |l| {
            let t = labelled(&shape, l);
            if t.validate(Some(class), m).is_ok() {
                out.push(t);
            }
        });
    }
    Ok(out)
}

fn weight_poly<C: Scalar>(ctx: &Context, t: &PlaneTree) -> Result<MultiPoly<C>> {
    let (p, q) = t.weight(ctx)?;
    Ok(MultiPoly::monomial(ctx, p * q, C::one()))
}

/// `T(x) = Σ_T p^{white colours} q^{black colours} x^{#vertices}` over
/// coloured edge-rooted trees, by enumeration, to order `order`.
pub fn t_series_enumerated<C: Scalar>(m: usize, order: usize) -> Result<PowerSeries<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let mut coeffs = vec![MultiPoly::zero(&ctx); order + 1];
    for (v, coeff) in coeffs.iter_mut().enumerate().skip(2) {
        let mut terms = Vec::new();
        for word in plane_tree_words(v) {
            let shape = PlaneTree::from_dyck(&word, VertexClass::White, Rooting::Edge)?;
            for_each_colouring(&shape, m, None, |l| {
                terms.push((labels_monomial(&ctx, &shape, l), C::one()));
            });
        }
        *coeff = MultiPoly::from_terms(&ctx, terms);
    }
    PowerSeries::from_coeffs(&ctx, coeffs)
}

fn labels_monomial(ctx: &Context, shape: &PlaneTree, labels: &[usize]) -> Monomial {
    let mut e = vec![0u32; ctx.len()];
    for (v, &c) in labels.iter().enumerate() {
        match shape.class[v] {
            VertexClass::White => e[ctx.p(c)] += 1,
            VertexClass::Black => e[ctx.q(c)] += 1,
        }
    }
    Monomial::from_exponents(&e)
}

/// Generating series of a planted class by enumeration, to order `order`.
pub fn planted_series_enumerated<C: Scalar>(
    class: PlantedClass,
    m: usize,
    order: usize,
) -> Result<PowerSeries<C>> {
    let ctx = Context::pq(m);
    let mut coeffs = vec![MultiPoly::zero(&ctx); order + 1];
    for (v, coeff) in coeffs.iter_mut().enumerate().skip(1) {
        let mut acc = MultiPoly::zero(&ctx);
        for t in enumerate_planted(class, m, v)? {
            acc = &acc + &weight_poly(&ctx, &t)?;
        }
        *coeff = acc;
    }
    PowerSeries::from_coeffs(&ctx, coeffs)
}

/// Series `B_i`, `W_i`, `Ŵ_i` (index `i - 1`).
#[derive(Clone)]
pub struct PlantedSeries<C> {
    pub b: Vec<PowerSeries<C>>,
    pub w: Vec<PowerSeries<C>>,
    pub w_hat: Vec<PowerSeries<C>>,
}

impl<C: Scalar> fmt::Debug for PlantedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlantedSeries")
            .field("b", &self.b)
            .field("w", &self.w)
            .field("w_hat", &self.w_hat)
            .finish()
    }
}

impl<C: Scalar> PlantedSeries<C> {
    /// `I = B_1 + .. + B_m`.
    pub fn total(&self) -> PowerSeries<C> {
        self.partial(self.b.len())
    }

    /// `B_1 + .. + B_i`.
    pub fn partial(&self, i: usize) -> PowerSeries<C> {
        let ctx = self.b[0].ctx();
        self.b[..i]
            .iter()
            .fold(PowerSeries::zero(ctx, self.b[0].order()), |acc, s| &acc + s)
    }
}

/// One pass of the planted-tree recursions from the given `B`.
fn planted_step<C: Scalar>(b: &[PowerSeries<C>], m: usize) -> Result<PlantedSeries<C>> {
    let ctx = b[0].ctx().clone();
    let n = b[0].order();
    let one = PowerSeries::one(&ctx, n);
    let qx = |i: usize| PowerSeries::monomial(MultiPoly::var(&ctx, ctx.q(i)), 1, n);
    let px = |i: usize| PowerSeries::monomial(MultiPoly::var(&ctx, ctx.p(i)), 1, n);
    let mut partial = vec![PowerSeries::zero(&ctx, n)];
    for s in b {
        let next = partial.last().unwrap() + s;
        partial.push(next);
    }
    let mut w = Vec::with_capacity(m);
    let mut w_hat = Vec::with_capacity(m);
    for i in 1..=m {
        let before = &partial[i - 1];
        let hat = (&qx(i) * before).try_div(&(&one - before))?;
        let proper = qx(i).try_div(&(&one - &partial[i]))?;
        w.push(&proper - &hat);
        w_hat.push(hat);
    }
    let mut new_b = Vec::with_capacity(m);
    for i in 1..=m {
        let mut denom = &(&one - &w[i - 1]) - &w_hat[i - 1];
        for j in i + 1..=m {
            denom = &denom - &(&w[j - 1] - &qx(j));
        }
        new_b.push(px(i).try_div(&denom)?);
    }
    Ok(PlantedSeries { b: new_b, w, w_hat })
}

/// Fixed point of the recursions for `B_i`, `W_i` and `Ŵ_i`, iterated from
/// `B_i = p_i x`. Each pass fixes one further power of `x`.
pub fn planted_series<C: Scalar>(m: usize, order: usize) -> Result<PlantedSeries<C>> {
    check_colours(m)?;
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let ctx = Context::pq(m);
    let mut b: Vec<PowerSeries<C>> = (1..=m)
        .map(|i| PowerSeries::monomial(MultiPoly::var(&ctx, ctx.p(i)), 1, 1))
        .collect();
    for n in 2..=order {
        let extended: Vec<_> = b.iter().map(|s| s.extend_order(n)).collect();
        b = planted_step(&extended, m)?.b;
    }
    let out = planted_step(&b, m)?;
    if out.b != b {
        return Err(Error::Inconsistency(
            "planted-tree recursion did not reach a fixed point".into(),
        ));
    }
    Ok(out)
}

/// `p_{i+1} + .. + p_m` as the series of that times `x`, for `i = 0..=m`.
fn tail_x<C: Scalar>(ctx: &Context, m: usize, n: usize) -> Vec<PowerSeries<C>> {
    let mut tails = vec![PowerSeries::zero(ctx, n); m + 1];
    for i in (0..m).rev() {
        tails[i] = &tails[i + 1] + &PowerSeries::monomial(MultiPoly::var(ctx, ctx.p(i + 1)), 1, n);
    }
    tails
}

/// `B_i (I - 1 - (p_{i+1}+..+p_m)x + q_i x) - p_i x (B_1+..+B_i - 1)`.
pub fn verify_lemma1<C: Scalar>(i: usize, m: usize, order: usize) -> Result<PowerSeries<C>> {
    if !(1..=m).contains(&i) {
        return Err(Error::InvalidArgument(format!("i = {i} outside 1..={m}")));
    }
    let s = planted_series::<C>(m, order)?;
    lemma1_residual(&s, i, m)
}

fn lemma1_residual<C: Scalar>(s: &PlantedSeries<C>, i: usize, m: usize) -> Result<PowerSeries<C>> {
    let ctx = s.b[0].ctx().clone();
    let n = s.b[0].order();
    let one = PowerSeries::one(&ctx, n);
    let tails = tail_x::<C>(&ctx, m, n);
    let qx = PowerSeries::monomial(MultiPoly::var(&ctx, ctx.q(i)), 1, n);
    let px = PowerSeries::monomial(MultiPoly::var(&ctx, ctx.p(i)), 1, n);
    let i_minus_one = &s.total() - &one;
    let lhs = &s.b[i - 1] * &(&(&i_minus_one - &tails[i]) + &qx);
    Ok(&lhs - &(&px * &(&s.partial(i) - &one)))
}

/// `(B_1+..+B_i - 1) - (I-1) ∏_{j>i} (I-1-(p_j+..+p_m)x+q_j x)/(I-1-(p_{j+1}+..+p_m)x+q_j x)`.
pub fn verify_lemma2<C: Scalar>(i: usize, m: usize, order: usize) -> Result<PowerSeries<C>> {
    if i > m {
        return Err(Error::InvalidArgument(format!("i = {i} outside 0..={m}")));
    }
    let s = planted_series::<C>(m, order)?;
    lemma2_residual(&s, i, m)
}

fn lemma2_residual<C: Scalar>(s: &PlantedSeries<C>, i: usize, m: usize) -> Result<PowerSeries<C>> {
    let ctx = s.b[0].ctx().clone();
    let n = s.b[0].order();
    let one = PowerSeries::one(&ctx, n);
    let tails = tail_x::<C>(&ctx, m, n);
    let i_minus_one = &s.total() - &one;
    let mut rhs = i_minus_one.clone();
    for j in i + 1..=m {
        let qx = PowerSeries::monomial(MultiPoly::var(&ctx, ctx.q(j)), 1, n);
        let num = &(&i_minus_one - &tails[j - 1]) + &qx;
        let den = &(&i_minus_one - &tails[j]) + &qx;
        rhs = &rhs * &num.try_div(&den)?;
    }
    Ok(&(&s.partial(i) - &one) - &rhs)
}

/// Residuals of both lemmas for every admissible `i`, from one computation
/// of the planted series: `(verify_lemma1 for i = 1..=m, verify_lemma2 for i = 0..=m)`.
pub fn lemma_residuals<C: Scalar>(
    m: usize,
    order: usize,
) -> Result<(Vec<PowerSeries<C>>, Vec<PowerSeries<C>>)> {
    let s = planted_series::<C>(m, order)?;
    let l1 = (1..=m)
        .map(|i| lemma1_residual(&s, i, m))
        .collect::<Result<_>>()?;
    let l2 = (0..=m)
        .map(|i| lemma2_residual(&s, i, m))
        .collect::<Result<_>>()?;
    Ok((l1, l2))
}
