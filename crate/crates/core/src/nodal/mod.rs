//! Vector bundles on trees of projective lines: global sections through the
//! node-matching map, twists by the dualizing sheaf and by ideal sheaves of
//! points, global generation via minor gcds, and deformation ampleness.

mod univariate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{format_rational_short, q, Matrix, SparseVec, Q};
use univariate::{det, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NodalError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("component index {index} out of range (curve has {count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("point [0:0] is not a point of P1")]
    ZeroPoint,
    #[error("component {component} has two special points at {point}")]
    DuplicatePoint { component: usize, point: String },
    #[error("{0}")]
    Shape(String),
    #[error("gluing matrix at node {node} is singular")]
    SingularGluing { node: usize },
    #[error("point {point} on component {component} is a node")]
    PointIsNode { component: usize, point: String },
    #[error("bundle must have positive rank")]
    ZeroRank,
}

/// A point `[x:y]` of the projective line with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Result<Self, NodalError> {
        if x.is_zero() && y.is_zero() {
            return Err(NodalError::ZeroPoint);
        }
        Ok(Self { x, y })
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(q(x), q(y)).expect("nonzero point")
    }

    /// Projective equality.
    pub fn same_as(&self, o: &Point) -> bool {
        &self.x * &o.y == &o.x * &self.y
    }

    /// Default special points: `[0:1]`, `[1:0]`, `[1:1]`, `[1:2]`, ...
    pub fn default_sequence(i: usize) -> Point {
        match i {
            0 => Point::int(0, 1),
            1 => Point::int(1, 0),
            _ => Point::int(1, i as i64 - 1),
        }
    }

    /// Value at this point of the form `sum_t c_t x^(a-t) y^t`.
    fn eval_form(&self, a: i64, t: i64) -> Q {
        pow(&self.x, (a - t) as u32) * pow(&self.y, t as u32)
    }
}

fn pow(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}]",
            format_rational_short(&self.x),
            format_rational_short(&self.y)
        )
    }
}

/// A node joining `components.0` at `points.0` to `components.1` at `points.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub components: (usize, usize),
    pub points: (Point, Point),
}

/// A connected nodal curve of arithmetic genus 0: projective lines glued
/// along a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCurve {
    components: usize,
    nodes: Vec<Node>,
}

impl TreeCurve {
    pub fn new(components: usize, nodes: Vec<Node>) -> Result<Self, NodalError> {
        if components == 0 {
            return Err(NodalError::NotATree("no components".into()));
        }
        if nodes.len() + 1 != components {
            return Err(NodalError::NotATree(format!(
                "{components} components need {} nodes, got {}",
                components - 1,
                nodes.len()
            )));
        }
        let mut parent: Vec<usize> = (0..components).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, n) in nodes.iter().enumerate() {
            let (u, v) = n.components;
            for c in [u, v] {
                if c >= components {
                    return Err(NodalError::ComponentOutOfRange {
                        index: c,
                        count: components,
                    });
                }
            }
            if u == v {
                return Err(NodalError::NotATree(format!(
                    "node {i} joins component {u} to itself"
                )));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(NodalError::NotATree(format!("node {i} closes a cycle")));
            }
            parent[ru] = rv;
        }
        let curve = Self { components, nodes };
        for v in 0..components {
            let pts: Vec<&Point> = curve.special_points(v).map(|(_, p)| p).collect();
            for (i, p) in pts.iter().enumerate() {
                if pts[..i].iter().any(|o| o.same_as(p)) {
                    return Err(NodalError::DuplicatePoint {
                        component: v,
                        point: p.to_string(),
                    });
                }
            }
        }
        Ok(curve)
    }

    /// A tree with the given edges and default node points, assigned per
    /// component in edge order.
    pub fn from_edges(components: usize, edges: &[(usize, usize)]) -> Result<Self, NodalError> {
        let mut used = vec![0usize; components.max(1)];
        let mut nodes = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for c in [u, v] {
                if c >= components {
                    return Err(NodalError::ComponentOutOfRange {
                        index: c,
                        count: components,
                    });
                }
            }
            let pu = Point::default_sequence(used[u]);
            used[u] += 1;
            let pv = Point::default_sequence(used[v]);
            used[v] += 1;
            nodes.push(Node {
                components: (u, v),
                points: (pu, pv),
            });
        }
        Self::new(components, nodes)
    }

    pub fn single() -> Self {
        Self::from_edges(1, &[]).expect("one component is a tree")
    }

    /// Components `0 - 1 - ... - (m-1)`.
    pub fn chain(m: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        Self::from_edges(m, &edges).expect("a chain is a tree")
    }

    /// Every labeled tree on `m` components, via Pruefer sequences.
    pub fn all_trees(m: usize) -> Vec<TreeCurve> {
        if m <= 2 {
            return vec![Self::chain(m.max(1))];
        }
        let len = m - 2;
        let total = m.pow(len as u32);
        (0..total)
            .map(|mut code| {
                let seq: Vec<usize> = (0..len)
                    .map(|_| {
                        let x = code % m;
                        code /= m;
                        x
                    })
                    .collect();
                Self::from_edges(m, &pruefer_edges(m, &seq))
                    .expect("Pruefer decoding yields a tree")
            })
            .collect()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// `(node index, point)` for each node on component `v`.
    pub fn special_points(&self, v: usize) -> impl Iterator<Item = (usize, &Point)> + '_ {
        self.nodes.iter().enumerate().flat_map(move |(i, n)| {
            let mut out = Vec::new();
            if n.components.0 == v {
                out.push((i, &n.points.0));
            }
            if n.components.1 == v {
                out.push((i, &n.points.1));
            }
            out
        })
    }

    /// Number of nodes on component `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.special_points(v).count()
    }

    /// Whether the components in `set` span a connected subcurve.
    pub fn is_connected_subset(&self, set: &BTreeSet<usize>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for n in &self.nodes {
                let (a, b) = n.components;
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && set.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == set.len()
    }
}

fn pruefer_edges(m: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &x in seq {
        let leaf = (0..m).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// A vector bundle on a [`TreeCurve`]: a splitting type per component and an
/// invertible gluing matrix per node, plus optional vanishing conditions
/// modelling a twist by the ideal sheaf of smooth points.
///
/// The gluing matrix `g` of node `(u, v)` identifies fibers by
/// `s_v(q) = g * s_u(p)`, in the bases given by the splitting types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    rank: usize,
    splitting: Vec<Vec<i64>>,
    gluing: Vec<Vec<Vec<Q>>>,
    vanishing: Vec<(usize, Point)>,
}

impl BundleData {
    /// Validates shapes and invertibility. Splitting types are sorted
    /// ascending, with the gluing matrices permuted to match.
    pub fn new(
        curve: &TreeCurve,
        splitting: Vec<Vec<i64>>,
        gluing: Vec<Vec<Vec<Q>>>,
    ) -> Result<Self, NodalError> {
        let rank = splitting.first().map_or(0, Vec::len);
        if rank == 0 {
            return Err(NodalError::ZeroRank);
        }
        if splitting.len() != curve.components() {
            return Err(NodalError::Shape(format!(
                "{} splitting types for {} components",
                splitting.len(),
                curve.components()
            )));
        }
        if let Some((v, s)) = splitting.iter().enumerate().find(|(_, s)| s.len() != rank) {
            return Err(NodalError::Shape(format!(
                "component {v} has rank {} but component 0 has rank {rank}",
                s.len()
            )));
        }
        if gluing.len() != curve.nodes().len() {
            return Err(NodalError::Shape(format!(
                "{} gluing matrices for {} nodes",
                gluing.len(),
                curve.nodes().len()
            )));
        }
        for (i, g) in gluing.iter().enumerate() {
            if g.len() != rank || g.iter().any(|row| row.len() != rank) {
                return Err(NodalError::Shape(format!(
                    "gluing matrix at node {i} is not {rank}x{rank}"
                )));
            }
            if Matrix::from_dense(rank, g).rank() != rank {
                return Err(NodalError::SingularGluing { node: i });
            }
        }
        let mut b = Self {
            rank,
            splitting,
            gluing,
            vanishing: Vec::new(),
        };
        b.sort_splitting(curve);
        Ok(b)
    }

    /// Identity gluing at every node.
    pub fn with_identity_gluing(
        curve: &TreeCurve,
        splitting: Vec<Vec<i64>>,
    ) -> Result<Self, NodalError> {
        let rank = splitting.first().map_or(0, Vec::len);
        let id: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        Self::new(curve, splitting, vec![id; curve.nodes().len()])
    }

    /// A line bundle with the given degree on each component.
    pub fn line_bundle(curve: &TreeCurve, degrees: &[i64]) -> Result<Self, NodalError> {
        Self::with_identity_gluing(curve, degrees.iter().map(|&a| vec![a]).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn splitting(&self) -> &[Vec<i64>] {
        &self.splitting
    }

    pub fn gluing(&self) -> &[Vec<Vec<Q>>] {
        &self.gluing
    }

    /// Points where sections are required to vanish.
    pub fn vanishing(&self) -> &[(usize, Point)] {
        &self.vanishing
    }

    fn sort_splitting(&mut self, curve: &TreeCurve) {
        let perms: Vec<Vec<usize>> = self
            .splitting
            .iter()
            .map(|s| {
                let mut idx: Vec<usize> = (0..s.len()).collect();
                idx.sort_by_key(|&i| s[i]);
                idx
            })
            .collect();
        for (v, p) in perms.iter().enumerate() {
            self.splitting[v] = p.iter().map(|&i| self.splitting[v][i]).collect();
        }
        for (g, n) in self.gluing.iter_mut().zip(curve.nodes()) {
            let (pu, pv) = (&perms[n.components.0], &perms[n.components.1]);
            *g = pv
                .iter()
                .map(|&i| pu.iter().map(|&j| g[i][j].clone()).collect())
                .collect();
        }
    }

    fn check_curve(&self, curve: &TreeCurve) -> Result<(), NodalError> {
        if self.splitting.len() != curve.components() || self.gluing.len() != curve.nodes().len() {
            return Err(NodalError::Shape(
                "bundle was built for a different curve".into(),
            ));
        }
        Ok(())
    }
}

/// A global section: coefficients per component, per summand, of the form
/// `sum_t c_t x^(a-t) y^t`.
pub type Section = Vec<Vec<Vec<Q>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub h0: usize,
    pub h1: usize,
    pub basis: Option<Vec<Section>>,
}

/// Column offsets of each `(component, summand)` block of coefficients.
fn layout(bundle: &BundleData) -> (Vec<Vec<Option<usize>>>, usize) {
    let mut offsets = Vec::new();
    let mut next = 0;
    for s in &bundle.splitting {
        let mut row = Vec::new();
        for &a in s {
            if a >= 0 {
                row.push(Some(next));
                next += a as usize + 1;
            } else {
                row.push(None);
            }
        }
        offsets.push(row);
    }
    (offsets, next)
}

/// Evaluation of summand `i` on component `v` at `p`, as a sparse row.
fn eval_entries(
    bundle: &BundleData,
    offsets: &[Vec<Option<usize>>],
    v: usize,
    i: usize,
    p: &Point,
    scale: &Q,
) -> Vec<(usize, Q)> {
    let a = bundle.splitting[v][i];
    match offsets[v][i] {
        None => Vec::new(),
        Some(off) => (0..=a)
            .map(|t| (off + t as usize, scale * p.eval_form(a, t)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

/// Sections as the kernel of the node-matching map (plus any vanishing
/// conditions). `h1` is the cokernel of that map plus the `H^1` of the
/// negative summands on each component.
pub fn global_sections(
    curve: &TreeCurve,
    bundle: &BundleData,
) -> Result<CohomologyResult, NodalError> {
    bundle.check_curve(curve)?;
    let (offsets, cols) = layout(bundle);
    let r = bundle.rank;
    let mut mat = Matrix::new(cols);
    for (node, g) in curve.nodes().iter().zip(&bundle.gluing) {
        let (u, v) = node.components;
        let (p, qpt) = (&node.points.0, &node.points.1);
        for i in 0..r {
            let mut row: BTreeMap<usize, Q> = BTreeMap::new();
            for (j, gij) in g[i].iter().enumerate() {
                if gij.is_zero() {
                    continue;
                }
                for (c, x) in eval_entries(bundle, &offsets, u, j, p, gij) {
                    *row.entry(c).or_insert_with(Q::zero) += x;
                }
            }
            for (c, x) in eval_entries(bundle, &offsets, v, i, qpt, &-Q::one()) {
                *row.entry(c).or_insert_with(Q::zero) += x;
            }
            mat.push_row(SparseVec::from_pairs(row));
        }
    }
    for (v, p) in &bundle.vanishing {
        for i in 0..r {
            mat.push_row(SparseVec::from_pairs(eval_entries(
                bundle,
                &offsets,
                *v,
                i,
                p,
                &Q::one(),
            )));
        }
    }
    let kernel = mat.kernel();
    let rank = cols - kernel.len();
    let negative: usize = bundle
        .splitting
        .iter()
        .flatten()
        .map(|&a| if a < -1 { (-a - 1) as usize } else { 0 })
        .sum();
    let h1 = mat.nrows() - rank + negative;
    let basis = kernel
        .iter()
        .map(|vec| {
            bundle
                .splitting
                .iter()
                .enumerate()
                .map(|(v, s)| {
                    s.iter()
                        .enumerate()
                        .map(|(i, &a)| match offsets[v][i] {
                            None => Vec::new(),
                            Some(off) => vec[off..off + a as usize + 1].to_vec(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(CohomologyResult {
        h0: kernel.len(),
        h1,
        basis: Some(basis),
    })
}

/// Twist by the dualizing sheaf: degrees on component `v` shift by
/// `(valence(v) - 2)`. On a tree the residue identifications only rescale
/// gluings, which does not change the isomorphism class, so gluings are kept.
pub fn twist_canonical(curve: &TreeCurve, bundle: &BundleData) -> BundleData {
    let mut out = bundle.clone();
    for (v, s) in out.splitting.iter_mut().enumerate() {
        let shift = curve.valence(v) as i64 - 2;
        s.iter_mut().for_each(|a| *a += shift);
    }
    out
}

/// Twist by the ideal sheaf of a smooth point `p` on `component`, modelled
/// as one extra rank-`r` vanishing condition.
pub fn twist_point(
    curve: &TreeCurve,
    bundle: &BundleData,
    component: usize,
    p: Point,
) -> Result<BundleData, NodalError> {
    if component >= curve.components() {
        return Err(NodalError::ComponentOutOfRange {
            index: component,
            count: curve.components(),
        });
    }
    if curve.special_points(component).any(|(_, n)| n.same_as(&p)) {
        return Err(NodalError::PointIsNode {
            component,
            point: p.to_string(),
        });
    }
    let mut out = bundle.clone();
    out.vanishing.push((component, p));
    Ok(out)
}

/// Exact global-generation test: on each component the evaluation matrix of
/// restricted global sections must have full rank at `[1:0]`, and its
/// maximal minors, dehomogenized at `y = 1`, must have constant gcd.
pub fn is_globally_generated(curve: &TreeCurve, bundle: &BundleData) -> Result<bool, NodalError> {
    let coh = global_sections(curve, bundle)?;
    let basis = coh.basis.unwrap_or_default();
    let r = bundle.rank;
    for v in 0..curve.components() {
        let s = &bundle.splitting[v];
        if s.iter().any(|&a| a < 0) {
            return Ok(false);
        }
        let width: usize = s.iter().map(|&a| a as usize + 1).sum();
        // Span of the restrictions of global sections to this component.
        let restricted = Matrix::from_rows(
            width,
            basis
                .iter()
                .map(|sec| {
                    SparseVec::from_dense(&sec[v].iter().flatten().cloned().collect::<Vec<_>>())
                })
                .collect(),
        )
        .rref()
        .rows;
        if restricted.len() < r {
            return Ok(false);
        }
        // Entry (i, col) as a polynomial in x: coefficient t sits at x^(a-t).
        let mut polys: Vec<Vec<UPoly>> = vec![Vec::new(); r];
        let mut at_infinity: Vec<Vec<Q>> = vec![Vec::new(); r];
        for row in &restricted {
            let dense = row.to_dense(width);
            let mut off = 0;
            for (i, &a) in s.iter().enumerate() {
                let a = a as usize;
                let coeffs: Vec<Q> = (0..=a).map(|e| dense[off + a - e].clone()).collect();
                at_infinity[i].push(dense[off].clone());
                polys[i].push(UPoly::new(coeffs));
                off += a + 1;
            }
        }
        let m = restricted.len();
        if Matrix::from_dense(m, &at_infinity).rank() < r {
            return Ok(false);
        }
        let mut g = UPoly::zero();
        let mut done = false;
        for_each_combination(m, r, &mut |cols| {
            let minor: Vec<Vec<UPoly>> = polys
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            g = g.gcd(&det(&minor));
            done = g.is_nonzero_constant();
            done
        });
        if !done {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `f` on each `k`-subset of `0..n` in lex order until it returns true.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Generated by global sections, and `H^1(E(K_B)) = 0`.
pub fn is_deformation_ample(curve: &TreeCurve, bundle: &BundleData) -> Result<bool, NodalError> {
    if bundle.rank == 0 {
        return Err(NodalError::ZeroRank);
    }
    if !is_globally_generated(curve, bundle)? {
        return Ok(false);
    }
    Ok(global_sections(curve, &twist_canonical(curve, bundle))?.h1 == 0)
}

/// The line-bundle criterion: every degree nonnegative and some degree positive.
pub fn line_bundle_da_criterion(degrees: &[i64]) -> bool {
    degrees.iter().all(|&a| a >= 0) && degrees.iter().any(|&a| a >= 1)
}

/// Restriction to the connected subcurve spanned by `set`; components are
/// renumbered in increasing order.
pub fn restrict(
    curve: &TreeCurve,
    bundle: &BundleData,
    set: &BTreeSet<usize>,
) -> Result<(TreeCurve, BundleData), NodalError> {
    if let Some(&bad) = set.iter().find(|&&v| v >= curve.components()) {
        return Err(NodalError::ComponentOutOfRange {
            index: bad,
            count: curve.components(),
        });
    }
    if !curve.is_connected_subset(set) {
        return Err(NodalError::NotATree("subcurve is not connected".into()));
    }
    let new_index: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nodes = Vec::new();
    let mut gluing = Vec::new();
    for (n, g) in curve.nodes().iter().zip(&bundle.gluing) {
        if let (Some(&a), Some(&b)) = (
            new_index.get(&n.components.0),
            new_index.get(&n.components.1),
        ) {
            nodes.push(Node {
                components: (a, b),
                points: n.points.clone(),
            });
            gluing.push(g.clone());
        }
    }
    let sub = TreeCurve::new(set.len(), nodes)?;
    let mut b = BundleData::new(
        &sub,
        set.iter().map(|&v| bundle.splitting[v].clone()).collect(),
        gluing,
    )?;
    b.vanishing = bundle
        .vanishing
        .iter()
        .filter_map(|(v, p)| new_index.get(v).map(|&nv| (nv, p.clone())))
        .collect();
    Ok((sub, b))
}

/// `E1 + E2` with block-diagonal gluings.
pub fn direct_sum(
    curve: &TreeCurve,
    e1: &BundleData,
    e2: &BundleData,
) -> Result<BundleData, NodalError> {
    let (r1, r2) = (e1.rank, e2.rank);
    let splitting = e1
        .splitting
        .iter()
        .zip(&e2.splitting)
        .map(|(a, b)| [a.clone(), b.clone()].concat())
        .collect();
    let gluing = e1
        .gluing
        .iter()
        .zip(&e2.gluing)
        .map(|(g1, g2)| {
            (0..r1 + r2)
                .map(|i| {
                    (0..r1 + r2)
                        .map(|j| match (i < r1, j < r1) {
                            (true, true) => g1[i][j].clone(),
                            (false, false) => g2[i - r1][j - r1].clone(),
                            _ => Q::zero(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BundleData::new(curve, splitting, gluing)
}

/// `E1 (x) E2` with Kronecker-product gluings.
pub fn tensor(
    curve: &TreeCurve,
    e1: &BundleData,
    e2: &BundleData,
) -> Result<BundleData, NodalError> {
    let (r1, r2) = (e1.rank, e2.rank);
    let splitting = e1
        .splitting
        .iter()
        .zip(&e2.splitting)
        .map(|(a, b)| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x + y))
                .collect()
        })
        .collect();
    let gluing = e1
        .gluing
        .iter()
        .zip(&e2.gluing)
        .map(|(g1, g2)| {
            (0..r1 * r2)
                .map(|i| {
                    (0..r1 * r2)
                        .map(|j| &g1[i / r2][j / r2] * &g2[i % r2][j % r2])
                        .collect()
                })
                .collect()
        })
        .collect();
    BundleData::new(curve, splitting, gluing)
}

/// `E^(x n)` for `n >= 1`.
pub fn tensor_power(curve: &TreeCurve, e: &BundleData, n: u32) -> Result<BundleData, NodalError> {
    assert!(n >= 1, "tensor power must be at least 1");
    let mut acc = e.clone();
    for _ in 1..n {
        acc = tensor(curve, &acc, e)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lb(curve: &TreeCurve, d: &[i64]) -> BundleData {
        BundleData::line_bundle(curve, d).unwrap()
    }

    #[test]
    fn single_line() {
        let c = TreeCurve::single();
        for a in 0..5 {
            let r = global_sections(&c, &lb(&c, &[a])).unwrap();
            assert_eq!((r.h0, r.h1), (a as usize + 1, 0));
        }
        let r = global_sections(&c, &lb(&c, &[-3])).unwrap();
        assert_eq!((r.h0, r.h1), (0, 2));
    }

    #[test]
    fn trivial_bundle_on_trees() {
        for m in 1..=4 {
            for c in TreeCurve::all_trees(m) {
                let r = global_sections(&c, &lb(&c, &vec![0; m])).unwrap();
                assert_eq!((r.h0, r.h1), (1, 0));
            }
        }
    }

    #[test]
    fn minus_one_on_chain() {
        let c = TreeCurve::chain(2);
        let g = vec![vec![vec![q(7)]]];
        let b = BundleData::new(&c, vec![vec![-1], vec![-1]], g).unwrap();
        let r = global_sections(&c, &b).unwrap();
        assert_eq!((r.h0, r.h1), (0, 1));
    }

    #[test]
    fn canonical_twist_shifts() {
        let c = TreeCurve::chain(3);
        let t = twist_canonical(&c, &lb(&c, &[1, 1, 1]));
        assert_eq!(t.splitting(), &[vec![0], vec![1], vec![0]]);
        let s = TreeCurve::single();
        assert_eq!(twist_canonical(&s, &lb(&s, &[3])).splitting(), &[vec![1]]);
    }

    #[test]
    fn point_twist() {
        let s = TreeCurve::single();
        let b = twist_point(&s, &lb(&s, &[1]), 0, Point::int(1, 1)).unwrap();
        let r = global_sections(&s, &b).unwrap();
        assert_eq!((r.h0, r.h1), (1, 0));
        let c = TreeCurve::chain(2);
        for v in 0..2 {
            let b = twist_point(&c, &lb(&c, &[0, 0]), v, Point::int(1, 3)).unwrap();
            let r = global_sections(&c, &b).unwrap();
            assert_eq!((r.h0, r.h1), (0, 0));
        }
        assert!(matches!(
            twist_point(&c, &lb(&c, &[0, 0]), 0, Point::int(0, 5)),
            Err(NodalError::PointIsNode { .. })
        ));
    }

    #[test]
    fn generation_examples() {
        let s = TreeCurve::single();
        assert!(is_globally_generated(&s, &lb(&s, &[0])).unwrap());
        assert!(!is_globally_generated(&s, &lb(&s, &[-1])).unwrap());
        let c = TreeCurve::chain(2);
        assert!(is_globally_generated(&c, &lb(&c, &[1, 0])).unwrap());
        assert!(!is_globally_generated(&c, &lb(&c, &[2, -1])).unwrap());
    }

    #[test]
    fn deformation_ample_examples() {
        let s = TreeCurve::single();
        assert!(is_deformation_ample(&s, &lb(&s, &[1])).unwrap());
        assert!(!is_deformation_ample(&s, &lb(&s, &[0])).unwrap());
        let c = TreeCurve::chain(2);
        assert!(is_deformation_ample(&c, &lb(&c, &[1, 0])).unwrap());
        assert!(!is_deformation_ample(&c, &lb(&c, &[0, 0])).unwrap());
        let e = BundleData::with_identity_gluing(&s, vec![vec![1, 1]]).unwrap();
        assert!(is_deformation_ample(&s, &e).unwrap());
    }

    #[test]
    fn criterion_examples() {
        assert!(line_bundle_da_criterion(&[1, 0, 0]));
        assert!(!line_bundle_da_criterion(&[0, 0, 0, 0]));
        assert!(!line_bundle_da_criterion(&[-1, 5]));
    }

    #[test]
    fn validation_errors() {
        let c = TreeCurve::chain(2);
        let singular = vec![vec![vec![q(1), q(2)], vec![q(2), q(4)]]];
        assert_eq!(
            BundleData::new(&c, vec![vec![0, 0], vec![0, 0]], singular),
            Err(NodalError::SingularGluing { node: 0 })
        );
        assert!(matches!(
            TreeCurve::from_edges(3, &[(0, 1), (1, 0)]),
            Err(NodalError::NotATree(_))
        ));
        assert!(matches!(
            TreeCurve::from_edges(3, &[(0, 1)]),
            Err(NodalError::NotATree(_))
        ));
    }

    #[test]
    fn tree_counts() {
        assert_eq!(TreeCurve::all_trees(3).len(), 3);
        assert_eq!(TreeCurve::all_trees(4).len(), 16);
    }

    #[test]
    fn sorting_permutes_gluing() {
        let c = TreeCurve::chain(2);
        let g = vec![vec![vec![q(1), q(2)], vec![q(0), q(1)]]];
        let b = BundleData::new(&c, vec![vec![3, 1], vec![0, 0]], g).unwrap();
        assert_eq!(b.splitting()[0], vec![1, 3]);
        assert_eq!(b.gluing()[0], vec![vec![q(2), q(1)], vec![q(1), q(0)]]);
    }

    #[test]
    fn tensor_and_sum() {
        let c = TreeCurve::chain(2);
        let l = lb(&c, &[1, 0]);
        let l3 = tensor_power(&c, &l, 3).unwrap();
        assert_eq!(l3.splitting(), &[vec![3], vec![0]]);
        let s = direct_sum(&c, &l, &l3).unwrap();
        assert_eq!(s.splitting(), &[vec![1, 3], vec![0, 0]]);
        assert!(is_deformation_ample(&c, &s).unwrap());
    }
}
