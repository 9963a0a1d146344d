//! Resolution of plane curve singularities by quadratic transformations.
//!
//! A singular point is blown up repeatedly; the points on the exceptional
//! lines form a tree whose leaves are smooth points of the final strict
//! transform, one per branch. Conjugate infinitely near points are stored
//! once, with the size of their Frobenius orbit over the parent's field.

pub mod series;

use std::fmt::Write as _;

use crate::curve::{minimal_level, PlaneCurve, ProjPoint, SingularLocus, TangentCone};
use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Gf};
use crate::mpoly::MultiPoly;
use crate::par;
use series::Series;

pub const DEFAULT_DEPTH_CAP: usize = 32;

/// Which affine chart of the blowup contains an exceptional point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlowChart {
    /// `(x, y) = (u, u w)`, exceptional line `u = 0`.
    A,
    /// `(x, y) = (w v, v)`; only its origin is not already in chart A.
    B,
}

/// A point of the strict transform on the exceptional line.
#[derive(Clone, Debug)]
pub struct ExceptionalPoint {
    pub chart: BlowChart,
    /// Coordinate `w` on the exceptional line, in `field`.
    pub root: Elem,
    pub field: Gf,
    /// Embedding of the parent field into `field`.
    pub embedding: Embedding,
    /// Size of the Frobenius orbit over the parent field.
    pub orbit_size: u32,
    /// Strict transform moved to the origin.
    pub local: MultiPoly,
    pub multiplicity: u32,
}

fn strict_transform(f: &MultiPoly, m: u32, chart: BlowChart) -> MultiPoly {
    MultiPoly::from_terms(
        f.field(),
        2,
        f.terms().map(|(e, c)| {
            let [i, j, _] = e.0;
            let ex = match chart {
                BlowChart::A => [i + j - m, j, 0],
                BlowChart::B => [i, i + j - m, 0],
            };
            (ex, *c)
        }),
    )
}

/// One blowup of the origin, where `f` has multiplicity `m`.
pub fn blowup_once(f: &MultiPoly, m: u32) -> Result<Vec<ExceptionalPoint>> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch);
    }
    if !f.coeff([0, 0, 0]).is_zero() || f.is_zero() {
        return Err(Error::NotAtOrigin);
    }
    if f.lowest_order() != Some(m) {
        return Err(Error::Invalid(format!(
            "multiplicity at the origin is {:?}, not {m}",
            f.lowest_order()
        )));
    }
    let k = f.field();
    let low = f.lowest_form();
    let cone = low.specialize(0, Elem::ONE).to_upoly(1).unwrap();
    let fa = strict_transform(f, m, BlowChart::A);
    let mut out = Vec::new();
    for orbit in cone.root_orbits()? {
        let emb = k.embed(&orbit.field)?;
        let local = fa.map_field(&emb).translate(Elem::ZERO, orbit.rep)?;
        let multiplicity = local.lowest_order().unwrap();
        out.push(ExceptionalPoint {
            chart: BlowChart::A,
            root: orbit.rep,
            field: orbit.field.clone(),
            embedding: emb,
            orbit_size: orbit.degree,
            local,
            multiplicity,
        });
    }
    if (cone.degree().unwrap_or(0) as u32) < m {
        let local = strict_transform(f, m, BlowChart::B);
        let multiplicity = local.lowest_order().unwrap();
        out.push(ExceptionalPoint {
            chart: BlowChart::B,
            root: Elem::ZERO,
            field: k.clone(),
            embedding: k.embed(k)?,
            orbit_size: 1,
            local,
            multiplicity,
        });
    }
    Ok(out)
}

/// A node of the tree of infinitely near points.
#[derive(Clone, Debug)]
pub struct Node {
    pub multiplicity: u32,
    pub field: Gf,
    pub local: MultiPoly,
    pub children: Vec<Child>,
}

#[derive(Clone, Debug)]
pub struct Child {
    pub chart: BlowChart,
    pub root: Elem,
    pub orbit_size: u32,
    pub embedding: Embedding,
    pub node: Node,
}

impl Node {
    fn build(f: MultiPoly, depth: usize, cap: usize) -> Result<Node> {
        let m = f.lowest_order().ok_or(Error::ZeroPolynomial)?;
        let field = f.field().clone();
        if m <= 1 {
            return Ok(Node {
                multiplicity: m,
                field,
                local: f,
                children: Vec::new(),
            });
        }
        if depth >= cap {
            return Err(Error::ResolutionDepthExceeded(cap));
        }
        let mut children = Vec::new();
        for ep in blowup_once(&f, m)? {
            children.push(Child {
                chart: ep.chart,
                root: ep.root,
                orbit_size: ep.orbit_size,
                embedding: ep.embedding,
                node: Node::build(ep.local, depth + 1, cap)?,
            });
        }
        Ok(Node {
            multiplicity: m,
            field,
            local: f,
            children,
        })
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `Σ m(m-1)/2` over all infinitely near points, conjugates included.
    pub fn delta(&self) -> u64 {
        let m = self.multiplicity as u64;
        m * m.saturating_sub(1) / 2
            + self
                .children
                .iter()
                .map(|c| c.orbit_size as u64 * c.node.delta())
                .sum::<u64>()
    }

    /// Branches through this point, counted over the closure.
    pub fn branch_count(&self) -> u64 {
        if self.is_leaf() {
            return 1;
        }
        self.children
            .iter()
            .map(|c| c.orbit_size as u64 * c.node.branch_count())
            .sum()
    }

    /// Branches all of whose infinitely near points are defined over this
    /// node's field.
    pub fn fixed_branch_count(&self) -> u64 {
        if self.is_leaf() {
            return 1;
        }
        self.children
            .iter()
            .filter(|c| c.orbit_size == 1)
            .map(|c| c.node.fixed_branch_count())
            .sum()
    }

    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.node.depth())
            .max()
            .unwrap_or(0)
    }

    /// Leaves, each with the path of children leading to it.
    fn leaf_paths(&self) -> Vec<Vec<&Child>> {
        if self.is_leaf() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for c in &self.children {
            for mut path in c.node.leaf_paths() {
                path.insert(0, c);
                out.push(path);
            }
        }
        out
    }
}

/// Resolution tree of one point.
#[derive(Clone, Debug)]
pub struct InfinitelyNearTree {
    pub center: ProjPoint,
    pub root: Node,
}

impl InfinitelyNearTree {
    pub fn delta(&self) -> u64 {
        self.root.delta()
    }

    pub fn branch_count(&self) -> u64 {
        self.root.branch_count()
    }

    /// Branches defined over GF(q): the center is rational and every
    /// infinitely near point on the way is too.
    pub fn rational_branch_count(&self) -> u64 {
        if self.center.level() != 1 {
            return 0;
        }
        self.root.fixed_branch_count()
    }

    /// Graphviz rendering; node labels give multiplicity and field.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  label=\"{}\";", self.center);
        let mut next = 0usize;
        dot_node(&self.root, &mut next, &mut s);
        s.push_str("}\n");
        s
    }
}

fn dot_node(n: &Node, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let _ = writeln!(
        out,
        "  n{id} [label=\"m={} {:?}\"];",
        n.multiplicity, n.field
    );
    for c in &n.children {
        let cid = dot_node(&c.node, next, out);
        let w = c.node.field.format_elem(c.root, crate::gf::ElemStyle::Coefficients);
        let _ = writeln!(
            out,
            "  n{id} -> n{cid} [label=\"{:?} w={w} x{}\"];",
            c.chart, c.orbit_size
        );
    }
    id
}

/// A branch with a truncated parametrization in the affine chart of its
/// center: `x(t) = a + Σ param_x[i] t^i`, `y(t) = b + Σ param_y[i] t^i`.
#[derive(Clone, Debug)]
pub struct BranchInfo {
    pub center: ProjPoint,
    pub j1: u32,
    /// Larger of the two orders; `None` if the second coordinate vanishes to
    /// the truncation order.
    pub s: Option<u32>,
    pub linear: bool,
    pub tame: bool,
    pub rational: bool,
    /// Field of the coefficients.
    pub field: Gf,
    /// Its level over the curve's field.
    pub level: u32,
    pub param_x: Series,
    pub param_y: Series,
    pub truncation: usize,
    /// Local equation at the center, carried into `field`; the
    /// parametrization is a zero of it.
    pub local: MultiPoly,
}

/// Everything known about one Frobenius orbit of singular points.
#[derive(Clone, Debug)]
pub struct SingularPointReport {
    /// Orbit representative.
    pub point: ProjPoint,
    pub orbit_size: u32,
    pub multiplicity: u32,
    /// Delta invariant of one point of the orbit.
    pub delta: u64,
    pub ordinary: bool,
    pub tangents: TangentCone,
    /// Branches at the representative, conjugates listed separately.
    pub branches: Vec<BranchInfo>,
    pub tree: InfinitelyNearTree,
}

impl SingularPointReport {
    pub fn is_rational(&self) -> bool {
        self.orbit_size == 1
    }

    pub fn rational_branch_count(&self) -> u64 {
        self.tree.rational_branch_count()
    }
}

/// Resolution tree at a point of the curve.
pub fn resolve_point(c: &PlaneCurve, p: &ProjPoint) -> Result<InfinitelyNearTree> {
    resolve_point_with_cap(c, p, DEFAULT_DEPTH_CAP)
}

pub fn resolve_point_with_cap(
    c: &PlaneCurve,
    p: &ProjPoint,
    cap: usize,
) -> Result<InfinitelyNearTree> {
    let (f, _) = c.local_equation(p)?;
    Ok(InfinitelyNearTree {
        center: p.clone(),
        root: Node::build(f, 0, cap)?,
    })
}

/// Applies a chain of embeddings.
fn push_through(mut x: Elem, chain: &[&Embedding]) -> Elem {
    for e in chain {
        x = e.apply(x);
    }
    x
}

/// Branches at `p`, one per leaf and conjugate.
pub fn branches_at(c: &PlaneCurve, p: &ProjPoint) -> Result<Vec<BranchInfo>> {
    let tree = resolve_point(c, p)?;
    branches_of(c, &tree)
}

fn branches_of(c: &PlaneCurve, tree: &InfinitelyNearTree) -> Result<Vec<BranchInfo>> {
    let p = &tree.center;
    let base_deg = c.field().degree();
    let pfield = p.field();
    let d = c.degree() as usize;
    let mut out = Vec::new();
    for path in tree.root.leaf_paths() {
        let leaf = path.last().map(|ch| &ch.node).unwrap_or(&tree.root);
        let lf = leaf.field.clone();
        let chain: Vec<&Embedding> = path.iter().map(|ch| &ch.embedding).collect();
        let conj: u32 = path.iter().map(|ch| ch.orbit_size).product();
        let rational = p.level() == 1 && conj == 1;
        let mut n = 2 * d.max(1);
        let (x, y, j1, s) = loop {
            let (x, y) = compose_path(leaf, &path, n);
            let ox = series::order(&x);
            let oy = series::order(&y);
            let j1 = match (ox, oy) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => return Err(Error::Invalid("degenerate branch".into())),
            };
            let s = match (ox, oy) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
            let need = j1 + s.unwrap_or(j1) + 2;
            if need <= n {
                break (x, y, j1 as u32, s.map(|v| v as u32));
            }
            n = need;
        };
        let mut local = tree.root.local.clone();
        for e in &chain {
            local = local.map_field(e);
        }
        let pchar = c.field().characteristic();
        // conjugates of this branch over the center's field
        let step = pfield.degree();
        for i in 0..conj {
            let r = step * i;
            let fx: Series = x.iter().map(|&v| lf.frobenius(v, r)).collect();
            let fy: Series = y.iter().map(|&v| lf.frobenius(v, r)).collect();
            let coeffs: Vec<Elem> = fx.iter().chain(&fy).copied().collect();
            let level = minimal_level(&lf, base_deg, &coeffs).max(p.level());
            out.push(BranchInfo {
                center: p.clone(),
                j1,
                s,
                linear: j1 == 1,
                tame: j1 % pchar != 0,
                rational,
                field: lf.clone(),
                level,
                param_x: fx,
                param_y: fy,
                truncation: n,
                local: local.frobenius(r),
            });
        }
    }
    Ok(out)
}

/// Parametrizes the leaf and pulls the series back to the root's local
/// coordinates (centered at the origin), truncated at `t^n`.
fn compose_path(leaf: &Node, path: &[&Child], n: usize) -> (Series, Series) {
    let lf = &leaf.field;
    let g = &leaf.local;
    let t = series::monomial(n, 1);
    let (mut u, mut w) = if !g.coeff([0, 1, 0]).is_zero() {
        (t, series::implicit(g, n, false))
    } else {
        (series::implicit(g, n, true), t)
    };
    // walk from the leaf back to the root
    for (idx, ch) in path.iter().enumerate().rev() {
        let chain: Vec<&Embedding> = path[idx + 1..].iter().map(|c| &c.embedding).collect();
        let root = push_through(ch.root, &chain);
        match ch.chart {
            BlowChart::A => {
                let shifted = series::add(lf, &w, &series::constant(n, root));
                let v = series::mul(lf, &u, &shifted, n);
                w = v;
            }
            BlowChart::B => {
                let shifted = series::add(lf, &u, &series::constant(n, root));
                let x = series::mul(lf, &shifted, &w, n);
                u = x;
            }
        }
    }
    (u, w)
}

/// Resolves every orbit of the locus (in parallel) and assembles reports.
pub fn analyze_singularities(
    c: &PlaneCurve,
    locus: &SingularLocus,
) -> Result<Vec<SingularPointReport>> {
    let results = par::map(&locus.orbits, |o| -> Result<SingularPointReport> {
        let p = &o.rep;
        let tree = resolve_point(c, p)?;
        let branches = branches_of(c, &tree)?;
        let tangents = c.tangent_cone(p)?;
        Ok(SingularPointReport {
            point: p.clone(),
            orbit_size: o.size(),
            multiplicity: tree.root.multiplicity,
            delta: tree.delta(),
            ordinary: tangents.ordinary,
            tangents,
            branches,
            tree,
        })
    });
    results.into_iter().collect()
}

/// `(B_q, N1)` from the rational smooth count and the singular reports.
pub fn branch_totals(mqs: usize, reports: &[SingularPointReport]) -> (u64, u64) {
    let mut bq = mqs as u64;
    let mut n1 = mqs as u64;
    for r in reports.iter().filter(|r| r.is_rational()) {
        bq += r.tree.branch_count();
        n1 += r.rational_branch_count();
    }
    (bq, n1)
}

/// Number of branches centered at points of PG(2, q).
pub fn b_q(c: &PlaneCurve, k_max: u32) -> Result<u64> {
    let (_, mqs) = c.counts()?;
    let locus = c.singular_locus(k_max)?;
    let reports = analyze_singularities(c, &locus_rational(&locus))?;
    Ok(branch_totals(mqs, &reports).0)
}

/// Number of places of degree one.
pub fn n1(c: &PlaneCurve, k_max: u32) -> Result<u64> {
    let (_, mqs) = c.counts()?;
    let locus = c.singular_locus(k_max)?;
    let reports = analyze_singularities(c, &locus_rational(&locus))?;
    Ok(branch_totals(mqs, &reports).1)
}

fn locus_rational(l: &SingularLocus) -> SingularLocus {
    SingularLocus {
        orbits: l.rational().cloned().collect(),
        certified: l.certified,
        notes: l.notes.clone(),
    }
}

/// Checks that the parametrization annihilates the local equation to the
/// truncation order.
pub fn verify_branch(b: &BranchInfo) -> bool {
    let r = series::substitute(&b.local, &b.param_x, &b.param_y, b.truncation);
    r.iter().all(|c| c.is_zero())
}

/// Local analysis of an affine germ at the origin (for tests and the CLI).
pub fn resolve_germ(f: &MultiPoly) -> Result<Node> {
    if !f.coeff([0, 0, 0]).is_zero() {
        return Err(Error::NotAtOrigin);
    }
    Node::build(f.clone(), 0, DEFAULT_DEPTH_CAP)
}
