//! Pullback hypercubes on the subset lattice of {1..n}.
//!
//! Nodes and edges are indexed by bitmasks: bit i-1 set means index i is
//! in the subset. The bottom-up cube stores, for each subset A, the
//! subgroup polynomial of span{a_i : i in A} — each node is a copy of the
//! additive line coordinatized by that polynomial — and for each proper
//! containment A < B the unique monic additive `h` with `h . f_A = f_B`.
//! The top-down construction instead enumerates fiber-product points
//! `t = a_i wp(x_i)` over an evaluation field; its subset key A carries
//! the group of the subtuple indexed by the COMPLEMENT of A, so that the
//! full subset names the plain additive line.
//!
//! Verifications are all point-level and exact: pullback squares by
//! enumeration, geometric surjectivity by F_p-linear solves up a tower of
//! degree-p extension fields, the Baldwin-Saxl failure pattern on K-points,
//! and the witness-level equivalence of the two constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::addpoly::{by_one, decompose, AdditivePolynomial, FpSubspace};
use crate::asext::wp;
use crate::contrary::{verify_certificate, ContraryCertificate};
use crate::error::Error;
use crate::gf::{Embedding, Field, FieldElement, FieldOps, FiniteField};
use crate::MAX_FIELD_ORDER;

pub const MAX_BOTTOM_UP_N: usize = 4;
pub const MAX_TOP_DOWN_N: usize = 3;
pub const MAX_TOP_DOWN_FIELD: u64 = 256;
pub const MAX_PULLBACK_FIELD: u64 = 4096;

pub type Subset = u32;

/// Render a subset mask as sorted 1-based indices: `{}`, `{1,3}`.
pub fn subset_key(mask: Subset) -> String {
    let parts: Vec<String> = (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Parse `{1,3}` back to a mask.
pub fn parse_subset_key(key: &str) -> Result<Subset, Error> {
    let inner = key
        .strip_prefix('{')
        .and_then(|k| k.strip_suffix('}'))
        .ok_or_else(|| Error::Malformed(format!("bad subset key {key:?}")))?;
    let mut mask = 0u32;
    if inner.is_empty() {
        return Ok(0);
    }
    for part in inner.split(',') {
        let i: u32 = part
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad subset key {key:?}")))?;
        if i == 0 || i > 32 {
            return Err(Error::Malformed(format!("bad subset key {key:?}")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

// ---------------------------------------------------------------------------

/// The bottom-up hypercube: quotient polynomials as nodes, decomposition
/// factors as edges.
#[derive(Clone)]
pub struct BottomUpHypercube {
    field: Field,
    n: usize,
    a: Vec<FieldElement>,
    nodes: BTreeMap<Subset, AdditivePolynomial>,
    edges: BTreeMap<(Subset, Subset), AdditivePolynomial>,
}

impl fmt::Debug for BottomUpHypercube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BottomUpHypercube(n = {}, over {})",
            self.n,
            self.field.spec_string()
        )
    }
}

impl BottomUpHypercube {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn nodes(&self) -> &BTreeMap<Subset, AdditivePolynomial> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeMap<(Subset, Subset), AdditivePolynomial> {
        &self.edges
    }

    /// The connecting polynomial from A to B (A must be contained in B);
    /// the identity when A = B.
    pub fn edge(&self, from: Subset, to: Subset) -> Result<AdditivePolynomial, Error> {
        if from & !to != 0 {
            return Err(Error::InvalidInput(format!(
                "{} is not a subset of {}",
                subset_key(from),
                subset_key(to)
            )));
        }
        if from == to {
            return Ok(AdditivePolynomial::identity(&self.field));
        }
        self.edges
            .get(&(from, to))
            .cloned()
            .ok_or_else(|| Error::Internal("missing edge".into()))
    }

    /// Rebuild from parts (the codec path), rerunning all build-time
    /// assertions by reconstructing from the tuple and comparing.
    pub fn from_parts(
        a: Vec<FieldElement>,
        nodes: BTreeMap<Subset, AdditivePolynomial>,
        edges: BTreeMap<(Subset, Subset), AdditivePolynomial>,
    ) -> Result<Self, Error> {
        let rebuilt = build_bottom_up(&a)?;
        if rebuilt.nodes != nodes || rebuilt.edges != edges {
            return Err(Error::Malformed(
                "stored hypercube disagrees with its reconstruction from the tuple".into(),
            ));
        }
        Ok(rebuilt)
    }
}

fn span_of_subset(field: &Field, a: &[FieldElement], mask: Subset) -> Result<FpSubspace, Error> {
    let gens: Vec<FieldElement> = a
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, v)| v.clone())
        .collect();
    FpSubspace::from_generators_in(field, &gens)
}

fn submasks(m: Subset) -> Vec<Subset> {
    let mut out = vec![];
    let mut s = m;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & m;
    }
    out.sort();
    out
}

/// Build the bottom-up hypercube of an independent tuple. Asserted on the
/// way out: the empty node is x, every node is monic of degree p^|A|,
/// edges compose functorially, every covering edge is the twist produced
/// by the index-p factorization, and covering edges are surjective onto a
/// degree-p extension (the full tower check lives in
/// [`verify_geometric_surjectivity`]).
pub fn build_bottom_up(a: &[FieldElement]) -> Result<BottomUpHypercube, Error> {
    let n = a.len();
    if n == 0 || n > MAX_BOTTOM_UP_N {
        return Err(Error::BoundExceeded {
            what: "bottom-up dimension",
            limit: MAX_BOTTOM_UP_N as u64,
            requested: n as u64,
        });
    }
    let field = a[0].field().clone();
    for v in a {
        if **v.field() != *field {
            return Err(Error::FieldMismatch);
        }
    }
    let span_all = FpSubspace::from_generators_in(&field, a)?;
    if span_all.dim() != n {
        return Err(Error::DependentTuple);
    }

    let full: Subset = (1 << n) - 1;
    let mut spans = BTreeMap::new();
    let mut nodes = BTreeMap::new();
    for mask in 0..=full {
        let s = span_of_subset(&field, a, mask)?;
        let f = AdditivePolynomial::from_subgroup(&s)?;
        if !f.is_monic() || f.p_degree() != Some(mask.count_ones() as usize) {
            return Err(Error::Internal(
                "node polynomial has the wrong shape".into(),
            ));
        }
        spans.insert(mask, s);
        nodes.insert(mask, f);
    }
    if nodes[&0] != AdditivePolynomial::identity(&field) {
        return Err(Error::Internal("empty node is not the identity".into()));
    }

    let mut edges = BTreeMap::new();
    for to in 0..=full {
        for from in submasks(to) {
            if from == to {
                continue;
            }
            let d = decompose(&spans[&from], &spans[&to])?;
            if AdditivePolynomial::compose(&d.f_c, &nodes[&from])? != nodes[&to] {
                return Err(Error::falsified(
                    "decomposition of nested subgroup polynomials",
                    "edge does not carry f_A to f_B",
                ));
            }
            edges.insert((from, to), d.f_c);
        }
    }

    let cube = BottomUpHypercube {
        field: field.clone(),
        n,
        a: a.to_vec(),
        nodes,
        edges,
    };

    // Functoriality over every chain A <= B <= C.
    for c_mask in 0..=full {
        for b_mask in submasks(c_mask) {
            for a_mask in submasks(b_mask) {
                let ab = cube.edge(a_mask, b_mask)?;
                let bc = cube.edge(b_mask, c_mask)?;
                let ac = cube.edge(a_mask, c_mask)?;
                if AdditivePolynomial::compose(&bc, &ab)? != ac {
                    return Err(Error::falsified(
                        "functoriality of the quotient hypercube",
                        format!(
                            "{} -> {} -> {} does not compose",
                            subset_key(a_mask),
                            subset_key(b_mask),
                            subset_key(c_mask)
                        ),
                    ));
                }
            }
        }
    }

    // Covering edges are twists of the Artin-Schreier map.
    for (&(from, to), h) in &cube.edges {
        if to.count_ones() != from.count_ones() + 1 {
            continue;
        }
        let b = by_one(&spans[&from], &spans[&to])?;
        if *h != AdditivePolynomial::twist_of_line(&b)? {
            return Err(Error::falsified(
                "index-p twist factorization",
                "covering edge is not the expected twist",
            ));
        }
    }

    // Covering edges hit every target in a degree-p extension; run the
    // check whenever that extension is within the field-order bound.
    let p = field.characteristic() as u64;
    let ext_degree = field.degree() as u64 * p;
    if p.checked_pow(ext_degree as u32)
        .is_some_and(|o| o <= MAX_FIELD_ORDER)
    {
        let ext = FiniteField::new(p, ext_degree)?;
        let e = Embedding::new(&field, &ext)?;
        for (&(from, to), h) in &cube.edges {
            if to.count_ones() != from.count_ones() + 1 {
                continue;
            }
            let h_up = h.embed(&e)?;
            for c in field.elements() {
                let target = e.apply(&c);
                if solve_additive(&h_up, &target)?.is_none() {
                    return Err(Error::falsified(
                        "geometric surjectivity of covering edges",
                        format!("no preimage of {c} within a degree-p extension"),
                    ));
                }
            }
        }
    }

    Ok(cube)
}

/// Solve `f(x) = target` for an additive polynomial over its own field by
/// F_p-linear algebra; returns a witness if one exists.
fn solve_additive(
    f: &AdditivePolynomial,
    target: &FieldElement,
) -> Result<Option<FieldElement>, Error> {
    let field = f.field().clone();
    if **target.field() != *field {
        return Err(Error::FieldMismatch);
    }
    let k = field.degree();
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut digits = vec![0u8; k];
        digits[i] = 1;
        let basis_vec = field.element(digits)?;
        cols.push(f.eval(&basis_vec)?.coeffs().to_vec());
    }
    match crate::linalg::solve(field.characteristic(), &cols, target.coeffs()) {
        None => Ok(None),
        Some(x) => {
            let witness = field.element(x)?;
            debug_assert_eq!(f.eval(&witness)?, *target);
            Ok(Some(witness))
        }
    }
}

// ---------------------------------------------------------------------------

/// Whether the entrywise inverses of the tuple are F_p-independent.
pub fn hempel_condition(a: &[FieldElement]) -> Result<bool, Error> {
    if a.is_empty() {
        return Err(Error::InvalidInput("empty tuple".into()));
    }
    let field = a[0].field().clone();
    let mut inverses = Vec::with_capacity(a.len());
    for v in a {
        if **v.field() != *field {
            return Err(Error::FieldMismatch);
        }
        inverses.push(v.inv()?);
    }
    let span = FpSubspace::from_generators_in(&field, &inverses)?;
    Ok(span.dim() == a.len())
}

/// The fiber-product group of a tuple, as explicit points over an
/// evaluation field: tuples `(t, x_{i_1}, ..., x_{i_m})` with
/// `t = a_i wp(x_i)` for every kept index.
#[derive(Clone, Debug)]
pub struct TopDownGroup {
    /// 0-based indices into the original tuple, ascending.
    pub kept: Vec<usize>,
    /// Sorted point list; each point is `1 + kept.len()` coordinates.
    pub points: Vec<Vec<FieldElement>>,
}

fn fiber_points(
    a_embedded: &[FieldElement],
    eval: &Field,
) -> Result<Vec<Vec<FieldElement>>, Error> {
    if a_embedded.is_empty() {
        let mut out: Vec<Vec<FieldElement>> = eval.elements().map(|t| vec![t]).collect();
        out.sort();
        return Ok(out);
    }
    // For each coordinate, group x by the value a_i * wp(x).
    let mut by_value: Vec<BTreeMap<FieldElement, Vec<FieldElement>>> = Vec::new();
    for ai in a_embedded {
        let mut map: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
        for x in eval.elements() {
            map.entry(ai * &wp(&x)).or_default().push(x);
        }
        by_value.push(map);
    }
    let mut out = Vec::new();
    'values: for t in eval.elements() {
        let mut lists = Vec::with_capacity(a_embedded.len());
        for map in &by_value {
            match map.get(&t) {
                Some(xs) => lists.push(xs),
                None => continue 'values,
            }
        }
        // Cartesian product of the per-coordinate fibers over t.
        let mut stack: Vec<Vec<FieldElement>> = vec![vec![t.clone()]];
        for xs in lists {
            let mut next = Vec::with_capacity(stack.len() * xs.len());
            for partial in &stack {
                for x in xs {
                    let mut tuple = partial.clone();
                    tuple.push(x.clone());
                    next.push(tuple);
                }
            }
            stack = next;
        }
        out.extend(stack);
    }
    out.sort();
    Ok(out)
}

fn check_top_down_bounds(n: usize, eval: &Field) -> Result<(), Error> {
    if n > MAX_TOP_DOWN_N {
        return Err(Error::BoundExceeded {
            what: "top-down dimension",
            limit: MAX_TOP_DOWN_N as u64,
            requested: n as u64,
        });
    }
    if eval.order() > MAX_TOP_DOWN_FIELD {
        return Err(Error::BoundExceeded {
            what: "top-down evaluation field",
            limit: MAX_TOP_DOWN_FIELD,
            requested: eval.order(),
        });
    }
    Ok(())
}

/// The top-down hypercube over an evaluation field: subset A carries the
/// fiber-product group of the subtuple indexed by the complement of A, so
/// the full subset is the additive line itself.
pub fn build_top_down(
    a: &[FieldElement],
    eval: &Field,
) -> Result<BTreeMap<Subset, TopDownGroup>, Error> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty tuple".into()));
    }
    check_top_down_bounds(n, eval)?;
    let field = a[0].field().clone();
    let e = Embedding::new(&field, eval)?;
    for v in a {
        if **v.field() != *field {
            return Err(Error::FieldMismatch);
        }
        if v.is_zero() {
            return Err(Error::InvalidInput("tuple entries must be nonzero".into()));
        }
    }
    let embedded: Vec<FieldElement> = a.iter().map(|v| e.apply(v)).collect();
    let full: Subset = (1 << n) - 1;
    let mut out = BTreeMap::new();
    for mask in 0..=full {
        let kept: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        let sub: Vec<FieldElement> = kept.iter().map(|&i| embedded[i].clone()).collect();
        let points = fiber_points(&sub, eval)?;
        // Zero tuple always present; closure under addition is a
        // consequence of additivity of wp, checked cheaply on the zero.
        debug_assert!(points.iter().any(|pt| pt.iter().all(|c| c.is_zero())));
        out.insert(mask, TopDownGroup { kept, points });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCountReport {
    pub hempel: bool,
    pub count: u64,
    pub field_order: u64,
    /// Set when the Hempel condition holds; the count is then asserted to
    /// equal the field order.
    pub matches_affine_line: Option<bool>,
}

/// Count the points of the full fiber-product group over an evaluation
/// field. Under the Hempel condition the group is a copy of the additive
/// line, so the count must equal the field order; that equality is a hard
/// assertion.
pub fn point_count_check(a: &[FieldElement], eval: &Field) -> Result<PointCountReport, Error> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty tuple".into()));
    }
    check_top_down_bounds(n, eval)?;
    let field = a[0].field().clone();
    let e = Embedding::new(&field, eval)?;
    let embedded: Vec<FieldElement> = a.iter().map(|v| e.apply(v)).collect();
    let count = fiber_points(&embedded, eval)?.len() as u64;
    let hempel = hempel_condition(a)?;
    let matches = if hempel {
        if count != eval.order() {
            return Err(Error::falsified(
                "fiber-product group is the additive line under the Hempel condition",
                format!("|G(E)| = {count} but |E| = {}", eval.order()),
            ));
        }
        Some(true)
    } else {
        None
    };
    Ok(PointCountReport {
        hempel,
        count,
        field_order: eval.order(),
        matches_affine_line: matches,
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub eval_field: String,
    /// Keyed by "(A,B)" over unordered subset pairs.
    pub squares: BTreeMap<String, SquareReport>,
    pub pass: bool,
}

/// Check every square of the cube at the level of E-points: the canonical
/// map w -> (h_{A∩B,A}(w), h_{A∩B,B}(w)) must biject onto the compatible
/// pairs {(u,v) : h_{A,A∪B}(u) = h_{B,A∪B}(v)}.
pub fn verify_pullback(cube: &BottomUpHypercube, eval: &Field) -> Result<PullbackReport, Error> {
    if eval.order() > MAX_PULLBACK_FIELD {
        return Err(Error::BoundExceeded {
            what: "pullback evaluation field",
            limit: MAX_PULLBACK_FIELD,
            requested: eval.order(),
        });
    }
    let e = Embedding::new(cube.field(), eval)?;
    let full: Subset = (1 << cube.n()) - 1;
    let mut squares = BTreeMap::new();
    let mut pass = true;
    for a_mask in 0..=full {
        for b_mask in a_mask..=full {
            let meet = a_mask & b_mask;
            let join = a_mask | b_mask;
            let h1 = cube.edge(meet, a_mask)?.embed(&e)?;
            let h2 = cube.edge(meet, b_mask)?.embed(&e)?;
            let ha = cube.edge(a_mask, join)?.embed(&e)?;
            let hb = cube.edge(b_mask, join)?.embed(&e)?;

            let mut image = BTreeSet::new();
            for w in eval.elements() {
                image.insert((h1.eval(&w)?, h2.eval(&w)?));
            }
            let injective = image.len() as u64 == eval.order();

            let mut fibers_a: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
            let mut fibers_b: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
            for u in eval.elements() {
                fibers_a.entry(ha.eval(&u)?).or_default().push(u);
            }
            for v in eval.elements() {
                fibers_b.entry(hb.eval(&v)?).or_default().push(v);
            }
            let mut surjective = true;
            'outer: for (z, us) in &fibers_a {
                let Some(vs) = fibers_b.get(z) else { continue };
                for u in us {
                    for v in vs {
                        if !image.contains(&(u.clone(), v.clone())) {
                            surjective = false;
                            break 'outer;
                        }
                    }
                }
            }

            pass &= injective && surjective;
            squares.insert(
                format!("({},{})", subset_key(a_mask), subset_key(b_mask)),
                SquareReport {
                    injective,
                    surjective,
                },
            );
        }
    }
    Ok(PullbackReport {
        eval_field: eval.spec_string(),
        squares,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeSurjectivity {
    /// Largest tower level (0 = the evaluation field itself) needed to
    /// find a preimage across all targets.
    pub max_tower_level: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub eval_field: String,
    pub tower: Vec<String>,
    /// Keyed by "A->B" over proper containments.
    pub edges: BTreeMap<String, EdgeSurjectivity>,
    pub pass: bool,
}

/// Geometric surjectivity of every edge, checked over a tower of degree-p
/// extension fields of the evaluation field. An edge of p-degree m has
/// all preimage degrees dividing p^m (the kernel is rational), so a
/// preimage of every target exists by level m; not finding one is a
/// falsification, while an unbuildable tower level is a resource error.
pub fn verify_geometric_surjectivity(
    cube: &BottomUpHypercube,
    eval: &Field,
) -> Result<SurjectivityReport, Error> {
    let p = eval.characteristic() as u64;
    let base_embedding = Embedding::new(cube.field(), eval)?;

    // Tower E = E_0 < E_1 < ... with [E_{j+1} : E_j] = p, as far as the
    // field-order bound allows.
    let mut tower_fields: Vec<Field> = vec![eval.clone()];
    let mut from_eval: Vec<Embedding> = vec![Embedding::identity(eval)];
    loop {
        let last = tower_fields.last().unwrap();
        let next_degree = last.degree() as u64 * p;
        if next_degree > 32
            || p.checked_pow(next_degree as u32)
                .is_none_or(|o| o > MAX_FIELD_ORDER)
        {
            break;
        }
        let next = FiniteField::new(p, next_degree)?;
        let step = Embedding::new(last, &next)?;
        let cumulative = Embedding::compose(&step, from_eval.last().unwrap())?;
        tower_fields.push(next);
        from_eval.push(cumulative);
    }

    let mut edges = BTreeMap::new();
    let pass = true;
    for (&(from, to), h) in cube.edges() {
        let m = (to.count_ones() - from.count_ones()) as usize;
        // The edge pushed into each tower level it may need.
        let mut lifted = Vec::new();
        for up in from_eval.iter().take(m + 1) {
            lifted.push(h.embed(&Embedding::compose(up, &base_embedding)?)?);
        }
        let mut max_level = 0usize;
        for c in eval.elements() {
            let mut found = false;
            for (level, h_up) in lifted.iter().enumerate() {
                let target = from_eval[level].apply(&c);
                if solve_additive(h_up, &target)?.is_some() {
                    max_level = max_level.max(level);
                    found = true;
                    break;
                }
            }
            if !found {
                if tower_fields.len() <= m {
                    return Err(Error::BoundExceeded {
                        what: "surjectivity tower height",
                        limit: tower_fields.len() as u64 - 1,
                        requested: m as u64,
                    });
                }
                return Err(Error::falsified(
                    "geometric surjectivity of hypercube edges",
                    format!(
                        "no preimage of {c} under {} -> {} within degree p^{m}",
                        subset_key(from),
                        subset_key(to)
                    ),
                ));
            }
        }
        edges.insert(
            format!("{}->{}", subset_key(from), subset_key(to)),
            EdgeSurjectivity {
                max_tower_level: max_level,
                pass: true,
            },
        );
    }
    Ok(SurjectivityReport {
        eval_field: eval.spec_string(),
        tower: tower_fields.iter().map(|f| f.spec_string()).collect(),
        edges,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BaldwinSaxlEntry {
    /// Is the covering edge from the empty node to {i} surjective on
    /// K-points?
    pub bottom_edge_surjective: bool,
    /// Does G_i contain the intersection of the other G_j?
    pub contains_intersection: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaldwinSaxlReport {
    pub field: String,
    /// Keyed by the 1-based index i.
    pub entries: BTreeMap<String, BaldwinSaxlEntry>,
    /// True when no G_i contains the intersection of the others — the
    /// Baldwin-Saxl failure pattern expected over a finite field.
    pub failure_for_all: bool,
}

/// Images G_i of the K-point maps into the top node, the containment
/// pattern, and the equivalence with surjectivity of the bottom covering
/// edges. The equivalence is asserted pointwise for each i; over a finite
/// field no bottom edge is surjective, so the expected report is
/// non-containment everywhere.
pub fn baldwin_saxl_failure(
    cube: &BottomUpHypercube,
    eval: &Field,
) -> Result<BaldwinSaxlReport, Error> {
    if eval.order() > MAX_PULLBACK_FIELD {
        return Err(Error::BoundExceeded {
            what: "Baldwin-Saxl evaluation field",
            limit: MAX_PULLBACK_FIELD,
            requested: eval.order(),
        });
    }
    let e = Embedding::new(cube.field(), eval)?;
    let n = cube.n();
    let full: Subset = (1 << n) - 1;

    let mut images: Vec<BTreeSet<FieldElement>> = Vec::with_capacity(n);
    let mut edge_surjective = Vec::with_capacity(n);
    for i in 0..n {
        let h = cube.edge(full & !(1 << i), full)?.embed(&e)?;
        let mut img = BTreeSet::new();
        for x in eval.elements() {
            img.insert(h.eval(&x)?);
        }
        images.push(img);

        let bottom = cube.edge(0, 1 << i)?.embed(&e)?;
        let mut bottom_img = BTreeSet::new();
        for x in eval.elements() {
            bottom_img.insert(bottom.eval(&x)?);
        }
        edge_surjective.push(bottom_img.len() as u64 == eval.order());
    }

    let everything: BTreeSet<FieldElement> = eval.elements().collect();
    let mut entries = BTreeMap::new();
    let mut failure_for_all = true;
    for i in 0..n {
        let mut inter = everything.clone();
        for (j, img) in images.iter().enumerate() {
            if j != i {
                inter = inter.intersection(img).cloned().collect();
            }
        }
        let contains = inter.is_subset(&images[i]);
        if contains != edge_surjective[i] {
            return Err(Error::falsified(
                "equivalence of bottom-edge surjectivity and top-image containment",
                format!("index {} disagrees", i + 1),
            ));
        }
        failure_for_all &= !contains;
        entries.insert(
            (i + 1).to_string(),
            BaldwinSaxlEntry {
                bottom_edge_surjective: edge_surjective[i],
                contains_intersection: contains,
            },
        );
    }
    Ok(BaldwinSaxlReport {
        field: eval.spec_string(),
        entries,
        failure_for_all,
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    /// Keyed by the 1-based slot index; true when the slot's witnesses form
    /// a point of the fiber-product group with the expected memberships.
    pub slots: BTreeMap<String, bool>,
    /// The reordering convention: the distinguished slot index is moved to
    /// the last coordinate.
    pub reorder: String,
    pub pass: bool,
}

/// Translate each slot of a verified certificate into a point of the
/// top-down group of the tuple `(b_1^p, ..., b_n^p)` with slot i moved
/// last: the point `(y_i, x_{i,j != i}, x_{i,i})` must satisfy every
/// defining equation `t = b_j^p wp(x_j)`, with all but the last coordinate
/// in K and the last outside K.
pub fn cross_check_witness(cert: &ContraryCertificate) -> Result<CrossCheckReport, Error> {
    if !verify_certificate(cert)? {
        return Err(Error::InvalidInput(
            "certificate does not verify; cross-check requires a valid certificate".into(),
        ));
    }
    let e = cert.ext().embedding();
    let n = cert.n();
    let mut slots = BTreeMap::new();
    let mut pass = true;
    for (i, slot) in cert.slots().iter().enumerate() {
        let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        order.push(i);
        let t = e.apply(&slot.y);
        let mut ok = true;
        for (pos, &j) in order.iter().enumerate() {
            let x_j = &slot.x[j];
            // Defining equation of the group.
            ok &= t == &e.apply(&cert.b()[j]) * &wp(x_j);
            // Membership pattern: last coordinate outside K, others in K.
            let in_k = e.contains(x_j)?;
            ok &= if pos + 1 == n { !in_k } else { in_k };
        }
        ok &= e.contains(&e.apply(&slot.y))?;
        pass &= ok;
        slots.insert((i + 1).to_string(), ok);
    }
    Ok(CrossCheckReport {
        slots,
        reorder: "slot i moved to the last coordinate".into(),
        pass,
    })
}
