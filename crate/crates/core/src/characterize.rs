//! Structural predictions of `sdiam_k(G)` for `k` in `{n, n-1, n-2, n-3}`.
//!
//! Nothing here computes a Steiner distance; every predicate is phrased in
//! terms of connectivity, cut vertices and vertex cuts of induced subgraphs.
//! The `verify` module audits these predictions against the exact oracle.
//!
//! The `κ ∈ {1, 2}` conditions for `k = n - 3` are evaluated under a
//! [`Reading`]: the literal reading evaluates the quantifiers as printed,
//! the amended reading applies three individually switchable repairs:
//!
//! * `vacuous`: a cut whose removal leaves no piece of order at least 3 is
//!   not accepted on that basis alone; the graph must also be free of
//!   separating triples (see [`separating_triple`]).
//! * `symbol`: the "not a common vertex cut" bullet quantifies over all
//!   pairs `{z', z''}` of the piece, instead of asking for one pair `{y, z}`
//!   that is not a common cut.
//! * `symmetry`: the edge condition of the fourth κ=2 bullet counts edges to
//!   `y` (the vertex the bullet is about) instead of `x`.
//!
//! The fourth κ=2 bullets quantify over a cut vertex `z` that does not
//! appear in the edge condition; both readings take the components in that
//! condition to be the pieces of `C - z`, which is what makes `G[C ∪ {x}] - z`
//! connected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{cut_vertices, separating_pairs, vertex_connectivity};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Literal or repaired evaluation of the `κ ∈ {1, 2}` conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Reading {
    pub vacuous: bool,
    pub symbol: bool,
    pub symmetry: bool,
}

impl Reading {
    pub const LITERAL: Reading = Reading {
        vacuous: false,
        symbol: false,
        symmetry: false,
    };
    pub const AMENDED: Reading = Reading {
        vacuous: true,
        symbol: true,
        symmetry: true,
    };

    pub fn interpretation(self) -> Interpretation {
        if self == Reading::LITERAL {
            Interpretation::Literal
        } else {
            Interpretation::Amended
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Interpretation {
    Literal,
    Amended,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::Literal => "literal",
            Interpretation::Amended => "amended",
        })
    }
}

/// Stable rule identifiers reported in rule chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// `k = n`: every connected graph has `sdiam_n = n - 1`.
    Cor1Connected,
    /// `k = n - 1`, κ ≥ 2 gives `n - 2`.
    Cor2KappaGe2,
    /// `k = n - 1`, a cut vertex gives `n - 1`.
    Cor2CutVertex,
    /// `k = n - 2`, κ ≥ 3 gives `n - 3`.
    Thm2KappaGe3,
    /// `k = n - 2`, at least two cut vertices give `n - 1`.
    Thm2TwoCutVertices,
    /// `k = n - 2`, κ = 2 or exactly one cut vertex gives `n - 2`.
    Thm2Kappa2OrOneCut,
    /// `k = n - 3`, κ ≥ 4 gives `n - 4`.
    Prop2KappaGe4,
    /// `k = n - 3`, at least three cut vertices give `n - 1`.
    Lemma2Cuts,
    /// `k = n - 3`, κ = 3 gives `n - 3`.
    Prop3Kappa3,
    /// `k = n - 3`, κ = 2 and the 2-cut condition holds: `n - 3`.
    Prop3K2Branch,
    /// `k = n - 3`, κ = 1 and the single-cut-vertex condition holds: `n - 3`.
    Prop3K1Branch,
    /// The κ = 2 condition failed.
    Prop3K2Rejected,
    /// The κ = 1 condition failed.
    Prop3K1Rejected,
    /// A vacuous pass was refused because a separating triple exists.
    VacuousPassRejected,
    /// `k = n - 3`, no other branch applies: `n - 2`.
    EliminationDefault,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Cor1Connected => "COR1_CONNECTED",
            Rule::Cor2KappaGe2 => "COR2_KAPPA_GE_2",
            Rule::Cor2CutVertex => "COR2_CUT_VERTEX",
            Rule::Thm2KappaGe3 => "THM2_KAPPA_GE_3",
            Rule::Thm2TwoCutVertices => "THM2_TWO_CUT_VERTICES",
            Rule::Thm2Kappa2OrOneCut => "THM2_KAPPA2_OR_ONE_CUT",
            Rule::Prop2KappaGe4 => "PROP2_KAPPA_GE_4",
            Rule::Lemma2Cuts => "LEMMA2_CUTS",
            Rule::Prop3Kappa3 => "PROP3_KAPPA_3",
            Rule::Prop3K2Branch => "PROP3_K2_BRANCH",
            Rule::Prop3K1Branch => "PROP3_K1_BRANCH",
            Rule::Prop3K2Rejected => "PROP3_K2_REJECTED",
            Rule::Prop3K1Rejected => "PROP3_K1_REJECTED",
            Rule::VacuousPassRejected => "VACUOUS_PASS_REJECTED",
            Rule::EliminationDefault => "ELIMINATION_DEFAULT",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which member of the `{n, n-1, n-2, n-3}` family is being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KOffset {
    N,
    NMinus1,
    NMinus2,
    NMinus3,
}

impl KOffset {
    pub const ALL: [KOffset; 4] = [KOffset::N, KOffset::NMinus1, KOffset::NMinus2, KOffset::NMinus3];

    pub fn offset(self) -> usize {
        match self {
            KOffset::N => 0,
            KOffset::NMinus1 => 1,
            KOffset::NMinus2 => 2,
            KOffset::NMinus3 => 3,
        }
    }

    pub fn from_offset(d: usize) -> Option<Self> {
        KOffset::ALL.get(d).copied()
    }

    /// Smallest order for which the characterization applies.
    pub fn min_order(self) -> usize {
        match self {
            KOffset::N => 2,
            KOffset::NMinus1 => 3,
            KOffset::NMinus2 => 4,
            KOffset::NMinus3 => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KOffset::N => "n",
            KOffset::NMinus1 => "n-1",
            KOffset::NMinus2 => "n-2",
            KOffset::NMinus3 => "n-3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationOutcome {
    pub n: usize,
    pub k: usize,
    pub predicted: usize,
    pub rule_chain: Vec<Rule>,
    pub interpretation: Interpretation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<StructuralWitness>,
}

impl ClassificationOutcome {
    pub fn rule(&self) -> Rule {
        *self.rule_chain.last().expect("rule chain is never empty")
    }
}

/// Role of a vertex in a structural witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    U,
    V,
    X,
    Y,
    Z,
    ZPrime,
    ZDoublePrime,
}

/// Closed vocabulary of sub-condition labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    // κ = 1 condition
    OnlyOneCutVertex,
    NotOneCutVertex,
    ThreeConnectedWithU,
    CutPairWithU,
    NoUsableCutPair,
    KappaNotTwo,
    EdgeUv,
    AtLeastThreePieces,
    DoubledEdgeBundle,
    EdgeAvailabilityFails,
    PieceThreeConnectedWithU,
    PieceThreeConnectedWithV,
    NoCommonTwoCut,
    CommonTwoCut,
    MixedConnectivity,
    PieceFails,
    // κ = 2 condition
    ThreeConnectedWithUv,
    SidesTwoConnected,
    SideNotTwoConnected,
    InnerCutFails,
    NoCutPairSatisfies,
    // both
    VacuousPass,
    SeparatingTriple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub component: Vec<usize>,
    pub holds: bool,
    pub tags: Vec<Tag>,
    pub roles: Vec<(Role, usize)>,
}

/// Evidence for a κ = 1 or κ = 2 verdict: the chosen cut, the per-component
/// branch, and the first violated sub-condition when the verdict is false.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructuralWitness {
    pub roles: Vec<(Role, usize)>,
    pub components: Vec<ComponentCheck>,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Tag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating_triple: Option<[usize; 3]>,
}

// --- helpers over induced subgraphs, by original labels ---

fn kappa(g: &Graph, s: VertexSet) -> usize {
    let (h, _) = g.induced_subgraph(s).expect("subset of g");
    vertex_connectivity(&h)
}

fn k_connected(g: &Graph, s: VertexSet, k: usize) -> bool {
    s.len() > k && kappa(g, s) >= k
}

fn cut_pair(g: &Graph, s: VertexSet, x: usize, y: usize) -> bool {
    g.count_components(s.without(x).without(y)) >= 2
}

fn is_cut_vertex_of(g: &Graph, s: VertexSet, z: usize) -> bool {
    s.contains(z) && g.count_components(s.without(z)) > g.count_components(s)
}

fn pieces(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut left = s;
    let mut out = Vec::new();
    while let Some(v) = left.min() {
        let p = g.reach_within(v, left);
        out.push(p);
        left = left.difference(p);
    }
    out
}

fn pairs(s: VertexSet) -> impl Iterator<Item = (usize, usize)> {
    let v = s.to_vec();
    let n = v.len();
    (0..n).flat_map(move |i| {
        let v = v.clone();
        (i + 1..n).map(move |j| (v[i], v[j]))
    })
}

fn edges_to(g: &Graph, v: usize, s: VertexSet) -> usize {
    g.neighbors(v).intersection(s).len()
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

// --- k = n, n-1, n-2 and the general rules ---

/// Trees: `sdiam_k(T) = n - 1` iff the number of leaves is at most `k`.
pub fn lemma1_tree(g: &Graph, k: usize) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::Precondition("input is not a tree".into()));
    }
    let n = g.order();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, lo: 2, hi: n });
    }
    Ok(g.leaf_count() <= k)
}

/// `sdiam_{n-k}(G) = n - 1` iff `G` has at least `k` cut vertices.
pub fn lemma2_cut_count(g: &Graph, k: usize) -> Result<bool> {
    require_connected(g)?;
    let n = g.order();
    if k < 1 || k + 2 > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n.saturating_sub(2) });
    }
    Ok(cut_vertices(g).len() >= k)
}

/// `κ(G) ≥ k` iff `sdiam_{n-k+1}(G) = n - k`.
pub fn prop1_connectivity(g: &Graph, k: usize) -> Result<bool> {
    require_connected(g)?;
    let n = g.order();
    if k < 1 || k + 2 > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n.saturating_sub(2) });
    }
    Ok(vertex_connectivity(g) >= k)
}

fn outcome(g: &Graph, off: KOffset, predicted: usize, rule_chain: Vec<Rule>, reading: Reading) -> ClassificationOutcome {
    ClassificationOutcome {
        n: g.order(),
        k: g.order() - off.offset(),
        predicted,
        rule_chain,
        interpretation: reading.interpretation(),
        witness: None,
    }
}

fn check_pre(g: &Graph, off: KOffset) -> Result<()> {
    require_connected(g)?;
    if g.order() < off.min_order() {
        return Err(Error::Precondition(format!(
            "k = {} needs n >= {}, got n = {}",
            off.label(),
            off.min_order(),
            g.order()
        )));
    }
    Ok(())
}

pub fn classify_n(g: &Graph) -> Result<ClassificationOutcome> {
    check_pre(g, KOffset::N)?;
    Ok(outcome(g, KOffset::N, g.order() - 1, vec![Rule::Cor1Connected], Reading::LITERAL))
}

pub fn classify_n_minus_1(g: &Graph) -> Result<ClassificationOutcome> {
    check_pre(g, KOffset::NMinus1)?;
    let n = g.order();
    let (pred, rule) = if vertex_connectivity(g) >= 2 {
        (n - 2, Rule::Cor2KappaGe2)
    } else {
        (n - 1, Rule::Cor2CutVertex)
    };
    Ok(outcome(g, KOffset::NMinus1, pred, vec![rule], Reading::LITERAL))
}

pub fn classify_n_minus_2(g: &Graph) -> Result<ClassificationOutcome> {
    check_pre(g, KOffset::NMinus2)?;
    let n = g.order();
    let (pred, rule) = if vertex_connectivity(g) >= 3 {
        (n - 3, Rule::Thm2KappaGe3)
    } else if cut_vertices(g).len() >= 2 {
        (n - 1, Rule::Thm2TwoCutVertices)
    } else {
        (n - 2, Rule::Thm2Kappa2OrOneCut)
    };
    Ok(outcome(g, KOffset::NMinus2, pred, vec![rule], Reading::LITERAL))
}

/// Dispatches on `off`; `reading` only affects `k = n - 3`.
pub fn classify(g: &Graph, off: KOffset, reading: Reading) -> Result<ClassificationOutcome> {
    match off {
        KOffset::N => classify_n(g),
        KOffset::NMinus1 => classify_n_minus_1(g),
        KOffset::NMinus2 => classify_n_minus_2(g),
        KOffset::NMinus3 => classify_n_minus_3(g, reading),
    }
}

// --- k = n - 3 ---

/// Lexicographically smallest triple `{a, b, c}` such that deleting any two
/// of its members disconnects `g`.
///
/// For `S = V \ {a, b, c}`, an `S`-Steiner tree skipping two of the three
/// would be a connected graph on `V` minus that pair, so such a triple
/// forces `d_G(S) ≥ n - 2`. Conversely, if some pair `P` of the triple
/// leaves `G - P` connected, its spanning tree has `n - 3` edges. Hence
/// `sdiam_{n-3}(G) ≥ n - 2` exactly when a separating triple exists.
pub fn separating_triple(g: &Graph) -> Option<[usize; 3]> {
    let n = g.order();
    let mut sep = vec![0u64; n];
    for (x, y) in separating_pairs(g) {
        sep[x] |= 1 << y;
        sep[y] |= 1 << x;
    }
    for a in 0..n {
        for b in VertexSet::from_bits(sep[a]).iter().filter(|&b| b > a) {
            let common = VertexSet::from_bits(sep[a] & sep[b]);
            if let Some(c) = common.iter().find(|&c| c > b) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// The κ = 1 condition for `sdiam_{n-3}(G) = n - 3`: a unique cut vertex
/// `u`, and every piece `C` of `G - u` of order at least 3 either makes
/// `G[C ∪ {u}]` 3-connected or admits a partner `v ∈ C` such that
/// `{u, v}` cuts `G[C ∪ {u}]` and every piece of that cut satisfies one
/// edge-availability bullet and one connectivity bullet.
pub fn lemma3_predicate(g: &Graph, reading: Reading) -> Result<(bool, StructuralWitness)> {
    let kappa_g = vertex_connectivity(g);
    if kappa_g != 1 {
        return Err(Error::Precondition(format!("needs κ = 1, got κ = {kappa_g}")));
    }
    let mut w = StructuralWitness::default();
    let cuts = cut_vertices(g);
    if cuts.len() != 1 {
        w.violation = Some(Tag::NotOneCutVertex);
        return Ok((false, w));
    }
    let u = cuts[0];
    w.roles.push((Role::U, u));
    let big: Vec<VertexSet> = pieces(g, g.vertices().without(u))
        .into_iter()
        .filter(|c| c.len() >= 3)
        .collect();
    if big.is_empty() {
        return Ok(vacuous_verdict(g, reading, w));
    }
    for c in big {
        let check = kappa1_component(g, u, c, reading);
        let holds = check.holds;
        w.components.push(check);
        if !holds {
            w.violation = Some(Tag::PieceFails);
            return Ok((false, w));
        }
    }
    Ok((true, w))
}

fn vacuous_verdict(g: &Graph, reading: Reading, mut w: StructuralWitness) -> (bool, StructuralWitness) {
    w.vacuous = true;
    if !reading.vacuous {
        return (true, w);
    }
    match separating_triple(g) {
        None => (true, w),
        Some(t) => {
            w.separating_triple = Some(t);
            w.violation = Some(Tag::SeparatingTriple);
            (false, w)
        }
    }
}

fn kappa1_component(g: &Graph, u: usize, c: VertexSet, reading: Reading) -> ComponentCheck {
    let h = c.with(u);
    let mut check = ComponentCheck {
        component: c.to_vec(),
        holds: false,
        tags: Vec::new(),
        roles: Vec::new(),
    };
    if k_connected(g, h, 3) {
        check.holds = true;
        check.tags.push(Tag::ThreeConnectedWithU);
        return check;
    }
    if kappa(g, h) != 2 {
        check.tags.push(Tag::KappaNotTwo);
        return check;
    }
    let mut last_failure = Tag::NoUsableCutPair;
    for v in c.iter() {
        if !cut_pair(g, h, u, v) {
            continue;
        }
        let parts = pieces(g, h.without(u).without(v));
        let p = parts.len();
        let edge_tag = if g.has_edge(u, v) {
            Some(Tag::EdgeUv)
        } else if p >= 3 {
            Some(Tag::AtLeastThreePieces)
        } else if p == 2 && (edges_to(g, v, parts[0]) >= 2 || edges_to(g, v, parts[1]) >= 2) {
            Some(Tag::DoubledEdgeBundle)
        } else {
            None
        };
        let Some(edge_tag) = edge_tag else {
            last_failure = Tag::EdgeAvailabilityFails;
            continue;
        };
        let mut tags = vec![Tag::CutPairWithU, edge_tag];
        let mut ok = true;
        for &part in &parts {
            match kappa1_piece(g, u, v, part, reading) {
                Ok(t) => tags.push(t),
                Err(t) => {
                    last_failure = t;
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            check.holds = true;
            check.tags = tags;
            check.roles = vec![(Role::U, u), (Role::V, v)];
            return check;
        }
    }
    check.tags.push(last_failure);
    check
}

/// Connectivity bullet for one piece `P` of `G[C ∪ {u}] - {u, v}`.
fn kappa1_piece(g: &Graph, u: usize, v: usize, part: VertexSet, reading: Reading) -> std::result::Result<Tag, Tag> {
    let with_u = part.with(u);
    let with_v = part.with(v);
    if k_connected(g, with_u, 3) {
        return Ok(Tag::PieceThreeConnectedWithU);
    }
    if k_connected(g, with_v, 3) {
        return Ok(Tag::PieceThreeConnectedWithV);
    }
    let ku = kappa(g, with_u);
    let kv = kappa(g, with_v);
    if ku == 2 && kv == 2 {
        let common = |y: usize, z: usize| cut_pair(g, with_u, y, z) && cut_pair(g, with_v, y, z);
        let ok = if reading.symbol {
            pairs(part).all(|(y, z)| !common(y, z))
        } else {
            pairs(part).any(|(y, z)| !common(y, z))
        };
        return if ok { Ok(Tag::NoCommonTwoCut) } else { Err(Tag::CommonTwoCut) };
    }
    if ku == 2 && kv == 1 {
        let ok = pairs(part)
            .filter(|&(a, b)| cut_pair(g, with_u, a, b))
            .all(|(a, b)| !is_cut_vertex_of(g, with_v, a) && !is_cut_vertex_of(g, with_v, b));
        return if ok { Ok(Tag::MixedConnectivity) } else { Err(Tag::PieceFails) };
    }
    Err(Tag::PieceFails)
}

/// The κ = 2 condition for `sdiam_{n-3}(G) = n - 3`: some 2-cut `{u, v}`
/// such that every piece `C` of `G - {u, v}` of order at least 3 makes
/// `G[C ∪ {u, v}]` 3-connected, or satisfies the κ = 2 branch with its
/// inner-cut bullets. 2-cuts are tried in lexicographic order and the first
/// satisfying one is the witness.
pub fn lemma4_predicate(g: &Graph, reading: Reading) -> Result<(bool, StructuralWitness)> {
    let kappa_g = vertex_connectivity(g);
    if kappa_g != 2 {
        return Err(Error::Precondition(format!("needs κ = 2, got κ = {kappa_g}")));
    }
    let mut first_failure: Option<StructuralWitness> = None;
    let mut rejected_vacuous: Option<StructuralWitness> = None;
    for (u, v) in separating_pairs(g) {
        let mut w = StructuralWitness {
            roles: vec![(Role::U, u), (Role::V, v)],
            ..Default::default()
        };
        let big: Vec<VertexSet> = pieces(g, g.vertices().without(u).without(v))
            .into_iter()
            .filter(|c| c.len() >= 3)
            .collect();
        if big.is_empty() {
            let (ok, w) = vacuous_verdict(g, reading, w);
            if ok {
                return Ok((true, w));
            }
            rejected_vacuous.get_or_insert(w);
            continue;
        }
        let mut ok = true;
        for c in big {
            let check = kappa2_component(g, u, v, c, reading);
            let holds = check.holds;
            w.components.push(check);
            if !holds {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((true, w));
        }
        w.violation = Some(Tag::PieceFails);
        first_failure.get_or_insert(w);
    }
    if let Some(w) = rejected_vacuous {
        return Ok((false, w));
    }
    let mut w = first_failure.unwrap_or_default();
    w.violation = Some(Tag::NoCutPairSatisfies);
    Ok((false, w))
}

fn kappa2_component(g: &Graph, u: usize, v: usize, c: VertexSet, reading: Reading) -> ComponentCheck {
    let h = c.with(u).with(v);
    let mut check = ComponentCheck {
        component: c.to_vec(),
        holds: false,
        tags: Vec::new(),
        roles: Vec::new(),
    };
    if k_connected(g, h, 3) {
        check.holds = true;
        check.tags.push(Tag::ThreeConnectedWithUv);
        return check;
    }
    if kappa(g, h) != 2 {
        check.tags.push(Tag::KappaNotTwo);
        return check;
    }
    if !k_connected(g, c.with(u), 2) || !k_connected(g, c.with(v), 2) {
        check.tags.push(Tag::SideNotTwoConnected);
        return check;
    }
    check.tags.push(Tag::SidesTwoConnected);
    for (x, y) in pairs(h) {
        if (x, y) == (u.min(v), u.max(v)) || !cut_pair(g, h, x, y) {
            continue;
        }
        for part in pieces(g, h.without(x).without(y)) {
            if !inner_piece_ok(g, x, y, part, reading) {
                check.tags.push(Tag::InnerCutFails);
                check.roles = vec![(Role::X, x), (Role::Y, y)];
                return check;
            }
        }
    }
    check.holds = true;
    check
}

/// One of the four bullets for a piece `D` of `H - {x, y}`.
fn inner_piece_ok(g: &Graph, x: usize, y: usize, part: VertexSet, reading: Reading) -> bool {
    let with_x = part.with(x);
    let with_y = part.with(y);
    if k_connected(g, with_x, 2) || k_connected(g, with_y, 2) {
        return true;
    }
    // every piece of D - z keeps an edge to `anchor`, for every cut vertex
    // z of G[D ∪ {attach}]
    let bundles_reach = |attach: usize, anchor: usize| {
        let s = part.with(attach);
        kappa(g, s) == 1
            && part
                .iter()
                .filter(|&z| is_cut_vertex_of(g, s, z))
                .all(|z| pieces(g, part.without(z)).into_iter().all(|p| edges_to(g, anchor, p) >= 1))
    };
    let anchor_for_y = if reading.symmetry { y } else { x };
    bundles_reach(x, x) || bundles_reach(y, anchor_for_y)
}

/// Cross-check predicate for `sdiam_{n-3}(G) = n - 2`, evaluated from its
/// own printed conditions: exactly two cut vertices; or κ = 2 and every
/// 2-cut leaves an offending piece; or a unique cut vertex with an
/// offending piece. It is not used by [`classify_n_minus_3`].
pub fn corollary3_predicate(g: &Graph, reading: Reading) -> Result<bool> {
    require_connected(g)?;
    let cuts = cut_vertices(g);
    if cuts.len() == 2 {
        return Ok(true);
    }
    let kappa_g = vertex_connectivity(g);
    if kappa_g == 2 {
        let all_cuts_bad = separating_pairs(g).into_iter().all(|(u, v)| {
            pieces(g, g.vertices().without(u).without(v))
                .into_iter()
                .filter(|c| c.len() >= 3)
                .any(|c| cross_check_two_cut_piece(g, u, v, c))
        });
        return Ok(all_cuts_bad);
    }
    if cuts.len() == 1 {
        let u = cuts[0];
        return Ok(pieces(g, g.vertices().without(u))
            .into_iter()
            .filter(|c| c.len() >= 3)
            .any(|c| cross_check_cut_vertex_piece(g, u, c, reading)));
    }
    Ok(false)
}

fn cross_check_two_cut_piece(g: &Graph, u: usize, v: usize, c: VertexSet) -> bool {
    let h = c.with(u).with(v);
    let kh = kappa(g, h);
    if kh == 1 {
        return true;
    }
    if kh != 2 {
        return false;
    }
    let ku = kappa(g, c.with(u));
    let kv = kappa(g, c.with(v));
    if ku == 1 || kv == 1 {
        return true;
    }
    if ku != 2 || kv != 2 {
        return false;
    }
    pairs(h).filter(|&(x, y)| cut_pair(g, h, x, y)).any(|(x, y)| {
        pieces(g, h.without(x).without(y)).into_iter().any(|d| {
            let s = d.with(x);
            kappa(g, s) == 1
                && d.iter().filter(|&z| is_cut_vertex_of(g, s, z)).any(|z| {
                    pieces(g, d.without(z)).into_iter().any(|p| edges_to(g, x, p) == 0)
                })
        })
    })
}

fn cross_check_cut_vertex_piece(g: &Graph, u: usize, c: VertexSet, reading: Reading) -> bool {
    let h = c.with(u);
    let kh = kappa(g, h);
    if kh == 1 {
        return true;
    }
    if kh != 2 {
        return false;
    }
    let partners: Vec<usize> = c.iter().filter(|&v| cut_pair(g, h, u, v)).collect();
    if partners.is_empty() {
        return true;
    }
    partners.into_iter().all(|v| {
        let parts = pieces(g, h.without(u).without(v));
        if !g.has_edge(u, v) && parts.len() == 2 && parts.iter().all(|&p| edges_to(g, v, p) == 1) {
            return true;
        }
        parts.into_iter().any(|part| {
            let with_u = part.with(u);
            let with_v = part.with(v);
            let ku = kappa(g, with_u);
            let kv = kappa(g, with_v);
            let common = |y: usize, z: usize| cut_pair(g, with_u, y, z) && cut_pair(g, with_v, y, z);
            ku == 1
                || (ku == 2
                    && kv == 2
                    && if reading.symbol {
                        pairs(part).any(|(y, z)| common(y, z))
                    } else {
                        pairs(part).all(|(y, z)| common(y, z))
                    })
                || (ku == 2
                    && kv == 1
                    && pairs(part).any(|(y, z)| {
                        cut_pair(g, with_u, y, z)
                            && (is_cut_vertex_of(g, with_v, y) || is_cut_vertex_of(g, with_v, z))
                    }))
        })
    })
}

/// Structural prediction of `sdiam_{n-3}(G)`:
/// κ ≥ 4 → `n - 4`; at least three cut vertices → `n - 1`; κ = 3, or the
/// κ = 2 / κ = 1 condition → `n - 3`; otherwise `n - 2` by elimination.
pub fn classify_n_minus_3(g: &Graph, reading: Reading) -> Result<ClassificationOutcome> {
    check_pre(g, KOffset::NMinus3)?;
    let n = g.order();
    let kappa_g = vertex_connectivity(g);
    let off = KOffset::NMinus3;
    if kappa_g >= 4 {
        return Ok(outcome(g, off, n - 4, vec![Rule::Prop2KappaGe4], reading));
    }
    if cut_vertices(g).len() >= 3 {
        return Ok(outcome(g, off, n - 1, vec![Rule::Lemma2Cuts], reading));
    }
    if kappa_g == 3 {
        return Ok(outcome(g, off, n - 3, vec![Rule::Prop3Kappa3], reading));
    }
    let (holds, witness, accept, reject) = if kappa_g == 2 {
        let (h, w) = lemma4_predicate(g, reading)?;
        (h, w, Rule::Prop3K2Branch, Rule::Prop3K2Rejected)
    } else {
        let (h, w) = lemma3_predicate(g, reading)?;
        (h, w, Rule::Prop3K1Branch, Rule::Prop3K1Rejected)
    };
    let mut out = if holds {
        outcome(g, off, n - 3, vec![accept], reading)
    } else {
        let mut chain = vec![reject];
        if witness.violation == Some(Tag::SeparatingTriple) {
            chain.push(Rule::VacuousPassRejected);
        }
        chain.push(Rule::EliminationDefault);
        outcome(g, off, n - 2, chain, reading)
    };
    out.witness = Some(witness);
    Ok(out)
}
