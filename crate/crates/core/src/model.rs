//! Dense ranking r-CSP instances and the primitive predicates built on them.
//!
//! An [`Instance`] carries exactly one constraint per r-subset of its vertex
//! set. Constraints are stored flat, in lexicographic order of their sorted
//! member tuples, so the lexicographic rank of a tuple is its storage index.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_integer::binomial;

use crate::error::ModelError;

/// Vertices are dense ids `0..n` within an instance.
pub type Vertex = usize;

/// The three constraint semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Two selected vertices that must be the extremes of the constraint.
    Betweenness,
    /// A full local ranking that must be reproduced exactly.
    TransitiveFast,
    /// One selected vertex that must come last.
    Fast,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Betweenness, Family::TransitiveFast, Family::Fast];

    /// Tag used by the instance file format and the CLI.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Betweenness => "betweenness",
            Family::TransitiveFast => "tfast",
            Family::Fast => "fast",
        }
    }

    pub fn min_arity(self) -> usize {
        match self {
            Family::Betweenness | Family::TransitiveFast => 3,
            Family::Fast => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "betweenness" | "bit" => Ok(Family::Betweenness),
            "tfast" | "transitive-fast" => Ok(Family::TransitiveFast),
            "fast" => Ok(Family::Fast),
            other => Err(ModelError::UnknownFamily(other.to_string())),
        }
    }
}

/// A family together with its arity `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemKind {
    family: Family,
    arity: usize,
}

impl ProblemKind {
    pub fn new(family: Family, arity: usize) -> Result<Self, ModelError> {
        if arity < family.min_arity() {
            return Err(ModelError::InvalidArity { family, arity });
        }
        Ok(Self { family, arity })
    }

    pub fn betweenness(arity: usize) -> Result<Self, ModelError> {
        Self::new(Family::Betweenness, arity)
    }

    pub fn transitive_fast(arity: usize) -> Result<Self, ModelError> {
        Self::new(Family::TransitiveFast, arity)
    }

    pub fn fast(arity: usize) -> Result<Self, ModelError> {
        Self::new(Family::Fast, arity)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of vertex ids stored as selected data for one constraint.
    pub fn selected_len(&self) -> usize {
        match self.family {
            Family::Betweenness => 2,
            Family::Fast => 1,
            Family::TransitiveFast => self.arity,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(r={})", self.family, self.arity)
    }
}

/// A permutation of `0..n` together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<Vertex>) -> Result<Self, ModelError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(ModelError::NotAPermutation(order));
            }
            position[v] = i;
        }
        Ok(Self { order, position })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Builds the ranking in which vertex `v` sits at `positions[v]`.
    pub fn from_positions(positions: Vec<usize>) -> Result<Self, ModelError> {
        let n = positions.len();
        let mut order = vec![usize::MAX; n];
        for (v, &p) in positions.iter().enumerate() {
            if p >= n || order[p] != usize::MAX {
                return Err(ModelError::NotAPermutation(positions));
            }
            order[p] = v;
        }
        Ok(Self {
            order,
            position: positions,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn at(&self, i: usize) -> Vertex {
        self.order[i]
    }

    pub fn last(&self) -> Option<Vertex> {
        self.order.last().copied()
    }

    /// `u <_σ v`
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.position[u] < self.position[v]
    }

    /// Exchanges the vertices at positions `i` and `j`.
    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.order.swap(i, j);
        self.position[self.order[i]] = i;
        self.position[self.order[j]] = j;
    }

    pub fn reversed(&self) -> Self {
        let order: Vec<_> = self.order.iter().rev().copied().collect();
        Self::new(order).expect("reversal of a permutation")
    }

    /// Sorts `vertices` by their position in this ranking.
    pub fn sort_by_position(&self, vertices: &mut [Vertex]) {
        vertices.sort_unstable_by_key(|&v| self.position[v]);
    }

    /// Restriction to the vertices of `relabel` (new id `i` is old id
    /// `relabel[i]`), expressed over the new ids.
    pub fn restrict(&self, relabel: &[Vertex]) -> Self {
        let mut pairs: Vec<(usize, Vertex)> = relabel
            .iter()
            .enumerate()
            .map(|(new, &old)| (self.position[old], new))
            .collect();
        pairs.sort_unstable();
        Self::new(pairs.into_iter().map(|(_, v)| v).collect()).expect("restriction of a permutation")
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ids(f, &self.order)
    }
}

pub(crate) fn write_ids(f: &mut impl fmt::Write, ids: &[Vertex]) -> fmt::Result {
    for (i, v) in ids.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Selected data of a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Selection {
    /// Betweenness: the unordered pair, stored smaller id first.
    Pair([Vertex; 2]),
    /// FAST: the vertex that must be last.
    Single(Vertex),
    /// Transitive FAST: the required order of all members.
    Order(Vec<Vertex>),
}

impl Selection {
    pub fn as_slice(&self) -> &[Vertex] {
        match self {
            Selection::Pair(p) => p,
            Selection::Single(s) => std::slice::from_ref(s),
            Selection::Order(o) => o,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Selection::Pair(_) => Family::Betweenness,
            Selection::Single(_) => Family::Fast,
            Selection::Order(_) => Family::TransitiveFast,
        }
    }

    /// Builds the selection for `family` from flat stored data, canonicalizing pairs.
    pub fn from_slice(family: Family, data: &[Vertex]) -> Self {
        match family {
            Family::Betweenness => Selection::Pair([data[0].min(data[1]), data[0].max(data[1])]),
            Family::Fast => Selection::Single(data[0]),
            Family::TransitiveFast => Selection::Order(data.to_vec()),
        }
    }
}

/// An r-subset of vertices with its selected data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    members: Vec<Vertex>,
    selection: Selection,
}

impl Constraint {
    /// Validates `members` (sorted, distinct, of length `kind.arity()`) and
    /// that `selection` matches the family and refers only to members.
    pub fn new(kind: ProblemKind, members: Vec<Vertex>, selection: Selection) -> Result<Self, ModelError> {
        if members.len() != kind.arity() {
            return Err(ModelError::WrongMemberCount {
                expected: kind.arity(),
                found: members.len(),
            });
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::UnsortedMembers(members));
        }
        if selection.family() != kind.family() {
            return Err(ModelError::FamilyMismatch {
                expected: kind.family(),
                found: selection.family(),
            });
        }
        let selection = match selection {
            Selection::Pair([a, b]) => {
                if a == b {
                    return Err(ModelError::DegenerateSelection(members));
                }
                Selection::Pair([a.min(b), a.max(b)])
            }
            Selection::Order(ref o) => {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                if sorted != members {
                    return Err(ModelError::DegenerateSelection(members));
                }
                selection
            }
            s => s,
        };
        for &v in selection.as_slice() {
            if members.binary_search(&v).is_err() {
                return Err(ModelError::SelectionNotMember { vertex: v, members });
            }
        }
        Ok(Self { members, selection })
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    pub fn family(&self) -> Family {
        self.selection.family()
    }

    pub fn arity(&self) -> usize {
        self.members.len()
    }

    pub fn is_satisfied(&self, ranking: &Ranking) -> bool {
        satisfied(
            self.family(),
            &self.members,
            self.selection.as_slice(),
            ranking.positions(),
        )
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Replaces the selected data so that `ranking` satisfies the constraint.
    pub fn edit_wrt(&self, ranking: &Ranking) -> Self {
        Self {
            members: self.members.clone(),
            selection: satisfying_selection(self.family(), &self.members, ranking),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        write_ids(f, &self.members)?;
        f.write_str(" | ")?;
        write_ids(f, self.selection.as_slice())?;
        f.write_char('}')
    }
}

/// The satisfaction predicate over flat data. `pos[v]` is the position of `v`.
#[inline]
pub(crate) fn satisfied(family: Family, members: &[Vertex], sel: &[Vertex], pos: &[usize]) -> bool {
    match family {
        Family::Betweenness => {
            let (pa, pb) = (pos[sel[0]], pos[sel[1]]);
            let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
            members.iter().all(|&m| {
                let p = pos[m];
                p >= lo && p <= hi
            })
        }
        Family::Fast => {
            let ps = pos[sel[0]];
            members.iter().all(|&m| pos[m] <= ps)
        }
        Family::TransitiveFast => sel.windows(2).all(|w| pos[w[0]] < pos[w[1]]),
    }
}

/// The unique selection for `members` that `ranking` satisfies.
pub(crate) fn satisfying_selection(family: Family, members: &[Vertex], ranking: &Ranking) -> Selection {
    let mut ordered = members.to_vec();
    ranking.sort_by_position(&mut ordered);
    match family {
        Family::Betweenness => {
            let (a, b) = (ordered[0], ordered[ordered.len() - 1]);
            Selection::Pair([a.min(b), a.max(b)])
        }
        Family::Fast => Selection::Single(ordered[ordered.len() - 1]),
        Family::TransitiveFast => Selection::Order(ordered),
    }
}

/// Checked evaluation: `Ok(true)` iff `ranking` satisfies `constraint` under `kind`.
pub fn evaluate(kind: ProblemKind, constraint: &Constraint, ranking: &Ranking) -> Result<bool, ModelError> {
    if constraint.family() != kind.family() || constraint.arity() != kind.arity() {
        return Err(ModelError::FamilyMismatch {
            expected: kind.family(),
            found: constraint.family(),
        });
    }
    if let Some(&v) = constraint.members().iter().find(|&&v| v >= ranking.len()) {
        return Err(ModelError::VertexOutOfRange {
            vertex: v,
            n: ranking.len(),
        });
    }
    Ok(constraint.is_satisfied(ranking))
}

/// `edit_wrt` as a free function; the family comes from the constraint.
pub fn edit_wrt(constraint: &Constraint, ranking: &Ranking) -> Constraint {
    constraint.edit_wrt(ranking)
}

/// Vertices between the σ-minimum and σ-maximum of `members`, inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    /// In σ order.
    pub vertices: Vec<Vertex>,
    pub consecutive: bool,
}

pub fn span(members: &[Vertex], ranking: &Ranking) -> Span {
    let (lo, hi) = position_range(members, ranking);
    let vertices = ranking.order()[lo..=hi].to_vec();
    let consecutive = vertices.len() == members.len();
    Span {
        vertices,
        consecutive,
    }
}

/// `span(S)` plus everything ranked before `S`, in σ order.
pub fn span_minus(members: &[Vertex], ranking: &Ranking) -> Vec<Vertex> {
    let (_, hi) = position_range(members, ranking);
    ranking.order()[..=hi].to_vec()
}

fn position_range(members: &[Vertex], ranking: &Ranking) -> (usize, usize) {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for &m in members {
        let p = ranking.position(m);
        lo = lo.min(p);
        hi = hi.max(p);
    }
    (lo, hi)
}

/// Borrowed view of one stored constraint.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintRef<'a> {
    pub index: usize,
    pub family: Family,
    pub members: &'a [Vertex],
    pub selected: &'a [Vertex],
}

impl ConstraintRef<'_> {
    pub fn is_satisfied(&self, ranking: &Ranking) -> bool {
        satisfied(self.family, self.members, self.selected, ranking.positions())
    }

    pub fn to_constraint(&self) -> Constraint {
        Constraint {
            members: self.members.to_vec(),
            selection: Selection::from_slice(self.family, self.selected),
        }
    }
}

/// A dense constraint system over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    kind: ProblemKind,
    n: usize,
    /// Sorted member tuples, stride `r`, lexicographic order.
    members: Vec<Vertex>,
    /// Selected data, stride `kind.selected_len()`.
    selected: Vec<Vertex>,
}

impl Instance {
    /// Builds an instance from an arbitrary collection of constraints, which
    /// must cover every r-subset of `0..n` exactly once.
    pub fn from_constraints<I>(kind: ProblemKind, n: usize, constraints: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = Constraint>,
    {
        let r = kind.arity();
        let count = subset_count(n, r);
        let stride = kind.selected_len();
        let mut slots: Vec<Option<Vec<Vertex>>> = vec![None; count];
        for c in constraints {
            if c.family() != kind.family() || c.arity() != r {
                return Err(ModelError::FamilyMismatch {
                    expected: kind.family(),
                    found: c.family(),
                });
            }
            if let Some(&v) = c.members().iter().find(|&&v| v >= n) {
                return Err(ModelError::VertexOutOfRange { vertex: v, n });
            }
            let idx = lex_rank(c.members(), n);
            if slots[idx].is_some() {
                return Err(ModelError::DuplicateConstraint(c.members().to_vec()));
            }
            slots[idx] = Some(c.selection().as_slice().to_vec());
        }
        let members = all_subsets_flat(n, r);
        let mut selected = Vec::with_capacity(count * stride);
        for (i, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(s) => selected.extend(s),
                None => {
                    return Err(ModelError::MissingConstraint(
                        members[i * r..(i + 1) * r].to_vec(),
                    ))
                }
            }
        }
        Ok(Self {
            kind,
            n,
            members,
            selected,
        })
    }

    /// Builds an instance by asking `select` for the selection of every
    /// r-subset, visited in lexicographic order.
    pub fn from_fn<F>(kind: ProblemKind, n: usize, mut select: F) -> Result<Self, ModelError>
    where
        F: FnMut(&[Vertex]) -> Selection,
    {
        let r = kind.arity();
        let members = all_subsets_flat(n, r);
        let mut selected = Vec::with_capacity(subset_count(n, r) * kind.selected_len());
        for tuple in members.chunks_exact(r) {
            let c = Constraint::new(kind, tuple.to_vec(), select(tuple))?;
            selected.extend_from_slice(c.selection().as_slice());
        }
        Ok(Self {
            kind,
            n,
            members,
            selected,
        })
    }

    /// The instance in which every constraint is satisfied by `ranking`.
    pub fn consistent_with(kind: ProblemKind, ranking: &Ranking) -> Self {
        Self::from_fn(kind, ranking.len(), |m| {
            satisfying_selection(kind.family(), m, ranking)
        })
        .expect("satisfying selections are valid")
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn num_constraints(&self) -> usize {
        self.members.len() / self.kind.arity()
    }

    pub fn get(&self, index: usize) -> ConstraintRef<'_> {
        let r = self.kind.arity();
        let s = self.kind.selected_len();
        ConstraintRef {
            index,
            family: self.kind.family(),
            members: &self.members[index * r..(index + 1) * r],
            selected: &self.selected[index * s..(index + 1) * s],
        }
    }

    /// Storage index of the constraint with these sorted members.
    pub fn index_of(&self, members: &[Vertex]) -> Result<usize, ModelError> {
        if members.len() != self.arity() {
            return Err(ModelError::WrongMemberCount {
                expected: self.arity(),
                found: members.len(),
            });
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::UnsortedMembers(members.to_vec()));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= self.n) {
            return Err(ModelError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(lex_rank(members, self.n))
    }

    pub fn constraint(&self, members: &[Vertex]) -> Result<Constraint, ModelError> {
        Ok(self.get(self.index_of(members)?).to_constraint())
    }

    pub fn iter(&self) -> impl Iterator<Item = ConstraintRef<'_>> + '_ {
        (0..self.num_constraints()).map(move |i| self.get(i))
    }

    /// A copy of this instance with one constraint replaced.
    pub fn with_constraint(&self, constraint: &Constraint) -> Result<Self, ModelError> {
        if constraint.family() != self.kind.family() {
            return Err(ModelError::FamilyMismatch {
                expected: self.kind.family(),
                found: constraint.family(),
            });
        }
        let idx = self.index_of(constraint.members())?;
        let s = self.kind.selected_len();
        let mut next = self.clone();
        next.selected[idx * s..(idx + 1) * s].copy_from_slice(constraint.selection().as_slice());
        Ok(next)
    }

    /// Number of constraints not satisfied by `ranking` (`b_σ`).
    pub fn count_inconsistent(&self, ranking: &Ranking) -> usize {
        let pos = ranking.positions();
        self.iter()
            .filter(|c| !satisfied(c.family, c.members, c.selected, pos))
            .count()
    }

    pub fn is_consistent_with(&self, ranking: &Ranking) -> bool {
        let pos = ranking.positions();
        self.iter()
            .all(|c| satisfied(c.family, c.members, c.selected, pos))
    }

    /// Storage indices of the constraints `ranking` violates, in lexicographic order.
    pub fn inconsistent_indices(&self, ranking: &Ranking) -> Vec<usize> {
        let pos = ranking.positions();
        self.iter()
            .filter(|c| !satisfied(c.family, c.members, c.selected, pos))
            .map(|c| c.index)
            .collect()
    }

    pub(crate) fn check_ranking(&self, ranking: &Ranking) -> Result<(), ModelError> {
        if ranking.len() != self.n {
            return Err(ModelError::DomainMismatch {
                expected: self.n,
                found: ranking.len(),
            });
        }
        Ok(())
    }
}

/// An instance paired with a fixed ranking of its vertices (`R_σ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedInstance {
    pub instance: Instance,
    pub sigma: Ranking,
}

impl OrderedInstance {
    pub fn new(instance: Instance, sigma: Ranking) -> Result<Self, ModelError> {
        instance.check_ranking(&sigma)?;
        Ok(Self { instance, sigma })
    }

    /// The inconsistent constraints under σ, lexicographic order. Their count is `b_σ`.
    pub fn inconsistent_constraints(&self) -> Vec<Constraint> {
        self.instance
            .inconsistent_indices(&self.sigma)
            .into_iter()
            .map(|i| self.instance.get(i).to_constraint())
            .collect()
    }

    pub fn inconsistency_count(&self) -> usize {
        self.instance.count_inconsistent(&self.sigma)
    }

    /// `R_σ[subset]`, relabeled densely; also returns the new→old id map.
    pub fn induced(&self, subset: &[Vertex]) -> Result<(OrderedInstance, Vec<Vertex>), ModelError> {
        let (instance, relabel) = induced(&self.instance, subset)?;
        let sigma = self.sigma.restrict(&relabel);
        Ok((OrderedInstance { instance, sigma }, relabel))
    }
}

/// Free-function form of [`OrderedInstance::inconsistent_constraints`].
pub fn inconsistent_constraints(oi: &OrderedInstance) -> Vec<Constraint> {
    oi.inconsistent_constraints()
}

/// The instance induced by `subset`, with vertices relabeled densely in
/// increasing id order. Returns the instance and the new→old id map.
pub fn induced(inst: &Instance, subset: &[Vertex]) -> Result<(Instance, Vec<Vertex>), ModelError> {
    let mut relabel = subset.to_vec();
    relabel.sort_unstable();
    relabel.dedup();
    if relabel.len() != subset.len() {
        return Err(ModelError::DuplicateVertex);
    }
    if let Some(&v) = relabel.iter().find(|&&v| v >= inst.n) {
        return Err(ModelError::VertexOutOfRange { vertex: v, n: inst.n });
    }
    let r = inst.arity();
    if relabel.len() < r {
        return Err(ModelError::SubsetTooSmall {
            size: relabel.len(),
            arity: r,
        });
    }
    let m = relabel.len();
    let kind = inst.kind;
    let mut new_of_old = vec![usize::MAX; inst.n];
    for (new, &old) in relabel.iter().enumerate() {
        new_of_old[old] = new;
    }
    let mut buf = vec![0; r];
    let instance = Instance::from_fn(kind, m, |tuple| {
        for (b, &t) in buf.iter_mut().zip(tuple) {
            *b = relabel[t];
        }
        let stored = inst.get(lex_rank(&buf, inst.n));
        let translated: Vec<Vertex> = stored.selected.iter().map(|&v| new_of_old[v]).collect();
        Selection::from_slice(kind.family(), &translated)
    })?;
    Ok((instance, relabel))
}

/// `C(n, r)`; zero when `r > n`.
pub fn subset_count(n: usize, r: usize) -> usize {
    if r > n {
        0
    } else {
        binomial(n as u64, r as u64) as usize
    }
}

/// Lexicographic rank of a sorted r-tuple among all r-subsets of `0..n`.
pub fn lex_rank(tuple: &[Vertex], n: usize) -> usize {
    let r = tuple.len();
    let total = subset_count(n, r);
    let tail: usize = tuple
        .iter()
        .enumerate()
        .map(|(i, &a)| subset_count(n - 1 - a, r - i))
        .sum();
    total - 1 - tail
}

/// All r-subsets of `0..n` in lexicographic order, concatenated.
pub(crate) fn all_subsets_flat(n: usize, r: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(subset_count(n, r) * r);
    for_each_subset(n, r, |s| out.extend_from_slice(s));
    out
}

/// Calls `f` with every sorted r-subset of `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[Vertex])) {
    if r > n {
        return;
    }
    if r == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
