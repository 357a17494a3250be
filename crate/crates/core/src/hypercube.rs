//! Implicit model of the n-dimensional hypercube Q_n.
//!
//! Vertices are n-bit integer labels; two vertices are adjacent exactly when
//! their labels differ in one bit. Bit `i` of a label holds coordinate
//! `u_{i+1}`, so flipping dimension `d` is `label ^ (1 << (d - 1))`. No
//! adjacency structure is ever materialized: every operation walks the graph
//! through XOR.

use std::fmt;

use crate::error::{Error, Result};

/// Dimension of a hypercube whose vertex sets we can afford to materialize.
///
/// The cap bounds membership vectors at 2^30 bits; formula-only code paths
/// (see [`crate::isoperimetry`]) accept larger dimensions because they never
/// build a vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeDim {
    n: u32,
}

impl CubeDim {
    pub const MAX: u32 = 30;

    pub fn new(n: u32) -> Result<CubeDim> {
        if n == 0 || n > Self::MAX {
            return Err(Error::Domain(format!(
                "dimension must satisfy 1 <= n <= {}, got {n}",
                Self::MAX
            )));
        }
        Ok(CubeDim { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// 2^n.
    pub fn vertex_count(self) -> u64 {
        1u64 << self.n
    }

    pub fn contains(self, v: VertexId) -> bool {
        (v.0 as u64) < self.vertex_count()
    }
}

impl fmt::Display for CubeDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}", self.n)
    }
}

/// A vertex of Q_n as its integer label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    /// The label written in the coordinate reading order u_1 u_2 ... u_n,
    /// dimension 1 first. Label 1 in Q_5 prints as "10000".
    pub fn bit_string(self, n: u32) -> String {
        (0..n)
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A set of vertices of a fixed Q_n, stored as a 2^n-bit membership vector
/// with a cached cardinality.
#[derive(Clone, PartialEq, Eq)]
pub struct FaultSet {
    dim: CubeDim,
    blocks: Vec<u64>,
    len: u64,
}

impl FaultSet {
    pub fn new(dim: CubeDim) -> FaultSet {
        let words = (dim.vertex_count() as usize).div_ceil(64);
        FaultSet {
            dim,
            blocks: vec![0; words],
            len: 0,
        }
    }

    pub fn from_labels<I>(dim: CubeDim, labels: I) -> Result<FaultSet>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut set = FaultSet::new(dim);
        for v in labels {
            set.insert(v)?;
        }
        Ok(set)
    }

    pub fn dim(&self) -> CubeDim {
        self.dim
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        if !self.dim.contains(v) {
            return false;
        }
        self.blocks[(v.0 / 64) as usize] >> (v.0 % 64) & 1 == 1
    }

    /// Inserts `v`, returning whether it was newly added.
    pub fn insert(&mut self, v: VertexId) -> Result<bool> {
        if !self.dim.contains(v) {
            return Err(Error::Domain(format!(
                "vertex {} out of range for {}",
                v.0, self.dim
            )));
        }
        let word = &mut self.blocks[(v.0 / 64) as usize];
        let mask = 1u64 << (v.0 % 64);
        if *word & mask != 0 {
            return Ok(false);
        }
        *word |= mask;
        self.len += 1;
        Ok(true)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.blocks[(v.0 / 64) as usize] &= !(1u64 << (v.0 % 64));
        self.len -= 1;
        true
    }

    /// Members in ascending label order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &word)| {
            let base = (w as u32) * 64;
            BitIter { word }.map(move |b| VertexId(base + b))
        })
    }

    pub fn to_labels(&self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl fmt::Debug for FaultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaultSet({}, {{", self.dim)?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}})")
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(b)
    }
}

/// The component orders of Q_n - S, largest first, plus one maximum-order
/// component. `small_total` is the number of vertices outside that component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub sizes: Vec<u64>,
    pub max_component: Option<FaultSet>,
    pub small_total: u64,
}

/// Decomposition of Q_n along one dimension into two Q_{n-1} halves joined
/// by a perfect matching of pair vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub zero_half: Vec<VertexId>,
    pub one_half: Vec<VertexId>,
    pub matching: Vec<(VertexId, VertexId)>,
}

/// The n neighbors of `v`, ordered by flipped-bit index.
pub fn neighbors(dim: CubeDim, v: VertexId) -> Result<Vec<VertexId>> {
    if !dim.contains(v) {
        return Err(Error::Domain(format!(
            "vertex {} out of range for {}",
            v.0, dim
        )));
    }
    Ok((0..dim.n()).map(|i| VertexId(v.0 ^ (1 << i))).collect())
}

/// Shared neighbors of two distinct vertices, ascending by label.
///
/// Computed by intersecting the two neighbor lists, so the cn-number claim
/// (the result has 0 or 2 members) stays an observable property rather than
/// something baked into the construction.
pub fn common_neighbors(dim: CubeDim, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
    if u == v {
        return Err(Error::Domain(format!(
            "common neighbors require two distinct vertices, got {} twice",
            u.0
        )));
    }
    let mut a = neighbors(dim, u)?;
    let mut b = neighbors(dim, v)?;
    a.sort_unstable();
    b.sort_unstable();
    let mut shared = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Ok(shared)
}

/// The vertex boundary N(H): vertices outside `h` adjacent to some member.
pub fn vertex_boundary(h: &FaultSet) -> Result<FaultSet> {
    if h.is_empty() {
        return Err(Error::Domain(
            "vertex boundary of the empty set is undefined".into(),
        ));
    }
    let dim = h.dim();
    let mut boundary = FaultSet::new(dim);
    for v in h.iter() {
        for i in 0..dim.n() {
            let w = VertexId(v.0 ^ (1 << i));
            if !h.contains(w) {
                boundary.insert(w).expect("neighbor stays in range");
            }
        }
    }
    Ok(boundary)
}

/// Splits Q_n along dimension `i` (1-indexed) into the two induced Q_{n-1}
/// halves and the matching pairing each vertex with its i-th neighbor.
pub fn decompose(dim: CubeDim, i: u32) -> Result<Decomposition> {
    if i == 0 || i > dim.n() {
        return Err(Error::Domain(format!(
            "dimension index must satisfy 1 <= i <= {}, got {i}",
            dim.n()
        )));
    }
    let bit = 1u32 << (i - 1);
    let mut zero_half = Vec::with_capacity(dim.vertex_count() as usize / 2);
    let mut one_half = Vec::with_capacity(dim.vertex_count() as usize / 2);
    let mut matching = Vec::with_capacity(dim.vertex_count() as usize / 2);
    for label in 0..dim.vertex_count() as u32 {
        if label & bit == 0 {
            zero_half.push(VertexId(label));
            matching.push((VertexId(label), VertexId(label | bit)));
        } else {
            one_half.push(VertexId(label));
        }
    }
    Ok(Decomposition {
        zero_half,
        one_half,
        matching,
    })
}

/// Connected components of Q_n - S by work-queue traversal over the implicit
/// graph.
///
/// Among maximum-order components the reported one is the component holding
/// the smallest vertex label, which makes outputs reproducible.
pub fn components(faults: &FaultSet) -> ComponentProfile {
    let dim = faults.dim();
    let total = dim.vertex_count();
    let mut visited = faults.blocks.clone();
    let mut found: Vec<(u64, u32)> = Vec::new(); // (order, seed label)

    let mut queue: Vec<u32> = Vec::new();
    for label in 0..total as u32 {
        if visited[(label / 64) as usize] >> (label % 64) & 1 == 1 {
            continue;
        }
        let mut order = 0u64;
        visited[(label / 64) as usize] |= 1 << (label % 64);
        queue.push(label);
        while let Some(v) = queue.pop() {
            order += 1;
            for i in 0..dim.n() {
                let w = v ^ (1 << i);
                let word = &mut visited[(w / 64) as usize];
                let mask = 1u64 << (w % 64);
                if *word & mask == 0 {
                    *word |= mask;
                    queue.push(w);
                }
            }
        }
        found.push((order, label));
    }

    // Largest first; the ascending scan above discovers each component at its
    // minimum label, so ties resolve to the smallest contained label.
    found.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let sizes: Vec<u64> = found.iter().map(|&(order, _)| order).collect();
    let alive: u64 = sizes.iter().sum();

    let max_component = found.first().map(|&(_, seed)| {
        let mut comp = FaultSet::new(dim);
        let mut queue = vec![seed];
        comp.insert(VertexId(seed)).expect("seed in range");
        while let Some(v) = queue.pop() {
            for i in 0..dim.n() {
                let w = VertexId(v ^ (1 << i));
                if !faults.contains(w) && comp.insert(w).expect("neighbor in range") {
                    queue.push(w.0);
                }
            }
        }
        comp
    });

    let small_total = alive - sizes.first().copied().unwrap_or(0);
    ComponentProfile {
        sizes,
        max_component,
        small_total,
    }
}
