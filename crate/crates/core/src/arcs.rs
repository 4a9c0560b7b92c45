//! Set partitions of `{1, ..., n}` encoded as arc diagrams.
//!
//! A set partition is stored as the set of arcs `i-l` joining consecutive
//! elements of each block. Validity is exactly injectivity of the left
//! endpoints and of the right endpoints. Every statistic used by the
//! supercharacter formulas (spans, right endpoints, nesting, conflicts)
//! lives here.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single arc `left-right` with `1 <= left < right <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub left: u32,
    pub right: u32,
}

impl Arc {
    pub const fn new(left: u32, right: u32) -> Self {
        Arc { left, right }
    }

    /// `right - left`.
    pub fn span(&self) -> u32 {
        self.right - self.left
    }

    /// True when `inner` sits strictly inside `self`: `i < j < k < l`.
    pub fn strictly_contains(&self, inner: &Arc) -> bool {
        self.left < inner.left && inner.right < self.right
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.left, self.right)
    }
}

/// An integer partition used only as a comparison key (parts weakly decreasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPartitionKey(pub Vec<u32>);

impl IntPartitionKey {
    fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartitionKey(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }
}

// Largest part first; a proper prefix is smaller. This is exactly slice ordering.
impl Ord for IntPartitionKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }
}

impl PartialOrd for IntPartitionKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntPartitionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// A set partition of `[n]` as an arc diagram.
///
/// Arcs are kept sorted by `(left, right)`; construction always validates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSet {
    n: u32,
    arcs: Vec<Arc>,
}

impl ArcSet {
    /// The set partition of `[n]` into singletons.
    pub fn empty(n: u32) -> Self {
        ArcSet {
            n,
            arcs: Vec::new(),
        }
    }

    /// Builds a validated arc set from `(left, right)` pairs in any order.
    pub fn new(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let arcs = collect_arcs(n, pairs)?;
        if !endpoints_injective(&arcs) {
            return Err(Error::NotASetPartition(render_arcs(n, &arcs)));
        }
        Ok(ArcSet { n, arcs })
    }

    /// Used by enumeration, where validity holds by construction.
    fn from_sorted_unchecked(n: u32, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(endpoints_injective(&arcs));
        ArcSet { n, arcs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// `|λ|`.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// `Σ (l - i)` over the arcs.
    pub fn dim_stat(&self) -> u64 {
        self.arcs.iter().map(|a| u64::from(a.span())).sum()
    }

    /// Multiset of spans, largest first.
    pub fn dimv(&self) -> IntPartitionKey {
        IntPartitionKey::from_unsorted(self.arcs.iter().map(Arc::span).collect())
    }

    /// Set of right endpoints, largest first.
    pub fn rnode(&self) -> IntPartitionKey {
        IntPartitionKey::from_unsorted(self.arcs.iter().map(|a| a.right).collect())
    }

    /// Blocks of the partition, each sorted, ordered by their minimum.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        let n = self.n as usize;
        let mut next = vec![0u32; n + 1];
        let mut has_prev = vec![false; n + 1];
        for a in &self.arcs {
            next[a.left as usize] = a.right;
            has_prev[a.right as usize] = true;
        }
        let mut blocks = Vec::new();
        for start in 1..=self.n {
            if has_prev[start as usize] {
                continue;
            }
            let mut block = vec![start];
            let mut cur = start;
            while next[cur as usize] != 0 {
                cur = next[cur as usize];
                block.push(cur);
            }
            blocks.push(block);
        }
        blocks
    }

    /// Arcs sharing a left endpoint with an arc of `self` and ending earlier,
    /// or sharing a right endpoint and starting later. Sorted.
    pub fn cflt(&self) -> Vec<Arc> {
        let mut out = BTreeSet::new();
        for a in &self.arcs {
            for k in (a.left + 1)..a.right {
                out.insert(Arc::new(a.left, k));
            }
            for j in (a.left + 1)..a.right {
                out.insert(Arc::new(j, a.right));
            }
        }
        out.into_iter().collect()
    }

    pub fn is_subset(&self, other: &ArcSet) -> Result<bool> {
        same_n(self.n, other.n)?;
        Ok(self.is_subset_of(other))
    }

    pub(crate) fn is_subset_of(&self, other: &ArcSet) -> bool {
        self.arcs.iter().all(|a| other.contains(a))
    }

    /// The total order on set partitions: `dimv` first, then `rnode`.
    pub fn total_order_cmp(&self, other: &ArcSet) -> Result<Ordering> {
        same_n(self.n, other.n)?;
        Ok(self.order_key_cmp(other))
    }

    pub(crate) fn order_key_cmp(&self, other: &ArcSet) -> Ordering {
        self.dimv()
            .cmp(&other.dimv())
            .then_with(|| self.rnode().cmp(&other.rnode()))
            .then_with(|| self.arcs.cmp(&other.arcs))
    }

    /// Canonical `n=<n>:<arcs>` form.
    pub fn canonical(&self) -> String {
        render_arcs(self.n, &self.arcs)
    }

    /// Every subset of the arc set, each of which is itself a valid set partition.
    pub fn subsets(&self) -> impl Iterator<Item = ArcSet> + '_ {
        let k = self.arcs.len();
        assert!(k < 64, "too many arcs to enumerate subsets");
        (0u64..(1u64 << k)).map(move |mask| {
            let arcs = self
                .arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| *a)
                .collect();
            ArcSet::from_sorted_unchecked(self.n, arcs)
        })
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for ArcSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed arc set {s:?}"));
        let rest = s.trim().strip_prefix("n=").ok_or_else(bad)?;
        let (n, list) = rest.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let mut pairs = Vec::new();
        if !list.trim().is_empty() {
            for item in list.split(',') {
                let (i, l) = item.trim().split_once('-').ok_or_else(bad)?;
                let i: u32 = i.trim().parse().map_err(|_| bad())?;
                let l: u32 = l.trim().parse().map_err(|_| bad())?;
                pairs.push((i, l));
            }
        }
        ArcSet::new(n, pairs)
    }
}

fn render_arcs(n: u32, arcs: &[Arc]) -> String {
    let list: Vec<String> = arcs.iter().map(Arc::to_string).collect();
    format!("n={n}:{}", list.join(","))
}

fn same_n(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SizeMismatch(a, b))
    }
}

fn collect_arcs(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Vec<Arc>> {
    let mut arcs = Vec::new();
    for (i, l) in pairs {
        if !(1 <= i && i < l && l <= n) {
            return Err(Error::ArcOutOfRange {
                n,
                left: i,
                right: l,
            });
        }
        arcs.push(Arc::new(i, l));
    }
    arcs.sort_unstable();
    arcs.dedup();
    Ok(arcs)
}

fn endpoints_injective(arcs: &[Arc]) -> bool {
    let mut lefts = BTreeSet::new();
    let mut rights = BTreeSet::new();
    arcs.iter()
        .all(|a| lefts.insert(a.left) && rights.insert(a.right))
}

/// Whether the pairs form a set partition of `[n]` in arc form.
pub fn is_valid_arc_set(n: u32, pairs: &[(u32, u32)]) -> Result<bool> {
    let arcs = collect_arcs(n, pairs.iter().copied())?;
    Ok(endpoints_injective(&arcs))
}

/// Number of pairs `(outer, inner)` with `outer` strictly containing `inner`.
///
/// Both sides are raw arc collections; they need not be set partitions.
pub fn nst(outer: &[Arc], inner: &[Arc]) -> u64 {
    let mut count = 0;
    for o in outer {
        for i in inner {
            if o.strictly_contains(i) {
                count += 1;
            }
        }
    }
    count
}

/// [`nst`] on two arc sets, checking that they live on the same `[n]`.
pub fn nst_sets(outer: &ArcSet, inner: &ArcSet) -> Result<u64> {
    same_n(outer.n, inner.n)?;
    Ok(nst(&outer.arcs, &inner.arcs))
}

/// Number of arcs of `arcs` strictly containing `arc`.
pub fn nst_over(arcs: &[Arc], arc: &Arc) -> u64 {
    arcs.iter().filter(|o| o.strictly_contains(arc)).count() as u64
}

/// Nesting of `inner` under `outer`, ignoring inner arcs that conflict with `outer`.
pub fn snst(outer: &ArcSet, inner: &ArcSet) -> Result<u64> {
    same_n(outer.n, inner.n)?;
    let conflicts = outer.cflt();
    let kept: Vec<Arc> = inner
        .arcs
        .iter()
        .filter(|a| conflicts.binary_search(a).is_err())
        .copied()
        .collect();
    Ok(nst(&outer.arcs, &kept))
}

/// Calls `visit` on every set partition of `[n]` (unordered), without collecting.
///
/// Node `j` either starts a new block or attaches to the current last element
/// `i < j` of an open block; each choice is a distinct arc `i-j`.
pub fn for_each_arc_set(n: u32, mut visit: impl FnMut(&ArcSet)) {
    fn go(
        j: u32,
        n: u32,
        open: &mut Vec<bool>,
        arcs: &mut Vec<Arc>,
        visit: &mut dyn FnMut(&ArcSet),
    ) {
        if j > n {
            let mut sorted = arcs.clone();
            sorted.sort_unstable();
            visit(&ArcSet::from_sorted_unchecked(n, sorted));
            return;
        }
        // `open[i]`: i is the current maximum of its block, so i-j is allowed.
        open[j as usize] = true;
        go(j + 1, n, open, arcs, visit);
        for i in 1..j {
            if open[i as usize] {
                open[i as usize] = false;
                arcs.push(Arc::new(i, j));
                go(j + 1, n, open, arcs, visit);
                arcs.pop();
                open[i as usize] = true;
            }
        }
        open[j as usize] = false;
    }
    let mut open = vec![false; n as usize + 2];
    let mut arcs = Vec::new();
    go(1, n, &mut open, &mut arcs, &mut visit);
}

/// All set partitions of `[n]`, ascending in the total order.
pub fn enumerate_arc_sets(n: u32) -> Vec<ArcSet> {
    let mut all = Vec::new();
    for_each_arc_set(n, |a| all.push(a.clone()));
    all.sort_by(ArcSet::order_key_cmp);
    all
}
