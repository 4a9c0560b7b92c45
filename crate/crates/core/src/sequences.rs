//! Aitken's array, the three-index nesting array, and the summed statistics
//! `arcs(n)`, `dim(n)`, `nst(n)` over all set partitions of `[n]`.
//!
//! The combinatorial counts (`b_count`, `b3_count`) are the reference
//! definitions. The recursions are fast paths; the combinatorial values
//! agree with them shifted by one row: `b_count(n, k) = aitken[n-1][k]`
//! and `b3_count(n, k, j) = b3_recursion[n-1][k][j]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arcs::{for_each_arc_set, nst, Arc};
use crate::error::{Error, Result};

/// Which of the two independent computations to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Sum the statistic over every set partition.
    Enumerate,
    /// Weighted sums over Aitken's array and the nesting recursion; no enumeration.
    Formula,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Enumerate => "enumerate",
            Route::Formula => "formula",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Route::Enumerate),
            "formula" => Ok(Route::Formula),
            _ => Err(Error::Parse(format!("unknown route {s:?}"))),
        }
    }
}

/// Triangle `a[n][k]`, `1 <= k <= n`: `a[1][1] = 1`, `a[n][1] = a[n-1][n-1]`,
/// `a[n][k] = a[n][k-1] + a[n-1][k-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AitkenTable {
    rows: Vec<Vec<BigUint>>,
}

impl AitkenTable {
    pub fn max_n(&self) -> u32 {
        self.rows.len() as u32
    }

    /// 1-based row `n`.
    pub fn row(&self, n: u32) -> &[BigUint] {
        &self.rows[n as usize - 1]
    }

    pub fn get(&self, n: u32, k: u32) -> &BigUint {
        &self.rows[n as usize - 1][k as usize - 1]
    }

    /// Rows centred in a staggered triangle, the way the array is usually printed.
    pub fn to_staggered(&self) -> String {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let cell = rendered
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        let width = (2 * self.rows.len()).saturating_sub(1) * cell;
        let mut out = String::new();
        for row in &rendered {
            let line = row
                .iter()
                .map(|v| format!("{v:>cell$}"))
                .collect::<Vec<_>>()
                .join(&" ".repeat(cell));
            let pad = (width - line.len()) / 2;
            out.push_str(&" ".repeat(pad));
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn aitken(max_n: u32) -> Result<AitkenTable> {
    if max_n < 1 {
        return Err(Error::OutOfRange("Aitken's array starts at n=1".into()));
    }
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 2..=max_n as usize {
        let prev = &rows[n - 2];
        let mut row = Vec::with_capacity(n);
        row.push(prev[n - 2].clone());
        for k in 1..n {
            let v = &row[k - 1] + &prev[k - 1];
            row.push(v);
        }
        rows.push(row);
    }
    Ok(AitkenTable { rows })
}

/// Bell numbers `Bell(0..=max_n)`, read off the boundary of Aitken's array.
pub fn bell_numbers(max_n: u32) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    if max_n >= 1 {
        let table = aitken(max_n).expect("max_n >= 1");
        out.extend((1..=max_n).map(|n| table.get(n, n).clone()));
    }
    out
}

/// `b_count(n, k)` for every `k` in `1..=n`, from a single enumeration pass.
///
/// Entry `k < n` counts partitions containing the arc `k-n`; entry `n`
/// counts partitions with no arc ending at `n`.
pub fn b_counts(n: u32) -> Result<Vec<BigUint>> {
    if n < 1 {
        return Err(Error::OutOfRange("b_count needs n >= 1".into()));
    }
    let mut counts = vec![0u64; n as usize + 1];
    for_each_arc_set(n, |lam| {
        let k = lam
            .arcs()
            .iter()
            .find(|a| a.right == n)
            .map_or(n, |a| a.left);
        counts[k as usize] += 1;
    });
    Ok(counts[1..].iter().map(|&c| BigUint::from(c)).collect())
}

pub fn b_count(n: u32, k: u32) -> Result<BigUint> {
    if !(1 <= k && k <= n) {
        return Err(Error::OutOfRange(format!(
            "b_count needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(b_counts(n)?[k as usize - 1].clone())
}

fn check_b3_range(n: u32, k: u32, j: u32) -> Result<()> {
    if n >= 3 && 1 <= j && j < k && k < n {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "b3 needs 1 <= j < k <= n-1, n >= 3; got n={n}, k={k}, j={j}"
        )))
    }
}

/// `b3_count(n, k, j)` for every `1 <= j < k <= n-1`, keyed by `(k, j)`.
///
/// For `k < n-1`: partitions containing both `j-n` and `k-(n-1)`.
/// For `k = n-1`: partitions containing `j-n` with no arc ending at `n-1`.
pub fn b3_counts(n: u32) -> Result<BTreeMap<(u32, u32), BigUint>> {
    check_b3_range(n, 2, 1)?;
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for k in 2..n {
        for j in 1..k {
            counts.insert((k, j), 0);
        }
    }
    for_each_arc_set(n, |lam| {
        let Some(j) = lam.arcs().iter().find(|a| a.right == n).map(|a| a.left) else {
            return;
        };
        let into_prev = lam.arcs().iter().find(|a| a.right == n - 1).map(|a| a.left);
        match into_prev {
            Some(k) if j < k => *counts.get_mut(&(k, j)).expect("in range") += 1,
            Some(_) => {}
            None => {
                if j < n - 1 {
                    *counts.get_mut(&(n - 1, j)).expect("in range") += 1;
                }
            }
        }
    });
    Ok(counts
        .into_iter()
        .map(|(key, c)| (key, BigUint::from(c)))
        .collect())
}

pub fn b3_count(n: u32, k: u32, j: u32) -> Result<BigUint> {
    check_b3_range(n, k, j)?;
    Ok(b3_counts(n)?[&(k, j)].clone())
}

/// Values `b[n][k][j]` from the four-rule recursion, `3 <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestTable {
    max_n: u32,
    values: BTreeMap<(u32, u32, u32), BigUint>,
}

impl NestTable {
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn get(&self, n: u32, k: u32, j: u32) -> Option<&BigUint> {
        self.values.get(&(n, k, j))
    }

    /// `(n, k, j, value)` in increasing `n`, then `k`, then `j`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32, &BigUint)> {
        self.values.iter().map(|(&(n, k, j), v)| (n, k, j, v))
    }
}

/// Fills `b[n][k][j]` for `1 <= j < k <= n-1` by
/// `b[3,2,1] = 1`, `b[n,2,1] = b[n-1,n-2,1]`,
/// `b[n,j+1,j] = b[n,j+1,j-1] + b[n-1,j,j-1]`, `b[n,k,j] = b[n,k-1,j] + b[n-1,k-1,j]`.
pub fn b3_recursion(max_n: u32) -> Result<NestTable> {
    if max_n < 3 {
        return Err(Error::OutOfRange("the nesting array starts at n=3".into()));
    }
    let mut values: BTreeMap<(u32, u32, u32), BigUint> = BTreeMap::new();
    values.insert((3, 2, 1), BigUint::one());
    for n in 4..=max_n {
        for k in 2..n {
            for j in 1..k {
                let v = if k == 2 {
                    values[&(n - 1, n - 2, 1)].clone()
                } else if k == j + 1 {
                    &values[&(n, j + 1, j - 1)] + &values[&(n - 1, j, j - 1)]
                } else {
                    &values[&(n, k - 1, j)] + &values[&(n - 1, k - 1, j)]
                };
                values.insert((n, k, j), v);
            }
        }
    }
    Ok(NestTable { max_n, values })
}

#[derive(Clone, Copy, Default)]
struct Totals {
    arcs: u64,
    dim: u64,
    nst: u64,
}

fn enumerate_totals(n: u32) -> Totals {
    let mut t = Totals::default();
    for_each_arc_set(n, |lam| {
        t.arcs += lam.arc_count() as u64;
        t.dim += lam.dim_stat();
        t.nst += nst(lam.arcs(), lam.arcs());
    });
    t
}

/// `Σ |λ|` over all set partitions of `[n]`.
///
/// The formula route is `Σ k a[n-1][k]`, `a` being Aitken's array.
pub fn arcs_seq(n: u32, route: Route) -> Result<BigUint> {
    check_seq_n(n)?;
    Ok(match route {
        Route::Enumerate => enumerate_totals(n).arcs.into(),
        Route::Formula if n == 1 => BigUint::zero(),
        Route::Formula => {
            let a = aitken(n - 1)?;
            (1..n).map(|k| a.get(n - 1, k) * k).sum()
        }
    })
}

/// `Σ dim(λ)` over all set partitions of `[n]`.
///
/// The formula route is `Σ k (n-k) a[n-1][k]`.
pub fn dim_seq(n: u32, route: Route) -> Result<BigUint> {
    check_seq_n(n)?;
    Ok(match route {
        Route::Enumerate => enumerate_totals(n).dim.into(),
        Route::Formula if n == 1 => BigUint::zero(),
        Route::Formula => {
            let a = aitken(n - 1)?;
            (1..n).map(|k| a.get(n - 1, k) * (k * (n - k))).sum()
        }
    })
}

/// `Σ nst(λ, λ)` over all set partitions of `[n]`.
///
/// The formula route sums `j (k - j) b[n-1][k][j]` from the nesting recursion
/// over `j <= n-3`, `k <= n-2`; on that range the recursion one row down
/// equals `b3_count(n, k, j)`.
pub fn nst_seq(n: u32, route: Route) -> Result<BigUint> {
    check_seq_n(n)?;
    Ok(match route {
        Route::Enumerate => enumerate_totals(n).nst.into(),
        Route::Formula if n < 4 => BigUint::zero(),
        Route::Formula => {
            let rec = b3_recursion(n - 1)?;
            let mut total = BigUint::zero();
            for j in 1..=n - 3 {
                for k in j + 1..=n - 2 {
                    total +=
                        rec.get(n - 1, k, j).expect("k <= n-2 lies in row n-1") * (j * (k - j));
                }
            }
            total
        }
    })
}

fn check_seq_n(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::OutOfRange("sequences start at n=1".into()))
    }
}

/// Number of set partitions of `[n]` containing `arc`.
pub fn arc_containment_count(n: u32, arc: Arc) -> u64 {
    let mut count = 0;
    for_each_arc_set(n, |lam| {
        if lam.contains(&arc) {
            count += 1;
        }
    });
    count
}

/// One disagreement between the nesting recursion and the combinatorial count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B3Mismatch {
    pub n: u32,
    pub k: u32,
    pub j: u32,
    pub count: String,
    pub recursion: String,
}

/// Comparison of `b3_count` against `b3_recursion` for `4 <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B3Reconciliation {
    pub max_n: u32,
    /// `b3_count(n,k,j)` vs `b3_recursion[n-1][k][j]` for `k <= n-2`.
    pub shifted_mismatches: Vec<B3Mismatch>,
    /// `b3_count(n,k,j)` vs `b3_recursion[n][k][j]` at the same indices.
    pub same_index_mismatches: Vec<B3Mismatch>,
}

impl B3Reconciliation {
    pub fn shifted_agrees(&self) -> bool {
        self.shifted_mismatches.is_empty()
    }
}

pub fn reconcile_b3(max_n: u32) -> Result<B3Reconciliation> {
    let table = b3_recursion(max_n)?;
    let mut shifted = Vec::new();
    let mut same = Vec::new();
    for n in 3..=max_n {
        let counts = b3_counts(n)?;
        for (&(k, j), count) in &counts {
            let mismatch = |rec: &BigUint| B3Mismatch {
                n,
                k,
                j,
                count: count.to_string(),
                recursion: rec.to_string(),
            };
            let at_n = table.get(n, k, j).expect("same domain");
            if at_n != count {
                same.push(mismatch(at_n));
            }
            if n >= 4 && k <= n - 2 {
                let prev = table.get(n - 1, k, j).expect("k <= n-2 lies in row n-1");
                if prev != count {
                    shifted.push(mismatch(prev));
                }
            }
        }
    }
    Ok(B3Reconciliation {
        max_n,
        shifted_mismatches: shifted,
        same_index_mismatches: same,
    })
}
