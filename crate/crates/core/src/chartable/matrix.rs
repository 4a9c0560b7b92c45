//! Square matrices of Laurent polynomials indexed by the ordered set partitions of `[n]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::entries::{
    chi_to_rho_closed, kappa_to_rho_coeff, rho_to_kappa_coeff, supercharacter_value,
};
use crate::arcs::{enumerate_arc_sets, ArcSet};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// One of the three bases of superclass functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Supercharacters `χ^λ`.
    Chi,
    /// q-power-sums `ρ_ν(q)`.
    Rho,
    /// Superclass indicators `κ_μ`.
    Kappa,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Chi => "chi",
            Basis::Rho => "rho",
            Basis::Kappa => "kappa",
        }
    }
}

/// Row `r` expands the `from` basis element `r` in the `to` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixKind {
    pub from: Basis,
    pub to: Basis,
}

impl MatrixKind {
    pub const CHI_KAPPA: MatrixKind = MatrixKind {
        from: Basis::Chi,
        to: Basis::Kappa,
    };
    pub const RHO_KAPPA: MatrixKind = MatrixKind {
        from: Basis::Rho,
        to: Basis::Kappa,
    };
    pub const KAPPA_RHO: MatrixKind = MatrixKind {
        from: Basis::Kappa,
        to: Basis::Rho,
    };
    pub const CHI_RHO: MatrixKind = MatrixKind {
        from: Basis::Chi,
        to: Basis::Rho,
    };

    /// The kinds that [`build_matrix`] constructs directly.
    pub const BUILDABLE: [MatrixKind; 4] = [
        Self::CHI_KAPPA,
        Self::RHO_KAPPA,
        Self::KAPPA_RHO,
        Self::CHI_RHO,
    ];
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from.name(), self.to.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let basis = |b: &str| match b {
            "chi" => Ok(Basis::Chi),
            "rho" => Ok(Basis::Rho),
            "kappa" => Ok(Basis::Kappa),
            _ => Err(Error::Parse(format!("unknown matrix kind {s:?}"))),
        };
        let (a, b) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("unknown matrix kind {s:?}")))?;
        Ok(MatrixKind {
            from: basis(a)?,
            to: basis(b)?,
        })
    }
}

/// A `Bell(n) x Bell(n)` matrix over `Z[q, q^-1]`, rows and columns in ascending total order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    n: u32,
    kind: MatrixKind,
    order: Vec<ArcSet>,
    entries: Vec<LaurentPoly>,
}

impl BasisMatrix {
    /// Assembles a matrix from row-major entries, checking the shape.
    pub fn from_entries(n: u32, kind: MatrixKind, entries: Vec<LaurentPoly>) -> Result<Self> {
        let order = enumerate_arc_sets(n);
        if entries.len() != order.len() * order.len() {
            return Err(Error::OutOfRange(format!(
                "expected {} entries for n={n}, got {}",
                order.len() * order.len(),
                entries.len()
            )));
        }
        Ok(BasisMatrix {
            n,
            kind,
            order,
            entries,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> &[ArcSet] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size() + col]
    }

    pub fn row(&self, row: usize) -> &[LaurentPoly] {
        let s = self.size();
        &self.entries[row * s..(row + 1) * s]
    }

    pub fn index_of(&self, key: &ArcSet) -> Option<usize> {
        self.order
            .binary_search_by(|probe| probe.order_key_cmp(key))
            .ok()
    }

    /// Entry addressed by row and column set partitions.
    pub fn entry(&self, row: &ArcSet, col: &ArcSet) -> Option<&LaurentPoly> {
        Some(self.get(self.index_of(row)?, self.index_of(col)?))
    }

    pub fn is_identity(&self) -> bool {
        let s = self.size();
        (0..s).all(|r| {
            (0..s).all(|c| {
                if r == c {
                    self.get(r, c).is_one()
                } else {
                    self.get(r, c).is_zero()
                }
            })
        })
    }

    /// Entrywise exact substitution `q = q0`.
    pub fn evaluate(&self, q0: &BigRational) -> Result<RationalMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval(q0))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix {
            n: self.n,
            kind: self.kind,
            order: self.order.clone(),
            q: q0.clone(),
            entries,
        })
    }

    /// Entries at an integer `q0`, as an integer matrix. Fails if any entry is not integral there.
    pub fn evaluate_integer(&self, q0: &BigInt) -> Result<Vec<Vec<BigInt>>> {
        (0..self.size())
            .map(|r| self.row(r).iter().map(|e| e.eval_int(q0)).collect())
            .collect()
    }

    /// CSV with the kind in the corner cell and canonical set partition strings as headers.
    pub fn to_csv(&self) -> String {
        let cells = |r: usize| self.row(r).iter().map(|e| e.to_string()).collect();
        write_csv(&self.kind.to_string(), &self.order, cells)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (kind, order, rows) = read_csv(text)?;
        let kind: MatrixKind = kind.parse()?;
        let n = order.first().map(ArcSet::n).unwrap_or(0);
        let entries = rows
            .into_iter()
            .flatten()
            .map(|cell| cell.parse::<LaurentPoly>())
            .collect::<Result<Vec<_>>>()?;
        let m = BasisMatrix::from_entries(n, kind, entries)?;
        if m.order != order {
            return Err(Error::Parse(
                "CSV headers are not the ordered set partitions of [n]".into(),
            ));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixDoc {
            n: self.n,
            kind: self.kind.to_string(),
            order: self.order.iter().map(ArcSet::canonical).collect(),
            entries: (0..self.size()).map(|r| self.row(r).to_vec()).collect(),
        };
        serde_json::to_string(&doc).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind: MatrixKind = doc.kind.parse()?;
        let m =
            BasisMatrix::from_entries(doc.n, kind, doc.entries.into_iter().flatten().collect())?;
        let order: Vec<String> = m.order.iter().map(ArcSet::canonical).collect();
        if order != doc.order {
            return Err(Error::Parse(
                "JSON order is not the ordered set partitions of [n]".into(),
            ));
        }
        Ok(m)
    }

    /// Aligned plain-text table.
    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.size())
            .map(|r| self.row(r).iter().map(|e| e.to_string()).collect())
            .collect();
        pretty_table(&self.kind.to_string(), &self.order, &cells)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    n: u32,
    kind: String,
    order: Vec<String>,
    entries: Vec<Vec<LaurentPoly>>,
}

/// A [`BasisMatrix`] specialized at a rational value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub n: u32,
    pub kind: MatrixKind,
    pub order: Vec<ArcSet>,
    pub q: BigRational,
    pub entries: Vec<BigRational>,
}

impl RationalMatrix {
    fn size(&self) -> usize {
        self.order.len()
    }

    fn cells(&self) -> Vec<Vec<String>> {
        let s = self.size();
        self.entries
            .chunks(s.max(1))
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let cells = self.cells();
        write_csv(&format!("{} q={}", self.kind, self.q), &self.order, |r| {
            cells[r].clone()
        })
    }

    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "n": self.n,
            "kind": self.kind.to_string(),
            "q": self.q.to_string(),
            "order": self.order.iter().map(ArcSet::canonical).collect::<Vec<_>>(),
            "entries": self.cells(),
        });
        doc.to_string()
    }

    pub fn to_pretty(&self) -> String {
        pretty_table(
            &format!("{} q={}", self.kind, self.q),
            &self.order,
            &self.cells(),
        )
    }
}

fn write_csv(corner: &str, order: &[ArcSet], row_cells: impl Fn(usize) -> Vec<String>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header: Vec<String> = std::iter::once(corner.to_string())
        .chain(order.iter().map(ArcSet::canonical))
        .collect();
    w.write_record(&header).expect("in-memory write");
    for (r, key) in order.iter().enumerate() {
        let record: Vec<String> = std::iter::once(key.canonical())
            .chain(row_cells(r))
            .collect();
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

type CsvParts = (String, Vec<ArcSet>, Vec<Vec<String>>);

fn read_csv(text: &str) -> Result<CsvParts> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let parse_err = |e: csv::Error| Error::Parse(e.to_string());
    let header = records
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?
        .map_err(parse_err)?;
    let kind = header.get(0).unwrap_or_default().to_string();
    let order = header
        .iter()
        .skip(1)
        .map(str::parse)
        .collect::<Result<Vec<ArcSet>>>()?;
    let mut rows = Vec::with_capacity(order.len());
    for (r, rec) in records.enumerate() {
        let rec = rec.map_err(parse_err)?;
        let key: ArcSet = rec.get(0).unwrap_or_default().parse()?;
        if order.get(r) != Some(&key) {
            return Err(Error::Parse(format!(
                "row {r} key {key} does not match column order"
            )));
        }
        rows.push(rec.iter().skip(1).map(str::to_string).collect::<Vec<_>>());
    }
    if rows.len() != order.len() {
        return Err(Error::Parse("CSV is not square".into()));
    }
    Ok((kind, order, rows))
}

fn pretty_table(corner: &str, order: &[ArcSet], cells: &[Vec<String>]) -> String {
    let labels: Vec<String> = order.iter().map(ArcSet::canonical).collect();
    let mut widths: Vec<usize> = labels.iter().map(String::len).collect();
    for row in cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let label_w = labels
        .iter()
        .map(String::len)
        .chain([corner.len()])
        .max()
        .unwrap_or(0);
    let mut out = format!("{corner:<label_w$}");
    for (l, w) in labels.iter().zip(&widths) {
        out.push_str(&format!(" | {l:>w$}"));
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(cells) {
        out.push_str(&format!("{label:<label_w$}"));
        for (c, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" | {c:>w$}"));
        }
        out.push('\n');
    }
    out
}

type EntryFn = fn(&ArcSet, &ArcSet) -> Result<LaurentPoly>;

/// Fills every entry of the requested kind, rows and columns in ascending total order.
pub fn build_matrix(n: u32, kind: MatrixKind) -> Result<BasisMatrix> {
    let entry: EntryFn = match kind {
        MatrixKind::CHI_KAPPA => supercharacter_value,
        MatrixKind::RHO_KAPPA => rho_to_kappa_coeff,
        MatrixKind::KAPPA_RHO => kappa_to_rho_coeff,
        MatrixKind::CHI_RHO => chi_to_rho_closed,
        other => {
            return Err(Error::OutOfRange(format!(
                "no direct construction for kind {other}"
            )))
        }
    };
    let order = enumerate_arc_sets(n);
    let rows: Vec<Vec<LaurentPoly>> = order
        .par_iter()
        .map(|r| {
            order
                .iter()
                .map(|c| entry(r, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(BasisMatrix {
        n,
        kind,
        order,
        entries: rows.into_iter().flatten().collect(),
    })
}

/// Exact product; `a`'s target basis must be `b`'s source basis.
pub fn matrix_multiply(a: &BasisMatrix, b: &BasisMatrix) -> Result<BasisMatrix> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    if a.kind.to != b.kind.from {
        return Err(Error::KindMismatch(a.kind.to_string(), b.kind.to_string()));
    }
    let s = a.size();
    // Transition matrices are sparse: skip zero terms on both sides.
    let b_support: Vec<Vec<usize>> = (0..s)
        .map(|k| (0..s).filter(|&j| !b.get(k, j).is_zero()).collect())
        .collect();
    let rows: Vec<Vec<LaurentPoly>> = (0..s)
        .into_par_iter()
        .map(|i| {
            let mut acc = vec![LaurentPoly::zero(); s];
            for (k, a_ik) in a.row(i).iter().enumerate() {
                if a_ik.is_zero() {
                    continue;
                }
                for &j in &b_support[k] {
                    acc[j].add_product(a_ik, b.get(k, j));
                }
            }
            acc
        })
        .collect();
    Ok(BasisMatrix {
        n: a.n,
        kind: MatrixKind {
            from: a.kind.from,
            to: b.kind.to,
        },
        order: a.order.clone(),
        entries: rows.into_iter().flatten().collect(),
    })
}
