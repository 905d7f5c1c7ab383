//! Tabular input, binarization and the immutable two-group binary dataset.
//!
//! The pipeline is `load_csv` → [`fit_encoding`] → [`EncodingSchema::encode`]:
//! continuous columns are cut into ten equal-width bins over the pooled
//! min/max of both groups, categorical columns are one-hot encoded and binary
//! columns pass through as a single literal column.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MsdError, Result};
use crate::term::{Literal, Polarity, Term};

/// Number of equal-width bins for continuous columns.
pub const N_BINS: usize = 10;

/// Which of the two compared samples a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Mu,
    Nu,
}

impl Group {
    /// 0 for `Mu`, 1 for `Nu`.
    pub fn index(self) -> usize {
        match self {
            Group::Mu => 0,
            Group::Nu => 1,
        }
    }

    pub fn other(self) -> Group {
        match self {
            Group::Mu => Group::Nu,
            Group::Nu => Group::Mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Continuous,
    Categorical,
    Binary,
}

impl FromStr for ColumnKind {
    type Err = MsdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "continuous" | "numeric" => Ok(ColumnKind::Continuous),
            "categorical" | "category" => Ok(ColumnKind::Categorical),
            "binary" | "bool" => Ok(ColumnKind::Binary),
            other => Err(MsdError::InvalidConfig(format!(
                "unknown column kind `{other}` (expected continuous, categorical or binary)"
            ))),
        }
    }
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnKind::Continuous => "continuous",
            ColumnKind::Categorical => "categorical",
            ColumnKind::Binary => "binary",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnValues {
    Continuous(Vec<f64>),
    Categorical(Vec<String>),
    Binary(Vec<bool>),
}

impl ColumnValues {
    pub fn len(&self) -> usize {
        match self {
            ColumnValues::Continuous(v) => v.len(),
            ColumnValues::Categorical(v) => v.len(),
            ColumnValues::Binary(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ColumnKind {
        match self {
            ColumnValues::Continuous(_) => ColumnKind::Continuous,
            ColumnValues::Categorical(_) => ColumnKind::Categorical,
            ColumnValues::Binary(_) => ColumnKind::Binary,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawColumn {
    pub name: String,
    pub values: ColumnValues,
}

impl RawColumn {
    pub fn new(name: impl Into<String>, values: ColumnValues) -> Self {
        RawColumn {
            name: name.into(),
            values,
        }
    }

    pub fn kind(&self) -> ColumnKind {
        self.values.kind()
    }
}

/// Protected columns plus the group label of every row.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    columns: Vec<RawColumn>,
    groups: Vec<Group>,
    group_values: [String; 2],
}

impl RawTable {
    pub fn new(
        columns: Vec<RawColumn>,
        groups: Vec<Group>,
        group_values: [String; 2],
    ) -> Result<Self> {
        for c in &columns {
            if c.values.len() != groups.len() {
                return Err(MsdError::InvalidDataset(format!(
                    "column `{}` has {} values for {} rows",
                    c.name,
                    c.values.len(),
                    groups.len()
                )));
            }
            if let ColumnValues::Continuous(v) = &c.values {
                if let Some(row) = v.iter().position(|x| !x.is_finite()) {
                    return Err(MsdError::Unparseable {
                        row: row + 1,
                        column: c.name.clone(),
                        value: v[row].to_string(),
                        expected: "a finite number",
                    });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for c in &columns {
            if !seen.insert(c.name.as_str()) {
                return Err(MsdError::InvalidDataset(format!(
                    "duplicate column `{}`",
                    c.name
                )));
            }
        }
        if !groups.contains(&Group::Mu) || !groups.contains(&Group::Nu) {
            return Err(MsdError::InvalidDataset(
                "each group needs at least one row".into(),
            ));
        }
        Ok(RawTable {
            columns,
            groups,
            group_values,
        })
    }

    pub fn columns(&self) -> &[RawColumn] {
        &self.columns
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// Raw group labels, `[mu, nu]`.
    pub fn group_values(&self) -> &[String; 2] {
        &self.group_values
    }

    pub fn n_rows(&self) -> usize {
        self.groups.len()
    }

    pub fn group_size(&self, g: Group) -> usize {
        self.groups.iter().filter(|&&x| x == g).count()
    }
}

/// Loads the protected columns and the group column of a CSV file.
///
/// The two distinct values of `group_column` are ordered lexicographically;
/// the smaller one labels the `Mu` sample. Protected columns without an entry
/// in `kinds` are read as categorical.
pub fn load_csv(
    path: impl AsRef<Path>,
    group_column: &str,
    protected_columns: &[String],
    kinds: &HashMap<String, ColumnKind>,
) -> Result<RawTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| MsdError::io(path, e))?;
    read_csv(file, group_column, protected_columns, kinds)
}

/// Same as [`load_csv`] over any reader.
pub fn read_csv<R: Read>(
    reader: R,
    group_column: &str,
    protected_columns: &[String],
    kinds: &HashMap<String, ColumnKind>,
) -> Result<RawTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| MsdError::UnknownColumn(name.to_string()))
    };
    let group_idx = find(group_column)?;
    let protected_idx = protected_columns
        .iter()
        .map(|c| find(c))
        .collect::<Result<Vec<_>>>()?;
    for k in kinds.keys() {
        if !protected_columns.contains(k) {
            return Err(MsdError::UnknownColumn(k.clone()));
        }
    }

    let mut raw_groups: Vec<String> = Vec::new();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); protected_columns.len()];
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let get = |idx: usize, name: &str| -> Result<String> {
            match record.get(idx) {
                Some(v) if !v.is_empty() => Ok(v.to_string()),
                _ => Err(MsdError::MissingValue {
                    row,
                    column: name.to_string(),
                }),
            }
        };
        raw_groups.push(get(group_idx, group_column)?);
        for (slot, (&idx, name)) in protected_idx.iter().zip(protected_columns).enumerate() {
            cells[slot].push(get(idx, name)?);
        }
    }

    let distinct: BTreeSet<&str> = raw_groups.iter().map(String::as_str).collect();
    if distinct.len() != 2 {
        return Err(MsdError::GroupNotBinary {
            column: group_column.to_string(),
            found: distinct.len(),
        });
    }
    let mut it = distinct.into_iter();
    let mu_value = it.next().unwrap().to_string();
    let nu_value = it.next().unwrap().to_string();
    let groups = raw_groups
        .iter()
        .map(|g| if *g == mu_value { Group::Mu } else { Group::Nu })
        .collect();

    let mut columns = Vec::with_capacity(protected_columns.len());
    for (name, values) in protected_columns.iter().zip(cells) {
        let kind = kinds.get(name).copied().unwrap_or(ColumnKind::Categorical);
        let values = parse_column(name, kind, values)?;
        columns.push(RawColumn::new(name.clone(), values));
    }
    RawTable::new(columns, groups, [mu_value, nu_value])
}

fn parse_column(name: &str, kind: ColumnKind, cells: Vec<String>) -> Result<ColumnValues> {
    let bad = |row: usize, value: &str, expected: &'static str| MsdError::Unparseable {
        row: row + 1,
        column: name.to_string(),
        value: value.to_string(),
        expected,
    };
    Ok(match kind {
        ColumnKind::Categorical => ColumnValues::Categorical(cells),
        ColumnKind::Continuous => ColumnValues::Continuous(
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| match c.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(bad(i, c, "a finite number")),
                })
                .collect::<Result<_>>()?,
        ),
        ColumnKind::Binary => ColumnValues::Binary(
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| match c.to_ascii_lowercase().as_str() {
                    "1" | "true" => Ok(true),
                    "0" | "false" => Ok(false),
                    _ => Err(bad(i, c, "binary (0/1/true/false)")),
                })
                .collect::<Result<_>>()?,
        ),
    })
}

/// Equal-width bin of `v` over `[min, max]`; values outside are clamped to the
/// boundary bins. Returns the bin and whether clamping happened.
pub fn bin_index(v: f64, min: f64, max: f64, bins: usize) -> (usize, bool) {
    if bins <= 1 || max <= min {
        return (0, v < min || v > max);
    }
    let clamped = v < min || v > max;
    let raw = ((v - min) * bins as f64 / (max - min)).floor();
    let idx = if raw < 0.0 {
        0
    } else if raw >= (bins - 1) as f64 {
        bins - 1
    } else {
        raw as usize
    };
    (idx, clamped)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColumnEncoding {
    Continuous {
        min: f64,
        max: f64,
        /// `N_BINS`, or 1 for a constant column.
        bins: usize,
    },
    Categorical {
        categories: Vec<String>,
    },
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodedColumn {
    pub name: String,
    pub encoding: ColumnEncoding,
    /// Index of the first literal column produced by this raw column.
    pub offset: usize,
}

impl EncodedColumn {
    pub fn width(&self) -> usize {
        match &self.encoding {
            ColumnEncoding::Continuous { bins, .. } => *bins,
            ColumnEncoding::Categorical { categories } => categories.len(),
            ColumnEncoding::Binary => 1,
        }
    }

    pub fn kind(&self) -> ColumnKind {
        match self.encoding {
            ColumnEncoding::Continuous { .. } => ColumnKind::Continuous,
            ColumnEncoding::Categorical { .. } => ColumnKind::Categorical,
            ColumnEncoding::Binary => ColumnKind::Binary,
        }
    }

    /// Set for a continuous column whose observed values were all equal.
    pub fn degenerate(&self) -> bool {
        matches!(self.encoding, ColumnEncoding::Continuous { bins: 1, .. })
    }

    /// Lower and upper edge of a continuous bin.
    pub fn bin_edges(&self, bin: usize) -> Option<(f64, f64)> {
        match self.encoding {
            ColumnEncoding::Continuous { min, max, bins } if bin < bins => {
                if bins == 1 {
                    return Some((min, max));
                }
                let width = (max - min) / bins as f64;
                let lo = min + width * bin as f64;
                let hi = if bin + 1 == bins {
                    max
                } else {
                    min + width * (bin + 1) as f64
                };
                Some((lo, hi))
            }
            _ => None,
        }
    }
}

/// What a single literal column stands for in the raw table.
#[derive(Debug, Clone, PartialEq)]
pub enum LiteralSource {
    Bin {
        index: usize,
        lo: f64,
        hi: f64,
        closed_right: bool,
    },
    Category(String),
    Binary,
}

/// Display text of a literal and of its negation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralLabels {
    pub positive: String,
    pub negative: String,
}

impl LiteralLabels {
    pub fn get(&self, polarity: Polarity) -> &str {
        match polarity {
            Polarity::Positive => &self.positive,
            Polarity::Negative => &self.negative,
        }
    }

    fn generic(j: usize) -> Self {
        LiteralLabels {
            positive: format!("f{j} = 1"),
            negative: format!("f{j} = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingSchema {
    columns: Vec<EncodedColumn>,
    n_literals: usize,
}

/// Fits the binarization of every column of `table`.
///
/// A constant continuous column gets a single bin; check
/// [`EncodedColumn::degenerate`] to surface it.
pub fn fit_encoding(table: &RawTable) -> Result<EncodingSchema> {
    if table.n_rows() == 0 {
        return Err(MsdError::InvalidDataset("empty table".into()));
    }
    let mut columns = Vec::with_capacity(table.columns().len());
    let mut offset = 0;
    for c in table.columns() {
        let encoding = match &c.values {
            ColumnValues::Continuous(v) => {
                let min = v.iter().copied().fold(f64::INFINITY, f64::min);
                let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let bins = if max > min { N_BINS } else { 1 };
                ColumnEncoding::Continuous { min, max, bins }
            }
            ColumnValues::Categorical(v) => {
                let set: BTreeSet<&String> = v.iter().collect();
                ColumnEncoding::Categorical {
                    categories: set.into_iter().cloned().collect(),
                }
            }
            ColumnValues::Binary(_) => ColumnEncoding::Binary,
        };
        let col = EncodedColumn {
            name: c.name.clone(),
            encoding,
            offset,
        };
        offset += col.width();
        columns.push(col);
    }
    Ok(EncodingSchema {
        columns,
        n_literals: offset,
    })
}

/// Result of [`EncodingSchema::encode`].
#[derive(Debug, Clone)]
pub struct Encoded {
    pub dataset: BinaryDataset,
    /// Per raw column, how many values fell outside the fitted range.
    pub clamped: Vec<usize>,
}

impl EncodingSchema {
    pub fn columns(&self) -> &[EncodedColumn] {
        &self.columns
    }

    pub fn n_literals(&self) -> usize {
        self.n_literals
    }

    pub fn encode(&self, table: &RawTable) -> Result<Encoded> {
        if table.columns().len() != self.columns.len() {
            return Err(MsdError::SchemaMismatch(format!(
                "schema has {} columns, table has {}",
                self.columns.len(),
                table.columns().len()
            )));
        }
        let n = table.n_rows();
        let mut bits = vec![vec![false; self.n_literals]; n];
        let mut clamped = vec![0usize; self.columns.len()];
        for (ci, (enc, raw)) in self.columns.iter().zip(table.columns()).enumerate() {
            if enc.name != raw.name || enc.kind() != raw.kind() {
                return Err(MsdError::SchemaMismatch(format!(
                    "column {ci}: expected {} `{}`, found {} `{}`",
                    enc.kind(),
                    enc.name,
                    raw.kind(),
                    raw.name
                )));
            }
            match (&enc.encoding, &raw.values) {
                (ColumnEncoding::Continuous { min, max, bins }, ColumnValues::Continuous(v)) => {
                    for (row, &x) in v.iter().enumerate() {
                        let (b, out) = bin_index(x, *min, *max, *bins);
                        clamped[ci] += out as usize;
                        bits[row][enc.offset + b] = true;
                    }
                }
                (ColumnEncoding::Categorical { categories }, ColumnValues::Categorical(v)) => {
                    for (row, x) in v.iter().enumerate() {
                        let k =
                            categories
                                .binary_search(x)
                                .map_err(|_| MsdError::UnknownCategory {
                                    column: enc.name.clone(),
                                    value: x.clone(),
                                })?;
                        bits[row][enc.offset + k] = true;
                    }
                }
                (ColumnEncoding::Binary, ColumnValues::Binary(v)) => {
                    for (row, &x) in v.iter().enumerate() {
                        bits[row][enc.offset] = x;
                    }
                }
                _ => unreachable!("kinds checked above"),
            }
        }
        let rows = bits.into_iter().zip(table.groups().iter().copied());
        let dataset = BinaryDataset::from_rows(self.n_literals, rows)?
            .with_labels(self.literal_labels())?
            .with_group_names(table.group_values().clone());
        Ok(Encoded { dataset, clamped })
    }

    /// Maps a literal column back to its raw column index and meaning.
    pub fn decode(&self, literal: usize) -> Option<(usize, LiteralSource)> {
        let ci = self
            .columns
            .iter()
            .position(|c| literal >= c.offset && literal < c.offset + c.width())?;
        let col = &self.columns[ci];
        let k = literal - col.offset;
        let src = match &col.encoding {
            ColumnEncoding::Continuous { bins, .. } => {
                let (lo, hi) = col.bin_edges(k)?;
                LiteralSource::Bin {
                    index: k,
                    lo,
                    hi,
                    closed_right: k + 1 == *bins,
                }
            }
            ColumnEncoding::Categorical { categories } => {
                LiteralSource::Category(categories[k].clone())
            }
            ColumnEncoding::Binary => LiteralSource::Binary,
        };
        Some((ci, src))
    }

    pub fn literal_labels(&self) -> Vec<LiteralLabels> {
        (0..self.n_literals)
            .map(|j| {
                let (ci, src) = self.decode(j).expect("literal in range");
                let name = &self.columns[ci].name;
                match src {
                    LiteralSource::Bin {
                        lo,
                        hi,
                        closed_right,
                        ..
                    } => {
                        let close = if closed_right { ']' } else { ')' };
                        let range = format!("[{}, {}{close}", fmt_num(lo), fmt_num(hi));
                        LiteralLabels {
                            positive: format!("{name} ∈ {range}"),
                            negative: format!("{name} ∉ {range}"),
                        }
                    }
                    LiteralSource::Category(v) => LiteralLabels {
                        positive: format!("{name} = \"{v}\""),
                        negative: format!("{name} ≠ \"{v}\""),
                    },
                    LiteralSource::Binary => LiteralLabels {
                        positive: format!("{name} = 1"),
                        negative: format!("{name} = 0"),
                    },
                }
            })
            .collect()
    }
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Rows with identical bit patterns, aggregated with per-group counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub words: Vec<u64>,
    pub mu: u64,
    pub nu: u64,
}

impl Pattern {
    #[inline]
    pub fn bit(&self, j: usize) -> bool {
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }
}

/// Immutable bit matrix of literal columns with a group label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryDataset {
    n_features: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    groups: Vec<Group>,
    n_mu: usize,
    n_nu: usize,
    labels: Vec<LiteralLabels>,
    group_names: [String; 2],
}

impl BinaryDataset {
    pub fn from_rows<I, R>(n_features: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (R, Group)>,
        R: AsRef<[bool]>,
    {
        let words_per_row = n_features.div_ceil(64).max(1);
        let mut bits = Vec::new();
        let mut groups = Vec::new();
        for (i, (row, g)) in rows.into_iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_features {
                return Err(MsdError::InvalidDataset(format!(
                    "row {i} has {} features, expected {n_features}",
                    row.len()
                )));
            }
            let start = bits.len();
            bits.resize(start + words_per_row, 0u64);
            for (j, &b) in row.iter().enumerate() {
                if b {
                    bits[start + j / 64] |= 1 << (j % 64);
                }
            }
            groups.push(g);
        }
        let n_mu = groups.iter().filter(|&&g| g == Group::Mu).count();
        let n_nu = groups.len() - n_mu;
        if n_mu == 0 || n_nu == 0 {
            return Err(MsdError::InvalidDataset(format!(
                "both groups need at least one row (got {n_mu} and {n_nu})"
            )));
        }
        Ok(BinaryDataset {
            n_features,
            words_per_row,
            bits,
            groups,
            n_mu,
            n_nu,
            labels: (0..n_features).map(LiteralLabels::generic).collect(),
            group_names: ["mu".into(), "nu".into()],
        })
    }

    /// Builds a dataset from 0/1 rows of each group; `mu` rows come first.
    pub fn from_groups<R: AsRef<[u8]>>(mu: &[R], nu: &[R]) -> Result<Self> {
        let n_features = mu
            .first()
            .or(nu.first())
            .map(|r| r.as_ref().len())
            .unwrap_or(0);
        let mut rows = Vec::with_capacity(mu.len() + nu.len());
        for (src, g) in [(mu, Group::Mu), (nu, Group::Nu)] {
            for r in src {
                let r = r.as_ref();
                if let Some(v) = r.iter().find(|&&v| v > 1) {
                    return Err(MsdError::InvalidDataset(format!(
                        "entries must be 0 or 1, found {v}"
                    )));
                }
                rows.push((r.iter().map(|&v| v == 1).collect::<Vec<_>>(), g));
            }
        }
        BinaryDataset::from_rows(n_features, rows)
    }

    pub fn with_labels(mut self, labels: Vec<LiteralLabels>) -> Result<Self> {
        if labels.len() != self.n_features {
            return Err(MsdError::InvalidDataset(format!(
                "{} labels for {} features",
                labels.len(),
                self.n_features
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_group_names(mut self, names: [String; 2]) -> Self {
        self.group_names = names;
        self
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_rows(&self) -> usize {
        self.groups.len()
    }

    pub fn n_mu(&self) -> usize {
        self.n_mu
    }

    pub fn n_nu(&self) -> usize {
        self.n_nu
    }

    pub fn group_size(&self, g: Group) -> usize {
        match g {
            Group::Mu => self.n_mu,
            Group::Nu => self.n_nu,
        }
    }

    pub fn group(&self, row: usize) -> Group {
        self.groups[row]
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn group_names(&self) -> &[String; 2] {
        &self.group_names
    }

    pub fn labels(&self) -> &[LiteralLabels] {
        &self.labels
    }

    pub fn row_words(&self, row: usize) -> &[u64] {
        let s = row * self.words_per_row;
        &self.bits[s..s + self.words_per_row]
    }

    #[inline]
    pub fn bit(&self, row: usize, j: usize) -> bool {
        debug_assert!(j < self.n_features);
        (self.bits[row * self.words_per_row + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn row(&self, row: usize) -> Vec<bool> {
        (0..self.n_features).map(|j| self.bit(row, j)).collect()
    }

    pub fn term_matches(&self, term: &Term, row: usize) -> bool {
        term.matches_with(|j| self.bit(row, j))
    }

    /// Number of rows of each group satisfying `term`.
    pub fn support(&self, term: &Term) -> (u64, u64) {
        let mut counts = (0, 0);
        for row in 0..self.n_rows() {
            if self.term_matches(term, row) {
                match self.groups[row] {
                    Group::Mu => counts.0 += 1,
                    Group::Nu => counts.1 += 1,
                }
            }
        }
        counts
    }

    /// Rows at the given indices, keeping labels and group names.
    pub fn subset(&self, rows: &[usize]) -> Result<Self> {
        let mut bits = Vec::with_capacity(rows.len() * self.words_per_row);
        let mut groups = Vec::with_capacity(rows.len());
        for &r in rows {
            bits.extend_from_slice(self.row_words(r));
            groups.push(self.groups[r]);
        }
        let n_mu = groups.iter().filter(|&&g| g == Group::Mu).count();
        let n_nu = groups.len() - n_mu;
        if n_mu == 0 || n_nu == 0 {
            return Err(MsdError::InvalidDataset(format!(
                "subset leaves a group empty ({n_mu} and {n_nu} rows)"
            )));
        }
        Ok(BinaryDataset {
            n_features: self.n_features,
            words_per_row: self.words_per_row,
            bits,
            groups,
            n_mu,
            n_nu,
            labels: self.labels.clone(),
            group_names: self.group_names.clone(),
        })
    }

    /// The same rows with the roles of the two groups exchanged.
    pub fn swap_groups(&self) -> Self {
        let mut out = self.clone();
        for g in &mut out.groups {
            *g = g.other();
        }
        std::mem::swap(&mut out.n_mu, &mut out.n_nu);
        out.group_names.swap(0, 1);
        out
    }

    /// Distinct bit patterns with their per-group multiplicities, sorted by
    /// pattern.
    pub fn aggregate(&self) -> Vec<Pattern> {
        let mut map: BTreeMap<&[u64], (u64, u64)> = BTreeMap::new();
        for row in 0..self.n_rows() {
            let e = map.entry(self.row_words(row)).or_default();
            match self.groups[row] {
                Group::Mu => e.0 += 1,
                Group::Nu => e.1 += 1,
            }
        }
        map.into_iter()
            .map(|(w, (mu, nu))| Pattern {
                words: w.to_vec(),
                mu,
                nu,
            })
            .collect()
    }

    /// Human-readable conjunction, e.g. `race = "Blue" AND age ∈ [0, 10)`.
    pub fn describe(&self, term: &Term) -> String {
        if term.is_empty() {
            return "TRUE".to_string();
        }
        term.literals()
            .iter()
            .map(|l| self.labels[l.feature].get(l.polarity))
            .collect::<Vec<_>>()
            .join(" AND ")
    }

    /// Inverse of [`describe`](Self::describe).
    /// Writes the literal columns as 0/1 under the headers `column_names`,
    /// followed by `group_column` holding the group names.
    pub fn write_csv<W: std::io::Write>(
        &self,
        out: W,
        column_names: &[String],
        group_column: &str,
    ) -> Result<()> {
        if column_names.len() != self.n_features {
            return Err(MsdError::InvalidDataset(format!(
                "{} column names for {} features",
                column_names.len(),
                self.n_features
            )));
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(
            column_names
                .iter()
                .map(String::as_str)
                .chain([group_column]),
        )?;
        let mut record = Vec::with_capacity(self.n_features + 1);
        for r in 0..self.n_rows() {
            record.clear();
            record.extend((0..self.n_features).map(|j| if self.bit(r, j) { "1" } else { "0" }));
            record.push(self.group_names[self.group(r).index()].as_str());
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| MsdError::io("<csv>", e))?;
        Ok(())
    }

    pub fn parse_description(&self, text: &str) -> Result<Term> {
        let text = text.trim();
        if text == "TRUE" {
            return Ok(Term::empty());
        }
        let mut lookup: HashMap<&str, Literal> = HashMap::new();
        for (j, l) in self.labels.iter().enumerate() {
            lookup.insert(l.positive.as_str(), Literal::positive(j));
            lookup.insert(l.negative.as_str(), Literal::negative(j));
        }
        let lits = text
            .split(" AND ")
            .map(|part| {
                lookup
                    .get(part.trim())
                    .copied()
                    .ok_or_else(|| MsdError::Description(format!("unknown literal `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Term::new(lits)
    }
}
