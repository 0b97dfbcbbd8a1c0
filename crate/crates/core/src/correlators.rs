//! Genus-zero correlators `<I_{0,n,beta}>(T_{c_1} ⊗ ... ⊗ T_{c_n})`: canonical keys, the
//! axioms as normalizing reductions, and the exact-valued table with CSV/JSON export.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, int, parse_rational, QuotedRational, Rational, Sign};
use crate::target::{Beta, GwTarget, TargetError};

/// Sorted insertion list, the sign picked up while sorting, and whether an odd class repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub classes: Vec<usize>,
    pub sign: Sign,
    pub forced_zero: bool,
}

/// Sorts insertions ascending; each transposition of two odd classes contributes `-1`.
pub fn canonicalize(t: &GwTarget, classes: &[usize]) -> Canonical {
    let mut inversions = 0usize;
    for (p, &a) in classes.iter().enumerate() {
        if !t.is_odd(a) {
            continue;
        }
        inversions += classes[p + 1..].iter().filter(|&&b| b < a && t.is_odd(b)).count();
    }
    let mut sorted = classes.to_vec();
    sorted.sort_unstable();
    let forced_zero = sorted.windows(2).any(|w| w[0] == w[1] && t.is_odd(w[0]));
    Canonical { classes: sorted, sign: Sign::from_odd(inversions % 2 == 1), forced_zero }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorrelatorKey {
    pub beta: Beta,
    /// Sorted ascending.
    pub classes: Vec<usize>,
}

impl CorrelatorKey {
    pub fn new(beta: Beta, mut classes: Vec<usize>) -> Self {
        classes.sort_unstable();
        Self { beta, classes }
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    /// Cell of the reconstruction order.
    pub fn cell(&self) -> (Beta, usize) {
        (self.beta.clone(), self.n())
    }

    /// `<H,H2,H2>_1` using the target's class names.
    pub fn display(&self, t: &GwTarget) -> String {
        let names: Vec<String> = self.classes.iter().map(|&c| t.label(c)).collect();
        format!("⟨{}⟩_{}", names.join(","), format_beta(&self.beta))
    }

    /// Parses `beta:classes`, e.g. `3:2,2,2` or `1,0:H1,H1,pt`; class names are resolved.
    pub fn parse(t: &GwTarget, s: &str) -> Result<Self, KeyParseError> {
        let bad = || KeyParseError::Syntax(s.to_string());
        let (b, c) = s.split_once(':').ok_or_else(bad)?;
        let beta = b
            .split([',', ';'])
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Beta, _>>()?;
        if beta.len() != t.rank() {
            return Err(KeyParseError::Rank { expected: t.rank(), found: beta.len() });
        }
        let classes = c
            .split([',', ';'])
            .map(|x| t.class_by_symbol(x.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(beta, classes))
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", join(&self.beta, ","), join(&self.classes, ","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyParseError {
    #[error("malformed correlator key '{0}' (expected beta:classes, e.g. 3:2,2,2)")]
    Syntax(String),
    #[error("curve class has {found} coordinates, the lattice has rank {expected}")]
    Rank { expected: usize, found: usize },
    #[error(transparent)]
    Symbol(#[from] TargetError),
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn format_beta(beta: &[i64]) -> String {
    if beta.len() == 1 {
        beta[0].to_string()
    } else {
        format!("({})", join(beta, ","))
    }
}

/// Which axiom settled a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Unstable,
    Effectivity,
    Grading,
    FundamentalClass,
    Classical,
    Divisor,
    OddRepeat,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Unstable => "n < 3 ⇒ 0",
            Rule::Effectivity => "non-effective ⇒ 0",
            Rule::Grading => "grading ⇒ 0",
            Rule::FundamentalClass => "fundamental class",
            Rule::Classical => "classical triple integral",
            Rule::Divisor => "divisor with β·γ = 0 ⇒ 0",
            Rule::OddRepeat => "repeated odd class ⇒ 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Value(Rational, Rule),
    /// `value = multiplier · <classes>_beta`, after stripping the divisor class `stripped`.
    Reduced { classes: Vec<usize>, multiplier: Rational, stripped: usize },
    Irreducible(CorrelatorKey),
}

/// One reduction step on canonically sorted insertions.
pub fn reduce(t: &GwTarget, classes: &[usize], beta: &[i64]) -> Reduction {
    let n = classes.len();
    if n < 3 {
        return Reduction::Value(Rational::zero(), Rule::Unstable);
    }
    if !t.is_effective(beta) {
        return Reduction::Value(Rational::zero(), Rule::Effectivity);
    }
    let total: Rational = classes.iter().map(|&c| t.st_degree(c)).sum();
    if Ok(total) != t.selection_degree(n, beta) {
        return Reduction::Value(Rational::zero(), Rule::Grading);
    }
    let classical = GwTarget::is_zero_class(beta);
    if classes[0] == 0 {
        let v = if classical && n == 3 {
            t.pairing_entry(classes[1], classes[2]).clone()
        } else {
            Rational::zero()
        };
        return Reduction::Value(v, Rule::FundamentalClass);
    }
    if classical && n == 3 {
        return Reduction::Value(
            t.triple_integral(classes[0], classes[1], classes[2]),
            Rule::Classical,
        );
    }
    if n > 3 {
        if let Some(pos) = classes.iter().position(|&c| t.divisor(c).is_some()) {
            let stripped = classes[pos];
            let m = t.divisor_pairing(stripped, beta).expect("divisor class");
            if m == 0 {
                return Reduction::Value(Rational::zero(), Rule::Divisor);
            }
            let mut rest = classes.to_vec();
            rest.remove(pos);
            return Reduction::Reduced { classes: rest, multiplier: int(m), stripped };
        }
    }
    Reduction::Irreducible(CorrelatorKey::new(beta.to_vec(), classes.to_vec()))
}

/// Result of running [`reduce`] to a fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Terminal {
    Value(Rational, Rule),
    /// `value = multiplier · <key>`.
    Irreducible { key: CorrelatorKey, multiplier: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub terminal: Terminal,
    /// Divisor classes stripped on the way, with their factors.
    pub strips: Vec<(usize, Rational)>,
}

/// Canonicalizes and reduces until a value or an irreducible key remains.
pub fn normalize(t: &GwTarget, classes: &[usize], beta: &[i64]) -> Normalized {
    let canon = canonicalize(t, classes);
    if canon.forced_zero {
        return Normalized { terminal: Terminal::Value(Rational::zero(), Rule::OddRepeat), strips: vec![] };
    }
    let mut mult = canon.sign.apply(int(1));
    let mut cur = canon.classes;
    let mut strips = Vec::new();
    loop {
        match reduce(t, &cur, beta) {
            Reduction::Value(v, rule) => {
                return Normalized { terminal: Terminal::Value(v * mult, rule), strips };
            }
            Reduction::Reduced { classes, multiplier, stripped } => {
                mult *= &multiplier;
                strips.push((stripped, multiplier));
                cur = classes;
            }
            Reduction::Irreducible(key) => {
                return Normalized { terminal: Terminal::Irreducible { key, multiplier: mult }, strips };
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrelatorError {
    #[error("unknown correlator {0}")]
    Unknown(CorrelatorKey),
}

/// Anything that can supply values of irreducible correlators.
pub trait CorrelatorSource {
    fn lookup(&self, key: &CorrelatorKey) -> Option<Rational>;
}

/// Value of `<T_{c_1},...,T_{c_n}>_beta` in the given insertion order.
pub fn evaluate<S: CorrelatorSource + ?Sized>(
    t: &GwTarget,
    source: &S,
    classes: &[usize],
    beta: &[i64],
) -> Result<Rational, CorrelatorError> {
    match normalize(t, classes, beta).terminal {
        Terminal::Value(v, _) => Ok(v),
        Terminal::Irreducible { key, multiplier } => match source.lookup(&key) {
            Some(v) => Ok(v * multiplier),
            None => Err(CorrelatorError::Unknown(key)),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Seed,
    Reduced,
    Reconstructed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Seed => "seed",
            Provenance::Reduced => "reduced",
            Provenance::Reconstructed => "reconstructed",
        })
    }
}

impl FromStr for Provenance {
    type Err = TableFileError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "seed" => Ok(Provenance::Seed),
            "reduced" => Ok(Provenance::Reduced),
            "reconstructed" => Ok(Provenance::Reconstructed),
            other => Err(TableFileError::Malformed(format!("unknown provenance '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub value: Rational,
    pub provenance: Provenance,
}

#[derive(Debug, thiserror::Error)]
pub enum TableFileError {
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("malformed table: {0}")]
    Malformed(String),
}

impl From<serde_json::Error> for TableFileError {
    fn from(e: serde_json::Error) -> Self {
        TableFileError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    beta: Vec<i64>,
    classes: Vec<usize>,
    value: QuotedRational,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    beta: String,
    classes: String,
    value: String,
    provenance: String,
}

/// Values of irreducible (or classical) correlators, keyed canonically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrelatorTable {
    entries: BTreeMap<CorrelatorKey, Entry>,
}

impl CorrelatorSource for CorrelatorTable {
    fn lookup(&self, key: &CorrelatorKey) -> Option<Rational> {
        self.entries.get(key).map(|e| e.value.clone())
    }
}

impl CorrelatorTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The target's seeds, canonicalized. Seeds fixed by an axiom are skipped.
    pub fn from_seeds(t: &GwTarget) -> Self {
        let mut table = Self::new();
        for s in &t.seeds {
            if let Terminal::Irreducible { key, multiplier } = normalize(t, &s.classes, &s.beta).terminal {
                // seed value is in the given order; multiplier carries the sorting sign
                table.insert(key, &s.value * multiplier, Provenance::Seed);
            }
        }
        table
    }

    pub fn insert(&mut self, key: CorrelatorKey, value: Rational, provenance: Provenance) {
        self.entries.insert(key, Entry { value, provenance });
    }

    pub fn get(&self, key: &CorrelatorKey) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub fn get_or_fail(&self, key: &CorrelatorKey) -> Result<Rational, CorrelatorError> {
        self.lookup(key).ok_or_else(|| CorrelatorError::Unknown(key.clone()))
    }

    pub fn contains(&self, key: &CorrelatorKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CorrelatorKey, &Entry)> {
        self.entries.iter()
    }

    pub fn extend(&mut self, other: CorrelatorTable) {
        self.entries.extend(other.entries);
    }

    pub fn count(&self, provenance: Provenance) -> usize {
        self.entries.values().filter(|e| e.provenance == provenance).count()
    }

    pub fn export(&self, format: TableFormat) -> Result<String, TableFileError> {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => Ok(self.to_json()),
        }
    }

    pub fn import(text: &str, format: TableFormat) -> Result<Self, TableFileError> {
        match format {
            TableFormat::Csv => Self::from_csv(text),
            TableFormat::Json => Self::from_json(text),
        }
    }

    pub fn to_csv(&self) -> Result<String, TableFileError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (k, e) in &self.entries {
            w.serialize(CsvRow {
                beta: join(&k.beta, ";"),
                classes: join(&k.classes, ";"),
                value: format_rational(&e.value),
                provenance: e.provenance.to_string(),
            })?;
        }
        if self.entries.is_empty() {
            w.write_record(["beta", "classes", "value", "provenance"])?;
        }
        let bytes = w.into_inner().map_err(|e| TableFileError::Malformed(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<Self, TableFileError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut table = Self::new();
        for (line, row) in r.deserialize::<CsvRow>().enumerate() {
            let row = row?;
            let at = |m: String| TableFileError::Malformed(format!("row {}: {m}", line + 2));
            let ints = |s: &str| -> Result<Vec<i64>, TableFileError> {
                s.split(';')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| at(format!("bad integer '{x}'"))))
                    .collect()
            };
            let beta = ints(&row.beta)?;
            let classes = ints(&row.classes)?
                .into_iter()
                .map(|c| usize::try_from(c).map_err(|_| at(format!("bad class id {c}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let value = parse_rational(&row.value).map_err(|e| at(e.to_string()))?;
            let provenance = row.provenance.parse()?;
            table.insert_checked(beta, classes, value, provenance)?;
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<JsonRow> = self
            .entries
            .iter()
            .map(|(k, e)| JsonRow {
                beta: k.beta.clone(),
                classes: k.classes.clone(),
                value: QuotedRational(e.value.clone()),
                provenance: e.provenance.to_string(),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, TableFileError> {
        let rows: Vec<JsonRow> = serde_json::from_str(text)?;
        let mut table = Self::new();
        for row in rows {
            table.insert_checked(row.beta, row.classes, row.value.0, row.provenance.parse()?)?;
        }
        Ok(table)
    }

    fn insert_checked(
        &mut self,
        beta: Vec<i64>,
        classes: Vec<usize>,
        value: Rational,
        provenance: Provenance,
    ) -> Result<(), TableFileError> {
        if classes.windows(2).any(|w| w[0] > w[1]) {
            return Err(TableFileError::Malformed(format!("classes {classes:?} are not sorted")));
        }
        let key = CorrelatorKey { beta, classes };
        if self.entries.contains_key(&key) {
            return Err(TableFileError::Malformed(format!("duplicate key {key}")));
        }
        self.insert(key, value, provenance);
        Ok(())
    }

    /// Overwrites a stored value, returning the previous one. Meant for perturbation checks.
    pub fn set_value(&mut self, key: &CorrelatorKey, value: Rational) -> Option<Rational> {
        self.entries.get_mut(key).map(|e| std::mem::replace(&mut e.value, value))
    }
}
