//! Reconstruction of every genus-zero correlator from three-point seeds by WDVV induction.
//!
//! For an irreducible key the insertion of least st-degree, `gamma`, is factored as
//! `gamma = sum delta' ∪ delta` with `delta` a divisor. With two further insertions `a, b`
//! and the rest `S`, write
//!
//! ```text
//! B(x,y|z,w) = sum_{beta1+beta2=beta} sum_{A ⊔ B = S} sum_{e,f} <x,y,A,T_e>_{beta1} g^{ef} <T_f,z,w,B>_{beta2}.
//! ```
//!
//! WDVV gives `B(a,b|delta',delta) = B(b,delta'|a,delta)`, and the `(beta1, A) = (beta, S)`
//! term on the left is exactly the unknown `<a,b,S,delta'∪delta>`. Every other term lies
//! in a strictly lower cell `(beta, n)`, loses its divisor to the divisor axiom, or stays
//! in the same cell with an insertion of smaller st-degree, so the recursion is well founded.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::rational::binomial;
use crate::algebra::{format_rational, int, Rational};
use crate::correlators::{
    format_beta, normalize, CorrelatorError, CorrelatorKey, CorrelatorSource, CorrelatorTable,
    Provenance, Rule, Terminal,
};
use crate::target::{Beta, ClassVector, Factorization, GwTarget, TargetError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReconstructError {
    #[error("target is invalid:\n{0}")]
    InvalidTarget(String),
    #[error("target is outside the reconstruction hypothesis: {0}")]
    NotReconstructible(String),
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error("missing seeds: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))]
    MissingSeeds(Vec<CorrelatorKey>),
    #[error("dependency cycle at {0} (scheduler bug)")]
    Cycle(CorrelatorKey),
    #[error(transparent)]
    Correlator(#[from] CorrelatorError),
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(i64),
}

/// The partial order on cells `(beta, n)`.
pub struct CellOrder;

impl CellOrder {
    /// `Greater` iff `beta - beta'` is effective and nonzero, or `beta = beta'` and `n > n'`.
    pub fn compare(a: (&[i64], usize), b: (&[i64], usize)) -> Option<Ordering> {
        let (ba, na) = a;
        let (bb, nb) = b;
        if ba == bb {
            return Some(na.cmp(&nb));
        }
        if ba.iter().zip(bb).all(|(x, y)| x >= y) {
            return Some(Ordering::Greater);
        }
        if ba.iter().zip(bb).all(|(x, y)| x <= y) {
            return Some(Ordering::Less);
        }
        None
    }
}

/// How a stored value was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Seed,
    Classical,
    Wdvv {
        /// The factored insertion and its factorization `sum delta' ∪ delta`.
        gamma: usize,
        factors: Vec<(ClassVector, usize)>,
        /// The two insertions paired with `delta'` and `delta` in the WDVV instance.
        pair: (usize, usize),
        deps: BTreeSet<CorrelatorKey>,
    },
}

/// Selects among equivalent WDVV instances; used to cross-check uniqueness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstanceChoice {
    /// Index into the ordered pairs of remaining insertions used as `(a, b)`.
    pub pair: usize,
    /// Divisor to use as `delta` wherever the generation data allows it.
    pub preferred: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub cells: usize,
    pub reconstructed: usize,
    pub seeds: usize,
    pub classical: usize,
}

/// Checks that `t` satisfies the hypotheses the scheduler relies on.
pub fn check_reconstructible(t: &GwTarget) -> Result<(), ReconstructError> {
    let report = t.validate();
    if !report.is_valid() {
        let msgs: Vec<String> = report.errors().map(ToString::to_string).collect();
        return Err(ReconstructError::InvalidTarget(msgs.join("\n")));
    }
    if t.has_odd_classes() {
        return Err(ReconstructError::NotReconstructible(
            "odd-degree classes present; seed sufficiency is only claimed for even cohomology".into(),
        ));
    }
    if !t.pairing_is_symmetric() {
        return Err(ReconstructError::NotReconstructible("pairing is not symmetric".into()));
    }
    if let Some(i) = t.lattice.c1.iter().position(|&c| c <= 0) {
        return Err(TargetError::UnboundedCutoff(i).into());
    }
    for i in 1..t.len() {
        if t.divisor(i).is_some() {
            continue;
        }
        if t.st_degree(i) <= int(2) {
            return Err(ReconstructError::NotReconstructible(format!(
                "class {} has st-degree at most 2 but is not an untwisted divisor",
                t.label(i)
            )));
        }
        t.factor_through_degree2(i)?;
    }
    Ok(())
}

fn min_slot(t: &GwTarget, classes: &[usize]) -> usize {
    let mut best = 0;
    for (p, &c) in classes.iter().enumerate() {
        if t.st_degree(c) < t.st_degree(classes[best]) {
            best = p;
        }
    }
    best
}

/// Irreducible three-point keys that no WDVV instance can reach: one insertion of
/// st-degree at most 2.
fn needs_seed(t: &GwTarget, key: &CorrelatorKey) -> bool {
    key.n() == 3 && t.st_degree(key.classes[min_slot(t, &key.classes)]) <= int(2)
}

/// The seeds a reconstruction up to `beta . c1 <= max_c1` needs.
pub fn required_seeds(t: &GwTarget, max_c1: i64) -> Result<Vec<CorrelatorKey>, ReconstructError> {
    let m = t.len();
    let mut out = BTreeSet::new();
    for beta in t.effective_classes(max_c1)? {
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    if let Terminal::Irreducible { key, .. } = normalize(t, &[a, b, c], &beta).terminal {
                        if needs_seed(t, &key) {
                            out.insert(key);
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Multisets of size `n` over `allowed` (ascending) whose st-degrees sum to `total`.
fn multisets(t: &GwTarget, allowed: &[usize], n: usize, total: &Rational) -> Vec<Vec<usize>> {
    fn rec(
        t: &GwTarget,
        allowed: &[usize],
        left: usize,
        rem: Rational,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rem < Rational::zero() {
            return;
        }
        if left == 0 {
            if rem.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        for (k, &c) in allowed.iter().enumerate() {
            cur.push(c);
            rec(t, &allowed[k..], left - 1, &rem - t.st_degree(c), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, allowed, n, total.clone(), &mut Vec::new(), &mut out);
    out
}

/// Irreducible keys of a cell.
fn cell_keys(t: &GwTarget, beta: &[i64], n: usize) -> Result<Vec<CorrelatorKey>, ReconstructError> {
    let total = t.selection_degree(n, beta)?;
    // for n > 3 only insertions the axioms cannot remove can survive
    let allowed: Vec<usize> = (0..t.len())
        .filter(|&c| n == 3 || (c != 0 && t.divisor(c).is_none()))
        .collect();
    let mut out = Vec::new();
    for classes in multisets(t, &allowed, n, &total) {
        if let Terminal::Irreducible { key, .. } = normalize(t, &classes, beta).terminal {
            out.push(key);
        }
    }
    Ok(out)
}

/// Demand-driven evaluator over a frozen base table and a private overlay.
struct Solver<'a> {
    t: &'a GwTarget,
    base: &'a CorrelatorTable,
    local: CorrelatorTable,
    derivations: BTreeMap<CorrelatorKey, Derivation>,
    trace: bool,
    choice: InstanceChoice,
    diag: Vec<(usize, usize, Rational)>,
    in_progress: BTreeSet<CorrelatorKey>,
    deps: Vec<BTreeSet<CorrelatorKey>>,
}

impl<'a> Solver<'a> {
    fn new(t: &'a GwTarget, base: &'a CorrelatorTable, trace: bool, choice: InstanceChoice) -> Result<Self, ReconstructError> {
        Ok(Self {
            t,
            base,
            local: CorrelatorTable::new(),
            derivations: BTreeMap::new(),
            trace,
            choice,
            diag: t.diagonal_class()?,
            in_progress: BTreeSet::new(),
            deps: Vec::new(),
        })
    }

    fn value(&mut self, classes: &[usize], beta: &[i64]) -> Result<Rational, ReconstructError> {
        match normalize(self.t, classes, beta).terminal {
            Terminal::Value(v, rule) => {
                if self.trace && rule == Rule::Classical && !v.is_zero() {
                    if let Some(d) = self.deps.last_mut() {
                        d.insert(CorrelatorKey::new(beta.to_vec(), classes.to_vec()));
                    }
                }
                Ok(v)
            }
            Terminal::Irreducible { key, multiplier } => Ok(self.irreducible(&key)? * multiplier),
        }
    }

    fn lookup(&self, key: &CorrelatorKey) -> Option<Rational> {
        self.local.lookup(key).or_else(|| self.base.lookup(key))
    }

    fn irreducible(&mut self, key: &CorrelatorKey) -> Result<Rational, ReconstructError> {
        if self.trace {
            if let Some(d) = self.deps.last_mut() {
                d.insert(key.clone());
            }
        }
        if let Some(v) = self.lookup(key) {
            return Ok(v);
        }
        let v = self.solve(key)?;
        self.local.insert(key.clone(), v.clone(), Provenance::Reconstructed);
        Ok(v)
    }

    /// Runs the WDVV instance for `key` even if a value is already known.
    fn solve(&mut self, key: &CorrelatorKey) -> Result<Rational, ReconstructError> {
        let t = self.t;
        if needs_seed(t, key) {
            return Err(ReconstructError::MissingSeeds(vec![key.clone()]));
        }
        if !self.in_progress.insert(key.clone()) {
            return Err(ReconstructError::Cycle(key.clone()));
        }
        if self.trace {
            self.deps.push(BTreeSet::new());
        }
        let result = self.solve_inner(key);
        self.in_progress.remove(key);
        let deps = if self.trace { self.deps.pop().unwrap_or_default() } else { BTreeSet::new() };
        let (v, gamma, factors, pair) = result?;
        if self.trace {
            self.derivations.insert(key.clone(), Derivation::Wdvv { gamma, factors, pair, deps });
        }
        Ok(v)
    }

    #[allow(clippy::type_complexity)]
    fn solve_inner(
        &mut self,
        key: &CorrelatorKey,
    ) -> Result<(Rational, usize, Vec<(ClassVector, usize)>, (usize, usize)), ReconstructError> {
        let t = self.t;
        let beta = &key.beta;
        let p = min_slot(t, &key.classes);
        let gamma = key.classes[p];
        let mut rest = key.classes.clone();
        rest.remove(p);
        let pairs: Vec<(usize, usize)> = (0..rest.len())
            .flat_map(|x| (0..rest.len()).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        let (pa, pb) = pairs[self.choice.pair % pairs.len()];
        let (a, b) = (rest[pa], rest[pb]);
        let s: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pa && k != pb)
            .map(|(_, &c)| c)
            .collect();
        let factors = match t.factor_preferring(gamma, self.choice.preferred)? {
            Factorization::Products(f) => f,
            Factorization::Trivial => {
                return Err(ReconstructError::NotReconstructible(format!(
                    "irreducible {} has no factorable insertion",
                    key.display(t)
                )))
            }
        };
        if self.trace {
            // the unknown is isolated through <T_f, delta', delta>_0 = coefficient of delta' ∪ delta
            let zero = vec![0i64; t.rank()];
            let deps = self.deps.last_mut().expect("pushed by solve");
            for (prime, delta) in &factors {
                for &i in prime.keys() {
                    for f in 0..t.len() {
                        if !t.triple_integral(i, *delta, f).is_zero() {
                            deps.insert(CorrelatorKey::new(zero.clone(), vec![i, *delta, f]));
                        }
                    }
                }
            }
        }
        let unit = |i: usize| ClassVector::from([(i, int(1))]);
        let mut total = Rational::zero();
        for (prime, delta) in &factors {
            let d = unit(*delta);
            let right = self.boundary(&unit(b), prime, &unit(a), &d, &s, beta, false)?;
            let left = self.boundary(&unit(a), &unit(b), prime, &d, &s, beta, true)?;
            total += right - left;
        }
        Ok((total, gamma, factors, (a, b)))
    }

    /// `B(x,y|z,w)` over the insertions `s`; `skip_top` drops the `(beta, S)` term.
    #[allow(clippy::too_many_arguments)]
    fn boundary(
        &mut self,
        x: &ClassVector,
        y: &ClassVector,
        z: &ClassVector,
        w: &ClassVector,
        s: &[usize],
        beta: &[i64],
        skip_top: bool,
    ) -> Result<Rational, ReconstructError> {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &c in s {
            match groups.last_mut() {
                Some((g, m)) if *g == c => *m += 1,
                _ => groups.push((c, 1)),
            }
        }
        let diag = self.diag.clone();
        let mut total = Rational::zero();
        for (b1, b2) in self.t.splittings(beta)? {
            let mut take = vec![0usize; groups.len()];
            loop {
                let full = take.iter().zip(&groups).all(|(k, (_, m))| k == m);
                if !(skip_top && full && b1 == beta) {
                    let mut weight = int(1);
                    let mut a_part = Vec::new();
                    let mut b_part = Vec::new();
                    for (k, &(c, m)) in take.iter().zip(&groups) {
                        weight *= Rational::from_integer(binomial(m as u32, *k as u32));
                        a_part.extend(std::iter::repeat_n(c, *k));
                        b_part.extend(std::iter::repeat_n(c, m - k));
                    }
                    for (e, f, g) in &diag {
                        let mut tail = a_part.clone();
                        tail.push(*e);
                        let l = self.pair_value(x, y, &tail, &b1)?;
                        if l.is_zero() {
                            continue;
                        }
                        let mut head = vec![*f];
                        head.extend(&b_part);
                        let r = self.pair_value(z, w, &head, &b2)?;
                        total += &weight * l * g * r;
                    }
                }
                // odometer over sub-multisets
                let mut k = 0;
                loop {
                    if k == groups.len() {
                        break;
                    }
                    if take[k] < groups[k].1 {
                        take[k] += 1;
                        break;
                    }
                    take[k] = 0;
                    k += 1;
                }
                if k == groups.len() {
                    break;
                }
            }
        }
        Ok(total)
    }

    /// `sum x_i y_j <T_i, T_j, others>`.
    fn pair_value(
        &mut self,
        x: &ClassVector,
        y: &ClassVector,
        others: &[usize],
        beta: &[i64],
    ) -> Result<Rational, ReconstructError> {
        let mut total = Rational::zero();
        for (&i, xi) in x {
            for (&j, yj) in y {
                let mut classes = vec![i, j];
                classes.extend_from_slice(others);
                let v = self.value(&classes, beta)?;
                if !v.is_zero() {
                    total += xi * yj * v;
                }
            }
        }
        Ok(total)
    }
}

type CellOutput = (CorrelatorTable, BTreeMap<CorrelatorKey, Derivation>);

/// Drives reconstruction and owns the resulting table.
pub struct Reconstructor<'t> {
    target: &'t GwTarget,
    table: CorrelatorTable,
    derivations: BTreeMap<CorrelatorKey, Derivation>,
    trace: bool,
    jobs: Option<usize>,
}

impl<'t> Reconstructor<'t> {
    pub fn new(target: &'t GwTarget) -> Result<Self, ReconstructError> {
        check_reconstructible(target)?;
        let table = CorrelatorTable::from_seeds(target);
        let derivations = table.iter().map(|(k, _)| (k.clone(), Derivation::Seed)).collect();
        Ok(Self { target, table, derivations, trace: false, jobs: None })
    }

    /// Records the dependencies of every WDVV solve for [`Reconstructor::explain`].
    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    /// Worker threads for the exhaustive mode; `None` uses the global pool.
    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn target(&self) -> &GwTarget {
        self.target
    }

    pub fn table(&self) -> &CorrelatorTable {
        &self.table
    }

    pub fn into_table(self) -> CorrelatorTable {
        self.table
    }

    pub fn derivation(&self, key: &CorrelatorKey) -> Option<&Derivation> {
        self.derivations.get(key)
    }

    fn absorb(&mut self, local: CorrelatorTable, derivations: BTreeMap<CorrelatorKey, Derivation>) {
        self.table.extend(local);
        self.derivations.extend(derivations);
    }

    /// Demand-driven: computes `<classes>_beta` and exactly the cells it depends on.
    pub fn value(&mut self, classes: &[usize], beta: &[i64]) -> Result<Rational, ReconstructError> {
        let (v, local, derivs) = {
            let mut solver = Solver::new(self.target, &self.table, self.trace, InstanceChoice::default())?;
            let v = solver.value(classes, beta)?;
            (v, solver.local, solver.derivations)
        };
        self.absorb(local, derivs);
        Ok(v)
    }

    /// Re-solves `key` through a chosen WDVV instance, reading every other value from the
    /// table. Distinct choices must agree.
    pub fn solve_with_instance(&self, key: &CorrelatorKey, choice: InstanceChoice) -> Result<Rational, ReconstructError> {
        let mut solver = Solver::new(self.target, &self.table, false, choice)?;
        solver.solve(key)
    }

    /// Exhaustive: every irreducible correlator with `beta . c1 <= max_c1` and `n <= max_n`.
    /// Cells are processed in groups of equal `(|beta|, n)`, which are antichains of the
    /// cell order, so the cells of a group run concurrently.
    pub fn run(&mut self, max_c1: i64, max_n: usize) -> Result<Summary, ReconstructError> {
        let t = self.target;
        let missing: Vec<CorrelatorKey> = required_seeds(t, max_c1)?
            .into_iter()
            .filter(|k| !self.table.contains(k))
            .collect();
        if !missing.is_empty() {
            return Err(ReconstructError::MissingSeeds(missing));
        }
        let zero = vec![0i64; t.rank()];
        let mut classical = 0;
        for a in 0..t.len() {
            for b in a..t.len() {
                for c in b..t.len() {
                    if let Terminal::Value(v, _) = normalize(t, &[a, b, c], &zero).terminal {
                        if !v.is_zero() {
                            let key = CorrelatorKey::new(zero.clone(), vec![a, b, c]);
                            self.table.insert(key.clone(), v, Provenance::Reduced);
                            self.derivations.insert(key, Derivation::Classical);
                            classical += 1;
                        }
                    }
                }
            }
        }
        let mut groups: BTreeMap<(i64, usize), Vec<Beta>> = BTreeMap::new();
        for beta in t.effective_classes(max_c1)? {
            for n in 3..=max_n {
                groups.entry((beta.iter().sum(), n)).or_default().push(beta.clone());
            }
        }
        let cells = groups.values().map(Vec::len).sum();
        let pool = match self.jobs {
            Some(j) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| ReconstructError::NotReconstructible(e.to_string()))?,
            ),
            None => None,
        };
        let before = self.table.count(Provenance::Reconstructed);
        for ((_, n), betas) in groups {
            let base = &self.table;
            let trace = self.trace;
            let work = || -> Vec<Result<CellOutput, ReconstructError>> {
                betas
                    .par_iter()
                    .map(|beta| {
                        let mut solver = Solver::new(t, base, trace, InstanceChoice::default())?;
                        for key in cell_keys(t, beta, n)? {
                            solver.irreducible(&key)?;
                        }
                        Ok((solver.local, solver.derivations))
                    })
                    .collect()
            };
            let results = match &pool {
                Some(p) => p.install(work),
                None => work(),
            };
            let mut merged = Vec::with_capacity(results.len());
            for r in results {
                merged.push(r?);
            }
            for (local, derivs) in merged {
                self.absorb(local, derivs);
            }
        }
        Ok(Summary {
            cells,
            reconstructed: self.table.count(Provenance::Reconstructed) - before,
            seeds: self.table.count(Provenance::Seed),
            classical,
        })
    }

    /// Human-readable derivation tree of `<classes>_beta`.
    pub fn explain(&self, classes: &[usize], beta: &[i64]) -> Result<String, ReconstructError> {
        let t = self.target;
        let mut out = String::new();
        let shown = CorrelatorKey::new(beta.to_vec(), classes.to_vec());
        let norm = normalize(t, classes, beta);
        match norm.terminal {
            Terminal::Value(v, rule) => {
                let _ = writeln!(out, "{} = {}  [{rule}]", shown.display(t), format_rational(&v));
            }
            Terminal::Irreducible { key, multiplier } => {
                let v = self.table.get_or_fail(&key)? * &multiplier;
                if key != shown || multiplier != int(1) {
                    let strips: Vec<String> = norm
                        .strips
                        .iter()
                        .map(|(c, m)| format!("{} ↦ ×{}", t.label(*c), format_rational(m)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "{} = {} · {} = {}  [divisor: {}]",
                        shown.display(t),
                        format_rational(&multiplier),
                        key.display(t),
                        format_rational(&v),
                        strips.join(", ")
                    );
                    self.explain_key(&key, 1, &mut BTreeSet::new(), &mut out)?;
                } else {
                    self.explain_key(&key, 0, &mut BTreeSet::new(), &mut out)?;
                }
            }
        }
        Ok(out)
    }

    fn explain_key(
        &self,
        key: &CorrelatorKey,
        depth: usize,
        seen: &mut BTreeSet<CorrelatorKey>,
        out: &mut String,
    ) -> Result<(), ReconstructError> {
        let t = self.target;
        let pad = "  ".repeat(depth);
        if !self.table.contains(key) {
            // terms settled by the axioms are traced but not stored
            if let Terminal::Value(v, rule) = normalize(t, &key.classes, &key.beta).terminal {
                let _ = writeln!(out, "{pad}{} = {}  [{rule}]", key.display(t), format_rational(&v));
                return Ok(());
            }
        }
        let v = format_rational(&self.table.get_or_fail(key)?);
        let head = format!("{pad}{} = {v}", key.display(t));
        if !seen.insert(key.clone()) {
            let _ = writeln!(out, "{head}  (see above)");
            return Ok(());
        }
        match self.derivations.get(key) {
            Some(Derivation::Seed) => {
                let _ = writeln!(out, "{head}  [seed]");
            }
            Some(Derivation::Classical) => {
                let _ = writeln!(out, "{head}  [classical]");
            }
            Some(Derivation::Wdvv { gamma, factors, pair, deps }) => {
                let fac: Vec<String> = factors
                    .iter()
                    .map(|(prime, d)| {
                        let p: Vec<String> = prime
                            .iter()
                            .map(|(c, k)| {
                                if *k == int(1) {
                                    t.label(*c)
                                } else {
                                    format!("{}·{}", format_rational(k), t.label(*c))
                                }
                            })
                            .collect();
                        format!("({})∪{}", p.join("+"), t.label(*d))
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "{head}  [WDVV: {} = {}, paired with {}, {}]",
                    t.label(*gamma),
                    fac.join(" + "),
                    t.label(pair.0),
                    t.label(pair.1)
                );
                for d in deps {
                    self.explain_key(d, depth + 1, seen, out)?;
                }
            }
            None => {
                let _ = writeln!(out, "{head}  [{}]", self.table.get(key).map(|e| e.provenance).unwrap_or(Provenance::Reconstructed));
            }
        }
        Ok(())
    }
}

/// `N_d`, the number of rational plane curves of degree `d` through `3d - 1` points, from the
/// closed recursion `N_d = sum_{d1+d2=d} N_{d1} N_{d2} d1^2 d2 (d2 C(3d-4, 3d1-2) - d1 C(3d-4, 3d1-1))`.
pub fn oracle_recursion_p2(d: i64) -> Result<Rational, ReconstructError> {
    if d < 1 {
        return Err(ReconstructError::InvalidDegree(d));
    }
    let mut n: Vec<Rational> = vec![Rational::zero(), int(1)];
    for e in 2..=d {
        let mut acc = Rational::zero();
        for d1 in 1..e {
            let d2 = e - d1;
            let top = (3 * e - 4) as u32;
            let c1 = Rational::from_integer(binomial(top, (3 * d1 - 2) as u32));
            let c2 = Rational::from_integer(binomial(top, (3 * d1 - 1) as u32));
            let w = int(d1 * d1 * d2) * (int(d2) * c1 - int(d1) * c2);
            acc += &n[d1 as usize] * &n[d2 as usize] * w;
        }
        n.push(acc);
    }
    Ok(n[d as usize].clone())
}

/// `format_beta` re-export for trace rendering by front ends.
pub fn beta_label(beta: &[i64]) -> String {
    format_beta(beta)
}
