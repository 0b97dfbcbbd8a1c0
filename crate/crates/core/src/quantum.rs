//! The truncated genus-zero potential, the big quantum product, and WDVV checks.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::factorial;
use crate::algebra::{
    epsilon_sign, int, AlgebraError, Cutoff, Monomial, QuotedRational, Rational, TruncatedSeries,
};
use crate::correlators::{evaluate, CorrelatorError, CorrelatorSource};
use crate::target::{Beta, GwTarget, TargetError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error(transparent)]
    Correlator(#[from] CorrelatorError),
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the potential needs both an n bound and a beta.c1 bound")]
    UnboundedCutoff,
    #[error("element has {found} coefficients, the target has {expected} classes")]
    Length { expected: usize, found: usize },
}

/// Exponent vectors `a` (odd entries at most 1) with `|a|` in `min..=max`.
fn exponent_vectors(t: &GwTarget, min: usize, max: usize) -> Vec<Vec<u32>> {
    fn rec(t: &GwTarget, i: usize, left: usize, cur: &mut Vec<u32>, min: usize, out: &mut Vec<Vec<u32>>, used: usize) {
        if i == cur.len() {
            if used >= min {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if t.is_odd(i) { left.min(1) } else { left };
        for e in 0..=cap {
            cur[i] = e as u32;
            rec(t, i + 1, left - e, cur, min, out, used + e);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(t, 0, max, &mut vec![0; t.len()], min, &mut out, 0);
    out
}

/// `T^a` as an insertion list in index order.
fn insertions(a: &[u32]) -> Vec<usize> {
    a.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

fn multi_factorial(a: &[u32]) -> Rational {
    let d = a.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    Rational::from_integer(d)
}

fn require_bounds(cutoff: &Cutoff) -> Result<(usize, i64), QuantumError> {
    match (cutoff.count, cutoff.novikov) {
        (Some(n), Some(q)) if n >= 0 => Ok((n as usize, q)),
        _ => Err(QuantumError::UnboundedCutoff),
    }
}

/// Sum over `beta` and `a` of `eps(a) <prefix, T^a>_beta t^a q^beta / a!` within `cutoff`.
fn assemble<S: CorrelatorSource + ?Sized>(
    t: &GwTarget,
    source: &S,
    cutoff: &Cutoff,
    prefix: &[usize],
) -> Result<TruncatedSeries, QuantumError> {
    let (max_n, max_q) = require_bounds(cutoff)?;
    let mut series = TruncatedSeries::zero(t.var_space().clone(), cutoff.clone());
    let min = 3usize.saturating_sub(prefix.len());
    let vectors = exponent_vectors(t, min, max_n);
    let prefix_degree: Rational = prefix.iter().map(|&c| t.st_degree(c)).sum();
    for beta in t.effective_classes(max_q)? {
        for a in &vectors {
            let m = Monomial::new(a.clone(), beta.clone());
            if !cutoff.admits(t.var_space(), &m) {
                continue;
            }
            let n = prefix.len() + a.iter().sum::<u32>() as usize;
            let total = &prefix_degree + t.var_space().t_weight(a);
            if total != t.selection_degree(n, &beta)? {
                continue;
            }
            let mut classes = prefix.to_vec();
            classes.extend(insertions(a));
            let v = evaluate(t, source, &classes, &beta)?;
            if v.is_zero() {
                continue;
            }
            let eps = epsilon_sign(a, t.var_space().rule())?;
            series.add_term(m, eps.apply(v / multi_factorial(a)))?;
        }
    }
    Ok(series)
}

/// `Phi = sum eps(a) <T^a>_beta t^a q^beta / a!`, truncated.
pub struct Potential {
    target: GwTarget,
    series: TruncatedSeries,
    partials: OnceLock<Vec<TruncatedSeries>>,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential")
            .field("target", &self.target.name)
            .field("terms", &self.series.len())
            .field("cutoff", self.series.cutoff())
            .finish()
    }
}

/// Builds the potential. `cutoff` must bound both the number of insertions and `beta . c1`.
pub fn build_potential<S: CorrelatorSource + ?Sized>(
    t: &GwTarget,
    source: &S,
    cutoff: &Cutoff,
) -> Result<Potential, QuantumError> {
    let series = assemble(t, source, cutoff, &[])?;
    Ok(Potential::from_series(t, series))
}

/// Right-hand side of the third-partials identity, assembled straight from correlators:
/// `sum_n sum_beta (1/n!) <T_i, T_j, T_h, gamma^n>_beta q^beta`.
pub fn lemma_rhs<S: CorrelatorSource + ?Sized>(
    t: &GwTarget,
    source: &S,
    cutoff: &Cutoff,
    i: usize,
    j: usize,
    h: usize,
) -> Result<TruncatedSeries, QuantumError> {
    let space = t.var_space();
    let cut = cutoff
        .after_derivative(space.weight(h))
        .after_derivative(space.weight(j))
        .after_derivative(space.weight(i));
    assemble(t, source, &cut, &[i, j, h])
}

impl Potential {
    pub fn from_series(t: &GwTarget, series: TruncatedSeries) -> Self {
        Self { target: t.clone(), series, partials: OnceLock::new() }
    }

    pub fn target(&self) -> &GwTarget {
        &self.target
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn cutoff(&self) -> &Cutoff {
        self.series.cutoff()
    }

    fn dim(&self) -> usize {
        self.target.len()
    }

    fn partials(&self) -> &[TruncatedSeries] {
        self.partials.get_or_init(|| {
            let m = self.dim();
            let singles: Vec<TruncatedSeries> =
                (0..m).map(|h| self.series.partial_derivative(h)).collect();
            let doubles: Vec<TruncatedSeries> = (0..m * m)
                .into_par_iter()
                .map(|jh| singles[jh % m].partial_derivative(jh / m))
                .collect();
            (0..m * m * m)
                .into_par_iter()
                .map(|ijh| doubles[ijh % (m * m)].partial_derivative(ijh / (m * m)))
                .collect()
        })
    }

    /// `d/dt_i d/dt_j d/dt_h Phi` (left derivatives, `t_h` taken first).
    pub fn third_partial(&self, i: usize, j: usize, h: usize) -> &TruncatedSeries {
        let m = self.dim();
        &self.partials()[i * m * m + j * m + h]
    }

    /// A basis class `T_i` as a quantum element with this potential's cutoff.
    pub fn basis_element(&self, i: usize) -> QuantumElement {
        let space = self.target.var_space().clone();
        let cutoff = self.series.cutoff().clone();
        let coeffs = (0..self.dim())
            .map(|k| {
                let c = if k == i { Rational::one() } else { Rational::zero() };
                TruncatedSeries::constant(space.clone(), cutoff.clone(), c)
            })
            .collect();
        QuantumElement { coeffs }
    }

    /// `sum_e Phi_{ije} g^{ef} T_f`, optionally specialized to `t = 0`.
    fn structure(&self, i: usize, j: usize, at_origin: bool) -> Result<Vec<TruncatedSeries>, QuantumError> {
        let space = self.target.var_space().clone();
        let inv = self.target.pairing_inverse().ok_or(TargetError::DegeneratePairing)?;
        let m = self.dim();
        let mut out = Vec::with_capacity(m);
        for f in 0..m {
            let mut acc: Option<TruncatedSeries> = None;
            for (e, row) in inv.iter().enumerate() {
                if row[f].is_zero() {
                    continue;
                }
                let mut p = self.third_partial(i, j, e).scale(&row[f]);
                if at_origin {
                    p = p.at_origin();
                }
                acc = Some(match acc {
                    None => p,
                    Some(a) => a.add(&p)?,
                });
            }
            let cutoff = self.third_partial(i, j, 0).cutoff().clone();
            out.push(acc.unwrap_or_else(|| TruncatedSeries::zero(space.clone(), cutoff)));
        }
        Ok(out)
    }

    /// Big quantum product `x * y`.
    pub fn quantum_mul(&self, x: &QuantumElement, y: &QuantumElement) -> Result<QuantumElement, QuantumError> {
        self.product(x, y, false)
    }

    /// Small quantum product: structure constants specialized to `t = 0`.
    pub fn small_mul(&self, x: &QuantumElement, y: &QuantumElement) -> Result<QuantumElement, QuantumError> {
        self.product(x, y, true)
    }

    fn product(&self, x: &QuantumElement, y: &QuantumElement, at_origin: bool) -> Result<QuantumElement, QuantumError> {
        let m = self.dim();
        for z in [x, y] {
            if z.coeffs.len() != m {
                return Err(QuantumError::Length { expected: m, found: z.coeffs.len() });
            }
        }
        let mut out: Option<Vec<TruncatedSeries>> = None;
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                // moving the scalar y_j across T_i
                let yj = if self.target.is_odd(i) {
                    let (even, odd) = yj.split_parity();
                    even.sub(&odd)?
                } else {
                    yj.clone()
                };
                let xy = xi.mul(&yj)?;
                let s = self.structure(i, j, at_origin)?;
                let terms = s.iter().map(|sf| xy.mul(sf)).collect::<Result<Vec<_>, _>>()?;
                out = Some(match out {
                    None => terms,
                    Some(acc) => acc.iter().zip(&terms).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?,
                });
            }
        }
        let coeffs = match out {
            Some(c) => c,
            None => {
                let cutoff = x.cutoff().unwrap_or_else(|| self.cutoff().clone());
                vec![TruncatedSeries::zero(self.target.var_space().clone(), cutoff); m]
            }
        };
        Ok(QuantumElement { coeffs })
    }

    /// `sum Phi_{ije} g^{ef} Phi_{fhl} - (-1)^{|t_i|(|t_j|+|t_h|)} sum Phi_{jhe} g^{ef} Phi_{fil}`.
    pub fn wdvv_residual(&self, i: usize, j: usize, h: usize, l: usize) -> Result<TruncatedSeries, QuantumError> {
        let t = &self.target;
        let diag = t.diagonal_class()?;
        let side = |a: usize, b: usize, c: usize, d: usize| -> Result<TruncatedSeries, QuantumError> {
            let mut acc = TruncatedSeries::zero(t.var_space().clone(), Cutoff::unbounded());
            for (e, f, g) in &diag {
                let l = self.third_partial(a, b, *e);
                let r = self.third_partial(*f, c, d);
                if l.is_zero() || r.is_zero() {
                    // keep the cutoff of the product even when the term vanishes
                    acc = acc.add(&TruncatedSeries::zero(t.var_space().clone(), l.cutoff().meet(r.cutoff())))?;
                    continue;
                }
                acc = acc.add(&l.mul(r)?.scale(g))?;
            }
            Ok(acc)
        };
        let lhs = side(i, j, h, l)?;
        let rhs = side(j, h, i, l)?;
        let odd = t.is_odd(i) && (t.is_odd(j) != t.is_odd(h));
        Ok(if odd { lhs.add(&rhs)? } else { lhs.sub(&rhs)? })
    }

    /// Checks every index quadruple; the reported witness is the smallest failing one.
    pub fn wdvv_check(&self) -> Result<WdvvReport, QuantumError> {
        let m = self.dim();
        self.partials();
        let quads: Vec<[usize; 4]> = (0..m.pow(4))
            .map(|k| [k / (m * m * m), (k / (m * m)) % m, (k / m) % m, k % m])
            .collect();
        let results: Vec<Result<Option<WdvvWitness>, QuantumError>> = quads
            .par_iter()
            .map(|&[i, j, h, l]| {
                let r = self.wdvv_residual(i, j, h, l)?;
                Ok(r.first_term().map(|(mono, c)| WdvvWitness {
                    indices: [i, j, h, l],
                    monomial: mono.clone(),
                    coefficient: c.clone(),
                }))
            })
            .collect();
        let mut failure = None;
        for r in results {
            if let Some(w) = r? {
                failure.get_or_insert(w);
            }
        }
        Ok(WdvvReport { checked: quads.len(), failure })
    }

    /// `(T_i * T_j) * T_h = T_i * (T_j * T_h)` for all basis triples, to the cutoff.
    pub fn associativity_check(&self) -> Result<AssociativityReport, QuantumError> {
        let m = self.dim();
        self.partials();
        let basis: Vec<QuantumElement> = (0..m).map(|i| self.basis_element(i)).collect();
        let pairs: Vec<Vec<QuantumElement>> = (0..m)
            .into_par_iter()
            .map(|i| (0..m).map(|j| self.quantum_mul(&basis[i], &basis[j])).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        let triples: Vec<[usize; 3]> =
            (0..m * m * m).map(|k| [k / (m * m), (k / m) % m, k % m]).collect();
        let results: Vec<Result<Option<[usize; 3]>, QuantumError>> = triples
            .par_iter()
            .map(|&[i, j, h]| {
                let left = self.quantum_mul(&pairs[i][j], &basis[h])?;
                let right = self.quantum_mul(&basis[i], &pairs[j][h])?;
                let cut = left.cutoff().unwrap_or_default().meet(&right.cutoff().unwrap_or_default());
                Ok((left.truncate(&cut) != right.truncate(&cut)).then_some([i, j, h]))
            })
            .collect();
        let mut failure = None;
        for r in results {
            if let Some(w) = r? {
                failure.get_or_insert(w);
            }
        }
        Ok(AssociativityReport { checked: triples.len(), failure })
    }

    /// Every monomial must have weight `2(dim - 3)` with `weight(t_i) = deg T_i - 2` and
    /// `weight(q^beta) = -2 beta.c1`. Returns the first offending monomial.
    pub fn homogeneity_violation(&self) -> Option<Monomial> {
        let t = &self.target;
        let target_weight = int(2 * (t.dim as i64 - 3));
        self.series.terms().map(|(m, _)| m).find(|m| {
            let w: Rational = m
                .t_exponents()
                .iter()
                .enumerate()
                .map(|(i, &a)| (t.st_degree(i) - int(2)) * int(a as i64))
                .sum();
            w - int(2 * t.novikov_degree(m.beta())) != target_weight
        })
        .cloned()
    }

    /// JSON list of `{t_exponents, beta, coefficient}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            t_exponents: Vec<u32>,
            beta: Beta,
            coefficient: QuotedRational,
        }
        let rows: Vec<Row> = self
            .series
            .terms()
            .map(|(m, c)| Row {
                t_exponents: m.t_exponents().to_vec(),
                beta: m.beta().to_vec(),
                coefficient: QuotedRational(c.clone()),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("potential serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdvvWitness {
    pub indices: [usize; 4],
    pub monomial: Monomial,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdvvReport {
    pub checked: usize,
    pub failure: Option<WdvvWitness>,
}

impl WdvvReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub checked: usize,
    pub failure: Option<[usize; 3]>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `sum_f c_f T_f` with series coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumElement {
    pub coeffs: Vec<TruncatedSeries>,
}

impl QuantumElement {
    pub fn cutoff(&self) -> Option<Cutoff> {
        self.coeffs.first().map(|c| c.cutoff().clone())
    }

    pub fn truncate(&self, cutoff: &Cutoff) -> QuantumElement {
        QuantumElement { coeffs: self.coeffs.iter().map(|c| c.truncate(cutoff)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TruncatedSeries::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> QuantumElement {
        QuantumElement { coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }

    pub fn add(&self, other: &QuantumElement) -> Result<QuantumElement, QuantumError> {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(QuantumElement { coeffs })
    }

    /// Parity when every coefficient times its basis class has the same parity.
    pub fn homogeneous_parity(&self, t: &GwTarget) -> Option<bool> {
        let mut parity = None;
        for (f, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = c.homogeneous_parity()? != t.is_odd(f);
            if *parity.get_or_insert(p) != p {
                return None;
            }
        }
        Some(parity.unwrap_or(false))
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            parts.push(if s == "1" {
                format!("T_{k}")
            } else if c.len() == 1 && !s.contains(' ') {
                format!("{s}·T_{k}")
            } else {
                format!("({s})·T_{k}")
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
