//! Sparse supercommutative series in deformation variables `t_0..t_m` and Novikov
//! exponents `q^beta`, with exact coefficients and an explicit truncation.
//!
//! Monomials are stored with variables in index order; every Koszul sign is measured
//! against that order. Odd variables square to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::AlgebraError;

/// A Koszul sign. A vanishing product is represented by `None` at call sites.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, q: Rational) -> Rational {
        match self {
            Sign::Plus => q,
            Sign::Minus => -q,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != rhs.is_minus())
    }
}

/// Parity of each deformation variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignRule {
    odd: Vec<bool>,
}

impl SignRule {
    pub fn new(odd: Vec<bool>) -> Self {
        Self { odd }
    }

    pub fn all_even(len: usize) -> Self {
        Self { odd: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.odd.is_empty()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    pub fn parities(&self) -> &[bool] {
        &self.odd
    }
}

/// `t^a q^beta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    t: Vec<u32>,
    beta: Vec<i64>,
}

impl Monomial {
    pub fn new(t: Vec<u32>, beta: Vec<i64>) -> Self {
        Self { t, beta }
    }

    pub fn one(nvars: usize, rank: usize) -> Self {
        Self { t: vec![0; nvars], beta: vec![0; rank] }
    }

    pub fn t_exponents(&self) -> &[u32] {
        &self.t
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    pub fn t_count(&self) -> u32 {
        self.t.iter().sum()
    }

    pub fn is_t_constant(&self) -> bool {
        self.t.iter().all(|&a| a == 0)
    }

    /// Parity of the t-part under `rule`.
    pub fn parity(&self, rule: &SignRule) -> bool {
        self.t
            .iter()
            .enumerate()
            .filter(|&(i, &a)| rule.is_odd(i) && a % 2 == 1)
            .count()
            % 2
            == 1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.t.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("t_{i}")),
                _ => parts.push(format!("t_{i}^{a}")),
            }
        }
        if self.beta.iter().any(|&b| b != 0) {
            parts.push(format_novikov(&self.beta));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// `q`, `q^3` for rank one; `q^(1,2)` otherwise.
pub fn format_novikov(beta: &[i64]) -> String {
    if beta.len() == 1 {
        match beta[0] {
            0 => "1".to_string(),
            1 => "q".to_string(),
            d => format!("q^{d}"),
        }
    } else {
        let inner: Vec<String> = beta.iter().map(|b| b.to_string()).collect();
        format!("q^({})", inner.join(","))
    }
}

fn check_len(rule: &SignRule, t: &[u32]) -> Result<(), AlgebraError> {
    if t.len() != rule.len() {
        return Err(AlgebraError::VariableCount { expected: rule.len(), found: t.len() });
    }
    Ok(())
}

/// Canonical product of two monomials. `None` when an odd variable would be squared.
pub fn monomial_mul(
    a: &Monomial,
    b: &Monomial,
    rule: &SignRule,
) -> Result<Option<(Monomial, Sign)>, AlgebraError> {
    check_len(rule, &a.t)?;
    check_len(rule, &b.t)?;
    if a.beta.len() != b.beta.len() {
        return Err(AlgebraError::LatticeRank { expected: a.beta.len(), found: b.beta.len() });
    }
    let mut odd_swaps = 0usize;
    // odd variables of `a` with index strictly greater than the current one
    let mut odd_in_a_after = a
        .t
        .iter()
        .enumerate()
        .filter(|&(i, &e)| rule.is_odd(i) && e % 2 == 1)
        .count();
    let mut t = Vec::with_capacity(a.t.len());
    for i in 0..a.t.len() {
        let (ea, eb) = (a.t[i], b.t[i]);
        if rule.is_odd(i) {
            if ea + eb >= 2 {
                return Ok(None);
            }
            if ea == 1 {
                odd_in_a_after -= 1;
            }
            if eb == 1 {
                odd_swaps += odd_in_a_after;
            }
        }
        t.push(ea + eb);
    }
    let beta = a.beta.iter().zip(&b.beta).map(|(x, y)| x + y).collect();
    Ok(Some((Monomial { t, beta }, Sign::from_odd(odd_swaps % 2 == 1))))
}

/// The sign `eps(a)` defined by
/// `(t_0 T_0)^{a_0} ... (t_m T_m)^{a_m} = eps(a) T_0^{a_0} ... T_m^{a_m} t_0^{a_0} ... t_m^{a_m}`,
/// where `t_i` and `T_i` share a parity.
///
/// Every `t` must pass every later `T` (including its own partner), so with `k` odd
/// factors the exponent is `k + (k-1) + ... + 1`.
pub fn epsilon_sign(a: &[u32], rule: &SignRule) -> Result<Sign, AlgebraError> {
    check_len(rule, a)?;
    let mut k = 0u64;
    for (i, &e) in a.iter().enumerate() {
        if rule.is_odd(i) {
            if e >= 2 {
                return Err(AlgebraError::OddSquare { variable: i });
            }
            k += e as u64;
        }
    }
    Ok(Sign::from_odd((k * (k + 1) / 2) % 2 == 1))
}

/// Variables, their grading weights, and the `c_1` pairing used for Novikov degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpace {
    rule: SignRule,
    weights: Vec<Rational>,
    c1: Vec<i64>,
}

impl VarSpace {
    pub fn new(rule: SignRule, weights: Vec<Rational>, c1: Vec<i64>) -> Arc<Self> {
        assert_eq!(rule.len(), weights.len(), "one weight per variable");
        Arc::new(Self { rule, weights, c1 })
    }

    pub fn rule(&self) -> &SignRule {
        &self.rule
    }

    pub fn nvars(&self) -> usize {
        self.rule.len()
    }

    pub fn rank(&self) -> usize {
        self.c1.len()
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn c1(&self) -> &[i64] {
        &self.c1
    }

    pub fn novikov_degree(&self, beta: &[i64]) -> i64 {
        beta.iter().zip(&self.c1).map(|(b, c)| b * c).sum()
    }

    pub fn t_weight(&self, t: &[u32]) -> Rational {
        t.iter()
            .zip(&self.weights)
            .filter(|(a, _)| **a > 0)
            .map(|(a, w)| w * int(*a as i64))
            .sum()
    }
}

/// Inclusive truncation bounds. `None` means unbounded in that direction.
///
/// `weight` bounds `sum a_i deg T_i`, `count` bounds `sum a_i`, `novikov` bounds `beta . c_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cutoff {
    pub weight: Option<Rational>,
    pub count: Option<i64>,
    pub novikov: Option<i64>,
}

fn meet_opt<T: Ord + Clone>(a: &Option<T>, b: &Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl Cutoff {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn by_count(count: i64, novikov: i64) -> Self {
        Self { weight: None, count: Some(count), novikov: Some(novikov) }
    }

    pub fn by_weight(weight: Rational, novikov: i64) -> Self {
        Self { weight: Some(weight), count: None, novikov: Some(novikov) }
    }

    /// Componentwise minimum: the coarser of the two.
    pub fn meet(&self, other: &Cutoff) -> Cutoff {
        Cutoff {
            weight: meet_opt(&self.weight, &other.weight),
            count: meet_opt(&self.count, &other.count),
            novikov: meet_opt(&self.novikov, &other.novikov),
        }
    }

    pub fn admits(&self, space: &VarSpace, m: &Monomial) -> bool {
        if let Some(c) = self.count {
            if m.t_count() as i64 > c {
                return false;
            }
        }
        if let Some(q) = self.novikov {
            if space.novikov_degree(&m.beta) > q {
                return false;
            }
        }
        if let Some(w) = &self.weight {
            if &space.t_weight(&m.t) > w {
                return false;
            }
        }
        true
    }

    /// The range of validity left after differentiating by a variable of weight `w`.
    pub fn after_derivative(&self, w: &Rational) -> Cutoff {
        Cutoff {
            weight: self.weight.as_ref().map(|x| x - w),
            count: self.count.map(|c| c - 1),
            novikov: self.novikov,
        }
    }
}

/// Sparse truncated series with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, Rational>,
    cutoff: Cutoff,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.cutoff == other.cutoff && self.terms == other.terms
    }
}

impl TruncatedSeries {
    pub fn zero(space: Arc<VarSpace>, cutoff: Cutoff) -> Self {
        Self { space, terms: BTreeMap::new(), cutoff }
    }

    pub fn constant(space: Arc<VarSpace>, cutoff: Cutoff, c: Rational) -> Self {
        let mut s = Self::zero(space, cutoff);
        let one = Monomial::one(s.space.nvars(), s.space.rank());
        s.add_term(one, c).expect("constant monomial is always valid");
        s
    }

    /// `c q^beta`, with no t-dependence.
    pub fn novikov(space: Arc<VarSpace>, cutoff: Cutoff, beta: Vec<i64>, c: Rational) -> Self {
        let mut s = Self::zero(space, cutoff);
        let m = Monomial::new(vec![0; s.space.nvars()], beta);
        s.add_term(m, c).expect("novikov monomial is valid");
        s
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulates `c * m`. Terms outside the cutoff are dropped; zero sums are removed.
    pub fn add_term(&mut self, m: Monomial, c: Rational) -> Result<(), AlgebraError> {
        check_len(self.space.rule(), &m.t)?;
        if m.beta.len() != self.space.rank() {
            return Err(AlgebraError::LatticeRank {
                expected: self.space.rank(),
                found: m.beta.len(),
            });
        }
        if let Some(i) = (0..m.t.len()).find(|&i| self.space.rule().is_odd(i) && m.t[i] >= 2) {
            return Err(AlgebraError::OddSquare { variable: i });
        }
        if m.beta.iter().any(|&b| b < 0) {
            return Err(AlgebraError::NonEffective(m.beta.clone()));
        }
        if c.is_zero() || !self.cutoff.admits(&self.space, &m) {
            return Ok(());
        }
        self.accumulate(m, c);
        Ok(())
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &TruncatedSeries) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(AlgebraError::SpaceMismatch)
        }
    }

    /// Restricts to a finer cutoff.
    pub fn truncate(&self, cutoff: &Cutoff) -> TruncatedSeries {
        let cutoff = self.cutoff.meet(cutoff);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| cutoff.admits(&self.space, m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { space: self.space.clone(), terms, cutoff }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
        self.check_space(other)?;
        let mut out = self.truncate(&other.cutoff);
        for (m, c) in &other.terms {
            if out.cutoff.admits(&out.space, m) {
                out.accumulate(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> TruncatedSeries {
        if k.is_zero() {
            return TruncatedSeries::zero(self.space.clone(), self.cutoff.clone());
        }
        TruncatedSeries {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
        self.check_space(other)?;
        let cutoff = self.cutoff.meet(&other.cutoff);
        let mut out = TruncatedSeries::zero(self.space.clone(), cutoff);
        let rule = self.space.rule();
        let (count_cap, nov_cap) = (out.cutoff.count, out.cutoff.novikov);
        let grade = |m: &Monomial| (m.t_count() as i64, self.space.novikov_degree(&m.beta));
        // sorted by grade so the inner loop can stop early
        let mut rhs: Vec<_> = other.terms.iter().map(|(m, c)| (grade(m), m, c)).collect();
        rhs.sort_by_key(|(g, _, _)| g.0);
        for (ma, ca) in &self.terms {
            let (na, qa) = grade(ma);
            for ((nb, qb), mb, cb) in &rhs {
                if count_cap.is_some_and(|c| na + nb > c) {
                    break;
                }
                if nov_cap.is_some_and(|c| qa + qb > c) {
                    continue;
                }
                if let Some((m, sign)) = monomial_mul(ma, mb, rule)? {
                    if out.cutoff.admits(&out.space, &m) {
                        out.accumulate(m, sign.apply(ca * *cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Formal left derivative `d/dt_i`. The cutoff shrinks by the weight of `t_i`.
    pub fn partial_derivative(&self, i: usize) -> TruncatedSeries {
        let rule = self.space.rule();
        let cutoff = self.cutoff.after_derivative(self.space.weight(i));
        let mut out = TruncatedSeries::zero(self.space.clone(), cutoff);
        for (m, c) in &self.terms {
            let e = m.t[i];
            if e == 0 {
                continue;
            }
            let mut sign = Sign::Plus;
            if rule.is_odd(i) {
                let prefix: u32 = (0..i).filter(|&k| rule.is_odd(k)).map(|k| m.t[k]).sum();
                sign = Sign::from_odd(prefix % 2 == 1);
            }
            let mut t = m.t.clone();
            t[i] -= 1;
            let dm = Monomial { t, beta: m.beta.clone() };
            if out.cutoff.admits(&out.space, &dm) {
                out.accumulate(dm, sign.apply(c * int(e as i64)));
            }
        }
        out
    }

    /// Splits into (even, odd) parts by t-parity.
    pub fn split_parity(&self) -> (TruncatedSeries, TruncatedSeries) {
        let mut even = TruncatedSeries::zero(self.space.clone(), self.cutoff.clone());
        let mut odd = even.clone();
        for (m, c) in &self.terms {
            if m.parity(self.space.rule()) {
                odd.terms.insert(m.clone(), c.clone());
            } else {
                even.terms.insert(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// `Some(parity)` when every term has the same parity (zero counts as even).
    pub fn homogeneous_parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.parity(self.space.rule()));
        match it.next() {
            None => Some(false),
            Some(p) => it.all(|x| x == p).then_some(p),
        }
    }

    /// Specialization `t = 0`: keeps the pure Novikov part.
    pub fn at_origin(&self) -> TruncatedSeries {
        TruncatedSeries {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_t_constant())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn first_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = m.to_string();
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}·{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::parse_rational;

    fn space(odd: Vec<bool>) -> Arc<VarSpace> {
        let n = odd.len();
        VarSpace::new(SignRule::new(odd), vec![int(1); n], vec![1])
    }

    fn mono(t: &[u32], beta: i64) -> Monomial {
        Monomial::new(t.to_vec(), vec![beta])
    }

    fn series(sp: &Arc<VarSpace>, cutoff: Cutoff, terms: &[(&[u32], i64, i64)]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(sp.clone(), cutoff);
        for (t, b, c) in terms {
            s.add_term(mono(t, *b), int(*c)).unwrap();
        }
        s
    }

    #[test]
    fn swapping_two_odd_variables_flips_sign() {
        let rule = SignRule::new(vec![false, true, true]);
        let t2 = mono(&[0, 0, 1], 0);
        let t1 = mono(&[0, 1, 0], 0);
        let (m, s) = monomial_mul(&t2, &t1, &rule).unwrap().unwrap();
        assert_eq!(m, mono(&[0, 1, 1], 0));
        assert_eq!(s, Sign::Minus);
        let (_, s) = monomial_mul(&t1, &t2, &rule).unwrap().unwrap();
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn odd_square_vanishes() {
        let rule = SignRule::new(vec![false, false, false, true]);
        let t3 = mono(&[0, 0, 0, 1], 0);
        assert_eq!(monomial_mul(&t3, &t3, &rule).unwrap(), None);
    }

    #[test]
    fn even_variables_commute() {
        let rule = SignRule::all_even(3);
        let (m, s) = monomial_mul(&mono(&[0, 0, 1], 1), &mono(&[0, 1, 0], 2), &rule)
            .unwrap()
            .unwrap();
        assert_eq!(m, mono(&[0, 1, 1], 3));
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn variable_count_mismatch_is_an_error() {
        let rule = SignRule::all_even(2);
        let err = monomial_mul(&mono(&[1, 0, 0], 0), &mono(&[1, 0], 0), &rule).unwrap_err();
        assert_eq!(err, AlgebraError::VariableCount { expected: 2, found: 3 });
    }

    #[test]
    fn difference_of_squares() {
        let sp = space(vec![false]);
        let a = series(&sp, Cutoff::unbounded(), &[(&[0], 0, 1), (&[1], 0, 1)]);
        let b = series(&sp, Cutoff::unbounded(), &[(&[0], 0, 1), (&[1], 0, -1)]);
        let p = a.mul(&b).unwrap();
        let expect = series(&sp, Cutoff::unbounded(), &[(&[0], 0, 1), (&[2], 0, -1)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn additive_identity() {
        let sp = space(vec![false, true]);
        let x = series(&sp, Cutoff::unbounded(), &[(&[2, 1], 1, 3), (&[0, 1], 0, -2)]);
        let z = TruncatedSeries::zero(sp.clone(), Cutoff::unbounded());
        assert_eq!(x.add(&z).unwrap(), x);
    }

    #[test]
    fn novikov_truncation_drops_products() {
        let sp = space(vec![false, false]);
        let cut = Cutoff { novikov: Some(1), ..Cutoff::default() };
        let x = series(&sp, cut, &[(&[0, 1], 1, 1)]);
        assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn result_cutoff_is_the_coarser_one() {
        let sp = space(vec![false]);
        let a = series(&sp, Cutoff::by_count(5, 3), &[(&[1], 0, 1)]);
        let b = series(&sp, Cutoff::by_count(2, 7), &[(&[1], 1, 1)]);
        assert_eq!(a.mul(&b).unwrap().cutoff(), &Cutoff::by_count(2, 3));
        assert_eq!(a.add(&b).unwrap().cutoff(), &Cutoff::by_count(2, 3));
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = TruncatedSeries::zero(space(vec![false]), Cutoff::unbounded());
        let b = TruncatedSeries::zero(space(vec![true]), Cutoff::unbounded());
        assert_eq!(a.add(&b).unwrap_err(), AlgebraError::SpaceMismatch);
    }

    #[test]
    fn power_rule() {
        let sp = space(vec![false, false]);
        let x = series(&sp, Cutoff::unbounded(), &[(&[0, 2], 0, 1)]);
        let d = x.partial_derivative(1);
        assert_eq!(d.coefficient(&mono(&[0, 1], 0)), int(2));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn odd_left_derivative_picks_up_prefix_sign() {
        // d/dt_1 (t_0 t_1) = -t_0 when both are odd: t_0 t_1 = -t_1 t_0.
        let sp = space(vec![true, true]);
        let x = series(&sp, Cutoff::unbounded(), &[(&[1, 1], 0, 1)]);
        let d = x.partial_derivative(1);
        assert_eq!(d.coefficient(&mono(&[1, 0], 0)), int(-1));
        assert_eq!(x.partial_derivative(0).coefficient(&mono(&[0, 1], 0)), int(1));
    }

    #[test]
    fn derivative_of_absent_variable_vanishes() {
        let sp = space(vec![false, false, false]);
        let x = series(&sp, Cutoff::unbounded(), &[(&[0, 1, 0], 0, 1)]);
        assert!(x.partial_derivative(2).is_zero());
    }

    #[test]
    fn derivative_shrinks_weight_cutoff() {
        let sp = VarSpace::new(SignRule::all_even(2), vec![int(0), int(2)], vec![3]);
        let x = TruncatedSeries::zero(sp, Cutoff::by_weight(int(8), 6));
        assert_eq!(x.partial_derivative(1).cutoff().weight, Some(int(6)));
        assert_eq!(x.partial_derivative(0).cutoff().weight, Some(int(8)));
    }

    #[test]
    fn epsilon_examples() {
        let even = SignRule::all_even(3);
        assert_eq!(epsilon_sign(&[2, 1, 3], &even).unwrap(), Sign::Plus);
        let odd = SignRule::new(vec![true, true]);
        assert_eq!(epsilon_sign(&[1, 1], &odd).unwrap(), Sign::Minus);
        let mixed = SignRule::new(vec![false, true, false]);
        assert_eq!(epsilon_sign(&[0, 0, 1], &mixed).unwrap(), Sign::Plus);
        assert_eq!(
            epsilon_sign(&[0, 2, 0], &mixed).unwrap_err(),
            AlgebraError::OddSquare { variable: 1 }
        );
    }

    #[test]
    fn rational_weights_are_exact() {
        let w = vec![int(0), parse_rational("2/3").unwrap(), parse_rational("4/3").unwrap()];
        let sp = VarSpace::new(SignRule::all_even(3), w, vec![1]);
        assert_eq!(sp.t_weight(&[0, 1, 1]), int(2));
        let cut = Cutoff::by_weight(int(2), 0);
        assert!(cut.admits(&sp, &mono(&[5, 1, 1], 0)));
        assert!(!cut.admits(&sp, &mono(&[0, 2, 1], 0)));
    }

    #[test]
    fn display() {
        let sp = space(vec![false, false]);
        let x = series(&sp, Cutoff::unbounded(), &[(&[0, 0], 1, 1), (&[1, 2], 0, -3)]);
        assert_eq!(x.to_string(), "q - 3·t_0·t_1^2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        const ODD: [bool; 4] = [false, true, true, false];

        fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
            let term = ((0u32..3, 0u32..2, 0u32..2, 0u32..3), 0i64..3, -4i64..5);
            prop::collection::vec(term, 0..6).prop_map(|terms| {
                let sp = space(ODD.to_vec());
                let mut s = TruncatedSeries::zero(sp, Cutoff::unbounded());
                for ((a, b, c, d), beta, k) in terms {
                    s.add_term(mono(&[a, b, c, d], beta), int(k)).unwrap();
                }
                s
            })
        }

        fn sign(odd: bool) -> Rational {
            int(if odd { -1 } else { 1 })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn multiplication_is_associative(f in arb_series(), g in arb_series(), h in arb_series()) {
                let left = f.mul(&g).unwrap().mul(&h).unwrap();
                let right = f.mul(&g.mul(&h).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn graded_commutativity(f in arb_series(), g in arb_series()) {
                let (fe, fo) = f.split_parity();
                let (ge, go) = g.split_parity();
                for (x, px) in [(&fe, false), (&fo, true)] {
                    for (y, py) in [(&ge, false), (&go, true)] {
                        prop_assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap().scale(&sign(px && py)));
                    }
                }
            }

            #[test]
            fn graded_leibniz(f in arb_series(), g in arb_series(), i in 0usize..4) {
                let (fe, fo) = f.split_parity();
                for (x, px) in [(&fe, false), (&fo, true)] {
                    let lhs = x.mul(&g).unwrap().partial_derivative(i);
                    let a = x.partial_derivative(i).mul(&g).unwrap();
                    let b = x.mul(&g.partial_derivative(i)).unwrap().scale(&sign(px && ODD[i]));
                    prop_assert_eq!(lhs, a.add(&b).unwrap());
                }
            }

            #[test]
            fn derivatives_graded_commute(f in arb_series(), i in 0usize..4, j in 0usize..4) {
                let ij = f.partial_derivative(j).partial_derivative(i);
                let ji = f.partial_derivative(i).partial_derivative(j);
                prop_assert_eq!(ij, ji.scale(&sign(ODD[i] && ODD[j])));
            }
        }
    }
}
