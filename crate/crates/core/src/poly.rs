//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial carries a basis tag: each variable's monomials are read as
//! plain powers `t^k`, rising binomials `t^(k) = binom(t+k-1, k)`, or shifted
//! binomials `t^[k] = binom(t+k, k)`.  The three bases are exchanged exactly;
//! no floating point appears anywhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Power,
    Rising,
    Shifted,
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Basis::Power => "power",
            Basis::Rising => "rising",
            Basis::Shifted => "shifted",
        };
        f.write_str(s)
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= j;
    }
    acc
}

/// `binom(n + k, k)` as an exact integer, valid for any integer `n`.
pub fn binom_shifted(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 1..=k {
        num *= n + j;
    }
    num / factorial(k)
}

/// `binom(n + k - 1, k)` as an exact integer, valid for any integer `n`.
pub fn binom_rising(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= n + j;
    }
    num / factorial(k)
}

/// Power-basis coefficients (degree 0 up) of the univariate basis monomial.
fn basis_monomial(basis: Basis, k: u32) -> Vec<Rat> {
    match basis {
        Basis::Power => {
            let mut v = vec![Rat::zero(); k as usize + 1];
            v[k as usize] = Rat::one();
            v
        }
        // t^(k) = t(t+1)..(t+k-1)/k!,  t^[k] = (t+1)(t+2)..(t+k)/k!
        Basis::Rising | Basis::Shifted => {
            let mut v = vec![Rat::one()];
            let shift = if basis == Basis::Rising { 0 } else { 1 };
            for j in 0..k {
                let c = rat((j + shift) as i64);
                let mut next = vec![Rat::zero(); v.len() + 1];
                for (e, a) in v.iter().enumerate() {
                    next[e + 1] += a;
                    next[e] += a * &c;
                }
                v = next;
            }
            let f = Rat::from_integer(factorial(k));
            v.into_iter().map(|a| a / &f).collect()
        }
    }
}

/// Value of the univariate basis monomial of index `k` at integer `n`.
fn basis_value(basis: Basis, n: &BigInt, k: u32) -> Rat {
    match basis {
        Basis::Power => Rat::from_integer(n.pow(k)),
        Basis::Rising => Rat::from_integer(binom_rising(n, k)),
        Basis::Shifted => Rat::from_integer(binom_shifted(n, k)),
    }
}

/// Sparse exact polynomial; terms are keyed by exponent tuples in
/// lexicographic order and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    vars: Vec<String>,
    basis: Basis,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl ExactPoly {
    pub fn zero(vars: Vec<String>, basis: Basis) -> Self {
        ExactPoly { vars, basis, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, basis: Basis, c: Rat) -> Self {
        let mut p = Self::zero(vars, basis);
        let exp = vec![0; p.vars.len()];
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(
        vars: Vec<String>,
        basis: Basis,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Self {
        let mut p = Self::zero(vars, basis);
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        assert_eq!(exp.len(), self.vars.len(), "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Exponent tuples with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`; zero is not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for exp in self.terms.keys() {
            let d: usize = exp.iter().map(|&x| x as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        ExactPoly { vars: self.vars.clone(), basis: self.basis, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        assert_eq!(self.basis, other.basis);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone(), self.basis);
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        ExactPoly { vars: self.vars.clone(), basis: self.basis, terms }
    }

    /// Product of two power-basis polynomials over the same variables.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        assert_eq!(self.basis, Basis::Power, "products are defined in the power basis");
        assert_eq!(other.basis, Basis::Power);
        let mut out = Self::zero(self.vars.clone(), Basis::Power);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    /// Exact value at an integer point, in whatever basis the polynomial uses.
    pub fn eval_int(&self, point: &[BigInt]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term *= basis_value(self.basis, &point[i], e);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_i64(&self, point: &[i64]) -> Rat {
        let pt: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.eval_int(&pt)
    }

    /// Rewrite in the power basis (identity when already there).
    pub fn to_power(&self) -> Self {
        if self.basis == Basis::Power {
            return self.clone();
        }
        let mut out = Self::zero(self.vars.clone(), Basis::Power);
        for (exp, c) in &self.terms {
            // expand the product of univariate basis monomials
            let mut partial: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
            partial.insert(vec![0; self.vars.len()], c.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mono = basis_monomial(self.basis, e);
                let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
                for (pe, pc) in &partial {
                    for (j, mc) in mono.iter().enumerate() {
                        if mc.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne[i] += j as u32;
                        let entry = next.entry(ne).or_insert_with(Rat::zero);
                        *entry += pc * mc;
                    }
                }
                partial = next;
            }
            for (e, v) in partial {
                out.add_term(e, v);
            }
        }
        out
    }

    /// Same polynomial function expressed in `target`; round trips are exact.
    pub fn convert_basis(&self, target: Basis) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let mut p = self.to_power();
        if target == Basis::Power {
            return p;
        }
        for var in 0..p.vars.len() {
            p = convert_var_from_power(&p, var, target);
        }
        p.basis = target;
        p
    }

    /// Substitute `t_i := c_i * t`, producing a univariate power-basis
    /// polynomial in `t`.  Requires the power basis.
    pub fn substitute_ray(&self, ray: &[i64]) -> Result<ExactPoly> {
        if self.basis != Basis::Power {
            return Err(Error::BasisMismatch { expected: Basis::Power, found: self.basis });
        }
        assert_eq!(ray.len(), self.vars.len());
        let mut out = ExactPoly::zero(vec!["t".to_string()], Basis::Power);
        for (exp, c) in &self.terms {
            let mut coef = c.clone();
            let mut total = 0u32;
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    coef *= Rat::from_integer(BigInt::from(ray[i]).pow(e));
                    total += e;
                }
            }
            out.add_term(vec![total], coef);
        }
        Ok(out)
    }

    /// Pad each term with `t0^(d - |k|)`; the new variable comes first.
    pub fn homogenize(&self, d: usize, t0: &str) -> Result<ExactPoly> {
        if self.basis != Basis::Power {
            return Err(Error::BasisMismatch { expected: Basis::Power, found: self.basis });
        }
        if self.total_degree() > d {
            return Err(Error::DegreeExceeded { degree: self.total_degree(), bound: d });
        }
        let mut vars = vec![t0.to_string()];
        vars.extend(self.vars.iter().cloned());
        let mut out = ExactPoly::zero(vars, Basis::Power);
        for (exp, c) in &self.terms {
            let total: u32 = exp.iter().sum();
            let mut ne = Vec::with_capacity(exp.len() + 1);
            ne.push(d as u32 - total);
            ne.extend_from_slice(exp);
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitute an integer value for one variable and drop it.
    pub fn substitute_value(&self, var: usize, value: i64) -> ExactPoly {
        assert_eq!(self.basis, Basis::Power);
        let v = BigInt::from(value);
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = ExactPoly::zero(vars, Basis::Power);
        for (exp, c) in &self.terms {
            let e = exp[var];
            let mut ne = exp.clone();
            ne.remove(var);
            out.add_term(ne, c * Rat::from_integer(v.pow(e)));
        }
        out
    }

    /// Divide each coefficient by `k! = k_1! .. k_m!`.
    pub fn normalize(&self) -> Result<ExactPoly> {
        if self.basis != Basis::Power {
            return Err(Error::BasisMismatch { expected: Basis::Power, found: self.basis });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = BigInt::one();
                for &k in e {
                    f *= factorial(k);
                }
                (e.clone(), c / Rat::from_integer(f))
            })
            .collect();
        Ok(ExactPoly { vars: self.vars.clone(), basis: Basis::Power, terms })
    }

    /// Partial derivative in the power basis.
    pub fn derivative(&self, var: usize) -> ExactPoly {
        assert_eq!(self.basis, Basis::Power);
        let mut out = ExactPoly::zero(self.vars.clone(), Basis::Power);
        for (exp, c) in &self.terms {
            let e = exp[var];
            if e == 0 {
                continue;
            }
            let mut ne = exp.clone();
            ne[var] = e - 1;
            out.add_term(ne, c * rat(e as i64));
        }
        out
    }

    /// Iterated derivative by a multi-index.
    pub fn derivative_multi(&self, alpha: &[u32]) -> ExactPoly {
        let mut p = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                p = p.derivative(i);
            }
        }
        p
    }

    /// Rename the variable list without touching the terms.
    pub fn with_vars(&self, vars: Vec<String>) -> ExactPoly {
        assert_eq!(vars.len(), self.vars.len());
        ExactPoly { vars, basis: self.basis, terms: self.terms.clone() }
    }
}

/// Rewrite one variable of a power-basis polynomial in `target`; other
/// variables are untouched.  Triangular elimination from the top degree down.
fn convert_var_from_power(p: &ExactPoly, var: usize, target: Basis) -> ExactPoly {
    let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, Rat>> = BTreeMap::new();
    for (exp, c) in p.terms() {
        let mut key = exp.clone();
        let e = key[var];
        key[var] = 0;
        groups.entry(key).or_default().insert(e, c.clone());
    }
    let mut out = ExactPoly::zero(p.vars().to_vec(), p.basis());
    for (key, uni) in groups {
        let deg = *uni.keys().max().unwrap() as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in uni {
            coeffs[e as usize] = c;
        }
        for e in (0..=deg).rev() {
            if coeffs[e].is_zero() {
                continue;
            }
            let mono = basis_monomial(target, e as u32);
            let lead = mono.last().unwrap();
            let c = &coeffs[e] / lead;
            for (j, mc) in mono.iter().enumerate() {
                let delta = &c * mc;
                coeffs[j] -= delta;
            }
            let mut exp = key.clone();
            exp[var] = e as u32;
            out.add_term(exp, c);
        }
        debug_assert!(coeffs.iter().all(|c| c.is_zero()));
    }
    out
}

impl std::fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let wrap = |k: u32| match self.basis {
            Basis::Power => format!("^{k}"),
            Basis::Rising => format!("^({k})"),
            Basis::Shifted => format!("^[{k}]"),
        };
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let mag = c.abs();
            let monomial: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 && self.basis == Basis::Power {
                        self.vars[i].clone()
                    } else {
                        format!("{}{}", self.vars[i], wrap(e))
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Inertia of an exact symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.positives, self.negatives, self.zeros)
    }
}

/// Hessian matrix of a quadratic form, as exact rationals.
pub fn hessian_matrix(q: &ExactPoly) -> Result<Vec<Vec<Rat>>> {
    if q.basis() != Basis::Power {
        return Err(Error::BasisMismatch { expected: Basis::Power, found: q.basis() });
    }
    let n = q.vars().len();
    let mut h = vec![vec![Rat::zero(); n]; n];
    for (exp, c) in q.terms() {
        let total: u32 = exp.iter().sum();
        if total != 2 {
            return Err(Error::NotQuadratic);
        }
        let touched: Vec<usize> =
            exp.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect();
        match touched.as_slice() {
            [i] => h[*i][*i] = c * rat(2),
            [i, j] => {
                h[*i][*j] = c.clone();
                h[*j][*i] = c.clone();
            }
            _ => unreachable!(),
        }
    }
    Ok(h)
}

/// Signature of a quadratic form by symmetric congruence diagonalization.
///
/// Pivots on nonzero diagonal entries; when the active diagonal is entirely
/// zero but an off-diagonal entry survives, a hyperbolic 2x2 block is split
/// off, contributing one positive and one negative inertia unit.
pub fn hessian_signature(q: &ExactPoly) -> Result<Signature> {
    let mut h = hessian_matrix(q)?;
    let n = h.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature { positives: 0, negatives: 0, zeros: 0 };
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !h[i][i].is_zero()) {
            if h[p][p].is_positive() {
                sig.positives += 1;
            } else {
                sig.negatives += 1;
            }
            let pivot = h[p][p].clone();
            let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &i in &others {
                if h[i][p].is_zero() {
                    continue;
                }
                let factor = &h[i][p] / &pivot;
                for &j in &others {
                    let delta = &factor * &h[p][j];
                    h[i][j] -= delta;
                }
                h[i][p] = Rat::zero();
            }
            for &j in &others {
                h[p][j] = Rat::zero();
            }
            active.retain(|&i| i != p);
        } else {
            // zero diagonal: look for a hyperbolic pair
            let mut pair = None;
            'outer: for (a, &i) in active.iter().enumerate() {
                for &j in &active[a + 1..] {
                    if !h[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = pair else {
                sig.zeros += active.len();
                break;
            };
            sig.positives += 1;
            sig.negatives += 1;
            let b = h[i][j].clone();
            let others: Vec<usize> = active.iter().copied().filter(|&k| k != i && k != j).collect();
            for &k in &others {
                // row/col k minus x*(row/col i) kills the (k, j) entry, then
                // minus y*(row/col j) kills (k, i); diagonals here are zero
                let x = &h[k][j] / &b;
                let y = &h[k][i] / &b;
                for &l in active.iter() {
                    let delta = &x * &h[i][l] + &y * &h[j][l];
                    h[k][l] -= delta;
                }
                for &l in active.iter() {
                    let delta = &x * &h[l][i] + &y * &h[l][j];
                    h[l][k] -= delta;
                }
            }
            active.retain(|&k| k != i && k != j);
        }
    }
    Ok(sig)
}
