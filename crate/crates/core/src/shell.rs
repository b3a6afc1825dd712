//! Light-cone reduction of a weight polynomial to the mass shell.
//!
//! With `p± = p0 ± p1` and `p̂ = (p2, …, p{d-1})`, a point of the shell
//! satisfies `p- = (p̂² + m²)/p+`. Substituting this into an even
//! polynomial `M` gives a Laurent expression in `p+` which, after the
//! minimal even power `2n` of `p+` is cleared, becomes the polynomial
//! `Q(p+, p̂)` with `M|shell = p+^{-2n} Q`.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial};
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShellError {
    #[error("weight polynomial is not even: term of odd total degree present")]
    NotEven,
    #[error("negative squared mass {m2}")]
    NegativeMass { m2: String },
    #[error("dimension {dim} too small: need d >= 2")]
    DimensionTooSmall { dim: usize },
}

/// Normalized shell form of a weight polynomial.
///
/// `q` lives in `d - 1` variables ordered `(p+, p2, …, p{d-1})`; for
/// `d = 2` it is univariate in `p+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellForm {
    dim: usize,
    m2: Rational,
    n: u32,
    q: Polynomial,
}

/// Coefficients of `Q(·, p̂)` at one transverse sample, lowest degree
/// first. The full-length list is kept even when the leading coefficient
/// vanishes; `degenerate` records that degree drop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantiatedQ {
    pub coeffs: Vec<Rational>,
    pub degenerate: bool,
}

impl InstantiatedQ {
    /// Coefficients with exact zero leading entries removed.
    pub fn trimmed(&self) -> Vec<Rational> {
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        c
    }

    pub fn trimmed_f64(&self) -> Vec<f64> {
        self.trimmed().iter().map(to_f64).collect()
    }
}

impl ShellForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m2(&self) -> &Rational {
        &self.m2
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The polynomial `Q` in variables `(p+, p2, …, p{d-1})`.
    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    /// Number of transverse variables (`d - 2`).
    pub fn hat_dim(&self) -> usize {
        self.dim - 2
    }

    /// Degree of `Q` in `p+`.
    pub fn pplus_degree(&self) -> u32 {
        self.q.degree_in(0)
    }

    /// The set of `p+` exponents carrying a nonzero coefficient; a local
    /// modular action requires this to be a single exponent.
    pub fn pplus_support(&self) -> Vec<u32> {
        let mut degs: Vec<u32> = self
            .q
            .coeffs_in_var(0)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k as u32)
            .collect();
        degs.sort_unstable();
        degs
    }

    /// True iff `Q = p+^{2k} C(p̂)` for a single exponent.
    pub fn is_pplus_monomial(&self) -> bool {
        self.pplus_support().len() <= 1
    }

    /// Exact coefficients of `Q(·, p̂)` at a rational transverse point.
    pub fn instantiate(&self, phat: &[Rational]) -> InstantiatedQ {
        assert_eq!(phat.len(), self.hat_dim(), "transverse point length");
        let coeff_polys = self.q.coeffs_in_var(0);
        let point: Vec<Rational> = std::iter::once(Rational::zero())
            .chain(phat.iter().cloned())
            .collect();
        let coeffs: Vec<Rational> = coeff_polys
            .iter()
            .map(|c| c.eval_rational(&point).expect("dimension consistent"))
            .collect();
        let degenerate = coeffs.last().map_or(true, |c| c.is_zero());
        InstantiatedQ { coeffs, degenerate }
    }

    /// Floating-point coefficients of `Q(·, p̂)`.
    pub fn instantiate_f64(&self, phat: &[f64]) -> (Vec<f64>, bool) {
        assert_eq!(phat.len(), self.hat_dim(), "transverse point length");
        let coeff_polys = self.q.coeffs_in_var(0);
        let point: Vec<num_complex::Complex64> = std::iter::once(0.0)
            .chain(phat.iter().copied())
            .map(|x| num_complex::Complex64::new(x, 0.0))
            .collect();
        let coeffs: Vec<f64> = coeff_polys
            .iter()
            .map(|c| c.eval_complex(&point).expect("dimension consistent").re)
            .collect();
        let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let degenerate = coeffs
            .last()
            .map_or(true, |c| c.abs() <= 1e-14 * scale.max(1.0));
        (coeffs, degenerate)
    }

    /// Evaluate `Q` at a floating shell chart point.
    pub fn eval_q(&self, pplus: f64, phat: &[f64]) -> f64 {
        let pt: Vec<num_complex::Complex64> = std::iter::once(pplus)
            .chain(phat.iter().copied())
            .map(|x| num_complex::Complex64::new(x, 0.0))
            .collect();
        self.q.eval_complex(&pt).expect("dimension consistent").re
    }

    /// Variable names used when rendering `Q` in reports.
    pub fn q_names(&self) -> Vec<String> {
        std::iter::once("p+".to_string())
            .chain((2..self.dim).map(|i| format!("p{i}")))
            .collect()
    }

    pub fn render_q(&self) -> String {
        self.q.render_with(&self.q_names())
    }

    /// Minimum of `Q` over a sample grid of `points_per_axis^(d-1)`
    /// chart points; used by the positivity checks.
    pub fn positivity_scan(&self, points_per_axis: usize) -> (f64, f64) {
        let pplus: Vec<f64> = (0..points_per_axis)
            .map(|k| 0.125 * (64.0f64).powf(k as f64 / (points_per_axis.max(2) - 1) as f64))
            .collect();
        let axis: Vec<f64> = (0..points_per_axis)
            .map(|k| -2.0 + 4.0 * (k as f64) / (points_per_axis.max(2) - 1) as f64)
            .collect();
        let mut min = f64::INFINITY;
        let mut scale = 0.0f64;
        let hat = self.hat_dim();
        let mut idx = vec![0usize; hat];
        loop {
            let phat: Vec<f64> = idx.iter().map(|&k| axis[k]).collect();
            for &pp in &pplus {
                let v = self.eval_q(pp, &phat);
                min = min.min(v);
                scale = scale.max(v.abs());
            }
            // Advance the mixed-radix counter over transverse axes.
            let mut carry = 0;
            while carry < hat {
                idx[carry] += 1;
                if idx[carry] < axis.len() {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
            }
            if carry == hat {
                break;
            }
        }
        (min, scale)
    }
}

/// Compute the shell form of an even weight polynomial.
pub fn to_shell_form(m: &Polynomial, m2: &Rational) -> Result<ShellForm, ShellError> {
    let d = m.dim();
    if d < 2 {
        return Err(ShellError::DimensionTooSmall { dim: d });
    }
    if m2.is_negative() {
        return Err(ShellError::NegativeMass { m2: m2.to_string() });
    }
    if !m.is_even() {
        return Err(ShellError::NotEven);
    }
    let hat = d - 2;
    // shell_sq = p̂² + m² in the transverse ring.
    let mut shell_sq = Polynomial::constant(hat, m2.clone());
    for i in 0..hat {
        shell_sq = shell_sq.add(&Polynomial::variable(hat, i).pow(2));
    }
    // Laurent coefficients: p+ exponent -> polynomial in p̂.
    let mut laurent: BTreeMap<i64, Polynomial> = BTreeMap::new();
    let mut shell_pows = vec![Polynomial::one(hat)];
    let half = Rational::new(1.into(), 2.into());
    for (mono, coeff) in m.terms() {
        let e0 = mono.0[0];
        let e1 = mono.0[1];
        let hat_exps: Vec<u32> = mono.0[2..].to_vec();
        let hat_mono = Polynomial::from_terms(hat, [(hat_exps, Rational::one())]);
        // (p0)^{e0} (p1)^{e1} = 2^{-(e0+e1)} (p+ + p-)^{e0} (p+ - p-)^{e1}
        let scale = coeff * half.pow((e0 + e1) as i32);
        for i in 0..=e0 {
            for j in 0..=e1 {
                let c_bin = Rational::from(binomial(
                    num_bigint::BigInt::from(e0),
                    num_bigint::BigInt::from(i),
                )) * Rational::from(binomial(
                    num_bigint::BigInt::from(e1),
                    num_bigint::BigInt::from(j),
                ));
                let sign = if (e1 - j) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                let pminus_exp = (e0 - i) + (e1 - j);
                // p-^b -> (p̂² + m²)^b p+^{-b}
                while shell_pows.len() <= pminus_exp as usize {
                    let next = shell_pows.last().expect("nonempty").mul(&shell_sq);
                    shell_pows.push(next);
                }
                let net_exp = (i + j) as i64 - pminus_exp as i64;
                let contrib = hat_mono
                    .mul(&shell_pows[pminus_exp as usize])
                    .scale(&(&scale * &c_bin * &sign));
                laurent
                    .entry(net_exp)
                    .and_modify(|p| *p = p.add(&contrib))
                    .or_insert(contrib);
            }
        }
    }
    laurent.retain(|_, p| !p.is_zero());
    // Minimal even shift 2n that clears all negative exponents.
    let e_min = laurent.keys().next().copied().unwrap_or(0);
    let n: u32 = if e_min >= 0 {
        0
    } else {
        ((-e_min + 1) / 2) as u32
    };
    let mut q = Polynomial::zero(d - 1);
    for (e, hat_poly) in &laurent {
        let shifted = e + 2 * n as i64;
        debug_assert!(shifted >= 0);
        for (hm, c) in hat_poly.terms() {
            let mut exps = Vec::with_capacity(d - 1);
            exps.push(shifted as u32);
            exps.extend_from_slice(&hm.0);
            q = q.add(&Polynomial::from_terms(d - 1, [(exps, c.clone())]));
        }
    }
    let _ = Monomial(vec![]);
    Ok(ShellForm {
        dim: d,
        m2: m2.clone(),
        n,
        q,
    })
}
