//! Exact multivariate polynomials over the rationals.
//!
//! Variables are the momentum components `p0 … p{d-1}`. Terms are stored
//! sparsely under a graded-lexicographic monomial order, so equality is
//! structural and rendering is canonical. All arithmetic is exact; the
//! floating-point evaluation mode is separate and never feeds back into
//! coefficients.

mod parse;

pub use parse::{parse, ParseError};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat_int, to_f64, Rational};

/// Exponent vector of a single term, ordered graded-lex (total degree
/// first, then lexicographic on exponents).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: polynomial has dimension {expected}, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so `==` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; dim]), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Rational::one())
    }

    /// The variable `p{idx}`.
    pub fn variable(dim: usize, idx: usize) -> Self {
        assert!(idx < dim, "variable index {idx} out of range for dim {dim}");
        let mut exps = vec![0; dim];
        exps[idx] = 1;
        let mut p = Polynomial::zero(dim);
        p.terms.insert(Monomial(exps), Rational::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("len checked");
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of one variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Build from raw (exponents, coefficient) pairs.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(dim);
        for (exps, c) in terms {
            assert_eq!(exps.len(), dim, "exponent vector length mismatch");
            p.insert_term(Monomial(exps), c);
        }
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.insert_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True iff every term has even total degree, i.e. `P(p) = P(-p)`.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() % 2 == 0)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(to_f64(c), 0.0);
            for (v, &e) in point.iter().zip(&m.0) {
                t *= v.powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        let pt: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(self.eval_complex(&pt)?.re)
    }

    /// Exact substitution `p -> A p` for a rational `d x d` matrix `A`
    /// given in row-major order.
    pub fn substitute_linear(&self, a: &[Vec<Rational>]) -> Polynomial {
        assert_eq!(a.len(), self.dim, "matrix row count mismatch");
        let images: Vec<Polynomial> = (0..self.dim)
            .map(|i| {
                assert_eq!(a[i].len(), self.dim, "matrix column count mismatch");
                let mut img = Polynomial::zero(self.dim);
                for (j, c) in a[i].iter().enumerate() {
                    img = img.add(&Polynomial::variable(self.dim, j).scale(c));
                }
                img
            })
            .collect();
        // Cache powers of each image up to the largest exponent used.
        let mut pow_cache: Vec<Vec<Polynomial>> = (0..self.dim)
            .map(|i| vec![Polynomial::one(self.dim), images[i].clone()])
            .collect();
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.dim, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let cache = &mut pow_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().expect("nonempty").mul(&images[i]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `p{var}`. Index `k`
    /// holds the coefficient of `p{var}^k`, with that variable removed.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(self.dim); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[k].insert_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Canonical rendering with default variable names `p0 … p{d-1}`.
    pub fn render(&self) -> String {
        let names: Vec<String> = (0..self.dim).map(|i| format!("p{i}")).collect();
        self.render_with(&names)
    }

    /// Rendering with caller-provided variable names (reports only; not
    /// necessarily re-parseable).
    pub fn render_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.dim);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest graded-lex terms first.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = c.is_negative();
            if idx == 0 {
                if sign {
                    out.push('-');
                }
            } else if sign {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.total_degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exact representative of a polynomial modulo the mass-shell ideal
/// `(p0^2 - p1^2 - … - p{d-1}^2 - m^2)`: `P ≡ r0 + p0·r1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellReduction {
    /// Part independent of `p0` (a polynomial in the spatial variables).
    pub r0: Polynomial,
    /// Coefficient of `p0` (a polynomial in the spatial variables).
    pub r1: Polynomial,
}

/// Reduce `P` modulo `p0^2 -> p1^2 + … + p{d-1}^2 + m^2`.
pub fn reduce_mod_shell(p: &Polynomial, m2: &Rational) -> ShellReduction {
    let d = p.dim();
    // rhs = p1^2 + ... + p{d-1}^2 + m^2, constant in p0.
    let mut rhs = Polynomial::constant(d, m2.clone());
    for i in 1..d {
        rhs = rhs.add(&Polynomial::variable(d, i).pow(2));
    }
    let coeffs = p.coeffs_in_var(0);
    let mut r0 = Polynomial::zero(d);
    let mut r1 = Polynomial::zero(d);
    let mut rhs_pows = vec![Polynomial::one(d)];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let half = k / 2;
        while rhs_pows.len() <= half {
            let next = rhs_pows.last().expect("nonempty").mul(&rhs);
            rhs_pows.push(next);
        }
        let reduced = c.mul(&rhs_pows[half]);
        if k % 2 == 0 {
            r0 = r0.add(&reduced);
        } else {
            r1 = r1.add(&reduced);
        }
    }
    ShellReduction { r0, r1 }
}

/// Verdict of the exact constancy test on the mass shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellConstancy {
    Constant(Rational),
    Nonconstant { witness: Polynomial },
}

impl ShellConstancy {
    pub fn is_constant(&self) -> bool {
        matches!(self, ShellConstancy::Constant(_))
    }
}

/// `P` is constant on the shell iff its reduction has `r1 = 0` and
/// constant `r0`; otherwise a nonzero witness polynomial is returned.
pub fn is_constant_on_shell(p: &Polynomial, m2: &Rational) -> ShellConstancy {
    let red = reduce_mod_shell(p, m2);
    if !red.r1.is_zero() {
        return ShellConstancy::Nonconstant { witness: red.r1 };
    }
    match red.r0.as_constant() {
        Some(c) => ShellConstancy::Constant(c),
        None => {
            let at_zero = red
                .r0
                .eval_rational(&vec![Rational::zero(); p.dim()])
                .expect("dimension is consistent");
            let witness = red.r0.sub(&Polynomial::constant(p.dim(), at_zero));
            ShellConstancy::Nonconstant { witness }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    fn p(expr: &str, dim: usize) -> Polynomial {
        parse(expr, dim).expect("test polynomial parses")
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 2]);
        let d = Monomial(vec![1, 0]);
        assert!(a > b && b > c);
        assert!(c > d);
    }

    #[test]
    fn arithmetic_is_exact() {
        let x = p("(p0-p2)^2", 4);
        assert_eq!(x, p("p0^2 - 2*p0*p2 + p2^2", 4));
        assert!(p("p1*p1 - p1^2", 3).is_zero());
        let third = Polynomial::constant(2, rat_i64(1, 3));
        let sum = third.add(&third).add(&third);
        assert_eq!(sum.as_constant().unwrap(), rat_int(1));
    }

    #[test]
    fn evaluate_examples() {
        let q = p("p0^2", 4)
            .eval_rational(&[rat_int(3), rat_int(0), rat_int(0), rat_int(0)])
            .unwrap();
        assert_eq!(q, rat_int(9));
        let lightlike = p("p0^2 - p1^2", 4)
            .eval_rational(&[rat_int(1), rat_int(1), rat_int(0), rat_int(0)])
            .unwrap();
        assert!(lightlike.is_zero());
        let v = p("2*p1*p3", 4)
            .eval_rational(&[rat_int(0), rat_int(1), rat_int(0), rat_int(2)])
            .unwrap();
        assert_eq!(v, rat_int(4));
        let err = p("p0", 3).eval_rational(&[rat_int(1)]);
        assert!(matches!(err, Err(PolyError::DimensionMismatch { .. })));
    }

    #[test]
    fn evenness() {
        assert!(p("p0^2", 4).is_even());
        assert!(!p("p0^3", 4).is_even());
        assert!(p("p0*p1 + 7", 4).is_even());
        assert!(Polynomial::zero(3).is_even());
    }

    #[test]
    fn reduce_mod_shell_examples() {
        let red = reduce_mod_shell(&p("p0", 2), &rat_int(1));
        assert!(red.r0.is_zero());
        assert_eq!(red.r1.as_constant().unwrap(), rat_int(1));

        let red = reduce_mod_shell(&p("p0^2", 4), &rat_int(1));
        assert_eq!(red.r0, p("p1^2 + p2^2 + p3^2 + 1", 4));
        assert!(red.r1.is_zero());

        let shell = p("p0^2 - p1^2 - p2^2 - p3^2", 4);
        let red = reduce_mod_shell(&shell, &rat_int(1));
        assert_eq!(red.r0.as_constant().unwrap(), rat_int(1));
        assert!(red.r1.is_zero());
    }

    #[test]
    fn reduction_is_consistent_with_exact_division() {
        // P - (r0 + p0*r1) must be divisible by the shell polynomial.
        let m2 = rat_i64(3, 2);
        let poly = p("p0^4 - 2*p0^3*p1 + p2^2*p0^2 - 5*p1*p2 + 1/3", 4);
        let red = reduce_mod_shell(&poly, &m2);
        let recomposed = red.r0.add(&Polynomial::variable(4, 0).mul(&red.r1));
        let diff = poly.sub(&recomposed);
        // Divide by (p0^2 - p1^2 - p2^2 - p3^2 - m2) in p0; remainder must vanish.
        let mut shell = Polynomial::variable(4, 0).pow(2);
        for i in 1..4 {
            shell = shell.sub(&Polynomial::variable(4, i).pow(2));
        }
        shell = shell.sub(&Polynomial::constant(4, m2));
        let mut rem = diff;
        loop {
            let deg = rem.degree_in(0);
            if deg < 2 {
                break;
            }
            let coeffs = rem.coeffs_in_var(0);
            let lead = &coeffs[deg as usize];
            let mut shift = lead.clone();
            let mut exps = vec![0; 4];
            exps[0] = deg - 2;
            shift = shift.mul(&Polynomial::from_terms(
                4,
                [(exps, Rational::one())],
            ));
            rem = rem.sub(&shift.mul(&shell));
        }
        assert!(rem.is_zero(), "remainder {rem} not zero");
    }

    #[test]
    fn constancy_examples() {
        assert_eq!(
            is_constant_on_shell(&Polynomial::one(4), &rat_int(5)),
            ShellConstancy::Constant(rat_int(1))
        );
        match is_constant_on_shell(&p("p0^2", 4), &rat_int(1)) {
            ShellConstancy::Nonconstant { witness } => {
                assert_eq!(witness, p("p1^2 + p2^2 + p3^2", 4));
            }
            other => panic!("expected nonconstant, got {other:?}"),
        }
        // (a·p)^2 with a = (0,0,1), d = 3, m = 0.
        assert!(!is_constant_on_shell(&p("p2^2", 3), &rat_int(0)).is_constant());
    }

    #[test]
    fn substitute_linear_identity() {
        let idm: Vec<Vec<Rational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { rat_int(1) } else { rat_int(0) })
                    .collect()
            })
            .collect();
        let q = p("p2^2 - 3*p0*p1", 4);
        assert_eq!(q.substitute_linear(&idm), q);
    }

    #[test]
    fn render_round_trip() {
        for expr in [
            "p0^2 - 2*p0*p2 + p2^2",
            "3/4*p1^4 + p2 - 7",
            "0",
            "-p0*p1*p2",
            "1/3",
        ] {
            let q = p(expr, 3);
            assert_eq!(parse(&q.render(), 3).unwrap(), q);
        }
    }
}
