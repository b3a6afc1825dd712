//! Exact rational Lorentz transformations and wedge frames.
//!
//! Rotations and boosts use Cayley-style rational parametrizations
//! (`cos = (1-t^2)/(1+t^2)`, `cosh = (1+t^2)/(1-t^2)`), so the metric
//! identity `Λ^T η Λ = η` holds with zero error and every frame change of
//! a polynomial stays exact.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LorentzError {
    #[error("invalid rotation axes ({i},{j}): need 1 <= i < j <= {max}")]
    InvalidRotationAxes { i: usize, j: usize, max: usize },
    #[error("invalid boost axis {i}: need 1 <= i <= {max}")]
    InvalidBoostAxis { i: usize, max: usize },
    #[error("boost parameter |t| must be < 1, got {t}")]
    BoostParameterOutOfRange { t: String },
    #[error("matrix is not a proper orthochronous Lorentz transformation: {reason}")]
    NotLorentz { reason: String },
}

/// Proper orthochronous Lorentz transformation with exact rational
/// entries, signature `diag(+1, -1, …, -1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LorentzTransform {
    dim: usize,
    /// Row-major `dim x dim` entries.
    mat: Vec<Rational>,
}

fn eta(dim: usize, i: usize) -> Rational {
    if i == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl LorentzTransform {
    pub fn identity(dim: usize) -> Self {
        let mut mat = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            mat[i * dim + i] = Rational::one();
        }
        LorentzTransform { dim, mat }
    }

    /// Validate and wrap a row-major rational matrix.
    pub fn try_new(dim: usize, mat: Vec<Rational>) -> Result<Self, LorentzError> {
        assert_eq!(mat.len(), dim * dim, "matrix size mismatch");
        let lt = LorentzTransform { dim, mat };
        // Λ^T η Λ = η, exactly.
        for i in 0..dim {
            for j in 0..dim {
                let mut s = Rational::zero();
                for k in 0..dim {
                    s += lt.entry(k, i) * &eta(dim, k) * lt.entry(k, j);
                }
                let want = if i == j { eta(dim, i) } else { Rational::zero() };
                if s != want {
                    return Err(LorentzError::NotLorentz {
                        reason: format!("metric identity fails at ({i},{j})"),
                    });
                }
            }
        }
        if lt.entry(0, 0) < &Rational::one() {
            return Err(LorentzError::NotLorentz {
                reason: "not orthochronous: entry (0,0) < 1".into(),
            });
        }
        if lt.determinant() != Rational::one() {
            return Err(LorentzError::NotLorentz {
                reason: "determinant is not +1".into(),
            });
        }
        Ok(lt)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.mat[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self == &LorentzTransform::identity(self.dim)
    }

    /// Rational rotation in the spatial `(i,j)` plane with
    /// `cos = (1-t^2)/(1+t^2)`, `sin = 2t/(1+t^2)`; `t = 1` is the
    /// quarter turn, `t = 0` the identity.
    pub fn rotation(dim: usize, i: usize, j: usize, t: &Rational) -> Result<Self, LorentzError> {
        if !(1 <= i && i < j && j <= dim - 1) {
            return Err(LorentzError::InvalidRotationAxes { i, j, max: dim - 1 });
        }
        let t2 = t * t;
        let denom = Rational::one() + &t2;
        let cos = (Rational::one() - &t2) / &denom;
        let sin = (t + t) / &denom;
        let mut lt = LorentzTransform::identity(dim);
        lt.mat[i * dim + i] = cos.clone();
        lt.mat[j * dim + j] = cos;
        lt.mat[i * dim + j] = -sin.clone();
        lt.mat[j * dim + i] = sin;
        debug_assert!(LorentzTransform::try_new(dim, lt.mat.clone()).is_ok());
        Ok(lt)
    }

    /// Rational boost in the `(0,i)` plane with
    /// `cosh = (1+t^2)/(1-t^2)`, `sinh = 2t/(1-t^2)`, `|t| < 1`.
    pub fn boost(dim: usize, i: usize, t: &Rational) -> Result<Self, LorentzError> {
        if !(1 <= i && i <= dim - 1) {
            return Err(LorentzError::InvalidBoostAxis { i, max: dim - 1 });
        }
        if t.abs() >= Rational::one() {
            return Err(LorentzError::BoostParameterOutOfRange { t: t.to_string() });
        }
        let t2 = t * t;
        let denom = Rational::one() - &t2;
        let cosh = (Rational::one() + &t2) / &denom;
        let sinh = (t + t) / &denom;
        let mut lt = LorentzTransform::identity(dim);
        lt.mat[0] = cosh.clone();
        lt.mat[i * dim + i] = cosh;
        lt.mat[i] = sinh.clone();
        lt.mat[i * dim] = sinh;
        debug_assert!(LorentzTransform::try_new(dim, lt.mat.clone()).is_ok());
        Ok(lt)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut mat = vec![Rational::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        mat[i * d + j] += a * b;
                    }
                }
            }
        }
        LorentzTransform { dim: d, mat }
    }

    /// Exact inverse `η Λ^T η`.
    pub fn inverse(&self) -> LorentzTransform {
        let d = self.dim;
        let mut mat = vec![Rational::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                mat[i * d + j] = self.entry(j, i) * &eta(d, i) * &eta(d, j);
            }
        }
        LorentzTransform { dim: d, mat }
    }

    fn determinant(&self) -> Rational {
        // Gaussian elimination over the rationals.
        let d = self.dim;
        let mut m = self.mat.clone();
        let mut det = Rational::one();
        for col in 0..d {
            let pivot_row = (col..d).find(|&r| !m[r * d + col].is_zero());
            let pr = match pivot_row {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pr != col {
                for j in 0..d {
                    m.swap(pr * d + j, col * d + j);
                }
                det = -det;
            }
            let pivot = m[col * d + col].clone();
            det *= &pivot;
            for r in (col + 1)..d {
                let factor = &m[r * d + col] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..d {
                    let delta = &factor * &m[col * d + j];
                    m[r * d + j] -= delta;
                }
            }
        }
        det
    }

    /// Render entries as rational strings, row-major rows.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }

    /// Compact one-line description for reports.
    pub fn describe(&self) -> String {
        if self.is_identity() {
            return "identity".to_string();
        }
        let rows: Vec<String> = self
            .render_rows()
            .iter()
            .map(|r| format!("[{}]", r.join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// A wedge region `Λ·W_R + a`; the standard right wedge is
/// `(identity, 0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wedge {
    pub frame: LorentzTransform,
    pub offset: Vec<Rational>,
}

impl Wedge {
    pub fn right(dim: usize) -> Self {
        Wedge {
            frame: LorentzTransform::identity(dim),
            offset: vec![Rational::zero(); dim],
        }
    }

    pub fn transformed(frame: LorentzTransform) -> Self {
        let dim = frame.dim();
        Wedge {
            frame,
            offset: vec![Rational::zero(); dim],
        }
    }
}

/// The polynomial `p -> P(Λ^{-1} p)`, exactly.
pub fn apply_linear(p: &Polynomial, lt: &LorentzTransform) -> Polynomial {
    assert_eq!(p.dim(), lt.dim(), "dimension mismatch");
    p.substitute_linear(&lt.inverse().rows())
}

/// Deterministic generator set: rotations with `t = ±1, ±1/2` in every
/// spatial plane, boosts with `t = ±1/3, ±1/2` on every spatial axis.
pub fn generators(dim: usize) -> Vec<LorentzTransform> {
    let mut out = Vec::new();
    let rot_params = [rat_int(1), rat_int(-1), Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 2.into())];
    let boost_params = [
        Rational::new(1.into(), 3.into()),
        Rational::new((-1).into(), 3.into()),
        Rational::new(1.into(), 2.into()),
        Rational::new((-1).into(), 2.into()),
    ];
    for i in 1..dim {
        for j in (i + 1)..dim {
            for t in &rot_params {
                out.push(LorentzTransform::rotation(dim, i, j, t).expect("valid axes"));
            }
        }
    }
    for i in 1..dim {
        for t in &boost_params {
            out.push(LorentzTransform::boost(dim, i, t).expect("valid axis"));
        }
    }
    out
}

/// All products of at most `depth` generators, deduplicated by exact
/// matrix equality, in a deterministic breadth-first order starting from
/// the identity.
pub fn orbit(dim: usize, depth: usize) -> Vec<LorentzTransform> {
    let gens = generators(dim);
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut out = Vec::new();
    let identity = LorentzTransform::identity(dim);
    seen.insert(identity.mat.clone());
    out.push(identity);
    let mut frontier_start = 0;
    for _ in 0..depth {
        let frontier_end = out.len();
        for idx in frontier_start..frontier_end {
            let base = out[idx].clone();
            for g in &gens {
                let prod = base.compose(g);
                if seen.insert(prod.mat.clone()) {
                    out.push(prod);
                }
            }
        }
        frontier_start = frontier_end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::rat_i64;

    #[test]
    fn rotation_examples() {
        let quarter = LorentzTransform::rotation(3, 1, 2, &rat_int(1)).unwrap();
        assert!(quarter.entry(1, 1).is_zero());
        assert_eq!(quarter.entry(2, 1), &rat_int(1));
        assert_eq!(quarter.entry(1, 2), &rat_int(-1));

        let idm = LorentzTransform::rotation(3, 1, 2, &rat_int(0)).unwrap();
        assert!(idm.is_identity());

        let pyth = LorentzTransform::rotation(3, 1, 2, &rat_i64(1, 2)).unwrap();
        assert_eq!(pyth.entry(1, 1), &rat_i64(3, 5));
        assert_eq!(pyth.entry(2, 1), &rat_i64(4, 5));
        assert!(LorentzTransform::try_new(3, pyth.mat.clone()).is_ok());

        assert!(matches!(
            LorentzTransform::rotation(3, 2, 1, &rat_int(1)),
            Err(LorentzError::InvalidRotationAxes { .. })
        ));
        assert!(matches!(
            LorentzTransform::rotation(3, 0, 1, &rat_int(1)),
            Err(LorentzError::InvalidRotationAxes { .. })
        ));
    }

    #[test]
    fn boost_examples() {
        let b = LorentzTransform::boost(4, 2, &rat_i64(1, 3)).unwrap();
        assert_eq!(b.entry(0, 0), &rat_i64(5, 4));
        assert_eq!(b.entry(0, 2), &rat_i64(3, 4));
        assert!(LorentzTransform::boost(3, 1, &rat_int(0)).unwrap().is_identity());
        assert!(matches!(
            LorentzTransform::boost(3, 1, &rat_int(1)),
            Err(LorentzError::BoostParameterOutOfRange { .. })
        ));
        let fwd = LorentzTransform::boost(4, 2, &rat_i64(2, 5)).unwrap();
        let back = LorentzTransform::boost(4, 2, &rat_i64(-2, 5)).unwrap();
        assert!(fwd.compose(&back).is_identity());
        assert_eq!(fwd.inverse(), back);
    }

    #[test]
    fn orbit_depth_counts() {
        assert_eq!(orbit(3, 0).len(), 1);
        // d = 3: one rotation plane (4 params) + two boost axes (8) = 12
        // generators, all distinct from each other and the identity.
        assert_eq!(orbit(3, 1).len(), 13);
        for lt in orbit(3, 2) {
            assert!(LorentzTransform::try_new(3, lt.mat.clone()).is_ok());
        }
    }

    #[test]
    fn orbit_contains_lemma_witnesses() {
        // The quarter turn and a boost in the 2-direction drive the
        // witness search; both must be reachable at depth 1 when d >= 4.
        let o = orbit(4, 1);
        let quarter = LorentzTransform::rotation(4, 1, 2, &rat_int(1)).unwrap();
        let boost2 = LorentzTransform::boost(4, 2, &rat_i64(1, 3)).unwrap();
        assert!(o.contains(&quarter));
        assert!(o.contains(&boost2));
    }

    #[test]
    fn apply_linear_examples() {
        let p22 = parse("p2^2", 4).unwrap();
        let idm = LorentzTransform::identity(4);
        assert_eq!(apply_linear(&p22, &idm), p22);

        let quarter = LorentzTransform::rotation(4, 1, 2, &rat_int(1)).unwrap();
        assert_eq!(apply_linear(&p22, &quarter), parse("p1^2", 4).unwrap());

        let b = LorentzTransform::boost(4, 2, &rat_i64(1, 3)).unwrap();
        let want = parse("(5/4*p2 - 3/4*p0)^2", 4).unwrap();
        assert_eq!(apply_linear(&p22, &b), want);
    }

    #[test]
    fn apply_linear_round_trip() {
        let q = parse("p0^2*p1^2 - 3*p2^4 + p3*p1*p2*p0", 4).unwrap();
        for lt in orbit(4, 1) {
            let round = apply_linear(&apply_linear(&q, &lt), &lt.inverse());
            assert_eq!(round, q);
            assert!(apply_linear(&q, &lt).is_even() == q.is_even());
        }
    }

    #[test]
    fn rejects_non_lorentz() {
        let mut mat = vec![Rational::zero(); 9];
        mat[0] = rat_int(2);
        mat[4] = rat_int(1);
        mat[8] = rat_int(1);
        assert!(matches!(
            LorentzTransform::try_new(3, mat),
            Err(LorentzError::NotLorentz { .. })
        ));
    }
}
