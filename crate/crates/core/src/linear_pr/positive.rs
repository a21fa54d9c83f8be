//! Strictly positive points of affine families via Fourier–Motzkin elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polyalg::Rational;

/// Outcome of a positivity query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    Found(Vec<Rational>),
    Infeasible,
    /// Elimination exceeded the constraint cap.
    TooLarge,
}

/// `coeffs·μ + constant > 0`
#[derive(Debug, Clone, PartialEq, Eq)]
struct Strict {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Strict {
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(|| {
                if self.constant.is_zero() {
                    Rational::one()
                } else {
                    self.constant.clone()
                }
            })
            .abs();
        for c in &mut self.coeffs {
            *c /= &scale;
        }
        self.constant /= &scale;
        self
    }

    fn eval(&self, mu: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(mu)
            .map(|(a, b)| a * b)
            .sum::<Rational>()
            + &self.constant
    }
}

/// Simplest rational in the open interval `(lo, hi)`; `None` bounds are infinite.
pub fn simplest_between(lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some(a), None) => {
            if a.is_negative() {
                Rational::zero()
            } else {
                Rational::from_integer(a.floor().to_integer() + BigInt::one())
            }
        }
        (None, Some(b)) => {
            if b.is_positive() {
                Rational::zero()
            } else {
                -simplest_between(Some(&-b.clone()), None)
            }
        }
        (Some(a), Some(b)) => {
            assert!(a < b, "empty interval");
            if a.is_negative() && b.is_positive() {
                Rational::zero()
            } else if !a.is_negative() {
                simplest_positive(a, b)
            } else {
                -simplest_positive(&-b.clone(), &-a.clone())
            }
        }
    }
}

fn simplest_positive(a: &Rational, b: &Rational) -> Rational {
    let n = a.floor().to_integer();
    let next = Rational::from_integer(&n + BigInt::one());
    if &next < b {
        return next;
    }
    let nr = Rational::from_integer(n.clone());
    let lo = b - &nr;
    let hi = a - &nr;
    let inner = if hi.is_zero() {
        simplest_between(Some(&lo.recip()), None)
    } else {
        simplest_positive(&lo.recip(), &hi.recip())
    };
    nr + inner.recip()
}

fn eliminate(cons: Vec<Strict>, nvars: usize, cap: usize) -> Positivity {
    if nvars == 0 {
        return if cons.iter().all(|c| c.constant.is_positive()) {
            Positivity::Found(Vec::new())
        } else {
            Positivity::Infeasible
        };
    }
    let k = nvars - 1;
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in cons {
        if c.coeffs[k].is_positive() {
            lower.push(c);
        } else if c.coeffs[k].is_negative() {
            upper.push(c);
        } else {
            rest.push(c);
        }
    }
    let mut reduced: Vec<Strict> = rest
        .iter()
        .map(|c| Strict {
            coeffs: c.coeffs[..k].to_vec(),
            constant: c.constant.clone(),
        })
        .collect();
    for p in &lower {
        for n in &upper {
            let ap = p.coeffs[k].clone();
            let an = -n.coeffs[k].clone();
            let coeffs = (0..k)
                .map(|i| &p.coeffs[i] / &ap + &n.coeffs[i] / &an)
                .collect();
            let constant = &p.constant / &ap + &n.constant / &an;
            let s = Strict { coeffs, constant }.normalized();
            if !reduced.contains(&s) {
                reduced.push(s);
            }
            if reduced.len() > cap {
                return Positivity::TooLarge;
            }
        }
    }
    let mut point = match eliminate(reduced, k, cap) {
        Positivity::Found(p) => p,
        other => return other,
    };
    // μ_k > −rest/a for lower rows, μ_k < rest/(−a) for upper rows
    let bound = |c: &Strict| -> Rational {
        let partial = Strict {
            coeffs: c.coeffs[..k].to_vec(),
            constant: c.constant.clone(),
        }
        .eval(&point);
        -partial / &c.coeffs[k]
    };
    let lo = lower.iter().map(bound).max();
    let hi = upper.iter().map(bound).min();
    point.push(simplest_between(lo.as_ref(), hi.as_ref()));
    Positivity::Found(point)
}

/// Finds `q = q0 + Σ μ_i k_i` with every entry strictly positive.
pub fn positive_point(q0: &[Rational], kernel: &[Vec<Rational>], cap: usize) -> Positivity {
    let cons: Vec<Strict> = (0..q0.len())
        .map(|j| Strict {
            coeffs: kernel.iter().map(|k| k[j].clone()).collect(),
            constant: q0[j].clone(),
        })
        .collect();
    match eliminate(cons, kernel.len(), cap) {
        Positivity::Found(mu) => {
            let q: Vec<Rational> = (0..q0.len())
                .map(|j| {
                    q0[j].clone()
                        + kernel
                            .iter()
                            .zip(&mu)
                            .map(|(k, m)| &k[j] * m)
                            .sum::<Rational>()
                })
                .collect();
            debug_assert!(q.iter().all(Signed::is_positive));
            Positivity::Found(q)
        }
        other => other,
    }
}
