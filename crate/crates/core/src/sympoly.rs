//! Small sparse multivariate polynomials over `Q` with a distinguished
//! `eps` variable. Used for full symbolic expansion where instances are tiny:
//! exhaustive determinant checks, tensor expansion oracles, interpolation
//! cross-checks. Not meant for large polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A monomial: power of `eps` plus exponents of the ordinary variables
/// (zero exponents are never stored).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Mono {
    pub eps: u32,
    pub vars: BTreeMap<usize, u32>,
}

impl Mono {
    fn mul(&self, other: &Mono) -> Mono {
        let mut vars = self.vars.clone();
        for (&v, &e) in &other.vars {
            *vars.entry(v).or_insert(0) += e;
        }
        Mono { eps: self.eps + other.eps, vars }
    }

    pub fn total_degree(&self) -> u32 {
        self.vars.values().sum()
    }
}

/// Polynomial as a monomial-to-coefficient map; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn constant(q: BigRational) -> SymPoly {
        let mut p = SymPoly::zero();
        if !q.is_zero() {
            p.terms.insert(Mono::default(), q);
        }
        p
    }

    pub fn from_integer(v: i64) -> SymPoly {
        SymPoly::constant(BigRational::from(BigInt::from(v)))
    }

    pub fn one() -> SymPoly {
        SymPoly::from_integer(1)
    }

    pub fn var(index: usize) -> SymPoly {
        let mut vars = BTreeMap::new();
        vars.insert(index, 1);
        let mut p = SymPoly::zero();
        p.terms.insert(Mono { eps: 0, vars }, BigRational::one());
        p
    }

    pub fn eps() -> SymPoly {
        let mut p = SymPoly::zero();
        p.terms.insert(Mono { eps: 1, vars: BTreeMap::new() }, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, mono: Mono, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, by: &BigRational) -> SymPoly {
        let mut out = SymPoly::zero();
        if by.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * by);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.mul_trunc(other, u32::MAX)
    }

    /// Product with monomials of `eps`-degree `>= eps_cap` discarded, i.e.
    /// multiplication in `Q[vars][eps]/(eps^eps_cap)`.
    pub fn mul_trunc(&self, other: &SymPoly, eps_cap: u32) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            if ma.eps >= eps_cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.eps.saturating_add(mb.eps) >= eps_cap {
                    continue;
                }
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Discard all monomials with `eps`-degree `>= eps_cap`.
    pub fn trunc_eps(&self, eps_cap: u32) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            if m.eps < eps_cap {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient of `eps^k` as a polynomial in the ordinary variables.
    pub fn eps_coeff(&self, k: u32) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            if m.eps == k {
                out.terms.insert(Mono { eps: 0, vars: m.vars.clone() }, c.clone());
            }
        }
        out
    }

    /// Largest total degree in the ordinary variables (eps excluded);
    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    /// Substitute rational values for the ordinary variables (eps must not
    /// appear).
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            assert_eq!(m.eps, 0, "eps left in evaluated polynomial");
            let mut term = c.clone();
            for (&v, &e) in &m.vars {
                for _ in 0..e {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if m.eps > 0 {
                write!(f, "*eps^{}", m.eps)?;
            }
            for (v, e) in &m.vars {
                write!(f, "*x{v}^{e}")?;
            }
        }
        Ok(())
    }
}
