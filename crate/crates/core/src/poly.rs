//! Sparse multivariate polynomials with nonnegative integer coefficients,
//! just enough to expand and compare spanning-tree generating functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Which objects the variables of a polynomial are indexed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarFamily {
    Edge,
    Vertex,
}

/// A monomial as a sorted multiset of variable indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vars.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Variables with repetition, ascending.
    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> usize {
        self.0.iter().filter(|&&x| x == var).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_vars(self.0.iter().map(|&x| f(x)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let var = self.0[i];
            let power = self.0[i..].iter().take_while(|&&x| x == var).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{var}")?;
            if power > 1 {
                write!(f, "^{power}")?;
            }
            i += power;
        }
        Ok(())
    }
}

/// Σ coefficient · monomial. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    family: VarFamily,
    terms: BTreeMap<Monomial, BigUint>,
}

impl GenPoly {
    pub fn zero(family: VarFamily) -> Self {
        GenPoly {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(family: VarFamily) -> Self {
        let mut p = Self::zero(family);
        p.add_term(Monomial::one(), BigUint::one());
        p
    }

    /// Σ x_i over the given variables.
    pub fn sum_of_vars(family: VarFamily, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero(family);
        for v in vars {
            p.add_term(Monomial(vec![v]), BigUint::one());
        }
        p
    }

    pub fn family(&self) -> VarFamily {
        self.family
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(monomial).or_default() += coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigUint {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        debug_assert_eq!(self.family, other.family);
        let mut out = GenPoly::zero(self.family);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> GenPoly {
        let mut out = GenPoly::one(self.family);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Value with every variable set to 1, i.e. the sum of the coefficients.
    pub fn eval_ones(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn eval(&self, value: impl Fn(usize) -> BigUint) -> BigUint {
        self.terms
            .iter()
            .map(|(m, c)| m.vars().iter().fold(c.clone(), |acc, &x| acc * value(x)))
            .sum()
    }

    /// Substitutes variable `i` by variable `f(i)` of `family`.
    pub fn rename(&self, family: VarFamily, f: impl Fn(usize) -> usize) -> GenPoly {
        let mut out = GenPoly::zero(family);
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// The smallest monomial whose coefficients differ, with both coefficients.
    pub fn first_difference(&self, other: &GenPoly) -> Option<(Monomial, BigUint, BigUint)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let (a, b) = (self.coefficient(m), other.coefficient(m));
            (a != b).then(|| (m.clone(), a, b))
        })
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
