use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{nested, Poly};

/// The structural identities of the free associative algebra used by the
/// containment arguments, plus two closing identities in two variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `[ab,c] = a[b,c] + [a,c]b`
    Leibniz,
    /// `[a,b,c] + [c,a,b] + [b,c,a] = 0`
    Jacobi,
    /// `[a,b][a,c] = a[a,b,c] + [a,b,a]c + [a,ac,b]`
    Pigeonhole,
    /// `[x,[y,[y,x]]] = [y,[x,[y,x]]]`
    Fun1,
    /// `[xy,[y,x]] = [yx,[y,x]]`
    Fun2,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::Leibniz,
        Identity::Jacobi,
        Identity::Pigeonhole,
        Identity::Fun1,
        Identity::Fun2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Leibniz => "leibniz",
            Identity::Jacobi => "jacobi",
            Identity::Pigeonhole => "pigeonhole",
            Identity::Fun1 => "fun1",
            Identity::Fun2 => "fun2",
        }
    }

    /// Number of formal variables, each mapped to its own generator.
    pub fn arity(self) -> usize {
        match self {
            Identity::Leibniz | Identity::Jacobi | Identity::Pigeonhole => 3,
            Identity::Fun1 | Identity::Fun2 => 2,
        }
    }

    /// Both sides expanded over distinct generators `x_1, x_2, ...` of `A_n`.
    pub fn sides(self, n: usize) -> Result<(Poly, Poly)> {
        if n < self.arity() {
            return Err(Error::TooFewGenerators { name: self.name().into(), needed: self.arity(), n });
        }
        let g = |i| Poly::generator(n, i);
        let br = |a: &Poly, b: &Poly| a.bracket(b);
        Ok(match self {
            Identity::Leibniz => {
                let (a, b, c) = (g(1)?, g(2)?, g(3)?);
                let lhs = br(&(&a * &b), &c)?;
                let rhs = &(&a * &br(&b, &c)?) + &(&br(&a, &c)? * &b);
                (lhs, rhs)
            }
            Identity::Jacobi => {
                let (a, b, c) = (g(1)?, g(2)?, g(3)?);
                let lhs = [
                    nested(&[a.clone(), b.clone(), c.clone()])?,
                    nested(&[c.clone(), a.clone(), b.clone()])?,
                    nested(&[b, c, a])?,
                ]
                .iter()
                .fold(Poly::zero(n), |acc, t| &acc + t);
                (lhs, Poly::zero(n))
            }
            Identity::Pigeonhole => {
                let (a, b, c) = (g(1)?, g(2)?, g(3)?);
                let lhs = &br(&a, &b)? * &br(&a, &c)?;
                let rhs = [
                    &a * &nested(&[a.clone(), b.clone(), c.clone()])?,
                    &nested(&[a.clone(), b.clone(), a.clone()])? * &c,
                    nested(&[a.clone(), &a * &c, b])?,
                ]
                .iter()
                .fold(Poly::zero(n), |acc, t| &acc + t);
                (lhs, rhs)
            }
            Identity::Fun1 => {
                let (x, y) = (g(1)?, g(2)?);
                let lhs = nested(&[x.clone(), y.clone(), y.clone(), x.clone()])?;
                let rhs = nested(&[y.clone(), x.clone(), y, x])?;
                (lhs, rhs)
            }
            Identity::Fun2 => {
                let (x, y) = (g(1)?, g(2)?);
                let yx = br(&y, &x)?;
                (br(&(&x * &y), &yx)?, br(&(&y * &x), &yx)?)
            }
        })
    }

    pub fn verify(self, n: usize) -> Result<bool> {
        let (lhs, rhs) = self.sides(n)?;
        Ok(lhs == rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expands both sides of the named identity and compares them.
pub fn verify_identity(name: &str, n: usize) -> Result<bool> {
    name.parse::<Identity>()?.verify(n)
}
