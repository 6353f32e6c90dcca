//! Eigenvalue multiplicities of torsion units under integral characters.
//!
//! For a unit `u` of order `pq` and an integral character `chi` of degree
//! `d`, put `x = chi(u^p)`, `y = chi(u^q)` and `z = chi(u)`. Then
//!
//! ```text
//! pq * mu(1)       = d + (q-1)x + (p-1)y + (p-1)(q-1)z
//! pq * mu(zeta_p)  = d + (q-1)x -      y -      (q-1)z
//! pq * mu(zeta_q)  = d -      x + (p-1)y -      (p-1)z
//! pq * mu(zeta_pq) = d -      x -      y +             z
//! ```
//!
//! and a unit can only exist if all four right hand sides are non-negative
//! multiples of `pq`. A failure of that test is reported as a [`Violation`],
//! which is an answer, not an error.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::{chi_of_unit, is_prime, CharacterData, ClassTable, PartialAugmentation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Eigenvalue {
    One,
    ZetaP,
    ZetaQ,
    ZetaPq,
    /// A primitive root of unity of prime order `r`.
    ZetaR,
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Eigenvalue::One => "1",
            Eigenvalue::ZetaP => "zeta_p",
            Eigenvalue::ZetaQ => "zeta_q",
            Eigenvalue::ZetaPq => "zeta_pq",
            Eigenvalue::ZetaR => "zeta_r",
        };
        f.write_str(s)
    }
}

/// Why a multiplicity test failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NonIntegral {
        eigenvalue: Eigenvalue,
        numerator: i128,
        denominator: i128,
    },
    Negative {
        eigenvalue: Eigenvalue,
        value: i128,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonIntegral {
                eigenvalue,
                numerator,
                denominator,
            } => {
                write!(
                    f,
                    "mu({eigenvalue}) = {numerator}/{denominator} is not an integer"
                )
            }
            Violation::Negative { eigenvalue, value } => {
                write!(f, "mu({eigenvalue}) = {value} is negative")
            }
        }
    }
}

/// Outcome of a multiplicity computation on well-formed input.
pub type Feasibility<T> = std::result::Result<T, Violation>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityQuadruple {
    pub mu_1: i64,
    pub mu_zp: i64,
    pub mu_zq: i64,
    pub mu_zpq: i64,
}

impl MultiplicityQuadruple {
    /// `mu_1 + (p-1)mu_zp + (q-1)mu_zq + (p-1)(q-1)mu_zpq`, the degree of the
    /// character the quadruple came from.
    pub fn degree(&self, p: u64, q: u64) -> i128 {
        let (p, q) = (i128::from(p), i128::from(q));
        i128::from(self.mu_1)
            + (p - 1) * i128::from(self.mu_zp)
            + (q - 1) * i128::from(self.mu_zq)
            + (p - 1) * (q - 1) * i128::from(self.mu_zpq)
    }

    /// Multiplicity of a primitive `r`-th root of unity, `r` one of `p, q`.
    pub fn mu_zeta(&self, r: u64, p: u64, q: u64) -> Option<i64> {
        if r == p {
            Some(self.mu_zp)
        } else if r == q {
            Some(self.mu_zq)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeMultiplicities {
    pub mu_1: i64,
    pub mu_zr: i64,
}

/// Character values of a unit of order `pq` and of its two prime-order powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterValues {
    pub degree: i64,
    /// `chi(u^q)`, a unit of order `p`.
    pub at_u_q: i64,
    /// `chi(u^p)`, a unit of order `q`.
    pub at_u_p: i64,
    pub at_u: i64,
}

fn check_primes(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::InvalidInput(format!(
            "need two distinct primes, got {p} and {q}"
        )));
    }
    Ok(())
}

fn exact_quotient(
    eigenvalue: Eigenvalue,
    numerator: i128,
    denominator: i128,
) -> Result<Feasibility<i64>> {
    if numerator % denominator != 0 {
        return Ok(Err(Violation::NonIntegral {
            eigenvalue,
            numerator,
            denominator,
        }));
    }
    let value = numerator / denominator;
    if value < 0 {
        return Ok(Err(Violation::Negative { eigenvalue, value }));
    }
    Ok(Ok(
        i64::try_from(value).map_err(|_| Error::Overflow("eigenvalue multiplicity"))?
    ))
}

/// The four multiplicities of a unit of order `pq` from `d = chi(1)`,
/// `x = chi(u^p)`, `y = chi(u^q)` and `z = chi(u)`.
pub fn multiplicities_order_pq(
    d: i64,
    x: i64,
    y: i64,
    z: i64,
    p: u64,
    q: u64,
) -> Result<Feasibility<MultiplicityQuadruple>> {
    check_primes(p, q)?;
    if d < 1 {
        return Err(Error::InvalidInput(format!(
            "character degree must be positive, got {d}"
        )));
    }
    let [num_1, num_p, num_q, num_pq] = numerators(d, x, y, z, p, q);
    let n = i128::from(p) * i128::from(q);
    let mu_1 = match exact_quotient(Eigenvalue::One, num_1, n)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    let mu_zp = match exact_quotient(Eigenvalue::ZetaP, num_p, n)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    let mu_zq = match exact_quotient(Eigenvalue::ZetaQ, num_q, n)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    let mu_zpq = match exact_quotient(Eigenvalue::ZetaPq, num_pq, n)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    Ok(Ok(MultiplicityQuadruple {
        mu_1,
        mu_zp,
        mu_zq,
        mu_zpq,
    }))
}

/// Numerators `pq * mu` in the order `1, zeta_p, zeta_q, zeta_pq`.
pub(crate) fn numerators(d: i64, x: i64, y: i64, z: i64, p: u64, q: u64) -> [i128; 4] {
    let (d, x, y, z) = (i128::from(d), i128::from(x), i128::from(y), i128::from(z));
    let (p1, q1) = (i128::from(p) - 1, i128::from(q) - 1);
    [
        d + q1 * x + p1 * y + p1 * q1 * z,
        d + q1 * x - y - q1 * z,
        d - x + p1 * y - p1 * z,
        d - x - y + z,
    ]
}

/// Multiplicities of `1` and of a primitive `r`-th root for a unit of prime
/// order `r` with `chi(u) = z`.
pub fn multiplicities_prime_order(
    d: i64,
    z: i64,
    r: u64,
) -> Result<Feasibility<PrimeMultiplicities>> {
    if !is_prime(r) {
        return Err(Error::InvalidInput(format!("{r} is not prime")));
    }
    if d < 1 {
        return Err(Error::InvalidInput(format!(
            "character degree must be positive, got {d}"
        )));
    }
    let (d, z, r) = (i128::from(d), i128::from(z), i128::from(r));
    let mu_1 = match exact_quotient(Eigenvalue::One, d + (r - 1) * z, r)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    let mu_zr = match exact_quotient(Eigenvalue::ZetaR, d - z, r)? {
        Ok(v) => v,
        Err(v) => return Ok(Err(v)),
    };
    Ok(Ok(PrimeMultiplicities { mu_1, mu_zr }))
}

/// Character values determined by a multiplicity quadruple; the inverse of
/// [`multiplicities_order_pq`].
pub fn forward_character_values(
    m: &MultiplicityQuadruple,
    p: u64,
    q: u64,
) -> Result<CharacterValues> {
    check_primes(p, q)?;
    let (a, b, c, e) = (
        i128::from(m.mu_1),
        i128::from(m.mu_zp),
        i128::from(m.mu_zq),
        i128::from(m.mu_zpq),
    );
    let (p1, q1) = (i128::from(p) - 1, i128::from(q) - 1);
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("character value"));
    Ok(CharacterValues {
        degree: narrow(a + p1 * b + q1 * c + p1 * q1 * e)?,
        at_u_q: narrow(a - b + q1 * c - q1 * e)?,
        at_u_p: narrow(a + p1 * b - c - p1 * e)?,
        at_u: narrow(a - b - c + e)?,
    })
}

/// Partial augmentations of a unit of order `pq` (`p < q`) together with
/// those of its powers `u^p` (order `q`) and `u^q` (order `p`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitCandidate {
    pub p: u64,
    pub q: u64,
    /// Partial augmentations of `u^p`, on the classes of order `q`.
    pub pa_up: PartialAugmentation,
    /// Partial augmentations of `u^q`, on the classes of order `p`.
    pub pa_uq: PartialAugmentation,
    /// Partial augmentations of `u`.
    pub pa_u: PartialAugmentation,
}

impl UnitCandidate {
    pub fn order(&self) -> u64 {
        self.p * self.q
    }

    /// Serialised tuple: the powers first (`u^q`, then `u^p`), each omitted
    /// when only one class of that order exists, followed by `u` itself.
    pub fn tuple(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for power in [&self.pa_uq, &self.pa_up] {
            if power.entries.len() > 1 {
                out.extend(power.values());
            }
        }
        out.extend(self.pa_u.values());
        out
    }

    /// Total ordering key including the forced singleton powers.
    pub fn sort_key(&self) -> Vec<i64> {
        let mut out = self.pa_uq.values();
        out.extend(self.pa_up.values());
        out.extend(self.pa_u.values());
        out
    }

    /// Inverse of [`UnitCandidate::tuple`] for a unit of order `order`.
    pub fn from_tuple(classes: &ClassTable, order: u64, tuple: &[i64]) -> Result<Self> {
        let (p, q) = split_order(order)?;
        let order_p = classes.of_order(p);
        let order_q = classes.of_order(q);
        let support = classes.support_for(order);
        let mut rest = tuple;
        let mut take = |labels: &[String], unit_order: u64| -> Result<PartialAugmentation> {
            if labels.len() == 1 {
                return PartialAugmentation::new(unit_order, labels, &[1]);
            }
            if rest.len() < labels.len() {
                return Err(Error::InvalidInput(format!(
                    "candidate tuple {tuple:?} is too short for order {order}"
                )));
            }
            let (head, tail) = rest.split_at(labels.len());
            rest = tail;
            PartialAugmentation::new(unit_order, labels, head)
        };
        if order_p.is_empty() || order_q.is_empty() {
            return Err(Error::InvalidInput(format!(
                "no classes of order {p} or {q}"
            )));
        }
        let pa_uq = take(&order_p, p)?;
        let pa_up = take(&order_q, q)?;
        if rest.len() != support.len() {
            return Err(Error::InvalidInput(format!(
                "candidate tuple {tuple:?} has {} entries for u, expected {}",
                rest.len(),
                support.len()
            )));
        }
        let pa_u = PartialAugmentation::new(order, &support, rest)?;
        Ok(UnitCandidate {
            p,
            q,
            pa_up,
            pa_uq,
            pa_u,
        })
    }

    pub fn problems(&self, classes: &ClassTable) -> Vec<String> {
        let mut problems = Vec::new();
        for pa in [&self.pa_uq, &self.pa_up, &self.pa_u] {
            problems.extend(pa.problems(classes));
        }
        problems
    }

    pub fn validate(&self, classes: &ClassTable) -> Result<()> {
        let problems = self.problems(classes);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// The four multiplicities of `u` under `chi`.
    pub fn quadruple(&self, chi: &CharacterData) -> Result<Feasibility<MultiplicityQuadruple>> {
        let x = chi_of_unit(chi, &self.pa_up)?;
        let y = chi_of_unit(chi, &self.pa_uq)?;
        let z = chi_of_unit(chi, &self.pa_u)?;
        multiplicities_order_pq(chi.degree, x, y, z, self.p, self.q)
    }
}

impl fmt::Display for UnitCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Splits `n = pq` into primes `p < q`.
pub fn split_order(n: u64) -> Result<(u64, u64)> {
    match crate::character::factorize(n).as_slice() {
        [p, q] if p != q => Ok((*p, *q)),
        _ => Err(Error::InvalidInput(format!(
            "{n} is not a product of two distinct primes"
        ))),
    }
}
