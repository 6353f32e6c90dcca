//! Conjugacy classes, integral characters and partial augmentations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub id: String,
    pub order: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharacterKind {
    Ordinary,
    /// Brauer character in the given characteristic.
    Brauer(u64),
}

impl fmt::Display for CharacterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterKind::Ordinary => write!(f, "ordinary"),
            CharacterKind::Brauer(ell) => write!(f, "{ell}-modular Brauer"),
        }
    }
}

/// An integral-valued character given by its values on named classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub id: String,
    pub degree: i64,
    pub kind: CharacterKind,
    pub values: BTreeMap<String, i64>,
}

impl CharacterData {
    pub fn value(&self, class: &str) -> Option<i64> {
        self.values.get(class).copied()
    }

    /// Whether this character may be evaluated on a unit of order `n`.
    pub fn applies_to_order(&self, n: u64) -> bool {
        match self.kind {
            CharacterKind::Ordinary => true,
            CharacterKind::Brauer(ell) => !n.is_multiple_of(ell),
        }
    }
}

/// Class list of a group, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTable {
    classes: Vec<ClassInfo>,
}

impl ClassTable {
    pub fn new(classes: Vec<ClassInfo>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &classes {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate class label {:?}",
                    c.id
                )));
            }
        }
        Ok(ClassTable { classes })
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn get(&self, id: &str) -> Option<&ClassInfo> {
        self.classes.iter().find(|c| c.id == id)
    }

    /// Labels of the classes of element order exactly `order`.
    pub fn of_order(&self, order: u64) -> Vec<String> {
        self.classes
            .iter()
            .filter(|c| c.order == order)
            .map(|c| c.id.clone())
            .collect()
    }

    /// Labels of nontrivial classes whose element order divides `n`.
    pub fn support_for(&self, n: u64) -> Vec<String> {
        self.classes
            .iter()
            .filter(|c| c.order > 1 && n.is_multiple_of(c.order))
            .map(|c| c.id.clone())
            .collect()
    }
}

/// Partial augmentations of a unit of order `unit_order`, listed over a
/// fixed sequence of classes (zeros included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAugmentation {
    pub unit_order: u64,
    pub entries: Vec<(String, i64)>,
}

impl PartialAugmentation {
    pub fn new(unit_order: u64, classes: &[String], eps: &[i64]) -> Result<Self> {
        if classes.len() != eps.len() {
            return Err(Error::InvalidInput(format!(
                "{} partial augmentations given for {} classes",
                eps.len(),
                classes.len()
            )));
        }
        Ok(PartialAugmentation {
            unit_order,
            entries: classes.iter().cloned().zip(eps.iter().copied()).collect(),
        })
    }

    /// The augmentation of an actual group element of class `class`.
    pub fn concentrated(unit_order: u64, classes: &[String], class: &str) -> Result<Self> {
        let eps: Vec<i64> = classes.iter().map(|c| i64::from(c == class)).collect();
        if !eps.contains(&1) {
            return Err(Error::unknown("class", class));
        }
        PartialAugmentation::new(unit_order, classes, &eps)
    }

    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|(_, e)| *e).collect()
    }

    pub fn get(&self, class: &str) -> i64 {
        self.entries
            .iter()
            .find(|(c, _)| c == class)
            .map_or(0, |(_, e)| *e)
    }

    /// Checks normalisation and the support conditions: every class with a
    /// nonzero entry is nontrivial and its element order divides the unit
    /// order. Returns every problem found.
    pub fn problems(&self, classes: &ClassTable) -> Vec<String> {
        let mut problems = Vec::new();
        let sum: i128 = self.entries.iter().map(|(_, e)| i128::from(*e)).sum();
        if sum != 1 {
            problems.push(format!(
                "partial augmentations of a unit of order {} sum to {sum}, expected 1",
                self.unit_order
            ));
        }
        for (class, eps) in &self.entries {
            match classes.get(class) {
                None => problems.push(format!("unknown class {class:?}")),
                Some(info) if *eps != 0 && (info.order == 1 || !self.unit_order.is_multiple_of(info.order)) => {
                    problems.push(format!(
                        "class {class} of element order {} cannot carry a partial augmentation of a unit of order {}",
                        info.order, self.unit_order
                    ))
                }
                _ => {}
            }
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
}

impl fmt::Display for PartialAugmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (_, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `chi(u) = sum over classes of eps_x(u) * chi(x)`.
pub fn chi_of_unit(chi: &CharacterData, pa: &PartialAugmentation) -> Result<i64> {
    if let CharacterKind::Brauer(ell) = chi.kind {
        if pa.unit_order.is_multiple_of(ell) {
            return Err(Error::BrauerCharacteristic {
                character: chi.id.clone(),
                ell,
                order: pa.unit_order,
            });
        }
    }
    let mut total: i64 = 0;
    for (class, eps) in &pa.entries {
        if *eps == 0 {
            continue;
        }
        let value = chi.value(class).ok_or_else(|| Error::MissingClassValue {
            character: chi.id.clone(),
            class: class.clone(),
        })?;
        total = eps
            .checked_mul(value)
            .and_then(|t| total.checked_add(t))
            .ok_or(Error::Overflow("character value of a unit"))?;
    }
    Ok(total)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factors of `n` in ascending order, with multiplicity.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
