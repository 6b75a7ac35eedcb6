use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// A monomial order, represented internally as an integer matrix order.
///
/// Every supported order compares two monomials by lexicographically
/// comparing `M·α` for a fixed integer matrix `M`; the rows of `M` are
/// produced by [`TermOrder::matrix`]. Keys are linear in the exponents, so
/// `key(u·v) = key(u) + key(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Lexicographic; `priority[k]` is the k-th most significant variable.
    Lex { priority: Option<Vec<usize>> },
    /// Degree then reverse lexicographic, with the same priority convention.
    DegRevLex { priority: Option<Vec<usize>> },
    /// `weights · α` first, then `tiebreak`.
    Weighted {
        weights: Vec<i64>,
        tiebreak: Box<TermOrder>,
    },
}

impl TermOrder {
    pub fn lex() -> Self {
        TermOrder::Lex { priority: None }
    }

    pub fn degrevlex() -> Self {
        TermOrder::DegRevLex { priority: None }
    }

    pub fn weighted(weights: Vec<i64>, tiebreak: TermOrder) -> Self {
        TermOrder::Weighted {
            weights,
            tiebreak: Box::new(tiebreak),
        }
    }

    /// Block order in which every monomial involving one of `vars` is greater
    /// than every monomial in the remaining variables.
    pub fn elimination(nvars: usize, vars: &[usize]) -> Self {
        let mut w = vec![0; nvars];
        for &v in vars {
            w[v] = 1;
        }
        TermOrder::weighted(w, TermOrder::degrevlex())
    }

    pub fn with_priority(self, priority: Vec<usize>) -> Self {
        match self {
            TermOrder::Lex { .. } => TermOrder::Lex {
                priority: Some(priority),
            },
            TermOrder::DegRevLex { .. } => TermOrder::DegRevLex {
                priority: Some(priority),
            },
            TermOrder::Weighted { weights, tiebreak } => TermOrder::Weighted {
                weights,
                tiebreak: Box::new(tiebreak.with_priority(priority)),
            },
        }
    }

    /// Parses the CLI names `lex` and `degrevlex`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(TermOrder::lex()),
            "degrevlex" | "grevlex" => Some(TermOrder::degrevlex()),
            _ => None,
        }
    }

    /// Checks that the order is defined on a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Lex { priority } | TermOrder::DegRevLex { priority } => {
                if let Some(p) = priority {
                    let mut seen = vec![false; nvars];
                    if p.len() != nvars {
                        return Err(Error::LengthMismatch {
                            expected: nvars,
                            found: p.len(),
                        });
                    }
                    for &i in p {
                        if i >= nvars || seen[i] {
                            return Err(Error::InvalidInput(format!(
                                "variable priority {p:?} is not a permutation"
                            )));
                        }
                        seen[i] = true;
                    }
                }
                Ok(())
            }
            TermOrder::Weighted { weights, tiebreak } => {
                if weights.len() != nvars {
                    return Err(Error::LengthMismatch {
                        expected: nvars,
                        found: weights.len(),
                    });
                }
                tiebreak.validate(nvars)
            }
        }
    }

    /// Whether 1 is the minimal monomial, i.e. the order can drive Buchberger.
    pub fn is_well_order(&self) -> bool {
        match self {
            TermOrder::Lex { .. } | TermOrder::DegRevLex { .. } => true,
            TermOrder::Weighted { weights, tiebreak } => {
                weights.iter().all(|&w| w >= 0) && tiebreak.is_well_order()
            }
        }
    }

    pub fn ensure_well_order(&self, nvars: usize) -> Result<()> {
        self.validate(nvars)?;
        if self.is_well_order() {
            Ok(())
        } else {
            Err(Error::NotWellOrder(self.to_string()))
        }
    }

    /// Rows of the order matrix for a ring with `nvars` variables.
    pub fn matrix(&self, nvars: usize) -> Vec<Vec<i64>> {
        let identity: Vec<usize> = (0..nvars).collect();
        let unit = |i: usize, sign: i64| {
            let mut r = vec![0; nvars];
            r[i] = sign;
            r
        };
        match self {
            TermOrder::Lex { priority } => {
                let p = priority.as_ref().unwrap_or(&identity);
                p.iter().map(|&i| unit(i, 1)).collect()
            }
            TermOrder::DegRevLex { priority } => {
                let p = priority.as_ref().unwrap_or(&identity);
                let mut rows = vec![vec![1; nvars]];
                rows.extend(p.iter().rev().map(|&i| unit(i, -1)));
                rows
            }
            TermOrder::Weighted { weights, tiebreak } => {
                let mut rows = vec![weights.clone()];
                rows.extend(tiebreak.matrix(nvars));
                rows
            }
        }
    }

    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        key_with(&self.matrix(m.nvars()), m)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

pub(crate) fn key_with(matrix: &[Vec<i64>], m: &Monomial) -> Vec<i64> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(m.exponents())
                .map(|(w, &e)| w * e as i64)
                .sum()
        })
        .collect()
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex { priority: None } => write!(f, "lex"),
            TermOrder::Lex { priority: Some(p) } => write!(f, "lex{p:?}"),
            TermOrder::DegRevLex { priority: None } => write!(f, "degrevlex"),
            TermOrder::DegRevLex { priority: Some(p) } => write!(f, "degrevlex{p:?}"),
            TermOrder::Weighted { weights, tiebreak } => {
                write!(f, "weighted({weights:?}, {tiebreak})")
            }
        }
    }
}
