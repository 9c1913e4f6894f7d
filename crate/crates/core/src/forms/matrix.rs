use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::forms::SymTensor;
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

/// A bilinear form `A(x, y) = Σ a_ij x_i y_j` that need not be symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralMatrixForm {
    rows: Vec<Vec<Rational>>,
}

impl GeneralMatrixForm {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<GeneralMatrixForm> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        Ok(GeneralMatrixForm { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<GeneralMatrixForm> {
        GeneralMatrixForm::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn space(&self) -> Space {
        Space::finite(self.n())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn eval(&self, x: &Element, y: &Element) -> Result<Rational> {
        for v in [x, y] {
            if v.space() != self.space() {
                return Err(Error::SpaceMismatch {
                    left: self.space(),
                    right: v.space(),
                });
            }
        }
        let mut total = Rational::zero();
        for (i, row) in self.rows.iter().enumerate() {
            if x.at(i).is_zero() {
                continue;
            }
            let s: Rational = row.iter().enumerate().map(|(j, a)| a * y.at(j)).sum();
            total = &total + &(x.at(i) * &s);
        }
        Ok(total)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn first_off_diagonal(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !self.rows[i][j].is_zero())
    }

    pub fn abs(&self) -> GeneralMatrixForm {
        GeneralMatrixForm {
            rows: self.rows.iter().map(|r| r.iter().map(Rational::abs).collect()).collect(),
        }
    }

    /// The symmetric tensor with the same entries, if the matrix is symmetric.
    pub fn to_sym(&self) -> Option<SymTensor> {
        if !self.is_symmetric() {
            return None;
        }
        let n = self.n();
        let entries = (0..n).flat_map(|i| (i..n).map(move |j| (vec![i, j], self.rows[i][j].clone())));
        SymTensor::from_entries(n, 2, entries).ok()
    }
}

impl<'de> Deserialize<'de> for GeneralMatrixForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            rows: Vec<Vec<Rational>>,
        }
        GeneralMatrixForm::new(Repr::deserialize(d)?.rows).map_err(serde::de::Error::custom)
    }
}
