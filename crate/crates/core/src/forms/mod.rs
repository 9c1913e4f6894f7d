//! Regular multilinear forms and homogeneous polynomials.

mod additivity;
mod iso;
mod matrix;
mod measure;
mod modulus;
mod orthosym;
mod polarize;
mod polynomial;
mod surd;
mod tensor;
mod verdict;

pub use additivity::{orthogonal_additivity_check, reverify_additivity, AdditivityMode};
pub use iso::{norm_check, poly_lattice_ops, to_measure, to_poly, PolyLatticeOp};
pub use matrix::GeneralMatrixForm;
pub use measure::Measure;
pub use modulus::{atomic_partition, modulus_partition_oracle, tensor_modulus};
pub use orthosym::{orthosymmetry_check, reverify_orthosymmetry, OrthosymmetryMode};
pub use polarize::{polar_value, polarize};
pub use polynomial::{eval_poly, PolyArg, Polynomial};
pub use surd::Surd;
pub use tensor::SymTensor;
pub use verdict::{Counterexample, Value, Verdict};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

/// A symmetric tensor or a (possibly asymmetric) bilinear matrix form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "form", rename_all = "camelCase")]
pub enum Form {
    Sym(SymTensor),
    Matrix(GeneralMatrixForm),
}

impl Form {
    pub fn degree(&self) -> usize {
        match self {
            Form::Sym(t) => t.degree(),
            Form::Matrix(_) => 2,
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Form::Sym(t) => t.space(),
            Form::Matrix(g) => g.space(),
        }
    }

    pub fn eval(&self, args: &[Element]) -> Result<Rational> {
        match self {
            Form::Sym(t) => t.eval(args),
            Form::Matrix(g) => match args {
                [x, y] => g.eval(x, y),
                _ => Err(Error::Arity {
                    expected: 2,
                    got: args.len(),
                }),
            },
        }
    }

    /// Positions of some nonzero coefficient whose indices are not all equal.
    pub fn first_off_diagonal(&self) -> Option<Vec<usize>> {
        match self {
            Form::Sym(t) => t.first_off_diagonal().map(|(k, _)| k.clone()),
            Form::Matrix(g) => g.first_off_diagonal().map(|(i, j)| vec![i, j]),
        }
    }
}
