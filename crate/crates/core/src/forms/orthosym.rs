use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::verdict::{reverify_with, sample_until_failure};
use crate::forms::{Counterexample, Form, Value, Verdict};
use crate::lattice::{is_disjoint, rearrange_all, Element};
use crate::random::Gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OrthosymmetryMode {
    /// Off-diagonal coefficients vanish; exact and decisive.
    Diagonal,
    /// `A(x_1, …, x_m) = A(J_1 x, …, J_m x)`.
    JIdentity,
    /// `A(x, y) = A(x ∨ y, x ∧ y)`; bilinear forms only.
    BilinearKusraev,
    /// `A(x_1, …, x_m) = 0` when two arguments are disjoint.
    DisjointPairs,
}

impl OrthosymmetryMode {
    pub const ALL: [OrthosymmetryMode; 4] = [
        OrthosymmetryMode::Diagonal,
        OrthosymmetryMode::JIdentity,
        OrthosymmetryMode::BilinearKusraev,
        OrthosymmetryMode::DisjointPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrthosymmetryMode::Diagonal => "diagonal",
            OrthosymmetryMode::JIdentity => "jIdentity",
            OrthosymmetryMode::BilinearKusraev => "bilinearKusraev",
            OrthosymmetryMode::DisjointPairs => "disjointPairs",
        }
    }
}

fn has_disjoint_pair(args: &[Element]) -> Result<bool> {
    for i in 0..args.len() {
        for j in i + 1..args.len() {
            if is_disjoint(&args[i], &args[j])? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Both sides of the mode's identity, or `None` when `args` is outside the
/// identity's hypothesis.
fn sides(form: &Form, mode: OrthosymmetryMode, args: &[Element]) -> Result<Option<(Value, Value)>> {
    let lhs = Value::from(form.eval(args)?);
    match mode {
        OrthosymmetryMode::Diagonal | OrthosymmetryMode::DisjointPairs => {
            if !has_disjoint_pair(args)? {
                return Ok(None);
            }
            Ok(Some((lhs, Value::from(crate::scalar::Rational::zero()))))
        }
        OrthosymmetryMode::JIdentity => {
            let j = rearrange_all(args)?;
            Ok(Some((lhs, Value::from(form.eval(&j)?))))
        }
        OrthosymmetryMode::BilinearKusraev => {
            let [x, y] = args else {
                return Err(Error::Arity {
                    expected: 2,
                    got: args.len(),
                });
            };
            let rhs = form.eval(&[x.join(y)?, x.meet(y)?])?;
            Ok(Some((lhs, Value::from(rhs))))
        }
    }
}

/// `orthosymmetryCheck`. Sampling modes draw `samples` tuples from `seed`.
pub fn orthosymmetry_check(form: &Form, mode: OrthosymmetryMode, samples: usize, seed: u64) -> Result<Verdict> {
    let m = form.degree();
    let space = form.space();
    match mode {
        OrthosymmetryMode::Diagonal => {
            let Some(key) = form.first_off_diagonal() else {
                return Ok(Verdict::decided(true, None));
            };
            let args = key
                .iter()
                .map(|&i| Element::basis(space, i))
                .collect::<Result<Vec<_>>>()?;
            let (lhs, rhs) = sides(form, mode, &args)?.expect("distinct basis vectors are disjoint");
            Ok(Verdict::decided(false, Some(Counterexample { args, lhs, rhs })))
        }
        OrthosymmetryMode::BilinearKusraev if m != 2 => Err(Error::ModeNotApplicable {
            mode: mode.name().into(),
            reason: format!("needs a bilinear form, got degree {m}"),
        }),
        OrthosymmetryMode::JIdentity | OrthosymmetryMode::BilinearKusraev => {
            let mut g = Gen::new(seed);
            sample_until_failure(samples, || g.dense_elements(space, m, false), |a| sides(form, mode, a))
        }
        OrthosymmetryMode::DisjointPairs => {
            let mut g = Gen::new(seed);
            let generate = || {
                let mut args = g.dense_elements(space, m, false);
                let i = g.below(m);
                let j = (i + 1 + g.below(m - 1)) % m;
                let (x, y) = g.dense_disjoint_pair(space, false);
                args[i] = x;
                args[j] = y;
                args
            };
            if m < 2 {
                return Err(Error::ModeNotApplicable {
                    mode: mode.name().into(),
                    reason: "needs at least two arguments".into(),
                });
            }
            sample_until_failure(samples, generate, |a| sides(form, mode, a))
        }
    }
}

/// Re-evaluates a stored counterexample against the form.
pub fn reverify_orthosymmetry(form: &Form, mode: OrthosymmetryMode, cex: &Counterexample) -> Result<bool> {
    reverify_with(cex, |a| sides(form, mode, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{GeneralMatrixForm, SymTensor};
    use crate::scalar::Rational;

    #[test]
    fn off_diagonal_matrix_fails_decisively() {
        let a = Form::Matrix(GeneralMatrixForm::from_ints(&[&[0, 1], &[1, 0]]).unwrap());
        let v = orthosymmetry_check(&a, OrthosymmetryMode::Diagonal, 0, 0).unwrap();
        assert!(!v.passed && v.decisive);
        let cex = v.counterexample.unwrap();
        assert_eq!(cex.args, vec![Element::from_ints(&[1, 0]), Element::from_ints(&[0, 1])]);
        assert_eq!(cex.lhs, Value::from(Rational::one()));
        assert!(reverify_orthosymmetry(&a, OrthosymmetryMode::DisjointPairs, &cex).unwrap());
        let v = orthosymmetry_check(&a, OrthosymmetryMode::DisjointPairs, 100, 1).unwrap();
        assert!(!v.passed);
    }

    #[test]
    fn diagonal_tensors_pass_every_mode() {
        let w = [2, -1, 3].map(Rational::from_int);
        for m in 2..=4 {
            let a = Form::Sym(SymTensor::diagonal(m, &w).unwrap());
            for mode in OrthosymmetryMode::ALL {
                if mode == OrthosymmetryMode::BilinearKusraev && m != 2 {
                    continue;
                }
                let v = orthosymmetry_check(&a, mode, 200, 5).unwrap();
                assert!(v.passed, "{mode:?} m={m}");
            }
        }
    }

    #[test]
    fn trilinear_special_form() {
        let a = SymTensor::diagonal(3, &[1, -2, 5].map(Rational::from_int)).unwrap();
        let mut g = Gen::new(11);
        for _ in 0..500 {
            let v = g.elements(a.space(), 3);
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            let top = x.join(y).unwrap().join(z).unwrap();
            let mid = x.meet(y).unwrap().join(&x.meet(z).unwrap()).unwrap().join(&y.meet(z).unwrap()).unwrap();
            let bottom = x.meet(y).unwrap().meet(z).unwrap();
            assert_eq!(a.eval(&v).unwrap(), a.eval(&[top, mid, bottom]).unwrap());
        }
    }

    #[test]
    fn kusraev_needs_degree_two() {
        let a = Form::Sym(SymTensor::diagonal(3, &[Rational::one()]).unwrap());
        assert!(matches!(
            orthosymmetry_check(&a, OrthosymmetryMode::BilinearKusraev, 10, 0),
            Err(Error::ModeNotApplicable { .. })
        ));
    }
}
