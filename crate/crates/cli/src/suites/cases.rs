use riesz_lab::carriers::{nakano_verify, NakanoReport};
use riesz_lab::forms::{
    reverify_additivity, reverify_orthosymmetry, AdditivityMode, Counterexample, Form, Measure, OrthosymmetryMode,
    Polynomial, SymTensor,
};
use riesz_lab::lattice::{ConvergenceCertificate, Element};
use riesz_lab::localisation::LocalObject;
use riesz_lab::ordercont::{DiscontinuityWitness, ProductFunctionalPolynomial};
use riesz_lab::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The data one trial of a property is checked on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Case {
    Elements {
        elements: Vec<Element>,
    },
    Form {
        form: Form,
        seed: u64,
    },
    Polynomial {
        polynomial: Polynomial,
        seed: u64,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<Element>,
    },
    Homogeneity {
        polynomial: Polynomial,
        point: Element,
        scale: Rational,
    },
    Pair {
        p: Polynomial,
        q: Polynomial,
    },
    Measures {
        first: Measure,
        second: Measure,
    },
    Modulus {
        tensor: SymTensor,
        args: Vec<Element>,
        /// A positive decomposition of each argument.
        coarse: Vec<Vec<Element>>,
    },
    Local {
        first: LocalObject,
        second: LocalObject,
        generator: Element,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<Element>,
    },
    Net {
        certificate: ConvergenceCertificate,
        bound: Rational,
    },
    MeasureNet {
        polynomial: Polynomial,
        scale: Rational,
    },
    Product {
        polynomial: ProductFunctionalPolynomial,
    },
    Scalars {
        values: Vec<Rational>,
    },
}

/// A violation a property expects to find, stored so it can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Witness {
    Orthosymmetry {
        mode: OrthosymmetryMode,
        counterexample: Counterexample,
    },
    Additivity {
        mode: AdditivityMode,
        counterexample: Counterexample,
    },
    Discontinuity {
        witness: DiscontinuityWitness,
    },
    Nakano {
        report: NakanoReport,
    },
}

fn wrong(reason: &str) -> CliError {
    CliError::Payload {
        property: "witness".into(),
        reason: reason.into(),
    }
}

/// Replays a witness against the object in its case.
pub fn reverify_witness(case: &Case, w: &Witness) -> Result<bool, CliError> {
    Ok(match (case, w) {
        (Case::Form { form, .. }, Witness::Orthosymmetry { mode, counterexample }) => {
            reverify_orthosymmetry(form, *mode, counterexample)?
        }
        (Case::Polynomial { polynomial, .. }, Witness::Additivity { mode, counterexample }) => {
            reverify_additivity(polynomial, *mode, counterexample)?
        }
        (Case::Product { polynomial }, Witness::Discontinuity { witness }) => witness.reverify(polynomial)?,
        (Case::Pair { p, q }, Witness::Nakano { report }) => {
            let again = nakano_verify(p, q)?;
            &again == report && !report.equivalence_holds
        }
        _ => return Err(wrong("witness kind does not fit the case")),
    })
}

impl Case {
    pub(crate) fn mismatch(&self, property: &str) -> CliError {
        let kind = serde_json::to_value(self)
            .ok()
            .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(str::to_string))
            .unwrap_or_default();
        CliError::Payload {
            property: property.into(),
            reason: format!("unexpected case kind {kind}"),
        }
    }
}
