use thiserror::Error;

use crate::hankel_integrals::IntegralKey;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function} is singular at the origin")]
    Singularity { function: &'static str },

    #[error("{function} overflows double precision ({detail})")]
    Overflow {
        function: &'static str,
        detail: String,
    },

    #[error("multipole denominator underflows for ell = {ell} ({kind})")]
    DegenerateDenominator { ell: usize, kind: &'static str },

    #[error("integral key {0} is not covered by a closed form")]
    UnsupportedKey(IntegralKey),

    #[error("integral key {0} is singular in the closed-form ladder; evaluate it by quadrature")]
    SingularKey(IntegralKey),

    #[error("quadrature did not converge: estimated error {estimate:.3e} exceeds {requested:.3e}")]
    QuadratureNonConvergence { estimate: f64, requested: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("check {check_id} could not be evaluated: {source}")]
    Check {
        check_id: &'static str,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn overflow(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Overflow {
            function,
            detail: detail.into(),
        }
    }
}
