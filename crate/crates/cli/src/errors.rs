use degenerata_core::curves0::CurvesError;
use degenerata_core::elliptic::EllipticError;
use degenerata_core::intersection::IntersectionError;
use degenerata_core::nodal::NodalError;
use degenerata_core::polyring::PolyError;
use degenerata_core::toric::ToricError;
use degenerata_core::valued::ValuedError;

/// A rendered command failure: the message and the process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn usage(msg: impl Into<String>) -> CmdError {
        CmdError {
            code: 1,
            message: msg.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> CmdError {
        CmdError {
            code: 2,
            message: msg.into(),
        }
    }

    pub fn resource(msg: impl Into<String>) -> CmdError {
        CmdError {
            code: 3,
            message: msg.into(),
        }
    }
}

impl From<PolyError> for CmdError {
    fn from(e: PolyError) -> CmdError {
        match e {
            PolyError::Parse(_) => CmdError::usage(e.to_string()),
            PolyError::BasisCap(_) | PolyError::EnumerationCap(_) => {
                CmdError::resource(e.to_string())
            }
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<ToricError> for CmdError {
    fn from(e: ToricError) -> CmdError {
        match e {
            ToricError::IterationCap(_) => CmdError::resource(e.to_string()),
            ToricError::InvalidFan(_) => CmdError::usage(e.to_string()),
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<NodalError> for CmdError {
    fn from(e: NodalError) -> CmdError {
        CmdError::domain(e.to_string())
    }
}

impl From<CurvesError> for CmdError {
    fn from(e: CurvesError) -> CmdError {
        match e {
            CurvesError::InvalidTree(_) => CmdError::usage(e.to_string()),
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<ValuedError> for CmdError {
    fn from(e: ValuedError) -> CmdError {
        match e {
            ValuedError::Poly(p) => p.into(),
            ValuedError::NotPrime(_) => CmdError::usage(e.to_string()),
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<EllipticError> for CmdError {
    fn from(e: EllipticError) -> CmdError {
        match e {
            EllipticError::Valued(v) => v.into(),
            EllipticError::Poly(p) => p.into(),
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<IntersectionError> for CmdError {
    fn from(e: IntersectionError) -> CmdError {
        match e {
            IntersectionError::Poly(p) => p.into(),
            _ => CmdError::domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> CmdError {
        CmdError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> CmdError {
        CmdError::usage(e.to_string())
    }
}
