use genus_range::{RangeError, SurfaceError, WordError};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    NotGuaranteed(String),
    Verification(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::NotGuaranteed(_) => 4,
            CliError::Verification(_) => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m)
            | CliError::Budget(m)
            | CliError::NotGuaranteed(m)
            | CliError::Verification(m)
            | CliError::Io(m) => m,
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        let kind = match e {
            WordError::Empty => "Empty",
            WordError::NotDoubleOccurrence { .. } => "NotDoubleOccurrence",
            WordError::Malformed(_) => "Malformed",
            WordError::LimitExceeded { .. } => "LimitExceeded",
            WordError::EmptyResult => "EmptyResult",
        };
        let message = format!("{kind}: {e}");
        match e {
            WordError::LimitExceeded { .. } => CliError::Budget(message),
            _ => CliError::Input(message),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        let kind = match e {
            SurfaceError::LengthMismatch { .. } => "LengthMismatch",
            SurfaceError::MalformedAttachment(_) => "MalformedAttachment",
        };
        CliError::Input(format!("{kind}: {e}"))
    }
}

impl From<RangeError> for CliError {
    fn from(e: RangeError) -> Self {
        match e {
            RangeError::Word(w) => w.into(),
            RangeError::BudgetExceeded { .. } => CliError::Budget(format!("BudgetExceeded: {e}")),
            RangeError::NotGuaranteed { .. } => {
                CliError::NotGuaranteed(format!("NotGuaranteed: {e}"))
            }
            RangeError::GapDetected { .. } => CliError::Verification(format!("GapDetected: {e}")),
            RangeError::VerificationFailed { .. } => {
                CliError::Verification(format!("VerificationFailed: {e}"))
            }
        }
    }
}
