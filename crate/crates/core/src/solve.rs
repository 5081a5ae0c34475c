//! Linear-system report types shared by both backends.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    ViaInverse,
    ViaLu,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::ViaInverse => "via-inverse",
            SolveMethod::ViaLu => "via-lu",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

/// Solution of `H·x = r`.
#[derive(Clone, PartialEq, Debug)]
pub struct SolveReport<F> {
    pub x: Vec<F>,
    pub det: F,
    pub method: SolveMethod,
    pub backend: Backend,
    pub pivot_overrides: usize,
    pub c_substitutions: usize,
}
