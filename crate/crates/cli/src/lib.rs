//! Front end for `growthkit`: input parsing, renderers and the command
//! implementations behind the `growthkit` binary.

pub mod commands;
pub mod records;
pub mod render;

use growthkit::growth::GpError;
use growthkit::GeneralizedPermutation;
use thiserror::Error;

pub use render::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid permutation: {0}")]
    Gp(#[from] GpError),
    #[error("colour suffix on token {index} means colour {color}, but only 1..={r} exist")]
    ColorRange { index: usize, color: u8, r: u32 },
    #[error("{0}")]
    Catalog(#[from] growthkit::catalog::CatalogError),
    #[error("{0}")]
    Duality(#[from] growthkit::duality::DualityError),
    #[error("{0}")]
    Growth(#[from] growthkit::growth::CellError),
    #[error("{0}")]
    Tableau(#[from] growthkit::growth::TableauError),
    #[error("{0}")]
    Diagram(#[from] growthkit::insdiag::ParseError),
    #[error("{0}")]
    Records(#[from] records::RecordError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Gp(_) | CliError::ColorRange { .. } => "parse",
            CliError::Catalog(_) => "catalog",
            CliError::Duality(_) => "duality",
            CliError::Growth(_) => "growth",
            CliError::Tableau(_) => "tableau",
            CliError::Diagram(_) | CliError::Records(_) => "parse",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

/// Parses the compact one-line form and checks colours against `r`.
///
/// Tokens are values with an optional suffix (`o`, `b`, `ob`) or `_` for an
/// empty step.
pub fn parse_gp(text: &str, r: u32) -> Result<GeneralizedPermutation, CliError> {
    let gp: GeneralizedPermutation = text.parse()?;
    for (index, step) in gp.steps().iter().enumerate() {
        if let Some((_, c)) = step {
            if *c as u32 > r {
                return Err(CliError::ColorRange {
                    index: index + 1,
                    color: *c,
                    r,
                });
            }
        }
    }
    Ok(gp)
}
