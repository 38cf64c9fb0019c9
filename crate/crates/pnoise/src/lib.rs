//! File formats, point-cloud ingestion and plotting around `pnoise-core`.

pub mod format;
pub mod h0;
pub mod numbers;
pub mod svg;
pub mod table;

pub use format::{parse_module, write_denoised, write_module, FormatError};
pub use h0::{build_h0, BifiltrationInput, H0Error, Metric};
pub use numbers::{parse_rational, parse_rational_list, parse_t_values};
pub use svg::fcf_svg;
pub use table::{barcode_csv, fcf_csv, parse_fcf_csv};

/// Environment variable naming the default prime.
pub const FIELD_ENV: &str = "PNOISE_FIELD";

/// The prime from `PNOISE_FIELD`, or 2.
pub fn default_prime() -> Result<u64, FormatError> {
    match std::env::var(FIELD_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| FormatError::Parse { line: 0, reason: format!("{FIELD_ENV}={s} is not an integer") }),
        Err(_) => Ok(2),
    }
}
