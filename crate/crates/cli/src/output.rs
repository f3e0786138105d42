//! Text and JSON rendering of command results.

use std::io::Write;

use serde::Serialize;

use ponzeta::arith::HpComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Shared record for every command that produces a number.
#[derive(Debug, Serialize)]
pub struct Numeric {
    pub value_re: f64,
    pub value_im: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
    pub method: String,
    /// Decimal rendering at the working precision.
    pub value_re_digits: String,
    pub value_im_digits: String,
    pub precision_bits: usize,
    /// The input the value was computed at (s, or beta for partition sums).
    pub argument: String,
}

impl Numeric {
    pub fn from_hp(value: &HpComplex, tail_bound: f64, terms_used: u64, method: &str, argument: String) -> Self {
        Numeric {
            value_re: value.re_f64(),
            value_im: value.im_f64(),
            tail_bound,
            terms_used,
            method: method.to_string(),
            value_re_digits: value.re_string(),
            value_im_digits: value.im_string(),
            precision_bits: value.precision().bits(),
            argument,
        }
    }

    pub fn from_f64(re: f64, im: f64, tail_bound: f64, terms_used: u64, method: &str, argument: String) -> Self {
        Numeric {
            value_re: re,
            value_im: im,
            tail_bound,
            terms_used,
            method: method.to_string(),
            value_re_digits: format!("{re:e}"),
            value_im_digits: format!("{im:e}"),
            precision_bits: f64::MANTISSA_DIGITS as usize,
            argument,
        }
    }

    pub fn text(&self) -> String {
        let value = if self.value_im == 0.0 {
            self.value_re_digits.clone()
        } else {
            format!("{} + {}i", self.value_re_digits, self.value_im_digits)
        };
        format!(
            "value: {value}\ntail_bound: {:e}\nterms_used: {}\nmethod: {}\nprecision_bits: {}",
            self.tail_bound, self.terms_used, self.method, self.precision_bits
        )
    }
}

/// A command result: JSON via serde, text via the supplied closure.
///
/// A closed stdout (for example a pipe into `head`) is not an error.
pub fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output"),
        Format::Text => text(value),
    };
    let _ = writeln!(std::io::stdout().lock(), "{rendered}");
}

pub fn emit_numeric(format: Format, value: &Numeric) {
    emit(format, value, Numeric::text);
}
