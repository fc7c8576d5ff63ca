//! MATLAB-semantics string construction: `num2str`, `strcat` and a
//! `sprintf`-style formatter.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Default significant digits used by [`num2str`] for non-integers.
pub const NUM2STR_DEFAULT_DIGITS: u32 = 5;

/// Formats a number the way MATLAB's `num2str` does by default: integers
/// without a decimal point, everything else rounded to five significant
/// digits with trailing zeros trimmed.
pub fn num2str(x: f64) -> String {
    num2str_digits(x, NUM2STR_DEFAULT_DIGITS)
}

/// [`num2str`] with an explicit significant-digit count (at least 1).
pub fn num2str_digits(x: f64, significant_digits: u32) -> String {
    let digits = significant_digits.max(1) as i32;
    if x.is_nan() {
        return String::from("NaN");
    }
    if x.is_infinite() {
        return String::from(if x > 0.0 { "Inf" } else { "-Inf" });
    }
    // Integer values up to the exact-representation limit print plainly.
    if x == libm::trunc(x) && x.abs() < 9.0e15 {
        return format_i64(x as i64);
    }
    let exponent = libm::floor(libm::log10(x.abs())) as i32;
    if !(-9..=15).contains(&exponent) {
        // Far outside the plain-decimal range: scientific notation.
        let s = format_args_to_string(format_args!("{:.*e}", digits as usize - 1, x));
        return trim_exponential(&s);
    }
    let decimals = digits - 1 - exponent;
    if decimals <= 0 {
        let scale = libm::pow(10.0, f64::from(-decimals));
        let rounded = libm::round(x / scale) * scale;
        format_args_to_string(format_args!("{rounded:.0}"))
    } else {
        let s = format_args_to_string(format_args!("{:.*}", decimals as usize, x));
        trim_fraction_zeros(&s)
    }
}

fn format_i64(v: i64) -> String {
    v.to_string()
}

fn format_args_to_string(args: core::fmt::Arguments<'_>) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    s.write_fmt(args).expect("formatting into String");
    s
}

fn trim_fraction_zeros(s: &str) -> String {
    if !s.contains('.') {
        return String::from(s);
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    String::from(trimmed)
}

fn trim_exponential(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exponent)) => {
            let mantissa = if mantissa.contains('.') {
                mantissa.trim_end_matches('0').trim_end_matches('.')
            } else {
                mantissa
            };
            let mut out = String::from(mantissa);
            out.push('e');
            out.push_str(exponent);
            out
        }
        None => String::from(s),
    }
}

/// Concatenates the parts in order; an empty sequence yields `""`.
pub fn strcat<S: AsRef<str>>(parts: &[S]) -> String {
    let mut out = String::new();
    for p in parts {
        out.push_str(p.as_ref());
    }
    out
}

/// An argument to [`sprintf`].
#[derive(Debug, Clone, PartialEq)]
pub enum FormatArg {
    /// Numeric argument; `%d` renders integral values without a point.
    Number(f64),
    /// Text argument for `%s`.
    Text(String),
}

impl From<f64> for FormatArg {
    fn from(v: f64) -> Self {
        FormatArg::Number(v)
    }
}

impl From<i64> for FormatArg {
    fn from(v: i64) -> Self {
        FormatArg::Number(v as f64)
    }
}

impl From<&str> for FormatArg {
    fn from(v: &str) -> Self {
        FormatArg::Text(String::from(v))
    }
}

impl From<String> for FormatArg {
    fn from(v: String) -> Self {
        FormatArg::Text(v)
    }
}

/// Errors from [`sprintf`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    /// The first pass over the format ran out of arguments.
    MissingArgument {
        /// The conversion character that had no argument.
        directive: char,
    },
    /// A conversion character outside the supported set.
    UnsupportedConversion(char),
    /// The format string ends with a bare `%`.
    TrailingPercent,
}

impl core::fmt::Display for FormatError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FormatError::MissingArgument { directive } => {
                write!(f, "missing argument for %{directive}")
            }
            FormatError::UnsupportedConversion(c) => write!(f, "unsupported conversion %{c}"),
            FormatError::TrailingPercent => f.write_str("format string ends with a bare %"),
        }
    }
}

/// MATLAB-style `sprintf` supporting `%d`/`%i`, `%f`, `%e`, `%g`, `%s`, `%x`
/// and `%%`, with optional `-`/`0` flags, width and precision, plus the
/// backslash escapes `\n`, `\t`, `\r` and `\\`.
///
/// Like MATLAB, the format is recycled: when arguments remain after a full
/// pass, the format is applied again, and a recycled pass that runs out of
/// arguments stops quietly at the failing directive.
pub fn sprintf(format: &str, args: &[FormatArg]) -> Result<String, FormatError> {
    let mut out = String::new();
    let mut next_arg = 0usize;
    let mut first_pass = true;
    loop {
        let consumed_before = next_arg;
        let finished = sprintf_pass(format, args, &mut next_arg, first_pass, &mut out)?;
        if !finished {
            break; // recycled pass ran out of arguments
        }
        let consumed = next_arg - consumed_before;
        if next_arg >= args.len() || consumed == 0 {
            break;
        }
        first_pass = false;
    }
    Ok(out)
}

/// One pass over the format. Returns false when a recycled pass stopped early
/// because the arguments ran out.
fn sprintf_pass(
    format: &str,
    args: &[FormatArg],
    next_arg: &mut usize,
    first_pass: bool,
    out: &mut String,
) -> Result<bool, FormatError> {
    let chars: Vec<char> = format.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        match chars[i] {
            '\\' if i + 1 < chars.len() => {
                match chars[i + 1] {
                    'n' => out.push('\n'),
                    't' => out.push('\t'),
                    'r' => out.push('\r'),
                    '\\' => out.push('\\'),
                    other => {
                        out.push('\\');
                        out.push(other);
                    }
                }
                i += 2;
            }
            '%' => {
                if i + 1 >= chars.len() {
                    return Err(FormatError::TrailingPercent);
                }
                if chars[i + 1] == '%' {
                    out.push('%');
                    i += 2;
                    continue;
                }
                let (spec, next_i) = parse_spec(&chars, i + 1)?;
                if *next_arg >= args.len() {
                    if first_pass {
                        return Err(FormatError::MissingArgument {
                            directive: spec.conversion,
                        });
                    }
                    return Ok(false);
                }
                let arg = &args[*next_arg];
                *next_arg += 1;
                out.push_str(&render(&spec, arg));
                i = next_i;
            }
            c => {
                out.push(c);
                i += 1;
            }
        }
    }
    Ok(true)
}

struct Spec {
    left_align: bool,
    zero_pad: bool,
    width: usize,
    precision: Option<usize>,
    conversion: char,
}

fn parse_spec(chars: &[char], mut i: usize) -> Result<(Spec, usize), FormatError> {
    let mut spec = Spec {
        left_align: false,
        zero_pad: false,
        width: 0,
        precision: None,
        conversion: ' ',
    };
    while i < chars.len() && (chars[i] == '-' || chars[i] == '0') {
        if chars[i] == '-' {
            spec.left_align = true;
        } else {
            spec.zero_pad = true;
        }
        i += 1;
    }
    while i < chars.len() && chars[i].is_ascii_digit() {
        spec.width = spec.width * 10 + (chars[i] as usize - '0' as usize);
        i += 1;
    }
    if i < chars.len() && chars[i] == '.' {
        i += 1;
        let mut p = 0usize;
        while i < chars.len() && chars[i].is_ascii_digit() {
            p = p * 10 + (chars[i] as usize - '0' as usize);
            i += 1;
        }
        spec.precision = Some(p);
    }
    if i >= chars.len() {
        return Err(FormatError::TrailingPercent);
    }
    let conversion = chars[i];
    match conversion {
        'd' | 'i' | 'f' | 'e' | 'g' | 's' | 'x' => {
            spec.conversion = conversion;
            Ok((spec, i + 1))
        }
        other => Err(FormatError::UnsupportedConversion(other)),
    }
}

fn render(spec: &Spec, arg: &FormatArg) -> String {
    let body = match (spec.conversion, arg) {
        ('d' | 'i', FormatArg::Number(v)) => {
            if *v == libm::trunc(*v) && v.abs() < 9.0e15 {
                (*v as i64).to_string()
            } else {
                // MATLAB widens non-integral %d arguments instead of failing.
                num2str(*v)
            }
        }
        ('f', FormatArg::Number(v)) => {
            let prec = spec.precision.unwrap_or(6);
            format_args_to_string(format_args!("{:.*}", prec, v))
        }
        ('e', FormatArg::Number(v)) => {
            let prec = spec.precision.unwrap_or(6);
            c_style_exponent(&format_args_to_string(format_args!("{:.*e}", prec, v)))
        }
        ('g', FormatArg::Number(v)) => {
            num2str_digits(*v, spec.precision.unwrap_or(5) as u32)
        }
        ('x', FormatArg::Number(v)) => {
            format_args_to_string(format_args!("{:x}", *v as i64))
        }
        ('s', FormatArg::Text(t)) => t.clone(),
        ('s', FormatArg::Number(v)) => num2str(*v),
        (_, FormatArg::Text(t)) => t.clone(),
        _ => String::new(),
    };
    pad(body, spec)
}

/// Rewrites Rust's `1.5e3` exponent form into the C/MATLAB `1.5e+03` form.
fn c_style_exponent(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            if digits.len() >= 2 {
                format_args_to_string(format_args!("{mantissa}e{sign}{digits}"))
            } else {
                format_args_to_string(format_args!("{mantissa}e{sign}0{digits}"))
            }
        }
        None => String::from(s),
    }
}

fn pad(body: String, spec: &Spec) -> String {
    if body.len() >= spec.width {
        return body;
    }
    let fill = spec.width - body.len();
    let mut out = String::with_capacity(spec.width);
    if spec.left_align {
        out.push_str(&body);
        for _ in 0..fill {
            out.push(' ');
        }
    } else if spec.zero_pad && !body.starts_with('-') {
        for _ in 0..fill {
            out.push('0');
        }
        out.push_str(&body);
    } else if spec.zero_pad {
        // Keep the sign in front of the zeros.
        out.push('-');
        for _ in 0..fill {
            out.push('0');
        }
        out.push_str(&body[1..]);
    } else {
        for _ in 0..fill {
            out.push(' ');
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    // Rounding tests feed pi-like literals on purpose.
    #![allow(clippy::approx_constant)]

    use super::*;

    #[test]
    fn integers_render_without_point() {
        assert_eq!(num2str(3.0), "3");
        assert_eq!(num2str(-42.0), "-42");
        assert_eq!(num2str(0.0), "0");
        assert_eq!(num2str(-0.0), "0");
    }

    #[test]
    fn five_significant_digits_by_default() {
        assert_eq!(num2str(3.14159265), "3.1416");
        assert_eq!(num2str(0.5), "0.5");
        assert_eq!(num2str(0.000123456), "0.00012346");
        assert_eq!(num2str(-3.14159265), "-3.1416");
    }

    #[test]
    fn explicit_digit_count() {
        assert_eq!(num2str_digits(3.14159265, 3), "3.14");
        assert_eq!(num2str_digits(3.14159265, 8), "3.1415927");
    }

    #[test]
    fn non_finite_spellings() {
        assert_eq!(num2str(f64::NAN), "NaN");
        assert_eq!(num2str(f64::INFINITY), "Inf");
        assert_eq!(num2str(f64::NEG_INFINITY), "-Inf");
    }

    #[test]
    fn rounding_carries_across_the_point() {
        assert_eq!(num2str(9.99999), "10");
    }

    #[test]
    fn huge_and_tiny_fall_back_to_scientific() {
        assert_eq!(num2str(1.0e-300), "1e-300");
        assert_eq!(num2str(2.5e20), "2.5e20");
    }

    #[test]
    fn num2str_parse_identity_for_integers() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(5);
        for _ in 0..2000 {
            let v = rng.next_below(2_000_001) as i64 - 1_000_000;
            let s = num2str(v as f64);
            assert_eq!(s.parse::<i64>().unwrap(), v);
        }
        assert_eq!(num2str(1_000_000.0), "1000000");
        assert_eq!(num2str(-1_000_000.0), "-1000000");
    }

    #[test]
    fn strcat_concatenates_in_order() {
        assert_eq!(strcat(&["a", "b"]), "ab");
        assert_eq!(strcat::<&str>(&[]), "");
        assert_eq!(strcat(&["janus", ".jl"]), "janus.jl");
    }

    #[test]
    fn sprintf_basic_directives() {
        let s = sprintf(
            "%s has %d objects (%.2f%%)",
            &["img".into(), 5.0.into(), 12.5f64.into()],
        )
        .unwrap();
        assert_eq!(s, "img has 5 objects (12.50%)");
    }

    #[test]
    fn sprintf_escapes_and_width() {
        assert_eq!(
            sprintf("a\\tb\\n[%5d]", &[7.0.into()]).unwrap(),
            "a\tb\n[    7]"
        );
        assert_eq!(sprintf("[%-4d]", &[7.0.into()]).unwrap(), "[7   ]");
        assert_eq!(sprintf("[%04d]", &[7.0.into()]).unwrap(), "[0007]");
        assert_eq!(sprintf("[%05d]", &[(-7.0).into()]).unwrap(), "[-0007]");
    }

    #[test]
    fn sprintf_recycles_format_like_matlab() {
        let args: Vec<FormatArg> = [1.0, 2.0, 3.0].iter().map(|&v| v.into()).collect();
        assert_eq!(sprintf("%d ", &args).unwrap(), "1 2 3 ");
        // A recycled pass that runs out mid-way stops quietly, keeping the
        // literal text already emitted before the failing directive.
        assert_eq!(sprintf("%d,%d;", &args).unwrap(), "1,2;3,");
    }

    #[test]
    fn sprintf_error_paths() {
        assert_eq!(
            sprintf("%d", &[]),
            Err(FormatError::MissingArgument { directive: 'd' })
        );
        assert_eq!(
            sprintf("%q", &[1.0.into()]),
            Err(FormatError::UnsupportedConversion('q'))
        );
        assert_eq!(sprintf("oops %", &[1.0.into()]), Err(FormatError::TrailingPercent));
    }

    #[test]
    fn sprintf_hex_and_exponent() {
        assert_eq!(sprintf("%x", &[255.0.into()]).unwrap(), "ff");
        assert_eq!(sprintf("%.2e", &[1536.0.into()]).unwrap(), "1.54e+03");
    }
}
