//! Complex literals `RE`, `RE+IMi`, `RE-IMi`, `IMi`.

use num_complex::Complex64;

fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("number `{s}` is not finite"))
    }
}

fn imag(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s),
    }
}

pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    parse(input).map_err(|e| format!("{e} in `{input}`"))
}

fn parse(input: &str) -> Result<Complex64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is neither leading nor an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, imag(&body[k..])?),
        None => (0.0, imag(body)?),
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        let c = Complex64::new;
        assert_eq!(parse_complex("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-1.1+0.1i").unwrap(), c(-1.1, 0.1));
        assert_eq!(parse_complex("1-0.5i").unwrap(), c(1.0, -0.5));
        assert_eq!(parse_complex("0.25i").unwrap(), c(0.0, 0.25));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-2E+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex(" 3 ").unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn rejected_forms() {
        for s in ["", "1+", "1,5", "1+2j", "abc", "1+2ii", "nan", "inf+1i", "1++2i"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }
}
