use std::io::{self, Write};
use std::path::Path;

use tcn_core::bounds::BoundsRecord;

pub const CSV_HEADER: [&str; 8] = ["n", "r", "norm_T", "inv_norm", "scaled", "lower", "upper", "pass"];

/// Positional decimal with 17 significant digits, enough to round-trip any
/// `f64`.
pub fn sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if (point as usize) < digits.len() {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    } else {
        format!("{}{}.0", digits, "0".repeat(point as usize - digits.len()))
    };
    if x.is_sign_negative() && x != 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

pub fn records_csv(records: &[BoundsRecord]) -> csv::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record([
            rec.n.to_string(),
            sig17(rec.r),
            sig17(rec.norm_t),
            sig17(rec.inv_norm),
            sig17(rec.scaled),
            sig17(rec.lower),
            sig17(rec.upper),
            rec.pass.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename,
/// or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.persist(path).map(|_| ()).map_err(|e| e.error)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(0.5), "0.50000000000000000");
        assert_eq!(sig17(8.0), "8.0000000000000000");
        assert_eq!(sig17(-0.375), "-0.37500000000000000");
        assert_eq!(sig17(0.0), "0.0000000000000000");
        assert_eq!(sig17(4096.0e12), "4096000000000000.0");
        assert_eq!(sig17(1e20), "100000000000000000000.0");
        assert_eq!(sig17(1.25e-5), "0.000012500000000000001");
        assert_eq!(sig17(f64::NAN), "NaN");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 0.15000000000000002, 7.999999999999991, 4.0947299337040315e15, 2.2e-16] {
            assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
        }
    }
}
