use std::io::Write;

use carlitz_core::harmonic::even_restricted_sums;
use carlitz_core::{OddPrime, Residue};

use crate::config::{usage, CliError};

fn line(out: &mut impl Write, name: &str, r: Residue) -> std::io::Result<()> {
    writeln!(out, "{name} = {r} (mod {})", r.ring().modulus())
}

/// Prints the harmonic profile of `p`, one `name = value (mod m)` line per quantity.
pub fn print_sums(p: u64, out: &mut impl Write) -> Result<(), CliError> {
    let prime = OddPrime::new(p).map_err(|e| usage(e.to_string()))?;
    if p < 5 {
        return Err(usage(format!("sums needs p >= 5, got {p}")));
    }
    let profile = even_restricted_sums(prime).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "p = {p}")?;
    line(out, "q2", profile.q2.value)?;
    line(out, &format!("B_{}", p - 3), profile.bernoulli.value)?;
    line(out, "half_harmonic(1,3)", profile.half_h1)?;
    for &(n, r) in &profile.half_hn {
        line(
            out,
            &format!("half_harmonic({n},{})", r.ring().exponent()),
            r,
        )?;
    }
    for (n, &r) in profile.even_single.iter().enumerate() {
        line(out, &format!("even_single({},4)", n + 1), r)?;
    }
    line(out, "even_double(1,1,2)", profile.even_double_11)?;
    line(out, "even_double(1,2,1)", profile.even_double_12)?;
    line(out, "even_double(2,1,1)", profile.even_double_21)?;
    line(out, "even_triple(1)", profile.even_triple)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_profile() {
        let mut buf = Vec::new();
        print_sums(5, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("q2 = 3 (mod 125)\n"), "{text}");
        assert!(text.contains("B_2 = "), "{text}");
    }

    #[test]
    fn small_or_composite_is_usage_error() {
        for p in [3, 9, 2] {
            assert!(matches!(
                print_sums(p, &mut Vec::new()),
                Err(CliError::Usage(_))
            ));
        }
    }
}
