//! Amplitude files: one `re im` pair per line, ordered by basis index
//! (qubit 0 is the most significant bit). Blank lines and `#` comments are
//! ignored.

use std::path::Path;

use num_complex::Complex64;
use pagelab::state::PureState;

pub fn parse_amplitudes(text: &str) -> Result<Vec<Complex64>, String> {
    let mut amps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(format!(
                "line {}: expected \"re im\", found {} field(s)",
                lineno + 1,
                fields.len()
            ));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("line {}: invalid number '{s}'", lineno + 1))
        };
        amps.push(Complex64::new(parse(fields[0])?, parse(fields[1])?));
    }
    Ok(amps)
}

/// Reads and normalizes a state.
pub fn read_state(path: &Path) -> Result<PureState, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let amps = parse_amplitudes(&text)?;
    PureState::normalized(amps).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks() {
        let text = "# bell\n0.5 0\n\n0 0  # zero\n0 0\n0.5 0\n";
        let amps = parse_amplitudes(text).unwrap();
        assert_eq!(amps.len(), 4);
        assert_eq!(amps[3], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_amplitudes("1\n").unwrap_err().contains("line 1"));
        assert!(parse_amplitudes("1 0\n1 x\n").unwrap_err().contains("line 2"));
        assert!(parse_amplitudes("1 0 0\n").is_err());
        assert!(parse_amplitudes("nan 0\n").is_err());
    }
}
