//! File formats. Matrices use the library's text form; sequences are
//! whitespace-separated integers; string lists hold one string per line,
//! with `eps` for the empty string and `#` starting a comment line.

use std::fs;
use std::path::Path;

use bdmp::matrix::ScoreMatrix;

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: bdmp::error::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

pub fn read_matrix(path: &Path) -> CliResult<ScoreMatrix> {
    ScoreMatrix::parse_text(&read_text(path)?).map_err(|e| located(path, e))
}

pub fn write_matrix(path: &Path, m: &ScoreMatrix) -> CliResult<()> {
    write_text(path, &m.to_text())
}

pub fn parse_sequence(text: &str) -> Result<Vec<i64>, String> {
    text.split_whitespace()
        .map(|tok| tok.parse::<i64>().map_err(|_| format!("bad integer `{tok}`")))
        .collect()
}

pub fn format_sequence(s: &[i64]) -> String {
    let words: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{}\n", words.join(" "))
}

pub fn read_sequence(path: &Path) -> CliResult<Vec<i64>> {
    parse_sequence(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_sequence(path: &Path, s: &[i64]) -> CliResult<()> {
    write_text(path, &format_sequence(s))
}

/// Non-comment, non-blank lines; `eps` becomes the empty string.
pub fn parse_strings(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| if l == "eps" { String::new() } else { l.to_string() })
        .collect()
}

pub fn format_strings(lines: &[String]) -> String {
    lines
        .iter()
        .map(|l| if l.is_empty() { "eps\n".to_string() } else { format!("{l}\n") })
        .collect()
}

pub fn read_strings(path: &Path) -> CliResult<Vec<String>> {
    Ok(parse_strings(&read_text(path)?))
}

/// A header line (the alphabet) followed by strings.
pub fn read_with_header(path: &Path) -> CliResult<(String, Vec<String>)> {
    let mut lines = read_strings(path)?.into_iter();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input(format!("{}: missing alphabet header line", path.display())))?;
    Ok((header, lines.collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_round_trip() {
        let s = vec![3, -1, 0, 42];
        assert_eq!(parse_sequence(&format_sequence(&s)).unwrap(), s);
        assert!(parse_sequence("1 x").is_err());
    }

    #[test]
    fn string_list_round_trip() {
        let lines = vec!["()".to_string(), String::new(), "a a'".to_string()];
        assert_eq!(parse_strings(&format_strings(&lines)), lines);
        assert_eq!(parse_strings("# note\n\nab\n"), ["ab"]);
    }
}
