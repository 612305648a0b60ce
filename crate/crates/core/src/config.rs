//! Frame files: `key = value` lines, `#` comments, one `alphabet <stage> = <n>`
//! line per stage that needs one.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::frame::RawFrame;

const KEYS: [&str; 6] = [
    "stages",
    "regulars",
    "mu",
    "kappa",
    "lambda",
    "col_alphabet",
];

pub fn parse_frame_file(text: &str) -> Result<RawFrame> {
    let mut scalars: BTreeMap<&'static str, (usize, &str)> = BTreeMap::new();
    let mut alphabet = BTreeMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if let Some(stage) = key.strip_prefix("alphabet ") {
            let stage = parse_number(stage.trim(), line_no)?;
            let n = parse_number(value, line_no)?;
            if alphabet.insert(stage, n).is_some() {
                return Err(err(format!("duplicate key `alphabet {stage}`")));
            }
            continue;
        }
        let known = KEYS
            .iter()
            .find(|&&k| k == key)
            .ok_or_else(|| err(format!("unknown key `{key}`")))?;
        if scalars.insert(known, (line_no, value)).is_some() {
            return Err(err(format!("duplicate key `{key}`")));
        }
    }
    let get = |key: &'static str| scalars.get(key).copied().ok_or(Error::MissingKey(key));
    let number = |key: &'static str| get(key).and_then(|(line, v)| parse_number(v, line));
    let (reg_line, reg_text) = get("regulars")?;
    let regulars = reg_text
        .split_whitespace()
        .map(|t| parse_number(t, reg_line))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(RawFrame {
        stage_count: number("stages")?,
        regulars,
        mu: number("mu")?,
        kappa: number("kappa")?,
        lambda_top: number("lambda")?,
        alphabet,
        col_alphabet: number("col_alphabet")?,
    })
}

fn parse_number(text: &str, line: usize) -> Result<usize> {
    text.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a natural number, got `{text}`"),
    })
}

/// Inverse of [`parse_frame_file`].
pub fn render_frame_file(raw: &RawFrame) -> String {
    let regulars: Vec<String> = raw.regulars.iter().map(ToString::to_string).collect();
    let mut out = format!(
        "stages = {}\nregulars = {}\nmu = {}\nkappa = {}\nlambda = {}\n",
        raw.stage_count,
        regulars.join(" "),
        raw.mu,
        raw.kappa,
        raw.lambda_top
    );
    for (s, n) in &raw.alphabet {
        out.push_str(&format!("alphabet {s} = {n}\n"));
    }
    out.push_str(&format!("col_alphabet = {}\n", raw.col_alphabet));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::f1_raw;
    use crate::frame::validate_frame;

    const F1: &str = "\
stages = 6
regulars = 2 3 5
mu = 2
kappa = 3
lambda = 6
alphabet 5 = 2
col_alphabet = 2
";

    #[test]
    fn parses_f1() {
        let raw = parse_frame_file(F1).unwrap();
        assert_eq!(raw, f1_raw());
        assert!(validate_frame(&raw).is_ok());
        assert_eq!(parse_frame_file(&render_frame_file(&raw)).unwrap(), raw);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!(
            "# frame\n\n{}  # trailing\n",
            F1.replace("mu = 2", "mu = 2 # lowest")
        );
        assert_eq!(parse_frame_file(&text).unwrap(), f1_raw());
    }

    #[test]
    fn missing_key() {
        let text = F1.replace("kappa = 3\n", "");
        assert_eq!(parse_frame_file(&text), Err(Error::MissingKey("kappa")));
    }

    #[test]
    fn duplicate_key() {
        let text = format!("{F1}mu = 2\n");
        let Err(Error::Parse { line, message }) = parse_frame_file(&text) else {
            panic!()
        };
        assert_eq!(line, 8);
        assert!(message.contains("duplicate key"));
        let text = format!("{F1}alphabet 5 = 3\n");
        assert!(matches!(
            parse_frame_file(&text),
            Err(Error::Parse { line: 8, .. })
        ));
    }

    #[test]
    fn unknown_key_and_bad_values() {
        let text = format!("{F1}nu = 1\n");
        let Err(Error::Parse { line: 8, message }) = parse_frame_file(&text) else {
            panic!()
        };
        assert!(message.contains("unknown key"));
        let text = F1.replace("mu = 2", "mu = two");
        assert!(matches!(
            parse_frame_file(&text),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_frame_file("stages 6"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
