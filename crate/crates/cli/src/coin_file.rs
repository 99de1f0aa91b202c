//! Coin files: one coin per line, `re,im re,im re,im re,im` for
//! `c11 c12 c21 c22`. Blank lines and lines starting with `#` are skipped.

use std::path::Path;

use num_complex::Complex64;
use rieszwalk_core::walk::CoinMatrix;

use crate::error::CliError;

fn parse_complex(token: &str) -> Result<Complex64, String> {
    let (re, im) = token
        .split_once(',')
        .ok_or_else(|| format!("expected re,im but found {token:?}"))?;
    let part = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("{s:?} is not a finite number"))
    };
    Ok(Complex64::new(part(re)?, part(im)?))
}

fn parse_line(line: &str) -> Result<CoinMatrix, String> {
    let entries = line
        .split_whitespace()
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    let [c11, c12, c21, c22] = entries[..] else {
        return Err(format!("expected 4 entries, found {}", entries.len()));
    };
    CoinMatrix::new(c11, c12, c21, c22).map_err(|e| e.to_string())
}

pub fn parse_coins(text: &str, path: &Path) -> Result<Vec<CoinMatrix>, CliError> {
    let mut coins = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        coins.push(parse_line(line).map_err(|message| CliError::CoinFile {
            path: path.to_owned(),
            line: k + 1,
            message,
        })?);
    }
    if coins.is_empty() {
        return Err(CliError::CoinFile {
            path: path.to_owned(),
            line: 0,
            message: "no coins".into(),
        });
    }
    Ok(coins)
}

pub fn read_coins(path: &Path) -> Result<Vec<CoinMatrix>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    parse_coins(&text, path)
}
