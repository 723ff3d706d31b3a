//! Reading term lists for the `guess` subcommand.
//!
//! One term per line, written as an integer or `num/den`. Blank lines and
//! lines starting with `#` are skipped. On lines with commas the last field
//! is the term, so `n,count` files written by `enumerate` load directly; a
//! header line that is not a number is skipped.

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub fn parse_term(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn parse_series(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or(line);
        match parse_term(field) {
            Some(t) => out.push(t),
            None if first => {}
            None => bail!("line {}: `{}` is not an integer or num/den", i + 1, line),
        }
        first = false;
    }
    Ok(out)
}

pub fn read_series(path: &std::path::Path) -> Result<Vec<BigRational>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read series file {}", path.display()))?;
    parse_series(&text).with_context(|| format!("in series file {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn plain_and_csv() {
        assert_eq!(
            parse_series("1\n-2\n\n3/6\n").unwrap(),
            vec![q(1, 1), q(-2, 1), q(1, 2)]
        );
        assert_eq!(
            parse_series("n,count\n0,1\n1,0\n2,5\n").unwrap(),
            vec![q(1, 1), q(0, 1), q(5, 1)]
        );
        assert_eq!(parse_series("# comment\n7\n").unwrap(), vec![q(7, 1)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_series("1\nabc\n").is_err());
        assert!(parse_series("1\n1/0\n").is_err());
        assert_eq!(parse_term(" 12 / 4 "), Some(q(3, 1)));
        assert_eq!(parse_term("1.5"), None);
    }
}
