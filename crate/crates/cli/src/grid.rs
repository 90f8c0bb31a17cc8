//! Grid syntax: inclusive ranges `a..b`, comma lists, or a mix (`1..3,7`).

use crate::Failure;

pub fn parse_list(flag: &str, text: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Usage(format!("--{flag}: cannot parse {text:?} as a grid"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

pub fn parse_opt(flag: &str, text: &Option<String>) -> Result<Option<Vec<u64>>, Failure> {
    text.as_deref().map(|t| parse_list(flag, t)).transpose()
}

pub fn required(flag: &str, values: &Option<Vec<u64>>) -> Result<Vec<u64>, Failure> {
    values.clone().ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_list("n", "4..7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_list("n", "1,3").unwrap(), vec![1, 3]);
        assert_eq!(parse_list("n", "1..2, 9").unwrap(), vec![1, 2, 9]);
        assert_eq!(parse_list("n", "5").unwrap(), vec![5]);
        assert!(parse_list("n", "3..1").is_err());
        assert!(parse_list("n", "x").is_err());
        assert!(parse_list("n", "").is_err());
    }
}
