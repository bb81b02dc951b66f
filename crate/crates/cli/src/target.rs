//! Parsing of `n:k` level lists and `A vs B` pairs.

use kuni::{Error, HierarchySpec, Level, PrimeField};

pub fn parse_level(s: &str) -> Result<Level, Error> {
    let (n, k) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("level `{s}` is not of the form n:k")))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("`{t}` in level `{s}` is not a count")));
    Ok(Level::new(num(n)?, num(k)?))
}

/// `"6:2,2:1"` (or `"6:2+2:1"` inside a pair).
pub fn parse_levels(s: &str, sep: char) -> Result<Vec<Level>, Error> {
    let levels: Vec<Level> = s.split(sep).map(parse_level).collect::<Result<_, _>>()?;
    if levels.is_empty() {
        return Err(Error::Parse("empty level list".into()));
    }
    Ok(levels)
}

/// `"6:2 vs 6:2+2:1"`.
pub fn parse_pair(field: PrimeField, s: &str) -> Result<(HierarchySpec, HierarchySpec), Error> {
    let (a, b) = s
        .split_once(" vs ")
        .ok_or_else(|| Error::Parse(format!("pair `{s}` is not of the form `A vs B`")))?;
    Ok((HierarchySpec::new(field, parse_levels(a, '+')?)?, HierarchySpec::new(field, parse_levels(b, '+')?)?))
}

pub fn label(spec: &HierarchySpec) -> String {
    spec.levels.iter().map(|l| format!("{}:{}", l.n, l.k)).collect::<Vec<_>>().join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_and_pairs() {
        assert_eq!(parse_levels("6:2,2:1", ',').unwrap(), vec![Level::new(6, 2), Level::new(2, 1)]);
        assert!(parse_levels("6-2", ',').is_err());
        assert!(parse_levels("6:x", ',').is_err());
        let f = PrimeField::new(5).unwrap();
        let (a, b) = parse_pair(f, "6:2 vs 6:2+2:1").unwrap();
        assert_eq!(label(&a), "6:2");
        assert_eq!(label(&b), "6:2+2:1");
        assert!(parse_pair(f, "6:2, 6:2").is_err());
        assert!(parse_pair(f, "6:2 vs 6:2+5:1").is_err());
    }
}
