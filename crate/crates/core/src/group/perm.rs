use std::fmt;

use super::GroupError;

/// A permutation of `0..degree`, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Permutation(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Parses 0-based cycle notation such as `(0 1 2)(3 4)`; whitespace is
/// insignificant between tokens and `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, GroupError> {
    let bad = |why: &str| GroupError::InvalidPermutation(format!("{text:?}: {why}"));
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &body_start[..close];
        rest = body_start[close + 1..].trim_start();
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad("non-numeric point")))
            .collect::<Result<Vec<_>, _>>()?;
        for &p in &points {
            if p >= degree {
                return Err(bad("point out of range"));
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(bad("point repeated across cycles"));
            }
        }
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()] as u32;
        }
    }
    Ok(Permutation(images))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_cycles() {
        let p = parse_cycles(" (0 1 2)( 3  4 ) ", 6).unwrap();
        assert_eq!(p.0, vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(parse_cycles("", 2).unwrap(), Permutation::identity(2));
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(parse_cycles("(0 1 2", 3).is_err());
        assert!(parse_cycles("(0 3)", 3).is_err());
        assert!(parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(parse_cycles("0 1", 3).is_err());
        assert!(parse_cycles("(a b)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let a = parse_cycles("(0 1)", 3).unwrap();
        let b = parse_cycles("(1 2)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&a.inverse()), Permutation::identity(3));
    }
}
