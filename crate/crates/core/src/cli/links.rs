//! Named links and level-range parsing.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::fibered::{family_lnm, torus_braid};
use crate::skein::root::check_level;

/// Resolves `4_1`, `borromean`, `unknot`, `hopf`, `trefoil`, `T_p_q` and `L_n_m`.
pub fn named_link(name: &str) -> Result<BraidWord> {
    let bad = || Error::Parse(format!("unknown link name '{name}'"));
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "4_1" | "figure-eight" => return BraidWord::new(3, vec![-2, 1, -2, 1]),
        "borromean" => return BraidWord::new(3, vec![1, -2, 1, -2, 1, -2]),
        "unknot" => return BraidWord::new(1, vec![]),
        "hopf" => return BraidWord::new(2, vec![1, 1]),
        "trefoil" | "3_1" => return BraidWord::new(2, vec![1, 1, 1]),
        _ => {}
    }
    let parts: Vec<&str> = lower.split('_').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    match parts[0] {
        "t" => {
            let p: usize = parts[1].parse().map_err(|_| bad())?;
            let q: i32 = parts[2].trim_start_matches('m').parse().map_err(|_| bad())?;
            let q = if parts[2].starts_with('m') { -q } else { q };
            if q == 0 {
                return Err(bad());
            }
            torus_braid(p, q).map_err(|e| Error::Parse(e.to_string()))
        }
        "l" => {
            let n: usize = parts[1].parse().map_err(|_| bad())?;
            let m: usize = parts[2].parse().map_err(|_| bad())?;
            family_lnm(n, m).map_err(|e| Error::Parse(e.to_string()))
        }
        _ => Err(bad()),
    }
}

/// Parses `R`, `A..B` (odd values in the inclusive range) or `R1,R2,…`.
pub fn parse_levels(spec: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad level list '{spec}'"));
    let levels: Vec<i64> = if let Some((a, b)) = spec.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
        check_level(a)?;
        (a..=b).step_by(2).collect()
    } else {
        spec.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if levels.is_empty() {
        return Err(Error::Parse(format!("empty level list '{spec}'")));
    }
    let mut out = Vec::with_capacity(levels.len());
    for r in levels {
        out.push(check_level(r)?);
    }
    if out.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::closure;

    #[test]
    fn registry() {
        assert_eq!(named_link("4_1").unwrap().letters(), &[-2, 1, -2, 1]);
        let b = closure(&named_link("borromean").unwrap());
        assert_eq!(b.component_count(), 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(b.linking_matrix[i][j], 0);
                }
            }
        }
        assert_eq!(named_link("T_2_5").unwrap().letters(), &[1; 5]);
        assert_eq!(named_link("T_2_m3").unwrap().letters(), &[-1; 3]);
        assert_eq!(named_link("L_4_2").unwrap().strands(), 6);
        assert!(named_link("L_1_1").is_err());
        assert!(named_link("5_2").is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(parse_levels("5").unwrap(), vec![5]);
        assert_eq!(parse_levels("5..11").unwrap(), vec![5, 7, 9, 11]);
        assert_eq!(parse_levels("5,7,13").unwrap(), vec![5, 7, 13]);
        assert!(matches!(parse_levels("4"), Err(Error::InvalidLevel(4))));
        assert!(parse_levels("7,5").is_err());
        assert!(parse_levels("x").is_err());
    }
}
