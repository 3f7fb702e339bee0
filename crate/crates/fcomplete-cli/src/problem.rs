use std::fmt;

use fcomplete::oracle::SPLIT_FAMILY;
use fcomplete::pattern::parse_patterns;
use fcomplete::Pattern;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Tp,
    Threshold,
    Pseudosplit,
    Split,
    FFree(Vec<Pattern>),
}

impl Problem {
    pub fn family(&self) -> Vec<Pattern> {
        match self {
            Problem::Tp => vec![Pattern::C4, Pattern::P4],
            Problem::Threshold => vec![Pattern::TwoK2, Pattern::C4, Pattern::P4],
            Problem::Pseudosplit => vec![Pattern::TwoK2, Pattern::C4],
            Problem::Split => SPLIT_FAMILY.to_vec(),
            Problem::FFree(f) => f.clone(),
        }
    }

    pub fn has_subexp(&self) -> bool {
        matches!(self, Problem::Tp | Problem::Threshold | Problem::Pseudosplit)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Tp => f.write_str("tp"),
            Problem::Threshold => f.write_str("threshold"),
            Problem::Pseudosplit => f.write_str("pseudosplit"),
            Problem::Split => f.write_str("split"),
            Problem::FFree(p) => {
                let names: Vec<&str> = p.iter().map(|p| p.name()).collect();
                write!(f, "ffree:{}", names.join(","))
            }
        }
    }
}

pub fn parse(s: &str) -> Result<Problem, String> {
    match s {
        "tp" => Ok(Problem::Tp),
        "threshold" => Ok(Problem::Threshold),
        "pseudosplit" => Ok(Problem::Pseudosplit),
        "split" => Ok(Problem::Split),
        "ffree" => Err("ffree needs a pattern list, e.g. ffree:C4,P4".into()),
        _ => {
            let Some(list) = s.strip_prefix("ffree:") else {
                return Err(format!("unknown problem `{s}` (tp, threshold, pseudosplit, split, ffree:<patterns>)"));
            };
            let pats = parse_patterns(list).map_err(|e| e.to_string())?;
            if pats.is_empty() {
                return Err("ffree needs a pattern list, e.g. ffree:C4,P4".into());
            }
            Ok(Problem::FFree(pats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        assert_eq!(parse("tp").unwrap(), Problem::Tp);
        assert_eq!(parse("ffree:C4,P4").unwrap(), Problem::FFree(vec![Pattern::C4, Pattern::P4]));
        assert!(parse("ffree").is_err());
        assert!(parse("ffree:").is_err());
        assert!(parse("chordal").is_err());
        assert_eq!(parse("ffree:2K2").unwrap().to_string(), "ffree:2K2");
    }
}
