use super::{law_verdicts, FiniteRing, RingError};
use crate::semiring::SemiringError;
use crate::semiring::{parse_assignment, parse_header, parse_row};

fn format_err(e: SemiringError) -> RingError {
    RingError::Format(e.to_string())
}

impl FiniteRing {
    /// Ring file format: `ring n=<N>`, `zero=`, `one=`, N `add:` rows,
    /// N `mul:` rows, then `label <i> <name>` for every non-numeric label.
    pub fn to_text(&self) -> String {
        let n = self.size();
        let mut out = format!("ring n={n}\nzero={}\none={}\n", self.zero_index(), self.one_index());
        for (key, op) in [("add", FiniteRing::add_idx as fn(&_, _, _) -> _), ("mul", FiniteRing::mul_idx)] {
            for a in 0..n {
                let row: Vec<String> = (0..n).map(|b| op(self, a, b).to_string()).collect();
                out.push_str(&format!("{key}: {}\n", row.join(" ")));
            }
        }
        for (i, l) in self.labels().iter().enumerate() {
            if *l != i.to_string() {
                out.push_str(&format!("label {i} {l}\n"));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, RingError> {
        RingTables::parse(text)?.build()
    }
}

/// A ring file read without checking the ring laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTables {
    pub n: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub zero: usize,
    pub one: usize,
    pub labels: Vec<String>,
}

impl RingTables {
    pub fn parse(text: &str) -> Result<Self, RingError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n = parse_header(lines.next().unwrap_or_default(), "ring").map_err(format_err)?;
        let zero = parse_assignment(lines.next(), "zero").map_err(format_err)?;
        let one = parse_assignment(lines.next(), "one").map_err(format_err)?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for _ in 0..n {
            add.extend(parse_row(lines.next(), "add", n).map_err(format_err)?);
        }
        for _ in 0..n {
            mul.extend(parse_row(lines.next(), "mul", n).map_err(format_err)?);
        }
        let mut labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        for line in lines {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some("label"), Some(i), Some(name), None) => {
                    let i: usize = i
                        .parse()
                        .ok()
                        .filter(|&i| i < n)
                        .ok_or_else(|| RingError::Format(format!("bad label line `{line}`")))?;
                    labels[i] = name.to_string();
                }
                _ => return Err(RingError::Format(format!("unexpected line `{line}`"))),
            }
        }
        Ok(RingTables {
            n,
            add,
            mul,
            zero,
            one,
            labels,
        })
    }

    pub fn law_verdicts(&self) -> Vec<(&'static str, Option<Vec<usize>>)> {
        law_verdicts(self.n, &self.add, &self.mul, self.zero, self.one)
    }

    pub fn build(self) -> Result<FiniteRing, RingError> {
        FiniteRing::from_tables(self.n, self.add, self.mul, self.zero, self.one, Some(self.labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_exact() {
        let r8 = FiniteRing::upper_triangular(&FiniteRing::cyclic(2).unwrap(), 2).unwrap();
        for r in [r8, FiniteRing::cyclic(3).unwrap(), FiniteRing::builtin_field(4).unwrap()] {
            let text = r.to_text();
            let back = FiniteRing::parse(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn cyclic_three_listing() {
        assert_eq!(
            FiniteRing::cyclic(3).unwrap().to_text(),
            "ring n=3\nzero=0\none=1\nadd: 0 1 2\nadd: 1 2 0\nadd: 2 0 1\nmul: 0 0 0\nmul: 0 1 2\nmul: 0 2 1\n"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(FiniteRing::parse("semiring n=2").is_err());
        assert!(FiniteRing::parse("ring n=2\nzero=0\none=1\nadd: 0 1\nadd: 1 0\nmul: 0 0\n").is_err());
        let bad_law = "ring n=2\nzero=0\none=1\nadd: 0 1\nadd: 1 1\nmul: 0 0\nmul: 0 1\n";
        assert!(matches!(FiniteRing::parse(bad_law), Err(RingError::Law { .. })));
        let verdicts = RingTables::parse(bad_law).unwrap().law_verdicts();
        let failed: Vec<&str> = verdicts.iter().filter(|(_, w)| w.is_some()).map(|(l, _)| *l).collect();
        assert_eq!(failed, ["additive inverse"]);
    }
}
