//! Line-oriented text format for machines.
//!
//! ```text
//! pfsa v1
//! alphabet: 0 1
//! state A:
//!   0 -> A 0.80000000000000004
//!   1 -> B 0.20000000000000001
//! state B:
//!   0 -> A 0.29999999999999999
//!   1 -> B 0.69999999999999996
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Anything else that
//! is not one of the forms above is an error.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::symbols::Alphabet;

use super::Pfsa;

const HEADER: &str = "pfsa v1";

/// Plain decimal with 17 significant digits, so that parsing the
/// text gives back the same `f64`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-300..=20).contains(&exp) {
        return format!("{x:.16e}");
    }
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_pfsa(g: &Pfsa) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "alphabet: {}", g.alphabet());
    for q in 0..g.num_states() {
        let _ = writeln!(out, "state {}:", g.state_name(q));
        for (s, p) in g.morph_row(q).iter().enumerate() {
            let _ = writeln!(
                out,
                "  {} -> {} {}",
                g.alphabet().name(s),
                g.state_name(g.next(q, s)),
                format_real(*p)
            );
        }
    }
    out
}

struct StateBlock {
    name: String,
    line: usize,
    // (symbol index, next state name, probability, line)
    edges: Vec<(usize, String, f64, usize)>,
}

pub fn parse_pfsa(text: &str) -> Result<Pfsa> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((n, l)) => return Err(err(n, format!("expected {HEADER:?}, found {l:?}"))),
        None => return Err(err(0, "empty input".into())),
    }
    let alphabet = match lines.next() {
        Some((n, l)) => {
            let rest = l
                .strip_prefix("alphabet:")
                .ok_or_else(|| err(n, format!("expected \"alphabet:\", found {l:?}")))?;
            let symbols: Vec<&str> = rest.split_whitespace().collect();
            Alphabet::new(&symbols).map_err(|e| err(n, e.to_string()))?
        }
        None => return Err(err(0, "missing alphabet line".into())),
    };

    let mut blocks: Vec<StateBlock> = Vec::new();
    for (n, l) in lines {
        if let Some(rest) = l.strip_prefix("state ") {
            let name = rest
                .strip_suffix(':')
                .map(str::trim)
                .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
                .ok_or_else(|| err(n, format!("malformed state header {l:?}")))?;
            if blocks.iter().any(|b| b.name == name) {
                return Err(err(n, format!("duplicate state {name:?}")));
            }
            blocks.push(StateBlock {
                name: name.to_string(),
                line: n,
                edges: Vec::new(),
            });
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 4 || tokens[1] != "->" {
            return Err(err(n, format!("unrecognized line {l:?}")));
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| err(n, "transition before any state header".into()))?;
        let s = alphabet
            .index_of(tokens[0])
            .map_err(|e| err(n, e.to_string()))?;
        if block.edges.iter().any(|e| e.0 == s) {
            return Err(err(n, format!("symbol {:?} repeated", tokens[0])));
        }
        let p: f64 = tokens[3]
            .parse()
            .map_err(|_| err(n, format!("bad probability {:?}", tokens[3])))?;
        block.edges.push((s, tokens[2].to_string(), p, n));
    }
    if blocks.is_empty() {
        return Err(err(0, "no states".into()));
    }

    let names: Vec<String> = blocks.iter().map(|b| b.name.clone()).collect();
    let k = alphabet.len();
    let mut delta = Vec::with_capacity(blocks.len());
    let mut morph = Vec::with_capacity(blocks.len());
    for b in &blocks {
        if b.edges.len() != k {
            return Err(err(
                b.line,
                format!(
                    "state {:?} has {} of {k} transitions",
                    b.name,
                    b.edges.len()
                ),
            ));
        }
        let mut d = vec![0; k];
        let mut m = vec![0.0; k];
        for (s, next, p, line) in &b.edges {
            d[*s] = names
                .iter()
                .position(|x| x == next)
                .ok_or_else(|| err(*line, format!("unknown state {next:?}")))?;
            m[*s] = *p;
        }
        delta.push(d);
        morph.push(m);
    }
    Pfsa::from_parts(alphabet, names, delta, morph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn writes_documented_layout() {
        let text = write_pfsa(&fixtures::g2());
        let expected = "pfsa v1\nalphabet: 0 1\nstate A:\n  0 -> A 0.80000000000000004\n  1 -> B 0.20000000000000001\nstate B:\n  0 -> A 0.29999999999999999\n  1 -> B 0.69999999999999996\n";
        assert_eq!(text, expected);
        assert_eq!(parse_pfsa(&text).unwrap(), fixtures::g2());
    }

    #[test]
    fn parse_accepts_any_symbol_order_and_comments() {
        let text = "# demo\npfsa v1\nalphabet: 0 1\n\nstate A:\n  1 -> A 0.5\n  0 -> A 0.5\n";
        let g = parse_pfsa(text).unwrap();
        assert_eq!(g.num_states(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("pfsa v2\n", 1),
            ("pfsa v1\nsymbols: 0 1\n", 2),
            ("pfsa v1\nalphabet: 0 1\nstate A:\n  0 -> A 0.5\n", 3),
            (
                "pfsa v1\nalphabet: 0 1\nstate A:\n  0 -> A 0.5\n  0 -> A 0.5\n",
                5,
            ),
            (
                "pfsa v1\nalphabet: 0 1\nstate A:\n  0 -> Z 0.5\n  1 -> A 0.5\n",
                4,
            ),
            ("pfsa v1\nalphabet: 0 1\nstate A:\n  0 => A 0.5\n", 4),
            ("pfsa v1\nalphabet: 0 1\nstart A\n", 3),
            ("pfsa v1\nalphabet: 0 1\nstate A:\n  2 -> A 0.5\n", 4),
            ("pfsa v1\nalphabet: 0 1\nstate A:\n  0 -> A x\n", 4),
        ];
        for (text, line) in cases {
            match parse_pfsa(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn format_real_keeps_seventeen_digits() {
        assert_eq!(format_real(0.6), "0.59999999999999998");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(3.0), "3.0000000000000000");
        assert_eq!(format_real(1234.5), "1234.5000000000000");
        assert!(format_real(1e-310).contains('e'));
    }

    proptest! {
        #[test]
        fn format_real_round_trips(x in proptest::num::f64::NORMAL) {
            let back: f64 = format_real(x).parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn machine_text_round_trips(rows in proptest::collection::vec(0.001f64..1.0, 6)) {
            let g = Pfsa::from_named(
                &["x", "y"],
                &[
                    ("p", &[("q", rows[0]), ("p", rows[1])]),
                    ("q", &[("r", rows[2]), ("q", rows[3])]),
                    ("r", &[("p", rows[4]), ("r", rows[5])]),
                ],
            )
            .unwrap();
            let text = write_pfsa(&g);
            let back = parse_pfsa(&text).unwrap();
            prop_assert_eq!(write_pfsa(&back), text);
            prop_assert_eq!(back, g);
        }
    }
}
