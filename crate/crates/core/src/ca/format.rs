//! Text formats for rules, configurations and patterns.
//!
//! Rule file:
//! ```text
//! dim 1
//! alphabet 0 1
//! neighborhood (-1) (0) (1)
//! entry 0 0 0 -> 0
//! ...
//! ```
//! or `builtin <zoo-name>` in place of the entries. Configuration file:
//! `background <q>` or `background-periodic <periods> <block…>`, then `cell <coords> <q>`.
//! Pattern file: `dim`, `radius`, then `cells …` (B(n) order, last coordinate fastest).

use std::fmt::Write as _;

use super::{Alphabet, Background, CellularAutomaton, Configuration, Neighborhood, Pattern, Pos, State};
use crate::error::{parse_err, Error, Result};

/// Words of each non-empty line; a word starting with `#` opens a comment
/// (state names such as `C:#0@-1` may contain `#` further in).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let words: Vec<&str> = l.split_whitespace().take_while(|w| !w.starts_with('#')).collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn parse_tuple(s: &str, line: usize) -> Result<Pos> {
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected (a,b,…), got {s:?}")))?;
    inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| parse_err(line, format!("bad integer in {s:?}"))))
        .collect()
}

pub fn format_tuple(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parse a rule file; `builtin` lines are resolved through `resolve`.
pub fn parse_rule(text: &str, resolve: &dyn Fn(&str) -> Result<CellularAutomaton>) -> Result<CellularAutomaton> {
    let mut dim: Option<usize> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut nb: Option<Neighborhood> = None;
    let mut name: Option<String> = None;
    let mut builtin: Option<(usize, CellularAutomaton)> = None;
    let mut table: Option<Vec<Option<State>>> = None;
    let mut last_line = 0;
    for (ln, words) in lines(text) {
        last_line = ln;
        match words[0] {
            "name" => name = Some(words[1..].join(" ")),
            "dim" => {
                let d = words
                    .get(1)
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| parse_err(ln, "dim needs a positive integer"))?;
                dim = Some(d);
            }
            "alphabet" => {
                alphabet = Some(Alphabet::new(&words[1..]).map_err(|e| parse_err(ln, e.to_string()))?);
            }
            "neighborhood" => {
                let offs = words[1..].iter().map(|w| parse_tuple(w, ln)).collect::<Result<Vec<_>>>()?;
                let d = dim.ok_or_else(|| parse_err(ln, "neighborhood before dim"))?;
                nb = Some(Neighborhood::new(d, offs).map_err(|e| parse_err(ln, e.to_string()))?);
            }
            "builtin" => {
                let arg = words.get(1).ok_or_else(|| parse_err(ln, "builtin needs a name"))?;
                let ca = resolve(arg).map_err(|e| parse_err(ln, e.to_string()))?;
                builtin = Some((ln, ca));
            }
            "entry" => {
                let (a, v) = match (&alphabet, &nb) {
                    (Some(a), Some(v)) => (a, v),
                    _ => return Err(parse_err(ln, "entry before alphabet/neighborhood")),
                };
                let m = v.len();
                if words.len() != m + 3 || words[m + 1] != "->" {
                    return Err(parse_err(ln, format!("entry needs {m} states, '->' and an output")));
                }
                let mut idx = 0usize;
                for w in &words[1..=m] {
                    let s = a.id(w).map_err(|e| parse_err(ln, e.to_string()))?;
                    idx = idx * a.len() + s.index();
                }
                let out = a.id(words[m + 2]).map_err(|e| parse_err(ln, e.to_string()))?;
                let size = (a.len() as u128).pow(m as u32);
                if size > super::MAX_TABLE {
                    return Err(parse_err(ln, Error::TableTooLarge(size).to_string()));
                }
                let t = table.get_or_insert_with(|| vec![None; size as usize]);
                if let Some(prev) = t[idx] {
                    if prev != out {
                        return Err(parse_err(ln, "conflicting duplicate entry"));
                    }
                }
                t[idx] = Some(out);
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    if let Some((ln, ca)) = builtin {
        if table.is_some() {
            return Err(parse_err(ln, "builtin and entry lines are exclusive"));
        }
        if let Some(d) = dim {
            if d != ca.dim() {
                return Err(parse_err(ln, format!("builtin has dimension {}, header says {d}", ca.dim())));
            }
        }
        if let Some(a) = &alphabet {
            if a != ca.alphabet() {
                return Err(parse_err(ln, "builtin alphabet differs from header"));
            }
        }
        if let Some(v) = &nb {
            if v != ca.neighborhood() {
                return Err(parse_err(ln, "builtin neighborhood differs from header"));
            }
        }
        return Ok(match name {
            Some(n) => ca.with_name(n),
            None => ca,
        });
    }
    let (a, v) = match (alphabet, nb) {
        (Some(a), Some(v)) => (a, v),
        _ => return Err(parse_err(last_line, "rule needs alphabet and neighborhood")),
    };
    let size = (a.len() as u128).pow(v.len() as u32) as usize;
    let t = table.unwrap_or_else(|| vec![None; size]);
    if let Some(missing) = t.iter().position(|s| s.is_none()) {
        let n = a.len();
        let m = v.len();
        let mut ctx = Vec::with_capacity(m);
        let mut rest = missing;
        for _ in 0..m {
            ctx.push(a.name(State((rest % n) as u16)).to_string());
            rest /= n;
        }
        ctx.reverse();
        return Err(parse_err(last_line, format!("missing entry for context {}", ctx.join(" "))));
    }
    let ca = CellularAutomaton::from_table(a, v, t.into_iter().map(|s| s.expect("checked")).collect())?;
    Ok(match name {
        Some(n) => ca.with_name(n),
        None => ca,
    })
}

/// Full rule file with one entry per context.
pub fn emit_rule(ca: &CellularAutomaton) -> String {
    let mut out = String::new();
    if let Some(n) = ca.name() {
        writeln!(out, "name {n}").unwrap();
    }
    writeln!(out, "dim {}", ca.dim()).unwrap();
    writeln!(out, "alphabet {}", ca.alphabet().names().join(" ")).unwrap();
    let offs: Vec<String> = ca.neighborhood().offsets().iter().map(|o| format_tuple(o)).collect();
    writeln!(out, "neighborhood {}", offs.join(" ")).unwrap();
    let a = ca.alphabet();
    for (idx, s) in ca.table().iter().enumerate() {
        out.push_str("entry");
        for q in ca.context_of(idx) {
            out.push(' ');
            out.push_str(a.name(q));
        }
        out.push_str(" -> ");
        out.push_str(a.name(*s));
        out.push('\n');
    }
    out
}

pub fn parse_configuration(text: &str, alphabet: &Alphabet, default_dim: usize) -> Result<Configuration> {
    let mut dim: Option<usize> = None;
    let mut background: Option<Background> = None;
    let mut cells: Vec<(usize, Pos, State)> = Vec::new();
    let id = |w: &str, ln: usize| alphabet.id(w).map_err(|e| parse_err(ln, e.to_string()));
    for (ln, words) in lines(text) {
        match words[0] {
            "dim" => {
                dim = Some(words.get(1).and_then(|w| w.parse().ok()).ok_or_else(|| parse_err(ln, "bad dim"))?);
            }
            "background" => {
                if words.len() != 2 {
                    return Err(parse_err(ln, "background takes one state"));
                }
                background = Some(Background::Uniform(id(words[1], ln)?));
            }
            "background-periodic" => {
                let periods = parse_tuple(words.get(1).ok_or_else(|| parse_err(ln, "missing periods"))?, ln)?;
                let block = words[2..].iter().map(|w| id(w, ln)).collect::<Result<Vec<_>>>()?;
                dim.get_or_insert(periods.len());
                background = Some(Background::Periodic { periods, block });
            }
            "cell" => {
                if words.len() != 3 {
                    return Err(parse_err(ln, "cell takes coordinates and a state"));
                }
                let p = parse_tuple(words[1], ln)?;
                dim.get_or_insert(p.len());
                cells.push((ln, p, id(words[2], ln)?));
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let d = dim.unwrap_or(default_dim);
    let bg = background.ok_or_else(|| parse_err(0, "missing background line"))?;
    let mut c = Configuration::with_background(d, bg).map_err(|e| parse_err(0, e.to_string()))?;
    for (ln, p, s) in cells {
        c.set(p, s).map_err(|e| parse_err(ln, e.to_string()))?;
    }
    Ok(c)
}

pub fn emit_configuration(c: &Configuration, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", c.dim()).unwrap();
    match c.background() {
        Background::Uniform(q) => writeln!(out, "background {}", alphabet.name(*q)).unwrap(),
        Background::Periodic { periods, block } => {
            let names: Vec<&str> = block.iter().map(|s| alphabet.name(*s)).collect();
            writeln!(out, "background-periodic {} {}", format_tuple(periods), names.join(" ")).unwrap();
        }
    }
    for (p, s) in c.overrides() {
        writeln!(out, "cell {} {}", format_tuple(p), alphabet.name(*s)).unwrap();
    }
    out
}

pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<Pattern> {
    let mut dim = 1usize;
    let mut radius: Option<usize> = None;
    let mut cells = Vec::new();
    let mut last = 0;
    for (ln, words) in lines(text) {
        last = ln;
        match words[0] {
            "dim" => dim = words.get(1).and_then(|w| w.parse().ok()).ok_or_else(|| parse_err(ln, "bad dim"))?,
            "radius" => {
                radius = Some(words.get(1).and_then(|w| w.parse().ok()).ok_or_else(|| parse_err(ln, "bad radius"))?)
            }
            "cells" => {
                for w in &words[1..] {
                    cells.push(alphabet.id(w).map_err(|e| parse_err(ln, e.to_string()))?);
                }
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let r = radius.ok_or_else(|| parse_err(last, "missing radius"))?;
    Pattern::new(dim, r, cells).map_err(|e| parse_err(last, e.to_string()))
}

pub fn emit_pattern(p: &Pattern, alphabet: &Alphabet) -> String {
    let mut out = format!("dim {}\nradius {}\n", p.dim(), p.radius());
    for chunk in p.cells().chunks(p.side()) {
        let names: Vec<&str> = chunk.iter().map(|s| alphabet.name(*s)).collect();
        writeln!(out, "cells {}", names.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_builtins(name: &str) -> Result<CellularAutomaton> {
        Err(Error::UnknownZooEntry(name.into()))
    }

    #[test]
    fn rule_round_trip() {
        let ca = CellularAutomaton::from_fn(Alphabet::new(&["a", "b"]).unwrap(), Neighborhood::interval(-1, 1), |c| {
            c[0]
        })
        .unwrap()
        .with_name("shift");
        let text = emit_rule(&ca);
        assert_eq!(parse_rule(&text, &no_builtins).unwrap(), ca);
    }

    #[test]
    fn missing_entry_reports_line() {
        let text = "dim 1\nalphabet 0 1\nneighborhood (0)\nentry 0 -> 1\n";
        match parse_rule(text, &no_builtins) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("missing entry"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn configuration_round_trip() {
        let a = Alphabet::new(&["b", "x", "y"]).unwrap();
        let mut c = Configuration::periodic(1, vec![2], vec![State(0), State(1)]).unwrap();
        c.set(vec![5], State(2)).unwrap();
        let text = emit_configuration(&c, &a);
        assert_eq!(parse_configuration(&text, &a, 1).unwrap(), c);
        assert!(parse_configuration("background q\n", &a, 1).is_err());
    }

    #[test]
    fn pattern_round_trip() {
        let a = Alphabet::numeric(3);
        let p = Pattern::from_fn(2, 1, |q| State(((q[0] + q[1]).rem_euclid(3)) as u16));
        assert_eq!(parse_pattern(&emit_pattern(&p, &a), &a).unwrap(), p);
    }
}
