//! Slash notation for games, e.g. `{1|||1/2|-1||-3/2|-7/2}`.
//!
//! A run of `k` bars separates the options of a game whose nested options use
//! fewer than `k` bars, so nested braces can be dropped. Options with more
//! than one choice on a side (or an empty side) keep their braces when nested.

use super::store::Store;
use super::{DyadicRational, GameError, GameStore, GameValue};

impl GameStore {
    /// Renders `g` in slash notation. Numbers print bare.
    pub fn display(&self, g: GameValue) -> String {
        self.with_store(|store| render(store, g, true).0)
    }

    /// Parses slash notation into a canonical game.
    pub fn parse(&self, text: &str) -> Result<GameValue, GameError> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(syntax(0, "empty game string"));
        }
        self.with_store(|store| Parser { store, tokens: &tokens, text_len: text.len() }.top())
    }
}

fn render(store: &Store, g: GameValue, top: bool) -> (String, usize) {
    if let Some(x) = store.number_of(g) {
        return (x.to_string(), 0);
    }
    let left = store.left_of(g);
    let right = store.right_of(g);
    let simple = left.len() == 1 && right.len() == 1;
    let render_side = |options: &[GameValue]| {
        let mut parts: Vec<(String, usize)> =
            options.iter().map(|&o| render(store, o, false)).collect();
        parts.sort();
        let bars = parts.iter().map(|p| p.1).max().unwrap_or(0);
        let text = parts.into_iter().map(|p| p.0).collect::<Vec<_>>().join(",");
        (text, bars)
    };
    let (ltext, lbars) = render_side(left);
    let (rtext, rbars) = render_side(right);
    let bars = 1 + lbars.max(rbars);
    let body = format!("{ltext}{}{rtext}", "|".repeat(bars));
    if top || !simple {
        (format!("{{{body}}}"), 0)
    } else {
        (body, bars)
    }
}

fn syntax(position: usize, message: impl Into<String>) -> GameError {
    GameError::Syntax {
        position,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Bars(usize),
    Num(DyadicRational),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, GameError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'{' => {
                tokens.push((Tok::Open, i));
                i += 1;
            }
            b'}' => {
                tokens.push((Tok::Close, i));
                i += 1;
            }
            b',' => {
                tokens.push((Tok::Comma, i));
                i += 1;
            }
            b'|' => {
                let start = i;
                while i < bytes.len() && bytes[i] == b'|' {
                    i += 1;
                }
                tokens.push((Tok::Bars(i - start), start));
            }
            b'-' | b'0'..=b'9' => {
                let start = i;
                if c == b'-' {
                    i += 1;
                }
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(syntax(start, "expected digits after '-'"));
                }
                let numerator: i64 = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "integer out of range"))?;
                let value = if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == dstart {
                        return Err(syntax(dstart, "expected denominator"));
                    }
                    let denominator: i64 = text[dstart..i]
                        .parse()
                        .map_err(|_| syntax(dstart, "denominator out of range"))?;
                    DyadicRational::from_fraction(numerator, denominator)
                        .ok_or(GameError::NonDyadic { position: start })?
                } else {
                    DyadicRational::integer(numerator)
                };
                tokens.push((Tok::Num(value), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    store: &'a mut Store,
    tokens: &'a [(Tok, usize)],
    text_len: usize,
}

impl Parser<'_> {
    fn position(&self, index: usize) -> usize {
        self.tokens.get(index).map_or(self.text_len, |t| t.1)
    }

    fn top(&mut self) -> Result<GameValue, GameError> {
        self.expression(0, self.tokens.len())
    }

    /// Index of the brace matching the `{` at `open`.
    fn matching(&self, open: usize, end: usize) -> Result<usize, GameError> {
        let mut depth = 0usize;
        for i in open..end {
            match self.tokens[i].0 {
                Tok::Open => depth += 1,
                Tok::Close => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(i);
                    }
                }
                _ => {}
            }
        }
        Err(syntax(self.position(open), "unbalanced '{'"))
    }

    /// Depth-zero tokens of `start..end` paired with their indices, with
    /// braced groups skipped over.
    fn shallow(&self, start: usize, end: usize) -> Result<Vec<usize>, GameError> {
        let mut out = Vec::new();
        let mut i = start;
        while i < end {
            match self.tokens[i].0 {
                Tok::Open => {
                    out.push(i);
                    i = self.matching(i, end)? + 1;
                }
                Tok::Close => return Err(syntax(self.position(i), "unbalanced '}'")),
                _ => {
                    out.push(i);
                    i += 1;
                }
            }
        }
        Ok(out)
    }

    /// A number, a braced game, or an unbraced slash expression.
    fn expression(&mut self, start: usize, end: usize) -> Result<GameValue, GameError> {
        if start >= end {
            return Err(syntax(self.position(start), "expected a game"));
        }
        let shallow = self.shallow(start, end)?;
        let max_bars = shallow
            .iter()
            .filter_map(|&i| match self.tokens[i].0 {
                Tok::Bars(k) => Some(k),
                _ => None,
            })
            .max();
        let Some(k) = max_bars else {
            if shallow.len() != 1 {
                return Err(syntax(self.position(shallow[1]), "expected '|' between options"));
            }
            return self.atom(start, end);
        };
        let separators: Vec<usize> = shallow
            .iter()
            .copied()
            .filter(|&i| self.tokens[i].0 == Tok::Bars(k))
            .collect();
        if separators.len() > 1 {
            return Err(syntax(
                self.position(separators[1]),
                format!("ambiguous: more than one {k}-bar separator at one level"),
            ));
        }
        let split = separators[0];
        let left = self.side(start, split)?;
        let right = self.side(split + 1, end)?;
        self.store.make(left, right)
    }

    fn atom(&mut self, start: usize, end: usize) -> Result<GameValue, GameError> {
        match self.tokens[start].0 {
            Tok::Num(x) if end == start + 1 => self.store.number(x),
            Tok::Open => {
                let close = self.matching(start, end)?;
                if close + 1 != end {
                    return Err(syntax(self.position(close + 1), "unexpected trailing input"));
                }
                let inner = self.shallow(start + 1, close)?;
                if !inner.iter().any(|&i| matches!(self.tokens[i].0, Tok::Bars(_))) {
                    return Err(syntax(self.position(start), "braced game needs a '|' separator"));
                }
                self.expression(start + 1, close)
            }
            _ => Err(syntax(self.position(start), "expected a number or '{'")),
        }
    }

    fn side(&mut self, start: usize, end: usize) -> Result<Vec<GameValue>, GameError> {
        if start == end {
            return Ok(Vec::new());
        }
        let commas: Vec<usize> = self
            .shallow(start, end)?
            .into_iter()
            .filter(|&i| self.tokens[i].0 == Tok::Comma)
            .collect();
        let mut options = Vec::with_capacity(commas.len() + 1);
        let mut from = start;
        for c in commas.into_iter().chain(std::iter::once(end)) {
            if from == c {
                return Err(syntax(self.position(c), "empty option in list"));
            }
            options.push(self.expression(from, c)?);
            from = c + 1;
        }
        Ok(options)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_print_bare() {
        let s = GameStore::new();
        assert_eq!(s.display(GameValue::ZERO), "0");
        let g = s.parse("-7/2").unwrap();
        assert_eq!(s.display(g), "-7/2");
        assert_eq!(s.parse("{|}").unwrap(), GameValue::ZERO);
        assert_eq!(s.parse("{0|}").unwrap(), s.integer(1).unwrap());
        assert_eq!(s.parse("{0|1}").unwrap(), s.number(DyadicRational::new(1, 1)).unwrap());
    }

    #[test]
    fn switch_and_nesting() {
        let s = GameStore::new();
        let g = s.parse("{1|-1}").unwrap();
        assert_eq!(s.left_options(g), vec![s.integer(1).unwrap()]);
        assert_eq!(s.right_options(g), vec![s.integer(-1).unwrap()]);
        assert_eq!(s.display(g), "{1|-1}");

        let g = s.parse("{3|3/2||1|-1/2|||-1}").unwrap();
        let inner = s.parse("{3|3/2||1|-1/2}").unwrap();
        assert_eq!(s.left_options(g), vec![inner]);
        assert_eq!(s.right_options(g), vec![s.integer(-1).unwrap()]);
        assert_eq!(s.left_options(inner), vec![s.parse("{3|3/2}").unwrap()]);
        assert_eq!(s.right_options(inner), vec![s.parse("{1|-1/2}").unwrap()]);
        assert_eq!(s.display(g), "{3|3/2||1|-1/2|||-1}");
    }

    #[test]
    fn braces_and_comma_lists() {
        let s = GameStore::new();
        let a = s.parse("{{3|2}|{1|0}}").unwrap();
        let b = s.parse("{3|2||1|0}").unwrap();
        assert_eq!(a, b);
        // {0,* | 0} prints its multi-option side with a comma list
        let star = s.parse("{0|0}").unwrap();
        let g = s.from_options(vec![GameValue::ZERO, star], vec![GameValue::ZERO]).unwrap();
        let text = s.display(g);
        assert_eq!(text, "{0,0|0||0}");
        assert_eq!(s.parse(&text).unwrap(), g);
    }

    #[test]
    fn whitespace_is_ignored() {
        let s = GameStore::new();
        assert_eq!(s.parse(" { 2 | 0 || -1/2 | -2 } ").unwrap(), s.parse("{2|0||-1/2|-2}").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let s = GameStore::new();
        assert!(matches!(s.parse("{1|2"), Err(GameError::Syntax { position: 0, .. })));
        assert!(matches!(s.parse("{1/3|0}"), Err(GameError::NonDyadic { position: 1 })));
        assert!(matches!(s.parse("{1|0|2}"), Err(GameError::Syntax { position: 4, .. })));
        assert!(matches!(s.parse("{1,,2|0}"), Err(GameError::Syntax { .. })));
        assert!(matches!(s.parse("½"), Err(GameError::Syntax { position: 0, .. })));
        assert!(matches!(s.parse(""), Err(GameError::Syntax { .. })));
        assert!(matches!(s.parse("{3}"), Err(GameError::Syntax { .. })));
        assert!(matches!(s.parse("1 2"), Err(GameError::Syntax { .. })));
        assert!(matches!(s.parse("}"), Err(GameError::Syntax { .. })));
    }
}
