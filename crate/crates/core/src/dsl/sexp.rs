//! Minimal s-expression reader with source positions.

use super::DslError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sexp {
    Symbol(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Symbol(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            Sexp::Symbol(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    /// The items of a list whose first element is the symbol `head`.
    pub fn tagged(&self, head: &str) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) if items.first().and_then(Sexp::as_symbol) == Some(head) => {
                Some(&items[1..])
            }
            _ => None,
        }
    }
}

pub fn syntax_error(pos: Pos, expected: impl Into<String>) -> DslError {
    DslError::Syntax {
        line: pos.line,
        col: pos.col,
        expected: expected.into(),
    }
}

/// Reads every top-level expression of `text`. `;` starts a comment that
/// runs to the end of the line.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, DslError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let here = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let (items, start) = stack
                    .pop()
                    .ok_or_else(|| syntax_error(here, "expression, found unbalanced ')'"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            _ => {
                let mut sym = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    sym.push(c);
                    chars.next();
                    col += 1;
                }
                let atom = Sexp::Symbol(sym, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => top.push(atom),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(syntax_error(*start, "')' to close this list"));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let got = read_all("; header\n(a (b c)\n  d)").unwrap();
        assert_eq!(got.len(), 1);
        let Sexp::List(items, pos) = &got[0] else {
            panic!("expected list")
        };
        assert_eq!(*pos, Pos { line: 2, col: 1 });
        assert_eq!(items[2].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unbalanced_parens_are_syntax_errors() {
        assert!(matches!(
            read_all("(a (b)"),
            Err(DslError::Syntax { line: 1, col: 1, .. })
        ));
        assert!(matches!(
            read_all("a)"),
            Err(DslError::Syntax { line: 1, col: 2, .. })
        ));
    }
}
