//! Tokenizer and recursive-descent parser for the bracketed text format.
//!
//! ```text
//! document := IDENT '{' (IDENT '=' value)* '}'
//! value    := IDENT | '[' values ']' | '(' values ')'
//! values   := (value (',' value)* ','?)?
//! ```
//!
//! Identifiers are runs of alphanumerics and `_ - . @ ' + ~`. A `#` starts a
//! comment that runs to the end of the line.

use super::IoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Ident(String, Position),
    List(Vec<Value>, Position),
    Tuple(Vec<Value>, Position),
}

impl Value {
    pub fn position(&self) -> Position {
        match self {
            Value::Ident(_, p) | Value::List(_, p) | Value::Tuple(_, p) => *p,
        }
    }

    pub fn ident(&self) -> Result<(&str, Position), IoError> {
        match self {
            Value::Ident(s, p) => Ok((s, *p)),
            other => Err(syntax(other.position(), "expected an identifier")),
        }
    }

    pub fn list(&self) -> Result<&[Value], IoError> {
        match self {
            Value::List(items, _) => Ok(items),
            other => Err(syntax(other.position(), "expected a list `[...]`")),
        }
    }

    /// A tuple with exactly `arity` identifier entries.
    pub fn tuple(&self, arity: usize) -> Result<Vec<(&str, Position)>, IoError> {
        match self {
            Value::Tuple(items, p) => {
                if items.len() != arity {
                    return Err(syntax(*p, &format!("expected a tuple of {arity} identifiers")));
                }
                items.iter().map(Value::ident).collect()
            }
            other => Err(syntax(other.position(), "expected a tuple `(...)`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub key: String,
    pub position: Position,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub kind: String,
    pub position: Position,
    pub fields: Vec<Field>,
}

impl Document {
    pub fn field(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|f| f.key == key).map(|f| &f.value)
    }

    pub fn required(&self, key: &str) -> Result<&Value, IoError> {
        self.field(key).ok_or_else(|| syntax(self.position, &format!("missing field `{key}`")))
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<(), IoError> {
        match self.fields.iter().find(|f| !allowed.contains(&f.key.as_str())) {
            Some(f) => Err(syntax(f.position, &format!("unexpected field `{}`", f.key))),
            None => Ok(()),
        }
    }
}

pub(crate) fn syntax(p: Position, message: &str) -> IoError {
    IoError::Syntax { line: p.line, column: p.column, message: message.to_string() }
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || "_-.@'+~".contains(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Punct(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn next_token(&mut self) -> Result<(Token, Position), IoError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let position = Position { line: self.line, column: self.column };
        match self.chars.peek().copied() {
            None => Ok((Token::End, position)),
            Some(c) if "{}[]()=,".contains(c) => {
                self.bump();
                Ok((Token::Punct(c), position))
            }
            Some(c) if is_ident_char(c) => {
                let mut ident = String::new();
                while let Some(&c) = self.chars.peek().filter(|&&c| is_ident_char(c)) {
                    ident.push(c);
                    self.bump();
                }
                Ok((Token::Ident(ident), position))
            }
            Some(c) => Err(syntax(position, &format!("unexpected character `{c}`"))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: (Token, Position),
}

impl Parser<'_> {
    fn advance(&mut self) -> Result<(Token, Position), IoError> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.current, next))
    }

    fn expect(&mut self, c: char) -> Result<Position, IoError> {
        match self.advance()? {
            (Token::Punct(p), pos) if p == c => Ok(pos),
            (_, pos) => Err(syntax(pos, &format!("expected `{c}`"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Position), IoError> {
        match self.advance()? {
            (Token::Ident(s), pos) => Ok((s, pos)),
            (_, pos) => Err(syntax(pos, "expected an identifier")),
        }
    }

    fn document(&mut self) -> Result<Document, IoError> {
        let (kind, position) = self.ident()?;
        self.expect('{')?;
        let mut fields: Vec<Field> = Vec::new();
        while self.current.0 != Token::Punct('}') {
            let (key, key_pos) = self.ident()?;
            if fields.iter().any(|f| f.key == key) {
                return Err(syntax(key_pos, &format!("field `{key}` given twice")));
            }
            self.expect('=')?;
            let value = self.value()?;
            fields.push(Field { key, position: key_pos, value });
        }
        self.expect('}')?;
        match self.advance()? {
            (Token::End, _) => Ok(Document { kind, position, fields }),
            (_, pos) => Err(syntax(pos, "trailing input after the document")),
        }
    }

    fn value(&mut self) -> Result<Value, IoError> {
        match self.advance()? {
            (Token::Ident(s), pos) => Ok(Value::Ident(s, pos)),
            (Token::Punct('['), pos) => Ok(Value::List(self.values(']')?, pos)),
            (Token::Punct('('), pos) => Ok(Value::Tuple(self.values(')')?, pos)),
            (_, pos) => Err(syntax(pos, "expected a value")),
        }
    }

    fn values(&mut self, close: char) -> Result<Vec<Value>, IoError> {
        let mut items = Vec::new();
        loop {
            if self.current.0 == Token::Punct(close) {
                self.advance()?;
                return Ok(items);
            }
            items.push(self.value()?);
            match self.current.0 {
                Token::Punct(',') => {
                    self.advance()?;
                }
                Token::Punct(c) if c == close => {}
                _ => return Err(syntax(self.current.1, &format!("expected `,` or `{close}`"))),
            }
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let mut lexer = Lexer { chars: text.chars().peekable(), line: 1, column: 1 };
    let current = lexer.next_token()?;
    Parser { lexer, current }.document()
}
