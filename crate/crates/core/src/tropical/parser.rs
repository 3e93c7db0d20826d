use super::{TropError, TropicalExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number { text: String },
    Ident(String),
    Plus,
    Minus,
    Star,
    Comma,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, TropError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, offset: start });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = text[start..i].to_string();
            if text.parse::<f64>().is_err() {
                return Err(TropError::Syntax {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                });
            }
            tokens.push(Token {
                tok: Tok::Number { text },
                offset: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
            });
        } else {
            let token = text[start..].chars().next().expect("non-empty remainder");
            return Err(TropError::UnknownToken {
                offset: start,
                token,
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + ahead).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn error(&self, message: impl Into<String>) -> TropError {
        TropError::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), TropError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.error(format!("expected {what}"))),
            None => Err(self.error(format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<TropicalExpr, TropError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    terms.push(TropicalExpr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            TropicalExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<TropicalExpr, TropError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(TropicalExpr::Neg(Box::new(self.term()?)))
            }
            Some(Tok::Number { text }) if self.peek_at(1) == Some(&Tok::Star) => {
                let k: i64 = text
                    .parse()
                    .map_err(|_| self.error(format!("multiplier `{text}` is not an integer")))?;
                self.pos += 2;
                Ok(TropicalExpr::Scale(k, Box::new(self.term()?)))
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<TropicalExpr, TropError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Number { text } => {
                self.pos += 1;
                Ok(TropicalExpr::Const(text.parse().expect("validated by lexer")))
            }
            Tok::Ident(name) if (name == "max" || name == "min") && self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 2;
                let mut args = vec![self.expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(if name == "max" {
                    TropicalExpr::Max(args)
                } else {
                    TropicalExpr::Min(args)
                })
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(TropicalExpr::Var(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable, `max(`, `min(` or `(`")),
        }
    }
}

/// Parses an expression; errors carry the byte offset of the offending token.
pub fn parse_tropical(text: &str) -> Result<TropicalExpr, TropError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}
