use crate::error::QasmError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Int(usize),
    Real(f64),
    Str(String),
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    EqEq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn lex(text: &str) -> Result<Vec<Token>, QasmError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1usize;
    let mut col = 1usize;

    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => advance(&mut i, &mut line, &mut col, c),
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            ';' | ',' | '(' | ')' | '[' | ']' | '{' | '}' | '+' | '*' | '/' | '^' => {
                let kind = match c {
                    ';' => TokenKind::Semicolon,
                    ',' => TokenKind::Comma,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '+' => TokenKind::Plus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    _ => TokenKind::Caret,
                };
                tokens.push(Token { kind, line: tline, col: tcol });
                advance(&mut i, &mut line, &mut col, c);
            }
            '-' => {
                advance(&mut i, &mut line, &mut col, c);
                if chars.get(i) == Some(&'>') {
                    advance(&mut i, &mut line, &mut col, '>');
                    tokens.push(Token { kind: TokenKind::Arrow, line: tline, col: tcol });
                } else {
                    tokens.push(Token { kind: TokenKind::Minus, line: tline, col: tcol });
                }
            }
            '=' => {
                advance(&mut i, &mut line, &mut col, c);
                if chars.get(i) == Some(&'=') {
                    advance(&mut i, &mut line, &mut col, '=');
                    tokens.push(Token { kind: TokenKind::EqEq, line: tline, col: tcol });
                } else {
                    return Err(QasmError::Syntax {
                        line: tline,
                        col: tcol,
                        msg: "stray `=`".into(),
                    });
                }
            }
            '"' => {
                advance(&mut i, &mut line, &mut col, c);
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        Some(&'"') => {
                            advance(&mut i, &mut line, &mut col, '"');
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            advance(&mut i, &mut line, &mut col, ch);
                        }
                        None => {
                            return Err(QasmError::Syntax {
                                line: tline,
                                col: tcol,
                                msg: "unterminated string".into(),
                            })
                        }
                    }
                }
                tokens.push(Token { kind: TokenKind::Str(s), line: tline, col: tcol });
            }
            '0'..='9' | '.' => {
                let mut s = String::new();
                let mut is_real = false;
                while let Some(&ch) = chars.get(i) {
                    match ch {
                        '0'..='9' => {}
                        '.' => is_real = true,
                        'e' | 'E' => {
                            is_real = true;
                            s.push(ch);
                            advance(&mut i, &mut line, &mut col, ch);
                            if let Some(&sign @ ('+' | '-')) = chars.get(i) {
                                s.push(sign);
                                advance(&mut i, &mut line, &mut col, sign);
                            }
                            continue;
                        }
                        _ => break,
                    }
                    s.push(ch);
                    advance(&mut i, &mut line, &mut col, ch);
                }
                let kind = if is_real {
                    TokenKind::Real(s.parse().map_err(|_| QasmError::Syntax {
                        line: tline,
                        col: tcol,
                        msg: format!("bad number `{s}`"),
                    })?)
                } else {
                    TokenKind::Int(s.parse().map_err(|_| QasmError::Syntax {
                        line: tline,
                        col: tcol,
                        msg: format!("bad integer `{s}`"),
                    })?)
                };
                tokens.push(Token { kind, line: tline, col: tcol });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&ch) = chars.get(i) {
                    if ch.is_ascii_alphanumeric() || ch == '_' {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut col, ch);
                    } else {
                        break;
                    }
                }
                tokens.push(Token { kind: TokenKind::Ident(s), line: tline, col: tcol });
            }
            other => {
                return Err(QasmError::Syntax {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}
