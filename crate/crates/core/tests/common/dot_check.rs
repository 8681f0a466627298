//! A small DOT grammar checker used to validate emitted documents.
//!
//! Accepts the digraph subset the crate emits: `digraph ID? { stmt... }`
//! with node statements `id [attrs];`, edge statements `id -> id [attrs];`
//! and quoted identifiers with backslash escapes. Returns an error message
//! on the first offending token.

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Quoted(String),
    Symbol(char), // { } [ ] = ; ,
    Arrow,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '{' | '}' | '[' | ']' | '=' | ';' | ',' => {
                tokens.push(Token::Symbol(c));
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    tokens.push(Token::Arrow);
                    i += 2;
                } else {
                    return Err(format!("stray '-' at char {i}"));
                }
            }
            '"' => {
                let mut value = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated quoted string".to_string()),
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(esc) => value.push(*esc),
                                None => return Err("dangling escape".to_string()),
                            }
                            i += 2;
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(other) => {
                            value.push(*other);
                            i += 1;
                        }
                    }
                }
                tokens.push(Token::Quoted(value));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '#' => {
                let mut word = String::new();
                while i < chars.len()
                    && (chars[i].is_alphanumeric()
                        || chars[i] == '_'
                        || chars[i] == '.'
                        || chars[i] == '#')
                {
                    word.push(chars[i]);
                    i += 1;
                }
                tokens.push(Token::Word(word));
            }
            other => return Err(format!("unexpected character `{other}` at {i}")),
        }
    }
    Ok(tokens)
}

/// Validates one DOT digraph document.
pub fn check_dot(text: &str) -> Result<(), String> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let expect_word = |tokens: &[Token], pos: &mut usize, word: &str| -> Result<(), String> {
        match tokens.get(*pos) {
            Some(Token::Word(w)) if w == word => {
                *pos += 1;
                Ok(())
            }
            other => Err(format!("expected `{word}`, found {other:?}")),
        }
    };
    expect_word(&tokens, &mut pos, "digraph")?;
    if matches!(tokens.get(pos), Some(Token::Word(_) | Token::Quoted(_))) {
        pos += 1; // optional graph name
    }
    match tokens.get(pos) {
        Some(Token::Symbol('{')) => pos += 1,
        other => return Err(format!("expected `{{`, found {other:?}")),
    }

    // statement list until matching }
    while !matches!(tokens.get(pos), Some(Token::Symbol('}'))) {
        parse_statement(&tokens, &mut pos)?;
    }
    pos += 1; // consume }
    if pos != tokens.len() {
        return Err(format!("trailing tokens after closing brace: {:?}", &tokens[pos..]));
    }
    Ok(())
}

fn parse_id(tokens: &[Token], pos: &mut usize) -> Result<(), String> {
    match tokens.get(*pos) {
        Some(Token::Word(_) | Token::Quoted(_)) => {
            *pos += 1;
            Ok(())
        }
        other => Err(format!("expected identifier, found {other:?}")),
    }
}

fn parse_attr_list(tokens: &[Token], pos: &mut usize) -> Result<(), String> {
    if !matches!(tokens.get(*pos), Some(Token::Symbol('['))) {
        return Ok(());
    }
    *pos += 1;
    while !matches!(tokens.get(*pos), Some(Token::Symbol(']'))) {
        parse_id(tokens, pos)?;
        match tokens.get(*pos) {
            Some(Token::Symbol('=')) => *pos += 1,
            other => return Err(format!("expected `=` in attribute, found {other:?}")),
        }
        parse_id(tokens, pos)?;
        if matches!(tokens.get(*pos), Some(Token::Symbol(','))) {
            *pos += 1;
        }
    }
    *pos += 1; // consume ]
    Ok(())
}

fn parse_statement(tokens: &[Token], pos: &mut usize) -> Result<(), String> {
    // graph attribute statement `key=value;` or node/edge statement
    if let (Some(Token::Word(_) | Token::Quoted(_)), Some(Token::Symbol('='))) =
        (tokens.get(*pos), tokens.get(*pos + 1))
    {
        *pos += 2;
        parse_id(tokens, pos)?;
    } else {
        parse_id(tokens, pos)?;
        if matches!(tokens.get(*pos), Some(Token::Arrow)) {
            *pos += 1;
            parse_id(tokens, pos)?;
        }
        parse_attr_list(tokens, pos)?;
    }
    if matches!(tokens.get(*pos), Some(Token::Symbol(';'))) {
        *pos += 1;
    }
    Ok(())
}
