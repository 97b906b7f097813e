//! Expression parsing for summands.
//!
//! Grammar: numbers, the variable `k`, the constant `pi`, unary minus,
//! binary `+ - * / ^` and single-argument calls of sin, cos, tan, exp,
//! log, sqrt, sinh, cosh, abs. Precedence is `^` (right-associative),
//! then unary minus, then `* /`, then `+ -`; whitespace is
//! insignificant. Parsing is precedence-climbing (Pratt) and error
//! messages carry a 1-based byte offset plus the expected token.

use std::fmt;

pub const MAX_INPUT_BYTES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, k: f64) -> f64 {
        match self {
            Expr::Number(v) => *v,
            Expr::Var => k,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(inner) => -inner.eval(k),
            Expr::Bin(op, lhs, rhs) => {
                let (a, b) = (lhs.eval(k), rhs.eval(k));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, arg) => f.apply(arg.eval(k)),
        }
    }
}

/// Fully parenthesized form; reparses to the identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Var => write!(f, "k"),
            Expr::Pi => write!(f, "pi"),
            Expr::Neg(inner) => write!(f, "(-{inner})"),
            Expr::Bin(op, lhs, rhs) => write!(f, "({lhs}{}{rhs})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

/// Parse failure at a 1-based byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: expected {}", self.offset, self.expected)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(usize, Token)>, ParseError> {
        let mut lexer = Lexer {
            text: text.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some((at, token)) = lexer.next_token()? {
            out.push((at, token));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let at = self.pos;
        let c = self.text[at];
        let token = match c {
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Token::Op(c as char)
            }
            b'0'..=b'9' | b'.' => {
                let mut end = at;
                let mut seen_exp = false;
                while end < self.text.len() {
                    let b = self.text[end];
                    if b.is_ascii_digit() || b == b'.' {
                        end += 1;
                    } else if (b == b'e' || b == b'E') && !seen_exp {
                        seen_exp = true;
                        end += 1;
                        if end < self.text.len() && (self.text[end] == b'+' || self.text[end] == b'-')
                        {
                            end += 1;
                        }
                    } else {
                        break;
                    }
                }
                let literal = std::str::from_utf8(&self.text[at..end]).unwrap();
                let value: f64 = literal.parse().map_err(|_| ParseError {
                    offset: at + 1,
                    expected: "a numeric literal".into(),
                })?;
                self.pos = end;
                Token::Number(value)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = at;
                while end < self.text.len()
                    && (self.text[end].is_ascii_alphanumeric() || self.text[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.text[at..end]).unwrap().to_string();
                self.pos = end;
                Token::Ident(name)
            }
            _ => {
                return Err(ParseError {
                    offset: at + 1,
                    expected: "a number, name, operator or parenthesis".into(),
                })
            }
        };
        Ok(Some((at, token)))
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end_offset: usize,
}

// binding powers: ^ > unary minus > * / > + -
const BP_ADD: (u8, u8) = (1, 2);
const BP_MUL: (u8, u8) = (3, 4);
const BP_NEG: u8 = 5;
const BP_POW: (u8, u8) = (9, 8); // right-associative

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError {
            offset: MAX_INPUT_BYTES + 1,
            expected: format!("input of at most {MAX_INPUT_BYTES} bytes"),
        });
    }
    let tokens = Lexer::tokens(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end_offset: text.len(),
    };
    let expr = parser.expression(0)?;
    if let Some((at, _)) = parser.peek() {
        return Err(ParseError {
            offset: at + 1,
            expected: "end of input or an operator".into(),
        });
    }
    Ok(expr)
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Token)> {
        self.tokens.get(self.cursor).map(|(at, t)| (*at, t))
    }

    fn advance(&mut self) -> Option<(usize, Token)> {
        let item = self.tokens.get(self.cursor).cloned();
        self.cursor += 1;
        item
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let offset = self
            .peek()
            .map(|(at, _)| at + 1)
            .unwrap_or(self.end_offset + 1);
        ParseError {
            offset,
            expected: expected.into(),
        }
    }

    fn expression(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        while let Some((_, token)) = self.peek() {
            let (op, (l_bp, r_bp)) = match token {
                Token::Op('+') => (BinOp::Add, BP_ADD),
                Token::Op('-') => (BinOp::Sub, BP_ADD),
                Token::Op('*') => (BinOp::Mul, BP_MUL),
                Token::Op('/') => (BinOp::Div, BP_MUL),
                Token::Op('^') => (BinOp::Pow, BP_POW),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.advance();
            let rhs = self.expression(r_bp)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        match self.advance() {
            Some((_, Token::Number(v))) => Ok(Expr::Number(v)),
            Some((_, Token::Op('-'))) => {
                let inner = self.expression(BP_NEG)?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some((_, Token::LParen)) => {
                let inner = self.expression(0)?;
                match self.advance() {
                    Some((_, Token::RParen)) => Ok(inner),
                    Some((at, _)) => Err(ParseError {
                        offset: at + 1,
                        expected: "')'".into(),
                    }),
                    None => Err(ParseError {
                        offset: self.end_offset + 1,
                        expected: "')'".into(),
                    }),
                }
            }
            Some((at, Token::Ident(name))) => match name.as_str() {
                "k" => Ok(Expr::Var),
                "pi" => Ok(Expr::Pi),
                _ => {
                    if let Some(func) = Func::from_name(&name) {
                        match self.advance() {
                            Some((_, Token::LParen)) => {}
                            Some((at, _)) => {
                                return Err(ParseError {
                                    offset: at + 1,
                                    expected: "'(' after a function name".into(),
                                })
                            }
                            None => {
                                return Err(ParseError {
                                    offset: self.end_offset + 1,
                                    expected: "'(' after a function name".into(),
                                })
                            }
                        }
                        let arg = self.expression(0)?;
                        match self.advance() {
                            Some((_, Token::RParen)) => Ok(Expr::Call(func, Box::new(arg))),
                            Some((at, _)) => Err(ParseError {
                                offset: at + 1,
                                expected: "')'".into(),
                            }),
                            None => Err(ParseError {
                                offset: self.end_offset + 1,
                                expected: "')'".into(),
                            }),
                        }
                    } else {
                        Err(ParseError {
                            offset: at + 1,
                            expected: "'k', 'pi' or a known function name".into(),
                        })
                    }
                }
            },
            Some((at, _)) => Err(ParseError {
                offset: at + 1,
                expected: "a number, 'k', 'pi', '(' or unary '-'".into(),
            }),
            None => Err(self.error_here("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let e = parse_expr("sin(40/k)/k").unwrap();
        let v = e.eval(40.0);
        assert!((v - 1.0_f64.sin() / 40.0).abs() < 1e-15);
        assert!((v - 0.021_036_8).abs() < 1e-7);

        let e = parse_expr("1/(1000^2+k^2)").unwrap();
        assert!((e.eval(1000.0) - 5e-7).abs() < 1e-20);
    }

    #[test]
    fn unterminated_call_reports_offset_and_token() {
        let err = parse_expr("sin(40/k").unwrap_err();
        assert_eq!(err.offset, 9);
        assert_eq!(err.expected, "')'");
        assert!(err.to_string().contains("offset 9"));
        assert!(err.to_string().contains("expected ')'"));
    }

    #[test]
    fn precedence_and_associativity() {
        // ^ right-associative and tighter than unary minus
        assert_eq!(parse_expr("2^3^2").unwrap().eval(1.0), 512.0);
        assert_eq!(parse_expr("-2^2").unwrap().eval(1.0), -4.0);
        assert_eq!(parse_expr("2^-2").unwrap().eval(1.0), 0.25);
        // unary minus binds tighter than *
        assert_eq!(parse_expr("-2*3").unwrap().eval(1.0), -6.0);
        assert_eq!(
            parse_expr("-2*3").unwrap(),
            Expr::Bin(
                BinOp::Mul,
                Box::new(Expr::Neg(Box::new(Expr::Number(2.0)))),
                Box::new(Expr::Number(3.0)),
            )
        );
        assert_eq!(parse_expr("2-3-4").unwrap().eval(1.0), -5.0);
        assert_eq!(parse_expr("2+3*4").unwrap().eval(1.0), 14.0);
        assert_eq!(parse_expr("12/3/2").unwrap().eval(1.0), 2.0);
    }

    #[test]
    fn pi_and_variable() {
        let e = parse_expr("pi*k").unwrap();
        assert!((e.eval(2.0) - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn unknown_name_is_an_error() {
        let err = parse_expr("foo(3)").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn reports_trailing_garbage() {
        let err = parse_expr("1+2 3").unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_expr("sin( 40 / k ) / k").unwrap();
        let b = parse_expr("sin(40/k)/k").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pretty_print_reparses_identically() {
        let corpus: [&str; 50] = [
            "1",
            "k",
            "pi",
            "-k",
            "--k",
            "1+2",
            "1-2",
            "2*3",
            "8/4",
            "2^10",
            "2^3^2",
            "-2^2",
            "2^-3",
            "1+2*3",
            "(1+2)*3",
            "1/(1+k)",
            "sin(k)",
            "cos(k)",
            "tan(k)",
            "exp(-k)",
            "log(k)",
            "sqrt(k)",
            "sinh(1/k)",
            "cosh(1/k)",
            "abs(-k)",
            "sin(40/k)/k",
            "1/(1000^2+k^2)",
            "sin(100/k)/k",
            "1/k^2",
            "1/k^4",
            "k^2/(1+k^4)",
            "pi^2/6",
            "2*pi/k",
            "exp(-k^2/2)",
            "sin(k)*cos(k)",
            "sin(k)/cos(k)",
            "1-1/k",
            "-(1+k)",
            "-sin(k)",
            "sqrt(k^2+1)",
            "log(1+1/k)",
            "abs(sin(pi/k))",
            "3.25e-2*k",
            "1e3/k^2",
            "0.5^k",
            "(k+1)*(k-1)",
            "((k))",
            "k/2+k/3",
            "2^(1/k)",
            "sin(cos(k))",
        ];
        for text in corpus {
            let ast = parse_expr(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            let printed = ast.to_string();
            let reparsed = parse_expr(&printed)
                .unwrap_or_else(|e| panic!("pretty-print of {text} -> {printed}: {e}"));
            assert_eq!(ast, reparsed, "{text} -> {printed}");
        }
    }

    #[test]
    fn rejects_oversized_input() {
        let big = "1+".repeat(3000) + "1";
        assert!(parse_expr(&big).is_err());
    }
}
