//! Text syntax for [`FamilySpec`].
//!
//! ```text
//! spec    := factor ('x' factor)*              left-associative direct product
//! factor  := NAME '(' args ')' | 'C' DIGITS | '(' spec ')'
//! args    := INT (',' INT)*
//! ham     := 'Ham' '(' 'n' '=' INT (';' spec (',' spec)*)? ')'
//! ```
//!
//! | text              | group                                  |
//! |-------------------|----------------------------------------|
//! | `C(12)` or `C12`  | cyclic `C_12`                          |
//! | `E(3,2)`          | elementary abelian `C_3^2`             |
//! | `D(2,5)`          | dihedral `D_10` (order `2n`, `n = 5`)  |
//! | `D(16)`           | dihedral 2-group of order 16           |
//! | `Q(16)`, `SD(32)` | generalized quaternion, semidihedral   |
//! | `Dic(6)`          | dicyclic group of order 24             |
//! | `Ab2(n)`          | `C_{2^{n+1}} × C_2`                    |
//! | `Ab2p(n,p)`       | `C_{2^n p} × C_2`                      |
//! | `Ham(n=1;C3)`     | `Q_8 × C_2 × C_3`                      |
//! | `M(5)`            | `C_25 ⋊ C_5`                           |
//! | `PQ(7,3,1,1)`     | `C_p ⋊ C_{q^n}`, action of order `q^s` |
//! | `CpC4(p,n)`       | `C_{p^n} ⋊ C_4`                        |
//! | `CpQ(p,n,m)`      | `C_{p^n} ⋊ Q_{2^m}`                    |
//! | `CqCpC4(p,n,q,m)` | `C_{q^m} ⋊ (C_{p^n} ⋊ C_4)`            |
//! | `CqCpQ(p,n,q,m,r)`| `C_{q^m} ⋊ (C_{p^n} ⋊ Q_{2^r})`        |
//! | `C(12)xC(2)`      | direct product (`×` also accepted)     |
//!
//! Names are case-sensitive; whitespace is ignored.

use super::FamilySpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Key(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Times,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let col = at + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => (out.push((Tok::LParen, col)), i += 1).1,
            ')' => (out.push((Tok::RParen, col)), i += 1).1,
            ',' => (out.push((Tok::Comma, col)), i += 1).1,
            ';' => (out.push((Tok::Semi, col)), i += 1).1,
            '=' => (out.push((Tok::Eq, col)), i += 1).1,
            '×' | '*' => (out.push((Tok::Times, col)), i += 1).1,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let v = text.parse::<u64>().map_err(|_| {
                    Error::parse(
                        format!("column {col}"),
                        format!("integer `{text}` is too large"),
                    )
                })?;
                out.push((Tok::Int(v), col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                // `C4xC3`: an `x` followed by an uppercase letter ends the word.
                while i < chars.len()
                    && chars[i].1.is_ascii_alphanumeric()
                    && !(i > start
                        && chars[i].1 == 'x'
                        && chars
                            .get(i + 1)
                            .is_some_and(|&(_, c)| c.is_ascii_uppercase()))
                {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                if c.is_ascii_uppercase() {
                    out.push((Tok::Name(word), col));
                } else if word == "x" {
                    out.push((Tok::Times, col));
                } else if let Some(rest) = word
                    .strip_prefix('x')
                    .filter(|r| r.starts_with(|c: char| c.is_ascii_uppercase()))
                {
                    // `xC(2)` after a closing parenthesis: split off the operator.
                    out.push((Tok::Times, col));
                    out.push((Tok::Name(rest.to_string()), col + 1));
                } else {
                    out.push((Tok::Key(word), col));
                }
            }
            other => {
                return Err(Error::parse(
                    format!("column {col}"),
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    out.push((Tok::End, input.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => describe(t).to_string(),
        };
        Error::parse(
            format!("column {}", self.col()),
            format!("{} (found {found})", msg.into()),
        )
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Tok::Int(v) => {
                let v = *v;
                self.next();
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(s) | Tok::Key(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Times => "`x`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses the family syntax described in the module docs.
pub fn parse_family_spec(input: &str) -> Result<FamilySpec> {
    let mut lx = Lexer {
        toks: lex(input)?,
        pos: 0,
    };
    let spec = product(&mut lx)?;
    if *lx.peek() != Tok::End {
        return Err(lx.err("expected `x` or end of input"));
    }
    Ok(spec)
}

fn product(lx: &mut Lexer) -> Result<FamilySpec> {
    let mut acc = factor(lx)?;
    while *lx.peek() == Tok::Times {
        lx.next();
        let rhs = factor(lx)?;
        acc = FamilySpec::DirectProduct(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn exponent_of_two(v: u64, what: &str, lx: &Lexer, col: usize) -> Result<u32> {
    if v.is_power_of_two() {
        Ok(v.trailing_zeros())
    } else {
        let _ = lx;
        Err(Error::parse(
            format!("column {col}"),
            format!("{what} takes the group order, which must be a power of two; got {v}"),
        ))
    }
}

fn small(v: u64, col: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| {
        Error::parse(
            format!("column {col}"),
            format!("exponent {v} is too large"),
        )
    })
}

fn factor(lx: &mut Lexer) -> Result<FamilySpec> {
    let (tok, col) = lx.next();
    let name = match tok {
        Tok::LParen => {
            let inner = product(lx)?;
            lx.expect(Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        Tok::Name(name) => name,
        other => {
            return Err(Error::parse(
                format!("column {col}"),
                format!("expected a family name (found {})", describe(&other)),
            ))
        }
    };

    // `C12` shorthand.
    if let Some(digits) = name
        .strip_prefix('C')
        .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
    {
        let n = digits.parse().map_err(|_| {
            Error::parse(
                format!("column {col}"),
                format!("`{name}`: order too large"),
            )
        })?;
        return Ok(FamilySpec::Cyclic { n });
    }

    if name == "Ham" {
        return hamiltonian(lx);
    }

    lx.expect(Tok::LParen, "`(`")?;
    let arg_col = lx.col();
    let mut args = vec![lx.int()?];
    while *lx.peek() == Tok::Comma {
        lx.next();
        args.push(lx.int()?);
    }
    lx.expect(Tok::RParen, "`,` or `)`")?;

    let arity = |want: usize| -> Result<()> {
        if args.len() == want {
            Ok(())
        } else {
            Err(Error::parse(
                format!("column {col}"),
                format!("`{name}` takes {want} argument(s), got {}", args.len()),
            ))
        }
    };
    let e = |i: usize| small(args[i], arg_col);

    let spec = match name.as_str() {
        "C" => {
            arity(1)?;
            FamilySpec::Cyclic { n: args[0] }
        }
        "E" => {
            arity(2)?;
            FamilySpec::ElementaryAbelian {
                p: args[0],
                k: e(1)?,
            }
        }
        "D" => match args.len() {
            1 => FamilySpec::Dihedral2Power {
                n: exponent_of_two(args[0], "D(order)", lx, arg_col)?,
            },
            2 if args[0] == 2 => FamilySpec::Dihedral { n: args[1] },
            _ => {
                return Err(Error::parse(
                    format!("column {col}"),
                    "`D` takes either the order `D(2^n)` or `D(2,n)` for D_2n",
                ))
            }
        },
        "Q" => {
            arity(1)?;
            FamilySpec::Quaternion {
                n: exponent_of_two(args[0], "Q", lx, arg_col)?,
            }
        }
        "SD" => {
            arity(1)?;
            FamilySpec::Semidihedral {
                n: exponent_of_two(args[0], "SD", lx, arg_col)?,
            }
        }
        "Dic" => {
            arity(1)?;
            FamilySpec::Dicyclic { k: args[0] }
        }
        "Ab2" => {
            arity(1)?;
            FamilySpec::Cyclic2PowerTimesC2 { n: e(0)? }
        }
        "Ab2p" => {
            arity(2)?;
            FamilySpec::Cyclic2PowerPTimesC2 {
                n: e(0)?,
                p: args[1],
            }
        }
        "M" => {
            arity(1)?;
            FamilySpec::Modular { p: args[0] }
        }
        "PQ" => {
            arity(4)?;
            FamilySpec::SemidirectPQ {
                p: args[0],
                q: args[1],
                n: e(2)?,
                s: e(3)?,
            }
        }
        "CpC4" => {
            arity(2)?;
            FamilySpec::DicyclicCpC4 {
                p: args[0],
                n: e(1)?,
            }
        }
        "CpQ" => {
            arity(3)?;
            FamilySpec::DicyclicCpQ {
                p: args[0],
                n: e(1)?,
                m: e(2)?,
            }
        }
        "CqCpC4" => {
            arity(4)?;
            FamilySpec::DicyclicCqCpC4 {
                p: args[0],
                n: e(1)?,
                q: args[2],
                m: e(3)?,
            }
        }
        "CqCpQ" => {
            arity(5)?;
            FamilySpec::DicyclicCqCpQ {
                p: args[0],
                n: e(1)?,
                q: args[2],
                m: e(3)?,
                r: e(4)?,
            }
        }
        _ => {
            return Err(Error::parse(
                format!("column {col}"),
                format!("unknown family `{name}`"),
            ))
        }
    };
    Ok(spec)
}

fn hamiltonian(lx: &mut Lexer) -> Result<FamilySpec> {
    lx.expect(Tok::LParen, "`(`")?;
    match lx.peek() {
        Tok::Key(k) if k == "n" => {
            lx.next();
        }
        _ => return Err(lx.err("expected `n=`")),
    }
    lx.expect(Tok::Eq, "`=`")?;
    let col = lx.col();
    let n = small(lx.int()?, col)?;
    let mut odd_part = Vec::new();
    if *lx.peek() == Tok::Semi {
        lx.next();
        odd_part.push(product(lx)?);
        while *lx.peek() == Tok::Comma {
            lx.next();
            odd_part.push(product(lx)?);
        }
    }
    lx.expect(Tok::RParen, "`;`, `,` or `)`")?;
    Ok(FamilySpec::Hamiltonian { n, odd_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> FamilySpec {
        parse_family_spec(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(p("Q(16)"), FamilySpec::Quaternion { n: 4 });
        assert_eq!(p("SD(32)"), FamilySpec::Semidihedral { n: 5 });
        assert_eq!(p("Dic(6)"), FamilySpec::Dicyclic { k: 6 });
        assert_eq!(p("D(2,5)"), FamilySpec::Dihedral { n: 5 });
        assert_eq!(p("D(16)"), FamilySpec::Dihedral2Power { n: 4 });
        assert_eq!(p("M(5)"), FamilySpec::Modular { p: 5 });
        assert_eq!(
            p("Ham(n=1;C3)"),
            FamilySpec::Hamiltonian {
                n: 1,
                odd_part: vec![FamilySpec::Cyclic { n: 3 }]
            }
        );
        assert_eq!(
            p("C(12)xC(2)"),
            FamilySpec::DirectProduct(
                Box::new(FamilySpec::Cyclic { n: 12 }),
                Box::new(FamilySpec::Cyclic { n: 2 })
            )
        );
        assert_eq!(
            p("PQ(7,3,1,1)"),
            FamilySpec::SemidirectPQ {
                p: 7,
                q: 3,
                n: 1,
                s: 1
            }
        );
        assert_eq!(p(" C(4) × C(3) "), p("C4xC3"));
        assert_eq!(
            p("Ham(n=0)"),
            FamilySpec::Hamiltonian {
                n: 0,
                odd_part: vec![]
            }
        );
    }

    #[test]
    fn errors_cite_the_offending_token() {
        let cases = [
            ("Q(12)", "column 3"),
            ("Foo(3)", "`Foo`"),
            ("C(3", "end of input"),
            ("C(3)x", "end of input"),
            ("C(3) C(4)", "column 6"),
            ("E(3)", "2 argument"),
            ("Ham(m=1)", "`m`"),
            ("C(3)$", "`$`"),
            ("C(99999999999999999999)", "too large"),
        ];
        for (input, needle) in cases {
            let err = parse_family_spec(input).unwrap_err().to_string();
            assert!(err.contains(needle), "{input}: {err}");
        }
    }

    fn leaf() -> impl Strategy<Value = FamilySpec> {
        prop_oneof![
            (1u64..100).prop_map(|n| FamilySpec::Cyclic { n }),
            (2u64..10, 0u32..5).prop_map(|(p, k)| FamilySpec::ElementaryAbelian { p, k }),
            (1u64..50).prop_map(|n| FamilySpec::Dihedral { n }),
            (2u32..12).prop_map(|n| FamilySpec::Dihedral2Power { n }),
            (3u32..12).prop_map(|n| FamilySpec::Quaternion { n }),
            (4u32..12).prop_map(|n| FamilySpec::Semidihedral { n }),
            (1u64..50).prop_map(|k| FamilySpec::Dicyclic { k }),
            (0u32..8).prop_map(|n| FamilySpec::Cyclic2PowerTimesC2 { n }),
            (1u32..8, 3u64..20).prop_map(|(n, p)| FamilySpec::Cyclic2PowerPTimesC2 { n, p }),
            (3u64..20).prop_map(|p| FamilySpec::Modular { p }),
            (2u64..20, 2u64..20, 1u32..4, 1u32..4)
                .prop_map(|(p, q, n, s)| FamilySpec::SemidirectPQ { p, q, n, s }),
            (3u64..20, 1u32..4).prop_map(|(p, n)| FamilySpec::DicyclicCpC4 { p, n }),
            (3u64..20, 1u32..4, 3u32..6).prop_map(|(p, n, m)| FamilySpec::DicyclicCpQ { p, n, m }),
            (3u64..20, 1u32..4, 3u64..20, 1u32..4)
                .prop_map(|(p, n, q, m)| FamilySpec::DicyclicCqCpC4 { p, n, q, m }),
            (3u64..20, 1u32..4, 3u64..20, 1u32..4, 3u32..6)
                .prop_map(|(p, n, q, m, r)| FamilySpec::DicyclicCqCpQ { p, n, q, m, r }),
        ]
    }

    fn any_spec() -> impl Strategy<Value = FamilySpec> {
        leaf().prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| FamilySpec::DirectProduct(Box::new(a), Box::new(b))),
                (0u32..4, proptest::collection::vec(inner, 0..3))
                    .prop_map(|(n, odd_part)| FamilySpec::Hamiltonian { n, odd_part }),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(spec in any_spec()) {
            prop_assert_eq!(parse_family_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
