#![allow(dead_code)]

use supertable::chartable::BasisMatrix;
use supertable::LaurentPoly;

/// Reference supercharacter table for n = 4, cell by cell, rows and columns in total order, `t = q - 1`.
pub const REFERENCE_CHI_KAPPA: [[&str; 15]; 15] = [
    [
        "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
    ],
    [
        "t", "-1", "t", "t", "-1", "-1", "t", "-1", "t", "t", "t", "-1", "t", "t", "t",
    ],
    [
        "t", "t", "-1", "t", "-1", "t", "-1", "-1", "t", "t", "t", "t", "t", "t", "-1",
    ],
    [
        "t", "t", "t", "-1", "t", "-1", "-1", "-1", "t", "t", "t", "-1", "t", "t", "t",
    ],
    [
        "t^2", "-t", "-t", "t^2", "1", "-t", "-t", "1", "t^2", "t^2", "-t", "t^2", "t^2", "t^2",
        "-t",
    ],
    [
        "t^2", "-t", "t^2", "-t", "-t", "1", "-t", "1", "t^2", "t^2", "-t", "-t", "t^2", "t^2",
        "t^2",
    ],
    [
        "t^2", "t^2", "-t", "-t", "-t", "-t", "1", "1", "t^2", "t^2", "t^2", "-t", "t^2", "t^2",
        "-t",
    ],
    [
        "t^3", "-t^2", "-t^2", "-t^2", "t", "t", "t", "-1", "t^3", "t^3", "-t^2", "-t^2", "t^3",
        "t^3", "-t^2",
    ],
    [
        "tq", "0", "0", "tq", "0", "0", "0", "0", "-q", "tq", "0", "-q", "-q", "tq", "0",
    ],
    [
        "tq", "tq", "0", "0", "0", "0", "0", "0", "tq", "-q", "-q", "0", "-q", "tq", "0",
    ],
    [
        "t^2q", "-tq", "0", "0", "0", "0", "0", "0", "t^2q", "-tq", "q", "0", "-tq", "t^2q", "0",
    ],
    [
        "t^2q", "0", "0", "-tq", "0", "0", "0", "0", "-tq", "t^2q", "0", "q", "-tq", "t^2 q", "0",
    ],
    [
        "t^2q^2", "0", "0", "0", "0", "0", "0", "0", "-tq^2", "-tq^2", "0", "0", "q^2", "t^2q^2",
        "0",
    ],
    [
        "tq^2", "0", "tq", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-q^2", "-q",
    ],
    [
        "t^2 q^2", "0", "-tq", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-tq^2", "q",
    ],
];

/// Reference ρ→κ transition matrix for n = 4.
pub const REFERENCE_RHO_KAPPA: [[&str; 15]; 15] = [
    [
        "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
    ],
    [
        "0", "1", "0", "0", "1", "1", "0", "1", "0", "0", "1", "0", "0", "0", "0",
    ],
    [
        "0", "0", "1", "0", "1", "0", "1", "1", "0", "0", "0", "0", "0", "0", "1",
    ],
    [
        "0", "0", "0", "1", "0", "1", "1", "1", "0", "0", "0", "1", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "1", "0", "1", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "1", "1", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "1", "0", "0", "1", "1", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "1", "1", "0", "1", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1", "0", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1", "0", "0",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1", "q^{-1}",
    ],
    [
        "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1",
    ],
];

/// Reference χ→ρ transition matrix for n = 4.
pub const REFERENCE_CHI_RHO: [[&str; 15]; 15] = [
    [
        "1", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t", "-q", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t", "0", "-q", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t", "0", "0", "-q", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t^2", "-tq", "-tq", "0", "q^2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t^2", "-tq", "0", "-tq", "0", "q^2", "0", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t^2", "0", "-tq", "-tq", "0", "0", "q^2", "0", "0", "0", "0", "0", "0", "0", "0",
    ],
    [
        "t^3", "-t^2q", "-t^2q", "-t^2q", "tq^2", "tq^2", "tq^2", "-q^3", "0", "0", "0", "0", "0",
        "0", "0",
    ],
    [
        "tq", "0", "0", "0", "0", "0", "0", "0", "-q^2", "0", "0", "0", "0", "0", "0",
    ],
    [
        "tq", "0", "0", "0", "0", "0", "0", "0", "0", "-q^2", "0", "0", "0", "0", "0",
    ],
    [
        "t^2q", "-tq^2", "0", "0", "0", "0", "0", "0", "0", "-tq^2", "q^3", "0", "0", "0", "0",
    ],
    [
        "t^2q", "0", "0", "-tq^2", "0", "0", "0", "0", "-tq^2", "0", "0", "q^3", "0", "0", "0",
    ],
    [
        "t^2q^2", "0", "0", "0", "0", "0", "0", "0", "-tq^3", "-tq^3", "0", "0", "q^4", "0", "0",
    ],
    [
        "tq^2", "0", "-t^2q", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-q^3", "0",
    ],
    [
        "t^2q^2",
        "0",
        "t(q^3-q^2+q)",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
        "-tq^3",
        "q^3",
    ],
];

/// Row `{1-4, 2-3}`, column `{2-3}` of the reference χ→ρ matrix, which carries the wrong sign.
pub const CHI_RHO_SIGN_ENTRY: (usize, usize) = (14, 2);

/// Evaluates the reference notation: integers, `t`, `q`, juxtaposition, `^k`, `^{-k}`,
/// parentheses, `+` and `-`, with `t = q - 1`.
pub fn reference_cell(text: &str) -> LaurentPoly {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Notation { s: &tokens, i: 0 };
    let v = p.expr();
    assert_eq!(p.i, tokens.len(), "trailing input in {text:?}");
    v
}

struct Notation<'a> {
    s: &'a [char],
    i: usize,
}

impl Notation<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('-') => {
                    self.i += 1;
                    true
                }
                Some('+') => {
                    self.i += 1;
                    false
                }
                _ if first => false,
                _ => return acc,
            };
            let term = self.term();
            acc = if negative { &acc - &term } else { &acc + &term };
            first = false;
        }
    }

    fn term(&mut self) -> LaurentPoly {
        let mut acc = self.factor();
        while matches!(self.peek(), Some(c) if c == 't' || c == 'q' || c == '(' || c.is_ascii_digit())
        {
            acc = &acc * &self.factor();
        }
        acc
    }

    fn factor(&mut self) -> LaurentPoly {
        let base = match self.peek().expect("unexpected end") {
            't' => {
                self.i += 1;
                LaurentPoly::t_power(1)
            }
            'q' => {
                self.i += 1;
                LaurentPoly::monomial(1)
            }
            '(' => {
                self.i += 1;
                let v = self.expr();
                assert_eq!(self.peek(), Some(')'));
                self.i += 1;
                v
            }
            _ => LaurentPoly::from_term(self.integer(), 0),
        };
        if self.peek() != Some('^') {
            return base;
        }
        self.i += 1;
        let braced = self.peek() == Some('{');
        if braced {
            self.i += 1;
        }
        let negative = self.peek() == Some('-');
        if negative {
            self.i += 1;
        }
        let k = self.integer();
        if braced {
            assert_eq!(self.peek(), Some('}'));
            self.i += 1;
        }
        if negative {
            assert_eq!(base, LaurentPoly::monomial(1), "negative powers only of q");
            LaurentPoly::monomial(-k)
        } else {
            base.pow(u32::try_from(k).unwrap())
        }
    }

    fn integer(&mut self) -> i64 {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        assert!(self.i > start, "expected a digit at {start}");
        self.s[start..self.i]
            .iter()
            .collect::<String>()
            .parse()
            .unwrap()
    }
}

/// Notation cell, computed cell, and their positions wherever the two disagree.
pub struct Disagreement {
    pub row: usize,
    pub col: usize,
    pub reference: LaurentPoly,
    pub computed: LaurentPoly,
}

pub fn disagreements(m: &BasisMatrix, table: &[[&str; 15]; 15]) -> Vec<Disagreement> {
    assert_eq!(m.size(), 15);
    let mut out = Vec::new();
    for (row, cells) in table.iter().enumerate() {
        for (col, cell) in cells.iter().enumerate() {
            let want = reference_cell(cell);
            if m.get(row, col) != &want {
                out.push(Disagreement {
                    row,
                    col,
                    reference: want,
                    computed: m.get(row, col).clone(),
                });
            }
        }
    }
    out
}

pub fn describe(m: &BasisMatrix, d: &Disagreement) -> String {
    format!(
        "[{}][{}] reference {} computed {}",
        m.order()[d.row],
        m.order()[d.col],
        d.reference,
        d.computed
    )
}
