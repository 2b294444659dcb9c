//! Prenex quantified boolean formulas: QDIMACS front end, canonical
//! serialization and brute-force evaluation of i-subformulae.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    fn qdimacs_tag(self) -> char {
        match self {
            Quantifier::Forall => 'a',
            Quantifier::Exists => 'e',
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Forall => "∀",
            Quantifier::Exists => "∃",
        })
    }
}

/// A signed variable index, DIMACS style: `3` is x3, `-3` is ¬x3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    /// Panics on 0, which is the DIMACS clause terminator rather than a literal.
    pub fn new(signed: i32) -> Self {
        assert!(signed != 0, "literal 0 is not a variable");
        Lit(signed)
    }

    pub fn pos(var: u32) -> Self {
        Lit::new(var as i32)
    }

    pub fn neg(var: u32) -> Self {
        Lit::new(-(var as i32))
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    fn holds(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

pub type Clause = Vec<Lit>;

/// Propositional expression over x1..xn, for matrices that are not in CNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(u32),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn var(v: u32) -> Self {
        Expr::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn eval_with(&self, value: &impl Fn(u32) -> bool) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(v) => value(*v),
            Expr::Not(e) => !e.eval_with(value),
            Expr::And(es) => es.iter().all(|e| e.eval_with(value)),
            Expr::Or(es) => es.iter().any(|e| e.eval_with(value)),
        }
    }

    fn max_var(&self) -> u32 {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(v) => *v,
            Expr::Not(e) => e.max_var(),
            Expr::And(es) | Expr::Or(es) => es.iter().map(Expr::max_var).max().unwrap_or(0),
        }
    }

    fn has_var_zero(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == 0,
            Expr::Not(e) => e.has_var_zero(),
            Expr::And(es) | Expr::Or(es) => es.iter().any(Expr::has_var_zero),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrix {
    Cnf(Vec<Clause>),
    Expr(Expr),
}

impl Matrix {
    pub fn eval_with(&self, value: impl Fn(u32) -> bool) -> bool {
        match self {
            Matrix::Cnf(clauses) => clauses
                .iter()
                .all(|c| c.iter().any(|&l| l.holds(value(l.var())))),
            Matrix::Expr(e) => e.eval_with(&value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing problem line `p cnf <vars> <clauses>`")]
    MissingProblemLine,
    #[error("variable {0} is not quantified")]
    FreeVariable(u32),
    #[error("variable {0} is quantified more than once")]
    Requantified(u32),
    #[error("variable {var} out of range 1..={num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("quantifier prefix must list variables 1..n in order; found {found} at position {position}")]
    PrefixOrder { position: u32, found: u32 },
    #[error("formula must have at least one variable")]
    NoVariables,
    #[error("prefix has {prefix_len} quantifiers but the formula has {num_vars} variables")]
    PrefixLength { prefix_len: usize, num_vars: u32 },
    #[error("matrix is not in CNF and has no QDIMACS form")]
    NotCnf,
    #[error("prefix of length {len} exceeds the {num_vars} variables of the formula")]
    PrefixTooLong { len: usize, num_vars: u32 },
    #[error("invalid bit string {0:?}")]
    InvalidPrefix(String),
}

/// A closed prenex formula `Q1 x1 … Qn xn φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfFormula {
    prefix: Vec<Quantifier>,
    matrix: Matrix,
}

impl QbfFormula {
    pub fn new(prefix: Vec<Quantifier>, matrix: Matrix) -> Result<Self, QbfError> {
        let n = prefix.len() as u32;
        if n == 0 {
            return Err(QbfError::NoVariables);
        }
        match &matrix {
            Matrix::Cnf(clauses) => {
                for lit in clauses.iter().flatten() {
                    if lit.var() > n {
                        return Err(QbfError::VariableOutOfRange {
                            var: lit.var(),
                            num_vars: n,
                        });
                    }
                }
            }
            Matrix::Expr(e) => {
                if e.has_var_zero() {
                    return Err(QbfError::VariableOutOfRange { var: 0, num_vars: n });
                }
                let max = e.max_var();
                if max > n {
                    return Err(QbfError::VariableOutOfRange { var: max, num_vars: n });
                }
            }
        }
        Ok(QbfFormula { prefix, matrix })
    }

    pub fn cnf(prefix: Vec<Quantifier>, clauses: Vec<Clause>) -> Result<Self, QbfError> {
        QbfFormula::new(prefix, Matrix::Cnf(clauses))
    }

    /// Convenience for tests and examples: clauses as signed integers.
    pub fn from_ints(prefix: &[Quantifier], clauses: &[&[i32]]) -> Result<Self, QbfError> {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&l| Lit::new(l)).collect())
            .collect();
        QbfFormula::cnf(prefix.to_vec(), clauses)
    }

    pub fn num_vars(&self) -> u32 {
        self.prefix.len() as u32
    }

    pub fn prefix(&self) -> &[Quantifier] {
        &self.prefix
    }

    /// Quantifier of x_i, 1-based.
    pub fn quantifier(&self, var: u32) -> Quantifier {
        self.prefix[var as usize - 1]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn clauses(&self) -> Option<&[Clause]> {
        match &self.matrix {
            Matrix::Cnf(c) => Some(c),
            Matrix::Expr(_) => None,
        }
    }

    /// Evaluates the matrix under a full assignment, `bits[i]` being x_{i+1}.
    pub fn matrix_holds(&self, bits: &[bool]) -> bool {
        self.matrix.eval_with(|v| bits[v as usize - 1])
    }

    /// Truth value of Φ_p: the subformula with x_1..x_|p| fixed to `p`.
    pub fn eval(&self, p: &Prefix) -> Result<bool, QbfError> {
        let n = self.num_vars();
        if p.len() > n as usize {
            return Err(QbfError::PrefixTooLong { len: p.len(), num_vars: n });
        }
        let mut bits = Vec::with_capacity(n as usize);
        bits.extend_from_slice(p.bits());
        Ok(self.eval_rec(&mut bits))
    }

    fn eval_rec(&self, bits: &mut Vec<bool>) -> bool {
        let depth = bits.len();
        if depth == self.prefix.len() {
            return self.matrix_holds(bits);
        }
        let q = self.prefix[depth];
        let branch = |b: bool, bits: &mut Vec<bool>| {
            bits.push(b);
            let r = self.eval_rec(bits);
            bits.pop();
            r
        };
        match q {
            Quantifier::Forall => branch(false, bits) && branch(true, bits),
            Quantifier::Exists => branch(false, bits) || branch(true, bits),
        }
    }

    pub fn to_qdimacs(&self) -> Result<String, QbfError> {
        let clauses = self.clauses().ok_or(QbfError::NotCnf)?;
        let mut out = format!("p cnf {} {}\n", self.num_vars(), clauses.len());
        let mut i = 0;
        while i < self.prefix.len() {
            let q = self.prefix[i];
            out.push(q.qdimacs_tag());
            while i < self.prefix.len() && self.prefix[i] == q {
                out.push_str(&format!(" {}", i + 1));
                i += 1;
            }
            out.push_str(" 0\n");
        }
        for clause in clauses {
            for lit in clause {
                out.push_str(&lit.signed().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        Ok(out)
    }
}

/// Evaluates Φ_p. Free-function form of [`QbfFormula::eval`].
pub fn eval_qbf(formula: &QbfFormula, p: &Prefix) -> Result<bool, QbfError> {
    formula.eval(p)
}

impl fmt::Display for QbfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.prefix.iter().enumerate() {
            write!(f, "{}x{} ", q, i + 1)?;
        }
        match &self.matrix {
            Matrix::Cnf(clauses) => {
                if clauses.is_empty() {
                    return f.write_str("⊤");
                }
                for (ci, clause) in clauses.iter().enumerate() {
                    if ci > 0 {
                        f.write_str("∧")?;
                    }
                    f.write_str("(")?;
                    if clause.is_empty() {
                        f.write_str("⊥")?;
                    }
                    for (li, lit) in clause.iter().enumerate() {
                        if li > 0 {
                            f.write_str("∨")?;
                        }
                        if !lit.is_positive() {
                            f.write_str("¬")?;
                        }
                        write!(f, "x{}", lit.var())?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            Matrix::Expr(e) => write!(f, "{e:?}"),
        }
    }
}

/// Bit string x fixing x_1..x_|x|.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prefix {
    bits: Vec<bool>,
}

impl Prefix {
    pub fn empty() -> Self {
        Prefix::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Prefix { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn child(&self, bit: bool) -> Prefix {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Prefix { bits }
    }

    /// All bit strings of length `len`, in increasing numeric order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Prefix> {
        assert!(len < 64, "refusing to enumerate 2^{len} prefixes");
        (0u64..1 << len).map(move |v| {
            Prefix::from_bits((0..len).map(|i| (v >> (len - 1 - i)) & 1 == 1).collect())
        })
    }

    /// Every prefix of length 0..=n, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Prefix> {
        (0..=n).flat_map(Prefix::all_of_len)
    }
}

impl FromStr for Prefix {
    type Err = QbfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(Prefix::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(QbfError::InvalidPrefix(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Prefix::from_bits)
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn syntax(tok: &Token<'_>, message: impl Into<String>) -> QbfError {
    QbfError::Syntax {
        line: tok.line,
        column: tok.column,
        message: message.into(),
    }
}

fn parse_int(tok: &Token<'_>) -> Result<i64, QbfError> {
    tok.text
        .parse::<i64>()
        .map_err(|_| syntax(tok, format!("expected an integer, found {:?}", tok.text)))
}

fn tokens_of(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

/// Parses QDIMACS text into a closed formula.
///
/// Quantifier blocks are flattened in declared order, which must be x1..xn.
/// Clauses may span lines; each ends at a `0`.
pub fn parse_qdimacs(text: &str) -> Result<QbfFormula, QbfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut prefix: Vec<Quantifier> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut in_clause = false;
    let mut last_pos = (1, 1);

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokens_of(line_no, line);
        let Some(first) = toks.first() else { continue };
        last_pos = (line_no, line.len() + 1);
        match first.text {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(first, "duplicate problem line"));
                }
                if toks.len() != 4 || toks[1].text != "cnf" {
                    return Err(syntax(first, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = parse_int(&toks[2])?;
                let count = parse_int(&toks[3])?;
                if vars < 0 || vars > u32::MAX as i64 / 2 {
                    return Err(syntax(&toks[2], "variable count out of range"));
                }
                if count < 0 {
                    return Err(syntax(&toks[3], "clause count out of range"));
                }
                header = Some((vars as u32, count as usize));
                seen = vec![false; vars as usize + 1];
            }
            "a" | "e" => {
                let Some((n, _)) = header else {
                    return Err(QbfError::MissingProblemLine);
                };
                if in_clause || !clauses.is_empty() {
                    return Err(syntax(first, "quantifier line after clauses"));
                }
                let q = if first.text == "a" {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let mut terminated = false;
                for tok in &toks[1..] {
                    if terminated {
                        return Err(syntax(tok, "tokens after terminating 0"));
                    }
                    let v = parse_int(tok)?;
                    if v == 0 {
                        terminated = true;
                        continue;
                    }
                    if v < 0 {
                        return Err(syntax(tok, "negative variable in quantifier block"));
                    }
                    if v > n as i64 {
                        return Err(QbfError::VariableOutOfRange {
                            var: v as u32,
                            num_vars: n,
                        });
                    }
                    let v = v as u32;
                    if seen[v as usize] {
                        return Err(QbfError::Requantified(v));
                    }
                    seen[v as usize] = true;
                    let expected = prefix.len() as u32 + 1;
                    if v != expected {
                        return Err(QbfError::PrefixOrder {
                            position: expected,
                            found: v,
                        });
                    }
                    prefix.push(q);
                }
                if !terminated {
                    return Err(syntax(first, "quantifier line not terminated by 0"));
                }
            }
            _ => {
                let Some((n, _)) = header else {
                    return Err(QbfError::MissingProblemLine);
                };
                for tok in &toks {
                    let v = parse_int(tok)?;
                    if v == 0 {
                        clauses.push(std::mem::take(&mut current));
                        in_clause = false;
                        continue;
                    }
                    if v.unsigned_abs() > n as u64 {
                        return Err(QbfError::VariableOutOfRange {
                            var: v.unsigned_abs().min(u32::MAX as u64) as u32,
                            num_vars: n,
                        });
                    }
                    in_clause = true;
                    current.push(Lit::new(v as i32));
                }
            }
        }
    }

    let Some((n, count)) = header else {
        return Err(QbfError::MissingProblemLine);
    };
    if in_clause {
        return Err(QbfError::Syntax {
            line: last_pos.0,
            column: last_pos.1,
            message: "unterminated clause at end of input".into(),
        });
    }
    if let Some(free) = (1..=n).find(|&v| !seen[v as usize]) {
        return Err(QbfError::FreeVariable(free));
    }
    if clauses.len() != count {
        return Err(QbfError::Syntax {
            line: last_pos.0,
            column: last_pos.1,
            message: format!(
                "problem line declares {count} clauses but {} were given",
                clauses.len()
            ),
        });
    }
    QbfFormula::cnf(prefix, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Quantifier::{Exists as E, Forall as A};

    fn p(s: &str) -> Prefix {
        s.parse().unwrap()
    }

    fn forall_exists_xor() -> QbfFormula {
        QbfFormula::from_ints(&[A, E], &[&[1, 2], &[-1, -2]]).unwrap()
    }

    #[test]
    fn parses_single_existential() {
        let f = parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n").unwrap();
        assert_eq!(f, QbfFormula::from_ints(&[E], &[&[1]]).unwrap());
    }

    #[test]
    fn parses_two_blocks() {
        let f = parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(f, forall_exists_xor());
    }

    #[test]
    fn rejects_unquantified_variable() {
        let err = parse_qdimacs("p cnf 2 1\na 1 0\n1 2 0\n").unwrap_err();
        assert_eq!(err, QbfError::FreeVariable(2));
    }

    #[test]
    fn parser_error_paths() {
        assert_eq!(parse_qdimacs("e 1 0\n1 0\n"), Err(QbfError::MissingProblemLine));
        assert_eq!(parse_qdimacs(""), Err(QbfError::MissingProblemLine));
        assert_eq!(
            parse_qdimacs("p cnf 1 1\ne 1 0\n2 0\n"),
            Err(QbfError::VariableOutOfRange { var: 2, num_vars: 1 })
        );
        assert_eq!(
            parse_qdimacs("p cnf 2 0\ne 1 0\na 1 2 0\n"),
            Err(QbfError::Requantified(1))
        );
        assert_eq!(
            parse_qdimacs("p cnf 2 0\ne 2 1 0\n"),
            Err(QbfError::PrefixOrder { position: 1, found: 2 })
        );
        assert_eq!(parse_qdimacs("p cnf 0 0\n"), Err(QbfError::NoVariables));
        match parse_qdimacs("p cnf 1 1\ne 1 0\n1 x 0\n") {
            Err(QbfError::Syntax { line: 3, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_qdimacs("p cnf 1 1\ne 1 0\n1"),
            Err(QbfError::Syntax { .. })
        ));
        assert!(matches!(
            parse_qdimacs("p cnf 1 2\ne 1 0\n1 0\n"),
            Err(QbfError::Syntax { .. })
        ));
    }

    #[test]
    fn grouped_blocks_flatten_and_comments_are_skipped() {
        let f = parse_qdimacs("c hello\np cnf 3 1\na 1 2 0\ne 3 0\n1 -3\n 2 0\n").unwrap();
        assert_eq!(f.prefix(), &[A, A, E]);
        assert_eq!(f.clauses().unwrap(), &[vec![Lit::pos(1), Lit::neg(3), Lit::pos(2)]]);
    }

    #[test]
    fn empty_clause_is_unsatisfiable() {
        let f = parse_qdimacs("p cnf 1 1\ne 1 0\n0\n").unwrap();
        assert!(!f.eval(&Prefix::empty()).unwrap());
    }

    #[test]
    fn evaluates_small_examples() {
        let ex = QbfFormula::from_ints(&[E], &[&[1]]).unwrap();
        assert!(ex.eval(&Prefix::empty()).unwrap());
        let fa = QbfFormula::from_ints(&[A], &[&[1]]).unwrap();
        assert!(!fa.eval(&Prefix::empty()).unwrap());
        let f = forall_exists_xor();
        assert!(f.eval(&p("")).unwrap());
        assert!(f.eval(&p("0")).unwrap());
        assert!(f.eval(&p("1")).unwrap());
        assert!(f.eval(&p("01")).unwrap());
        assert!(!f.eval(&p("00")).unwrap());
        assert!(f.eval(&p("111")).is_err());
    }

    #[test]
    fn non_cnf_matrix_via_builder() {
        // ∀x1 ∃x2 (x1 ↔ x2), written as (x1 ∧ x2) ∨ (¬x1 ∧ ¬x2)
        let iff = Expr::Or(vec![
            Expr::And(vec![Expr::var(1), Expr::var(2)]),
            Expr::And(vec![Expr::not(Expr::var(1)), Expr::not(Expr::var(2))]),
        ]);
        let f = QbfFormula::new(vec![A, E], Matrix::Expr(iff.clone())).unwrap();
        assert!(f.eval(&Prefix::empty()).unwrap());
        assert_eq!(f.to_qdimacs(), Err(QbfError::NotCnf));
        let g = QbfFormula::new(vec![E, A], Matrix::Expr(iff)).unwrap();
        assert!(!g.eval(&Prefix::empty()).unwrap());
        assert!(QbfFormula::new(vec![E], Matrix::Expr(Expr::var(2))).is_err());
    }

    #[test]
    fn prefix_text_round_trip() {
        assert_eq!(p("0110").to_string(), "0110");
        assert_eq!(Prefix::empty().to_string(), "ε");
        assert_eq!(p("ε"), Prefix::empty());
        assert!("012".parse::<Prefix>().is_err());
        let all: Vec<String> = Prefix::all_of_len(2).map(|p| p.to_string()).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        assert_eq!(Prefix::all_up_to(2).count(), 7);
    }

    fn arb_formula() -> impl Strategy<Value = QbfFormula> {
        (1u32..=5).prop_flat_map(|n| {
            let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
            (
                proptest::collection::vec(any::<bool>(), n as usize),
                proptest::collection::vec(proptest::collection::vec(lit, 0..4), 0..6),
            )
                .prop_map(|(qs, clauses)| {
                    let prefix = qs
                        .into_iter()
                        .map(|b| if b { A } else { E })
                        .collect();
                    let clauses = clauses
                        .into_iter()
                        .map(|c| c.into_iter().map(Lit::new).collect())
                        .collect();
                    QbfFormula::cnf(prefix, clauses).unwrap()
                })
        })
    }

    /// Independent evaluator: enumerate all 2^n leaves, then fold levels bottom-up.
    fn eval_by_leaves(f: &QbfFormula, p: &Prefix) -> bool {
        let n = f.num_vars() as usize;
        let fixed = p.len();
        let free = n - fixed;
        let mut level: Vec<bool> = (0u32..1 << free)
            .map(|v| {
                let mut bits = p.bits().to_vec();
                bits.extend((0..free).map(|i| (v >> (free - 1 - i)) & 1 == 1));
                f.matrix_holds(&bits)
            })
            .collect();
        for depth in (fixed..n).rev() {
            let q = f.prefix()[depth];
            level = level
                .chunks(2)
                .map(|pair| match q {
                    A => pair[0] && pair[1],
                    E => pair[0] || pair[1],
                })
                .collect();
        }
        level[0]
    }

    proptest! {
        #[test]
        fn recursion_matches_leaf_enumeration(f in arb_formula(), seed in any::<u64>()) {
            let len = (seed % (f.num_vars() as u64 + 1)) as usize;
            let prefix = Prefix::from_bits((0..len).map(|i| (seed >> (i + 8)) & 1 == 1).collect());
            prop_assert_eq!(f.eval(&prefix).unwrap(), eval_by_leaves(&f, &prefix));
        }

        #[test]
        fn qdimacs_round_trip(f in arb_formula()) {
            let text = f.to_qdimacs().unwrap();
            let back = parse_qdimacs(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_qdimacs().unwrap(), text);
        }
    }
}
