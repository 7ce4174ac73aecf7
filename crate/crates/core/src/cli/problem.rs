//! Problem files: a line-oriented `key = value` format.
//!
//! ```text
//! # comment
//! order = 3                       # cyclotomic field Q(zeta_3)
//! dim = 3
//! gen = [[z,0,0],[0,z^2,0],[0,0,1]]
//! gen = [[0,1,0],
//!        [0,0,1],
//!        [1,0,0]]                 # a literal may continue while brackets are open
//! ```
//!
//! or a built-in family:
//!
//! ```text
//! family = principal-series; a1 = 2; a2 = 3
//! ```
//!
//! Keys: `order`, `dim`, `twist_order`, `gen` (repeatable), `family`,
//! `param.<name>` (or the bare parameter name), `case`, `expected`, `seed`.
//! Statements may be separated by `;`. `dim` defaults to 3 for families and
//! to the size of the first generator otherwise; `order` and `twist_order`
//! default to `dim`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cyclofield::{CycField, CycNum};
use crate::exactla::Matrix;
use crate::families::{build_family, FamilyError, FamilyId, FamilySpec};
use crate::twistcent::{CentralizerError, GeneratorSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{source}")]
    Generator {
        index: usize,
        source: CentralizerError,
    },
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Invalid(String),
}

impl ProblemError {
    /// Syntax errors and unknown families are parse failures; the rest are
    /// validation failures.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            ProblemError::Syntax(_) | ProblemError::Family(FamilyError::UnknownFamily(_))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemBody {
    Generators(Vec<Matrix>),
    Family(FamilySpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    /// Cyclotomic field order.
    pub order: u32,
    pub dim: usize,
    pub twist_order: u32,
    pub body: ProblemBody,
    pub case: Option<String>,
    pub expected: Option<String>,
    pub seed: Option<u64>,
}

impl ProblemFile {
    pub fn field(&self) -> CycField {
        CycField::new(self.order).expect("validated order")
    }

    pub fn case_name(&self) -> String {
        match (&self.case, &self.body) {
            (Some(c), _) => c.clone(),
            (None, ProblemBody::Family(spec)) => spec.id().to_string(),
            (None, ProblemBody::Generators(_)) => "custom".to_string(),
        }
    }

    pub fn generator_set(&self) -> Result<GeneratorSet, ProblemError> {
        match &self.body {
            ProblemBody::Family(spec) => {
                let gens = build_family(spec)?;
                if gens.m() != self.twist_order {
                    return Ok(GeneratorSet::with_twist_order(
                        gens.gens().to_vec(),
                        self.twist_order,
                    )?);
                }
                Ok(gens)
            }
            ProblemBody::Generators(gens) => Ok(GeneratorSet::with_twist_order(
                gens.clone(),
                self.twist_order,
            )?),
        }
    }
}

struct Statement {
    key: String,
    value: String,
    line: usize,
    /// 1-based column of the first character of `value`.
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError {
        line,
        column,
        message: message.into(),
    }
}

fn bracket_depth(s: &str) -> i64 {
    s.chars().fold(0, |d, c| match c {
        '[' => d + 1,
        ']' => d - 1,
        _ => d,
    })
}

fn split_statements(text: &str) -> Result<Vec<Statement>, SyntaxError> {
    let mut out = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    let mut idx = 0;
    while idx < lines.len() {
        let raw = lines[idx];
        let line_no = idx + 1;
        idx += 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in body.split(';') {
            let piece_start = offset;
            offset += piece.chars().count() + 1;
            if piece.trim().is_empty() {
                continue;
            }
            let Some(eq) = piece.find('=') else {
                let col = piece_start + piece.len() - piece.trim_start().len() + 1;
                return Err(syntax(line_no, col, "expected 'key = value'"));
            };
            let key = piece[..eq].trim().to_string();
            if key.is_empty() {
                return Err(syntax(line_no, piece_start + 1, "missing key"));
            }
            let after = &piece[eq + 1..];
            let lead = after.len() - after.trim_start().len();
            let column = piece_start + piece[..eq + 1 + lead].chars().count() + 1;
            let mut value = after.trim().to_string();
            // matrix literals may continue on following lines
            while bracket_depth(&value) > 0 && idx < lines.len() {
                let more = lines[idx].split('#').next().unwrap_or("");
                value.push_str(more.trim());
                idx += 1;
            }
            out.push(Statement {
                key,
                value,
                line: line_no,
                column,
            });
        }
    }
    Ok(out)
}

fn parse_matrix(field: &CycField, st: &Statement) -> Result<Matrix, SyntaxError> {
    let chars: Vec<char> = st.value.chars().collect();
    let err = |pos: usize, msg: &str| syntax(st.line, st.column + pos, msg);
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let expect = |pos: &mut usize, c: char| -> Result<(), SyntaxError> {
        skip_ws(pos);
        if chars.get(*pos) == Some(&c) {
            *pos += 1;
            Ok(())
        } else {
            Err(err(*pos, &format!("expected '{c}'")))
        }
    };
    expect(&mut pos, '[')?;
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    loop {
        expect(&mut pos, '[')?;
        let mut row = Vec::new();
        loop {
            let start = pos;
            let mut depth = 0i32;
            while pos < chars.len() {
                match chars[pos] {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' | ']' if depth == 0 => break,
                    '[' => return Err(err(pos, "unexpected '['")),
                    _ => {}
                }
                pos += 1;
            }
            let text: String = chars[start..pos].iter().collect();
            let value = field
                .parse(&text)
                .map_err(|e| err(start + e.column - 1, &e.message))?;
            row.push(value);
            match chars.get(pos) {
                Some(',') => pos += 1,
                Some(']') => {
                    pos += 1;
                    break;
                }
                _ => return Err(err(pos, "unterminated row")),
            }
        }
        rows.push(row);
        skip_ws(&mut pos);
        match chars.get(pos) {
            Some(',') => pos += 1,
            Some(']') => {
                pos += 1;
                break;
            }
            _ => return Err(err(pos, "expected ',' or ']'")),
        }
    }
    skip_ws(&mut pos);
    if pos < chars.len() {
        return Err(err(pos, "trailing characters after matrix"));
    }
    let width = rows[0].len();
    if let Some(r) = rows.iter().position(|r| r.len() != width) {
        return Err(err(
            0,
            &format!(
                "row {} has {} entries, expected {width}",
                r + 1,
                rows[r].len()
            ),
        ));
    }
    Ok(Matrix::from_rows(field, rows).expect("entries share the field"))
}

fn parse_uint<T: std::str::FromStr>(st: &Statement) -> Result<T, SyntaxError> {
    st.value.parse().map_err(|_| {
        syntax(
            st.line,
            st.column,
            format!("'{}' expects a non-negative integer", st.key),
        )
    })
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let statements = split_statements(text)?;

    let mut order = None;
    let mut dim = None;
    let mut twist_order = None;
    let mut family = None;
    let mut case = None;
    let mut expected = None;
    let mut seed = None;
    let mut gen_statements = Vec::new();
    let mut param_statements = Vec::new();

    for st in &statements {
        match st.key.as_str() {
            "order" => order = Some(parse_uint::<u32>(st)?),
            "dim" => dim = Some(parse_uint::<usize>(st)?),
            "twist_order" => twist_order = Some(parse_uint::<u32>(st)?),
            "seed" => seed = Some(parse_uint::<u64>(st)?),
            "case" => case = Some(st.value.clone()),
            "expected" => expected = Some(st.value.clone()),
            "family" => {
                let id: FamilyId = st.value.parse().map_err(|e: FamilyError| SyntaxError {
                    line: st.line,
                    column: st.column,
                    message: e.to_string(),
                })?;
                family = Some(id);
            }
            "gen" => gen_statements.push(st),
            key if key.starts_with("param.") => {
                param_statements.push((key["param.".len()..].to_string(), st))
            }
            "a1" | "a2" | "c" | "k" => param_statements.push((st.key.clone(), st)),
            other => {
                return Err(syntax(st.line, 1, format!("unknown key '{other}'")).into());
            }
        }
    }

    match (family.is_some(), gen_statements.is_empty()) {
        (true, false) => {
            return Err(ProblemError::Invalid(
                "give either generators or a family, not both".into(),
            ))
        }
        (false, true) => {
            return Err(ProblemError::Invalid(
                "no generators and no family given".into(),
            ))
        }
        _ => {}
    }
    if family.is_none() && !param_statements.is_empty() {
        return Err(ProblemError::Invalid(
            "parameters given without a family".into(),
        ));
    }

    // the first generator's row count fixes a missing dim
    let dim = match (dim, family) {
        (Some(d), _) => d,
        (None, Some(_)) => 3,
        (None, None) => {
            let first = gen_statements[0];
            let probe_field = CycField::new(order.unwrap_or(1).max(1)).expect("nonzero");
            parse_matrix(&probe_field, first)
                .map(|m| m.nrows())
                .unwrap_or_else(|_| first.value.matches('[').count().saturating_sub(1))
        }
    };
    if dim == 0 {
        return Err(ProblemError::Invalid("dim must be at least 1".into()));
    }
    let order = order.unwrap_or(dim as u32);
    let field = CycField::new(order).map_err(|e| ProblemError::Invalid(e.to_string()))?;
    let twist_order = twist_order.unwrap_or(dim as u32);
    if let Err(e) = field.root_of_unity(twist_order) {
        return Err(ProblemError::Invalid(e.to_string()));
    }

    let body = if let Some(id) = family {
        if dim != 3 {
            return Err(ProblemError::Invalid(format!(
                "family {id} is defined for dim = 3"
            )));
        }
        let mut params = BTreeMap::new();
        for (name, st) in param_statements {
            let value = field.parse(&st.value).map_err(|e| SyntaxError {
                line: st.line,
                column: st.column + e.column - 1,
                message: e.message,
            })?;
            if params.insert(name.clone(), value).is_some() {
                return Err(ProblemError::Invalid(format!(
                    "parameter '{name}' given twice"
                )));
            }
        }
        let mut spec = FamilySpec::new(id, &field, params)?;
        spec.expected = expected.clone();
        ProblemBody::Family(spec)
    } else {
        let mut gens = Vec::new();
        for (index, st) in gen_statements.into_iter().enumerate() {
            let m = parse_matrix(&field, st)?;
            if m.nrows() != dim || m.ncols() != dim {
                return Err(ProblemError::Generator {
                    index,
                    source: CentralizerError::Shape {
                        index,
                        rows: m.nrows(),
                        cols: m.ncols(),
                        n: dim,
                    },
                });
            }
            if m.det().is_zero() {
                return Err(ProblemError::Generator {
                    index,
                    source: CentralizerError::SingularGenerator { index },
                });
            }
            gens.push(m);
        }
        ProblemBody::Generators(gens)
    };

    let problem = ProblemFile {
        order,
        dim,
        twist_order,
        body,
        case,
        expected,
        seed,
    };
    problem.generator_set()?;
    Ok(problem)
}

/// Emits a problem file that parses back to the same value.
impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order = {}", self.order)?;
        writeln!(f, "dim = {}", self.dim)?;
        writeln!(f, "twist_order = {}", self.twist_order)?;
        if let Some(case) = &self.case {
            writeln!(f, "case = {case}")?;
        }
        match &self.body {
            ProblemBody::Family(spec) => {
                writeln!(f, "family = {}", spec.id())?;
                for (name, value) in spec.params() {
                    writeln!(f, "param.{name} = {value}")?;
                }
            }
            ProblemBody::Generators(gens) => {
                for g in gens {
                    writeln!(f, "gen = {g}")?;
                }
            }
        }
        if let Some(expected) = &self.expected {
            writeln!(f, "expected = {expected}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "seed = {seed}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_file() {
        let p = parse_problem("order = 3\ndim = 3\ngen = [[z,0,0],[0,z^2,0],[0,0,1]]\n").unwrap();
        let gens = p.generator_set().unwrap();
        let f = p.field();
        let z = f.gen();
        assert_eq!(
            gens.gens(),
            &[Matrix::diag(&f, &[z.clone(), z.pow(2), f.one()]).unwrap()]
        );
        assert_eq!(gens.m(), 3);
    }

    #[test]
    fn family_one_liner() {
        let p = parse_problem("family = principal-series; a1 = 2; a2 = 3").unwrap();
        let f = p.field();
        assert_eq!(p.order, 3);
        let gens = p.generator_set().unwrap();
        assert_eq!(
            gens.gens(),
            &[Matrix::diag(&f, &[f.from_int(2), f.from_int(3), f.one()]).unwrap()]
        );
    }

    #[test]
    fn singular_generator_rejected() {
        let err = parse_problem("dim = 2\ngen = [[1,1],[2,2]]").unwrap_err();
        assert!(matches!(
            err,
            ProblemError::Generator {
                source: CentralizerError::SingularGenerator { .. },
                ..
            }
        ));
        assert!(!err.is_parse_error());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_problem("order = 3\ngen = [[1,0],[0,q]]").unwrap_err();
        let ProblemError::Syntax(e) = err else {
            panic!("expected syntax error, got {err:?}")
        };
        assert_eq!((e.line, e.column), (2, 17));

        let err = parse_problem("order = 3\n  nonsense\n").unwrap_err();
        let ProblemError::Syntax(e) = err else {
            panic!()
        };
        assert_eq!((e.line, e.column), (2, 3));

        let err = parse_problem("family = supercuspidal").unwrap_err();
        assert!(err.is_parse_error());
    }

    #[test]
    fn multiline_literals_and_comments() {
        let text = "# Heisenberg pair\norder = 3\ngen = [[1,0,0],\n       [0,z,0],   # clock\n       [0,0,z^2]]\ngen = [[0,1,0],[0,0,1],[1,0,0]]\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.generator_set().unwrap().len(), 2);
    }

    #[test]
    fn exclusive_bodies() {
        assert!(parse_problem("family = steinberg3\ngen = [[1]]").is_err());
        assert!(parse_problem("order = 3").is_err());
        assert!(parse_problem("gen = [[1,0],[0,2]]\nc = 5").is_err());
    }

    #[test]
    fn emit_then_parse_is_identity() {
        for text in [
            "order = 3\ngen = [[z,0,0],[0,z^2,0],[0,0,1]]\nseed = 4\nexpected = Z/3Z",
            "family = dihedral-chi; param.c = 5 + z; case = dihedral",
            "order = 4\ndim = 2\ngen = [[0,1],[1,0]]\ngen = [[z,0],[0,-z]]",
        ] {
            let p = parse_problem(text).unwrap();
            let again = parse_problem(&p.to_string()).unwrap();
            assert_eq!(p, again, "round trip of {text:?}");
        }
    }
}
