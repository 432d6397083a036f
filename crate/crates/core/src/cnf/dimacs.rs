use std::fmt::Write as _;

use super::{CnfError, CnfFormula, Literal};

/// Parses DIMACS CNF text into a uniform-width formula.
///
/// Clauses may span lines; each is terminated by `0`. Comment lines (`c ...`)
/// are kept on the formula. A `%` line ends the clause section.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            comments.push(line[1..].trim_start().to_string());
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::MalformedHeader { line: line_no, reason: "duplicate header".into() });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((num_variables, _)) = header else {
            return Err(CnfError::MalformedHeader { line: line_no, reason: "clause before header".into() });
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| CnfError::BadToken { line: line_no, token: token.to_string() })?;
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let lit = Literal::from_dimacs(value)?;
            if lit.variable() > num_variables {
                return Err(CnfError::VariableOutOfRange {
                    clause: clauses.len() + 1,
                    variable: lit.variable(),
                    num_variables,
                });
            }
            current.push(lit);
        }
    }

    let Some((num_variables, num_clauses)) = header else {
        return Err(CnfError::MalformedHeader { line: 0, reason: "missing \"p cnf\" header".into() });
    };
    if !current.is_empty() {
        // Some writers omit the final terminator.
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(CnfError::ClauseCountMismatch { declared: num_clauses, found: clauses.len() });
    }
    let k = clauses.first().map_or(0, Vec::len);
    Ok(CnfFormula::new(num_variables, k, clauses)?.with_comments(comments))
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), CnfError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = |reason: &str| CnfError::MalformedHeader { line: line_no, reason: reason.to_string() };
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(bad("expected \"p cnf <variables> <clauses>\""));
    }
    let n = fields[2].parse().map_err(|_| bad("variable count is not a number"))?;
    let m = fields[3].parse().map_err(|_| bad("clause count is not a number"))?;
    Ok((n, m))
}

/// Writes `p cnf n m` followed by one ` 0`-terminated clause per line.
/// Comments are not written.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", formula.num_variables(), formula.num_clauses()).unwrap();
    for clause in formula.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0").unwrap();
        assert_eq!((f.num_variables(), f.num_clauses(), f.k()), (2, 1, 2));
        assert_eq!(f.clauses()[0], vec![Literal::positive(1), Literal::positive(2)]);
    }

    #[test]
    fn parses_two_clauses_with_negation() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0").unwrap();
        assert_eq!((f.num_variables(), f.num_clauses(), f.k()), (2, 2, 2));
        assert_eq!(f.clauses()[1], vec![Literal::negative(1), Literal::positive(2)]);
    }

    #[test]
    fn rejects_repeated_variable() {
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 1 0"), Err(CnfError::RepeatedVariable { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(parse_dimacs("p cnf x 1\n1 0"), Err(CnfError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("1 2 0"), Err(CnfError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 3 0"), Err(CnfError::VariableOutOfRange { .. })));
        assert!(matches!(parse_dimacs("p cnf 3 2\n1 2 0\n1 2 3 0"), Err(CnfError::NonUniformWidth { .. })));
        assert!(matches!(parse_dimacs("p cnf 2 2\n1 2 0"), Err(CnfError::ClauseCountMismatch { .. })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 two 0"), Err(CnfError::BadToken { .. })));
    }

    #[test]
    fn keeps_comments_and_multiline_clauses() {
        let f = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 c\n-1 2 3 0\n").unwrap_err();
        // a "c" inside a clause line is a token, not a comment
        assert!(matches!(f, CnfError::BadToken { .. }));
        let f = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0\nc mid\n-1 2 3 0\n").unwrap();
        assert_eq!(f.comments(), ["hello", "mid"]);
        assert_eq!(f.k(), 3);
        assert!(write_dimacs(&f).lines().all(|l| !l.starts_with('c')));
    }

    #[test]
    fn writer_format() {
        let f = CnfFormula::from_signed(2, &[&[1, -2], &[-1, 2]]).unwrap();
        assert_eq!(write_dimacs(&f), "p cnf 2 2\n1 -2 0\n-1 2 0\n");
    }
}
