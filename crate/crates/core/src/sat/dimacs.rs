use std::fmt::Write as _;

use crate::error::{Result, SchurError};
use crate::sat::cnf::CnfFormula;

/// `p cnf V C`, then one clause per line terminated by ` 0`.
pub fn to_dimacs(cnf: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 + cnf.num_clauses() * 12);
    writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.num_clauses()).unwrap();
    for clause in cnf.clauses() {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Comment lines start with `c`; clauses may span lines
/// and end at a `0` token. Errors carry 1-based line numbers.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, message: String| SchurError::Parse { line, message };
    let mut header: Option<(CnfFormula, usize, usize)> = None;
    let mut pending: Vec<i32> = Vec::new();
    let mut pending_line = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate problem line".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let (vars, clauses) = match fields.as_slice() {
                ["p", "cnf", v, c] => (v.parse::<usize>(), c.parse::<usize>()),
                _ => return Err(err(line_no, format!("malformed header {line:?}"))),
            };
            let (Ok(vars), Ok(clauses)) = (vars, clauses) else {
                return Err(err(line_no, format!("malformed header {line:?}")));
            };
            let cnf = CnfFormula::new(vars).map_err(|e| err(line_no, e.to_string()))?;
            header = Some((cnf, clauses, line_no));
            continue;
        }
        let Some((cnf, _, _)) = header.as_mut() else {
            return Err(err(line_no, "clause before the \"p cnf\" header".into()));
        };
        for token in line.split_whitespace() {
            if token == "%" {
                // Some benchmark files end with "%\n0".
                break;
            }
            let lit: i32 = token
                .parse()
                .map_err(|_| err(line_no, format!("invalid literal {token:?}")))?;
            if lit.unsigned_abs() as usize > cnf.num_vars() {
                return Err(err(
                    line_no,
                    format!("variable {} exceeds the declared {}", lit.abs(), cnf.num_vars()),
                ));
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            if lit == 0 {
                cnf.add_clause(&pending).map_err(|e| err(pending_line, e.to_string()))?;
                pending.clear();
            } else {
                pending.push(lit);
            }
        }
    }

    let Some((cnf, declared, header_line)) = header else {
        return Err(err(last_line.max(1), "missing \"p cnf\" header".into()));
    };
    if !pending.is_empty() {
        return Err(err(pending_line, "last clause is not terminated by 0".into()));
    }
    if cnf.num_clauses() != declared {
        return Err(err(
            header_line,
            format!("header declares {declared} clauses but {} were read", cnf.num_clauses()),
        ));
    }
    Ok(cnf)
}
