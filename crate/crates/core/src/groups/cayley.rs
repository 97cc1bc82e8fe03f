//! Cayley table files.
//!
//! Line 1 holds the order `n`; lines 2..=n+1 hold `n` space-separated 0-based
//! indices each, row `i` column `j` being the index of `i·j`. A single trailing
//! newline is allowed; anything else out of shape is a format error.

use std::path::Path;

use super::{FiniteGroup, GroupError};

pub fn parse_cayley(text: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let n: usize = parse_index(header, 1)?;
    if n == 0 {
        return Err(GroupError::Format {
            line: 1,
            message: "order must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (offset, line) in lines.enumerate() {
        let line_no = offset + 2;
        if rows.len() == n {
            return Err(GroupError::Format {
                line: line_no,
                message: "more rows than the declared order".into(),
            });
        }
        let row = line
            .split(' ')
            .map(|tok| parse_index(tok, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(GroupError::Format {
                line: line_no,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(GroupError::Format {
            line: rows.len() + 2,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

fn parse_index(token: &str, line: usize) -> Result<usize, GroupError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(GroupError::Format {
            line,
            message: format!("not a natural number: {token:?}"),
        });
    }
    token.parse().map_err(|_| GroupError::Format {
        line,
        message: format!("index out of range: {token}"),
    })
}

pub fn render_cayley(group: &FiniteGroup) -> String {
    let mut out = format!("{}\n", group.order());
    for a in 0..group.order() {
        let row: Vec<String> = group.row(a).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_cayley(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let rows = parse_cayley(&text)?;
    FiniteGroup::from_table_named(&format!("cayley:{}", path.display()), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let text = render_cayley(&g);
        let rows = parse_cayley(&text).unwrap();
        let back = FiniteGroup::from_table(&rows).unwrap();
        assert_eq!(render_cayley(&back), text);
    }

    #[test]
    fn strictness() {
        for bad in [
            "",
            "2\n0 1\n1 0\n\n",
            "2\n0  1\n1 0\n",
            "2\n0 1\n1 0 \n",
            "2\n0 1\n",
            "2\n0 1\n1 0\n0 1\n",
            " 2\n0 1\n1 0\n",
            "2\n0,1\n1 0\n",
            "0\n",
        ] {
            assert!(
                matches!(parse_cayley(bad), Err(GroupError::Format { .. })),
                "accepted {bad:?}"
            );
        }
        assert!(parse_cayley("2\n0 1\n1 0").is_ok());
        assert!(parse_cayley("1\n0\n").is_ok());
    }
}
