//! Text matrix formats.
//!
//! One row per line, entries separated by a single space, LF line endings.
//! Link matrices hold `0`/`1`; probability matrices hold weights with exactly
//! two decimals. The diagonal is always written as zero and ignored when
//! reading. Import also accepts commas as separators.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// 0/1 adjacency matrix. Every edge must have weight exactly 1.
pub fn export_link_matrix(g: &Graph) -> Result<String> {
    if let Some((u, v, w)) = g.edges().find(|&(_, _, w)| w != 1.0) {
        return Err(Error::Precondition(format!(
            "link matrix needs unit weights, edge {{{u}, {v}}} has weight {w}"
        )));
    }
    Ok(render(g, |w| if w > 0.0 { "1".into() } else { "0".into() }))
}

/// Weight matrix with two decimals; absent edges are `0.00`.
///
/// Weights below 0.005 print as `0.00` and therefore read back as absent,
/// which is a weight change of less than 0.005.
pub fn export_probability_matrix(g: &Graph) -> String {
    render(g, |w| format!("{w:.2}"))
}

fn render(g: &Graph, cell: impl Fn(f64) -> String) -> String {
    let n = g.n();
    let mut out = String::with_capacity(n * n * 5);
    let mut row = vec![0.0; n];
    for i in 0..n {
        row.iter_mut().for_each(|x| *x = 0.0);
        for &(j, w) in g.neighbors(i) {
            row[j] = w;
        }
        for (j, &w) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", cell(w));
        }
        out.push('\n');
    }
    out
}

/// Parses a square symmetric matrix with entries in `[0, 1]`. Every strictly
/// positive off-diagonal entry becomes an edge of that weight.
///
/// Rows and columns in errors are 1-based.
pub fn import_matrix(text: &str) -> Result<Graph> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row_no = rows.len() + 1;
        let mut row = Vec::new();
        for (col, tok) in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let value: f64 = tok.parse().map_err(|_| Error::Format {
                row: row_no,
                column: col + 1,
                message: format!("'{tok}' on line {} is not a number", line_no + 1),
            })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Format {
                    row: row_no,
                    column: col + 1,
                    message: format!("entry {value} is outside [0, 1]"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }

    let n = rows.len();
    if n == 0 {
        return Err(Error::Format {
            row: 1,
            column: 1,
            message: "matrix is empty".into(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Format {
                row: i + 1,
                column: row.len().min(n) + 1,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
    }

    let mut b = GraphBuilder::new(n);
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in i + 1..n {
            let (a, c) = (rows[i][j], rows[j][i]);
            if (a - c).abs() > SYMMETRY_TOLERANCE {
                return Err(Error::Format {
                    row: i + 1,
                    column: j + 1,
                    message: format!("asymmetric: ({}, {}) = {a} but ({}, {}) = {c}", i + 1, j + 1, j + 1, i + 1),
                });
            }
            if a > 0.0 {
                b.add_edge(i, j, a)?;
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_matrix_small() {
        let g = Graph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        assert_eq!(export_link_matrix(&g).unwrap(), "0 1\n1 0\n");
        assert_eq!(export_link_matrix(&Graph::empty(2)).unwrap(), "0 0\n0 0\n");
    }

    #[test]
    fn link_matrix_rejects_fractional() {
        let g = Graph::from_edges(2, [(0, 1, 0.5)]).unwrap();
        assert!(matches!(export_link_matrix(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn probability_matrix_entry() {
        let g = Graph::from_edges(3, [(0, 1, 0.56)]).unwrap();
        let text = export_probability_matrix(&g);
        assert_eq!(text, "0.00 0.56 0.00\n0.56 0.00 0.00\n0.00 0.00 0.00\n");
        let back = import_matrix(&text).unwrap();
        assert_eq!(back.weight(0, 1), 0.56);
        assert_eq!(back.weight(1, 0), 0.56);
        assert_eq!(
            export_probability_matrix(&Graph::empty(2)),
            "0.00 0.00\n0.00 0.00\n"
        );
    }

    #[test]
    fn diagonal_is_ignored() {
        let g = import_matrix("1 0 0\n0 1 0\n0 0 1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn table_one_pattern() {
        // Top-left 5x5 block of a reference link matrix; diagonal of 1s.
        let text = "1 0 1 0 0\n0 1 0 1 0\n1 0 1 1 1\n0 1 1 1 0\n0 0 1 0 1\n";
        let g = import_matrix(text).unwrap();
        let expected = [(0, 2), (1, 3), (2, 3), (2, 4)];
        assert_eq!(g.edge_count(), expected.len());
        for (u, v) in expected {
            assert_eq!(g.weight(u, v), 1.0);
        }
        assert_eq!(
            export_link_matrix(&g).unwrap(),
            "0 0 1 0 0\n0 0 0 1 0\n1 0 0 1 1\n0 1 1 0 0\n0 0 1 0 0\n"
        );
    }

    #[test]
    fn commas_accepted() {
        let g = import_matrix("0,0.5\n0.5,0\n").unwrap();
        assert_eq!(g.weight(0, 1), 0.5);
    }

    #[test]
    fn format_errors_carry_location() {
        match import_matrix("0 1\n0 0\n") {
            Err(Error::Format { row: 1, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match import_matrix("0 1 0\n1 0\n0 0 0\n") {
            Err(Error::Format { row: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match import_matrix("0 1.2\n1.2 0\n") {
            Err(Error::Format { row: 1, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match import_matrix("0 x\nx 0\n") {
            Err(Error::Format { row: 1, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(import_matrix("\n\n").is_err());
    }
}
