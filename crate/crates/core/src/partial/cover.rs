//! Covers of the stars by lines, via maximum matching in the bipartite
//! graph with an edge `(i, j)` for every star.

use super::PartialMatrix;

/// A maximum star matching and a minimum line cover of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCover {
    pub size: usize,
    /// Matched `(row, column)` star positions, sorted by row.
    pub matching: Vec<(usize, usize)>,
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

fn try_augment(
    row: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    col_match: &mut [Option<usize>],
) -> bool {
    for &c in &adj[row] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if col_match[c].is_none_or(|r| try_augment(r, adj, seen, col_match)) {
            col_match[c] = Some(row);
            return true;
        }
    }
    false
}

impl PartialMatrix {
    /// Minimum number of lines covering all stars; equals the size of a
    /// maximum star matching.
    pub fn line_cover_number(&self) -> usize {
        self.line_cover().size
    }

    pub fn line_cover(&self) -> LineCover {
        let (m, n) = (self.m(), self.n());
        let adj: Vec<Vec<usize>> = self.rows().iter().map(|r| r.star_positions()).collect();
        let mut col_match: Vec<Option<usize>> = vec![None; n];
        for r in 0..m {
            let mut seen = vec![false; n];
            try_augment(r, &adj, &mut seen, &mut col_match);
        }
        let mut row_match: Vec<Option<usize>> = vec![None; m];
        for (c, r) in col_match.iter().enumerate() {
            if let Some(r) = *r {
                row_match[r] = Some(c);
            }
        }

        // König: alternate from unmatched rows along star edges out of rows
        // and matching edges out of columns. The cover is the unreached rows
        // together with the reached columns.
        let mut row_reached = vec![false; m];
        let mut col_reached = vec![false; n];
        let mut stack: Vec<usize> = (0..m).filter(|&r| row_match[r].is_none()).collect();
        for &r in &stack {
            row_reached[r] = true;
        }
        while let Some(r) = stack.pop() {
            for &c in &adj[r] {
                if !col_reached[c] {
                    col_reached[c] = true;
                    if let Some(next) = col_match[c] {
                        if !row_reached[next] {
                            row_reached[next] = true;
                            stack.push(next);
                        }
                    }
                }
            }
        }
        let rows: Vec<usize> = (0..m)
            .filter(|&r| !row_reached[r] && !adj[r].is_empty())
            .collect();
        let columns: Vec<usize> = (0..n).filter(|&c| col_reached[c]).collect();
        let matching: Vec<(usize, usize)> = row_match
            .iter()
            .enumerate()
            .filter_map(|(r, c)| c.map(|c| (r, c)))
            .collect();
        debug_assert_eq!(rows.len() + columns.len(), matching.len());
        LineCover {
            size: matching.len(),
            matching,
            rows,
            columns,
        }
    }
}
