//! Homology tables as markdown, CSV and plain text: one row per `b`
//! (descending, nonempty rows only), one column per `a` (ascending, step 2).

use crate::homology::HomologyTable;
use crate::khovanov::Bigrade;

struct Grid {
    columns: Vec<i64>,
    rows: Vec<(i64, Vec<String>)>,
}

fn grid(t: &HomologyTable) -> Grid {
    let a: Vec<i64> = t.bigrades().map(|g| g.a).collect();
    let columns: Vec<i64> = match (a.iter().min(), a.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo..=hi).step_by(2).collect(),
        _ => Vec::new(),
    };
    let mut bs: Vec<i64> = t.bigrades().map(|g| g.b).collect();
    bs.sort_unstable_by(|x, y| y.cmp(x));
    bs.dedup();
    let rows = bs
        .into_iter()
        .map(|b| {
            let cells = columns
                .iter()
                .map(|&a| {
                    let h = t.get(Bigrade::new(a, b));
                    if h.is_trivial() {
                        String::new()
                    } else {
                        h.to_string()
                    }
                })
                .collect();
            (b, cells)
        })
        .collect();
    Grid { columns, rows }
}

pub fn to_markdown(t: &HomologyTable) -> String {
    let g = grid(t);
    let mut out = String::from("| b \\\\ a |");
    for a in &g.columns {
        out.push_str(&format!(" {a} |"));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(g.columns.len()));
    out.push('\n');
    for (b, cells) in &g.rows {
        out.push_str(&format!("| {b} |"));
        for c in cells {
            out.push_str(&format!(" {c} |"));
        }
        out.push('\n');
    }
    out
}

pub fn to_csv(t: &HomologyTable) -> String {
    let g = grid(t);
    let mut lines = vec![std::iter::once("b \\ a".to_string())
        .chain(g.columns.iter().map(i64::to_string))
        .collect::<Vec<_>>()
        .join(",")];
    for (b, cells) in &g.rows {
        lines.push(std::iter::once(b.to_string()).chain(cells.iter().cloned()).collect::<Vec<_>>().join(","));
    }
    lines.join("\n") + "\n"
}

/// Right-aligned columns; empty cells print as `.`.
pub fn to_text(t: &HomologyTable) -> String {
    let g = grid(t);
    let mut table: Vec<Vec<String>> =
        vec![std::iter::once("b \\ a".to_string()).chain(g.columns.iter().map(i64::to_string)).collect()];
    for (b, cells) in &g.rows {
        table.push(
            std::iter::once(b.to_string())
                .chain(cells.iter().map(|c| if c.is_empty() { ".".to_string() } else { c.clone() }))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|j| table.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbelianGroup;

    fn hopf() -> HomologyTable {
        [(2, 6), (2, 2), (-2, -2), (-2, -6)]
            .into_iter()
            .map(|g| (Bigrade::from(g), AbelianGroup::free(1)))
            .collect()
    }

    #[test]
    fn markdown_layout() {
        let expected = "| b \\\\ a | -2 | 0 | 2 |\n|---|---|---|---|\n| 6 |  |  | Z |\n| 2 |  |  | Z |\n\
                        | -2 | Z |  |  |\n| -6 | Z |  |  |\n";
        assert_eq!(to_markdown(&hopf()), expected);
    }

    #[test]
    fn csv_layout() {
        let mut t = hopf();
        t.insert(Bigrade::new(0, 2), AbelianGroup::new(0, [2]));
        assert_eq!(to_csv(&t), "b \\ a,-2,0,2\n6,,,Z\n2,,Z_2,Z\n-2,Z,,\n-6,Z,,\n");
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            to_text(&hopf()),
            "b \\ a  -2  0  2\n    6   .  .  Z\n    2   .  .  Z\n   -2   Z  .  .\n   -6   Z  .  .\n"
        );
    }

    #[test]
    fn empty_table() {
        let t = HomologyTable::new();
        assert_eq!(to_csv(&t), "b \\ a\n");
        assert_eq!(to_markdown(&t), "| b \\\\ a |\n|---|\n");
        assert_eq!(to_text(&t), "b \\ a\n");
    }
}
