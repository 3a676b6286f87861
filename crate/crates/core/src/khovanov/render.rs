//! Table emitters.
//!
//! Text: header `j\i` then every `i` from the lowest to the highest, one row
//! per `j` from the highest down in steps of 2. A cell lists `A` for `Z^A`
//! (or the dimension over a field) and `A_b` for `Z_b^A`, comma separated.
//! Columns are right aligned and separated by two spaces; trailing blanks are
//! trimmed.
//!
//! CSV: `i,j,free,torsion` with one line per nonzero group in `(i, j)`
//! order; torsion is `order:count` pairs joined by `;`.

use serde::Serialize;

use super::KhTable;

fn cell(t: &KhTable, i: i32, j: i32) -> String {
    let Some(g) = t.entries.get(&(i, j)) else { return String::new() };
    let mut parts = Vec::new();
    if g.free_rank > 0 {
        parts.push(g.free_rank.to_string());
    }
    parts.extend(g.torsion.iter().map(|(q, m)| format!("{m}_{q}")));
    parts.join(",")
}

pub fn render_text(t: &KhTable) -> String {
    let corner = "j\\i".to_string();
    if t.entries.is_empty() {
        return corner + "\n";
    }
    let i_lo = t.entries.keys().map(|k| k.0).min().unwrap();
    let i_hi = t.entries.keys().map(|k| k.0).max().unwrap();
    let j_lo = t.entries.keys().map(|k| k.1).min().unwrap();
    let j_hi = t.entries.keys().map(|k| k.1).max().unwrap();

    let mut grid: Vec<Vec<String>> = vec![std::iter::once(corner).chain((i_lo..=i_hi).map(|i| i.to_string())).collect()];
    let mut j = j_hi;
    while j >= j_lo {
        grid.push(std::iter::once(j.to_string()).chain((i_lo..=i_hi).map(|i| cell(t, i, j))).collect());
        j -= 2;
    }
    let widths: Vec<usize> = (0..grid[0].len()).map(|c| grid.iter().map(|r| r[c].len()).max().unwrap()).collect();
    let mut out = String::new();
    for row in &grid {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_csv(t: &KhTable) -> String {
    let mut out = String::from("i,j,free,torsion\n");
    for (&(i, j), g) in &t.entries {
        let tor: Vec<String> = g.torsion.iter().map(|(q, m)| format!("{q}:{m}")).collect();
        out.push_str(&format!("{i},{j},{},{}\n", g.free_rank, tor.join(";")));
    }
    out
}

#[derive(Serialize)]
struct JsonTable<'a> {
    name: Option<&'a str>,
    ring: super::Coefficients,
    crossings: usize,
    writhe: i32,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize)]
struct JsonEntry {
    i: i32,
    j: i32,
    free: usize,
    torsion: Vec<JsonTorsion>,
}

#[derive(Serialize)]
struct JsonTorsion {
    order: u64,
    count: usize,
}

/// Pretty-printed JSON object with `name`, `ring`, `crossings`, `writhe` and
/// `entries` (`i`, `j`, `free`, `torsion: [{order, count}]`).
pub fn render_json(t: &KhTable) -> String {
    let table = JsonTable {
        name: t.name.as_deref(),
        ring: t.ring,
        crossings: t.crossings,
        writhe: t.writhe,
        entries: t
            .entries
            .iter()
            .map(|(&(i, j), g)| JsonEntry {
                i,
                j,
                free: g.free_rank,
                torsion: g.torsion.iter().map(|(&order, &count)| JsonTorsion { order, count }).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&table).expect("serialisable") + "\n"
}
