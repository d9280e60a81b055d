use std::fmt::Write;

pub(crate) const MISSING: &str = "—";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Align {
    Left,
    Right,
}

/// A plain-text table with a CSV twin sharing the same rows. Cells holding
/// [`MISSING`] become empty CSV fields.
pub(crate) struct Table {
    columns: Vec<(&'static str, &'static str, Align)>,
    rows: Vec<Vec<String>>,
}

impl Table {
    /// `columns` is (text header, csv header, alignment).
    pub(crate) fn new(columns: Vec<(&'static str, &'static str, Align)>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub(crate) fn text(&self) -> String {
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, (h, _, _))| {
                self.rows.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let mut l = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    l.push_str("  ");
                }
                let pad = widths[i] - cell.chars().count();
                match self.columns[i].2 {
                    Align::Left => {
                        l.push_str(cell);
                        l.extend(std::iter::repeat_n(' ', pad));
                    }
                    Align::Right => {
                        l.extend(std::iter::repeat_n(' ', pad));
                        l.push_str(cell);
                    }
                }
            }
            out.push_str(l.trim_end());
            out.push('\n');
        };
        line(self.columns.iter().map(|c| c.0).collect(), &mut out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(rule.iter().map(String::as_str).collect(), &mut out);
        for row in &self.rows {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }

    pub(crate) fn csv(&self) -> String {
        self.csv_with_prefix(None)
    }

    /// CSV with an extra leading column, used to merge several sections.
    pub(crate) fn csv_with_prefix(&self, prefix: Option<(&str, &str)>) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = prefix.iter().map(|p| p.0).collect();
        header.extend(self.columns.iter().map(|c| c.1));
        w.write_record(&header).expect("in-memory csv write");
        self.write_rows(&mut w, prefix.map(|p| p.1));
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
    }

    /// Appends this table's rows, without a header, to `w`.
    pub(crate) fn write_rows(&self, w: &mut csv::Writer<Vec<u8>>, prefix: Option<&str>) {
        for row in &self.rows {
            let mut rec: Vec<&str> = prefix.into_iter().collect();
            rec.extend(row.iter().map(|c| if c == MISSING { "" } else { c.as_str() }));
            w.write_record(&rec).expect("in-memory csv write");
        }
    }
}

/// Fixed decimals.
pub(crate) fn fixed(x: f64, places: usize) -> String {
    let s = format!("{x:.places$}");
    // avoid "-0.00"
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// At most `places` decimals with trailing zeros trimmed, keeping one.
pub(crate) fn trimmed(x: f64, places: usize) -> String {
    let mut s = fixed(x, places);
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    s
}

pub(crate) fn section(title: &str, body: &str, notes: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    out.push('\n');
    out.push_str(body);
    if !notes.is_empty() {
        out.push('\n');
        for n in notes {
            let _ = writeln!(out, "{n}");
        }
    }
    out
}
