//! Plain-text rendering: aligned tables and number formatting.

/// Six significant digits, plain notation for moderate magnitudes and
/// scientific otherwise. Trailing zeros after the point are trimmed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    if (1e-4..1e15).contains(&mag) {
        let digits = mag.log10().floor() as i32;
        let decimals = (5 - digits).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{x:.5e}")
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Left-aligned table with a single space between padded columns and a
/// leading space on every line, the layout of the R summary printers.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    lead: bool,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            lead: true,
        }
    }

    /// Same layout without the leading space, for blocks with a row-name
    /// column.
    pub fn bare(header: &[&str]) -> Self {
        Table { lead: false, ..Table::new(header) }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let ncol = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for j in 0..ncol {
                widths[j] = widths[j].max(row[j].len());
            }
        }
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(self.rows.iter()) {
            if self.lead {
                out.push(' ');
            }
            for j in 0..ncol {
                if j > 0 {
                    out.push(' ');
                }
                if j + 1 == ncol {
                    out.push_str(&line[j]);
                } else {
                    out.push_str(&format!("{:<w$}", line[j], w = widths[j]));
                }
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}

pub fn divider() -> String {
    "_ ".repeat(30).trim_end().to_string()
}

pub fn signif_code(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else if p < 0.1 {
        "."
    } else {
        ""
    }
}

pub const SIGNIF_LEGEND: &str =
    "Signif. codes:  0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1";

/// Coefficient table in the style of an R regression summary: estimate,
/// standard error, t value, two-sided normal p-value, significance stars.
pub fn coef_table(names: &[String], coef: &[f64], se: &[f64]) -> String {
    let mut widths = vec![
        names.iter().map(|n| n.len()).max().unwrap_or(0),
        "Estimate".len(),
        "Std.Error".len(),
        "t value".len(),
        "Pr(>|t|)".len(),
    ];
    let mut rows: Vec<([String; 5], &str)> = Vec::new();
    for i in 0..coef.len() {
        let t = if se[i] > 0.0 { coef[i] / se[i] } else { f64::NAN };
        let p = two_sided_p(t);
        let row = [
            names[i].clone(),
            sig6(coef[i]),
            sig6(se[i]),
            format!("{t:.3}"),
            sig6(p),
        ];
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
        rows.push((row, signif_code(p)));
    }
    let mut out = format!(
        "{:<w0$}  {:>w1$}  {:>w2$} {:>w3$} {:>w4$}\n",
        "",
        "Estimate",
        "Std.Error",
        "t value",
        "Pr(>|t|)",
        w0 = widths[0],
        w1 = widths[1],
        w2 = widths[2],
        w3 = widths[3],
        w4 = widths[4],
    );
    for (row, stars) in &rows {
        out.push_str(&format!(
            "{:<w0$}  {:>w1$}  {:>w2$} {:>w3$} {:>w4$} {}\n",
            row[0],
            row[1],
            row[2],
            row[3],
            row[4],
            stars,
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4],
        ));
    }
    out.push_str("---\n");
    out.push_str(SIGNIF_LEGEND);
    out.push('\n');
    out
}

/// 2(1 - Phi(|t|)) through the complementary error function.
pub fn two_sided_p(t: f64) -> f64 {
    statrs::function::erf::erfc(t.abs() / std::f64::consts::SQRT_2)
}
