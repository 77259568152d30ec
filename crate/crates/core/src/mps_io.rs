//! MPS reading and writing, and a small presolve.
//!
//! Data lines are split on whitespace first. Lines whose field count does
//! not fit the section are re-read with the fixed-format column positions,
//! which allows names containing spaces.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Bounds, Constraint, GeneralLp, RowKind, Sense, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    Endata,
}

impl Section {
    fn parse(word: &str) -> Option<Section> {
        Some(match word {
            "NAME" => Section::Name,
            "OBJSENSE" => Section::ObjSense,
            "ROWS" => Section::Rows,
            "COLUMNS" => Section::Columns,
            "RHS" => Section::Rhs,
            "RANGES" => Section::Ranges,
            "BOUNDS" => Section::Bounds,
            "ENDATA" => Section::Endata,
            _ => return None,
        })
    }
}

/// A parsed file: the model plus where each section started and ended
/// (1-based line numbers) and any warnings.
#[derive(Debug, Clone)]
pub struct MpsDocument {
    pub lp: GeneralLp,
    pub sections: Vec<(Section, usize, usize)>,
    pub warnings: Vec<String>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Mps { line, message: message.into() }
}

fn number(line: usize, s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| err(line, format!("invalid number '{}'", s.trim())))?;
    if v.is_nan() {
        return Err(err(line, "NaN value"));
    }
    Ok(v)
}

/// Fixed-format fields 1–6 (columns 2–3, 5–12, 15–22, 25–36, 40–47, 50–61).
fn fixed_fields(line: &str) -> Vec<String> {
    let spans = [(1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61)];
    spans
        .iter()
        .map(|&(a, b)| line.get(a..b.min(line.len())).unwrap_or("").trim().to_string())
        .collect()
}

struct Parser {
    lp: GeneralLp,
    row_index: HashMap<String, usize>,
    col_index: HashMap<String, usize>,
    objective_row: Option<String>,
    free_rows: Vec<String>,
    coefficients: HashMap<(usize, usize), f64>,
    coefficient_order: Vec<(usize, usize)>,
    objective_seen: HashMap<usize, bool>,
    last_column: Option<String>,
    warnings: Vec<String>,
}

enum RowRef {
    Objective,
    Free,
    Row(usize),
}

impl Parser {
    fn row_ref(&self, line: usize, name: &str) -> Result<RowRef> {
        if Some(name) == self.objective_row.as_deref() {
            Ok(RowRef::Objective)
        } else if let Some(&i) = self.row_index.get(name) {
            Ok(RowRef::Row(i))
        } else if self.free_rows.iter().any(|r| r == name) {
            Ok(RowRef::Free)
        } else {
            Err(err(line, format!("unknown row '{}'", name)))
        }
    }

    fn rows_line(&mut self, line: usize, f: &[&str]) -> Result<()> {
        if f.len() != 2 {
            return Err(err(line, "ROWS entry needs a type and a name"));
        }
        let name = f[1].to_string();
        if self.row_index.contains_key(&name) || self.objective_row.as_deref() == Some(&name) {
            return Err(err(line, format!("duplicate row '{}'", name)));
        }
        let kind = match f[0].to_ascii_uppercase().as_str() {
            "N" => {
                if self.objective_row.is_none() {
                    self.lp.objective_name = name.clone();
                    self.objective_row = Some(name);
                } else {
                    self.warnings.push(format!("line {}: extra free row '{}' ignored", line, name));
                    self.free_rows.push(name);
                }
                return Ok(());
            }
            "L" => RowKind::Le,
            "G" => RowKind::Ge,
            "E" => RowKind::Eq,
            other => return Err(err(line, format!("unknown row type '{}'", other))),
        };
        let i = self.lp.add_row(name.clone(), kind, 0.0);
        self.row_index.insert(name, i);
        Ok(())
    }

    fn columns_line(&mut self, line: usize, f: &[&str]) -> Result<()> {
        if f.iter().any(|t| t.contains("MARKER")) {
            return Err(Error::Unsupported(format!("line {}: integrality markers", line)));
        }
        if f.len() != 3 && f.len() != 5 {
            return Err(err(line, "COLUMNS entry needs a column and one or two (row, value) pairs"));
        }
        let name = f[0];
        let pairs = f[1..]
            .chunks(2)
            .map(|pair| Ok((self.row_ref(line, pair[0])?, number(line, pair[1])?, pair[0])))
            .collect::<Result<Vec<_>>>()?;
        let j = match self.col_index.get(name) {
            Some(&j) => {
                if self.last_column.as_deref() != Some(name) {
                    self.warnings.push(format!("line {}: column '{}' is not contiguous", line, name));
                }
                j
            }
            None => {
                let j = self.lp.add_column(name, 0.0, Bounds::default());
                self.col_index.insert(name.to_string(), j);
                j
            }
        };
        self.last_column = Some(name.to_string());
        for (row, v, row_name) in pairs {
            match row {
                RowRef::Objective => {
                    if self.objective_seen.insert(j, true).is_some() {
                        self.warnings.push(format!("line {}: duplicate objective entry for '{}' summed", line, name));
                    }
                    self.lp.columns[j].cost += v;
                }
                RowRef::Free => {}
                RowRef::Row(i) => match self.coefficients.get_mut(&(i, j)) {
                    Some(a) => {
                        *a += v;
                        self.warnings.push(format!("line {}: duplicate entry ({}, {}) summed", line, row_name, name));
                    }
                    None => {
                        self.coefficients.insert((i, j), v);
                        self.coefficient_order.push((i, j));
                    }
                },
            }
        }
        Ok(())
    }

    /// RHS and RANGES share a layout; the set name may be omitted.
    fn vector_line(&mut self, line: usize, f: &[&str], ranges: bool) -> Result<()> {
        let pairs = match f.len() {
            2 | 4 => f,
            3 | 5 => &f[1..],
            _ => return Err(err(line, "expected optional set name and one or two (row, value) pairs")),
        };
        let parsed = pairs
            .chunks(2)
            .map(|pair| Ok((self.row_ref(line, pair[0])?, number(line, pair[1])?)))
            .collect::<Result<Vec<_>>>()?;
        for (row, v) in parsed {
            match row {
                RowRef::Objective if ranges => return Err(err(line, "RANGES entry on the objective row")),
                RowRef::Objective => self.lp.objective_constant = -v,
                RowRef::Free => {}
                RowRef::Row(i) if ranges => self.lp.rows[i].range = Some(v),
                RowRef::Row(i) => self.lp.rows[i].rhs = v,
            }
        }
        Ok(())
    }

    fn bounds_line(&mut self, line: usize, f: &[&str]) -> Result<()> {
        if f.is_empty() {
            return Err(err(line, "empty BOUNDS entry"));
        }
        let kind = f[0].to_ascii_uppercase();
        let needs_value = matches!(kind.as_str(), "UP" | "LO" | "FX");
        let (col, value) = match (needs_value, f.len()) {
            (true, 4) => (f[2], Some(number(line, f[3])?)),
            (true, 3) => (f[1], Some(number(line, f[2])?)),
            (false, 3) => (f[2], None),
            (false, 2) => (f[1], None),
            // some writers put a value on FR/MI/PL too
            (false, 4) => (f[2], None),
            _ => return Err(err(line, format!("malformed {} bound", kind))),
        };
        let &j = self.col_index.get(col).ok_or_else(|| err(line, format!("unknown column '{}'", col)))?;
        let b = &mut self.lp.columns[j].bounds;
        match kind.as_str() {
            "UP" => {
                let v = value.unwrap_or(0.0);
                if v < 0.0 && b.lower == 0.0 {
                    self.warnings.push(format!("line {}: negative UP bound on '{}' sets lower to -inf", line, col));
                    b.lower = f64::NEG_INFINITY;
                }
                b.upper = v;
            }
            "LO" => b.lower = value.unwrap_or(0.0),
            "FX" => *b = Bounds::fixed(value.unwrap_or(0.0)),
            "FR" => *b = Bounds::free(),
            "MI" => b.lower = f64::NEG_INFINITY,
            "PL" => b.upper = f64::INFINITY,
            "BV" | "LI" | "UI" | "SC" => {
                return Err(Error::Unsupported(format!("line {}: bound type {} needs integrality", line, kind)))
            }
            other => return Err(err(line, format!("unknown bound type '{}'", other))),
        }
        Ok(())
    }
}

impl Parser {
    fn data_line(&mut self, section: Section, line: usize, fields: &[&str]) -> Result<()> {
        match section {
            Section::Rows => self.rows_line(line, fields),
            Section::Columns => self.columns_line(line, fields),
            Section::Rhs => self.vector_line(line, fields, false),
            Section::Ranges => self.vector_line(line, fields, true),
            Section::Bounds => self.bounds_line(line, fields),
            Section::ObjSense => {
                self.lp.sense = objsense(line, fields.first().copied().unwrap_or(""))?;
                Ok(())
            }
            Section::Name | Section::Endata => Err(err(line, "unexpected data line")),
        }
    }
}

fn expected_fields(section: Section, n: usize) -> bool {
    match section {
        Section::Rows => n == 2,
        Section::Columns => n == 3 || n == 5,
        Section::Rhs | Section::Ranges => (2..=5).contains(&n),
        Section::Bounds => (2..=4).contains(&n),
        _ => true,
    }
}

/// Parses MPS text into a model with its section layout and warnings.
pub fn parse_mps_document(text: &str) -> Result<MpsDocument> {
    let mut p = Parser {
        lp: GeneralLp::new("", Sense::Minimize),
        row_index: HashMap::new(),
        col_index: HashMap::new(),
        objective_row: None,
        free_rows: Vec::new(),
        coefficients: HashMap::new(),
        coefficient_order: Vec::new(),
        objective_seen: HashMap::new(),
        last_column: None,
        warnings: Vec::new(),
    };
    let mut sections: Vec<(Section, usize, usize)> = Vec::new();
    let mut current: Option<Section> = None;
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        if !raw.starts_with(' ') && !raw.starts_with('\t') {
            let mut words = raw.split_whitespace();
            let head = words.next().unwrap_or("").to_ascii_uppercase();
            let section = Section::parse(&head).ok_or_else(|| err(line, format!("unknown section '{}'", head)))?;
            if let Some(last) = sections.last_mut() {
                last.2 = line - 1;
            }
            if sections.iter().any(|s| s.0 == section) {
                return Err(err(line, format!("section {} repeated", head)));
            }
            match section {
                Section::Name => p.lp.name = words.next().unwrap_or("").to_string(),
                Section::ObjSense => {
                    if let Some(w) = words.next() {
                        p.lp.sense = objsense(line, w)?;
                    }
                }
                Section::Columns if p.objective_row.is_none() && p.row_index.is_empty() => {
                    return Err(err(line, "COLUMNS before ROWS"));
                }
                Section::Rhs | Section::Ranges | Section::Bounds
                    if !sections.iter().any(|s| s.0 == Section::Columns) =>
                {
                    return Err(err(line, format!("{} before COLUMNS", head)));
                }
                _ => {}
            }
            sections.push((section, line, line));
            current = Some(section);
            if section == Section::Endata {
                break;
            }
            continue;
        }
        let Some(section) = current else {
            return Err(err(line, "data line before any section header"));
        };
        let free: Vec<&str> = raw.split_whitespace().collect();
        let fixed = fixed_fields(raw);
        let fixed: Vec<&str> = fixed.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
        let result = if expected_fields(section, free.len()) {
            // a failed free-format read may still be a valid fixed-format line
            p.data_line(section, line, &free).or_else(|e| if fixed != free { p.data_line(section, line, &fixed).map_err(|_| e) } else { Err(e) })
        } else {
            p.data_line(section, line, &fixed)
        };
        result?;
    }
    if let Some(last) = sections.last_mut() {
        if last.0 != Section::Endata {
            last.2 = last_line;
        }
    }
    for (needed, label) in [(Section::Rows, "ROWS"), (Section::Columns, "COLUMNS")] {
        if !sections.iter().any(|s| s.0 == needed) {
            return Err(err(last_line, format!("missing {} section", label)));
        }
    }
    if p.objective_row.is_none() {
        p.warnings.push("no objective row; objective is zero".into());
    }
    if !sections.iter().any(|s| s.0 == Section::Endata) {
        p.warnings.push("missing ENDATA".into());
    }
    let mut lp = p.lp;
    lp.coefficients = p
        .coefficient_order
        .iter()
        .map(|&(i, j)| (i, j, p.coefficients[&(i, j)]))
        .filter(|&(_, _, v)| v != 0.0)
        .collect();
    lp.validate()?;
    Ok(MpsDocument { lp, sections, warnings: p.warnings })
}

fn objsense(line: usize, w: &str) -> Result<Sense> {
    match w.to_ascii_uppercase().as_str() {
        "MIN" | "MINIMIZE" => Ok(Sense::Minimize),
        "MAX" | "MAXIMIZE" => Ok(Sense::Maximize),
        other => Err(err(line, format!("unknown objective sense '{}'", other))),
    }
}

pub fn parse_mps(text: &str) -> Result<GeneralLp> {
    Ok(parse_mps_document(text)?.lp)
}

/// Reads an `.mps` or gzip-compressed `.mps.gz` file.
pub fn read_mps_file(path: impl AsRef<Path>) -> Result<GeneralLp> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
    let text = if bytes.starts_with(&[0x1f, 0x8b]) {
        let mut s = String::new();
        flate2::read::GzDecoder::new(&bytes[..]).read_to_string(&mut s)?;
        s
    } else {
        String::from_utf8(bytes).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?
    };
    parse_mps(&text)
}

fn fmt_num(v: f64) -> String {
    // shortest representation that parses back to the same double
    format!("{:?}", v)
}

/// Free-format MPS. Names must not contain whitespace.
pub fn write_mps(lp: &GeneralLp) -> Result<String> {
    lp.validate()?;
    let names = std::iter::once(&lp.objective_name)
        .chain(lp.rows.iter().map(|r| &r.name))
        .chain(lp.columns.iter().map(|c| &c.name));
    for n in names {
        if n.is_empty() || n.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!("name '{}' cannot be written in free MPS", n)));
        }
    }
    let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); lp.columns.len()];
    for &(i, j, v) in &lp.coefficients {
        by_col[j].push((i, v));
    }
    let mut s = String::new();
    let name = if lp.name.is_empty() { "LP" } else { &lp.name };
    let _ = writeln!(s, "NAME          {}", name);
    if lp.sense == Sense::Maximize {
        let _ = writeln!(s, "OBJSENSE\n    MAX");
    }
    let _ = writeln!(s, "ROWS\n N  {}", lp.objective_name);
    for r in &lp.rows {
        let t = match r.kind {
            RowKind::Le => "L",
            RowKind::Ge => "G",
            RowKind::Eq => "E",
        };
        let _ = writeln!(s, " {}  {}", t, r.name);
    }
    let _ = writeln!(s, "COLUMNS");
    for (j, col) in lp.columns.iter().enumerate() {
        if col.cost != 0.0 {
            let _ = writeln!(s, "    {}  {}  {}", col.name, lp.objective_name, fmt_num(col.cost));
        }
        for &(i, v) in &by_col[j] {
            let _ = writeln!(s, "    {}  {}  {}", col.name, lp.rows[i].name, fmt_num(v));
        }
        if col.cost == 0.0 && by_col[j].is_empty() {
            // keep the column declared
            let _ = writeln!(s, "    {}  {}  0.0", col.name, lp.objective_name);
        }
    }
    let _ = writeln!(s, "RHS");
    if lp.objective_constant != 0.0 {
        let _ = writeln!(s, "    RHS  {}  {}", lp.objective_name, fmt_num(-lp.objective_constant));
    }
    for r in lp.rows.iter().filter(|r| r.rhs != 0.0) {
        let _ = writeln!(s, "    RHS  {}  {}", r.name, fmt_num(r.rhs));
    }
    if lp.rows.iter().any(|r| r.range.is_some()) {
        let _ = writeln!(s, "RANGES");
        for r in &lp.rows {
            if let Some(v) = r.range {
                let _ = writeln!(s, "    RNG  {}  {}", r.name, fmt_num(v));
            }
        }
    }
    let bounded: Vec<&Variable> = lp.columns.iter().filter(|c| c.bounds != Bounds::default()).collect();
    if !bounded.is_empty() {
        let _ = writeln!(s, "BOUNDS");
        for c in bounded {
            let Bounds { lower, upper } = c.bounds;
            if lower == upper {
                let _ = writeln!(s, " FX BND  {}  {}", c.name, fmt_num(lower));
                continue;
            }
            if lower == f64::NEG_INFINITY && upper == f64::INFINITY {
                let _ = writeln!(s, " FR BND  {}", c.name);
                continue;
            }
            if lower == f64::NEG_INFINITY {
                let _ = writeln!(s, " MI BND  {}", c.name);
            } else if lower != 0.0 {
                let _ = writeln!(s, " LO BND  {}  {}", c.name, fmt_num(lower));
            }
            if upper.is_finite() {
                let _ = writeln!(s, " UP BND  {}  {}", c.name, fmt_num(upper));
            }
        }
    }
    let _ = writeln!(s, "ENDATA");
    Ok(s)
}

/// A standard-form LP as a model with equality rows `R1..Rm` and columns
/// `X1..Xn`.
pub fn standard_form_to_general(lp: &crate::model::StandardFormLp) -> GeneralLp {
    let mut g = GeneralLp::new(lp.name.clone(), Sense::Minimize);
    g.objective_name = "COST".into();
    for (i, &b) in lp.b().iter().enumerate() {
        g.add_row(format!("R{}", i + 1), RowKind::Eq, b);
    }
    for (j, &c) in lp.c().iter().enumerate() {
        g.add_column(format!("X{}", j + 1), c, Bounds::default());
    }
    g.coefficients = lp.a().triplets().collect();
    g
}

/// What [`presolve`] removed, and enough to map a reduced solution back.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PresolveReport {
    pub original_rows: usize,
    pub original_columns: usize,
    /// Original indices of the rows and columns kept, in reduced order.
    pub kept_rows: Vec<usize>,
    pub kept_columns: Vec<usize>,
    pub removed_empty_rows: Vec<usize>,
    pub removed_empty_columns: Vec<usize>,
    pub substituted_fixed: Vec<usize>,
    /// Values of every removed column.
    pub removed_values: Vec<(usize, f64)>,
    pub infeasible: bool,
    /// Objective contribution of removed columns (in the model's sense).
    pub objective_offset: f64,
    pub messages: Vec<String>,
}

impl PresolveReport {
    pub fn is_empty(&self) -> bool {
        self.removed_empty_rows.is_empty()
            && self.removed_empty_columns.is_empty()
            && self.substituted_fixed.is_empty()
            && !self.infeasible
    }
}

const PRESOLVE_TOL: f64 = 1e-9;

/// Removes empty rows and columns and substitutes fixed columns, repeating
/// until nothing changes. Rows whose activity range under the column
/// bounds misses the row interval set `infeasible`.
///
/// The offset is folded into the reduced model's objective constant, so
/// both models report the same objective for corresponding solutions.
pub fn presolve(lp: &GeneralLp) -> Result<(GeneralLp, PresolveReport)> {
    lp.validate()?;
    let (m, n) = (lp.rows.len(), lp.columns.len());
    let mut row_alive = vec![true; m];
    let mut col_alive = vec![true; n];
    let mut rows: Vec<Constraint> = lp.rows.clone();
    let mut report = PresolveReport { original_rows: m, original_columns: n, ..Default::default() };
    let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut row_count = vec![0usize; m];
    for &(i, j, v) in &lp.coefficients {
        if v != 0.0 {
            by_col[j].push((i, v));
            row_count[i] += 1;
        }
    }
    let sense = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };

    loop {
        let mut changed = false;
        for j in 0..n {
            if !col_alive[j] {
                continue;
            }
            let col = &lp.columns[j];
            let live: Vec<(usize, f64)> = by_col[j].iter().copied().filter(|&(i, _)| row_alive[i]).collect();
            let value = if col.bounds.is_fixed() {
                report.substituted_fixed.push(j);
                Some(col.bounds.lower)
            } else if live.is_empty() {
                let c = sense * col.cost;
                let Bounds { lower, upper } = col.bounds;
                let v = if c > 0.0 {
                    lower
                } else if c < 0.0 {
                    upper
                } else if lower.is_finite() {
                    lower
                } else if upper.is_finite() {
                    upper
                } else {
                    0.0
                };
                if v.is_finite() {
                    report.removed_empty_columns.push(j);
                    Some(v)
                } else {
                    // unbounded direction: leave it for the solver to report
                    None
                }
            } else {
                None
            };
            if let Some(v) = value {
                for &(i, a) in &live {
                    rows[i].rhs -= a * v;
                    row_count[i] -= 1;
                }
                report.objective_offset += col.cost * v;
                report.removed_values.push((j, v));
                col_alive[j] = false;
                changed = true;
            }
        }
        for i in 0..m {
            if row_alive[i] && row_count[i] == 0 {
                let (lo, hi) = rows[i].interval();
                if lo > PRESOLVE_TOL || hi < -PRESOLVE_TOL {
                    report.infeasible = true;
                    report.messages.push(format!("row {} reduces to 0 in [{}, {}]", rows[i].name, lo, hi));
                }
                row_alive[i] = false;
                report.removed_empty_rows.push(i);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // activity bounds of the remaining rows
    let mut act_lo = vec![0.0f64; m];
    let mut act_hi = vec![0.0f64; m];
    for j in (0..n).filter(|&j| col_alive[j]) {
        let b = lp.columns[j].bounds;
        for &(i, a) in by_col[j].iter().filter(|&&(i, _)| row_alive[i]) {
            let (x, y) = if a > 0.0 { (a * b.lower, a * b.upper) } else { (a * b.upper, a * b.lower) };
            act_lo[i] += x;
            act_hi[i] += y;
        }
    }
    for i in (0..m).filter(|&i| row_alive[i]) {
        let (lo, hi) = rows[i].interval();
        let tol = PRESOLVE_TOL * (1.0 + lo.abs().min(hi.abs()).min(1e12));
        if act_lo[i] > hi + tol || act_hi[i] < lo - tol {
            report.infeasible = true;
            report.messages.push(format!("row {} cannot reach [{}, {}]", rows[i].name, lo, hi));
        }
    }

    report.kept_rows = (0..m).filter(|&i| row_alive[i]).collect();
    report.kept_columns = (0..n).filter(|&j| col_alive[j]).collect();
    let mut row_map = vec![usize::MAX; m];
    for (k, &i) in report.kept_rows.iter().enumerate() {
        row_map[i] = k;
    }
    let mut col_map = vec![usize::MAX; n];
    for (k, &j) in report.kept_columns.iter().enumerate() {
        col_map[j] = k;
    }
    let mut reduced = GeneralLp::new(lp.name.clone(), lp.sense);
    reduced.objective_name = lp.objective_name.clone();
    reduced.objective_constant = lp.objective_constant + report.objective_offset;
    reduced.rows = report.kept_rows.iter().map(|&i| rows[i].clone()).collect();
    reduced.columns = report.kept_columns.iter().map(|&j| lp.columns[j].clone()).collect();
    reduced.coefficients = lp
        .coefficients
        .iter()
        .filter(|&&(i, j, v)| v != 0.0 && row_alive[i] && col_alive[j])
        .map(|&(i, j, v)| (row_map[i], col_map[j], v))
        .collect();
    Ok((reduced, report))
}

/// Full-space solution from a solution of the reduced model.
pub fn postsolve(report: &PresolveReport, reduced_x: &[f64]) -> Result<Vec<f64>> {
    if reduced_x.len() != report.kept_columns.len() {
        return Err(Error::Dimension(format!(
            "reduced solution has {} values, report keeps {} columns",
            reduced_x.len(),
            report.kept_columns.len()
        )));
    }
    let mut x = vec![0.0; report.original_columns];
    for (&j, &v) in report.kept_columns.iter().zip(reduced_x) {
        x[j] = v;
    }
    for &(j, v) in &report.removed_values {
        x[j] = v;
    }
    Ok(x)
}
