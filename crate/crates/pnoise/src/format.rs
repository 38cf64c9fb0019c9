//! The line-oriented module format.
//!
//! ```text
//! pnoise-module 1
//! prime 2
//! r 2
//! alpha 1
//! box 2
//! dims
//! (0,0) 0
//! (0,1) 1
//! ...
//! maps
//! (0,1) axis 0 : 1x1
//! 1
//! ...
//! end
//! ```
//!
//! Lines starting with `#` are comments. The `prime` line may be omitted,
//! in which case the caller's default is used.

use std::fmt::Write;

use pnoise_core::denoise::Denoising;
use pnoise_core::exactalg::{Matrix, PrimeField, Rational};
use pnoise_core::gridmod::{GridError, GridModule, GridPoint};

use crate::numbers::parse_rational;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid module: {0}")]
    Validation(#[from] GridError),
}

impl FormatError {
    /// Where the problem is, for error reports.
    pub fn location(&self) -> String {
        match self {
            FormatError::Parse { line, .. } => format!("line {line}"),
            FormatError::Validation(
                GridError::NonCommuting { point, .. } | GridError::BadShape { point, .. } | GridError::MissingMap { point, .. },
            ) => format!("point {}", show_point(point)),
            FormatError::Validation(_) => String::new(),
        }
    }
}

fn show_point(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn write_module(f: &GridModule) -> String {
    let mut out = String::new();
    let g = f.grid();
    writeln!(out, "pnoise-module 1").unwrap();
    writeln!(out, "prime {}", f.field().p()).unwrap();
    writeln!(out, "r {}", f.r()).unwrap();
    writeln!(out, "alpha {}", f.alpha()).unwrap();
    writeln!(out, "box {}", f.size()).unwrap();
    writeln!(out, "dims").unwrap();
    for (v, d) in f.dims_by_point() {
        writeln!(out, "{} {d}", show_point(&v)).unwrap();
    }
    writeln!(out, "maps").unwrap();
    for idx in 0..g.len() {
        for axis in 0..f.r() {
            if let Some(m) = f.edge_ref(idx, axis) {
                writeln!(out, "{} axis {axis} : {}x{}", show_point(&g.point(idx)), m.rows(), m.cols()).unwrap();
                if m.cols() > 0 {
                    for i in 0..m.rows() {
                        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
                        writeln!(out, "{}", row.join(" ")).unwrap();
                    }
                }
            }
        }
    }
    writeln!(out, "end").unwrap();
    out
}

/// The module text preceded by a `# denoised ...` comment.
pub fn write_denoised(d: &Denoising) -> String {
    format!("# denoised t={} mode={} certified={}\n{}", d.t, d.mode, d.certified, write_module(&d.module))
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        let last = self.items.last().map_or(0, |l| l.0);
        let item = self.peek().ok_or_else(|| err(last, format!("unexpected end of file, expected {what}")))?;
        self.pos += 1;
        Ok(item)
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str), FormatError> {
        let (n, l) = self.next(key)?;
        match l.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok((n, rest.trim())),
            _ if l == key => Ok((n, "")),
            _ => Err(err(n, format!("expected '{key}', got '{l}'"))),
        }
    }
}

fn err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse { line, reason: reason.into() }
}

fn parse_usize(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.trim().parse().map_err(|_| err(line, format!("bad {what} '{s}'")))
}

fn parse_point(line: usize, s: &str, r: usize) -> Result<GridPoint, FormatError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected a point like (0,1), got '{s}'")))?;
    let v: Vec<usize> = inner.split(',').map(|x| parse_usize(line, x, "coordinate")).collect::<Result<_, _>>()?;
    if v.len() != r {
        return Err(err(line, format!("point {s} has {} coordinates, expected {r}", v.len())));
    }
    Ok(v)
}

/// Parses a module; `default_prime` is used when the file has no `prime` line.
pub fn parse_module(text: &str, default_prime: u64) -> Result<GridModule, FormatError> {
    let mut lines = Lines::new(text);
    let (n, version) = lines.keyword("pnoise-module")?;
    if version != "1" {
        return Err(err(n, format!("unsupported format version '{version}'")));
    }
    let prime = match lines.peek() {
        Some((_, l)) if l.starts_with("prime") => {
            let (n, p) = lines.keyword("prime")?;
            (n, parse_usize(n, p, "prime")? as u64)
        }
        _ => (n, default_prime),
    };
    let field = PrimeField::new(prime.1).map_err(|e| err(prime.0, e.to_string()))?;
    let (n, r) = lines.keyword("r")?;
    let r = parse_usize(n, r, "r")?;
    if r == 0 || r > 8 {
        return Err(err(n, "r must be between 1 and 8"));
    }
    let (n, a) = lines.keyword("alpha")?;
    let alpha: Rational = parse_rational(a).map_err(|e| err(n, e))?;
    if alpha <= Rational::from_integer(0) {
        return Err(err(n, "alpha must be positive"));
    }
    let (n, b) = lines.keyword("box")?;
    let size = parse_usize(n, b, "box")?;
    let grid = pnoise_core::gridmod::Grid::new(r, size);
    if (size + 1).checked_pow(r as u32).is_none_or(|c| c > 1 << 20) {
        return Err(err(n, "box is too large"));
    }
    lines.keyword("dims")?;
    let mut dims: Vec<Option<usize>> = vec![None; grid.len()];
    while let Some((n, l)) = lines.peek() {
        if l == "maps" {
            break;
        }
        lines.pos += 1;
        let (p, d) = l.rsplit_once(char::is_whitespace).ok_or_else(|| err(n, format!("expected '(point) dim', got '{l}'")))?;
        let v = parse_point(n, p, r)?;
        if v.iter().any(|&x| x > size) {
            return Err(err(n, format!("point {p} is outside the box")));
        }
        let idx = grid.index(&v);
        if dims[idx].replace(parse_usize(n, d, "dimension")?).is_some() {
            return Err(err(n, format!("point {p} listed twice")));
        }
    }
    let dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| err(n, format!("no dimension for point {}", show_point(&grid.point(i))))))
        .collect::<Result<_, _>>()?;
    lines.keyword("maps")?;
    let mut edges: Vec<Option<Matrix>> = vec![None; grid.len() * r];
    loop {
        let (n, l) = lines.next("a map or 'end'")?;
        if l == "end" {
            break;
        }
        let (head, shape) = l.split_once(':').ok_or_else(|| err(n, format!("expected '(point) axis i : RxC', got '{l}'")))?;
        let (p, ax) = head.trim().split_once("axis").ok_or_else(|| err(n, "missing 'axis'"))?;
        let v = parse_point(n, p, r)?;
        let axis = parse_usize(n, ax, "axis")?;
        if axis >= r || v.iter().any(|&x| x > size) {
            return Err(err(n, "map is outside the box"));
        }
        let (rows, cols) = shape.trim().split_once('x').ok_or_else(|| err(n, format!("bad shape '{}'", shape.trim())))?;
        let (rows, cols) = (parse_usize(n, rows, "row count")?, parse_usize(n, cols, "column count")?);
        let mut data = Vec::with_capacity(rows * cols);
        if cols > 0 {
            for _ in 0..rows {
                let (m, row) = lines.next("a matrix row")?;
                let entries: Vec<u32> = row
                    .split_whitespace()
                    .map(|x| x.parse::<i64>().map(|x| field.reduce(x)).map_err(|_| err(m, format!("bad entry '{x}'"))))
                    .collect::<Result<_, _>>()?;
                if entries.len() != cols {
                    return Err(err(m, format!("row has {} entries, expected {cols}", entries.len())));
                }
                data.extend(entries);
            }
        }
        let idx = grid.index(&v);
        if edges[idx * r + axis].replace(Matrix::from_data(field, rows, cols, data)).is_some() {
            return Err(err(n, "map listed twice"));
        }
    }
    if let Some((n, l)) = lines.peek() {
        return Err(err(n, format!("unexpected '{l}' after 'end'")));
    }
    let f = GridModule::new(field, r, alpha, size, dims, edges)?;
    f.validate()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pnoise_core::catalog;

    #[test]
    fn round_trip() {
        let (a, b) = catalog::two_bars();
        for f in [catalog::mono_square(), catalog::five_step(), catalog::three_generators(), a, b] {
            assert_eq!(parse_module(&write_module(&f), 2).unwrap(), f);
        }
    }

    #[test]
    fn default_prime_applies() {
        let text = write_module(&catalog::five_step()).replace("prime 3\n", "");
        assert_eq!(parse_module(&text, 3).unwrap(), catalog::five_step());
    }

    #[test]
    fn errors_carry_lines() {
        let text = write_module(&catalog::mono_square());
        let bad = text.replace("box 2", "box x");
        match parse_module(&bad, 2) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let truncated: String = text.lines().take(12).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_module(&truncated, 2), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let text = write_module(&catalog::plane_combination());
        let bad = text.replacen("1\n1\n", "1\n0\n", 1);
        assert_ne!(bad, text);
        assert!(matches!(parse_module(&bad, 2), Err(FormatError::Validation(_))));
    }
}
