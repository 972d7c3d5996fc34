//! Loss files and grid specifications.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

/// A loss file that could not be used.
#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("line {line}: {reason}")]
    Line { line: u64, reason: String },
    #[error("no loss values found")]
    Empty,
}

/// Reads a one-column CSV of losses with an optional `loss` header.
pub fn read_losses(path: &Path) -> Result<Vec<f64>, DataError> {
    let file = File::open(path).map_err(|e| DataError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_losses(file)
}

pub fn parse_losses<R: Read>(reader: R) -> Result<Vec<f64>, DataError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut values = Vec::new();
    let mut record = csv::StringRecord::new();
    let mut first = true;
    loop {
        let line = rdr.position().line();
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map_or(line, |p| p.line());
                return Err(DataError::Line { line, reason: e.to_string() });
            }
        }
        let line = record.position().map_or(line, |p| p.line());
        let header = first;
        first = false;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 1 {
            return Err(DataError::Line {
                line,
                reason: format!("expected one column, found {}", record.len()),
            });
        }
        let cell = &record[0];
        if header && cell.eq_ignore_ascii_case("loss") {
            continue;
        }
        match cell.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(DataError::Line {
                    line,
                    reason: format!("'{cell}' is not finite"),
                })
            }
            Err(_) => {
                return Err(DataError::Line {
                    line,
                    reason: format!("'{cell}' is not a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(DataError::Empty);
    }
    Ok(values)
}

/// Largest grid the CLI will build.
pub const MAX_GRID: usize = 1_000_000;

/// Parses `start:stop:step`.
///
/// The grid is `start, start+step, …` up to `stop`; `stop` itself is
/// included when `(stop − start)/step` is an integer within 1e-9.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("grid '{text}' is not start:stop:step"));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("grid '{text}': '{s}' is not a finite number"))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) {
        return Err(format!("grid '{text}': step must be positive"));
    }
    if stop < start {
        return Err(format!("grid '{text}': stop is below start"));
    }
    let span = (stop - start) / step;
    if !(span < MAX_GRID as f64) {
        return Err(format!("grid '{text}' has more than {MAX_GRID} points"));
    }
    let nearest = span.round();
    let (last, hits_stop) = if (span - nearest).abs() <= 1e-9 {
        (nearest as usize, true)
    } else {
        (span.floor() as usize, false)
    };
    let mut grid: Vec<f64> = (0..=last).map(|i| start + i as f64 * step).collect();
    if hits_stop {
        grid[last] = stop;
    }
    Ok(grid)
}

/// Parses a comma-separated list of positive sample sizes.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("'{}' is not a positive integer", s.trim())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loss_examples() {
        assert_eq!(parse_losses("1\n2\n3\n".as_bytes()).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_losses("loss\n1.5\n".as_bytes()).unwrap(), vec![1.5]);
        assert_eq!(
            parse_losses("1\nabc\n".as_bytes()).unwrap_err(),
            DataError::Line { line: 2, reason: "'abc' is not a number".into() }
        );
        assert_eq!(parse_losses("".as_bytes()).unwrap_err(), DataError::Empty);
        assert_eq!(parse_losses("loss\n".as_bytes()).unwrap_err(), DataError::Empty);
        assert!(matches!(
            parse_losses("1,2\n".as_bytes()).unwrap_err(),
            DataError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse_losses("1\n\n3\nnan\n".as_bytes()).unwrap_err(),
            DataError::Line { line: 4, .. }
        ));
        assert_eq!(parse_losses("  2.5 \r\n-1e3\n".as_bytes()).unwrap(), vec![2.5, -1000.0]);
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            read_losses(Path::new("/nonexistent/losses.csv")),
            Err(DataError::Io { .. })
        ));
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.01:0.99:0.01").unwrap();
        assert_eq!(g.len(), 99);
        assert_eq!(g[98], 0.99);
        let g = parse_grid("0:6:0.25").unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(parse_grid("0:1:0.3").unwrap().len(), 4);
        assert_eq!(parse_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1e300:1e-300").is_err());
    }

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("250, 1000,4000").unwrap(), vec![250, 1000, 4000]);
        assert!(parse_n_list("10,0").is_err());
        assert!(parse_n_list("").is_err());
    }
}
