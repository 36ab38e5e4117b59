//! CSV ingestion: comma-separated numeric columns, decimal point only,
//! with an optional single header row detected by a non-numeric first row.

use std::path::Path;

/// Reads two 1-based columns from a CSV file as paired f64 vectors.
pub fn read_pair_columns(path: &Path, columns: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let (ci, cj) = parse_columns(columns)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| format!("cannot open `{}`: {e}", path.display()))?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("row {}: {e}", i + 1))?;
        let cell = |c: usize| -> Result<f64, String> {
            let raw = record
                .get(c)
                .ok_or_else(|| format!("row {}: missing column {}", i + 1, c + 1))?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| format!("row {}: `{raw}` is not numeric", i + 1))
        };
        match (cell(ci), cell(cj)) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            (Err(e), _) | (_, Err(e)) => {
                // a non-numeric first row is a header; anywhere else it is an error
                if i == 0 && xs.is_empty() {
                    continue;
                }
                return Err(e);
            }
        }
    }
    if xs.is_empty() {
        return Err("no numeric rows found".into());
    }
    Ok((xs, ys))
}

fn parse_columns(spec: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("bad --columns `{spec}` (expected i,j)"));
    }
    let one_based = |p: &str| -> Result<usize, String> {
        let v: usize = p
            .trim()
            .parse()
            .map_err(|_| format!("bad column index `{p}`"))?;
        if v == 0 {
            return Err("column indices are 1-based".into());
        }
        Ok(v - 1)
    };
    Ok((one_based(parts[0])?, one_based(parts[1])?))
}
