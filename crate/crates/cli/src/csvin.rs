//! Readers for the CSV formats this tool writes, used by `render`.

use valleyscape::{Grid64, Point64};

use crate::CliError;

/// Point sets of a `role,x1,...,xd,f,y` PCA dump, grouped by role.
#[derive(Debug, Default)]
pub struct PcaPoints {
    pub population: Vec<Point64>,
    pub selected: Vec<Point64>,
    pub projected: Vec<Point64>,
}

pub fn parse_pca_csv(text: &str) -> Result<PcaPoints, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::Usage("empty PCA CSV".into()))?;
    if !header.starts_with("role,x1,") || !header.ends_with(",f,y") {
        return Err(CliError::Usage(format!(
            "unsupported PCA header '{header}' (want role,x1,...,xd,f,y)"
        )));
    }
    let dim = header.split(',').count() - 3;
    let mut out = PcaPoints::default();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + 3 {
            return Err(CliError::Usage(format!("bad PCA row '{line}'")));
        }
        let coords = fields[1..=dim]
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad number '{s}' in '{line}'")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let point = Point64::new(coords);
        match fields[0] {
            "population" => out.population.push(point),
            "selected" => out.selected.push(point),
            "projected" => out.projected.push(point),
            other => return Err(CliError::Usage(format!("unknown role '{other}'"))),
        }
    }
    Ok(out)
}

pub fn read_grid(path: &std::path::Path) -> Result<Grid64, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
    Ok(Grid64::from_csv_str(&text)?)
}

pub fn read_pca(path: &std::path::Path) -> Result<PcaPoints, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
    parse_pca_csv(&text)
}
