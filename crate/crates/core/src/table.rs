//! Delimited annual tables: a `year` column followed by numeric columns.
//! Empty cells are missing values. Comma and tab delimiters are accepted.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Units};

/// Maps a header in the file to a series name and units.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub column: String,
    pub name: String,
    pub units: Units,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schema {
    columns: Vec<ColumnSpec>,
    default_units: Option<Units>,
}

impl Schema {
    /// Load every column, naming each series after its header.
    pub fn all(units: Units) -> Self {
        Self {
            columns: Vec::new(),
            default_units: Some(units),
        }
    }

    pub fn new(columns: Vec<ColumnSpec>) -> Self {
        Self {
            columns,
            default_units: None,
        }
    }

    pub fn column(
        mut self,
        column: impl Into<String>,
        name: impl Into<String>,
        units: Units,
    ) -> Self {
        self.columns.push(ColumnSpec {
            column: column.into(),
            name: name.into(),
            units,
        });
        self
    }

    fn resolve(&self, headers: &[String]) -> Result<Vec<(usize, String, Units)>> {
        if let Some(units) = self.default_units {
            if self.columns.is_empty() {
                return Ok(headers
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, h)| (i, h.clone(), units))
                    .collect());
            }
        }
        self.columns
            .iter()
            .map(|spec| {
                headers
                    .iter()
                    .position(|h| *h == spec.column)
                    .filter(|&i| i > 0)
                    .map(|i| (i, spec.name.clone(), spec.units))
                    .ok_or_else(|| {
                        Error::Structure(format!("column `{}` not found in header", spec.column))
                    })
            })
            .collect()
    }
}

pub fn load_table(path: impl AsRef<Path>, schema: &Schema) -> Result<Vec<AnnualSeries>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_table(text.as_bytes(), schema)
}

pub fn read_table<R: Read>(mut reader: R, schema: &Schema) -> Result<Vec<AnnualSeries>> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|source| Error::Io {
            path: "<reader>".into(),
            source,
        })?;
    let first_line = text.lines().next().unwrap_or_default();
    let delimiter = if first_line.contains('\t') {
        b'\t'
    } else {
        b','
    };

    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Structure(format!("unreadable header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.len() < 2 {
        return Err(Error::Structure(
            "table needs a year column and at least one data column".into(),
        ));
    }
    if !headers[0].eq_ignore_ascii_case("year") {
        return Err(Error::Structure(format!(
            "first column must be `year`, found `{}`",
            headers[0]
        )));
    }
    let wanted = schema.resolve(&headers)?;

    let mut years: Vec<i32> = Vec::new();
    let mut columns: Vec<Vec<Option<f64>>> = vec![Vec::new(); wanted.len()];
    for (i, record) in rdr.records().enumerate() {
        // header is line 1
        let row = i + 2;
        let record = record.map_err(|e| Error::Structure(format!("row {row}: {e}")))?;
        let year_cell = record.get(0).unwrap_or_default();
        let year: i32 = year_cell.parse().map_err(|_| Error::Parse {
            row,
            column: headers[0].clone(),
            message: format!("`{year_cell}` is not an integer year"),
        })?;
        if let Some(&prev) = years.last() {
            if year == prev {
                return Err(Error::Structure(format!(
                    "duplicate year {year} at row {row}"
                )));
            }
            if year != prev + 1 {
                return Err(Error::Structure(format!(
                    "non-consecutive years {prev} -> {year} at row {row}"
                )));
            }
        }
        years.push(year);
        for (slot, (col, _, _)) in columns.iter_mut().zip(&wanted) {
            let cell = record.get(*col).unwrap_or_default();
            let value = if cell.is_empty() {
                None
            } else {
                let v: f64 = cell.parse().map_err(|_| Error::Parse {
                    row,
                    column: headers[*col].clone(),
                    message: format!("`{cell}` is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        row,
                        column: headers[*col].clone(),
                        message: format!("`{cell}` is not finite"),
                    });
                }
                Some(v)
            };
            slot.push(value);
        }
    }
    let start = *years
        .first()
        .ok_or_else(|| Error::Structure("table has no data rows".into()))?;

    wanted
        .into_iter()
        .zip(columns)
        .map(|((_, name, units), values)| AnnualSeries::new(name, start, values, units))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Result<Vec<AnnualSeries>> {
        read_table(text.as_bytes(), &Schema::all(Units::Ratio))
    }

    #[test]
    fn three_rows_one_column() {
        let s = read("year,x\n2012,1.5\n2013,2\n2014,-3e-1\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].len(), 3);
        assert_eq!(s[0].start_year(), 2012);
        assert!(s[0].is_complete());
        assert_eq!(s[0].to_vec().unwrap(), vec![1.5, 2.0, -0.3]);
    }

    #[test]
    fn empty_cell_is_missing() {
        let s = read("year,x,y\n2012,1,4\n2013,,5\n2014,3,6\n").unwrap();
        assert_eq!(s[0].missing_mask(), vec![false, true, false]);
        assert!(s[1].is_complete());
    }

    #[test]
    fn tab_delimited() {
        let s = read("year\tx\n2000\t1\n2001\t\n").unwrap();
        assert_eq!(s[0].values(), &[Some(1.0), None]);
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let err = read("year,x,y\n2012,1,2\n2013,1,abc\n").unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 3);
                assert_eq!(column, "y");
            }
            other => panic!("unexpected {other:?}"),
        }
        // comma decimal separators are not accepted
        assert!(matches!(
            read_table(
                "year\tx\n2000\t1,5\n".as_bytes(),
                &Schema::all(Units::Ratio)
            ),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn year_structure_errors() {
        assert!(matches!(
            read("year,x\n2012,1\n2012,2\n"),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            read("year,x\n2012,1\n2014,2\n"),
            Err(Error::Structure(_))
        ));
        assert!(matches!(read("yr,x\n2012,1\n"), Err(Error::Structure(_))));
        assert!(matches!(read("year,x\n"), Err(Error::Structure(_))));
    }

    #[test]
    fn schema_selects_and_renames() {
        let schema = Schema::default().column("b", "Beta", Units::Percent);
        let s = read_table("year,a,b\n2000,1,2\n".as_bytes(), &schema).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].name(), "Beta");
        assert_eq!(s[0].units(), Units::Percent);
        let missing = Schema::default().column("c", "C", Units::Percent);
        assert!(read_table("year,a\n2000,1\n".as_bytes(), &missing).is_err());
    }
}
