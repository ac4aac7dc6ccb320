//! CSV tables of strain curves.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::strains::StrainFamily;

pub const HEADER: [&str; 12] = [
    "X", "alpha", "ell", "ell_L", "ell_R", "family", "E11", "E22", "E33", "e11", "e22", "e33",
];

/// One strain sample of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub x: f64,
    pub alpha: f64,
    pub ell: f64,
    pub ell_left: f64,
    pub ell_right: f64,
    pub family: StrainFamily,
    /// Diagonal of the material strain.
    pub material: [f64; 3],
    /// Diagonal of the spatial strain.
    pub spatial: [f64; 3],
}

impl ResultRow {
    fn numbers(&self) -> [f64; 11] {
        let [e11, e22, e33] = self.material;
        let [s11, s22, s33] = self.spatial;
        [
            self.x,
            self.alpha,
            self.ell,
            self.ell_left,
            self.ell_right,
            e11,
            e22,
            e33,
            s11,
            s22,
            s33,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.numbers().iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {message}")]
    Malformed { row: usize, message: String },
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(rows: &[ResultRow], writer: W) -> Result<(), CsvError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(writer);
    w.write_record(HEADER)?;
    for row in rows {
        let n = row.numbers();
        let mut record: Vec<String> = n[..5].iter().map(|&v| format_float(v)).collect();
        record.push(row.family.tag().to_string());
        record.extend(n[5..].iter().map(|&v| format_float(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<(), CsvError> {
    let file = std::fs::File::create(path)?;
    write_csv(rows, std::io::BufWriter::new(file))
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<ResultRow>, CsvError> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(CsvError::Malformed {
            row: 0,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let num = |k: usize| -> Result<f64, CsvError> {
            record[k].parse().map_err(|_| CsvError::Malformed {
                row,
                message: format!("{} is not a number: {}", HEADER[k], &record[k]),
            })
        };
        let family = record[5]
            .parse()
            .map_err(|message| CsvError::Malformed { row, message })?;
        rows.push(ResultRow {
            x: num(0)?,
            alpha: num(1)?,
            ell: num(2)?,
            ell_left: num(3)?,
            ell_right: num(4)?,
            family,
            material: [num(6)?, num(7)?, num(8)?],
            spatial: [num(9)?, num(10)?, num(11)?],
        });
    }
    Ok(rows)
}

pub fn load_csv(path: &Path) -> Result<Vec<ResultRow>, CsvError> {
    read_csv(std::fs::File::open(path)?)
}
