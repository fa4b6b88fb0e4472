//! CSV output: `method,b,n,replicate,elapsed_s,per_element_s`.
//!
//! Floats are written in Rust's shortest round-trip decimal form, so reading
//! a file back reproduces every record exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, Terminator, WriterBuilder};

use crate::error::{BenchError, Result};
use crate::harness::BenchmarkRecord;

pub const HEADER: [&str; 6] = [
    "method",
    "b",
    "n",
    "replicate",
    "elapsed_s",
    "per_element_s",
];

/// Writes `records` to any writer. The path is used only in error messages.
pub fn write_records<W: Write>(
    records: impl IntoIterator<Item = impl std::borrow::Borrow<BenchmarkRecord>>,
    sink: W,
    path: &Path,
) -> Result<()> {
    let err = |source| BenchError::Csv {
        path: path.to_owned(),
        source,
    };
    let mut w = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(HEADER).map_err(err)?;
    for r in records {
        let r = r.borrow();
        w.write_record([
            r.method.clone(),
            r.b.to_string(),
            r.n().to_string(),
            r.replicate.to_string(),
            r.elapsed_s.to_string(),
            r.per_element_s().to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| err(e.into()))
}

pub fn write_csv(records: &[BenchmarkRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| BenchError::Csv {
        path: path.to_owned(),
        source: e.into(),
    })?;
    write_records(records, file, path)
}

/// Parses records from any reader, checking the header and the derived
/// columns.
pub fn read_records<R: Read>(source: R, path: &Path) -> Result<Vec<BenchmarkRecord>> {
    let mut rdr = ReaderBuilder::new().from_reader(source);
    let headers = rdr.headers().map_err(|source| BenchError::Csv {
        path: path.to_owned(),
        source,
    })?;
    if headers.iter().ne(HEADER) {
        return Err(BenchError::Parse {
            path: path.to_owned(),
            line: 1,
            message: format!(
                "unexpected header `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|source| BenchError::Csv {
            path: path.to_owned(),
            source,
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| BenchError::Parse {
            path: path.to_owned(),
            line,
            message,
        };
        let field = |i: usize| {
            row.get(i)
                .ok_or_else(|| bad(format!("missing `{}`", HEADER[i])))
        };
        let record = BenchmarkRecord {
            method: field(0)?.to_owned(),
            b: field(1)?.parse().map_err(|e| bad(format!("b: {e}")))?,
            replicate: field(3)?
                .parse()
                .map_err(|e| bad(format!("replicate: {e}")))?,
            elapsed_s: field(4)?
                .parse()
                .map_err(|e| bad(format!("elapsed_s: {e}")))?,
        };
        if record.b >= 64 {
            return Err(bad(format!("b={} out of range", record.b)));
        }
        let n: u64 = field(2)?.parse().map_err(|e| bad(format!("n: {e}")))?;
        if n != record.n() {
            return Err(bad(format!("n={n} does not match b={}", record.b)));
        }
        let per: f64 = field(5)?
            .parse()
            .map_err(|e| bad(format!("per_element_s: {e}")))?;
        if per != record.per_element_s() {
            return Err(bad(format!("per_element_s={per} is not elapsed_s / n")));
        }
        out.push(record);
    }
    Ok(out)
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchmarkRecord>> {
    let file = File::open(path).map_err(|e| BenchError::Csv {
        path: path.to_owned(),
        source: e.into(),
    })?;
    read_records(file, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(method: &str, b: u32, replicate: usize, elapsed_s: f64) -> BenchmarkRecord {
        BenchmarkRecord {
            method: method.into(),
            b,
            replicate,
            elapsed_s,
        }
    }

    fn render(records: &[BenchmarkRecord]) -> String {
        let mut buf = Vec::new();
        write_records(records, &mut buf, Path::new("mem")).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn three_records_four_lines() {
        let records = [
            rec("bitwise", 8, 0, 1.5e-6),
            rec("bitwise", 8, 1, 2.25e-6),
            rec("cobra", 9, 0, 0.1),
        ];
        let text = render(&records);
        assert!(text.ends_with('\n'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "method,b,n,replicate,elapsed_s,per_element_s");
        assert_eq!(lines[3], "cobra,9,512,0,0.1,0.0001953125");
        assert_eq!(lines[1], "bitwise,8,256,0,0.0000015,0.000000005859375");
        assert!(!text.contains('E'));
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(
            render(&[]),
            "method,b,n,replicate,elapsed_s,per_element_s\n"
        );
        assert!(read_records(render(&[]).as_bytes(), Path::new("mem"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn round_trip_is_exact() {
        let records: Vec<_> = (0..50)
            .map(|i| {
                rec(
                    "semirecursive",
                    8 + i % 20,
                    i as usize,
                    (i as f64 + 0.1).powi(-3) / 7.0,
                )
            })
            .collect();
        let text = render(&records);
        assert_eq!(
            read_records(text.as_bytes(), Path::new("mem")).unwrap(),
            records
        );
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let records = vec![rec("xor", 20, 3, 0.012345678901234567)];
        write_csv(&records, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), records);
    }

    #[test]
    fn rejects_inconsistent_rows() {
        let p = Path::new("mem");
        let bad_header = "method,b,n,rep,elapsed_s,per_element_s\n";
        assert!(read_records(bad_header.as_bytes(), p).is_err());
        let bad_n = "method,b,n,replicate,elapsed_s,per_element_s\nxor,3,9,0,1,0.125\n";
        assert!(matches!(
            read_records(bad_n.as_bytes(), p),
            Err(BenchError::Parse { line: 2, .. })
        ));
        let bad_per = "method,b,n,replicate,elapsed_s,per_element_s\nxor,3,8,0,1,0.5\n";
        assert!(read_records(bad_per.as_bytes(), p).is_err());
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let err = write_csv(&[], Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
