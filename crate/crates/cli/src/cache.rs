//! Product cache on disk: a header line, then one JSON record per product.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use qkgr::qring::TermRecord;
use qkgr::{GrassCtx, Partition, QKElement, QkRing};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: &str = "qkgr-cache/1";

#[derive(Serialize, Deserialize)]
struct Header {
    version: String,
    m: usize,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    lambda: Partition,
    mu: Partition,
    product: Vec<TermRecord>,
}

/// Loads `path` into the ring's product cache; returns the number of
/// records, or zero when the file does not exist yet.
pub fn load(path: &Path, ring: &QkRing) -> Result<usize, CliError> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    let bad =
        |line: usize, msg: String| CliError::Usage(format!("{}:{line}: {msg}", path.display()));
    let mut lines = BufReader::new(file).lines();
    let header: Header = match lines.next() {
        Some(line) => serde_json::from_str(&line?).map_err(|e| bad(1, e.to_string()))?,
        None => return Err(bad(1, "empty cache file".into())),
    };
    if header.version != VERSION {
        return Err(bad(
            1,
            format!(
                "unsupported cache version {:?}, expected {VERSION:?}",
                header.version
            ),
        ));
    }
    let ctx = ring.ctx();
    if (header.m, header.n) != (ctx.m(), ctx.n()) {
        return Err(bad(
            1,
            format!("cache is for Gr({},{}), not {ctx}", header.m, header.n),
        ));
    }
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line).map_err(|e| bad(i + 2, e.to_string()))?;
        let product = QKElement::from_records(ctx, &record.product)?;
        ring.preload(&record.lambda, &record.mu, product)?;
        count += 1;
    }
    Ok(count)
}

/// Writes `table` in its given (deterministic) order.
pub fn store(
    path: &Path,
    ctx: GrassCtx,
    table: &[(Partition, Partition, QKElement)],
) -> Result<(), CliError> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    let header = Header {
        version: VERSION.into(),
        m: ctx.m(),
        n: ctx.n(),
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&header).expect("header serializes")
    )?;
    for (lambda, mu, product) in table {
        let record = Record {
            lambda: lambda.clone(),
            mu: mu.clone(),
            product: product.to_records(),
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )?;
    }
    out.flush()?;
    Ok(())
}
