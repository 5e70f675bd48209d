//! JSON and CSV reports. Both are byte-deterministic: records come sorted
//! from the census, invariants are a `BTreeMap`, and the run time is only
//! filled in on request.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use ssp_core::census::Census;

#[derive(Clone, Debug, Serialize)]
pub struct Referee {
    /// Name of the closed formula or reference table, if the family has one.
    pub formula: Option<String>,
    pub value: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Class<'a> {
    model: &'a [String],
    invariants: &'a BTreeMap<String, String>,
    raw_hits: u64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    family: &'a str,
    p: u64,
    field_degree: usize,
    count: usize,
    classes: Vec<Class<'a>>,
    referee: &'a Referee,
    runtime_ms: Option<u64>,
    seed: u64,
}

pub fn json(c: &Census, referee: &Referee, runtime_ms: Option<u64>, seed: u64) -> Vec<u8> {
    let classes = c.records.iter().map(|r| Class { model: &r.model, invariants: &r.invariants, raw_hits: r.raw_hits }).collect();
    let rep = Report { family: &c.family, p: c.p, field_degree: c.field_degree, count: c.count(), classes, referee, runtime_ms, seed };
    let mut out = serde_json::to_vec_pretty(&rep).expect("report serialises");
    out.push(b'\n');
    out
}

pub fn csv(c: &Census, referee: &Referee, runtime_ms: Option<u64>, seed: u64) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let head = ["family", "p", "field_degree", "count", "class_id", "model", "invariants", "raw_hits", "referee_formula", "referee_value", "runtime_ms", "seed"];
    w.write_record(head).expect("in-memory write");
    let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in &c.records {
        let inv: Vec<String> = r.invariants.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([
            c.family.clone(),
            c.p.to_string(),
            c.field_degree.to_string(),
            c.count().to_string(),
            r.class_id.to_string(),
            r.model.join(" "),
            inv.join(";"),
            r.raw_hits.to_string(),
            referee.formula.clone().unwrap_or_default(),
            opt(referee.value),
            opt(runtime_ms),
            seed.to_string(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Writes `bytes` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::other("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.partial", name.to_string_lossy()));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    std::fs::rename(&tmp, path)
}
