//! Append-only chunk log.
//!
//! The first line records the chunk size, since chunk indices mean nothing
//! under another one. Every other line is
//! `<family> <p> <chunk> <status> <survivor...>` where the status is `done`
//! for an empty chunk and `survivors:k` otherwise, and survivors are scan
//! indices. A torn last line (crash mid-write) is ignored.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use ssp_core::par::ChunkLog;
use ssp_core::{Error, Result};

pub struct FileLog {
    family: String,
    p: u64,
    file: File,
    chunks: BTreeMap<u64, Vec<u64>>,
}

fn parse_line(line: &str, family: &str, p: u64) -> Option<(u64, Vec<u64>)> {
    let mut it = line.split(' ');
    if it.next()? != family || it.next()?.parse::<u64>().ok()? != p {
        return None;
    }
    let chunk = it.next()?.parse().ok()?;
    let want = match it.next()? {
        "done" => 0,
        s => s.strip_prefix("survivors:")?.parse().ok()?,
    };
    let surv: Vec<u64> = it.map(|x| x.parse().ok()).collect::<Option<_>>()?;
    (surv.len() == want).then_some((chunk, surv))
}

impl FileLog {
    pub fn open(path: &Path, family: &str, p: u64, chunk_size: u64) -> Result<FileLog> {
        let io = |e: std::io::Error| Error::Argument(format!("checkpoint {}: {e}", path.display()));
        let header = format!("# chunk-size {chunk_size}");
        let mut chunks = BTreeMap::new();
        let fresh = !path.exists();
        if !fresh {
            let text = BufReader::new(File::open(path).map_err(io)?);
            let mut lines = text.lines();
            match lines.next().transpose().map_err(io)? {
                Some(h) if h == header => {}
                Some(h) => return Err(Error::Argument(format!("checkpoint was written with `{h}`, this run uses `{header}`"))),
                None => {}
            }
            for line in lines {
                let line = line.map_err(io)?;
                if let Some((c, s)) = parse_line(&line, family, p) {
                    chunks.insert(c, s);
                }
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        if fresh || file.metadata().map_err(io)?.len() == 0 {
            writeln!(file, "{header}").map_err(io)?;
            file.sync_data().map_err(io)?;
        } else if !std::fs::read(path).map_err(io)?.ends_with(b"\n") {
            // close off a torn line so the next record starts cleanly
            writeln!(file).map_err(io)?;
            file.sync_data().map_err(io)?;
        }
        Ok(FileLog { family: family.into(), p, file, chunks })
    }
}

impl ChunkLog for FileLog {
    fn lookup(&self, chunk: u64) -> Option<Vec<u64>> {
        self.chunks.get(&chunk).cloned()
    }

    fn record(&mut self, chunk: u64, survivors: &[u64]) -> Result<()> {
        let status = if survivors.is_empty() { "done".to_string() } else { format!("survivors:{}", survivors.len()) };
        let mut line = format!("{} {} {chunk} {status}", self.family, self.p);
        for s in survivors {
            line.push_str(&format!(" {s}"));
        }
        line.push('\n');
        let io = |e: std::io::Error| Error::Internal(format!("checkpoint write: {e}"));
        self.file.write_all(line.as_bytes()).map_err(io)?;
        self.file.sync_data().map_err(io)?;
        self.chunks.insert(chunk, survivors.to_vec());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip() {
        assert_eq!(parse_line("hyper4 11 3 done", "hyper4", 11), Some((3, vec![])));
        assert_eq!(parse_line("hyper4 11 3 survivors:2 5 9", "hyper4", 11), Some((3, vec![5, 9])));
        assert_eq!(parse_line("hyper4 11 3 survivors:2 5", "hyper4", 11), None);
        assert_eq!(parse_line("hyper4 13 3 done", "hyper4", 11), None);
    }

    #[test]
    fn reopened_log_remembers_chunks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck");
        let mut log = FileLog::open(&path, "hyper4", 11, 100).unwrap();
        log.record(0, &[]).unwrap();
        log.record(2, &[7, 8]).unwrap();
        let again = FileLog::open(&path, "hyper4", 11, 100).unwrap();
        assert_eq!(again.lookup(2), Some(vec![7, 8]));
        assert_eq!(again.lookup(1), None);
        assert!(FileLog::open(&path, "hyper4", 11, 50).is_err());
    }
}
