//! `rounds.csv`: one [`RoundRecord`] per line, RFC 4180.
//!
//! Columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `repeat`, `step`, `round` | position in the run; `round` is 1 or 2 |
//! | `society`, `mode` | preset name and `stable`/`svoie` |
//! | `proposer`, `responder` | agent ids |
//! | `proposer_svo`, `responder_svo` | `altr`, `coop` or `self` |
//! | `proposer_policy`, `responder_policy` | policy used for this decision |
//! | `offer`, `request` | chip letters (`R`,`B`,`G`,`Y`), `-` when empty |
//! | `accepted` | `true`/`false` |
//! | `score_p`, `score_r` | round scores |
//! | `goal_p`, `goal_r` | whether each agent ended on the goal |
//! | `emotion_p`, `emotion_r` | valence after the end-of-round update |

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::society::RoundRecord;

pub const ROUNDS_SCHEMA: &str = "svoie-rounds/1";
pub const ROUNDS_FILE: &str = "rounds.csv";

pub struct RoundWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl RoundWriter<BufWriter<File>> {
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        Ok(RoundWriter::new(BufWriter::with_capacity(1 << 16, file)))
    }
}

impl<W: Write> RoundWriter<W> {
    pub fn new(writer: W) -> Self {
        RoundWriter { inner: csv::WriterBuilder::new().has_headers(true).from_writer(writer) }
    }

    pub fn write(&mut self, record: &RoundRecord) -> Result<()> {
        self.inner.serialize(record)?;
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        self.inner.into_inner().map_err(|e| Error::Format(format!("flushing round log: {}", e.error())))
    }
}

/// Streams records out of a round log.
pub fn read_rounds<R: Read>(reader: R) -> impl Iterator<Item = Result<RoundRecord>> {
    csv::Reader::from_reader(reader).into_deserialize().map(|r| r.map_err(Error::from))
}

pub fn read_rounds_file(path: &Path) -> Result<impl Iterator<Item = Result<RoundRecord>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(read_rounds(std::io::BufReader::new(file)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emotion::Mode;
    use crate::society::{run_simulation, SimulationConfig, SocietyConfig, SocietyPreset, TraitCounts};

    #[test]
    fn log_round_trips() {
        let config = SimulationConfig {
            society: SocietyConfig {
                name: SocietyPreset::AltrSelf,
                counts: TraitCounts { altr: 3, coop: 0, selfish: 3 },
                mode: Mode::Svoie,
            },
            steps: 4,
            repeats: 2,
            master_seed: 77,
        };
        let records = run_simulation(&config).unwrap();
        let mut w = RoundWriter::new(Vec::new());
        for r in &records {
            w.write(r).unwrap();
        }
        let bytes = w.finish().unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("repeat,step,round,society,mode,proposer,responder,"));
        assert_eq!(text.lines().count(), records.len() + 1);

        let back: Vec<RoundRecord> = read_rounds(&bytes[..]).collect::<Result<_>>().unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn malformed_row_is_format_error() {
        let text = "repeat,step\n1,x\n";
        let err = read_rounds(text.as_bytes()).next().unwrap().unwrap_err();
        assert_eq!(err.class(), "format");
    }
}
