use std::io::Write;

use carlitz_core::{CongruenceCheck, Identity};
use serde::{Serialize, Serializer};

use crate::config::Format;

/// One output line. Field order is the JSONL key order and the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    #[serde(serialize_with = "serialize_tag")]
    pub identity: Identity,
    pub p: u64,
    pub params: Vec<u64>,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "match")]
    pub matched: bool,
    pub us: u64,
}

fn serialize_tag<S: Serializer>(id: &Identity, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(id.tag())
}

impl ReportRecord {
    pub fn new(check: &CongruenceCheck, us: u64) -> Self {
        Self {
            identity: check.identity,
            p: check.p,
            params: check.params.clone(),
            modulus: check.modulus.to_string(),
            lhs: check.lhs.to_string(),
            rhs: check.rhs.to_string(),
            matched: check.verdict,
            us,
        }
    }

    pub fn sort_key(&self) -> (u64, Identity, &[u64]) {
        (self.p, self.identity, &self.params)
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "identity", "p", "params", "modulus", "lhs", "rhs", "match", "us",
];

pub enum ReportWriter<W: Write> {
    Jsonl(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> ReportWriter<W> {
    pub fn new(format: Format, out: W) -> std::io::Result<Self> {
        Ok(match format {
            Format::Jsonl => ReportWriter::Jsonl(out),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(CSV_HEADER)?;
                ReportWriter::Csv(Box::new(w))
            }
        })
    }

    pub fn write(&mut self, record: &ReportRecord) -> std::io::Result<()> {
        match self {
            ReportWriter::Jsonl(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")
            }
            ReportWriter::Csv(w) => {
                let params = record
                    .params
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    record.identity.tag().to_owned(),
                    record.p.to_string(),
                    params,
                    record.modulus.clone(),
                    record.lhs.clone(),
                    record.rhs.clone(),
                    record.matched.to_string(),
                    record.us.to_string(),
                ])?;
                Ok(())
            }
        }
    }

    pub fn finish(self) -> std::io::Result<()> {
        match self {
            ReportWriter::Jsonl(mut w) => w.flush(),
            ReportWriter::Csv(mut w) => w.flush(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use carlitz_core::congruences::PrimeContext;
    use carlitz_core::OddPrime;

    fn sample() -> ReportRecord {
        let check = PrimeContext::new(OddPrime::new(5).unwrap())
            .verify_theorem_1_1(3)
            .unwrap();
        ReportRecord::new(&check, 0)
    }

    #[test]
    fn jsonl_shape_is_fixed() {
        let mut w = ReportWriter::new(Format::Jsonl, Vec::new()).unwrap();
        w.write(&sample()).unwrap();
        let ReportWriter::Jsonl(buf) = w else {
            unreachable!()
        };
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"identity\":\"theorem_1_1\",\"p\":5,\"params\":[3],\"modulus\":\"625\",\
             \"lhs\":\"346\",\"rhs\":\"346\",\"match\":true,\"us\":0}\n"
        );
    }

    #[test]
    fn csv_has_header_and_mirrors_keys() {
        let mut buf = Vec::new();
        {
            let mut w = ReportWriter::new(Format::Csv, &mut buf).unwrap();
            w.write(&sample()).unwrap();
            w.finish().unwrap();
        }
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "identity,p,params,modulus,lhs,rhs,match,us\ntheorem_1_1,5,3,625,346,346,true,0\n"
        );
    }
}
