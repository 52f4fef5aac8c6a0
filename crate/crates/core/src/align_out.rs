//! Count lines and SAM output.

use std::fmt;

use crate::error::{Error, Result};
use crate::index::CountResult;
use crate::seq_io::{SequenceCatalog, SequenceRecord};

pub const SAM_VERSION: &str = "1.6";
pub const FLAG_UNMAPPED: u16 = 4;
pub const FLAG_SECONDARY: u16 = 256;
/// MAPQ meaning "not available".
pub const MAPQ_UNKNOWN: u8 = 255;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedHit {
    pub reference_name: String,
    /// 1-based.
    pub position: usize,
}

/// Maps a global text offset to the sequence containing the whole match.
pub fn resolve(
    catalog: &SequenceCatalog,
    global_offset: usize,
    pattern_len: usize,
) -> Result<ResolvedHit> {
    let entry = catalog
        .entry_at(global_offset)
        .filter(|e| global_offset + pattern_len <= e.start + e.length)
        .ok_or(Error::UnresolvableOffset(global_offset))?;
    Ok(ResolvedHit {
        reference_name: entry.name.clone(),
        position: global_offset - entry.start + 1,
    })
}

/// `name<TAB>matched/len<TAB>occurrences<LF>`
pub fn format_count_record(read_name: &str, result: &CountResult) -> String {
    format!(
        "{}\t{}/{}\t{}\n",
        read_name, result.matched_len, result.pattern_len, result.occurrences
    )
}

/// `@HD`, one `@SQ` per catalog entry, then `@PG`. Every line ends in LF.
pub fn sam_header(catalog: &SequenceCatalog) -> String {
    let mut out = format!("@HD\tVN:{SAM_VERSION}\tSO:unknown\n");
    for e in catalog.entries() {
        out.push_str(&format!("@SQ\tSN:{}\tLN:{}\n", e.name, e.length));
    }
    out.push_str(&format!(
        "@PG\tID:ri-align\tPN:ri-align\tVN:{}\n",
        env!("CARGO_PKG_VERSION")
    ));
    out
}

/// Optional field such as `NH:i:22`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamTag {
    pub tag: String,
    pub kind: char,
    pub value: String,
}

impl SamTag {
    pub fn int(tag: &str, value: usize) -> Self {
        SamTag {
            tag: tag.to_string(),
            kind: 'i',
            value: value.to_string(),
        }
    }
}

impl fmt::Display for SamTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.tag, self.kind, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamRecord {
    pub qname: String,
    pub flag: u16,
    pub rname: String,
    pub pos: usize,
    pub mapq: u8,
    pub cigar: String,
    pub rnext: String,
    pub pnext: usize,
    pub tlen: i64,
    pub seq: String,
    pub qual: String,
    pub tags: Vec<SamTag>,
}

impl fmt::Display for SamRecord {
    /// One SAM line without the trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.qname,
            self.flag,
            self.rname,
            self.pos,
            self.mapq,
            self.cigar,
            self.rnext,
            self.pnext,
            self.tlen,
            self.seq,
            self.qual
        )?;
        for tag in &self.tags {
            write!(f, "\t{tag}")?;
        }
        Ok(())
    }
}

/// SAM records for one read: one per hit (the first primary, the rest
/// secondary), or a single unmapped record when there are no hits.
pub fn sam_records(
    read: &SequenceRecord,
    result: &CountResult,
    hits: &[ResolvedHit],
) -> Vec<SamRecord> {
    let seq = String::from_utf8_lossy(&read.bases).into_owned();
    let qual = read.quality.as_deref().map_or_else(
        || "*".to_string(),
        |q| String::from_utf8_lossy(q).into_owned(),
    );
    let base = SamRecord {
        qname: read.name.clone(),
        flag: FLAG_UNMAPPED,
        rname: "*".into(),
        pos: 0,
        mapq: 0,
        cigar: "*".into(),
        rnext: "*".into(),
        pnext: 0,
        tlen: 0,
        seq,
        qual,
        tags: Vec::new(),
    };

    if hits.is_empty() {
        // Full matches suppressed by --max-range keep their count.
        let nh = if result.is_full_match() {
            result.occurrences
        } else {
            0
        };
        return vec![SamRecord {
            tags: vec![SamTag::int("NH", nh)],
            ..base
        }];
    }

    let cigar = format!("{}M", read.bases.len());
    hits.iter()
        .enumerate()
        .map(|(i, hit)| SamRecord {
            flag: if i == 0 { 0 } else { FLAG_SECONDARY },
            rname: hit.reference_name.clone(),
            pos: hit.position,
            mapq: MAPQ_UNKNOWN,
            cigar: cigar.clone(),
            tags: vec![SamTag::int("NH", result.occurrences)],
            ..base.clone()
        })
        .collect()
}
