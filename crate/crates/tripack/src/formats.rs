//! Versioned JSON documents: `h3-v1` for 3-graphs, `pts-v1` for partial
//! triple systems (with an optional `five_block` for PBDs), plus the
//! certificate and search-report shapes printed by the CLI.
//!
//! Writers emit compact JSON with triples sorted and repeats adjacent, so a
//! canonical file survives a read/write cycle byte for byte.

use std::fmt;

use serde::{Deserialize, Serialize};
use tripack_core::designs::Pbd35;
use tripack_core::oracle::{SearchReport, Witness};
use tripack_core::{Hypergraph3, Multigraph, Triple, TripleSystem, Vertex};

pub const H3_FORMAT: &str = "h3-v1";
pub const PTS_FORMAT: &str = "pts-v1";

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    /// Missing or unknown `format` tag.
    Version(String),
    /// Well-formed JSON describing an invalid object.
    Content(tripack_core::Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed JSON: {e}"),
            FormatError::Version(v) => write!(f, "unsupported format {v:?}"),
            FormatError::Content(e) => write!(f, "invalid content: {e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<tripack_core::Error> for FormatError {
    fn from(e: tripack_core::Error) -> Self {
        FormatError::Content(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H3File {
    pub format: String,
    pub n: usize,
    pub triples: Vec<[Vertex; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PtsFile {
    pub format: String,
    pub nu: usize,
    pub lambda: usize,
    pub triples: Vec<[Vertex; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub five_block: Option<[Vertex; 5]>,
}

/// Any document this crate reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Hypergraph(Hypergraph3),
    System(TripleSystem),
    Pbd(Pbd35),
}

fn expand(h: &Hypergraph3) -> Vec<[Vertex; 3]> {
    h.expanded().map(Triple::vertices).collect()
}

fn triples(raw: &[[Vertex; 3]]) -> Result<Vec<Triple>, FormatError> {
    Ok(raw.iter().map(|&[a, b, c]| Triple::new(a, b, c)).collect::<tripack_core::Result<_>>()?)
}

impl H3File {
    pub fn from_hypergraph(h: &Hypergraph3) -> Self {
        H3File { format: H3_FORMAT.into(), n: h.n(), triples: expand(h) }
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph3, FormatError> {
        if self.format != H3_FORMAT {
            return Err(FormatError::Version(self.format.clone()));
        }
        Ok(Hypergraph3::from_triples(self.n, triples(&self.triples)?)?)
    }
}

impl PtsFile {
    pub fn from_system(ts: &TripleSystem) -> Self {
        PtsFile {
            format: PTS_FORMAT.into(),
            nu: ts.nu(),
            lambda: ts.lambda(),
            triples: expand(ts.as_hypergraph()),
            five_block: None,
        }
    }

    pub fn from_pbd(p: &Pbd35) -> Self {
        let mut triples: Vec<[Vertex; 3]> = p.triples.iter().map(|t| t.vertices()).collect();
        triples.sort_unstable();
        PtsFile { format: PTS_FORMAT.into(), nu: p.nu, lambda: 1, triples, five_block: Some(p.five_block) }
    }

    pub fn to_document(&self) -> Result<Document, FormatError> {
        if self.format != PTS_FORMAT {
            return Err(FormatError::Version(self.format.clone()));
        }
        let ts = TripleSystem::from_triples(self.nu, self.lambda, triples(&self.triples)?)?;
        match self.five_block {
            None => Ok(Document::System(ts)),
            Some(mut five_block) => {
                five_block.sort_unstable();
                let pbd = Pbd35 { nu: self.nu, five_block, triples: ts.into_hypergraph().expanded().collect() };
                if let Some(&v) = five_block.iter().find(|v| **v >= self.nu) {
                    return Err(tripack_core::Error::InvalidVertex { vertex: v, n: self.nu }.into());
                }
                Ok(Document::Pbd(pbd))
            }
        }
    }
}

pub fn hypergraph_to_json(h: &Hypergraph3) -> String {
    serde_json::to_string(&H3File::from_hypergraph(h)).expect("plain data serialises")
}

pub fn system_to_json(ts: &TripleSystem) -> String {
    serde_json::to_string(&PtsFile::from_system(ts)).expect("plain data serialises")
}

pub fn pbd_to_json(p: &Pbd35) -> String {
    serde_json::to_string(&PtsFile::from_pbd(p)).expect("plain data serialises")
}

pub fn document_to_json(doc: &Document) -> String {
    match doc {
        Document::Hypergraph(h) => hypergraph_to_json(h),
        Document::System(ts) => system_to_json(ts),
        Document::Pbd(p) => pbd_to_json(p),
    }
}

/// Reads either format, dispatching on the `format` tag.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("format").and_then(|f| f.as_str()) {
        Some(H3_FORMAT) => Ok(Document::Hypergraph(serde_json::from_value::<H3File>(value)?.to_hypergraph()?)),
        Some(PTS_FORMAT) => serde_json::from_value::<PtsFile>(value)?.to_document(),
        Some(other) => Err(FormatError::Version(other.into())),
        None => Err(FormatError::Version("<missing>".into())),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3, FormatError> {
    match parse_document(text)? {
        Document::Hypergraph(h) => Ok(h),
        _ => Err(FormatError::Version(PTS_FORMAT.into())),
    }
}

pub fn parse_system(text: &str) -> Result<TripleSystem, FormatError> {
    match parse_document(text)? {
        Document::System(ts) => Ok(ts),
        Document::Pbd(_) => Err(FormatError::Version("pts-v1 with five_block".into())),
        Document::Hypergraph(_) => Err(FormatError::Version(H3_FORMAT.into())),
    }
}

/// Edge list of a multigraph with repeats adjacent.
pub fn edge_list(g: &Multigraph) -> Vec<[Vertex; 2]> {
    g.iter().flat_map(|(p, m)| std::iter::repeat_n([p.lo(), p.hi()], m)).collect()
}

/// Side-channel report for `mpts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MptsCertificate {
    pub case_tag: String,
    pub nu: usize,
    pub lambda: usize,
    pub s: usize,
    pub e: usize,
    pub g: usize,
    pub leave_matching: usize,
    pub leave: Vec<[Vertex; 2]>,
}

/// Extremal certificate as printed by `extremal` and `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    pub e: usize,
    pub f: usize,
    pub delta2: usize,
    pub nu: usize,
    pub matching: usize,
    pub codegree: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl From<&tripack_core::extremal::Certificate> for ExtremalCertificate {
    fn from(c: &tripack_core::extremal::Certificate) -> Self {
        ExtremalCertificate {
            e: c.edge_count,
            f: c.bound,
            delta2: c.codegree_cap,
            nu: c.matching_cap,
            matching: c.matching_number,
            codegree: c.max_codegree,
            passed: c.passed,
            notes: c.notes.clone(),
        }
    }
}

/// Report printed by `verify` on a `pts-v1` file. Optional fields appear
/// only when the corresponding check was requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemCertificate {
    pub nu: usize,
    pub lambda: usize,
    pub e: usize,
    pub leave_edges: usize,
    pub leave_matching: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbd: Option<bool>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessFile {
    Hypergraph(H3File),
    System(PtsFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub optimum: usize,
    pub witness: WitnessFile,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub exhausted: bool,
}

impl From<&SearchReport> for ReportFile {
    fn from(r: &SearchReport) -> Self {
        let witness = match &r.witness {
            Witness::System(ts) => WitnessFile::System(PtsFile::from_system(ts)),
            Witness::Hypergraph(h) => WitnessFile::Hypergraph(H3File::from_hypergraph(h)),
        };
        ReportFile {
            optimum: r.optimum,
            witness,
            nodes: r.nodes,
            elapsed_ms: r.elapsed.as_millis().try_into().unwrap_or(u64::MAX),
            exhausted: r.exhausted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tripack_core::designs::{construct_pbd35, construct_sts};

    #[test]
    fn h3_layout() {
        let h = Hypergraph3::from_arrays(6, &[[3, 4, 5], [2, 1, 0], [0, 1, 2]]).unwrap();
        assert_eq!(hypergraph_to_json(&h), r#"{"format":"h3-v1","n":6,"triples":[[0,1,2],[0,1,2],[3,4,5]]}"#);
    }

    #[test]
    fn canonical_round_trip() {
        let text = system_to_json(&construct_sts(7).unwrap());
        assert!(text.starts_with(r#"{"format":"pts-v1","nu":7,"lambda":1,"triples":[[0,1,"#));
        let doc = parse_document(&text).unwrap();
        assert_eq!(document_to_json(&doc), text);
    }

    #[test]
    fn non_canonical_input_is_normalised() {
        let h = parse_hypergraph(r#"{"format":"h3-v1","n":5,"triples":[[4,3,2],[2,1,0]]}"#).unwrap();
        assert_eq!(hypergraph_to_json(&h), r#"{"format":"h3-v1","n":5,"triples":[[0,1,2],[2,3,4]]}"#);
    }

    #[test]
    fn pbd_keeps_five_block() {
        let p = construct_pbd35(11, 0).unwrap();
        let text = pbd_to_json(&p);
        assert!(text.ends_with(r#""five_block":[0,1,2,3,4]}"#));
        match parse_document(&text).unwrap() {
            Document::Pbd(q) => q.verify().unwrap(),
            other => panic!("expected a PBD, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_document("{"), Err(FormatError::Json(_))));
        assert!(matches!(parse_document(r#"{"format":"h3-v9","n":3,"triples":[]}"#), Err(FormatError::Version(_))));
        assert!(matches!(
            parse_document(r#"{"format":"h3-v1","n":3,"triples":[[0,1,3]]}"#),
            Err(FormatError::Content(_))
        ));
        assert!(matches!(
            parse_document(r#"{"format":"pts-v1","nu":3,"lambda":1,"triples":[[0,1,2],[0,1,2]]}"#),
            Err(FormatError::Content(_))
        ));
        assert!(parse_document(r#"{"format":"h3-v1","n":3,"triples":[],"extra":1}"#).is_err());
        assert!(parse_system(r#"{"format":"h3-v1","n":3,"triples":[]}"#).is_err());
    }
}
