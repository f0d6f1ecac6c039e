//! Reading edge lists (plain or gzip) and writing result files.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use cdel_core::graph::{parse_edge_list, write_edge_list};
use cdel_core::{Clustering, Graph, HalfIntegralSolution, ParseError, WedgeSet};
use flate2::read::MultiGzDecoder;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {msg}")]
    Gml { path: String, msg: String },
}

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

/// Decompresses `bytes` when they start with the gzip magic number.
pub fn maybe_gunzip(bytes: Vec<u8>) -> io::Result<Vec<u8>> {
    if bytes.starts_with(&GZIP_MAGIC) {
        let mut out = Vec::new();
        MultiGzDecoder::new(&bytes[..]).read_to_end(&mut out)?;
        Ok(out)
    } else {
        Ok(bytes)
    }
}

/// Reads an edge list, or a GML file when the name ends in `.gml` or
/// `.gml.gz`.
pub fn read_graph(path: &Path) -> Result<Graph, InputError> {
    let name = path.display().to_string();
    let io_err = |source| InputError::Io { path: name.clone(), source };
    let bytes = fs::read(path).map_err(io_err)?;
    let text = maybe_gunzip(bytes).map_err(io_err)?;
    if name.ends_with(".gml") || name.ends_with(".gml.gz") {
        let text = String::from_utf8(text).map_err(|_| InputError::Gml {
            path: name.clone(),
            msg: "not valid UTF-8".into(),
        })?;
        return parse_gml(&text).map_err(|msg| InputError::Gml { path: name, msg });
    }
    parse_edge_list(&text).map_err(|source| InputError::Parse { path: name, source })
}

/// Minimal GML reader: node `id`s and edge `source`/`target` pairs with
/// integer ids. Quoted strings are skipped; other keys are ignored.
pub fn parse_gml(text: &str) -> Result<Graph, String> {
    let mut tokens = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        rest = &rest[start..];
        if let Some(quoted) = rest.strip_prefix('"') {
            let end = quoted.find('"').ok_or("unterminated string")?;
            tokens.push("\"\"");
            rest = &quoted[end + 1..];
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            tokens.push(&rest[..end]);
            rest = &rest[end..];
        }
    }

    let mut labels: Vec<u64> = Vec::new();
    let mut ids = std::collections::HashMap::new();
    let mut intern = |label: u64| {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };
    let number = |tok: Option<&&str>, key: &str| -> Result<u64, String> {
        let tok = tok.ok_or_else(|| format!("missing value for {key}"))?;
        tok.parse().map_err(|_| format!("{key} {tok:?} is not a non-negative integer"))
    };
    let mut pairs = Vec::new();
    // Enclosing block keys, innermost last.
    let mut blocks: Vec<&str> = Vec::new();
    let (mut source, mut target) = (None, None);
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        match tok {
            "[" => return Err("unexpected '['".into()),
            "]" => {
                if blocks.pop() == Some("edge") {
                    match (source.take(), target.take()) {
                        (Some(s), Some(t)) => pairs.push((s, t)),
                        _ => return Err("edge without source and target".into()),
                    }
                }
                i += 1;
            }
            key if tokens.get(i + 1) == Some(&"[") => {
                blocks.push(key);
                i += 2;
            }
            key => {
                match (blocks.last().copied(), key) {
                    (Some("node"), "id") => {
                        intern(number(tokens.get(i + 1), key)?);
                    }
                    (Some("edge"), "source") => source = Some(intern(number(tokens.get(i + 1), key)?)),
                    (Some("edge"), "target") => target = Some(intern(number(tokens.get(i + 1), key)?)),
                    _ => {}
                }
                i += 2;
            }
        }
    }
    if !blocks.is_empty() {
        return Err("unbalanced brackets".into());
    }
    Ok(Graph::from_labeled_edges(labels, pairs))
}

/// One `label cluster_id` line per node, in node order.
pub fn write_clustering<W: Write + ?Sized>(g: &Graph, clustering: &Clustering, out: &mut W) -> io::Result<()> {
    for v in 0..g.n() {
        writeln!(out, "{} {}", g.label(v), clustering.cluster_of(v))?;
    }
    Ok(())
}

/// One `i j k` line per wedge, as labels; `k` is the center.
pub fn write_wedges<W: Write + ?Sized>(g: &Graph, ws: &WedgeSet, out: &mut W) -> io::Result<()> {
    for w in &ws.wedges {
        writeln!(out, "{} {} {}", g.label(w.i), g.label(w.j), g.label(w.k))?;
    }
    Ok(())
}

/// One `u v half_units` line per edge.
pub fn write_lp<W: Write + ?Sized>(g: &Graph, sol: &HalfIntegralSolution, out: &mut W) -> io::Result<()> {
    for (&(u, v), &x) in g.edges().iter().zip(&sol.values) {
        writeln!(out, "{} {} {}", g.label(u), g.label(v), x)?;
    }
    Ok(())
}

pub fn write_graph<W: Write + ?Sized>(g: &Graph, out: &mut W) -> io::Result<()> {
    let mut text = String::new();
    write_edge_list(g, &mut text).expect("writing to a String cannot fail");
    out.write_all(text.as_bytes())
}

/// Writes to `path`, or to stdout for `None` or `-`.
pub fn with_output<F>(path: Option<&Path>, f: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) if p != Path::new("-") => {
            let mut file = io::BufWriter::new(fs::File::create(p)?);
            f(&mut file)?;
            file.flush()
        }
        _ => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)?;
            lock.flush()
        }
    }
}
