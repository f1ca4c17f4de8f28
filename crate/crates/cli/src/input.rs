use std::fs;
use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use prodlabel::graph::{parse_edge_list, parse_graph6};
use prodlabel::Graph;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    G6,
    Edges,
}

pub struct Loaded {
    pub graph: Graph,
    /// Original vertex names when an edge list had its ids compacted.
    pub original_ids: Option<Vec<usize>>,
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("reading {path}: {e}")))
    }
}

/// Explicit format, else the file extension, else a guess from the text:
/// edge lists contain whitespace-separated integers.
fn detect(path: &str, text: &str, format: Option<Format>) -> Format {
    if let Some(f) = format {
        return f;
    }
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some("g6") => return Format::G6,
        Some("edges" | "txt" | "el") => return Format::Edges,
        _ => {}
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().count() >= 2 || first.starts_with("n ") {
        Format::Edges
    } else {
        Format::G6
    }
}

pub fn load_graph(path: &str, format: Option<Format>) -> Result<Loaded, CliError> {
    let text = read_text(path)?;
    match detect(path, &text, format) {
        Format::G6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| CliError::precondition(format!("{path}: no graph6 line")))?;
            let graph = parse_graph6(line.as_bytes()).map_err(|e| CliError::precondition(e.to_string()))?;
            Ok(Loaded {
                graph,
                original_ids: None,
            })
        }
        Format::Edges => {
            let input = parse_edge_list(&text).map_err(|e| CliError::precondition(e.to_string()))?;
            for (u, v) in &input.duplicates {
                eprintln!("warning: duplicate edge {u} {v} ignored");
            }
            let identity = input.original_id.iter().enumerate().all(|(i, &v)| i == v);
            Ok(Loaded {
                graph: input.graph,
                original_ids: (!identity).then_some(input.original_id),
            })
        }
    }
}
