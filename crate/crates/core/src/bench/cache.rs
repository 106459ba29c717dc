use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{triangle_stats, Edge, Graph, TriangleStats};
use crate::hashing::splitmix64;
use crate::io::read_edge_list;

/// Exact statistics stored beside an edge-list file, keyed by a fingerprint
/// of the file's bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsSidecar {
    pub fingerprint: u64,
    pub stats: TriangleStats,
}

/// `<file>.stats.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".stats.json");
    path.with_file_name(name)
}

fn fingerprint(bytes: &[u8]) -> u64 {
    bytes.chunks(8).fold(splitmix64(bytes.len() as u64), |h, chunk| {
        let mut word = [0u8; 8];
        word[..chunk.len()].copy_from_slice(chunk);
        splitmix64(h ^ u64::from_le_bytes(word))
    })
}

/// Reads an edge list and its exact statistics, computing and writing the
/// sidecar when it is missing, unreadable or stale. Returns whether the
/// cached copy was used. The per-vertex and per-edge maps are not cached.
pub fn cached_stats(path: &Path) -> Result<(Vec<Edge>, TriangleStats, bool)> {
    let bytes = fs::read(path)?;
    let edges = read_edge_list(bytes.as_slice())?;
    let print = fingerprint(&bytes);
    let side = sidecar_path(path);
    if let Ok(text) = fs::read_to_string(&side) {
        if let Ok(cached) = serde_json::from_str::<StatsSidecar>(&text) {
            if cached.fingerprint == print {
                return Ok((edges, cached.stats, true));
            }
        }
    }
    let stats = triangle_stats(&Graph::from_edges(edges.iter().copied()));
    let sidecar = StatsSidecar {
        fingerprint: print,
        stats,
    };
    fs::write(&side, serde_json::to_string_pretty(&sidecar)?)?;
    Ok((edges, sidecar.stats, false))
}
