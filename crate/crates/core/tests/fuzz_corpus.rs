//! Replays the checked-in fuzz corpus through the fuzz targets' assertions.

use std::fs;
use std::path::PathBuf;

use otis_layout::canon::canonical_form;
use otis_layout::format::{parse_edge_list, parse_graph, parse_json, to_edge_list, to_json};
use otis_layout::heuchenne::is_nth_line_digraph;
use otis_layout::SizeBound;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut seeds: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    seeds.sort();
    assert!(!seeds.is_empty(), "no seeds in {}", dir.display());
    seeds
}

#[test]
fn edge_list_seeds() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_edge_list") {
        if let Ok(g) = parse_edge_list(&text) {
            assert_eq!(
                parse_edge_list(&to_edge_list(&g)).unwrap(),
                g,
                "{}",
                path.display()
            );
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn json_seeds() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_json") {
        if let Ok(g) = parse_json(&text) {
            assert_eq!(parse_json(&to_json(&g)).unwrap(), g, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn roundtrip_seeds() {
    for (path, text) in seeds("graph_roundtrip") {
        let g = parse_graph(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if let Ok(verdict) = is_nth_line_digraph(&g, 1) {
            if let Some(witness) = verdict.failure {
                assert!(witness.recheck(&g));
            }
        }
        let form = canonical_form(&g, SizeBound(64)).unwrap();
        let mut reversed: Vec<usize> = (0..g.vertex_count()).rev().collect();
        reversed.rotate_left(g.vertex_count() / 3);
        let relabeled = g.relabel(&reversed).unwrap();
        assert_eq!(canonical_form(&relabeled, SizeBound(64)).unwrap(), form);
    }
}
