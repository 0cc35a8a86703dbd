#![no_main]

use libfuzzer_sys::fuzz_target;
use otis_layout::canon::canonical_form;
use otis_layout::format::parse_graph;
use otis_layout::heuchenne::is_nth_line_digraph;
use otis_layout::SizeBound;

// Parsed graphs small enough to analyze go through recognition and canonical labeling.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_graph(text) else { return };
    if g.vertex_count() > 64 || g.total_arcs() > 512 {
        return;
    }
    if let Ok(verdict) = is_nth_line_digraph(&g, 1) {
        if let Some(witness) = verdict.failure {
            assert!(witness.recheck(&g));
        }
    }
    let form = canonical_form(&g, SizeBound(64)).expect("within bound");
    let mut reversed: Vec<usize> = (0..g.vertex_count()).rev().collect();
    reversed.rotate_left(g.vertex_count() / 3);
    let relabeled = g.relabel(&reversed).unwrap();
    assert_eq!(canonical_form(&relabeled, SizeBound(64)).unwrap(), form);
});
