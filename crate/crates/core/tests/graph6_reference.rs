//! graph6 strings produced by networkx's `to_graph6_bytes` for the same
//! labelled graphs, frozen here as an independent reference.

use eds_core::generators::{circulant, complete, cycle, hypercube, petersen};
use eds_core::{encode_graph6, parse_graph6, Graph};

fn reference() -> Vec<(Graph, &'static str)> {
    vec![
        (cycle(6).unwrap(), "EhEG"),
        (hypercube(3).unwrap(), "Gr`HOk"),
        (petersen(5, 2).unwrap(), "IheA@GUAo"),
        (complete(3).unwrap(), "Bw"),
        (circulant(9, &[1, 2]).unwrap(), "HzKW[NB"),
        (cycle(70).unwrap(), "~?@EhCGGC@?G?_@?@??_?G?@??C??G??G??C??@???G???_??@???@????_???G???@????C????G????G????C????@?????G?????_????@?????@??????_?????G?????@??????C??????G??????G??????C??????@???????G???????_??????@???????@????????_???????G???????@????????C????????G????????G????????C????????@?????????G?????????_????????@?????????@??????????_?????????G?????????@??????????C??????????G??????????G??????????C??????????@_??????????G"),
    ]
}

#[test]
fn encoder_matches_reference() {
    for (g, expected) in reference() {
        assert_eq!(encode_graph6(&g), expected, "n = {}", g.n());
    }
}

#[test]
fn parser_inverts_reference() {
    for (g, s) in reference() {
        let parsed = parse_graph6(s).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(encode_graph6(&parsed), s);
    }
}
