mod common;

#[test]
fn connected_graph_counts_match_known_sequence() {
    // Connected unlabeled graphs on n = 1..7 vertices.
    let expected = [1, 1, 2, 6, 21, 112, 853];
    let graphs = common::connected_graphs(7);
    for (n, &want) in (1..=7).zip(expected.iter()) {
        assert_eq!(graphs.iter().filter(|g| g.vertex_count() == n).count(), want, "n = {n}");
    }
}
