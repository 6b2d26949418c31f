mod support;

#[test]
fn algebra_laws() {
    support::algebra_laws(10_000, 1).unwrap();
}

#[test]
fn search_matches_values() {
    support::search_matches_values(1_000, 2).unwrap();
}

#[test]
fn mirror_pairs_are_second_player_wins() {
    support::mirror_pairs(1_000, 3).unwrap();
}

#[test]
fn propagation_agrees_with_search() {
    support::propagation_sound().unwrap();
}

#[test]
fn propagation_is_confluent() {
    support::propagation_confluent(20, 4).unwrap();
}

