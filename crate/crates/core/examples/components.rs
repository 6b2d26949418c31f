//! Boards, moves, components and the symmetries used for caching.

use domineering::{Player, Position};

fn main() {
    let p = Position::rect(2, 5).unwrap();
    let mv = p.legal_moves(Player::Vertical)[2];
    let after = p.play(mv).unwrap();
    println!("{mv} on 2x5:\n{}", after.to_ascii());
    for c in after.components() {
        println!("component {}x{}:\n{}", c.height(), c.width(), c.to_ascii());
    }

    let board = Position::from_ascii("...#\n....\n#...\n").unwrap();
    println!("mirrored:\n{}", board.mirror_horizontal().to_ascii());
    println!("same key: {}", board.normalize_key() == board.rotate_180().normalize_key());
    // a quarter turn exchanges the players, so it is a different key
    println!("quarter turn same key: {}", board.normalize_key() == board.rotate_90().normalize_key());
}
