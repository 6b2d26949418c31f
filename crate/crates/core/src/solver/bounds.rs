//! Move-counting bounds.
//!
//! `max` counts the most dominoes a player could ever still place (each
//! straight run of `k` empty cells holds at most `k/2`). `safe` counts
//! disjoint placements the opponent can never cover: every cell has both
//! cross-direction neighbours already blocked.
//!
//! `spare` counts further disjoint placements, outside the safe cells, all
//! in columns (rows for Horizontal) of one parity, so a single enemy domino
//! can spoil at most one of them. Taking them first, the mover keeps at
//! least half, rounded up; the player moving second keeps half rounded
//! down.
//!
//! If the player to move is sure of more moves than the opponent could ever
//! make, the mover wins; if the opponent is sure of as many moves as the
//! mover could ever make, the mover loses.

use crate::board::{Player, Position};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MoveBounds {
    pub max_vertical: u32,
    pub max_horizontal: u32,
    pub safe_vertical: u32,
    pub safe_horizontal: u32,
    pub spare_vertical: u32,
    pub spare_horizontal: u32,
}

impl MoveBounds {
    pub fn of(p: &Position) -> Self {
        let rows = p.free_rows();
        let mut vertical_only = [0u64; 64];
        let mut horizontal_only = [0u64; 64];
        for (r, &bits) in rows.iter().enumerate() {
            vertical_only[r] = bits & !(bits << 1) & !(bits >> 1);
            let above = if r > 0 { rows[r - 1] } else { 0 };
            let below = rows.get(r + 1).copied().unwrap_or(0);
            horizontal_only[r] = bits & !above & !below;
        }
        let h = rows.len();
        const EVEN_COLUMNS: u64 = 0x5555_5555_5555_5555;
        let (mut v_even, mut v_odd) = ([0u64; 64], [0u64; 64]);
        let (mut h_even, mut h_odd) = ([0u64; 64], [0u64; 64]);
        for r in 0..h {
            let v = rows[r] & !vertical_only[r];
            v_even[r] = v & EVEN_COLUMNS;
            v_odd[r] = v & !EVEN_COLUMNS;
            let hz = rows[r] & !horizontal_only[r];
            if r % 2 == 0 {
                h_even[r] = hz;
            } else {
                h_odd[r] = hz;
            }
        }
        Self {
            max_vertical: column_pairs(rows),
            max_horizontal: row_pairs(rows),
            safe_vertical: column_pairs(&vertical_only[..h]),
            safe_horizontal: row_pairs(&horizontal_only[..h]),
            spare_vertical: column_pairs(&v_even[..h]).max(column_pairs(&v_odd[..h])),
            spare_horizontal: row_pairs(&h_even[..h]).max(row_pairs(&h_odd[..h])),
        }
    }

    /// Moves `player` can count on, moving first or second.
    pub fn assured(&self, player: Player, first: bool) -> u32 {
        let spare = match player {
            Player::Vertical => self.spare_vertical,
            Player::Horizontal => self.spare_horizontal,
        };
        self.safe(player) + if first { spare.div_ceil(2) } else { spare / 2 }
    }

    pub fn max(&self, player: Player) -> u32 {
        match player {
            Player::Vertical => self.max_vertical,
            Player::Horizontal => self.max_horizontal,
        }
    }

    pub fn safe(&self, player: Player) -> u32 {
        match player {
            Player::Vertical => self.safe_vertical,
            Player::Horizontal => self.safe_horizontal,
        }
    }

    pub fn accumulate(&mut self, other: MoveBounds) {
        self.max_vertical += other.max_vertical;
        self.max_horizontal += other.max_horizontal;
        self.safe_vertical += other.safe_vertical;
        self.safe_horizontal += other.safe_horizontal;
        self.spare_vertical += other.spare_vertical;
        self.spare_horizontal += other.spare_horizontal;
    }
}

/// Sum over columns of `floor(run / 2)` for each vertical run of set bits.
pub(crate) fn column_pairs(rows: &[u64]) -> u32 {
    let mut count = 0;
    let mut pending = 0u64;
    for &bits in rows {
        let paired = pending & bits;
        count += paired.count_ones();
        pending = bits & !paired;
    }
    count
}

/// Sum over rows of `floor(run / 2)` for each horizontal run of set bits.
pub(crate) fn row_pairs(rows: &[u64]) -> u32 {
    let mut count = 0;
    for &bits in rows {
        let mut x = bits;
        while x != 0 {
            let start = x.trailing_zeros();
            let run = (!(x >> start)).trailing_zeros();
            count += run / 2;
            if start + run >= 64 {
                break;
            }
            x &= !((1u64 << (start + run)) - 1);
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        assert_eq!(column_pairs(&[1, 1, 1, 1, 1]), 2);
        assert_eq!(column_pairs(&[0b11, 0b01, 0b11]), 1);
        assert_eq!(row_pairs(&[0b1110111]), 2);
        assert_eq!(row_pairs(&[u64::MAX]), 32);
        assert_eq!(row_pairs(&[0b1011]), 1);
    }

    #[test]
    fn rectangle_bounds() {
        let b = MoveBounds::of(&Position::rect(4, 5).unwrap());
        assert_eq!(b.max_vertical, 10);
        assert_eq!(b.max_horizontal, 8);
        assert_eq!(b.safe_vertical, 0);
        assert_eq!(b.safe_horizontal, 0);
        // a lone column is all safe for Vertical
        let b = MoveBounds::of(&Position::rect(5, 1).unwrap());
        assert_eq!((b.safe_vertical, b.max_horizontal), (2, 0));
    }

    #[test]
    fn masked_bounds() {
        let b = MoveBounds::of(&Position::from_ascii("...\n#.#\n#.#\n").unwrap());
        assert_eq!((b.safe_vertical, b.max_vertical), (1, 1));
        assert_eq!((b.safe_horizontal, b.max_horizontal), (0, 1));
        let b = MoveBounds::of(&Position::from_ascii("#.#\n...\n#.#\n").unwrap());
        assert_eq!((b.safe_vertical, b.max_vertical), (0, 1));
        let b = MoveBounds::of(&Position::from_ascii("#.#\n#.#\n#.#\n#.#\n").unwrap());
        assert_eq!(b.safe_vertical, 2);
    }
}
