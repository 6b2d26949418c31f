//! Domineering positions.
//!
//! A [`Position`] is a rectangle of cells, some of them blocked. Cells are
//! indexed row-major from the top-left; each row is one `u64` whose bit `c`
//! is set when cell `(row, c)` is empty and playable. Vertical covers
//! `(r, c), (r + 1, c)`; Horizontal covers `(r, c), (r, c + 1)`.

mod ascii;

use std::fmt;

use smallvec::SmallVec;

use crate::cgt::OutcomeClass;

/// Largest supported side length.
pub const MAX_SIDE: usize = 64;
/// Largest supported cell count.
pub const MAX_CELLS: usize = 1024;

type Rows = SmallVec<[u64; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoardError {
    #[error("board size {height}x{width} out of range (sides 1..={MAX_SIDE}, at most {MAX_CELLS} cells)")]
    Size { height: usize, width: usize },
    #[error("line {line}: {message}")]
    Ascii { line: usize, message: String },
    #[error("illegal move {0}")]
    IllegalMove(Move),
}

/// The two players. Vertical is Left in the game algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Vertical,
    Horizontal,
}

impl Player {
    pub fn opponent(self) -> Self {
        match self {
            Player::Vertical => Player::Horizontal,
            Player::Horizontal => Player::Vertical,
        }
    }

    /// The outcome class meaning "this player wins regardless of who starts".
    pub fn winning_class(self) -> OutcomeClass {
        match self {
            Player::Vertical => OutcomeClass::V,
            Player::Horizontal => OutcomeClass::H,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Vertical => "V",
            Player::Horizontal => "H",
        })
    }
}

/// A domino placement anchored at its top (Vertical) or left (Horizontal) cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub player: Player,
    pub row: u8,
    pub col: u8,
}

impl Move {
    pub fn new(player: Player, row: usize, col: usize) -> Self {
        Self {
            player,
            row: row as u8,
            col: col as u8,
        }
    }

    /// The second cell covered by the domino.
    pub fn other_cell(self) -> (usize, usize) {
        match self.player {
            Player::Vertical => (self.row as usize + 1, self.col as usize),
            Player::Horizontal => (self.row as usize, self.col as usize + 1),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@({},{})", self.player, self.row, self.col)
    }
}

/// A Domineering board: dimensions plus the set of empty cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    height: u8,
    width: u8,
    free: Rows,
}

/// Transposition-table key: a position reduced modulo the player-preserving
/// symmetries (both mirror images and the half turn).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionKey(Position);

impl PositionKey {
    pub fn position(&self) -> &Position {
        &self.0
    }

    pub fn into_position(self) -> Position {
        self.0
    }
}

fn row_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn check_size(height: usize, width: usize) -> Result<(), BoardError> {
    if height == 0 || width == 0 || height > MAX_SIDE || width > MAX_SIDE || height * width > MAX_CELLS {
        return Err(BoardError::Size { height, width });
    }
    Ok(())
}

impl Position {
    /// The empty `height x width` rectangle.
    pub fn rect(height: usize, width: usize) -> Result<Self, BoardError> {
        check_size(height, width)?;
        Ok(Self {
            height: height as u8,
            width: width as u8,
            free: smallvec::smallvec![row_mask(width); height],
        })
    }

    /// A board from per-row bitmasks of empty cells; bits beyond the width
    /// are ignored.
    pub fn from_free_rows(width: usize, rows: &[u64]) -> Result<Self, BoardError> {
        check_size(rows.len(), width)?;
        let mask = row_mask(width);
        Ok(Self {
            height: rows.len() as u8,
            width: width as u8,
            free: rows.iter().map(|r| r & mask).collect(),
        })
    }

    pub fn height(&self) -> usize {
        self.height as usize
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Bitmask of empty cells in `row`.
    pub fn free_row(&self, row: usize) -> u64 {
        self.free[row]
    }

    pub fn free_rows(&self) -> &[u64] {
        &self.free
    }

    pub fn is_free(&self, row: usize, col: usize) -> bool {
        row < self.height() && col < self.width() && self.free[row] >> col & 1 == 1
    }

    pub fn is_blocked(&self, row: usize, col: usize) -> bool {
        !self.is_free(row, col)
    }

    /// Copy of the board with one more blocked cell.
    pub fn with_blocked(&self, row: usize, col: usize) -> Self {
        let mut p = self.clone();
        if row < p.height() && col < p.width() {
            p.free[row] &= !(1u64 << col);
        }
        p
    }

    pub fn empty_cells(&self) -> usize {
        self.free.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_rect(&self) -> bool {
        let mask = row_mask(self.width());
        self.free.iter().all(|&r| r == mask)
    }

    /// Bitmask of anchor columns of `player`'s moves in `row`.
    pub fn move_anchors(&self, player: Player, row: usize) -> u64 {
        match player {
            Player::Vertical => {
                if row + 1 < self.height() {
                    self.free[row] & self.free[row + 1]
                } else {
                    0
                }
            }
            Player::Horizontal => self.free[row] & (self.free[row] >> 1),
        }
    }

    pub fn move_count(&self, player: Player) -> usize {
        (0..self.height())
            .map(|r| self.move_anchors(player, r).count_ones() as usize)
            .sum()
    }

    pub fn has_move(&self, player: Player) -> bool {
        (0..self.height()).any(|r| self.move_anchors(player, r) != 0)
    }

    /// All legal placements for `player`, row-major by anchor.
    pub fn legal_moves(&self, player: Player) -> Vec<Move> {
        let mut moves = Vec::new();
        for r in 0..self.height() {
            let mut anchors = self.move_anchors(player, r);
            while anchors != 0 {
                let c = anchors.trailing_zeros() as usize;
                anchors &= anchors - 1;
                moves.push(Move::new(player, r, c));
            }
        }
        moves
    }

    pub fn is_legal(&self, mv: Move) -> bool {
        let (r, c) = (mv.row as usize, mv.col as usize);
        let (r2, c2) = mv.other_cell();
        self.is_free(r, c) && self.is_free(r2, c2)
    }

    /// Places `mv`, blocking both covered cells.
    pub fn play(&self, mv: Move) -> Result<Self, BoardError> {
        if !self.is_legal(mv) {
            return Err(BoardError::IllegalMove(mv));
        }
        Ok(self.play_unchecked(mv))
    }

    pub(crate) fn play_unchecked(&self, mv: Move) -> Self {
        let mut p = self.clone();
        let (r, c) = (mv.row as usize, mv.col as usize);
        match mv.player {
            Player::Vertical => {
                p.free[r] &= !(1u64 << c);
                p.free[r + 1] &= !(1u64 << c);
            }
            Player::Horizontal => p.free[r] &= !(3u64 << c),
        }
        p
    }

    /// The empty cells split into 4-connected components, each cropped to
    /// its bounding box, ordered by their first cell in row-major order.
    pub fn components(&self) -> Vec<Position> {
        let h = self.height();
        let mut remaining: Rows = self.free.clone();
        let mut out = Vec::new();
        for start in 0..h {
            while remaining[start] != 0 {
                let seed = remaining[start] & remaining[start].wrapping_neg();
                let mut comp: Rows = smallvec::smallvec![0; h];
                comp[start] = fill_runs(remaining[start], seed);
                // rows above `start` are already exhausted
                let top = start;
                let mut bottom = start;
                loop {
                    for r in top + 1..h {
                        let s = comp[r - 1] & remaining[r] & !comp[r];
                        if s != 0 {
                            comp[r] |= fill_runs(remaining[r], s);
                            bottom = bottom.max(r);
                        } else if r > bottom {
                            break;
                        }
                    }
                    let mut grew = false;
                    for r in (top..bottom).rev() {
                        let s = comp[r + 1] & remaining[r] & !comp[r];
                        if s != 0 {
                            comp[r] |= fill_runs(remaining[r], s);
                            grew = true;
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                for r in top..=bottom {
                    remaining[r] &= !comp[r];
                }
                out.push(crop(&comp[top..=bottom]));
            }
        }
        out
    }

    /// Reflection across the main diagonal; exchanges the players' roles.
    pub fn transpose(&self) -> Self {
        let (h, w) = (self.height(), self.width());
        let mut rows: Rows = smallvec::smallvec![0; w];
        for (r, &bits) in self.free.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let c = b.trailing_zeros() as usize;
                b &= b - 1;
                rows[c] |= 1u64 << r;
            }
        }
        Self {
            height: w as u8,
            width: h as u8,
            free: rows,
        }
    }

    /// Left-right mirror image.
    pub fn mirror_horizontal(&self) -> Self {
        let shift = 64 - self.width() as u32;
        Self {
            height: self.height,
            width: self.width,
            free: self.free.iter().map(|r| r.reverse_bits() >> shift).collect(),
        }
    }

    /// Top-bottom mirror image.
    pub fn mirror_vertical(&self) -> Self {
        Self {
            height: self.height,
            width: self.width,
            free: self.free.iter().rev().copied().collect(),
        }
    }

    pub fn rotate_180(&self) -> Self {
        self.mirror_horizontal().mirror_vertical()
    }

    /// Quarter turn clockwise. Like [`Position::transpose`], this maps a
    /// position to its player-swapped counterpart.
    pub fn rotate_90(&self) -> Self {
        self.transpose().mirror_horizontal()
    }

    /// Representative of the orbit under both mirrors and the half turn.
    pub fn normalize(&self) -> Position {
        let a = self.mirror_horizontal();
        let b = self.mirror_vertical();
        let c = a.mirror_vertical();
        [a, b, c]
            .into_iter()
            .fold(self.clone(), |best, p| if p.free < best.free { p } else { best })
    }

    pub fn normalize_key(&self) -> PositionKey {
        PositionKey(self.normalize())
    }

    /// The outcome class of the transposed board given this board's class.
    pub fn transposed_class(class: OutcomeClass) -> OutcomeClass {
        class.swap_players()
    }
}

/// The runs of set bits in `x` that contain a bit of `seed`.
fn fill_runs(x: u64, seed: u64) -> u64 {
    let s = seed & x;
    let up = (x & !x.wrapping_add(s)) | s;
    let (xr, sr) = (x.reverse_bits(), s.reverse_bits());
    let down = ((xr & !xr.wrapping_add(sr)) | sr).reverse_bits();
    up | down
}

/// Position spanning exactly the bounding box of `rows`' set bits.
fn crop(rows: &[u64]) -> Position {
    let any = rows.iter().fold(0u64, |a, &r| a | r);
    let lo = any.trailing_zeros();
    let hi = 63 - any.leading_zeros();
    let width = (hi - lo + 1) as usize;
    Position {
        height: rows.len() as u8,
        width: width as u8,
        free: rows.iter().map(|r| r >> lo).collect(),
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position {}x{}:\n{}", self.height, self.width, self.to_ascii())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_masks(h: usize, w: usize) -> impl Iterator<Item = Position> {
        let cells = h * w;
        (0u32..(1 << cells)).map(move |bits| {
            let rows: Vec<u64> = (0..h).map(|r| ((bits >> (r * w)) as u64) & row_mask(w)).collect();
            Position::from_free_rows(w, &rows).unwrap()
        })
    }

    /// Brute-force move list straight from the cell predicate.
    fn brute_moves(p: &Position, player: Player) -> Vec<Move> {
        let mut out = Vec::new();
        for r in 0..p.height() {
            for c in 0..p.width() {
                let mv = Move::new(player, r, c);
                let (r2, c2) = mv.other_cell();
                if p.is_free(r, c) && p.is_free(r2, c2) {
                    out.push(mv);
                }
            }
        }
        out
    }

    #[test]
    fn rect_sizes() {
        let p = Position::rect(1, 1).unwrap();
        assert!(p.legal_moves(Player::Vertical).is_empty());
        assert!(p.legal_moves(Player::Horizontal).is_empty());
        let p = Position::rect(2, 2).unwrap();
        assert_eq!(p.legal_moves(Player::Vertical).len(), 2);
        assert_eq!(p.legal_moves(Player::Horizontal).len(), 2);
        assert_eq!(Position::rect(9, 7).unwrap().empty_cells(), 63);
        assert_eq!(Position::rect(19, 2).unwrap().empty_cells(), 38);
        assert!(Position::rect(0, 3).is_err());
        assert!(Position::rect(33, 33).is_err());
        assert!(Position::rect(16, 65).is_err());
        assert!(Position::rect(16, 64).is_ok());
    }

    #[test]
    fn move_lists() {
        let p = Position::rect(1, 2).unwrap();
        assert!(p.legal_moves(Player::Vertical).is_empty());
        assert_eq!(p.legal_moves(Player::Horizontal).len(), 1);
        let p = Position::rect(2, 3).unwrap();
        assert_eq!(p.legal_moves(Player::Vertical).len(), 3);
        assert_eq!(p.legal_moves(Player::Horizontal).len(), 4);
    }

    #[test]
    fn play_blocks_cells() {
        let p = Position::rect(2, 1).unwrap();
        let mv = p.legal_moves(Player::Vertical)[0];
        let q = p.play(mv).unwrap();
        assert_eq!(q.empty_cells(), 0);
        assert!(q.play(mv).is_err());
        assert!(p.play(Move::new(Player::Horizontal, 0, 0)).is_err());
    }

    #[test]
    fn center_column_splits_two_by_five() {
        let p = Position::rect(2, 5).unwrap().play(Move::new(Player::Vertical, 0, 2)).unwrap();
        let comps = p.components();
        assert_eq!(comps, vec![Position::rect(2, 2).unwrap(), Position::rect(2, 2).unwrap()]);
    }

    #[test]
    fn run_fill() {
        assert_eq!(fill_runs(0b0111100, 0b0000100), 0b0111100);
        assert_eq!(fill_runs(0b0111100, 0b0010000), 0b0111100);
        assert_eq!(fill_runs(0b1101101, 0b0001000), 0b0001100);
        assert_eq!(fill_runs(0b1101101, 0b1000001), 0b1100001);
        assert_eq!(fill_runs(u64::MAX, 1 << 40), u64::MAX);
        assert_eq!(fill_runs(0b1010, 0), 0);
    }

    #[test]
    fn components_basic() {
        assert_eq!(Position::rect(3, 3).unwrap().components().len(), 1);
        let p = Position::rect(3, 5).unwrap();
        let p = (0..3).fold(p, |p, r| p.with_blocked(r, 2));
        let comps = p.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| *c == Position::rect(3, 2).unwrap()));
        let lone = Position::from_free_rows(3, &[0b001, 0b100]).unwrap().components();
        assert_eq!(lone, vec![Position::rect(1, 1).unwrap(), Position::rect(1, 1).unwrap()]);
    }

    #[test]
    fn moves_match_brute_force_on_small_boards() {
        for (h, w) in [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
            for p in all_masks(h, w) {
                for player in [Player::Vertical, Player::Horizontal] {
                    let listed = p.legal_moves(player);
                    assert_eq!(listed, brute_moves(&p, player));
                    assert_eq!(listed.len(), p.move_count(player));
                    for mv in &listed {
                        let q = p.play(*mv).unwrap();
                        assert_eq!(q.empty_cells(), p.empty_cells() - 2);
                        // no listed move in the child overlaps the domino just placed
                        for next in q.legal_moves(Player::Vertical).into_iter().chain(q.legal_moves(Player::Horizontal)) {
                            let cells = [(next.row as usize, next.col as usize), next.other_cell()];
                            let placed = [(mv.row as usize, mv.col as usize), mv.other_cell()];
                            assert!(cells.iter().all(|c| !placed.contains(c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn components_partition_cells() {
        for p in all_masks(3, 3) {
            let comps = p.components();
            assert_eq!(comps.iter().map(Position::empty_cells).sum::<usize>(), p.empty_cells());
            for c in &comps {
                // each cropped component is itself connected and touches every edge of its box
                assert_eq!(c.components().len(), 1);
                assert!(c.free_rows()[0] != 0 && *c.free_rows().last().unwrap() != 0);
                let any = c.free_rows().iter().fold(0, |a, r| a | r);
                assert_eq!(any & 1, 1);
                assert_eq!(63 - any.leading_zeros() as usize, c.width() - 1);
            }
        }
    }

    fn bfs_component_count(p: &Position) -> usize {
        let (h, w) = (p.height(), p.width());
        let mut seen = vec![false; h * w];
        let mut count = 0;
        for start in 0..h * w {
            if seen[start] || !p.is_free(start / w, start % w) {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                let (r, c) = (i / w, i % w);
                let mut near = vec![];
                if r > 0 {
                    near.push(i - w);
                }
                if r + 1 < h {
                    near.push(i + w);
                }
                if c > 0 {
                    near.push(i - 1);
                }
                if c + 1 < w {
                    near.push(i + 1);
                }
                for j in near {
                    if !seen[j] && p.is_free(j / w, j % w) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn components_match_breadth_first_search() {
        for p in all_masks(3, 4).chain(all_masks(4, 3)) {
            assert_eq!(p.components().len(), bfs_component_count(&p), "{p:?}");
        }
        let spiral = Position::from_ascii(
            ".......\n\
             ######.\n\
             .....#.\n\
             .###.#.\n\
             .#...#.\n\
             .#####.\n\
             .......\n",
        )
        .unwrap();
        assert_eq!(spiral.components().len(), 1);
        assert_eq!(spiral.components()[0], spiral);
    }

    #[test]
    fn transpose_swaps_move_sets() {
        for p in all_masks(2, 3) {
            let t = p.transpose();
            assert_eq!(t.transpose(), p);
            let mut v: Vec<(u8, u8)> = p.legal_moves(Player::Vertical).iter().map(|m| (m.col, m.row)).collect();
            let mut th: Vec<(u8, u8)> = t.legal_moves(Player::Horizontal).iter().map(|m| (m.row, m.col)).collect();
            v.sort();
            th.sort();
            assert_eq!(v, th);
        }
        assert_eq!(Position::rect(2, 4).unwrap().transpose(), Position::rect(4, 2).unwrap());
    }

    #[test]
    fn normalize_key_identifies_exactly_the_mirror_group() {
        let p = Position::from_free_rows(3, &[0b011, 0b110]).unwrap();
        assert_eq!(p.normalize_key(), p.mirror_horizontal().normalize_key());
        assert_eq!(p.normalize_key(), p.rotate_180().normalize_key());
        assert_ne!(
            Position::rect(2, 3).unwrap().normalize_key(),
            Position::rect(3, 2).unwrap().normalize_key()
        );
        // orbit count by brute force over all 2x3 and 3x3 masks
        for (h, w) in [(2, 3), (3, 3)] {
            let boards: Vec<Position> = all_masks(h, w).collect();
            let mut orbit_reps = std::collections::BTreeSet::new();
            for p in &boards {
                let orbit = [p.clone(), p.mirror_horizontal(), p.mirror_vertical(), p.rotate_180()];
                orbit_reps.insert(orbit.into_iter().min().unwrap());
            }
            let keys: std::collections::BTreeSet<_> = boards.iter().map(Position::normalize_key).collect();
            assert_eq!(keys.len(), orbit_reps.len());
            for p in &boards {
                // a quarter turn is not identified unless the board happens to be symmetric that way
                let q = p.rotate_90();
                let same_orbit = [p.clone(), p.mirror_horizontal(), p.mirror_vertical(), p.rotate_180()].contains(&q);
                assert_eq!(p.normalize_key() == q.normalize_key(), same_orbit);
            }
        }
    }
}
